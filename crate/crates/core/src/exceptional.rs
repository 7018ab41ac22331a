//! The exceptional graphs: `K2`, `F5`, the families `F11` and `F12`, and
//! `H_{s,t}` / `H^-_{s,t}`.
//!
//! Canonical vertex numbering used by [`generate`]:
//!
//! | graph      | ids                                                          |
//! |------------|--------------------------------------------------------------|
//! | `K2`       | `0, 1`                                                       |
//! | `F5`       | `a = 0`, `b1..b4 = 1..4`                                     |
//! | `F11`      | `a = 0`, `b1 = 1`, `b2 = 2`, `c1..c8 = 3..10`                |
//! | `F12`      | `a = 0`, `b1 = 1`, `b2 = 2`, `c1..c9 = 3..11`                |
//! | `H_{s,t}`  | `a = 0`, `b = 1`, `c1 = 2`, `c2 = 3`, `S1 = 4..s+3`, `S2` after |
//!
//! `F5` has edges `a b_i` plus `b1 b2` and `b3 b4`: two triangles sharing `a`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::iso::find_isomorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExceptionalError {
    #[error("H requires 2 <= s <= t, got s={s}, t={t}")]
    BadH { s: usize, t: usize },
    #[error("F12 requires ac9 or b2c9 in L")]
    BadF12,
    #[error("unknown optional edge {0:?}")]
    UnknownEdge(String),
}

/// Optional edge set `L ⊆ {ab1, ab2}` of an `F11` member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct F11Extra {
    pub ab1: bool,
    pub ab2: bool,
}

/// Optional edge set `L ⊆ {ab1, ab2, ac9, b2c9}` of an `F12` member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct F12Extra {
    pub ab1: bool,
    pub ab2: bool,
    pub ac9: bool,
    pub b2c9: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExceptionalClass {
    K2,
    F5,
    F11(F11Extra),
    F12(F12Extra),
    H { s: usize, t: usize, minus: bool },
}

fn names(flags: &[(bool, &'static str)]) -> String {
    flags.iter().filter(|(on, _)| *on).map(|(_, n)| *n).collect::<Vec<_>>().join(",")
}

impl fmt::Display for F11Extra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&names(&[(self.ab1, "ab1"), (self.ab2, "ab2")]))
    }
}

impl fmt::Display for F12Extra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&names(&[(self.ab1, "ab1"), (self.ab2, "ab2"), (self.ac9, "ac9"), (self.b2c9, "b2c9")]))
    }
}

fn parse_flags<'a>(s: &'a str, allowed: &[&str]) -> Result<Vec<&'a str>, ExceptionalError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| if allowed.contains(&t) { Ok(t) } else { Err(ExceptionalError::UnknownEdge(t.to_string())) })
        .collect()
}

impl FromStr for F11Extra {
    type Err = ExceptionalError;

    /// Comma-separated subset of `ab1,ab2`; empty string is `L = {}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let flags = parse_flags(s, &["ab1", "ab2"])?;
        Ok(F11Extra { ab1: flags.contains(&"ab1"), ab2: flags.contains(&"ab2") })
    }
}

impl FromStr for F12Extra {
    type Err = ExceptionalError;

    /// Comma-separated subset of `ab1,ab2,ac9,b2c9`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let flags = parse_flags(s, &["ab1", "ab2", "ac9", "b2c9"])?;
        Ok(F12Extra {
            ab1: flags.contains(&"ab1"),
            ab2: flags.contains(&"ab2"),
            ac9: flags.contains(&"ac9"),
            b2c9: flags.contains(&"b2c9"),
        })
    }
}

impl fmt::Display for ExceptionalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExceptionalClass::K2 => f.write_str("K2"),
            ExceptionalClass::F5 => f.write_str("F5"),
            ExceptionalClass::F11(l) => write!(f, "F11[L={{{l}}}]"),
            ExceptionalClass::F12(l) => write!(f, "F12[L={{{l}}}]"),
            ExceptionalClass::H { s, t, minus: false } => write!(f, "H({s},{t})"),
            ExceptionalClass::H { s, t, minus: true } => write!(f, "H-({s},{t})"),
        }
    }
}

impl ExceptionalClass {
    pub fn order(&self) -> usize {
        match *self {
            ExceptionalClass::K2 => 2,
            ExceptionalClass::F5 => 5,
            ExceptionalClass::F11(_) => 11,
            ExceptionalClass::F12(_) => 12,
            ExceptionalClass::H { s, t, .. } => s + t + 2,
        }
    }

    pub fn validate(&self) -> Result<(), ExceptionalError> {
        match *self {
            ExceptionalClass::H { s, t, .. } if s < 2 || s > t => Err(ExceptionalError::BadH { s, t }),
            ExceptionalClass::F12(l) if !(l.ac9 || l.b2c9) => Err(ExceptionalError::BadF12),
            _ => Ok(()),
        }
    }

    /// Member of `H_n^=` (`s = t`).
    pub fn is_balanced_h(&self) -> bool {
        matches!(self, ExceptionalClass::H { s, t, .. } if s == t)
    }

    /// `H` members that still have a 2-proper partition (3 parts):
    /// `3 <= s <= t` and `t >= 4`.
    pub fn has_three_part_partition(&self) -> bool {
        matches!(*self, ExceptionalClass::H { s, t, .. } if s >= 3 && t >= 4)
    }
}

fn f_core(c_count: usize) -> Vec<(usize, usize)> {
    const A: usize = 0;
    const B1: usize = 1;
    const B2: usize = 2;
    let c = |i: usize| i + 2; // c_i, 1-based
    let mut e: Vec<(usize, usize)> = (1..=8).map(|i| (A, c(i))).collect();
    e.extend((1..=4).map(|i| (B1, c(i))));
    e.extend((5..=8).map(|i| (B2, c(i))));
    e.extend([(c(1), c(2)), (c(3), c(4)), (c(5), c(6))]);
    if c_count == 8 {
        e.push((c(7), c(8)));
    } else {
        e.extend([(c(7), c(9)), (c(8), c(9))]);
    }
    e
}

pub fn generate(class: &ExceptionalClass) -> Result<Graph, ExceptionalError> {
    class.validate()?;
    let edges: Vec<(usize, usize)> = match *class {
        ExceptionalClass::K2 => vec![(0, 1)],
        ExceptionalClass::F5 => vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)],
        ExceptionalClass::F11(l) => {
            let mut e = f_core(8);
            if l.ab1 {
                e.push((0, 1));
            }
            if l.ab2 {
                e.push((0, 2));
            }
            e
        }
        ExceptionalClass::F12(l) => {
            let mut e = f_core(9);
            for (on, edge) in [(l.ab1, (0, 1)), (l.ab2, (0, 2)), (l.ac9, (0, 11)), (l.b2c9, (2, 11))] {
                if on {
                    e.push(edge);
                }
            }
            e
        }
        ExceptionalClass::H { s, t, minus } => {
            let (a, b, c1, c2) = (0, 1, 2, 3);
            let s1 = 4..4 + (s - 1);
            let s2 = s1.end..s1.end + (t - 1);
            let mut e = vec![(a, c1), (a, c2), (c1, c2)];
            if !minus {
                e.push((a, b));
            }
            for x in s1.start..s2.end {
                e.extend([(a, x), (b, x)]);
            }
            for r in [s1, s2] {
                for x in r.clone() {
                    e.extend((x + 1..r.end).map(|y| (x, y)));
                }
            }
            e
        }
    };
    Ok(Graph::from_edges(class.order(), edges).expect("exceptional graphs are simple"))
}

/// All four labeled `F11` members.
pub fn f11_members() -> Vec<ExceptionalClass> {
    [(false, false), (true, false), (false, true), (true, true)]
        .into_iter()
        .map(|(ab1, ab2)| ExceptionalClass::F11(F11Extra { ab1, ab2 }))
        .collect()
}

/// The twelve labeled `F12` members.
pub fn f12_members() -> Vec<ExceptionalClass> {
    let mut out = Vec::new();
    for bits in 0u8..16 {
        let l = F12Extra { ab1: bits & 1 != 0, ab2: bits & 2 != 0, ac9: bits & 4 != 0, b2c9: bits & 8 != 0 };
        if l.ac9 || l.b2c9 {
            out.push(ExceptionalClass::F12(l));
        }
    }
    out
}

/// `H_{s,t}` and `H^-_{s,t}` with `2 <= s <= t`, `s + t + 2 = n`.
pub fn h_members(n: usize) -> Vec<ExceptionalClass> {
    let mut out = Vec::new();
    if n < 6 {
        return out;
    }
    for s in 2..=(n - 2) / 2 {
        let t = n - 2 - s;
        for minus in [false, true] {
            out.push(ExceptionalClass::H { s, t, minus });
        }
    }
    out
}

/// Exceptional graphs of order `n`. `F11` appears once per isomorphism class
/// (`L = {}`, `{ab1}`, `{ab1, ab2}`); `F12` with all twelve labeled members.
pub fn enumerate_family(n: usize) -> Vec<(ExceptionalClass, Graph)> {
    let mut classes = Vec::new();
    match n {
        2 => classes.push(ExceptionalClass::K2),
        5 => classes.push(ExceptionalClass::F5),
        11 => classes.extend(
            f11_members()
                .into_iter()
                .filter(|c| !matches!(c, ExceptionalClass::F11(F11Extra { ab1: false, ab2: true }))),
        ),
        12 => classes.extend(f12_members()),
        _ => {}
    }
    classes.extend(h_members(n));
    classes.into_iter().map(|c| (c, generate(&c).expect("valid class"))).collect()
}

/// Distinct isomorphism classes among `graphs` (first representative kept).
pub fn dedupe_isomorphic(graphs: &[Graph]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        if !reps.iter().any(|&r| find_isomorphism(&graphs[r], g).is_some()) {
            reps.push(i);
        }
    }
    reps
}

/// A recognized exceptional graph together with `map[canonical id] = vertex of g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub class: ExceptionalClass,
    pub map: Vec<usize>,
}

pub fn recognize(g: &Graph) -> Option<ExceptionalClass> {
    recognize_with_map(g).map(|r| r.class)
}

pub fn recognize_with_map(g: &Graph) -> Option<Recognition> {
    let fixed: Vec<ExceptionalClass> = match g.n() {
        2 => vec![ExceptionalClass::K2],
        5 => vec![ExceptionalClass::F5],
        11 => f11_members(),
        12 => f12_members(),
        _ => Vec::new(),
    };
    for class in fixed {
        let pattern = generate(&class).expect("valid class");
        if let Some(map) = find_isomorphism(&pattern, g) {
            return Some(Recognition { class, map });
        }
    }
    match_h(g)
}

/// Structural matcher for `H_{s,t}` / `H^-_{s,t}`: a triangle `a c1 c2` with
/// `c1`, `c2` of degree 2, `a` adjacent to everything except possibly `b`,
/// `b` adjacent to all of `S1 ∪ S2`, and `S1`, `S2` the two cliques left after
/// removing `a, b, c1, c2`, with no edges between them.
fn match_h(g: &Graph) -> Option<Recognition> {
    let n = g.n();
    if n < 6 {
        return None;
    }
    for c1 in (0..n).filter(|&v| g.deg(v) == 2) {
        let nb = g.neighbors(c1);
        for (a, c2) in [(nb[0], nb[1]), (nb[1], nb[0])] {
            if g.deg(c2) != 2 || !g.has_edge(c2, a) {
                continue;
            }
            if let Some(r) = match_h_at(g, a, c1, c2) {
                return Some(r);
            }
        }
    }
    None
}

fn match_h_at(g: &Graph, a: usize, c1: usize, c2: usize) -> Option<Recognition> {
    let n = g.n();
    let rest: Vec<usize> = (0..n).filter(|&v| v != a && v != c1 && v != c2).collect();
    let missing: Vec<usize> = rest.iter().copied().filter(|&v| !g.has_edge(a, v)).collect();
    let (minus, b_candidates) = match missing.as_slice() {
        [] => (false, rest.clone()),
        [b] => (true, vec![*b]),
        _ => return None,
    };
    for b in b_candidates {
        if rest.iter().any(|&v| v != b && !g.has_edge(b, v)) {
            continue;
        }
        let others: Vec<usize> = rest.iter().copied().filter(|&v| v != b).collect();
        let (sub, map) = g.induced(&others);
        let mut comps = sub.components();
        if comps.len() != 2 {
            continue;
        }
        let is_clique = |c: &Vec<usize>| c.iter().all(|&v| sub.deg(v) + 1 == c.len());
        if !comps.iter().all(is_clique) {
            continue;
        }
        comps.sort_by_key(|c| (c.len(), map[c[0]]));
        let s = comps[0].len() + 1;
        let t = comps[1].len() + 1;
        let mut canon = vec![a, b, c1, c2];
        canon.extend(comps.iter().flatten().map(|&i| map[i]));
        return Some(Recognition { class: ExceptionalClass::H { s, t, minus }, map: canon });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, SplitMix64};

    fn degree_sequence(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    #[test]
    fn f5_shape() {
        let g = generate(&ExceptionalClass::F5).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 6));
        assert_eq!(degree_sequence(&g), vec![4, 2, 2, 2, 2]);
    }

    #[test]
    fn h22_degrees() {
        let g = generate(&ExceptionalClass::H { s: 2, t: 2, minus: false }).unwrap();
        assert_eq!(g.n(), 6);
        // a, b, c1, c2, S1 = {4}, S2 = {5}
        assert_eq!(g.degrees(), vec![5, 3, 2, 2, 2, 2]);
        let gm = generate(&ExceptionalClass::H { s: 2, t: 2, minus: true }).unwrap();
        assert_eq!(gm.degrees(), vec![4, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn f11_empty_l_degrees() {
        let g = generate(&ExceptionalClass::F11(F11Extra::default())).unwrap();
        assert_eq!(g.n(), 11);
        let d = g.degrees();
        assert_eq!(&d[..3], &[8, 4, 4]);
        assert!(d[3..].iter().all(|&x| x == 3));
    }

    #[test]
    fn f12_c9_degree_follows_l() {
        for class in f12_members() {
            let ExceptionalClass::F12(l) = class else { unreachable!() };
            let g = generate(&class).unwrap();
            assert_eq!(g.deg(11), 2 + l.ac9 as usize + l.b2c9 as usize);
        }
    }

    #[test]
    fn invalid_classes() {
        assert_eq!(
            generate(&ExceptionalClass::H { s: 1, t: 3, minus: false }),
            Err(ExceptionalError::BadH { s: 1, t: 3 })
        );
        assert_eq!(
            generate(&ExceptionalClass::H { s: 4, t: 3, minus: true }),
            Err(ExceptionalError::BadH { s: 4, t: 3 })
        );
        let l = F12Extra { ab1: true, ab2: true, ac9: false, b2c9: false };
        assert_eq!(generate(&ExceptionalClass::F12(l)), Err(ExceptionalError::BadF12));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(enumerate_family(5).len(), 1);
        assert_eq!(enumerate_family(2).len(), 1);
        assert!(enumerate_family(4).is_empty());
        // F11: three classes; H_11: (2,7), (3,6), (4,5), each with and without ab.
        let f = enumerate_family(11);
        assert_eq!(f.len(), 3 + 6);
        assert_eq!(enumerate_family(12).len(), 12 + 8);
        assert_eq!(f12_members().len(), 12);
    }

    #[test]
    fn f11_has_three_isomorphism_classes() {
        let graphs: Vec<Graph> = f11_members().iter().map(|c| generate(c).unwrap()).collect();
        assert_eq!(dedupe_isomorphic(&graphs).len(), 3);
    }

    #[test]
    fn f12_isomorphism_classes() {
        let graphs: Vec<Graph> = f12_members().iter().map(|c| generate(c).unwrap()).collect();
        // No two labeled members coincide up to isomorphism.
        assert_eq!(dedupe_isomorphic(&graphs).len(), 12);
    }

    #[test]
    fn recognize_relabelings() {
        let mut rng = SplitMix64::new(11);
        let f5 = generate(&ExceptionalClass::F5).unwrap();
        for _ in 0..20 {
            let p = rng.permutation(5);
            assert_eq!(recognize(&f5.permute(&p)), Some(ExceptionalClass::F5));
        }
        let class = ExceptionalClass::H { s: 3, t: 4, minus: true };
        let h = generate(&class).unwrap();
        for _ in 0..20 {
            let p = rng.permutation(h.n());
            let r = recognize_with_map(&h.permute(&p)).unwrap();
            assert_eq!(r.class, class);
            // c1, c2 land on the images of canonical 2, 3 (in some order)
            let mut got = vec![r.map[2], r.map[3]];
            got.sort_unstable();
            let mut want = vec![p[2], p[3]];
            want.sort_unstable();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn non_exceptional_rejected() {
        assert_eq!(recognize(&cycle(5)), None);
        assert_eq!(recognize(&complete(6)), None);
        assert_eq!(recognize(&complete(2)), Some(ExceptionalClass::K2));
        assert_eq!(recognize(&Graph::empty(2)), None);
    }

    #[test]
    fn extra_parsing() {
        assert_eq!("ab1".parse::<F11Extra>().unwrap(), F11Extra { ab1: true, ab2: false });
        assert_eq!("".parse::<F11Extra>().unwrap(), F11Extra::default());
        let l: F12Extra = "ac9, b2c9".parse().unwrap();
        assert!(l.ac9 && l.b2c9 && !l.ab1);
        assert!("ac9".parse::<F11Extra>().is_err());
        assert_eq!(ExceptionalClass::F12(l).to_string(), "F12[L={ac9,b2c9}]");
    }
}
