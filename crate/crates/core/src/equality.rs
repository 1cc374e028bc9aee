//! Deciding equality of elements modulo the defining relations.
//!
//! Every nonzero monomial `w` with group image `g` is its range projection
//! times a canonical lift of `g`, and the range projection is a cylinder: a
//! finite list of label constraints read off from the path that `w'` traces
//! through the labelled tree of the spectrum. Each vertex of the tree lying
//! on the `P` side carries an `s`-label in `1..=n` and a `t`-label in
//! `1..=m`; one of the two is fixed by the edge the path entered through,
//! the other is free. Refining a monomial by `p = sum_i x_i x_i'` at a `P`
//! interface splits its cylinder along one such free label.
//!
//! Within one fiber the difference `x - y` is a combination of cylinder
//! indicators. Eliminating the last cell of every partition
//! (`[label = N] = 1 - sum_{v<N} [label = v]`) rewrites it in a basis of
//! products of indicators with values `< N`, which are linearly independent.
//! The fiber vanishes exactly when every coefficient in that basis does.
//! A nonzero coefficient with the fewest factors yields an explicit atom on
//! which `x - y` takes that coefficient as its value, i.e. a witness.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::context::Context;
use crate::elements::Element;
use crate::error::Result;
use crate::freegroup::{Family, GroupLetter, GroupWord};
use crate::scalars::Scalar;
use crate::words::{Letter, Monomial, Side};

/// A free label of a tree vertex: the vertex (as a path from the base point)
/// and the family whose label is constrained.
pub type LabelVar = (GroupWord, Family);

/// The range projection of a monomial, with the end vertex of its path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub base: Side,
    pub constraints: BTreeMap<LabelVar, u32>,
    pub end: GroupWord,
}

/// Range cylinder of `w`, or `None` when the path is inadmissible, in which
/// case `w = 0` in the algebra even if no local rule fires.
pub fn cylinder(ctx: &Context, w: &Monomial) -> Option<Cylinder> {
    let mut vertex = GroupWord::identity();
    let mut side = w.range();
    let mut constraints = BTreeMap::new();
    for &l in w.letters() {
        let Some((family, index, star)) = l.parts() else {
            if l.range() != side {
                return None;
            }
            continue;
        };
        if !star {
            // w' applies s_i' here: climb from a P vertex along its `family` edge.
            if side != Side::P {
                return None;
            }
            match vertex.last() {
                Some(last) if last.inverse && last.family == family => {
                    if last.index != index {
                        return None;
                    }
                }
                _ => {
                    if ctx.size(family) > 1 {
                        let prev = constraints.insert((vertex.clone(), family), index);
                        if prev.is_some_and(|v| v != index) {
                            return None;
                        }
                    }
                }
            }
            vertex.push(GroupLetter::new(family, index, false));
        } else {
            if side != Side::Q {
                return None;
            }
            vertex.push(GroupLetter::new(family, index, true));
        }
        side = side.flip();
    }
    Some(Cylinder { base: w.range(), constraints, end: vertex })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Group element of the fiber where the two sides differ.
    pub group: GroupWord,
    /// A minimal monomial on whose cylinder the difference is constant.
    pub atom: Monomial,
    /// Value of `x - y` on that atom.
    pub coefficient: Scalar,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fiber {} : ({}) * {}", self.group, self.coefficient, self.atom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual(Box<Witness>),
    Unconfirmed(String),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }

    pub fn is_not_equal(&self) -> bool {
        matches!(self, Verdict::NotEqual(_))
    }

    pub fn is_unconfirmed(&self) -> bool {
        matches!(self, Verdict::Unconfirmed(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::NotEqual(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => write!(f, "Equal"),
            Verdict::NotEqual(_) => write!(f, "NotEqual"),
            Verdict::Unconfirmed(_) => write!(f, "Unconfirmed"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqualityConfig {
    /// Maximum refinement depth; `None` means the longest monomial plus two.
    pub depth: Option<usize>,
    /// Cap on basis terms produced while expanding one fiber.
    pub term_budget: usize,
}

impl Default for EqualityConfig {
    fn default() -> Self {
        EqualityConfig { depth: None, term_budget: 4_000_000 }
    }
}

pub fn equals(x: &Element, y: &Element) -> Result<Verdict> {
    equals_with(x, y, &EqualityConfig::default())
}

pub fn equals_with(x: &Element, y: &Element, cfg: &EqualityConfig) -> Result<Verdict> {
    let d = x.try_sub(y)?;
    Ok(zero_verdict(&d, cfg))
}

/// Basis expansion of one side of one fiber: keys are sorted lists of
/// `(label, value)` factors with every value below the family size.
type Basis = HashMap<Vec<(LabelVar, u32)>, Scalar>;

enum Expansion {
    Done(Basis),
    OverBudget,
}

fn expand(ctx: &Context, terms: &[(Cylinder, Scalar)], budget: usize) -> Expansion {
    let mut acc: Basis = HashMap::new();
    let mut produced = 0usize;
    for (cyl, coef) in terms {
        let mut base = Vec::new();
        let mut top = Vec::new();
        for (var, &v) in &cyl.constraints {
            if v == ctx.size(var.1) {
                top.push(var.clone());
            } else {
                base.push((var.clone(), v));
            }
        }
        let mut partial = vec![(base, coef.clone())];
        for var in top {
            let size = ctx.size(var.1);
            let mut next = Vec::with_capacity(partial.len() * size as usize);
            for (key, c) in partial {
                let neg = -&c;
                for v in 1..size {
                    let mut k2 = key.clone();
                    k2.push((var.clone(), v));
                    next.push((k2, neg.clone()));
                }
                next.push((key, c));
            }
            partial = next;
        }
        produced += partial.len();
        if produced > budget {
            return Expansion::OverBudget;
        }
        for (mut key, c) in partial {
            key.sort();
            match acc.get_mut(&key) {
                Some(old) => *old = &*old + &c,
                None => {
                    acc.insert(key, c);
                }
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Expansion::Done(acc)
}

/// Fiber, base side and basis key of one canonical coordinate.
pub type CanonicalKey = (GroupWord, Side, Vec<(LabelVar, u32)>);

type FiberCylinders = (GroupWord, Side, Vec<(Cylinder, Scalar)>);

/// Canonical coordinates of an element. Two elements are equal exactly
/// when these maps coincide.
pub fn canonical_form(x: &Element) -> Option<BTreeMap<CanonicalKey, Scalar>> {
    let ctx = x.ctx();
    let mut out = BTreeMap::new();
    for (group, side, terms) in grouped_cylinders(x) {
        match expand(&ctx, &terms, EqualityConfig::default().term_budget) {
            Expansion::Done(basis) => {
                for (k, c) in basis {
                    out.insert((group.clone(), side, k), c);
                }
            }
            Expansion::OverBudget => return None,
        }
    }
    Some(out)
}

fn grouped_cylinders(x: &Element) -> Vec<FiberCylinders> {
    let ctx = x.ctx();
    let mut groups: BTreeMap<(GroupWord, Side), Vec<(Cylinder, Scalar)>> = BTreeMap::new();
    for (w, c) in x.terms() {
        if let Some(cyl) = cylinder(&ctx, w) {
            groups.entry((cyl.end.clone(), cyl.base)).or_default().push((cyl, c.clone()));
        }
    }
    groups.into_iter().map(|((g, s), t)| (g, s, t)).collect()
}

/// Decides `d = 0`.
pub fn zero_verdict(d: &Element, cfg: &EqualityConfig) -> Verdict {
    let ctx = d.ctx();
    let depth = cfg.depth.unwrap_or(d.max_len() + 2);
    for (group, side, terms) in grouped_cylinders(d) {
        let deepest = terms.iter().flat_map(|(c, _)| c.constraints.keys()).map(|(v, _)| v.len() + 1).max().unwrap_or(0);
        if deepest > depth {
            return Verdict::Unconfirmed(format!("fiber {group}: refinement depth {deepest} exceeds budget {depth}"));
        }
        let basis = match expand(&ctx, &terms, cfg.term_budget) {
            Expansion::Done(b) => b,
            Expansion::OverBudget => return Verdict::Unconfirmed(format!("fiber {group}: term budget {} exhausted", cfg.term_budget)),
        };
        if basis.is_empty() {
            continue;
        }
        let key = basis.keys().min_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b))).unwrap().clone();
        return match build_witness(&ctx, &group, side, &terms, &key) {
            Some(w) => Verdict::NotEqual(Box::new(w)),
            None => Verdict::Unconfirmed(format!("fiber {group}: could not realise a witness atom")),
        };
    }
    Verdict::Equal
}

/// Whether the vertex `h` exists in a configuration with the given labels.
fn vertex_exists(ctx: &Context, h: &GroupWord, labels: &BTreeMap<LabelVar, u32>) -> bool {
    let mut cur = GroupWord::identity();
    for &l in h.letters() {
        if !l.inverse {
            let determined = cur.last().filter(|last| last.inverse && last.family == l.family);
            let ok = match determined {
                Some(last) => last.index == l.index,
                None => ctx.size(l.family) == 1 || labels.get(&(cur.clone(), l.family)) == Some(&l.index),
            };
            if !ok {
                return false;
            }
        }
        cur.push(l);
    }
    true
}

fn build_witness(ctx: &Context, group: &GroupWord, side: Side, terms: &[(Cylinder, Scalar)], key: &[(LabelVar, u32)]) -> Option<Witness> {
    let vars: BTreeSet<LabelVar> = terms.iter().flat_map(|(c, _)| c.constraints.keys().cloned()).collect();
    let mut labels: BTreeMap<LabelVar, u32> = vars.iter().map(|v| (v.clone(), ctx.size(v.1))).collect();
    for (var, val) in key {
        labels.insert(var.clone(), *val);
    }
    let atom: BTreeMap<LabelVar, u32> =
        labels.iter().filter(|(var, _)| vertex_exists(ctx, &var.0, &labels)).map(|(k, v)| (k.clone(), *v)).collect();

    let mut coefficient = Scalar::zero(ctx.field());
    for (cyl, c) in terms {
        if cyl.constraints.iter().all(|(var, v)| atom.get(var) == Some(v)) {
            coefficient = &coefficient + c;
        }
    }
    if coefficient.is_zero() {
        return None;
    }

    let mut ordered: Vec<(&LabelVar, &u32)> = atom.iter().collect();
    ordered.sort_by(|a, b| (a.0 .0.len(), a.0).cmp(&(b.0 .0.len(), b.0)));
    let mut letters = Vec::new();
    for ((vertex, family), &value) in ordered {
        let mut path: Vec<Letter> = Monomial::from_group_word(vertex).map(|m| m.letters().to_vec()).unwrap_or_default();
        path.push(Letter::generator(*family, value));
        let back: Vec<Letter> = path.iter().rev().map(|l| l.star()).collect();
        letters.extend(path);
        letters.extend(back);
    }
    match Monomial::from_group_word(group) {
        Some(lift) => letters.extend_from_slice(lift.letters()),
        None if letters.is_empty() => letters.push(if side == Side::P { Letter::P } else { Letter::Q }),
        None => {}
    }
    let atom_word = crate::words::reduce_word(ctx, &letters).ok()??;
    let check = cylinder(ctx, &atom_word)?;
    if check.constraints != atom || check.base != side || &check.end != group {
        return None;
    }
    Some(Witness { group: group.clone(), atom: atom_word, coefficient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_element;

    fn ctx(n: u32, m: u32) -> Context {
        Context::new(n, m).unwrap()
    }

    fn eq(c: Context, a: &str, b: &str) -> Verdict {
        equals(&parse_element(a, &c).unwrap(), &parse_element(b, &c).unwrap()).unwrap()
    }

    #[test]
    fn commuting_range_projections() {
        let c = ctx(2, 2);
        assert!(eq(c, "s1 s1' t1 t1'", "t1 t1' s1 s1'").is_equal());
    }

    #[test]
    fn nonvanishing_word() {
        let c = ctx(2, 2);
        let v = eq(c, "s1 s2' t1 t2'", "0");
        let w = v.witness().expect("witness");
        assert_eq!(w.group.to_string(), "a1 a2^-1 b1 b2^-1");
        assert!(w.coefficient.is_one());
    }

    #[test]
    fn partition_of_p() {
        for (n, m) in [(1, 1), (2, 3), (3, 2)] {
            let c = ctx(n, m);
            assert!(
                eq(c, "p", "s1 s1' + s2 s2' + s3 s3'".split(" + ").take(n as usize).collect::<Vec<_>>().join(" + ").as_str()).is_equal()
            );
        }
    }

    #[test]
    fn cylinder_of_prop_word() {
        let c = ctx(2, 2);
        let w = parse_element("s1 s2' t1 t2'", &c).unwrap();
        let (m, _) = w.terms().next().unwrap();
        let cyl = cylinder(&c, m).unwrap();
        assert_eq!(cyl.end, m.group_image());
        assert_eq!(cyl.constraints.len(), 2);
        assert_eq!(cyl.base, Side::P);
    }

    #[test]
    fn reduced_word_can_still_vanish() {
        // s2' t1 t1' s3 = s2' q1 s3 and q1 commutes with p2, so the word is zero.
        let c = ctx(3, 2);
        let x = parse_element("s1 t1' s2 s2' t1 t1' s3 s3' t1 s1'", &c).unwrap();
        assert_eq!(x.len(), 1);
        assert!(eq(c, "s1 t1' s2 s2' t1 t1' s3 s3' t1 s1'", "0").is_equal());
    }

    #[test]
    fn depth_budget_is_reported() {
        let c = ctx(2, 2);
        let x = parse_element("s1 t1' s2 s2' t1 s1'", &c).unwrap();
        let cfg = EqualityConfig { depth: Some(1), ..Default::default() };
        assert!(equals_with(&x, &Element::zero(c), &cfg).unwrap().is_unconfirmed());
        let cfg = EqualityConfig { depth: None, term_budget: 0 };
        assert!(equals_with(&x, &Element::zero(c), &cfg).unwrap().is_unconfirmed());
    }

    #[test]
    fn witness_value_matches_difference() {
        let c = ctx(2, 3);
        let v = eq(c, "p", "s1 s1'");
        let w = v.witness().unwrap();
        assert_eq!(w.atom.to_string(), "s2 s2'");
        assert!(w.coefficient.is_one());
    }
}
