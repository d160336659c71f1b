//! Finite meet-semilattices with partial joins.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::Poset;
use crate::sets::{self, ElemSet};

const NONE: u32 = u32::MAX;

/// A finite meet-semilattice. Meets and (partial) joins are tabulated once
/// from the order at construction time.
#[derive(Clone, Debug)]
pub struct Semilattice {
    poset: Poset,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    irreducibles: Vec<usize>,
    /// Position of each element in `irreducibles`, if irreducible.
    irr_pos: Vec<Option<usize>>,
}

/// First failure found by [`Semilattice::is_modular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModularityViolation {
    /// `a <= c` but `a ∨ (b ∧ c) != (a ∨ b) ∧ c` inside the principal ideal
    /// of `ideal`.
    ModularLaw { ideal: usize, a: usize, b: usize, c: usize },
    /// The three pairwise joins exist but `x ∨ y ∨ z` does not.
    TripleJoin { x: usize, y: usize, z: usize },
}

impl ModularityViolation {
    pub fn describe(&self, l: &Semilattice) -> String {
        match *self {
            ModularityViolation::ModularLaw { ideal, a, b, c } => format!(
                "modular law fails in the ideal of {}: a={}, b={}, c={} (a <= c, a∨(b∧c)={}, (a∨b)∧c={})",
                l.name(ideal),
                l.name(a),
                l.name(b),
                l.name(c),
                l.name(l.join(a, l.meet(b, c)).expect("bounded by c")),
                l.name(l.meet(l.join(a, b).expect("bounded by ideal"), c)),
            ),
            ModularityViolation::TripleJoin { x, y, z } => format!(
                "pairwise joins of {}, {}, {} exist but their triple join does not",
                l.name(x),
                l.name(y),
                l.name(z)
            ),
        }
    }
}

impl Semilattice {
    /// Validates that `poset` is a meet-semilattice whose existing joins are
    /// well defined, and tabulates meet and join.
    pub fn new(poset: Poset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotASemilattice("empty poset has no minimum".into()));
        }
        let minima = poset.minimal_elements();
        if minima.len() != 1 {
            return Err(Error::NotASemilattice(format!(
                "{} minimal elements ({}), expected a unique minimum",
                minima.len(),
                minima.iter().map(|&m| poset.name(m)).collect::<Vec<_>>().join(", ")
            )));
        }
        let bottom = minima[0];
        let mut meet = vec![NONE; n * n];
        let mut join = vec![NONE; n * n];
        for x in 0..n {
            for y in x..n {
                let lower = sets::intersection(poset.down_set(x), poset.down_set(y));
                let m = greatest(&poset, &lower).ok_or_else(|| {
                    Error::NotASemilattice(format!(
                        "{} and {} have no greatest common lower bound",
                        poset.name(x),
                        poset.name(y)
                    ))
                })?;
                meet[x * n + y] = m as u32;
                meet[y * n + x] = m as u32;
                let upper = sets::intersection(poset.up_set(x), poset.up_set(y));
                if upper.count_ones(..) > 0 {
                    let j = least(&poset, &upper).ok_or_else(|| {
                        Error::NotASemilattice(format!(
                            "{} and {} have upper bounds but no least one",
                            poset.name(x),
                            poset.name(y)
                        ))
                    })?;
                    join[x * n + y] = j as u32;
                    join[y * n + x] = j as u32;
                }
            }
        }
        let irreducibles: Vec<usize> = (0..n).filter(|&x| poset.lower_covers(x).len() == 1).collect();
        let mut irr_pos = vec![None; n];
        for (i, &x) in irreducibles.iter().enumerate() {
            irr_pos[x] = Some(i);
        }
        Ok(Semilattice {
            poset,
            meet,
            join,
            bottom,
            irreducibles,
            irr_pos,
        })
    }

    /// The family `sets` ordered by inclusion. Element names are the sets
    /// formatted with `ground` names.
    pub fn from_family(family: &[ElemSet], ground: &[String]) -> Result<Self> {
        let names = family.iter().map(|s| sets::format_set(s, ground)).collect();
        let poset = Poset::from_leq(names, |a, b| family[a].is_subset(&family[b]))?;
        Semilattice::new(poset)
    }

    /// The sub-poset on `members` (assumed meet-closed), with the map from
    /// new indices to indices of `self`.
    pub fn restrict(&self, members: &[usize]) -> Result<(Semilattice, Vec<usize>)> {
        let (poset, map) = self.poset.restrict(members)?;
        Ok((Semilattice::new(poset)?, map))
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.poset.name(x)
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.poset.index_of(name)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        match self.join[x * self.len() + y] {
            NONE => None,
            j => Some(j as usize),
        }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// The maximum element, if `self` is a lattice.
    pub fn top(&self) -> Option<usize> {
        let maxima = self.poset.maximal_in(&sets::full(self.len()));
        (maxima.len() == 1).then(|| maxima[0])
    }

    /// Join of all elements of `items`; the minimum for an empty input.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        items.into_iter().try_fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.meet(a, b))
    }

    /// Join-irreducible elements (exactly one lower cover), ascending.
    pub fn join_irreducibles(&self) -> &[usize] {
        &self.irreducibles
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.irr_pos[x].is_some()
    }

    /// Position of `x` within [`Self::join_irreducibles`].
    pub fn irreducible_position(&self, x: usize) -> Option<usize> {
        self.irr_pos[x]
    }

    /// The unique lower cover of a join-irreducible element.
    pub fn lower_cover(&self, x: usize) -> Option<usize> {
        match self.poset.lower_covers(x) {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// Join-irreducibles below `x`, as a list of elements.
    pub fn irreducibles_below(&self, x: usize) -> Vec<usize> {
        self.irreducibles.iter().copied().filter(|&p| self.leq(p, x)).collect()
    }

    /// Join-irreducibles below `x` as a bitset over irreducible positions.
    pub fn irreducible_ideal(&self, x: usize) -> ElemSet {
        let mut s = sets::empty(self.irreducibles.len());
        for (i, &p) in self.irreducibles.iter().enumerate() {
            if self.leq(p, x) {
                s.insert(i);
            }
        }
        s
    }

    /// Checks that every principal ideal satisfies the modular law and that
    /// pairwise-existing joins of a triple force the triple join.
    ///
    /// Joins of elements below `t` are the same in `L` and in the ideal of
    /// `t`, so the law only needs checking once per triple, inside the
    /// smallest ideal `b ∨ c` containing it. Violations are reported in
    /// lexicographic `(a, b, c)` order.
    pub fn is_modular(&self) -> std::result::Result<(), ModularityViolation> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == c || !self.leq(a, c) {
                        continue;
                    }
                    let Some(ideal) = self.join(b, c) else {
                        continue;
                    };
                    let left = self.join(a, self.meet(b, c)).expect("both below c");
                    let right = self.meet(self.join(a, b).expect("both below b∨c"), c);
                    if left != right {
                        return Err(ModularityViolation::ModularLaw { ideal, a, b, c });
                    }
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let Some(xy) = self.join(x, y) else { continue };
                for z in y + 1..n {
                    if self.join(y, z).is_some() && self.join(x, z).is_some() && self.join(xy, z).is_none() {
                        return Err(ModularityViolation::TripleJoin { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    /// Modular with distributive principal ideals.
    pub fn is_median(&self) -> bool {
        if self.is_modular().is_err() {
            return false;
        }
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    let Some(bc) = self.join(b, c) else { continue };
                    if self.join(a, bc).is_none() {
                        continue;
                    }
                    let left = self.meet(a, bc);
                    let right = self.join(self.meet(a, b), self.meet(a, c)).expect("bounded by a");
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Pairs of join-irreducibles (as elements, `x < y` by index) whose join
    /// does not exist.
    pub fn induced_inconsistency(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &x) in self.irreducibles.iter().enumerate() {
            for &y in &self.irreducibles[i + 1..] {
                if self.join(x, y).is_none() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Triples of join-irreducibles (as elements, ascending) satisfying
    /// [`Self::collinear_elements`].
    pub fn induced_collinearity(&self) -> Vec<[usize; 3]> {
        let irr = &self.irreducibles;
        let mut out = Vec::new();
        for i in 0..irr.len() {
            for j in i + 1..irr.len() {
                for k in j + 1..irr.len() {
                    if self.collinear_elements(irr[i], irr[j], irr[k]) {
                        out.push([irr[i], irr[j], irr[k]]);
                    }
                }
            }
        }
        out
    }

    /// Pairwise incomparable, with all three pairwise joins existing and
    /// equal. Defined for arbitrary elements, not only irreducibles.
    pub fn collinear_elements(&self, x: usize, y: usize, z: usize) -> bool {
        let p = &self.poset;
        if p.comparable(x, y) || p.comparable(y, z) || p.comparable(x, z) {
            return false;
        }
        match (self.join(x, y), self.join(y, z), self.join(x, z)) {
            (Some(a), Some(b), Some(c)) => a == b && b == c,
            _ => false,
        }
    }
}

impl fmt::Display for Semilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "semilattice with {} elements, {} join-irreducible",
            self.len(),
            self.irreducibles.len()
        )
    }
}

/// The element of `set` above every other member, if any.
fn greatest(poset: &Poset, set: &ElemSet) -> Option<usize> {
    let size = set.count_ones(..);
    let cand = set
        .ones()
        .max_by_key(|&x| poset.down_set(x).intersection(set).count())?;
    (poset.down_set(cand).intersection(set).count() == size).then_some(cand)
}

/// The element of `set` below every other member, if any.
fn least(poset: &Poset, set: &ElemSet) -> Option<usize> {
    let size = set.count_ones(..);
    let cand = set.ones().max_by_key(|&x| poset.up_set(x).intersection(set).count())?;
    (poset.up_set(cand).intersection(set).count() == size).then_some(cand)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn idx(l: &Semilattice, s: &str) -> usize {
        l.index_of(s).unwrap()
    }

    #[test]
    fn meets_and_joins() {
        let m3 = catalog::m3();
        let (x, y) = (idx(&m3, "x"), idx(&m3, "y"));
        assert_eq!(m3.name(m3.meet(x, y)), "0");
        assert_eq!(m3.meet(x, x), x);
        assert_eq!(m3.join(x, y).map(|j| m3.name(j)), Some("1"));
        assert_eq!(m3.join(x, x), Some(x));
        let c = catalog::chain(&["0", "a", "b"]);
        assert_eq!(c.name(c.meet(idx(&c, "a"), idx(&c, "b"))), "a");
        let s2 = catalog::s_k(2);
        assert_eq!(s2.join(idx(&s2, "a"), idx(&s2, "b")), None);
    }

    #[test]
    fn rejects_non_semilattices() {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let two_min = Poset::antichain(names(&["a", "b"])).unwrap();
        assert!(matches!(Semilattice::new(two_min), Err(Error::NotASemilattice(_))));
        // 0 < a,b < c,d: a and b have two minimal upper bounds.
        let bowtie = Poset::new(
            names(&["0", "a", "b", "c", "d"]),
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
        )
        .unwrap();
        let err = Semilattice::new(bowtie).unwrap_err();
        assert!(err.to_string().contains("no least"));
    }

    #[test]
    fn irreducibles() {
        let names = |l: &Semilattice| {
            l.join_irreducibles()
                .iter()
                .map(|&x| l.name(x).to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(&catalog::s_k(2)), ["a", "b"]);
        assert_eq!(names(&catalog::m3()), ["x", "y", "z"]);
        assert_eq!(names(&catalog::chain(&["0", "a", "b"])), ["a", "b"]);
    }

    #[test]
    fn modularity() {
        let n5 = catalog::n5();
        let err = n5.is_modular().unwrap_err();
        assert_eq!(
            err,
            ModularityViolation::ModularLaw {
                ideal: idx(&n5, "1"),
                a: idx(&n5, "a"),
                b: idx(&n5, "b"),
                c: idx(&n5, "c"),
            }
        );
        assert!(err.describe(&n5).contains("modular law"));
        assert!(catalog::m3().is_modular().is_ok());
        assert!(catalog::s_k(2).is_modular().is_ok());
    }

    #[test]
    fn triple_join_violation() {
        // Three atoms with pairwise joins but no common upper bound.
        let names: Vec<String> = ["0", "a", "b", "c", "ab", "bc", "ac"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let p = Poset::new(
            names,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (1, 6), (3, 6)],
        )
        .unwrap();
        let l = Semilattice::new(p).unwrap();
        assert_eq!(
            l.is_modular(),
            Err(ModularityViolation::TripleJoin { x: 1, y: 2, z: 3 })
        );
    }

    #[test]
    fn median() {
        assert!(catalog::s_k(2).is_median());
        assert!(!catalog::m3().is_median());
        assert!(catalog::boolean(2).is_median());
    }

    #[test]
    fn induced_relations() {
        let s2 = catalog::s_k(2);
        assert_eq!(s2.induced_inconsistency(), vec![(1, 2)]);
        assert!(s2.induced_collinearity().is_empty());
        let m3 = catalog::m3();
        assert!(m3.induced_inconsistency().is_empty());
        assert_eq!(m3.induced_collinearity(), vec![[1, 2, 3]]);
        assert!(catalog::boolean(3).induced_collinearity().is_empty());
    }

    #[test]
    fn join_all_and_top() {
        let m3 = catalog::m3();
        assert_eq!(m3.join_all([]), Some(m3.bottom()));
        assert_eq!(m3.join_all([1, 2, 3]), m3.top());
        assert_eq!(catalog::s_k(2).top(), None);
    }
}
