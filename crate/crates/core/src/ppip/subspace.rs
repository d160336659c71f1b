//! Consistent subspaces: closure, joins, enumeration and greedy chains.

use std::collections::{HashMap, HashSet, VecDeque};

use super::Ppip;
use crate::error::{Error, Result};
use crate::semilattice::Semilattice;
use crate::sets::{self, ElemSet};

/// All consistent subspaces of a PPIP, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct SubspaceFamily {
    /// Subspaces sorted by cardinality, then by members.
    pub members: Vec<ElemSet>,
    /// The inclusion order on `members`; element `i` is `members[i]`.
    pub lattice: Semilattice,
    index: HashMap<ElemSet, usize>,
}

impl SubspaceFamily {
    pub fn position(&self, set: &ElemSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Ppip {
    /// Adds every `r` collinear with two members of `w`.
    fn collinear_completion(&self, w: &ElemSet) -> ElemSet {
        let mut out = w.clone();
        let members: Vec<usize> = w.ones().collect();
        for (i, &p) in members.iter().enumerate() {
            for &q in &members[i + 1..] {
                if let Some(th) = self.thirds(p, q) {
                    out.union_with(th);
                }
            }
        }
        out
    }

    /// True iff `set` is an ideal, closed under collinearity and consistent.
    pub fn is_consistent_subspace(&self, set: &ElemSet) -> bool {
        self.poset.is_ideal(set) && self.is_consistent(set) && self.collinear_completion(set) == *set
    }

    /// The least consistent subspace containing `x`, by alternating
    /// collinear completion and downward closure until nothing changes.
    pub fn subspace_closure(&self, x: &ElemSet) -> Result<ElemSet> {
        if let Some((p, q)) = self.inconsistent_pair_in(x) {
            return Err(Error::InconsistentInput(format!(
                "{} and {} are inconsistent",
                self.name(p),
                self.name(q)
            )));
        }
        let mut cur = self.poset.down_closure(x);
        loop {
            let next = self.poset.down_closure(&self.collinear_completion(&cur));
            if next == cur {
                break;
            }
            cur = next;
        }
        if let Some((p, q)) = self.inconsistent_pair_in(&cur) {
            return Err(Error::InconsistentInput(format!(
                "closure of {} contains the inconsistent pair {}, {}",
                self.format_set(x),
                self.name(p),
                self.name(q)
            )));
        }
        Ok(cur)
    }

    /// `S ∨ T = S ∪ T ∪ {r : C(p, q, r), p ∈ S, q ∈ T}` when `S ∪ T` is
    /// consistent, `None` otherwise.
    pub fn join_subspaces(&self, s: &ElemSet, t: &ElemSet) -> Option<ElemSet> {
        let union = sets::union(s, t);
        if !self.is_consistent(&union) {
            return None;
        }
        let mut out = union;
        for p in s.ones() {
            for q in t.ones() {
                if let Some(th) = self.thirds(p, q) {
                    out.union_with(th);
                }
            }
        }
        Some(out)
    }

    /// Enumerates consistent subspaces after checking the PPIP axioms.
    pub fn consistent_subspaces(&self) -> Result<SubspaceFamily> {
        if let Err(v) = self.check_axioms() {
            return Err(Error::Precondition(v.describe(self)));
        }
        self.enumerate_subspaces(usize::MAX)
    }

    /// Enumerates consistent subspaces by growing from the empty set: each
    /// step adds one element minimal outside the current subspace and takes
    /// the closure. Stops with a budget error after `limit` subspaces.
    pub fn enumerate_subspaces(&self, limit: usize) -> Result<SubspaceFamily> {
        let n = self.len();
        let empty = sets::empty(n);
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(empty.clone());
        queue.push_back(empty);
        while let Some(s) = queue.pop_front() {
            for p in 0..n {
                if s.contains(p) || !self.is_available(&s, p) {
                    continue;
                }
                let mut grown = s.clone();
                grown.insert(p);
                let Ok(next) = self.subspace_closure(&grown) else {
                    continue;
                };
                if !seen.contains(&next) {
                    if seen.len() >= limit {
                        return Err(Error::budget(
                            "consistent subspaces",
                            seen.len() as u128 + 1,
                            limit as u128,
                        ));
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut members: Vec<ElemSet> = seen.into_iter().collect();
        members.sort_by_cached_key(sets::canonical_key);
        let lattice = Semilattice::from_family(&members, self.names())?;
        let index = members.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(SubspaceFamily {
            members,
            lattice,
            index,
        })
    }

    /// `p` is minimal in the complement of `s` and consistent with `s`.
    fn is_available(&self, s: &ElemSet, p: usize) -> bool {
        self.poset.lower_covers(p).iter().all(|&x| s.contains(x)) && self.inconsistent[p].is_disjoint(s)
    }

    /// Greedy maximal chain of consistent subspaces from the empty set:
    /// repeatedly add the least element `p` minimal outside `S` and
    /// consistent with it, together with every `r` collinear with `p` and a
    /// member of `S`. Each step is checked to be a cover.
    pub fn maximal_chain(&self) -> Result<Vec<ElemSet>> {
        let n = self.len();
        let mut chain = vec![sets::empty(n)];
        loop {
            let s = chain.last().expect("nonempty chain");
            let Some(p) = (0..n).find(|&p| !s.contains(p) && self.is_available(s, p)) else {
                break;
            };
            let mut next = s.clone();
            next.insert(p);
            for q in s.ones() {
                if let Some(th) = self.thirds(p, q) {
                    next.union_with(th);
                }
            }
            if !self.is_consistent_subspace(&next) {
                return Err(Error::Internal(format!(
                    "greedy step {} is not a consistent subspace",
                    self.format_set(&next)
                )));
            }
            let mut with_p = s.clone();
            with_p.insert(p);
            if self.subspace_closure(&with_p).ok().as_ref() != Some(&next) {
                return Err(Error::Internal(format!(
                    "greedy step {} is not the join of {} and {}",
                    self.format_set(&next),
                    self.format_set(s),
                    self.name(p)
                )));
            }
            chain.push(next);
        }
        Ok(chain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Poset;

    fn diamond() -> Ppip {
        let p = Poset::antichain(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        Ppip::new(p, &[], &[[0, 1, 2]]).unwrap()
    }

    fn pair() -> Ppip {
        let p = Poset::antichain(vec!["a".into(), "b".into()]).unwrap();
        Ppip::new(p, &[(0, 1)], &[]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let m = diamond();
        let c = m.subspace_closure(&sets::from_iter(3, [0, 1])).unwrap();
        assert_eq!(sets::members(&c), vec![0, 1, 2]);
        assert_eq!(m.subspace_closure(&sets::empty(3)).unwrap(), sets::empty(3));
        let err = pair().subspace_closure(&sets::full(2)).unwrap_err();
        assert!(matches!(err, Error::InconsistentInput(_)));
    }

    #[test]
    fn join_examples() {
        let m = diamond();
        let j = m
            .join_subspaces(&sets::singleton(3, 0), &sets::singleton(3, 1))
            .unwrap();
        assert_eq!(sets::members(&j), vec![0, 1, 2]);
        let x = sets::singleton(3, 0);
        assert_eq!(m.join_subspaces(&x, &x), Some(x));
        let s = pair();
        assert_eq!(s.join_subspaces(&sets::singleton(2, 0), &sets::singleton(2, 1)), None);
    }

    #[test]
    fn enumeration_examples() {
        let fam = diamond().consistent_subspaces().unwrap();
        assert_eq!(fam.len(), 5);
        assert!(fam.lattice.is_modular().is_ok());
        assert_eq!(fam.lattice.join_irreducibles().len(), 3);
        let s2 = pair().consistent_subspaces().unwrap();
        assert_eq!(s2.len(), 3);
        assert_eq!(s2.lattice.top(), None);
        let empty = Ppip::new(Poset::antichain(vec![]).unwrap(), &[], &[]).unwrap();
        assert_eq!(empty.consistent_subspaces().unwrap().len(), 1);
    }

    #[test]
    fn enumeration_requires_axioms() {
        let p = Poset::antichain(vec!["p".into(), "q".into(), "r".into(), "s".into()]).unwrap();
        let bad = Ppip::new(p, &[(0, 3)], &[[0, 1, 2]]).unwrap();
        assert!(matches!(bad.consistent_subspaces(), Err(Error::Precondition(_))));
    }

    #[test]
    fn greedy_chain() {
        let chain = diamond().maximal_chain().unwrap();
        let as_vecs: Vec<Vec<usize>> = chain.iter().map(sets::members).collect();
        assert_eq!(as_vecs, vec![vec![], vec![0], vec![0, 1, 2]]);
        let empty = Ppip::new(Poset::antichain(vec![]).unwrap(), &[], &[]).unwrap();
        assert_eq!(empty.maximal_chain().unwrap().len(), 1);
    }
}
