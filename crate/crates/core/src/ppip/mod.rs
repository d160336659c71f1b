//! Projective posets with inconsistent pairs (PPIPs).
//!
//! A [`Ppip`] is a poset with a symmetric irreflexive inconsistency relation
//! and a symmetric ternary collinearity relation. The submodules provide the
//! axiom checks, consistent subspaces and the correspondence with modular
//! semilattices.

mod axioms;
mod birkhoff;
mod subspace;

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::order::Poset;
use crate::sets::{self, ElemSet};

pub use axioms::{Axiom, AxiomViolation};
pub use birkhoff::{
    birkhoff_roundtrip, check_isomorphic_via, induced_ppip, induced_ppip_unchecked, BirkhoffReport, InducedPpip,
};
pub use subspace::SubspaceFamily;

#[derive(Clone, Debug)]
pub struct Ppip {
    poset: Poset,
    inconsistent: Vec<FixedBitSet>,
    collinear: BTreeSet<[usize; 3]>,
    /// For each unordered pair `(p, q)` with `p < q`, every `r` with
    /// `C(p, q, r)`.
    thirds: HashMap<(usize, usize), FixedBitSet>,
}

impl PartialEq for Ppip {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset && self.inconsistent == other.inconsistent && self.collinear == other.collinear
    }
}

impl Eq for Ppip {}

fn sort3(t: [usize; 3]) -> [usize; 3] {
    let mut t = t;
    t.sort_unstable();
    t
}

impl Ppip {
    /// Builds a PPIP, checking only structural validity: indices in range,
    /// irreflexive inconsistency, three distinct elements per triple.
    /// Both relations are symmetrized. Axioms are checked separately by
    /// [`Ppip::check_axioms`].
    pub fn new(poset: Poset, inconsistent: &[(usize, usize)], collinear: &[[usize; 3]]) -> Result<Self> {
        let n = poset.len();
        let mut adj = vec![sets::empty(n); n];
        for &(p, q) in inconsistent {
            if p >= n || q >= n {
                return Err(Error::Input(format!("inconsistent: pair ({p},{q}) out of range")));
            }
            if p == q {
                return Err(Error::Input(format!(
                    "inconsistent: `{}` paired with itself",
                    poset.name(p)
                )));
            }
            adj[p].insert(q);
            adj[q].insert(p);
        }
        let mut triples = BTreeSet::new();
        let mut thirds: HashMap<(usize, usize), FixedBitSet> = HashMap::new();
        for &t in collinear {
            if t.iter().any(|&x| x >= n) {
                return Err(Error::Input(format!("collinear: triple {t:?} out of range")));
            }
            let [a, b, c] = sort3(t);
            if a == b || b == c {
                return Err(Error::Input(format!(
                    "collinear: triple ({}, {}, {}) repeats an element",
                    poset.name(t[0]),
                    poset.name(t[1]),
                    poset.name(t[2])
                )));
            }
            if triples.insert([a, b, c]) {
                for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                    thirds.entry((x, y)).or_insert_with(|| sets::empty(n)).insert(z);
                }
            }
        }
        Ok(Ppip {
            poset,
            inconsistent: adj,
            collinear: triples,
            thirds,
        })
    }

    /// Builds a PPIP from element names.
    pub fn from_named(poset: Poset, inconsistent: &[(String, String)], collinear: &[[String; 3]]) -> Result<Self> {
        let pairs = inconsistent
            .iter()
            .map(|(a, b)| Ok((poset.index_of(a)?, poset.index_of(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let triples = collinear
            .iter()
            .map(|[a, b, c]| Ok([poset.index_of(a)?, poset.index_of(b)?, poset.index_of(c)?]))
            .collect::<Result<Vec<_>>>()?;
        Ppip::new(poset, &pairs, &triples)
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

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn inconsistent(&self, p: usize, q: usize) -> bool {
        self.inconsistent[p].contains(q)
    }

    /// Elements inconsistent with `p`.
    pub fn inconsistent_with(&self, p: usize) -> &ElemSet {
        &self.inconsistent[p]
    }

    /// All inconsistent pairs `(p, q)` with `p < q`, sorted.
    pub fn inconsistent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.inconsistent[p].ones().filter(|&q| q > p) {
                out.push((p, q));
            }
        }
        out
    }

    pub fn collinear(&self, p: usize, q: usize, r: usize) -> bool {
        self.collinear.contains(&sort3([p, q, r]))
    }

    /// All collinear triples, each sorted ascending, in lexicographic order.
    pub fn collinear_triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.collinear.iter().copied()
    }

    pub fn collinear_count(&self) -> usize {
        self.collinear.len()
    }

    /// Every `r` with `C(p, q, r)`.
    pub fn thirds(&self, p: usize, q: usize) -> Option<&ElemSet> {
        let key = if p < q { (p, q) } else { (q, p) };
        self.thirds.get(&key)
    }

    /// True iff `set` contains no inconsistent pair.
    pub fn is_consistent(&self, set: &ElemSet) -> bool {
        set.ones().all(|p| self.inconsistent[p].is_disjoint(set))
    }

    /// The first inconsistent pair inside `set`, if any.
    pub fn inconsistent_pair_in(&self, set: &ElemSet) -> Option<(usize, usize)> {
        for p in set.ones() {
            if let Some(q) = self.inconsistent[p].intersection(set).find(|&q| q > p) {
                return Some((p, q));
            }
        }
        None
    }

    /// Pairs `(p, q)`, `p < q`, that are inconsistent while no pair strictly
    /// below them (componentwise) is.
    pub fn minimal_inconsistent_pairs(&self) -> Vec<(usize, usize)> {
        self.inconsistent_pairs()
            .into_iter()
            .filter(|&(p, q)| {
                !self.poset.down_set(p).ones().any(|p2| {
                    self.poset
                        .down_set(q)
                        .ones()
                        .any(|q2| (p2, q2) != (p, q) && self.inconsistent(p2, q2))
                })
            })
            .collect()
    }

    /// The same structure restricted to `subset`, with the index map.
    pub fn restrict(&self, subset: &[usize]) -> Result<(Ppip, Vec<usize>)> {
        let (poset, keep) = self.poset.restrict(subset)?;
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            pos[x] = i;
        }
        let pairs: Vec<_> = self
            .inconsistent_pairs()
            .into_iter()
            .filter(|&(p, q)| pos[p] != usize::MAX && pos[q] != usize::MAX)
            .map(|(p, q)| (pos[p], pos[q]))
            .collect();
        let triples: Vec<_> = self
            .collinear
            .iter()
            .filter(|t| t.iter().all(|&x| pos[x] != usize::MAX))
            .map(|t| [pos[t[0]], pos[t[1]], pos[t[2]]])
            .collect();
        Ok((Ppip::new(poset, &pairs, &triples)?, keep))
    }

    pub fn format_set(&self, set: &ElemSet) -> String {
        sets::format_set(set, self.names())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn structural_validation() {
        let p = Poset::antichain(names(&["p", "q"])).unwrap();
        assert!(Ppip::new(p.clone(), &[(0, 0)], &[]).is_err());
        assert!(Ppip::new(p.clone(), &[(0, 5)], &[]).is_err());
        assert!(Ppip::new(p.clone(), &[], &[[0, 1, 1]]).is_err());
        let ok = Ppip::new(p, &[(1, 0)], &[]).unwrap();
        assert!(ok.inconsistent(0, 1) && ok.inconsistent(1, 0));
        assert_eq!(ok.inconsistent_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn thirds_lookup() {
        let p = Poset::antichain(names(&["x", "y", "z"])).unwrap();
        let ppip = Ppip::new(p, &[], &[[2, 0, 1]]).unwrap();
        assert!(ppip.collinear(1, 2, 0));
        assert_eq!(ppip.thirds(2, 1).unwrap().ones().collect::<Vec<_>>(), vec![0]);
        assert!(ppip.thirds(0, 0).is_none());
    }

    #[test]
    fn minimal_inconsistent_pairs_skip_upper_pairs() {
        // a < a', b incomparable; a ⌣ b and a' ⌣ b.
        let p = Poset::new(names(&["a", "a'", "b"]), &[(0, 1)]).unwrap();
        let ppip = Ppip::new(p, &[(0, 2), (1, 2)], &[]).unwrap();
        assert_eq!(ppip.minimal_inconsistent_pairs(), vec![(0, 2)]);
    }
}
