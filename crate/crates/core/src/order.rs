//! Finite posets.
//!
//! A [`Poset`] is stored as its cover (Hasse) relation together with a
//! precomputed reachability table. Elements are addressed by their position
//! in the element list; that position is also the canonical total order used
//! whenever sets, pairs or triples are emitted.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::sets::{self, ElemSet};

#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    /// `below[y]` = `{x : x <= y}`.
    below: Vec<FixedBitSet>,
    /// `above[x]` = `{y : x <= y}`.
    above: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers == other.covers
    }
}

impl Eq for Poset {}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::Input(format!("duplicate element id `{n}`")));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds a poset from an irredundant cover relation.
    ///
    /// `(x, y)` in `covers` means `x` is covered by `y`. Cycles and redundant
    /// covers (pairs implied transitively by the others) are rejected.
    pub fn new(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        for &(x, y) in covers {
            if x >= n || y >= n {
                return Err(Error::Input(format!("cover ({x},{y}) out of range")));
            }
            if x == y {
                return Err(Error::Input(format!("self cover on `{}`", names[x])));
            }
        }
        let mut covers: Vec<(usize, usize)> = covers.to_vec();
        covers.sort_unstable();
        covers.dedup();
        let below =
            reachability(n, &covers).ok_or_else(|| Error::Input("cover relation contains a cycle".to_string()))?;
        let poset = Self::assemble(names, covers, below)?;
        for &(x, y) in &poset.covers {
            let redundant = poset.lower_covers[y]
                .iter()
                .any(|&z| z != x && poset.below[z].contains(x));
            if redundant {
                return Err(Error::Input(format!(
                    "cover ({}, {}) is implied by transitivity",
                    poset.names[x], poset.names[y]
                )));
            }
        }
        Ok(poset)
    }

    /// Builds a poset from covers given by element name.
    pub fn from_named_covers(names: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        let index = index_names(&names)?;
        let lookup = |s: &String| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.clone()));
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, &pairs)
    }

    /// Builds a poset from an arbitrary relation by taking its
    /// reflexive-transitive closure and then the transitive reduction.
    pub fn from_relation(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut edges = Vec::with_capacity(pairs.len());
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::Input(format!("pair ({x},{y}) out of range")));
            }
            if x != y {
                edges.push((x, y));
            }
        }
        let below = reachability(n, &edges).ok_or_else(|| Error::Input("relation is not antisymmetric".to_string()))?;
        Self::from_below(names, below)
    }

    /// Builds a poset from an order predicate `leq(x, y)`, checking that it
    /// is reflexive, antisymmetric and transitive.
    pub fn from_leq<F>(names: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = names.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for y in 0..n {
            for x in 0..n {
                if leq(x, y) {
                    below[y].insert(x);
                }
            }
        }
        for x in 0..n {
            if !below[x].contains(x) {
                return Err(Error::Input(format!("order is not reflexive at `{}`", names[x])));
            }
        }
        for y in 0..n {
            for x in below[y].ones() {
                if x != y && below[x].contains(y) {
                    return Err(Error::Input(format!(
                        "order is not antisymmetric on `{}`, `{}`",
                        names[x], names[y]
                    )));
                }
                if !below[x].is_subset(&below[y]) {
                    return Err(Error::Input(format!(
                        "order is not transitive through `{}` <= `{}`",
                        names[x], names[y]
                    )));
                }
            }
        }
        Self::from_below(names, below)
    }

    pub fn antichain(names: Vec<String>) -> Result<Self> {
        Self::new(names, &[])
    }

    pub fn chain(names: Vec<String>) -> Result<Self> {
        let covers: Vec<_> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Self::new(names, &covers)
    }

    fn from_below(names: Vec<String>, below: Vec<FixedBitSet>) -> Result<Self> {
        let n = names.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (y, set) in below.iter().enumerate() {
            for x in set.ones() {
                above[x].insert(y);
            }
        }
        let mut covers = Vec::new();
        for y in 0..n {
            for x in below[y].ones() {
                if x == y {
                    continue;
                }
                let mut between = above[x].clone();
                between.intersect_with(&below[y]);
                if between.count_ones(..) == 2 {
                    covers.push((x, y));
                }
            }
        }
        covers.sort_unstable();
        Self::assemble(names, covers, below)
    }

    fn assemble(names: Vec<String>, covers: Vec<(usize, usize)>, below: Vec<FixedBitSet>) -> Result<Self> {
        let n = names.len();
        let index = index_names(&names)?;
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (y, set) in below.iter().enumerate() {
            for x in set.ones() {
                above[x].insert(y);
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for &(x, y) in &covers {
            lower_covers[y].push(x);
            upper_covers[x].push(y);
        }
        for v in lower_covers.iter_mut().chain(upper_covers.iter_mut()) {
            v.sort_unstable();
        }
        Ok(Poset {
            names,
            index,
            covers,
            lower_covers,
            upper_covers,
            below,
            above,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Cover pairs `(x, y)` with `x` covered by `y`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `leq` addressed by element name.
    pub fn leq_named(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.leq(self.index_of(x)?, self.index_of(y)?))
    }

    pub fn covered_by(&self, x: usize, y: usize) -> bool {
        self.lower_covers[y].binary_search(&x).is_ok()
    }

    /// `{p : p <= x}` as a bitset.
    pub fn down_set(&self, x: usize) -> &ElemSet {
        &self.below[x]
    }

    /// `{p : x <= p}` as a bitset.
    pub fn up_set(&self, x: usize) -> &ElemSet {
        &self.above[x]
    }

    pub fn principal_ideal(&self, x: usize) -> ElemSet {
        self.below[x].clone()
    }

    pub fn principal_ideal_named(&self, x: &str) -> Result<Vec<String>> {
        let i = self.index_of(x)?;
        Ok(self.below[i].ones().map(|p| self.names[p].clone()).collect())
    }

    /// True iff `set` is downward closed.
    pub fn is_ideal(&self, set: &ElemSet) -> bool {
        set.ones().all(|x| self.below[x].is_subset(set))
    }

    pub fn is_ideal_named(&self, set: &[&str]) -> Result<bool> {
        let mut s = sets::empty(self.len());
        for name in set {
            s.insert(self.index_of(name)?);
        }
        Ok(self.is_ideal(&s))
    }

    /// Smallest ideal containing `set`.
    pub fn down_closure(&self, set: &ElemSet) -> ElemSet {
        let mut out = sets::empty(self.len());
        for x in set.ones() {
            out.union_with(&self.below[x]);
        }
        out
    }

    /// Minimal elements of `set` with respect to the order.
    pub fn minimal_in(&self, set: &ElemSet) -> Vec<usize> {
        set.ones()
            .filter(|&x| self.below[x].ones().all(|y| y == x || !set.contains(y)))
            .collect()
    }

    /// Maximal elements of `set` with respect to the order.
    pub fn maximal_in(&self, set: &ElemSet) -> Vec<usize> {
        set.ones()
            .filter(|&x| self.above[x].ones().all(|y| y == x || !set.contains(y)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower_covers[x].is_empty()).collect()
    }

    /// The induced subposet on `subset` (kept in canonical order), with the
    /// map from new indices to old ones.
    pub fn restrict(&self, subset: &[usize]) -> Result<(Poset, Vec<usize>)> {
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let sub = Poset::from_leq(names, |a, b| self.leq(keep[a], keep[b]))?;
        Ok((sub, keep))
    }

    /// The same poset with every element renamed.
    pub fn renamed(&self, names: Vec<String>) -> Result<Poset> {
        if names.len() != self.len() {
            return Err(Error::Input("rename list has the wrong length".into()));
        }
        Poset::assemble(names, self.covers.clone(), self.below.clone())
    }
}

/// Reflexive-transitive closure of a DAG given by edges `(x, y)` meaning
/// `x < y`. Returns `None` when the edges contain a cycle.
fn reachability(n: usize, edges: &[(usize, usize)]) -> Option<Vec<FixedBitSet>> {
    let mut preds = vec![Vec::new(); n];
    let mut succs = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(x, y) in edges {
        preds[y].push(x);
        succs[x].push(y);
        indeg[y] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &succs[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for &v in &order {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(v);
        for &p in &preds[v] {
            set.union_with(&below[p]);
        }
        below[v] = set;
    }
    Some(below)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn chain3() -> Poset {
        Poset::chain(names(&["0", "a", "b"])).unwrap()
    }

    fn diamond_m3() -> Poset {
        Poset::from_named_covers(
            names(&["0", "x", "y", "z", "1"]),
            &[
                ("0".into(), "x".into()),
                ("0".into(), "y".into()),
                ("0".into(), "z".into()),
                ("x".into(), "1".into()),
                ("y".into(), "1".into()),
                ("z".into(), "1".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn leq_on_chain_and_antichain() {
        let c = chain3();
        assert!(c.leq_named("0", "b").unwrap());
        assert!(!c.leq_named("b", "a").unwrap());
        let a = Poset::antichain(names(&["x", "y"])).unwrap();
        assert!(!a.leq_named("x", "y").unwrap());
        assert!(matches!(c.leq_named("q", "a"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn ideals() {
        let c = chain3();
        assert!(c.is_ideal_named(&["0", "a"]).unwrap());
        assert!(!c.is_ideal_named(&["b"]).unwrap());
        assert!(c.is_ideal_named(&[]).unwrap());
        assert_eq!(c.principal_ideal_named("b").unwrap(), names(&["0", "a", "b"]));
        let a = Poset::antichain(names(&["x", "y"])).unwrap();
        assert_eq!(a.principal_ideal_named("x").unwrap(), names(&["x"]));
        assert_eq!(diamond_m3().principal_ideal_named("1").unwrap().len(), 5);
    }

    #[test]
    fn rejects_cycles_and_redundant_covers() {
        let err = Poset::new(names(&["a", "b"]), &[(0, 1), (1, 0)]).unwrap_err();
        assert!(err.to_string().contains("cycle"));
        let err = Poset::new(names(&["a", "b", "c"]), &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert!(err.to_string().contains("transitivity"));
        assert!(Poset::new(names(&["a", "a"]), &[]).is_err());
    }

    #[test]
    fn relation_is_reduced() {
        let p = Poset::from_relation(names(&["a", "b", "c"]), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        assert!(Poset::from_relation(names(&["a", "b"]), &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn from_leq_matches_covers() {
        let m3 = diamond_m3();
        let rebuilt = Poset::from_leq(m3.names().to_vec(), |a, b| m3.leq(a, b)).unwrap();
        assert_eq!(rebuilt, m3);
        let bad = Poset::from_leq(names(&["a", "b"]), |a, b| a != b || a == 0);
        assert!(bad.is_err());
    }

    #[test]
    fn minimal_and_maximal() {
        let m3 = diamond_m3();
        let all = sets::full(5);
        assert_eq!(m3.minimal_in(&all), vec![0]);
        assert_eq!(m3.maximal_in(&all), vec![4]);
        let atoms = sets::from_iter(5, [1, 2, 3]);
        assert_eq!(m3.maximal_in(&atoms), vec![1, 2, 3]);
    }
}
