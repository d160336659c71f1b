//! Implicational systems over a finite ground set.
//!
//! An implication `A -> B` forbids closed sets that contain `A` without `B`;
//! an improper implication `A -> ∅` forbids containing `A` at all. The
//! closed sets form an intersection-closed family `F(Σ)`, which may lack a
//! top element and may even be empty.

mod optimal;
mod pseudoclosed;
mod recognize;

use std::cell::Cell;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::semilattice::Semilattice;
use crate::sets::{self, ElemSet};

pub use optimal::{
    diamond_elements, optimal_base, optimal_base_from_implications, optimal_base_from_implications_within,
    DiamondElement,
};
pub use pseudoclosed::DEFAULT_PSEUDOCLOSED_BUDGET;
pub use recognize::{IrreduciblePpip, RecognitionFailure, RecognitionStep};

/// Default limit on the number of closed sets enumerated by
/// [`ImplicationalSystem::family`].
pub const DEFAULT_FAMILY_BUDGET: usize = 1 << 20;

thread_local! {
    static ENUMERATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Number of full closed-set or subset enumerations started on this thread.
/// Recognition is required to leave it untouched.
pub fn enumeration_count() -> u64 {
    ENUMERATIONS.with(Cell::get)
}

pub fn reset_enumeration_count() {
    ENUMERATIONS.with(|c| c.set(0));
}

fn note_enumeration() {
    ENUMERATIONS.with(|c| c.set(c.get() + 1));
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Implication {
    pub premise: ElemSet,
    /// Empty for an improper implication.
    pub conclusion: ElemSet,
}

impl Implication {
    pub fn is_improper(&self) -> bool {
        self.conclusion.is_clear()
    }

    fn key(&self) -> ((usize, Vec<usize>), (usize, Vec<usize>)) {
        (
            sets::canonical_key(&self.premise),
            sets::canonical_key(&self.conclusion),
        )
    }
}

#[derive(Clone, Debug)]
pub struct ImplicationalSystem {
    ground: Vec<String>,
    index: HashMap<String, usize>,
    implications: Vec<Implication>,
    /// `watch[e]` lists the implications whose premise contains `e`.
    watch: Vec<Vec<usize>>,
}

impl PartialEq for ImplicationalSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.implications == other.implications
    }
}

impl Eq for ImplicationalSystem {}

impl ImplicationalSystem {
    /// Builds a system from index-based implications. Duplicates are removed
    /// and implications sorted by premise, then conclusion (each compared by
    /// size, then members).
    pub fn new(ground: Vec<String>, implications: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        let n = ground.len();
        let mut index = HashMap::with_capacity(n);
        for (i, g) in ground.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate ground element `{g}`")));
            }
        }
        let mut imps = Vec::with_capacity(implications.len());
        for (a, b) in implications {
            if let Some(&bad) = a.iter().chain(&b).find(|&&x| x >= n) {
                return Err(Error::Input(format!(
                    "implication mentions index {bad} outside the ground set"
                )));
            }
            imps.push(Implication {
                premise: sets::from_iter(n, a),
                conclusion: sets::from_iter(n, b),
            });
        }
        Ok(Self::assemble(ground, index, imps))
    }

    /// Builds a system from implications given by element name.
    pub fn from_named(ground: Vec<String>, implications: &[(Vec<String>, Vec<String>)]) -> Result<Self> {
        let index: HashMap<&str, usize> = ground.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let look = |names: &[String]| {
            names
                .iter()
                .map(|s| {
                    index
                        .get(s.as_str())
                        .copied()
                        .ok_or_else(|| Error::UnknownElement(s.clone()))
                })
                .collect::<Result<Vec<_>>>()
        };
        let imps = implications
            .iter()
            .map(|(a, b)| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, imps)
    }

    fn assemble(ground: Vec<String>, index: HashMap<String, usize>, mut imps: Vec<Implication>) -> Self {
        imps.sort_by_cached_key(Implication::key);
        imps.dedup();
        let mut watch = vec![Vec::new(); ground.len()];
        for (k, imp) in imps.iter().enumerate() {
            for e in imp.premise.ones() {
                watch[e].push(k);
            }
        }
        ImplicationalSystem {
            ground,
            index,
            implications: imps,
            watch,
        }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_len(&self) -> usize {
        self.ground.len()
    }

    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Parses element names into a set.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet> {
        let mut s = sets::empty(self.ground.len());
        for n in names {
            s.insert(self.index_of(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn format_set(&self, s: &ElemSet) -> String {
        sets::format_set(s, &self.ground)
    }

    /// `s(Σ)`: total number of premise and conclusion entries.
    pub fn size(&self) -> usize {
        self.implications
            .iter()
            .map(|i| i.premise.count_ones(..) + i.conclusion.count_ones(..))
            .sum()
    }

    /// Least closed superset of `x`, or `None` when no closed set contains
    /// `x`. Linear-time forward chaining: each implication keeps a count of
    /// premise elements not yet derived and fires when it reaches zero; a
    /// firing improper implication means the closure does not exist.
    pub fn closure(&self, x: &ElemSet) -> Option<ElemSet> {
        let mut missing: Vec<usize> = self.implications.iter().map(|i| i.premise.count_ones(..)).collect();
        let mut out = sets::empty(self.ground.len());
        let mut queue: Vec<usize> = Vec::new();
        let fire = |k: usize, out: &mut ElemSet, queue: &mut Vec<usize>| -> bool {
            let imp = &self.implications[k];
            if imp.is_improper() {
                return false;
            }
            for e in imp.conclusion.ones() {
                if !out.put(e) {
                    queue.push(e);
                }
            }
            true
        };
        for (k, &m) in missing.iter().enumerate() {
            if m == 0 && !fire(k, &mut out, &mut queue) {
                return None;
            }
        }
        for e in x.ones() {
            if !out.put(e) {
                queue.push(e);
            }
        }
        while let Some(e) = queue.pop() {
            for &k in &self.watch[e] {
                missing[k] -= 1;
                if missing[k] == 0 && !fire(k, &mut out, &mut queue) {
                    return None;
                }
            }
        }
        Some(out)
    }

    /// Closure of a set given by element names.
    pub fn closure_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Option<ElemSet>> {
        Ok(self.closure(&self.set_of(names)?))
    }

    /// `X ∪ ⋃ {B : (A -> B) ∈ Σ, A ⊆ X}`, ignoring improper implications.
    pub fn apply_once(&self, x: &ElemSet) -> ElemSet {
        let mut out = x.clone();
        for imp in &self.implications {
            if imp.premise.is_subset(x) {
                out.union_with(&imp.conclusion);
            }
        }
        out
    }

    /// Union of the iterates `X, i(X), i(i(X)), ...` together with whether
    /// some improper premise became contained along the way.
    pub fn iterate_union(&self, x: &ElemSet) -> (ElemSet, bool) {
        let mut cur = x.clone();
        loop {
            let blocked = self
                .implications
                .iter()
                .any(|i| i.is_improper() && i.premise.is_subset(&cur));
            let next = self.apply_once(&cur);
            if next == cur {
                return (cur, blocked);
            }
            if blocked {
                return (next, true);
            }
            cur = next;
        }
    }

    pub fn is_closed(&self, x: &ElemSet) -> bool {
        self.implications
            .iter()
            .all(|i| !i.premise.is_subset(x) || (!i.is_improper() && i.conclusion.is_subset(x)))
    }

    /// All closed sets, generated from `c(∅)` by repeatedly closing
    /// `F ∪ {e}`. Fails once more than `budget` sets are found.
    pub fn family(&self, budget: usize) -> Result<ClosedFamily> {
        note_enumeration();
        let n = self.ground.len();
        let mut members = Vec::new();
        if let Some(bottom) = self.closure(&sets::empty(n)) {
            let mut seen: HashSet<ElemSet> = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(bottom.clone());
            queue.push_back(bottom);
            while let Some(f) = queue.pop_front() {
                for e in 0..n {
                    if f.contains(e) {
                        continue;
                    }
                    let mut g = f.clone();
                    g.insert(e);
                    if let Some(c) = self.closure(&g) {
                        if seen.insert(c.clone()) {
                            if seen.len() > budget {
                                return Err(Error::budget("closed sets", seen.len() as u128, budget as u128));
                            }
                            queue.push_back(c);
                        }
                    }
                }
                members.push(f);
            }
        }
        members.sort_by_cached_key(sets::canonical_key);
        Ok(ClosedFamily {
            ground: self.ground.clone(),
            members,
        })
    }

    /// Removes every element whose singleton closure does not exist.
    /// Implications whose premise mentions a removed element are dropped;
    /// those whose conclusion does become improper. Returns the new system
    /// and the removed elements.
    pub fn pruned(&self) -> (ImplicationalSystem, Vec<usize>) {
        let n = self.ground.len();
        let removed: Vec<usize> = (0..n)
            .filter(|&e| self.closure(&sets::singleton(n, e)).is_none())
            .collect();
        if removed.is_empty() {
            return (self.clone(), removed);
        }
        let mut pos = vec![None; n];
        let mut ground = Vec::new();
        for e in 0..n {
            if removed.binary_search(&e).is_err() {
                pos[e] = Some(ground.len());
                ground.push(self.ground[e].clone());
            }
        }
        let mut imps = Vec::new();
        for imp in &self.implications {
            if imp.premise.ones().any(|e| pos[e].is_none()) {
                continue;
            }
            let premise: Vec<usize> = imp.premise.ones().map(|e| pos[e].expect("kept")).collect();
            let conclusion: Vec<usize> = if imp.conclusion.ones().any(|e| pos[e].is_none()) {
                Vec::new()
            } else {
                imp.conclusion.ones().map(|e| pos[e].expect("kept")).collect()
            };
            imps.push((premise, conclusion));
        }
        let system = ImplicationalSystem::new(ground, imps).expect("pruned system is well formed");
        (system, removed)
    }

    /// `A` or `A ∪ B` for each implication, as element-name lists.
    pub fn describe_implication(&self, imp: &Implication) -> String {
        let names = |s: &ElemSet| s.ones().map(|e| self.ground[e].as_str()).collect::<Vec<_>>().join(" ");
        if imp.is_improper() {
            format!("{} -> _|_", names(&imp.premise))
        } else {
            format!("{} -> {}", names(&imp.premise), names(&imp.conclusion))
        }
    }
}

impl fmt::Display for ImplicationalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for imp in &self.implications {
            writeln!(f, "{}", self.describe_implication(imp))?;
        }
        Ok(())
    }
}

/// The closed sets of a system, sorted by size then members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFamily {
    pub ground: Vec<String>,
    pub members: Vec<ElemSet>,
}

impl ClosedFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &ElemSet) -> bool {
        self.members
            .binary_search_by_key(&sets::canonical_key(set), sets::canonical_key)
            .is_ok()
    }

    /// The family ordered by inclusion.
    pub fn semilattice(&self) -> Result<Semilattice> {
        if self.members.is_empty() {
            return Err(Error::NotASemilattice("the family of closed sets is empty".into()));
        }
        Semilattice::from_family(&self.members, &self.ground)
    }

    /// Intersection of all members containing `x`, or `None` if there are
    /// none. The definitional closure used to cross-check forward chaining.
    pub fn closure_by_intersection(&self, x: &ElemSet) -> Option<ElemSet> {
        self.members
            .iter()
            .filter(|f| x.is_subset(f))
            .fold(None, |acc: Option<ElemSet>, f| match acc {
                None => Some(f.clone()),
                Some(a) => Some(sets::intersection(&a, f)),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn sys(ground: &[&str], imps: &[(&[usize], &[usize])]) -> ImplicationalSystem {
        ImplicationalSystem::new(
            ground.iter().map(|s| s.to_string()).collect(),
            imps.iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect(),
        )
        .unwrap()
    }

    fn names(sys: &ImplicationalSystem, s: &Option<ElemSet>) -> Option<Vec<String>> {
        s.as_ref().map(|s| s.ones().map(|e| sys.ground()[e].clone()).collect())
    }

    #[test]
    fn closures_on_example_base() {
        let s = catalog::example_base();
        assert_eq!(s.len(), 9);
        assert_eq!(s.size(), 24);
        let c = s.closure_named(&["4"]).unwrap();
        assert_eq!(names(&s, &c).unwrap(), ["1", "3", "4", "5"]);
        assert_eq!(s.closure_named(&["1", "8"]).unwrap(), None);
        assert!(s.closure_named(&["9"]).is_err());
        let empty = sys(&["a"], &[]);
        assert_eq!(empty.closure(&sets::empty(1)), Some(sets::empty(1)));
    }

    #[test]
    fn families() {
        let s = sys(&["a", "b"], &[(&[0], &[1])]);
        let fam = s.family(DEFAULT_FAMILY_BUDGET).unwrap();
        let got: Vec<Vec<usize>> = fam.members.iter().map(sets::members).collect();
        assert_eq!(got, vec![vec![], vec![1], vec![0, 1]]);
        let s = sys(&["a"], &[]);
        assert_eq!(s.family(DEFAULT_FAMILY_BUDGET).unwrap().len(), 2);
        let s = sys(&["a", "b", "c"], &[]);
        assert!(matches!(s.family(4), Err(Error::Budget { .. })));
        let blocked = sys(&["a"], &[(&[], &[])]);
        assert!(blocked.family(DEFAULT_FAMILY_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn deduplicates() {
        let s = sys(&["a", "b"], &[(&[0], &[1]), (&[0], &[1])]);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn pruning_rewrites_implications() {
        // c({c}) does not exist; a b -> c becomes improper, b c -> a is dropped.
        let s = sys(&["a", "b", "c"], &[(&[2], &[]), (&[0, 1], &[2]), (&[2, 1], &[0])]);
        let (p, removed) = s.pruned();
        assert_eq!(removed, vec![2]);
        assert_eq!(p.ground(), ["a", "b"]);
        assert_eq!(p.to_string(), "a b -> _|_\n");
        assert_eq!(p.family(100).unwrap().len(), 3);
        assert_eq!(s.family(100).unwrap().len(), 3);
    }

    #[test]
    fn iterates_agree_with_chaining() {
        let s = catalog::example_base();
        let x = s.set_of(&["5", "6"]).unwrap();
        let (union, blocked) = s.iterate_union(&x);
        assert!(!blocked);
        assert_eq!(Some(union), s.closure(&x));
        // 6 -> 2 together with 4 triggers 2 4 -> _|_.
        let x = s.set_of(&["4", "6"]).unwrap();
        assert!(s.iterate_union(&x).1);
        assert_eq!(s.closure(&x), None);
    }
}
