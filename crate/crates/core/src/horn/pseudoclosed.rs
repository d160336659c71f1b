//! Quasiclosed and pseudoclosed sets.
//!
//! `X` is quasiclosed when every `Y ⊆ X` whose closure exists and differs
//! from `c(X)` has `c(Y) ⊆ X`; when `c(X)` does not exist every existing
//! `c(Y)` must lie in `X`. A pseudoclosed set is a quasiclosed, non-closed
//! set minimal among those with the same closure (or the same lack of one).

use std::collections::HashMap;

use super::{note_enumeration, ImplicationalSystem};
use crate::error::{Error, Result};
use crate::sets::{self, ElemSet};

/// Default limit on `3^|E|`, the number of (subset, sub-subset) pairs the
/// brute-force search visits.
pub const DEFAULT_PSEUDOCLOSED_BUDGET: u128 = 1_594_323; // 3^13

/// Largest set accepted by [`ImplicationalSystem::quasi_closure`].
const QUASI_CLOSURE_LIMIT: usize = 20;

fn to_mask(s: &ElemSet) -> u32 {
    s.ones().fold(0, |m, e| m | 1 << e)
}

fn from_mask(n: usize, m: u32) -> ElemSet {
    sets::from_iter(n, (0..n).filter(|&e| m >> e & 1 == 1))
}

impl ImplicationalSystem {
    fn closure_table(&self) -> Vec<Option<u32>> {
        let n = self.ground_len();
        (0..1u32 << n)
            .map(|m| self.closure(&from_mask(n, m)).map(|c| to_mask(&c)))
            .collect()
    }

    /// All pseudoclosed sets, by examining every subset of the ground set.
    /// Fails when `3^|E|` exceeds `budget`.
    pub fn pseudoclosed_sets(&self, budget: u128) -> Result<Vec<ElemSet>> {
        let n = self.ground_len();
        let needed = 3u128.checked_pow(n as u32).unwrap_or(u128::MAX);
        if n > 25 || needed > budget {
            return Err(Error::budget("subset pairs for pseudoclosed sets", needed, budget));
        }
        note_enumeration();
        let clo = self.closure_table();
        let is_quasiclosed = |x: u32| {
            let cx = clo[x as usize];
            let mut y = x;
            loop {
                if let Some(cy) = clo[y as usize] {
                    if Some(cy) != cx && cy & !x != 0 {
                        return false;
                    }
                }
                if y == 0 {
                    return true;
                }
                y = (y - 1) & x;
            }
        };
        // Minimal properly quasiclosed sets per closure class.
        let mut classes: HashMap<Option<u32>, Vec<u32>> = HashMap::new();
        let mut order: Vec<u32> = (0..1u32 << n).collect();
        order.sort_by_key(|m| m.count_ones());
        for x in order {
            if clo[x as usize] == Some(x) || !is_quasiclosed(x) {
                continue;
            }
            let class = classes.entry(clo[x as usize]).or_default();
            if class.iter().all(|&p| p & !x != 0) {
                class.push(x);
            }
        }
        let mut out: Vec<ElemSet> = classes.into_values().flatten().map(|m| from_mask(n, m)).collect();
        out.sort_by_cached_key(sets::canonical_key);
        Ok(out)
    }

    /// True iff `x` is quasiclosed, checked over all subsets of `x`.
    pub fn is_quasiclosed(&self, x: &ElemSet) -> Result<bool> {
        Ok(self.quasi_closure(x)? == *x)
    }

    /// The least quasiclosed superset of `x`: repeatedly add `c(Y)` for
    /// subsets `Y` violating quasiclosedness. Sets with more than 20
    /// elements are rejected.
    pub fn quasi_closure(&self, x: &ElemSet) -> Result<ElemSet> {
        let n = self.ground_len();
        let mut cur = x.clone();
        loop {
            let members: Vec<usize> = cur.ones().collect();
            if members.len() > QUASI_CLOSURE_LIMIT {
                return Err(Error::budget(
                    "quasi-closure set size",
                    members.len() as u128,
                    QUASI_CLOSURE_LIMIT as u128,
                ));
            }
            let cx = self.closure(&cur);
            let mut next = cur.clone();
            for m in 0..1u32 << members.len() {
                let y = sets::from_iter(n, (0..members.len()).filter(|&i| m >> i & 1 == 1).map(|i| members[i]));
                if let Some(cy) = self.closure(&y) {
                    if Some(&cy) != cx.as_ref() {
                        next.union_with(&cy);
                    }
                }
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
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

    #[test]
    fn single_implication() {
        let s = sys(&["a", "b"], &[(&[0], &[1])]);
        let p = s.pseudoclosed_sets(DEFAULT_PSEUDOCLOSED_BUDGET).unwrap();
        assert_eq!(p, vec![sets::singleton(2, 0)]);
        let q = s.quasi_closure(&sets::singleton(2, 0)).unwrap();
        assert_eq!(q, sets::singleton(2, 0));
    }

    #[test]
    fn improper_class() {
        // {a,b} has no closure and is the least such set.
        let s = sys(&["a", "b"], &[(&[0, 1], &[])]);
        let p = s.pseudoclosed_sets(DEFAULT_PSEUDOCLOSED_BUDGET).unwrap();
        assert_eq!(p, vec![sets::full(2)]);
    }

    #[test]
    fn example_base_has_nine() {
        let s = catalog::example_base();
        let p = s.pseudoclosed_sets(DEFAULT_PSEUDOCLOSED_BUDGET).unwrap();
        assert_eq!(p.len(), 9);
        for imp in s.implications() {
            let q = s.quasi_closure(&imp.premise).unwrap();
            assert!(p.contains(&q), "{}", s.format_set(&q));
        }
    }

    #[test]
    fn budget() {
        let s = sys(&["a", "b", "c"], &[]);
        assert!(matches!(s.pseudoclosed_sets(26), Err(Error::Budget { .. })));
        assert!(s.pseudoclosed_sets(27).unwrap().is_empty());
    }
}
