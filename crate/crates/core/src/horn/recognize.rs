//! Polynomial-time recognition of modular closed-set families.

use std::fmt;

use super::ImplicationalSystem;
use crate::error::{Error, Result};
use crate::order::Poset;
use crate::ppip::{Axiom, Ppip};
use crate::sets::{self, ElemSet};

/// The PPIP on the join-irreducible closed sets of a pruned system, computed
/// from closures alone.
#[derive(Clone, Debug)]
pub struct IrreduciblePpip {
    pub ppip: Ppip,
    /// `closed_sets[i]` is the closed set behind PPIP element `i`.
    pub closed_sets: Vec<ElemSet>,
    /// Ground elements whose singleton closure is `closed_sets[i]`.
    pub generators: Vec<Vec<usize>>,
}

impl IrreduciblePpip {
    /// True iff `e ↦ c({e})` is a bijection from the ground set onto the
    /// join-irreducible closed sets.
    pub fn is_simple(&self, ground_len: usize) -> bool {
        self.generators.iter().all(|g| g.len() == 1)
            && self.generators.iter().map(Vec::len).sum::<usize>() == ground_len
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecognitionStep {
    /// `c(∅)` does not exist, so there are no closed sets.
    EmptyFamily,
    /// An improper premise without an inconsistent pair.
    ImproperPremise,
    /// `A ∪ B ∪ A' ∪ B'` has an inconsistent pair while `A ∪ A'` has none.
    ImplicationPair,
    /// `A ∪ B ∪ {e}` has an inconsistent pair while `A ∪ {e}` has none.
    ImplicationElement,
    /// The irreducible PPIP violates an axiom.
    Axiom(Axiom),
    /// Some consistent subspace of the irreducible PPIP does not
    /// correspond to a closed set.
    Representation,
}

impl fmt::Display for RecognitionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecognitionStep::EmptyFamily => "empty family",
            RecognitionStep::ImproperPremise => "improper premise",
            RecognitionStep::ImplicationPair => "implication pair",
            RecognitionStep::ImplicationElement => "implication and element",
            RecognitionStep::Axiom(a) => return write!(f, "{a}"),
            RecognitionStep::Representation => "representation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionFailure {
    pub step: RecognitionStep,
    pub detail: String,
}

impl fmt::Display for RecognitionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.step, self.detail)
    }
}

impl ImplicationalSystem {
    /// Builds the PPIP on join-irreducible closed sets. Requires a pruned
    /// system (every singleton closure exists).
    ///
    /// A closed set `c({e})` is join-irreducible iff it differs from the
    /// closure of the union of the singleton closures strictly inside it.
    pub fn irreducible_ppip(&self) -> Result<IrreduciblePpip> {
        let n = self.ground_len();
        let mut single = Vec::with_capacity(n);
        for e in 0..n {
            match self.closure(&sets::singleton(n, e)) {
                Some(c) => single.push(c),
                None => {
                    return Err(Error::Precondition(format!(
                        "c({{{}}}) does not exist; prune the system first",
                        self.ground()[e]
                    )))
                }
            }
        }
        let bottom = self.closure(&sets::empty(n)).expect("subset of an existing closure");
        let mut closed_sets: Vec<ElemSet> = Vec::new();
        let mut generators: Vec<Vec<usize>> = Vec::new();
        for e in 0..n {
            if let Some(i) = closed_sets.iter().position(|k| *k == single[e]) {
                generators[i].push(e);
                continue;
            }
            let k = &single[e];
            if *k == bottom {
                continue;
            }
            let mut below = bottom.clone();
            for s in &single {
                if s.is_subset(k) && s != k {
                    below.union_with(s);
                }
            }
            let joined = self.closure(&below).expect("subset of an existing closure");
            if joined != *k {
                closed_sets.push(k.clone());
                generators.push(vec![e]);
            }
        }
        // Generators of the same irreducible found after it was first seen
        // were added above; elements whose closure is reducible are dropped.
        let m = closed_sets.len();
        let names: Vec<String> = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&e| self.ground()[e].as_str())
                    .collect::<Vec<_>>()
                    .join("=")
            })
            .collect();
        let poset = Poset::from_leq(names, |a, b| closed_sets[a].is_subset(&closed_sets[b]))?;
        let mut pairwise: Vec<Vec<Option<ElemSet>>> = vec![vec![None; m]; m];
        let mut pairs = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let j = self.closure(&sets::union(&closed_sets[a], &closed_sets[b]));
                if j.is_none() {
                    pairs.push((a, b));
                }
                pairwise[a][b] = j.clone();
                pairwise[b][a] = j;
            }
        }
        let mut triples = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if poset.comparable(a, b) {
                    continue;
                }
                let Some(ab) = &pairwise[a][b] else { continue };
                for c in b + 1..m {
                    if poset.comparable(a, c) || poset.comparable(b, c) {
                        continue;
                    }
                    if pairwise[a][c].as_ref() == Some(ab) && pairwise[b][c].as_ref() == Some(ab) {
                        triples.push([a, b, c]);
                    }
                }
            }
        }
        let ppip = Ppip::new(poset, &pairs, &triples)?;
        Ok(IrreduciblePpip {
            ppip,
            closed_sets,
            generators,
        })
    }

    /// Decides whether the closed sets form a modular semilattice, without
    /// enumerating them. Elements with no singleton closure are pruned
    /// first. The checks are: pairwise-consistent sets have closures (via
    /// conditions on implications), the PPIP on join-irreducible closed sets
    /// satisfies the axioms, and the closed sets are exactly its consistent
    /// subspaces. Runs in time polynomial in the ground set and `s(Σ)`.
    pub fn recognize(&self) -> std::result::Result<(), RecognitionFailure> {
        let n0 = self.ground_len();
        if self.closure(&sets::empty(n0)).is_none() {
            return Err(RecognitionFailure {
                step: RecognitionStep::EmptyFamily,
                detail: "c(∅) does not exist".into(),
            });
        }
        let (sys, _) = self.pruned();
        let n = sys.ground_len();

        let mut inconsistent = vec![sets::empty(n); n];
        for a in 0..n {
            for b in a + 1..n {
                if sys.closure(&sets::from_iter(n, [a, b])).is_none() {
                    inconsistent[a].insert(b);
                    inconsistent[b].insert(a);
                }
            }
        }
        let has_pair = |s: &ElemSet| s.ones().any(|a| !inconsistent[a].is_disjoint(s));

        let imps = sys.implications();
        for imp in imps {
            if imp.is_improper() && !has_pair(&imp.premise) {
                return Err(RecognitionFailure {
                    step: RecognitionStep::ImproperPremise,
                    detail: format!("{} has no inconsistent pair", sys.format_set(&imp.premise)),
                });
            }
        }
        for (i, x) in imps.iter().enumerate() {
            for y in &imps[i..] {
                let mut big = sets::union(&x.premise, &x.conclusion);
                big.union_with(&y.premise);
                big.union_with(&y.conclusion);
                let small = sets::union(&x.premise, &y.premise);
                if has_pair(&big) && !has_pair(&small) {
                    return Err(RecognitionFailure {
                        step: RecognitionStep::ImplicationPair,
                        detail: format!(
                            "`{}` and `{}`: premises {} are consistent but their union with the conclusions is not",
                            sys.describe_implication(x),
                            sys.describe_implication(y),
                            sys.format_set(&small)
                        ),
                    });
                }
            }
        }
        for imp in imps {
            let base = sets::union(&imp.premise, &imp.conclusion);
            for e in 0..n {
                let mut big = base.clone();
                big.insert(e);
                let mut small = imp.premise.clone();
                small.insert(e);
                if has_pair(&big) && !has_pair(&small) {
                    return Err(RecognitionFailure {
                        step: RecognitionStep::ImplicationElement,
                        detail: format!(
                            "`{}` with {}: {} is consistent but {} is not",
                            sys.describe_implication(imp),
                            sys.ground()[e],
                            sys.format_set(&small),
                            sys.format_set(&big)
                        ),
                    });
                }
            }
        }

        let irr = sys
            .irreducible_ppip()
            .expect("pruned systems have all singleton closures");
        if let Err(v) = irr.ppip.check_axioms() {
            return Err(RecognitionFailure {
                step: RecognitionStep::Axiom(v.axiom),
                detail: v.describe(&irr.ppip),
            });
        }

        // The closed sets correspond to consistent subspaces exactly when
        // every implication holds on the least subspace generated by the
        // irreducibles below its premise.
        let m = irr.ppip.len();
        let below: Vec<ElemSet> = (0..n)
            .map(|e| {
                let c = sys.closure(&sets::singleton(n, e)).expect("pruned");
                sets::from_iter(m, (0..m).filter(|&i| irr.closed_sets[i].is_subset(&c)))
            })
            .collect();
        for imp in imps {
            let mut generated = sets::empty(m);
            for a in imp.premise.ones() {
                generated.union_with(&below[a]);
            }
            let Ok(subspace) = irr.ppip.subspace_closure(&generated) else {
                continue;
            };
            let missing = if imp.is_improper() {
                Some("the premise is inconsistent".to_string())
            } else {
                imp.conclusion
                    .ones()
                    .find(|&b| !below[b].is_subset(&subspace))
                    .map(|b| format!("{} is not implied", sys.ground()[b]))
            };
            if let Some(why) = missing {
                return Err(RecognitionFailure {
                    step: RecognitionStep::Representation,
                    detail: format!(
                        "`{}` fails on the consistent subspace {}: {why}",
                        sys.describe_implication(imp),
                        irr.ppip.format_set(&subspace)
                    ),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::horn::{enumeration_count, reset_enumeration_count, DEFAULT_FAMILY_BUDGET};

    fn sys(ground: &[&str], imps: &[(&[usize], &[usize])]) -> ImplicationalSystem {
        ImplicationalSystem::new(
            ground.iter().map(|s| s.to_string()).collect(),
            imps.iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn example_base_irreducibles() {
        let s = catalog::example_base();
        let irr = s.irreducible_ppip().unwrap();
        assert_eq!(irr.ppip.len(), 8);
        assert!(irr.is_simple(8));
        let triples: Vec<Vec<&str>> = irr
            .ppip
            .collinear_triples()
            .map(|t| t.iter().map(|&x| irr.ppip.name(x)).collect())
            .collect();
        assert_eq!(triples, vec![vec!["5", "6", "7"]]);
        let mut pairs: Vec<(&str, &str)> = irr
            .ppip
            .minimal_inconsistent_pairs()
            .into_iter()
            .map(|(p, q)| (irr.ppip.name(p), irr.ppip.name(q)))
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![("1", "8"), ("2", "4")]);
    }

    #[test]
    fn example_base_is_recognized_without_enumeration() {
        let s = catalog::example_base();
        reset_enumeration_count();
        assert_eq!(s.recognize(), Ok(()));
        assert_eq!(enumeration_count(), 0);
        let fam = s.family(DEFAULT_FAMILY_BUDGET).unwrap();
        assert_eq!(enumeration_count(), 1);
        assert!(fam.semilattice().unwrap().is_modular().is_ok());
    }

    #[test]
    fn pentagon_is_not_represented() {
        // Closed sets {}, {a}, {b}, {a,c}, {a,b,c}: the pentagon.
        let s = sys(&["a", "b", "c"], &[(&[2], &[0]), (&[0, 1], &[2])]);
        let fam = s.family(DEFAULT_FAMILY_BUDGET).unwrap();
        assert_eq!(fam.len(), 5);
        assert!(fam.semilattice().unwrap().is_modular().is_err());
        let err = s.recognize().unwrap_err();
        assert_eq!(err.step, RecognitionStep::Representation);
    }

    #[test]
    fn join_condition_failures() {
        // a, b, c pairwise consistent but {a,b,c} is not: the triple join fails.
        let s = sys(&["a", "b", "c"], &[(&[0, 1, 2], &[])]);
        assert!(s
            .family(DEFAULT_FAMILY_BUDGET)
            .unwrap()
            .semilattice()
            .unwrap()
            .is_modular()
            .is_err());
        assert_eq!(s.recognize().unwrap_err().step, RecognitionStep::ImproperPremise);
        let empty = sys(&["a"], &[(&[], &[])]);
        assert_eq!(empty.recognize().unwrap_err().step, RecognitionStep::EmptyFamily);
    }

    #[test]
    fn pruning_requirement() {
        let s = sys(&["a", "b"], &[(&[0], &[])]);
        assert!(matches!(s.irreducible_ppip(), Err(Error::Precondition(_))));
        assert_eq!(s.recognize(), Ok(()));
    }
}
