//! Optimal implicational bases of modular semilattices.
//!
//! The base has three kinds of implications over the join-irreducibles:
//!
//! * `q -> B` for each join-irreducible `q` whose lower cover `u` is not the
//!   bottom, where `B` is an irredundant set of maximal irreducibles below
//!   `u` joining to `u`;
//! * `r_i r_j -> r_t` for each element `x` whose lower covers `x_1..x_n`
//!   (`n >= 3`) all cover a common `y`, with `r_i` an irreducible below
//!   `x_i` but not `y`;
//! * `p q -> ⊥` for each minimal inconsistent pair.

use super::{ImplicationalSystem, DEFAULT_FAMILY_BUDGET, DEFAULT_PSEUDOCLOSED_BUDGET};
use crate::error::{Error, Result};
use crate::ppip::induced_ppip;
use crate::semilattice::Semilattice;
use crate::sets;

/// An element `top` with at least three lower covers, each covering `bottom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondElement {
    pub top: usize,
    pub bottom: usize,
    pub intermediates: Vec<usize>,
}

/// Elements whose lower covers number at least three and all cover the meet
/// of those covers.
pub fn diamond_elements(l: &Semilattice) -> Vec<DiamondElement> {
    let mut out = Vec::new();
    for x in 0..l.len() {
        let lower = l.poset().lower_covers(x);
        if lower.len() < 3 {
            continue;
        }
        let y = l.meet_all(lower.iter().copied()).expect("nonempty");
        if lower.iter().all(|&xi| l.poset().covered_by(y, xi)) {
            out.push(DiamondElement {
                top: x,
                bottom: y,
                intermediates: lower.to_vec(),
            });
        }
    }
    out
}

/// The optimal base of a modular semilattice, over its join-irreducibles
/// (named as in `l`). The closed sets of the result are checked to be
/// exactly the irreducible ideals of `l`.
pub fn optimal_base(l: &Semilattice) -> Result<ImplicationalSystem> {
    let induced = induced_ppip(l)?;
    let irr = l.join_irreducibles();
    let ground: Vec<String> = irr.iter().map(|&x| l.name(x).to_string()).collect();
    let mut imps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();

    for (qi, &q) in irr.iter().enumerate() {
        let u = l.lower_cover(q).expect("join-irreducible");
        if u == l.bottom() {
            continue;
        }
        let below: Vec<usize> = (0..irr.len()).filter(|&p| l.leq(irr[p], u)).collect();
        let mut keep: Vec<usize> = below
            .iter()
            .copied()
            .filter(|&p| !below.iter().any(|&p2| p2 != p && l.leq(irr[p], irr[p2])))
            .collect();
        for k in (0..keep.len()).rev() {
            let rest = keep.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &p)| irr[p]);
            if l.join_all(rest) == Some(u) {
                keep.remove(k);
            }
        }
        imps.push((vec![qi], keep));
    }

    for d in diamond_elements(l) {
        let floor = l.irreducible_ideal(d.bottom);
        let reps: Vec<usize> = d
            .intermediates
            .iter()
            .map(|&xi| {
                l.irreducible_ideal(xi)
                    .difference(&floor)
                    .next()
                    .expect("a cover adds an irreducible")
            })
            .collect();
        let n = reps.len();
        for i in 0..n {
            for j in i + 1..n {
                let t = (0..n).find(|&t| t != i && t != j).expect("n >= 3");
                imps.push((vec![reps[i], reps[j]], vec![reps[t]]));
            }
        }
    }

    for (p, q) in induced.ppip.minimal_inconsistent_pairs() {
        imps.push((vec![p, q], Vec::new()));
    }

    let base = ImplicationalSystem::new(ground, imps)?;
    let mut expected: Vec<_> = (0..l.len()).map(|x| l.irreducible_ideal(x)).collect();
    expected.sort_by_cached_key(sets::canonical_key);
    let got = match base.family(l.len()) {
        Ok(f) => f.members,
        Err(Error::Budget { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };
    if got != expected {
        return Err(Error::Internal(
            "closed sets of the constructed base differ from the irreducible ideals".into(),
        ));
    }
    Ok(base)
}

/// The optimal base equivalent to `sys`, over the same ground set. `sys`
/// must be simple (singleton closures exist, are distinct and
/// join-irreducible) and its closed sets must form a modular semilattice.
pub fn optimal_base_from_implications(sys: &ImplicationalSystem) -> Result<ImplicationalSystem> {
    optimal_base_from_implications_within(sys, DEFAULT_FAMILY_BUDGET)
}

/// As [`optimal_base_from_implications`], enumerating at most
/// `family_budget` closed sets.
pub fn optimal_base_from_implications_within(
    sys: &ImplicationalSystem,
    family_budget: usize,
) -> Result<ImplicationalSystem> {
    let n = sys.ground_len();
    let irr = sys.irreducible_ppip()?;
    if !irr.is_simple(n) {
        let offending = (0..n)
            .find(|&e| !irr.generators.iter().any(|g| g == &[e]))
            .map(|e| sys.ground()[e].clone())
            .unwrap_or_default();
        return Err(Error::Precondition(format!(
            "the system is not simple: c({{{offending}}}) is shared or not join-irreducible"
        )));
    }
    sys.recognize()
        .map_err(|f| Error::Precondition(format!("closed sets do not form a modular semilattice ({f})")))?;
    let fam = sys.family(family_budget)?;
    let l = fam.semilattice()?;
    let base = optimal_base(&l)?;

    // Irreducible closed sets of the family back to ground elements.
    let to_ground: Vec<usize> = l
        .join_irreducibles()
        .iter()
        .map(|&x| {
            let set = &fam.members[x];
            let i = irr
                .closed_sets
                .iter()
                .position(|k| k == set)
                .expect("irreducible closed sets agree");
            irr.generators[i][0]
        })
        .collect();
    let imps = base
        .implications()
        .iter()
        .map(|imp| {
            (
                imp.premise.ones().map(|p| to_ground[p]).collect(),
                imp.conclusion.ones().map(|p| to_ground[p]).collect(),
            )
        })
        .collect();
    let out = ImplicationalSystem::new(sys.ground().to_vec(), imps)?;

    if out.family(fam.len())?.members != fam.members {
        return Err(Error::Internal("optimal base is not equivalent to the input".into()));
    }
    // One implication per pseudoclosed set, each premise generating its own.
    match sys.pseudoclosed_sets(DEFAULT_PSEUDOCLOSED_BUDGET) {
        Ok(pseudo) => {
            if pseudo.len() != out.len() {
                return Err(Error::Internal(format!(
                    "{} pseudoclosed sets but {} implications",
                    pseudo.len(),
                    out.len()
                )));
            }
            for imp in out.implications() {
                let q = out.quasi_closure(&imp.premise)?;
                if !pseudo.contains(&q) {
                    return Err(Error::Internal(format!(
                        "premise of `{}` generates {}, which is not pseudoclosed",
                        out.describe_implication(imp),
                        out.format_set(&q)
                    )));
                }
            }
        }
        Err(Error::Budget { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(out)
}
