//! The correspondence between modular semilattices and PPIPs.

use super::{Ppip, SubspaceFamily};
use crate::error::{Error, Result};
use crate::semilattice::Semilattice;
use crate::sets;

/// The PPIP induced on the join-irreducibles of a semilattice.
#[derive(Clone, Debug)]
pub struct InducedPpip {
    pub ppip: Ppip,
    /// `elements[i]` is the semilattice element behind PPIP element `i`.
    pub elements: Vec<usize>,
}

/// Induced PPIP of a modular semilattice; the modularity check runs first.
pub fn induced_ppip(l: &Semilattice) -> Result<InducedPpip> {
    if let Err(v) = l.is_modular() {
        return Err(Error::Precondition(format!(
            "semilattice is not modular: {}",
            v.describe(l)
        )));
    }
    Ok(induced_ppip_unchecked(l))
}

/// Join-irreducibles with the induced order, inconsistency and collinearity,
/// without checking modularity.
pub fn induced_ppip_unchecked(l: &Semilattice) -> InducedPpip {
    let elements = l.join_irreducibles().to_vec();
    let (poset, _) = l.poset().restrict(&elements).expect("restriction of a poset");
    let pos = |x: usize| l.irreducible_position(x).expect("irreducible");
    let pairs: Vec<_> = l
        .induced_inconsistency()
        .into_iter()
        .map(|(x, y)| (pos(x), pos(y)))
        .collect();
    let triples: Vec<_> = l
        .induced_collinearity()
        .into_iter()
        .map(|t| [pos(t[0]), pos(t[1]), pos(t[2])])
        .collect();
    let ppip = Ppip::new(poset, &pairs, &triples).expect("induced relations are well formed");
    InducedPpip { ppip, elements }
}

/// Checks that `map` (a bijection from elements of `a` to elements of `b`)
/// preserves and reflects order, inconsistency and collinearity.
pub fn check_isomorphic_via(a: &Ppip, b: &Ppip, map: &[usize]) -> std::result::Result<(), String> {
    let n = a.len();
    if b.len() != n || map.len() != n {
        return Err(format!("sizes differ: {} vs {}", n, b.len()));
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Err("map is not a bijection".into());
        }
    }
    for x in 0..n {
        for y in 0..n {
            if a.leq(x, y) != b.leq(map[x], map[y]) {
                return Err(format!("order differs on ({}, {})", a.name(x), a.name(y)));
            }
            if a.inconsistent(x, y) != b.inconsistent(map[x], map[y]) {
                return Err(format!("inconsistency differs on ({}, {})", a.name(x), a.name(y)));
            }
        }
    }
    if a.collinear_count() != b.collinear_count() {
        return Err(format!(
            "collinear triple counts differ: {} vs {}",
            a.collinear_count(),
            b.collinear_count()
        ));
    }
    for [x, y, z] in a.collinear_triples() {
        if !b.collinear(map[x], map[y], map[z]) {
            return Err(format!(
                "collinearity differs on ({}, {}, {})",
                a.name(x),
                a.name(y),
                a.name(z)
            ));
        }
    }
    Ok(())
}

/// Explicit maps between a modular semilattice and the consistent subspaces
/// of its induced PPIP.
#[derive(Clone, Debug)]
pub struct BirkhoffReport {
    pub ppip: Ppip,
    pub subspaces: SubspaceFamily,
    /// `phi[l]` = position in `subspaces` of the irreducibles below `l`.
    pub phi: Vec<usize>,
    /// `psi[i]` = semilattice element joining the members of subspace `i`.
    pub psi: Vec<usize>,
}

/// Builds both maps and verifies that they are mutually inverse order
/// isomorphisms, and that the PPIP induced by the subspace semilattice is
/// isomorphic to the original PPIP (via `p ↦ {q : q <= p}`).
pub fn birkhoff_roundtrip(l: &Semilattice) -> Result<BirkhoffReport> {
    let induced = induced_ppip(l)?;
    let ppip = induced.ppip;
    let subspaces = ppip
        .consistent_subspaces()
        .map_err(|e| Error::Internal(format!("induced PPIP rejected: {e}")))?;
    let csub = &subspaces.lattice;

    let mut phi = Vec::with_capacity(l.len());
    for x in 0..l.len() {
        let ideal = l.irreducible_ideal(x);
        let pos = subspaces.position(&ideal).ok_or_else(|| {
            Error::Internal(format!(
                "phi({}) = {} is not a consistent subspace",
                l.name(x),
                ppip.format_set(&ideal)
            ))
        })?;
        phi.push(pos);
    }
    let mut psi = Vec::with_capacity(subspaces.len());
    for s in &subspaces.members {
        let joined = l
            .join_all(s.ones().map(|p| induced.elements[p]))
            .ok_or_else(|| Error::Internal(format!("psi({}) has no join", ppip.format_set(s))))?;
        psi.push(joined);
    }
    for x in 0..l.len() {
        if psi[phi[x]] != x {
            return Err(Error::Internal(format!(
                "psi(phi({})) = {}",
                l.name(x),
                l.name(psi[phi[x]])
            )));
        }
    }
    for (i, s) in subspaces.members.iter().enumerate() {
        if phi[psi[i]] != i {
            return Err(Error::Internal(format!(
                "phi(psi({})) = {}",
                ppip.format_set(s),
                ppip.format_set(&subspaces.members[phi[psi[i]]])
            )));
        }
    }
    for x in 0..l.len() {
        for y in 0..l.len() {
            if l.leq(x, y) != csub.leq(phi[x], phi[y]) {
                return Err(Error::Internal(format!(
                    "phi does not preserve the order on ({}, {})",
                    l.name(x),
                    l.name(y)
                )));
            }
        }
    }

    // Part two: principal ideals are the irreducibles of the subspace
    // semilattice, and carry the same relations.
    let back = induced_ppip_unchecked(csub);
    let mut map = Vec::with_capacity(ppip.len());
    for p in 0..ppip.len() {
        let ideal = ppip.poset().principal_ideal(p);
        let pos = subspaces
            .position(&ideal)
            .ok_or_else(|| Error::Internal(format!("ideal of {} is not a consistent subspace", ppip.name(p))))?;
        let irr = csub
            .irreducible_position(pos)
            .ok_or_else(|| Error::Internal(format!("ideal of {} is not join-irreducible", ppip.name(p))))?;
        map.push(irr);
    }
    check_isomorphic_via(&ppip, &back.ppip, &map)
        .map_err(|e| Error::Internal(format!("PPIP of the subspace semilattice: {e}")))?;

    Ok(BirkhoffReport {
        ppip,
        subspaces,
        phi,
        psi,
    })
}

impl BirkhoffReport {
    pub fn describe_phi(&self, l: &Semilattice) -> Vec<(String, String)> {
        (0..l.len())
            .map(|x| {
                (
                    l.name(x).to_string(),
                    sets::format_set(&self.subspaces.members[self.phi[x]], self.ppip.names()),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn induced_examples() {
        let m3 = induced_ppip(&catalog::m3()).unwrap();
        assert_eq!(m3.ppip.names(), ["x", "y", "z"]);
        assert_eq!(m3.ppip.collinear_triples().collect::<Vec<_>>(), vec![[0, 1, 2]]);
        assert!(m3.ppip.inconsistent_pairs().is_empty());
        let s2 = induced_ppip(&catalog::s_k(2)).unwrap();
        assert_eq!(s2.ppip.inconsistent_pairs(), vec![(0, 1)]);
        let err = induced_ppip(&catalog::n5()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn roundtrips() {
        let r = birkhoff_roundtrip(&catalog::m3()).unwrap();
        assert_eq!(r.subspaces.len(), 5);
        let one = catalog::chain(&["0"]);
        let r = birkhoff_roundtrip(&one).unwrap();
        assert_eq!(r.subspaces.len(), 1);
        assert!(r.subspaces.members[r.phi[0]].is_clear());
        for l in [
            catalog::s_k(3),
            catalog::boolean(3),
            catalog::m_k(4),
            catalog::chain_of(4),
        ] {
            birkhoff_roundtrip(&l).unwrap();
        }
    }
}
