//! Subspaces of `GF(p)^d` in canonical (reduced row echelon) form.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::{format_vector, Field, GfMatrix};
use crate::error::{Error, Result};
use crate::order::Poset;
use crate::semilattice::Semilattice;

/// Default limit on the number of subspaces enumerated.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 10_000;

/// A subspace stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: GfMatrix,
}

impl Subspace {
    pub fn zero(p: u32, d: usize) -> Result<Self> {
        Ok(Subspace {
            basis: GfMatrix::zeros(p, 0, d)?,
        })
    }

    pub fn full(p: u32, d: usize) -> Result<Self> {
        Ok(Subspace {
            basis: GfMatrix::identity(p, d)?,
        })
    }

    /// The span of `vectors` in `GF(p)^d`.
    pub fn span(p: u32, d: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        Ok(Self::from_matrix(&GfMatrix::from_rows_with_cols(p, d, vectors)?))
    }

    /// The row space of `m`.
    pub fn from_matrix(m: &GfMatrix) -> Self {
        let (r, pivots) = m.rref();
        Subspace {
            basis: r.block(0..pivots.len(), 0..m.cols()),
        }
    }

    pub fn p(&self) -> u32 {
        self.basis.p()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &GfMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u8>> {
        self.basis.to_rows()
    }

    fn stacked(&self, other: &[Vec<u8>]) -> GfMatrix {
        let mut rows = self.basis_vectors();
        rows.extend(other.iter().cloned());
        GfMatrix::from_rows_with_cols(self.p(), self.ambient_dim(), &rows).expect("same ambient space")
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.stacked(&[v.to_vec()]).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        other.stacked(&self.basis_vectors()).rank() == other.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_matrix(&self.stacked(&other.basis_vectors()))
    }

    /// Intersection by the Zassenhaus algorithm: row-reduce `[[U, U], [W, 0]]`;
    /// rows whose left half vanishes span `U ∩ W` in their right half.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let d = self.ambient_dim();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis_vectors() {
            let mut r = u.clone();
            r.extend(u);
            rows.push(r);
        }
        for w in other.basis_vectors() {
            let mut r = w;
            r.extend(std::iter::repeat_n(0, d));
            rows.push(r);
        }
        let m = GfMatrix::from_rows_with_cols(self.p(), 2 * d, &rows).expect("well formed");
        let (r, pivots) = m.rref();
        let inter: Vec<Vec<u8>> = (0..pivots.len())
            .filter(|&i| r.row(i)[..d].iter().all(|&x| x == 0))
            .map(|i| r.row(i)[d..].to_vec())
            .collect();
        Subspace::span(self.p(), d, &inter).expect("well formed")
    }

    /// `vectors` followed by enough basis vectors of `self` to span it; the
    /// added vectors are taken from the canonical basis in order.
    pub fn extend_basis(&self, vectors: &[Vec<u8>]) -> Vec<Vec<u8>> {
        let mut out = vectors.to_vec();
        for v in self.basis_vectors() {
            let m = GfMatrix::from_rows_with_cols(self.p(), self.ambient_dim(), &out).expect("well formed");
            let before = m.rank();
            out.push(v);
            let m = GfMatrix::from_rows_with_cols(self.p(), self.ambient_dim(), &out).expect("well formed");
            if m.rank() == before {
                out.pop();
            }
        }
        out
    }

    /// Compact name such as `{0}`, `<01>` or `<10,01>`.
    pub fn label(&self) -> String {
        if self.dim() == 0 {
            return "{0}".into();
        }
        let parts: Vec<String> = (0..self.dim())
            .map(|i| format_vector(self.p(), self.basis.row(i)))
            .collect();
        format!("<{}>", parts.join(","))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All subspaces of `GF(p)^d` with their inclusion (or reverse inclusion)
/// order; element `i` of `lattice` is `subspaces[i]`.
#[derive(Clone, Debug)]
pub struct SubspaceLattice {
    pub lattice: Semilattice,
    pub subspaces: Vec<Subspace>,
    pub reversed: bool,
}

impl SubspaceLattice {
    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.subspaces.iter().position(|t| t == s)
    }
}

/// Number of subspaces of `GF(p)^d`, as a sum of Gaussian binomials.
fn subspace_count(p: u128, d: usize) -> Option<u128> {
    // Gaussian binomials by the recurrence [d,k] = [d-1,k-1] + p^k [d-1,k].
    let mut row: Vec<u128> = vec![1];
    for n in 1..=d {
        let mut next = vec![1u128; n + 1];
        for k in 1..n {
            let pk = p.checked_pow(k as u32)?;
            next[k] = row[k - 1].checked_add(pk.checked_mul(row[k])?)?;
        }
        row = next;
    }
    row.iter().try_fold(0u128, |acc, &x| acc.checked_add(x))
}

/// Every subspace of `GF(p)^d`, sorted by dimension then basis. With
/// `reversed`, the order is reverse inclusion.
pub fn subspace_lattice(d: usize, p: u32, reversed: bool, budget: u128) -> Result<SubspaceLattice> {
    let field = Field::new(p)?;
    let needed = subspace_count(p as u128, d).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::budget("subspaces", needed, budget));
    }
    let nonzero: Vec<Vec<u8>> = field.vectors(d).filter(|v| v.iter().any(|&x| x != 0)).collect();
    let zero = Subspace::zero(p, d)?;
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(s) = queue.pop_front() {
        for v in &nonzero {
            if s.contains(v) {
                continue;
            }
            let t = Subspace::from_matrix(&s.stacked(std::slice::from_ref(v)));
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let mut subspaces: Vec<Subspace> = seen.into_iter().collect();
    subspaces.sort_by_key(|s| (s.dim(), s.basis_vectors()));
    if reversed {
        subspaces.reverse();
    }
    let names: Vec<String> = subspaces.iter().map(Subspace::label).collect();
    let poset = Poset::from_leq(names, |a, b| {
        if reversed {
            subspaces[b].is_subspace_of(&subspaces[a])
        } else {
            subspaces[a].is_subspace_of(&subspaces[b])
        }
    })?;
    Ok(SubspaceLattice {
        lattice: Semilattice::new(poset)?,
        subspaces,
        reversed,
    })
}
