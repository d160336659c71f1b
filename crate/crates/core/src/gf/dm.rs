//! Partitioned matrices, vanishing subspaces and block-triangularization.
//!
//! A partitioned matrix of type `(m_1..m_μ; n_1..n_ν)` has blocks
//! `A_{αβ}` of size `m_α × n_β`. A tuple of subspaces `X_α ⊆ F^{m_α}`,
//! `Y_β ⊆ F^{n_β}` is vanishing when `uᵀ A_{αβ} v = 0` for all `u ∈ X_α`,
//! `v ∈ Y_β`. Maximum vanishing tuples minimize a separable function on the
//! product of subspace lattices (the `Y` side in reverse inclusion order),
//! so they form a `(meet, join)`-closed set whose PPIP yields a maximal
//! chain and hence a block-triangular form.

use std::sync::Arc;

use super::{subspace_lattice, GfMatrix, Subspace, SubspaceLattice, DEFAULT_SUBSPACE_BUDGET};
use crate::error::{Error, Result};
use crate::product::{
    build_ppip, oracle_from_minimizers, LocalTerm, MembershipOracle, ProductSpace, SeparableFunction, SetOracle, Vector,
};

/// Default limit on the number of subspace tuples scanned.
pub const DEFAULT_MVSP_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedMatrix {
    matrix: GfMatrix,
    row_blocks: Vec<usize>,
    col_blocks: Vec<usize>,
    row_offsets: Vec<usize>,
    col_offsets: Vec<usize>,
}

fn offsets(blocks: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(blocks.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &b in blocks {
        acc += b;
        out.push(acc);
    }
    out
}

impl PartitionedMatrix {
    pub fn new(matrix: GfMatrix, row_blocks: Vec<usize>, col_blocks: Vec<usize>) -> Result<Self> {
        let (rs, cs): (usize, usize) = (row_blocks.iter().sum(), col_blocks.iter().sum());
        if rs != matrix.rows() || cs != matrix.cols() {
            return Err(Error::Input(format!(
                "block sizes sum to {rs}x{cs} but the matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if row_blocks.contains(&0) || col_blocks.contains(&0) {
            return Err(Error::Input("blocks must be nonempty".into()));
        }
        Ok(PartitionedMatrix {
            row_offsets: offsets(&row_blocks),
            col_offsets: offsets(&col_blocks),
            matrix,
            row_blocks,
            col_blocks,
        })
    }

    pub fn matrix(&self) -> &GfMatrix {
        &self.matrix
    }

    pub fn p(&self) -> u32 {
        self.matrix.p()
    }

    pub fn row_blocks(&self) -> &[usize] {
        &self.row_blocks
    }

    pub fn col_blocks(&self) -> &[usize] {
        &self.col_blocks
    }

    /// The block `A_{αβ}`.
    pub fn block(&self, alpha: usize, beta: usize) -> GfMatrix {
        self.matrix.block(
            self.row_offsets[alpha]..self.row_offsets[alpha + 1],
            self.col_offsets[beta]..self.col_offsets[beta + 1],
        )
    }
}

/// Subspaces `X_α` of the row spaces and `Y_β` of the column spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VanishingTuple {
    pub x: Vec<Subspace>,
    pub y: Vec<Subspace>,
}

impl VanishingTuple {
    pub fn total_dim(&self) -> usize {
        self.x.iter().chain(&self.y).map(Subspace::dim).sum()
    }
}

fn block_vanishes(block: &GfMatrix, x: &Subspace, y: &Subspace) -> bool {
    if x.dim() == 0 || y.dim() == 0 {
        return true;
    }
    let prod = x
        .basis()
        .mul(block)
        .and_then(|m| m.mul(&y.basis().transpose()))
        .expect("dimensions checked");
    prod.is_zero()
}

/// True iff every block vanishes on the corresponding pair of subspaces.
pub fn vanishes(a: &PartitionedMatrix, t: &VanishingTuple) -> Result<bool> {
    if t.x.len() != a.row_blocks.len() || t.y.len() != a.col_blocks.len() {
        return Err(Error::Input(format!(
            "tuple has {}+{} subspaces, matrix has {}+{} blocks",
            t.x.len(),
            t.y.len(),
            a.row_blocks.len(),
            a.col_blocks.len()
        )));
    }
    for (alpha, x) in t.x.iter().enumerate() {
        if x.ambient_dim() != a.row_blocks[alpha] || x.p() != a.p() {
            return Err(Error::Input(format!("X_{} does not live in the row block", alpha + 1)));
        }
    }
    for (beta, y) in t.y.iter().enumerate() {
        if y.ambient_dim() != a.col_blocks[beta] || y.p() != a.p() {
            return Err(Error::Input(format!(
                "Y_{} does not live in the column block",
                beta + 1
            )));
        }
    }
    for (alpha, x) in t.x.iter().enumerate() {
        for (beta, y) in t.y.iter().enumerate() {
            if !block_vanishes(&a.block(alpha, beta), x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maximum vanishing tuples of a partitioned matrix.
#[derive(Debug)]
pub struct MvspSolution {
    /// Maximum of `Σ dim X_α + Σ dim Y_β`.
    pub optimum: usize,
    /// Subspace lattices of the row blocks, then (reversed) of the column
    /// blocks; coordinate `k` of a product vector indexes `lattices[k]`.
    pub lattices: Vec<Arc<SubspaceLattice>>,
    /// All maximizers, as a validated `(meet, join)`-closed set.
    pub oracle: SetOracle,
    mu: usize,
}

impl MvspSolution {
    pub fn space(&self) -> &ProductSpace {
        self.oracle.space()
    }

    pub fn tuple_of(&self, v: &[usize]) -> VanishingTuple {
        let subs: Vec<Subspace> = v
            .iter()
            .enumerate()
            .map(|(k, &i)| self.lattices[k].subspaces[i].clone())
            .collect();
        VanishingTuple {
            x: subs[..self.mu].to_vec(),
            y: subs[self.mu..].to_vec(),
        }
    }

    pub fn vector_of(&self, t: &VanishingTuple) -> Option<Vector> {
        t.x.iter()
            .chain(&t.y)
            .enumerate()
            .map(|(k, s)| self.lattices.get(k)?.position(s))
            .collect()
    }

    pub fn maximizers(&self) -> Vec<VanishingTuple> {
        self.oracle.members().iter().map(|v| self.tuple_of(v)).collect()
    }
}

/// Scans every tuple of subspaces, minimizing
/// `-Σ dim X_α - Σ dim Y_β` plus `+inf` for each non-vanishing block, and
/// returns the optimum with the full set of maximizers.
pub fn mvsp_solve(a: &PartitionedMatrix, budget: u128) -> Result<MvspSolution> {
    let p = a.p();
    let mu = a.row_blocks.len();
    let mut lattices: Vec<Arc<SubspaceLattice>> = Vec::new();
    for &m in &a.row_blocks {
        lattices.push(Arc::new(subspace_lattice(m, p, false, DEFAULT_SUBSPACE_BUDGET)?));
    }
    for &n in &a.col_blocks {
        lattices.push(Arc::new(subspace_lattice(n, p, true, DEFAULT_SUBSPACE_BUDGET)?));
    }
    let space = ProductSpace::new(lattices.iter().map(|l| Arc::new(l.lattice.clone())).collect());
    let mut f = SeparableFunction::new(space);
    for (k, l) in lattices.iter().enumerate() {
        let dims: Vec<f64> = l.subspaces.iter().map(|s| -(s.dim() as f64)).collect();
        f.add_term(LocalTerm::new(vec![k], move |x| dims[x[0]]))?;
    }
    for alpha in 0..mu {
        for beta in 0..a.col_blocks.len() {
            let block = a.block(alpha, beta);
            let (lx, ly) = (&lattices[alpha], &lattices[mu + beta]);
            let table: Vec<Vec<bool>> = lx
                .subspaces
                .iter()
                .map(|x| ly.subspaces.iter().map(|y| block_vanishes(&block, x, y)).collect())
                .collect();
            f.add_term(LocalTerm::new(vec![alpha, mu + beta], move |v| {
                if table[v[0]][v[1]] {
                    0.0
                } else {
                    f64::INFINITY
                }
            }))?;
        }
    }
    let (value, oracle) = oracle_from_minimizers(&f, budget)?;
    Ok(MvspSolution {
        optimum: (-value).round() as usize,
        lattices,
        oracle,
        mu,
    })
}

/// A block-triangular form `left · A · right` obtained from a maximal chain
/// of maximum vanishing tuples.
#[derive(Clone, Debug)]
pub struct DmDecomposition {
    /// The chain of vanishing tuples, `X` increasing and `Y` decreasing.
    pub chain: Vec<VanishingTuple>,
    /// `e_blocks[α]` has the adapted basis of `F^{m_α}` as its rows.
    pub e_blocks: Vec<GfMatrix>,
    /// `f_blocks[β]` has the adapted basis of `F^{n_β}` as its columns.
    pub f_blocks: Vec<GfMatrix>,
    /// Row `k` of the result is row `row_perm[k]` of `diag(E)·A`.
    pub row_perm: Vec<usize>,
    /// Column `k` of the result is column `col_perm[k]` of `A·diag(F)`.
    pub col_perm: Vec<usize>,
    /// `P · diag(E)`.
    pub left: GfMatrix,
    /// `diag(F) · Q`.
    pub right: GfMatrix,
    pub transformed: GfMatrix,
    /// Diagonal block sizes `(rows, cols)`, top-left first; empty stages
    /// are omitted.
    pub stages: Vec<(usize, usize)>,
}

/// Block-triangularizes `a`: solves the vanishing problem, builds the PPIP
/// of the maximizers, follows its greedy maximal chain and changes bases so
/// that each chain member becomes a coordinate subspace. The zero pattern
/// below the block diagonal is asserted entrywise.
pub fn dm_decompose(a: &PartitionedMatrix, budget: u128) -> Result<DmDecomposition> {
    let p = a.p();
    let sol = mvsp_solve(a, budget)?;
    let space = sol.space();
    let built = build_ppip(&sol.oracle)?;
    let subspace_chain = built.ppip.maximal_chain()?;

    let members = sol.oracle.members();
    let bottom = members[1..]
        .iter()
        .fold(members[0].clone(), |acc, v| space.meet(&acc, v));
    let mut chain = Vec::with_capacity(subspace_chain.len());
    for s in &subspace_chain {
        let mut v = bottom.clone();
        for e in s.ones() {
            v = space
                .join(&v, &built.elements[e].vector)
                .ok_or_else(|| Error::Internal("chain member has no join in the product".into()))?;
        }
        if members.binary_search(&v).is_err() {
            return Err(Error::Internal(format!(
                "chain member {} is not a maximizer",
                space.format(&v)
            )));
        }
        let t = sol.tuple_of(&v);
        if !vanishes(a, &t)? {
            return Err(Error::Internal("chain member is not vanishing".into()));
        }
        chain.push(t);
    }
    let kappa = chain.len() - 1;

    // Adapted bases and the block index of every basis vector: rows first
    // entering X^s go to block κ+1-s (κ+1 for vectors outside X^κ), columns
    // last in Y^t go to block κ-t (κ+1 for vectors outside Y^0).
    let mut e_blocks = Vec::new();
    let mut row_block_of = Vec::new();
    for (alpha, &m) in a.row_blocks.iter().enumerate() {
        let mut vecs: Vec<Vec<u8>> = Vec::new();
        for (k, t) in chain.iter().enumerate() {
            let before = vecs.len();
            vecs = t.x[alpha].extend_basis(&vecs);
            row_block_of.extend(std::iter::repeat_n(kappa + 1 - k, vecs.len() - before));
        }
        let before = vecs.len();
        vecs = Subspace::full(p, m)?.extend_basis(&vecs);
        row_block_of.extend(std::iter::repeat_n(0, vecs.len() - before));
        e_blocks.push(GfMatrix::from_rows_with_cols(p, m, &vecs)?);
    }
    let mut f_blocks = Vec::new();
    let mut col_block_of = Vec::new();
    for (beta, &n) in a.col_blocks.iter().enumerate() {
        let mut vecs: Vec<Vec<u8>> = Vec::new();
        for (k, t) in chain.iter().enumerate().rev() {
            let before = vecs.len();
            vecs = t.y[beta].extend_basis(&vecs);
            col_block_of.extend(std::iter::repeat_n(kappa - k, vecs.len() - before));
        }
        let before = vecs.len();
        vecs = Subspace::full(p, n)?.extend_basis(&vecs);
        col_block_of.extend(std::iter::repeat_n(kappa + 1, vecs.len() - before));
        f_blocks.push(GfMatrix::from_rows_with_cols(p, n, &vecs)?.transpose());
    }

    let mut row_perm: Vec<usize> = (0..row_block_of.len()).collect();
    row_perm.sort_by_key(|&r| (row_block_of[r], r));
    let mut col_perm: Vec<usize> = (0..col_block_of.len()).collect();
    col_perm.sort_by_key(|&c| (col_block_of[c], c));

    let e = GfMatrix::block_diagonal(p, &e_blocks)?;
    let f = GfMatrix::block_diagonal(p, &f_blocks)?;
    if !e.is_invertible() || !f.is_invertible() {
        return Err(Error::Internal("adapted bases are not invertible".into()));
    }
    let left = GfMatrix::row_permutation(p, &row_perm)?.mul(&e)?;
    let right = f.mul(&GfMatrix::row_permutation(p, &col_perm)?.transpose())?;
    let transformed = left.mul(a.matrix())?.mul(&right)?;

    for (i, &r) in row_perm.iter().enumerate() {
        for (j, &c) in col_perm.iter().enumerate() {
            if col_block_of[c] < row_block_of[r] && transformed.get(i, j) != 0 {
                return Err(Error::Internal(format!(
                    "entry ({i}, {j}) below the block diagonal is nonzero"
                )));
            }
        }
    }
    let stages = (0..=kappa + 1)
        .map(|d| {
            (
                row_block_of.iter().filter(|&&b| b == d).count(),
                col_block_of.iter().filter(|&&b| b == d).count(),
            )
        })
        .filter(|&(r, c)| r + c > 0)
        .collect();

    Ok(DmDecomposition {
        chain,
        e_blocks,
        f_blocks,
        row_perm,
        col_perm,
        left,
        right,
        transformed,
        stages,
    })
}
