#![allow(clippy::needless_range_loop)]

mod common;

use modsemi::gf::{
    dm_decompose, mvsp_solve, polar_space_ppip, subspace_lattice, vanishes, Field, GfMatrix, PartitionedMatrix,
    Subspace, DEFAULT_MVSP_BUDGET, DEFAULT_SUBSPACE_BUDGET,
};
use proptest::prelude::*;
use rand::Rng;

/// Number of `k`-dimensional subspaces of `GF(p)^d` from the product formula.
fn subspaces_of_dim(p: u64, d: u32, k: u32) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= p.pow(d) - p.pow(i);
        den *= p.pow(k) - p.pow(i);
    }
    num / den
}

#[test]
fn subspace_lattices_have_the_right_size() {
    for (d, p) in [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 5), (2, 7)] {
        let sl = subspace_lattice(d, p, false, DEFAULT_SUBSPACE_BUDGET).unwrap();
        let expected: u64 = (0..=d as u32).map(|k| subspaces_of_dim(p as u64, d as u32, k)).sum();
        assert_eq!(sl.subspaces.len() as u64, expected, "GF({p})^{d}");
        for k in 0..=d {
            let count = sl.subspaces.iter().filter(|s| s.dim() == k).count() as u64;
            assert_eq!(count, subspaces_of_dim(p as u64, d as u32, k as u32));
        }
        assert!(sl.lattice.is_modular().is_ok());
        let rev = subspace_lattice(d, p, true, DEFAULT_SUBSPACE_BUDGET).unwrap();
        assert_eq!(
            rev.lattice.name(rev.lattice.bottom()),
            Subspace::full(p, d).unwrap().label()
        );
    }
    assert!(subspace_lattice(5, 3, false, 100).is_err());
}

#[test]
fn subspace_order_is_inclusion() {
    let sl = subspace_lattice(3, 2, false, DEFAULT_SUBSPACE_BUDGET).unwrap();
    for (i, a) in sl.subspaces.iter().enumerate() {
        for (j, b) in sl.subspaces.iter().enumerate() {
            assert_eq!(sl.lattice.leq(i, j), a.is_subspace_of(b));
            let meet = sl.lattice.meet(i, j);
            assert_eq!(sl.subspaces[meet], a.intersection(b));
            let join = sl.lattice.join(i, j).unwrap();
            assert_eq!(sl.subspaces[join], a.sum(b));
        }
    }
}

/// Totally isotropic subspaces counted directly.
fn isotropic_count(form: &GfMatrix) -> usize {
    let f = form.field();
    let d = form.rows();
    let sl = subspace_lattice(d, form.p(), false, DEFAULT_SUBSPACE_BUDGET).unwrap();
    let value = |u: &[u8], v: &[u8]| {
        let mut acc = 0u8;
        for i in 0..d {
            for j in 0..d {
                acc = f.add(acc, f.mul(u[i], f.mul(form.get(i, j), v[j])));
            }
        }
        acc
    };
    sl.subspaces
        .iter()
        .filter(|s| {
            let b = s.basis_vectors();
            b.iter().all(|u| b.iter().all(|v| value(u, v) == 0))
        })
        .count()
}

fn random_alternating(rng: &mut impl Rng, p: u32, d: usize) -> GfMatrix {
    let f = Field::new(p).unwrap();
    let mut m = GfMatrix::zeros(p, d, d).unwrap();
    for i in 0..d {
        for j in i + 1..d {
            let x = rng.gen_range(0..p) as u8;
            m.set(i, j, x);
            m.set(j, i, f.neg(x));
        }
    }
    m
}

#[test]
fn polar_spaces_of_random_forms() {
    let mut rng = common::rng(31);
    for round in 0..40 {
        let p = if round % 2 == 0 { 2 } else { 3 };
        let d = rng.gen_range(2..=if p == 2 { 4 } else { 3 });
        let form = random_alternating(&mut rng, p, d);
        let ps = polar_space_ppip(&form).unwrap();
        let points = (p.pow(d as u32) - 1) / (p - 1);
        assert_eq!(ps.ppip.len(), points as usize);
        ps.ppip
            .check_axioms()
            .unwrap_or_else(|v| panic!("{form}: {}", v.describe(&ps.ppip)));
        let fam = ps.ppip.consistent_subspaces().unwrap();
        assert!(fam.lattice.is_modular().is_ok());
        assert_eq!(fam.len(), isotropic_count(&form), "form\n{form}");
    }
}

#[test]
fn mvsp_of_small_random_matrices() {
    let mut rng = common::rng(32);
    for _ in 0..12 {
        let rb: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=2)).collect();
        let cb: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=2)).collect();
        let (r, c): (usize, usize) = (rb.iter().sum(), cb.iter().sum());
        let rows: Vec<Vec<u8>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..2)).collect()).collect();
        let a = PartitionedMatrix::new(GfMatrix::from_rows_with_cols(2, c, &rows).unwrap(), rb, cb).unwrap();
        let sol = mvsp_solve(&a, DEFAULT_MVSP_BUDGET).unwrap();
        for t in sol.maximizers() {
            assert!(vanishes(&a, &t).unwrap());
            assert_eq!(t.total_dim(), sol.optimum);
        }
        // Zero rows with full columns vanish, and so do full rows with zero
        // columns.
        assert!(sol.optimum >= c && sol.optimum >= r);
        let dm = dm_decompose(&a, DEFAULT_MVSP_BUDGET).unwrap();
        assert_eq!(dm.left.mul(a.matrix()).unwrap().mul(&dm.right).unwrap(), dm.transformed);
        let (sr, sc) = dm.stages.iter().fold((0, 0), |(x, y), &(a, b)| (x + a, y + b));
        assert_eq!((sr, sc), (r, c));
    }
}

fn vector(p: u32, d: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..p as u8, d)
}

fn subspace(p: u32, d: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(vector(p, d), 0..=d).prop_map(move |vs| Subspace::span(p, d, &vs).unwrap())
}

fn square(p: u32, n: usize) -> impl Strategy<Value = GfMatrix> {
    prop::collection::vec(vector(p, n), n).prop_map(move |rows| GfMatrix::from_rows(p, &rows).unwrap())
}

proptest! {
    #[test]
    fn dimension_formula(a in subspace(3, 4), b in subspace(3, 4)) {
        let s = a.sum(&b);
        let i = a.intersection(&b);
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        prop_assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
        prop_assert_eq!(a.intersection(&a), a.clone());
        prop_assert_eq!(a.sum(&b), b.sum(&a));
    }

    #[test]
    fn intersection_membership(a in subspace(2, 4), b in subspace(2, 4), v in vector(2, 4)) {
        prop_assert_eq!(a.intersection(&b).contains(&v), a.contains(&v) && b.contains(&v));
    }

    #[test]
    fn modular_law_for_subspaces(a in subspace(2, 3), b in subspace(2, 3), c in subspace(2, 3)) {
        let c = a.sum(&c);
        prop_assert_eq!(a.sum(&b.intersection(&c)), a.sum(&b).intersection(&c));
    }

    #[test]
    fn extended_basis_is_adapted(a in subspace(5, 3), c in subspace(5, 3)) {
        let inner = a.intersection(&c).basis_vectors();
        let basis = a.extend_basis(&inner);
        prop_assert_eq!(&basis[..inner.len()], &inner[..]);
        prop_assert_eq!(basis.len(), a.dim());
        prop_assert_eq!(Subspace::span(5, 3, &basis).unwrap(), a);
    }

    #[test]
    fn inverse_and_rank(m in square(3, 4)) {
        let id = GfMatrix::identity(3, 4).unwrap();
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), 4);
                prop_assert_eq!(m.mul(&inv).unwrap(), id.clone());
                prop_assert_eq!(inv.mul(&m).unwrap(), id);
            }
            None => prop_assert!(m.rank() < 4),
        }
        let (r, pivots) = m.rref();
        prop_assert_eq!(r.rref().0, r.clone());
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn field_axioms(a in 0u8..7, b in 0u8..7, c in 0u8..7) {
        let f = Field::new(7).unwrap();
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
