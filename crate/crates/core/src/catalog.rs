//! Small named fixtures used by tests, examples and the CLI.

use crate::gf::{GfMatrix, PartitionedMatrix};
use crate::horn::ImplicationalSystem;
use crate::order::Poset;
use crate::semilattice::Semilattice;

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn build(names: &[&str], covers: &[(usize, usize)]) -> Semilattice {
    let poset = Poset::new(owned(names), covers).expect("catalog poset");
    Semilattice::new(poset).expect("catalog semilattice")
}

/// A chain with the given element names, bottom first.
pub fn chain(names: &[&str]) -> Semilattice {
    Semilattice::new(Poset::chain(owned(names)).expect("chain")).expect("chain")
}

/// A chain `0 < 1 < ... < k-1`.
pub fn chain_of(k: usize) -> Semilattice {
    let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    Semilattice::new(Poset::chain(names).expect("chain")).expect("chain")
}

/// `S_k`: a minimum `0` below `k` pairwise incomparable atoms `a, b, c, ...`.
pub fn s_k(k: usize) -> Semilattice {
    let mut names = vec!["0".to_string()];
    names.extend((0..k).map(atom_name));
    let covers: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    Semilattice::new(Poset::new(names, &covers).expect("star")).expect("star")
}

fn atom_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

/// The diamond `0 < x, y, z < 1`.
pub fn m3() -> Semilattice {
    build(
        &["0", "x", "y", "z", "1"],
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )
}

/// The diamond with `k` atoms `a, b, ...` between `0` and `1`.
pub fn m_k(k: usize) -> Semilattice {
    let mut names = vec!["0".to_string()];
    names.extend((0..k).map(atom_name));
    names.push("1".to_string());
    let mut covers = Vec::new();
    for i in 1..=k {
        covers.push((0, i));
        covers.push((i, k + 1));
    }
    Semilattice::new(Poset::new(names, &covers).expect("diamond")).expect("diamond")
}

/// The pentagon `0 < a < c < 1`, `0 < b < 1`.
pub fn n5() -> Semilattice {
    build(&["0", "a", "b", "c", "1"], &[(0, 1), (0, 2), (1, 3), (3, 4), (2, 4)])
}

/// The boolean lattice of subsets of `{0, ..., k-1}`.
pub fn boolean(k: usize) -> Semilattice {
    let n = 1usize << k;
    let names: Vec<String> = (0..n)
        .map(|m| {
            let parts: Vec<String> = (0..k).filter(|b| m >> b & 1 == 1).map(|b| b.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let poset = Poset::from_leq(names, |a, b| a & b == a).expect("boolean");
    Semilattice::new(poset).expect("boolean")
}

/// The optimal base of the eight-irreducible example semilattice, over the
/// ground set `1..=8`.
pub const EXAMPLE_BASE: &str = "\
4 -> 5
5 -> 1 3
6 -> 1 2
7 -> 2 3
5 6 -> 7
6 7 -> 5
7 5 -> 6
1 8 -> _|_
2 4 -> _|_
";

pub fn example_base() -> ImplicationalSystem {
    crate::io::parse_implications(EXAMPLE_BASE).expect("example base")
}

/// The 6x6 GF(2) matrix of type (2,2,2; 2,2,2) used in the
/// block-triangularization example.
pub fn example_partitioned_matrix() -> PartitionedMatrix {
    let rows: [[u8; 6]; 6] = [
        [1, 1, 0, 1, 0, 1],
        [0, 1, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 0],
        [1, 1, 1, 1, 0, 1],
        [0, 1, 1, 0, 0, 0],
    ];
    let m = GfMatrix::from_rows(2, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("matrix");
    PartitionedMatrix::new(m, vec![2, 2, 2], vec![2, 2, 2]).expect("partition")
}

/// The 3x3 alternating form over GF(2) whose polar space has seven points.
pub fn example_polar_form() -> GfMatrix {
    GfMatrix::from_rows(2, &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).expect("form")
}
