//! PPIPs of `(meet, join)`-closed subsets of product semilattices.
//!
//! A subset `B` of `L_1 × ... × L_n` is accessed only through a
//! [`MembershipOracle`] answering whether some member has prescribed values
//! at two coordinates. From those answers [`compute_bases`] recovers the
//! componentwise-least member with a given coordinate value, and
//! [`build_ppip`] assembles the order, inconsistency and collinearity on the
//! join-irreducible members.

mod minimizers;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::Poset;
use crate::ppip::Ppip;
use crate::semilattice::Semilattice;

pub use minimizers::{oracle_from_minimizers, LocalTerm, SeparableFunction};

/// A member of a product: one factor element per coordinate.
pub type Vector = Vec<usize>;

/// The product `L_1 × ... × L_n` with componentwise order.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    factors: Vec<Arc<Semilattice>>,
}

impl ProductSpace {
    pub fn new(factors: Vec<Arc<Semilattice>>) -> Self {
        ProductSpace { factors }
    }

    /// `L^n`.
    pub fn power(l: Semilattice, n: usize) -> Self {
        let l = Arc::new(l);
        ProductSpace { factors: vec![l; n] }
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &Semilattice {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Arc<Semilattice>] {
        &self.factors
    }

    /// Largest factor size, the `|L|` of the call bound.
    pub fn max_factor_len(&self) -> usize {
        self.factors.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    pub fn leq(&self, a: &[usize], b: &[usize]) -> bool {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .all(|(f, (&x, &y))| f.leq(x, y))
    }

    pub fn meet(&self, a: &[usize], b: &[usize]) -> Vector {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(f, (&x, &y))| f.meet(x, y))
            .collect()
    }

    pub fn join(&self, a: &[usize], b: &[usize]) -> Option<Vector> {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(f, (&x, &y))| f.join(x, y))
            .collect()
    }

    pub fn format(&self, v: &[usize]) -> String {
        let parts: Vec<&str> = v.iter().enumerate().map(|(i, &x)| self.factors[i].name(x)).collect();
        format!("({})", parts.join(","))
    }

    /// Parses a vector of factor element names.
    pub fn parse(&self, names: &[String]) -> Result<Vector> {
        if names.len() != self.dim() {
            return Err(Error::Input(format!(
                "vector has {} coordinates, expected {}",
                names.len(),
                self.dim()
            )));
        }
        names
            .iter()
            .enumerate()
            .map(|(i, s)| self.factors[i].index_of(s))
            .collect()
    }

    /// Checks that `members` is closed under meets and existing joins,
    /// reporting the first violating pair.
    pub fn check_closed(&self, members: &[Vector]) -> std::result::Result<(), String> {
        let set: HashSet<&Vector> = members.iter().collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let m = self.meet(a, b);
                if !set.contains(&m) {
                    return Err(format!(
                        "meet of {} and {} is {}, which is missing",
                        self.format(a),
                        self.format(b),
                        self.format(&m)
                    ));
                }
                if let Some(j) = self.join(a, b) {
                    if !set.contains(&j) {
                        return Err(format!(
                            "join of {} and {} is {}, which is missing",
                            self.format(a),
                            self.format(b),
                            self.format(&j)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `members` ordered componentwise, as a semilattice whose element `i`
    /// is `members[i]`.
    pub fn semilattice_of(&self, members: &[Vector]) -> Result<Semilattice> {
        let names = members.iter().map(|v| self.format(v)).collect();
        let poset = Poset::from_leq(names, |a, b| self.leq(&members[a], &members[b]))?;
        Semilattice::new(poset)
    }
}

/// Answers "is there a member `b` with `b[i] = l` and `b[j] = l2`?".
pub trait MembershipOracle {
    fn space(&self) -> &ProductSpace;
    fn query(&self, i: usize, j: usize, l: usize, l2: usize) -> bool;
    /// Number of queries answered so far.
    fn calls(&self) -> u64;
}

/// Oracle over an explicit member list.
#[derive(Debug)]
pub struct SetOracle {
    space: ProductSpace,
    members: Vec<Vector>,
    /// `pairs[i * n + j]` holds every `(b[i], b[j])`.
    pairs: Vec<HashSet<(usize, usize)>>,
    calls: AtomicU64,
}

impl SetOracle {
    pub fn members(&self) -> &[Vector] {
        &self.members
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }
}

impl MembershipOracle for SetOracle {
    fn space(&self) -> &ProductSpace {
        &self.space
    }

    fn query(&self, i: usize, j: usize, l: usize, l2: usize) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.pairs[i * self.space.dim() + j].contains(&(l, l2))
    }

    fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

/// Validates `members` (nonempty, in range, `(meet, join)`-closed) and wraps
/// it as an oracle. Members are deduplicated and sorted.
pub fn oracle_from_set(space: ProductSpace, members: Vec<Vector>) -> Result<SetOracle> {
    if members.is_empty() {
        return Err(Error::Input("member set is empty".into()));
    }
    let n = space.dim();
    for v in &members {
        if v.len() != n || v.iter().enumerate().any(|(i, &x)| x >= space.factor(i).len()) {
            return Err(Error::Input(format!("member {v:?} does not fit the product")));
        }
    }
    let mut members = members;
    members.sort();
    members.dedup();
    space.check_closed(&members).map_err(Error::NotClosed)?;
    let mut pairs = vec![HashSet::new(); n * n];
    for v in &members {
        for i in 0..n {
            for j in 0..n {
                pairs[i * n + j].insert((v[i], v[j]));
            }
        }
    }
    Ok(SetOracle {
        space,
        members,
        pairs,
        calls: AtomicU64::new(0),
    })
}

/// Bases `e^i_l`, indexed by coordinate and factor element.
#[derive(Clone, Debug)]
pub struct Bases {
    table: Vec<Vec<Option<Vector>>>,
}

impl Bases {
    /// The least member with `i`-th coordinate `l`, if any member has it.
    pub fn get(&self, i: usize, l: usize) -> Option<&Vector> {
        self.table[i][l].as_ref()
    }

    /// Elements of `L_i` occurring as an `i`-th coordinate.
    pub fn projection(&self, i: usize) -> Vec<usize> {
        (0..self.table[i].len())
            .filter(|&l| self.table[i][l].is_some())
            .collect()
    }
}

/// Computes every base with at most `n^2 |L|^2` oracle calls: one call
/// `query(i, i, l, l)` decides whether `e^i_l` exists, then `|L_j|` calls
/// per other coordinate `j` collect the candidate values, whose least
/// element is `e^i_l[j]`.
pub fn compute_bases(oracle: &dyn MembershipOracle) -> Result<Bases> {
    let space = oracle.space();
    let n = space.dim();
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let fi = space.factor(i);
        let mut row = Vec::with_capacity(fi.len());
        for l in 0..fi.len() {
            if !oracle.query(i, i, l, l) {
                row.push(None);
                continue;
            }
            let mut vector = vec![0; n];
            vector[i] = l;
            for (j, slot) in vector.iter_mut().enumerate() {
                if j == i {
                    continue;
                }
                let fj = space.factor(j);
                let values: Vec<usize> = (0..fj.len()).filter(|&l2| oracle.query(i, j, l, l2)).collect();
                *slot = least_of(fj, &values).ok_or_else(|| {
                    Error::NotClosed(format!(
                        "members with coordinate {i} = {} have no least value at coordinate {j} (candidates: {})",
                        fi.name(l),
                        values.iter().map(|&v| fj.name(v)).collect::<Vec<_>>().join(", ")
                    ))
                })?;
            }
            row.push(Some(vector));
        }
        table.push(row);
    }
    Ok(Bases { table })
}

fn least_of(l: &Semilattice, values: &[usize]) -> Option<usize> {
    let m = l.meet_all(values.iter().copied())?;
    values.contains(&m).then_some(m)
}

/// `e^i_l <= b` decided at coordinate `i` alone.
pub fn lcp_leq(space: &ProductSpace, i: usize, l: usize, b: &[usize]) -> bool {
    space.factor(i).leq(l, b[i])
}

/// The image of `B` at one coordinate, as a semilattice in its own right.
#[derive(Clone, Debug)]
pub struct Projection {
    pub lattice: Semilattice,
    /// `elements[k]` is the factor element behind element `k`.
    pub elements: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Projection {
    fn new(factor: &Semilattice, values: &[usize]) -> Result<Self> {
        let (lattice, elements) = factor.restrict(values)?;
        let mut position = vec![None; factor.len()];
        for (k, &x) in elements.iter().enumerate() {
            position[x] = Some(k);
        }
        Ok(Projection {
            lattice,
            elements,
            position,
        })
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.position[x]
    }

    pub fn is_irreducible(&self, x: usize) -> bool {
        self.position[x].is_some_and(|k| self.lattice.is_join_irreducible(k))
    }

    fn inconsistent(&self, x: usize, y: usize) -> bool {
        match (self.position[x], self.position[y]) {
            (Some(a), Some(b)) => self.lattice.join(a, b).is_none(),
            _ => false,
        }
    }

    fn collinear(&self, x: usize, y: usize, z: usize) -> bool {
        match (self.position[x], self.position[y], self.position[z]) {
            (Some(a), Some(b), Some(c)) => self.lattice.collinear_elements(a, b, c),
            _ => false,
        }
    }
}

/// A join-irreducible member with every `(i, l)` such that it equals
/// `e^i_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleBase {
    pub vector: Vector,
    pub labels: Vec<(usize, usize)>,
}

/// Join-irreducible members: the bases `e^i_l` with `l` join-irreducible in
/// the `i`-th projection, merged by vector. Ordered by first label.
pub fn join_irreducible_elements(
    space: &ProductSpace,
    bases: &Bases,
    projections: &[Projection],
) -> Vec<IrreducibleBase> {
    let mut out: Vec<IrreducibleBase> = Vec::new();
    let mut by_vector: BTreeMap<Vector, usize> = BTreeMap::new();
    for (i, proj) in projections.iter().enumerate().take(space.dim()) {
        for &l in &proj.elements {
            if !proj.is_irreducible(l) {
                continue;
            }
            let v = bases.get(i, l).expect("projection elements have bases").clone();
            match by_vector.get(&v) {
                Some(&k) => out[k].labels.push((i, l)),
                None => {
                    by_vector.insert(v.clone(), out.len());
                    out.push(IrreducibleBase {
                        vector: v,
                        labels: vec![(i, l)],
                    });
                }
            }
        }
    }
    out
}

/// The PPIP built from an oracle, with the vectors behind its elements.
#[derive(Clone, Debug)]
pub struct ProductPpip {
    pub ppip: Ppip,
    pub elements: Vec<IrreducibleBase>,
    pub projections: Vec<Projection>,
    /// Oracle calls spent computing the bases.
    pub oracle_calls: u64,
}

/// Builds the PPIP of the set behind `oracle`.
///
/// Order comes from [`lcp_leq`]. Inconsistent pairs are seeded by labels
/// `(i, l)`, `(i, l')` with `l ⌣ l'` in the `i`-th projection and then
/// propagated upwards through the pair order. A pairwise consistent triple
/// is collinear iff, at each of its three label coordinates, the three
/// coordinate values are collinear in that projection.
pub fn build_ppip(oracle: &dyn MembershipOracle) -> Result<ProductPpip> {
    let space = oracle.space();
    for i in 0..space.dim() {
        if let Err(v) = space.factor(i).is_modular() {
            return Err(Error::Precondition(format!(
                "factor {i} is not a modular semilattice: {}",
                v.describe(space.factor(i))
            )));
        }
    }
    let before = oracle.calls();
    let bases = compute_bases(oracle)?;
    let oracle_calls = oracle.calls() - before;
    let projections = (0..space.dim())
        .map(|i| Projection::new(space.factor(i), &bases.projection(i)))
        .collect::<Result<Vec<_>>>()?;
    let elements = join_irreducible_elements(space, &bases, &projections);
    let m = elements.len();

    let names = elements.iter().map(|e| space.format(&e.vector)).collect();
    let poset = Poset::from_leq(names, |a, b| {
        let (i, l) = elements[a].labels[0];
        lcp_leq(space, i, l, &elements[b].vector)
    })?;

    let mut inconsistent = vec![false; m * m];
    let mut queue = VecDeque::new();
    for a in 0..m {
        for b in 0..m {
            let seeded = elements[a].labels.iter().any(|&(i, l)| {
                elements[b]
                    .labels
                    .iter()
                    .any(|&(j, l2)| i == j && projections[i].inconsistent(l, l2))
            });
            if seeded && !inconsistent[a * m + b] {
                inconsistent[a * m + b] = true;
                queue.push_back((a, b));
            }
        }
    }
    while let Some((a, b)) = queue.pop_front() {
        let ups = poset
            .upper_covers(a)
            .iter()
            .map(|&a2| (a2, b))
            .chain(poset.upper_covers(b).iter().map(|&b2| (a, b2)));
        for (x, y) in ups.collect::<Vec<_>>() {
            if !inconsistent[x * m + y] {
                inconsistent[x * m + y] = true;
                queue.push_back((x, y));
            }
        }
    }
    let mut pairs = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if inconsistent[a * m + b] || inconsistent[b * m + a] {
                pairs.push((a, b));
            }
        }
    }

    let consistent = |a: usize, b: usize| !inconsistent[a * m + b] && !inconsistent[b * m + a];
    let mut triples = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !consistent(a, b) {
                continue;
            }
            for c in b + 1..m {
                if !consistent(a, c) || !consistent(b, c) {
                    continue;
                }
                let (va, vb, vc) = (&elements[a].vector, &elements[b].vector, &elements[c].vector);
                let at = |k: usize| projections[k].collinear(va[k], vb[k], vc[k]);
                let (i, _) = elements[a].labels[0];
                let (j, _) = elements[b].labels[0];
                let (k, _) = elements[c].labels[0];
                if at(i) && at(j) && at(k) {
                    triples.push([a, b, c]);
                }
            }
        }
    }
    let ppip = Ppip::new(poset, &pairs, &triples)?;
    Ok(ProductPpip {
        ppip,
        elements,
        projections,
        oracle_calls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ppip::{check_isomorphic_via, induced_ppip};

    fn s2_square() -> (ProductSpace, Vec<Vector>) {
        // S2 = {0, a, b} with indices 0, 1, 2.
        let space = ProductSpace::power(catalog::s_k(2), 2);
        let members = vec![vec![0, 0], vec![1, 0], vec![0, 2], vec![1, 2]];
        (space, members)
    }

    #[test]
    fn oracle_validation() {
        let (space, members) = s2_square();
        let o = oracle_from_set(space.clone(), members).unwrap();
        assert!(o.query(0, 1, 1, 2));
        let err = oracle_from_set(space.clone(), vec![vec![1, 0], vec![0, 2]]).unwrap_err();
        assert!(err.to_string().contains("meet"));
        let o = oracle_from_set(space.clone(), vec![vec![0, 0]]).unwrap();
        assert!(!o.query(0, 0, 1, 1));
        assert!(oracle_from_set(space, vec![]).is_err());
    }

    #[test]
    fn bases_and_lcp() {
        let (space, members) = s2_square();
        let o = oracle_from_set(space.clone(), members.clone()).unwrap();
        let bases = compute_bases(&o).unwrap();
        assert_eq!(bases.get(0, 1), Some(&vec![1, 0]));
        assert_eq!(bases.get(1, 2), Some(&vec![0, 2]));
        assert_eq!(bases.get(0, 2), None);
        assert!(o.calls() <= 2 * 2 * 3 * 3);
        assert!(lcp_leq(&space, 0, 1, &[1, 2]));
        assert!(!lcp_leq(&space, 0, 1, &[0, 2]));
        assert!(lcp_leq(&space, 0, 1, &[1, 0]));
    }

    #[test]
    fn ppip_examples() {
        let (space, members) = s2_square();
        let o = oracle_from_set(space, members).unwrap();
        let built = build_ppip(&o).unwrap();
        let vectors: Vec<_> = built.elements.iter().map(|e| e.vector.clone()).collect();
        assert_eq!(vectors, vec![vec![1, 0], vec![0, 2]]);
        assert!(built.ppip.inconsistent_pairs().is_empty());
        assert_eq!(built.ppip.collinear_count(), 0);
        assert_eq!(built.ppip.consistent_subspaces().unwrap().len(), 4);

        let s2 = ProductSpace::power(catalog::s_k(2), 1);
        let o = oracle_from_set(s2, vec![vec![0], vec![1], vec![2]]).unwrap();
        let built = build_ppip(&o).unwrap();
        assert_eq!(built.ppip.inconsistent_pairs(), vec![(0, 1)]);

        let m3 = ProductSpace::power(catalog::m3(), 1);
        let o = oracle_from_set(m3, (0..5).map(|x| vec![x]).collect()).unwrap();
        let built = build_ppip(&o).unwrap();
        assert_eq!(built.elements.len(), 3);
        assert_eq!(built.ppip.collinear_triples().collect::<Vec<_>>(), vec![[0, 1, 2]]);

        let single = ProductSpace::power(catalog::s_k(2), 1);
        let o = oracle_from_set(single, vec![vec![0]]).unwrap();
        assert!(build_ppip(&o).unwrap().elements.is_empty());
    }

    #[test]
    fn matches_induced_on_diamond_square() {
        let space = ProductSpace::power(catalog::m3(), 2);
        let mut members = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                members.push(vec![a, b]);
            }
        }
        let o = oracle_from_set(space.clone(), members).unwrap();
        let built = build_ppip(&o).unwrap();
        let l = space.semilattice_of(o.members()).unwrap();
        let induced = induced_ppip(&l).unwrap();
        let map: Vec<usize> = built
            .elements
            .iter()
            .map(|e| {
                let idx = o.members().iter().position(|v| *v == e.vector).unwrap();
                l.irreducible_position(idx).unwrap()
            })
            .collect();
        check_isomorphic_via(&built.ppip, &induced.ppip, &map).unwrap();
        assert_eq!(built.ppip.collinear_count(), 2);
    }
}
