//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use modsemi::catalog;
use modsemi::gf::{subspace_lattice, DEFAULT_SUBSPACE_BUDGET};
use modsemi::horn::{optimal_base, ImplicationalSystem};
use modsemi::order::Poset;
use modsemi::product::{ProductSpace, Vector};
use modsemi::{Ppip, Semilattice};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEFAULT_SEED: u64 = 0x5eed_2019;

/// Seed from `MODSEMI_SEED`, or a fixed default.
pub fn seed() -> u64 {
    std::env::var("MODSEMI_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// A generator for one test, so tests do not share random streams.
pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

/// Closes `seeds` under meets and existing joins; `None` once the result
/// would exceed `limit` members.
pub fn close(space: &ProductSpace, seeds: &[Vector], limit: usize) -> Option<Vec<Vector>> {
    let mut set: BTreeSet<Vector> = seeds.iter().cloned().collect();
    loop {
        let cur: Vec<Vector> = set.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in cur.iter().enumerate() {
            for b in &cur[i + 1..] {
                grew |= set.insert(space.meet(a, b));
                if let Some(j) = space.join(a, b) {
                    grew |= set.insert(j);
                }
                if set.len() > limit {
                    return None;
                }
            }
        }
        if !grew {
            return Some(set.into_iter().collect());
        }
    }
}

pub fn random_vector(rng: &mut ChaCha8Rng, space: &ProductSpace) -> Vector {
    (0..space.dim())
        .map(|i| rng.gen_range(0..space.factor(i).len()))
        .collect()
}

/// A random `(meet, join)`-closed subset generated by up to `max_seeds`
/// random vectors, retried until it has at most `limit` members.
pub fn random_closed_set(rng: &mut ChaCha8Rng, space: &ProductSpace, max_seeds: usize, limit: usize) -> Vec<Vector> {
    loop {
        let k = rng.gen_range(1..=max_seeds);
        let seeds: Vec<Vector> = (0..k).map(|_| random_vector(rng, space)).collect();
        if let Some(b) = close(space, &seeds, limit) {
            return b;
        }
    }
}

/// Consistent ideals of a random poset with inconsistent pairs: a median
/// semilattice.
pub fn random_median(rng: &mut ChaCha8Rng, max_size: usize) -> Semilattice {
    loop {
        let k = rng.gen_range(1..=5);
        let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
        let mut rel = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if rng.gen_bool(0.3) {
                    rel.push((i, j));
                }
            }
        }
        let poset = Poset::from_relation(names, &rel).expect("acyclic");
        let mut pairs = BTreeSet::new();
        for p in 0..k {
            for q in p + 1..k {
                let common = (0..k).any(|w| poset.leq(p, w) && poset.leq(q, w));
                if !common && rng.gen_bool(0.4) {
                    for p2 in poset.up_set(p).ones() {
                        for q2 in poset.up_set(q).ones() {
                            pairs.insert((p2.min(q2), p2.max(q2)));
                        }
                    }
                }
            }
        }
        let pairs: Vec<_> = pairs.into_iter().collect();
        let ppip = Ppip::new(poset, &pairs, &[]).expect("valid PIP");
        let fam = ppip.consistent_subspaces().expect("PIP axioms hold");
        if fam.len() <= max_size {
            return fam.lattice;
        }
    }
}

fn factor_pool() -> Vec<Semilattice> {
    vec![
        catalog::s_k(2),
        catalog::s_k(3),
        catalog::m3(),
        catalog::chain_of(2),
        catalog::chain_of(3),
        catalog::boolean(2),
    ]
}

/// A random modular semilattice with at most `max_size` elements, drawn
/// from closed subsets of subspace lattices, full products of small
/// modular semilattices, closed subsets of such products, and median
/// semilattices.
pub fn random_modular(rng: &mut ChaCha8Rng, max_size: usize) -> (String, Semilattice) {
    loop {
        let kind = rng.gen_range(0..4);
        let (label, space, members) = match kind {
            0 => {
                let (d, p) = *[(2, 2), (3, 2), (2, 3), (2, 5)].choose(rng).unwrap();
                let sl = subspace_lattice(d, p, rng.gen_bool(0.5), DEFAULT_SUBSPACE_BUDGET).unwrap();
                let space = ProductSpace::new(vec![Arc::new(sl.lattice)]);
                let b = random_closed_set(rng, &space, 4, max_size);
                (format!("subspaces of GF({p})^{d}"), space, b)
            }
            1 => {
                let pool = factor_pool();
                let a = pool.choose(rng).unwrap().clone();
                let b = pool.choose(rng).unwrap().clone();
                if a.len() * b.len() > max_size {
                    continue;
                }
                let space = ProductSpace::new(vec![Arc::new(a), Arc::new(b)]);
                let mut all = Vec::new();
                for x in 0..space.factor(0).len() {
                    for y in 0..space.factor(1).len() {
                        all.push(vec![x, y]);
                    }
                }
                ("full product".to_string(), space, all)
            }
            2 => {
                let pool = factor_pool();
                let n = rng.gen_range(1..=3);
                let factors: Vec<Arc<Semilattice>> =
                    (0..n).map(|_| Arc::new(pool.choose(rng).unwrap().clone())).collect();
                let space = ProductSpace::new(factors);
                let b = random_closed_set(rng, &space, 4, max_size);
                ("closed subset of a product".to_string(), space, b)
            }
            _ => return ("median".to_string(), random_median(rng, max_size)),
        };
        if members.len() <= max_size {
            return (label, space.semilattice_of(&members).unwrap());
        }
    }
}

/// A random system over `n` elements named `1..=n`.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize) -> ImplicationalSystem {
    let ground: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let count = rng.gen_range(0..=n + 2);
    let mut imps = Vec::new();
    for _ in 0..count {
        let pk = rng.gen_range(0..=3.min(n));
        let mut premise: Vec<usize> = (0..n).collect();
        premise.shuffle(rng);
        premise.truncate(pk);
        let conclusion: Vec<usize> = if rng.gen_bool(0.2) {
            Vec::new()
        } else {
            let ck = rng.gen_range(1..=2.min(n));
            let mut c: Vec<usize> = (0..n).collect();
            c.shuffle(rng);
            c.truncate(ck);
            c
        };
        if premise.is_empty() && conclusion.is_empty() && rng.gen_bool(0.9) {
            continue;
        }
        imps.push((premise, conclusion));
    }
    ImplicationalSystem::new(ground, imps).unwrap()
}

/// The optimal base of a random modular semilattice with at most
/// `max_ground` join-irreducibles, optionally perturbed by dropping or
/// adding one implication.
pub fn near_modular_system(rng: &mut ChaCha8Rng, max_ground: usize) -> ImplicationalSystem {
    loop {
        let (_, l) = random_modular(rng, 20);
        if l.join_irreducibles().len() > max_ground || l.join_irreducibles().is_empty() {
            continue;
        }
        let base = optimal_base(&l).unwrap();
        let n = base.ground_len();
        let mut imps: Vec<(Vec<usize>, Vec<usize>)> = base
            .implications()
            .iter()
            .map(|i| (i.premise.ones().collect(), i.conclusion.ones().collect()))
            .collect();
        match rng.gen_range(0..3) {
            0 => {}
            1 if !imps.is_empty() => {
                let k = rng.gen_range(0..imps.len());
                imps.remove(k);
            }
            _ => {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let conclusion = if rng.gen_bool(0.3) {
                    vec![]
                } else {
                    vec![rng.gen_range(0..n)]
                };
                imps.push((vec![a, b], conclusion));
            }
        }
        return ImplicationalSystem::new(base.ground().to_vec(), imps).unwrap();
    }
}

/// Brute-force verdict: the closed sets form a modular semilattice.
pub fn brute_force_modular(sys: &ImplicationalSystem) -> bool {
    let fam = sys.family(1 << 12).unwrap();
    match fam.semilattice() {
        Ok(l) => l.is_modular().is_ok(),
        Err(_) => false,
    }
}

/// Closure of `x` in an intersection-closed family given by bitmasks.
fn family_closure(family: &[u32], x: u32) -> Option<u32> {
    family
        .iter()
        .filter(|&&f| f & x == x)
        .fold(None, |acc, &f| Some(acc.map_or(f, |a| a & f)))
}

/// A system whose closed sets are exactly `family` closed under
/// intersection. Keeps `X -> c(X) ∖ X` when no `X ∖ {x}` has the same
/// closure, and `X -> ⊥` when `X` is a minimal set without closure.
pub fn system_of_family(n: usize, family: &[u32]) -> ImplicationalSystem {
    let mut closed: BTreeSet<u32> = family.iter().copied().collect();
    loop {
        let cur: Vec<u32> = closed.iter().copied().collect();
        let before = closed.len();
        for (i, &a) in cur.iter().enumerate() {
            for &b in &cur[i + 1..] {
                closed.insert(a & b);
            }
        }
        if closed.len() == before {
            break;
        }
    }
    let closed: Vec<u32> = closed.into_iter().collect();
    let mut imps = Vec::new();
    let bits = |m: u32| (0..n).filter(move |&e| m >> e & 1 == 1).collect::<Vec<_>>();
    for x in 0u32..1 << n {
        let cx = family_closure(&closed, x);
        let subs: Vec<Option<u32>> = bits(x)
            .into_iter()
            .map(|e| family_closure(&closed, x & !(1 << e)))
            .collect();
        match cx {
            Some(c) if c != x && subs.iter().all(|&s| s != Some(c)) => imps.push((bits(x), bits(c & !x))),
            None if subs.iter().all(Option::is_some) => imps.push((bits(x), Vec::new())),
            _ => {}
        }
    }
    let ground: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    ImplicationalSystem::new(ground, imps).unwrap()
}

/// An intersection-closed family: either random subsets of a small ground
/// set, or random subspaces of GF(2)^3 seen as sets of their seven nonzero
/// vectors.
pub fn random_family_system(rng: &mut ChaCha8Rng) -> ImplicationalSystem {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(1..=6);
        let family: Vec<u32> = (0..k).map(|_| rng.gen_range(0..1u32 << n)).collect();
        system_of_family(n, &family)
    } else {
        // Points 1..=7 are the nonzero vectors of GF(2)^3; subspaces are
        // closed under xor.
        let mut subspaces = Vec::new();
        for m in 0u32..1 << 7 {
            let pts: Vec<u32> = (0..7).filter(|&e| m >> e & 1 == 1).map(|e| e + 1).collect();
            if pts
                .iter()
                .all(|&a| pts.iter().all(|&b| a == b || pts.contains(&(a ^ b))))
            {
                subspaces.push(m);
            }
        }
        let k = rng.gen_range(2..=7);
        let family: Vec<u32> = (0..k).map(|_| *subspaces.choose(rng).unwrap()).collect();
        system_of_family(7, &family)
    }
}
