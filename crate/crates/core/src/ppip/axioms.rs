//! Exhaustive checks of the PPIP axioms.

use std::fmt;

use super::Ppip;
use crate::sets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Ic1,
    Ic2,
    Ct1,
    Ct2,
    Regularity,
    WeakTriangle,
    Cc1,
    Cc2,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Ic1,
        Axiom::Ic2,
        Axiom::Ct1,
        Axiom::Ct2,
        Axiom::Regularity,
        Axiom::WeakTriangle,
        Axiom::Cc1,
        Axiom::Cc2,
    ];

    fn statement(self) -> &'static str {
        match self {
            Axiom::Ic1 => "inconsistent elements have no common upper bound",
            Axiom::Ic2 => "inconsistency is inherited upwards",
            Axiom::Ct1 => "collinear elements are pairwise incomparable",
            Axiom::Ct2 => "an upper bound of two collinear elements bounds the third",
            Axiom::Regularity => "every r' <= r outside p, q lies on a line through p' <= p, q' <= q",
            Axiom::WeakTriangle => "two consistent lines through a common point satisfy a triangle condition",
            Axiom::Cc1 => "collinear triples are consistent",
            Axiom::Cc2 => "each element is consistent with at most one or all of a collinear triple",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Ic1 => "IC1",
            Axiom::Ic2 => "IC2",
            Axiom::Ct1 => "CT1",
            Axiom::Ct2 => "CT2",
            Axiom::Regularity => "Regularity",
            Axiom::WeakTriangle => "weak Triangle",
            Axiom::Cc1 => "CC1",
            Axiom::Cc2 => "CC2",
        };
        f.write_str(name)
    }
}

/// The first failing axiom together with the elements witnessing it.
///
/// Witness layouts: IC1 `[p, q]`; IC2 `[p, q, p', q']`; CT1 and CC1
/// `[p, q, r]`; CT2 `[p, q, r, w]`; Regularity `[p, q, r, r']`; weak Triangle
/// `[a, c, p, b, q]`; CC2 `[p, q, r, x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl AxiomViolation {
    pub fn describe(&self, ppip: &Ppip) -> String {
        let names: Vec<&str> = self.witness.iter().map(|&x| ppip.name(x)).collect();
        format!(
            "{} fails ({}): witness ({})",
            self.axiom,
            self.axiom.statement(),
            names.join(", ")
        )
    }
}

type Check = std::result::Result<(), AxiomViolation>;

fn fail(axiom: Axiom, witness: Vec<usize>) -> Check {
    Err(AxiomViolation { axiom, witness })
}

/// The three ways of singling out one element of a sorted triple.
fn rotations([a, b, c]: [usize; 3]) -> [(usize, usize, usize); 3] {
    [(a, b, c), (a, c, b), (b, c, a)]
}

impl Ppip {
    /// Checks IC1, IC2, CT1, CT2, Regularity, weak Triangle, CC1 and CC2 in
    /// that order, returning the canonically first violation.
    pub fn check_axioms(&self) -> Check {
        self.check_ic1()?;
        self.check_ic2()?;
        self.check_ct1()?;
        self.check_ct2()?;
        self.check_regularity()?;
        self.check_weak_triangle()?;
        self.check_cc1()?;
        self.check_cc2()
    }

    pub fn check_axiom(&self, axiom: Axiom) -> Check {
        match axiom {
            Axiom::Ic1 => self.check_ic1(),
            Axiom::Ic2 => self.check_ic2(),
            Axiom::Ct1 => self.check_ct1(),
            Axiom::Ct2 => self.check_ct2(),
            Axiom::Regularity => self.check_regularity(),
            Axiom::WeakTriangle => self.check_weak_triangle(),
            Axiom::Cc1 => self.check_cc1(),
            Axiom::Cc2 => self.check_cc2(),
        }
    }

    fn check_ic1(&self) -> Check {
        for (p, q) in self.inconsistent_pairs() {
            if !self.poset.up_set(p).is_disjoint(self.poset.up_set(q)) {
                return fail(Axiom::Ic1, vec![p, q]);
            }
        }
        Ok(())
    }

    fn check_ic2(&self) -> Check {
        for (p0, q0) in self.inconsistent_pairs() {
            for (p, q) in [(p0, q0), (q0, p0)] {
                for p2 in self.poset.up_set(p).ones() {
                    let missing = self.poset.up_set(q).difference(&self.inconsistent[p2]).next();
                    if let Some(q2) = missing {
                        return fail(Axiom::Ic2, vec![p, q, p2, q2]);
                    }
                }
            }
        }
        Ok(())
    }

    fn check_ct1(&self) -> Check {
        for t @ [a, b, c] in self.collinear_triples() {
            let p = &self.poset;
            if p.comparable(a, b) || p.comparable(a, c) || p.comparable(b, c) {
                return fail(Axiom::Ct1, t.to_vec());
            }
        }
        Ok(())
    }

    fn check_ct2(&self) -> Check {
        for t in self.collinear_triples() {
            for (p, q, r) in rotations(t) {
                let bounds = sets::intersection(self.poset.up_set(p), self.poset.up_set(q));
                if let Some(w) = bounds.difference(self.poset.up_set(r)).next() {
                    return fail(Axiom::Ct2, vec![p, q, r, w]);
                }
            }
        }
        Ok(())
    }

    /// For collinear `(p, q, r)` and `r' <= r` with `r' ≰ p`, `r' ≰ q`, some
    /// `p' <= p`, `q' <= q` make `(p', q', r')` collinear.
    pub fn check_regularity(&self) -> Check {
        for t in self.collinear_triples() {
            for (p, q, r) in rotations(t) {
                for r2 in self.poset.down_set(r).ones() {
                    if self.leq(r2, p) || self.leq(r2, q) {
                        continue;
                    }
                    let found = self.poset.down_set(p).ones().any(|p2| {
                        self.thirds(p2, r2)
                            .is_some_and(|th| !th.is_disjoint(self.poset.down_set(q)))
                    });
                    if !found {
                        return fail(Axiom::Regularity, vec![p, q, r, r2]);
                    }
                }
            }
        }
        Ok(())
    }

    /// For collinear `(a, c, p)` and `(b, c, q)` with `{a, b, c, p, q}`
    /// consistent, one of the five triangle conditions holds.
    pub fn check_weak_triangle(&self) -> Check {
        let triples: Vec<[usize; 3]> = self.collinear_triples().collect();
        let mut through: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (i, t) in triples.iter().enumerate() {
            for &x in t {
                through[x].push(i);
            }
        }
        for t1 in &triples {
            for (a0, p0, c) in rotations(*t1) {
                for &j in &through[c] {
                    let [u, v] = others(triples[j], c);
                    for (a, p) in [(a0, p0), (p0, a0)] {
                        for (b, q) in [(u, v), (v, u)] {
                            let five = sets::from_iter(self.len(), [a, b, c, p, q]);
                            if !self.is_consistent(&five) {
                                continue;
                            }
                            if !self.triangle_holds(a, b, c, p, q) {
                                return fail(Axiom::WeakTriangle, vec![a, c, p, b, q]);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn triangle_holds(&self, a: usize, b: usize, c: usize, p: usize, q: usize) -> bool {
        let down = |x| self.poset.down_set(x);
        // q <= a or q <= p
        if self.leq(q, a) || self.leq(q, p) {
            return true;
        }
        // C(b, q, p)
        if self.collinear(b, q, p) {
            return true;
        }
        // a' <= a with C(b, q, a')
        if self.thirds(b, q).is_some_and(|th| !th.is_disjoint(down(a))) {
            return true;
        }
        // a' <= a, p' <= p with C(q, a', p')
        let fourth = down(a)
            .ones()
            .any(|a2| self.thirds(q, a2).is_some_and(|th| !th.is_disjoint(down(p))));
        if fourth {
            return true;
        }
        // a sixth point x on both lines ab and pq
        let (Some(ab), Some(pq)) = (self.thirds(a, b), self.thirds(p, q)) else {
            return false;
        };
        ab.intersection(pq).any(|x| self.is_triangle_point(a, b, c, p, q, x))
    }

    fn is_triangle_point(&self, a: usize, b: usize, c: usize, p: usize, q: usize, x: usize) -> bool {
        let six = [a, b, c, p, q, x];
        for i in 0..6 {
            for j in i + 1..6 {
                if six[i] == six[j] || self.poset.comparable(six[i], six[j]) {
                    return false;
                }
            }
        }
        let allowed = [
            super::sort3([a, c, p]),
            super::sort3([b, c, q]),
            super::sort3([a, b, x]),
            super::sort3([p, q, x]),
        ];
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    let t = super::sort3([six[i], six[j], six[k]]);
                    if self.collinear(t[0], t[1], t[2]) && !allowed.contains(&t) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_cc1(&self) -> Check {
        for t @ [a, b, c] in self.collinear_triples() {
            if self.inconsistent(a, b) || self.inconsistent(a, c) || self.inconsistent(b, c) {
                return fail(Axiom::Cc1, t.to_vec());
            }
        }
        Ok(())
    }

    fn check_cc2(&self) -> Check {
        for [a, b, c] in self.collinear_triples() {
            for x in 0..self.len() {
                let consistent = [a, b, c].iter().filter(|&&y| !self.inconsistent(x, y)).count();
                if consistent == 2 {
                    return fail(Axiom::Cc2, vec![a, b, c, x]);
                }
            }
        }
        Ok(())
    }
}

fn others(t: [usize; 3], c: usize) -> [usize; 2] {
    let mut out = [0; 2];
    let mut k = 0;
    for x in t {
        if x != c {
            out[k] = x;
            k += 1;
        }
    }
    out
}
