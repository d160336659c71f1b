//! Brute-force minimizer sets of separable functions on products.

use std::fmt;

use super::{oracle_from_set, ProductSpace, SetOracle, Vector};
use crate::error::{Error, Result};

type Eval = Box<dyn Fn(&[usize]) -> f64 + Send + Sync>;

/// A term depending only on the coordinates in `scope`. `eval` receives the
/// values at those coordinates, in scope order. `f64::INFINITY` marks
/// forbidden combinations.
pub struct LocalTerm {
    pub scope: Vec<usize>,
    eval: Eval,
}

impl LocalTerm {
    pub fn new<F>(scope: Vec<usize>, eval: F) -> Self
    where
        F: Fn(&[usize]) -> f64 + Send + Sync + 'static,
    {
        LocalTerm {
            scope,
            eval: Box::new(eval),
        }
    }
}

impl fmt::Debug for LocalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalTerm").field("scope", &self.scope).finish()
    }
}

/// A sum of local terms over a product space.
#[derive(Debug)]
pub struct SeparableFunction {
    space: ProductSpace,
    terms: Vec<LocalTerm>,
}

impl SeparableFunction {
    pub fn new(space: ProductSpace) -> Self {
        SeparableFunction {
            space,
            terms: Vec::new(),
        }
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn add_term(&mut self, term: LocalTerm) -> Result<()> {
        if let Some(&bad) = term.scope.iter().find(|&&i| i >= self.space.dim()) {
            return Err(Error::Input(format!("term scope mentions coordinate {bad}")));
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn evaluate(&self, x: &[usize]) -> f64 {
        let mut buf = Vec::new();
        let mut total = 0.0;
        for t in &self.terms {
            buf.clear();
            buf.extend(t.scope.iter().map(|&i| x[i]));
            total += (t.eval)(&buf);
            if total == f64::INFINITY {
                break;
            }
        }
        total
    }

    /// Minimum value and every minimizer, by scanning the whole product.
    /// Fails when the product has more than `budget` points or the function
    /// is `+inf` everywhere.
    pub fn minimize(&self, budget: u128) -> Result<(f64, Vec<Vector>)> {
        let sizes: Vec<usize> = self.space.factors().iter().map(|f| f.len()).collect();
        let total = sizes
            .iter()
            .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
            .unwrap_or(u128::MAX);
        if total > budget {
            return Err(Error::budget("product points", total, budget));
        }
        const TOL: f64 = 1e-9;
        let mut best = f64::INFINITY;
        let mut argmin: Vec<Vector> = Vec::new();
        let mut x = vec![0usize; sizes.len()];
        if sizes.contains(&0) {
            return Err(Error::Input("empty factor".into()));
        }
        loop {
            let v = self.evaluate(&x);
            if v < best - TOL {
                best = v;
                argmin.clear();
                argmin.push(x.clone());
            } else if v.is_finite() && (v - best).abs() <= TOL {
                argmin.push(x.clone());
            }
            // odometer step
            let mut k = sizes.len();
            loop {
                if k == 0 {
                    if best == f64::INFINITY {
                        return Err(Error::Input("function is +inf everywhere".into()));
                    }
                    return Ok((best, argmin));
                }
                k -= 1;
                x[k] += 1;
                if x[k] < sizes[k] {
                    break;
                }
                x[k] = 0;
            }
        }
    }
}

/// Minimizes `f` by brute force and wraps the minimizer set as an oracle,
/// rejecting minimizer sets that are not `(meet, join)`-closed.
pub fn oracle_from_minimizers(f: &SeparableFunction, budget: u128) -> Result<(f64, SetOracle)> {
    let (value, members) = f.minimize(budget)?;
    if let Err(why) = f.space().check_closed(&members) {
        return Err(Error::NotSubmodular(why));
    }
    let oracle = oracle_from_set(f.space().clone(), members)?;
    Ok((value, oracle))
}
