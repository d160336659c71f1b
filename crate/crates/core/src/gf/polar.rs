//! The PPIP of points and lines of a polar space.

use std::collections::BTreeSet;

use super::{format_vector, GfMatrix};
use crate::error::{Error, Result};
use crate::order::Poset;
use crate::ppip::Ppip;

/// Points are normalized nonzero vectors (first nonzero entry 1).
#[derive(Clone, Debug)]
pub struct PolarSpace {
    pub ppip: Ppip,
    pub points: Vec<Vec<u8>>,
}

impl PolarSpace {
    pub fn point_index(&self, v: &[u8]) -> Option<usize> {
        self.points.iter().position(|p| p == v)
    }
}

fn form_value(b: &GfMatrix, u: &[u8], v: &[u8]) -> u8 {
    let f = b.field();
    let mut acc = 0;
    for i in 0..u.len() {
        if u[i] == 0 {
            continue;
        }
        let ui = u[i];
        acc = f.add(acc, f.mul(ui, f.dot(b.row(i), v)));
    }
    acc
}

fn normalize(b: &GfMatrix, v: &[u8]) -> Option<Vec<u8>> {
    let f = b.field();
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead);
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

/// Builds the PPIP of an alternating form: points are the one-dimensional
/// subspaces, two points are inconsistent iff the form does not vanish on
/// them, and three points are collinear iff they lie on a common totally
/// isotropic plane.
pub fn polar_space_ppip(b: &GfMatrix) -> Result<PolarSpace> {
    if !b.is_square() {
        return Err(Error::Input(format!(
            "form must be square, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    let f = b.field();
    let d = b.rows();
    for i in 0..d {
        if b.get(i, i) != 0 {
            return Err(Error::Input(format!(
                "form is not alternating: entry ({i},{i}) is nonzero"
            )));
        }
        for j in 0..d {
            if b.get(i, j) != f.neg(b.get(j, i)) {
                return Err(Error::Input(format!(
                    "form is not alternating: entries ({i},{j}) and ({j},{i}) are not negatives"
                )));
            }
        }
    }
    let points: Vec<Vec<u8>> = f
        .vectors(d)
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    let n = points.len();
    let names: Vec<String> = points.iter().map(|v| format_vector(b.p(), v)).collect();
    let index = |v: &[u8]| points.iter().position(|p| p == v).expect("normalized point");

    let mut pairs = Vec::new();
    let mut triples = BTreeSet::new();
    for a in 0..n {
        for c in a + 1..n {
            if form_value(b, &points[a], &points[c]) != 0 {
                pairs.push((a, c));
                continue;
            }
            // Points of the totally isotropic plane spanned by a and c.
            let mut line: Vec<usize> = Vec::new();
            for s in 0..f.order() {
                for t in 0..f.order() {
                    let v: Vec<u8> = points[a]
                        .iter()
                        .zip(&points[c])
                        .map(|(&x, &y)| f.add(f.mul(s, x), f.mul(t, y)))
                        .collect();
                    if let Some(w) = normalize(b, &v) {
                        let k = index(&w);
                        if !line.contains(&k) {
                            line.push(k);
                        }
                    }
                }
            }
            line.sort_unstable();
            for (i, &x) in line.iter().enumerate() {
                for (j, &y) in line.iter().enumerate().skip(i + 1) {
                    for &z in &line[j + 1..] {
                        triples.insert([x, y, z]);
                    }
                }
            }
        }
    }
    let poset = Poset::antichain(names)?;
    let triples: Vec<[usize; 3]> = triples.into_iter().collect();
    Ok(PolarSpace {
        ppip: Ppip::new(poset, &pairs, &triples)?,
        points,
    })
}
