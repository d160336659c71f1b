//! JSON schemas, the line-oriented implication format and DOT output.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{DmDecomposition, GfMatrix, MvspSolution, PartitionedMatrix, Subspace, VanishingTuple};
use crate::horn::ImplicationalSystem;
use crate::order::Poset;
use crate::ppip::Ppip;
use crate::product::{ProductSpace, Vector};
use crate::semilattice::Semilattice;

/// `{"elements": [...], "covers": [["a", "b"], ...]}` with `a` covered by `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson {
            elements: p.names().to_vec(),
            covers: p
                .covers()
                .iter()
                .map(|&(a, b)| [p.name(a).to_string(), p.name(b).to_string()])
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let covers: Vec<(String, String)> = self.covers.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        Poset::from_named_covers(self.elements.clone(), &covers)
    }

    pub fn to_semilattice(&self) -> Result<Semilattice> {
        Semilattice::new(self.to_poset()?)
    }
}

/// Poset fields plus inconsistent pairs and collinear triples by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PpipJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
    #[serde(default)]
    pub inconsistent: Vec<[String; 2]>,
    #[serde(default)]
    pub collinear: Vec<[String; 3]>,
}

impl PpipJson {
    pub fn from_ppip(p: &Ppip) -> Self {
        let base = PosetJson::from_poset(p.poset());
        let name = |x: usize| p.name(x).to_string();
        PpipJson {
            elements: base.elements,
            covers: base.covers,
            inconsistent: p
                .inconsistent_pairs()
                .into_iter()
                .map(|(a, b)| [name(a), name(b)])
                .collect(),
            collinear: p
                .collinear_triples()
                .map(|[a, b, c]| [name(a), name(b), name(c)])
                .collect(),
        }
    }

    pub fn to_ppip(&self) -> Result<Ppip> {
        let poset = PosetJson {
            elements: self.elements.clone(),
            covers: self.covers.clone(),
        }
        .to_poset()?;
        let pairs: Vec<(String, String)> = self.inconsistent.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        let triples: Vec<[String; 3]> = self.collinear.clone();
        Ppip::from_named(poset, &pairs, &triples)
    }
}

/// An explicit subset of `L^n`, members given as lists of element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSetJson {
    pub lattice: PosetJson,
    pub n: usize,
    pub members: Vec<Vec<String>>,
}

impl ProductSetJson {
    pub fn from_members(space: &ProductSpace, members: &[Vector]) -> Result<Self> {
        let l = space.factor(0);
        if space
            .factors()
            .iter()
            .any(|f| !Arc::ptr_eq(f, &space.factors()[0]) && f.names() != l.names())
        {
            return Err(Error::Input("the JSON form needs identical factors".into()));
        }
        Ok(ProductSetJson {
            lattice: PosetJson::from_poset(l.poset()),
            n: space.dim(),
            members: members
                .iter()
                .map(|v| v.iter().map(|&x| l.name(x).to_string()).collect())
                .collect(),
        })
    }

    pub fn to_space_and_members(&self) -> Result<(ProductSpace, Vec<Vector>)> {
        if self.n == 0 {
            return Err(Error::Input("`n` must be positive".into()));
        }
        let space = ProductSpace::power(self.lattice.to_semilattice()?, self.n);
        let members = self
            .members
            .iter()
            .map(|m| {
                if m.len() != self.n {
                    return Err(Error::Input(format!("member {m:?} does not have {} entries", self.n)));
                }
                space.parse(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((space, members))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImplicationJson {
    pub premise: Vec<String>,
    /// Empty for an improper implication.
    pub conclusion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImplicationsJson {
    pub ground: Vec<String>,
    pub implications: Vec<ImplicationJson>,
}

impl ImplicationsJson {
    pub fn from_system(s: &ImplicationalSystem) -> Self {
        let names = |set: &crate::sets::ElemSet| set.ones().map(|e| s.ground()[e].clone()).collect();
        ImplicationsJson {
            ground: s.ground().to_vec(),
            implications: s
                .implications()
                .iter()
                .map(|i| ImplicationJson {
                    premise: names(&i.premise),
                    conclusion: names(&i.conclusion),
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<ImplicationalSystem> {
        let imps: Vec<(Vec<String>, Vec<String>)> = self
            .implications
            .iter()
            .map(|i| (i.premise.clone(), i.conclusion.clone()))
            .collect();
        ImplicationalSystem::from_named(self.ground.clone(), &imps)
    }
}

/// `{"p": 2, "row_blocks": [...], "col_blocks": [...], "entries": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionedMatrixJson {
    pub p: u32,
    pub row_blocks: Vec<usize>,
    pub col_blocks: Vec<usize>,
    pub entries: Vec<Vec<i64>>,
}

fn reduce_rows(p: u32, rows: &[Vec<i64>]) -> Result<Vec<Vec<u8>>> {
    if p == 0 {
        return Err(Error::Input("field size must be positive".into()));
    }
    Ok(rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u8).collect())
        .collect())
}

fn widen(m: &GfMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect()
}

impl PartitionedMatrixJson {
    pub fn from_matrix(a: &PartitionedMatrix) -> Self {
        PartitionedMatrixJson {
            p: a.p(),
            row_blocks: a.row_blocks().to_vec(),
            col_blocks: a.col_blocks().to_vec(),
            entries: widen(a.matrix()),
        }
    }

    pub fn to_matrix(&self) -> Result<PartitionedMatrix> {
        let cols = self.col_blocks.iter().sum();
        let m = GfMatrix::from_rows_with_cols(self.p, cols, &reduce_rows(self.p, &self.entries)?)?;
        PartitionedMatrix::new(m, self.row_blocks.clone(), self.col_blocks.clone())
    }
}

/// A square form `{"p": 2, "form": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub p: u32,
    pub form: Vec<Vec<i64>>,
}

impl FormJson {
    pub fn from_matrix(m: &GfMatrix) -> Self {
        FormJson {
            p: m.p(),
            form: widen(m),
        }
    }

    pub fn to_matrix(&self) -> Result<GfMatrix> {
        GfMatrix::from_rows(self.p, &reduce_rows(self.p, &self.form)?)
    }
}

/// A subspace tuple as basis vectors (reduced row echelon form), one list
/// per row block in `x` and per column block in `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub x: Vec<Vec<Vec<u8>>>,
    pub y: Vec<Vec<Vec<u8>>>,
}

impl TupleJson {
    pub fn from_tuple(t: &VanishingTuple) -> Self {
        TupleJson {
            x: t.x.iter().map(Subspace::basis_vectors).collect(),
            y: t.y.iter().map(Subspace::basis_vectors).collect(),
        }
    }

    /// Rebuilds the tuple with block dimensions taken from `a`.
    pub fn to_tuple(&self, a: &PartitionedMatrix) -> Result<VanishingTuple> {
        if self.x.len() != a.row_blocks().len() || self.y.len() != a.col_blocks().len() {
            return Err(Error::Input("tuple length does not match the partition".into()));
        }
        let span = |dims: &[usize], bases: &[Vec<Vec<u8>>]| -> Result<Vec<Subspace>> {
            dims.iter()
                .zip(bases)
                .map(|(&d, b)| Subspace::span(a.p(), d, b))
                .collect()
        };
        Ok(VanishingTuple {
            x: span(a.row_blocks(), &self.x)?,
            y: span(a.col_blocks(), &self.y)?,
        })
    }
}

/// Optimum and all maximizers of the vanishing-subspace problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MvspJson {
    pub optimum: usize,
    pub maximizers: Vec<TupleJson>,
}

impl MvspJson {
    pub fn from_solution(sol: &MvspSolution) -> Self {
        MvspJson {
            optimum: sol.optimum,
            maximizers: sol.maximizers().iter().map(TupleJson::from_tuple).collect(),
        }
    }
}

/// A block-triangularization: the chain, the basis changes and the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmJson {
    pub p: u32,
    pub stages: Vec<[usize; 2]>,
    pub chain: Vec<TupleJson>,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub e_blocks: Vec<Vec<Vec<i64>>>,
    pub f_blocks: Vec<Vec<Vec<i64>>>,
    pub left: Vec<Vec<i64>>,
    pub right: Vec<Vec<i64>>,
    pub transformed: Vec<Vec<i64>>,
}

impl DmJson {
    pub fn from_decomposition(dm: &DmDecomposition) -> Self {
        DmJson {
            p: dm.transformed.p(),
            stages: dm.stages.iter().map(|&(r, c)| [r, c]).collect(),
            chain: dm.chain.iter().map(TupleJson::from_tuple).collect(),
            row_perm: dm.row_perm.clone(),
            col_perm: dm.col_perm.clone(),
            e_blocks: dm.e_blocks.iter().map(widen).collect(),
            f_blocks: dm.f_blocks.iter().map(widen).collect(),
            left: widen(&dm.left),
            right: widen(&dm.right),
            transformed: widen(&dm.transformed),
        }
    }
}

/// Matrix rows as JSON arrays, for emitted transforms.
pub fn matrix_rows(m: &GfMatrix) -> Vec<Vec<i64>> {
    widen(m)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn is_bottom_token(t: &str) -> bool {
    matches!(t, "_|_" | "⊥" | "∅" | "{}")
}

/// Orders names numerically when both are integers, numbers first.
fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Parses the line format `a b -> c d` / `a b -> _|_`.
///
/// Names may be separated by spaces or commas; `→` may replace `->` and
/// `⊥` or `∅` may replace `_|_`. Text after `#` is ignored. An optional
/// `ground: a b c` line fixes the ground set and its order; otherwise it
/// consists of every mentioned name, integers first in numeric order.
pub fn parse_implications(text: &str) -> Result<ImplicationalSystem> {
    let tokens = |s: &str| -> Vec<String> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect()
    };
    let mut ground: Option<Vec<String>> = None;
    let mut imps: Vec<(Vec<String>, Vec<String>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ground:") {
            if ground.is_some() {
                return Err(Error::Input(format!("line {}: second `ground:` line", lineno + 1)));
            }
            ground = Some(tokens(rest));
            continue;
        }
        let line = line.replace('→', "->");
        let Some((lhs, rhs)) = line.split_once("->") else {
            return Err(Error::Input(format!(
                "line {}: expected `premise -> conclusion`",
                lineno + 1
            )));
        };
        let premise = tokens(lhs);
        let mut conclusion = tokens(rhs);
        if conclusion.iter().any(|t| is_bottom_token(t)) {
            if conclusion.len() != 1 {
                return Err(Error::Input(format!(
                    "line {}: `_|_` cannot be combined with other conclusions",
                    lineno + 1
                )));
            }
            conclusion.clear();
        }
        if premise.iter().any(|t| is_bottom_token(t)) || rhs.contains("->") {
            return Err(Error::Input(format!("line {}: malformed implication", lineno + 1)));
        }
        imps.push((premise, conclusion));
    }
    let ground = match ground {
        Some(g) => g,
        None => {
            let mut all: Vec<String> = imps
                .iter()
                .flat_map(|(a, b)| a.iter().chain(b))
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            all.sort_by(|a, b| natural_cmp(a, b));
            all
        }
    };
    ImplicationalSystem::from_named(ground, &imps)
}

/// The line format, preceded by a `ground:` line.
pub fn format_implications(s: &ImplicationalSystem) -> String {
    format!("ground: {}\n{}", s.ground().join(" "), s)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram, edges pointing from covered to covering element.
pub fn hasse_dot(p: &Poset, graph_name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(graph_name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=plaintext];");
    for i in 0..p.len() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(p.name(i)));
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a PPIP with dashed edges for minimal inconsistent pairs
/// and a box around each collinear triple.
pub fn ppip_dot(p: &Ppip, graph_name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(graph_name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=plaintext];");
    for i in 0..p.len() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(p.name(i)));
    }
    for &(a, b) in p.poset().covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    for (a, b) in p.minimal_inconsistent_pairs() {
        let _ = writeln!(out, "  n{a} -> n{b} [style=dashed, dir=none, constraint=false];");
    }
    for (k, [a, b, c]) in p.collinear_triples().enumerate() {
        let _ = writeln!(out, "  t{k} [shape=box, label=\"\", width=0.15, height=0.15];");
        for x in [a, b, c] {
            let _ = writeln!(out, "  t{k} -> n{x} [dir=none, style=dotted, constraint=false];");
        }
    }
    out.push_str("}\n");
    out
}

/// A chain of labelled nodes, bottom first.
pub fn chain_dot(labels: &[String], graph_name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(graph_name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  s{i} [label={}];", quote(l));
    }
    for i in 1..labels.len() {
        let _ = writeln!(out, "  s{} -> s{i};", i - 1);
    }
    out.push_str("}\n");
    out
}
