//! File formats: parsing inputs into core types and rendering results.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use formality_core::cdga::{self, FiniteCdga};
use formality_core::cup::{pairs, CupData};
use formality_core::graph::{SimpleGraph, SimplicialComplex};
use formality_core::linalg::{AbelianGroup, IntMatrix, IntPolynomial, PolyFactor, RatMatrix};
use formality_core::resonance::{LaurentPoly, LinearSubspace};
use formality_core::rules::{Fact, FactSet};
use formality_core::{Int, Rat};

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// An integer, or a string holding an integer or a fraction `p/q`.
#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    pub fn rat(&self) -> Result<Rat> {
        match self {
            Num::Int(n) => Ok(Rat::from_integer((*n).into())),
            Num::Str(s) => {
                let s = s.trim();
                let (p, q) = s.split_once('/').unwrap_or((s, "1"));
                let p: Int = p.trim().parse().map_err(|_| anyhow!("not a rational number: {s:?}"))?;
                let q: Int = q.trim().parse().map_err(|_| anyhow!("not a rational number: {s:?}"))?;
                if q == Int::from(0) {
                    bail!("zero denominator in {s:?}");
                }
                Ok(Rat::new(p, q))
            }
        }
    }

    pub fn int(&self) -> Result<Int> {
        let r = self.rat()?;
        if !r.is_integer() {
            bail!("expected an integer, got {r}");
        }
        Ok(r.to_integer())
    }
}

fn rats(v: &[Num]) -> Result<Vec<Rat>> {
    v.iter().map(Num::rat).collect()
}

#[derive(Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Num>>,
}

impl MatrixJson {
    fn check(&self) -> Result<()> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            bail!("matrix entries do not match the declared {}x{} shape", self.rows, self.cols);
        }
        Ok(())
    }

    pub fn int(&self) -> Result<IntMatrix> {
        self.check()?;
        let rows = self.entries.iter().map(|r| r.iter().map(Num::int).collect()).collect::<Result<_>>()?;
        Ok(IntMatrix::from_rows(rows, self.cols)?)
    }

    pub fn rat(&self) -> Result<RatMatrix> {
        self.check()?;
        let rows = self.entries.iter().map(|r| rats(r)).collect::<Result<_>>()?;
        Ok(RatMatrix::from_rows(rows, self.cols)?)
    }
}

#[derive(Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<Num>,
}

impl PolyJson {
    pub fn poly(&self) -> Result<IntPolynomial> {
        Ok(IntPolynomial::new(self.coeffs.iter().map(Num::int).collect::<Result<_>>()?))
    }
}

#[derive(Deserialize)]
pub struct CupJson {
    pub b1: usize,
    pub b2: usize,
    #[serde(default)]
    pub mu: BTreeMap<String, Vec<Num>>,
}

impl CupJson {
    pub fn cup(&self) -> Result<CupData> {
        let mut entries = Vec::new();
        for (key, v) in &self.mu {
            let (i, j) = key.split_once(',').ok_or_else(|| anyhow!("cup key {key:?} is not of the form \"i,j\""))?;
            let i: usize = i.trim().parse().with_context(|| format!("cup key {key:?}"))?;
            let j: usize = j.trim().parse().with_context(|| format!("cup key {key:?}"))?;
            entries.push(((i, j), rats(v)?));
        }
        Ok(CupData::from_entries(self.b1, self.b2, entries)?)
    }
}

#[derive(Deserialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: Vec<Vec<Num>>,
}

impl SubspaceJson {
    pub fn subspace(&self) -> Result<LinearSubspace> {
        let basis = self.basis.iter().map(|v| rats(v)).collect::<Result<Vec<_>>>()?;
        Ok(LinearSubspace::new(self.ambient, basis)?)
    }
}

/// One subspace or a list of them.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum Subspaces {
    One(SubspaceJson),
    Many(Vec<SubspaceJson>),
}

impl Subspaces {
    pub fn all(&self) -> Result<Vec<LinearSubspace>> {
        match self {
            Subspaces::One(s) => Ok(vec![s.subspace()?]),
            Subspaces::Many(v) => v.iter().map(SubspaceJson::subspace).collect(),
        }
    }
}

#[derive(Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: Num,
}

#[derive(Deserialize)]
pub struct LaurentJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

impl LaurentJson {
    pub fn poly(&self) -> Result<LaurentPoly> {
        let terms = self.terms.iter().map(|t| Ok((t.exp.clone(), t.coeff.int()?))).collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly::new(self.vars, terms)?)
    }
}

#[derive(Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn graph(&self) -> Result<SimpleGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(SimpleGraph::new(self.n, &edges)?)
    }
}

#[derive(Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexJson {
    pub fn complex(&self) -> Result<SimplicialComplex> {
        Ok(SimplicialComplex::from_facets(self.n, &self.facets)?)
    }
}

/// `degrees` maps basis names to degrees in basis order; `diff` maps a
/// degree `k` to the matrix of `d: A^k → A^{k+1}` in the degree-local bases;
/// `mult` lists nonzero products `e_i e_j = Σ c_k e_k` by global index.
#[derive(Deserialize)]
pub struct CdgaJson {
    pub degrees: Map<String, Value>,
    #[serde(default)]
    pub diff: BTreeMap<String, MatrixJson>,
    #[serde(default)]
    pub mult: Vec<(usize, usize, Vec<(usize, Num)>)>,
}

impl CdgaJson {
    pub fn cdga(&self) -> Result<FiniteCdga> {
        let mut basis = Vec::new();
        for (name, deg) in &self.degrees {
            let deg = deg.as_u64().ok_or_else(|| anyhow!("degree of {name:?} is not a nonnegative integer"))?;
            basis.push((name.clone(), deg as usize));
        }
        let in_degree = |k: usize| -> Vec<usize> { (0..basis.len()).filter(|&i| basis[i].1 == k).collect() };
        let mut diff = Vec::new();
        for (k, m) in &self.diff {
            let k: usize = k.trim().parse().with_context(|| format!("diff key {k:?} is not a degree"))?;
            let (src, dst) = (in_degree(k), in_degree(k + 1));
            let m = m.rat()?;
            if m.rows() != dst.len() || m.cols() != src.len() {
                bail!("d in degree {k} must be {}x{}, got {}x{}", dst.len(), src.len(), m.rows(), m.cols());
            }
            for (c, &s) in src.iter().enumerate() {
                let terms: Vec<(usize, Rat)> =
                    dst.iter().enumerate().map(|(r, &t)| (t, m.get(r, c).clone())).collect();
                diff.push((s, terms));
            }
        }
        let mult = self
            .mult
            .iter()
            .map(|(i, j, terms)| Ok(((*i, *j), terms.iter().map(|(k, c)| Ok((*k, c.rat()?))).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteCdga::new(basis, diff, mult)?)
    }
}

/// `heisenberg`, `torus:N`, `surface:G` or `wedge:N`.
pub fn builtin_cdga(spec: &str) -> Result<FiniteCdga> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let arg = || -> Result<usize> { arg.parse().with_context(|| format!("builtin {spec:?} needs a numeric parameter")) };
    Ok(match name {
        "heisenberg" => cdga::heisenberg(),
        "torus" => cdga::torus(arg()?)?,
        "surface" => cdga::surface(arg()?)?,
        "wedge" | "wedge_of_circles" => cdga::wedge_of_circles(arg()?)?,
        _ => bail!("unknown builtin cdga {name:?} (heisenberg, torus:N, surface:G, wedge:N)"),
    })
}

/// `complete:N`, `path:N`, `cycle:N`, `empty:N` or `multipartite:A,B,..`.
pub fn named_graph(spec: &str) -> Result<SimpleGraph> {
    let (name, arg) = spec.split_once(':').ok_or_else(|| anyhow!("graph spec {spec:?} needs the form name:arg"))?;
    let n = || -> Result<usize> { arg.parse().with_context(|| format!("graph spec {spec:?}")) };
    Ok(match name {
        "complete" => SimpleGraph::complete(n()?),
        "path" => SimpleGraph::path(n()?),
        "cycle" => SimpleGraph::cycle(n()?),
        "empty" => SimpleGraph::empty(n()?),
        "multipartite" => {
            let parts = arg.split(',').map(|p| p.trim().parse()).collect::<Result<Vec<usize>, _>>()?;
            SimpleGraph::complete_multipartite_graph(&parts)
        }
        _ => bail!("unknown graph family {name:?} (complete, path, cycle, empty, multipartite)"),
    })
}

/// `{"fact": true | false | null}`.
pub fn facts(v: &Map<String, Value>) -> Result<FactSet> {
    let mut out = FactSet::new();
    for (k, val) in v {
        let fact = Fact::from_id(k).ok_or_else(|| anyhow!("unknown fact {k:?}"))?;
        match val {
            Value::Bool(b) => out.set(fact, *b)?,
            Value::Null => {}
            Value::String(s) if s == "unknown" => {}
            _ => bail!("fact {k:?} must be true, false or null"),
        }
    }
    Ok(out)
}

pub fn parse_point(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(|t| Num::Str(t.trim().to_string()).rat()).collect()
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

/// Integers as JSON numbers when they fit, strings otherwise.
pub fn int(x: &Int) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn rat(x: &Rat) -> Value {
    if x.is_integer() {
        int(x.numer())
    } else {
        json!(x.to_string())
    }
}

pub fn rat_vec(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": (0..m.rows()).map(|i| m.row(i).iter().map(int).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn poly(p: &IntPolynomial) -> Value {
    json!({ "coeffs": p.coeffs().iter().map(int).collect::<Vec<_>>(), "text": p.to_string() })
}

pub fn group(g: &AbelianGroup) -> Value {
    json!({ "rank": g.rank, "torsion": g.torsion.iter().map(int).collect::<Vec<_>>(), "text": g.to_string() })
}

pub fn factor(f: &PolyFactor) -> Value {
    json!({
        "poly": poly(&f.poly),
        "multiplicity": f.multiplicity,
        "cyclotomic": f.cyclotomic,
        "irreducible_certified": f.irreducible_certified,
    })
}

pub fn subspace(l: &LinearSubspace) -> Value {
    json!({ "ambient": l.ambient(), "basis": l.basis().iter().map(|v| rat_vec(v)).collect::<Vec<_>>() })
}

pub fn cup(c: &CupData) -> Value {
    let mut mu = Map::new();
    for (i, j) in pairs(c.b1()) {
        let v = c.mu(i, j);
        if v.iter().any(|x| *x != Rat::from_integer(0.into())) {
            mu.insert(format!("{i},{j}"), rat_vec(&v));
        }
    }
    json!({ "b1": c.b1(), "b2": c.b2(), "mu": mu })
}
