//! Graphs, right-angled Artin and Bestvina–Brady groups, flag complexes and
//! simplicial homology.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::cup::CupData;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, AbelianGroup, IntMatrix};
use crate::{Int, Rat};

/// Largest number of faces any complex built here may have.
pub const FACE_BUDGET: usize = 100_000;

/// Finite simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    /// Repeated edges are merged; loops and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(alloc::format!("edge ({}, {}) out of range for {} vertices", u, v, n)));
            }
            if u == v {
                return Err(Error::InvalidParameter(alloc::format!("loop at vertex {}", u)));
            }
            g.adj[u][v] = true;
            g.adj[v][u] = true;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Self { n, adj: alloc::vec![alloc::vec![false; n]; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in 0..n {
                g.adj[u][v] = u != v;
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::new(n, &edges).expect("cycle edges are valid")
    }

    /// `K_{n_1, …, n_r}`, parts laid out consecutively.
    pub fn complete_multipartite_graph(parts: &[usize]) -> Self {
        let n = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (p, &size) in parts.iter().enumerate() {
            part_of.extend(core::iter::repeat_n(p, size));
        }
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in 0..n {
                g.adj[u][v] = part_of[u] != part_of[v];
            }
        }
        g
    }

    /// Graph with all `2^{C(n,2)}` edge subsets indexed by `mask`, edges
    /// in lexicographic order; used for exhaustive tests.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    g.adj[u][v] = true;
                    g.adj[v][u] = true;
                }
                bit += 1;
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    /// Edges `(u, v)`, `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().flatten().filter(|&&b| b).count() / 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adj[u][v])
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                g.adj[u][v] = u != v && !self.adj[u][v];
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = alloc::vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edge_count() == self.n - 1
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.adj[u][v]))
    }
}

/// Part sizes (sorted) when `g` is complete multipartite, i.e. when the
/// components of the complement are cliques.
pub fn complete_multipartite(g: &SimpleGraph) -> Option<Vec<usize>> {
    let co = g.complement();
    let comps = co.components();
    if !comps.iter().all(|c| co.is_clique(c)) {
        return None;
    }
    let mut parts: Vec<usize> = comps.iter().map(Vec::len).collect();
    parts.sort_unstable();
    Some(parts)
}

/// Three vertices spanning exactly one edge, the obstruction to being
/// complete multipartite.
pub fn induced_one_edge_triple(g: &SimpleGraph) -> Option<[usize; 3]> {
    let n = g.n();
    for u in 0..n {
        for w in u + 1..n {
            if !g.has_edge(u, w) {
                continue;
            }
            for v in 0..n {
                if v != u && v != w && !g.has_edge(u, v) && !g.has_edge(v, w) {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassificationWitness {
    /// Part sizes of a complete multipartite graph.
    Partition(Vec<usize>),
    Tree,
    /// Induced subgraph on three vertices with exactly one edge.
    InducedOneEdge([usize; 3]),
}

impl fmt::Display for ClassificationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationWitness::Partition(p) => write!(f, "complete multipartite with parts {:?}", p),
            ClassificationWitness::Tree => f.write_str("tree"),
            ClassificationWitness::InducedOneEdge(t) => write!(f, "vertices {:?} span exactly one edge", t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub quasi_kahler: bool,
    pub kahler: bool,
    pub witness: ClassificationWitness,
    pub theorem: &'static str,
}

pub const RAAG_THEOREM: &str = "RAAG quasi-Kähler iff Γ complete multipartite; Kähler iff Γ = K_n, n even";
pub const BB_THEOREM: &str =
    "Bestvina–Brady N_Γ quasi-Kähler iff Γ a tree or K_{n_1..n_r} with some n_i = 1 or all n_i ≥ 2, r ≥ 3; Kähler iff Γ = K_n, n odd";

fn multipartite_witness(g: &SimpleGraph) -> ClassificationWitness {
    match complete_multipartite(g) {
        Some(p) => ClassificationWitness::Partition(p),
        None => ClassificationWitness::InducedOneEdge(induced_one_edge_triple(g).expect("non-multipartite graph has one")),
    }
}

/// Quasi-Kähler and Kähler verdicts for the right-angled Artin group `G_Γ`.
pub fn classify_raag(g: &SimpleGraph) -> ClassificationVerdict {
    let witness = multipartite_witness(g);
    let quasi_kahler = matches!(witness, ClassificationWitness::Partition(_));
    let kahler = g.is_complete() && g.n().is_multiple_of(2);
    ClassificationVerdict { quasi_kahler, kahler, witness, theorem: RAAG_THEOREM }
}

/// Quasi-Kähler and Kähler verdicts for the Bestvina–Brady group `N_Γ`.
pub fn classify_bb(g: &SimpleGraph) -> Result<ClassificationVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let kahler = g.is_complete() && g.n() % 2 == 1;
    if g.is_tree() {
        return Ok(ClassificationVerdict { quasi_kahler: true, kahler, witness: ClassificationWitness::Tree, theorem: BB_THEOREM });
    }
    let witness = multipartite_witness(g);
    let quasi_kahler = match &witness {
        ClassificationWitness::Partition(p) => p.contains(&1) || (p.len() >= 3 && p.iter().all(|&x| x >= 2)),
        _ => false,
    };
    Ok(ClassificationVerdict { quasi_kahler, kahler, witness, theorem: BB_THEOREM })
}

/// Cup product data of `G_Γ`: `H¹` spanned by vertices, `H²` by edges in
/// lexicographic order, `μ(v ∧ w) = +edge` for `v < w`.
pub fn raag_cup_data(g: &SimpleGraph) -> CupData {
    let edges = g.edges();
    let m = edges.len();
    let entries = edges.iter().enumerate().map(|(k, &(u, v))| {
        let mut vec = alloc::vec![Rat::zero(); m];
        vec[k] = Rat::one();
        ((u, v), vec)
    });
    CupData::from_entries(g.n(), m, entries).expect("edge tensor is well formed")
}

/// Finite abstract simplicial complex on vertices `0..n`. Faces are sorted
/// vertex lists; the empty face is not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given facets.
    pub fn from_facets(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut k = Self { n, faces: BTreeSet::new() };
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() {
                return Err(Error::InvalidParameter("facet with repeated vertex".into()));
            }
            if s.iter().any(|&v| v >= n) {
                return Err(Error::InvalidParameter(alloc::format!("facet vertex out of range for {} vertices", n)));
            }
            k.insert_closed(&s)?;
        }
        Ok(k)
    }

    fn insert_closed(&mut self, s: &[usize]) -> Result<()> {
        if s.is_empty() || self.faces.contains(s) {
            return Ok(());
        }
        if s.len() >= 64 {
            return Err(Error::BudgetExceeded { what: "simplex dimension", needed: s.len() as u128, limit: 63 });
        }
        for mask in 1u64..(1u64 << s.len()) {
            let sub: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            self.faces.insert(sub);
            if self.faces.len() > FACE_BUDGET {
                return Err(Error::BudgetExceeded { what: "faces", needed: self.faces.len() as u128, limit: FACE_BUDGET as u128 });
            }
        }
        Ok(())
    }

    /// Boundary of the `k`-simplex on `k + 1` vertices.
    pub fn simplex_boundary(k: usize) -> Self {
        let facets: Vec<Vec<usize>> = (0..=k).map(|skip| (0..=k).filter(|&v| v != skip).collect()).collect();
        Self::from_facets(k + 1, &facets).expect("boundary facets are valid")
    }

    /// The six-vertex triangulation of the real projective plane.
    pub fn rp2_six_vertex() -> Self {
        const T: [[usize; 3]; 10] = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
            [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
        ];
        let facets: Vec<Vec<usize>> = T.iter().map(|t| t.iter().map(|v| v - 1).collect()).collect();
        Self::from_facets(6, &facets).expect("triangulation is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All faces ordered by dimension, then lexicographically.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut f: Vec<Vec<usize>> = self.faces.iter().cloned().collect();
        f.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        f
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }

    /// Faces of dimension `k` (with `k + 1` vertices), lexicographic.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Vec<usize>> {
        self.faces.iter().filter(|f| f.len() == k + 1).cloned().collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().map(Vec::len).max().map(|l| l - 1)
    }

    /// `f_0, f_1, …`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = alloc::vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.faces {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Maximal faces, lexicographic.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let all = self.faces();
        all.iter()
            .filter(|f| !all.iter().any(|g| g.len() == f.len() + 1 && f.iter().all(|v| g.contains(v))))
            .cloned()
            .collect()
    }

    pub fn one_skeleton(&self) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = self.faces_of_dim(1).iter().map(|e| (e[0], e[1])).collect();
        SimpleGraph::new(self.n, &edges).expect("edges of a complex are valid")
    }

    /// Every clique of the 1-skeleton spans a face (and every vertex is a face).
    pub fn is_flag(&self) -> bool {
        (0..self.n).all(|v| self.faces.contains(&alloc::vec![v]))
            && matches!(flag_complex(&self.one_skeleton()), Ok(f) if f == *self)
    }
}

fn bron_kerbosch(g: &SimpleGraph, r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .expect("p is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in candidates {
        r.push(v);
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Maximal cliques, each sorted, in lexicographic order.
pub fn maximal_cliques(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if g.n() > 0 {
        bron_kerbosch(g, &mut Vec::new(), (0..g.n()).collect(), Vec::new(), &mut out);
    }
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

/// The flag complex `Δ_Γ`: one face for every nonempty clique.
pub fn flag_complex(g: &SimpleGraph) -> Result<SimplicialComplex> {
    SimplicialComplex::from_facets(g.n(), &maximal_cliques(g))
}

/// Boundary map `C_k → C_{k−1}` in the lexicographic face bases, with
/// `C_{−1} = Z` (augmentation) so that homology comes out reduced.
fn boundary_matrix(k_faces: &[Vec<usize>], lower: &[Vec<usize>]) -> IntMatrix {
    let index: BTreeMap<&[usize], usize> = lower.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut m = IntMatrix::zeros(lower.len().max(usize::from(k_faces.first().is_some_and(|f| f.len() == 1))), k_faces.len());
    for (j, f) in k_faces.iter().enumerate() {
        if f.len() == 1 {
            m.set(0, j, Int::one());
            continue;
        }
        for skip in 0..f.len() {
            let sub: Vec<usize> = f.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
            let sign = if skip % 2 == 0 { Int::one() } else { -Int::one() };
            m.set(index[sub.as_slice()], j, sign);
        }
    }
    m
}

/// Reduced integral homology `H̃_0, …, H̃_q`.
pub fn simplicial_homology(k: &SimplicialComplex, up_to: usize) -> Vec<AbelianGroup> {
    let top = k.dim().unwrap_or(0);
    let faces: Vec<Vec<Vec<usize>>> = (0..=top.max(up_to) + 1).map(|d| k.faces_of_dim(d)).collect();
    // ranks and divisors of ∂_d for d = 0 ..= up_to + 1 (∂_0 is augmentation)
    let mut rank = Vec::new();
    let mut divisors = Vec::new();
    for d in 0..=up_to + 1 {
        if faces[d].is_empty() {
            rank.push(0);
            divisors.push(Vec::new());
            continue;
        }
        let lower: &[Vec<usize>] = if d == 0 { &[] } else { &faces[d - 1] };
        let snf = smith_normal_form(&boundary_matrix(&faces[d], lower));
        rank.push(snf.rank());
        divisors.push(snf.divisors);
    }
    (0..=up_to)
        .map(|d| {
            let free = faces[d].len() - rank[d] - rank[d + 1];
            AbelianGroup::from_invariants(free, divisors[d + 1].iter().cloned())
        })
        .collect()
}

/// Barycentric subdivision. Vertex `i` of the result is the `i`-th face of
/// `k` in [`SimplicialComplex::faces`] order; faces are chains under
/// inclusion. The result is checked to be a flag complex.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let faces = k.faces();
    let index: BTreeMap<&[usize], usize> = faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    // maximal chains: full flags of each facet
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut total: usize = 0;
    for f in k.facets() {
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = alloc::vec![(f.clone(), alloc::vec![index[f.as_slice()]])];
        while let Some((s, chain)) = stack.pop() {
            if s.len() == 1 {
                total += (1usize << chain.len().min(63)) - 1;
                if total > FACE_BUDGET {
                    return Err(Error::BudgetExceeded { what: "faces", needed: total as u128, limit: FACE_BUDGET as u128 });
                }
                facets.push(chain);
                continue;
            }
            for skip in 0..s.len() {
                let sub: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                let mut c = chain.clone();
                c.push(index[sub.as_slice()]);
                stack.push((sub, c));
            }
        }
    }
    let sd = SimplicialComplex::from_facets(faces.len(), &facets)?;
    if !sd.is_flag() {
        return Err(Error::Precondition("barycentric subdivision failed the flag check".into()));
    }
    Ok(sd)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArtinKernelVerdict {
    OneFormal,
    /// `H̃_i(Δ_Γ; Q) ≠ 0`; the integral group is attached.
    CriterionFails { degree: usize, group: AbelianGroup },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationStatus {
    /// `H̃_1(Δ_Γ; Z) ≠ 0`, so `Δ_Γ` is not simply connected.
    NotFinitelyPresented,
    /// Connectivity and integral `H̃_1` vanish; simple connectivity is not decided.
    NecessaryConditionsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinKernelReport {
    pub verdict: ArtinKernelVerdict,
    pub integral_h0: AbelianGroup,
    pub integral_h1: AbelianGroup,
    /// Rational homology vanishes but integral `H̃_1` has torsion.
    pub torsion_warning: bool,
    pub presentation: PresentationStatus,
}

/// 1-formality of the Bestvina–Brady group `N_Γ` via vanishing of
/// `H̃_0` and `H̃_1` of the flag complex over the rationals.
pub fn artin_kernel_formality(g: &SimpleGraph) -> Result<ArtinKernelReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let h = simplicial_homology(&flag_complex(g)?, 1);
    let (h0, h1) = (h[0].clone(), h[1].clone());
    let verdict = if h0.rank > 0 {
        ArtinKernelVerdict::CriterionFails { degree: 0, group: h0.clone() }
    } else if h1.rank > 0 {
        ArtinKernelVerdict::CriterionFails { degree: 1, group: h1.clone() }
    } else {
        ArtinKernelVerdict::OneFormal
    };
    let torsion_warning = verdict == ArtinKernelVerdict::OneFormal && !h1.torsion.is_empty();
    let presentation = if h1.is_trivial() {
        PresentationStatus::NecessaryConditionsOnly
    } else {
        PresentationStatus::NotFinitelyPresented
    };
    Ok(ArtinKernelReport { verdict, integral_h0: h0, integral_h1: h1, torsion_warning, presentation })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn multipartite_examples() {
        assert_eq!(complete_multipartite(&SimpleGraph::complete_multipartite_graph(&[3, 2])), Some(alloc::vec![2, 3]));
        assert_eq!(complete_multipartite(&SimpleGraph::path(4)), None);
        assert_eq!(complete_multipartite(&SimpleGraph::complete(4)), Some(alloc::vec![1; 4]));
    }

    #[test]
    fn raag_classification() {
        let v = classify_raag(&SimpleGraph::complete(4));
        assert!(v.quasi_kahler && v.kahler);
        let v = classify_raag(&SimpleGraph::complete(3));
        assert!(v.quasi_kahler && !v.kahler);
        let v = classify_raag(&SimpleGraph::path(4));
        assert!(!v.quasi_kahler && !v.kahler);
        let ClassificationWitness::InducedOneEdge(t) = v.witness else { panic!() };
        let g = SimpleGraph::path(4);
        let edges = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])].iter().filter(|&&(a, b)| g.has_edge(a, b)).count();
        assert_eq!(edges, 1);
    }

    #[test]
    fn bb_classification() {
        let star = SimpleGraph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(classify_bb(&star).unwrap().quasi_kahler);
        let path = SimpleGraph::path(5);
        assert_eq!(classify_bb(&path).unwrap().witness, ClassificationWitness::Tree);
        assert!(classify_bb(&SimpleGraph::complete(5)).unwrap().kahler);
        assert!(!classify_bb(&SimpleGraph::cycle(5)).unwrap().quasi_kahler);
        assert!(!classify_bb(&SimpleGraph::cycle(4)).unwrap().quasi_kahler);
        assert!(classify_bb(&SimpleGraph::complete_multipartite_graph(&[2, 2, 2])).unwrap().quasi_kahler);
        assert!(classify_bb(&SimpleGraph::complete_multipartite_graph(&[1, 2, 3])).unwrap().quasi_kahler);
        assert_eq!(classify_bb(&SimpleGraph::empty(2)), Err(Error::Disconnected));
    }

    #[test]
    fn flag_examples() {
        let k3 = flag_complex(&SimpleGraph::complete(3)).unwrap();
        assert_eq!(k3.f_vector(), alloc::vec![3, 3, 1]);
        let c4 = flag_complex(&SimpleGraph::cycle(4)).unwrap();
        assert_eq!(c4.f_vector(), alloc::vec![4, 4]);
        let mut g = SimpleGraph::complete(4);
        g.adj[0][1] = false;
        g.adj[1][0] = false;
        let k = flag_complex(&g).unwrap();
        assert_eq!(k.faces_of_dim(2), alloc::vec![alloc::vec![0, 2, 3], alloc::vec![1, 2, 3]]);
    }

    #[test]
    fn homology_examples() {
        let s2 = SimplicialComplex::simplex_boundary(3);
        let h = simplicial_homology(&s2, 2);
        assert_eq!(h, alloc::vec![AbelianGroup::trivial(), AbelianGroup::trivial(), AbelianGroup::free(1)]);
        let edge = SimplicialComplex::from_facets(2, &[alloc::vec![0, 1]]).unwrap();
        assert!(simplicial_homology(&edge, 2).iter().all(AbelianGroup::is_trivial));
        let rp2 = SimplicialComplex::rp2_six_vertex();
        let h = simplicial_homology(&rp2, 2);
        assert_eq!(h[1], AbelianGroup::from_invariants(0, [Int::from(2)]));
        assert!(h[2].is_trivial());
        let two_points = SimplicialComplex::from_facets(2, &[alloc::vec![0], alloc::vec![1]]).unwrap();
        assert_eq!(simplicial_homology(&two_points, 0)[0], AbelianGroup::free(1));
    }

    #[test]
    fn subdivision_examples() {
        let tri = SimplicialComplex::from_facets(3, &[alloc::vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivision(&tri).unwrap();
        assert_eq!(sd.n(), 7);
        assert_eq!(sd.faces_of_dim(2).len(), 6);
        let s2 = barycentric_subdivision(&SimplicialComplex::simplex_boundary(3)).unwrap();
        assert_eq!(simplicial_homology(&s2, 2)[2], AbelianGroup::free(1));
        let rp2 = barycentric_subdivision(&SimplicialComplex::rp2_six_vertex()).unwrap();
        assert_eq!(rp2.n(), 31);
        assert!(rp2.is_flag());
        assert!(!SimplicialComplex::simplex_boundary(2).is_flag());
    }

    #[test]
    fn artin_kernel_examples() {
        let r = artin_kernel_formality(&SimpleGraph::path(4)).unwrap();
        assert_eq!(r.verdict, ArtinKernelVerdict::OneFormal);
        let r = artin_kernel_formality(&SimpleGraph::cycle(4)).unwrap();
        assert_eq!(r.verdict, ArtinKernelVerdict::CriterionFails { degree: 1, group: AbelianGroup::free(1) });
        assert_eq!(r.presentation, PresentationStatus::NotFinitelyPresented);
        let l = barycentric_subdivision(&SimplicialComplex::rp2_six_vertex()).unwrap().one_skeleton();
        let r = artin_kernel_formality(&l).unwrap();
        assert_eq!(r.verdict, ArtinKernelVerdict::OneFormal);
        assert!(r.torsion_warning);
        assert_eq!(r.integral_h1.to_string(), "Z/2");
        assert!(artin_kernel_formality(&SimpleGraph::empty(3)).is_err());
    }

    #[test]
    fn raag_cup_examples() {
        assert!(raag_cup_data(&SimpleGraph::empty(3)).is_zero());
        assert_eq!(raag_cup_data(&SimpleGraph::complete(2)), CupData::torus(2));
        let p3 = raag_cup_data(&SimpleGraph::path(3));
        assert_eq!((p3.b1(), p3.b2()), (3, 2));
        assert_eq!(p3.mu(0, 1), alloc::vec![q(1), q(0)]);
        assert_eq!(p3.mu(1, 2), alloc::vec![q(0), q(1)]);
        assert_eq!(p3.mu(0, 2), alloc::vec![q(0), q(0)]);
    }
}
