//! Finite-dimensional commutative differential graded algebras.
//!
//! An algebra is given by a graded basis, the differential of each basis
//! element and the structure constants of the product. The unit is the
//! unique degree-0 basis element; products with it are implicit.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::cup::{pair_count, pairs, CupData};
use crate::error::{Error, Result};
use crate::linalg::{rank_kernel, rank_of_vectors, solve, EchelonBasis, RatMatrix};
use crate::Rat;

/// Sparse linear combination of basis elements.
pub type Sparse = Vec<(usize, Rat)>;

/// Largest number of exterior generators accepted by the built-in models.
pub const MAX_EXTERIOR_GENERATORS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCdga {
    names: Vec<String>,
    degrees: Vec<usize>,
    diff: Vec<Sparse>,
    mult: BTreeMap<(usize, usize), Sparse>,
    by_degree: Vec<Vec<usize>>,
    /// position of each basis element inside its degree
    local: Vec<usize>,
}

/// First violated cdga axiom found by [`FiniteCdga::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Degree 0 must be spanned by a single unit element.
    Unit { detail: String },
    /// A differential or product lands in the wrong degree.
    Degree { detail: String },
    /// `d(d(e_i)) ≠ 0`.
    DSquared { element: String },
    /// `e_i e_j ≠ (−1)^{|i||j|} e_j e_i`.
    Commutativity { left: String, right: String },
    /// `d(e_i e_j) ≠ d(e_i) e_j + (−1)^{|i|} e_i d(e_j)`.
    Leibniz { left: String, right: String },
    /// `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
    Associativity { a: String, b: String, c: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unit { detail } => write!(f, "unit: {}", detail),
            Violation::Degree { detail } => write!(f, "degree: {}", detail),
            Violation::DSquared { element } => write!(f, "d∘d ≠ 0 on {}", element),
            Violation::Commutativity { left, right } => {
                write!(f, "graded commutativity fails for ({}, {})", left, right)
            }
            Violation::Leibniz { left, right } => {
                write!(f, "Leibniz rule fails for ({}, {})", left, right)
            }
            Violation::Associativity { a, b, c } => {
                write!(f, "associativity fails for ({}, {}, {})", a, b, c)
            }
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidCdga(v.to_string())
    }
}

fn sign(odd: bool) -> Rat {
    if odd {
        -Rat::one()
    } else {
        Rat::one()
    }
}

fn add_into(acc: &mut [Rat], terms: &[(usize, Rat)], scale: &Rat) {
    for (k, c) in terms {
        acc[*k] += scale * c;
    }
}

impl FiniteCdga {
    /// Assembles an algebra from its basis `(name, degree)`, the nonzero
    /// differentials `d(e_i)` and the nonzero products `e_i e_j`.
    ///
    /// Only structural sanity (index ranges, unique names) is checked here;
    /// the algebra axioms are checked by [`FiniteCdga::validate`].
    pub fn new(
        basis: Vec<(String, usize)>,
        diff: impl IntoIterator<Item = (usize, Sparse)>,
        mult: impl IntoIterator<Item = ((usize, usize), Sparse)>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut names = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        for (name, deg) in basis {
            if names.contains(&name) {
                return Err(Error::InvalidCdga(alloc::format!("duplicate basis name {}", name)));
            }
            names.push(name);
            degrees.push(deg);
        }
        let check = |i: usize| -> Result<()> {
            if i >= n {
                Err(Error::InvalidCdga(alloc::format!("basis index {} out of range", i)))
            } else {
                Ok(())
            }
        };
        let mut d = alloc::vec![Vec::new(); n];
        for (i, terms) in diff {
            check(i)?;
            for (k, _) in &terms {
                check(*k)?;
            }
            d[i] = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let mut table = BTreeMap::new();
        for ((i, j), terms) in mult {
            check(i)?;
            check(j)?;
            for (k, _) in &terms {
                check(*k)?;
            }
            let terms: Sparse = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                table.insert((i, j), terms);
            }
        }
        let top = degrees.iter().copied().max().unwrap_or(0);
        let mut by_degree = alloc::vec![Vec::new(); top + 1];
        let mut local = alloc::vec![0; n];
        for (i, &deg) in degrees.iter().enumerate() {
            local[i] = by_degree[deg].len();
            by_degree[deg].push(i);
        }
        Ok(Self { names, degrees, diff: d, mult: table, by_degree, local })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn top_degree(&self) -> usize {
        self.by_degree.len().saturating_sub(1)
    }

    pub fn dim_in_degree(&self, k: usize) -> usize {
        self.by_degree.get(k).map_or(0, Vec::len)
    }

    pub fn basis_in_degree(&self, k: usize) -> &[usize] {
        self.by_degree.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn differential_of(&self, i: usize) -> &[(usize, Rat)] {
        &self.diff[i]
    }

    pub fn stored_products(&self) -> impl Iterator<Item = (&(usize, usize), &Sparse)> {
        self.mult.iter()
    }

    fn unit(&self) -> Option<usize> {
        match self.basis_in_degree(0) {
            [u] => Some(*u),
            _ => None,
        }
    }

    /// Product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> Sparse {
        match self.unit() {
            Some(u) if i == u => return alloc::vec![(j, Rat::one())],
            Some(u) if j == u => return alloc::vec![(i, Rat::one())],
            _ => {}
        }
        self.mult.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn zero_element(&self) -> Vec<Rat> {
        alloc::vec![Rat::zero(); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Rat> {
        let mut v = self.zero_element();
        v[i] = Rat::one();
        v
    }

    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = self.zero_element();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                add_into(&mut out, &self.basis_product(i, j), &(x * y));
            }
        }
        out
    }

    pub fn d(&self, a: &[Rat]) -> Vec<Rat> {
        let mut out = self.zero_element();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            add_into(&mut out, &self.diff[i], x);
        }
        out
    }

    fn sparse_to_dense(&self, s: &[(usize, Rat)]) -> Vec<Rat> {
        let mut v = self.zero_element();
        add_into(&mut v, s, &Rat::one());
        v
    }

    /// Matrix of `d: A^k → A^{k+1}` in the degree-wise bases.
    pub fn differential_matrix(&self, k: usize) -> RatMatrix {
        let src = self.basis_in_degree(k);
        let mut m = RatMatrix::zeros(self.dim_in_degree(k + 1), src.len());
        for (col, &i) in src.iter().enumerate() {
            for (t, c) in &self.diff[i] {
                if self.degrees[*t] == k + 1 {
                    *m.get_mut(self.local[*t], col) += c;
                }
            }
        }
        m
    }

    /// Degree-`k` coordinates of an element.
    pub fn restrict(&self, a: &[Rat], k: usize) -> Vec<Rat> {
        self.basis_in_degree(k).iter().map(|&i| a[i].clone()).collect()
    }

    /// Embeds degree-`k` coordinates into the full algebra.
    pub fn extend(&self, local: &[Rat], k: usize) -> Vec<Rat> {
        let mut v = self.zero_element();
        for (&i, c) in self.basis_in_degree(k).iter().zip(local) {
            v[i] = c.clone();
        }
        v
    }

    /// Checks every cdga axiom exactly and reports the first violation.
    pub fn validate(&self) -> core::result::Result<(), Violation> {
        let n = self.dim();
        let Some(unit) = self.unit() else {
            return Err(Violation::Unit {
                detail: alloc::format!(
                    "degree 0 has dimension {}, expected 1",
                    self.dim_in_degree(0)
                ),
            });
        };
        for (&(i, j), terms) in &self.mult {
            if i == unit || j == unit {
                let other = if i == unit { j } else { i };
                if terms.as_slice() != [(other, Rat::one())] {
                    return Err(Violation::Unit {
                        detail: alloc::format!(
                            "stored product {}·{} disagrees with the unit",
                            self.names[i], self.names[j]
                        ),
                    });
                }
            }
            if let Some((k, _)) = terms.iter().find(|(k, _)| self.degrees[*k] != self.degrees[i] + self.degrees[j]) {
                return Err(Violation::Degree {
                    detail: alloc::format!(
                        "{}·{} has a term {} of degree {}",
                        self.names[i], self.names[j], self.names[*k], self.degrees[*k]
                    ),
                });
            }
        }
        for i in 0..n {
            if let Some((k, _)) = self.diff[i].iter().find(|(k, _)| self.degrees[*k] != self.degrees[i] + 1) {
                return Err(Violation::Degree {
                    detail: alloc::format!(
                        "d({}) has a term {} of degree {}, expected {}",
                        self.names[i], self.names[*k], self.degrees[*k], self.degrees[i] + 1
                    ),
                });
            }
        }
        for i in 0..n {
            let dd = self.d(&self.sparse_to_dense(&self.diff[i]));
            if dd.iter().any(|x| !x.is_zero()) {
                return Err(Violation::DSquared { element: self.names[i].clone() });
            }
        }
        let products: Vec<Vec<Vec<Rat>>> = (0..n)
            .map(|i| (0..n).map(|j| self.sparse_to_dense(&self.basis_product(i, j))).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                let s = sign(self.degrees[i] * self.degrees[j] % 2 == 1);
                let swapped: Vec<Rat> = products[j][i].iter().map(|x| x * &s).collect();
                if products[i][j] != swapped {
                    return Err(Violation::Commutativity {
                        left: self.names[i].clone(),
                        right: self.names[j].clone(),
                    });
                }
            }
        }
        for i in 0..n {
            let di = self.sparse_to_dense(&self.diff[i]);
            let ei = self.basis_element(i);
            for j in 0..n {
                let dj = self.sparse_to_dense(&self.diff[j]);
                let ej = self.basis_element(j);
                let lhs = self.d(&products[i][j]);
                let mut rhs = self.mul(&di, &ej);
                let s = sign(self.degrees[i] % 2 == 1);
                for (r, x) in rhs.iter_mut().zip(self.mul(&ei, &dj)) {
                    *r += &s * x;
                }
                if lhs != rhs {
                    return Err(Violation::Leibniz {
                        left: self.names[i].clone(),
                        right: self.names[j].clone(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &products[i][j];
                for k in 0..n {
                    let ek = self.basis_element(k);
                    let left = self.mul(ij, &ek);
                    let ei = self.basis_element(i);
                    let right = self.mul(&ei, &products[j][k]);
                    if left != right {
                        return Err(Violation::Associativity {
                            a: self.names[i].clone(),
                            b: self.names[j].clone(),
                            c: self.names[k].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Built-in models
// ---------------------------------------------------------------------------

/// Exterior algebra on degree-1 generators whose differential on generators
/// is given as a list of monomials (sets of generator indices) with
/// coefficients, extended by the Leibniz rule.
pub fn exterior_algebra(
    generators: &[&str],
    generator_differential: &[Vec<(Vec<usize>, Rat)>],
) -> Result<FiniteCdga> {
    let g = generators.len();
    if g > MAX_EXTERIOR_GENERATORS {
        return Err(Error::BudgetExceeded {
            what: "exterior algebra generators",
            needed: g as u128,
            limit: MAX_EXTERIOR_GENERATORS as u128,
        });
    }
    let mut masks: Vec<u32> = (0..(1u32 << g)).collect();
    // lexicographic order on sorted index lists within each degree
    masks.sort_by(|a, b| {
        a.count_ones().cmp(&b.count_ones()).then_with(|| {
            let la: Vec<u32> = (0..g as u32).filter(|i| a >> i & 1 == 1).collect();
            let lb: Vec<u32> = (0..g as u32).filter(|i| b >> i & 1 == 1).collect();
            la.cmp(&lb)
        })
    });
    let index: BTreeMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let name = |m: u32| -> String {
        if m == 0 {
            "1".into()
        } else {
            (0..g).filter(|i| m >> i & 1 == 1).map(|i| generators[i]).collect()
        }
    };
    let basis: Vec<(String, usize)> = masks.iter().map(|&m| (name(m), m.count_ones() as usize)).collect();

    // e_S · e_T = sign · e_{S∪T} when disjoint
    let wedge = |s: u32, t: u32| -> Option<(u32, bool)> {
        if s & t != 0 {
            return None;
        }
        let mut inversions = 0;
        for i in 0..g {
            if t >> i & 1 == 1 {
                inversions += (s >> (i + 1)).count_ones();
            }
        }
        Some((s | t, inversions % 2 == 1))
    };
    let mut mult = Vec::new();
    for &s in &masks {
        for &t in &masks {
            if s == 0 || t == 0 {
                continue;
            }
            if let Some((u, odd)) = wedge(s, t) {
                mult.push(((index[&s], index[&t]), alloc::vec![(index[&u], sign(odd))]));
            }
        }
    }

    let mut gen_diff: Vec<BTreeMap<u32, Rat>> = alloc::vec![BTreeMap::new(); g];
    for (i, terms) in generator_differential.iter().enumerate().take(g) {
        for (mono, c) in terms {
            let mut m = 0u32;
            let mut odd = false;
            for &k in mono {
                if k >= g {
                    return Err(Error::InvalidParameter(alloc::format!("generator index {} out of range", k)));
                }
                match wedge(m, 1 << k) {
                    Some((u, o)) => {
                        m = u;
                        odd ^= o;
                    }
                    None => {
                        m = u32::MAX;
                        break;
                    }
                }
            }
            if m != u32::MAX {
                *gen_diff[i].entry(m).or_insert_with(Rat::zero) += sign(odd) * c;
            }
        }
    }
    // d(g · rest) = dg · rest − g · d(rest), g the lowest generator
    let mut diffs: BTreeMap<u32, BTreeMap<u32, Rat>> = BTreeMap::new();
    for &m in &masks {
        let mut out: BTreeMap<u32, Rat> = BTreeMap::new();
        if m != 0 {
            let low = m.trailing_zeros() as usize;
            let rest = m & !(1 << low);
            for (dm, c) in &gen_diff[low] {
                if let Some((u, odd)) = wedge(*dm, rest) {
                    *out.entry(u).or_insert_with(Rat::zero) += sign(odd) * c;
                }
            }
            for (dm, c) in diffs.get(&rest).cloned().unwrap_or_default() {
                if let Some((u, odd)) = wedge(1 << low, dm) {
                    *out.entry(u).or_insert_with(Rat::zero) -= sign(odd) * c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        diffs.insert(m, out);
    }
    let diff = masks.iter().map(|m| {
        (
            index[m],
            diffs[m].iter().map(|(u, c)| (index[u], c.clone())).collect::<Sparse>(),
        )
    });
    FiniteCdga::new(basis, diff, mult)
}

/// Invariant-form model `Λ(a, b, z)`, `da = db = 0`, `dz = ab` of the
/// Heisenberg nilmanifold.
pub fn heisenberg() -> FiniteCdga {
    exterior_algebra(
        &["a", "b", "z"],
        &[Vec::new(), Vec::new(), alloc::vec![(alloc::vec![0, 1], Rat::one())]],
    )
    .expect("heisenberg model is well formed")
}

/// Exterior algebra on `n` degree-1 generators with zero differential.
pub fn torus(n: usize) -> Result<FiniteCdga> {
    let names: Vec<String> = (1..=n).map(|i| alloc::format!("e{}", i)).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    exterior_algebra(&refs, &[])
}

/// Cohomology ring of the closed orientable surface of genus `g`, with
/// zero differential: basis `1, x_1, y_1, …, x_g, y_g, w` and `x_i y_i = w`.
pub fn surface(g: usize) -> Result<FiniteCdga> {
    let mut basis = alloc::vec![("1".to_string(), 0)];
    for i in 1..=g {
        basis.push((alloc::format!("x{}", i), 1));
        basis.push((alloc::format!("y{}", i), 1));
    }
    let top = 2 * g + 1;
    if g > 0 {
        basis.push(("w".to_string(), 2));
    }
    let mut mult = Vec::new();
    for i in 0..g {
        let (x, y) = (1 + 2 * i, 2 + 2 * i);
        mult.push(((x, y), alloc::vec![(top, Rat::one())]));
        mult.push(((y, x), alloc::vec![(top, -Rat::one())]));
    }
    FiniteCdga::new(basis, core::iter::empty(), mult)
}

/// Cohomology of a wedge of `n` circles: all products of positive-degree
/// classes vanish and the differential is zero.
pub fn wedge_of_circles(n: usize) -> Result<FiniteCdga> {
    let mut basis = alloc::vec![("1".to_string(), 0)];
    basis.extend((1..=n).map(|i| (alloc::format!("a{}", i), 1)));
    FiniteCdga::new(basis, core::iter::empty(), core::iter::empty())
}

// ---------------------------------------------------------------------------
// Cohomology
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    /// Coordinates in the chosen cohomology basis of this degree.
    pub coords: Vec<Rat>,
    /// A cocycle representing the class, as a full-algebra vector.
    pub representative: Vec<Rat>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug)]
struct DegreeData {
    /// Representative cocycles in degree-local coordinates.
    reps: Vec<Vec<Rat>>,
    /// Columns: representatives then a basis of coboundaries.
    solver: RatMatrix,
}

/// Cohomology of a finite cdga with explicit representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degrees: Vec<DegreeData>,
}

impl Cohomology {
    /// `dim H^k = dim ker d_k − rank d_{k−1}`. Representatives are the first
    /// kernel vectors, in basis order, that are independent modulo the image.
    pub fn compute(a: &FiniteCdga) -> Self {
        let mut degrees = Vec::new();
        for k in 0..=a.top_degree() {
            let dim = a.dim_in_degree(k);
            let cycles = rank_kernel(&a.differential_matrix(k)).kernel;
            let boundaries: Vec<Vec<Rat>> = if k == 0 {
                Vec::new()
            } else {
                let prev = a.differential_matrix(k - 1);
                let mut span = EchelonBasis::new(dim);
                (0..prev.cols())
                    .map(|j| prev.column(j))
                    .filter(|c| span.insert(c))
                    .collect()
            };
            let mut span = EchelonBasis::new(dim);
            for b in &boundaries {
                span.insert(b);
            }
            let reps: Vec<Vec<Rat>> = cycles.into_iter().filter(|z| span.insert(z)).collect();
            let columns: Vec<&Vec<Rat>> = reps.iter().chain(&boundaries).collect();
            let solver = RatMatrix::from_fn(dim, columns.len(), |i, j| columns[j][i].clone());
            degrees.push(DegreeData { reps, solver });
        }
        Self { degrees }
    }

    pub fn dim(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.reps.len())
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.reps.len()).collect()
    }

    /// Representative cocycles of the basis of `H^k`, as algebra vectors.
    pub fn representatives(&self, a: &FiniteCdga, k: usize) -> Vec<Vec<Rat>> {
        self.degrees
            .get(k)
            .map(|d| d.reps.iter().map(|r| a.extend(r, k)).collect())
            .unwrap_or_default()
    }

    /// The class with the given coordinates in degree `k`.
    pub fn class(&self, a: &FiniteCdga, k: usize, coords: Vec<Rat>) -> Result<CohomologyClass> {
        let dim = self.dim(k);
        if coords.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: coords.len() });
        }
        let mut local = alloc::vec![Rat::zero(); a.dim_in_degree(k)];
        if let Some(d) = self.degrees.get(k) {
            for (c, r) in coords.iter().zip(&d.reps) {
                for (l, x) in local.iter_mut().zip(r) {
                    *l += c * x;
                }
            }
        }
        Ok(CohomologyClass { degree: k, coords, representative: a.extend(&local, k) })
    }

    /// The `i`-th basis class of `H^k`.
    pub fn basis_class(&self, a: &FiniteCdga, k: usize, i: usize) -> Result<CohomologyClass> {
        let dim = self.dim(k);
        if i >= dim {
            return Err(Error::InvalidParameter(alloc::format!(
                "class index {} out of range for H^{} of dimension {}",
                i, k, dim
            )));
        }
        let mut coords = alloc::vec![Rat::zero(); dim];
        coords[i] = Rat::one();
        self.class(a, k, coords)
    }

    /// Class of a homogeneous cocycle of degree `k`.
    pub fn class_of(&self, a: &FiniteCdga, cocycle: &[Rat], k: usize) -> Result<CohomologyClass> {
        if a.d(cocycle).iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition("element is not a cocycle".into()));
        }
        if cocycle.iter().enumerate().any(|(i, x)| !x.is_zero() && a.degree(i) != k) {
            return Err(Error::Precondition(alloc::format!("element is not homogeneous of degree {}", k)));
        }
        let Some(data) = self.degrees.get(k) else {
            return Err(Error::DegreeOverflow { degree: k, top: a.top_degree() });
        };
        let x = solve(&data.solver, &a.restrict(cocycle, k))
            .ok_or_else(|| Error::Precondition("cocycle outside the computed span".into()))?;
        let coords = x[..data.reps.len()].to_vec();
        Ok(CohomologyClass { degree: k, coords, representative: cocycle.to_vec() })
    }

    /// Cup product of two classes.
    pub fn cup(&self, a: &FiniteCdga, x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
        let k = x.degree + y.degree;
        if k > a.top_degree() {
            return Err(Error::DegreeOverflow { degree: k, top: a.top_degree() });
        }
        let prod = a.mul(&x.representative, &y.representative);
        self.class_of(a, &prod, k)
    }

    /// The degree-one cup product tensor in the computed bases.
    pub fn cup_data(&self, a: &FiniteCdga) -> Result<CupData> {
        let b1 = self.dim(1);
        let b2 = self.dim(2);
        let classes: Vec<CohomologyClass> =
            (0..b1).map(|i| self.basis_class(a, 1, i)).collect::<Result<_>>()?;
        let mut mu = Vec::with_capacity(pair_count(b1));
        for (i, j) in pairs(b1) {
            if a.top_degree() < 2 {
                mu.push(Vec::new());
                continue;
            }
            mu.push(self.cup(a, &classes[i], &classes[j])?.coords);
        }
        CupData::new(b1, b2, mu)
    }
}

/// Cohomology of `a`; see [`Cohomology::compute`].
pub fn cohomology(a: &FiniteCdga) -> Cohomology {
    Cohomology::compute(a)
}

/// Cup product data `μ: Λ²H¹ → H²` of `a`.
pub fn extract_cup_data(a: &FiniteCdga) -> Result<CupData> {
    Cohomology::compute(a).cup_data(a)
}

// ---------------------------------------------------------------------------
// Massey triple products
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasseyVerdict {
    /// `α1 α2 = α2 α3 = 0` holds.
    pub defined: bool,
    /// Class of `y a3 + a1 z`, present when defined.
    pub representative: Option<CohomologyClass>,
    /// The representative lies in `α1 ∪ H¹ + H¹ ∪ α3`.
    pub vanishes: bool,
    /// Dimension of the indeterminacy subspace of `H²`.
    pub indeterminacy_dim: usize,
}

impl MasseyVerdict {
    fn undefined() -> Self {
        Self { defined: false, representative: None, vanishes: false, indeterminacy_dim: 0 }
    }

    pub fn is_nonvanishing(&self) -> bool {
        self.defined && !self.vanishes
    }
}

/// Massey triple product `⟨α1, α2, α3⟩` of degree-1 classes.
///
/// Picks `y, z` with `dy = a1 a2`, `dz = a2 a3` and returns the class of
/// `y a3 + a1 z` together with whether it vanishes modulo the indeterminacy.
pub fn massey_triple(
    a: &FiniteCdga,
    h: &Cohomology,
    classes: [&CohomologyClass; 3],
) -> Result<MasseyVerdict> {
    massey_triple_with_offsets(a, h, classes, None, None)
}

/// As [`massey_triple`], but adds the given degree-1 cocycles to the
/// particular solutions `y` and `z`.
pub fn massey_triple_with_offsets(
    a: &FiniteCdga,
    h: &Cohomology,
    [x1, x2, x3]: [&CohomologyClass; 3],
    y_offset: Option<&[Rat]>,
    z_offset: Option<&[Rat]>,
) -> Result<MasseyVerdict> {
    if [x1, x2, x3].iter().any(|c| c.degree != 1) {
        return Err(Error::InvalidParameter("Massey triple products take degree-1 classes".into()));
    }
    if a.top_degree() < 2 {
        // no degree-2 part: every product and every Massey product is zero
        return Ok(MasseyVerdict { defined: true, representative: None, vanishes: true, indeterminacy_dim: 0 });
    }
    if !h.cup(a, x1, x2)?.is_zero() || !h.cup(a, x2, x3)?.is_zero() {
        return Ok(MasseyVerdict::undefined());
    }
    let (a1, a2, a3) = (&x1.representative, &x2.representative, &x3.representative);
    let d1 = a.differential_matrix(1);
    let primitive = |target: &[Rat], offset: Option<&[Rat]>| -> Result<Vec<Rat>> {
        let local = solve(&d1, &a.restrict(target, 2))
            .ok_or_else(|| Error::Precondition("product of classes is not exact despite vanishing in cohomology".into()))?;
        let mut y = a.extend(&local, 1);
        if let Some(off) = offset {
            if off.len() != a.dim() {
                return Err(Error::DimensionMismatch { expected: a.dim(), found: off.len() });
            }
            h.class_of(a, off, 1)?;
            for (v, o) in y.iter_mut().zip(off) {
                *v += o;
            }
        }
        Ok(y)
    };
    let y = primitive(&a.mul(a1, a2), y_offset)?;
    let z = primitive(&a.mul(a2, a3), z_offset)?;
    let mut w = a.mul(&y, a3);
    for (s, t) in w.iter_mut().zip(a.mul(a1, &z)) {
        *s += t;
    }
    let class = h.class_of(a, &w, 2)?;

    let mut indeterminacy = Vec::new();
    for j in 0..h.dim(1) {
        let b = h.basis_class(a, 1, j)?;
        indeterminacy.push(h.cup(a, x1, &b)?.coords);
        indeterminacy.push(h.cup(a, &b, x3)?.coords);
    }
    let dim2 = h.dim(2);
    let base = rank_of_vectors(&indeterminacy, dim2);
    indeterminacy.push(class.coords.clone());
    let vanishes = rank_of_vectors(&indeterminacy, dim2) == base;
    Ok(MasseyVerdict { defined: true, representative: Some(class), vanishes, indeterminacy_dim: base })
}
