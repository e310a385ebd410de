//! Resonance varieties of cup-product data, isotropic subspaces, the position
//! obstruction, the resonance bound on the BNS invariant and the
//! single-essential-variable test for Alexander polynomials.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cup::{pairs, CupData};
use crate::error::{Error, Result};
use crate::linalg::{rank, rank_kernel, rank_of_vectors, EchelonBasis, IntPolynomial, RatMatrix};
use crate::{Int, Rat};

/// Largest number of elementary minor-recursion steps in
/// [`subspace_in_resonance`].
pub const MINOR_BUDGET: u128 = 2_000_000;

/// Linear subspace of `Q^n` with an independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
}

impl LinearSubspace {
    /// Rejects dependent or wrongly sized vectors.
    pub fn new(ambient: usize, basis: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
        }
        if rank_of_vectors(&basis, ambient) != basis.len() {
            return Err(Error::InvalidParameter("subspace basis vectors are linearly dependent".into()));
        }
        Ok(Self { ambient, basis })
    }

    /// Span of arbitrary vectors; a basis is extracted greedily.
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        let mut ech = EchelonBasis::new(ambient);
        let mut basis = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
            if ech.insert(v) {
                basis.push(v.clone());
            }
        }
        Ok(Self { ambient, basis })
    }

    pub fn whole(n: usize) -> Self {
        Self { ambient: n, basis: (0..n).map(|i| unit(n, i)).collect() }
    }

    /// Span of the listed standard basis vectors.
    pub fn coordinate(n: usize, indices: &[usize]) -> Result<Self> {
        let vs: Vec<Vec<Rat>> = indices.iter().filter(|&&i| i < n).map(|&i| unit(n, i)).collect();
        if vs.len() != indices.len() {
            return Err(Error::InvalidParameter("coordinate index out of range".into()));
        }
        Self::new(n, vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        rank_of_vectors(&all, self.ambient) == self.dim()
    }

    /// `Σ t_j v_j`.
    pub fn point(&self, t: &[Rat]) -> Vec<Rat> {
        let mut x = alloc::vec![Rat::zero(); self.ambient];
        for (c, v) in t.iter().zip(&self.basis) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += c * vi;
            }
        }
        x
    }

    pub fn with_vector(&self, v: &[Rat]) -> Result<Self> {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        Self::span(self.ambient, &all)
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = alloc::vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Polynomial in several commuting variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(alloc::vec![0; nvars], c);
        }
        p
    }

    /// `Σ c_j t_j`.
    pub fn linear(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (j, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mut e = alloc::vec![0; n];
            e[j] = 1;
            p.terms.insert(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Self, s: &Rat) {
        for (e, c) in &other.terms {
            let slot = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *slot += s * c;
            if slot.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let g: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                let slot = out.terms.entry(g).or_insert_with(Rat::zero);
                *slot += c * d;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn eval(&self, t: &[Rat]) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (e, c)| {
            let mut m = c.clone();
            for (x, &k) in t.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            acc + m
        })
    }
}

/// `dim ker(λ_x) − 1` for `x ≠ 0`, and `b1` at the origin.
pub fn resonance_dimension(c: &CupData, x: &[Rat]) -> Result<usize> {
    let l = c.lambda(x)?;
    if x.iter().all(Zero::is_zero) {
        return Ok(c.b1());
    }
    Ok(c.b1() - rank(&l) - 1)
}

/// Whether `x ∈ R_d`.
pub fn membership(c: &CupData, x: &[Rat], d: usize) -> Result<bool> {
    Ok(resonance_dimension(c, x)? >= d)
}

/// `λ_x` for `x = Σ t_j v_j`, with linear entries in the `t_j`.
fn symbolic_lambda(c: &CupData, l: &LinearSubspace) -> Vec<Vec<MultiPoly>> {
    let k = l.dim();
    let (b1, b2) = (c.b1(), c.b2());
    let mut m = alloc::vec![alloc::vec![MultiPoly::zero(k); b1]; b2];
    let lambdas: Vec<RatMatrix> = l.basis().iter().map(|v| c.lambda(v).expect("length checked")).collect();
    for (r, row) in m.iter_mut().enumerate() {
        for (col, entry) in row.iter_mut().enumerate() {
            let coeffs: Vec<Rat> = lambdas.iter().map(|lm| lm.get(r, col).clone()).collect();
            *entry = MultiPoly::linear(&coeffs);
        }
    }
    m
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc.saturating_mul(n as u128 - i) / (i + 1))
}

/// Combinations of `k` elements of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// All `k × k` minors on the rows `rows`, by Laplace expansion along rows with
/// memoization over column subsets. Returns `false` at the first nonzero one.
fn all_minors_vanish(m: &[Vec<MultiPoly>], rows: &[usize], ncols: usize, nvars: usize) -> bool {
    let k = rows.len();
    // level j: minors of rows[..j] on every j-subset of columns (bitmask)
    let mut level: BTreeMap<u64, MultiPoly> = BTreeMap::new();
    level.insert(0, MultiPoly::constant(nvars, Rat::one()));
    for (j, &r) in rows.iter().enumerate() {
        let mut next: BTreeMap<u64, MultiPoly> = BTreeMap::new();
        for (mask, minor) in &level {
            if minor.is_zero() {
                continue;
            }
            for col in (0..ncols).filter(|c| mask >> c & 1 == 0) {
                let entry = &m[r][col];
                if entry.is_zero() {
                    continue;
                }
                // sign of placing column `col` after the columns in `mask`
                let above = (mask >> col).count_ones();
                let s = if above % 2 == 0 { Rat::one() } else { -Rat::one() };
                let term = minor.mul(entry);
                next.entry(mask | 1 << col).or_insert_with(|| MultiPoly::zero(nvars)).add_scaled(&term, &s);
            }
        }
        next.retain(|_, p| !p.is_zero());
        if next.is_empty() {
            return true;
        }
        level = next;
        if j + 1 == k {
            return false;
        }
    }
    k == 0 && level.values().all(MultiPoly::is_zero)
}

/// Whether `L ∖ {0} ⊆ R_d`, decided by symbolic vanishing of the
/// `(b1 − d)`-minors of `λ_x` restricted to `L`.
pub fn subspace_in_resonance(c: &CupData, l: &LinearSubspace, d: usize) -> Result<bool> {
    let b1 = c.b1();
    if l.ambient() != b1 {
        return Err(Error::DimensionMismatch { expected: b1, found: l.ambient() });
    }
    if l.dim() == 0 {
        return Err(Error::InvalidParameter("subspace must have positive dimension".into()));
    }
    if d >= b1 {
        return Ok(false);
    }
    let k = b1 - d;
    if k > c.b2().min(b1) {
        return Ok(true);
    }
    let steps = binomial(c.b2(), k).saturating_mul(1u128 << b1.min(100));
    if b1 > 60 || steps > MINOR_BUDGET {
        return Err(Error::BudgetExceeded { what: "symbolic minors", needed: steps, limit: MINOR_BUDGET });
    }
    let m = symbolic_lambda(c, l);
    for rows in combinations(c.b2(), k) {
        if !all_minors_vanish(&m, &rows, b1, l.dim()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Standard basis directions `e_i ∉ L` with `L + span(e_i) ⊆ R_d`. An empty
/// answer is evidence, not proof, that `L` is a maximal linear piece.
pub fn maximality_check(c: &CupData, l: &LinearSubspace, d: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..l.ambient() {
        let e = unit(l.ambient(), i);
        if l.contains(&e) {
            continue;
        }
        if subspace_in_resonance(c, &l.with_vector(&e)?, d)? {
            out.push(i);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Isotropy {
    ZeroIsotropic,
    OneIsotropic,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicityVerdict {
    pub kind: Isotropy,
    /// Dimension of `μ(Λ²L)`.
    pub image_dim: usize,
    /// A nonzero `v ∈ L` with `μ(v ∧ L) = 0` when the image is
    /// one-dimensional but the pairing is degenerate.
    pub witness: Option<Vec<Rat>>,
}

pub fn isotropicity(c: &CupData, l: &LinearSubspace) -> Result<IsotropicityVerdict> {
    if l.ambient() != c.b1() {
        return Err(Error::DimensionMismatch { expected: c.b1(), found: l.ambient() });
    }
    let k = l.dim();
    let v = l.basis();
    let images: Vec<((usize, usize), Vec<Rat>)> = pairs(k).map(|(a, b)| ((a, b), c.cup(&v[a], &v[b]))).collect();
    let vecs: Vec<Vec<Rat>> = images.iter().map(|(_, w)| w.clone()).collect();
    let image_dim = rank_of_vectors(&vecs, c.b2());
    match image_dim {
        0 => Ok(IsotropicityVerdict { kind: Isotropy::ZeroIsotropic, image_dim, witness: None }),
        1 => {
            let w = vecs.iter().find(|w| w.iter().any(|x| !x.is_zero())).expect("image is nonzero");
            let p = w.iter().position(|x| !x.is_zero()).expect("nonzero vector");
            let mut gram = RatMatrix::zeros(k, k);
            for ((a, b), img) in &images {
                let s = &img[p] / &w[p];
                gram.set(*b, *a, -s.clone());
                gram.set(*a, *b, s);
            }
            let rk = rank_kernel(&gram);
            if rk.rank == k {
                Ok(IsotropicityVerdict { kind: Isotropy::OneIsotropic, image_dim, witness: None })
            } else {
                let witness = l.point(&rk.kernel[0]);
                Ok(IsotropicityVerdict { kind: Isotropy::Neither, image_dim, witness: Some(witness) })
            }
        }
        _ => Ok(IsotropicityVerdict { kind: Isotropy::Neither, image_dim, witness: None }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionFailure {
    /// 0-isotropic but of dimension below 2.
    ZeroIsotropicTooSmall { dim: usize },
    /// 1-isotropic but of dimension below 4.
    OneIsotropicTooSmall { dim: usize },
    /// Neither 0- nor 1-isotropic.
    NotIsotropic { image_dim: usize, witness: Option<Vec<Rat>> },
}

impl fmt::Display for PositionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroIsotropicTooSmall { dim } => write!(f, "0-isotropic of dimension {} < 2", dim),
            Self::OneIsotropicTooSmall { dim } => write!(f, "1-isotropic of dimension {} < 4", dim),
            Self::NotIsotropic { image_dim, .. } => {
                write!(f, "neither 0- nor 1-isotropic (cup image dimension {})", image_dim)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionVerdict {
    Pass,
    Fail { component: usize, reason: PositionFailure },
}

/// Every positive-dimensional component of `R_1` must be `p`-isotropic of
/// dimension at least `2p + 2` for some `p ∈ {0, 1}`.
pub fn position_obstruction(c: &CupData, components: &[LinearSubspace]) -> Result<PositionVerdict> {
    for (i, l) in components.iter().enumerate() {
        if l.dim() == 0 {
            continue;
        }
        if !subspace_in_resonance(c, l, 1)? {
            return Err(Error::Precondition(alloc::format!("component {} is not contained in R_1", i)));
        }
    }
    for (i, l) in components.iter().enumerate().filter(|(_, l)| l.dim() > 0) {
        let v = isotropicity(c, l)?;
        let reason = match v.kind {
            Isotropy::ZeroIsotropic if l.dim() >= 2 => continue,
            Isotropy::OneIsotropic if l.dim() >= 4 => continue,
            Isotropy::ZeroIsotropic => PositionFailure::ZeroIsotropicTooSmall { dim: l.dim() },
            Isotropy::OneIsotropic => PositionFailure::OneIsotropicTooSmall { dim: l.dim() },
            Isotropy::Neither => PositionFailure::NotIsotropic { image_dim: v.image_dim, witness: v.witness },
        };
        return Ok(PositionVerdict::Fail { component: i, reason });
    }
    Ok(PositionVerdict::Pass)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaBoundKind {
    /// `R_1 = H¹`, so the bound leaves nothing: `Σ¹ ⊆ ∅`.
    Empty,
    /// `Σ¹ ⊆ H¹ ∖ ⋃ verified`. With no verified pieces this is `H¹ ∖ {0}`.
    ComplementOfPieces,
}

/// Upper bound on `Σ¹` from the first resonance variety. Valid for
/// 1-formal groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaBound {
    pub kind: SigmaBoundKind,
    /// Linear subspaces proved to lie in `R_1`.
    pub verified: Vec<LinearSubspace>,
    /// Candidates that were rejected.
    pub rejected: Vec<LinearSubspace>,
    /// Sample points off the verified pieces.
    pub samples_tested: usize,
    /// Sample points off the verified pieces that lie in `R_1` anyway; zero
    /// means the verified pieces account for every sampled resonant point.
    pub samples_unexplained: usize,
}

/// Number of moment-curve points used by [`sigma_upper_bound`].
pub const SIGMA_SAMPLES: usize = 32;

pub fn sigma_upper_bound(c: &CupData, candidates: &[LinearSubspace]) -> Result<SigmaBound> {
    let b1 = c.b1();
    let mut verified = Vec::new();
    let mut rejected = Vec::new();
    if b1 > 0 && subspace_in_resonance(c, &LinearSubspace::whole(b1), 1)? {
        return Ok(SigmaBound {
            kind: SigmaBoundKind::Empty,
            verified: alloc::vec![LinearSubspace::whole(b1)],
            rejected,
            samples_tested: 0,
            samples_unexplained: 0,
        });
    }
    for l in candidates {
        if l.dim() > 0 && subspace_in_resonance(c, l, 1)? {
            verified.push(l.clone());
        } else {
            rejected.push(l.clone());
        }
    }
    let mut tested = 0;
    let mut unexplained = 0;
    if b1 > 0 {
        for s in 1..=SIGMA_SAMPLES as i64 {
            // moment curve (1, s, s², …), shifted to avoid coordinate planes
            let x: Vec<Rat> = (0..b1 as u32).map(|i| Rat::from_integer(Int::from(s + 1).pow(i) + Int::from(i))).collect();
            if verified.iter().any(|l: &LinearSubspace| l.contains(&x)) {
                continue;
            }
            tested += 1;
            if membership(c, &x, 1)? {
                unexplained += 1;
            }
        }
    }
    Ok(SigmaBound {
        kind: SigmaBoundKind::ComplementOfPieces,
        verified,
        rejected,
        samples_tested: tested,
        samples_unexplained: unexplained,
    })
}

/// Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Int>,
}

impl LaurentPoly {
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, Int)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<i64>, Int> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            *map.entry(e).or_insert_with(Int::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { nvars, terms: map })
    }

    pub fn from_i64(nvars: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        Self::new(nvars, terms.iter().map(|(e, c)| (e.to_vec(), Int::from(*c))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Int> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { alloc::format!("t{}", i + 1) } else { alloc::format!("t{}^{}", i + 1, x) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlexanderVerdict {
    /// `Δ = t^shift · P(t^e)`.
    SingleVariable { p: IntPolynomial, e: Vec<i64>, shift: Vec<i64> },
    /// Two support differences (from the base point) that are not on one ray.
    MultipleVariables { witness: (Vec<i64>, Vec<i64>) },
}

/// Tests whether `Δ` has a single essential variable, after translating its
/// support so that the lexicographically smallest exponent is the origin.
pub fn alexander_single_variable(delta: &LaurentPoly) -> AlexanderVerdict {
    let n = delta.nvars();
    let Some(base) = delta.terms.keys().next().cloned() else {
        return AlexanderVerdict::SingleVariable { p: IntPolynomial::zero(), e: alloc::vec![0; n], shift: alloc::vec![0; n] };
    };
    let diffs: Vec<(Vec<i64>, &Int)> =
        delta.terms.iter().map(|(x, c)| (x.iter().zip(&base).map(|(a, b)| a - b).collect(), c)).collect();
    let Some(first) = diffs.iter().map(|(d, _)| d).find(|d| d.iter().any(|&x| x != 0)).cloned() else {
        return AlexanderVerdict::SingleVariable {
            p: IntPolynomial::constant(diffs[0].1.clone()),
            e: alloc::vec![0; n],
            shift: base,
        };
    };
    let g = first.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let e: Vec<i64> = first.iter().map(|&x| x / g).collect();
    let lead = e.iter().position(|&x| x != 0).expect("nonzero direction");
    let mut coeffs: BTreeMap<usize, Int> = BTreeMap::new();
    for (d, c) in &diffs {
        let k = d[lead] / e[lead];
        let on_ray = k >= 0 && d[lead] % e[lead] == 0 && d.iter().zip(&e).all(|(a, b)| *a == k * b);
        if !on_ray {
            return AlexanderVerdict::MultipleVariables { witness: (first.clone(), d.clone()) };
        }
        coeffs.insert(k as usize, (*c).clone());
    }
    let top = *coeffs.keys().last().expect("nonempty support");
    let p = IntPolynomial::new((0..=top).map(|k| coeffs.get(&k).cloned().unwrap_or_default()).collect());
    AlexanderVerdict::SingleVariable { p, e, shift: base }
}
