use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::{Int, Rat};

/// Univariate integer polynomial, constant term first, with no trailing
/// zero coefficients (the zero polynomial has no coefficients at all).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<Int>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Int::one())
    }

    pub fn constant(c: Int) -> Self {
        Self::new(alloc::vec![c])
    }

    /// `t - r`
    pub fn linear_root(r: Int) -> Self {
        Self::new(alloc::vec![-r, Int::one()])
    }

    /// `t^n - 1`
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut c = alloc::vec![Int::zero(); n + 1];
        c[0] = -Int::one();
        c[n] += Int::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Int) -> Int {
        self.coeffs
            .iter()
            .rev()
            .fold(Int::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates the polynomial at a square matrix (Horner's scheme).
    pub fn eval_matrix(&self, m: &IntMatrix) -> Result<IntMatrix> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                *acc.get_mut(i, i) += c;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i))
                .collect(),
        )
    }

    /// Quotient and remainder on division by a monic polynomial; exact over
    /// the integers.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = alloc::vec![Int::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = core::mem::take(&mut rem[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn divides(&self, other: &Self) -> bool {
        matches!(other.div_rem_monic(self), Ok((_, r)) if r.is_zero())
    }

    fn to_rational(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    fn from_rational_monic(p: &QPoly) -> Option<Self> {
        if p.0.iter().all(|c| c.is_integer()) {
            Some(Self::new(p.0.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 || !a.is_one() {
                write!(f, "{}", a)?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{}", i)?,
            }
        }
        Ok(())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = alloc::vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &'a IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Rational polynomial used for gcds; constant term first.
#[derive(Clone, Debug, PartialEq)]
struct QPoly(Vec<Rat>);

impl QPoly {
    fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self(c)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn monic(mut self) -> Self {
        if let Some(l) = self.0.last().cloned() {
            for c in self.0.iter_mut() {
                *c /= &l;
            }
        }
        self
    }

    fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (QPoly(Vec::new()), self.clone());
        }
        let lead = d.0[dd].clone();
        let mut q = alloc::vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, x) in d.0.iter().enumerate() {
                r[k + j] -= &c * x;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> QPoly {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }
}

/// Characteristic polynomial `det(t·I − M)` by the Faddeev–LeVerrier
/// recursion. Every division in the recursion is exact over the integers.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut c = alloc::vec![Int::zero(); n + 1];
    c[n] = Int::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &mk;
        for i in 0..n {
            *next.get_mut(i, i) += &c[n - k + 1];
        }
        mk = next;
        let tr = (m * &mk).trace();
        c[n - k] = -(tr / Int::from(k));
    }
    Ok(IntPolynomial::new(c))
}

/// Euler's totient.
pub fn totient(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// All `m` with `φ(m) ≤ degree`, in increasing order. `φ(m) ≥ √(m/2)`
/// bounds the search.
fn cyclotomic_orders(degree: usize) -> impl Iterator<Item = usize> {
    let limit = 2 * degree * degree + 2;
    (1..=limit).filter(move |&m| totient(m as u64) as usize <= degree)
}

/// The `m`-th cyclotomic polynomial Φ_m.
pub fn cyclotomic(m: usize) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut p = IntPolynomial::t_pow_minus_one(m);
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = p.div_rem_monic(&cyclotomic(d)).expect("cyclotomic polynomials are monic");
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

/// Kronecker's criterion: a monic integer polynomial has all its roots on
/// the unit circle (and nonzero) iff it is a product of cyclotomic
/// polynomials. Decided by repeatedly stripping `gcd(f, t^m − 1)` for every
/// `m` with `φ(m) ≤ deg f`.
pub fn is_cyclotomic_product(f: &IntPolynomial) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() == Some(0) {
        return Ok(true);
    }
    if !f.coeff(0).abs().is_one() {
        return Ok(false);
    }
    let deg = f.degree().unwrap_or(0);
    let mut rest = f.to_rational();
    for m in cyclotomic_orders(deg) {
        loop {
            if rest.degree() == Some(0) {
                return Ok(true);
            }
            let t_m = t_power_mod(m, &rest);
            let mut shifted = t_m.0;
            if shifted.is_empty() {
                shifted.push(Rat::zero());
            }
            shifted[0] -= Rat::one();
            let g = QPoly::gcd(&rest, &QPoly::new(shifted));
            if g.degree().unwrap_or(0) == 0 {
                break;
            }
            rest = rest.div_rem(&g).0;
        }
    }
    Ok(rest.degree() == Some(0))
}

/// `t^m mod f` in Q[t].
fn t_power_mod(m: usize, f: &QPoly) -> QPoly {
    let mut acc = QPoly::new(alloc::vec![Rat::one()]);
    for _ in 0..m {
        let mut c = alloc::vec![Rat::zero()];
        c.extend(acc.0);
        acc = QPoly::new(c).rem(f);
    }
    acc
}

/// One factor in a factorisation of a monic integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFactor {
    pub poly: IntPolynomial,
    pub multiplicity: usize,
    pub cyclotomic: bool,
    /// `false` only for residues of degree ≥ 5 that were not split further.
    pub irreducible_certified: bool,
}

/// Factorisation of a monic integer polynomial: cyclotomic factors are
/// stripped first, the residue is split square-free and then into linear,
/// quadratic and low-degree pieces. Residue factors of degree ≥ 5 are
/// reported unsplit with `irreducible_certified = false`.
pub fn factor_monic(f: &IntPolynomial) -> Result<Vec<PolyFactor>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out = Vec::new();
    let mut rest = f.clone();
    let deg = f.degree().unwrap_or(0);
    for m in cyclotomic_orders(deg) {
        if rest.degree() == Some(0) {
            break;
        }
        let phi = cyclotomic(m);
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_rem_monic(&phi)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push(PolyFactor {
                poly: phi,
                multiplicity: mult,
                cyclotomic: true,
                irreducible_certified: true,
            });
        }
    }
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for (part, mult) in square_free_decomposition(&rest) {
        for (poly, certified) in split_square_free(&part) {
            let cyclotomic = is_cyclotomic_product(&poly)?;
            out.push(PolyFactor { poly, multiplicity: mult, cyclotomic, irreducible_certified: certified });
        }
    }
    Ok(out)
}

/// Yun's square-free decomposition of a monic integer polynomial. Monic
/// factors of a monic integer polynomial have integer coefficients.
fn square_free_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let fq = f.to_rational();
    let d = fq.derivative();
    let mut a = QPoly::gcd(&fq, &d);
    let mut b = fq.div_rem(&a).0;
    let mut c = d.div_rem(&a).0;
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let b_deriv = b.derivative();
        let mut cdiff = c.0.clone();
        cdiff.resize(cdiff.len().max(b_deriv.0.len()), Rat::zero());
        for (x, y) in cdiff.iter_mut().zip(b_deriv.0.iter()) {
            *x -= y;
        }
        let dd = QPoly::new(cdiff);
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        a = QPoly::gcd(&b, &dd);
        if a.degree().unwrap_or(0) > 0 {
            let p = IntPolynomial::from_rational_monic(&a.clone().monic())
                .expect("monic factor of a monic integer polynomial is integral");
            out.push((p, i));
        }
        b = b.div_rem(&a).0;
        c = dd.div_rem(&a).0;
        i += 1;
    }
    out
}

/// Integer divisors of `n` (positive), or `None` when `n` is too large to
/// enumerate by trial division.
fn positive_divisors(n: &Int) -> Option<Vec<Int>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut ds = Vec::new();
    let r = n.sqrt();
    for d in 1..=r {
        if n % d == 0 {
            ds.push(Int::from(d));
            if d != n / d {
                ds.push(Int::from(n / d));
            }
        }
    }
    Some(ds)
}

fn split_square_free(f: &IntPolynomial) -> Vec<(IntPolynomial, bool)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let c0 = rest.coeff(0);
    let roots_known = if c0.is_zero() {
        out.push((IntPolynomial::linear_root(Int::zero()), true));
        rest = rest.div_rem_monic(&IntPolynomial::linear_root(Int::zero())).expect("monic").0;
        true
    } else {
        match positive_divisors(&c0) {
            Some(ds) => {
                for d in ds {
                    for r in [d.clone(), -d] {
                        if rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
                            let lin = IntPolynomial::linear_root(r);
                            rest = rest.div_rem_monic(&lin).expect("monic").0;
                            out.push((lin, true));
                        }
                    }
                }
                true
            }
            None => false,
        }
    };
    match rest.degree().unwrap_or(0) {
        0 => {}
        1..=3 => out.push((rest, roots_known)),
        4 if roots_known => match split_quartic(&rest) {
            Some((p, q)) => {
                out.push((p, true));
                out.push((q, true));
            }
            None => out.push((rest, true)),
        },
        _ => out.push((rest, false)),
    }
    out
}

/// Tries to write a monic quartic without rational roots as a product of two
/// monic integer quadratics.
fn split_quartic(f: &IntPolynomial) -> Option<(IntPolynomial, IntPolynomial)> {
    let (d, c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3));
    // (t² + p t + q)(t² + r t + s): q s = d, p + r = a, q + s + p r = b, p s + q r = c
    for q0 in positive_divisors(&d)? {
        for q in [q0.clone(), -q0] {
            let s = &d / &q;
            let candidates: Vec<Int> = if s != q {
                let num = &c - &a * &q;
                let den = &s - &q;
                if num.is_multiple_of(&den) {
                    alloc::vec![num / den]
                } else {
                    Vec::new()
                }
            } else {
                if c != &a * &q {
                    continue;
                }
                // p + r = a, p r = b − 2q
                let disc = &a * &a - Int::from(4) * (&b - Int::from(2) * &q);
                if disc.is_negative() {
                    continue;
                }
                let root = disc.sqrt();
                if &root * &root != disc || (&a + &root).is_odd() {
                    continue;
                }
                alloc::vec![(&a + &root) / Int::from(2)]
            };
            for p in candidates {
                let r = &a - &p;
                if &q + &s + &p * &r == b && &p * &s + &q * &r == c {
                    let left = IntPolynomial::new(alloc::vec![q.clone(), p, Int::one()]);
                    let right = IntPolynomial::new(alloc::vec![s.clone(), r, Int::one()]);
                    return Some((left, right));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn char_poly_examples() {
        let a2 = IntMatrix::from_i64(&[[4, -1], [1, 0]]);
        assert_eq!(char_poly(&a2).unwrap(), p(&[1, -4, 1]));
        assert_eq!(char_poly(&IntMatrix::identity(2)).unwrap(), p(&[1, -2, 1]));
        let minus = IntMatrix::from_i64(&[[-1, 0], [0, -1]]);
        assert_eq!(char_poly(&minus).unwrap(), p(&[1, 2, 1]));
        assert!(char_poly(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn cyclotomic_examples() {
        assert!(is_cyclotomic_product(&p(&[1, -2, 1])).unwrap());
        assert!(!is_cyclotomic_product(&p(&[1, -4, 1])).unwrap());
        assert!(is_cyclotomic_product(&p(&[1, 1, 1])).unwrap());
        assert_eq!(is_cyclotomic_product(&p(&[1, 1, 2])), Err(Error::NotMonic));
        assert!(!is_cyclotomic_product(&p(&[2, 0, 1])).unwrap());
        // Φ_12 = t⁴ − t² + 1
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert!(is_cyclotomic_product(&(&cyclotomic(12) * &cyclotomic(5))).unwrap());
        // Lehmer's polynomial has a root of modulus > 1
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!(!is_cyclotomic_product(&lehmer).unwrap());
    }

    #[test]
    fn display_polynomial() {
        assert_eq!(alloc::format!("{}", p(&[1, -4, 1])), "t^2 - 4t + 1");
        assert_eq!(alloc::format!("{}", p(&[-1, 0, 0, 1])), "t^3 - 1");
        assert_eq!(alloc::format!("{}", p(&[])), "0");
    }

    #[test]
    fn factorisation_reconstructs_input() {
        let f = &(&p(&[1, -4, 1]).pow(2) * &cyclotomic(4)) * &p(&[-3, 1]);
        let factors = factor_monic(&f).unwrap();
        let prod = factors
            .iter()
            .fold(IntPolynomial::one(), |acc, fa| &acc * &fa.poly.pow(fa.multiplicity as u32));
        assert_eq!(prod, f);
        assert!(factors.iter().any(|fa| fa.poly == cyclotomic(4) && fa.cyclotomic));
        assert!(factors
            .iter()
            .any(|fa| fa.poly == p(&[1, -4, 1]) && fa.multiplicity == 2 && !fa.cyclotomic));
        assert!(factors.iter().any(|fa| fa.poly == p(&[-3, 1])));
    }

    #[test]
    fn quartic_split() {
        // (t² − 3t + 1)(t² + t − 1)
        let f = &p(&[1, -3, 1]) * &p(&[-1, 1, 1]);
        let factors = factor_monic(&f).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|fa| fa.irreducible_certified));
    }

    #[test]
    fn division_by_monic() {
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem_monic(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1, 2]).div_rem_monic(&p(&[1, 2])).is_err());
    }
}
