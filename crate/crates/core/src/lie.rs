//! Free Lie algebras in the Lyndon basis and graded ranks of holonomy Lie
//! algebras.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::cup::CupData;
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::Rat;

/// Largest Witt number accepted by [`holonomy_ranks`] and [`FreeLie::new`].
pub const WITT_BUDGET: u128 = 100_000;

/// Word over the alphabet `0..n`.
pub type Word = Vec<u8>;

/// Noncommutative polynomial: words with rational coefficients.
type Tensor = BTreeMap<Word, Rat>;

fn mobius(mut n: u64) -> i8 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Witt number `W(n, d) = (1/d) Σ_{e | d} μ(d/e) n^e`, the dimension of the
/// degree-`d` part of the free Lie algebra of rank `n`. `None` on overflow.
pub fn witt(n: usize, d: usize) -> Option<u128> {
    if d == 0 {
        return Some(0);
    }
    let mut acc: i128 = 0;
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let m = mobius((d / e) as u64);
        if m == 0 {
            continue;
        }
        let p = (n as i128).checked_pow(u32::try_from(e).ok()?)?;
        acc = acc.checked_add(i128::from(m).checked_mul(p)?)?;
    }
    Some((acc / d as i128) as u128)
}

/// Lyndon words of each length `1..=max_len` over `n` letters, in
/// lexicographic order (Duval's generation algorithm).
fn lyndon_words_up_to(n: usize, max_len: usize) -> Vec<Vec<Word>> {
    let mut out = alloc::vec![Vec::new(); max_len + 1];
    if n == 0 || max_len == 0 {
        return out;
    }
    let top = (n - 1) as u8;
    let mut w: Word = alloc::vec![0];
    loop {
        out[w.len()].push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Standard factorization `w = uv`, `v` the smallest proper suffix.
fn standard_split(w: &[u8]) -> usize {
    (1..w.len()).min_by(|&i, &j| w[i..].cmp(&w[j..])).expect("word of length at least 2")
}

fn letter(i: u8) -> String {
    if i < 26 {
        String::from((b'a' + i) as char)
    } else {
        alloc::format!("x{}", i)
    }
}

/// A Lyndon word together with its standard bracketing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(pub Word);

impl LyndonWord {
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Plain word, e.g. `aab`.
    pub fn word_string(&self) -> String {
        self.0.iter().map(|&c| letter(c)).collect()
    }

    /// Standard bracketing, e.g. `[a,[a,b]]`.
    pub fn bracketing(&self) -> String {
        fn go(w: &[u8]) -> String {
            if w.len() == 1 {
                return letter(w[0]);
            }
            let k = standard_split(w);
            alloc::format!("[{},{}]", go(&w[..k]), go(&w[k..]))
        }
        go(&self.0)
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracketing())
    }
}

/// The `W(n, d)` standard-bracketed Lyndon words of length `d` over `n` letters.
pub fn lyndon_basis(n: usize, d: usize) -> Result<Vec<LyndonWord>> {
    check_witt(n, d)?;
    Ok(lyndon_words_up_to(n, d).swap_remove(d).into_iter().map(LyndonWord).collect())
}

fn check_witt(n: usize, d: usize) -> Result<u128> {
    if n > 255 {
        return Err(Error::InvalidParameter(alloc::format!("rank {} exceeds 255 generators", n)));
    }
    match witt(n, d) {
        Some(w) if w <= WITT_BUDGET => Ok(w),
        w => Err(Error::BudgetExceeded {
            what: "Witt number",
            needed: w.unwrap_or(u128::MAX),
            limit: WITT_BUDGET,
        }),
    }
}

/// Homogeneous element of a free Lie algebra, in Lyndon coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub degree: usize,
    pub coords: Vec<Rat>,
}

impl LieElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Free Lie algebra of rank `n`, with Lyndon bases and tensor expansions
/// precomputed up to a maximal degree.
#[derive(Clone, Debug)]
pub struct FreeLie {
    n: usize,
    max_degree: usize,
    words: Vec<Vec<Word>>,
    index: Vec<BTreeMap<Word, usize>>,
    expansions: Vec<Vec<Tensor>>,
}

fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            *out.entry(w).or_insert_with(Rat::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn tensor_axpy(acc: &mut Tensor, scale: &Rat, t: &Tensor) {
    for (w, c) in t {
        let e = acc.entry(w.clone()).or_insert_with(Rat::zero);
        *e += scale * c;
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

fn commutator(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = tensor_mul(a, b);
    tensor_axpy(&mut out, &-Rat::one(), &tensor_mul(b, a));
    out
}

impl FreeLie {
    pub fn new(n: usize, max_degree: usize) -> Result<Self> {
        for d in 1..=max_degree {
            check_witt(n, d)?;
        }
        let words = lyndon_words_up_to(n, max_degree);
        let index = words
            .iter()
            .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        let mut expansions: Vec<Vec<Tensor>> = alloc::vec![Vec::new(); max_degree + 1];
        let mut by_word: BTreeMap<Word, Tensor> = BTreeMap::new();
        for d in 1..=max_degree {
            for w in &words[d] {
                let t = if d == 1 {
                    Tensor::from([(w.clone(), Rat::one())])
                } else {
                    let k = standard_split(w);
                    commutator(&by_word[&w[..k]], &by_word[&w[k..]])
                };
                by_word.insert(w.clone(), t.clone());
                expansions[d].push(t);
            }
        }
        Ok(Self { n, max_degree, words, index, expansions })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, d: usize) -> usize {
        self.words.get(d).map_or(0, Vec::len)
    }

    pub fn basis(&self, d: usize) -> Vec<LyndonWord> {
        self.words.get(d).map_or_else(Vec::new, |ws| ws.iter().cloned().map(LyndonWord).collect())
    }

    pub fn zero(&self, d: usize) -> LieElement {
        LieElement { degree: d, coords: alloc::vec![Rat::zero(); self.dim(d)] }
    }

    /// The `i`-th Lyndon basis element of degree `d`.
    pub fn basis_element(&self, d: usize, i: usize) -> LieElement {
        let mut e = self.zero(d);
        e.coords[i] = Rat::one();
        e
    }

    pub fn generator(&self, i: usize) -> LieElement {
        self.basis_element(1, i)
    }

    /// Basis element for a Lyndon word, if it is one of degree ≤ max.
    pub fn element_of_word(&self, w: &[u8]) -> Option<LieElement> {
        let i = *self.index.get(w.len())?.get(w)?;
        Some(self.basis_element(w.len(), i))
    }

    fn check(&self, u: &LieElement) -> Result<()> {
        if u.degree == 0 || u.degree > self.max_degree {
            return Err(Error::DegreeOverflow { degree: u.degree, top: self.max_degree });
        }
        if u.coords.len() != self.dim(u.degree) {
            return Err(Error::DimensionMismatch { expected: self.dim(u.degree), found: u.coords.len() });
        }
        Ok(())
    }

    /// Expansion in the tensor algebra.
    pub fn to_tensor(&self, u: &LieElement) -> Result<BTreeMap<Word, Rat>> {
        self.check(u)?;
        let mut t = Tensor::new();
        for (c, p) in u.coords.iter().zip(&self.expansions[u.degree]) {
            if !c.is_zero() {
                tensor_axpy(&mut t, c, p);
            }
        }
        Ok(t)
    }

    /// Lyndon coordinates of a homogeneous Lie polynomial given in the tensor
    /// algebra. Uses that the expansion of a standard bracketing is its word
    /// plus lexicographically larger words.
    pub fn from_tensor(&self, d: usize, mut t: BTreeMap<Word, Rat>) -> Result<LieElement> {
        if d == 0 || d > self.max_degree {
            return Err(Error::DegreeOverflow { degree: d, top: self.max_degree });
        }
        let mut coords = alloc::vec![Rat::zero(); self.dim(d)];
        t.retain(|_, c| !c.is_zero());
        while let Some((w, c)) = t.first_key_value() {
            let Some(&i) = (w.len() == d).then(|| self.index[d].get(w)).flatten() else {
                return Err(Error::Precondition("tensor is not a homogeneous Lie element".into()));
            };
            let c = c.clone();
            tensor_axpy(&mut t, &-c.clone(), &self.expansions[d][i]);
            coords[i] += c;
        }
        Ok(LieElement { degree: d, coords })
    }

    pub fn bracket(&self, u: &LieElement, v: &LieElement) -> Result<LieElement> {
        let t = commutator(&self.to_tensor(u)?, &self.to_tensor(v)?);
        self.from_tensor(u.degree + v.degree, t)
    }

    pub fn add(&self, u: &LieElement, v: &LieElement) -> Result<LieElement> {
        self.check(u)?;
        self.check(v)?;
        if u.degree != v.degree {
            return Err(Error::DimensionMismatch { expected: u.degree, found: v.degree });
        }
        Ok(LieElement {
            degree: u.degree,
            coords: u.coords.iter().zip(&v.coords).map(|(a, b)| a + b).collect(),
        })
    }

    /// Human-readable form such as `[a,[a,b]] - 2[[a,b],b]`.
    pub fn format(&self, u: &LieElement) -> String {
        let mut s = String::new();
        for (c, w) in u.coords.iter().zip(self.words.get(u.degree).into_iter().flatten()) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&alloc::format!("{}", abs));
            }
            s.push_str(&LyndonWord(w.clone()).bracketing());
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// `φ_d = dim h_d` for `d = 1..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieRanks {
    ranks: Vec<usize>,
}

impl GradedLieRanks {
    pub fn max_degree(&self) -> usize {
        self.ranks.len()
    }

    /// `φ_d` for `1 ≤ d ≤ D`.
    pub fn phi(&self, d: usize) -> usize {
        self.ranks[d - 1]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ranks.iter().enumerate().map(|(i, &r)| (i + 1, r))
    }
}

/// Image of the comultiplication `H_2 → Λ²H_1`, dual to the cup product, as
/// degree-2 Lie elements (Lyndon words `ij`, `i < j`, in pair order).
pub fn comultiplication_image(c: &CupData) -> Vec<LieElement> {
    let dim = crate::cup::pair_count(c.b1());
    let mut span = EchelonBasis::new(dim);
    let mut out = Vec::new();
    for k in 0..c.b2() {
        let v: Vec<Rat> = c.entries().iter().map(|m| m[k].clone()).collect();
        if span.insert(&v) {
            out.push(LieElement { degree: 2, coords: v });
        }
    }
    out
}

/// Graded ranks of the holonomy Lie algebra `Lie(H_1) / ideal(im ∂)`.
///
/// The ideal is spanned in degree `d + 1` by `[e_i, u]` with `u` running over
/// a basis of its degree-`d` part.
pub fn holonomy_ranks(c: &CupData, max_degree: usize) -> Result<GradedLieRanks> {
    if max_degree == 0 {
        return Err(Error::InvalidParameter("maximal degree must be at least 1".into()));
    }
    let n = c.b1();
    if n == 0 {
        return Ok(GradedLieRanks { ranks: alloc::vec![0; max_degree] });
    }
    check_witt(n, max_degree)?;
    let lie = FreeLie::new(n, max_degree)?;
    let mut ranks = alloc::vec![n];
    let mut ideal = EchelonBasis::new(lie.dim(2));
    for u in comultiplication_image(c) {
        ideal.insert(&u.coords);
    }
    for d in 2..=max_degree {
        ranks.push(lie.dim(d) - ideal.dim());
        if d == max_degree {
            break;
        }
        let mut next = EchelonBasis::new(lie.dim(d + 1));
        if ideal.dim() == lie.dim(d) {
            for i in 0..lie.dim(d + 1) {
                next.insert(&lie.basis_element(d + 1, i).coords);
            }
        } else {
            let gens: Vec<_> = (0..n).map(|i| lie.to_tensor(&lie.generator(i))).collect::<Result<_>>()?;
            for v in ideal.basis() {
                let t = lie.to_tensor(&LieElement { degree: d, coords: v })?;
                for g in &gens {
                    let b = lie.from_tensor(d + 1, commutator(g, &t))?;
                    next.insert(&b.coords);
                }
            }
        }
        ideal = next;
    }
    Ok(GradedLieRanks { ranks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_numbers() {
        let w: Vec<u128> = (1..=6).map(|d| witt(2, d).unwrap()).collect();
        assert_eq!(w, alloc::vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(witt(3, 2), Some(3));
        assert_eq!(witt(0, 3), Some(0));
        assert!(witt(1000, 40).is_none());
    }

    #[test]
    fn lyndon_examples() {
        let b = lyndon_basis(2, 3).unwrap();
        let words: Vec<String> = b.iter().map(LyndonWord::word_string).collect();
        assert_eq!(words, alloc::vec!["aab", "abb"]);
        let br: Vec<String> = b.iter().map(LyndonWord::bracketing).collect();
        assert_eq!(br, alloc::vec!["[a,[a,b]]", "[[a,b],b]"]);
        assert_eq!(lyndon_basis(2, 1).unwrap().len(), 2);
        assert_eq!(lyndon_basis(3, 2).unwrap().len(), 3);
        for n in 1..=4 {
            for d in 1..=6 {
                assert_eq!(lyndon_basis(n, d).unwrap().len() as u128, witt(n, d).unwrap());
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let lie = FreeLie::new(2, 4).unwrap();
        let (a, b) = (lie.generator(0), lie.generator(1));
        assert!(lie.bracket(&a, &a).unwrap().is_zero());
        let ab = lie.bracket(&a, &b).unwrap();
        assert_eq!(ab, lie.element_of_word(&[0, 1]).unwrap());
        let aab = lie.element_of_word(&[0, 0, 1]).unwrap();
        let neg = LieElement { degree: 3, coords: aab.coords.iter().map(|x| -x).collect() };
        assert_eq!(lie.bracket(&ab, &a).unwrap(), neg);
        assert_eq!(lie.format(&lie.bracket(&ab, &a).unwrap()), "-[a,[a,b]]");
        assert!(lie.bracket(&ab, &lie.bracket(&ab, &a).unwrap()).is_err());
    }

    #[test]
    fn free_and_surface_ranks() {
        let free = holonomy_ranks(&CupData::zero(2), 6).unwrap();
        assert_eq!(free.ranks(), &[2, 1, 2, 3, 6, 9]);
        let s = holonomy_ranks(&CupData::surface(2), 3).unwrap();
        assert_eq!(s.phi(1), 4);
        assert_eq!(s.phi(2), 5);
        assert_eq!(holonomy_ranks(&CupData::zero(0), 3).unwrap().ranks(), &[0, 0, 0]);
        // abelian: torus group
        assert_eq!(holonomy_ranks(&CupData::torus(3), 4).unwrap().ranks(), &[3, 0, 0, 0]);
    }

    #[test]
    fn comultiplication_examples() {
        assert!(comultiplication_image(&CupData::zero(3)).is_empty());
        let t = comultiplication_image(&CupData::torus(2));
        assert_eq!(t.len(), 1);
        let s = comultiplication_image(&CupData::surface(2));
        assert_eq!(s.len(), 1);
        let lie = FreeLie::new(4, 2).unwrap();
        assert_eq!(lie.format(&s[0]), "[a,b] + [c,d]");
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(holonomy_ranks(&CupData::zero(10), 8), Err(Error::BudgetExceeded { .. })));
        assert!(holonomy_ranks(&CupData::zero(2), 0).is_err());
    }
}
