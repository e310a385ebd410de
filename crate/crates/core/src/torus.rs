//! Mapping tori of surface diffeomorphisms: homology from the Wang sequence,
//! eigenvalue tests on the monodromy and the resulting obstructions.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    char_poly, cokernel, factor_monic, is_cyclotomic_product, jordan_block_at_one, rank, AbelianGroup, IntMatrix,
    IntPolynomial, JordanAtOne, PolyFactor,
};
use crate::Int;

/// A concluded statement together with the result it rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub statement: String,
    pub citation: &'static str,
}

pub const CITE_UNIT_EIGENVALUES: &str =
    "if π1(N × U_h) is quasi-Kähler for a compact connected N, every eigenvalue of h_* on H_1(U) has norm 1";
pub const CITE_JORDAN: &str =
    "if M fibers over U_h and M is 1-formal, every Jordan block of h_* at the eigenvalue 1 has size 1";
pub const CITE_RATIONAL_TYPE: &str =
    "for U = Σ_g and W = S¹ × U_h, M × W = N × U_h (N = S¹ × M) is rationally equivalent to M × T² × S² for compact Kähler M";

/// Integral monodromy `h_*: H_1(U) → H_1(U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyMatrix {
    h: IntMatrix,
    symplectic: bool,
}

/// `J = diag([[0, 1], [−1, 0]], …)` with `g` blocks.
pub fn standard_symplectic_form(g: usize) -> IntMatrix {
    let block = IntMatrix::from_i64(&[[0, 1], [-1, 0]]);
    IntMatrix::block_sum(&alloc::vec![block; g])
}

/// `A_n = [[n + 2, −1], [1, 0]]`.
pub fn a_n(n: i64) -> IntMatrix {
    IntMatrix::from_i64(&[[n + 2, -1], [1, 0]])
}

/// Block sum of `g` copies of `A_n`.
pub fn b_gn(g: usize, n: i64) -> IntMatrix {
    IntMatrix::block_sum(&alloc::vec![a_n(n); g])
}

impl MonodromyMatrix {
    /// Requires a square matrix with determinant ±1.
    pub fn new(h: IntMatrix) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
        }
        if !h.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let n = h.rows();
        let symplectic = n.is_multiple_of(2) && {
            let j = standard_symplectic_form(n / 2);
            &(&h.transpose() * &j) * &h == j
        };
        Ok(Self { h, symplectic })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.h
    }

    pub fn size(&self) -> usize {
        self.h.rows()
    }

    /// `hᵀ J h = J` for the standard form.
    pub fn is_symplectic(&self) -> bool {
        self.symplectic
    }

    /// Genus of the fiber when the matrix is symplectic.
    pub fn genus(&self) -> Option<usize> {
        self.symplectic.then(|| self.size() / 2)
    }

    fn identity_minus(&self) -> IntMatrix {
        &IntMatrix::identity(self.size()) - &self.h
    }
}

/// `H_1(U_h; Z) = Z ⊕ coker(I − h_*)`.
pub fn wang_h1(h: &MonodromyMatrix) -> AbelianGroup {
    AbelianGroup::free(1).direct_sum(&cokernel(&h.identity_minus()))
}

/// `b_1(U_h) = 1 + dim ker(I − h_*)`.
pub fn b1_mapping_torus(h: &MonodromyMatrix) -> usize {
    1 + h.size() - rank(&h.identity_minus().to_rational())
}

/// Eigenvalue data of the monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterComponent {
    pub char_poly: IntPolynomial,
    pub factors: Vec<PolyFactor>,
    /// 1 is an eigenvalue of `h_*`.
    pub contains_one: bool,
}

pub fn character_component(h: &MonodromyMatrix) -> Result<CharacterComponent> {
    let p = char_poly(h.matrix())?;
    let factors = factor_monic(&p)?;
    let contains_one = h.identity_minus().det()?.is_zero();
    Ok(CharacterComponent { char_poly: p, factors, contains_one })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiKahlerObstruction {
    /// A factor with a root off the unit circle.
    Obstructed { witness: PolyFactor },
    NotObstructed,
}

impl QuasiKahlerObstruction {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Self::Obstructed { .. })
    }
}

/// Obstructed iff the characteristic polynomial is not a product of
/// cyclotomic polynomials, i.e. some eigenvalue has norm ≠ 1.
pub fn quasi_kahler_obstruction(h: &MonodromyMatrix) -> Result<QuasiKahlerObstruction> {
    let p = char_poly(h.matrix())?;
    if is_cyclotomic_product(&p)? {
        return Ok(QuasiKahlerObstruction::NotObstructed);
    }
    let witness = factor_monic(&p)?
        .into_iter()
        .find(|f| !f.cyclotomic)
        .expect("a non-cyclotomic product has a non-cyclotomic factor");
    Ok(QuasiKahlerObstruction::Obstructed { witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanObstruction {
    /// A Jordan block of size ≥ 2 at the eigenvalue 1.
    Obstructed,
    Clear,
}

pub fn formality_jordan_obstruction(h: &MonodromyMatrix) -> Result<JordanObstruction> {
    Ok(match jordan_block_at_one(h.matrix())? {
        JordanAtOne::BlockOfSizeGeTwo => JordanObstruction::Obstructed,
        _ => JordanObstruction::Clear,
    })
}

/// Isolated points `1 × ρ` of `V_1(N × U_h)` coming from the eigenvalues of
/// `h_*`, grouped by irreducible factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethV1 {
    pub isolated: Vec<PolyFactor>,
    /// Some isolated point lies off the unit circle.
    pub non_unitary: bool,
    /// Components `V × 1` contributed by `V_1(N)`, as given.
    pub from_n: Vec<String>,
}

pub fn kunneth_v1_isolated(h: &MonodromyMatrix, v1_of_n: &[String]) -> Result<KunnethV1> {
    let c = character_component(h)?;
    if c.contains_one {
        return Err(Error::Precondition("1 is an eigenvalue of the monodromy".into()));
    }
    let non_unitary = c.factors.iter().any(|f| !f.cyclotomic);
    Ok(KunnethV1 { isolated: c.factors, non_unitary, from_n: v1_of_n.to_vec() })
}

/// Everything computed for a single monodromy matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusReport {
    pub size: usize,
    pub symplectic: bool,
    pub genus: Option<usize>,
    pub b1: usize,
    pub h1: AbelianGroup,
    pub character: CharacterComponent,
    pub jordan: JordanAtOne,
    pub jordan_obstruction: JordanObstruction,
    pub quasi_kahler: QuasiKahlerObstruction,
    pub conclusions: Vec<Conclusion>,
}

pub fn analyze_monodromy(h: &MonodromyMatrix) -> Result<TorusReport> {
    let character = character_component(h)?;
    let jordan = jordan_block_at_one(h.matrix())?;
    let jordan_obstruction = formality_jordan_obstruction(h)?;
    let quasi_kahler = quasi_kahler_obstruction(h)?;
    let mut conclusions = Vec::new();
    if let QuasiKahlerObstruction::Obstructed { witness } = &quasi_kahler {
        conclusions.push(Conclusion {
            statement: alloc::format!(
                "the factor {} has a root off the unit circle, so π1(N × U_h) is not quasi-Kähler and N × U_h carries no Kähler metric, for every closed manifold N",
                witness.poly
            ),
            citation: CITE_UNIT_EIGENVALUES,
        });
    }
    if jordan_obstruction == JordanObstruction::Obstructed {
        conclusions.push(Conclusion {
            statement: "h_* has a Jordan block of size ≥ 2 at the eigenvalue 1, so no manifold fibering over U_h (U_h itself included) is 1-formal".into(),
            citation: CITE_JORDAN,
        });
    }
    Ok(TorusReport {
        size: h.size(),
        symplectic: h.is_symplectic(),
        genus: h.genus(),
        b1: b1_mapping_torus(h),
        h1: wang_h1(h),
        character,
        jordan,
        jordan_obstruction,
        quasi_kahler,
        conclusions,
    })
}

/// The 4-manifold `W_{g,n} = S¹ × U_h` with `h_* = B_{g,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub g: usize,
    pub n: i64,
    pub monodromy: MonodromyMatrix,
    pub char_poly: IntPolynomial,
    /// `H_1(U_h; Z)`.
    pub h1_mapping_torus: AbelianGroup,
    /// `H_1(W_{g,n}; Z) = Z ⊕ H_1(U_h; Z)`.
    pub h1: AbelianGroup,
    pub expected_h1: AbelianGroup,
    pub obstruction: QuasiKahlerObstruction,
    pub conclusions: Vec<Conclusion>,
}

/// Builds `W_{g,n}` for `g ≥ 1`, `n > 1` and checks every premise of the
/// non-Kähler construction: `B_{g,n}` symplectic, 1 not an eigenvalue,
/// `H_1(W) = Z² ⊕ (Z/n)^g` and a non-unitary eigenvalue.
pub fn nonkahler_family(g: usize, n: i64) -> Result<FamilyReport> {
    if g < 1 {
        return Err(Error::InvalidParameter(alloc::format!("genus must be at least 1, got {}", g)));
    }
    if n <= 1 {
        return Err(Error::InvalidParameter(alloc::format!("n must exceed 1, got {}", n)));
    }
    let monodromy = MonodromyMatrix::new(b_gn(g, n))?;
    if !monodromy.is_symplectic() {
        return Err(Error::Precondition("B_{g,n} failed the symplectic check".into()));
    }
    if monodromy.identity_minus().det()?.is_zero() {
        return Err(Error::Precondition("1 is an eigenvalue of B_{g,n}".into()));
    }
    let h1_mapping_torus = wang_h1(&monodromy);
    let h1 = AbelianGroup::free(1).direct_sum(&h1_mapping_torus);
    let expected_h1 = AbelianGroup::from_invariants(2, core::iter::repeat_n(Int::from(n), g));
    if h1 != expected_h1 {
        return Err(Error::Precondition(alloc::format!("H_1(W) = {} differs from {}", h1, expected_h1)));
    }
    let obstruction = quasi_kahler_obstruction(&monodromy)?;
    if !obstruction.is_obstructed() {
        return Err(Error::Precondition("B_{g,n} has only unitary eigenvalues".into()));
    }
    let conclusions = alloc::vec![
        Conclusion {
            statement: alloc::format!(
                "for every compact Kähler manifold M, M × W_{{{},{}}} has the rational homotopy type of the Kähler manifold M × T² × S²",
                g, n
            ),
            citation: CITE_RATIONAL_TYPE,
        },
        Conclusion {
            statement: alloc::format!("for every compact Kähler manifold M, M × W_{{{},{}}} admits no Kähler metric", g, n),
            citation: CITE_UNIT_EIGENVALUES,
        },
    ];
    Ok(FamilyReport {
        g,
        n,
        char_poly: char_poly(monodromy.matrix())?,
        monodromy,
        h1_mapping_torus,
        h1,
        expected_h1,
        obstruction,
        conclusions,
    })
}

/// Reports for `1 ≤ g ≤ g_max`, `2 ≤ n ≤ n_max`, in `(g, n)` order.
pub fn family_sweep(g_max: usize, n_max: i64) -> Result<Vec<FamilyReport>> {
    let mut out = Vec::new();
    for g in 1..=g_max {
        for n in 2..=n_max {
            out.push(nonkahler_family(g, n)?);
        }
    }
    Ok(out)
}

/// `|tr A|` for a 2×2 matrix, as used by the SL(2, Z) examples.
pub fn abs_trace(h: &MonodromyMatrix) -> Int {
    h.matrix().trace().abs()
}

/// `det h = 1`.
pub fn is_orientation_preserving(h: &MonodromyMatrix) -> bool {
    h.matrix().det().map(|d| d.is_one()).unwrap_or(false)
}
