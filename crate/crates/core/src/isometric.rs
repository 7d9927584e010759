//! Directed isometric structures (V, B, S) and their primary decomposition.
//!
//! A nonsingular directed matrix A corresponds to B = A + A^T with the
//! isometry S = A^{-1} A^T; conversely A = B (I + S)^{-1}.

use num_traits::{One, Zero};

use crate::error::{Condition, Error, Result};
use crate::linalg::{char_poly, kernel_basis, restrict, RatMatrix, RestrictKind, SubspaceBasis};
use crate::poly::{factor_q, FactoredPoly, RatPoly};
use crate::seifert::DirectedMatrix;

/// A regular symmetric form B with an isometry S, det S = 1 and -1 not an eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometricStructure {
    b: RatMatrix,
    s: RatMatrix,
}

impl IsometricStructure {
    pub fn new(b: RatMatrix, s: RatMatrix) -> Result<IsometricStructure> {
        if !b.is_square() || !s.is_square() || b.rows() != s.rows() {
            return Err(Error::validation(Condition::Square, "B and S must be square of equal size"));
        }
        if !b.rows().is_multiple_of(2) {
            return Err(Error::validation(Condition::EvenDimension, format!("dimension {}", b.rows())));
        }
        if !b.is_symmetric() {
            return Err(Error::validation(Condition::Symmetry, "B is not symmetric"));
        }
        if b.det()?.is_zero() {
            return Err(Error::validation(Condition::DirectedStructure, "B is singular"));
        }
        if &(&s.transpose() * &b) * &s != b {
            return Err(Error::validation(Condition::Isometry, "S^T B S != B"));
        }
        if !s.det()?.is_one() {
            return Err(Error::validation(Condition::DirectedStructure, "det S != 1"));
        }
        if (&s + &RatMatrix::identity(s.rows())).det()?.is_zero() {
            return Err(Error::validation(Condition::DirectedStructure, "-1 is an eigenvalue of S"));
        }
        Ok(IsometricStructure { b, s })
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn form(&self) -> &RatMatrix {
        &self.b
    }

    pub fn isometry(&self) -> &RatMatrix {
        &self.s
    }

    /// Δ_S(t) = det(S - tI).
    pub fn char_poly(&self) -> Result<RatPoly> {
        char_poly(&self.s)
    }
}

/// (A + A^T, A^{-1} A^T) for a nonsingular directed matrix.
pub fn from_directed(a: &DirectedMatrix) -> Result<IsometricStructure> {
    let m = a.matrix();
    if m.det()?.is_zero() {
        return Err(Error::Singular(
            "directed matrix is singular; reduce it to a nonsingular representative first".into(),
        ));
    }
    let s = &m.inverse()? * &m.transpose();
    IsometricStructure::new(a.symmetrization(), s)
}

/// A = B (I + S)^{-1}.
pub fn to_directed(st: &IsometricStructure) -> Result<DirectedMatrix> {
    let n = st.dim();
    let inv = (&RatMatrix::identity(n) + &st.s).inverse()?;
    let a = &st.b * &inv;
    let d = DirectedMatrix::new(a)?;
    if d.symmetrization() != st.b || &d.matrix().inverse()? * &d.matrix().transpose() != st.s {
        return Err(Error::Internal("directed matrix does not reproduce (B, S)".into()));
    }
    Ok(d)
}

/// How a primary piece enters the invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    /// The factor t - 1.
    TMinusOne,
    /// A symmetric irreducible other than t - 1.
    Symmetric,
    /// Non-symmetric; `partner` indexes the piece of the bar factor.
    NonSymmetric { partner: usize },
}

/// The λ-primary component ker λ(S)^e with the restricted form and isometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryPiece {
    pub factor: RatPoly,
    pub exponent: u32,
    pub basis: SubspaceBasis,
    pub b: RatMatrix,
    pub s: RatMatrix,
    pub class: SymmetryClass,
}

impl PrimaryPiece {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// One piece per irreducible factor of Δ_S, in the order of [`factor_q`].
pub fn primary_decompose(st: &IsometricStructure) -> Result<Vec<PrimaryPiece>> {
    let fac = factor_q(&st.char_poly()?)?;
    decompose_with(st, &fac)
}

pub(crate) fn decompose_with(st: &IsometricStructure, fac: &FactoredPoly) -> Result<Vec<PrimaryPiece>> {
    let t_minus_1 = RatPoly::from_ints(&[-1, 1]);
    let mut pieces = Vec::with_capacity(fac.factors.len());
    for (lambda, e) in &fac.factors {
        let m = st.s.poly_eval(&lambda.pow(*e))?;
        let basis = kernel_basis(&m)?;
        let expected = *e as usize * lambda.degree().unwrap_or(0);
        if basis.dim() != expected {
            return Err(Error::Internal(format!(
                "primary component of {lambda} has dimension {}, expected {expected}",
                basis.dim()
            )));
        }
        let b = restrict(&st.b, &basis, RestrictKind::Form)?;
        let s = restrict(&st.s, &basis, RestrictKind::Operator)?;
        let class = if *lambda == t_minus_1 {
            SymmetryClass::TMinusOne
        } else if lambda.associated(&lambda.bar()?) {
            SymmetryClass::Symmetric
        } else {
            SymmetryClass::NonSymmetric { partner: usize::MAX }
        };
        pieces.push(PrimaryPiece {
            factor: lambda.clone(),
            exponent: *e,
            basis,
            b,
            s,
            class,
        });
    }
    for i in 0..pieces.len() {
        if let SymmetryClass::NonSymmetric { .. } = pieces[i].class {
            let target = pieces[i].factor.bar()?.monic();
            let partner = pieces
                .iter()
                .position(|p| p.factor == target)
                .ok_or_else(|| Error::Internal(format!("no partner for non-symmetric factor {}", pieces[i].factor)))?;
            pieces[i].class = SymmetryClass::NonSymmetric { partner };
        }
    }
    Ok(pieces)
}
