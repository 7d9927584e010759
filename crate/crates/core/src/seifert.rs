//! Seifert couples and directed matrices.
//!
//! A [`SeifertCouple`] is a pair (A+, A-) of even-dimensional matrices with
//! A- - A+ skew-symmetric and nonsingular (determinant 1 over Z). A
//! [`DirectedMatrix`] is a single even-dimensional A with A + A^T nonsingular.
//! The 0x0 matrix is a legal value of both and acts as the identity for
//! block sums.

use num_traits::{One, Zero};

use crate::error::{Condition, Error, Result};
use crate::exact::Rat;
use crate::linalg::RatMatrix;

/// Coefficient ring a couple is declared over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
}

impl Ring {
    pub fn tag(self) -> &'static str {
        match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        }
    }
}

/// Which matrix of a couple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// H = [[0, 1], [-1, 0]].
pub fn h_block() -> RatMatrix {
    RatMatrix::from_i64(&[&[0, 1], &[-1, 0]])
}

/// Block sum of h copies of H.
pub fn h_sum(h: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(2 * h, 2 * h);
    for k in 0..h {
        m.paste(2 * k, 2 * k, &h_block());
    }
    m
}

/// An even-dimensional matrix A with A + A^T nonsingular.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedMatrix {
    a: RatMatrix,
}

impl DirectedMatrix {
    pub fn new(a: RatMatrix) -> Result<DirectedMatrix> {
        if !a.is_square() {
            return Err(Error::validation(Condition::Square, format!("{}x{} matrix", a.rows(), a.cols())));
        }
        if !a.rows().is_multiple_of(2) {
            return Err(Error::validation(Condition::EvenDimension, format!("dimension {}", a.rows())));
        }
        if a.checked_add(&a.transpose())?.det()?.is_zero() {
            return Err(Error::validation(Condition::DirectedStructure, "A + A^T is singular"));
        }
        Ok(DirectedMatrix { a })
    }

    pub fn empty() -> DirectedMatrix {
        DirectedMatrix { a: RatMatrix::empty() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<DirectedMatrix> {
        DirectedMatrix::new(RatMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// A + A^T.
    pub fn symmetrization(&self) -> RatMatrix {
        &self.a + &self.a.transpose()
    }

    pub fn block_sum(&self, other: &DirectedMatrix) -> DirectedMatrix {
        DirectedMatrix {
            a: self.a.block_diag(&other.a),
        }
    }

    /// k-fold block sum of self.
    pub fn multiple(&self, k: usize) -> DirectedMatrix {
        (0..k).fold(DirectedMatrix::empty(), |acc, _| acc.block_sum(self))
    }

    pub fn negate(&self) -> DirectedMatrix {
        DirectedMatrix { a: -&self.a }
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(!self.a.det()?.is_zero())
    }
}

/// A validated Seifert couple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertCouple {
    a_plus: RatMatrix,
    a_minus: RatMatrix,
    ring: Ring,
    admissible: bool,
}

/// Checks the couple conditions and records admissibility.
pub fn validate_couple(a_plus: RatMatrix, a_minus: RatMatrix, ring: Ring) -> Result<SeifertCouple> {
    for (name, m) in [("A+", &a_plus), ("A-", &a_minus)] {
        if !m.is_square() {
            return Err(Error::validation(
                Condition::Square,
                format!("{name} is {}x{}", m.rows(), m.cols()),
            ));
        }
    }
    if a_plus.rows() != a_minus.rows() {
        return Err(Error::validation(
            Condition::DimensionMismatch,
            format!("A+ is {0}x{0}, A- is {1}x{1}", a_plus.rows(), a_minus.rows()),
        ));
    }
    if !a_plus.rows().is_multiple_of(2) {
        return Err(Error::validation(Condition::EvenDimension, format!("dimension {}", a_plus.rows())));
    }
    if ring == Ring::Z && !(a_plus.is_integral() && a_minus.is_integral()) {
        return Err(Error::validation(Condition::Integrality, "a Z-couple has a non-integer entry"));
    }
    let diff = &a_minus - &a_plus;
    if !diff.is_skew_symmetric() {
        return Err(Error::validation(Condition::SkewSymmetry, "A- - A+ is not skew-symmetric"));
    }
    let d = diff.det()?;
    match ring {
        Ring::Z if !d.is_one() => {
            return Err(Error::validation(
                Condition::Determinant,
                format!("det(A- - A+) = {d}, expected 1"),
            ))
        }
        Ring::Q if d.is_zero() => {
            return Err(Error::validation(Condition::Determinant, "det(A- - A+) = 0"));
        }
        _ => {}
    }
    let admissible = !(&a_plus + &a_plus.transpose()).det()?.is_zero();
    Ok(SeifertCouple {
        a_plus,
        a_minus,
        ring,
        admissible,
    })
}

impl SeifertCouple {
    pub fn empty(ring: Ring) -> SeifertCouple {
        SeifertCouple {
            a_plus: RatMatrix::empty(),
            a_minus: RatMatrix::empty(),
            ring,
            admissible: true,
        }
    }

    pub fn from_i64(a_plus: &[&[i64]], a_minus: &[&[i64]]) -> Result<SeifertCouple> {
        validate_couple(RatMatrix::from_i64(a_plus), RatMatrix::from_i64(a_minus), Ring::Z)
    }

    pub fn a_plus(&self) -> &RatMatrix {
        &self.a_plus
    }

    pub fn a_minus(&self) -> &RatMatrix {
        &self.a_minus
    }

    pub fn side(&self, side: Side) -> &RatMatrix {
        match side {
            Side::Plus => &self.a_plus,
            Side::Minus => &self.a_minus,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.a_plus.rows()
    }

    /// A+ + (A+)^T is nonsingular (equivalently for A-).
    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    pub fn block_sum(&self, other: &SeifertCouple) -> Result<SeifertCouple> {
        if self.ring != other.ring {
            return Err(Error::invalid("block sum of couples over different rings"));
        }
        Ok(SeifertCouple {
            a_plus: self.a_plus.block_diag(&other.a_plus),
            a_minus: self.a_minus.block_diag(&other.a_minus),
            ring: self.ring,
            admissible: self.admissible && other.admissible,
        })
    }

    /// Entrywise negation.
    ///
    /// Over Z the determinant of -(A- - A+) equals that of A- - A+ because
    /// the dimension is even, so the result is again a valid couple.
    pub fn negate(&self) -> SeifertCouple {
        SeifertCouple {
            a_plus: -&self.a_plus,
            a_minus: -&self.a_minus,
            ring: self.ring,
            admissible: self.admissible,
        }
    }

    /// The projection of an admissible couple to one side.
    pub fn project(&self, side: Side) -> Result<DirectedMatrix> {
        if !self.admissible {
            return Err(Error::NotAdmissible);
        }
        Ok(DirectedMatrix {
            a: self.side(side).clone(),
        })
    }

    /// Ambient shift by h copies of the closed surface, in direction +1 or -1.
    ///
    /// +1: A+ -> [[A+, 0], [P, 0]], A- -> [[A-, 0], [P, H^h]];
    /// -1: A+ -> [[A+, 0], [P, H^h]], A- -> [[A-, 0], [P, 0]].
    pub fn ambient_shift(&self, direction: i32, h: usize, p: &RatMatrix) -> Result<SeifertCouple> {
        if direction != 1 && direction != -1 {
            return Err(Error::invalid(format!("direction must be +1 or -1, got {direction}")));
        }
        let g2 = self.dim();
        if p.rows() != 2 * h || p.cols() != g2 {
            return Err(Error::invalid(format!(
                "P must be {}x{}, got {}x{}",
                2 * h,
                g2,
                p.rows(),
                p.cols()
            )));
        }
        let grow = |a: &RatMatrix, with_h: bool| {
            let mut m = RatMatrix::zeros(g2 + 2 * h, g2 + 2 * h);
            m.paste(0, 0, a);
            m.paste(g2, 0, p);
            if with_h {
                m.paste(g2, g2, &h_sum(h));
            }
            m
        };
        let (plus_h, minus_h) = if direction == 1 { (false, true) } else { (true, false) };
        validate_couple(grow(&self.a_plus, plus_h), grow(&self.a_minus, minus_h), self.ring)
    }

    /// Tube stabilization on `side`, in the bordered (gamma, delta) form:
    /// that side becomes [[A, g, 0], [g^T, d, 1], [0, 0, 0]] and the other
    /// [[A', g, 0], [g^T, d, 0], [0, 1, 0]].
    pub fn tube_stabilize(&self, side: Side, gamma: &RatMatrix, delta: &Rat) -> Result<SeifertCouple> {
        let n = self.dim();
        if gamma.rows() != n || gamma.cols() != 1 {
            return Err(Error::invalid(format!(
                "gamma must be {n}x1, got {}x{}",
                gamma.rows(),
                gamma.cols()
            )));
        }
        let border = |a: &RatMatrix, chosen: bool| {
            let mut m = RatMatrix::zeros(n + 2, n + 2);
            m.paste(0, 0, a);
            m.paste(0, n, gamma);
            m.paste(n, 0, &gamma.transpose());
            m.set(n, n, delta.clone());
            if chosen {
                m.set(n, n + 1, Rat::one());
            } else {
                m.set(n + 1, n, Rat::one());
            }
            m
        };
        let plus = border(&self.a_plus, side == Side::Plus);
        let minus = border(&self.a_minus, side == Side::Minus);
        let ring = if self.ring == Ring::Z && plus.is_integral() && minus.is_integral() {
            Ring::Z
        } else {
            Ring::Q
        };
        validate_couple(plus, minus, ring)
    }
}

/// The couple (A, A + H^n), always valid and admissible.
pub fn hyperbolic_completion(a: &DirectedMatrix) -> SeifertCouple {
    let n = a.dim() / 2;
    let ring = if a.a.is_integral() { Ring::Z } else { Ring::Q };
    SeifertCouple {
        a_plus: a.a.clone(),
        a_minus: &a.a + &h_sum(n),
        ring,
        admissible: true,
    }
}

/// A nonsingular directed matrix concordant to `a`, of dimension at most dim(a).
///
/// While A is singular: take e with e^T A = 0. Then W = {x : x^T A e = 0} is
/// the (A + A^T)-orthogonal complement of the isotropic vector e, and for a
/// basis G of a complement of e in W, A ⊕ -(G^T A G) vanishes on the
/// half-dimensional span of (e, 0) and the (g_i, e_i). So A is concordant to
/// G^T A G, which is two dimensions smaller and still directed.
pub fn nonsingular_representative(a: &DirectedMatrix) -> Result<DirectedMatrix> {
    let mut cur = a.a.clone();
    loop {
        if !cur.det()?.is_zero() {
            return Ok(DirectedMatrix { a: cur });
        }
        let n = cur.rows();
        let e = cur
            .transpose()
            .kernel()?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("singular matrix with trivial left kernel".into()))?;
        let c = cur.mul_vec(&e);
        let row = RatMatrix::from_rows(vec![c])?;
        let mut chosen: Vec<Vec<Rat>> = vec![e];
        for v in row.kernel()? {
            if chosen.len() == n - 1 {
                break;
            }
            let mut trial = chosen.clone();
            trial.push(v);
            let m = RatMatrix::from_rows(trial.clone())?;
            if m.rank()? == trial.len() {
                chosen = trial;
            }
        }
        if chosen.len() != n - 1 {
            return Err(Error::Internal("reduction basis has the wrong size".into()));
        }
        let mut g = RatMatrix::zeros(n, n - 2);
        for (j, v) in chosen[1..].iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                g.set(i, j, x.clone());
            }
        }
        cur = &(&g.transpose() * &cur) * &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use proptest::prelude::*;

    fn f0(m: i64, n: i64) -> SeifertCouple {
        SeifertCouple::from_i64(&[&[m, 0], &[0, -n]], &[&[m, 1], &[-1, -n]]).unwrap()
    }

    fn condition(e: Error) -> Condition {
        match e {
            Error::Validation { condition, .. } => condition,
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn validation_examples() {
        let c = f0(3, 5);
        assert!(c.is_admissible());
        let c = SeifertCouple::from_i64(
            &[&[1, -1, -1, 0], &[-1, 0, 1, 0], &[1, -1, 0, 1], &[0, 0, 0, 1]],
            &[&[1, -2, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1]],
        )
        .unwrap();
        assert!(c.is_admissible());
        let z = RatMatrix::zeros(2, 2);
        // a zero difference is skew, so the determinant check is what fails
        let e = validate_couple(z.clone(), z, Ring::Z).unwrap_err();
        assert_eq!(condition(e), Condition::Determinant);
    }

    #[test]
    fn validation_conditions_are_named() {
        let e = validate_couple(RatMatrix::zeros(2, 3), RatMatrix::zeros(2, 3), Ring::Q).unwrap_err();
        assert_eq!(condition(e), Condition::Square);
        let e = validate_couple(RatMatrix::identity(2), RatMatrix::identity(4), Ring::Q).unwrap_err();
        assert_eq!(condition(e), Condition::DimensionMismatch);
        let e = validate_couple(RatMatrix::identity(3), RatMatrix::identity(3), Ring::Q).unwrap_err();
        assert_eq!(condition(e), Condition::EvenDimension);
        let e = validate_couple(
            RatMatrix::from_i64(&[&[3, 0], &[0, -5]]),
            RatMatrix::from_i64(&[&[3, 1], &[1, -5]]),
            Ring::Z,
        )
        .unwrap_err();
        assert_eq!(condition(e), Condition::SkewSymmetry);
        let e = validate_couple(
            RatMatrix::from_i64(&[&[3, 0], &[0, -5]]),
            RatMatrix::from_i64(&[&[3, 2], &[-2, -5]]),
            Ring::Z,
        )
        .unwrap_err();
        assert_eq!(condition(e), Condition::Determinant);
        // the same pair is fine over Q
        assert!(validate_couple(
            RatMatrix::from_i64(&[&[3, 0], &[0, -5]]),
            RatMatrix::from_i64(&[&[3, 2], &[-2, -5]]),
            Ring::Q,
        )
        .is_ok());
    }

    #[test]
    fn block_sum_and_negation() {
        let x = f0(3, 5);
        assert_eq!(x.block_sum(&SeifertCouple::empty(Ring::Z)).unwrap(), x);
        let xx = x.block_sum(&x).unwrap();
        assert_eq!(xx.dim(), 4);
        assert!(validate_couple(xx.a_plus().clone(), xx.a_minus().clone(), Ring::Z).is_ok());
        let n = x.negate();
        assert_eq!(n.a_plus(), &RatMatrix::from_i64(&[&[-3, 0], &[0, 5]]));
        assert_eq!(n.negate(), x);
        assert!(validate_couple(n.a_plus().clone(), n.a_minus().clone(), Ring::Z).is_ok());
        assert_eq!(DirectedMatrix::empty().negate(), DirectedMatrix::empty());
        assert!(x.block_sum(&SeifertCouple::empty(Ring::Q)).is_err());
    }

    #[test]
    fn projection_and_completion() {
        let x = f0(3, 5);
        assert_eq!(x.project(Side::Plus).unwrap().matrix(), &RatMatrix::from_i64(&[&[3, 0], &[0, -5]]));
        let a = DirectedMatrix::from_i64(&[&[3, 0], &[0, -5]]).unwrap();
        assert_eq!(hyperbolic_completion(&a), x);
        assert_eq!(hyperbolic_completion(&DirectedMatrix::empty()).dim(), 0);
        let c = hyperbolic_completion(&a);
        let again = hyperbolic_completion(&c.project(Side::Plus).unwrap());
        assert_eq!(again, c);
        let inadmissible = validate_couple(RatMatrix::zeros(2, 2), h_block(), Ring::Z).unwrap();
        assert_eq!(inadmissible.project(Side::Plus), Err(Error::NotAdmissible));
    }

    #[test]
    fn ambient_shift_blocks() {
        let x = f0(3, 5);
        let h = h_block();
        let up = x.ambient_shift(1, 1, &h).unwrap();
        let mut ap = RatMatrix::zeros(4, 4);
        ap.paste(0, 0, x.a_plus());
        ap.paste(2, 0, &h);
        assert_eq!(up.a_plus(), &ap);
        let mut am = RatMatrix::zeros(4, 4);
        am.paste(0, 0, x.a_minus());
        am.paste(2, 0, &h);
        am.paste(2, 2, &h);
        assert_eq!(up.a_minus(), &am);
        let down = x.ambient_shift(-1, 1, &h).unwrap();
        let mut dp = ap.clone();
        dp.paste(2, 2, &h);
        assert_eq!(down.a_plus(), &dp);
        assert!(x.ambient_shift(1, 1, &RatMatrix::zeros(2, 3)).is_err());
        assert!(x.ambient_shift(0, 1, &h).is_err());
    }

    #[test]
    fn tube_stabilization_shapes() {
        let x = f0(3, 5);
        let t = x.tube_stabilize(Side::Plus, &RatMatrix::zeros(2, 1), &Rat::zero()).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.ring(), Ring::Z);
        let e = SeifertCouple::empty(Ring::Z)
            .tube_stabilize(Side::Minus, &RatMatrix::zeros(0, 1), &rat_int(3))
            .unwrap();
        assert_eq!(e.a_minus(), &RatMatrix::from_i64(&[&[3, 1], &[0, 0]]));
        assert!(x.tube_stabilize(Side::Plus, &RatMatrix::zeros(3, 1), &Rat::zero()).is_err());
    }

    #[test]
    fn nonsingular_representative_examples() {
        let a = DirectedMatrix::from_i64(&[&[3, 0], &[0, -5]]).unwrap();
        assert_eq!(nonsingular_representative(&a).unwrap(), a);
        let m = DirectedMatrix::from_i64(&[&[0, 1], &[0, 0]]).unwrap();
        assert_eq!(nonsingular_representative(&m).unwrap().dim(), 0);
        let a_minus =
            DirectedMatrix::from_i64(&[&[1, -2, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1]]).unwrap();
        let r = nonsingular_representative(&a_minus).unwrap();
        assert!(r.is_nonsingular().unwrap());
        assert!(r.dim() < 4);
    }

    proptest! {
        #[test]
        fn skew_perturbations_are_rejected(i in 0usize..4, j in 0usize..4, d in 1i64..5) {
            // adding d to a single entry breaks skew-symmetry unless compensated
            let base = f0(3, 5).block_sum(&f0(7, 11)).unwrap();
            let mut am = base.a_minus().clone();
            let v = am.get(i, j) + rat_int(d);
            am.set(i, j, v);
            let r = validate_couple(base.a_plus().clone(), am, Ring::Z);
            prop_assert!(r.is_err());
        }

        #[test]
        fn reduction_keeps_directed_structure(
            v in proptest::collection::vec(-3i64..=3, 16),
        ) {
            let rows: Vec<Vec<Rat>> = (0..4).map(|i| (0..4).map(|j| rat_int(v[4 * i + j])).collect()).collect();
            let mut a = RatMatrix::from_rows(rows).unwrap();
            // force singularity by zeroing the last row
            for j in 0..4 {
                a.set(3, j, Rat::zero());
            }
            let Ok(d) = DirectedMatrix::new(a) else { return Ok(()) };
            let r = nonsingular_representative(&d).unwrap();
            prop_assert!(r.is_nonsingular().unwrap());
            prop_assert!(r.dim() < 4);
            prop_assert!(r.matrix().is_integral());
        }
    }
}
