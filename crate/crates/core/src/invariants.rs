//! Concordance invariants of directed matrices.
//!
//! Every directed matrix is first replaced by a concordant nonsingular one and
//! turned into an isometric structure (B, S). Each symmetric factor λ of Δ_S
//! contributes ε, d, σ and μ computed from the restriction B_λ; the t - 1
//! piece is tested directly in W(Q); non-symmetric pairs are metabolic and
//! skipped. The signature function is evaluated exactly, one rational point
//! per arc of the unit circle.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rat, hasse_symbol, hilbert_symbol, rat_int, squarefree_part, Int, Place, Rat, SquareClass};
use crate::isometric::{decompose_with, from_directed, PrimaryPiece, SymmetryClass};
use crate::linalg::{char_poly, congruent_diagonalize, det_pencil, signature, RatMatrix};
use crate::poly::{circle_arcs, factor_q, CirclePoint, FactoredPoly, RatPoly};
use crate::seifert::{nonsingular_representative, DirectedMatrix, SeifertCouple, Side};
use crate::witt::{candidate_primes, is_trivial_wittq, order_wittq, witt_class, WittClassQ};

/// Order of a class in the concordance group. The possible finite orders form
/// the chain 1 | 2 | 4, so the lcm of two orders is their maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    One,
    Two,
    Four,
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::One => Some(1),
            Order::Two => Some(2),
            Order::Four => Some(4),
            Order::Infinite => None,
        }
    }

    fn from_k(k: u32) -> Order {
        match k {
            1 => Order::One,
            2 => Order::Two,
            _ => Order::Four,
        }
    }

    pub fn lcm(self, other: Order) -> Order {
        self.max(other)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite() {
            Some(k) => write!(f, "{k}"),
            None => f.write_str("inf"),
        }
    }
}

/// Invariants of one symmetric primary piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorInvariants {
    pub factor: RatPoly,
    pub exponent: u32,
    pub epsilon: u8,
    pub discriminant: SquareClass,
    pub sigma: i64,
    /// μ at each candidate prime.
    pub mu: Vec<(Int, i32)>,
    /// Symmetric factors of degree at least 4: the rational invariants are
    /// necessary conditions only.
    pub needs_review: bool,
}

impl FactorInvariants {
    pub fn is_trivial(&self) -> bool {
        self.epsilon == 0 && self.sigma == 0 && self.discriminant.is_trivial() && self.mu.iter().all(|(_, m)| *m == 1)
    }

    fn to_json(&self) -> Value {
        json!({
            "factor": self.factor.to_string(),
            "exponent": self.exponent,
            "epsilon": self.epsilon,
            "discriminant": self.discriminant.to_string(),
            "sigma": self.sigma,
            "mu": self.mu.iter().map(|(p, m)| json!([p.to_string(), m])).collect::<Vec<_>>(),
            "needs_review": self.needs_review,
        })
    }
}

/// μ of an even-rank diagonal form of rank 2r:
/// (-1,-1)^{r(r+3)/2} (det, -1)^{r+1} ∏_{i<j} (a_i, a_j).
/// Equivalently (det, -1)^r times the Hasse invariant ∏_{i<=j} (a_i, a_j);
/// it is +1 on hyperbolic forms and depends only on the Witt class.
pub fn mu_symbol(diag: &[Rat], place: &Place) -> Result<i32> {
    if !diag.len().is_multiple_of(2) {
        return Err(Error::invalid("mu of an odd-rank form"));
    }
    let r = diag.len() / 2;
    let m1 = rat_int(-1);
    let det: Rat = diag.iter().product();
    let mut s = hasse_symbol(diag, place)?;
    if (r * (r + 3) / 2) % 2 == 1 {
        s *= hilbert_symbol(&m1, &m1, place)?;
    }
    if (r + 1) % 2 == 1 {
        s *= hilbert_symbol(&det, &m1, place)?;
    }
    Ok(s)
}

/// ε, d, σ and μ of a symmetric piece (or the t - 1 piece).
pub fn factor_invariants(piece: &PrimaryPiece, extra_primes: &[Int]) -> Result<FactorInvariants> {
    if let SymmetryClass::NonSymmetric { .. } = piece.class {
        return Err(Error::invalid(format!("{} is not symmetric", piece.factor)));
    }
    let (diag, _) = congruent_diagonalize(&piece.b)?;
    if diag.iter().any(Zero::is_zero) || diag.len() % 2 != 0 {
        return Err(Error::Internal(format!("restricted form of {} is degenerate or odd", piece.factor)));
    }
    let r = diag.len() / 2;
    let det: Rat = diag.iter().product();
    let signed = if r % 2 == 1 { -&det } else { det.clone() };

    let mut values = diag.clone();
    let lam = &piece.factor;
    let q = lam.eval(&Rat::one()) * lam.eval(&rat_int(-1));
    if !q.is_zero() {
        values.push(q);
    }
    let disc = lam.discriminant();
    if !disc.is_zero() {
        values.push(disc);
    }
    let mut primes = candidate_primes(&values);
    primes.extend(extra_primes.iter().cloned());
    primes.sort();
    primes.dedup();
    let mu = primes
        .into_iter()
        .map(|p| {
            let m = mu_symbol(&diag, &Place::Prime(p.clone()))?;
            Ok((p, m))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorInvariants {
        factor: lam.clone(),
        exponent: piece.exponent,
        epsilon: (piece.exponent % 2) as u8,
        discriminant: squarefree_part(&signed)?,
        sigma: signature(&piece.b)?,
        mu,
        needs_review: piece.class == SymmetryClass::Symmetric && lam.degree().unwrap_or(0) >= 4,
    })
}

/// Signature value on one open arc of the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcValue {
    pub start_deg: f64,
    pub end_deg: f64,
    pub sample: CirclePoint,
    pub value: i64,
}

/// The directed signature function, one value per arc.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureProfile {
    pub arcs: Vec<ArcValue>,
}

impl SignatureProfile {
    pub fn is_zero(&self) -> bool {
        self.arcs.iter().all(|a| a.value == 0)
    }

    /// The value on the arc containing the angle (degrees), if any.
    pub fn value_at_deg(&self, deg: f64) -> Option<i64> {
        self.arcs
            .iter()
            .find(|a| a.start_deg < deg && deg < a.end_deg)
            .map(|a| a.value)
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.arcs
                .iter()
                .map(|a| {
                    json!({
                        "start_deg": a.start_deg,
                        "end_deg": a.end_deg,
                        "sample": [format_rat(&a.sample.x), format_rat(&a.sample.y)],
                        "value": a.value,
                    })
                })
                .collect(),
        )
    }
}

/// Signature of the Hermitian matrix (1 - ω)A + (1 - ω̄)A^T at a rational
/// point ω = x + iy of the circle, through its real 2N x 2N form.
pub fn signature_at(a: &RatMatrix, w: &CirclePoint) -> Result<i64> {
    let n = a.rows();
    let one = Rat::one();
    let sym = a + &a.transpose();
    let skew = &a.transpose() - a;
    let re = sym.scale(&(&one - &w.x));
    let im = skew.scale(&w.y);
    let mut big = RatMatrix::zeros(2 * n, 2 * n);
    big.paste(0, 0, &re);
    big.paste(n, n, &re);
    big.paste(0, n, &(-&im));
    big.paste(n, 0, &im);
    let (d, _) = congruent_diagonalize(&big)?;
    if d.iter().any(Zero::is_zero) {
        return Err(Error::Internal("signature sample lies on a root".into()));
    }
    let s: i64 = d.iter().map(|x| if x.is_positive() { 1 } else { -1 }).sum();
    Ok(s / 2)
}

/// Exact arc profile of ω ↦ sign((1 - ω)A + (1 - ω̄)A^T), with arcs cut out
/// by 1 and the unit-circle roots of det(A - tA^T).
pub fn signature_profile(a: &DirectedMatrix) -> Result<SignatureProfile> {
    let m = a.matrix();
    let delta = det_pencil(m, &(-&m.transpose()))?;
    if delta.is_zero() {
        let rep = nonsingular_representative(a)?;
        return signature_profile(&rep);
    }
    let arcs = circle_arcs(&delta)?;
    let values = arcs
        .arcs
        .iter()
        .map(|arc| {
            Ok(ArcValue {
                start_deg: arcs.end_angle_deg(arc.start, true),
                end_deg: arcs.end_angle_deg(arc.end, false),
                sample: arc.sample.clone(),
                value: signature_at(m, &arc.sample)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignatureProfile { arcs: values })
}

/// Everything computed from one nonsingular representative.
#[derive(Debug, Clone)]
struct Analysis {
    delta: FactoredPoly,
    t_minus_one: Option<WittClassQ>,
    factors: Vec<FactorInvariants>,
    skipped: Vec<RatPoly>,
}

impl Analysis {
    fn new(rep: &DirectedMatrix) -> Result<Analysis> {
        if rep.dim() == 0 {
            return Ok(Analysis {
                delta: FactoredPoly {
                    unit: Rat::one(),
                    factors: Vec::new(),
                },
                t_minus_one: None,
                factors: Vec::new(),
                skipped: Vec::new(),
            });
        }
        let st = from_directed(rep)?;
        let delta = factor_q(&char_poly(st.isometry())?)?;
        let pieces = decompose_with(&st, &delta)?;
        let mut t_minus_one = None;
        let mut factors = Vec::new();
        let mut skipped = Vec::new();
        for piece in &pieces {
            match piece.class {
                SymmetryClass::NonSymmetric { .. } => skipped.push(piece.factor.clone()),
                SymmetryClass::TMinusOne => {
                    t_minus_one = Some(witt_class(&piece.b)?);
                    factors.push(factor_invariants(piece, &[])?);
                }
                SymmetryClass::Symmetric => factors.push(factor_invariants(piece, &[])?),
            }
        }
        Ok(Analysis {
            delta,
            t_minus_one,
            factors,
            skipped,
        })
    }

    /// Metabolic, assuming the signature profile is already known to vanish.
    fn metabolic(&self) -> Result<bool> {
        if let Some(w) = &self.t_minus_one {
            if !is_trivial_wittq(w)? {
                return Ok(false);
            }
        }
        let t_minus_1 = RatPoly::from_ints(&[-1, 1]);
        Ok(self.factors.iter().filter(|f| f.factor != t_minus_1).all(FactorInvariants::is_trivial))
    }
}

/// Whether the directed matrix is metabolic over Q.
pub fn is_metabolic(a: &DirectedMatrix) -> Result<bool> {
    if a.dim() == 0 {
        return Ok(true);
    }
    if !signature_profile(a)?.is_zero() {
        return Ok(false);
    }
    let rep = nonsingular_representative(a)?;
    Analysis::new(&rep)?.metabolic()
}

fn order_with(rep: &DirectedMatrix, profile: &SignatureProfile, first: Option<&Analysis>) -> Result<Order> {
    if !profile.is_zero() {
        return Ok(Order::Infinite);
    }
    for k in [1u32, 2, 4] {
        let verdict = match (k, first) {
            (1, Some(an)) => an.metabolic()?,
            _ => Analysis::new(&rep.multiple(k as usize))?.metabolic()?,
        };
        if verdict {
            return Ok(Order::from_k(k));
        }
    }
    Err(Error::Internal("torsion class is not killed by 4".into()))
}

/// Order in the rational concordance group: smallest k in {1, 2, 4} with
/// the k-fold sum metabolic, or infinite when the signature profile is nonzero.
pub fn order(a: &DirectedMatrix) -> Result<Order> {
    let profile = signature_profile(a)?;
    let rep = nonsingular_representative(a)?;
    order_with(&rep, &profile, None)
}

/// Whether A ⊕ -B is metabolic.
pub fn concordant(a: &DirectedMatrix, b: &DirectedMatrix) -> Result<bool> {
    is_metabolic(&a.block_sum(&b.negate()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlexanderSide {
    Plus,
    Minus,
    /// det(t A^- - A^+).
    Mixed,
}

impl From<Side> for AlexanderSide {
    fn from(s: Side) -> AlexanderSide {
        match s {
            Side::Plus => AlexanderSide::Plus,
            Side::Minus => AlexanderSide::Minus,
        }
    }
}

/// det(A^± - t (A^±)^T), or the mixed polynomial det(t A^- - A^+).
pub fn alexander(c: &SeifertCouple, side: AlexanderSide) -> Result<RatPoly> {
    match side {
        AlexanderSide::Plus | AlexanderSide::Minus => {
            let a = c.side(if side == AlexanderSide::Plus { Side::Plus } else { Side::Minus });
            det_pencil(a, &(-&a.transpose()))
        }
        AlexanderSide::Mixed => det_pencil(&(-c.a_plus()), c.a_minus()),
    }
}

/// Order from the classical criterion for quadratic factors: applies when
/// Δ_S of the nonsingular representative is (t - 1)^e times symmetric
/// irreducible quadratics. A quadratic λ with odd exponent and
/// λ(1)λ(-1) > 0 has infinite order; with λ(1)λ(-1) < 0 it has order 4 if
/// (-λ(1)λ(-1), -1)_p = -1 at some p and order 2 otherwise. Returns `None`
/// when the criterion does not apply.
pub fn order_via_quadratic_criterion(a: &DirectedMatrix) -> Result<Option<Order>> {
    let rep = nonsingular_representative(a)?;
    if rep.dim() == 0 {
        return Ok(Some(Order::One));
    }
    let st = from_directed(&rep)?;
    let delta = factor_q(&char_poly(st.isometry())?)?;
    let t_minus_1 = RatPoly::from_ints(&[-1, 1]);
    let mut result = Order::One;
    for (lam, e) in &delta.factors {
        if *lam == t_minus_1 {
            continue;
        }
        if lam.degree() != Some(2) || !lam.associated(&lam.bar()?) {
            return Ok(None);
        }
        let q = lam.eval(&Rat::one()) * lam.eval(&rat_int(-1));
        if e % 2 == 0 {
            return Ok(None);
        }
        if q.is_positive() {
            return Ok(Some(Order::Infinite));
        }
        let minus_q = -q;
        let mut part = Order::Two;
        for p in candidate_primes(std::slice::from_ref(&minus_q)) {
            if hilbert_symbol(&minus_q, &rat_int(-1), &Place::Prime(p))? == -1 {
                part = Order::Four;
            }
        }
        result = result.lcm(part);
    }
    if delta.exponent_of(&t_minus_1) > 0 {
        let pieces = decompose_with(&st, &delta)?;
        let piece = pieces
            .iter()
            .find(|p| p.class == SymmetryClass::TMinusOne)
            .ok_or_else(|| Error::Internal("missing t - 1 piece".into()))?;
        let part = match order_wittq(&witt_class(&piece.b)?)? {
            None => Order::Infinite,
            Some(k) => Order::from_k(k),
        };
        result = result.lcm(part);
    }
    Ok(Some(result))
}

/// Full invariant report for one directed matrix.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub input: String,
    pub dim: usize,
    pub representative_dim: usize,
    pub delta: FactoredPoly,
    pub factors: Vec<FactorInvariants>,
    pub skipped: Vec<RatPoly>,
    pub t_minus_one: Option<WittClassQ>,
    pub profile: SignatureProfile,
    pub metabolic: bool,
    pub order: Order,
}

impl InvariantReport {
    /// Factors whose rational invariants are only necessary conditions.
    pub fn flagged(&self) -> Vec<&RatPoly> {
        self.factors.iter().filter(|f| f.needs_review).map(|f| &f.factor).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "input": self.input,
            "dim": self.dim,
            "representative_dim": self.representative_dim,
            "delta": {
                "unit": format_rat(&self.delta.unit),
                "factors": self.delta.factors.iter().map(|(f, e)| json!([f.to_string(), e])).collect::<Vec<_>>(),
            },
            "factors": self.factors.iter().map(FactorInvariants::to_json).collect::<Vec<_>>(),
            "skipped_pairs": self.skipped.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "flagged": self.flagged().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "t_minus_one_class": self.t_minus_one.as_ref().map(|w| w.entries().iter().map(format_rat).collect::<Vec<_>>()),
            "arc_profile": self.profile.to_json(),
            "metabolic": self.metabolic,
            "order": self.order.to_string(),
        })
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input: {}", self.input)?;
        writeln!(f, "dimension {} (nonsingular representative {})", self.dim, self.representative_dim)?;
        writeln!(f, "Delta_S = {}", self.delta)?;
        if let Some(w) = &self.t_minus_one {
            writeln!(f, "t - 1 piece: {w}")?;
        }
        for fi in &self.factors {
            let mu: Vec<String> = fi.mu.iter().map(|(p, m)| format!("{p}:{m:+}")).collect();
            writeln!(
                f,
                "  ({})^{}: eps={} d={} sigma={} mu=[{}]{}",
                fi.factor,
                fi.exponent,
                fi.epsilon,
                fi.discriminant,
                fi.sigma,
                mu.join(" "),
                if fi.needs_review { " (degree >= 4, review)" } else { "" }
            )?;
        }
        for s in &self.skipped {
            writeln!(f, "  {s}: non-symmetric, skipped")?;
        }
        for a in &self.profile.arcs {
            writeln!(f, "  arc ({:.4}, {:.4}) deg: {}", a.start_deg, a.end_deg, a.value)?;
        }
        writeln!(f, "metabolic: {}", self.metabolic)?;
        write!(f, "order: {}", self.order)
    }
}

pub fn report(a: &DirectedMatrix, input: &str) -> Result<InvariantReport> {
    let profile = signature_profile(a)?;
    let rep = nonsingular_representative(a)?;
    let analysis = Analysis::new(&rep)?;
    let order = order_with(&rep, &profile, Some(&analysis))?;
    Ok(InvariantReport {
        input: input.to_string(),
        dim: a.dim(),
        representative_dim: rep.dim(),
        metabolic: order == Order::One,
        delta: analysis.delta,
        factors: analysis.factors,
        skipped: analysis.skipped,
        t_minus_one: analysis.t_minus_one,
        profile,
        order,
    })
}
