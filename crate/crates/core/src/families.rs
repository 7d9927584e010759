//! The K(m, n) family, embedded reference couples, and order certificates.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, is_prime, is_square_qp, Int, Place, Rat};
use crate::linalg::RatMatrix;
use crate::seifert::{h_block, validate_couple, Ring, SeifertCouple};

/// Largest |i| accepted by [`kmn_couple`].
pub const SHIFT_CAP: i64 = 16;

/// Largest k_max accepted by [`dirichlet_family`].
pub const DIRICHLET_CAP: u64 = 10_000;

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: [&str; 3] = ["6.85091", "5.2433", "kmn"];

/// K(m, n) shifted i times by the ambient action: i = 0 is
/// ([[m, 0], [0, -n]], [[m, 1], [-1, -n]]); each step adds one 2x2 layer
/// with P = [H H ... H] under all previous blocks, with H^1 on the plus side
/// for negative shifts and on the minus side for positive ones.
pub fn kmn_couple(m: &Int, n: &Int, i: i64) -> Result<SeifertCouple> {
    if i.abs() > SHIFT_CAP {
        return Err(Error::limit(format!("|i| = {} exceeds {SHIFT_CAP}", i.abs())));
    }
    let mr = Rat::from_integer(m.clone());
    let nr = Rat::from_integer(n.clone());
    let plus = RatMatrix::from_rows(vec![vec![mr.clone(), Rat::zero()], vec![Rat::zero(), -nr.clone()]])?;
    let minus = RatMatrix::from_rows(vec![vec![mr, Rat::one()], vec![-Rat::one(), -nr]])?;
    let mut c = validate_couple(plus, minus, Ring::Z)?;
    let direction = if i >= 0 { 1 } else { -1 };
    for _ in 0..i.abs() {
        let layers = c.dim() / 2;
        let mut p = RatMatrix::zeros(2, c.dim());
        for k in 0..layers {
            p.paste(0, 2 * k, &h_block());
        }
        c = c.ambient_shift(direction, 1, &p)?;
    }
    Ok(c)
}

/// Whether shift i lies outside the tabulated block patterns, so its blocks come from the recursion alone.
pub fn kmn_is_derived(i: i64) -> bool {
    i <= -2
}

/// The embedded reference couples. "kmn" is K(3, 7) at shift 0.
pub fn fixture(name: &str) -> Result<SeifertCouple> {
    match name {
        "6.85091" => SeifertCouple::from_i64(
            &[&[1, -1, -1, 0], &[-1, 0, 1, 0], &[1, -1, 0, 1], &[0, 0, 0, 1]],
            &[&[1, -2, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1]],
        ),
        "5.2433" => SeifertCouple::from_i64(
            &[&[1, 0, -1, 0], &[0, 1, 0, -1], &[0, -1, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 1, -1, -1], &[-1, 1, 0, -1], &[0, -1, 1, 1], &[1, 0, -1, 1]],
        ),
        "kmn" => kmn_couple(&int(3), &int(7), 0),
        other => Err(Error::NotFound(format!("fixture {other}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order2Certificate {
    CertifiedOrder2,
    Inconclusive,
    Inapplicable,
}

/// The two local conditions certifying order 2 when mn = 1 (mod 4): at p,
/// either mn, 4mn + 1 and mn(4mn + 1) are all non-squares, or mn(4mn + 1) is
/// a square while mn is not.
pub fn lemma_order2_criteria(m: &Int, n: &Int, p: &Int) -> Result<Order2Certificate> {
    for (label, x) in [("m", m), ("n", n), ("p", p)] {
        if !is_prime(x) {
            return Err(Error::invalid(format!("{label} = {x} is not prime")));
        }
    }
    if m == n || m.is_even() || n.is_even() {
        return Err(Error::invalid("m and n must be distinct odd primes"));
    }
    let mn = m * n;
    if mn.mod_floor(&int(4)) != int(1) {
        return Ok(Order2Certificate::Inapplicable);
    }
    let place = Place::Prime(p.clone());
    let a = Rat::from_integer(mn.clone());
    let b = Rat::from_integer(int(4) * &mn + 1);
    let ab = &a * &b;
    let (sa, sb, sab) = (is_square_qp(&a, &place)?, is_square_qp(&b, &place)?, is_square_qp(&ab, &place)?);
    if (!sa && !sb && !sab) || (sab && !sa) {
        Ok(Order2Certificate::CertifiedOrder2)
    } else {
        Ok(Order2Certificate::Inconclusive)
    }
}

/// (k, m_k, m_k prime) for m_k = 3 + 4 * 19^2 * k, k = 0..=k_max.
pub fn dirichlet_family(k_max: u64) -> Result<Vec<(u64, Int, bool)>> {
    if k_max > DIRICHLET_CAP {
        return Err(Error::limit(format!("k_max = {k_max} exceeds {DIRICHLET_CAP}")));
    }
    Ok((0..=k_max)
        .map(|k| {
            let m = int(3) + int(4 * 361) * Int::from(k);
            let prime = is_prime(&m);
            (k, m, prime)
        })
        .collect())
}
