//! Exact scalars and the number-theoretic symbols used by the invariants.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values. On top of
//! them this module provides p-adic valuations, square classes, square tests
//! in the completions of Q, and Legendre, Hilbert and Hasse symbols.

mod factor;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use factor::{factorize, is_prime, prime_divisors};

/// Arbitrary precision integer.
pub type Int = BigInt;
/// Arbitrary precision rational, always reduced with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// A place of Q: a prime p or the real place.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(Int),
    Infinity,
}

impl Place {
    pub fn prime(p: i64) -> Place {
        Place::Prime(int(p))
    }

    fn checked(&self) -> Result<&Place> {
        match self {
            Place::Prime(p) if !is_prime(p) => Err(Error::invalid(format!("{p} is not prime"))),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

/// Element of Q*/Q*^2, stored as its squarefree integer representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(Int);

impl SquareClass {
    pub fn one() -> SquareClass {
        SquareClass(Int::one())
    }

    pub fn representative(&self) -> &Int {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.0.gcd(&other.0);
        SquareClass(&self.0 / &g * (&other.0 / &g))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &Int, n: &Int) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Quadratic residue symbol of `a` modulo the odd prime `p`.
pub fn legendre(a: &Int, p: &Int) -> Result<i32> {
    if !is_prime(p) || *p == int(2) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(jacobi(a, p))
}

/// v_p(x): the exponent of p in the nonzero rational x.
pub fn padic_val(x: &Rat, p: &Int) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::invalid("p-adic valuation of zero"));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(val_int(x.numer(), p) as i64 - val_int(x.denom(), p) as i64)
}

fn val_int(n: &Int, p: &Int) -> u64 {
    let mut n = n.abs();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Splits x = p^v * u with u a p-adic unit; returns (v, numerator, denominator) of u.
pub(crate) fn split_unit(x: &Rat, p: &Int) -> (i64, Int, Int) {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut v = 0i64;
    while (&num % p).is_zero() {
        num /= p;
        v += 1;
    }
    while (&den % p).is_zero() {
        den /= p;
        v -= 1;
    }
    (v, num, den)
}

fn squarefree_int(n: &Int) -> Int {
    let mut s = if n.is_negative() { -Int::one() } else { Int::one() };
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            s *= p;
        }
    }
    s
}

/// The square class of a nonzero rational.
pub fn squarefree_part(x: &Rat) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::invalid("square class of zero"));
    }
    // num and den are coprime, so the product of their squarefree parts is squarefree.
    Ok(SquareClass(squarefree_int(x.numer()) * squarefree_int(x.denom())))
}

/// Whether the nonzero rational x is a square in Q_p (or in R for the real place).
pub fn is_square_qp(x: &Rat, place: &Place) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::invalid("square test of zero"));
    }
    match place.checked()? {
        Place::Infinity => Ok(x.is_positive()),
        Place::Prime(p) => {
            let (v, num, den) = split_unit(x, p);
            if v % 2 != 0 {
                return Ok(false);
            }
            if *p == int(2) {
                // odd squares are 1 mod 8, so 1/den = den mod 8
                let u = (num * den).mod_floor(&int(8));
                Ok(u.is_one())
            } else {
                Ok(jacobi(&num, p) * jacobi(&den, p) == 1)
            }
        }
    }
}

fn mod8(n: &Int) -> u32 {
    n.mod_floor(&int(8)).to_u32().unwrap()
}

/// Hilbert symbol (a, b) at a place of Q, as +1 or -1.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("Hilbert symbol of zero"));
    }
    match place.checked()? {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Prime(p) if *p == int(2) => {
            let (alpha, an, ad) = split_unit(a, p);
            let (beta, bn, bd) = split_unit(b, p);
            let u = mod8(&(an * ad));
            let v = mod8(&(bn * bd));
            let eps = |w: u32| ((w - 1) / 2) % 2;
            let omega = |w: u32| ((w * w - 1) / 8) % 2;
            let e = eps(u) * eps(v)
                + (alpha.rem_euclid(2) as u32) * omega(v)
                + (beta.rem_euclid(2) as u32) * omega(u);
            Ok(if e.is_multiple_of(2) { 1 } else { -1 })
        }
        Place::Prime(p) => {
            let (alpha, an, ad) = split_unit(a, p);
            let (beta, bn, bd) = split_unit(b, p);
            let leg_u = jacobi(&an, p) * jacobi(&ad, p);
            let leg_v = jacobi(&bn, p) * jacobi(&bd, p);
            let half = ((p - 1u32) / 2u32).is_odd();
            let mut s = 1;
            if half && alpha.rem_euclid(2) == 1 && beta.rem_euclid(2) == 1 {
                s = -s;
            }
            if beta.rem_euclid(2) == 1 {
                s *= leg_u;
            }
            if alpha.rem_euclid(2) == 1 {
                s *= leg_v;
            }
            Ok(s)
        }
    }
}

/// Hasse invariant of a diagonal form: the product of (a_i, a_j) over i < j.
pub fn hasse_symbol(diag: &[Rat], place: &Place) -> Result<i32> {
    if diag.iter().any(Zero::is_zero) {
        return Err(Error::invalid("Hasse symbol of a degenerate form"));
    }
    let mut s = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            s *= hilbert_symbol(&diag[i], &diag[j], place)?;
        }
    }
    Ok(s)
}

/// Parses an integer or "p/q" entry; accepts ASCII '-' and U+2212 as the sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::invalid(format!("malformed rational entry {s:?}"));
    let check = |part: &str, allow_sign: bool| {
        let digits = if allow_sign {
            part.strip_prefix('-').unwrap_or(part)
        } else {
            part
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    match t.split_once('/') {
        None => {
            if !check(&t, true) {
                return Err(bad());
            }
            Ok(Rat::from_integer(t.parse().map_err(|_| bad())?))
        }
        Some((n, d)) => {
            if !check(n, true) || !check(d, false) {
                return Err(bad());
            }
            let d: Int = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::invalid(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n.parse().map_err(|_| bad())?, d))
        }
    }
}

/// Inverse of [`parse_rat`]: "n" for integers, "n/d" otherwise.
pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
