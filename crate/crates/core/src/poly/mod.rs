//! Polynomials over Q.
//!
//! [`RatPoly`] stores coefficients lowest degree first. Factorization lives in
//! [`factor`], real-root isolation and unit-circle bookkeeping in [`roots`].

mod factor;
mod modp;
mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_rat, Int, Rat};

pub use factor::{factor_q, is_symmetric_irreducible, FactoredPoly};
pub use roots::{circle_arcs, sturm_isolate, ArcEnd, CircleArc, CircleArcs, CirclePoint, CircleRoot, RootInterval};

/// Largest degree accepted by the factorization and root routines.
pub const DEGREE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> RatPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> RatPoly {
        RatPoly::new(coeffs.iter().map(|&c| Rat::from_integer(Int::from(c))).collect())
    }

    pub fn zero() -> RatPoly {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> RatPoly {
        RatPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> RatPoly {
        RatPoly::new(vec![c])
    }

    /// The polynomial t.
    pub fn t() -> RatPoly {
        RatPoly::from_ints(&[0, 1])
    }

    /// The monomial c * t^k.
    pub fn monomial(c: Rat, k: usize) -> RatPoly {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        RatPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor; callers check first.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// t^d f(1/t) with d the least exponent making the result a polynomial
    /// with nonzero constant term.
    pub fn bar(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::invalid("bar of the zero polynomial"));
        }
        let low = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        Ok(RatPoly::new(self.coeffs[low..].iter().rev().cloned().collect()))
    }

    /// Whether self = c * other for some nonzero rational c.
    pub fn associated(&self, other: &RatPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }

    /// Substitute t -> c t.
    pub fn scale_var(&self, c: &Rat) -> RatPoly {
        let mut pw = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        RatPoly::new(out)
    }

    /// Cauchy bound: every complex root has absolute value strictly below it.
    pub(crate) fn cauchy_bound(&self) -> Rat {
        let lead = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }

    /// Trace polynomial g of a palindromic polynomial f of degree 2d, with
    /// f(t) = t^d g(t + 1/t). `None` if f is not palindromic of even degree.
    pub fn trace_poly(&self) -> Option<RatPoly> {
        let n = self.degree()?;
        if n % 2 != 0 {
            return None;
        }
        if (0..=n).any(|i| self.coeffs[i] != self.coeffs[n - i]) {
            return None;
        }
        let d = n / 2;
        // t^k + t^-k = T_k(u), T_0 = 2, T_1 = u, T_{k+1} = u T_k - T_{k-1}
        let u = RatPoly::t();
        let mut g = RatPoly::constant(self.coeffs[d].clone());
        let mut prev = RatPoly::constant(Rat::from_integer(Int::from(2)));
        let mut cur = u.clone();
        for k in 1..=d {
            g = &g + &cur.scale(&self.coeffs[d + k]);
            let next = &(&u * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        Some(g)
    }

    /// Res(f, g) by the Euclidean recursion.
    pub fn resultant(&self, g: &RatPoly) -> Rat {
        let (Some(m), Some(n)) = (self.degree(), g.degree()) else {
            return Rat::zero();
        };
        if n == 0 {
            return pow_rat(&g.leading(), m);
        }
        let r = self.rem(g);
        let Some(k) = r.degree() else {
            return Rat::zero();
        };
        let sign = if m * n % 2 == 1 { -Rat::one() } else { Rat::one() };
        sign * pow_rat(&g.leading(), m - k) * g.resultant(&r)
    }

    /// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
    pub fn discriminant(&self) -> Rat {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return Rat::one();
        }
        let r = self.resultant(&self.derivative()) / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rat).collect()
    }
}

fn pow_rat(x: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RatPoly {
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
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("({}/{})", a.numer(), a.denom())
            };
            match i {
                0 => f.write_str(&coef)?,
                _ => {
                    if !a.is_one() {
                        f.write_str(&coef)?;
                    }
                    f.write_str("t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn resultant_and_discriminant() {
        assert_eq!(p(&[1, 3, 1]).discriminant(), rat(5, 1));
        assert_eq!(p(&[-2, 0, 0, 1]).discriminant(), rat(-108, 1));
        assert_eq!(p(&[1, -4, 6, -4, 1]).discriminant(), rat(0, 1));
        // Res(t - a, g) = g(a)
        let g = p(&[3, -1, 0, 2]);
        assert_eq!(p(&[-5, 1]).resultant(&g), g.eval(&rat(5, 1)));
        assert_eq!(g.resultant(&p(&[-5, 1])), -g.eval(&rat(5, 1)));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        let (q, r) = p(&[1, 3, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert_eq!(r, p(&[-1]));
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        assert_eq!(p(&[1, 2, 1]).eval(&rat(1, 2)), rat(9, 4));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p(&[1, 3, 1]).bar().unwrap(), p(&[1, 3, 1]));
        assert_eq!(p(&[-2, 1]).bar().unwrap(), p(&[1, -2]));
        assert_eq!(p(&[0, 1]).bar().unwrap(), p(&[1]));
        assert!(RatPoly::zero().bar().is_err());
    }

    #[test]
    fn trace_polynomials() {
        // t^2 + t + 1 = t (u + 1)
        assert_eq!(p(&[1, 1, 1]).trace_poly().unwrap(), p(&[1, 1]));
        // t^4 - 3t^2 + 1 = t^2 (u^2 - 5)
        assert_eq!(p(&[1, 0, -3, 0, 1]).trace_poly().unwrap(), p(&[-5, 0, 1]));
        assert!(p(&[1, 2]).trace_poly().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 3, 1]).to_string(), "t^2 + 3t + 1");
        assert_eq!(RatPoly::new(vec![rat(1, 1), rat(-11, 5), rat(1, 1)]).to_string(), "t^2 - (11/5)t + 1");
        assert_eq!(p(&[-15, 30, -15]).to_string(), "-15t^2 + 30t - 15");
    }
}
