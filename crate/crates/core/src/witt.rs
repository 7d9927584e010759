//! Witt classes of symmetric forms over Q, R and the residue fields F_p.
//!
//! A class over Q is kept as a diagonal representative with square-free
//! integer entries. Classes over F_p are stored by their complete invariants:
//! the rank mod 2 and the signed discriminant (-1)^{k(k-1)/2} u_1 ... u_k.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, is_prime, legendre, prime_divisors, split_unit, squarefree_part, Int, Rat};
use crate::linalg::{congruent_diagonalize, RatMatrix};

/// Element of W(Q) given by a diagonal representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittClassQ {
    entries: Vec<Rat>,
}

impl WittClassQ {
    /// Entries are replaced by their square-free representatives.
    pub fn from_diagonal(entries: &[Rat]) -> Result<WittClassQ> {
        let entries = entries
            .iter()
            .map(|a| squarefree_part(a).map(|c| Rat::from_integer(c.representative().clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(WittClassQ { entries })
    }

    pub fn zero() -> WittClassQ {
        WittClassQ { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&self, other: &WittClassQ) -> WittClassQ {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        WittClassQ { entries }
    }

    pub fn negate(&self) -> WittClassQ {
        WittClassQ {
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    /// {2} together with every prime dividing an entry.
    pub fn candidate_primes(&self) -> Vec<Int> {
        candidate_primes(&self.entries)
    }
}

impl fmt::Display for WittClassQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.entries.iter().map(|a| format!("<{a}>")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// {2} together with every prime dividing a numerator or denominator of `values`.
pub fn candidate_primes(values: &[Rat]) -> Vec<Int> {
    let mut set = BTreeSet::new();
    set.insert(int(2));
    for v in values.iter().filter(|v| !v.is_zero()) {
        set.extend(prime_divisors(v.numer()));
        set.extend(prime_divisors(v.denom()));
    }
    set.into_iter().collect()
}

/// Element of W(F_p). For p = 2 only the rank mod 2 is meaningful and
/// `disc_square` is always true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittClassFp {
    pub p: Int,
    pub rank_mod_2: u8,
    pub disc_square: bool,
}

impl WittClassFp {
    pub fn zero(p: &Int) -> WittClassFp {
        WittClassFp {
            p: p.clone(),
            rank_mod_2: 0,
            disc_square: true,
        }
    }

    /// The class of <u_1, ..., u_k> for units u_i, given as Legendre symbols.
    fn from_symbols(p: &Int, symbols: &[i32]) -> Result<WittClassFp> {
        let k = symbols.len();
        if *p == int(2) {
            return Ok(WittClassFp {
                p: p.clone(),
                rank_mod_2: (k % 2) as u8,
                disc_square: true,
            });
        }
        let mut d: i32 = symbols.iter().product();
        if (k * (k.max(1) - 1) / 2) % 2 == 1 {
            d *= legendre(&int(-1), p)?;
        }
        Ok(WittClassFp {
            p: p.clone(),
            rank_mod_2: (k % 2) as u8,
            disc_square: d == 1,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.rank_mod_2 == 0 && self.disc_square
    }

    pub fn add(&self, other: &WittClassFp) -> Result<WittClassFp> {
        if self.p != other.p {
            return Err(Error::invalid(format!("adding classes over F_{} and F_{}", self.p, other.p)));
        }
        if self.p == int(2) {
            return Ok(WittClassFp {
                p: self.p.clone(),
                rank_mod_2: self.rank_mod_2 ^ other.rank_mod_2,
                disc_square: true,
            });
        }
        // d(k1 + k2) = d(k1) d(k2) (-1)^{k1 k2}
        let mut sq = self.disc_square == other.disc_square;
        if self.rank_mod_2 == 1 && other.rank_mod_2 == 1 && legendre(&int(-1), &self.p)? == -1 {
            sq = !sq;
        }
        Ok(WittClassFp {
            p: self.p.clone(),
            rank_mod_2: self.rank_mod_2 ^ other.rank_mod_2,
            disc_square: sq,
        })
    }

    /// Additive order: 1, 2 or 4.
    pub fn order(&self) -> u32 {
        if self.is_trivial() {
            1
        } else if self.rank_mod_2 == 1 && self.p.mod_floor(&int(4)) == int(3) {
            4
        } else {
            2
        }
    }
}

impl fmt::Display for WittClassFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == int(2) {
            write!(f, "W(F_2): e={}", self.rank_mod_2)
        } else {
            let d = if self.disc_square { "square" } else { "nonsquare" };
            write!(f, "W(F_{}): e={}, d={d}", self.p, self.rank_mod_2)
        }
    }
}

/// The Witt class of a nonsingular symmetric matrix.
pub fn witt_class(b: &RatMatrix) -> Result<WittClassQ> {
    if !b.is_symmetric() {
        return Err(Error::invalid("Witt class of a non-symmetric matrix"));
    }
    let (d, _) = congruent_diagonalize(b)?;
    if d.iter().any(Zero::is_zero) {
        return Err(Error::invalid("Witt class of a singular form"));
    }
    WittClassQ::from_diagonal(&d)
}

/// Signature of the real completion.
pub fn boundary_infinity(w: &WittClassQ) -> i64 {
    w.entries.iter().map(|a| if a.is_positive() { 1 } else { -1 }).sum()
}

/// The second residue map W(Q) -> W(F_p).
pub fn boundary_p(w: &WittClassQ, p: &Int) -> Result<WittClassFp> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let two = *p == int(2);
    let mut symbols = Vec::new();
    for a in &w.entries {
        let (v, num, den) = split_unit(a, p);
        if v.rem_euclid(2) == 1 {
            symbols.push(if two { 1 } else { legendre(&num, p)? * legendre(&den, p)? });
        }
    }
    WittClassFp::from_symbols(p, &symbols)
}

/// Whether w = 0 in W(Q): zero signature and every residue trivial.
pub fn is_trivial_wittq(w: &WittClassQ) -> Result<bool> {
    if boundary_infinity(w) != 0 {
        return Ok(false);
    }
    for p in w.candidate_primes() {
        if !boundary_p(w, &p)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest k in {1, 2, 4} with k w = 0, or None for classes of nonzero signature.
pub fn order_wittq(w: &WittClassQ) -> Result<Option<u32>> {
    if boundary_infinity(w) != 0 {
        return Ok(None);
    }
    let mut acc = w.clone();
    for k in [1u32, 2, 4] {
        if k > 1 {
            acc = acc.add(&acc);
        }
        if is_trivial_wittq(&acc)? {
            return Ok(Some(k));
        }
    }
    Err(Error::Internal(format!("torsion class {w} has order > 4")))
}
