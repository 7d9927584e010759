//! Factorization over Q: squarefree decomposition, factoring modulo a small
//! prime, Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Fp};
use super::{RatPoly, DEGREE_CAP};
use crate::error::{Error, Result};
use crate::exact::{Int, Rat};

/// Upper limit on recombination trials before giving up.
const RECOMBINATION_LIMIT: u64 = 1 << 22;

/// f = unit * product of factor^exponent, factors monic, irreducible and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: Rat,
    pub factors: Vec<(RatPoly, u32)>,
}

impl FactoredPoly {
    pub fn product(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::constant(self.unit.clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Exponent of the monic irreducible `f` (0 when absent).
    pub fn exponent_of(&self, f: &RatPoly) -> u32 {
        let m = f.monic();
        self.factors
            .iter()
            .find(|(g, _)| *g == m)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl std::fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(crate::exact::format_rat(&self.unit));
        }
        for (g, e) in &self.factors {
            let s = if g.degree() == Some(1) && *e == 1 && parts.is_empty() && self.factors.len() == 1 {
                g.to_string()
            } else {
                format!("({g})")
            };
            parts.push(if *e > 1 { format!("{s}^{e}") } else { s });
        }
        f.write_str(&parts.join(" * "))
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles over Q.
pub fn factor_q(f: &RatPoly) -> Result<FactoredPoly> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::invalid("cannot factor the zero polynomial"))?;
    if deg > DEGREE_CAP {
        return Err(Error::limit(format!("degree {deg} exceeds the factorization cap {DEGREE_CAP}")));
    }
    let unit = f.leading();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for g in factor_squarefree_z(&primitive(&part))? {
            factors.push((to_monic_rat(&g), mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(FactoredPoly { unit, factors })
}

/// Whether the irreducible f shares a factor with its bar (equivalently f ~ bar f).
pub fn is_symmetric_irreducible(f: &RatPoly) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::invalid("symmetry class needs a nonconstant polynomial"));
    }
    if !factor_q(f)?.is_irreducible() {
        return Err(Error::invalid(format!("{f} is reducible")));
    }
    Ok(f.gcd(&f.bar()?).degree() != Some(0))
}

/// Yun's algorithm on a monic polynomial: pairs (a_i, i) with f = prod a_i^i.
fn squarefree_decomposition(f: &RatPoly) -> Vec<(RatPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).unwrap();
    let mut c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).unwrap();
        c = d.div_exact(&a).unwrap();
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

type IntPoly = Vec<Int>;

/// Primitive integer polynomial with positive leading coefficient associated to f.
fn primitive(f: &RatPoly) -> IntPoly {
    let den = f
        .coeffs()
        .iter()
        .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Int> = f.coeffs().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    normalize_int(ints)
}

fn normalize_int(mut v: IntPoly) -> IntPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(Int::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    let sign = if v.last().unwrap().is_negative() { -Int::one() } else { Int::one() };
    let g = g * sign;
    v.into_iter().map(|c| c / &g).collect()
}

fn to_monic_rat(g: &IntPoly) -> RatPoly {
    RatPoly::new(g.iter().map(|c| Rat::from_integer(c.clone())).collect()).monic()
}

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division over Z; `None` if b does not divide a with integral quotient.
fn int_div_exact(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let lead = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![Int::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, m) = r[k + db].div_rem(lead);
        if !m.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn reduce(a: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    modp::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn lift_fp(a: &Fp) -> IntPoly {
    a.iter().map(|&c| Int::from(c)).collect()
}

fn mod_poly(a: &IntPoly, m: &Int) -> IntPoly {
    let mut v: IntPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn small_odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Factors a primitive squarefree integer polynomial into primitive irreducibles.
fn factor_squarefree_z(h: &IntPoly) -> Result<Vec<IntPoly>> {
    let n = h.len() - 1;
    if n <= 1 {
        return Ok(vec![h.clone()]);
    }
    let lc = h.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Pick the good prime with the fewest modular factors among the first few.
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut good = 0;
    for p in small_odd_primes() {
        if (&lc % p).is_zero() {
            continue;
        }
        let hp = modp::monic(&reduce(h, p), p);
        if modp::gcd(&hp, &modp::derivative(&hp, p), p).len() > 1 {
            continue;
        }
        let facs = modp::factor_squarefree(&hp, p, &mut rng);
        if facs.len() == 1 {
            return Ok(vec![h.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        good += 1;
        if good == 5 {
            break;
        }
    }
    let (p, modular) = best.unwrap();

    // Mignotte-style coefficient bound for lc times any factor.
    let norm2: Int = h.iter().map(|c| c * c).sum();
    let bound = lc.abs() * (Int::one() << n) * (norm2.sqrt() + 1u32);
    let target = bound * 2u32;
    let pb = Int::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= target {
        modulus *= &pb;
        k += 1;
    }

    let lc_inv = mod_inverse(&lc, &modulus);
    let monic_h = mod_poly(&h.iter().map(|c| c * &lc_inv).collect(), &modulus);
    let mut lifted = hensel_lift_all(&monic_h, &modular, p, k);

    let mut rest = h.clone();
    let mut found = Vec::new();
    let mut trials = 0u64;
    let mut s = 1;
    let half = &modulus / 2u32;
    'outer: while 2 * s <= lifted.len() {
        let lc_rest = rest.last().unwrap().clone();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            trials += 1;
            if trials > RECOMBINATION_LIMIT {
                return Err(Error::limit("factor recombination exceeded its trial budget"));
            }
            let mut g: IntPoly = vec![lc_rest.clone()];
            for &i in &idx {
                g = mod_poly(&int_mul(&g, &lifted[i]), &modulus);
            }
            let g: IntPoly = g
                .into_iter()
                .map(|c| if c > half { c - &modulus } else { c })
                .collect();
            let g = normalize_int(g);
            if let Some(q) = int_div_exact(&rest, &g) {
                found.push(g);
                rest = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        s += 1;
    }
    if rest.len() > 1 {
        found.push(normalize_int(rest));
    }
    Ok(found)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn mod_inverse(a: &Int, m: &Int) -> Int {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts monic modular factors of the monic target to modulus p^k.
fn hensel_lift_all(target: &IntPoly, factors: &[Fp], p: u64, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![target.clone()];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[Fp]| fs.iter().fold(vec![1u64], |acc, f| modp::mul(&acc, f, p));
    let g = prod(&factors[..mid]);
    let f = prod(&factors[mid..]);
    let (gl, fl) = hensel_lift_pair(target, &g, &f, p, k);
    let mut out = hensel_lift_all(&gl, &factors[..mid], p, k);
    out.extend(hensel_lift_all(&fl, &factors[mid..], p, k));
    out
}

/// Linear Hensel lifting of target = g f (mod p), g and f monic and coprime mod p.
fn hensel_lift_pair(target: &IntPoly, g: &Fp, f: &Fp, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, sigma, tau) = modp::ext_gcd(g, f, p);
    debug_assert_eq!(one, vec![1]);
    let pb = Int::from(p);
    let mut big_g = lift_fp(g);
    let mut big_f = lift_fp(f);
    let mut m = pb.clone();
    for _ in 1..k {
        let gf = int_mul(&big_g, &big_f);
        let n = target.len().max(gf.len());
        let diff: IntPoly = (0..n)
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = gf.get(i).cloned().unwrap_or_default();
                (a - b) / &m
            })
            .collect();
        let e = reduce(&diff, p);
        let te = modp::mul(&tau, &e, p);
        let (q, r) = modp::div_rem(&te, g, p);
        let fcorr = modp::add(&modp::mul(&sigma, &e, p), &modp::mul(&q, f, p), p);
        add_scaled(&mut big_g, &r, &m);
        add_scaled(&mut big_f, &fcorr, &m);
        m *= &pb;
    }
    (mod_poly(&big_g, &m), mod_poly(&big_f, &m))
}

fn add_scaled(a: &mut IntPoly, c: &Fp, m: &Int) {
    if a.len() < c.len() {
        a.resize(c.len(), Int::zero());
    }
    for (i, &x) in c.iter().enumerate() {
        a[i] += m * x;
    }
}
