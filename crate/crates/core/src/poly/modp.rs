//! Dense polynomials over F_p for word-sized odd primes p < 2^31.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Coefficients lowest degree first, reduced into [0, p), no trailing zeros.
pub(crate) type Fp = Vec<u64>;

pub(crate) fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    powu(a, p - 2, p)
}

fn powu(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv(l, p);
            a.iter().map(|&c| c * li % p).collect()
        }
    }
}

pub(crate) fn div_rem(a: &Fp, d: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!d.is_empty(), "division by zero polynomial mod p");
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (Vec::new(), a.clone());
    }
    let li = inv(*d.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] * li % p;
        if c != 0 {
            for (j, &y) in d.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * y % p) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Fp, d: &Fp, p: u64) -> Fp {
    div_rem(a, d, p).1
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns (g, s, t) with s a + t b = g = gcd(a, b), g monic.
pub(crate) fn ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let l = inv(*r0.last().unwrap(), p);
    let sc = |v: &Fp| trim(v.iter().map(|&c| c * l % p).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

pub(crate) fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// base^e mod (m, p).
pub(crate) fn pow_mod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        result = rem(&mul(&result, &result, p), m, p);
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
    }
    rem(&result, m, p)
}

/// Irreducible monic factors of a monic squarefree f over F_p (p odd).
pub(crate) fn factor_squarefree(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let mut out = Vec::new();
    let mut h = f.clone();
    let x: Fp = vec![0, 1];
    let pb = BigUint::from(p);
    let mut w = x.clone();
    let mut d = 0usize;
    // distinct-degree split
    while h.len() > 1 && 2 * (d + 1) < h.len() {
        d += 1;
        w = pow_mod(&w, &pb, &h, p);
        let g = gcd(&h, &sub(&w, &x, p), p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, &mut out);
            h = div_rem(&h, &g, p).0;
            w = rem(&w, &h, p);
        }
    }
    if h.len() > 1 {
        out.push(monic(&h, p));
    }
    out.sort();
    out
}

fn equal_degree(g: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = g.len() - 1;
    if n == d {
        out.push(monic(g, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = sub(&pow_mod(&a, &e, g, p), &vec![1], p);
        let s = gcd(g, &b, p);
        if s.len() > 1 && s.len() < g.len() {
            let rest = div_rem(g, &s, p).0;
            equal_degree(&s, d, p, rng, out);
            equal_degree(&rest, d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // t^2 + 1 splits mod 5 as (t - 2)(t - 3), irreducible mod 7
        assert_eq!(factor_squarefree(&vec![1, 0, 1], 5, &mut rng), vec![vec![2, 1], vec![3, 1]]);
        assert_eq!(factor_squarefree(&vec![1, 0, 1], 7, &mut rng), vec![vec![1, 0, 1]]);
        // t^p - t is the product of all linear factors
        let mut f = vec![0u64; 12];
        f[11] = 1;
        f[1] = 10;
        let facs = factor_squarefree(&f, 11, &mut rng);
        assert_eq!(facs.len(), 11);
        assert!(facs.iter().all(|g| g.len() == 2));
    }

    #[test]
    fn product_of_factors_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = 13;
        // random squarefree monic polynomials of degree 9
        for seed in 0..20u64 {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let mut f: Fp = (0..9).map(|_| r.gen_range(0..p)).collect();
            f.push(1);
            if gcd(&f, &derivative(&f, p), p).len() > 1 {
                continue;
            }
            let facs = factor_squarefree(&f, p, &mut rng);
            let prod = facs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, p));
            assert_eq!(prod, f);
        }
    }

    #[test]
    fn bezout() {
        let p = 17;
        let a = vec![3, 0, 1];
        let b = vec![5, 1];
        let (g, s, t) = ext_gcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }
}
