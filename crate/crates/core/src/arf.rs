//! Quadratic forms over F_2 from integral directed matrices, and the Arf invariant.
//!
//! Vectors of F_2^n are bit masks (n <= 64). The form is q(x) = x^T A x mod 2,
//! with polarization B_q = (A + A^T) mod 2.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::seifert::{SeifertCouple, Side};

/// Above this dimension [`arf`] uses a symplectic basis instead of counting.
pub const MAJORITY_DIM_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2QuadForm {
    dim: usize,
    /// Row i of A mod 2 as a bit mask.
    gen: Vec<u64>,
    polar: Vec<u64>,
}

fn bit(x: u64, i: usize) -> bool {
    (x >> i) & 1 == 1
}

impl F2QuadForm {
    /// Reduce an integral square matrix mod 2.
    pub fn from_matrix(a: &RatMatrix) -> Result<F2QuadForm> {
        if !a.is_square() {
            return Err(Error::invalid("quadratic form of a non-square matrix"));
        }
        if !a.is_integral() {
            return Err(Error::invalid("quadratic form of a non-integral matrix"));
        }
        let n = a.rows();
        if n > 64 {
            return Err(Error::limit(format!("F_2 forms are limited to dimension 64, got {n}")));
        }
        let mut gen = vec![0u64; n];
        for (i, row) in gen.iter_mut().enumerate() {
            for j in 0..n {
                if a.get(i, j).to_integer().is_odd() {
                    *row |= 1 << j;
                }
            }
        }
        let polar = (0..n)
            .map(|i| {
                let col = (0..n).fold(0u64, |acc, j| acc | (((gen[j] >> i) & 1) << j));
                gen[i] ^ col
            })
            .collect();
        Ok(F2QuadForm { dim: n, gen, polar })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: u64) -> u8 {
        let mut s = 0u32;
        for (i, row) in self.gen.iter().enumerate() {
            if bit(x, i) {
                s += (row & x).count_ones();
            }
        }
        (s % 2) as u8
    }

    /// B_q(x, y) = x^T B_q y mod 2.
    pub fn polar(&self, x: u64, y: u64) -> u8 {
        let mut s = 0u32;
        for (i, row) in self.polar.iter().enumerate() {
            if bit(x, i) {
                s += (row & y).count_ones();
            }
        }
        (s % 2) as u8
    }

    /// Rows of the polarization matrix as bit masks.
    pub fn polarization(&self) -> &[u64] {
        &self.polar
    }

    pub fn polarization_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| bit(self.polar[i], j) as u8).collect())
            .collect()
    }

    pub fn orthogonal_sum(&self, other: &F2QuadForm) -> Result<F2QuadForm> {
        let n = self.dim + other.dim;
        if n > 64 {
            return Err(Error::limit(format!("F_2 forms are limited to dimension 64, got {n}")));
        }
        let shift = |v: &[u64]| v.iter().map(|r| r << self.dim).collect::<Vec<_>>();
        let mut gen = self.gen.clone();
        gen.extend(shift(&other.gen));
        let mut polar = self.polar.clone();
        polar.extend(shift(&other.polar));
        Ok(F2QuadForm { dim: n, gen, polar })
    }
}

/// The form of one side of an integral couple. Both sides define the same q,
/// since A^- - A^+ is skew with zero diagonal; this is checked.
pub fn quad_form(c: &SeifertCouple, side: Side) -> Result<F2QuadForm> {
    let q = F2QuadForm::from_matrix(c.side(side))?;
    let other = F2QuadForm::from_matrix(c.side(side.other()))?;
    let diag_agree = (0..q.dim).all(|i| bit(q.gen[i], i) == bit(other.gen[i], i));
    if !diag_agree || q.polar != other.polar {
        return Err(Error::Internal("the two sides of the couple give different F_2 forms".into()));
    }
    Ok(q)
}

fn f2_rank(rows: &[u64]) -> usize {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for col in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&i| bit(rows[i], col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && bit(*r, col) {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

pub fn is_regular(q: &F2QuadForm) -> bool {
    f2_rank(&q.polar) == q.dim
}

/// Arf invariant by majority: 1 iff q takes the value 1 on more than half of F_2^n.
pub fn arf_majority(q: &F2QuadForm) -> Result<u8> {
    if !is_regular(q) {
        return Err(Error::NotRegular);
    }
    if q.dim > 32 {
        return Err(Error::limit(format!("majority count over 2^{} vectors", q.dim)));
    }
    let ones = (0..1u64 << q.dim).filter(|&x| q.eval(x) == 1).count() as u64;
    Ok(u8::from(2 * ones > 1u64 << q.dim))
}

/// Arf invariant from a symplectic basis (a_i, b_i) of B_q: Σ q(a_i) q(b_i).
pub fn arf_symplectic(q: &F2QuadForm) -> Result<u8> {
    if !is_regular(q) {
        return Err(Error::NotRegular);
    }
    let mut rest: Vec<u64> = (0..q.dim).map(|i| 1u64 << i).collect();
    let mut total = 0u8;
    while let Some(a) = rest.pop() {
        let pos = rest
            .iter()
            .position(|&v| q.polar(a, v) == 1)
            .ok_or_else(|| Error::Internal("polarization degenerate during symplectic reduction".into()))?;
        let b = rest.swap_remove(pos);
        total ^= q.eval(a) & q.eval(b);
        // project the remaining vectors off the hyperbolic pair (a, b)
        for v in rest.iter_mut() {
            let mut w = *v;
            if q.polar(*v, b) == 1 {
                w ^= a;
            }
            if q.polar(*v, a) == 1 {
                w ^= b;
            }
            *v = w;
        }
    }
    Ok(total)
}

pub fn arf(q: &F2QuadForm) -> Result<u8> {
    if q.dim <= MAJORITY_DIM_LIMIT {
        arf_majority(q)
    } else {
        arf_symplectic(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use proptest::prelude::*;

    fn form(rows: &[&[i64]]) -> F2QuadForm {
        F2QuadForm::from_matrix(&RatMatrix::from_i64(rows)).unwrap()
    }

    fn couple_5_2433() -> SeifertCouple {
        SeifertCouple::from_i64(
            &[&[1, 0, -1, 0], &[0, 1, 0, -1], &[0, -1, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 1, -1, -1], &[-1, 1, 0, -1], &[0, -1, 1, 1], &[1, 0, -1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn example_5_2433() {
        let c = couple_5_2433();
        let q = quad_form(&c, Side::Plus).unwrap();
        assert_eq!(
            q.polarization_matrix(),
            vec![vec![0, 0, 1, 0], vec![0, 0, 1, 1], vec![1, 1, 0, 0], vec![0, 1, 0, 0]]
        );
        let qm = F2QuadForm::from_matrix(c.a_minus()).unwrap();
        for x in 0..16u64 {
            assert_eq!(q.eval(x), qm.eval(x));
        }
        assert!(is_regular(&q));
        assert_eq!(arf(&q).unwrap(), 1);
        assert_eq!(arf_symplectic(&q).unwrap(), 1);
    }

    #[test]
    fn small_examples() {
        let z = form(&[&[0, 0], &[0, 0]]);
        assert!((0..4).all(|x| z.eval(x) == 0));
        assert!(!is_regular(&z));
        assert_eq!(arf(&z), Err(Error::NotRegular));
        let q = form(&[&[1, 1], &[0, 1]]);
        assert!(is_regular(&q));
        assert_eq!(q.polarization_matrix(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!((0..4).map(|x| q.eval(x)).collect::<Vec<_>>(), vec![0, 1, 1, 1]);
        assert_eq!(arf(&q).unwrap(), 1);
        assert_eq!(arf(&form(&[&[0, 1], &[0, 0]])).unwrap(), 0);
        let half = RatMatrix::from_rows(vec![vec![rat_int(1), crate::exact::rat(1, 2)], vec![rat_int(0), rat_int(1)]]).unwrap();
        assert!(F2QuadForm::from_matrix(&half).is_err());
    }

    fn arb_form(max_g: usize) -> impl Strategy<Value = F2QuadForm> {
        (1..=max_g).prop_flat_map(|g| {
            let n = 2 * g;
            proptest::collection::vec(0i64..=1, n * n).prop_map(move |v| {
                let rows = (0..n).map(|i| (0..n).map(|j| rat_int(v[i * n + j])).collect()).collect();
                F2QuadForm::from_matrix(&RatMatrix::from_rows(rows).unwrap()).unwrap()
            })
        })
    }

    /// A form vanishing on span(e_1..e_g): A = [[0, X], [0, Y]].
    fn arb_metabolic(g: usize) -> impl Strategy<Value = F2QuadForm> {
        let n = 2 * g;
        proptest::collection::vec(0i64..=1, n * n).prop_map(move |v| {
            let rows = (0..n)
                .map(|i| (0..n).map(|j| rat_int(if i < g && j < g { 0 } else { v[i * n + j] })).collect())
                .collect();
            F2QuadForm::from_matrix(&RatMatrix::from_rows(rows).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn polarization_identity(q in arb_form(4), x in 0u64..256, y in 0u64..256) {
            let mask = (1u64 << q.dim()) - 1;
            let (x, y) = (x & mask, y & mask);
            prop_assert_eq!(q.polar(x, y), q.eval(x ^ y) ^ q.eval(x) ^ q.eval(y));
        }

        #[test]
        fn majority_matches_symplectic(q in arb_form(6)) {
            prop_assume!(is_regular(&q));
            prop_assert_eq!(arf_majority(&q).unwrap(), arf_symplectic(&q).unwrap());
        }

        #[test]
        fn arf_is_additive(a in arb_form(3), b in arb_form(3)) {
            prop_assume!(is_regular(&a) && is_regular(&b));
            let s = a.orthogonal_sum(&b).unwrap();
            prop_assert_eq!(arf(&s).unwrap(), arf(&a).unwrap() ^ arf(&b).unwrap());
        }

        #[test]
        fn metabolic_forms_have_arf_zero(q in arb_metabolic(3)) {
            prop_assume!(is_regular(&q));
            prop_assert_eq!(arf(&q).unwrap(), 0);
        }
    }
}
