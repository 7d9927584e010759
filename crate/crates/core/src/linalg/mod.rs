//! Exact linear algebra over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_rat, Int, Rat};
use crate::poly::RatPoly;

/// Largest dimension accepted by the O(n^3) and O(n^4) routines.
pub const DIM_CAP: usize = 64;

fn check_cap(n: usize, what: &str) -> Result<()> {
    if n > DIM_CAP {
        return Err(Error::limit(format!("{what}: dimension {n} exceeds the cap {DIM_CAP}")));
    }
    Ok(())
}

/// Dense rectangular matrix of rationals, row-major. 0x0 is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Which restriction [`restrict`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictKind {
    /// W^T M W
    Form,
    /// The matrix of M on the invariant subspace spanned by W.
    Operator,
}

/// Basis of a subspace of Q^n, stored as the columns of a full-rank matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    basis: RatMatrix,
}

impl SubspaceBasis {
    pub fn new(basis: RatMatrix) -> Result<SubspaceBasis> {
        if basis.rank()? != basis.cols {
            return Err(Error::invalid("basis columns are linearly dependent"));
        }
        Ok(SubspaceBasis { basis })
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<Rat>]) -> Result<SubspaceBasis> {
        let mut m = RatMatrix::zeros(ambient, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(Error::invalid("vector length differs from the ambient dimension"));
            }
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        SubspaceBasis::new(m)
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn vector(&self, j: usize) -> Vec<Rat> {
        self.basis.col(j)
    }

    /// Whether both bases span the same subspace.
    pub fn same_span(&self, other: &SubspaceBasis) -> Result<bool> {
        if self.ambient() != other.ambient() || self.dim() != other.dim() {
            return Ok(false);
        }
        Ok(self.basis.hstack(&other.basis)?.rank()? == self.dim())
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn empty() -> RatMatrix {
        RatMatrix::zeros(0, 0)
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<RatMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        if r > 0 && c == 0 {
            return Err(Error::invalid("matrix rows are empty"));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix literal; panics on ragged input (for constants and tests).
    pub fn from_i64(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn diagonal(d: &[Rat]) -> RatMatrix {
        let mut m = RatMatrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rat).collect())
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &RatMatrix) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into self with its top-left corner at (r, c).
    pub fn paste(&mut self, r: usize, c: usize, block: &RatMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    pub fn hstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::invalid("hstack: row counts differ"));
        }
        let mut m = RatMatrix::zeros(self.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        Ok(m)
    }

    pub fn vstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.cols {
            return Err(Error::invalid("vstack: column counts differ"));
        }
        let mut m = RatMatrix::zeros(self.rows + other.rows, self.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, other);
        Ok(m)
    }

    pub fn checked_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        m.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| self.get(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }

    fn same_shape(&self, other: &RatMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::invalid(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.same_shape(other)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.same_shape(other)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> Result<usize> {
        check_cap(self.rows.max(self.cols), "rank")?;
        Ok(self.rref().1.len())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination after clearing
    /// row denominators.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        check_cap(self.rows, "det")?;
        let n = self.rows;
        let mut scale = Int::one();
        let mut a: Vec<Vec<Int>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let l = row.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            a.push(row.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect());
        }
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(Rat::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let d = if n == 0 { Int::one() } else { a[n - 1][n - 1].clone() };
        Ok(Rat::new(sign * d, scale))
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::invalid("inverse of a non-square matrix"));
        }
        check_cap(self.rows, "inverse")?;
        let n = self.rows;
        let aug = self.hstack(&RatMatrix::identity(n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular("matrix is not invertible".into()));
        }
        Ok(r.submatrix(0, n, n, n))
    }

    /// Solves self * X = rhs exactly; `None` if inconsistent. Requires full column rank.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<Option<RatMatrix>> {
        if self.rows != rhs.rows {
            return Err(Error::invalid("solve: row counts differ"));
        }
        check_cap(self.rows.max(self.cols), "solve")?;
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        if pivots.len() < self.cols {
            return Err(Error::invalid("solve: coefficient matrix lacks full column rank"));
        }
        Ok(Some(r.submatrix(0, self.cols, self.cols, rhs.cols)))
    }

    /// Basis of the right null space (columns).
    pub fn kernel(&self) -> Result<Vec<Vec<Rat>>> {
        check_cap(self.rows.max(self.cols), "kernel")?;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            out.push(clear_denominators(v));
        }
        Ok(out)
    }

    /// Evaluates a polynomial at this square matrix.
    pub fn poly_eval(&self, p: &RatPoly) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::invalid("polynomial of a non-square matrix"));
        }
        let n = self.rows;
        let mut acc = RatMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.checked_mul(self)?;
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    pub fn map<F: Fn(&Rat) -> Rat>(&self, f: F) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Scales a nonzero vector to a primitive integer vector whose first nonzero entry is positive.
fn clear_denominators(v: Vec<Rat>) -> Vec<Rat> {
    let l = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(Int::one(), |x| {
        if x.is_negative() {
            -Int::one()
        } else {
            Int::one()
        }
    });
    let g = if g.is_zero() { Int::one() } else { g * sign };
    ints.into_iter().map(|x| Rat::new(x, g.clone())).collect()
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_add(rhs).expect("matrix shapes agree")
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_sub(rhs).expect("matrix shapes agree")
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_mul(rhs).expect("matrix shapes agree")
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.map(|x| -x)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        if self.rows == 0 {
            return f.write_str("[]");
        }
        for (i, row) in cells.iter().enumerate() {
            f.write_str("[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c:>w$}")?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

pub fn det(m: &RatMatrix) -> Result<Rat> {
    m.det()
}

/// Basis of the right null space of M.
pub fn kernel_basis(m: &RatMatrix) -> Result<SubspaceBasis> {
    let vs = m.kernel()?;
    SubspaceBasis::from_vectors(m.cols, &vs)
}

/// Symmetric congruence diagonalization: returns (d, U) with U B U^T = diag(d), det U != 0.
///
/// Pivot rule: the first nonzero diagonal entry of the remaining block; if that
/// diagonal is zero but the block is not, the row and column of the first
/// nonzero off-diagonal entry (i, j) are added to those of i.
pub fn congruent_diagonalize(b: &RatMatrix) -> Result<(Vec<Rat>, RatMatrix)> {
    if !b.is_symmetric() {
        return Err(Error::invalid("congruence diagonalization needs a symmetric matrix"));
    }
    check_cap(b.rows, "diagonalize")?;
    let n = b.rows;
    let mut m = b.clone();
    let mut u = RatMatrix::identity(n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m.get(i, i).is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !m.get(i, j).is_zero());
                let Some((i, j)) = off else { break };
                // row_i += row_j and col_i += col_j
                add_row_col(&mut m, &mut u, i, j, &Rat::one());
                i
            }
        };
        if p != k {
            m.swap_rows(p, k);
            swap_cols(&mut m, p, k);
            u.swap_rows(p, k);
        }
        let piv = m.get(k, k).clone();
        for i in k + 1..n {
            if m.get(i, k).is_zero() {
                continue;
            }
            let f = -(m.get(i, k) / &piv);
            add_row_col(&mut m, &mut u, i, k, &f);
        }
    }
    let d = (0..n).map(|i| m.get(i, i).clone()).collect();
    Ok((d, u))
}

/// row_i += f row_j, col_i += f col_j on m; row_i += f row_j on u.
fn add_row_col(m: &mut RatMatrix, u: &mut RatMatrix, i: usize, j: usize, f: &Rat) {
    let n = m.rows;
    for c in 0..n {
        let v = m.get(i, c) + f * m.get(j, c);
        m.set(i, c, v);
    }
    for r in 0..n {
        let v = m.get(r, i) + f * m.get(r, j);
        m.set(r, i, v);
    }
    for c in 0..u.cols {
        let v = u.get(i, c) + f * u.get(j, c);
        u.set(i, c, v);
    }
}

fn swap_cols(m: &mut RatMatrix, a: usize, b: usize) {
    for r in 0..m.rows {
        let i = r * m.cols;
        m.data.swap(i + a, i + b);
    }
}

/// (#positive - #negative) entries of a diagonalization.
pub fn signature(b: &RatMatrix) -> Result<i64> {
    let (d, _) = congruent_diagonalize(b)?;
    Ok(d.iter().map(|x| x.signum().to_integer().try_into().unwrap_or(0i64)).sum())
}

/// det(S - tI), computed with the division-free Berkowitz recursion.
pub fn char_poly(s: &RatMatrix) -> Result<RatPoly> {
    if !s.is_square() {
        return Err(Error::invalid("characteristic polynomial of a non-square matrix"));
    }
    check_cap(s.rows, "char_poly")?;
    let n = s.rows;
    // p holds det(tI - A_r) for the leading r x r block, highest degree first.
    let mut p: Vec<Rat> = vec![Rat::one()];
    for r in 0..n {
        let a = s.get(r, r).clone();
        let col: Vec<Rat> = (0..r).map(|i| s.get(i, r).clone()).collect();
        let row: Vec<Rat> = (0..r).map(|j| s.get(r, j).clone()).collect();
        let lead = s.submatrix(0, 0, r, r);
        let mut t = Vec::with_capacity(r + 2);
        t.push(Rat::one());
        t.push(-a);
        let mut v = col;
        for _ in 0..r {
            let dot: Rat = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            t.push(-dot);
            v = lead.mul_vec(&v);
        }
        let mut next = vec![Rat::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i.min(r) + 1) {
                if i - j < t.len() {
                    *slot += &t[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p.reverse();
    let poly = RatPoly::new(p);
    Ok(if n % 2 == 1 { -&poly } else { poly })
}

/// Restriction of a form (W^T M W) or of an operator to the subspace spanned by W.
pub fn restrict(m: &RatMatrix, w: &SubspaceBasis, kind: RestrictKind) -> Result<RatMatrix> {
    if !m.is_square() || m.rows != w.ambient() {
        return Err(Error::invalid("restriction: matrix and subspace dimensions differ"));
    }
    let wm = w.matrix();
    match kind {
        RestrictKind::Form => {
            if !m.is_symmetric() {
                return Err(Error::invalid("form restriction needs a symmetric matrix"));
            }
            wm.transpose().checked_mul(&m.checked_mul(wm)?)
        }
        RestrictKind::Operator => {
            let image = m.checked_mul(wm)?;
            wm.solve(&image)?.ok_or(Error::NotInvariant)
        }
    }
}

/// det(A + tB) as a polynomial, by exact interpolation at integer points.
pub fn det_pencil(a: &RatMatrix, b: &RatMatrix) -> Result<RatPoly> {
    if !a.is_square() || a.rows != b.rows || !b.is_square() {
        return Err(Error::invalid("pencil needs square matrices of equal size"));
    }
    let n = a.rows;
    let xs: Vec<Rat> = (0..=n as i64).map(|k| Rat::from_integer(Int::from(k))).collect();
    let mut ys = Vec::with_capacity(n + 1);
    for x in &xs {
        ys.push(a.checked_add(&b.scale(x))?.det()?);
    }
    Ok(interpolate(&xs, &ys))
}

/// Lagrange interpolation through (xs[i], ys[i]).
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut term = RatPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = RatPoly::new(vec![-xj.clone(), Rat::one()]);
                term = (&term * &lin).scale(&(xi - xj).recip());
            }
        }
        acc = &acc + &term;
    }
    acc
}
