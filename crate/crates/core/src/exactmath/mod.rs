//! Exact integer and rational linear algebra.
//!
//! Everything in the crate is built on arbitrary-precision integers
//! ([`BigInt`]) and normalized rationals ([`Rational`]); there is no floating
//! point anywhere in the computational core.

mod linalg;
mod lp;
mod snf;

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use linalg::{canonical_basis, nullspace, rank, rref, solve_in_span, CanonicalBasis};
pub use lp::{lp_feasible, Feasibility};
pub use snf::{lattice_index, saturate, smith_normal_form, Saturation, SmithForm};

/// Exact rational number, always stored in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Embeds an integer as a rational.
pub fn rat_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Formats a rational as `p/q`, or as a bare integer when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// A vector of arbitrary-precision integers: an element of a lattice `Z^n`.
///
/// Ordering is lexicographic, which is the canonical vertex order used
/// throughout.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        IntVector(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Dot product with a rational vector.
    pub fn dot_rational(&self, other: &[Rational]) -> Rational {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| b * a)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Greatest common divisor of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divides out the content; the zero vector is returned unchanged.
    pub fn primitive(&self) -> IntVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|x| x / &g).collect())
    }

    /// Scales a rational vector to the primitive integer vector pointing the same way.
    pub fn primitive_from_rationals(v: &[Rational]) -> IntVector {
        let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints = v.iter().map(|x| (x * &lcm).to_integer()).collect();
        IntVector(ints).primitive()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().cloned().map(Rational::from_integer).collect()
    }

    /// Entries as `i64`, if all of them fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Largest absolute value among the entries.
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntVector(v)
    }
}

/// Dense integer matrix with explicit dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors of equal length `cols`.
    pub fn from_rows(rows: &[IntVector], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for j in 0..cols {
                m.data[i * cols + j] = r[j].clone();
            }
        }
        m
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(&vs, cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).0).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += k * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(source, j) * k;
            self.data[target * self.cols + j] += v;
        }
    }

    /// col[target] += k * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, source) * k;
            self.data[i * self.cols + target] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_format_round_trips() {
        for r in [rat(5, 2), rat(-5, 2), rat(4, 2), rat(0, 7)] {
            let s = format_rational(&r);
            assert_eq!(parse_rational(&s), Some(r));
        }
        assert_eq!(format_rational(&rat(-10, 4)), "-5/2");
        assert_eq!(format_rational(&rat(6, 3)), "2");
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn primitive_vectors() {
        let v = IntVector::from_i64s(&[4, -6, 0]);
        assert_eq!(v.primitive(), IntVector::from_i64s(&[2, -3, 0]));
        assert_eq!(IntVector::zeros(2).primitive(), IntVector::zeros(2));
        let r = vec![rat(1, 2), rat(-3, 4)];
        assert_eq!(IntVector::primitive_from_rationals(&r), IntVector::from_i64s(&[2, -3]));
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_i64s(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(m.det(), BigInt::from(6));
        let s = IntMatrix::from_i64s(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.det(), BigInt::from(-1));
        let z = IntMatrix::from_i64s(&[&[1, 2], &[2, 4]]);
        assert_eq!(z.det(), BigInt::zero());
    }
}
