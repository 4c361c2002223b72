//! Smith normal form with unimodular transforms, and the lattice
//! computations built on it (saturations and indices of sublattices).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntVector};
use crate::error::{Error, Result};

/// Result of [`smith_normal_form`]: `left * m * right` is diagonal with
/// entries `diag[0] | diag[1] | ...`, all nonnegative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `right`, maintained alongside it.
    pub right_inverse: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut right_inv = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        right_inv.swap_rows(t, pj);

        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                let nq = -q;
                a.add_row_multiple(i, t, &nq);
                left.add_row_multiple(i, t, &nq);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                let nq = -&q;
                a.add_col_multiple(j, t, &nq);
                right.add_col_multiple(j, t, &nq);
                right_inv.add_row_multiple(t, j, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder is smaller than the pivot: bring the smallest
                // entry of row/column t to the pivot position and repeat.
                let (mut bi, mut bj) = (t, t);
                let mut best = a.get(t, t).abs();
                for i in t + 1..rows {
                    let v = a.get(i, t).abs();
                    if !v.is_zero() && v < best {
                        best = v;
                        (bi, bj) = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let v = a.get(t, j).abs();
                    if !v.is_zero() && v < best {
                        best = v;
                        (bi, bj) = (t, j);
                    }
                }
                a.swap_rows(t, bi);
                left.swap_rows(t, bi);
                a.swap_cols(t, bj);
                right.swap_cols(t, bj);
                right_inv.swap_rows(t, bj);
                continue;
            }
            // Divisibility: every remaining entry must be a multiple of the pivot.
            let pivot = a.get(t, t).clone();
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag = (0..steps).map(|i| a.get(i, i).clone()).collect();
    SmithForm {
        diag,
        left,
        right,
        right_inverse: right_inv,
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.nrows() {
        for j in t..a.ncols() {
            let v = a.get(i, j).abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// The saturated sublattice `span_Q(gens) ∩ Z^n` together with adapted
/// coordinates.
#[derive(Clone, Debug)]
pub struct Saturation {
    /// Lattice basis of the saturation (`rank` vectors).
    pub basis: Vec<IntVector>,
    /// Integer functionals `f_i` with `x = sum_i f_i(x) basis[i]` for every
    /// `x` in the saturation.
    pub coordinates: Vec<IntVector>,
    /// Lattice basis of the integer functionals vanishing on the span.
    pub annihilator: Vec<IntVector>,
}

impl Saturation {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a lattice point of the span in terms of `basis`.
    pub fn coords(&self, x: &IntVector) -> Vec<BigInt> {
        self.coordinates.iter().map(|f| f.dot(x)).collect()
    }

    /// Maps coordinates back to the ambient lattice.
    pub fn embed(&self, c: &[BigInt]) -> IntVector {
        let n = self.coordinates.first().map_or(0, |f| f.len());
        let mut out = IntVector::zeros(n);
        for (ci, b) in c.iter().zip(&self.basis) {
            out = out.add(&b.scale(ci));
        }
        out
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.annihilator.iter().all(|f| f.dot(x).is_zero())
    }
}

/// Saturation of the lattice generated by `gens` inside `Z^n`.
pub fn saturate(gens: &[IntVector], n: usize) -> Saturation {
    if gens.is_empty() {
        return Saturation {
            basis: Vec::new(),
            coordinates: Vec::new(),
            annihilator: (0..n).map(|i| IntVector::unit(n, i)).collect(),
        };
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(gens, n));
    let r = snf.rank();
    Saturation {
        basis: (0..r).map(|i| snf.right_inverse.row(i)).collect(),
        coordinates: (0..r).map(|j| snf.right.col(j)).collect(),
        annihilator: (r..n).map(|j| snf.right.col(j)).collect(),
    }
}

/// Index `[Z^n : L_A + L_B]` where `L_A`, `L_B` are the saturations of the
/// lattices generated by `a` and `b`.
pub fn lattice_index(a: &[IntVector], b: &[IntVector], n: usize) -> Result<BigInt> {
    let mut rows = saturate(a, n).basis;
    rows.extend(saturate(b, n).basis);
    if rows.is_empty() {
        return if n == 0 { Ok(BigInt::one()) } else { Err(Error::NotFullRank) };
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(&rows, n));
    if snf.rank() < n {
        return Err(Error::NotFullRank);
    }
    Ok(snf.diag.iter().take(n).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).mul(&s.right);
        assert!(d.is_diagonal());
        for (i, di) in s.diag.iter().enumerate() {
            assert_eq!(d.get(i, i), di);
            assert!(!di.is_negative());
        }
        for w in s.diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        assert_eq!(s.left.det().abs(), BigInt::one());
        assert_eq!(s.right.det().abs(), BigInt::one());
        assert_eq!(s.right.mul(&s.right_inverse), IntMatrix::identity(m.ncols()));
        s
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_identity() {
        assert_eq!(check_snf(&IntMatrix::identity(2)).diag, big(&[1, 1]));
    }

    #[test]
    fn snf_diag_two_three() {
        let m = IntMatrix::from_i64s(&[&[2, 0], &[0, 3]]);
        assert_eq!(check_snf(&m).diag, big(&[1, 6]));
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::zeros(2, 2);
        assert_eq!(check_snf(&m).diag, big(&[0, 0]));
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMatrix::from_i64s(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(check_snf(&m).diag, big(&[2, 6, 12]));
        let w = IntMatrix::from_i64s(&[&[1, 1], &[1, -1], &[0, 2]]);
        assert_eq!(check_snf(&w).diag, big(&[1, 2]));
    }

    #[test]
    fn lattice_index_examples() {
        let v = |x: &[i64]| IntVector::from_i64s(x);
        assert_eq!(lattice_index(&[v(&[1, 0])], &[v(&[0, 1])], 2).unwrap(), BigInt::from(1));
        assert_eq!(lattice_index(&[v(&[1, 1])], &[v(&[1, -1])], 2).unwrap(), BigInt::from(2));
        assert_eq!(
            lattice_index(&[v(&[1, 0]), v(&[0, 1])], &[], 2).unwrap(),
            BigInt::from(1)
        );
        assert!(matches!(
            lattice_index(&[v(&[1, 0])], &[v(&[2, 0])], 2),
            Err(Error::NotFullRank)
        ));
    }

    #[test]
    fn saturation_of_non_primitive_generators() {
        let s = saturate(&[IntVector::from_i64s(&[2, 4, 0])], 3);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.basis[0].primitive(), s.basis[0]);
        let x = IntVector::from_i64s(&[3, 6, 0]);
        assert!(s.contains(&x));
        assert_eq!(s.embed(&s.coords(&x)), x);
        assert!(!s.contains(&IntVector::from_i64s(&[1, 0, 0])));
    }
}
