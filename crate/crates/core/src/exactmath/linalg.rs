use num_traits::{One, Zero};

use super::{IntVector, Rational};

/// Reduced row echelon form over Q. Returns the nonzero rows and their pivot
/// columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..ncols {
                let v = &m[r][j] * &f;
                m[i][j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

fn to_rows(vs: &[IntVector]) -> Vec<Vec<Rational>> {
    vs.iter().map(IntVector::to_rationals).collect()
}

pub fn rank(vs: &[IntVector], n: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rref(&to_rows(vs), n).1.len()
}

/// Canonical integer basis of a rational subspace: the rows of its reduced
/// row echelon form, each scaled to a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub rows: Vec<IntVector>,
    pub pivots: Vec<usize>,
}

impl CanonicalBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the subspace: the unique
    /// element of the coset with zero entries in every pivot column.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = &out[p] / Rational::from_integer(row[p].clone());
            for (j, x) in out.iter_mut().enumerate() {
                *x -= &f * &row[j];
            }
        }
        out
    }
}

pub fn canonical_basis(vs: &[IntVector], n: usize) -> CanonicalBasis {
    if vs.is_empty() {
        return CanonicalBasis {
            rows: Vec::new(),
            pivots: Vec::new(),
        };
    }
    let (rows, pivots) = rref(&to_rows(vs), n);
    CanonicalBasis {
        rows: rows.iter().map(|r| IntVector::primitive_from_rationals(r)).collect(),
        pivots,
    }
}

/// Basis of `{x in Q^n : <r, x> = 0 for all rows r}`, canonical for the
/// subspace and scaled to primitive integer vectors.
pub fn nullspace(rows: &[IntVector], n: usize) -> Vec<IntVector> {
    let (red, pivots) = if rows.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        rref(&to_rows(rows), n)
    };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<IntVector> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            IntVector::primitive_from_rationals(&v)
        })
        .collect();
    canonical_basis(&basis, n).rows
}

/// Solves `x = sum_i c_i basis[i]` for `c`, if `x` lies in the span.
pub fn solve_in_span(basis: &[IntVector], x: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let k = basis.len();
    // Augmented system: columns are the basis vectors, last column is x.
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rational> = basis
                .iter()
                .map(|b| Rational::from_integer(b[i].clone()))
                .collect();
            r.push(x[i].clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}
