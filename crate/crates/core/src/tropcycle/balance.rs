use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{nullspace, saturate, solve_in_span, IntVector, Rational};

use super::{Cone, TropicalCycle};

/// A ridge where the weighted normal vectors fail to sum into its span.
#[derive(Clone, Debug)]
pub struct Violation {
    /// Dimension of the weighted cones.
    pub dim: usize,
    /// Exponent of `(y-1)^(-1)` of the offending coefficient.
    pub exponent: i32,
    pub ridge: Cone,
    pub residual: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub violations: Vec<Violation>,
}

impl BalanceReport {
    pub fn is_balanced(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lattice vector in `sigma` generating `N_sigma / N_tau`, for a facet `tau`
/// of `sigma`, oriented towards `sigma`.
pub fn primitive_normal(sigma: &Cone, tau: &Cone) -> IntVector {
    let n = sigma.ambient_dim();
    let s = saturate(&sigma.span_generators(), n);
    let d = s.rank();
    let tau_rows: Vec<IntVector> = tau
        .span_generators()
        .iter()
        .map(|g| IntVector::new(s.coords(g)))
        .collect();
    let f = nullspace(&tau_rows, d);
    assert_eq!(f.len(), 1, "tau is not a facet of sigma");
    let mut f = f[0].clone();
    let inside = IntVector::new(s.coords(&sigma.relative_interior_point()));
    if f.dot(&inside).is_negative() {
        f = f.neg();
    }
    // f is primitive, so some integer x has <f, x> = 1.
    let mut g = BigInt::zero();
    let mut x = IntVector::zeros(d);
    for i in 0..d {
        let e = g.extended_gcd(&f[i]);
        x = x.scale(&e.x).add(&IntVector::unit(d, i).scale(&e.y));
        g = e.gcd;
    }
    if g.is_negative() {
        x = x.neg();
    }
    debug_assert!(f.dot(&x).is_one());
    s.embed(x.entries())
}

/// Checks the balancing condition for every dimension and every exponent.
pub fn is_balanced(c: &TropicalCycle) -> BalanceReport {
    let fan = c.fan();
    let faces = fan.face_indices();
    let n = fan.rank();
    // (dim, exponent, ridge) -> accumulated weighted normal
    let mut sums: BTreeMap<(usize, i32, usize), Vec<Rational>> = BTreeMap::new();
    for (&i, w) in c.weights() {
        let sigma = fan.cone(i);
        if sigma.dim() == 0 {
            continue;
        }
        for &t in &faces[i] {
            let tau = fan.cone(t);
            if tau.dim() + 1 != sigma.dim() {
                continue;
            }
            let u = primitive_normal(sigma, tau);
            for (e, coeff) in w.terms() {
                let acc = sums
                    .entry((sigma.dim(), e, t))
                    .or_insert_with(|| vec![Rational::zero(); n]);
                for (a, x) in acc.iter_mut().zip(u.entries()) {
                    *a += coeff * Rational::from_integer(x.clone());
                }
            }
        }
    }
    let violations = sums
        .into_iter()
        .filter_map(|((dim, exponent, t), v)| {
            let tau = fan.cone(t);
            if solve_in_span(&tau.span_generators(), &v, n).is_some() {
                None
            } else {
                Some(Violation { dim, exponent, ridge: tau.clone(), residual: v })
            }
        })
        .collect();
    BalanceReport { violations }
}
