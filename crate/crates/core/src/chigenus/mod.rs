//! χ_y-genera of generic complete intersections in an algebraic torus and
//! their refined tropicalizations.
//!
//! The relative genus of `Z = V(f_1, ..., f_k)` is kept as a Laurent
//! polynomial in `u = (y-1)^-1` whose coefficients live in the polytope
//! algebra. All values assume the `f_i` are generic for their Newton
//! polytopes; nothing here checks that.

mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};
use crate::polyalgebra::{chern, chern_on, invert_class, lat, multiply, PolytopeCombination};
use crate::polytope::{dilate, lattice_point_count, minkowski_sum, normal_fan, relative_volume, LatticePolytope};
use crate::tropcycle::{
    dual_hypersurface, stable_intersection, Fan, TropicalCycle, WeightPoly,
};

pub use poly::ChiPolynomial;
pub(crate) use poly::add_scaled_power;

/// `sum_e c_e (y-1)^(-e)` with coefficients in the polytope algebra.
///
/// For `k >= 1` hypersurfaces only exponents `e >= 1` occur. The torus
/// itself (`k = 0`) is the constant 1, stored at `e = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelChiGenus {
    rank: usize,
    codim: usize,
    coeffs: BTreeMap<u32, PolytopeCombination>,
}

impl RelChiGenus {
    /// The relative genus of the whole torus.
    pub fn torus(rank: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, PolytopeCombination::unit(rank));
        RelChiGenus { rank, codim: 0, coeffs }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, PolytopeCombination> {
        &self.coeffs
    }

    pub fn coeff(&self, e: u32) -> PolytopeCombination {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| PolytopeCombination::zero(self.rank))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Product as Laurent polynomials in `(y-1)^-1`.
    pub fn multiply(&self, other: &RelChiGenus) -> Result<RelChiGenus> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let mut coeffs: BTreeMap<u32, PolytopeCombination> = BTreeMap::new();
        for (e, a) in &self.coeffs {
            for (f, b) in &other.coeffs {
                let prod = multiply(a, b)?;
                let slot = coeffs.entry(e + f).or_insert_with(|| PolytopeCombination::zero(self.rank));
                *slot = slot.add(&prod)?;
            }
        }
        coeffs.retain(|_, c| !c.is_empty());
        Ok(RelChiGenus { rank: self.rank, codim: self.codim + other.codim, coeffs })
    }
}

impl fmt::Display for RelChiGenus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*(y-1)^-{e}")?;
        }
        Ok(())
    }
}

fn check_ranks(rank: usize, deltas: &[LatticePolytope]) -> Result<()> {
    for d in deltas {
        if d.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: d.rank() });
        }
    }
    Ok(())
}

/// Relative genus of a generic hypersurface with Newton polytope `delta`:
/// the coefficient of `(y-1)^-i` is `-([delta]^-1 - 1)^i` for `i = 1..n`.
pub fn rel_chi_hypersurface(delta: &LatticePolytope) -> RelChiGenus {
    let n = delta.rank();
    let one = PolytopeCombination::unit(n);
    let t = invert_class(delta).sub(&one).expect("same rank");
    let mut coeffs = BTreeMap::new();
    let mut power = one;
    for i in 1..=n {
        power = multiply(&power, &t).expect("same rank");
        let c = power.scale(&-Rational::one());
        if !c.is_empty() {
            coeffs.insert(i as u32, c);
        }
    }
    RelChiGenus { rank: n, codim: 1, coeffs }
}

/// Relative genus of a generic complete intersection: the product of the
/// hypersurface genera. No polytopes gives the torus.
pub fn rel_chi_intersection(rank: usize, deltas: &[LatticePolytope]) -> Result<RelChiGenus> {
    check_ranks(rank, deltas)?;
    let mut acc = RelChiGenus::torus(rank);
    for d in deltas {
        acc = acc.multiply(&rel_chi_hypersurface(d))?;
    }
    Ok(acc)
}

/// `(y-1)^n Lat(chi_y^T(Z))`.
pub fn chi_y(rank: usize, deltas: &[LatticePolytope]) -> Result<ChiPolynomial> {
    let rel = rel_chi_intersection(rank, deltas)?;
    let n = rank as u32;
    let mut acc: Vec<Rational> = Vec::new();
    for (e, c) in rel.coeffs() {
        let l = lat(c);
        if *e > n {
            if !l.is_zero() {
                return Err(Error::IdentityViolation(format!(
                    "Lat of the (y-1)^-{e} coefficient is {}, expected 0",
                    format_rational(&l)
                )));
            }
            continue;
        }
        poly::add_scaled_power(&mut acc, &l, n - e);
    }
    let p = ChiPolynomial::from_rationals(&acc)?;
    check_degree(&p, rank, deltas.len())?;
    Ok(p)
}

fn check_degree(p: &ChiPolynomial, n: usize, k: usize) -> Result<()> {
    let bound = n.checked_sub(k);
    match (p.degree(), bound) {
        (None, _) => Ok(()),
        (Some(d), Some(b)) if d <= b => Ok(()),
        (Some(d), _) => Err(Error::IdentityViolation(format!(
            "degree {d} exceeds the dimension of the intersection"
        ))),
    }
}

fn polygon_counts(delta: &LatticePolytope) -> Result<(Rational, Rational, Rational)> {
    if delta.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, found: delta.rank() });
    }
    let (b, i) = delta.boundary_and_interior_counts()?;
    let area = relative_volume(&delta.face_minimizing(&crate::exactmath::IntVector::zeros(2)));
    Ok((Rational::from_integer(b), Rational::from_integer(i), area))
}

/// `((B - 2V)/2)(y-1) - 2V` for a lattice polygon with `B` boundary points
/// and area `V`.
pub fn chi_y_closed_form_2d(delta: &LatticePolytope) -> Result<ChiPolynomial> {
    let (b, _, v) = polygon_counts(delta)?;
    let two = Rational::from_integer(2.into());
    let a = (&b - &two * &v) / &two;
    // a*y - a - 2V
    ChiPolynomial::from_rationals(&[-&a - &two * &v, a])
}

/// `(1 - I)(y + 1) - B` with `I` interior and `B` boundary lattice points.
pub fn chi_y_genus_form_2d(delta: &LatticePolytope) -> Result<ChiPolynomial> {
    let (b, i, _) = polygon_counts(delta)?;
    let g = Rational::one() - i;
    ChiPolynomial::from_rationals(&[&g - &b, g])
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Compositions `beta` of length `len` with `|beta| <= max`.
fn bounded_vectors(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            let used: usize = v.iter().sum();
            for b in 0..=max - used {
                let mut w = v.clone();
                w.push(b);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// The coefficient formula of Danilov and Khovanskii: the `y^p` coefficient
/// is `(-1)^(n-p) sum_I (-1)^|I| sum_{|beta| <= p} (-1)^|beta|
/// binom(n+|I|, p-|beta|) |sum_{i in I} (1+beta_i) Delta_i cap M|`.
///
/// Computed straight from lattice point counts; it shares nothing with
/// [`chi_y`] beyond the polytope module.
pub fn dhn_chi_y(rank: usize, deltas: &[LatticePolytope]) -> Result<ChiPolynomial> {
    check_ranks(rank, deltas)?;
    let n = rank;
    let k = deltas.len();
    if k > n {
        return Ok(ChiPolynomial::zero());
    }
    let origin = LatticePolytope::origin_point(n)?;
    let mut counts: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    let mut coeffs = Vec::new();
    for p in 0..=n - k {
        let mut total = BigInt::zero();
        for mask in 0u32..(1 << k) {
            let subset: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let s = subset.len();
            let mut inner = BigInt::zero();
            for beta in bounded_vectors(s, p) {
                let b: usize = beta.iter().sum();
                let mut mult = vec![0usize; k];
                for (&i, &bi) in subset.iter().zip(&beta) {
                    mult[i] = 1 + bi;
                }
                let count = match counts.get(&mult) {
                    Some(c) => c.clone(),
                    None => {
                        let mut sum = origin.clone();
                        for (i, &m) in mult.iter().enumerate() {
                            if m > 0 {
                                sum = minkowski_sum(&sum, &dilate(&deltas[i], m as u64))?;
                            }
                        }
                        let c = lattice_point_count(&sum);
                        counts.insert(mult, c.clone());
                        c
                    }
                };
                let term = binomial(n + s, p - b) * count;
                if b % 2 == 0 {
                    inner += term;
                } else {
                    inner -= term;
                }
            }
            if s % 2 == 0 {
                total += inner;
            } else {
                total -= inner;
            }
        }
        if (n - p) % 2 == 1 {
            total = -total;
        }
        coeffs.push(total);
    }
    Ok(ChiPolynomial::new(coeffs))
}

/// The fan all refined tropicalizations of `deltas` are expressed on.
fn common_fan(rank: usize, deltas: &[LatticePolytope]) -> Result<Arc<Fan>> {
    let mut sum = LatticePolytope::origin_point(rank)?;
    for d in deltas {
        sum = minkowski_sum(&sum, d)?;
    }
    Ok(Arc::new(normal_fan(&sum)))
}

/// `Trop_y(Z)`: the Chern character of the relative genus, with the
/// coefficient of `(y-1)^-e` contributing `u^e` to every weight.
///
/// Coefficients with `e > n` are zero in the algebra and are skipped here;
/// [`rel_chi_vanishing_report`] checks them.
pub fn refined_trop(rank: usize, deltas: &[LatticePolytope]) -> Result<TropicalCycle> {
    let rel = rel_chi_intersection(rank, deltas)?;
    let fan = common_fan(rank, deltas)?;
    let mut weights: BTreeMap<usize, WeightPoly> = BTreeMap::new();
    for (e, c) in rel.coeffs() {
        if *e as usize > rank {
            continue;
        }
        let part = chern_on(c, &fan);
        for (i, w) in part.weights() {
            let c = w.as_constant().expect("constant Chern weights");
            weights.entry(*i).or_default().add_term(*e as i32, &c);
        }
    }
    Ok(TropicalCycle::new(fan, weights))
}

/// Exponents `e > n` whose coefficient has a nonzero Chern image. Empty
/// when the nilpotency identities hold.
pub fn rel_chi_vanishing_report(rel: &RelChiGenus) -> Vec<u32> {
    rel.coeffs()
        .iter()
        .filter(|(e, c)| **e as usize > rel.rank() && !chern(c).is_zero())
        .map(|(e, _)| *e)
        .collect()
}

/// `Trop(Z)` as the stable intersection of the dual hypersurfaces.
pub fn unrefined_trop(rank: usize, deltas: &[LatticePolytope]) -> Result<TropicalCycle> {
    check_ranks(rank, deltas)?;
    let mut acc = TropicalCycle::unit(rank);
    for d in deltas {
        acc = stable_intersection(&acc, &dual_hypersurface(d))?;
    }
    Ok(acc)
}

/// Checks that `Trop_y(Z)` and `Trop(Z)` have the same support and that the
/// lowest-codimension part of `Trop_0(Z)` is `(-1)^k Trop(Z)`.
pub fn check_specialization(rank: usize, deltas: &[LatticePolytope]) -> Result<bool> {
    let refined = refined_trop(rank, deltas)?;
    let plain = unrefined_trop(rank, deltas)?;
    if !refined.support_equal(&plain) {
        return Ok(false);
    }
    if plain.is_zero() {
        return Ok(refined.is_zero());
    }
    let at_zero = refined.evaluate_weights(&Rational::zero())?;
    let top = match at_zero.top_component() {
        Ok(t) => t,
        Err(Error::ZeroCycle) => return Ok(false),
        Err(e) => return Err(e),
    };
    let sign = if deltas.len() % 2 == 0 { Rational::one() } else { -Rational::one() };
    Ok(top == plain.scale_rational(&sign))
}
