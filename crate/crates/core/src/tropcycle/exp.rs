//! Cycles attached to a lattice polytope: the dual tropical hypersurface
//! `T(P)` and its exponential `exp T(P) = sum_k T(P)^k / k!`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::Result;
use crate::exactmath::Rational;
use crate::polytope::{normal_fan, relative_volume, LatticePolytope};

use super::intersect::stable_intersection;
use super::{Fan, TropicalCycle, WeightPoly};

/// `sum_F sign(dim F) * vol(F)` placed on the cones of `fan` of codimension
/// `dim F` that lie in the normal cone of `F`, restricted to the codimensions
/// accepted by `keep`. `fan` must refine the normal fan of `p`.
pub(crate) fn face_volume_weights(
    p: &LatticePolytope,
    fan: &Fan,
    keep: impl Fn(usize) -> bool,
    sign: impl Fn(usize) -> Rational,
) -> BTreeMap<usize, Rational> {
    let n = fan.rank();
    let mut cache: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for (i, cone) in fan.cones().iter().enumerate() {
        let codim = n - cone.dim();
        if !keep(codim) || codim > p.dim() {
            continue;
        }
        let face = p.face_minimizing(&cone.relative_interior_point());
        if face.dim() != codim {
            continue;
        }
        let vol = cache
            .entry(face.vertex_indices().to_vec())
            .or_insert_with(|| relative_volume(&face))
            .clone();
        out.insert(i, vol * sign(codim));
    }
    out
}

fn constant_weights(w: BTreeMap<usize, Rational>) -> BTreeMap<usize, WeightPoly> {
    w.into_iter().map(|(i, c)| (i, WeightPoly::constant(c))).collect()
}

/// `T(P)`: the codimension-one cones of the normal fan, weighted by the
/// lattice lengths of their dual edges. A point gives the zero cycle.
pub fn dual_hypersurface(p: &LatticePolytope) -> TropicalCycle {
    let fan = Arc::new(normal_fan(p));
    let w = face_volume_weights(p, &fan, |k| k == 1, |_| Rational::one());
    TropicalCycle::new(fan, constant_weights(w))
}

/// `exp T(P)` from face volumes: the normal cone of each face `F` carries
/// the relative volume of `F` (including the zero-th term, so a point gives
/// the unit).
pub fn exp_cycle(p: &LatticePolytope) -> TropicalCycle {
    let fan = Arc::new(normal_fan(p));
    exp_cycle_on(p, &fan, &Rational::one())
}

/// `c * exp T(P)` expressed on a fan refining the normal fan of `p`.
pub fn exp_cycle_on(p: &LatticePolytope, fan: &Arc<Fan>, c: &Rational) -> TropicalCycle {
    let w = face_volume_weights(p, fan, |_| true, |_| c.clone());
    TropicalCycle::new(fan.clone(), constant_weights(w))
}

/// `exp(-T(P))`, the inverse of [`exp_cycle`]: faces of dimension `k`
/// contribute with sign `(-1)^k`.
pub fn negate_exp_cycle(p: &LatticePolytope) -> TropicalCycle {
    let fan = Arc::new(normal_fan(p));
    let w = face_volume_weights(
        p,
        &fan,
        |_| true,
        |k| if k % 2 == 0 { Rational::one() } else { -Rational::one() },
    );
    TropicalCycle::new(fan, constant_weights(w))
}

/// `exp T(P)` as the truncated series `1 + T + T^2/2! + ... + T^n/n!`
/// computed with stable intersections.
pub fn exp_cycle_by_intersection(p: &LatticePolytope) -> Result<TropicalCycle> {
    let n = p.rank();
    let t = dual_hypersurface(p);
    let mut acc = TropicalCycle::unit(n);
    let mut power = TropicalCycle::unit(n);
    let mut factorial = Rational::one();
    for k in 1..=n {
        power = stable_intersection(&power, &t)?;
        factorial *= Rational::from_integer(k.into());
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power.scale_rational(&factorial.recip()));
    }
    Ok(acc)
}
