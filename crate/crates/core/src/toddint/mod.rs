//! Todd measures on rational cones and integration of tropical cycles
//! against them.
//!
//! The default measure gives 1 to the origin and 1/2 to every ray. Cones of
//! dimension two and more need a user table.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::chigenus::{chi_y, refined_trop, ChiPolynomial};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, rat, IntVector, Rational};
use crate::polytope::{hull, normal_fan, LatticePolytope};
use crate::tropcycle::{common_refinement, Cone, Fan, TropicalCycle, WeightPoly};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ToddMeasure {
    table: BTreeMap<Cone, Rational>,
}

impl ToddMeasure {
    /// 1 on the origin, 1/2 on rays, nothing else.
    pub fn standard() -> Self {
        ToddMeasure::default()
    }

    /// The standard measure extended by values on cones of dimension >= 2.
    /// Values must be additive wherever some table cones subdivide another.
    pub fn with_table(entries: Vec<(Cone, Rational)>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (c, v) in entries {
            if c.dim() <= 1 {
                return Err(Error::InvalidMeasure(format!(
                    "cone {c} has dimension {}; values on the origin and rays are fixed",
                    c.dim()
                )));
            }
            if let Some(old) = table.insert(c.clone(), v.clone()) {
                if old != v {
                    return Err(Error::InvalidMeasure(format!("cone {c} given two values")));
                }
            }
        }
        let m = ToddMeasure { table };
        m.check_additivity()?;
        Ok(m)
    }

    pub fn table(&self) -> &BTreeMap<Cone, Rational> {
        &self.table
    }

    /// `mu(sigma)`. Non-pointed cones are not measured directly.
    pub fn value(&self, c: &Cone) -> Result<Rational> {
        match c.dim() {
            0 => Ok(Rational::one()),
            1 if c.is_pointed() => Ok(rat(1, 2)),
            _ => self.table.get(c).cloned().ok_or_else(|| Error::MissingMeasureValue(c.to_string())),
        }
    }

    /// For every table cone tiled by the smaller table cones inside it, the
    /// value must be the sum over the tiles.
    fn check_additivity(&self) -> Result<()> {
        for (tau, v) in &self.table {
            let inside: Vec<&Cone> = self
                .table
                .keys()
                .filter(|s| *s != tau && s.dim() == tau.dim() && tau.contains(s))
                .collect();
            // finest pieces: those containing no other piece
            let tiles: Vec<&Cone> = inside
                .iter()
                .filter(|s| !inside.iter().any(|t| t != *s && s.contains(t)))
                .copied()
                .collect();
            if tiles.is_empty() || !tiles_cone(tau, &tiles) {
                continue;
            }
            let sum: Rational = tiles.iter().map(|s| self.table[*s].clone()).sum();
            if &sum != v {
                return Err(Error::InvalidMeasure(format!(
                    "cone {tau} has value {} but its subdivision sums to {}",
                    format_rational(v),
                    format_rational(&sum)
                )));
            }
        }
        Ok(())
    }
}

/// Whether `tiles` (all of full dimension in `tau`) have disjoint relative
/// interiors and cover `tau`: every tile facet off the boundary of `tau`
/// is shared with exactly one other tile.
fn tiles_cone(tau: &Cone, tiles: &[&Cone]) -> bool {
    let d = tau.dim();
    for (i, a) in tiles.iter().enumerate() {
        for b in &tiles[i + 1..] {
            if a.intersect(b).dim() == d {
                return false;
            }
        }
    }
    let boundary = tau.facets();
    for a in tiles {
        for f in a.facets() {
            if boundary.iter().any(|g| g.contains(&f)) {
                continue;
            }
            let neighbours = tiles.iter().filter(|b| *b != a && b.intersect(&f).dim() == d - 1).count();
            if neighbours != 1 {
                return false;
            }
        }
    }
    true
}

fn orthant_fan(n: usize) -> Fan {
    let corners: Vec<IntVector> = (0..1usize << n)
        .map(|m| IntVector::from_i64s(&(0..n).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>()))
        .collect();
    let cube: LatticePolytope = hull(&corners).expect("cube");
    normal_fan(&cube)
}

/// `sum_sigma w(sigma) mu(sigma)`. Cycles with weight on a non-pointed cone
/// are first refined by the coordinate orthants.
pub fn integrate(c: &TropicalCycle, mu: &ToddMeasure) -> Result<WeightPoly> {
    let pointed = c.iter().all(|(cone, _)| cone.is_pointed());
    let c = if pointed {
        c.clone()
    } else {
        let fan = Arc::new(common_refinement(c.fan(), &orthant_fan(c.rank())));
        c.refine_to(&fan)
    };
    let mut acc = WeightPoly::zero();
    for (cone, w) in c.iter() {
        let v = mu.value(cone)?;
        acc = &acc + &w.scale(&v);
    }
    Ok(acc)
}

/// `(y-1)^n * integral of Trop_y(Z)`. In debug builds the result is compared
/// with [`chi_y`].
pub fn chi_y_via_todd(rank: usize, deltas: &[LatticePolytope], mu: &ToddMeasure) -> Result<ChiPolynomial> {
    let integral = if deltas.is_empty() {
        // the torus: the unit cycle integrates to the constant 1
        WeightPoly::one()
    } else {
        integrate(&refined_trop(rank, deltas)?, mu)?
    };
    let n = rank as i32;
    let mut acc: Vec<Rational> = Vec::new();
    for (e, c) in integral.terms() {
        if e > n {
            return Err(Error::IdentityViolation(format!(
                "integral has a (y-1)^-{e} term beyond the rank"
            )));
        }
        crate::chigenus::add_scaled_power(&mut acc, c, (n - e) as u32);
    }
    let p = ChiPolynomial::from_rationals(&acc)?;
    if cfg!(debug_assertions) {
        let q = chi_y(rank, deltas)?;
        if p != q {
            return Err(Error::IdentityViolation(format!("Todd integration gives {p}, the Lat formula gives {q}")));
        }
    }
    Ok(p)
}
