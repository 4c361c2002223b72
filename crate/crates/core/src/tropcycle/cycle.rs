use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

use super::fan::shared_refinement;
use super::{Cone, Fan, WeightPoly};

/// A weighted fan. Weights live on cones of any dimension and are Laurent
/// polynomials in `y - 1`; constant polynomials encode ordinary rational
/// weights. Zero weights are never stored.
#[derive(Clone)]
pub struct TropicalCycle {
    fan: Arc<Fan>,
    weights: BTreeMap<usize, WeightPoly>,
}

impl TropicalCycle {
    pub fn new(fan: Arc<Fan>, weights: BTreeMap<usize, WeightPoly>) -> Self {
        let weights = weights.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        TropicalCycle { fan, weights }
    }

    pub fn zero(fan: Arc<Fan>) -> Self {
        TropicalCycle { fan, weights: BTreeMap::new() }
    }

    /// Weight 1 on the whole space: the multiplicative unit.
    pub fn unit(rank: usize) -> Self {
        let fan = Arc::new(Fan::whole_space(rank));
        let mut weights = BTreeMap::new();
        weights.insert(0, WeightPoly::one());
        TropicalCycle { fan, weights }
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn rank(&self) -> usize {
        self.fan.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weights keyed by cone index in [`TropicalCycle::fan`].
    pub fn weights(&self) -> &BTreeMap<usize, WeightPoly> {
        &self.weights
    }

    pub fn weight_of(&self, c: &Cone) -> WeightPoly {
        self.fan
            .index_of(c)
            .and_then(|i| self.weights.get(&i).cloned())
            .unwrap_or_default()
    }

    /// Nonzero weights with their cones, ordered by dimension and then by the
    /// canonical cone order.
    pub fn iter(&self) -> impl Iterator<Item = (&Cone, &WeightPoly)> {
        self.weights.iter().map(|(i, w)| (self.fan.cone(*i), w))
    }

    /// The same cycle on a refinement of its fan: each cone of the
    /// refinement gets the weight of the cone of equal dimension containing it.
    pub fn refine_to(&self, fan: &Arc<Fan>) -> TropicalCycle {
        if Arc::ptr_eq(fan, &self.fan) || **fan == *self.fan {
            return TropicalCycle { fan: fan.clone(), weights: self.weights.clone() };
        }
        let mut weights = BTreeMap::new();
        for (i, w) in &self.weights {
            let sigma = self.fan.cone(*i);
            for g in fan.cones_of_dim(sigma.dim()) {
                let gamma = fan.cone(g);
                if sigma.contains(gamma) {
                    weights.insert(g, w.clone());
                }
            }
        }
        TropicalCycle::new(fan.clone(), weights)
    }

    /// Restriction to cones of dimension `n - codim`.
    pub fn graded_component(&self, codim: usize) -> Result<TropicalCycle> {
        let n = self.rank();
        if codim > n {
            return Err(Error::InvalidArgument(format!("codimension {codim} exceeds rank {n}")));
        }
        let weights = self
            .weights
            .iter()
            .filter(|(i, _)| self.fan.cone(**i).dim() == n - codim)
            .map(|(i, w)| (*i, w.clone()))
            .collect();
        Ok(TropicalCycle { fan: self.fan.clone(), weights })
    }

    /// The nonzero graded component of smallest codimension.
    pub fn top_component(&self) -> Result<TropicalCycle> {
        let codim = self
            .weights
            .keys()
            .map(|i| self.fan.cone(*i).codim())
            .min()
            .ok_or(Error::ZeroCycle)?;
        self.graded_component(codim)
    }

    /// Codimensions carrying a nonzero weight.
    pub fn codimensions(&self) -> BTreeSet<usize> {
        self.weights.keys().map(|i| self.fan.cone(*i).codim()).collect()
    }

    /// Every weight evaluated at `y`; zero results are dropped.
    pub fn evaluate_weights(&self, y: &Rational) -> Result<TropicalCycle> {
        let mut weights = BTreeMap::new();
        for (i, w) in &self.weights {
            weights.insert(*i, WeightPoly::constant(w.evaluate(y)?));
        }
        Ok(TropicalCycle::new(self.fan.clone(), weights))
    }

    pub fn map_weights(&self, f: impl Fn(&WeightPoly) -> WeightPoly) -> TropicalCycle {
        let weights = self.weights.iter().map(|(i, w)| (*i, f(w))).collect();
        TropicalCycle::new(self.fan.clone(), weights)
    }

    pub fn scale(&self, c: &WeightPoly) -> TropicalCycle {
        self.map_weights(|w| w * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> TropicalCycle {
        self.map_weights(|w| w.scale(c))
    }

    pub fn add(&self, other: &TropicalCycle) -> TropicalCycle {
        assert_eq!(self.rank(), other.rank(), "cycles of different rank");
        let fan = shared_refinement(&self.fan, &other.fan);
        let a = self.refine_to(&fan);
        let b = other.refine_to(&fan);
        let mut weights = a.weights;
        for (i, w) in b.weights {
            let sum = &weights.get(&i).cloned().unwrap_or_default() + &w;
            weights.insert(i, sum);
        }
        TropicalCycle::new(fan, weights)
    }

    pub fn sub(&self, other: &TropicalCycle) -> TropicalCycle {
        self.add(&other.scale_rational(&-Rational::one()))
    }

    /// Equality as weighted fans up to refinement.
    pub fn equals(&self, other: &TropicalCycle) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let fan = shared_refinement(&self.fan, &other.fan);
        self.refine_to(&fan).weights == other.refine_to(&fan).weights
    }

    /// Cone indices (in the fan of the cycle) covered by the support.
    fn support_cones(&self) -> BTreeSet<usize> {
        let faces = self.fan.face_indices();
        self.weights.keys().flat_map(|i| faces[*i].iter().copied()).collect()
    }

    /// Whether the supports coincide as point sets.
    pub fn support_equal(&self, other: &TropicalCycle) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let fan = shared_refinement(&self.fan, &other.fan);
        self.refine_to(&fan).support_cones() == other.refine_to(&fan).support_cones()
    }
}

impl PartialEq for TropicalCycle {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for TropicalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (c, w) in self.iter() {
            writeln!(f, "{c}: {w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TropicalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sum of `c_i * z_i` over the given cycles.
pub fn linear_combination(rank: usize, terms: &[(Rational, TropicalCycle)]) -> TropicalCycle {
    let mut acc = TropicalCycle::zero(Arc::new(Fan::whole_space(rank)));
    for (c, z) in terms {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&z.scale_rational(c));
    }
    acc
}
