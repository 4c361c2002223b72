//! Rational combinations of lattice polytope classes, multiplied by
//! Minkowski sum.
//!
//! Generators are stored translated so that their lexicographically
//! smallest vertex sits at the origin. Scissors relations are not reduced;
//! two combinations are equal in the algebra exactly when their Chern
//! images agree ([`is_zero_in_algebra`]).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};
use crate::polytope::{minkowski_sum, normal_fan, LatticePolytope};
use crate::tropcycle::{face_volume_weights, Fan, TropicalCycle, WeightPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolytopeCombination {
    rank: usize,
    terms: BTreeMap<LatticePolytope, Rational>,
}

impl PolytopeCombination {
    pub fn zero(rank: usize) -> Self {
        PolytopeCombination { rank, terms: BTreeMap::new() }
    }

    /// The class of a point.
    pub fn unit(rank: usize) -> Self {
        let origin = LatticePolytope::origin_point(rank).expect("supported rank");
        PolytopeCombination::from_polytope(&origin)
    }

    /// `[p]`.
    pub fn from_polytope(p: &LatticePolytope) -> Self {
        let mut out = PolytopeCombination::zero(p.rank());
        out.add_term(p, &Rational::one());
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePolytope, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &LatticePolytope) -> Rational {
        self.terms.get(&p.translation_normalized()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c [p]`.
    pub fn add_term(&mut self, p: &LatticePolytope, c: &Rational) {
        assert_eq!(p.rank(), self.rank, "generator of wrong rank");
        self.add_normalized(p.translation_normalized(), c);
    }

    fn add_normalized(&mut self, p: LatticePolytope, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PolytopeCombination) -> Result<PolytopeCombination> {
        check_rank(self.rank, other.rank)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_normalized(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolytopeCombination) -> Result<PolytopeCombination> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> PolytopeCombination {
        if c.is_zero() {
            return PolytopeCombination::zero(self.rank);
        }
        PolytopeCombination {
            rank: self.rank,
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> PolytopeCombination {
        let mut acc = PolytopeCombination::unit(self.rank);
        for _ in 0..k {
            acc = multiply(&acc, self).expect("same rank");
        }
        acc
    }
}

fn check_rank(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::RankMismatch { expected: a, found: b });
    }
    Ok(())
}

impl fmt::Debug for PolytopeCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolytopeCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*[{}]", format_rational(c), p)?;
        }
        Ok(())
    }
}

pub fn unit(rank: usize) -> PolytopeCombination {
    PolytopeCombination::unit(rank)
}

// Sums of translation-normalized generators recur heavily when expanding
// products of genera, so they are remembered process-wide.
type SumCache = Mutex<HashMap<(LatticePolytope, LatticePolytope), LatticePolytope>>;
const SUM_CACHE_LIMIT: usize = 1 << 16;

fn sum_cache() -> &'static SumCache {
    static CACHE: OnceLock<SumCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_sum(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    if q.is_point() {
        return p.clone();
    }
    if p.is_point() {
        return q.clone();
    }
    let key = if p <= q { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) };
    if let Some(s) = sum_cache().lock().unwrap().get(&key) {
        return s.clone();
    }
    let s = minkowski_sum(p, q).expect("same rank").translation_normalized();
    // force the count while the polytope is fresh so every clone shares it
    s.lattice_point_count();
    let mut cache = sum_cache().lock().unwrap();
    if cache.len() >= SUM_CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, s.clone());
    s
}

/// Bilinear extension of `[P][Q] = [P + Q]`.
pub fn multiply(a: &PolytopeCombination, b: &PolytopeCombination) -> Result<PolytopeCombination> {
    check_rank(a.rank, b.rank)?;
    let mut out = PolytopeCombination::zero(a.rank);
    for (p, x) in &a.terms {
        for (q, y) in &b.terms {
            out.add_normalized(cached_sum(p, q), &(x * y));
        }
    }
    Ok(out)
}

/// `[p]^-1 = sum_{i=0}^{n} (1 - [p])^i`, using `(1 - [p])^(n+1) = 0`.
pub fn invert_class(p: &LatticePolytope) -> PolytopeCombination {
    let n = p.rank();
    let one = PolytopeCombination::unit(n);
    let a = one.sub(&PolytopeCombination::from_polytope(p)).expect("same rank");
    let mut acc = one.clone();
    let mut power = one;
    for _ in 0..n {
        power = multiply(&power, &a).expect("same rank");
        acc = acc.add(&power).expect("same rank");
    }
    acc
}

/// `sum c * |P cap M|`.
pub fn lat(x: &PolytopeCombination) -> Rational {
    x.terms
        .iter()
        .map(|(p, c)| c * Rational::from_integer(p.lattice_point_count()))
        .sum()
}

/// Whether the normal fan of `fan`'s maximal cones refines that of `p`:
/// on each maximal cone a single vertex of `p` minimizes every generator.
fn fan_refines_polytope(fan: &Fan, p: &LatticePolytope) -> bool {
    let n = fan.rank();
    for cone in fan.cones().iter().filter(|c| c.dim() == n) {
        let face = p.face_minimizing(&cone.relative_interior_point());
        if face.vertex_indices().len() != 1 {
            return false;
        }
        let v = &p.vertices()[face.vertex_indices()[0]];
        for g in cone.span_generators() {
            let at_v = g.dot(v);
            if p.vertices().iter().any(|w| g.dot(w) < at_v) {
                return false;
            }
        }
    }
    true
}

/// A polytope whose normal fan refines the normal fans of all generators.
fn common_witness(x: &PolytopeCombination) -> LatticePolytope {
    let mut terms = x.terms.keys();
    let mut w = match terms.next() {
        Some(p) => p.clone(),
        None => return LatticePolytope::origin_point(x.rank).expect("supported rank"),
    };
    let mut fan = normal_fan(&w);
    for p in terms {
        if !fan_refines_polytope(&fan, p) {
            w = minkowski_sum(&w, p).expect("same rank").translation_normalized();
            fan = normal_fan(&w);
        }
    }
    w
}

/// The tropical Chern character `[P] -> exp T(P)`, extended linearly.
pub fn chern(x: &PolytopeCombination) -> TropicalCycle {
    let fan = Arc::new(normal_fan(&common_witness(x)));
    chern_on(x, &fan)
}

/// [`chern`] expressed on `fan`, which must refine the normal fan of every
/// generator of `x`.
pub fn chern_on(x: &PolytopeCombination, fan: &Arc<Fan>) -> TropicalCycle {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (p, c) in &x.terms {
        for (i, w) in face_volume_weights(p, fan, |_| true, |_| c.clone()) {
            *acc.entry(i).or_insert_with(Rational::zero) += w;
        }
    }
    let weights = acc
        .into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(i, w)| (i, WeightPoly::constant(w)))
        .collect();
    TropicalCycle::new(fan.clone(), weights)
}

/// Whether `x` is zero in the rational polytope algebra, decided through
/// the Chern character, which is injective there.
pub fn is_zero_in_algebra(x: &PolytopeCombination) -> bool {
    chern(x).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, IntVector};
    use crate::polytope::hull;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        hull(&v.iter().map(|p| IntVector::from_i64s(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn inverse_of_square() {
        let d1 = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let inv = invert_class(&d1);
        let mut expected = PolytopeCombination::unit(2).scale(&rat(3, 1));
        expected.add_term(&d1, &rat(-3, 1));
        expected.add_term(&d1.dilate(2), &rat(1, 1));
        assert_eq!(inv, expected);
    }

    #[test]
    fn translated_generators_merge() {
        let s = poly(&[&[0, 0], &[1, 0]]);
        let mut x = PolytopeCombination::from_polytope(&s);
        x.add_term(&s.translate(&IntVector::from_i64s(&[3, -2])), &rat(-1, 1));
        assert!(x.is_empty());
    }
}
