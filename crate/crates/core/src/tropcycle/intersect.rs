//! Stable intersection by the fan displacement rule: on a common refinement,
//! a pair of weighted cones `sigma`, `tau` contributes to `sigma ∩ tau` when
//! `sigma` meets `tau + v` for a fixed generic displacement `v`, with the
//! lattice index `[N : N_sigma + N_tau]` as multiplicity.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{lattice_index, lp_feasible, nullspace, rank, IntVector, Rational};

use super::fan::shared_refinement;
use super::{Cone, Fan, TropicalCycle, WeightPoly};

/// Number of displacement vectors tried before giving up.
pub const DISPLACEMENT_ATTEMPTS: usize = 32;

static SALT: AtomicU64 = AtomicU64::new(0);

/// Mixes `salt` into the seed of every displacement vector drawn from now on.
/// Results never depend on it; it exists so that independence from the
/// displacement can be tested.
pub fn set_displacement_salt(salt: u64) {
    SALT.store(salt, Ordering::SeqCst);
}

/// Normals of the hyperplanes spanned by `n - 1` independent generators of
/// the fan. A displacement avoiding all of them is generic for every pair of
/// cones of the fan.
fn critical_normals(fan: &Fan) -> Vec<IntVector> {
    let n = fan.rank();
    let gens: Vec<IntVector> = fan.generators().into_iter().collect();
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    fn rec(
        gens: &[IntVector],
        n: usize,
        start: usize,
        chosen: &mut Vec<IntVector>,
        out: &mut BTreeSet<IntVector>,
    ) {
        if chosen.len() + 1 == n {
            let ns = nullspace(chosen, n);
            if ns.len() == 1 {
                let v = &ns[0];
                // sign-normalize so each hyperplane appears once
                let lead_neg = v.entries().iter().find(|x| !x.is_zero()).is_some_and(|x| x < &BigInt::zero());
                out.insert(if lead_neg { v.neg() } else { v.clone() });
            }
            return;
        }
        for i in start..gens.len() {
            chosen.push(gens[i].clone());
            if rank(chosen, n) == chosen.len() {
                rec(gens, n, i + 1, chosen, out);
            }
            chosen.pop();
        }
    }
    rec(&gens, n, 0, &mut chosen, &mut out);
    out.into_iter().collect()
}

fn draw_displacement(fan: &Fan, seed: u64) -> Result<IntVector> {
    let n = fan.rank();
    let normals = critical_normals(fan);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SALT.load(Ordering::SeqCst));
    for _ in 0..DISPLACEMENT_ATTEMPTS {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-(1i64 << 20)..=(1i64 << 20))).collect();
        let v = IntVector::from_i64s(&v);
        if normals.iter().all(|a| !a.dot(&v).is_zero()) {
            return Ok(v);
        }
    }
    Err(Error::DegenerateDisplacement(DISPLACEMENT_ATTEMPTS))
}

fn seed_of(a: &TropicalCycle, b: &TropicalCycle) -> u64 {
    let mut h = DefaultHasher::new();
    for c in [a, b] {
        for (cone, w) in c.iter() {
            cone.hash(&mut h);
            w.hash(&mut h);
        }
    }
    h.finish()
}

/// Whether `sigma ∩ (tau + v)` is nonempty.
fn meets_displaced(sigma: &Cone, tau: &Cone, v: &IntVector) -> bool {
    let n = sigma.ambient_dim();
    let zero = Rational::zero();
    let mut sys: Vec<(IntVector, Rational)> = Vec::new();
    for a in sigma.facet_normals() {
        sys.push((a.neg(), zero.clone()));
    }
    for e in sigma.equations() {
        sys.push((e.clone(), zero.clone()));
        sys.push((e.neg(), zero.clone()));
    }
    // x - v in tau
    for a in tau.facet_normals() {
        sys.push((a.neg(), Rational::from_integer(-a.dot(v))));
    }
    for e in tau.equations() {
        let ev = Rational::from_integer(e.dot(v));
        sys.push((e.clone(), ev.clone()));
        sys.push((e.neg(), -ev));
    }
    lp_feasible(n, &sys).is_feasible()
}

/// The stable intersection (product) of two tropical cycles.
pub fn stable_intersection(a: &TropicalCycle, b: &TropicalCycle) -> Result<TropicalCycle> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    let n = a.rank();
    let fan = shared_refinement(a.fan(), b.fan());
    if a.is_zero() || b.is_zero() {
        return Ok(TropicalCycle::zero(fan));
    }
    let wa = a.refine_to(&fan);
    let wb = b.refine_to(&fan);
    let v = draw_displacement(&fan, seed_of(a, b))?;
    let mut acc: BTreeMap<usize, WeightPoly> = BTreeMap::new();
    let mut index_cache: BTreeMap<(usize, usize), Option<BigInt>> = BTreeMap::new();
    for (&i, w1) in wa.weights() {
        let sigma = fan.cone(i);
        for (&j, w2) in wb.weights() {
            let tau = fan.cone(j);
            if sigma.dim() + tau.dim() < n {
                continue;
            }
            let target = sigma.dim() + tau.dim() - n;
            let g = fan.meet(i, j);
            if fan.cone(g).dim() != target {
                continue;
            }
            let m = index_cache
                .entry((i, j))
                .or_insert_with(|| lattice_index(&sigma.span_generators(), &tau.span_generators(), n).ok())
                .clone();
            let Some(m) = m else { continue };
            if !meets_displaced(sigma, tau, &v) {
                continue;
            }
            let term = (w1 * w2).scale(&Rational::from_integer(m));
            let entry = acc.entry(g).or_default();
            *entry = &*entry + &term;
        }
    }
    Ok(TropicalCycle::new(fan, acc))
}

/// `z^k` under stable intersection; `z^0` is the unit.
pub fn power(z: &TropicalCycle, k: usize) -> Result<TropicalCycle> {
    let mut acc = TropicalCycle::unit(z.rank());
    for _ in 0..k {
        acc = stable_intersection(&acc, z)?;
    }
    Ok(acc)
}
