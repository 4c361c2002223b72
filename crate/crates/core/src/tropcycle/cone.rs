//! Rational polyhedral cones with a canonical double description.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::exactmath::{nullspace, rank, IntVector, Rational};

/// A rational polyhedral cone `cone(rays) + span(lineality)` in `Q^n`.
///
/// The representation is canonical, so structural equality is equality of
/// point sets: the lineality space is stored by its reduced echelon basis,
/// rays are the primitive extreme rays of the pointed part orthogonal to the
/// lineality space, and the inequality description (`<a, x> >= 0` for each
/// facet normal, `<e, x> = 0` for each equation) is canonical in the same way.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    dim: usize,
    lineality: Vec<IntVector>,
    rays: Vec<IntVector>,
    facets: Vec<IntVector>,
    equations: Vec<IntVector>,
    ambient: usize,
}

/// Lineality basis and extreme rays of `{x : A x >= 0, E x = 0}`.
fn cone_generators(ineqs: &[IntVector], eqs: &[IntVector], n: usize) -> (Vec<IntVector>, Vec<IntVector>) {
    let all: Vec<IntVector> = ineqs.iter().chain(eqs).cloned().collect();
    let lineality = nullspace(&all, n);
    let mut base: Vec<IntVector> = eqs.to_vec();
    base.extend(lineality.iter().cloned());
    let r0 = rank(&base, n);
    let mut rays = BTreeSet::new();
    if r0 < n {
        let need = n - 1 - r0;
        let rows: Vec<&IntVector> = ineqs.iter().filter(|a| !a.is_zero()).collect();
        let mut chosen = Vec::with_capacity(need);
        each_subset(rows.len(), need, 0, &mut chosen, &mut |subset| {
            let mut m = base.clone();
            m.extend(subset.iter().map(|&i| rows[i].clone()));
            let ns = nullspace(&m, n);
            if ns.len() != 1 {
                return;
            }
            for r in [ns[0].clone(), ns[0].neg()] {
                if ineqs.iter().all(|a| !a.dot(&r).is_negative()) {
                    rays.insert(r);
                }
            }
        });
    }
    (lineality, rays.into_iter().collect())
}

fn each_subset(m: usize, k: usize, start: usize, chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in start..m {
        if m - i < k - chosen.len() {
            break;
        }
        chosen.push(i);
        each_subset(m, k, i + 1, chosen, f);
        chosen.pop();
    }
}

impl Cone {
    /// The cone generated by `rays` (any generators) plus the linear span of
    /// `lineality`.
    pub fn from_generators(rays: &[IntVector], lineality: &[IntVector], n: usize) -> Cone {
        // Facets are the extreme rays of the dual cone.
        let (equations, facets) = cone_generators(rays, lineality, n);
        let (lineality, rays) = cone_generators(&facets, &equations, n);
        Cone {
            dim: n - equations.len(),
            lineality,
            rays,
            facets,
            equations,
            ambient: n,
        }
    }

    /// The cone `{x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}`.
    pub fn from_constraints(ineqs: &[IntVector], eqs: &[IntVector], n: usize) -> Cone {
        let (lineality, rays) = cone_generators(ineqs, eqs, n);
        Cone::from_generators(&rays, &lineality, n)
    }

    pub fn whole_space(n: usize) -> Cone {
        let basis: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        Cone::from_generators(&[], &basis, n)
    }

    pub fn origin(n: usize) -> Cone {
        Cone::from_generators(&[], &[], n)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    /// Inner facet normals: the cone is `<a, x> >= 0` for each of them.
    pub fn facet_normals(&self) -> &[IntVector] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the span.
    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Rays and lineality vectors together; they span the cone's linear span.
    pub fn span_generators(&self) -> Vec<IntVector> {
        self.rays.iter().chain(&self.lineality).cloned().collect()
    }

    pub fn contains_vector(&self, x: &IntVector) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.facets.iter().all(|a| !a.dot(x).is_negative())
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| e.dot_rational(x).is_zero())
            && self.facets.iter().all(|a| !a.dot_rational(x).is_negative())
    }

    pub fn contains(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_vector(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains_vector(l) && self.contains_vector(&l.neg()))
    }

    /// A lattice point in the relative interior.
    pub fn relative_interior_point(&self) -> IntVector {
        self.rays
            .iter()
            .fold(IntVector::zeros(self.ambient), |acc, r| acc.add(r))
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let ineqs: Vec<IntVector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<IntVector> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_constraints(&ineqs, &eqs, self.ambient)
    }

    /// The facets (faces of codimension one).
    pub fn facets(&self) -> Vec<Cone> {
        self.facets
            .iter()
            .map(|a| {
                let mut eqs = self.equations.clone();
                eqs.push(a.clone());
                Cone::from_constraints(&self.facets, &eqs, self.ambient)
            })
            .collect()
    }

    /// All faces, including the cone itself.
    pub fn faces(&self) -> BTreeSet<Cone> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if out.contains(&c) {
                continue;
            }
            stack.extend(c.facets());
            out.insert(c);
        }
        out
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[IntVector]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "cone[{}]", list(&self.rays))?;
        if !self.lineality.is_empty() {
            write!(f, " + span[{}]", list(&self.lineality))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
