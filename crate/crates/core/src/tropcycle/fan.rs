use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use crate::exactmath::IntVector;
use crate::polytope::{minkowski_sum, normal_fan, LatticePolytope};

use super::Cone;

/// A fan: a set of cones closed under taking faces, sorted by dimension and
/// then by the canonical cone order.
///
/// Fans built from a polytope keep it as a witness; common refinements of
/// such fans are then computed as normal fans of Minkowski sums.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    cones: Vec<Cone>,
    witness: Option<LatticePolytope>,
    faces: OnceLock<Vec<Vec<usize>>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.cones == other.cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// The face closure of `cones`.
    pub fn from_cones(rank: usize, cones: Vec<Cone>, witness: Option<LatticePolytope>) -> Fan {
        let mut all = BTreeSet::new();
        for c in cones {
            assert_eq!(c.ambient_dim(), rank, "cone of wrong ambient dimension");
            if all.contains(&c) {
                continue;
            }
            all.extend(c.faces());
        }
        Fan {
            rank,
            cones: all.into_iter().collect(),
            witness,
            faces: OnceLock::new(),
        }
    }

    /// The fan with the single cone `Q^n`.
    pub fn whole_space(rank: usize) -> Fan {
        Fan::from_cones(rank, vec![Cone::whole_space(rank)], LatticePolytope::origin_point(rank).ok())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn witness(&self) -> Option<&LatticePolytope> {
        self.witness.as_ref()
    }

    /// Indices of the cones of dimension `d`.
    pub fn cones_of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cones.len()).filter(move |&i| self.cones[i].dim() == d)
    }

    /// Indices of the faces of each cone (including itself).
    pub fn face_indices(&self) -> &[Vec<usize>] {
        self.faces.get_or_init(|| {
            self.cones
                .iter()
                .map(|c| {
                    (0..self.cones.len())
                        .filter(|&j| self.cones[j].dim() <= c.dim() && c.contains(&self.cones[j]))
                        .collect()
                })
                .collect()
        })
    }

    /// The largest common face of cones `i` and `j`, which is their
    /// intersection.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let faces = self.face_indices();
        let b: BTreeSet<usize> = faces[j].iter().copied().collect();
        faces[i]
            .iter()
            .copied()
            .filter(|k| b.contains(k))
            .max_by_key(|&k| self.cones[k].dim())
            .expect("cones of a fan share their minimal face")
    }

    /// The vertex indices of the witness face dual to cone `i`.
    pub fn dual_face(&self, i: usize) -> Option<Vec<usize>> {
        let w = self.cones[i].relative_interior_point();
        self.witness
            .as_ref()
            .map(|p| p.face_minimizing(&w).vertex_indices().to_vec())
    }

    /// Primitive ray generators and lineality vectors of all cones.
    pub fn generators(&self) -> BTreeSet<IntVector> {
        self.cones
            .iter()
            .flat_map(|c| c.span_generators())
            .map(|g| g.primitive())
            .collect()
    }

    /// Whether every cone of `self` lies in some cone of `other`.
    pub fn refines(&self, other: &Fan) -> bool {
        self.cones
            .iter()
            .all(|c| other.cones.iter().any(|d| d.dim() >= c.dim() && d.contains(c)))
    }

    /// Checks that pairwise intersections are common faces. Quadratic in the
    /// number of cones; meant for tests.
    pub fn is_valid(&self) -> bool {
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                let c = a.intersect(b);
                if self.index_of(&c).is_none() {
                    return false;
                }
            }
        }
        true
    }
}

/// The coarsest fan refining both: its cones are the intersections
/// `sigma ∩ tau`. Both fans are assumed complete.
pub fn common_refinement(a: &Fan, b: &Fan) -> Fan {
    assert_eq!(a.rank, b.rank, "fans of different rank");
    if a == b || b.cones.len() == 1 {
        return a.clone();
    }
    if a.cones.len() == 1 {
        return b.clone();
    }
    if let (Some(p), Some(q)) = (&a.witness, &b.witness) {
        if let Ok(s) = minkowski_sum(p, q) {
            return normal_fan(&s);
        }
    }
    common_refinement_by_intersection(a, b)
}

/// The refinement computed directly from intersections of maximal cones.
pub fn common_refinement_by_intersection(a: &Fan, b: &Fan) -> Fan {
    let maximal = |f: &Fan| -> Vec<Cone> {
        let faces = f.face_indices();
        (0..f.cones.len())
            .filter(|&i| !faces.iter().enumerate().any(|(j, fj)| j != i && fj.contains(&i)))
            .map(|i| f.cones[i].clone())
            .collect()
    };
    let (ma, mb) = (maximal(a), maximal(b));
    let mut cones = BTreeSet::new();
    for s in &ma {
        for t in &mb {
            cones.insert(s.intersect(t));
        }
    }
    Fan::from_cones(a.rank, cones.into_iter().collect(), None)
}

pub(crate) fn shared_refinement(a: &Arc<Fan>, b: &Arc<Fan>) -> Arc<Fan> {
    if Arc::ptr_eq(a, b) || **a == **b || b.len() == 1 {
        return a.clone();
    }
    if a.len() == 1 {
        return b.clone();
    }
    if a.refines(b) {
        return a.clone();
    }
    if b.refines(a) {
        return b.clone();
    }
    Arc::new(common_refinement(a, b))
}
