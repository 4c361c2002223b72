//! Lattice polytopes in `Z^n` (`n <= 3`): hulls, Minkowski sums, dilations,
//! lattice-point counts, face volumes and inner normal fans.

mod kernel;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{saturate, IntVector, Rational};
use crate::tropcycle::{Cone, Fan};
use kernel::{LocalHull, Scalar};

/// Largest supported lattice rank.
pub const MAX_RANK: usize = 3;

/// A lattice polytope, stored by its vertex set in lexicographic order.
///
/// Besides the vertices it keeps an affine lattice frame of its span and an
/// inequality description in that frame, so counts and normal cones need no
/// further hull computations.
#[derive(Clone)]
pub struct LatticePolytope {
    rank: usize,
    vertices: Vec<IntVector>,
    dim: usize,
    // Local lattice coordinates of a point of the affine span are
    // `x_i = coords[i] . (p - origin)`.
    origin: IntVector,
    coords: Vec<IntVector>,
    annihilator: Vec<IntVector>,
    facets: Vec<Facet>,
    volume: Rational,
    count: OnceLock<BigInt>,
    interior: OnceLock<BigInt>,
}

/// A facet in the local frame: `<normal, x> >= offset`, with the indices of
/// the vertices it contains.
#[derive(Clone, Debug)]
struct Facet {
    normal: Vec<BigInt>,
    offset: BigInt,
    vertices: Vec<usize>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl Hash for LatticePolytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.vertices.hash(state);
    }
}

impl PartialOrd for LatticePolytope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatticePolytope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank, &self.vertices).cmp(&(other.rank, &other.vertices))
    }
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Convex hull of a nonempty set of lattice points.
pub fn hull(points: &[IntVector]) -> Result<LatticePolytope> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let n = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(Error::RankMismatch { expected: n, found: p.len() });
    }
    if n == 0 || n > MAX_RANK {
        return Err(Error::UnsupportedRank(n));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let origin = pts[0].clone();

    // Greedy basis of the difference space; stops as soon as it is full.
    let mut independent: Vec<IntVector> = Vec::new();
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    for p in &pts[1..] {
        if independent.len() == n {
            break;
        }
        let diff = p.sub(&origin);
        let mut r = diff.to_rationals();
        for (piv, row) in &echelon {
            if !r[*piv].is_zero() {
                let f = &r[*piv] / &row[*piv];
                for (x, y) in r.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(piv) = r.iter().position(|x| !x.is_zero()) {
            echelon.push((piv, r));
            independent.push(diff);
        }
    }
    let d = independent.len();
    let (basis, coords, annihilator) = if d == n {
        let id: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        (id.clone(), id, Vec::new())
    } else {
        let s = saturate(&independent, n);
        (s.basis, s.coordinates, s.annihilator)
    };
    let local: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| {
            let diff = p.sub(&origin);
            coords.iter().map(|f| f.dot(&diff)).collect()
        })
        .collect();
    Ok(build(n, d, origin, basis, coords, annihilator, &local))
}

fn build(
    n: usize,
    d: usize,
    origin: IntVector,
    basis: Vec<IntVector>,
    coords: Vec<IntVector>,
    annihilator: Vec<IntVector>,
    local: &[Vec<BigInt>],
) -> LatticePolytope {
    fn widen<T: Scalar>(h: LocalHull<T>) -> LocalHull<BigInt> {
        LocalHull {
            vertices: h.vertices.iter().map(|v| v.iter().map(Scalar::to_big).collect()).collect(),
            facets: h
                .facets
                .into_iter()
                .map(|f| kernel::LocalFacet {
                    normal: f.normal.iter().map(Scalar::to_big).collect(),
                    offset: f.offset.to_big(),
                    vertices: f.vertices,
                })
                .collect(),
            scaled_volume: h.scaled_volume.to_big(),
        }
    }
    let h: LocalHull<BigInt> = if kernel::fits_i128(local) {
        widen(kernel::hull(&kernel::to_i128(local), d))
    } else {
        kernel::hull(local, d)
    };
    let global: Vec<IntVector> = h
        .vertices
        .iter()
        .map(|x| {
            let mut p = origin.clone();
            for (xi, b) in x.iter().zip(&basis) {
                p = p.add(&b.scale(xi));
            }
            p
        })
        .collect();
    let mut perm: Vec<usize> = (0..global.len()).collect();
    perm.sort_by(|&a, &b| global[a].cmp(&global[b]));
    let mut inv = vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let vertices: Vec<IntVector> = perm.iter().map(|&i| global[i].clone()).collect();
    let facets = h
        .facets
        .into_iter()
        .map(|f| Facet {
            normal: f.normal,
            offset: f.offset,
            vertices: f.vertices.iter().map(|&v| inv[v]).collect(),
        })
        .collect();
    let factorial: BigInt = (1..=d as u64).map(BigInt::from).product();
    LatticePolytope {
        rank: n,
        // The smallest input point is always a vertex, and the first one.
        origin,
        vertices,
        dim: d,
        coords,
        annihilator,
        facets,
        volume: Rational::new(h.scaled_volume, factorial),
        count: OnceLock::new(),
        interior: OnceLock::new(),
    }
}

impl LatticePolytope {
    /// The single point `p`.
    pub fn point(p: IntVector) -> Result<LatticePolytope> {
        hull(&[p])
    }

    /// The origin of `Z^n`, the unit of the polytope algebra.
    pub fn origin_point(n: usize) -> Result<LatticePolytope> {
        hull(&[IntVector::zeros(n)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.dim == 0
    }

    /// Euclidean volume in the lattice frame of the affine span (a
    /// fundamental cell has volume 1; a point has volume 1).
    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    /// Inner facet normals lifted to `(Q^n)^*`, with the vertex indices of
    /// each facet.
    pub fn facet_normals(&self) -> Vec<(IntVector, Vec<usize>)> {
        self.facets
            .iter()
            .map(|f| (self.lift(&f.normal), f.vertices.clone()))
            .collect()
    }

    /// Lattice basis of the functionals vanishing on the affine span's
    /// direction (empty when full-dimensional).
    pub fn orthogonal_lattice(&self) -> &[IntVector] {
        &self.annihilator
    }

    fn lift(&self, local: &[BigInt]) -> IntVector {
        let mut w = IntVector::zeros(self.rank);
        for (a, f) in local.iter().zip(&self.coords) {
            w = w.add(&f.scale(a));
        }
        w
    }

    fn local_coords(&self, p: &IntVector) -> Vec<BigInt> {
        let diff = p.sub(&self.origin);
        self.coords.iter().map(|f| f.dot(&diff)).collect()
    }

    fn local_vertices(&self) -> Vec<Vec<BigInt>> {
        self.vertices.iter().map(|v| self.local_coords(v)).collect()
    }

    /// Translation by a lattice vector.
    pub fn translate(&self, t: &IntVector) -> LatticePolytope {
        assert_eq!(t.len(), self.rank, "translation of wrong rank");
        let mut p = self.clone();
        p.vertices = self.vertices.iter().map(|v| v.add(t)).collect();
        p.origin = self.origin.add(t);
        p
    }

    /// The translate whose lexicographically smallest vertex is the origin.
    pub fn translation_normalized(&self) -> LatticePolytope {
        if self.vertices[0].is_zero() {
            return self.clone();
        }
        self.translate(&self.vertices[0].neg())
    }

    /// Number of lattice points in the polytope.
    pub fn lattice_point_count(&self) -> BigInt {
        self.count.get_or_init(|| self.scan(false)).clone()
    }

    /// Number of lattice points in the relative interior.
    pub fn relative_interior_count(&self) -> BigInt {
        self.interior.get_or_init(|| self.scan(true)).clone()
    }

    fn scan(&self, strict: bool) -> BigInt {
        if self.dim == 0 {
            return BigInt::one();
        }
        let local = self.local_vertices();
        let lo: Vec<BigInt> = (0..self.dim)
            .map(|i| local.iter().map(|v| v[i].clone()).min().expect("nonempty"))
            .collect();
        let hi: Vec<BigInt> = (0..self.dim)
            .map(|i| local.iter().map(|v| v[i].clone()).max().expect("nonempty"))
            .collect();
        let facets: Vec<(Vec<BigInt>, BigInt)> =
            self.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
        let mut probe: Vec<Vec<BigInt>> = facets.iter().map(|(a, _)| a.clone()).collect();
        probe.push(lo.clone());
        probe.push(hi.clone());
        if kernel::fits_i128(&probe) {
            let small = |v: &[BigInt]| kernel::to_i128(std::slice::from_ref(&v.to_vec())).remove(0);
            let offsets: Option<Vec<i128>> = facets.iter().map(|(_, b)| i128::try_from(b).ok()).collect();
            if let Some(offsets) = offsets {
                let f: Vec<(Vec<i128>, i128)> =
                    facets.iter().zip(offsets).map(|((a, _), b)| (small(a), b)).collect();
                return kernel::count_points(&f, &small(&lo), &small(&hi), strict);
            }
        }
        kernel::count_points(&facets, &lo, &hi, strict)
    }

    /// Lattice points on the boundary and in the interior of a lattice
    /// polygon in `Z^2`.
    pub fn boundary_and_interior_counts(&self) -> Result<(BigInt, BigInt)> {
        if self.rank != 2 || self.dim != 2 {
            return Err(Error::NotFullDimPolygon);
        }
        let total = self.lattice_point_count();
        let interior = self.relative_interior_count();
        Ok((total - &interior, interior))
    }

    /// Whether `p` lies in the polytope.
    pub fn contains(&self, p: &IntVector) -> bool {
        if !self.annihilator.iter().all(|f| f.dot(&p.sub(&self.origin)).is_zero()) {
            return false;
        }
        let x = self.local_coords(p);
        self.facets.iter().all(|f| {
            let v: BigInt = f.normal.iter().zip(&x).map(|(a, b)| a * b).sum();
            v >= f.offset
        })
    }

    /// The face on which `<w, .>` attains its minimum.
    pub fn face_minimizing(&self, w: &IntVector) -> Face<'_> {
        let vals: Vec<BigInt> = self.vertices.iter().map(|v| w.dot(v)).collect();
        let min = vals.iter().min().expect("nonempty").clone();
        let vertices: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
        Face::new(self, vertices)
    }

    /// Scales by a nonnegative integer; factor 0 gives the origin.
    pub fn dilate(&self, factor: u64) -> LatticePolytope {
        if factor == 0 {
            return LatticePolytope::origin_point(self.rank).expect("rank already validated");
        }
        if factor == 1 {
            return self.clone();
        }
        let k = BigInt::from(factor);
        let kd: BigInt = (0..self.dim).map(|_| k.clone()).product();
        let mut p = self.clone();
        p.vertices = self.vertices.iter().map(|v| v.scale(&k)).collect();
        p.origin = self.origin.scale(&k);
        for f in p.facets.iter_mut() {
            f.offset *= &k;
        }
        p.volume = &self.volume * Rational::from_integer(kd);
        p.count = OnceLock::new();
        p.interior = OnceLock::new();
        p
    }
}

/// Minkowski sum `p + q`.
pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    if p.rank != q.rank {
        return Err(Error::RankMismatch { expected: p.rank, found: q.rank });
    }
    if q.is_point() {
        return Ok(p.translate(&q.vertices[0]));
    }
    if p.is_point() {
        return Ok(q.translate(&p.vertices[0]));
    }
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for v in &p.vertices {
        for w in &q.vertices {
            pts.push(v.add(w));
        }
    }
    hull(&pts)
}

/// `factor * p`.
pub fn dilate(p: &LatticePolytope, factor: u64) -> LatticePolytope {
    p.dilate(factor)
}

pub fn lattice_point_count(p: &LatticePolytope) -> BigInt {
    p.lattice_point_count()
}

pub fn boundary_and_interior_counts(p: &LatticePolytope) -> Result<(BigInt, BigInt)> {
    p.boundary_and_interior_counts()
}

/// A face of a polytope, given by the set of vertices it contains.
#[derive(Clone, Debug)]
pub struct Face<'a> {
    polytope: &'a LatticePolytope,
    vertices: Vec<usize>,
    dim: usize,
}

impl<'a> Face<'a> {
    fn new(polytope: &'a LatticePolytope, vertices: Vec<usize>) -> Self {
        let dim = if vertices.len() == polytope.vertices.len() {
            polytope.dim
        } else {
            let base = &polytope.vertices[vertices[0]];
            let diffs: Vec<IntVector> = vertices[1..]
                .iter()
                .map(|&i| polytope.vertices[i].sub(base))
                .collect();
            crate::exactmath::rank(&diffs, polytope.rank)
        };
        Face { polytope, vertices, dim }
    }

    pub fn polytope(&self) -> &LatticePolytope {
        self.polytope
    }

    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn to_polytope(&self) -> LatticePolytope {
        if self.vertices.len() == self.polytope.vertices.len() {
            return self.polytope.clone();
        }
        let pts: Vec<IntVector> = self.vertices.iter().map(|&i| self.polytope.vertices[i].clone()).collect();
        hull(&pts).expect("face of a valid polytope")
    }
}

/// Volume of a face in the lattice frame of its own affine span.
pub fn relative_volume(f: &Face<'_>) -> Rational {
    match f.dim {
        0 => Rational::one(),
        1 => {
            let a = &f.polytope.vertices[f.vertices[0]];
            let b = &f.polytope.vertices[f.vertices[1]];
            Rational::from_integer(b.sub(a).content())
        }
        _ => f.to_polytope().volume().clone(),
    }
}

/// The inner normal fan: the cone of a face `F` is the set of functionals
/// minimized exactly on `F`. Lower-dimensional polytopes give cones with
/// the orthogonal complement of their span as lineality.
pub fn normal_fan(p: &LatticePolytope) -> Fan {
    let n = p.rank;
    let normals = p.facet_normals();
    let maximal: Vec<Cone> = (0..p.vertices.len())
        .map(|v| {
            let rays: Vec<IntVector> = normals
                .iter()
                .filter(|(_, vs)| vs.contains(&v))
                .map(|(a, _)| a.clone())
                .collect();
            Cone::from_generators(&rays, &p.annihilator, n)
        })
        .collect();
    Fan::from_cones(n, maximal, Some(p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        hull(&v.iter().map(|p| IntVector::from_i64s(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn square_and_duplicates() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 0]]);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.lattice_point_count(), BigInt::from(4));
    }

    #[test]
    fn collinear_interior_point_removed() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 0]]);
        assert_eq!(p.vertices(), &[IntVector::from_i64s(&[0, 0]), IntVector::from_i64s(&[2, 0])]);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.lattice_point_count(), BigInt::from(3));
        assert_eq!(*p.volume(), Rational::from_integer(2.into()));
    }

    #[test]
    fn lower_dimensional_in_space() {
        let p = poly(&[&[1, 1, 1], &[3, 5, 1], &[1, 1, 2]]);
        assert_eq!(p.dim(), 2);
        // lattice triangle with legs (2,4,0) and (0,0,1); the first has
        // lattice length 2, so the triangle has normalized area 1
        assert_eq!(*p.volume(), Rational::one());
        assert_eq!(p.lattice_point_count(), BigInt::from(4));
        let t = p.translate(&IntVector::from_i64s(&[-1, 2, 7]));
        assert_eq!(t.lattice_point_count(), BigInt::from(4));
    }

    #[test]
    fn rank_errors() {
        assert!(matches!(hull(&[]), Err(Error::EmptyInput)));
        let bad = [IntVector::from_i64s(&[0, 0]), IntVector::from_i64s(&[0, 0, 0])];
        assert!(matches!(hull(&bad), Err(Error::RankMismatch { .. })));
        assert!(matches!(
            hull(&[IntVector::from_i64s(&[0, 0, 0, 0])]),
            Err(Error::UnsupportedRank(4))
        ));
    }

    #[test]
    fn dilation_matches_rehull() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 2], &[0, 1]]);
        let d = p.dilate(2);
        let q = poly(&[&[0, 0], &[4, 0], &[2, 4], &[0, 2]]);
        assert_eq!(d, q);
        assert_eq!(d.lattice_point_count(), q.lattice_point_count());
        assert_eq!(d.volume(), q.volume());
    }
}
