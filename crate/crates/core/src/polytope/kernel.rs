//! Full-dimensional convex hulls, volumes and lattice-point scans in local
//! coordinates `Z^d`, `d <= 3`.
//!
//! The routines are generic over the integer type so the common small-input
//! case runs on `i128` while huge coordinates still go through `BigInt`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

pub(crate) trait Scalar: Clone + Ord + Integer + Signed + From<i64> + Debug {
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Whether coordinates of this size are safe for the `i128` kernel: 3x3
/// determinants and facet evaluations stay below `2^127`.
pub(crate) fn fits_i128(points: &[Vec<BigInt>]) -> bool {
    let bound = BigInt::from(1u64 << 40);
    points.iter().flatten().all(|x| x.abs() < bound)
}

pub(crate) fn to_i128(points: &[Vec<BigInt>]) -> Vec<Vec<i128>> {
    points
        .iter()
        .map(|p| p.iter().map(|x| x.to_i128().expect("checked by fits_i128")).collect())
        .collect()
}

/// Inner facet `<normal, x> >= offset` with its vertices. For `d = 3` the
/// vertices are in cyclic order around the facet.
#[derive(Clone, Debug)]
pub(crate) struct LocalFacet<T> {
    pub normal: Vec<T>,
    pub offset: T,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct LocalHull<T> {
    pub vertices: Vec<Vec<T>>,
    pub facets: Vec<LocalFacet<T>>,
    /// Twice the area for `d = 2`, six times the volume for `d = 3`, the
    /// length for `d = 1` and `1` for `d = 0`.
    pub scaled_volume: T,
}

fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (x, y)| s + x.clone() * y.clone())
}

fn cross2<T: Scalar>(o: &[T], a: &[T], b: &[T]) -> T {
    let (ax, ay) = (a[0].clone() - o[0].clone(), a[1].clone() - o[1].clone());
    let (bx, by) = (b[0].clone() - o[0].clone(), b[1].clone() - o[1].clone());
    ax * by - ay * bx
}

fn cross3<T: Scalar>(u: &[T], v: &[T]) -> Vec<T> {
    vec![
        u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ]
}

fn orient3<T: Scalar>(a: &[T], b: &[T], c: &[T], p: &[T]) -> T {
    dot(&cross3(&sub(b, a), &sub(c, a)), &sub(p, a))
}

fn primitive<T: Scalar>(v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / g.clone()).collect()
}

/// Counterclockwise hull cycle of 2D points, as indices into `pts`. Collinear
/// boundary points are dropped.
fn chain_2d<T: Scalar>(pts: &[Vec<T>], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    order.dedup_by(|a, b| pts[*a] == pts[*b]);
    if order.len() <= 2 {
        return order;
    }
    let half = |iter: &mut dyn Iterator<Item = usize>| {
        let mut h: Vec<usize> = Vec::new();
        for p in iter {
            while h.len() >= 2
                && cross2(&pts[h[h.len() - 2]], &pts[h[h.len() - 1]], &pts[p]) <= T::zero()
            {
                h.pop();
            }
            h.push(p);
        }
        h.pop();
        h
    };
    let mut lower = half(&mut order.iter().copied());
    let upper = half(&mut order.iter().rev().copied());
    lower.extend(upper);
    lower
}

/// Hull of points spanning `Z^d` affinely.
pub(crate) fn hull<T: Scalar>(points: &[Vec<T>], d: usize) -> LocalHull<T> {
    let mut pts: Vec<Vec<T>> = points.to_vec();
    pts.sort();
    pts.dedup();
    match d {
        0 => LocalHull {
            vertices: vec![Vec::new()],
            facets: Vec::new(),
            scaled_volume: T::one(),
        },
        1 => hull_1d(pts),
        2 => hull_2d(pts),
        3 => hull_3d(pts),
        _ => unreachable!("local hull dimension {d}"),
    }
}

fn hull_1d<T: Scalar>(pts: Vec<Vec<T>>) -> LocalHull<T> {
    let lo = pts.first().expect("nonempty")[0].clone();
    let hi = pts.last().expect("nonempty")[0].clone();
    LocalHull {
        vertices: vec![vec![lo.clone()], vec![hi.clone()]],
        facets: vec![
            LocalFacet { normal: vec![T::one()], offset: lo.clone(), vertices: vec![0] },
            LocalFacet { normal: vec![-T::one()], offset: -hi.clone(), vertices: vec![1] },
        ],
        scaled_volume: hi - lo,
    }
}

fn hull_2d<T: Scalar>(pts: Vec<Vec<T>>) -> LocalHull<T> {
    let all: Vec<usize> = (0..pts.len()).collect();
    let cycle = chain_2d(&pts, &all);
    let mut vertices: Vec<Vec<T>> = cycle.iter().map(|&i| pts[i].clone()).collect();
    let m = vertices.len();
    let mut area2 = T::zero();
    let mut facets = Vec::with_capacity(m);
    for i in 0..m {
        let (a, b) = (&vertices[i], &vertices[(i + 1) % m]);
        area2 = area2 + (a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone());
        let e = sub(b, a);
        let normal = primitive(vec![-e[1].clone(), e[0].clone()]);
        let offset = dot(&normal, a);
        facets.push(LocalFacet { normal, offset, vertices: vec![i, (i + 1) % m] });
    }
    // Report vertices in lexicographic order, remapping facet indices.
    let mut perm: Vec<usize> = (0..m).collect();
    perm.sort_by(|&x, &y| vertices[x].cmp(&vertices[y]));
    let mut inv = vec![0; m];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    for f in facets.iter_mut() {
        for v in f.vertices.iter_mut() {
            *v = inv[*v];
        }
    }
    vertices = perm.iter().map(|&i| vertices[i].clone()).collect();
    LocalHull { vertices, facets, scaled_volume: area2 }
}

fn hull_3d<T: Scalar>(pts: Vec<Vec<T>>) -> LocalHull<T> {
    let n = pts.len();
    let i0 = 0;
    let i1 = 1;
    let i2 = (2..n)
        .find(|&i| cross3(&sub(&pts[i1], &pts[i0]), &sub(&pts[i], &pts[i0])).iter().any(|x| !x.is_zero()))
        .expect("points span a plane");
    let i3 = (2..n)
        .find(|&i| !orient3(&pts[i0], &pts[i1], &pts[i2], &pts[i]).is_zero())
        .expect("points span space");

    let mut faces: Vec<[usize; 3]> = Vec::new();
    let simplex = [i0, i1, i2, i3];
    for skip in 0..4 {
        let f: Vec<usize> = simplex.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
        let (a, mut b, mut c) = (f[0], f[1], f[2]);
        if orient3(&pts[a], &pts[b], &pts[c], &pts[simplex[skip]]) > T::zero() {
            std::mem::swap(&mut b, &mut c);
        }
        faces.push([a, b, c]);
    }

    for p in 0..n {
        if simplex.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| orient3(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[p]) > T::zero())
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut vis_edges = BTreeSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            for k in 0..3 {
                vis_edges.insert((f[k], f[(k + 1) % 3]));
            }
        }
        let mut next: Vec<[usize; 3]> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| *f)
            .collect();
        for &(a, b) in &vis_edges {
            if !vis_edges.contains(&(b, a)) {
                next.push([a, b, p]);
            }
        }
        faces = next;
    }

    // Merge coplanar triangles into facets; each facet's vertices are the
    // 2D hull of all points on its plane.
    let mut planes: BTreeMap<Vec<T>, T> = BTreeMap::new();
    for f in &faces {
        let nrm = primitive(cross3(&sub(&pts[f[1]], &pts[f[0]]), &sub(&pts[f[2]], &pts[f[0]])));
        let off = dot(&nrm, &pts[f[0]]);
        planes.insert(nrm, off);
    }
    let mut facet_cycles: Vec<(Vec<T>, T, Vec<usize>)> = Vec::new();
    let mut vertex_set = BTreeSet::new();
    for (nrm, off) in planes {
        let on: Vec<usize> = (0..n).filter(|&i| dot(&nrm, &pts[i]) == off).collect();
        let drop = nrm.iter().position(|x| !x.is_zero()).expect("nonzero normal");
        let proj: Vec<Vec<T>> = pts
            .iter()
            .map(|q| q.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, x)| x.clone()).collect())
            .collect();
        let cycle = chain_2d(&proj, &on);
        vertex_set.extend(cycle.iter().copied());
        facet_cycles.push((nrm, off, cycle));
    }
    // vertex_set iterates in index order, and pts is sorted, so the vertex
    // list comes out lexicographic.
    let vidx: Vec<usize> = vertex_set.into_iter().collect();
    let pos: BTreeMap<usize, usize> = vidx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let vertices: Vec<Vec<T>> = vidx.iter().map(|&i| pts[i].clone()).collect();

    let apex = &vertices[0];
    let mut vol6 = T::zero();
    let mut facets = Vec::new();
    for (nrm, off, cycle) in facet_cycles {
        let local: Vec<usize> = cycle.iter().map(|i| pos[i]).collect();
        if dot(&nrm, apex) != off {
            let w0 = &vertices[local[0]];
            for k in 1..local.len() - 1 {
                let (w1, w2) = (&vertices[local[k]], &vertices[local[k + 1]]);
                vol6 = vol6 + orient3(apex, w0, w1, w2).abs();
            }
        }
        facets.push(LocalFacet {
            normal: nrm.into_iter().map(|x| -x).collect(),
            offset: -off,
            vertices: local,
        });
    }
    LocalHull { vertices, facets, scaled_volume: vol6 }
}

/// Counts integer points satisfying every facet inequality, tightened by one
/// when `strict` (relative interior). `lo`/`hi` bound the polytope.
pub(crate) fn count_points<T: Scalar>(
    facets: &[(Vec<T>, T)],
    lo: &[T],
    hi: &[T],
    strict: bool,
) -> BigInt {
    let d = lo.len();
    if d == 0 {
        return BigInt::from(1);
    }
    let bounds: Vec<(Vec<T>, T)> = facets
        .iter()
        .map(|(a, b)| (a.clone(), if strict { b.clone() + T::one() } else { b.clone() }))
        .collect();
    let mut prefix = Vec::with_capacity(d);
    let mut total = T::zero();
    scan(&bounds, lo, hi, &mut prefix, &mut total);
    total.to_big()
}

fn scan<T: Scalar>(bounds: &[(Vec<T>, T)], lo: &[T], hi: &[T], prefix: &mut Vec<T>, total: &mut T) {
    let d = lo.len();
    let k = prefix.len();
    if k + 1 == d {
        // Interval for the last coordinate.
        let (mut a, mut b) = (lo[k].clone(), hi[k].clone());
        for (nrm, off) in bounds {
            let rest = off.clone() - dot(&nrm[..k], prefix);
            let c = &nrm[k];
            if c.is_positive() {
                let bound = div_ceil(&rest, c);
                if bound > a {
                    a = bound;
                }
            } else if c.is_negative() {
                let bound = (-rest).div_floor(&-c.clone());
                if bound < b {
                    b = bound;
                }
            } else if rest.is_positive() {
                return;
            }
            if a > b {
                return;
            }
        }
        *total = total.clone() + (b - a + T::one());
        return;
    }
    let mut x = lo[k].clone();
    while x <= hi[k] {
        prefix.push(x.clone());
        scan(bounds, lo, hi, prefix, total);
        prefix.pop();
        x = x + T::one();
    }
}

fn div_ceil<T: Scalar>(a: &T, b: &T) -> T {
    -((-a.clone()).div_floor(b))
}
