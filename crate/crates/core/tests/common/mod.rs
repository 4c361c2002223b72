//! Helpers and brute-force oracles shared by the integration tests. None of
//! the oracles use the library's hull, counting or fan code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use refinedtrop::exactmath::{lp_feasible, nullspace, IntVector, Rational};
use refinedtrop::polytope::{hull, LatticePolytope};

pub fn pt(v: &[i64]) -> IntVector {
    IntVector::from_i64s(v)
}

pub fn poly(v: &[&[i64]]) -> LatticePolytope {
    hull(&v.iter().map(|p| pt(p)).collect::<Vec<_>>()).unwrap()
}

pub fn poly_from(v: &[Vec<i64>]) -> LatticePolytope {
    hull(&v.iter().map(|p| pt(p)).collect::<Vec<_>>()).unwrap()
}

/// The unit square.
pub fn delta1() -> LatticePolytope {
    poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
}

/// conv{0, (2,0), (1,2), (0,1)}.
pub fn delta2() -> LatticePolytope {
    poly(&[&[0, 0], &[2, 0], &[1, 2], &[0, 1]])
}

pub fn segment() -> LatticePolytope {
    poly(&[&[0, 0], &[1, 0]])
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Random point sets in `[0, m]^rank`.
pub fn point_set(rank: usize, m: i64, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..=m, rank), count)
}

pub fn any_polytope(rank: usize, m: i64) -> impl Strategy<Value = LatticePolytope> {
    point_set(rank, m, 1..=6).prop_map(|v| poly_from(&v))
}

pub fn full_polytope(rank: usize, m: i64) -> impl Strategy<Value = LatticePolytope> {
    point_set(rank, m, rank + 1..=6)
        .prop_map(|v| poly_from(&v))
        .prop_filter("full-dimensional", move |p| p.dim() == rank)
}

/// Supporting hyperplanes `<a, x> >= b` of a point set, found by trying every
/// hyperplane through affinely independent points.
pub fn supporting_hyperplanes(points: &[IntVector]) -> Vec<(IntVector, BigInt)> {
    let n = points[0].len();
    let base = &points[0];
    let diffs: Vec<IntVector> = points.iter().map(|p| p.sub(base)).collect();
    // Directions orthogonal to the affine span are equations; include both signs.
    let span_eqs = nullspace(&diffs, n);
    let mut out: Vec<(IntVector, BigInt)> = Vec::new();
    for e in &span_eqs {
        out.push((e.clone(), e.dot(base)));
        out.push((e.neg(), e.neg().dot(base)));
    }
    let d = n - span_eqs.len();
    if d == 0 {
        return out;
    }
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        pts: &[IntVector],
        d: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        eqs: &[IntVector],
        out: &mut Vec<(IntVector, BigInt)>,
    ) {
        if chosen.len() == d {
            let o = &pts[chosen[0]];
            let mut rows: Vec<IntVector> = chosen[1..].iter().map(|&i| pts[i].sub(o)).collect();
            rows.extend(eqs.iter().cloned());
            let ns = nullspace(&rows, o.len());
            if ns.len() != 1 {
                return;
            }
            for a in [ns[0].clone(), ns[0].neg()] {
                let b = a.dot(o);
                if pts.iter().all(|p| a.dot(p) >= b) {
                    out.push((a, b));
                }
            }
            return;
        }
        for i in start..pts.len() {
            chosen.push(i);
            rec(pts, d, i + 1, chosen, eqs, out);
            chosen.pop();
        }
    }
    rec(points, d, 0, &mut chosen, &span_eqs, &mut out);
    out
}

/// Lattice points of the hull of `points` (total, relative interior), by
/// scanning the bounding box against brute-force supporting hyperplanes.
pub fn brute_counts(points: &[IntVector]) -> (BigInt, BigInt) {
    let n = points[0].len();
    let planes = supporting_hyperplanes(points);
    let lo: Vec<i64> = (0..n).map(|i| points.iter().map(|p| p.to_i64s().unwrap()[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..n).map(|i| points.iter().map(|p| p.to_i64s().unwrap()[i]).max().unwrap()).collect();
    let mut total = 0i64;
    let mut interior = 0i64;
    let mut x = lo.clone();
    loop {
        let v = pt(&x);
        if planes.iter().all(|(a, b)| a.dot(&v) >= *b) {
            total += 1;
            // proper faces are cut out by planes that are not equations
            let strict = planes
                .iter()
                .filter(|(a, b)| !points.iter().all(|p| a.dot(p) == *b))
                .all(|(a, b)| a.dot(&v) > *b);
            if strict {
                interior += 1;
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return (big(total), big(interior));
            }
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
    }
}

/// Membership of `x` in `conv(vertices)` by feasibility of convex weights.
pub fn lp_member(vertices: &[IntVector], x: &IntVector) -> bool {
    let m = vertices.len();
    let n = x.len();
    let mut sys: Vec<(IntVector, Rational)> = Vec::new();
    for i in 0..m {
        sys.push((IntVector::unit(m, i).neg(), Rational::zero()));
    }
    let ones = IntVector::from_i64s(&vec![1; m]);
    sys.push((ones.clone(), rat(1, 1)));
    sys.push((ones.neg(), rat(-1, 1)));
    for k in 0..n {
        let row = IntVector::new(vertices.iter().map(|v| v[k].clone()).collect());
        let xk = Rational::from_integer(x[k].clone());
        sys.push((row.clone(), xk.clone()));
        sys.push((row.neg(), -xk));
    }
    lp_feasible(m, &sys).is_feasible()
}

/// Area of the convex hull of planar points by gift wrapping and the
/// shoelace formula.
pub fn shoelace_area(points: &[IntVector]) -> Rational {
    let mut pts: Vec<(i64, i64)> = points
        .iter()
        .map(|p| {
            let v = p.to_i64s().unwrap();
            (v[0], v[1])
        })
        .collect();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Rational::zero();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let dist = |a: (i64, i64), b: (i64, i64)| (a.0 - b.0).pow(2) + (a.1 - b.1).pow(2);
    let start = pts[0];
    let mut ring = vec![start];
    let mut cur = start;
    loop {
        let mut cand = if pts[0] == cur { pts[1] } else { pts[0] };
        for &q in &pts {
            if q == cur {
                continue;
            }
            let c = cross(cur, cand, q);
            if c < 0 || (c == 0 && dist(cur, q) > dist(cur, cand)) {
                cand = q;
            }
        }
        if cand == start {
            break;
        }
        ring.push(cand);
        cur = cand;
    }
    let mut s = 0i64;
    for i in 0..ring.len() {
        let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
        s += a.0 * b.1 - a.1 * b.0;
    }
    rat(s.abs(), 2)
}

/// Pairwise sums of two point sets.
pub fn pairwise_sums(a: &[IntVector], b: &[IntVector]) -> Vec<IntVector> {
    a.iter().flat_map(|v| b.iter().map(move |w| v.add(w))).collect()
}

/// Mixed area `area(P+Q) - area(P) - area(Q)` from the oracle area.
pub fn mixed_area(p: &LatticePolytope, q: &LatticePolytope) -> Rational {
    let s = pairwise_sums(p.vertices(), q.vertices());
    shoelace_area(&s) - shoelace_area(p.vertices()) - shoelace_area(q.vertices())
}

pub fn is_nonneg(x: &BigInt) -> bool {
    !x.is_negative()
}
