//! Exact feasibility of systems `<a, x> <= b` over Q by Fourier–Motzkin
//! elimination.
//!
//! Opposite pairs `a <= b`, `-a <= -b` are recognized as equalities and
//! eliminated by substitution first, which keeps the elimination small for
//! the cone-intersection systems the crate produces.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{IntVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// Feasible, with a rational witness point.
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    a: Vec<Rational>,
    b: Rational,
}

impl Row {
    /// Scales so the first nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Row {
        if let Some(lead) = self.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in self.a.iter_mut() {
                *x /= &lead;
            }
            self.b /= &lead;
        }
        self
    }

    fn is_trivial(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }
}

/// A substitution `x[var] = (b - sum_{j != var} a_j x_j) / a_var`.
struct Substitution {
    var: usize,
    row: Row,
}

/// Decides whether `{x in Q^dim : <a_i, x> <= b_i for all i}` is nonempty.
pub fn lp_feasible(dim: usize, constraints: &[(IntVector, Rational)]) -> Feasibility {
    let rows: Vec<Row> = constraints
        .iter()
        .map(|(a, b)| {
            assert_eq!(a.len(), dim, "constraint of wrong dimension");
            Row {
                a: a.to_rationals(),
                b: b.clone(),
            }
            .normalized()
        })
        .collect();
    let Some(rows) = dedupe(rows) else {
        return Feasibility::Infeasible;
    };
    let Some((rows, subs)) = eliminate_equalities(rows, dim) else {
        return Feasibility::Infeasible;
    };

    // Fourier–Motzkin: stage[k] involves only variables < dim - k.
    let mut stages = vec![rows];
    for var in (0..dim).rev() {
        let cur = stages.last().expect("nonempty");
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in cur {
            if r.a[var].is_positive() {
                pos.push(r);
            } else if r.a[var].is_negative() {
                neg.push(r);
            } else {
                keep.push(r.clone());
            }
        }
        for p in &pos {
            for q in &neg {
                // p.a[var] = 1, q.a[var] = -1 after normalization, unless an
                // earlier variable led; scale explicitly.
                let sp = -q.a[var].clone();
                let sq = p.a[var].clone();
                let a: Vec<Rational> = p.a.iter().zip(&q.a).map(|(x, y)| x * &sp + y * &sq).collect();
                let b = &p.b * &sp + &q.b * &sq;
                keep.push(Row { a, b }.normalized());
            }
        }
        match dedupe(keep) {
            Some(next) => stages.push(next),
            None => return Feasibility::Infeasible,
        }
    }

    // Back-substitution: choose each variable inside its interval.
    let mut x = vec![Rational::zero(); dim];
    for var in 0..dim {
        let stage = &stages[dim - 1 - var];
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for r in stage {
            let c = &r.a[var];
            if c.is_zero() {
                continue;
            }
            let rest: Rational = (0..var).map(|j| &r.a[j] * &x[j]).sum();
            let bound = (&r.b - rest) / c;
            if c.is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        x[var] = match (lo, hi) {
            (Some(l), Some(h)) => {
                if l > h {
                    return Feasibility::Infeasible;
                }
                (l + h) / Rational::from_integer(2.into())
            }
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => Rational::zero(),
        };
    }
    for s in subs.iter().rev() {
        let rest: Rational = (0..dim)
            .filter(|&j| j != s.var)
            .map(|j| &s.row.a[j] * &x[j])
            .sum();
        x[s.var] = (&s.row.b - rest) / &s.row.a[s.var];
    }
    debug_assert!(constraints
        .iter()
        .all(|(a, b)| a.dot_rational(&x) <= *b));
    Feasibility::Feasible(x)
}

/// Removes trivial rows and keeps the tightest bound per direction. Returns
/// `None` on a trivially violated row `0 <= b < 0`.
fn dedupe(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for r in rows {
        if r.is_trivial() {
            if r.b.is_negative() {
                return None;
            }
            continue;
        }
        best.entry(r.a)
            .and_modify(|b| {
                if r.b < *b {
                    *b = r.b.clone();
                }
            })
            .or_insert(r.b);
    }
    Some(best.into_iter().map(|(a, b)| Row { a, b }).collect())
}

fn eliminate_equalities(mut rows: Vec<Row>, dim: usize) -> Option<(Vec<Row>, Vec<Substitution>)> {
    let mut subs = Vec::new();
    loop {
        let mut found = None;
        'search: for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let opposite = rows[i].a.iter().zip(&rows[j].a).all(|(x, y)| *x == -y.clone());
                if opposite {
                    if rows[i].b < -rows[j].b.clone() {
                        return None;
                    }
                    if rows[i].b == -rows[j].b.clone() {
                        found = Some((i, j));
                        break 'search;
                    }
                }
            }
        }
        let Some((i, j)) = found else { break };
        let eq = rows[i].clone();
        rows.remove(j);
        rows.remove(i);
        let var = (0..dim).find(|&k| !eq.a[k].is_zero()).expect("nontrivial equality");
        let next: Vec<Row> = rows
            .into_iter()
            .map(|r| {
                if r.a[var].is_zero() {
                    return r;
                }
                let f = &r.a[var] / &eq.a[var];
                let a = r.a.iter().zip(&eq.a).map(|(x, y)| x - &f * y).collect();
                let b = &r.b - &f * &eq.b;
                Row { a, b }.normalized()
            })
            .collect();
        subs.push(Substitution { var, row: eq });
        rows = dedupe(next)?;
    }
    Some((rows, subs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};

    fn c(a: &[i64], b: i64) -> (IntVector, Rational) {
        (IntVector::from_i64s(a), rat_int(b))
    }

    #[test]
    fn contradictory_bounds() {
        assert_eq!(lp_feasible(1, &[c(&[1], 1), c(&[-1], -2)]), Feasibility::Infeasible);
    }

    #[test]
    fn single_point() {
        let f = lp_feasible(1, &[c(&[1], 0), c(&[-1], 0)]);
        assert_eq!(f.witness().unwrap(), &[rat(0, 1)]);
    }

    #[test]
    fn unit_square() {
        let sys = [c(&[1, 0], 1), c(&[-1, 0], 0), c(&[0, 1], 1), c(&[0, -1], 0)];
        let f = lp_feasible(2, &sys);
        let w = f.witness().unwrap();
        for (a, b) in &sys {
            assert!(a.dot_rational(w) <= *b);
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(lp_feasible(3, &[]).is_feasible());
    }

    #[test]
    fn thin_triangle_infeasible_after_elimination() {
        // x + y <= 1, x >= 1, y >= 1
        let sys = [c(&[1, 1], 1), c(&[-1, 0], -1), c(&[0, -1], -1)];
        assert_eq!(lp_feasible(2, &sys), Feasibility::Infeasible);
    }

    #[test]
    fn equality_with_rational_witness() {
        // 2x = 1, y >= x, y <= 3
        let sys = [c(&[2, 0], 1), c(&[-2, 0], -1), c(&[1, -1], 0), c(&[0, 1], 3)];
        let w = lp_feasible(2, &sys);
        let w = w.witness().unwrap();
        assert_eq!(w[0], rat(1, 2));
        assert!(w[1] >= rat(1, 2) && w[1] <= rat(3, 1));
    }
}
