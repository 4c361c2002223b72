use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};

/// A Laurent polynomial `sum_e c_e (y-1)^(-e)` with rational coefficients,
/// stored sparsely by the exponent `e` of `u = (y-1)^(-1)`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightPoly {
    terms: BTreeMap<i32, Rational>,
}

impl WeightPoly {
    pub fn zero() -> Self {
        WeightPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        WeightPoly::monomial(0, c)
    }

    pub fn one() -> Self {
        WeightPoly::constant(Rational::one())
    }

    /// `c * u^e`.
    pub fn monomial(e: i32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        WeightPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `u^e`.
    pub fn coeff(&self, e: i32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing order of `e`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn exponents(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().copied()
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> WeightPoly {
        if c.is_zero() {
            return WeightPoly::zero();
        }
        WeightPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Shifts every exponent of `u` by `k` (multiplication by `u^k`).
    pub fn shift(&self, k: i32) -> WeightPoly {
        WeightPoly {
            terms: self.terms.iter().map(|(e, x)| (e + k, x.clone())).collect(),
        }
    }

    /// Value at `y`, i.e. with `u = 1/(y-1)`.
    pub fn evaluate(&self, y: &Rational) -> Result<Rational> {
        let t = y - Rational::one();
        if t.is_zero() {
            return Err(Error::YEqualsOne);
        }
        let u = t.recip();
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let p = if *e >= 0 { pow(&u, *e as u32) } else { pow(&t, e.unsigned_abs()) };
                c * p
            })
            .sum())
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

impl Add<&WeightPoly> for &WeightPoly {
    type Output = WeightPoly;
    fn add(self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub<&WeightPoly> for &WeightPoly {
    type Output = WeightPoly;
    fn sub(self, rhs: &WeightPoly) -> WeightPoly {
        self + &(-rhs)
    }
}

impl Neg for &WeightPoly {
    type Output = WeightPoly;
    fn neg(self) -> WeightPoly {
        WeightPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul<&WeightPoly> for &WeightPoly {
    type Output = WeightPoly;
    fn mul(self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = WeightPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl From<Rational> for WeightPoly {
    fn from(c: Rational) -> Self {
        WeightPoly::constant(c)
    }
}

/// Writes `c*(y-1)^k` with `k = -e`, in the order of the stored exponents,
/// e.g. `-5/2*(y-1)^-1 - 5*(y-1)^-2`.
impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = match -e {
                0 => None,
                1 => Some("(y-1)".to_string()),
                k => Some(format!("(y-1)^{k}")),
            };
            match power {
                None => write!(f, "{}", format_rational(&mag))?,
                Some(p) if mag.is_one() => write!(f, "{p}")?,
                Some(p) => write!(f, "{}*{p}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn formatting() {
        let mut w = WeightPoly::zero();
        w.add_term(1, &rat(-5, 2));
        w.add_term(2, &rat(-5, 1));
        assert_eq!(w.to_string(), "-5/2*(y-1)^-1 - 5*(y-1)^-2");
        assert_eq!(WeightPoly::monomial(1, rat(1, 1)).to_string(), "(y-1)^-1");
        assert_eq!(WeightPoly::monomial(1, rat(2, 1)).to_string(), "2*(y-1)^-1");
        let mut o = WeightPoly::monomial(1, rat(-1, 1));
        o.add_term(2, &rat(-2, 1));
        assert_eq!(o.to_string(), "-(y-1)^-1 - 2*(y-1)^-2");
        assert_eq!(WeightPoly::zero().to_string(), "0");
        assert_eq!(WeightPoly::constant(rat(3, 1)).to_string(), "3");
    }

    #[test]
    fn evaluation() {
        let mut o = WeightPoly::monomial(1, rat(-1, 1));
        o.add_term(2, &rat(-2, 1));
        assert_eq!(o.evaluate(&rat(0, 1)).unwrap(), rat(-1, 1));
        assert_eq!(WeightPoly::monomial(1, rat(1, 1)).evaluate(&rat(0, 1)).unwrap(), rat(-1, 1));
        assert_eq!(o.evaluate(&rat(2, 1)).unwrap(), rat(-3, 1));
        assert!(matches!(o.evaluate(&rat(1, 1)), Err(Error::YEqualsOne)));
    }

    #[test]
    fn products_are_laurent() {
        let a = WeightPoly::monomial(1, rat(2, 1));
        let b = &WeightPoly::monomial(-1, rat(1, 1)) + &WeightPoly::one();
        let p = &a * &b;
        assert_eq!(p.coeff(0), rat(2, 1));
        assert_eq!(p.coeff(1), rat(2, 1));
        assert!((&p - &p).is_zero());
    }
}
