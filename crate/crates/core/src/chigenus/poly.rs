use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};

/// A polynomial in `y` with integer coefficients, stored in increasing
/// degree without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ChiPolynomial {
    coeffs: Vec<BigInt>,
}

impl ChiPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ChiPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ChiPolynomial::default()
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        ChiPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `(y-1)^n`.
    pub fn torus(n: usize) -> Self {
        let mut out = Vec::new();
        add_scaled_power(&mut out, &Rational::one(), n as u32);
        ChiPolynomial::from_rationals(&out).expect("integral")
    }

    /// Fails with `NonIntegralResult` unless every coefficient is an integer.
    pub fn from_rationals(c: &[Rational]) -> Result<Self> {
        let mut out = Vec::with_capacity(c.len());
        for (i, x) in c.iter().enumerate() {
            if !x.is_integer() {
                return Err(Error::NonIntegralResult(format!(
                    "coefficient of y^{i} is {}",
                    format_rational(x)
                )));
            }
            out.push(x.to_integer());
        }
        Ok(ChiPolynomial::new(out))
    }

    /// Coefficients in increasing degree.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, p: usize) -> BigInt {
        self.coeffs.get(p).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, y: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
    }
}

/// `acc += c * (y-1)^k`, coefficients in increasing degree.
pub(crate) fn add_scaled_power(acc: &mut Vec<Rational>, c: &Rational, k: u32) {
    let k = k as usize;
    if acc.len() <= k {
        acc.resize(k + 1, Rational::zero());
    }
    // binom(k, j) (-1)^(k-j) y^j
    let mut b = BigInt::one();
    for j in 0..=k {
        let term = Rational::from_integer(b.clone()) * c;
        if (k - j) % 2 == 0 {
            acc[j] += term;
        } else {
            acc[j] -= term;
        }
        b = b * BigInt::from(k - j) / BigInt::from(j + 1);
    }
}

impl fmt::Debug for ChiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Decreasing degree, e.g. `y^2 - 2*y + 1`, `y - 3`, `-5`.
impl fmt::Display for ChiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let mono = match p {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{p}"),
            };
            if p == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}
