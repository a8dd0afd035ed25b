//! Dense univariate polynomials over the integers and exact rationals.
//!
//! Coefficients are stored in ascending order (`coeffs[j]` multiplies `x^j`)
//! with trailing zeros trimmed, so the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always reduced with a positive denominator.
pub type Rational = BigRational;

/// Builds a rational from machine integers. Panics on a zero denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sign of a nonzero coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, magnitude: &BigInt) -> BigInt {
        match self {
            Sign::Plus => magnitude.clone(),
            Sign::Minus => -magnitude,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Ascending coefficients `a_0, a_1, ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// gcd of the absolute values of all coefficients.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c)))
    }

    /// Divides out the content and flips the sign so the leading coefficient is positive.
    pub fn primitive_part(&self) -> Result<Polynomial> {
        let mut g = self.content()?;
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Ok(Polynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        })
    }

    pub fn is_canonical(&self) -> bool {
        match self.leading() {
            Some(lc) if lc.is_positive() => self.content().is_ok_and(|g| g.is_one()),
            _ => false,
        }
    }

    pub fn ensure_canonical(&self) -> Result<()> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::NonCanonical(self.to_string()))
        }
    }

    /// Exact Horner evaluation.
    pub fn eval_at(&self, q: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * q + Rational::from_integer(c.clone())
        })
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(q)` computed on the homogenised integer form `den^deg * p(num/den)`.
    pub fn sign_at(&self, q: &Rational) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let (u, v) = (q.numer(), q.denom());
        let mut acc = BigInt::zero();
        let mut vpow = BigInt::one();
        // sum a_j u^j v^(d-j), built from the top: acc = acc*u + a_j * v^(d-j)
        let mut vpows = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            vpows.push(vpow.clone());
            vpow *= v;
        }
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * u + c * &vpows[d - j];
        }
        acc.sign_ordering()
    }

    /// Formal derivative; degree-0 input gives the zero polynomial.
    pub fn derivative(&self) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigInt::from(j))
                .collect(),
        )
    }

    /// Returns `Some(q)` with `self = d * q` over the integers, `None` otherwise.
    pub fn exact_divide(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(pd) = self.degree() else {
            return Ok(Some(Polynomial::zero()));
        };
        if pd < dd {
            return Ok(None);
        }
        let lc = d.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); pd - dd + 1];
        for shift in (0..=pd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Ok(None);
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * dc;
            }
            quot[shift] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Ok(Some(Polynomial::new(quot)))
        } else {
            Ok(None)
        }
    }

    /// `±p(-x)` with the sign chosen so the leading coefficient stays positive.
    pub fn reflect(&self) -> Polynomial {
        let mut coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
            .collect();
        if coeffs.last().is_some_and(Signed::is_negative) {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
        Polynomial { coeffs }
    }

    /// Sum of the absolute values of all coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(BigInt::abs).sum()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul<&BigInt> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * rhs).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Renders `x^3+x^2-1`, `2x-1`, `x`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            if j == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match j {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
