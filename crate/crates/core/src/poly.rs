//! Integer polynomials in a single variable `q`.
//!
//! Every coefficient that shows up in this crate lives in `Z[q]`: Hecke
//! structure constants, defect generating functions and q-factorials. The
//! representation is a dense coefficient vector indexed by exponent, kept
//! free of trailing zeros so that equality is structural.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// A polynomial `c_0 + c_1 q + c_2 q^2 + ...` with integer coefficients.
///
/// The zero polynomial is the empty coefficient vector.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPoly {
    coeffs: Vec<i64>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Coefficients `c_0, c_1, ...`; empty for zero.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// Coefficient of `q^e` (zero past the degree).
    pub fn coeff(&self, e: usize) -> i64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// Adds `c * q^e` in place.
    pub fn add_term(&mut self, c: i64, e: usize) {
        if c == 0 {
            return;
        }
        if self.coeffs.len() <= e {
            self.coeffs.resize(e + 1, 0);
        }
        self.coeffs[e] += c;
        self.trim();
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; e];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Exact division by a polynomial with unit leading coefficient.
    ///
    /// Returns `None` when the divisor is zero, its leading coefficient is not
    /// `±1`, or the remainder is nonzero.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        let d = divisor.degree()?;
        let lead = divisor.coeffs[d];
        if lead != 1 && lead != -1 {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut quot = vec![0; rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = rem[i + d] * lead;
            quot[i] = c;
            if c != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= c * dc;
                }
            }
        }
        if rem.iter().all(|&c| c == 0) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

/// The q-integer `[m]_q = 1 + q + ... + q^(m-1)`, with `[0]_q = 0`.
pub fn q_int(m: usize) -> QPoly {
    QPoly::from_coeffs(vec![1; m])
}

/// The q-factorial `[m]_q! = [m]_q [m-1]_q ... [1]_q`, with `[0]_q! = 1`.
pub fn q_factorial(m: usize) -> QPoly {
    (1..=m).map(q_int).product()
}

/// Product of q-factorials of the given edge multiplicities.
pub fn r_of_v(mults: &[usize]) -> QPoly {
    mults.iter().map(|&m| q_factorial(m)).product()
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Prints terms in increasing degree, e.g. `1 + 2q + q^3`; zero prints `0`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => f.write_str("q")?,
                (1, m) => write!(f, "{m}q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, m) => write!(f, "{m}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl AddAssign for QPoly {
    fn add_assign(&mut self, rhs: QPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.trim();
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        self += &rhs;
        self
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: QPoly) -> QPoly {
        self -= &rhs;
        self
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl MulAssign<&QPoly> for QPoly {
    fn mul_assign(&mut self, rhs: &QPoly) {
        *self = &*self * rhs;
    }
}

impl Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

impl Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| acc * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(QPoly::from_coeffs(vec![1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert!(QPoly::from_coeffs(vec![0, 0]).is_zero());
        let p = QPoly::from_coeffs(vec![1, 1]);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn q_integers_and_factorials() {
        assert!(q_int(0).is_zero());
        assert_eq!(q_int(3).coeffs(), &[1, 1, 1]);
        assert!(q_factorial(0).is_one());
        assert_eq!(q_factorial(2).coeffs(), &[1, 1]);
        // [3]! = (1+q)(1+q+q^2) = 1 + 2q + 2q^2 + q^3
        assert_eq!(q_factorial(3).coeffs(), &[1, 2, 2, 1]);
        // [m]_q! at q = 1 is m!
        assert_eq!(q_factorial(5).eval(1), 120);
    }

    #[test]
    fn r_of_v_multiplies_factorials() {
        let expected = QPoly::from_coeffs(vec![1, 1]) * q_factorial(3);
        assert_eq!(r_of_v(&[2, 3]), expected);
        assert!(r_of_v(&[]).is_one());
    }

    #[test]
    fn exact_division() {
        let p = q_factorial(4);
        assert_eq!(p.div_exact(&q_int(4)).unwrap(), q_factorial(3));
        assert!(q_int(3).div_exact(&q_int(2)).is_none());
        assert!(QPoly::zero().div_exact(&q_int(2)).unwrap().is_zero());
        assert!(p.div_exact(&QPoly::zero()).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::from_coeffs(vec![1, 1]).to_string(), "1 + q");
        assert_eq!(QPoly::from_coeffs(vec![-1, 0, 2, -1]).to_string(), "-1 + 2q^2 - q^3");
    }
}
