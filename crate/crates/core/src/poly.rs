//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in `t`; `coeffs[k]` is the coefficient of `t^k`.
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::from_integers([0, 1])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: impl IntoIterator<Item = i64>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `∫_0^t p(s) ds`
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(BigRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / BigRational::from_integer(BigInt::from(k + 1)));
        }
        Self::new(out)
    }

    /// Multiplication by `t`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(BigRational::zero());
        out.extend(self.coeffs.iter().cloned());
        Self { coeffs: out }
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_integer(&self, t: i64) -> BigRational {
        self.eval(&BigRational::from_integer(t.into()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| &acc + &p)
    }
}

/// The f-function `1 + f_0 t + f_1 t^2 + … + f_d t^{d+1}` of an f-vector.
pub fn f_function(counts: &[BigUint]) -> Polynomial {
    let mut coeffs = Vec::with_capacity(counts.len() + 1);
    coeffs.push(BigRational::one());
    coeffs.extend(
        counts
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(c.clone()))),
    );
    Polynomial::new(coeffs)
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let body = match k {
                0 => rational_string(&mag),
                _ => {
                    let head = if mag.is_one() {
                        String::new()
                    } else if mag.is_integer() {
                        rational_string(&mag)
                    } else {
                        format!("({})", rational_string(&mag))
                    };
                    if k == 1 {
                        format!("{head}t")
                    } else {
                        format!("{head}t^{k}")
                    }
                }
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn antiderivative_examples() {
        let k3 = Polynomial::from_integers([1, 3, 3, 1]);
        let expected = Polynomial::new(vec![q(0, 1), q(1, 1), q(3, 2), q(1, 1), q(1, 4)]);
        assert_eq!(k3.antiderivative(), expected);
        assert_eq!(Polynomial::zero().antiderivative(), Polynomial::zero());
        assert_eq!(
            Polynomial::from_integers([1, 2]).antiderivative(),
            Polynomial::from_integers([0, 1, 1])
        );
    }

    #[test]
    fn f_function_examples() {
        let f = |v: &[u32]| f_function(&v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>());
        assert_eq!(f(&[3, 3, 1]), Polynomial::from_integers([1, 3, 3, 1]));
        assert_eq!(f(&[4, 4]), Polynomial::from_integers([1, 4, 4]));
        assert_eq!(f(&[]), Polynomial::one());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::from_integers([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = Polynomial::from_integers([1, 1]);
        let sq = &a * &a;
        assert_eq!(sq, Polynomial::from_integers([1, 2, 1]));
        assert_eq!(sq.eval_integer(-1), q(0, 1));
        assert_eq!(a.shift(), Polynomial::from_integers([0, 1, 1]));
        assert_eq!(sq.eval(&q(1, 2)), q(9, 4));
    }

    #[test]
    fn display() {
        let p = Polynomial::new(vec![q(0, 1), q(1, 1), q(3, 2), q(-2, 1)]);
        assert_eq!(p.to_string(), "t + (3/2)t^2 - 2t^3");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(
            Polynomial::from_integers([1, 4, 4]).to_string(),
            "1 + 4t + 4t^2"
        );
    }
}
