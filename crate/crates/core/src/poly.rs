//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Exponent vector of `X_1^{e_1} ... X_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn eval(&self, point: &[i64]) -> BigInt {
        self.0
            .iter()
            .zip(point)
            .fold(BigInt::one(), |acc, (&e, &x)| acc * BigInt::from(x).pow(e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("X{}", i + 1)
                } else {
                    format!("X{}^{e}", i + 1)
                }
            })
            .collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// A polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// One serialized term: exponent vector and coefficient as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub exps: Vec<u32>,
    pub coef: String,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), BigRational::from_integer(c.into()));
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), BigRational::one());
        p
    }

    /// `sum_i coeffs[i] X_i + constant`.
    pub fn linear(coeffs: &[BigInt], constant: &BigInt) -> Self {
        let n = coeffs.len();
        let mut p = Poly::constant(n, constant.clone());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), BigRational::from_integer(c.clone()));
        }
        p
    }

    /// `sum_k coeffs[k] * monomials[k]`.
    pub fn from_coefficients(nvars: usize, monomials: &[Monomial], coeffs: &[BigInt]) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in monomials.iter().zip(coeffs) {
            p.add_term(m.clone(), BigRational::from_integer(c.clone()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[i64]) -> BigRational {
        self.terms
            .iter()
            .map(|(m, c)| c * BigRational::from_integer(m.eval(point)))
            .sum()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, v) in &self.terms {
            p.add_term(m.clone(), v * c);
        }
        p
    }

    /// Scales by a positive rational so that every coefficient is an
    /// integer and their gcd is one.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &den / c.denom())));
        self.scale(&BigRational::new(den, num))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(BigRational::is_integer)
    }

    pub fn to_terms(&self) -> Vec<Term> {
        // Highest degree first, then descending exponent vectors.
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        terms
            .into_iter()
            .map(|(m, c)| Term {
                exps: m.0.clone(),
                coef: c.to_string(),
            })
            .collect()
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn arithmetic_and_evaluation() {
        // X1^2 - X1 X2 + X2^2 - X1 - X2
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &(&(&(&(&a * &a) - &(&a * &b)) + &(&b * &b)) - &a) - &b;
        assert_eq!(p.degree(), 2);
        let at = |pt: [i64; 2]| p.eval(&pt).to_integer();
        assert_eq!(at([2, 0]), BigInt::from(2));
        assert_eq!(at([1, 1]), BigInt::from(-1));
        assert_eq!(at([0, 2]), BigInt::from(2));
        assert_eq!(at([0, 0]), BigInt::zero());
        assert_eq!(p.to_string(), "X1^2 - X1*X2 + X2^2 - X1 - X2");
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = x(3, 0);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn primitive_clears_denominators() {
        let mut p = Poly::zero(2);
        p.add_term(Monomial::var(2, 0), BigRational::new(1.into(), 2.into()));
        p.add_term(Monomial::one(2), BigRational::new((-3).into(), 4.into()));
        let q = p.primitive();
        assert!(q.has_integer_coefficients());
        assert_eq!(q.to_string(), "2*X1 - 3");
    }

    #[test]
    fn serializes_as_term_list() {
        let p = &Poly::linear(&[BigInt::from(1), BigInt::from(-1)], &BigInt::zero()) * &Poly::constant(2, 3);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"exps":[1,0],"coef":"3"},{"exps":[0,1],"coef":"-3"}]"#);
    }
}
