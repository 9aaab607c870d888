//! Truncated formal power series, polynomials and rational functions over
//! the integers.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of `z^0 .. z^(N-1)`
//! exactly. Binary operations on series of different orders truncate to the
//! smaller order, so a pipeline never claims more coefficients than its least
//! precise input.
//!
//! Rational functions only expand to integer series when the denominator has
//! constant term `+1` or `-1`; [`expand`] enforces that.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series order must be at least 1")]
    ZeroOrder,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("denominator constant term is {0}, expected +1 or -1")]
    NonUnitDenominator(BigInt),
    #[error("substitution exponent must be at least 1")]
    ZeroSubstitution,
}

/// Polynomial with integer coefficients, constant term first.
///
/// Trailing zeros are trimmed on construction; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `coeff * z^degree`.
    pub fn monomial(coeff: BigInt, degree: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Index of the lowest nonzero coefficient; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Drops every term of degree `>= order`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order).cloned().collect())
    }

    /// `p(z) -> p(z^m)`.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1, "substitution exponent must be at least 1");
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut coeffs = vec![BigInt::zero(); deg * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Self { coeffs }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.nonzero_terms() {
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
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.nonzero_terms() {
            for (j, b) in rhs.nonzero_terms() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Quotient `num / den` of two integer polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Rejects a zero denominator. Whether the denominator has a unit constant
    /// term is checked where it matters, by [`expand`].
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_polynomial(num: Polynomial) -> Self {
        Self {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_polynomial(Polynomial::zero())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// True when the denominator's constant term is `+1` or `-1`.
    pub fn has_unit_denominator(&self) -> bool {
        self.den.constant_term().abs().is_one()
    }

    /// Multiplies the numerator by `p`.
    pub fn scale_num(&self, p: &Polynomial) -> Self {
        Self {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Coefficients of `z^0 .. z^(order-1)` of a formal power series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroOrder);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// # Panics
    /// If `order == 0`.
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "series order must be at least 1");
        Self {
            coeffs: vec![BigInt::zero(); order],
        }
    }

    /// # Panics
    /// If `order == 0`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The polynomial `p` reduced modulo `z^order`.
    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in p.nonzero_terms().take_while(|(i, _)| *i < order) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Index of the first nonzero coefficient, or `None` if every stored
    /// coefficient is zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Keeps the first `min(order, self.order())` coefficients.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1, "series order must be at least 1");
        Self {
            coeffs: self.coeffs[..order.min(self.order())].to_vec(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `F(z) -> F(z^m)`, keeping the order.
    pub fn substitute_power(&self, m: usize) -> Result<Self, SeriesError> {
        if m == 0 {
            return Err(SeriesError::ZeroSubstitution);
        }
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(m) {
                Some(j) if j < n => out.coeffs[j] = c.clone(),
                _ => break,
            }
        }
        Ok(out)
    }

    /// Product with a polynomial, touching only its nonzero terms.
    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let n = self.order();
        let mut out = vec![BigInt::zero(); n];
        for (j, pj) in p.nonzero_terms().take_while(|(j, _)| *j < n) {
            for (i, a) in self.coeffs[..n - j].iter().enumerate() {
                if !a.is_zero() {
                    out[i + j] += a * pj;
                }
            }
        }
        Self { coeffs: out }
    }

    /// Product with the expansion of `rf`.
    pub fn mul_rational(&self, rf: &RationalFunction) -> Result<Self, SeriesError> {
        let numerator = self.mul_poly(rf.num());
        divide_by_unit_poly(&numerator.coeffs, rf.den()).map(|coeffs| Self { coeffs })
    }
}

/// Expands `rf` to a series of the given order.
///
/// Solves `num = den * S (mod z^order)` term by term, which stays inside the
/// integers because `den(0)` is a unit.
pub fn expand(rf: &RationalFunction, order: usize) -> Result<TruncatedSeries, SeriesError> {
    if order == 0 {
        return Err(SeriesError::ZeroOrder);
    }
    let num = TruncatedSeries::from_polynomial(rf.num(), order);
    divide_by_unit_poly(&num.coeffs, rf.den()).map(|coeffs| TruncatedSeries { coeffs })
}

fn divide_by_unit_poly(num: &[BigInt], den: &Polynomial) -> Result<Vec<BigInt>, SeriesError> {
    let d0 = den.constant_term();
    if !d0.abs().is_one() {
        return Err(SeriesError::NonUnitDenominator(d0));
    }
    let tail: Vec<(usize, &BigInt)> = den.nonzero_terms().filter(|(j, _)| *j > 0).collect();
    let mut out: Vec<BigInt> = Vec::with_capacity(num.len());
    for (n, a) in num.iter().enumerate() {
        let mut acc = a.clone();
        for &(j, dj) in tail.iter().take_while(|(j, _)| *j <= n) {
            let prev = &out[n - j];
            if !prev.is_zero() {
                acc -= dj * prev;
            }
        }
        // d0 is its own inverse
        out.push(if d0.is_negative() { -acc } else { acc });
    }
    Ok(out)
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    /// Truncated Cauchy product.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(TruncatedSeries, Add, add);
forward_owned_binop!(TruncatedSeries, Sub, sub);
forward_owned_binop!(TruncatedSeries, Mul, mul);
forward_owned_binop!(Polynomial, Add, add);
forward_owned_binop!(Polynomial, Sub, sub);
forward_owned_binop!(Polynomial, Mul, mul);

impl fmt::Display for TruncatedSeries {
    /// Comma-separated coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
