//! Divide-and-conquer functional equations
//!
//! ```text
//! c_0(z) F(z) + c_1(z) F(z^2) + ... + c_N(z) F(z^(2^N)) = b(z)
//! ```
//!
//! with polynomial `c_k` and rational `b`. A homogeneous equation (`b = 0`)
//! is Mahlerian. Equations are kept with denominators cleared from the
//! `c_k`, so checking one against a truncated series needs no series
//! division.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::families::{tail_polynomial, FamilyError, FamilyKind, FamilySpec};
use crate::series::{expand, Polynomial, RationalFunction, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MahlerError {
    #[error("an equation needs at least c_0 and c_1")]
    TooShallow,
    #[error("all coefficient polynomials are zero")]
    AllZero,
    #[error("right-hand side denominator must have constant term +1 or -1")]
    NonUnitRhs,
    #[error("cannot scale an equation by the zero polynomial")]
    ZeroScale,
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MahlerEquation {
    coeffs: Vec<Polynomial>,
    rhs: RationalFunction,
}

/// Outcome of checking an equation against a truncated series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    /// Every residual coefficient below `verified_order` is zero.
    Pass { verified_order: usize },
    /// First nonzero residual coefficient.
    Fail { exponent: usize, residual: BigInt },
}

impl Verification {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verification::Pass { .. })
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verification::Pass { verified_order } => write!(f, "PASS (verified to order {verified_order})"),
            Verification::Fail { exponent, residual } => {
                write!(f, "FAIL at z^{exponent}: residual {residual}")
            }
        }
    }
}

impl MahlerEquation {
    /// `coeffs[k]` multiplies `F(z^(2^k))`.
    pub fn new(coeffs: Vec<Polynomial>, rhs: RationalFunction) -> Result<Self, MahlerError> {
        if coeffs.len() < 2 {
            return Err(MahlerError::TooShallow);
        }
        if coeffs.iter().all(Polynomial::is_zero) {
            return Err(MahlerError::AllZero);
        }
        if !rhs.has_unit_denominator() {
            return Err(MahlerError::NonUnitRhs);
        }
        Ok(Self { coeffs, rhs })
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &RationalFunction {
        &self.rhs
    }

    /// Largest degree among the `c_k`.
    pub fn max_degree(&self) -> usize {
        self.coeffs.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// The same equation with every `c_k` and the rhs numerator multiplied
    /// by `p`.
    pub fn scaled(&self, p: &Polynomial) -> Result<Self, MahlerError> {
        if p.is_zero() {
            return Err(MahlerError::ZeroScale);
        }
        Ok(Self {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
            rhs: self.rhs.scale_num(p),
        })
    }
}

/// Evaluates `sum_k c_k(z) F(z^(2^k)) - b(z)` on the window
/// `order(F) - max deg c_k` and reports the first nonzero coefficient.
pub fn check_equation(eq: &MahlerEquation, series: &TruncatedSeries) -> Result<Verification, MahlerError> {
    let window = series.order().saturating_sub(eq.max_degree());
    if window == 0 {
        return Ok(Verification::Pass { verified_order: 0 });
    }
    let f = series.truncate(window);
    let mut residual = -&expand(eq.rhs(), window)?;
    for (k, c) in eq.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let m = 1usize.checked_shl(k as u32).filter(|&m| m < window);
        let fk = match m {
            Some(m) => f.substitute_power(m)?,
            // only the constant term survives
            None => TruncatedSeries::from_polynomial(&Polynomial::constant(f.coeff(0).clone()), window),
        };
        residual = &residual + &fk.mul_poly(c);
    }
    Ok(match residual.coeffs().iter().position(|r| !r.is_zero()) {
        None => Verification::Pass { verified_order: window },
        Some(exponent) => Verification::Fail {
            exponent,
            residual: residual.coeff(exponent).clone(),
        },
    })
}

fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_i64s(c)
}

/// The equation obtained by splitting off the `k = 0` term of the family's
/// sum or product, denominators cleared from the `c_k`:
///
/// * T1: `(1-z) F(z) - c (1-z) F(z^2) = z`
/// * T2: `(1-z^2) F(z) - c (1-z^2) F(z^2) = z`
/// * T3: `F(z) - (1 + c z) F(z^2) = 0`
/// * T4: `(1-z) F(z) - alpha (1-z^2) F(z^2) = (d z + c z^2) / (1+z)`
/// * T5: `F(z) - (1 + c z + sum c_i z^(2i)) F(z^2) = 0`
/// * T6 (regularised): `F(z) - F(z^2) = Q / (1 - Q)` with `Q = sum c_i z^i`
pub fn equation_for_family(spec: &FamilySpec) -> Result<MahlerEquation, MahlerError> {
    spec.validate()?;
    let spec = spec.canonical();
    let c = BigInt::from(spec.c);
    let poly_rhs = |q: Polynomial| RationalFunction::from_polynomial(q);
    let (c0, c1, rhs) = match spec.kind {
        FamilyKind::T1 => {
            let one_minus_z = p(&[1, -1]);
            (one_minus_z.clone(), -&one_minus_z.scale(&c), poly_rhs(p(&[0, 1])))
        }
        FamilyKind::T2 => {
            let one_minus_z2 = p(&[1, 0, -1]);
            (one_minus_z2.clone(), -&one_minus_z2.scale(&c), poly_rhs(p(&[0, 1])))
        }
        FamilyKind::T3 => (Polynomial::one(), -&Polynomial::new(vec![BigInt::from(1), c]), RationalFunction::zero()),
        FamilyKind::T4 => {
            let rhs = RationalFunction::new(p(&[0, spec.d, spec.c]), p(&[1, 1]))?;
            (p(&[1, -1]), p(&[-spec.alpha, 0, spec.alpha]), rhs)
        }
        FamilyKind::T5 => {
            let factor = &Polynomial::new(vec![BigInt::from(1), c]) + &tail_polynomial(&spec.tail).substitute_power(2);
            (Polynomial::one(), -&factor, RationalFunction::zero())
        }
        FamilyKind::T6 => {
            let q = tail_polynomial(&spec.tail);
            let rhs = RationalFunction::new(q.clone(), &Polynomial::one() - &q)?;
            (Polynomial::one(), p(&[-1]), rhs)
        }
        _ => unreachable!("canonical() maps named kinds onto T1..T6"),
    };
    MahlerEquation::new(vec![c0, c1], rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("equation file line {line}: {message}")]
pub struct EquationFileError {
    pub line: usize,
    pub message: String,
}

/// Text form of an equation:
///
/// ```text
/// # ones-count identity
/// depth: 1
/// c0: -1, 1
/// c1: 1, 0, -1
/// rhs: 0, -1 / 1, 1
/// ```
///
/// Polynomials are comma-separated integer coefficients, constant term first.
/// `c0 .. c<depth>` must all be present. The rhs is `num / den`; a bare
/// polynomial means denominator 1. Blank lines and `#` comments are ignored.
impl FromStr for MahlerEquation {
    type Err = EquationFileError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut depth: Option<(usize, usize)> = None;
        let mut coeffs: Vec<(usize, usize, Polynomial)> = Vec::new();
        let mut rhs: Option<(usize, RationalFunction)> = None;
        let err = |line: usize, message: String| EquationFileError { line, message };

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| err(line, format!("expected `key: value`, got `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "depth" => {
                    let d = value
                        .parse::<usize>()
                        .map_err(|_| err(line, format!("bad depth `{value}`")))?;
                    if depth.replace((d, line)).is_some() {
                        return Err(err(line, "duplicate depth".into()));
                    }
                }
                "rhs" => {
                    let (num, den) = match value.split_once('/') {
                        Some((n, d)) => (parse_poly(n).map_err(|m| err(line, m))?, parse_poly(d).map_err(|m| err(line, m))?),
                        None => (parse_poly(value).map_err(|m| err(line, m))?, Polynomial::one()),
                    };
                    let rf = RationalFunction::new(num, den).map_err(|e| err(line, e.to_string()))?;
                    if rhs.replace((line, rf)).is_some() {
                        return Err(err(line, "duplicate rhs".into()));
                    }
                }
                _ => {
                    let k = key
                        .strip_prefix('c')
                        .and_then(|k| k.parse::<usize>().ok())
                        .ok_or_else(|| err(line, format!("unknown key `{key}`")))?;
                    if coeffs.iter().any(|(kk, _, _)| *kk == k) {
                        return Err(err(line, format!("duplicate c{k}")));
                    }
                    coeffs.push((k, line, parse_poly(value).map_err(|m| err(line, m))?));
                }
            }
        }

        let last = text.lines().count().max(1);
        let (depth, depth_line) = depth.ok_or_else(|| err(last, "missing depth".into()))?;
        if let Some((k, line, _)) = coeffs.iter().find(|(k, _, _)| *k > depth) {
            return Err(err(*line, format!("c{k} exceeds depth {depth}")));
        }
        coeffs.sort_by_key(|(k, _, _)| *k);
        if coeffs.len() != depth + 1 {
            let missing = (0..=depth).find(|k| !coeffs.iter().any(|(kk, _, _)| kk == k)).unwrap_or(0);
            return Err(err(depth_line, format!("missing c{missing}")));
        }
        let (rhs_line, rhs) = rhs.unwrap_or((depth_line, RationalFunction::zero()));
        MahlerEquation::new(coeffs.into_iter().map(|(_, _, p)| p).collect(), rhs).map_err(|e| err(rhs_line.max(depth_line), e.to_string()))
    }
}

fn parse_poly(s: &str) -> Result<Polynomial, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty coefficient list".into());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<BigInt>().map_err(|_| format!("bad integer `{t}`"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Polynomial::new)
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Polynomial) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let parts: Vec<String> = p.coeffs().iter().map(BigInt::to_string).collect();
    write!(f, "{}", parts.join(", "))
}

impl fmt::Display for MahlerEquation {
    /// Writes the equation file format accepted by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "depth: {}", self.depth())?;
        for (k, c) in self.coeffs.iter().enumerate() {
            write!(f, "c{k}: ")?;
            write_poly(f, c)?;
            writeln!(f)?;
        }
        write!(f, "rhs: ")?;
        write_poly(f, self.rhs.num())?;
        write!(f, " / ")?;
        write_poly(f, self.rhs.den())?;
        writeln!(f)
    }
}
