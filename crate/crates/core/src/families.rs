//! The six parametrised divide-and-conquer generating-function families and a
//! handful of named members, built as truncated series.
//!
//! Every family is an infinite sum or product over `k >= 0` whose `k`-th term
//! only touches exponents `>= 2^k`. Building to order `N` therefore needs the
//! terms `k = 0 ..= ceil(log2 N)` and nothing else.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::series::{expand, Polynomial, RationalFunction, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{kind} requires |c| > 0")]
    ZeroC { kind: FamilyKind },
    #[error("{kind} requires |alpha| > 0")]
    ZeroAlpha { kind: FamilyKind },
    #[error("{kind} requires a nonempty tail c_1..c_D")]
    EmptyTail { kind: FamilyKind },
    #[error("{kind} requires the last tail coefficient c_D to be nonzero")]
    ZeroLastTail { kind: FamilyKind },
    #[error("{kind} takes no tail coefficients")]
    UnexpectedTail { kind: FamilyKind },
    #[error("T6 has a divergent constant term; choose a constant-term convention")]
    MissingT6Convention,
    #[error("series order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    /// `sum c^k z^(2^k) / (1 - z^(2^k))`
    T1,
    /// `sum c^k z^(2^k) / (1 - z^(2^(k+1)))`
    T2,
    /// `prod (1 + c z^(2^k))`
    T3,
    /// `1/(1-z) sum alpha^k (d z^(2^k) + c z^(2^(k+1))) / (1 + z^(2^k))`
    T4,
    /// `prod (1 + c z^(2^k) + sum_i c_i z^(2^(k+1) i))`
    T5,
    /// `sum 1 / (1 - sum_i c_i z^(2^k i))`
    T6,
    /// Binary ones count.
    OnesCount,
    /// Binary zeros count.
    ZerosCount,
    /// Thue-Morse on {1, -1}.
    ThueMorse,
    /// `v2(n) + 1`.
    RulerPlusOne,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 10] = [
        FamilyKind::T1,
        FamilyKind::T2,
        FamilyKind::T3,
        FamilyKind::T4,
        FamilyKind::T5,
        FamilyKind::T6,
        FamilyKind::OnesCount,
        FamilyKind::ZerosCount,
        FamilyKind::ThueMorse,
        FamilyKind::RulerPlusOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::T1 => "T1",
            FamilyKind::T2 => "T2",
            FamilyKind::T3 => "T3",
            FamilyKind::T4 => "T4",
            FamilyKind::T5 => "T5",
            FamilyKind::T6 => "T6",
            FamilyKind::OnesCount => "OnesCount",
            FamilyKind::ZerosCount => "ZerosCount",
            FamilyKind::ThueMorse => "ThueMorse",
            FamilyKind::RulerPlusOne => "RulerPlusOne",
        }
    }

    /// Case-insensitive lookup; also accepts kebab-case for the named kinds.
    pub fn parse(s: &str) -> Option<Self> {
        let key: String = s.chars().filter(|c| *c != '-' && *c != '_').collect::<String>().to_ascii_lowercase();
        Self::ALL.into_iter().find(|k| k.name().to_ascii_lowercase() == key)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the divergent constant term of T6 is handled.
///
/// Each summand `1/(1 - ...)` contributes 1 at `z^0`, so only a regularised
/// reading of the family has a well-defined series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum T6Convention {
    /// Subtract 1 from every summand; `a_0 = 0`, all `n >= 1` coefficients
    /// are those of any finite truncation of the literal sum.
    SubtractOne,
}

impl T6Convention {
    pub fn describe(self) -> &'static str {
        match self {
            T6Convention::SubtractOne => "regularized (each summand minus 1, a_0 = 0)",
        }
    }
}

/// Selects one family and its integer parameters. Fields a family does not
/// use are ignored (and left at zero by the constructors).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub c: i64,
    pub alpha: i64,
    pub d: i64,
    pub tail: Vec<i64>,
    pub t6_convention: Option<T6Convention>,
}

impl FamilySpec {
    fn base(kind: FamilyKind) -> Self {
        Self {
            kind,
            c: 0,
            alpha: 0,
            d: 0,
            tail: Vec::new(),
            t6_convention: None,
        }
    }

    pub fn t1(c: i64) -> Self {
        Self { c, ..Self::base(FamilyKind::T1) }
    }

    pub fn t2(c: i64) -> Self {
        Self { c, ..Self::base(FamilyKind::T2) }
    }

    pub fn t3(c: i64) -> Self {
        Self { c, ..Self::base(FamilyKind::T3) }
    }

    pub fn t4(alpha: i64, c: i64, d: i64) -> Self {
        Self { alpha, c, d, ..Self::base(FamilyKind::T4) }
    }

    pub fn t5(c: i64, tail: Vec<i64>) -> Self {
        Self { c, tail, ..Self::base(FamilyKind::T5) }
    }

    /// T6 with the regularised constant term.
    pub fn t6(tail: Vec<i64>) -> Self {
        Self {
            tail,
            t6_convention: Some(T6Convention::SubtractOne),
            ..Self::base(FamilyKind::T6)
        }
    }

    pub fn named(kind: FamilyKind) -> Self {
        Self::base(kind)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let kind = self.kind;
        match kind {
            FamilyKind::T1 | FamilyKind::T2 | FamilyKind::T3 if self.c == 0 => Err(FamilyError::ZeroC { kind }),
            FamilyKind::T4 if self.alpha == 0 => Err(FamilyError::ZeroAlpha { kind }),
            FamilyKind::T5 | FamilyKind::T6 => match self.tail.last() {
                None => Err(FamilyError::EmptyTail { kind }),
                Some(0) => Err(FamilyError::ZeroLastTail { kind }),
                Some(_) => Ok(()),
            },
            _ if !self.tail.is_empty() => Err(FamilyError::UnexpectedTail { kind }),
            _ => Ok(()),
        }
    }

    /// The parametrised family a named kind belongs to.
    pub fn canonical(&self) -> FamilySpec {
        match self.kind {
            FamilyKind::OnesCount => FamilySpec::t4(1, 0, 1),
            FamilyKind::ZerosCount => FamilySpec::t4(1, 1, 0),
            FamilyKind::ThueMorse => FamilySpec::t3(-1),
            FamilyKind::RulerPlusOne => FamilySpec::t1(1),
            _ => self.clone(),
        }
    }

    /// Parameters as `key=value` pairs, without the kind.
    pub fn params_string(&self) -> String {
        let tail = || self.tail.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match self.kind {
            FamilyKind::T1 | FamilyKind::T2 | FamilyKind::T3 => format!("c={}", self.c),
            FamilyKind::T4 => format!("alpha={} c={} d={}", self.alpha, self.c, self.d),
            FamilyKind::T5 => format!("c={} tail={}", self.c, tail()),
            FamilyKind::T6 => format!("tail={}", tail()),
            _ => String::new(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params_string();
        if params.is_empty() {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{} {}", self.kind, params)
        }
    }
}

/// `ceil(log2 n)` for `n >= 1`: the last tower index needed for order `n`.
pub fn tower_depth(order: usize) -> u32 {
    assert!(order >= 1);
    usize::BITS - (order - 1).leading_zeros()
}

fn z_pow(e: usize, coeff: BigInt) -> Polynomial {
    Polynomial::monomial(coeff, e)
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Builds the order-`order` truncation of the family's generating function.
pub fn build_series(spec: &FamilySpec, order: usize) -> Result<TruncatedSeries, FamilyError> {
    spec.validate()?;
    if order < 2 {
        return Err(FamilyError::OrderTooSmall(order));
    }
    let depth = tower_depth(order);
    let one = || Polynomial::one();
    let mut acc = TruncatedSeries::zero(order);
    let mut add_term = |num: Polynomial, den: Polynomial| -> Result<(), FamilyError> {
        let rf = RationalFunction::new(num, den)?;
        acc = &acc + &expand(&rf, order)?;
        Ok(())
    };

    match spec.kind {
        FamilyKind::T1 | FamilyKind::RulerPlusOne => {
            let c = int(spec.canonical().c);
            for k in 0..=depth {
                let m = 1usize << k;
                add_term(z_pow(m, c.clone().pow(k)), &one() - &z_pow(m, BigInt::one()))?;
            }
        }
        FamilyKind::T2 => {
            let c = int(spec.c);
            for k in 0..=depth {
                let m = 1usize << k;
                add_term(z_pow(m, c.clone().pow(k)), &one() - &z_pow(2 * m, BigInt::one()))?;
            }
        }
        FamilyKind::T3 | FamilyKind::ThueMorse => {
            let c = int(spec.canonical().c);
            return Ok(tower_product(order, depth, |m| &one() + &z_pow(m, c.clone())));
        }
        FamilyKind::T5 => {
            let c = int(spec.c);
            return Ok(tower_product(order, depth, |m| {
                let mut factor = &one() + &z_pow(m, c.clone());
                for (i, &ci) in spec.tail.iter().enumerate() {
                    factor = &factor + &z_pow(2 * m * (i + 1), int(ci));
                }
                factor
            }));
        }
        FamilyKind::T4 | FamilyKind::OnesCount | FamilyKind::ZerosCount => {
            let canon = spec.canonical();
            let (alpha, c, d) = (int(canon.alpha), int(canon.c), int(canon.d));
            for k in 0..=depth {
                let m = 1usize << k;
                let w = alpha.clone().pow(k);
                let num = &z_pow(m, &w * &d) + &z_pow(2 * m, &w * &c);
                add_term(num, &one() + &z_pow(m, BigInt::one()))?;
            }
            let prefactor = RationalFunction::new(one(), Polynomial::from_i64s(&[1, -1]))?;
            return Ok(acc.mul_rational(&prefactor)?);
        }
        FamilyKind::T6 => {
            if spec.t6_convention.is_none() {
                return Err(FamilyError::MissingT6Convention);
            }
            for k in 0..=depth {
                let m = 1usize << k;
                // 1/(1 - Q) - 1 = Q/(1 - Q)
                let q = tail_polynomial(&spec.tail).substitute_power(m);
                add_term(q.clone(), &one() - &q)?;
            }
        }
    }
    Ok(acc)
}

/// `sum_{i=1}^{D} c_i z^i`.
pub(crate) fn tail_polynomial(tail: &[i64]) -> Polynomial {
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend(tail.iter().map(|&c| int(c)));
    Polynomial::new(coeffs)
}

fn tower_product(order: usize, depth: u32, factor: impl Fn(usize) -> Polynomial) -> TruncatedSeries {
    (0..=depth).fold(TruncatedSeries::one(order), |acc, k| acc.mul_poly(&factor(1usize << k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(spec: &FamilySpec, n: usize) -> Vec<i64> {
        build_series(spec, n)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn v2(n: u64) -> u32 {
        n.trailing_zeros()
    }

    #[test]
    fn tower_depth_is_ceil_log2() {
        assert_eq!(tower_depth(1), 0);
        assert_eq!(tower_depth(2), 1);
        assert_eq!(tower_depth(3), 2);
        assert_eq!(tower_depth(8), 3);
        assert_eq!(tower_depth(9), 4);
        assert_eq!(tower_depth(512), 9);
    }

    #[test]
    fn t1_ruler() {
        let oracle: Vec<i64> = (0..9u64).map(|n| if n == 0 { 0 } else { v2(n) as i64 + 1 }).collect();
        assert_eq!(oracle, vec![0, 1, 2, 1, 3, 1, 2, 1, 4]);
        assert_eq!(coeffs(&FamilySpec::t1(1), 9), oracle);
        assert_eq!(coeffs(&FamilySpec::named(FamilyKind::RulerPlusOne), 9), oracle);
    }

    #[test]
    fn t3_gould() {
        let oracle: Vec<i64> = (0..8u32).map(|n| 2i64.pow(n.count_ones())).collect();
        assert_eq!(oracle, vec![1, 2, 2, 4, 2, 4, 4, 8]);
        assert_eq!(coeffs(&FamilySpec::t3(2), 8), oracle);
    }

    #[test]
    fn t4_natural_numbers() {
        assert_eq!(coeffs(&FamilySpec::t4(2, 0, 1), 6), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn thue_morse() {
        let oracle: Vec<i64> = (0..8u32).map(|n| (-1i64).pow(n.count_ones())).collect();
        assert_eq!(oracle, vec![1, -1, -1, 1, -1, 1, 1, -1]);
        assert_eq!(coeffs(&FamilySpec::named(FamilyKind::ThueMorse), 8), oracle);
    }

    #[test]
    fn t5_stern() {
        // a0 = 1, a(2n) = a(n) + a(n-1), a(2n+1) = a(n)
        let mut oracle = vec![1i64];
        for n in 1..8usize {
            let h = n / 2;
            let v = if n % 2 == 0 { oracle[h] + oracle[h - 1] } else { oracle[h] };
            oracle.push(v);
        }
        assert_eq!(oracle, vec![1, 1, 2, 1, 3, 2, 3, 1]);
        assert_eq!(coeffs(&FamilySpec::t5(1, vec![1]), 8), oracle);
    }

    #[test]
    fn named_counts() {
        let ones: Vec<i64> = (0..32u32).map(|n| n.count_ones() as i64).collect();
        let zeros: Vec<i64> = (0..32u32)
            .map(|n| if n == 0 { 0 } else { (32 - n.leading_zeros() - n.count_ones()) as i64 })
            .collect();
        assert_eq!(coeffs(&FamilySpec::named(FamilyKind::OnesCount), 32), ones);
        assert_eq!(coeffs(&FamilySpec::named(FamilyKind::ZerosCount), 32), zeros);
    }

    #[test]
    fn t6_regularized_constant_term() {
        let s = coeffs(&FamilySpec::t6(vec![1, 1]), 8);
        assert_eq!(s[0], 0);
        // a1 = b1, b = 1,1,2,3,5,8,...
        assert_eq!(s[1], 1);
        // a2 = a1 + b2
        assert_eq!(s[2], 1 + 2);
    }

    #[test]
    fn t6_without_convention_rejected() {
        let mut spec = FamilySpec::t6(vec![1]);
        spec.t6_convention = None;
        assert_eq!(build_series(&spec, 8).unwrap_err(), FamilyError::MissingT6Convention);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(matches!(build_series(&FamilySpec::t1(0), 8), Err(FamilyError::ZeroC { .. })));
        assert!(matches!(build_series(&FamilySpec::t3(0), 8), Err(FamilyError::ZeroC { .. })));
        assert!(matches!(build_series(&FamilySpec::t4(0, 1, 1), 8), Err(FamilyError::ZeroAlpha { .. })));
        assert!(matches!(build_series(&FamilySpec::t5(1, vec![]), 8), Err(FamilyError::EmptyTail { .. })));
        assert!(matches!(build_series(&FamilySpec::t5(1, vec![1, 0]), 8), Err(FamilyError::ZeroLastTail { .. })));
        assert!(matches!(build_series(&FamilySpec::t1(1), 1), Err(FamilyError::OrderTooSmall(1))));
        let mut t1 = FamilySpec::t1(1);
        t1.tail = vec![1];
        assert!(matches!(t1.validate(), Err(FamilyError::UnexpectedTail { .. })));
    }

    #[test]
    fn kind_parse() {
        assert_eq!(FamilyKind::parse("t4"), Some(FamilyKind::T4));
        assert_eq!(FamilyKind::parse("thue-morse"), Some(FamilyKind::ThueMorse));
        assert_eq!(FamilyKind::parse("ones_count"), Some(FamilyKind::OnesCount));
        assert_eq!(FamilyKind::parse("t7"), None);
    }

    #[test]
    fn display() {
        assert_eq!(FamilySpec::t1(1).to_string(), "T1 c=1");
        assert_eq!(FamilySpec::t4(2, 0, 1).to_string(), "T4 alpha=2 c=0 d=1");
        assert_eq!(FamilySpec::t5(3, vec![2]).to_string(), "T5 c=3 tail=2");
        assert_eq!(FamilySpec::t6(vec![1, -1]).to_string(), "T6 tail=1,-1");
        assert_eq!(FamilySpec::named(FamilyKind::ThueMorse).to_string(), "ThueMorse");
    }
}
