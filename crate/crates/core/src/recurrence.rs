//! Parity-split recurrences
//!
//! ```text
//! a(2n)   = p a(n) + sum_i q_i a(n-i) + r + w_e b(2n)      for n >= even_min
//! a(2n+1) = s a(n) + sum_i t_i a(n-i) + u + w_o b(2n+1)    for n >= odd_min
//! ```
//!
//! with explicit base values and `a(n) = 0` for negative `n`. `b` is an
//! optional auxiliary linear recurrence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::families::{FamilyError, FamilyKind, FamilySpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("index {0} is not covered by a base value or a rule")]
    Uncovered(usize),
    #[error("index {0} is covered by both a base value and a rule")]
    Ambiguous(usize),
    #[error("rule for index {0} refers to itself")]
    SelfReference(usize),
    #[error("a rule uses the auxiliary sequence b but none is attached")]
    MissingAux,
    #[error("linear recurrence needs at least one coefficient and as many initial values")]
    BadLinear,
    #[error("v2(0) is undefined")]
    ValuationOfZero,
}

/// One half of a parity-split recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    /// Coefficient of `a(n)`.
    pub own: BigInt,
    /// Coefficients of `a(n-1), a(n-2), ...`.
    pub lagged: Vec<BigInt>,
    pub constant: BigInt,
    /// Weight of the auxiliary term `b(2n)` resp. `b(2n+1)`.
    pub aux_weight: BigInt,
    /// Smallest `n` for which the rule applies.
    pub min_n: usize,
}

impl Rule {
    /// `a(target) = own * a(n)` for every `n >= 0`.
    pub fn scaled(own: impl Into<BigInt>) -> Self {
        Self {
            own: own.into(),
            lagged: Vec::new(),
            constant: BigInt::zero(),
            aux_weight: BigInt::zero(),
            min_n: 0,
        }
    }

    /// `a(target) = own * a(n) + constant`.
    pub fn affine(own: impl Into<BigInt>, constant: impl Into<BigInt>) -> Self {
        Self {
            constant: constant.into(),
            ..Self::scaled(own)
        }
    }

    pub fn with_lagged(mut self, lagged: Vec<BigInt>) -> Self {
        self.lagged = lagged;
        self
    }

    pub fn with_aux(mut self, weight: impl Into<BigInt>) -> Self {
        self.aux_weight = weight.into();
        self
    }

    pub fn starting_at(mut self, min_n: usize) -> Self {
        self.min_n = min_n;
        self
    }
}

/// `b(n) = sum_{i=1}^{D} c_i b(n-i)` with `b(0..D)` given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    coeffs: Vec<BigInt>,
    init: Vec<BigInt>,
}

impl LinearRecurrence {
    pub fn new(coeffs: Vec<BigInt>, init: Vec<BigInt>) -> Result<Self, RecurrenceError> {
        if coeffs.is_empty() || coeffs.len() != init.len() {
            return Err(RecurrenceError::BadLinear);
        }
        Ok(Self { coeffs, init })
    }

    pub fn from_i64s(coeffs: &[i64], init: &[i64]) -> Result<Self, RecurrenceError> {
        Self::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            init.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    /// The recurrence whose terms are the coefficients of
    /// `1 / (1 - sum_i c_i z^i)`: `b(0) = 1` and the rule with `b(<0) = 0`.
    pub fn reciprocal_of_tail(tail: &[i64]) -> Result<Self, RecurrenceError> {
        if tail.is_empty() {
            return Err(RecurrenceError::BadLinear);
        }
        let coeffs: Vec<BigInt> = tail.iter().map(|&c| BigInt::from(c)).collect();
        let mut init: Vec<BigInt> = Vec::with_capacity(coeffs.len());
        for n in 0..coeffs.len() {
            let v = if n == 0 {
                BigInt::one()
            } else {
                (1..=n).map(|i| &coeffs[i - 1] * &init[n - i]).sum()
            };
            init.push(v);
        }
        Ok(Self { coeffs, init })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn init(&self) -> &[BigInt] {
        &self.init
    }
}

/// First `order` terms of a linear recurrence.
pub fn eval_linear(lr: &LinearRecurrence, order: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = lr.init.iter().take(order).cloned().collect();
    for n in out.len()..order {
        let v = lr.coeffs.iter().enumerate().map(|(i, c)| c * &out[n - 1 - i]).sum();
        out.push(v);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DCRecurrence {
    pub base: BTreeMap<usize, BigInt>,
    pub even: Rule,
    pub odd: Rule,
    pub aux: Option<LinearRecurrence>,
}

#[derive(Clone, Copy)]
enum Source<'a> {
    Base(&'a BigInt),
    Rule { rule: &'a Rule, half: usize },
}

impl DCRecurrence {
    pub fn new(base: BTreeMap<usize, BigInt>, even: Rule, odd: Rule) -> Self {
        Self { base, even, odd, aux: None }
    }

    pub fn with_aux(mut self, aux: LinearRecurrence) -> Self {
        self.aux = Some(aux);
        self
    }

    fn uses_aux(&self) -> bool {
        !self.even.aux_weight.is_zero() || !self.odd.aux_weight.is_zero()
    }

    fn source(&self, index: usize) -> Result<Source<'_>, RecurrenceError> {
        let (rule, half) = if index.is_multiple_of(2) {
            (&self.even, index / 2)
        } else {
            (&self.odd, (index - 1) / 2)
        };
        let by_rule = half >= rule.min_n;
        match (self.base.get(&index), by_rule) {
            (Some(_), true) => Err(RecurrenceError::Ambiguous(index)),
            (Some(v), false) => Ok(Source::Base(v)),
            (None, true) if index == 0 => Err(RecurrenceError::SelfReference(0)),
            (None, true) => Ok(Source::Rule { rule, half }),
            (None, false) => Err(RecurrenceError::Uncovered(index)),
        }
    }

    fn aux_values(&self, order: usize) -> Result<Vec<BigInt>, RecurrenceError> {
        match (&self.aux, self.uses_aux()) {
            (Some(lr), true) => Ok(eval_linear(lr, order)),
            (None, true) => Err(RecurrenceError::MissingAux),
            (_, false) => Ok(Vec::new()),
        }
    }
}

fn apply_rule(rule: &Rule, index: usize, half: usize, read: &mut impl FnMut(usize) -> Result<BigInt, RecurrenceError>, aux: &[BigInt]) -> Result<BigInt, RecurrenceError> {
    let mut v = rule.constant.clone();
    if !rule.own.is_zero() {
        v += &rule.own * read(half)?;
    }
    for (i, q) in rule.lagged.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        if let Some(j) = half.checked_sub(i + 1) {
            v += q * read(j)?;
        }
    }
    if !rule.aux_weight.is_zero() {
        v += &rule.aux_weight * &aux[index];
    }
    Ok(v)
}

/// Evaluates `a(0) .. a(order-1)` bottom-up.
pub fn eval_recurrence(rec: &DCRecurrence, order: usize) -> Result<Vec<BigInt>, RecurrenceError> {
    let aux = rec.aux_values(order)?;
    let mut out: Vec<BigInt> = Vec::with_capacity(order);
    for index in 0..order {
        let v = match rec.source(index)? {
            Source::Base(v) => v.clone(),
            Source::Rule { rule, half } => apply_rule(rule, index, half, &mut |j| Ok(out[j].clone()), &aux)?,
        };
        out.push(v);
    }
    Ok(out)
}

/// Same values as [`eval_recurrence`], computed top-down with a memo table.
/// Indices are requested from the largest down so the recursion does the
/// work.
pub fn eval_recurrence_memo(rec: &DCRecurrence, order: usize) -> Result<Vec<BigInt>, RecurrenceError> {
    fn get(rec: &DCRecurrence, aux: &[BigInt], table: &mut [Option<BigInt>], index: usize) -> Result<BigInt, RecurrenceError> {
        if let Some(v) = &table[index] {
            return Ok(v.clone());
        }
        let v = match rec.source(index)? {
            Source::Base(v) => v.clone(),
            Source::Rule { rule, half } => apply_rule(rule, index, half, &mut |j| get(rec, aux, table, j), aux)?,
        };
        table[index] = Some(v.clone());
        Ok(v)
    }

    let aux = rec.aux_values(order)?;
    let mut table: Vec<Option<BigInt>> = vec![None; order];
    for index in (0..order).rev() {
        get(rec, &aux, &mut table, index)?;
    }
    Ok(table.into_iter().map(|v| v.expect("filled")).collect())
}

/// The recurrence matching a family's generating function, with the index
/// conventions:
///
/// * T1, T2, T4, T6: `a(0) = 0`, even rule for `n >= 1`, odd rule for `n >= 0`.
/// * T3, T5: `a(0) = 1` (the product's constant term), same rule domains.
/// * T6: `b` is the expansion of `1 / (1 - sum c_i z^i)`.
pub fn family_recurrence(spec: &FamilySpec) -> Result<DCRecurrence, FamilyError> {
    spec.validate()?;
    let spec = spec.canonical();
    let base = |v: i64| BTreeMap::from([(0usize, BigInt::from(v))]);
    let tail = || spec.tail.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let rec = match spec.kind {
        FamilyKind::T1 => DCRecurrence::new(base(0), Rule::affine(spec.c, 1).starting_at(1), Rule::affine(0, 1)),
        FamilyKind::T2 => DCRecurrence::new(base(0), Rule::scaled(spec.c).starting_at(1), Rule::affine(0, 1)),
        FamilyKind::T3 => DCRecurrence::new(base(1), Rule::scaled(1).starting_at(1), Rule::scaled(spec.c)),
        FamilyKind::T4 => DCRecurrence::new(
            base(0),
            Rule::affine(spec.alpha, spec.c).starting_at(1),
            Rule::affine(spec.alpha, spec.d),
        ),
        FamilyKind::T5 => DCRecurrence::new(
            base(1),
            Rule::scaled(1).with_lagged(tail()).starting_at(1),
            Rule::scaled(spec.c),
        ),
        FamilyKind::T6 => {
            let aux = LinearRecurrence::reciprocal_of_tail(&spec.tail).expect("validated tail is nonempty");
            DCRecurrence::new(base(0), Rule::scaled(1).with_aux(1).starting_at(1), Rule::scaled(0).with_aux(1)).with_aux(aux)
        }
        FamilyKind::OnesCount | FamilyKind::ZerosCount | FamilyKind::ThueMorse | FamilyKind::RulerPlusOne => {
            unreachable!("canonical() maps named kinds onto T1..T6")
        }
    };
    Ok(rec)
}

/// Binary digit statistics of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitStats {
    /// Zeros within the binary length.
    pub e0: u32,
    /// Ones.
    pub e1: u32,
    /// Binary length; 0 for `n = 0`.
    pub len: u32,
    v2: Option<u32>,
}

impl BitStats {
    /// 2-adic valuation; an error for `n = 0`.
    pub fn v2(&self) -> Result<u32, RecurrenceError> {
        self.v2.ok_or(RecurrenceError::ValuationOfZero)
    }
}

pub fn oracle_bit_stats(n: u64) -> BitStats {
    let len = u64::BITS - n.leading_zeros();
    let e1 = n.count_ones();
    BitStats {
        e0: len - e1,
        e1,
        len,
        v2: (n != 0).then(|| n.trailing_zeros()),
    }
}
