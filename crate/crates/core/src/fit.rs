//! Exhaustive classification of integer sequences against the families.
//!
//! Every family/parameter combination inside a small box is evaluated through
//! its recurrence and compared with the sample at three alignments. Each hit
//! is then re-derived from the generating function before it is reported.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::families::{build_series, FamilyError, FamilyKind, FamilySpec};
use crate::recurrence::{eval_recurrence, family_recurrence, RecurrenceError};

/// Samples shorter than this match too many families to be informative.
pub const MIN_SAMPLE_LEN: usize = 8;

/// Generated index the first sample value may line up with.
pub const ALIGNMENTS: [i64; 3] = [-1, 0, 1];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("sample too short: {0} values, need at least {MIN_SAMPLE_LEN}")]
    SampleTooShort(usize),
    #[error("search bounds admit no candidate")]
    EmptyBounds,
    #[error("{spec} matched through its recurrence but not through its generating function")]
    Unconfirmed { spec: FamilySpec },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// A run of consecutive sequence terms starting at index `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSample {
    pub offset: i64,
    pub values: Vec<BigInt>,
}

impl SequenceSample {
    pub fn new(offset: i64, values: Vec<BigInt>) -> Option<Self> {
        (!values.is_empty()).then_some(Self { offset, values })
    }

    pub fn from_i64s(offset: i64, values: &[i64]) -> Option<Self> {
        Self::new(offset, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The first `n` values.
    pub fn prefix(&self, n: usize) -> Self {
        Self {
            offset: self.offset,
            values: self.values[..n.min(self.values.len())].to_vec(),
        }
    }
}

/// Inclusive parameter box: `|c| <= c_max`, `|alpha| <= alpha_max`,
/// `|d| <= d_max`, tails of length `1..=tail_len_max` with
/// `|c_i| <= tail_coeff_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub c_max: i64,
    pub alpha_max: i64,
    pub d_max: i64,
    pub tail_len_max: usize,
    pub tail_coeff_max: i64,
}

impl Default for SearchBounds {
    /// `alpha` goes to 4 so the Moser-de Bruijn row (`alpha = 4`) is reachable.
    fn default() -> Self {
        Self {
            c_max: 3,
            alpha_max: 4,
            d_max: 3,
            tail_len_max: 2,
            tail_coeff_max: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitMatch {
    pub spec: FamilySpec,
    /// Generated index of the first sample value.
    pub alignment: i64,
    pub verified_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitReport {
    pub matches: Vec<FitMatch>,
    pub bounds: SearchBounds,
}

fn sym(max: i64) -> impl Iterator<Item = i64> + Clone {
    -max.abs()..=max.abs()
}

fn tails(len_max: usize, coeff_max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..len_max {
        layer = layer
            .iter()
            .flat_map(|prefix| {
                sym(coeff_max).map(move |c| {
                    let mut t = prefix.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().filter(|t| t.last() != Some(&0)).cloned());
    }
    out
}

fn sort_key(spec: &FamilySpec) -> (FamilyKind, Vec<i64>) {
    let params = match spec.kind {
        FamilyKind::T4 => vec![spec.alpha, spec.c, spec.d],
        FamilyKind::T6 => spec.tail.clone(),
        _ => std::iter::once(spec.c).chain(spec.tail.iter().copied()).collect(),
    };
    (spec.kind, params)
}

/// All valid specs inside `bounds`, in canonical report order.
pub fn candidates(bounds: &SearchBounds) -> Vec<FamilySpec> {
    let nonzero = |m: i64| sym(m).filter(|&v| v != 0);
    let tails = tails(bounds.tail_len_max, bounds.tail_coeff_max);
    let mut out: Vec<FamilySpec> = Vec::new();
    out.extend(nonzero(bounds.c_max).map(FamilySpec::t1));
    out.extend(nonzero(bounds.c_max).map(FamilySpec::t2));
    out.extend(nonzero(bounds.c_max).map(FamilySpec::t3));
    for alpha in nonzero(bounds.alpha_max) {
        for c in sym(bounds.c_max) {
            out.extend(sym(bounds.d_max).map(|d| FamilySpec::t4(alpha, c, d)));
        }
    }
    for c in sym(bounds.c_max) {
        out.extend(tails.iter().map(|t| FamilySpec::t5(c, t.clone())));
    }
    out.extend(tails.iter().map(|t| FamilySpec::t6(t.clone())));
    out.sort_by_key(sort_key);
    out
}

fn value_at(terms: &[BigInt], index: i64) -> BigInt {
    usize::try_from(index).map(|i| terms[i].clone()).unwrap_or_else(|_| BigInt::zero())
}

fn aligned(terms: &[BigInt], alignment: i64, sample: &[BigInt]) -> bool {
    sample.iter().enumerate().all(|(j, v)| value_at(terms, alignment + j as i64) == *v)
}

/// Reports every spec in `bounds` whose sequence reproduces `sample`
/// exactly at some alignment in [`ALIGNMENTS`].
pub fn classify(sample: &SequenceSample, bounds: &SearchBounds) -> Result<FitReport, FitError> {
    if sample.len() < MIN_SAMPLE_LEN {
        return Err(FitError::SampleTooShort(sample.len()));
    }
    let specs = candidates(bounds);
    if specs.is_empty() {
        return Err(FitError::EmptyBounds);
    }
    let max_alignment = *ALIGNMENTS.iter().max().expect("nonempty");
    let order = sample.len() + max_alignment as usize;

    let per_spec: Vec<Result<Vec<FitMatch>, FitError>> = specs
        .par_iter()
        .map(|spec| {
            let terms = eval_recurrence(&family_recurrence(spec)?, order)?;
            let hits: Vec<FitMatch> = ALIGNMENTS
                .iter()
                .filter(|&&a| aligned(&terms, a, &sample.values))
                .map(|&alignment| FitMatch {
                    spec: spec.clone(),
                    alignment,
                    verified_len: sample.len(),
                })
                .collect();
            if !hits.is_empty() {
                let series = build_series(spec, order.max(2))?;
                if hits.iter().any(|m| !aligned(series.coeffs(), m.alignment, &sample.values)) {
                    return Err(FitError::Unconfirmed { spec: spec.clone() });
                }
            }
            Ok(hits)
        })
        .collect();

    let mut matches = Vec::new();
    for hits in per_spec {
        matches.extend(hits?);
    }
    Ok(FitReport { matches, bounds: *bounds })
}

impl FitMatch {
    pub fn describe(&self) -> String {
        format!("{} align={} len={}", self.spec, self.alignment, self.verified_len)
    }
}

impl PartialOrd for FitMatch {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FitMatch {
    fn cmp(&self, other: &Self) -> Ordering {
        sort_key(&self.spec)
            .cmp(&sort_key(&other.spec))
            .then(self.alignment.cmp(&other.alignment))
    }
}
