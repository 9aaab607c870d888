//! OEIS b-files: one `index value` pair per line.

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::fit::SequenceSample;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfileError {
    #[error("line {line}: expected `index value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: index {found} does not follow {expected_prev}, gap at index {missing}")]
    Gap {
        line: usize,
        expected_prev: i64,
        found: i64,
        missing: i64,
    },
    #[error("no data lines")]
    Empty,
    #[error("sample and generated sequence do not overlap")]
    EmptyOverlap,
}

/// Parses b-file text. Blank lines and lines starting with `#` are skipped;
/// indices must be consecutive.
pub fn parse_bfile(text: &str) -> Result<SequenceSample, BfileError> {
    let mut offset: Option<i64> = None;
    let mut values: Vec<BigInt> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = || BfileError::Malformed {
            line,
            text: trimmed.to_string(),
        };
        let mut fields = trimmed.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let idx: i64 = idx.parse().map_err(|_| malformed())?;
        let val: BigInt = val.parse().map_err(|_| malformed())?;
        match offset {
            None => offset = Some(idx),
            Some(o) => {
                let expected = o + values.len() as i64;
                if idx != expected {
                    return Err(BfileError::Gap {
                        line,
                        expected_prev: expected - 1,
                        found: idx,
                        missing: expected,
                    });
                }
            }
        }
        values.push(val);
    }
    let offset = offset.ok_or(BfileError::Empty)?;
    Ok(SequenceSample { offset, values })
}

/// Canonical b-file text: `index value\n` per term, single spaces.
pub fn to_bfile(sample: &SequenceSample) -> String {
    let mut out = String::new();
    for (j, v) in sample.values.iter().enumerate() {
        writeln!(out, "{} {}", sample.offset + j as i64, v).expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Pass {
        overlap: usize,
    },
    Fail {
        index: i64,
        expected: BigInt,
        actual: BigInt,
    },
}

impl Comparison {
    pub fn is_pass(&self) -> bool {
        matches!(self, Comparison::Pass { .. })
    }
}

/// Compares a sample with `generated`, whose first entry sits at index
/// `generated_offset`, over the indices both cover. In a failure `expected`
/// is the sample value and `actual` the generated one.
pub fn compare(sample: &SequenceSample, generated: &[BigInt], generated_offset: i64) -> Result<Comparison, BfileError> {
    let start = sample.offset.max(generated_offset);
    let end = (sample.offset + sample.values.len() as i64).min(generated_offset + generated.len() as i64);
    if start >= end {
        return Err(BfileError::EmptyOverlap);
    }
    for index in start..end {
        let expected = &sample.values[(index - sample.offset) as usize];
        let actual = &generated[(index - generated_offset) as usize];
        if expected != actual {
            return Ok(Comparison::Fail {
                index,
                expected: expected.clone(),
                actual: actual.clone(),
            });
        }
    }
    Ok(Comparison::Pass {
        overlap: (end - start) as usize,
    })
}
