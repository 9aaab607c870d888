//! Helpers shared by the integration tests: the fixture manifest, direct
//! digit oracles and a random generator of DSL texts.
#![allow(dead_code)]

use std::path::PathBuf;

use dcgf::io_oeis::parse_bfile;
use dcgf::{FamilyKind, FamilySpec, SequenceSample};
use num_bigint::BigInt;
use rand::Rng;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct Manifest {
    pub entry: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
pub struct Entry {
    pub id: String,
    pub family: String,
    #[serde(default)]
    pub alpha: i64,
    #[serde(default)]
    pub c: i64,
    #[serde(default)]
    pub d: i64,
    #[serde(default)]
    pub tail: Vec<i64>,
    pub alignment: i64,
    #[serde(default)]
    pub note: String,
}

impl Entry {
    pub fn spec(&self) -> FamilySpec {
        match FamilyKind::parse(&self.family).expect("family name") {
            FamilyKind::T1 => FamilySpec::t1(self.c),
            FamilyKind::T2 => FamilySpec::t2(self.c),
            FamilyKind::T3 => FamilySpec::t3(self.c),
            FamilyKind::T4 => FamilySpec::t4(self.alpha, self.c, self.d),
            FamilyKind::T5 => FamilySpec::t5(self.c, self.tail.clone()),
            FamilyKind::T6 => FamilySpec::t6(self.tail.clone()),
            other => FamilySpec::named(other),
        }
    }

    pub fn sample(&self) -> SequenceSample {
        let path = fixture_dir().join(format!("{}.txt", self.id));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        parse_bfile(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
    }
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/oeis")
}

pub fn manifest() -> Manifest {
    let text = std::fs::read_to_string(fixture_dir().join("manifest.toml")).expect("manifest.toml");
    toml::from_str(&text).expect("manifest parses")
}

/// Generated terms re-indexed so that position 0 is generated index -1 (a zero).
pub fn padded(coeffs: &[BigInt]) -> Vec<BigInt> {
    std::iter::once(BigInt::from(0)).chain(coeffs.iter().cloned()).collect()
}

pub fn e1(n: u64) -> u32 {
    n.count_ones()
}

pub fn e0(n: u64) -> u32 {
    if n == 0 {
        0
    } else {
        64 - n.leading_zeros() - n.count_ones()
    }
}

pub fn v2(n: u64) -> u32 {
    n.trailing_zeros()
}

pub fn big_pow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `sum_{k=0}^{v2(n)} c^k`.
pub fn ruler_closed_form(c: i64, n: u64) -> BigInt {
    (0..=v2(n)).map(|k| big_pow(c, k)).sum()
}

/// Direct T4 recursion on the bits of `n`.
pub fn affine_oracle(alpha: i64, c: i64, d: i64, n: u64) -> BigInt {
    if n == 0 {
        return BigInt::from(0);
    }
    let own = BigInt::from(alpha) * affine_oracle(alpha, c, d, n / 2);
    own + BigInt::from(if n.is_multiple_of(2) { c } else { d })
}

/// Norgard's sequence: a(0)=0, a(2n)=-a(n), a(2n+1)=a(n)+1.
pub fn norgard(len: usize) -> Vec<i64> {
    let mut a = vec![0i64];
    for n in 1..len {
        a.push(if n % 2 == 0 { -a[n / 2] } else { a[n / 2] + 1 });
    }
    a
}

fn int<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> String {
    let v = rng.gen_range(lo..=hi);
    if v < 0 {
        format!("(-{})", -v)
    } else {
        v.to_string()
    }
}

fn nonzero<R: Rng>(rng: &mut R, max: i64) -> String {
    loop {
        let v = rng.gen_range(-max..=max);
        if v != 0 {
            return if v < 0 { format!("(-{})", -v) } else { v.to_string() };
        }
    }
}

fn tower<R: Rng>(rng: &mut R) -> String {
    let mult = rng.gen_range(1..=3);
    let tower = match rng.gen_range(0..3) {
        0 => "2^k".to_string(),
        j => format!("2^(k+{j})"),
    };
    if mult == 1 {
        format!("z^({tower})")
    } else {
        format!("z^({mult}*{tower})")
    }
}

fn polynomial<R: Rng>(rng: &mut R, unit: bool) -> String {
    let mut text = if unit {
        ["1", "(-1)"][rng.gen_range(0..2)].to_string()
    } else {
        int(rng, -3, 3)
    };
    for e in 1..=rng.gen_range(0..4) {
        text.push_str(&format!(" + {}*z^{e}", int(rng, -3, 3)));
    }
    format!("({text})")
}

fn loop_text<R: Rng>(rng: &mut R) -> String {
    match rng.gen_range(0..4) {
        0 => format!(
            "sum(k){{ {}^k * {} / (1 - {}) }}",
            nonzero(rng, 3),
            tower(rng),
            tower(rng)
        ),
        1 => format!("sum(k){{ {} * {} / {} }}", int(rng, -3, 3), tower(rng), polynomial(rng, true)),
        2 => format!("prod(k){{ 1 + {}*{} }}", int(rng, -3, 3), tower(rng)),
        _ => format!(
            "prod(k){{ 1 + {}*{} + {}*{} }}",
            int(rng, -2, 2),
            tower(rng),
            int(rng, -2, 2),
            tower(rng)
        ),
    }
}

fn rational<R: Rng>(rng: &mut R) -> String {
    match rng.gen_range(0..3) {
        0 => polynomial(rng, false),
        1 => format!("{} / {}", polynomial(rng, false), polynomial(rng, true)),
        _ => format!("z^{}", rng.gen_range(0..5)),
    }
}

fn operand<R: Rng>(rng: &mut R, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.4) {
        return if rng.gen_bool(0.6) { loop_text(rng) } else { rational(rng) };
    }
    let a = operand(rng, depth - 1);
    let b = operand(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => format!("({a}) + ({b})"),
        1 => format!("({a}) - ({b})"),
        2 => format!("({a}) * ({b})"),
        _ => format!("-({a})"),
    }
}

/// A random well-formed DSL text. Loops only appear in evaluable positions
/// (never as divisors), so every generated text evaluates.
pub fn random_dsl<R: Rng>(rng: &mut R) -> String {
    operand(rng, 3)
}
