//! The Lobachevsky function and the volumes of the ideal regular tetrahedron
//! and octahedron.
//!
//! `Л(θ) = ½ Σ_{n≥1} sin(2nθ) / n²`, odd and π-periodic. The series is summed
//! directly, with a term count chosen from an explicit tail bound, using
//! compensated summation.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// Absolute accuracy used for the cached constants.
pub const CONSTANT_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstantName {
    V3,
    V8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    LobachevskySeries,
    AlternatingSeries,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeConstant {
    pub name: ConstantName,
    pub value: f64,
    pub method: Method,
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Terms needed so that `½ Σ_{n>K} sin(2nθ)/n²` is at most `tol`, for
/// `θ` already reduced to `(0, π/2]`.
///
/// Two bounds apply: the crude `½ Σ_{n>K} 1/n² ≤ 1/(2K)`, and the Abel
/// summation bound `1 / (2 sin θ (K+1)²)` from `|Σ_{n=a}^b sin(2nθ)| ≤
/// 1/sin θ`. The smaller term count wins.
pub fn lobachevsky_terms(theta: f64, tol: f64) -> u64 {
    let crude = (1.0 / (2.0 * tol)).ceil();
    let s = theta.sin();
    let abel = if s > 0.0 { (1.0 / (2.0 * s * tol)).sqrt().ceil() } else { f64::INFINITY };
    crude.min(abel).max(1.0) as u64
}

/// `Л(θ)` with truncation error at most `tol`.
///
/// The cost grows like `1/sqrt(sin θ · tol)`, so arguments close to a
/// multiple of π with very small tolerances are slow.
pub fn lobachevsky(theta: f64, tol: f64) -> f64 {
    assert!(tol > 0.0, "tolerance must be positive");
    // Reduce to (-π/2, π/2], then use oddness.
    let mut x = theta.rem_euclid(PI);
    if x > PI / 2.0 {
        x -= PI;
    }
    if x == 0.0 {
        return 0.0;
    }
    if x < 0.0 {
        return -lobachevsky_reduced(-x, tol);
    }
    lobachevsky_reduced(x, tol)
}

fn lobachevsky_reduced(x: f64, tol: f64) -> f64 {
    let terms = lobachevsky_terms(x, tol);
    let mut acc = CompensatedSum::default();
    for n in 1..=terms {
        let nf = n as f64;
        acc.add((2.0 * nf * x).sin() / (nf * nf));
    }
    0.5 * acc.value()
}

/// Partial sum `4 Σ_{k<terms} (-1)^k / (2k+1)²`.
pub fn v8_alternating_series(terms: u64) -> f64 {
    assert!(terms >= 1, "need at least one term");
    let mut acc = CompensatedSum::default();
    for k in 0..terms {
        let d = (2 * k + 1) as f64;
        let term = 1.0 / (d * d);
        acc.add(if k % 2 == 0 { term } else { -term });
    }
    4.0 * acc.value()
}

/// Error bound of [`v8_alternating_series`]: the first omitted term.
pub fn v8_alternating_error(terms: u64) -> f64 {
    let d = (2 * terms + 1) as f64;
    4.0 / (d * d)
}

/// Smallest term count whose alternating-series error bound is at most `tol`.
pub fn v8_alternating_terms(tol: f64) -> u64 {
    // 4/(2K+1)² ≤ tol  ⇔  K ≥ (2/sqrt(tol) - 1)/2
    let k = ((2.0 / tol.sqrt() - 1.0) / 2.0).ceil().max(1.0) as u64;
    let mut k = k;
    while v8_alternating_error(k) > tol {
        k += 1;
    }
    k
}

pub fn v8_by_alternating_series(tol: f64) -> f64 {
    v8_alternating_series(v8_alternating_terms(tol))
}

pub fn constant(name: ConstantName) -> VolumeConstant {
    static V3: OnceLock<f64> = OnceLock::new();
    static V8: OnceLock<f64> = OnceLock::new();
    let value = match name {
        ConstantName::V3 => *V3.get_or_init(|| 3.0 * lobachevsky(PI / 3.0, CONSTANT_TOLERANCE / 3.0)),
        ConstantName::V8 => *V8.get_or_init(|| 8.0 * lobachevsky(PI / 4.0, CONSTANT_TOLERANCE / 8.0)),
    };
    VolumeConstant { name, value, method: Method::LobachevskySeries }
}

/// Volume of the ideal regular tetrahedron.
pub fn v3() -> f64 {
    constant(ConstantName::V3).value
}

/// Volume of the ideal regular octahedron.
pub fn v8() -> f64 {
    constant(ConstantName::V8).value
}

/// Fixed-point rendering with 12 decimals.
pub fn fixed12(x: f64) -> String {
    format!("{x:.12}")
}
