// Copyright 2026 The brickqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Infinite-depth values, depth-dependent upper bounds and the threshold scan.
//!
//! All logarithms of the model are base 2. The bounds are assembled in natural
//! log space so that `C = 10·3^{2b}·2^b` never overflows on its own.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::error::{Error, Result};

/// `ln C(n, j)`, summed term by term (exact enough for the small `j` used here).
pub fn ln_binomial(n: usize, j: usize) -> f64 {
    if j > n {
        return f64::NEG_INFINITY;
    }
    let j = j.min(n - j);
    (0..j)
        .map(|i| libm::log((n - i) as f64) - libm::log((i + 1) as f64))
        .sum()
}

fn ln_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + libm::log(terms.iter().map(|t| libm::exp(t - max)).sum::<f64>())
}

/// `ln(2^x − 2^y)` for `x > y`.
fn ln_exp2_diff(x: f64, y: f64) -> f64 {
    x * LN_2 + libm::log1p(-libm::exp2(y - x))
}

/// Infinite-depth AQEC value
/// `(1 − 2^{−n+k} + 2^{−n+k+nf} − 2^{−2n+nf}) / (1 − 2^{−2n})`.
pub fn z_infinity_aqec(n: usize, k: usize, f: f64) -> Result<f64> {
    if k >= n {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: format!("need 0 ≤ k < n, got k={k}, n={n}"),
        });
    }
    Ok(libm::exp(ln_z_infinity_aqec(n, k, f)))
}

fn ln_z_infinity_aqec(n: usize, k: usize, f: f64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    // numerator = (1 − 2^{k−n}) + 2^{nf−2n}(2^{n+k} − 1), both terms ≥ 0
    let first = libm::log1p(-libm::exp2(k - n));
    let second = (n * f - 2.0 * n) * LN_2 + ln_exp2_diff(n + k, 0.0);
    ln_sum_exp(&[first, second]) - libm::log1p(-libm::exp2(-2.0 * n))
}

/// `ln K` with `K = Σ_{j=1}^{d} 3^j·C(n, j)`.
fn ln_k_sum(n: usize, d: usize) -> f64 {
    let terms: Vec<f64> = (1..=d.min(n))
        .map(|j| j as f64 * libm::log(3.0) + ln_binomial(n, j))
        .collect();
    ln_sum_exp(&terms)
}

pub fn k_sum(n: usize, d: usize) -> f64 {
    libm::exp(ln_k_sum(n, d))
}

/// Infinite-depth QEC value `K·(2^{−n+k} − 2^{−2n}) / (1 − 2^{−2n})`.
pub fn z_infinity_qec(n: usize, k: usize, d: usize) -> Result<f64> {
    check_qec_d(n, d)?;
    if k >= n {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: format!("need k < n, got k={k}, n={n}"),
        });
    }
    Ok(libm::exp(ln_z_infinity_qec(n, k, d)))
}

fn ln_z_infinity_qec(n: usize, k: usize, d: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    ln_k_sum(n, d) + ln_exp2_diff(kf - nf, -2.0 * nf) - libm::log1p(-libm::exp2(-2.0 * nf))
}

fn check_qec_d(n: usize, d: usize) -> Result<()> {
    if d == 0 || 2 * d > n {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: format!("need 1 ≤ d ≤ n/2, got d={d}, n={n}"),
        });
    }
    Ok(())
}

/// `(max(Z − 1, 0))^{1/4}`.
pub fn choi_error_bound(z: f64) -> f64 {
    let gap = z - 1.0;
    if gap > 0.0 {
        libm::sqrt(libm::sqrt(gap))
    } else {
        0.0
    }
}

/// `ln C` with `C = 10·3^{2b}·2^b`.
pub fn ln_c_const(b: usize) -> f64 {
    libm::log(10.0) + 2.0 * b as f64 * libm::log(3.0) + b as f64 * LN_2
}

pub fn c_const(b: usize) -> f64 {
    libm::exp(ln_c_const(b))
}

/// `r = (2/5)(2^R + 2^{−R})`.
pub fn r_const(rate: f64) -> f64 {
    0.4 * (libm::exp2(rate) + libm::exp2(-rate))
}

/// `A = max(2^{2−f}, 3/(f·ln 2))`.
pub fn a_const(f: f64) -> f64 {
    libm::fmax(libm::exp2(2.0 - f), 3.0 / (f * LN_2))
}

fn check_block(n: usize, k: usize, b: usize) -> Result<f64> {
    if b == 0 || n == 0 || n % b != 0 || (k * b) % n != 0 || k == 0 || k >= n {
        return Err(Error::InvalidParameter {
            name: "n, k, b",
            reason: format!("need b | n and k/n = a/b with 0 < a < b, got n={n}, k={k}, b={b}"),
        });
    }
    Ok(k as f64 / n as f64)
}

/// `ln(n·C·r^D)`.
fn ln_spread_term(n: usize, b: usize, rate: f64, depth: usize) -> f64 {
    libm::log(n as f64) + ln_c_const(b) + depth as f64 * libm::log(r_const(rate))
}

/// Natural log of the AQEC depth bound `Z^{(∞)}·exp(n·C·r^D)`.
pub fn ln_aqec_depth_bound(n: usize, k: usize, b: usize, depth: usize, f: f64) -> Result<f64> {
    let rate = check_block(n, k, b)?;
    if !(0.0..=2.0).contains(&f) {
        return Err(Error::InvalidParameter {
            name: "f",
            reason: format!("must lie in [0, 2], got {f}"),
        });
    }
    if f > 1.0 - rate + 1e-12 {
        return Err(Error::HypothesisViolated(format!(
            "noise strength f = {f} must not exceed one minus the rate, 1 − k/n = {}",
            1.0 - rate
        )));
    }
    Ok(ln_z_infinity_aqec(n, k, f) + libm::exp(ln_spread_term(n, b, rate, depth)))
}

/// `Z^{(∞)}_AQEC·exp(n·C·r^D)`; may be `+∞` at shallow depth.
pub fn aqec_depth_bound(n: usize, k: usize, b: usize, depth: usize, f: f64) -> Result<f64> {
    Ok(libm::exp(ln_aqec_depth_bound(n, k, b, depth, f)?))
}

/// `Z^{(∞)}_QEC + exp(ln d + d·ln A + ln n + ln C + D·ln r + n·C·r^D)` with
/// `f = 1 − k/n`.
pub fn qec_depth_bound(n: usize, k: usize, b: usize, d: usize, depth: usize) -> Result<f64> {
    let rate = check_block(n, k, b)?;
    check_qec_d(n, d)?;
    let f = 1.0 - rate;
    if !(f > 0.0 && f < 1.0) {
        return Err(Error::InvalidParameter {
            name: "f",
            reason: format!("1 − k/n must lie in (0, 1), got {f}"),
        });
    }
    let spread = ln_spread_term(n, b, rate, depth);
    let tail = libm::log(d as f64) + d as f64 * libm::log(a_const(f)) + spread + libm::exp(spread);
    Ok(libm::exp(ln_z_infinity_qec(n, k, d)) + libm::exp(tail))
}

/// `n^{(1 − c·|log2 r|)/4}`.
pub fn informal_scaling(n: f64, c: f64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            reason: format!("must lie in (0, 1), got {r}"),
        });
    }
    let lr = libm::fabs(libm::log2(r));
    if c <= 1.0 / lr {
        return Err(Error::InvalidParameter {
            name: "c",
            reason: format!("must exceed 1/|log2 r| = {}, got {c}", 1.0 / lr),
        });
    }
    Ok(libm::pow(n, (1.0 - c * lr) / 4.0))
}

/// `(2^{−f·w}·Σ_{j=1}^{min(d,w)} 3^j·C(w,j), d·A^d)`.
pub fn lemma10_bound(w: usize, d: usize, f: f64) -> Result<(f64, f64)> {
    if w == 0 || d == 0 {
        return Err(Error::InvalidParameter {
            name: "w, d",
            reason: format!("need w ≥ 1 and d ≥ 1, got w={w}, d={d}"),
        });
    }
    if !(f > 0.0 && f < 1.0) {
        return Err(Error::InvalidParameter {
            name: "f",
            reason: format!("must lie in (0, 1), got {f}"),
        });
    }
    let lhs = libm::exp(ln_k_sum(w, d) - f * w as f64 * LN_2);
    let rhs = libm::exp(libm::log(d as f64) + d as f64 * libm::log(a_const(f)));
    Ok((lhs, rhs))
}

/// Binary entropy in bits.
pub fn binary_entropy(c: f64) -> f64 {
    if c <= 0.0 || c >= 1.0 {
        return 0.0;
    }
    -c * libm::log2(c) - (1.0 - c) * libm::log2(1.0 - c)
}

/// `(c·log2 3 + H(c) + a/b, value < 1)` for a linear distance `d(n) = c·n`.
pub fn linear_distance_rate_constraint(c: f64, a: usize, b: usize) -> (f64, bool) {
    let v = c * libm::log2(3.0) + binary_entropy(c) + a as f64 / b as f64;
    (v, v < 1.0)
}

/// One row of [`scan_exact_threshold`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanRow {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub depth: usize,
    pub z_inf: f64,
    pub bound: f64,
    pub below_one: bool,
    /// Strictly below the previous row's bound (`true` for the first row).
    pub decreasing: bool,
}

/// Evaluates the QEC depth bound at `D = ⌈α·d(n)⌉` for every `n`.
pub fn scan_exact_threshold(
    n_list: &[usize],
    a: usize,
    b: usize,
    d_of_n: impl Fn(usize) -> usize,
    alpha: f64,
) -> Result<Vec<ScanRow>> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("must be finite and nonnegative, got {alpha}"),
        });
    }
    let mut rows: Vec<ScanRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let k = n / b * a;
        let d = d_of_n(n);
        let depth = libm::ceil(alpha * d as f64) as usize;
        let bound = qec_depth_bound(n, k, b, d, depth)?;
        let decreasing = rows.last().map_or(true, |p| bound < p.bound);
        rows.push(ScanRow {
            n,
            k,
            d,
            depth,
            z_inf: z_infinity_qec(n, k, d)?,
            bound,
            below_one: bound < 1.0,
            decreasing,
        });
    }
    Ok(rows)
}

/// `⌈log2 n⌉`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn infinite_depth_values() {
        for n in [4, 8, 20] {
            assert!(close(z_infinity_aqec(n, n / 2, 0.0).unwrap(), 1.0, 1e-14));
            let two = z_infinity_aqec(n, n / 4, 2.0).unwrap();
            assert!(close(two, libm::exp2((n + n / 4) as f64), 1e-13));
        }
        assert!(close(z_infinity_aqec(4, 2, 1.0).unwrap(), 80.0 / 17.0, 1e-14));
        assert!(close(z_infinity_qec(4, 2, 1).unwrap(), 756.0 / 255.0, 1e-14));
        assert!(close(k_sum(4, 1), 12.0, 1e-14));
        assert!(close(k_sum(10, 3), 3.0 * 10.0 + 9.0 * 45.0 + 27.0 * 120.0, 1e-13));
        assert!(z_infinity_qec(4, 2, 3).is_err());
    }

    #[test]
    fn choi_bound_examples() {
        assert_eq!(choi_error_bound(1.0), 0.0);
        assert_eq!(choi_error_bound(2.0), 1.0);
        assert!(close(choi_error_bound(1.0 + 1e-8), 1e-2, 1e-6));
        assert_eq!(choi_error_bound(0.999), 0.0);
    }

    #[test]
    fn constants() {
        assert!(close(r_const(0.5), 0.848_528_137_423_857, 1e-14));
        assert!(close(c_const(2), 3240.0, 1e-13));
        assert!(close(a_const(0.5), 8.656_170_245_333_781, 1e-13));
        assert!(close(a_const(1.0), 3.0 / LN_2, 1e-14));
    }

    #[test]
    fn aqec_bound_hypothesis_and_trend() {
        assert!(matches!(
            aqec_depth_bound(4, 2, 2, 5, 0.8),
            Err(Error::HypothesisViolated(_))
        ));
        let mut prev = f64::INFINITY;
        for depth in [40, 60, 80, 100, 150] {
            let v = aqec_depth_bound(8, 4, 2, depth, 0.5).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(aqec_depth_bound(8, 4, 2, 1, 0.5).unwrap().is_infinite());
        // C overflows doubles for large b; the log form stays finite.
        assert!(ln_aqec_depth_bound(1000, 500, 500, 100_000, 0.3)
            .unwrap()
            .is_finite());
    }

    #[test]
    fn qec_bound_structure() {
        let (n, k, b) = (16, 4, 4);
        let base = |d, depth| qec_depth_bound(n, k, b, d, depth).unwrap() - z_infinity_qec(n, k, d).unwrap();
        let f: f64 = 0.75;
        let ratio = base(2, 100) / base(1, 100);
        assert!(close(ratio, 2.0 * a_const(f), 1e-9));
        let mut prev = f64::INFINITY;
        for depth in (50..160).step_by(10) {
            let v = qec_depth_bound(n, k, b, 2, depth).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn informal_scaling_examples() {
        let r: f64 = 0.8;
        let lr = libm::fabs(libm::log2(r));
        assert!(close(informal_scaling(16.0, 2.0 / lr, r).unwrap(), 0.5, 1e-14));
        assert!(informal_scaling(16.0, 0.5 / lr, r).is_err());
        assert!(informal_scaling(100.0, 3.0 / lr, r).unwrap() < informal_scaling(10.0, 3.0 / lr, r).unwrap());
    }

    #[test]
    fn lemma10_examples() {
        let (l, r) = lemma10_bound(1, 1, 0.5).unwrap();
        assert!(close(l, 3.0 / core::f64::consts::SQRT_2, 1e-14));
        assert!(close(r, 8.656_170_245_333_781, 1e-13));
        let (l, r) = lemma10_bound(1, 1, 1.0 - 1e-12).unwrap();
        assert!(close(l, 1.5, 1e-9));
        assert!(close(r, 3.0 / LN_2, 1e-9));
        assert!(lemma10_bound(0, 1, 0.5).is_err());
        assert!(lemma10_bound(1, 1, 1.0).is_err());
    }

    #[test]
    fn scan_trend() {
        let ns: Vec<usize> = (6..=12).map(|e| 1usize << e).collect();
        let rows = scan_exact_threshold(&ns, 1, 4, ceil_log2, 32.0).unwrap();
        assert!(rows.iter().all(|r| r.decreasing && r.below_one));
        let flat = scan_exact_threshold(&ns, 1, 4, ceil_log2, 0.0).unwrap();
        assert!(flat.iter().all(|r| !r.below_one));
        let (v, ok) = linear_distance_rate_constraint(0.05, 1, 4);
        assert!(ok && v < 1.0);
        assert!(!linear_distance_rate_constraint(0.2, 1, 2).1);
    }

    #[test]
    fn log2_ceiling() {
        assert_eq!(ceil_log2(64), 6);
        assert_eq!(ceil_log2(65), 7);
        assert_eq!(ceil_log2(4096), 12);
    }
}
