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

//! Transfer-matrix evaluation of the partition functions over the
//! configuration space `{I,S}^n` (bit set ⇔ `S`).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::brickwork::{BlockLayout, BrickworkSpec};
use crate::error::{Error, Result};

/// Default cap on `n` for the dense `2^n` state.
pub const DEFAULT_MAX_DP_QUBITS: usize = 26;

/// Final-time weight applied to a configuration with `w` sites in `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FinalWeighting {
    /// `λ^w`.
    Aqec { lambda: f64 },
    /// `2^{−w}·Σ_{j=1}^{min(d,w)} 3^j·C(w,j)`.
    Qec { d: usize },
}

impl FinalWeighting {
    pub fn aqec_from_f(f: f64) -> Self {
        FinalWeighting::Aqec {
            lambda: super::lambda_of_f(f),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            FinalWeighting::Aqec { lambda } if !(lambda.is_finite() && lambda > 0.0) => {
                Err(Error::InvalidParameter {
                    name: "lambda",
                    reason: format!("must be positive and finite, got {lambda}"),
                })
            }
            FinalWeighting::Qec { d } if d == 0 || d > n => Err(Error::InvalidParameter {
                name: "d",
                reason: format!("need 1 ≤ d ≤ n = {n}, got {d}"),
            }),
            _ => Ok(()),
        }
    }

    /// Noise strength `f` for the AQEC weighting.
    pub fn strength(&self) -> Option<f64> {
        match *self {
            FinalWeighting::Aqec { lambda } => Some(libm::log2(lambda) + 1.0),
            FinalWeighting::Qec { .. } => None,
        }
    }

    pub fn weight(&self, w: usize) -> f64 {
        match *self {
            FinalWeighting::Aqec { lambda } => libm::pow(lambda, w as f64),
            FinalWeighting::Qec { d } => {
                let mut term = 1.0;
                let mut sum = 0.0;
                for j in 1..=d.min(w) {
                    term *= 3.0 * (w - j + 1) as f64 / j as f64;
                    sum += term;
                }
                sum * libm::exp2(-(w as f64))
            }
        }
    }

    /// Exact final weight, available for QEC and for `λ ∈ {1/2, 1, 2}`.
    pub fn exact_weight(&self, w: usize) -> Option<BigRational> {
        match *self {
            FinalWeighting::Aqec { lambda } => {
                let base = dyadic_lambda(lambda)?;
                Some(pow_rational(&base, w))
            }
            FinalWeighting::Qec { d } => {
                let mut term = BigInt::one();
                let mut sum = BigInt::zero();
                for j in 1..=d.min(w) {
                    term = term * BigInt::from(3u32 * (w - j + 1) as u32) / BigInt::from(j);
                    sum += &term;
                }
                Some(BigRational::new(sum, BigInt::one() << w))
            }
        }
    }

    pub fn has_exact_form(&self) -> bool {
        match *self {
            FinalWeighting::Aqec { lambda } => dyadic_lambda(lambda).is_some(),
            FinalWeighting::Qec { .. } => true,
        }
    }
}

fn dyadic_lambda(lambda: f64) -> Option<BigRational> {
    let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
    if lambda == 0.5 {
        Some(r(1, 2))
    } else if lambda == 1.0 {
        Some(r(1, 1))
    } else if lambda == 2.0 {
        Some(r(2, 1))
    } else {
        None
    }
}

fn pow_rational(base: &BigRational, e: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e {
        out *= base;
    }
    out
}

/// `3^k·2^n/3^n`.
pub fn prefactor(n: usize, k: usize) -> f64 {
    libm::exp2(n as f64) * libm::pow(3.0, k as f64 - n as f64)
}

pub fn exact_prefactor(n: usize, k: usize) -> BigRational {
    BigRational::new(BigInt::one() << n, BigInt::from(3u32).pow((n - k) as u32))
}

/// Knobs for the dense evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpOptions {
    pub max_qubits: usize,
    /// Weight moved onto each equal-bit configuration per unit of
    /// unequal-bit weight; `(numerator, denominator)`.
    pub transfer_factor: (u32, u32),
}

impl Default for DpOptions {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_MAX_DP_QUBITS,
            transfer_factor: (2, 5),
        }
    }
}

impl DpOptions {
    fn factor(&self) -> f64 {
        self.transfer_factor.0 as f64 / self.transfer_factor.1 as f64
    }

    fn guard(&self, n: usize) -> Result<()> {
        if n > self.max_qubits || n >= usize::BITS as usize {
            return Err(Error::GuardExceeded {
                what: "qubit count for the dense configuration vector",
                value: n as u64,
                limit: self.max_qubits as u64,
            });
        }
        Ok(())
    }
}

/// Nonnegative weights over `{I,S}^n`, indexed by mask.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigWeightVector {
    n: usize,
    weights: Vec<f64>,
}

impl ConfigWeightVector {
    pub fn from_weights(n: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != 1usize << n {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: format!("expected 2^{n} entries, got {}", weights.len()),
            });
        }
        Ok(Self { n, weights })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    /// Mass grouped by the number of `S` sites, summed pairwise.
    pub fn mass_by_weight(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n + 1];
        mass_by_weight_into(&self.weights, 0, &mut out);
        out
    }
}

/// Weight 1 on every configuration with all logical positions in `S`.
pub fn init_config_vector(layout: &BlockLayout) -> Result<ConfigWeightVector> {
    init_config_vector_with(layout, &DpOptions::default())
}

pub fn init_config_vector_with(layout: &BlockLayout, opts: &DpOptions) -> Result<ConfigWeightVector> {
    let n = layout.n();
    opts.guard(n)?;
    let logical = layout.logical_mask()?;
    let weights = (0..1u64 << n)
        .map(|mask| if mask & logical == logical { 1.0 } else { 0.0 })
        .collect();
    Ok(ConfigWeightVector { n, weights })
}

/// Visits every mask with bits `lo` and `hi` clear (`lo < hi`).
#[inline]
fn for_each_base(n: usize, lo: usize, hi: usize, mut f: impl FnMut(usize)) {
    let lo_mask = (1usize << lo) - 1;
    let hi_mask = (1usize << hi) - 1;
    for j in 0..1usize << (n - 2) {
        let t = (j & lo_mask) | (j & !lo_mask) << 1;
        let base = (t & hi_mask) | (t & !hi_mask) << 1;
        f(base);
    }
}

fn ordered_pair(n: usize, (x, y): (usize, usize)) -> Result<(usize, usize)> {
    if x >= n || y >= n {
        return Err(Error::QubitOutOfRange { qubit: x.max(y), n });
    }
    if x == y {
        return Err(Error::RepeatedQubit(x));
    }
    Ok((x.min(y), x.max(y)))
}

/// In-place `v ← M v` for a gate on `pair`.
pub fn apply_gate_transfer(v: &mut ConfigWeightVector, pair: (usize, usize)) -> Result<()> {
    apply_gate_transfer_with(v, pair, 0.4)
}

pub(crate) fn apply_gate_transfer_with(
    v: &mut ConfigWeightVector,
    pair: (usize, usize),
    factor: f64,
) -> Result<()> {
    let (lo, hi) = ordered_pair(v.n, pair)?;
    let (bl, bh) = (1usize << lo, 1usize << hi);
    let w = &mut v.weights;
    for_each_base(v.n, lo, hi, |b| {
        let u = w[b | bl] + w[b | bh];
        if u != 0.0 {
            w[b] += factor * u;
            w[b | bl | bh] += factor * u;
            w[b | bl] = 0.0;
            w[b | bh] = 0.0;
        }
    });
    Ok(())
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 128 {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

/// `offset` is the mask of `xs[0]`; `xs.len()` is a power of two.
fn mass_by_weight_into(xs: &[f64], offset: usize, out: &mut [f64]) {
    if xs.len() <= 256 {
        for (i, &x) in xs.iter().enumerate() {
            out[(offset + i).count_ones() as usize] += x;
        }
        return;
    }
    let half = xs.len() / 2;
    let mut left = vec![0.0; out.len()];
    let mut right = vec![0.0; out.len()];
    mass_by_weight_into(&xs[..half], offset, &mut left);
    mass_by_weight_into(&xs[half..], offset + half, &mut right);
    for (o, (l, r)) in out.iter_mut().zip(left.iter().zip(&right)) {
        *o += l + r;
    }
}

/// Gate-by-gate evaluator in double precision.
#[derive(Debug, Clone)]
pub struct TransferDp {
    layout: BlockLayout,
    state: ConfigWeightVector,
    factor: f64,
    gates: usize,
}

impl TransferDp {
    pub fn new(layout: BlockLayout) -> Result<Self> {
        Self::with_options(layout, &DpOptions::default())
    }

    pub fn with_options(layout: BlockLayout, opts: &DpOptions) -> Result<Self> {
        Ok(Self {
            state: init_config_vector_with(&layout, opts)?,
            layout,
            factor: opts.factor(),
            gates: 0,
        })
    }

    pub fn apply(&mut self, pair: (usize, usize)) -> Result<()> {
        apply_gate_transfer_with(&mut self.state, pair, self.factor)?;
        self.gates += 1;
        Ok(())
    }

    pub fn gates_applied(&self) -> usize {
        self.gates
    }

    pub fn state(&self) -> &ConfigWeightVector {
        &self.state
    }

    /// Partition function of the current state.
    pub fn evaluate(&self, weighting: &FinalWeighting) -> f64 {
        let n = self.layout.n();
        let masses = self.state.mass_by_weight();
        let sum: f64 = masses
            .iter()
            .enumerate()
            .filter(|(_, m)| **m != 0.0)
            .map(|(w, m)| weighting.weight(w) * m)
            .sum();
        prefactor(n, self.layout.k()) * sum
    }
}

/// Exact evaluator: entries are integers scaled by `den^t` after `t` gates.
#[derive(Debug, Clone)]
pub struct ExactTransferDp {
    layout: BlockLayout,
    weights: Vec<BigUint>,
    factor: (u32, u32),
    gates: usize,
}

impl ExactTransferDp {
    pub fn new(layout: BlockLayout) -> Result<Self> {
        Self::with_options(layout, &DpOptions::default())
    }

    pub fn with_options(layout: BlockLayout, opts: &DpOptions) -> Result<Self> {
        let n = layout.n();
        opts.guard(n)?;
        let logical = layout.logical_mask()?;
        let weights = (0..1u64 << n)
            .map(|mask| {
                if mask & logical == logical {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            })
            .collect();
        Ok(Self {
            layout,
            weights,
            factor: opts.transfer_factor,
            gates: 0,
        })
    }

    pub fn apply(&mut self, pair: (usize, usize)) -> Result<()> {
        let n = self.layout.n();
        let (lo, hi) = ordered_pair(n, pair)?;
        let (bl, bh) = (1usize << lo, 1usize << hi);
        let (num, den) = (BigUint::from(self.factor.0), BigUint::from(self.factor.1));
        let w = &mut self.weights;
        for_each_base(n, lo, hi, |b| {
            let u = &w[b | bl] + &w[b | bh];
            let moved = &num * &u;
            w[b] = &w[b] * &den + &moved;
            w[b | bl | bh] = &w[b | bl | bh] * &den + &moved;
            w[b | bl] = BigUint::zero();
            w[b | bh] = BigUint::zero();
        });
        self.gates += 1;
        Ok(())
    }

    pub fn gates_applied(&self) -> usize {
        self.gates
    }

    /// `None` when the weighting has no exact form.
    pub fn evaluate(&self, weighting: &FinalWeighting) -> Option<BigRational> {
        let n = self.layout.n();
        let mut by_weight = vec![BigUint::zero(); n + 1];
        for (mask, v) in self.weights.iter().enumerate() {
            if !v.is_zero() {
                by_weight[mask.count_ones() as usize] += v;
            }
        }
        let mut sum = BigRational::zero();
        for (w, m) in by_weight.into_iter().enumerate() {
            if !m.is_zero() {
                sum += weighting.exact_weight(w)? * BigRational::from_integer(BigInt::from(m));
            }
        }
        let scale = BigInt::from(self.factor.1).pow(self.gates as u32);
        Some(exact_prefactor(n, self.layout.k()) * sum / BigRational::from_integer(scale))
    }
}

/// Value of a partition function together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub z: f64,
    pub exact: Option<BigRational>,
    pub n: usize,
    pub k: usize,
    pub depth: usize,
    pub gates: usize,
    pub weighting: FinalWeighting,
}

impl PartitionResult {
    /// AQEC noise strength `f`, when applicable.
    pub fn strength(&self) -> Option<f64> {
        self.weighting.strength()
    }
}

/// `Z^{(s)}` for the full schedule of `spec`, in double precision.
pub fn partition_function(spec: &BrickworkSpec, weighting: &FinalWeighting) -> Result<PartitionResult> {
    partition_function_with(spec, weighting, &DpOptions::default())
}

pub fn partition_function_with(
    spec: &BrickworkSpec,
    weighting: &FinalWeighting,
    opts: &DpOptions,
) -> Result<PartitionResult> {
    weighting.validate(spec.n())?;
    let mut dp = TransferDp::with_options(spec.layout, opts)?;
    for slot in spec.schedule() {
        dp.apply(slot.pair)?;
    }
    Ok(PartitionResult {
        z: dp.evaluate(weighting),
        exact: None,
        n: spec.n(),
        k: spec.k(),
        depth: spec.depth,
        gates: dp.gates_applied(),
        weighting: *weighting,
    })
}

/// Like [`partition_function`] but also fills `exact` when the weighting
/// admits it. The float value is then the rounded exact value.
pub fn partition_function_exact(
    spec: &BrickworkSpec,
    weighting: &FinalWeighting,
    opts: &DpOptions,
) -> Result<PartitionResult> {
    weighting.validate(spec.n())?;
    if !weighting.has_exact_form() {
        return partition_function_with(spec, weighting, opts);
    }
    let mut dp = ExactTransferDp::with_options(spec.layout, opts)?;
    for slot in spec.schedule() {
        dp.apply(slot.pair)?;
    }
    let exact = dp.evaluate(weighting).expect("checked above");
    Ok(PartitionResult {
        z: rational_to_f64(&exact),
        exact: Some(exact),
        n: spec.n(),
        k: spec.k(),
        depth: spec.depth,
        gates: dp.gates_applied(),
        weighting: *weighting,
    })
}

/// `Z` after every gate: entry `t` is the value after `t` gates (`s + 1` values).
pub fn partition_profile(
    spec: &BrickworkSpec,
    weighting: &FinalWeighting,
    opts: &DpOptions,
) -> Result<Vec<f64>> {
    weighting.validate(spec.n())?;
    let mut dp = TransferDp::with_options(spec.layout, opts)?;
    let mut out = Vec::with_capacity(spec.gate_count() + 1);
    out.push(dp.evaluate(weighting));
    for slot in spec.schedule() {
        dp.apply(slot.pair)?;
        out.push(dp.evaluate(weighting));
    }
    Ok(out)
}

/// Exact counterpart of [`partition_profile`].
pub fn exact_partition_profile(
    spec: &BrickworkSpec,
    weighting: &FinalWeighting,
    opts: &DpOptions,
) -> Result<Vec<BigRational>> {
    weighting.validate(spec.n())?;
    if !weighting.has_exact_form() {
        return Err(Error::InvalidParameter {
            name: "weighting",
            reason: "exact evaluation needs λ ∈ {1/2, 1, 2} or the QEC weighting".into(),
        });
    }
    let mut dp = ExactTransferDp::with_options(spec.layout, opts)?;
    let mut out = Vec::with_capacity(spec.gate_count() + 1);
    out.push(dp.evaluate(weighting).expect("checked above"));
    for slot in spec.schedule() {
        dp.apply(slot.pair)?;
        out.push(dp.evaluate(weighting).expect("checked above"));
    }
    Ok(out)
}

/// Nearest double to a rational (correct to within a couple of ulps).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Rescale numerator and denominator to a common magnitude first.
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    let (num, den) = if shift > 0 {
        (r.numer().clone(), r.denom() << (shift as usize))
    } else {
        (r.numer() << ((-shift) as usize), r.denom().clone())
    };
    let num = num << 64usize;
    let q = (num / den).to_f64().unwrap_or(f64::NAN);
    q * libm::exp2(shift as f64 - 64.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(a: usize, b: usize, m: usize) -> BlockLayout {
        BlockLayout::new(a, b, m).unwrap()
    }

    #[test]
    fn base_enumeration_is_exact() {
        for (lo, hi) in [(0, 1), (0, 5), (2, 3), (1, 4)] {
            let mut seen = Vec::new();
            for_each_base(6, lo, hi, |b| seen.push(b));
            let expected: Vec<usize> = (0..64).filter(|m| m >> lo & 1 == 0 && m >> hi & 1 == 0).collect();
            seen.sort_unstable();
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn init_vector_support() {
        let v = init_config_vector(&layout(1, 2, 2)).unwrap();
        let support: Vec<usize> = (0..16).filter(|&i| v.weights()[i] != 0.0).collect();
        assert_eq!(support, [5, 7, 13, 15]);
        let v = init_config_vector(&layout(2, 5, 2)).unwrap();
        assert_eq!(v.weights().iter().filter(|w| **w != 0.0).count(), 1 << 6);
    }

    #[test]
    fn single_gate_transfer() {
        let mut w = vec![0.0; 16];
        w[5] = 1.0;
        let mut v = ConfigWeightVector::from_weights(4, w).unwrap();
        apply_gate_transfer(&mut v, (0, 1)).unwrap();
        let support: Vec<(usize, f64)> = (0..16)
            .filter(|&i| v.weights()[i] != 0.0)
            .map(|i| (i, v.weights()[i]))
            .collect();
        assert_eq!(support, [(4, 0.4), (7, 0.4)]);
    }

    #[test]
    fn equal_bit_support_is_fixed() {
        let mut w = vec![0.0; 16];
        w[0b0011] = 2.0;
        w[0b1100] = 3.0;
        let mut v = ConfigWeightVector::from_weights(4, w.clone()).unwrap();
        apply_gate_transfer(&mut v, (0, 1)).unwrap();
        assert_eq!(v.weights(), &w[..]);
    }

    #[test]
    fn anchor_values() {
        let l = layout(1, 2, 2);
        let z = |d: usize, wt: FinalWeighting| {
            partition_function_exact(&BrickworkSpec::new(l, d), &wt, &DpOptions::default())
                .unwrap()
                .exact
                .unwrap()
        };
        let q = |p: i64, r: i64| BigRational::new(p.into(), r.into());
        let one = FinalWeighting::Aqec { lambda: 1.0 };
        assert_eq!(z(1, one), q(144, 25));
        assert_eq!(z(0, one), q(64, 9));
        assert_eq!(z(0, FinalWeighting::Qec { d: 1 }), q(8, 1));
        let f = partition_function(&BrickworkSpec::new(l, 1), &one).unwrap().z;
        assert!((f - 5.76).abs() < 1e-13);
    }

    #[test]
    fn qec_weight_matches_float() {
        for d in 1..5 {
            let wt = FinalWeighting::Qec { d };
            assert_eq!(wt.weight(0), 0.0);
            for w in 0..12 {
                let e = rational_to_f64(&wt.exact_weight(w).unwrap());
                assert!((e - wt.weight(w)).abs() <= 1e-14 * e.max(1.0));
            }
        }
        assert_eq!(FinalWeighting::Aqec { lambda: 0.7 }.weight(0), 1.0);
    }

    #[test]
    fn noiseless_is_one() {
        let wt = FinalWeighting::aqec_from_f(0.0);
        for d in 0..4 {
            let r = partition_function_exact(
                &BrickworkSpec::new(layout(1, 3, 2), d),
                &wt,
                &DpOptions::default(),
            )
            .unwrap();
            assert_eq!(r.exact.unwrap(), BigRational::one());
        }
    }

    #[test]
    fn guard_applies() {
        let opts = DpOptions {
            max_qubits: 6,
            ..DpOptions::default()
        };
        assert!(TransferDp::with_options(layout(1, 2, 4), &opts).is_err());
    }

    #[test]
    fn rational_conversion_handles_huge_values() {
        let big = BigRational::new(BigInt::one() << 2000usize, BigInt::from(3) << 1990usize);
        assert!((rational_to_f64(&big) - 1024.0 / 3.0).abs() < 1e-12);
    }
}
