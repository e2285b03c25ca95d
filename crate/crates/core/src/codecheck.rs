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

//! Exact error-correction criterion for Clifford encoders, code distance and
//! Monte Carlo estimation of the failure probability.
//!
//! A Clifford encoder `U` fails at distance parameter `d` when some Pauli `σ_μ`
//! with `1 ≤ ω(μ) ≤ d` pulls back to `U†σ_μU = σ_{ν_A} ⊗ σ_{ν_B}` with a
//! nontrivial logical part `ν_A` and an ancilla part `ν_B ∈ {I,Z}^{n−k}`.
//! Phases never matter.

use alloc::format;
use alloc::vec::Vec;

use crate::brickwork::{sample_circuit, BlockLayout, BrickworkSpec};
use crate::error::{Error, Result};
use crate::pauli_clifford::{CliffordTableau, PauliOperator};
use crate::seeding::stream_rng;

/// A failing error `μ` with its pull-back split into logical and ancilla parts.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub mu: PauliOperator,
    /// `U†σ_μU` restricted to the logical positions (other sites identity).
    pub nu_a: PauliOperator,
    /// `U†σ_μU` restricted to the ancilla positions.
    pub nu_b: PauliOperator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DistanceMethod {
    Backprop,
    Enumerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DistanceReport {
    /// `Some(d)` when a failing `μ` of weight `d ≤ cap` exists.
    pub distance: Option<usize>,
    /// `cap + 1` when no failure was found up to `cap`, else equal to `distance`.
    pub lower_bound: usize,
    pub witness: Option<Witness>,
    pub method: DistanceMethod,
}

struct Masks {
    logical: u64,
    ancilla: u64,
}

fn masks(u: &CliffordTableau, layout: &BlockLayout) -> Result<Masks> {
    if u.num_qubits() != layout.n() {
        return Err(Error::DimensionMismatch {
            expected: layout.n(),
            found: u.num_qubits(),
        });
    }
    Ok(Masks {
        logical: layout.logical_mask()?,
        ancilla: layout.ancilla_mask()?,
    })
}

fn fails(p: &PauliOperator, m: &Masks) -> bool {
    p.x_mask() & m.ancilla == 0 && p.support() & m.logical != 0
}

/// Visits every Pauli of weight exactly `w` on `n` qubits until `f` returns true.
fn find_weight(n: usize, w: usize, mut f: impl FnMut(PauliOperator) -> bool) -> Option<PauliOperator> {
    if w == 0 || w > n {
        return None;
    }
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut support = (1u64 << w) - 1;
    loop {
        let sites: Vec<usize> = (0..n).filter(|&j| support >> j & 1 == 1).collect();
        // Letters X, Y, Z as base-3 digits.
        for code in 0..3u64.pow(w as u32) {
            let (mut x, mut z, mut c) = (0u64, 0u64, code);
            for &j in &sites {
                let (bx, bz) = match c % 3 {
                    0 => (1, 0),
                    1 => (1, 1),
                    _ => (0, 1),
                };
                x |= bx << j;
                z |= bz << j;
                c /= 3;
            }
            let p = PauliOperator::new(n, x, z, 0).expect("within register");
            if f(p) {
                return Some(p);
            }
        }
        // Next subset of the same size (Gosper).
        let c = support & support.wrapping_neg();
        let r = support.wrapping_add(c);
        if r == 0 || r > limit {
            return None;
        }
        support = (((r ^ support) >> 2) / c) | r;
        if support > limit {
            return None;
        }
    }
}

fn witness_for(mu: PauliOperator, inv: &CliffordTableau, m: &Masks) -> Witness {
    let back = inv.conjugate(&mu).expect("dimensions checked");
    Witness {
        mu,
        nu_a: back.restrict(m.logical),
        nu_b: back.restrict(m.ancilla),
    }
}

/// First failing `μ` with `1 ≤ ω(μ) ≤ d`, scanning weights in increasing order.
pub fn find_violation(u: &CliffordTableau, layout: &BlockLayout, d: usize) -> Result<Option<Witness>> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "must be at least 1".into(),
        });
    }
    let m = masks(u, layout)?;
    let inv = u.inverse();
    let n = u.num_qubits();
    for w in 1..=d.min(n) {
        if let Some(mu) = find_weight(n, w, |mu| fails(&inv.conjugate(&mu).expect("same n"), &m)) {
            return Ok(Some(witness_for(mu, &inv, &m)));
        }
    }
    Ok(None)
}

/// `true` iff `U` encodes an `[[n, k, d+1]]` code.
pub fn is_code(u: &CliffordTableau, layout: &BlockLayout, d: usize) -> Result<bool> {
    Ok(find_violation(u, layout, d)?.is_none())
}

/// Smallest weight of a failing error, searched up to `cap`.
pub fn code_distance(u: &CliffordTableau, layout: &BlockLayout, cap: usize) -> Result<DistanceReport> {
    if cap == 0 {
        return Err(Error::InvalidParameter {
            name: "cap",
            reason: "must be at least 1".into(),
        });
    }
    let witness = find_violation(u, layout, cap)?;
    let distance = witness.as_ref().map(|w| w.mu.weight());
    Ok(DistanceReport {
        distance,
        lower_bound: distance.unwrap_or(cap + 1),
        witness,
        method: DistanceMethod::Backprop,
    })
}

/// Default limit on `4^k·2^{n−k}` for [`forward_enumeration_check`].
pub const DEFAULT_FORWARD_LIMIT: u64 = 1 << 24;

/// Same verdict as [`is_code`], by pushing every `σ_{ν_A} ⊗ σ_{ν_B}` with
/// `ν_A ≠ I` forward through `U` and checking its weight.
pub fn forward_enumeration_check(
    u: &CliffordTableau,
    layout: &BlockLayout,
    d: usize,
    limit: u64,
) -> Result<bool> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "must be at least 1".into(),
        });
    }
    let m = masks(u, layout)?;
    let (n, k) = (layout.n(), layout.k());
    let bits = n + k;
    if bits >= 64 || (1u64 << bits) > limit {
        return Err(Error::GuardExceeded {
            what: "logical operators for forward enumeration (log2)",
            value: bits as u64,
            limit: 63 - limit.leading_zeros() as u64,
        });
    }
    // Generators: X and Z on logical sites (flagged), Z on ancilla sites.
    let mut gens: Vec<(PauliOperator, bool)> = Vec::with_capacity(bits);
    for q in 0..n {
        if m.logical >> q & 1 == 1 {
            gens.push((*u.x_image(q), true));
            gens.push((*u.z_image(q), true));
        } else {
            gens.push((*u.z_image(q), false));
        }
    }
    let logical_bits: u64 = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| g.1)
        .fold(0, |acc, (i, _)| acc | 1 << i);
    let mut current = PauliOperator::identity(n);
    let mut state = 0u64;
    for step in 1..1u64 << bits {
        // Gray code: flip the lowest set bit of the step counter.
        let flip = step.trailing_zeros() as usize;
        state ^= 1 << flip;
        current = current.mul(&gens[flip].0).expect("same n");
        if state & logical_bits != 0 && current.weight() <= d {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MCEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√N`.
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl MCEstimate {
    /// Reduces samples in the given order.
    pub fn from_samples(samples: &[f64], seed: u64) -> Result<Self> {
        let n = samples.len();
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "samples",
                reason: "need at least one sample".into(),
            });
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
            libm::sqrt(var / n as f64)
        } else {
            0.0
        };
        Ok(Self {
            mean,
            stderr,
            samples: n,
            seed,
        })
    }
}

/// Whether circuit sample `index` (stream `index` of `seed`) fails at `d`.
pub fn failure_sample(spec: &BrickworkSpec, d: usize, seed: u64, index: u64) -> Result<bool> {
    let mut rng = stream_rng(seed, index);
    let u = sample_circuit(spec, &mut rng)?;
    Ok(!is_code(&u, &spec.layout, d)?)
}

/// Fraction of `samples` brickwork circuits that fail the criterion at `d`.
pub fn estimate_failure_probability(
    spec: &BrickworkSpec,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: format!("need N ≥ 1, got {samples}"),
        });
    }
    let outcomes = (0..samples as u64)
        .map(|i| failure_sample(spec, d, seed, i).map(|f| if f { 1.0 } else { 0.0 }))
        .collect::<Result<Vec<f64>>>()?;
    MCEstimate::from_samples(&outcomes, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_enumeration_counts() {
        for (n, w, expected) in [(4, 1, 12), (4, 2, 54), (5, 3, 270), (3, 3, 27)] {
            let mut count = 0;
            find_weight(n, w, |p| {
                assert_eq!(p.weight(), w);
                count += 1;
                false
            });
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn identity_encoder_has_distance_one() {
        let layout = BlockLayout::new(1, 2, 2).unwrap();
        let u = CliffordTableau::identity(4);
        let w = find_violation(&u, &layout, 1).unwrap().unwrap();
        assert_eq!(w.mu.weight(), 1);
        assert!(!w.nu_a.is_identity());
        assert!(w.nu_b.is_identity());
        assert!(!forward_enumeration_check(&u, &layout, 1, DEFAULT_FORWARD_LIMIT).unwrap());
        assert_eq!(code_distance(&u, &layout, 3).unwrap().distance, Some(1));
        assert!(is_code(&u, &layout, 0).is_err());
    }

    #[test]
    fn estimate_reduction() {
        let e = MCEstimate::from_samples(&[1.0, 0.0, 1.0, 0.0], 5).unwrap();
        assert_eq!(e.mean, 0.5);
        assert!((e.stderr - libm::sqrt(1.0 / 12.0)).abs() < 1e-15);
    }

    #[test]
    fn depth_zero_always_fails() {
        let spec = BrickworkSpec::new(BlockLayout::new(1, 2, 2).unwrap(), 0);
        let e = estimate_failure_probability(&spec, 1, 10, 3).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.stderr, 0.0);
    }
}
