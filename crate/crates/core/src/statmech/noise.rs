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

//! Noise models and their strength parameter `f`.

use alloc::format;

use crate::error::{Error, Result};

const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// Single-qubit noise acting independently on every qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum NoiseModel {
    /// Pauli channel `ρ ↦ Σ_μ p_μ σ_μ ρ σ_μ`.
    Pauli { p_i: f64, p_x: f64, p_y: f64, p_z: f64 },
    /// Erasure with probability `p`.
    Erasure { p: f64 },
}

impl NoiseModel {
    pub fn pauli(p_i: f64, p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let m = NoiseModel::Pauli { p_i, p_x, p_y, p_z };
        m.validate()?;
        Ok(m)
    }

    pub fn erasure(p: f64) -> Result<Self> {
        let m = NoiseModel::Erasure { p };
        m.validate()?;
        Ok(m)
    }

    /// Depolarizing family `(1 − p, p/3, p/3, p/3)`.
    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::pauli(1.0 - p, p / 3.0, p / 3.0, p / 3.0)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::Pauli { p_i, p_x, p_y, p_z } => {
                let ps = [p_i, p_x, p_y, p_z];
                if ps.iter().any(|p| !p.is_finite() || *p < 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "pauli probabilities",
                        reason: format!("must be finite and nonnegative, got {ps:?}"),
                    });
                }
                let total: f64 = ps.iter().sum();
                if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
                    return Err(Error::InvalidParameter {
                        name: "pauli probabilities",
                        reason: format!("must sum to 1, got {total}"),
                    });
                }
            }
            NoiseModel::Erasure { p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter {
                        name: "erasure probability",
                        reason: format!("must lie in [0, 1], got {p}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Pauli probabilities in the order I, X, Y, Z.
    pub fn pauli_probabilities(&self) -> Option<[f64; 4]> {
        match *self {
            NoiseModel::Pauli { p_i, p_x, p_y, p_z } => Some([p_i, p_x, p_y, p_z]),
            NoiseModel::Erasure { .. } => None,
        }
    }

    pub fn strength(&self) -> Result<f64> {
        noise_strength_f(self)
    }

    pub fn lambda(&self) -> Result<f64> {
        Ok(lambda_of_f(self.strength()?))
    }
}

/// `f_P = 2·log2(Σ_μ √p_μ)` for Pauli noise, `f_e = log2(1 + 3p)` for erasure.
pub fn noise_strength_f(model: &NoiseModel) -> Result<f64> {
    model.validate()?;
    let f = match *model {
        NoiseModel::Pauli { p_i, p_x, p_y, p_z } => {
            let s = libm::sqrt(p_i) + libm::sqrt(p_x) + libm::sqrt(p_y) + libm::sqrt(p_z);
            2.0 * libm::log2(s)
        }
        NoiseModel::Erasure { p } => libm::log2(1.0 + 3.0 * p),
    };
    Ok(f.clamp(0.0, 2.0))
}

/// `λ = 2^{f−1}`.
pub fn lambda_of_f(f: f64) -> f64 {
    libm::exp2(f - 1.0)
}

/// Depolarizing strength `p ∈ [0, 3/4]` with `f_P = target`, by bisection.
pub fn depolarizing_for_strength(target: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&target) {
        return Err(Error::InvalidParameter {
            name: "f",
            reason: format!("must lie in [0, 2], got {target}"),
        });
    }
    let strength = |p: f64| 2.0 * libm::log2(libm::sqrt(1.0 - p) + libm::sqrt(3.0 * p));
    let (mut lo, mut hi) = (0.0f64, 0.75f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if strength(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
