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

use alloc::{format, vec::Vec};

use num_complex::Complex64;

use super::dense::{dense_guard, pauli_matrix, CMatrix, DenseOperator};
use crate::error::{Error, Result};
use crate::statmech::{lambda_of_f, noise_strength_f, NoiseModel};

/// Eigenvalues of `τ_E` at or below this are treated as outside the support.
pub const SUPPORT_CUTOFF: f64 = 1e-14;

/// A completely positive map in Kraus form, `ρ ↦ Σ K_i ρ K_i†`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRep {
    input_dim: usize,
    output_dim: usize,
    kraus: Vec<CMatrix>,
}

impl ChannelRep {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidParameter {
            name: "kraus",
            reason: "empty Kraus family".into(),
        })?;
        let (output_dim, input_dim) = first.shape();
        if let Some(bad) = kraus.iter().find(|k| k.shape() != (output_dim, input_dim)) {
            return Err(Error::InvalidParameter {
                name: "kraus",
                reason: format!(
                    "mixed shapes {}x{} and {}x{}",
                    output_dim,
                    input_dim,
                    bad.nrows(),
                    bad.ncols()
                ),
            });
        }
        Ok(Self {
            input_dim,
            output_dim,
            kraus,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// `Σ K_i† K_i`.
    pub fn kraus_sum(&self) -> CMatrix {
        self.kraus
            .iter()
            .fold(CMatrix::zeros(self.input_dim, self.input_dim), |acc, k| {
                acc + k.adjoint() * k
            })
    }

    /// `‖Σ K_i† K_i − I‖_F`.
    pub fn completeness_defect(&self) -> f64 {
        (self.kraus_sum() - CMatrix::identity(self.input_dim, self.input_dim)).norm()
    }

    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        self.completeness_defect() <= tol
    }

    pub fn apply(&self, rho: &DenseOperator) -> Result<DenseOperator> {
        if rho.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                found: rho.dim(),
            });
        }
        let out = self
            .kraus
            .iter()
            .fold(CMatrix::zeros(self.output_dim, self.output_dim), |acc, k| {
                acc + k * rho.matrix() * k.adjoint()
            });
        DenseOperator::new(out)
    }

    /// Heisenberg picture, `Y ↦ Σ K_i† Y K_i`.
    pub fn apply_adjoint(&self, y: &DenseOperator) -> Result<DenseOperator> {
        if y.dim() != self.output_dim {
            return Err(Error::DimensionMismatch {
                expected: self.output_dim,
                found: y.dim(),
            });
        }
        let out = self
            .kraus
            .iter()
            .fold(CMatrix::zeros(self.input_dim, self.input_dim), |acc, k| {
                acc + k.adjoint() * y.matrix() * k
            });
        DenseOperator::new(out)
    }

    /// `self ⊗ other`, with Kraus operators `K_i ⊗ L_j` (index `i` major).
    pub fn tensor(&self, other: &Self) -> Self {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|k| other.kraus.iter().map(move |l| k.kronecker(l)))
            .collect();
        Self {
            input_dim: self.input_dim * other.input_dim,
            output_dim: self.output_dim * other.output_dim,
            kraus,
        }
    }

    fn tensor_power(&self, n: usize) -> Self {
        let mut out = Self {
            input_dim: 1,
            output_dim: 1,
            kraus: alloc::vec![CMatrix::identity(1, 1)],
        };
        for _ in 0..n {
            out = out.tensor(self);
        }
        out
    }
}

/// Validates `(p_I, p_X, p_Y, p_Z)`.
pub fn validate_pauli_probabilities(p: [f64; 4]) -> Result<()> {
    NoiseModel::pauli(p[0], p[1], p[2], p[3]).map(|_| ())
}

fn one_qubit_noise(p: [f64; 4]) -> ChannelRep {
    let kraus = (0..4)
        .map(|mu| pauli_matrix(mu) * Complex64::new(libm::sqrt(p[mu]), 0.0))
        .collect();
    ChannelRep::new(kraus).expect("four 2x2 operators")
}

/// `(A_j)_{μ,i} = ⟨j|K_μ|i⟩`, so that `Σ_j A_j ρ A_j† = N̂(ρ)`.
fn one_qubit_complementary(p: [f64; 4]) -> ChannelRep {
    let noise = one_qubit_noise(p);
    let kraus = (0..2)
        .map(|j| CMatrix::from_fn(4, 2, |mu, i| noise.kraus[mu][(j, i)]))
        .collect();
    ChannelRep::new(kraus).expect("two 4x2 operators")
}

fn one_qubit_tilde(p: [f64; 4]) -> Result<ChannelRep> {
    let hat = one_qubit_complementary(p);
    let tau = hat.apply(&DenseOperator::identity(2).scale(Complex64::new(0.5, 0.0)))?;
    let root = tau.hermitian_power(-0.25, SUPPORT_CUTOFF)?;
    let kraus = hat.kraus.iter().map(|a| root.matrix() * a).collect();
    ChannelRep::new(kraus)
}

/// The i.i.d. Pauli channel `N` on `n` qubits, Kraus `√p_μ σ_μ`.
pub fn pauli_channel(p: [f64; 4], n: usize) -> Result<ChannelRep> {
    validate_pauli_probabilities(p)?;
    dense_guard(n)?;
    Ok(one_qubit_noise(p).tensor_power(n))
}

/// The complementary channel `N̂` from the system into the `4^n`-dimensional
/// environment, `⟨μ|N̂(ρ)|ν⟩ = tr(K_μ ρ K_ν†)`. Environment labels are base-4
/// digits with qubit 0 most significant and `0..4 = I, X, Y, Z`.
pub fn pauli_complementary_channel(p: [f64; 4], n: usize) -> Result<ChannelRep> {
    validate_pauli_probabilities(p)?;
    dense_guard(n)?;
    Ok(one_qubit_complementary(p).tensor_power(n))
}

/// `τ_E = N̂(I/2^n)`.
pub fn environment_state(p: [f64; 4], n: usize) -> Result<DenseOperator> {
    let hat = pauli_complementary_channel(p, n)?;
    let dim = 1usize << n;
    hat.apply(&DenseOperator::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
}

/// `Ñ = τ_E^{−1/4} N̂(·) τ_E^{−1/4}`, with the pseudo-inverse off the support.
///
/// `τ_E` factorizes over qubits, so the root is taken per qubit. `Ñ` is not
/// trace preserving in general.
pub fn tilde_channel(p: [f64; 4], n: usize) -> Result<ChannelRep> {
    validate_pauli_probabilities(p)?;
    dense_guard(n)?;
    Ok(one_qubit_tilde(p)?.tensor_power(n))
}

/// Single-qubit two-copy quantities of `Ñ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerQubitMoments {
    pub f: f64,
    pub lambda: f64,
    /// `tr((Ñ†)^{⊗2}(S_E))`.
    pub trace_env_swap: f64,
    /// `tr((Ñ†)^{⊗2}(S_E) S_S)`.
    pub trace_both_swaps: f64,
    pub alpha_prime: f64,
    pub beta_prime: f64,
}

impl PerQubitMoments {
    /// `4α′ + 2β′`.
    pub fn identity_weight(&self) -> f64 {
        4.0 * self.alpha_prime + 2.0 * self.beta_prime
    }

    /// `2α′ + 4β′`.
    pub fn swap_weight(&self) -> f64 {
        2.0 * self.alpha_prime + 4.0 * self.beta_prime
    }
}

pub fn per_qubit_moments(p: [f64; 4]) -> Result<PerQubitMoments> {
    validate_pauli_probabilities(p)?;
    let tilde = one_qubit_tilde(p)?;
    let two = tilde.tensor(&tilde);
    let pulled = two.apply_adjoint(&DenseOperator::swap(4))?;
    let t1 = pulled.trace();
    let t2 = pulled.mul(&DenseOperator::swap(2))?.trace();
    if t1.im.abs() > 1e-10 || t2.im.abs() > 1e-10 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: format!("two-copy traces are not real: {t1}, {t2}"),
        });
    }
    let (t1, t2) = (t1.re, t2.re);
    let (alpha_prime, beta_prime) = (t1 / 3.0 - t2 / 6.0, t2 / 3.0 - t1 / 6.0);
    let f = noise_strength_f(&NoiseModel::pauli(p[0], p[1], p[2], p[3])?)?;
    Ok(PerQubitMoments {
        f,
        lambda: lambda_of_f(f),
        trace_env_swap: t1,
        trace_both_swaps: t2,
        alpha_prime,
        beta_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEPOL: [f64; 4] = [0.7, 0.1, 0.1, 0.1];
    const SKEW: [f64; 4] = [0.55, 0.3, 0.0, 0.15];

    #[test]
    fn completeness() {
        for p in [DEPOL, SKEW, [1.0, 0.0, 0.0, 0.0], [0.25; 4]] {
            for n in 1..=3 {
                assert!(pauli_channel(p, n).unwrap().completeness_defect() < 1e-10);
                let hat = pauli_complementary_channel(p, n).unwrap();
                assert!(hat.completeness_defect() < 1e-10);
                assert_eq!((hat.input_dim(), hat.output_dim()), (1 << n, 1 << (2 * n)));
            }
        }
    }

    #[test]
    fn noiseless_environment_is_rank_one() {
        let hat = pauli_complementary_channel([1.0, 0.0, 0.0, 0.0], 2).unwrap();
        let mut rho = CMatrix::zeros(4, 4);
        rho[(0, 0)] = Complex64::new(0.3, 0.0);
        rho[(3, 3)] = Complex64::new(0.7, 0.0);
        rho[(0, 3)] = Complex64::new(0.1, 0.2);
        rho[(3, 0)] = Complex64::new(0.1, -0.2);
        let out = hat.apply(&DenseOperator::new(rho).unwrap()).unwrap();
        let expected = DenseOperator::basis_projector(16, 0).unwrap();
        assert!(out.distance(&expected) < 1e-12);
    }

    #[test]
    fn environment_state_is_product_diagonal() {
        let tau = environment_state(SKEW, 2).unwrap();
        for mu in 0..16 {
            for nu in 0..16 {
                let expected = if mu == nu {
                    SKEW[mu / 4] * SKEW[mu % 4]
                } else {
                    0.0
                };
                assert!((tau.matrix()[(mu, nu)] - Complex64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn tilde_matches_direct_root() {
        let n = 2;
        let tau = environment_state(SKEW, n).unwrap();
        let root = tau.hermitian_power(-0.25, SUPPORT_CUTOFF).unwrap();
        let hat = pauli_complementary_channel(SKEW, n).unwrap();
        let tilde = tilde_channel(SKEW, n).unwrap();
        for (a, b) in hat.kraus().iter().zip(tilde.kraus()) {
            assert!((root.matrix() * a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn per_qubit_identities() {
        for p in [DEPOL, SKEW, [1.0, 0.0, 0.0, 0.0], [0.25; 4], [0.5, 0.5, 0.0, 0.0]] {
            let m = per_qubit_moments(p).unwrap();
            assert!((m.trace_env_swap - 4.0).abs() < 1e-10, "{p:?}: {m:?}");
            assert!(
                (m.trace_both_swaps - 4.0 * m.lambda).abs() < 1e-10,
                "{p:?}: {m:?}"
            );
            assert!((m.identity_weight() - 4.0).abs() < 1e-10);
            assert!((m.swap_weight() / m.identity_weight() - m.lambda).abs() < 1e-10);
        }
        let noiseless = per_qubit_moments([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(noiseless.f, 0.0);
        assert!((noiseless.trace_both_swaps - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_probabilities() {
        assert!(pauli_channel([0.5, 0.5, 0.5, 0.0], 1).is_err());
        assert!(tilde_channel(DEPOL, 6).is_err());
    }
}
