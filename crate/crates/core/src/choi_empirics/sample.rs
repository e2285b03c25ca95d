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

use super::channel::tilde_channel;
use super::dense::{dense_guard, tableau_to_dense, CMatrix};
use crate::brickwork::{sample_circuit, BrickworkSpec};
use crate::codecheck::MCEstimate;
use crate::error::{Error, Result};
use crate::pauli_clifford::CliffordTableau;
use crate::seeding::stream_rng;

/// Evaluates `2^k·tr(((Ñ ⊗ id_R)(U ρ_SR U†))²)` for individual circuits.
///
/// With `ρ_SR` pure and `σ = tr_R(U ρ_SR U†)`, the trace equals
/// `Σ_{j,j′} |tr(B_{j′}† B_j σ)|²` over the Kraus operators `B_j` of `Ñ`, so
/// the products `B_{j′}† B_j` are formed once per noise vector.
#[derive(Debug, Clone)]
pub struct MomentSampler {
    spec: BrickworkSpec,
    gram: Vec<CMatrix>,
}

impl MomentSampler {
    pub fn new(spec: &BrickworkSpec, p: [f64; 4]) -> Result<Self> {
        let n = spec.n();
        dense_guard(n)?;
        if spec.depth == 0 {
            return Err(Error::InvalidParameter {
                name: "depth",
                reason: "the sampled moment needs D ≥ 1".into(),
            });
        }
        let tilde = tilde_channel(p, n)?;
        let b = tilde.kraus();
        let mut gram = Vec::with_capacity(b.len() * b.len());
        for bp in b {
            let bp_adj = bp.adjoint();
            for bj in b {
                gram.push(&bp_adj * bj);
            }
        }
        Ok(Self { spec: *spec, gram })
    }

    pub fn spec(&self) -> &BrickworkSpec {
        &self.spec
    }

    /// `σ = U (I_L/2^k ⊗ |0⟩⟨0|_anc) U†`.
    pub fn code_state(&self, u: &CliffordTableau) -> Result<CMatrix> {
        let n = self.spec.n();
        if u.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.num_qubits(),
            });
        }
        let dense = tableau_to_dense(u)?.into_matrix();
        let anc = super::dense::index_mask(self.spec.layout.ancilla_mask()?, n);
        let w = 1.0 / (1u64 << self.spec.k()) as f64;
        let dim = 1usize << n;
        // U P U† with P diagonal: scale the kept columns.
        let kept = CMatrix::from_fn(dim, dim, |r, c| {
            if c & anc == 0 {
                dense[(r, c)] * w
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(kept * dense.adjoint())
    }

    pub fn value_for(&self, u: &CliffordTableau) -> Result<f64> {
        let sigma = self.code_state(u)?;
        let sigma_t = sigma.transpose();
        let total: f64 = self
            .gram
            .iter()
            .map(|c| c.component_mul(&sigma_t).sum().norm_sqr())
            .sum();
        Ok(total * (1u64 << self.spec.k()) as f64)
    }

    /// Sample `index` of stream family `seed`.
    pub fn sample(&self, seed: u64, index: u64) -> Result<f64> {
        let mut rng = stream_rng(seed, index);
        let u = sample_circuit(&self.spec, &mut rng)?;
        self.value_for(&u)
    }
}

/// Monte Carlo estimate of `Z` from `samples` sampled circuits, in index order.
pub fn second_moment_sample(
    spec: &BrickworkSpec,
    p: [f64; 4],
    samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: format!("need N ≥ 1, got {samples}"),
        });
    }
    let sampler = MomentSampler::new(spec, p)?;
    let values = (0..samples as u64)
        .map(|i| sampler.sample(seed, i))
        .collect::<Result<Vec<f64>>>()?;
    MCEstimate::from_samples(&values, seed)
}
