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

use alloc::format;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use super::dense::{
    dense_guard, dense_single_qubit_cliffords, dense_two_qubit_cliffords, CMatrix, DenseOperator,
};
use crate::brickwork::BlockLayout;
use crate::error::{Error, Result};

fn square_root_dim(dim: usize) -> Result<usize> {
    let d = libm::round(libm::sqrt(dim as f64)) as usize;
    if d * d != dim || d == 0 {
        return Err(Error::InvalidParameter {
            name: "O",
            reason: format!("dimension {dim} is not a perfect square"),
        });
    }
    Ok(d)
}

/// `(α, β)` with `E_U[U^{⊗2} O U^{†⊗2}] = αI + βS` for a Haar (or any unitary
/// 2-design) average on `C^d ⊗ C^d`.
pub fn haar_second_moment_coeffs(o: &DenseOperator) -> Result<(Complex64, Complex64)> {
    let d = square_root_dim(o.dim())? as f64;
    if d < 2.0 {
        return Err(Error::InvalidParameter {
            name: "O",
            reason: "local dimension must be at least 2".into(),
        });
    }
    let tr = o.trace();
    let tr_s = o.mul(&DenseOperator::swap(d as usize))?.trace();
    let a = d * d - 1.0;
    Ok((tr / a - tr_s / (d * a), tr_s / a - tr / (d * a)))
}

/// `αI + βS` on `C^d ⊗ C^d`.
pub fn identity_swap_combination(d: usize, alpha: Complex64, beta: Complex64) -> DenseOperator {
    let m = CMatrix::identity(d * d, d * d) * alpha + DenseOperator::swap(d).into_matrix() * beta;
    DenseOperator::new(m).expect("finite coefficients")
}

/// Sample mean of `U^{⊗2} O U^{†⊗2}` with a per-entry standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct TwirlEstimate {
    pub mean: DenseOperator,
    /// `sqrt(Σ_entries Var/N)`, the Frobenius size of the mean's error.
    pub stderr_norm: f64,
    pub samples: usize,
}

fn clifford_table(d: usize) -> Result<&'static [DenseOperator]> {
    match d {
        2 => Ok(dense_single_qubit_cliffords()),
        4 => Ok(dense_two_qubit_cliffords()),
        _ => Err(Error::InvalidParameter {
            name: "d",
            reason: format!("Clifford twirl needs d ∈ {{2, 4}}, got {d}"),
        }),
    }
}

/// Twirls `O` over `samples` uniform Cliffords on one (`d = 2`) or two
/// (`d = 4`) qubits.
pub fn clifford_twirl_estimate<R: Rng + ?Sized>(
    o: &DenseOperator,
    d: usize,
    samples: usize,
    rng: &mut R,
) -> Result<TwirlEstimate> {
    let group = clifford_table(d)?;
    if o.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: o.dim(),
        });
    }
    if samples == 0 {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: "need N ≥ 1".into(),
        });
    }
    let dim = d * d;
    let mut sum = CMatrix::zeros(dim, dim);
    let mut sum_sq = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for _ in 0..samples {
        let u = group[rng.random_range(0..group.len())].matrix();
        let w = u.kronecker(u);
        let x = &w * o.matrix() * w.adjoint();
        sum_sq.zip_apply(&x, |s, z| *s += z.norm_sqr());
        sum += x;
    }
    let n = samples as f64;
    let mean = &sum / Complex64::new(n, 0.0);
    let stderr_norm = if samples > 1 {
        let var: f64 = sum_sq
            .iter()
            .zip(mean.iter())
            .map(|(s, m)| ((s - n * m.norm_sqr()) / (n - 1.0)).max(0.0))
            .sum();
        libm::sqrt(var / n)
    } else {
        0.0
    };
    Ok(TwirlEstimate {
        mean: DenseOperator::new(mean)?,
        stderr_norm,
        samples,
    })
}

pub fn clifford_twirl_empirical<R: Rng + ?Sized>(
    o: &DenseOperator,
    d: usize,
    samples: usize,
    rng: &mut R,
) -> Result<DenseOperator> {
    clifford_twirl_estimate(o, d, samples, rng).map(|e| e.mean)
}

/// `|φ̂⟩⟨φ̂|_{LR} ⊗ |0⟩⟨0|` on `S ⊗ R`, with `S` the high factor. Logical
/// position `l` (in increasing order) is paired with reference qubit `l`.
pub fn reference_state(layout: &BlockLayout) -> Result<DenseOperator> {
    let (n, k) = (layout.n(), layout.k());
    dense_guard(n)?;
    dense_guard(k)?;
    let logical = layout.logical_positions();
    let dr = 1usize << k;
    let mut v = DVector::<Complex64>::zeros((1usize << n) * dr);
    let amp = Complex64::new(1.0 / libm::sqrt(dr as f64), 0.0);
    for r in 0..dr {
        let s = logical
            .iter()
            .enumerate()
            .filter(|(l, _)| r >> (k - 1 - l) & 1 == 1)
            .fold(0usize, |acc, (_, &q)| acc | 1 << (n - 1 - q));
        v[s * dr + r] = amp;
    }
    DenseOperator::pure_state(&v)
}

/// `tr_R(ρ^{⊗2} S_R) = Σ_{r,r′} ρ^{(r,r′)} ⊗ ρ^{(r′,r)}` on `S ⊗ S`, where
/// `ρ^{(r,r′)} = ⟨r|ρ|r′⟩_R` and `ρ` lives on `S ⊗ R` with `S` high.
pub fn reduced_swap_operator(rho: &DenseOperator, ds: usize, dr: usize) -> Result<DenseOperator> {
    if rho.dim() != ds * dr {
        return Err(Error::DimensionMismatch {
            expected: ds * dr,
            found: rho.dim(),
        });
    }
    let m = rho.matrix();
    let block = |r: usize, rp: usize| CMatrix::from_fn(ds, ds, |a, b| m[(a * dr + r, b * dr + rp)]);
    let mut out = CMatrix::zeros(ds * ds, ds * ds);
    for r in 0..dr {
        for rp in 0..dr {
            out += block(r, rp).kronecker(&block(rp, r));
        }
    }
    DenseOperator::new(out)
}

/// Closed-form `(α, β)` of the twirled reference operator for `n` system and
/// `k` reference qubits.
pub fn reference_moment_coeffs(n: usize, k: usize) -> (f64, f64) {
    let d2 = libm::exp2(2.0 * n as f64) - 1.0;
    let alpha = (libm::exp2(-(k as f64)) - libm::exp2(-(n as f64))) / d2;
    let beta = (1.0 - libm::exp2(-((k + n) as f64))) / d2;
    (alpha, beta)
}
