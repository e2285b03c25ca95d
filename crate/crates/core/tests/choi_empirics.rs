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

use brickqec_core::brickwork::{sample_circuit, BlockLayout, BrickworkSpec};
use brickqec_core::choi_empirics::*;
use brickqec_core::pauli_clifford::{CliffordTableau, Pauli1, PauliOperator};
use brickqec_core::statmech::{
    depolarizing_for_strength, noise_strength_f, partition_function, partition_function_exact, DpOptions,
    FinalWeighting, NoiseModel,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(a: usize, b: usize, m: usize, depth: usize) -> BrickworkSpec {
    BrickworkSpec::new(BlockLayout::new(a, b, m).unwrap(), depth)
}

fn depolarizing(p: f64) -> [f64; 4] {
    [1.0 - p, p / 3.0, p / 3.0, p / 3.0]
}

/// `2^{k−n} Σ_{g ∈ G} Π_i (Σ_μ √p_μ χ(μ, g_i))²` over the stabilizer group
/// generated by the images of the ancilla Z's.
fn pauli_basis_value(u: &CliffordTableau, layout: &BlockLayout, p: [f64; 4]) -> f64 {
    let n = layout.n();
    let gens: Vec<PauliOperator> = layout
        .ancilla_positions()
        .into_iter()
        .map(|a| *u.z_image(a))
        .collect();
    let letters = [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z];
    let mut total = 0.0;
    for subset in 0u32..1 << gens.len() {
        let mut g = PauliOperator::identity(n);
        for (i, h) in gens.iter().enumerate() {
            if subset >> i & 1 == 1 {
                g = g.mul(h).unwrap();
            }
        }
        let mut c = 1.0;
        for q in 0..n {
            let gq = g.get(q);
            c *= letters
                .iter()
                .zip(p)
                .map(|(&l, pm)| {
                    let commute = l == Pauli1::I || gq == Pauli1::I || l == gq;
                    libm::sqrt(pm) * if commute { 1.0 } else { -1.0 }
                })
                .sum::<f64>();
        }
        total += c * c;
    }
    total * libm::exp2(layout.k() as f64 - n as f64)
}

/// `2^k tr(ω²)` with `ω = (Ñ ⊗ id_R)(U ρ_SR U†)` built as a full matrix.
fn direct_value(u: &CliffordTableau, layout: &BlockLayout, p: [f64; 4]) -> f64 {
    let (n, k) = (layout.n(), layout.k());
    let rho = reference_state(layout).unwrap();
    let ur = tableau_to_dense(u)
        .unwrap()
        .into_matrix()
        .kronecker(&DMatrix::<Complex64>::identity(1 << k, 1 << k));
    let rho_u = &ur * rho.matrix() * ur.adjoint();
    let tilde = tilde_channel(p, n).unwrap();
    let id_r = DMatrix::<Complex64>::identity(1 << k, 1 << k);
    let dim = tilde.output_dim() << k;
    let mut omega = DMatrix::<Complex64>::zeros(dim, dim);
    for b in tilde.kraus() {
        let w = b.kronecker(&id_r);
        omega += &w * &rho_u * w.adjoint();
    }
    (&omega * &omega).trace().re * (1u64 << k) as f64
}

#[test]
fn sampler_matches_direct_purity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (s, reps) in [(spec(1, 2, 1, 2), 6), (spec(1, 2, 2, 1), 2)] {
        for p in [depolarizing(0.2), [0.6, 0.25, 0.0, 0.15]] {
            let sampler = MomentSampler::new(&s, p).unwrap();
            for _ in 0..reps {
                let u = sample_circuit(&s, &mut rng).unwrap();
                let a = sampler.value_for(&u).unwrap();
                let b = direct_value(&u, &s.layout, p);
                assert!((a - b).abs() < 1e-9 * b.max(1.0), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn sampler_matches_pauli_basis_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (s, p) in [
        (spec(1, 2, 2, 1), depolarizing(0.1)),
        (spec(1, 2, 2, 3), [0.5, 0.2, 0.2, 0.1]),
        (spec(1, 4, 1, 2), [0.7, 0.0, 0.3, 0.0]),
        (spec(1, 2, 2, 2), [1.0, 0.0, 0.0, 0.0]),
    ] {
        let sampler = MomentSampler::new(&s, p).unwrap();
        for _ in 0..10 {
            let u = sample_circuit(&s, &mut rng).unwrap();
            let a = sampler.value_for(&u).unwrap();
            let b = pauli_basis_value(&u, &s.layout, p);
            assert!((a - b).abs() < 1e-9 * b.max(1.0), "{a} vs {b}");
        }
    }
}

#[test]
fn extreme_noise_values_are_constant() {
    let s = spec(1, 2, 2, 1);
    let noiseless = second_moment_sample(&s, [1.0, 0.0, 0.0, 0.0], 50, 1).unwrap();
    assert!((noiseless.mean - 1.0).abs() < 1e-10 && noiseless.stderr < 1e-10);
    let full = second_moment_sample(&s, [0.25; 4], 50, 1).unwrap();
    assert!((full.mean - 64.0).abs() < 1e-8 && full.stderr < 1e-8);
}

#[test]
fn monte_carlo_agrees_with_transfer_dp() {
    let s = spec(1, 2, 2, 1);
    let p1 = depolarizing(depolarizing_for_strength(1.0).unwrap());
    let f = noise_strength_f(&NoiseModel::pauli(p1[0], p1[1], p1[2], p1[3]).unwrap()).unwrap();
    assert!((f - 1.0).abs() < 1e-12);
    let exact =
        partition_function_exact(&s, &FinalWeighting::aqec_from_f(1.0), &DpOptions::default()).unwrap();
    assert!((exact.z - 5.76).abs() < 1e-12);
    let mc = second_moment_sample(&s, p1, 20_000, 2024).unwrap();
    assert!(
        (mc.mean - exact.z).abs() <= 4.0 * mc.stderr,
        "{mc:?} vs {}",
        exact.z
    );

    for (s, p) in [
        (spec(1, 2, 2, 2), depolarizing(0.15)),
        (spec(1, 4, 1, 1), [0.6, 0.3, 0.0, 0.1]),
    ] {
        let f = noise_strength_f(&NoiseModel::pauli(p[0], p[1], p[2], p[3]).unwrap()).unwrap();
        let dp = partition_function(&s, &FinalWeighting::aqec_from_f(f)).unwrap();
        let mc = second_moment_sample(&s, p, 20_000, 99).unwrap();
        assert!((mc.mean - dp.z).abs() <= 4.0 * mc.stderr, "{mc:?} vs {}", dp.z);
    }
}

#[test]
fn guards() {
    assert!(MomentSampler::new(&spec(1, 2, 2, 0), [1.0, 0.0, 0.0, 0.0]).is_err());
    assert!(MomentSampler::new(&spec(1, 2, 3, 1), [1.0, 0.0, 0.0, 0.0]).is_err());
    assert!(second_moment_sample(&spec(1, 2, 2, 1), [0.5, 0.5, 0.5, 0.0], 1, 0).is_err());
}

#[test]
fn twirl_on_two_qubits_converges() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let o = DenseOperator::basis_projector(16, 0).unwrap();
    let (a, b) = haar_second_moment_coeffs(&o).unwrap();
    let est = clifford_twirl_estimate(&o, 4, 20_000, &mut rng).unwrap();
    let target = identity_swap_combination(4, a, b);
    assert!(est.mean.distance(&target) <= 5.0 * est.stderr_norm + 1e-12);
}
