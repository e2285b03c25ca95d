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

use brickqec_core::pauli_clifford::{
    enumerate_clifford_tableaux, sample_two_qubit_clifford, two_qubit_clifford_index, two_qubit_cliffords,
    TWO_QUBIT_CLIFFORD_ORDER,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn histogram(draws: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; TWO_QUBIT_CLIFFORD_ORDER];
    for _ in 0..draws {
        let g = sample_two_qubit_clifford(&mut rng);
        counts[two_qubit_clifford_index(g).expect("sampled element is in the group")] += 1;
    }
    counts
}

#[test]
fn group_oracle_is_closed() {
    assert_eq!(enumerate_clifford_tableaux(2).len(), 11520);
    let group = two_qubit_cliffords();
    for (i, g) in group.iter().enumerate().step_by(97) {
        for h in group.iter().step_by(331) {
            let gh = g.tableau().then(h.tableau()).unwrap();
            let gh = brickqec_core::pauli_clifford::TwoQubitClifford::new(gh).unwrap();
            assert!(
                two_qubit_clifford_index(&gh).is_some(),
                "product with element {i} escaped"
            );
        }
    }
}

#[test]
fn coverage_at_one_million_draws() {
    let counts = histogram(1_000_000, 1);
    assert!(counts.iter().all(|&c| c > 0));
}

#[test]
fn chi_square_at_ten_million_draws() {
    let draws = 10_000_000usize;
    let counts = histogram(draws, 2);
    let expected = draws as f64 / TWO_QUBIT_CLIFFORD_ORDER as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    // 11519 degrees of freedom: mean 11519, sd ≈ 151.8; accept within 5 sd.
    let dof = (TWO_QUBIT_CLIFFORD_ORDER - 1) as f64;
    assert!((chi2 - dof).abs() < 5.0 * (2.0 * dof).sqrt(), "chi2 = {chi2}");
}
