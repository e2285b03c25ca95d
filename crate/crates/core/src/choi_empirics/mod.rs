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

//! Dense-matrix checks on small registers: the complementary and normalized
//! noise channels, two-copy twirls, and a Monte Carlo estimate of the
//! partition function from sampled circuits.

mod channel;
mod dense;
mod moments;
mod sample;

pub use channel::{
    environment_state, pauli_channel, pauli_complementary_channel, per_qubit_moments, tilde_channel,
    validate_pauli_probabilities, ChannelRep, PerQubitMoments, SUPPORT_CUTOFF,
};
pub use dense::{
    apply_pauli, dense_single_qubit_cliffords, dense_two_qubit_cliffords, equal_up_to_phase, is_unitary,
    pauli_matrix, pauli_to_dense, tableau_to_dense, CMatrix, DenseOperator, MAX_DENSE_QUBITS,
};
pub use moments::{
    clifford_twirl_empirical, clifford_twirl_estimate, haar_second_moment_coeffs, identity_swap_combination,
    reduced_swap_operator, reference_moment_coeffs, reference_state, TwirlEstimate,
};
pub use sample::{second_moment_sample, MomentSampler};
