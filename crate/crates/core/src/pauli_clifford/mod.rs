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

//! Pauli strings, Clifford tableaux and the small Clifford groups.

mod group;
mod pauli;
mod tableau;

pub use group::{
    canonical_key, enumerate_clifford_tableaux, sample_single_qubit_clifford, sample_two_qubit_clifford,
    single_qubit_cliffords, two_qubit_clifford_index, two_qubit_cliffords, SINGLE_QUBIT_CLIFFORD_ORDER,
    TWO_QUBIT_CLIFFORD_ORDER,
};
pub use pauli::{pauli_letters, Pauli1, PauliOperator, MAX_PAULI_QUBITS};
pub use tableau::{CliffordTableau, TwoQubitClifford};
