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

//! Partition functions of the configuration model, their infinite-depth
//! limits and the depth-dependent upper bounds.

mod closed_form;
mod dp;
mod noise;

pub use closed_form::{
    a_const, aqec_depth_bound, binary_entropy, c_const, ceil_log2, choi_error_bound, informal_scaling, k_sum,
    lemma10_bound, linear_distance_rate_constraint, ln_aqec_depth_bound, ln_binomial, ln_c_const,
    qec_depth_bound, r_const, scan_exact_threshold, z_infinity_aqec, z_infinity_qec, ScanRow,
};
pub use dp::{
    apply_gate_transfer, exact_partition_profile, exact_prefactor, init_config_vector,
    init_config_vector_with, partition_function, partition_function_exact, partition_function_with,
    partition_profile, prefactor, rational_to_f64, ConfigWeightVector, DpOptions, ExactTransferDp,
    FinalWeighting, PartitionResult, TransferDp, DEFAULT_MAX_DP_QUBITS,
};
pub use noise::{depolarizing_for_strength, lambda_of_f, noise_strength_f, NoiseModel};
