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

use alloc::string::String;

/// Errors raised by the core algorithms.
///
/// Every variant names the violated constraint so that front ends can report
/// it without further context.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("gate qubits must be distinct, got ({0}, {0})")]
    RepeatedQubit(usize),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("{what}: {value} exceeds the limit of {limit}")]
    GuardExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("images do not satisfy the symplectic condition: {0}")]
    NotSymplectic(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
