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

use thiserror::Error;

/// Front-end errors. Validation problems map to exit code 2, failed checks
/// to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: `{field}`: {reason}")]
    Validation { field: String, reason: String },
    #[error("{0}")]
    Core(#[from] brickqec_core::Error),
    #[error("check failed: {0}")]
    Check(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            _ => 2,
        }
    }
}

/// Attaches a config field name to a core error.
pub(crate) fn at_field<T>(field: &str, r: brickqec_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::invalid(field, e.to_string()))
}
