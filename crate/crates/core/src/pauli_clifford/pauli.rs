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

//! Bit-packed Pauli strings with phases tracked modulo 4.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest register a [`PauliOperator`] can describe (one bit per qubit in a `u64`).
pub const MAX_PAULI_QUBITS: usize = 64;

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli1::I => (false, false),
            Pauli1::X => (true, false),
            Pauli1::Y => (true, true),
            Pauli1::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli1::I => 'I',
            Pauli1::X => 'X',
            Pauli1::Y => 'Y',
            Pauli1::Z => 'Z',
        }
    }
}

/// An `n`-qubit Pauli operator `i^phase · σ_0 ⊗ … ⊗ σ_{n-1}`.
///
/// Bit `j` of `x` (resp. `z`) is set when qubit `j` carries an X (resp. Z)
/// component; both bits set means `Y`. The tensor factors are the Hermitian
/// single-qubit Paulis, so a Hermitian operator has `phase ∈ {0, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PauliOperator {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Exponent `g` with `σ_a σ_b = i^g σ_{a⊕b}`, summed over all qubits, mod 4.
#[inline]
pub(crate) fn product_phase(x1: u64, z1: u64, x2: u64, z2: u64) -> u8 {
    let (ax, ay, az) = (x1 & !z1, x1 & z1, !x1 & z1);
    let (bx, by, bz) = (x2 & !z2, x2 & z2, !x2 & z2);
    // X·Y = iZ, Y·Z = iX, Z·X = iY; reversed order gives -i.
    let plus = (ax & by) | (ay & bz) | (az & bx);
    let minus = (ay & bx) | (az & by) | (ax & bz);
    ((plus.count_ones() + 3 * minus.count_ones()) % 4) as u8
}

impl PauliOperator {
    /// Builds a Pauli, rejecting masks with bits beyond `n`.
    pub fn new(n: usize, x: u64, z: u64, phase: u8) -> Result<Self> {
        if n > MAX_PAULI_QUBITS {
            return Err(Error::GuardExceeded {
                what: "pauli register size",
                value: n as u64,
                limit: MAX_PAULI_QUBITS as u64,
            });
        }
        let mask = low_mask(n);
        if (x | z) & !mask != 0 {
            return Err(Error::InvalidParameter {
                name: "mask",
                reason: alloc::format!("bits set beyond qubit {}", n),
            });
        }
        Ok(Self {
            n,
            x,
            z,
            phase: phase % 4,
        })
    }

    pub(crate) const fn from_raw(n: usize, x: u64, z: u64, phase: u8) -> Self {
        Self {
            n,
            x,
            z,
            phase: phase & 3,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw(n, 0, 0, 0)
    }

    /// `σ` acting on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, p: Pauli1) -> Result<Self> {
        if qubit >= n {
            return Err(Error::QubitOutOfRange { qubit, n });
        }
        let (x, z) = p.bits();
        Self::new(n, (x as u64) << qubit, (z as u64) << qubit, 0)
    }

    pub fn from_paulis(paulis: &[Pauli1]) -> Result<Self> {
        let mut x = 0;
        let mut z = 0;
        for (j, p) in paulis.iter().enumerate() {
            let (px, pz) = p.bits();
            x |= (px as u64) << j;
            z |= (pz as u64) << j;
        }
        Self::new(paulis.len(), x, z, 0)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x_mask(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Number of qubits on which the operator acts nontrivially.
    #[inline]
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    #[inline]
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    #[inline]
    pub fn is_hermitian(&self) -> bool {
        self.phase % 2 == 0
    }

    pub fn get(&self, qubit: usize) -> Pauli1 {
        Pauli1::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    /// Same Pauli string with phase 0.
    pub fn unsigned(self) -> Self {
        self.with_phase(0)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// Operator product `self · other` with exact phase.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let g = product_phase(self.x, self.z, other.x, other.z);
        Self::from_raw(
            self.n,
            self.x ^ other.x,
            self.z ^ other.z,
            self.phase + other.phase + g,
        )
    }

    /// Restricts to the qubits selected by `mask`, dropping the phase.
    pub fn restrict(&self, mask: u64) -> Self {
        Self::from_raw(self.n, self.x & mask, self.z & mask, 0)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(sign)?;
        for j in 0..self.n {
            write!(f, "{}", self.get(j).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Parses `"+XIZY"`, `"-iZZ"`, `"XX"`; qubit 0 is the leftmost letter.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else {
            (0, s)
        };
        let mut paulis = alloc::vec::Vec::with_capacity(body.len());
        for c in body.chars() {
            paulis.push(match c {
                'I' | '_' => Pauli1::I,
                'X' => Pauli1::X,
                'Y' => Pauli1::Y,
                'Z' => Pauli1::Z,
                other => {
                    return Err(Error::Parse(alloc::format!(
                        "unexpected character {other:?} in Pauli string {s:?}"
                    )))
                }
            });
        }
        Ok(Self::from_paulis(&paulis)?.with_phase(phase))
    }
}

/// Renders without the sign, e.g. `"XIZ"`.
pub fn pauli_letters(p: &PauliOperator) -> String {
    (0..p.num_qubits()).map(|j| p.get(j).as_char()).collect()
}
