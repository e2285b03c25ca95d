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

//! Clifford tableaux: the images of `X_0..X_{n-1}, Z_0..Z_{n-1}` under
//! conjugation `P ↦ U P U†`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::pauli::{PauliOperator, MAX_PAULI_QUBITS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CliffordTableau {
    n: usize,
    /// `images[i]` is `U X_i U†` for `i < n` and `U Z_{i-n} U†` otherwise.
    images: Vec<PauliOperator>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_PAULI_QUBITS, "tableau limited to 64 qubits");
        let mut images = Vec::with_capacity(2 * n);
        images.extend((0..n).map(|i| PauliOperator::from_raw(n, 1 << i, 0, 0)));
        images.extend((0..n).map(|i| PauliOperator::from_raw(n, 0, 1 << i, 0)));
        Self { n, images }
    }

    /// Builds a tableau from explicit generator images and checks that they
    /// form a Hermitian symplectic basis.
    pub fn from_images(x_images: &[PauliOperator], z_images: &[PauliOperator]) -> Result<Self> {
        let n = x_images.len();
        if z_images.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: z_images.len(),
            });
        }
        for p in x_images.iter().chain(z_images) {
            if p.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.num_qubits(),
                });
            }
        }
        let mut images = Vec::with_capacity(2 * n);
        images.extend_from_slice(x_images);
        images.extend_from_slice(z_images);
        let t = Self { n, images };
        t.check_symplectic()?;
        Ok(t)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[PauliOperator] {
        &self.images
    }

    #[inline]
    pub fn x_image(&self, qubit: usize) -> &PauliOperator {
        &self.images[qubit]
    }

    #[inline]
    pub fn z_image(&self, qubit: usize) -> &PauliOperator {
        &self.images[self.n + qubit]
    }

    pub fn is_symplectic(&self) -> bool {
        self.check_symplectic().is_ok()
    }

    /// Pairwise check: `X_i`/`Z_i` images anticommute, all other pairs
    /// commute, every image is Hermitian.
    pub fn check_symplectic(&self) -> Result<()> {
        let n = self.n;
        if self.images.len() != 2 * n {
            return Err(Error::NotSymplectic(format!(
                "expected {} images, found {}",
                2 * n,
                self.images.len()
            )));
        }
        for (i, p) in self.images.iter().enumerate() {
            if !p.is_hermitian() {
                return Err(Error::NotSymplectic(format!("image {i} ({p}) is not Hermitian")));
            }
            for (j, q) in self.images.iter().enumerate().skip(i + 1) {
                let should_anticommute = j == i + n;
                if p.commutes_with(q) == should_anticommute {
                    return Err(Error::NotSymplectic(format!(
                        "images {i} ({p}) and {j} ({q}) have the wrong commutation"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_dims(&self, p: &PauliOperator) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        Ok(())
    }

    /// `U P U†` with the sign tracked exactly.
    pub fn conjugate(&self, p: &PauliOperator) -> Result<PauliOperator> {
        self.check_dims(p)?;
        Ok(self.conjugate_unchecked(p))
    }

    pub(crate) fn conjugate_unchecked(&self, p: &PauliOperator) -> PauliOperator {
        // ⊗σ_j = i^{|x∧z|} (∏ X_j^{x_j})(∏ Z_j^{z_j})
        let (x, z) = (p.x_mask(), p.z_mask());
        let start = p.phase() + ((x & z).count_ones() % 4) as u8;
        let mut acc = PauliOperator::from_raw(self.n, 0, 0, start);
        let mut bits = x;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            acc = acc.mul_unchecked(&self.images[j]);
            bits &= bits - 1;
        }
        let mut bits = z;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            acc = acc.mul_unchecked(&self.images[self.n + j]);
            bits &= bits - 1;
        }
        acc
    }

    /// Tableau of `U†`.
    pub fn inverse(&self) -> Self {
        let n = self.n;
        let mut images = Vec::with_capacity(2 * n);
        for g in CliffordTableau::identity(n).images {
            // For Q = U† G U: bit x_j(Q) = [G anticommutes with U Z_j U†],
            // bit z_j(Q) = [G anticommutes with U X_j U†].
            let mut qx = 0u64;
            let mut qz = 0u64;
            for j in 0..n {
                if !g.commutes_with(self.z_image(j)) {
                    qx |= 1 << j;
                }
                if !g.commutes_with(self.x_image(j)) {
                    qz |= 1 << j;
                }
            }
            let q0 = PauliOperator::from_raw(n, qx, qz, 0);
            let forward = self.conjugate_unchecked(&q0);
            debug_assert_eq!(forward.unsigned(), g);
            images.push(q0.with_phase((4 - forward.phase()) % 4));
        }
        Self { n, images }
    }

    /// `U† P U`.
    pub fn conjugate_inverse(&self, p: &PauliOperator) -> Result<PauliOperator> {
        self.check_dims(p)?;
        Ok(self.inverse().conjugate_unchecked(p))
    }

    /// Tableau of `V U` where `self = U`, `next = V` (apply `self` first).
    pub fn then(&self, next: &CliffordTableau) -> Result<Self> {
        if next.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: next.n,
            });
        }
        Ok(Self {
            n: self.n,
            images: self.images.iter().map(|p| next.conjugate_unchecked(p)).collect(),
        })
    }

    /// Applies a two-qubit gate after the circuit: returns `(g on {x, y}) ∘ self`.
    pub fn apply_gate(&self, g: &TwoQubitClifford, qubits: (usize, usize)) -> Result<Self> {
        let mut out = self.clone();
        out.apply_gate_mut(g, qubits)?;
        Ok(out)
    }

    pub fn apply_gate_mut(&mut self, g: &TwoQubitClifford, (x, y): (usize, usize)) -> Result<()> {
        if x >= self.n {
            return Err(Error::QubitOutOfRange { qubit: x, n: self.n });
        }
        if y >= self.n {
            return Err(Error::QubitOutOfRange { qubit: y, n: self.n });
        }
        if x == y {
            return Err(Error::RepeatedQubit(x));
        }
        for p in &mut self.images {
            *p = g.act_on(p, x, y);
        }
        Ok(())
    }

    /// Generator images as sign-prefixed strings, X images first.
    pub fn to_strings(&self) -> Vec<String> {
        self.images.iter().map(|p| format!("{p}")).collect()
    }

    pub fn from_strings(lines: &[&str]) -> Result<Self> {
        if lines.len() % 2 != 0 {
            return Err(Error::Parse(format!(
                "odd number of generator images ({})",
                lines.len()
            )));
        }
        let parsed: Vec<PauliOperator> = lines.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let n = parsed.len() / 2;
        Self::from_images(&parsed[..n], &parsed[n..])
    }
}

impl fmt::Display for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "X{i} -> {}", self.images[i])?;
        }
        for i in 0..self.n {
            writeln!(f, "Z{i} -> {}", self.images[self.n + i])?;
        }
        Ok(())
    }
}

/// A two-qubit Clifford with a precomputed action on the 16 local Pauli
/// strings, so that embedding it in a large register costs O(1) per image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoQubitClifford {
    tableau: CliffordTableau,
    // index: x_a | x_b << 1 | z_a << 2 | z_b << 3  ->  (image bits, phase increment)
    lut: [(u8, u8); 16],
}

impl TwoQubitClifford {
    pub fn new(tableau: CliffordTableau) -> Result<Self> {
        if tableau.num_qubits() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: tableau.num_qubits(),
            });
        }
        tableau.check_symplectic()?;
        let mut lut = [(0u8, 0u8); 16];
        for (idx, entry) in lut.iter_mut().enumerate() {
            let idx = idx as u64;
            let local = PauliOperator::from_raw(2, idx & 0b11, idx >> 2, 0);
            let img = tableau.conjugate_unchecked(&local);
            *entry = ((img.x_mask() | img.z_mask() << 2) as u8, img.phase());
        }
        Ok(Self { tableau, lut })
    }

    pub fn identity() -> Self {
        Self::new(CliffordTableau::identity(2)).expect("identity is symplectic")
    }

    pub fn tableau(&self) -> &CliffordTableau {
        &self.tableau
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.tableau.inverse()).expect("inverse of a Clifford is Clifford")
    }

    /// Conjugates `p` by this gate acting on qubits `a` (local 0) and `b` (local 1).
    #[inline]
    pub fn act_on(&self, p: &PauliOperator, a: usize, b: usize) -> PauliOperator {
        let (x, z) = (p.x_mask(), p.z_mask());
        let idx = (x >> a & 1) | (x >> b & 1) << 1 | (z >> a & 1) << 2 | (z >> b & 1) << 3;
        let (bits, dphase) = self.lut[idx as usize];
        let bits = bits as u64;
        let clear = !((1u64 << a) | (1u64 << b));
        let nx = (x & clear) | (bits & 1) << a | (bits >> 1 & 1) << b;
        let nz = (z & clear) | (bits >> 2 & 1) << a | (bits >> 3 & 1) << b;
        PauliOperator::from_raw(p.num_qubits(), nx, nz, p.phase() + dphase)
    }
}
