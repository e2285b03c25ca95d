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

//! Block layouts, the periodic brickwork schedule and circuit sampling.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli_clifford::{sample_two_qubit_clifford, CliffordTableau, MAX_PAULI_QUBITS};

/// `m` blocks of `b` qubits; the first `a` qubits of every block are logical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlockLayout {
    a: usize,
    b: usize,
    m: usize,
}

impl BlockLayout {
    pub fn new(a: usize, b: usize, m: usize) -> Result<Self> {
        if a == 0 || a >= b {
            return Err(Error::InvalidLayout(format!("need 0 < a < b, got a={a}, b={b}")));
        }
        if m == 0 {
            return Err(Error::InvalidLayout("block count m must be positive".into()));
        }
        let n = b
            .checked_mul(m)
            .ok_or_else(|| Error::InvalidLayout("n = b·m overflows".into()))?;
        if n % 2 != 0 {
            return Err(Error::InvalidLayout(format!(
                "brickwork on a ring needs an even qubit count, got n={n}"
            )));
        }
        Ok(Self { a, b, m })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.b * self.m
    }

    pub fn k(&self) -> usize {
        self.a * self.m
    }

    /// Encoding rate `a/b`.
    pub fn rate(&self) -> f64 {
        self.a as f64 / self.b as f64
    }

    pub fn is_logical(&self, qubit: usize) -> bool {
        qubit % self.b < self.a
    }

    pub fn logical_positions(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_logical(i)).collect()
    }

    pub fn ancilla_positions(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.is_logical(i)).collect()
    }

    /// Bit mask of the logical positions; requires `n ≤ 64`.
    pub fn logical_mask(&self) -> Result<u64> {
        self.check_mask_width()?;
        Ok(self.logical_positions().into_iter().fold(0u64, |m, i| m | 1 << i))
    }

    pub fn ancilla_mask(&self) -> Result<u64> {
        self.check_mask_width()?;
        let all = if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        };
        Ok(all & !self.logical_mask()?)
    }

    fn check_mask_width(&self) -> Result<()> {
        if self.n() > MAX_PAULI_QUBITS {
            return Err(Error::GuardExceeded {
                what: "qubit count for bit masks",
                value: self.n() as u64,
                limit: MAX_PAULI_QUBITS as u64,
            });
        }
        Ok(())
    }
}

/// `{ i : i mod b < a }`.
pub fn logical_positions(layout: &BlockLayout) -> Vec<usize> {
    layout.logical_positions()
}

/// A layout together with a depth `D` (number of brickwork layers).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BrickworkSpec {
    pub layout: BlockLayout,
    pub depth: usize,
}

/// One scheduled gate: its layer `t` (0-based) and ordered qubit pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GateSlot {
    pub layer: usize,
    pub pair: (usize, usize),
}

impl BrickworkSpec {
    pub fn new(layout: BlockLayout, depth: usize) -> Self {
        Self { layout, depth }
    }

    pub fn n(&self) -> usize {
        self.layout.n()
    }

    pub fn k(&self) -> usize {
        self.layout.k()
    }

    /// Total gate count `s = n·D/2`.
    pub fn gate_count(&self) -> usize {
        self.n() / 2 * self.depth
    }

    pub fn schedule(&self) -> Vec<GateSlot> {
        build_schedule_for(self.n(), self.depth)
    }
}

/// Brickwork schedule of a spec, gates in application order.
pub fn build_schedule(spec: &BrickworkSpec) -> Vec<GateSlot> {
    spec.schedule()
}

/// Brickwork schedule for `n` qubits and `depth` layers.
///
/// Layer 0 pairs `(0,1),(2,3),…`; layer 1 pairs `(1,2),…,(n−1,0)`; layers
/// alternate from there. The pair is `(x, x+1 mod n)`.
pub fn build_schedule_for(n: usize, depth: usize) -> Vec<GateSlot> {
    assert!(n % 2 == 0 && n >= 2, "brickwork needs an even qubit count");
    let mut out = Vec::with_capacity(n / 2 * depth);
    for layer in 0..depth {
        let offset = layer % 2;
        for j in 0..n / 2 {
            let x = 2 * j + offset;
            out.push(GateSlot {
                layer,
                pair: (x, (x + 1) % n),
            });
        }
    }
    out
}

/// Applies `spec.gate_count()` independent uniform two-qubit Cliffords along
/// the schedule, starting from the identity.
pub fn sample_circuit<R: Rng + ?Sized>(spec: &BrickworkSpec, rng: &mut R) -> Result<CliffordTableau> {
    if spec.n() > MAX_PAULI_QUBITS {
        return Err(Error::GuardExceeded {
            what: "tableau qubit count",
            value: spec.n() as u64,
            limit: MAX_PAULI_QUBITS as u64,
        });
    }
    let mut t = CliffordTableau::identity(spec.n());
    for slot in spec.schedule() {
        let g = sample_two_qubit_clifford(rng);
        t.apply_gate_mut(g, slot.pair)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli_clifford::{Pauli1, PauliOperator};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pairs(n: usize, d: usize) -> Vec<(usize, usize)> {
        build_schedule_for(n, d).into_iter().map(|s| s.pair).collect()
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(pairs(4, 1), [(0, 1), (2, 3)]);
        assert_eq!(pairs(4, 2), [(0, 1), (2, 3), (1, 2), (3, 0)]);
        assert!(pairs(4, 0).is_empty());
        assert_eq!(pairs(2, 2), [(0, 1), (1, 0)]);
    }

    #[test]
    fn every_qubit_once_per_layer() {
        for n in [2, 4, 6, 10] {
            let sched = build_schedule_for(n, 5);
            assert_eq!(sched.len(), n * 5 / 2);
            for layer in 0..5 {
                let mut seen = alloc::vec![0; n];
                for s in sched.iter().filter(|s| s.layer == layer) {
                    seen[s.pair.0] += 1;
                    seen[s.pair.1] += 1;
                }
                assert!(seen.iter().all(|&c| c == 1));
            }
        }
    }

    #[test]
    fn logical_position_examples() {
        let l = |a, b, m| BlockLayout::new(a, b, m).unwrap().logical_positions();
        assert_eq!(l(1, 2, 2), [0, 2]);
        assert_eq!(l(2, 5, 2), [0, 1, 5, 6]);
        assert_eq!(l(5, 6, 1), [0, 1, 2, 3, 4]);
        assert!(BlockLayout::new(2, 2, 2).is_err());
        assert!(BlockLayout::new(0, 2, 2).is_err());
        assert!(BlockLayout::new(1, 3, 1).is_err());
        assert_eq!(BlockLayout::new(1, 2, 2).unwrap().logical_mask().unwrap(), 0b0101);
    }

    #[test]
    fn depth_zero_is_identity() {
        let spec = BrickworkSpec::new(BlockLayout::new(1, 2, 3).unwrap(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            sample_circuit(&spec, &mut rng).unwrap(),
            CliffordTableau::identity(6)
        );
    }

    #[test]
    fn same_seed_same_circuit() {
        let spec = BrickworkSpec::new(BlockLayout::new(1, 4, 2).unwrap(), 3);
        let a = sample_circuit(&spec, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = sample_circuit(&spec, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_symplectic());
    }

    #[test]
    fn light_cone_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for depth in 0..5 {
            let spec = BrickworkSpec::new(BlockLayout::new(1, 4, 4).unwrap(), depth);
            for _ in 0..20 {
                let u = sample_circuit(&spec, &mut rng).unwrap();
                for q in 0..16 {
                    for p in [Pauli1::X, Pauli1::Y, Pauli1::Z] {
                        let img = u.conjugate(&PauliOperator::single(16, q, p).unwrap()).unwrap();
                        assert!(img.weight() <= (2 * depth).max(1));
                    }
                }
            }
        }
    }
}
