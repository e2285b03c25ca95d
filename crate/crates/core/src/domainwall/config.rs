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

//! Domain-wall configurations on the ring.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Label of a single site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Site {
    I,
    S,
}

/// Set of occupied edges; edge `e` sits between qubits `e` and `e+1 mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DWConfig {
    n: usize,
    edges: u64,
}

pub(crate) fn ring_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl DWConfig {
    pub fn new(n: usize, edges: u64) -> Result<Self> {
        if n == 0 || n > 64 || edges & !ring_mask(n) != 0 {
            return Err(Error::InvalidParameter {
                name: "edges",
                reason: format!("edge mask {edges:#x} does not fit a ring of {n} sites"),
            });
        }
        Ok(Self { n, edges })
    }

    pub fn from_edges(n: usize, edges: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in edges {
            if e >= n {
                return Err(Error::QubitOutOfRange { qubit: e, n });
            }
            mask |= 1 << e;
        }
        Self::new(n, mask)
    }

    pub fn num_sites(&self) -> usize {
        self.n
    }

    pub fn edge_mask(&self) -> u64 {
        self.edges
    }

    pub fn edges(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.has(e)).collect()
    }

    pub fn has(&self, edge: usize) -> bool {
        self.edges >> edge & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.edges.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.edges == 0
    }
}

/// Walls of a configuration (bit set ⇔ `S`).
pub fn dw_of_config(mask: u64, n: usize) -> DWConfig {
    assert!((1..=64).contains(&n), "ring size must be in 1..=64");
    let mask = mask & ring_mask(n);
    let rotated = mask >> 1 | (mask & 1) << (n - 1);
    DWConfig {
        n,
        edges: mask ^ rotated,
    }
}

/// The configuration with site 0 equal to `anchor` and the given walls.
pub fn config_of_dw(g: &DWConfig, anchor: Site) -> Result<u64> {
    if g.len() % 2 != 0 {
        return Err(Error::InvalidParameter {
            name: "edges",
            reason: format!("a ring carries an even number of walls, got {}", g.len()),
        });
    }
    let mut bit = matches!(anchor, Site::S);
    let mut mask = 0u64;
    for q in 0..g.n {
        if bit {
            mask |= 1 << q;
        }
        if g.has(q) {
            bit = !bit;
        }
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(dw_of_config(0b1111, 4).is_empty());
        // (S, I, S, I) has S on qubits 0 and 2.
        assert_eq!(dw_of_config(0b0101, 4).edges(), [0, 1, 2, 3]);
        let g = DWConfig::from_edges(4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(config_of_dw(&g, Site::S).unwrap(), 0b0101);
        assert_eq!(
            config_of_dw(&DWConfig::new(4, 0).unwrap(), Site::S).unwrap(),
            0b1111
        );
        assert!(config_of_dw(&DWConfig::from_edges(4, &[1]).unwrap(), Site::I).is_err());
    }

    #[test]
    fn round_trip_and_parity() {
        for n in [2, 4, 6, 8] {
            for mask in 0..1u64 << n {
                let g = dw_of_config(mask, n);
                assert_eq!(g.len() % 2, 0);
                let s = config_of_dw(&g, Site::S).unwrap();
                let i = config_of_dw(&g, Site::I).unwrap();
                assert_eq!(s ^ i, ring_mask(n));
                assert!(mask == s || mask == i);
                assert_eq!(dw_of_config(s, n), g);
            }
        }
    }
}
