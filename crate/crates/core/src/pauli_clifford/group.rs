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

//! Exhaustive enumeration of the one- and two-qubit Clifford groups (modulo
//! global phase) and uniform sampling by index.

use alloc::boxed::Box;
use alloc::vec::Vec;

use once_cell::race::OnceBox;
use rand::Rng;

use super::pauli::PauliOperator;
use super::tableau::{CliffordTableau, TwoQubitClifford};

/// |C_2 / U(1)| = |Sp(4, F_2)| · 2^4.
pub const TWO_QUBIT_CLIFFORD_ORDER: usize = 11520;
/// |C_1 / U(1)| = |Sp(2, F_2)| · 2^2.
pub const SINGLE_QUBIT_CLIFFORD_ORDER: usize = 24;

/// Canonical integer key of a small tableau (n ≤ 3): per image the x bits,
/// the z bits and the sign bit, concatenated in generator order.
pub fn canonical_key(t: &CliffordTableau) -> u64 {
    let n = t.num_qubits();
    debug_assert!(n <= 3);
    let width = 2 * n + 1;
    t.images().iter().enumerate().fold(0u64, |key, (i, p)| {
        let sign = (p.phase() >> 1) as u64;
        let code = p.x_mask() | p.z_mask() << n | sign << (2 * n);
        key | code << (i * width)
    })
}

/// Every Clifford tableau on `n` qubits, sorted by [`canonical_key`].
///
/// Builds symplectic bases `(A_0, B_0, …, A_{n-1}, B_{n-1})` by backtracking and
/// then attaches all `2^{2n}` sign choices. Only sensible for `n ≤ 2`.
pub fn enumerate_clifford_tableaux(n: usize) -> Vec<CliffordTableau> {
    assert!(
        (1..=3).contains(&n),
        "exhaustive enumeration only for tiny registers"
    );
    let candidates: Vec<PauliOperator> = (1u64..(1 << (2 * n)))
        .map(|code| PauliOperator::from_raw(n, code & ((1 << n) - 1), code >> n, 0))
        .collect();

    let mut bases: Vec<Vec<(PauliOperator, PauliOperator)>> = Vec::new();
    let mut stack: Vec<(PauliOperator, PauliOperator)> = Vec::new();
    extend_basis(n, &candidates, &mut stack, &mut bases);

    let mut out = Vec::with_capacity(bases.len() << (2 * n));
    for basis in &bases {
        for signs in 0u32..(1 << (2 * n)) {
            let xs: Vec<PauliOperator> = (0..n)
                .map(|i| basis[i].0.with_phase(((signs >> i & 1) * 2) as u8))
                .collect();
            let zs: Vec<PauliOperator> = (0..n)
                .map(|i| basis[i].1.with_phase(((signs >> (n + i) & 1) * 2) as u8))
                .collect();
            out.push(CliffordTableau::from_images(&xs, &zs).expect("symplectic by construction"));
        }
    }
    out.sort_by_key(canonical_key);
    out
}

fn extend_basis(
    n: usize,
    candidates: &[PauliOperator],
    stack: &mut Vec<(PauliOperator, PauliOperator)>,
    out: &mut Vec<Vec<(PauliOperator, PauliOperator)>>,
) {
    if stack.len() == n {
        out.push(stack.clone());
        return;
    }
    let prefix = stack.clone();
    let commutes_with_prefix = |p: &PauliOperator| {
        prefix
            .iter()
            .all(|(a, b)| p.commutes_with(a) && p.commutes_with(b))
    };
    for a in candidates.iter().filter(|p| commutes_with_prefix(p)) {
        for b in candidates
            .iter()
            .filter(|p| !p.commutes_with(a) && commutes_with_prefix(p))
        {
            stack.push((*a, *b));
            extend_basis(n, candidates, stack, out);
            stack.pop();
        }
    }
}

static TWO_QUBIT_GROUP: OnceBox<Vec<TwoQubitClifford>> = OnceBox::new();
static SINGLE_QUBIT_GROUP: OnceBox<Vec<CliffordTableau>> = OnceBox::new();

/// The full two-qubit Clifford group, built on first use and sorted by
/// canonical key.
pub fn two_qubit_cliffords() -> &'static [TwoQubitClifford] {
    TWO_QUBIT_GROUP.get_or_init(|| {
        Box::new(
            enumerate_clifford_tableaux(2)
                .into_iter()
                .map(|t| TwoQubitClifford::new(t).expect("enumerated tableaux are symplectic"))
                .collect(),
        )
    })
}

pub fn single_qubit_cliffords() -> &'static [CliffordTableau] {
    SINGLE_QUBIT_GROUP.get_or_init(|| Box::new(enumerate_clifford_tableaux(1)))
}

/// Uniform two-qubit Clifford (modulo global phase).
pub fn sample_two_qubit_clifford<R: Rng + ?Sized>(rng: &mut R) -> &'static TwoQubitClifford {
    let group = two_qubit_cliffords();
    &group[rng.random_range(0..group.len())]
}

pub fn sample_single_qubit_clifford<R: Rng + ?Sized>(rng: &mut R) -> &'static CliffordTableau {
    let group = single_qubit_cliffords();
    &group[rng.random_range(0..group.len())]
}

/// Position of `g` in [`two_qubit_cliffords`].
pub fn two_qubit_clifford_index(g: &TwoQubitClifford) -> Option<usize> {
    let key = canonical_key(g.tableau());
    two_qubit_cliffords()
        .binary_search_by_key(&key, |e| canonical_key(e.tableau()))
        .ok()
}
