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

use alloc::{boxed::Box, format, vec, vec::Vec};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::pauli_clifford::{
    single_qubit_cliffords, two_qubit_cliffords, CliffordTableau, Pauli1, PauliOperator,
};

/// Largest register the dense verifier will materialize.
pub const MAX_DENSE_QUBITS: usize = 5;

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn dense_guard(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::GuardExceeded {
            what: "dense qubit count",
            value: n as u64,
            limit: MAX_DENSE_QUBITS as u64,
        });
    }
    Ok(())
}

/// A square complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    entries: CMatrix,
}

impl DenseOperator {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidParameter {
                name: "entries",
                reason: format!(
                    "matrix is {}x{}, expected square",
                    entries.nrows(),
                    entries.ncols()
                ),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "entries",
                reason: "non-finite entry".into(),
            });
        }
        Ok(Self {
            dim: entries.nrows(),
            entries,
        })
    }

    pub(crate) fn from_matrix_unchecked(entries: CMatrix) -> Self {
        Self {
            dim: entries.nrows(),
            entries,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix_unchecked(CMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_matrix_unchecked(CMatrix::zeros(dim, dim))
    }

    /// Swap on `C^d ⊗ C^d`, with the first factor as the high digit.
    pub fn swap(d: usize) -> Self {
        let mut m = CMatrix::zeros(d * d, d * d);
        for a in 0..d {
            for b in 0..d {
                m[(b * d + a, a * d + b)] = ONE;
            }
        }
        Self::from_matrix_unchecked(m)
    }

    /// `|i⟩⟨i|`.
    pub fn basis_projector(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidParameter {
                name: "index",
                reason: format!("{index} is outside a space of dimension {dim}"),
            });
        }
        let mut m = CMatrix::zeros(dim, dim);
        m[(index, index)] = ONE;
        Ok(Self::from_matrix_unchecked(m))
    }

    /// `|v⟩⟨v|` (no normalization).
    pub fn pure_state(v: &DVector<Complex64>) -> Result<Self> {
        Self::new(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix_unchecked(self.entries.adjoint())
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(self.entries.kronecker(&other.entries))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Self::from_matrix_unchecked(&self.entries * &other.entries))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_matrix_unchecked(&self.entries * c)
    }

    /// Frobenius norm of the difference.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        (&self.entries - &other.entries).norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (&self.entries - self.entries.adjoint()).norm() <= tol
    }

    /// `A^exponent` for Hermitian `A`, through its eigendecomposition.
    ///
    /// Eigenvalues at or below `cutoff` are mapped to zero, so negative
    /// exponents give the pseudo-inverse power on the support.
    pub fn hermitian_power(&self, exponent: f64, cutoff: f64) -> Result<Self> {
        if !self.is_hermitian(1e-10 * (1.0 + self.entries.norm())) {
            return Err(Error::InvalidParameter {
                name: "operator",
                reason: "not Hermitian".into(),
            });
        }
        let eig = SymmetricEigen::new(self.entries.clone());
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda <= cutoff {
                continue;
            }
            let v = eig.eigenvectors.column(i);
            let w = Complex64::new(libm::pow(lambda, exponent), 0.0);
            out += (v * v.adjoint()) * w;
        }
        Self::new(out)
    }
}

/// Basis index mask for a qubit mask: qubit `j` is bit `n−1−j`, so qubit 0
/// is the leftmost tensor factor.
pub(crate) fn index_mask(mask: u64, n: usize) -> usize {
    (0..n)
        .filter(|j| mask >> j & 1 == 1)
        .fold(0usize, |acc, j| acc | 1 << (n - 1 - j))
}

fn i_pow(e: u32) -> Complex64 {
    match e % 4 {
        0 => ONE,
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `σ|v⟩` without forming the matrix.
pub fn apply_pauli(p: &PauliOperator, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = p.num_qubits();
    dense_guard(n)?;
    let dim = 1usize << n;
    if v.len() != dim {
        return Err(Error::InvalidParameter {
            name: "v",
            reason: format!("length {} does not match dimension {dim}", v.len()),
        });
    }
    let x = index_mask(p.x_mask(), n);
    let z = index_mask(p.z_mask(), n);
    let base = i_pow(p.phase() as u32 + (p.x_mask() & p.z_mask()).count_ones());
    let mut out = vec![ZERO; dim];
    for (b, &amp) in v.iter().enumerate() {
        let sign = if (z & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[b ^ x] = amp * base * sign;
    }
    Ok(out)
}

pub fn pauli_to_dense(p: &PauliOperator) -> Result<DenseOperator> {
    let n = p.num_qubits();
    dense_guard(n)?;
    let dim = 1usize << n;
    let x = index_mask(p.x_mask(), n);
    let z = index_mask(p.z_mask(), n);
    let base = i_pow(p.phase() as u32 + (p.x_mask() & p.z_mask()).count_ones());
    let mut m = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        let sign = if (z & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        m[(b ^ x, b)] = base * sign;
    }
    Ok(DenseOperator::from_matrix_unchecked(m))
}

/// Single-qubit Pauli matrix for index `0..4` = I, X, Y, Z.
pub fn pauli_matrix(mu: usize) -> CMatrix {
    let letter = [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z][mu & 3];
    let p = PauliOperator::from_paulis(&[letter]).expect("one qubit");
    pauli_to_dense(&p).expect("one qubit").into_matrix()
}

/// A unitary `U` with `U P U† = T(P)` for every Pauli `P`, unique up to a
/// global phase. The result is checked against all `2n` generators.
pub fn tableau_to_dense(t: &CliffordTableau) -> Result<DenseOperator> {
    let n = t.num_qubits();
    dense_guard(n)?;
    let dim = 1usize << n;

    // U|0…0⟩ spans the joint +1 eigenspace of the Z images.
    let mut proj = CMatrix::identity(dim, dim);
    for q in 0..n {
        let g = pauli_to_dense(t.z_image(q))?.into_matrix();
        proj = &proj * (CMatrix::identity(dim, dim) + g) * Complex64::new(0.5, 0.0);
    }
    let (best, norm) = (0..dim)
        .map(|c| (c, proj.column(c).norm()))
        .fold((0, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    if norm < 1e-6 {
        return Err(Error::NotSymplectic(
            "Z images have no common +1 eigenvector".into(),
        ));
    }
    let psi0: Vec<Complex64> = proj.column(best).iter().map(|z| z / norm).collect();

    let mut u = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut v = psi0.clone();
        for j in 0..n {
            if col >> (n - 1 - j) & 1 == 1 {
                v = apply_pauli(t.x_image(j), &v)?;
            }
        }
        for (r, z) in v.into_iter().enumerate() {
            u[(r, col)] = z;
        }
    }

    for q in 0..n {
        for letter in [Pauli1::X, Pauli1::Z] {
            let p = PauliOperator::single(n, q, letter)?;
            let lhs = &u * pauli_to_dense(&p)?.matrix();
            let rhs = pauli_to_dense(&t.conjugate(&p)?)?.into_matrix() * &u;
            if (lhs - rhs).norm() > 1e-9 {
                return Err(Error::NotSymplectic(format!(
                    "dense synthesis disagrees with the tableau on {letter:?}{q}"
                )));
            }
        }
    }
    Ok(DenseOperator::from_matrix_unchecked(u))
}

static DENSE_ONE: OnceBox<Vec<DenseOperator>> = OnceBox::new();
static DENSE_TWO: OnceBox<Vec<DenseOperator>> = OnceBox::new();

/// Dense unitaries for the 24 single-qubit Cliffords, in group order.
pub fn dense_single_qubit_cliffords() -> &'static [DenseOperator] {
    DENSE_ONE.get_or_init(|| {
        Box::new(
            single_qubit_cliffords()
                .iter()
                .map(|t| tableau_to_dense(t).expect("group element"))
                .collect(),
        )
    })
}

/// Dense unitaries for the 11520 two-qubit Cliffords, in group order.
pub fn dense_two_qubit_cliffords() -> &'static [DenseOperator] {
    DENSE_TWO.get_or_init(|| {
        Box::new(
            two_qubit_cliffords()
                .iter()
                .map(|g| tableau_to_dense(g.tableau()).expect("group element"))
                .collect(),
        )
    })
}

/// Checks `U†U = I` to `tol`.
pub fn is_unitary(u: &DenseOperator, tol: f64) -> bool {
    (u.matrix().adjoint() * u.matrix() - CMatrix::identity(u.dim(), u.dim())).norm() <= tol
}

/// Whether `a = e^{iθ} b` for some phase.
pub fn equal_up_to_phase(a: &DenseOperator, b: &DenseOperator, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let overlap = (a.matrix().adjoint() * b.matrix()).trace();
    if overlap.norm() < 1e-12 {
        return a.matrix().norm() <= tol && b.matrix().norm() <= tol;
    }
    let phase = overlap / overlap.norm();
    (a.matrix() * phase - b.matrix()).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pauli_matrices() {
        let y = pauli_matrix(2);
        assert_eq!(y[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], Complex64::new(0.0, 1.0));
        let z = pauli_matrix(3);
        assert_eq!(z[(1, 1)], c(-1.0));
        // qubit 0 is the leftmost factor
        let p = PauliOperator::from_paulis(&[Pauli1::X, Pauli1::Z]).unwrap();
        let expected = pauli_matrix(1).kronecker(&pauli_matrix(3));
        assert_eq!(pauli_to_dense(&p).unwrap().into_matrix(), expected);
    }

    #[test]
    fn apply_matches_matrix() {
        let p = PauliOperator::new(3, 0b101, 0b110, 1).unwrap();
        let v: Vec<Complex64> = (0..8).map(|i| Complex64::new(i as f64, 1.0 - i as f64)).collect();
        let m = pauli_to_dense(&p).unwrap().into_matrix();
        let direct = &m * DVector::from_vec(v.clone());
        let fast = apply_pauli(&p, &v).unwrap();
        for (a, b) in direct.iter().zip(fast.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn identity_and_cnot() {
        let u = tableau_to_dense(&CliffordTableau::identity(3)).unwrap();
        assert!(equal_up_to_phase(&u, &DenseOperator::identity(8), 1e-12));

        let cx = crate::pauli_clifford::CliffordTableau::from_strings(&["+XX", "+IX", "+ZI", "+ZZ"]).unwrap();
        let u = tableau_to_dense(&cx).unwrap();
        let mut perm = CMatrix::zeros(4, 4);
        for (r, col) in [(0, 0), (1, 1), (3, 2), (2, 3)] {
            perm[(r, col)] = ONE;
        }
        assert!(equal_up_to_phase(&u, &DenseOperator::new(perm).unwrap(), 1e-12));
    }

    #[test]
    fn random_three_qubit_tableaux() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut t = CliffordTableau::identity(3);
            for pair in [(0, 1), (1, 2), (2, 0), (0, 1)] {
                let g = crate::pauli_clifford::sample_two_qubit_clifford(&mut rng);
                t.apply_gate_mut(g, pair).unwrap();
            }
            let u = tableau_to_dense(&t).unwrap();
            assert!(is_unitary(&u, 1e-10));
        }
    }

    #[test]
    fn dense_groups_are_unitary_and_distinct_up_to_phase() {
        let one = dense_single_qubit_cliffords();
        assert_eq!(one.len(), 24);
        for (i, a) in one.iter().enumerate() {
            assert!(is_unitary(a, 1e-12));
            for b in &one[i + 1..] {
                assert!(!equal_up_to_phase(a, b, 1e-8));
            }
        }
        let two = dense_two_qubit_cliffords();
        assert_eq!(two.len(), 11520);
        assert!(two.iter().all(|u| is_unitary(u, 1e-10)));
    }

    #[test]
    fn swap_and_powers() {
        let s = DenseOperator::swap(2);
        assert_eq!(s.trace(), c(2.0));
        assert!(s.mul(&s).unwrap().distance(&DenseOperator::identity(4)) < 1e-15);

        let mut m = CMatrix::zeros(3, 3);
        m[(0, 0)] = c(16.0);
        m[(1, 1)] = c(1.0 / 16.0);
        let root = DenseOperator::new(m)
            .unwrap()
            .hermitian_power(-0.25, 1e-14)
            .unwrap();
        assert!((root.matrix()[(0, 0)] - c(0.5)).norm() < 1e-12);
        assert!((root.matrix()[(1, 1)] - c(2.0)).norm() < 1e-12);
        assert_eq!(root.matrix()[(2, 2)], ZERO);
    }

    #[test]
    fn guard() {
        assert!(tableau_to_dense(&CliffordTableau::identity(6)).is_err());
    }
}
