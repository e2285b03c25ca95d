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

//! Brute-force sum over configuration trajectories.
//!
//! Each gate either keeps a configuration (equal labels on its pair) or
//! branches into the two equal-label completions with weight 2/5 each. The
//! walk records, per final configuration, how many branchings led there; every
//! weighting is then a finite sum over that histogram. No code is shared with
//! the transfer-matrix evaluator.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::brickwork::{BlockLayout, BrickworkSpec};
use crate::error::{Error, Result};
use crate::statmech::{FinalWeighting, PartitionResult};

use super::config::dw_of_config;

/// Size limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub max_qubits: usize,
    pub max_depth: usize,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        Self {
            max_qubits: 8,
            max_depth: 4,
        }
    }
}

impl EnumerationGuard {
    pub fn check(&self, spec: &BrickworkSpec) -> Result<()> {
        if spec.n() > self.max_qubits {
            return Err(Error::GuardExceeded {
                what: "qubit count for trajectory enumeration",
                value: spec.n() as u64,
                limit: self.max_qubits as u64,
            });
        }
        if spec.depth > self.max_depth {
            return Err(Error::GuardExceeded {
                what: "depth for trajectory enumeration",
                value: spec.depth as u64,
                limit: self.max_depth as u64,
            });
        }
        Ok(())
    }
}

/// Initial configurations: every logical site in `S`, ancillas free.
pub fn initial_configs(layout: &BlockLayout) -> Result<Vec<u64>> {
    let logical = layout.logical_mask()?;
    let ancilla = layout.ancilla_mask()?;
    let mut out = Vec::with_capacity(1 << ancilla.count_ones());
    // Iterate over all subsets of the ancilla mask.
    let mut sub = 0u64;
    loop {
        out.push(logical | sub);
        if sub == ancilla {
            break;
        }
        sub = (sub.wrapping_sub(ancilla)) & ancilla;
    }
    out.sort_unstable();
    Ok(out)
}

/// `counts[j][mask]`: number of trajectories with `j` branchings ending in `mask`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryHistogram {
    n: usize,
    k: usize,
    depth: usize,
    counts: Vec<Vec<u64>>,
}

impl TrajectoryHistogram {
    fn empty(spec: &BrickworkSpec) -> Self {
        Self {
            n: spec.n(),
            k: spec.k(),
            depth: spec.depth,
            counts: vec![vec![0; 1 << spec.n()]; spec.gate_count() + 1],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn trajectory_count(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Adds another histogram of the same spec.
    pub fn merge(&mut self, other: &TrajectoryHistogram) {
        assert_eq!(self.counts.len(), other.counts.len());
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }

    fn prefactor(&self) -> f64 {
        libm::exp2(self.n as f64) / libm::pow(3.0, (self.n - self.k) as f64)
    }

    fn exact_prefactor(&self) -> BigRational {
        BigRational::new(
            BigInt::from(1u8) << self.n,
            BigInt::from(3u8).pow((self.n - self.k) as u32),
        )
    }

    /// Contribution of trajectories whose final configuration satisfies `keep`.
    pub fn evaluate_where(&self, weighting: &FinalWeighting, keep: impl Fn(u64) -> bool) -> f64 {
        let mut total = 0.0;
        for (j, row) in self.counts.iter().enumerate() {
            let branch = libm::pow(0.4, j as f64);
            for (mask, &c) in row.iter().enumerate() {
                if c != 0 && keep(mask as u64) {
                    total += c as f64 * branch * weighting.weight(mask.count_ones() as usize);
                }
            }
        }
        self.prefactor() * total
    }

    pub fn evaluate_exact_where(
        &self,
        weighting: &FinalWeighting,
        keep: impl Fn(u64) -> bool,
    ) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (j, row) in self.counts.iter().enumerate() {
            let branch = BigRational::new(BigInt::from(2u8).pow(j as u32), BigInt::from(5u8).pow(j as u32));
            for (mask, &c) in row.iter().enumerate() {
                if c != 0 && keep(mask as u64) {
                    let w = weighting.exact_weight(mask.count_ones() as usize)?;
                    total += &branch * w * BigRational::from_integer(BigInt::from(c));
                }
            }
        }
        Some(self.exact_prefactor() * total)
    }

    pub fn evaluate(&self, weighting: &FinalWeighting) -> f64 {
        self.evaluate_where(weighting, |_| true)
    }

    pub fn evaluate_exact(&self, weighting: &FinalWeighting) -> Option<BigRational> {
        self.evaluate_exact_where(weighting, |_| true)
    }

    pub fn to_result(&self, weighting: &FinalWeighting) -> PartitionResult {
        let exact = self.evaluate_exact(weighting);
        PartitionResult {
            z: self.evaluate(weighting),
            exact,
            n: self.n,
            k: self.k,
            depth: self.depth,
            gates: self.counts.len() - 1,
            weighting: *weighting,
        }
    }
}

fn walk(pairs: &[(usize, usize)], mask: u64, branches: usize, counts: &mut [Vec<u64>]) {
    let Some((&(x, y), rest)) = pairs.split_first() else {
        counts[branches][mask as usize] += 1;
        return;
    };
    let (bx, by) = (mask >> x & 1, mask >> y & 1);
    if bx == by {
        walk(rest, mask, branches, counts);
    } else {
        let both = 1u64 << x | 1u64 << y;
        walk(rest, mask & !both, branches + 1, counts);
        walk(rest, mask | both, branches + 1, counts);
    }
}

/// Histogram of the trajectories starting from the single configuration `start`.
pub fn histogram_from(
    spec: &BrickworkSpec,
    start: u64,
    guard: &EnumerationGuard,
) -> Result<TrajectoryHistogram> {
    guard.check(spec)?;
    let pairs: Vec<(usize, usize)> = spec.schedule().iter().map(|s| s.pair).collect();
    let mut h = TrajectoryHistogram::empty(spec);
    walk(&pairs, start, 0, &mut h.counts);
    Ok(h)
}

/// Histogram over all admissible initial configurations.
pub fn enumerate_histogram(spec: &BrickworkSpec, guard: &EnumerationGuard) -> Result<TrajectoryHistogram> {
    guard.check(spec)?;
    let pairs: Vec<(usize, usize)> = spec.schedule().iter().map(|s| s.pair).collect();
    let mut h = TrajectoryHistogram::empty(spec);
    for start in initial_configs(&spec.layout)? {
        walk(&pairs, start, 0, &mut h.counts);
    }
    Ok(h)
}

/// Partition function by direct summation over trajectories; `exact` is set
/// whenever the weighting has an exact form.
pub fn enumerate_trajectories(spec: &BrickworkSpec, weighting: &FinalWeighting) -> Result<PartitionResult> {
    enumerate_trajectories_with(spec, weighting, &EnumerationGuard::default())
}

pub fn enumerate_trajectories_with(
    spec: &BrickworkSpec,
    weighting: &FinalWeighting,
    guard: &EnumerationGuard,
) -> Result<PartitionResult> {
    weighting.validate(spec.n())?;
    Ok(enumerate_histogram(spec, guard)?.to_result(weighting))
}

/// One configuration trajectory: `configs[t]` is the configuration after `t` gates.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConfigTrajectory {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    pub configs: Vec<u64>,
}

/// Calls `visit` on every trajectory of `spec`, in depth-first order
/// (initial configurations ascending, the all-`I` branch first).
pub fn visit_trajectories(
    spec: &BrickworkSpec,
    guard: &EnumerationGuard,
    mut visit: impl FnMut(&ConfigTrajectory),
) -> Result<()> {
    guard.check(spec)?;
    let pairs: Vec<(usize, usize)> = spec.schedule().iter().map(|s| s.pair).collect();
    let mut traj = ConfigTrajectory {
        n: spec.n(),
        pairs: pairs.clone(),
        configs: Vec::with_capacity(pairs.len() + 1),
    };
    fn go(t: usize, traj: &mut ConfigTrajectory, visit: &mut dyn FnMut(&ConfigTrajectory)) {
        let mask = *traj.configs.last().expect("nonempty");
        if t == traj.pairs.len() {
            visit(traj);
            return;
        }
        let (x, y) = traj.pairs[t];
        let nexts: &[u64] = if mask >> x & 1 == mask >> y & 1 {
            &[mask]
        } else {
            let both = 1u64 << x | 1u64 << y;
            &[mask & !both, mask | both]
        };
        for &next in nexts {
            traj.configs.push(next);
            go(t + 1, traj, visit);
            traj.configs.pop();
        }
    }
    for start in initial_configs(&spec.layout)? {
        traj.configs.clear();
        traj.configs.push(start);
        go(0, &mut traj, &mut visit);
    }
    Ok(())
}

/// Number of surviving wall pairs of a final configuration.
pub fn surviving_pairs(mask: u64, n: usize) -> usize {
    dw_of_config(mask, n).len() / 2
}

/// Partition function split by the number `k_0` of surviving wall pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivorBreakdown {
    /// `buckets[k0]` for `k0 = 0..=n/2`.
    pub buckets: Vec<f64>,
    pub exact_buckets: Option<Vec<BigRational>>,
    pub total: f64,
    pub exact_total: Option<BigRational>,
}

impl SurvivorBreakdown {
    /// Largest `k_0` with a nonzero bucket.
    pub fn max_k0(&self) -> usize {
        self.buckets.iter().rposition(|b| *b != 0.0).unwrap_or(0)
    }
}

pub fn survivor_breakdown(spec: &BrickworkSpec, weighting: &FinalWeighting) -> Result<SurvivorBreakdown> {
    survivor_breakdown_with(spec, weighting, &EnumerationGuard::default())
}

pub fn survivor_breakdown_with(
    spec: &BrickworkSpec,
    weighting: &FinalWeighting,
    guard: &EnumerationGuard,
) -> Result<SurvivorBreakdown> {
    weighting.validate(spec.n())?;
    let h = enumerate_histogram(spec, guard)?;
    Ok(breakdown_of(&h, weighting))
}

pub fn breakdown_of(h: &TrajectoryHistogram, weighting: &FinalWeighting) -> SurvivorBreakdown {
    let n = h.num_qubits();
    let buckets: Vec<f64> = (0..=n / 2)
        .map(|k0| h.evaluate_where(weighting, |m| surviving_pairs(m, n) == k0))
        .collect();
    let exact_buckets: Option<Vec<BigRational>> = (0..=n / 2)
        .map(|k0| h.evaluate_exact_where(weighting, |m| surviving_pairs(m, n) == k0))
        .collect();
    let exact_total = exact_buckets
        .as_ref()
        .map(|b| b.iter().fold(BigRational::zero(), |acc, x| acc + x));
    SurvivorBreakdown {
        total: buckets.iter().sum(),
        buckets,
        exact_buckets,
        exact_total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: usize, b: usize, m: usize, d: usize) -> BrickworkSpec {
        BrickworkSpec::new(BlockLayout::new(a, b, m).unwrap(), d)
    }

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn initial_configs_examples() {
        assert_eq!(
            initial_configs(&BlockLayout::new(1, 2, 2).unwrap()).unwrap(),
            [5, 7, 13, 15]
        );
        assert_eq!(
            initial_configs(&BlockLayout::new(2, 5, 2).unwrap())
                .unwrap()
                .len(),
            64
        );
    }

    #[test]
    fn anchor_value() {
        let r = enumerate_trajectories(&spec(1, 2, 2, 1), &FinalWeighting::Aqec { lambda: 1.0 }).unwrap();
        assert_eq!(r.exact.unwrap(), q(144, 25));
        assert!((r.z - 5.76).abs() < 1e-13);
    }

    #[test]
    fn depth_zero_is_the_initial_sum() {
        let r = enumerate_trajectories(&spec(1, 2, 2, 0), &FinalWeighting::Aqec { lambda: 1.0 }).unwrap();
        assert_eq!(r.exact.unwrap(), q(64, 9));
        let r = enumerate_trajectories(&spec(1, 2, 2, 0), &FinalWeighting::Qec { d: 1 }).unwrap();
        assert_eq!(r.exact.unwrap(), q(8, 1));
    }

    #[test]
    fn visitor_agrees_with_histogram() {
        let s = spec(1, 3, 2, 2);
        let h = enumerate_histogram(&s, &EnumerationGuard::default()).unwrap();
        let mut count = 0u64;
        visit_trajectories(&s, &EnumerationGuard::default(), |t| {
            assert_eq!(t.configs.len(), s.gate_count() + 1);
            count += 1;
        })
        .unwrap();
        assert_eq!(count, h.trajectory_count());
    }

    #[test]
    fn guard_rejects_large_instances() {
        let w = FinalWeighting::Aqec { lambda: 1.0 };
        assert!(enumerate_trajectories(&spec(1, 2, 5, 1), &w).is_err());
        assert!(enumerate_trajectories(&spec(1, 2, 2, 5), &w).is_err());
    }

    #[test]
    fn breakdown_sums_to_total() {
        let s = spec(1, 2, 2, 1);
        let w = FinalWeighting::Aqec { lambda: 1.0 };
        let b = survivor_breakdown(&s, &w).unwrap();
        assert_eq!(b.exact_total.clone().unwrap(), q(144, 25));
        assert!(b.buckets[0] <= 80.0 / 17.0);
        assert!(b.max_k0() <= 1);
    }
}
