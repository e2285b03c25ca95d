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

//! Wall-by-wall view of a configuration trajectory.
//!
//! Walls present at time 0 receive identifiers in increasing edge order. At a
//! gate on `(x, x+1)` the wall on edge `x` (if any) is the mover: it hops to
//! edge `x−1` or `x+1`, or annihilates with the wall already sitting there.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::config::{dw_of_config, DWConfig};
use super::enumerate::ConfigTrajectory;

pub type WallId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DWEvent {
    None,
    Hop {
        wall: WallId,
        from: usize,
        to: usize,
    },
    Annihilate {
        mover: WallId,
        partner: WallId,
        from: usize,
        at: usize,
    },
}

impl DWEvent {
    pub fn mover(&self) -> Option<WallId> {
        match *self {
            DWEvent::None => None,
            DWEvent::Hop { wall, .. } => Some(wall),
            DWEvent::Annihilate { mover, .. } => Some(mover),
        }
    }
}

/// Tracked trajectory: `configs[t]` are the walls after `t` gates,
/// `events[t]` what gate `t+1` did.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DWTrajectory {
    pub n: usize,
    pub configs: Vec<DWConfig>,
    pub events: Vec<DWEvent>,
    /// Number of 2/5 factors in the weight.
    pub weight_exponent: usize,
    /// Number of walls present at time 0.
    pub wall_count: usize,
    /// Gate index at which each wall died, `None` for survivors.
    pub death: Vec<Option<usize>>,
    /// Number of moves made by each wall.
    pub moves: Vec<usize>,
}

impl DWTrajectory {
    /// `W = (2/5)^{weight_exponent}`.
    pub fn weight(&self) -> f64 {
        libm::pow(0.4, self.weight_exponent as f64)
    }

    pub fn survivors(&self) -> Vec<WallId> {
        (0..self.wall_count)
            .filter(|&w| self.death[w].is_none())
            .collect()
    }

    pub fn annihilated(&self) -> Vec<WallId> {
        (0..self.wall_count)
            .filter(|&w| self.death[w].is_some())
            .collect()
    }

    /// Walls still present after `t` gates.
    pub fn alive_at(&self, t: usize) -> usize {
        self.death.iter().filter(|d| d.map_or(true, |g| g >= t)).count()
    }
}

/// Replays a configuration trajectory wall by wall.
pub fn track_domain_walls(traj: &ConfigTrajectory) -> Result<DWTrajectory> {
    let n = traj.n;
    if traj.configs.len() != traj.pairs.len() + 1 {
        return Err(Error::InvalidParameter {
            name: "trajectory",
            reason: format!(
                "{} gates need {} configurations, got {}",
                traj.pairs.len(),
                traj.pairs.len() + 1,
                traj.configs.len()
            ),
        });
    }
    let first = dw_of_config(traj.configs[0], n);
    let mut occupant: Vec<Option<WallId>> = vec![None; n];
    for (id, e) in first.edges().into_iter().enumerate() {
        occupant[e] = Some(id);
    }
    let wall_count = first.len();
    let mut death = vec![None; wall_count];
    let mut moves = vec![0; wall_count];
    let mut configs = Vec::with_capacity(traj.configs.len());
    let mut events = Vec::with_capacity(traj.pairs.len());
    configs.push(first);
    let mut exponent = 0;

    for (t, &(x, y)) in traj.pairs.iter().enumerate() {
        if y != (x + 1) % n {
            return Err(Error::InvalidParameter {
                name: "trajectory",
                reason: format!("gate {t} on ({x}, {y}) is not a ring neighbour pair"),
            });
        }
        let (before, after) = (traj.configs[t], traj.configs[t + 1]);
        let both = 1u64 << x | 1u64 << y;
        let equal = (before >> x & 1) == (before >> y & 1);
        let event = if equal {
            if after != before {
                return Err(violation(t, "a gate on equal labels must keep the configuration"));
            }
            DWEvent::None
        } else {
            if after & !both != before & !both || (after >> x & 1) != (after >> y & 1) {
                return Err(violation(
                    t,
                    "a branching gate must set both labels equal and keep the rest",
                ));
            }
            exponent += 1;
            let mover = occupant[x].ok_or_else(|| violation(t, "lost track of the acted wall"))?;
            moves[mover] += 1;
            occupant[x] = None;
            // Keeping x's old label flips site y, toggling edge x+1; otherwise edge x−1.
            let to = if (after >> x & 1) == (before >> x & 1) {
                (x + 1) % n
            } else {
                (x + n - 1) % n
            };
            match occupant[to].take() {
                Some(partner) => {
                    death[mover] = Some(t);
                    death[partner] = Some(t);
                    DWEvent::Annihilate {
                        mover,
                        partner,
                        from: x,
                        at: to,
                    }
                }
                None => {
                    occupant[to] = Some(mover);
                    DWEvent::Hop {
                        wall: mover,
                        from: x,
                        to,
                    }
                }
            }
        };
        let walls = dw_of_config(after, n);
        let tracked = occupant
            .iter()
            .enumerate()
            .filter(|(_, o)| o.is_some())
            .fold(0u64, |m, (e, _)| m | 1 << e);
        if tracked != walls.edge_mask() {
            return Err(violation(t, "wall bookkeeping diverged from the configuration"));
        }
        configs.push(walls);
        events.push(event);
    }

    Ok(DWTrajectory {
        n,
        configs,
        events,
        weight_exponent: exponent,
        wall_count,
        death,
        moves,
    })
}

fn violation(t: usize, what: &str) -> Error {
    Error::InvalidParameter {
        name: "trajectory",
        reason: format!("gate {t}: {what}"),
    }
}

/// Split of a tracked trajectory into annihilating walls `G_0` and survivors
/// `G_U`, with the weight exponent carried by each side.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SurvivorSplit {
    pub annihilating: Vec<WallId>,
    pub surviving: Vec<WallId>,
    pub annihilating_exponent: usize,
    pub surviving_exponent: usize,
}

pub fn decompose_survivors(dwt: &DWTrajectory) -> SurvivorSplit {
    let annihilating = dwt.annihilated();
    let surviving = dwt.survivors();
    let exponent = |ids: &[WallId]| ids.iter().map(|&w| dwt.moves[w]).sum();
    SurvivorSplit {
        annihilating_exponent: exponent(&annihilating),
        surviving_exponent: exponent(&surviving),
        annihilating,
        surviving,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brickwork::{BlockLayout, BrickworkSpec};
    use crate::domainwall::{visit_trajectories, EnumerationGuard};

    fn traj(n: usize, pairs: &[(usize, usize)], configs: &[u64]) -> ConfigTrajectory {
        ConfigTrajectory {
            n,
            pairs: pairs.to_vec(),
            configs: configs.to_vec(),
        }
    }

    #[test]
    fn non_branching_trajectory() {
        let t = track_domain_walls(&traj(4, &[(0, 1), (2, 3)], &[0b0011, 0b0011, 0b0011])).unwrap();
        assert!(t.events.iter().all(|e| *e == DWEvent::None));
        assert_eq!(t.weight(), 1.0);
        let split = decompose_survivors(&t);
        assert!(split.annihilating.is_empty());
        assert_eq!(split.surviving.len(), 2);
    }

    #[test]
    fn hop_and_annihilation() {
        // (S, I, I, I): walls on edges 0 and 3. Both-S at (0,1) moves edge 0 to 1.
        let t = track_domain_walls(&traj(4, &[(0, 1)], &[0b0001, 0b0011])).unwrap();
        assert_eq!(
            t.events[0],
            DWEvent::Hop {
                wall: 0,
                from: 0,
                to: 1
            }
        );
        assert_eq!(t.weight_exponent, 1);
        // Both-I at (0,1) flips site 0, the wall on edge 0 meets the one on edge 3.
        let t = track_domain_walls(&traj(4, &[(0, 1)], &[0b0001, 0b0000])).unwrap();
        assert!(matches!(t.events[0], DWEvent::Annihilate { at: 3, .. }));
        let split = decompose_survivors(&t);
        assert!(split.surviving.is_empty());
        assert_eq!(split.annihilating_exponent, 1);
    }

    #[test]
    fn rejects_non_model_steps() {
        assert!(track_domain_walls(&traj(4, &[(0, 1)], &[0b0011, 0b0000])).is_err());
        assert!(track_domain_walls(&traj(4, &[(0, 1)], &[0b0001, 0b0101])).is_err());
    }

    #[test]
    fn exhaustive_small_instances() {
        for (a, b, m, depth) in [(1, 2, 2, 3), (1, 3, 2, 2), (1, 4, 2, 2), (2, 4, 2, 3)] {
            let spec = BrickworkSpec::new(BlockLayout::new(a, b, m).unwrap(), depth);
            visit_trajectories(&spec, &EnumerationGuard::default(), |c| {
                let t = track_domain_walls(c).unwrap();
                let split = decompose_survivors(&t);
                assert_eq!(
                    split.annihilating_exponent + split.surviving_exponent,
                    t.weight_exponent
                );
                let mut prev = usize::MAX;
                for g in &t.configs {
                    assert_eq!(g.len() % 2, 0);
                    assert!(g.len() <= prev);
                    prev = g.len();
                }
                assert_eq!(t.configs.last().unwrap().len(), split.surviving.len());
                for &w in &split.surviving {
                    assert!(t.moves[w] + 1 >= depth);
                }
            })
            .unwrap();
        }
    }
}
