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

//! Domain-wall picture of the configuration model: wall sets, the
//! trajectory enumeration oracle, wall tracking and the survivor breakdown.

mod config;
mod enumerate;
mod track;

pub use config::{config_of_dw, dw_of_config, DWConfig, Site};
pub use enumerate::{
    breakdown_of, enumerate_histogram, enumerate_trajectories, enumerate_trajectories_with, histogram_from,
    initial_configs, surviving_pairs, survivor_breakdown, survivor_breakdown_with, visit_trajectories,
    ConfigTrajectory, EnumerationGuard, SurvivorBreakdown, TrajectoryHistogram,
};
pub use track::{decompose_survivors, track_domain_walls, DWEvent, DWTrajectory, SurvivorSplit, WallId};
