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

//! Subcommand implementations. Each returns its records; the runner owns
//! serialization and exit codes.

use std::io::Write;
use std::path::Path;

use num_rational::BigRational;
use serde_json::json;

use brickqec_core::brickwork::{build_schedule, sample_circuit, BlockLayout, BrickworkSpec};
use brickqec_core::choi_empirics::{MomentSampler, MAX_DENSE_QUBITS};
use brickqec_core::codecheck::{code_distance, failure_sample, MCEstimate};
use brickqec_core::domainwall::{
    breakdown_of, enumerate_histogram, track_domain_walls, visit_trajectories, DWEvent, EnumerationGuard,
};
use brickqec_core::seeding::stream_rng;
use brickqec_core::statmech::{
    aqec_depth_bound, ceil_log2, choi_error_bound, exact_partition_profile, informal_scaling,
    partition_function_exact, partition_function_with, partition_profile, qec_depth_bound, r_const,
    rational_to_f64, scan_exact_threshold, z_infinity_aqec, z_infinity_qec, DpOptions, ExactTransferDp,
    FinalWeighting, TransferDp,
};

use crate::config::{Settings, WeightKind};
use crate::error::{at_field, CliError};
use crate::output::Record;
use crate::parallel::{par_map, try_par_map};

/// Records plus anything the runner should report.
#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub warnings: Vec<String>,
    /// Set when a self-check inside the command failed (exit code 1).
    pub failure: Option<String>,
}

/// Warning text for circuits too shallow to twirl every qubit.
pub const SHALLOW_WARNING: &str = "below 1-design depth";

fn depth_warning(layout: &BlockLayout, depth: usize) -> Option<String> {
    (depth == 0).then(|| {
        format!(
            "warning: D=0 for (a,b,m)=({},{},{}) is {SHALLOW_WARNING}; computed anyway",
            layout.a(),
            layout.b(),
            layout.m()
        )
    })
}

fn weighting_label(w: &FinalWeighting) -> &'static str {
    match w {
        FinalWeighting::Aqec { .. } => "aqec",
        FinalWeighting::Qec { .. } => "qec",
    }
}

fn lambda_to_f(lambda: f64) -> f64 {
    lambda.log2() + 1.0
}

/// Noise strength of an AQEC weighting, preferring the configured value over
/// the round trip through λ.
fn strength_of(w: &FinalWeighting, f: Option<f64>) -> Option<f64> {
    match *w {
        FinalWeighting::Aqec { lambda } => Some(f.unwrap_or_else(|| lambda_to_f(lambda))),
        FinalWeighting::Qec { .. } => None,
    }
}

/// Infinite-depth value and depth bound for a spec; `None` where a formula
/// does not apply (hypothesis, range of `d`, or `D = 0`).
fn closed_forms(spec: &BrickworkSpec, w: &FinalWeighting, f: Option<f64>) -> (Option<f64>, Option<f64>) {
    let (n, k, b, depth) = (spec.n(), spec.k(), spec.layout.b(), spec.depth);
    match *w {
        FinalWeighting::Aqec { .. } => {
            let f = strength_of(w, f).expect("aqec");
            let z_inf = z_infinity_aqec(n, k, f).ok();
            let bound = (depth >= 1)
                .then(|| aqec_depth_bound(n, k, b, depth, f).ok())
                .flatten();
            (z_inf, bound)
        }
        FinalWeighting::Qec { d } => {
            let z_inf = z_infinity_qec(n, k, d).ok();
            let bound = (depth >= 1)
                .then(|| qec_depth_bound(n, k, b, d, depth).ok())
                .flatten();
            (z_inf, bound)
        }
    }
}

/// `{n,k,a,b,m,D,s,f,lambda,weighting,Z,Z_inf,bound,choi_bound}` followed by
/// `{d, noise}`.
pub fn statmech_record(
    spec: &BrickworkSpec,
    gates: usize,
    w: &FinalWeighting,
    f: Option<f64>,
    z: f64,
    noise: Option<String>,
) -> Record {
    let (lambda, d) = match *w {
        FinalWeighting::Aqec { lambda } => (Some(lambda), None),
        FinalWeighting::Qec { d } => (None, Some(d)),
    };
    let f = strength_of(w, f);
    let (z_inf, bound) = closed_forms(spec, w, f);
    let l = &spec.layout;
    Record::new()
        .with("n", l.n())
        .with("k", l.k())
        .with("a", l.a())
        .with("b", l.b())
        .with("m", l.m())
        .with("D", spec.depth)
        .with("s", gates)
        .with("f", f)
        .with("lambda", lambda)
        .with("weighting", weighting_label(w))
        .with("Z", z)
        .with("Z_inf", z_inf)
        .with("bound", bound)
        .with("choi_bound", choi_error_bound(z))
        .with("d", d)
        .with("noise", noise)
}

fn grid<T: Copy, U: Copy>(xs: &[T], ys: &[U]) -> Vec<(T, U)> {
    xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect()
}

fn dump_schedules(path: &Path, specs: &[BrickworkSpec]) -> Result<(), CliError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for spec in specs {
        let slots: Vec<_> = build_schedule(spec)
            .iter()
            .map(|s| json!({"layer": s.layer, "pair": [s.pair.0, s.pair.1]}))
            .collect();
        let l = &spec.layout;
        let line = json!({"a": l.a(), "b": l.b(), "m": l.m(), "n": l.n(), "D": spec.depth, "slots": slots});
        writeln!(file, "{line}")?;
    }
    file.flush()?;
    Ok(())
}

fn configured_strength(s: &Settings) -> Result<Option<f64>, CliError> {
    match (s.weight_kind(), s.noise) {
        (WeightKind::Aqec, Some(n)) => n.strength().map(Some),
        _ => Ok(None),
    }
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct ZfuncArgs {
    /// Exact rational evaluation where available (λ ∈ {1/2, 1, 2} or QEC).
    #[arg(long)]
    pub exact: bool,
    /// One row per gate instead of one per depth.
    #[arg(long)]
    pub profile: bool,
    /// Write the gate schedule of every spec as JSON lines.
    #[arg(long)]
    pub dump_schedule: Option<std::path::PathBuf>,
}

pub fn zfunc(s: &Settings, x: &ZfuncArgs) -> Result<Outcome, CliError> {
    let tasks = grid(&s.layouts()?, &s.depths()?);
    let noise = s.noise.map(|n| n.label());
    let f = configured_strength(s)?;
    let opts = DpOptions::default();
    let mut out = Outcome::default();
    for &(l, depth) in &tasks {
        out.warnings.extend(depth_warning(&l, depth));
        if l.n() > opts.max_qubits {
            return Err(CliError::invalid(
                "layout",
                format!("n = {} exceeds the DP limit of {} qubits", l.n(), opts.max_qubits),
            ));
        }
    }
    if let Some(path) = &x.dump_schedule {
        let specs: Vec<_> = tasks.iter().map(|&(l, d)| BrickworkSpec::new(l, d)).collect();
        dump_schedules(path, &specs)?;
    }
    let rows = try_par_map(s.workers, tasks.len(), |i| -> Result<Vec<Record>, CliError> {
        let (l, depth) = tasks[i];
        let spec = BrickworkSpec::new(l, depth);
        let w = s.final_weighting(l.n())?;
        let exact = x.exact && w.has_exact_form();
        let mut rows = Vec::new();
        if x.profile {
            let values: Vec<(f64, Option<String>)> = if exact {
                exact_partition_profile(&spec, &w, &opts)?
                    .iter()
                    .map(|r| (rational_to_f64(r), Some(r.to_string())))
                    .collect()
            } else {
                partition_profile(&spec, &w, &opts)?
                    .into_iter()
                    .map(|z| (z, None))
                    .collect()
            };
            for (gates, (z, zx)) in values.into_iter().enumerate() {
                rows.push(statmech_record(&spec, gates, &w, f, z, noise.clone()).with("Z_exact", zx));
            }
        } else {
            let r = if exact {
                partition_function_exact(&spec, &w, &opts)?
            } else {
                partition_function_with(&spec, &w, &opts)?
            };
            let zx = r.exact.as_ref().map(|q| q.to_string());
            rows.push(statmech_record(&spec, r.gates, &w, f, r.z, noise.clone()).with("Z_exact", zx));
        }
        Ok(rows)
    })?;
    out.records = rows.into_iter().flatten().collect();
    Ok(out)
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct BoundsArgs {
    /// Distance ratio c for the informal scaling column.
    #[arg(long)]
    pub c: Option<f64>,
}

/// Closed forms only; no simulation. Without `--depth` only the
/// infinite-depth values are reported.
pub fn bounds(s: &Settings, x: &BoundsArgs) -> Result<Outcome, CliError> {
    let layouts = s.layouts()?;
    let depths: Vec<Option<usize>> = if s.depths.is_empty() {
        vec![None]
    } else {
        s.depths.iter().copied().map(Some).collect()
    };
    let c = x.c.or(s.c);
    let mut out = Outcome::default();
    for (l, depth) in grid(&layouts, &depths) {
        let (n, k, b) = (l.n(), l.k(), l.b());
        if let Some(d) = depth {
            out.warnings.extend(depth_warning(&l, d));
        }
        let w = s.final_weighting(n)?;
        let (f, lambda, d, z_inf, bound) = match (s.weight_kind(), w) {
            (WeightKind::Aqec, FinalWeighting::Aqec { lambda }) => {
                let f = strength_of(&w, configured_strength(s)?).expect("aqec");
                let z_inf = at_field("noise", z_infinity_aqec(n, k, f))?;
                let bound = match depth {
                    Some(d) if d >= 1 => Some(aqec_depth_bound(n, k, b, d, f)?),
                    _ => None,
                };
                (Some(f), Some(lambda), None, z_inf, bound)
            }
            (_, FinalWeighting::Qec { d }) => {
                let z_inf = at_field("weighting.d", z_infinity_qec(n, k, d))?;
                let bound = match depth {
                    Some(dd) if dd >= 1 => Some(at_field("weighting.d", qec_depth_bound(n, k, b, d, dd))?),
                    _ => None,
                };
                (None, None, Some(d), z_inf, bound)
            }
            _ => unreachable!("weighting follows its kind"),
        };
        let scaling = match c {
            Some(c) => Some(at_field("c", informal_scaling(n as f64, c, r_const(l.rate())))?),
            None => None,
        };
        out.records.push(
            Record::new()
                .with("n", n)
                .with("k", k)
                .with("a", l.a())
                .with("b", b)
                .with("m", l.m())
                .with("D", depth)
                .with("f", f)
                .with("lambda", lambda)
                .with("weighting", weighting_label(&w))
                .with("d", d)
                .with("Z_inf", z_inf)
                .with("bound", bound)
                .with("choi_bound", choi_error_bound(bound.unwrap_or(z_inf)))
                .with("informal_scaling", scaling),
        );
    }
    Ok(out)
}

/// One oracle comparison.
#[derive(Debug, Clone)]
pub struct OracleRow {
    pub spec: BrickworkSpec,
    pub weighting: FinalWeighting,
    /// Noise strength the AQEC weighting was built from.
    pub strength: Option<f64>,
    pub exact_mode: bool,
    pub z_dp: f64,
    pub z_enum: f64,
    pub exact_dp: Option<BigRational>,
    pub exact_enum: Option<BigRational>,
    pub rel_err: f64,
    /// Exact equality in rational mode, relative error ≤ 1e-12 otherwise.
    pub agree: bool,
    /// Survivor buckets sum to the enumerated total.
    pub breakdown_ok: bool,
    pub max_k0: usize,
    pub trajectories: u64,
}

impl OracleRow {
    pub fn record(&self) -> Record {
        let l = &self.spec.layout;
        let (f, d) = match self.weighting {
            FinalWeighting::Aqec { .. } => (strength_of(&self.weighting, self.strength), None),
            FinalWeighting::Qec { d } => (None, Some(d)),
        };
        Record::new()
            .with("n", l.n())
            .with("k", l.k())
            .with("a", l.a())
            .with("b", l.b())
            .with("m", l.m())
            .with("D", self.spec.depth)
            .with("s", self.spec.gate_count())
            .with("weighting", weighting_label(&self.weighting))
            .with("f", f)
            .with("d", d)
            .with("mode", if self.exact_mode { "rational" } else { "float" })
            .with("Z_dp", self.z_dp)
            .with("Z_enum", self.z_enum)
            .with("rel_err", self.rel_err)
            .with("agree", self.agree)
            .with("Z_exact_dp", self.exact_dp.as_ref().map(|q| q.to_string()))
            .with("Z_exact_enum", self.exact_enum.as_ref().map(|q| q.to_string()))
            .with("breakdown_ok", self.breakdown_ok)
            .with("max_k0", self.max_k0)
            .with("trajectories", self.trajectories)
    }
}

/// Strengths with exact rational evaluation.
pub const EXACT_STRENGTHS: [f64; 3] = [0.0, 1.0, 2.0];
/// Strengths compared in floating point.
pub const FLOAT_STRENGTHS: [f64; 3] = [0.3, 0.7, 1.5];

/// Every layout with even `n = b·m ≤ n_max`.
pub fn small_layouts(n_max: usize) -> Vec<BlockLayout> {
    let mut out = Vec::new();
    for n in (2..=n_max).step_by(2) {
        for b in 2..=n {
            if n % b != 0 {
                continue;
            }
            for a in 1..b {
                out.push(BlockLayout::new(a, b, n / b).expect("valid by construction"));
            }
        }
    }
    out
}

/// Compares the transfer DP with the trajectory enumeration on one spec for
/// each listed weighting.
pub fn oracle_compare(
    spec: &BrickworkSpec,
    weightings: &[(FinalWeighting, Option<f64>)],
    opts: &DpOptions,
) -> Result<Vec<OracleRow>, CliError> {
    let guard = EnumerationGuard::default();
    at_field("layout", guard.check(spec))?;
    let hist = enumerate_histogram(spec, &guard)?;
    let mut dp = TransferDp::with_options(spec.layout, opts)?;
    let mut exact_dp = ExactTransferDp::with_options(spec.layout, opts)?;
    for slot in spec.schedule() {
        dp.apply(slot.pair)?;
        exact_dp.apply(slot.pair)?;
    }
    let mut rows = Vec::with_capacity(weightings.len());
    for (w, strength) in weightings {
        at_field("weighting", w.validate(spec.n()))?;
        let breakdown = breakdown_of(&hist, w);
        let exact_enum = hist.evaluate_exact(w);
        let exact_mode = exact_enum.is_some();
        let (z_dp, z_enum, exact_dpv, agree, breakdown_ok) = if exact_mode {
            let xd = exact_dp.evaluate(w).expect("same exact form");
            let xe = exact_enum.clone().expect("checked");
            let ok = breakdown.exact_total.as_ref() == Some(&xe);
            (
                rational_to_f64(&xd),
                rational_to_f64(&xe),
                Some(xd.clone()),
                xd == xe,
                ok,
            )
        } else {
            let zd = dp.evaluate(w);
            let ze = hist.evaluate(w);
            let rel = (zd - ze).abs() / ze.abs().max(f64::MIN_POSITIVE);
            let ok = (breakdown.total - ze).abs() <= 1e-12 * ze.abs();
            (zd, ze, None, rel <= 1e-12, ok)
        };
        let rel_err = if z_enum == 0.0 {
            (z_dp - z_enum).abs()
        } else {
            (z_dp - z_enum).abs() / z_enum.abs()
        };
        rows.push(OracleRow {
            spec: *spec,
            weighting: *w,
            strength: *strength,
            exact_mode,
            z_dp,
            z_enum,
            exact_dp: exact_dpv,
            exact_enum,
            rel_err,
            agree,
            breakdown_ok,
            max_k0: breakdown.max_k0(),
            trajectories: hist.trajectory_count(),
        });
    }
    Ok(rows)
}

/// The weightings checked on an `n`-qubit spec: AQEC at every strength and
/// QEC at every `1 ≤ d ≤ n/2`.
pub fn oracle_weightings(n: usize, strengths: &[f64], qec: bool) -> Vec<(FinalWeighting, Option<f64>)> {
    let mut out: Vec<_> = strengths
        .iter()
        .map(|&f| (FinalWeighting::aqec_from_f(f), Some(f)))
        .collect();
    if qec {
        out.extend((1..=n / 2).map(|d| (FinalWeighting::Qec { d }, None)));
    }
    out
}

pub fn oracle_grid(
    layouts: &[BlockLayout],
    depths: &[usize],
    strengths: &[f64],
    qec: bool,
    opts: &DpOptions,
    workers: usize,
) -> Result<Vec<OracleRow>, CliError> {
    let tasks = grid(layouts, depths);
    let rows = try_par_map(workers, tasks.len(), |i| {
        let (l, depth) = tasks[i];
        let spec = BrickworkSpec::new(l, depth);
        oracle_compare(&spec, &oracle_weightings(l.n(), strengths, qec), opts)
    })?;
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct OracleArgs {
    /// Export tracked domain-wall trajectories of the (single) spec as JSON lines.
    #[arg(long)]
    pub trajectories: Option<std::path::PathBuf>,
}

pub fn oracle(s: &Settings, x: &OracleArgs) -> Result<Outcome, CliError> {
    let guard = EnumerationGuard::default();
    let layouts = if s.has_layout() {
        s.layouts()?
    } else {
        small_layouts(guard.max_qubits)
    };
    let depths = if s.depths.is_empty() {
        (0..=guard.max_depth).collect()
    } else {
        s.depths.clone()
    };
    for &l in &layouts {
        for &d in &depths {
            at_field("layout", guard.check(&BrickworkSpec::new(l, d)))?;
        }
    }
    let strengths: Vec<f64> = match s.noise {
        Some(n) => vec![n.strength()?],
        None => EXACT_STRENGTHS
            .iter()
            .chain(FLOAT_STRENGTHS.iter())
            .copied()
            .collect(),
    };
    let (strengths, qec) = match s.weighting {
        Some(WeightKind::Aqec) => (strengths, false),
        Some(WeightKind::Qec) => (Vec::new(), true),
        None => (strengths, true),
    };
    let rows = oracle_grid(
        &layouts,
        &depths,
        &strengths,
        qec,
        &DpOptions::default(),
        s.workers,
    )?;

    let mut out = Outcome::default();
    let bad = rows.iter().filter(|r| !r.agree || !r.breakdown_ok).count();
    let max_rel = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    out.warnings.push(format!(
        "oracle: {} comparisons, {} disagreements, max relative error {:e}",
        rows.len(),
        bad,
        max_rel
    ));
    if bad > 0 {
        out.failure = Some(format!("{bad} oracle comparisons disagree"));
    }
    if let Some(path) = &x.trajectories {
        if layouts.len() != 1 || depths.len() != 1 {
            return Err(CliError::invalid(
                "trajectories",
                "trajectory export needs exactly one layout and one depth",
            ));
        }
        export_trajectories(path, &BrickworkSpec::new(layouts[0], depths[0]))?;
    }
    out.records = rows.iter().map(OracleRow::record).collect();
    Ok(out)
}

fn event_json(e: &DWEvent) -> serde_json::Value {
    match *e {
        DWEvent::None => json!({"kind": "none"}),
        DWEvent::Hop { wall, from, to } => json!({"kind": "hop", "wall": wall, "from": from, "to": to}),
        DWEvent::Annihilate {
            mover,
            partner,
            from,
            at,
        } => {
            json!({"kind": "annihilate", "mover": mover, "partner": partner, "from": from, "at": at})
        }
    }
}

/// One JSON line per trajectory: wall edges after each gate, events, weight.
pub fn export_trajectories(path: &Path, spec: &BrickworkSpec) -> Result<(), CliError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    let mut result = Ok(());
    let mut index = 0usize;
    visit_trajectories(spec, &EnumerationGuard::default(), |traj| {
        if result.is_err() {
            return;
        }
        result = (|| -> Result<(), CliError> {
            let t = track_domain_walls(traj)?;
            let configs: Vec<Vec<usize>> = t.configs.iter().map(|c| c.edges()).collect();
            let events: Vec<_> = t.events.iter().map(event_json).collect();
            let line = json!({
                "index": index,
                "start": traj.configs[0],
                "configs": configs,
                "events": events,
                "weight_exponent": t.weight_exponent,
                "weight": crate::output::fmt_float(t.weight()),
                "survivors": t.survivors(),
                "annihilated": t.annihilated(),
            });
            writeln!(file, "{line}")?;
            Ok(())
        })();
        index += 1;
    })?;
    result?;
    file.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct SampleArgs {
    /// Also compute the code distance of every sample, searching up to this weight.
    #[arg(long)]
    pub distance_cap: Option<usize>,
    /// Write every sampled encoder tableau as JSON lines.
    #[arg(long)]
    pub dump_tableau: Option<std::path::PathBuf>,
    #[arg(long)]
    pub dump_schedule: Option<std::path::PathBuf>,
}

fn dump_tableaux(path: &Path, spec: &BrickworkSpec, seed: u64, samples: usize) -> Result<(), CliError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for i in 0..samples as u64 {
        let u = sample_circuit(spec, &mut stream_rng(seed, i))?;
        let l = &spec.layout;
        let line = json!({
            "a": l.a(), "b": l.b(), "m": l.m(), "D": spec.depth,
            "seed": seed, "index": i, "tableau": u.to_strings(),
        });
        writeln!(file, "{line}")?;
    }
    file.flush()?;
    Ok(())
}

/// Failure probability of the exact-EC criterion at distance `d`, with the
/// QEC partition function as the comparison column.
pub fn sample(s: &Settings, x: &SampleArgs) -> Result<Outcome, CliError> {
    let tasks = grid(&s.layouts()?, &s.depths()?);
    let d = s.distance()?;
    let samples = s.samples()?;
    let seed = s.seed();
    let mut out = Outcome::default();
    for &(l, depth) in &tasks {
        out.warnings.extend(depth_warning(&l, depth));
        if d > l.n() {
            return Err(CliError::invalid(
                "weighting.d",
                format!("need d ≤ n = {}", l.n()),
            ));
        }
    }
    let specs: Vec<_> = tasks.iter().map(|&(l, dd)| BrickworkSpec::new(l, dd)).collect();
    if let Some(path) = &x.dump_schedule {
        dump_schedules(path, &specs)?;
    }
    if let Some(path) = &x.dump_tableau {
        if specs.len() != 1 {
            return Err(CliError::invalid(
                "dump_tableau",
                "tableau dump needs exactly one layout and one depth",
            ));
        }
        dump_tableaux(path, &specs[0], seed, samples)?;
    }
    if x.distance_cap == Some(0) {
        return Err(CliError::invalid("distance_cap", "must be at least 1"));
    }
    for spec in &specs {
        let fails = try_par_map(s.workers, samples, |i| failure_sample(spec, d, seed, i as u64))?;
        let values: Vec<f64> = fails.iter().map(|&f| if f { 1.0 } else { 0.0 }).collect();
        let est = MCEstimate::from_samples(&values, seed)?;
        let z_qec = if spec.n() <= DpOptions::default().max_qubits {
            Some(partition_function_with(spec, &FinalWeighting::Qec { d }, &DpOptions::default())?.z)
        } else {
            None
        };
        let l = &spec.layout;
        let mut r = Record::new()
            .with("n", l.n())
            .with("a", l.a())
            .with("b", l.b())
            .with("m", l.m())
            .with("D", spec.depth)
            .with("d", d)
            .with("N", samples)
            .with("mean", est.mean)
            .with("stderr", est.stderr)
            .with("seed", seed)
            .with("z_qec_bound", z_qec)
            .with("k", l.k());
        if let Some(cap) = x.distance_cap {
            let reports = try_par_map(s.workers, samples, |i| -> Result<Option<usize>, CliError> {
                let u = sample_circuit(spec, &mut stream_rng(seed, i as u64))?;
                Ok(code_distance(&u, l, cap)?.distance)
            })?;
            let found: Vec<usize> = reports.iter().flatten().copied().collect();
            let light_cone = spec.depth == 0
                || reports.iter().all(|r| r.is_some_and(|v| v <= 2 * spec.depth))
                || cap < 2 * spec.depth;
            r.push("distance_cap", cap);
            r.push("distance_min", found.iter().min().copied());
            r.push("distance_max", found.iter().max().copied());
            r.push(
                "distance_above_cap",
                reports.iter().filter(|r| r.is_none()).count(),
            );
            r.push("light_cone_ok", light_cone);
        }
        out.records.push(r);
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct McChoiArgs {
    /// Exit with code 1 when |mc − dp| exceeds 4 standard errors.
    #[arg(long)]
    pub check: bool,
}

/// Absolute slack added to the 4σ test, so that zero-variance estimates
/// (noiseless or fully depolarizing) compare by value.
pub fn mc_tolerance(stderr: f64, dp: f64) -> f64 {
    4.0 * stderr + 1e-9 * dp.abs().max(1.0)
}

/// Monte Carlo `Z` from dense simulation next to the DP value.
pub fn mc_choi_point(
    spec: &BrickworkSpec,
    p: [f64; 4],
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<(MCEstimate, Record), CliError> {
    let sampler = MomentSampler::new(spec, p)?;
    let values = try_par_map(workers, samples, |i| sampler.sample(seed, i as u64))?;
    let est = MCEstimate::from_samples(&values, seed)?;
    let model = brickqec_core::statmech::NoiseModel::pauli(p[0], p[1], p[2], p[3])?;
    let f = brickqec_core::statmech::noise_strength_f(&model)?;
    let w = FinalWeighting::aqec_from_f(f);
    let dp = partition_function_with(spec, &w, &DpOptions::default())?;
    let diff = est.mean - dp.z;
    let noise = format!(
        "pauli({})",
        p.iter()
            .map(|v| crate::output::fmt_float(*v))
            .collect::<Vec<_>>()
            .join(";")
    );
    let rec = statmech_record(spec, dp.gates, &w, Some(f), dp.z, Some(noise))
        .with("mc_mean", est.mean)
        .with("mc_stderr", est.stderr)
        .with("N", samples)
        .with("seed", seed)
        .with("diff", diff)
        .with("agree", diff.abs() <= mc_tolerance(est.stderr, dp.z));
    Ok((est, rec))
}

pub fn mc_choi(s: &Settings, x: &McChoiArgs) -> Result<Outcome, CliError> {
    let tasks = grid(&s.layouts()?, &s.depths()?);
    let p = s.noise()?.pauli_vector()?;
    let samples = s.samples()?;
    for &(l, depth) in &tasks {
        if l.n() > MAX_DENSE_QUBITS {
            return Err(CliError::invalid(
                "layout",
                format!("dense verifier needs n ≤ {MAX_DENSE_QUBITS}, got {}", l.n()),
            ));
        }
        if depth == 0 {
            return Err(CliError::invalid("depth", "the sampled moment needs D ≥ 1"));
        }
    }
    let mut out = Outcome::default();
    for &(l, depth) in &tasks {
        let (_, rec) = mc_choi_point(&BrickworkSpec::new(l, depth), p, samples, s.seed(), s.workers)?;
        out.records.push(rec);
    }
    if x.check {
        let bad = out
            .records
            .iter()
            .filter(|r| r.get("agree") != Some(&crate::output::Cell::Bool(true)))
            .count();
        if bad > 0 {
            out.failure = Some(format!(
                "{bad} Monte Carlo points outside 4 standard errors of the DP"
            ));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct ScanArgs {
    /// Register sizes (default 64, 128, …, 4096).
    #[arg(long, value_delimiter = ',')]
    pub n_list: Vec<usize>,
    /// Depth multiplier: D = ⌈α·d(n)⌉.
    #[arg(long)]
    pub alpha: Option<f64>,
}

/// Default depth multiplier for the threshold scan.
pub const DEFAULT_SCAN_ALPHA: f64 = 20.0;

pub fn default_scan_sizes() -> Vec<usize> {
    (6..=12).map(|e| 1usize << e).collect()
}

/// QEC depth bound at `D = ⌈α·⌈log2 n⌉⌉` and `d(n) = ⌈log2 n⌉`.
pub fn scan(s: &Settings, x: &ScanArgs) -> Result<Outcome, CliError> {
    let n_list = if !x.n_list.is_empty() {
        x.n_list.clone()
    } else {
        s.n_list.clone().unwrap_or_else(default_scan_sizes)
    };
    let alpha = x.alpha.or(s.alpha).unwrap_or(DEFAULT_SCAN_ALPHA);
    let (a, b) = (s.a.unwrap_or(1), s.b.unwrap_or(4));
    let rows = at_field("n_list", scan_exact_threshold(&n_list, a, b, ceil_log2, alpha))?;
    let records = rows
        .iter()
        .map(|r| {
            Record::new()
                .with("n", r.n)
                .with("k", r.k)
                .with("a", a)
                .with("b", b)
                .with("d", r.d)
                .with("D", r.depth)
                .with("alpha", alpha)
                .with("z_inf", r.z_inf)
                .with("bound", r.bound)
                .with("below_one", r.below_one)
                .with("decreasing", r.decreasing)
        })
        .collect();
    Ok(Outcome {
        records,
        ..Outcome::default()
    })
}

/// Index-ordered, worker-independent helper exposed for tests.
pub fn sample_values(workers: usize, spec: &BrickworkSpec, d: usize, seed: u64, samples: usize) -> Vec<bool> {
    par_map(workers, samples, |i| {
        failure_sample(spec, d, seed, i as u64).unwrap_or(true)
    })
}
