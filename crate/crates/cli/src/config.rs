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

//! Run configuration: JSON file, command-line flags, and their merge.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use brickqec_core::brickwork::BlockLayout;
use brickqec_core::statmech::{noise_strength_f, FinalWeighting, NoiseModel};

use crate::error::{at_field, CliError};
use crate::output::{fmt_float, Format};
use crate::parallel::default_workers;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutConfig {
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub m: Option<OneOrMany<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    /// `params = [p_I, p_X, p_Y, p_Z]`.
    Pauli,
    /// `params = [p]`.
    Erasure,
    /// `params = [p]`, split evenly over X, Y, Z.
    Depolarizing,
    /// `params = [f]`.
    Strength,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    pub kind: NoiseKind,
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    Aqec,
    Qec,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightingConfig {
    pub kind: WeightKind,
    pub d: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Contents of a `--config` JSON file. Every field is optional; flags win.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub layout: Option<LayoutConfig>,
    pub depth: Option<OneOrMany<usize>>,
    pub noise: Option<NoiseConfig>,
    pub weighting: Option<WeightingConfig>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub workers: Option<usize>,
    pub output: Option<OutputConfig>,
    /// Register sizes for `scan`.
    pub n_list: Option<Vec<usize>>,
    /// Depth multiplier for `scan`.
    pub alpha: Option<f64>,
    /// Distance-to-length ratio for the informal scaling column of `bounds`.
    pub c: Option<f64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { "config".to_owned() } else { path };
            CliError::invalid(field, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid("config", format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: $BRICKQEC_WORKERS, else the CPU count).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write records here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Logical qubits per block.
    #[arg(long)]
    pub a: Option<usize>,
    /// Block length.
    #[arg(long)]
    pub b: Option<usize>,
    /// Number of blocks (comma-separated list for sweeps).
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    /// Circuit depth (comma-separated list for sweeps).
    #[arg(long, value_delimiter = ',')]
    pub depth: Vec<usize>,
    /// Noise strength f in [0, 2].
    #[arg(long)]
    pub f: Option<f64>,
    /// Pauli noise p_I,p_X,p_Y,p_Z.
    #[arg(long, value_delimiter = ',')]
    pub pauli: Vec<f64>,
    /// Depolarizing probability p.
    #[arg(long)]
    pub depolarizing: Option<f64>,
    /// Erasure probability p.
    #[arg(long)]
    pub erasure: Option<f64>,
    #[arg(long, value_enum)]
    pub weighting: Option<WeightKind>,
    /// Code distance for the QEC weighting and the failure estimate.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo sample count N.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Noise {
    Strength(f64),
    Pauli([f64; 4]),
    Depolarizing(f64),
    Erasure(f64),
}

impl Noise {
    fn from_config(c: &NoiseConfig) -> Result<Self, CliError> {
        let want = match c.kind {
            NoiseKind::Pauli => 4,
            _ => 1,
        };
        if c.params.len() != want {
            return Err(CliError::invalid(
                "noise.params",
                format!(
                    "{:?} noise takes {want} parameter(s), got {}",
                    c.kind,
                    c.params.len()
                ),
            ));
        }
        let p = &c.params;
        Ok(match c.kind {
            NoiseKind::Pauli => Noise::Pauli([p[0], p[1], p[2], p[3]]),
            NoiseKind::Erasure => Noise::Erasure(p[0]),
            NoiseKind::Depolarizing => Noise::Depolarizing(p[0]),
            NoiseKind::Strength => Noise::Strength(p[0]),
        })
    }

    fn model(&self) -> Result<Option<NoiseModel>, CliError> {
        Ok(Some(match *self {
            Noise::Strength(_) => return Ok(None),
            Noise::Pauli(p) => at_field("noise.params", NoiseModel::pauli(p[0], p[1], p[2], p[3]))?,
            Noise::Depolarizing(p) => at_field("noise.params", NoiseModel::depolarizing(p))?,
            Noise::Erasure(p) => at_field("noise.params", NoiseModel::erasure(p))?,
        }))
    }

    /// Noise strength `f`.
    pub fn strength(&self) -> Result<f64, CliError> {
        match (self, self.model()?) {
            (Noise::Strength(f), _) => {
                if !(0.0..=2.0).contains(f) {
                    return Err(CliError::invalid(
                        "noise.params",
                        format!("f must lie in [0, 2], got {f}"),
                    ));
                }
                Ok(*f)
            }
            (_, Some(model)) => at_field("noise.params", noise_strength_f(&model)),
            (_, None) => unreachable!(),
        }
    }

    /// Pauli probabilities, root-solving the depolarizing family for a bare `f`.
    pub fn pauli_vector(&self) -> Result<[f64; 4], CliError> {
        match *self {
            Noise::Pauli(p) => {
                self.model()?;
                Ok(p)
            }
            Noise::Depolarizing(p) => {
                self.model()?;
                Ok([1.0 - p, p / 3.0, p / 3.0, p / 3.0])
            }
            Noise::Strength(f) => {
                let p = at_field(
                    "noise.params",
                    brickqec_core::statmech::depolarizing_for_strength(f),
                )?;
                Ok([1.0 - p, p / 3.0, p / 3.0, p / 3.0])
            }
            Noise::Erasure(_) => Err(CliError::invalid(
                "noise.kind",
                "the dense verifier supports Pauli noise only",
            )),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Noise::Strength(f) => format!("strength({})", fmt_float(f)),
            Noise::Pauli(p) => format!(
                "pauli({};{};{};{})",
                fmt_float(p[0]),
                fmt_float(p[1]),
                fmt_float(p[2]),
                fmt_float(p[3])
            ),
            Noise::Depolarizing(p) => format!("depolarizing({})", fmt_float(p)),
            Noise::Erasure(p) => format!("erasure({})", fmt_float(p)),
        }
    }
}

/// Flags merged over the config file.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub m: Vec<usize>,
    pub depths: Vec<usize>,
    pub noise: Option<Noise>,
    pub weighting: Option<WeightKind>,
    pub d: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub workers: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub n_list: Option<Vec<usize>>,
    pub alpha: Option<f64>,
    pub c: Option<f64>,
}

impl Settings {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Self::merge(args, &file)
    }

    pub fn merge(args: &CommonArgs, file: &RunConfig) -> Result<Self, CliError> {
        let layout = file.layout.clone().unwrap_or_default();
        let pick = |flag: &Vec<usize>, cfg: Option<Vec<usize>>| {
            if flag.is_empty() {
                cfg.unwrap_or_default()
            } else {
                flag.clone()
            }
        };

        let mut flag_noise = Vec::new();
        if let Some(f) = args.f {
            flag_noise.push(Noise::Strength(f));
        }
        if !args.pauli.is_empty() {
            if args.pauli.len() != 4 {
                return Err(CliError::invalid(
                    "pauli",
                    format!("expected 4 probabilities, got {}", args.pauli.len()),
                ));
            }
            flag_noise.push(Noise::Pauli([
                args.pauli[0],
                args.pauli[1],
                args.pauli[2],
                args.pauli[3],
            ]));
        }
        if let Some(p) = args.depolarizing {
            flag_noise.push(Noise::Depolarizing(p));
        }
        if let Some(p) = args.erasure {
            flag_noise.push(Noise::Erasure(p));
        }
        if flag_noise.len() > 1 {
            return Err(CliError::invalid(
                "noise",
                "give at most one of --f, --pauli, --depolarizing, --erasure",
            ));
        }
        let noise = match (flag_noise.pop(), &file.noise) {
            (Some(n), _) => Some(n),
            (None, Some(c)) => Some(Noise::from_config(c)?),
            (None, None) => None,
        };

        let output = file.output.clone().unwrap_or_default();
        let workers = args.workers.or(file.workers).unwrap_or_else(default_workers);
        if workers == 0 {
            return Err(CliError::invalid("workers", "must be at least 1"));
        }
        let settings = Self {
            a: args.a.or(layout.a),
            b: args.b.or(layout.b),
            m: pick(&args.m, layout.m.as_ref().map(OneOrMany::to_vec)),
            depths: pick(&args.depth, file.depth.as_ref().map(OneOrMany::to_vec)),
            noise,
            weighting: args.weighting.or(file.weighting.as_ref().map(|w| w.kind)),
            d: args.d.or(file.weighting.as_ref().and_then(|w| w.d)),
            seed: args.seed.or(file.seed),
            samples: args.samples.or(file.samples),
            workers,
            format: args.format.or(output.format).unwrap_or(Format::Csv),
            output: args.output.clone().or(output.path),
            n_list: file.n_list.clone(),
            alpha: file.alpha,
            c: file.c,
        };
        Ok(settings)
    }

    pub fn has_layout(&self) -> bool {
        self.a.is_some() || self.b.is_some() || !self.m.is_empty()
    }

    /// One layout per entry of `m`.
    pub fn layouts(&self) -> Result<Vec<BlockLayout>, CliError> {
        let a = self.a.ok_or_else(|| CliError::invalid("layout.a", "required"))?;
        let b = self.b.ok_or_else(|| CliError::invalid("layout.b", "required"))?;
        if self.m.is_empty() {
            return Err(CliError::invalid("layout.m", "required"));
        }
        self.m
            .iter()
            .map(|&m| BlockLayout::new(a, b, m).map_err(|e| CliError::invalid("layout", e.to_string())))
            .collect()
    }

    pub fn depths(&self) -> Result<Vec<usize>, CliError> {
        if self.depths.is_empty() {
            return Err(CliError::invalid("depth", "required"));
        }
        Ok(self.depths.clone())
    }

    pub fn noise(&self) -> Result<Noise, CliError> {
        self.noise
            .ok_or_else(|| CliError::invalid("noise", "required (--f, --pauli, --depolarizing or --erasure)"))
    }

    pub fn weight_kind(&self) -> WeightKind {
        self.weighting.unwrap_or(WeightKind::Aqec)
    }

    pub fn distance(&self) -> Result<usize, CliError> {
        match self.d {
            Some(0) => Err(CliError::invalid("weighting.d", "must be at least 1")),
            Some(d) => Ok(d),
            None => Err(CliError::invalid("weighting.d", "required")),
        }
    }

    /// Final weighting for a register of `n` qubits.
    pub fn final_weighting(&self, n: usize) -> Result<FinalWeighting, CliError> {
        let w = match self.weight_kind() {
            WeightKind::Aqec => FinalWeighting::aqec_from_f(self.noise()?.strength()?),
            WeightKind::Qec => FinalWeighting::Qec { d: self.distance()? },
        };
        at_field("weighting", w.validate(n))?;
        Ok(w)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn samples(&self) -> Result<usize, CliError> {
        match self.samples {
            Some(0) => Err(CliError::invalid("samples", "must be at least 1")),
            Some(n) => Ok(n),
            None => Err(CliError::invalid("samples", "required")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors_name_the_field() {
        let e = RunConfig::from_json(r#"{"samples": "many"}"#).unwrap_err();
        assert!(
            matches!(&e, CliError::Validation { field, .. } if field == "samples"),
            "{e}"
        );
        let e = RunConfig::from_json(r#"{"layout": {"a": 1, "bb": 2}}"#).unwrap_err();
        assert!(e.to_string().contains("layout"), "{e}");
        let e = RunConfig::from_json(r#"{"noise": {"kind": "thermal", "params": []}}"#).unwrap_err();
        assert!(e.to_string().contains("noise.kind"), "{e}");
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig::from_json(
            r#"{"layout": {"a": 1, "b": 2, "m": [1, 2]}, "depth": 3,
                "noise": {"kind": "strength", "params": [0.5]}, "seed": 7, "workers": 2}"#,
        )
        .unwrap();
        let args = CommonArgs {
            depth: vec![1, 2],
            f: Some(1.0),
            ..Default::default()
        };
        let s = Settings::merge(&args, &file).unwrap();
        assert_eq!(s.m, vec![1, 2]);
        assert_eq!(s.depths, vec![1, 2]);
        assert_eq!(s.noise, Some(Noise::Strength(1.0)));
        assert_eq!((s.seed, s.workers), (Some(7), 2));
        assert_eq!(s.layouts().unwrap().len(), 2);
    }

    #[test]
    fn validation() {
        let s = Settings::merge(
            &CommonArgs {
                a: Some(3),
                b: Some(2),
                m: vec![1],
                ..Default::default()
            },
            &RunConfig::default(),
        )
        .unwrap();
        assert!(matches!(s.layouts(), Err(CliError::Validation { field, .. }) if field == "layout"));
        let both = CommonArgs {
            f: Some(1.0),
            erasure: Some(0.1),
            ..Default::default()
        };
        assert!(Settings::merge(&both, &RunConfig::default()).is_err());
        assert!(Noise::Erasure(0.1).pauli_vector().is_err());
        assert!((Noise::Strength(1.0).pauli_vector().unwrap()[0] - 1.0).abs() < 0.5);
    }
}
