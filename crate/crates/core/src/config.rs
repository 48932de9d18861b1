//! Experiment configurations: the six builtin m-best experiments and a flat
//! TOML file format.
//!
//! ```toml
//! name = "exp4"
//! kind = "m_best"              # or "multi_bandit"
//! distribution = "bernoulli"   # or "point_mass"
//! means = [0.5, 0.42, 0.4, 0.4, 0.35, 0.35]   # multi_bandit: array of rows
//! m_values = [2, 3, 4, 5]      # m_best only; default 1..=K-1
//! budget = "auto"              # or a positive integer
//! trials = 10000
//! seed = 4                     # 0 ..= 2^63 - 1
//! strategies = ["uniform", "sr", "sar", "gap_e(c=2)"]
//! ```
//!
//! Only `name`, `kind` and `means` are required. Unknown keys are rejected.
//! Strategy names are `sar`, `sr`, `uniform` and `gap_e`, the latter with an
//! optional exploration parameter `gap_e(c=<positive real>)` (default 2).
//! Multi-bandit configs accept `sar` and `uniform`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::StrategySpec;
use crate::error::{Error, Result};
use crate::model::{ArmDistribution, BanditInstance, MultiBanditInstance, Task};
use crate::simulation::{
    suggest_budget, suggest_budget_multibandit, sweep_multibandit, sweep_over_m, SweepResult,
    DEFAULT_TRIALS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    Bernoulli,
    PointMass,
}

impl DistributionKind {
    fn build(self, v: f64) -> ArmDistribution {
        match self {
            DistributionKind::Bernoulli => ArmDistribution::Bernoulli(v),
            DistributionKind::PointMass => ArmDistribution::PointMass(v),
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            DistributionKind::Bernoulli => "bernoulli",
            DistributionKind::PointMass => "point_mass",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Means {
    /// m-best: one mean per arm.
    Arms(Vec<f64>),
    /// Multi-bandit: one row of arm means per problem.
    Problems(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Auto,
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub means: Means,
    pub distribution: DistributionKind,
    /// Empty for multi-bandit configs.
    pub m_values: Vec<usize>,
    pub budget: Budget,
    pub trials: u64,
    pub seed: u64,
    pub strategies: Vec<StrategySpec>,
}

impl ExperimentConfig {
    pub fn kind(&self) -> &'static str {
        match self.means {
            Means::Arms(_) => "m_best",
            Means::Problems(_) => "multi_bandit",
        }
    }

    pub fn is_multi_bandit(&self) -> bool {
        matches!(self.means, Means::Problems(_))
    }

    pub fn instance(&self) -> Result<BanditInstance> {
        match &self.means {
            Means::Arms(row) => self.row(row),
            Means::Problems(_) => Err(Error::Config(format!(
                "{} is a multi-bandit experiment",
                self.name
            ))),
        }
    }

    pub fn multi_instance(&self) -> Result<MultiBanditInstance> {
        match &self.means {
            Means::Problems(rows) => {
                MultiBanditInstance::new(rows.iter().map(|r| self.row(r)).collect::<Result<_>>()?)
            }
            Means::Arms(_) => Err(Error::Config(format!(
                "{} is an m-best experiment",
                self.name
            ))),
        }
    }

    fn row(&self, means: &[f64]) -> Result<BanditInstance> {
        BanditInstance::new(means.iter().map(|&v| self.distribution.build(v)).collect())
    }

    /// The multi-bandit task; m-best tasks are built per `m`.
    pub fn multi_task(&self) -> Result<Task> {
        Ok(Task::MultiBandit(self.multi_instance()?))
    }

    /// Explicit budget, or the suggested one over this config's `m_values`.
    pub fn resolve_budget(&self) -> Result<u64> {
        match self.budget {
            Budget::Fixed(n) => Ok(n),
            Budget::Auto if self.is_multi_bandit() => {
                suggest_budget_multibandit(&self.multi_instance()?)
            }
            Budget::Auto => suggest_budget(&self.instance()?, &self.m_values),
        }
    }

    /// Validates the config and runs its full sweep at the resolved budget.
    pub fn sweep(&self) -> Result<SweepResult> {
        self.validate()?;
        let n = self.resolve_budget()?;
        if self.is_multi_bandit() {
            sweep_multibandit(
                &self.name,
                &self.multi_task()?,
                &self.strategies,
                n,
                self.trials,
                self.seed,
            )
        } else {
            sweep_over_m(
                &self.name,
                &self.instance()?,
                &self.strategies,
                &self.m_values,
                n,
                self.trials,
                self.seed,
            )
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(invariant("name is non-empty", "got an empty name"));
        }
        let rows: Vec<&[f64]> = match &self.means {
            Means::Arms(r) => vec![r],
            Means::Problems(rs) => rs.iter().map(Vec::as_slice).collect(),
        };
        if rows.is_empty() {
            return Err(invariant("at least one problem", "means is empty"));
        }
        let k = rows[0].len();
        for (p, row) in rows.iter().enumerate() {
            if row.len() < 2 {
                return Err(invariant(
                    "at least 2 arms",
                    format!("row {p} has {}", row.len()),
                ));
            }
            if row.len() != k {
                return Err(invariant(
                    "all problems share one K",
                    format!("row {p} has {} arms, row 0 has {k}", row.len()),
                ));
            }
            if let Some((i, v)) = row
                .iter()
                .enumerate()
                .find(|(_, v)| !(0.0..=1.0).contains(*v))
            {
                return Err(invariant("means within [0,1]", format!("entry {i} = {v}")));
            }
        }
        if self.is_multi_bandit() {
            if !self.m_values.is_empty() && self.m_values != [1] {
                return Err(invariant(
                    "m_values absent or [1] for multi_bandit",
                    format!("got {:?}", self.m_values),
                ));
            }
        } else {
            if self.m_values.is_empty() {
                return Err(invariant("m_values non-empty", "got []"));
            }
            if let Some(m) = self.m_values.iter().find(|&&m| m == 0 || m >= k) {
                return Err(invariant(
                    "m_values within 1..K-1",
                    format!("m = {m} with K = {k}"),
                ));
            }
        }
        if self.trials == 0 {
            return Err(invariant("trials >= 1", "got 0"));
        }
        if self.seed > i64::MAX as u64 {
            return Err(invariant("seed <= 2^63 - 1", format!("got {}", self.seed)));
        }
        if let Budget::Fixed(0) = self.budget {
            return Err(invariant("budget positive", "got 0"));
        }
        if self.strategies.is_empty() {
            return Err(invariant("at least one strategy", "got []"));
        }
        for s in &self.strategies {
            if let StrategySpec::GapE { c, .. } = s {
                if !(*c > 0.0 && c.is_finite()) {
                    return Err(invariant(
                        "gap_e exploration parameter c > 0",
                        format!("c = {c}"),
                    ));
                }
            }
            if self.is_multi_bandit() && !matches!(s, StrategySpec::Sar | StrategySpec::Uniform) {
                return Err(invariant(
                    "multi_bandit strategies are sar or uniform",
                    format!("got {s}"),
                ));
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let config = raw.into_config()?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        let raw = RawConfig::from(self);
        toml::to_string(&raw).expect("config serializes to TOML")
    }
}

fn invariant(what: &str, detail: impl fmt::Display) -> Error {
    Error::Config(format!("invariant violated: {what} ({detail})"))
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    ExperimentConfig::from_toml_str(&text)
        .map_err(|e| Error::Config(format!("{}: {}", path.display(), strip_prefix(&e))))
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Config(msg) => msg.clone(),
        other => other.to_string(),
    }
}

pub fn parse_strategy(text: &str) -> Result<StrategySpec> {
    let t = text.trim();
    match t {
        "sar" => return Ok(StrategySpec::Sar),
        "sr" => return Ok(StrategySpec::Sr),
        "uniform" => return Ok(StrategySpec::Uniform),
        "gap_e" => return Ok(StrategySpec::gap_e(2.0)),
        _ => {}
    }
    let c = t
        .strip_prefix("gap_e(")
        .and_then(|rest| rest.strip_suffix(')'))
        .and_then(|inner| inner.trim().strip_prefix("c"))
        .and_then(|rest| rest.trim_start().strip_prefix('='))
        .and_then(|v| v.trim().parse::<f64>().ok())
        .ok_or_else(|| {
            Error::Config(format!(
                "unknown strategy {text:?}: expected sar, sr, uniform, gap_e or gap_e(c=<real>)"
            ))
        })?;
    Ok(StrategySpec::gap_e(c))
}

fn format_strategy(s: &StrategySpec) -> String {
    match s {
        StrategySpec::GapE { c, .. } => format!("gap_e(c={c})"),
        other => other.name().to_owned(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawMeans {
    Arms(Vec<f64>),
    Problems(Vec<Vec<f64>>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawBudget {
    Fixed(u64),
    Named(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: String,
    kind: String,
    #[serde(default)]
    distribution: Option<String>,
    means: RawMeans,
    #[serde(default)]
    m_values: Option<Vec<usize>>,
    #[serde(default)]
    budget: Option<RawBudget>,
    #[serde(default)]
    trials: Option<u64>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    strategies: Option<Vec<String>>,
}

impl RawConfig {
    fn into_config(self) -> Result<ExperimentConfig> {
        let means = match (self.kind.as_str(), self.means) {
            ("m_best", RawMeans::Arms(v)) => Means::Arms(v),
            ("multi_bandit", RawMeans::Problems(rows)) => Means::Problems(rows),
            ("m_best", RawMeans::Problems(_)) => {
                return Err(Error::Config(
                    "means: m_best expects a flat array of numbers".into(),
                ))
            }
            ("multi_bandit", RawMeans::Arms(_)) => {
                return Err(Error::Config(
                    "means: multi_bandit expects an array of rows".into(),
                ))
            }
            (other, _) => {
                return Err(Error::Config(format!(
                    "kind: unknown value {other:?}, expected \"m_best\" or \"multi_bandit\""
                )))
            }
        };
        let distribution = match self.distribution.as_deref() {
            None | Some("bernoulli") => DistributionKind::Bernoulli,
            Some("point_mass") => DistributionKind::PointMass,
            Some(other) => return Err(Error::Config(format!(
                "distribution: unknown value {other:?}, expected \"bernoulli\" or \"point_mass\""
            ))),
        };
        let budget = match self.budget {
            None => Budget::Auto,
            Some(RawBudget::Fixed(n)) => Budget::Fixed(n),
            Some(RawBudget::Named(s)) if s == "auto" => Budget::Auto,
            Some(RawBudget::Named(s)) => {
                return Err(Error::Config(format!(
                    "budget: expected \"auto\" or a positive integer, got {s:?}"
                )))
            }
        };
        let multi = matches!(means, Means::Problems(_));
        let m_values = match (self.m_values, &means) {
            (Some(v), _) => v,
            (None, Means::Arms(row)) => (1..row.len().max(1)).collect(),
            (None, Means::Problems(_)) => Vec::new(),
        };
        let strategies = match self.strategies {
            Some(names) => names
                .iter()
                .map(|s| parse_strategy(s))
                .collect::<Result<_>>()?,
            None if multi => vec![StrategySpec::Uniform, StrategySpec::Sar],
            None => default_strategies(),
        };
        Ok(ExperimentConfig {
            name: self.name,
            means,
            distribution,
            m_values,
            budget,
            trials: self.trials.unwrap_or(DEFAULT_TRIALS),
            seed: self.seed.unwrap_or(0),
            strategies,
        })
    }
}

impl From<&ExperimentConfig> for RawConfig {
    fn from(c: &ExperimentConfig) -> Self {
        RawConfig {
            name: c.name.clone(),
            kind: c.kind().to_owned(),
            distribution: Some(c.distribution.as_str().to_owned()),
            means: match &c.means {
                Means::Arms(v) => RawMeans::Arms(v.clone()),
                Means::Problems(rows) => RawMeans::Problems(rows.clone()),
            },
            m_values: (!c.is_multi_bandit()).then(|| c.m_values.clone()),
            budget: Some(match c.budget {
                Budget::Auto => RawBudget::Named("auto".into()),
                Budget::Fixed(n) => RawBudget::Fixed(n),
            }),
            trials: Some(c.trials),
            seed: Some(c.seed),
            strategies: Some(c.strategies.iter().map(format_strategy).collect()),
        }
    }
}

fn default_strategies() -> Vec<StrategySpec> {
    vec![
        StrategySpec::Uniform,
        StrategySpec::Sr,
        StrategySpec::Sar,
        StrategySpec::gap_e(2.0),
    ]
}

/// The six m-best experiments: Bernoulli arms, best mean 0.5, `m` from 2 to
/// `K - 1`, automatic budget.
pub fn builtin_experiments() -> Vec<ExperimentConfig> {
    let group = |k: usize, groups: &[(usize, usize, f64)]| -> Vec<f64> {
        let mut v = vec![0.5; k];
        for &(from, to, mu) in groups {
            v[from - 1..to].iter_mut().for_each(|x| *x = mu);
        }
        v
    };
    let progression = |k: usize, f: &dyn Fn(i32) -> f64| -> Vec<f64> {
        std::iter::once(0.5).chain((2..=k as i32).map(f)).collect()
    };
    let all = [
        ("exp1", group(20, &[(2, 20, 0.4)])),
        ("exp2", group(20, &[(2, 6, 0.42), (7, 20, 0.38)])),
        ("exp3", progression(4, &|i| 0.5 - 0.37f64.powi(i))),
        ("exp4", group(6, &[(2, 2, 0.42), (3, 4, 0.4), (5, 6, 0.35)])),
        ("exp5", progression(15, &|i| 0.5 - 0.025 * f64::from(i))),
        (
            "exp6",
            group(30, &[(2, 6, 0.45), (7, 20, 0.43), (21, 30, 0.38)]),
        ),
    ];
    all.into_iter()
        .enumerate()
        .map(|(i, (name, means))| ExperimentConfig {
            name: name.to_owned(),
            m_values: (2..means.len()).collect(),
            means: Means::Arms(means),
            distribution: DistributionKind::Bernoulli,
            budget: Budget::Auto,
            trials: DEFAULT_TRIALS,
            seed: i as u64 + 1,
            strategies: default_strategies(),
        })
        .collect()
}

/// Builtin experiment by 1-based number.
pub fn builtin_experiment(number: usize) -> Result<ExperimentConfig> {
    number
        .checked_sub(1)
        .and_then(|i| builtin_experiments().into_iter().nth(i))
        .ok_or_else(|| Error::Config(format!("no builtin experiment {number}; choose 1..6")))
}
