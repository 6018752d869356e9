//! Suite configuration, per-instance reporting, and deterministic report
//! serialization for the verification harness.

pub mod checks;
pub mod oracle;

pub use checks::{all_checks, CheckOutcome};
pub use oracle::{oracle_discrete_fubini, oracle_discrete_fubini_mod};

use crate::convspace::{enumerate_spaces, AxiomMode, ConvSpace};
use crate::convvect::Limits;
use crate::error::{Error, Result};
use crate::monadlab::{check_commutative, fubini_instance};
use crate::scalars::Field;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Serializable choice of convergence axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomChoice {
    Limit,
    DownOnly,
}

impl AxiomChoice {
    pub fn mode(self) -> AxiomMode {
        match self {
            AxiomChoice::Limit => AxiomMode::Limit,
            AxiomChoice::DownOnly => AxiomMode::DownOnly,
        }
    }
}

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Every check.
    All,
    /// Agreement with the independent double-sum oracle only.
    Oracle,
    /// The commutativity-related checks.
    Commute,
    /// The structural law checks.
    Laws,
}

/// Full configuration of a suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Prime order of the scalar field.
    pub field: u64,
    /// Largest carrier of the enumerated base spaces.
    pub max_size: usize,
    pub axioms: AxiomChoice,
    /// Largest admissible vector-space carrier.
    pub max_carrier: usize,
    /// Completion iteration budget.
    pub iteration_budget: usize,
    pub suite: Suite,
    /// Worker thread count; 0 picks the rayon default.
    pub jobs: usize,
    /// Seed for the randomized oracle instances.
    pub seed: u64,
    /// Optional report output path.
    pub out: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            field: 2,
            max_size: 2,
            axioms: AxiomChoice::Limit,
            max_carrier: 64,
            iteration_budget: 8,
            suite: Suite::All,
            jobs: 0,
            seed: 0,
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            max_carrier: self.max_carrier,
            iteration_budget: self.iteration_budget,
        }
    }

    fn validate(&self) -> Result<()> {
        Field::new(self.field)?;
        if self.max_carrier == 0 || self.max_carrier > 64 {
            return Err(Error::Invalid(format!(
                "max_carrier must be between 1 and 64, got {}",
                self.max_carrier
            )));
        }
        if self.iteration_budget == 0 {
            return Err(Error::Invalid("iteration_budget must be positive".into()));
        }
        Ok(())
    }
}

/// The checks belonging to each suite, by name.
fn suite_names(suite: Suite) -> &'static [&'static str] {
    match suite {
        Suite::All => &[
            "cartesian-closedness",
            "free-adjunction",
            "strong-monoidal",
            "monad-laws",
            "tensor-vs-iterated",
            "retraction-identity",
            "main-implication",
            "chain-localization",
            "enrichment-roundtrip",
            "oracle-agreement",
        ],
        Suite::Oracle => &["oracle-agreement"],
        Suite::Commute => &[
            "tensor-vs-iterated",
            "main-implication",
            "chain-localization",
            "enrichment-roundtrip",
        ],
        Suite::Laws => &[
            "cartesian-closedness",
            "free-adjunction",
            "strong-monoidal",
            "monad-laws",
            "retraction-identity",
        ],
    }
}

/// A full suite run: the configuration echo, per-instance verdict records,
/// the selected check outcomes, and summary tallies. The wall-clock timing
/// is kept out of the serialized form so report bytes are deterministic.
#[derive(Debug, Clone, Serialize)]
pub struct FubiniReport {
    pub config: SuiteConfig,
    /// The seed actually used (after any environment override).
    pub effective_seed: u64,
    pub instances: Vec<Value>,
    pub checks: Vec<CheckOutcome>,
    pub summary: Value,
    #[serde(skip)]
    pub timing_ms: u128,
}

impl FubiniReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One JSON object per line: each instance record, then the summary.
    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = String::new();
        for inst in &self.instances {
            out.push_str(&serde_json::to_string(inst)?);
            out.push('\n');
        }
        let tail = json!({
            "config": serde_json::to_value(&self.config)?,
            "effective_seed": self.effective_seed,
            "checks": serde_json::to_value(&self.checks)?,
            "summary": self.summary,
        });
        out.push_str(&serde_json::to_string(&tail)?);
        out.push('\n');
        Ok(out)
    }
}

/// Runs the configured suite. Instance records are computed in parallel
/// and re-sorted, so the report is byte-identical across thread counts.
pub fn run_suite(config: &SuiteConfig) -> Result<FubiniReport> {
    config.validate()?;
    let start = std::time::Instant::now();
    let mut config = config.clone();
    if let Ok(s) = std::env::var("FUBINILAB_SEED") {
        config.seed = s
            .parse()
            .map_err(|_| Error::Invalid(format!("bad FUBINILAB_SEED value {s:?}")))?;
    }
    let field = Field::new(config.field)?;
    let limits = config.limits();
    let uni = enumerate_spaces(config.max_size, config.axioms.mode())?;

    let run = |cfg: &SuiteConfig| -> Result<(Vec<Value>, Vec<CheckOutcome>)> {
        let pairs: Vec<(usize, usize)> = (0..uni.len())
            .flat_map(|i| (0..uni.len()).map(move |j| (i, j)))
            .collect();
        let mut instances: Vec<(usize, usize, Value)> = pairs
            .par_iter()
            .map(|&(i, j)| -> Result<(usize, usize, Value)> {
                let record = instance_record(&uni[i], &uni[j], &field, &limits)?;
                Ok((i, j, record))
            })
            .collect::<Result<Vec<_>>>()?;
        instances.sort_by_key(|&(i, j, _)| (i, j));
        let wanted = suite_names(cfg.suite);
        let checks: Vec<CheckOutcome> = checks::all_checks(cfg)
            .into_iter()
            .filter(|c| wanted.contains(&c.name.as_str()))
            .collect();
        Ok((instances.into_iter().map(|(_, _, v)| v).collect(), checks))
    };

    let (instances, checks) = if config.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(|| run(&config))?
    } else {
        run(&config)?
    };

    let evaluated = instances
        .iter()
        .filter(|v| v["status"] == "evaluated")
        .count();
    let skipped = instances.len() - evaluated;
    let equal = instances.iter().filter(|v| v["equal"] == true).count();
    let failed_checks = checks.iter().filter(|c| !c.passed).count();
    let summary = json!({
        "instances": instances.len(),
        "evaluated": evaluated,
        "skipped": skipped,
        "equal": equal,
        "checks": checks.len(),
        "failed_checks": failed_checks,
    });
    Ok(FubiniReport {
        effective_seed: config.seed,
        config,
        instances,
        checks,
        summary,
        timing_ms: start.elapsed().as_millis(),
    })
}

/// The per-pair record: either a full commutativity verdict or a skip
/// marker when the instance exceeds the carrier bounds.
fn instance_record(
    x: &ConvSpace,
    y: &ConvSpace,
    field: &Field,
    limits: &Limits,
) -> Result<Value> {
    match fubini_instance(x, y, field, limits) {
        Ok(inst) => {
            let verdict = check_commutative(&inst, limits)?;
            let mut v = serde_json::to_value(&verdict)?;
            v["status"] = json!("evaluated");
            Ok(v)
        }
        Err(Error::BoundExceeded(msg)) => Ok(json!({
            "X": x.to_json(),
            "Y": y.to_json(),
            "status": "skipped",
            "reason": msg,
        })),
        Err(e) => Err(e),
    }
}

/// A plain-text account of one instance: carriers, reflexivity verdicts,
/// both tensor tables, and the first differing entry if any.
pub fn explain_instance(x: &ConvSpace, y: &ConvSpace, config: &SuiteConfig) -> Result<String> {
    config.validate()?;
    let field = Field::new(config.field)?;
    let limits = config.limits();
    let inst = fubini_instance(x, y, &field, &limits)?;
    let verdict = check_commutative(&inst, &limits)?;
    let mut out = String::new();
    out.push_str(&format!(
        "X: {} points, Y: {} points, Z = X x Y: {} points over F{}\n",
        x.points(),
        y.points(),
        inst.prod.space.points(),
        field.order()
    ));
    out.push_str(&format!(
        "distribution carriers: |DX| = {}, |DY| = {}, |DZ| = {}\n",
        inst.dx.points(),
        inst.dy.points(),
        inst.dz.points()
    ));
    out.push_str(&format!(
        "reflexive cotensors: [X,R] {}, [Y,R] {}, [Z,R] {}\n",
        verdict.reflexive.x, verdict.reflexive.y, verdict.reflexive.xy
    ));
    out.push_str("tensor tables (rows mu, columns nu):\n");
    let mut first_diff = None;
    for mu in 0..inst.dx.points() {
        let mut row_a = Vec::with_capacity(inst.dy.points());
        let mut row_b = Vec::with_capacity(inst.dy.points());
        for nu in 0..inst.dy.points() {
            let a = inst.otimes(mu, nu);
            let b = inst.otimes_tilde(mu, nu);
            if a != b && first_diff.is_none() {
                first_diff = Some((mu, nu, a, b));
            }
            row_a.push(a.to_string());
            row_b.push(b.to_string());
        }
        out.push_str(&format!(
            "  mu={mu}: otimes [{}]  otimes~ [{}]\n",
            row_a.join(" "),
            row_b.join(" ")
        ));
    }
    match first_diff {
        Some((mu, nu, a, b)) => out.push_str(&format!(
            "first difference at (mu={mu}, nu={nu}): {a} vs {b}\n"
        )),
        None => out.push_str("tables agree on every pair of distributions\n"),
    }
    out.push_str(&format!("implication holds: {}\n", verdict.implication_holds));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            max_size: 1,
            suite: Suite::Oracle,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn zero_size_universe_is_just_the_empty_space() {
        let cfg = SuiteConfig { max_size: 0, ..small() };
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.instances.len(), 1);
        assert!(report.all_passed());
    }

    #[test]
    fn report_data_is_deterministic_across_thread_counts() {
        let one = run_suite(&SuiteConfig { jobs: 1, ..small() }).unwrap();
        let four = run_suite(&SuiteConfig { jobs: 4, ..small() }).unwrap();
        assert_eq!(one.instances, four.instances);
        assert_eq!(
            serde_json::to_value(&one.checks).unwrap(),
            serde_json::to_value(&four.checks).unwrap()
        );
        assert_eq!(one.summary, four.summary);
    }

    #[test]
    fn oracle_suite_passes_on_singletons() {
        let report = run_suite(&small()).unwrap();
        assert!(report.all_passed(), "{:?}", report.checks);
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].name, "oracle-agreement");
    }

    #[test]
    fn invalid_config_is_rejected() {
        assert!(run_suite(&SuiteConfig { field: 4, ..small() }).is_err());
        assert!(run_suite(&SuiteConfig { max_carrier: 0, ..small() }).is_err());
        assert!(run_suite(&SuiteConfig { iteration_budget: 0, ..small() }).is_err());
    }

    #[test]
    fn explain_reports_agreement_on_discrete_pair() {
        let cfg = SuiteConfig::default();
        let x = ConvSpace::discrete(2, AxiomMode::Limit);
        let y = ConvSpace::discrete(1, AxiomMode::Limit);
        let text = explain_instance(&x, &y, &cfg).unwrap();
        assert!(text.contains("tables agree"));
        assert!(text.contains("implication holds: true"));
    }
}
