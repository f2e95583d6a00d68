//! Command implementations behind the `wyskew` binary.
//!
//! Every command returns a [`Report`]; the binary only parses flags, picks
//! an output format and maps errors to exit codes (2 for invalid input,
//! 3 for numerical failure).

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bounds::{self, BoundTable};
use crate::classify::{classify, DEFAULT_CERTIFICATION_MARGIN};
use crate::error::Error;
use crate::exec::Execution;
use crate::io::{self, IoError};
use crate::observables::{local_sum_operator, Axis, BlochVector, LocalObservableSet};
use crate::optimizer::{nonlocal_skew_information_with, OptimizerConfig};
use crate::skew::{pure_state_skew, skew_information};
use crate::states::{
    generalized_ghz, ghz_state, random_product_pure, werner_ghz, DensityMatrix, PureState,
    WernerGhzParams,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest register the dense sweep will build.
pub const MAX_SWEEP_QUBITS: u32 = 10;
/// Largest register the named state families will build.
pub const MAX_FAMILY_QUBITS: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] IoError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Core(e) | CliError::Io(IoError::Invalid(e)) if e.is_numerical() => 3,
            CliError::Core(_) | CliError::Io(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "ValidationError",
            CliError::Core(e) | CliError::Io(IoError::Invalid(e)) => e.kind(),
            CliError::Io(IoError::File { .. }) => "FileError",
            CliError::Io(IoError::Format(_)) => "FormatError",
        }
    }

    /// `{"error": {"kind", "message", "exit_code"}}`.
    pub fn to_json(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        })
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Parses `key=value,key=value` (or a bare value for the single `default` key).
fn parse_params(text: &str, default: &str) -> CliResult<Vec<(String, String)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|part| match part.split_once('=') {
            Some((k, v)) => Ok((k.trim().to_ascii_lowercase(), v.trim().to_string())),
            None => Ok((default.to_string(), part.trim().to_string())),
        })
        .collect()
}

fn param<T: std::str::FromStr>(params: &[(String, String)], key: &str) -> CliResult<T> {
    let raw = params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v)
        .ok_or_else(|| invalid(format!("missing parameter '{key}'")))?;
    raw.parse()
        .map_err(|_| invalid(format!("cannot parse {key}={raw}")))
}

fn reject_unknown(params: &[(String, String)], known: &[&str]) -> CliResult<()> {
    match params.iter().find(|(k, _)| !known.contains(&k.as_str())) {
        Some((k, _)) => Err(invalid(format!("unknown parameter '{k}'"))),
        None => Ok(()),
    }
}

/// Where the state comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Ghz { n: usize },
    GenGhz { alpha: f64 },
    Werner { n: usize, lambda: f64 },
    /// Random product of pure qubit states, drawn from the run seed.
    Product { n: usize },
    Bell,
    Custom(PathBuf),
}

impl StateSpec {
    /// `alpha=A`.
    pub fn parse_gen_ghz(text: &str) -> CliResult<Self> {
        let params = parse_params(text, "alpha")?;
        reject_unknown(&params, &["alpha"])?;
        Ok(StateSpec::GenGhz {
            alpha: param(&params, "alpha")?,
        })
    }

    /// `n=N,lambda=L`.
    pub fn parse_werner(text: &str) -> CliResult<Self> {
        let params = parse_params(text, "n")?;
        reject_unknown(&params, &["n", "lambda"])?;
        Ok(StateSpec::Werner {
            n: param(&params, "n")?,
            lambda: param(&params, "lambda")?,
        })
    }

    /// `n=N`.
    pub fn parse_product(text: &str) -> CliResult<Self> {
        let params = parse_params(text, "n")?;
        reject_unknown(&params, &["n"])?;
        Ok(StateSpec::Product {
            n: param(&params, "n")?,
        })
    }

    pub fn describe(&self) -> Value {
        match self {
            StateSpec::Ghz { n } => json!({"kind": "ghz", "n": n}),
            StateSpec::GenGhz { alpha } => json!({"kind": "gen_ghz", "alpha": alpha}),
            StateSpec::Werner { n, lambda } => json!({"kind": "werner", "n": n, "lambda": lambda}),
            StateSpec::Product { n } => json!({"kind": "product", "n": n}),
            StateSpec::Bell => json!({"kind": "bell"}),
            StateSpec::Custom(path) => json!({"kind": "custom", "path": path.display().to_string()}),
        }
    }

    fn check_family_size(n: usize) -> CliResult<()> {
        if n > MAX_FAMILY_QUBITS {
            return Err(invalid(format!(
                "{n} qubits exceeds the dense limit of {MAX_FAMILY_QUBITS}"
            )));
        }
        Ok(())
    }

    pub fn resolve(&self, seed: u64) -> CliResult<ResolvedState> {
        let pure = |p: PureState| ResolvedState {
            rho: p.density(),
            pure: Some(p),
        };
        Ok(match self {
            StateSpec::Ghz { n } => {
                Self::check_family_size(*n)?;
                pure(ghz_state(*n)?)
            }
            StateSpec::GenGhz { alpha } => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(invalid(format!("alpha = {alpha} must lie in (0, 1)")));
                }
                let beta = (1.0 - alpha * alpha).sqrt();
                pure(generalized_ghz(*alpha, beta)?)
            }
            StateSpec::Werner { n, lambda } => {
                Self::check_family_size(*n)?;
                ResolvedState {
                    rho: werner_ghz(WernerGhzParams::new(*n, *lambda)?),
                    pure: None,
                }
            }
            StateSpec::Product { n } => {
                Self::check_family_size(*n)?;
                pure(random_product_pure(*n, seed)?)
            }
            StateSpec::Bell => pure(ghz_state(2)?),
            StateSpec::Custom(path) => ResolvedState {
                rho: io::load_density(path)?,
                pure: None,
            },
        })
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedState {
    pub rho: DensityMatrix,
    pub pure: Option<PureState>,
}

impl ResolvedState {
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(io::density_to_json(&self.rho).as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn inputs(&self, spec: &StateSpec) -> Value {
        json!({
            "state": spec.describe(),
            "dims": self.rho.local_dims(),
            "digest": self.digest(),
        })
    }
}

/// One local observable per site.
#[derive(Debug, Clone, PartialEq)]
pub enum ObservableSpec {
    Axes(Vec<Axis>),
    Bloch(Vec<BlochVector>),
}

impl ObservableSpec {
    pub fn parse_axes(text: &str) -> CliResult<Self> {
        Ok(ObservableSpec::Axes(Axis::parse_list(text)?))
    }

    /// `x,y,z;x,y,z` with one unit vector per site.
    pub fn parse_bloch(text: &str) -> CliResult<Self> {
        let vectors = text
            .split(';')
            .map(|site| {
                let comps: Vec<f64> = site
                    .split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| invalid(format!("cannot parse Bloch vector '{site}'")))?;
                let arr: [f64; 3] = comps
                    .try_into()
                    .map_err(|_| invalid(format!("Bloch vector '{site}' needs 3 components")))?;
                Ok(BlochVector::new(arr)?)
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(ObservableSpec::Bloch(vectors))
    }

    fn len(&self) -> usize {
        match self {
            ObservableSpec::Axes(a) => a.len(),
            ObservableSpec::Bloch(b) => b.len(),
        }
    }

    fn to_set(&self) -> CliResult<LocalObservableSet> {
        Ok(match self {
            ObservableSpec::Axes(a) => LocalObservableSet::from_axes(a)?,
            ObservableSpec::Bloch(b) => LocalObservableSet::from_bloch(b)?,
        })
    }

    fn describe(&self) -> Value {
        match self {
            ObservableSpec::Axes(a) => json!({"axes": a.iter().map(|x| x.as_char()).collect::<String>()}),
            ObservableSpec::Bloch(b) => json!({"bloch": b}),
        }
    }
}

/// `{command, inputs, results, diagnostics, version, seed}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Value,
    pub version: String,
    pub seed: u64,
}

impl Report {
    fn new(command: &str, inputs: Value, results: Value, diagnostics: Value, seed: u64) -> Self {
        Self {
            command: command.into(),
            inputs,
            results,
            diagnostics,
            version: VERSION.into(),
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Row table for `results.rows`, otherwise `key,value` lines for the
    /// scalar entries of `results`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(rows) = self.results.get("rows").and_then(Value::as_array) {
            let columns: Vec<String> = rows
                .first()
                .and_then(Value::as_object)
                .map(|o| o.keys().cloned().collect())
                .unwrap_or_default();
            out.push_str(&columns.join(","));
            out.push('\n');
            for row in rows {
                let cells: Vec<String> = columns.iter().map(|c| csv_cell(&row[c])).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        } else if let Some(obj) = self.results.as_object() {
            out.push_str("key,value\n");
            for (k, v) in obj {
                if !v.is_object() && !v.is_array() {
                    out.push_str(&format!("{k},{}\n", csv_cell(v)));
                }
            }
        }
        out
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn cmd_skew(spec: &StateSpec, observables: &ObservableSpec, seed: u64) -> CliResult<Report> {
    let state = spec.resolve(seed)?;
    let n = state.rho.num_sites();
    if observables.len() != n {
        return Err(invalid(format!(
            "{} observables given for {n} sites",
            observables.len()
        )));
    }
    if state.rho.local_dims().iter().any(|&d| d != 2) {
        return Err(invalid("axis and Bloch observables need qubit sites"));
    }
    let a = local_sum_operator(&observables.to_set()?)?;
    let result = skew_information(&state.rho, &a)?;
    let mut diagnostics = json!({});
    if let Some(psi) = &state.pure {
        let variance = pure_state_skew(psi, &a)?;
        diagnostics["pure_variance"] = json!(variance.value);
    }
    let mut inputs = state.inputs(spec);
    inputs["observables"] = observables.describe();
    Ok(Report::new(
        "skew",
        inputs,
        json!({
            "value": result.value,
            "form_used": result.form_used,
            "n": n,
            "separable_bound": n,
            "violates_separable_bound": result.value > n as f64 + DEFAULT_CERTIFICATION_MARGIN,
        }),
        diagnostics,
        seed,
    ))
}

fn optimizer_json(cfg: &OptimizerConfig) -> Value {
    serde_json::to_value(cfg).expect("config serializes")
}

pub fn cmd_nonlocal(spec: &StateSpec, config: &OptimizerConfig, execution: Execution) -> CliResult<Report> {
    let state = spec.resolve(config.seed)?;
    let result = nonlocal_skew_information_with(&state.rho, config, execution)?;
    let n = state.rho.num_sites();
    let mut inputs = state.inputs(spec);
    inputs["optimizer"] = optimizer_json(config);
    Ok(Report::new(
        "nonlocal",
        inputs,
        json!({
            "value": result.value,
            "n": n,
            "best_observables": result.best_observables,
            "best_angles": result.best_angles,
        }),
        json!({
            "converged": result.converged,
            "starts_evaluated": result.starts_evaluated,
            "best_start": result.best_start,
            "trace": result.trace,
        }),
        config.seed,
    ))
}

pub fn cmd_classify(
    spec: &StateSpec,
    config: &OptimizerConfig,
    margin: f64,
    execution: Execution,
) -> CliResult<Report> {
    let state = spec.resolve(config.seed)?;
    let n = state.rho.num_sites();
    if n < 2 {
        return Err(invalid("classification needs at least two sites"));
    }
    let result = nonlocal_skew_information_with(&state.rho, config, execution)?;
    let verdict = classify(result.value, n as u64, margin)?;
    let mut inputs = state.inputs(spec);
    inputs["optimizer"] = optimizer_json(config);
    inputs["margin"] = json!(margin);
    Ok(Report::new(
        "classify",
        inputs,
        json!({
            "i_value": verdict.i_value,
            "n": n,
            "certified_min_class": verdict.certified_min_class,
            "fully_entangled_certified": verdict.fully_entangled_certified,
            "thresholds": verdict.thresholds.values(),
            "best_observables": result.best_observables,
            "statement": format!(
                "certified at least {}-entangled (class 1 certifies nothing)",
                verdict.certified_min_class
            ),
        }),
        json!({
            "converged": result.converged,
            "starts_evaluated": result.starts_evaluated,
            "best_start": result.best_start,
        }),
        config.seed,
    ))
}

pub fn cmd_bounds(n: u32) -> CliResult<Report> {
    if !(1..=1024).contains(&n) {
        return Err(invalid(format!("n = {n} must lie in [1, 1024]")));
    }
    let table = BoundTable::new(u64::from(n))?;
    let mut results = json!({
        "n": n,
        "e": table.values(),
    });
    if n >= 2 {
        let lambda_n = bounds::lambda_threshold(n);
        let lambda_0 = bounds::werner_separability_threshold(n);
        results["lambda_n"] = json!(lambda_n);
        results["lambda_n_bisection"] = json!(bounds::lambda_threshold_by_bisection(n, 1e-13));
        results["lambda_0"] = json!(lambda_0);
        results["werner_at_lambda_0"] = json!(bounds::werner_closed_form(n, lambda_0));
        results["werner_at_lambda_n"] = json!(bounds::werner_closed_form(n, lambda_n));
    }
    if n >= 8 {
        results["lambda_bracket"] = serde_json::to_value(bounds::lambda_bracket_check(n)?)
            .expect("bracket serializes");
    }
    if n == 3 {
        let t = bounds::reference_comparison();
        results["table_one"] = json!({
            "classes": ["ES_1", "ES_2", "ES_3"],
            "mk": t.mk,
            "mk_quoted": ["1", "√2", "2"],
            "bi2": t.bi2,
            "bi2_quoted": ["8", "8", "16"],
            "wy": t.wy,
        });
        results["gen_ghz_detection_threshold"] = json!(bounds::gen_ghz_detection_threshold());
    }
    Ok(Report::new("bounds", json!({"n": n}), results, json!({}), 0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub closed_form: f64,
    pub direct_sigma_z: f64,
    pub lambda_n: f64,
    pub lambda_0: f64,
    pub exceeds_separable: bool,
}

/// Werner-like GHZ sweep over `points` evenly spaced `λ ∈ [0, 1]`.
pub fn werner_sweep(n: u32, points: usize, execution: Execution) -> CliResult<Vec<SweepRow>> {
    if !(2..=MAX_SWEEP_QUBITS).contains(&n) {
        return Err(invalid(format!("sweep needs 2 <= n <= {MAX_SWEEP_QUBITS}, got {n}")));
    }
    if points < 2 {
        return Err(invalid("sweep needs at least 2 points"));
    }
    let lambda_n = bounds::lambda_threshold(n);
    let lambda_0 = bounds::werner_separability_threshold(n);
    let sites = n as usize;
    let a = local_sum_operator(&LocalObservableSet::from_axes(&vec![Axis::Z; sites])?)?;
    let rows = execution.map_range(points, |i| -> CliResult<SweepRow> {
        let lambda = i as f64 / (points - 1) as f64;
        let rho = werner_ghz(WernerGhzParams::new(sites, lambda)?);
        let direct = skew_information(&rho, &a)?.value;
        Ok(SweepRow {
            lambda,
            closed_form: bounds::werner_closed_form(n, lambda),
            direct_sigma_z: direct,
            lambda_n,
            lambda_0,
            exceeds_separable: direct > f64::from(n) + DEFAULT_CERTIFICATION_MARGIN,
        })
    });
    rows.into_iter().collect()
}

pub fn cmd_sweep(family: &str, params: &str, points: usize, execution: Execution) -> CliResult<Report> {
    if family != "werner" {
        return Err(invalid(format!("unknown sweep family '{family}' (expected 'werner')")));
    }
    let parsed = parse_params(params, "n")?;
    reject_unknown(&parsed, &["n"])?;
    let n: u32 = param(&parsed, "n")?;
    let rows = werner_sweep(n, points, execution)?;
    let max_gap = rows
        .iter()
        .map(|r| (r.closed_form - r.direct_sigma_z).abs())
        .fold(0.0, f64::max);
    Ok(Report::new(
        "sweep",
        json!({"family": family, "n": n, "points": points}),
        json!({"rows": rows}),
        json!({"max_closed_form_gap": max_gap}),
        0,
    ))
}

/// Resolves a state and returns its density-matrix file text.
pub fn cmd_export(spec: &StateSpec, seed: u64) -> CliResult<String> {
    Ok(io::density_to_json(&spec.resolve(seed)?.rho))
}
