//! Subcommand implementations. Each command computes a serializable result
//! from its configuration alone, then renders it; replay reuses `compute`.

use std::fmt::Write as _;
use std::path::Path;

use expcomp::estimation::fit as fit_model;
use expcomp::gof::score;
use expcomp::simulation::{paper_scenarios, run_scenario_with};
use expcomp::{
    build, compare as rank_rows, Density, FitResult, FittedParams, GofRow, ModelId, Scenario,
    SimulationReport,
};
use serde::Serialize;

use crate::args::{Command, CompareArgs, DensityArgs, FitArgs, SimulateArgs};
use crate::dataset::{ingest_csv, ClaimsDataset, ColumnSelector};
use crate::error::{CliError, CliResult};
use crate::literature::reference_rows;

#[derive(Debug, Clone, Serialize)]
pub struct FitOutput {
    pub dataset: String,
    pub scale_note: String,
    pub fit: FitResult<f64>,
    pub gof: GofRow<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    /// Position under the chosen criterion; absent for failed and literature rows.
    pub rank: Option<usize>,
    pub model: String,
    /// `fitted`, `failed` or `literature`.
    pub source: &'static str,
    pub p: usize,
    pub nll: Option<f64>,
    pub aic: Option<f64>,
    pub bic: Option<f64>,
    pub aicc: Option<f64>,
    pub caic: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareOutput {
    pub dataset: String,
    pub n: usize,
    pub criterion: String,
    pub rows: Vec<CompareRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulateOutput {
    pub reports: Vec<SimulationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityPoint {
    pub y: f64,
    pub pdf: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cdf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limited_moment: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityOutput {
    pub model: ModelId,
    pub theta: f64,
    pub eta: f64,
    pub points: Vec<DensityPoint>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Output {
    Fit(FitOutput),
    Compare(CompareOutput),
    Simulate(SimulateOutput),
    Density(DensityOutput),
}

fn load(input: &crate::args::InputArgs) -> CliResult<ClaimsDataset> {
    ingest_csv(
        &input.path,
        &ColumnSelector::parse(&input.column),
        input.scale,
    )
}

pub fn compute(cmd: &Command) -> CliResult<Output> {
    Ok(match cmd {
        Command::Fit(a) => Output::Fit(compute_fit(a)?),
        Command::Compare(a) => Output::Compare(compute_compare(a)?),
        Command::Simulate(a) => Output::Simulate(compute_simulate(a)?),
        Command::Density(a) => Output::Density(compute_density(a)?),
        Command::Replay(_) => return Err(CliError::Usage("replay cannot be replayed".into())),
    })
}

fn compute_fit(a: &FitArgs) -> CliResult<FitOutput> {
    let data = load(&a.input)?;
    let grid = a.grid.grid()?;
    let fit = fit_model(a.model, &data.values, &grid).map_err(|e| CliError::Fit(e.to_string()))?;
    let gof = score(&fit).map_err(|e| CliError::Fit(e.to_string()))?;
    Ok(FitOutput {
        dataset: data.name,
        scale_note: data.scale_note,
        fit,
        gof,
    })
}

fn compute_compare(a: &CompareArgs) -> CliResult<CompareOutput> {
    let models: Vec<ModelId> = if a.models.is_empty() {
        ModelId::ALL.to_vec()
    } else {
        a.models.clone()
    };
    if models.len() < 2 {
        return Err(CliError::Usage("compare needs at least two models".into()));
    }
    let data = load(&a.input)?;
    let grid = a.grid.grid()?;
    let mut scored = Vec::new();
    let mut failed = Vec::new();
    for &m in &models {
        match fit_model(m, &data.values, &grid).and_then(|f| score(&f)) {
            Ok(row) => scored.push(row),
            Err(e) => failed.push(CompareRow {
                rank: None,
                model: m.to_string(),
                source: "failed",
                p: m.param_count(),
                nll: None,
                aic: None,
                bic: None,
                aicc: None,
                caic: None,
                note: e.to_string(),
            }),
        }
    }
    if scored.is_empty() {
        return Err(CliError::Fit("every model failed to fit".into()));
    }
    let mut rows: Vec<CompareRow> = rank_rows(scored, a.criterion)
        .into_iter()
        .enumerate()
        .map(|(i, r)| CompareRow {
            rank: Some(i + 1),
            model: r.model.to_string(),
            source: "fitted",
            p: r.p,
            nll: Some(r.nll),
            aic: Some(r.aic),
            bic: Some(r.bic),
            aicc: Some(r.aicc),
            caic: Some(r.caic),
            note: r.model.label().to_string(),
        })
        .collect();
    rows.extend(failed);
    if let Some(which) = a.literature {
        rows.extend(reference_rows(which).iter().map(|r| CompareRow {
            rank: None,
            model: r.label.to_string(),
            source: "literature",
            p: r.p,
            nll: Some(r.nll),
            aic: Some(r.aic),
            bic: Some(r.bic),
            aicc: Some(r.aicc),
            caic: Some(r.caic),
            note: format!("published value for the {which:?} data, not computed"),
        }));
    }
    Ok(CompareOutput {
        dataset: data.name,
        n: data.values.len(),
        criterion: a.criterion.to_string(),
        rows,
    })
}

fn compute_simulate(a: &SimulateArgs) -> CliResult<SimulateOutput> {
    let grid = a.grid.grid()?;
    let scenarios = if a.paper_tables {
        paper_scenarios(a.seed, a.r)
    } else {
        let missing = || CliError::Usage("--eta, --theta and --n are required".into());
        vec![Scenario {
            model: a.model,
            eta: a.eta.ok_or_else(missing)?,
            theta: a.theta.ok_or_else(missing)?,
            n: a.n.ok_or_else(missing)?,
            replicates: a.r,
            base_seed: a.seed,
        }]
    };
    let reports = scenarios
        .iter()
        .map(|s| run_scenario_with(s, &grid))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimulateOutput { reports })
}

fn compute_density(a: &DensityArgs) -> CliResult<DensityOutput> {
    if !(a.from >= 0.0 && a.to > a.from && a.to.is_finite()) {
        return Err(CliError::Usage(format!(
            "invalid range: need 0 <= from < to, got [{}, {}]",
            a.from, a.to
        )));
    }
    if a.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if a.log_spaced && a.from <= 0.0 {
        return Err(CliError::Usage("--log-spaced needs --from > 0".into()));
    }
    let model = build(a.model, a.theta, a.eta)?;
    let last = (a.points - 1) as f64;
    let mut points = Vec::with_capacity(a.points);
    for i in 0..a.points {
        let s = i as f64 / last;
        let y = if a.log_spaced {
            (a.from.ln() + s * (a.to.ln() - a.from.ln())).exp()
        } else {
            a.from + s * (a.to - a.from)
        };
        let limited_moment = match a.limited_moment {
            Some(t) if y > 0.0 => Some(model.limited_moment(t, y)?),
            Some(_) => Some(0.0),
            None => None,
        };
        points.push(DensityPoint {
            y,
            pdf: model.pdf(y),
            cdf: a.cdf.then(|| model.cdf(y)),
            limited_moment,
        });
    }
    Ok(DensityOutput {
        model: a.model,
        theta: a.theta,
        eta: a.eta,
        points,
    })
}

fn fmt_opt(v: Option<f64>, digits: usize) -> String {
    v.map(|x| format!("{x:.digits$}"))
        .unwrap_or_else(|| "-".into())
}

/// Human-readable rendering for standard output.
pub fn render_table(out: &Output) -> String {
    let mut s = String::new();
    match out {
        Output::Fit(f) => {
            let _ = writeln!(
                s,
                "dataset   {} (n = {}, values {})",
                f.dataset, f.fit.n, f.scale_note
            );
            let _ = writeln!(s, "model     {} ({})", f.fit.model, f.fit.model.label());
            match f.fit.params {
                FittedParams::Composite { theta, eta, split } => {
                    let fixed = if f.fit.model.has_free_eta() {
                        ""
                    } else {
                        " (fixed)"
                    };
                    let _ = writeln!(s, "theta     {theta:.6}");
                    let _ = writeln!(s, "eta       {eta:.6}{fixed}");
                    let _ = writeln!(s, "m         {split}");
                }
                FittedParams::Weibull { shape, scale }
                | FittedParams::InverseGamma { shape, scale } => {
                    let _ = writeln!(s, "shape     {shape:.6}");
                    let _ = writeln!(s, "scale     {scale:.6}");
                }
            }
            let g = &f.gof;
            let _ = writeln!(s, "NLL       {:.4}", g.nll);
            let _ = writeln!(s, "AIC       {:.4}", g.aic);
            let _ = writeln!(s, "BIC       {:.4}", g.bic);
            let _ = writeln!(s, "AICc      {:.4}", g.aicc);
            let _ = writeln!(s, "CAIC      {:.4}", g.caic);
        }
        Output::Compare(c) => {
            let _ = writeln!(
                s,
                "dataset {} (n = {}), ranked by {}",
                c.dataset, c.n, c.criterion
            );
            let _ = writeln!(
                s,
                "{:>4}  {:<42} {:>2} {:>12} {:>12} {:>12} {:>12} {:>12}  source",
                "rank", "model", "p", "NLL", "AIC", "BIC", "AICc", "CAIC"
            );
            for r in &c.rows {
                let rank = r.rank.map(|k| k.to_string()).unwrap_or_else(|| "-".into());
                let name = if r.source == "literature" {
                    r.model.clone()
                } else {
                    format!("{} [{}]", r.model, r.note)
                };
                let mut name = name;
                name.truncate(42);
                let _ = writeln!(
                    s,
                    "{rank:>4}  {name:<42} {:>2} {:>12} {:>12} {:>12} {:>12} {:>12}  {}",
                    r.p,
                    fmt_opt(r.nll, 3),
                    fmt_opt(r.aic, 3),
                    fmt_opt(r.bic, 3),
                    fmt_opt(r.aicc, 3),
                    fmt_opt(r.caic, 3),
                    r.source
                );
                if r.source == "failed" {
                    let _ = writeln!(s, "      {}", r.note);
                }
            }
            if c.rows.iter().any(|r| r.source == "literature") {
                let _ = writeln!(
                    s,
                    "literature rows are published values for models not implemented here"
                );
            }
        }
        Output::Simulate(sim) => {
            let _ = writeln!(
                s,
                "{:<16} {:>6} {:>6} {:>5} {:>6} {:>10} {:>9} {:>10} {:>9} {:>8}",
                "model",
                "eta",
                "theta",
                "n",
                "r",
                "eta_mean",
                "eta_sd",
                "theta_mean",
                "theta_sd",
                "failures"
            );
            for r in &sim.reports {
                let sc = &r.scenario;
                let _ = writeln!(
                    s,
                    "{:<16} {:>6} {:>6} {:>5} {:>6} {:>10.6} {:>9.6} {:>10.6} {:>9.6} {:>8}",
                    sc.model.to_string(),
                    sc.eta,
                    sc.theta,
                    sc.n,
                    sc.replicates,
                    r.eta_mean,
                    r.eta_sd,
                    r.theta_mean,
                    r.theta_sd,
                    r.failures
                );
            }
        }
        Output::Density(d) => s = density_csv(d),
    }
    s
}

fn density_csv(d: &DensityOutput) -> String {
    let mut s = String::from("y,pdf");
    let has_cdf = d.points.first().is_some_and(|p| p.cdf.is_some());
    let has_lm = d.points.first().is_some_and(|p| p.limited_moment.is_some());
    if has_cdf {
        s.push_str(",cdf");
    }
    if has_lm {
        s.push_str(",limited_moment");
    }
    s.push('\n');
    for p in &d.points {
        let _ = write!(s, "{},{}", p.y, p.pdf);
        if let Some(c) = p.cdf {
            let _ = write!(s, ",{c}");
        }
        if let Some(l) = p.limited_moment {
            let _ = write!(s, ",{l}");
        }
        s.push('\n');
    }
    s
}

fn opt_csv(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Machine-readable CSV. Numbers use the shortest round-trip form, so
/// identical results give identical bytes.
pub fn render_csv(out: &Output) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Usage(format!("writing CSV: {e}"));
    match out {
        Output::Fit(f) => {
            w.write_record([
                "model", "theta", "eta", "m", "shape", "scale", "n", "p", "nll", "aic", "bic",
                "aicc", "caic",
            ])
            .map_err(csv_err)?;
            let (theta, eta, m, shape, scale) = match f.fit.params {
                FittedParams::Composite { theta, eta, split } => {
                    (Some(theta), Some(eta), split.to_string(), None, None)
                }
                FittedParams::Weibull { shape, scale }
                | FittedParams::InverseGamma { shape, scale } => {
                    (None, None, String::new(), Some(shape), Some(scale))
                }
            };
            let g = &f.gof;
            w.write_record([
                f.fit.model.to_string(),
                opt_csv(theta),
                opt_csv(eta),
                m,
                opt_csv(shape),
                opt_csv(scale),
                f.fit.n.to_string(),
                f.fit.p.to_string(),
                g.nll.to_string(),
                g.aic.to_string(),
                g.bic.to_string(),
                g.aicc.to_string(),
                g.caic.to_string(),
            ])
            .map_err(csv_err)?;
        }
        Output::Compare(c) => {
            w.write_record([
                "rank", "model", "source", "p", "nll", "aic", "bic", "aicc", "caic", "note",
            ])
            .map_err(csv_err)?;
            for r in &c.rows {
                w.write_record([
                    r.rank.map(|k| k.to_string()).unwrap_or_default(),
                    r.model.clone(),
                    r.source.to_string(),
                    r.p.to_string(),
                    opt_csv(r.nll),
                    opt_csv(r.aic),
                    opt_csv(r.bic),
                    opt_csv(r.aicc),
                    opt_csv(r.caic),
                    r.note.clone(),
                ])
                .map_err(csv_err)?;
            }
        }
        Output::Simulate(sim) => {
            w.write_record([
                "model",
                "eta",
                "theta",
                "n",
                "replicates",
                "base_seed",
                "eta_mean",
                "eta_sd",
                "theta_mean",
                "theta_sd",
                "failures",
            ])
            .map_err(csv_err)?;
            for r in &sim.reports {
                let sc = &r.scenario;
                w.write_record([
                    sc.model.to_string(),
                    sc.eta.to_string(),
                    sc.theta.to_string(),
                    sc.n.to_string(),
                    sc.replicates.to_string(),
                    sc.base_seed.to_string(),
                    r.eta_mean.to_string(),
                    r.eta_sd.to_string(),
                    r.theta_mean.to_string(),
                    r.theta_sd.to_string(),
                    r.failures.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
        Output::Density(d) => return Ok(density_csv(d)),
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Usage(format!("writing CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
