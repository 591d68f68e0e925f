//! Whole-corpus comparison runs.
//!
//! A [`RunConfig`] names the algorithms and dial settings to compare;
//! [`run_experiment`] expands it into one row per instance and
//! configuration, generates and verifies each suite, and collects metrics.
//! Instances run in parallel, but rows are merged in instance order and all
//! reported numbers are exact, so repeated runs emit byte-identical reports
//! (apart from the wall-clock column).
//!
//! Per row, only the generation call itself is timed: requirement
//! conversion, graph splitting, translation back to the original model, and
//! — for the filter reduction — the whole-graph suite it filters are all
//! excluded, keeping timings comparable across algorithm families.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{generate_bf, generate_pct, generate_pg, generate_sc, reduce_dct, BaselineError};
use crate::metrics::{
    efficiency_metrics, test_set_metrics, verify_consistency, EfficiencyRecord, MetricsRecord,
    Rational,
};
use crate::model::{
    translate_paths, Algorithm, Conversion, ModelError, Path, Provenance, Ptl, SutModel, TestSet,
    TranslateError,
};
use crate::ppt::{generate_ppt, PptError};
use crate::requirements::{convert_atomic, convert_sequence, edge_pair_requirements};

/// Which algorithm/dial combinations an experiment compares.
///
/// Depth-based algorithms run once per entry of `tdls` (crossed with `ptls`
/// where they take a priority level). Requirement-based algorithms run on
/// the conversions comparable to each depth: single-edge and sequence
/// requirements (crossed with `ptls`) next to depth 1, adjacent edge pairs
/// next to depth 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub algorithms: Vec<Algorithm>,
    pub tdls: Vec<usize>,
    pub ptls: Vec<Ptl>,
    pub conversions: Vec<Conversion>,
    /// Per-edge repeat bound handed to the prioritized generator. The
    /// harness default of 2 keeps every target feasible on cyclic models
    /// even at depth 1 (a start connector and an end connector can share an
    /// edge at most once each).
    #[serde(default)]
    pub max_edge_repeats: Option<usize>,
}

impl RunConfig {
    /// Every algorithm at depths 1 and 2, both priority levels, all
    /// requirement conversions.
    pub fn full() -> Self {
        RunConfig {
            algorithms: Algorithm::ALL.to_vec(),
            tdls: vec![1, 2],
            ptls: vec![Ptl::High, Ptl::Medium],
            conversions: vec![Conversion::Atomic, Conversion::Sequence, Conversion::EdgePair],
            max_edge_repeats: Some(2),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GenerateError {
    #[error(transparent)]
    Ppt(#[from] PptError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0} needs a target depth level")]
    MissingTdl(Algorithm),
    #[error("{0} needs a priority level")]
    MissingPtl(Algorithm),
    #[error("{0} needs a requirement conversion")]
    MissingConversion(Algorithm),
}

/// Runs one algorithm on one model and reports the suite along with the
/// time the generation call itself took.
///
/// Requirement-based algorithms work on the deterministically split
/// parallel-free graph; their cases are translated back to the original
/// model's edges before being returned.
pub fn generate_for(
    model: &SutModel,
    algorithm: Algorithm,
    tdl: Option<usize>,
    ptl: Option<Ptl>,
    conversion: Option<Conversion>,
    max_edge_repeats: Option<usize>,
) -> Result<(TestSet, Duration), GenerateError> {
    let need_tdl = || tdl.ok_or(GenerateError::MissingTdl(algorithm));
    let need_ptl = || ptl.ok_or(GenerateError::MissingPtl(algorithm));
    match algorithm {
        Algorithm::Ppt => {
            let (tdl, ptl) = (need_tdl()?, need_ptl()?);
            let started = Instant::now();
            let set = generate_ppt(model, tdl, ptl, max_edge_repeats)?;
            Ok((set, started.elapsed()))
        }
        Algorithm::Pct => {
            let tdl = need_tdl()?;
            let started = Instant::now();
            let set = generate_pct(model, tdl)?;
            Ok((set, started.elapsed()))
        }
        Algorithm::Dct => {
            let (tdl, ptl) = (need_tdl()?, need_ptl()?);
            let whole = generate_pct(model, tdl)?;
            let started = Instant::now();
            let set = reduce_dct(&whole, model, ptl);
            Ok((set, started.elapsed()))
        }
        Algorithm::Bf | Algorithm::Sc | Algorithm::Pg => {
            let conversion = conversion.ok_or(GenerateError::MissingConversion(algorithm))?;
            let (split, map) = model.split_parallel_edges();
            let reqs = match conversion {
                Conversion::Atomic => convert_atomic(&split, need_ptl()?),
                Conversion::Sequence => convert_sequence(&split, need_ptl()?),
                Conversion::EdgePair => edge_pair_requirements(&split),
            };
            let started = Instant::now();
            let raw = match algorithm {
                Algorithm::Bf => generate_bf(&split, &reqs)?,
                Algorithm::Sc => generate_sc(&split, &reqs)?,
                _ => generate_pg(&split, &reqs)?,
            };
            let elapsed = started.elapsed();
            let split_ids: Vec<Vec<String>> = raw.cases.iter().map(|c| c.to_ids(&split)).collect();
            let cases = translate_paths(&split_ids, &map)?
                .iter()
                .map(|ids| Path::from_edge_ids(model, ids))
                .collect::<Result<Vec<_>, _>>()?;
            let set = TestSet::new(
                cases,
                Provenance {
                    algorithm,
                    tdl: None,
                    ptl,
                    conversion: Some(conversion),
                    requirements: None,
                },
            );
            Ok((set, elapsed))
        }
    }
}

/// One (instance, algorithm, configuration) measurement. `metrics` and
/// `efficiency` are present only when the run succeeded and verified;
/// `status` is `"ok"` or a description of what went wrong.
#[derive(Debug, Clone)]
pub struct ExperimentRow {
    pub instance_id: String,
    pub algorithm: Algorithm,
    pub tdl: Option<usize>,
    pub ptl: Option<Ptl>,
    pub conversion: Option<Conversion>,
    pub metrics: Option<MetricsRecord>,
    pub efficiency: Option<EfficiencyRecord>,
    pub status: String,
}

impl ExperimentRow {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }

    fn key(&self) -> GroupKey {
        (self.algorithm, self.tdl, self.ptl, self.conversion)
    }
}

type GroupKey = (Algorithm, Option<usize>, Option<Ptl>, Option<Conversion>);

/// Arithmetic means over the successful rows of one configuration. All
/// values except the wall clock are exact rationals.
#[derive(Debug, Clone)]
pub struct MeanMetrics {
    pub cases: Rational,
    pub alpha: Rational,
    pub alpha_h: Rational,
    pub alpha_m: Rational,
    pub beta: Rational,
    pub beta_h: Rational,
    pub beta_m: Rational,
    pub delta: Rational,
    pub epsilon: Rational,
    pub ac: Rational,
    pub lambda_h: Rational,
    pub lambda_m: Rational,
    pub big_lambda_h: Rational,
    pub big_lambda_m: Rational,
    pub time_ms: f64,
}

/// Per-configuration summary: how many instance rows succeeded and their
/// means (absent when none did).
#[derive(Debug, Clone)]
pub struct MeanRow {
    pub algorithm: Algorithm,
    pub tdl: Option<usize>,
    pub ptl: Option<Ptl>,
    pub conversion: Option<Conversion>,
    pub ok: usize,
    pub total: usize,
    pub means: Option<MeanMetrics>,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
}

/// Expands the configuration into per-instance row specifications, in
/// reporting order.
fn expand_rows(cfg: &RunConfig) -> Vec<GroupKey> {
    let mut rows = Vec::new();
    for &alg in &cfg.algorithms {
        match alg {
            Algorithm::Pct => {
                for &t in &cfg.tdls {
                    rows.push((alg, Some(t), None, None));
                }
            }
            Algorithm::Ppt | Algorithm::Dct => {
                for &t in &cfg.tdls {
                    for &p in &cfg.ptls {
                        rows.push((alg, Some(t), Some(p), None));
                    }
                }
            }
            Algorithm::Bf | Algorithm::Sc | Algorithm::Pg => {
                for &t in &cfg.tdls {
                    match t {
                        1 => {
                            for conv in [Conversion::Atomic, Conversion::Sequence] {
                                if cfg.conversions.contains(&conv) {
                                    for &p in &cfg.ptls {
                                        rows.push((alg, None, Some(p), Some(conv)));
                                    }
                                }
                            }
                        }
                        2 if cfg.conversions.contains(&Conversion::EdgePair) => {
                            rows.push((alg, None, None, Some(Conversion::EdgePair)));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    rows
}

fn run_row(instance_id: &str, model: &SutModel, spec: GroupKey, max_edge_repeats: Option<usize>) -> ExperimentRow {
    let (algorithm, tdl, ptl, conversion) = spec;
    let mut row = ExperimentRow {
        instance_id: instance_id.to_string(),
        algorithm,
        tdl,
        ptl,
        conversion,
        metrics: None,
        efficiency: None,
        status: String::new(),
    };
    let (set, elapsed) = match generate_for(model, algorithm, tdl, ptl, conversion, max_edge_repeats) {
        Ok(r) => r,
        Err(e) => {
            row.status = format!("generation failed: {e}");
            return row;
        }
    };
    let report = verify_consistency(model, &set, None);
    if let Some(failed) = report.results.iter().find(|r| !r.passed) {
        row.status = format!(
            "consistency check {} failed: {}",
            failed.name,
            failed.detail.as_deref().unwrap_or("")
        );
        return row;
    }
    let metrics = test_set_metrics(model, &set, Some(elapsed));
    match efficiency_metrics(model, &metrics) {
        Ok(eff) => {
            row.metrics = Some(metrics);
            row.efficiency = Some(eff);
            row.status = "ok".to_string();
        }
        Err(e) => {
            row.metrics = Some(metrics);
            row.status = e.to_string();
        }
    }
    row
}

/// Runs every configured row on every instance. Instances are evaluated in
/// parallel; the report lists rows grouped by instance, in corpus order.
pub fn run_experiment(corpus: &[(String, SutModel)], cfg: &RunConfig) -> ExperimentReport {
    let specs = expand_rows(cfg);
    let per_instance: Vec<Vec<ExperimentRow>> = corpus
        .par_iter()
        .map(|(id, model)| {
            specs
                .iter()
                .map(|&spec| run_row(id, model, spec, cfg.max_edge_repeats))
                .collect()
        })
        .collect();
    ExperimentReport {
        rows: per_instance.into_iter().flatten().collect(),
    }
}

impl ExperimentReport {
    /// Means of the successful rows per configuration, in first-appearance
    /// order.
    pub fn group_means(&self) -> Vec<MeanRow> {
        let mut order: Vec<GroupKey> = Vec::new();
        let mut groups: HashMap<GroupKey, Vec<&ExperimentRow>> = HashMap::new();
        for row in &self.rows {
            let key = row.key();
            groups.entry(key).or_insert_with(|| {
                order.push(key);
                Vec::new()
            });
            groups.get_mut(&key).unwrap().push(row);
        }
        order
            .into_iter()
            .map(|key| {
                let rows = &groups[&key];
                let ok_rows: Vec<&&ExperimentRow> = rows.iter().filter(|r| r.ok()).collect();
                let means = (!ok_rows.is_empty()).then(|| {
                    let m = |f: &dyn Fn(&MetricsRecord) -> usize| {
                        Rational::mean(
                            ok_rows
                                .iter()
                                .map(|r| Rational::from_usize(f(r.metrics.as_ref().unwrap()))),
                        )
                        .unwrap()
                    };
                    let e = |f: &dyn Fn(&EfficiencyRecord) -> Rational| {
                        Rational::mean(ok_rows.iter().map(|r| f(r.efficiency.as_ref().unwrap())))
                            .unwrap()
                    };
                    MeanMetrics {
                        cases: m(&|r| r.cases),
                        alpha: m(&|r| r.alpha),
                        alpha_h: m(&|r| r.alpha_h),
                        alpha_m: m(&|r| r.alpha_m),
                        beta: m(&|r| r.beta),
                        beta_h: m(&|r| r.beta_h),
                        beta_m: m(&|r| r.beta_m),
                        delta: m(&|r| r.delta),
                        epsilon: m(&|r| r.epsilon),
                        ac: e(&|r| r.ac.clone()),
                        lambda_h: e(&|r| r.lambda_h.clone()),
                        lambda_m: e(&|r| r.lambda_m.clone()),
                        big_lambda_h: e(&|r| r.big_lambda_h.clone()),
                        big_lambda_m: e(&|r| r.big_lambda_m.clone()),
                        time_ms: ok_rows
                            .iter()
                            .map(|r| r.metrics.as_ref().unwrap().time_ms.unwrap_or(0.0))
                            .sum::<f64>()
                            / ok_rows.len() as f64,
                    }
                });
                MeanRow {
                    algorithm: key.0,
                    tdl: key.1,
                    ptl: key.2,
                    conversion: key.3,
                    ok: ok_rows.len(),
                    total: rows.len(),
                    means,
                }
            })
            .collect()
    }

    /// Finds one configuration's mean row.
    pub fn mean_for(
        &self,
        algorithm: Algorithm,
        tdl: Option<usize>,
        ptl: Option<Ptl>,
        conversion: Option<Conversion>,
    ) -> Option<MeanRow> {
        self.group_means()
            .into_iter()
            .find(|m| (m.algorithm, m.tdl, m.ptl, m.conversion) == (algorithm, tdl, ptl, conversion))
    }

    /// Report as CSV: a header, one row per (instance, configuration), then
    /// one `mean` row per configuration averaging its successful runs.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "instance_id,algorithm,tdl,ptl,conversion,cases,alpha,alpha_h,alpha_m,beta,beta_h,beta_m,delta,epsilon,ac,lambda_h,lambda_m,Lambda_h,Lambda_m,time_ms,status\n",
        );
        for row in &self.rows {
            let mut fields = vec![
                row.instance_id.clone(),
                row.algorithm.to_string(),
                opt_cell(&row.tdl),
                opt_cell(&row.ptl),
                opt_cell(&row.conversion),
            ];
            match &row.metrics {
                Some(m) => {
                    fields.extend(
                        [m.cases, m.alpha, m.alpha_h, m.alpha_m, m.beta, m.beta_h, m.beta_m, m.delta, m.epsilon]
                            .map(|v| v.to_string()),
                    );
                }
                None => fields.extend(std::iter::repeat_n(String::new(), 9)),
            }
            match &row.efficiency {
                Some(e) => fields.extend(
                    [&e.ac, &e.lambda_h, &e.lambda_m, &e.big_lambda_h, &e.big_lambda_m]
                        .map(|v| v.to_string()),
                ),
                None => fields.extend(std::iter::repeat_n(String::new(), 5)),
            }
            fields.push(match row.metrics.as_ref().and_then(|m| m.time_ms) {
                Some(t) => format!("{t:.3}"),
                None => String::new(),
            });
            fields.push(row.status.clone());
            push_csv_line(&mut out, &fields);
        }
        for mean in self.group_means() {
            let mut fields = vec![
                "mean".to_string(),
                mean.algorithm.to_string(),
                opt_cell(&mean.tdl),
                opt_cell(&mean.ptl),
                opt_cell(&mean.conversion),
            ];
            match &mean.means {
                Some(m) => {
                    fields.extend(
                        [
                            &m.cases, &m.alpha, &m.alpha_h, &m.alpha_m, &m.beta, &m.beta_h,
                            &m.beta_m, &m.delta, &m.epsilon, &m.ac, &m.lambda_h, &m.lambda_m,
                            &m.big_lambda_h, &m.big_lambda_m,
                        ]
                        .map(|v| v.to_string()),
                    );
                    fields.push(format!("{:.3}", m.time_ms));
                }
                None => fields.extend(std::iter::repeat_n(String::new(), 15)),
            }
            fields.push(format!("{}/{} ok", mean.ok, mean.total));
            push_csv_line(&mut out, &fields);
        }
        out
    }
}

fn opt_cell<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn push_csv_line(out: &mut String, fields: &[String]) {
    for (i, f) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        if f.contains(',') || f.contains('"') || f.contains('\n') {
            let escaped = f.replace('"', "\"\"");
            let _ = write!(out, "\"{escaped}\"");
        } else {
            out.push_str(f);
        }
    }
    out.push('\n');
}
