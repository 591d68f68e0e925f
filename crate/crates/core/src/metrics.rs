//! Test-set measurements, efficiency ratios, and consistency checks.
//!
//! Counting metrics ([`test_set_metrics`]) are plain integers; efficiency
//! ratios ([`efficiency_metrics`]) are exact rationals rendered with two
//! decimals, so repeated runs and averaged reports never drift through
//! floating point. [`verify_consistency`] re-checks a finished test set
//! against the model it was generated from, using the set's recorded
//! provenance to decide which guarantees apply.

use std::collections::HashSet;
use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::model::{Conversion, Path, Ptl, SutModel, TestSet};
use crate::requirements::{convert_atomic, convert_sequence, edge_pair_requirements, RequirementSet};

/// Exact nonnegative rational with two-decimal half-up rendering.
///
/// Backed by arbitrary-precision integers: the per-instance ratios are small,
/// but summing them across a whole corpus multiplies denominators far past
/// any machine word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        debug_assert!(!r.is_negative(), "metrics ratios are nonnegative");
        Rational(r)
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn from_usize(n: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `100 * num / den`, the form used by the coverage and distribution
    /// columns.
    pub fn percent(num: usize, den: usize) -> Self {
        Rational::new(100 * num as i128, den as i128)
    }

    pub fn add(&self, other: &Rational) -> Rational {
        Rational(&self.0 + &other.0)
    }

    pub fn div_usize(&self, n: usize) -> Rational {
        assert!(n > 0, "division by zero");
        Rational(&self.0 / BigRational::from_integer(BigInt::from(n)))
    }

    pub fn mean(values: impl IntoIterator<Item = Rational>) -> Option<Rational> {
        let mut sum = Rational::zero();
        let mut count = 0usize;
        for v in values {
            sum = sum.add(&v);
            count += 1;
        }
        (count > 0).then(|| sum.div_usize(count))
    }

    /// Hundredths, rounded half-up; `1/3` becomes `33`. Values are
    /// nonnegative, so truncating division doubles as floor.
    fn hundredths(&self) -> i128 {
        let h: BigInt = (self.0.numer() * 200 + self.0.denom()) / (self.0.denom() * 2);
        h.to_i128().expect("rendered value fits a machine word")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.hundredths();
        write!(f, "{}.{:02}", h / 100, h % 100)
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Raw counts of one test set. Occurrence counts (`alpha*`, `delta`) count
/// repeats; uniqueness counts (`beta*`, `epsilon`) do not. The `_h` variants
/// restrict to high-priority edges, `_m` to the union of high and medium.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRecord {
    /// Number of test cases.
    pub cases: usize,
    /// Edge occurrences summed over all cases.
    pub alpha: usize,
    pub alpha_h: usize,
    pub alpha_m: usize,
    /// Distinct edges covered.
    pub beta: usize,
    pub beta_h: usize,
    pub beta_m: usize,
    /// Node occurrences summed over all cases.
    pub delta: usize,
    /// Distinct nodes covered.
    pub epsilon: usize,
    /// Wall-clock generation time, when measured.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
}

/// Ratios derived from a [`MetricsRecord`], all scaled to percent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfficiencyRecord {
    /// Distinct-edge coverage of the whole graph.
    pub ac: Rational,
    /// Share of edge occurrences spent on high-priority edges.
    pub lambda_h: Rational,
    pub lambda_m: Rational,
    /// Distinct high-priority edges per edge occurrence.
    pub big_lambda_h: Rational,
    pub big_lambda_m: Rational,
}

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("efficiency ratios are undefined for an empty test set")]
    EmptySuite,
}

pub fn test_set_metrics(model: &SutModel, set: &TestSet, elapsed: Option<Duration>) -> MetricsRecord {
    let mut alpha = 0;
    let mut alpha_h = 0;
    let mut alpha_m = 0;
    let mut edge_seen = vec![false; model.edge_count()];
    let mut node_seen = vec![false; model.node_count()];
    let mut delta = 0;
    for case in &set.cases {
        alpha += case.len();
        for &e in case.edges() {
            let p = model.edge(e).priority;
            if Ptl::High.includes(p) {
                alpha_h += 1;
            }
            if Ptl::Medium.includes(p) {
                alpha_m += 1;
            }
            edge_seen[e.as_usize()] = true;
        }
        let nodes = case.nodes(model);
        delta += nodes.len();
        for n in nodes {
            node_seen[n.as_usize()] = true;
        }
    }
    let beta_of = |ptl: Ptl| {
        model
            .edges()
            .filter(|&e| edge_seen[e.as_usize()] && ptl.includes(model.edge(e).priority))
            .count()
    };
    MetricsRecord {
        cases: set.cases.len(),
        alpha,
        alpha_h,
        alpha_m,
        beta: edge_seen.iter().filter(|&&s| s).count(),
        beta_h: beta_of(Ptl::High),
        beta_m: beta_of(Ptl::Medium),
        delta,
        epsilon: node_seen.iter().filter(|&&s| s).count(),
        time_ms: elapsed.map(|d| d.as_secs_f64() * 1000.0),
    }
}

pub fn efficiency_metrics(
    model: &SutModel,
    metrics: &MetricsRecord,
) -> Result<EfficiencyRecord, MetricsError> {
    if metrics.alpha == 0 {
        return Err(MetricsError::EmptySuite);
    }
    Ok(EfficiencyRecord {
        ac: Rational::percent(metrics.beta, model.edge_count()),
        lambda_h: Rational::percent(metrics.alpha_h, metrics.alpha),
        lambda_m: Rational::percent(metrics.alpha_m, metrics.alpha),
        big_lambda_h: Rational::percent(metrics.beta_h, metrics.alpha),
        big_lambda_m: Rational::percent(metrics.beta_m, metrics.alpha),
    })
}

/// Outcome of one consistency check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(name: &'static str) -> Self {
        CheckResult {
            name,
            passed: true,
            detail: None,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckResult {
            name,
            passed: false,
            detail: Some(detail),
        }
    }
}

/// All checks applicable to one test set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.detail {
                Some(d) if !r.passed => writeln!(f, "FAIL {}: {}", r.name, d)?,
                _ => writeln!(f, "ok   {}", r.name)?,
            }
        }
        Ok(())
    }
}

/// Re-checks a generated test set against its model:
///
/// 1. `valid-paths` — every case is a contiguous walk from the start node to
///    an end node (all algorithms);
/// 2. `class-coverage` — every edge of the run's priority class appears in
///    some case (depth-based algorithms);
/// 3. `requirement-coverage` — every requirement is a contiguous subpath of
///    some case (requirement-based algorithms);
/// 4. `class-saturation` — the distinct-coverage counts equal the class
///    sizes, i.e. the metrics agree with full class coverage (all
///    algorithms).
///
/// Runs without a priority level (whole-graph coverage and edge-pair
/// requirements) are held to *both* priority classes in checks 2 and 4.
///
/// Requirement-based sets are checked on the parallel-free graph:
/// the model is split deterministically, the cases are mapped through the
/// split, and requirements are taken from `requirements` or re-derived from
/// the recorded conversion.
pub fn verify_consistency(
    model: &SutModel,
    set: &TestSet,
    requirements: Option<&RequirementSet>,
) -> CheckReport {
    let mut results = Vec::new();
    results.push(check_valid_paths(model, set));
    if set.provenance.algorithm.requirement_based() {
        results.push(check_requirement_coverage(model, set, requirements));
    } else {
        results.push(check_class_coverage(model, set));
    }
    results.push(check_class_saturation(model, set));
    CheckReport { results }
}

fn check_valid_paths(model: &SutModel, set: &TestSet) -> CheckResult {
    for (i, case) in set.cases.iter().enumerate() {
        if !case.is_test_case(model) {
            return CheckResult::fail(
                "valid-paths",
                format!("case {} is not a start-to-end path: {:?}", i + 1, case.to_ids(model)),
            );
        }
    }
    CheckResult::pass("valid-paths")
}

/// Priority classes a run must cover: the recorded level's class, or both
/// classes when the run had no level.
fn required_classes(set: &TestSet) -> Vec<Ptl> {
    match set.provenance.ptl {
        Some(ptl) => vec![ptl],
        None => vec![Ptl::High, Ptl::Medium],
    }
}

fn check_class_coverage(model: &SutModel, set: &TestSet) -> CheckResult {
    let mut covered: HashSet<_> = HashSet::new();
    for case in &set.cases {
        covered.extend(case.edges().iter().copied());
    }
    for ptl in required_classes(set) {
        let missing: Vec<String> = model
            .class_edges(ptl)
            .into_iter()
            .filter(|e| !covered.contains(e))
            .map(|e| model.edge_id(e).to_string())
            .collect();
        if !missing.is_empty() {
            return CheckResult::fail(
                "class-coverage",
                format!("{ptl} class edges never exercised: {}", missing.join(", ")),
            );
        }
    }
    CheckResult::pass("class-coverage")
}

fn check_requirement_coverage(
    model: &SutModel,
    set: &TestSet,
    requirements: Option<&RequirementSet>,
) -> CheckResult {
    const NAME: &str = "requirement-coverage";
    let (split_model, split_map) = model.split_parallel_edges();
    let derived;
    let reqs = match requirements {
        Some(r) => r,
        None => {
            let Some(conversion) = set.provenance.conversion else {
                return CheckResult::fail(
                    NAME,
                    "no requirement set supplied and no conversion recorded".to_string(),
                );
            };
            derived = match conversion {
                Conversion::EdgePair => edge_pair_requirements(&split_model),
                Conversion::Atomic | Conversion::Sequence => {
                    let Some(ptl) = set.provenance.ptl else {
                        return CheckResult::fail(
                            NAME,
                            format!("{conversion} conversion recorded without a priority level"),
                        );
                    };
                    match conversion {
                        Conversion::Atomic => convert_atomic(&split_model, ptl),
                        _ => convert_sequence(&split_model, ptl),
                    }
                }
            };
            &derived
        }
    };
    let mut split_cases = Vec::with_capacity(set.cases.len());
    for case in &set.cases {
        let image = split_map.split_image(&case.to_ids(model));
        match Path::from_edge_ids(&split_model, &image) {
            Ok(p) => split_cases.push(p),
            Err(e) => return CheckResult::fail(NAME, format!("case does not map onto the split graph: {e}")),
        }
    }
    for r in &reqs.requirements {
        if !split_cases.iter().any(|c| c.contains_subpath(r)) {
            let nodes: Vec<String> = r
                .nodes(&split_model)
                .into_iter()
                .map(|n| split_model.node_id(n).to_string())
                .collect();
            return CheckResult::fail(NAME, format!("requirement {} uncovered", nodes.join("-")));
        }
    }
    CheckResult::pass(NAME)
}

fn check_class_saturation(model: &SutModel, set: &TestSet) -> CheckResult {
    let metrics = test_set_metrics(model, set, None);
    for ptl in required_classes(set) {
        let (got, want) = match ptl {
            Ptl::High => (metrics.beta_h, model.class_edges(Ptl::High).len()),
            Ptl::Medium => (metrics.beta_m, model.class_edges(Ptl::Medium).len()),
        };
        if got != want {
            return CheckResult::fail(
                "class-saturation",
                format!("{ptl} class has {want} edges but the suite covers {got}"),
            );
        }
    }
    CheckResult::pass("class-saturation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{generate_bf, generate_pct};
    use crate::model::{Algorithm, Provenance, SutModel};
    use crate::ppt::generate_ppt;

    fn demo() -> SutModel {
        SutModel::from_json(include_str!("../tests/fixtures/demo_workflow.json")).unwrap()
    }

    #[test]
    fn rational_formatting_rounds_half_up() {
        assert_eq!(Rational::new(1, 3).to_string(), "0.33");
        assert_eq!(Rational::new(2, 3).to_string(), "0.67");
        assert_eq!(Rational::new(1, 200).to_string(), "0.01");
        assert_eq!(Rational::percent(11, 21).to_string(), "52.38");
        assert_eq!(Rational::percent(21, 21).to_string(), "100.00");
        assert_eq!(Rational::zero().to_string(), "0.00");
    }

    #[test]
    fn rational_mean_is_exact() {
        let mean = Rational::mean([Rational::new(1, 3), Rational::new(2, 3), Rational::new(1, 1)])
            .unwrap();
        assert_eq!(mean, Rational::new(2, 3));
        assert_eq!(Rational::mean(std::iter::empty()), None);
    }

    #[test]
    fn depth_one_high_suite_measures_as_expected() {
        let m = demo();
        let set = generate_ppt(&m, 1, Ptl::High, None).unwrap();
        let rec = test_set_metrics(&m, &set, None);
        assert_eq!(rec.cases, 2);
        assert_eq!(rec.alpha, 17);
        assert_eq!(rec.alpha_h, 5);
        assert_eq!(rec.alpha_m, 5);
        assert_eq!(rec.beta, 11);
        assert_eq!(rec.beta_h, 4);
        assert_eq!(rec.beta_m, 4);
        assert_eq!(rec.delta, 19);
        assert_eq!(rec.epsilon, 11);
        let eff = efficiency_metrics(&m, &rec).unwrap();
        assert_eq!(eff.ac.to_string(), "52.38");
        assert_eq!(eff.lambda_h.to_string(), "29.41");
        assert_eq!(eff.lambda_m.to_string(), "29.41");
        assert_eq!(eff.big_lambda_h.to_string(), "23.53");
        assert_eq!(eff.big_lambda_m.to_string(), "23.53");
    }

    #[test]
    fn efficiency_of_an_empty_suite_is_an_error() {
        let m = demo();
        let set = TestSet::new(
            vec![],
            Provenance {
                algorithm: Algorithm::Ppt,
                tdl: Some(1),
                ptl: Some(Ptl::High),
                conversion: None,
                requirements: None,
            },
        );
        let rec = test_set_metrics(&m, &set, None);
        assert!(matches!(efficiency_metrics(&m, &rec), Err(MetricsError::EmptySuite)));
    }

    #[test]
    fn generated_suites_verify_cleanly() {
        let m = demo();
        for tdl in [1, 2] {
            for ptl in [Ptl::High, Ptl::Medium] {
                let set = generate_ppt(&m, tdl, ptl, None).unwrap();
                let report = verify_consistency(&m, &set, None);
                assert!(report.all_passed(), "tdl {tdl} {ptl}: {report}");
            }
        }
        let pct = generate_pct(&m, 1).unwrap();
        assert!(verify_consistency(&m, &pct, None).all_passed());
    }

    #[test]
    fn truncated_case_fails_the_path_check() {
        let m = demo();
        let mut set = generate_ppt(&m, 1, Ptl::High, None).unwrap();
        let mut edges = set.cases[0].edges().to_vec();
        edges.pop();
        set.cases[0] = Path::new(edges);
        let report = verify_consistency(&m, &set, None);
        assert!(!report.all_passed());
        assert!(report.results.iter().any(|r| r.name == "valid-paths" && !r.passed));
    }

    #[test]
    fn dropped_case_fails_coverage_checks() {
        let m = demo();
        let mut set = generate_ppt(&m, 1, Ptl::High, None).unwrap();
        set.cases.remove(0); // loses high edges 13 and 16
        let report = verify_consistency(&m, &set, None);
        let failed: Vec<&str> = report
            .results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.name)
            .collect();
        assert_eq!(failed, vec!["class-coverage", "class-saturation"]);
    }

    #[test]
    fn requirement_sets_are_rederived_from_provenance() {
        let m = demo();
        let reqs = crate::requirements::convert_sequence(&m, Ptl::High);
        let mut set = generate_bf(&m, &reqs).unwrap();
        set.provenance.ptl = Some(Ptl::High);
        set.provenance.conversion = Some(Conversion::Sequence);
        assert!(verify_consistency(&m, &set, None).all_passed());
        assert!(verify_consistency(&m, &set, Some(&reqs)).all_passed());
    }

    #[test]
    fn requirement_coverage_is_checked_through_the_split_graph() {
        // Parallel high edges "2" and "3" force a split; the requirement set
        // lives on the split graph while cases use the original edges.
        let m = SutModel::from_json(
            r#"{
              "nodes": [{"id":"s","start":true},{"id":"a"},{"id":"e","end":true}],
              "edges": [
                {"id":"1","source":"s","target":"a"},
                {"id":"2","source":"a","target":"e","priority":"high"},
                {"id":"3","source":"a","target":"e","priority":"high"}
              ]
            }"#,
        )
        .unwrap();
        let (split, map) = m.split_parallel_edges();
        let reqs = crate::requirements::convert_atomic(&split, Ptl::High);
        let split_set = generate_bf(&split, &reqs).unwrap();
        let translated = crate::model::translate_paths(
            &split_set
                .cases
                .iter()
                .map(|c| c.to_ids(&split))
                .collect::<Vec<_>>(),
            &map,
        )
        .unwrap();
        let cases: Vec<Path> = translated
            .iter()
            .map(|ids| Path::from_edge_ids(&m, ids).unwrap())
            .collect();
        let set = TestSet::new(
            cases,
            Provenance {
                algorithm: Algorithm::Bf,
                tdl: None,
                ptl: Some(Ptl::High),
                conversion: Some(Conversion::Atomic),
                requirements: None,
            },
        );
        let report = verify_consistency(&m, &set, None);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn missing_conversion_fails_requirement_check() {
        let m = demo();
        let reqs = crate::requirements::convert_atomic(&m, Ptl::High);
        let set = generate_bf(&m, &reqs).unwrap();
        let report = verify_consistency(&m, &set, None);
        assert!(!report.all_passed());
    }
}
