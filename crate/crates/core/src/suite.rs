//! Regression suite: every named construction against the fixtures in
//! `goldens/suite.json`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scenario::{run_scenario, NamedScenario, Outcome};
use crate::surface::{Bounds, HodgeValue};

const FIXTURES: &str = include_str!("../goldens/suite.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub value: Value,
    /// "stated" or "computed", see the fixture legend.
    pub basis: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenCase {
    pub scenario: String,
    pub expect: BTreeMap<String, Expectation>,
}

#[derive(Deserialize)]
struct Fixtures {
    #[allow(dead_code)]
    basis_legend: BTreeMap<String, String>,
    cases: Vec<GoldenCase>,
}

/// The fixture cases, sorted by scenario identifier.
pub fn goldens() -> Result<Vec<GoldenCase>> {
    let f: Fixtures = serde_json::from_str(FIXTURES)?;
    let mut cases = f.cases;
    for c in &cases {
        for (field, e) in &c.expect {
            if e.basis != "stated" && e.basis != "computed" {
                return Err(Error::Scenario(format!("{}: field {field} has basis {:?}", c.scenario, e.basis)));
            }
        }
    }
    cases.sort_by(|a, b| a.scenario.cmp(&b.scenario));
    Ok(cases)
}

fn hodge(v: &HodgeValue) -> Value {
    match v.bounds {
        Bounds::Exact(n) => json!(n),
        Bounds::Interval { lo, hi } => json!({"lo": lo, "hi": hi}),
    }
}

/// Comparable quantities of an outcome, keyed like the fixtures.
pub fn observables(o: &Outcome) -> BTreeMap<String, Value> {
    let r = &o.report;
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    put("exit_code", json!(o.exit_code()));
    let mut sing: BTreeMap<String, u64> = BTreeMap::new();
    for p in &r.inventory {
        *sing.entry(p.kind.label()).or_default() += p.geometric_count as u64;
    }
    put("singularities", json!(sing));
    put("k2_singular", hodge(&r.k2_singular));
    put("chi_singular", hodge(&r.chi_singular));
    put("b1", hodge(&r.b1));
    put("dual_chi_agrees", json!(r.dual_bundle.chi.riemann_roch == r.dual_bundle.chi.kunneth.into()));
    for (k, v) in [("k2", &r.k2_resolved), ("chi", &r.chi), ("c2", &r.c2), ("b2", &r.b2), ("h01", &r.h01), ("h02", &r.h02)]
    {
        if let Some(v) = v {
            put(k, hodge(v));
        }
    }
    if let Some(h10) = &r.h10 {
        put("h10_lower", json!(h10.bounds.lo()));
    }
    if let Some(c) = r.h10_claimed_lower {
        put("h10_claimed_lower", json!(c));
    }
    if let Some(p) = &r.predicates {
        put("picard_reduced", json!(p.picard_reduced));
        put("has_global_vector_fields", json!(p.has_global_vector_fields));
        put("uniruled", json!(p.uniruled));
        put("bmy_violated", json!(p.bmy_violated));
        put("miyaoka_bound", json!(p.miyaoka_bound.to_string()));
        put("sb_bound", json!(p.sb_bound.to_string()));
        put("sb_exceeded", json!(p.sb_exceeded));
        put("disjoint_minus2", json!(p.disjoint_minus2));
        put("hodge_index_cap", json!(p.hodge_index_cap));
    }
    if let Some(a) = &r.artin {
        put("sigma", json!([a.sigma_lo, a.sigma_hi]));
    }
    if let Some(at) = &o.artin_tate {
        put("artin_tate_two_power", json!(at.two_power));
    }
    if let Some(z) = &o.zeta {
        put("p2_product", serde_json::to_value(&z.p2_product).unwrap_or(Value::Null));
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: Value,
    /// `null` when the run did not produce the field.
    pub actual: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub scenario: String,
    pub pass: bool,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn check_case(case: &GoldenCase) -> CaseResult {
    let outcome = case
        .scenario
        .parse::<NamedScenario>()
        .and_then(|n| n.scenario())
        .and_then(|s| run_scenario(&s));
    let o = match outcome {
        Ok(o) => o,
        Err(e) => {
            return CaseResult {
                scenario: case.scenario.clone(),
                pass: false,
                checked: 0,
                mismatches: Vec::new(),
                error: Some(e.to_string()),
            }
        }
    };
    let obs = observables(&o);
    let mismatches: Vec<Mismatch> = case
        .expect
        .iter()
        .filter_map(|(field, e)| {
            let actual = obs.get(field).cloned().unwrap_or(Value::Null);
            (actual != e.value).then(|| Mismatch { field: field.clone(), expected: e.value.clone(), actual })
        })
        .collect();
    CaseResult {
        scenario: case.scenario.clone(),
        pass: mismatches.is_empty(),
        checked: case.expect.len(),
        mismatches,
        error: None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{status}  {:<26} {} fields", c.scenario, c.checked)?;
            if let Some(e) = &c.error {
                writeln!(f, "      error: {e}")?;
            }
            for m in &c.mismatches {
                writeln!(f, "      {}: expected {}, got {}", m.field, m.expected, m.actual)?;
            }
        }
        let passed = self.cases.iter().filter(|c| c.pass).count();
        writeln!(f, "{passed}/{} scenarios pass", self.cases.len())
    }
}

/// Runs all cases on scoped threads; results keep identifier order.
pub fn run_suite() -> Result<SuiteReport> {
    let cases = goldens()?;
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = cases.iter().map(|c| s.spawn(move || check_case(c))).collect();
        handles
            .into_iter()
            .zip(&cases)
            .map(|(h, c)| {
                h.join().unwrap_or_else(|_| CaseResult {
                    scenario: c.scenario.clone(),
                    pass: false,
                    checked: 0,
                    mismatches: Vec::new(),
                    error: Some("worker panicked".into()),
                })
            })
            .collect()
    });
    Ok(SuiteReport { cases: results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_name_real_scenarios() {
        let cases = goldens().unwrap();
        assert!(cases.len() >= 20);
        for c in &cases {
            c.scenario.parse::<NamedScenario>().unwrap();
        }
        let names: Vec<&str> = cases.iter().map(|c| c.scenario.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn mismatches_are_listed_per_field() {
        let mut case = goldens().unwrap().into_iter().find(|c| c.scenario == "minustwo_d8").unwrap();
        case.expect.insert("chi".into(), Expectation { value: json!(2), basis: "computed".into() });
        let r = check_case(&case);
        assert!(!r.pass);
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].field, "chi");
        assert_eq!(r.mismatches[0].actual, json!(1));
    }

    #[test]
    fn full_suite_passes() {
        let r = run_suite().unwrap();
        assert!(r.all_pass(), "{r}");
    }
}
