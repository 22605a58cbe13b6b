//! Command implementations over already-read inputs.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Instance;
use crate::error::Error;
use crate::exec::Mode;
use crate::iso::{verify_isomorphism, IsoReport};
use crate::lattice::{self, Check, ValidationReport};
use crate::notation::{parse_element, to_json, to_text};
use crate::random::Bounds;
use crate::structure::{check_axioms, fingerprint as compute_fingerprint, FingerprintBounds};

use super::config::{load_instance, InstanceConfig};
use super::isodata::IsoData;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 2;
pub const EXIT_MALFORMED: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy)]
pub struct Common {
    pub format: Format,
    pub timing: bool,
    pub mode: Mode,
}

/// Result of one command: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Outcome {
        Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Malformed input maps to 3, everything else to 2.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Dimension { .. } | Error::IndexOutOfRange(_) | Error::Parameter(_) => EXIT_MALFORMED,
        _ => EXIT_FAIL,
    }
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: &'static str,
    version: &'static str,
    instances: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    params: BTreeMap<&'static str, Value>,
    passed: bool,
    result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u64>,
}

struct Emit<'a> {
    common: &'a Common,
    start: Instant,
    command: &'static str,
    instances: Vec<String>,
    seed: Option<u64>,
    params: BTreeMap<&'static str, Value>,
}

impl Emit<'_> {
    fn finish<T: Serialize>(self, passed: bool, result: T, text: String) -> Outcome {
        let stdout = match self.common.format {
            Format::Text => text,
            Format::Json => {
                let report = Report {
                    command: self.command,
                    version: env!("CARGO_PKG_VERSION"),
                    instances: self.instances,
                    seed: self.seed,
                    params: self.params,
                    passed,
                    result,
                    timing_ms: self.common.timing.then(|| self.start.elapsed().as_millis() as u64),
                };
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            }
        };
        Outcome { code: if passed { EXIT_PASS } else { EXIT_FAIL }, stdout, stderr: String::new() }
    }
}

fn emit<'a>(common: &'a Common, command: &'static str, instances: Vec<String>) -> Emit<'a> {
    Emit { common, start: Instant::now(), command, instances, seed: None, params: BTreeMap::new() }
}

fn mark(ok: bool) -> &'static str {
    if ok { "PASS" } else { "FAIL" }
}

pub fn validate(config: &str, common: &Common) -> Outcome {
    let raw = match InstanceConfig::from_json(config).and_then(|c| c.parse()) {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let e = emit(common, "validate", vec![raw.digest.clone()]);
    let mut report = lattice::validate_gamma(&raw.gamma, &raw.shape);
    if report.passed() {
        report.extend(lattice::validate_phi(&raw.phi, &raw.gamma, &raw.shape));
    }
    if report.passed() {
        let simple = lattice::check_simplicity(&raw.phi, &raw.gamma, &raw.shape);
        report.checks.push(Check {
            name: lattice::conditions::SIMPLICITY.into(),
            subject: "radical".into(),
            passed: simple,
            detail: if simple { String::new() } else { "the radical of the form meets the sigma lattice nontrivially".into() },
            witness: None,
        });
    }
    let text = validation_text(&report);
    e.finish(report.passed(), report, text)
}

fn validation_text(r: &ValidationReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        s += &format!("{} {} {}", mark(c.passed), c.name, c.subject);
        if !c.passed {
            s += &format!(": {}", c.detail);
        }
        s.push('\n');
    }
    s
}

fn instance(config: &str) -> Result<(Instance, String), Outcome> {
    load_instance(config).map_err(|e| Outcome::error(&e))
}

pub fn axioms(config: &str, samples: usize, seed: u64, bounds: &Bounds, common: &Common) -> Outcome {
    let (inst, digest) = match instance(config) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let mut e = emit(common, "axioms", vec![digest]);
    e.seed = Some(seed);
    e.params = bounds_params(samples, bounds);
    let report = check_axioms(&inst, samples, seed, bounds, common.mode);
    let mut text = String::new();
    for c in &report.checks {
        text += &format!("{} {} {}/{}\n", mark(c.failed == 0), c.name, c.passed, c.passed + c.failed);
        if let Some((k, w)) = &c.counterexample {
            text += &format!("  sample {k}: {}\n", w.join(" ; "));
        }
    }
    e.finish(report.passed(), report, text)
}

fn bounds_params(samples: usize, b: &Bounds) -> BTreeMap<&'static str, Value> {
    BTreeMap::from([
        ("samples", json!(samples)),
        ("max_terms", json!(b.max_terms)),
        ("coord", json!(b.coord)),
        ("max_deg", json!(b.max_deg)),
    ])
}

pub fn bracket(config: &str, u: &str, v: &str, common: &Common) -> Outcome {
    let (inst, _) = match instance(config) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let parse = |s: &str, which: &str| {
        parse_element(&inst, s).map_err(|e| Outcome {
            code: EXIT_MALFORMED,
            stdout: String::new(),
            stderr: format!("error: element {which}: {e}\n"),
        })
    };
    let (u, v) = match (parse(u, "u"), parse(v, "v")) {
        (Ok(u), Ok(v)) => (u, v),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let w = inst.bracket(&u, &v);
    let stdout = match common.format {
        Format::Text => to_text(&inst, &w) + "\n",
        Format::Json => serde_json::to_string_pretty(&to_json(&inst, &w)).expect("serializable") + "\n",
    };
    Outcome { code: EXIT_PASS, stdout, stderr: String::new() }
}

#[derive(Serialize)]
struct FingerprintResult {
    fingerprint: crate::structure::Fingerprint,
    declared: Value,
    reconstructed: Value,
    matches: bool,
}

pub fn fingerprint(config: &str, bounds: &FingerprintBounds, common: &Common) -> Outcome {
    let (inst, digest) = match instance(config) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let mut e = emit(common, "fingerprint", vec![digest]);
    e.params = BTreeMap::from([("bound", json!(bounds.coord)), ("t_bound", json!(bounds.t_bound))]);
    let fp = match compute_fingerprint(&inst, bounds, common.mode) {
        Ok(f) => f,
        Err(err) => return Outcome::error(&err),
    };
    let matches = fp.matches(&inst);
    let text = format!(
        "declared      l0={} l={:?}\nreconstructed l0={} l={:?}\n{}\n",
        inst.shape().l0(),
        inst.shape().l(),
        fp.l0,
        fp.l,
        if matches { "match" } else { "mismatch" }
    );
    let result = FingerprintResult {
        declared: json!({"l0": inst.shape().l0(), "l": inst.shape().l()}),
        reconstructed: json!({"l0": fp.l0, "l": fp.l}),
        fingerprint: fp,
        matches,
    };
    e.finish(matches, result, text)
}

/// Short names for construction failures.
fn condition(err: &Error) -> String {
    match err {
        Error::TauCondition { condition, .. } => condition.clone(),
        Error::ShapeMismatch(_) => "shape".into(),
        Error::InconsistentCharacter(_) => "chi-consistency".into(),
        Error::RootNotRepresentable { .. } => "root-not-representable".into(),
        Error::InvalidInstance(_) => "instance".into(),
        _ => "precondition".into(),
    }
}

#[derive(Serialize)]
struct BuildResult {
    #[serde(skip_serializing_if = "Option::is_none")]
    iso_map: Option<IsoData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<Value>,
}

/// Builds and returns the persisted map alongside the outcome.
pub fn iso_build(a: &str, b: &str, data: &str, common: &Common) -> (Outcome, Option<IsoData>) {
    let ((src, da), (dst, db)) = match (instance(a), instance(b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(o), _) | (_, Err(o)) => return (o, None),
    };
    let data = match IsoData::from_json(data) {
        Ok(d) => d,
        Err(err) => return (Outcome::error(&err), None),
    };
    let e = emit(common, "iso-build", vec![da, db]);
    match data.build(&src, &dst) {
        Ok(iso) => {
            let saved = IsoData::persist(&iso);
            let text = "PASS build\n".to_string();
            (e.finish(true, BuildResult { iso_map: Some(saved.clone()), failure: None }, text), Some(saved))
        }
        Err(err) if exit_code(&err) == EXIT_MALFORMED => (Outcome::error(&err), None),
        Err(err) => {
            let cond = condition(&err);
            let text = format!("FAIL build {cond}: {err}\n");
            let failure = json!({"condition": cond, "detail": err.to_string()});
            (e.finish(false, BuildResult { iso_map: None, failure: Some(failure) }, text), None)
        }
    }
}

pub fn iso_verify(a: &str, b: &str, map: &str, samples: usize, seed: u64, bounds: &Bounds, common: &Common) -> Outcome {
    let ((src, da), (dst, db)) = match (instance(a), instance(b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let data = match IsoData::from_json(map) {
        Ok(d) => d,
        Err(err) => return Outcome::error(&err),
    };
    let mut e = emit(common, "iso-verify", vec![da, db]);
    e.seed = Some(seed);
    e.params = bounds_params(samples, bounds);
    let iso = match data.build(&src, &dst) {
        Ok(i) => i,
        Err(err) if exit_code(&err) == EXIT_MALFORMED => return Outcome::error(&err),
        Err(err) => {
            let cond = condition(&err);
            let text = format!("FAIL build {cond}: {err}\n");
            return e.finish(false, json!({"failure": {"condition": cond, "detail": err.to_string()}}), text);
        }
    };
    let report: IsoReport = verify_isomorphism(&src, &dst, &iso, samples, seed, bounds, common.mode);
    let mut text = String::new();
    for c in &report.checks {
        text += &format!("{} {} {}/{}\n", mark(c.failed == 0), c.name, c.passed, c.passed + c.failed);
        if let Some((u, v)) = &c.witness {
            text += &format!("  witness: ({u}, {v})\n");
        }
    }
    e.finish(report.passed(), report, text)
}
