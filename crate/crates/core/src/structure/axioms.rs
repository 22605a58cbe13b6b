use serde::Serialize;

use crate::algebra::{Element, Instance};
use crate::exec::{self, Mode};
use crate::notation::to_text;
use crate::oracle;
use crate::random::{random_element, rng_for, Bounds};

pub type BracketFn = dyn Fn(&Instance, &Element, &Element) -> Element + Sync;

pub const CHECK_NAMES: [&str; 5] = ["skew", "jacobi", "leibniz", "oracle-derivations", "oracle-leibniz"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Sample index and the serialized `u, v, w` of the first failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(usize, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Outcome of each named check on one sample triple.
fn run_sample(inst: &Instance, br: &BracketFn, u: &Element, v: &Element, w: &Element) -> [bool; 5] {
    let uv = br(inst, u, v);
    let skew = uv.add(&br(inst, v, u)).is_zero();
    let jacobi = br(inst, u, &br(inst, v, w))
        .add(&br(inst, v, &br(inst, w, u)))
        .add(&br(inst, w, &uv))
        .is_zero();
    let lhs = br(inst, u, &inst.multiply(v, w));
    let rhs = inst.multiply(&uv, w).add(&inst.multiply(v, &br(inst, u, w)));
    let leibniz = lhs == rhs;
    let d = oracle::bracket_via_derivations(inst, u, v) == uv;
    let l = oracle::bracket_via_leibniz(inst, u, v) == uv;
    [skew, jacobi, leibniz, d, l]
}

/// Skew symmetry, Jacobi, Leibniz and agreement with both oracles on
/// `samples` seeded random triples, using the instance bracket.
pub fn check_axioms(inst: &Instance, samples: usize, seed: u64, bounds: &Bounds, mode: Mode) -> AxiomReport {
    check_axioms_with(inst, samples, seed, bounds, mode, &|i, u, v| i.bracket(u, v))
}

pub fn check_axioms_with(
    inst: &Instance,
    samples: usize,
    seed: u64,
    bounds: &Bounds,
    mode: Mode,
    br: &BracketFn,
) -> AxiomReport {
    let outcomes = exec::map_range(mode, samples, |k| {
        let mut rng = rng_for(seed, k as u64);
        let u = random_element(inst, &mut rng, bounds);
        let v = random_element(inst, &mut rng, bounds);
        let w = random_element(inst, &mut rng, bounds);
        let r = run_sample(inst, br, &u, &v, &w);
        (r, [u, v, w])
    });
    let checks = CHECK_NAMES
        .iter()
        .enumerate()
        .map(|(c, name)| {
            let failed: Vec<usize> = (0..samples).filter(|&k| !outcomes[k].0[c]).collect();
            AxiomCheck {
                name: name.to_string(),
                passed: samples - failed.len(),
                failed: failed.len(),
                counterexample: failed.first().map(|&k| {
                    (k, outcomes[k].1.iter().map(|e| to_text(inst, e)).collect())
                }),
            }
        })
        .collect();
    AxiomReport { samples, seed, checks }
}
