//! Group isomorphisms `τ = τ₀ + τ₁ + τ₂ : Γ → Γ'`.

use num_traits::{One, Signed};

use crate::algebra::Instance;
use crate::error::{Error, Result};
use crate::lattice::GroupElement;
use crate::qlin::{self, QMat};
use crate::scalar::{as_i64, fmt_q, q};

use super::group::{apply_g, validate_g, GElement};

pub mod conditions {
    pub const G_ADMISSIBLE: &str = "g-admissible";
    pub const GAMMA0_ISO: &str = "gamma0-iso";
    pub const LATTICE_IMAGE: &str = "lattice-image";
    pub const FORM_GAMMA0: &str = "form-gamma0";
    pub const FORM_MIXED: &str = "form-mixed";
    pub const FORM_GAMMA1: &str = "form-gamma1";
    pub const SIGMA_IMAGE: &str = "sigma-image";
}
use conditions::*;

fn fail(condition: &str, detail: impl Into<String>) -> Error {
    Error::TauCondition { condition: condition.into(), detail: detail.into() }
}

/// A verified group isomorphism, as an integer matrix acting on
/// generator coordinates from the right.
#[derive(Debug, Clone, PartialEq)]
pub struct TauMap {
    pub g: GElement,
    pub tau0: Vec<Vec<i64>>,
    pub tau1: Vec<Vec<i64>>,
    matrix: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
    m0: usize,
}

fn apply_rows(m: &[Vec<i64>], c: &[i64], cols: usize) -> Vec<i64> {
    let mut out = vec![0i64; cols];
    for (x, row) in c.iter().zip(m) {
        if *x != 0 {
            for (o, r) in out.iter_mut().zip(row) {
                *o += x * r;
            }
        }
    }
    out
}

fn to_q(m: &[Vec<i64>]) -> QMat {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn is_unimodular(m: &[Vec<i64>]) -> bool {
    m.is_empty() || qlin::det(&to_q(m)).abs().is_one()
}

impl TauMap {
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        GroupElement::from_coords(&apply_rows(&self.matrix, &a.coords(), self.matrix.len()), self.m0)
    }

    pub fn apply_inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement::from_coords(&apply_rows(&self.inverse, &a.coords(), self.inverse.len()), self.m0)
    }
}

fn check_dims(m: &[Vec<i64>], rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.len() != rows {
        return Err(Error::Parameter(format!("{what} must have {rows} rows, got {}", m.len())));
    }
    if let Some(r) = m.iter().find(|r| r.len() != cols) {
        return Err(Error::Parameter(format!("{what} rows must have {cols} entries, got {}", r.len())));
    }
    Ok(())
}

/// Assembles `τ` from `g ∈ G`, `τ₀` (`m₀ × m₀'`) and `τ₁` (`r₁ × m₀'`),
/// failing with the first violated condition.
pub fn build_tau(src: &Instance, dst: &Instance, g: &GElement, tau0: &[Vec<i64>], tau1: &[Vec<i64>]) -> Result<TauMap> {
    if src.shape() != dst.shape() {
        return Err(Error::ShapeMismatch(format!(
            "l0={} l={:?} vs l0={} l={:?}",
            src.shape().l0(),
            src.shape().l(),
            dst.shape().l0(),
            dst.shape().l()
        )));
    }
    let report = validate_g(g, src.shape());
    if !report.passed() {
        return Err(fail(G_ADMISSIBLE, report.failed_names().join(", ")));
    }
    build_tau_unchecked(src, dst, g, tau0, tau1)
}

/// [`build_tau`] without the admissibility check on `g`.
pub(crate) fn build_tau_unchecked(
    src: &Instance,
    dst: &Instance,
    g: &GElement,
    tau0: &[Vec<i64>],
    tau1: &[Vec<i64>],
) -> Result<TauMap> {
    let shape = src.shape();
    let (m0, r1) = (src.gamma().m0(), src.gamma().r1());
    let (m0d, r1d) = (dst.gamma().m0(), dst.gamma().r1());
    check_dims(tau0, m0, m0d, "tau0")?;
    check_dims(tau1, r1, m0d, "tau1")?;
    if m0 != m0d || !is_unimodular(tau0) {
        return Err(fail(GAMMA0_ISO, "tau0 is not invertible over the integers"));
    }
    let mut tau2 = Vec::with_capacity(r1);
    for (k, b) in src.gamma().generators()[m0..].iter().enumerate() {
        let img = apply_g(g, shape, &src.gamma().embed(b))?;
        match dst.gamma().member_gamma1(&img)? {
            Some(c) => tau2.push(c),
            None => {
                let v: Vec<String> = img.iter().map(fmt_q).collect();
                return Err(fail(LATTICE_IMAGE, format!("image ({}) of generator {} is not in the target lattice", v.join(","), m0 + k + 1)));
            }
        }
    }
    if r1 != r1d || !is_unimodular(&tau2) {
        return Err(fail(LATTICE_IMAGE, "image is a proper sublattice of the target lattice"));
    }
    let matrix: Vec<Vec<i64>> = tau0
        .iter()
        .map(|r| r.iter().copied().chain(std::iter::repeat(0).take(r1d)).collect())
        .chain(tau1.iter().zip(&tau2).map(|(a, b)| a.iter().chain(b).copied().collect()))
        .collect();
    let n = m0 + r1;
    let inverse = if n == 0 {
        Vec::new()
    } else {
        let inv = qlin::inverse(&to_q(&matrix)).expect("unimodular");
        inv.iter().map(|r| r.iter().map(|x| as_i64(x).expect("unimodular")).collect()).collect()
    };
    // φ'(τα, τβ) = φ(α, β) on generators
    let tm = to_q(&matrix);
    let pulled = qlin::mul(&qlin::mul(&tm, dst.phi().matrix(), n, n), &qlin::transpose(&tm, n), n, n);
    for i in 0..n {
        for j in 0..n {
            if pulled[i][j] != src.phi().matrix()[i][j] {
                let cond = match (i < m0, j < m0) {
                    (true, true) => FORM_GAMMA0,
                    (false, false) => FORM_GAMMA1,
                    _ => FORM_MIXED,
                };
                return Err(fail(
                    cond,
                    format!(
                        "pair ({},{}): target form gives {}, source form gives {}",
                        i + 1,
                        j + 1,
                        fmt_q(&pulled[i][j]),
                        fmt_q(&src.phi().matrix()[i][j])
                    ),
                ));
            }
        }
    }
    let tau = TauMap { g: g.clone(), tau0: tau0.to_vec(), tau1: tau1.to_vec(), matrix, inverse, m0 };
    for p in 1..=shape.iota(3) {
        let img = tau.apply(&src.sigma(p));
        if img != dst.sigma(g.nu[p - 1]) {
            return Err(fail(SIGMA_IMAGE, format!("tau(sigma_{p}) is not sigma'_{}", g.nu[p - 1])));
        }
    }
    Ok(tau)
}
