//! The algebra map `θ` attached to `(τ, χ)` and its verification.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Element, Instance, Monomial};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::lattice::{GammaSpec, GroupElement};
use crate::notation::to_text;
use crate::qlin::{self, QMat};
use crate::random::{random_element, rng_for, Bounds};
use crate::scalar::{q, Q};
use crate::shape::Shape;

use super::character::{extend_character, Character};
use super::group::{apply_g, f_positions, GElement};
use super::tau::TauMap;

/// `θ(x^α t^i) = χ(α) x'^{τ(α)} Π s_p^{i_p}`, with each `s_p` linear in
/// the target variables.
#[derive(Debug, Clone)]
pub struct IsoMap {
    pub tau: TauMap,
    pub chi: Character,
    /// Row `p − 1`: coefficients of `s_p` on the target variables.
    subst: QMat,
    /// Row `q − 1`: coefficients of `θ⁻¹(t'_q)` on the source variables.
    inverse_subst: QMat,
}

/// `T_q = ε_{q̄} t_{q̄}` as a coefficient row, zero when `t_{q̄}` is absent.
fn t_bar(shape: &Shape, q_: usize) -> Vec<Q> {
    let mut row = vec![Q::zero(); shape.dim()];
    let r = shape.bar(q_);
    if shape.t_allowed(r) {
        row[r - 1] = q(shape.eps(r));
    }
    row
}

fn combine(rows: &[&Vec<Q>], coeffs: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); rows[0].len()];
    for (r, c) in rows.iter().zip(coeffs) {
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(r.iter()) {
                *o += c * x;
            }
        }
    }
    out
}

/// Substitution rows `s_p` for every flat index (zero rows for absent
/// variables).
fn substitution(shape: &Shape, tau: &TauMap) -> Result<QMat> {
    let n = shape.dim();
    let g = &tau.g;
    let target: Vec<Vec<Q>> = (1..=n).map(|k| t_bar(shape, k)).collect();
    // S indexed like T: the entry paired with grade coordinate q
    let mut s_t = vec![vec![Q::zero(); n]; n];
    for p in 1..=shape.iota(3) {
        let nu = g.nu[p - 1];
        let gi = qlin::inverse(&g.blocks[p - 1]).ok_or_else(|| Error::Precondition(format!("g_{p} is singular")))?;
        let b = g.b(p);
        let pair = [&target[nu - 1], &target[shape.bar(nu) - 1]];
        for (col, dst) in [p, shape.bar(p)].into_iter().enumerate() {
            let coeffs = [&b * &gi[0][col], &b * &gi[1][col]];
            s_t[dst - 1] = combine(&pair, &coeffs);
        }
    }
    let pos = f_positions(shape);
    if !pos.is_empty() {
        let fi = qlin::inverse(&g.f).ok_or_else(|| Error::Precondition("f is singular".into()))?;
        let rows: Vec<&Vec<Q>> = pos.iter().map(|&k| &target[k - 1]).collect();
        for (k, &p) in pos.iter().enumerate() {
            let coeffs: Vec<Q> = fi.iter().map(|r| r[k].clone()).collect();
            s_t[p - 1] = combine(&rows, &coeffs);
        }
    }
    // s_r = ε_r S_{r̄}
    let mut s = vec![vec![Q::zero(); n]; n];
    for r in shape.t_indices() {
        let e = q(shape.eps(r));
        s[r - 1] = s_t[shape.bar(r) - 1].iter().map(|x| x * &e).collect();
        if let Some(k) = (0..n).find(|&k| !s[r - 1][k].is_zero() && !shape.t_allowed(k + 1)) {
            return Err(Error::Precondition(format!(
                "substitution for {} involves the absent variable {}",
                shape.t_label(r),
                shape.t_label(k + 1)
            )));
        }
    }
    Ok(s)
}

fn invert_substitution(shape: &Shape, s: &QMat) -> Result<QMat> {
    let vars = shape.t_indices();
    let m: QMat = vars.iter().map(|&r| vars.iter().map(|&c| s[r - 1][c - 1].clone()).collect()).collect();
    let n = shape.dim();
    let mut out = vec![vec![Q::zero(); n]; n];
    if vars.is_empty() {
        return Ok(out);
    }
    let inv = qlin::inverse(&m).ok_or_else(|| Error::Precondition("variable substitution is singular".into()))?;
    // s = m·t' gives t' = m⁻¹·s
    for (i, &c) in vars.iter().enumerate() {
        for (j, &r) in vars.iter().enumerate() {
            out[c - 1][r - 1] = inv[i][j].clone();
        }
    }
    Ok(out)
}

fn linear(inst: &Instance, row: &[Q]) -> Element {
    let mut e = Element::zero();
    for (k, c) in row.iter().enumerate() {
        if !c.is_zero() {
            let mut t = inst.zero_t();
            t[k] = 1;
            e.add_term(Monomial::new(inst.zero_grade(), t), c.clone());
        }
    }
    e
}

fn substitute(inst: &Instance, grade: GroupElement, coeff: Q, t: &[u32], rows: &QMat) -> Element {
    let mut acc = Element::from_terms([(Monomial::new(grade, inst.zero_t()), coeff)]);
    for (k, &e) in t.iter().enumerate() {
        if e > 0 {
            let lin = linear(inst, &rows[k]);
            for _ in 0..e {
                acc = inst.multiply(&acc, &lin);
            }
        }
    }
    acc
}

impl IsoMap {
    /// Assembles `θ` from a verified `τ` and explicit character values.
    pub fn from_parts(src: &Instance, tau: TauMap, chi: Character) -> Result<IsoMap> {
        if chi.values().len() != src.gamma().rank() {
            return Err(Error::Dimension { expected: src.gamma().rank(), got: chi.values().len() });
        }
        let subst = substitution(src.shape(), &tau)?;
        let inverse_subst = invert_substitution(src.shape(), &subst)?;
        Ok(IsoMap { tau, chi, subst, inverse_subst })
    }

    /// Coefficients of `s_p` on the target variables.
    pub fn substitution_row(&self, p: usize) -> &[Q] {
        &self.subst[p - 1]
    }

    pub fn apply(&self, dst: &Instance, u: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in u.terms() {
            let coeff = c * self.chi.eval(&m.grade);
            out = out.add(&substitute(dst, self.tau.apply(&m.grade), coeff, &m.t, &self.subst));
        }
        out
    }

    pub fn apply_inverse(&self, src: &Instance, v: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in v.terms() {
            let grade = self.tau.apply_inverse(&m.grade);
            let coeff = c / self.chi.eval(&grade);
            out = out.add(&substitute(src, grade, coeff, &m.t, &self.inverse_subst));
        }
        out
    }
}

/// Builds `θ` with `χ(σ_p) = b_p` on `I_{1,3}` plus optional extra
/// prescribed values.
pub fn build_isomorphism(src: &Instance, tau: TauMap, extra: &[(GroupElement, Q)]) -> Result<IsoMap> {
    let mut prescribed: Vec<(GroupElement, Q)> =
        (1..=src.shape().iota(3)).map(|p| (src.sigma(p), tau.g.b(p))).collect();
    prescribed.extend(extra.iter().cloned());
    let chi = extend_character(src.gamma().rank(), &prescribed)?;
    IsoMap::from_parts(src, tau, chi)
}

/// The instance with lattice `g(Γ₁)` and the same `Γ₀` and form, so that
/// `g` with identity `τ₀` and zero `τ₁` defines a group isomorphism onto it.
pub fn transported(src: &Instance, g: &GElement) -> Result<Instance> {
    let basis = src.gamma().generators()[src.gamma().m0()..]
        .iter()
        .map(|b| apply_g(g, src.shape(), &src.gamma().embed(b)))
        .collect::<Result<QMat>>()?;
    let gamma = GammaSpec::new(src.gamma().m0(), basis, src.shape().dim())?;
    Instance::new(src.shape().clone(), gamma, src.phi().clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoCheck {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// First failing pair in source notation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<IsoCheck>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn check(&self, name: &str) -> Option<&IsoCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const VERIFY_CHECKS: [&str; 6] =
    ["grade-pairs", "variable-grade", "variable-pairs", "random-bracket", "random-product", "inverse"];

fn tally(name: &str, src: &Instance, pairs: &[(Element, Element)], outcomes: Vec<bool>) -> IsoCheck {
    let failed = outcomes.iter().filter(|ok| !**ok).count();
    let witness = outcomes
        .iter()
        .position(|ok| !ok)
        .map(|k| (to_text(src, &pairs[k].0), to_text(src, &pairs[k].1)));
    IsoCheck { name: name.into(), passed: outcomes.len() - failed, failed, witness }
}

/// Checks that `θ` preserves brackets and products and is invertible:
/// exhaustively on generator families, and on `samples` seeded random pairs.
pub fn verify_isomorphism(
    src: &Instance,
    dst: &Instance,
    iso: &IsoMap,
    samples: usize,
    seed: u64,
    bounds: &Bounds,
    mode: Mode,
) -> IsoReport {
    let bracket_ok = |(u, v): &(Element, Element)| {
        iso.apply(dst, &src.bracket(u, v)) == dst.bracket(&iso.apply(dst, u), &iso.apply(dst, v))
    };
    let product_ok = |(u, v): &(Element, Element)| {
        iso.apply(dst, &src.multiply(u, v)) == dst.multiply(&iso.apply(dst, u), &iso.apply(dst, v))
    };
    let gens = src.gamma().generators();
    let grades: Vec<Element> = gens.iter().chain(gens.iter().map(|g| g.neg()).collect::<Vec<_>>().iter())
        .map(|g| src.x(g.clone()))
        .collect();
    let vars: Vec<Element> = src.shape().t_indices().into_iter().map(|p| src.t(p).expect("allowed")).collect();
    let cross = |a: &[Element], b: &[Element]| -> Vec<(Element, Element)> {
        a.iter().flat_map(|u| b.iter().map(move |v| (u.clone(), v.clone()))).collect()
    };
    let mut checks = Vec::new();
    for (name, pairs) in [
        (VERIFY_CHECKS[0], cross(&grades, &grades)),
        (VERIFY_CHECKS[1], cross(&vars, &grades)),
        (VERIFY_CHECKS[2], cross(&vars, &vars)),
    ] {
        let out = exec::map(mode, &pairs, bracket_ok);
        checks.push(tally(name, src, &pairs, out));
    }
    let random: Vec<(Element, Element)> = exec::map_range(mode, samples, |k| {
        let mut rng = rng_for(seed, k as u64);
        (random_element(src, &mut rng, bounds), random_element(src, &mut rng, bounds))
    });
    checks.push(tally(VERIFY_CHECKS[3], src, &random, exec::map(mode, &random, bracket_ok)));
    checks.push(tally(VERIFY_CHECKS[4], src, &random, exec::map(mode, &random, product_ok)));
    let inverse: Vec<bool> = exec::map_range(mode, samples, |k| {
        let mut rng = rng_for(seed ^ 0x9e37_79b9_7f4a_7c15, k as u64);
        let u = random_element(src, &mut rng, bounds);
        let v = random_element(dst, &mut rng, bounds);
        iso.apply_inverse(src, &iso.apply(dst, &u)) == u && iso.apply(dst, &iso.apply_inverse(src, &v)) == v
    });
    let failed = inverse.iter().filter(|ok| !**ok).count();
    checks.push(IsoCheck {
        name: VERIFY_CHECKS[5].into(),
        passed: samples - failed,
        failed,
        witness: inverse.iter().position(|ok| !ok).map(|k| ("sample".into(), k.to_string())),
    });
    IsoReport { samples, seed, checks }
}

/// Necessary conditions for isomorphism: equal shapes and equal fingerprints.
pub fn check_necessary_invariants(a: &Instance, b: &Instance, mode: Mode) -> Result<bool> {
    if a.shape() != b.shape() {
        return Ok(false);
    }
    let bounds = crate::structure::FingerprintBounds::default();
    let fa = crate::structure::fingerprint(a, &bounds, mode)?;
    let fb = crate::structure::fingerprint(b, &bounds, mode)?;
    Ok(fa == fb)
}
