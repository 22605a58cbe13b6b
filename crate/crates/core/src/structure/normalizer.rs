use serde::Serialize;

use crate::algebra::{Element, Instance, Monomial};
use crate::error::{Error, Result};
use crate::lattice::{gamma3_basis, member_gamma3, GroupElement};
use crate::qlin;
use crate::scalar::Q;
use crate::sparse::{Echelon, SparseRow};

use super::center::t_exponents;

fn generator_images(inst: &Instance, u: &Element) -> Vec<(GroupElement, Element)> {
    inst.gamma()
        .generators()
        .into_iter()
        .map(|g| {
            let img = inst.bracket(u, &inst.x(g.clone()));
            (g, img)
        })
        .collect()
}

/// `[u, x^β] = 0` for every `β`. Brackets with a fixed `u` are linear in
/// `β` after factoring out `x^β`, so the lattice generators suffice.
pub fn is_centralizer_a0(inst: &Instance, u: &Element) -> bool {
    generator_images(inst, u).iter().all(|(_, w)| w.is_zero())
}

/// `[u, x^β]` is a combination of pure group monomials for every `β`.
pub fn is_normalizer_a0(inst: &Instance, u: &Element) -> bool {
    generator_images(inst, u)
        .iter()
        .all(|(_, w)| w.terms().all(|(m, _)| m.t_degree() == 0))
}

/// Closed-form descriptions of the monomial spans studied in the
/// classification, tested one monomial at a time.
pub mod closed {
    use super::*;

    fn in_gamma3(inst: &Instance, g: &GroupElement) -> bool {
        member_gamma3(inst.phi(), inst.gamma(), inst.shape(), g)
    }

    /// Exponent supported on `I₆ ∪ J₇`.
    fn t_on_i6_j7(inst: &Instance, t: &[u32]) -> bool {
        let s = inst.shape();
        s.all_indices().all(|p| t[p - 1] == 0 || s.in_i(p, 6, 6) || s.in_j(p, 7, 7))
    }

    fn t_on_i6(inst: &Instance, t: &[u32]) -> bool {
        let s = inst.shape();
        s.all_indices().all(|p| t[p - 1] == 0 || s.in_i(p, 6, 6))
    }

    /// Single variable from `J₄ ∪ Ī_{5,6}` with trivial grade.
    fn linear_invariant_variable(inst: &Instance, m: &Monomial) -> bool {
        let s = inst.shape();
        m.grade.is_zero()
            && m.t_degree() == 1
            && s.all_indices().any(|p| m.t[p - 1] == 1 && (s.in_j(p, 4, 4) || s.in_ibar(p, 5, 6)))
    }

    pub fn centralizer(inst: &Instance, m: &Monomial) -> bool {
        in_gamma3(inst, &m.grade) && t_on_i6_j7(inst, &m.t)
    }

    pub fn normalizer(inst: &Instance, m: &Monomial) -> bool {
        m.t_degree() == 0 || n_slice(inst, m)
    }

    pub fn n_slice(inst: &Instance, m: &Monomial) -> bool {
        in_gamma3(inst, &m.grade) && (m.t_degree() == 1 || t_on_i6_j7(inst, &m.t))
    }

    pub fn m(inst: &Instance, m: &Monomial) -> bool {
        centralizer(inst, m)
    }

    pub fn m1(inst: &Instance, mo: &Monomial) -> bool {
        m(inst, mo) || linear_invariant_variable(inst, mo)
    }

    pub fn m0(inst: &Instance, m: &Monomial) -> bool {
        in_gamma3(inst, &m.grade) && t_on_i6(inst, &m.t)
    }

    pub fn m0_normalizer(inst: &Instance, mo: &Monomial) -> bool {
        m0(inst, mo) || linear_invariant_variable(inst, mo)
    }

    /// `u` lies in the span of the monomials accepted by `pred`.
    pub fn span_contains(inst: &Instance, u: &Element, pred: fn(&Instance, &Monomial) -> bool) -> bool {
        u.terms().all(|(m, _)| pred(inst, m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MSets {
    pub in_m: bool,
    pub in_m1: bool,
    pub in_m0: bool,
}

/// Variables generating, together with `x^{±γ}` for `γ ∈ Γ₃`, the
/// commutative algebra spanned by the locally nilpotent part.
fn nilpotent_part_variables(inst: &Instance) -> Vec<usize> {
    let s = inst.shape();
    s.t_indices().into_iter().filter(|&p| s.in_i(p, 6, 6) || s.in_j(p, 7, 7)).collect()
}

/// Membership of `u` in the locally nilpotent part, the locally finite
/// part and the center of the former, decided by brackets.
pub fn m_sets_membership(inst: &Instance, u: &Element) -> Result<MSets> {
    if !closed::span_contains(inst, u, closed::n_slice) {
        return Err(Error::Precondition("element is outside the normalizer slice".into()));
    }
    let images = generator_images(inst, u);
    let in_m = images.iter().all(|(_, w)| w.is_zero());
    let in_m1 = images
        .iter()
        .all(|(g, w)| w.terms().all(|(m, _)| m.t_degree() == 0 && &m.grade == g));
    let in_m0 = in_m
        && nilpotent_part_variables(inst)
            .into_iter()
            .all(|p| inst.bracket(u, &inst.t(p).expect("allowed")).is_zero());
    Ok(MSets { in_m, in_m1, in_m0 })
}

/// Sample of monomials spanning the locally nilpotent part: grades in
/// `{0} ∪ ±Γ₃-basis`, exponents on `I₆ ∪ J₇` of total degree at most 2.
pub fn nilpotent_part_sample(inst: &Instance) -> Vec<Monomial> {
    let mut grades = vec![inst.zero_grade()];
    for b in gamma3_basis(inst.phi(), inst.gamma(), inst.shape()) {
        grades.push(b.neg());
        grades.push(b);
    }
    let vars = nilpotent_part_variables(inst);
    let exps: Vec<Vec<u32>> = t_exponents(inst, 2)
        .into_iter()
        .filter(|t| inst.shape().all_indices().all(|p| t[p - 1] == 0 || vars.contains(&p)))
        .collect();
    grades
        .iter()
        .flat_map(|g| exps.iter().map(move |t| Monomial::new(g.clone(), t.clone())))
        .collect()
}

/// `u` in the locally finite part with `[u, M]` inside the center of the
/// locally nilpotent part `M`, checked on [`nilpotent_part_sample`].
pub fn in_m0_normalizer(inst: &Instance, u: &Element) -> Result<bool> {
    if !m_sets_membership(inst, u)?.in_m1 {
        return Ok(false);
    }
    Ok(nilpotent_part_sample(inst).into_iter().all(|m| {
        let w = inst.bracket(u, &Element::monomial(m));
        closed::span_contains(inst, &w, closed::m0)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim3 {
    /// Variables `t_q` with `[x^{σ_p}, t_q] ≠ 0`.
    pub surviving: Vec<String>,
    pub rank: usize,
    /// Rank of the image of the variables under `ad_{x^{σ_p}}`.
    pub quotient_rank: usize,
}

fn check_class_index(inst: &Instance, p: usize) -> Result<()> {
    if p == 0 || p > inst.shape().iota(3) {
        return Err(Error::IndexOutOfRange(p));
    }
    Ok(())
}

pub fn claim3_rank(inst: &Instance, p: usize) -> Result<Claim3> {
    check_class_index(inst, p)?;
    let s = inst.shape();
    let xs = inst.x(inst.sigma(p));
    let mut surviving = Vec::new();
    let mut images = Vec::new();
    for q in s.t_indices() {
        let img = inst.bracket(&xs, &inst.t(q)?);
        if !img.is_zero() {
            surviving.push(s.t_label(q));
            images.push(img);
        }
    }
    Ok(Claim3 { rank: surviving.len(), quotient_rank: element_rank(&images), surviving })
}

fn element_rank(elems: &[Element]) -> usize {
    let mut monos: Vec<&Monomial> = elems.iter().flat_map(|e| e.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Q>> = elems.iter().map(|e| monos.iter().map(|m| e.coefficient(m)).collect()).collect();
    qlin::rank(&rows, monos.len())
}

/// Spanning sample of the normalizer slice: `x^γ t_q` for every variable and
/// `γ ∈ {0} ∪ Γ₃-basis`, plus [`nilpotent_part_sample`].
pub fn n_slice_sample(inst: &Instance) -> Vec<Monomial> {
    let mut grades = vec![inst.zero_grade()];
    grades.extend(gamma3_basis(inst.phi(), inst.gamma(), inst.shape()));
    let mut out = Vec::new();
    for g in &grades {
        for q in inst.shape().t_indices() {
            let mut t = inst.zero_t();
            t[q - 1] = 1;
            out.push(Monomial::new(g.clone(), t));
        }
    }
    out.extend(nilpotent_part_sample(inst));
    out
}

/// `[x^{σ_p}, n] = 0` for every `n` in [`n_slice_sample`].
pub fn sigma_kills_n(inst: &Instance, p: usize) -> Result<bool> {
    check_class_index(inst, p)?;
    let xs = inst.x(inst.sigma(p));
    Ok(n_slice_sample(inst)
        .into_iter()
        .all(|m| inst.bracket(&xs, &Element::monomial(m)).is_zero()))
}

/// Rank of the functionals carried by the components of degree in
/// `σ + Γ₃` of `ad_{t_q}` on the group algebra, over all variables `t_q`.
pub fn shift_rank(inst: &Instance, sigma: &GroupElement) -> usize {
    let gens = inst.gamma().generators();
    let mut ech = Echelon::new();
    for q in inst.shape().t_indices() {
        let tq = inst.t(q).expect("allowed");
        let mut functionals: std::collections::BTreeMap<GroupElement, SparseRow> = Default::default();
        for (k, g) in gens.iter().enumerate() {
            for (m, c) in inst.bracket(&tq, &inst.x(g.clone())).terms() {
                let deg = m.grade.sub(g);
                if m.t_degree() == 0 && member_gamma3(inst.phi(), inst.gamma(), inst.shape(), &deg.sub(sigma)) {
                    functionals.entry(deg).or_default().insert(k, c.clone());
                }
            }
        }
        for (_, f) in functionals {
            ech.insert(f);
        }
    }
    ech.rank()
}
