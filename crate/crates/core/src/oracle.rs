//! Two independent evaluations of the bracket, used to cross-check
//! [`Instance::bracket`].

use num_traits::Zero;

use crate::algebra::{Element, Instance, Monomial};
use crate::lattice::GroupElement;
use crate::scalar::{q, Q};

/// `Σ_{p∈I} x^{σ_p}(∂_p u ∂_p̄ v − ∂_p̄ u ∂_p v) + (φ(α,β) − Σ_{p∈I₄} det_p(α,β)) uv`,
/// evaluated on each pair of homogeneous terms with the derivations and
/// the product only.
pub fn bracket_via_derivations(inst: &Instance, u: &Element, v: &Element) -> Element {
    let s = inst.shape();
    let mut out = Element::zero();
    for (mu, cu) in u.terms() {
        let eu = Element::monomial(mu.clone()).scale(cu);
        for (mv, cv) in v.terms() {
            let ev = Element::monomial(mv.clone()).scale(cv);
            for p in s.index_set(1, 7) {
                let pb = s.bar(p);
                let d = |r: usize, e: &Element| inst.derive(r, e).expect("index in range");
                let cross = inst
                    .multiply(&d(p, &eu), &d(pb, &ev))
                    .sub(&inst.multiply(&d(pb, &eu), &d(p, &ev)));
                let sig = inst.x(inst.sigma(p));
                out = out.add(&inst.multiply(&sig, &cross));
            }
            let mut k = inst.phi().eval(&mu.grade, &mv.grade).expect("grade dimensions");
            for p in s.index_set(4, 4) {
                let pb = s.bar(p);
                let (a, b) = (&mu.grade, &mv.grade);
                k -= inst.grade_coord(a, p) * inst.grade_coord(b, pb) - inst.grade_coord(a, pb) * inst.grade_coord(b, p);
            }
            out = out.add(&inst.multiply(&eu, &ev).scale(&k));
        }
    }
    out
}

fn push(out: &mut Element, grade: GroupElement, t: Vec<i64>, c: Q) {
    if c.is_zero() || t.iter().any(|&e| e < 0) {
        return;
    }
    out.add_term(Monomial::new(grade, t.into_iter().map(|e| e as u32).collect()), c);
}

/// `[x^α, x^β]` as `(grade, coefficient)` pairs.
fn group_bracket(inst: &Instance, a: &GroupElement, b: &GroupElement) -> Vec<(GroupElement, Q)> {
    let s = inst.shape();
    let mut r = Vec::new();
    let sum = a.add(b);
    for p in s.index_set(1, 3) {
        let pb = s.bar(p);
        let det = inst.grade_coord(a, p) * inst.grade_coord(b, pb) - inst.grade_coord(a, pb) * inst.grade_coord(b, p);
        r.push((inst.sigma(p).add(&sum), det));
    }
    r.push((sum, inst.phi().eval(a, b).expect("grade dimensions")));
    r
}

/// `[t_p, x^β] = ε_p β_p̄ x^{σ_p+β}`.
fn var_group_bracket(inst: &Instance, p: usize, b: &GroupElement) -> (GroupElement, Q) {
    let s = inst.shape();
    let c = inst.grade_coord(b, s.bar(p)) * q(s.eps(p));
    (inst.sigma(p).add(b), c)
}

/// `[t_p, t_r] = ε_p δ_{r,p̄} x^{σ_p}`.
fn var_var_bracket(inst: &Instance, p: usize, r: usize) -> Q {
    let s = inst.shape();
    if r == s.bar(p) {
        q(s.eps(p))
    } else {
        Q::zero()
    }
}

/// Leibniz expansion of `[x^α t^i, x^β t^j]` through the brackets of group
/// monomials and single variables.
pub fn bracket_via_leibniz(inst: &Instance, u: &Element, v: &Element) -> Element {
    let s = inst.shape();
    let vars = s.t_indices();
    let mut out = Element::zero();
    for (mu, cu) in u.terms() {
        for (mv, cv) in v.terms() {
            let c = cu * cv;
            let (a, b) = (&mu.grade, &mv.grade);
            let base: Vec<i64> = mu.t.iter().zip(&mv.t).map(|(x, y)| i64::from(x + y)).collect();
            let minus = |drop: &[usize]| {
                let mut t = base.clone();
                for &p in drop {
                    t[p - 1] -= 1;
                }
                t
            };
            for (g, k) in group_bracket(inst, a, b) {
                push(&mut out, g, base.clone(), k * &c);
            }
            for &p in &vars {
                let ip = i64::from(mu.t[p - 1]);
                let jp = i64::from(mv.t[p - 1]);
                if ip > 0 {
                    let (g, k) = var_group_bracket(inst, p, b);
                    push(&mut out, g.add(a), minus(&[p]), k * q(ip) * &c);
                }
                if jp > 0 {
                    let (g, k) = var_group_bracket(inst, p, a);
                    push(&mut out, g.add(b), minus(&[p]), -k * q(jp) * &c);
                }
            }
            for &p in &vars {
                let ip = i64::from(mu.t[p - 1]);
                if ip == 0 {
                    continue;
                }
                for &r in &vars {
                    let jr = i64::from(mv.t[r - 1]);
                    let k = var_var_bracket(inst, p, r);
                    if jr == 0 || k.is_zero() {
                        continue;
                    }
                    let g = inst.sigma(p).add(a).add(b);
                    push(&mut out, g, minus(&[p, r]), k * q(ip * jr) * &c);
                }
            }
        }
    }
    out
}
