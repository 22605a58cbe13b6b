use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{Element, Instance, Monomial};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::lattice::GroupElement;
use crate::poly;
use crate::qlin;
use crate::scalar::{q, Q};

use super::center::grade_box;

/// One homogeneous piece `x^β ↦ μ(β) x^{degree+β}` of a derivation of the
/// group algebra; `functional` holds `μ` on the lattice generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub degree: GroupElement,
    pub functional: Vec<Q>,
}

impl Component {
    pub fn is_null(&self) -> bool {
        self.functional.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, beta: &GroupElement) -> Q {
        self.functional
            .iter()
            .zip(beta.coords())
            .fold(Q::zero(), |acc, (f, b)| acc + f * q(b))
    }
}

/// `ad_{x^a}` restricted to the group algebra, split by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousView {
    pub components: Vec<Component>,
}

impl HomogeneousView {
    pub fn of(inst: &Instance, a: &GroupElement) -> HomogeneousView {
        let s = inst.shape();
        let gens = inst.gamma().generators();
        let mut by_degree: BTreeMap<GroupElement, Vec<Q>> = BTreeMap::new();
        let mut add = |deg: GroupElement, f: Vec<Q>| {
            let slot = by_degree.entry(deg).or_insert_with(|| vec![Q::zero(); f.len()]);
            for (x, y) in slot.iter_mut().zip(f) {
                *x += y;
            }
        };
        for p in s.index_set(1, 3) {
            let pb = s.bar(p);
            let (ap, apb) = (inst.grade_coord(a, p), inst.grade_coord(a, pb));
            let f = gens
                .iter()
                .map(|g| &ap * inst.grade_coord(g, pb) - &apb * inst.grade_coord(g, p))
                .collect();
            add(inst.sigma(p).add(a), f);
        }
        add(a.clone(), inst.phi().pairing_row(a));
        HomogeneousView {
            components: by_degree.into_iter().map(|(degree, functional)| Component { degree, functional }).collect(),
        }
    }

    pub fn apply(&self, inst: &Instance, beta: &GroupElement) -> Element {
        Element::from_terms(self.components.iter().map(|c| {
            (Monomial::new(c.degree.add(beta), inst.zero_t()), c.eval(beta))
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Component::is_null)
    }

    pub fn is_locally_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_null() || c.degree.is_zero())
    }
}

pub fn ad_locally_finite_on_a0(inst: &Instance, a: &GroupElement) -> bool {
    HomogeneousView::of(inst, a).is_locally_finite()
}

pub fn ad_vanishes_on_a0(inst: &Instance, a: &GroupElement) -> bool {
    HomogeneousView::of(inst, a).is_zero()
}

/// Generator grades plus every grade with coordinates in `{-1, 0, 1}`.
pub fn sample_grades(inst: &Instance) -> Vec<GroupElement> {
    let mut g = grade_box(inst, 1);
    for x in inst.gamma().generators() {
        if !g.contains(&x) {
            g.push(x);
        }
    }
    g
}

/// Exponent vectors bounded componentwise by `b` on the instance variables.
fn cube_exponents(inst: &Instance, b: u32) -> Vec<Vec<u32>> {
    let mut out = vec![inst.zero_t()];
    for p in inst.shape().t_indices() {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=b).map(move |e| {
                    let mut t2 = t.clone();
                    t2[p - 1] = e;
                    t2
                })
            })
            .collect();
    }
    out
}

/// Whether `ad_u` is diagonalizable on `span{x^{β,j} : j ≤ t_bound}`.
/// Fails if that span is not `ad_u`-invariant.
pub fn block_diagonalizable(inst: &Instance, u: &Element, beta: &GroupElement, t_bound: u32) -> Result<bool> {
    let basis: Vec<Monomial> = cube_exponents(inst, t_bound)
        .into_iter()
        .map(|t| Monomial::new(beta.clone(), t))
        .collect();
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let n = basis.len();
    let mut m = qlin::zeros(n, n);
    for (c, b) in basis.iter().enumerate() {
        let img = inst.bracket(u, &Element::monomial(b.clone()));
        for (mono, v) in img.terms() {
            let r = *index
                .get(mono)
                .ok_or_else(|| Error::Precondition("block is not invariant under the operator".into()))?;
            m[r][c] = v.clone();
        }
    }
    Ok(poly::is_diagonalizable(&m))
}

pub fn diagonalizable_on_blocks(inst: &Instance, u: &Element, t_bound: u32, mode: Mode) -> Result<bool> {
    let grades = sample_grades(inst);
    let results = exec::map(mode, &grades, |b| block_diagonalizable(inst, u, b, t_bound));
    let mut all = true;
    for r in results {
        all &= r?;
    }
    Ok(all)
}

/// Diagonalizability of `ad_{x^a}` on full-algebra blocks over the sampled
/// grades; requires `ad_{x^a}` to be locally finite on the group algebra.
pub fn ad_diagonalizable(inst: &Instance, a: &GroupElement, t_bound: u32, mode: Mode) -> Result<bool> {
    if !ad_locally_finite_on_a0(inst, a) {
        return Err(Error::Precondition("ad is not locally finite on the group algebra".into()));
    }
    diagonalizable_on_blocks(inst, &inst.x(a.clone()), t_bound, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::member_gamma3;

    fn g(a1: &[i64]) -> GroupElement {
        GroupElement::new(vec![], a1.to_vec())
    }

    #[test]
    fn view_reproduces_bracket() {
        for (_, inst) in fixtures::named() {
            let bx = grade_box(&inst, 1);
            for a in &bx {
                let view = HomogeneousView::of(&inst, a);
                for b in &bx {
                    assert_eq!(view.apply(&inst, b), inst.bracket(&inst.x(a.clone()), &inst.x(b.clone())));
                }
            }
        }
    }

    #[test]
    fn local_finiteness() {
        let a = fixtures::fix_a();
        assert!(ad_locally_finite_on_a0(&a, &g(&[-1, 0])));
        assert!(!ad_locally_finite_on_a0(&a, &g(&[0, 1])));
        assert!(ad_vanishes_on_a0(&a, &g(&[0, 0])));
        assert!(!ad_vanishes_on_a0(&a, &g(&[-1, 0])));
    }

    #[test]
    fn kernel_set_is_gamma3() {
        for (_, inst) in fixtures::named() {
            for a in grade_box(&inst, 2) {
                assert_eq!(
                    ad_vanishes_on_a0(&inst, &a),
                    member_gamma3(inst.phi(), inst.gamma(), inst.shape(), &a)
                );
            }
        }
        let c = fixtures::fix_c();
        assert!(ad_vanishes_on_a0(&c, &g(&[2, -1])));
    }

    #[test]
    fn diagonalizability_examples() {
        let a = fixtures::fix_a();
        assert!(ad_diagonalizable(&a, &g(&[-1, 0]), 2, Mode::Sequential).unwrap());
        let b = fixtures::fix_b();
        assert!(!ad_diagonalizable(&b, &g(&[-1, -1]), 1, Mode::Sequential).unwrap());
        let f = fixtures::fix_f();
        assert!(ad_diagonalizable(&f, &g(&[-1, -1]), 0, Mode::Sequential).unwrap());
        let gg = fixtures::fix_g();
        assert!(!ad_diagonalizable(&gg, &g(&[-1, -1]), 1, Mode::Parallel).unwrap());
        assert!(ad_diagonalizable(&a, &g(&[0, 1]), 1, Mode::Sequential).is_err());
    }

    #[test]
    fn restriction_to_group_algebra_is_diagonal() {
        // on t-degree 0 blocks every locally finite class acts by scalars
        for inst in [fixtures::fix_b(), fixtures::fix_g()] {
            let a = inst.sigma(1).neg();
            assert!(ad_diagonalizable(&inst, &a, 0, Mode::Sequential).unwrap());
        }
    }

    #[test]
    fn nonzero_value_at_zero_degree() {
        let view = HomogeneousView::of(&fixtures::fix_a(), &g(&[-1, 0]));
        let live: Vec<_> = view.components.iter().filter(|c| !c.is_null()).collect();
        assert_eq!(live.len(), 1);
        assert!(live[0].degree.is_zero());
        assert_eq!(live[0].functional, vec![q(0), q(-1)]);
    }
}
