//! Seeded random elements with bounded support.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Instance, Monomial};
use crate::lattice::GroupElement;
use crate::scalar::Q;

pub type SampleRng = ChaCha8Rng;

/// Bounds for random elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_terms: usize,
    pub coord: i64,
    pub max_deg: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_terms: 4, coord: 3, max_deg: 3 }
    }
}

/// Generator for sample `index` of a run; independent of evaluation order.
pub fn rng_for(seed: u64, index: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

pub fn random_grade(inst: &Instance, rng: &mut SampleRng, coord: i64) -> GroupElement {
    let g = inst.gamma();
    let mut draw = |n: usize| (0..n).map(|_| rng.gen_range(-coord..=coord)).collect::<Vec<_>>();
    let a0 = draw(g.m0());
    let a1 = draw(g.r1());
    GroupElement::new(a0, a1)
}

pub fn random_monomial(inst: &Instance, rng: &mut SampleRng, b: &Bounds) -> Monomial {
    let grade = random_grade(inst, rng, b.coord);
    let vars = inst.shape().t_indices();
    let mut t = inst.zero_t();
    if !vars.is_empty() {
        let d = rng.gen_range(0..=b.max_deg);
        for _ in 0..d {
            t[vars[rng.gen_range(0..vars.len())] - 1] += 1;
        }
    }
    Monomial::new(grade, t)
}

pub fn random_coefficient(rng: &mut SampleRng) -> Q {
    let mut n: i64 = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    Q::new(n.into(), rng.gen_range(1i64..=3).into())
}

/// Between one and `max_terms` terms; may cancel to fewer.
pub fn random_element(inst: &Instance, rng: &mut SampleRng, b: &Bounds) -> Element {
    let n = rng.gen_range(1..=b.max_terms.max(1));
    Element::from_terms((0..n).map(|_| {
        let m = random_monomial(inst, rng, b);
        (m, random_coefficient(rng))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn respects_bounds_and_seed() {
        let inst = fixtures::fix_g();
        let b = Bounds::default();
        for k in 0..50 {
            let u = random_element(&inst, &mut rng_for(9, k), &b);
            assert!(u.len() <= 4);
            inst.check(&u).unwrap();
            for (m, _) in u.terms() {
                assert!(m.t_degree() <= 3);
                assert!(m.grade.height() <= 3);
            }
            assert_eq!(u, random_element(&inst, &mut rng_for(9, k), &b));
        }
        let d = fixtures::fix_f();
        let u = random_element(&d, &mut rng_for(1, 0), &b);
        assert!(u.terms().all(|(m, _)| m.t_degree() == 0));
    }
}
