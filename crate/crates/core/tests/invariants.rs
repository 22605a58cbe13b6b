use proptest::prelude::*;

use palg::fixtures;
use palg::iso::{apply_g, extend_character, random_g, validate_g};
use palg::lattice::GroupElement;
use palg::random::{random_element, rng_for, Bounds};
use palg::scalar::q;
use palg::shape::Shape;

fn shape_strategy() -> impl Strategy<Value = Shape> {
    (0usize..=1, proptest::collection::vec(0usize..=1, 7)).prop_map(|(l0, l)| {
        let mut arr = [0; 7];
        arr.copy_from_slice(&l);
        arr[0] = arr[0].max(l0);
        Shape::new(l0, arr).expect("shape")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_closed_under_composition(shape in shape_strategy(), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let g = random_g(&mut rng, &shape);
        let h = random_g(&mut rng, &shape);
        prop_assert!(validate_g(&g, &shape).passed());
        prop_assert!(validate_g(&g.compose(&h), &shape).passed());
    }

    #[test]
    fn group_action_is_linear_and_compatible(shape in shape_strategy(), seed in any::<u64>(), a in proptest::collection::vec(-4i64..4, 16), b in proptest::collection::vec(-4i64..4, 16)) {
        let n = shape.dim();
        let (x, y): (Vec<_>, Vec<_>) = (a[..n].iter().map(|&v| q(v)).collect(), b[..n].iter().map(|&v| q(v)).collect());
        let sum: Vec<_> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
        let mut rng = rng_for(seed, 1);
        let g = random_g(&mut rng, &shape);
        let h = random_g(&mut rng, &shape);
        let gx = apply_g(&g, &shape, &x).unwrap();
        let gy = apply_g(&g, &shape, &y).unwrap();
        let gs: Vec<_> = gx.iter().zip(&gy).map(|(u, v)| u + v).collect();
        prop_assert_eq!(apply_g(&g, &shape, &sum).unwrap(), gs);
        let hx = apply_g(&h, &shape, &x).unwrap();
        prop_assert_eq!(apply_g(&g.compose(&h), &shape, &x).unwrap(), apply_g(&g, &shape, &hx).unwrap());
    }

    #[test]
    fn characters_are_multiplicative(v1 in 1i64..6, v2 in -5i64..6, x in proptest::collection::vec(-4i64..4, 2), y in proptest::collection::vec(-4i64..4, 2)) {
        prop_assume!(v2 != 0);
        let chi = extend_character(2, &[
            (GroupElement::from_coords(&[1, 0], 0), q(v1)),
            (GroupElement::from_coords(&[1, 1], 0), q(v2)),
        ]).unwrap();
        let (gx, gy) = (GroupElement::from_coords(&x, 0), GroupElement::from_coords(&y, 0));
        prop_assert_eq!(chi.eval(&gx.add(&gy)), chi.eval(&gx) * chi.eval(&gy));
    }

    #[test]
    fn bracket_is_antisymmetric_and_a_derivation(seed in any::<u64>(), which in 0usize..7) {
        let inst = fixtures::named().swap_remove(which).1;
        let b = Bounds { max_terms: 3, coord: 2, max_deg: 2 };
        let mut rng = rng_for(seed, 2);
        let (u, v, w) = (random_element(&inst, &mut rng, &b), random_element(&inst, &mut rng, &b), random_element(&inst, &mut rng, &b));
        prop_assert_eq!(inst.bracket(&u, &v), inst.bracket(&v, &u).neg());
        let lhs = inst.bracket(&u, &inst.multiply(&v, &w));
        let rhs = inst.multiply(&inst.bracket(&u, &v), &w).add(&inst.multiply(&v, &inst.bracket(&u, &w)));
        prop_assert_eq!(lhs, rhs);
    }
}
