//! Small reference instances used by tests, benches and the CLI docs.

use crate::algebra::Instance;
use crate::lattice::{GammaSpec, PhiForm};
use crate::qlin::QMat;
use crate::scalar::q;
use crate::shape::Shape;

fn qm(rows: &[&[i64]]) -> QMat {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn unit_lattice(dim: usize, cols: &[usize]) -> QMat {
    cols.iter()
        .map(|&c| (0..dim).map(|k| q(i64::from(k + 1 == c))).collect())
        .collect()
}

pub fn build(l0: usize, l: [usize; 7], m0: usize, gamma1: QMat, phi: QMat) -> Instance {
    let shape = Shape::new(l0, l).expect("fixture shape");
    let dim = shape.dim();
    let gamma = GammaSpec::new(m0, gamma1, dim).expect("fixture lattice");
    Instance::new(shape, gamma, PhiForm::new(phi).expect("fixture form")).expect("fixture instance")
}

fn zero_form(n: usize) -> QMat {
    vec![vec![q(0); n]; n]
}

/// `ℓ₀ = ℓ₁ = 1`, `Γ = ℤ²`.
pub fn fix_a() -> Instance {
    build(1, [1, 0, 0, 0, 0, 0, 0], 0, unit_lattice(2, &[1, 2]), zero_form(2))
}

/// `ℓ₀ = 0`, `ℓ₁ = 1`, `σ₁ = (1,1)`.
pub fn fix_b() -> Instance {
    build(0, [1, 0, 0, 0, 0, 0, 0], 0, unit_lattice(2, &[1, 2]), zero_form(2))
}

/// One `I₄` pair.
pub fn fix_c() -> Instance {
    build(0, [0, 0, 0, 1, 0, 0, 0], 0, unit_lattice(2, &[1, 2]), zero_form(2))
}

/// One `I₇` pair: the polynomial algebra `ℚ[t₁, t_1̄]`.
pub fn fix_d() -> Instance {
    build(0, [0, 0, 0, 0, 0, 0, 1], 0, vec![], zero_form(0))
}

/// No index pairs; `Γ₀ = ℤ²` with `φ(e₁, e₂) = 1`.
pub fn fix_e() -> Instance {
    build(0, [0; 7], 2, vec![], qm(&[&[0, 1], &[-1, 0]]))
}

/// `FIX-E` with `φ = 0`; not simple.
pub fn fix_e_degenerate() -> Instance {
    build(0, [0; 7], 2, vec![], zero_form(2))
}

/// One `I₂` pair: no variables.
pub fn fix_f() -> Instance {
    build(0, [0, 1, 0, 0, 0, 0, 0], 0, unit_lattice(2, &[1, 2]), zero_form(2))
}

/// One `I₃` pair: both `t₁` and `t_1̄`.
pub fn fix_g() -> Instance {
    build(0, [0, 0, 1, 0, 0, 0, 0], 0, unit_lattice(2, &[1, 2]), zero_form(2))
}

/// One pair in each of `I₅`, `I₆`, `I₇`.
pub fn fix_h() -> Instance {
    build(0, [0, 0, 0, 0, 1, 1, 1], 0, unit_lattice(6, &[1, 2]), zero_form(2))
}

/// One pair in each of `I₄`, `I₆`.
pub fn fix_k() -> Instance {
    build(0, [0, 0, 0, 1, 0, 1, 0], 0, unit_lattice(4, &[1, 2, 3]), zero_form(3))
}

/// The seven named fixtures in order `A..G`.
pub fn named() -> Vec<(&'static str, Instance)> {
    vec![
        ("FIX-A", fix_a()),
        ("FIX-B", fix_b()),
        ("FIX-C", fix_c()),
        ("FIX-D", fix_d()),
        ("FIX-E", fix_e()),
        ("FIX-F", fix_f()),
        ("FIX-G", fix_g()),
    ]
}
