//! The grading group `Γ = Γ₀ ⊕ Γ₁`, the skew form `φ`, and the group-level
//! side conditions an instance must satisfy.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlin;
use crate::qlin::{self, QMat};
use crate::scalar::{as_i64, gcd_all, lcm_denominators, q, Q, Z};
use crate::shape::Shape;

/// Integer coordinates of a group element: `a0` on the free basis of `Γ₀`,
/// `a1` on the chosen basis of `Γ₁`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupElement {
    pub a0: Vec<i64>,
    pub a1: Vec<i64>,
}

impl GroupElement {
    pub fn zero(m0: usize, r1: usize) -> Self {
        GroupElement { a0: vec![0; m0], a1: vec![0; r1] }
    }

    pub fn new(a0: Vec<i64>, a1: Vec<i64>) -> Self {
        GroupElement { a0, a1 }
    }

    pub fn from_coords(c: &[i64], m0: usize) -> Self {
        GroupElement { a0: c[..m0].to_vec(), a1: c[m0..].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.a0.iter().chain(&self.a1).all(|&x| x == 0)
    }

    pub fn coords(&self) -> Vec<i64> {
        self.a0.iter().chain(&self.a1).copied().collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        GroupElement {
            a0: self.a0.iter().zip(&o.a0).map(|(x, y)| x + y).collect(),
            a1: self.a1.iter().zip(&o.a1).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GroupElement {
            a0: self.a0.iter().map(|x| -x).collect(),
            a1: self.a1.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        GroupElement {
            a0: self.a0.iter().map(|x| k * x).collect(),
            a1: self.a1.iter().map(|x| k * x).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Largest absolute coordinate.
    pub fn height(&self) -> i64 {
        self.a0.iter().chain(&self.a1).map(|x| x.abs()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSpec {
    m0: usize,
    dim: usize,
    /// `r1 × 2ι₇`, flat column order.
    basis: QMat,
}

impl GammaSpec {
    /// Rows must be linearly independent; dependent generator lists are
    /// rejected rather than reduced.
    pub fn new(m0: usize, basis: QMat, dim: usize) -> Result<GammaSpec> {
        for row in &basis {
            if row.len() != dim {
                return Err(Error::Dimension { expected: dim, got: row.len() });
            }
        }
        if qlin::rank(&basis, dim) != basis.len() {
            return Err(Error::Parameter("gamma1 generators are linearly dependent".into()));
        }
        Ok(GammaSpec { m0, dim, basis })
    }

    pub fn m0(&self) -> usize {
        self.m0
    }

    pub fn r1(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.m0 + self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.m0, self.r1())
    }

    /// Generators of `Γ`: the `Γ₀` basis followed by the `Γ₁` basis.
    pub fn generators(&self) -> Vec<GroupElement> {
        let n = self.rank();
        (0..n)
            .map(|k| {
                let mut c = vec![0; n];
                c[k] = 1;
                GroupElement::from_coords(&c, self.m0)
            })
            .collect()
    }

    /// Grade vector `α ∈ ℚ^{2ι₇}` of the `Γ₁` part.
    pub fn embed(&self, a: &GroupElement) -> Vec<Q> {
        let c: Vec<Q> = a.a1.iter().map(|&x| q(x)).collect();
        qlin::vec_mul(&c, &self.basis, self.dim)
    }

    /// Integer coordinates of `v` on the `Γ₁` basis, when `v ∈ Γ₁`.
    pub fn member_gamma1(&self, v: &[Q]) -> Result<Option<Vec<i64>>> {
        if v.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: v.len() });
        }
        if self.basis.is_empty() {
            return Ok(v.iter().all(Zero::is_zero).then(Vec::new));
        }
        let Some(c) = qlin::solve_left(&self.basis, self.dim, v) else { return Ok(None) };
        Ok(c.iter().map(as_i64).collect())
    }

    /// Smallest `a > 0` with `a·1_[p] ∈ Γ₁`, with its coordinates.
    pub fn line_generator(&self, p: usize) -> Option<(Q, Vec<i64>)> {
        let mut unit = vec![Q::zero(); self.dim];
        unit[p - 1] = Q::one();
        if self.basis.is_empty() {
            return None;
        }
        let c = qlin::solve_left(&self.basis, self.dim, &unit)?;
        let l = lcm_denominators(&c);
        let w: Vec<Z> = c.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
        let g = gcd_all(&w);
        let coords = w.iter().map(|x| as_i64(&Q::from_integer(x / &g))).collect::<Option<Vec<_>>>()?;
        Some((Q::new(l, g), coords))
    }

    /// `σ_p` as a group element, if it lies in `Γ₁`.
    pub fn sigma_element(&self, shape: &Shape, p: usize) -> Option<GroupElement> {
        let a1 = self.member_gamma1(&shape.sigma(p)).ok()??;
        Some(GroupElement::new(vec![0; self.m0], a1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiForm {
    m: QMat,
}

impl PhiForm {
    pub fn new(m: QMat) -> Result<PhiForm> {
        let n = m.len();
        for r in &m {
            if r.len() != n {
                return Err(Error::Dimension { expected: n, got: r.len() });
            }
        }
        Ok(PhiForm { m })
    }

    pub fn zero(n: usize) -> PhiForm {
        PhiForm { m: qlin::zeros(n, n) }
    }

    pub fn matrix(&self) -> &QMat {
        &self.m
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement) -> Result<Q> {
        let (ca, cb) = (a.coords(), b.coords());
        let n = self.size();
        if ca.len() != n || cb.len() != n {
            return Err(Error::Dimension { expected: n, got: ca.len().max(cb.len()) });
        }
        let mut acc = Q::zero();
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                if y != 0 && !self.m[i][j].is_zero() {
                    acc += &self.m[i][j] * q(x * y);
                }
            }
        }
        Ok(acc)
    }

    /// `φ(a, ·)` evaluated on each generator.
    pub fn pairing_row(&self, a: &GroupElement) -> Vec<Q> {
        let c: Vec<Q> = a.coords().iter().map(|&x| q(x)).collect();
        qlin::vec_mul(&c, &self.m, self.size())
    }

    pub fn in_radical(&self, a: &GroupElement) -> bool {
        self.pairing_row(a).iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
}

impl Check {
    fn pass(name: &str, subject: String, witness: Option<Vec<i64>>) -> Check {
        Check { name: name.into(), subject, passed: true, detail: String::new(), witness }
    }

    fn fail(name: &str, subject: String, detail: String) -> Check {
        Check { name: name.into(), subject, passed: false, detail, witness: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failed_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.failures().map(|c| c.name.clone()).collect();
        v.dedup();
        v
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

fn label(shape: &Shape, p: usize) -> String {
    if shape.is_barred(p) {
        format!("p={}b", shape.base(p))
    } else {
        format!("p={p}")
    }
}

/// Condition names used in reports.
pub mod conditions {
    pub const GRADE_SUPPORT: &str = "grade-support";
    pub const SIGMA_IN_LATTICE: &str = "sigma-in-lattice";
    pub const UNIT_IN_LATTICE: &str = "unit-in-lattice";
    pub const LINE_MEETS_LATTICE: &str = "line-meets-lattice";
    pub const FORM_DIMENSION: &str = "form-dimension";
    pub const SKEW: &str = "skew";
    pub const SIGMA_IN_RADICAL: &str = "sigma-in-radical";
    pub const LINE_MEETS_RADICAL: &str = "line-meets-radical";
    pub const SIMPLICITY: &str = "simplicity";
}
use conditions::*;

pub fn validate_gamma(spec: &GammaSpec, shape: &Shape) -> ValidationReport {
    let mut r = ValidationReport::default();
    if spec.dim() != shape.dim() {
        r.checks.push(Check::fail(
            GRADE_SUPPORT,
            "columns".into(),
            format!("gamma1 has {} columns, shape needs {}", spec.dim(), shape.dim()),
        ));
        return r;
    }
    let mut support_ok = true;
    for (k, row) in spec.basis().iter().enumerate() {
        for p in shape.all_indices() {
            if !shape.grade_allowed(p) && !row[p - 1].is_zero() {
                support_ok = false;
                r.checks.push(Check::fail(
                    GRADE_SUPPORT,
                    label(shape, p),
                    format!("generator {} has a nonzero entry at a forbidden index", k + 1),
                ));
            }
        }
    }
    if support_ok {
        r.checks.push(Check::pass(GRADE_SUPPORT, "all".into(), None));
    }
    for p in shape.index_set(1, 3) {
        match spec.member_gamma1(&shape.sigma(p)).ok().flatten() {
            Some(w) => r.checks.push(Check::pass(SIGMA_IN_LATTICE, label(shape, p), Some(w))),
            None => r.checks.push(Check::fail(
                SIGMA_IN_LATTICE,
                label(shape, p),
                "sigma_p is not an integer combination of the generators".into(),
            )),
        }
    }
    let units: Vec<usize> = shape
        .index_set(4, 6)
        .into_iter()
        .chain(shape.range(4, 4).map(|p| shape.bar(p)))
        .collect();
    for p in units {
        let mut v = vec![Q::zero(); shape.dim()];
        v[p - 1] = Q::one();
        match spec.member_gamma1(&v).ok().flatten() {
            Some(w) => r.checks.push(Check::pass(UNIT_IN_LATTICE, label(shape, p), Some(w))),
            None => r.checks.push(Check::fail(
                UNIT_IN_LATTICE,
                label(shape, p),
                "unit vector is not in gamma1".into(),
            )),
        }
    }
    for p in shape.j_set(1, 3) {
        match spec.line_generator(p) {
            Some((_, w)) => r.checks.push(Check::pass(LINE_MEETS_LATTICE, label(shape, p), Some(w))),
            None => r.checks.push(Check::fail(
                LINE_MEETS_LATTICE,
                label(shape, p),
                "no nonzero multiple of the unit vector lies in gamma1".into(),
            )),
        }
    }
    r
}

pub fn validate_phi(phi: &PhiForm, spec: &GammaSpec, shape: &Shape) -> ValidationReport {
    let mut r = ValidationReport::default();
    if phi.size() != spec.rank() {
        r.checks.push(Check::fail(
            FORM_DIMENSION,
            "matrix".into(),
            format!("form is {}x{}, group has rank {}", phi.size(), phi.size(), spec.rank()),
        ));
        return r;
    }
    let m = phi.matrix();
    let mut skew_ok = true;
    for i in 0..phi.size() {
        for j in i..phi.size() {
            if m[i][j] != -m[j][i].clone() {
                skew_ok = false;
                r.checks.push(Check::fail(
                    SKEW,
                    format!("({},{})", i + 1, j + 1),
                    "entry does not equal minus its transpose".into(),
                ));
            }
        }
    }
    if skew_ok {
        r.checks.push(Check::pass(SKEW, "all".into(), None));
    }
    if spec.dim() != shape.dim() {
        return r;
    }
    for p in shape.index_set(1, 3) {
        let Some(s) = spec.sigma_element(shape, p) else {
            r.checks.push(Check::fail(SIGMA_IN_RADICAL, label(shape, p), "sigma_p not in gamma1".into()));
            continue;
        };
        let row = phi.pairing_row(&s);
        match row.iter().position(|x| !x.is_zero()) {
            None => r.checks.push(Check::pass(SIGMA_IN_RADICAL, label(shape, p), Some(s.coords()))),
            Some(k) => r.checks.push(Check::fail(
                SIGMA_IN_RADICAL,
                label(shape, p),
                format!("pairs to {} with generator {}", crate::scalar::fmt_q(&row[k]), k + 1),
            )),
        }
    }
    for p in shape.j_set(1, 3) {
        let Some((_, w)) = spec.line_generator(p) else {
            r.checks.push(Check::fail(LINE_MEETS_RADICAL, label(shape, p), "line misses gamma1".into()));
            continue;
        };
        let g = GroupElement::new(vec![0; spec.m0()], w);
        if phi.in_radical(&g) {
            r.checks.push(Check::pass(LINE_MEETS_RADICAL, label(shape, p), Some(g.coords())));
        } else {
            r.checks.push(Check::fail(
                LINE_MEETS_RADICAL,
                label(shape, p),
                "the lattice points on the line are not in the radical".into(),
            ));
        }
    }
    r
}

/// Rational basis of the span of `L = {β ∈ Γ : β_{J_{1,3}} = 0}` in
/// coordinates `(a0, a1)`.
fn l_span(spec: &GammaSpec, shape: &Shape) -> Vec<Vec<Q>> {
    let cols = shape.j_set(1, 3);
    // r1 × |J13| restriction; kernel on the left gives the Γ₁ part of L
    let restricted: QMat = spec
        .basis()
        .iter()
        .map(|row| cols.iter().map(|&p| row[p - 1].clone()).collect())
        .collect();
    let mut out = Vec::new();
    for k in 0..spec.m0() {
        let mut v = vec![Q::zero(); spec.rank()];
        v[k] = Q::one();
        out.push(v);
    }
    let kernel = if cols.is_empty() {
        qlin::identity(spec.r1())
    } else {
        qlin::left_kernel(&restricted, cols.len())
    };
    for kv in kernel {
        let mut v = vec![Q::zero(); spec.m0()];
        v.extend(kv);
        out.push(v);
    }
    out
}

/// True when the only `α₀ ∈ Γ₀` pairing to zero with every `β ∈ Γ` that
/// vanishes on `J_{1,3}` is `0`.
pub fn check_simplicity(phi: &PhiForm, spec: &GammaSpec, shape: &Shape) -> bool {
    let m0 = spec.m0();
    if m0 == 0 {
        return true;
    }
    let basis = l_span(spec, shape);
    let n = spec.rank();
    // pairing[i][k] = φ(e_i, l_k)
    let pairing: QMat = (0..m0)
        .map(|i| {
            basis
                .iter()
                .map(|l| (0..n).fold(Q::zero(), |acc, j| acc + &phi.matrix()[i][j] * &l[j]))
                .collect()
        })
        .collect();
    qlin::rank(&pairing, basis.len()) == m0
}

pub fn member_gamma3(phi: &PhiForm, spec: &GammaSpec, shape: &Shape, a: &GroupElement) -> bool {
    if !phi.in_radical(a) {
        return false;
    }
    let v = spec.embed(a);
    shape.j_set(1, 3).iter().all(|&p| v[p - 1].is_zero())
}

/// ℤ-basis of `Γ₃ = {α ∈ Rad φ : α_{J_{1,3}} = 0}`.
pub fn gamma3_basis(phi: &PhiForm, spec: &GammaSpec, shape: &Shape) -> Vec<GroupElement> {
    let n = spec.rank();
    let cols13 = shape.j_set(1, 3);
    let width = n + cols13.len();
    let rows: QMat = (0..n)
        .map(|i| {
            let mut r = phi.matrix()[i].clone();
            for &p in &cols13 {
                r.push(if i < spec.m0() { Q::zero() } else { spec.basis()[i - spec.m0()][p - 1].clone() });
            }
            r
        })
        .collect();
    if width == 0 {
        return spec.generators();
    }
    let z = intlin::clear_column_denominators(&rows, width);
    intlin::left_kernel(&z, width)
        .into_iter()
        .map(|k| {
            let c: Vec<i64> = k.iter().map(|x| as_i64(&Q::from_integer(x.clone())).expect("coordinate overflow")).collect();
            GroupElement::from_coords(&c, spec.m0())
        })
        .collect()
}
