//! The admissible group `G` of coordinate changes on `ℚ^{2ι₇}`.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{Check, ValidationReport};
use crate::qlin::{self, QMat};
use crate::random::SampleRng;
use crate::scalar::{fmt_q, q, qf, Q};
use crate::shape::Shape;

/// Flat indices in the order used by the `f` block:
/// `J₄` (interleaved), `I₅`, `I₆`, `Ī₅`, `Ī₆`, `J₇` (interleaved).
pub fn f_positions(shape: &Shape) -> Vec<usize> {
    let mut v = Vec::new();
    for p in shape.range(4, 4) {
        v.push(p);
        v.push(shape.bar(p));
    }
    v.extend(shape.range(5, 5));
    v.extend(shape.range(6, 6));
    v.extend(shape.range(5, 5).map(|p| shape.bar(p)));
    v.extend(shape.range(6, 6).map(|p| shape.bar(p)));
    for p in shape.range(7, 7) {
        v.push(p);
        v.push(shape.bar(p));
    }
    v
}

/// Offsets of the six row/column blocks of `f`.
#[derive(Debug, Clone, Copy)]
pub struct FLayout {
    pub l4: usize,
    pub l5: usize,
    pub l6: usize,
    pub l7: usize,
}

impl FLayout {
    pub fn of(shape: &Shape) -> FLayout {
        let l = shape.l();
        FLayout { l4: l[3], l5: l[4], l6: l[5], l7: l[6] }
    }

    pub fn size(&self) -> usize {
        2 * self.l4 + 2 * self.l5 + 2 * self.l6 + 2 * self.l7
    }

    /// `(start, len)` of block `k ∈ 0..6`.
    pub fn block(&self, k: usize) -> (usize, usize) {
        let lens = [2 * self.l4, self.l5, self.l6, self.l5, self.l6, 2 * self.l7];
        (lens[..k].iter().sum(), lens[k])
    }
}

/// `S_m`: `m` copies of `[[0,-1],[1,0]]` on the diagonal.
pub fn s_matrix(m: usize) -> QMat {
    let mut s = qlin::zeros(2 * m, 2 * m);
    for k in 0..m {
        s[2 * k][2 * k + 1] = q(-1);
        s[2 * k + 1][2 * k] = q(1);
    }
    s
}

pub fn is_symplectic(a: &QMat) -> bool {
    let n = a.len();
    if n % 2 != 0 {
        return false;
    }
    let s = s_matrix(n / 2);
    qlin::mul(&qlin::mul(&qlin::transpose(a, n), &s, n, n), a, n, n) == s
}

fn sub(m: &QMat, (r0, rl): (usize, usize), (c0, cl): (usize, usize)) -> QMat {
    m[r0..r0 + rl].iter().map(|r| r[c0..c0 + cl].to_vec()).collect()
}

fn put(m: &mut QMat, (r0, _): (usize, usize), (c0, _): (usize, usize), b: &QMat) {
    for (i, row) in b.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[r0 + i][c0 + j] = v.clone();
        }
    }
}

/// Free parameters of an `f` block.
#[derive(Debug, Clone, PartialEq)]
pub struct FParams {
    pub a1: QMat,
    pub a2: QMat,
    pub a3: QMat,
    pub b: QMat,
    pub c: QMat,
    pub d: QMat,
    /// Symmetric part of `A₃ᵀX + ½CᵀSC`, `X` the `(Ī₆, I₆)` block.
    pub y: QMat,
}

impl FParams {
    pub fn identity(lay: &FLayout) -> FParams {
        FParams {
            a1: qlin::identity(2 * lay.l4),
            a2: qlin::identity(lay.l5),
            a3: qlin::identity(lay.l6),
            b: qlin::zeros(lay.l5, 2 * lay.l4),
            c: qlin::zeros(2 * lay.l4, lay.l6),
            d: qlin::zeros(lay.l5, lay.l6),
            y: qlin::zeros(lay.l6, lay.l6),
        }
    }
}

/// The two blocks of the `Ī₆` row determined by the free parameters:
/// `−(A₃ᵀ)⁻¹CᵀSA₁` and `(A₃ᵀ)⁻¹(Y − ½CᵀSC)`.
fn dependent_blocks(p: &FParams, lay: &FLayout) -> Option<(QMat, QMat)> {
    let (m4, m6) = (2 * lay.l4, lay.l6);
    let a3ti = if m6 == 0 { Vec::new() } else { qlin::inverse(&qlin::transpose(&p.a3, m6))? };
    let s = s_matrix(lay.l4);
    let ct = qlin::transpose(&p.c, m6);
    let base = qlin::mul(&qlin::mul(&a3ti, &ct, m6, m4), &s, m4, m4);
    let neg = |m: QMat| -> QMat { m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect() };
    let left = neg(qlin::mul(&base, &p.a1, m4, m4));
    let half = qf(1, 2);
    let ay = qlin::mul(&a3ti, &p.y, m6, m6);
    let right = neg(qlin::mul(&base, &p.c, m4, m6))
        .into_iter()
        .zip(ay)
        .map(|(r, a)| r.into_iter().zip(a).map(|(x, y)| x * &half + y).collect())
        .collect();
    Some((left, right))
}

/// Assembles `f` from its free parameters; `None` if `A₃` is singular.
pub fn assemble_f(p: &FParams, lay: &FLayout) -> Option<QMat> {
    let n = lay.size();
    let mut f = qlin::zeros(n, n);
    let bl = |k| lay.block(k);
    put(&mut f, bl(0), bl(0), &p.a1);
    put(&mut f, bl(0), bl(2), &p.c);
    put(&mut f, bl(1), bl(0), &p.b);
    put(&mut f, bl(1), bl(1), &p.a2);
    put(&mut f, bl(1), bl(2), &p.d);
    put(&mut f, bl(2), bl(2), &p.a3);
    put(&mut f, bl(3), bl(3), &qlin::identity(lay.l5));
    let (left, right) = dependent_blocks(p, lay)?;
    put(&mut f, bl(4), bl(0), &left);
    put(&mut f, bl(4), bl(2), &right);
    let a3ti = if lay.l6 == 0 { Vec::new() } else { qlin::inverse(&qlin::transpose(&p.a3, lay.l6))? };
    put(&mut f, bl(4), bl(4), &a3ti);
    put(&mut f, bl(5), bl(5), &qlin::identity(2 * lay.l7));
    Some(f)
}

/// `g_ν`: a permutation `ν` of `I_{1,3}`, a `2×2` block per pair of
/// `I_{1,3}`, and the block `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct GElement {
    /// `nu[p − 1] = ν(p)` for `p ∈ I_{1,3}`.
    pub nu: Vec<usize>,
    pub blocks: Vec<QMat>,
    pub f: QMat,
}

impl GElement {
    pub fn identity(shape: &Shape) -> GElement {
        let i3 = shape.iota(3);
        GElement {
            nu: (1..=i3).collect(),
            blocks: vec![qlin::identity(2); i3],
            f: qlin::identity(FLayout::of(shape).size()),
        }
    }

    /// `b_p = det g_p`.
    pub fn b(&self, p: usize) -> Q {
        qlin::det(&self.blocks[p - 1])
    }

    /// `self ∘ h`: first `h`, then `self`.
    pub fn compose(&self, h: &GElement) -> GElement {
        let n = self.f.len();
        GElement {
            nu: h.nu.iter().map(|&p| self.nu[p - 1]).collect(),
            blocks: h
                .nu
                .iter()
                .zip(&h.blocks)
                .map(|(&hp, hb)| qlin::mul(hb, &self.blocks[hp - 1], 2, 2))
                .collect(),
            f: qlin::mul(&h.f, &self.f, n, n),
        }
    }
}

pub mod conditions {
    pub const NU: &str = "nu-permutation";
    pub const BLOCK_SHAPE: &str = "block-shape";
    pub const F_SIZE: &str = "f-size";
    pub const SYMPLECTIC: &str = "symplectic";
    pub const INVERTIBLE: &str = "invertible-blocks";
    pub const F_PATTERN: &str = "f-pattern";
}
use conditions::*;

fn check(r: &mut ValidationReport, name: &str, subject: String, ok: bool, detail: impl Into<String>) {
    r.checks.push(Check {
        name: name.into(),
        subject,
        passed: ok,
        detail: if ok { String::new() } else { detail.into() },
        witness: None,
    });
}

fn class_of(shape: &Shape, p: usize) -> usize {
    if p <= shape.l0() {
        0
    } else {
        shape.block(p)
    }
}

fn block_shape_ok(shape: &Shape, p: usize, g: &QMat) -> std::result::Result<(), String> {
    if g.len() != 2 || g.iter().any(|r| r.len() != 2) {
        return Err("block is not 2x2".into());
    }
    let (a, b, c, d) = (&g[0][0], &g[0][1], &g[1][0], &g[1][1]);
    let one = Q::one();
    match class_of(shape, p) {
        0 => {
            if !(a.is_one() && b.is_zero() && !d.is_zero()) {
                return Err("expected [[1,0],[a,b]] with b nonzero".into());
            }
        }
        1 => {
            if !(b.is_zero() && d.is_one() && a + c == one && !a.is_zero()) {
                return Err("expected [[a,0],[1-a,1]] with a nonzero".into());
            }
        }
        _ => {
            // [[a+b, a], [1-a-b, 1-a]]: columns sum to 1 and det = b ≠ 0
            if !(a + c == one && b + d == one && !(a - b).is_zero()) {
                return Err("expected [[a+b,a],[1-a-b,1-a]] with b nonzero".into());
            }
        }
    }
    Ok(())
}

pub fn validate_g(g: &GElement, shape: &Shape) -> ValidationReport {
    let mut r = ValidationReport::default();
    let i3 = shape.iota(3);
    let mut seen = vec![false; i3];
    let mut nu_ok = g.nu.len() == i3 && g.blocks.len() == i3;
    if nu_ok {
        for (k, &v) in g.nu.iter().enumerate() {
            if v == 0 || v > i3 || seen[v - 1] || class_of(shape, k + 1) != class_of(shape, v) {
                nu_ok = false;
                break;
            }
            seen[v - 1] = true;
        }
    }
    check(&mut r, NU, "nu".into(), nu_ok, "not a class-preserving permutation of the first three blocks");
    if g.blocks.len() == i3 {
        for p in 1..=i3 {
            let res = block_shape_ok(shape, p, &g.blocks[p - 1]);
            let detail = res.clone().err().unwrap_or_default();
            check(&mut r, BLOCK_SHAPE, format!("p={p}"), res.is_ok(), detail);
        }
    }
    let lay = FLayout::of(shape);
    let n = lay.size();
    let size_ok = g.f.len() == n && g.f.iter().all(|row| row.len() == n);
    check(&mut r, F_SIZE, "f".into(), size_ok, format!("f must be {n}x{n}"));
    if size_ok {
        r.extend(validate_f(&g.f, &lay));
    }
    r
}

/// Block pattern, symplectic `A₁`, invertible `A₂, A₃` and the dependent
/// `Ī₆` row of an `f` block.
pub fn validate_f(f: &QMat, lay: &FLayout) -> ValidationReport {
    let mut r = ValidationReport::default();
    let bl = |k| lay.block(k);
    let mut params = FParams {
        a1: sub(f, bl(0), bl(0)),
        a2: sub(f, bl(1), bl(1)),
        a3: sub(f, bl(2), bl(2)),
        b: sub(f, bl(1), bl(0)),
        c: sub(f, bl(0), bl(2)),
        d: sub(f, bl(1), bl(2)),
        y: Vec::new(),
    };
    check(&mut r, SYMPLECTIC, "A1".into(), is_symplectic(&params.a1), "A1^T S A1 != S");
    let inv = |m: &QMat| m.is_empty() || !qlin::det(m).is_zero();
    check(&mut r, INVERTIBLE, "A2".into(), inv(&params.a2), "A2 is singular");
    let a3_ok = inv(&params.a3);
    check(&mut r, INVERTIBLE, "A3".into(), a3_ok, "A3 is singular");
    if !a3_ok {
        return r;
    }
    params.y = extract_y(f, &params, lay);
    let sym = (0..lay.l6).all(|i| (0..i).all(|j| params.y[i][j] == params.y[j][i]));
    check(&mut r, F_PATTERN, "Y".into(), sym, "A3^T X + (1/2) C^T S C is not symmetric");
    let expected = assemble_f(&params, lay).expect("A3 invertible");
    let mut bad = None;
    'outer: for (i, row) in f.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v != &expected[i][j] {
                bad = Some((i, j, v.clone(), expected[i][j].clone()));
                break 'outer;
            }
        }
    }
    let detail = bad
        .as_ref()
        .map(|(i, j, v, e)| format!("entry ({},{}) is {}, expected {}", i + 1, j + 1, fmt_q(v), fmt_q(e)))
        .unwrap_or_default();
    check(&mut r, F_PATTERN, "f".into(), bad.is_none(), detail);
    r
}

fn extract_y(f: &QMat, p: &FParams, lay: &FLayout) -> QMat {
    let (m4, m6) = (2 * lay.l4, lay.l6);
    let x = sub(f, lay.block(4), lay.block(2));
    let ct = qlin::transpose(&p.c, m6);
    let csc = qlin::mul(&qlin::mul(&ct, &s_matrix(lay.l4), m4, m4), &p.c, m4, m6);
    let half = qf(1, 2);
    qlin::mul(&qlin::transpose(&p.a3, m6), &x, m6, m6)
        .into_iter()
        .zip(csc)
        .map(|(r, c)| r.into_iter().zip(c).map(|(a, b)| a + b * &half).collect())
        .collect()
}

/// `Ψ`: `S_{ℓ₄}` on `J₄`, `+1` at `(I₆, Ī₆)`, `−1` at `(Ī₆, I₆)`, `S_{ℓ₇}` on `J₇`.
pub fn psi_matrix(lay: &FLayout) -> QMat {
    let n = lay.size();
    let mut m = qlin::zeros(n, n);
    put(&mut m, lay.block(0), lay.block(0), &s_matrix(lay.l4));
    let (i6, _) = lay.block(2);
    let (i6b, _) = lay.block(4);
    for k in 0..lay.l6 {
        m[i6 + k][i6b + k] = q(1);
        m[i6b + k][i6 + k] = q(-1);
    }
    put(&mut m, lay.block(5), lay.block(5), &s_matrix(lay.l7));
    m
}

/// `(f⁻¹)ᵀ Ψ f⁻¹ = Ψ`.
pub fn psi_invariance_check(f: &QMat, shape: &Shape) -> Result<bool> {
    let lay = FLayout::of(shape);
    let n = lay.size();
    if f.len() != n {
        return Err(Error::Dimension { expected: n, got: f.len() });
    }
    if n == 0 {
        return Ok(true);
    }
    let fi = qlin::inverse(f).ok_or_else(|| Error::Precondition("f is singular".into()))?;
    let psi = psi_matrix(&lay);
    let lhs = qlin::mul(&qlin::mul(&qlin::transpose(&fi, n), &psi, n, n), &fi, n, n);
    Ok(lhs == psi)
}

/// `g_ν(α)` for `α` a flat vector over `J`.
pub fn apply_g(g: &GElement, shape: &Shape, alpha: &[Q]) -> Result<Vec<Q>> {
    if alpha.len() != shape.dim() {
        return Err(Error::Dimension { expected: shape.dim(), got: alpha.len() });
    }
    let mut out = vec![Q::zero(); shape.dim()];
    for p in 1..=shape.iota(3) {
        let row = [alpha[p - 1].clone(), alpha[shape.bar(p) - 1].clone()];
        let img = qlin::vec_mul(&row, &g.blocks[p - 1], 2);
        let t = g.nu[p - 1];
        out[t - 1] = img[0].clone();
        out[shape.bar(t) - 1] = img[1].clone();
    }
    let pos = f_positions(shape);
    let v: Vec<Q> = pos.iter().map(|&p| alpha[p - 1].clone()).collect();
    for (k, x) in qlin::vec_mul(&v, &g.f, pos.len()).into_iter().enumerate() {
        out[pos[k] - 1] = x;
    }
    Ok(out)
}

fn small(rng: &mut SampleRng, b: i64) -> Q {
    q(rng.gen_range(-b..=b))
}

fn nonzero(rng: &mut SampleRng, b: i64) -> Q {
    let v = rng.gen_range(1..=b);
    q(if rng.gen_bool(0.5) { v } else { -v })
}

fn random_matrix(rng: &mut SampleRng, r: usize, c: usize) -> QMat {
    (0..r).map(|_| (0..c).map(|_| small(rng, 2)).collect()).collect()
}

/// Random integer matrix of determinant `±1`.
fn random_unimodular(rng: &mut SampleRng, n: usize) -> QMat {
    loop {
        let m = random_matrix(rng, n, n);
        if n == 0 || qlin::det(&m).abs().is_one() {
            return m;
        }
    }
}

/// Product of transvections `I + k S v vᵀ`.
pub fn random_symplectic(rng: &mut SampleRng, m: usize) -> QMat {
    let n = 2 * m;
    let s = s_matrix(m);
    let mut a = qlin::identity(n);
    for _ in 0..3 {
        if n == 0 {
            break;
        }
        let v: Vec<Q> = (0..n).map(|_| small(rng, 1)).collect();
        let k = small(rng, 2);
        let sv = qlin::vec_mul(&v, &qlin::transpose(&s, n), n);
        let mut t = qlin::identity(n);
        for i in 0..n {
            for j in 0..n {
                t[i][j] += &k * &sv[i] * &v[j];
            }
        }
        a = qlin::mul(&a, &t, n, n);
    }
    a
}

pub fn random_f_params(rng: &mut SampleRng, lay: &FLayout) -> FParams {
    FParams {
        a1: random_symplectic(rng, lay.l4),
        a2: random_unimodular(rng, lay.l5),
        a3: random_unimodular(rng, lay.l6),
        b: random_matrix(rng, lay.l5, 2 * lay.l4),
        c: random_matrix(rng, 2 * lay.l4, lay.l6),
        d: random_matrix(rng, lay.l5, lay.l6),
        y: {
            let mut y = random_matrix(rng, lay.l6, lay.l6);
            for i in 0..lay.l6 {
                for j in 0..i {
                    y[i][j] = y[j][i].clone();
                }
            }
            y
        },
    }
}

/// Random admissible element with identity `ν`.
pub fn random_g(rng: &mut SampleRng, shape: &Shape) -> GElement {
    let blocks = (1..=shape.iota(3))
        .map(|p| {
            let (a, b) = (small(rng, 3), nonzero(rng, 3));
            let one = Q::one();
            match class_of(shape, p) {
                0 => vec![vec![one.clone(), Q::zero()], vec![a, b]],
                1 => vec![vec![b.clone(), Q::zero()], vec![one.clone() - &b, one]],
                _ => vec![vec![&a + &b, a.clone()], vec![&one - &a - &b, &one - &a]],
            }
        })
        .collect();
    let lay = FLayout::of(shape);
    let f = assemble_f(&random_f_params(rng, &lay), &lay).expect("A3 invertible");
    GElement { nu: (1..=shape.iota(3)).collect(), blocks, f }
}
