//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_traits::Zero;

use palg::exec::Mode;
use palg::fixtures;
use palg::iso::{
    assemble_f, build_isomorphism, build_tau, extend_character, is_symplectic, psi_invariance_check,
    random_f_params, transported, validate_f, verify_isomorphism, FLayout, GElement,
};
use palg::lattice::{self, GammaSpec, GroupElement, PhiForm};
use palg::oracle;
use palg::qlin::{self, QMat};
use palg::random::{random_element, random_monomial, rng_for, Bounds};
use palg::scalar::{q, Q};
use palg::shape::Shape;
use palg::structure::{
    ad_diagonalizable, center_slice, check_axioms, claim3_rank, closed, fingerprint, in_m0_normalizer,
    is_centralizer_a0, is_normalizer_a0, locally_finite_classes, m_sets_membership, FingerprintBounds,
};
use palg::{Element, Error, Instance, Monomial};

type Outcome = Result<String, String>;

const MODE: Mode = Mode::Parallel;

fn qm(rows: &[&[i64]]) -> QMat {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn bounds() -> Bounds {
    Bounds { max_terms: 4, coord: 3, max_deg: 3 }
}

fn poisson_axioms() -> Outcome {
    for (name, inst) in fixtures::named() {
        let r = check_axioms(&inst, 200, 1, &bounds(), MODE);
        for c in ["skew", "jacobi", "leibniz"] {
            let chk = r.check(c).expect("named check");
            ensure(chk.failed == 0, || format!("{name}: {c} failed on {} samples", chk.failed))?;
        }
    }
    Ok("7 fixtures x 200 triples, zero counterexamples".into())
}

fn triple_agreement() -> Outcome {
    for (name, inst) in fixtures::named() {
        for k in 0..200 {
            let mut rng = rng_for(2, k);
            let u = random_element(&inst, &mut rng, &bounds());
            let v = random_element(&inst, &mut rng, &bounds());
            let b = inst.bracket(&u, &v);
            ensure(oracle::bracket_via_derivations(&inst, &u, &v) == b, || format!("{name}: derivation form differs at pair {k}"))?;
            ensure(oracle::bracket_via_leibniz(&inst, &u, &v) == b, || format!("{name}: Leibniz form differs at pair {k}"))?;
        }
    }
    let c = fixtures::fix_c();
    let (x1, x2) = (c.x(GroupElement::new(vec![], vec![1, 0])), c.x(GroupElement::new(vec![], vec![0, 1])));
    ensure(c.bracket(&x1, &x2).is_zero(), || "FIX-C: pair terms do not cancel on group elements".into())?;
    Ok("7 fixtures x 200 pairs agree; FIX-C group bracket vanishes".into())
}

/// Polynomials in `t1, t1b` keyed by exponent pairs.
type Poly2 = BTreeMap<(u32, u32), Q>;

fn to_poly2(u: &Element) -> Poly2 {
    let mut p = Poly2::new();
    for (m, c) in u.terms() {
        *p.entry((m.t[0], m.t[1])).or_insert_with(Q::zero) += c;
    }
    p.retain(|_, c| !c.is_zero());
    p
}

fn d2(p: &Poly2, var: usize) -> Poly2 {
    let mut out = Poly2::new();
    for (&(a, b), c) in p {
        let e = if var == 0 { a } else { b };
        if e > 0 {
            let key = if var == 0 { (a - 1, b) } else { (a, b - 1) };
            *out.entry(key).or_insert_with(Q::zero) += c * q(i64::from(e));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn mul2(p: &Poly2, r: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (&(a, b), c) in p {
        for (&(x, y), d) in r {
            *out.entry((a + x, b + y)).or_insert_with(Q::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn sub2(p: &Poly2, r: &Poly2) -> Poly2 {
    let mut out = p.clone();
    for (k, c) in r {
        *out.entry(*k).or_insert_with(Q::zero) -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn classical_limit() -> Outcome {
    let d = fixtures::fix_d();
    let br = d.bracket(&d.t(1).map_err(|e| e.to_string())?, &d.t(2).map_err(|e| e.to_string())?);
    ensure(br == d.one(), || "[t1, t1b] != 1".into())?;
    for k in 0..100 {
        let mut rng = rng_for(3, k);
        let u = random_element(&d, &mut rng, &bounds());
        let v = random_element(&d, &mut rng, &bounds());
        let (pu, pv) = (to_poly2(&u), to_poly2(&v));
        let expected = sub2(&mul2(&d2(&pu, 0), &d2(&pv, 1)), &mul2(&d2(&pu, 1), &d2(&pv, 0)));
        ensure(to_poly2(&d.bracket(&u, &v)) == expected, || format!("pair {k} differs from the canonical bracket"))?;
    }
    Ok("[t1,t1b]=1; 100 pairs match the canonical bracket".into())
}

fn center() -> Outcome {
    let mut all = fixtures::named();
    all.push(("FIX-H", fixtures::fix_h()));
    all.push(("FIX-K", fixtures::fix_k()));
    let mut checked = 0;
    for (name, inst) in all.iter().filter(|(_, i)| i.is_simple()) {
        let c = center_slice(inst, 3, MODE);
        ensure(c.basis.len() == 1 && c.basis[0].terms().all(|(m, _)| m.grade.is_zero() && m.t_degree() == 0), || {
            format!("{name}: center slice has dimension {}", c.basis.len())
        })?;
        checked += 1;
    }
    let e0 = fixtures::fix_e_degenerate();
    ensure(!e0.is_simple(), || "degenerate FIX-E reported simple".into())?;
    let c = center_slice(&e0, 3, MODE);
    ensure(c.basis.len() > 1, || "degenerate FIX-E center is not larger".into())?;
    Ok(format!("{checked} simple fixtures give span{{1}}; degenerate FIX-E gives dimension {}", c.basis.len()))
}

fn locally_finite_scan() -> Outcome {
    for (name, inst) in [("FIX-A", fixtures::fix_a()), ("FIX-B", fixtures::fix_b()), ("FIX-F", fixtures::fix_f()), ("FIX-G", fixtures::fix_g())] {
        let s = inst.shape();
        let mut found = locally_finite_classes(&inst, 2, MODE);
        let mut expected: Vec<GroupElement> = s.index_set(1, 3).into_iter().map(|p| inst.sigma(p).neg()).collect();
        found.sort();
        expected.sort();
        ensure(found == expected, || format!("{name}: locally finite set {found:?}"))?;
        for p in s.index_set(1, 3) {
            let diag = ad_diagonalizable(&inst, &inst.sigma(p).neg(), 2, MODE).map_err(|e| e.to_string())?;
            let want = p <= s.l0() || s.block(p) == 2;
            ensure(diag == want, || format!("{name}: p={p} diagonalizable={diag}"))?;
        }
    }
    Ok("FIX-A/B/F/G: sets equal {-sigma_p}, diagonalizability split as predicted".into())
}

fn variable_ranks() -> Outcome {
    let cases = [(fixtures::fix_a(), 0, vec![]), (fixtures::fix_b(), 1, vec!["t1"]), (fixtures::fix_g(), 2, vec!["t1", "t1b"])];
    for (inst, rank, gens) in cases {
        let r = claim3_rank(&inst, 1).map_err(|e| e.to_string())?;
        ensure(r.rank == rank && r.surviving == gens, || format!("got rank {} with {:?}", r.rank, r.surviving))?;
    }
    Ok("ranks 0/1/2 with generators {}, {t1}, {t1, t1b}".into())
}

/// Monomials with grades drawn half from the kernel lattice, half at random.
fn sample_monomials(inst: &Instance, n: u64) -> Vec<Monomial> {
    let kernel = lattice::gamma3_basis(inst.phi(), inst.gamma(), inst.shape());
    let b = Bounds { max_terms: 1, coord: 2, max_deg: 3 };
    (0..n)
        .map(|k| {
            let mut rng = rng_for(7, k);
            let mut m = random_monomial(inst, &mut rng, &b);
            if k % 2 == 0 {
                let mut g = inst.zero_grade();
                for (j, v) in kernel.iter().enumerate() {
                    g = g.add(&v.scale((k as i64 + j as i64) % 3 - 1));
                }
                m.grade = g;
            }
            m
        })
        .collect()
}

fn membership() -> Outcome {
    let mut compared = 0usize;
    for (name, inst) in fixtures::named() {
        for m in sample_monomials(&inst, 100) {
            let u = Element::monomial(m.clone());
            let pairs = [
                ("centralizer", is_centralizer_a0(&inst, &u), closed::centralizer(&inst, &m)),
                ("normalizer", is_normalizer_a0(&inst, &u), closed::normalizer(&inst, &m)),
            ];
            let sets = m_sets_membership(&inst, &u).ok();
            let in_slice = closed::n_slice(&inst, &m);
            ensure(sets.is_some() == in_slice, || format!("{name}: slice membership differs on {m:?}"))?;
            let sets = sets.unwrap_or(palg::structure::MSets { in_m: false, in_m1: false, in_m0: false });
            let lf = in_m0_normalizer(&inst, &u).unwrap_or(false);
            let more = [
                ("m", sets.in_m, closed::m(&inst, &m)),
                ("m1", sets.in_m1, closed::m1(&inst, &m)),
                ("m0", sets.in_m0, closed::m0(&inst, &m)),
                ("m0-normalizer", lf, closed::m0_normalizer(&inst, &m)),
            ];
            for (set, got, want) in pairs.into_iter().chain(more) {
                ensure(got == want, || format!("{name}: {set} predicate {got}, closed form {want} on {m:?}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} comparisons over 7 fixtures x 100 monomials agree"))
}

fn fingerprints() -> Outcome {
    let fb = FingerprintBounds::default();
    let fp = |i: &Instance| fingerprint(i, &fb, MODE).map_err(|e| e.to_string());
    let a = fixtures::fix_a();
    ensure(fp(&a)? != fp(&fixtures::fix_b())?, || "FIX-A and FIX-B fingerprints coincide".into())?;
    let mut g = GElement::identity(a.shape());
    g.blocks[0] = qm(&[&[1, 0], &[0, 2]]);
    let copy = transported(&a, &g).map_err(|e| e.to_string())?;
    ensure(fp(&a)? == fp(&copy)?, || "FIX-A and its rescaled copy differ".into())?;
    for (name, inst) in fixtures::named() {
        ensure(fp(&inst)?.matches(&inst), || format!("{name}: shape not reconstructed"))?;
    }
    Ok("A != B, A == rescaled copy, all 7 shapes reconstructed".into())
}

fn sufficiency() -> Outcome {
    let a = fixtures::fix_a();
    let mut g = GElement::identity(a.shape());
    g.blocks[0] = qm(&[&[1, 0], &[5, 1]]);
    let tau = build_tau(&a, &a, &g, &[], &[vec![], vec![]]).map_err(|e| e.to_string())?;
    let iso = build_isomorphism(&a, tau, &[]).map_err(|e| e.to_string())?;
    let r = verify_isomorphism(&a, &a, &iso, 100, 9, &bounds(), MODE);
    ensure(r.passed(), || format!("{r:?}"))?;
    let x01 = a.x(GroupElement::new(vec![], vec![0, 1]));
    let t1 = a.t(1).map_err(|e| e.to_string())?;
    let lhs = a.bracket(&iso.apply(&a, &t1), &iso.apply(&a, &x01));
    let x61 = a.x(GroupElement::new(vec![], vec![6, 1]));
    ensure(lhs == x61 && iso.apply(&a, &a.bracket(&t1, &x01)) == x61, || "chain of equalities broken".into())?;
    let n: usize = r.checks.iter().map(|c| c.passed).sum();
    Ok(format!("shear isomorphism verified on {n} checks; [θt1, θx^(0,1)] = x^(6,1)"))
}

fn small_shapes() -> Vec<Shape> {
    let mut v = Vec::new();
    for l4 in 0..=2 {
        for l5 in 0..=2 {
            for l6 in 0..=2 {
                v.push(Shape::new(0, [0, 0, 0, l4, l5, l6, 1]).expect("shape"));
            }
        }
    }
    v
}

fn matrix_identities() -> Outcome {
    let shapes = small_shapes();
    let s1 = Shape::new(0, [0, 0, 0, 1, 0, 0, 0]).expect("shape");
    ensure(!is_symplectic(&qm(&[&[1, 0], &[0, 2]])) && is_symplectic(&qm(&[&[1, 1], &[0, 1]])), || "symplectic test".into())?;
    ensure(!psi_invariance_check(&qm(&[&[2, 0], &[0, 1]]), &s1).map_err(|e| e.to_string())?, || "scaling kept Psi".into())?;
    for k in 0..100u64 {
        let shape = &shapes[k as usize % shapes.len()];
        let lay = FLayout::of(shape);
        let mut rng = rng_for(10, k);
        let p = random_f_params(&mut rng, &lay);
        let f = assemble_f(&p, &lay).ok_or("singular A3")?;
        ensure(is_symplectic(&p.a1), || format!("sample {k}: A1 not symplectic"))?;
        ensure(validate_f(&f, &lay).passed(), || format!("sample {k}: pattern rejected"))?;
        ensure(psi_invariance_check(&f, shape).map_err(|e| e.to_string())?, || format!("sample {k}: Psi not preserved"))?;
    }
    let coupled: Vec<&Shape> = shapes.iter().filter(|s| s.l()[3] > 0 && s.l()[5] > 0).collect();
    for k in 0..20u64 {
        let shape = coupled[k as usize % coupled.len()];
        let lay = FLayout::of(shape);
        let mut rng = rng_for(11, k);
        let mut p = random_f_params(&mut rng, &lay);
        let mut f = assemble_f(&p, &lay).ok_or("singular A3")?;
        match k % 4 {
            0 => {
                p.a1[0] = p.a1[0].iter().map(|x| x * q(2)).collect();
                f = assemble_f(&p, &lay).ok_or("singular A3")?;
            }
            1 => {
                let (r, _) = lay.block(4);
                f[r][0] += q(1);
            }
            2 => {
                let (r, _) = lay.block(4);
                let (c, _) = lay.block(4);
                f[r][c] *= q(2);
            }
            _ => {
                // shift Y by an antisymmetric matrix; needs a 2x2 coupling block
                let wide = Shape::new(0, [0, 0, 0, 1, 0, 2, 0]).expect("shape");
                let lay = FLayout::of(&wide);
                let mut rng = rng_for(13, k);
                let p = random_f_params(&mut rng, &lay);
                let mut g = assemble_f(&p, &lay).ok_or("singular A3")?;
                let a3ti = qlin::inverse(&qlin::transpose(&p.a3, 2)).ok_or("singular A3")?;
                let dx = qlin::mul(&a3ti, &qm(&[&[0, 1], &[-1, 0]]), 2, 2);
                let ((r, _), (c, _)) = (lay.block(4), lay.block(2));
                for i in 0..2 {
                    for j in 0..2 {
                        g[r + i][c + j] += &dx[i][j];
                    }
                }
                ensure(!validate_f(&g, &lay).passed(), || format!("invalid sample {k} accepted by the pattern check"))?;
                ensure(!psi_invariance_check(&g, &wide).map_err(|e| e.to_string())?, || format!("invalid sample {k} preserves Psi"))?;
                continue;
            }
        }
        ensure(!validate_f(&f, &lay).passed(), || format!("invalid sample {k} accepted by the pattern check"))?;
        ensure(!psi_invariance_check(&f, shape).map_err(|e| e.to_string())?, || format!("invalid sample {k} preserves Psi"))?;
    }
    Ok("100 valid f-blocks preserve Psi; 20 invalid ones rejected by both checks".into())
}

fn character() -> Outcome {
    let a = fixtures::fix_a();
    let b = fixtures::fix_b();
    for (inst, block) in [(&a, qm(&[&[1, 0], &[0, 3]])), (&b, qm(&[&[3, 0], &[-2, 1]]))] {
        let mut g = GElement::identity(inst.shape());
        g.blocks[0] = block;
        let dst = transported(inst, &g).map_err(|e| e.to_string())?;
        let tau = build_tau(inst, &dst, &g, &[], &[vec![], vec![]]).map_err(|e| e.to_string())?;
        let iso = build_isomorphism(inst, tau, &[]).map_err(|e| e.to_string())?;
        ensure(iso.chi.eval(&inst.sigma(1)) == q(3), || "chi(sigma_1) != b_1".into())?;
        ensure(verify_isomorphism(inst, &dst, &iso, 20, 4, &bounds(), MODE).passed(), || "rescaled map fails".into())?;
    }
    let ge = |c: &[i64]| GroupElement::from_coords(c, 0);
    let chi = extend_character(3, &[(ge(&[2, 0, 0]), q(9)), (ge(&[0, 1, 1]), q(-2))]).map_err(|e| e.to_string())?;
    for k in 0..100u64 {
        let mut rng = rng_for(12, k);
        use rand::Rng;
        let x = ge(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
        let y = ge(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
        ensure(chi.eval(&x.add(&y)) == chi.eval(&x) * chi.eval(&y), || format!("not multiplicative at pair {k}"))?;
    }
    let root = extend_character(1, &[(ge(&[2]), q(4))]).map_err(|e| e.to_string())?;
    ensure(root.eval(&ge(&[1])) == q(2), || "square root step".into())?;
    let err = extend_character(1, &[(ge(&[2]), q(3))]);
    ensure(err == Err(Error::RootNotRepresentable { n: 2, value: q(3) }), || format!("{err:?}"))?;
    Ok("chi(sigma)=b on two shapes, multiplicative on 100 pairs, sqrt(4)=2, sqrt(3) refused".into())
}

fn failed(shape: &Shape, gamma: &GammaSpec, phi: &PhiForm) -> Vec<String> {
    let mut r = lattice::validate_gamma(gamma, shape);
    if r.passed() {
        r.extend(lattice::validate_phi(phi, gamma, shape));
        if r.passed() && !lattice::check_simplicity(phi, gamma, shape) {
            return vec![lattice::conditions::SIMPLICITY.to_string()];
        }
    }
    let mut names = r.failed_names();
    names.dedup();
    names
}

fn mutation(l0: usize, l: [usize; 7], m0: usize, basis: QMat, phi: QMat) -> Vec<String> {
    let shape = Shape::new(l0, l).expect("shape");
    let gamma = GammaSpec::new(m0, basis, shape.dim()).expect("independent rows");
    failed(&shape, &gamma, &PhiForm::new(phi).expect("square"))
}

fn zeros(n: usize) -> QMat {
    vec![vec![q(0); n]; n]
}

fn validators() -> Outcome {
    use lattice::conditions::*;
    let mut all = fixtures::named();
    all.push(("FIX-H", fixtures::fix_h()));
    all.push(("FIX-K", fixtures::fix_k()));
    for (name, inst) in &all {
        let f = failed(inst.shape(), inst.gamma(), inst.phi());
        ensure(f.is_empty(), || format!("{name} rejected: {f:?}"))?;
    }
    // (expected condition, must be the only failure, mutated data)
    let mut cases: Vec<(&str, bool, Vec<String>)> = Vec::new();
    for k in 1..=10i64 {
        cases.push((GRADE_SUPPORT, true, mutation(0, [0, 0, 0, 0, 0, 0, 1], 0, qm(&[&[k, 0]]), zeros(1))));
        cases.push((SIGMA_IN_LATTICE, true, mutation(1, [1, 0, 0, 0, 0, 0, 0], 0, qm(&[&[k + 1, 0], &[0, 1]]), zeros(2))));
        cases.push((UNIT_IN_LATTICE, true, mutation(0, [0, 0, 0, 1, 0, 0, 0], 0, qm(&[&[k + 1, 0], &[0, 1]]), zeros(2))));
        let n = k as usize;
        let sigma_rows: QMat = (0..n)
            .map(|p| (0..2 * n).map(|c| q(i64::from(c == p || c == p + n))).collect())
            .collect();
        cases.push((LINE_MEETS_LATTICE, true, mutation(0, [n, 0, 0, 0, 0, 0, 0], 0, sigma_rows, zeros(n))));
        let phi = qm(&[&[0, k, 0], &[-k, 0, 0], &[0, 0, 0]]);
        cases.push((SIGMA_IN_RADICAL, false, mutation(1, [1, 0, 0, 0, 0, 0, 0], 1, qm(&[&[1, 0], &[0, 1]]), phi)));
        let phi = qm(&[&[0, k, -k], &[-k, 0, 0], &[k, 0, 0]]);
        cases.push((LINE_MEETS_RADICAL, true, mutation(0, [1, 0, 0, 0, 0, 0, 0], 1, qm(&[&[1, 0], &[0, 1]]), phi)));
        cases.push((SIMPLICITY, true, mutation(0, [0; 7], n, vec![], zeros(n))));
    }
    let mut per: BTreeMap<&str, usize> = BTreeMap::new();
    for (cond, only, names) in &cases {
        ensure(names.iter().any(|n| n == cond), || format!("{cond} mutation not named: {names:?}"))?;
        ensure(!only || names.len() == 1, || format!("{cond} mutation broke {names:?}"))?;
        *per.entry(cond).or_default() += 1;
    }
    let summary: Vec<String> = per.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    Ok(format!("9 fixtures accepted; rejected {}", summary.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("poisson axioms", poisson_axioms),
        ("triple bracket agreement", triple_agreement),
        ("classical limit", classical_limit),
        ("center", center),
        ("locally finite scan", locally_finite_scan),
        ("variable ranks", variable_ranks),
        ("membership closed forms", membership),
        ("fingerprint separation", fingerprints),
        ("isomorphism sufficiency", sufficiency),
        ("matrix identities", matrix_identities),
        ("character extension", character),
        ("validators", validators),
    ];
    let mut all_ok = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let res = run();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                all_ok = false;
                println!("criterion {:>2} FAIL {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
