use std::collections::BTreeMap;

use crate::algebra::{Element, Instance, Monomial};
use crate::exec::{self, Mode};
use crate::lattice::GroupElement;
use crate::sparse::{Echelon, SparseRow};

/// All integer vectors of length `n` with entries in `[-b, b]`.
pub fn grade_box(inst: &Instance, b: i64) -> Vec<GroupElement> {
    let n = inst.gamma().rank();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|c| GroupElement::from_coords(&c, inst.gamma().m0())).collect()
}

/// Exponent vectors on the instance variables with total degree at most `d`.
pub fn t_exponents(inst: &Instance, d: u32) -> Vec<Vec<u32>> {
    let vars = inst.shape().t_indices();
    let mut out = vec![(inst.zero_t(), 0u32)];
    for &p in &vars {
        out = out
            .into_iter()
            .flat_map(|(t, used)| {
                (0..=d - used).map(move |e| {
                    let mut t2 = t.clone();
                    t2[p - 1] = e;
                    (t2, used + e)
                })
            })
            .collect();
    }
    out.into_iter().map(|(t, _)| t).collect()
}

/// Generators of the algebra: `x^{γ_k}` for the lattice basis and every variable.
pub fn algebra_generators(inst: &Instance) -> Vec<Element> {
    let mut g: Vec<Element> = inst.gamma().generators().into_iter().map(|x| inst.x(x)).collect();
    for p in inst.shape().t_indices() {
        g.push(inst.t(p).expect("allowed variable"));
    }
    g
}

#[derive(Debug, Clone)]
pub struct CenterSlice {
    pub unknowns: usize,
    pub basis: Vec<Element>,
}

/// Central elements supported on monomials with grade coordinates and
/// total `t`-degree bounded by `bound`.
pub fn center_slice(inst: &Instance, bound: u32, mode: Mode) -> CenterSlice {
    let mut columns = Vec::new();
    for g in grade_box(inst, i64::from(bound)) {
        for t in t_exponents(inst, bound) {
            columns.push(Monomial::new(g.clone(), t));
        }
    }
    let gens = algebra_generators(inst);
    let images = exec::map(mode, &columns, |m| {
        let e = Element::monomial(m.clone());
        gens.iter().map(|g| inst.bracket(&e, g)).collect::<Vec<_>>()
    });
    let mut rows: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
    for (col, imgs) in images.iter().enumerate() {
        for (k, img) in imgs.iter().enumerate() {
            for (m, c) in img.terms() {
                rows.entry((k, m.clone())).or_default().insert(col, c.clone());
            }
        }
    }
    let mut ech = Echelon::new();
    for (_, r) in rows {
        ech.insert(r);
    }
    let basis = ech
        .kernel(columns.len())
        .into_iter()
        .map(|x| Element::from_terms(x.into_iter().map(|(c, v)| (columns[c].clone(), v))))
        .collect();
    CenterSlice { unknowns: columns.len(), basis }
}
