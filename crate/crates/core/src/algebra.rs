//! Elements of the algebra, the commutative product, the derivations `∂_p`
//! and the Poisson bracket.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, GammaSpec, GroupElement, PhiForm};
use crate::scalar::{q, Q};
use crate::shape::Shape;

/// Basis monomial `x^{α,i}`; `t` is indexed by flat position `p − 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub grade: GroupElement,
    pub t: Vec<u32>,
}

impl Monomial {
    pub fn new(grade: GroupElement, t: Vec<u32>) -> Self {
        Monomial { grade, t }
    }

    pub fn t_degree(&self) -> u32 {
        self.t.iter().sum()
    }

    /// `t`-exponent lowered at `p`, or `None` under the zero convention.
    fn lowered(&self, p: usize) -> Option<Vec<u32>> {
        let mut t = self.t.clone();
        t[p - 1] = t[p - 1].checked_sub(1)?;
        Some(t)
    }
}

/// Finite linear combination of monomials with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Q>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn monomial(m: Monomial) -> Self {
        Element::from_terms([(m, Q::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, k: &Q) -> Element {
        if k.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Distinct grades in the support.
    pub fn grades(&self) -> Vec<GroupElement> {
        let mut g: Vec<_> = self.terms.keys().map(|m| m.grade.clone()).collect();
        g.dedup();
        g
    }
}

/// A validated instance `P(ℓ⃗, Γ, 𝒥, σ, φ)`.
#[derive(Debug, Clone)]
pub struct Instance {
    shape: Shape,
    gamma: GammaSpec,
    phi: PhiForm,
    /// `σ_p` for `p ∈ I_{1,3}` at position `p − 1`.
    sigma: Vec<GroupElement>,
    simple: bool,
}

impl Instance {
    pub fn new(shape: Shape, gamma: GammaSpec, phi: PhiForm) -> Result<Instance> {
        let mut report = lattice::validate_gamma(&gamma, &shape);
        if report.passed() {
            report.extend(lattice::validate_phi(&phi, &gamma, &shape));
        }
        if !report.passed() {
            return Err(Error::InvalidInstance(report.failed_names().join(", ")));
        }
        let sigma = shape
            .index_set(1, 3)
            .into_iter()
            .map(|p| gamma.sigma_element(&shape, p).expect("validated"))
            .collect();
        let simple = lattice::check_simplicity(&phi, &gamma, &shape);
        Ok(Instance { shape, gamma, phi, sigma, simple })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn gamma(&self) -> &GammaSpec {
        &self.gamma
    }

    pub fn phi(&self) -> &PhiForm {
        &self.phi
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// `σ_p` as a group element; zero outside `J_{1,3}`.
    pub fn sigma(&self, p: usize) -> GroupElement {
        let b = self.shape.base(p);
        if b <= self.shape.iota(3) {
            self.sigma[b - 1].clone()
        } else {
            self.gamma.zero()
        }
    }

    pub fn zero_grade(&self) -> GroupElement {
        self.gamma.zero()
    }

    pub fn zero_t(&self) -> Vec<u32> {
        vec![0; self.shape.dim()]
    }

    pub fn one(&self) -> Element {
        Element::monomial(Monomial::new(self.zero_grade(), self.zero_t()))
    }

    pub fn x(&self, grade: GroupElement) -> Element {
        Element::monomial(Monomial::new(grade, self.zero_t()))
    }

    pub fn t(&self, p: usize) -> Result<Element> {
        self.shape.check_index(p)?;
        if !self.shape.t_allowed(p) {
            return Err(Error::Precondition(format!("{} is not a variable of this instance", self.shape.t_label(p))));
        }
        let mut t = self.zero_t();
        t[p - 1] = 1;
        Ok(Element::monomial(Monomial::new(self.zero_grade(), t)))
    }

    /// Monomial element, checked against the instance.
    pub fn monomial(&self, grade: GroupElement, t: Vec<u32>) -> Result<Element> {
        let m = Monomial::new(grade, t);
        self.check_monomial(&m)?;
        Ok(Element::monomial(m))
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.grade.a0.len() != self.gamma.m0() {
            return Err(Error::Dimension { expected: self.gamma.m0(), got: m.grade.a0.len() });
        }
        if m.grade.a1.len() != self.gamma.r1() {
            return Err(Error::Dimension { expected: self.gamma.r1(), got: m.grade.a1.len() });
        }
        if !self.shape.monomial_index_valid(&m.t)? {
            return Err(Error::Precondition("exponent on a variable absent from this instance".into()));
        }
        Ok(())
    }

    /// Verifies that every term of `u` belongs to this instance.
    pub fn check(&self, u: &Element) -> Result<()> {
        u.terms().try_for_each(|(m, _)| self.check_monomial(m))
    }

    /// Embedded grade coordinate `α_p`.
    pub fn grade_coord(&self, g: &GroupElement, p: usize) -> Q {
        let b = self.gamma.basis();
        g.a1.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(Q::zero(), |acc, (k, &c)| acc + &b[k][p - 1] * q(c))
    }

    pub fn grade_vector(&self, g: &GroupElement) -> Vec<Q> {
        self.gamma.embed(g)
    }

    pub fn multiply(&self, u: &Element, v: &Element) -> Element {
        let mut r = Element::zero();
        for (mu, cu) in u.terms() {
            for (mv, cv) in v.terms() {
                let t = mu.t.iter().zip(&mv.t).map(|(a, b)| a + b).collect();
                r.add_term(Monomial::new(mu.grade.add(&mv.grade), t), cu * cv);
            }
        }
        r
    }

    pub fn derive_star(&self, p: usize, u: &Element) -> Result<Element> {
        self.shape.check_index(p)?;
        Ok(Element::from_terms(
            u.terms().map(|(m, c)| (m.clone(), c * self.grade_coord(&m.grade, p))),
        ))
    }

    pub fn derive_t(&self, p: usize, u: &Element) -> Result<Element> {
        self.shape.check_index(p)?;
        Ok(Element::from_terms(u.terms().filter_map(|(m, c)| {
            let t = m.lowered(p)?;
            Some((Monomial::new(m.grade.clone(), t), c * q(i64::from(m.t[p - 1]))))
        })))
    }

    pub fn derive(&self, p: usize, u: &Element) -> Result<Element> {
        Ok(self.derive_star(p, u)?.add(&self.derive_t(p, u)?))
    }

    /// The Poisson bracket, term by term on monomial pairs.
    pub fn bracket(&self, u: &Element, v: &Element) -> Element {
        let mut r = Element::zero();
        for (mu, cu) in u.terms() {
            for (mv, cv) in v.terms() {
                self.bracket_monomials(mu, mv, &(cu * cv), &mut r);
            }
        }
        r
    }

    fn bracket_monomials(&self, mu: &Monomial, mv: &Monomial, c: &Q, out: &mut Element) {
        let s = &self.shape;
        let a = self.grade_vector(&mu.grade);
        let b = self.grade_vector(&mv.grade);
        let (i, j) = (&mu.t, &mv.t);
        let sum_grade = mu.grade.add(&mv.grade);
        let sum_t: Vec<u32> = i.iter().zip(j).map(|(x, y)| x + y).collect();
        let ex = |p: usize| q(i64::from(i[p - 1]));
        let ey = |p: usize| q(i64::from(j[p - 1]));
        let lower = |drop: &[usize]| {
            let mut t = sum_t.clone();
            for &p in drop {
                t[p - 1] -= 1;
            }
            t
        };
        let mut emit = |k: Q, g: GroupElement, t: Vec<u32>| {
            if !k.is_zero() {
                out.add_term(Monomial::new(g, t), k * c);
            }
        };

        for p in s.index_set(1, 7) {
            let pb = s.bar(p);
            let shifted = || self.sigma(p).add(&sum_grade);
            if s.in_i(p, 1, 3) {
                let k = &a[p - 1] * &b[pb - 1] - &a[pb - 1] * &b[p - 1];
                emit(k, shifted(), sum_t.clone());
            }
            if s.in_i(p, 3, 6) {
                let mut k = Q::zero();
                if j[pb - 1] > 0 {
                    k += &a[p - 1] * ey(pb);
                }
                if i[pb - 1] > 0 {
                    k -= ex(pb) * &b[p - 1];
                }
                if !k.is_zero() {
                    emit(k, shifted(), lower(&[pb]));
                }
            }
            if s.in_i(p, 1, 1) || s.in_i(p, 3, 4) {
                let mut k = Q::zero();
                if i[p - 1] > 0 {
                    k += ex(p) * &b[pb - 1];
                }
                if j[p - 1] > 0 {
                    k -= ey(p) * &a[pb - 1];
                }
                if !k.is_zero() {
                    emit(k, shifted(), lower(&[p]));
                }
            }
            if s.in_i(p, 3, 4) || s.in_i(p, 6, 7) {
                let k = ex(p) * ey(pb) - ex(pb) * ey(p);
                if !k.is_zero() {
                    emit(k, shifted(), lower(&[p, pb]));
                }
            }
        }
        let f = self.phi.eval(&mu.grade, &mv.grade).expect("grade dimensions checked");
        emit(f, sum_grade, sum_t.clone());
    }
}
