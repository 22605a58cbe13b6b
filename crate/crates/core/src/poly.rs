//! Univariate polynomials over ℚ, just enough for minimal polynomials and
//! the squarefree test.

use num_traits::{One, Zero};

use crate::qlin::{self, QMat};
use crate::scalar::Q;

/// Coefficients from the constant term upward, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer((k as i64).into()))
                .collect(),
        )
    }

    fn monic(self) -> Poly {
        match self.0.last() {
            None => self,
            Some(lead) => {
                let inv = Q::one() / lead;
                Poly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let lead = d.0[dd].clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let f = &r[top] / &lead;
            for (k, c) in d.0.iter().enumerate() {
                let s = &f * c;
                r[top - dd + k] -= s;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        Poly::gcd(self, &self.derivative()).degree() == Some(0)
    }
}

/// Monic minimal polynomial of a square matrix, found from the first linear
/// dependency among `I, M, M², …`.
pub fn minimal_polynomial(m: &QMat) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly(vec![Q::one()]);
    }
    let flatten = |a: &QMat| a.iter().flatten().cloned().collect::<Vec<Q>>();
    let mut powers: Vec<Vec<Q>> = vec![flatten(&qlin::identity(n))];
    let mut cur = qlin::identity(n);
    loop {
        cur = qlin::mul(&cur, m, n, n);
        let v = flatten(&cur);
        // solve Σ c_k powers[k] = v
        if let Some(c) = qlin::solve_left(&powers, n * n, &v) {
            let mut coeffs: Vec<Q> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Q::one());
            return Poly::new(coeffs);
        }
        powers.push(v);
    }
}

pub fn is_diagonalizable(m: &QMat) -> bool {
    minimal_polynomial(m).is_squarefree()
}
