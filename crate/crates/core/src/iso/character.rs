//! Multiplicative characters `χ : Γ → 𝔽^×`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlin::{self, ZMat};
use crate::lattice::GroupElement;
use crate::scalar::{fmt_q, pow_z, rational_root, Q, Z};

/// A character, stored by its values on the generators of `Γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    values: Vec<Q>,
}

impl Character {
    pub fn trivial(rank: usize) -> Character {
        Character { values: vec![Q::one(); rank] }
    }

    pub fn from_values(values: Vec<Q>) -> Result<Character> {
        if values.iter().any(Zero::is_zero) {
            return Err(Error::Parameter("character values must be nonzero".into()));
        }
        Ok(Character { values })
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn eval(&self, a: &GroupElement) -> Q {
        self.eval_coords(&a.coords())
    }

    pub fn eval_coords(&self, c: &[i64]) -> Q {
        self.values
            .iter()
            .zip(c)
            .filter(|(_, &k)| k != 0)
            .fold(Q::one(), |acc, (v, &k)| acc * pow_z(v, &Z::from(k)))
    }

    pub fn inverse(&self) -> Character {
        Character { values: self.values.iter().map(|v| v.recip()).collect() }
    }
}

fn prod_pow(vals: &[Q], exps: &[Z]) -> Q {
    vals.iter()
        .zip(exps)
        .filter(|(_, e)| !e.is_zero())
        .fold(Q::one(), |acc, (v, e)| acc * pow_z(v, e))
}

/// Extends prescribed values `χ(δ) = v` to a character on all of `Γ`.
///
/// The pairs must be consistent on the subgroup they generate. Directions
/// of `Γ` outside the rational span of the `δ` get value `1`; a quotient
/// step of index `d` takes a rational `d`-th root.
pub fn extend_character(rank: usize, prescribed: &[(GroupElement, Q)]) -> Result<Character> {
    if prescribed.iter().any(|(_, v)| v.is_zero()) {
        return Err(Error::Parameter("character values must be nonzero".into()));
    }
    if prescribed.is_empty() {
        return Ok(Character::trivial(rank));
    }
    let g: ZMat = prescribed
        .iter()
        .map(|(a, _)| {
            let c = a.coords();
            if c.len() != rank {
                return Err(Error::Dimension { expected: rank, got: c.len() });
            }
            Ok(c.into_iter().map(BigInt::from).collect())
        })
        .collect::<Result<_>>()?;
    let vals: Vec<Q> = prescribed.iter().map(|(_, v)| v.clone()).collect();
    let d = intlin::diagonalize(&g, rank);
    for row in &d.u[d.rank..] {
        let v = prod_pow(&vals, row);
        if !v.is_one() {
            let rel: Vec<String> = row.iter().map(|z| z.to_string()).collect();
            return Err(Error::InconsistentCharacter(format!(
                "relation ({}) evaluates to {}",
                rel.join(","),
                fmt_q(&v)
            )));
        }
    }
    // values on the basis w_i = rows of v⁻¹
    let mut w = vec![Q::one(); rank];
    for i in 0..d.rank {
        let target = prod_pow(&vals, &d.u[i]);
        let n = d.diag[i].abs().to_u64().ok_or_else(|| Error::Parameter("index too large".into()))?;
        let root = if d.diag[i].is_negative() { target.recip() } else { target };
        w[i] = rational_root(&root, n).ok_or(Error::RootNotRepresentable { n, value: root })?;
    }
    // χ(e_k) = Π_i χ(w_i)^{v_ki}
    let values = (0..rank).map(|k| prod_pow(&w, &d.v[k])).collect();
    Ok(Character { values })
}
