//! JSON form of group-map data and persisted isomorphisms.

use serde::{Deserialize, Serialize};

use crate::algebra::Instance;
use crate::error::{Error, Result};
use crate::iso::{build_isomorphism, build_tau, Character, GElement, IsoMap};
use crate::lattice::GroupElement;
use crate::qlin::QMat;
use crate::scalar::{fmt_q, parse_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiOverride {
    /// Coordinates on the source generators (`Γ₀` then `Γ₁`).
    pub grade: Vec<i64>,
    pub value: String,
}

/// Input for `iso-build`; omitted parts default to the identity.
/// `chi_values` is present in persisted maps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau0: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau1: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chi: Vec<ChiOverride>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_values: Option<Vec<String>>,
}

fn matrix(rows: &[Vec<String>], path: &str) -> Result<QMat> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| parse_q(s).map_err(|e| Error::parse(format!("{path}[{i}][{j}]"), e.to_string())))
                .collect()
        })
        .collect()
}

fn strings(m: &QMat) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

impl IsoData {
    pub fn from_json(text: &str) -> Result<IsoData> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn g(&self, src: &Instance) -> Result<GElement> {
        let mut g = GElement::identity(src.shape());
        if let Some(nu) = &self.nu {
            g.nu = nu.clone();
        }
        if let Some(b) = &self.blocks {
            g.blocks = b.iter().enumerate().map(|(k, m)| matrix(m, &format!("blocks[{k}]"))).collect::<Result<_>>()?;
        }
        if let Some(f) = &self.f {
            g.f = matrix(f, "f")?;
        }
        Ok(g)
    }

    fn taus(&self, src: &Instance, dst: &Instance) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let (m0, r1, m0d) = (src.gamma().m0(), src.gamma().r1(), dst.gamma().m0());
        let tau0 = self.tau0.clone().unwrap_or_else(|| {
            (0..m0).map(|i| (0..m0d).map(|j| (i == j) as i64).collect()).collect()
        });
        let tau1 = self.tau1.clone().unwrap_or_else(|| vec![vec![0; m0d]; r1]);
        (tau0, tau1)
    }

    fn overrides(&self, src: &Instance) -> Result<Vec<(GroupElement, Q)>> {
        self.chi
            .iter()
            .enumerate()
            .map(|(k, o)| {
                if o.grade.len() != src.gamma().rank() {
                    return Err(Error::parse(format!("chi[{k}].grade"), format!("expected {} coordinates", src.gamma().rank())));
                }
                let v = parse_q(&o.value).map_err(|e| Error::parse(format!("chi[{k}].value"), e.to_string()))?;
                Ok((GroupElement::from_coords(&o.grade, src.gamma().m0()), v))
            })
            .collect()
    }

    /// Builds `θ`. Explicit `chi_values` are used as given; otherwise the
    /// character is extended from `χ(σ_p) = b_p` and the overrides.
    pub fn build(&self, src: &Instance, dst: &Instance) -> Result<IsoMap> {
        let g = self.g(src)?;
        let (tau0, tau1) = self.taus(src, dst);
        let tau = build_tau(src, dst, &g, &tau0, &tau1)?;
        match &self.chi_values {
            Some(vals) => {
                let v = vals
                    .iter()
                    .enumerate()
                    .map(|(k, s)| parse_q(s).map_err(|e| Error::parse(format!("chi_values[{k}]"), e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                IsoMap::from_parts(src, tau, Character::from_values(v)?)
            }
            None => build_isomorphism(src, tau, &self.overrides(src)?),
        }
    }

    pub fn persist(iso: &IsoMap) -> IsoData {
        let g = &iso.tau.g;
        IsoData {
            nu: Some(g.nu.clone()),
            blocks: Some(g.blocks.iter().map(strings).collect()),
            f: Some(strings(&g.f)),
            tau0: Some(iso.tau.tau0.clone()),
            tau1: Some(iso.tau.tau1.clone()),
            chi: Vec::new(),
            chi_values: Some(iso.chi.values().iter().map(fmt_q).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn persisted_map_rebuilds() {
        let a = fixtures::fix_a();
        let data = IsoData::from_json(r#"{"blocks":[[["1","0"],["5","1"]]]}"#).unwrap();
        let iso = data.build(&a, &a).unwrap();
        let saved = IsoData::persist(&iso);
        let text = serde_json::to_string(&saved).unwrap();
        let back = IsoData::from_json(&text).unwrap().build(&a, &a).unwrap();
        assert_eq!(back.chi, iso.chi);
        assert_eq!(back.tau, iso.tau);
    }

    #[test]
    fn overrides_are_checked() {
        let a = fixtures::fix_a();
        let data = IsoData::from_json(r#"{"chi":[{"grade":[1,0],"value":"2"}]}"#).unwrap();
        assert!(matches!(data.build(&a, &a), Err(Error::InconsistentCharacter(_))));
        let data = IsoData::from_json(r#"{"chi":[{"grade":[0,2],"value":"3"}]}"#).unwrap();
        assert!(matches!(data.build(&a, &a), Err(Error::RootNotRepresentable { n: 2, .. })));
        let data = IsoData::from_json(r#"{"chi":[{"grade":[0,1],"value":"-3"}]}"#).unwrap();
        assert_eq!(data.build(&a, &a).unwrap().chi.values()[1], Q::from_integer((-3).into()));
    }
}
