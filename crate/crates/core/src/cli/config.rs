//! JSON instance configuration.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::Instance;
use crate::error::{Error, Result};
use crate::lattice::{GammaSpec, PhiForm};
use crate::qlin::QMat;
use crate::scalar::{fmt_q, parse_q};
use crate::shape::Shape;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeConfig {
    pub l0: usize,
    pub l: [usize; 7],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub shape: ShapeConfig,
    #[serde(default)]
    pub gamma0_rank: usize,
    #[serde(default)]
    pub gamma1_basis: Vec<Vec<String>>,
    #[serde(default)]
    pub phi: Vec<Vec<String>>,
}

/// Parsed but not yet validated data.
#[derive(Debug, Clone)]
pub struct RawInstance {
    pub shape: Shape,
    pub gamma: GammaSpec,
    pub phi: PhiForm,
    /// Hex SHA-256 of the canonical re-serialization.
    pub digest: String,
}

fn rational_matrix(rows: &[Vec<String>], path: &str, cols: usize) -> Result<QMat> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != cols {
                return Err(Error::parse(format!("{path}[{i}]"), format!("expected {cols} entries, got {}", r.len())));
            }
            r.iter()
                .enumerate()
                .map(|(j, s)| parse_q(s).map_err(|e| Error::parse(format!("{path}[{i}][{j}]"), e.to_string())))
                .collect()
        })
        .collect()
}

fn canonical(m: &QMat) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

impl InstanceConfig {
    pub fn from_json(text: &str) -> Result<InstanceConfig> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn from_instance(inst: &Instance) -> InstanceConfig {
        InstanceConfig {
            shape: ShapeConfig { l0: inst.shape().l0(), l: inst.shape().l() },
            gamma0_rank: inst.gamma().m0(),
            gamma1_basis: canonical(inst.gamma().basis()),
            phi: canonical(inst.phi().matrix()),
        }
    }

    /// Structural parse: every failure here is malformed input.
    pub fn parse(&self) -> Result<RawInstance> {
        let shape = Shape::new(self.shape.l0, self.shape.l).map_err(|e| Error::parse("shape", e.to_string()))?;
        let dim = shape.dim();
        let basis = rational_matrix(&self.gamma1_basis, "gamma1_basis", dim)?;
        let gamma = GammaSpec::new(self.gamma0_rank, basis.clone(), dim)
            .map_err(|e| Error::parse("gamma1_basis", e.to_string()))?;
        let n = gamma.rank();
        if self.phi.len() != n {
            return Err(Error::parse("phi", format!("expected {n} rows, got {}", self.phi.len())));
        }
        let m = rational_matrix(&self.phi, "phi", n)?;
        let canonical_cfg = InstanceConfig {
            shape: self.shape.clone(),
            gamma0_rank: self.gamma0_rank,
            gamma1_basis: canonical(&basis),
            phi: canonical(&m),
        };
        let bytes = serde_json::to_vec(&canonical_cfg).expect("serializable");
        let digest = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        Ok(RawInstance { shape, gamma, phi: PhiForm::new(m)?, digest })
    }
}

impl RawInstance {
    pub fn instance(&self) -> Result<Instance> {
        Instance::new(self.shape.clone(), self.gamma.clone(), self.phi.clone())
    }
}

pub fn load_instance(text: &str) -> Result<(Instance, String)> {
    let raw = InstanceConfig::from_json(text)?.parse()?;
    Ok((raw.instance()?, raw.digest))
}
