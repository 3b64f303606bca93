//! JSON forms of classes, certificates, polytopes, fans and divisors.

use std::path::Path;

use serde::{Deserialize, Serialize};

use nefdex_core::rational::{format_q, Q};
use nefdex_core::tau::{DecompositionCertificate, DualCertificate};
use nefdex_core::toric::{Fan, LatticePolytope, MinkowskiDecomposition};
use nefdex_core::{DivisorClass, RationalClass};

use crate::CliError;

pub fn rat(x: &Q) -> String {
    format_q(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClassJson {
    pub lattice: String,
    pub coords: Vec<i64>,
}

impl From<&DivisorClass> for DivisorClassJson {
    fn from(c: &DivisorClass) -> Self {
        Self {
            lattice: c.lattice().id().to_string(),
            coords: c.coords().to_vec(),
        }
    }
}

/// Rational coordinates as `[["num","den"], …]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalClassJson {
    pub lattice: String,
    pub coords: Vec<[String; 2]>,
}

impl From<&RationalClass> for RationalClassJson {
    fn from(c: &RationalClass) -> Self {
        Self {
            lattice: c.lattice().id().to_string(),
            coords: c
                .coords()
                .iter()
                .map(|x| [x.numer().to_string(), x.denom().to_string()])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualJson {
    pub pi: Vec<String>,
    pub lambda: String,
    pub verified_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartJson {
    pub coeff: String,
    pub vertices: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinkowskiJson {
    pub parts: Vec<PartJson>,
    pub shift: Vec<String>,
}

impl From<&MinkowskiDecomposition> for MinkowskiJson {
    fn from(d: &MinkowskiDecomposition) -> Self {
        Self {
            parts: d
                .parts
                .iter()
                .map(|(l, p)| PartJson {
                    coeff: rat(l),
                    vertices: p.vertices().to_vec(),
                })
                .collect(),
            shift: d.shift.iter().map(rat).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub ring: String,
    pub objective: String,
    pub terms: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dual: Option<DualJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minkowski: Option<MinkowskiJson>,
}

impl CertificateJson {
    pub fn new(primal: &DecompositionCertificate, dual: Option<&DualCertificate>) -> Self {
        Self {
            ring: primal.ring.as_str().to_string(),
            objective: rat(&primal.objective),
            terms: primal
                .terms
                .iter()
                .map(|t| TermJson {
                    coeff: rat(&t.coeff),
                    class: t.class.clone(),
                })
                .collect(),
            dual: dual.map(|d| DualJson {
                pi: d.pi.iter().map(rat).collect(),
                lambda: rat(&d.lambda),
                verified_degree: d.verified_degree,
            }),
            minkowski: None,
        }
    }

    /// SHA-256 of the compact JSON form, in hex.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let bytes = serde_json::to_vec(self).expect("certificate serializes");
        Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeFile {
    pub fn to_polytope(&self) -> Result<LatticePolytope, CliError> {
        if let Some(v) = self.vertices.iter().find(|v| v.len() != self.dim) {
            return Err(CliError::Input(format!(
                "vertex {v:?} does not have dimension {}",
                self.dim
            )));
        }
        Ok(LatticePolytope::from_points(self.dim, &self.vertices)?)
    }
}

impl From<&LatticePolytope> for PolytopeFile {
    fn from(p: &LatticePolytope) -> Self {
        Self {
            dim: p.dim(),
            vertices: p.vertices().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl FanFile {
    pub fn to_fan(&self) -> Result<Fan, CliError> {
        Ok(Fan::new(self.rays.clone(), self.cones.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub coeffs: Vec<i64>,
}

/// Contents of an input file, told apart by their keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFile {
    Polytope(PolytopeFile),
    Fan(FanFile),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_input(path: &Path) -> Result<InputFile, CliError> {
    let text = read(path)?;
    let value: serde_json::Value = parse(path, &text)?;
    // dispatch on a key so parse errors describe the intended shape
    if value.get("rays").is_some() {
        Ok(InputFile::Fan(parse(path, &text)?))
    } else {
        Ok(InputFile::Polytope(parse(path, &text)?))
    }
}

pub fn load_divisor(path: &Path) -> Result<DivisorFile, CliError> {
    let text = read(path)?;
    parse(path, &text)
}

/// Parses a class vector such as `[2,1,1,1,1]`.
pub fn parse_class(text: &str) -> Result<Vec<i64>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed class {text:?}: {e}")))
}
