use std::collections::BTreeSet;
use std::path::Path;

use refinedtrop::exactmath::{parse_rational, IntVector, Rational};
use refinedtrop::polytope::{hull, LatticePolytope, MAX_RANK};
use refinedtrop::toddint::ToddMeasure;
use refinedtrop::tropcycle::Cone;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    lattice_rank: usize,
    polytopes: Vec<RawPolytope>,
    #[serde(default)]
    todd_table: Vec<RawTableEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolytope {
    name: String,
    vertices: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTableEntry {
    rays: Vec<Vec<i64>>,
    #[serde(default)]
    lineality: Vec<Vec<i64>>,
    value: String,
}

/// A validated input file.
#[derive(Debug)]
pub struct SessionConfig {
    pub lattice_rank: usize,
    pub polytopes: Vec<(String, LatticePolytope)>,
    pub measure: ToddMeasure,
}

fn vectors(rank: usize, raw: &[Vec<i64>], what: &str) -> Result<Vec<IntVector>, CliError> {
    raw.iter()
        .map(|v| {
            if v.len() != rank {
                return Err(CliError::Validation(format!(
                    "{what}: vector {v:?} has {} coordinates, lattice rank is {rank}",
                    v.len()
                )));
            }
            Ok(IntVector::from_i64s(v))
        })
        .collect()
}

impl SessionConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        SessionConfig::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawInput =
            serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed input: {e}")))?;
        let n = raw.lattice_rank;
        if n == 0 || n > MAX_RANK {
            return Err(CliError::Validation(format!("lattice_rank must be between 1 and {MAX_RANK}, got {n}")));
        }
        let mut names = BTreeSet::new();
        let mut polytopes = Vec::new();
        for p in &raw.polytopes {
            if !names.insert(p.name.clone()) {
                return Err(CliError::Validation(format!("polytope name {:?} is used twice", p.name)));
            }
            if p.vertices.is_empty() {
                return Err(CliError::Validation(format!("polytope {:?} has no vertices", p.name)));
            }
            let vs = vectors(n, &p.vertices, &format!("polytope {:?}", p.name))?;
            let poly = hull(&vs).map_err(|e| CliError::Validation(format!("polytope {:?}: {e}", p.name)))?;
            polytopes.push((p.name.clone(), poly));
        }
        let mut entries: Vec<(Cone, Rational)> = Vec::new();
        for e in &raw.todd_table {
            let rays = vectors(n, &e.rays, "todd_table")?;
            let lin = vectors(n, &e.lineality, "todd_table")?;
            let value = parse_rational(&e.value)
                .ok_or_else(|| CliError::Validation(format!("todd_table: {:?} is not a rational", e.value)))?;
            entries.push((Cone::from_generators(&rays, &lin, n), value));
        }
        let measure = if entries.is_empty() {
            ToddMeasure::standard()
        } else {
            ToddMeasure::with_table(entries).map_err(|e| CliError::Validation(format!("todd_table: {e}")))?
        };
        Ok(SessionConfig { lattice_rank: n, polytopes, measure })
    }

    pub fn select(&self, names: &[String]) -> Result<Vec<LatticePolytope>, CliError> {
        names
            .iter()
            .map(|name| {
                self.polytopes
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, p)| p.clone())
                    .ok_or_else(|| CliError::UnknownPolytopeName(name.clone()))
            })
            .collect()
    }
}
