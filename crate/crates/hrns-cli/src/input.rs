//! File formats accepted by the CLI. Parse problems carry file and field
//! context and map to the parse exit code; semantic sample problems map to
//! the data exit code inside the command handlers.

use std::collections::BTreeMap;
use std::path::Path;

use hrns_core::{CharError, Cone, LatticePoint, Polynomial, SemicharacterSample};
use num_complex::Complex64;
use serde::Deserialize;

use crate::report::{Failure, EXIT_DATA, EXIT_PARSE};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpecFile {
    pub rank: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(default)]
    pub name: Option<String>,
}

pub struct LoadedCone {
    pub cone: Cone,
    pub name: Option<String>,
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))
}

pub fn load_cone(path: &Path) -> Result<LoadedCone, Failure> {
    let text = read_file(path)?;
    let spec: ConeSpecFile = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let generators = spec.generators.into_iter().map(LatticePoint::new).collect();
    let cone = Cone::new(spec.rank, generators)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Ok(LoadedCone { cone, name: spec.name })
}

/// Polynomials are accepted in two shapes: an object with a `terms` list of
/// `{"coeff": [re, im], "exp": [..]}` entries, or a compact list of
/// `[re, im, [exp..]]` triples.
#[derive(Deserialize)]
#[serde(untagged)]
enum PolyFile {
    Object { terms: Vec<PolyTerm> },
    List(Vec<(f64, f64, Vec<i64>)>),
}

#[derive(Deserialize)]
struct PolyTerm {
    coeff: (f64, f64),
    exp: Vec<i64>,
}

pub fn load_poly(path: &Path) -> Result<Polynomial, Failure> {
    let text = read_file(path)?;
    let file: PolyFile = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let terms: Vec<(LatticePoint, Complex64)> = match file {
        PolyFile::Object { terms } => terms
            .into_iter()
            .map(|t| (LatticePoint::new(t.exp), Complex64::new(t.coeff.0, t.coeff.1)))
            .collect(),
        PolyFile::List(list) => list
            .into_iter()
            .map(|(re, im, exp)| (LatticePoint::new(exp), Complex64::new(re, im)))
            .collect(),
    };
    Polynomial::from_terms(terms)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleFile {
    values: Vec<SampleEntry>,
}

#[derive(Deserialize)]
struct SampleEntry {
    exp: Vec<i64>,
    value: (f64, f64),
}

/// Sample files are validated against the cone on load; violations of the
/// semicharacter laws are data errors rather than parse errors.
pub fn load_sample(cone: &Cone, path: &Path) -> Result<SemicharacterSample, Failure> {
    let text = read_file(path)?;
    let file: SampleFile = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let mut values: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
    for entry in file.values {
        values.insert(
            LatticePoint::new(entry.exp),
            Complex64::new(entry.value.0, entry.value.1),
        );
    }
    SemicharacterSample::new(cone, values).map_err(|e| {
        let code = match e {
            CharError::RankMismatch { .. } => EXIT_PARSE,
            _ => EXIT_DATA,
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    })
}
