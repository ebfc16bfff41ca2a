//! The shipped collection of nilpotent Lie algebras with expanding
//! automorphisms, described by `catalogue.toml` in a data directory.

use crate::format::{parse_lie, parse_matrix, ParseError};
use crate::lie::LieAlgebra;
use crate::linalg::QMat;
use serde::Deserialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const MANIFEST: &str = "catalogue.toml";

/// Data directory shipped with the crate sources.
pub fn default_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/catalogue"))
}

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
}

#[derive(Debug, Deserialize)]
struct Manifest {
    golden: String,
    #[serde(rename = "entry")]
    entries: Vec<ManifestEntry>,
}

#[derive(Debug, Deserialize)]
struct ManifestEntry {
    name: String,
    algebra: String,
    automorphism: String,
}

#[derive(Debug, Clone)]
pub struct CatalogueEntry {
    pub name: String,
    pub algebra_path: PathBuf,
    pub algebra: LieAlgebra,
    pub automorphism_path: PathBuf,
    pub automorphism: QMat,
}

#[derive(Debug, Clone)]
pub struct Catalogue {
    pub dir: PathBuf,
    pub entries: Vec<CatalogueEntry>,
    pub golden_path: PathBuf,
    pub golden: String,
}

fn read(path: &Path) -> Result<String, CatalogueError> {
    std::fs::read_to_string(path).map_err(|source| CatalogueError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and parses every file named by the manifest. Jacobi and bracket
/// preservation are not checked here.
pub fn load(dir: &Path) -> Result<Catalogue, CatalogueError> {
    let manifest_path = dir.join(MANIFEST);
    let manifest: Manifest =
        toml::from_str(&read(&manifest_path)?).map_err(|e| CatalogueError::Manifest {
            path: manifest_path.clone(),
            message: e.to_string(),
        })?;
    let mut entries = Vec::with_capacity(manifest.entries.len());
    for e in manifest.entries {
        let algebra_path = dir.join(&e.algebra);
        let algebra = parse_lie(&read(&algebra_path)?).map_err(|source| CatalogueError::Parse {
            path: algebra_path.clone(),
            source,
        })?;
        let automorphism_path = dir.join(&e.automorphism);
        let automorphism =
            parse_matrix(&read(&automorphism_path)?).map_err(|source| CatalogueError::Parse {
                path: automorphism_path.clone(),
                source,
            })?;
        entries.push(CatalogueEntry {
            name: e.name,
            algebra_path,
            algebra,
            automorphism_path,
            automorphism,
        });
    }
    let golden_path = dir.join(&manifest.golden);
    let golden = read(&golden_path)?;
    Ok(Catalogue {
        dir: dir.to_path_buf(),
        entries,
        golden_path,
        golden,
    })
}
