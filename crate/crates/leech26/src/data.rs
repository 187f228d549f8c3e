//! Shipped data files. Each file is compiled in; setting `LEECH26_DATA_DIR` makes the
//! loaders read same-named files from that directory instead.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::rings::EMatrix;

pub const DATA_DIR_ENV: &str = "LEECH26_DATA_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("e1.txt", include_str!("../data/e1.txt")),
    ("e1prime.txt", include_str!("../data/e1prime.txt")),
    ("leech_basis.txt", include_str!("../data/leech_basis.txt")),
    ("plane.txt", include_str!("../data/plane.txt")),
];

/// Reads a data file by name, honouring the directory override.
pub fn read(name: &str) -> Result<String> {
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let path = PathBuf::from(dir).join(name);
        return std::fs::read_to_string(&path).map_err(|source| Error::Io { path: path.display().to_string(), source });
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s.to_string())
        .ok_or_else(|| Error::Parse(format!("no data file named {name}")))
}

pub fn read_matrix(name: &str) -> Result<EMatrix> {
    EMatrix::parse(&read(name)?)
}

/// Reads a matrix from an arbitrary path.
pub fn read_matrix_file(path: &std::path::Path) -> Result<EMatrix> {
    let text =
        std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    EMatrix::parse(&text)
}
