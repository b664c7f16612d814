//! File formats: FMAT/FVEC binary arrays (with a CSV fallback), JSON
//! selection documents, sweep CSVs and PGM selection masks.
//!
//! Every writer goes through a temporary file in the destination directory
//! that is renamed into place once complete.

mod binary;
mod selection_doc;
mod text;

pub use binary::{
    decode_fmat, decode_fvec, encode_fmat, encode_fvec, Dtype, FMAT_HEADER_LEN, FMAT_MAGIC,
    FORMAT_VERSION, FVEC_HEADER_LEN, FVEC_MAGIC,
};
pub use selection_doc::{
    parse_selection, read_selection, render_selection, write_selection, SelectionDocument,
};
pub use text::{
    format_sig9, parse_features_csv, parse_importance_csv, render_angles_csv, render_features_csv,
    render_importance_csv, render_mask_pgm, render_sweep_csv, write_angles_csv, write_mask_pgm,
    write_sweep_csv,
};

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, ImportanceVector};

fn is_csv(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

pub(crate) fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::file(path, e))
}

/// Writes `bytes` to `path` via a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::file(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::file(path, e))?;
    tmp.flush().map_err(|e| Error::file(path, e))?;
    tmp.persist(path).map_err(|e| Error::file(path, e.error))?;
    Ok(())
}

/// Reads FMAT, or CSV when the extension is `.csv`.
pub fn read_features(path: impl AsRef<Path>) -> Result<FeatureMatrix> {
    let path = path.as_ref();
    let bytes = read_bytes(path)?;
    if is_csv(path) {
        parse_features_csv(&bytes)
    } else {
        decode_fmat(&bytes)
    }
}

/// Writes f64 FMAT, or CSV when the extension is `.csv`.
pub fn write_features(matrix: &FeatureMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_features_as(matrix, path, Dtype::F64)
}

pub fn write_features_as(
    matrix: &FeatureMatrix,
    path: impl AsRef<Path>,
    dtype: Dtype,
) -> Result<()> {
    let path = path.as_ref();
    if is_csv(path) {
        write_atomic(path, render_features_csv(matrix).as_bytes())
    } else {
        write_atomic(path, &encode_fmat(matrix, dtype))
    }
}

/// Reads FVEC, or CSV (one value per line) when the extension is `.csv`.
pub fn read_importance(path: impl AsRef<Path>) -> Result<ImportanceVector> {
    let path = path.as_ref();
    let bytes = read_bytes(path)?;
    if is_csv(path) {
        parse_importance_csv(&bytes)
    } else {
        decode_fvec(&bytes)
    }
}

pub fn write_importance(vector: &ImportanceVector, path: impl AsRef<Path>) -> Result<()> {
    write_importance_as(vector, path, Dtype::F64)
}

pub fn write_importance_as(
    vector: &ImportanceVector,
    path: impl AsRef<Path>,
    dtype: Dtype,
) -> Result<()> {
    let path = path.as_ref();
    if is_csv(path) {
        write_atomic(path, render_importance_csv(vector).as_bytes())
    } else {
        write_atomic(path, &encode_fvec(vector, dtype))
    }
}
