//! FMAT / FVEC little-endian array files.
//!
//! ```text
//! FMAT: "FMAT" | version u32 = 1 | n_tokens u64 | dim u64 | dtype u8 | payload
//! FVEC: "FVEC" | version u32 = 1 | length u64   |           dtype u8 | payload
//! ```
//!
//! `dtype` 0 is f32, 1 is f64. The payload is row-major and must be exactly
//! the size the header implies; trailing bytes are rejected.

use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, ImportanceVector};

pub const FMAT_MAGIC: &[u8; 4] = b"FMAT";
pub const FVEC_MAGIC: &[u8; 4] = b"FVEC";
pub const FORMAT_VERSION: u32 = 1;
pub const FMAT_HEADER_LEN: usize = 25;
pub const FVEC_HEADER_LEN: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dtype {
    F32,
    #[default]
    F64,
}

impl Dtype {
    pub fn code(self) -> u8 {
        match self {
            Dtype::F32 => 0,
            Dtype::F64 => 1,
        }
    }

    pub fn width(self) -> usize {
        match self {
            Dtype::F32 => 4,
            Dtype::F64 => 8,
        }
    }

    fn from_code(code: u8, offset: u64) -> Result<Self> {
        match code {
            0 => Ok(Dtype::F32),
            1 => Ok(Dtype::F64),
            other => Err(Error::Format {
                offset,
                message: format!("unknown dtype code {other}"),
            }),
        }
    }
}

fn format_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Format {
        offset: offset as u64,
        message: message.into(),
    }
}

fn u32_at(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap())
}

fn u64_at(bytes: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap())
}

fn check_preamble(bytes: &[u8], magic: &[u8; 4], header_len: usize) -> Result<()> {
    if bytes.len() < header_len {
        return Err(format_err(
            bytes.len(),
            format!(
                "truncated header: expected {header_len} bytes, found {}",
                bytes.len()
            ),
        ));
    }
    if &bytes[..4] != magic {
        return Err(format_err(
            0,
            format!(
                "bad magic {:?}, expected {:?}",
                String::from_utf8_lossy(&bytes[..4]),
                std::str::from_utf8(magic).unwrap()
            ),
        ));
    }
    let version = u32_at(bytes, 4);
    if version != FORMAT_VERSION {
        return Err(format_err(4, format!("unsupported version {version}")));
    }
    Ok(())
}

/// Decodes `count` values, widening f32 to f64 and rejecting non-finite ones.
fn decode_payload(bytes: &[u8], header_len: usize, count: u64, dtype: Dtype) -> Result<Vec<f64>> {
    let expected = count
        .checked_mul(dtype.width() as u64)
        .ok_or_else(|| format_err(header_len, "payload size overflows"))?;
    let actual = (bytes.len() - header_len) as u64;
    if actual != expected {
        let at = header_len as u64 + expected.min(actual);
        return Err(Error::Format {
            offset: at,
            message: format!("payload length mismatch: expected {expected} bytes, found {actual}"),
        });
    }
    let payload = &bytes[header_len..];
    let values: Vec<f64> = match dtype {
        Dtype::F32 => payload
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()) as f64)
            .collect(),
        Dtype::F64 => payload
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect(),
    };
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Validation(format!(
            "non-finite value {} at element {i} (byte {})",
            values[i],
            header_len + i * dtype.width()
        )));
    }
    Ok(values)
}

fn encode_payload(out: &mut Vec<u8>, values: &[f64], dtype: Dtype) {
    match dtype {
        Dtype::F32 => values
            .iter()
            .for_each(|&v| out.extend_from_slice(&(v as f32).to_le_bytes())),
        Dtype::F64 => values
            .iter()
            .for_each(|&v| out.extend_from_slice(&v.to_le_bytes())),
    }
}

pub fn decode_fmat(bytes: &[u8]) -> Result<FeatureMatrix> {
    check_preamble(bytes, FMAT_MAGIC, FMAT_HEADER_LEN)?;
    let n_tokens = u64_at(bytes, 8);
    let dim = u64_at(bytes, 16);
    let dtype = Dtype::from_code(bytes[24], 24)?;
    if n_tokens == 0 || dim == 0 {
        return Err(format_err(
            8,
            format!("empty matrix shape {n_tokens}x{dim}"),
        ));
    }
    let count = n_tokens
        .checked_mul(dim)
        .ok_or_else(|| format_err(8, "matrix shape overflows"))?;
    let values = decode_payload(bytes, FMAT_HEADER_LEN, count, dtype)?;
    FeatureMatrix::new(n_tokens as usize, dim as usize, values)
}

pub fn encode_fmat(matrix: &FeatureMatrix, dtype: Dtype) -> Vec<u8> {
    let mut out = Vec::with_capacity(FMAT_HEADER_LEN + matrix.data().len() * dtype.width());
    out.extend_from_slice(FMAT_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(matrix.n_tokens() as u64).to_le_bytes());
    out.extend_from_slice(&(matrix.dim() as u64).to_le_bytes());
    out.push(dtype.code());
    encode_payload(&mut out, matrix.data(), dtype);
    out
}

pub fn decode_fvec(bytes: &[u8]) -> Result<ImportanceVector> {
    check_preamble(bytes, FVEC_MAGIC, FVEC_HEADER_LEN)?;
    let length = u64_at(bytes, 8);
    let dtype = Dtype::from_code(bytes[16], 16)?;
    if length == 0 {
        return Err(format_err(8, "empty vector"));
    }
    let values = decode_payload(bytes, FVEC_HEADER_LEN, length, dtype)?;
    ImportanceVector::new(values)
}

pub fn encode_fvec(vector: &ImportanceVector, dtype: Dtype) -> Vec<u8> {
    let mut out = Vec::with_capacity(FVEC_HEADER_LEN + vector.len() * dtype.width());
    out.extend_from_slice(FVEC_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(vector.len() as u64).to_le_bytes());
    out.push(dtype.code());
    encode_payload(&mut out, vector.scores(), dtype);
    out
}
