use std::path::Path;

use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, ImportanceVector};
use crate::metrics::{AngleHistogram, TradeoffPoint};
use crate::selection::Selection;

use super::write_atomic;

fn csv_reader(bytes: &[u8]) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(bytes)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
    Error::Parse {
        line,
        column: 0,
        message: e.to_string(),
    }
}

fn parse_field(field: &str, line: usize, column: usize) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::Parse {
        line,
        column,
        message: format!("'{field}' is not a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Validation(format!(
            "non-finite value at line {line}, column {column}"
        )));
    }
    Ok(v)
}

/// One token per line, comma-separated decimal values.
pub fn parse_features_csv(bytes: &[u8]) -> Result<FeatureMatrix> {
    let mut data = Vec::new();
    let mut dim = None;
    let mut n = 0;
    for record in csv_reader(bytes).records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.iter().all(str::is_empty) {
            continue;
        }
        match dim {
            None => dim = Some(record.len()),
            Some(d) if d != record.len() => {
                return Err(Error::Parse {
                    line,
                    column: record.len().min(d) + 1,
                    message: format!("expected {d} columns, found {}", record.len()),
                })
            }
            _ => {}
        }
        for (c, field) in record.iter().enumerate() {
            data.push(parse_field(field, line, c + 1)?);
        }
        n += 1;
    }
    let dim = dim.ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "no rows".into(),
    })?;
    FeatureMatrix::new(n, dim, data)
}

/// One value per line.
pub fn parse_importance_csv(bytes: &[u8]) -> Result<ImportanceVector> {
    let mut values = Vec::new();
    for record in csv_reader(bytes).records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 1 {
            return Err(Error::Parse {
                line,
                column: 2,
                message: format!("expected one value per line, found {}", record.len()),
            });
        }
        values.push(parse_field(&record[0], line, 1)?);
    }
    if values.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no values".into(),
        });
    }
    ImportanceVector::new(values)
}

pub fn render_features_csv(matrix: &FeatureMatrix) -> String {
    let mut out = String::new();
    for row in matrix.rows() {
        let fields: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn render_importance_csv(vector: &ImportanceVector) -> String {
    vector.scores().iter().map(|v| format!("{v:?}\n")).collect()
}

/// Shortest decimal form of `v` rounded to 9 significant digits.
pub fn format_sig9(v: f64) -> String {
    let rounded: f64 = format!("{v:.8e}").parse().unwrap_or(v);
    format!("{rounded}")
}

pub fn render_sweep_csv(points: &[TradeoffPoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["method", "lambda", "hopkins", "retention"])
        .map_err(io)?;
    for p in points {
        let lambda = p.lambda.map(format_sig9).unwrap_or_default();
        w.write_record([
            p.method.as_str(),
            &lambda,
            &format_sig9(p.hopkins),
            &format_sig9(p.retention),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Header `method,lambda,hopkins,retention`, one row per point.
pub fn write_sweep_csv(points: &[TradeoffPoint], path: impl AsRef<Path>) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Domain("no sweep points to write".into()));
    }
    write_atomic(path.as_ref(), render_sweep_csv(points)?.as_bytes())
}

pub fn render_angles_csv(hist: &AngleHistogram) -> String {
    let mut out = String::from("bin_low_deg,bin_high_deg,count\n");
    for (b, &count) in hist.counts.iter().enumerate() {
        let (lo, hi) = hist.bin_edges(b);
        out.push_str(&format!(
            "{},{},{count}\n",
            format_sig9(lo),
            format_sig9(hi)
        ));
    }
    out.push_str(&format!("mass_above_90={}\n", hist.mass_above_90));
    out
}

pub fn write_angles_csv(hist: &AngleHistogram, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), render_angles_csv(hist).as_bytes())
}

/// Binary PGM of a `grid_w × grid_h` token grid: token `i` sits at column
/// `i mod grid_w`, row `i div grid_w`; selected tokens are 255, pruned 0.
pub fn render_mask_pgm(
    selection: &Selection,
    grid_w: usize,
    grid_h: usize,
    n_tokens: usize,
) -> Result<Vec<u8>> {
    if grid_w == 0 || grid_h == 0 || grid_w.checked_mul(grid_h) != Some(n_tokens) {
        return Err(Error::Domain(format!(
            "grid {grid_w}x{grid_h} does not cover {n_tokens} tokens"
        )));
    }
    selection.validate(Some(n_tokens))?;
    let mut out = format!("P5\n{grid_w} {grid_h}\n255\n").into_bytes();
    let header = out.len();
    out.resize(header + n_tokens, 0);
    for &i in &selection.indices {
        out[header + i] = 255;
    }
    Ok(out)
}

pub fn write_mask_pgm(
    selection: &Selection,
    grid_w: usize,
    grid_h: usize,
    n_tokens: usize,
    path: impl AsRef<Path>,
) -> Result<()> {
    let bytes = render_mask_pgm(selection, grid_w, grid_h, n_tokens)?;
    write_atomic(path.as_ref(), &bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selection::Method;

    #[test]
    fn features_csv() {
        let m = parse_features_csv(b"1,0\n0,1\n").unwrap();
        assert_eq!(m.n_tokens(), 2);
        assert_eq!(m.dim(), 2);
        assert_eq!(m.data(), &[1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            parse_features_csv(b"1,0\n0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_features_csv(b"1,0\n0,x\n"),
            Err(Error::Parse {
                line: 2,
                column: 2,
                ..
            })
        ));
        assert!(parse_features_csv(b"").is_err());
    }

    #[test]
    fn importance_csv() {
        let v = parse_importance_csv(b"0.5\n0.25\n").unwrap();
        assert_eq!(v.scores(), &[0.5, 0.25]);
        assert!(parse_importance_csv(b"0.5,1\n").is_err());
        assert!(parse_importance_csv(b"nan\n").is_err());
    }

    #[test]
    fn sig9() {
        assert_eq!(format_sig9(0.5), "0.5");
        assert_eq!(format_sig9(0.30000000000000004), "0.3");
        assert_eq!(format_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(format_sig9(0.0), "0");
    }

    #[test]
    fn sweep_rows() {
        let pts = vec![TradeoffPoint::new(Method::Mmr, Some(0.5), 0.3, 0.8)];
        let s = render_sweep_csv(&pts).unwrap();
        assert_eq!(s, "method,lambda,hopkins,retention\nmmr,0.5,0.3,0.8\n");
        let pts = vec![TradeoffPoint::new(Method::Fps, None, 0.25, 0.5)];
        assert_eq!(
            render_sweep_csv(&pts).unwrap().lines().nth(1).unwrap(),
            "fps,,0.25,0.5"
        );
    }

    #[test]
    fn pgm() {
        let sel = Selection::new(Method::Mmr, Some(0.5), vec![0, 3], vec![0.0; 2]);
        let b = render_mask_pgm(&sel, 2, 2, 4).unwrap();
        assert_eq!(&b[..11], b"P5\n2 2\n255\n");
        assert_eq!(&b[11..], &[255, 0, 0, 255]);
        let one = Selection::new(Method::Mmr, None, vec![0], vec![0.0]);
        assert_eq!(&render_mask_pgm(&one, 1, 1, 1).unwrap()[11..], &[255]);
        assert!(matches!(
            render_mask_pgm(&sel, 3, 2, 4),
            Err(Error::Domain(_))
        ));
    }
}
