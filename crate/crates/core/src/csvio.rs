//! Matrix CSV: one matrix row per line, comma-separated decimals, no header.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub fn read_matrix(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    parse_matrix(File::open(path)?)
}

pub fn parse_matrix(input: impl Read) -> Result<DenseMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .enumerate()
            .map(|(j, field)| {
                field
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}, field {}: '{field}': {e}", i + 1, j + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no matrix rows found".into()));
    }
    DenseMatrix::from_rows(&rows)
}

/// Shortest round-trip decimal; scientific notation outside [1e-4, 1e15).
pub fn format_value(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".to_string()
    } else if (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn write_matrix_to(mut out: impl Write, a: &DenseMatrix) -> Result<()> {
    for i in 0..a.rows() {
        let line: Vec<String> = a.row(i).into_iter().map(format_value).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_matrix(path: impl AsRef<Path>, a: &DenseMatrix) -> Result<()> {
    let mut buf = Vec::new();
    write_matrix_to(&mut buf, a)?;
    std::fs::write(path, buf)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_whitespace_and_comments() {
        let a = parse_matrix("# header comment\n1, 2.5\n-3e2,4\n".as_bytes()).unwrap();
        assert_eq!(a, DenseMatrix::from_rows(&[[1.0, 2.5], [-300.0, 4.0]]).unwrap());
    }

    #[test]
    fn rejects_ragged_and_garbage() {
        assert!(matches!(parse_matrix("1,2\n3\n".as_bytes()), Err(Error::Csv(_))));
        assert!(matches!(parse_matrix("1,x\n".as_bytes()), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("".as_bytes()), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("1,NaN\n".as_bytes()), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn writes_plain_decimals() {
        let a = DenseMatrix::from_rows(&[[3.0, 1.5], [0.0, 0.5]]).unwrap();
        let mut buf = Vec::new();
        write_matrix_to(&mut buf, &a).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "3,1.5\n0,0.5\n");
        assert_eq!(format_value(1e-20), "1e-20");
    }

    proptest! {
        #[test]
        fn write_then_read_is_exact(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-10.0..10.0f64, 25)) {
            let a = DenseMatrix::from_fn(rows, cols, |i, j| seed[i * 5 + j] * 10f64.powi((i * cols + j) as i32 * 37 % 600 - 300)).unwrap();
            let mut buf = Vec::new();
            write_matrix_to(&mut buf, &a).unwrap();
            let b = parse_matrix(buf.as_slice()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
