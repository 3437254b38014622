//! W as CSV: one record per row, each field an exponent of α or `inf-neg`
//! for the zero element.

use std::path::Path;

use ldpc_core::codebuilder::WMatrix;
use ldpc_core::galois::{GaloisField, LogAlpha};

pub const NEG_INF: &str = "inf-neg";

#[derive(Debug, thiserror::Error)]
pub enum WError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("W has an unset entry at ({0}, {1})")]
    Unset(usize, usize),
    #[error("record {record}, field {field}: `{token}` is not an exponent below {q_minus_1} or `inf-neg`")]
    Token { record: usize, field: usize, token: String, q_minus_1: u32 },
    #[error("W CSV is empty or ragged")]
    Shape,
    #[error(transparent)]
    Code(#[from] ldpc_core::codebuilder::CodeError),
}

pub fn to_bytes(w: &WMatrix, field: &GaloisField) -> Result<Vec<u8>, WError> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for i in 0..w.rows() {
        let mut rec = Vec::with_capacity(w.cols());
        for j in 0..w.cols() {
            let e = w.get(i, j).ok_or(WError::Unset(i, j))?;
            rec.push(match field.log_alpha(e) {
                LogAlpha::NegInfinity => NEG_INF.to_string(),
                LogAlpha::Exp(t) => t.to_string(),
            });
        }
        out.write_record(&rec)?;
    }
    out.into_inner().map_err(|e| WError::Csv(e.into_error().into()))
}

pub fn write(w: &WMatrix, field: &GaloisField, path: &Path) -> Result<(), WError> {
    let bytes = to_bytes(w, field)?;
    std::fs::write(path, bytes).map_err(csv::Error::from)?;
    Ok(())
}

pub fn from_bytes(bytes: &[u8], field: &GaloisField) -> Result<WMatrix, WError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(bytes);
    let mut rows = Vec::new();
    for (r, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let mut row = Vec::with_capacity(rec.len());
        for (c, tok) in rec.iter().enumerate() {
            let log = if tok == NEG_INF {
                LogAlpha::NegInfinity
            } else {
                match tok.parse::<u32>() {
                    Ok(t) if t < field.order() - 1 => LogAlpha::Exp(t),
                    _ => {
                        return Err(WError::Token {
                            record: r + 1,
                            field: c + 1,
                            token: tok.to_string(),
                            q_minus_1: field.order() - 1,
                        })
                    }
                }
            };
            row.push(field.from_log(log));
        }
        rows.push(row);
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(WError::Shape);
    }
    Ok(WMatrix::from_rows(field, &rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_round_trip() {
        let f = GaloisField::new(7, 1, None).unwrap();
        let w = WMatrix::base(&f).leading(3, 5).unwrap();
        let bytes = to_bytes(&w, &f).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("inf-neg,inf-neg,"));
        assert_eq!(text.lines().count(), 3);
        assert_eq!(from_bytes(&bytes, &f).unwrap(), w);
    }

    #[test]
    fn bad_token() {
        let f = GaloisField::new(5, 1, None).unwrap();
        assert!(matches!(from_bytes(b"0,4\n", &f), Err(WError::Token { field: 2, .. })));
        assert!(matches!(from_bytes(b"0,1\n2\n", &f), Err(WError::Csv(_)) | Err(WError::Shape)));
    }
}
