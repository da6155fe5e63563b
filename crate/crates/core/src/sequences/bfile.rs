use num_bigint::BigInt;

use super::SequenceError;

/// Parsed b-file: first index and the run of consecutive terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub offset: i64,
    pub terms: Vec<BigInt>,
}

/// Lines are `index value`; blank lines and `#` comments are skipped.
/// Indices must be consecutive.
pub fn parse_bfile(text: &str) -> Result<BFile, SequenceError> {
    let mut offset = None;
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let err = |message: String| SequenceError::Parse { line, message };
        let mut fields = body.split_whitespace();
        let (Some(i), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected `index value`, got {raw:?}")));
        };
        let i: i64 = i.parse().map_err(|_| err(format!("bad index {i:?}")))?;
        let v: BigInt = v.parse().map_err(|_| err(format!("bad value {v:?}")))?;
        match offset {
            None => offset = Some(i),
            Some(o) => {
                let expected = o + terms.len() as i64;
                if i != expected {
                    return Err(err(format!(
                        "index {i} out of sequence, expected {expected}"
                    )));
                }
            }
        }
        terms.push(v);
    }
    match offset {
        Some(offset) => Ok(BFile { offset, terms }),
        None => Err(SequenceError::Parse {
            line: 0,
            message: "no terms".into(),
        }),
    }
}

pub fn render_bfile(file: &BFile) -> String {
    let mut out = String::new();
    for (k, v) in file.terms.iter().enumerate() {
        out.push_str(&format!("{} {}\n", file.offset + k as i64, v));
    }
    out
}
