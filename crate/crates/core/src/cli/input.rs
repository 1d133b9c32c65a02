use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exterior::Vector;
use crate::forms::AntiSymForm;
use crate::scalars::Rational;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorFile {
    n: usize,
    vectors: Vec<Vec<Value>>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn rational_value(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("{at}: not a rational: {s:?}"))),
        Value::Number(x) => x
            .as_i64()
            .map(Rational::from_int)
            .ok_or_else(|| Error::Parse(format!("{at}: non-integer number {x}; quote rationals as strings"))),
        other => Err(Error::Parse(format!("{at}: expected a rational string, found {other}"))),
    }
}

/// `{"n": 4, "vectors": [["1", "0", "1/2", "0"], ...]}`
pub fn parse_vectors(text: &str) -> Result<Vec<Vector>> {
    let file: VectorFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("vector file: {e}")))?;
    file.vectors
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != file.n {
                return Err(Error::Parse(format!(
                    "vectors[{i}]: expected {} components, found {}",
                    file.n,
                    row.len()
                )));
            }
            let comps = row
                .iter()
                .enumerate()
                .map(|(j, v)| rational_value(v, &format!("vectors[{i}][{j}]")))
                .collect::<Result<_>>()?;
            Ok(Vector::new(comps))
        })
        .collect()
}

pub fn load_vectors(path: &Path) -> Result<Vec<Vector>> {
    parse_vectors(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_form(path: &Path) -> Result<AntiSymForm> {
    AntiSymForm::from_json(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_parse() {
        let vs = parse_vectors(r#"{"n": 2, "vectors": [["1/2", "0"], [3, "-1"]]}"#).unwrap();
        assert_eq!(vs[0].get(1), &Rational::new(1, 2));
        assert_eq!(vs[1].get(1), &Rational::from_int(3));
        let err = parse_vectors(r#"{"n": 2, "vectors": [["1", "x"]]}"#).unwrap_err().to_string();
        assert!(err.contains("vectors[0][1]"), "{err}");
        let err = parse_vectors("{\"n\": 2,\n \"vectors\": [[\"1\"]]").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }
}
