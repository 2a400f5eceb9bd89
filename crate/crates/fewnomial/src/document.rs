//! JSON input documents: named configurations with exact rational fields.
//!
//! Rationals travel as strings ("19/25", "-2", "3") so no float ever
//! contaminates the exact pipelines; "1.5" is a parse error.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::config::{PointConfig, SignedPolynomial};
use crate::linalg::Rat;
use crate::{Error, Result};

/// A configuration document as read from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigDocument {
    #[serde(default)]
    pub name: String,
    /// One exponent vector per point, each coordinate a rational string.
    pub exponents: Vec<Vec<String>>,
    /// Optional nonzero rational coefficients, parallel to `exponents`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    /// Optional lifting heights, parallel to `exponents`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<String>>,
    /// Optional signs ("+"/"-"), used when no coefficients are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<String>>,
}

/// Parses an exact rational from a string: an integer or `p/q`.
pub fn parse_rational(s: &str, field: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>().map_err(|_| Error::Parse {
            field: field.to_string(),
            message: format!("`{t}` is not an integer (decimals like 1.5 must be written 3/2)"),
        })
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let n = parse_int(num)?;
            let d = parse_int(den)?;
            if d == BigInt::from(0) {
                return Err(Error::Parse {
                    field: field.to_string(),
                    message: "zero denominator".into(),
                });
            }
            Ok(Rat::new(n, d))
        }
    }
}

fn parse_vec(values: &[String], field: &str) -> Result<Vec<Rat>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| parse_rational(v, &format!("{field}[{i}]")))
        .collect()
}

impl ConfigDocument {
    pub fn from_json(json: &str) -> Result<ConfigDocument> {
        serde_json::from_str(json).map_err(|e| Error::Parse {
            field: "document".into(),
            message: e.to_string(),
        })
    }

    pub fn from_path(path: &str) -> Result<ConfigDocument> {
        let text = std::fs::read_to_string(path)?;
        ConfigDocument::from_json(&text)
    }

    pub fn config(&self) -> Result<PointConfig> {
        let mut points = Vec::with_capacity(self.exponents.len());
        for (i, vector) in self.exponents.iter().enumerate() {
            points.push(parse_vec(vector, &format!("exponents[{i}]"))?);
        }
        PointConfig::new(points)
    }

    pub fn parsed_heights(&self) -> Result<Option<Vec<Rat>>> {
        match &self.heights {
            None => Ok(None),
            Some(h) => Ok(Some(parse_vec(h, "heights")?)),
        }
    }

    /// Coefficients: parsed when given, otherwise +/-1 from `signs`.
    pub fn parsed_coefficients(&self) -> Result<Option<Vec<Rat>>> {
        if let Some(c) = &self.coefficients {
            return Ok(Some(parse_vec(c, "coefficients")?));
        }
        let Some(signs) = &self.signs else {
            return Ok(None);
        };
        let mut out = Vec::with_capacity(signs.len());
        for (i, s) in signs.iter().enumerate() {
            match s.trim() {
                "+" => out.push(Rat::from_integer(1.into())),
                "-" => out.push(Rat::from_integer((-1).into())),
                other => {
                    return Err(Error::Parse {
                        field: format!("signs[{i}]"),
                        message: format!("expected `+` or `-`, found `{other}`"),
                    })
                }
            }
        }
        Ok(Some(out))
    }

    /// The signed polynomial of the document; requires coefficients or
    /// signs.
    pub fn polynomial(&self) -> Result<SignedPolynomial> {
        let cfg = self.config()?;
        let coeffs = self.parsed_coefficients()?.ok_or_else(|| Error::Parse {
            field: "coefficients".into(),
            message: "document has neither coefficients nor signs".into(),
        })?;
        SignedPolynomial::new(cfg, coeffs, self.parsed_heights()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    const FNR_JSON: &str = r#"{
        "name": "fnr",
        "exponents": [["0","0"],["1","0"],["2","0"],["0","1"],["0","2"]],
        "coefficients": ["1","1","1","1","1"],
        "heights": ["0","1","0","0","1"]
    }"#;

    #[test]
    fn parses_fnr_document() {
        let doc = ConfigDocument::from_json(FNR_JSON).unwrap();
        let cfg = doc.config().unwrap();
        assert_eq!(cfg.dim(), 2);
        assert_eq!(cfg.codim(), 2);
        let poly = doc.polynomial().unwrap();
        assert_eq!(poly.heights.as_ref().unwrap()[1], rat(1));
    }

    #[test]
    fn parses_fraction_strings() {
        assert_eq!(parse_rational("19/25", "x").unwrap(), ratio(19, 25));
        assert_eq!(parse_rational("-2", "x").unwrap(), rat(-2));
    }

    #[test]
    fn rejects_decimal_notation() {
        let err = parse_rational("1.5", "coefficients[3]").unwrap_err();
        match err {
            Error::Parse { field, .. } => assert_eq!(field, "coefficients[3]"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn signs_build_unit_coefficients() {
        let doc = ConfigDocument {
            name: "signs".into(),
            exponents: vec![vec!["0".into()], vec!["1".into()], vec!["2".into()]],
            coefficients: None,
            heights: None,
            signs: Some(vec!["+".into(), "-".into(), "+".into()]),
        };
        let poly = doc.polynomial().unwrap();
        assert_eq!(poly.coeffs, vec![rat(1), rat(-1), rat(1)]);
    }
}
