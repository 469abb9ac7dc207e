//! JSON documents for sequences and arrays.
//!
//! Shapes: `{"q", "values": [..]}`, `{"q", "rows", "cols", "values": [[..]]}`,
//! and the same two with `"modulus"`/`"exponents"` for lifted complex-valued
//! data. Each may carry a `"label"`. Files hold one or more documents,
//! conventionally one per line.

use serde::{Deserialize, Serialize};

use crate::arrays::RootArray;
use crate::error::{Error, Result};
use crate::sequences::RootVector;
use crate::zq::{Zq2DArray, ZqVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDoc {
    pub q: u32,
    pub values: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayDoc {
    pub q: u32,
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootVectorDoc {
    pub modulus: u32,
    pub exponents: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootArrayDoc {
    pub modulus: u32,
    pub rows: usize,
    pub cols: usize,
    pub exponents: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceFile {
    Array(ArrayDoc),
    Vector(VectorDoc),
    RootArray(RootArrayDoc),
    RootVector(RootVectorDoc),
}

impl SequenceFile {
    pub fn from_vector(v: &ZqVector, label: Option<String>) -> Self {
        SequenceFile::Vector(VectorDoc {
            q: v.q(),
            values: v.values().to_vec(),
            label,
        })
    }

    pub fn from_array(a: &Zq2DArray, label: Option<String>) -> Self {
        SequenceFile::Array(ArrayDoc {
            q: a.q(),
            rows: a.rows(),
            cols: a.cols(),
            values: a.to_rows(),
            label,
        })
    }

    pub fn from_root_vector(v: &RootVector, label: Option<String>) -> Self {
        SequenceFile::RootVector(RootVectorDoc {
            modulus: v.modulus(),
            exponents: v.exponents().to_vec(),
            label,
        })
    }

    pub fn from_root_array(a: &RootArray, label: Option<String>) -> Self {
        SequenceFile::RootArray(RootArrayDoc {
            modulus: a.modulus(),
            rows: a.rows(),
            cols: a.cols(),
            exponents: a.to_rows(),
            label,
        })
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            SequenceFile::Array(d) => d.label.as_deref(),
            SequenceFile::Vector(d) => d.label.as_deref(),
            SequenceFile::RootArray(d) => d.label.as_deref(),
            SequenceFile::RootVector(d) => d.label.as_deref(),
        }
    }

    pub fn is_one_dimensional(&self) -> bool {
        matches!(self, SequenceFile::Vector(_) | SequenceFile::RootVector(_))
    }

    pub fn to_zq_vector(&self) -> Result<ZqVector> {
        match self {
            SequenceFile::Vector(d) => ZqVector::new(d.q, d.values.clone()),
            _ => Err(Error::InvalidParameters(
                "expected a 1-D {q, values} document".into(),
            )),
        }
    }

    pub fn to_root_vector(&self) -> Result<RootVector> {
        match self {
            SequenceFile::Vector(d) => {
                ZqVector::new(d.q, d.values.clone())?;
                RootVector::new(d.q, d.values.clone())
            }
            SequenceFile::RootVector(d) => RootVector::new(d.modulus, d.exponents.clone()),
            _ => Err(Error::InvalidParameters("expected a 1-D document".into())),
        }
    }

    /// Any document as a root array; 1-D documents become `L × 1` columns.
    pub fn to_root_array(&self) -> Result<RootArray> {
        match self {
            SequenceFile::Array(d) => {
                check_dims(d.rows, d.cols, &d.values)?;
                let a = Zq2DArray::new(d.q, d.rows, d.cols, d.values.concat())?;
                RootArray::lift(&a, d.q)
            }
            SequenceFile::RootArray(d) => {
                check_dims(d.rows, d.cols, &d.exponents)?;
                RootArray::new(d.modulus, d.rows, d.cols, d.exponents.concat())
            }
            _ => Ok(RootArray::from_vector(&self.to_root_vector()?)?.transpose()),
        }
    }

    /// Validates entries and dimensions.
    pub fn validate(&self) -> Result<()> {
        self.to_root_array().map(|_| ())
    }

    /// Compact single-line JSON.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

fn check_dims(rows: usize, cols: usize, values: &[Vec<u32>]) -> Result<()> {
    if values.len() != rows {
        return Err(Error::LengthMismatch(values.len(), rows));
    }
    match values.iter().find(|r| r.len() != cols) {
        Some(bad) => Err(Error::LengthMismatch(bad.len(), cols)),
        None => Ok(()),
    }
}

/// Parses a stream of JSON documents (one per line or concatenated).
pub fn parse_documents(text: &str) -> Result<Vec<SequenceFile>> {
    let mut docs = Vec::new();
    for item in serde_json::Deserializer::from_str(text).into_iter::<serde_json::Value>() {
        let value = item.map_err(|e| Error::Parse {
            token: format!("line {} column {}", e.line(), e.column()),
            reason: e.to_string(),
        })?;
        let doc: SequenceFile =
            serde_json::from_value(value.clone()).map_err(|_| Error::Parse {
                token: truncate(&value.to_string()),
                reason: "not a sequence or array document".into(),
            })?;
        doc.validate()?;
        docs.push(doc);
    }
    Ok(docs)
}

fn truncate(s: &str) -> String {
    if s.chars().count() > 60 {
        format!("{}…", s.chars().take(60).collect::<String>())
    } else {
        s.to_string()
    }
}

/// Result of `zcap verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub inputs: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    /// Claimed `(Z₁, Z₂)`; 1-D inputs are reported as `(Z, 1)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<(usize, usize)>,
    pub verified: bool,
    pub peak: i64,
    pub frontier: Vec<(usize, usize)>,
    /// Best `Z₁Z₂/(L₁L₂)` over the frontier, as `"n/d"`.
    pub zcz_ratio: String,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_round_trip() {
        let v = ZqVector::new(4, vec![0, 0, 1, 3]).unwrap();
        let doc = SequenceFile::from_vector(&v, Some("c".into()));
        assert_eq!(doc.to_line(), r#"{"q":4,"values":[0,0,1,3],"label":"c"}"#);
        let a = Zq2DArray::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap();
        let doc2 = SequenceFile::from_array(&a, None);
        assert_eq!(
            doc2.to_line(),
            r#"{"q":2,"rows":2,"cols":2,"values":[[0,1],[1,1]]}"#
        );
        let text = format!("{}\n{}\n", doc.to_line(), doc2.to_line());
        assert_eq!(parse_documents(&text).unwrap(), vec![doc, doc2]);
    }

    #[test]
    fn root_documents() {
        let r = RootArray::from_rows(4, &[vec![3, 1]]).unwrap();
        let doc = SequenceFile::from_root_array(&r, None);
        assert_eq!(
            doc.to_line(),
            r#"{"modulus":4,"rows":1,"cols":2,"exponents":[[3,1]]}"#
        );
        assert_eq!(doc.to_root_array().unwrap(), r);
        let v = SequenceFile::RootVector(RootVectorDoc {
            modulus: 8,
            exponents: vec![1, 7],
            label: None,
        });
        let col = v.to_root_array().unwrap();
        assert_eq!((col.rows(), col.cols()), (2, 1));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            parse_documents("{\"q\":4,\"values\":[4]}"),
            Err(Error::EntryOutOfRange { .. })
        ));
        assert!(matches!(
            parse_documents("{\"q\":3,\"values\":[1]}"),
            Err(Error::OddModulus(3))
        ));
        assert!(parse_documents("{\"q\":2,\"rows\":2,\"cols\":2,\"values\":[[0,1]]}").is_err());
        assert!(matches!(
            parse_documents("{\"q\":2,\"vals\":[1]}"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_documents("{\"q\":2,"),
            Err(Error::Parse { .. })
        ));
        assert_eq!(parse_documents("").unwrap(), vec![]);
    }
}
