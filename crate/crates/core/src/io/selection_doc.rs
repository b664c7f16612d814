use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::selection::{Method, Selection};

use super::{read_bytes, write_atomic};

/// On-disk JSON form of a [`Selection`].
///
/// ```json
/// { "method": "mmr", "lambda": 0.5, "k": 2, "indices": [0, 2],
///   "step_scores": [1.0, 0.0] }
/// ```
///
/// `step_scores` and `provenance` are optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionDocument {
    pub method: Method,
    pub lambda: Option<f64>,
    pub k: usize,
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_scores: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, String>,
}

impl SelectionDocument {
    pub fn from_selection(selection: &Selection) -> Self {
        Self {
            method: selection.method,
            lambda: selection.lambda,
            k: selection.k(),
            indices: selection.indices.clone(),
            step_scores: selection.step_scores.clone(),
            provenance: BTreeMap::new(),
        }
    }

    pub fn into_selection(self) -> Result<Selection> {
        if self.k != self.indices.len() {
            return Err(Error::Validation(format!(
                "k = {} but {} indices listed",
                self.k,
                self.indices.len()
            )));
        }
        let selection = Selection {
            method: self.method,
            lambda: self.lambda,
            indices: self.indices,
            step_scores: self.step_scores,
            negative_similarities: 0,
        };
        selection.validate(None)?;
        Ok(selection)
    }
}

pub fn render_selection(doc: &SelectionDocument) -> Result<String> {
    if let Some(scores) = &doc.step_scores {
        if let Some(i) = scores.iter().position(|v| !v.is_finite()) {
            return Err(Error::Validation(format!("step score {i} is not finite")));
        }
    }
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| Error::Validation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_selection(text: &[u8]) -> Result<Selection> {
    let doc: SelectionDocument = serde_json::from_slice(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.into_selection()
}

pub fn write_selection(selection: &Selection, path: impl AsRef<Path>) -> Result<()> {
    selection.validate(None)?;
    let doc = SelectionDocument::from_selection(selection);
    write_atomic(path.as_ref(), render_selection(&doc)?.as_bytes())
}

pub fn read_selection(path: impl AsRef<Path>) -> Result<Selection> {
    parse_selection(&read_bytes(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_text() {
        let sel = Selection::new(
            Method::Mmr,
            Some(0.5),
            vec![0, 2],
            vec![1.0, -0.057_612_345_678_9],
        );
        let text = render_selection(&SelectionDocument::from_selection(&sel)).unwrap();
        assert_eq!(parse_selection(text.as_bytes()).unwrap(), sel);
    }

    #[test]
    fn duplicate_index_rejected() {
        let doc = br#"{"method":"mmr","lambda":0.5,"k":2,"indices":[1,1]}"#;
        assert!(matches!(parse_selection(doc), Err(Error::Validation(_))));
    }

    #[test]
    fn step_scores_optional() {
        let doc = br#"{"method":"fps","lambda":null,"k":2,"indices":[3,1]}"#;
        let sel = parse_selection(doc).unwrap();
        assert_eq!(sel.indices, vec![3, 1]);
        assert_eq!(sel.step_scores, None);
        assert_eq!(sel.lambda, None);
    }

    #[test]
    fn malformed_reports_location() {
        let doc = b"{\n  \"method\": \"mmr\",\n  \"k\": oops\n}";
        match parse_selection(doc) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(
            parse_selection(br#"{"method":"nope","lambda":null,"k":1,"indices":[0]}"#).is_err()
        );
        assert!(parse_selection(br#"{"method":"mmr","lambda":null,"k":3,"indices":[0]}"#).is_err());
    }
}
