use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{HarnessError, DEFAULT_WINDOW};
use crate::basis::DEFAULT_ORDER_CAP;
use crate::intset::{EventuallyPeriodicSet, FiniteIntSet, SetLiteral};

/// One basis with the finite set to remove from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub basis: EventuallyPeriodicSet,
    pub remove: FiniteIntSet,
    pub order_cap: u64,
    pub window: u64,
    /// `X` is an arithmetic progression.
    pub ap_flag: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    basis: SetLiteral,
    remove: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order_cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ap_flag: Option<bool>,
}

fn invalid(entry: &str, field: &'static str, message: impl Into<String>) -> HarnessError {
    HarnessError::Validation {
        entry: entry.to_string(),
        field,
        message: message.into(),
    }
}

impl RawEntry {
    fn validate(self, default_cap: u64) -> Result<CorpusEntry, HarnessError> {
        let name = self.name;
        let basis = EventuallyPeriodicSet::try_from(self.basis)
            .map_err(|e| invalid(&name, "basis", e.to_string()))?;
        let remove = FiniteIntSet::from(self.remove);
        if remove.is_empty() {
            return Err(invalid(&name, "remove", "must be nonempty"));
        }
        if let Some(x) = remove.iter().find(|&x| !basis.contains(x)) {
            return Err(invalid(
                &name,
                "remove",
                format!("{x} is not an element of the basis"),
            ));
        }
        let order_cap = self.order_cap.unwrap_or(default_cap);
        if order_cap == 0 {
            return Err(invalid(&name, "order_cap", "must be positive"));
        }
        let window = self.window.unwrap_or(DEFAULT_WINDOW);
        if window == 0 {
            return Err(invalid(&name, "window", "must be positive"));
        }
        let is_ap = remove.is_arithmetic_progression();
        if self.ap_flag == Some(true) && !is_ap {
            return Err(invalid(
                &name,
                "ap_flag",
                format!("{remove} is not an arithmetic progression"),
            ));
        }
        Ok(CorpusEntry {
            name,
            basis,
            remove,
            order_cap,
            window,
            ap_flag: self.ap_flag.unwrap_or(is_ap),
        })
    }
}

/// Parses a corpus document (a JSON array of entries). Entries without an
/// `order_cap` get `default_cap`.
pub fn parse_corpus(text: &str, default_cap: u64) -> Result<Vec<CorpusEntry>, HarnessError> {
    let values: Vec<serde_json::Value> =
        serde_json::from_str(text).map_err(|e| HarnessError::Parse {
            location: "corpus".into(),
            message: e.to_string(),
        })?;
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let location = v
                .get("name")
                .and_then(|n| n.as_str())
                .map_or_else(|| format!("entry #{i}"), |n| format!("entry {n:?}"));
            let raw: RawEntry = serde_json::from_value(v).map_err(|e| HarnessError::Parse {
                location,
                message: e.to_string(),
            })?;
            raw.validate(default_cap)
        })
        .collect()
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusEntry>, HarnessError> {
    load_corpus_with_cap(path, DEFAULT_ORDER_CAP)
}

pub fn load_corpus_with_cap(
    path: impl AsRef<Path>,
    default_cap: u64,
) -> Result<Vec<CorpusEntry>, HarnessError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&text, default_cap)
}

/// Serializes entries in the format [`parse_corpus`] reads.
pub fn emit_corpus(entries: &[CorpusEntry]) -> String {
    let raw: Vec<RawEntry> = entries
        .iter()
        .map(|e| RawEntry {
            name: e.name.clone(),
            basis: e.basis.clone().into(),
            remove: e.remove.as_slice().to_vec(),
            order_cap: Some(e.order_cap),
            window: Some(e.window),
            ap_flag: Some(e.ap_flag),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&raw).expect("corpus serializes");
    out.push('\n');
    out
}
