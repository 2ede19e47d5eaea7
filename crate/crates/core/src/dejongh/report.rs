use std::collections::BTreeMap;

use serde::Serialize;

/// One comparison of a source formula with its translation.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EquivRow {
    pub node: String,
    pub formula: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u32>,
    pub source: bool,
    pub target: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EquivReport {
    pub kind: String,
    pub formula: String,
    pub translated: String,
    pub model_hash: String,
    pub rows: Vec<EquivRow>,
    pub mismatches: usize,
    /// Nodes where the source model refutes the formula.
    pub refuted_at: Vec<String>,
    /// Whether the translation fails at every node of `refuted_at`.
    pub translation_refuted: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl EquivReport {
    pub fn pass(&self) -> bool {
        self.mismatches == 0 && self.translation_refuted
    }

    pub fn first_mismatch(&self) -> Option<&EquivRow> {
        self.rows.iter().find(|r| r.source != r.target)
    }

    pub(crate) fn finish(&mut self) {
        self.mismatches = self.rows.iter().filter(|r| r.source != r.target).count();
    }
}
