//! Plain-text chord sequences.
//!
//! One chord per line, `label: pc[,pc...]`, where each pc may carry a
//! `:weight` suffix (default 1). `#` at the start of a line or after
//! whitespace begins a comment, so labels such as `C#maj` still parse.
//!
//! ```text
//! # Plotkin-style cadence
//! Cmaj: 0,4,7
//! CmajDbl: 0:2,4,7
//! G7: 7,11,2,5
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chords::LabeledChord;
use crate::error::{Error, Result};
use crate::pcs::PcDistribution;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordEntry {
    pub label: String,
    /// Pitch class (already reduced) to nonnegative weight.
    pub weights: BTreeMap<usize, f64>,
}

impl ChordEntry {
    pub fn distribution(&self, modulus: usize) -> Result<PcDistribution> {
        PcDistribution::weighted(self.weights.iter().map(|(&pc, &w)| (pc as i64, w)), modulus)
    }

    pub fn to_labeled(&self, modulus: usize) -> Result<LabeledChord> {
        Ok(LabeledChord::new(self.label.clone(), self.distribution(modulus)?))
    }

    /// Serializes back into the line format.
    pub fn to_line(&self) -> String {
        let items: Vec<String> = self
            .weights
            .iter()
            .map(|(pc, w)| {
                if *w == 1.0 {
                    pc.to_string()
                } else {
                    format!("{pc}:{w}")
                }
            })
            .collect();
        format!("{}: {}", self.label, items.join(","))
    }
}

fn strip_comment(line: &str) -> &str {
    let mut prev_ws = true;
    for (i, ch) in line.char_indices() {
        if ch == '#' && prev_ws {
            return &line[..i];
        }
        prev_ws = ch.is_whitespace();
    }
    line
}

/// Parses a comma-separated pc list such as `0:2,4,7` into reduced weights.
/// Repeated pitch classes accumulate.
pub fn parse_pc_list(text: &str, modulus: usize) -> std::result::Result<BTreeMap<usize, f64>, String> {
    if modulus == 0 {
        return Err("modulus must be at least 1".into());
    }
    let mut weights = BTreeMap::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err("empty pitch-class item".into());
        }
        let (pc, weight) = match item.split_once(':') {
            Some((pc, w)) => {
                let w: f64 = w
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad weight `{}`", w.trim()))?;
                (pc.trim(), w)
            }
            None => (item, 1.0),
        };
        let pc: i64 = pc.parse().map_err(|_| format!("bad pitch class `{pc}`"))?;
        if !weight.is_finite() {
            return Err(format!("weight for {pc} is not finite"));
        }
        if weight < 0.0 {
            return Err(format!("negative weight {weight} for pitch class {pc}"));
        }
        *weights
            .entry(pc.rem_euclid(modulus as i64) as usize)
            .or_insert(0.0) += weight;
    }
    Ok(weights)
}

pub fn parse_sequence(text: &str, modulus: usize) -> Result<Vec<ChordEntry>> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut entries: Vec<ChordEntry> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (label, rest) = line
            .split_once(':')
            .ok_or_else(|| err("expected `label: pc[,pc...]`".into()))?;
        let label = label.trim();
        if label.is_empty() {
            return Err(err("missing label".into()));
        }
        if label.contains(char::is_whitespace) || label.contains(',') {
            return Err(err(format!("invalid label `{label}`")));
        }
        if entries.iter().any(|e| e.label == label) {
            return Err(err(format!("duplicate label `{label}`")));
        }
        let weights = parse_pc_list(rest, modulus).map_err(err)?;
        entries.push(ChordEntry {
            label: label.to_string(),
            weights,
        });
    }
    Ok(entries)
}

pub fn format_sequence(entries: &[ChordEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        writeln!(out, "{}", e.to_line()).unwrap();
    }
    out
}
