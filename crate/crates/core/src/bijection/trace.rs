use std::fmt::Write as _;

use serde::Serialize;

use super::epsilon::{f_map, theta, FMap};
use super::insertion::{zeta_traced, ZetaStep};
use super::tuple::{delta_sequence, FourTupleLetter, TupleSet};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// One row of the θ table; indices are 1-based word positions of the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaRow {
    pub index: usize,
    pub f_index: usize,
    pub image: FourTupleLetter,
}

/// Every intermediate object of one `Φ` evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiTrace {
    pub word: Word,
    /// 4-tuple-letters in word order (`W_1 … W_n`).
    pub delta: Vec<FourTupleLetter>,
    pub f_maps: Vec<FMap>,
    pub theta: Vec<ThetaRow>,
    pub zeta_steps: Vec<ZetaStep>,
    pub result: Word,
}

pub fn phi_traced(w: &[Letter]) -> Result<PhiTrace> {
    let word = Word::new(w.to_vec())?;
    let seq = delta_sequence(w);
    let set = TupleSet::new(seq.clone());
    let index_of = |key: (Letter, u32)| seq.iter().position(|t| t.key() == key).expect("key from the same word") + 1;

    let f_maps: Vec<FMap> = set.values().into_iter().map(|v| f_map(&set, v)).collect();
    let mut theta_rows: Vec<ThetaRow> = theta(&set)
        .into_iter()
        .map(|(f, u)| ThetaRow { index: index_of(u.key()), f_index: index_of(f.key()), image: u })
        .collect();
    theta_rows.sort_by_key(|row| row.index);

    let u = TupleSet::new(theta_rows.iter().map(|row| row.image).collect());
    let (result, zeta_steps) = zeta_traced(&u).map_err(|e| Error::Inconsistent(format!("Φ failed on {word}: {e}")))?;
    Ok(PhiTrace { word, delta: seq, f_maps, theta: theta_rows, zeta_steps, result })
}

impl PhiTrace {
    /// Word position (1-based) of the copy `(value, dup)` of the input.
    fn index_of(&self, value: Letter, dup: u32) -> usize {
        self.delta.iter().position(|t| t.value == value && t.dup == dup).expect("present") + 1
    }

    /// Human-readable report: δ table, f maps, θ table, ζ steps and the image.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "w = {}", self.word.dashed());
        out.push_str("\ndelta:\n");
        let rows: [(&str, Vec<String>); 6] = [
            ("w", self.delta.iter().map(|t| format!("{}_{}", t.value, t.dup)).collect()),
            ("", (1..=self.delta.len()).map(|i| format!("W{i}")).collect()),
            ("v", self.delta.iter().map(|t| t.value.to_string()).collect()),
            ("d", self.delta.iter().map(|t| t.dup.to_string()).collect()),
            ("p", self.delta.iter().map(|t| t.position.to_string()).collect()),
            ("r", self.delta.iter().map(|t| t.r.to_string()).collect()),
        ];
        let width = rows.iter().flat_map(|(_, cells)| cells.iter().map(|c| c.chars().count())).max().unwrap_or(1);
        for (label, cells) in &rows {
            let _ = write!(out, "  {label:<2}");
            for c in cells {
                let _ = write!(out, " {c:>width$}");
            }
            out.push('\n');
        }

        out.push_str("\nf_W:\n");
        for m in &self.f_maps {
            let pairs: Vec<String> = (1..=m.images.len() as u32)
                .map(|d| format!("W{} -> W{}", self.index_of(m.value, d), self.index_of(m.value, m.image(d))))
                .collect();
            let _ = writeln!(out, "  v={}: {}", m.value, pairs.join("  "));
        }

        out.push_str("\ntheta:\n");
        let _ = writeln!(out, "  {:<5} {:<5} {:<7} {:>2} {:>2} {:<9} {:>2}", "U_i", "W_i", "f(W_i)", "v", "r", "p", "d");
        for row in &self.theta {
            let _ = writeln!(
                out,
                "  {:<5} {:<5} {:<7} {:>2} {:>2} {:<9} {:>2}",
                format!("U{}", row.index),
                format!("W{}", row.index),
                format!("W{}", row.f_index),
                row.image.value,
                row.image.r,
                row.image.position.to_string(),
                row.image.dup
            );
        }

        out.push_str("\nzeta:\n");
        for s in &self.zeta_steps {
            let _ = writeln!(out, "  {s}");
        }
        let _ = writeln!(out, "\nphi(w) = {}", self.result.dashed());
        out
    }
}
