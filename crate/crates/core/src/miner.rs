//! Extensions of permutation statistics to words by adding weaker patterns,
//! filtered by exhaustive comparison with `maj`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::builtin::builtin;
use crate::combo::StatCombo;
use crate::enumeration::{distribution, Histogram};
use crate::error::Result;
use crate::pattern::VincularPattern;
use crate::statistic::Statistic;
use crate::word::MultisetSpec;

/// Patterns obtained by decrementing one letter and reducing, adjacency kept.
/// Decrementing a `1` would reproduce the pattern and is skipped.
pub fn weaker_patterns(p: &VincularPattern) -> Vec<VincularPattern> {
    let mut out: Vec<VincularPattern> = Vec::new();
    for i in 0..p.len() {
        if let Some(q) = p.weaken_at(i) {
            if &q != p && !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionCandidate {
    pub base: StatCombo,
    pub added: Vec<VincularPattern>,
}

impl ExtensionCandidate {
    /// Base plus each added pattern with coefficient 1.
    pub fn combo(&self) -> StatCombo {
        let added = StatCombo::new(self.added.iter().map(|p| (1, p.clone()))).expect("unit coefficients");
        if self.added.is_empty() {
            self.base.clone()
        } else {
            self.base.plus(&added)
        }
    }
}

impl fmt::Display for ExtensionCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.combo().formula())
    }
}

/// Weaker patterns of all base terms, in term order, without repeats.
pub fn weaker_union(base: &StatCombo) -> Vec<VincularPattern> {
    let mut out: Vec<VincularPattern> = Vec::new();
    for t in base.terms() {
        for q in weaker_patterns(&t.pattern) {
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

/// Every choice of `add_count` distinct weaker patterns, in lexicographic order of
/// their indices in [`weaker_union`].
pub fn extension_candidates(base: &StatCombo, add_count: usize) -> Vec<ExtensionCandidate> {
    let pool = weaker_union(base);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    choose(&pool, 0, add_count, &mut chosen, &mut |picked| {
        out.push(ExtensionCandidate { base: base.clone(), added: picked.to_vec() });
    });
    out
}

fn choose(pool: &[VincularPattern], from: usize, left: usize, chosen: &mut Vec<VincularPattern>, emit: &mut impl FnMut(&[VincularPattern])) {
    if left == 0 {
        emit(chosen);
        return;
    }
    for i in from..pool.len() {
        chosen.push(pool[i].clone());
        choose(pool, i + 1, left - 1, chosen, emit);
        chosen.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "multiset", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(MultisetSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MineEntry {
    pub combo: StatCombo,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl fmt::Display for MineEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "{}  PASS", self.combo),
            Outcome::Fail(m) => write!(f, "{}  FAIL @ {m}", self.combo),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MineReport {
    pub entries: Vec<MineEntry>,
}

impl MineReport {
    pub fn passing(&self) -> Vec<&StatCombo> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Pass).map(|e| &e.combo).collect()
    }
}

impl fmt::Display for MineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// The first multiset (in the given order) where `stat` and `maj_word` are
/// distributed differently, or `None` if they agree on all of them.
pub fn first_failure(stat: &Statistic, multisets: &[MultisetSpec], reference: &[Histogram]) -> Result<Option<MultisetSpec>> {
    for (m, want) in multisets.iter().zip(reference) {
        if &distribution(stat, m, 1)? != want {
            return Ok(Some(m.clone()));
        }
    }
    Ok(None)
}

/// Distribution of `maj_word` on each multiset.
pub fn reference_distributions(multisets: &[MultisetSpec], threads: usize) -> Result<Vec<Histogram>> {
    let maj = Statistic::combo(builtin("maj_word")?);
    multisets.iter().map(|m| distribution(&maj, m, threads)).collect()
}

/// Tests each candidate against `maj_word` on every multiset. Candidates are
/// handed out to `threads` workers; the report keeps candidate order.
pub fn mine(base: &StatCombo, add_count: usize, multisets: &[MultisetSpec], threads: usize) -> Result<MineReport> {
    let candidates: Vec<StatCombo> = extension_candidates(base, add_count).iter().map(ExtensionCandidate::combo).collect();
    filter_mahonian(&candidates, multisets, threads)
}

pub fn filter_mahonian(candidates: &[StatCombo], multisets: &[MultisetSpec], threads: usize) -> Result<MineReport> {
    let reference = reference_distributions(multisets, threads)?;
    let next = AtomicUsize::new(0);
    let results: Mutex<BTreeMap<usize, Result<Outcome>>> = Mutex::new(BTreeMap::new());
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(c) = candidates.get(i) else { break };
        let stat = Statistic::combo(c.clone());
        let outcome = first_failure(&stat, multisets, &reference).map(|f| f.map_or(Outcome::Pass, Outcome::Fail));
        results.lock().expect("no worker panics while holding the lock").insert(i, outcome);
    };
    std::thread::scope(|s| {
        for _ in 1..threads.max(1) {
            s.spawn(worker);
        }
        worker();
    });
    let results = results.into_inner().expect("workers finished");
    let mut entries = Vec::with_capacity(candidates.len());
    for (i, outcome) in results {
        entries.push(MineEntry { combo: candidates[i].clone(), outcome: outcome? });
    }
    Ok(MineReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::base_combo;

    fn p(s: &str) -> VincularPattern {
        s.parse().unwrap()
    }

    #[test]
    fn weaker_examples() {
        assert_eq!(weaker_patterns(&p("2[31]")), vec![p("1[21]"), p("2[21]")]);
        assert_eq!(weaker_patterns(&p("[31]2")), vec![p("[21]2"), p("[21]1")]);
        assert_eq!(weaker_patterns(&p("[21]")), vec![p("[11]")]);
        assert_eq!(weaker_patterns(&p("1[32]")), vec![p("1[22]"), p("1[21]")]);
    }

    #[test]
    fn candidate_examples() {
        let mad = base_combo("mad").unwrap();
        assert_eq!(weaker_union(&mad).len(), 5);
        let cands = extension_candidates(&mad, 2);
        assert_eq!(cands.len(), 10);
        for row in ["mad1", "mad2", "mad3", "mad4"] {
            let want = builtin(row).unwrap();
            assert!(cands.iter().any(|c| c.combo().same_terms(&want)), "{row}");
        }
        let zero = extension_candidates(&mad, 0);
        assert_eq!(zero.len(), 1);
        assert!(zero[0].combo().same_terms(&mad));
        let des = builtin("des").unwrap();
        let one = extension_candidates(&des, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].to_string(), "[21] + [11]");
    }

    #[test]
    fn table_rows_are_reachable() {
        for (family, rows) in [
            ("mad", &["mad1", "mad2", "mad3", "mad4"][..]),
            ("madl", &["madl1", "madl2", "madl3", "madl4"]),
            ("mak", &["mak1", "mak2"]),
            ("makl", &["makl1", "makl2"]),
        ] {
            let cands = extension_candidates(&base_combo(family).unwrap(), 2);
            for row in rows {
                let want = builtin(row).unwrap();
                assert!(cands.iter().any(|c| c.combo().same_terms(&want)), "{row}");
            }
        }
    }

    #[test]
    fn des_alone_is_not_mahonian() {
        let multisets = crate::enumeration::corpus(3);
        let report = mine(&builtin("des").unwrap(), 0, &multisets, 1).unwrap();
        assert!(report.passing().is_empty());
        assert_eq!(report.entries[0].outcome, Outcome::Fail("1:1,2:1,3:1".parse().unwrap()));
        assert_eq!(report.to_string(), "[21]  FAIL @ {1:1,2:1,3:1}\n");
    }

    #[test]
    fn thread_count_does_not_change_report() {
        let multisets = crate::enumeration::corpus(4);
        let mad = base_combo("mad").unwrap();
        let one = mine(&mad, 2, &multisets, 1).unwrap();
        assert_eq!(mine(&mad, 2, &multisets, 3).unwrap(), one);
    }
}
