//! Exhaustive property suites over every word of a bounded corpus.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bijection::{delta, epsilon, phi, validate_tuple_set, v_insertion, zeta, zeta_traced};
use crate::builtin::builtin;
use crate::combo::StatCombo;
use crate::descent::letter_profiles;
use crate::enumeration::{corpus, distribution, enumerate_words, joint_distribution, maj_reference_polynomial};
use crate::error::{Error, Result};
use crate::statistic::Statistic;
use crate::stats::{ClassicStat, DefinitionalStat};
use crate::word::{Letter, MultisetSpec, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Bijection,
    Table1,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "bijection" => Ok(Suite::Bijection),
            "table1" => Ok(Suite::Table1),
            "all" => Ok(Suite::All),
            other => Err(Error::UnknownStatistic(format!("suite {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// Words (or multisets, for distribution checks) examined.
    pub checked: u64,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS  {} ({} checked)", c.name, c.checked)?,
                Some(msg) => writeln!(f, "FAIL  {} ({} checked): {msg}", c.name, c.checked)?,
            }
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, max_size: usize, threads: usize) -> Result<VerifyReport> {
    let multisets = corpus(max_size);
    let mut report = VerifyReport::default();
    if matches!(suite, Suite::Core | Suite::All) {
        report.checks.extend(core_checks(&multisets)?);
    }
    if matches!(suite, Suite::Bijection | Suite::All) {
        report.checks.extend(bijection_checks(&multisets)?);
    }
    if matches!(suite, Suite::Table1 | Suite::All) {
        report.checks.extend(table1_checks(&multisets, threads)?);
    }
    Ok(report)
}

/// Runs `check` on every word of every multiset; stops at the first failure.
pub fn wordwise(name: &str, multisets: &[MultisetSpec], mut check: impl FnMut(&Word) -> Result<(), String>) -> Check {
    let mut checked = 0;
    for m in multisets {
        for w in enumerate_words(m) {
            checked += 1;
            if let Err(msg) = check(&w) {
                return Check { name: name.to_string(), checked, failure: Some(format!("{w}: {msg}")) };
            }
        }
    }
    Check { name: name.to_string(), checked, failure: None }
}

fn equal<T: PartialEq + fmt::Debug>(left: T, right: T) -> Result<(), String> {
    if left == right {
        Ok(())
    } else {
        Err(format!("{left:?} != {right:?}"))
    }
}

/// Pattern combinations paired with the statistic they are claimed to compute.
pub fn combo_identities() -> Vec<(&'static str, Statistic)> {
    use DefinitionalStat::*;
    let def = |d| Statistic::Definitional(d);
    vec![
        ("res", def(Res)),
        ("les", def(Les)),
        ("dbot_l", def(DbotL)),
        ("dbot_r", def(DbotR)),
        ("dtop", def(Dtop)),
        ("ddif_l", def(DdifL)),
        ("ddif_r", def(DdifR)),
        ("mak_l", def(MakL)),
        ("mak_r", def(MakR)),
        ("makl_l", def(MaklL)),
        ("makl_r", def(MaklR)),
        ("mad_l", def(MadL)),
        ("mad_r", def(MadR)),
        ("madl_l", def(MadlL)),
        ("madl_r", def(MadlR)),
        ("inv_word", Statistic::Classic(ClassicStat::Inv)),
        ("maj_word", Statistic::Classic(ClassicStat::Maj)),
    ]
}

fn core_checks(multisets: &[MultisetSpec]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, oracle) in combo_identities() {
        let combo = builtin(name)?;
        checks.push(wordwise(&format!("{name} = {oracle}"), multisets, |w| equal(combo.eval(w), oracle.eval(w))));
    }

    let mut patterns = Vec::new();
    for name in crate::builtin::builtin_names() {
        for t in builtin(name)?.terms() {
            if !patterns.contains(&t.pattern) {
                patterns.push(t.pattern.clone());
            }
        }
    }
    for extra in ["231", "21", "[11]", "1[22]"] {
        patterns.push(extra.parse()?);
    }
    checks.push(wordwise("fast count = brute-force count", multisets, |w| {
        for p in &patterns {
            equal((p.to_string(), p.count(w)), (p.to_string(), p.count_brute(w)))?;
        }
        Ok(())
    }));
    checks.push(wordwise("count = sum of restricted counts", multisets, |w| {
        let values: Vec<Letter> = w.multiset().support().collect();
        for p in &patterns {
            for anchor in 0..p.len() {
                let split: u64 = values.iter().map(|&v| p.count_restricted(anchor, v, w).expect("anchor in range")).sum();
                equal((p.to_string(), anchor, split), (p.to_string(), anchor, p.count(w)))?;
            }
        }
        Ok(())
    }));
    checks.push(wordwise("compiled combos = direct evaluation", multisets, |w| {
        for name in crate::builtin::builtin_names() {
            let c = builtin(name).expect("listed name");
            equal((name, c.compile().eval(w)), (name, c.eval(w)))?;
        }
        Ok(())
    }));
    Ok(checks)
}

/// Counts of `2[31], [31]2, [21]1, 1[21], [21]2, 2[21], [21]`.
pub fn seven_pattern_counts(w: &[Letter]) -> [u64; 7] {
    let names = ["2[31]", "[31]2", "[21]1", "1[21]", "[21]2", "2[21]", "[21]"];
    names.map(|n| n.parse::<crate::pattern::VincularPattern>().expect("fixed pattern").count(w))
}

fn bijection_checks(multisets: &[MultisetSpec]) -> Result<Vec<Check>> {
    let checks = vec![
        wordwise("zeta(delta(w)) = w", multisets, |w| {
            equal(zeta(&delta(w)).map_err(|e| e.to_string())?, w.clone())
        }),
        wordwise("delta(w) passes validation", multisets, |w| {
            let r = validate_tuple_set(&delta(w));
            if r.is_valid() {
                Ok(())
            } else {
                Err(r.to_string())
            }
        }),
        wordwise("epsilon(epsilon(W)) = W", multisets, |w| {
            let d = delta(w);
            equal(epsilon(&epsilon(&d)), d)
        }),
        wordwise("phi(phi(w)) = w", multisets, |w| {
            let once = phi(w).map_err(|e| e.to_string())?;
            equal(phi(&once).map_err(|e| e.to_string())?, w.clone())
        }),
        wordwise("phi preserves the multiset and des", multisets, |w| {
            let image = phi(w).map_err(|e| e.to_string())?;
            equal(image.multiset(), w.multiset())?;
            equal(ClassicStat::Des.eval(&image), ClassicStat::Des.eval(w))
        }),
        wordwise("phi keeps value, dup, r and l of every letter", multisets, |w| {
            let image = phi(w).map_err(|e| e.to_string())?;
            let key = |p: &crate::descent::LetterProfile| (p.value, p.dup_index, p.r_embr, p.l_embr);
            let mut a: Vec<_> = letter_profiles(w).iter().map(key).collect();
            let mut b: Vec<_> = letter_profiles(&image).iter().map(key).collect();
            a.sort_unstable();
            b.sort_unstable();
            equal(a, b)
        }),
        wordwise("phi swaps [21]2 and 2[21], fixes five counts", multisets, |w| {
            let image = phi(w).map_err(|e| e.to_string())?;
            let mut want = seven_pattern_counts(w);
            want.swap(4, 5);
            equal(seven_pattern_counts(&image), want)
        }),
        wordwise("zeta steps are the v_i-insertions of the result", multisets, |w| {
            let (_, steps) = zeta_traced(&delta(w)).map_err(|e| e.to_string())?;
            for s in steps {
                equal(s.insertion, v_insertion(w, s.value, s.dup).map_err(|e| e.to_string())?)?;
            }
            Ok(())
        }),
        wordwise("r counts embraceable open blocks right of the letter", multisets, |w| {
            for p in letter_profiles(w) {
                let s = v_insertion(w, p.value, p.dup_index).map_err(|e| e.to_string())?;
                let at = s.blocks.iter().position(|b| b.letters.contains(&(p.value, p.dup_index))).expect("letter present");
                let right = s.blocks[at + 1..].iter().filter(|b| b.embraceable(p.value)).count() as u32;
                equal((p.value, p.dup_index, right), (p.value, p.dup_index, p.r_embr))?;
            }
            Ok(())
        }),
    ];
    Ok(checks)
}

pub const MAHONIAN_ROWS: [&str; 13] =
    ["mad1", "mad2", "mad3", "mad4", "madl1", "madl2", "madl3", "madl4", "mak1", "mak2", "makl1", "makl2", "inv_word"];

/// `(row, row it is pushed onto by Φ)`.
pub const TRANSFER_PAIRS: [(&str, &str); 4] = [("mad3", "mad1"), ("mad4", "mad2"), ("madl3", "madl1"), ("madl4", "madl2")];

fn table1_checks(multisets: &[MultisetSpec], threads: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let maj = Statistic::combo(builtin("maj_word")?);
    let mut reference = Vec::new();
    let mut oracle = Check { name: "maj_word distribution = q-multinomial".into(), checked: 0, failure: None };
    for m in multisets {
        let h = distribution(&maj, m, threads)?;
        oracle.checked += 1;
        if oracle.failure.is_none() && h != maj_reference_polynomial(m) {
            oracle.failure = Some(format!("differs on {m}"));
        }
        reference.push(h);
    }
    checks.push(oracle);

    for row in MAHONIAN_ROWS {
        let stat = Statistic::combo(builtin(row)?);
        let mut c = Check { name: format!("{row} is Mahonian"), checked: 0, failure: None };
        for (m, want) in multisets.iter().zip(&reference) {
            c.checked += 1;
            if &distribution(&stat, m, threads)? != want {
                c.failure = Some(format!("differs on {m}"));
                break;
            }
        }
        checks.push(c);
    }

    for (from, to) in TRANSFER_PAIRS {
        let a: StatCombo = builtin(from)?;
        let b: StatCombo = builtin(to)?;
        checks.push(wordwise(&format!("{from}(w) = {to}(phi(w))"), multisets, |w| {
            let image = phi(w).map_err(|e| e.to_string())?;
            equal(a.eval(w), b.eval(&image))
        }));
        let (sa, sb) = (Statistic::combo(a), Statistic::combo(b));
        let mut c = Check { name: format!("(des, {from}) ~ (des, {to})"), checked: 0, failure: None };
        for m in multisets {
            c.checked += 1;
            if joint_distribution(&sa, m, threads)? != joint_distribution(&sb, m, threads)? {
                c.failure = Some(format!("differs on {m}"));
                break;
            }
        }
        checks.push(c);
    }
    Ok(checks)
}
