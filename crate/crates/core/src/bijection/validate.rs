use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::tuple::TupleSet;
use crate::word::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// Two elements share `(value, dup)`.
    Uniqueness,
    /// Per value: duplicate indices are `1..=k` and `r` does not increase with the index.
    Consistency,
    /// As many descent tops as descent bottoms.
    Balance,
    /// Enough embraceable open blocks for every value.
    Constructibility,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Uniqueness => "uniqueness",
            Condition::Consistency => "consistency",
            Condition::Balance => "balance",
            Condition::Constructibility => "constructibility",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }

    fn push(&mut self, condition: Condition, detail: String) {
        self.violations.push(Violation { condition, detail });
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "invalid: {}: {}", v.condition, v.detail)?;
        }
        Ok(())
    }
}

/// Checks the conditions under which ζ can rebuild a word from `set`.
///
/// Constructibility: when the letters of value `v` start being inserted, the open
/// blocks are counted by `#openers - #closers` among smaller values (descent bottoms
/// minus descent tops). Each descent top of value `v` uses one of them, and the first
/// copy carries the largest `r`, so the requirement is
/// `r(v, 1) <= #open blocks - #descent tops of value v`.
pub fn validate_tuple_set(set: &TupleSet) -> ValidityReport {
    let mut report = ValidityReport::default();

    let mut seen = BTreeMap::new();
    for t in set.elements() {
        if seen.insert(t.key(), ()).is_some() {
            report.push(Condition::Uniqueness, format!("({},{}) occurs more than once", t.value, t.dup));
        }
    }
    report.violations.dedup();

    let (tops, bottoms) = (set.destop().len(), set.desbot().len());
    if tops != bottoms {
        report.push(Condition::Balance, format!("{tops} descent tops but {bottoms} descent bottoms"));
    }

    let mut open: i64 = 0;
    for v in set.values() {
        let copies = set.restrict(v);
        let consistent = consistency(v, &copies, &mut report);
        let value_tops = copies.iter().filter(|t| t.position.is_descent_top()).count() as i64;
        if consistent {
            let r1 = i64::from(copies[0].r);
            if r1 > open - value_tops {
                report.push(
                    Condition::Constructibility,
                    format!("value {v}: r({v},1) = {r1} exceeds {open} open blocks minus {value_tops} descent tops"),
                );
            }
        }
        let value_bottoms = copies.iter().filter(|t| t.position.is_descent_bottom()).count() as i64;
        open += value_bottoms - value_tops;
    }
    report
}

fn consistency(v: Letter, copies: &[super::FourTupleLetter], report: &mut ValidityReport) -> bool {
    let mut ok = true;
    let dups: Vec<u32> = copies.iter().map(|t| t.dup).collect();
    let expected: Vec<u32> = (1..=copies.len() as u32).collect();
    if dups != expected {
        report.push(Condition::Consistency, format!("value {v}: duplicate indices {dups:?} are not 1..={}", copies.len()));
        ok = false;
    }
    if copies.windows(2).any(|p| p[0].dup < p[1].dup && p[0].r < p[1].r) {
        report.push(Condition::Consistency, format!("value {v}: embracing numbers increase with the duplicate index"));
        ok = false;
    }
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::delta;

    fn set(text: &str) -> TupleSet {
        text.parse().unwrap()
    }

    #[test]
    fn delta_images_are_valid() {
        assert!(validate_tuple_set(&delta(&[4, 3, 1, 4, 4, 2])).is_valid());
        assert!(validate_tuple_set(&delta(&[3, 5, 4, 4, 1, 1, 4, 2, 5, 3])).is_valid());
        assert!(validate_tuple_set(&TupleSet::default()).is_valid());
    }

    #[test]
    fn each_condition_is_named() {
        let r = validate_tuple_set(&set("1 1 outsider 0\n1 1 outsider 0"));
        assert!(r.violates(Condition::Uniqueness));

        let r = validate_tuple_set(&set("2 1 closer 0\n1 1 opener 0\n2 2 closer 0"));
        assert!(r.violates(Condition::Balance));
        assert!(!r.violates(Condition::Uniqueness));

        let r = validate_tuple_set(&set("1 1 outsider 0\n1 3 outsider 0"));
        assert_eq!(r.violations.len(), 1);
        assert!(r.violates(Condition::Consistency));

        let r = validate_tuple_set(&set("1 1 opener 0\n2 1 outsider 0\n2 2 outsider 1\n3 1 closer 0"));
        assert!(r.violates(Condition::Consistency));

        // balanced, but the closer 2 has no open block to its right to skip
        let r = validate_tuple_set(&set("1 1 opener 0\n2 1 closer 1"));
        assert_eq!(r.violations.iter().map(|v| v.condition).collect::<Vec<_>>(), [Condition::Constructibility]);
    }
}
