//! One handle for every kind of word statistic, resolved from a name.

use std::fmt;

use crate::builtin::builtin;
use crate::combo::{CompiledCombo, StatCombo};
use crate::error::{Error, Result};
use crate::stats::{ClassicStat, DefinitionalStat};
use crate::word::Letter;

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Statistic {
    Classic(ClassicStat),
    Definitional(DefinitionalStat),
    Combo { combo: StatCombo, compiled: CompiledCombo },
}

impl Statistic {
    pub fn combo(combo: StatCombo) -> Statistic {
        let compiled = combo.compile();
        Statistic::Combo { combo, compiled }
    }

    /// Resolution order: `classic:`/`def:` prefixes, bare `maj`/`inv`, builtin
    /// names, definitional names, then the combination grammar.
    pub fn resolve(name: &str) -> Result<Statistic> {
        let name = name.trim();
        if let Some(rest) = name.strip_prefix("classic:") {
            return rest.parse().map(Statistic::Classic);
        }
        if let Some(rest) = name.strip_prefix("def:") {
            return rest.parse().map(Statistic::Definitional);
        }
        if matches!(name, "maj" | "inv") {
            return name.parse().map(Statistic::Classic);
        }
        if let Ok(c) = builtin(name) {
            return Ok(Statistic::combo(c));
        }
        if let Ok(d) = name.parse::<DefinitionalStat>() {
            return Ok(Statistic::Definitional(d));
        }
        if name.contains(['[', '+', '*']) || name.chars().all(|c| c.is_ascii_digit()) {
            return name.parse().map(Statistic::combo);
        }
        Err(Error::UnknownStatistic(name.to_string()))
    }

    pub fn eval(&self, w: &[Letter]) -> u64 {
        match self {
            Statistic::Classic(c) => c.eval(w),
            Statistic::Definitional(d) => d.eval(w),
            Statistic::Combo { compiled, .. } => compiled.eval(w),
        }
    }

    /// Short label: the builtin name when there is one, otherwise the formula.
    pub fn label(&self) -> String {
        match self {
            Statistic::Classic(c) => c.name().to_string(),
            Statistic::Definitional(d) => d.name().to_string(),
            Statistic::Combo { combo, .. } => combo.name().map_or_else(|| combo.formula(), str::to_string),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution() {
        assert!(matches!(Statistic::resolve("maj").unwrap(), Statistic::Classic(ClassicStat::Maj)));
        assert!(matches!(Statistic::resolve("classic:des").unwrap(), Statistic::Classic(ClassicStat::Des)));
        assert!(matches!(Statistic::resolve("des").unwrap(), Statistic::Combo { .. }));
        assert!(matches!(Statistic::resolve("Dtop").unwrap(), Statistic::Definitional(DefinitionalStat::Dtop)));
        assert!(matches!(Statistic::resolve("def:mak_l").unwrap(), Statistic::Definitional(DefinitionalStat::MakL)));
        assert_eq!(Statistic::resolve("mad3").unwrap().label(), "mad3");
        assert_eq!(Statistic::resolve("2*2[31] + [21]").unwrap().label(), "2*2[31] + [21]");
        assert!(Statistic::resolve("nonsense").is_err());
        assert!(Statistic::resolve("def:nonsense").is_err());
    }

    #[test]
    fn evaluation() {
        let w = [3, 4, 1, 5, 6, 2];
        assert_eq!(Statistic::resolve("2[31]").unwrap().eval(&w), 4);
        assert_eq!(Statistic::resolve("des").unwrap().eval(&[1, 2, 3]), 0);
        assert_eq!(Statistic::resolve("maj_word").unwrap().eval(&w), Statistic::resolve("maj").unwrap().eval(&w));
    }
}
