//! Named pattern combinations.

use crate::combo::StatCombo;
use crate::error::{Error, Result};

const TABLE: &[(&str, &str)] = &[
    ("mad1", "2*2[31] + [31]2 + [21]1 + 2[21] + [21]"),
    ("mad2", "2*2[31] + [31]2 + 1[21] + 2[21] + [21]"),
    ("mad3", "2*2[31] + [31]2 + [21]2 + [21]1 + [21]"),
    ("mad4", "2*2[31] + [31]2 + [21]2 + 1[21] + [21]"),
    ("madl1", "2*[31]2 + 2[31] + [21] + 1[21] + [21]2"),
    ("madl2", "2*[31]2 + 2[31] + [21] + [21]2 + [21]1"),
    ("madl3", "2*[31]2 + 2[31] + [21] + 1[21] + 2[21]"),
    ("madl4", "2*[31]2 + 2[31] + [21] + 2[21] + [21]1"),
    ("mak1", "1[21] + 1[32] + [32]1 + [21] + 2[31] + 2[21]"),
    ("mak2", "[21]1 + 1[32] + [32]1 + [21] + 2[31] + 2[21]"),
    ("makl1", "[31]2 + [32]1 + 1[32] + [21]1 + [21]2 + [21]"),
    ("makl2", "[31]2 + [32]1 + 1[32] + 1[21] + [21]2 + [21]"),
    ("inv_word", "[23]1 + [31]2 + [32]1 + [21] + [22]1 + [21]1"),
    ("maj_word", "1[32] + 2[31] + 3[21] + [21] + 1[21] + 2[21]"),
    ("res", "2[31] + 2[21]"),
    ("les", "[31]2 + [21]2"),
    ("dbot_l", "1[21] + 1[32] + [32]1 + [21]"),
    ("dbot_r", "1[32] + [32]1 + [21] + [21]1"),
    ("dtop", "1[32] + [32]1 + [31]2 + 2[31] + 1[21] + [21]1 + 2*[21]"),
    ("ddif_l", "[31]2 + 2[31] + [21] + [21]1"),
    ("ddif_r", "[31]2 + 2[31] + [21] + 1[21]"),
    ("statprime", "[31]2 + [13]2 + [32]1 + [21] + [22]1 + [21]1"),
    ("des", "[21]"),
    ("mad_perm", "2*2[31] + [31]2 + [21]"),
    ("madl_perm", "2*[31]2 + 2[31] + [21]"),
    ("mak_perm", "1[32] + [32]1 + [21] + 2[31]"),
    ("makl_perm", "[31]2 + [32]1 + [21] + 1[32]"),
];

/// Left/right variants of the word statistics, as aliases of table rows.
const ALIASES: &[(&str, &str)] = &[
    ("mak_l", "mak1"),
    ("mak_r", "mak2"),
    ("makl_l", "makl2"),
    ("makl_r", "makl1"),
    ("mad_l", "mad1"),
    ("mad_r", "mad2"),
    ("madl_l", "madl2"),
    ("madl_r", "madl1"),
];

/// Every name accepted by [`builtin`], table rows first.
pub fn builtin_names() -> Vec<&'static str> {
    TABLE.iter().map(|(n, _)| *n).chain(ALIASES.iter().map(|(n, _)| *n)).collect()
}

pub fn builtin(name: &str) -> Result<StatCombo> {
    let target = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, t)| t);
    let (_, formula) = TABLE
        .iter()
        .find(|(n, _)| *n == target)
        .ok_or_else(|| Error::UnknownStatistic(name.to_string()))?;
    Ok(formula.parse::<StatCombo>().expect("builtin formulas parse").named(name))
}

/// Base combination for a miner family name (`mad`, `madl`, `mak`, `makl`).
pub fn base_combo(family: &str) -> Option<StatCombo> {
    let row = match family {
        "mad" => "mad_perm",
        "madl" => "madl_perm",
        "mak" => "mak_perm",
        "makl" => "makl_perm",
        _ => return None,
    };
    builtin(row).ok().map(|c| c.named(family))
}
