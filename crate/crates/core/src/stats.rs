//! Statistics computed straight from their definitions, without patterns.
//!
//! These are the reference values the pattern combinations in [`crate::builtin`]
//! are checked against.

use std::fmt;
use std::str::FromStr;

use crate::descent::{embracing_numbers_with, EmbraceRule, Side};
use crate::error::Error;
use crate::word::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicStat {
    Des,
    Maj,
    Inv,
}

impl ClassicStat {
    pub fn eval(self, w: &[Letter]) -> u64 {
        match self {
            ClassicStat::Des => descents(w).count() as u64,
            // descents are 1-based: a descent between w_i and w_{i+1} contributes i
            ClassicStat::Maj => descents(w).map(|i| i as u64 + 1).sum(),
            ClassicStat::Inv => {
                let mut inv = 0;
                for i in 0..w.len() {
                    for j in i + 1..w.len() {
                        if w[i] > w[j] {
                            inv += 1;
                        }
                    }
                }
                inv
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassicStat::Des => "des",
            ClassicStat::Maj => "maj",
            ClassicStat::Inv => "inv",
        }
    }
}

impl FromStr for ClassicStat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "des" => Ok(ClassicStat::Des),
            "maj" => Ok(ClassicStat::Maj),
            "inv" => Ok(ClassicStat::Inv),
            other => Err(Error::UnknownStatistic(other.to_string())),
        }
    }
}

impl fmt::Display for ClassicStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// 0-based indices `i` with `w[i] > w[i+1]`.
fn descents(w: &[Letter]) -> impl Iterator<Item = usize> + '_ {
    w.windows(2).enumerate().filter(|(_, p)| p[0] > p[1]).map(|(i, _)| i)
}

/// Word statistics built from heights, equal-letter counts and weak embracing sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DefinitionalStat {
    /// Sum of the heights of descent bottoms.
    HeightSumDesbot,
    Dtop,
    DbotL,
    DbotR,
    DdifL,
    DdifR,
    Res,
    Les,
    MakL,
    MakR,
    MadL,
    MadR,
    MaklL,
    MaklR,
    MadlL,
    MadlR,
}

impl DefinitionalStat {
    pub const ALL: [DefinitionalStat; 16] = [
        DefinitionalStat::HeightSumDesbot,
        DefinitionalStat::Dtop,
        DefinitionalStat::DbotL,
        DefinitionalStat::DbotR,
        DefinitionalStat::DdifL,
        DefinitionalStat::DdifR,
        DefinitionalStat::Res,
        DefinitionalStat::Les,
        DefinitionalStat::MakL,
        DefinitionalStat::MakR,
        DefinitionalStat::MadL,
        DefinitionalStat::MadR,
        DefinitionalStat::MaklL,
        DefinitionalStat::MaklR,
        DefinitionalStat::MadlL,
        DefinitionalStat::MadlR,
    ];

    pub fn name(self) -> &'static str {
        use DefinitionalStat::*;
        match self {
            HeightSumDesbot => "height_sum_desbot",
            Dtop => "Dtop",
            DbotL => "Dbot_l",
            DbotR => "Dbot_r",
            DdifL => "Ddif_l",
            DdifR => "Ddif_r",
            Res => "Res",
            Les => "Les",
            MakL => "mak_l",
            MakR => "mak_r",
            MadL => "mad_l",
            MadR => "mad_r",
            MaklL => "makl_l",
            MaklR => "makl_r",
            MadlL => "madl_l",
            MadlR => "madl_r",
        }
    }

    pub fn eval(self, w: &[Letter]) -> u64 {
        let parts = Parts::of(w);
        use DefinitionalStat::*;
        let value: i64 = match self {
            HeightSumDesbot => parts.height_desbot,
            Dtop => parts.dtop,
            DbotL => parts.dbot_l(),
            DbotR => parts.dbot_r(),
            DdifL => parts.dtop - parts.dbot_l(),
            DdifR => parts.dtop - parts.dbot_r(),
            Res => parts.res,
            Les => parts.les,
            MakL => parts.dbot_l() + parts.res,
            MakR => parts.dbot_r() + parts.res,
            MadL => parts.dtop - parts.dbot_l() + parts.res,
            MadR => parts.dtop - parts.dbot_r() + parts.res,
            MaklL => parts.dbot_l() + parts.les,
            MaklR => parts.dbot_r() + parts.les,
            MadlL => parts.dtop - parts.dbot_l() + parts.les,
            MadlR => parts.dtop - parts.dbot_r() + parts.les,
        };
        u64::try_from(value).expect("descent differences are nonnegative")
    }
}

impl FromStr for DefinitionalStat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        DefinitionalStat::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

impl fmt::Display for DefinitionalStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

struct Parts {
    dtop: i64,
    height_desbot: i64,
    left_dups_desbot: i64,
    right_dups_desbot: i64,
    res: i64,
    les: i64,
}

impl Parts {
    fn of(w: &[Letter]) -> Parts {
        // height: number of strictly smaller letters, plus one
        let height = |a: Letter| w.iter().filter(|&&b| b < a).count() as i64 + 1;
        let equal_left = |i: usize| w[..i].iter().filter(|&&b| b == w[i]).count() as i64;
        let equal_right = |i: usize| w[i + 1..].iter().filter(|&&b| b == w[i]).count() as i64;
        let mut parts = Parts { dtop: 0, height_desbot: 0, left_dups_desbot: 0, right_dups_desbot: 0, res: 0, les: 0 };
        for i in descents(w) {
            let bottom = i + 1;
            parts.dtop += height(w[i]);
            parts.height_desbot += height(w[bottom]);
            parts.left_dups_desbot += equal_left(bottom);
            parts.right_dups_desbot += equal_right(bottom);
        }
        parts.res = embracing_numbers_with(w, Side::Right, EmbraceRule::Weak).iter().map(|&x| i64::from(x)).sum();
        parts.les = embracing_numbers_with(w, Side::Left, EmbraceRule::Weak).iter().map(|&x| i64::from(x)).sum();
        parts
    }

    fn dbot_l(&self) -> i64 {
        self.height_desbot + self.left_dups_desbot
    }

    fn dbot_r(&self) -> i64 {
        self.height_desbot + self.right_dups_desbot
    }
}

/// Sum over descent bottoms of the number of equal letters to their left.
pub fn desbot_left_duplicates(w: &[Letter]) -> u64 {
    Parts::of(w).left_dups_desbot as u64
}

/// Sum over descent bottoms of the number of equal letters to their right.
pub fn desbot_right_duplicates(w: &[Letter]) -> u64 {
    Parts::of(w).right_dups_desbot as u64
}
