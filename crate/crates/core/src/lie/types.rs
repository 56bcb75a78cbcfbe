use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// Largest rank accepted for the classical series.
pub const MAX_RANK: usize = 16;

/// Cartan type of a compact simple simply connected group.
///
/// `D_3` is rejected in favour of `A_3`, and `B_1`/`C_1` in favour of `A_1`,
/// so every group has exactly one name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    series: Series,
    rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => (1..=MAX_RANK).contains(&rank),
            Series::B | Series::C => (2..=MAX_RANK).contains(&rank),
            Series::D => (4..=MAX_RANK).contains(&rank),
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(LieType { series, rank })
        } else {
            Err(Error::InvalidType(format!("{series:?}{rank}")))
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }

    /// Every valid type of rank at most `max_rank`.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<LieType> {
        let mut out = vec![];
        for rank in 1..=max_rank {
            for series in [
                Series::A,
                Series::B,
                Series::C,
                Series::D,
                Series::E,
                Series::F,
                Series::G,
            ] {
                if let Ok(t) = LieType::new(series, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Cartan matrix with entry `[i][j] = <alpha_j, alpha_i^vee>` in Bourbaki
    /// numbering (row index is the coroot).
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut a = vec![vec![0i64; l]; l];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..l - 1 {
                    link(i, i + 1);
                }
            }
            Series::D => {
                for i in 0..l - 2 {
                    link(i, i + 1);
                }
                link(l - 3, l - 1);
            }
            Series::E => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                link(0, 2);
                link(1, 3);
                for i in 2..l - 1 {
                    link(i, i + 1);
                }
            }
            Series::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Series::G => link(0, 1),
        }
        match self.series {
            // alpha_l short
            Series::B => a[l - 1][l - 2] = -2,
            // alpha_l long
            Series::C => a[l - 2][l - 1] = -2,
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            Series::F => a[2][1] = -2,
            // alpha_1 short, alpha_2 long
            Series::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: usize = digits.parse().map_err(|_| bad())?;
        LieType::new(series, rank).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("a1".parse::<LieType>().unwrap().to_string(), "A1");
        assert_eq!("E8".parse::<LieType>().unwrap().rank(), 8);
        for bad in ["X9", "D3", "E9", "B1", "G3", "A", "A0", "A-1", "A 2", ""] {
            assert!(bad.parse::<LieType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn cartan_conventions() {
        let g2 = "G2".parse::<LieType>().unwrap().cartan_matrix();
        assert_eq!(g2, vec![vec![2, -3], vec![-1, 2]]);
        let b3 = "B3".parse::<LieType>().unwrap().cartan_matrix();
        assert_eq!(b3[2][1], -2);
        assert_eq!(b3[1][2], -1);
        let c3 = "C3".parse::<LieType>().unwrap().cartan_matrix();
        assert_eq!(c3[1][2], -2);
        let d4 = "D4".parse::<LieType>().unwrap().cartan_matrix();
        assert_eq!(d4[1], vec![-1, 2, -1, -1]);
        let e6 = "E6".parse::<LieType>().unwrap().cartan_matrix();
        assert_eq!(e6[3], vec![0, -1, -1, 2, -1, 0]);
    }

    #[test]
    fn enumerates_types() {
        let names: Vec<String> = LieType::all_up_to_rank(4)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(
            names,
            ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "A4", "B4", "C4", "D4", "F4"]
        );
    }
}
