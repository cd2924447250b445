use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TenorUnit {
    /// Business days when added through a calendar.
    Days,
    Weeks,
    Months,
}

/// A period such as `6M`, `1Y`, `2W` or `ON`.
///
/// Years are stored as months so `1Y == 12M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tenor {
    length: u32,
    unit: TenorUnit,
}

impl Tenor {
    pub const OVERNIGHT: Tenor = Tenor { length: 1, unit: TenorUnit::Days };

    pub const fn days(n: u32) -> Self {
        Tenor { length: n, unit: TenorUnit::Days }
    }

    pub const fn weeks(n: u32) -> Self {
        Tenor { length: n, unit: TenorUnit::Weeks }
    }

    pub const fn months(n: u32) -> Self {
        Tenor { length: n, unit: TenorUnit::Months }
    }

    pub const fn years(n: u32) -> Self {
        Tenor { length: 12 * n, unit: TenorUnit::Months }
    }

    pub fn length(self) -> u32 {
        self.length
    }

    pub fn unit(self) -> TenorUnit {
        self.unit
    }

    pub fn is_overnight(self) -> bool {
        self == Self::OVERNIGHT
    }

    pub fn is_zero(self) -> bool {
        self.length == 0
    }

    /// Length in months, for month-based tenors.
    pub fn in_months(self) -> Option<u32> {
        (self.unit == TenorUnit::Months).then_some(self.length)
    }

    /// Rough length in days, used only for ordering tenors of different units.
    fn approx_days(self) -> f64 {
        let per_unit = match self.unit {
            TenorUnit::Days => 1.0,
            TenorUnit::Weeks => 7.0,
            TenorUnit::Months => 30.4375,
        };
        self.length as f64 * per_unit
    }

    /// `k` repetitions of this tenor.
    pub fn times(self, k: u32) -> Self {
        Tenor { length: self.length * k, unit: self.unit }
    }
}

impl PartialOrd for Tenor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tenor {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.unit == other.unit {
            self.length.cmp(&other.length)
        } else {
            self.approx_days()
                .total_cmp(&other.approx_days())
                .then(self.unit.cmp(&other.unit))
        }
    }
}

impl fmt::Display for Tenor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            TenorUnit::Days if self.length == 1 => f.write_str("ON"),
            TenorUnit::Days => write!(f, "{}D", self.length),
            TenorUnit::Weeks => write!(f, "{}W", self.length),
            TenorUnit::Months if self.length >= 12 && self.length.is_multiple_of(12) => {
                write!(f, "{}Y", self.length / 12)
            }
            TenorUnit::Months => write!(f, "{}M", self.length),
        }
    }
}

impl FromStr for Tenor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        if matches!(t.as_str(), "ON" | "O/N" | "1D") {
            return Ok(Tenor::OVERNIGHT);
        }
        let bad = || Error::InvalidTenor(s.to_string());
        if t.len() < 2 {
            return Err(bad());
        }
        let (num, unit) = t.split_at(t.len() - 1);
        let n: u32 = num.parse().map_err(|_| bad())?;
        match unit {
            "D" => Ok(Tenor::days(n)),
            "W" => Ok(Tenor::weeks(n)),
            "M" => Ok(Tenor::months(n)),
            "Y" => Ok(Tenor::years(n)),
            _ => Err(bad()),
        }
    }
}

/// Parses an FRA key `<start>x<end>`, e.g. `6Mx12M`.
pub fn parse_fra_key(key: &str) -> Result<(Tenor, Tenor)> {
    let lower = key.trim();
    let (a, b) = lower
        .split_once(['x', 'X'])
        .ok_or_else(|| Error::InvalidTenor(format!("FRA key {key}")))?;
    let start: Tenor = a.parse()?;
    let end: Tenor = b.parse()?;
    if start >= end {
        return Err(Error::InvalidTenor(format!("FRA key {key}: start must precede end")));
    }
    Ok((start, end))
}
