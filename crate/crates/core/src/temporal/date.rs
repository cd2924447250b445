use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Months, NaiveDate, Weekday};

use crate::error::{Error, Result};

/// A Gregorian calendar date with no time-of-day component.
///
/// Serialized as ISO-8601 `YYYY-MM-DD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CivilDate(NaiveDate);

impl CivilDate {
    pub fn new(year: i32, month: u32, day: u32) -> Result<Self> {
        NaiveDate::from_ymd_opt(year, month, day)
            .map(CivilDate)
            .ok_or_else(|| Error::InvalidDate(format!("{year:04}-{month:02}-{day:02}")))
    }

    /// Serial day number. The epoch is internal; only differences mean anything.
    pub fn serial(self) -> i64 {
        i64::from(self.0.num_days_from_ce())
    }

    pub fn from_serial(serial: i64) -> Result<Self> {
        i32::try_from(serial)
            .ok()
            .and_then(NaiveDate::from_num_days_from_ce_opt)
            .map(CivilDate)
            .ok_or_else(|| Error::InvalidDate(format!("serial {serial}")))
    }

    pub fn year(self) -> i32 {
        self.0.year()
    }

    pub fn month(self) -> u32 {
        self.0.month()
    }

    pub fn day(self) -> u32 {
        self.0.day()
    }

    /// Day of year, 1-based.
    pub fn ordinal(self) -> u32 {
        self.0.ordinal()
    }

    pub fn weekday(self) -> Weekday {
        self.0.weekday()
    }

    pub fn is_weekend(self) -> bool {
        matches!(self.weekday(), Weekday::Sat | Weekday::Sun)
    }

    /// Calendar-day shift.
    pub fn add_days(self, days: i64) -> Self {
        Self::from_serial(self.serial() + days).expect("date out of range")
    }

    /// Month arithmetic with end-of-month clamping (Jan 31 + 1M = Feb 28/29).
    pub fn add_months(self, months: i32) -> Self {
        let shifted = if months >= 0 {
            self.0.checked_add_months(Months::new(months as u32))
        } else {
            self.0.checked_sub_months(Months::new(months.unsigned_abs()))
        };
        CivilDate(shifted.expect("date out of range"))
    }

    /// Signed calendar days from `self` to `other`.
    pub fn days_until(self, other: CivilDate) -> i64 {
        other.serial() - self.serial()
    }
}

impl fmt::Display for CivilDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.format("%Y-%m-%d"))
    }
}

impl FromStr for CivilDate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NaiveDate::parse_from_str(s.trim(), "%Y-%m-%d")
            .map(CivilDate)
            .map_err(|_| Error::InvalidDate(s.to_string()))
    }
}
