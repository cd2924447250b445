use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{CivilDate, Tenor, TenorUnit};
use crate::error::{Error, Result};

/// Business-day adjustment rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Adjustment {
    Unadjusted,
    Following,
    #[default]
    ModifiedFollowing,
}

impl FromStr for Adjustment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace(['-', '_', ' '], "").as_str() {
            "unadjusted" | "none" => Ok(Adjustment::Unadjusted),
            "following" | "f" => Ok(Adjustment::Following),
            "modifiedfollowing" | "mf" => Ok(Adjustment::ModifiedFollowing),
            other => Err(Error::Configuration(format!("unknown adjustment rule {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum HolidayRule {
    /// Saturdays and Sundays only.
    WeekendsOnly,
    /// TARGET2: Jan 1, Good Friday, Easter Monday, May 1, Dec 25, Dec 26.
    Target,
}

/// A business-day calendar: Saturday/Sunday weekends, a rule-based holiday
/// set and any number of extra ad-hoc holidays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Calendar {
    name: String,
    rule: HolidayRule,
    extra_holidays: BTreeSet<CivilDate>,
}

impl Calendar {
    pub fn target() -> Self {
        Calendar {
            name: "TARGET".to_string(),
            rule: HolidayRule::Target,
            extra_holidays: BTreeSet::new(),
        }
    }

    pub fn weekends_only() -> Self {
        Calendar {
            name: "WEEKENDS".to_string(),
            rule: HolidayRule::WeekendsOnly,
            extra_holidays: BTreeSet::new(),
        }
    }

    pub fn with_holidays(mut self, dates: impl IntoIterator<Item = CivilDate>) -> Self {
        self.extra_holidays.extend(dates);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_holiday(&self, d: CivilDate) -> bool {
        if self.extra_holidays.contains(&d) {
            return true;
        }
        match self.rule {
            HolidayRule::WeekendsOnly => false,
            HolidayRule::Target => is_target_holiday(d),
        }
    }

    pub fn is_business_day(&self, d: CivilDate) -> bool {
        !d.is_weekend() && !self.is_holiday(d)
    }

    pub fn adjust(&self, d: CivilDate, rule: Adjustment) -> CivilDate {
        match rule {
            Adjustment::Unadjusted => d,
            Adjustment::Following => self.following(d),
            Adjustment::ModifiedFollowing => {
                let f = self.following(d);
                if f.month() == d.month() {
                    f
                } else {
                    self.preceding(d)
                }
            }
        }
    }

    fn following(&self, mut d: CivilDate) -> CivilDate {
        while !self.is_business_day(d) {
            d = d.add_days(1);
        }
        d
    }

    fn preceding(&self, mut d: CivilDate) -> CivilDate {
        while !self.is_business_day(d) {
            d = d.add_days(-1);
        }
        d
    }

    /// Moves `n` business days forward (backward for negative `n`). With
    /// `n == 0` a non-business day rolls forward to the next business day.
    pub fn advance_business_days(&self, d: CivilDate, n: i64) -> CivilDate {
        let mut cur = d;
        if n == 0 {
            return self.following(cur);
        }
        let step = n.signum();
        let mut left = n.abs();
        while left > 0 {
            cur = cur.add_days(step);
            if self.is_business_day(cur) {
                left -= 1;
            }
        }
        cur
    }

    /// Adds a tenor to a date. Day tenors count business days; week and month
    /// tenors move the calendar date and then apply `rule`.
    pub fn add_tenor(&self, d: CivilDate, tenor: Tenor, rule: Adjustment) -> CivilDate {
        match tenor.unit() {
            TenorUnit::Days => self.advance_business_days(d, i64::from(tenor.length())),
            TenorUnit::Weeks => self.adjust(d.add_days(7 * i64::from(tenor.length())), rule),
            TenorUnit::Months => self.adjust(d.add_months(tenor.length() as i32), rule),
        }
    }
}

impl fmt::Display for Calendar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for Calendar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "TARGET" | "TARGET2" => Ok(Calendar::target()),
            "WEEKENDS" | "NONE" => Ok(Calendar::weekends_only()),
            other => Err(Error::Configuration(format!("unknown calendar {other}"))),
        }
    }
}

/// Easter Sunday of `year` (anonymous Gregorian computus).
pub fn easter_sunday(year: i32) -> CivilDate {
    let a = year % 19;
    let b = year / 100;
    let c = year % 100;
    let d = b / 4;
    let e = b % 4;
    let f = (b + 8) / 25;
    let g = (b - f + 1) / 3;
    let h = (19 * a + b - d - g + 15) % 30;
    let i = c / 4;
    let k = c % 4;
    let l = (32 + 2 * e + 2 * i - h - k) % 7;
    let m = (a + 11 * h + 22 * l) / 451;
    let month = (h + l - 7 * m + 114) / 31;
    let day = (h + l - 7 * m + 114) % 31 + 1;
    CivilDate::new(year, month as u32, day as u32).expect("computus yields a valid date")
}

fn is_target_holiday(d: CivilDate) -> bool {
    let (m, day) = (d.month(), d.day());
    if (m, day) == (1, 1) || (m, day) == (5, 1) || (m, day) == (12, 25) || (m, day) == (12, 26) {
        return true;
    }
    if !(3..=4).contains(&m) {
        return false;
    }
    let easter = easter_sunday(d.year());
    d == easter.add_days(-2) || d == easter.add_days(1)
}
