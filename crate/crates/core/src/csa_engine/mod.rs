//! Collateral account margination and discounting at the collateral or
//! funding rate.

use std::io::Write;

use crate::curves::{Curve, CurveRole};
use crate::error::{Error, Result};
use crate::replication::fixed;
use crate::temporal::{CivilDate, DayCount};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginStep {
    /// Previous balance grown at the collateral rate.
    pub accrued: f64,
    /// Amount posted (negative: returned) to bring the balance to the NPV.
    pub transfer: f64,
}

pub fn margination_step(prev_balance: f64, rc: f64, dtau: f64, target_npv: f64) -> MarginStep {
    let accrued = prev_balance * (1.0 + rc * dtau);
    MarginStep { accrued, transfer: target_npv - accrued }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerEntry {
    pub date: CivilDate,
    /// Collateral rate fixed on `date`, accruing until the next date.
    pub rc_fixing: f64,
    pub accrued: f64,
    pub transfer: f64,
    /// Post-transfer balance.
    pub balance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollateralAccount {
    pub entries: Vec<LedgerEntry>,
    pub day_count: DayCount,
}

impl CollateralAccount {
    /// Collateral posted at the first margination date.
    pub fn initial_margin(&self) -> f64 {
        self.entries.first().map_or(0.0, |e| e.transfer)
    }

    /// Discount factors `D_i` from the first date to each margination date
    /// at the collateral fixings.
    pub fn collateral_discounts(&self) -> Vec<f64> {
        let mut d = 1.0;
        let mut out = Vec::with_capacity(self.entries.len());
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                let prev = &self.entries[i - 1];
                d /= 1.0 + prev.rc_fixing * self.day_count.fraction(prev.date, e.date);
            }
            out.push(d);
        }
        out
    }

    /// `sum D_i * transfer_i`; for a self-financing account this equals the
    /// discounted final balance.
    pub fn discounted_transfers(&self) -> f64 {
        self.collateral_discounts().iter().zip(&self.entries).map(|(d, e)| d * e.transfer).sum()
    }

    pub fn write_csv<W: Write>(&self, mut sink: W) -> Result<()> {
        writeln!(sink, "date,rc_fixing_pct,accrued,transfer,balance")?;
        for e in &self.entries {
            writeln!(
                sink,
                "{},{},{},{},{}",
                e.date,
                fixed(e.rc_fixing * 100.0, 6),
                fixed(e.accrued, 6),
                fixed(e.transfer, 6),
                fixed(e.balance, 6)
            )?;
        }
        Ok(())
    }
}

/// Re-margins the account to the NPV on every date of `npv_path`, accruing
/// at the fixing observed on the previous date. Both series must share dates.
pub fn simulate_margination(
    npv_path: &[(CivilDate, f64)],
    rc_fixings: &[(CivilDate, f64)],
    dc: DayCount,
) -> Result<CollateralAccount> {
    if npv_path.is_empty() {
        return Err(Error::Alignment("empty NPV path".into()));
    }
    if npv_path.len() != rc_fixings.len() {
        return Err(Error::Alignment(format!(
            "{} NPV dates but {} collateral fixings",
            npv_path.len(),
            rc_fixings.len()
        )));
    }
    let mut entries: Vec<LedgerEntry> = Vec::with_capacity(npv_path.len());
    for (i, (&(date, npv), &(fix_date, rc))) in npv_path.iter().zip(rc_fixings).enumerate() {
        if date != fix_date {
            return Err(Error::Alignment(format!("NPV date {date} has fixing dated {fix_date}")));
        }
        let step = match entries.last() {
            None => margination_step(0.0, 0.0, 0.0, npv),
            Some(prev) => {
                if date <= prev.date {
                    return Err(Error::Alignment(format!("margination dates not increasing at row {i}: {date}")));
                }
                margination_step(prev.balance, prev.rc_fixing, dc.fraction(prev.date, date), npv)
            }
        };
        entries.push(LedgerEntry { date, rc_fixing: rc, accrued: step.accrued, transfer: step.transfer, balance: npv });
    }
    Ok(CollateralAccount { entries, day_count: dc })
}

/// Discount curve implied by compounding the collateral fixings between the
/// given dates; referenced to the first date.
pub fn collateral_curve(rc_fixings: &[(CivilDate, f64)], dc: DayCount) -> Result<Curve> {
    let (&(start, _), rest) = rc_fixings
        .split_first()
        .ok_or_else(|| Error::Alignment("no collateral fixings".into()))?;
    let mut pillars = Vec::with_capacity(rest.len());
    let mut df = 1.0;
    let mut prev = rc_fixings[0];
    for &(d, rc) in rest {
        if d <= prev.0 {
            return Err(Error::Alignment(format!("fixing dates not increasing at {d}")));
        }
        df /= 1.0 + prev.1 * dc.fraction(prev.0, d);
        pillars.push((d, df));
        prev = (d, rc);
    }
    Curve::new(start, CurveRole::Discounting, dc, pillars)
}

/// `P(t) / P(T)`, the growth of one unit from `t` to `maturity`.
fn growth_factor(curve: &Curve, t: CivilDate, maturity: CivilDate) -> Result<f64> {
    if maturity < t {
        return Err(Error::Ordering(format!("payoff date {maturity} before valuation date {t}")));
    }
    Ok(curve.discount_factor(t)? / curve.discount_factor(maturity)?)
}

/// Value at `t` of `payoff` paid at `maturity` under perfect collateral
/// remunerated at the rate behind `rc_curve`.
pub fn csa_discount_pv(payoff: f64, maturity: CivilDate, t: CivilDate, rc_curve: &Curve) -> Result<f64> {
    if rc_curve.role() != CurveRole::Discounting {
        return Err(Error::Configuration(format!("curve role {} cannot discount collateral", rc_curve.role())));
    }
    Ok(payoff / growth_factor(rc_curve, t, maturity)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FundingSpec {
    /// Collateralized: discount at the collateral rate.
    Csa,
    /// Uncollateralized: funded at the money-market curve plus `spread`.
    Unsecured { spread: f64 },
}

/// Curves a funding decision may need.
#[derive(Debug, Clone, Default)]
pub struct FundingCurves<'a> {
    pub collateral: Option<&'a Curve>,
    pub funding: Option<&'a Curve>,
}

/// Value at `t` of `payoff` paid at `maturity` under `spec`. Unsecured
/// funding compounds `forward + spread` over the funding curve's pillar grid.
pub fn funding_discount_pv(
    payoff: f64,
    maturity: CivilDate,
    t: CivilDate,
    spec: FundingSpec,
    curves: &FundingCurves<'_>,
) -> Result<f64> {
    match spec {
        FundingSpec::Csa => {
            let c = curves
                .collateral
                .ok_or_else(|| Error::Configuration("CSA funding needs a collateral curve".into()))?;
            csa_discount_pv(payoff, maturity, t, c)
        }
        FundingSpec::Unsecured { spread } => {
            if !spread.is_finite() {
                return Err(Error::Configuration(format!("funding spread {spread} is not finite")));
            }
            let c = curves
                .funding
                .ok_or_else(|| Error::Configuration("unsecured funding needs a funding curve".into()))?;
            if maturity < t {
                return Err(Error::Ordering(format!("payoff date {maturity} before valuation date {t}")));
            }
            let dc = c.day_count();
            let mut grid = vec![t];
            grid.extend(c.pillars().map(|(d, _)| d).filter(|d| *d > t && *d < maturity));
            if maturity > t {
                grid.push(maturity);
            }
            let mut growth = 1.0;
            for w in grid.windows(2) {
                let tau = dc.fraction(w[0], w[1]);
                growth *= 1.0 + (c.simple_forward(w[0], w[1], dc)? + spread) * tau;
            }
            Ok(payoff / growth)
        }
    }
}
