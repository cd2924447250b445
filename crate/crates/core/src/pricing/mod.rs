//! Swap legs on separate forwarding and discounting curves, par rates and
//! basis-swap spreads.

use std::io::Write;

use crate::curves::{fixed_leg_schedule, floating_leg_schedule, Curve, CurveRole, CurveSet};
use crate::error::{Error, Result};
use crate::temporal::{CivilDate, DayCount, MarketConventions, Schedule, Tenor};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LegKind {
    Fixed(f64),
    Floating(Tenor),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Receive,
    Pay,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Receive => 1.0,
            Side::Pay => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwapLeg {
    pub schedule: Schedule,
    pub kind: LegKind,
    pub day_count: DayCount,
    pub notional: f64,
    pub side: Side,
}

impl SwapLeg {
    pub fn fixed(schedule: Schedule, rate: f64, day_count: DayCount, notional: f64) -> Self {
        SwapLeg { schedule, kind: LegKind::Fixed(rate), day_count, notional, side: Side::Receive }
    }

    /// Floating leg. Except for overnight legs, which compound over longer
    /// periods, the schedule must step by the index tenor.
    pub fn floating(schedule: Schedule, tenor: Tenor, day_count: DayCount, notional: f64) -> Result<Self> {
        if !tenor.is_overnight() && schedule.frequency() != tenor {
            return Err(Error::Schedule(format!(
                "floating leg on {tenor} with a {} schedule",
                schedule.frequency()
            )));
        }
        Ok(SwapLeg { schedule, kind: LegKind::Floating(tenor), day_count, notional, side: Side::Receive })
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn with_notional(mut self, notional: f64) -> Self {
        self.notional = notional;
        self
    }
}

fn check_discount(disc: &Curve) -> Result<()> {
    if disc.role() != CurveRole::Discounting {
        return Err(Error::Configuration(format!("curve role {} cannot discount", disc.role())));
    }
    Ok(())
}

/// Signed PV of a floating leg: forwards from `fwd`, discounting on `disc`.
pub fn float_leg_pv(leg: &SwapLeg, fwd: &Curve, disc: &Curve) -> Result<f64> {
    let LegKind::Floating(tenor) = leg.kind else {
        return Err(Error::LegKind("float_leg_pv needs a floating leg".into()));
    };
    check_discount(disc)?;
    let role_ok = fwd.role() == CurveRole::Forwarding(tenor) || (tenor.is_overnight() && fwd.role() == CurveRole::Discounting);
    if !role_ok {
        return Err(Error::Configuration(format!("curve role {} cannot project {tenor} fixings", fwd.role())));
    }
    let mut pv = 0.0;
    for (a, b) in leg.schedule.periods() {
        let tau = leg.day_count.fraction(a, b);
        pv += disc.discount_factor(b)? * fwd.simple_forward(a, b, leg.day_count)? * tau;
    }
    Ok(leg.side.sign() * leg.notional * pv)
}

/// `N * sum P_d(T_i) tau_i` over a fixed leg, unsigned.
pub fn fixed_leg_annuity(leg: &SwapLeg, disc: &Curve) -> Result<f64> {
    if !matches!(leg.kind, LegKind::Fixed(_)) {
        return Err(Error::LegKind("annuity needs a fixed leg".into()));
    }
    check_discount(disc)?;
    Ok(leg.notional * schedule_annuity(&leg.schedule, leg.day_count, disc)?)
}

fn schedule_annuity(schedule: &Schedule, dc: DayCount, disc: &Curve) -> Result<f64> {
    let mut a = 0.0;
    for (s, e) in schedule.periods() {
        a += disc.discount_factor(e)? * dc.fraction(s, e);
    }
    Ok(a)
}

/// Signed PV of either leg kind.
pub fn leg_pv(leg: &SwapLeg, curves: &CurveSet) -> Result<f64> {
    match leg.kind {
        LegKind::Fixed(rate) => Ok(leg.side.sign() * rate * fixed_leg_annuity(leg, curves.discount())?),
        LegKind::Floating(tenor) => float_leg_pv(leg, curves.forwarding(tenor)?, curves.discount()),
    }
}

pub(crate) fn check_coverage(curve: &Curve, end: CivilDate) -> Result<()> {
    if end > curve.last_date() {
        return Err(Error::Coverage(format!(
            "{} curve ends {}, instrument needs {end}",
            curve.role(),
            curve.last_date()
        )));
    }
    Ok(())
}

/// Spot-starting fixed and floating legs of a `maturity` swap on `tenor`,
/// unit notional. Overnight legs pay on the fixed-leg dates.
pub fn swap_legs(tenor: Tenor, maturity: Tenor, spot: CivilDate, conv: &MarketConventions) -> Result<(SwapLeg, SwapLeg)> {
    let fixed_schedule = fixed_leg_schedule(spot, maturity, conv)?;
    let float_schedule = if tenor.is_overnight() {
        fixed_schedule.clone()
    } else {
        floating_leg_schedule(spot, maturity, tenor, conv)?
    };
    let fixed = SwapLeg::fixed(fixed_schedule, 0.0, conv.fixed_day_count, 1.0);
    let floating = SwapLeg::floating(float_schedule, tenor, conv.day_count, 1.0)?;
    Ok((fixed, floating))
}

/// Fixed rate that prices a spot-starting swap against `tenor` at par.
pub fn swap_par_rate(tenor: Tenor, maturity: Tenor, fwd: &Curve, disc: &Curve, conv: &MarketConventions) -> Result<f64> {
    check_discount(disc)?;
    let (fixed, floating) = swap_legs(tenor, maturity, disc.reference_date(), conv)?;
    let end = fixed.schedule.end().max(floating.schedule.end());
    check_coverage(disc, end)?;
    check_coverage(fwd, end)?;
    Ok(float_leg_pv(&floating, fwd, disc)? / fixed_leg_annuity(&fixed, disc)?)
}

/// Annuity the added spread accrues on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpreadAnnuity {
    /// The short-tenor floating leg's own dates and day count.
    #[default]
    ShortLeg,
    /// The standard fixed leg.
    FixedLeg,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpread {
    /// `par(long) - par(short)`.
    pub par_difference: f64,
    /// Spread on the short leg that equates the two floating legs.
    pub spread_leg: f64,
}

/// Basis spread between the `short` and `long` tenors for a spot-starting
/// swap of the given maturity.
pub fn basis_swap_spread(
    short: Tenor,
    long: Tenor,
    maturity: Tenor,
    curves: &CurveSet,
    conv: &MarketConventions,
    annuity: SpreadAnnuity,
) -> Result<BasisSpread> {
    let disc = curves.discount();
    let par_long = swap_par_rate(long, maturity, curves.forwarding(long)?, disc, conv)?;
    let par_short = swap_par_rate(short, maturity, curves.forwarding(short)?, disc, conv)?;
    let spot = disc.reference_date();
    let (fixed, short_leg) = swap_legs(short, maturity, spot, conv)?;
    let (_, long_leg) = swap_legs(long, maturity, spot, conv)?;
    let gap = float_leg_pv(&long_leg, curves.forwarding(long)?, disc)? - float_leg_pv(&short_leg, curves.forwarding(short)?, disc)?;
    let a = match annuity {
        SpreadAnnuity::ShortLeg => schedule_annuity(&short_leg.schedule, short_leg.day_count, disc)?,
        SpreadAnnuity::FixedLeg => fixed_leg_annuity(&fixed, disc)?,
    };
    Ok(BasisSpread { par_difference: par_long - par_short, spread_leg: gap / a })
}

/// Basis spreads in bp, one row per maturity and one column per tenor pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMatrix {
    pub maturities: Vec<Tenor>,
    pub pairs: Vec<(Tenor, Tenor)>,
    pub values_bp: Vec<Vec<Option<f64>>>,
    /// Cells that could not be priced.
    pub errors: Vec<(Tenor, (Tenor, Tenor), Error)>,
}

fn tenor_label(t: Tenor) -> String {
    match t.in_months() {
        _ if t.is_overnight() => "ON".into(),
        Some(m) => format!("{m}M"),
        None => t.to_string(),
    }
}

impl BasisMatrix {
    pub fn compute(maturities: &[Tenor], pairs: &[(Tenor, Tenor)], curves: &CurveSet, conv: &MarketConventions) -> Self {
        let mut errors = Vec::new();
        let values_bp = maturities
            .iter()
            .map(|&m| {
                pairs
                    .iter()
                    .map(|&(s, l)| match basis_swap_spread(s, l, m, curves, conv, SpreadAnnuity::ShortLeg) {
                        Ok(b) => Some(b.par_difference * 1e4),
                        Err(e) => {
                            errors.push((m, (s, l), e));
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        BasisMatrix { maturities: maturities.to_vec(), pairs: pairs.to_vec(), values_bp, errors }
    }

    /// `maturity,<short>vs<long>,...`; unpriced cells are left empty.
    pub fn write_csv<W: Write>(&self, mut sink: W) -> Result<()> {
        let header: Vec<String> =
            self.pairs.iter().map(|&(s, l)| format!("{}vs{}", tenor_label(s), tenor_label(l))).collect();
        writeln!(sink, "maturity,{}", header.join(","))?;
        for (m, row) in self.maturities.iter().zip(&self.values_bp) {
            let cells: Vec<String> = row
                .iter()
                .map(|v| v.map(|x| crate::replication::fixed(x, 2)).unwrap_or_default())
                .collect();
            writeln!(sink, "{m},{}", cells.join(","))?;
        }
        Ok(())
    }
}
