use super::{Curve, CurveRole};
use crate::error::{Error, Result};
use crate::market_data::{InstrumentId, QuoteKind, QuoteSet};
use crate::solver::RootFinder;
use crate::temporal::{build_schedule, CivilDate, MarketConventions, Schedule, Tenor};

/// Zero-rate bracket searched for each new pillar.
const ZERO_RATE_BRACKET: (f64, f64) = (-0.05, 0.50);
/// Largest repricing error accepted after a solve, in rate terms.
const MAX_REPRICING_ERROR: f64 = 1e-12;

/// Which quotes build a curve, in which order, under which conventions.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapRecipe {
    pub role: CurveRole,
    pub instruments: Vec<InstrumentId>,
    pub conventions: MarketConventions,
}

impl BootstrapRecipe {
    pub fn new(role: CurveRole, instruments: Vec<InstrumentId>, conventions: MarketConventions) -> Self {
        BootstrapRecipe { role, instruments, conventions }
    }

    /// Every OIS quote in `q`, by maturity.
    pub fn ois(q: &QuoteSet, conventions: MarketConventions) -> Self {
        let instruments = q.strip(QuoteKind::Ois).into_iter().map(|(_, quote)| quote.id()).collect();
        BootstrapRecipe::new(CurveRole::Discounting, instruments, conventions)
    }

    /// The `tenor` deposit, FRAs on `tenor` and swaps against `tenor`, ordered
    /// by end date.
    pub fn forward(tenor: Tenor, q: &QuoteSet, conventions: MarketConventions) -> Self {
        let mut picked: Vec<(CivilDate, InstrumentId)> = Vec::new();
        if let Some(asof) = q.asof() {
            let spot = conventions.spot_date(asof);
            let end_of = |m: Tenor| conventions.maturity(spot, m);
            if let Some(dep) = q.by_maturity(QuoteKind::Deposit, tenor) {
                picked.push((end_of(tenor), dep.id()));
            }
            for fra in q.of_kind(QuoteKind::Fra).filter(|f| f.tenor == Some(tenor)) {
                if let Ok((_, e)) = fra.fra_period() {
                    picked.push((end_of(e), fra.id()));
                }
            }
            for swap in q.of_kind(QuoteKind::Swap).filter(|s| s.tenor == Some(tenor)) {
                if let Ok(m) = swap.maturity() {
                    picked.push((end_of(m), swap.id()));
                }
            }
        }
        picked.sort();
        let instruments = picked.into_iter().map(|(_, id)| id).collect();
        BootstrapRecipe::new(CurveRole::Forwarding(tenor), instruments, conventions)
    }

    /// `ois` / `eonia` for the discount curve, `euribor<tenor>` (e.g.
    /// `euribor6m`) for a forwarding curve.
    pub fn by_name(name: &str, q: &QuoteSet, conventions: MarketConventions) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.as_str() {
            "ois" | "eonia" | "discount" => Ok(Self::ois(q, conventions)),
            _ => {
                let tenor = lower
                    .strip_prefix("euribor")
                    .ok_or_else(|| Error::Configuration(format!("unknown recipe {name}")))?
                    .parse::<Tenor>()?;
                Ok(Self::forward(tenor, q, conventions))
            }
        }
    }

    pub fn required_instruments(&self) -> impl Iterator<Item = InstrumentId> + '_ {
        self.instruments.iter().cloned()
    }
}

/// A quote resolved to dates, ready to be solved for or repriced.
#[derive(Debug, Clone, PartialEq)]
pub enum CalibrationInstrument {
    Deposit { id: InstrumentId, start: CivilDate, end: CivilDate, rate: f64 },
    Fra { id: InstrumentId, start: CivilDate, end: CivilDate, rate: f64 },
    /// Fixed vs compounded overnight. One period up to 1Y, annual coupons beyond.
    Ois { id: InstrumentId, schedule: Schedule, rate: f64 },
    Swap { id: InstrumentId, fixed: Schedule, floating: Schedule, rate: f64 },
}

impl CalibrationInstrument {
    pub fn id(&self) -> &InstrumentId {
        match self {
            Self::Deposit { id, .. } | Self::Fra { id, .. } | Self::Ois { id, .. } | Self::Swap { id, .. } => id,
        }
    }

    pub fn quote(&self) -> f64 {
        match self {
            Self::Deposit { rate, .. } | Self::Fra { rate, .. } | Self::Ois { rate, .. } | Self::Swap { rate, .. } => {
                *rate
            }
        }
    }

    /// The date that becomes this instrument's pillar.
    pub fn end(&self) -> CivilDate {
        match self {
            Self::Deposit { end, .. } | Self::Fra { end, .. } => *end,
            Self::Ois { schedule, .. } => schedule.end(),
            Self::Swap { fixed, floating, .. } => fixed.end().max(floating.end()),
        }
    }

    /// Start of the single accrual period, for single-period instruments.
    fn single_period_start(&self) -> Option<CivilDate> {
        match self {
            Self::Deposit { start, .. } | Self::Fra { start, .. } => Some(*start),
            Self::Ois { schedule, .. } if schedule.num_periods() == 1 => Some(schedule.start()),
            _ => None,
        }
    }

    /// Rate implied by `curve` (and `discount` for swaps; a swap with no
    /// separate discount curve is discounted on `curve` itself).
    pub fn implied_rate(&self, curve: &Curve, discount: Option<&Curve>, conv: &MarketConventions) -> Result<f64> {
        let dc = conv.day_count;
        match self {
            Self::Deposit { start, end, .. } | Self::Fra { start, end, .. } => curve.simple_forward(*start, *end, dc),
            Self::Ois { schedule, .. } => {
                let mut annuity = 0.0;
                for (a, b) in schedule.periods() {
                    annuity += dc.fraction(a, b) * curve.discount_factor(b)?;
                }
                let float = curve.discount_factor(schedule.start())? - curve.discount_factor(schedule.end())?;
                Ok(float / annuity)
            }
            Self::Swap { fixed, floating, .. } => {
                let disc = discount.unwrap_or(curve);
                let mut float = 0.0;
                for (a, b) in floating.periods() {
                    let f = curve.simple_forward(a, b, dc)?;
                    float += disc.discount_factor(b)? * f * dc.fraction(a, b);
                }
                let mut annuity = 0.0;
                for (a, b) in fixed.periods() {
                    annuity += disc.discount_factor(b)? * conv.fixed_day_count.fraction(a, b);
                }
                Ok(float / annuity)
            }
        }
    }
}

/// Annual coupon dates generated backward from the maturity, so a broken
/// period (e.g. 18M) becomes a short first period.
pub(crate) fn fixed_leg_schedule(spot: CivilDate, maturity: Tenor, conv: &MarketConventions) -> Result<Schedule> {
    let months = maturity
        .in_months()
        .ok_or_else(|| Error::Schedule(format!("fixed leg maturity {maturity} must be in months or years")))?;
    let step = conv
        .fixed_frequency
        .in_months()
        .ok_or_else(|| Error::Schedule("fixed frequency must be in months or years".into()))?;
    if months % step == 0 {
        return build_schedule(spot, spot.add_months(months as i32), conv.fixed_frequency, &conv.calendar, conv.adjustment);
    }
    let mut back = Vec::new();
    let mut m = months as i32;
    while m > 0 {
        back.push(conv.calendar.adjust(spot.add_months(m), conv.adjustment));
        m -= step as i32;
    }
    back.push(spot);
    back.reverse();
    Schedule::from_dates(back, conv.fixed_frequency)
}

pub(crate) fn floating_leg_schedule(spot: CivilDate, maturity: Tenor, tenor: Tenor, conv: &MarketConventions) -> Result<Schedule> {
    let end = spot.add_months(
        maturity
            .in_months()
            .ok_or_else(|| Error::Schedule(format!("swap maturity {maturity} must be in months or years")))? as i32,
    );
    build_schedule(spot, end, tenor, &conv.calendar, conv.adjustment)
}

/// Resolves every recipe instrument against the quotes.
pub fn resolve_instruments(q: &QuoteSet, recipe: &BootstrapRecipe) -> Result<Vec<CalibrationInstrument>> {
    let conv = &recipe.conventions;
    let asof = q.asof().ok_or_else(|| Error::MissingQuote("empty quote set".into()))?;
    let spot = conv.spot_date(asof);
    let calib = |id: &InstrumentId, e: Error| Error::Calibration { instrument: id.to_string(), reason: e.to_string() };
    recipe
        .instruments
        .iter()
        .map(|id| {
            let quote = q.get(id).ok_or_else(|| Error::MissingQuote(id.to_string()))?;
            let rate = quote.value;
            let id = id.clone();
            let inst = match id.kind {
                QuoteKind::Deposit => {
                    let m = quote.maturity()?;
                    CalibrationInstrument::Deposit { start: spot, end: conv.maturity(spot, m), rate, id }
                }
                QuoteKind::Fra => {
                    let (a, b) = quote.fra_period()?;
                    CalibrationInstrument::Fra { start: conv.maturity(spot, a), end: conv.maturity(spot, b), rate, id }
                }
                QuoteKind::Ois => {
                    let m = quote.maturity()?;
                    let schedule = if m <= Tenor::years(1) {
                        Schedule::from_dates(vec![spot, conv.maturity(spot, m)], m).map_err(|e| calib(&id, e))?
                    } else {
                        fixed_leg_schedule(spot, m, conv).map_err(|e| calib(&id, e))?
                    };
                    CalibrationInstrument::Ois { schedule, rate, id }
                }
                QuoteKind::Swap => {
                    let m = quote.maturity()?;
                    let tenor = quote.tenor.ok_or_else(|| calib(&id, Error::Configuration("swap without floating tenor".into())))?;
                    let fixed = fixed_leg_schedule(spot, m, conv).map_err(|e| calib(&id, e))?;
                    let floating = floating_leg_schedule(spot, m, tenor, conv).map_err(|e| calib(&id, e))?;
                    CalibrationInstrument::Swap { fixed, floating, rate, id }
                }
                other => {
                    return Err(Error::Configuration(format!("{other} quotes cannot calibrate a curve ({id})")));
                }
            };
            Ok(inst)
        })
        .collect()
}

/// Pillar-by-pillar bootstrap shared by both curve roles.
fn bootstrap(q: &QuoteSet, recipe: &BootstrapRecipe, discount: Option<&Curve>) -> Result<Curve> {
    let conv = &recipe.conventions;
    let asof = q.asof().ok_or_else(|| Error::MissingQuote("empty quote set".into()))?;
    let spot = conv.spot_date(asof);
    let instruments = resolve_instruments(q, recipe)?;
    let mut curve = Curve::new(spot, recipe.role, conv.day_count, [])?;
    let finder = RootFinder::default();

    for inst in &instruments {
        let end = inst.end();
        let fail = |reason: String| Error::Calibration { instrument: inst.id().to_string(), reason };
        if end <= curve.last_date() {
            return Err(fail(format!(
                "ends {end}, not after the previous pillar {}; instruments overlap",
                curve.last_date()
            )));
        }
        let rate = inst.quote();
        let closed_form = inst.single_period_start().filter(|s| *s <= curve.last_date());
        if let Some(start) = closed_form {
            let p_start = curve.discount_factor(start)?;
            let growth = 1.0 + rate * conv.day_count.fraction(start, end);
            if growth <= 0.0 {
                return Err(fail(format!("rate {rate} implies a non-positive discount factor")));
            }
            curve.push_pillar(end, p_start / growth).map_err(|e| fail(e.to_string()))?;
        } else {
            let t_end = curve.time(end);
            let mut trial = curve.clone();
            let residual = |z: f64| -> f64 {
                if trial.push_pillar(end, (-z * t_end).exp()).is_err() {
                    return f64::NAN;
                }
                let r = inst.implied_rate(&trial, discount, conv).map(|x| x - rate).unwrap_or(f64::NAN);
                trial.pop_pillar();
                r
            };
            let z = finder
                .solve(residual, ZERO_RATE_BRACKET.0, ZERO_RATE_BRACKET.1, Some(rate))
                .map_err(|e| fail(e.to_string()))?;
            curve.push_pillar(end, (-z * t_end).exp()).map_err(|e| fail(e.to_string()))?;
        }
        let err = inst.implied_rate(&curve, discount, conv)? - rate;
        if !(err.abs() <= MAX_REPRICING_ERROR) {
            return Err(fail(format!("repricing error {err:e} after solve")));
        }
    }
    Ok(curve)
}

/// Builds the discount curve from OIS (or other single-curve) quotes.
pub fn bootstrap_discount(q: &QuoteSet, recipe: &BootstrapRecipe) -> Result<Curve> {
    if recipe.role != CurveRole::Discounting {
        return Err(Error::Configuration(format!("recipe role {} is not discounting", recipe.role)));
    }
    bootstrap(q, recipe, None)
}

/// Builds the `tenor` forwarding curve; swaps are discounted on `discount`.
pub fn bootstrap_forward(tenor: Tenor, q: &QuoteSet, discount: &Curve, recipe: &BootstrapRecipe) -> Result<Curve> {
    if recipe.role != CurveRole::Forwarding(tenor) {
        return Err(Error::Configuration(format!("recipe role {} does not forward {tenor}", recipe.role)));
    }
    if discount.role() != CurveRole::Discounting {
        return Err(Error::Configuration(format!("curve role {} cannot discount", discount.role())));
    }
    let asof = q.asof().ok_or_else(|| Error::MissingQuote("empty quote set".into()))?;
    let spot = recipe.conventions.spot_date(asof);
    if discount.reference_date() != spot {
        return Err(Error::Configuration(format!(
            "discount curve is referenced to {}, quotes settle on {spot}",
            discount.reference_date()
        )));
    }
    bootstrap(q, recipe, Some(discount))
}

/// Implied minus quoted rate.
pub fn repricing_error(inst: &CalibrationInstrument, curve: &Curve, discount: Option<&Curve>, conv: &MarketConventions) -> Result<f64> {
    Ok(inst.implied_rate(curve, discount, conv)? - inst.quote())
}
