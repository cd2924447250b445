//! Black ATM straddle premia, implied-volatility inversion, and forward to
//! spot premium conversion under a chosen discount curve.

mod grid;

pub use grid::{read_grid, write_grid, GridKind, SwaptionGrid, PREMIUM_UNIT};

use statrs::function::erf::erf;

use crate::curves::Curve;
use crate::error::{Error, Result};
use crate::pricing::{check_coverage, fixed_leg_annuity, float_leg_pv, swap_legs};
use crate::temporal::{MarketConventions, Tenor};

/// Payer plus receiver at the forward strike:
/// `2 A F (2 N(vol sqrt(tau) / 2) - 1)`.
pub fn black_atm_straddle_premium(forward: f64, vol: f64, expiry: f64, annuity: f64) -> f64 {
    let d = vol * expiry.sqrt() / 2.0;
    2.0 * annuity * forward * erf(d / std::f64::consts::SQRT_2)
}

/// Volatility that reproduces `premium`, by bisection down to machine
/// precision. The bracket starts at [0, 1] and doubles until it holds the root.
pub fn implied_vol_from_premium(premium: f64, forward: f64, expiry: f64, annuity: f64) -> Result<f64> {
    if !(forward > 0.0 && expiry > 0.0 && annuity > 0.0) {
        return Err(Error::Inversion(format!(
            "need positive forward, expiry and annuity, got {forward}, {expiry}, {annuity}"
        )));
    }
    let cap = 2.0 * annuity * forward;
    if !(0.0..cap).contains(&premium) {
        return Err(Error::Inversion(format!("premium {premium} outside [0, {cap})")));
    }
    if premium == 0.0 {
        return Ok(0.0);
    }
    let price = |v: f64| black_atm_straddle_premium(forward, v, expiry, annuity);
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut expansions = 0;
    while price(hi) < premium {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 64 {
            return Err(Error::Inversion(format!("no volatility reaches premium {premium}")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if price(mid) < premium {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // return whichever end prices closer
    Ok(if (price(lo) - premium).abs() <= (price(hi) - premium).abs() { lo } else { hi })
}

/// Premium paid today for a premium settled at expiry.
pub fn spot_from_forward_premium(forward_premium: f64, discount_to_expiry: f64) -> Result<f64> {
    if !(discount_to_expiry > 0.0 && discount_to_expiry <= 1.0) {
        return Err(Error::Domain(format!("discount factor {discount_to_expiry} outside (0, 1]")));
    }
    Ok(discount_to_expiry * forward_premium)
}

/// Forward-starting swap seen from a curve pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForwardSwap {
    pub rate: f64,
    /// Fixed-leg annuity discounted to today.
    pub spot_annuity: f64,
    /// Discount factor from today to the option expiry.
    pub discount_to_expiry: f64,
    /// Expiry in years on the discount curve's day count.
    pub expiry_years: f64,
}

impl ForwardSwap {
    /// Annuity as seen at the option expiry.
    pub fn forward_annuity(&self) -> f64 {
        self.spot_annuity / self.discount_to_expiry
    }
}

/// The `expiry` x `tenor` forward swap on `float_tenor`, forwards from `fwd`,
/// discounting on `disc`.
pub fn forward_swap(
    expiry: Tenor,
    tenor: Tenor,
    float_tenor: Tenor,
    fwd: &Curve,
    disc: &Curve,
    conv: &MarketConventions,
) -> Result<ForwardSwap> {
    let spot = disc.reference_date();
    let start = conv.maturity(spot, expiry);
    let (fixed, floating) = swap_legs(float_tenor, tenor, start, conv)?;
    let end = fixed.schedule.end().max(floating.schedule.end());
    check_coverage(disc, end)?;
    check_coverage(fwd, end)?;
    let spot_annuity = fixed_leg_annuity(&fixed, disc)?;
    let rate = float_leg_pv(&floating, fwd, disc)? / spot_annuity;
    Ok(ForwardSwap {
        rate,
        spot_annuity,
        discount_to_expiry: disc.discount_factor(start)?,
        expiry_years: disc.day_count().fraction(spot, start),
    })
}

/// Spot premia and implied vols of a forward-premium grid, cell by cell.
/// A cell that fails is left empty and reported.
#[derive(Debug, Clone, PartialEq)]
pub struct GridConversion {
    pub spot: SwaptionGrid,
    pub vols: SwaptionGrid,
    pub errors: Vec<(Tenor, Tenor, Error)>,
}

pub fn convert_grid_cells(
    forward_premia: &SwaptionGrid,
    float_tenor: Tenor,
    fwd: &Curve,
    disc: &Curve,
    conv: &MarketConventions,
) -> Result<GridConversion> {
    if forward_premia.kind != GridKind::ForwardPremium {
        return Err(Error::Configuration(format!("expected a forward premium grid, got {}", forward_premia.kind)));
    }
    let mut out = GridConversion {
        spot: forward_premia.with_kind(GridKind::SpotPremium),
        vols: forward_premia.with_kind(GridKind::Volatility),
        errors: Vec::new(),
    };
    for (i, &e) in forward_premia.expiries.iter().enumerate() {
        for (j, &t) in forward_premia.tenors.iter().enumerate() {
            let Some(p) = forward_premia.values[i][j] else {
                continue;
            };
            let cell = forward_swap(e, t, float_tenor, fwd, disc, conv).and_then(|fs| {
                let spot = spot_from_forward_premium(p, fs.discount_to_expiry)?;
                let vol = implied_vol_from_premium(p, fs.rate, fs.expiry_years, fs.forward_annuity())?;
                Ok((spot, vol))
            });
            match cell {
                Ok((spot, vol)) => {
                    out.spot.values[i][j] = Some(spot);
                    out.vols.values[i][j] = Some(vol);
                }
                Err(err) => out.errors.push((e, t, err)),
            }
        }
    }
    Ok(out)
}

/// Spot premia and implied vols of a forward-premium grid under one curve
/// pair; the first failing cell is the error.
pub fn convert_grid(
    forward_premia: &SwaptionGrid,
    float_tenor: Tenor,
    fwd: &Curve,
    disc: &Curve,
    conv: &MarketConventions,
) -> Result<(SwaptionGrid, SwaptionGrid)> {
    let mut out = convert_grid_cells(forward_premia, float_tenor, fwd, disc, conv)?;
    if !out.errors.is_empty() {
        return Err(out.errors.swap_remove(0).2);
    }
    Ok((out.spot, out.vols))
}
