//! Risky-Libor model: a default-free bond, a risky bond issued by the average
//! Libor bank, and standard vs market FRA prices under independence of
//! default and rates.

use std::io::Write;

use crate::error::{Error, Result};
use crate::pricing::Side;
use crate::replication::fixed;
use crate::temporal::{CivilDate, DayCount};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreditParams {
    recovery: f64,
    default_probability: f64,
}

impl CreditParams {
    /// `recovery` and `default_probability` (the forward default probability
    /// over the FRA period) both in [0, 1].
    pub fn new(recovery: f64, default_probability: f64) -> Result<Self> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if !unit(recovery) || !unit(default_probability) {
            return Err(Error::Domain(format!(
                "recovery {recovery} and default probability {default_probability} must lie in [0, 1]"
            )));
        }
        Ok(CreditParams { recovery, default_probability })
    }

    pub fn from_lgd(lgd: f64, default_probability: f64) -> Result<Self> {
        Self::new(1.0 - lgd, default_probability)
    }

    pub fn risk_free() -> Self {
        CreditParams { recovery: 1.0, default_probability: 0.0 }
    }

    pub fn recovery(&self) -> f64 {
        self.recovery
    }

    pub fn lgd(&self) -> f64 {
        1.0 - self.recovery
    }

    pub fn default_probability(&self) -> f64 {
        self.default_probability
    }
}

/// `R = 1 - LGD * Q`, the expected fraction of a risky unit repaid.
pub fn survival_factor(p: &CreditParams) -> f64 {
    1.0 - p.lgd() * p.default_probability
}

/// Risky zero-coupon bond over the period, given the risk-free one.
pub fn risky_bond_price(p_d: f64, p: &CreditParams) -> f64 {
    p_d * survival_factor(p)
}

/// Simple rate implied by a risky discount factor over `tau`.
pub fn risky_libor(p_x: f64, tau: f64) -> Result<f64> {
    if !(p_x > 0.0) || !(tau > 0.0) {
        return Err(Error::Domain(format!("risky Libor needs P_x > 0 and tau > 0, got {p_x}, {tau}")));
    }
    Ok((1.0 / p_x - 1.0) / tau)
}

/// Discount factor of a simple rate, inverse of [`risky_libor`].
pub fn discount_from_rate(rate: f64, tau: f64) -> f64 {
    1.0 / (1.0 + rate * tau)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FraStyle {
    /// Pays at the end of the period.
    Standard,
    /// Pays at fixing, discounted at the fixing rate.
    Market,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FraContract {
    pub fixing: CivilDate,
    pub payment: CivilDate,
    pub day_count: DayCount,
    pub strike: f64,
    pub notional: f64,
    /// Receive or pay the floating rate.
    pub side: Side,
    pub style: FraStyle,
}

impl FraContract {
    pub fn new(fixing: CivilDate, payment: CivilDate, day_count: DayCount, strike: f64, notional: f64) -> Result<Self> {
        if fixing >= payment {
            return Err(Error::Ordering(format!("FRA fixing {fixing} is not before payment {payment}")));
        }
        Ok(FraContract { fixing, payment, day_count, strike, notional, side: Side::Receive, style: FraStyle::Standard })
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn with_style(mut self, style: FraStyle) -> Self {
        self.style = style;
        self
    }

    pub fn tau(&self) -> f64 {
        self.day_count.fraction(self.fixing, self.payment)
    }
}

/// `N w [P_d1 / R - P_d2 (1 + K tau)]`.
pub fn fra_std_price(c: &FraContract, p_d1: f64, p_d2: f64, p: &CreditParams) -> f64 {
    let r = survival_factor(p);
    c.notional * c.side.sign() * (p_d1 / r - p_d2 * (1.0 + c.strike * c.tau()))
}

/// Market FRA: the standard price scaled by `R`.
pub fn fra_mkt_price(c: &FraContract, p_d1: f64, p_d2: f64, p: &CreditParams) -> f64 {
    fra_std_price(c, p_d1, p_d2, p) * survival_factor(p)
}

/// Price in the contract's own style.
pub fn fra_price(c: &FraContract, p_d1: f64, p_d2: f64, p: &CreditParams) -> f64 {
    match c.style {
        FraStyle::Standard => fra_std_price(c, p_d1, p_d2, p),
        FraStyle::Market => fra_mkt_price(c, p_d1, p_d2, p),
    }
}

/// Strike zeroing both FRA styles.
pub fn fra_equilibrium_rate(p_d1: f64, p_d2: f64, p: &CreditParams, tau: f64) -> f64 {
    ((p_d1 / p_d2) * (1.0 / survival_factor(p)) - 1.0) / tau
}

/// Risk-free simple forward over the same period.
pub fn riskfree_forward(p_d1: f64, p_d2: f64, tau: f64) -> f64 {
    (p_d1 / p_d2 - 1.0) / tau
}

/// Equilibrium FRA rate minus the risk-free forward; never negative.
pub fn basis_over_riskfree(p_d1: f64, p_d2: f64, p: &CreditParams, tau: f64) -> f64 {
    fra_equilibrium_rate(p_d1, p_d2, p, tau) - riskfree_forward(p_d1, p_d2, tau)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub lgd: f64,
    pub q: f64,
    pub tau: f64,
    pub p_d1: f64,
    pub p_d2: f64,
    pub k_star: f64,
    pub f_d: f64,
    pub basis: f64,
}

/// One row per `(LGD, Q)` pair on each `(P_d1, P_d2, tau)` triple.
pub fn credit_sweep(lgds: &[f64], qs: &[f64], periods: &[(f64, f64, f64)]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(lgds.len() * qs.len() * periods.len());
    for &(p_d1, p_d2, tau) in periods {
        if !(p_d1 > 0.0 && p_d2 > 0.0 && tau > 0.0) {
            return Err(Error::Domain(format!("bad period ({p_d1}, {p_d2}, {tau})")));
        }
        for &lgd in lgds {
            for &q in qs {
                let p = CreditParams::from_lgd(lgd, q)?;
                let k_star = fra_equilibrium_rate(p_d1, p_d2, &p, tau);
                let f_d = riskfree_forward(p_d1, p_d2, tau);
                rows.push(SweepRow { lgd, q, tau, p_d1, p_d2, k_star, f_d, basis: k_star - f_d });
            }
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut sink: W) -> Result<()> {
    writeln!(sink, "LGD,Q,tau,Pd1,Pd2,K_star_pct,Fd_pct,basis_bp")?;
    for r in rows {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{}",
            fixed(r.lgd, 4),
            fixed(r.q, 4),
            fixed(r.tau, 6),
            fixed(r.p_d1, 8),
            fixed(r.p_d2, 8),
            fixed(r.k_star * 100.0, 6),
            fixed(r.f_d * 100.0, 6),
            fixed(r.basis * 1e4, 4)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> CreditParams {
        CreditParams::from_lgd(0.6, 0.05).unwrap()
    }

    #[test]
    fn survival() {
        assert_eq!(survival_factor(&CreditParams::new(0.4, 0.0).unwrap()), 1.0);
        assert!((survival_factor(&example()) - 0.97).abs() < 1e-15);
        assert_eq!(survival_factor(&CreditParams::from_lgd(1.0, 1.0).unwrap()), 0.0);
        assert!(CreditParams::new(1.2, 0.1).is_err());
        assert!(CreditParams::new(0.4, -0.1).is_err());
    }

    #[test]
    fn risky_bond() {
        assert_eq!(risky_bond_price(0.98, &CreditParams::new(0.4, 0.0).unwrap()), 0.98);
        assert!((risky_bond_price(0.98, &example()) - 0.9506).abs() < 1e-15);
        assert_eq!(risky_bond_price(1.0, &CreditParams::from_lgd(1.0, 1.0).unwrap()), 0.0);
    }

    #[test]
    fn libor() {
        assert_eq!(risky_libor(1.0, 0.5).unwrap(), 0.0);
        let l = risky_libor(0.9506, 0.5).unwrap();
        assert_eq!(l, (1.0 / 0.9506 - 1.0) / 0.5);
        assert!((l - 0.10394).abs() < 1e-5);
        assert!((discount_from_rate(l, 0.5) - 0.9506).abs() < 1e-15);
        assert!(matches!(risky_libor(0.0, 0.5), Err(Error::Domain(_))));
    }

    fn half_year_fra(strike: f64) -> FraContract {
        let t1 = CivilDate::new(2012, 7, 3).unwrap();
        FraContract::new(t1, t1.add_days(180), DayCount::Act360, strike, 1.0).unwrap()
    }

    #[test]
    fn fra_prices() {
        let c = half_year_fra(0.0);
        let std = fra_std_price(&c, 0.99, 0.97, &example());
        assert!((std - (0.99 / 0.97 - 0.97)).abs() < 1e-15);
        assert!((std - 0.050619).abs() < 5e-7);
        let mkt = fra_mkt_price(&c, 0.99, 0.97, &example());
        assert!((mkt - 0.049100).abs() < 5e-7);
        let payer = c.clone().with_side(Side::Pay);
        assert_eq!(fra_std_price(&payer, 0.99, 0.97, &example()), -std);
    }

    #[test]
    fn equilibrium() {
        let k = fra_equilibrium_rate(0.99, 0.97, &example(), 0.5);
        assert!((k - 0.104368).abs() < 5e-7);
        let f = riskfree_forward(0.99, 0.97, 0.5);
        assert!((f - 0.041237).abs() < 5e-7);
        assert!((basis_over_riskfree(0.99, 0.97, &example(), 0.5) - 0.063131).abs() < 5e-7);
        let c = half_year_fra(k);
        assert!(fra_std_price(&c, 0.99, 0.97, &example()).abs() < 1e-15);
        assert!(fra_mkt_price(&c, 0.99, 0.97, &example()).abs() < 1e-15);
        let free = CreditParams::risk_free();
        assert_eq!(fra_equilibrium_rate(0.99, 0.97, &free, 0.5), f);
        assert_eq!(basis_over_riskfree(0.99, 0.97, &CreditParams::from_lgd(0.0, 0.3).unwrap(), 0.5), 0.0);
        let at_forward = half_year_fra(f);
        assert!(fra_std_price(&at_forward, 0.99, 0.97, &free).abs() < 1e-15);
        assert_eq!(
            fra_std_price(&at_forward, 0.99, 0.97, &free),
            fra_mkt_price(&at_forward, 0.99, 0.97, &free)
        );
    }

    #[test]
    fn sweep_csv() {
        let rows = credit_sweep(&[0.6], &[0.0, 0.05], &[(0.99, 0.97, 0.5)]).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "LGD,Q,tau,Pd1,Pd2,K_star_pct,Fd_pct,basis_bp");
        assert_eq!(lines[1], "0.6000,0.0000,0.500000,0.99000000,0.97000000,4.123711,4.123711,0.0000");
        assert_eq!(lines[2], "0.6000,0.0500,0.500000,0.99000000,0.97000000,10.436816,4.123711,631.3104");
    }
}
