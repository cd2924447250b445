use multicurve::csa_engine::{
    collateral_curve, csa_discount_pv, funding_discount_pv, simulate_margination, FundingCurves, FundingSpec,
};
use multicurve::curves::{Curve, CurveRole};
use multicurve::temporal::{CivilDate, DayCount};
use proptest::prelude::*;

fn t0() -> CivilDate {
    CivilDate::new(2012, 1, 3).unwrap()
}

#[test]
fn two_date_worked_case() {
    let t = t0().add_days(360);
    let acct = simulate_margination(&[(t0(), 100.0), (t, 104.0)], &[(t0(), 0.04), (t, 0.04)], DayCount::Act360).unwrap();
    let transfers: Vec<f64> = acct.entries.iter().map(|e| e.transfer).collect();
    assert_eq!(transfers, vec![100.0, 0.0]);
    assert_eq!(acct.entries[1].accrued, 104.0);
    let curve = collateral_curve(&[(t0(), 0.04), (t, 0.04)], DayCount::Act360).unwrap();
    assert_eq!(csa_discount_pv(104.0, t, t0(), &curve).unwrap(), 100.0);
    assert_eq!(csa_discount_pv(0.0, t, t0(), &curve).unwrap(), 0.0);
    let mut buf = Vec::new();
    acct.write_csv(&mut buf).unwrap();
    assert_eq!(
        String::from_utf8(buf).unwrap(),
        "date,rc_fixing_pct,accrued,transfer,balance\n\
         2012-01-03,4.000000,0.000000,100.000000,100.000000\n\
         2012-12-28,4.000000,104.000000,0.000000,104.000000\n"
    );
}

#[test]
fn constant_npv_without_interest() {
    let dates: Vec<CivilDate> = (0..5).map(|i| t0().add_days(i)).collect();
    let npv: Vec<_> = dates.iter().map(|d| (*d, 100.0)).collect();
    let fix: Vec<_> = dates.iter().map(|d| (*d, 0.0)).collect();
    let acct = simulate_margination(&npv, &fix, DayCount::Act360).unwrap();
    let transfers: Vec<f64> = acct.entries.iter().map(|e| e.transfer).collect();
    assert_eq!(transfers, vec![100.0, 0.0, 0.0, 0.0, 0.0]);
}

#[test]
fn unsecured_single_period() {
    let t = t0().add_days(360);
    let funding = Curve::new(t0(), CurveRole::Discounting, DayCount::Act360, [(t, 1.0 / 1.02)]).unwrap();
    let curves = FundingCurves { collateral: None, funding: Some(&funding) };
    let pv = funding_discount_pv(100.0, t, t0(), FundingSpec::Unsecured { spread: 0.01 }, &curves).unwrap();
    assert!((pv - 100.0 / 1.03).abs() < 1e-12);
    assert!((pv - 97.0874).abs() < 5e-5);
}

fn ois_like_curve(rates: &[f64]) -> Curve {
    let pillars: Vec<_> = rates
        .iter()
        .enumerate()
        .scan(1.0, |df, (i, r)| {
            *df /= 1.0 + r * 0.25;
            Some((t0().add_days(91 * (i as i64 + 1)), *df))
        })
        .collect();
    Curve::new(t0(), CurveRole::Discounting, DayCount::Act360, pillars).unwrap()
}

proptest! {
    #[test]
    fn zero_spread_on_the_collateral_curve_is_csa(rates in proptest::collection::vec(-0.005f64..0.08, 1..12), days in 1i64..1000, payoff in -1e6f64..1e6) {
        let curve = ois_like_curve(&rates);
        let t = t0().add_days(days);
        let curves = FundingCurves { collateral: Some(&curve), funding: Some(&curve) };
        let csa = funding_discount_pv(payoff, t, t0(), FundingSpec::Csa, &curves).unwrap();
        let unsecured = funding_discount_pv(payoff, t, t0(), FundingSpec::Unsecured { spread: 0.0 }, &curves).unwrap();
        prop_assert!((csa - unsecured).abs() <= 1e-12 * payoff.abs().max(1.0));
    }

    #[test]
    fn wider_spread_lowers_value(rates in proptest::collection::vec(0.0f64..0.06, 1..12), days in 30i64..1000, s in 0.0f64..0.05, ds in 1e-4f64..0.02) {
        let curve = ois_like_curve(&rates);
        let t = t0().add_days(days);
        let curves = FundingCurves { collateral: None, funding: Some(&curve) };
        let lo = funding_discount_pv(100.0, t, t0(), FundingSpec::Unsecured { spread: s }, &curves).unwrap();
        let hi = funding_discount_pv(100.0, t, t0(), FundingSpec::Unsecured { spread: s + ds }, &curves).unwrap();
        prop_assert!(hi < lo);
    }

    #[test]
    fn perfect_collateral_tracks_npv(npvs in proptest::collection::vec(-1e4f64..1e4, 1..60), fixings in proptest::collection::vec(-0.005f64..0.1, 60)) {
        let dates: Vec<CivilDate> = (0..npvs.len()).map(|i| t0().add_days(i as i64 * 7)).collect();
        let path: Vec<_> = dates.iter().copied().zip(npvs.iter().copied()).collect();
        let fix: Vec<_> = dates.iter().copied().zip(fixings.iter().copied()).collect();
        let acct = simulate_margination(&path, &fix, DayCount::Act360).unwrap();
        for (e, (_, npv)) in acct.entries.iter().zip(&path) {
            prop_assert_eq!(e.balance, *npv);
        }
        // what the account owes the poster, discounted at the collateral rate,
        // equals the discounted terminal NPV
        let d = acct.collateral_discounts();
        let terminal = d.last().unwrap() * path.last().unwrap().1;
        let scale = npvs.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        prop_assert!((acct.discounted_transfers() - terminal).abs() <= 1e-10 * scale * npvs.len() as f64);
    }

    #[test]
    fn initial_margin_is_the_csa_price(fixings in proptest::collection::vec(0.0001f64..0.12, 2..250), gaps in proptest::collection::vec(1i64..30, 250), payoff in 1.0f64..1e9) {
        let mut dates = vec![t0()];
        for g in gaps.iter().take(fixings.len() - 1) {
            dates.push(dates.last().unwrap().add_days(*g));
        }
        let fix: Vec<_> = dates.iter().copied().zip(fixings.iter().copied()).collect();
        let curve = collateral_curve(&fix, DayCount::Act360).unwrap();
        let maturity = *dates.last().unwrap();
        // deterministic NPV path: the payoff discounted back at the fixings
        let path: Vec<_> = dates.iter().map(|d| (*d, csa_discount_pv(payoff, maturity, *d, &curve).unwrap())).collect();
        let acct = simulate_margination(&path, &fix, DayCount::Act360).unwrap();
        let pv = csa_discount_pv(payoff, maturity, t0(), &curve).unwrap();
        prop_assert!((acct.initial_margin() / pv - 1.0).abs() < 1e-10);
        for e in &acct.entries[1..] {
            prop_assert!(e.transfer.abs() <= 1e-10 * payoff);
        }
    }
}
