use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use multicurve::credit_model::{credit_sweep, write_sweep_csv};
use multicurve::csa_engine::{collateral_curve, csa_discount_pv, simulate_margination};
use multicurve::curves::{write_curve, CurveRole, CurveSet};
use multicurve::market_data::{read_quote_rows, EcbSnapshot, Quote, QuoteKind, QuoteSet};
use multicurve::pricing::BasisMatrix;
use multicurve::replication::replication_report;
use multicurve::risk_indices::{
    corridor_check, liquidity_surplus_index, moving_average, trimmed_mean_index, write_index_csv, PanelQuotes,
};
use multicurve::temporal::{CivilDate, Tenor};
use multicurve::vol_converter::{convert_grid_cells, read_grid, write_grid, GridKind};

use crate::config::{Command, RunConfig};
use crate::Failure;

pub fn run(cfg: &RunConfig) -> Result<(), Failure> {
    fs::create_dir_all(&cfg.out).map_err(|e| Failure::Config(format!("{}: {e}", cfg.out.display())))?;
    let errors = match cfg.command {
        Command::Bootstrap => bootstrap(cfg)?,
        Command::ReplicateFra => replicate_fra(cfg)?,
        Command::BasisMatrix => basis_matrix(cfg)?,
        Command::CreditSweep => sweep(cfg)?,
        Command::CsaSim => csa_sim(cfg)?,
        Command::Indices => indices(cfg)?,
        Command::VolConvert => vol_convert(cfg)?,
    };
    for e in &errors {
        eprintln!("row error: {e}");
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(Failure::RowErrors(errors.len()))
    }
}

fn write_file(cfg: &RunConfig, name: &str, body: impl FnOnce(&mut BufWriter<File>) -> Result<(), Failure>) -> Result<(), Failure> {
    let path = cfg.out.join(name);
    let file = File::create(&path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush()?;
    Ok(())
}

fn rows(path: &Path) -> Result<Vec<Quote>, Failure> {
    let file = File::open(path).map_err(|e| Failure::MissingFile(format!("{}: {e}", path.display())))?;
    read_quote_rows(file).map_err(|e| match Failure::from(e) {
        Failure::Schema(m) => Failure::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Every quote file merged into one single-date set.
fn snapshot(cfg: &RunConfig) -> Result<QuoteSet, Failure> {
    let mut set = QuoteSet::new();
    for path in &cfg.quotes {
        for q in rows(path)? {
            if let Some(d) = cfg.asof {
                if q.asof != d {
                    return Err(Failure::Config(format!(
                        "{}: {} is dated {}, run is as of {d}",
                        path.display(),
                        q.id(),
                        q.asof
                    )));
                }
            }
            set.insert(q).map_err(|e| Failure::from(e).context(path))?;
        }
    }
    if set.is_empty() {
        return Err(Failure::Schema("no quotes loaded".into()));
    }
    Ok(set)
}

/// Quote files grouped by date, up to the as-of date when one is given.
fn history(cfg: &RunConfig) -> Result<BTreeMap<CivilDate, QuoteSet>, Failure> {
    let mut by_date: BTreeMap<CivilDate, QuoteSet> = BTreeMap::new();
    for path in &cfg.quotes {
        for q in rows(path)? {
            if cfg.asof.is_some_and(|d| q.asof > d) {
                continue;
            }
            by_date.entry(q.asof).or_default().insert(q).map_err(|e| Failure::from(e).context(path))?;
        }
    }
    Ok(by_date)
}

impl Failure {
    fn context(self, path: &Path) -> Self {
        match self {
            Failure::Schema(m) => Failure::Schema(format!("{}: {m}", path.display())),
            Failure::Config(m) => Failure::Config(format!("{}: {m}", path.display())),
            other => other,
        }
    }
}

fn tenor_label(t: Tenor) -> String {
    match t.in_months() {
        _ if t.is_overnight() => "ON".into(),
        Some(m) => format!("{m}M"),
        None => t.to_string(),
    }
}

/// Fixed decimals without a negative zero.
fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Forward tenors quoted in the set: FRA and swap rows not on ON.
fn quoted_tenors(q: &QuoteSet) -> Vec<Tenor> {
    let set: BTreeSet<Tenor> = q
        .iter()
        .filter(|x| matches!(x.kind, QuoteKind::Fra | QuoteKind::Swap))
        .filter_map(|x| x.tenor)
        .filter(|t| !t.is_overnight())
        .collect();
    set.into_iter().collect()
}

fn curves(cfg: &RunConfig, q: &QuoteSet, tenors: &[Tenor]) -> Result<CurveSet, Failure> {
    Ok(CurveSet::bootstrap(q, &cfg.conventions, tenors)?)
}

fn bootstrap(cfg: &RunConfig) -> Result<Vec<String>, Failure> {
    let q = snapshot(cfg)?;
    let tenors = cfg.tenors.clone().unwrap_or_else(|| quoted_tenors(&q));
    let set = curves(cfg, &q, &tenors)?;
    write_file(cfg, "curve_discount.csv", |w| Ok(write_curve(set.discount(), w)?))?;
    for t in set.tenors() {
        let curve = set.forwarding(t)?;
        write_file(cfg, &format!("curve_forward_{}.csv", tenor_label(t)), |w| Ok(write_curve(curve, w)?))?;
    }
    Ok(Vec::new())
}

fn replicate_fra(cfg: &RunConfig) -> Result<Vec<String>, Failure> {
    let q = snapshot(cfg)?;
    let report = replication_report(&q, &cfg.conventions);
    write_file(cfg, "fra_replication.csv", |w| Ok(report.write_csv(w)?))?;
    Ok(report.errors.iter().map(|(key, tenor, e)| format!("FRA {key} ({}): {e}", tenor_label(*tenor))).collect())
}

fn basis_matrix(cfg: &RunConfig) -> Result<Vec<String>, Failure> {
    let q = snapshot(cfg)?;
    let needed: BTreeSet<Tenor> =
        cfg.pairs.iter().flat_map(|&(s, l)| [s, l]).filter(|t| !t.is_overnight()).collect();
    let tenors: Vec<Tenor> = needed.into_iter().collect();
    let set = curves(cfg, &q, &tenors)?;
    let m = BasisMatrix::compute(&cfg.maturities, &cfg.pairs, &set, &cfg.conventions);
    write_file(cfg, "basis_matrix.csv", |w| Ok(m.write_csv(w)?))?;
    Ok(m.errors
        .iter()
        .map(|(mat, (s, l), e)| format!("{} vs {} at {mat}: {e}", tenor_label(*s), tenor_label(*l)))
        .collect())
}

fn sweep(cfg: &RunConfig) -> Result<Vec<String>, Failure> {
    let rows = credit_sweep(&cfg.lgd, &cfg.q, &cfg.periods)?;
    write_file(cfg, "credit_sweep.csv", |w| Ok(write_sweep_csv(&rows, w)?))?;
    Ok(Vec::new())
}

#[derive(Debug, serde::Deserialize)]
struct DealRow {
    date: String,
    npv: f64,
    rc_fixing_pct: f64,
}

fn csa_sim(cfg: &RunConfig) -> Result<Vec<String>, Failure> {
    let path = cfg.deal.as_deref().expect("checked by RunConfig::inputs");
    let file = File::open(path).map_err(|e| Failure::MissingFile(format!("{}: {e}", path.display())))?;
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(file);
    let mut npv = Vec::new();
    let mut fixings = Vec::new();
    for (i, rec) in rdr.deserialize::<DealRow>().enumerate() {
        let at = |m: String| Failure::Schema(format!("{} row {}: {m}", path.display(), i + 1));
        let r = rec.map_err(|e| at(e.to_string()))?;
        let d: CivilDate = r.date.parse().map_err(|e: multicurve::Error| at(e.to_string()))?;
        npv.push((d, r.npv));
        fixings.push((d, r.rc_fixing_pct / 100.0));
    }
    let acct = simulate_margination(&npv, &fixings, cfg.csa_day_count)?;
    let curve = collateral_curve(&fixings, cfg.csa_day_count)?;
    let (t0, _) = npv[0];
    let (tn, last) = *npv.last().unwrap();
    let csa_pv = csa_discount_pv(last, tn, t0, &curve)?;
    let terminal = acct.collateral_discounts().last().copied().unwrap_or(1.0) * last;
    write_file(cfg, "csa_ledger.csv", |w| Ok(acct.write_csv(w)?))?;
    write_file(cfg, "csa_summary.csv", |w| {
        writeln!(w, "initial_margin,csa_pv_final_npv,discounted_transfers,discounted_final_npv")?;
        writeln!(
            w,
            "{},{},{},{}",
            fixed(acct.initial_margin(), 6),
            fixed(csa_pv, 6),
            fixed(acct.discounted_transfers(), 6),
            fixed(terminal, 6)
        )?;
        Ok(())
    })?;
    Ok(Vec::new())
}

fn indices(cfg: &RunConfig) -> Result<Vec<String>, Failure> {
    let by_date = history(cfg)?;
    let mut errors = Vec::new();
    let mut cds = Vec::new();
    let mut liquidity = Vec::new();
    let mut corridor = Vec::new();
    for (date, q) in &by_date {
        if q.of_kind(QuoteKind::Cds).next().is_some() {
            match trimmed_mean_index(&PanelQuotes::from_quotes(q), cfg.tail_fraction) {
                Ok(p) => cds.push(p),
                Err(e) => errors.push(format!("CDS index {date}: {e}")),
            }
        }
        if q.of_kind(QuoteKind::EcbFacility).next().is_some() {
            let snap = match EcbSnapshot::from_quotes(q) {
                Ok(s) => s,
                Err(e) => {
                    errors.push(format!("ECB {date}: {e}"));
                    continue;
                }
            };
            liquidity.push(liquidity_surplus_index(&snap));
            let any_rate =
                snap.deposit_facility_rate.is_some() || snap.marginal_lending_rate.is_some() || snap.eonia_fixing.is_some();
            if any_rate {
                match corridor_check(&snap) {
                    Ok(c) => corridor.push(c),
                    Err(e) => errors.push(format!("corridor {date}: {e}")),
                }
            }
        }
    }
    write_file(cfg, "cds_index.csv", |w| Ok(write_index_csv(&cds, w)?))?;
    write_file(cfg, "liquidity_index.csv", |w| Ok(write_index_csv(&liquidity, w)?))?;
    let series: Vec<(CivilDate, f64)> = liquidity.iter().filter_map(|p| p.date.map(|d| (d, p.value))).collect();
    let ma = if series.is_empty() { Vec::new() } else { moving_average(&series, cfg.window)? };
    write_file(cfg, "liquidity_moving_average.csv", |w| {
        writeln!(w, "date,value")?;
        for (d, v) in &ma {
            writeln!(w, "{d},{v}")?;
        }
        Ok(())
    })?;
    write_file(cfg, "corridor.csv", |w| {
        writeln!(w, "date,inside,detail")?;
        for c in &corridor {
            writeln!(w, "{},{},{}", c.date, c.inside, c.detail.as_deref().unwrap_or("").replace(',', ";"))?;
        }
        Ok(())
    })?;
    Ok(errors)
}

fn vol_convert(cfg: &RunConfig) -> Result<Vec<String>, Failure> {
    let path = cfg.grid.as_deref().expect("checked by RunConfig::inputs");
    let file = File::open(path).map_err(|e| Failure::MissingFile(format!("{}: {e}", path.display())))?;
    let grid = read_grid(file).map_err(|e| Failure::from(e).context(path))?;
    if grid.kind != GridKind::ForwardPremium {
        return Err(Failure::Schema(format!("{}: expected kind=forward_premium, got {}", path.display(), grid.kind)));
    }
    let q = snapshot(cfg)?;
    let set = curves(cfg, &q, &[cfg.float_tenor])?;
    let fwd = set.forwarding(cfg.float_tenor)?;
    let eonia = set.discount();
    let euribor = fwd.with_role(CurveRole::Discounting);

    let mut errors = Vec::new();
    for (name, disc) in [("eonia", eonia), ("euribor", &euribor)] {
        let out = convert_grid_cells(&grid, cfg.float_tenor, fwd, disc, &cfg.conventions)?;
        write_file(cfg, &format!("spot_premia_{name}.csv"), |w| Ok(write_grid(&out.spot, w)?))?;
        write_file(cfg, &format!("implied_vols_{name}.csv"), |w| Ok(write_grid(&out.vols, w)?))?;
        errors.extend(out.errors.iter().map(|(e, t, err)| format!("{name} {e}x{t}: {err}")));
    }
    Ok(errors)
}
