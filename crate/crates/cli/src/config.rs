use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use multicurve::temporal::{Adjustment, Calendar, CivilDate, DayCount, MarketConventions, Tenor};
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Bootstrap,
    ReplicateFra,
    BasisMatrix,
    CreditSweep,
    CsaSim,
    Indices,
    VolConvert,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().unwrap().get_name())
    }
}

/// The config file as written. Paths are relative to the file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: Option<Command>,
    asof: Option<String>,
    #[serde(default)]
    quotes: Vec<PathBuf>,
    out: Option<PathBuf>,
    #[serde(default)]
    conventions: ConventionBlock,
    #[serde(default)]
    bootstrap: BootstrapBlock,
    #[serde(default)]
    basis: BasisBlock,
    #[serde(default)]
    credit: CreditBlock,
    #[serde(default)]
    csa: CsaBlock,
    #[serde(default)]
    indices: IndicesBlock,
    #[serde(default)]
    vol: VolBlock,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConventionBlock {
    calendar: Option<String>,
    day_count: Option<String>,
    fixed_day_count: Option<String>,
    fixed_frequency: Option<String>,
    spot_lag: Option<u32>,
    adjustment: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BootstrapBlock {
    tenors: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisBlock {
    maturities: Option<Vec<String>>,
    pairs: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CreditBlock {
    lgd: Option<Vec<f64>>,
    q: Option<Vec<f64>>,
    /// `[P_d(T1), P_d(T2), tau]`
    periods: Option<Vec<[f64; 3]>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CsaBlock {
    deal: Option<PathBuf>,
    day_count: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndicesBlock {
    tail_fraction: Option<f64>,
    window: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct VolBlock {
    grid: Option<PathBuf>,
    float_tenor: Option<String>,
}

/// Flag values; any that are set win over the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub asof: Option<String>,
    pub quotes: Vec<PathBuf>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub asof: Option<CivilDate>,
    pub quotes: Vec<PathBuf>,
    pub out: PathBuf,
    pub conventions: MarketConventions,
    pub tenors: Option<Vec<Tenor>>,
    pub maturities: Vec<Tenor>,
    pub pairs: Vec<(Tenor, Tenor)>,
    pub lgd: Vec<f64>,
    pub q: Vec<f64>,
    pub periods: Vec<(f64, f64, f64)>,
    pub deal: Option<PathBuf>,
    pub csa_day_count: DayCount,
    pub tail_fraction: f64,
    pub window: usize,
    pub grid: Option<PathBuf>,
    pub float_tenor: Tenor,
}

fn parse<T: FromStr>(what: &str, s: &str) -> Result<T, Failure>
where
    T::Err: fmt::Display,
{
    s.parse().map_err(|e| Failure::Config(format!("{what} '{s}': {e}")))
}

fn tenors(what: &str, list: &[String]) -> Result<Vec<Tenor>, Failure> {
    list.iter().map(|s| parse(what, s)).collect()
}

const DEFAULT_MATURITIES: [&str; 5] = ["2Y", "3Y", "5Y", "7Y", "10Y"];
const DEFAULT_PAIRS: [(&str, &str); 4] = [("ON", "3M"), ("ON", "6M"), ("3M", "6M"), ("6M", "12M")];

impl RunConfig {
    pub fn load(path: Option<&Path>, flags: Overrides) -> Result<Self, Failure> {
        let (file, base) = match path {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| Failure::MissingFile(format!("{}: {e}", p.display())))?;
                let file: FileConfig =
                    toml::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
                (file, p.parent().map(Path::to_path_buf).unwrap_or_default())
            }
            None => (FileConfig::default(), PathBuf::new()),
        };
        let rel = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };

        let command = flags
            .command
            .or(file.command)
            .ok_or_else(|| Failure::Config("no command given (use --command or `command` in the config)".into()))?;
        let out = flags
            .out
            .or(file.out.map(rel))
            .ok_or_else(|| Failure::Config("no output directory given (use --out or `out` in the config)".into()))?;
        let asof = match flags.asof.or(file.asof) {
            Some(s) => Some(parse::<CivilDate>("as-of date", &s)?),
            None => None,
        };
        let quotes = if flags.quotes.is_empty() { file.quotes.into_iter().map(rel).collect() } else { flags.quotes };

        let mut conventions = MarketConventions::eur();
        let c = file.conventions;
        if let Some(s) = c.calendar {
            conventions.calendar = parse::<Calendar>("calendar", &s)?;
        }
        if let Some(s) = c.day_count {
            conventions.day_count = parse::<DayCount>("day count", &s)?;
        }
        if let Some(s) = c.fixed_day_count {
            conventions.fixed_day_count = parse::<DayCount>("fixed day count", &s)?;
        }
        if let Some(s) = c.fixed_frequency {
            conventions.fixed_frequency = parse::<Tenor>("fixed frequency", &s)?;
        }
        if let Some(n) = c.spot_lag {
            conventions.spot_lag = n;
        }
        if let Some(s) = c.adjustment {
            conventions.adjustment = parse::<Adjustment>("adjustment", &s)?;
        }

        let tenor_list = match file.bootstrap.tenors {
            Some(list) => Some(tenors("bootstrap tenor", &list)?),
            None => None,
        };
        let maturities = match file.basis.maturities {
            Some(list) => tenors("basis maturity", &list)?,
            None => DEFAULT_MATURITIES.iter().map(|s| s.parse().unwrap()).collect(),
        };
        let pairs = match file.basis.pairs {
            Some(list) => list
                .iter()
                .map(|[s, l]| Ok((parse("basis tenor", s)?, parse("basis tenor", l)?)))
                .collect::<Result<_, Failure>>()?,
            None => DEFAULT_PAIRS.iter().map(|(s, l)| (s.parse().unwrap(), l.parse().unwrap())).collect(),
        };

        let credit = file.credit;
        let lgd = credit.lgd.unwrap_or_else(|| vec![0.4, 0.6]);
        let q = credit.q.unwrap_or_else(|| vec![0.0, 0.01, 0.02, 0.05, 0.1, 0.2]);
        let periods = credit
            .periods
            .unwrap_or_else(|| vec![[0.99, 0.97, 0.5]])
            .into_iter()
            .map(|[a, b, t]| (a, b, t))
            .collect();

        let csa_day_count = match file.csa.day_count {
            Some(s) => parse("CSA day count", &s)?,
            None => DayCount::Act360,
        };
        let tail_fraction = file.indices.tail_fraction.unwrap_or(multicurve::risk_indices::TAIL_FRACTION);
        let window = file.indices.window.unwrap_or(20);
        let float_tenor = match file.vol.float_tenor {
            Some(s) => parse("float tenor", &s)?,
            None => Tenor::months(6),
        };

        Ok(RunConfig {
            command,
            asof,
            quotes,
            out,
            conventions,
            tenors: tenor_list,
            maturities,
            pairs,
            lgd,
            q,
            periods,
            deal: file.csa.deal.map(rel),
            csa_day_count,
            tail_fraction,
            window,
            grid: file.vol.grid.map(rel),
            float_tenor,
        })
    }

    /// Files the command will read; all must exist before anything runs.
    pub fn inputs(&self) -> Result<Vec<&Path>, Failure> {
        let mut files: Vec<&Path> = Vec::new();
        let needs_quotes = !matches!(self.command, Command::CreditSweep | Command::CsaSim);
        if needs_quotes {
            if self.quotes.is_empty() {
                return Err(Failure::Config(format!("{} needs at least one --quotes file", self.command)));
            }
            files.extend(self.quotes.iter().map(PathBuf::as_path));
        }
        match self.command {
            Command::CsaSim => {
                let deal = self.deal.as_deref().ok_or_else(|| Failure::Config("csa-sim needs [csa] deal".into()))?;
                files.push(deal);
            }
            Command::VolConvert => {
                let grid = self.grid.as_deref().ok_or_else(|| Failure::Config("vol-convert needs [vol] grid".into()))?;
                files.push(grid);
            }
            _ => {}
        }
        Ok(files)
    }
}
