use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::replication::fixed;
use crate::temporal::Tenor;

/// Grid premia are quoted in cents per 100 notional, i.e. 1e-4 of notional.
pub const PREMIUM_UNIT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    ForwardPremium,
    SpotPremium,
    Volatility,
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridKind::ForwardPremium => "forward_premium",
            GridKind::SpotPremium => "spot_premium",
            GridKind::Volatility => "volatility",
        })
    }
}

impl FromStr for GridKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "forward_premium" => Ok(GridKind::ForwardPremium),
            "spot_premium" => Ok(GridKind::SpotPremium),
            "volatility" | "vol" => Ok(GridKind::Volatility),
            other => Err(Error::Parse { line: 1, message: format!("unknown grid kind '{other}'") }),
        }
    }
}

/// Expiry x swap-tenor surface. Premia are fractions of notional, vols are
/// fractions; files carry cents and percent.
#[derive(Debug, Clone, PartialEq)]
pub struct SwaptionGrid {
    pub kind: GridKind,
    pub expiries: Vec<Tenor>,
    pub tenors: Vec<Tenor>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl SwaptionGrid {
    /// Same axes, no values.
    pub fn with_kind(&self, kind: GridKind) -> Self {
        SwaptionGrid {
            kind,
            expiries: self.expiries.clone(),
            tenors: self.tenors.clone(),
            values: vec![vec![None; self.tenors.len()]; self.expiries.len()],
        }
    }

    pub fn get(&self, expiry: Tenor, tenor: Tenor) -> Option<f64> {
        let i = self.expiries.iter().position(|e| *e == expiry)?;
        let j = self.tenors.iter().position(|t| *t == tenor)?;
        self.values[i][j]
    }

    fn file_scale(&self) -> f64 {
        match self.kind {
            GridKind::Volatility => 100.0,
            _ => 1.0 / PREMIUM_UNIT,
        }
    }
}

/// `# kind=<kind>`, then `expiry,<tenor>,...`, then one row per expiry.
/// Empty cells are missing quotes.
pub fn read_grid<R: Read>(source: R) -> Result<SwaptionGrid> {
    let mut kind = None;
    let mut tenors: Option<Vec<Tenor>> = None;
    let mut expiries = Vec::new();
    let mut values = Vec::new();
    for (i, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        let at = |message: String| Error::Parse { line: i + 1, message };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(k) = comment.trim().strip_prefix("kind=") {
                kind = Some(k.parse::<GridKind>().map_err(|e| at(e.to_string()))?);
            }
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        match &tenors {
            None => {
                if !cells[0].eq_ignore_ascii_case("expiry") {
                    return Err(at(format!("expected header starting with 'expiry', got '{line}'")));
                }
                let ts = cells[1..].iter().map(|c| c.parse::<Tenor>()).collect::<Result<Vec<_>>>();
                tenors = Some(ts.map_err(|e| at(e.to_string()))?);
            }
            Some(ts) => {
                if cells.len() != ts.len() + 1 {
                    return Err(at(format!("{} cells, expected {}", cells.len(), ts.len() + 1)));
                }
                expiries.push(cells[0].parse::<Tenor>().map_err(|e| at(e.to_string()))?);
                let row = cells[1..]
                    .iter()
                    .map(|c| match *c {
                        "" => Ok(None),
                        c => c.parse::<f64>().map(Some).map_err(|_| at(format!("bad value '{c}'"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                values.push(row);
            }
        }
    }
    let kind = kind.ok_or_else(|| Error::Parse { line: 1, message: "missing '# kind=' line".into() })?;
    let tenors = tenors.ok_or_else(|| Error::Parse { line: 1, message: "missing header row".into() })?;
    let mut grid = SwaptionGrid { kind, expiries, tenors, values };
    let scale = grid.file_scale();
    for row in &mut grid.values {
        for v in row.iter_mut().flatten() {
            *v /= scale;
        }
    }
    Ok(grid)
}

pub fn write_grid<W: Write>(grid: &SwaptionGrid, mut sink: W) -> Result<()> {
    let scale = grid.file_scale();
    let decimals = if grid.kind == GridKind::Volatility { 4 } else { 2 };
    writeln!(sink, "# kind={}", grid.kind)?;
    let header: Vec<String> = grid.tenors.iter().map(Tenor::to_string).collect();
    writeln!(sink, "expiry,{}", header.join(","))?;
    for (e, row) in grid.expiries.iter().zip(&grid.values) {
        let cells: Vec<String> = row.iter().map(|v| v.map(|x| fixed(x * scale, decimals)).unwrap_or_default()).collect();
        writeln!(sink, "{e},{}", cells.join(","))?;
    }
    Ok(())
}
