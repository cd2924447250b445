use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::temporal::{parse_fra_key, CivilDate, Tenor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuoteKind {
    Deposit,
    Fra,
    Ois,
    Swap,
    BasisSwap,
    Cds,
    EcbFacility,
}

impl QuoteKind {
    /// CSV `kind` column token.
    pub fn code(self) -> &'static str {
        match self {
            QuoteKind::Deposit => "DEPO",
            QuoteKind::Fra => "FRA",
            QuoteKind::Ois => "OIS",
            QuoteKind::Swap => "SWAP",
            QuoteKind::BasisSwap => "BASIS",
            QuoteKind::Cds => "CDS",
            QuoteKind::EcbFacility => "ECB",
        }
    }
}

impl fmt::Display for QuoteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for QuoteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "DEPO" => Ok(QuoteKind::Deposit),
            "FRA" => Ok(QuoteKind::Fra),
            "OIS" => Ok(QuoteKind::Ois),
            "SWAP" => Ok(QuoteKind::Swap),
            "BASIS" => Ok(QuoteKind::BasisSwap),
            "CDS" => Ok(QuoteKind::Cds),
            "ECB" => Ok(QuoteKind::EcbFacility),
            other => Err(Error::Configuration(format!("unknown quote kind {other}"))),
        }
    }
}

/// Fields carried by `ECB` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EcbField {
    DepositFacilityAmount,
    CurrentAccount,
    RequiredReserves,
    EoniaVolume,
    DepositFacilityRate,
    MarginalLendingRate,
    EoniaFixing,
}

impl EcbField {
    pub const ALL: [EcbField; 7] = [
        EcbField::DepositFacilityAmount,
        EcbField::CurrentAccount,
        EcbField::RequiredReserves,
        EcbField::EoniaVolume,
        EcbField::DepositFacilityRate,
        EcbField::MarginalLendingRate,
        EcbField::EoniaFixing,
    ];

    pub fn key(self) -> &'static str {
        match self {
            EcbField::DepositFacilityAmount => "DEPOSIT_FACILITY",
            EcbField::CurrentAccount => "CURRENT_ACCOUNT",
            EcbField::RequiredReserves => "REQUIRED_RESERVES",
            EcbField::EoniaVolume => "EONIA_VOLUME",
            EcbField::DepositFacilityRate => "DEPOSIT_FACILITY_RATE",
            EcbField::MarginalLendingRate => "MARGINAL_LENDING_RATE",
            EcbField::EoniaFixing => "EONIA",
        }
    }

    /// Amounts are EUR (EUR millions in files); everything else is a rate.
    pub fn is_amount(self) -> bool {
        matches!(
            self,
            EcbField::DepositFacilityAmount
                | EcbField::CurrentAccount
                | EcbField::RequiredReserves
                | EcbField::EoniaVolume
        )
    }

    pub fn from_key(key: &str) -> Option<Self> {
        let k = key.trim().to_ascii_uppercase();
        Self::ALL.into_iter().find(|f| f.key() == k)
    }
}

/// Identity of a quote inside a [`QuoteSet`]: kind, key and underlying tenor.
///
/// The tenor is part of the identity so an Eonia FRA `1Mx4M` (tenor `ON`)
/// and a Euribor FRA `1Mx4M` (tenor `3M`) can coexist.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstrumentId {
    pub kind: QuoteKind,
    pub key: String,
    pub tenor: Option<Tenor>,
}

impl InstrumentId {
    pub fn new(kind: QuoteKind, key: &str, tenor: Option<Tenor>) -> Self {
        InstrumentId { kind, key: normalize_key(kind, key), tenor }
    }
}

impl fmt::Display for InstrumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.kind, self.key)?;
        if let Some(t) = self.tenor {
            write!(f, " ({t})")?;
        }
        Ok(())
    }
}

/// Upper-case keys, except the FRA separator which stays `x` (`6Mx12M`).
fn normalize_key(kind: QuoteKind, key: &str) -> String {
    let upper = key.trim().to_ascii_uppercase();
    if kind == QuoteKind::Fra {
        upper.replace('X', "x")
    } else {
        upper
    }
}

/// One market quote. Rates are decimal fractions (0.0156 for 1.560%),
/// ECB amounts are EUR.
#[derive(Debug, Clone, PartialEq)]
pub struct Quote {
    pub kind: QuoteKind,
    pub key: String,
    pub value: f64,
    pub tenor: Option<Tenor>,
    pub asof: CivilDate,
}

impl Quote {
    pub fn new(kind: QuoteKind, key: &str, value: f64, tenor: Option<Tenor>, asof: CivilDate) -> Result<Self> {
        let q = Quote { kind, key: normalize_key(kind, key), value, tenor, asof };
        q.check()?;
        Ok(q)
    }

    pub fn id(&self) -> InstrumentId {
        InstrumentId { kind: self.kind, key: self.key.clone(), tenor: self.tenor }
    }

    pub fn is_amount(&self) -> bool {
        self.kind == QuoteKind::EcbFacility
            && EcbField::from_key(&self.key).is_some_and(EcbField::is_amount)
    }

    /// Maturity tenor for deposits, OIS and swaps (`key` read as a tenor).
    pub fn maturity(&self) -> Result<Tenor> {
        self.key.parse()
    }

    /// `(start, end)` of an FRA key.
    pub fn fra_period(&self) -> Result<(Tenor, Tenor)> {
        parse_fra_key(&self.key)
    }

    fn check(&self) -> Result<()> {
        if !self.value.is_finite() {
            return Err(Error::Domain(format!("{}: non-finite value", self.id())));
        }
        match self.kind {
            QuoteKind::Deposit | QuoteKind::Ois | QuoteKind::Swap => {
                self.maturity()?;
            }
            QuoteKind::Fra => {
                self.fra_period()?;
            }
            QuoteKind::BasisSwap => {
                self.maturity()?;
                if self.tenor.is_none() {
                    return Err(Error::Domain(format!("{}: basis swap needs a tenor pair", self.id())));
                }
            }
            QuoteKind::EcbFacility => {
                let field = EcbField::from_key(&self.key)
                    .ok_or_else(|| Error::Domain(format!("unknown ECB field {}", self.key)))?;
                if field.is_amount() && self.value < 0.0 {
                    return Err(Error::Domain(format!("{}: negative amount", self.id())));
                }
            }
            QuoteKind::Cds => {}
        }
        Ok(())
    }
}

/// Validated quotes for a single as-of date, one per [`InstrumentId`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuoteSet {
    asof: Option<CivilDate>,
    quotes: BTreeMap<InstrumentId, Quote>,
}

impl QuoteSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn asof(&self) -> Option<CivilDate> {
        self.asof
    }

    pub fn len(&self) -> usize {
        self.quotes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotes.is_empty()
    }

    pub fn insert(&mut self, quote: Quote) -> Result<()> {
        match self.asof {
            Some(d) if d != quote.asof => {
                return Err(Error::Configuration(format!(
                    "{} is dated {}, set is dated {d}",
                    quote.id(),
                    quote.asof
                )))
            }
            _ => self.asof = Some(quote.asof),
        }
        let id = quote.id();
        if self.quotes.contains_key(&id) {
            return Err(Error::Duplicate(id.to_string()));
        }
        self.quotes.insert(id, quote);
        Ok(())
    }

    pub fn get(&self, id: &InstrumentId) -> Option<&Quote> {
        self.quotes.get(id)
    }

    pub fn contains(&self, id: &InstrumentId) -> bool {
        self.quotes.contains_key(id)
    }

    /// Rate lookup by kind and key, ignoring the tenor column.
    pub fn find(&self, kind: QuoteKind, key: &str) -> Option<&Quote> {
        let key = normalize_key(kind, key);
        self.of_kind(kind).find(|q| q.key == key)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quote> {
        self.quotes.values()
    }

    pub fn of_kind(&self, kind: QuoteKind) -> impl Iterator<Item = &Quote> {
        self.quotes.values().filter(move |q| q.kind == kind)
    }

    /// Quotes of `kind` whose key parses as a maturity tenor, sorted by it.
    pub fn strip(&self, kind: QuoteKind) -> Vec<(Tenor, &Quote)> {
        let mut v: Vec<(Tenor, &Quote)> =
            self.of_kind(kind).filter_map(|q| q.maturity().ok().map(|t| (t, q))).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.key.cmp(&b.1.key)));
        v
    }

    /// First quote of `kind` whose key is the tenor `maturity` (so `12M`
    /// matches `1Y`).
    pub fn by_maturity(&self, kind: QuoteKind, maturity: Tenor) -> Option<&Quote> {
        self.of_kind(kind).find(|q| q.maturity().ok() == Some(maturity))
    }
}

impl FromIterator<Quote> for Result<QuoteSet> {
    fn from_iter<I: IntoIterator<Item = Quote>>(iter: I) -> Self {
        let mut set = QuoteSet::new();
        for q in iter {
            set.insert(q)?;
        }
        Ok(set)
    }
}
