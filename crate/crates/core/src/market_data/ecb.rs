use super::{EcbField, QuoteKind, QuoteSet};
use crate::error::{Error, Result};
use crate::temporal::CivilDate;

/// One day of ECB standing-facility and reserve data.
///
/// Amounts are EUR. Rates are fractions and optional: the corridor check
/// needs them, the liquidity index does not.
#[derive(Debug, Clone, PartialEq)]
pub struct EcbSnapshot {
    pub date: CivilDate,
    pub deposit_facility_amount: f64,
    pub current_account_amount: f64,
    pub required_reserves: f64,
    pub eonia_volume: Option<f64>,
    pub deposit_facility_rate: Option<f64>,
    pub marginal_lending_rate: Option<f64>,
    pub eonia_fixing: Option<f64>,
}

impl EcbSnapshot {
    pub fn new(
        date: CivilDate,
        deposit_facility_amount: f64,
        current_account_amount: f64,
        required_reserves: f64,
    ) -> Result<Self> {
        let s = EcbSnapshot {
            date,
            deposit_facility_amount,
            current_account_amount,
            required_reserves,
            eonia_volume: None,
            deposit_facility_rate: None,
            marginal_lending_rate: None,
            eonia_fixing: None,
        };
        s.check()?;
        Ok(s)
    }

    pub fn with_rates(mut self, deposit_facility: f64, eonia: f64, marginal_lending: f64) -> Result<Self> {
        self.deposit_facility_rate = Some(deposit_facility);
        self.eonia_fixing = Some(eonia);
        self.marginal_lending_rate = Some(marginal_lending);
        self.check()?;
        Ok(self)
    }

    /// Assembles a snapshot from the `ECB` rows of a quote set.
    pub fn from_quotes(q: &QuoteSet) -> Result<Self> {
        let date = q.asof().ok_or_else(|| Error::MissingQuote("empty quote set".into()))?;
        let get = |f: EcbField| q.find(QuoteKind::EcbFacility, f.key()).map(|x| x.value);
        let need = |f: EcbField| get(f).ok_or_else(|| Error::MissingQuote(format!("ECB,{} on {date}", f.key())));
        let s = EcbSnapshot {
            date,
            deposit_facility_amount: need(EcbField::DepositFacilityAmount)?,
            current_account_amount: need(EcbField::CurrentAccount)?,
            required_reserves: need(EcbField::RequiredReserves)?,
            eonia_volume: get(EcbField::EoniaVolume),
            deposit_facility_rate: get(EcbField::DepositFacilityRate),
            marginal_lending_rate: get(EcbField::MarginalLendingRate),
            eonia_fixing: get(EcbField::EoniaFixing),
        };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        let amounts = [
            self.deposit_facility_amount,
            self.current_account_amount,
            self.required_reserves,
            self.eonia_volume.unwrap_or(0.0),
        ];
        if amounts.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::Domain(format!("ECB amounts on {} must be finite and >= 0", self.date)));
        }
        if let (Some(df), Some(ml)) = (self.deposit_facility_rate, self.marginal_lending_rate) {
            if ml < df {
                return Err(Error::Domain(format!(
                    "marginal lending rate below deposit facility rate on {}",
                    self.date
                )));
            }
        }
        Ok(())
    }
}
