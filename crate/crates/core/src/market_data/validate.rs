use std::fmt;

use super::{InstrumentId, QuoteKind, QuoteSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FindingCode {
    /// A rate below the configured floor.
    RateBelowFloor,
    /// Deposit rates that do not increase with maturity.
    NonMonotoneDeposits,
    /// An instrument a recipe needs is absent.
    MissingInstrument,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub severity: Severity,
    pub code: FindingCode,
    pub instrument: Option<InstrumentId>,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{sev}: {}", self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Warning)
    }

    pub fn is_ok(&self) -> bool {
        self.errors().next().is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationConfig {
    /// Lowest admissible rate, as a fraction. Default −100%.
    pub rate_floor: f64,
    /// Instruments that must be present, typically a recipe's instrument list.
    pub required: Vec<InstrumentId>,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig { rate_floor: -1.0, required: Vec::new() }
    }
}

impl ValidationConfig {
    pub fn requiring(mut self, ids: impl IntoIterator<Item = InstrumentId>) -> Self {
        self.required.extend(ids);
        self
    }
}

/// Checks a quote set. Never fails; problems are reported as findings.
pub fn validate_quotes(q: &QuoteSet, cfg: &ValidationConfig) -> ValidationReport {
    let mut findings = Vec::new();

    for quote in q.iter() {
        let is_rate = !matches!(quote.kind, QuoteKind::EcbFacility | QuoteKind::BasisSwap | QuoteKind::Cds)
            || (quote.kind == QuoteKind::EcbFacility && !quote.is_amount());
        if is_rate && quote.value < cfg.rate_floor {
            findings.push(Finding {
                severity: Severity::Error,
                code: FindingCode::RateBelowFloor,
                instrument: Some(quote.id()),
                message: format!(
                    "{} at {:.4}% is below the floor {:.4}%",
                    quote.id(),
                    quote.value * 100.0,
                    cfg.rate_floor * 100.0
                ),
            });
        }
    }

    let deposits = q.strip(QuoteKind::Deposit);
    for pair in deposits.windows(2) {
        let (t0, a) = pair[0];
        let (t1, b) = pair[1];
        if b.value < a.value {
            findings.push(Finding {
                severity: Severity::Warning,
                code: FindingCode::NonMonotoneDeposits,
                instrument: Some(b.id()),
                message: format!(
                    "deposit {t1} at {:.4}% is below deposit {t0} at {:.4}%",
                    b.value * 100.0,
                    a.value * 100.0
                ),
            });
        }
    }

    for id in &cfg.required {
        if !q.contains(id) {
            findings.push(Finding {
                severity: Severity::Error,
                code: FindingCode::MissingInstrument,
                instrument: Some(id.clone()),
                message: format!("missing instrument {id}"),
            });
        }
    }

    ValidationReport { findings }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market_data::load_quotes;

    const EONIA_STRIP: &str = "kind,key,value,tenor,asof\n\
        OIS,1M,0.396,,2011-12-30\nOIS,2M,0.394,,2011-12-30\nOIS,3M,0.391,,2011-12-30\n\
        OIS,4M,0.386,,2011-12-30\nOIS,5M,0.380,,2011-12-30\nOIS,6M,0.381,,2011-12-30\n\
        OIS,12M,0.376,,2011-12-30\n";

    #[test]
    fn eonia_strip_is_clean() {
        let q = load_quotes(EONIA_STRIP.as_bytes()).unwrap();
        let report = validate_quotes(&q, &ValidationConfig::default());
        assert_eq!(report.errors().count(), 0);
    }

    #[test]
    fn missing_recipe_instrument() {
        let without_12m: String = EONIA_STRIP.lines().filter(|l| !l.starts_with("OIS,12M")).map(|l| format!("{l}\n")).collect();
        let q = load_quotes(without_12m.as_bytes()).unwrap();
        let cfg = ValidationConfig::default().requiring([
            InstrumentId::new(QuoteKind::Ois, "6M", None),
            InstrumentId::new(QuoteKind::Ois, "12M", None),
        ]);
        let report = validate_quotes(&q, &cfg);
        let errors: Vec<_> = report.errors().collect();
        assert_eq!(errors.len(), 1);
        assert_eq!(errors[0].code, FindingCode::MissingInstrument);
    }

    #[test]
    fn rate_floor() {
        let csv = "kind,key,value,tenor,asof\nDEPO,6M,-150,,2011-12-30\n";
        let q = load_quotes(csv.as_bytes()).unwrap();
        let report = validate_quotes(&q, &ValidationConfig { rate_floor: -1.0, required: vec![] });
        let errors: Vec<_> = report.errors().collect();
        assert_eq!(errors.len(), 1);
        assert_eq!(errors[0].code, FindingCode::RateBelowFloor);
        // negative but above the floor is fine
        let csv = "kind,key,value,tenor,asof\nDEPO,6M,-0.5,,2011-12-30\n";
        assert!(validate_quotes(&load_quotes(csv.as_bytes()).unwrap(), &ValidationConfig::default()).is_ok());
    }

    #[test]
    fn inverted_deposits_only_warn() {
        let csv = "kind,key,value,tenor,asof\nDEPO,12M,1.90,,2011-12-30\nDEPO,18M,1.86,,2011-12-30\n";
        let report = validate_quotes(&load_quotes(csv.as_bytes()).unwrap(), &ValidationConfig::default());
        assert!(report.is_ok());
        assert_eq!(report.warnings().count(), 1);
    }
}
