//! Market quotes: CSV ingestion, the [`QuoteSet`] container, ECB snapshots
//! and quote validation.

mod csv_io;
mod ecb;
mod quote;
mod validate;

pub use csv_io::{exact_decimal, load_quote_history, load_quotes, read_quote_rows, write_quotes, QUOTE_HEADER};
pub use ecb::EcbSnapshot;
pub use quote::{EcbField, InstrumentId, Quote, QuoteKind, QuoteSet};
pub use validate::{validate_quotes, Finding, FindingCode, Severity, ValidationConfig, ValidationReport};
