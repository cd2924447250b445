use std::collections::BTreeMap;

use super::{bootstrap_discount, bootstrap_forward, BootstrapRecipe, Curve, CurveRole};
use crate::error::{Error, Result};
use crate::market_data::QuoteSet;
use crate::temporal::{MarketConventions, Tenor};

/// A discount curve plus forwarding curves keyed by tenor.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSet {
    discount: Curve,
    forwards: BTreeMap<Tenor, Curve>,
}

impl CurveSet {
    pub fn new(discount: Curve) -> Result<Self> {
        if discount.role() != CurveRole::Discounting {
            return Err(Error::Configuration(format!("curve role {} cannot discount", discount.role())));
        }
        Ok(CurveSet { discount, forwards: BTreeMap::new() })
    }

    pub fn with_forward(mut self, curve: Curve) -> Result<Self> {
        match curve.role() {
            CurveRole::Forwarding(t) => {
                self.forwards.insert(t, curve);
                Ok(self)
            }
            CurveRole::Discounting => Err(Error::Configuration("a forwarding slot needs a forwarding curve".into())),
        }
    }

    /// OIS discount curve plus one forwarding curve per tenor, all from `q`.
    pub fn bootstrap(q: &QuoteSet, conv: &MarketConventions, tenors: &[Tenor]) -> Result<Self> {
        let discount = bootstrap_discount(q, &BootstrapRecipe::ois(q, conv.clone()))?;
        let mut set = CurveSet::new(discount)?;
        for &t in tenors {
            let recipe = BootstrapRecipe::forward(t, q, conv.clone());
            let fwd = bootstrap_forward(t, q, &set.discount, &recipe)?;
            set.forwards.insert(t, fwd);
        }
        Ok(set)
    }

    pub fn discount(&self) -> &Curve {
        &self.discount
    }

    /// Forwarding curve for `tenor`; overnight falls back to the discount curve.
    pub fn forwarding(&self, tenor: Tenor) -> Result<&Curve> {
        if let Some(c) = self.forwards.get(&tenor) {
            return Ok(c);
        }
        if tenor.is_overnight() {
            return Ok(&self.discount);
        }
        Err(Error::Configuration(format!("no forwarding curve for tenor {tenor}")))
    }

    pub fn tenors(&self) -> impl Iterator<Item = Tenor> + '_ {
        self.forwards.keys().copied()
    }
}
