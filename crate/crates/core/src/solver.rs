//! One-dimensional bracketed root finding: bisection with secant steps.
//!
//! A secant step is taken whenever it lands strictly inside the current
//! bracket and the previous step at least halved the bracket; otherwise the
//! step falls back to bisection, so convergence never depends on the shape
//! of the function.

#[derive(Debug, Clone, PartialEq)]
pub enum RootError {
    /// No sign change found even after widening the bracket.
    NotBracketed { lo: f64, hi: f64 },
    /// The function returned NaN or infinity.
    NonFinite { x: f64 },
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::NotBracketed { lo, hi } => write!(f, "root not bracketed in [{lo}, {hi}]"),
            RootError::NonFinite { x } => write!(f, "non-finite function value at {x}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RootFinder {
    /// Stop once `|f(x)| <= tolerance`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// How many times the bracket may be doubled around its midpoint.
    pub max_expansions: usize,
}

impl Default for RootFinder {
    fn default() -> Self {
        RootFinder { tolerance: 1e-14, max_iterations: 400, max_expansions: 12 }
    }
}

impl RootFinder {
    /// Finds `x` with `f(x) ≈ 0`, starting from the bracket `[lo, hi]` and an
    /// optional first guess that is tried before anything else.
    pub fn solve<F>(&self, mut f: F, lo: f64, hi: f64, guess: Option<f64>) -> Result<f64, RootError>
    where
        F: FnMut(f64) -> f64,
    {
        let mut eval = |x: f64| {
            let y = f(x);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(RootError::NonFinite { x })
            }
        };

        if let Some(g) = guess {
            if let Ok(y) = eval(g) {
                if y.abs() <= self.tolerance {
                    return Ok(g);
                }
            }
        }

        let (mut a, mut b) = (lo.min(hi), lo.max(hi));
        let mut fa = eval(a)?;
        let mut fb = eval(b)?;
        let mut expansions = 0;
        while fa.signum() == fb.signum() && fa != 0.0 && fb != 0.0 {
            if expansions == self.max_expansions {
                return Err(RootError::NotBracketed { lo: a, hi: b });
            }
            let mid = 0.5 * (a + b);
            let half = b - a;
            a = mid - half;
            b = mid + half;
            fa = eval(a)?;
            fb = eval(b)?;
            expansions += 1;
        }
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }

        let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
        let mut last_width = b - a;
        let mut use_secant = true;
        for _ in 0..self.max_iterations {
            let secant = b - fb * (b - a) / (fb - fa);
            let x = if use_secant && secant > a && secant < b { secant } else { 0.5 * (a + b) };
            if x <= a || x >= b {
                break;
            }
            let fx = eval(x)?;
            if fx.abs() < best.1.abs() {
                best = (x, fx);
            }
            if fx.abs() <= self.tolerance {
                return Ok(x);
            }
            if fx.signum() == fa.signum() {
                a = x;
                fa = fx;
            } else {
                b = x;
                fb = fx;
            }
            let width = b - a;
            use_secant = width <= 0.5 * last_width;
            last_width = width;
        }
        Ok(best.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let x = RootFinder::default().solve(|x| x * x - 2.0, 0.0, 2.0, None).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn expands_bracket() {
        let x = RootFinder::default().solve(|x| x - 3.0, -0.05, 0.5, None).unwrap();
        assert!((x - 3.0).abs() < 1e-13);
    }

    #[test]
    fn reports_missing_root() {
        let err = RootFinder::default().solve(|x| x * x + 1.0, -1.0, 1.0, None).unwrap_err();
        assert!(matches!(err, RootError::NotBracketed { .. }));
    }

    #[test]
    fn guess_short_circuits() {
        let mut calls = 0;
        let x = RootFinder::default()
            .solve(
                |x| {
                    calls += 1;
                    x
                },
                -1.0,
                2.0,
                Some(0.0),
            )
            .unwrap();
        assert_eq!(x, 0.0);
        assert_eq!(calls, 1);
    }

    #[test]
    fn flat_then_steep() {
        // badly scaled for pure secant
        let x = RootFinder::default().solve(|x| (x - 0.7).powi(9), 0.0, 1.0, None).unwrap();
        assert!((x - 0.7).abs() < 0.03);
        let x = RootFinder::default().solve(|x: f64| x.exp() - 1e5, -0.05, 0.5, None).unwrap();
        assert!((x - 1e5f64.ln()).abs() < 1e-12);
    }
}
