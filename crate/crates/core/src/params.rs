//! Model parameters and the spectral regime they select.
//!
//! The constant potential `V1 = k` fixes a one-parameter family of complex
//! drivings. Depending on where `k` sits relative to the energy `E = 0` and
//! the factorization energy `-1`, the driving is a hyperbolic tangent
//! (`k >= -1`) or a trigonometric tangent (`k < -1`), and the amplitudes are
//! exponential (`k > 0`) or oscillatory (`k <= 0`).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The three driving families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `k > 0`: `f = kappa tanh[kappa (t + eta)]`, exponential amplitudes.
    Decaying,
    /// `-1 <= k <= 0`: `f = nu tanh[nu (t + eta)]`, oscillatory amplitudes.
    HyperbolicOscillatory,
    /// `k < -1`: `f = -epsilon tan[epsilon (t + eta)]`, oscillatory amplitudes.
    TrigonometricOscillatory,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Decaying => "decaying",
            Regime::HyperbolicOscillatory => "hyperbolic-oscillatory",
            Regime::TrigonometricOscillatory => "trigonometric-oscillatory",
        }
    }

    /// Symbol of the regime constant (`kappa`, `nu` or `epsilon`).
    pub fn constant_symbol(self) -> &'static str {
        match self {
            Regime::Decaying => "kappa",
            Regime::HyperbolicOscillatory => "nu",
            Regime::TrigonometricOscillatory => "epsilon",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Classify `k` into its driving regime.
///
/// Both boundaries `k = 0` and `k = -1` belong to the hyperbolic regime; at
/// `k = -1` the regime constant vanishes and the driving is identically zero.
pub fn classify_regime(k: f64) -> Result<Regime> {
    if !k.is_finite() {
        return Err(Error::invalid("k", format!("must be finite, got {k}")));
    }
    Ok(if k > 0.0 {
        Regime::Decaying
    } else if k >= -1.0 {
        Regime::HyperbolicOscillatory
    } else {
        Regime::TrigonometricOscillatory
    })
}

/// Dimensionless model parameters. Times are in units of `1/Delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    k: f64,
    theta: f64,
    phi: f64,
    delta: Option<f64>,
    regime: Regime,
}

impl ModelParams {
    pub fn new(k: f64, theta: f64, phi: f64) -> Result<Self> {
        let regime = classify_regime(k)?;
        if !theta.is_finite() {
            return Err(Error::invalid(
                "theta",
                format!("must be finite, got {theta}"),
            ));
        }
        if !phi.is_finite() {
            return Err(Error::invalid("phi", format!("must be finite, got {phi}")));
        }
        Ok(Self {
            k,
            theta,
            phi,
            delta: None,
            regime,
        })
    }

    /// Attach the physical level splitting, used only by [`Self::physical_time`].
    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::invalid(
                "delta",
                format!("must be finite and > 0, got {delta}"),
            ));
        }
        self.delta = Some(delta);
        Ok(self)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn delta(&self) -> Option<f64> {
        self.delta
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Complex displacement `eta = theta + i phi`.
    pub fn eta(&self) -> Complex64 {
        Complex64::new(self.theta, self.phi)
    }

    /// `kappa`, `nu` or `epsilon`, whichever the regime uses.
    pub fn regime_constant(&self) -> f64 {
        match self.regime {
            Regime::Decaying => (1.0 + self.k).sqrt(),
            Regime::HyperbolicOscillatory => (1.0 - self.k.abs()).sqrt(),
            Regime::TrigonometricOscillatory => (self.k.abs() - 1.0).sqrt(),
        }
    }

    /// `sqrt(k)` on the principal branch, `i sqrt(|k|)` for negative `k`.
    pub fn sqrt_k(&self) -> Complex64 {
        if self.k >= 0.0 {
            Complex64::new(self.k.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-self.k).sqrt())
        }
    }

    /// Convert a dimensionless time to physical time `tau = t / Delta`.
    pub fn physical_time(&self, t: f64) -> Option<f64> {
        self.delta.map(|d| t / d)
    }
}

/// Free-function form of [`ModelParams::regime_constant`].
pub fn regime_constant(params: &ModelParams) -> f64 {
    params.regime_constant()
}
