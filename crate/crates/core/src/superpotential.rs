//! Complex driving functions (superpotentials) and their SUSY partner potentials.
//!
//! With the constant potential `V1 = k`, the superpotential solves the Riccati
//! equation `f' + f^2 = k + 1`. The closed forms are
//!
//! * `k > 0`:          `f = kappa tanh[kappa (t + theta + i phi)]`
//! * `-1 <= k <= 0`:   `f = nu tanh[nu (t + theta + i phi)]`
//! * `k < -1`:         `f = -epsilon tan[epsilon (t + theta + i phi)]`
//!
//! The same functions arise as logarithmic derivatives `u'/u` of a complex
//! combination of two real seed solutions, see [`SeedBasis`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{ModelParams, Regime};

/// Default cap on `|f|`, `|f'|` and amplitude magnitudes before a value is
/// treated as singular.
pub const DEFAULT_MAGNITUDE_CAP: f64 = 1e12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A driving value `f(t) = f_R + i f_I`.
///
/// The physical coupling in the lab-frame Hamiltonian is `w(t)/Delta = i f(t)`,
/// so `Re w / Delta = -f_I` and `Im w / Delta = f_R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivingSample {
    pub t: f64,
    pub f: Complex64,
}

impl DrivingSample {
    pub fn f_re(&self) -> f64 {
        self.f.re
    }

    pub fn f_im(&self) -> f64 {
        self.f.im
    }

    /// Scaled coupling `w(t)/Delta = i f(t)`.
    pub fn coupling(&self) -> Complex64 {
        I * self.f
    }
}

/// Anything that can supply the driving `f(t)` to the dynamics.
pub trait Driving {
    fn driving(&self, t: f64) -> Result<Complex64>;
}

/// `(tanh z, sech^2 z)` evaluated without overflow for large `|Re z|`.
fn tanh_sech2(z: Complex64) -> (Complex64, Complex64) {
    // For Re z >= 0, q = exp(-2z) has |q| <= 1 and
    // tanh z = (1 - q)/(1 + q), sech^2 z = 4q/(1 + q)^2.
    let (w, sign) = if z.re >= 0.0 { (z, 1.0) } else { (-z, -1.0) };
    let q = (-2.0 * w).exp();
    let d = 1.0 + q;
    let tanh = (1.0 - q) / d * sign;
    let sech2 = 4.0 * q / (d * d);
    (tanh, sech2)
}

/// Closed-form superpotential for a given parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superpotential {
    params: ModelParams,
    magnitude_cap: f64,
}

impl Superpotential {
    pub fn new(params: ModelParams) -> Self {
        Self {
            params,
            magnitude_cap: DEFAULT_MAGNITUDE_CAP,
        }
    }

    pub fn with_magnitude_cap(mut self, cap: f64) -> Result<Self> {
        if !(cap.is_finite() && cap > 0.0) {
            return Err(Error::invalid(
                "magnitude_cap",
                format!("must be finite and > 0, got {cap}"),
            ));
        }
        self.magnitude_cap = cap;
        Ok(self)
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn magnitude_cap(&self) -> f64 {
        self.magnitude_cap
    }

    fn raw(&self, t: f64) -> (Complex64, Complex64) {
        let p = &self.params;
        let c = p.regime_constant();
        let x = Complex64::new(t + p.theta(), p.phi());
        match p.regime() {
            Regime::Decaying | Regime::HyperbolicOscillatory => {
                if c == 0.0 {
                    (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
                } else {
                    let (th, s2) = tanh_sech2(c * x);
                    (c * th, c * c * s2)
                }
            }
            Regime::TrigonometricOscillatory => {
                // tan z = -i tanh(i z), sec^2 z = sech^2(i z)
                let (th, s2) = tanh_sech2(I * c * x);
                (I * c * th, -c * c * s2)
            }
        }
    }

    fn guard(&self, t: f64, magnitude: f64) -> Result<()> {
        if magnitude.is_finite() && magnitude <= self.magnitude_cap {
            Ok(())
        } else {
            Err(Error::PoleProximity {
                t,
                magnitude,
                cap: self.magnitude_cap,
            })
        }
    }

    /// `(f, f')` with the exact closed-form derivative. Both are checked
    /// against the magnitude cap.
    pub fn value_and_derivative(&self, t: f64) -> Result<(Complex64, Complex64)> {
        let (f, df) = self.raw(t);
        self.guard(t, f.norm().max(df.norm()))?;
        Ok((f, df))
    }

    pub fn eval(&self, t: f64) -> Result<DrivingSample> {
        let (f, _) = self.raw(t);
        self.guard(t, f.norm())?;
        Ok(DrivingSample { t, f })
    }

    pub fn derivative(&self, t: f64) -> Result<Complex64> {
        self.value_and_derivative(t).map(|(_, df)| df)
    }

    /// `f' + f^2 - (k + 1)`, which vanishes identically for the closed forms.
    pub fn riccati_residual(&self, t: f64) -> Result<Complex64> {
        let (f, df) = self.value_and_derivative(t)?;
        Ok(df + f * f - (self.params.k() + 1.0))
    }

    /// The partner pair `(V1, V2)`.
    ///
    /// `V2 = k - 2(k + 1)/cos^2[(t + eta) sqrt(-1 - k)]` is evaluated directly
    /// from this expression with a complex square root; it agrees with
    /// `V1 - 2 f'` (see [`Self::partner_v2_from_derivative`]).
    pub fn partner_potentials(&self, t: f64) -> Result<(Complex64, Complex64)> {
        let k = self.params.k();
        let v1 = Complex64::new(k, 0.0);
        let root = Complex64::new(-1.0 - k, 0.0).sqrt();
        let cos = ((t + self.params.eta()) * root).cos();
        let v2 = k - 2.0 * (k + 1.0) / (cos * cos);
        self.guard(t, v2.norm())?;
        Ok((v1, v2))
    }

    /// `V2 = V1 - 2 f'` through the superpotential derivative.
    pub fn partner_v2_from_derivative(&self, t: f64) -> Result<Complex64> {
        let df = self.derivative(t)?;
        Ok(self.params.k() - 2.0 * df)
    }
}

impl Driving for Superpotential {
    fn driving(&self, t: f64) -> Result<Complex64> {
        self.eval(t).map(|s| s.f)
    }
}

pub fn eval_f(params: &ModelParams, t: f64) -> Result<DrivingSample> {
    Superpotential::new(*params).eval(t)
}

pub fn partner_potentials(params: &ModelParams, t: f64) -> Result<(Complex64, Complex64)> {
    Superpotential::new(*params).partner_potentials(t)
}

pub fn riccati_residual(params: &ModelParams, t: f64) -> Result<Complex64> {
    Superpotential::new(*params).riccati_residual(t)
}

/// Pair of real solutions of `-u'' + k u = -u` used to build the seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeedPair {
    /// `u1 = cosh(c t)`, `u2 = sinh(c t)`, Wronskian `c`.
    Hyperbolic { scale: f64 },
    /// `u1 = cos(c t)`, `u2 = sin(c t)`, Wronskian `c`.
    Trigonometric { scale: f64 },
    /// `u1 = 1`, `u2 = t`, Wronskian `1` (the `k = -1` limit).
    Linear,
}

impl SeedPair {
    /// `(u1, u2, u1', u2')`, all divided by a common positive factor so that
    /// large hyperbolic arguments do not overflow. The factor cancels in `u'/u`.
    fn scaled(&self, t: f64) -> [f64; 4] {
        match *self {
            SeedPair::Hyperbolic { scale } => {
                let y = scale * t;
                let e = (-2.0 * y.abs()).exp();
                let ch = 1.0 + e;
                let sh = (1.0 - e) * y.signum();
                [ch, sh, scale * sh, scale * ch]
            }
            SeedPair::Trigonometric { scale } => {
                let (s, c) = (scale * t).sin_cos();
                [c, s, -scale * s, scale * c]
            }
            SeedPair::Linear => [1.0, t, 0.0, 1.0],
        }
    }

    /// Unscaled `(u1, u2, u1', u2')`.
    pub fn eval(&self, t: f64) -> [f64; 4] {
        match *self {
            SeedPair::Hyperbolic { scale } => {
                let (ch, sh) = ((scale * t).cosh(), (scale * t).sinh());
                [ch, sh, scale * sh, scale * ch]
            }
            SeedPair::Trigonometric { scale } => {
                let (s, c) = (scale * t).sin_cos();
                [c, s, -scale * s, scale * c]
            }
            SeedPair::Linear => [1.0, t, 0.0, 1.0],
        }
    }

    /// `u1 u2' - u1' u2` evaluated from the functions at `t`.
    pub fn wronskian_at(&self, t: f64) -> f64 {
        let [u1, u2, du1, du2] = self.eval(t);
        u1 * du2 - du1 * u2
    }

    /// Exact (constant) Wronskian.
    pub fn wronskian(&self) -> f64 {
        match *self {
            SeedPair::Hyperbolic { scale } | SeedPair::Trigonometric { scale } => scale,
            SeedPair::Linear => 1.0,
        }
    }
}

/// Seed data for `u = mu1 u1 + (mu2/2 - i lambda/w0) u2`, evaluated at `t + shift`.
///
/// `mu3` follows from the mixing constraint `mu2^2 - 4 mu1 mu3 = -4 lambda^2 / w0^2`
/// and is kept for reference only; it does not enter `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedBasis {
    pair: SeedPair,
    w0: f64,
    mu1: f64,
    mu2: f64,
    mu3: f64,
    lambda: f64,
    shift: f64,
}

impl SeedBasis {
    pub fn new(pair: SeedPair, mu1: f64, mu2: f64, lambda: f64, shift: f64) -> Result<Self> {
        let w0 = pair.wronskian();
        if !(w0.is_finite() && w0 != 0.0) {
            return Err(Error::invalid("w0", "seed pair has a vanishing Wronskian"));
        }
        for (name, v) in [
            ("mu1", mu1),
            ("mu2", mu2),
            ("lambda", lambda),
            ("shift", shift),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        if mu1 == 0.0 {
            return Err(Error::invalid("mu1", "must be nonzero"));
        }
        if lambda != 0.0 && mu1 < 0.0 {
            return Err(Error::invalid("mu1", "must be positive when lambda != 0"));
        }
        let mu3 = (mu2 * mu2 + 4.0 * lambda * lambda / (w0 * w0)) / (4.0 * mu1);
        Ok(Self {
            pair,
            w0,
            mu1,
            mu2,
            mu3,
            lambda,
            shift,
        })
    }

    /// The seed that reproduces the closed-form driving of `params`.
    ///
    /// Hyperbolic regimes use `(cosh, sinh)` with `mu1 = cos(c phi)`,
    /// `lambda = -c sin(c phi)`; the trigonometric regime uses `(cos, sin)`
    /// with `mu1 = cosh(c phi)`, `lambda = c sinh(c phi)`. In both cases
    /// `mu2 = 0` and the argument is shifted by `theta`.
    pub fn for_params(params: &ModelParams) -> Result<Self> {
        let c = params.regime_constant();
        let phi = params.phi();
        let (pair, mut mu1, mut lambda) = match params.regime() {
            Regime::Decaying | Regime::HyperbolicOscillatory if c == 0.0 => {
                (SeedPair::Linear, 1.0, 0.0)
            }
            Regime::Decaying | Regime::HyperbolicOscillatory => (
                SeedPair::Hyperbolic { scale: c },
                (c * phi).cos(),
                -c * (c * phi).sin(),
            ),
            Regime::TrigonometricOscillatory => (
                SeedPair::Trigonometric { scale: c },
                (c * phi).cosh(),
                c * (c * phi).sinh(),
            ),
        };
        // u -> -u leaves u'/u unchanged
        if mu1 < 0.0 {
            mu1 = -mu1;
            lambda = -lambda;
        }
        Self::new(pair, mu1, 0.0, lambda, params.theta())
    }

    pub fn pair(&self) -> SeedPair {
        self.pair
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    pub fn mu3(&self) -> f64 {
        self.mu3
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// `mu2^2 - 4 mu1 mu3 + 4 lambda^2 / w0^2`; zero up to rounding.
    pub fn constraint_residual(&self) -> f64 {
        self.mu2 * self.mu2 - 4.0 * self.mu1 * self.mu3
            + 4.0 * self.lambda * self.lambda / (self.w0 * self.w0)
    }

    fn weight2(&self) -> Complex64 {
        Complex64::new(self.mu2 / 2.0, -self.lambda / self.w0)
    }

    /// `u(t)` and `u'(t)` (unscaled).
    pub fn u(&self, t: f64) -> (Complex64, Complex64) {
        let [u1, u2, du1, du2] = self.pair.eval(t + self.shift);
        let b = self.weight2();
        (self.mu1 * u1 + b * u2, self.mu1 * du1 + b * du2)
    }

    /// `f = u'/u`.
    pub fn eval_f(&self, t: f64) -> Result<Complex64> {
        let [u1, u2, du1, du2] = self.pair.scaled(t + self.shift);
        let b = self.weight2();
        let u = self.mu1 * u1 + b * u2;
        let du = self.mu1 * du1 + b * du2;
        if u.norm() < 1e-300 {
            return Err(Error::ZeroDivisor {
                t,
                magnitude: u.norm(),
            });
        }
        Ok(du / u)
    }
}

impl Driving for SeedBasis {
    fn driving(&self, t: f64) -> Result<Complex64> {
        self.eval_f(t)
    }
}

pub fn eval_f_from_seed(basis: &SeedBasis, t: f64) -> Result<Complex64> {
    basis.eval_f(t)
}
