//! Closed-form amplitudes for the constant potential `V1 = k`.
//!
//! `a1` solves `-a1'' + k a1 = 0`, so `a1(t) = alpha1 e^{s (t - t0)} + alpha2 e^{-s (t - t0)}`
//! with `s = sqrt(k)` (`s = i sqrt|k|` for `k < 0`). At `k = 0` the two
//! exponentials coincide and `a1 = alpha1 + alpha2 (t - t0)` instead. `a2`
//! follows from the intertwining relation `a2 = -i (d/dt - f) a1`.
//!
//! The rotated-frame equations used throughout are
//!
//! ```text
//! a1' = f a1 + i a2
//! a2' = -f a2 + i a1
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::state::SpinorState;
use crate::superpotential::Superpotential;
use crate::trajectory::{TimeGrid, Trajectory, TrajectoryPoint};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Integration constants of `a1`, referred to the initial time `t0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionCoefficients {
    pub t0: f64,
    /// Coefficient of `e^{s (t - t0)}`; the constant term when `degenerate_linear`.
    pub alpha1: Complex64,
    /// Coefficient of `e^{-s (t - t0)}`; the slope when `degenerate_linear`.
    pub alpha2: Complex64,
    pub sqrt_k: Complex64,
    pub degenerate_linear: bool,
}

impl SolutionCoefficients {
    /// Constants for initial data `(a1(t0), a2(t0))`.
    ///
    /// The rotated-frame equations give `a1'(t0) = f(t0) a1(t0) + i a2(t0)`.
    pub fn solve_at(
        params: &ModelParams,
        t0: f64,
        a1_0: Complex64,
        a2_0: Complex64,
    ) -> Result<Self> {
        if a1_0 == Complex64::new(0.0, 0.0) && a2_0 == Complex64::new(0.0, 0.0) {
            return Err(Error::invalid(
                "initial",
                "initial amplitudes are both zero",
            ));
        }
        if !(a1_0.norm().is_finite() && a2_0.norm().is_finite()) {
            return Err(Error::invalid(
                "initial",
                "initial amplitudes must be finite",
            ));
        }
        let f0 = Superpotential::new(*params).eval(t0)?.f;
        let da1 = f0 * a1_0 + I * a2_0;
        let s = params.sqrt_k();
        Ok(if params.k() == 0.0 {
            Self {
                t0,
                alpha1: a1_0,
                alpha2: da1,
                sqrt_k: s,
                degenerate_linear: true,
            }
        } else {
            Self {
                t0,
                alpha1: (a1_0 + da1 / s) / 2.0,
                alpha2: (a1_0 - da1 / s) / 2.0,
                sqrt_k: s,
                degenerate_linear: false,
            }
        })
    }

    /// The bounded branch for `k > 0`: `alpha1 = 0` exactly, `a1(t0) = a1_0`.
    pub fn decaying(params: &ModelParams, t0: f64, a1_0: Complex64) -> Result<Self> {
        if params.k() <= 0.0 {
            return Err(Error::RegimeMismatch {
                rule: "decaying_limit",
                k: params.k(),
                reason: "the decaying branch requires k > 0",
            });
        }
        Ok(Self {
            t0,
            alpha1: Complex64::new(0.0, 0.0),
            alpha2: a1_0,
            sqrt_k: params.sqrt_k(),
            degenerate_linear: false,
        })
    }

    /// `a1(t)`.
    pub fn a1(&self, t: f64) -> Complex64 {
        let dt = t - self.t0;
        if self.degenerate_linear {
            self.alpha1 + self.alpha2 * dt
        } else {
            let e = (self.sqrt_k * dt).exp();
            self.alpha1 * e + self.alpha2 / e
        }
    }

    /// `a1'(t)`.
    pub fn a1_dot(&self, t: f64) -> Complex64 {
        if self.degenerate_linear {
            self.alpha2
        } else {
            let e = (self.sqrt_k * (t - self.t0)).exp();
            self.sqrt_k * (self.alpha1 * e - self.alpha2 / e)
        }
    }

    /// `a1''(t) = k a1(t)`.
    pub fn a1_ddot(&self, t: f64) -> Complex64 {
        if self.degenerate_linear {
            Complex64::new(0.0, 0.0)
        } else {
            self.sqrt_k * self.sqrt_k * self.a1(t)
        }
    }
}

pub fn solve_coefficients(
    params: &ModelParams,
    a1_0: Complex64,
    a2_0: Complex64,
) -> Result<SolutionCoefficients> {
    SolutionCoefficients::solve_at(params, 0.0, a1_0, a2_0)
}

pub fn eval_a1(coeffs: &SolutionCoefficients, t: f64) -> Complex64 {
    coeffs.a1(t)
}

/// `a2(t) = -i (a1'(t) - f(t) a1(t))`.
pub fn eval_a2(coeffs: &SolutionCoefficients, params: &ModelParams, t: f64) -> Result<Complex64> {
    AnalyticSolution::new(Superpotential::new(*params), *coeffs).a2(t)
}

/// Closed-form solution bound to its driving.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticSolution {
    driving: Superpotential,
    coeffs: SolutionCoefficients,
}

impl AnalyticSolution {
    pub fn new(driving: Superpotential, coeffs: SolutionCoefficients) -> Self {
        Self { driving, coeffs }
    }

    /// Solution through `initial`, which may be given in either frame.
    pub fn from_initial(driving: Superpotential, initial: &SpinorState) -> Result<Self> {
        let a = initial.to_a_frame();
        let coeffs = SolutionCoefficients::solve_at(driving.params(), a.t, a.amp1, a.amp2)?;
        Ok(Self::new(driving, coeffs))
    }

    pub fn coefficients(&self) -> &SolutionCoefficients {
        &self.coeffs
    }

    pub fn driving(&self) -> &Superpotential {
        &self.driving
    }

    pub fn a1(&self, t: f64) -> Complex64 {
        self.coeffs.a1(t)
    }

    pub fn a1_dot(&self, t: f64) -> Complex64 {
        self.coeffs.a1_dot(t)
    }

    pub fn a2(&self, t: f64) -> Result<Complex64> {
        let f = self.driving.eval(t)?.f;
        Ok(-I * (self.coeffs.a1_dot(t) - f * self.coeffs.a1(t)))
    }

    /// `a2'(t) = -i (a1'' - f' a1 - f a1')`.
    pub fn a2_dot(&self, t: f64) -> Result<Complex64> {
        let (f, df) = self.driving.value_and_derivative(t)?;
        let c = &self.coeffs;
        Ok(-I * (c.a1_ddot(t) - df * c.a1(t) - f * c.a1_dot(t)))
    }

    pub fn state(&self, t: f64) -> Result<SpinorState> {
        Ok(SpinorState::a_frame(t, self.a1(t), self.a2(t)?))
    }

    pub fn trajectory(&self, grid: TimeGrid) -> Result<Trajectory> {
        let points = grid
            .times()
            .map(|t| {
                let f = self.driving.eval(t)?.f;
                let a1 = self.coeffs.a1(t);
                let a2 = -I * (self.coeffs.a1_dot(t) - f * a1);
                Ok(TrajectoryPoint::from_state(
                    SpinorState::a_frame(t, a1, a2),
                    f,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Trajectory {
            params: *self.driving.params(),
            grid,
            points,
        })
    }
}

/// How the intertwining operators obtain time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    /// Use [`Amplitude::derivative`]; fails for inputs without one.
    Analytic,
    /// Central difference with step `h`.
    CentralDifference { h: f64 },
    /// Fourth-order five-point stencil with step `h`.
    FivePoint { h: f64 },
}

/// A complex function of time that the intertwining operators can act on.
pub trait Amplitude {
    fn value(&self, t: f64) -> Result<Complex64>;

    fn derivative(&self, _t: f64) -> Result<Complex64> {
        Err(Error::DerivativeUnavailable)
    }
}

fn derivative_of(func: &dyn Amplitude, t: f64, mode: DerivativeMode) -> Result<Complex64> {
    match mode {
        DerivativeMode::Analytic => func.derivative(t),
        DerivativeMode::CentralDifference { h } => {
            Ok((func.value(t + h)? - func.value(t - h)?) / (2.0 * h))
        }
        DerivativeMode::FivePoint { h } => {
            let near = func.value(t + h)? - func.value(t - h)?;
            let far = func.value(t + 2.0 * h)? - func.value(t - 2.0 * h)?;
            Ok((8.0 * near - far) / (12.0 * h))
        }
    }
}

/// Maps `a1` to `a2 = -i B a1` with `B = d/dt - f`.
pub fn intertwine_b(
    a1: &dyn Amplitude,
    driving: &Superpotential,
    t: f64,
    mode: DerivativeMode,
) -> Result<Complex64> {
    let f = driving.eval(t)?.f;
    Ok(-I * (derivative_of(a1, t, mode)? - f * a1.value(t)?))
}

/// Maps `a2` to `a1 = i A a2` with `A = -d/dt - f`.
pub fn intertwine_a(
    a2: &dyn Amplitude,
    driving: &Superpotential,
    t: f64,
    mode: DerivativeMode,
) -> Result<Complex64> {
    let f = driving.eval(t)?.f;
    Ok(I * (-derivative_of(a2, t, mode)? - f * a2.value(t)?))
}

/// `a1` of a closed-form solution, with its exact derivative.
pub struct ClosedFormA1<'a>(pub &'a AnalyticSolution);

impl Amplitude for ClosedFormA1<'_> {
    fn value(&self, t: f64) -> Result<Complex64> {
        Ok(self.0.a1(t))
    }

    fn derivative(&self, t: f64) -> Result<Complex64> {
        Ok(self.0.a1_dot(t))
    }
}

/// `a2` of a closed-form solution, with its exact derivative.
pub struct ClosedFormA2<'a>(pub &'a AnalyticSolution);

impl Amplitude for ClosedFormA2<'_> {
    fn value(&self, t: f64) -> Result<Complex64> {
        self.0.a2(t)
    }

    fn derivative(&self, t: f64) -> Result<Complex64> {
        self.0.a2_dot(t)
    }
}

/// Wraps a plain function; no analytic derivative.
pub struct FnAmplitude<F>(pub F);

impl<F> Amplitude for FnAmplitude<F>
where
    F: Fn(f64) -> Result<Complex64>,
{
    fn value(&self, t: f64) -> Result<Complex64> {
        (self.0)(t)
    }
}

/// `-i B` applied to an inner amplitude, usable as input to [`intertwine_a`].
pub struct IntertwinedB<'a> {
    pub inner: &'a dyn Amplitude,
    pub driving: &'a Superpotential,
    pub mode: DerivativeMode,
}

impl Amplitude for IntertwinedB<'_> {
    fn value(&self, t: f64) -> Result<Complex64> {
        intertwine_b(self.inner, self.driving, t, self.mode)
    }
}
