//! Fixed-step classical Runge-Kutta integration of the two-level equations.
//!
//! This is the numerical cross-check for the closed forms. The driving is
//! evaluated analytically at every substage, and grid times are
//! `t_min + i dt`, so identical inputs give bit-identical trajectories.

use num_complex::Complex64;

use crate::analytic::AnalyticSolution;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::state::{Frame, SpinorState};
use crate::superpotential::{Driving, Superpotential, DEFAULT_MAGNITUDE_CAP};
use crate::trajectory::{TimeGrid, Trajectory, TrajectoryPoint};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    pub frame: Frame,
    /// Integration aborts once an amplitude modulus exceeds this value.
    pub magnitude_cap: f64,
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_max: f64, frame: Frame) -> Self {
        Self {
            dt,
            t_max,
            frame,
            magnitude_cap: DEFAULT_MAGNITUDE_CAP,
        }
    }

    pub fn with_magnitude_cap(mut self, cap: f64) -> Self {
        self.magnitude_cap = cap;
        self
    }
}

/// Right-hand side `d/dt (y1, y2)` in the given frame.
#[inline]
fn rhs(frame: Frame, f: Complex64, y: [Complex64; 2]) -> [Complex64; 2] {
    match frame {
        // i a1' = i f a1 - a2,  i a2' = -i f a2 - a1
        Frame::AFrame => [f * y[0] + I * y[1], -f * y[1] + I * y[0]],
        // i c' = (sigma_z + i f sigma_x) c
        Frame::CFrame => [-I * y[0] + f * y[1], I * y[1] + f * y[0]],
    }
}

#[inline]
fn axpy(y: [Complex64; 2], h: f64, k: [Complex64; 2]) -> [Complex64; 2] {
    [y[0] + h * k[0], y[1] + h * k[1]]
}

/// Integrate the closed-form driving of `params`.
pub fn integrate(
    params: &ModelParams,
    initial: &SpinorState,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    let driving = Superpotential::new(*params).with_magnitude_cap(config.magnitude_cap)?;
    integrate_with(&driving, *params, initial, config)
}

/// Integrate an arbitrary driving. `params` is recorded in the trajectory.
pub fn integrate_with<D: Driving + ?Sized>(
    driving: &D,
    params: ModelParams,
    initial: &SpinorState,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    if initial.frame != config.frame {
        return Err(Error::FrameMismatch {
            expected: config.frame,
            found: initial.frame,
        });
    }
    if !(config.magnitude_cap.is_finite() && config.magnitude_cap > 0.0) {
        return Err(Error::invalid("magnitude_cap", "must be finite and > 0"));
    }
    let grid = TimeGrid::new(initial.t, config.t_max, config.dt)?;
    let frame = config.frame;
    let dt = grid.dt();
    let half = 0.5 * dt;
    let abort = |t: f64, cause: Error| Error::Aborted {
        last_valid_t: t,
        cause: Box::new(cause),
    };

    let mut y = initial.amplitudes();
    let mut t = grid.time(0);
    let mut f_t = driving.driving(t).map_err(|e| abort(t, e))?;
    let mut points = Vec::with_capacity(grid.len());
    points.push(TrajectoryPoint::from_state(
        SpinorState::new(t, y[0], y[1], frame),
        f_t,
    ));

    for i in 1..grid.len() {
        let t_next = grid.time(i);
        let f_mid = driving.driving(t + half).map_err(|e| abort(t, e))?;
        let f_next = driving.driving(t_next).map_err(|e| abort(t, e))?;

        let k1 = rhs(frame, f_t, y);
        let k2 = rhs(frame, f_mid, axpy(y, half, k1));
        let k3 = rhs(frame, f_mid, axpy(y, half, k2));
        let k4 = rhs(frame, f_next, axpy(y, dt, k3));
        let step = dt / 6.0;
        y = [
            y[0] + step * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + step * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ];

        let magnitude = y[0].norm().max(y[1].norm());
        if !(magnitude.is_finite() && magnitude <= config.magnitude_cap) {
            return Err(abort(
                t,
                Error::Overflow {
                    t: t_next,
                    magnitude,
                    cap: config.magnitude_cap,
                },
            ));
        }
        t = t_next;
        f_t = f_next;
        points.push(TrajectoryPoint::from_state(
            SpinorState::new(t, y[0], y[1], frame),
            f_t,
        ));
    }

    Ok(Trajectory {
        params,
        grid,
        points,
    })
}

/// One row of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceLevel {
    pub dt: f64,
    /// Max over the grid of `|a_j(RK4) - a_j(closed form)|`.
    pub max_error: f64,
    /// `log2(e_prev / e)`; `None` on the first level or when either error is
    /// at the rounding floor.
    pub observed_order: Option<f64>,
    /// The error is at or below `1e-14 (1 + max |a|)`.
    pub floor_saturated: bool,
}

/// Integrate at `base_dt, base_dt/2, ...` (`levels` runs) and compare each run
/// with the closed form on its own grid.
pub fn convergence_report(
    params: &ModelParams,
    initial: &SpinorState,
    base_dt: f64,
    levels: usize,
    t_max: f64,
) -> Result<Vec<ConvergenceLevel>> {
    if levels == 0 {
        return Err(Error::invalid("levels", "need at least one level"));
    }
    let analytic = AnalyticSolution::from_initial(Superpotential::new(*params), initial)?;
    let mut out: Vec<ConvergenceLevel> = Vec::with_capacity(levels);
    for j in 0..levels {
        let dt = base_dt / (1u64 << j) as f64;
        let config = IntegratorConfig::new(dt, t_max, initial.frame);
        let numeric = integrate(params, initial, &config)?;
        let exact = analytic.trajectory(numeric.grid)?;
        let max_error = numeric.max_amplitude_deviation(&exact);
        let scale = exact
            .points
            .iter()
            .map(|p| p.a[0].norm().max(p.a[1].norm()))
            .fold(0.0, f64::max);
        let floor_saturated = max_error <= 1e-14 * (1.0 + scale);
        let observed_order = match out.last() {
            Some(prev) if !prev.floor_saturated && !floor_saturated => {
                Some((prev.max_error / max_error).log2())
            }
            _ => None,
        };
        out.push(ConvergenceLevel {
            dt,
            max_error,
            observed_order,
            floor_saturated,
        });
    }
    Ok(out)
}
