//! Uniform time grids and sampled trajectories.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::observables;
use crate::params::ModelParams;
use crate::state::SpinorState;

/// Upper bound on the number of steps in one grid.
pub const MAX_STEPS: usize = 100_000_000;

/// Uniform grid `t_i = t_min + i dt`, `i = 0..=n_steps`.
///
/// Times are computed by multiplication, never by accumulation, so a grid is
/// reproducible bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_min: f64,
    t_max: f64,
    dt: f64,
    n_steps: usize,
}

impl TimeGrid {
    /// Uniform grid from `t_min` to exactly `t_max`.
    ///
    /// Uses `n = ceil((t_max - t_min) / dt)` steps of `(t_max - t_min) / n`, so
    /// the effective step never exceeds `dt` and equals it whenever `dt` divides
    /// the span (up to a relative slack of `1e-9` steps).
    pub fn new(t_min: f64, t_max: f64, dt: f64) -> Result<Self> {
        if !t_min.is_finite() {
            return Err(Error::invalid(
                "t_min",
                format!("must be finite, got {t_min}"),
            ));
        }
        if !t_max.is_finite() || t_max < t_min {
            return Err(Error::invalid(
                "t_max",
                format!("must be finite and >= t_min, got {t_max}"),
            ));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::invalid(
                "dt",
                format!("must be finite and > 0, got {dt}"),
            ));
        }
        let span = t_max - t_min;
        let ratio = span / dt;
        let steps = if (ratio - ratio.round()).abs() <= 1e-9 * ratio.max(1.0) {
            ratio.round()
        } else {
            ratio.ceil()
        };
        if steps > MAX_STEPS as f64 {
            return Err(Error::invalid(
                "dt",
                format!("grid would need {steps:e} steps (limit {MAX_STEPS:e})"),
            ));
        }
        let n_steps = steps as usize;
        let dt = if n_steps == 0 { dt } else { span / steps };
        Ok(Self {
            t_min,
            t_max,
            dt,
            n_steps,
        })
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Effective step.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, i: usize) -> f64 {
        if i == self.n_steps {
            self.t_max
        } else {
            self.t_min + i as f64 * self.dt
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.time(i))
    }
}

/// One row of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub a: [Complex64; 2],
    pub c: [Complex64; 2],
    pub f: Complex64,
    pub w: f64,
    pub p: f64,
}

impl TrajectoryPoint {
    pub fn from_state(state: SpinorState, f: Complex64) -> Self {
        let a = state.to_a_frame();
        let c = state.to_c_frame();
        Self {
            t: state.t,
            a: a.amplitudes(),
            c: c.amplitudes(),
            f,
            w: observables::population_inversion(&c),
            p: observables::total_probability(&c),
        }
    }

    pub fn a_state(&self) -> SpinorState {
        SpinorState::a_frame(self.t, self.a[0], self.a[1])
    }

    pub fn c_state(&self) -> SpinorState {
        SpinorState::c_frame(self.t, self.c[0], self.c[1])
    }

    /// Normalized inversion `W / P`.
    pub fn w_over_p(&self) -> f64 {
        self.w / self.p
    }
}

/// Samples of a solution on a uniform grid, carrying both frames, the driving
/// and the observables at every time.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub params: ModelParams,
    pub grid: TimeGrid,
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.t)
    }

    pub fn dt(&self) -> f64 {
        self.grid.dt()
    }

    pub fn last(&self) -> Option<&TrajectoryPoint> {
        self.points.last()
    }

    /// Largest `|a_j(t) - a'_j(t)|` over the common grid, for either component.
    pub fn max_amplitude_deviation(&self, other: &Trajectory) -> f64 {
        self.points
            .iter()
            .zip(&other.points)
            .map(|(x, y)| (x.a[0] - y.a[0]).norm().max((x.a[1] - y.a[1]).norm()))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn divisible_span_keeps_requested_step() {
        for (t_max, dt, n) in [
            (50.0, 1e-3, 50_000),
            (10.0, 1e-4, 100_000),
            (50.0, 4e-3, 12_500),
            (0.5, 1e-3, 500),
        ] {
            let g = TimeGrid::new(0.0, t_max, dt).unwrap();
            assert_eq!(g.n_steps(), n);
            assert_eq!(g.dt().to_bits(), dt.to_bits());
            assert_eq!(g.time(n), t_max);
        }
    }

    #[test]
    fn ragged_span_shrinks_step_and_hits_endpoint() {
        let g = TimeGrid::new(0.0, FRAC_PI_2, 1e-3).unwrap();
        assert_eq!(g.n_steps(), 1571);
        assert!(g.dt() < 1e-3);
        assert_eq!(g.time(g.n_steps()), FRAC_PI_2);
        let times: Vec<f64> = g.times().collect();
        assert!(times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn degenerate_and_invalid_grids() {
        let g = TimeGrid::new(2.0, 2.0, 0.1).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.time(0), 2.0);
        assert!(TimeGrid::new(0.0, 1.0, 0.0).is_err());
        assert!(TimeGrid::new(0.0, -1.0, 0.1).is_err());
        assert!(TimeGrid::new(f64::NAN, 1.0, 0.1).is_err());
        assert!(TimeGrid::new(0.0, 1e3, 1e-6).is_err());
    }
}
