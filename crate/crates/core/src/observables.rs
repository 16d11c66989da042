//! Population inversion, total probability and the rate identity for `W`.
//!
//! `W = |c1|^2 - |c2|^2` is computed from the raw (unnormalized) lab-frame
//! amplitudes. In the rotated frame the same quantity reads
//! `W = -2 Re(a1 conj(a2))`, and along any solution
//!
//! ```text
//! dW/dt = 4 f_I Im(a1 conj(a2))
//! ```
//!
//! so a real driving (`f_I = 0`) leaves `W` constant.

use crate::error::{Error, Result};
use crate::state::{Frame, SpinorState};
use crate::trajectory::Trajectory;

pub fn rotate_to_c(state: &SpinorState) -> Result<SpinorState> {
    match state.frame {
        Frame::AFrame => Ok(state.to_c_frame()),
        found => Err(Error::FrameMismatch {
            expected: Frame::AFrame,
            found,
        }),
    }
}

pub fn rotate_to_a(state: &SpinorState) -> Result<SpinorState> {
    match state.frame {
        Frame::CFrame => Ok(state.to_a_frame()),
        found => Err(Error::FrameMismatch {
            expected: Frame::CFrame,
            found,
        }),
    }
}

/// `|c1|^2 - |c2|^2`, rotating a-frame input first.
pub fn population_inversion(state: &SpinorState) -> f64 {
    let c = state.to_c_frame();
    c.amp1.norm_sqr() - c.amp2.norm_sqr()
}

/// `-2 (a1_R a2_R + a1_I a2_I)` on a-frame amplitudes, rotating c-frame input first.
pub fn population_inversion_rotated(state: &SpinorState) -> f64 {
    let a = state.to_a_frame();
    -2.0 * (a.amp1.re * a.amp2.re + a.amp1.im * a.amp2.im)
}

/// `|amp1|^2 + |amp2|^2`; the same in both frames.
pub fn total_probability(state: &SpinorState) -> f64 {
    state.amp1.norm_sqr() + state.amp2.norm_sqr()
}

/// Right-hand side of the rate identity, `4 f_I Im(a1 conj(a2))`.
pub fn wdot_from_state(state: &SpinorState, f_im: f64) -> f64 {
    let a = state.to_a_frame();
    4.0 * f_im * (a.amp1 * a.amp2.conj()).im
}

/// `|dW/dt - 4 f_I Im(a1 conj(a2))|` at an interior grid point, with `dW/dt`
/// from a central difference.
pub fn wdot_identity_residual(traj: &Trajectory, index: usize) -> Result<f64> {
    let n = traj.len();
    if index == 0 || index + 1 >= n {
        return Err(Error::BoundaryIndex { index, len: n });
    }
    let (prev, cur, next) = (
        &traj.points[index - 1],
        &traj.points[index],
        &traj.points[index + 1],
    );
    let wdot = (next.w - prev.w) / (next.t - prev.t);
    Ok((wdot - wdot_from_state(&cur.a_state(), cur.f.im)).abs())
}

/// Tolerance for [`wdot_identity_residual`] at step `dt`.
///
/// The central difference has truncation error `dt^2 |W'''| / 6`; the bound is
/// `1e-6 (1 + |W|)` at `dt = 1e-4`, scaled with `dt^2`, plus a rounding term
/// `1e-13 / dt`.
pub fn wdot_tolerance(dt: f64, w: f64) -> f64 {
    1e-6 * (1.0 + w.abs()) * (dt / 1e-4).powi(2) + 1e-13 / dt
}

/// A grid minimum of `W` with its bracketing interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionMinimum {
    pub index: usize,
    pub t: f64,
    pub w: f64,
    /// `(t_{i-1}, t_{i+1})`, clipped to the grid.
    pub bracket: (f64, f64),
}

fn minimum_at(traj: &Trajectory, index: usize) -> InversionMinimum {
    let lo = index.saturating_sub(1);
    let hi = (index + 1).min(traj.len() - 1);
    InversionMinimum {
        index,
        t: traj.points[index].t,
        w: traj.points[index].w,
        bracket: (traj.points[lo].t, traj.points[hi].t),
    }
}

/// Grid argmin of `W` (the first one on ties). `None` for an empty trajectory.
pub fn inversion_minimum(traj: &Trajectory) -> Option<InversionMinimum> {
    let (index, _) = traj
        .points
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.w.total_cmp(&y.1.w))?;
    Some(minimum_at(traj, index))
}

/// Minima of `W` over each maximal run of consecutive grid points with
/// `W <= threshold`. Each run counts as one distinct transition time.
pub fn transitions_below(traj: &Trajectory, threshold: f64) -> Vec<InversionMinimum> {
    let mut out = Vec::new();
    let mut run: Option<usize> = None;
    for (i, p) in traj.points.iter().enumerate() {
        if p.w <= threshold {
            run = Some(match run {
                Some(j) if traj.points[j].w <= p.w => j,
                _ => i,
            });
        } else if let Some(j) = run.take() {
            out.push(minimum_at(traj, j));
        }
    }
    if let Some(j) = run {
        out.push(minimum_at(traj, j));
    }
    out
}
