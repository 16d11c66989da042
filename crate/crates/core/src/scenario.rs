//! Preset and custom scenarios, and running them through either solver.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::analytic::{AnalyticSolution, SolutionCoefficients};
use crate::error::{Error, Result};
use crate::integrator::{self, IntegratorConfig};
use crate::params::ModelParams;
use crate::state::{Frame, SpinorState};
use crate::superpotential::{Superpotential, DEFAULT_MAGNITUDE_CAP};
use crate::trajectory::{TimeGrid, Trajectory};

pub const PRESET_NAMES: [&str; 3] = ["decaying", "hyperbolic", "trigonometric"];

/// Bumped whenever a preset's parameters, initial state or grid change.
pub const PRESET_VERSION: u32 = 1;

/// Default step for CSV output.
pub const DEFAULT_DT: f64 = 1e-3;

/// Step used for analytic-versus-RK4 validation runs.
pub const VALIDATION_DT: f64 = 1e-4;

/// Environment variable overriding the pole/overflow magnitude cap.
pub const MAG_CAP_ENV: &str = "SUSY_QUBIT_MAG_CAP";

/// Parse the value of [`MAG_CAP_ENV`]; `None` yields the default cap.
pub fn parse_magnitude_cap(value: Option<&str>) -> Result<f64> {
    match value {
        None => Ok(DEFAULT_MAGNITUDE_CAP),
        Some(s) => {
            let cap: f64 = s.trim().parse().map_err(|_| {
                Error::invalid(
                    "magnitude_cap",
                    format!("{MAG_CAP_ENV}={s:?} is not a number"),
                )
            })?;
            if !(cap.is_finite() && cap > 0.0) {
                return Err(Error::invalid(
                    "magnitude_cap",
                    format!("{MAG_CAP_ENV} must be finite and > 0, got {cap}"),
                ));
            }
            Ok(cap)
        }
    }
}

/// Read [`MAG_CAP_ENV`] from the process environment.
pub fn magnitude_cap_from_env() -> Result<f64> {
    parse_magnitude_cap(std::env::var(MAG_CAP_ENV).ok().as_deref())
}

/// How the initial state is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialSpec {
    /// Amplitudes given directly in `frame` at `t_min`.
    Explicit {
        frame: Frame,
        amp1: Complex64,
        amp2: Complex64,
    },
    /// Bounded branch for `k > 0`: `a2 = i a1 (f + sqrt k)`, with `a1` real
    /// and `|a1|^2 + |a2|^2 = 1`.
    DecayingLimit,
}

impl InitialSpec {
    pub fn rule_name(&self) -> &'static str {
        match self {
            InitialSpec::Explicit { .. } => "explicit",
            InitialSpec::DecayingLimit => "decaying_limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Preset { version: u32 },
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Analytic,
    Rk4,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Method::Analytic),
            "rk4" => Ok(Method::Rk4),
            "both" => Ok(Method::Both),
            other => Err(Error::invalid(
                "method",
                format!("expected analytic, rk4 or both, got {other:?}"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub origin: Origin,
    pub params: ModelParams,
    pub initial: InitialSpec,
    grid: TimeGrid,
    t_max: f64,
    magnitude_cap: f64,
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        params: ModelParams,
        initial: InitialSpec,
        t_min: f64,
        t_max: f64,
        dt: f64,
    ) -> Result<Self> {
        let grid = TimeGrid::new(t_min, t_max, dt)?;
        match initial {
            InitialSpec::DecayingLimit if params.k() <= 0.0 => {
                return Err(Error::RegimeMismatch {
                    rule: "decaying_limit",
                    k: params.k(),
                    reason: "the decaying branch requires k > 0",
                })
            }
            InitialSpec::Explicit { amp1, amp2, .. } => {
                if !(amp1.norm().is_finite() && amp2.norm().is_finite()) {
                    return Err(Error::invalid("initial", "amplitudes must be finite"));
                }
                if amp1.norm() == 0.0 && amp2.norm() == 0.0 {
                    return Err(Error::invalid("initial", "amplitudes are both zero"));
                }
            }
            InitialSpec::DecayingLimit => {}
        }
        Ok(Self {
            name: name.into(),
            origin: Origin::Custom,
            params,
            initial,
            grid,
            t_max,
            magnitude_cap: DEFAULT_MAGNITUDE_CAP,
        })
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn t_min(&self) -> f64 {
        self.grid.t_min()
    }

    /// Requested end time; the grid ends at the nearest multiple of `dt`.
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn dt(&self) -> f64 {
        self.grid.dt()
    }

    pub fn magnitude_cap(&self) -> f64 {
        self.magnitude_cap
    }

    pub fn with_dt(mut self, dt: f64) -> Result<Self> {
        self.grid = TimeGrid::new(self.grid.t_min(), self.t_max, dt)?;
        Ok(self)
    }

    pub fn with_t_max(mut self, t_max: f64) -> Result<Self> {
        self.grid = TimeGrid::new(self.grid.t_min(), t_max, self.grid.dt())?;
        self.t_max = t_max;
        Ok(self)
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

    pub fn superpotential(&self) -> Result<Superpotential> {
        Superpotential::new(self.params).with_magnitude_cap(self.magnitude_cap)
    }

    /// Frame the initial state is given in; RK4 integrates in this frame.
    pub fn frame(&self) -> Frame {
        match self.initial {
            InitialSpec::Explicit { frame, .. } => frame,
            InitialSpec::DecayingLimit => Frame::AFrame,
        }
    }

    /// The initial state at `t_min`.
    pub fn initial_state(&self) -> Result<SpinorState> {
        let t0 = self.t_min();
        match self.initial {
            InitialSpec::Explicit { frame, amp1, amp2 } => {
                Ok(SpinorState::new(t0, amp1, amp2, frame))
            }
            InitialSpec::DecayingLimit => {
                let g = self.superpotential()?.eval(t0)?.f + self.params.sqrt_k();
                let a1 = Complex64::new((1.0 + g.norm_sqr()).powf(-0.5), 0.0);
                let a2 = Complex64::new(0.0, 1.0) * a1 * g;
                Ok(SpinorState::a_frame(t0, a1, a2))
            }
        }
    }

    pub fn analytic_solution(&self) -> Result<AnalyticSolution> {
        let driving = self.superpotential()?;
        match self.initial {
            InitialSpec::DecayingLimit => {
                let a1 = self.initial_state()?.amp1;
                let coeffs = SolutionCoefficients::decaying(&self.params, self.t_min(), a1)?;
                Ok(AnalyticSolution::new(driving, coeffs))
            }
            InitialSpec::Explicit { .. } => {
                AnalyticSolution::from_initial(driving, &self.initial_state()?)
            }
        }
    }

    pub fn integrator_config(&self) -> IntegratorConfig {
        IntegratorConfig::new(self.dt(), self.grid.t_max(), self.frame())
            .with_magnitude_cap(self.magnitude_cap)
    }

    pub fn analytic_trajectory(&self) -> Result<Trajectory> {
        self.analytic_solution()?.trajectory(self.grid)
    }

    pub fn rk4_trajectory(&self) -> Result<Trajectory> {
        integrator::integrate(
            &self.params,
            &self.initial_state()?,
            &self.integrator_config(),
        )
    }

    /// Multi-line, human-readable echo of every field.
    pub fn describe(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let _ = writeln!(s, "name: {}", self.name);
        match self.origin {
            Origin::Preset { version } => {
                let _ = writeln!(s, "origin: preset (version {version})");
            }
            Origin::Custom => {
                let _ = writeln!(s, "origin: custom");
            }
        }
        let _ = writeln!(s, "k: {}", p.k());
        let _ = writeln!(s, "theta: {}", p.theta());
        let _ = writeln!(s, "phi: {}", p.phi());
        let _ = writeln!(s, "regime: {}", p.regime());
        let _ = writeln!(
            s,
            "{}: {}",
            p.regime().constant_symbol(),
            p.regime_constant()
        );
        let _ = writeln!(s, "t_min: {}", self.t_min());
        let _ = writeln!(s, "t_max: {}", self.t_max);
        let _ = writeln!(s, "dt: {}", self.dt());
        let _ = writeln!(s, "steps: {}", self.grid.n_steps());
        let _ = writeln!(s, "frame: {}", self.frame().short_name());
        let _ = writeln!(s, "initial_rule: {}", self.initial.rule_name());
        if let InitialSpec::Explicit { amp1, amp2, .. } = self.initial {
            let _ = writeln!(s, "initial_1_re: {}", amp1.re);
            let _ = writeln!(s, "initial_1_im: {}", amp1.im);
            let _ = writeln!(s, "initial_2_re: {}", amp2.re);
            let _ = writeln!(s, "initial_2_im: {}", amp2.im);
        }
        match self.initial_state() {
            Ok(st) => {
                let a = st.to_a_frame();
                let _ = writeln!(s, "initial a-frame: a1 = {}, a2 = {}", a.amp1, a.amp2);
            }
            Err(e) => {
                let _ = writeln!(s, "initial a-frame: unavailable ({e})");
            }
        }
        let _ = writeln!(s, "magnitude_cap: {:e}", self.magnitude_cap);
        s
    }
}

/// Look up a preset by name.
///
/// * `decaying`: `k = 1.566, theta = -0.83, phi = 3.14`, decaying-limit initial
///   state, `t` in `[0, 10]`.
/// * `hyperbolic`: `k = -0.49, theta = -25, phi = -0.54`,
///   `c1(0) = c2(0) = 1/sqrt 2`, `t` in `[0, 50]`.
/// * `trigonometric`: `k = -5.8, theta = -25, phi = 0.455`,
///   `c1(0) = -c2(0) = -1/sqrt 2`, `t` in `[0, 50]`.
pub fn preset(name: &str) -> Result<Scenario> {
    let r = FRAC_1_SQRT_2;
    let (params, initial, t_max) = match name {
        "decaying" => (
            ModelParams::new(1.566, -0.83, 3.14)?,
            InitialSpec::DecayingLimit,
            10.0,
        ),
        "hyperbolic" => (
            ModelParams::new(-0.49, -25.0, -0.54)?,
            InitialSpec::Explicit {
                frame: Frame::CFrame,
                amp1: Complex64::new(r, 0.0),
                amp2: Complex64::new(r, 0.0),
            },
            50.0,
        ),
        "trigonometric" => (
            ModelParams::new(-5.8, -25.0, 0.455)?,
            InitialSpec::Explicit {
                frame: Frame::CFrame,
                amp1: Complex64::new(-r, 0.0),
                amp2: Complex64::new(r, 0.0),
            },
            50.0,
        ),
        other => {
            return Err(Error::UnknownPreset {
                name: other.to_string(),
                valid: PRESET_NAMES.to_vec(),
            })
        }
    };
    let mut scenario = Scenario::new(name, params, initial, 0.0, t_max, DEFAULT_DT)?;
    scenario.origin = Origin::Preset {
        version: PRESET_VERSION,
    };
    Ok(scenario)
}

/// Per-column maximum absolute deviation between two trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DeviationReport {
    pub a1: f64,
    pub a2: f64,
    pub c1: f64,
    pub c2: f64,
    pub f: f64,
    pub w: f64,
    pub p: f64,
}

impl DeviationReport {
    pub fn between(x: &Trajectory, y: &Trajectory) -> Self {
        x.points
            .iter()
            .zip(&y.points)
            .fold(Self::default(), |r, (u, v)| Self {
                a1: r.a1.max((u.a[0] - v.a[0]).norm()),
                a2: r.a2.max((u.a[1] - v.a[1]).norm()),
                c1: r.c1.max((u.c[0] - v.c[0]).norm()),
                c2: r.c2.max((u.c[1] - v.c[1]).norm()),
                f: r.f.max((u.f - v.f).norm()),
                w: r.w.max((u.w - v.w).abs()),
                p: r.p.max((u.p - v.p).abs()),
            })
    }

    pub fn max_amplitude(&self) -> f64 {
        self.a1.max(self.a2)
    }

    pub fn rows(&self) -> [(&'static str, f64); 7] {
        [
            ("a1", self.a1),
            ("a2", self.a2),
            ("c1", self.c1),
            ("c2", self.c2),
            ("f", self.f),
            ("W", self.w),
            ("P", self.p),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub analytic: Option<Trajectory>,
    pub rk4: Option<Trajectory>,
    /// Present only for [`Method::Both`].
    pub deviation: Option<DeviationReport>,
}

impl RunOutput {
    /// The analytic trajectory when present, otherwise the RK4 one.
    pub fn primary(&self) -> &Trajectory {
        self.analytic
            .as_ref()
            .or(self.rk4.as_ref())
            .expect("run always produces at least one trajectory")
    }
}

/// Evaluate a scenario. With [`Method::Both`] the two solvers run on
/// separate threads.
pub fn run(scenario: &Scenario, method: Method) -> Result<RunOutput> {
    let context = |e: Error| Error::Scenario {
        name: scenario.name.clone(),
        cause: Box::new(e),
    };
    match method {
        Method::Analytic => Ok(RunOutput {
            analytic: Some(scenario.analytic_trajectory().map_err(context)?),
            rk4: None,
            deviation: None,
        }),
        Method::Rk4 => Ok(RunOutput {
            analytic: None,
            rk4: Some(scenario.rk4_trajectory().map_err(context)?),
            deviation: None,
        }),
        Method::Both => {
            let (analytic, rk4) = std::thread::scope(|s| {
                let numeric = s.spawn(|| scenario.rk4_trajectory());
                let exact = scenario.analytic_trajectory();
                (exact, numeric.join().expect("rk4 thread panicked"))
            });
            let (analytic, rk4) = (analytic.map_err(context)?, rk4.map_err(context)?);
            let deviation = DeviationReport::between(&analytic, &rk4);
            Ok(RunOutput {
                analytic: Some(analytic),
                rk4: Some(rk4),
                deviation: Some(deviation),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables;

    #[test]
    fn preset_parameters_are_pinned() {
        let d = preset("decaying").unwrap();
        assert_eq!(
            (d.params.k(), d.params.theta(), d.params.phi()),
            (1.566, -0.83, 3.14)
        );
        let h = preset("hyperbolic").unwrap();
        assert_eq!(
            (h.params.k(), h.params.theta(), h.params.phi()),
            (-0.49, -25.0, -0.54)
        );
        let t = preset("trigonometric").unwrap();
        assert_eq!(
            (t.params.k(), t.params.theta(), t.params.phi()),
            (-5.8, -25.0, 0.455)
        );
        for s in [&d, &h, &t] {
            assert_eq!(
                s.origin,
                Origin::Preset {
                    version: PRESET_VERSION
                }
            );
            assert_eq!(s.dt(), DEFAULT_DT);
            assert_eq!(s.t_min(), 0.0);
        }
        assert_eq!((d.t_max(), h.t_max(), t.t_max()), (10.0, 50.0, 50.0));
    }

    #[test]
    fn unknown_preset_lists_names() {
        let err = preset("rabi").unwrap_err();
        let msg = err.to_string();
        for name in PRESET_NAMES {
            assert!(msg.contains(name), "{msg}");
        }
    }

    #[test]
    fn decaying_initial_state_is_normalized() {
        let s = preset("decaying").unwrap();
        let init = s.initial_state().unwrap();
        assert!((observables::total_probability(&init) - 1.0).abs() < 1e-15);
        assert!(observables::population_inversion(&init) < 0.0);
        let sol = s.analytic_solution().unwrap();
        assert_eq!(sol.coefficients().alpha1, Complex64::new(0.0, 0.0));
        // the generic solver lands on the same branch up to rounding
        let generic = SolutionCoefficients::solve_at(&s.params, 0.0, init.amp1, init.amp2).unwrap();
        assert!(generic.alpha1.norm() < 1e-15);
    }

    #[test]
    fn oscillatory_presets_start_on_equator() {
        for name in ["hyperbolic", "trigonometric"] {
            let init = preset(name).unwrap().initial_state().unwrap();
            assert!(observables::population_inversion(&init).abs() < 1e-15);
            assert!((observables::total_probability(&init) - 1.0).abs() < 1e-15);
        }
        let a = preset("hyperbolic")
            .unwrap()
            .initial_state()
            .unwrap()
            .to_a_frame();
        assert!((a.amp1 - Complex64::new(1.0, 0.0)).norm() < 1e-15 && a.amp2.norm() < 1e-15);
    }

    #[test]
    fn trigonometric_preset_is_pole_free() {
        let s = preset("trigonometric").unwrap();
        assert!(s.params.phi() != 0.0);
        let sp = s.superpotential().unwrap();
        for t in s.grid().times() {
            assert!(sp.eval(t).unwrap().f.norm() < 10.0);
        }
    }

    #[test]
    fn decaying_rule_requires_positive_k() {
        let p = ModelParams::new(-2.0, 0.0, 0.3).unwrap();
        let err = Scenario::new("x", p, InitialSpec::DecayingLimit, 0.0, 1.0, 1e-3).unwrap_err();
        assert!(matches!(err, Error::RegimeMismatch { .. }));
    }

    #[test]
    fn magnitude_cap_env_parsing() {
        assert_eq!(parse_magnitude_cap(None).unwrap(), DEFAULT_MAGNITUDE_CAP);
        assert_eq!(parse_magnitude_cap(Some("1e6")).unwrap(), 1e6);
        assert!(parse_magnitude_cap(Some("abc")).is_err());
        assert!(parse_magnitude_cap(Some("-1")).is_err());
        assert!(parse_magnitude_cap(Some("inf")).is_err());
    }

    #[test]
    fn method_parsing() {
        assert_eq!("both".parse::<Method>().unwrap(), Method::Both);
        assert!("euler".parse::<Method>().is_err());
    }

    #[test]
    fn both_reports_deviation() {
        let s = preset("hyperbolic").unwrap().with_t_max(5.0).unwrap();
        let out = run(&s, Method::Both).unwrap();
        let dev = out.deviation.unwrap();
        assert!(dev.max_amplitude() < 1e-9, "{dev:?}");
        assert_eq!(dev.f, 0.0);
        assert_eq!(out.analytic.unwrap().len(), out.rk4.unwrap().len());
    }

    #[test]
    fn run_errors_carry_scenario_name() {
        let p = ModelParams::new(4.0, 0.0, 0.3).unwrap();
        let init = InitialSpec::Explicit {
            frame: Frame::AFrame,
            amp1: Complex64::new(1.0, 0.0),
            amp2: Complex64::new(0.0, 0.0),
        };
        let s = Scenario::new("runaway", p, init, 0.0, 50.0, 1e-3)
            .unwrap()
            .with_magnitude_cap(1e6)
            .unwrap();
        let msg = run(&s, Method::Rk4).unwrap_err().to_string();
        assert!(msg.contains("runaway") && msg.contains("overflow"), "{msg}");
    }
}
