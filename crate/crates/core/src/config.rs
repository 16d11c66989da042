//! Flat JSON scenario configuration.
//!
//! ```json
//! {
//!   "k": -0.49, "theta": -25, "phi": -0.54,
//!   "t_min": 0, "t_max": 50, "dt": 0.001,
//!   "frame": "c",
//!   "initial_rule": "explicit",
//!   "initial_1_re": 0.7071067811865476, "initial_1_im": 0,
//!   "initial_2_re": 0.7071067811865476, "initial_2_im": 0
//! }
//! ```
//!
//! Required keys: `k`, `theta`, `phi`, `t_max`, `dt`, `initial_rule`
//! (`explicit` or `decaying_limit`). Optional: `t_min` (default 0) and
//! `frame` (`a` or `c`, default `a`). The four `initial_*` keys are required
//! for `explicit` and rejected for `decaying_limit`; `decaying_limit` with
//! `k <= 0` fails with [`Error::RegimeMismatch`].
//! Unknown keys are rejected. All problems are reported together.

use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::error::{ConfigDiagnostic, Error, Result};
use crate::params::ModelParams;
use crate::scenario::{InitialSpec, Scenario};
use crate::state::Frame;

pub const KEYS: [&str; 12] = [
    "k",
    "theta",
    "phi",
    "t_min",
    "t_max",
    "dt",
    "frame",
    "initial_1_re",
    "initial_1_im",
    "initial_2_re",
    "initial_2_im",
    "initial_rule",
];

const INITIAL_KEYS: [&str; 4] = [
    "initial_1_re",
    "initial_1_im",
    "initial_2_re",
    "initial_2_im",
];

struct Reader<'a> {
    map: &'a Map<String, Value>,
    diags: Vec<ConfigDiagnostic>,
}

impl Reader<'_> {
    fn push(&mut self, key: &str, message: impl Into<String>) {
        self.diags.push(ConfigDiagnostic {
            key: key.to_string(),
            message: message.into(),
        });
    }

    fn number(&mut self, key: &str, required: bool) -> Option<f64> {
        match self.map.get(key) {
            None => {
                if required {
                    self.push(key, "missing");
                }
                None
            }
            Some(Value::Number(n)) => match n.as_f64() {
                Some(v) if v.is_finite() => Some(v),
                _ => {
                    self.push(key, "out of range: not a finite number");
                    None
                }
            },
            Some(other) => {
                self.push(
                    key,
                    format!("wrong type: expected a number, got {}", type_name(other)),
                );
                None
            }
        }
    }

    fn string(&mut self, key: &str, required: bool) -> Option<&str> {
        match self.map.get(key) {
            None => {
                if required {
                    self.push(key, "missing");
                }
                None
            }
            Some(Value::String(s)) => Some(s.as_str()),
            Some(other) => {
                self.push(
                    key,
                    format!("wrong type: expected a string, got {}", type_name(other)),
                );
                None
            }
        }
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

/// Parse and validate a configuration document into a custom [`Scenario`].
pub fn parse_config(text: &str) -> Result<Scenario> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Error::Config(vec![ConfigDiagnostic {
            key: "<document>".into(),
            message: format!("not valid JSON: {e}"),
        }])
    })?;
    let Value::Object(map) = &value else {
        return Err(Error::Config(vec![ConfigDiagnostic {
            key: "<document>".into(),
            message: format!("expected a flat object, got {}", type_name(&value)),
        }]));
    };

    let mut r = Reader {
        map,
        diags: Vec::new(),
    };
    for key in map.keys() {
        if !KEYS.contains(&key.as_str()) {
            r.push(
                key,
                format!("unknown key (expected one of: {})", KEYS.join(", ")),
            );
        }
    }

    let k = r.number("k", true);
    let theta = r.number("theta", true);
    let phi = r.number("phi", true);
    let t_min = r.number("t_min", false).unwrap_or(0.0);
    let t_max = r.number("t_max", true);
    let dt = r.number("dt", true);

    let frame = match r.string("frame", false) {
        None | Some("a") => Some(Frame::AFrame),
        Some("c") => Some(Frame::CFrame),
        Some(other) => {
            let msg = format!("out of range: expected \"a\" or \"c\", got {other:?}");
            r.push("frame", msg);
            None
        }
    };

    if let Some(dt) = dt {
        if dt <= 0.0 {
            r.push("dt", format!("out of range: must be > 0, got {dt}"));
        }
    }
    if let Some(t_max) = t_max {
        if t_max < t_min {
            r.push(
                "t_max",
                format!("out of range: must be >= t_min ({t_min}), got {t_max}"),
            );
        }
    }

    let rule = r.string("initial_rule", true).map(str::to_owned);
    let initial = match rule.as_deref() {
        Some("explicit") => {
            let v: Vec<Option<f64>> = INITIAL_KEYS.iter().map(|key| r.number(key, true)).collect();
            match (v[0], v[1], v[2], v[3], frame) {
                (Some(r1), Some(i1), Some(r2), Some(i2), Some(frame)) => {
                    if r1 == 0.0 && i1 == 0.0 && r2 == 0.0 && i2 == 0.0 {
                        r.push(
                            "initial_1_re",
                            "out of range: initial amplitudes are both zero",
                        );
                        None
                    } else {
                        Some(InitialSpec::Explicit {
                            frame,
                            amp1: Complex64::new(r1, i1),
                            amp2: Complex64::new(r2, i2),
                        })
                    }
                }
                _ => None,
            }
        }
        Some("decaying_limit") => {
            for key in INITIAL_KEYS {
                if map.contains_key(key) {
                    r.push(key, "not allowed with initial_rule \"decaying_limit\"");
                }
            }
            if map.get("frame").is_some_and(|f| f != "a") {
                r.push(
                    "frame",
                    "decaying_limit initial states are given in the a-frame",
                );
            }
            Some(InitialSpec::DecayingLimit)
        }
        Some(other) => {
            let msg =
                format!("out of range: expected \"explicit\" or \"decaying_limit\", got {other:?}");
            r.push("initial_rule", msg);
            None
        }
        None => None,
    };

    let params = match (k, theta, phi) {
        (Some(k), Some(theta), Some(phi)) => match ModelParams::new(k, theta, phi) {
            Ok(p) => Some(p),
            Err(e) => {
                r.push("k", e.to_string());
                None
            }
        },
        _ => None,
    };

    if !r.diags.is_empty() {
        return Err(Error::Config(r.diags));
    }
    let (Some(params), Some(initial), Some(t_max), Some(dt)) = (params, initial, t_max, dt) else {
        unreachable!("every missing value records a diagnostic");
    };
    Scenario::new("custom", params, initial, t_min, t_max, dt).map_err(|e| match e {
        Error::RegimeMismatch { .. } => e,
        other => Error::Config(vec![ConfigDiagnostic {
            key: "<scenario>".into(),
            message: other.to_string(),
        }]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_keys(err: Error) -> Vec<String> {
        match err {
            Error::Config(d) => d.into_iter().map(|d| d.key).collect(),
            other => panic!("expected config error, got {other}"),
        }
    }

    #[test]
    fn explicit_config() {
        let s = parse_config(
            r#"{"k": -0.49, "theta": -25, "phi": -0.54, "t_min": 0, "t_max": 50, "dt": 0.001,
                "frame": "c", "initial_rule": "explicit",
                "initial_1_re": 0.7071067811865476, "initial_1_im": 0,
                "initial_2_re": 0.7071067811865476, "initial_2_im": 0}"#,
        )
        .unwrap();
        assert_eq!(s.params.k(), -0.49);
        assert_eq!(s.frame(), Frame::CFrame);
        assert_eq!(s.grid().n_steps(), 50_000);
        let text = s.describe();
        for needle in [
            "k: -0.49",
            "theta: -25",
            "phi: -0.54",
            "dt: 0.001",
            "frame: c",
            "initial_rule: explicit",
        ] {
            assert!(text.contains(needle), "{needle} missing in\n{text}");
        }
    }

    #[test]
    fn decaying_limit_needs_positive_k() {
        let err = parse_config(r#"{"k": -2, "theta": 0, "phi": 0.1, "t_max": 1, "dt": 0.01, "initial_rule": "decaying_limit"}"#)
            .unwrap_err();
        assert!(
            matches!(err, Error::RegimeMismatch { k, .. } if k == -2.0),
            "{err}"
        );
        let ok = parse_config(
            r#"{"k": 2, "theta": 0, "phi": 0.1, "t_max": 1, "dt": 0.01, "initial_rule": "decaying_limit"}"#,
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn per_key_diagnostics() {
        let err = parse_config(r#"{"k": "big", "phi": 0.1, "t_max": 1, "dt": -1, "initial_rule": "explicit", "initial_1_re": 1, "colour": 3}"#)
            .unwrap_err();
        let keys = diag_keys(err);
        for key in [
            "colour",
            "k",
            "theta",
            "dt",
            "initial_1_im",
            "initial_2_re",
            "initial_2_im",
        ] {
            assert!(
                keys.iter().any(|k| k == key),
                "{key} not reported in {keys:?}"
            );
        }
    }

    #[test]
    fn rejects_non_objects_and_bad_json() {
        assert!(matches!(parse_config("[1, 2]"), Err(Error::Config(_))));
        assert!(matches!(parse_config("{k: 1}"), Err(Error::Config(_))));
        let keys = diag_keys(
            parse_config(
                r#"{"k": 1, "theta": 0, "phi": 0, "t_max": 1, "dt": 0.1, "initial_rule": "magic"}"#,
            )
            .unwrap_err(),
        );
        assert_eq!(keys, vec!["initial_rule".to_string()]);
    }

    #[test]
    fn decaying_limit_rejects_amplitudes() {
        let keys = diag_keys(
            parse_config(r#"{"k": 1, "theta": 0, "phi": 0, "t_max": 1, "dt": 0.1, "initial_rule": "decaying_limit", "initial_1_re": 1}"#)
                .unwrap_err(),
        );
        assert_eq!(keys, vec!["initial_1_re".to_string()]);
    }
}
