//! Two-component amplitudes and the pi/4 spin rotation between frames.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

/// Frame an amplitude pair is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    /// Rotated frame with Hamiltonian `i f sigma_z - sigma_x` (amplitudes `a1`, `a2`).
    AFrame,
    /// Lab frame with Hamiltonian `sigma_z + i f sigma_x` (amplitudes `c1`, `c2`).
    CFrame,
}

impl Frame {
    pub fn short_name(self) -> &'static str {
        match self {
            Frame::AFrame => "a",
            Frame::CFrame => "c",
        }
    }
}

/// Amplitudes at time `t`. No normalization is imposed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorState {
    pub t: f64,
    pub amp1: Complex64,
    pub amp2: Complex64,
    pub frame: Frame,
}

impl SpinorState {
    pub fn new(t: f64, amp1: Complex64, amp2: Complex64, frame: Frame) -> Self {
        Self {
            t,
            amp1,
            amp2,
            frame,
        }
    }

    pub fn a_frame(t: f64, a1: Complex64, a2: Complex64) -> Self {
        Self::new(t, a1, a2, Frame::AFrame)
    }

    pub fn c_frame(t: f64, c1: Complex64, c2: Complex64) -> Self {
        Self::new(t, c1, c2, Frame::CFrame)
    }

    /// `c = (1/sqrt 2) [[1, -1], [1, 1]] a`. Identity on c-frame input.
    pub fn to_c_frame(self) -> Self {
        match self.frame {
            Frame::CFrame => self,
            Frame::AFrame => Self::c_frame(
                self.t,
                (self.amp1 - self.amp2) * FRAC_1_SQRT_2,
                (self.amp1 + self.amp2) * FRAC_1_SQRT_2,
            ),
        }
    }

    /// Inverse rotation `a = (1/sqrt 2) [[1, 1], [-1, 1]] c`. Identity on a-frame input.
    pub fn to_a_frame(self) -> Self {
        match self.frame {
            Frame::AFrame => self,
            Frame::CFrame => Self::a_frame(
                self.t,
                (self.amp1 + self.amp2) * FRAC_1_SQRT_2,
                (self.amp2 - self.amp1) * FRAC_1_SQRT_2,
            ),
        }
    }

    pub fn to_frame(self, frame: Frame) -> Self {
        match frame {
            Frame::AFrame => self.to_a_frame(),
            Frame::CFrame => self.to_c_frame(),
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.amp1, self.amp2]
    }

    pub fn max_modulus(&self) -> f64 {
        self.amp1.norm().max(self.amp2.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_vectors_rotate() {
        let s = SpinorState::a_frame(0.0, c(1.0, 0.0), c(0.0, 0.0)).to_c_frame();
        assert_eq!(s.amp1, c(FRAC_1_SQRT_2, 0.0));
        assert_eq!(s.amp2, c(FRAC_1_SQRT_2, 0.0));
        let s = SpinorState::a_frame(0.0, c(0.0, 0.0), c(1.0, 0.0)).to_c_frame();
        assert_eq!(s.amp1, c(-FRAC_1_SQRT_2, 0.0));
        assert_eq!(s.amp2, c(FRAC_1_SQRT_2, 0.0));
    }

    #[test]
    fn equal_superposition_is_a_frame_unit_vector() {
        let s =
            SpinorState::c_frame(0.0, c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).to_a_frame();
        assert!((s.amp1 - c(1.0, 0.0)).norm() < 1e-15);
        assert!(s.amp2.norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn frame_round_trip(
            re1 in -1e3f64..1e3, im1 in -1e3f64..1e3,
            re2 in -1e3f64..1e3, im2 in -1e3f64..1e3,
        ) {
            let s = SpinorState::c_frame(0.5, c(re1, im1), c(re2, im2));
            let back = s.to_a_frame().to_c_frame();
            let scale = s.max_modulus().max(f64::MIN_POSITIVE);
            prop_assert_eq!(back.frame, Frame::CFrame);
            prop_assert!((back.amp1 - s.amp1).norm() <= 1e-14 * scale);
            prop_assert!((back.amp2 - s.amp2).norm() <= 1e-14 * scale);
            let a = SpinorState::a_frame(0.5, c(re1, im1), c(re2, im2));
            let back = a.to_c_frame().to_a_frame();
            prop_assert!((back.amp1 - a.amp1).norm() <= 1e-14 * scale);
            prop_assert!((back.amp2 - a.amp2).norm() <= 1e-14 * scale);
        }
    }
}
