//! Drude–Lorentz media and the atomic polarisability on the imaginary
//! frequency axis.
//!
//! With ω = iξ the single-resonance responses become real and monotone,
//!
//! ```text
//! ε(iξ) = 1 + ω_Pe² / (ω_Te² + ξ² + γ_e ξ)
//! μ(iξ) = 1 + ω_Pm² / (ω_Tm² + ξ² + γ_m ξ)
//! α(iξ) = (2/3) Σ_k ω_k0 |d_k|² / (ω_k0² + ξ²)
//! ```
//!
//! so nothing complex ever leaves this module.

use crate::error::{Error, Result};

/// One Lorentz oscillator: transverse (resonance) frequency, plasma
/// frequency and damping, all in units of ω₁₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub transverse: f64,
    pub plasma: f64,
    pub damping: f64,
}

impl Resonance {
    pub const NONE: Resonance = Resonance {
        transverse: 1.0,
        plasma: 0.0,
        damping: 0.0,
    };

    pub fn new(transverse: f64, plasma: f64, damping: f64) -> Self {
        Self {
            transverse,
            plasma,
            damping,
        }
    }

    /// Response function 1 + ω_P²/(ω_T² + ξ² + γξ) at imaginary frequency ξ.
    #[inline]
    pub fn at_imaginary(&self, xi: f64) -> f64 {
        if self.plasma == 0.0 {
            return 1.0;
        }
        1.0 + self.plasma * self.plasma
            / (self.transverse * self.transverse + xi * xi + self.damping * xi)
    }

    pub fn is_active(&self) -> bool {
        self.plasma > 0.0
    }

    fn check(&self, what: &str) -> std::result::Result<(), String> {
        let finite = self.transverse.is_finite() && self.plasma.is_finite() && self.damping.is_finite();
        if !finite {
            return Err(format!("{what} parameters must be finite"));
        }
        if self.transverse < 0.0 || self.plasma < 0.0 || self.damping < 0.0 {
            return Err(format!("{what} parameters must be non-negative"));
        }
        if self.plasma > 0.0 && self.transverse == 0.0 {
            return Err(format!(
                "{what} resonance frequency must be positive when the plasma frequency is (metals are not supported)"
            ));
        }
        Ok(())
    }
}

/// Magnetodielectric medium with one electric and one magnetic resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialModel {
    pub electric: Resonance,
    pub magnetic: Resonance,
}

impl Default for MaterialModel {
    fn default() -> Self {
        Self::vacuum()
    }
}

impl MaterialModel {
    pub fn vacuum() -> Self {
        Self {
            electric: Resonance::NONE,
            magnetic: Resonance::NONE,
        }
    }

    pub fn new(electric: Resonance, magnetic: Resonance) -> Self {
        Self { electric, magnetic }
    }

    /// Purely electric medium (μ ≡ 1).
    pub fn dielectric(transverse: f64, plasma: f64, damping: f64) -> Self {
        Self {
            electric: Resonance::new(transverse, plasma, damping),
            magnetic: Resonance::NONE,
        }
    }

    /// Purely magnetic medium (ε ≡ 1).
    pub fn magnetic(transverse: f64, plasma: f64, damping: f64) -> Self {
        Self {
            electric: Resonance::NONE,
            magnetic: Resonance::new(transverse, plasma, damping),
        }
    }

    #[inline]
    pub fn eps(&self, xi: f64) -> f64 {
        self.electric.at_imaginary(xi)
    }

    #[inline]
    pub fn mu(&self, xi: f64) -> f64 {
        self.magnetic.at_imaginary(xi)
    }

    pub fn static_eps(&self) -> f64 {
        self.eps(0.0)
    }

    pub fn static_mu(&self) -> f64 {
        self.mu(0.0)
    }

    /// Static refractive index √(ε(0)μ(0)).
    pub fn static_index(&self) -> f64 {
        (self.static_eps() * self.static_mu()).sqrt()
    }

    pub fn is_vacuum(&self) -> bool {
        !self.electric.is_active() && !self.magnetic.is_active()
    }

    /// Largest resonance frequency among the active oscillators, if any.
    pub fn max_resonance(&self) -> Option<f64> {
        [self.electric, self.magnetic]
            .iter()
            .filter(|r| r.is_active())
            .map(|r| r.transverse)
            .fold(None, |acc, w| Some(acc.map_or(w, |a: f64| a.max(w))))
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        self.electric.check("electric")?;
        self.magnetic.check("magnetic")
    }
}

/// ε(iξ) of a medium.
pub fn eps_at(material: &MaterialModel, xi: f64) -> f64 {
    material.eps(xi)
}

/// μ(iξ) of a medium.
pub fn mu_at(material: &MaterialModel, xi: f64) -> f64 {
    material.mu(xi)
}

/// Dipole transition from the ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    /// ω_k0 in units of ω₁₀.
    pub frequency: f64,
    /// |d⁰ᵏ|² in units of |d₁₀|².
    pub dipole_sq: f64,
}

/// Ground-state atom described by its dipole transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomModel {
    transitions: Vec<Transition>,
}

impl Default for AtomModel {
    fn default() -> Self {
        Self::two_level()
    }
}

impl AtomModel {
    /// Two-level atom with ω₁₀ = |d₁₀| = 1.
    pub fn two_level() -> Self {
        Self {
            transitions: vec![Transition {
                frequency: 1.0,
                dipole_sq: 1.0,
            }],
        }
    }

    pub fn new(transitions: Vec<Transition>) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::InvalidParameter("atom needs at least one transition".into()));
        }
        for (k, t) in transitions.iter().enumerate() {
            if !(t.frequency.is_finite() && t.frequency > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "transition {k}: frequency must be positive"
                )));
            }
            if !(t.dipole_sq.is_finite() && t.dipole_sq >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "transition {k}: squared dipole must be non-negative"
                )));
            }
        }
        Ok(Self { transitions })
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// α(iξ) in reduced units.
    #[inline]
    pub fn alpha(&self, xi: f64) -> f64 {
        let xi2 = xi * xi;
        let sum: f64 = self
            .transitions
            .iter()
            .map(|t| t.frequency * t.dipole_sq / (t.frequency * t.frequency + xi2))
            .sum();
        2.0 / 3.0 * sum
    }

    pub fn static_alpha(&self) -> f64 {
        self.alpha(0.0)
    }

    pub fn min_frequency(&self) -> f64 {
        self.transitions
            .iter()
            .map(|t| t.frequency)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_frequency(&self) -> f64 {
        self.transitions.iter().map(|t| t.frequency).fold(0.0, f64::max)
    }
}

/// α(iξ) of an atom.
pub fn alpha_at(atom: &AtomModel, xi: f64) -> f64 {
    atom.alpha(xi)
}
