//! Reduced unit system.
//!
//! Every quantity inside the library is dimensionless: ħ = c = ε₀ = μ₀ = 1,
//! frequencies are measured in the lowest atomic transition frequency ω₁₀,
//! lengths in c/ω₁₀ and dipole moments in |d₁₀|. Potentials leave the
//! library in units of
//!
//! ```text
//! U₀ = ω₁₀³ |d₁₀|² / (12 π² ε₀ c³)
//! ```
//!
//! which in internal units is simply `1 / (12π²)`. Forces are reported in
//! U₀ ω₁₀ / c.

use std::f64::consts::PI;

/// Potential unit U₀ expressed in internal units.
pub const POTENTIAL_UNIT: f64 = 1.0 / (12.0 * PI * PI);

/// Converts an internal energy into multiples of U₀.
#[inline]
pub fn in_potential_units(internal: f64) -> f64 {
    internal / POTENTIAL_UNIT
}

const HBAR: f64 = 1.054_571_817e-34;
const SPEED_OF_LIGHT: f64 = 299_792_458.0;
const VACUUM_PERMITTIVITY: f64 = 8.854_187_8128e-12;

/// Anchors the reduced units to SI for a concrete atom.
///
/// Only used at the boundary (reporting); nothing inside the engine touches SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedUnits {
    /// Transition frequency ω₁₀ in rad/s.
    pub omega_10: f64,
    /// Transition dipole moment |d₁₀| in C·m.
    pub dipole_10: f64,
}

impl ReducedUnits {
    pub fn new(omega_10: f64, dipole_10: f64) -> Self {
        Self {
            omega_10,
            dipole_10,
        }
    }

    /// Length unit c/ω₁₀ in metres.
    pub fn length_unit(&self) -> f64 {
        SPEED_OF_LIGHT / self.omega_10
    }

    /// Potential unit U₀ in joules.
    pub fn potential_unit(&self) -> f64 {
        self.omega_10.powi(3) * self.dipole_10.powi(2)
            / (12.0 * PI * PI * VACUUM_PERMITTIVITY * SPEED_OF_LIGHT.powi(3))
    }

    /// Force unit U₀ ω₁₀ / c in newtons.
    pub fn force_unit(&self) -> f64 {
        self.potential_unit() / self.length_unit()
    }

    /// The atomic energy scale ħω₁₀ in joules, handy for sanity checks.
    pub fn transition_energy(&self) -> f64 {
        HBAR * self.omega_10
    }

    pub fn frequency_to_si(&self, reduced: f64) -> f64 {
        reduced * self.omega_10
    }

    pub fn length_to_si(&self, reduced: f64) -> f64 {
        reduced * self.length_unit()
    }

    pub fn potential_to_si(&self, reduced: f64) -> f64 {
        reduced * self.potential_unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_unit_round_trip() {
        assert!((in_potential_units(POTENTIAL_UNIT) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn si_units_scale_consistently() {
        let u = ReducedUnits::new(2.0e15, 1.0e-29);
        let l = u.length_unit();
        assert!((l - SPEED_OF_LIGHT / 2.0e15).abs() / l < 1e-15);
        assert!((u.force_unit() * l - u.potential_unit()).abs() / u.potential_unit() < 1e-14);
        // Doubling ω₁₀ multiplies U₀ by eight.
        let u2 = ReducedUnits::new(4.0e15, 1.0e-29);
        assert!((u2.potential_unit() / u.potential_unit() - 8.0).abs() < 1e-12);
    }
}
