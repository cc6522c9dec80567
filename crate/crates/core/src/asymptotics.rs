//! Asymptotic coefficients of U₂ for an atom in medium 2 facing medium 1,
//!
//! ```text
//! U₂ ≈ C₄/z⁴            (retarded, z ≫ 1/ω_min)
//! U₂ ≈ −C₃/z³ + C₁/z    (non-retarded, z(n₁+n₂) ≪ 1/ω_max)
//! ```
//!
//! together with the small-contrast closed form of C₄ and the dielectric
//! sphere formulas used to compare the microscopic result with the
//! macroscopic excess-polarisability picture. All coefficients are in
//! units of U₀ times the matching power of c/ω₁₀.

use std::f64::consts::PI;

use crate::cavity::local_field_factor;
use crate::error::{Error, Result};
use crate::material::{AtomModel, MaterialModel};
use crate::quadrature::{integrate_half_line, HalfLine, QuadratureResult, QuadratureSpec};
use crate::units::POTENTIAL_UNIT;

/// Static (ξ = 0) responses of the two half-spaces, atom in medium 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticPair {
    pub eps1: f64,
    pub mu1: f64,
    pub eps2: f64,
    pub mu2: f64,
}

impl StaticPair {
    pub fn new(eps1: f64, mu1: f64, eps2: f64, mu2: f64) -> Self {
        Self { eps1, mu1, eps2, mu2 }
    }

    pub fn from_materials(medium1: &MaterialModel, medium2: &MaterialModel) -> Self {
        Self::new(
            medium1.static_eps(),
            medium1.static_mu(),
            medium2.static_eps(),
            medium2.static_mu(),
        )
    }

    fn check(&self) -> Result<()> {
        let ok = [self.eps1, self.mu1, self.eps2, self.mu2]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("static responses must be positive: {self:?}")))
        }
    }
}

/// Retarded coefficient
/// C₄ = (3/64π²) α(0) LF(ε₂) μ₂ ∫_{n₂}^∞ v⁻⁴ [r_s(v) + r_p(v)(1 − 2v²/n₂²)] dv
/// with n₂² = ε₂μ₂ and √(v² − n₂² + n₁²) for the medium-1 wavenumber.
pub fn c4_retarded(pair: &StaticPair, alpha0: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    pair.check()?;
    let StaticPair { eps1, mu1, eps2, mu2 } = *pair;
    let n2sq = eps2 * mu2;
    let n1sq = eps1 * mu1;
    let n2 = n2sq.sqrt();
    let integral = integrate_half_line(
        |v| {
            let s = (v * v - n2sq + n1sq).sqrt();
            let rs = (mu1 * v - mu2 * s) / (mu1 * v + mu2 * s);
            let rp = (eps1 * v - eps2 * s) / (eps1 * v + eps2 * s);
            (rs + rp * (1.0 - 2.0 * v * v / n2sq)) / v.powi(4)
        },
        HalfLine::new(n2, n2),
        spec,
    )?;
    let prefactor = 3.0 / (64.0 * PI * PI) * alpha0 * local_field_factor(eps2) * mu2 / POTENTIAL_UNIT;
    Ok(integral.scaled(prefactor))
}

/// Small-contrast form with χ = ε₁ − ε₂, ζ = μ₁ − μ₂:
/// C₄ ≈ (9/640π²) α(0) (−23μ₂χ + 7ε₂ζ) / (√(ε₂μ₂) μ₂ (2ε₂+1)²).
pub fn c4_small_contrast(eps2: f64, mu2: f64, chi: f64, zeta: f64, alpha0: f64) -> f64 {
    9.0 / (640.0 * PI * PI) * alpha0 * (-23.0 * mu2 * chi + 7.0 * eps2 * zeta)
        / ((eps2 * mu2).sqrt() * mu2 * (2.0 * eps2 + 1.0).powi(2))
        / POTENTIAL_UNIT
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Positive,
    /// |derivative| below the noise floor.
    Inconclusive,
}

impl Sign {
    pub fn of(x: f64, floor: f64) -> Self {
        if x.abs() < floor || !x.is_finite() {
            Sign::Inconclusive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

/// Central-difference step used by [`c4_derivatives`].
pub const DERIVATIVE_STEP: f64 = 1e-4;
/// Derivatives smaller than this are reported as inconclusive.
pub const DERIVATIVE_NOISE_FLOOR: f64 = 1e-10;

/// ∂C₄/∂ε₁(0), ∂C₄/∂μ₁(0), ∂C₄/∂μ₂(0) by central differences.
pub fn c4_derivatives(pair: &StaticPair, alpha0: f64, spec: &QuadratureSpec) -> Result<[f64; 3]> {
    let h = DERIVATIVE_STEP;
    let c4 = |p: StaticPair| c4_retarded(&p, alpha0, spec).map(|r| r.value);
    let d_eps1 = (c4(StaticPair { eps1: pair.eps1 + h, ..*pair })?
        - c4(StaticPair { eps1: pair.eps1 - h, ..*pair })?)
        / (2.0 * h);
    let d_mu1 = (c4(StaticPair { mu1: pair.mu1 + h, ..*pair })?
        - c4(StaticPair { mu1: pair.mu1 - h, ..*pair })?)
        / (2.0 * h);
    let d_mu2 = (c4(StaticPair { mu2: pair.mu2 + h, ..*pair })?
        - c4(StaticPair { mu2: pair.mu2 - h, ..*pair })?)
        / (2.0 * h);
    Ok([d_eps1, d_mu1, d_mu2])
}

/// Signs of the three derivatives of [`c4_derivatives`].
pub fn c4_derivative_signs(pair: &StaticPair, alpha0: f64, spec: &QuadratureSpec) -> Result<[Sign; 3]> {
    let d = c4_derivatives(pair, alpha0, spec)?;
    Ok(d.map(|x| Sign::of(x, DERIVATIVE_NOISE_FLOOR)))
}

fn xi_line(atom: &AtomModel) -> HalfLine {
    HalfLine::new(0.0, atom.min_frequency())
}

/// C₃ = (1/16π²) ∫ α 9ε₂/(2ε₂+1)² (ε₁−ε₂)/(ε₁+ε₂) dξ.
pub fn c3_nonretarded(
    medium1: &MaterialModel,
    medium2: &MaterialModel,
    atom: &AtomModel,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let r = integrate_half_line(
        |xi| {
            let (e1, e2) = (medium1.eps(xi), medium2.eps(xi));
            if e1 == e2 {
                return 0.0;
            }
            atom.alpha(xi) * 9.0 * e2 / (2.0 * e2 + 1.0).powi(2) * (e1 - e2) / (e1 + e2)
        },
        xi_line(atom),
        spec,
    )?;
    Ok(r.scaled(1.0 / (16.0 * PI * PI) / POTENTIAL_UNIT))
}

/// General C₁ = (1/16π²) ∫ ξ² α μ₂ LF(ε₂) [(μ₁−μ₂)/(μ₁+μ₂) + (ε₁−ε₂)/(ε₁+ε₂)
/// + 2ε₁(ε₁μ₁−ε₂μ₂)/(μ₂(ε₁+ε₂)²)] dξ.
pub fn c1_nonretarded(
    medium1: &MaterialModel,
    medium2: &MaterialModel,
    atom: &AtomModel,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let r = integrate_half_line(
        |xi| {
            let (e1, m1, e2, m2) = (medium1.eps(xi), medium1.mu(xi), medium2.eps(xi), medium2.mu(xi));
            let bracket = (m1 - m2) / (m1 + m2)
                + (e1 - e2) / (e1 + e2)
                + 2.0 * e1 * (e1 * m1 - e2 * m2) / (m2 * (e1 + e2).powi(2));
            if bracket == 0.0 {
                return 0.0;
            }
            xi * xi * atom.alpha(xi) * m2 * local_field_factor(e2) * bracket
        },
        xi_line(atom),
        spec,
    )?;
    Ok(r.scaled(1.0 / (16.0 * PI * PI) / POTENTIAL_UNIT))
}

/// C₁ for media with identical electric response:
/// (1/16π²) ∫ ξ² α LF(ε₂) (μ₁−μ₂)(μ₂/(μ₁+μ₂) + 1/2) dξ.
pub fn c1_equal_electric(
    medium1: &MaterialModel,
    medium2: &MaterialModel,
    atom: &AtomModel,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let r = integrate_half_line(
        |xi| {
            let (m1, m2) = (medium1.mu(xi), medium2.mu(xi));
            if m1 == m2 {
                return 0.0;
            }
            let e2 = medium2.eps(xi);
            xi * xi * atom.alpha(xi) * local_field_factor(e2) * (m1 - m2) * (m2 / (m1 + m2) + 0.5)
        },
        xi_line(atom),
        spec,
    )?;
    Ok(r.scaled(1.0 / (16.0 * PI * PI) / POTENTIAL_UNIT))
}

/// Distances delimiting the two asymptotic regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeBounds {
    /// Retarded regime requires z ≫ this (1/ω_min over atom and media).
    pub retarded_above: f64,
    /// Non-retarded regime requires z ≪ this (1/(ω_max (n₁(0)+n₂(0)))).
    pub nonretarded_below: f64,
}

pub fn regime_bounds(medium1: &MaterialModel, medium2: &MaterialModel, atom: &AtomModel) -> RegimeBounds {
    let resonances = [medium1, medium2]
        .into_iter()
        .flat_map(|m| [m.electric, m.magnetic])
        .filter(|r| r.is_active())
        .map(|r| r.transverse);
    let (lo, hi) = resonances.fold((atom.min_frequency(), atom.max_frequency()), |(lo, hi), w| {
        (lo.min(w), hi.max(w))
    });
    RegimeBounds {
        retarded_above: 1.0 / lo,
        nonretarded_below: 1.0 / (hi * (medium1.static_index() + medium2.static_index())),
    }
}

/// Everything the coefficient report needs for one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoefficients {
    pub c4: QuadratureResult,
    pub c4_small_contrast: f64,
    pub c3: QuadratureResult,
    pub c1: QuadratureResult,
    pub derivative_signs: [Sign; 3],
    pub regime: RegimeBounds,
}

pub fn coefficients(
    medium1: &MaterialModel,
    medium2: &MaterialModel,
    atom: &AtomModel,
    spec: &QuadratureSpec,
) -> Result<AsymptoticCoefficients> {
    let pair = StaticPair::from_materials(medium1, medium2);
    let alpha0 = atom.static_alpha();
    Ok(AsymptoticCoefficients {
        c4: c4_retarded(&pair, alpha0, spec)?,
        c4_small_contrast: c4_small_contrast(
            pair.eps2,
            pair.mu2,
            pair.eps1 - pair.eps2,
            pair.mu1 - pair.mu2,
            alpha0,
        ),
        c3: c3_nonretarded(medium1, medium2, atom, spec)?,
        c1: c1_nonretarded(medium1, medium2, atom, spec)?,
        derivative_signs: c4_derivative_signs(&pair, alpha0, spec)?,
        regime: regime_bounds(medium1, medium2, atom),
    })
}

/// Excess polarisability 4πR_s³ ε₂ (ε_s − ε₂)/(ε_s + 2ε₂) of a dielectric
/// sphere dissolved in medium 2.
pub fn sphere_excess_polarizability(eps_s: f64, eps2: f64, radius: f64) -> f64 {
    4.0 * PI * radius.powi(3) * eps2 * (eps_s - eps2) / (eps_s + 2.0 * eps2)
}

/// Dielectric sphere of radius `radius` immersed in medium 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    pub material: MaterialModel,
    pub radius: f64,
}

/// Sphere potentials at distance z from the interface, macroscopic and
/// microscopic side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePotentials {
    /// −(1/16π²z³) ∫ α_s/ε₂ (ε₁−ε₂)/(ε₁+ε₂) dξ
    pub nonretarded: f64,
    /// −(23/320π²z⁴) α_s(0)/ε₂(0)^{3/2} (ε₁(0)−ε₂(0))/(ε₁(0)+ε₂(0))
    pub retarded: f64,
    /// Atom counterpart −C₃/z³ (purely dielectric media).
    pub micro_nonretarded: f64,
    /// Atom counterpart C₄/z⁴ written as the y-integral with a = ε₁(0)/ε₂(0).
    pub micro_retarded: f64,
}

fn electric_only(m: &MaterialModel, what: &str) -> Result<()> {
    if m.magnetic.is_active() {
        Err(Error::InvalidParameter(format!("{what} must be purely electric")))
    } else {
        Ok(())
    }
}

/// The y-integral of the dielectric retarded atom potential,
/// ∫_1^∞ [(y⁻⁴ − 2y⁻²) (ay − w)/(ay + w) + y⁻⁴ (y − w)/(y + w)] dy with
/// w = √(y² − 1 + a).
pub fn dielectric_retarded_integral(a: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    let r = integrate_half_line(
        |y| {
            let w = (y * y - 1.0 + a).sqrt();
            let y2 = y * y;
            let y4 = y2 * y2;
            (1.0 / y4 - 2.0 / y2) * (a * y - w) / (a * y + w) + (y - w) / (y + w) / y4
        },
        HalfLine::new(1.0, 1.0),
        spec,
    )?;
    Ok(r)
}

pub fn sphere_potentials(
    medium1: &MaterialModel,
    medium2: &MaterialModel,
    sphere: &Sphere,
    atom: &AtomModel,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<SpherePotentials> {
    electric_only(medium1, "medium 1")?;
    electric_only(medium2, "medium 2")?;
    electric_only(&sphere.material, "the sphere")?;
    if !(z > sphere.radius) {
        return Err(Error::InvalidParameter(format!(
            "sphere centre at {z} must be farther from the interface than its radius {}",
            sphere.radius
        )));
    }
    let nonretarded = integrate_half_line(
        |xi| {
            let (e1, e2) = (medium1.eps(xi), medium2.eps(xi));
            if e1 == e2 {
                return 0.0;
            }
            let a_s = sphere_excess_polarizability(sphere.material.eps(xi), e2, sphere.radius);
            a_s / e2 * (e1 - e2) / (e1 + e2)
        },
        xi_line(atom),
        spec,
    )?
    .value
        * -1.0
        / (16.0 * PI * PI * z.powi(3))
        / POTENTIAL_UNIT;
    let (e1, e2) = (medium1.static_eps(), medium2.static_eps());
    let a_s0 = sphere_excess_polarizability(sphere.material.static_eps(), e2, sphere.radius);
    let retarded = -23.0 / (320.0 * PI * PI * z.powi(4)) * a_s0 / e2.powf(1.5) * (e1 - e2) / (e1 + e2)
        / POTENTIAL_UNIT;
    let micro_nonretarded = -c3_nonretarded(medium1, medium2, atom, spec)?.value / z.powi(3);
    let y = if e1 == e2 {
        0.0
    } else {
        dielectric_retarded_integral(e1 / e2, spec)?.value
    };
    let micro_retarded = 3.0 / (64.0 * PI * PI * z.powi(4)) * atom.static_alpha() / e2.powf(1.5)
        * local_field_factor(e2)
        * y
        / POTENTIAL_UNIT;
    Ok(SpherePotentials {
        nonretarded,
        retarded,
        micro_nonretarded,
        micro_retarded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default().with_rel_tol(1e-11)
    }

    const A0: f64 = 2.0 / 3.0;

    #[test]
    fn pure_media_sign_laws() {
        let s = spec();
        let c4 = |p: StaticPair| c4_retarded(&p, A0, &s).unwrap().value;
        assert!(c4(StaticPair::new(1.5, 1.0, 1.0, 1.0)) < 0.0);
        assert!(c4(StaticPair::new(1.0, 1.5, 1.0, 1.0)) > 0.0);
        assert!(c4(StaticPair::new(1.0, 1.0, 1.5, 1.0)) > 0.0);
        assert!(c4(StaticPair::new(1.0, 1.0, 1.0, 1.5)) < 0.0);
        assert_eq!(c4(StaticPair::new(1.3, 1.2, 1.3, 1.2)), 0.0);
    }

    #[test]
    fn derivative_signs_at_moderate_contrast() {
        let s = spec();
        let a = c4_derivative_signs(&StaticPair::new(1.5, 1.0, 1.0, 1.0), A0, &s).unwrap();
        assert_eq!(a[0], Sign::Negative);
        let b = c4_derivative_signs(&StaticPair::new(1.5, 1.2, 1.1, 1.1), A0, &s).unwrap();
        assert_eq!(b[1], Sign::Positive);
        assert_eq!(b[2], Sign::Negative);
    }

    #[test]
    fn small_contrast_form() {
        let s = spec();
        let exact = c4_retarded(&StaticPair::new(1.01, 1.01, 1.0, 1.0), A0, &s).unwrap().value;
        let approx = c4_small_contrast(1.0, 1.0, 0.01, 0.01, A0);
        assert!(approx < 0.0);
        assert!((approx - exact).abs() < 0.02 * exact.abs());
        assert!(c4_small_contrast(4.0, 1.0, 0.01, 0.01, A0) > 0.0);
        assert!(c4_small_contrast(3.0, 1.0, 0.01, 0.01, A0) < 0.0);
    }

    #[test]
    fn equal_media_give_zero_c3_and_c1() {
        let s = spec();
        let atom = AtomModel::two_level();
        let m = MaterialModel::dielectric(1.03, 0.75, 0.001);
        assert_eq!(c3_nonretarded(&m, &m, &atom, &s).unwrap().value, 0.0);
        assert_eq!(c1_nonretarded(&m, &m, &atom, &s).unwrap().value, 0.0);
    }

    #[test]
    fn c1_reduces_for_equal_electric_response() {
        let s = spec();
        let atom = AtomModel::two_level();
        let e = crate::material::Resonance::new(1.03, 0.6, 0.001);
        let m1 = MaterialModel::new(e, crate::material::Resonance::new(1.0, 2.3, 0.001));
        let m2 = MaterialModel::new(e, crate::material::Resonance::new(1.0, 0.4, 0.001));
        let general = c1_nonretarded(&m1, &m2, &atom, &s).unwrap().value;
        let reduced = c1_equal_electric(&m1, &m2, &atom, &s).unwrap().value;
        assert!(general > 0.0);
        assert!((general - reduced).abs() <= 1e-10 * general.abs());
    }

    #[test]
    fn stronger_host_gives_negative_c3() {
        let s = spec();
        let atom = AtomModel::two_level();
        let m1 = MaterialModel::dielectric(1.03, 0.75, 0.001);
        let m2 = MaterialModel::dielectric(1.03, 1.0, 0.001);
        assert!(c3_nonretarded(&m1, &m2, &atom, &s).unwrap().value < 0.0);
    }

    #[test]
    fn free_space_c3() {
        // With vacuum as medium 2 the factor 9ε₂/(2ε₂+1)² is 1.
        let s = spec();
        let atom = AtomModel::two_level();
        let m1 = MaterialModel::dielectric(1.0, 0.75, 0.0);
        let c3 = c3_nonretarded(&m1, &MaterialModel::vacuum(), &atom, &s).unwrap().value;
        let plain = integrate_half_line(
            |xi| {
                let e = m1.eps(xi);
                atom.alpha(xi) * (e - 1.0) / (e + 1.0)
            },
            HalfLine::new(0.0, 1.0),
            &s,
        )
        .unwrap()
        .value
            / (16.0 * PI * PI)
            / POTENTIAL_UNIT;
        assert!((c3 - plain).abs() <= 1e-10 * plain);
    }

    #[test]
    fn excess_polarizability() {
        assert_eq!(sphere_excess_polarizability(1.7, 1.7, 0.3), 0.0);
        let r = 0.3f64;
        let big = sphere_excess_polarizability(1e12, 1.0, r);
        assert!((big / (4.0 * PI * r.powi(3)) - 1.0).abs() < 1e-9);
        let quarter = sphere_excess_polarizability(2.0, 1.0, r);
        assert!((quarter - PI * r.powi(3)).abs() < 1e-15);
    }

    #[test]
    fn sphere_and_atom_agree_in_form() {
        let s = spec();
        let atom = AtomModel::two_level();
        let m2 = MaterialModel::dielectric(1.03, 0.6, 0.001);
        let same = sphere_potentials(
            &m2,
            &m2,
            &Sphere { material: MaterialModel::dielectric(1.0, 1.2, 0.0), radius: 0.1 },
            &atom,
            1.0,
            &s,
        )
        .unwrap();
        assert_eq!(same.nonretarded, 0.0);
        assert_eq!(same.retarded, 0.0);
        // The y-integral form equals the general C₄ integral for dielectrics.
        let pair = StaticPair::new(1.8, 1.0, 1.3, 1.0);
        let c4 = c4_retarded(&pair, A0, &s).unwrap().value;
        let y = dielectric_retarded_integral(1.8 / 1.3, &s).unwrap().value;
        let c4_y = 3.0 / (64.0 * PI * PI) * A0 / 1.3f64.powf(1.5) * local_field_factor(1.3) * y / POTENTIAL_UNIT;
        assert!((c4 - c4_y).abs() <= 1e-9 * c4.abs());
    }
}
