//! Real-cavity factors and the position-independent potential U₁.
//!
//! The atom sits in an empty sphere of radius R_c carved out of a host with
//! responses ε_A, μ_A. On the imaginary axis z₀ = iξR_c and z = n z₀ with
//! n = √(ε_A μ_A), so every Hankel factor decays and every Bessel factor
//! grows exponentially. The factors are therefore formed from the scaled
//! functions of [`crate::specfun`] with the exponentials recombined in
//! closed form:
//!
//! ```text
//! C_A = e^{−2t} [ĥ(z₀)ĥ′(z) − ε ĥ(z)ĥ′(z₀)] / [ε ĥ(z)ĵ′(z₀) − ĵ(z₀)ĥ′(z)]
//! D_A = e^{(n−1)t} (ĵĥ′ − ĵ′ĥ)(z₀) / (μ [ĵ(z₀)ĥ′(z) − ε ĵ′(z₀)ĥ(z)])
//! ```
//!
//! with t = ξR_c and primes denoting the bracket derivative [x f(x)]′.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::material::{AtomModel, MaterialModel};
use crate::quadrature::{integrate_half_line, HalfLine, QuadratureResult, QuadratureSpec};
use crate::specfun::{bracket_h1_scaled, bracket_j1_scaled, h1_scaled, j1_scaled};
use crate::units::POTENTIAL_UNIT;

/// Relative size below which a cavity denominator counts as vanishing.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

/// Below this value of ξR_c the U₁ integrand is taken from its two-term
/// small-radius expansion; the neglected terms are O((ξR_c)⁴) relative.
pub const SMALL_ARGUMENT: f64 = 1e-4;

/// Host response and cavity size at one imaginary frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityContext {
    pub eps: f64,
    pub mu: f64,
    pub xi: f64,
    pub radius: f64,
}

impl CavityContext {
    pub fn new(eps: f64, mu: f64, xi: f64, radius: f64) -> Self {
        Self { eps, mu, xi, radius }
    }

    pub fn from_material(material: &MaterialModel, xi: f64, radius: f64) -> Self {
        Self::new(material.eps(xi), material.mu(xi), xi, radius)
    }

    pub fn index(&self) -> f64 {
        (self.eps * self.mu).sqrt()
    }

    /// z₀ = iξR_c.
    pub fn z0(&self) -> Complex64 {
        Complex64::new(0.0, self.xi * self.radius)
    }

    /// z = n z₀.
    pub fn z(&self) -> Complex64 {
        self.z0() * self.index()
    }

    fn check(&self) -> Result<()> {
        if !(self.xi > 0.0 && self.xi.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cavity factors need xi > 0, got {}",
                self.xi
            )));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cavity radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.eps >= 1.0 && self.mu >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "host responses must be >= 1 on the imaginary axis, got eps = {}, mu = {}",
                self.eps, self.mu
            )));
        }
        Ok(())
    }

    fn singular(&self, value: Complex64, scale: f64) -> Result<()> {
        let relative = value.norm() / scale;
        if !(relative > SINGULAR_THRESHOLD) {
            return Err(Error::SingularCavity {
                xi: self.xi,
                relative,
            });
        }
        Ok(())
    }
}

/// C_A(iξ). Real up to rounding on the imaginary axis.
pub fn c_factor(ctx: &CavityContext) -> Result<Complex64> {
    ctx.check()?;
    let (z0, z) = (ctx.z0(), ctx.z());
    let (h0, hb0) = (h1_scaled(z0), bracket_h1_scaled(z0));
    let (h, hb) = (h1_scaled(z), bracket_h1_scaled(z));
    let (j0, jb0) = (j1_scaled(z0), bracket_j1_scaled(z0));
    let numerator = h0 * hb - h * hb0 * ctx.eps;
    let (d1, d2) = (h * jb0 * ctx.eps, j0 * hb);
    let denominator = d1 - d2;
    ctx.singular(denominator, d1.norm() + d2.norm())?;
    let t = ctx.xi * ctx.radius;
    Ok(numerator / denominator * (-2.0 * t).exp())
}

/// D_A(iξ). Grows like e^{(n−1)ξR_c} for large ξR_c.
pub fn d_factor(ctx: &CavityContext) -> Result<Complex64> {
    ctx.check()?;
    let (z0, z) = (ctx.z0(), ctx.z());
    let (j0, jb0) = (j1_scaled(z0), bracket_j1_scaled(z0));
    let (h0, hb0) = (h1_scaled(z0), bracket_h1_scaled(z0));
    let (h, hb) = (h1_scaled(z), bracket_h1_scaled(z));
    let numerator = j0 * hb0 - jb0 * h0;
    let (d1, d2) = (j0 * hb, jb0 * h * ctx.eps);
    let denominator = d1 - d2;
    ctx.singular(denominator, d1.norm() + d2.norm())?;
    let t = ctx.xi * ctx.radius;
    Ok(numerator / (denominator * ctx.mu) * ((ctx.index() - 1.0) * t).exp())
}

/// Static local-field factor [3ε/(2ε+1)]².
pub fn local_field_factor(eps: f64) -> f64 {
    let f = 3.0 * eps / (2.0 * eps + 1.0);
    f * f
}

/// Small-radius limit of ξ³C_A(iξ):
/// 3(ε−1)/((2ε+1)R_c³) + 9ξ²[ε²(1−5μ)+3ε+1]/(5(2ε+1)²R_c).
pub fn xi3_c_small_radius(eps: f64, mu: f64, xi: f64, radius: f64) -> f64 {
    let q = 2.0 * eps + 1.0;
    3.0 * (eps - 1.0) / (q * radius.powi(3))
        + 9.0 * xi * xi * (eps * eps * (1.0 - 5.0 * mu) + 3.0 * eps + 1.0) / (5.0 * q * q * radius)
}

/// ξ³ C_A(iξ), switching to the small-radius expansion near ξ = 0 where
/// the exact form is 0·∞.
pub fn xi3_c(material: &MaterialModel, xi: f64, radius: f64) -> Result<f64> {
    let (eps, mu) = (material.eps(xi), material.mu(xi));
    if xi * radius < SMALL_ARGUMENT {
        return Ok(xi3_c_small_radius(eps, mu, xi, radius));
    }
    let c = c_factor(&CavityContext::new(eps, mu, xi, radius))?;
    Ok(xi.powi(3) * c.re)
}

fn check_radius(radius: f64) -> Result<()> {
    if radius > 0.0 && radius.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "cavity radius must be positive, got {radius}"
        )))
    }
}

fn xi_scale(atom: &AtomModel) -> f64 {
    atom.min_frequency()
}

/// U₁ = −(1/4π²) ∫ ξ³ α C_A dξ in units of U₀.
pub fn u1_exact(
    host: &MaterialModel,
    atom: &AtomModel,
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    check_radius(radius)?;
    if host.is_vacuum() {
        return Ok(QuadratureResult::zero());
    }
    let fault = RefCell::new(None);
    let r = integrate_half_line(
        |xi| match xi3_c(host, xi, radius) {
            Ok(v) => atom.alpha(xi) * v,
            Err(e) => {
                fault.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        HalfLine::new(0.0, xi_scale(atom)),
        spec,
    )?;
    if let Some(e) = fault.into_inner() {
        return Err(e);
    }
    Ok(r.scaled(-1.0 / (4.0 * PI * PI) / POTENTIAL_UNIT))
}

/// Leading small-radius form of U₁ in units of U₀.
pub fn u1_approx(
    host: &MaterialModel,
    atom: &AtomModel,
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    check_radius(radius)?;
    if host.is_vacuum() {
        return Ok(QuadratureResult::zero());
    }
    let r = integrate_half_line(
        |xi| atom.alpha(xi) * xi3_c_small_radius(host.eps(xi), host.mu(xi), xi, radius),
        HalfLine::new(0.0, xi_scale(atom)),
        spec,
    )?;
    Ok(r.scaled(-1.0 / (4.0 * PI * PI) / POTENTIAL_UNIT))
}

/// Only the R_c⁻³ electric term of [`u1_approx`].
pub fn u1_electric_leading(
    host: &MaterialModel,
    atom: &AtomModel,
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    check_radius(radius)?;
    let r = integrate_half_line(
        |xi| {
            let eps = host.eps(xi);
            atom.alpha(xi) * 3.0 * (eps - 1.0) / ((2.0 * eps + 1.0) * radius.powi(3))
        },
        HalfLine::new(0.0, xi_scale(atom)),
        spec,
    )?;
    Ok(r.scaled(-1.0 / (4.0 * PI * PI) / POTENTIAL_UNIT))
}
