//! Assembly of the position-dependent potential U₂, the force, and the
//! total potential U₁ + U₂.
//!
//! U₂ splits into three double integrals over ξ and u = β_j, one per
//! reflection path: the odd terms bouncing off the interface below or
//! above the atom, and the position-independent even term. Each carries a
//! single exponential e^{−2u·L} with its own length L (distance to the
//! interface, or the layer thickness), which fixes both quadrature maps:
//! the u-integral starts at n_jξ with decay scale 1/(2L), and the
//! ξ-integral uses min(ω_atom, 1/(2n_j(0)L)).
//!
//! All values are returned in units of U₀ (potentials) and U₀ω₁₀/c (force).

use std::f64::consts::PI;

use crate::cavity::{local_field_factor, u1_exact};
use crate::error::{Error, Result};
use crate::green::{decay, StackAtXi};
use crate::material::AtomModel;
use crate::quadrature::{
    integrate_half_line, integrate_nested, HalfLine, QuadratureResult, QuadratureSpec,
};
use crate::stack::{ApplicabilityPolicy, LayerStack};
use crate::units::POTENTIAL_UNIT;

/// Whether the real-cavity factor [3ε_j/(2ε_j+1)]² multiplies U₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LocalField {
    #[default]
    Corrected,
    Uncorrected,
}

impl LocalField {
    #[inline]
    pub fn factor(self, eps: f64) -> f64 {
        match self {
            LocalField::Corrected => local_field_factor(eps),
            LocalField::Uncorrected => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineOptions {
    pub quadrature: QuadratureSpec,
    pub local_field: LocalField,
    pub include_u1: bool,
    pub include_force: bool,
    /// Evaluate inside the cavity exclusion zone instead of refusing.
    pub override_distance_guard: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            local_field: LocalField::Corrected,
            include_u1: true,
            include_force: true,
            override_distance_guard: false,
        }
    }
}

impl EngineOptions {
    pub fn with_local_field(mut self, lf: LocalField) -> Self {
        self.local_field = lf;
        self
    }

    pub fn with_quadrature(mut self, spec: QuadratureSpec) -> Self {
        self.quadrature = spec;
        self
    }
}

/// Which reflection path of U₂ to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    Lower,
    Upper,
    Even,
}

/// Position-dependent potential split into its reflection parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct U2Parts {
    pub odd: QuadratureResult,
    pub even: QuadratureResult,
}

impl U2Parts {
    pub fn total(&self) -> f64 {
        self.odd.value + self.even.value
    }

    pub fn converged(&self) -> bool {
        self.odd.converged && self.even.converged
    }
}

/// Flags raised while evaluating one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ResultFlags {
    /// Atom closer to an interface than √(ε(0)μ(0)) R_c.
    pub distance_guard: bool,
    /// Cavity larger than the shortest relevant wavelength.
    pub cavity_vs_wavelength: bool,
    /// Some quadrature did not reach its tolerance.
    pub not_converged: bool,
}

impl ResultFlags {
    pub fn any(&self) -> bool {
        self.distance_guard || self.cavity_vs_wavelength || self.not_converged
    }

    /// Names of the raised flags, joined by `|`.
    pub fn describe(&self) -> String {
        let mut out = Vec::new();
        if self.distance_guard {
            out.push("distance_guard");
        }
        if self.cavity_vs_wavelength {
            out.push("cavity_vs_wavelength");
        }
        if self.not_converged {
            out.push("not_converged");
        }
        out.join("|")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComponentErrors {
    pub u1: f64,
    pub u2_odd: f64,
    pub u2_even: f64,
    pub force: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialResult {
    /// Global atom coordinate.
    pub z: f64,
    /// Zero-based layer hosting the atom.
    pub layer: usize,
    pub u1: f64,
    pub u2_odd: f64,
    pub u2_even: f64,
    pub u2: f64,
    pub total: f64,
    /// Force along the global z axis, if requested.
    pub force: Option<f64>,
    pub errors: ComponentErrors,
    pub flags: ResultFlags,
}

/// Distance from the atom to the interface crossed by `path`.
fn path_length(stack: &LayerStack, path: Path) -> f64 {
    let (below, above) = stack.atom_distances();
    match path {
        Path::Lower => below,
        Path::Upper => above,
        Path::Even => {
            let j = stack.atom_layer;
            if j == 0 || j + 1 == stack.n_layers() {
                f64::INFINITY
            } else {
                stack.layers[j].thickness
            }
        }
    }
}

/// What the path integral computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Weight {
    Potential,
    /// ∂/∂L of the potential contribution, i.e. an extra factor −2u.
    Slope,
}

/// One reflection path of U₂ (or of its derivative with respect to the
/// path length) as a converged double integral in units of U₀.
fn path_integral(
    stack: &LayerStack,
    atom: &AtomModel,
    path: Path,
    weight: Weight,
    lf: LocalField,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let length = path_length(stack, path);
    if !length.is_finite() {
        return Ok(QuadratureResult::zero());
    }
    let j = stack.atom_layer;
    let host = stack.atom_material();
    let constant = match path {
        Path::Lower | Path::Upper => 1.0 / (8.0 * PI * PI),
        Path::Even => 1.0 / (4.0 * PI * PI),
    } / POTENTIAL_UNIT;
    let n0 = host.static_index();
    let xi_scale = atom.min_frequency().min(1.0 / (2.0 * n0 * length));
    let u_scale = 1.0 / (2.0 * length);
    let inner_map = spec.map;
    let nested = integrate_nested(HalfLine::new(0.0, xi_scale), spec, |xi, inner_spec| {
        let s = StackAtXi::new(stack, xi);
        let u0 = s.index_sq(j).sqrt() * xi;
        let envelope = decay(-2.0 * u0 * length);
        if envelope == 0.0 {
            return Ok(QuadratureResult::zero());
        }
        let prefactor = constant * atom.alpha(xi) * s.mu[j] * lf.factor(s.eps[j]) * envelope;
        let inner = integrate_half_line(
            |w| {
                let u = u0 + w;
                let t = s.trace_terms(j, u);
                let term = match path {
                    Path::Lower => t.lower,
                    Path::Upper => t.upper,
                    Path::Even => t.even,
                };
                let term = match weight {
                    Weight::Potential => term,
                    Weight::Slope => -2.0 * u * term,
                };
                if term == 0.0 {
                    0.0
                } else {
                    term * decay(-2.0 * w * length)
                }
            },
            HalfLine::new(0.0, u_scale),
            // The inner value is rescaled afterwards, so only relative
            // accuracy is meaningful here.
            &inner_spec.with_map(inner_map).with_abs_floor(0.0),
        )?;
        Ok(inner.scaled(prefactor))
    })
    .map_err(|e| e.with_context(format!("{path:?} path, layer {}", j + 1)))?;
    Ok(nested.result)
}

fn check(stack: &LayerStack, spec: &QuadratureSpec) -> Result<()> {
    stack.validate()?;
    spec.validate().map_err(Error::InvalidParameter)
}

fn merge(a: QuadratureResult, b: QuadratureResult, sign: f64) -> QuadratureResult {
    QuadratureResult {
        value: a.value + sign * b.value,
        error_estimate: a.error_estimate + b.error_estimate,
        evaluations: a.evaluations + b.evaluations,
        converged: a.converged && b.converged,
    }
}

/// U₂ at the atom position stored in `stack`, split into odd and even
/// reflection parts. Two-layer stacks return an even part of exactly 0.
pub fn u2_at(stack: &LayerStack, atom: &AtomModel, lf: LocalField, spec: &QuadratureSpec) -> Result<U2Parts> {
    check(stack, spec)?;
    let lower = path_integral(stack, atom, Path::Lower, Weight::Potential, lf, spec)?;
    let upper = path_integral(stack, atom, Path::Upper, Weight::Potential, lf, spec)?;
    let even = path_integral(stack, atom, Path::Even, Weight::Potential, lf, spec)?;
    Ok(U2Parts {
        odd: merge(lower, upper, 1.0),
        even,
    })
}

/// One reflection path of U₂ on its own.
pub fn u2_path(
    stack: &LayerStack,
    atom: &AtomModel,
    path: Path,
    lf: LocalField,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    check(stack, spec)?;
    path_integral(stack, atom, path, Weight::Potential, lf, spec)
}

/// F = −∂U₂/∂z along the global axis. Moving up shortens the distance to
/// the upper interface and lengthens the one to the lower interface; the
/// even part does not depend on position.
pub fn force_at(stack: &LayerStack, atom: &AtomModel, lf: LocalField, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    check(stack, spec)?;
    let lower = path_integral(stack, atom, Path::Lower, Weight::Slope, lf, spec)?;
    let upper = path_integral(stack, atom, Path::Upper, Weight::Slope, lf, spec)?;
    // F = −(∂U_lower/∂L_lower − ∂U_upper/∂L_upper)
    let f = merge(upper, lower, -1.0);
    Ok(f)
}

/// True when the atom is closer to an interface than √(ε(0)μ(0)) R_c.
pub fn inside_exclusion_zone(stack: &LayerStack) -> bool {
    let (below, above) = stack.atom_distances();
    below.min(above) < stack.cavity_radius * stack.atom_material().static_index()
}

/// U₁ + U₂ with all components and flags.
pub fn total_at(stack: &LayerStack, atom: &AtomModel, options: &EngineOptions) -> Result<PotentialResult> {
    let spec = &options.quadrature;
    check(stack, spec)?;
    let policy = ApplicabilityPolicy {
        atom_max_frequency: atom.max_frequency(),
        ..ApplicabilityPolicy::default()
    };
    let validated = stack.validate_with(&policy)?;
    let mut flags = ResultFlags {
        distance_guard: inside_exclusion_zone(stack),
        cavity_vs_wavelength: validated.applicability.cavity_vs_wavelength,
        not_converged: false,
    };
    if flags.distance_guard && !options.override_distance_guard {
        return Err(Error::InvalidParameter(format!(
            "atom at z = {} lies within sqrt(eps(0) mu(0)) R_c of an interface; \
             enable the distance-guard override to evaluate it anyway",
            stack.atom_global()
        )));
    }
    let u1 = if options.include_u1 {
        u1_exact(stack.atom_material(), atom, stack.cavity_radius, spec)?
    } else {
        QuadratureResult::zero()
    };
    let u2 = u2_at(stack, atom, options.local_field, spec)?;
    let force = if options.include_force {
        Some(force_at(stack, atom, options.local_field, spec)?)
    } else {
        None
    };
    flags.not_converged =
        !(u1.converged && u2.converged() && force.map_or(true, |f| f.converged));
    let u2_total = u2.total();
    Ok(PotentialResult {
        z: stack.atom_global(),
        layer: stack.atom_layer,
        u1: u1.value,
        u2_odd: u2.odd.value,
        u2_even: u2.even.value,
        u2: u2_total,
        total: u1.value + u2_total,
        force: force.map(|f| f.value),
        errors: ComponentErrors {
            u1: u1.error_estimate,
            u2_odd: u2.odd.error_estimate,
            u2_even: u2.even.error_estimate,
            force: force.map_or(0.0, |f| f.error_estimate),
        },
        flags,
    })
}
