//! Estimates of the potential of an atom sitting right on an interface,
//! where the real-cavity model itself does not apply.
//!
//! The estimate averages the potentials one cavity radius on either side,
//! U(0) = ½[U(R_c) + U(−R_c)]. In closed form (small R_c, non-retarded) this
//! becomes
//!
//! ```text
//! U(0) = −(1/32π²R_c³) ∫ α { 12[(ε₁−1)/(2ε₁+1) + (ε₂−1)/(2ε₂+1)]
//!                            − (ε₁−ε₂)/(ε₁+ε₂) [LF(ε₁)/ε₁ − LF(ε₂)/ε₂] } dξ
//! ```
//!
//! which is compared with the on-surface energy of a molecule of finite
//! size s,
//!
//! ```text
//! U(0) = (1/2π^{5/2}s³) ∫ α [½(1/ε₁ + 1/ε₂) + ⅓ (ε₁−ε₂)/(ε₁+ε₂)(1/ε₁ − 1/ε₂)] dξ.
//! ```
//!
//! The interface terms of the two coincide for s = (16/3)^{1/3} π^{−1/6} R_c.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::material::{AtomModel, MaterialModel};
use crate::potential::{total_at, EngineOptions, LocalField};
use crate::quadrature::{integrate_half_line, HalfLine, QuadratureResult, QuadratureSpec};
use crate::stack::LayerStack;
use crate::units::POTENTIAL_UNIT;

/// s/R_c at which the two interface terms coincide, ≈ 1.444.
pub fn finite_size_ratio() -> f64 {
    (16.0f64 / 3.0).cbrt() * PI.powf(-1.0 / 6.0)
}

/// Molecule size s matched to a cavity radius.
pub fn finite_size_length(radius: f64) -> f64 {
    finite_size_ratio() * radius
}

fn xi_line(atom: &AtomModel) -> HalfLine {
    HalfLine::new(0.0, atom.min_frequency())
}

fn electric_only(m: &MaterialModel, what: &str) -> Result<()> {
    if m.magnetic.is_active() {
        Err(Error::InvalidParameter(format!("{what} must be purely electric")))
    } else {
        Ok(())
    }
}

/// Parts of the closed-form interface estimate, in units of U₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceEstimate {
    /// Average of the two bulk cavity terms.
    pub bulk: QuadratureResult,
    /// Term proportional to (ε₁−ε₂)/(ε₁+ε₂).
    pub interface: QuadratureResult,
}

impl InterfaceEstimate {
    pub fn value(&self) -> f64 {
        self.bulk.value + self.interface.value
    }
}

/// Closed-form on-interface estimate. With `LocalField::Uncorrected` the
/// factors [3ε/(2ε+1)]² in the interface term are replaced by 1.
pub fn interface_value_closed_form(
    medium1: &MaterialModel,
    medium2: &MaterialModel,
    atom: &AtomModel,
    radius: f64,
    lf: LocalField,
    spec: &QuadratureSpec,
) -> Result<InterfaceEstimate> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "cavity radius must be positive, got {radius}"
        )));
    }
    let scale = -1.0 / (32.0 * PI * PI * radius.powi(3)) / POTENTIAL_UNIT;
    let bulk = integrate_half_line(
        |xi| {
            let (e1, e2) = (medium1.eps(xi), medium2.eps(xi));
            atom.alpha(xi) * 12.0 * ((e1 - 1.0) / (2.0 * e1 + 1.0) + (e2 - 1.0) / (2.0 * e2 + 1.0))
        },
        xi_line(atom),
        spec,
    )?
    .scaled(scale);
    let interface = integrate_half_line(
        |xi| {
            let (e1, e2) = (medium1.eps(xi), medium2.eps(xi));
            if e1 == e2 {
                return 0.0;
            }
            -atom.alpha(xi) * (e1 - e2) / (e1 + e2) * (lf.factor(e1) / e1 - lf.factor(e2) / e2)
        },
        xi_line(atom),
        spec,
    )?
    .scaled(scale);
    Ok(InterfaceEstimate { bulk, interface })
}

/// Finite-size molecule estimate split the same way; `s` is the molecule
/// size. Purely electric media only.
pub fn ninham_interface_value(
    medium1: &MaterialModel,
    medium2: &MaterialModel,
    atom: &AtomModel,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<InterfaceEstimate> {
    electric_only(medium1, "medium 1")?;
    electric_only(medium2, "medium 2")?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!("molecule size must be positive, got {s}")));
    }
    let scale = 1.0 / (2.0 * PI.powf(2.5) * s.powi(3)) / POTENTIAL_UNIT;
    let bulk = integrate_half_line(
        |xi| atom.alpha(xi) * 0.5 * (1.0 / medium1.eps(xi) + 1.0 / medium2.eps(xi)),
        xi_line(atom),
        spec,
    )?
    .scaled(scale);
    let interface = integrate_half_line(
        |xi| {
            let (e1, e2) = (medium1.eps(xi), medium2.eps(xi));
            if e1 == e2 {
                return 0.0;
            }
            atom.alpha(xi) / 3.0 * (e1 - e2) / (e1 + e2) * (1.0 / e1 - 1.0 / e2)
        },
        xi_line(atom),
        spec,
    )?
    .scaled(scale);
    Ok(InterfaceEstimate { bulk, interface })
}

/// Full-machinery average ½[U(z_k + R_c) + U(z_k − R_c)] around interface
/// `interface` (zero-based, between layers k and k+1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedInterface {
    pub above: f64,
    pub below: f64,
    pub value: f64,
    pub converged: bool,
}

pub fn interface_value_averaged(
    stack: &LayerStack,
    interface: usize,
    atom: &AtomModel,
    options: &EngineOptions,
) -> Result<AveragedInterface> {
    let positions = stack.interfaces();
    let Some(&z0) = positions.get(interface) else {
        return Err(Error::InvalidParameter(format!(
            "interface {} does not exist in a stack with {} interfaces",
            interface + 1,
            positions.len()
        )));
    };
    let radius = stack.cavity_radius;
    let opts = EngineOptions {
        override_distance_guard: true,
        include_force: false,
        include_u1: true,
        ..*options
    };
    let above = total_at(&stack.clone().with_atom_at(z0 + radius), atom, &opts)?;
    let below = total_at(&stack.clone().with_atom_at(z0 - radius), atom, &opts)?;
    Ok(AveragedInterface {
        above: above.total,
        below: below.total,
        value: 0.5 * (above.total + below.total),
        converged: !above.flags.not_converged && !below.flags.not_converged,
    })
}

/// The three interface numbers reported side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceReport {
    pub closed_form: InterfaceEstimate,
    pub averaged: AveragedInterface,
    /// |closed form − averaged| / |averaged|.
    pub relative_gap: f64,
    pub finite_size: Option<InterfaceEstimate>,
    pub finite_size_length: f64,
}

pub fn interface_report(
    stack: &LayerStack,
    interface: usize,
    atom: &AtomModel,
    options: &EngineOptions,
) -> Result<InterfaceReport> {
    stack.validate()?;
    if interface + 1 >= stack.n_layers() {
        return Err(Error::InvalidParameter(format!("interface {} does not exist", interface + 1)));
    }
    let (m1, m2) = (&stack.layers[interface].material, &stack.layers[interface + 1].material);
    let spec = &options.quadrature;
    let closed_form = interface_value_closed_form(m1, m2, atom, stack.cavity_radius, options.local_field, spec)?;
    let averaged = interface_value_averaged(stack, interface, atom, options)?;
    let s = finite_size_length(stack.cavity_radius);
    let finite_size = if m1.magnetic.is_active() || m2.magnetic.is_active() {
        None
    } else {
        Some(ninham_interface_value(m1, m2, atom, s, spec)?)
    };
    let gap = (closed_form.value() - averaged.value).abs();
    Ok(InterfaceReport {
        closed_form,
        averaged,
        relative_gap: if averaged.value == 0.0 { gap } else { gap / averaged.value.abs() },
        finite_size,
        finite_size_length: s,
    })
}
