//! Local-field corrected van der Waals potentials of a ground-state atom
//! embedded in a planar stack of magnetodielectric layers.
//!
//! The atom occupies a small empty sphere (the real cavity) inside its host
//! layer. Its potential splits into a constant cavity term U₁ and a
//! position-dependent term U₂ driven by reflections at the interfaces,
//! both written as integrals over imaginary frequency. Quantities use
//! reduced units: frequencies in ω₁₀, lengths in c/ω₁₀, potentials in
//! U₀ = ω₁₀³|d₁₀|²/(12π²ε₀c³).
//!
//! ```no_run
//! use lfvdw_core::{AtomModel, EngineOptions, LayerStack, MaterialModel, total_at};
//!
//! let glass = MaterialModel::dielectric(1.03, 0.75, 0.001);
//! let stack = LayerStack::two_layer(glass, MaterialModel::vacuum(), 0.01).with_atom_at(0.5);
//! let r = total_at(&stack, &AtomModel::two_level(), &EngineOptions::default()).unwrap();
//! println!("U2 = {} U0", r.u2);
//! ```

pub mod asymptotics;
pub mod cavity;
pub mod error;
pub mod green;
pub mod interface;
pub mod material;
pub mod potential;
pub mod quadrature;
pub mod scan;
pub mod specfun;
pub mod stack;
pub mod units;

pub use asymptotics::{
    c1_equal_electric, c1_nonretarded, c3_nonretarded, c4_derivative_signs, c4_derivatives, c4_retarded,
    c4_small_contrast, coefficients, regime_bounds, sphere_excess_polarizability, sphere_potentials,
    AsymptoticCoefficients, RegimeBounds, Sign, Sphere, SpherePotentials, StaticPair,
};
pub use cavity::{c_factor, d_factor, local_field_factor, u1_approx, u1_exact, CavityContext};
pub use error::{Error, Result};
pub use green::{
    closed_form_reflection_sums, recurse_r, reflection_series, single_interface_r, trace_integrand, Direction,
    Polarization, ReflectionSet, Side, StackAtXi,
};
pub use interface::{
    finite_size_length, interface_report, interface_value_averaged, interface_value_closed_form,
    ninham_interface_value, InterfaceEstimate, InterfaceReport,
};
pub use material::{alpha_at, eps_at, mu_at, AtomModel, MaterialModel, Resonance, Transition};
pub use potential::{
    force_at, total_at, u2_at, u2_path, EngineOptions, LocalField, Path, PotentialResult, ResultFlags, U2Parts,
};
pub use quadrature::{
    integrate_half_line, integrate_nested, integrate_semi_infinite, HalfLine, MapKind, QuadratureFault,
    QuadratureResult, QuadratureSpec,
};
pub use scan::{run_scan, CurveRow, Grid, ScanAxis, ScanOptions, ScanRequest, ScanTable, Spacing};
pub use stack::{Layer, LayerStack, StackDiagnostics, StackIssue, ValidatedStack};
pub use units::{in_potential_units, ReducedUnits, POTENTIAL_UNIT};

/// Engine version recorded in output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
