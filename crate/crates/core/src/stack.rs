//! Planar layer stacks and atom placement.
//!
//! Layers are numbered bottom to top. The first and last layers are
//! half-spaces; interior layers have finite thickness. Globally the first
//! interface sits at z = 0 and interior layer l spans
//! `[Σ_{k<l} d_k, Σ_{k≤l} d_k]`.
//!
//! The atom position is stored as a local coordinate inside its layer:
//! for interior layers and the top half-space it is the height above the
//! layer's lower interface, for the bottom half-space it is the depth below
//! the first interface (so it is always non-negative).

use std::fmt;

use crate::material::MaterialModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub material: MaterialModel,
    /// Thickness in c/ω₁₀; `f64::INFINITY` for the outer half-spaces.
    pub thickness: f64,
}

impl Layer {
    pub fn half_space(material: MaterialModel) -> Self {
        Self {
            material,
            thickness: f64::INFINITY,
        }
    }

    pub fn slab(material: MaterialModel, thickness: f64) -> Self {
        Self { material, thickness }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack {
    pub layers: Vec<Layer>,
    /// Zero-based index of the layer hosting the atom.
    pub atom_layer: usize,
    /// Local atom coordinate inside `atom_layer` (see module docs).
    pub z_atom: f64,
    /// Real-cavity radius R_c in c/ω₁₀.
    pub cavity_radius: f64,
}

impl LayerStack {
    pub fn new(layers: Vec<Layer>, cavity_radius: f64) -> Self {
        Self {
            layers,
            atom_layer: 0,
            z_atom: 1.0,
            cavity_radius,
        }
    }

    /// Two half-spaces meeting at z = 0.
    pub fn two_layer(lower: MaterialModel, upper: MaterialModel, cavity_radius: f64) -> Self {
        Self::new(
            vec![Layer::half_space(lower), Layer::half_space(upper)],
            cavity_radius,
        )
    }

    /// Lower half-space, slab of thickness `d`, upper half-space.
    pub fn three_layer(
        lower: MaterialModel,
        middle: MaterialModel,
        d: f64,
        upper: MaterialModel,
        cavity_radius: f64,
    ) -> Self {
        Self::new(
            vec![
                Layer::half_space(lower),
                Layer::slab(middle, d),
                Layer::half_space(upper),
            ],
            cavity_radius,
        )
    }

    pub fn with_atom(mut self, layer: usize, z_local: f64) -> Self {
        self.atom_layer = layer;
        self.z_atom = z_local;
        self
    }

    /// Places the atom at a global coordinate. Points exactly on an
    /// interface are assigned to the upper layer (local coordinate 0).
    pub fn with_atom_at(mut self, z_global: f64) -> Self {
        let (layer, local) = self.locate(z_global);
        self.atom_layer = layer;
        self.z_atom = local;
        self
    }

    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn atom_material(&self) -> &MaterialModel {
        &self.layers[self.atom_layer].material
    }

    /// Global positions of the n − 1 interfaces.
    pub fn interfaces(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.layers.len().saturating_sub(1));
        let mut z = 0.0;
        out.push(z);
        for layer in self.layers.iter().skip(1).take(self.layers.len().saturating_sub(2)) {
            z += layer.thickness;
            out.push(z);
        }
        out.truncate(self.layers.len().saturating_sub(1));
        out
    }

    /// Maps a global coordinate to (layer, local coordinate).
    pub fn locate(&self, z_global: f64) -> (usize, f64) {
        if z_global < 0.0 || self.layers.len() < 2 {
            return (0, -z_global);
        }
        let interfaces = self.interfaces();
        let mut layer = 1;
        for (k, &zi) in interfaces.iter().enumerate().skip(1) {
            if z_global >= zi {
                layer = k + 1;
            }
        }
        (layer, z_global - interfaces[layer - 1])
    }

    /// Global coordinate of the atom.
    pub fn atom_global(&self) -> f64 {
        if self.atom_layer == 0 {
            -self.z_atom
        } else {
            self.interfaces()[self.atom_layer - 1] + self.z_atom
        }
    }

    /// Distances from the atom to the interfaces below and above it
    /// (infinite on the side of a half-space).
    pub fn atom_distances(&self) -> (f64, f64) {
        let last = self.layers.len() - 1;
        match self.atom_layer {
            0 => (f64::INFINITY, self.z_atom),
            j if j == last => (self.z_atom, f64::INFINITY),
            j => (self.z_atom, self.layers[j].thickness - self.z_atom),
        }
    }

    /// Checks the stack invariants and computes the applicability flags of
    /// the real-cavity model with the default policy.
    pub fn validate(&self) -> Result<ValidatedStack, StackDiagnostics> {
        self.validate_with(&ApplicabilityPolicy::default())
    }

    pub fn validate_with(&self, policy: &ApplicabilityPolicy) -> Result<ValidatedStack, StackDiagnostics> {
        let mut issues = Vec::new();
        let n = self.layers.len();
        if n < 2 {
            issues.push(StackIssue::TooFewLayers(n));
        }
        for (l, layer) in self.layers.iter().enumerate() {
            if let Err(reason) = layer.material.validate() {
                issues.push(StackIssue::InvalidMaterial { layer: l, reason });
            }
            let outer = l == 0 || l + 1 == n;
            if outer {
                if layer.thickness != f64::INFINITY {
                    issues.push(StackIssue::FiniteHalfSpace(l));
                }
            } else if layer.thickness.is_nan() || layer.thickness < 0.0 {
                issues.push(StackIssue::NegativeThickness(l));
            } else if layer.thickness == 0.0 {
                issues.push(StackIssue::DegenerateLayer(l));
            } else if !layer.thickness.is_finite() {
                issues.push(StackIssue::InfiniteSlab(l));
            }
        }
        if !(self.cavity_radius.is_finite() && self.cavity_radius > 0.0) {
            issues.push(StackIssue::NonPositiveCavityRadius(self.cavity_radius));
        }
        if self.atom_layer >= n {
            issues.push(StackIssue::AtomLayerOutOfRange {
                layer: self.atom_layer,
                n_layers: n,
            });
        } else {
            let d = self.layers[self.atom_layer].thickness;
            let upper = if self.atom_layer == 0 || self.atom_layer + 1 == n {
                f64::INFINITY
            } else {
                d
            };
            if !(self.z_atom >= 0.0 && self.z_atom <= upper && self.z_atom.is_finite()) {
                issues.push(StackIssue::AtomOutsideLayer {
                    layer: self.atom_layer,
                    z: self.z_atom,
                });
            }
        }
        if !issues.is_empty() {
            return Err(StackDiagnostics(issues));
        }
        let applicability = Applicability::assess(self, policy);
        Ok(ValidatedStack {
            stack: self.clone(),
            applicability,
        })
    }
}

/// Thresholds for the real-cavity applicability check
/// √(ε_A(0)μ_A(0)) R_c ≤ fraction · min(distance to interface, 1/ω_max).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApplicabilityPolicy {
    pub fraction: f64,
    /// Largest atomic transition frequency taken into account for ω_max.
    pub atom_max_frequency: f64,
}

impl Default for ApplicabilityPolicy {
    fn default() -> Self {
        Self {
            fraction: 1.0,
            atom_max_frequency: 1.0,
        }
    }
}

/// Applicability flags of the real-cavity model. `true` means the guard
/// was violated.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Applicability {
    /// √(ε_A(0)μ_A(0)) R_c exceeds the allowed fraction of the distance to
    /// the nearest interface.
    pub cavity_vs_distance: bool,
    /// √(ε_A(0)μ_A(0)) R_c exceeds the allowed fraction of 1/ω_max.
    pub cavity_vs_wavelength: bool,
}

impl Applicability {
    fn assess(stack: &LayerStack, policy: &ApplicabilityPolicy) -> Self {
        let scaled_radius = stack.atom_material().static_index() * stack.cavity_radius;
        let (below, above) = stack.atom_distances();
        let omega_max = stack
            .layers
            .iter()
            .filter_map(|l| l.material.max_resonance())
            .fold(policy.atom_max_frequency, f64::max);
        Self {
            cavity_vs_distance: scaled_radius > policy.fraction * below.min(above),
            cavity_vs_wavelength: scaled_radius > policy.fraction / omega_max,
        }
    }

    pub fn any(&self) -> bool {
        self.cavity_vs_distance || self.cavity_vs_wavelength
    }
}

/// A stack that passed validation, together with its applicability flags.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedStack {
    stack: LayerStack,
    pub applicability: Applicability,
}

impl ValidatedStack {
    pub fn stack(&self) -> &LayerStack {
        &self.stack
    }

    pub fn into_inner(self) -> LayerStack {
        self.stack
    }
}

impl std::ops::Deref for ValidatedStack {
    type Target = LayerStack;

    fn deref(&self) -> &LayerStack {
        &self.stack
    }
}

/// Validates a stack with the default applicability policy.
pub fn validate_stack(stack: &LayerStack) -> Result<ValidatedStack, StackDiagnostics> {
    stack.validate()
}

#[derive(Debug, Clone, PartialEq)]
pub enum StackIssue {
    TooFewLayers(usize),
    FiniteHalfSpace(usize),
    NegativeThickness(usize),
    DegenerateLayer(usize),
    InfiniteSlab(usize),
    NonPositiveCavityRadius(f64),
    AtomLayerOutOfRange { layer: usize, n_layers: usize },
    AtomOutsideLayer { layer: usize, z: f64 },
    InvalidMaterial { layer: usize, reason: String },
}

impl fmt::Display for StackIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Layers are reported one-based, matching the configuration files.
        match self {
            StackIssue::TooFewLayers(n) => write!(f, "need at least 2 layers, got {n}"),
            StackIssue::FiniteHalfSpace(l) => {
                write!(f, "layer {}: outer layers must have infinite thickness", l + 1)
            }
            StackIssue::NegativeThickness(l) => write!(f, "layer {}: negative thickness", l + 1),
            StackIssue::DegenerateLayer(l) => write!(f, "layer {}: degenerate layer (zero thickness)", l + 1),
            StackIssue::InfiniteSlab(l) => {
                write!(f, "layer {}: interior layers must have finite thickness", l + 1)
            }
            StackIssue::NonPositiveCavityRadius(r) => write!(f, "cavity radius must be positive, got {r}"),
            StackIssue::AtomLayerOutOfRange { layer, n_layers } => {
                write!(f, "atom layer {} does not exist ({} layers)", layer + 1, n_layers)
            }
            StackIssue::AtomOutsideLayer { layer, z } => {
                write!(f, "atom position {z} lies outside layer {}", layer + 1)
            }
            StackIssue::InvalidMaterial { layer, reason } => write!(f, "layer {}: {reason}", layer + 1),
        }
    }
}

/// Every invariant violated by a stack.
#[derive(Debug, Clone, PartialEq)]
pub struct StackDiagnostics(pub Vec<StackIssue>);

impl fmt::Display for StackDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, issue) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for StackDiagnostics {}
