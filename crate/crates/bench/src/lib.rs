//! Fixed scenarios shared by the engine benchmarks.

use lfvdw_core::{AtomModel, LayerStack, MaterialModel, QuadratureSpec, Resonance};

pub fn medium_one() -> MaterialModel {
    MaterialModel::new(Resonance::new(1.03, 0.75, 0.001), Resonance::new(1.0, 2.3, 0.001))
}

pub fn medium_two() -> MaterialModel {
    MaterialModel::new(Resonance::new(1.03, 0.4, 0.001), Resonance::new(1.0, 0.4, 0.001))
}

/// Atom 0.5 above a single interface.
pub fn two_layer() -> LayerStack {
    LayerStack::two_layer(medium_one(), medium_two(), 0.01).with_atom_at(0.5)
}

/// Atom a quarter of the way into a slab of thickness 2 between copies of
/// the lower medium.
pub fn symmetric_slab() -> LayerStack {
    LayerStack::three_layer(medium_one(), medium_two(), 2.0, medium_one(), 0.01).with_atom(1, 0.5)
}

pub fn atom() -> AtomModel {
    AtomModel::two_level()
}

pub fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}
