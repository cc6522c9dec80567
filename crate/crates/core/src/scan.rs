//! Parameter scans: one potential evaluation per grid point, computed in
//! parallel and returned in grid order.

use rayon::prelude::*;

use crate::cavity::u1_exact;
use crate::error::{Error, Result};
use crate::material::AtomModel;
use crate::potential::{force_at, inside_exclusion_zone, u2_at, EngineOptions, LocalField, ResultFlags};
use crate::quadrature::QuadratureResult;
use crate::stack::{ApplicabilityPolicy, LayerStack};

/// Quantity varied along a scan. Layer indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanAxis {
    /// Global atom coordinate.
    Position,
    /// Electric plasma frequency of one layer.
    ElectricPlasma { layer: usize },
    /// Magnetic plasma frequency of one layer.
    MagneticPlasma { layer: usize },
    CavityRadius,
    /// Thickness of an interior layer; the atom keeps its local coordinate.
    Thickness { layer: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
    /// Also include the negated values (below the first interface),
    /// listed first in increasing order.
    pub mirrored: bool,
}

impl Grid {
    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            spacing: Spacing::Linear,
            mirrored: false,
        }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        Self {
            spacing: Spacing::Log,
            ..Self::linear(min, max, count)
        }
    }

    pub fn mirrored(mut self) -> Self {
        self.mirrored = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.count < 2 {
            return bad(format!("grid needs at least 2 points, got {}", self.count));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return bad(format!("grid needs finite min < max, got [{}, {}]", self.min, self.max));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return bad(format!("logarithmic grid needs min > 0, got {}", self.min));
        }
        if self.mirrored && self.min < 0.0 {
            return bad(format!("mirrored grid needs min >= 0, got {}", self.min));
        }
        Ok(())
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.count;
        let step = |k: usize| k as f64 / (n - 1) as f64;
        let base: Vec<f64> = (0..n)
            .map(|k| match self.spacing {
                Spacing::Linear if k + 1 == n => self.max,
                Spacing::Linear => self.min + (self.max - self.min) * step(k),
                Spacing::Log if k == 0 => self.min,
                Spacing::Log if k + 1 == n => self.max,
                Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * step(k)).exp(),
            })
            .collect();
        if !self.mirrored {
            return Ok(base);
        }
        let mut out: Vec<f64> = base.iter().rev().filter(|v| **v != 0.0).map(|v| -v).collect();
        out.extend(base);
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub engine: EngineOptions,
    /// Compute U₂ both with and without the local-field factor.
    pub compare_uncorrected: bool,
    pub include_u2: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            engine: EngineOptions::default(),
            compare_uncorrected: true,
            include_u2: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRequest {
    pub stack: LayerStack,
    pub atom: AtomModel,
    pub axis: ScanAxis,
    pub grid: Grid,
    pub options: ScanOptions,
}

/// Error estimates of the components of a row.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RowErrors {
    pub u1: f64,
    pub u2: f64,
    pub force: f64,
}

/// One evaluated grid point. Optional quantities are `None` when not
/// requested or when the row faulted.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub index: usize,
    pub scan_value: f64,
    /// Global atom coordinate.
    pub z: f64,
    /// Zero-based atom layer.
    pub layer: usize,
    pub u1: Option<f64>,
    pub u2_odd: Option<f64>,
    pub u2_even: Option<f64>,
    pub u2_corrected: Option<f64>,
    pub u2_uncorrected: Option<f64>,
    pub delta_u2: Option<f64>,
    pub total: Option<f64>,
    pub force: Option<f64>,
    pub flags: ResultFlags,
    pub errors: RowErrors,
    pub fault: Option<String>,
}

impl CurveRow {
    fn empty(index: usize, scan_value: f64, stack: &LayerStack) -> Self {
        Self {
            index,
            scan_value,
            z: stack.atom_global(),
            layer: stack.atom_layer,
            u1: None,
            u2_odd: None,
            u2_even: None,
            u2_corrected: None,
            u2_uncorrected: None,
            delta_u2: None,
            total: None,
            force: None,
            flags: ResultFlags::default(),
            errors: RowErrors::default(),
            fault: None,
        }
    }

    /// U₂ in the scan's configured local-field mode.
    pub fn u2(&self) -> Option<f64> {
        match (self.u2_odd, self.u2_even) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanTable {
    pub rows: Vec<CurveRow>,
    /// Grid values left out because they fall inside the cavity exclusion
    /// zone.
    pub skipped: Vec<f64>,
}

impl ScanTable {
    pub fn faults(&self) -> impl Iterator<Item = &CurveRow> {
        self.rows.iter().filter(|r| r.fault.is_some())
    }
}

/// Stack for one grid value.
pub fn apply_axis(template: &LayerStack, axis: ScanAxis, value: f64) -> Result<LayerStack> {
    let mut s = template.clone();
    let layer_of = |layer: usize| {
        if layer < s.n_layers() {
            Ok(layer)
        } else {
            Err(Error::InvalidParameter(format!(
                "scan layer {} out of range for {} layers",
                layer + 1,
                s.n_layers()
            )))
        }
    };
    match axis {
        ScanAxis::Position => s = s.with_atom_at(value),
        ScanAxis::ElectricPlasma { layer } => {
            let l = layer_of(layer)?;
            s.layers[l].material.electric.plasma = value;
        }
        ScanAxis::MagneticPlasma { layer } => {
            let l = layer_of(layer)?;
            s.layers[l].material.magnetic.plasma = value;
        }
        ScanAxis::CavityRadius => s.cavity_radius = value,
        ScanAxis::Thickness { layer } => {
            let l = layer_of(layer)?;
            s.layers[l].thickness = value;
        }
    }
    Ok(s)
}

fn evaluate(index: usize, value: f64, stack: &LayerStack, atom: &AtomModel, options: &ScanOptions) -> CurveRow {
    let mut row = CurveRow::empty(index, value, stack);
    if let Err(e) = fill(&mut row, stack, atom, options) {
        row.fault = Some(e.to_string());
    }
    row
}

fn fill(row: &mut CurveRow, stack: &LayerStack, atom: &AtomModel, options: &ScanOptions) -> Result<()> {
    let engine = &options.engine;
    let spec = &engine.quadrature;
    let policy = ApplicabilityPolicy {
        atom_max_frequency: atom.max_frequency(),
        ..ApplicabilityPolicy::default()
    };
    let validated = stack.validate_with(&policy)?;
    row.flags.distance_guard = inside_exclusion_zone(stack);
    row.flags.cavity_vs_wavelength = validated.applicability.cavity_vs_wavelength;
    let mut converged = true;
    let mut track = |r: &QuadratureResult| converged &= r.converged;

    let u1 = if engine.include_u1 {
        let r = u1_exact(stack.atom_material(), atom, stack.cavity_radius, spec)?;
        track(&r);
        row.errors.u1 = r.error_estimate;
        row.u1 = Some(r.value);
        r.value
    } else {
        0.0
    };
    if !options.include_u2 {
        row.total = row.u1;
        row.flags.not_converged = !converged;
        return Ok(());
    }
    let mode = engine.local_field;
    let main = u2_at(stack, atom, mode, spec)?;
    track(&main.odd);
    track(&main.even);
    row.u2_odd = Some(main.odd.value);
    row.u2_even = Some(main.even.value);
    row.errors.u2 = main.odd.error_estimate + main.even.error_estimate;
    let other_mode = match mode {
        LocalField::Corrected => LocalField::Uncorrected,
        LocalField::Uncorrected => LocalField::Corrected,
    };
    let other = if options.compare_uncorrected {
        let o = u2_at(stack, atom, other_mode, spec)?;
        track(&o.odd);
        track(&o.even);
        Some(o.total())
    } else {
        None
    };
    let (corrected, uncorrected) = match mode {
        LocalField::Corrected => (Some(main.total()), other),
        LocalField::Uncorrected => (other, Some(main.total())),
    };
    row.u2_corrected = corrected;
    row.u2_uncorrected = uncorrected;
    row.delta_u2 = corrected.zip(uncorrected).map(|(c, u)| c - u);
    row.total = Some(u1 + main.total());
    if engine.include_force {
        let f = force_at(stack, atom, mode, spec)?;
        track(&f);
        row.errors.force = f.error_estimate;
        row.force = Some(f.value);
    }
    row.flags.not_converged = !converged;
    Ok(())
}

/// Evaluates every grid point. Points inside the cavity exclusion zone
/// are skipped unless the distance-guard override is set; faults are
/// recorded on their row and do not stop the scan.
pub fn run_scan(request: &ScanRequest) -> Result<ScanTable> {
    request.stack.validate()?;
    request.options.engine.quadrature.validate().map_err(Error::InvalidParameter)?;
    let values = request.grid.values()?;
    let mut points = Vec::with_capacity(values.len());
    let mut skipped = Vec::new();
    for v in values {
        let stack = apply_axis(&request.stack, request.axis, v)?;
        let guarded = stack.validate().is_ok() && inside_exclusion_zone(&stack);
        if guarded && !request.options.engine.override_distance_guard {
            skipped.push(v);
        } else {
            points.push((v, stack));
        }
    }
    let rows = points
        .par_iter()
        .enumerate()
        .map(|(k, (v, stack))| evaluate(k, *v, stack, &request.atom, &request.options))
        .collect();
    Ok(ScanTable { rows, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::MaterialModel;

    #[test]
    fn grid_values() {
        let g = Grid::linear(0.0, 1.0, 5).values().unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = Grid::log(1e-2, 1.0, 3).values().unwrap();
        assert!((g[1] - 0.1).abs() < 1e-15);
        assert_eq!(g[2], 1.0);
        let g = Grid::log(0.1, 1.0, 2).mirrored().values().unwrap();
        assert_eq!(g, vec![-1.0, -0.1, 0.1, 1.0]);
        assert!(Grid::linear(0.0, 1.0, 1).values().is_err());
        assert!(Grid::log(0.0, 1.0, 3).values().is_err());
    }

    #[test]
    fn vacuum_scan_gives_zero_rows() {
        let v = MaterialModel::vacuum();
        let request = ScanRequest {
            stack: LayerStack::two_layer(v, v, 0.01),
            atom: AtomModel::two_level(),
            axis: ScanAxis::Position,
            grid: Grid::linear(0.5, 1.0, 2),
            options: ScanOptions::default(),
        };
        let t = run_scan(&request).unwrap();
        assert_eq!(t.rows.len(), 2);
        for r in &t.rows {
            assert_eq!(r.u2(), Some(0.0));
            assert_eq!(r.total, Some(0.0));
            assert_eq!(r.delta_u2, Some(0.0));
            assert!(r.fault.is_none());
        }
    }

    #[test]
    fn guard_skips_points_and_rows_stay_ordered() {
        let m = MaterialModel::dielectric(1.03, 0.75, 0.001);
        let request = ScanRequest {
            stack: LayerStack::two_layer(m, MaterialModel::vacuum(), 0.01),
            atom: AtomModel::two_level(),
            axis: ScanAxis::Position,
            grid: Grid::linear(0.0, 1.0, 5),
            options: ScanOptions {
                include_u2: false,
                ..ScanOptions::default()
            },
        };
        let t = run_scan(&request).unwrap();
        assert_eq!(t.skipped, vec![0.0]);
        let xs: Vec<f64> = t.rows.iter().map(|r| r.scan_value).collect();
        assert_eq!(xs, vec![0.25, 0.5, 0.75, 1.0]);
        assert!(t.rows.iter().all(|r| r.u1 == Some(0.0)));
    }

    #[test]
    fn faults_are_recorded_per_row() {
        let m = MaterialModel::dielectric(1.03, 0.75, 0.001);
        let request = ScanRequest {
            stack: LayerStack::two_layer(m, MaterialModel::vacuum(), 0.01).with_atom_at(-0.5),
            atom: AtomModel::two_level(),
            axis: ScanAxis::CavityRadius,
            grid: Grid::linear(-0.01, 0.01, 2),
            options: ScanOptions {
                include_u2: false,
                ..ScanOptions::default()
            },
        };
        let t = run_scan(&request);
        // A negative radius invalidates the row's stack but not the scan.
        let t = t.unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows[0].fault.is_some());
        assert!(t.rows[1].fault.is_none());
    }
}
