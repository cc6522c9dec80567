//! Scenario configuration documents (TOML) and their translation into
//! engine inputs.
//!
//! ```toml
//! title = "optional free text"
//!
//! [atom]
//! cavity_radius = 0.01        # R_c in c/ω₁₀
//! position = 1.0              # global z, needed unless the scan moves the atom
//! transitions = [{ frequency = 1.0, dipole_sq = 1.0 }]   # default: two-level atom
//!
//! [layer.1]                   # lowest half-space; numbering is 1-based, bottom to top
//! electric = { transverse = 1.03, plasma = 0.75, damping = 0.001 }
//! magnetic = { transverse = 1.0, plasma = 2.3, damping = 0.001 }
//!
//! [layer.2]                   # interior layers need `thickness`
//!
//! [scan]
//! axis = "position"           # position | electric_plasma | magnetic_plasma | cavity_radius | thickness
//! layer = 2                   # target layer of material and thickness axes
//! spacing = "log"             # linear | log
//! min = 0.01
//! max = 30.0
//! count = 41
//! mirrored = true             # also evaluate the negated values
//!
//! [quadrature]
//! rel_tol = 1e-8
//!
//! [interface]
//! index = 1                   # interface between layer.1 and layer.2
//!
//! [output]
//! format = "csv"              # csv | json
//! path = "out.csv"
//! ```
//!
//! The interface between `layer.1` and `layer.2` sits at z = 0. Unknown keys
//! are rejected.

use std::collections::BTreeMap;

use lfvdw_core::{
    AtomModel, EngineOptions, Grid, Layer, LayerStack, LocalField, MapKind, MaterialModel, QuadratureSpec, Resonance,
    ScanAxis, ScanOptions, ScanRequest, Spacing, Transition,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    pub atom: AtomConfig,
    pub layer: BTreeMap<String, LayerConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanConfig>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interface: Option<InterfaceConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomConfig {
    pub cavity_radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<Vec<TransitionConfig>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionConfig {
    pub frequency: f64,
    pub dipole_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub electric: Option<ResonanceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub magnetic: Option<ResonanceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thickness: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceConfig {
    pub transverse: f64,
    pub plasma: f64,
    #[serde(default)]
    pub damping: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    Position,
    ElectricPlasma,
    MagneticPlasma,
    CavityRadius,
    Thickness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpacingName {
    #[default]
    Linear,
    Log,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub axis: AxisName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer: Option<usize>,
    #[serde(default)]
    pub spacing: SpacingName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub mirrored: bool,
    #[serde(default = "yes")]
    pub local_field: bool,
    #[serde(default = "yes")]
    pub include_u1: bool,
    #[serde(default = "yes")]
    pub include_u2: bool,
    #[serde(default = "yes")]
    pub include_force: bool,
    #[serde(default = "yes")]
    pub compare_uncorrected: bool,
    #[serde(default)]
    pub override_distance_guard: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapName {
    Rational,
    ExpDecay,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_floor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_subdivisions: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterfaceConfig {
    /// 1-based; interface k separates `layer.k` and `layer.k+1`.
    pub index: usize,
    #[serde(default = "yes")]
    pub local_field: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// Command-line flags that take precedence over the document.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Overrides {
    pub no_local_field: bool,
    pub rel_tol: Option<f64>,
    pub override_distance_guard: bool,
}

fn positive(name: &str, v: f64) -> CliResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::config(format!("{name} must be positive and finite, got {v}")))
    }
}

impl ResonanceConfig {
    fn to_core(self, what: &str) -> CliResult<Resonance> {
        positive(&format!("{what}.transverse"), self.transverse)?;
        if !(self.plasma.is_finite() && self.plasma >= 0.0) {
            return Err(CliError::config(format!("{what}.plasma must be non-negative, got {}", self.plasma)));
        }
        if !(self.damping.is_finite() && self.damping >= 0.0) {
            return Err(CliError::config(format!("{what}.damping must be non-negative, got {}", self.damping)));
        }
        Ok(Resonance::new(self.transverse, self.plasma, self.damping))
    }
}

impl LayerConfig {
    fn material(&self, n: usize) -> CliResult<MaterialModel> {
        let e = match self.electric {
            Some(r) => r.to_core(&format!("layer.{n}.electric"))?,
            None => Resonance::NONE,
        };
        let m = match self.magnetic {
            Some(r) => r.to_core(&format!("layer.{n}.magnetic"))?,
            None => Resonance::NONE,
        };
        Ok(MaterialModel::new(e, m))
    }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        cfg.layer_order()?;
        Ok(cfg)
    }

    /// Copy with command-line overrides applied.
    pub fn with_overrides(mut self, o: &Overrides) -> Self {
        if let Some(t) = o.rel_tol {
            self.quadrature.rel_tol = Some(t);
        }
        if o.no_local_field {
            if let Some(s) = self.scan.as_mut() {
                s.local_field = false;
            }
            if let Some(i) = self.interface.as_mut() {
                i.local_field = false;
            } else {
                self.interface = Some(InterfaceConfig {
                    index: 1,
                    local_field: false,
                });
            }
        }
        if o.override_distance_guard {
            if let Some(s) = self.scan.as_mut() {
                s.override_distance_guard = true;
            }
        }
        self
    }

    /// Canonical text of everything that influences results; output
    /// destination settings are excluded.
    pub fn canonical(&self) -> String {
        let mut c = self.clone();
        c.output = OutputConfig::default();
        toml::to_string(&c).expect("scenario configs always serialise")
    }

    /// Hex SHA-256 of [`Self::canonical`].
    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }

    /// Layer configs ordered bottom to top; keys must be exactly 1..=n.
    fn layer_order(&self) -> CliResult<Vec<&LayerConfig>> {
        let mut keyed = Vec::with_capacity(self.layer.len());
        for (k, v) in &self.layer {
            let n: usize = k
                .parse()
                .map_err(|_| CliError::config(format!("layer key `{k}` is not a positive integer")))?;
            keyed.push((n, v));
        }
        keyed.sort_by_key(|(n, _)| *n);
        if keyed.len() < 2 {
            return Err(CliError::config("at least two layers are required"));
        }
        for (expect, (n, _)) in keyed.iter().enumerate() {
            if *n != expect + 1 {
                return Err(CliError::config(format!(
                    "layers must be numbered 1..={} without gaps",
                    keyed.len()
                )));
            }
        }
        Ok(keyed.into_iter().map(|(_, v)| v).collect())
    }

    pub fn atom_model(&self) -> CliResult<AtomModel> {
        match &self.atom.transitions {
            None => Ok(AtomModel::two_level()),
            Some(ts) => Ok(AtomModel::new(
                ts.iter()
                    .map(|t| Transition {
                        frequency: t.frequency,
                        dipole_sq: t.dipole_sq,
                    })
                    .collect(),
            )?),
        }
    }

    /// Stack with the atom at `[atom].position` (or z = 1 above the first
    /// interface when unset).
    pub fn stack(&self) -> CliResult<LayerStack> {
        positive("atom.cavity_radius", self.atom.cavity_radius)?;
        let order = self.layer_order()?;
        let last = order.len() - 1;
        let mut layers = Vec::with_capacity(order.len());
        for (k, cfg) in order.iter().enumerate() {
            let n = k + 1;
            let material = cfg.material(n)?;
            let outer = k == 0 || k == last;
            let layer = match (outer, cfg.thickness) {
                (true, None) => Layer::half_space(material),
                (true, Some(_)) => {
                    return Err(CliError::config(format!(
                        "layer.{n} is an outer half-space and takes no thickness"
                    )))
                }
                (false, Some(d)) => {
                    positive(&format!("layer.{n}.thickness"), d)?;
                    Layer::slab(material, d)
                }
                (false, None) => return Err(CliError::config(format!("layer.{n} needs a thickness"))),
            };
            layers.push(layer);
        }
        let stack = LayerStack::new(layers, self.atom.cavity_radius).with_atom_at(self.atom.position.unwrap_or(1.0));
        stack.validate().map_err(|e| CliError::config(e.to_string()))?;
        Ok(stack)
    }

    pub fn quadrature_spec(&self) -> CliResult<QuadratureSpec> {
        let mut q = QuadratureSpec::default();
        if let Some(t) = self.quadrature.rel_tol {
            q.rel_tol = t;
        }
        if let Some(a) = self.quadrature.abs_floor {
            q.abs_floor = a;
        }
        if let Some(m) = self.quadrature.max_subdivisions {
            q.max_subdivisions = m;
        }
        if let Some(m) = self.quadrature.map {
            q.map = match m {
                MapName::Rational => MapKind::Rational,
                MapName::ExpDecay => MapKind::ExpDecay,
            };
        }
        q.validate().map_err(|e| CliError::config(format!("quadrature: {e}")))?;
        Ok(q)
    }

    /// Engine options for single evaluations (interface command).
    pub fn engine_options(&self) -> CliResult<EngineOptions> {
        let lf = match (&self.scan, &self.interface) {
            (_, Some(i)) if !i.local_field => LocalField::Uncorrected,
            (Some(s), _) if !s.local_field => LocalField::Uncorrected,
            _ => LocalField::Corrected,
        };
        Ok(EngineOptions {
            quadrature: self.quadrature_spec()?,
            local_field: lf,
            override_distance_guard: self.scan.is_some_and(|s| s.override_distance_guard),
            ..EngineOptions::default()
        })
    }

    fn layer_index(&self, scan: &ScanConfig, n_layers: usize) -> CliResult<usize> {
        let n = scan
            .layer
            .ok_or_else(|| CliError::config("scan.layer is required for this axis"))?;
        if n == 0 || n > n_layers {
            return Err(CliError::config(format!("scan.layer must be in 1..={n_layers}, got {n}")));
        }
        Ok(n - 1)
    }

    pub fn scan_request(&self) -> CliResult<ScanRequest> {
        let scan = self
            .scan
            .ok_or_else(|| CliError::config("the potential command needs a [scan] section"))?;
        let stack = self.stack()?;
        let n = stack.n_layers();
        let axis = match scan.axis {
            AxisName::Position => ScanAxis::Position,
            AxisName::ElectricPlasma => ScanAxis::ElectricPlasma {
                layer: self.layer_index(&scan, n)?,
            },
            AxisName::MagneticPlasma => ScanAxis::MagneticPlasma {
                layer: self.layer_index(&scan, n)?,
            },
            AxisName::CavityRadius => ScanAxis::CavityRadius,
            AxisName::Thickness => {
                let layer = self.layer_index(&scan, n)?;
                if layer == 0 || layer + 1 == n {
                    return Err(CliError::config("thickness scans need an interior layer"));
                }
                ScanAxis::Thickness { layer }
            }
        };
        if scan.axis != AxisName::Position && self.atom.position.is_none() {
            return Err(CliError::config("atom.position is required unless the scan moves the atom"));
        }
        let grid = Grid {
            min: scan.min,
            max: scan.max,
            count: scan.count,
            spacing: match scan.spacing {
                SpacingName::Linear => Spacing::Linear,
                SpacingName::Log => Spacing::Log,
            },
            mirrored: scan.mirrored,
        };
        grid.validate()?;
        let engine = EngineOptions {
            quadrature: self.quadrature_spec()?,
            local_field: if scan.local_field {
                LocalField::Corrected
            } else {
                LocalField::Uncorrected
            },
            include_u1: scan.include_u1,
            include_force: scan.include_force && scan.include_u2,
            override_distance_guard: scan.override_distance_guard,
        };
        Ok(ScanRequest {
            stack,
            atom: self.atom_model()?,
            axis,
            grid,
            options: ScanOptions {
                engine,
                compare_uncorrected: scan.compare_uncorrected,
                include_u2: scan.include_u2,
            },
        })
    }

    /// Zero-based interface index from `[interface]` (default: the first).
    pub fn interface_index(&self) -> CliResult<usize> {
        let n_layers = self.layer_order()?.len();
        let k = self.interface.map_or(1, |i| i.index);
        if k == 0 || k >= n_layers {
            return Err(CliError::config(format!(
                "interface.index must be in 1..={}, got {k}",
                n_layers - 1
            )));
        }
        Ok(k - 1)
    }

    /// Materials on both sides of the configured interface.
    pub fn interface_media(&self) -> CliResult<(MaterialModel, MaterialModel)> {
        let k = self.interface_index()?;
        let order = self.layer_order()?;
        Ok((order[k].material(k + 1)?, order[k + 1].material(k + 2)?))
    }
}
