//! The three subcommands as library functions: each turns a scenario into
//! an output [`Document`].

use std::fs;
use std::path::{Path, PathBuf};

use lfvdw_core::asymptotics::{c1_equal_electric, c4_derivatives, DERIVATIVE_NOISE_FLOOR};
use lfvdw_core::{
    coefficients as core_coefficients, interface_report, run_scan, ScanAxis, ScanTable, Sign, StaticPair,
};

use crate::config::{Format, Overrides, ScenarioConfig};
use crate::error::{CliError, CliResult};
use crate::output::{CurveDocument, Document, Header, Quantity, QuantityDocument};
use crate::presets;

/// One scenario to evaluate; presets may yield several.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub name: String,
    pub config: ScenarioConfig,
}

/// Jobs from a config file or a preset, with overrides applied.
pub fn load_jobs(config: Option<&Path>, preset: Option<&str>, overrides: &Overrides) -> CliResult<Vec<Job>> {
    let raw: Vec<(String, String)> = match (config, preset) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "scenario".into());
            vec![(name, text)]
        }
        (None, Some(name)) => presets::find(name)?
            .files
            .iter()
            .map(|f| (f.name.to_string(), f.text.to_string()))
            .collect(),
        (Some(_), Some(_)) => return Err(CliError::config("pass either --config or --preset, not both")),
        (None, None) => return Err(CliError::config("one of --config or --preset is required")),
    };
    raw.into_iter()
        .map(|(name, text)| {
            let config = ScenarioConfig::from_toml(&text)
                .map_err(|e| CliError::config(format!("{name}: {e}")))?
                .with_overrides(overrides);
            Ok(Job { name, config })
        })
        .collect()
}

/// Result of a command: the document plus non-fatal row faults.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: Document,
    pub faults: Vec<String>,
}

fn header(cfg: &ScenarioConfig) -> Header {
    Header::new(cfg.sha256(), cfg.title.clone())
}

pub fn axis_name(axis: ScanAxis) -> String {
    match axis {
        ScanAxis::Position => "position".into(),
        ScanAxis::ElectricPlasma { layer } => format!("electric_plasma[layer {}]", layer + 1),
        ScanAxis::MagneticPlasma { layer } => format!("magnetic_plasma[layer {}]", layer + 1),
        ScanAxis::CavityRadius => "cavity_radius".into(),
        ScanAxis::Thickness { layer } => format!("thickness[layer {}]", layer + 1),
    }
}

/// Runs the configured scan.
pub fn potential_table(cfg: &ScenarioConfig) -> CliResult<ScanTable> {
    Ok(run_scan(&cfg.scan_request()?)?)
}

pub fn potential(cfg: &ScenarioConfig) -> CliResult<Outcome> {
    let request = cfg.scan_request()?;
    let table = run_scan(&request)?;
    let faults = table
        .faults()
        .map(|r| {
            format!(
                "row {} (scan value {}): {}",
                r.index,
                r.scan_value,
                r.fault.as_deref().unwrap_or_default()
            )
        })
        .collect();
    Ok(Outcome {
        document: Document::Curve(CurveDocument::new(header(cfg), axis_name(request.axis), &table)),
        faults,
    })
}

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Negative => "negative",
        Sign::Positive => "positive",
        Sign::Inconclusive => "inconclusive",
    }
}

/// Asymptotic coefficients for the configured interface; the atom sits in
/// the upper medium.
pub fn coefficients(cfg: &ScenarioConfig) -> CliResult<Outcome> {
    let (m1, m2) = cfg.interface_media()?;
    let atom = cfg.atom_model()?;
    let spec = cfg.quadrature_spec()?;
    let c = core_coefficients(&m1, &m2, &atom, &spec)?;
    let pair = StaticPair::from_materials(&m1, &m2);
    let d = c4_derivatives(&pair, atom.static_alpha(), &spec)?;
    let mut q = vec![
        Quantity::new("c4", c.c4.value, Some(c.c4.error_estimate)).with_note("U2 ~ c4/z^4 at large z"),
        Quantity::new("c4_small_contrast", c.c4_small_contrast, None)
            .with_note("closed form, leading order in eps1-eps2 and mu1-mu2"),
        Quantity::new("c3", c.c3.value, Some(c.c3.error_estimate)).with_note("U2 ~ -c3/z^3 at small z"),
        Quantity::new("c1", c.c1.value, Some(c.c1.error_estimate)).with_note("next term c1/z at small z"),
    ];
    if m1.electric == m2.electric {
        let e = c1_equal_electric(&m1, &m2, &atom, &spec)?;
        q.push(Quantity::new("c1_equal_electric", e.value, Some(e.error_estimate)));
    }
    for (name, v) in ["dc4_deps1", "dc4_dmu1", "dc4_dmu2"].into_iter().zip(d) {
        q.push(Quantity::new(name, v, None).with_note(sign_name(Sign::of(v, DERIVATIVE_NOISE_FLOOR))));
    }
    q.push(
        Quantity::new("retarded_above", c.regime.retarded_above, None)
            .with_note("retarded asymptote valid for z much larger"),
    );
    q.push(
        Quantity::new("nonretarded_below", c.regime.nonretarded_below, None)
            .with_note("non-retarded asymptote valid for z much smaller"),
    );
    Ok(Outcome {
        document: Document::Quantities(QuantityDocument {
            header: header(cfg),
            kind: "coefficients".into(),
            quantities: q,
        }),
        faults: Vec::new(),
    })
}

/// On-interface estimates for the configured interface.
pub fn interface(cfg: &ScenarioConfig) -> CliResult<Outcome> {
    let stack = cfg.stack()?;
    let atom = cfg.atom_model()?;
    let options = cfg.engine_options()?;
    let k = cfg.interface_index()?;
    let r = interface_report(&stack, k, &atom, &options)?;
    let cf = r.closed_form;
    let mut q = vec![
        Quantity::new("closed_form", cf.value(), Some(cf.bulk.error_estimate + cf.interface.error_estimate)),
        Quantity::new("closed_form_bulk", cf.bulk.value, Some(cf.bulk.error_estimate)),
        Quantity::new("closed_form_interface", cf.interface.value, Some(cf.interface.error_estimate)),
        Quantity::new("averaged", r.averaged.value, None)
            .with_note(if r.averaged.converged { "" } else { "not_converged" }),
        Quantity::new("averaged_above", r.averaged.above, None),
        Quantity::new("averaged_below", r.averaged.below, None),
        Quantity::new("relative_gap", r.relative_gap, None),
        Quantity::new("finite_size_length", r.finite_size_length, None),
    ];
    match r.finite_size {
        Some(n) => {
            q.push(Quantity::new("finite_size", n.value(), Some(n.bulk.error_estimate + n.interface.error_estimate)));
            q.push(Quantity::new("finite_size_interface", n.interface.value, Some(n.interface.error_estimate)));
        }
        None => q.push(Quantity {
            quantity: "finite_size".into(),
            value: None,
            error_estimate: None,
            note: Some("defined for purely electric media only".into()),
        }),
    }
    for x in q.iter_mut() {
        if x.note.as_deref() == Some("") {
            x.note = None;
        }
    }
    Ok(Outcome {
        document: Document::Quantities(QuantityDocument {
            header: header(cfg),
            kind: "interface".into(),
            quantities: q,
        }),
        faults: Vec::new(),
    })
}

/// Where each job's output goes: `None` means standard output.
pub fn destinations(jobs: &[Job], out: Option<&Path>, format: Format) -> CliResult<Vec<Option<PathBuf>>> {
    match (jobs.len(), out) {
        (1, Some(p)) => Ok(vec![Some(p.to_path_buf())]),
        (1, None) => Ok(vec![jobs[0].config.output.path.as_ref().map(PathBuf::from)]),
        (_, Some(dir)) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.display().to_string(),
                source,
            })?;
            Ok(jobs
                .iter()
                .map(|j| Some(dir.join(format!("{}.{}", j.name, format.extension()))))
                .collect())
        }
        (n, None) => Err(CliError::config(format!(
            "this input yields {n} outputs; pass --out <directory>"
        ))),
    }
}

pub fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
