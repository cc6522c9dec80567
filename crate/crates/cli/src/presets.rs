//! Figure-reproduction scenarios. The config files live in `presets/` at
//! the repository root and are embedded at build time.

use crate::error::{CliError, CliResult};

/// One scenario file of a preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresetFile {
    /// File stem, also used to name the output.
    pub name: &'static str,
    pub text: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub files: &'static [PresetFile],
}

macro_rules! preset_file {
    ($name:literal) => {
        PresetFile {
            name: $name,
            text: include_str!(concat!("../../../presets/", $name, ".toml")),
        }
    };
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1",
        description: "two-layer U2 versus position for omega_Pe2 = 1, 0.4, 0.2",
        files: &[
            preset_file!("fig1_case1"),
            preset_file!("fig1_case2"),
            preset_file!("fig1_case3"),
        ],
    },
    Preset {
        name: "fig2",
        description: "U2 versus omega_Pe2 at z = 0.01 and z = 3",
        files: &[preset_file!("fig2_z0p01"), preset_file!("fig2_z3")],
    },
    Preset {
        name: "fig3",
        description: "exact U1 versus cavity radius, pure electric and pure magnetic host",
        files: &[preset_file!("fig3_electric"), preset_file!("fig3_magnetic")],
    },
    Preset {
        name: "fig4",
        description: "total potential for omega_Pm2 = omega_Pe2 = 0, 0.4, 1",
        files: &[
            preset_file!("fig4_p0"),
            preset_file!("fig4_p0p4"),
            preset_file!("fig4_p1"),
        ],
    },
    Preset {
        name: "fig5",
        description: "three-layer U2 for d2 = 5, 2, 1, asymmetric and symmetric",
        files: &[
            preset_file!("fig5_d5_asym"),
            preset_file!("fig5_d2_asym"),
            preset_file!("fig5_d1_asym"),
            preset_file!("fig5_d5_sym"),
            preset_file!("fig5_d2_sym"),
            preset_file!("fig5_d1_sym"),
        ],
    },
];

pub fn find(name: &str) -> CliResult<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let known: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        CliError::config(format!("unknown preset `{name}` (known: {})", known.join(", ")))
    })
}

impl Preset {
    pub fn file(&self, name: &str) -> CliResult<&'static PresetFile> {
        self.files
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| CliError::config(format!("preset {} has no file {name}", self.name)))
    }
}
