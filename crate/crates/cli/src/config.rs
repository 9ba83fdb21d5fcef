//! JSON job configuration: surface, system, optional wall window, options.

use std::fmt;

use serde::{Deserialize, Serialize};

use cohsys::{DivisorClass, SurfaceData, SystemType, WallSearchWindow};

/// Errors split by exit code: configuration problems exit 2, operation
/// preconditions exit 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Config(String),
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cohsys::Error> for CliError {
    fn from(err: cohsys::Error) -> Self {
        CliError::Precondition(err.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Surface field of the config: a builtin name or explicit lattice data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceInput {
    Builtin {
        builtin: String,
    },
    Explicit {
        rank: usize,
        gram: Vec<Vec<i64>>,
        #[serde(rename = "K")]
        k: Vec<i64>,
        #[serde(rename = "H")]
        h: Vec<i64>,
        #[serde(rename = "chi_O")]
        chi_o: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

impl SurfaceInput {
    pub fn resolve(&self) -> Result<SurfaceData, CliError> {
        match self {
            SurfaceInput::Builtin { builtin } => {
                SurfaceData::builtin(builtin).map_err(|e| CliError::Config(e.to_string()))
            }
            SurfaceInput::Explicit { rank, gram, k, h, chi_o, name } => {
                if gram.len() != *rank {
                    return Err(CliError::Config(format!(
                        "gram matrix has {} rows, declared rank is {rank}",
                        gram.len()
                    )));
                }
                SurfaceData::new(
                    gram.clone(),
                    DivisorClass::new(k.clone()),
                    DivisorClass::new(h.clone()),
                    *chi_o,
                    name.clone(),
                )
                .map_err(|e| CliError::Config(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemInput {
    pub n: u32,
    pub c1: Vec<i64>,
    pub c2: i64,
    pub k: u32,
}

impl SystemInput {
    pub fn resolve(&self, surface: &SurfaceData) -> Result<SystemType, CliError> {
        if self.c1.len() != surface.rank() {
            return Err(CliError::Config(format!(
                "c1 has {} coordinates, lattice rank is {}",
                self.c1.len(),
                surface.rank()
            )));
        }
        SystemType::new(self.n, DivisorClass::new(self.c1.clone()), self.c2, self.k)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowInput {
    pub n_max: u32,
    pub k_max: u32,
    pub s_min: i64,
    pub s_max: i64,
    pub chi_min: i64,
    pub chi_max: i64,
}

impl WindowInput {
    pub fn resolve(&self) -> Result<WallSearchWindow, CliError> {
        WallSearchWindow::new(
            self.n_max,
            self.k_max,
            self.s_min,
            self.s_max,
            self.chi_min,
            self.chi_max,
        )
        .map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionsInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default)]
    pub assert_ample: bool,
    #[serde(default)]
    pub assert_c2_large: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub surface: SurfaceInput,
    pub system: SystemInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowInput>,
    #[serde(default)]
    pub options: OptionsInput,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn resolve(&self) -> Result<(SurfaceData, SystemType), CliError> {
        let surface = self.surface.resolve()?;
        let system = self.system.resolve(&surface)?;
        Ok((surface, system))
    }

    /// The window from the config, or the documented default for the type.
    pub fn window_or_default(
        &self,
        surface: &SurfaceData,
        system: &SystemType,
    ) -> Result<WallSearchWindow, CliError> {
        match &self.window {
            Some(w) => w.resolve(),
            None => Ok(WallSearchWindow::default_for(surface, system)?),
        }
    }
}
