//! Config file parsing and validation.
//!
//! Plain `key = value` lines; `#` starts a comment; unknown keys are errors.
//! The full schema is documented in the repository README.

use crate::error::{CliError, Result};
use maxlab_core::shear1d::{BoundaryData, BoundarySpec, Side};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    ShearXiSweep,
    ShearStokes,
    ShearEnergyAudit,
    MultidXiSweep,
    MultidAudits,
}

impl Scenario {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::ShearXiSweep => "shear-xi-sweep",
            Scenario::ShearStokes => "shear-stokes",
            Scenario::ShearEnergyAudit => "shear-energy-audit",
            Scenario::MultidXiSweep => "multid-xi-sweep",
            Scenario::MultidAudits => "multid-audits",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "shear-xi-sweep" => Scenario::ShearXiSweep,
            "shear-stokes" => Scenario::ShearStokes,
            "shear-energy-audit" => Scenario::ShearEnergyAudit,
            "multid-xi-sweep" => Scenario::MultidXiSweep,
            "multid-audits" => Scenario::MultidAudits,
            other => {
                return Err(CliError::Usage(format!(
                    "scenario: unknown value '{other}' (expected shear-xi-sweep, \
                     shear-stokes, shear-energy-audit, multid-xi-sweep or multid-audits)"
                )))
            }
        })
    }

    pub fn is_2d(&self) -> bool {
        matches!(self, Scenario::MultidXiSweep | Scenario::MultidAudits)
    }
}

/// Fully resolved run configuration (defaults applied).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    /// Cell counts: `[n]` for 1D, `[nx, ny]` for 2D. Powers of two.
    pub grid: Vec<usize>,
    /// [y_min, y_max] for 1D; the 2D scenarios run on the unit box.
    pub domain: Vec<f64>,
    pub t_final: f64,
    pub g_modulus: f64,
    pub c0: f64,
    /// Strictly decreasing, all ≥ 0; the last entry is the sweep reference.
    pub xi_list: Vec<f64>,
    /// 1D: CFL ratio in (0, 1]. 2D: safety factor for the step-size choice.
    pub cfl: f64,
    pub bc_left: String,
    pub bc_right: String,
    pub initial: String,
    pub amplitude: f64,
    pub outputs: usize,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub threads: usize,
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.parse()
        .map_err(|_| CliError::Usage(format!("{key}: expected a number, got '{v}'")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| CliError::Usage(format!("{key}: expected an integer, got '{v}'")))
}

impl ScenarioConfig {
    /// Parse the key–value text. Every key may appear once; unknown keys
    /// are errors with the offending name.
    pub fn parse(text: &str) -> Result<Self> {
        let mut scenario = None;
        let mut grid = None;
        let mut domain = None;
        let mut t_final = None;
        let mut g_modulus = 1.0;
        let mut c0 = 1.0;
        let mut xi_list = None;
        let mut cfl = None;
        let mut bc_left = None;
        let mut bc_right = None;
        let mut initial = None;
        let mut amplitude = 0.1;
        let mut outputs = None;
        let mut output_dir = None;
        let mut seed = 0u64;
        let mut threads = 1usize;
        let mut seen = BTreeSet::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("line {}: expected 'key = value'", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(CliError::Usage(format!("{key}: duplicate key")));
            }
            match key {
                "scenario" => scenario = Some(Scenario::parse(value)?),
                "grid" => {
                    let parts: Vec<usize> = value
                        .split_whitespace()
                        .map(|p| parse_usize("grid", p))
                        .collect::<Result<_>>()?;
                    if parts.is_empty() || parts.len() > 2 {
                        return Err(CliError::Usage("grid: expected 'N' or 'Nx Ny'".to_string()));
                    }
                    grid = Some(parts);
                }
                "domain" => {
                    let parts: Vec<f64> = value
                        .split_whitespace()
                        .map(|p| parse_f64("domain", p))
                        .collect::<Result<_>>()?;
                    if parts.len() != 2 {
                        return Err(CliError::Usage(
                            "domain: expected 'y_min y_max'".to_string(),
                        ));
                    }
                    domain = Some(parts);
                }
                "t_final" => t_final = Some(parse_f64("t_final", value)?),
                "g_modulus" => g_modulus = parse_f64("g_modulus", value)?,
                "c0" => c0 = parse_f64("c0", value)?,
                "xi_list" => {
                    let parts: Vec<f64> = value
                        .split_whitespace()
                        .map(|p| parse_f64("xi_list", p))
                        .collect::<Result<_>>()?;
                    xi_list = Some(parts);
                }
                "cfl" => cfl = Some(parse_f64("cfl", value)?),
                "bc_left" => bc_left = Some(value.to_string()),
                "bc_right" => bc_right = Some(value.to_string()),
                "initial" => initial = Some(value.to_string()),
                "amplitude" => amplitude = parse_f64("amplitude", value)?,
                "outputs" => outputs = Some(parse_usize("outputs", value)?),
                "output_dir" => output_dir = Some(PathBuf::from(value)),
                "seed" => {
                    seed = value.parse().map_err(|_| {
                        CliError::Usage(format!("seed: expected an integer, got '{value}'"))
                    })?
                }
                "threads" => threads = parse_usize("threads", value)?,
                other => {
                    return Err(CliError::Usage(format!("unknown key '{other}'")));
                }
            }
        }

        let scenario =
            scenario.ok_or_else(|| CliError::Usage("scenario: missing (required)".into()))?;
        let grid = grid.ok_or_else(|| CliError::Usage("grid: missing (required)".into()))?;
        let t_final =
            t_final.ok_or_else(|| CliError::Usage("t_final: missing (required)".into()))?;
        let xi_list =
            xi_list.ok_or_else(|| CliError::Usage("xi_list: missing (required)".into()))?;
        let output_dir =
            output_dir.ok_or_else(|| CliError::Usage("output_dir: missing (required)".into()))?;

        let cfg = ScenarioConfig {
            scenario,
            grid,
            domain: domain.unwrap_or_else(|| vec![0.0, 1.0]),
            t_final,
            g_modulus,
            c0,
            xi_list,
            cfl: cfl.unwrap_or(if scenario.is_2d() { 0.45 } else { 1.0 }),
            bc_left: bc_left.unwrap_or_else(|| "periodic".into()),
            bc_right: bc_right.unwrap_or_else(|| "periodic".into()),
            initial: initial.unwrap_or_else(|| default_initial(scenario).into()),
            amplitude,
            outputs: outputs.unwrap_or(if scenario.is_2d() { 5 } else { 16 }),
            output_dir,
            seed,
            threads,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0) {
            return Err(CliError::Usage(format!(
                "t_final: must be > 0, got {}",
                self.t_final
            )));
        }
        if !(self.g_modulus > 0.0) {
            return Err(CliError::Usage(format!(
                "g_modulus: must be > 0, got {}",
                self.g_modulus
            )));
        }
        if !(self.c0 > 0.0) {
            return Err(CliError::Usage(format!("c0: must be > 0, got {}", self.c0)));
        }
        if self.scenario.is_2d() != (self.grid.len() == 2) && self.scenario.is_2d() {
            return Err(CliError::Usage("grid: 2D scenarios need 'Nx Ny'".into()));
        }
        if !self.scenario.is_2d() && self.grid.len() != 1 {
            return Err(CliError::Usage("grid: 1D scenarios need a single N".into()));
        }
        for &n in &self.grid {
            if n < 4 || !n.is_power_of_two() {
                return Err(CliError::Usage(format!(
                    "grid: sizes must be powers of two ≥ 4, got {n}"
                )));
            }
        }
        if self.domain.len() != 2 || !(self.domain[1] > self.domain[0]) {
            return Err(CliError::Usage(format!(
                "domain: need y_min < y_max, got {:?}",
                self.domain
            )));
        }
        if self.xi_list.is_empty() {
            return Err(CliError::Usage("xi_list: must be nonempty".into()));
        }
        for w in self.xi_list.windows(2) {
            if !(w[1] < w[0]) {
                return Err(CliError::Usage(format!(
                    "xi_list: must be strictly decreasing, got {:?}",
                    self.xi_list
                )));
            }
        }
        if !(*self.xi_list.last().unwrap() >= 0.0) {
            return Err(CliError::Usage(format!(
                "xi_list: entries must be ≥ 0, got {:?}",
                self.xi_list
            )));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(CliError::Usage(format!(
                "cfl: must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if self.outputs == 0 {
            return Err(CliError::Usage("outputs: must be ≥ 1".into()));
        }
        if self.threads == 0 {
            return Err(CliError::Usage("threads: must be ≥ 1".into()));
        }
        // Boundary syntax (and sign classes) checked up front.
        self.boundary(Side::Left)?;
        self.boundary(Side::Right)?;
        self.check_initial()?;
        Ok(())
    }

    fn check_initial(&self) -> Result<()> {
        let known_1d = ["sine-velocity", "zero"];
        let known_2d = [
            "density-wave",
            "compatible-smooth",
            "compatible-gentle",
            "shear-wave",
        ];
        let ok = if self.scenario.is_2d() {
            known_2d.contains(&self.initial.as_str())
        } else {
            known_1d.contains(&self.initial.as_str())
        };
        if !ok {
            return Err(CliError::Usage(format!(
                "initial: unknown preset '{}' for scenario {}",
                self.initial,
                self.scenario.as_str()
            )));
        }
        Ok(())
    }

    /// Build the boundary spec for one side from its config string.
    ///
    /// Syntax: `periodic` | `dirichlet-velocity:<g>` | `dissipative:<c_u>:<c_tau>:<g>`
    /// with `<g>` one of `zero`, `const:<v>`, `heaviside:<U>`.
    pub fn boundary(&self, side: Side) -> Result<BoundarySpec> {
        let text = match side {
            Side::Left => &self.bc_left,
            Side::Right => &self.bc_right,
        };
        let key = match side {
            Side::Left => "bc_left",
            Side::Right => "bc_right",
        };
        let parts: Vec<&str> = text.split(':').collect();
        let data = |spec: &[&str]| -> Result<BoundaryData> {
            Ok(match spec {
                ["zero"] => BoundaryData::Zero,
                ["const", v] => BoundaryData::Const(parse_f64(key, v)?),
                ["heaviside", v] => BoundaryData::Heaviside(parse_f64(key, v)?),
                other => {
                    return Err(CliError::Usage(format!(
                        "{key}: bad boundary data '{}'",
                        other.join(":")
                    )))
                }
            })
        };
        match parts.as_slice() {
            ["periodic"] => Ok(BoundarySpec::periodic(side)),
            ["dirichlet-velocity", rest @ ..] => {
                Ok(BoundarySpec::dirichlet_velocity(side, data(rest)?))
            }
            ["dissipative", cu, ct, rest @ ..] => Ok(BoundarySpec::dissipative(
                side,
                parse_f64(key, cu)?,
                parse_f64(key, ct)?,
                data(rest)?,
                self.g_modulus,
            )?),
            _ => Err(CliError::Usage(format!(
                "{key}: expected periodic | dirichlet-velocity:<g> | dissipative:<c_u>:<c_tau>:<g>, got '{text}'"
            ))),
        }
    }

    /// Canonical config text (the format `parse` reads).
    pub fn to_text(&self) -> String {
        let grid = self
            .grid
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let xi = self
            .xi_list
            .iter()
            .map(|x| format!("{x}"))
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "scenario = {}\ngrid = {}\ndomain = {} {}\nt_final = {}\ng_modulus = {}\n\
             c0 = {}\nxi_list = {}\ncfl = {}\nbc_left = {}\nbc_right = {}\ninitial = {}\n\
             amplitude = {}\noutputs = {}\noutput_dir = {}\nseed = {}\nthreads = {}\n",
            self.scenario.as_str(),
            grid,
            self.domain[0],
            self.domain[1],
            self.t_final,
            self.g_modulus,
            self.c0,
            xi,
            self.cfl,
            self.bc_left,
            self.bc_right,
            self.initial,
            self.amplitude,
            self.outputs,
            self.output_dir.display(),
            self.seed,
            self.threads
        )
    }
}

fn default_initial(s: Scenario) -> &'static str {
    match s {
        Scenario::ShearXiSweep | Scenario::ShearEnergyAudit => "sine-velocity",
        Scenario::ShearStokes => "zero",
        Scenario::MultidXiSweep => "density-wave",
        Scenario::MultidAudits => "shear-wave",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "scenario = shear-xi-sweep\ngrid = 64\nt_final = 1.0\n\
                           xi_list = 0.4 0.2 0.1 0.05 0\noutput_dir = out\n";

    #[test]
    fn minimal_config_parses_with_defaults() {
        let cfg = ScenarioConfig::parse(MINIMAL).unwrap();
        assert_eq!(cfg.scenario, Scenario::ShearXiSweep);
        assert_eq!(cfg.cfl, 1.0);
        assert_eq!(cfg.bc_left, "periodic");
        assert_eq!(cfg.initial, "sine-velocity");
        assert_eq!(cfg.outputs, 16);
    }

    #[test]
    fn unknown_key_rejected() {
        let bad = format!("{MINIMAL}cfl_number = 1.0\n");
        let err = ScenarioConfig::parse(&bad).unwrap_err();
        assert!(err.to_string().contains("cfl_number"), "{err}");
    }

    #[test]
    fn negative_modulus_rejected_with_field_name() {
        let bad = format!("{MINIMAL}g_modulus = -1\n");
        let err = ScenarioConfig::parse(&bad).unwrap_err();
        assert!(err.to_string().contains("g_modulus"), "{err}");
    }

    #[test]
    fn non_power_of_two_grid_rejected() {
        let bad = MINIMAL.replace("grid = 64", "grid = 100");
        assert!(ScenarioConfig::parse(&bad).is_err());
    }

    #[test]
    fn xi_list_must_strictly_decrease() {
        let bad = MINIMAL.replace("xi_list = 0.4 0.2 0.1 0.05 0", "xi_list = 0.4 0.4 0");
        assert!(ScenarioConfig::parse(&bad).is_err());
    }

    #[test]
    fn boundary_specs_parse() {
        let txt = MINIMAL
            .replace("scenario = shear-xi-sweep", "scenario = shear-stokes")
            .replace("xi_list = 0.4 0.2 0.1 0.05 0", "xi_list = 0.5")
            + "bc_left = dirichlet-velocity:heaviside:1\nbc_right = dissipative:1:1:zero\ninitial = zero\n";
        let cfg = ScenarioConfig::parse(&txt).unwrap();
        assert!(cfg.boundary(Side::Left).is_ok());
        assert!(cfg.boundary(Side::Right).is_ok());
    }

    #[test]
    fn round_trip_through_text() {
        let cfg = ScenarioConfig::parse(MINIMAL).unwrap();
        let again = ScenarioConfig::parse(&cfg.to_text()).unwrap();
        assert_eq!(cfg.to_text(), again.to_text());
    }
}
