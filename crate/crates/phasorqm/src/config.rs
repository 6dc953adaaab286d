//! Line-based `key = value` run configuration.
//!
//! Runs are reproducible artifacts: everything a command needs lives in one
//! config file that can be checked into a test fixture. `#` starts a
//! comment, keys are flat snake_case, unknown keys are errors, and every
//! command validates exactly the keys it accepts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::grid::{Boundary, Grid1D};
use crate::representation::Helicity;
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Propagate,
    Eigen,
    Spectrum,
    Vortex,
    Verify,
}

impl Command {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "propagate" => Some(Command::Propagate),
            "eigen" => Some(Command::Eigen),
            "spectrum" => Some(Command::Spectrum),
            "vortex" => Some(Command::Vortex),
            "verify" => Some(Command::Verify),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Propagate => "propagate",
            Command::Eigen => "eigen",
            Command::Spectrum => "spectrum",
            Command::Vortex => "vortex",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitChoice {
    Natural,
    SiElectron,
}

impl UnitChoice {
    pub fn units(&self) -> UnitSystem {
        match self {
            UnitChoice::Natural => UnitSystem::natural(),
            UnitChoice::SiElectron => UnitSystem::si_electron(),
        }
    }
}

/// Initial-state selection for grid commands.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialStateSpec {
    BoxStates {
        modes: Vec<usize>,
        weights: Vec<f64>,
        helicity: Helicity,
    },
    PlaneWave {
        amplitude: f64,
        k: f64,
        /// Defaults to the free dispersion ħk²/2m when absent.
        omega: Option<f64>,
        helicity: Helicity,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    Zero,
    ConstantOffset(f64),
    File { path: PathBuf, offset: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub length: f64,
    pub n_points: usize,
    pub boundary: Boundary,
}

impl GridSpec {
    pub fn build(&self) -> Result<Grid1D> {
        Grid1D::new(self.length, self.n_points, self.boundary)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VortexSpec {
    pub n_vortices: usize,
    /// Defaults to the Compton radius of the active unit system.
    pub radius: Option<f64>,
    /// Defaults to the rest-mass rotation rate mc²/ħ.
    pub omega: Option<f64>,
    pub packing: f64,
}

/// A fully validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub unit_choice: UnitChoice,
    pub output: Option<PathBuf>,
    pub grid: Option<GridSpec>,
    pub initial_state: Option<InitialStateSpec>,
    pub potential: PotentialSpec,
    /// Sampling time for analytic state emission (eigen).
    pub time: f64,
    pub dt: Option<f64>,
    pub n_steps: Option<usize>,
    pub record_every: usize,
    pub vortex: VortexSpec,
}

impl RunConfig {
    pub fn units(&self) -> UnitSystem {
        self.unit_choice.units()
    }
}

const ALL_KEYS: &[&str] = &[
    "command",
    "unit_system",
    "output",
    "length",
    "n_points",
    "boundary",
    "initial_state",
    "modes",
    "weights",
    "helicity",
    "time",
    "amplitude",
    "k",
    "omega",
    "potential",
    "offset",
    "potential_file",
    "dt",
    "n_steps",
    "record_every",
    "n_vortices",
    "vortex_radius",
    "vortex_omega",
    "packing",
];

const COMMON_KEYS: &[&str] = &["command", "unit_system", "output"];
const GRID_KEYS: &[&str] = &["length", "n_points", "boundary"];
const STATE_KEYS: &[&str] = &[
    "initial_state",
    "modes",
    "weights",
    "helicity",
    "amplitude",
    "k",
    "omega",
];
const POTENTIAL_KEYS: &[&str] = &["potential", "offset", "potential_file"];
const RUN_KEYS: &[&str] = &["dt", "n_steps", "record_every"];
const VORTEX_KEYS: &[&str] = &["n_vortices", "vortex_radius", "vortex_omega", "packing"];

fn allowed_keys(command: Command) -> Vec<&'static str> {
    let mut keys: Vec<&'static str> = COMMON_KEYS.to_vec();
    match command {
        Command::Propagate | Command::Spectrum => {
            keys.extend(GRID_KEYS);
            keys.extend(STATE_KEYS);
            keys.extend(POTENTIAL_KEYS);
            keys.extend(RUN_KEYS);
        }
        Command::Eigen => {
            keys.extend(GRID_KEYS);
            keys.extend(["modes", "weights", "helicity", "time"]);
        }
        Command::Vortex => keys.extend(VORTEX_KEYS),
        Command::Verify => {}
    }
    keys
}

struct RawConfig {
    entries: BTreeMap<String, (usize, String)>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = line[..eq].trim();
            let value = line[eq + 1..].trim();
            if key.is_empty() {
                return Err(Error::Parse { line: line_no, message: "empty key".into() });
            }
            if value.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("key `{key}` has an empty value"),
                });
            }
            if !ALL_KEYS.contains(&key) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown key `{key}`"),
                });
            }
            if entries.contains_key(key) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate key `{key}`"),
                });
            }
            entries.insert(key.to_string(), (line_no, value.to_string()));
        }
        Ok(Self { entries })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => {
                let x: f64 = v
                    .parse()
                    .map_err(|_| Error::validation(key, format!("not a number: `{v}`")))?;
                if !x.is_finite() {
                    return Err(Error::validation(key, "must be finite"));
                }
                Ok(Some(x))
            }
        }
    }

    fn usize(&self, key: &str) -> Result<Option<usize>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => Ok(Some(v.parse().map_err(|_| {
                Error::validation(key, format!("not a non-negative integer: `{v}`"))
            })?)),
        }
    }

    fn usize_list(&self, key: &str) -> Result<Option<Vec<usize>>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|item| {
                    item.trim().parse().map_err(|_| {
                        Error::validation(key, format!("not an integer list entry: `{item}`"))
                    })
                })
                .collect::<Result<Vec<usize>>>()
                .map(Some),
        }
    }

    fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|item| {
                    item.trim().parse().map_err(|_| {
                        Error::validation(key, format!("not a number list entry: `{item}`"))
                    })
                })
                .collect::<Result<Vec<f64>>>()
                .map(Some),
        }
    }
}

fn positive(key: &str, value: f64) -> Result<f64> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::validation(key, format!("must be positive, got {value}")))
    }
}

fn parse_grid(raw: &RawConfig) -> Result<GridSpec> {
    let length = positive(
        "length",
        raw.f64("length")?
            .ok_or_else(|| Error::validation("length", "missing"))?,
    )?;
    let n_points = raw
        .usize("n_points")?
        .ok_or_else(|| Error::validation("n_points", "missing"))?;
    if n_points < 3 {
        return Err(Error::validation("n_points", "need at least 3 grid points"));
    }
    let boundary = match raw
        .get("boundary")
        .ok_or_else(|| Error::validation("boundary", "missing"))?
    {
        "dirichlet" => Boundary::Dirichlet,
        "periodic" => Boundary::Periodic,
        other => {
            return Err(Error::validation(
                "boundary",
                format!("expected `dirichlet` or `periodic`, got `{other}`"),
            ))
        }
    };
    Ok(GridSpec { length, n_points, boundary })
}

fn parse_helicity(raw: &RawConfig) -> Result<Helicity> {
    match raw.get("helicity") {
        None => Ok(Helicity::Plus),
        Some("plus") => Ok(Helicity::Plus),
        Some("minus") => Ok(Helicity::Minus),
        Some(other) => Err(Error::validation(
            "helicity",
            format!("expected `plus` or `minus`, got `{other}`"),
        )),
    }
}

fn parse_box_modes(raw: &RawConfig) -> Result<(Vec<usize>, Vec<f64>)> {
    let modes = raw
        .usize_list("modes")?
        .ok_or_else(|| Error::validation("modes", "missing"))?;
    if modes.is_empty() {
        return Err(Error::validation("modes", "needs at least one quantum number"));
    }
    if modes.contains(&0) {
        return Err(Error::validation("modes", "quantum numbers start at 1"));
    }
    let weights = match raw.f64_list("weights")? {
        None => vec![1.0; modes.len()],
        Some(w) => w,
    };
    if weights.len() != modes.len() {
        return Err(Error::validation(
            "weights",
            format!("{} weights for {} modes", weights.len(), modes.len()),
        ));
    }
    if weights.iter().all(|&w| w == 0.0) {
        return Err(Error::validation("weights", "all weights are zero"));
    }
    Ok((modes, weights))
}

fn parse_initial_state(raw: &RawConfig) -> Result<InitialStateSpec> {
    match raw.get("initial_state").unwrap_or("box") {
        "box" => {
            for key in ["amplitude", "k", "omega"] {
                if raw.get(key).is_some() {
                    return Err(Error::validation(key, "only valid for initial_state = plane-wave"));
                }
            }
            let (modes, weights) = parse_box_modes(raw)?;
            Ok(InitialStateSpec::BoxStates { modes, weights, helicity: parse_helicity(raw)? })
        }
        "plane-wave" => {
            for key in ["modes", "weights"] {
                if raw.get(key).is_some() {
                    return Err(Error::validation(key, "only valid for initial_state = box"));
                }
            }
            let amplitude = raw.f64("amplitude")?.unwrap_or(1.0);
            if amplitude < 0.0 {
                return Err(Error::validation("amplitude", "must be non-negative"));
            }
            let k = raw.f64("k")?.ok_or_else(|| Error::validation("k", "missing"))?;
            let omega = raw.f64("omega")?;
            if let Some(w) = omega {
                if w < 0.0 {
                    return Err(Error::validation("omega", "must be non-negative"));
                }
            }
            Ok(InitialStateSpec::PlaneWave { amplitude, k, omega, helicity: parse_helicity(raw)? })
        }
        other => Err(Error::validation(
            "initial_state",
            format!("expected `box` or `plane-wave`, got `{other}`"),
        )),
    }
}

fn parse_potential(raw: &RawConfig, config_dir: Option<&Path>) -> Result<PotentialSpec> {
    let offset = raw.f64("offset")?;
    match raw.get("potential").unwrap_or("zero") {
        "zero" => {
            if offset.is_some() {
                return Err(Error::validation(
                    "offset",
                    "only valid for potential = constant or file",
                ));
            }
            if raw.get("potential_file").is_some() {
                return Err(Error::validation("potential_file", "only valid for potential = file"));
            }
            Ok(PotentialSpec::Zero)
        }
        "constant" => {
            if raw.get("potential_file").is_some() {
                return Err(Error::validation("potential_file", "only valid for potential = file"));
            }
            let v = offset.ok_or_else(|| Error::validation("offset", "missing"))?;
            Ok(PotentialSpec::ConstantOffset(v))
        }
        "file" => {
            let rel = raw
                .get("potential_file")
                .ok_or_else(|| Error::validation("potential_file", "missing"))?;
            let mut path = PathBuf::from(rel);
            if path.is_relative() {
                if let Some(dir) = config_dir {
                    path = dir.join(path);
                }
            }
            if !path.is_file() {
                return Err(Error::validation(
                    "potential_file",
                    format!("file does not exist: {}", path.display()),
                ));
            }
            Ok(PotentialSpec::File { path, offset: offset.unwrap_or(0.0) })
        }
        other => Err(Error::validation(
            "potential",
            format!("expected `zero`, `constant` or `file`, got `{other}`"),
        )),
    }
}

/// Parse and validate a configuration. `config_dir` anchors relative file
/// references (pass the directory of the config file).
pub fn parse_config_with_dir(text: &str, config_dir: Option<&Path>) -> Result<RunConfig> {
    let raw = RawConfig::parse(text)?;

    let command = match raw.get("command") {
        None => return Err(Error::validation("command", "missing")),
        Some(c) => Command::parse(c)
            .ok_or_else(|| Error::validation("command", format!("unknown command `{c}`")))?,
    };

    let allowed = allowed_keys(command);
    for (key, (line, _)) in &raw.entries {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::validation(
                key.clone(),
                format!("not valid for command `{}` (line {line})", command.name()),
            ));
        }
    }

    let unit_choice = match raw.get("unit_system").unwrap_or("natural") {
        "natural" => UnitChoice::Natural,
        "si-electron" => UnitChoice::SiElectron,
        other => {
            return Err(Error::validation(
                "unit_system",
                format!("expected `natural` or `si-electron`, got `{other}`"),
            ))
        }
    };
    let output = raw.get("output").map(PathBuf::from);

    let mut config = RunConfig {
        command,
        unit_choice,
        output,
        grid: None,
        initial_state: None,
        potential: PotentialSpec::Zero,
        time: 0.0,
        dt: None,
        n_steps: None,
        record_every: 1,
        vortex: VortexSpec { n_vortices: 1, radius: None, omega: None, packing: 1.0 },
    };

    match command {
        Command::Propagate | Command::Spectrum => {
            config.grid = Some(parse_grid(&raw)?);
            config.initial_state = Some(parse_initial_state(&raw)?);
            config.potential = parse_potential(&raw, config_dir)?;

            let dt = raw.f64("dt")?.ok_or_else(|| Error::validation("dt", "missing"))?;
            config.dt = Some(positive("dt", dt)?);
            let n_steps = raw
                .usize("n_steps")?
                .ok_or_else(|| Error::validation("n_steps", "missing"))?;
            if n_steps == 0 {
                return Err(Error::validation("n_steps", "must be at least 1"));
            }
            config.n_steps = Some(n_steps);
            config.record_every = raw.usize("record_every")?.unwrap_or(1);
            if config.record_every == 0 || !n_steps.is_multiple_of(config.record_every) {
                return Err(Error::validation(
                    "record_every",
                    format!("must be a positive divisor of n_steps = {n_steps}"),
                ));
            }
        }
        Command::Eigen => {
            let grid = parse_grid(&raw)?;
            if grid.boundary != Boundary::Dirichlet {
                return Err(Error::validation("boundary", "eigen needs a dirichlet grid"));
            }
            config.grid = Some(grid);
            let (modes, weights) = parse_box_modes(&raw)?;
            config.initial_state = Some(InitialStateSpec::BoxStates {
                modes,
                weights,
                helicity: parse_helicity(&raw)?,
            });
            config.time = raw.f64("time")?.unwrap_or(0.0);
        }
        Command::Vortex => {
            let n_vortices = raw.usize("n_vortices")?.unwrap_or(1);
            if n_vortices == 0 {
                return Err(Error::validation("n_vortices", "must be at least 1"));
            }
            let radius = match raw.f64("vortex_radius")? {
                None => None,
                Some(r) => Some(positive("vortex_radius", r)?),
            };
            let omega = match raw.f64("vortex_omega")? {
                None => None,
                Some(w) => Some(positive("vortex_omega", w)?),
            };
            let packing = raw.f64("packing")?.unwrap_or(1.0);
            if !(packing > 0.0 && packing <= 1.0) {
                return Err(Error::validation("packing", "must lie in (0, 1]"));
            }
            config.vortex = VortexSpec { n_vortices, radius, omega, packing };
        }
        Command::Verify => {}
    }

    Ok(config)
}

/// Parse a configuration with file references resolved against the working
/// directory.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with_dir(text, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_misses_the_command() {
        match parse_config("") {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "command"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn vortex_defaults_are_filled() {
        let cfg = parse_config("command = vortex\nunit_system = natural\n").unwrap();
        assert_eq!(cfg.command, Command::Vortex);
        assert_eq!(cfg.vortex.n_vortices, 1);
        assert_eq!(cfg.vortex.radius, None);
        assert_eq!(cfg.vortex.omega, None);
        assert_eq!(cfg.vortex.packing, 1.0);
    }

    #[test]
    fn negative_dt_is_rejected_by_name() {
        let text = "command = propagate\nlength = 1\nn_points = 16\nboundary = periodic\n\
                    initial_state = plane-wave\nk = 6.283185307179586\n\
                    dt = -1\nn_steps = 10\n";
        match parse_config(text) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "dt"),
            other => panic!("expected dt validation error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_fail_with_line_numbers() {
        match parse_config("command = vortex\nbogus = 3\n") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("bogus"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn keys_outside_the_command_are_rejected() {
        match parse_config("command = vortex\ndt = 0.1\n") {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "dt"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_keys_fail() {
        match parse_config("command = vortex\ncommand = verify\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let cfg = parse_config(
            "# a header comment\n\ncommand = vortex # trailing comment\n  \n n_vortices = 7\n",
        )
        .unwrap();
        assert_eq!(cfg.vortex.n_vortices, 7);
    }

    #[test]
    fn full_spectrum_config_round_trips() {
        let text = "command = spectrum\nunit_system = natural\noutput = out\n\
                    length = 3.141592653589793\nn_points = 401\nboundary = dirichlet\n\
                    initial_state = box\nmodes = 1, 2, 3\nweights = 1, 1, 1\nhelicity = plus\n\
                    potential = constant\noffset = 3.0\n\
                    dt = 5.5e-5\nn_steps = 36000\nrecord_every = 3600\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.command, Command::Spectrum);
        assert_eq!(cfg.potential, PotentialSpec::ConstantOffset(3.0));
        match cfg.initial_state.unwrap() {
            InitialStateSpec::BoxStates { modes, weights, helicity } => {
                assert_eq!(modes, vec![1, 2, 3]);
                assert_eq!(weights, vec![1.0, 1.0, 1.0]);
                assert_eq!(helicity, Helicity::Plus);
            }
            other => panic!("unexpected state {other:?}"),
        }
        assert_eq!(cfg.record_every, 3600);
    }

    #[test]
    fn record_every_must_divide_n_steps() {
        let text = "command = propagate\nlength = 1\nn_points = 16\nboundary = periodic\n\
                    initial_state = plane-wave\nk = 6.283185307179586\n\
                    dt = 1e-4\nn_steps = 10\nrecord_every = 3\n";
        match parse_config(text) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "record_every"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn missing_potential_file_is_a_validation_error() {
        let text = "command = propagate\nlength = 1\nn_points = 16\nboundary = periodic\n\
                    initial_state = plane-wave\nk = 6.283185307179586\n\
                    potential = file\npotential_file = /nonexistent/v.dat\n\
                    dt = 1e-4\nn_steps = 10\n";
        match parse_config(text) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "potential_file"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }
}
