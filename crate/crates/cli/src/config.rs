//! Run configuration from flags and `key=value` files.
//!
//! Flags and file entries go through the same parser: the file is read
//! first, then every flag that was given replaces the file value.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vortex_core::{Branch, CutoffRule, Units};

use crate::error::{bad, CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "revb", version, about = "Bessel-spinor electron vortex beams: states, observables, verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Sample the normalized spinor on a polar grid.
    State,
    /// One observable report per vortex index.
    Observables,
    /// Eigenvalue, commutator and cross-representation checks.
    Verify,
    /// Frobenius series against the Bessel solution.
    SeriesCheck,
    /// First positive zeros of `J_n`.
    Zeros,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::State => "state",
            CommandKind::Observables => "observables",
            CommandKind::Verify => "verify",
            CommandKind::SeriesCheck => "series-check",
            CommandKind::Zeros => "zeros",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Vortex index of the first spinor component.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub n: Option<String>,
    /// Inclusive range of vortex indices, `A..B`.
    #[arg(long = "n-range", global = true, allow_hyphen_values = true)]
    pub n_range: Option<String>,
    /// Transverse momentum `κ`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub kappa: Option<String>,
    /// Longitudinal momentum `k_z`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub kz: Option<String>,
    /// `+` or `-`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub branch: Option<String>,
    /// Particle mass (1 is the electron).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mass: Option<String>,
    /// Beam length.
    #[arg(long = "D", global = true, allow_negative_numbers = true)]
    pub length: Option<String>,
    /// `j0`, `jn`, `jn1` or `radius=R`.
    #[arg(long, global = true)]
    pub cutoff: Option<String>,
    /// Radial node count (finest level for `verify`).
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// Refinement levels for `verify`.
    #[arg(long, global = true)]
    pub levels: Option<String>,
    /// Residual tolerance for the Hamiltonian and `K` checks.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<String>,
    /// `csv` or `json`.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<String>,
    /// Added to the Hamiltonian eigenvalue in `verify`.
    #[arg(long = "eigenvalue-offset", global = true, allow_negative_numbers = true)]
    pub eigenvalue_offset: Option<String>,
    /// Highest series index `K`.
    #[arg(long, global = true)]
    pub terms: Option<String>,
    /// Angular samples per radius for `state`.
    #[arg(long, global = true)]
    pub angular: Option<String>,
    /// Longitudinal position for `state`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub z: Option<String>,
    /// Coefficient table written by `series-check`.
    #[arg(long, global = true)]
    pub coefficients: Option<PathBuf>,
}

const KEYS: [&str; 19] = [
    "n",
    "n-range",
    "kappa",
    "kz",
    "branch",
    "mass",
    "D",
    "cutoff",
    "grid",
    "levels",
    "tol",
    "format",
    "out",
    "threads",
    "eigenvalue-offset",
    "terms",
    "angular",
    "z",
    "coefficients",
];

impl Flags {
    fn entries(&self) -> Vec<(&'static str, String)> {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        let pairs = [
            ("n", self.n.clone()),
            ("n-range", self.n_range.clone()),
            ("kappa", self.kappa.clone()),
            ("kz", self.kz.clone()),
            ("branch", self.branch.clone()),
            ("mass", self.mass.clone()),
            ("D", self.length.clone()),
            ("cutoff", self.cutoff.clone()),
            ("grid", self.grid.clone()),
            ("levels", self.levels.clone()),
            ("tol", self.tol.clone()),
            ("format", self.format.clone()),
            ("out", path(&self.out)),
            ("threads", self.threads.clone()),
            ("eigenvalue-offset", self.eigenvalue_offset.clone()),
            ("terms", self.terms.clone()),
            ("angular", self.angular.clone()),
            ("z", self.z.clone()),
            ("coefficients", path(&self.coefficients)),
        ];
        pairs.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect()
    }
}

/// Reads `key=value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| bad(format!("config line {}: expected key=value", i + 1)))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(bad(format!("config line {}: unknown key `{key}`", i + 1)));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Which vortex indices a run covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indices {
    Single(i32),
    Range(i32, i32),
}

impl Indices {
    pub fn values(self) -> Vec<i32> {
        match self {
            Indices::Single(n) => vec![n],
            Indices::Range(a, b) => (a..=b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub indices: Indices,
    pub kappa: f64,
    pub k_z: f64,
    pub branch: Branch,
    pub units: Units,
    pub length: f64,
    pub cutoff: CutoffRule,
    pub grid: usize,
    pub levels: usize,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub eigenvalue_offset: f64,
    pub terms: usize,
    pub angular: usize,
    pub z: f64,
    pub coefficients: Option<PathBuf>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| bad(format!("cannot parse {key} = `{value}`")))
}

fn parse_real(key: &str, value: &str) -> Result<f64> {
    let x: f64 = parse(key, value)?;
    if !x.is_finite() {
        return Err(bad(format!("{key} must be finite")));
    }
    Ok(x)
}

fn parse_range(value: &str) -> Result<Indices> {
    let (a, b) = value.split_once("..").ok_or_else(|| bad(format!("n-range `{value}` is not of the form A..B")))?;
    let a: i32 = parse("n-range", a.trim())?;
    let b: i32 = parse("n-range", b.trim_start_matches('=').trim())?;
    if a > b {
        return Err(bad(format!("n-range `{value}` is empty")));
    }
    Ok(Indices::Range(a, b))
}

fn parse_branch(value: &str) -> Result<Branch> {
    match value {
        "+" | "plus" | "+1" | "1" => Ok(Branch::Plus),
        "-" | "minus" | "-1" => Ok(Branch::Minus),
        _ => Err(bad(format!("branch must be + or -, got `{value}`"))),
    }
}

fn parse_cutoff(value: &str) -> Result<CutoffRule> {
    match value {
        "j0" => Ok(CutoffRule::CommonAperture),
        "jn" => Ok(CutoffRule::FirstZeroOfJn),
        "jn1" => Ok(CutoffRule::FirstZeroOfJn1),
        _ => match value.strip_prefix("radius=") {
            Some(r) => {
                let r = parse_real("cutoff radius", r)?;
                if r <= 0.0 {
                    return Err(bad("cutoff radius must be > 0"));
                }
                Ok(CutoffRule::ExplicitRadius(r))
            }
            None => Err(bad(format!("cutoff must be j0, jn, jn1 or radius=R, got `{value}`"))),
        },
    }
}

pub fn cutoff_text(rule: &CutoffRule) -> String {
    match rule {
        CutoffRule::ExplicitRadius(r) => format!("radius={r:?}"),
        other => other.name().to_string(),
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let mut map = match &cli.flags.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
                parse_config_text(&text)?
            }
            None => BTreeMap::new(),
        };
        let flag_entries = cli.flags.entries();
        // a single index on the command line replaces a range from the file and vice versa
        if flag_entries.iter().any(|(k, _)| *k == "n") {
            map.remove("n-range");
        }
        if flag_entries.iter().any(|(k, _)| *k == "n-range") {
            map.remove("n");
        }
        for (k, v) in flag_entries {
            map.insert(k.to_string(), v);
        }
        Self::from_map(cli.command, &map)
    }

    pub fn from_map(command: CommandKind, map: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| map.get(k).map(String::as_str);
        let indices = match (get("n"), get("n-range")) {
            (Some(_), Some(_)) => return Err(bad("give either n or n-range, not both")),
            (Some(n), None) => Indices::Single(parse("n", n)?),
            (None, Some(r)) => parse_range(r)?,
            (None, None) => match command {
                CommandKind::Observables => Indices::Range(0, 10),
                CommandKind::SeriesCheck | CommandKind::Zeros => Indices::Range(0, 5),
                CommandKind::State | CommandKind::Verify => Indices::Single(1),
            },
        };
        if matches!(command, CommandKind::State | CommandKind::Verify) && matches!(indices, Indices::Range(..)) {
            return Err(bad(format!("{} takes a single n", command.name())));
        }
        let real = |k: &str, default: f64| get(k).map_or(Ok(default), |v| parse_real(k, v));
        let count = |k: &str, default: usize| get(k).map_or(Ok(default), |v| parse::<usize>(k, v));
        let kappa = real("kappa", 1.0)?;
        if kappa <= 0.0 {
            return Err(bad("kappa must be > 0"));
        }
        let mass = real("mass", 1.0)?;
        let units = Units::natural(mass).map_err(|_| bad("mass must be > 0"))?;
        let length = real("D", 1.0)?;
        if length <= 0.0 {
            return Err(bad("D must be > 0"));
        }
        let tol = real("tol", 1e-7)?;
        if tol <= 0.0 {
            return Err(bad("tol must be > 0"));
        }
        let levels = count("levels", 3)?;
        if levels < 2 {
            return Err(bad("levels must be >= 2"));
        }
        let format = match get("format") {
            Some(f) => Format::from_str(f, true).map_err(|_| bad(format!("format must be csv or json, got `{f}`")))?,
            None if command == CommandKind::Verify => Format::Json,
            None => Format::Csv,
        };
        let threads = match get("threads") {
            Some(t) => {
                let t: usize = parse("threads", t)?;
                if t == 0 {
                    return Err(bad("threads must be >= 1"));
                }
                Some(t)
            }
            None => None,
        };
        let terms = count("terms", 80)?;
        if terms < 2 {
            return Err(bad("terms must be >= 2"));
        }
        let angular = count("angular", 8)?;
        if angular == 0 {
            return Err(bad("angular must be >= 1"));
        }
        Ok(RunConfig {
            command,
            indices,
            kappa,
            k_z: real("kz", 2.0)?,
            branch: get("branch").map_or(Ok(Branch::Plus), parse_branch)?,
            units,
            length,
            cutoff: get("cutoff").map_or(Ok(CutoffRule::default()), parse_cutoff)?,
            grid: count("grid", 4096)?,
            levels,
            tol,
            format,
            out: get("out").map(PathBuf::from),
            threads,
            eigenvalue_offset: real("eigenvalue-offset", 0.0)?,
            terms,
            angular,
            z: real("z", 0.0)?,
            coefficients: get("coefficients").map(PathBuf::from),
        })
    }

    /// The resolved settings that determine the output. Paths and the
    /// thread count are left out so that reruns compare byte for byte.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let indices = match self.indices {
            Indices::Single(n) => ("n", n.to_string()),
            Indices::Range(a, b) => ("n-range", format!("{a}..{b}")),
        };
        vec![
            ("command", self.command.name().to_string()),
            indices,
            ("kappa", format!("{:?}", self.kappa)),
            ("kz", format!("{:?}", self.k_z)),
            ("branch", self.branch.symbol().to_string()),
            ("mass", format!("{:?}", self.units.mass)),
            ("D", format!("{:?}", self.length)),
            ("cutoff", cutoff_text(&self.cutoff)),
            ("grid", self.grid.to_string()),
            ("levels", self.levels.to_string()),
            ("tol", format!("{:?}", self.tol)),
            ("format", self.format.name().to_string()),
            ("eigenvalue-offset", format!("{:?}", self.eigenvalue_offset)),
            ("terms", self.terms.to_string()),
            ("angular", self.angular.to_string()),
            ("z", format!("{:?}", self.z)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(command: CommandKind, text: &str) -> Result<RunConfig> {
        RunConfig::from_map(command, &parse_config_text(text)?)
    }

    #[test]
    fn file_syntax() {
        let map = parse_config_text("# header\nkappa = 2.5  # inline\n\nbranch=-\n").unwrap();
        assert_eq!(map["kappa"], "2.5");
        assert_eq!(map["branch"], "-");
        assert!(parse_config_text("kappa 2").is_err());
        assert!(parse_config_text("colour=red").is_err());
    }

    #[test]
    fn defaults_per_command() {
        let c = resolve(CommandKind::Observables, "").unwrap();
        assert_eq!(c.indices, Indices::Range(0, 10));
        assert_eq!(c.format, Format::Csv);
        let c = resolve(CommandKind::Verify, "").unwrap();
        assert_eq!(c.indices, Indices::Single(1));
        assert_eq!((c.kappa, c.k_z), (1.0, 2.0));
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.cutoff, CutoffRule::CommonAperture);
    }

    #[test]
    fn value_parsing() {
        let c = resolve(CommandKind::Observables, "n-range=-3..4\ncutoff=radius=2.5\nbranch=-").unwrap();
        assert_eq!(c.indices.values(), (-3..=4).collect::<Vec<_>>());
        assert_eq!(c.cutoff, CutoffRule::ExplicitRadius(2.5));
        assert_eq!(c.branch, Branch::Minus);
        for text in
            ["kappa=0", "kappa=abc", "cutoff=jx", "n-range=4..1", "levels=1", "branch=0", "mass=-1", "format=xml"]
        {
            assert!(matches!(resolve(CommandKind::Observables, text), Err(CliError::BadInput(_))), "{text}");
        }
        assert!(resolve(CommandKind::Verify, "n-range=0..2").is_err());
    }

    #[test]
    fn echo_skips_run_only_settings() {
        let c = resolve(CommandKind::State, "threads=3\nout=/tmp/x.csv").unwrap();
        let keys: Vec<_> = c.echo().into_iter().map(|(k, _)| k).collect();
        assert!(!keys.contains(&"threads") && !keys.contains(&"out"));
        assert!(keys.contains(&"cutoff"));
    }
}
