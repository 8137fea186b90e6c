//! Resolution of flags and `key=value` config files into one run description.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use brody_core::ensembles::catalog;
use brody_core::{Complex64, Driver, ModelSpec, SpacingLaw};

use crate::{CliError, DriverKind, Result, RunArgs};

const DEFAULT_SEED: u64 = 42;
const FILE_KEYS: &[&str] = &[
    "command", "model", "q", "n", "seed", "driver", "sigma-e", "sigma-g", "sigma-r", "constants", "law", "bins",
    "zmax", "threads", "out-dir", "gate", "max", "checkpoints",
];

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        let key = k.trim().to_string();
        if !FILE_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", i + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

/// Comma-separated complex numbers such as `2, 1+i, -0.5i`.
pub fn parse_constants(text: &str) -> Result<Vec<Complex64>> {
    text.split(',')
        .map(|s| {
            let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            Complex64::from_str(&s).map_err(|_| CliError::Usage(format!("bad complex constant `{s}`")))
        })
        .collect()
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| CliError::Usage(format!("bad value `{v}` for {key}")))
}

/// A flag when given, else the config-file entry.
struct Source {
    file: BTreeMap<String, String>,
}

impl Source {
    fn get<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.file.get(key).map(|v| parse(key, v)).transpose(),
        }
    }

    fn text(&self, key: &str, flag: &Option<String>) -> Option<String> {
        flag.clone().or_else(|| self.file.get(key).cloned())
    }
}

/// Everything a command needs, after merging flags over the config file.
#[derive(Debug, Clone)]
pub struct Settings {
    pub spec: ModelSpec,
    pub n: usize,
    pub seed: u64,
    pub constants: Option<String>,
    pub law: Option<String>,
    pub bins: usize,
    pub zmax: f64,
    pub threads: Option<usize>,
    pub out_dir: PathBuf,
    pub gate: bool,
    pub max: Option<usize>,
    pub checkpoints: Option<String>,
}

fn driver_kind(d: &Driver) -> DriverKind {
    match d {
        Driver::Exponential { .. } => DriverKind::Exp,
        Driver::Gamma2 { .. } => DriverKind::Gamma2,
        Driver::RayleighSquares { .. } => DriverKind::NormalSquares,
    }
}

fn default_sigma(d: &Driver) -> f64 {
    match *d {
        Driver::Exponential { sigma_e } => sigma_e,
        Driver::Gamma2 { sigma_g } => sigma_g,
        Driver::RayleighSquares { sigma_r } => sigma_r,
    }
}

impl Settings {
    pub fn resolve(args: &RunArgs, default_n: usize) -> Result<Self> {
        Self::resolve_with(args, None, None, default_n)
    }

    pub fn resolve_with(
        args: &RunArgs,
        max: Option<usize>,
        checkpoints: Option<String>,
        default_n: usize,
    ) -> Result<Self> {
        let file = match &args.config {
            Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
            None => BTreeMap::new(),
        };
        let src = Source { file };
        let id = src
            .text("model", &args.model)
            .ok_or_else(|| CliError::Usage("--model is required (see `brody catalog`)".into()))?;
        if !catalog::ids().contains(&id.as_str()) {
            return Err(CliError::UnknownModel { id, known: catalog::ids().join(", ") });
        }
        let q = match src.get("q", args.q)? {
            Some(q) => q,
            None => catalog::fixed_q(&id).ok_or_else(|| CliError::Usage("--q is required".into()))?,
        };
        let mut spec = catalog::model(&id, q)?;

        let kind = src.get::<String>("driver", args.driver.map(|d| d.name().to_string()))?;
        let kind = match kind.as_deref() {
            None => driver_kind(&spec.driver),
            Some("exp") => DriverKind::Exp,
            Some("gamma2") => DriverKind::Gamma2,
            Some("normal-squares") => DriverKind::NormalSquares,
            Some(other) => return Err(CliError::Usage(format!("unknown driver `{other}`"))),
        };
        let sigmas = [
            (DriverKind::Exp, "sigma-e", src.get("sigma-e", args.sigma_e)?),
            (DriverKind::Gamma2, "sigma-g", src.get("sigma-g", args.sigma_g)?),
            (DriverKind::NormalSquares, "sigma-r", src.get("sigma-r", args.sigma_r)?),
        ];
        let mut sigma = if kind == driver_kind(&spec.driver) { default_sigma(&spec.driver) } else { 1.0 };
        for (k, key, value) in sigmas {
            if let Some(v) = value {
                if k != kind {
                    return Err(CliError::Usage(format!("--{key} does not apply to the {} driver", kind.name())));
                }
                sigma = v;
            }
        }
        spec.driver = match kind {
            DriverKind::Exp => Driver::Exponential { sigma_e: sigma },
            DriverKind::Gamma2 => Driver::Gamma2 { sigma_g: sigma },
            DriverKind::NormalSquares => Driver::RayleighSquares { sigma_r: sigma },
        };
        spec.driver.check()?;

        let constants = src.text("constants", &args.constants);
        if let Some(text) = &constants {
            spec.constants = parse_constants(text)?;
        }
        let gate = args.gate || src.get::<bool>("gate", None)?.unwrap_or(false);
        Ok(Self {
            n: src.get("n", args.n)?.unwrap_or(default_n),
            seed: src.get("seed", args.seed)?.unwrap_or(DEFAULT_SEED),
            law: src.text("law", &args.law),
            bins: src.get("bins", args.bins)?.unwrap_or(brody_core::sim::DEFAULT_BINS),
            zmax: src.get("zmax", args.zmax)?.unwrap_or(brody_core::sim::DEFAULT_Z_MAX),
            threads: src.get("threads", args.threads)?,
            out_dir: src.get("out-dir", args.out_dir.clone())?.unwrap_or_else(|| PathBuf::from(".")),
            max: src.get("max", max)?,
            checkpoints: src.text("checkpoints", &checkpoints),
            spec,
            constants,
            gate,
        })
    }

    /// The goodness-of-fit law: `--law` (with the model's `q`) or the target law.
    pub fn gof_law(&self) -> Result<SpacingLaw> {
        let law = match &self.law {
            Some(id) => SpacingLaw::parse(id, self.spec.q, 1.0, 1.0)?,
            None => self.spec.target_law(),
        };
        Ok(law.canonical())
    }

    /// `key = value` lines that reproduce this run through `--config`.
    pub fn manifest(&self, command: &str) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(s, "{k} = {v}");
        };
        line("command", &command);
        line("model", &self.spec.id);
        line("q", &self.spec.q);
        line("n", &self.n);
        line("seed", &self.seed);
        let kind = driver_kind(&self.spec.driver);
        line("driver", &kind.name());
        let key = match kind {
            DriverKind::Exp => "sigma-e",
            DriverKind::Gamma2 => "sigma-g",
            DriverKind::NormalSquares => "sigma-r",
        };
        line(key, &default_sigma(&self.spec.driver));
        if let Some(c) = &self.constants {
            line("constants", c);
        }
        if let Some(l) = &self.law {
            line("law", l);
        }
        line("bins", &self.bins);
        line("zmax", &self.zmax);
        if let Some(m) = self.max {
            line("max", &m);
        }
        if let Some(c) = &self.checkpoints {
            line("checkpoints", c);
        }
        s
    }

    pub fn out_path(&self, name: &str) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.out_dir)?;
        Ok(Path::new(&self.out_dir).join(name))
    }

    /// Runs `f` on a pool with the requested worker count.
    pub fn in_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(self.threads.unwrap_or(0)).build()?;
        Ok(pool.install(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines_and_comments() {
        let m = parse_config("# run\nmodel = A1\n\nq=0.5 # half\n").unwrap();
        assert_eq!(m["model"], "A1");
        assert_eq!(m["q"], "0.5");
        assert!(parse_config("bogus = 1").is_err());
        assert!(parse_config("model").is_err());
    }

    #[test]
    fn complex_constant_lists() {
        let c = parse_constants("1+2i, 1+i,1-i , 1-2i").unwrap();
        assert_eq!(c[0], Complex64::new(1.0, 2.0));
        assert_eq!(c[3], Complex64::new(1.0, -2.0));
        assert_eq!(parse_constants("-0.5").unwrap(), vec![Complex64::new(-0.5, 0.0)]);
        assert!(parse_constants("x").is_err());
    }

    #[test]
    fn flags_override_file_and_manifest_round_trips() {
        let dir = std::env::temp_dir().join(format!("brody-settings-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = dir.join("run.conf");
        std::fs::write(&cfg, "model = A3\nq = 0.25\nn = 500\nsigma-e = 2\n").unwrap();
        let args = RunArgs { config: Some(cfg.clone()), q: Some(0.75), ..RunArgs::default() };
        let s = Settings::resolve(&args, 10).unwrap();
        assert_eq!(s.spec.q, 0.75);
        assert_eq!(s.n, 500);
        assert_eq!(s.spec.driver, Driver::Exponential { sigma_e: 2.0 });

        std::fs::write(&cfg, s.manifest("sample")).unwrap();
        let again = Settings::resolve(&RunArgs { config: Some(cfg), ..RunArgs::default() }, 10).unwrap();
        assert_eq!(again.manifest("sample"), s.manifest("sample"));
        assert_eq!(again.spec, s.spec);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn mismatched_sigma_is_a_usage_error() {
        let args = RunArgs { model: Some("A1".into()), q: Some(0.5), sigma_g: Some(3.0), ..RunArgs::default() };
        assert!(matches!(Settings::resolve(&args, 10), Err(CliError::Usage(_))));
    }
}
