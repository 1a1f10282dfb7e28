//! Run configuration: an INI file with `[model]`, `[run]` and `[output]` sections.

use std::fmt;
use std::path::{Path, PathBuf};

use ini::Ini;
use lissajous_core::orthomodels::{Model, Variant};
use lissajous_core::scalar::parse_rational;
use lissajous_core::{Rational, Real, Scalar};

/// Anything wrong with the configuration or command line. Maps to exit status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Eigen,
    Actions,
    Algebra,
    Realization,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Eigen, Suite::Actions, Suite::Algebra, Suite::Realization];

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        match text.trim() {
            "eigen" => Ok(Suite::Eigen),
            "actions" => Ok(Suite::Actions),
            "algebra" => Ok(Suite::Algebra),
            "realization" => Ok(Suite::Realization),
            other => bad(format!("unknown suite '{other}' (expected eigen, actions, algebra or realization)")),
        }
    }

    pub fn parse_list(text: &str) -> Result<Vec<Self>, ConfigError> {
        let mut out: Vec<Suite> = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Suite::parse)
            .collect::<Result<_, _>>()?;
        out.sort();
        out.dedup();
        if out.is_empty() {
            return bad("no suites selected");
        }
        Ok(out)
    }
}

/// Model parameters as entered; parsed into a field once the mode is known.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub variant: Variant,
    pub m: u32,
    pub n: u32,
    pub alpha: String,
    pub beta: Option<String>,
    pub m1: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub mode: Mode,
    pub precision_bits: u32,
    pub mu_max: u32,
    pub nu_max: u32,
    pub pbar_max: u32,
    pub energy_cutoff: Option<String>,
    pub suites: Vec<Suite>,
    /// Action coefficients to check `verify` against.
    pub reference_actions: Option<PathBuf>,
    /// Spectrum table to check `compare` against.
    pub expected_spectrum: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub prefix: String,
}

const MODEL_KEYS: [&str; 6] = ["variant", "m", "n", "alpha", "beta", "m1"];
const RUN_KEYS: [&str; 10] = [
    "mode",
    "precision",
    "mu_max",
    "nu_max",
    "pbar_max",
    "energy_cutoff",
    "suites",
    "reference_actions",
    "expected_spectrum",
    "box",
];
const OUTPUT_KEYS: [&str; 2] = ["dir", "prefix"];

struct Section<'a> {
    name: &'static str,
    props: Option<&'a ini::Properties>,
}

impl Section<'_> {
    fn get(&self, key: &str) -> Option<&str> {
        self.props.and_then(|p| p.get(key)).map(str::trim)
    }

    fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key)
            .ok_or_else(|| ConfigError(format!("[{}] is missing '{key}'", self.name)))
    }

    fn uint(&self, key: &str, default: Option<u32>) -> Result<u32, ConfigError> {
        match (self.get(key), default) {
            (Some(v), _) => v
                .parse()
                .map_err(|_| ConfigError(format!("[{}] {key} = '{v}' is not a non-negative integer", self.name))),
            (None, Some(d)) => Ok(d),
            (None, None) => bad(format!("[{}] is missing '{key}'", self.name)),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let ini = Ini::load_from_file(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_ini(&ini, &base)
    }

    #[cfg(test)]
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let ini = Ini::load_from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        Self::from_ini(&ini, base)
    }

    fn from_ini(ini: &Ini, base: &Path) -> Result<Self, ConfigError> {
        for (name, props) in ini.iter() {
            let allowed: &[&str] = match name {
                Some("model") => &MODEL_KEYS,
                Some("run") => &RUN_KEYS,
                Some("output") => &OUTPUT_KEYS,
                None if props.is_empty() => continue,
                None => return bad("keys outside a section"),
                Some(other) => return bad(format!("unknown section [{other}]")),
            };
            for (k, _) in props.iter() {
                if !allowed.contains(&k) {
                    return bad(format!("unknown key '{k}' in [{}]", name.unwrap_or_default()));
                }
            }
        }
        let model = Section {
            name: "model",
            props: ini.section(Some("model")),
        };
        if model.props.is_none() {
            return bad("missing [model] section");
        }
        let run = Section {
            name: "run",
            props: ini.section(Some("run")),
        };
        let output = Section {
            name: "output",
            props: ini.section(Some("output")),
        };

        let variant_text = model.require("variant")?;
        let variant =
            Variant::parse(variant_text).ok_or_else(|| ConfigError(format!("unknown variant '{variant_text}'")))?;
        let spec = ModelSpec {
            variant,
            m: model.uint("m", None)?,
            n: model.uint("n", None)?,
            alpha: model.require("alpha")?.to_string(),
            beta: model.get("beta").map(str::to_string),
            m1: model.uint("m1", Some(if variant == Variant::ExtTwoParam { 1 } else { 0 }))?,
        };
        if variant == Variant::TwoParam || variant == Variant::ExtTwoParam {
            model.require("beta")?;
        }

        let mode = match run.get("mode").unwrap_or("exact") {
            "exact" => Mode::Exact,
            "numeric" => Mode::Numeric,
            other => return bad(format!("mode must be exact or numeric, got '{other}'")),
        };
        let boxed = run.uint("box", Some(4))?;
        let path = |v: Option<&str>| v.map(|p| base.join(p));
        let cfg = Self {
            model: spec,
            mode,
            precision_bits: run.uint("precision", Some(256))?,
            mu_max: run.uint("mu_max", Some(boxed))?,
            nu_max: run.uint("nu_max", Some(boxed))?,
            pbar_max: run.uint("pbar_max", Some(6))?,
            energy_cutoff: run.get("energy_cutoff").map(str::to_string),
            suites: match run.get("suites") {
                Some(s) => Suite::parse_list(s)?,
                None => Suite::ALL.to_vec(),
            },
            reference_actions: path(run.get("reference_actions")),
            expected_spectrum: path(run.get("expected_spectrum")),
            out_dir: base.join(output.get("dir").unwrap_or(".")),
            prefix: output.get("prefix").unwrap_or("lissajous").to_string(),
        };
        cfg.check()?;
        Ok(cfg)
    }

    /// Mode-dependent validation; also rejects unparsable parameters early.
    pub fn check(&self) -> Result<(), ConfigError> {
        if self.mode == Mode::Numeric && self.precision_bits < 128 {
            return bad(format!("numeric mode needs precision >= 128 bits, got {}", self.precision_bits));
        }
        match self.mode {
            Mode::Exact => {
                self.exact_model()?;
                if let Some(c) = &self.energy_cutoff {
                    exact_value("energy_cutoff", c)?;
                }
            }
            Mode::Numeric => {
                let _guard = self.numeric_context().enter();
                self.numeric_model()?;
            }
        }
        Ok(())
    }

    pub fn numeric_context(&self) -> lissajous_core::NumericContext {
        lissajous_core::NumericContext {
            precision_bits: self.precision_bits,
            ..Default::default()
        }
    }

    fn build<S: Scalar>(&self, parse: impl Fn(&str, &str) -> Result<S, ConfigError>) -> Result<Model<S>, ConfigError> {
        let s = &self.model;
        let alpha = parse("alpha", &s.alpha)?;
        let result = match s.variant {
            Variant::OneParam => {
                if let Some(b) = &s.beta {
                    if parse("beta", b)? != S::one() / S::from_i64(2) {
                        return bad("beta is fixed to 1/2 in the one-parameter model");
                    }
                }
                Model::one_param(s.m, s.n, alpha)
            }
            Variant::TwoParam => Model::two_param(s.m, s.n, alpha, parse("beta", s.beta.as_deref().unwrap_or(""))?),
            Variant::ExtTwoParam => {
                Model::ext_two_param(s.m, s.n, alpha, parse("beta", s.beta.as_deref().unwrap_or(""))?, s.m1)
            }
        };
        result.map_err(|e| ConfigError(e.to_string()))
    }

    pub fn exact_model(&self) -> Result<Model<Rational>, ConfigError> {
        self.build(exact_value)
    }

    /// Requires the numeric context to be active.
    pub fn numeric_model(&self) -> Result<Model<Real>, ConfigError> {
        self.build(numeric_value)
    }
}

pub fn exact_value(key: &str, text: &str) -> Result<Rational, ConfigError> {
    parse_rational(text).ok_or_else(|| {
        ConfigError(format!(
            "{key} = '{text}' is not an exact rational p/q (irrational values need mode = numeric)"
        ))
    })
}

/// `p/q`, a decimal, or `sqrt(v)`.
pub fn numeric_value(key: &str, text: &str) -> Result<Real, ConfigError> {
    let t = text.trim();
    let err = || ConfigError(format!("{key} = '{text}' is not a number"));
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let v = numeric_value(key, inner)?;
        if v.is_negative_value() {
            return Err(err());
        }
        return Ok(v.sqrt());
    }
    if let Some(q) = parse_rational(t) {
        return Ok(Real::from_rational(&q));
    }
    if t.contains('/') {
        return Err(err());
    }
    Real::parse_decimal(t).filter(Real::is_finite).ok_or_else(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = "[model]\nvariant = 1P\nm = 1\nn = 1\nalpha = 1\n";

    #[test]
    fn defaults() {
        let c = RunConfig::parse(BASIC, Path::new("/tmp")).unwrap();
        assert_eq!(c.mode, Mode::Exact);
        assert_eq!((c.mu_max, c.nu_max, c.pbar_max), (4, 4, 6));
        assert_eq!(c.suites, Suite::ALL.to_vec());
        assert_eq!(c.out_dir, Path::new("/tmp/."));
    }

    #[test]
    fn inline_comments() {
        let text = BASIC.replace("alpha = 1", "alpha = 1   ; p/q\n; m1 = 2");
        let c = RunConfig::parse(&text, Path::new(".")).unwrap();
        assert_eq!(c.model.alpha, "1");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let text = BASIC.replace("alpha = 1", "alpha = 3/0");
        let e = RunConfig::parse(&text, Path::new(".")).unwrap_err();
        assert!(e.0.contains("3/0"), "{e}");
    }

    #[test]
    fn exact_mode_rejects_irrationals() {
        let text = BASIC.replace("alpha = 1", "alpha = sqrt(2)");
        assert!(RunConfig::parse(&text, Path::new(".")).is_err());
        let text = format!("{text}[run]\nmode = numeric\n");
        let c = RunConfig::parse(&text, Path::new(".")).unwrap();
        let _g = c.numeric_context().enter();
        let a = c.numeric_model().unwrap().alpha;
        assert!((a.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn low_precision_is_rejected() {
        let text = format!("{BASIC}[run]\nmode = numeric\nprecision = 64\n");
        assert!(RunConfig::parse(&text, Path::new(".")).is_err());
    }

    #[test]
    fn unknown_keys_and_suites() {
        assert!(RunConfig::parse(&format!("{BASIC}colour = red\n"), Path::new(".")).is_err());
        assert!(RunConfig::parse(&format!("{BASIC}[run]\nsuites = eigen,bogus\n"), Path::new(".")).is_err());
        let c = RunConfig::parse(&format!("{BASIC}[run]\nsuites = algebra, eigen\n"), Path::new(".")).unwrap();
        assert_eq!(c.suites, vec![Suite::Eigen, Suite::Algebra]);
    }

    #[test]
    fn invalid_model_is_a_config_error() {
        let text = BASIC.replace("n = 1", "n = 2").replace("m = 1", "m = 2");
        assert!(RunConfig::parse(&text, Path::new(".")).is_err());
    }
}
