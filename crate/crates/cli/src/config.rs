//! Flat `key = value` experiment configuration.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::path::PathBuf;
use std::str::FromStr;

use levy_extremes::subordinators::SubordinatorSpec;
use levy_extremes::targets::TargetSpec;
use levy_extremes::Error as CoreError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}: {}", self.key, self.message),
            None => write!(f, "{}: {}", self.key, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

macro_rules! keyword_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq)]
        pub enum $name { $($variant),+ }

        impl $name {
            const ALL: &'static [(&'static str, $name)] = &[$(($text, $name::$variant)),+];

            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                Self::ALL
                    .iter()
                    .find(|(t, _)| *t == s)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| {
                        let names: Vec<&str> = Self::ALL.iter().map(|(t, _)| *t).collect();
                        format!("expected one of {}, got `{s}`", names.join(", "))
                    })
            }
        }
    };
}

keyword_enum!(Command {
    Rate => "rate",
    Fht => "fht",
    Extremes => "extremes",
    KsSweep => "ks-sweep",
    Moments => "moments",
    PoissonField => "poisson-field",
});

keyword_enum!(FamilyName {
    Stable => "stable",
    Tempered => "tempered",
    Gamma => "gamma",
});

keyword_enum!(GeometryName {
    HalfLine => "halfline",
    Sphere => "sphere",
    Annulus => "annulus",
    Poisson => "poisson",
});

keyword_enum!(Mode {
    Resample => "resample",
    Direct => "direct",
});

keyword_enum!(GridPolicy {
    Fixed => "fixed",
    PerN => "per-n",
});

/// Every recognised key, in the order used when writing a config back out.
pub const KEYS: &[&str] = &[
    "command",
    "family",
    "alpha",
    "alpha_list",
    "K",
    "mu",
    "C",
    "b",
    "geometry",
    "L",
    "L_minus",
    "L_plus",
    "d",
    "lambda",
    "l",
    "box_halfwidth",
    "field_path",
    "dt",
    "t_max",
    "trials",
    "seed",
    "grid",
    "resolution",
    "horizon",
    "N_list",
    "k",
    "resamples",
    "mode",
    "output_path",
];

pub const DEFAULT_DT: f64 = 1e-5;
pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_RESAMPLES: usize = 10_000;
pub const DEFAULT_RESOLUTION: f64 = 100.0;
pub const DEFAULT_HORIZON: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub family: Option<FamilyName>,
    pub alpha: Option<f64>,
    pub alpha_list: Option<Vec<f64>>,
    pub k_diffusion: Option<f64>,
    pub mu: Option<f64>,
    pub c: Option<f64>,
    pub b: Option<f64>,
    pub geometry: Option<GeometryName>,
    pub l_dist: Option<f64>,
    pub l_minus: Option<f64>,
    pub l_plus: Option<f64>,
    pub d: Option<usize>,
    pub lambda: Option<f64>,
    pub radius: Option<f64>,
    pub box_halfwidth: Option<f64>,
    pub field_path: Option<PathBuf>,
    pub dt: f64,
    pub t_max: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    pub grid: GridPolicy,
    pub resolution: f64,
    pub horizon: f64,
    pub n_list: Option<Vec<usize>>,
    pub k: usize,
    pub resamples: usize,
    pub mode: Mode,
    pub output_path: Option<PathBuf>,
    lines: KeyLines,
}

/// Line on which each key was set, for error messages. Not part of the
/// config's value: two configs differing only here compare equal.
#[derive(Debug, Clone, Default)]
struct KeyLines(BTreeMap<&'static str, usize>);

impl PartialEq for KeyLines {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

struct Raw {
    values: BTreeMap<&'static str, (usize, String)>,
}

impl Raw {
    fn err(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: self.values.get(key).map(|v| v.0),
            key: key.to_string(),
            message: message.into(),
        }
    }

    fn get<T: FromStr>(&self, key: &'static str) -> Result<Option<T>, ConfigError>
    where
        T::Err: Display,
    {
        self.values
            .get(key)
            .map(|(_, v)| v.parse::<T>().map_err(|e| self.err(key, e.to_string())))
            .transpose()
    }

    fn number(&self, key: &'static str) -> Result<Option<f64>, ConfigError> {
        self.values
            .get(key)
            .map(|(_, v)| parse_number(v).map_err(|e| self.err(key, e)))
            .transpose()
    }

    fn integer(&self, key: &'static str) -> Result<Option<u64>, ConfigError> {
        self.values
            .get(key)
            .map(|(_, v)| parse_integer(v).map_err(|e| self.err(key, e)))
            .transpose()
    }

    fn list<T>(&self, key: &'static str, item: fn(&str) -> Result<T, String>) -> Result<Option<Vec<T>>, ConfigError> {
        let Some((_, v)) = self.values.get(key) else {
            return Ok(None);
        };
        let items: Result<Vec<T>, String> = v.split(',').map(|s| item(s.trim())).collect();
        let items = items.map_err(|e| self.err(key, e))?;
        if items.is_empty() {
            return Err(self.err(key, "list is empty"));
        }
        Ok(Some(items))
    }
}

fn parse_number(v: &str) -> Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("expected a number, got `{v}`"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("expected a finite number, got `{v}`"))
    }
}

/// Integers may be written in scientific notation (`1e5`) as long as they
/// are exact.
fn parse_integer(v: &str) -> Result<u64, String> {
    if let Ok(n) = v.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = v
        .parse()
        .map_err(|_| format!("expected a non-negative integer, got `{v}`"))?;
    if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(63) {
        Ok(x as u64)
    } else {
        Err(format!("expected a non-negative integer, got `{v}`"))
    }
}

fn parse_size(v: &str) -> Result<usize, String> {
    parse_integer(v).map(|n| n as usize)
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut values = BTreeMap::new();
    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError {
                line: Some(lineno),
                key: line.to_string(),
                message: "expected `key = value`".into(),
            });
        };
        let key = key.trim();
        let Some(&known) = KEYS.iter().find(|&&k| k == key) else {
            return Err(ConfigError {
                line: Some(lineno),
                key: key.to_string(),
                message: "unknown key".into(),
            });
        };
        let value = value.trim();
        if value.is_empty() {
            return Err(ConfigError {
                line: Some(lineno),
                key: key.to_string(),
                message: "missing value".into(),
            });
        }
        if let Some((first, _)) = values.insert(known, (lineno, value.to_string())) {
            return Err(ConfigError {
                line: Some(lineno),
                key: key.to_string(),
                message: format!("already set on line {first}"),
            });
        }
    }
    let raw = Raw { values };
    let cfg = ExperimentConfig {
        command: raw.get("command")?.unwrap_or(Command::Rate),
        family: raw.get("family")?,
        alpha: raw.number("alpha")?,
        alpha_list: raw.list("alpha_list", parse_number)?,
        k_diffusion: raw.number("K")?,
        mu: raw.number("mu")?,
        c: raw.number("C")?,
        b: raw.number("b")?,
        geometry: raw.get("geometry")?,
        l_dist: raw.number("L")?,
        l_minus: raw.number("L_minus")?,
        l_plus: raw.number("L_plus")?,
        d: raw.integer("d")?.map(|d| d as usize),
        lambda: raw.number("lambda")?,
        radius: raw.number("l")?,
        box_halfwidth: raw.number("box_halfwidth")?,
        field_path: raw.values.get("field_path").map(|v| PathBuf::from(&v.1)),
        dt: raw.number("dt")?.unwrap_or(DEFAULT_DT),
        t_max: raw.number("t_max")?,
        trials: raw.integer("trials")?.unwrap_or(DEFAULT_TRIALS),
        seed: raw.integer("seed")?.unwrap_or(0),
        grid: raw.get("grid")?.unwrap_or(GridPolicy::Fixed),
        resolution: raw.number("resolution")?.unwrap_or(DEFAULT_RESOLUTION),
        horizon: raw.number("horizon")?.unwrap_or(DEFAULT_HORIZON),
        n_list: raw.list("N_list", parse_size)?,
        k: raw.integer("k")?.map(|k| k as usize).unwrap_or(1),
        resamples: raw
            .integer("resamples")?
            .map(|r| r as usize)
            .unwrap_or(DEFAULT_RESAMPLES),
        mode: raw.get("mode")?.unwrap_or(Mode::Resample),
        output_path: raw.values.get("output_path").map(|v| PathBuf::from(&v.1)),
        lines: KeyLines(raw.values.iter().map(|(k, v)| (*k, v.0)).collect()),
    };
    cfg.validate()?;
    Ok(cfg)
}

impl ExperimentConfig {
    fn err(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: self.lines.0.get(key).copied(),
            key: key.to_string(),
            message: message.into(),
        }
    }

    /// Attributes a library validation error to the key it names.
    pub fn core_err(&self, e: CoreError) -> ConfigError {
        match e {
            CoreError::InvalidParameter { name, reason } => self.err(name, reason),
            CoreError::DimensionMismatch { .. } => self.err("d", e.to_string()),
            other => self.err("config", other.to_string()),
        }
    }

    pub fn is_set(&self, key: &str) -> bool {
        self.lines.0.contains_key(key)
    }

    /// Keys the command needs that are not set.
    fn missing(&self) -> Vec<&'static str> {
        let mut need: Vec<&'static str> = Vec::new();
        if self.command == Command::PoissonField {
            need.extend(["lambda", "l", "d", "box_halfwidth"]);
        } else {
            need.push("family");
            match self.family {
                Some(FamilyName::Stable) => need.extend(["alpha", "K"]),
                Some(FamilyName::Tempered) => need.extend(["alpha", "K", "mu"]),
                Some(FamilyName::Gamma) => need.extend(["C", "mu"]),
                None => {}
            }
            if self.command == Command::KsSweep && self.alpha_list.is_some() {
                need.retain(|&k| k != "alpha");
            }
            need.push("geometry");
            match self.geometry {
                Some(GeometryName::HalfLine) => need.push("L"),
                Some(GeometryName::Sphere) => need.extend(["L", "d"]),
                Some(GeometryName::Annulus) => need.extend(["L_minus", "L_plus", "d"]),
                Some(GeometryName::Poisson) => need.extend(["lambda", "l", "d", "box_halfwidth"]),
                None => {}
            }
            if matches!(self.command, Command::Extremes | Command::KsSweep | Command::Moments) {
                need.push("N_list");
            }
        }
        need.into_iter().filter(|k| !self.is_set(k)).collect()
    }

    fn validate(&self) -> Result<(), ConfigError> {
        // A bad value is reported before any missing key.
        let alphas = self.alpha.iter().map(|&a| ("alpha", a));
        let listed = self.alpha_list.iter().flatten().map(|&a| ("alpha_list", a));
        for (key, a) in alphas.chain(listed) {
            if let Err(CoreError::InvalidParameter { reason, .. }) = SubordinatorSpec::stable(a, 1.0) {
                return Err(self.err(key, reason));
            }
        }
        let missing = self.missing();
        if !missing.is_empty() {
            return Err(ConfigError {
                line: None,
                key: missing.join(", "),
                message: format!("missing required key{}", if missing.len() > 1 { "s" } else { "" }),
            });
        }
        if let Some(family) = self.family {
            let unused: &[&str] = match family {
                FamilyName::Stable => &["C", "mu"],
                FamilyName::Tempered => &["C"],
                FamilyName::Gamma => &["alpha", "alpha_list", "K"],
            };
            if let Some(key) = unused.iter().find(|k| self.is_set(k)) {
                return Err(self.err(key, format!("not used by family {}", family.as_str())));
            }
            if self.alpha_list.is_some() && self.command != Command::KsSweep {
                return Err(self.err("alpha_list", "only used by ks-sweep"));
            }
            if self.alpha.is_some() && self.alpha_list.is_some() {
                return Err(self.err("alpha_list", "set either alpha or alpha_list"));
            }
            self.specs()?;
        }
        if self.command == Command::PoissonField {
            if let Some(g) = self.geometry.filter(|&g| g != GeometryName::Poisson) {
                return Err(self.err(
                    "geometry",
                    format!("poisson-field generates a poisson geometry, not {}", g.as_str()),
                ));
            }
            self.check_field_density()?;
        } else if self.geometry.is_some() {
            self.target_shape()?;
        }
        if !(self.dt > 0.0) {
            return Err(self.err("dt", format!("must be positive, got {}", self.dt)));
        }
        if let Some(t) = self.t_max {
            if !(t >= self.dt) {
                return Err(self.err("t_max", format!("must be at least dt = {}, got {t}", self.dt)));
            }
        }
        if self.trials == 0 {
            return Err(self.err("trials", "must be at least 1"));
        }
        if !(self.resolution > 0.0) {
            return Err(self.err("resolution", "must be positive"));
        }
        if !(self.horizon > 0.0) {
            return Err(self.err("horizon", "must be positive"));
        }
        if let Some(ns) = &self.n_list {
            if ns.contains(&0) {
                return Err(self.err("N_list", "group sizes must be at least 1"));
            }
            let smallest = *ns.iter().min().expect("lists are nonempty");
            if self.k == 0 || self.k > smallest {
                return Err(self.err("k", format!("must lie in [1, {smallest}], got {}", self.k)));
            }
            let largest = *ns.iter().max().expect("lists are nonempty");
            if self.mode == Mode::Resample && (largest as u64) > self.trials {
                return Err(self.err(
                    "N_list",
                    format!("N = {largest} exceeds the pool size trials = {}", self.trials),
                ));
            }
            if self.command == Command::Extremes && ns.len() != 1 {
                return Err(self.err("N_list", "extremes takes a single group size"));
            }
        }
        if self.resamples == 0 {
            return Err(self.err("resamples", "must be at least 1"));
        }
        Ok(())
    }

    fn check_field_density(&self) -> Result<(), ConfigError> {
        let (lambda, l, d) = (
            self.lambda.unwrap_or(0.0),
            self.radius.unwrap_or(0.0),
            self.d.unwrap_or(0),
        );
        if d == 0 {
            return Err(self.err("d", "dimension must be at least 1"));
        }
        if !(lambda >= 0.0) {
            return Err(self.err("lambda", format!("must be non-negative, got {lambda}")));
        }
        if !(l > 0.0) {
            return Err(self.err("l", format!("must be positive, got {l}")));
        }
        if !(self.box_halfwidth.unwrap_or(0.0) > 0.0) {
            return Err(self.err("box_halfwidth", "must be positive"));
        }
        let occupied = lambda * l.powi(d as i32) * levy_extremes::special::unit_ball_volume(d);
        if occupied >= 1.0 {
            return Err(self.err(
                "lambda",
                format!("occupied volume fraction λ l^d V_d = {occupied} must be below 1"),
            ));
        }
        Ok(())
    }

    /// Subordinators described by the config: one per entry of
    /// `alpha_list`, otherwise exactly one.
    pub fn specs(&self) -> Result<Vec<SubordinatorSpec>, ConfigError> {
        let family = self.family.ok_or_else(|| self.err("family", "missing required key"))?;
        let alphas: Vec<Option<f64>> = match &self.alpha_list {
            Some(list) => list.iter().map(|&a| Some(a)).collect(),
            None => vec![self.alpha],
        };
        let key = if self.alpha_list.is_some() {
            "alpha_list"
        } else {
            "alpha"
        };
        alphas
            .into_iter()
            .map(|alpha| {
                let k = self.k_diffusion.unwrap_or(f64::NAN);
                let spec = match family {
                    FamilyName::Stable => SubordinatorSpec::stable(alpha.unwrap_or(f64::NAN), k),
                    FamilyName::Tempered => {
                        SubordinatorSpec::tempered_stable(alpha.unwrap_or(f64::NAN), k, self.mu.unwrap_or(f64::NAN))
                    }
                    FamilyName::Gamma => {
                        SubordinatorSpec::gamma(self.c.unwrap_or(f64::NAN), self.mu.unwrap_or(f64::NAN))
                    }
                };
                let spec = match self.b {
                    Some(b) => spec.and_then(|s| s.with_drift(b)),
                    None => spec,
                };
                spec.map_err(|e| match e {
                    CoreError::InvalidParameter { name: "alpha", reason } => self.err(key, reason),
                    other => self.core_err(other),
                })
            })
            .collect()
    }

    /// Target for the closed geometries. Poisson fields are built by the
    /// runner, which owns the random stream or the input file.
    pub fn target_shape(&self) -> Result<Option<TargetSpec>, ConfigError> {
        let t = match self.geometry {
            Some(GeometryName::HalfLine) => TargetSpec::half_line(self.l_dist.unwrap_or(f64::NAN)),
            Some(GeometryName::Sphere) => {
                TargetSpec::sphere_exterior(self.l_dist.unwrap_or(f64::NAN), self.d.unwrap_or(0))
            }
            Some(GeometryName::Annulus) => TargetSpec::annulus(
                self.l_minus.unwrap_or(f64::NAN),
                self.l_plus.unwrap_or(f64::NAN),
                self.d.unwrap_or(0),
            ),
            Some(GeometryName::Poisson) => {
                self.check_field_density()?;
                return Ok(None);
            }
            None => return Err(self.err("geometry", "missing required key")),
        };
        t.map(Some).map_err(|e| self.core_err(e))
    }

    /// Writes the config back out as a parseable document listing every
    /// key that differs from its default, plus the seed.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |key: &str, value: String| {
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&value);
            out.push('\n');
        };
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        put("command", self.command.as_str().into());
        if let Some(f) = self.family {
            put("family", f.as_str().into());
        }
        if let Some(v) = self.alpha {
            put("alpha", v.to_string());
        }
        if let Some(v) = &self.alpha_list {
            put("alpha_list", list(v));
        }
        for (key, v) in [("K", self.k_diffusion), ("mu", self.mu), ("C", self.c), ("b", self.b)] {
            if let Some(v) = v {
                put(key, v.to_string());
            }
        }
        if let Some(g) = self.geometry {
            put("geometry", g.as_str().into());
        }
        for (key, v) in [("L", self.l_dist), ("L_minus", self.l_minus), ("L_plus", self.l_plus)] {
            if let Some(v) = v {
                put(key, v.to_string());
            }
        }
        if let Some(d) = self.d {
            put("d", d.to_string());
        }
        for (key, v) in [
            ("lambda", self.lambda),
            ("l", self.radius),
            ("box_halfwidth", self.box_halfwidth),
        ] {
            if let Some(v) = v {
                put(key, v.to_string());
            }
        }
        if let Some(p) = &self.field_path {
            put("field_path", p.display().to_string());
        }
        put("dt", self.dt.to_string());
        if let Some(t) = self.t_max {
            put("t_max", t.to_string());
        }
        put("trials", self.trials.to_string());
        put("seed", self.seed.to_string());
        put("grid", self.grid.as_str().into());
        put("resolution", self.resolution.to_string());
        put("horizon", self.horizon.to_string());
        if let Some(ns) = &self.n_list {
            put(
                "N_list",
                ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", "),
            );
        }
        put("k", self.k.to_string());
        put("resamples", self.resamples.to_string());
        put("mode", self.mode.as_str().into());
        if let Some(p) = &self.output_path {
            put("output_path", p.display().to_string());
        }
        out
    }

    /// One-line form of [`to_text`](Self::to_text) for CSV comment headers.
    pub fn summary_line(&self) -> String {
        self.to_text().trim_end().replace('\n', "; ")
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
    }

    pub fn set_output_path(&mut self, path: PathBuf) {
        self.output_path = Some(path);
        self.lines.0.entry("output_path").or_insert(0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HALF_LINE: &str = "family = stable\nalpha = 1.5\nK = 1\ngeometry = halfline\nL = 1\n";

    #[test]
    fn half_line_example_is_valid() {
        let c = parse_config(HALF_LINE).unwrap();
        assert_eq!(c.command, Command::Rate);
        assert_eq!(c.dt, 1e-5);
        assert_eq!(c.trials, 100_000);
        assert_eq!(c.seed, 0);
        assert_eq!(c.specs().unwrap(), vec![SubordinatorSpec::stable(1.5, 1.0).unwrap()]);
    }

    #[test]
    fn out_of_range_alpha_names_key_and_line() {
        let e = parse_config("family = stable\nalpha = 2.5\nK = 1\ngeometry = halfline\nL = 1").unwrap_err();
        assert_eq!(e.key, "alpha");
        assert_eq!(e.line, Some(2));
        assert!(e.message.contains("(0, 2)"), "{e}");
    }

    #[test]
    fn lone_bad_alpha_is_reported_first() {
        let e = parse_config("alpha = 2.5").unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("alpha", Some(1)));
        assert!(e.message.contains("(0, 2)"), "{e}");
    }

    #[test]
    fn empty_document_lists_required_keys() {
        let e = parse_config("").unwrap_err();
        assert_eq!(e.key, "family, geometry");
        assert!(e.to_string().contains("missing required keys"));
        let e = parse_config("command = ks-sweep\nfamily = gamma").unwrap_err();
        assert_eq!(e.key, "C, mu, geometry, N_list");
    }

    #[test]
    fn type_and_syntax_errors() {
        let e = parse_config("alpha = fast").unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("alpha", Some(1)));
        let e = parse_config("# comment\nspeed = 3").unwrap_err();
        assert_eq!(
            (e.key.as_str(), e.line, e.message.as_str()),
            ("speed", Some(2), "unknown key")
        );
        let e = parse_config("alpha 3").unwrap_err();
        assert_eq!(e.line, Some(1));
        let e = parse_config(&format!("{HALF_LINE}L = 2")).unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("L", Some(6)));
        let e = parse_config(&format!("{HALF_LINE}trials = 1.5")).unwrap_err();
        assert_eq!(e.key, "trials");
    }

    #[test]
    fn cross_field_constraints() {
        let e = parse_config(&format!("{HALF_LINE}C = 1")).unwrap_err();
        assert_eq!(e.key, "C");
        let e = parse_config(&format!("{HALF_LINE}dt = 0.1\nt_max = 0.01")).unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("t_max", Some(7)));
        let e = parse_config(&format!("{HALF_LINE}command = moments\nN_list = 10, 100\nk = 20")).unwrap_err();
        assert_eq!(e.key, "k");
        let e = parse_config("family = stable\nalpha = 1\nK = 1\ngeometry = annulus\nL_minus = 2\nL_plus = 1\nd = 3")
            .unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("L_plus", Some(6)));
    }

    #[test]
    fn scientific_integers_and_lists() {
        let c = parse_config(&format!(
            "{HALF_LINE}command = ks-sweep\nN_list = 1e1, 1e2,1000\ntrials = 1e5"
        ))
        .unwrap();
        assert_eq!(c.n_list, Some(vec![10, 100, 1000]));
        assert_eq!(c.trials, 100_000);
    }

    #[test]
    fn round_trip() {
        let c = parse_config(&format!(
            "{HALF_LINE}command = ks-sweep\nN_list = 10, 100\ngrid = per-n\nseed = 9"
        ))
        .unwrap();
        let again = parse_config(&c.to_text()).unwrap();
        assert_eq!(again.to_text(), c.to_text());
        assert_eq!(again, c);
    }
}
