//! Flat key-value run configuration with command-line overrides.
//!
//! The file format is `key = value` per line; `#` starts a comment. Keys are
//! listed in the README reference table. Values parsed here feed every
//! subcommand; unknown keys are rejected so typos fail loudly.

use std::fmt;
use std::path::Path;

use rsbeams::beams::{BesselBeamSpec, Helicity, LgBeamSpec, VectorBasis};
use rsbeams::fd::{FdSpec, StencilOrder};
use rsbeams::fields::Constants;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Constants preset selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Natural,
    Si,
}

impl Preset {
    pub fn constants(&self) -> Constants {
        match self {
            Preset::Natural => Constants::natural(),
            Preset::Si => Constants::si(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Natural => "natural",
            Preset::Si => "si",
        }
    }
}

/// One sampling axis: either a fixed value or `min:max:count`.
#[derive(Debug, Clone, Copy)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn fixed(v: f64) -> Self {
        Self {
            min: v,
            max: v,
            count: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + step * i as f64).collect()
    }

    fn parse(text: &str) -> Result<Self, ConfigError> {
        let parts: Vec<&str> = text.split(':').collect();
        match parts.len() {
            1 => {
                let v = parse_f64(parts[0])?;
                Ok(Self::fixed(v))
            }
            3 => {
                let min = parse_f64(parts[0])?;
                let max = parse_f64(parts[1])?;
                let count: usize = parts[2]
                    .trim()
                    .parse()
                    .map_err(|_| ConfigError(format!("bad axis count '{}'", parts[2])))?;
                if count < 1 {
                    return err("axis count must be >= 1");
                }
                if !(min.is_finite() && max.is_finite()) {
                    return err("axis range must be finite");
                }
                if count > 1 && min >= max {
                    return err(format!("axis range must satisfy min < max, got {min}:{max}"));
                }
                Ok(Self { min, max, count })
            }
            _ => err(format!("axis must be 'value' or 'min:max:count', got '{text}'")),
        }
    }
}

/// Grid over any subset of `(x, y, z, t)`.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub x: AxisSpec,
    pub y: AxisSpec,
    pub z: AxisSpec,
    pub t: AxisSpec,
}

impl GridSpec {
    pub fn point_count(&self) -> usize {
        self.x.count * self.y.count * self.z.count * self.t.count
    }
}

/// Beam selection.
#[derive(Debug, Clone, Copy)]
pub enum BeamConfig {
    Bessel(BesselBeamSpec),
    LaguerreGauss(LgBeamSpec),
}

impl BeamConfig {
    pub fn describe(&self) -> String {
        match self {
            BeamConfig::Bessel(s) => format!(
                "bessel k_perp={} k_z={} m={} sigma={:+}",
                s.k_perp,
                s.k_z,
                s.m,
                s.sigma.sign() as i32
            ),
            BeamConfig::LaguerreGauss(s) => format!(
                "lg omega={} n={} m={} waist={} sigma={:+}",
                s.omega,
                s.n,
                s.m,
                s.waist,
                s.sigma.sign() as i32
            ),
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub beam: BeamConfig,
    pub preset: Preset,
    pub fd_order: StencilOrder,
    /// Step factor relative to the characteristic scales `1/k`, `1/ω`.
    pub fd_step_factor: f64,
    /// Relative quadrature tolerance.
    pub tol: f64,
    pub basis: VectorBasis,
    pub grid: GridSpec,
    /// Fault injection: negate `F_z` before verification.
    pub corrupt_negate_fz: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            beam: BeamConfig::Bessel(
                BesselBeamSpec::new(1.0, 5.0, 2, Helicity::Plus).expect("valid default"),
            ),
            preset: Preset::Natural,
            fd_order: StencilOrder::Four,
            fd_step_factor: 1e-3,
            tol: 1e-10,
            basis: VectorBasis::Cartesian,
            grid: GridSpec {
                x: AxisSpec {
                    min: -1.0,
                    max: 1.0,
                    count: 21,
                },
                y: AxisSpec::fixed(0.0),
                z: AxisSpec::fixed(0.0),
                t: AxisSpec::fixed(0.0),
            },
            corrupt_negate_fz: false,
        }
    }
}

impl RunConfig {
    pub fn constants(&self) -> Constants {
        self.preset.constants()
    }

    /// Characteristic wavenumber and angular frequency of the configured
    /// beam, for finite-difference step selection.
    pub fn characteristic_scales(&self) -> (f64, f64) {
        let c = self.constants().c;
        match &self.beam {
            BeamConfig::Bessel(s) => {
                let k = s.total_wavenumber();
                (k, c * k)
            }
            BeamConfig::LaguerreGauss(s) => (s.omega / c, s.omega),
        }
    }

    pub fn fd_spec(&self) -> FdSpec {
        let (k, omega) = self.characteristic_scales();
        FdSpec {
            steps: [
                self.fd_step_factor / k,
                self.fd_step_factor / k,
                self.fd_step_factor / k,
                self.fd_step_factor / omega,
            ],
            order: self.fd_order,
        }
    }

    /// Parse a config file and fold it over the defaults.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str_content(&text)
    }

    pub fn from_str_content(text: &str) -> Result<Self, ConfigError> {
        let mut raw = RawBeam::default();
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "family" => raw.family = Some(value.to_string()),
                "sigma" => raw.sigma = Some(parse_sigma(value)?),
                "k_perp" => raw.k_perp = Some(parse_f64(value)?),
                "k_z" => raw.k_z = Some(parse_f64(value)?),
                "m" => {
                    raw.m = Some(value.parse().map_err(|_| {
                        ConfigError(format!("bad integer for m: '{value}'"))
                    })?)
                }
                "n" => {
                    raw.n = Some(value.parse().map_err(|_| {
                        ConfigError(format!("bad nonnegative integer for n: '{value}'"))
                    })?)
                }
                "omega" => raw.omega = Some(parse_f64(value)?),
                "waist" => raw.waist = Some(parse_f64(value)?),
                "constants" => {
                    cfg.preset = match value {
                        "natural" => Preset::Natural,
                        "si" => Preset::Si,
                        other => return err(format!("unknown constants preset '{other}'")),
                    }
                }
                "fd_order" => cfg.fd_order = parse_order(value)?,
                "fd_step_factor" => cfg.fd_step_factor = parse_positive(value, "fd_step_factor")?,
                "tol" => cfg.tol = parse_positive(value, "tol")?,
                "basis" => cfg.basis = parse_basis(value)?,
                "grid.x" => cfg.grid.x = AxisSpec::parse(value)?,
                "grid.y" => cfg.grid.y = AxisSpec::parse(value)?,
                "grid.z" => cfg.grid.z = AxisSpec::parse(value)?,
                "grid.t" => cfg.grid.t = AxisSpec::parse(value)?,
                other => return err(format!("unknown key '{other}'")),
            }
        }
        cfg.beam = raw.resolve()?;
        Ok(cfg)
    }
}

/// Beam keys before family resolution.
#[derive(Default)]
struct RawBeam {
    family: Option<String>,
    sigma: Option<Helicity>,
    k_perp: Option<f64>,
    k_z: Option<f64>,
    m: Option<i64>,
    n: Option<u32>,
    omega: Option<f64>,
    waist: Option<f64>,
}

impl RawBeam {
    fn resolve(self) -> Result<BeamConfig, ConfigError> {
        let family = self.family.as_deref().unwrap_or("bessel");
        let sigma = self.sigma.unwrap_or(Helicity::Plus);
        match family {
            "bessel" => {
                let k_perp = self.k_perp.unwrap_or(1.0);
                let k_z = self.k_z.unwrap_or(5.0);
                let m = self.m.unwrap_or(2);
                let m: i32 = m
                    .try_into()
                    .map_err(|_| ConfigError(format!("m = {m} out of range")))?;
                let spec = BesselBeamSpec::new(k_perp, k_z, m, sigma)
                    .map_err(|e| ConfigError(e.to_string()))?;
                Ok(BeamConfig::Bessel(spec))
            }
            "lg" => {
                let omega = self.omega.unwrap_or(10.0);
                let n = self.n.unwrap_or(0);
                let m = self.m.unwrap_or(0);
                let m: u32 = m.try_into().map_err(|_| {
                    ConfigError(format!("lg beams require m >= 0, got {m}"))
                })?;
                let waist = self.waist.unwrap_or(1.0);
                let spec = LgBeamSpec::new(omega, n, m, waist, sigma)
                    .map_err(|e| ConfigError(e.to_string()))?;
                Ok(BeamConfig::LaguerreGauss(spec))
            }
            other => err(format!("unknown beam family '{other}' (expected bessel|lg)")),
        }
    }
}

fn parse_f64(text: &str) -> Result<f64, ConfigError> {
    text.trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad number '{text}'")))
}

fn parse_positive(text: &str, key: &str) -> Result<f64, ConfigError> {
    let v = parse_f64(text)?;
    if !(v.is_finite() && v > 0.0) {
        return err(format!("{key} must be positive, got {v}"));
    }
    Ok(v)
}

fn parse_sigma(text: &str) -> Result<Helicity, ConfigError> {
    match text {
        "+1" | "1" | "plus" => Ok(Helicity::Plus),
        "-1" | "minus" => Ok(Helicity::Minus),
        other => err(format!("sigma must be +1 or -1, got '{other}'")),
    }
}

pub fn parse_order(text: &str) -> Result<StencilOrder, ConfigError> {
    match text {
        "2" => Ok(StencilOrder::Two),
        "4" => Ok(StencilOrder::Four),
        other => err(format!("fd order must be 2 or 4, got '{other}'")),
    }
}

pub fn parse_basis(text: &str) -> Result<VectorBasis, ConfigError> {
    match text {
        "cartesian" => Ok(VectorBasis::Cartesian),
        "cylindrical" => Ok(VectorBasis::Cylindrical),
        other => err(format!("basis must be cartesian or cylindrical, got '{other}'")),
    }
}
