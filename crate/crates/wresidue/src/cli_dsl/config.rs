//! Run configuration and its validation.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use wres_core::multilinear::{CliffordElem, MAX_DIM};
use wres_core::symbol_engine::{BaseOperator, OperatorSpec, Torsion};
use wres_core::exact_scalars::{GaussianRational, XnRational};

use super::ast::SYMBOL_OPS;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Preset {
    /// `(D_T^*)^{-1} D_T^{-1}` in dimension 4.
    Sec3,
    /// `(D_T^*)^{-2} D_T^{-2}` in dimension 6.
    Sec5,
    /// Chiral projector on the left, dimension 4.
    Sec6,
    /// Nonminimal operator on forms.
    Heat7,
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Sec3, Preset::Sec5, Preset::Sec6, Preset::Heat7, Preset::Custom];
    pub const PHI: [Preset; 3] = [Preset::Sec3, Preset::Sec5, Preset::Sec6];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Sec3 => "sec3",
            Preset::Sec5 => "sec5",
            Preset::Sec6 => "sec6",
            Preset::Heat7 => "heat7",
            Preset::Custom => "custom",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            Preset::Sec3 => "dirac4",
            Preset::Sec5 => "dirac6",
            Preset::Sec6 => "chiral4",
            Preset::Heat7 => "heat",
            Preset::Custom => "custom",
        }
    }

    /// Dimension the preset is defined in.
    pub fn required_n(self) -> Option<u8> {
        match self {
            Preset::Sec3 | Preset::Sec6 => Some(4),
            Preset::Sec5 => Some(6),
            Preset::Heat7 | Preset::Custom => None,
        }
    }

    /// Left and right operators and whether the chiral projector is applied.
    pub fn operators(self) -> Option<(BaseOperator, BaseOperator, Projector)> {
        match self {
            Preset::Sec3 => Some((BaseOperator::DStarInv, BaseOperator::DInv, Projector::None)),
            Preset::Sec5 => Some((BaseOperator::DStarInvSq, BaseOperator::DInvSq, Projector::None)),
            Preset::Sec6 => Some((BaseOperator::DStarInv, BaseOperator::DInv, Projector::ChiralPlus)),
            Preset::Heat7 | Preset::Custom => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s || p.alias() == s)
            .ok_or_else(|| ConfigError(format!("unknown preset `{s}`; use one of sec3 (dirac4), sec5 (dirac6), sec6 (chiral4), heat7 (heat), custom")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Projector {
    None,
    /// `(1 + omega_g)/2`
    ChiralPlus,
    /// `(1 - omega_g)/2`
    ChiralMinus,
}

impl Projector {
    pub fn name(self) -> &'static str {
        match self {
            Projector::None => "none",
            Projector::ChiralPlus => "chiral-plus",
            Projector::ChiralMinus => "chiral-minus",
        }
    }

    /// The Clifford element, or `None` for the identity.
    pub fn element(self, n: u8) -> Option<CliffordElem> {
        let sign = match self {
            Projector::None => return None,
            Projector::ChiralPlus => 1,
            Projector::ChiralMinus => -1,
        };
        let omega = CliffordElem::product_of(n, &(1..=n).collect::<Vec<u8>>());
        let half = XnRational::gaussian(GaussianRational::frac(1, 2));
        Some((&CliffordElem::identity(n) + &omega.scale_gaussian(&GaussianRational::int(sign))).scale(&half))
    }
}

impl FromStr for Projector {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Projector::None),
            "chiral-plus" | "plus" => Ok(Projector::ChiralPlus),
            "chiral-minus" | "minus" => Ok(Projector::ChiralMinus),
            _ => Err(ConfigError(format!("unknown projector `{s}`; use none, chiral-plus or chiral-minus"))),
        }
    }
}

pub fn parse_operator(s: &str) -> Result<BaseOperator, ConfigError> {
    SYMBOL_OPS.iter().find(|(n, _)| *n == s).map(|(_, o)| *o).ok_or_else(|| {
        let names: Vec<&str> = SYMBOL_OPS.iter().map(|(n, _)| *n).collect();
        ConfigError(format!("unknown operator `{s}`; use one of {}", names.join(", ")))
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Latex => "tex",
        }
    }
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" | "tex" => Ok(Format::Latex),
            _ => Err(ConfigError(format!("unknown format `{s}`; use text, json or latex"))),
        }
    }
}

/// When ledger entries are sent to the quadrature oracle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleMode {
    Off,
    Mismatches,
    Always,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct OracleConfig {
    pub mode: OracleMode,
    pub seed: u64,
    pub draws: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { mode: OracleMode::Mismatches, seed: 20240917, draws: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub preset: Preset,
    pub n: u8,
    pub torsion: Torsion,
    pub projector: Projector,
    /// Operators for the custom preset.
    pub left: BaseOperator,
    pub right: BaseOperator,
    pub format: Format,
    pub oracle: OracleConfig,
    /// Targets file; the bundled one when `None`.
    pub targets: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

/// Options as given on the command line, before defaults are filled in.
#[derive(Clone, Debug, Default)]
pub struct RawOptions {
    pub preset: Option<String>,
    pub n: Option<u8>,
    pub no_three_form: bool,
    pub no_vectorial: bool,
    pub projector: Option<String>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub format: Option<String>,
    pub oracle: Option<OracleMode>,
    pub seed: Option<u64>,
    pub draws: Option<u32>,
    pub targets: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn preset(p: Preset) -> RunConfig {
        let (left, right, projector) = p.operators().unwrap_or((BaseOperator::DStarInv, BaseOperator::DInv, Projector::None));
        RunConfig {
            preset: p,
            n: p.required_n().unwrap_or(4),
            torsion: Torsion::FULL,
            projector,
            left,
            right,
            format: Format::Text,
            oracle: OracleConfig::default(),
            targets: None,
            out_dir: None,
        }
    }

    pub fn from_raw(raw: &RawOptions) -> Result<RunConfig, ConfigError> {
        let preset: Preset = raw.preset.as_deref().unwrap_or("sec3").parse()?;
        let mut c = RunConfig::preset(preset);
        if let Some(n) = raw.n {
            c.n = n;
        }
        c.torsion = Torsion { three_form: !raw.no_three_form, vectorial: !raw.no_vectorial };
        let fixed = preset != Preset::Custom;
        let opt = |name: &str, v: &Option<String>| -> Result<(), ConfigError> {
            if fixed && v.is_some() {
                return Err(ConfigError(format!("--{name} only applies to the custom preset; preset {preset} fixes it")));
            }
            Ok(())
        };
        opt("projector", &raw.projector)?;
        opt("left", &raw.left)?;
        opt("right", &raw.right)?;
        if let Some(p) = &raw.projector {
            c.projector = p.parse()?;
        }
        if let Some(o) = &raw.left {
            c.left = parse_operator(o)?;
        }
        if let Some(o) = &raw.right {
            c.right = parse_operator(o)?;
        }
        if let Some(f) = &raw.format {
            c.format = f.parse()?;
        }
        if let Some(m) = raw.oracle {
            c.oracle.mode = m;
        }
        if let Some(s) = raw.seed {
            c.oracle.seed = s;
        }
        if let Some(d) = raw.draws {
            c.oracle.draws = d;
        }
        c.targets = raw.targets.clone();
        c.out_dir = raw.out_dir.clone();
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(req) = self.preset.required_n() {
            if self.n != req {
                return Err(ConfigError(format!(
                    "preset {} requires n = {req}, got n = {}; drop --n or pass --n {req}",
                    self.preset, self.n
                )));
            }
        }
        if self.n < 2 || self.n % 2 != 0 || self.n > MAX_DIM {
            return Err(ConfigError(format!("n must be even and between 2 and {MAX_DIM}, got {}", self.n)));
        }
        if self.preset == Preset::Custom {
            if self.left.leading_order() >= 0 || self.right.leading_order() >= 0 {
                return Err(ConfigError(String::from("both operators must have negative order (use Dinv, Dstarinv, Dinv2 or Dstarinv2)")));
            }
            let p = -(self.left.leading_order() + self.right.leading_order());
            if p > self.n as i32 {
                return Err(ConfigError(format!("the orders of the two operators add up to {p}, more than n = {}", self.n)));
            }
        }
        if self.oracle.mode != OracleMode::Off && self.oracle.draws == 0 {
            return Err(ConfigError(String::from("--draws must be at least 1 when the oracle is on")));
        }
        Ok(())
    }

    pub fn left_spec(&self) -> OperatorSpec {
        let mut s = OperatorSpec::new(self.left, self.n).with_torsion(self.torsion);
        if let Some(w) = self.projector.element(self.n) {
            s = s.with_projector(w);
        }
        s
    }

    pub fn right_spec(&self) -> OperatorSpec {
        OperatorSpec::new(self.right, self.n).with_torsion(self.torsion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(preset: &str, n: Option<u8>) -> RawOptions {
        RawOptions { preset: Some(preset.into()), n, ..Default::default() }
    }

    #[test]
    fn preset_dimensions() {
        let e = RunConfig::from_raw(&raw("sec5", Some(4))).unwrap_err();
        assert!(e.0.contains("requires n = 6"), "{e}");
        assert_eq!(RunConfig::from_raw(&raw("sec5", None)).unwrap().n, 6);
        assert_eq!(RunConfig::from_raw(&raw("dirac6", Some(6))).unwrap().preset, Preset::Sec5);
        assert!(RunConfig::from_raw(&raw("sec6", Some(6))).is_err());
        assert!(RunConfig::from_raw(&raw("custom", Some(5))).is_err());
        assert!(RunConfig::from_raw(&raw("sec7", None)).is_err());
    }

    #[test]
    fn fixed_operators() {
        let mut r = raw("sec3", None);
        r.left = Some("Dinv".into());
        assert!(RunConfig::from_raw(&r).is_err());
        let mut r = raw("custom", Some(2));
        r.left = Some("Dinv2".into());
        r.right = Some("Dinv".into());
        assert!(RunConfig::from_raw(&r).unwrap_err().0.contains("add up to 3"));
    }

    #[test]
    fn chiral_projector_is_idempotent() {
        let p = Projector::ChiralPlus.element(4).unwrap();
        let m = Projector::ChiralMinus.element(4).unwrap();
        assert_eq!(&p * &p, p);
        assert_eq!(&p + &m, CliffordElem::identity(4));
        assert!((&p * &m).is_zero());
    }
}
