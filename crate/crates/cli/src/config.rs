//! Session configuration: a TOML file overridden by command-line flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use ribbon_core::session::{CurveSpec, StrataOptions};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    PlaneQuartic,
    Plane,
    Hyperelliptic,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub modulus: Option<u64>,
    pub seed: Option<u64>,
    pub curve: Option<CurveSpec>,
    pub conormal: Option<i64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub strata: Option<StrataFile>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataFile {
    pub b_max: Option<usize>,
    pub sweep: Option<usize>,
    pub w4: Option<bool>,
    pub pool_limit: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct CommonArgs {
    /// TOML session file; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Prime modulus
    #[arg(long = "p")]
    pub modulus: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub curve: Option<Family>,
    /// Degree of a plane curve
    #[arg(long)]
    pub degree: Option<usize>,
    /// Genus of a hyperelliptic curve
    #[arg(long)]
    pub g: Option<usize>,
    /// Explicit coefficients, comma separated
    #[arg(long, value_delimiter = ',')]
    pub coeffs: Option<Vec<u32>>,
    /// Draw the curve from the seeded generator, ignoring coefficients
    #[arg(long)]
    pub random: bool,
    /// Conormal bundle as a multiple t of the polarization (t < 0)
    #[arg(long, allow_hyphen_values = true)]
    pub conormal: Option<i64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also write the JSON report here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct StrataArgs {
    /// Largest divisor degree searched
    #[arg(long)]
    pub bmax: Option<usize>,
    /// Number of random extension classes; 0 for the split class
    #[arg(long)]
    pub sweep: Option<usize>,
    /// List ramification witnesses of degree-2 maps (genus one)
    #[arg(long)]
    pub w4: bool,
    /// Use only the first N rational points
    #[arg(long)]
    pub pool: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub modulus: u64,
    pub seed: u64,
    pub curve: CurveSpec,
    pub conormal: Option<i64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub b_max: usize,
    pub sweep: usize,
    pub w4: bool,
    pub pool_limit: Option<usize>,
}

impl SessionConfig {
    pub fn resolve(common: &CommonArgs, strata: &StrataArgs) -> Result<Self, String> {
        let file = match &common.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let mut curve = match common.curve {
            Some(Family::PlaneQuartic) => CurveSpec::PlaneQuartic { coefficients: None },
            Some(Family::Plane) => CurveSpec::Plane {
                degree: common.degree.ok_or("--curve plane needs --degree")?,
                coefficients: None,
            },
            Some(Family::Hyperelliptic) => CurveSpec::Hyperelliptic {
                genus: common.g.ok_or("--curve hyperelliptic needs --g")?,
                coefficients: None,
            },
            None => file
                .curve
                .clone()
                .unwrap_or(CurveSpec::PlaneQuartic { coefficients: None }),
        };
        match &mut curve {
            CurveSpec::Plane { degree, .. } => {
                if let Some(d) = common.degree {
                    *degree = d;
                }
            }
            CurveSpec::Hyperelliptic { genus, .. } => {
                if let Some(g) = common.g {
                    *genus = g;
                }
            }
            CurveSpec::PlaneQuartic { .. } => {}
        }
        let coefficients = match &mut curve {
            CurveSpec::PlaneQuartic { coefficients }
            | CurveSpec::Plane { coefficients, .. }
            | CurveSpec::Hyperelliptic { coefficients, .. } => coefficients,
        };
        if let Some(c) = &common.coeffs {
            *coefficients = Some(c.clone());
        }
        if common.random {
            *coefficients = None;
        }
        let s = file.strata.unwrap_or_default();
        let defaults = StrataOptions::default();
        Ok(SessionConfig {
            modulus: common.modulus.or(file.modulus).unwrap_or(101),
            seed: common.seed.or(file.seed).unwrap_or(0),
            curve,
            conormal: common.conormal.or(file.conormal),
            format: common.format.or(file.format).unwrap_or_default(),
            out: common.out.clone().or(file.out),
            b_max: strata.bmax.or(s.b_max).unwrap_or(defaults.b_max),
            sweep: strata.sweep.or(s.sweep).unwrap_or(defaults.sweep),
            w4: strata.w4 || s.w4.unwrap_or(false),
            pool_limit: strata.pool.or(s.pool_limit),
        })
    }

    pub fn strata_options(&self) -> StrataOptions {
        StrataOptions {
            b_max: self.b_max,
            sweep: self.sweep,
            w4: self.w4,
            pool_limit: self.pool_limit,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        std::io::Write::write_all(&mut f, text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn defaults() {
        let c = SessionConfig::resolve(&CommonArgs::default(), &StrataArgs::default()).unwrap();
        assert_eq!((c.modulus, c.seed, c.format), (101, 0, Format::Text));
        assert_eq!(c.curve, CurveSpec::PlaneQuartic { coefficients: None });
    }

    #[test]
    fn flags_override_file() {
        let f = write(
            "modulus = 103\nseed = 7\nconormal = -3\n[curve]\nfamily = \"hyperelliptic\"\ngenus = 2\n[strata]\nsweep = 5\n",
        );
        let common = CommonArgs {
            config: Some(f.path().to_path_buf()),
            seed: Some(9),
            g: Some(3),
            ..CommonArgs::default()
        };
        let c = SessionConfig::resolve(&common, &StrataArgs::default()).unwrap();
        assert_eq!((c.modulus, c.seed, c.conormal, c.sweep), (103, 9, Some(-3), 5));
        assert_eq!(
            c.curve,
            CurveSpec::Hyperelliptic {
                genus: 3,
                coefficients: None
            }
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let f = write("modulus = 101\nprime = 7\n");
        let common = CommonArgs {
            config: Some(f.path().to_path_buf()),
            ..CommonArgs::default()
        };
        assert!(SessionConfig::resolve(&common, &StrataArgs::default()).is_err());
    }

    #[test]
    fn random_drops_coefficients() {
        let f = write("[curve]\nfamily = \"hyperelliptic\"\ngenus = 1\ncoefficients = [0, 100, 0, 1]\n");
        let common = CommonArgs {
            config: Some(f.path().to_path_buf()),
            random: true,
            ..CommonArgs::default()
        };
        let c = SessionConfig::resolve(&common, &StrataArgs::default()).unwrap();
        assert_eq!(
            c.curve,
            CurveSpec::Hyperelliptic {
                genus: 1,
                coefficients: None
            }
        );
    }
}
