//! Run configuration: an optional JSON file overridden by command-line flags.

use crate::error::{Error, Result};
use crate::scattering::ScatteringModel;
use crate::surface::SurfaceSignature;
use crate::trace_geom::{LengthSpectrum, DEFAULT_KMAX};
use serde::Deserialize;
use std::path::{Path, PathBuf};

use super::table::Format;

/// Surface given inline or as a path to a JSON file.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSource {
    Inline(SurfaceSignature),
    Path(PathBuf),
}

/// Fields of a config file. Every field is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub surface: Option<SurfaceSource>,
    pub spectrum: Option<PathBuf>,
    pub scattering: Option<String>,
    pub n: Option<u32>,
    pub n0: Option<u32>,
    pub s: Option<Vec<f64>>,
    pub a: Option<f64>,
    pub kmax: Option<u32>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
    pub skip_scattering: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = read(path)?;
        let mut c: FileConfig =
            serde_json::from_str(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        // relative paths are taken from the config file's directory
        let base = path.parent().unwrap_or(Path::new("."));
        if let Some(SurfaceSource::Path(p)) = &mut c.surface {
            *p = base.join(&*p);
        }
        if let Some(p) = &mut c.spectrum {
            *p = base.join(&*p);
        }
        if let Some(s) = &mut c.scattering {
            if let Some(rest) = s.strip_prefix("file:") {
                *s = format!("file:{}", base.join(rest).display());
            }
        }
        Ok(c)
    }

    /// Fills every unset field of `self` from `other`.
    pub fn or(self, other: FileConfig) -> FileConfig {
        FileConfig {
            surface: self.surface.or(other.surface),
            spectrum: self.spectrum.or(other.spectrum),
            scattering: self.scattering.or(other.scattering),
            n: self.n.or(other.n),
            n0: self.n0.or(other.n0),
            s: self.s.or(other.s),
            a: self.a.or(other.a),
            kmax: self.kmax.or(other.kmax),
            format: self.format.or(other.format),
            jobs: self.jobs.or(other.jobs),
            skip_scattering: self.skip_scattering.or(other.skip_scattering),
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::config(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub surface: Option<SurfaceSignature>,
    pub spectrum: LengthSpectrum,
    pub scattering: ScatteringModel,
    pub n: u32,
    pub n0: u32,
    pub s_grid: Vec<f64>,
    pub a: Option<f64>,
    pub output_format: Format,
    pub kmax: u32,
    pub jobs: usize,
    pub skip_scattering: bool,
}

impl RunConfig {
    pub fn resolve(c: FileConfig) -> Result<RunConfig> {
        let surface = match c.surface {
            None => None,
            Some(SurfaceSource::Inline(s)) => Some(s),
            Some(SurfaceSource::Path(p)) => Some(SurfaceSignature::from_json(&read(&p)?)?),
        };
        let spectrum = match c.spectrum {
            None => LengthSpectrum::empty(),
            Some(p) => LengthSpectrum::from_json(&read(&p)?)?,
        };
        let scattering = match c.scattering {
            None => ScatteringModel::None,
            Some(s) => ScatteringModel::from_spec(&s)?,
        };
        let s_grid = c.s.unwrap_or_default();
        if let Some(bad) = s_grid.iter().find(|&&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::config(format!("evaluation point s = {bad} must be positive")));
        }
        if let Some(a) = c.a {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::config(format!("a = {a} must be positive")));
            }
        }
        let jobs = c.jobs.unwrap_or(1);
        if jobs == 0 {
            return Err(Error::config("--jobs must be at least 1"));
        }
        Ok(RunConfig {
            surface,
            spectrum,
            scattering,
            n: c.n.unwrap_or(0),
            n0: c.n0.unwrap_or(0),
            s_grid,
            a: c.a,
            output_format: Format::parse(c.format.as_deref().unwrap_or("csv"))?,
            kmax: c.kmax.unwrap_or(DEFAULT_KMAX),
            jobs,
            skip_scattering: c.skip_scattering.unwrap_or(false),
        })
    }

    pub fn surface(&self) -> Result<&SurfaceSignature> {
        self.surface.as_ref().ok_or_else(|| Error::config("no surface given (--surface)"))
    }

    pub fn grid(&self) -> Result<&[f64]> {
        if self.s_grid.is_empty() {
            return Err(Error::config("no evaluation points given (--s)"));
        }
        Ok(&self.s_grid)
    }
}

/// Parses "1.5,2,3e-1".
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::config(format!("bad evaluation point {t:?}"))))
        .collect()
}
