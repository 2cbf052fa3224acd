//! Shared signal containers flowing between pipeline stages.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-sample trust level attached to recovered displacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleQuality {
    /// Sample passed through the chain untouched.
    Valid,
    /// Sample is likely dominated by body movement and was not repaired.
    RbmSuspect,
    /// Sample was reconstructed by the mitigation stage.
    Recovered,
}

/// Complex slow-time × range-bin matrix, the pipeline's raw input.
///
/// Row-major storage: frame-major, bin-minor.
#[derive(Debug, Clone, PartialEq)]
pub struct RadarCube {
    pub data: Vec<Complex64>,
    pub num_frames: usize,
    pub num_range_bins: usize,
    pub frame_rate_hz: f64,
    pub wavelength_mm: f64,
}

impl RadarCube {
    pub fn new(
        num_frames: usize,
        num_range_bins: usize,
        frame_rate_hz: f64,
        wavelength_mm: f64,
    ) -> Self {
        Self {
            data: vec![Complex64::new(0.0, 0.0); num_frames * num_range_bins],
            num_frames,
            num_range_bins,
            frame_rate_hz,
            wavelength_mm,
        }
    }

    #[inline]
    pub fn at(&self, frame: usize, bin: usize) -> Complex64 {
        self.data[frame * self.num_range_bins + bin]
    }

    #[inline]
    pub fn at_mut(&mut self, frame: usize, bin: usize) -> &mut Complex64 {
        &mut self.data[frame * self.num_range_bins + bin]
    }

    /// Copy of one range bin's slow-time column.
    pub fn column(&self, bin: usize) -> Vec<Complex64> {
        (0..self.num_frames).map(|f| self.at(f, bin)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.data.len() != self.num_frames * self.num_range_bins {
            return Err(Error::InvalidInput(format!(
                "cube data length {} does not match {}x{}",
                self.data.len(),
                self.num_frames,
                self.num_range_bins
            )));
        }
        if self.frame_rate_hz <= 0.0 {
            return Err(Error::InvalidInput("frame rate must be positive".into()));
        }
        if !self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput("cube contains non-finite values".into()));
        }
        Ok(())
    }
}

/// Complex slow-time signal extracted from the subject's range bin.
#[derive(Debug, Clone)]
pub struct SlowTimeSignal {
    pub samples: Vec<Complex64>,
    pub fs: f64,
    pub source_bin: usize,
    pub wavelength_mm: f64,
}

/// Real-valued phase series, either wrapped to (-pi, pi] or unwrapped.
#[derive(Debug, Clone)]
pub struct PhaseSeries {
    pub values: Vec<f64>,
    pub fs: f64,
    pub wrapped: bool,
}

/// Recovered chest displacement with per-sample quality flags.
#[derive(Debug, Clone)]
pub struct DisplacementSignal {
    pub values: Vec<f64>,
    pub fs: f64,
    pub quality: Vec<SampleQuality>,
}

impl DisplacementSignal {
    pub fn new(values: Vec<f64>, fs: f64) -> Self {
        let quality = vec![SampleQuality::Valid; values.len()];
        Self { values, fs, quality }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.values.len() as f64 / self.fs
    }
}

/// Inclusive frequency band in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo_hz: f64,
    pub hi_hz: f64,
}

impl Band {
    pub fn new(lo_hz: f64, hi_hz: f64) -> Self {
        Self { lo_hz, hi_hz }
    }

    #[inline]
    pub fn contains(&self, f_hz: f64) -> bool {
        f_hz >= self.lo_hz && f_hz <= self.hi_hz
    }

    /// Checks 0 < lo < hi < nyquist.
    pub fn validate(&self, fs: f64) -> Result<()> {
        if !(self.lo_hz > 0.0 && self.lo_hz < self.hi_hz && self.hi_hz < fs / 2.0) {
            return Err(Error::InvalidBand(format!(
                "need 0 < {} < {} < {}",
                self.lo_hz,
                self.hi_hz,
                fs / 2.0
            )));
        }
        Ok(())
    }
}
