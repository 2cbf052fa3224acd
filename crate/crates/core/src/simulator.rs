//! Synthetic monitoring scenarios: ground-truth chest displacement
//! (breathing + heartbeat + random body movement) modulated into complex
//! baseband radar returns with clutter and noise.
//!
//! Everything is a pure function of the scenario config, so identical
//! configs (including the seed) produce bit-identical output.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::RadarCube;

/// Complex amplitude of the subject's return; clutter and noise scale off it.
pub const SUBJECT_AMPLITUDE: f64 = 1.0;

/// Raised-cosine edge applied to step/ramp movement events, seconds.
pub const RBM_SMOOTHING_S: f64 = 0.2;

/// Taper easing breathing in/out around apnea segments, seconds.
pub const APNEA_TAPER_S: f64 = 0.5;

const BREATH_STREAM: u64 = 1;
const RBM_STREAM: u64 = 2;
const MODULATE_STREAM: u64 = 3;

fn derived_seed(seed: u64, stream: u64) -> u64 {
    seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Breakpoint of a piecewise-linear rate trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatePoint {
    pub t_s: f64,
    pub bpm: f64,
}

/// Instantaneous rate in bpm at time `t`: piecewise-linear through the
/// points, held constant beyond the ends; duplicate times encode a jump.
fn rate_at(points: &[RatePoint], fallback_bpm: f64, t: f64) -> f64 {
    if points.is_empty() {
        return fallback_bpm;
    }
    if t <= points[0].t_s {
        return points[0].bpm;
    }
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if t < b.t_s {
            let span = b.t_s - a.t_s;
            if span <= 0.0 {
                return a.bpm;
            }
            return a.bpm + (b.bpm - a.bpm) * (t - a.t_s) / span;
        }
    }
    points[points.len() - 1].bpm
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BreathingPattern {
    /// Steady breathing at the configured rate.
    #[default]
    Eupnea,
    /// Breathing suppressed inside the given [start_s, end_s] segments.
    Apnea { segments: Vec<[f64; 2]> },
    /// Per-cycle rate jitter, uniform within +/- jitter_pct percent.
    Irregular { jitter_pct: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BreathingParams {
    pub rate_bpm: f64,
    pub amplitude_mm: f64,
    /// Relative amplitudes of harmonics 2, 3, ... of the breathing rate.
    pub harmonic_coeffs: Vec<f64>,
    pub pattern: BreathingPattern,
    /// Optional piecewise-linear rate trajectory overriding `rate_bpm`.
    pub rate_points: Vec<RatePoint>,
}

impl Default for BreathingParams {
    fn default() -> Self {
        Self {
            rate_bpm: 15.0,
            amplitude_mm: 4.0,
            harmonic_coeffs: vec![0.3, 0.1],
            pattern: BreathingPattern::Eupnea,
            rate_points: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeartbeatParams {
    pub rate_bpm: f64,
    pub amplitude_mm: f64,
    /// Relative amplitudes of heartbeat harmonics 2, 3, ...; the harmonic
    /// estimator needs these to exist.
    pub harmonic_coeffs: Vec<f64>,
    pub rate_points: Vec<RatePoint>,
}

impl Default for HeartbeatParams {
    fn default() -> Self {
        Self {
            rate_bpm: 72.0,
            amplitude_mm: 0.2,
            harmonic_coeffs: vec![0.3, 0.1],
            rate_points: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum RbmKind {
    /// Displacement jumps to the event amplitude and stays there.
    Step,
    /// Linear drift to the event amplitude over the event duration.
    Ramp,
    /// Seeded white noise band-limited to 0-2 Hz inside the event span.
    BandLimitedNoise,
    /// Tapered sinusoid at the given frequency inside the event span.
    Sinusoid { freq_hz: f64 },
}

/// One random-body-movement event; events may overlap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RbmEvent {
    pub start_s: f64,
    pub duration_s: f64,
    pub amplitude_mm: f64,
    pub kind: RbmKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub carrier_wavelength_mm: f64,
    pub frame_rate_hz: f64,
    pub duration_s: f64,
    pub subject_range_bin: usize,
    pub num_range_bins: usize,
    pub breathing: BreathingParams,
    pub heartbeat: HeartbeatParams,
    pub rbm_events: Vec<RbmEvent>,
    /// Per-bin SNR in dB; `None` disables noise entirely.
    pub snr_db: Option<f64>,
    /// Static clutter magnitude relative to the subject amplitude.
    pub clutter_amplitude: f64,
    pub rng_seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            carrier_wavelength_mm: 5.0,
            frame_rate_hz: 50.0,
            duration_s: 60.0,
            subject_range_bin: 7,
            num_range_bins: 16,
            breathing: BreathingParams::default(),
            heartbeat: HeartbeatParams::default(),
            rbm_events: Vec::new(),
            snr_db: Some(20.0),
            clutter_amplitude: 2.0,
            rng_seed: 42,
        }
    }
}

impl ScenarioConfig {
    pub fn num_samples(&self) -> usize {
        (self.duration_s * self.frame_rate_hz).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::InvalidConfig(m));
        if self.carrier_wavelength_mm <= 0.0 {
            return err("carrier_wavelength_mm must be positive".into());
        }
        if self.frame_rate_hz <= 0.0 {
            return err("frame_rate_hz must be positive".into());
        }
        if self.duration_s <= 0.0 {
            return err("duration_s must be positive".into());
        }
        if self.num_range_bins == 0 || self.subject_range_bin >= self.num_range_bins {
            return err(format!(
                "subject_range_bin {} out of range for {} bins",
                self.subject_range_bin, self.num_range_bins
            ));
        }
        if self.clutter_amplitude < 0.0 {
            return err("clutter_amplitude must be non-negative".into());
        }
        if let Some(snr) = self.snr_db {
            if !snr.is_finite() {
                return err("snr_db must be finite".into());
            }
        }
        for p in [
            (self.breathing.rate_bpm, self.breathing.amplitude_mm, "breathing"),
            (self.heartbeat.rate_bpm, self.heartbeat.amplitude_mm, "heartbeat"),
        ] {
            if p.0 <= 0.0 {
                return err(format!("{} rate_bpm must be positive", p.2));
            }
            if p.1 < 0.0 {
                return err(format!("{} amplitude_mm must be non-negative", p.2));
            }
        }
        for c in self
            .breathing
            .harmonic_coeffs
            .iter()
            .chain(self.heartbeat.harmonic_coeffs.iter())
        {
            if !(0.0..=1.0).contains(c) {
                return err(format!("harmonic coefficient {c} outside [0, 1]"));
            }
        }
        for ev in &self.rbm_events {
            if ev.amplitude_mm < 0.0 {
                return err("rbm event amplitude_mm must be non-negative".into());
            }
            if ev.start_s < 0.0 || ev.duration_s < 0.0
                || ev.start_s + ev.duration_s > self.duration_s + 1e-9
            {
                return err(format!(
                    "rbm event [{}, {}] outside the scenario timebase",
                    ev.start_s,
                    ev.start_s + ev.duration_s
                ));
            }
        }
        Ok(())
    }
}

/// Per-sample ground truth emitted alongside the radar cube.
///
/// The total displacement is the exact componentwise sum of the three
/// component series.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub fs: f64,
    pub total_mm: Vec<f64>,
    pub breathing_mm: Vec<f64>,
    pub heart_mm: Vec<f64>,
    pub rbm_mm: Vec<f64>,
    /// Instantaneous breathing rate; zero inside apnea segments.
    pub breathing_bpm: Vec<f64>,
    pub heart_bpm: Vec<f64>,
    /// True where a movement event is active (steps: the transition).
    pub rbm_mask: Vec<bool>,
    /// Random phase offset of the subject bin, for closed-loop oracles.
    pub subject_phase_rad: f64,
}

fn check_n_fs(n: usize, fs: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("sample count must be positive".into()));
    }
    if fs <= 0.0 {
        return Err(Error::InvalidInput("sample rate must be positive".into()));
    }
    Ok(())
}

/// Fundamental-plus-harmonics waveform for an accumulated phase series.
fn harmonic_wave(phase: &[f64], amplitude: f64, coeffs: &[f64]) -> Vec<f64> {
    phase
        .iter()
        .map(|&p| {
            let mut v = p.sin();
            for (i, &c) in coeffs.iter().enumerate() {
                v += c * ((i + 2) as f64 * p).sin();
            }
            amplitude * v
        })
        .collect()
}

/// Accumulated oscillator phase for a (possibly time-varying) rate.
///
/// Constant rates use the closed form so that integer fs/f periods are
/// sample-exact; trajectories integrate the piecewise-linear rate with the
/// trapezoid rule, which is exact for linear segments. `jitter` scales the
/// rate by a per-cycle random factor.
fn accumulate_phase(
    rate_bpm: f64,
    points: &[RatePoint],
    n: usize,
    fs: f64,
    jitter_pct: f64,
    rng: &mut ChaCha8Rng,
    rate_out: Option<&mut Vec<f64>>,
) -> Vec<f64> {
    let jittered = jitter_pct != 0.0;
    let mut rates = vec![0.0; n];
    let mut phase = vec![0.0; n];
    if points.is_empty() && !jittered {
        let f0 = rate_bpm / 60.0;
        for i in 0..n {
            phase[i] = TAU * f0 * (i as f64 / fs);
            rates[i] = rate_bpm;
        }
    } else {
        let mut factor = 1.0;
        let mut draw = |rng: &mut ChaCha8Rng| {
            if jittered {
                1.0 + jitter_pct / 100.0 * rng.gen_range(-1.0..1.0)
            } else {
                1.0
            }
        };
        factor = draw(rng) * factor;
        let mut cycle_anchor = 0.0;
        rates[0] = rate_at(points, rate_bpm, 0.0) * factor;
        for i in 1..n {
            let t0 = (i - 1) as f64 / fs;
            let t1 = i as f64 / fs;
            let f_avg = 0.5 * (rate_at(points, rate_bpm, t0) + rate_at(points, rate_bpm, t1))
                / 60.0
                * factor;
            phase[i] = phase[i - 1] + TAU * f_avg * (t1 - t0);
            rates[i] = rate_at(points, rate_bpm, t1) * factor;
            if phase[i] - cycle_anchor >= TAU {
                cycle_anchor += TAU;
                factor = draw(rng);
            }
        }
    }
    if let Some(out) = rate_out {
        *out = rates;
    }
    phase
}

/// Envelope that is 1 away from apnea segments, 0 strictly inside them,
/// with raised-cosine tapers just outside the segment boundaries.
fn apnea_envelope(segments: &[[f64; 2]], n: usize, fs: f64) -> Vec<f64> {
    let tau = APNEA_TAPER_S;
    (0..n)
        .map(|i| {
            let t = i as f64 / fs;
            let mut env: f64 = 1.0;
            for seg in segments {
                let (s, e) = (seg[0], seg[1]);
                let g = if t >= s && t <= e {
                    0.0
                } else if t > s - tau && t < s {
                    0.5 * (1.0 + (PI * (t - (s - tau)) / tau).cos())
                } else if t > e && t < e + tau {
                    0.5 * (1.0 - (PI * (t - e) / tau).cos())
                } else {
                    1.0
                };
                env = env.min(g);
            }
            env
        })
        .collect()
}

struct BreathingSynthesis {
    displacement_mm: Vec<f64>,
    rate_bpm: Vec<f64>,
}

fn synth_breathing_full(
    params: &BreathingParams,
    n: usize,
    fs: f64,
    seed: u64,
) -> Result<BreathingSynthesis> {
    check_n_fs(n, fs)?;
    let jitter = match params.pattern {
        BreathingPattern::Irregular { jitter_pct } => jitter_pct,
        _ => 0.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rates = Vec::new();
    let phase = accumulate_phase(
        params.rate_bpm,
        &params.rate_points,
        n,
        fs,
        jitter,
        &mut rng,
        Some(&mut rates),
    );
    let mut d = harmonic_wave(&phase, params.amplitude_mm, &params.harmonic_coeffs);
    if let BreathingPattern::Apnea { segments } = &params.pattern {
        let env = apnea_envelope(segments, n, fs);
        for i in 0..n {
            d[i] *= env[i];
            if env[i] <= 0.5 {
                rates[i] = 0.0;
            }
        }
    }
    Ok(BreathingSynthesis { displacement_mm: d, rate_bpm: rates })
}

/// Chest displacement from breathing: fundamental plus configured
/// harmonics, with the pattern (apnea, irregular) applied on top.
pub fn synth_breathing(params: &BreathingParams, n: usize, fs: f64, seed: u64) -> Result<Vec<f64>> {
    Ok(synth_breathing_full(params, n, fs, seed)?.displacement_mm)
}

fn synth_heartbeat_full(params: &HeartbeatParams, n: usize, fs: f64) -> Result<BreathingSynthesis> {
    check_n_fs(n, fs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut rates = Vec::new();
    let phase = accumulate_phase(
        params.rate_bpm,
        &params.rate_points,
        n,
        fs,
        0.0,
        &mut rng,
        Some(&mut rates),
    );
    Ok(BreathingSynthesis {
        displacement_mm: harmonic_wave(&phase, params.amplitude_mm, &params.harmonic_coeffs),
        rate_bpm: rates,
    })
}

/// Heartbeat displacement: sinusoid at rate_bpm/60 plus configured harmonics.
pub fn synth_heartbeat(params: &HeartbeatParams, n: usize, fs: f64) -> Result<Vec<f64>> {
    Ok(synth_heartbeat_full(params, n, fs)?.displacement_mm)
}

/// Raised-cosine smoothing kernel, unit sum, odd length.
fn smoothing_kernel(fs: f64) -> Vec<f64> {
    let mut len = (RBM_SMOOTHING_S * fs).round() as usize;
    if len % 2 == 0 {
        len += 1;
    }
    if len <= 1 {
        return vec![1.0];
    }
    let mut k: Vec<f64> = (0..len)
        .map(|i| 0.5 * (1.0 - (TAU * i as f64 / (len - 1) as f64).cos()))
        .collect();
    let sum: f64 = k.iter().sum();
    for v in &mut k {
        *v /= sum;
    }
    k
}

/// Centered convolution with edge replication.
fn smooth(x: &[f64], kernel: &[f64]) -> Vec<f64> {
    let half = kernel.len() / 2;
    let n = x.len();
    (0..n)
        .map(|i| {
            kernel
                .iter()
                .enumerate()
                .map(|(j, &k)| {
                    let idx = (i + j).saturating_sub(half).min(n - 1);
                    k * x[idx]
                })
                .sum()
        })
        .collect()
}

/// Raised-cosine on/off envelope over [start, end] with `taper`-second edges.
fn event_taper(t: f64, start: f64, end: f64, taper: f64) -> f64 {
    if t < start || t > end {
        return 0.0;
    }
    let taper = taper.min((end - start) / 2.0).max(0.0);
    if taper == 0.0 {
        return 1.0;
    }
    if t < start + taper {
        0.5 * (1.0 - (PI * (t - start) / taper).cos())
    } else if t > end - taper {
        0.5 * (1.0 - (PI * (end - t) / taper).cos())
    } else {
        1.0
    }
}

fn synth_one_event(ev: &RbmEvent, n: usize, fs: f64, seed: u64) -> Vec<f64> {
    let start = ev.start_s;
    let end = ev.start_s + ev.duration_s;
    match ev.kind {
        RbmKind::Step => {
            let ideal: Vec<f64> = (0..n)
                .map(|i| if i as f64 / fs >= start { ev.amplitude_mm } else { 0.0 })
                .collect();
            smooth(&ideal, &smoothing_kernel(fs))
        }
        RbmKind::Ramp => {
            let ideal: Vec<f64> = (0..n)
                .map(|i| {
                    let t = i as f64 / fs;
                    if t < start {
                        0.0
                    } else if ev.duration_s <= 1.0 / fs || t >= end {
                        ev.amplitude_mm
                    } else {
                        ev.amplitude_mm * (t - start) / ev.duration_s
                    }
                })
                .collect();
            smooth(&ideal, &smoothing_kernel(fs))
        }
        RbmKind::Sinusoid { freq_hz } => (0..n)
            .map(|i| {
                let t = i as f64 / fs;
                let env = event_taper(t, start, end, RBM_SMOOTHING_S);
                ev.amplitude_mm * env * (TAU * freq_hz * (t - start)).sin()
            })
            .collect(),
        RbmKind::BandLimitedNoise => {
            let i0 = (start * fs).ceil() as usize;
            let i1 = ((end * fs).floor() as usize).min(n.saturating_sub(1));
            if i1 <= i0 {
                return vec![0.0; n];
            }
            let m = i1 - i0 + 1;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let normal = Normal::new(0.0, 1.0).expect("unit normal");
            let white: Vec<f64> = (0..m).map(|_| normal.sample(&mut rng)).collect();
            let mut low = lowpass_fft(&white, fs, 2.0);
            let peak = low.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
            if peak > 0.0 {
                for v in &mut low {
                    *v *= ev.amplitude_mm / peak;
                }
            }
            let mut out = vec![0.0; n];
            for (j, &v) in low.iter().enumerate() {
                let t = (i0 + j) as f64 / fs;
                out[i0 + j] = v * event_taper(t, start, end, RBM_SMOOTHING_S);
            }
            out
        }
    }
}

/// Brick-wall FFT low-pass used for noise shaping inside movement events.
fn lowpass_fft(x: &[f64], fs: f64, cutoff_hz: f64) -> Vec<f64> {
    use rustfft::FftPlanner;
    let n = x.len();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft.process(&mut buf);
    for (k, v) in buf.iter_mut().enumerate() {
        let f = if k <= n / 2 {
            k as f64 * fs / n as f64
        } else {
            (n - k) as f64 * fs / n as f64
        };
        if f > cutoff_hz {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    let ifft = planner.plan_fft_inverse(n);
    ifft.process(&mut buf);
    buf.iter().map(|v| v.re / n as f64).collect()
}

/// Superposition of all movement events over an `n`-sample timebase.
pub fn synth_rbm(events: &[RbmEvent], n: usize, fs: f64, seed: u64) -> Result<Vec<f64>> {
    check_n_fs(n, fs)?;
    let duration = n as f64 / fs;
    for ev in events {
        if ev.start_s < 0.0 || ev.duration_s < 0.0 || ev.start_s + ev.duration_s > duration + 1e-9
        {
            return Err(Error::InvalidInput(format!(
                "rbm event [{}, {}] outside the timebase [0, {duration}]",
                ev.start_s,
                ev.start_s + ev.duration_s
            )));
        }
    }
    let mut total = vec![0.0; n];
    for (idx, ev) in events.iter().enumerate() {
        let ev_seed = derived_seed(seed, 0x1000 + idx as u64);
        let one = synth_one_event(ev, n, fs, ev_seed);
        for i in 0..n {
            total[i] += one[i];
        }
    }
    Ok(total)
}

/// Sample intervals where an event actually moves the body.
fn rbm_mask(events: &[RbmEvent], n: usize, fs: f64) -> Vec<bool> {
    let margin = RBM_SMOOTHING_S / 2.0;
    let mut mask = vec![false; n];
    for ev in events {
        let (lo, hi) = match ev.kind {
            // Only the transition of a step is motion.
            RbmKind::Step => (ev.start_s - margin, ev.start_s + margin),
            RbmKind::Ramp => (ev.start_s - margin, ev.start_s + ev.duration_s + margin),
            _ => (ev.start_s, ev.start_s + ev.duration_s),
        };
        let i0 = (lo * fs).floor().max(0.0) as usize;
        let i1 = ((hi * fs).ceil() as usize).min(n.saturating_sub(1));
        for m in mask.iter_mut().take(i1 + 1).skip(i0.min(n)) {
            *m = true;
        }
    }
    mask
}

/// Modulate ground-truth displacement into the subject bin's phase and fill
/// the remaining bins with clutter and noise.
///
/// Subject bin: `A*exp(j(4*pi*d(t)/lambda + theta0)) + c + w(t)`; every bin
/// gets an independent static clutter constant of magnitude
/// `clutter_amplitude * A` and, when enabled, white complex noise scaled so
/// the per-bin SNR relative to the subject power matches `snr_db`.
pub fn modulate(config: &ScenarioConfig, truth: &GroundTruth) -> Result<RadarCube> {
    config.validate()?;
    let n = config.num_samples();
    if truth.total_mm.len() != n {
        return Err(Error::InvalidInput(format!(
            "ground truth length {} does not match config ({} samples)",
            truth.total_mm.len(),
            n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(config.rng_seed, MODULATE_STREAM));
    let theta0 = truth.subject_phase_rad;
    let clutter: Vec<Complex64> = (0..config.num_range_bins)
        .map(|_| {
            let psi = rng.gen_range(-PI..PI);
            Complex64::from_polar(config.clutter_amplitude * SUBJECT_AMPLITUDE, psi)
        })
        .collect();
    let noise_sigma = config
        .snr_db
        .map(|snr| (SUBJECT_AMPLITUDE * SUBJECT_AMPLITUDE / 10f64.powf(snr / 10.0) / 2.0).sqrt());
    let normal = noise_sigma.map(|s| Normal::new(0.0, s).expect("noise sigma"));

    let mut cube = RadarCube::new(
        n,
        config.num_range_bins,
        config.frame_rate_hz,
        config.carrier_wavelength_mm,
    );
    let phase_scale = 4.0 * PI / config.carrier_wavelength_mm;
    for frame in 0..n {
        for bin in 0..config.num_range_bins {
            let mut v = clutter[bin];
            if bin == config.subject_range_bin {
                let phi = phase_scale * truth.total_mm[frame] + theta0;
                v += Complex64::from_polar(SUBJECT_AMPLITUDE, phi);
            }
            if let Some(nd) = &normal {
                v += Complex64::new(nd.sample(&mut rng), nd.sample(&mut rng));
            }
            *cube.at_mut(frame, bin) = v;
        }
    }
    Ok(cube)
}

/// Generate the full scenario: ground truth plus the modulated radar cube.
pub fn run_scenario(config: &ScenarioConfig) -> Result<(RadarCube, GroundTruth)> {
    config.validate()?;
    let n = config.num_samples();
    if n == 0 {
        return Err(Error::InvalidConfig("scenario produces zero samples".into()));
    }
    let fs = config.frame_rate_hz;
    let breath = synth_breathing_full(
        &config.breathing,
        n,
        fs,
        derived_seed(config.rng_seed, BREATH_STREAM),
    )?;
    let heart = synth_heartbeat_full(&config.heartbeat, n, fs)?;
    let rbm = synth_rbm(&config.rbm_events, n, fs, derived_seed(config.rng_seed, RBM_STREAM))?;
    let total: Vec<f64> = (0..n)
        .map(|i| breath.displacement_mm[i] + heart.displacement_mm[i] + rbm[i])
        .collect();

    let mut theta_rng =
        ChaCha8Rng::seed_from_u64(derived_seed(config.rng_seed, MODULATE_STREAM ^ 0xFFFF));
    let theta0 = theta_rng.gen_range(-PI..PI);

    let truth = GroundTruth {
        fs,
        total_mm: total,
        breathing_mm: breath.displacement_mm,
        heart_mm: heart.displacement_mm,
        rbm_mm: rbm,
        breathing_bpm: breath.rate_bpm,
        heart_bpm: heart.rate_bpm,
        rbm_mask: rbm_mask(&config.rbm_events, n, fs),
        subject_phase_rad: theta0,
    };
    let cube = modulate(config, &truth)?;
    Ok((cube, truth))
}
