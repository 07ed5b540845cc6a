//! Receive-chain simulation for a uniform linear array.
//!
//! Each element sees a narrowband carrier, is mixed down to a real IF stream
//! and sampled. A FIR Hilbert transformer forms I/Q, per-channel complex
//! weights equalize gain and phase, and a 32-point transform across the
//! elements forms the beams. Integrating `|bin|²` over the snapshots gives
//! the received energy per beam.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beampattern::{element_phases, AxisKind, BeamGrid, BeamValues, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::fastalg::{apply_fast, builtin_adft32_factorization};
use crate::transforms::{adft32_matrix, apply_dense, dft_matrix, ADFT_SIZE};

/// Chain parameters. Frequencies in Hz, spacing in wavelengths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChainConfig {
    pub f_rf: f64,
    pub f_lo: f64,
    pub f_clk: f64,
    pub n_elements: usize,
    pub dx: f64,
    pub hilbert_taps: usize,
    /// Per-channel complex weights applied after the Hilbert stage.
    pub calibration: Option<Vec<Complex64>>,
    /// Per-channel gain/phase error of the analog front end.
    pub mismatch: Option<Vec<Complex64>>,
    pub snapshots: usize,
    /// Source distance from the array centre in metres; `None` is far field.
    pub source_range: Option<f64>,
    /// Per-element SNR of the IF tone; `None` disables noise.
    pub snr_db: Option<f64>,
    pub seed: u64,
    /// Fixed-point resolution of the I/Q samples entering the transform.
    pub iq_fraction_bits: Option<u32>,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            f_rf: 5.86e9,
            f_lo: 5.85e9,
            f_clk: 200e6,
            n_elements: ADFT_SIZE,
            dx: 0.5,
            hilbert_taps: 63,
            calibration: None,
            mismatch: None,
            snapshots: 4096,
            source_range: None,
            snr_db: None,
            seed: 0,
            iq_fraction_bits: Some(24),
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.f_rf.is_finite() && self.f_lo.is_finite() && self.f_clk > 0.0) {
            return bad("frequencies must be finite and f_clk positive".into());
        }
        if self.f_rf <= self.f_lo {
            return bad(format!("f_rf ({}) must exceed f_lo ({})", self.f_rf, self.f_lo));
        }
        let f_if = self.if_frequency();
        if f_if >= self.f_clk / 2.0 {
            return bad(format!(
                "IF {f_if} Hz is outside the first Nyquist zone of f_clk = {} Hz",
                self.f_clk
            ));
        }
        if self.hilbert_taps < 3 || self.hilbert_taps.is_multiple_of(2) {
            return bad(format!("hilbert_taps must be odd and >= 3, got {}", self.hilbert_taps));
        }
        if self.n_elements == 0 || self.snapshots == 0 {
            return bad("n_elements and snapshots must be positive".into());
        }
        if !(self.dx.is_finite() && self.dx > 0.0) {
            return bad(format!("dx must be positive, got {}", self.dx));
        }
        for (name, v) in [("calibration", &self.calibration), ("mismatch", &self.mismatch)] {
            if let Some(w) = v {
                if w.len() != self.n_elements {
                    return bad(format!(
                        "{name} has {} weights for {} elements",
                        w.len(),
                        self.n_elements
                    ));
                }
            }
        }
        if let Some(r) = self.source_range {
            if !(r.is_finite() && r > 0.0) {
                return bad(format!("source_range must be positive, got {r}"));
            }
        }
        if let Some(s) = self.snr_db {
            if !s.is_finite() {
                return bad("snr_db must be finite".into());
            }
        }
        if let Some(b) = self.iq_fraction_bits {
            if b > 40 {
                return bad(format!("iq_fraction_bits {b} exceeds 40"));
            }
        }
        Ok(())
    }

    pub fn if_frequency(&self) -> f64 {
        self.f_rf - self.f_lo
    }

    /// IF in cycles per sample.
    pub fn if_normalized(&self) -> f64 {
        self.if_frequency() / self.f_clk
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.f_rf
    }

    /// Samples lost to the Hilbert filter start-up.
    pub fn transient(&self) -> usize {
        self.hilbert_taps - 1
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: ChainConfig = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }
}

/// Real IF samples `[element][time]` for a carrier from `azimuth_deg`.
///
/// Element `n` carries `g_n·cos(2π·f_IF·t + φ_n + α_n)` where `φ_n` is the
/// geometric phase and `g_n·e^{jα_n}` the front-end mismatch. Noise, if
/// enabled, is real white Gaussian at `snr_db` below the unit tone power.
pub fn synthesize_element_signals(
    config: &ChainConfig,
    azimuth_deg: f64,
    duration_samples: usize,
) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    let phases = element_phases(
        config.n_elements,
        config.dx,
        azimuth_deg,
        config.source_range,
        config.wavelength(),
    );
    let w = 2.0 * PI * config.if_normalized();
    let noise = config
        .snr_db
        .map(|snr| Normal::new(0.0, (0.5 / 10f64.powf(snr / 10.0)).sqrt()))
        .transpose()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    Ok(phases
        .iter()
        .enumerate()
        .map(|(n, &phi)| {
            let m = config.mismatch.as_ref().map_or(Complex64::new(1.0, 0.0), |v| v[n]);
            let (g, alpha) = m.to_polar();
            (0..duration_samples)
                .map(|t| {
                    let clean = g * (w * t as f64 + phi + alpha).cos();
                    match &noise {
                        Some(d) => clean + d.sample(&mut rng),
                        None => clean,
                    }
                })
                .collect()
        })
        .collect())
}

/// Blackman-windowed type-III Hilbert transformer of odd length `taps`.
pub fn hilbert_taps(taps: usize) -> Result<Vec<f64>> {
    if taps < 3 || taps.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!("hilbert taps must be odd and >= 3, got {taps}")));
    }
    let half = (taps - 1) / 2;
    let last = (taps - 1) as f64;
    Ok((0..taps)
        .map(|i| {
            let m = i as i64 - half as i64;
            if m % 2 == 0 {
                return 0.0;
            }
            let x = i as f64 / last;
            let window = 0.42 - 0.5 * (2.0 * PI * x).cos() + 0.08 * (4.0 * PI * x).cos();
            2.0 / (PI * m as f64) * window
        })
        .collect())
}

/// Analytic signal of a real stream. The I path is delayed by the filter's
/// group delay `(taps − 1)/2`, so the first `taps − 1` outputs are start-up.
pub fn hilbert_iq(stream: &[f64], taps: usize) -> Result<Vec<Complex64>> {
    let h = hilbert_taps(taps)?;
    let delay = (taps - 1) / 2;
    let nonzero: Vec<(usize, f64)> = h
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, &c)| (i, c))
        .collect();
    Ok((0..stream.len())
        .map(|t| {
            let i = if t >= delay { stream[t - delay] } else { 0.0 };
            let q: f64 = nonzero
                .iter()
                .filter(|(j, _)| *j <= t)
                .map(|&(j, c)| c * stream[t - j])
                .sum();
            Complex64::new(i, q)
        })
        .collect())
}

fn check_channels(signals: &[Vec<Complex64>], expected: usize, context: &'static str) -> Result<()> {
    if signals.len() != expected {
        return Err(Error::DimensionMismatch {
            context,
            expected,
            found: signals.len(),
        });
    }
    Ok(())
}

/// Multiplies channel `n` by `weights[n]`.
pub fn apply_calibration(signals: &[Vec<Complex64>], weights: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    check_channels(signals, weights.len(), "calibration weights vs channels")?;
    Ok(signals
        .iter()
        .zip(weights)
        .map(|(ch, &w)| ch.iter().map(|&s| s * w).collect())
        .collect())
}

/// Complex amplitude of each channel at a tone of `cycles_per_sample`,
/// by projection onto `e^{j2πft}`.
pub fn tone_amplitudes(signals: &[Vec<Complex64>], cycles_per_sample: f64) -> Vec<Complex64> {
    signals
        .iter()
        .map(|ch| {
            let sum: Complex64 = ch
                .iter()
                .enumerate()
                .map(|(t, &s)| s * Complex64::from_polar(1.0, -2.0 * PI * cycles_per_sample * t as f64))
                .sum();
            sum / ch.len().max(1) as f64
        })
        .collect()
}

/// Weights that bring every channel's amplitude at the reference tone to
/// that of channel 0: `w_n = a_0 / a_n`.
pub fn estimate_calibration(signals: &[Vec<Complex64>], cycles_per_sample: f64) -> Result<Vec<Complex64>> {
    if signals.is_empty() {
        return Err(Error::InvalidConfig("no channels to calibrate".into()));
    }
    let a = tone_amplitudes(signals, cycles_per_sample);
    if let Some(n) = a.iter().position(|z| z.norm() == 0.0) {
        return Err(Error::InvalidConfig(format!("channel {n} carries no reference tone")));
    }
    Ok(a.iter().map(|&an| a[0] / an).collect())
}

/// Rounds both parts of every sample to a multiple of `2^-bits`.
pub fn quantize(signals: &mut [Vec<Complex64>], fraction_bits: u32) {
    let scale = 2f64.powi(fraction_bits as i32);
    for s in signals.iter_mut().flatten() {
        *s = Complex64::new((s.re * scale).round() / scale, (s.im * scale).round() / scale);
    }
}

/// Spatial transform used by the beamformer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    DenseExact,
    DenseAdft,
    FastAdft,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::DenseExact => "dense_exact",
            Engine::DenseAdft => "dense_adft",
            Engine::FastAdft => "fast_adft",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "dense_exact" => Ok(Engine::DenseExact),
            "dense_adft" => Ok(Engine::DenseAdft),
            "fast_adft" => Ok(Engine::FastAdft),
            other => Err(Error::Parse(format!("unknown engine `{other}`"))),
        }
    }
}

/// Applies the engine's transform across elements at every time index.
/// Returns `[bin][time]`.
pub fn spatial_transform_per_snapshot(
    signals: &[Vec<Complex64>],
    engine: Engine,
) -> Result<Vec<Vec<Complex64>>> {
    let n = signals.len();
    if engine != Engine::DenseExact {
        check_channels(signals, ADFT_SIZE, "ADFT engine element count")?;
    }
    let len = signals.first().map_or(0, Vec::len);
    if let Some(bad) = signals.iter().find(|c| c.len() != len) {
        return Err(Error::DimensionMismatch {
            context: "channel lengths",
            expected: len,
            found: bad.len(),
        });
    }
    let dense = match engine {
        Engine::DenseExact => Some(dft_matrix(n)),
        Engine::DenseAdft => Some(adft32_matrix()),
        Engine::FastAdft => None,
    };
    let fast = builtin_adft32_factorization();
    let columns: Vec<Vec<Complex64>> = (0..len)
        .into_par_iter()
        .map(|t| {
            let x: Vec<Complex64> = signals.iter().map(|c| c[t]).collect();
            match &dense {
                Some(m) => apply_dense(m, &x),
                None => apply_fast(&fast, &x),
            }
        })
        .collect::<Result<_>>()?;
    let bins = columns.first().map_or(n, Vec::len);
    Ok((0..bins)
        .map(|b| columns.iter().map(|col| col[b]).collect())
        .collect())
}

/// Integrated `|bin|²` over the snapshots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinEnergyReport {
    pub per_bin_energy: Vec<f64>,
    pub integration_snapshots: usize,
}

impl BinEnergyReport {
    pub fn from_bins(bins: &[Vec<Complex64>]) -> Self {
        Self {
            per_bin_energy: bins.iter().map(|b| b.iter().map(|z| z.norm_sqr()).sum()).collect(),
            integration_snapshots: bins.first().map_or(0, Vec::len),
        }
    }

    /// Energies in dB relative to the strongest bin.
    pub fn normalized_db(&self) -> Vec<f64> {
        let peak = self.per_bin_energy.iter().cloned().fold(0.0, f64::max);
        self.per_bin_energy
            .iter()
            .map(|&e| 10.0 * (e / peak).log10())
            .collect()
    }

    pub fn total(&self) -> f64 {
        self.per_bin_energy.iter().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin,energy,dB\n");
        for (b, (e, d)) in self.per_bin_energy.iter().zip(self.normalized_db()).enumerate() {
            out.push_str(&format!("{b},{e},{d}\n"));
        }
        out
    }
}

/// Steady-state calibrated I/Q `[element][snapshot]` for one arrival angle.
pub fn iq_front_end(config: &ChainConfig, azimuth_deg: f64) -> Result<Vec<Vec<Complex64>>> {
    let skip = config.transient();
    let raw = synthesize_element_signals(config, azimuth_deg, config.snapshots + skip)?;
    let iq: Vec<Vec<Complex64>> = raw
        .iter()
        .map(|s| hilbert_iq(s, config.hilbert_taps).map(|v| v[skip..].to_vec()))
        .collect::<Result<_>>()?;
    let mut iq = match &config.calibration {
        Some(w) => apply_calibration(&iq, w)?,
        None => iq,
    };
    if let Some(bits) = config.iq_fraction_bits {
        quantize(&mut iq, bits);
    }
    Ok(iq)
}

/// Full chain for one arrival angle.
pub fn run_chain(config: &ChainConfig, azimuth_deg: f64, engine: Engine) -> Result<BinEnergyReport> {
    let iq = iq_front_end(config, azimuth_deg)?;
    let bins = spatial_transform_per_snapshot(&iq, engine)?;
    Ok(BinEnergyReport::from_bins(&bins))
}

/// Per-angle seed so sweep results do not depend on evaluation order.
fn angle_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs the chain at every azimuth and collects bin energies as patterns.
pub fn bin_energy_sweep(config: &ChainConfig, azimuth_deg: &[f64], engine: Engine) -> Result<BeamGrid> {
    config.validate()?;
    let reports: Vec<BinEnergyReport> = azimuth_deg
        .par_iter()
        .enumerate()
        .map(|(i, &az)| {
            let mut c = config.clone();
            c.seed = angle_seed(config.seed, i);
            run_chain(&c, az, engine)
        })
        .collect::<Result<_>>()?;
    let bins = reports.first().map_or(0, |r| r.per_bin_energy.len());
    let values = (0..bins)
        .map(|b| reports.iter().map(|r| r.per_bin_energy[b]).collect())
        .collect();
    BeamGrid::new(AxisKind::AzimuthDeg, azimuth_deg.to_vec(), BeamValues::Power(values))
}

/// Bin index of the strongest beam, with indices `≥ N/2` mapped to negative.
pub fn signed_bin(bin: usize, n: usize) -> i64 {
    if bin >= n / 2 {
        bin as i64 - n as i64
    } else {
        bin as i64
    }
}
