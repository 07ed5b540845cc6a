//! Filter-bank responses and beam patterns of spatial transforms.
//!
//! Conventions: a plane wave arriving from azimuth θ puts phase
//! `e^{+j n ω_x}` on element `n`, with `ω_x = 2π·dx·sin θ` and `dx` in
//! wavelengths. The array factor of bin `k` is therefore
//! `Σ_n T(k,n)·e^{+j n ω_x}` and bin `k` of the exact DFT points at
//! `ω_x = 2πk/N`. The filter response of a row, `H_k(ω) = Σ_n T(k,n)·e^{−jωn}`,
//! is the same function with the frequency axis mirrored.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transforms::GaussianMatrix;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Default number of frequency samples for response grids.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Peak-error bound used to flag the worst bins of a response comparison.
pub const ERROR_BOUND_DB: f64 = -13.0;

/// Uniform linear or rectangular array. Spacings are in wavelengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    pub n_x: usize,
    pub n_y: usize,
    pub dx: f64,
    pub dy: f64,
}

impl ArrayGeometry {
    pub fn new(n_x: usize, n_y: usize, dx: f64, dy: f64) -> Result<Self> {
        if n_x == 0 || n_y == 0 {
            return Err(Error::InvalidRange("element counts must be at least 1".into()));
        }
        if !(dx > 0.0 && dy > 0.0) {
            return Err(Error::InvalidRange("element spacing must be positive".into()));
        }
        Ok(Self { n_x, n_y, dx, dy })
    }

    pub fn ula(n: usize, dx: f64) -> Result<Self> {
        Self::new(n, 1, dx, dx)
    }

    pub fn ura(n: usize, d: f64) -> Result<Self> {
        Self::new(n, n, d, d)
    }

    pub fn is_linear(&self) -> bool {
        self.n_y == 1
    }
}

/// Per-element directivity multiplying the array factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub enum ElementPattern {
    #[default]
    Isotropic,
    /// Amplitude `cos(θ)^q` for |θ| < 90°, zero beyond.
    CosinePower(f64),
}

impl ElementPattern {
    pub fn gain(self, azimuth_rad: f64) -> f64 {
        match self {
            ElementPattern::Isotropic => 1.0,
            ElementPattern::CosinePower(q) => azimuth_rad.cos().max(0.0).powf(q),
        }
    }
}

/// Meaning of a [`BeamGrid`] axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisKind {
    /// Normalized frequency in radians per sample, `[−π, π)`.
    Omega,
    /// Azimuth in degrees.
    AzimuthDeg,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BeamValues {
    Complex(Vec<Vec<Complex64>>),
    Magnitude(Vec<Vec<f64>>),
    Power(Vec<Vec<f64>>),
}

/// A set of per-bin patterns sampled on a common axis.
#[derive(Clone, Debug, PartialEq)]
pub struct BeamGrid {
    pub axis_kind: AxisKind,
    pub axis: Vec<f64>,
    pub values: BeamValues,
}

impl BeamGrid {
    pub fn new(axis_kind: AxisKind, axis: Vec<f64>, values: BeamValues) -> Result<Self> {
        if axis.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidRange("grid axis must be strictly increasing".into()));
        }
        let lens: Vec<usize> = match &values {
            BeamValues::Complex(v) => v.iter().map(Vec::len).collect(),
            BeamValues::Magnitude(v) | BeamValues::Power(v) => v.iter().map(Vec::len).collect(),
        };
        if let Some(&bad) = lens.iter().find(|&&l| l != axis.len()) {
            return Err(Error::DimensionMismatch {
                context: "beam grid bin length",
                expected: axis.len(),
                found: bad,
            });
        }
        Ok(Self {
            axis_kind,
            axis,
            values,
        })
    }

    pub fn bin_count(&self) -> usize {
        match &self.values {
            BeamValues::Complex(v) => v.len(),
            BeamValues::Magnitude(v) | BeamValues::Power(v) => v.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.axis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis.is_empty()
    }

    /// Linear magnitude of one bin.
    pub fn magnitude(&self, bin: usize) -> Vec<f64> {
        match &self.values {
            BeamValues::Complex(v) => v[bin].iter().map(|z| z.norm()).collect(),
            BeamValues::Magnitude(v) => v[bin].clone(),
            BeamValues::Power(v) => v[bin].iter().map(|p| p.sqrt()).collect(),
        }
    }

    pub fn power(&self, bin: usize) -> Vec<f64> {
        match &self.values {
            BeamValues::Power(v) => v[bin].clone(),
            _ => self.magnitude(bin).iter().map(|m| m * m).collect(),
        }
    }

    /// Pattern in dB. With `normalize` the bin's peak maps to 0 dB.
    pub fn db(&self, bin: usize, normalize: bool) -> Vec<f64> {
        let p = self.power(bin);
        let reference = if normalize {
            p.iter().cloned().fold(0.0, f64::max)
        } else {
            1.0
        };
        p.iter().map(|&x| 10.0 * (x / reference).log10()).collect()
    }

    /// Wide CSV: `angle,bin0_dB,...`, one row per axis sample.
    pub fn to_csv(&self, normalize: bool) -> String {
        let cols: Vec<Vec<f64>> = (0..self.bin_count()).map(|b| self.db(b, normalize)).collect();
        let mut out = String::from(self.axis_label());
        for b in 0..cols.len() {
            let _ = write!(out, ",bin{b}_dB");
        }
        out.push('\n');
        for (i, a) in self.axis.iter().enumerate() {
            let _ = write!(out, "{a}");
            for c in &cols {
                let _ = write!(out, ",{}", c[i]);
            }
            out.push('\n');
        }
        out
    }

    /// Long CSV for polar plots: `bin,angle,dB`.
    pub fn to_long_csv(&self, normalize: bool) -> String {
        let mut out = format!("bin,{},dB\n", self.axis_label());
        for b in 0..self.bin_count() {
            for (a, d) in self.axis.iter().zip(self.db(b, normalize)) {
                let _ = writeln!(out, "{b},{a},{d}");
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let values = match &self.values {
            BeamValues::Complex(v) => serde_json::json!({
                "complex": v.iter().map(|bin| bin.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>()
            }),
            BeamValues::Magnitude(v) => serde_json::json!({ "magnitude": v }),
            BeamValues::Power(v) => serde_json::json!({ "power": v }),
        };
        serde_json::json!({
            "axis_kind": self.axis_kind,
            "axis": self.axis,
            "values": values,
        })
        .to_string()
    }

    /// Reads the layout written by [`BeamGrid::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(rename_all = "snake_case")]
        enum Values {
            Complex(Vec<Vec<[f64; 2]>>),
            Magnitude(Vec<Vec<f64>>),
            Power(Vec<Vec<f64>>),
        }
        #[derive(Deserialize)]
        struct Raw {
            axis_kind: AxisKind,
            axis: Vec<f64>,
            values: Values,
        }
        let raw: Raw = serde_json::from_str(text)?;
        let values = match raw.values {
            Values::Complex(v) => BeamValues::Complex(
                v.into_iter()
                    .map(|bin| bin.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                    .collect(),
            ),
            Values::Magnitude(v) => BeamValues::Magnitude(v),
            Values::Power(v) => BeamValues::Power(v),
        };
        Self::new(raw.axis_kind, raw.axis, values)
    }

    fn axis_label(&self) -> &'static str {
        match self.axis_kind {
            AxisKind::Omega => "omega_rad",
            AxisKind::AzimuthDeg => "azimuth_deg",
        }
    }
}

/// `Σ_n coeffs[n]·e^{−jωn}`.
pub fn filter_response(coeffs: &[Complex64], omega: f64) -> Complex64 {
    let step = Complex64::from_polar(1.0, -omega);
    let mut phasor = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::zero();
    for &c in coeffs {
        acc += c * phasor;
        phasor *= step;
    }
    acc
}

/// Array factor `Σ_n coeffs[n]·e^{+j n ω}` of one transform row.
pub fn array_factor(coeffs: &[Complex64], omega: f64) -> Complex64 {
    filter_response(coeffs, -omega)
}

/// `grid_points` samples of `[−π, π)`.
pub fn omega_grid(grid_points: usize) -> Vec<f64> {
    (0..grid_points)
        .map(|i| -PI + 2.0 * PI * i as f64 / grid_points as f64)
        .collect()
}

fn rows_of(t: &GaussianMatrix) -> Vec<Vec<Complex64>> {
    (0..t.rows()).map(|r| t.row(r)).collect()
}

/// Frequency response `H_k(ω)` of every row of `transform`.
pub fn filter_bank_response(transform: &GaussianMatrix, grid_points: usize) -> Result<BeamGrid> {
    if !transform.is_square() {
        return Err(Error::DimensionMismatch {
            context: "filter bank transform",
            expected: transform.rows(),
            found: transform.cols(),
        });
    }
    if grid_points < 64 {
        return Err(Error::InvalidRange(format!(
            "grid needs at least 64 points, got {grid_points}"
        )));
    }
    let axis = omega_grid(grid_points);
    let values = rows_of(transform)
        .par_iter()
        .map(|row| axis.iter().map(|&w| filter_response(row, w)).collect())
        .collect();
    BeamGrid::new(AxisKind::Omega, axis, BeamValues::Complex(values))
}

/// Largest local maximum outside the main lobe, in dB relative to the peak.
///
/// The main lobe is the region around the global maximum bounded by the
/// first local minima on each side. `circular` treats the samples as one
/// period of a periodic function. Returns `None` when there is no side lobe.
pub fn side_lobe_db(magnitude: &[f64], circular: bool) -> Option<f64> {
    let n = magnitude.len();
    if n < 3 {
        return None;
    }
    let peak_idx = magnitude
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)?;
    let peak = magnitude[peak_idx];
    if peak <= 0.0 {
        return None;
    }
    let at = |i: isize| -> Option<f64> {
        if circular {
            Some(magnitude[i.rem_euclid(n as isize) as usize])
        } else if (0..n as isize).contains(&i) {
            Some(magnitude[i as usize])
        } else {
            None
        }
    };
    let walk = |dir: isize| -> isize {
        let mut i = peak_idx as isize;
        let mut steps = 0;
        while let (Some(cur), Some(next)) = (at(i), at(i + dir)) {
            if next > cur || steps >= n {
                break;
            }
            i += dir;
            steps += 1;
        }
        i
    };
    let (lo, hi) = (walk(-1), walk(1));
    if hi - lo + 1 >= n as isize {
        return None;
    }
    let in_main = |i: isize| -> bool {
        if circular {
            let span = hi - lo;
            (i - lo).rem_euclid(n as isize) <= span
        } else {
            (lo..=hi).contains(&i)
        }
    };
    let mut best: Option<f64> = None;
    for i in 0..n as isize {
        if in_main(i) {
            continue;
        }
        let v = magnitude[i as usize];
        let left = at(i - 1);
        let right = at(i + 1);
        let is_max = left.is_none_or(|l| v >= l) && right.is_none_or(|r| v >= r);
        if is_max {
            best = Some(best.map_or(v, |b: f64| b.max(v)));
        }
    }
    best.map(|b| 20.0 * (b / peak).log10())
}

/// Worst side-lobe level over all bins, in dB.
pub fn max_side_lobe_db(grid: &BeamGrid) -> Option<f64> {
    let circular = grid.axis_kind == AxisKind::Omega;
    (0..grid.bin_count())
        .filter_map(|b| side_lobe_db(&grid.magnitude(b), circular))
        .reduce(f64::max)
}

/// Magnitude-response error between two transforms.
#[derive(Clone, Debug)]
pub struct ErrorSurface {
    /// `| |H_a|/max|H_a| − |H_b|/max|H_b| |` per bin, linear.
    pub grid: BeamGrid,
    /// Per-bin peak of the surface in dB (re 1).
    pub peak_error_db: Vec<f64>,
    /// Bins whose peak error reaches [`ERROR_BOUND_DB`], worst first.
    pub worst_bins: Vec<usize>,
}

/// Compares the peak-normalized magnitude responses of `a` and `b` bin by bin.
pub fn response_error_surface(
    a: &GaussianMatrix,
    b: &GaussianMatrix,
    grid_points: usize,
) -> Result<ErrorSurface> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            context: "response error surface",
            expected: a.rows(),
            found: b.rows(),
        });
    }
    let ra = filter_bank_response(a, grid_points)?;
    let rb = filter_bank_response(b, grid_points)?;
    let normalized = |g: &BeamGrid, bin: usize| {
        let m = g.magnitude(bin);
        let peak = m.iter().cloned().fold(0.0, f64::max);
        if peak > 0.0 {
            m.iter().map(|x| x / peak).collect()
        } else {
            m
        }
    };
    let errors: Vec<Vec<f64>> = (0..ra.bin_count())
        .map(|bin| {
            normalized(&ra, bin)
                .iter()
                .zip(normalized(&rb, bin))
                .map(|(x, y)| (x - y).abs())
                .collect()
        })
        .collect();
    let peak_error_db: Vec<f64> = errors
        .iter()
        .map(|e| 20.0 * e.iter().cloned().fold(0.0, f64::max).log10())
        .collect();
    let mut worst_bins: Vec<usize> = (0..peak_error_db.len())
        .filter(|&b| peak_error_db[b] >= ERROR_BOUND_DB)
        .collect();
    worst_bins.sort_by(|&x, &y| peak_error_db[y].total_cmp(&peak_error_db[x]).then(x.cmp(&y)));
    Ok(ErrorSurface {
        grid: BeamGrid::new(ra.axis_kind, ra.axis, BeamValues::Magnitude(errors))?,
        peak_error_db,
        worst_bins,
    })
}

/// `grid_points` azimuths spanning `[lo, hi]` degrees inclusive.
pub fn azimuth_grid(lo_deg: f64, hi_deg: f64, grid_points: usize) -> Vec<f64> {
    if grid_points == 1 {
        return vec![lo_deg];
    }
    (0..grid_points)
        .map(|i| lo_deg + (hi_deg - lo_deg) * i as f64 / (grid_points - 1) as f64)
        .collect()
}

/// Spatial frequency `2π·d·sin θ` for spacing `d` in wavelengths.
pub fn spatial_frequency(spacing: f64, azimuth_deg: f64) -> f64 {
    2.0 * PI * spacing * azimuth_deg.to_radians().sin()
}

fn check_columns(transform: &GaussianMatrix, elements: usize) -> Result<()> {
    if transform.cols() != elements {
        return Err(Error::DimensionMismatch {
            context: "transform columns vs array elements",
            expected: elements,
            found: transform.cols(),
        });
    }
    Ok(())
}

/// Far-field beam patterns of a ULA with isotropic elements.
pub fn ula_array_factor(
    transform: &GaussianMatrix,
    geometry: &ArrayGeometry,
    azimuth_deg: &[f64],
) -> Result<BeamGrid> {
    ula_array_factor_with(transform, geometry, azimuth_deg, ElementPattern::Isotropic)
}

pub fn ula_array_factor_with(
    transform: &GaussianMatrix,
    geometry: &ArrayGeometry,
    azimuth_deg: &[f64],
    element: ElementPattern,
) -> Result<BeamGrid> {
    if !geometry.is_linear() {
        return Err(Error::InvalidRange("ULA pattern needs a 1-D geometry".into()));
    }
    check_columns(transform, geometry.n_x)?;
    let values = rows_of(transform)
        .par_iter()
        .map(|row| {
            azimuth_deg
                .iter()
                .map(|&az| {
                    let w = spatial_frequency(geometry.dx, az);
                    array_factor(row, w) * element.gain(az.to_radians())
                })
                .collect()
        })
        .collect();
    BeamGrid::new(AxisKind::AzimuthDeg, azimuth_deg.to_vec(), BeamValues::Complex(values))
}

/// Azimuths in `[−90°, 90°]` where bin `bin` of an `n`-point DFT beamformer
/// forms a full-height lobe. More than one entry means grating lobes.
pub fn dft_beam_azimuths(n: usize, bin: usize, dx: f64) -> Vec<f64> {
    let base = bin as f64 / n as f64;
    let reach = (dx + 1.0).ceil() as i64;
    let mut out: Vec<f64> = (-reach..=reach)
        .map(|m| (base + m as f64) / dx)
        .filter(|s| s.abs() <= 1.0)
        .map(|s| s.asin().to_degrees())
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Elevation/azimuth pair with the carrier spatial scale `ω_ct` (radians per
/// wavelength of spacing; `2π` for spacings in wavelengths).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteeringContext {
    pub elevation_deg: f64,
    pub azimuth_deg: f64,
    pub omega_ct: f64,
}

impl SteeringContext {
    pub fn new(elevation_deg: f64, azimuth_deg: f64) -> Result<Self> {
        if !(0.0..=90.0).contains(&elevation_deg) {
            return Err(Error::InvalidRange(format!("elevation {elevation_deg}° outside [0, 90]")));
        }
        if !(azimuth_deg > -180.0 && azimuth_deg <= 180.0) {
            return Err(Error::InvalidRange(format!("azimuth {azimuth_deg}° outside (−180, 180]")));
        }
        Ok(Self {
            elevation_deg,
            azimuth_deg,
            omega_ct: 2.0 * PI,
        })
    }

    /// `(ω_x, ω_y) = ω_ct·sinψ·(dx·cosφ, dy·sinφ)`.
    pub fn spatial_frequencies(&self, dx: f64, dy: f64) -> (f64, f64) {
        let s = self.elevation_deg.to_radians().sin();
        let phi = self.azimuth_deg.to_radians();
        (self.omega_ct * s * phi.cos() * dx, self.omega_ct * s * phi.sin() * dy)
    }

    /// Nearest DFT bin pair `(k, l)` for an `n × n` array.
    pub fn nearest_bins(&self, n: usize, dx: f64, dy: f64) -> (usize, usize) {
        let (wx, wy) = self.spatial_frequencies(dx, dy);
        let bin = |w: f64| ((w / (2.0 * PI) * n as f64).round() as i64).rem_euclid(n as i64) as usize;
        (bin(wx), bin(wy))
    }
}

/// 2-D pattern of one URA beam on an elevation × azimuth grid.
#[derive(Clone, Debug)]
pub struct Beam2d {
    pub k: usize,
    pub l: usize,
    pub elevation_deg: Vec<f64>,
    pub azimuth_deg: Vec<f64>,
    /// Row-major `[elevation][azimuth]`, product of two 1-D array factors.
    pub separable: Vec<Complex64>,
    /// Same grid from the full double sum over both element indices.
    pub direct: Vec<Complex64>,
}

impl Beam2d {
    /// `max|separable − direct| / max|direct|`.
    pub fn max_relative_difference(&self) -> f64 {
        relative_difference(&self.separable, &self.direct)
    }

    pub fn at(&self, elevation_idx: usize, azimuth_idx: usize) -> Complex64 {
        self.separable[elevation_idx * self.azimuth_deg.len() + azimuth_idx]
    }

    /// Long CSV `elevation_deg,azimuth_deg,dB` normalized to the peak.
    pub fn to_csv(&self) -> String {
        let peak = self.separable.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
        let mut out = String::from("elevation_deg,azimuth_deg,dB\n");
        for (i, e) in self.elevation_deg.iter().enumerate() {
            for (j, a) in self.azimuth_deg.iter().enumerate() {
                let p = self.at(i, j).norm_sqr();
                let _ = writeln!(out, "{e},{a},{}", 10.0 * (p / peak).log10());
            }
        }
        out
    }
}

/// `max|a − b| / max|b|` over paired samples.
pub fn relative_difference(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

fn check_bin(bin: usize, size: usize) -> Result<()> {
    if bin >= size {
        return Err(Error::BinOutOfRange { bin, size });
    }
    Ok(())
}

/// Beam `(k, l)` of an `N × N` URA that applies `transform` along both axes.
///
/// Evaluates the separable product `AF_k(ω_x)·AF_l(ω_y)` and, independently,
/// the double sum `Σ_m Σ_n T(k,m)·T(l,n)·e^{j(ω_x m + ω_y n)}`.
pub fn ura_beam_2d(
    transform: &GaussianMatrix,
    geometry: &ArrayGeometry,
    k: usize,
    l: usize,
    elevation_deg: &[f64],
    azimuth_deg: &[f64],
) -> Result<Beam2d> {
    check_columns(transform, geometry.n_x)?;
    check_columns(transform, geometry.n_y)?;
    check_bin(k, transform.rows())?;
    check_bin(l, transform.rows())?;
    let row_k = transform.row(k);
    let row_l = transform.row(l);
    let n = row_k.len();
    let outer: Vec<Complex64> = row_k
        .iter()
        .flat_map(|a| row_l.iter().map(move |b| a * b))
        .collect();

    let points: Vec<(f64, f64)> = elevation_deg
        .iter()
        .flat_map(|&e| azimuth_deg.iter().map(move |&a| (e, a)))
        .collect();
    let spatial = |(e, a): (f64, f64)| {
        let s = e.to_radians().sin();
        let phi = a.to_radians();
        (
            2.0 * PI * geometry.dx * s * phi.cos(),
            2.0 * PI * geometry.dy * s * phi.sin(),
        )
    };

    let separable = points
        .par_iter()
        .map(|&p| {
            let (wx, wy) = spatial(p);
            array_factor(&row_k, wx) * array_factor(&row_l, wy)
        })
        .collect();
    let direct = points
        .par_iter()
        .map(|&p| {
            let (wx, wy) = spatial(p);
            let px: Vec<Complex64> = (0..n).map(|m| Complex64::from_polar(1.0, wx * m as f64)).collect();
            let py: Vec<Complex64> = (0..n).map(|m| Complex64::from_polar(1.0, wy * m as f64)).collect();
            let mut acc = Complex64::zero();
            for m in 0..n {
                for q in 0..n {
                    acc += outer[m * n + q] * (px[m] * py[q]);
                }
            }
            acc
        })
        .collect();
    Ok(Beam2d {
        k,
        l,
        elevation_deg: elevation_deg.to_vec(),
        azimuth_deg: azimuth_deg.to_vec(),
        separable,
        direct,
    })
}

/// Spatial frequency in `[−π, π)` where `|AF(ω)|` of one row peaks.
pub fn peak_spatial_frequency(coeffs: &[Complex64]) -> f64 {
    let coarse = omega_grid(4096);
    let mag = |w: f64| array_factor(coeffs, w).norm();
    let mut best = coarse[0];
    for &w in &coarse {
        if mag(w) > mag(best) {
            best = w;
        }
    }
    // golden-section refinement inside the neighbouring cells
    let h = 2.0 * PI / 4096.0;
    let (mut a, mut b) = (best - h, best + h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if mag(c) > mag(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let w = 0.5 * (a + b);
    (w + PI).rem_euclid(2.0 * PI) - PI
}

/// Elevation and azimuth (degrees) where beam `(k, l)` peaks, found from the
/// 1-D array-factor peaks. `None` if the peak lies outside the visible region.
pub fn beam_direction(
    transform: &GaussianMatrix,
    geometry: &ArrayGeometry,
    k: usize,
    l: usize,
) -> Result<Option<(f64, f64)>> {
    check_bin(k, transform.rows())?;
    check_bin(l, transform.rows())?;
    let u = peak_spatial_frequency(&transform.row(k)) / (2.0 * PI * geometry.dx);
    let v = peak_spatial_frequency(&transform.row(l)) / (2.0 * PI * geometry.dy);
    let s = u.hypot(v);
    if s > 1.0 {
        return Ok(None);
    }
    Ok(Some((s.asin().to_degrees(), v.atan2(u).to_degrees())))
}

/// Linear interpolation of complex samples at `x` on a strictly increasing axis.
fn interpolate(axis: &[f64], values: &[Complex64], x: f64) -> Option<Complex64> {
    let i = axis.partition_point(|&a| a < x);
    if i < axis.len() && axis[i] == x {
        return Some(values[i]);
    }
    if i == 0 || i == axis.len() {
        return None;
    }
    let t = (x - axis[i - 1]) / (axis[i] - axis[i - 1]);
    Some(values[i - 1] * (1.0 - t) + values[i] * t)
}

/// 2-D beam `(k, l)` with a measured (or simulated) 1-D pattern standing in
/// for the x-axis array factor of bin `k`.
///
/// `measured` must be an azimuth grid. Complex patterns are used as is;
/// magnitude or power patterns contribute their amplitude. Each 2-D point
/// looks the measured pattern up at `asin(sinψ·cosφ)`.
#[allow(clippy::too_many_arguments)]
pub fn compose_2d_from_measured(
    measured: &BeamGrid,
    k: usize,
    transform: &GaussianMatrix,
    l: usize,
    geometry: &ArrayGeometry,
    elevation_deg: &[f64],
    azimuth_deg: &[f64],
) -> Result<Vec<Complex64>> {
    if measured.axis_kind != AxisKind::AzimuthDeg {
        return Err(Error::InvalidRange("measured pattern must be on an azimuth axis".into()));
    }
    check_bin(k, measured.bin_count())?;
    check_bin(l, transform.rows())?;
    let column: Vec<Complex64> = match &measured.values {
        BeamValues::Complex(v) => v[k].clone(),
        _ => measured.magnitude(k).iter().map(|&m| Complex64::new(m, 0.0)).collect(),
    };
    let row_l = transform.row(l);
    let mut out = Vec::with_capacity(elevation_deg.len() * azimuth_deg.len());
    for &e in elevation_deg {
        let s = e.to_radians().sin();
        for &a in azimuth_deg {
            let phi = a.to_radians();
            let theta = (s * phi.cos()).clamp(-1.0, 1.0).asin().to_degrees();
            let x = interpolate(&measured.axis, &column, theta).ok_or_else(|| {
                Error::InvalidRange(format!("measured pattern does not cover {theta:.3}°"))
            })?;
            let wy = 2.0 * PI * geometry.dy * s * phi.sin();
            out.push(x * array_factor(&row_l, wy));
        }
    }
    Ok(out)
}

/// Element phases (radians, element 0 as reference) of a narrowband source.
///
/// `range_m = None` is a plane wave: `n·ω_x`. A finite range places a point
/// source at that distance from the array centre and uses the exact
/// spherical path difference `−(2π/λ)·(d_n − d_0)`.
pub fn element_phases(
    n_elements: usize,
    dx: f64,
    azimuth_deg: f64,
    range_m: Option<f64>,
    wavelength_m: f64,
) -> Vec<f64> {
    match range_m {
        None => {
            let w = spatial_frequency(dx, azimuth_deg);
            (0..n_elements).map(|n| n as f64 * w).collect()
        }
        Some(r) => {
            let th = azimuth_deg.to_radians();
            let (sx, sy) = (r * th.sin(), r * th.cos());
            let centre = (n_elements as f64 - 1.0) / 2.0;
            let dist: Vec<f64> = (0..n_elements)
                .map(|n| {
                    let x = (n as f64 - centre) * dx * wavelength_m;
                    (sx - x).hypot(sy)
                })
                .collect();
            let k = 2.0 * PI / wavelength_m;
            dist.iter().map(|d| -k * (d - dist[0])).collect()
        }
    }
}

/// ULA beam patterns for a point source at finite range.
pub fn near_field_pattern(
    transform: &GaussianMatrix,
    geometry: &ArrayGeometry,
    source_range_m: f64,
    frequency_hz: f64,
    azimuth_deg: &[f64],
) -> Result<BeamGrid> {
    if !(source_range_m.is_finite() && source_range_m > 0.0) {
        return Err(Error::InvalidRange("source range must be positive".into()));
    }
    if !(frequency_hz.is_finite() && frequency_hz > 0.0) {
        return Err(Error::InvalidRange("frequency must be positive".into()));
    }
    if !geometry.is_linear() {
        return Err(Error::InvalidRange("near-field pattern needs a 1-D geometry".into()));
    }
    check_columns(transform, geometry.n_x)?;
    let lambda = SPEED_OF_LIGHT / frequency_hz;
    let fields: Vec<Vec<Complex64>> = azimuth_deg
        .iter()
        .map(|&az| {
            element_phases(geometry.n_x, geometry.dx, az, Some(source_range_m), lambda)
                .into_iter()
                .map(|p| Complex64::from_polar(1.0, p))
                .collect()
        })
        .collect();
    let values = rows_of(transform)
        .par_iter()
        .map(|row| {
            fields
                .iter()
                .map(|x| row.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    BeamGrid::new(AxisKind::AzimuthDeg, azimuth_deg.to_vec(), BeamValues::Complex(values))
}

/// Largest |dB difference| between two peak-normalized pattern sets over the
/// region where `reference` is within `main_lobe_db` of its bin's peak.
pub fn main_lobe_deviation_db(pattern: &BeamGrid, reference: &BeamGrid, main_lobe_db: f64) -> f64 {
    (0..reference.bin_count())
        .map(|b| {
            let r = reference.db(b, true);
            let p = pattern.db(b, true);
            r.iter()
                .zip(&p)
                .filter(|(r, _)| **r >= main_lobe_db)
                .map(|(r, p)| (r - p).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Real-operation cost of conventional (phase-shift) digital beamforming.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeamComplexity {
    pub multiplications: usize,
    pub additions: usize,
}

/// Cost of one beam and of `n` beams from an `n`-element array:
/// `(3N, 7N − 2)` and `(3N², 7N² − 2N)`.
pub fn single_beam_complexity(n: usize) -> (BeamComplexity, BeamComplexity) {
    let one = BeamComplexity {
        multiplications: 3 * n,
        additions: 7 * n - 2,
    };
    let all = BeamComplexity {
        multiplications: 3 * n * n,
        additions: 7 * n * n - 2 * n,
    };
    (one, all)
}
