//! Dense transform matrices: the exact DFT, the 32-point approximate DFT and
//! the scaled-rounding family it is drawn from.
//!
//! Approximation matrices are stored with exact Gaussian-rational entries so
//! products of sparse stages can be compared with zero tolerance. DFT
//! matrices carry irrational twiddles and are stored as `f64` pairs; any
//! operation mixing the two kinds is evaluated in double precision.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::{Complex, Complex64};
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tables;

/// Complex number with exact rational real and imaginary parts.
pub type Gaussian = Complex<Rational64>;

/// Size of the approximate transform.
pub const ADFT_SIZE: usize = 32;

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Exact(Vec<Gaussian>),
    Irrational(Vec<Complex64>),
}

/// Dense row-major complex matrix.
///
/// Indices are 0-based throughout the API.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

pub(crate) fn gaussian(re: i64, im: i64) -> Gaussian {
    Complex::new(Rational64::from_integer(re), Rational64::from_integer(im))
}

fn to_c64(z: &Gaussian) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

impl GaussianMatrix {
    pub fn from_exact(rows: usize, cols: usize, entries: Vec<Gaussian>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries: Entries::Exact(entries),
        })
    }

    pub fn from_complex(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries: Entries::Irrational(entries),
        })
    }

    pub fn from_fn_exact(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Gaussian) -> Self {
        let entries = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Self {
            rows,
            cols,
            entries: Entries::Exact(entries),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn_exact(n, n, |r, c| if r == c { Gaussian::one() } else { Gaussian::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn_exact(rows, cols, |_, _| Gaussian::zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `true` when every entry is held as an exact rational.
    pub fn is_exact(&self) -> bool {
        matches!(self.entries, Entries::Exact(_))
    }

    /// Entry at `(row, col)` in double precision.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        let i = row * self.cols + col;
        match &self.entries {
            Entries::Exact(v) => to_c64(&v[i]),
            Entries::Irrational(v) => v[i],
        }
    }

    /// Exact entry, or `None` for irrational matrices.
    pub fn exact(&self, row: usize, col: usize) -> Option<Gaussian> {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        match &self.entries {
            Entries::Exact(v) => Some(v[row * self.cols + col]),
            Entries::Irrational(_) => None,
        }
    }

    /// All entries in row-major order, in double precision.
    pub fn to_complex(&self) -> Vec<Complex64> {
        match &self.entries {
            Entries::Exact(v) => v.iter().map(to_c64).collect(),
            Entries::Irrational(v) => v.clone(),
        }
    }

    pub fn row(&self, row: usize) -> Vec<Complex64> {
        (0..self.cols).map(|c| self.get(row, c)).collect()
    }

    /// Matrix product `self · rhs`. Exact when both operands are exact.
    pub fn matmul(&self, rhs: &GaussianMatrix) -> Result<GaussianMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matmul",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let (n, m, p) = (self.rows, self.cols, rhs.cols);
        match (&self.entries, &rhs.entries) {
            (Entries::Exact(a), Entries::Exact(b)) => {
                let mut out = vec![Gaussian::zero(); n * p];
                for i in 0..n {
                    for k in 0..m {
                        let aik = a[i * m + k];
                        if aik.is_zero() {
                            continue;
                        }
                        for j in 0..p {
                            let bkj = b[k * p + j];
                            if !bkj.is_zero() {
                                out[i * p + j] += aik * bkj;
                            }
                        }
                    }
                }
                GaussianMatrix::from_exact(n, p, out)
            }
            _ => {
                let a = self.to_complex();
                let b = rhs.to_complex();
                let mut out = vec![Complex64::zero(); n * p];
                for i in 0..n {
                    for k in 0..m {
                        let aik = a[i * m + k];
                        for j in 0..p {
                            out[i * p + j] += aik * b[k * p + j];
                        }
                    }
                }
                GaussianMatrix::from_complex(n, p, out)
            }
        }
    }

    /// Entrywise difference `self − rhs`.
    pub fn sub(&self, rhs: &GaussianMatrix) -> Result<GaussianMatrix> {
        self.check_same_shape(rhs, "sub")?;
        match (&self.entries, &rhs.entries) {
            (Entries::Exact(a), Entries::Exact(b)) => GaussianMatrix::from_exact(
                self.rows,
                self.cols,
                a.iter().zip(b).map(|(x, y)| x - y).collect(),
            ),
            _ => GaussianMatrix::from_complex(
                self.rows,
                self.cols,
                self.to_complex()
                    .into_iter()
                    .zip(rhs.to_complex())
                    .map(|(x, y)| x - y)
                    .collect(),
            ),
        }
    }

    pub fn conj_transpose(&self) -> GaussianMatrix {
        let (r, c) = (self.rows, self.cols);
        match &self.entries {
            Entries::Exact(v) => GaussianMatrix::from_fn_exact(c, r, |i, j| v[j * c + i].conj()),
            Entries::Irrational(v) => {
                let out = (0..r * c).map(|idx| v[(idx % r) * c + idx / r].conj()).collect();
                GaussianMatrix {
                    rows: c,
                    cols: r,
                    entries: Entries::Irrational(out),
                }
            }
        }
    }

    /// Applies `f` to every entry, producing a double-precision matrix.
    pub fn map_complex(&self, f: impl Fn(Complex64) -> Complex64) -> GaussianMatrix {
        GaussianMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: Entries::Irrational(self.to_complex().into_iter().map(f).collect()),
        }
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.to_complex().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sqr().sqrt()
    }

    /// First `(row, col)` where the two matrices differ. Exact matrices are
    /// compared exactly, mixed pairs by `f64` equality.
    pub fn first_difference(&self, other: &GaussianMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        let idx = match (&self.entries, &other.entries) {
            (Entries::Exact(a), Entries::Exact(b)) => a.iter().zip(b).position(|(x, y)| x != y),
            _ => self
                .to_complex()
                .iter()
                .zip(other.to_complex().iter())
                .position(|(x, y)| x != y),
        };
        idx.map(|i| (i / self.cols, i % self.cols))
    }

    /// `true` when every entry is exact with real and imaginary parts drawn from `allowed`.
    pub fn parts_within(&self, allowed: &[i64]) -> bool {
        let ok = |q: &Rational64| q.is_integer() && allowed.contains(&q.to_integer());
        match &self.entries {
            Entries::Exact(v) => v.iter().all(|z| ok(&z.re) && ok(&z.im)),
            Entries::Irrational(_) => false,
        }
    }

    fn check_same_shape(&self, rhs: &GaussianMatrix, context: &'static str) -> Result<()> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.rows,
                found: rhs.rows,
            });
        }
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.cols,
                found: rhs.cols,
            });
        }
        Ok(())
    }

    /// JSON form `{"rows":R,"cols":C,"entries":[[re,im],...]}` (row-major).
    pub fn to_json(&self) -> String {
        let doc = MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_complex().iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string(&doc).expect("matrix serialization is infallible")
    }

    /// Parses the JSON form. Matrices whose parts are all multiples of 1/2
    /// are restored as exact; anything else is kept in double precision.
    pub fn from_json(text: &str) -> Result<GaussianMatrix> {
        let doc: MatrixJson = serde_json::from_str(text)?;
        let as_half = |x: f64| {
            let twice = x * 2.0;
            (twice.fract() == 0.0 && twice.abs() < 1e15).then(|| Rational64::new(twice as i64, 2))
        };
        let exact: Option<Vec<Gaussian>> = doc
            .entries
            .iter()
            .map(|[re, im]| Some(Complex::new(as_half(*re)?, as_half(*im)?)))
            .collect();
        match exact {
            Some(v) => GaussianMatrix::from_exact(doc.rows, doc.cols, v),
            None => GaussianMatrix::from_complex(
                doc.rows,
                doc.cols,
                doc.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
            ),
        }
    }

    /// Human-readable CSV with `re+imj` cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|z| format_cell(*z)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

fn format_cell(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", z.re, sign, z.im.abs())
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

/// `n`-point DFT matrix with entries `exp(−j2πkn/N)`.
///
/// Twiddles on the axes (multiples of a quarter turn) are set exactly.
pub fn dft_matrix(n: usize) -> GaussianMatrix {
    let entries = (0..n * n)
        .map(|i| twiddle((i / n) * (i % n), n))
        .collect();
    GaussianMatrix {
        rows: n,
        cols: n,
        entries: Entries::Irrational(entries),
    }
}

/// `exp(−j2π·k/n)` with exact values on the real and imaginary axes.
pub(crate) fn twiddle(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        }
    } else {
        Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64)
    }
}

/// The 32-point approximate DFT `[[A0, A1], [A2, A3]]`.
pub fn adft32_matrix() -> GaussianMatrix {
    let blocks = [
        tables::ADFT32_BLOCK_0,
        tables::ADFT32_BLOCK_1,
        tables::ADFT32_BLOCK_2,
        tables::ADFT32_BLOCK_3,
    ]
    .map(|b| parse_block(b).expect("built-in ADFT table is well formed"));
    let half = ADFT_SIZE / 2;
    GaussianMatrix::from_fn_exact(ADFT_SIZE, ADFT_SIZE, |r, c| {
        let block = &blocks[(r / half) * 2 + c / half];
        block[(r % half) * half + c % half]
    })
}

fn parse_block(text: &str) -> Result<Vec<Gaussian>> {
    let v: Vec<Gaussian> = text
        .split_whitespace()
        .map(parse_gaussian)
        .collect::<Result<_>>()?;
    if v.len() != (ADFT_SIZE / 2).pow(2) {
        return Err(Error::Parse(format!("block has {} entries", v.len())));
    }
    Ok(v)
}

/// Parses integer Gaussian literals: `1`, `-1`, `1i`, `-1i`, `1-1i`, `-1+1i`.
pub fn parse_gaussian(token: &str) -> Result<Gaussian> {
    let bad = || Error::Parse(format!("bad Gaussian literal {token:?}"));
    let int = |s: &str| s.parse::<i64>().map_err(|_| bad());
    let Some(body) = token.strip_suffix('i') else {
        return Ok(gaussian(int(token)?, 0));
    };
    // split at the last sign that isn't the leading one
    match body.get(1..).and_then(|t| t.rfind(['+', '-'])).map(|p| p + 1) {
        Some(split) => Ok(gaussian(int(&body[..split])?, int(&body[split..])?)),
        None => {
            let im = match body {
                "" | "+" => 1,
                "-" => -1,
                _ => int(body)?,
            };
            Ok(gaussian(0, im))
        }
    }
}

/// Direct `O(N²)` product `m · x`.
pub fn apply_dense(m: &GaussianMatrix, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if m.cols() != x.len() {
        return Err(Error::DimensionMismatch {
            context: "apply_dense",
            expected: m.cols(),
            found: x.len(),
        });
    }
    let entries = m.to_complex();
    Ok(entries
        .chunks(m.cols())
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect())
}

/// `round(β·F₃₂)`, rounding real and imaginary parts half away from zero.
pub fn round_scaled_dft(beta: f64) -> GaussianMatrix {
    let f = dft_matrix(ADFT_SIZE);
    GaussianMatrix::from_fn_exact(ADFT_SIZE, ADFT_SIZE, |r, c| {
        let z = f.get(r, c) * beta;
        gaussian(z.re.round() as i64, z.im.round() as i64)
    })
}
