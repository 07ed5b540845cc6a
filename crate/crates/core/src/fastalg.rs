//! Sparse multi-stage factorization of the 32-point approximate DFT.
//!
//! Each stage is a list of `(row, col, coeff)` triples with coefficients in
//! `{+1, −1, +j, −j}`, so applying a stage needs only additions, negations
//! and real/imaginary swaps. Stages apply first to last; the dense
//! equivalent is `W8 · W7 · … · W1`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tables;
use crate::transforms::{adft32_matrix, apply_dense, gaussian, Gaussian, GaussianMatrix, ADFT_SIZE};

/// Trivial coefficient of a sparse stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    PlusOne,
    MinusOne,
    PlusJ,
    MinusJ,
}

impl Coeff {
    /// `coeff · z` using only negation and swaps.
    #[inline]
    pub fn apply(self, z: Complex64) -> Complex64 {
        match self {
            Coeff::PlusOne => z,
            Coeff::MinusOne => -z,
            Coeff::PlusJ => Complex64::new(-z.im, z.re),
            Coeff::MinusJ => Complex64::new(z.im, -z.re),
        }
    }

    pub fn negated(self) -> Coeff {
        match self {
            Coeff::PlusOne => Coeff::MinusOne,
            Coeff::MinusOne => Coeff::PlusOne,
            Coeff::PlusJ => Coeff::MinusJ,
            Coeff::MinusJ => Coeff::PlusJ,
        }
    }

    pub fn to_gaussian(self) -> Gaussian {
        match self {
            Coeff::PlusOne => gaussian(1, 0),
            Coeff::MinusOne => gaussian(-1, 0),
            Coeff::PlusJ => gaussian(0, 1),
            Coeff::MinusJ => gaussian(0, -1),
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Coeff::PlusOne | Coeff::MinusOne)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Coeff::PlusOne => "+1",
            Coeff::MinusOne => "-1",
            Coeff::PlusJ => "+j",
            Coeff::MinusJ => "-j",
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "1" => Ok(Coeff::PlusOne),
            "-1" => Ok(Coeff::MinusOne),
            "+j" | "j" => Ok(Coeff::PlusJ),
            "-j" => Ok(Coeff::MinusJ),
            _ => Err(Error::Parse(format!("unknown coefficient {s:?}"))),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One non-zero entry of a sparse stage (0-based indices).
pub type Triple = (usize, usize, Coeff);

/// A sparse `size × size` factor.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseStage {
    size: usize,
    triples: Vec<Triple>,
}

impl SparseStage {
    /// Validates bounds, rejects duplicate positions and all-zero rows.
    pub fn new(size: usize, triples: Vec<Triple>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(triples.len());
        let mut row_used = vec![false; size];
        for &(r, c, _) in &triples {
            if r >= size || c >= size {
                return Err(Error::InvalidStage(format!(
                    "entry ({r}, {c}) outside a {size}×{size} stage"
                )));
            }
            if !seen.insert((r, c)) {
                return Err(Error::InvalidStage(format!("duplicate entry at ({r}, {c})")));
            }
            row_used[r] = true;
        }
        if let Some(r) = row_used.iter().position(|used| !used) {
            return Err(Error::InvalidStage(format!("row {r} has no entries")));
        }
        Ok(Self { size, triples })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            size,
            triples: (0..size).map(|i| (i, i, Coeff::PlusOne)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn contains(&self, row: usize, col: usize, coeff: Coeff) -> bool {
        self.triples.contains(&(row, col, coeff))
    }

    pub fn to_matrix(&self) -> GaussianMatrix {
        let mut m = vec![Gaussian::zero(); self.size * self.size];
        for &(r, c, k) in &self.triples {
            m[r * self.size + c] = k.to_gaussian();
        }
        GaussianMatrix::from_exact(self.size, self.size, m).expect("square by construction")
    }

    fn apply_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.fill(Complex64::zero());
        for &(r, c, k) in &self.triples {
            y[r] += k.apply(x[c]);
        }
    }
}

/// Ordered product of sparse stages, first stage applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizedTransform {
    stages: Vec<SparseStage>,
}

impl FactorizedTransform {
    pub fn new(stages: Vec<SparseStage>) -> Result<Self> {
        let Some(first) = stages.first() else {
            return Err(Error::InvalidStage("factorization has no stages".into()));
        };
        let size = first.size;
        if let Some(bad) = stages.iter().find(|s| s.size != size) {
            return Err(Error::DimensionMismatch {
                context: "factorization stage size",
                expected: size,
                found: bad.size,
            });
        }
        Ok(Self { stages })
    }

    pub fn stages(&self) -> &[SparseStage] {
        &self.stages
    }

    pub fn size(&self) -> usize {
        self.stages[0].size
    }

    /// Copy with the coefficient of one triple negated. `stage` is 0-based.
    pub fn with_flipped_sign(&self, stage: usize, triple: usize) -> Result<Self> {
        let mut out = self.clone();
        let st = out
            .stages
            .get_mut(stage)
            .ok_or_else(|| Error::InvalidStage(format!("no stage {stage}")))?;
        let t = st
            .triples
            .get_mut(triple)
            .ok_or_else(|| Error::InvalidStage(format!("stage {stage} has no triple {triple}")))?;
        t.2 = t.2.negated();
        Ok(out)
    }

    /// JSON form `{"stages":[{"triples":[[r,c,"+1"],...]},...]}`, 0-based.
    pub fn to_json(&self) -> String {
        let doc = FactorizationJson {
            stages: self
                .stages
                .iter()
                .map(|s| StageJson {
                    triples: s.triples.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("factorization serialization is infallible")
    }

    /// Parses the JSON form. Every stage must be square with the size
    /// implied by its largest index, and all stages must share one size.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FactorizationJson = serde_json::from_str(text)?;
        let size = doc
            .stages
            .iter()
            .flat_map(|s| s.triples.iter())
            .map(|&(r, c, _)| r.max(c) + 1)
            .max()
            .unwrap_or(0);
        let stages = doc
            .stages
            .into_iter()
            .map(|s| SparseStage::new(size, s.triples))
            .collect::<Result<Vec<_>>>()?;
        Self::new(stages)
    }

    /// Parses the 1-based audit layout, one line per stage and coefficient:
    ///
    /// ```text
    /// W1 +1: (1,1), (1,17), (2,2)
    /// W1 -1: (10,10), (11,11)
    /// ```
    pub fn from_table_text(size: usize, text: &str) -> Result<Self> {
        let mut stages: Vec<Vec<Triple>> = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("missing ':' in {line:?}")))?;
            let mut head = head.split_whitespace();
            let stage: usize = head
                .next()
                .and_then(|w| w.strip_prefix('W'))
                .and_then(|n| n.parse().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Parse(format!("bad stage label in {line:?}")))?;
            let coeff: Coeff = head
                .next()
                .ok_or_else(|| Error::Parse(format!("missing coefficient in {line:?}")))?
                .parse()?;
            if stages.len() < stage {
                stages.resize_with(stage, Vec::new);
            }
            for pair in body.split(')').map(str::trim).filter(|p| !p.is_empty()) {
                let pair = pair.trim_start_matches(',').trim().trim_start_matches('(');
                let (r, c) = pair
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad index pair {pair:?}")))?;
                let parse = |s: &str| -> Result<usize> {
                    s.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| Error::Parse(format!("bad 1-based index {s:?}")))
                };
                stages[stage - 1].push((parse(r)? - 1, parse(c)? - 1, coeff));
            }
        }
        let stages = stages
            .into_iter()
            .map(|t| SparseStage::new(size, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(stages)
    }
}

#[derive(Serialize, Deserialize)]
struct FactorizationJson {
    stages: Vec<StageJson>,
}

#[derive(Serialize, Deserialize)]
struct StageJson {
    triples: Vec<Triple>,
}

/// The eight-stage factorization of [`adft32_matrix`].
pub fn builtin_adft32_factorization() -> FactorizedTransform {
    FactorizedTransform::from_table_text(ADFT_SIZE, tables::ADFT32_STAGES_TABLE)
        .expect("built-in stage table is well formed")
}

/// Exact dense product `W_last · … · W_first`.
pub fn stage_product(f: &FactorizedTransform) -> Result<GaussianMatrix> {
    let mut acc = GaussianMatrix::identity(f.size());
    for stage in &f.stages {
        acc = stage.to_matrix().matmul(&acc)?;
    }
    Ok(acc)
}

/// Applies the stages in order to `x`.
pub fn apply_fast(f: &FactorizedTransform, x: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = f.size();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            context: "apply_fast",
            expected: n,
            found: x.len(),
        });
    }
    let mut cur = x.to_vec();
    let mut next = vec![Complex64::zero(); n];
    for stage in &f.stages {
        stage.apply_into(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(cur)
}

/// Number of `vectors` seeded random inputs on which `apply_fast(f, ·)`
/// differs from the dense approximate DFT.
///
/// Inputs have 20 fractional bits and magnitude ≤ 1, so every partial sum in
/// either path is exact in double precision and agreement is bitwise.
pub fn equivalence_mismatches(f: &FactorizedTransform, vectors: usize, seed: u64) -> Result<usize> {
    let dense = adft32_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = (1u64 << 20) as f64;
    let mut part = move || rng.random_range(-(1i64 << 20)..=(1i64 << 20)) as f64 / scale;
    let mut mismatches = 0;
    for _ in 0..vectors {
        let x: Vec<Complex64> = (0..f.size()).map(|_| Complex64::new(part(), part())).collect();
        if apply_fast(f, &x)? != apply_dense(&dense, &x)? {
            mismatches += 1;
        }
    }
    Ok(mismatches)
}

/// Whether the input signal is complex (I/Q) or real-valued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Complex,
    Real,
}

/// Real-operation counts of a transform.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCountReport {
    pub per_stage_real_additions: Vec<usize>,
    pub total_real_additions: usize,
    pub real_multiplications: usize,
}

impl OpCountReport {
    fn from_stages(stages: Vec<(usize, usize)>) -> Self {
        let per_stage_real_additions: Vec<usize> = stages.iter().map(|s| s.0).collect();
        Self {
            total_real_additions: per_stage_real_additions.iter().sum(),
            per_stage_real_additions,
            real_multiplications: stages.iter().map(|s| s.1).sum(),
        }
    }
}

/// Which parts of a signal value can be non-zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Support {
    re: bool,
    im: bool,
}

impl Support {
    fn of(kind: InputKind) -> Self {
        Support {
            re: true,
            im: kind == InputKind::Complex,
        }
    }
}

/// Accumulates the cost of one output row. Every non-zero coefficient is
/// split into a real term `a` and an imaginary term `jb`. Each term feeds the
/// output's real and/or imaginary part depending on the input support;
/// combining `t` contributions into one part costs `t − 1` real additions.
/// Coefficient parts outside `{0, ±1}` cost one real multiplication per
/// supported input part.
#[derive(Default)]
struct RowCost {
    re_terms: usize,
    im_terms: usize,
    mults: usize,
}

impl RowCost {
    fn add_term(&mut self, coeff: Gaussian, x: Support) {
        let trivial = |q: &Rational64| q.is_zero() || q.abs().is_one();
        let parts_in = usize::from(x.re) + usize::from(x.im);
        if !coeff.re.is_zero() {
            // a·(xr + j xi): real part from xr, imaginary from xi
            self.re_terms += usize::from(x.re);
            self.im_terms += usize::from(x.im);
            if !trivial(&coeff.re) {
                self.mults += parts_in;
            }
        }
        if !coeff.im.is_zero() {
            // jb·(xr + j xi) = −b xi + j b xr
            self.re_terms += usize::from(x.im);
            self.im_terms += usize::from(x.re);
            if !trivial(&coeff.im) {
                self.mults += parts_in;
            }
        }
    }

    fn additions(&self) -> usize {
        self.re_terms.saturating_sub(1) + self.im_terms.saturating_sub(1)
    }

    fn support(&self) -> Support {
        Support {
            re: self.re_terms > 0,
            im: self.im_terms > 0,
        }
    }
}

/// Cost of `out = m · x` for input supports `input`; returns
/// `(additions, multiplications, output supports)`.
fn matrix_cost(
    rows: usize,
    entries: impl Iterator<Item = (usize, usize, Gaussian)>,
    input: &[Support],
) -> (usize, usize, Vec<Support>) {
    let mut costs: Vec<RowCost> = (0..rows).map(|_| RowCost::default()).collect();
    for (r, c, k) in entries {
        costs[r].add_term(k, input[c]);
    }
    let adds = costs.iter().map(RowCost::additions).sum();
    let mults = costs.iter().map(|c| c.mults).sum();
    (adds, mults, costs.iter().map(RowCost::support).collect())
}

/// Real additions and multiplications of [`apply_fast`], stage by stage.
///
/// For complex input a row with `z` trivial coefficients costs `2(z − 1)`
/// additions; `±j` costs the same as `±1`.
pub fn count_operations(f: &FactorizedTransform, input_kind: InputKind) -> OpCountReport {
    let mut support = vec![Support::of(input_kind); f.size()];
    let mut per_stage = Vec::with_capacity(f.stages.len());
    for stage in &f.stages {
        let entries = stage.triples.iter().map(|&(r, c, k)| (r, c, k.to_gaussian()));
        let (adds, mults, next) = matrix_cost(stage.size, entries, &support);
        per_stage.push((adds, mults));
        support = next;
    }
    OpCountReport::from_stages(per_stage)
}

/// Operation count of the direct matrix-vector product, same convention as
/// [`count_operations`]. Zero entries are free; an entry with both parts
/// non-zero contributes two terms. Irrational matrices count every
/// non-trivial part as multiplications.
pub fn count_dense_operations(m: &GaussianMatrix, input_kind: InputKind) -> OpCountReport {
    let support = vec![Support::of(input_kind); m.cols()];
    let (rows, cols) = (m.rows(), m.cols());
    let entries = (0..rows * cols).map(|i| {
        let (r, c) = (i / cols, i % cols);
        let k = m.exact(r, c).unwrap_or_else(|| approx_gaussian(m.get(r, c)));
        (r, c, k)
    });
    let (adds, mults, _) = matrix_cost(rows, entries, &support);
    OpCountReport::from_stages(vec![(adds, mults)])
}

/// Rational stand-in for a double entry, used only for cost classification:
/// parts within 1e-12 of 0 or ±1 are treated as those values.
fn approx_gaussian(z: Complex64) -> Gaussian {
    let part = |v: f64| {
        if v.abs() < 1e-12 {
            Rational64::zero()
        } else if (v.abs() - 1.0).abs() < 1e-12 {
            Rational64::from_integer(v.signum() as i64)
        } else {
            // any non-trivial value; only its class matters
            Rational64::new(1, 3)
        }
    };
    num_complex::Complex::new(part(z.re), part(z.im))
}

/// Where a complexity-table row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowSource {
    /// Counted from the matrices in this crate.
    Computed,
    /// Published figure for an algorithm not implemented here.
    Literature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityRow {
    pub method: String,
    pub additions: usize,
    pub multiplications: usize,
    pub source: RowSource,
    /// Published `(additions, multiplications)` for computed rows.
    pub published: Option<(usize, usize)>,
}

/// Real-operation comparison of 32-point transform algorithms.
pub fn complexity_table() -> Vec<ComplexityRow> {
    let literature = |method: &str, additions, multiplications| ComplexityRow {
        method: method.to_string(),
        additions,
        multiplications,
        source: RowSource::Literature,
        published: None,
    };
    let dense = count_dense_operations(&adft32_matrix(), InputKind::Complex);
    let fast = count_operations(&builtin_adft32_factorization(), InputKind::Complex);
    vec![
        literature("Radix-2 FFT", 408, 88),
        literature("Split-Radix FFT", 388, 68),
        literature("Winograd FFT", 388, 68),
        ComplexityRow {
            method: "Direct Computation F̂32".into(),
            additions: dense.total_real_additions,
            multiplications: dense.real_multiplications,
            source: RowSource::Computed,
            published: Some((584, 0)),
        },
        ComplexityRow {
            method: "Fast Algorithm F̂32".into(),
            additions: fast.total_real_additions,
            multiplications: fast.real_multiplications,
            source: RowSource::Computed,
            published: Some((348, 0)),
        },
    ]
}
