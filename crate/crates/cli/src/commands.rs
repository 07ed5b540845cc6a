use std::fs;
use std::path::{Path, PathBuf};

use adft::approx_search::{min_energy_candidate, pareto_search, results_to_csv};
use adft::array_sim::{bin_energy_sweep, run_chain, ChainConfig, Engine};
use adft::beampattern::{
    azimuth_grid, compose_2d_from_measured, dft_beam_azimuths, filter_bank_response, main_lobe_deviation_db,
    max_side_lobe_db, near_field_pattern, response_error_surface, ula_array_factor, ula_array_factor_with,
    ura_beam_2d, ArrayGeometry, BeamGrid, ElementPattern,
};
use adft::fastalg::{
    builtin_adft32_factorization, complexity_table, count_operations, equivalence_mismatches, stage_product,
    InputKind, RowSource,
};
use adft::transforms::{adft32_matrix, dft_matrix, round_scaled_dft};
use adft::Complex64;
use anyhow::{bail, ensure, Context, Result};
use serde_json::json;

use crate::args::{Command, TransformKind};
use crate::output::{csv_with_header, Outcome};

const EXPECTED_STAGE_ADDITIONS: [usize; 8] = [60, 60, 28, 28, 60, 28, 24, 60];
const SEPARABILITY_TOLERANCE: f64 = 1e-10;

/// Runs `command`, filling in any values it resolves (e.g. the chain config).
pub fn execute(command: &mut Command, json: bool) -> Result<Outcome> {
    match command {
        Command::Matrix { kind, size } => matrix(*kind, *size, json),
        Command::Verify {
            mutate_stage,
            mutate_index,
            vectors,
            seed,
        } => verify(*mutate_stage, *mutate_index, *vectors, *seed, json),
        Command::Opcount { input } => opcount((*input).into(), json),
        Command::Response { transform, grid, error } => response(*transform, *grid, *error, json),
        Command::Beams1d {
            transform,
            dx,
            az_min,
            az_max,
            points,
            cos_exponent,
            long,
        } => beams1d(*transform, *dx, (*az_min, *az_max, *points), *cos_exponent, *long, json),
        Command::Beams2d {
            transform,
            k,
            l,
            dx,
            dy,
            grid,
            measured,
        } => beams2d(*transform, (*k, *l), *dx, dy.unwrap_or(*dx), grid, measured.as_deref(), json),
        Command::Nearfield {
            transform,
            range,
            freq,
            dx,
            az_min,
            az_max,
            points,
        } => nearfield(*transform, range, *freq, *dx, (*az_min, *az_max, *points), json),
        Command::Pareto {
            beta_min,
            beta_max,
            step,
            emit_matrix,
        } => pareto(*beta_min, *beta_max, *step, *emit_matrix, json),
        Command::Simulate {
            config,
            engine,
            seed,
            snr_db,
            range,
            dx,
            snapshots,
            azimuth,
            az_min,
            az_max,
            points,
            resolved,
        } => {
            let cfg = match resolved.take() {
                Some(c) => *c,
                None => {
                    let mut c = match config {
                        Some(path) => load_config(path)?,
                        None => ChainConfig::default(),
                    };
                    if let Some(s) = seed {
                        c.seed = *s;
                    }
                    if snr_db.is_some() {
                        c.snr_db = *snr_db;
                    }
                    if range.is_some() {
                        c.source_range = *range;
                    }
                    if let Some(d) = dx {
                        c.dx = *d;
                    }
                    if let Some(n) = snapshots {
                        c.snapshots = *n;
                    }
                    c
                }
            };
            cfg.validate()?;
            *resolved = Some(Box::new(cfg.clone()));
            let mut out = simulate(&cfg, (*engine).into(), *azimuth, (*az_min, *az_max, *points), json)?;
            out.inputs = config.iter().cloned().collect();
            out.seed = Some(cfg.seed);
            Ok(out)
        }
        Command::Replay { .. } => bail!("replay cannot be nested"),
    }
}

fn load_config(path: &Path) -> Result<ChainConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let cfg: ChainConfig = if is_json {
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
    } else {
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
    };
    Ok(cfg)
}

fn artifact(body: String) -> Outcome {
    Outcome {
        body: Some(body),
        write_by_default: true,
        ..Outcome::default()
    }
}

fn matrix(kind: TransformKind, size: usize, json: bool) -> Result<Outcome> {
    let m = match kind {
        TransformKind::Dft => {
            ensure!(size > 0, "matrix size must be positive");
            dft_matrix(size)
        }
        TransformKind::Adft => {
            ensure!(size == 32, "the approximate transform is only defined for size 32");
            adft32_matrix()
        }
    };
    let body = if json {
        m.to_json()
    } else {
        csv_with_header(
            &format!("{} matrix", kind.name()),
            &[
                ("size", format!("{}x{}", m.rows(), m.cols())),
                ("cells", "re+imj, row-major".into()),
            ],
            &m.to_csv(),
        )
    };
    let mut out = artifact(body);
    out.report.push(format!("{} matrix {}x{}", kind.name(), m.rows(), m.cols()));
    Ok(out)
}

fn verify(stage: Option<usize>, index: usize, vectors: usize, seed: u64, json: bool) -> Result<Outcome> {
    let mut f = builtin_adft32_factorization();
    if let Some(s) = stage {
        ensure!((1..=f.stages().len()).contains(&s), "--mutate-stage must be in 1..={}", f.stages().len());
        f = f.with_flipped_sign(s - 1, index)?;
    }
    let reference = adft32_matrix();
    let product = stage_product(&f)?;
    let first_difference = product.first_difference(&reference);
    let mismatches = equivalence_mismatches(&f, vectors, seed)?;
    let counts = count_operations(&f, InputKind::Complex);
    let counts_ok = counts.per_stage_real_additions == EXPECTED_STAGE_ADDITIONS
        && counts.total_real_additions == 348
        && counts.real_multiplications == 0;
    let identity_ok = first_difference.is_none();
    let equivalence_ok = mismatches == 0;
    let passed = identity_ok && equivalence_ok && counts_ok;
    let table = complexity_table();

    let mut report = Vec::new();
    if json {
        report.push(
            json!({
                "passed": passed,
                "factorization_identity": identity_ok,
                "first_difference": first_difference.map(|(r, c)| json!({
                    "row": r,
                    "col": c,
                    "product": [product.get(r, c).re, product.get(r, c).im],
                    "expected": [reference.get(r, c).re, reference.get(r, c).im],
                })),
                "equivalence": equivalence_ok,
                "equivalence_vectors": vectors,
                "equivalence_mismatches": mismatches,
                "op_counts": counts_ok,
                "per_stage_real_additions": counts.per_stage_real_additions,
                "total_real_additions": counts.total_real_additions,
                "real_multiplications": counts.real_multiplications,
                "complexity_table": table,
            })
            .to_string(),
        );
    } else {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        match first_difference {
            None => report.push(format!("factorization identity: {}", mark(true))),
            Some((r, c)) => report.push(format!(
                "factorization identity: FAIL, first difference at row {r}, column {c}: product {}, expected {}",
                product.get(r, c),
                reference.get(r, c)
            )),
        }
        report.push(format!(
            "fast/dense equivalence: {} ({mismatches} of {vectors} vectors differ)",
            mark(equivalence_ok)
        ));
        report.push(format!(
            "operation counts: {} (additions: {}, multiplications: {})",
            mark(counts_ok),
            counts.total_real_additions,
            counts.real_multiplications
        ));
        let stages: Vec<String> = counts
            .per_stage_real_additions
            .iter()
            .enumerate()
            .map(|(i, a)| format!("W{} {a}", i + 1))
            .collect();
        report.push(format!("per-stage additions: {}", stages.join(", ")));
        report.extend(table_lines(&table));
        report.push(format!("verify: {}", if passed { "PASS" } else { "FAIL" }));
    }
    let body = if json {
        report.join("\n") + "\n"
    } else {
        csv_with_header(
            "verify",
            &[("vectors", vectors.to_string()), ("seed", seed.to_string())],
            &format!(
                "check,passed\nfactorization_identity,{identity_ok}\nequivalence,{equivalence_ok}\nop_counts,{counts_ok}\n"
            ),
        )
    };
    Ok(Outcome {
        body: Some(body),
        write_by_default: false,
        report,
        failed: !passed,
        seed: Some(seed),
        ..Outcome::default()
    })
}

fn table_lines(table: &[adft::fastalg::ComplexityRow]) -> Vec<String> {
    let mut lines = vec![format!("{:<26}{:>10}{:>10}  {}", "method", "additions", "mults", "note")];
    for row in table {
        let note = match (row.source, row.published) {
            (RowSource::Literature, _) => "published".to_string(),
            (RowSource::Computed, Some((a, m))) if (a, m) == (row.additions, row.multiplications) => {
                "computed, matches published".to_string()
            }
            (RowSource::Computed, Some((a, m))) => format!("computed; published {a}/{m}"),
            (RowSource::Computed, None) => "computed".to_string(),
        };
        lines.push(format!(
            "{:<26}{:>10}{:>10}  {note}",
            row.method, row.additions, row.multiplications
        ));
    }
    lines
}

fn opcount(input: InputKind, json: bool) -> Result<Outcome> {
    let counts = count_operations(&builtin_adft32_factorization(), input);
    let table = complexity_table();
    let mut report: Vec<String> = vec![format!(
        "fast algorithm ({}) per-stage additions: {:?}, total {}, multiplications {}",
        if input == InputKind::Real { "real input" } else { "complex input" },
        counts.per_stage_real_additions,
        counts.total_real_additions,
        counts.real_multiplications
    )];
    report.extend(table_lines(&table));
    let body = if json {
        json!({ "input": input, "fast": counts, "complexity_table": table }).to_string()
    } else {
        let mut csv = String::from("method,additions,multiplications,source,published_additions,published_multiplications\n");
        for r in &table {
            let (pa, pm) = r.published.map_or((String::new(), String::new()), |(a, m)| (a.to_string(), m.to_string()));
            let source = match r.source {
                RowSource::Computed => "computed",
                RowSource::Literature => "literature",
            };
            csv.push_str(&format!("{},{},{},{source},{pa},{pm}\n", r.method, r.additions, r.multiplications));
        }
        csv_with_header(
            "operation counts (real additions/multiplications, complex input)",
            &[("fast_per_stage", format!("{:?}", counts.per_stage_real_additions))],
            &csv,
        )
    };
    Ok(Outcome {
        body: Some(body),
        write_by_default: false,
        report,
        ..Outcome::default()
    })
}

fn response(transform: TransformKind, grid: usize, error: bool, json: bool) -> Result<Outcome> {
    let m = transform.matrix();
    if error {
        let s = response_error_surface(&m, &dft_matrix(32), grid)?;
        let worst_peak = s.peak_error_db.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut out = artifact(if json {
            s.grid.to_json()
        } else {
            csv_with_header(
                &format!("{} magnitude-response error vs exact DFT", transform.name()),
                &[
                    ("grid_points", grid.to_string()),
                    ("units", "omega in rad/sample; error in dB re 1 after per-bin peak normalization".into()),
                    ("worst_bins", format!("{:?}", s.worst_bins)),
                ],
                &s.grid.to_csv(false),
            )
        });
        out.report.push(format!(
            "bins with peak error >= -13 dB: {:?} (max {worst_peak:.2} dB)",
            s.worst_bins
        ));
        return Ok(out);
    }
    let g = filter_bank_response(&m, grid)?;
    let side = max_side_lobe_db(&g).context("no side lobes found")?;
    let mut out = artifact(if json {
        g.to_json()
    } else {
        csv_with_header(
            &format!("{} filter-bank response", transform.name()),
            &[
                ("grid_points", grid.to_string()),
                ("units", "omega in rad/sample; magnitude in dB re bin peak".into()),
                ("largest_side_lobe_db", format!("{side:.4}")),
            ],
            &g.to_csv(true),
        )
    });
    out.report.push(format!("largest side lobe: {side:.2} dB"));
    Ok(out)
}

fn beams1d(
    transform: TransformKind,
    dx: f64,
    (lo, hi, points): (f64, f64, usize),
    cos_exponent: Option<f64>,
    long: bool,
    json: bool,
) -> Result<Outcome> {
    ensure!(points >= 2 && lo < hi, "need at least 2 points and az_min < az_max");
    let geo = ArrayGeometry::ula(32, dx)?;
    let az = azimuth_grid(lo, hi, points);
    let m = transform.matrix();
    let g = match cos_exponent {
        Some(q) => ula_array_factor_with(&m, &geo, &az, ElementPattern::CosinePower(q))?,
        None => ula_array_factor(&m, &geo, &az)?,
    };
    let grating: Vec<usize> = (0..32).filter(|&k| dft_beam_azimuths(32, k, dx).len() > 1).collect();
    let body = if json {
        g.to_json()
    } else {
        csv_with_header(
            &format!("{} ULA beam patterns", transform.name()),
            &[
                ("dx_wavelengths", dx.to_string()),
                ("element_pattern", cos_exponent.map_or("isotropic".into(), |q| format!("cos^{q}"))),
                ("units", "azimuth in degrees; magnitude in dB re bin peak".into()),
                ("grating_lobe_bins", format!("{grating:?}")),
            ],
            &if long { g.to_long_csv(true) } else { g.to_csv(true) },
        )
    };
    let mut out = artifact(body);
    if !grating.is_empty() {
        out.report.push(format!("grating lobes in the visible region for bins {grating:?}"));
    }
    out.report.push(format!("{} azimuths x 32 bins", az.len()));
    Ok(out)
}

fn parse_grid(grid: &str) -> Result<(usize, usize)> {
    let (a, e) = grid
        .split_once(['x', 'X'])
        .with_context(|| format!("grid `{grid}` is not of the form <azimuth>x<elevation>"))?;
    let (a, e): (usize, usize) = (a.trim().parse()?, e.trim().parse()?);
    ensure!(a >= 2 && e >= 2, "grid needs at least 2 samples per axis");
    Ok((a, e))
}

fn beams2d(
    transform: TransformKind,
    (k, l): (usize, usize),
    dx: f64,
    dy: f64,
    grid: &str,
    measured: Option<&Path>,
    json: bool,
) -> Result<Outcome> {
    let (na, ne) = parse_grid(grid)?;
    let geo = ArrayGeometry::new(32, 32, dx, dy)?;
    let az = azimuth_grid(-180.0, 180.0, na);
    let el = azimuth_grid(0.0, 90.0, ne);
    let m = transform.matrix();
    let beam = ura_beam_2d(&m, &geo, k, l, &el, &az)?;
    let diff = beam.max_relative_difference();
    ensure!(
        diff <= SEPARABILITY_TOLERANCE,
        "separability self-check failed: relative difference {diff:.3e}"
    );
    let mut inputs = Vec::new();
    let values = match measured {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let grid = BeamGrid::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
            inputs.push(PathBuf::from(path));
            compose_2d_from_measured(&grid, k, &m, l, &geo, &el, &az)?
        }
        None => beam.separable.clone(),
    };
    let body = if json {
        json!({
            "transform": transform.name(),
            "k": k,
            "l": l,
            "elevation_deg": el,
            "azimuth_deg": az,
            "values": values.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        })
        .to_string()
    } else {
        csv_with_header(
            &format!("{} URA beam ({k},{l})", transform.name()),
            &[
                ("dx_dy_wavelengths", format!("{dx},{dy}")),
                ("source", measured.map_or("analytic".into(), |p| format!("measured {}", p.display()))),
                ("separability_relative_difference", format!("{diff:.3e}")),
                ("units", "angles in degrees; magnitude in dB re peak".into()),
            ],
            &long_2d_csv(&el, &az, &values),
        )
    };
    let peak = (0..values.len()).max_by(|&a, &b| values[a].norm().total_cmp(&values[b].norm())).unwrap_or(0);
    let mut out = artifact(body);
    out.inputs = inputs;
    out.report.push(format!("separability self-check: max relative difference {diff:.2e}"));
    out.report.push(format!(
        "peak at elevation {:.2} deg, azimuth {:.2} deg",
        el[peak / az.len()],
        az[peak % az.len()]
    ));
    Ok(out)
}

fn long_2d_csv(el: &[f64], az: &[f64], values: &[Complex64]) -> String {
    let peak = values.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    let mut out = String::from("elevation_deg,azimuth_deg,dB\n");
    for (i, e) in el.iter().enumerate() {
        for (j, a) in az.iter().enumerate() {
            let p = values[i * az.len() + j].norm_sqr();
            out.push_str(&format!("{e},{a},{}\n", 10.0 * (p / peak).log10()));
        }
    }
    out
}

fn nearfield(
    transform: TransformKind,
    ranges: &[f64],
    freq: f64,
    dx: f64,
    (lo, hi, points): (f64, f64, usize),
    json: bool,
) -> Result<Outcome> {
    ensure!(!ranges.is_empty(), "at least one range is required");
    ensure!(points >= 2 && lo < hi, "need at least 2 points and az_min < az_max");
    let geo = ArrayGeometry::ula(32, dx)?;
    let az = azimuth_grid(lo, hi, points);
    let m = transform.matrix();
    let far = ula_array_factor(&m, &geo, &az)?;
    let mut rows = Vec::new();
    let mut last = None;
    for &r in ranges {
        let near = near_field_pattern(&m, &geo, r, freq, &az)?;
        rows.push((r, main_lobe_deviation_db(&near, &far, -3.0)));
        last = Some(near);
    }
    let mut report: Vec<String> = rows
        .iter()
        .map(|(r, d)| format!("range {r} m: max main-lobe deviation {d:.4} dB"))
        .collect();
    let params = vec![
        ("frequency_hz", freq.to_string()),
        ("dx_wavelengths", dx.to_string()),
        ("deviation", "max |dB near - dB far| where far-field pattern >= -3 dB".into()),
    ];
    let body = if let ([(r, d)], Some(near)) = (rows.as_slice(), last) {
        if json {
            near.to_json()
        } else {
            let mut p = params;
            p.push(("range_m", r.to_string()));
            p.push(("deviation_db", format!("{d:.6}")));
            p.push(("units", "azimuth in degrees; magnitude in dB re bin peak".into()));
            csv_with_header(&format!("{} near-field patterns", transform.name()), &p, &near.to_csv(true))
        }
    } else if json {
        json!(rows.iter().map(|(r, d)| json!({"range_m": r, "deviation_db": d})).collect::<Vec<_>>()).to_string()
    } else {
        let monotone = rows.windows(2).all(|w| w[1].1 < w[0].1);
        report.push(format!("deviation decreases with range: {monotone}"));
        let mut csv = String::from("range_m,deviation_db\n");
        for (r, d) in &rows {
            csv.push_str(&format!("{r},{d}\n"));
        }
        csv_with_header(&format!("{} near-field deviation", transform.name()), &params, &csv)
    };
    let mut out = artifact(body);
    out.report = report;
    Ok(out)
}

fn pareto(beta_min: f64, beta_max: f64, step: f64, emit: Option<f64>, json: bool) -> Result<Outcome> {
    let results = pareto_search(beta_min, beta_max, step)?;
    let best = min_energy_candidate(&results).context("empty sweep")?;
    let efficient = results.iter().filter(|r| r.pareto_efficient).count();
    let body = if json {
        json!(results
            .iter()
            .map(|r| json!({"beta": r.beta, "metrics": r.metrics, "pareto_efficient": r.pareto_efficient}))
            .collect::<Vec<_>>())
        .to_string()
    } else {
        csv_with_header(
            "rounding search round(beta*F32)",
            &[
                ("beta_range", format!("{beta_min}..={beta_max} step {step}")),
                ("rows", "one per distinct matrix, labelled by its smallest beta".into()),
            ],
            &results_to_csv(&results),
        )
    };
    let mut out = artifact(body);
    out.report.push(format!("{} distinct candidates, {efficient} Pareto-efficient", results.len()));
    out.report.push(format!(
        "smallest total error energy {:.2} at beta {} (equals the 32-point ADFT: {})",
        best.metrics.total_error_energy,
        best.beta,
        best.matrix == adft32_matrix()
    ));
    if let Some(beta) = emit {
        ensure!(beta > 0.0 && beta.is_finite(), "--emit-matrix needs a positive beta");
        out.extra.push((format!(".beta-{beta}.json"), round_scaled_dft(beta).to_json()));
    }
    Ok(out)
}

fn simulate(
    cfg: &ChainConfig,
    engine: Engine,
    azimuth: Option<f64>,
    (lo, hi, points): (f64, f64, usize),
    json: bool,
) -> Result<Outcome> {
    let params = vec![
        ("engine", engine.to_string()),
        ("f_rf_hz", cfg.f_rf.to_string()),
        ("f_lo_hz", cfg.f_lo.to_string()),
        ("f_clk_hz", cfg.f_clk.to_string()),
        ("dx_wavelengths", cfg.dx.to_string()),
        ("snapshots", cfg.snapshots.to_string()),
        ("source_range_m", cfg.source_range.map_or("far field".into(), |r| r.to_string())),
        ("snr_db", cfg.snr_db.map_or("noiseless".into(), |s| s.to_string())),
        ("seed", cfg.seed.to_string()),
    ];
    if let Some(az) = azimuth {
        let r = run_chain(cfg, az, engine)?;
        let db = r.normalized_db();
        let best = (0..db.len()).max_by(|&a, &b| db[a].total_cmp(&db[b])).unwrap_or(0);
        let body = if json {
            serde_json::to_string(&r)?
        } else {
            let mut p = params;
            p.push(("azimuth_deg", az.to_string()));
            csv_with_header("receive-chain bin energies", &p, &r.to_csv())
        };
        let mut out = artifact(body);
        out.report.push(format!("azimuth {az} deg: strongest bin {best}"));
        return Ok(out);
    }
    ensure!(points >= 2 && lo < hi, "need at least 2 points and az_min < az_max");
    let az = azimuth_grid(lo, hi, points);
    let g = bin_energy_sweep(cfg, &az, engine)?;
    let body = if json {
        g.to_json()
    } else {
        let mut p = params;
        p.push(("units", "azimuth in degrees; energy in dB re bin peak".into()));
        csv_with_header("receive-chain beam patterns", &p, &g.to_csv(true))
    };
    let mut out = artifact(body);
    out.report.push(format!("{} azimuths x {} bins", az.len(), g.bin_count()));
    Ok(out)
}
