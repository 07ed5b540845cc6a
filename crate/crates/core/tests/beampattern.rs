use adft::array_sim::{bin_energy_sweep, ChainConfig, Engine};
use adft::beampattern::*;
use adft::transforms::{adft32_matrix, dft_matrix};
use adft::Complex64;

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).max_by(|&a, &b| v[a].total_cmp(&v[b])).unwrap()
}

#[test]
fn dft_bin_points_at_its_spatial_frequency() {
    let geo = ArrayGeometry::ula(32, 0.5).unwrap();
    let az = azimuth_grid(-90.0, 90.0, 3601);
    let g = ula_array_factor(&dft_matrix(32), &geo, &az).unwrap();
    for k in [1usize, 4, 8, 12, 20, 28] {
        let want = dft_beam_azimuths(32, k, 0.5);
        assert_eq!(want.len(), 1);
        let got = az[argmax(&g.magnitude(k))];
        assert!((got - want[0]).abs() <= 0.05, "bin {k}: {got} vs {}", want[0]);
    }
}

#[test]
fn wide_spacing_produces_grating_lobes() {
    let dx = 0.6;
    let geo = ArrayGeometry::ula(32, dx).unwrap();
    let az = azimuth_grid(-90.0, 90.0, 18001);
    let g = ula_array_factor(&dft_matrix(32), &geo, &az).unwrap();
    let bin = 14;
    let lobes = dft_beam_azimuths(32, bin, dx);
    assert_eq!(lobes.len(), 2);
    let db = g.db(bin, true);
    for theta in lobes {
        let i = az.iter().position(|&a| (a - theta).abs() < 0.006).unwrap();
        assert!(db[i] > -0.01, "lobe at {theta} is {} dB", db[i]);
    }
    // half-wavelength spacing never aliases
    for k in 0..32 {
        assert!(dft_beam_azimuths(32, k, 0.5).len() <= 2);
        assert!(dft_beam_azimuths(32, k, 0.45).len() <= 1);
    }
}

#[test]
fn ura_beam_directions_match_figure_examples() {
    let geo = ArrayGeometry::ura(32, 0.5).unwrap();
    let cases = [((30, 31), (8.0, -153.4)), ((23, 25), (45.4, -142.1)), ((5, 5), (26.2, 45.0))];
    for t in [dft_matrix(32), adft32_matrix()] {
        for ((k, l), (psi, phi)) in cases {
            let (p, f) = beam_direction(&t, &geo, k, l).unwrap().unwrap();
            assert!((p - psi).abs() < 0.6, "({k},{l}) elevation {p}");
            assert!((f - phi).abs() < 1.5, "({k},{l}) azimuth {f}");

            // the double sum has no larger value in a neighbourhood of the peak
            let el = azimuth_grid(p - 1.0, p + 1.0, 21);
            let azg = azimuth_grid(f - 2.0, f + 2.0, 21);
            let beam = ura_beam_2d(&t, &geo, k, l, &[p], &[f]).unwrap();
            let around = ura_beam_2d(&t, &geo, k, l, &el, &azg).unwrap();
            let peak = beam.direct[0].norm();
            assert!(around.direct.iter().all(|z| z.norm() <= peak * (1.0 + 1e-9)));
        }
    }
}

#[test]
fn separable_and_direct_agree_on_coarse_grid() {
    let geo = ArrayGeometry::ura(32, 0.5).unwrap();
    let el = azimuth_grid(0.0, 90.0, 31);
    let az = azimuth_grid(-180.0, 180.0, 61);
    let beam = ura_beam_2d(&adft32_matrix(), &geo, 3, 17, &el, &az).unwrap();
    assert!(beam.max_relative_difference() < 1e-10);
    assert_eq!(beam.to_csv().lines().count(), 1 + 31 * 61);
}

#[test]
fn composed_beam_from_analytic_pattern_is_exact() {
    let geo = ArrayGeometry::ura(32, 0.5).unwrap();
    let t = adft32_matrix();
    let el = azimuth_grid(0.0, 90.0, 19);
    let az = azimuth_grid(-180.0, 180.0, 37);
    // sample the 1-D pattern exactly where the composition will look it up
    let mut nodes: Vec<f64> = el
        .iter()
        .flat_map(|e| {
            az.iter().map(move |a| {
                (e.to_radians().sin() * a.to_radians().cos()).clamp(-1.0, 1.0).asin().to_degrees()
            })
        })
        .collect();
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let ula = ArrayGeometry::ula(32, 0.5).unwrap();
    let measured = ula_array_factor(&t, &ula, &nodes).unwrap();
    let composed = compose_2d_from_measured(&measured, 6, &t, 11, &geo, &el, &az).unwrap();
    let beam = ura_beam_2d(&t, &geo, 6, 11, &el, &az).unwrap();
    assert!(relative_difference(&composed, &beam.separable) < 1e-10);
}

#[test]
fn flat_measured_pattern_replicates_y_factor() {
    let geo = ArrayGeometry::ura(32, 0.5).unwrap();
    let t = dft_matrix(32);
    let axis = azimuth_grid(-90.0, 90.0, 181);
    let flat = BeamGrid::new(AxisKind::AzimuthDeg, axis, BeamValues::Magnitude(vec![vec![1.0; 181]])).unwrap();
    let el = [10.0, 40.0, 80.0];
    let az = [-120.0, 0.0, 33.0, 90.0];
    let out = compose_2d_from_measured(&flat, 0, &t, 7, &geo, &el, &az).unwrap();
    let row = t.row(7);
    for (i, e) in el.iter().enumerate() {
        for (j, a) in az.iter().enumerate() {
            let wy = 2.0 * std::f64::consts::PI * 0.5 * e.to_radians().sin() * a.to_radians().sin();
            assert!((out[i * az.len() + j] - array_factor(&row, wy)).norm() < 1e-12);
        }
    }
}

#[test]
fn composed_beam_from_simulated_chain_tracks_analytic() {
    let config = ChainConfig {
        snapshots: 1024,
        ..ChainConfig::default()
    };
    let axis = azimuth_grid(-90.0, 90.0, 361);
    let k = 5;
    let sim = bin_energy_sweep(&config, &axis, Engine::FastAdft).unwrap();
    let t = adft32_matrix();
    let geo = ArrayGeometry::ura(32, 0.5).unwrap();
    let el = azimuth_grid(0.0, 90.0, 46);
    let az = azimuth_grid(-180.0, 180.0, 73);
    let composed = compose_2d_from_measured(&sim, k, &t, 5, &geo, &el, &az).unwrap();
    let analytic = ura_beam_2d(&t, &geo, k, 5, &el, &az).unwrap().separable;
    let db = |v: &[Complex64]| {
        let peak = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        v.iter().map(|z| 20.0 * (z.norm() / peak).log10()).collect::<Vec<_>>()
    };
    let (c, a) = (db(&composed), db(&analytic));
    let mut compared = 0;
    for (x, y) in c.iter().zip(&a) {
        if *y >= -3.0 {
            compared += 1;
            assert!((x - y).abs() < 3.0, "{x} vs {y}");
        }
    }
    assert!(compared > 0);
}

#[test]
fn compose_rejects_uncovered_angles_and_bad_bins() {
    let geo = ArrayGeometry::ura(32, 0.5).unwrap();
    let t = dft_matrix(32);
    let narrow = BeamGrid::new(AxisKind::AzimuthDeg, vec![-10.0, 10.0], BeamValues::Power(vec![vec![1.0, 1.0]])).unwrap();
    assert!(compose_2d_from_measured(&narrow, 0, &t, 0, &geo, &[60.0], &[0.0]).is_err());
    assert!(compose_2d_from_measured(&narrow, 1, &t, 0, &geo, &[0.0], &[0.0]).is_err());
    assert!(compose_2d_from_measured(&narrow, 0, &t, 32, &geo, &[0.0], &[0.0]).is_err());
}

#[test]
fn near_field_converges_to_far_field() {
    let geo = ArrayGeometry::ula(32, 0.6).unwrap();
    let az = azimuth_grid(-72.0, 72.0, 289);
    let t = dft_matrix(32);
    let far = ula_array_factor(&t, &geo, &az).unwrap();
    let mut last = f64::INFINITY;
    for r in [7.0, 14.0, 28.0, 56.0, 112.0] {
        let near = near_field_pattern(&t, &geo, r, 5.8e9, &az).unwrap();
        let d = main_lobe_deviation_db(&near, &far, -3.0);
        assert!(d < last, "{r} m: {d} >= {last}");
        last = d;
    }
}

#[test]
fn element_phases_far_field_limit() {
    let lambda = SPEED_OF_LIGHT / 5.8e9;
    let far = element_phases(32, 0.6, 25.0, None, lambda);
    let near = element_phases(32, 0.6, 25.0, Some(1e7), lambda);
    for (a, b) in far.iter().zip(&near) {
        assert!((a - b).abs() < 1e-4);
    }
    // broadside near field is symmetric about the array centre
    let sym = element_phases(32, 0.6, 0.0, Some(7.0), lambda);
    for n in 0..32 {
        assert!((sym[n] - sym[31 - n]).abs() < 1e-9);
    }
}

#[test]
fn filter_bank_versus_array_factor_mirror() {
    let t = adft32_matrix();
    let row = t.row(9);
    for w in [-2.0, -0.3, 0.0, 1.1, 3.0] {
        assert!((filter_response(&row, w) - array_factor(&row, -w)).norm() < 1e-12);
        // direct evaluation as an independent oracle
        let direct: Complex64 = row
            .iter()
            .enumerate()
            .map(|(n, c)| c * Complex64::from_polar(1.0, -w * n as f64))
            .sum();
        assert!((filter_response(&row, w) - direct).norm() < 1e-11);
    }
}

#[test]
fn side_lobe_levels_are_grid_stable() {
    let a = max_side_lobe_db(&filter_bank_response(&adft32_matrix(), 4096).unwrap()).unwrap();
    let b = max_side_lobe_db(&filter_bank_response(&adft32_matrix(), 16384).unwrap()).unwrap();
    assert!((a - b).abs() < 0.01);
    assert!(a > -13.0 && a < -10.0);
}
