//! End-to-end tests of the `rotvdw` binary.

use std::path::PathBuf;
use std::process::Command;

use rotvdw::greens::SurfaceGeometry;
use rotvdw::materials;
use rotvdw::rotor;
use rotvdw::spectra::{level_diagram, observability_report, transition_lines, Branch, DEFAULT_MARGIN};
use rotvdw::units::{MICROMETER, NANOMETER, PLANCK};
use rotvdw_cli::records::{LevelRow, LineRow, ObservabilityRow, Spectrum};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn rotvdw(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_rotvdw"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let out = rotvdw(args);
    assert_eq!(out.code, 0, "rotvdw {args:?} failed: {}", out.stderr);
    out.stdout
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn csv_header(text: &str) -> &str {
    text.lines().next().unwrap_or_default()
}

#[test]
fn list_molecules_matches_registry() {
    let table = ok(&["list", "molecules"]);
    let rows: Vec<&str> = table.lines().skip(2).collect();
    assert_eq!(rows.len(), 5);
    let nacs = rows.iter().find(|r| r.contains("NaCs")).unwrap();
    assert!(nacs.contains("22.2e9 rad/s") && nacs.contains("19.5e-30 C·m"), "{nacs}");
    assert_eq!(ok(&["list", "molecules", "--format", "csv"]), golden("molecules.csv"));
}

#[test]
fn list_materials_matches_registry() {
    let table = ok(&["list", "materials"]);
    assert_eq!(table.lines().skip(2).count(), 4);
    assert!(table.contains("SiC"));
    assert_eq!(ok(&["list", "materials", "--format", "csv"]), golden("materials.csv"));
}

#[test]
fn unknown_list_kind_is_a_usage_error() {
    let out = rotvdw(&["list", "isotopes"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("possible values"));
}

#[test]
fn csv_columns_are_stable() {
    let spectrum = ok(&[
        "spectrum",
        "--molecule",
        "NaCs",
        "--d-nm",
        "100",
        "--r1-um",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(spectrum, golden("spectrum_nacs_sapphire.csv"));
    let shift = ok(&["shift", "--molecule", "NaCs", "--l-max", "1", "--format", "csv"]);
    assert_eq!(
        csv_header(&shift),
        "molecule,material,d_nm,R1_um,R2_um,l,m_abs,parity,unit,e_free,shift_plane,shift_curv,shift_total,e_total"
    );
    let obs = ok(&["observability", "--molecule", "all", "--format", "csv"]);
    assert_eq!(
        csv_header(&obs),
        "molecule,material,d_nm,R1_um,R2_um,T_K,nu_r_hz,delta_nu_12_hz,delta_nu_pm_hz,\
         delta_nu_pm_conductor_limit_hz,natural_width_hz,doppler_width_hz,margin,ratio_to_natural,\
         ratio_to_doppler,observable"
    );
}

#[test]
fn spectrum_json_round_trips() {
    let text = ok(&[
        "spectrum",
        "--molecule",
        "all",
        "--r1-um",
        "1.5",
        "--r2-um",
        "inf",
        "--format",
        "json",
    ]);
    let parsed: Spectrum = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.lines.len(), 15);
    assert_eq!(parsed.splittings.len(), 5);
    let again = serde_json::to_value(&parsed).unwrap();
    let original: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(again, original);
    assert_eq!(original["lines"][0]["R2_um"], "inf");
}

#[test]
fn spectrum_values_equal_library_values() {
    let text = ok(&[
        "spectrum",
        "--molecule",
        "NaCs",
        "--material",
        "CaF2",
        "--d-nm",
        "150",
        "--r1-um",
        "1",
        "--r2-um",
        "3",
        "--temp-k",
        "77",
        "--format",
        "json",
    ]);
    let parsed: Spectrum = serde_json::from_str(&text).unwrap();
    let mol = rotor::lookup("NaCs").unwrap();
    let mat = materials::lookup("CaF2").unwrap();
    let geom = SurfaceGeometry::new(150.0 * NANOMETER, MICROMETER, 3.0 * MICROMETER).unwrap();
    let lines = transition_lines(&mol, &mat, &geom, Branch::new(1, 0).unwrap()).unwrap();
    assert_eq!(parsed.lines.len(), lines.len());
    for (row, line) in parsed.lines.iter().zip(&lines) {
        assert_eq!(row.label, line.label);
        assert_eq!(row.frequency_hz.to_bits(), line.frequency.to_bits());
        assert_eq!(row.offset_hz.to_bits(), line.offset.to_bits());
        assert_eq!(row.natural_width_hz.to_bits(), line.natural_width.to_bits());
        assert_eq!(
            row.doppler_width_hz.to_bits(),
            line.doppler_width(77.0).unwrap().to_bits()
        );
    }
    let dpm = parsed.lines.iter().find(|l| l.label == "nu1+").unwrap().offset_hz
        - parsed.lines.iter().find(|l| l.label == "nu1-").unwrap().offset_hz;
    let closed = parsed.splittings[0].delta_nu_pm_hz;
    assert!((dpm - closed).abs() <= 1e-12 * closed.abs());
}

#[test]
fn shift_values_equal_library_values() {
    let text = ok(&[
        "shift",
        "--molecule",
        "LiCs",
        "--material",
        "SiC",
        "--d-nm",
        "80",
        "--r1-um",
        "0.6",
        "--r2-um",
        "-2",
        "--l-max",
        "3",
        "--format",
        "json",
    ]);
    let rows: Vec<LevelRow> = serde_json::from_str(&text).unwrap();
    let mol = rotor::lookup("LiCs").unwrap();
    let mat = materials::lookup("SiC").unwrap();
    let geom = SurfaceGeometry::new(80.0 * NANOMETER, 0.6 * MICROMETER, -2.0 * MICROMETER).unwrap();
    let levels = level_diagram(&mol, &mat, &geom, 3).unwrap();
    assert_eq!(rows.len(), levels.len());
    for (row, lv) in rows.iter().zip(&levels) {
        assert_eq!(
            (row.l, row.m_abs, row.parity.as_str()),
            (lv.state.l, lv.state.m_abs, lv.state.s.to_string().as_str())
        );
        assert_eq!(row.shift_plane.to_bits(), (lv.shift_plane / PLANCK).to_bits());
        assert_eq!(row.shift_curv.to_bits(), (lv.shift_curv / PLANCK).to_bits());
        assert_eq!(row.e_total.to_bits(), (lv.e_total / PLANCK).to_bits());
    }
    let joules: Vec<LevelRow> = serde_json::from_str(&ok(&[
        "shift",
        "--molecule",
        "LiCs",
        "--material",
        "SiC",
        "--d-nm",
        "80",
        "--r1-um",
        "0.6",
        "--r2-um",
        "-2",
        "--l-max",
        "3",
        "--format",
        "json",
        "--energy-unit",
        "j",
    ]))
    .unwrap();
    assert_eq!(joules[4].shift_curv.to_bits(), levels[4].shift_curv.to_bits());
    assert_eq!(joules[4].unit, "J");
}

#[test]
fn plane_shift_ratio_is_four_to_three() {
    let text = ok(&[
        "shift",
        "--molecule",
        "NaCs",
        "--material",
        "Sapphire",
        "--d-nm",
        "100",
        "--l-max",
        "1",
        "--format",
        "json",
    ]);
    let rows: Vec<LevelRow> = serde_json::from_str(&text).unwrap();
    let find = |m: u32, s: &str| rows.iter().find(|r| r.l == 1 && r.m_abs == m && r.parity == s).unwrap();
    let ratio = find(0, "+").shift_plane / find(1, "+").shift_plane;
    assert!((ratio - 4.0 / 3.0).abs() < 1e-12, "{ratio}");
    assert_eq!(find(1, "+").shift_plane, find(1, "-").shift_plane);
    assert!(rows.iter().all(|r| r.shift_curv == 0.0));
}

#[test]
fn axisymmetric_curvature_shifts_without_parity_split() {
    let text = ok(&[
        "shift",
        "--molecule",
        "NaCs",
        "--r1-um",
        "1",
        "--r2-um",
        "1",
        "--l-max",
        "2",
        "--format",
        "json",
    ]);
    let rows: Vec<LevelRow> = serde_json::from_str(&text).unwrap();
    assert!(rows.iter().all(|r| r.shift_curv != 0.0));
    for l in 1..=2 {
        for m in 1..=l {
            let pair: Vec<&LevelRow> = rows.iter().filter(|r| r.l == l && r.m_abs == m).collect();
            assert_eq!(pair.len(), 2);
            assert_eq!(pair[0].shift_curv, pair[1].shift_curv);
        }
    }
}

#[test]
fn excessive_curvature_is_rejected_with_exit_code_3() {
    let out = rotvdw(&["shift", "--molecule", "NaCs", "--d-nm", "100", "--r1-um", "0.2"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("0.3"), "{}", out.stderr);
    assert!(out.stderr.contains("0.5"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn configuration_errors_exit_with_code_2() {
    for args in [
        vec!["shift", "--molecule", "KCs"],
        vec!["shift", "--molecule", "NaCs", "--material", "Glass"],
        vec!["shift", "--molecule", "NaCs", "--set", "distance=3"],
        vec!["shift", "--molecule", "NaCs", "--d-nm", "-5"],
        vec!["shift", "--molecule", "NaCs", "--r1-um", "wide"],
        vec!["spectrum", "--molecule", "NaCs", "--branch", "2->0"],
        vec!["spectrum", "--molecule", "NaCs", "--sweep", "d_nm="],
        vec!["shift", "--config", "/nonexistent/run.toml"],
        vec!["shift"],
    ] {
        let out = rotvdw(&args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(out.stderr.starts_with("error:"), "{args:?}: {}", out.stderr);
    }
}

#[test]
fn config_file_with_overrides_and_inline_molecule() {
    let dir = std::env::temp_dir().join(format!("rotvdw-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(
        &path,
        "material = \"BaF2\"\nd_nm = 250\nR1_um = 3\nR2_um = \"inf\"\nT_K = 10\n\n[molecule]\nname = \"KRb\"\nomega_r_e9 = 6.97\n\"mu_e-30\" = 2.0\nM_r = 123.9\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let text = ok(&[
        "observability",
        "--config",
        p,
        "--set",
        "T_K=20",
        "--d-nm",
        "200",
        "--format",
        "json",
    ]);
    let rows: Vec<ObservabilityRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_eq!((r.molecule.as_str(), r.material.as_str()), ("KRb", "BaF2"));
    assert_eq!((r.d_nm, r.r1_um, r.temperature), (200.0, 3.0, 20.0));
    assert!(r.r2_um.is_infinite());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn observability_over_all_molecules() {
    let text = ok(&[
        "observability",
        "--molecule",
        "all",
        "--temp-k",
        "300",
        "--d-nm",
        "100",
        "--r1-um",
        "1",
        "--r2-um",
        "inf",
        "--format",
        "json",
    ]);
    let rows: Vec<ObservabilityRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 5);
    let geom = SurfaceGeometry::new(100.0 * NANOMETER, MICROMETER, f64::INFINITY).unwrap();
    let sapphire = materials::lookup("Sapphire").unwrap();
    for (row, mol) in rows.iter().zip(rotor::builtin_molecules()) {
        let r = observability_report(&mol, &sapphire, &geom, 300.0, DEFAULT_MARGIN).unwrap();
        assert_eq!(row.molecule, r.molecule);
        assert_eq!(row.delta_nu_pm_hz.to_bits(), r.delta_nu_pm.to_bits());
        assert_eq!(row.doppler_width_hz.to_bits(), r.doppler_width.to_bits());
        assert_eq!(row.ratio_to_doppler.to_bits(), r.ratio_to_doppler.to_bits());
        assert_eq!(row.observable, r.observable);
        assert!(row.ratio_to_natural > 1e6);
    }
    let by = |n: &str| rows.iter().find(|r| r.molecule == n).unwrap();
    assert!(!by("LiH").observable);
    assert!(by("LiH").doppler_width_hz > 100.0 * by("LiH").delta_nu_pm_hz);
    // The heavy molecules fare orders of magnitude better than LiH against Doppler.
    for heavy in ["LiCs", "NaRb", "NaCs"] {
        assert!(by(heavy).ratio_to_doppler > 100.0 * by("LiH").ratio_to_doppler);
    }
    let relaxed: Vec<ObservabilityRow> = serde_json::from_str(&ok(&[
        "observability",
        "--molecule",
        "NaCs",
        "--r1-um",
        "1",
        "--margin",
        "2",
        "--format",
        "json",
    ]))
    .unwrap();
    assert!(relaxed[0].observable);
}

#[test]
fn doppler_column_scales_with_root_temperature() {
    let at = |t: &str| -> Vec<ObservabilityRow> {
        serde_json::from_str(&ok(&[
            "observability",
            "--molecule",
            "all",
            "--r1-um",
            "1",
            "--temp-k",
            t,
            "--format",
            "json",
        ]))
        .unwrap()
    };
    for (warm, cold) in at("300").iter().zip(at("4").iter()) {
        let ratio = warm.doppler_width_hz / cold.doppler_width_hz;
        assert!((ratio - 75f64.sqrt()).abs() < 1e-12 * ratio, "{ratio}");
        assert_eq!(warm.delta_nu_pm_hz, cold.delta_nu_pm_hz);
    }
}

#[test]
fn separation_sweep_follows_inverse_cube() {
    let text = ok(&[
        "observability",
        "--molecule",
        "NaCs",
        "--sweep",
        "d_nm=50,100,200,400",
        "--format",
        "csv",
    ]);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<ObservabilityRow> = reader.deserialize().collect::<Result<_, _>>().unwrap();
    assert_eq!(
        rows.iter().map(|r| r.d_nm).collect::<Vec<_>>(),
        vec![50.0, 100.0, 200.0, 400.0]
    );
    let k0 = rows[0].delta_nu_12_hz * rows[0].d_nm.powi(3);
    for r in &rows {
        assert!((r.delta_nu_12_hz * r.d_nm.powi(3) / k0 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn curvature_difference_sweep_is_linear() {
    let text = ok(&[
        "spectrum",
        "--molecule",
        "LiCs",
        "--sweep",
        "curv_diff=-0.2:0.2:5",
        "--format",
        "json",
    ]);
    let s: Spectrum = serde_json::from_str(&text).unwrap();
    let pm: Vec<f64> = s.splittings.iter().map(|r| r.delta_nu_pm_hz).collect();
    assert_eq!(pm.len(), 5);
    assert_eq!(pm[2], 0.0);
    for (k, v) in [-0.2, -0.1, 0.0, 0.1, 0.2].iter().zip(&pm) {
        assert!((v - pm[4] * k / 0.2).abs() <= 1e-12 * pm[4].abs(), "{k}: {v}");
    }
    let plane_lines: Vec<&LineRow> = s
        .lines
        .iter()
        .filter(|l| l.r1_um.is_infinite() && l.r2_um.is_infinite())
        .collect();
    assert_eq!(plane_lines.len(), 3);
}

#[test]
fn table_output_uses_si_prefixes() {
    let text = ok(&["observability", "--molecule", "LiH", "--r1-um", "1"]);
    assert!(
        text.contains("MHz") && text.contains("kHz") && text.contains("µHz"),
        "{text}"
    );
    let text = ok(&["spectrum", "--molecule", "NaCs", "--r1-um", "1"]);
    assert!(text.contains("Δν±") && text.contains("nu1+"));
}
