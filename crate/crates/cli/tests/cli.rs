use std::fs;
use std::process::{Command, Output};

use greenbits_core::metrics::{eor_cra, ior_cra};
use greenbits_core::{
    CraConfig, DataAmount, EnergyAmount, EnergyThreshold, EntropyThreshold, FadingModel,
    LinkParams,
};

fn greenbits(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greenbits"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Last non-comment line of standard output.
fn value_line(out: &Output) -> String {
    stdout(out).lines().rfind(|l| !l.starts_with('#')).unwrap_or("").to_string()
}

const REF_EOR: [&str; 18] = [
    "--metric", "eor", "--strategy", "cra", "--H", "50kB", "--Eth", "0.05J", "--B", "200kHz", "--Pt",
    "0.2W", "--N0", "1e-9", "--fading", "rayleigh", "--gbar", "-10dB",
];

fn ref_eor_closed_form() -> f64 {
    eor_cra(
        &LinkParams::new(2e5, 1e-9).unwrap(),
        &CraConfig::new(0.2).unwrap(),
        &FadingModel::rayleigh(0.1).unwrap(),
        DataAmount::new(4e5).unwrap(),
        EnergyThreshold::new(0.05).unwrap(),
    )
    .unwrap()
}

#[test]
fn eval_eor_equals_library_on_si_values() {
    let mut args = vec!["eval"];
    args.extend(REF_EOR);
    let out = greenbits(&args);
    assert_eq!(out.status.code(), Some(0));
    let printed: f64 = value_line(&out).parse().unwrap();
    assert_eq!(printed.to_bits(), ref_eor_closed_form().to_bits());
    assert!((0.0..=1.0).contains(&printed));
}

#[test]
fn eval_prints_held_below_cutoff() {
    let out = greenbits(&[
        "eval", "--metric", "mec", "--strategy", "cpa", "--H", "50kB", "--g", "0.001", "--gammac", "10",
        "--Pmax", "0.5W", "--B", "200kHz",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value_line(&out), "HELD");
}

#[test]
fn eval_mid_at_zero_gain_is_zero_bits() {
    let out = greenbits(&[
        "eval", "--metric", "mid", "--strategy", "cra", "--E", "80mJ", "--g", "0", "--Pt", "0.2W", "--B",
        "200kHz",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value_line(&out), "0 bits");
}

#[test]
fn eval_units_and_metadata() {
    let out = greenbits(&[
        "eval", "--metric", "mec", "--strategy", "cra", "--H", "50kB", "--g", "-10dB", "--Pt", "200mW", "--B",
        "200kHz",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# greenbits "));
    assert!(text.contains("# timestamp: 2023-11-14T22:13:20Z\n"));
    assert!(text.contains("# N0 = 1e-9 W/Hz\n"), "default N0 is echoed");
    assert!(text.contains("# H = 400000 bits\n"));
    assert!(text.contains("# g = 0.1\n"));
    assert!(!text.contains("seed"));
    assert!(value_line(&out).ends_with(" J"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["eval", "--metric", "eor"],
        vec!["eval", "--metric", "mec", "--strategy", "cra", "--H", "50kB", "--Pt", "0.2", "--B", "2e5"],
        vec!["eval", "--metric", "mec", "--strategy", "cra", "--H", "50kJ", "--Pt", "0.2", "--B", "2e5", "--g", "1"],
        vec!["eval", "--metric", "nope", "--strategy", "cra"],
        vec!["frobnicate"],
        vec!["sweep", "--metric", "eor", "--strategy", "cra", "--sweep", "E_th", "--min", "1", "--max", "2", "--points", "1"],
    ] {
        let out = greenbits(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty() || args[0] == "sweep");
    }
}

#[test]
fn domain_errors_exit_1() {
    let out = greenbits(&[
        "eval", "--metric", "mec", "--strategy", "cra", "--H", "50kB", "--Pt", "-0.2W", "--B", "2e5", "--g", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain error"));

    let out = greenbits(&[
        "eval", "--metric", "mec", "--strategy", "cra", "--H", "50kB", "--Pt", "0.2W", "--B", "2e5", "--g", "0",
    ]);
    assert_eq!(out.status.code(), Some(1), "zero gain needs infinite energy");
}

#[test]
fn verify_passes_for_cra_tuple() {
    let mut args = vec!["verify"];
    args.extend(REF_EOR);
    args.extend(["--n", "1000000", "--seed", "11"]);
    let out = greenbits(&args);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.ends_with("verdict = PASS\n"));
    assert!(text.contains("# seed = 11\n"));
    assert!(text.contains("# generator = ChaCha8Rng"));
    assert!(!text.contains("workers"));
    for key in ["closed_form", "p_hat", "std_error", "gap", "tolerance"] {
        assert!(text.contains(&format!("\n{key} = ")), "{key}");
    }
}

#[test]
fn verify_huge_threshold_passes() {
    let mut args = vec!["verify"];
    args.extend(REF_EOR);
    let i = args.iter().position(|a| *a == "0.05J").unwrap();
    args[i] = "1e30";
    args.extend(["--n", "100000"]);
    let out = greenbits(&args);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0));
    let get = |key: &str| -> f64 {
        text.lines().find_map(|l| l.strip_prefix(&format!("{key} = "))).unwrap().parse().unwrap()
    };
    assert!(get("closed_form") <= 1e-12);
    assert_eq!(get("p_hat"), 0.0);
}

#[test]
fn verify_disagreement_exits_3() {
    // One sample has zero standard error, so only the 1e-4 floor applies.
    let mut args = vec!["verify"];
    args.extend(REF_EOR);
    args.extend(["--n", "1", "--seed", "0"]);
    let out = greenbits(&args);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).ends_with("verdict = FAIL\n"));
}

#[test]
fn verify_degenerate_cutoff_exits_1() {
    let out = greenbits(&[
        "verify", "--metric", "eor", "--strategy", "cpa", "--H", "50kB", "--Eth", "0.05J", "--B", "200kHz",
        "--gammac", "10", "--Pmax", "1e-9", "--fading", "rayleigh", "--gbar", "-10dB", "--n", "1000",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate cutoff"));
}

fn csv_rows(text: &str) -> (String, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn eor_sweep_is_nonincreasing_and_lossless() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eor.csv");
    let mut args = vec!["sweep"];
    args.extend(REF_EOR);
    args.extend(["--sweep", "E_th", "--min", "1mJ", "--max", "1J", "--points", "50", "--spacing", "log"]);
    args.extend(["--out", path.to_str().unwrap()]);
    let out = greenbits(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("# sweep = E_th log from 0.001 J to 1 J, 50 points\n"));
    assert!(!text.contains("# E_th ="), "swept value is not echoed as fixed");
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, "E_th,value");
    assert_eq!(rows.len(), 50);
    let (xs, ys) = (column(&rows, 0), column(&rows, 1));
    assert_eq!((xs[0], xs[49]), (1e-3, 1.0));
    for w in ys.windows(2) {
        assert!(w[1] <= w[0] + 1e-12);
    }
    // Every value re-parses to exactly what the library returns.
    let link = LinkParams::new(2e5, 1e-9).unwrap();
    let cra = CraConfig::new(0.2).unwrap();
    let fading = FadingModel::rayleigh(0.1).unwrap();
    for (row, (&x, &y)) in rows.iter().zip(xs.iter().zip(&ys)) {
        let want = eor_cra(&link, &cra, &fading, DataAmount::new(4e5).unwrap(), EnergyThreshold::new(x).unwrap()).unwrap();
        assert_eq!(y.to_bits(), want.to_bits());
        assert_eq!(format!("{y:.16e}"), row[1], "17 significant digits");
    }
}

#[test]
fn sweeping_an_unused_parameter_gives_a_constant_column() {
    let mut args = vec!["sweep"];
    args.extend(REF_EOR);
    args.extend(["--sweep", "p_max", "--min", "0.2W", "--max", "0.5W", "--points", "2"]);
    let out = greenbits(&args);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, "p_max,value");
    let ys = column(&rows, 1);
    assert_eq!(ys.len(), 2);
    assert_eq!(ys[0].to_bits(), ys[1].to_bits());
}

#[test]
fn ior_sweep_is_nondecreasing() {
    let out = greenbits(&[
        "sweep", "--metric", "ior", "--strategy", "cra", "--E", "80mJ", "--B", "200kHz", "--Pt", "0.2W",
        "--fading", "nakagami", "--m", "2", "--gbar", "-10dB", "--sweep", "H_th", "--min", "1e4", "--max", "1e7",
        "--points", "40", "--spacing", "log",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&out));
    let (xs, ys) = (column(&rows, 0), column(&rows, 1));
    for w in ys.windows(2) {
        assert!(w[1] >= w[0] - 1e-12);
    }
    let link = LinkParams::new(2e5, 1e-9).unwrap();
    let fading = FadingModel::nakagami(2.0, 0.1).unwrap();
    let want = ior_cra(
        &link,
        &CraConfig::new(0.2).unwrap(),
        &fading,
        EnergyAmount::new(0.08).unwrap(),
        EntropyThreshold::new(xs[17]).unwrap(),
    )
    .unwrap();
    assert_eq!(ys[17].to_bits(), want.to_bits());
}

#[test]
fn sweep_avg_gain_db_and_simulated_columns() {
    let mut args = vec!["sweep"];
    args.extend(REF_EOR);
    args.extend(["--sweep", "avg_gain_db", "--min", "-15", "--max", "-5dB", "--points", "3", "--n", "200000", "--seed", "4"]);
    let out = greenbits(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(!text.contains("# avg_gain ="));
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, "avg_gain_db,value,p_hat,std_error");
    assert_eq!(column(&rows, 0), vec![-15.0, -10.0, -5.0]);
    assert_eq!(column(&rows, 1)[1].to_bits(), ref_eor_closed_form().to_bits());
    for row in &rows {
        let (v, p, se): (f64, f64, f64) = (row[1].parse().unwrap(), row[2].parse().unwrap(), row[3].parse().unwrap());
        assert!((v - p).abs() <= (3.0 * se).max(1e-4), "{row:?}");
    }
}

#[test]
fn sweep_to_unwritable_path_exits_1() {
    let mut args = vec!["sweep"];
    args.extend(REF_EOR);
    args.extend(["--sweep", "E_th", "--min", "0.01", "--max", "0.1", "--points", "2", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(greenbits(&args).status.code(), Some(1));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("eor.cfg");
    fs::write(
        &cfg,
        "# EOR vs E_th\nmetric = eor\nstrategy = cra\nfading = rayleigh\nH = 50kB\ngbar = -10dB\nB = 200kHz\nPt = 0.5W\nEth = 0.05J\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = greenbits(&["eval", "--config", cfg, "--Pt", "0.2W"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", String::from_utf8_lossy(&from_file.stderr));
    let mut args = vec!["eval"];
    args.extend(REF_EOR);
    assert_eq!(value_line(&from_file), value_line(&greenbits(&args)));
    assert!(stdout(&from_file).contains("# p_t = 0.2 W\n"));

    let missing = greenbits(&["eval", "--config", "/nonexistent.cfg"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn multiblock_ior_is_simulated_by_eval_and_refused_by_verify() {
    let base = [
        "--metric", "ior", "--strategy", "cra", "--E", "80mJ", "--Pt", "0.2W", "--B", "200kHz", "--Tc", "40ms",
        "--fading", "rayleigh", "--gbar", "-10dB", "--Hth", "4.6e5",
    ];
    let mut args = vec!["eval"];
    args.extend(base);
    args.extend(["--n", "20000", "--seed", "1"]);
    let out = greenbits(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(value_line(&out).contains("(simulated, std_error "));
    assert!(stdout(&out).contains("# seed = 1\n"));

    let mut args = vec!["verify"];
    args.extend(base);
    assert_eq!(greenbits(&args).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(greenbits(&["--help"]).status.code(), Some(0));
    let v = greenbits(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("greenbits "));
}
