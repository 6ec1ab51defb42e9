//! Command-line behavior: output formats, exit codes, determinism.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zklp"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("zklp-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn prove_prints_cell_and_attestation() {
    let out = bin()
        .args(["prove", "--lat", "48.8566", "--lng", "2.3522", "--res", "9"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cell res=9 face=3"), "{text}");
    assert!(text.contains("satisfied=true"), "{text}");

    // the emitted cell matches the reference pipeline
    let p = zklp::GeoPoint::from_degrees(48.8566, 2.3522);
    let cell = zklp::reference::latlng_to_ijk(&p, 9);
    assert!(text.contains(&format!(
        "face={} i={} j={} k={}",
        cell.face, cell.coord.i, cell.coord.j, cell.coord.k
    )));
}

#[test]
fn out_of_range_resolution_is_usage_error() {
    let out = bin()
        .args(["prove", "--lat", "0", "--lng", "0", "--res", "16"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_range_latitude_is_usage_error() {
    let out = bin()
        .args(["prove", "--lat", "95", "--lng", "0", "--res", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_vector_reports_exactly_one_failure() {
    let dir = tmp("vecs");
    let out = bin()
        .args(["gen-vectors", "--op", "sqrt", "--precision", "fp32", "--count", "600"])
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let path = dir.join("fp32_sqrt.txt");

    // clean file passes
    let out = bin().arg("testfloat").arg("--file").arg(&path).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("600/600 pass"));

    // flip one expected value (keep it a valid finite pattern)
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let target = lines
        .iter()
        .position(|l| l.starts_with("sqrt") && l.ends_with('0'))
        .unwrap();
    let flipped = format!("{}1", &lines[target][..lines[target].len() - 1]);
    lines[target] = flipped;
    let corrupted = tmp("corrupted_sqrt.txt");
    std::fs::write(&corrupted, lines.join("\n") + "\n").unwrap();

    let out = bin().arg("testfloat").arg("--file").arg(&corrupted).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("599/600 pass"), "{stdout}");
}

#[test]
fn malformed_vector_file_is_usage_error_with_line() {
    let path = tmp("malformed.txt");
    std::fs::write(&path, "zklp-vectors v1 fp32 add\nadd zz 00 00\n").unwrap();
    let out = bin().arg("testfloat").arg("--file").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn suite_report_is_reproducible_byte_for_byte() {
    let corpus_path = tmp("corpus_r2.txt");
    let out = bin()
        .args(["corpus", "--res-lo", "2", "--res-hi", "2"])
        .arg("--out")
        .arg(&corpus_path)
        .output()
        .unwrap();
    assert!(out.status.success());

    let run = || {
        let out = bin()
            .args(["zklp-suite", "--precision", "fp64"])
            .arg("--corpus")
            .arg(&corpus_path)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b);
    assert!(a.contains("zklp-suite v1"));
    assert!(a.contains("1.0000"), "{a}");
}

#[test]
fn bench_per_op_decreases_and_table_grows_fixed_cost() {
    let out = bin()
        .args(["bench", "--precision", "fp32", "--batches", "2,32,1024"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(3)
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    // per-op strictly decreases with the batch
    assert!(rows[0][5] > rows[1][5] && rows[1][5] > rows[2][5], "{text}");

    // a larger range table raises the fixed cost and lowers per-query cost
    let big = bin()
        .args(["bench", "--precision", "fp32", "--batches", "1024", "--chunk-bits", "10"])
        .output()
        .unwrap();
    assert!(big.status.success());
    let big_text = String::from_utf8(big.stdout).unwrap();
    let big_row: Vec<f64> = big_text
        .lines()
        .nth(3)
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    // the fixed per-entry part (lookup minus per-query) grows with the table
    assert!(big_row[2] - big_row[3] > rows[2][2] - rows[2][3], "{big_text} vs {text}");
    // while wider chunks need fewer queries per op (column 3 = query count)
    assert!(big_row[3] < rows[2][3]);
}

#[test]
fn proximity_at_a_boundary_vertex_is_zero() {
    let p = zklp::GeoPoint::from_degrees(40.0, -100.0);
    let cell = zklp::reference::latlng_to_ijk(&p, 6);
    let verts = zklp::reference::cell_boundary(&cell, 6);
    let v = verts[2];
    let out = bin()
        .args([
            "proximity",
            "--lat",
            &format!("{:.15}", v.lat.to_degrees()),
            "--lng",
            &format!("{:.15}", v.lng.to_degrees()),
            "--cell",
            &format!("6 {} {} {} {}", cell.face, cell.coord.i, cell.coord.j, cell.coord.k),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let km: f64 = text.trim().strip_prefix("min_vertex_distance_km=").unwrap().parse().unwrap();
    assert!(km < 1e-6, "{text}");

    // cell center distance is positive and below the circumradius
    let center = zklp::reference::cell_center(&cell, 6);
    let out = bin()
        .args([
            "proximity",
            "--lat",
            &format!("{:.15}", center.lat.to_degrees()),
            "--lng",
            &format!("{:.15}", center.lng.to_degrees()),
            "--cell",
            &format!("6 {} {} {} {}", cell.face, cell.coord.i, cell.coord.j, cell.coord.k),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let km: f64 = text.trim().strip_prefix("min_vertex_distance_km=").unwrap().parse().unwrap();
    let inradius_km =
        zklp::reference::center_to_boundary_distance(&cell, 6) * zklp::EARTH_RADIUS_KM;
    assert!(km > 0.0 && km < inradius_km * 2.0, "{km} vs {inradius_km}");

    // malformed cell record
    let out = bin()
        .args(["proximity", "--lat", "0", "--lng", "0", "--cell", "6 3 1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
