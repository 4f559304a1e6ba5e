use std::ffi::{c_char, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use eccn_core::rnn::{save_checkpoint, Mode, Model, Network, SingleLayerRnnParams};
use eccn_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let len = unsafe { eccn_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..len.min(255)].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

fn k8_minus_matching() -> *mut EccnGraph {
    let mut flat = Vec::new();
    for u in 0..8u32 {
        for v in u + 1..8 {
            if !(u % 2 == 0 && v == u + 1) {
                flat.extend([u, v]);
            }
        }
    }
    let mut g = ptr::null_mut();
    let s = unsafe { eccn_graph_from_edges(8, flat.as_ptr(), flat.len() / 2, &mut g) };
    assert_eq!(s, EccnStatus::Ok);
    g
}

#[test]
fn solvers_through_handles() {
    let g = k8_minus_matching();
    let (mut eccn, mut cliques, mut k, mut edges) = (0, 0, 0, 0);
    unsafe {
        assert_eq!(eccn_exact(g, -1, &mut eccn), EccnStatus::Ok);
        assert_eq!(eccn_maximal_clique_count(g, &mut cliques), EccnStatus::Ok);
        assert_eq!(eccn_kellerman(g, &mut k), EccnStatus::Ok);
        assert_eq!(eccn_graph_edge_count(g, &mut edges), EccnStatus::Ok);
        assert_eq!(eccn_exact(g, 0, &mut eccn), EccnStatus::BudgetExhausted);
        eccn_graph_free(g);
    }
    assert_eq!((eccn, cliques, edges), (5, 16, 24));
    assert!(k >= 5);
    assert!(last_error().contains("budget"));
}

#[test]
fn records_and_generation() {
    let rec = CString::new("3\t111").unwrap();
    let mut g = ptr::null_mut();
    let mut n = 0;
    unsafe {
        assert_eq!(eccn_graph_from_record(rec.as_ptr(), &mut g), EccnStatus::Ok);
        assert_eq!(eccn_graph_vertex_count(g, &mut n), EccnStatus::Ok);
        eccn_graph_free(g);
    }
    assert_eq!(n, 3);

    let bad = CString::new("3\t11").unwrap();
    assert_eq!(unsafe { eccn_graph_from_record(bad.as_ptr(), &mut g) }, EccnStatus::Parse);
    assert!(last_error().contains("bits"), "{}", last_error());

    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    let (mut ea, mut eb) = (0, 0);
    unsafe {
        assert_eq!(eccn_graph_er_generate(10, 0.5, 7, &mut a), EccnStatus::Ok);
        assert_eq!(eccn_graph_er_generate(10, 0.5, 7, &mut b), EccnStatus::Ok);
        eccn_graph_edge_count(a, &mut ea);
        eccn_graph_edge_count(b, &mut eb);
        eccn_graph_free(a);
        eccn_graph_free(b);
        assert_eq!(eccn_graph_er_generate(10, 1.5, 7, &mut a), EccnStatus::InvalidArgument);
    }
    assert_eq!(ea, eb);
}

#[test]
fn null_handles_are_reported() {
    let mut out = 0;
    unsafe {
        assert_eq!(eccn_exact(ptr::null(), -1, &mut out), EccnStatus::NullPointer);
        let g = k8_minus_matching();
        assert_eq!(eccn_kellerman(g, ptr::null_mut()), EccnStatus::NullPointer);
        eccn_graph_free(g);
        eccn_graph_free(ptr::null_mut());
        eccn_model_free(ptr::null_mut());
        assert_eq!(eccn_graph_from_record(ptr::null(), &mut ptr::null_mut()), EccnStatus::NullPointer);
    }
}

#[test]
fn bounds() {
    let (mut ratio, mut m, mut single) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(eccn_breakeven_ratio(10, 1, 0.1, 0.1, &mut ratio), EccnStatus::Ok);
        assert_eq!(eccn_sample_complexity_graph(10, 1, 0.1, 0.1, &mut m), EccnStatus::Ok);
        assert_eq!(eccn_sample_complexity_single(1, 1, 0.1, 0.1, &mut single), EccnStatus::Ok);
        assert_eq!(eccn_breakeven_ratio(10, 1, 0.0, 0.1, &mut ratio), EccnStatus::InvalidArgument);
    }
    assert_eq!(format!("{:.2e}", 100.0 * 0.058174), "5.82e0");
    assert!((m / 2.0508e12 - 1.0).abs() < 1e-4, "{m}");
    assert!((single / 6.366_261_7e7 - 1.0).abs() < 1e-6, "{single}");
}

#[test]
fn model_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.ckpt");
    let mut p = SingleLayerRnnParams::zeros(4);
    p.bo = 0.25;
    let model = Model::new(Network::Single(p), Mode::Constrained, 4).unwrap();
    save_checkpoint(&model, &path).unwrap();
    let c_path = CString::new(path.to_str().unwrap()).unwrap();
    let mut m = ptr::null_mut();
    let (mut n_max, mut y) = (0, 0.0);
    unsafe {
        assert_eq!(eccn_model_load(c_path.as_ptr(), &mut m), EccnStatus::Ok);
        assert_eq!(eccn_model_n_max(m, &mut n_max), EccnStatus::Ok);
        let g = k8_minus_matching();
        assert_eq!(eccn_model_predict(m, g, &mut y), EccnStatus::Dimension);
        eccn_graph_free(g);
        let mut small = ptr::null_mut();
        eccn_graph_er_generate(3, 0.5, 1, &mut small);
        assert_eq!(eccn_model_predict(m, small, &mut y), EccnStatus::Ok);
        eccn_graph_free(small);
        eccn_model_free(m);
        let missing = CString::new(dir.path().join("nope").to_str().unwrap()).unwrap();
        assert_eq!(eccn_model_load(missing.as_ptr(), &mut m), EccnStatus::Io);
    }
    assert_eq!((n_max, y), (4, 0.25));
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("eccn.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "ECCN_STATUS_OK",
        "ECCN_STATUS_BUDGET_EXHAUSTED",
        "typedef struct EccnGraph EccnGraph",
        "typedef struct EccnModel EccnModel",
        "eccn_last_error_message",
        "eccn_graph_er_generate",
        "eccn_exact",
        "eccn_breakeven_ratio",
        "eccn_model_predict",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

/// Compile and run a C program against the header and a freshly built static
/// library when a C compiler is available.
#[test]
fn c_program_links() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(cc.status.success());
    // A private target directory keeps this build from contending with the
    // outer cargo invocation and guarantees the archive matches the sources.
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c-link");
    let built = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "-p", "eccn-ffi", "--lib", "--target-dir"])
        .arg(&target)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .status()
        .unwrap();
    assert!(built.success());
    let lib = target.join("debug").join("libeccn_ffi.a");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "eccn.h"
int main(void) {
    EccnGraph *g = NULL;
    size_t k = 0;
    double r = 0.0;
    if (eccn_graph_er_generate(9, 0.5, 3, &g) != ECCN_STATUS_OK) return 1;
    if (eccn_exact(g, -1, &k) != ECCN_STATUS_OK) return 2;
    eccn_graph_free(g);
    if (eccn_breakeven_ratio(10, 1, 0.1, 0.1, &r) != ECCN_STATUS_OK) return 3;
    printf("%zu %.3g\n", k, 100.0 * r);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with(" 5.82"), "{text}");
}
