use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use boba_ffi::*;

const EXAMPLE: [BobaArc; 7] = [
    BobaArc { from: 0, to: 1, c1: 1, c2: 3 },
    BobaArc { from: 1, to: 2, c1: 1, c2: 2 },
    BobaArc { from: 0, to: 2, c1: 3, c2: 4 },
    BobaArc { from: 0, to: 3, c1: 3, c2: 1 },
    BobaArc { from: 3, to: 2, c1: 2, c2: 1 },
    BobaArc { from: 2, to: 4, c1: 2, c2: 1 },
    BobaArc { from: 3, to: 4, c1: 3, c2: 4 },
];

fn example_graph() -> *mut BobaGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { boba_graph_from_arcs(5, EXAMPLE.as_ptr(), EXAMPLE.len(), &mut g) }, BobaStatus::Ok);
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(boba_last_error()) }.to_string_lossy().into_owned()
}

fn costs(front: *const BobaFront) -> Vec<(u64, u64)> {
    (0..unsafe { boba_front_len(front) })
        .map(|i| {
            let (mut c1, mut c2) = (0, 0);
            assert_eq!(unsafe { boba_front_cost(front, i, &mut c1, &mut c2) }, BobaStatus::Ok);
            (c1, c2)
        })
        .collect()
}

#[test]
fn solves_example_with_every_algorithm() {
    let g = example_graph();
    assert_eq!(unsafe { boba_graph_num_states(g) }, 5);
    assert_eq!(unsafe { boba_graph_num_arcs(g) }, 7);
    for algorithm in [BobaAlgorithm::Oracle, BobaAlgorithm::Boa, BobaAlgorithm::BoaEnh, BobaAlgorithm::Boba] {
        for threads in [1, 2] {
            let config = BobaConfig { algorithm, threads, paths: true, ..boba_config_default() };
            let mut front = ptr::null_mut();
            assert_eq!(unsafe { boba_solve(g, 0, 4, &config, &mut front) }, BobaStatus::Ok);
            assert_eq!(costs(front), [(4, 6), (5, 5), (7, 3)]);
            unsafe { boba_front_free(front) };
        }
    }
    unsafe { boba_graph_free(g) };
}

#[test]
fn paths_and_metrics() {
    let g = example_graph();
    let config = BobaConfig { paths: true, ..boba_config_default() };
    let mut front = ptr::null_mut();
    assert_eq!(unsafe { boba_solve(g, 0, 4, &config, &mut front) }, BobaStatus::Ok);
    let mut paths = Vec::new();
    for i in 0..3 {
        let mut len = 0;
        assert_eq!(unsafe { boba_front_path_len(front, i, &mut len) }, BobaStatus::Ok);
        let mut buf = vec![0u32; len];
        assert_eq!(unsafe { boba_front_path_copy(front, i, buf.as_mut_ptr(), len) }, BobaStatus::Ok);
        paths.push(buf);
    }
    assert_eq!(paths, [vec![0, 1, 2, 4], vec![0, 2, 4], vec![0, 3, 2, 4]]);

    let mut small = [0u32; 2];
    assert_eq!(unsafe { boba_front_path_copy(front, 0, small.as_mut_ptr(), 2) }, BobaStatus::BufferTooSmall);

    let mut m = BobaMetrics::default();
    assert_eq!(unsafe { boba_front_metrics(front, &mut m) }, BobaStatus::Ok);
    assert_eq!(m.solutions, 3);
    assert!(m.expanded <= m.generated);
    unsafe {
        boba_front_free(front);
        boba_graph_free(g);
    }
}

#[test]
fn null_handle_default_config_and_unreachable() {
    let g = example_graph();
    let mut front = ptr::null_mut();
    assert_eq!(unsafe { boba_solve(g, 4, 0, ptr::null(), &mut front) }, BobaStatus::Ok);
    assert_eq!(unsafe { boba_front_len(front) }, 0);
    unsafe { boba_front_free(front) };
    unsafe { boba_graph_free(g) };
}

#[test]
fn error_codes() {
    let g = example_graph();
    let mut front = ptr::null_mut();
    assert_eq!(unsafe { boba_solve(g, 0, 9, ptr::null(), &mut front) }, BobaStatus::InvalidState);
    assert!(last_error().contains('9'), "{}", last_error());
    assert!(front.is_null());

    let bad_threads = BobaConfig { threads: 3, ..boba_config_default() };
    assert_eq!(unsafe { boba_solve(g, 0, 4, &bad_threads, &mut front) }, BobaStatus::InvalidArgument);
    assert_eq!(unsafe { boba_solve(ptr::null(), 0, 4, ptr::null(), &mut front) }, BobaStatus::NullPointer);
    assert_eq!(unsafe { boba_solve(g, 0, 4, ptr::null(), ptr::null_mut()) }, BobaStatus::NullPointer);

    assert_eq!(unsafe { boba_solve(g, 0, 4, ptr::null(), &mut front) }, BobaStatus::Ok);
    let (mut c1, mut c2) = (0, 0);
    assert_eq!(unsafe { boba_front_cost(front, 3, &mut c1, &mut c2) }, BobaStatus::OutOfBounds);
    unsafe { boba_front_free(front) };

    let mut g2 = ptr::null_mut();
    let arc = [BobaArc { from: 0, to: 5, c1: 1, c2: 1 }];
    assert_ne!(unsafe { boba_graph_from_arcs(2, arc.as_ptr(), 1, &mut g2) }, BobaStatus::Ok);
    assert!(g2.is_null());

    let missing = CString::new("/nonexistent/x.gr").unwrap();
    assert_eq!(unsafe { boba_graph_from_dimacs(missing.as_ptr(), missing.as_ptr(), &mut g2) }, BobaStatus::Io);

    let name = unsafe { CStr::from_ptr(boba_status_str(BobaStatus::Parse)) };
    assert_eq!(name.to_str().unwrap(), "parse error");
    unsafe { boba_graph_free(g) };
}

#[test]
fn loads_dimacs_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, pick: fn(&BobaArc) -> u64| {
        let mut text = format!("c worked example\np sp 5 {}\n", EXAMPLE.len());
        for a in &EXAMPLE {
            text.push_str(&format!("a {} {} {}\n", a.from + 1, a.to + 1, pick(a)));
        }
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        CString::new(path.to_str().unwrap()).unwrap()
    };
    let (d, t) = (write("d.gr", |a| a.c1), write("t.gr", |a| a.c2));
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { boba_graph_from_dimacs(d.as_ptr(), t.as_ptr(), &mut g) }, BobaStatus::Ok);
    let mut front = ptr::null_mut();
    assert_eq!(unsafe { boba_solve(g, 0, 4, ptr::null(), &mut front) }, BobaStatus::Ok);
    assert_eq!(costs(front), [(4, 6), (5, 5), (7, 3)]);
    unsafe {
        boba_front_free(front);
        boba_graph_free(g);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// The static library built alongside this test binary, if any.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libboba_ffi.a");
    lib.exists().then_some(lib)
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn header_is_current_and_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/boba.h")).unwrap();
    for name in [
        "boba_graph_from_arcs",
        "boba_graph_from_dimacs",
        "boba_solve",
        "boba_front_cost",
        "boba_front_path_copy",
        "boba_front_free",
        "boba_last_error",
        "typedef struct BobaGraph BobaGraph;",
        "BOBA_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    if !have_cc() {
        eprintln!("cc not available; skipping C smoke test");
        return;
    }
    let Some(lib) = static_lib() else {
        eprintln!("libboba_ffi.a not found next to the test binary; skipping C smoke test");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let include: &Path = &crate_dir().join("include");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(include)
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 6 0 1 2 4\n5 5 0 2 4\n7 3 0 3 2 4\ninvalid state id\n");
}
