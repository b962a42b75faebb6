use std::ffi::{c_char, c_int, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use ksgraph_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    ksg_string_free(s);
    out
}

unsafe fn catalog(name: &str) -> *mut KsgGraph {
    let mut g = ptr::null_mut();
    assert_eq!(ksg_graph_from_catalog(cstr(name).as_ptr(), &mut g), KsgStatus::Ok);
    g
}

unsafe fn last_error() -> String {
    CStr::from_ptr(ksg_last_error_message()).to_str().unwrap().to_string()
}

#[test]
fn invariants_of_yu_oh_graph() {
    unsafe {
        let g = catalog("G_YO");
        assert_eq!(ksg_graph_vertex_count(g), 13);
        assert_eq!(ksg_graph_edge_count(g), 24);
        let mut omega = 0;
        let mut chi = 0;
        assert_eq!(ksg_clique_number(g, &mut omega), KsgStatus::Ok);
        assert_eq!(ksg_chromatic_number(g, &mut chi), KsgStatus::Ok);
        assert_eq!((omega, chi), (3, 4));
        let mut chi_f = ptr::null_mut();
        assert_eq!(ksg_fractional_chromatic_number(g, &mut chi_f), KsgStatus::Ok);
        assert_eq!(take(chi_f), "35/11");
        ksg_graph_free(g);
    }
}

#[test]
fn sic_certificate_round_trip() {
    unsafe {
        let g = catalog("J_GYO_GYO");
        let mut is_sic: c_int = -1;
        let mut cert = ptr::null_mut();
        assert_eq!(ksg_sic_test(g, 7, 1, &mut is_sic, &mut cert), KsgStatus::Ok);
        assert_eq!(is_sic, 0);
        let json = take(cert);
        assert!(json.contains("\"decomposition\""));

        let mut valid: c_int = -1;
        let mut failure = ptr::null_mut();
        let text = cstr(&json);
        assert_eq!(ksg_verify_certificate(g, text.as_ptr(), &mut valid, &mut failure), KsgStatus::Ok);
        assert_eq!(valid, 1);
        assert!(failure.is_null());

        let tampered = cstr(&json.replacen("\"is_sic\": false", "\"is_sic\": true", 1));
        assert_eq!(ksg_verify_certificate(g, tampered.as_ptr(), &mut valid, &mut failure), KsgStatus::Ok);
        assert_eq!(valid, 0);
        assert!(!take(failure).is_empty());
        ksg_graph_free(g);
    }
}

#[test]
fn graphs_from_edges_and_text() {
    unsafe {
        let edges: [usize; 10] = [0, 1, 1, 2, 2, 3, 3, 4, 4, 0];
        let mut g = ptr::null_mut();
        assert_eq!(ksg_graph_from_edges(5, edges.as_ptr(), 5, &mut g), KsgStatus::Ok);
        let mut chi_f = ptr::null_mut();
        assert_eq!(ksg_fractional_chromatic_number(g, &mut chi_f), KsgStatus::Ok);
        assert_eq!(take(chi_f), "5/2");
        ksg_graph_free(g);

        let src = cstr("p ograph 3 3\ne 1 2\ne 2 3\ne 1 3\n");
        assert_eq!(ksg_graph_from_ograph(src.as_ptr(), &mut g), KsgStatus::Ok);
        assert_eq!(ksg_graph_edge_count(g), 3);
        ksg_graph_free(g);

        let bad = cstr("p ograph 3 1\ne 1 1\n");
        assert_eq!(ksg_graph_from_ograph(bad.as_ptr(), &mut g), KsgStatus::ParseError);
        assert!(last_error().contains("line 2"));
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(ksg_graph_from_catalog(ptr::null(), &mut g), KsgStatus::NullPointer);
        assert_eq!(ksg_graph_from_catalog(cstr("nope").as_ptr(), &mut g), KsgStatus::NotFound);
        assert!(last_error().contains("nope"));
        let edges: [usize; 2] = [0, 7];
        assert_eq!(ksg_graph_from_edges(3, edges.as_ptr(), 1, &mut g), KsgStatus::InvalidArgument);
        let mut out = 0;
        assert_eq!(ksg_clique_number(ptr::null(), &mut out), KsgStatus::NullPointer);
        let k3 = catalog("K3");
        let mut is_sic = 0;
        assert_eq!(ksg_sic_test(k3, 1, 2, &mut is_sic, ptr::null_mut()), KsgStatus::InvalidArgument);
        ksg_graph_free(k3);
        ksg_graph_free(ptr::null_mut());
        ksg_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(ksg_version()).to_str().unwrap().is_empty());
    }
}

fn data(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn measure_through_the_abi() {
    unsafe {
        let g = catalog("G_YO");
        let ps = cstr(&data("yu_oh_projectors.json"));
        let mut value = -1.0;
        let mut result = ptr::null_mut();
        assert_eq!(ksg_measure(g, ps.as_ptr(), ptr::null(), 0.0, &mut value, &mut result), KsgStatus::Ok);
        assert!(value > 1e-6);
        assert!(take(result).contains("value_nats"));

        let c13 = catalog("C13");
        assert_eq!(
            ksg_measure(c13, ps.as_ptr(), ptr::null(), 0.0, &mut value, ptr::null_mut()),
            KsgStatus::ValidationFailed
        );
        let k4 = catalog("K4");
        assert_eq!(
            ksg_measure(k4, ps.as_ptr(), ptr::null(), 0.0, &mut value, ptr::null_mut()),
            KsgStatus::InvalidArgument
        );
        ksg_graph_free(c13);
        ksg_graph_free(k4);
        ksg_graph_free(g);
    }
}

/// The generated header compiles as C and a C program links against the
/// static library.
#[test]
fn c_program_links_against_static_library() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    assert!(header_dir.join("ksgraph.h").exists());
    // CARGO_TARGET_TMPDIR is <target>/tmp; the library sits in <target>/<profile>
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).parent().unwrap();
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libksgraph_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("ksgraph_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&header_dir)
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
