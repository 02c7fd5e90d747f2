use std::path::Path;
use std::process::Command;

fn header_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hopf_critical.h")
}

#[test]
fn header_declares_public_api() {
    let h = std::fs::read_to_string(header_path()).expect("header generated by build script");
    for name in [
        "HC_STATUS_OK",
        "HC_STATUS_PARSE_ERROR",
        "typedef struct HcDescriptor HcDescriptor",
        "typedef struct HcGraph HcGraph",
        "typedef struct HcScan HcScan",
        "hc_last_error_message",
        "hc_algebra_mul",
        "hc_descriptor_parse",
        "hc_lower_bound",
        "hc_graph_assemble",
        "hc_phi_verdict",
        "hc_gysin_unknown_rank",
        "hc_critical_scan",
        "hc_scan_free",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(header_path())
        .output()
    else {
        eprintln!("cc not available; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
