//! Compiles and runs a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "qhom.h"

int main(void) {
    QhomRing *r = NULL;
    if (qhom_ring_new(101, "x", "x^2", &r) != QHOM_STATUS_OK) return 1;
    QhomModule *k = NULL;
    if (qhom_module_residue_field(r, &k) != QHOM_STATUS_OK) return 2;
    char *json = NULL;
    if (qhom_qid_json(k, 0, &json) != QHOM_STATUS_OK) return 3;
    if (strstr(json, "\"finite\"") == NULL) return 4;
    qhom_string_free(json);
    if (qhom_ring_new(6, "x", "", &r) != QHOM_STATUS_INVALID_INPUT) return 5;
    if (qhom_last_error() == NULL) return 6;
    qhom_module_free(k);
    qhom_ring_free(r);
    printf("ok\n");
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from target/<profile>/deps
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libqhom_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let dir = std::env::temp_dir().join(format!("qhom-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let exe = dir.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
    std::fs::remove_dir_all(&dir).ok();
}
