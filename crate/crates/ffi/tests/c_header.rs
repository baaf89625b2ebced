//! Compiles and runs a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "smallorb.h"

int main(void) {
    SmallorbPolytope *p = NULL;
    size_t params[1] = {3};
    if (smallorb_polytope_generate("cube", params, 1, &p) != SMALLORB_STATUS_OK) return 10;
    int64_t h[4];
    size_t n = 0;
    if (smallorb_h_vector(p, h, 4, &n) != SMALLORB_STATUS_OK || n != 4) return 11;
    if (h[0] != 1 || h[1] != 3 || h[2] != 3 || h[3] != 1) return 12;
    char *report = NULL;
    int32_t code = -1;
    if (smallorb_run_command(p, "toric", 1, &report, &code) != SMALLORB_STATUS_OK) return 13;
    if (code != 0 || strstr(report, "(Z, 0, 0, Z^4, 0, Z)") == NULL) return 14;
    smallorb_string_free(report);
    smallorb_polytope_free(p);
    if (smallorb_polytope_from_json("[]", &p) != SMALLORB_STATUS_PARSE_ERROR) return 15;
    if (strlen(smallorb_last_error()) == 0) return 16;
    puts("ok");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    // CARGO_TARGET_TMPDIR is <target>/tmp; the library sits in <target>/<profile>.
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = tmp.parent().unwrap().join(profile).join("libsmallorb_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let src = tmp.join("smallorb_c_test.c");
    let exe = tmp.join("smallorb_c_test");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler named `cc`");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "C program failed: {:?}", out);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
