use std::path::Path;
use std::process::Command;

fn header() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/ultrapart.h")
}

#[test]
fn header_declares_api() {
    let text = std::fs::read_to_string(header()).expect("build script writes the header");
    for name in [
        "typedef struct UpLattice UpLattice",
        "typedef struct UpEpPartition UpEpPartition",
        "typedef struct UpScPartition UpScPartition",
        "UP_STATUS_OK = 0",
        "UP_STATUS_BOTTOM",
        "up_last_error_message(void)",
        "up_string_free(char *s)",
        "up_lattice_parse(",
        "up_ep_fine_join(",
        "up_ep_witness_fine(",
        "up_sc_leq_star(",
    ] {
        assert!(text.contains(name), "missing `{name}`");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let dir = std::env::temp_dir().join(format!("ultrapart-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        "#include \"ultrapart.h\"\n\
         int probe(void) {\n\
           UpEpPartition *p = 0;\n\
           UpStatus s = up_ep_parse(\"ep;prefix=;period=0,1\", &p);\n\
           up_ep_free(p);\n\
           return s == UP_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let include = header().parent().unwrap().to_path_buf();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| {
            Command::new(c)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        })
        .ok_or(())
}
