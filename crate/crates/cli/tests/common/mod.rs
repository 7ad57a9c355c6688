use std::path::PathBuf;

/// Golden documents: file stem and argument list.
pub const GOLDEN: &[(&str, &[&str])] = &[
    (
        "ramify_gf2",
        &[
            "ramify", "--field", "GF(2)", "--series", "z + z^2", "--nmax", "2", "--N", "20",
        ],
    ),
    (
        "verify_main_lemma_p3",
        &[
            "verify",
            "main-lemma",
            "--p",
            "3",
            "--q",
            "1",
            "--n",
            "1",
            "--coeffs",
            "1,0",
            "--N",
            "10",
        ],
    ),
    (
        "newton_laurent_gf3",
        &[
            "newton",
            "--field",
            "Laurent(GF(3))",
            "--poly",
            "t*z^2 + z^3",
        ],
    ),
    (
        "sweep_main_lemma",
        &["verify", "main-lemma", "--seed", "20240917", "--cases", "4"],
    ),
    (
        "sweep_semiconj",
        &[
            "verify", "semiconj", "--p", "5", "--seed", "5", "--cases", "3",
        ],
    ),
    (
        "sweep_quasi_invariance",
        &[
            "verify",
            "quasi-invariance",
            "--p",
            "3",
            "--seed",
            "11",
            "--cases",
            "3",
        ],
    ),
    (
        "bounds_desk",
        &[
            "bounds",
            "--field",
            "Laurent(GF(3))",
            "--series",
            "z + t*z^2 + z^3",
            "--n",
            "1",
        ],
    ),
];

pub fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{stem}.json"))
}

/// Runs the library entry point with the program name prepended.
pub fn run(args: &[&str]) -> parabolic_lab::Outcome {
    parabolic_lab::run(std::iter::once("parabolic-lab").chain(args.iter().copied()))
}

#[allow(dead_code)]
/// Compares against the stored document; `PARABOLIC_UPDATE_GOLDEN=1` rewrites it instead.
pub fn check_golden(stem: &str, args: &[&str]) -> Result<(), String> {
    let out = run(args);
    let doc = out
        .json
        .ok_or_else(|| format!("{stem}: no JSON (exit {}): {}", out.code, out.stderr))?;
    let path = golden_path(stem);
    if std::env::var_os("PARABOLIC_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &doc).map_err(|e| e.to_string())?;
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want == doc {
        Ok(())
    } else {
        Err(format!("{stem}: output differs from {}", path.display()))
    }
}
