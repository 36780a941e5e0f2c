//! The CLI invocations whose JSON output is kept as golden files.

use std::path::{Path, PathBuf};

/// (golden name, arguments)
pub const GOLDEN_RUNS: &[(&str, &[&str])] = &[
    (
        "check",
        &[
            "check",
            "--json",
            "corpus/realizability.fml",
            "corpus/schematic.fml",
            "corpus/arithmetic.fml",
        ],
    ),
    (
        "classify",
        &[
            "classify",
            "--json",
            "corpus/realizability.fml",
            "corpus/schematic.fml",
        ],
    ),
    (
        "classify_liberal",
        &["classify", "--json", "--liberal-qf", "corpus/schematic.fml"],
    ),
    (
        "mr",
        &[
            "mr",
            "--json",
            "corpus/realizability.fml",
            "corpus/schematic.fml",
        ],
    ),
    (
        "mr_types",
        &[
            "mr-types",
            "--json",
            "corpus/realizability.fml",
            "corpus/schematic.fml",
        ],
    ),
    (
        "dialectica",
        &[
            "dialectica",
            "--json",
            "corpus/realizability.fml",
            "corpus/schematic.fml",
        ],
    ),
    (
        "d_types",
        &[
            "d-types",
            "--json",
            "corpus/realizability.fml",
            "corpus/schematic.fml",
        ],
    ),
    (
        "seq",
        &[
            "seq",
            "--json",
            "corpus/realizability.fml",
            "corpus/schematic.fml",
        ],
    ),
    (
        "report",
        &[
            "report",
            "--json",
            "corpus/realizability.fml",
            "corpus/schematic.fml",
        ],
    ),
    (
        "eval",
        &["eval", "--json", "--trace", "corpus/arithmetic.fml"],
    ),
    ("decide", &["decide", "--json", "corpus/arithmetic.fml"]),
    (
        "witness",
        &[
            "witness",
            "--json",
            "--range",
            "0..20",
            "--realizer",
            "zero",
            "--item",
            "double",
            "corpus/realizability.fml",
        ],
    ),
    (
        "witness_mr",
        &[
            "witness",
            "--json",
            "--mr",
            "--realizer",
            "succ",
            "--item",
            "succ_exists",
            "corpus/realizability.fml",
        ],
    ),
    (
        "errors",
        &[
            "decide",
            "--json",
            "--max-steps",
            "1000",
            "corpus/errors.fml",
        ],
    ),
];

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}
