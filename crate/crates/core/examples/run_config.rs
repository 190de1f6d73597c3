//! Driving the batch runner from code.
//!
//! Builds config text in memory, validates it and prints the report the
//! `geophase run` command would write.
//!
//! ```bash
//! cargo run --example run_config
//! ```

use std::path::Path;

use geophase::cli::{parse_config, run_task};

const CONFIGS: &[&str] = &[
    r#"{
        "task": "aa_phase",
        "dimension": 2,
        "generator": {
            "preset": "spin_half_rotating_field",
            "params": {"B": 1.0, "theta_c": 1.5707963267948966, "omega": 1.0}
        },
        "time": {"steps": 4000}
    }"#,
    r#"{
        "task": "pancharatnam",
        "dimension": 2,
        "states": [[[1, 0], [0, 0]], [[0.35355339059327373, 0.6123724356957945], [0.35355339059327373, 0.6123724356957945]]]
    }"#,
    r#"{"task": "stokes_check", "dimension": 2, "patch": {"shape": "octant", "refinement": 16}}"#,
    r#"{"task": "gauge_audit", "dimension": 2, "seed": 7, "trials": 20}"#,
];

fn main() {
    for text in CONFIGS {
        let cfg = match parse_config(text, Path::new(".")) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("config error: {e}");
                continue;
            }
        };
        match run_task(&cfg).and_then(|o| o.report.to_json()) {
            Ok(json) => print!("{json}"),
            Err(e) => eprintln!("error[{}]: {e}", e.category()),
        }
    }
    // a misspelt key is fatal and named
    let bad = r#"{"task": "gauge_audit", "dimension": 2, "trails": 20}"#;
    if let Err(e) = parse_config(bad, Path::new(".")) {
        println!("rejected: {e}");
    }
}
