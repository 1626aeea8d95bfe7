//! Runs the same battery of closed-form vs quadrature checks as
//! `twoslit validate`, for a configuration given on the command line.
//!
//! `cargo run --example oracle_validation -- 1.0 4.0` sets σ and σ̄.

use twoslit::cli::{validate, RunConfig};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>().expect("number"));
    let mut cfg = RunConfig::default();
    cfg.sigma = args.next().unwrap_or(cfg.sigma);
    cfg.sigma_bar = args.next().unwrap_or(cfg.sigma_bar);

    let report = validate::run(&cfg);
    report.write(&mut std::io::stdout()).expect("stdout");
    std::process::exit(i32::from(report.failures() > 0));
}
