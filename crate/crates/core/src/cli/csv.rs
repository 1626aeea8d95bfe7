use std::io::{self, Write};

use super::{RunConfig, SweepRow};
use crate::twoparticle::DetectionPattern;

/// 17 significant digits, locale independent.
pub(crate) fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn header(w: &mut dyn Write, cfg: &RunConfig, command: &str) -> io::Result<()> {
    writeln!(w, "# twoslit {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# command: {command}")?;
    for (key, value, unit) in [
        ("sigma", cfg.sigma, "um^-1"),
        ("sigma_bar", cfg.sigma_bar, "um^-1"),
        ("b", cfg.b, "um"),
        ("x0", cfg.x0, "um"),
        ("tau_s", cfg.tau_s, "um^2"),
        ("tau_d", cfg.tau_d, "um^2"),
    ] {
        writeln!(w, "# {key} = {} [{unit}]", num(value))?;
    }
    Ok(())
}

pub fn write_pattern_csv(
    w: &mut dyn Write,
    cfg: &RunConfig,
    command: &str,
    pattern: &DetectionPattern,
) -> io::Result<()> {
    header(w, cfg, command)?;
    writeln!(w, "# x_fixed = {} [um]", num(pattern.x_fixed))?;
    writeln!(
        w,
        "# y grid: {} points on [{}, {}] (default range; reference figures give no axis limits)",
        cfg.y_steps,
        num(cfg.y_min),
        num(cfg.y_max)
    )?;
    writeln!(w, "# units: y [um], densities [um^-2]")?;

    let mut names = vec!["y"];
    names.extend(pattern.columns.iter().map(|(s, _)| s.column()));
    writeln!(w, "{}", names.join(","))?;
    for (i, y) in pattern.y.iter().enumerate() {
        let mut row = num(*y);
        for (_, col) in &pattern.columns {
            row.push(',');
            row.push_str(&num(col[i]));
        }
        writeln!(w, "{row}")?;
    }
    Ok(())
}

pub fn write_sweep_csv(w: &mut dyn Write, cfg: &RunConfig, command: &str, rows: &[SweepRow]) -> io::Result<()> {
    header(w, cfg, command)?;
    writeln!(
        w,
        "# sigma_bar sweep: {} points on [{}, {}]",
        cfg.sweep_steps,
        num(cfg.sweep_min),
        num(cfg.sweep_max)
    )?;
    writeln!(w, "# initial_overlap = 2 sigma sigma_bar / (sigma^2 + sigma_bar^2); final_overlap_sq = |<psi|phi>|^2 after the slits")?;
    writeln!(w, "sigma_bar,initial_overlap,final_overlap_sq")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{}",
            num(r.sigma_bar),
            num(r.initial_overlap),
            num(r.final_overlap_sq)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twoparticle::Statistics;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(1.0), "1.0000000000000000e0");
        assert_eq!(num(-0.1), "-1.0000000000000001e-1");
        let v = 0.123_482_924_075_642_14_f64;
        assert_eq!(num(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn pattern_layout() {
        let cfg = RunConfig::default();
        let pattern = DetectionPattern {
            x_fixed: 0.0,
            y: vec![-1.0, 1.0],
            columns: vec![(Statistics::Boson, vec![0.5, 0.5])],
        };
        let mut out = Vec::new();
        write_pattern_csv(&mut out, &cfg, "pattern", &pattern).unwrap();
        let text = String::from_utf8(out).unwrap();
        let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "y,P_boson");
        assert_eq!(data[1], "-1.0000000000000000e0,5.0000000000000000e-1");
        assert_eq!(data.len(), 3);
    }
}
