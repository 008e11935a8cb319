//! Experiment runner for `qrmix-core`: per-group experiments, config-driven
//! sweeps, plot-ready aggregation and the verification suite.

pub mod cli;
pub mod config;
pub mod experiments;
pub mod plotdata;
pub mod sweep;
pub mod verify;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::fmt_float;

    #[test]
    fn floats_round_trip() {
        for x in [0.0, 1.0, 0.1, 1.0 / 3.0, 2f64.sqrt(), 1e-300, f64::MAX, -7.25e-9] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_float(0.5), "5.0000000000000000e-1");
    }
}
