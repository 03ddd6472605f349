//! Deterministic text rendering for CSV output.

use cvsteer::{Criterion, SweepResult};

/// Significant digits kept in CSV output.
pub const SIG_DIGITS: usize = 10;

/// Rounds to [`SIG_DIGITS`] significant digits, then prints the shortest
/// decimal that reads back to the rounded value. `-0` prints as `0`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{:.*e}", SIG_DIGITS - 1, v)
        .parse()
        .expect("round trip of formatted float");
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if (1e-4..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// CSV column name of a criterion.
pub fn column(c: Criterion) -> &'static str {
    match c {
        Criterion::Reid => "i_reid",
        Criterion::Entropic => "i_ent",
        Criterion::Chsh => "i_chsh",
    }
}

/// `theta,i_reid,i_ent,i_chsh`, with unrequested columns omitted.
pub fn sweep_csv(s: &SweepResult) -> String {
    let cols: Vec<(Criterion, &[f64])> = Criterion::ALL
        .iter()
        .filter_map(|&c| s.values_of(c).map(|v| (c, v)))
        .collect();
    let mut out = String::from("theta");
    for (c, _) in &cols {
        out.push(',');
        out.push_str(column(*c));
    }
    out.push('\n');
    for (i, &theta) in s.thetas.iter().enumerate() {
        out.push_str(&format_float(theta));
        for (_, vals) in &cols {
            out.push(',');
            out.push_str(&format_float(vals[i]));
        }
        out.push('\n');
    }
    out
}
