//! Deterministic text serialization of reports: CSV (header row, LF endings)
//! and JSON with a fixed key order. Counts are printed exactly; every
//! probability and spectral constant is rendered with 12 significant digits,
//! so identical inputs produce byte-identical output.

use std::fmt::Write as _;

use crate::gap_census::CensusReport;
use crate::spectral::SpectralSummary;

/// Default significant digits for probabilities and constants.
pub const REPORT_SIG_DIGITS: usize = 12;

/// Renders `x` with `sig` significant digits in positional notation,
/// falling back to exponential form for extreme magnitudes. Output is a
/// valid JSON number for finite inputs.
pub fn format_sig(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.*e}", sig - 1, x);
    let (mant, exp) = s.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..18).contains(&exp) {
        return s;
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp >= 0 {
        let e = exp as usize;
        if e + 1 >= digits.len() {
            out.push_str(&digits);
            for _ in 0..e + 1 - digits.len() {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..e + 1]);
            out.push('.');
            out.push_str(&digits[e + 1..]);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-exp - 1) as usize {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// CSV form of a comparison report. Columns `j, count, p_empirical,
/// p_theory, abs_err`; when the report carries the `P(g)` candidate
/// experiment, two extra columns hold both closed forms on the row `j = g`.
pub fn census_csv(r: &CensusReport) -> String {
    let mut out = String::new();
    out.push_str("j,count,p_empirical,p_theory,abs_err");
    if r.pg.is_some() {
        out.push_str(",p_theory_unweighted,p_theory_weighted");
    }
    out.push('\n');
    for row in &r.rows {
        let _ = write!(
            out,
            "{},{},{},{},{}",
            row.j,
            row.count,
            format_sig(row.p_empirical, REPORT_SIG_DIGITS),
            format_sig(row.p_theory, REPORT_SIG_DIGITS),
            format_sig(row.abs_err, REPORT_SIG_DIGITS),
        );
        if let Some(pg) = r.pg {
            if row.j == pg.j {
                let _ = write!(
                    out,
                    ",{},{}",
                    format_sig(pg.unweighted, REPORT_SIG_DIGITS),
                    format_sig(pg.weighted, REPORT_SIG_DIGITS),
                );
            } else {
                out.push_str(",,");
            }
        }
        out.push('\n');
    }
    out
}

fn opt_u32(v: Option<u32>) -> String {
    v.map_or_else(|| "null".to_string(), |x| x.to_string())
}

/// JSON form of a comparison report:
/// `{g, l, fardiff?, n, Y, rows, pg?, maxAbsErr, empty}`.
pub fn census_json(r: &CensusReport) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"g\":{},\"l\":{}", opt_u32(r.g), opt_u32(r.hops));
    if r.fardiff {
        out.push_str(",\"fardiff\":true");
    }
    let _ = write!(out, ",\"n\":{},\"Y\":{},\"rows\":[", r.n, r.total);
    for (k, row) in r.rows.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(
            out,
            "{{\"j\":{},\"count\":{},\"pEmpirical\":{},\"pTheory\":{},\"absErr\":{}}}",
            row.j,
            row.count,
            format_sig(row.p_empirical, REPORT_SIG_DIGITS),
            format_sig(row.p_theory, REPORT_SIG_DIGITS),
            format_sig(row.abs_err, REPORT_SIG_DIGITS),
        );
    }
    out.push(']');
    if let Some(pg) = r.pg {
        let _ = write!(
            out,
            ",\"pg\":{{\"j\":{},\"unweighted\":{},\"weighted\":{}}}",
            pg.j,
            format_sig(pg.unweighted, REPORT_SIG_DIGITS),
            format_sig(pg.weighted, REPORT_SIG_DIGITS),
        );
    }
    let _ = write!(
        out,
        ",\"maxAbsErr\":{},\"empty\":{}}}",
        format_sig(r.max_abs_err, REPORT_SIG_DIGITS),
        r.empty,
    );
    out
}

fn opt_f64(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_string(), |x| format_sig(x, REPORT_SIG_DIGITS))
}

/// JSON form of a spectral summary:
/// `{g, l, lambda1, a1, cLek, dominanceMargin, roots?, alpha?, warnings}`.
/// Roots are `[re, im]` pairs in decreasing modulus order.
pub fn spectral_json(s: &SpectralSummary<f64>) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\"g\":{},\"l\":{},\"lambda1\":{},\"a1\":{},\"cLek\":{},\"dominanceMargin\":{}",
        opt_u32(s.g),
        opt_u32(s.hops),
        format_sig(s.lambda1, REPORT_SIG_DIGITS),
        format_sig(s.a1, REPORT_SIG_DIGITS),
        opt_f64(s.c_lek),
        opt_f64(s.dominance_margin),
    );
    if let Some(roots) = &s.roots {
        out.push_str(",\"roots\":[");
        for (k, r) in roots.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "[{},{}]",
                format_sig(r.re, REPORT_SIG_DIGITS),
                format_sig(r.im, REPORT_SIG_DIGITS),
            );
        }
        out.push(']');
    }
    if let Some(alpha) = s.alpha {
        let _ = write!(out, ",\"alpha\":{}", format_sig(alpha, REPORT_SIG_DIGITS));
    }
    out.push_str(",\"warnings\":[");
    for (k, w) in s.warnings.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "\"{}\"", json_escape(w));
    }
    out.push_str("]}");
    out
}
