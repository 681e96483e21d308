//! Table, CSV and JSON writers.

use std::io::Write;

use serde::Serialize;

use crate::error::CliError;

const PREFIXES: [(i32, &str); 15] = [
    (-24, "y"),
    (-21, "z"),
    (-18, "a"),
    (-15, "f"),
    (-12, "p"),
    (-9, "n"),
    (-6, "µ"),
    (-3, "m"),
    (0, ""),
    (3, "k"),
    (6, "M"),
    (9, "G"),
    (12, "T"),
    (15, "P"),
    (18, "E"),
];

/// `v` with an automatically chosen SI prefix and four significant digits,
/// e.g. `101.7 kHz`.
pub fn si(v: f64, unit: &str) -> String {
    if v == 0.0 {
        return format!("0 {unit}");
    }
    if !v.is_finite() {
        return format!("{v} {unit}");
    }
    let exp3 = ((v.abs().log10() / 3.0).floor() as i32 * 3).clamp(-24, 18);
    let (exp, prefix) = PREFIXES.iter().find(|(e, _)| *e == exp3).copied().unwrap_or((0, ""));
    let mut m = v / 10f64.powi(exp);
    // Rounding may carry into the next prefix (999.96 → 1000.0).
    let mut p = prefix;
    if m.abs() >= 999.95 && exp < 18 {
        m /= 1000.0;
        p = PREFIXES.iter().find(|(e, _)| *e == exp + 3).map_or("", |(_, s)| s);
    }
    let decimals = match m.abs() {
        a if a >= 100.0 => 1,
        a if a >= 10.0 => 2,
        _ => 3,
    };
    format!("{m:.decimals$} {p}{unit}")
}

/// Compact general-purpose number formatting for dimensionless table cells.
pub fn num(v: f64) -> String {
    if v == 0.0 || (1e-3..1e5).contains(&v.abs()) {
        format!("{}", (v * 1e4).round() / 1e4)
    } else {
        format!("{v:.3e}")
    }
}

pub fn radius(r_um: f64) -> String {
    if r_um.is_infinite() {
        if r_um > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{r_um} µm")
    }
}

/// Rows that can be rendered as an aligned text table.
pub trait Tabular {
    fn headers() -> Vec<&'static str>;
    fn cells(&self) -> Vec<String>;
}

pub fn write_table<T: Tabular>(rows: &[T], out: &mut dyn Write) -> Result<(), CliError> {
    let headers = T::headers();
    let body: Vec<Vec<String>> = rows.iter().map(Tabular::cells).collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = *w))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(headers.iter().map(|h| h.to_string()).collect()))?;
    writeln!(out, "{}", line(widths.iter().map(|w| "-".repeat(*w)).collect()))?;
    for row in body {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}

pub fn write_csv<T: Serialize>(rows: &[T], out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_prefixes() {
        assert_eq!(si(101_700.0, "Hz"), "101.7 kHz");
        assert_eq!(si(1.94468e6, "Hz"), "1.945 MHz");
        assert_eq!(si(4.46e-4, "Hz"), "446.0 µHz");
        assert_eq!(si(-3510.52, "Hz"), "-3.511 kHz");
        assert_eq!(si(999.96, "Hz"), "1.000 kHz");
        assert_eq!(si(0.0, "Hz"), "0 Hz");
        assert_eq!(si(1.2e-10, "Hz"), "120.0 pHz");
        assert_eq!(si(3.5e11, "Hz"), "350.0 GHz");
    }

    #[test]
    fn numbers_and_radii() {
        assert_eq!(num(2.0834), "2.0834");
        assert_eq!(num(1.6e9), "1.600e9");
        assert_eq!(radius(f64::INFINITY), "inf");
        assert_eq!(radius(1.5), "1.5 µm");
    }
}
