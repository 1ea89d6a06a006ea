//! results.csv writer: fixed header, 17 significant digits, empty fields
//! for absent quantities.

pub const CSV_HEADER: &str =
    "scenario,xi_1,xi_2,t,l2_diff,rel_entropy,energy,dissipation,piola_residual,constitutive_residual";

/// One row; `None` serializes as an empty field.
#[derive(Clone, Debug, Default)]
pub struct CsvRow {
    pub scenario: &'static str,
    pub xi_1: Option<f64>,
    pub xi_2: Option<f64>,
    pub t: Option<f64>,
    pub l2_diff: Option<f64>,
    pub rel_entropy: Option<f64>,
    pub energy: Option<f64>,
    pub dissipation: Option<f64>,
    pub piola_residual: Option<f64>,
    pub constitutive_residual: Option<f64>,
}

fn field(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => String::new(),
    }
}

pub fn render_csv(rows: &[CsvRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 128);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(r.scenario);
        for v in [
            r.xi_1,
            r.xi_2,
            r.t,
            r.l2_diff,
            r.rel_entropy,
            r.energy,
            r.dissipation,
            r.piola_residual,
            r.constitutive_residual,
        ] {
            out.push(',');
            out.push_str(&field(v));
        }
        out.push('\n');
    }
    out
}

/// Parse a results.csv produced by [`render_csv`] back into rows of
/// optional floats (used by `maxlab fit`).
pub fn parse_csv(text: &str) -> Result<Vec<Vec<Option<f64>>>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty csv")?;
    if header != CSV_HEADER {
        return Err(format!("unexpected header: {header}"));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(format!("line {}: expected 10 fields", i + 2));
        }
        let mut row = Vec::with_capacity(9);
        for f in &fields[1..] {
            if f.is_empty() {
                row.push(None);
            } else {
                row.push(Some(
                    f.parse::<f64>()
                        .map_err(|e| format!("line {}: bad number '{f}': {e}", i + 2))?,
                ));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}
