//! Report rows and the CSV/JSON writers.
//!
//! Schema v1: the column set below is frozen; real-valued statistics are
//! serialized with 17 significant digits so identical runs produce
//! byte-identical files. The wall_time_ms column is the one field that
//! varies between otherwise identical runs.

/// Frozen v1 column set.
pub const CSV_HEADER: &str = "scenario,m,m0,alpha,procedure,kind,n_reps,seed,fdr_hat,fwer_hat,se_fdr,bound,bound_satisfied,oracle_value,wall_time_ms";

/// One result row; one per (model, procedure, parameter binding).
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub scenario: String,
    pub m: usize,
    pub m0: usize,
    /// Nominal level of the procedure, when it has one.
    pub alpha: Option<f64>,
    pub procedure: String,
    pub kind: String,
    pub n_reps: usize,
    pub seed: u64,
    pub fdr_hat: f64,
    pub fwer_hat: f64,
    pub se_fdr: f64,
    pub bound: f64,
    pub bound_satisfied: bool,
    /// Exact integrator value where the model supports it.
    pub oracle_value: Option<f64>,
    pub wall_time_ms: u64,
}

/// 17 significant digits, enough to round-trip any f64.
fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_real_csv(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn opt_real_json(x: Option<f64>) -> String {
    x.map(real).unwrap_or_else(|| "null".to_string())
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl ReportRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.scenario,
            self.m,
            self.m0,
            opt_real_csv(self.alpha),
            self.procedure,
            self.kind,
            self.n_reps,
            self.seed,
            real(self.fdr_hat),
            real(self.fwer_hat),
            real(self.se_fdr),
            real(self.bound),
            self.bound_satisfied,
            opt_real_csv(self.oracle_value),
            self.wall_time_ms,
        )
    }

    pub fn to_json_object(&self) -> String {
        format!(
            concat!(
                "{{\"scenario\":{},\"m\":{},\"m0\":{},\"alpha\":{},\"procedure\":{},",
                "\"kind\":{},\"n_reps\":{},\"seed\":{},\"fdr_hat\":{},\"fwer_hat\":{},",
                "\"se_fdr\":{},\"bound\":{},\"bound_satisfied\":{},\"oracle_value\":{},",
                "\"wall_time_ms\":{}}}"
            ),
            json_string(&self.scenario),
            self.m,
            self.m0,
            opt_real_json(self.alpha),
            json_string(&self.procedure),
            json_string(&self.kind),
            self.n_reps,
            self.seed,
            real(self.fdr_hat),
            real(self.fwer_hat),
            real(self.se_fdr),
            real(self.bound),
            self.bound_satisfied,
            opt_real_json(self.oracle_value),
            self.wall_time_ms,
        )
    }
}

pub fn write_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

pub fn write_json(rows: &[ReportRow]) -> String {
    let mut out = String::from("[\n");
    for (i, row) in rows.iter().enumerate() {
        out.push_str("  ");
        out.push_str(&row.to_json_object());
        if i + 1 < rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    out
}
