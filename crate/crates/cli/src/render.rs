//! CSV, JSON and text renderings of evaluated rows.

use serde_json::{json, Map, Value};
use spinflip::{Depth, Permittivity, ValidityReport};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::eval::Row;

pub const COLUMNS: [&str; 19] = [
    "axis_value",
    "temperature_K",
    "distance_m",
    "frequency_hz",
    "material",
    "method",
    "n_th",
    "eps_re",
    "eps_im",
    "lambda_L_m",
    "skin_depth_m",
    "I_par",
    "I_perp",
    "gamma0_per_s",
    "gamma_slab_per_s",
    "gamma_total_per_s",
    "tau_s",
    "rel_err",
    "status",
];

/// Scientific notation with 12 significant digits; non-finite values become empty.
pub fn number(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => format!("{v:.11e}"),
        _ => String::new(),
    }
}

fn depth(d: Depth) -> Option<f64> {
    d.finite()
}

fn finite(x: Option<f64>) -> Value {
    match x {
        Some(v) if v.is_finite() => json!(v),
        _ => Value::Null,
    }
}

enum Cell {
    Num(Option<f64>),
    Text(String),
}

fn cells(row: &Row) -> [Cell; 19] {
    let s = &row.scenario;
    let eps = match row.medium.epsilon {
        Permittivity::Dielectric(e) => Some(e),
        Permittivity::PerfectConductor => None,
    };
    let r = row.rate();
    [
        Cell::Num(row.axis_value),
        Cell::Num(Some(s.temperature_k)),
        Cell::Num(Some(s.distance_m)),
        Cell::Num(Some(s.transition.frequency_hz)),
        Cell::Text(row.material.clone()),
        Cell::Text(row.method.to_string()),
        Cell::Num(r.map(|r| r.n_th)),
        Cell::Num(eps.map(|e| e.re)),
        Cell::Num(eps.map(|e| e.im)),
        Cell::Num(depth(row.medium.lambda_l)),
        Cell::Num(depth(row.medium.skin_depth)),
        Cell::Num(r.and_then(|r| r.i_par)),
        Cell::Num(r.and_then(|r| r.i_perp)),
        Cell::Num(r.map(|r| r.gamma0)),
        Cell::Num(r.map(|r| r.gamma_slab)),
        Cell::Num(r.map(|r| r.gamma_total)),
        Cell::Num(r.map(|r| r.tau)),
        Cell::Num(r.and_then(|r| r.error_estimate)),
        Cell::Text(row.status().to_string()),
    ]
}

pub fn csv(rows: &[Row], meta: Option<&[String]>) -> Result<String, CliError> {
    let mut out = String::new();
    if let Some(lines) = meta {
        for l in lines {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(COLUMNS).map_err(io)?;
    for row in rows {
        let record = cells(row).map(|c| match c {
            Cell::Num(x) => number(x),
            Cell::Text(t) => t,
        });
        w.write_record(&record).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    Ok(out)
}

pub fn row_json(row: &Row) -> Value {
    let mut m = Map::new();
    for (name, c) in COLUMNS.iter().zip(cells(row)) {
        let v = match c {
            Cell::Num(x) => finite(x),
            Cell::Text(t) => Value::String(t),
        };
        m.insert(name.to_string(), v);
    }
    Value::Object(m)
}

pub fn validity_json(report: &ValidityReport) -> Value {
    Value::Array(
        report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "ratio": finite(Some(c.ratio)),
                    "threshold": c.threshold,
                    "passed": c.passed,
                })
            })
            .collect(),
    )
}

/// `{"config": …, "rows": […], …extra}`; the config object is accepted back by `--config`.
pub fn json_document(
    config: &RunConfig,
    rows: &[Row],
    extra: Map<String, Value>,
    meta: Option<&[String]>,
) -> String {
    let mut doc = Map::new();
    if let Some(lines) = meta {
        doc.insert("meta".into(), json!(lines));
    }
    doc.insert(
        "config".into(),
        serde_json::to_value(config).expect("config serializes"),
    );
    doc.insert(
        "rows".into(),
        Value::Array(rows.iter().map(row_json).collect()),
    );
    doc.extend(extra);
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json serializes");
    s.push('\n');
    s
}

pub fn text(rows: &[Row], report: &ValidityReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<22} {v}\n"));
    let Some(first) = rows.first() else {
        return String::new();
    };
    let s = &first.scenario;
    let m = &first.medium;
    line(
        "material",
        format!("{} ({})", first.material, s.material.kind()),
    );
    line("temperature_K", number(Some(s.temperature_k)));
    line("distance_m", number(Some(s.distance_m)));
    line("frequency_hz", number(Some(s.transition.frequency_hz)));
    line("kz", number(Some(s.kz())));
    match m.epsilon {
        Permittivity::Dielectric(e) => {
            line("eps_re", number(Some(e.re)));
            line("eps_im", number(Some(e.im)));
        }
        Permittivity::PerfectConductor => line("eps", "perfect conductor".into()),
    }
    let show_depth = |d: Depth| {
        d.finite()
            .map_or("unbounded".to_string(), |v| number(Some(v)))
    };
    line("lambda_L_m", show_depth(m.lambda_l));
    line("skin_depth_m", show_depth(m.skin_depth));
    line("ns_fraction", number(Some(m.ns_fraction)));
    line("nn_fraction", number(Some(m.nn_fraction)));
    for row in rows {
        out.push('\n');
        let mut line = |k: &str, v: String| out.push_str(&format!("{k:<22} {v}\n"));
        line("method", row.method.to_string());
        match row.rate() {
            Some(r) => {
                line("n_th", number(Some(r.n_th)));
                if let (Some(p), Some(q)) = (r.i_par, r.i_perp) {
                    line("I_par", number(Some(p)));
                    line("I_perp", number(Some(q)));
                }
                if let (Some(p), Some(q)) = (r.i_par_imag, r.i_perp_imag) {
                    line("I_par_imag", number(Some(p)));
                    line("I_perp_imag", number(Some(q)));
                }
                line("gamma0_per_s", number(Some(r.gamma0)));
                line("gamma_slab_per_s", number(Some(r.gamma_slab)));
                line("gamma_total_per_s", number(Some(r.gamma_total)));
                line("tau_s", number(Some(r.tau)));
                if let Some(e) = r.error_estimate {
                    line("rel_err", number(Some(e)));
                }
            }
            None => line("status", row.status().to_string()),
        }
    }
    out.push('\n');
    for c in &report.checks {
        out.push_str(&format!(
            "{:<22} {} (< {}) {}\n",
            c.name,
            number(Some(c.ratio)),
            c.threshold,
            if c.passed { "ok" } else { "WARNING" }
        ));
    }
    out
}
