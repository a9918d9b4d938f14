//! Tabular output as CSV, JSON or a bare-bones SVG line plot.

use std::fmt::Write as _;

use rug::Float;
use serde_json::{Map, Value};

/// Formats `x` with `digits` significant decimal digits, independent of locale.
pub fn num(x: &Float, digits: u32) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if x.is_zero() {
        return "0".into();
    }
    let (neg, ds, exp) = x.to_sign_string_exp(10, Some(digits as usize));
    // value = 0.ds * 10^exp
    let e = exp.expect("finite nonzero") as i64;
    let len = ds.len() as i64;
    let body = if e > 0 && e < len {
        format!("{}.{}", &ds[..e as usize], &ds[e as usize..])
    } else if e == len {
        ds.clone()
    } else if (-5..=0).contains(&e) {
        format!("0.{}{ds}", "0".repeat((-e) as usize))
    } else {
        format!("{}.{}e{}", &ds[..1], &ds[1..], e - 1)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Column used as abscissa and the columns drawn against it.
    pub plot: Option<(usize, Vec<usize>)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
            plot: None,
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn header(&self) -> String {
        self.columns.join(",")
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.clone()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }

    pub fn to_svg(&self) -> Option<String> {
        let (xc, ycs) = self.plot.as_ref()?;
        let pts = |c: usize| -> Vec<(f64, f64)> {
            self.rows
                .iter()
                .filter_map(|r| Some((as_f64(&r[*xc])?, as_f64(&r[c])?)))
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .collect()
        };
        let series: Vec<(usize, Vec<(f64, f64)>)> = ycs.iter().map(|&c| (c, pts(c))).collect();
        let all = series.iter().flat_map(|(_, p)| p.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in all {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x0 > x1 {
            return Some(svg_frame(String::new()));
        }
        let (w, h, m) = (800.0, 500.0, 50.0);
        let sx = |x: f64| m + (x - x0) / (x1 - x0).max(1e-300) * (w - 2.0 * m);
        let sy = |y: f64| h - m - (y - y0) / (y1 - y0).max(1e-300) * (h - 2.0 * m);
        let colors = ["#1f77b4", "#d62728", "#e6b800", "#2ca02c"];
        let mut body = String::new();
        let _ = writeln!(
            body,
            "<line x1=\"{m}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
            h - m,
            w - m,
            h - m
        );
        let _ = writeln!(body, "<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{}\" stroke=\"black\"/>", h - m);
        let _ = writeln!(
            body,
            "<text x=\"{m}\" y=\"{}\" font-size=\"12\">{x0:.4}</text><text x=\"{}\" y=\"{}\" font-size=\"12\">{x1:.4}</text>",
            h - m + 16.0,
            w - m - 40.0,
            h - m + 16.0
        );
        let _ = writeln!(
            body,
            "<text x=\"4\" y=\"{}\" font-size=\"12\">{y0:.4}</text><text x=\"4\" y=\"{}\" font-size=\"12\">{y1:.4}</text>",
            h - m,
            m
        );
        for (i, (c, p)) in series.iter().enumerate() {
            let coords: Vec<String> = p.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let color = colors[i % colors.len()];
            let _ = writeln!(
                body,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1\" points=\"{}\"><title>{}</title></polyline>",
                coords.join(" "),
                self.columns[*c]
            );
        }
        Some(svg_frame(body))
    }
}

fn svg_frame(body: String) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n{body}</svg>\n"
    )
}

fn as_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => s.parse().ok(),
        Value::Bool(b) => Some(if *b { 1.0 } else { 0.0 }),
        _ => None,
    }
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn number_format() {
        assert_eq!(num(&Float::with_val(64, 2.5), 5), "2.5000");
        assert_eq!(num(&Float::with_val(64, -0.03125), 3), "-0.0312");
        assert_eq!(num(&Float::with_val(64, 1e-7), 3), "1.00e-7");
        assert_eq!(num(&Float::with_val(64, 125), 3), "125");
        assert_eq!(num(&Float::with_val(64, 1250), 3), "1.25e3");
        assert_eq!(num(&Float::with_val(64, f64::INFINITY), 3), "inf");
    }

    #[test]
    fn csv_quotes_specs() {
        let mut t = Table::new(&["x_repr", "lo"]);
        t.push(vec![json!("[0; 1, (2)]"), json!("1.5")]);
        assert_eq!(t.to_csv(), "x_repr,lo\n\"[0; 1, (2)]\",1.5\n");
    }
}
