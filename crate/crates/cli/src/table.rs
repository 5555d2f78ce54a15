//! Aligned plain-text rendering of a JSON report.
//!
//! Scalars and flat lists become `key  value` rows; lists of objects become
//! column tables under a heading; nested objects become indented sections.

use serde_json::{Map, Value};

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    match report {
        Value::Object(map) => render_object(map, 0, &mut out),
        other => {
            out.push_str(&cell(other));
            out.push('\n');
        }
    }
    out
}

fn is_row_list(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let simple: Vec<(&String, &Value)> = map.iter().filter(|(_, v)| !v.is_object() && !is_row_list(v)).collect();
    let width = simple.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &simple {
        out.push_str(&format!("{pad}{k:<width$}  {}\n", cell(v)));
    }
    for (k, v) in map {
        match v {
            Value::Object(inner) => {
                out.push_str(&format!("\n{pad}{k}:\n"));
                render_object(inner, indent + 2, out);
            }
            Value::Array(rows) if is_row_list(v) => {
                out.push_str(&format!("\n{pad}{k}:\n"));
                render_rows(rows, indent + 2, out);
            }
            _ => {}
        }
    }
}

fn render_rows(rows: &[Value], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let mut columns: Vec<&String> = Vec::new();
    for row in rows {
        for k in row.as_object().expect("row list").keys() {
            if !columns.contains(&k) {
                columns.push(k);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| columns.iter().map(|c| row.get(c.as_str()).map_or_else(|| "-".to_string(), cell)).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |items: Vec<&str>| {
        let joined: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        format!("{pad}{}\n", joined.join("  ").trim_end())
    };
    out.push_str(&line(columns.iter().map(|c| c.as_str()).collect()));
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(cell).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => {
            let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}: {}", cell(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn scalars_align_and_rows_become_columns() {
        let v = json!({
            "different": "1",
            "breaks": ["2"],
            "filtration": [{"lower": "0", "upper": "2", "subgroup": ["e", "s"]}, {"lower": "2", "upper": "inf", "subgroup": ["e"]}],
        });
        let text = render(&v);
        assert!(text.starts_with("different  1\nbreaks     [2]\n"));
        assert!(text.contains("  lower  upper  subgroup\n"));
        assert!(text.contains("  2      inf    [e]\n"));
    }
}
