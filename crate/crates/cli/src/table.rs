//! Aligned plain-text rendering of JSON reports.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Object(m) if m.len() == 2 && m.contains_key("num") && m.contains_key("den") => {
            format!("{}/{}", m["num"], m["den"])
        }
        other => other.to_string(),
    }
}

fn is_record_list(v: &Value) -> bool {
    matches!(v, Value::Array(a) if !a.is_empty() && a.iter().all(Value::is_object))
}

fn scalar_rows(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>, tables: &mut Vec<(String, Vec<Value>)>) {
    match v {
        Value::Object(m) if !(m.len() == 2 && m.contains_key("num") && m.contains_key("den")) => {
            for (k, child) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                scalar_rows(&key, child, rows, tables);
            }
        }
        Value::Array(a) if is_record_list(v) => tables.push((prefix.to_string(), a.clone())),
        other => rows.push((prefix.to_string(), cell(other))),
    }
}

fn record_table(records: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for r in records {
        for k in r.as_object().expect("record").keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let body: Vec<Vec<String>> = records
        .iter()
        .map(|r| columns.iter().map(|c| r.get(c).map(cell).unwrap_or_else(|| "-".into())).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| body.iter().map(|row| row[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&columns);
    out.push('\n');
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    out.push('\n');
    for row in &body {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

pub fn render(report: &Value) -> String {
    let mut rows = Vec::new();
    let mut tables = Vec::new();
    scalar_rows("", report, &mut rows, &mut tables);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    for (name, records) in &tables {
        out.push('\n');
        out.push_str(&format!("[{name}]\n"));
        out.push_str(&record_table(records));
    }
    out
}
