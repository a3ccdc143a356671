//! Table rendering: aligned text for terminals, RFC-4180-style CSV for
//! pipelines. JSON is produced at the call sites from typed values.

/// Quote a CSV field only when it needs it (commas in class names do).
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&headers.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), headers.len());
        let line: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Left-aligned columns separated by two spaces; header underlined with
/// dashes. Empty tables render the header alone.
pub fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        debug_assert_eq!(row.len(), headers.len());
        for (w, field) in widths.iter_mut().zip(row) {
            *w = (*w).max(field.len());
        }
    }
    let render = |fields: &[String]| -> String {
        let mut line = String::new();
        for (i, (field, w)) in fields.iter().zip(&widths).enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(field);
            // pad between columns, never after the last
            if i + 1 < fields.len() {
                line.push_str(&" ".repeat(w - field.len()));
            }
        }
        line.push('\n');
        line
    };
    let mut out = render(&headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    out.push_str(&render(
        &widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>(),
    ));
    for row in rows {
        out.push_str(&render(row));
    }
    out
}
