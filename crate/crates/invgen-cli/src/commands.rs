//! One document builder per subcommand. Each returns the rendered body and
//! the verification verdict that decides between exit codes 0 and 1.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use invgen_core::ffmc::{self, MatrixGroup, SampleReport};
use invgen_core::invgen::{
    ab_set, alpha_check, alpha_scan, leading_term_two_random, pinv_leading, relation_sim,
    sharpness_triples, verify_ab,
};
use invgen_core::rootsys_g2::g2_incidence;
use invgen_core::torus_lattice::{contains, non_normalizer_families};
use invgen_core::weyl_stats::{torus_classes, GroupFamily};

use crate::render::{csv, text_table};
use crate::Format;

pub struct Doc {
    pub body: String,
    pub ok: bool,
}

impl Doc {
    fn ok(body: String) -> Doc {
        Doc { body, ok: true }
    }
}

/// Pretty JSON with sorted keys and a trailing newline; the only JSON shape
/// any command emits, so identical inputs give identical bytes.
fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("valid JSON document");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

pub fn weyl_classes(family: GroupFamily, format: Format) -> Doc {
    let classes = torus_classes(family);
    let body = match format {
        Format::Json => {
            let rows: Vec<Value> = classes
                .iter()
                .map(|t| {
                    json!({
                        "class": t.to_string(),
                        "probability": t.probability.to_string(),
                        "split": t.split,
                    })
                })
                .collect();
            pretty(&json!({
                "family": family.to_string(),
                "count": classes.len(),
                "classes": rows,
            }))
        }
        _ => {
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|t| {
                    vec![t.to_string(), t.probability.to_string(), t.split.to_string()]
                })
                .collect();
            let headers = ["class", "probability", "split"];
            match format {
                Format::Csv => csv(&headers, &rows),
                _ => text_table(&headers, &rows),
            }
        }
    };
    Doc::ok(body)
}

pub fn incidence(family: GroupFamily, format: Format) -> Doc {
    let mut consistent: Option<bool> = None;
    let (columns, rows): (Vec<String>, Vec<(String, Vec<bool>)>) = match family {
        GroupFamily::ExceptionalG2 { p3 } => {
            let inc = g2_incidence(p3);
            consistent = Some(inc.c_column_consistent);
            let columns = inc.columns.iter().map(|c| c.label.clone()).collect();
            let rows = inc
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    (format!("T{}", c.index), inc.columns.iter().map(|col| col.contains[i]).collect())
                })
                .collect();
            (columns, rows)
        }
        _ => {
            let families = non_normalizer_families(family);
            let columns = families.iter().map(|f| f.tag()).collect();
            let rows = torus_classes(family)
                .iter()
                .map(|t| (t.to_string(), families.iter().map(|f| contains(f, t)).collect()))
                .collect();
            (columns, rows)
        }
    };
    let body = match format {
        Format::Json => {
            let row_docs: Vec<Value> = rows
                .iter()
                .map(|(class, cells)| json!({"class": class, "cells": cells}))
                .collect();
            let mut doc = json!({
                "family": family.to_string(),
                "columns": columns,
                "rows": row_docs,
            });
            if let Some(flag) = consistent {
                doc["c_column_consistent"] = json!(flag);
            }
            pretty(&doc)
        }
        _ => {
            let headers: Vec<&str> =
                std::iter::once("class").chain(columns.iter().map(String::as_str)).collect();
            let mark: [&str; 2] = if format == Format::Csv { ["0", "1"] } else { [".", "x"] };
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(class, cells)| {
                    std::iter::once(class.clone())
                        .chain(cells.iter().map(|&c| mark[usize::from(c)].to_string()))
                        .collect()
                })
                .collect();
            match format {
                Format::Csv => csv(&headers, &table),
                _ => text_table(&headers, &table),
            }
        }
    };
    Doc { body, ok: consistent.unwrap_or(true) }
}

pub fn sim(family: GroupFamily, format: Format) -> Doc {
    let pairs = relation_sim(family);
    let body = match format {
        Format::Json => {
            let list: Vec<Value> =
                pairs.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect();
            pretty(&json!({
                "family": family.to_string(),
                "count": pairs.len(),
                "pairs": list,
            }))
        }
        _ => {
            let rows: Vec<Vec<String>> =
                pairs.iter().map(|(a, b)| vec![a.to_string(), b.to_string()]).collect();
            match format {
                Format::Csv => csv(&["a", "b"], &rows),
                _ => text_table(&["a", "b"], &rows),
            }
        }
    };
    Doc::ok(body)
}

pub fn leading_term(family: GroupFamily, format: Format) -> Doc {
    let value = leading_term_two_random(family);
    let body = match format {
        Format::Json => pretty(&json!({
            "family": family.to_string(),
            "leading_term": value.to_string(),
        })),
        Format::Csv => csv(
            &["family", "leading_term"],
            &[vec![family.to_string(), value.to_string()]],
        ),
        Format::Text => format!("{value}\n"),
    };
    Doc::ok(body)
}

pub fn pinv_table(family: GroupFamily, format: Format) -> Doc {
    let classes = torus_classes(family);
    let body = match format {
        Format::Json => {
            let rows: Vec<Value> = classes
                .iter()
                .map(|t| {
                    json!({
                        "class": t.to_string(),
                        "probability": t.probability.to_string(),
                        "pinv_leading": pinv_leading(t).to_string(),
                    })
                })
                .collect();
            pretty(&json!({"family": family.to_string(), "classes": rows}))
        }
        _ => {
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|t| {
                    vec![t.to_string(), t.probability.to_string(), pinv_leading(t).to_string()]
                })
                .collect();
            let headers = ["class", "probability", "pinv_leading"];
            match format {
                Format::Csv => csv(&headers, &rows),
                _ => text_table(&headers, &rows),
            }
        }
    };
    Doc::ok(body)
}

pub fn verify_ab_row(family: GroupFamily, format: Format) -> Doc {
    let report = verify_ab(family);
    let ok = report.empty;
    let body = match format {
        Format::Json => pretty(&to_value(&report)),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .pairwise_residuals
                .iter()
                .map(|(key, sub)| {
                    vec![key.clone(), sub.count.to_string(), sub.leading.to_string()]
                })
                .collect();
            csv(&["subset", "count", "leading"], &rows)
        }
        Format::Text => {
            let classes: BTreeMap<String, String> = ab_set(family)
                .elements
                .iter()
                .map(|x| (x.label.clone(), x.torus.to_string()))
                .collect();
            let mut out = format!("family   {}\n", report.family);
            out.push_str(&format!("row      {}\n", report.labels.join(", ")));
            for (label, tags) in &report.per_element_families {
                out.push_str(&format!(
                    "{label} = {}  in {} subgroup classes\n",
                    classes[label],
                    tags.len()
                ));
            }
            if report.empty {
                out.push_str("verdict  empty intersection\n");
            } else {
                out.push_str(&format!("verdict  RESIDUAL {}\n", report.residual.join(", ")));
            }
            out.push('\n');
            let rows: Vec<Vec<String>> = report
                .pairwise_residuals
                .iter()
                .map(|(key, sub)| {
                    vec![key.clone(), sub.count.to_string(), sub.leading.to_string()]
                })
                .collect();
            out.push_str(&text_table(&["subset", "count", "leading"], &rows));
            out
        }
    };
    Doc { body, ok }
}

pub fn sharpness(m: u32, format: Format) -> Doc {
    let report = sharpness_triples(m);
    let ok = report.all_triples_blocked && report.proof_witnesses_valid;
    let body = match format {
        Format::Json => pretty(&to_value(&report)),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .witnesses
                .iter()
                .map(|(triple, witness)| vec![triple.clone(), witness.clone()])
                .collect();
            csv(&["triple", "witness"], &rows)
        }
        Format::Text => format!(
            "family   {}\ntriples  {}\nblocked  {}\nwitness  {}\n",
            report.family,
            report.triples,
            report.all_triples_blocked,
            if report.proof_witnesses_valid { "designated witnesses valid" } else { "FALLBACK used" },
        ),
    };
    Doc { body, ok }
}

pub fn alpha(m_max: u32, format: Format) -> Doc {
    let rows = alpha_scan(m_max);
    let ok = alpha_check(m_max);
    let body = match format {
        Format::Json => pretty(&json!({
            "m_max": m_max,
            "ok": ok,
            "rows": to_value(&rows),
        })),
        _ => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.family.clone(),
                        r.class.clone(),
                        r.probability.to_string(),
                        r.bound.to_string(),
                        r.ok.to_string(),
                        r.equality.to_string(),
                    ]
                })
                .collect();
            let headers = ["family", "class", "probability", "bound", "ok", "equality"];
            match format {
                Format::Csv => csv(&headers, &table),
                _ => {
                    let mut out = text_table(&headers, &table);
                    out.push_str(&format!(
                        "\nbound 1/(4m) {} up to m = {m_max}\n",
                        if ok { "holds" } else { "FAILS" }
                    ));
                    out
                }
            }
        }
    };
    Doc { body, ok }
}

pub fn g2_report(p3: bool, format: Format) -> Doc {
    let family = GroupFamily::ExceptionalG2 { p3 };
    let inc = g2_incidence(p3);
    let classes = torus_classes(family);
    let star = (1..=6u8).all(|j| inc.share_column(1, j) && inc.share_column(2, j));
    let leading = leading_term_two_random(family);
    let ok = inc.c_column_consistent;
    let body = match format {
        Format::Json => {
            let class_docs: Vec<Value> = inc
                .classes
                .iter()
                .zip(&classes)
                .map(|(meta, t)| {
                    json!({
                        "index": meta.index,
                        "label": meta.label,
                        "size": meta.size,
                        "element_order": meta.element_order,
                        "torus_order": meta.torus_order,
                        "probability": t.probability.to_string(),
                        "pinv_leading": pinv_leading(t).to_string(),
                    })
                })
                .collect();
            let columns: Vec<Value> = inc
                .columns
                .iter()
                .map(|c| json!({"label": c.label, "contains": c.contains.to_vec()}))
                .collect();
            pretty(&json!({
                "family": family.to_string(),
                "p3": p3,
                "leading_term": leading.to_string(),
                "star": star,
                "c_column_consistent": inc.c_column_consistent,
                "classes": class_docs,
                "columns": columns,
            }))
        }
        _ => {
            let rows: Vec<Vec<String>> = inc
                .classes
                .iter()
                .zip(&classes)
                .map(|(meta, t)| {
                    vec![
                        format!("T{}", meta.index),
                        meta.label.to_string(),
                        meta.size.to_string(),
                        meta.element_order.to_string(),
                        meta.torus_order.clone(),
                        t.probability.to_string(),
                        pinv_leading(t).to_string(),
                    ]
                })
                .collect();
            let headers =
                ["class", "label", "size", "order", "torus_order", "probability", "pinv_leading"];
            match format {
                Format::Csv => csv(&headers, &rows),
                _ => {
                    let mut out = text_table(&headers, &rows);
                    out.push_str(&format!("\nleading term  {leading}\n"));
                    out.push_str(&format!("star          {star}\n"));
                    out
                }
            }
        }
    };
    Doc { body, ok }
}

pub struct McSpec {
    pub group: MatrixGroup,
    pub n: u32,
    pub q: u64,
    pub mode: McMode,
}

pub enum McMode {
    Sample { samples: u64, seed: u64, streams: u32 },
    Exhaustive,
}

fn mc_report(spec: &McSpec) -> SampleReport {
    match spec.mode {
        McMode::Exhaustive => ffmc::torus_statistics_exhaustive(spec.group, spec.n, spec.q),
        McMode::Sample { samples, seed, streams } => {
            ffmc::torus_statistics_streams(spec.group, spec.n, spec.q, samples, seed, streams)
        }
    }
}

pub fn mc_run(spec: &McSpec, format: Format) -> Doc {
    let report = mc_report(spec);
    let body = match format {
        Format::Json => pretty(&to_value(&report)),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .partition_counts
                .iter()
                .map(|(p, c)| vec![p.to_string(), c.to_string()])
                .collect();
            csv(&["partition", "count"], &rows)
        }
        Format::Text => {
            let mut out = format!(
                "group    {}  n = {}  q = {}\nsamples  {}{}\nregular semisimple  {}\n\n",
                report.group,
                report.n,
                report.q,
                report.samples,
                if report.exhaustive {
                    "  (exhaustive)".to_string()
                } else {
                    format!("  seed = {}  streams = {}", report.seed.unwrap_or(0), report.streams)
                },
                report.regular_semisimple,
            );
            let rows: Vec<Vec<String>> = report
                .partition_counts
                .iter()
                .map(|(p, c)| vec![p.to_string(), c.to_string()])
                .collect();
            out.push_str(&text_table(&["partition", "count"], &rows));
            out
        }
    };
    Doc::ok(body)
}

pub fn mc_compare(spec: &McSpec, format: Format) -> Doc {
    let table = ffmc::compare_to_weyl(&mc_report(spec));
    let ok = !table.any_flagged;
    let body = match format {
        Format::Json => pretty(&to_value(&table)),
        _ => {
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.partition.clone(),
                        r.count.to_string(),
                        r.frequency.clone(),
                        r.exact.to_string(),
                        r.deviation.clone(),
                        r.sigma.clone(),
                        r.flagged.to_string(),
                    ]
                })
                .collect();
            let headers =
                ["partition", "count", "frequency", "exact", "deviation", "sigma", "flagged"];
            match format {
                Format::Csv => csv(&headers, &rows),
                _ => {
                    let mut out = text_table(&headers, &rows);
                    out.push_str(&format!(
                        "\nnon-rs frequency  {}\nverdict           {}\n",
                        table.non_rs_frequency,
                        if ok { "no rows flagged" } else { "FLAGGED" }
                    ));
                    out
                }
            }
        }
    };
    Doc { body, ok }
}
