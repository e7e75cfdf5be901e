//! Tab-separated evaluation tables mirroring the per-class, agreement and
//! threshold-sweep layouts.

use std::fmt::Write;

use super::{ConclusionReport, Kappa, LabelEvaluation, LabelTaskReport, ThetaSweep};
use crate::analytics::export::fmt_fixed;

fn pct(x: f64) -> String {
    fmt_fixed(100.0 * x, 1)
}

/// Per-class P/R/F1 (percent) and support, one column group per aggregation.
pub fn label_task_tsv(r: &LabelTaskReport) -> String {
    let mut out = String::from("class");
    for (mode, _) in &r.by_mode {
        let m = mode.as_str();
        write!(out, "\t{m}_p\t{m}_r\t{m}_f1\t{m}_support").unwrap();
    }
    out.push('\n');
    let classes = r.by_mode.first().map(|(_, p)| p.per_class.len()).unwrap_or(0);
    for i in 0..classes {
        out.push_str(&r.by_mode[0].1.per_class[i].class);
        for (_, p) in &r.by_mode {
            let c = &p.per_class[i];
            write!(out, "\t{}\t{}\t{}\t{}", pct(c.precision), pct(c.recall), pct(c.f1), c.support).unwrap();
        }
        out.push('\n');
    }
    for (name, pick) in [("micro avg", true), ("macro avg", false)] {
        out.push_str(name);
        for (_, p) in &r.by_mode {
            let a = if pick { p.micro } else { p.macro_avg };
            write!(out, "\t{}\t{}\t{}\t{}", pct(a.precision), pct(a.recall), pct(a.f1), p.support).unwrap();
        }
        out.push('\n');
    }
    out
}

fn kappa_cell(k: Option<&Kappa>) -> String {
    match k {
        Some(k) if k.undefined => format!("{}\tundefined", fmt_fixed(k.kappa, 3)),
        Some(k) => format!("{}\t", fmt_fixed(k.kappa, 3)),
        None => "n/a\t".to_owned(),
    }
}

pub fn kappa_tsv(e: &LabelEvaluation) -> String {
    let mut out = String::from("task\tclass\tkappa\tnote\n");
    for task in [&e.frames, &e.values] {
        writeln!(out, "{}\tall\t{}", task.task, kappa_cell(task.kappa.as_ref().map(|k| &k.overall))).unwrap();
        if let Some(k) = &task.kappa {
            for (class, kc) in &k.per_class {
                writeln!(out, "{}\t{}\t{}", task.task, class, kappa_cell(Some(kc))).unwrap();
            }
        }
    }
    writeln!(out, "conclusions\tall\t{}", kappa_cell(e.conclusion_kappa.as_ref())).unwrap();
    out
}

pub fn conclusions_tsv(r: &ConclusionReport) -> String {
    let mut out = String::from("category\tposts\tpct\n");
    for ((q, c), (_, p)) in r.counts.iter().zip(&r.distribution) {
        writeln!(out, "{q}\t{c}\t{}", fmt_fixed(*p, 1)).unwrap();
    }
    writeln!(out, "(very) good\t\t{}", fmt_fixed(r.good_pct, 1)).unwrap();
    writeln!(out, "appropriate\t\t{}", fmt_fixed(r.appropriate_pct, 1)).unwrap();
    out
}

pub fn theta_sweep_tsv(s: &ThetaSweep) -> String {
    let mut out = format!(
        "# triples\t{}\n# evaluated\t{}\n# excluded\t{}\n# gold_equal\t{}\ntheta\taccuracy\tmacro_f1\tf1_a1\tf1_a2\tf1_equal\n",
        s.triples, s.evaluated, s.excluded, s.gold_equal
    );
    for r in &s.rows {
        let theta = r.theta.map_or("inf".to_owned(), |t| fmt_fixed(t, 2));
        writeln!(
            out,
            "{theta}\t{}\t{}\t{}\t{}\t{}",
            pct(r.accuracy),
            pct(r.macro_f1),
            pct(r.class_f1[0]),
            pct(r.class_f1[1]),
            pct(r.class_f1[2])
        )
        .unwrap();
    }
    for (m, c) in &s.missing_pairs {
        writeln!(out, "# missing\t{m}\t{c}").unwrap();
    }
    out
}
