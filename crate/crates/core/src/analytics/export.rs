//! Tab-separated report formatting. Class names contain commas, so tabs
//! delimit fields. Percentages carry two decimals; negative zero prints as
//! `0.00`.

use std::fmt::Write;

use super::compare::CampComparison;
use super::delta::ConceptDelta;
use super::matrix::{FrameValueMatrix, MatrixDiff};
use super::spectral::SpectralEmbedding;

pub fn fmt_fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_owned()
    } else {
        s
    }
}

pub fn fmt_pct(x: f64) -> String {
    fmt_fixed(x, 2)
}

/// Rows are frames, columns values; the last column and row are marginals.
fn grid(
    corner: &str,
    frames: &[String],
    values: &[String],
    cells: &[Vec<f64>],
    frame_marginals: &[f64],
    value_marginals: &[f64],
) -> String {
    let mut out = String::new();
    out.push_str(corner);
    for v in values {
        write!(out, "\t{v}").unwrap();
    }
    out.push_str("\tall\n");
    for ((f, row), m) in frames.iter().zip(cells).zip(frame_marginals) {
        out.push_str(f);
        for x in row {
            write!(out, "\t{}", fmt_pct(*x)).unwrap();
        }
        writeln!(out, "\t{}", fmt_pct(*m)).unwrap();
    }
    out.push_str("all");
    for m in value_marginals {
        write!(out, "\t{}", fmt_pct(*m)).unwrap();
    }
    out.push_str("\t\n");
    out
}

pub fn matrix_tsv(m: &FrameValueMatrix) -> String {
    format!(
        "# subset\t{}\n# n\t{}\n{}",
        m.subset,
        m.n,
        grid("frame\\value", &m.frames, &m.values, &m.cells, &m.frame_marginals, &m.value_marginals)
    )
}

pub fn diff_tsv(d: &MatrixDiff) -> String {
    format!(
        "# a\t{}\n# b\t{}\n{}",
        d.a,
        d.b,
        grid("frame\\value", &d.frames, &d.values, &d.cells, &d.frame_marginals, &d.value_marginals)
    )
}

pub fn concept_delta_tsv(rows: &[ConceptDelta]) -> String {
    let mut out = String::from("concept\tsubset_count\tbaseline_count\tdelta_pp\n");
    for r in rows {
        writeln!(out, "{}\t{}\t{}\t{}", r.concept, r.subset_count, r.baseline_count, fmt_pct(r.delta_pp)).unwrap();
    }
    out
}

pub fn participation_tsv(c: &CampComparison) -> String {
    let mut out = format!(
        "# dimension\t{}\n# camps\t{}\t{}\n# authors\t{}\t{}\ncategory\tshare_{}\tshare_{}\tdelta_pp\n",
        c.dimension, c.camp_a, c.camp_b, c.authors_a, c.authors_b, c.camp_a, c.camp_b
    );
    for p in &c.participation {
        writeln!(out, "{}\t{}\t{}\t{}", p.category, fmt_pct(p.share_a), fmt_pct(p.share_b), fmt_pct(p.delta_pp)).unwrap();
    }
    out
}

/// One node per line followed by its coordinates.
pub fn embedding_tsv(e: &SpectralEmbedding) -> String {
    let mut out = String::from("# eigenvalues");
    for l in &e.eigenvalues {
        write!(out, "\t{}", fmt_fixed(*l, 9)).unwrap();
    }
    out.push('\n');
    for (node, coords) in e.nodes.iter().zip(&e.coordinates) {
        out.push_str(node);
        for x in coords {
            write!(out, "\t{}", fmt_fixed(*x, 9)).unwrap();
        }
        out.push('\n');
    }
    out
}
