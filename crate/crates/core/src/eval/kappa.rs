use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kappa {
    pub kappa: f64,
    /// Mean observed agreement.
    pub p_bar: f64,
    /// Chance agreement.
    pub p_e: f64,
    pub items: usize,
    pub raters: usize,
    /// Every rating fell into one category, so chance agreement is 1. `kappa`
    /// is reported as 1 by convention.
    pub undefined: bool,
}

/// Fleiss' kappa over an items × categories table of rating counts. Every
/// item needs the same number (at least 2) of ratings.
pub fn fleiss_kappa(table: &[Vec<usize>]) -> Result<Kappa> {
    let first = table.first().ok_or_else(|| Error::invalid("no items to rate"))?;
    let n: usize = first.iter().sum();
    if n < 2 {
        return Err(Error::invalid("each item needs at least two ratings"));
    }
    let width = first.len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != width {
            return Err(Error::invalid(format!("item {i} has {} categories, expected {width}", row.len())));
        }
        let r: usize = row.iter().sum();
        if r != n {
            return Err(Error::invalid(format!("item {i} has {r} ratings, expected {n}")));
        }
    }
    let items = table.len() as f64;
    let nf = n as f64;
    let p_bar = table
        .iter()
        .map(|row| {
            let sq: usize = row.iter().map(|c| c * c).sum();
            (sq - n) as f64 / (nf * (nf - 1.0))
        })
        .sum::<f64>()
        / items;
    let p_e: f64 = (0..width)
        .map(|j| {
            let pj = table.iter().map(|row| row[j]).sum::<usize>() as f64 / (items * nf);
            pj * pj
        })
        .sum();
    let undefined = (0..width).filter(|&j| table.iter().any(|row| row[j] > 0)).count() == 1;
    let kappa = if undefined { 1.0 } else { (p_bar - p_e) / (1.0 - p_e) };
    Ok(Kappa {
        kappa,
        p_bar,
        p_e,
        items: table.len(),
        raters: n,
        undefined,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiLabelKappa {
    /// Over all (post, class) units.
    pub overall: Kappa,
    pub per_class: Vec<(String, Kappa)>,
}

fn binary_rows<L: Ord>(votes: &[BTreeSet<L>], class: &L) -> Vec<usize> {
    let yes = votes.iter().filter(|v| v.contains(class)).count();
    vec![yes, votes.len() - yes]
}

/// Kappa for multi-label annotation: each (post, class) pair is one item
/// with the binary categories assigned / not assigned.
pub fn multilabel_kappa<K: Ord, L: Ord + Display>(
    votes: &BTreeMap<K, Vec<BTreeSet<L>>>,
    classes: &[L],
) -> Result<MultiLabelKappa> {
    let mut all = Vec::new();
    let mut per_class = Vec::new();
    for class in classes {
        let rows: Vec<Vec<usize>> = votes.values().map(|v| binary_rows(v, class)).collect();
        per_class.push((class.to_string(), fleiss_kappa(&rows)?));
        all.extend(rows);
    }
    Ok(MultiLabelKappa {
        overall: fleiss_kappa(&all)?,
        per_class,
    })
}

/// Category-count rows for single-label ratings.
pub fn rating_table<K: Ord, C: Ord>(ratings: &BTreeMap<K, Vec<C>>, categories: &[C]) -> Vec<Vec<usize>> {
    let cats: BTreeSet<&C> = categories.iter().collect();
    debug_assert_eq!(cats.len(), categories.len());
    ratings
        .values()
        .map(|rs| categories.iter().map(|c| rs.iter().filter(|r| *r == c).count()).collect())
        .collect()
}
