//! Spectral embedding of an undirected graph's largest connected component
//! via the symmetric normalized Laplacian `L = I − D^{-1/2} A D^{-1/2}`.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::store::GraphStore;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralConfig {
    /// Components up to this size use the dense solver.
    pub dense_limit: usize,
    /// Residual target for the iterative solver.
    pub tolerance: f64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            dense_limit: 2000,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEmbedding {
    /// Component members, sorted.
    pub nodes: Vec<String>,
    /// `coordinates[i]` holds the k coordinates of `nodes[i]`.
    pub coordinates: Vec<Vec<f64>>,
    /// The k + 1 smallest eigenvalues, ascending, starting with the trivial 0.
    pub eigenvalues: Vec<f64>,
    /// `‖L x − λ x‖` for each reported nontrivial eigenpair.
    pub residuals: Vec<f64>,
    pub solver: String,
}

/// Adjacency lists of the largest connected component (ties go to the
/// component holding the smallest id), with nodes in sorted order.
fn largest_component(nodes: &BTreeSet<String>, edges: &[(String, String)]) -> (Vec<String>, Vec<Vec<usize>>) {
    let mut adj: BTreeMap<&str, BTreeSet<&str>> = nodes.iter().map(|n| (n.as_str(), BTreeSet::new())).collect();
    for (a, b) in edges {
        if a != b {
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
    }
    let mut seen = BTreeSet::new();
    let mut best: Vec<&str> = Vec::new();
    for &start in adj.keys() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut i = 0;
        while i < comp.len() {
            for &nb in &adj[comp[i]] {
                if seen.insert(nb) {
                    comp.push(nb);
                }
            }
            i += 1;
        }
        // keys are visited in order, so an earlier component holds the smaller id
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best.sort_unstable();
    let index: BTreeMap<&str, usize> = best.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let lists = best
        .iter()
        .map(|n| adj[n].iter().map(|m| index[m]).collect())
        .collect();
    (best.into_iter().map(str::to_owned).collect(), lists)
}

fn laplacian_apply(adj: &[Vec<usize>], inv_sqrt_deg: &[f64], x: &DVector<f64>) -> DVector<f64> {
    DVector::from_iterator(
        adj.len(),
        adj.iter().enumerate().map(|(i, nbrs)| {
            let s: f64 = nbrs.iter().map(|&j| inv_sqrt_deg[j] * x[j]).sum();
            x[i] - inv_sqrt_deg[i] * s
        }),
    )
}

/// Flips `v` so its first entry of largest magnitude is positive.
fn fix_sign(v: &mut DVector<f64>) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() >= max - 1e-9) {
        if *first < 0.0 {
            v.neg_mut();
        }
    }
}

fn dense_pairs(adj: &[Vec<usize>], inv_sqrt_deg: &[f64], count: usize) -> Vec<(f64, DVector<f64>)> {
    let n = adj.len();
    let mut l = DMatrix::<f64>::identity(n, n);
    for (i, nbrs) in adj.iter().enumerate() {
        for &j in nbrs {
            l[(i, j)] -= inv_sqrt_deg[i] * inv_sqrt_deg[j];
        }
    }
    let eig = SymmetricEigen::new(l);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    order
        .into_iter()
        .take(count)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors.column(i).into_owned()))
        .collect()
}

/// Lanczos with full reorthogonalization on `2I − L`, one eigenpair per
/// run. Each converged vector is locked out of later runs, so repeated
/// eigenvalues are found with their multiplicity. Returns the `k` smallest
/// nontrivial eigenpairs of `L`, ascending.
fn lanczos_pairs(
    adj: &[Vec<usize>],
    inv_sqrt_deg: &[f64],
    trivial: &DVector<f64>,
    k: usize,
    tolerance: f64,
) -> Vec<(f64, DVector<f64>)> {
    let n = adj.len();
    let mut locked = vec![trivial.clone()];
    let mut out = Vec::with_capacity(k);
    for run in 0..k {
        let available = n - locked.len();
        let mut steps = 40.min(available);
        loop {
            let (lam, v) = lanczos_run(adj, inv_sqrt_deg, &locked, run, steps);
            let residual = (laplacian_apply(adj, inv_sqrt_deg, &v) - &v * lam).norm();
            if residual <= tolerance || steps == available {
                locked.push(v.clone());
                out.push((lam, v));
                break;
            }
            steps = (steps * 2).min(available);
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Largest Ritz pair of `2I − L` on the complement of `locked`, reported as
/// an eigenpair of `L`.
fn lanczos_run(
    adj: &[Vec<usize>],
    inv_sqrt_deg: &[f64],
    locked: &[DVector<f64>],
    run: usize,
    steps: usize,
) -> (f64, DVector<f64>) {
    let n = adj.len();
    let project = |v: &mut DVector<f64>, basis: &[DVector<f64>]| {
        for _ in 0..2 {
            for q in locked.iter().chain(basis) {
                let d = q.dot(v);
                v.axpy(-d, q, 1.0);
            }
        }
    };
    // deterministic start vector, varied per run
    let mut q = DVector::from_iterator(n, (0..n).map(|i| 1.0 + ((i * 7919 + 13 + 37 * run) % 101) as f64 / 101.0));
    project(&mut q, &[]);
    q /= q.norm();
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(steps);
    let (mut alpha, mut beta): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    for _ in 0..steps {
        let mut w = q.clone() * 2.0 - laplacian_apply(adj, inv_sqrt_deg, &q);
        let a = q.dot(&w);
        w.axpy(-a, &q, 1.0);
        if let (Some(prev), Some(&b)) = (basis.last(), beta.last()) {
            w.axpy(-b, prev, 1.0);
        }
        basis.push(q.clone());
        alpha.push(a);
        project(&mut w, &basis);
        let b = w.norm();
        if b < 1e-12 || basis.len() == steps {
            break;
        }
        beta.push(b);
        q = w / b;
    }
    let m = basis.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let top = (0..m)
        .max_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
        .expect("nonempty basis");
    let y = eig.eigenvectors.column(top);
    let mut v = DVector::zeros(n);
    for (j, qj) in basis.iter().enumerate() {
        v.axpy(y[j], qj, 1.0);
    }
    let norm = v.norm();
    (2.0 - eig.eigenvalues[top], v / norm)
}

/// Embeds the largest connected component of `(nodes, edges)` into `k`
/// dimensions: eigenvectors 2..k+1 of the normalized Laplacian.
pub fn spectral_embed(
    nodes: &BTreeSet<String>,
    edges: &[(String, String)],
    k: usize,
    config: &SpectralConfig,
) -> Result<SpectralEmbedding> {
    if k == 0 {
        return Err(Error::invalid("embedding dimension must be at least 1"));
    }
    let (members, adj) = largest_component(nodes, edges);
    if members.is_empty() {
        return Err(Error::invalid("graph has no nodes"));
    }
    if k >= members.len() {
        return Err(Error::EmbeddingTooLarge {
            k,
            size: members.len(),
        });
    }
    let n = members.len();
    let deg: Vec<f64> = adj.iter().map(|a| a.len() as f64).collect();
    let inv_sqrt_deg: Vec<f64> = deg.iter().map(|d| 1.0 / d.sqrt()).collect();
    let mut trivial = DVector::from_iterator(n, deg.iter().map(|d| d.sqrt()));
    trivial /= trivial.norm();

    let (solver, mut pairs) = if n <= config.dense_limit {
        ("dense", dense_pairs(&adj, &inv_sqrt_deg, k + 1))
    } else {
        let mut pairs = vec![(0.0, trivial.clone())];
        pairs.extend(lanczos_pairs(&adj, &inv_sqrt_deg, &trivial, k, config.tolerance));
        ("lanczos", pairs)
    };
    for (_, v) in pairs.iter_mut() {
        fix_sign(v);
    }
    let residuals = pairs[1..]
        .iter()
        .map(|(lam, v)| (laplacian_apply(&adj, &inv_sqrt_deg, v) - v * *lam).norm())
        .collect();
    let coordinates = (0..n)
        .map(|i| pairs[1..].iter().map(|(_, v)| v[i]).collect())
        .collect();
    Ok(SpectralEmbedding {
        nodes: members,
        coordinates,
        eigenvalues: pairs.iter().map(|(l, _)| *l).collect(),
        residuals,
        solver: solver.to_owned(),
    })
}

/// Embedding of the friendship network over all authors.
pub fn friendship_embedding(store: &GraphStore, k: usize, config: &SpectralConfig) -> Result<SpectralEmbedding> {
    let nodes: BTreeSet<String> = store.authors().map(|a| a.author_id.to_string()).collect();
    let edges: Vec<(String, String)> = store
        .friend_edges()
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    spectral_embed(&nodes, &edges, k, config)
}
