//! PageRank by power iteration on small undirected graphs.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PageRankConfig {
    pub damping: f64,
    /// Stop once the L1 change between iterates drops below this.
    pub tolerance: f64,
    /// Safety cap. Bipartite graphs contract by only `damping` per step, so
    /// 100 iterations stop short of the tolerance on them.
    pub max_iterations: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            damping: 0.85,
            tolerance: 1e-9,
            max_iterations: 1000,
        }
    }
}

/// Ranks of nodes `0..n` in the undirected graph given by `edges`.
///
/// Teleport is uniform and isolated nodes spread their mass uniformly.
/// Duplicate edges and self-loops are ignored. The result sums to 1.
pub fn pagerank(n: usize, edges: &[(usize, usize)], config: &PageRankConfig) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a != b {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
        adj.dedup();
    }

    let d = config.damping;
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    for _ in 0..config.max_iterations {
        let dangling: f64 = (0..n)
            .filter(|&i| adjacency[i].is_empty())
            .map(|i| rank[i])
            .sum();
        let base = (1.0 - d) * uniform + d * dangling * uniform;
        next.iter_mut().for_each(|x| *x = base);
        for (i, adj) in adjacency.iter().enumerate() {
            if adj.is_empty() {
                continue;
            }
            let share = d * rank[i] / adj.len() as f64;
            for &j in adj {
                next[j] += share;
            }
        }
        let delta: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if delta < config.tolerance {
            break;
        }
    }
    let total: f64 = rank.iter().sum();
    rank.iter_mut().for_each(|x| *x /= total);
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_even() {
        let r = pagerank(2, &[(0, 1)], &PageRankConfig::default());
        assert!((r[0] - 0.5).abs() < 1e-12 && (r[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn path_reaches_closed_form() {
        // P3 by hand: r_end = t + d * r_mid / 2, r_mid = t + 2 * d * r_end
        let d = 0.85;
        let t = (1.0 - d) / 3.0;
        let r_end = (t + d * t / 2.0) / (1.0 - d * d);
        let r_mid = t + 2.0 * d * r_end;
        let r = pagerank(3, &[(0, 1), (1, 2)], &PageRankConfig::default());
        assert!((r[0] - r_end).abs() < 1e-9, "{} vs {r_end}", r[0]);
        assert!((r[1] - r_mid).abs() < 1e-9, "{} vs {r_mid}", r[1]);
    }

    #[test]
    fn star_center_dominates() {
        let r = pagerank(4, &[(0, 1), (0, 2), (0, 3)], &PageRankConfig::default());
        assert!(r[0] > r[1]);
        assert!((r[1] - r[2]).abs() < 1e-12 && (r[2] - r[3]).abs() < 1e-12);
    }

    #[test]
    fn single_node() {
        assert_eq!(pagerank(1, &[], &PageRankConfig::default()), vec![1.0]);
    }

    #[test]
    fn isolated_nodes_share_evenly() {
        let r = pagerank(3, &[], &PageRankConfig::default());
        for x in r {
            assert!((x - 1.0 / 3.0).abs() < 1e-12);
        }
    }
}
