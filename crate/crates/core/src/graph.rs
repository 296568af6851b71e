//! Simple undirected graphs with dense 0/1 adjacency matrices.

use ndarray::Array2;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<i64>>,
}

impl Graph {
    /// Builds from a 1-based edge list. Duplicate edges collapse; self-loops error.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![0i64; n]; n];
        for &(u, v) in edges {
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u},{v}) out of range 1..={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
            }
            adj[u - 1][v - 1] = 1;
            adj[v - 1][u - 1] = 1;
        }
        Ok(Graph { n, adj })
    }

    pub fn from_adjacency(adj: Array2<i64>) -> Result<Self> {
        let n = adj.nrows();
        if adj.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: adj.ncols(),
            });
        }
        for i in 0..n {
            if adj[[i, i]] != 0 {
                return Err(Error::InvalidInstance(format!("nonzero diagonal at {}", i + 1)));
            }
            for j in 0..n {
                if adj[[i, j]] != adj[[j, i]] {
                    return Err(Error::InvalidInstance(format!(
                        "asymmetric adjacency at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
                if adj[[i, j]] != 0 && adj[[i, j]] != 1 {
                    return Err(Error::InvalidInstance(format!(
                        "non-0/1 entry at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let adj = (0..n)
            .map(|i| (0..n).map(|j| adj[[i, j]]).collect())
            .collect();
        Ok(Graph { n, adj })
    }

    /// Erdos-Renyi style graph with independent edge probability `density`.
    pub fn random<R: Rng>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut adj = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random::<f64>() < density {
                    adj[i][j] = 1;
                    adj[j][i] = 1;
                }
            }
        }
        Graph { n, adj }
    }

    pub fn complete(n: usize) -> Self {
        let mut adj = vec![vec![1i64; n]; n];
        for (i, row) in adj.iter_mut().enumerate() {
            row[i] = 0;
        }
        Graph { n, adj }
    }

    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            adj: vec![vec![0; n]; n],
        }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).chain([(n, 1)]).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        let total: i64 = self.adj.iter().flatten().sum();
        (total / 2) as usize
    }

    /// 1-based adjacency test.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u - 1][v - 1] == 1
    }

    #[inline]
    pub fn adj0(&self, i: usize, j: usize) -> i64 {
        self.adj[i][j]
    }

    pub fn adjacency(&self) -> Array2<i64> {
        let mut a = Array2::zeros((self.n, self.n));
        for i in 0..self.n {
            for j in 0..self.n {
                a[[i, j]] = self.adj[i][j];
            }
        }
        a
    }

    /// 1-based sorted edge list, `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adj[i][j] == 1 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut adj = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    adj[i][j] = 1 - self.adj[i][j];
                }
            }
        }
        Graph { n, adj }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].iter().sum::<i64>() as usize
    }
}

/// The labelled graph used throughout the relabelling demonstration:
/// 5 vertices, edges 1-2, 1-3, 2-3, 2-4, 2-5, 3-4, 3-5; its unique
/// maximum independent set is {1, 4, 5}.
pub fn demo_mis_graph() -> Graph {
    Graph::from_edges(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)])
        .expect("static edge list is valid")
}
