//! Quivers, mutation, and the invariant tables attached to them.

pub mod cluster;
pub mod kronecker;
pub mod loops;
pub mod macmahon;

use crate::error::{Error, Result};
use crate::lattice::SkewLattice;
use serde::{Deserialize, Serialize};

/// A finite quiver given by its arrow counts `a_ij ≥ 0`, `a_ii = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    arrows: Vec<Vec<i64>>,
}

impl Quiver {
    pub fn new(arrows: Vec<Vec<i64>>) -> Result<Self> {
        let n = arrows.len();
        for (i, row) in arrows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            if row[i] != 0 || row.iter().any(|&a| a < 0) {
                return Err(Error::Input("arrow counts must be nonnegative with no loops".into()));
            }
        }
        Ok(Quiver { arrows })
    }

    /// Two vertices with `k` arrows from vertex 1 to vertex 0.
    pub fn kronecker(k: i64) -> Self {
        Quiver { arrows: vec![vec![0, 0], vec![k, 0]] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[Vec<i64>] {
        &self.arrows
    }

    /// `S_ij = a_ij − a_ji`.
    pub fn skew(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.arrows[i][j] - self.arrows[j][i]).collect()).collect()
    }

    /// The charge lattice with `<v_i, v_j> = a_ji − a_ij`.
    pub fn lattice(&self) -> SkewLattice {
        let s = self.skew();
        SkewLattice::new(s.iter().map(|r| r.iter().map(|x| -x).collect()).collect()).expect("skew by construction")
    }

    /// No 2-cycles.
    pub fn is_cluster(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.arrows[i][j] == 0 || self.arrows[j][i] == 0))
    }

    /// A linear order of the vertices in which every arrow points to an
    /// earlier vertex (sinks first), preferring smaller indices.
    pub fn sink_order(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut out_deg: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| self.arrows[i][j] > 0).count()).collect();
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let v = (0..n).find(|&v| !done[v] && out_deg[v] == 0).ok_or(Error::CyclicQuiver)?;
            done[v] = true;
            order.push(v);
            for u in 0..n {
                if self.arrows[u][v] > 0 {
                    out_deg[u] -= 1;
                }
            }
        }
        Ok(order)
    }

    /// Matrix mutation at vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        if !self.is_cluster() {
            return Err(Error::NonCluster("quiver has a 2-cycle".into()));
        }
        let n = self.len();
        if k >= n {
            return Err(Error::Input(format!("vertex {k} out of range")));
        }
        let s = self.skew();
        let mut t = s.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    t[i][j] = -s[i][j];
                } else if s[i][k] > 0 && s[k][j] > 0 {
                    t[i][j] = s[i][j] + s[i][k] * s[k][j];
                    t[j][i] = -t[i][j];
                }
            }
        }
        let arrows = t.iter().map(|r| r.iter().map(|&x| x.max(0)).collect()).collect();
        Ok(Quiver { arrows })
    }

    /// The class basis after mutation at `k`: `v'_k = −v_k`, `v'_i = v_i` when
    /// there are arrows `i → k`, and `v'_i = v_i + S_ki v_k` otherwise.
    pub fn mutate_classes(&self, basis: &[Vec<i64>], k: usize) -> Result<Vec<Vec<i64>>> {
        if !self.is_cluster() {
            return Err(Error::NonCluster("quiver has a 2-cycle".into()));
        }
        if basis.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: basis.len() });
        }
        let s = self.skew();
        let vk = &basis[k];
        Ok(basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == k {
                    v.iter().map(|x| -x).collect()
                } else if s[i][k] > 0 {
                    v.clone()
                } else {
                    v.iter().zip(vk).map(|(a, b)| a + s[k][i] * b).collect()
                }
            })
            .collect())
    }
}
