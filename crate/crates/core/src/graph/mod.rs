//! Colored directed multigraphs, their quotients, and the balance predicate.
//!
//! An edge labeled with `U` is colored red and an edge labeled with `U*` is
//! colored blue. For an injective assignment of vertices to matrix indices,
//! the expected edge product is nonzero exactly when the colored graph is
//! *balanced* (a double directed colored graph): for every ordered pair of
//! vertices `(u, v)`, loops included, the number of red edges `u -> v` equals
//! the number of blue edges `v -> u`. In that case the injective traffic
//! value of the graph is `(N)_{|V|} / N`.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{invalid, Error, Result};

mod partition;
mod traffic;

pub use partition::{AllPartitions, SetPartition};
pub use traffic::{injective_traffic_brute, traffic_state_brute, TrafficEstimate, ORACLE_MAX_DIM};

/// Largest vertex count accepted by [`tau_via_quotients`].
pub const QUOTIENT_SUM_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeColor {
    /// Labeled with `U`.
    Red,
    /// Labeled with `U*`.
    Blue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub color: EdgeColor,
}

impl Edge {
    pub fn red(tail: usize, head: usize) -> Self {
        Self { tail, head, color: EdgeColor::Red }
    }

    pub fn blue(tail: usize, head: usize) -> Self {
        Self { tail, head, color: EdgeColor::Blue }
    }
}

/// A directed multigraph with ordered, colored edges. Loops and parallel
/// edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredDigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl ColoredDigraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if let Some((i, e)) = edges
            .iter()
            .enumerate()
            .find(|(_, e)| e.tail >= vertex_count || e.head >= vertex_count)
        {
            return Err(invalid(format!(
                "edge {i} ({} -> {}) references a vertex outside 0..{vertex_count}",
                e.tail, e.head
            )));
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn count_color(&self, color: EdgeColor) -> usize {
        self.edges.iter().filter(|e| e.color == color).count()
    }

    /// Merges the vertices in each block of `partition`, keeping every edge
    /// in its original position and color. Block `b` becomes vertex `b`.
    pub fn quotient(&self, partition: &SetPartition) -> Result<Self> {
        if partition.len() != self.vertex_count {
            return Err(invalid(format!(
                "partition covers {} elements but the graph has {} vertices",
                partition.len(),
                self.vertex_count
            )));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                tail: partition.block_of(e.tail),
                head: partition.block_of(e.head),
                color: e.color,
            })
            .collect();
        Ok(Self {
            vertex_count: partition.block_count(),
            edges,
        })
    }

    /// True iff red `u -> v` and blue `v -> u` edges are equinumerous for
    /// every ordered pair `(u, v)`.
    pub fn is_ddcg(&self) -> bool {
        let n = self.vertex_count;
        let mut balance = vec![0i64; n * n];
        for e in &self.edges {
            match e.color {
                EdgeColor::Red => balance[e.tail * n + e.head] += 1,
                // a blue edge v -> u balances the red pair (u, v)
                EdgeColor::Blue => balance[e.head * n + e.tail] -= 1,
            }
        }
        balance.iter().all(|&c| c == 0)
    }
}

/// The `2k`-cycle whose edges alternate between `U` and `U*`.
///
/// Edge `e_i` runs from vertex `i` to vertex `i + 1 (mod 2k)` and is red for
/// even `i`, blue for odd `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingCycle {
    k: usize,
    graph: ColoredDigraph,
}

impl AlternatingCycle {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("alternating cycle needs k >= 1"));
        }
        let n = 2 * k;
        let edges = (0..n)
            .map(|i| Edge {
                tail: i,
                head: (i + 1) % n,
                color: edge_color(i),
            })
            .collect();
        Ok(Self {
            k,
            graph: ColoredDigraph { vertex_count: n, edges },
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &ColoredDigraph {
        &self.graph
    }
}

/// Color of edge `e_i` of the alternating cycle.
#[inline]
pub fn edge_color(i: usize) -> EdgeColor {
    if i % 2 == 0 {
        EdgeColor::Red
    } else {
        EdgeColor::Blue
    }
}

/// A colored graph together with the dimension of the matrices placed on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryLabeling {
    graph: ColoredDigraph,
    dimension: u64,
}

impl UnitaryLabeling {
    pub fn new(graph: ColoredDigraph, dimension: u64) -> Result<Self> {
        if dimension == 0 {
            return Err(invalid("matrix dimension must be at least 1"));
        }
        Ok(Self { graph, dimension })
    }

    pub fn graph(&self) -> &ColoredDigraph {
        &self.graph
    }

    pub fn dimension(&self) -> u64 {
        self.dimension
    }
}

/// Falling factorial `(n)_j = n (n-1) ... (n-j+1)`; zero once `j > n`.
pub fn falling_factorial(n: u64, j: usize) -> BigInt {
    if j as u64 > n {
        return BigInt::zero();
    }
    (0..j as u64).fold(BigInt::one(), |acc, t| acc * (n - t))
}

/// Exact injective traffic value of a unimodular labeling:
/// `(N)_{|V|} / N` for a balanced graph and `0` otherwise.
pub fn injective_traffic_value(labeling: &UnitaryLabeling) -> BigRational {
    let g = labeling.graph();
    if !g.is_ddcg() {
        return BigRational::zero();
    }
    BigRational::new(
        falling_factorial(labeling.dimension(), g.vertex_count()),
        BigInt::from(labeling.dimension()),
    )
}

/// Traffic value of `g` with unimodular entries of dimension `n`, obtained by
/// summing the injective value of every quotient of `g`.
pub fn tau_via_quotients(g: &ColoredDigraph, n: u64) -> Result<BigRational> {
    if g.vertex_count() > QUOTIENT_SUM_MAX_VERTICES {
        return Err(Error::ScaleLimit {
            what: "vertex count",
            limit: QUOTIENT_SUM_MAX_VERTICES,
            got: g.vertex_count(),
        });
    }
    if n == 0 {
        return Err(invalid("matrix dimension must be at least 1"));
    }
    let mut numerator = BigInt::zero();
    for pi in SetPartition::all(g.vertex_count()) {
        if g.quotient(&pi)?.is_ddcg() {
            numerator += falling_factorial(n, pi.block_count());
        }
    }
    Ok(BigRational::new(numerator, BigInt::from(n)))
}
