//! Literal Monte Carlo evaluation of the traffic state on small graphs.
//!
//! These oracles sum the edge product over every map `kappa: V -> [N]` for
//! each sampled matrix. They are exponential in `|V|` and exist to check the
//! exact quotient formula end to end, including the probabilistic model.

use num::complex::Complex64;

use super::{ColoredDigraph, EdgeColor};
use crate::error::{invalid, Error, Result};
use crate::montecarlo::{sample_unimodular, RunningStats};

/// Limit on both the matrix dimension and the vertex count for the oracles.
pub const ORACLE_MAX_DIM: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrafficEstimate {
    pub mean: Complex64,
    pub std_error_re: f64,
    pub std_error_im: f64,
    pub samples: u64,
}

/// Estimates `tau[G(U, U*)] = E[(1/N) sum_kappa prod_e U^{c(e)}(kappa(head), kappa(tail))]`
/// over all maps `kappa`.
pub fn traffic_state_brute(
    g: &ColoredDigraph,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<TrafficEstimate> {
    brute(g, n, samples, seed, false)
}

/// As [`traffic_state_brute`], restricted to injective maps.
pub fn injective_traffic_brute(
    g: &ColoredDigraph,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<TrafficEstimate> {
    brute(g, n, samples, seed, true)
}

fn brute(
    g: &ColoredDigraph,
    n: usize,
    samples: u64,
    seed: u64,
    injective: bool,
) -> Result<TrafficEstimate> {
    if n == 0 || samples == 0 {
        return Err(invalid("dimension and sample count must be positive"));
    }
    if n > ORACLE_MAX_DIM {
        return Err(Error::ScaleLimit { what: "matrix dimension", limit: ORACLE_MAX_DIM, got: n });
    }
    if g.vertex_count() > ORACLE_MAX_DIM {
        return Err(Error::ScaleLimit {
            what: "vertex count",
            limit: ORACLE_MAX_DIM,
            got: g.vertex_count(),
        });
    }

    let maps = labelings(g.vertex_count(), n, injective);
    let mut re = RunningStats::default();
    let mut im = RunningStats::default();
    for index in 0..samples {
        let u = sample_unimodular(n, seed, index);
        let mut total = Complex64::new(0.0, 0.0);
        for kappa in &maps {
            let mut prod = Complex64::new(1.0, 0.0);
            for e in g.edges() {
                let (t, h) = (kappa[e.tail], kappa[e.head]);
                prod *= match e.color {
                    EdgeColor::Red => u.entry(h, t),
                    // U*(kappa(head), kappa(tail)) = conj U(kappa(tail), kappa(head))
                    EdgeColor::Blue => u.entry(t, h).conj(),
                };
            }
            total += prod;
        }
        total /= n as f64;
        re.push(total.re);
        im.push(total.im);
    }
    Ok(TrafficEstimate {
        mean: Complex64::new(re.mean(), im.mean()),
        std_error_re: re.std_error(),
        std_error_im: im.std_error(),
        samples,
    })
}

fn labelings(vertices: usize, n: usize, injective: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut kappa = vec![0usize; vertices];
    loop {
        let ok = !injective || {
            let mut seen = 0u64;
            kappa.iter().all(|&x| {
                let fresh = seen & (1 << x) == 0;
                seen |= 1 << x;
                fresh
            })
        };
        if ok {
            out.push(kappa.clone());
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == vertices {
                return out;
            }
            kappa[i] += 1;
            if kappa[i] < n {
                break;
            }
            kappa[i] = 0;
            i += 1;
        }
    }
}
