//! Exact polynomial bookkeeping for the moments.
//!
//! Polynomials without constant term are stored as coefficient vectors
//! indexed from 1: `c[0]` multiplies `x` (or `(x)_1`), `c[1]` multiplies
//! `x^2` (or `(x)_2`) and so on. The falling-factorial ("Pochhammer") basis
//! converts to the monomial basis through elementary symmetric polynomials of
//! `1, .., r-1`, and back through Stirling numbers of the second kind.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::enumerator::{count_ddcg_partitions, CountOptions, FRow};
use crate::error::Result;
use crate::graph::falling_factorial;

/// Binomial coefficient `C(n, r)`; zero when `r < 0` or `r > n`.
pub fn binomial(n: i64, r: i64) -> BigInt {
    if r < 0 || n < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for t in 0..r {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

pub fn catalan(k: usize) -> BigInt {
    binomial(2 * k as i64, k as i64) / (k + 1)
}

/// Stirling numbers of the second kind `S(n, j)` for `0 <= j <= n <= max`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=max {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|j| {
                    let keep = if j < n { &prev[j] * j } else { BigInt::zero() };
                    let grow = if j > 0 { prev[j - 1].clone() } else { BigInt::zero() };
                    keep + grow
                })
                .collect();
            rows.push(row);
        }
        Self { rows }
    }

    pub fn get(&self, n: usize, j: usize) -> BigInt {
        self.rows.get(n).and_then(|r| r.get(j)).cloned().unwrap_or_default()
    }

    /// `Bell(n) = sum_j S(n, j)`.
    pub fn bell(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }
}

/// Elementary symmetric polynomials `e_m(1, .., n)`.
#[derive(Debug, Clone)]
pub struct ElemSymTable {
    // rows[n][m] = e_m(1..n), m = 0..=n
    rows: Vec<Vec<BigInt>>,
}

impl ElemSymTable {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=max {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|m| {
                    let without = prev.get(m).cloned().unwrap_or_default();
                    let with = if m > 0 { &prev[m - 1] * n } else { BigInt::zero() };
                    without + with
                })
                .collect();
            rows.push(row);
        }
        Self { rows }
    }

    /// `e_m(1, .., n)`, zero for `m > n`.
    pub fn get(&self, m: usize, n: usize) -> BigInt {
        self.rows.get(n).and_then(|r| r.get(m)).cloned().unwrap_or_default()
    }
}

/// Borel triangle entry `f_{k,j} = C(2k+2, k-j) C(k+j, j) / (k+1)`, zero
/// outside `0 <= j <= k`.
pub fn borel(k: i64, j: i64) -> BigInt {
    if k < 0 || j < 0 || j > k {
        return BigInt::zero();
    }
    let num = binomial(2 * k + 2, k - j) * binomial(k + j, j);
    let (q, r) = num.div_rem(&BigInt::from(k + 1));
    debug_assert!(r.is_zero(), "Borel entry f({k},{j}) is not integral");
    q
}

/// Falling-factorial coefficients to monomial coefficients:
/// `a_j = sum_{r >= j} (-1)^{r-j} e_{r-j}(1, .., r-1) b_r`.
pub fn pochhammer_to_monomial(b: &[BigInt]) -> Vec<BigInt> {
    let n = b.len();
    let e = ElemSymTable::new(n);
    (1..=n)
        .map(|j| {
            (j..=n).fold(BigInt::zero(), |acc, r| {
                let term = e.get(r - j, r - 1) * &b[r - 1];
                if (r - j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Monomial coefficients to falling-factorial coefficients:
/// `b_j = sum_{r >= j} S(r, j) a_r`.
pub fn monomial_to_pochhammer(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let s = StirlingTable::new(n);
    (1..=n)
        .map(|j| (j..=n).map(|r| s.get(r, j) * &a[r - 1]).sum())
        .collect()
}

/// `sum_j c_j x^j` at `x`.
pub fn eval_monomial(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, cj| (acc + cj) * x)
}

/// `sum_j c_j (x)_j` at a nonnegative integer `x`.
pub fn eval_pochhammer(c: &[BigInt], x: u64) -> BigInt {
    c.iter()
        .enumerate()
        .map(|(i, cj)| cj * falling_factorial(x, i + 1))
        .sum()
}

/// `Q_k(N) = N^{2k+1} E[tr rho^k]` in both bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentPolynomial {
    k: usize,
    pochhammer: Vec<BigInt>,
    monomial: Vec<BigInt>,
}

impl MomentPolynomial {
    /// Builds `Q_k` from the counts `F(2k, j)`, `j = 1..=k+1`.
    ///
    /// Monomial coefficients are `a_j = sum_r (-1)^{r-j} e_{r-j}(1..r-1) F(2k, r)`.
    pub fn from_row(row: &FRow) -> Self {
        let pochhammer: Vec<BigInt> = row.counts().iter().map(|&c| BigInt::from(c)).collect();
        let monomial = pochhammer_to_monomial(&pochhammer);
        Self { k: row.k(), pochhammer, monomial }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `b_j = F(2k, j)` for `j = 1..=k+1`.
    pub fn pochhammer_coeffs(&self) -> &[BigInt] {
        &self.pochhammer
    }

    /// `a_j` for `j = 1..=k+1`.
    pub fn monomial_coeffs(&self) -> &[BigInt] {
        &self.monomial
    }

    /// `Q_k(n)` from the monomial coefficients.
    pub fn evaluate(&self, n: u64) -> BigInt {
        eval_monomial(&self.monomial, &BigInt::from(n))
    }

    /// `Q_k(n)` from the falling-factorial coefficients.
    pub fn evaluate_pochhammer(&self, n: u64) -> BigInt {
        eval_pochhammer(&self.pochhammer, n)
    }

    /// `E[tr rho_N^k] = Q_k(N) / N^{2k+1}`.
    pub fn moment(&self, n: u64) -> BigRational {
        BigRational::new(self.evaluate(n), BigInt::from(n).pow(2 * self.k as u32 + 1))
    }

    /// Checks that both bases agree at `N = 1..=2k+3`.
    pub fn bases_agree(&self) -> bool {
        (1..=2 * self.k as u64 + 3).all(|n| self.evaluate(n) == self.evaluate_pochhammer(n))
    }

    /// Renders `Q_k` as e.g. `2N^3 - N^2`.
    pub fn to_monomial_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.monomial.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = i + 1;
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push('N');
            if power > 1 {
                out.push('^');
                out.push_str(&power.to_string());
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Monomial coefficients of the Borel-triangle formula for `Q_k`:
/// `a_1 = 0` and `a_j = (-1)^{k-j+1} f_{k-1, k-j+1}` for `j = 2..=k+1`.
pub fn conjectured_monomial(k: usize) -> Vec<BigInt> {
    let k = k as i64;
    (1..=k + 1)
        .map(|j| {
            if j == 1 {
                return BigInt::zero();
            }
            let f = borel(k - 1, k - j + 1);
            if (k - j + 1) % 2 == 0 {
                f
            } else {
                -f
            }
        })
        .collect()
}

/// The counts `F(2k, j)` the Borel-triangle formula predicts:
/// `sum_{r >= j} (-1)^{k-r+1} S(r, j) f_{k-1, k-r+1}`, for `j = 1..=k+1`.
pub fn conjectured_ftable(k: usize) -> Vec<BigInt> {
    let s = StirlingTable::new(k + 1);
    let ki = k as i64;
    (1..=k + 1)
        .map(|j| {
            (j..=k + 1).fold(BigInt::zero(), |acc, r| {
                let ri = r as i64;
                let term = s.get(r, j) * borel(ki - 1, ki - ri + 1);
                if (ki - ri + 1) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// The moment the Borel-triangle formula predicts, as an exact rational.
pub fn conjectured_moment(k: usize, n: u64) -> BigRational {
    let q = eval_monomial(&conjectured_monomial(k), &BigInt::from(n));
    BigRational::new(q, BigInt::from(n).pow(2 * k as u32 + 1))
}

/// A `(k, j)` where the Borel-triangle prediction differs from the count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disproof {
    pub k: usize,
    pub j: usize,
    pub conjectured: BigInt,
    pub actual: BigInt,
}

/// Compares a counted row against the prediction, one entry per `j`.
pub fn compare_row(row: &FRow) -> Vec<(usize, BigInt, BigInt)> {
    conjectured_ftable(row.k())
        .into_iter()
        .zip(row.counts())
        .enumerate()
        .map(|(i, (c, &a))| (i + 1, c, BigInt::from(a)))
        .collect()
}

/// Mismatches between the counted rows and the prediction, ordered by
/// `(k, j)`.
pub fn disproofs_in<'a>(rows: impl IntoIterator<Item = &'a FRow>) -> Vec<Disproof> {
    let mut out: Vec<Disproof> = rows
        .into_iter()
        .flat_map(|row| {
            let k = row.k();
            compare_row(row)
                .into_iter()
                .filter(|(_, c, a)| c != a)
                .map(move |(j, conjectured, actual)| Disproof { k, j, conjectured, actual })
        })
        .collect();
    out.sort_by_key(|d| (d.k, d.j));
    out
}

/// Counts every `k <= k_max` and lists the mismatches.
pub fn find_disproof(k_max: usize, opts: &CountOptions) -> Result<Vec<Disproof>> {
    let rows = (1..=k_max)
        .map(|k| count_ddcg_partitions(k, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(disproofs_in(&rows))
}
