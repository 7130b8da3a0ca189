//! Incidence matrices and their exact characteristic polynomials.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::letter::Letter;

/// Square matrix with `entry(x, y)` = number of occurrences of `y` in σ(x).
///
/// Rows and columns follow the substitution's canonical alphabet order. With
/// this convention the row vector of letter counts of σⁿ(ι) times the matrix
/// gives the counts of σⁿ⁺¹(ι).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    labels: Vec<Letter>,
    entries: Vec<Vec<u64>>,
}

pub type IntMatrix = Vec<Vec<BigInt>>;

impl IncidenceMatrix {
    pub(crate) fn new(labels: Vec<Letter>, entries: Vec<Vec<u64>>) -> Self {
        debug_assert!(entries.iter().all(|row| row.len() == labels.len()));
        IncidenceMatrix { labels, entries }
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn entry(&self, x: usize, y: usize) -> u64 {
        self.entries[x][y]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn transpose(&self) -> IncidenceMatrix {
        let n = self.dim();
        let entries = (0..n)
            .map(|y| (0..n).map(|x| self.entries[x][y]).collect())
            .collect();
        IncidenceMatrix::new(self.labels.clone(), entries)
    }

    /// Letter counts of σ(w) from the letter counts of `w`.
    pub fn step(&self, counts: &[BigUint]) -> Vec<BigUint> {
        let n = self.dim();
        let mut next = vec![BigUint::zero(); n];
        for (x, count) in counts.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for (y, &e) in self.entries[x].iter().enumerate() {
                if e != 0 {
                    next[y] += count * e;
                }
            }
        }
        next
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    /// Coefficients of `det(xI − M)`, leading coefficient first:
    /// `[1, p_1, …, p_r]` for `x^r + p_1 x^{r−1} + … + p_r`.
    ///
    /// Uses the Faddeev–LeVerrier recursion; every division is exact.
    pub fn characteristic_polynomial(&self) -> Vec<BigInt> {
        let a = self.to_int_matrix();
        let n = self.dim();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::one();
        let mut m = zero_matrix(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + p_{k-1} I
            let mut next = mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &coeffs[k - 1];
            }
            m = next;
            let am = mul(&a, &m);
            let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
            let (q, r) = num_integer::Integer::div_rem(&-trace, &BigInt::from(k));
            debug_assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
            coeffs[k] = q;
        }
        coeffs
    }

    /// `p(M)` for a polynomial given leading coefficient first.
    pub fn evaluate_polynomial(&self, coeffs: &[BigInt]) -> IntMatrix {
        let a = self.to_int_matrix();
        let n = self.dim();
        // Horner: ((c0 M + c1) M + c2) ...
        let mut acc = zero_matrix(n);
        for c in coeffs {
            acc = mul(&acc, &a);
            for (i, row) in acc.iter_mut().enumerate() {
                row[i] += c;
            }
        }
        acc
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "   ")?;
        for l in &self.labels {
            write!(f, " {l}")?;
        }
        writeln!(f)?;
        for (l, row) in self.labels.iter().zip(&self.entries) {
            write!(f, "{l}: ")?;
            for e in row {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) fn zero_matrix(n: usize) -> IntMatrix {
    vec![vec![BigInt::zero(); n]; n]
}

pub(crate) fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn is_zero_matrix(m: &IntMatrix) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}
