//! Complex matrices for the Clifford generators, built from Pauli blocks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::OracleError;

pub type CMat = DMatrix<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli(k: u8) -> CMat {
    let z = c(0.0, 0.0);
    match k {
        1 => CMat::from_row_slice(2, 2, &[z, c(1.0, 0.0), c(1.0, 0.0), z]),
        2 => CMat::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
        _ => CMat::from_row_slice(2, 2, &[c(1.0, 0.0), z, z, c(-1.0, 0.0)]),
    }
}

/// `gamma_1, ..., gamma_n` with `gamma_k^2 = -1`, acting on `C^(2^(n/2))`.
#[derive(Clone, Debug)]
pub struct GammaRep {
    n: u8,
    size: usize,
    matrices: Vec<CMat>,
}

impl GammaRep {
    pub fn new(n: u8) -> Result<Self, OracleError> {
        if n < 2 || n % 2 != 0 || n > 12 {
            return Err(OracleError::Unsupported(format!("gamma matrices need even n in 2..=12, got {n}")));
        }
        let half = (n / 2) as usize;
        let id2 = CMat::identity(2, 2);
        let mut matrices = Vec::with_capacity(n as usize);
        for k in 0..half {
            for p in [1u8, 2] {
                // sigma3^(k) (x) sigma_p (x) id^(half-k-1)
                let mut m = CMat::identity(1, 1);
                for _ in 0..k {
                    m = m.kronecker(&pauli(3));
                }
                m = m.kronecker(&pauli(p));
                for _ in k + 1..half {
                    m = m.kronecker(&id2);
                }
                matrices.push(m * I);
            }
        }
        Ok(GammaRep { n, size: 1 << half, matrices })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Spinor dimension `2^(n/2)`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> CMat {
        CMat::identity(self.size, self.size)
    }

    pub fn zero(&self) -> CMat {
        CMat::zeros(self.size, self.size)
    }

    /// `gamma_k`, `1 <= k <= n`.
    pub fn gamma(&self, k: u8) -> &CMat {
        &self.matrices[k as usize - 1]
    }

    /// Ordered product of the generators in the bit mask, lowest index first.
    pub fn word(&self, mask: u32) -> CMat {
        let mut m = self.identity();
        for b in 0..self.n {
            if mask & (1 << b) != 0 {
                m *= self.gamma(b + 1);
            }
        }
        m
    }

    /// `sum_j v_j gamma_j` over the first `v.len()` generators.
    pub fn clifford(&self, v: &[f64]) -> CMat {
        let mut m = self.zero();
        for (j, x) in v.iter().enumerate() {
            m += self.gamma(j as u8 + 1) * c(*x, 0.0);
        }
        m
    }

    /// Largest entrywise deviation from `gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij`.
    pub fn relation_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let id = self.identity();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let ac = self.gamma(i) * self.gamma(j) + self.gamma(j) * self.gamma(i);
                let want = if i == j { &id * c(-2.0, 0.0) } else { self.zero() };
                worst = worst.max((ac - want).iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        worst
    }
}

/// Matrix trace.
pub fn trace(m: &CMat) -> Complex64 {
    m.trace()
}

/// `tr(a b)` without forming the product.
pub fn trace_of_product(a: &CMat, b: &CMat) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}
