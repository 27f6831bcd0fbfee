//! Principal parts at `+i` / `-i` by the trapezoid rule on small circles.
//!
//! For `f` with a pole of finite order at `a` and no other singularity within
//! distance 2, `c_m = (1/2 pi i) ∮ f(eta) (eta - a)^(m-1) d eta` is the
//! coefficient of `(z - a)^(-m)`. On a circle of radius `rho` with `N` nodes the
//! aliasing error is of order `(rho/2)^(N-m) rho^m` times the size of the
//! regular part.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::CMat;
use super::OracleError;

pub const PLUS_I: Complex64 = Complex64::new(0.0, 1.0);
pub const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourRule {
    pub radius: f64,
    pub points: usize,
    pub max_order: usize,
}

impl Default for ContourRule {
    fn default() -> Self {
        ContourRule { radius: 0.5, points: 24, max_order: 8 }
    }
}

impl ContourRule {
    pub fn nodes(&self, a: Complex64) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        (0..self.points).map(move |j| {
            let e = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / self.points as f64);
            (a + e * self.radius, e)
        })
    }

    /// Principal parts of several matrix functions sampled together:
    /// `out[which][m-1]` multiplies `(z - a)^(-m)`.
    pub fn principal_parts<F>(&self, a: Complex64, width: usize, mut f: F) -> Result<Vec<Vec<CMat>>, OracleError>
    where
        F: FnMut(Complex64) -> Result<Vec<CMat>, OracleError>,
    {
        let mut out: Vec<Vec<CMat>> = Vec::with_capacity(width);
        for (eta, e) in self.nodes(a) {
            let vals = f(eta)?;
            if out.is_empty() {
                out = vals.iter().map(|v| vec![CMat::zeros(v.nrows(), v.ncols()); self.max_order]).collect();
            }
            for (k, v) in vals.iter().enumerate() {
                let mut w = Complex64::new(1.0 / self.points as f64, 0.0);
                for m in 0..self.max_order {
                    w *= e * self.radius;
                    out[k][m] += v * w;
                }
            }
        }
        Ok(out)
    }

    /// Scalar version of [`principal_parts`](Self::principal_parts).
    pub fn principal_parts_scalar<F>(&self, a: Complex64, mut f: F) -> Vec<Complex64>
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let mut out = vec![Complex64::new(0.0, 0.0); self.max_order];
        for (eta, e) in self.nodes(a) {
            let v = f(eta);
            let mut w = Complex64::new(1.0 / self.points as f64, 0.0);
            for c in out.iter_mut() {
                w *= e * self.radius;
                *c += v * w;
            }
        }
        out
    }
}

/// `d^k/dz^k (z - a)^(-m) = (-1)^k m (m+1) ... (m+k-1) (z - a)^(-m-k)`.
pub fn pole_derivative(m: usize, k: u32, a: Complex64, z: Complex64) -> Complex64 {
    let mut c = 1.0;
    for s in 0..k as usize {
        c *= -((m + s) as f64);
    }
    (z - a).powi(-((m + k as usize) as i32)) * c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_principal_parts() {
        let r = ContourRule::default();
        // f = 2/(z-i)^3 - 1/(z-i) + 5/(z+i)^2
        let f = |z: Complex64| (z - PLUS_I).powi(-3) * 2.0 - (z - PLUS_I).inv() + (z - MINUS_I).powi(-2) * 5.0;
        let c = r.principal_parts_scalar(PLUS_I, f);
        assert!((c[0] + 1.0).norm() < 1e-12);
        assert!(c[1].norm() < 1e-12);
        assert!((c[2] - 2.0).norm() < 1e-12);
        // aliasing grows like 2^m (rho/2)^N with the order m
        assert!(c[3..].iter().all(|x| x.norm() < 1e-10));
        // pi+ keeps the principal part at +i
        let z = Complex64::new(0.7, 0.0);
        let p: Complex64 = c.iter().enumerate().map(|(m, cm)| cm * pole_derivative(m + 1, 0, PLUS_I, z)).sum();
        let want = (z - PLUS_I).powi(-3) * 2.0 - (z - PLUS_I).inv();
        assert!((p - want).norm() < 1e-10);
    }

    #[test]
    fn derivative_of_pole() {
        let a = PLUS_I;
        let z = Complex64::new(0.4, 0.0);
        let h = 1e-5;
        let num = (pole_derivative(2, 0, a, z + h) - pole_derivative(2, 0, a, z - h)) / (2.0 * h);
        assert!((num - pole_derivative(2, 1, a, z)).norm() < 1e-8);
    }
}
