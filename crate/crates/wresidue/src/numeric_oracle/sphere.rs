//! Product Gauss rules on `S^{d-1} ⊂ R^d`.
//!
//! `x = (t, sqrt(1-t^2) y)` with `y ∈ S^{d-2}` gives
//! `dsigma_{d-1} = (1-t^2)^((d-3)/2) dt dsigma_{d-2}`; each level uses
//! Gauss-Jacobi nodes with `alpha = beta = (d-3)/2`, the last circle the
//! trapezoid rule.

use std::f64::consts::PI;

use gauss_quad::jacobi::GaussJacobi;

use super::OracleError;

#[derive(Clone, Debug)]
pub struct SphereRule {
    pub d: u32,
    pub degree: u32,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    /// Exact for polynomials of total degree `<= degree`.
    pub fn exact_to(d: u32, degree: u32) -> Result<Self, OracleError> {
        if d < 2 {
            return Err(OracleError::Unsupported("sphere rules need ambient dimension >= 2".into()));
        }
        let pts = build(d, degree)?;
        let (nodes, weights) = pts.into_iter().unzip();
        Ok(SphereRule { d, degree, nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }
}

fn build(d: u32, degree: u32) -> Result<Vec<(Vec<f64>, f64)>, OracleError> {
    if d == 2 {
        let m = degree as usize + 1;
        return Ok((0..m)
            .map(|j| {
                let phi = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                (vec![phi.cos(), phi.sin()], 2.0 * PI / m as f64)
            })
            .collect());
    }
    let a = (d as f64 - 3.0) / 2.0;
    let npts = ((degree as usize + 2) / 2).max(2);
    let rule = GaussJacobi::new(npts, a, a).map_err(|e| OracleError::Unsupported(format!("Gauss-Jacobi rule: {e}")))?;
    let inner = build(d - 1, degree)?;
    let mut out = Vec::with_capacity(npts * inner.len());
    for (t, w) in rule.iter() {
        let s = (1.0 - t * t).max(0.0).sqrt();
        for (y, wy) in &inner {
            let mut x = Vec::with_capacity(d as usize);
            x.push(*t);
            x.extend(y.iter().map(|v| s * v));
            out.push((x, w * wy));
        }
    }
    Ok(out)
}

/// `∫_{S^{d-1}} prod x_i^{a_i}` from the Gamma-function formula.
pub fn monomial_integral(exps: &[u32]) -> f64 {
    use statrs::function::gamma::gamma;
    if exps.iter().any(|e| e % 2 == 1) {
        return 0.0;
    }
    let d = exps.len() as f64;
    let total: f64 = exps.iter().map(|&e| e as f64).sum();
    let num: f64 = exps.iter().map(|&e| gamma((e as f64 + 1.0) / 2.0)).product();
    2.0 * num / gamma((total + d) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_measure() {
        let r = SphereRule::exact_to(3, 4).unwrap();
        assert!((r.weights.iter().sum::<f64>() - 4.0 * PI).abs() < 1e-12);
        let r = SphereRule::exact_to(5, 4).unwrap();
        assert!((r.weights.iter().sum::<f64>() - 8.0 * PI * PI / 3.0).abs() < 1e-12);
        assert!(r.nodes.iter().all(|x| (x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-13));
    }

    #[test]
    fn low_moment() {
        let r = SphereRule::exact_to(3, 4).unwrap();
        let v = r.integrate(|x| x[0] * x[0] * x[1] * x[1]);
        assert!((v - monomial_integral(&[2, 2, 0])).abs() < 1e-13);
        assert!((monomial_integral(&[2, 0, 0]) - 4.0 * PI / 3.0).abs() < 1e-13);
    }
}
