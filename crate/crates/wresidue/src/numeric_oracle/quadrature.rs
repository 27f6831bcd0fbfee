//! Adaptive Gauss-Kronrod (7/15) quadrature, and the real line through `x = tan(t)`.

use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::OracleError;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    ((k * h), ((k - g) * h).norm())
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Bisect the worst panel until the summed error estimate is below
/// `abs_tol + rel_tol |I|`.
pub fn integrate<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_panels: usize) -> Result<QuadResult, OracleError> {
    let mut heap = BinaryHeap::new();
    let (v, e) = gk15(&mut f, a, b);
    heap.push(Panel { a, b, value: v, error: e });
    let mut evaluations = 15;
    loop {
        let total: Complex64 = heap.iter().map(|p| p.value).sum();
        let err: f64 = heap.iter().map(|p| p.error).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok(QuadResult { value: total, error: err, evaluations, intervals: heap.len() });
        }
        if heap.len() >= max_panels {
            return Err(OracleError::QuadratureFailure { panels: heap.len(), error: err, tolerance: abs_tol.max(rel_tol * total.norm()) });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (v, e) = gk15(&mut f, lo, hi);
            heap.push(Panel { a: lo, b: hi, value: v, error: e });
        }
        evaluations += 30;
    }
}

/// `∫_R f(x) dx` for `f` decaying at least like `|x|^-2`.
pub fn integrate_real_line<F: FnMut(f64) -> Complex64>(mut f: F, abs_tol: f64, rel_tol: f64) -> Result<QuadResult, OracleError> {
    let g = |t: f64| {
        let c = t.cos();
        if c.abs() < 1e-300 {
            return Complex64::new(0.0, 0.0);
        }
        f(t.tan()) / (c * c)
    };
    integrate(g, -FRAC_PI_2, FRAC_PI_2, abs_tol, rel_tol, 4000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lorentzian_and_friends() {
        let r = integrate_real_line(|x| Complex64::new(1.0 / (1.0 + x * x), 0.0), 1e-14, 1e-13).unwrap();
        assert!((r.value.re - PI).abs() < 1e-12);
        // ∫ x^2/(1+x^2)^3 = pi/8
        let r = integrate_real_line(|x| Complex64::new(x * x / (1.0 + x * x).powi(3), 0.0), 1e-14, 1e-13).unwrap();
        assert!((r.value.re - PI / 8.0).abs() < 1e-12);
        let r = integrate(|x| Complex64::new(x.exp(), 0.0), 0.0, 1.0, 1e-14, 1e-14, 100).unwrap();
        assert!((r.value.re - (1f64.exp() - 1.0)).abs() < 1e-13);
    }
}
