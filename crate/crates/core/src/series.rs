//! Truncated power series with real coefficients.
//!
//! A [`PowerSeries`] of order `N` stores `c_0..=c_N` and every operation
//! truncates at degree `N`; nothing is read or written beyond it. Binary
//! operations require both operands to have the same order.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Default truncation degree used across the crate.
pub const DEFAULT_ORDER: usize = 48;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl PowerSeries {
    /// Builds a series from `c_0..=c_N`. The order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("a power series needs at least the constant coefficient");
        }
        Ok(Self { coeffs })
    }

    /// Builds a series of the given order from a prefix of coefficients,
    /// padding with zeros and dropping anything past `order`.
    pub fn from_prefix(order: usize, prefix: &[f64]) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        for (c, &p) in coeffs.iter_mut().zip(prefix) {
            *c = p;
        }
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> f64) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn constant(order: usize, c: f64) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, 1.0)
    }

    /// `c * z^k`, or zero if `k > order`.
    pub fn monomial(order: usize, k: usize, c: f64) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series `z`.
    pub fn z(order: usize) -> Self {
        Self::monomial(order, 1, 1.0)
    }

    /// Maclaurin series of `arctan z`: `(-1)^k / (2k+1)` at degree `2k+1`.
    pub fn arctan(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n % 2 == 1 {
                let k = (n - 1) / 2;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign / n as f64
            } else {
                0.0
            }
        })
    }

    /// Maclaurin series of `e^{cz}`.
    pub fn exp_linear(order: usize, c: f64) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = 1.0;
        for n in 0..=order {
            coeffs.push(term);
            term *= c / (n + 1) as f64;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero past the truncation degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Re-truncates (or zero-pads) to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_prefix(order, &self.coeffs)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = match op {
            ArithOp::Add => self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            ArithOp::Sub => self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            ArithOp::Mul => {
                let n = self.order();
                (0..=n)
                    .map(|k| (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum())
                    .collect()
            }
        };
        Ok(Self { coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.arith(other, ArithOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.arith(other, ArithOp::Mul)
    }

    /// Quotient `q` with `self = divisor * q` through degree `N`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_order(divisor)?;
        let b0 = divisor.coeffs[0];
        if b0 == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.order();
        let mut q = vec![0.0; n + 1];
        for k in 0..=n {
            let acc: f64 = (1..=k).map(|i| divisor.coeffs[i] * q[k - i]).sum();
            q[k] = (self.coeffs[k] - acc) / b0;
        }
        Ok(Self { coeffs: q })
    }

    pub fn reciprocal(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// Taylor coefficients of `self ∘ inner` through degree `N`.
    ///
    /// Horner's scheme over series; `inner(0)` must vanish.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if inner.coeffs[0] != 0.0 {
            return domain("composition requires the inner series to vanish at 0");
        }
        let n = self.order();
        let mut acc = Self::constant(n, self.coeffs[n]);
        for k in (0..n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// `exp(f)` for `f(0) = 0`, via `n h_n = Σ_{k=1..n} k f_k h_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return domain("exp requires a vanishing constant term");
        }
        let n = self.order();
        let mut h = vec![0.0; n + 1];
        h[0] = 1.0;
        for m in 1..=n {
            let s: f64 = (1..=m).map(|k| k as f64 * self.coeffs[k] * h[m - k]).sum();
            h[m] = s / m as f64;
        }
        Ok(Self { coeffs: h })
    }

    /// Antiderivative of `f(t)/t` vanishing at 0: `g_k = f_k / k`.
    pub fn integrate_over_t(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return domain("f(t)/t has a logarithmic singularity unless f(0) = 0");
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k == 0 { 0.0 } else { c / k as f64 })
            .collect();
        Ok(Self { coeffs })
    }

    /// Term-wise derivative. The order drops by one (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        }
    }

    /// Multiplies by `z`, keeping the order (the top coefficient falls off).
    pub fn shift_up(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![0.0; n + 1];
        coeffs[1..].copy_from_slice(&self.coeffs[..n]);
        Self { coeffs }
    }

    /// Divides by `z`; requires `c_0 = 0`. The order drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return domain("cannot divide by z: nonzero constant term");
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Crude bound on the omitted tail at radius `r`, using the size of the
    /// trailing coefficients as a proxy for the next ones.
    pub fn tail_estimate(&self, r: f64) -> f64 {
        let n = self.order();
        let lo = n.saturating_sub(3);
        let c = self.coeffs[lo..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if r >= 1.0 {
            return f64::INFINITY;
        }
        c * r.powi(n as i32 + 1) / (1.0 - r)
    }
}

/// Free-function form of [`PowerSeries::arith`].
pub fn ps_arith(a: &PowerSeries, b: &PowerSeries, op: ArithOp) -> Result<PowerSeries> {
    a.arith(b, op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn close(a: &PowerSeries, b: &[f64], tol: f64) {
        assert_eq!(a.order() + 1, b.len(), "order");
        for (k, (x, y)) in a.coeffs().iter().zip(b).enumerate() {
            assert!((x - y).abs() <= tol, "coefficient {k}: {x} vs {y}");
        }
    }

    #[test]
    fn difference_of_squares() {
        let a = PowerSeries::from_prefix(3, &[1.0, 1.0]);
        let b = PowerSeries::from_prefix(3, &[1.0, -1.0]);
        close(&a.mul(&b).unwrap(), &[1.0, 0.0, -1.0, 0.0], 0.0);
    }

    #[test]
    fn multiplicative_identity() {
        let f = PowerSeries::from_prefix(5, &[0.3, -1.0, 2.0, 0.5, 0.0, 7.0]);
        assert_eq!(f.mul(&PowerSeries::one(5)).unwrap(), f);
    }

    #[test]
    fn arctan_squared_even_coefficients() {
        // hand convolution of 1, 0, -1/3, 0, 1/5 with itself
        let a = PowerSeries::arctan(6);
        let sq = a.mul(&a).unwrap();
        close(
            &sq,
            &[0.0, 0.0, 1.0, 0.0, -2.0 / 3.0, 0.0, 23.0 / 45.0],
            1e-15,
        );
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = PowerSeries::zero(3);
        let b = PowerSeries::zero(4);
        assert_eq!(
            a.add(&b),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
        assert!(ps_arith(&a, &b, ArithOp::Mul).is_err());
    }

    #[test]
    fn compose_with_identity() {
        let f = PowerSeries::from_prefix(6, &[0.5, 1.0, -2.0, 0.25, 3.0, 0.0, -1.0]);
        assert_eq!(f.compose(&PowerSeries::z(6)).unwrap(), f);
    }

    #[test]
    fn arctan_of_cube() {
        let g = PowerSeries::monomial(9, 3, 1.0);
        let r = PowerSeries::arctan(9).compose(&g).unwrap();
        let mut want = [0.0; 10];
        want[3] = 1.0;
        want[9] = -1.0 / 3.0;
        close(&r, &want, 1e-15);
    }

    #[test]
    fn arctan_of_cayley_inverse_of_koebe_logderiv() {
        // p = (1+z)/(1-z) gives w = (p-1)/(p+1) = z
        let n = 10;
        let p = PowerSeries::from_prefix(n, &[1.0, 1.0])
            .div(&PowerSeries::from_prefix(n, &[1.0, -1.0]))
            .unwrap();
        let one = PowerSeries::one(n);
        let w = p.sub(&one).unwrap().div(&p.add(&one).unwrap()).unwrap();
        close(&w, PowerSeries::z(n).coeffs(), 1e-15);
        let at = PowerSeries::arctan(n).compose(&w).unwrap();
        close(&at, PowerSeries::arctan(n).coeffs(), 1e-15);
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        let g = PowerSeries::from_prefix(3, &[0.1, 1.0]);
        assert!(matches!(
            PowerSeries::arctan(3).compose(&g),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exp_cases() {
        assert_eq!(PowerSeries::zero(5).exp().unwrap(), PowerSeries::one(5));
        let e = PowerSeries::z(4).exp().unwrap();
        close(&e, &[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0], 1e-16);
        assert!(PowerSeries::one(3).exp().is_err());
    }

    #[test]
    fn integrate_over_t_cases() {
        close(
            &PowerSeries::z(4).integrate_over_t().unwrap(),
            PowerSeries::z(4).coeffs(),
            0.0,
        );
        close(
            &PowerSeries::arctan(5).integrate_over_t().unwrap(),
            &[0.0, 1.0, 0.0, -1.0 / 9.0, 0.0, 1.0 / 25.0],
            1e-16,
        );
        // (e^t - 1)/t integrated: z + z^2/4 + z^3/18
        let em1 = PowerSeries::exp_linear(3, 1.0)
            .sub(&PowerSeries::one(3))
            .unwrap();
        close(
            &em1.integrate_over_t().unwrap(),
            &[0.0, 1.0, 0.25, 1.0 / 18.0],
            1e-16,
        );
        assert!(PowerSeries::one(2).integrate_over_t().is_err());
    }

    #[test]
    fn arctan_series_shape() {
        close(
            &PowerSeries::arctan(5),
            &[0.0, 1.0, 0.0, -1.0 / 3.0, 0.0, 0.2],
            0.0,
        );
        close(&PowerSeries::arctan(0), &[0.0], 0.0);
    }

    #[test]
    fn arctan_derivative_is_reciprocal_of_one_plus_z_squared() {
        let d = PowerSeries::arctan(7).derivative();
        let oracle = PowerSeries::from_prefix(6, &[1.0, 0.0, 1.0])
            .reciprocal()
            .unwrap();
        close(&d, oracle.coeffs(), 1e-15);
        close(&d, &[1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0], 1e-15);
        let d6 = PowerSeries::arctan(6).derivative();
        close(
            &d6,
            PowerSeries::from_prefix(5, &[1.0, 0.0, 1.0])
                .reciprocal()
                .unwrap()
                .coeffs(),
            1e-15,
        );
    }

    #[test]
    fn derivative_cases() {
        close(
            &PowerSeries::monomial(3, 3, 1.0).derivative(),
            &[0.0, 0.0, 3.0],
            0.0,
        );
        close(&PowerSeries::constant(4, 2.5).derivative(), &[0.0; 4], 0.0);
        close(&PowerSeries::constant(0, 2.5).derivative(), &[0.0], 0.0);
    }

    #[test]
    fn division_cases() {
        let a = PowerSeries::from_prefix(4, &[2.0, -1.0, 0.5, 3.0, 1.0]);
        close(&a.div(&a).unwrap(), PowerSeries::one(4).coeffs(), 1e-15);
        let q = PowerSeries::from_prefix(3, &[1.0, 1.0])
            .div(&PowerSeries::from_prefix(3, &[1.0, -1.0]))
            .unwrap();
        close(&q, &[1.0, 2.0, 2.0, 2.0], 0.0);
        assert_eq!(
            a.div(&PowerSeries::z(4)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn evaluation_cases() {
        let z2 = PowerSeries::monomial(4, 2, 1.0);
        let v = z2.eval(Complex64::i());
        assert_abs_diff_eq!(v.re, -1.0);
        assert_abs_diff_eq!(v.im, 0.0);
        let f = PowerSeries::from_prefix(3, &[0.7, 2.0, 3.0]);
        assert_eq!(f.eval(Complex64::new(0.0, 0.0)), Complex64::new(0.7, 0.0));
        assert_eq!(f.eval_real(0.5), 0.7 + 1.0 + 0.75);
    }

    #[test]
    fn shifts() {
        let f = PowerSeries::from_prefix(3, &[0.0, 1.0, 2.0, 3.0]);
        close(&f.shift_down().unwrap(), &[1.0, 2.0, 3.0], 0.0);
        close(&f.shift_up(), &[0.0, 0.0, 1.0, 2.0], 0.0);
        assert!(PowerSeries::one(2).shift_down().is_err());
    }
}
