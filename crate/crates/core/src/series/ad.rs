//! Forward-mode second-order automatic differentiation in three variables.

use std::ops::{Add, Mul, Sub};

pub(crate) const VARS: usize = 3;

/// Value, gradient and Hessian of a function of three variables at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Hyper {
    pub v: f64,
    pub g: [f64; VARS],
    pub h: [[f64; VARS]; VARS],
}

impl Hyper {
    pub fn constant(v: f64) -> Self {
        Self {
            v,
            g: [0.0; VARS],
            h: [[0.0; VARS]; VARS],
        }
    }

    pub fn var(i: usize, v: f64) -> Self {
        let mut out = Self::constant(v);
        out.g[i] = 1.0;
        out
    }

    pub fn scale(self, c: f64) -> Self {
        let mut out = self;
        out.v *= c;
        for i in 0..VARS {
            out.g[i] *= c;
            for j in 0..VARS {
                out.h[i][j] *= c;
            }
        }
        out
    }

    /// `f(self)` given `f`, `f'` and `f''` at `self.v`.
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut out = Self::constant(f0);
        for i in 0..VARS {
            out.g[i] = f1 * self.g[i];
            for j in 0..VARS {
                out.h[i][j] = f1 * self.h[i][j] + f2 * self.g[i] * self.g[j];
            }
        }
        out
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
}

impl Add for Hyper {
    type Output = Hyper;
    fn add(self, o: Hyper) -> Hyper {
        let mut out = self;
        out.v += o.v;
        for i in 0..VARS {
            out.g[i] += o.g[i];
            for j in 0..VARS {
                out.h[i][j] += o.h[i][j];
            }
        }
        out
    }
}

impl Sub for Hyper {
    type Output = Hyper;
    fn sub(self, o: Hyper) -> Hyper {
        self + o.scale(-1.0)
    }
}

impl Mul for Hyper {
    type Output = Hyper;
    fn mul(self, o: Hyper) -> Hyper {
        let mut out = Self::constant(self.v * o.v);
        for i in 0..VARS {
            out.g[i] = self.g[i] * o.v + self.v * o.g[i];
            for j in 0..VARS {
                out.h[i][j] = self.h[i][j] * o.v
                    + self.g[i] * o.g[j]
                    + self.g[j] * o.g[i]
                    + self.v * o.h[i][j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessian_of_product_exp() {
        // f = x * exp(x y) at (1, 2)
        let x = Hyper::var(0, 1.0);
        let y = Hyper::var(1, 2.0);
        let f = x * (x * y).exp();
        let e2 = 2f64.exp();
        assert!((f.v - e2).abs() < 1e-12);
        // f_x = e^{xy}(1 + xy) = 3e^2, f_y = x^2 e^{xy} = e^2
        assert!((f.g[0] - 3.0 * e2).abs() < 1e-12);
        assert!((f.g[1] - e2).abs() < 1e-12);
        // f_xx = e^{xy}(2y + x y^2) = 8e^2, f_xy = e^{xy}(2x + x^2 y) = 4e^2, f_yy = x^3 e^{xy}
        assert!((f.h[0][0] - 8.0 * e2).abs() < 1e-11);
        assert!((f.h[0][1] - 4.0 * e2).abs() < 1e-11);
        assert!((f.h[1][0] - 4.0 * e2).abs() < 1e-11);
        assert!((f.h[1][1] - e2).abs() < 1e-11);
    }
}
