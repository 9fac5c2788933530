use std::ops::{Add, AddAssign, Mul, Sub};

/// Second-order jet `(f, f', f'')` of a function of one parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const ZERO: Jet = Jet {
        v: 0.0,
        d1: 0.0,
        d2: 0.0,
    };
    pub const ONE: Jet = Jet {
        v: 1.0,
        d1: 0.0,
        d2: 0.0,
    };

    pub fn new(v: f64, d1: f64, d2: f64) -> Self {
        Self { v, d1, d2 }
    }

    pub fn constant(v: f64) -> Self {
        Self { v, d1: 0.0, d2: 0.0 }
    }

    /// `e^(base + eps * slope)` at `eps = 0`.
    pub fn exp_linear(base: f64, slope: f64) -> Self {
        let v = base.exp();
        Self {
            v,
            d1: slope * v,
            d2: slope * slope * v,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        Self {
            v: self.v * c,
            d1: self.d1 * c,
            d2: self.d2 * c,
        }
    }

    /// Jet of `eps -> f(j * eps)`.
    pub fn dilate(self, j: f64) -> Self {
        Self {
            v: self.v,
            d1: self.d1 * j,
            d2: self.d2 * j * j,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        *self = *self + o;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet {
            v: self.v - o.v,
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

/// Coefficients of `log(a)` for a jet-valued series with `a_0 = 1`.
pub(crate) fn log_one_plus(a: &[Jet], order: usize) -> Vec<Jet> {
    let at = |k: usize| a.get(k).copied().unwrap_or(Jet::ZERO);
    let mut b = vec![Jet::ZERO; order + 1];
    for n in 1..=order {
        let mut s = Jet::ZERO;
        for k in 1..n {
            s += (b[k] * at(n - k)).scale(k as f64);
        }
        b[n] = at(n) - s.scale(1.0 / n as f64);
    }
    b
}
