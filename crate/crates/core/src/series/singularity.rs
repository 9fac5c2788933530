//! Dominant singularity of a class family and its dependence on the tilt.
//!
//! Family 1 satisfies `Q = Psi(x, Q, eps)` with
//!
//! ```text
//! Psi(x, y, eps) = x sum_d vw[d] [z^d] exp(z y + sum_{j>=2} C_j(eps) z^j Q_j(x^j, j eps))
//! ```
//!
//! (`x exp(y + ...)` for unbounded degrees). The singularity `rho(eps)` and
//! `tau(eps) = Q(rho)` solve `Psi = y`, `Psi_y = 1`. Differentiating this
//! system implicitly gives `rho'` and `rho''` at `eps = 0`, and with them the
//! mean constant `mu = -rho'/rho` and variance constant
//! `sigma^2 = -rho''/rho + (rho'/rho)^2` of the functional.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::ad::Hyper;
use crate::series::family::{ClassFamily, FamilySolution};
use crate::series::jet::Jet;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Singularity {
    pub rho: f64,
    pub tau: f64,
    pub rho_d1: f64,
    pub rho_d2: f64,
    pub mu: f64,
    pub sigma2: f64,
}

const X: usize = 0;
const Y: usize = 1;
const E: usize = 2;

fn jet_in_eps(c: Jet, eps: Hyper) -> Hyper {
    Hyper::constant(c.v) + eps.scale(c.d1) + (eps * eps).scale(0.5 * c.d2)
}

/// `sum_n c_n x^(j n)` and its first two `x`-derivatives.
fn substituted_sum(coeffs: impl Iterator<Item = f64>, j: usize, x: f64) -> (f64, f64, f64) {
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for (n, c) in coeffs.enumerate() {
        if n == 0 || c == 0.0 {
            continue;
        }
        let k = (j * n) as i32;
        let p = x.powi(k - 2);
        s0 += c * p * x * x;
        s1 += c * k as f64 * p * x;
        s2 += c * (k * (k - 1)) as f64 * p;
    }
    (s0, s1, s2)
}

/// `Q_j(x^j, j eps)` as a function of `(x, y, eps)`.
fn substituted_family(sol: &FamilySolution, j: usize, x: Hyper, eps: Hyper) -> Hyper {
    let q = sol.family(j);
    let jf = j as f64;
    let (a0, a1, a2) = substituted_sum(q.iter().map(|c| c.v), j, x.v);
    let (b0, b1, b2) = substituted_sum(q.iter().map(|c| c.d1), j, x.v);
    let (c0, c1, c2) = substituted_sum(q.iter().map(|c| c.d2), j, x.v);
    x.chain(a0, a1, a2)
        + (eps * x.chain(b0, b1, b2)).scale(jf)
        + (eps * eps * x.chain(c0, c1, c2)).scale(0.5 * jf * jf)
}

fn psi(family: &ClassFamily, sol: &FamilySolution, max_j: usize, x0: f64, y0: f64) -> Hyper {
    let x = Hyper::var(X, x0);
    let y = Hyper::var(Y, y0);
    let eps = Hyper::var(E, 0.0);
    let c = sol.log_coefficients(1);
    let top = max_j.min(c.len() - 1);
    // exponent coefficients of z^j
    let mut terms: Vec<Hyper> = vec![Hyper::constant(0.0); top.max(1) + 1];
    terms[1] = y;
    for j in 2..=top {
        if sol.family(j).len() < 2 {
            continue;
        }
        terms[j] = jet_in_eps(c[j], eps) * substituted_family(sol, j, x, eps);
    }
    match &family.vertex_weights {
        None => {
            let mut sum = Hyper::constant(0.0);
            for t in &terms[1..] {
                sum = sum + *t;
            }
            x * sum.exp()
        }
        Some(vw) => {
            let deg = vw.len() - 1;
            let mut f = vec![Hyper::constant(0.0); deg + 1];
            f[0] = Hyper::constant(1.0);
            for n in 1..=deg {
                let mut s = Hyper::constant(0.0);
                for k in 1..=n.min(terms.len() - 1) {
                    s = s + (terms[k] * f[n - k]).scale(k as f64);
                }
                f[n] = s.scale(1.0 / n as f64);
            }
            let mut total = Hyper::constant(0.0);
            for (d, &w) in vw.iter().enumerate() {
                if w != 0.0 {
                    total = total + f[d].scale(w);
                }
            }
            x * total
        }
    }
}

/// Solves the characteristic system by Newton's method from `guess`
/// (`(rho, tau)`), using substituted families `j = 2..=max_j`.
pub fn locate_singularity(
    family: &ClassFamily,
    sol: &FamilySolution,
    max_j: usize,
    guess: (f64, f64),
) -> Result<Singularity> {
    let (mut x, mut y) = guess;
    let mut converged = false;
    for _ in 0..100 {
        let p = psi(family, sol, max_j, x, y);
        let f1 = p.v - y;
        let f2 = p.g[Y] - 1.0;
        let (a, b, c, d) = (p.g[X], p.g[Y] - 1.0, p.h[X][Y], p.h[Y][Y]);
        let det = a * d - b * c;
        if !det.is_finite() || det == 0.0 {
            return Err(Error::Bracket("singular Jacobian in characteristic system".into()));
        }
        let dx = (d * f1 - b * f2) / det;
        let dy = (a * f2 - c * f1) / det;
        x -= dx;
        y -= dy;
        if !(x.is_finite() && y.is_finite()) || x <= 0.0 {
            return Err(Error::Bracket("Newton iteration left the domain".into()));
        }
        if dx.abs() <= 1e-15 * x && dy.abs() <= 1e-15 * y.abs().max(1.0) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Bracket("characteristic system did not converge".into()));
    }
    let p = psi(family, sol, max_j, x, y);
    let g = p.g;
    let h = p.h;
    let x1 = -g[E] / g[X];
    let y1 = -(h[Y][X] * x1 + h[Y][E]) / h[Y][Y];
    let x2 = -(h[X][X] * x1 * x1
        + h[Y][Y] * y1 * y1
        + h[E][E]
        + 2.0 * h[X][Y] * x1 * y1
        + 2.0 * h[X][E] * x1
        + 2.0 * h[Y][E] * y1)
        / g[X];
    let r1 = x1 / x;
    Ok(Singularity {
        rho: x,
        tau: y,
        rho_d1: x1,
        rho_d2: x2,
        mu: -r1,
        sigma2: -x2 / x + r1 * r1,
    })
}
