//! Generating functions of weighted isomorphism classes of rooted trees.
//!
//! A class family assigns to each rooted tree shape `B` the weight
//!
//! ```text
//! prod_v vw[deg v] * prod_{v, class} exp(a ln m! + s toll(m))
//! ```
//!
//! where the inner product runs over each vertex's isomorphism classes of
//! children, `m` being the class multiplicity. With `a = 0` and
//! `toll(m) = ln m!` this is `|Aut B|^s` (the weighted Pólya series); with
//! `vw[d] = d! w_d` and `a = -1` it is the total weight of all plane
//! embeddings of `B` (simply generated trees).
//!
//! Raising all weights to the `m`-th power gives family `m`. Family `m`
//! satisfies
//!
//! ```text
//! Q_m(x) = x sum_d vw[d]^m [z^d] exp( sum_j C_{m,j} z^j Q_{mj}(x^j) )
//! ```
//!
//! with `C_{m,j} = [u^j] log sum_k alpha_{m,k} u^k` and
//! `alpha_{m,k} = exp(m a ln k! + m s toll(k))`. Every coefficient is carried
//! as a second-order jet in a perturbation `eps` of the tilt `s`, so the same
//! pass yields `sum_B W(B) F(B)` and `sum_B W(B) F(B)^2` where `F` is the
//! additive functional with the given toll.

use crate::error::{Error, Result};
use crate::lnfact::ln_factorial;
use crate::series::jet::{log_one_plus, Jet};
use crate::series::partitions::Cutoff;
use crate::series::power::PowerSeries;
use crate::series::weights::WeightPolynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct ClassFamily {
    /// `vw[d]` for a finite set of allowed child counts, or `None` for all
    /// child counts with weight one.
    pub vertex_weights: Option<Vec<f64>>,
    pub aut_exponent: f64,
    pub tilt: f64,
    pub toll: Cutoff,
}

impl ClassFamily {
    /// Pólya trees weighted by `|Aut|^t`, with the functional `log|Aut|`
    /// restricted by `toll`.
    pub fn polya(t: f64, toll: Cutoff) -> Self {
        Self {
            vertex_weights: None,
            aut_exponent: 0.0,
            tilt: t,
            toll,
        }
    }

    /// Shapes weighted by `1/|Aut|`: the exponential generating function of
    /// labeled rooted trees.
    pub fn labeled() -> Self {
        Self {
            vertex_weights: None,
            aut_exponent: -1.0,
            tilt: 0.0,
            toll: Cutoff::Full,
        }
    }

    /// Shapes weighted by the total weight of their plane embeddings.
    pub fn simply_generated(phi: &WeightPolynomial) -> Self {
        let vw = phi
            .weights()
            .iter()
            .enumerate()
            .map(|(d, w)| w * ln_factorial(d).exp())
            .collect();
        Self {
            vertex_weights: Some(vw),
            aut_exponent: -1.0,
            tilt: 0.0,
            toll: Cutoff::Full,
        }
    }

    /// Largest allowed child count, if bounded.
    pub fn max_degree(&self) -> Option<usize> {
        self.vertex_weights.as_ref().map(|v| v.len() - 1)
    }

    /// `C_{m,j}` for `j = 0..=max_j` as jets in `eps_m = m eps`.
    pub fn log_multiplicity_coefficients(&self, m: usize, max_j: usize) -> Vec<Jet> {
        let mf = m as f64;
        let alpha: Vec<Jet> = (0..=max_j)
            .map(|k| {
                let lf = ln_factorial(k);
                let toll = self.toll.toll(k);
                Jet::exp_linear(mf * self.aut_exponent * lf + mf * self.tilt * toll, toll)
            })
            .collect();
        log_one_plus(&alpha, max_j)
    }

    /// Solves all families `m = 1..=order`, family `m` through order
    /// `order / m`.
    pub fn solve(&self, order: usize) -> Result<FamilySolution> {
        let mut families: Vec<Vec<Jet>> = vec![Vec::new(); order + 1];
        let mut log_coeffs: Vec<Vec<Jet>> = vec![Vec::new(); order + 1];
        for m in (1..=order).rev() {
            let ord = order / m;
            let max_j = match self.max_degree() {
                Some(d) => d.min(ord),
                None => ord,
            };
            let c = self.log_multiplicity_coefficients(m, max_j);
            let q = match &self.vertex_weights {
                None => solve_unbounded(m, ord, &c, &families)?,
                Some(vw) => {
                    let vwm: Vec<f64> = vw.iter().map(|w| w.powi(m as i32)).collect();
                    solve_bounded(m, ord, &c, &vwm, &families)?
                }
            };
            families[m] = q;
            log_coeffs[m] = c;
        }
        Ok(FamilySolution {
            order,
            families,
            log_coeffs,
        })
    }
}

/// Contribution `sum_{j | n, j >= 2} C_j Q_{mj}[n/j]` of the substituted
/// families to `[x^n]` of the exponent (terms with `j <= max_j` only).
fn substituted_terms(m: usize, n: usize, c: &[Jet], families: &[Vec<Jet>]) -> Vec<(usize, Jet)> {
    let mut out = Vec::new();
    for j in 2..c.len().min(n + 1) {
        if !n.is_multiple_of(j) || c[j] == Jet::ZERO {
            continue;
        }
        let q = families[m * j][n / j].dilate(j as f64);
        out.push((j, c[j] * q));
    }
    out
}

fn solve_unbounded(m: usize, ord: usize, c: &[Jet], families: &[Vec<Jet>]) -> Result<Vec<Jet>> {
    let mut q = vec![Jet::ZERO; ord + 1];
    let mut a = vec![Jet::ZERO; ord + 1];
    let mut f = vec![Jet::ZERO; ord + 1];
    f[0] = Jet::ONE;
    for n in 1..=ord {
        q[n] = f[n - 1];
        if !q[n].is_finite() {
            return Err(Error::Divergent { order: n });
        }
        let mut an = q[n];
        for (_, term) in substituted_terms(m, n, c, families) {
            an += term;
        }
        a[n] = an;
        let mut s = Jet::ZERO;
        for k in 1..=n {
            s += (a[k] * f[n - k]).scale(k as f64);
        }
        f[n] = s.scale(1.0 / n as f64);
    }
    Ok(q)
}

fn solve_bounded(m: usize, ord: usize, c: &[Jet], vw: &[f64], families: &[Vec<Jet>]) -> Result<Vec<Jet>> {
    let deg = vw.len() - 1;
    let mut q = vec![Jet::ZERO; ord + 1];
    // a[n] and f[n] are polynomials in z of degree <= deg.
    let mut a: Vec<Vec<(usize, Jet)>> = vec![Vec::new(); ord + 1];
    let mut f: Vec<Vec<Jet>> = vec![vec![Jet::ZERO; deg + 1]; ord + 1];
    f[0][0] = Jet::ONE;
    for n in 1..=ord {
        let mut qn = Jet::ZERO;
        for (d, &w) in vw.iter().enumerate() {
            if w != 0.0 {
                qn += f[n - 1][d].scale(w);
            }
        }
        if !qn.is_finite() {
            return Err(Error::Divergent { order: n });
        }
        q[n] = qn;
        let mut an = vec![(1usize, qn)];
        an.extend(substituted_terms(m, n, c, families));
        an.retain(|&(j, _)| j <= deg);
        a[n] = an;
        let mut fnz = vec![Jet::ZERO; deg + 1];
        for k in 1..=n {
            for &(j, term) in &a[k] {
                let scaled = term.scale(k as f64);
                for d in 0..=deg - j {
                    let g = f[n - k][d];
                    if g != Jet::ZERO {
                        fnz[d + j] += scaled * g;
                    }
                }
            }
        }
        for v in &mut fnz {
            *v = v.scale(1.0 / n as f64);
        }
        f[n] = fnz;
    }
    Ok(q)
}

/// Coefficient jets of every family, plus the multiplicity log-coefficients.
#[derive(Clone, Debug)]
pub struct FamilySolution {
    order: usize,
    families: Vec<Vec<Jet>>,
    log_coeffs: Vec<Vec<Jet>>,
}

impl FamilySolution {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients of family `m` (order `order / m`), as jets in
    /// `eps_m = m eps`.
    pub fn family(&self, m: usize) -> &[Jet] {
        &self.families[m]
    }

    /// `C_{m,j}` as used for family `m`.
    pub fn log_coefficients(&self, m: usize) -> &[Jet] {
        &self.log_coeffs[m]
    }

    /// Total weights `sum_{|B|=n} W(B)` of family 1.
    pub fn values(&self) -> PowerSeries {
        PowerSeries::new(self.families[1].iter().map(|j| j.v).collect())
    }

    /// `sum_{|B|=n} W(B) F(B)` of family 1.
    pub fn first_moments(&self) -> PowerSeries {
        PowerSeries::new(self.families[1].iter().map(|j| j.d1).collect())
    }

    /// `sum_{|B|=n} W(B) F(B)^2` of family 1.
    pub fn second_moments(&self) -> PowerSeries {
        PowerSeries::new(self.families[1].iter().map(|j| j.d2).collect())
    }

    /// Exact mean and variance of `F` under the law `W(B) / sum W` on
    /// shapes of order `n`.
    pub fn mean_variance(&self, n: usize) -> (f64, f64) {
        let q = self.families[1][n];
        let mean = q.d1 / q.v;
        (mean, (q.d2 / q.v - mean * mean).max(0.0))
    }
}
