//! Closed-form quantities for G(n, p) with constant `p`.
//!
//! All logarithms are natural. The ratios `ln n / ln(1/q)` do not depend on
//! the base, but `eps = 3 ln ln n / ln n` does; the base is reported as
//! `log_base: "e"` in [`TheoryParams`].
//!
//! Quantities:
//!
//! * `q = 1 - 2p(1-p)^2(2-p)`: probability that a vertex outside two disjoint
//!   edges is at equal distance from both;
//! * `Q = p^2 + (1-p)^2`: the vertex analogue;
//! * `s_p = (1-p)((1-p)^3 + p^2(2-p))^2 + p^3(2-p)^2`: probability that a
//!   vertex fails on two disjoint-edge pairs sharing one vertex;
//! * `edim ~ 4 ln n / ln(1/q)` and `dim ~ 2 ln n / ln(1/Q)`;
//! * `eps = 3 ln ln n / ln n` and `r = (4 - eps) ln n / ln(1/q)`, so that
//!   `q^r = n^(eps - 4)`;
//! * the dependency-graph terms at size `r`: `mu = n^4 p^2 q^r / 8`
//!   (equivalently `p^2 n^eps / 8`), `Delta = p^4 n^7 s_p^r / 16`,
//!   `delta = n^3 p^2 q^r`, and the bound `exp(-mu + Delta e^(2 delta))`.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::config;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TheoryError {
    #[error("p = {0} must lie strictly between 0 and 1")]
    OpenInterval(f64),
    #[error("n = {n} is below the minimum {min} for this quantity")]
    NTooSmall { n: u64, min: u64 },
}

/// Smallest `n` for which `eps` and everything built on it is evaluated.
pub const MIN_N_EPS: u64 = 16;

pub fn q_of(p: f64) -> f64 {
    1.0 - 2.0 * p * (1.0 - p).powi(2) * (2.0 - p)
}

pub fn big_q_of(p: f64) -> f64 {
    p * p + (1.0 - p) * (1.0 - p)
}

pub fn s_of(p: f64) -> f64 {
    let a = (1.0 - p).powi(3) + p * p * (2.0 - p);
    (1.0 - p) * a * a + p.powi(3) * (2.0 - p).powi(2)
}

fn open_p(p: f64) -> Result<(), TheoryError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(TheoryError::OpenInterval(p))
    }
}

fn min_n(n: u64, min: u64) -> Result<(), TheoryError> {
    if n >= min {
        Ok(())
    } else {
        Err(TheoryError::NTooSmall { n, min })
    }
}

/// `4 ln n / ln(1/q)`.
pub fn edim_asymptotic(n: u64, p: f64) -> Result<f64, TheoryError> {
    min_n(n, 2)?;
    open_p(p)?;
    Ok(4.0 * (n as f64).ln() / (1.0 / q_of(p)).ln())
}

/// `2 ln n / ln(1/Q)`.
pub fn dim_asymptotic(n: u64, p: f64) -> Result<f64, TheoryError> {
    min_n(n, 2)?;
    open_p(p)?;
    Ok(2.0 * (n as f64).ln() / (1.0 / big_q_of(p)).ln())
}

pub fn eps_of(n: u64) -> Result<f64, TheoryError> {
    min_n(n, MIN_N_EPS)?;
    let ln_n = (n as f64).ln();
    Ok(3.0 * ln_n.ln() / ln_n)
}

pub fn r_of(n: u64, p: f64) -> Result<f64, TheoryError> {
    let eps = eps_of(n)?;
    open_p(p)?;
    Ok((4.0 - eps) * (n as f64).ln() / (1.0 / q_of(p)).ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuenTerms {
    /// `n^4 p^2 q^r / 8`.
    pub mu: f64,
    /// `p^2 n^eps / 8`; equal to `mu` through `q^r = n^(eps-4)`.
    pub mu_via_eps: f64,
    /// `Delta = p^4 n^7 s_p^r / 16`.
    pub delta_cap: f64,
    /// `delta = n^3 p^2 q^r`.
    pub delta_small: f64,
}

pub fn suen_terms(n: u64, p: f64) -> Result<SuenTerms, TheoryError> {
    let eps = eps_of(n)?;
    let r = r_of(n, p)?;
    let nf = n as f64;
    let q_r = q_of(p).powf(r);
    let mu = nf.powi(4) * p * p * q_r / 8.0;
    let mu_via_eps = p * p * nf.powf(eps) / 8.0;
    let delta_cap = p.powi(4) * nf.powi(7) * s_of(p).powf(r) / 16.0;
    let delta_small = nf.powi(3) * p * p * q_r;
    Ok(SuenTerms { mu, mu_via_eps, delta_cap, delta_small })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuenBound {
    /// `exp(exponent)`, or 0 when `underflow` is set.
    pub value: f64,
    /// `-mu + Delta * e^(2 delta)`.
    pub exponent: f64,
    pub underflow: bool,
    /// `ln C(n, ceil r) - p^2 n^eps / 16`: log of the expected number of
    /// edge generating sets of size `ceil r`, bounded through the union bound.
    pub union_log_binom: f64,
    /// `r ln n - p^2 n^eps / 16`: the same estimate with `C(n, r) <= n^r`.
    pub union_log_power: f64,
}

pub fn suen_bound(n: u64, p: f64) -> Result<SuenBound, TheoryError> {
    let terms = suen_terms(n, p)?;
    let eps = eps_of(n)?;
    let r = r_of(n, p)?;
    let exponent = -terms.mu + terms.delta_cap * (2.0 * terms.delta_small).exp();
    let underflow = exponent < config::SUEN_UNDERFLOW_EXPONENT;
    let value = if underflow { 0.0 } else { exponent.exp() };
    let ln_n = (n as f64).ln();
    let penalty = p * p * (eps * ln_n).exp() / 16.0;
    Ok(SuenBound {
        value,
        exponent,
        underflow,
        union_log_binom: ln_binomial(n, r.ceil() as u64) - penalty,
        union_log_power: r * ln_n - penalty,
    })
}

/// `r ln n - p^2 n^eps / 16` as a function of `ln n`, for `n` far beyond
/// integer range. Uses `n^eps = (ln n)^3`.
pub fn union_log_power_at(ln_n: f64, p: f64) -> f64 {
    let eps = 3.0 * ln_n.ln() / ln_n;
    let r = (4.0 - eps) * ln_n / (1.0 / q_of(p)).ln();
    r * ln_n - p * p * ln_n.powi(3) / 16.0
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

fn sig15<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
        s.serialize_f64(rounded)
    } else {
        s.serialize_none()
    }
}

/// Every closed-form quantity for one `(n, p)`; serializes to the JSON
/// emitted by `edimlab theory`, with 15 significant digits per value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoryParams {
    pub n: u64,
    #[serde(serialize_with = "sig15")]
    pub p: f64,
    #[serde(serialize_with = "sig15")]
    pub q: f64,
    #[serde(rename = "bigQ", serialize_with = "sig15")]
    pub big_q: f64,
    #[serde(serialize_with = "sig15")]
    pub s_p: f64,
    #[serde(serialize_with = "sig15")]
    pub eps: f64,
    #[serde(serialize_with = "sig15")]
    pub r: f64,
    #[serde(serialize_with = "sig15")]
    pub mu: f64,
    #[serde(serialize_with = "sig15")]
    pub delta_cap: f64,
    #[serde(serialize_with = "sig15")]
    pub delta_small: f64,
    #[serde(serialize_with = "sig15")]
    pub edim_asym: f64,
    #[serde(serialize_with = "sig15")]
    pub dim_asym: f64,
    #[serde(serialize_with = "sig15")]
    pub suen_bound: f64,
    #[serde(serialize_with = "sig15")]
    pub suen_exponent: f64,
    pub suen_underflow: bool,
    #[serde(serialize_with = "sig15")]
    pub union_log_binom: f64,
    #[serde(serialize_with = "sig15")]
    pub union_log_power: f64,
    pub log_base: &'static str,
}

impl TheoryParams {
    pub fn new(n: u64, p: f64) -> Result<Self, TheoryError> {
        let terms = suen_terms(n, p)?;
        let bound = suen_bound(n, p)?;
        Ok(TheoryParams {
            n,
            p,
            q: q_of(p),
            big_q: big_q_of(p),
            s_p: s_of(p),
            eps: eps_of(n)?,
            r: r_of(n, p)?,
            mu: terms.mu,
            delta_cap: terms.delta_cap,
            delta_small: terms.delta_small,
            edim_asym: edim_asymptotic(n, p)?,
            dim_asym: dim_asymptotic(n, p)?,
            suen_bound: bound.value,
            suen_exponent: bound.exponent,
            suen_underflow: bound.underflow,
            union_log_binom: bound.union_log_binom,
            union_log_power: bound.union_log_power,
            log_base: "e",
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("theory params serialize")
    }
}
