use super::SpectralError;
use crate::graph::Graph;

/// Hong–Shu–Fang upper bound on the spectral radius of a connected graph
/// with `n` vertices, `m` edges and minimum degree `delta >= 1`:
/// `(delta - 1)/2 + sqrt(2m - n delta + (delta + 1)^2 / 4)`.
pub fn hong_shu_fang_bound(n: usize, m: usize, delta: usize) -> Result<f64, SpectralError> {
    if delta < 1 {
        return Err(SpectralError::Precondition("minimum degree must be at least 1".into()));
    }
    let d = delta as f64;
    let radicand = 2.0 * m as f64 - n as f64 * d + (d + 1.0).powi(2) / 4.0;
    if radicand < 0.0 {
        return Err(SpectralError::Precondition(format!(
            "negative radicand for n = {n}, m = {m}, delta = {delta}"
        )));
    }
    Ok((d - 1.0) / 2.0 + radicand.sqrt())
}

/// Equality class of the Hong–Shu–Fang bound: every degree is either the
/// minimum degree or `n - 1` (regular graphs included).
pub fn is_hsf_extremal(g: &Graph) -> bool {
    let delta = g.min_degree();
    let full = g.order() - 1;
    g.degrees().into_iter().all(|d| d == delta || d == full)
}

/// Evaluates `ab > (a + t)(b - t)` over the reals under `b > a > t >= 1`
/// and `|a - b| < 1`.
pub fn product_shift_inequality(a: f64, b: f64, t: f64) -> Result<bool, SpectralError> {
    if !(b > a && a > t && t >= 1.0 && (a - b).abs() < 1.0) {
        return Err(SpectralError::Precondition(format!(
            "need b > a > t >= 1 and |a - b| < 1, got a = {a}, b = {b}, t = {t}"
        )));
    }
    Ok(a * b > (a + t) * (b - t))
}

/// `ab - (a + t)(b - t)`, which expands to `at - bt + t^2`.
pub fn product_shift_gap(a: f64, b: f64, t: f64) -> f64 {
    a * b - (a + t) * (b - t)
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// `C(a,2) + C(b,2) < C(a+1,2) + C(b-1,2)` for `a >= b >= 3`.
pub fn binomial_transfer_inequality(a: u64, b: u64) -> Result<bool, SpectralError> {
    if !(a >= b && b >= 3) {
        return Err(SpectralError::Precondition(format!("need a >= b >= 3, got a = {a}, b = {b}")));
    }
    Ok(choose2(a) + choose2(b) < choose2(a + 1) + choose2(b - 1))
}

/// Open interval `(n - (r-1)(h+1) - 1, n - (r-1)(h+1))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    /// Strict containment with `margin` on both sides.
    pub fn contains(&self, rho: f64, margin: f64) -> bool {
        rho > self.lower + margin && rho < self.upper - margin
    }
}

pub fn component_bracket(n: usize, r: usize, h: usize) -> Result<Bracket, SpectralError> {
    let big = n
        .checked_sub((r.saturating_sub(1)) * (h + 1))
        .filter(|&b| b >= 1)
        .ok_or_else(|| SpectralError::Precondition(format!("n = {n} too small for r = {r}, h = {h}")))?;
    Ok(Bracket { lower: big as f64 - 1.0, upper: big as f64 })
}
