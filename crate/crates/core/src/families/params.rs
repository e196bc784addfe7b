use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("wrong connectivity kind: expected {expected:?}")]
    WrongKind { expected: ConnectivityKind },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnectivityKind {
    Vertex,
    Edge,
}

/// Parameters of an extremal problem: order, component count `r`, extra
/// size `h`, minimum degree and the prescribed (edge-)connectivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremalParams {
    pub n: usize,
    pub r: usize,
    pub h: usize,
    pub delta: usize,
    pub kind: ConnectivityKind,
    pub value: usize,
    /// Edge kind only: set when `n` is below `(lambda+1)(h+1)^2` and the
    /// parameters only probe the class; results are not asserted.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub below_threshold: bool,
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), ParamError> {
    if ok {
        Ok(())
    } else {
        Err(ParamError::Infeasible(what()))
    }
}

impl ExtremalParams {
    /// Vertex-connectivity parameters `(n, r, h, delta, kappa)`.
    pub fn vertex(n: usize, r: usize, h: usize, delta: usize, kappa: usize) -> Result<Self, ParamError> {
        let p = ExtremalParams { n, r, h, delta, kind: ConnectivityKind::Vertex, value: kappa, below_threshold: false };
        p.validate()?;
        Ok(p)
    }

    /// Edge-connectivity parameters `(n, r, h, delta, lambda)`.
    pub fn edge(n: usize, r: usize, h: usize, delta: usize, lambda: usize) -> Result<Self, ParamError> {
        let p = ExtremalParams { n, r, h, delta, kind: ConnectivityKind::Edge, value: lambda, below_threshold: false };
        p.validate()?;
        Ok(p)
    }

    /// Edge parameters that skip the order threshold but keep every
    /// constraint the construction itself needs.
    pub fn edge_below_threshold(n: usize, r: usize, h: usize, delta: usize, lambda: usize) -> Result<Self, ParamError> {
        let mut p = ExtremalParams { n, r, h, delta, kind: ConnectivityKind::Edge, value: lambda, below_threshold: false };
        p.below_threshold = n < p.edge_threshold();
        p.validate()?;
        Ok(p)
    }

    pub fn kappa(&self) -> Option<usize> {
        (self.kind == ConnectivityKind::Vertex).then_some(self.value)
    }

    pub fn lambda(&self) -> Option<usize> {
        (self.kind == ConnectivityKind::Edge).then_some(self.value)
    }

    /// `(lambda+1)(h+1)^2`.
    pub fn edge_threshold(&self) -> usize {
        (self.value + 1) * (self.h + 1) * (self.h + 1)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let ExtremalParams { n, r, h, delta, value, .. } = *self;
        require(r >= 2, || format!("r >= 2 violated: r = {r}"))?;
        require(delta >= 1, || format!("delta >= 1 violated: delta = {delta}"))?;
        require(n <= crate::graph::MAX_ORDER, || format!("n <= {} violated: n = {n}", crate::graph::MAX_ORDER))?;
        match self.kind {
            ConnectivityKind::Vertex => {
                require(h >= 1, || format!("h >= 1 violated: h = {h}"))?;
                require(value >= 1, || format!("kappa >= 1 violated: kappa = {value}"))?;
                let need = value + r * (h + 1);
                require(n >= need, || format!("n >= kappa + r(h+1) violated: {n} < {need}"))?;
                if delta >= value + h {
                    let small = r - 1;
                    let each = delta - value + 1;
                    let used = value + small * each;
                    // The big clique must reach degree delta as well.
                    require(n >= used + each, || {
                        format!("n - kappa - (r-1)(delta-kappa+1) >= delta-kappa+1 violated: {} < {each}", n.saturating_sub(used))
                    })?;
                }
            }
            ConnectivityKind::Edge => {
                require(h >= delta, || format!("h >= delta violated: h = {h}, delta = {delta}"))?;
                require(value + 1 >= r, || format!("lambda >= r-1 violated: lambda = {value}, r = {r}"))?;
                let threshold = self.edge_threshold();
                require(self.below_threshold || n >= threshold, || {
                    format!("n >= (lambda+1)(h+1)^2 violated: {n} < {threshold}")
                })?;
                let fixed = (r - 1) * (h + 1) + value + 1;
                require(n + r >= fixed + 2, || {
                    format!("n - (r-1)(h+1) - lambda + r - 2 >= 1 violated for n = {n}")
                })?;
            }
        }
        Ok(())
    }

    pub(crate) fn require_kind(&self, kind: ConnectivityKind) -> Result<(), ParamError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(ParamError::WrongKind { expected: kind })
        }
    }
}
