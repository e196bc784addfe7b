//! Members of the class built from `K_{n-(r-1)(h+1)} ∪ (r-2)K_{h+1} ∪ K_h ∪ K_1`
//! by tying `K_1` to `K_h` with `t` edges, linking one big-clique vertex
//! to each small clique, and adding extra big-to-small edges.

use serde::{Deserialize, Serialize};

use super::{ConnectivityKind, ExtremalParams, FamilyError, LabeledFamily, Layout, ParamError, Regime};
use crate::conn::lambda_at_most;

/// Where the cross edges of a class member go.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attachment {
    /// For each of the `r - 2` copies and then `K_h`: the vertex (index
    /// within the block) linked to the first big-clique vertex.
    pub base_targets: Vec<usize>,
    /// Extra edges as `(big index, small index)`; small indices run through
    /// the copies, `K_h` and `K_1` in label order.
    pub extra: Vec<(usize, usize)>,
}

fn extra_count(p: &ExtremalParams, t: usize) -> Result<usize, FamilyError> {
    (p.value + 1 + t)
        .checked_sub(p.r + p.delta)
        .ok_or_else(|| ParamError::Infeasible(format!("lambda - r + 1 - delta + t >= 0 violated for t = {t}")).into())
}

fn big_size(p: &ExtremalParams) -> usize {
    p.n - (p.r - 1) * (p.h + 1)
}

pub fn k_family(p: &ExtremalParams, t: usize, attachment: &Attachment) -> Result<LabeledFamily, FamilyError> {
    p.require_kind(ConnectivityKind::Edge)?;
    p.validate()?;
    let ExtremalParams { r, h, delta, value: lambda, .. } = *p;
    if t < 1 || t > delta {
        return Err(ParamError::Infeasible(format!("1 <= t <= delta violated: t = {t}, delta = {delta}")).into());
    }
    let extras = extra_count(p, t)?;
    let bad = |msg: String| Err(FamilyError::Attachment(msg));
    if attachment.base_targets.len() != r - 1 {
        return bad(format!("{} base targets given, {} needed", attachment.base_targets.len(), r - 1));
    }
    if attachment.extra.len() != extras {
        return bad(format!("{} extra edges given, {extras} needed", attachment.extra.len()));
    }

    let mut l = Layout::new();
    let big = l.clique("big", big_size(p));
    let mut small = Vec::new();
    let mut linked = Vec::new();
    for i in 1..=r - 1 {
        let block = if i < r - 1 { l.clique(format!("copy_{i}"), h + 1) } else { l.clique("k_h", h) };
        let target = attachment.base_targets[i - 1];
        if target >= block.len() {
            return bad(format!("base target {target} outside a block of {}", block.len()));
        }
        linked.push(block[target]);
        small.extend(block);
    }
    let kh_start = small.len() - h;
    let k1 = l.clique("k_1", 1)[0];
    small.push(k1);
    for j in 0..t {
        l.edge(k1, small[kh_start + j]);
    }
    for &v in &linked {
        l.edge(big[0], v);
    }
    let mut seen = Vec::with_capacity(extras);
    for &(b, s) in &attachment.extra {
        if b >= big.len() || s >= small.len() {
            return bad(format!("extra edge ({b}, {s}) out of range"));
        }
        let (u, v) = (big[b], small[s]);
        if (b == 0 && linked.contains(&v)) || seen.contains(&(u, v)) {
            return bad(format!("extra edge ({b}, {s}) repeats an edge"));
        }
        seen.push((u, v));
        l.edge(u, v);
    }

    let f = l.finish(Regime::EdgeClassMember)?;
    let g = &f.graph;
    if g.min_degree() != delta {
        return Err(FamilyError::NotAMember(format!("minimum degree {} != {delta}", g.min_degree())));
    }
    if lambda_at_most(g, r, h, lambda) != Some(lambda) {
        return Err(FamilyError::NotAMember(format!("edge connectivity differs from {lambda}")));
    }
    Ok(f)
}

/// Every `(t, attachment)` pair worth trying, up to isomorphism.
///
/// Copies are bare cliques, so their base target is vertex 0. In `K_h` the
/// base target is either tied to `K_1` (vertex 0) or not (vertex `t`).
/// Non-first big-clique vertices are interchangeable, so extras only use
/// big indices `0..=extras`.
pub fn k_family_attachments(p: &ExtremalParams) -> Result<Vec<(usize, Attachment)>, FamilyError> {
    p.require_kind(ConnectivityKind::Edge)?;
    p.validate()?;
    let ExtremalParams { r, h, delta, .. } = *p;
    let small_count = (r - 1) * (h + 1);
    let kh_start = (r - 2) * (h + 1);
    let mut out = Vec::new();
    for t in 1..=delta {
        let Ok(extras) = extra_count(p, t) else { continue };
        let mut kh_targets = vec![0];
        if t < h {
            kh_targets.push(t);
        }
        for &kt in &kh_targets {
            let mut base_targets = vec![0; r - 2];
            base_targets.push(kt);
            let mut linked: Vec<usize> = (0..r - 2).map(|i| i * (h + 1)).collect();
            linked.push(kh_start + kt);
            let big_span = big_size(p).min(extras + 1);
            let pairs: Vec<(usize, usize)> = (0..big_span)
                .flat_map(|b| (0..small_count).map(move |s| (b, s)))
                .filter(|&(b, s)| !(b == 0 && linked.contains(&s)))
                .collect();
            for extra in combinations(&pairs, extras) {
                out.push((t, Attachment { base_targets: base_targets.clone(), extra }));
            }
        }
    }
    Ok(out)
}

fn combinations<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn go<T: Copy>(items: &[T], k: usize, from: usize, pick: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if pick.len() == k {
            out.push(pick.clone());
            return;
        }
        for i in from..items.len() {
            if items.len() - i < k - pick.len() {
                break;
            }
            pick.push(items[i]);
            go(items, k, i + 1, pick, out);
            pick.pop();
        }
    }
    go(items, k, 0, &mut pick, &mut out);
    out
}
