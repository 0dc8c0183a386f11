//! Constructive realizer extension: chain-anchored linearizations, lifting
//! extensions of a subposet, and the bounds for removing pairwise
//! incomparable chains, arbitrary chains, or a single point.

use thiserror::Error;

use crate::dimension::{verify_realizer, Realizer, RealizerVerdict};
use crate::poset::{ChainSet, LinearExtension, Poset, PosetError};
use crate::separators::{ls, SeparatorInstance, SeparatorMode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("anchor chains are not incomparable")]
    NotIncomparableChains,
    #[error("chains are not pairwise incomparable")]
    ChainsNotPairwiseIncomparable,
    #[error("chain set is empty")]
    EmptyChainSet,
    #[error("realizer does not realize the subposet")]
    InvalidRealizer,
    #[error("extension does not match the subposet")]
    NotAnExtension,
    #[error("removed element is still present in the realizer domain")]
    ElementNotRemoved,
}

/// A poset with two chains to pin at the bottom and at the top of a
/// linearization. Either chain may be empty; nonempty chains must be
/// incomparable to each other.
#[derive(Clone, Debug)]
pub struct AnchoredRequest<'a> {
    pub poset: &'a Poset,
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
}

impl<'a> AnchoredRequest<'a> {
    pub fn validate(&self) -> Result<(), BoundsError> {
        if !self.poset.is_chain(&self.bottom)? || !self.poset.is_chain(&self.top)? {
            return Err(BoundsError::Poset(PosetError::NotAChain));
        }
        if !self.bottom.is_empty()
            && !self.top.is_empty()
            && !self.poset.chains_incomparable(&self.bottom, &self.top)?
        {
            return Err(BoundsError::NotIncomparableChains);
        }
        Ok(())
    }
}

/// Linearization that puts the bottom chain at the bottom and the top chain
/// at the top: every element incomparable to a bottom (top) element ends up
/// above (below) it. Built by closing the order together with the two
/// forcing relations and linearizing deterministically.
pub fn anchor_linearization(req: &AnchoredRequest) -> Result<LinearExtension, BoundsError> {
    req.validate()?;
    let p = req.poset;
    let n = p.len();
    let in_bottom = membership(n, &req.bottom);
    let in_top = membership(n, &req.top);
    let mut pairs = p.relation_pairs();
    for x in 0..n {
        for y in 0..n {
            if !p.incomparable(x, y) {
                continue;
            }
            if in_bottom[x] && !in_bottom[y] {
                pairs.push((x, y));
            }
            if !in_top[x] && in_top[y] {
                pairs.push((x, y));
            }
        }
    }
    let closed = Poset::from_index_pairs(p.labels().to_vec(), &pairs)
        .expect("anchored relation is acyclic for incomparable chains");
    Ok(closed.linearize())
}

fn membership(n: usize, subset: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &x in subset {
        mask[x] = true;
    }
    mask
}

fn complement(n: usize, removed: &[usize]) -> Vec<usize> {
    let gone = membership(n, removed);
    (0..n).filter(|&x| !gone[x]).collect()
}

/// Extends a linear extension of the subposet on the complement of
/// `removed` to the whole poset, by closing the union of the order and the
/// extension and linearizing. The restriction of the output to the kept
/// elements equals the input extension.
pub fn lift_extension(
    p: &Poset,
    removed: &[usize],
    ext: &LinearExtension,
) -> Result<LinearExtension, BoundsError> {
    let mut removed = removed.to_vec();
    removed.sort_unstable();
    removed.dedup();
    if let Some(&worst) = removed.last() {
        if worst >= p.len() {
            return Err(BoundsError::Poset(PosetError::IndexOutOfRange {
                index: worst,
                size: p.len(),
            }));
        }
    }
    let keep = complement(p.len(), &removed);
    let sub = p.restrict(&keep);
    if ext.len() != keep.len() || !ext.extends(&sub) {
        return Err(BoundsError::NotAnExtension);
    }
    let mut pairs = p.relation_pairs();
    let order = ext.order();
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            pairs.push((keep[order[a]], keep[order[b]]));
        }
    }
    let closed = Poset::from_index_pairs(p.labels().to_vec(), &pairs)
        .expect("union with an extension of the subposet is acyclic");
    let lifted = closed.linearize();
    assert_eq!(
        lifted.restricted(&keep),
        *ext,
        "lift must restrict to the input extension"
    );
    Ok(lifted)
}

fn check_chains(p: &Poset, chains: &ChainSet) -> Result<(), BoundsError> {
    for chain in chains.chains() {
        if !p.is_chain(chain)? {
            return Err(BoundsError::Poset(PosetError::NotAChain));
        }
    }
    Ok(())
}

fn check_base_realizer(p: &Poset, keep: &[usize], r: &Realizer) -> Result<Poset, BoundsError> {
    let sub = p.restrict(keep);
    match verify_realizer(&sub, r) {
        Ok(RealizerVerdict::Realizes) => Ok(sub),
        _ => Err(BoundsError::InvalidRealizer),
    }
}

/// Realizer of the whole poset from a realizer of the poset minus a set of
/// pairwise incomparable chains: the input extensions are lifted, and one
/// anchored linearization is added per cyclically adjacent pair of chains
/// (two anchors for a single chain). Output size is `|R| + max(2, n)`.
pub fn dbi(p: &Poset, chains: &ChainSet, r: &Realizer) -> Result<Realizer, BoundsError> {
    if chains.is_empty() {
        return Err(BoundsError::EmptyChainSet);
    }
    check_chains(p, chains)?;
    if !chains.pairwise_incomparable(p)? {
        return Err(BoundsError::ChainsNotPairwiseIncomparable);
    }
    let removed = chains.union_sorted();
    let keep = complement(p.len(), &removed);
    check_base_realizer(p, &keep, r)?;

    let mut exts = Vec::with_capacity(r.len() + chains.len().max(2));
    for ext in r.extensions() {
        exts.push(lift_extension(p, &removed, ext)?);
    }
    let list = chains.chains();
    if list.len() == 1 {
        exts.push(anchor_linearization(&AnchoredRequest {
            poset: p,
            bottom: list[0].clone(),
            top: Vec::new(),
        })?);
        exts.push(anchor_linearization(&AnchoredRequest {
            poset: p,
            bottom: Vec::new(),
            top: list[0].clone(),
        })?);
    } else {
        for j in 0..list.len() {
            exts.push(anchor_linearization(&AnchoredRequest {
                poset: p,
                bottom: list[j].clone(),
                top: list[(j + 1) % list.len()].clone(),
            })?);
        }
    }
    let out = Realizer::new(exts).expect("lifted extensions are nonempty");
    assert_eq!(
        verify_realizer(p, &out),
        Ok(RealizerVerdict::Realizes),
        "chain bound output must realize the poset"
    );
    Ok(out)
}

/// Realizer of the whole poset from a realizer of the poset minus a set of
/// arbitrary chains: lifts plus, per chain, one bottom anchor and one top
/// anchor. Output size is `|R| + 2n`.
pub fn dbc(p: &Poset, chains: &ChainSet, r: &Realizer) -> Result<Realizer, BoundsError> {
    if chains.is_empty() {
        return Err(BoundsError::EmptyChainSet);
    }
    check_chains(p, chains)?;
    let removed = chains.union_sorted();
    let keep = complement(p.len(), &removed);
    check_base_realizer(p, &keep, r)?;

    let mut exts = Vec::with_capacity(r.len() + 2 * chains.len());
    for ext in r.extensions() {
        exts.push(lift_extension(p, &removed, ext)?);
    }
    for chain in chains.chains() {
        exts.push(anchor_linearization(&AnchoredRequest {
            poset: p,
            bottom: chain.clone(),
            top: Vec::new(),
        })?);
        exts.push(anchor_linearization(&AnchoredRequest {
            poset: p,
            bottom: Vec::new(),
            top: chain.clone(),
        })?);
    }
    let out = Realizer::new(exts).expect("lifted extensions are nonempty");
    assert_eq!(
        verify_realizer(p, &out),
        Ok(RealizerVerdict::Realizes),
        "chain bound output must realize the poset"
    );
    Ok(out)
}

/// Realizer of the whole poset from a realizer of the poset minus one point.
///
/// The last input extension splits into two variants: one with the removed
/// point directly above its strict predecessors, one with it directly below
/// its strict successors. Every other input extension receives the point
/// right above the canonical minimal separator of (predecessors, successors)
/// in that extension, keeping the rest of the order untouched, so deleting
/// the point from output `j < m-1` returns input `j` verbatim. Output size
/// is `|R| + 1`.
pub fn db_point(p: &Poset, point: usize, r: &Realizer) -> Result<Realizer, BoundsError> {
    let n = p.len();
    if point >= n {
        return Err(BoundsError::Poset(PosetError::IndexOutOfRange {
            index: point,
            size: n,
        }));
    }
    if r.extensions().iter().any(|e| e.len() == n) {
        return Err(BoundsError::ElementNotRemoved);
    }
    let keep = complement(n, &[point]);
    check_base_realizer(p, &keep, r)?;

    // Sub index of a kept element: indices above the point shift down by one.
    let to_sub = |full: usize| if full < point { full } else { full - 1 };
    let to_full = |sub: usize| keep[sub];
    let preds: Vec<usize> = p.down_set(point)?.iter().map(|&x| to_sub(x)).collect();
    let succs: Vec<usize> = p.up_set(point)?.iter().map(|&x| to_sub(x)).collect();

    let m = r.len();
    let mut exts = Vec::with_capacity(m + 1);
    for ext in &r.extensions()[..m - 1] {
        let inst = SeparatorInstance::new(ext.clone(), preds.clone(), succs.clone());
        let separator = ls(&inst, SeparatorMode::Minimal)
            .expect("predecessors sit below successors in every extension");
        let cut = separator.len();
        debug_assert!({
            let mut prefix: Vec<usize> = ext.order()[..cut].to_vec();
            prefix.sort_unstable();
            prefix == separator
        });
        let mut order: Vec<usize> = Vec::with_capacity(n);
        order.extend(ext.order()[..cut].iter().map(|&e| to_full(e)));
        order.push(point);
        order.extend(ext.order()[cut..].iter().map(|&e| to_full(e)));
        exts.push(LinearExtension::from_order(order).expect("permutation"));
    }

    let last = &r.extensions()[m - 1];
    let in_preds = membership(n - 1, &preds);
    let in_succs = membership(n - 1, &succs);
    let mut low_variant: Vec<usize> = Vec::with_capacity(n);
    low_variant.extend(
        last.order()
            .iter()
            .filter(|&&e| in_preds[e])
            .map(|&e| to_full(e)),
    );
    low_variant.push(point);
    low_variant.extend(
        last.order()
            .iter()
            .filter(|&&e| !in_preds[e])
            .map(|&e| to_full(e)),
    );
    exts.push(LinearExtension::from_order(low_variant).expect("permutation"));

    let mut high_variant: Vec<usize> = Vec::with_capacity(n);
    high_variant.extend(
        last.order()
            .iter()
            .filter(|&&e| !in_succs[e])
            .map(|&e| to_full(e)),
    );
    high_variant.push(point);
    high_variant.extend(
        last.order()
            .iter()
            .filter(|&&e| in_succs[e])
            .map(|&e| to_full(e)),
    );
    exts.push(LinearExtension::from_order(high_variant).expect("permutation"));

    let out = Realizer::new(exts).expect("nonempty");
    assert_eq!(
        verify_realizer(p, &out),
        Ok(RealizerVerdict::Realizes),
        "point bound output must realize the poset"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::standard_realization;

    fn standard_example(n: usize) -> Poset {
        let mut labels = Vec::new();
        for i in 0..n {
            labels.push(format!("a:{i}"));
        }
        for i in 0..n {
            labels.push(format!("b:{i}"));
        }
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    pairs.push((format!("a:{i}"), format!("b:{j}")));
                }
            }
        }
        Poset::build(&labels, &pairs).unwrap()
    }

    #[test]
    fn anchor_without_chains_is_plain_linearization() {
        let p = standard_example(3);
        let req = AnchoredRequest {
            poset: &p,
            bottom: vec![],
            top: vec![],
        };
        assert_eq!(anchor_linearization(&req).unwrap(), p.linearize());
    }

    #[test]
    fn anchor_pins_bottom_and_top() {
        // F3, bottom {a:0}, top {b:0}: a:0 first, b:0 last.
        let p = standard_example(3);
        let a0 = p.index_of("a:0").unwrap();
        let b0 = p.index_of("b:0").unwrap();
        let req = AnchoredRequest {
            poset: &p,
            bottom: vec![a0],
            top: vec![b0],
        };
        let ext = anchor_linearization(&req).unwrap();
        assert_eq!(ext.order()[0], a0);
        assert_eq!(*ext.order().last().unwrap(), b0);
        assert!(ext.extends(&p));
    }

    #[test]
    fn anchor_honors_contract_on_incomparable_chain_pair() {
        // F4 with the two crossing chains; the anchored extension extends
        // the order and places anchored elements around everything
        // incomparable to them.
        let p = standard_example(4);
        let idx = |s: &str| p.index_of(s).unwrap();
        let bottom = vec![idx("a:3"), idx("b:2")];
        let top = vec![idx("a:2"), idx("b:3")];
        let req = AnchoredRequest {
            poset: &p,
            bottom: bottom.clone(),
            top: top.clone(),
        };
        let ext = anchor_linearization(&req).unwrap();
        assert!(ext.extends(&p));
        for x in 0..p.len() {
            for &c0 in &bottom {
                if p.incomparable(x, c0) {
                    assert!(ext.before(c0, x));
                }
            }
            for &c1 in &top {
                if p.incomparable(x, c1) {
                    assert!(ext.before(x, c1));
                }
            }
        }
    }

    #[test]
    fn anchor_rejects_comparable_chains() {
        let p = standard_example(5);
        let idx = |s: &str| p.index_of(s).unwrap();
        // {a:0, b:1} and {a:2, b:3} are comparable chains (a:0 < b:3).
        let req = AnchoredRequest {
            poset: &p,
            bottom: vec![idx("a:0"), idx("b:1")],
            top: vec![idx("a:2"), idx("b:3")],
        };
        assert_eq!(
            anchor_linearization(&req).unwrap_err(),
            BoundsError::NotIncomparableChains
        );
    }

    #[test]
    fn lift_with_nothing_removed_is_identity() {
        let p = standard_example(2);
        let ext = p.linearize();
        assert_eq!(lift_extension(&p, &[], &ext).unwrap(), ext);
    }

    #[test]
    fn lift_forced_middle_of_chain() {
        let p = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let sub_ext = LinearExtension::from_order(vec![0, 1]).unwrap(); // a < c
        let lifted = lift_extension(&p, &[1], &sub_ext).unwrap();
        assert_eq!(lifted.order(), &[0, 1, 2]);
    }

    #[test]
    fn lift_rejects_non_extension() {
        let p = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let bad = LinearExtension::from_order(vec![1, 0]).unwrap(); // c before a
        assert_eq!(
            lift_extension(&p, &[1], &bad).unwrap_err(),
            BoundsError::NotAnExtension
        );
    }

    #[test]
    fn dbi_two_crossing_chains_of_f4() {
        let p = standard_example(4);
        let idx = |s: &str| p.index_of(s).unwrap();
        let chains = ChainSet::new(
            &p,
            vec![vec![idx("a:3"), idx("b:2")], vec![idx("a:2"), idx("b:3")]],
        )
        .unwrap();
        let keep: Vec<usize> = vec![idx("a:0"), idx("a:1"), idx("b:0"), idx("b:1")];
        let mut keep = keep;
        keep.sort_unstable();
        let sub = p.restrict(&keep);
        let base = crate::dimension::dimension_exact(&sub, 4, 1_000_000)
            .unwrap()
            .witness;
        assert_eq!(base.len(), 2);
        let out = dbi(&p, &chains, &base).unwrap();
        assert_eq!(out.len(), 4);
    }

    #[test]
    fn dbi_single_chain_uses_two_anchors() {
        let p = standard_example(4);
        let idx = |s: &str| p.index_of(s).unwrap();
        let chains = ChainSet::new(&p, vec![vec![idx("a:2"), idx("b:3")]]).unwrap();
        let removed = chains.union_sorted();
        let keep: Vec<usize> = (0..p.len()).filter(|i| !removed.contains(i)).collect();
        let sub = p.restrict(&keep);
        let base = crate::dimension::dimension_exact(&sub, 6, 1_000_000)
            .unwrap()
            .witness;
        let out = dbi(&p, &chains, &base).unwrap();
        assert_eq!(out.len(), base.len() + 2);
    }

    #[test]
    fn dbi_rejects_comparable_chains() {
        let p = standard_example(5);
        let idx = |s: &str| p.index_of(s).unwrap();
        let chains = ChainSet::new(
            &p,
            vec![vec![idx("a:0"), idx("b:1")], vec![idx("a:2"), idx("b:3")]],
        )
        .unwrap();
        let removed = chains.union_sorted();
        let keep: Vec<usize> = (0..p.len()).filter(|i| !removed.contains(i)).collect();
        let sub = p.restrict(&keep);
        let base = standard_realization(&sub);
        assert_eq!(
            dbi(&p, &chains, &base).unwrap_err(),
            BoundsError::ChainsNotPairwiseIncomparable
        );
    }

    #[test]
    fn dbi_with_empty_chain_keeps_size_contract() {
        let p = standard_example(2);
        let chains = ChainSet::new(&p, vec![vec![]]).unwrap();
        let base = standard_realization(&p);
        let out = dbi(&p, &chains, &base).unwrap();
        assert_eq!(out.len(), base.len() + 2);
    }

    #[test]
    fn dbc_all_empty_chains() {
        let p = standard_example(2);
        let chains = ChainSet::new(&p, vec![vec![], vec![]]).unwrap();
        let base = standard_realization(&p);
        let out = dbc(&p, &chains, &base).unwrap();
        assert_eq!(out.len(), base.len() + 4);
    }

    #[test]
    fn dbc_single_chain_matches_dbi() {
        // With one chain, both bounds use the same anchor pair.
        let p = standard_example(4);
        let idx = |s: &str| p.index_of(s).unwrap();
        let chains = ChainSet::new(&p, vec![vec![idx("a:2"), idx("b:3")]]).unwrap();
        let removed = chains.union_sorted();
        let keep: Vec<usize> = (0..p.len()).filter(|i| !removed.contains(i)).collect();
        let base = standard_realization(&p.restrict(&keep));
        let via_incomparable = dbi(&p, &chains, &base).unwrap();
        let via_arbitrary = dbc(&p, &chains, &base).unwrap();
        assert_eq!(via_incomparable, via_arbitrary);
    }

    #[test]
    fn db_point_chain_plus_isolated_point() {
        let p = Poset::build(&["a", "b", "c", "z"], &[("a", "b"), ("b", "c")]).unwrap();
        let z = p.index_of("z").unwrap();
        let keep: Vec<usize> = (0..p.len()).filter(|&i| i != z).collect();
        let sub = p.restrict(&keep);
        let base = Realizer::new(vec![sub.linearize()]).unwrap();
        let out = db_point(&p, z, &base).unwrap();
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn db_point_global_maximum_sits_on_top() {
        let p = Poset::build(&["a", "b", "top"], &[("a", "top"), ("b", "top")]).unwrap();
        let top = p.index_of("top").unwrap();
        let sub = p.restrict(&[0, 1]);
        let base = standard_realization(&sub);
        let m = base.len();
        let out = db_point(&p, top, &base).unwrap();
        assert_eq!(out.len(), m + 1);
        for ext in out.extensions() {
            assert_eq!(*ext.order().last().unwrap(), top);
        }
    }

    #[test]
    fn db_point_rejects_unremoved_point() {
        let p = standard_example(2);
        let base = standard_realization(&p);
        assert_eq!(
            db_point(&p, 0, &base).unwrap_err(),
            BoundsError::ElementNotRemoved
        );
    }

    #[test]
    fn db_point_restriction_is_verbatim() {
        let p = standard_example(3);
        let x0 = p.index_of("b:1").unwrap();
        let keep: Vec<usize> = (0..p.len()).filter(|&i| i != x0).collect();
        let sub = p.restrict(&keep);
        let base = standard_realization(&sub);
        let m = base.len();
        let out = db_point(&p, x0, &base).unwrap();
        assert_eq!(out.len(), m + 1);
        for j in 0..m - 1 {
            assert_eq!(out.extensions()[j].restricted(&keep), base.extensions()[j]);
        }
    }
}
