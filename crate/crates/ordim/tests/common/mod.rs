//! Shared generators and independent oracles for the integration suites.
#![allow(dead_code)] // each test target uses its own subset

use ordim::{LinearExtension, Poset, SeparatorInstance};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random poset: each forward pair (i, j), i < j, joins the relation with
/// the given probability; the result is transitively closed.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_index_pairs(labels, &pairs).expect("forward pairs are acyclic")
}

/// Maximum antichain size by subset scan (posets up to 16 elements).
pub fn width(p: &Poset) -> usize {
    assert!(p.len() <= 16);
    let n = p.len();
    let mut best = 0usize;
    for mask in 0u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let antichain = members
            .iter()
            .enumerate()
            .all(|(k, &x)| members[k + 1..].iter().all(|&y| p.incomparable(x, y)));
        if antichain {
            best = best.max(members.len());
        }
    }
    best
}

/// Random separated instance: a shuffled order with the lower set drawn
/// from a strict prefix and the upper set from a suffix above it.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> SeparatorInstance {
    let n = rng.gen_range(0..=max_n);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let ext = LinearExtension::from_order(order).unwrap();
    let cut1 = rng.gen_range(0..=n);
    let cut2 = rng.gen_range(cut1..=n);
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for x in 0..n {
        let r = ext.rank(x);
        if r < cut1 && rng.gen_bool(0.6) {
            lower.push(x);
        }
        if r >= cut2 && rng.gen_bool(0.6) {
            upper.push(x);
        }
    }
    SeparatorInstance::new(ext, lower, upper)
}

/// Every downward-closed subset of a linear order is a rank prefix; the
/// valid separators are exactly the prefixes between the two closures.
pub fn all_valid_separators(inst: &SeparatorInstance) -> Vec<Vec<usize>> {
    let n = inst.len();
    let mut out = Vec::new();
    for r in 0..=n {
        let prefix: Vec<usize> = {
            let mut p: Vec<usize> = inst.order.order()[..r].to_vec();
            p.sort_unstable();
            p
        };
        if ordim::is_valid_separator(inst, &prefix) {
            out.push(prefix);
        }
    }
    out
}

/// Independent scan for separator elements: try every element literally.
pub fn has_separator_element_brute(inst: &SeparatorInstance) -> bool {
    (0..inst.len()).any(|b| {
        inst.lower
            .iter()
            .all(|&i| inst.order.rank(i) <= inst.order.rank(b))
            && inst
                .upper
                .iter()
                .all(|&f| inst.order.rank(b) <= inst.order.rank(f))
    })
}
