//! Finite strict partial orders over labeled elements, with deterministic
//! linearization (batch and online), closures, chains and down/up sets.
//!
//! Elements are externally strings and internally dense indices `0..n` in
//! label order. The strict relation is stored as an `n x n` bit matrix kept
//! transitively closed.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("relation has a cycle: {}", cycle.join(" -> "))]
    CycleDetected { cycle: Vec<String> },
    #[error("element index {index} out of range for poset of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("subset is not a chain")]
    NotAChain,
    #[error("chains overlap on element index {element}")]
    OverlappingChains { element: usize },
    #[error("not a permutation of 0..{expected}")]
    NotAPermutation { expected: usize },
    #[error("stream entry {entry} is inconsistent: {reason}")]
    InconsistentStream { entry: usize, reason: String },
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
fn test_bit(row: &[u64], y: usize) -> bool {
    row[y >> 6] >> (y & 63) & 1 == 1
}

#[inline]
fn set_bit(row: &mut [u64], y: usize) {
    row[y >> 6] |= 1u64 << (y & 63);
}

/// Warshall closure over row bitsets.
fn close_transitively(rows: &mut [u64], n: usize, words: usize) {
    for k in 0..n {
        let rk = rows[k * words..(k + 1) * words].to_vec();
        for x in 0..n {
            if test_bit(&rows[x * words..(x + 1) * words], k) {
                for w in 0..words {
                    rows[x * words + w] |= rk[w];
                }
            }
        }
    }
}

/// A finite strict partial order. Irreflexive, transitive, hence antisymmetric.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset({} elements: ", self.n)?;
        let mut first = true;
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) {
                    if !first {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}<{}", self.labels[x], self.labels[y])?;
                    first = false;
                }
            }
        }
        write!(f, ")")
    }
}

impl Poset {
    /// Canonical constructor: closes the given pairs transitively and
    /// validates the result. The input may be cover pairs or any
    /// subrelation of the intended order.
    pub fn build<L, A, B>(labels: &[L], pairs: &[(A, B)]) -> Result<Poset, PosetError>
    where
        L: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let owned: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for l in &owned {
            if !seen.insert(l.clone()) {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let index = |name: &str| -> Result<usize, PosetError> {
            owned
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| PosetError::UnknownLabel(name.to_string()))
        };
        let mut index_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            index_pairs.push((index(a.as_ref())?, index(b.as_ref())?));
        }
        Poset::from_index_pairs(owned, &index_pairs)
    }

    /// Extends an arbitrary acyclic relation to a partial order (its
    /// transitive closure); reports a witness cycle otherwise.
    pub fn extend_acyclic<L, A, B>(labels: &[L], pairs: &[(A, B)]) -> Result<Poset, PosetError>
    where
        L: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        Poset::build(labels, pairs)
    }

    /// Index-pair constructor used by generators and bounds.
    pub fn from_index_pairs(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        let n = labels.len();
        let words = words_for(n).max(1);
        let mut rows = vec![0u64; n * words];
        for &(a, b) in pairs {
            for &i in &[a, b] {
                if i >= n {
                    return Err(PosetError::IndexOutOfRange { index: i, size: n });
                }
            }
            if a == b {
                return Err(PosetError::CycleDetected {
                    cycle: vec![labels[a].clone(), labels[a].clone()],
                });
            }
            set_bit(&mut rows[a * words..(a + 1) * words], b);
        }
        close_transitively(&mut rows, n, words);
        for x in 0..n {
            if test_bit(&rows[x * words..(x + 1) * words], x) {
                let cycle = witness_cycle(n, pairs, x)
                    .iter()
                    .map(|&i| labels[i].clone())
                    .collect();
                return Err(PosetError::CycleDetected { cycle });
            }
        }
        Ok(Poset {
            labels,
            n,
            words,
            rows,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Strict order: `x` below `y`.
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        test_bit(&self.rows[x * self.words..(x + 1) * self.words], y)
    }

    /// Reflexive order.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        x != y && !self.lt(x, y) && !self.lt(y, x)
    }

    /// The strict relation as ordered index pairs, in lexicographic order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Unordered incomparable pairs `(x, y)` with `x < y`, lexicographic.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.incomparable(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn check_index(&self, x: usize) -> Result<(), PosetError> {
        if x >= self.n {
            return Err(PosetError::IndexOutOfRange {
                index: x,
                size: self.n,
            });
        }
        Ok(())
    }

    /// True iff the subset is pairwise comparable. The empty set is a chain.
    pub fn is_chain(&self, subset: &[usize]) -> Result<bool, PosetError> {
        for &x in subset {
            self.check_index(x)?;
        }
        for (i, &x) in subset.iter().enumerate() {
            for &y in &subset[i + 1..] {
                if x != y && self.incomparable(x, y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff every element of `c0` is incomparable to every element of `c1`.
    /// Both arguments must be chains.
    pub fn chains_incomparable(&self, c0: &[usize], c1: &[usize]) -> Result<bool, PosetError> {
        if !self.is_chain(c0)? || !self.is_chain(c1)? {
            return Err(PosetError::NotAChain);
        }
        for &x in c0 {
            for &y in c1 {
                if !self.incomparable(x, y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Strict predecessors of `x`, sorted.
    pub fn down_set(&self, x: usize) -> Result<Vec<usize>, PosetError> {
        self.check_index(x)?;
        Ok((0..self.n).filter(|&y| self.lt(y, x)).collect())
    }

    /// Strict successors of `x`, sorted.
    pub fn up_set(&self, x: usize) -> Result<Vec<usize>, PosetError> {
        self.check_index(x)?;
        Ok((0..self.n).filter(|&y| self.lt(x, y)).collect())
    }

    /// Induced subposet on `keep` (sorted, distinct, in range). Element `i`
    /// of the result corresponds to `keep[i]`.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        assert!(
            keep.windows(2).all(|w| w[0] < w[1]),
            "keep must be sorted and distinct"
        );
        if let Some(&last) = keep.last() {
            assert!(last < self.n, "keep index out of range");
        }
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let m = keep.len();
        let words = words_for(m).max(1);
        let mut rows = vec![0u64; m * words];
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if self.lt(x, y) {
                    set_bit(&mut rows[i * words..(i + 1) * words], j);
                }
            }
        }
        Poset {
            labels,
            n: m,
            words,
            rows,
        }
    }

    /// Deterministic linearization: repeatedly emit the minimal-index
    /// element among the current minimal elements.
    pub fn linearize(&self) -> LinearExtension {
        let mut indeg = vec![0usize; self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) {
                    indeg[y] += 1;
                }
            }
        }
        let mut emitted = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let next = (0..self.n)
                .find(|&y| !emitted[y] && indeg[y] == 0)
                .expect("valid poset always has a minimal element");
            emitted[next] = true;
            order.push(next);
            for y in 0..self.n {
                if self.lt(next, y) {
                    indeg[y] -= 1;
                }
            }
        }
        let ext = LinearExtension::from_order(order).expect("linearize emits a permutation");
        debug_assert!(ext.extends(self));
        ext
    }
}

/// Reconstruct a cycle through `start` in the input pair digraph.
fn witness_cycle(n: usize, pairs: &[(usize, usize)], start: usize) -> Vec<usize> {
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in pairs {
        succ[a].push(b);
    }
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    visited[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &succ[x] {
            if y == start {
                let mut rev = vec![x];
                let mut cur = x;
                while cur != start {
                    cur = parent[cur];
                    rev.push(cur);
                }
                rev.reverse();
                rev.push(start);
                return rev;
            }
            if !visited[y] {
                visited[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    vec![start, start]
}

/// A total order on a poset's elements extending its strict order,
/// stored as a permutation (position = rank, bottom first).
#[derive(Clone, PartialEq, Eq)]
pub struct LinearExtension {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl std::fmt::Debug for LinearExtension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearExtension{:?}", self.order)
    }
}

impl LinearExtension {
    pub fn from_order(order: Vec<usize>) -> Result<LinearExtension, PosetError> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &x) in order.iter().enumerate() {
            if x >= n || rank[x] != usize::MAX {
                return Err(PosetError::NotAPermutation { expected: n });
            }
            rank[x] = pos;
        }
        Ok(LinearExtension { order, rank })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Elements bottom to top.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    #[inline]
    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// True iff `x` is strictly below `y` in this order.
    #[inline]
    pub fn before(&self, x: usize, y: usize) -> bool {
        self.rank[x] < self.rank[y]
    }

    /// True iff this order extends the strict order of `p`.
    pub fn extends(&self, p: &Poset) -> bool {
        if p.len() != self.len() {
            return false;
        }
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.lt(x, y) && !self.before(x, y) {
                    return false;
                }
            }
        }
        true
    }

    /// Restriction to `keep` (sorted, distinct), reindexed so element `i`
    /// of the result corresponds to `keep[i]`.
    pub fn restricted(&self, keep: &[usize]) -> LinearExtension {
        let pos_of: std::collections::BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let order: Vec<usize> = self
            .order
            .iter()
            .filter_map(|x| pos_of.get(x).copied())
            .collect();
        LinearExtension::from_order(order).expect("restriction of a permutation")
    }
}

/// Disjoint chains of one poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSet {
    chains: Vec<Vec<usize>>,
}

impl ChainSet {
    /// Each subset must be a chain of `p`; subsets must be disjoint.
    /// Chains are stored sorted by element index.
    pub fn new(p: &Poset, chains: Vec<Vec<usize>>) -> Result<ChainSet, PosetError> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(chains.len());
        for chain in chains {
            if !p.is_chain(&chain)? {
                return Err(PosetError::NotAChain);
            }
            let mut sorted = chain;
            sorted.sort_unstable();
            sorted.dedup();
            for &x in &sorted {
                if !seen.insert(x) {
                    return Err(PosetError::OverlappingChains { element: x });
                }
            }
            normalized.push(sorted);
        }
        Ok(ChainSet { chains: normalized })
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn union_sorted(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.chains.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn pairwise_incomparable(&self, p: &Poset) -> Result<bool, PosetError> {
        for (i, c0) in self.chains.iter().enumerate() {
            for c1 in &self.chains[i + 1..] {
                if !p.chains_incomparable(c0, c1)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Online linearization. `stream[m]` lists the strict predecessors of
/// element `m` among the earlier elements `0..m`; the declared sets must be
/// transitively closed against earlier entries. Each new element is placed
/// immediately above the currently greatest of its strict predecessors, and
/// below every earlier element not forced above it (at the bottom when it
/// has no predecessors).
pub fn online_linearize(stream: &[Vec<usize>]) -> Result<LinearExtension, PosetError> {
    let mut order: Vec<usize> = Vec::with_capacity(stream.len());
    for (m, preds) in stream.iter().enumerate() {
        for &p in preds {
            if p >= m {
                return Err(PosetError::InconsistentStream {
                    entry: m,
                    reason: format!("predecessor {p} is not an earlier element"),
                });
            }
            for &q in &stream[p] {
                if !preds.contains(&q) {
                    return Err(PosetError::InconsistentStream {
                        entry: m,
                        reason: format!(
                            "missing transitive predecessor {q} (below declared predecessor {p})"
                        ),
                    });
                }
            }
        }
        let cut = preds
            .iter()
            .map(|&p| {
                order
                    .iter()
                    .position(|&x| x == p)
                    .expect("earlier element present")
                    + 1
            })
            .max()
            .unwrap_or(0);
        order.insert(cut, m);
    }
    LinearExtension::from_order(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Poset {
        // a:0, a:1 below b:1, b:0 crosswise
        Poset::build(
            &["a:0", "a:1", "b:0", "b:1"],
            &[("a:0", "b:1"), ("a:1", "b:0")],
        )
        .unwrap()
    }

    #[test]
    fn build_two_antichain() {
        let p = Poset::build(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.incomparable(0, 1));
        assert_eq!(p.incomparable_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn build_standard_example_three() {
        let labels = ["a:0", "a:1", "a:2", "b:0", "b:1", "b:2"];
        let mut pairs = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    pairs.push((format!("a:{i}"), format!("b:{j}")));
                }
            }
        }
        let p = Poset::build(&labels, &pairs).unwrap();
        for i in 0..3usize {
            for j in 0..3usize {
                assert_eq!(p.lt(i, 3 + j), i != j, "a:{i} < b:{j}");
            }
        }
        // a's and b's are antichains
        assert!(p.incomparable(0, 1) && p.incomparable(3, 4));
    }

    #[test]
    fn build_detects_cycle() {
        let err =
            Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        match err {
            PosetError::CycleDetected { cycle } => assert!(cycle.len() >= 2),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn cycle_witness_follows_input_pairs() {
        let pairs = [("w", "a"), ("a", "b"), ("b", "c"), ("c", "a"), ("w", "b")];
        let err = Poset::build(&["a", "b", "c", "w"], &pairs).unwrap_err();
        let PosetError::CycleDetected { cycle } = err else {
            panic!("expected cycle");
        };
        assert!(cycle.len() >= 3);
        assert_eq!(cycle.first(), cycle.last());
        for step in cycle.windows(2) {
            assert!(
                pairs.iter().any(|&(a, b)| a == step[0] && b == step[1]),
                "{} -> {} is not an input pair",
                step[0],
                step[1]
            );
        }
    }

    #[test]
    fn build_rejects_duplicate_and_unknown_labels() {
        assert_eq!(
            Poset::build(&["a", "a"], &[] as &[(&str, &str)]).unwrap_err(),
            PosetError::DuplicateLabel("a".into())
        );
        assert_eq!(
            Poset::build(&["a"], &[("a", "z")]).unwrap_err(),
            PosetError::UnknownLabel("z".into())
        );
    }

    #[test]
    fn build_is_idempotent_on_closed_relations() {
        let p = f2();
        let pairs: Vec<(String, String)> = p
            .relation_pairs()
            .into_iter()
            .map(|(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
            .collect();
        let rebuilt = Poset::build(p.labels(), &pairs).unwrap();
        assert_eq!(p, rebuilt);
    }

    #[test]
    fn incomparable_pairs_of_chain_and_f2() {
        let chain = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(chain.incomparable_pairs().is_empty());
        // F2 with label order a:0 a:1 b:0 b:1
        let p = f2();
        assert_eq!(p.incomparable_pairs(), vec![(0, 1), (0, 2), (1, 3), (2, 3)],);
    }

    #[test]
    fn chain_membership() {
        let p = f2();
        assert!(p.is_chain(&[]).unwrap());
        // a:0 < b:1 is a chain; a:0 | a:1 is not
        assert!(p.is_chain(&[0, 3]).unwrap());
        assert!(!p.is_chain(&[0, 1]).unwrap());
        assert_eq!(
            p.is_chain(&[9]).unwrap_err(),
            PosetError::IndexOutOfRange { index: 9, size: 4 }
        );
    }

    #[test]
    fn chains_incomparable_cases() {
        let p = f2();
        // {a:0, b:1} and {a:1, b:0} are incomparable chains
        assert!(p.chains_incomparable(&[0, 3], &[1, 2]).unwrap());
        assert!(p.chains_incomparable(&[], &[0, 3]).unwrap());
        assert_eq!(
            p.chains_incomparable(&[0, 1], &[2, 3]).unwrap_err(),
            PosetError::NotAChain
        );
    }

    #[test]
    fn linearize_tie_break_smallest_index() {
        let p = Poset::build(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(p.linearize().order(), &[0, 1]);

        let chain = Poset::build(&["a", "b"], &[("b", "a")]).unwrap();
        assert_eq!(chain.linearize().order(), &[1, 0]);

        // F2: minimal-index rule yields a:0 a:1 b:0 b:1
        assert_eq!(f2().linearize().order(), &[0, 1, 2, 3]);
    }

    #[test]
    fn linearize_empty_and_singleton() {
        let empty = Poset::build(&[] as &[&str], &[] as &[(&str, &str)]).unwrap();
        assert!(empty.linearize().order().is_empty());
        let single = Poset::build(&["x"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(single.linearize().order(), &[0]);
    }

    #[test]
    fn online_two_unrelated_elements() {
        // Second element goes below the first.
        let ext = online_linearize(&[vec![], vec![]]).unwrap();
        assert_eq!(ext.order(), &[1, 0]);
    }

    #[test]
    fn online_forced_pair() {
        let ext = online_linearize(&[vec![], vec![0]]).unwrap();
        assert_eq!(ext.order(), &[0, 1]);
    }

    #[test]
    fn online_insert_directly_above_predecessor() {
        // x2 has predecessor x1; x1 sits below x0, so x2 lands between them.
        let ext = online_linearize(&[vec![], vec![], vec![1]]).unwrap();
        assert_eq!(ext.order(), &[1, 2, 0]);
    }

    #[test]
    fn online_rejects_inconsistent_stream() {
        // 2 declares predecessor 1 but not 1's predecessor 0.
        let err = online_linearize(&[vec![], vec![0], vec![1]]).unwrap_err();
        assert!(matches!(
            err,
            PosetError::InconsistentStream { entry: 2, .. }
        ));
    }

    #[test]
    fn extend_acyclic_closure_and_cycle() {
        let p = Poset::extend_acyclic(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.lt(0, 2), "closure adds a < c");
        let err = Poset::extend_acyclic(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::CycleDetected { .. }));
    }

    #[test]
    fn extend_acyclic_is_fixpoint_on_poset_output() {
        let p = f2();
        let pairs = p.relation_pairs();
        let again = Poset::from_index_pairs(p.labels().to_vec(), &pairs).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn down_and_up_sets() {
        let chain = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(chain.down_set(2).unwrap(), vec![0, 1]);
        assert_eq!(chain.up_set(0).unwrap(), vec![1, 2]);

        // b:0 in F3 has strict predecessors a:1, a:2
        let labels = ["a:0", "a:1", "a:2", "b:0", "b:1", "b:2"];
        let mut pairs = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    pairs.push((format!("a:{i}"), format!("b:{j}")));
                }
            }
        }
        let p = Poset::build(&labels, &pairs).unwrap();
        assert_eq!(p.down_set(3).unwrap(), vec![1, 2]);

        let iso = Poset::build(&["x"], &[] as &[(&str, &str)]).unwrap();
        assert!(iso.up_set(0).unwrap().is_empty());
    }

    #[test]
    fn restriction_preserves_relation() {
        let p = f2();
        let sub = p.restrict(&[0, 2, 3]);
        assert_eq!(
            sub.labels(),
            &["a:0".to_string(), "b:0".to_string(), "b:1".to_string()]
        );
        assert!(sub.lt(0, 2)); // a:0 < b:1
        assert!(sub.incomparable(0, 1)); // a:0 | b:0
    }

    #[test]
    fn chain_set_rejects_overlap() {
        let p = f2();
        let err = ChainSet::new(&p, vec![vec![0, 3], vec![0]]).unwrap_err();
        assert_eq!(err, PosetError::OverlappingChains { element: 0 });
    }

    #[test]
    fn extension_restriction_keeps_relative_order() {
        let ext = LinearExtension::from_order(vec![2, 0, 3, 1]).unwrap();
        let r = ext.restricted(&[0, 1, 3]);
        // kept elements 0,1,3 appear as 0,2,1 reindexed -> order 0,3,1 -> [0,2,1]
        assert_eq!(r.order(), &[0, 2, 1]);
    }
}
