//! Realizer verification, the constructive realization, exact dimension via
//! iterative-deepening search, and an independent brute-force oracle.

use thiserror::Error;

use crate::poset::{LinearExtension, Poset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimensionError {
    #[error("empty realizer")]
    EmptyRealizer,
    #[error("extension {ext} has {got} elements, poset has {expected}")]
    SizeMismatch {
        ext: usize,
        got: usize,
        expected: usize,
    },
    #[error("extension {ext} does not extend the order: places element {above} above {below}")]
    NotAnExtension {
        ext: usize,
        below: usize,
        above: usize,
    },
    #[error("search budget exhausted: {lower_bound} <= dim <= {}",
            upper_bound.map(|u| u.to_string()).unwrap_or_else(|| "?".into()))]
    BudgetExceeded {
        lower_bound: usize,
        upper_bound: Option<usize>,
        nodes: u64,
    },
    #[error("poset too large for this operation ({size} elements, limit {limit})")]
    TooLarge { size: usize, limit: usize },
}

/// Nonempty family of linear extensions over one poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realizer {
    exts: Vec<LinearExtension>,
}

impl Realizer {
    pub fn new(exts: Vec<LinearExtension>) -> Result<Realizer, DimensionError> {
        if exts.is_empty() {
            return Err(DimensionError::EmptyRealizer);
        }
        let len = exts[0].len();
        for (i, e) in exts.iter().enumerate() {
            if e.len() != len {
                return Err(DimensionError::SizeMismatch {
                    ext: i,
                    got: e.len(),
                    expected: len,
                });
            }
        }
        Ok(Realizer { exts })
    }

    pub fn len(&self) -> usize {
        self.exts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn extensions(&self) -> &[LinearExtension] {
        &self.exts
    }

    pub fn into_extensions(self) -> Vec<LinearExtension> {
        self.exts
    }
}

/// Outcome of `verify_realizer`: either the family realizes the poset, or a
/// first incomparable pair is reported that every extension orders the same
/// way (`earlier` always before `later`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizerVerdict {
    Realizes,
    Unreversed { earlier: usize, later: usize },
}

/// Checks the realizer property. Each extension must extend the order, so
/// only reversals of incomparable pairs are inspected, in both directions.
pub fn verify_realizer(p: &Poset, r: &Realizer) -> Result<RealizerVerdict, DimensionError> {
    for (i, ext) in r.extensions().iter().enumerate() {
        if ext.len() != p.len() {
            return Err(DimensionError::SizeMismatch {
                ext: i,
                got: ext.len(),
                expected: p.len(),
            });
        }
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.lt(x, y) && !ext.before(x, y) {
                    return Err(DimensionError::NotAnExtension {
                        ext: i,
                        below: x,
                        above: y,
                    });
                }
            }
        }
    }
    for (x, y) in p.incomparable_pairs() {
        if !r.extensions().iter().any(|e| e.before(y, x)) {
            return Ok(RealizerVerdict::Unreversed {
                earlier: x,
                later: y,
            });
        }
        if !r.extensions().iter().any(|e| e.before(x, y)) {
            return Ok(RealizerVerdict::Unreversed {
                earlier: y,
                later: x,
            });
        }
    }
    Ok(RealizerVerdict::Realizes)
}

/// The constructive realization: one extension per ordered incomparable pair
/// `(a, b)`, obtained by linearizing the closure of the order together with
/// `{(x, y) : x <= a and b <= y}`. A chain yields its single linearization.
pub fn standard_realization(p: &Poset) -> Realizer {
    let n = p.len();
    let incomparable = p.incomparable_pairs();
    if incomparable.is_empty() {
        return Realizer::new(vec![p.linearize()]).expect("single extension");
    }
    let mut exts = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !p.incomparable(a, b) {
                continue;
            }
            let mut pairs = p.relation_pairs();
            for x in 0..n {
                for y in 0..n {
                    if x != y && p.leq(x, a) && p.leq(b, y) {
                        pairs.push((x, y));
                    }
                }
            }
            let extended = Poset::from_index_pairs(p.labels().to_vec(), &pairs)
                .expect("pair extension of a poset is acyclic");
            exts.push(extended.linearize());
        }
    }
    let r = Realizer::new(exts).expect("incomparable pair exists");
    debug_assert_eq!(verify_realizer(p, &r), Ok(RealizerVerdict::Realizes));
    r
}

/// Evidence that no realizer of size `exhausted_size` exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionProof {
    /// Largest size for which the assignment search was exhausted (dim - 1).
    pub exhausted_size: usize,
    /// Branch nodes explored across the exhausted depths.
    pub nodes: u64,
    /// Pairwise-conflicting reversal demands (each pair needs its own
    /// extension); a clique larger than `t` exhausts depth `t` outright.
    pub clique: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionResult {
    pub dim: usize,
    pub witness: Realizer,
    pub proof_of_lower: ExhaustionProof,
}

const DIMENSION_SIZE_LIMIT: usize = 32;

/// Exact dimension by iterative deepening over the number of extensions.
///
/// Every ordered incomparable pair `(x, y)` must be assigned to a slot whose
/// extension places `y` before `x`; a slot's constraint set (order plus
/// assigned reversals) is kept transitively closed and acyclic. Branching
/// picks the pair with the fewest feasible slots; a slot may be used for the
/// first time only after all earlier slots are in use. The returned witness
/// is deterministic.
pub fn dimension_exact(
    p: &Poset,
    max_t: usize,
    node_budget: u64,
) -> Result<DimensionResult, DimensionError> {
    let n = p.len();
    if n > DIMENSION_SIZE_LIMIT {
        return Err(DimensionError::TooLarge {
            size: n,
            limit: DIMENSION_SIZE_LIMIT,
        });
    }
    let mut items = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.incomparable(x, y) {
                items.push((x, y));
            }
        }
    }
    if items.is_empty() {
        return Ok(DimensionResult {
            dim: 1,
            witness: Realizer::new(vec![p.linearize()]).expect("chain extension"),
            proof_of_lower: ExhaustionProof {
                exhausted_size: 0,
                nodes: 0,
                clique: Vec::new(),
            },
        });
    }

    // Two reversal demands conflict when no linear order satisfies both:
    // adding (y_i -> x_i) and (y_j -> x_j) to the order closes a cycle
    // exactly when x_i <= y_j and x_j <= y_i.
    let conflicts =
        |i: &(usize, usize), j: &(usize, usize)| -> bool { p.leq(i.0, j.1) && p.leq(j.0, i.1) };
    let mut clique: Vec<(usize, usize)> = Vec::new();
    for seed in 0..items.len() {
        let mut cur = vec![items[seed]];
        for &cand in &items {
            if cur.iter().all(|c| cand != *c && conflicts(c, &cand)) {
                cur.push(cand);
            }
        }
        if cur.len() > clique.len() {
            clique = cur;
        }
    }

    let mut search = SlotSearch::new(p, &items);
    let mut nodes_total = 0u64;
    for t in 1..=max_t {
        if clique.len() > t {
            continue;
        }
        match search.run(t, node_budget.saturating_sub(nodes_total)) {
            SearchOutcome::Found(exts) => {
                let witness = Realizer::new(exts).expect("slots nonempty");
                debug_assert_eq!(verify_realizer(p, &witness), Ok(RealizerVerdict::Realizes));
                return Ok(DimensionResult {
                    dim: t,
                    witness,
                    proof_of_lower: ExhaustionProof {
                        exhausted_size: t - 1,
                        nodes: nodes_total,
                        clique,
                    },
                });
            }
            SearchOutcome::Exhausted(nodes) => {
                nodes_total += nodes;
            }
            SearchOutcome::Budget(nodes) => {
                return Err(DimensionError::BudgetExceeded {
                    lower_bound: t,
                    upper_bound: Some(items.len()),
                    nodes: nodes_total + nodes,
                });
            }
        }
    }
    Err(DimensionError::BudgetExceeded {
        lower_bound: max_t + 1,
        upper_bound: Some(items.len()),
        nodes: nodes_total,
    })
}

enum SearchOutcome {
    Found(Vec<LinearExtension>),
    Exhausted(u64),
    Budget(u64),
}

struct SlotSearch<'a> {
    p: &'a Poset,
    items: &'a [(usize, usize)],
    n: usize,
    base: Vec<u32>,
    budget: u64,
    nodes: u64,
}

impl<'a> SlotSearch<'a> {
    fn new(p: &'a Poset, items: &'a [(usize, usize)]) -> Self {
        let n = p.len();
        let mut base = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                if p.lt(x, y) {
                    base[x] |= 1 << y;
                }
            }
        }
        SlotSearch {
            p,
            items,
            n,
            base,
            budget: 0,
            nodes: 0,
        }
    }

    fn run(&mut self, t: usize, budget: u64) -> SearchOutcome {
        self.nodes = 0;
        self.budget = budget;
        let mut slots: Vec<Vec<u32>> = vec![self.base.clone(); t];
        let mut assigned = vec![usize::MAX; self.items.len()];
        self.dfs(t, 0, &mut slots, &mut assigned)
    }

    #[inline]
    fn feasible(&self, slot: &[u32], item: (usize, usize)) -> bool {
        // Adding y-before-x fails iff the slot already forces x below y.
        slot[item.0] >> item.1 & 1 == 0
    }

    fn dfs(
        &mut self,
        t: usize,
        used: usize,
        slots: &mut Vec<Vec<u32>>,
        assigned: &mut Vec<usize>,
    ) -> SearchOutcome {
        // Most-constrained unassigned item first; ties by item index.
        let limit = (used + 1).min(t);
        let mut pick: Option<(usize, usize)> = None;
        for (i, &item) in self.items.iter().enumerate() {
            if assigned[i] != usize::MAX {
                continue;
            }
            let count = (0..limit)
                .filter(|&s| self.feasible(&slots[s], item))
                .count();
            if count == 0 {
                return SearchOutcome::Exhausted(self.nodes);
            }
            if pick.is_none_or(|(_, best)| count < best) {
                pick = Some((i, count));
                if count == 1 {
                    break;
                }
            }
        }
        let (idx, _) = match pick {
            Some(p) => p,
            None => {
                let exts = slots
                    .iter()
                    .map(|rows| linearize_mask_rows(self.p, rows))
                    .collect();
                return SearchOutcome::Found(exts);
            }
        };
        let (x, y) = self.items[idx];
        for s in 0..limit {
            if !self.feasible(&slots[s], (x, y)) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return SearchOutcome::Budget(self.nodes);
            }
            let saved = slots[s].clone();
            // Close the slot relation under the new edge y -> x.
            let add = slots[s][x] | (1 << x);
            for u in 0..self.n {
                if u == y || slots[s][u] >> y & 1 == 1 {
                    slots[s][u] |= add;
                }
            }
            assigned[idx] = s;
            match self.dfs(t, used.max(s + 1), slots, assigned) {
                SearchOutcome::Exhausted(_) => {
                    assigned[idx] = usize::MAX;
                    slots[s] = saved;
                }
                other => return other,
            }
        }
        SearchOutcome::Exhausted(self.nodes)
    }
}

/// Deterministic linearization of a closed strict relation given as mask rows.
fn linearize_mask_rows(p: &Poset, rows: &[u32]) -> LinearExtension {
    let n = rows.len();
    let mut indeg = vec![0usize; n];
    for x in 0..n {
        for y in 0..n {
            if rows[x] >> y & 1 == 1 {
                indeg[y] += 1;
            }
        }
    }
    let mut emitted = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .find(|&y| !emitted[y] && indeg[y] == 0)
            .expect("acyclic slot relation");
        emitted[next] = true;
        order.push(next);
        for y in 0..n {
            if rows[next] >> y & 1 == 1 {
                indeg[y] -= 1;
            }
        }
    }
    let ext = LinearExtension::from_order(order).expect("permutation");
    debug_assert!(ext.extends(p));
    ext
}

const ORACLE_SIZE_LIMIT: usize = 8;

/// Independent reference implementation: enumerates every linear extension
/// by backtracking, then looks for the smallest family whose reversals cover
/// all ordered incomparable pairs. Shares no search code with
/// `dimension_exact`.
pub fn dimension_oracle(p: &Poset) -> Result<usize, DimensionError> {
    let n = p.len();
    if n > ORACLE_SIZE_LIMIT {
        return Err(DimensionError::TooLarge {
            size: n,
            limit: ORACLE_SIZE_LIMIT,
        });
    }
    let mut items = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.incomparable(x, y) {
                items.push((x, y));
            }
        }
    }
    if items.is_empty() {
        return Ok(1);
    }
    let mut orders = Vec::new();
    enumerate_extensions(p, &mut vec![], &mut vec![false; n], &mut orders);
    let full: u64 = if items.len() == 64 {
        u64::MAX
    } else {
        (1u64 << items.len()) - 1
    };
    let mut sigs: Vec<u64> = orders
        .iter()
        .map(|order| {
            let mut rank = vec![0usize; n];
            for (pos, &e) in order.iter().enumerate() {
                rank[e] = pos;
            }
            let mut sig = 0u64;
            for (bit, &(x, y)) in items.iter().enumerate() {
                if rank[y] < rank[x] {
                    sig |= 1 << bit;
                }
            }
            sig
        })
        .collect();
    sigs.sort_unstable();
    sigs.dedup();
    for t in 1..=sigs.len() {
        if cover_exists(&sigs, full, 0, t) {
            return Ok(t);
        }
    }
    unreachable!("the full extension set always realizes the poset");
}

fn enumerate_extensions(
    p: &Poset,
    prefix: &mut Vec<usize>,
    taken: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = p.len();
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for x in 0..n {
        if taken[x] {
            continue;
        }
        if (0..n).any(|y| !taken[y] && p.lt(y, x)) {
            continue;
        }
        taken[x] = true;
        prefix.push(x);
        enumerate_extensions(p, prefix, taken, out);
        prefix.pop();
        taken[x] = false;
    }
}

/// Exact set cover limited to `t` signatures, branching on the uncovered
/// bit with the fewest covering signatures.
fn cover_exists(sigs: &[u64], full: u64, covered: u64, t: usize) -> bool {
    if covered == full {
        return true;
    }
    if t == 0 {
        return false;
    }
    let missing = full & !covered;
    let mut best_bit = usize::MAX;
    let mut best_count = usize::MAX;
    let mut bits = missing;
    while bits != 0 {
        let bit = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let count = sigs.iter().filter(|&&s| s >> bit & 1 == 1).count();
        if count < best_count {
            best_count = count;
            best_bit = bit;
        }
        if count == 0 {
            return false;
        }
    }
    for &s in sigs {
        if s >> best_bit & 1 == 1 && cover_exists(sigs, full, covered | s, t - 1) {
            return true;
        }
    }
    false
}
