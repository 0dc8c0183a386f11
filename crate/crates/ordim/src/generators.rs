//! Named poset families with their companion data: the standard examples
//! with explicit realizers, stacked level posets driven by a pair of
//! injections, reversal scenarios (removal chains plus a two-extension base
//! realizer), sharpness fixtures, and the point-removal scenario assembled
//! from separation instances.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::dimension::{verify_realizer, Realizer, RealizerVerdict};
use crate::poset::{ChainSet, LinearExtension, Poset, PosetError};
use crate::separators::{SeparatorError, SeparatorInstance};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Separator(#[from] SeparatorError),
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("invalid injection pair: {0}")]
    InvalidInjection(String),
    #[error("variant arity mismatch: {0}")]
    VariantArityMismatch(String),
    #[error("realizer does not realize the generated poset")]
    InvalidRealizer,
}

/// The standard example of a poset of dimension `n`: elements `a:i`, `b:i`
/// for `i < n` with `a:i` below `b:j` exactly when `i != j`. Returns the
/// poset together with its explicit realizer of size `n`.
pub fn standard_example(n: usize) -> Result<(Poset, Realizer), GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::BadArity(format!(
            "standard example needs n >= 2, got {n}"
        )));
    }
    let poset = standard_example_poset(n)?;
    let mut exts = Vec::with_capacity(n);
    for i in 0..n {
        let mut order = Vec::with_capacity(2 * n);
        for k in 0..n {
            if k != i {
                order.push(k);
            }
        }
        order.push(n + i);
        order.push(i);
        for k in (0..n).rev() {
            if k != i {
                order.push(n + k);
            }
        }
        exts.push(LinearExtension::from_order(order).expect("permutation"));
    }
    let realizer = Realizer::new(exts).expect("n >= 2 extensions");
    debug_assert_eq!(
        verify_realizer(&poset, &realizer),
        Ok(RealizerVerdict::Realizes)
    );
    Ok((poset, realizer))
}

fn standard_example_poset(n: usize) -> Result<Poset, PosetError> {
    let mut labels = Vec::with_capacity(2 * n);
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
                pairs.push((i, n + j));
            }
        }
    }
    Poset::from_index_pairs(labels, &pairs)
}

/// Two finite injections with disjoint ranges, given as value lists, plus
/// the level bound of the generated poset. `first_values[r]` is the level of
/// the r-th first-kind witness pair, `second_values[s]` of the s-th
/// second-kind one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionPair {
    pub first_values: Vec<usize>,
    pub second_values: Vec<usize>,
    pub level_bound: usize,
}

impl InjectionPair {
    pub fn validate(&self) -> Result<(), GeneratorError> {
        let mut seen = BTreeMap::new();
        for (kind, values) in [
            ("first", &self.first_values),
            ("second", &self.second_values),
        ] {
            for &v in values.iter() {
                if v >= self.level_bound {
                    return Err(GeneratorError::InvalidInjection(format!(
                        "{kind} value {v} exceeds level bound {}",
                        self.level_bound
                    )));
                }
                if seen.insert(v, kind).is_some() {
                    return Err(GeneratorError::InvalidInjection(format!(
                        "value {v} used twice across the injections"
                    )));
                }
            }
        }
        Ok(())
    }

    fn first_witness(&self, level: usize) -> Option<usize> {
        self.first_values.iter().position(|&v| v == level)
    }

    fn second_witness(&self, level: usize) -> Option<usize> {
        self.second_values.iter().position(|&v| v == level)
    }
}

/// What a level of a leveled poset carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelMeta {
    /// A two-element antichain `x:m`, `y:m`.
    Plain,
    /// A standard-example copy whose lower side contains `x:m`.
    FirstCopy { witness: usize },
    /// The mirrored copy whose lower side contains `y:m`.
    SecondCopy { witness: usize },
}

/// A poset stratified into linearly ordered levels.
#[derive(Clone, Debug)]
pub struct LeveledPoset {
    pub poset: Poset,
    /// Level of each element.
    pub level: Vec<usize>,
    /// Per-level content, indexed by level.
    pub meta: Vec<LevelMeta>,
}

impl LeveledPoset {
    pub fn level_count(&self) -> usize {
        self.meta.len()
    }

    pub fn x_index(&self, level: usize) -> usize {
        self.poset
            .index_of(&format!("x:{level}"))
            .expect("x element present")
    }

    pub fn y_index(&self, level: usize) -> usize {
        self.poset
            .index_of(&format!("y:{level}"))
            .expect("y element present")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    X(usize),
    Y(usize),
    C { witness: usize, column: usize },
    D { witness: usize, column: usize },
    P { witness: usize, column: usize },
    Q { witness: usize, column: usize },
}

fn build_elements(
    columns: usize,
    inj: &InjectionPair,
) -> (Vec<String>, Vec<usize>, Vec<Role>, Vec<LevelMeta>) {
    let mut labels = Vec::new();
    let mut level = Vec::new();
    let mut roles = Vec::new();
    let mut meta = Vec::new();
    for m in 0..inj.level_bound {
        labels.push(format!("x:{m}"));
        level.push(m);
        roles.push(Role::X(m));
        labels.push(format!("y:{m}"));
        level.push(m);
        roles.push(Role::Y(m));
        if let Some(r) = inj.first_witness(m) {
            for j in 0..columns {
                labels.push(format!("c:{r}:{j}"));
                level.push(m);
                roles.push(Role::C {
                    witness: r,
                    column: j,
                });
            }
            for j in 0..columns {
                labels.push(format!("d:{r}:{j}"));
                level.push(m);
                roles.push(Role::D {
                    witness: r,
                    column: j,
                });
            }
            meta.push(LevelMeta::FirstCopy { witness: r });
        } else if let Some(s) = inj.second_witness(m) {
            for j in 0..columns {
                labels.push(format!("p:{s}:{j}"));
                level.push(m);
                roles.push(Role::P {
                    witness: s,
                    column: j,
                });
            }
            for j in 0..columns {
                labels.push(format!("q:{s}:{j}"));
                level.push(m);
                roles.push(Role::Q {
                    witness: s,
                    column: j,
                });
            }
            meta.push(LevelMeta::SecondCopy { witness: s });
        } else {
            meta.push(LevelMeta::Plain);
        }
    }
    (labels, level, roles, meta)
}

/// The leveled poset on levels below the bound: plain levels are
/// two-element antichains; a level hit by an injection carries a
/// standard-example copy of size `k` (mirrored for the second injection).
/// Distinct levels are fully comparable.
pub fn leveled_poset(k: usize, inj: &InjectionPair) -> Result<LeveledPoset, GeneratorError> {
    if k < 3 {
        return Err(GeneratorError::BadArity(format!(
            "level copies need k >= 3, got {k}"
        )));
    }
    inj.validate()?;
    let (labels, level, roles, meta) = build_elements(k - 1, inj);
    let size = labels.len();
    let mut pairs = Vec::new();
    for u in 0..size {
        for v in 0..size {
            if u == v {
                continue;
            }
            let below = if level[u] != level[v] {
                level[u] < level[v]
            } else {
                same_level_lt(roles[u], roles[v])
            };
            if below {
                pairs.push((u, v));
            }
        }
    }
    let poset = Poset::from_index_pairs(labels, &pairs)?;
    debug_assert_eq!(
        poset.relation_pairs().len(),
        pairs.len(),
        "level rule is closed"
    );
    Ok(LeveledPoset { poset, level, meta })
}

/// The six within-level comparabilities.
fn same_level_lt(u: Role, v: Role) -> bool {
    match (u, v) {
        (Role::X(_), Role::D { .. }) => true,
        (Role::C { .. }, Role::Y(_)) => true,
        (Role::C { column: i, .. }, Role::D { column: j, .. }) => i != j,
        (Role::P { .. }, Role::X(_)) => true,
        (Role::Y(_), Role::Q { .. }) => true,
        (Role::P { column: i, .. }, Role::Q { column: j, .. }) => i != j,
        _ => false,
    }
}

/// The reversal scenarios: which chains are removed from which leveled
/// poset, together with the explicit two-extension realizer of the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReversalVariant {
    /// One chain through columns 1 and 2 of every copy level (k = 4).
    SingleChain,
    /// `n` mutually comparable chains through even/odd column pairs
    /// (k = 2n + 2).
    ComparableChains { n: usize },
    /// `n` pairwise incomparable column chains in the modified order where
    /// upper-side copy elements only rise within their own column.
    IncomparableColumns { n: usize },
}

#[derive(Clone, Debug)]
pub struct ReversalScenario {
    pub leveled: LeveledPoset,
    pub chains: ChainSet,
    /// Two extensions realizing the poset minus the chain union.
    pub base: Realizer,
}

pub fn reversal_scenario(
    variant: ReversalVariant,
    inj: &InjectionPair,
) -> Result<ReversalScenario, GeneratorError> {
    let leveled = match variant {
        ReversalVariant::SingleChain => leveled_poset(4, inj)?,
        ReversalVariant::ComparableChains { n } => {
            if n < 1 {
                return Err(GeneratorError::VariantArityMismatch(
                    "comparable-chains variant needs n >= 1".into(),
                ));
            }
            leveled_poset(2 * n + 2, inj)?
        }
        ReversalVariant::IncomparableColumns { n } => {
            if n < 3 {
                return Err(GeneratorError::VariantArityMismatch(
                    "incomparable-columns variant needs n >= 3".into(),
                ));
            }
            column_poset(n, inj)?
        }
    };
    let chains = removal_chains(&leveled, variant)?;
    let base = base_realizer(&leveled, variant, &chains)?;
    Ok(ReversalScenario {
        leveled,
        chains,
        base,
    })
}

fn removal_chains(
    leveled: &LeveledPoset,
    variant: ReversalVariant,
) -> Result<ChainSet, GeneratorError> {
    let p = &leveled.poset;
    let idx = |label: String| p.index_of(&label).expect("generated label");
    let mut chains: Vec<Vec<usize>> = match variant {
        ReversalVariant::SingleChain => vec![Vec::new()],
        ReversalVariant::ComparableChains { n } | ReversalVariant::IncomparableColumns { n } => {
            vec![Vec::new(); n]
        }
    };
    for m in 0..leveled.level_count() {
        match (leveled.meta[m], variant) {
            (LevelMeta::Plain, _) => {}
            (LevelMeta::FirstCopy { witness }, ReversalVariant::SingleChain) => {
                chains[0].push(idx(format!("c:{witness}:1")));
                chains[0].push(idx(format!("d:{witness}:2")));
            }
            (LevelMeta::SecondCopy { witness }, ReversalVariant::SingleChain) => {
                chains[0].push(idx(format!("p:{witness}:1")));
                chains[0].push(idx(format!("q:{witness}:2")));
            }
            (LevelMeta::FirstCopy { witness }, ReversalVariant::ComparableChains { n }) => {
                for i in 1..=n {
                    chains[i - 1].push(idx(format!("c:{witness}:{}", 2 * i)));
                    chains[i - 1].push(idx(format!("d:{witness}:{}", 2 * i - 1)));
                }
            }
            (LevelMeta::SecondCopy { witness }, ReversalVariant::ComparableChains { n }) => {
                for i in 1..=n {
                    chains[i - 1].push(idx(format!("p:{witness}:{}", 2 * i)));
                    chains[i - 1].push(idx(format!("q:{witness}:{}", 2 * i - 1)));
                }
            }
            (LevelMeta::FirstCopy { witness }, ReversalVariant::IncomparableColumns { n }) => {
                for (j, chain) in chains.iter_mut().enumerate().take(n) {
                    chain.push(idx(format!("d:{witness}:{j}")));
                }
            }
            (LevelMeta::SecondCopy { witness }, ReversalVariant::IncomparableColumns { n }) => {
                for (j, chain) in chains.iter_mut().enumerate().take(n) {
                    chain.push(idx(format!("q:{witness}:{j}")));
                }
            }
        }
    }
    Ok(ChainSet::new(p, chains)?)
}

/// The two explicit extensions of the poset minus the removal chains,
/// assembled level block by level block.
fn base_realizer(
    leveled: &LeveledPoset,
    variant: ReversalVariant,
    chains: &ChainSet,
) -> Result<Realizer, GeneratorError> {
    let p = &leveled.poset;
    let removed = chains.union_sorted();
    let keep: Vec<usize> = (0..p.len()).filter(|i| !removed.contains(i)).collect();
    let sub = p.restrict(&keep);

    let mut low_labels: Vec<String> = Vec::new();
    let mut high_labels: Vec<String> = Vec::new();
    for m in 0..leveled.level_count() {
        let (mut b0, mut b1) = level_blocks(leveled.meta[m], m, variant);
        low_labels.append(&mut b0);
        high_labels.append(&mut b1);
    }
    let to_ext = |labels: &[String]| -> LinearExtension {
        let order: Vec<usize> = labels
            .iter()
            .map(|l| sub.index_of(l).expect("kept label"))
            .collect();
        LinearExtension::from_order(order).expect("permutation of the subposet")
    };
    let base = Realizer::new(vec![to_ext(&low_labels), to_ext(&high_labels)]).expect("two exts");
    assert_eq!(
        verify_realizer(&sub, &base),
        Ok(RealizerVerdict::Realizes),
        "base extensions must realize the poset minus the chains"
    );
    Ok(base)
}

/// Per-level element sequences of the two base extensions (kept elements
/// only), bottom to top within the level.
fn level_blocks(meta: LevelMeta, m: usize, variant: ReversalVariant) -> (Vec<String>, Vec<String>) {
    let x = format!("x:{m}");
    let y = format!("y:{m}");
    match meta {
        LevelMeta::Plain => (vec![x.clone(), y.clone()], vec![y, x]),
        LevelMeta::FirstCopy { witness } => {
            let c = |j: usize| format!("c:{witness}:{j}");
            let d = |j: usize| format!("d:{witness}:{j}");
            match variant {
                ReversalVariant::SingleChain => (
                    vec![x.clone(), c(2), d(0), c(0), d(1), y.clone()],
                    vec![c(0), c(2), y, x, d(1), d(0)],
                ),
                ReversalVariant::ComparableChains { n } => {
                    let mut b0 = vec![x.clone()];
                    for j in (1..=2 * n - 1).rev().filter(|j| j % 2 == 1) {
                        b0.push(c(j));
                    }
                    b0.push(d(0));
                    b0.push(c(0));
                    for j in (2..=2 * n).filter(|j| j % 2 == 0) {
                        b0.push(d(j));
                    }
                    b0.push(y.clone());

                    let mut b1 = vec![c(0)];
                    for j in (1..=2 * n - 1).filter(|j| j % 2 == 1) {
                        b1.push(c(j));
                    }
                    b1.push(y);
                    b1.push(x);
                    for j in (2..=2 * n).rev().filter(|j| j % 2 == 0) {
                        b1.push(d(j));
                    }
                    b1.push(d(0));
                    (b0, b1)
                }
                ReversalVariant::IncomparableColumns { n } => {
                    let mut b0 = vec![x.clone()];
                    for j in 0..n {
                        b0.push(c(j));
                    }
                    b0.push(y.clone());
                    let mut b1: Vec<String> = (0..n).rev().map(c).collect();
                    b1.push(y);
                    b1.push(x);
                    (b0, b1)
                }
            }
        }
        LevelMeta::SecondCopy { witness } => {
            let pl = |j: usize| format!("p:{witness}:{j}");
            let q = |j: usize| format!("q:{witness}:{j}");
            match variant {
                ReversalVariant::SingleChain => (
                    vec![pl(0), pl(2), x.clone(), y.clone(), q(1), q(0)],
                    vec![y, pl(2), q(0), pl(0), q(1), x],
                ),
                ReversalVariant::ComparableChains { n } => {
                    let mut b0 = vec![pl(0)];
                    for j in (1..=2 * n - 1).filter(|j| j % 2 == 1) {
                        b0.push(pl(j));
                    }
                    b0.push(x.clone());
                    b0.push(y.clone());
                    for j in (2..=2 * n).rev().filter(|j| j % 2 == 0) {
                        b0.push(q(j));
                    }
                    b0.push(q(0));

                    let mut b1 = vec![y];
                    for j in (1..=2 * n - 1).rev().filter(|j| j % 2 == 1) {
                        b1.push(pl(j));
                    }
                    b1.push(q(0));
                    b1.push(pl(0));
                    for j in (2..=2 * n).filter(|j| j % 2 == 0) {
                        b1.push(q(j));
                    }
                    b1.push(x);
                    (b0, b1)
                }
                ReversalVariant::IncomparableColumns { n } => {
                    let mut b0: Vec<String> = (0..n).map(pl).collect();
                    b0.push(x.clone());
                    b0.push(y.clone());
                    let mut b1 = vec![y];
                    for j in (0..n).rev() {
                        b1.push(pl(j));
                    }
                    b1.push(x);
                    (b0, b1)
                }
            }
        }
    }
}

/// The modified leveled poset for the incomparable-columns variant: each
/// copy level is a standard example of size `n + 1`, but the upper-side copy
/// elements (`d`, `q`) are comparable across levels only within their own
/// column, making the columns pairwise incomparable chains.
fn column_poset(n: usize, inj: &InjectionPair) -> Result<LeveledPoset, GeneratorError> {
    inj.validate()?;
    let (labels, level, roles, meta) = build_elements(n, inj);
    let size = labels.len();
    let first = |w: usize| inj.first_values[w];
    let second = |w: usize| inj.second_values[w];
    let lt = |u: Role, lu: usize, v: Role| -> bool {
        match v {
            Role::D {
                witness: wv,
                column: jv,
            } => {
                let lv = first(wv);
                match u {
                    Role::X(m) => m <= lv,
                    Role::Y(m) => m < lv,
                    Role::C {
                        witness: wu,
                        column: ju,
                    } => {
                        if wu == wv {
                            ju != jv
                        } else {
                            first(wu) < lv
                        }
                    }
                    Role::P { witness: wu, .. } => second(wu) < lv,
                    Role::D {
                        witness: wu,
                        column: ju,
                    } => ju == jv && first(wu) < lv,
                    Role::Q {
                        witness: wu,
                        column: ju,
                    } => ju == jv && second(wu) < lv,
                }
            }
            Role::Q {
                witness: wv,
                column: jv,
            } => {
                let lv = second(wv);
                match u {
                    Role::Y(m) => m <= lv,
                    Role::X(m) => m < lv,
                    Role::P {
                        witness: wu,
                        column: ju,
                    } => {
                        if wu == wv {
                            ju != jv
                        } else {
                            second(wu) < lv
                        }
                    }
                    Role::C { witness: wu, .. } => first(wu) < lv,
                    Role::Q {
                        witness: wu,
                        column: ju,
                    } => ju == jv && second(wu) < lv,
                    Role::D {
                        witness: wu,
                        column: ju,
                    } => ju == jv && first(wu) < lv,
                }
            }
            Role::X(mv) => match u {
                Role::D { .. } | Role::Q { .. } => false,
                Role::P { witness: wu, .. } => second(wu) == mv || lu < mv,
                _ => lu < mv,
            },
            Role::Y(mv) => match u {
                Role::D { .. } | Role::Q { .. } => false,
                Role::C { witness: wu, .. } => first(wu) == mv || lu < mv,
                _ => lu < mv,
            },
            Role::C { .. } | Role::P { .. } => match u {
                Role::D { .. } | Role::Q { .. } => false,
                _ => lu < level_of_role(v, inj),
            },
        }
    };
    let mut pairs = Vec::new();
    for u in 0..size {
        for v in 0..size {
            if u != v && lt(roles[u], level[u], roles[v]) {
                pairs.push((u, v));
            }
        }
    }
    let poset = Poset::from_index_pairs(labels, &pairs)?;
    debug_assert_eq!(
        poset.relation_pairs().len(),
        pairs.len(),
        "column rule is closed"
    );
    Ok(LeveledPoset { poset, level, meta })
}

fn level_of_role(r: Role, inj: &InjectionPair) -> usize {
    match r {
        Role::X(m) | Role::Y(m) => m,
        Role::C { witness, .. } | Role::D { witness, .. } => inj.first_values[witness],
        Role::P { witness, .. } | Role::Q { witness, .. } => inj.second_values[witness],
    }
}

/// Levels whose marked pair is reversed in at most `low_threshold` of the
/// extensions: counts the extensions placing `y:m` below `x:m`. With the
/// pipeline realizers this contains every first-injection level and no
/// second-injection level.
pub fn separating_levels(
    leveled: &LeveledPoset,
    realizer: &Realizer,
    low_threshold: usize,
) -> Result<Vec<usize>, GeneratorError> {
    match verify_realizer(&leveled.poset, realizer) {
        Ok(RealizerVerdict::Realizes) => {}
        _ => return Err(GeneratorError::InvalidRealizer),
    }
    let mut out = Vec::new();
    for m in 0..leveled.level_count() {
        let x = leveled.x_index(m);
        let y = leveled.y_index(m);
        let count = realizer
            .extensions()
            .iter()
            .filter(|e| e.before(y, x))
            .count();
        if count <= low_threshold {
            out.push(m);
        }
    }
    Ok(out)
}

/// The sharpness fixtures: a poset, removal chains, and the expected
/// dimensions before and after removal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SharpnessCase {
    /// One chain `{a:n, b:n+1}` removed from the standard example of size
    /// n+2; dimension drops from n+2 to n.
    OneChain { n: usize },
    /// The two crossing incomparable chains removed from size n+2, leaving
    /// exactly the standard example of size n.
    TwoIncomparable { n: usize },
    /// The singleton chains `{b:i}`, i < n, removed from size n+2 (n >= 3);
    /// the rest has dimension 2.
    Singletons { n: usize },
    /// Two comparable chains removed from the size-5 example; the rest has
    /// dimension 2, beating the incomparable-chain bound.
    TwoComparableF5,
    /// The same removal from the size-6 example; sharp for the
    /// arbitrary-chain bound.
    TwoComparableF6,
}

#[derive(Clone, Debug)]
pub struct SharpnessFixture {
    pub poset: Poset,
    pub chains: ChainSet,
    pub dim_before: usize,
    pub dim_after: usize,
}

pub fn sharpness_fixture(case: SharpnessCase) -> Result<SharpnessFixture, GeneratorError> {
    let build = |size: usize, chain_labels: Vec<Vec<String>>, before: usize, after: usize| {
        let poset = standard_example_poset(size)?;
        let chains = chain_labels
            .into_iter()
            .map(|chain| {
                chain
                    .into_iter()
                    .map(|l| poset.index_of(&l).expect("fixture label"))
                    .collect::<Vec<usize>>()
            })
            .collect();
        let chains = ChainSet::new(&poset, chains)?;
        Ok(SharpnessFixture {
            poset,
            chains,
            dim_before: before,
            dim_after: after,
        })
    };
    match case {
        SharpnessCase::OneChain { n } => {
            if n < 2 {
                return Err(GeneratorError::BadArity(format!(
                    "one-chain case needs n >= 2, got {n}"
                )));
            }
            build(
                n + 2,
                vec![vec![format!("a:{n}"), format!("b:{}", n + 1)]],
                n + 2,
                n,
            )
        }
        SharpnessCase::TwoIncomparable { n } => {
            if n < 2 {
                return Err(GeneratorError::BadArity(format!(
                    "two-incomparable case needs n >= 2, got {n}"
                )));
            }
            build(
                n + 2,
                vec![
                    vec![format!("a:{}", n + 1), format!("b:{n}")],
                    vec![format!("a:{n}"), format!("b:{}", n + 1)],
                ],
                n + 2,
                n,
            )
        }
        SharpnessCase::Singletons { n } => {
            if n < 3 {
                return Err(GeneratorError::BadArity(format!(
                    "singletons case needs n >= 3, got {n}"
                )));
            }
            build(
                n + 2,
                (0..n).map(|i| vec![format!("b:{i}")]).collect(),
                n + 2,
                2,
            )
        }
        SharpnessCase::TwoComparableF5 => build(
            5,
            vec![
                vec!["a:0".into(), "b:1".into()],
                vec!["a:2".into(), "b:3".into()],
            ],
            5,
            2,
        ),
        SharpnessCase::TwoComparableF6 => build(
            6,
            vec![
                vec!["a:0".into(), "b:1".into()],
                vec!["a:2".into(), "b:3".into()],
            ],
            6,
            2,
        ),
    }
}

/// A poset with a distinguished point whose removal leaves a poset realized
/// by the given orders, built so that extending the realizer back over the
/// point recovers separators for the input instances.
#[derive(Clone, Debug)]
pub struct PointRemovalScenario {
    pub poset: Poset,
    /// Index of the distinguished point.
    pub removed_point: usize,
    /// Realizer of the poset minus the point; the first `k` extensions are
    /// the identified input orders, the last one is the auxiliary order.
    pub realizer: Realizer,
    /// Per instance, original element index to poset element index.
    pub instance_embeddings: Vec<Vec<usize>>,
}

/// Builds the point-removal scenario from separation instances: each order
/// is padded (fresh bottom elements join the lower set, fresh top elements
/// alternate between the upper set and the middle), elements are identified
/// across instances by a mod-3 label coding, an auxiliary order sorts the
/// three classes into blocks, and the poset is the intersection of all the
/// orders plus a point sitting exactly between the lower and upper classes.
pub fn point_removal_scenario(
    insts: &[SeparatorInstance],
) -> Result<PointRemovalScenario, GeneratorError> {
    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Class {
        Lower,
        Upper,
        Middle,
    }

    for inst in insts {
        inst.validate()?;
    }
    let count = |inst: &SeparatorInstance, class: Class| match class {
        Class::Lower => inst.lower.len(),
        Class::Upper => inst.upper.len(),
        Class::Middle => inst.len() - inst.lower.len() - inst.upper.len(),
    };
    let max_of = |class: Class| insts.iter().map(|i| count(i, class)).max().unwrap_or(0);
    let pad = insts.iter().map(|i| i.len()).max().unwrap_or(0).max(3);
    let target_lower = if max_of(Class::Lower) == 0 {
        0
    } else {
        max_of(Class::Lower) + pad
    };
    let target_upper = if max_of(Class::Upper) == 0 {
        0
    } else {
        max_of(Class::Upper) + pad
    };
    let target_middle = max_of(Class::Middle)
        + if target_lower > 0 || target_upper > 0 {
            pad
        } else {
            0
        };
    let total = target_lower + target_upper + target_middle;

    // Relabel each padded order; the label tells the class: lower elements
    // get multiples of 3, upper ones 1 mod 3, middle ones 2 mod 3.
    let mut orders_by_label: Vec<Vec<u64>> = Vec::new();
    let mut label_of_original: Vec<Vec<u64>> = Vec::new();
    for inst in insts {
        let mut classes: Vec<(Option<usize>, Class)> = Vec::new();
        for _ in 0..target_lower - inst.lower.len() {
            classes.push((None, Class::Lower));
        }
        for &e in inst.order.order() {
            let class = if inst.lower.contains(&e) {
                Class::Lower
            } else if inst.upper.contains(&e) {
                Class::Upper
            } else {
                Class::Middle
            };
            classes.push((Some(e), class));
        }
        let mut need_upper = target_upper - inst.upper.len();
        let mut need_middle = target_middle - count(inst, Class::Middle);
        while need_upper > 0 || need_middle > 0 {
            if need_upper > 0 {
                classes.push((None, Class::Upper));
                need_upper -= 1;
            }
            if need_middle > 0 {
                classes.push((None, Class::Middle));
                need_middle -= 1;
            }
        }
        let mut next = [0u64; 3]; // counters per class
        let mut order = Vec::with_capacity(total);
        let mut originals = vec![0u64; inst.len()];
        for (origin, class) in classes {
            let (slot, residue) = match class {
                Class::Lower => (0, 3u64),
                Class::Upper => (1, 1u64),
                Class::Middle => (2, 2u64),
            };
            let label = 3 * next[slot] + residue;
            next[slot] += 1;
            order.push(label);
            if let Some(e) = origin {
                originals[e] = label;
            }
        }
        orders_by_label.push(order);
        label_of_original.push(originals);
    }

    // Common label universe, identical across instances.
    let mut universe: Vec<u64> = Vec::new();
    for t in 0..target_lower as u64 {
        universe.push(3 * t + 3);
    }
    for t in 0..target_upper as u64 {
        universe.push(3 * t + 1);
    }
    for t in 0..target_middle as u64 {
        universe.push(3 * t + 2);
    }
    universe.sort_unstable();
    debug_assert_eq!(universe.len(), total);
    for order in &orders_by_label {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        debug_assert_eq!(sorted, universe, "identification uses one label set");
    }

    // Auxiliary order: lower block, middle block, upper block, each
    // ascending by label.
    let mut aux: Vec<u64> = Vec::new();
    for residue in [0u64, 2, 1] {
        let mut block: Vec<u64> = universe
            .iter()
            .copied()
            .filter(|l| l % 3 == residue)
            .collect();
        block.sort_unstable();
        aux.append(&mut block);
    }

    let mut labels: Vec<String> = universe.iter().map(|l| format!("e:{l}")).collect();
    labels.push("z0".to_string());
    let point = total;
    let index_of_label: BTreeMap<u64, usize> =
        universe.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let mut all_orders: Vec<Vec<usize>> = orders_by_label
        .iter()
        .map(|o| o.iter().map(|l| index_of_label[l]).collect())
        .collect();
    all_orders.push(aux.iter().map(|l| index_of_label[l]).collect());

    let exts: Vec<LinearExtension> = all_orders
        .iter()
        .map(|o| LinearExtension::from_order(o.clone()).expect("permutation"))
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for u in 0..total {
        for v in 0..total {
            if u != v && exts.iter().all(|e| e.before(u, v)) {
                pairs.push((u, v));
            }
        }
    }
    for (i, &l) in universe.iter().enumerate() {
        match l % 3 {
            0 => pairs.push((i, point)),
            1 => pairs.push((point, i)),
            _ => {}
        }
    }
    let poset = Poset::from_index_pairs(labels, &pairs)?;

    let realizer = Realizer::new(exts).expect("auxiliary order always present");
    let keep: Vec<usize> = (0..total).collect();
    let sub = poset.restrict(&keep);
    assert_eq!(
        verify_realizer(&sub, &realizer),
        Ok(RealizerVerdict::Realizes),
        "the intersected orders realize the poset minus the point"
    );

    let instance_embeddings = label_of_original
        .iter()
        .map(|labels| labels.iter().map(|l| index_of_label[l]).collect())
        .collect();

    Ok(PointRemovalScenario {
        poset,
        removed_point: point,
        realizer,
        instance_embeddings,
    })
}
