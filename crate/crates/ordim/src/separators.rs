//! Separation in finite linear orders: separator sets (minimal and maximal),
//! separator-element detection, and the round trip between separation and
//! choice on rational intervals of [0, 1].
//!
//! All arithmetic here is exact rational; no floating point.

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::poset::LinearExtension;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("element index {index} out of range for order of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("lower and upper sets are not separated (lower element {lower} is not strictly below upper element {upper})")]
    NotSeparated { lower: usize, upper: usize },
    #[error("instance {index}: {source}")]
    NotSeparatedAt {
        index: usize,
        source: Box<SeparatorError>,
    },
    #[error("point lies outside the instance interval")]
    PointOutsideInterval,
    #[error("interval endpoints must satisfy 0 <= lo <= hi <= 1")]
    InvalidInterval,
}

/// A finite linear order (standalone, element indices `0..n`) with a lower
/// set and an upper set, every lower element strictly below every upper one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorInstance {
    pub order: LinearExtension,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl SeparatorInstance {
    pub fn new(order: LinearExtension, lower: Vec<usize>, upper: Vec<usize>) -> SeparatorInstance {
        let mut lower = lower;
        let mut upper = upper;
        lower.sort_unstable();
        lower.dedup();
        upper.sort_unstable();
        upper.dedup();
        SeparatorInstance {
            order,
            lower,
            upper,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn validate(&self) -> Result<(), SeparatorError> {
        let n = self.len();
        for &x in self.lower.iter().chain(self.upper.iter()) {
            if x >= n {
                return Err(SeparatorError::IndexOutOfRange { index: x, size: n });
            }
        }
        for &i in &self.lower {
            for &f in &self.upper {
                if self.order.rank(i) >= self.order.rank(f) {
                    return Err(SeparatorError::NotSeparated { lower: i, upper: f });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatorMode {
    /// Down-closure of the lower set.
    Minimal,
    /// Complement of the up-closure of the upper set.
    Maximal,
}

/// Separator set for one instance: downward closed in the order, contains
/// the lower set, disjoint from the upper set. Returned sorted by element
/// index.
pub fn ls(inst: &SeparatorInstance, mode: SeparatorMode) -> Result<Vec<usize>, SeparatorError> {
    inst.validate()?;
    let n = inst.len();
    let out: Vec<usize> = match mode {
        SeparatorMode::Minimal => match inst.lower.iter().map(|&i| inst.order.rank(i)).max() {
            None => Vec::new(),
            Some(top) => (0..n).filter(|&x| inst.order.rank(x) <= top).collect(),
        },
        SeparatorMode::Maximal => match inst.upper.iter().map(|&f| inst.order.rank(f)).min() {
            None => (0..n).collect(),
            Some(bottom) => (0..n).filter(|&x| inst.order.rank(x) < bottom).collect(),
        },
    };
    Ok(out)
}

/// Elementwise `ls` with a shared mode.
pub fn ls_star(
    insts: &[SeparatorInstance],
    mode: SeparatorMode,
) -> Result<Vec<Vec<usize>>, SeparatorError> {
    insts
        .iter()
        .enumerate()
        .map(|(j, inst)| {
            ls(inst, mode).map_err(|e| SeparatorError::NotSeparatedAt {
                index: j,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Indices of the instances that admit a separator element `b` with every
/// lower element at or below `b` and every upper element at or above it
/// (ranks compared reflexively).
pub fn separator_elements(insts: &[SeparatorInstance]) -> Vec<usize> {
    let mut out = Vec::new();
    for (j, inst) in insts.iter().enumerate() {
        if inst.is_empty() {
            continue;
        }
        let lo = inst
            .lower
            .iter()
            .map(|&i| inst.order.rank(i))
            .max()
            .unwrap_or(0);
        let hi = inst
            .upper
            .iter()
            .map(|&f| inst.order.rank(f))
            .min()
            .unwrap_or(inst.len() - 1);
        if lo <= hi {
            out.push(j);
        }
    }
    out
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

/// Order embedding of (element, half) pairs into the open unit interval:
/// the t-th pair in lexicographic (rank, half) order maps to (t+1)/(2n+1).
fn embed(inst: &SeparatorInstance, x: usize, half: u8) -> BigRational {
    let n = inst.len() as i64;
    let t = 2 * inst.order.rank(x) as i64 + half as i64;
    BigRational::new(big(t + 1), big(2 * n + 1))
}

/// The rational interval encoded by an instance: from the largest upper
/// image of a lower element to the smallest lower image of an upper element,
/// with defaults 0 and 1.
fn instance_interval(inst: &SeparatorInstance) -> (BigRational, BigRational) {
    let lo = inst
        .lower
        .iter()
        .map(|&a| embed(inst, a, 1))
        .max()
        .unwrap_or_else(BigRational::zero);
    let hi = inst
        .upper
        .iter()
        .map(|&b| embed(inst, b, 0))
        .min()
        .unwrap_or_else(BigRational::one);
    (lo, hi)
}

/// Solves the choice problem embedded in a separation instance: returns the
/// midpoint of the instance interval.
pub fn ls_to_point(inst: &SeparatorInstance) -> Result<BigRational, SeparatorError> {
    inst.validate()?;
    let (lo, hi) = instance_interval(inst);
    assert!(lo <= hi, "valid instances always yield a nonempty interval");
    Ok((lo + hi) / ratio(2, 1))
}

/// Recovers a separator set from a point of the instance interval:
/// an element joins the set exactly when the lower image of its pair is
/// strictly below the point.
pub fn point_to_separator(
    inst: &SeparatorInstance,
    x: &BigRational,
) -> Result<Vec<usize>, SeparatorError> {
    inst.validate()?;
    let (lo, hi) = instance_interval(inst);
    if *x < lo || *x > hi {
        return Err(SeparatorError::PointOutsideInterval);
    }
    let out: Vec<usize> = (0..inst.len())
        .filter(|&e| embed(inst, e, 0) < *x)
        .collect();
    debug_assert!(is_valid_separator(inst, &out));
    Ok(out)
}

/// True iff `set` is downward closed in the instance order, contains the
/// lower set and misses the upper set.
pub fn is_valid_separator(inst: &SeparatorInstance, set: &[usize]) -> bool {
    let closed = inst
        .order
        .order()
        .iter()
        .copied()
        .skip_while(|e| set.contains(e))
        .all(|e| !set.contains(&e));
    closed
        && inst.lower.iter().all(|e| set.contains(e))
        && !inst.upper.iter().any(|e| set.contains(e))
}

/// A nonempty closed rational interval inside [0, 1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<RationalInterval, SeparatorError> {
        if lo < BigRational::zero() || hi > BigRational::one() || lo > hi {
            return Err(SeparatorError::InvalidInterval);
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn from_i64(lo: (i64, i64), hi: (i64, i64)) -> Result<RationalInterval, SeparatorError> {
        RationalInterval::new(ratio(lo.0, lo.1), ratio(hi.0, hi.1))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// Solves interval choice through the separation machinery: builds rational
/// sequences approaching the endpoints from outside, separates them as a
/// finite instance, and turns the cut into a point of the interval.
///
/// The lower sequence climbs toward `lo` from below and the upper sequence
/// descends toward `hi` from above; at the boundaries (lo = 0 or hi = 1) the
/// corresponding side is left empty. The emitted cut is the midpoint of the
/// gap between the two sides of the separator, clamped into the interval.
pub fn xc1_via_ls(interval: &RationalInterval, depth: usize) -> BigRational {
    let mut points: Vec<BigRational> = Vec::new();
    let mut lower_idx: Vec<usize> = Vec::new();
    let mut upper_idx: Vec<usize> = Vec::new();
    if !interval.lo.is_zero() {
        for t in 0..depth {
            // lo * (t+1)/(t+2), strictly increasing toward lo
            points.push(&interval.lo * ratio(t as i64 + 1, t as i64 + 2));
            lower_idx.push(points.len() - 1);
        }
    }
    if !interval.hi.is_one() {
        for t in 0..depth {
            // hi + (1-hi)/(t+2), strictly decreasing toward hi
            let gap = (BigRational::one() - &interval.hi) / ratio(t as i64 + 2, 1);
            points.push(&interval.hi + gap);
            upper_idx.push(points.len() - 1);
        }
    }
    // Order the points as rationals; lower points all precede upper points.
    let mut by_value: Vec<usize> = (0..points.len()).collect();
    by_value.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let mut rank_of = vec![0usize; points.len()];
    for (rank, &e) in by_value.iter().enumerate() {
        rank_of[e] = rank;
    }
    let order = LinearExtension::from_order({
        let mut order = vec![0usize; points.len()];
        for e in 0..points.len() {
            order[rank_of[e]] = e;
        }
        order
    })
    .expect("permutation");
    let inst = SeparatorInstance::new(order, lower_idx, upper_idx);
    let side = ls(&inst, SeparatorMode::Minimal).expect("instance is separated by construction");

    let below = side
        .iter()
        .map(|&e| points[e].clone())
        .max()
        .unwrap_or_else(BigRational::zero);
    let above = (0..points.len())
        .filter(|e| !side.contains(e))
        .map(|e| points[e].clone())
        .min()
        .unwrap_or_else(BigRational::one);
    let cut = (below + above) / ratio(2, 1);
    let clamped = if cut < interval.lo {
        interval.lo.clone()
    } else if cut > interval.hi {
        interval.hi.clone()
    } else {
        cut
    };
    debug_assert!(interval.contains(&clamped));
    clamped
}
