//! Finite stage-by-stage adversary against candidate separator programs:
//! grows one linear order per slot, watching a marker element in each, and
//! reacts to the first convergent answer of each assigned program so that no
//! candidate computes a separator set for its order.

use std::collections::HashMap;

use thiserror::Error;

use crate::poset::LinearExtension;
use crate::separators::SeparatorInstance;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagonalError {
    #[error("mismatched inputs: {0}")]
    MismatchedInputs(String),
}

/// A total candidate evaluator: `(element, order index, step budget)` to an
/// answer, `None` while not yet converged at that budget. Convergence is
/// expected to be monotone in the budget; the construction enforces this
/// through a cache rather than trusting it.
pub struct CandidateProgram {
    pub id: usize,
    pub eval: Box<dyn Fn(usize, usize, usize) -> Option<u8>>,
}

impl CandidateProgram {
    pub fn new(id: usize, eval: impl Fn(usize, usize, usize) -> Option<u8> + 'static) -> Self {
        CandidateProgram {
            id,
            eval: Box::new(eval),
        }
    }

    pub fn constant(id: usize, value: u8, delay: usize) -> Self {
        CandidateProgram::new(id, move |_, _, s| (s >= delay).then_some(value))
    }
}

/// Monotone-convergence wrapper: once a query converges, later budgets see
/// the same value.
struct Runner<'a> {
    programs: &'a [CandidateProgram],
    cache: HashMap<(usize, usize, usize), (usize, u8)>,
}

impl<'a> Runner<'a> {
    fn new(programs: &'a [CandidateProgram]) -> Self {
        Runner {
            programs,
            cache: HashMap::new(),
        }
    }

    fn query(&mut self, prog: usize, element: usize, order: usize, budget: usize) -> Option<u8> {
        let key = (prog, element, order);
        if let Some(&(first, value)) = self.cache.get(&key) {
            if budget >= first {
                return Some(value);
            }
        }
        let raw = (self.programs[prog].eval)(element, order, budget);
        match (self.cache.get(&key).copied(), raw) {
            (Some((_, value)), Some(_)) => Some(value),
            (Some(_), None) | (None, None) => None,
            (None, Some(value)) => {
                self.cache.insert(key, (budget, value));
                Some(value)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    /// No eligible program converged: the order grows at both ends.
    Grow,
    /// A program answered 0 on the marker: two elements go right above it,
    /// the lower one joining the lower set.
    ActOnZero,
    /// A program answered 1 on the marker: two elements go right below it,
    /// the upper one joining the upper set.
    ActOnOne,
}

impl ActionKind {
    pub fn log_name(self) -> &'static str {
        match self {
            ActionKind::Grow => "grow",
            ActionKind::ActOnZero => "act0",
            ActionKind::ActOnOne => "act1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageAction {
    pub stage: usize,
    pub order_index: usize,
    pub kind: ActionKind,
    /// Id of the program acted on, if any.
    pub program: Option<usize>,
    /// The stage's first fresh element (z).
    pub low_element: usize,
    /// The stage's second fresh element (w).
    pub high_element: usize,
}

/// State of every order after a stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageSnapshot {
    pub orders: Vec<Vec<usize>>,
    pub lower: Vec<Vec<usize>>,
    pub upper: Vec<Vec<usize>>,
    pub markers: Vec<usize>,
    /// Per program (in input order): whether its requirement has been acted
    /// on for good.
    pub settled: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTranscript {
    pub k: usize,
    pub stages: usize,
    pub assignment: Vec<usize>,
    pub program_ids: Vec<usize>,
    pub actions: Vec<StageAction>,
    pub snapshots: Vec<StageSnapshot>,
}

impl DiagonalTranscript {
    /// One line per (stage, order) action:
    /// `stage=<s> j=<j> action=<grow|act0|act1> e=<id|-> z=<name> w=<name>`.
    pub fn log_lines(&self) -> String {
        let mut out = String::new();
        for a in &self.actions {
            let e = a
                .program
                .map(|id| id.to_string())
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "stage={} j={} action={} e={} z={} w={}\n",
                a.stage,
                a.order_index,
                a.kind.log_name(),
                e,
                a.low_element,
                a.high_element
            ));
        }
        out
    }
}

fn validate_inputs(
    k: usize,
    assignment: &[usize],
    programs: &[CandidateProgram],
) -> Result<(), DiagonalError> {
    if k == 0 {
        return Err(DiagonalError::MismatchedInputs(
            "need at least one order".into(),
        ));
    }
    if assignment.len() != programs.len() {
        return Err(DiagonalError::MismatchedInputs(format!(
            "{} programs but {} assignments",
            programs.len(),
            assignment.len()
        )));
    }
    for (i, &j) in assignment.iter().enumerate() {
        if j >= k {
            return Err(DiagonalError::MismatchedInputs(format!(
                "program {} assigned to order {j}, but k = {k}",
                programs[i].id
            )));
        }
    }
    let mut ids: Vec<usize> = programs.iter().map(|p| p.id).collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != programs.len() {
        return Err(DiagonalError::MismatchedInputs(
            "duplicate program ids".into(),
        ));
    }
    Ok(())
}

/// Runs the stage loop: every order starts as the single marker element 0;
/// each stage adds exactly two fresh elements to every order. When the
/// least eligible unsettled program (id below the stage number) converges on
/// the marker of its order, the construction moves the marker against the
/// answer; otherwise the order grows a new lower-set element at the bottom
/// and a new upper-set element at the top.
pub fn run_diagonalization(
    k: usize,
    assignment: &[usize],
    programs: &[CandidateProgram],
    stages: usize,
) -> Result<(Vec<SeparatorInstance>, DiagonalTranscript), DiagonalError> {
    validate_inputs(k, assignment, programs)?;
    let mut runner = Runner::new(programs);
    let mut orders: Vec<Vec<usize>> = vec![vec![0]; k];
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut markers: Vec<usize> = vec![0; k];
    let mut settled: Vec<bool> = vec![false; programs.len()];
    let mut actions = Vec::with_capacity(k * stages);
    let mut snapshots = Vec::with_capacity(stages);

    for stage in 0..stages {
        let z = 2 * stage + 1;
        let w = 2 * stage + 2;
        for j in 0..k {
            let mut acted: Option<(usize, u8)> = None;
            let mut eligible: Vec<usize> = (0..programs.len())
                .filter(|&i| assignment[i] == j && programs[i].id < stage && !settled[i])
                .collect();
            eligible.sort_by_key(|&i| programs[i].id);
            for i in eligible {
                if let Some(answer) = runner.query(i, markers[j], j, stage) {
                    acted = Some((i, answer));
                    break;
                }
            }
            let kind = match acted {
                None => {
                    orders[j].insert(0, z);
                    orders[j].push(w);
                    lower[j].push(z);
                    upper[j].push(w);
                    ActionKind::Grow
                }
                Some((i, 0)) => {
                    settled[i] = true;
                    let pos = orders[j]
                        .iter()
                        .position(|&e| e == markers[j])
                        .expect("marker present");
                    orders[j].insert(pos + 1, z);
                    orders[j].insert(pos + 2, w);
                    lower[j].push(z);
                    markers[j] = w;
                    ActionKind::ActOnZero
                }
                Some((i, _)) => {
                    settled[i] = true;
                    let pos = orders[j]
                        .iter()
                        .position(|&e| e == markers[j])
                        .expect("marker present");
                    orders[j].insert(pos, w);
                    orders[j].insert(pos + 1, z);
                    upper[j].push(z);
                    markers[j] = w;
                    ActionKind::ActOnOne
                }
            };
            actions.push(StageAction {
                stage,
                order_index: j,
                kind,
                program: acted.map(|(i, _)| programs[i].id),
                low_element: z,
                high_element: w,
            });
        }
        snapshots.push(StageSnapshot {
            orders: orders.clone(),
            lower: lower.iter().map(|l| sorted(l)).collect(),
            upper: upper.iter().map(|u| sorted(u)).collect(),
            markers: markers.clone(),
            settled: settled.clone(),
        });
    }

    let instances: Vec<SeparatorInstance> = (0..k)
        .map(|j| {
            let ext = LinearExtension::from_order(orders[j].clone()).expect("dense element ids");
            let inst = SeparatorInstance::new(ext, lower[j].clone(), upper[j].clone());
            debug_assert!(inst.validate().is_ok());
            inst
        })
        .collect();
    let transcript = DiagonalTranscript {
        k,
        stages,
        assignment: assignment.to_vec(),
        program_ids: programs.iter().map(|p| p.id).collect(),
        actions,
        snapshots,
    };
    Ok((instances, transcript))
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Why a candidate fails to compute a separator set for its order, or that
/// the stage budget was too small to tell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RequirementVerdict {
    /// Clause 1 pending: some query has not converged within the budget.
    Diverging { element: usize },
    /// Clause 2: answers 0 on a lower-set element.
    ZeroOnLower { element: usize },
    /// Clause 3: answers 1 on an upper-set element.
    OneOnUpper { element: usize },
    /// Clause 4: answers 1 on an element above an element answered 0.
    NotDownwardClosed { inside: usize, outside: usize },
    /// Converges everywhere without violating anything; only possible when
    /// the construction never got to act on the program.
    Unresolved,
}

impl RequirementVerdict {
    /// Clause number in the requirement disjunction, if any.
    pub fn clause(&self) -> Option<u8> {
        match self {
            RequirementVerdict::Diverging { .. } => Some(1),
            RequirementVerdict::ZeroOnLower { .. } => Some(2),
            RequirementVerdict::OneOnUpper { .. } => Some(3),
            RequirementVerdict::NotDownwardClosed { .. } => Some(4),
            RequirementVerdict::Unresolved => None,
        }
    }

    /// True when the program definitely computes no separator set.
    pub fn is_defeating(&self) -> bool {
        matches!(
            self,
            RequirementVerdict::ZeroOnLower { .. }
                | RequirementVerdict::OneOnUpper { .. }
                | RequirementVerdict::NotDownwardClosed { .. }
        )
    }
}

/// Evaluates every program on its assigned final instance at the given
/// budget and reports the first violated clause (definite violations before
/// the pending-divergence clause).
pub fn check_requirements(
    instances: &[SeparatorInstance],
    transcript: &DiagonalTranscript,
    programs: &[CandidateProgram],
    budget: usize,
) -> Result<Vec<RequirementVerdict>, DiagonalError> {
    if instances.len() != transcript.k {
        return Err(DiagonalError::MismatchedInputs(format!(
            "{} instances for k = {}",
            instances.len(),
            transcript.k
        )));
    }
    let ids: Vec<usize> = programs.iter().map(|p| p.id).collect();
    if ids != transcript.program_ids {
        return Err(DiagonalError::MismatchedInputs(
            "program list differs from the run".into(),
        ));
    }
    if transcript.assignment.len() != programs.len() {
        return Err(DiagonalError::MismatchedInputs(
            "assignment length differs".into(),
        ));
    }
    let mut runner = Runner::new(programs);
    let mut verdicts = Vec::with_capacity(programs.len());
    for i in 0..programs.len() {
        let j = transcript.assignment[i];
        let inst = &instances[j];
        let n = inst.len();
        let answers: Vec<Option<u8>> = (0..n).map(|x| runner.query(i, x, j, budget)).collect();

        let zero_on_lower = inst
            .lower
            .iter()
            .find(|&&x| answers[x] == Some(0))
            .map(|&x| RequirementVerdict::ZeroOnLower { element: x });
        if let Some(v) = zero_on_lower {
            verdicts.push(v);
            continue;
        }
        let one_on_upper = inst
            .upper
            .iter()
            .find(|&&x| answers[x] == Some(1))
            .map(|&x| RequirementVerdict::OneOnUpper { element: x });
        if let Some(v) = one_on_upper {
            verdicts.push(v);
            continue;
        }
        let mut violation = None;
        'outer: for hi_pos in 0..n {
            let x = inst.order.order()[hi_pos];
            if answers[x] != Some(1) {
                continue;
            }
            for lo_pos in 0..hi_pos {
                let y = inst.order.order()[lo_pos];
                if answers[y] == Some(0) {
                    violation = Some(RequirementVerdict::NotDownwardClosed {
                        inside: x,
                        outside: y,
                    });
                    break 'outer;
                }
            }
        }
        if let Some(v) = violation {
            verdicts.push(v);
            continue;
        }
        if let Some(x) = (0..n).find(|&x| answers[x].is_none()) {
            verdicts.push(RequirementVerdict::Diverging { element: x });
            continue;
        }
        verdicts.push(RequirementVerdict::Unresolved);
    }
    Ok(verdicts)
}
