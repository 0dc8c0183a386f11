//! The structured-text documents: posets, realizers, separation instances
//! and diagonalization configs, all versioned JSON. Relations are written as
//! cover pairs and closed again on load.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use ordim::{CandidateProgram, ChainSet, LinearExtension, Poset, Realizer, SeparatorInstance};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub format_version: u32,
    pub kind: String,
    pub elements: Vec<String>,
    pub relation: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chains: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_point: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub levels: BTreeMap<String, usize>,
}

impl PosetDocument {
    pub fn from_poset(poset: &Poset) -> PosetDocument {
        let mut relation = Vec::new();
        for (x, y) in poset.relation_pairs() {
            let covered = (0..poset.len()).any(|z| poset.lt(x, z) && poset.lt(z, y));
            if !covered {
                relation.push([poset.label(x).to_string(), poset.label(y).to_string()]);
            }
        }
        PosetDocument {
            format_version: FORMAT_VERSION,
            kind: "poset".into(),
            elements: poset.labels().to_vec(),
            relation,
            chains: BTreeMap::new(),
            marked_point: None,
            levels: BTreeMap::new(),
        }
    }

    pub fn with_chains(mut self, poset: &Poset, chains: &ChainSet) -> PosetDocument {
        for (i, chain) in chains.chains().iter().enumerate() {
            self.chains.insert(
                format!("C{i}"),
                chain.iter().map(|&x| poset.label(x).to_string()).collect(),
            );
        }
        self
    }

    pub fn to_poset(&self) -> Result<Poset> {
        self.check_kind("poset")?;
        let pairs: Vec<(String, String)> = self
            .relation
            .iter()
            .map(|[a, b]| (a.clone(), b.clone()))
            .collect();
        let poset = Poset::build(&self.elements, &pairs).context("invalid poset document")?;
        for name in self.chains.keys() {
            let indices = self.chain_indices(&poset, name)?;
            if !poset.is_chain(&indices)? {
                bail!("named subset `{name}` is not a chain");
            }
        }
        if let Some(point) = &self.marked_point {
            poset
                .index_of(point)
                .ok_or_else(|| anyhow!("marked point `{point}` is not an element"))?;
        }
        Ok(poset)
    }

    pub fn chain_indices(&self, poset: &Poset, name: &str) -> Result<Vec<usize>> {
        let chain = self
            .chains
            .get(name)
            .ok_or_else(|| anyhow!("no chain named `{name}` in the poset document"))?;
        chain
            .iter()
            .map(|l| {
                poset
                    .index_of(l)
                    .ok_or_else(|| anyhow!("chain element `{l}` unknown"))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizerDocument {
    pub format_version: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset_path: Option<String>,
    pub extensions: Vec<Vec<String>>,
}

impl RealizerDocument {
    pub fn from_realizer(domain: &Poset, realizer: &Realizer, poset_path: Option<String>) -> Self {
        RealizerDocument {
            format_version: FORMAT_VERSION,
            kind: "realizer".into(),
            poset: poset_path
                .is_none()
                .then(|| PosetDocument::from_poset(domain)),
            poset_path,
            extensions: realizer
                .extensions()
                .iter()
                .map(|e| {
                    e.order()
                        .iter()
                        .map(|&x| domain.label(x).to_string())
                        .collect()
                })
                .collect(),
        }
    }

    /// The extensions as a realizer over `domain` (element names resolved
    /// against it).
    pub fn to_realizer(&self, domain: &Poset) -> Result<Realizer> {
        self.check_kind("realizer")?;
        let mut exts = Vec::with_capacity(self.extensions.len());
        for (i, names) in self.extensions.iter().enumerate() {
            if names.len() != domain.len() {
                bail!(
                    "extension {i} lists {} elements, the poset has {}",
                    names.len(),
                    domain.len()
                );
            }
            let order: Vec<usize> = names
                .iter()
                .map(|l| {
                    domain
                        .index_of(l)
                        .ok_or_else(|| anyhow!("extension {i}: unknown element `{l}`"))
                })
                .collect::<Result<_>>()?;
            exts.push(
                LinearExtension::from_order(order).map_err(|e| anyhow!("extension {i}: {e}"))?,
            );
        }
        Realizer::new(exts).map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub format_version: u32,
    pub kind: String,
    /// Elements bottom to top.
    pub elements: Vec<String>,
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

impl InstanceDocument {
    pub fn from_instance(inst: &SeparatorInstance, names: &[String]) -> InstanceDocument {
        InstanceDocument {
            format_version: FORMAT_VERSION,
            kind: "separator_instance".into(),
            elements: inst
                .order
                .order()
                .iter()
                .map(|&x| names[x].clone())
                .collect(),
            lower: inst.lower.iter().map(|&x| names[x].clone()).collect(),
            upper: inst.upper.iter().map(|&x| names[x].clone()).collect(),
        }
    }

    /// Instance over indices `0..n` in listed (bottom-to-top) order.
    pub fn to_instance(&self) -> Result<(SeparatorInstance, Vec<String>)> {
        self.check_kind("separator_instance")?;
        let n = self.elements.len();
        let index = |l: &String| {
            self.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| anyhow!("unknown instance element `{l}`"))
        };
        let order = LinearExtension::from_order((0..n).collect()).expect("identity");
        let lower: Vec<usize> = self.lower.iter().map(index).collect::<Result<_>>()?;
        let upper: Vec<usize> = self.upper.iter().map(index).collect::<Result<_>>()?;
        let inst = SeparatorInstance::new(order, lower, upper);
        inst.validate().map_err(|e| anyhow!("{e}"))?;
        Ok((inst, self.elements.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalConfigDocument {
    pub format_version: u32,
    pub kind: String,
    pub orders: usize,
    pub stages: usize,
    pub programs: Vec<ProgramSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProgramSpec {
    pub id: usize,
    /// Which order the program is assigned to.
    pub order: usize,
    /// Step budget at which queries start converging.
    #[serde(default)]
    pub delay: usize,
    pub behavior: ProgramBehavior,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProgramBehavior {
    ConstantZero,
    ConstantOne,
    /// Answers per element; unlisted elements get the default answer, or
    /// never converge if the default is absent.
    Table {
        entries: BTreeMap<String, u8>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        default: Option<u8>,
    },
}

impl DiagonalConfigDocument {
    pub fn to_run_inputs(&self) -> Result<(usize, usize, Vec<usize>, Vec<CandidateProgram>)> {
        self.check_kind("diagonal_config")?;
        let mut assignment = Vec::with_capacity(self.programs.len());
        let mut programs = Vec::with_capacity(self.programs.len());
        for spec in &self.programs {
            assignment.push(spec.order);
            let delay = spec.delay;
            let program = match &spec.behavior {
                ProgramBehavior::ConstantZero => CandidateProgram::constant(spec.id, 0, delay),
                ProgramBehavior::ConstantOne => CandidateProgram::constant(spec.id, 1, delay),
                ProgramBehavior::Table { entries, default } => {
                    let entries: BTreeMap<usize, u8> = entries
                        .iter()
                        .map(|(k, &v)| {
                            k.parse::<usize>()
                                .map(|k| (k, v))
                                .map_err(|_| anyhow!("table key `{k}` is not an element id"))
                        })
                        .collect::<Result<_>>()?;
                    let default = *default;
                    CandidateProgram::new(spec.id, move |x, _, s| {
                        if s < delay {
                            return None;
                        }
                        entries.get(&x).copied().or(default)
                    })
                }
            };
            programs.push(program);
        }
        Ok((self.orders, self.stages, assignment, programs))
    }
}

trait KindCheck {
    fn kind(&self) -> &str;
    fn check_kind(&self, expected: &str) -> Result<()> {
        if self.kind() != expected {
            bail!(
                "expected a {expected} document, found kind `{}`",
                self.kind()
            );
        }
        Ok(())
    }
}

macro_rules! impl_kind {
    ($($ty:ty),*) => {$(
        impl KindCheck for $ty {
            fn kind(&self) -> &str {
                &self.kind
            }
        }
    )*};
}
impl_kind!(
    PosetDocument,
    RealizerDocument,
    InstanceDocument,
    DiagonalConfigDocument
);

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
