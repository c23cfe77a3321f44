//! Explicit perfect `H`-packing plans for complete multipartite hosts and
//! for hosts made of two disjoint cliques.
//!
//! Hosts are described by their part sizes only. A plan is a multiset of
//! abstract copies of `H`: each [`Placement`] names an optimal colouring
//! (by its size vector) and the host part receiving each colour class.
//! [`Packer::realize`] turns a plan into vertex-level embeddings that the
//! generic verifier in [`crate::oracle`] can check.

mod bottle;
mod shift;

pub use bottle::{ApproachOutcome, NearBottleOptions, NearBottleStats, TrimStats};
pub use shift::{CliqueSplitSolution, ShiftSolution};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{InvariantError, PackError};
use crate::graph::Graph;
use crate::invariants::{
    bottle_from_profile, optimal_colorings, profile_from_colorings, Bottle, ChromaticProfile, ColoringOptions,
    ColoringSizeVector, OptimalColorings,
};
use crate::oracle::EmbeddedPacking;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HostKind {
    Multipartite,
    TwoCliques,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostSpec {
    pub kind: HostKind,
    pub sizes: Vec<usize>,
}

impl HostSpec {
    pub fn multipartite(sizes: Vec<usize>) -> Self {
        HostSpec {
            kind: HostKind::Multipartite,
            sizes,
        }
    }

    pub fn two_cliques(first: usize, second: usize) -> Self {
        HostSpec {
            kind: HostKind::TwoCliques,
            sizes: vec![first, second],
        }
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Vertices of part `p` are numbered consecutively after those of parts
    /// `0..p`.
    pub fn materialize(&self) -> Graph {
        match self.kind {
            HostKind::Multipartite => Graph::complete_multipartite(&self.sizes).expect("part sizes are valid"),
            HostKind::TwoCliques => Graph::disjoint_cliques(&self.sizes),
        }
    }

    fn offsets(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }
}

/// Which phase produced a placement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Copies making `|F|` a multiple of `|B*|`.
    Divisibility,
    /// Rotated blocks of `ell` copies making `D'` a multiple of `q (ell-1)! |H|`.
    BalanceSteps,
    /// `k` copies per size vector and class permutation.
    Base,
    /// Base copies with two adjacent classes swapped between parts.
    Shift,
    /// Copies equalising the two sides of a bipartite host.
    Equalize,
    /// Odd/odd and even/even copies fixing divisibility by `|H|`.
    Parity,
    /// Mirrored pairs tiling a balanced bipartite remainder.
    Mirrored,
    /// Copies split across two cliques.
    Split,
    /// Copies lying inside a single clique.
    Whole,
    /// Bottles evening out the large parts.
    BottleAlign,
    /// Rounds of `ell - 1` bottles shrinking the small part.
    BottleRounds,
    /// Bottles tiling an exact bottle-shaped remainder.
    ResidualBottles,
}

/// `count` copies of `H`. Multipartite hosts: colour class `c` of the
/// optimal colouring with size vector `sizes` goes to part `assignment[c]`.
/// Two-clique hosts: `sizes` lists the component orders of `H` and
/// component `j` goes to clique `assignment[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub sizes: Vec<usize>,
    pub assignment: Vec<usize>,
    pub count: usize,
    pub stage: Stage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanMeta {
    #[serde(rename = "H_hash")]
    pub h_hash: String,
    pub lemma_trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingPlan {
    pub host: HostSpec,
    pub placements: Vec<Placement>,
    pub meta: PlanMeta,
}

impl PackingPlan {
    pub fn copy_count(&self) -> usize {
        self.placements.iter().map(|p| p.count).sum()
    }

    pub fn copies_in(&self, stage: Stage) -> usize {
        self.placements.iter().filter(|p| p.stage == stage).map(|p| p.count).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plans serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanViolation {
    #[error("plan was built for H with hash {found}, not {expected}")]
    HashMismatch { expected: String, found: String },
    #[error("host has {found} parts, expected {expected}")]
    PartCount { expected: usize, found: usize },
    #[error("placement {placement}: {sizes:?} is not an optimal colouring of H")]
    UnknownSizeVector { placement: usize, sizes: Vec<usize> },
    #[error("placement {placement}: {sizes:?} are not the component orders of H")]
    BadComponents { placement: usize, sizes: Vec<usize> },
    #[error("placement {placement}: assignment has length {found}, expected {expected}")]
    AssignmentLength {
        placement: usize,
        expected: usize,
        found: usize,
    },
    #[error("placement {placement}: part {part} does not exist")]
    PartOutOfRange { placement: usize, part: usize },
    #[error("placement {placement}: two colour classes share a part")]
    NotInjective { placement: usize },
    #[error("placement {placement} has count 0")]
    ZeroCount { placement: usize },
    #[error("part {part} has size {expected} but the plan covers {covered}")]
    Coverage { part: usize, expected: usize, covered: usize },
}

/// `H` together with everything the planners need about it.
#[derive(Clone, Debug)]
pub struct Packer {
    h: Graph,
    profile: ChromaticProfile,
    colorings: OptimalColorings,
    components: Vec<Vec<usize>>,
    h_hash: String,
}

impl Packer {
    pub fn new(h: &Graph) -> Result<Self, InvariantError> {
        Self::with_options(h, ColoringOptions::default())
    }

    pub fn with_options(h: &Graph, opts: ColoringOptions) -> Result<Self, InvariantError> {
        let colorings = optimal_colorings(h, opts)?;
        Ok(Packer {
            h: h.clone(),
            profile: profile_from_colorings(h, &colorings),
            colorings,
            components: h.components(),
            h_hash: h.digest(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.h
    }

    pub fn profile(&self) -> &ChromaticProfile {
        &self.profile
    }

    pub fn bottle(&self) -> Result<Bottle, PackError> {
        Ok(bottle_from_profile(&self.profile)?)
    }

    pub(crate) fn order(&self) -> usize {
        self.profile.order
    }

    pub(crate) fn ell(&self) -> usize {
        self.profile.ell
    }

    pub(crate) fn vectors(&self) -> &[ColoringSizeVector] {
        &self.profile.size_vectors
    }

    pub(crate) fn plan(&self, host: HostSpec, placements: Vec<Placement>, trace: Vec<String>) -> PackingPlan {
        PackingPlan {
            host,
            placements,
            meta: PlanMeta {
                h_hash: self.h_hash.clone(),
                lemma_trace: trace,
            },
        }
    }

    /// Checks size vectors, assignments and exact per-part coverage.
    pub fn verify(&self, plan: &PackingPlan) -> Result<(), PlanViolation> {
        if plan.meta.h_hash != self.h_hash {
            return Err(PlanViolation::HashMismatch {
                expected: self.h_hash.clone(),
                found: plan.meta.h_hash.clone(),
            });
        }
        let parts = plan.host.sizes.len();
        let expected_parts = match plan.host.kind {
            HostKind::Multipartite => self.ell(),
            HostKind::TwoCliques => 2,
        };
        if parts != expected_parts {
            return Err(PlanViolation::PartCount {
                expected: expected_parts,
                found: parts,
            });
        }
        let mut covered = vec![0usize; parts];
        for (i, p) in plan.placements.iter().enumerate() {
            if p.count == 0 {
                return Err(PlanViolation::ZeroCount { placement: i });
            }
            match plan.host.kind {
                HostKind::Multipartite => {
                    let known = self.colorings.witnesses.contains_key(&ColoringSizeVector(p.sizes.clone()));
                    if !known {
                        return Err(PlanViolation::UnknownSizeVector {
                            placement: i,
                            sizes: p.sizes.clone(),
                        });
                    }
                }
                HostKind::TwoCliques => {
                    if p.sizes != self.profile.component_orders {
                        return Err(PlanViolation::BadComponents {
                            placement: i,
                            sizes: p.sizes.clone(),
                        });
                    }
                }
            }
            if p.assignment.len() != p.sizes.len() {
                return Err(PlanViolation::AssignmentLength {
                    placement: i,
                    expected: p.sizes.len(),
                    found: p.assignment.len(),
                });
            }
            if let Some(&part) = p.assignment.iter().find(|&&a| a >= parts) {
                return Err(PlanViolation::PartOutOfRange { placement: i, part });
            }
            if plan.host.kind == HostKind::Multipartite {
                let mut seen = vec![false; parts];
                for &a in &p.assignment {
                    if std::mem::replace(&mut seen[a], true) {
                        return Err(PlanViolation::NotInjective { placement: i });
                    }
                }
            }
            for (c, &a) in p.assignment.iter().enumerate() {
                covered[a] += p.count * p.sizes[c];
            }
        }
        for (part, (&expected, &got)) in plan.host.sizes.iter().zip(&covered).enumerate() {
            if expected != got {
                return Err(PlanViolation::Coverage {
                    part,
                    expected,
                    covered: got,
                });
            }
        }
        Ok(())
    }

    /// Vertex-level copies on [`HostSpec::materialize`]; vertices of each
    /// part are handed out in increasing order. Requires a verified plan.
    pub fn realize(&self, plan: &PackingPlan) -> EmbeddedPacking {
        let mut next = plan.host.offsets();
        let n = self.order();
        let mut copies = Vec::with_capacity(plan.copy_count());
        for p in &plan.placements {
            // Pattern vertex -> index into `p.sizes` / `p.assignment`.
            let slot: Vec<usize> = match plan.host.kind {
                HostKind::Multipartite => self
                    .colorings
                    .witness(&ColoringSizeVector(p.sizes.clone()))
                    .expect("verified plan uses known size vectors")
                    .to_vec(),
                HostKind::TwoCliques => {
                    let mut slot = vec![0; n];
                    for (j, comp) in self.components.iter().enumerate() {
                        for &v in comp {
                            slot[v] = j;
                        }
                    }
                    slot
                }
            };
            for _ in 0..p.count {
                let copy = (0..n)
                    .map(|v| {
                        let part = p.assignment[slot[v]];
                        let x = next[part];
                        next[part] += 1;
                        x
                    })
                    .collect();
                copies.push(copy);
            }
        }
        EmbeddedPacking { copies }
    }
}

/// Builds a [`Packer`] for `h` and checks the plan against it.
pub fn verify_plan(h: &Graph, plan: &PackingPlan) -> Result<(), PlanViolation> {
    let packer = Packer::new(h).map_err(|e| PlanViolation::HashMismatch {
        expected: e.to_string(),
        found: plan.meta.h_hash.clone(),
    })?;
    packer.verify(plan)
}

/// Multiset of placements under construction; identical placements merge.
#[derive(Clone, Debug, Default)]
pub(crate) struct Pool {
    items: Vec<Placement>,
    index: BTreeMap<(Stage, Vec<usize>, Vec<usize>), usize>,
}

impl Pool {
    pub(crate) fn add(&mut self, sizes: &[usize], assignment: Vec<usize>, count: usize, stage: Stage) {
        if count == 0 {
            return;
        }
        let key = (stage, sizes.to_vec(), assignment);
        match self.index.get(&key) {
            Some(&i) => self.items[i].count += count,
            None => {
                self.index.insert(key.clone(), self.items.len());
                self.items.push(Placement {
                    sizes: key.1,
                    assignment: key.2,
                    count,
                    stage,
                });
            }
        }
    }

    /// Removes one copy from the first placement satisfying `pred`.
    pub(crate) fn take(&mut self, pred: impl Fn(&Placement) -> bool) -> Option<Placement> {
        let p = self.items.iter_mut().find(|p| p.count > 0 && pred(p))?;
        p.count -= 1;
        Some(Placement { count: 1, ..p.clone() })
    }

    pub(crate) fn extend(&mut self, placements: impl IntoIterator<Item = Placement>) {
        for p in placements {
            self.add(&p.sizes, p.assignment, p.count, p.stage);
        }
    }

    pub(crate) fn coverage(&self, parts: usize) -> Vec<i64> {
        coverage(&self.items, parts)
    }

    pub(crate) fn into_placements(self) -> Vec<Placement> {
        self.items.into_iter().filter(|p| p.count > 0).collect()
    }
}

pub(crate) fn coverage(placements: &[Placement], parts: usize) -> Vec<i64> {
    let mut cov = vec![0i64; parts];
    for p in placements {
        for (c, &a) in p.assignment.iter().enumerate() {
            cov[a] += (p.count * p.sizes[c]) as i64;
        }
    }
    cov
}

pub(crate) fn fmt_vec<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests;
