use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::galois::{FieldElement, Matrix};
use crate::graph::{RepairTree, VertexId};
use crate::{Error, Result};

use super::Transcript;

/// The code-specific side of a repair run. The erased data splits into
/// `group_count` independent groups of `group_width` symbols; in each group
/// every helper contributes `symbols_per_helper` symbols `y`, and the group
/// equals `sum_h y_h R_h` over all helpers with `R_h = repair_rows(h, g)`.
pub trait CodeAdapter<F: FieldElement> {
    /// The vertex being repaired (the root of the tree).
    fn target(&self) -> VertexId;
    /// Helpers in ascending order.
    fn helpers(&self) -> &[VertexId];
    fn group_count(&self) -> usize;
    fn group_width(&self) -> usize;
    fn symbols_per_helper(&self) -> usize;
    fn helper_symbols(&self, helper: VertexId, group: usize) -> Result<Vec<F>>;
    /// `symbols_per_helper x group_width` block of the repair matrix.
    fn repair_rows(&self, helper: VertexId, group: usize) -> Result<Matrix<F>>;
    /// Turns the recovered groups into the output (e.g. a full column).
    fn assemble(&self, groups: Vec<Vec<F>>) -> Result<Vec<F>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Protocol {
    /// Accumulate and forward: relays pass raw symbols on unchanged.
    Af,
    /// Intermediate processing: a vertex whose subtree holds enough helper
    /// symbols forwards one linear combination instead.
    Ip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairOutcome<F> {
    pub output: Vec<F>,
    pub transcript: Transcript<F>,
}

enum Package<F> {
    Raw(Vec<(VertexId, Vec<F>)>),
    Combined(Vec<F>),
}

impl<F: Copy> Package<F> {
    fn payload(&self) -> Vec<F> {
        match self {
            Package::Raw(entries) => entries.iter().flat_map(|(_, s)| s.iter().copied()).collect(),
            Package::Combined(v) => v.clone(),
        }
    }
}

pub fn run_af<F: FieldElement, A: CodeAdapter<F> + ?Sized>(
    tree: &RepairTree,
    adapter: &A,
) -> Result<RepairOutcome<F>> {
    run(tree, adapter, Protocol::Af)
}

pub fn run_ip<F: FieldElement, A: CodeAdapter<F> + ?Sized>(
    tree: &RepairTree,
    adapter: &A,
) -> Result<RepairOutcome<F>> {
    run(tree, adapter, Protocol::Ip)
}

/// Executes the protocol as message passing from the leaves to the root,
/// group by group.
pub fn run<F: FieldElement, A: CodeAdapter<F> + ?Sized>(
    tree: &RepairTree,
    adapter: &A,
    protocol: Protocol,
) -> Result<RepairOutcome<F>> {
    if tree.root() != adapter.target() {
        return Err(Error::InvalidParameters(format!(
            "tree is rooted at {} but the repair target is {}",
            tree.root(),
            adapter.target()
        )));
    }
    let helpers = adapter.helpers();
    let m = tree.len();
    let mut is_helper = vec![false; m];
    for &h in helpers {
        let pos = tree.position(h).ok_or(Error::MissingHelper(h))?;
        if pos == 0 {
            return Err(Error::InvalidParameters(
                "the repair target cannot be a helper".into(),
            ));
        }
        is_helper[pos] = true;
    }
    let order = tree.vertices();
    let mut counts = vec![0usize; m];
    for i in (1..m).rev() {
        if is_helper[i] {
            counts[i] += 1;
        }
        let p = tree
            .position(tree.parent(order[i]).expect("non-root"))
            .expect("parent in tree");
        counts[p] += counts[i];
    }

    let width = adapter.group_width();
    let per_helper = adapter.symbols_per_helper();
    let mut transcript = Transcript::new();
    let mut groups = Vec::with_capacity(adapter.group_count());
    for group in 0..adapter.group_count() {
        let mut inbox: Vec<Vec<Package<F>>> = (0..m).map(|_| Vec::new()).collect();
        for i in (0..m).rev() {
            let v = order[i];
            let mut raw = Vec::new();
            if is_helper[i] {
                let y = adapter.helper_symbols(v, group)?;
                if y.len() != per_helper {
                    return Err(Error::DimensionMismatch(format!(
                        "helper {v} produced {} symbols, expected {per_helper}",
                        y.len()
                    )));
                }
                raw.push((v, y));
            }
            let mut combined_in = Vec::new();
            for pkg in inbox[i].drain(..) {
                match pkg {
                    Package::Raw(entries) => raw.extend(entries),
                    Package::Combined(c) => combined_in.push(c),
                }
            }
            let combine = i == 0
                || !combined_in.is_empty()
                || (protocol == Protocol::Ip && counts[i] * per_helper >= width);
            let pkg = if combine {
                let mut acc = vec![F::ZERO; width];
                for c in combined_in {
                    for (a, x) in acc.iter_mut().zip(c) {
                        *a += x;
                    }
                }
                for (h, y) in &raw {
                    let contribution = adapter.repair_rows(*h, group)?.vec_mul(y)?;
                    for (a, x) in acc.iter_mut().zip(contribution) {
                        *a += x;
                    }
                }
                Package::Combined(acc)
            } else {
                Package::Raw(raw)
            };
            if i == 0 {
                match pkg {
                    Package::Combined(v) => groups.push(v),
                    Package::Raw(_) => unreachable!("root always combines"),
                }
            } else {
                let parent = tree.parent(v).expect("non-root");
                let payload = pkg.payload();
                if !payload.is_empty() {
                    transcript.record(v, parent, &payload);
                }
                let p = tree.position(parent).expect("parent in tree");
                inbox[p].push(pkg);
            }
        }
    }
    Ok(RepairOutcome {
        output: adapter.assemble(groups)?,
        transcript,
    })
}
