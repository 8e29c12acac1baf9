use alloc::vec::Vec;

use crate::bounds::{ratio, CodeProfile};
use crate::graph::{RepairTree, VertexId};
use crate::Rational;

use super::Transcript;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeViolation {
    pub from: VertexId,
    pub to: VertexId,
    pub sent: usize,
    pub required: Rational,
}

/// Per-edge comparison of a transcript against the subset bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Tree edges carrying less than their subtree must send.
    pub violations: Vec<EdgeViolation>,
    /// Vertices whose edge carries exactly the required amount.
    pub tight: Vec<VertexId>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every child to parent edge of `tree`: vertex `v` must send at
/// least `min(l, |D*(v)| l / (d - k + 1))` symbols.
pub fn verify_transcript<F: Copy>(
    tree: &RepairTree,
    transcript: &Transcript<F>,
    profile: &CodeProfile,
) -> VerifyReport {
    let mut violations = Vec::new();
    let mut tight = Vec::new();
    let beta = profile.beta();
    for &v in tree.non_root() {
        let parent = tree.parent(v).expect("non-root vertex");
        let share = ratio(tree.d_star(v)) * &beta;
        let required = if share < profile.l {
            share
        } else {
            profile.l.clone()
        };
        let sent = transcript.count(v, parent);
        let s = ratio(sent);
        if s < required {
            violations.push(EdgeViolation {
                from: v,
                to: parent,
                sent,
                required,
            });
        } else if s == required {
            tight.push(v);
        }
    }
    VerifyReport { violations, tight }
}
