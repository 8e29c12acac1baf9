use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::codes::coop::CoopParams;
use crate::codes::dm::DmParams;
use crate::codes::pm::PmCode;
use crate::codeword::Codeword;
use crate::galois::{FieldElement, Matrix};
use crate::graph::VertexId;
use crate::{Error, Result};

use super::CodeAdapter;

fn helper_index(helpers: &[VertexId], h: VertexId) -> Result<usize> {
    helpers.binary_search(&h).map_err(|_| Error::MissingHelper(h))
}

fn sorted_distinct(helpers: &[VertexId]) -> Result<Vec<VertexId>> {
    let mut v = helpers.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameters("helpers must be distinct".into()));
    }
    Ok(v)
}

/// Product-matrix repair: one group of width `l`, one symbol per helper.
pub struct PmAdapter<'a, F> {
    code: &'a PmCode<F>,
    word: &'a Codeword<F>,
    failed: VertexId,
    helpers: Vec<VertexId>,
    u: Matrix<F>,
}

impl<'a, F: FieldElement> PmAdapter<'a, F> {
    pub fn new(
        code: &'a PmCode<F>,
        word: &'a Codeword<F>,
        failed: VertexId,
        helpers: &[VertexId],
    ) -> Result<Self> {
        let helpers = sorted_distinct(helpers)?;
        let u = code.repair_matrix(&helpers, failed)?;
        Ok(Self {
            code,
            word,
            failed,
            helpers,
            u,
        })
    }

    pub fn repair_matrix(&self) -> &Matrix<F> {
        &self.u
    }
}

impl<F: FieldElement> CodeAdapter<F> for PmAdapter<'_, F> {
    fn target(&self) -> VertexId {
        self.failed
    }

    fn helpers(&self) -> &[VertexId] {
        &self.helpers
    }

    fn group_count(&self) -> usize {
        1
    }

    fn group_width(&self) -> usize {
        self.code.params().l()
    }

    fn symbols_per_helper(&self) -> usize {
        1
    }

    fn helper_symbols(&self, helper: VertexId, _group: usize) -> Result<Vec<F>> {
        Ok(vec![self.code.helper_symbol(self.word, helper, self.failed)?])
    }

    fn repair_rows(&self, helper: VertexId, _group: usize) -> Result<Matrix<F>> {
        let i = helper_index(&self.helpers, helper)?;
        Matrix::from_vec(1, self.u.cols(), self.u.row(i).to_vec())
    }

    fn assemble(&self, mut groups: Vec<Vec<F>>) -> Result<Vec<F>> {
        groups
            .pop()
            .ok_or_else(|| Error::Incomplete("no group recovered".into()))
    }
}

/// Diagonal-matrix repair: one group of width `r` per canonical plane, one
/// trace symbol per helper and group. All `n - 1` other nodes help.
pub struct DmAdapter<'a, F> {
    params: &'a DmParams<F>,
    word: &'a Codeword<F>,
    failed: VertexId,
    helpers: Vec<VertexId>,
    planes: Vec<usize>,
    u: Vec<Matrix<F>>,
}

impl<'a, F: FieldElement> DmAdapter<'a, F> {
    pub fn new(params: &'a DmParams<F>, word: &'a Codeword<F>, failed: VertexId) -> Result<Self> {
        if failed >= params.n() {
            return Err(Error::IndexOutOfRange {
                index: failed,
                limit: params.n(),
            });
        }
        let helpers: Vec<VertexId> = (0..params.n()).filter(|&j| j != failed).collect();
        let planes = params.canonical_planes(failed);
        let u = planes
            .iter()
            .map(|&a| params.repair_matrix(failed, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params,
            word,
            failed,
            helpers,
            planes,
            u,
        })
    }
}

impl<F: FieldElement> CodeAdapter<F> for DmAdapter<'_, F> {
    fn target(&self) -> VertexId {
        self.failed
    }

    fn helpers(&self) -> &[VertexId] {
        &self.helpers
    }

    fn group_count(&self) -> usize {
        self.planes.len()
    }

    fn group_width(&self) -> usize {
        self.params.r()
    }

    fn symbols_per_helper(&self) -> usize {
        1
    }

    fn helper_symbols(&self, helper: VertexId, group: usize) -> Result<Vec<F>> {
        Ok(vec![self.params.helper_trace(
            self.word,
            helper,
            self.failed,
            self.planes[group],
        )?])
    }

    fn repair_rows(&self, helper: VertexId, group: usize) -> Result<Matrix<F>> {
        let i = helper_index(&self.helpers, helper)?;
        let u = &self.u[group];
        Matrix::from_vec(1, u.cols(), u.row(i).to_vec())
    }

    fn assemble(&self, groups: Vec<Vec<F>>) -> Result<Vec<F>> {
        if groups.len() != self.planes.len() {
            return Err(Error::Incomplete(format!(
                "{} of {} groups recovered",
                groups.len(),
                self.planes.len()
            )));
        }
        let mut column = vec![F::ZERO; self.params.l()];
        for (&a, values) in self.planes.iter().zip(groups) {
            for (u, v) in values.into_iter().enumerate() {
                column[self.params.sibling(a, self.failed, u)] = v;
            }
        }
        Ok(column)
    }
}

/// Step one of cooperative repair towards one failed node: a group per
/// plane `a`, width 3, one symbol per helper. The output lists the three
/// recovered values plane by plane.
pub struct CoopStepAdapter<'a, F> {
    params: &'a CoopParams<F>,
    word: &'a Codeword<F>,
    target: usize,
    helpers: Vec<VertexId>,
    u: Vec<Matrix<F>>,
}

impl<'a, F: FieldElement> CoopStepAdapter<'a, F> {
    pub fn new(
        params: &'a CoopParams<F>,
        word: &'a Codeword<F>,
        target: usize,
        helpers: &[VertexId],
    ) -> Result<Self> {
        let helpers = sorted_distinct(helpers)?;
        let u = (0..params.planes())
            .map(|a| params.step1_matrix(target, a, &helpers))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params,
            word,
            target,
            helpers,
            u,
        })
    }
}

impl<F: FieldElement> CodeAdapter<F> for CoopStepAdapter<'_, F> {
    fn target(&self) -> VertexId {
        self.target
    }

    fn helpers(&self) -> &[VertexId] {
        &self.helpers
    }

    fn group_count(&self) -> usize {
        self.params.planes()
    }

    fn group_width(&self) -> usize {
        3
    }

    fn symbols_per_helper(&self) -> usize {
        1
    }

    fn helper_symbols(&self, helper: VertexId, group: usize) -> Result<Vec<F>> {
        Ok(vec![self.params.step1_message(
            self.word,
            helper,
            self.target,
            group,
        )?])
    }

    fn repair_rows(&self, helper: VertexId, group: usize) -> Result<Matrix<F>> {
        let i = helper_index(&self.helpers, helper)?;
        Matrix::from_vec(1, 3, self.u[group].row(i).to_vec())
    }

    fn assemble(&self, groups: Vec<Vec<F>>) -> Result<Vec<F>> {
        Ok(groups.concat())
    }
}
