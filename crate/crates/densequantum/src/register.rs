use crate::error::DenseError;
pub use iesb_core::{Label, Role};
use iesb_core::Species;
use serde::Serialize;

/// Labels of the qubits, position k being bit k of the amplitude index.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Register {
    labels: Vec<Label>,
}

impl Register {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, q: usize) -> Label {
        self.labels[q]
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn find(&self, l: &Label) -> Result<usize, DenseError> {
        self.position(l).ok_or_else(|| DenseError::MissingQubit(format!("{l:?}")))
    }

    pub(crate) fn push(&mut self, l: Label) -> Result<usize, DenseError> {
        if self.position(&l).is_some() {
            return Err(DenseError::DuplicateLabel(format!("{l:?}")));
        }
        self.labels.push(l);
        Ok(self.labels.len() - 1)
    }

    pub(crate) fn swap_labels(&mut self, i: usize, j: usize) {
        self.labels.swap(i, j);
    }

    /// Next free serial for an auxiliary role.
    pub fn next_serial(&self, role: Role) -> usize {
        self.labels.iter().filter(|l| l.role == role).count()
    }

    pub fn with_roles(&self, pred: impl Fn(Role) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&q| pred(self.labels[q].role)).collect()
    }

    /// Qubits of role `role` at the given sites, both species, sorted by
    /// (site, species).
    pub fn site_qubits(&self, role: Role, sites: &[usize]) -> Vec<usize> {
        let mut v: Vec<(usize, Species, usize)> = (0..self.len())
            .filter_map(|q| {
                let l = self.labels[q];
                (l.role == role && sites.contains(&l.site)).then(|| (l.site, l.species.unwrap(), q))
            })
            .collect();
        v.sort();
        v.into_iter().map(|t| t.2).collect()
    }

    pub fn apparatus(&self) -> Vec<usize> {
        self.with_roles(Role::is_apparatus_side)
    }

    pub fn environment(&self) -> Vec<usize> {
        self.with_roles(Role::is_environment_side)
    }

    /// Number of distinct S sites.
    pub fn system_sites(&self) -> usize {
        self.labels.iter().filter(|l| l.role == Role::S).map(|l| l.site + 1).max().unwrap_or(0)
    }

    pub fn has_reference(&self) -> bool {
        self.labels.iter().any(|l| l.role == Role::SRef)
    }
}
