//! Graded occupation-number basis for a truncated Fock space.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::fock::space::ModeSpace;
use crate::tol;

/// Occupation vector: photons per mode, indexed by flat mode index.
pub type Occupation = Vec<u32>;

struct Inner {
    space: ModeSpace,
    n_max: usize,
    states: Vec<Occupation>,
    index: HashMap<Occupation, usize>,
}

/// Enumerated basis of all occupation vectors with total photon number at
/// most `n_max`, in canonical order:
///
/// * grades ascend: vacuum first, then all one-photon states, and so on;
/// * within a grade, photons fill the lowest mode indices first, so for two
///   modes the two-photon grade reads `(2,0), (1,1), (0,2)`.
///
/// The ordering is a pure function of the space and `n_max`, so two bases
/// built from equal spaces index states identically. Cloning is cheap; the
/// state table is shared.
#[derive(Clone)]
pub struct FockBasis {
    inner: Arc<Inner>,
}

impl FockBasis {
    /// Enumerates the basis, refusing to build more than
    /// [`tol::STATE_CAP`] states.
    pub fn enumerate(space: ModeSpace, n_max: usize) -> Result<Self> {
        Self::enumerate_with_cap(space, n_max, tol::STATE_CAP)
    }

    /// Enumerates the basis with an explicit state cap.
    pub fn enumerate_with_cap(space: ModeSpace, n_max: usize, cap: usize) -> Result<Self> {
        let dim = Self::dimension_for(&space, n_max);
        if dim > cap {
            return Err(CoreError::CapacityExceeded { dim, cap });
        }
        let modes = space.mode_count();
        let mut states = Vec::with_capacity(dim);
        let mut scratch = vec![0u32; modes];
        for k in 0..=n_max {
            push_grade(&mut states, &mut scratch, 0, k as u32);
        }
        debug_assert_eq!(states.len(), dim);
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(Self {
            inner: Arc::new(Inner {
                space,
                n_max,
                states,
                index,
            }),
        })
    }

    /// Basis dimension without enumerating: sum over grades of the number of
    /// ways to place `k` indistinguishable photons into `M` modes.
    pub fn dimension_for(space: &ModeSpace, n_max: usize) -> usize {
        let m = space.mode_count();
        let mut total = 0usize;
        for k in 0..=n_max {
            total = total.saturating_add(multiset_count(m, k));
        }
        total
    }

    pub fn space(&self) -> &ModeSpace {
        &self.inner.space
    }

    pub fn n_max(&self) -> usize {
        self.inner.n_max
    }

    pub fn dim(&self) -> usize {
        self.inner.states.len()
    }

    /// All occupation vectors in canonical order.
    pub fn states(&self) -> &[Occupation] {
        &self.inner.states
    }

    /// Occupation vector of basis state `i`.
    pub fn occupation(&self, i: usize) -> &[u32] {
        &self.inner.states[i]
    }

    /// Canonical index of an occupation vector, if it is in the basis.
    pub fn position(&self, occ: &[u32]) -> Option<usize> {
        self.inner.index.get(occ).copied()
    }

    /// Total photon number of basis state `i`.
    pub fn total_photons(&self, i: usize) -> u32 {
        self.inner.states[i].iter().sum()
    }

    /// True when both bases index states identically. Pointer equality is
    /// the fast path; otherwise equal spaces and equal `n_max` suffice
    /// because enumeration is deterministic.
    pub fn same_basis(&self, other: &FockBasis) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n_max == other.inner.n_max && self.inner.space == other.inner.space)
    }
}

impl std::fmt::Debug for FockBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FockBasis")
            .field("modes", &self.space().mode_count())
            .field("n_max", &self.n_max())
            .field("dim", &self.dim())
            .finish()
    }
}

/// Appends every occupation of `remaining` photons over modes `from..`,
/// filling lower mode indices first.
fn push_grade(out: &mut Vec<Occupation>, scratch: &mut [u32], from: usize, remaining: u32) {
    if remaining == 0 {
        out.push(scratch.to_vec());
        return;
    }
    if from == scratch.len() {
        return;
    }
    if from == scratch.len() - 1 {
        scratch[from] = remaining;
        out.push(scratch.to_vec());
        scratch[from] = 0;
        return;
    }
    for c in (0..=remaining).rev() {
        scratch[from] = c;
        push_grade(out, scratch, from + 1, remaining - c);
    }
    scratch[from] = 0;
}

/// Number of multisets of size `k` from `m` elements, C(m + k - 1, k),
/// saturating on overflow (the cap check turns saturation into an error).
fn multiset_count(m: usize, k: usize) -> usize {
    if k == 0 {
        return 1;
    }
    if m == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.saturating_mul(m as u128 + i);
        acc /= i + 1;
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}
