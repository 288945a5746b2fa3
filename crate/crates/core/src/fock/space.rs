//! Mode-space description.
//!
//! A mode is one bosonic degree of freedom. The space is a product of three
//! labels: a spatial mode (an arm of the apparatus), an optional polarization
//! label, and an auxiliary bin index standing in for any discretized internal
//! degree of freedom (arrival-time bin, frequency bin, ...). Distinguishable
//! photons occupy different modes; "jitter" is probability mass spread over
//! bins.

use crate::error::{CoreError, Result};

/// Set of bosonic modes, flattened to indices in a fixed order.
///
/// The flat index runs lexicographically over (spatial, polarization, bin)
/// with bin fastest, matching declaration order of the label lists. Spaces
/// compare equal when their labels and bin counts match, and equal spaces
/// produce identical mode numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSpace {
    spatial: Vec<String>,
    polarization: Vec<String>,
    aux_bins: usize,
}

impl ModeSpace {
    /// Builds a mode space. `polarization` may be empty for sources with no
    /// polarization degree of freedom; `aux_bins` must be at least 1.
    pub fn new(
        spatial: Vec<String>,
        polarization: Vec<String>,
        aux_bins: usize,
    ) -> Result<Self> {
        if spatial.is_empty() {
            return Err(CoreError::InvalidModeSpace(
                "at least one spatial mode is required".into(),
            ));
        }
        if aux_bins == 0 {
            return Err(CoreError::InvalidModeSpace(
                "aux_bins must be at least 1".into(),
            ));
        }
        for (list, kind) in [(&spatial, "spatial"), (&polarization, "polarization")] {
            for (i, a) in list.iter().enumerate() {
                if a.is_empty() {
                    return Err(CoreError::InvalidModeSpace(format!(
                        "empty {kind} label at position {i}"
                    )));
                }
                if list[..i].contains(a) {
                    return Err(CoreError::InvalidModeSpace(format!(
                        "duplicate {kind} label {a:?}"
                    )));
                }
            }
        }
        Ok(Self {
            spatial,
            polarization,
            aux_bins,
        })
    }

    /// Space with a single spatial mode and no polarization, `d` bins.
    pub fn bins_only(d: usize) -> Result<Self> {
        Self::new(vec!["s".into()], vec![], d)
    }

    pub fn spatial_labels(&self) -> &[String] {
        &self.spatial
    }

    pub fn polarization_labels(&self) -> &[String] {
        &self.polarization
    }

    pub fn aux_bins(&self) -> usize {
        self.aux_bins
    }

    /// Number of polarization slots per (spatial, bin) pair; 1 when the
    /// space carries no polarization label.
    pub fn pol_dim(&self) -> usize {
        self.polarization.len().max(1)
    }

    /// Total number of modes.
    pub fn mode_count(&self) -> usize {
        self.spatial.len() * self.pol_dim() * self.aux_bins
    }

    /// Flat index of a mode. `pol` must be `None` exactly when the space has
    /// no polarization labels.
    pub fn mode_index(&self, spatial: &str, pol: Option<&str>, bin: usize) -> Result<usize> {
        let si = self
            .spatial
            .iter()
            .position(|s| s == spatial)
            .ok_or_else(|| CoreError::UnknownMode(format!("spatial mode {spatial:?}")))?;
        let pi = match (pol, self.polarization.is_empty()) {
            (None, true) => 0,
            (Some(p), false) => self
                .polarization
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| CoreError::UnknownMode(format!("polarization {p:?}")))?,
            (None, false) => {
                return Err(CoreError::UnknownMode(
                    "polarization label required for this space".into(),
                ))
            }
            (Some(p), true) => {
                return Err(CoreError::UnknownMode(format!(
                    "space has no polarization labels (got {p:?})"
                )))
            }
        };
        if bin >= self.aux_bins {
            return Err(CoreError::UnknownMode(format!(
                "bin {bin} out of range (space has {} bins)",
                self.aux_bins
            )));
        }
        Ok((si * self.pol_dim() + pi) * self.aux_bins + bin)
    }

    /// Inverse of [`mode_index`](Self::mode_index): (spatial, polarization,
    /// bin) indices of a flat mode index.
    pub fn mode_coords(&self, index: usize) -> Result<(usize, usize, usize)> {
        if index >= self.mode_count() {
            return Err(CoreError::UnknownMode(format!(
                "mode index {index} out of range (space has {} modes)",
                self.mode_count()
            )));
        }
        let bin = index % self.aux_bins;
        let rest = index / self.aux_bins;
        let pol = rest % self.pol_dim();
        let spatial = rest / self.pol_dim();
        Ok((spatial, pol, bin))
    }

    /// Human-readable label for a mode index, e.g. `"a:H:0"` or `"s:2"`.
    pub fn mode_label(&self, index: usize) -> Result<String> {
        let (s, p, b) = self.mode_coords(index)?;
        Ok(if self.polarization.is_empty() {
            format!("{}:{}", self.spatial[s], b)
        } else {
            format!("{}:{}:{}", self.spatial[s], self.polarization[p], b)
        })
    }

    /// Flat indices of every mode belonging to the given spatial label.
    pub fn modes_of_spatial(&self, spatial: &str) -> Result<std::ops::Range<usize>> {
        let si = self
            .spatial
            .iter()
            .position(|s| s == spatial)
            .ok_or_else(|| CoreError::UnknownMode(format!("spatial mode {spatial:?}")))?;
        let per_side = self.pol_dim() * self.aux_bins;
        Ok(si * per_side..(si + 1) * per_side)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_lexicographic_bin_fastest() {
        let sp = ModeSpace::new(
            vec!["a".into(), "b".into()],
            vec!["H".into(), "V".into()],
            3,
        )
        .unwrap();
        assert_eq!(sp.mode_count(), 12);
        assert_eq!(sp.mode_index("a", Some("H"), 0).unwrap(), 0);
        assert_eq!(sp.mode_index("a", Some("H"), 2).unwrap(), 2);
        assert_eq!(sp.mode_index("a", Some("V"), 0).unwrap(), 3);
        assert_eq!(sp.mode_index("b", Some("H"), 0).unwrap(), 6);
        assert_eq!(sp.mode_index("b", Some("V"), 2).unwrap(), 11);
        for i in 0..sp.mode_count() {
            let (s, p, b) = sp.mode_coords(i).unwrap();
            let back = sp
                .mode_index(&sp.spatial[s], Some(&sp.polarization[p]), b)
                .unwrap();
            assert_eq!(back, i);
        }
    }

    #[test]
    fn no_polarization_space() {
        let sp = ModeSpace::bins_only(4).unwrap();
        assert_eq!(sp.mode_count(), 4);
        assert_eq!(sp.pol_dim(), 1);
        assert_eq!(sp.mode_index("s", None, 3).unwrap(), 3);
        assert!(sp.mode_index("s", Some("H"), 0).is_err());
        assert_eq!(sp.mode_label(2).unwrap(), "s:2");
    }

    #[test]
    fn rejects_bad_spaces() {
        assert!(ModeSpace::new(vec![], vec![], 1).is_err());
        assert!(ModeSpace::new(vec!["a".into()], vec![], 0).is_err());
        assert!(ModeSpace::new(vec!["a".into(), "a".into()], vec![], 1).is_err());
        assert!(ModeSpace::new(vec!["a".into()], vec!["H".into(), "H".into()], 1).is_err());
    }

    #[test]
    fn spatial_slices_cover_all_modes() {
        let sp = ModeSpace::new(vec!["c".into(), "d".into()], vec![], 2).unwrap();
        assert_eq!(sp.modes_of_spatial("c").unwrap(), 0..2);
        assert_eq!(sp.modes_of_spatial("d").unwrap(), 2..4);
        assert!(sp.modes_of_spatial("x").is_err());
    }
}
