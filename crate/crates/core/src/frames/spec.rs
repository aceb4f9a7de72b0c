use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Metric;
use crate::scalar::ScalarKind;

/// Stable group vocabulary used in JSON specs and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupTag {
    Translation,
    Orthogonal,
    SpecialOrthogonal,
    Lorentz,
    SpecialLorentz,
    Unitary,
    SpecialUnitary,
    Euclidean,
    SpecialEuclidean,
    GeneralLinear,
    SpecialLinear,
    Permutation,
    PermOrthogonal,
    PermLorentz,
}

impl GroupTag {
    pub const ALL: [GroupTag; 14] = [
        GroupTag::Translation,
        GroupTag::Orthogonal,
        GroupTag::SpecialOrthogonal,
        GroupTag::Lorentz,
        GroupTag::SpecialLorentz,
        GroupTag::Unitary,
        GroupTag::SpecialUnitary,
        GroupTag::Euclidean,
        GroupTag::SpecialEuclidean,
        GroupTag::GeneralLinear,
        GroupTag::SpecialLinear,
        GroupTag::Permutation,
        GroupTag::PermOrthogonal,
        GroupTag::PermLorentz,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupTag::Translation => "translation",
            GroupTag::Orthogonal => "orthogonal",
            GroupTag::SpecialOrthogonal => "special_orthogonal",
            GroupTag::Lorentz => "lorentz",
            GroupTag::SpecialLorentz => "special_lorentz",
            GroupTag::Unitary => "unitary",
            GroupTag::SpecialUnitary => "special_unitary",
            GroupTag::Euclidean => "euclidean",
            GroupTag::SpecialEuclidean => "special_euclidean",
            GroupTag::GeneralLinear => "general_linear",
            GroupTag::SpecialLinear => "special_linear",
            GroupTag::Permutation => "permutation",
            GroupTag::PermOrthogonal => "perm_orthogonal",
            GroupTag::PermLorentz => "perm_lorentz",
        }
    }

    fn is_special(self) -> bool {
        matches!(
            self,
            GroupTag::SpecialOrthogonal
                | GroupTag::SpecialLorentz
                | GroupTag::SpecialUnitary
                | GroupTag::SpecialEuclidean
                | GroupTag::SpecialLinear
        )
    }

    fn default_dim(self) -> usize {
        match self {
            GroupTag::Lorentz | GroupTag::SpecialLorentz | GroupTag::PermLorentz => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown group `{s}`")))
    }
}

/// JSON form: `{"group": "lorentz", "d": 4, "special": false}`.
///
/// `special` upgrades a tag to its determinant-one subgroup. `eta` overrides
/// the signature of the orthogonal and Lorentz families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub group: GroupTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default)]
    pub special: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<i8>>,
}

impl GroupSpec {
    pub fn new(group: GroupTag) -> Self {
        Self {
            group,
            d: None,
            special: false,
            eta: None,
        }
    }

    pub fn with_dim(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn resolve(&self) -> Result<Group> {
        let d = self.d.unwrap_or_else(|| self.group.default_dim());
        if d == 0 {
            return Err(Error::InvalidSpec("d must be >= 1".into()));
        }
        let special = self.special || self.group.is_special();
        let eta = |default: Metric| -> Result<Metric> {
            match &self.eta {
                None => Ok(default),
                Some(v) => {
                    let m = Metric::new(v.clone())?;
                    if m.dim() != d {
                        return Err(Error::InvalidSpec(format!(
                            "eta has length {}, d = {d}",
                            m.dim()
                        )));
                    }
                    Ok(m)
                }
            }
        };
        let no_eta = || -> Result<()> {
            if self.eta.is_some() {
                return Err(Error::InvalidSpec(format!("`eta` is not accepted by {}", self.group)));
            }
            Ok(())
        };
        let no_special = || -> Result<()> {
            if self.special {
                return Err(Error::InvalidSpec(format!("{} has no special variant", self.group)));
            }
            Ok(())
        };
        use GroupTag::*;
        let g = match self.group {
            Translation => {
                no_eta()?;
                no_special()?;
                Group::Translation { d }
            }
            Orthogonal | SpecialOrthogonal => Group::LinAlg {
                eta: eta(Metric::euclidean(d))?,
                special,
            },
            Lorentz | SpecialLorentz => Group::LinAlg {
                eta: eta(Metric::minkowski(d))?,
                special,
            },
            Unitary | SpecialUnitary => {
                no_eta()?;
                Group::Unitary { d, special }
            }
            Euclidean | SpecialEuclidean => {
                no_eta()?;
                Group::Euclidean { d, special }
            }
            GeneralLinear | SpecialLinear => {
                no_eta()?;
                Group::GeneralLinear { d, special }
            }
            Permutation => {
                no_eta()?;
                no_special()?;
                Group::Permutation
            }
            PermOrthogonal => Group::Product {
                eta: eta(Metric::euclidean(d))?,
                special,
            },
            PermLorentz => Group::Product {
                eta: eta(Metric::minkowski(d))?,
                special,
            },
        };
        Ok(g)
    }
}

/// A resolved group with all parameters explicit.
#[derive(Debug, Clone, PartialEq)]
pub enum Group {
    /// `ℝ^d` acting by adding the same vector to every column.
    Translation { d: usize },
    /// `G_η(d)`: matrices with `Oᵀ η O = η`.
    LinAlg { eta: Metric, special: bool },
    /// `U(d)` / `SU(d)` on complex clouds.
    Unitary { d: usize, special: bool },
    /// `E(d)` / `SE(d)`: rotation then translation.
    Euclidean { d: usize, special: bool },
    /// `GL(d)` / `SL(d)`.
    GeneralLinear { d: usize, special: bool },
    /// `S_n` acting on symmetric `n x n` matrices by conjugation.
    Permutation,
    /// `S_n x G_η(d)` acting on point clouds by `P ↦ O P Sᵀ`.
    Product { eta: Metric, special: bool },
}

impl Group {
    /// Point dimension, or `None` for the permutation group.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Group::Translation { d }
            | Group::Unitary { d, .. }
            | Group::Euclidean { d, .. }
            | Group::GeneralLinear { d, .. } => Some(*d),
            Group::LinAlg { eta, .. } | Group::Product { eta, .. } => Some(eta.dim()),
            Group::Permutation => None,
        }
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        match self {
            Group::Unitary { .. } => ScalarKind::Complex,
            _ => ScalarKind::Real,
        }
    }
}
