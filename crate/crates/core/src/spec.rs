//! Descriptors for the Coxeter systems the crate can enumerate.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::MAX_RANK;

pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Which realization of the group to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoxeterKind {
    /// The symmetric group `S_n`, realized by permutations in one-line form.
    Symmetric(usize),
    /// The dihedral group `I_2(m)` of order `2m`, generators `s` and `t`.
    Dihedral(usize),
    /// A group given by its Coxeter matrix. An entry of `0` means `m = ∞`.
    Matrix { rank: usize, m: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSpec {
    pub kind: CoxeterKind,
    pub element_cap: usize,
}

/// On-disk form of a Coxeter matrix:
/// `{"rank": 3, "m": [[1,3,2],[3,1,3],[2,3,1]], "element_cap": 200000}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rank: usize,
    pub m: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element_cap: Option<usize>,
}

impl CoxeterSpec {
    pub fn symmetric(n: usize) -> Self {
        CoxeterSpec {
            kind: CoxeterKind::Symmetric(n),
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }

    pub fn dihedral(m: usize) -> Self {
        CoxeterSpec {
            kind: CoxeterKind::Dihedral(m),
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }

    pub fn matrix(m: Vec<Vec<u32>>) -> Self {
        CoxeterSpec {
            kind: CoxeterKind::Matrix { rank: m.len(), m },
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }

    #[must_use]
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.element_cap = cap;
        self
    }

    pub fn from_matrix_file(file: MatrixFile) -> Self {
        CoxeterSpec {
            kind: CoxeterKind::Matrix {
                rank: file.rank,
                m: file.m,
            },
            element_cap: file.element_cap.unwrap_or(DEFAULT_ELEMENT_CAP),
        }
    }

    pub fn load_matrix(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpec(format!("cannot read {}: {e}", path.display())))?;
        let file: MatrixFile = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(CoxeterSpec::from_matrix_file(file))
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            CoxeterKind::Symmetric(n) => n.saturating_sub(1),
            CoxeterKind::Dihedral(_) => 2,
            CoxeterKind::Matrix { rank, .. } => *rank,
        }
    }

    /// The order `m(s, t)` of `st`, with `None` standing for `∞`.
    pub fn order(&self, s: usize, t: usize) -> Option<u32> {
        if s == t {
            return Some(1);
        }
        match &self.kind {
            CoxeterKind::Symmetric(_) => Some(if s.abs_diff(t) == 1 { 3 } else { 2 }),
            CoxeterKind::Dihedral(m) => Some(*m as u32),
            CoxeterKind::Matrix { m, .. } => match m[s][t] {
                0 => None,
                v => Some(v),
            },
        }
    }

    /// The full Coxeter matrix, `0` marking infinite entries.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let rank = self.rank();
        (0..rank)
            .map(|s| (0..rank).map(|t| self.order(s, t).unwrap_or(0)).collect())
            .collect()
    }

    pub fn is_dihedral(&self) -> bool {
        matches!(self.kind, CoxeterKind::Dihedral(_))
    }

    /// Short name used in reports: `S4`, `I6`, or `M[1,3,2;3,1,3;2,3,1]`.
    pub fn name(&self) -> String {
        match &self.kind {
            CoxeterKind::Symmetric(n) => format!("S{n}"),
            CoxeterKind::Dihedral(m) => format!("I{m}"),
            CoxeterKind::Matrix { m, .. } => {
                let rows: Vec<String> = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                format!("M[{}]", rows.join(";"))
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.element_cap == 0 {
            return Err(Error::InvalidSpec("element cap must be positive".into()));
        }
        match &self.kind {
            CoxeterKind::Symmetric(n) => {
                if *n == 0 {
                    return Err(Error::InvalidSpec("S_n needs n >= 1".into()));
                }
                if *n > MAX_RANK + 1 || *n > u8::MAX as usize {
                    return Err(Error::InvalidSpec(format!("S_{n} is too large")));
                }
            }
            CoxeterKind::Dihedral(m) => {
                if *m < 2 {
                    return Err(Error::InvalidSpec("I_2(m) needs m >= 2".into()));
                }
            }
            CoxeterKind::Matrix { rank, m } => {
                if *rank == 0 {
                    return Err(Error::InvalidSpec("rank must be positive".into()));
                }
                if *rank > MAX_RANK {
                    return Err(Error::InvalidSpec(format!(
                        "rank {rank} exceeds {MAX_RANK}"
                    )));
                }
                if m.len() != *rank || m.iter().any(|row| row.len() != *rank) {
                    return Err(Error::InvalidSpec(format!("matrix is not {rank}x{rank}")));
                }
                for (i, row) in m.iter().enumerate() {
                    if row[i] != 1 {
                        return Err(Error::InvalidSpec(format!("m[{i}][{i}] must be 1")));
                    }
                    for (j, &mij) in row.iter().enumerate() {
                        if mij != m[j][i] {
                            return Err(Error::InvalidSpec(format!(
                                "matrix is not symmetric at ({i},{j})"
                            )));
                        }
                        if i != j && mij == 1 {
                            return Err(Error::InvalidSpec(format!(
                                "m[{i}][{j}] must be >= 2 or 0 for infinity"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(CoxeterSpec::symmetric(4).rank(), 3);
        assert_eq!(CoxeterSpec::symmetric(1).rank(), 0);
        assert_eq!(CoxeterSpec::dihedral(6).rank(), 2);
    }

    #[test]
    fn symmetric_matrix_is_type_a() {
        assert_eq!(
            CoxeterSpec::symmetric(4).coxeter_matrix(),
            vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]
        );
    }

    #[test]
    fn rejects_malformed_matrices() {
        let asym = CoxeterSpec::matrix(vec![vec![1, 3], vec![4, 1]]);
        assert!(matches!(asym.validate(), Err(Error::InvalidSpec(_))));
        let diag = CoxeterSpec::matrix(vec![vec![2, 3], vec![3, 1]]);
        assert!(diag.validate().is_err());
        let one = CoxeterSpec::matrix(vec![vec![1, 1], vec![1, 1]]);
        assert!(one.validate().is_err());
        let ragged = CoxeterSpec {
            kind: CoxeterKind::Matrix {
                rank: 2,
                m: vec![vec![1, 3], vec![3]],
            },
            element_cap: 10,
        };
        assert!(ragged.validate().is_err());
        assert!(CoxeterSpec::dihedral(1).validate().is_err());
        assert!(CoxeterSpec::symmetric(0).validate().is_err());
    }

    #[test]
    fn infinite_entry_is_accepted() {
        let spec = CoxeterSpec::matrix(vec![vec![1, 0], vec![0, 1]]);
        spec.validate().unwrap();
        assert_eq!(spec.order(0, 1), None);
    }

    #[test]
    fn matrix_file_round_trip() {
        let text = r#"{"rank": 3, "m": [[1,3,2],[3,1,3],[2,3,1]], "element_cap": 500}"#;
        let file: MatrixFile = serde_json::from_str(text).unwrap();
        let spec = CoxeterSpec::from_matrix_file(file);
        assert_eq!(spec.element_cap, 500);
        assert_eq!(spec.rank(), 3);
        assert_eq!(spec.name(), "M[1,3,2;3,1,3;2,3,1]");
    }
}
