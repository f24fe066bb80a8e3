use crate::exactalg::Int;

use super::diagram::{FrontDiagram, FrontError};
use super::ops::Zigzag;

/// The minimal per-link data every invariant formula consumes: tb and rot
/// per component plus the symmetric matrix of pairwise linking numbers
/// (the diagonal is unused at this layer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractLinkData {
    pub tb: Vec<Int>,
    pub rot: Vec<Int>,
    pub lk: Vec<Vec<Int>>,
    pub labels: Vec<Option<String>>,
}

impl AbstractLinkData {
    pub fn empty() -> Self {
        AbstractLinkData {
            tb: Vec::new(),
            rot: Vec::new(),
            lk: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn new(tb: Vec<Int>, rot: Vec<Int>, lk: Vec<Vec<Int>>) -> Self {
        let t = tb.len();
        assert_eq!(rot.len(), t, "rot length mismatch");
        assert_eq!(lk.len(), t, "lk row count mismatch");
        for row in &lk {
            assert_eq!(row.len(), t, "lk column count mismatch");
        }
        for i in 0..t {
            for j in (i + 1)..t {
                assert_eq!(lk[i][j], lk[j][i], "lk matrix not symmetric");
            }
        }
        AbstractLinkData {
            tb,
            rot,
            lk,
            labels: vec![None; t],
        }
    }

    pub fn component_count(&self) -> usize {
        self.tb.len()
    }

    pub fn linking(&self, a: usize, b: usize) -> &Int {
        &self.lk[a][b]
    }

    /// Abstract-layer stabilization rule: tb - 1, rot +/- 1, lk unchanged.
    pub fn stabilize(&self, comp: usize, sign: Zigzag) -> AbstractLinkData {
        let mut out = self.clone();
        out.tb[comp] -= 1;
        match sign {
            Zigzag::Down => out.rot[comp] += 1,
            Zigzag::Up => out.rot[comp] -= 1,
        }
        out
    }

    /// Abstract-layer push-off rule: inserts a copy at `comp + 1` with
    /// the same tb and rot, `lk(copy, comp) = tb(comp)` and
    /// `lk(copy, other) = lk(comp, other)`.
    pub fn push_off(&self, comp: usize) -> AbstractLinkData {
        let t = self.component_count();
        let pos = comp + 1;
        let mut tb = self.tb.clone();
        let mut rot = self.rot.clone();
        tb.insert(pos, self.tb[comp].clone());
        rot.insert(pos, self.rot[comp].clone());
        let mut lk = vec![vec![Int::from(0); t + 1]; t + 1];
        let old = |i: usize| if i < pos { i } else { i - 1 };
        for i in 0..t + 1 {
            for j in 0..t + 1 {
                if i == j {
                    continue;
                }
                lk[i][j] = if i == pos {
                    if old(j) == comp {
                        self.tb[comp].clone()
                    } else {
                        self.lk[comp][old(j)].clone()
                    }
                } else if j == pos {
                    if old(i) == comp {
                        self.tb[comp].clone()
                    } else {
                        self.lk[old(i)][comp].clone()
                    }
                } else {
                    self.lk[old(i)][old(j)].clone()
                };
            }
        }
        let mut labels = self.labels.clone();
        labels.insert(pos, None);
        AbstractLinkData {
            tb,
            rot,
            lk,
            labels,
        }
    }

    pub fn reverse_orientation(&self, comp: usize) -> AbstractLinkData {
        let mut out = self.clone();
        out.rot[comp] = -out.rot[comp].clone();
        for j in 0..out.component_count() {
            if j != comp {
                out.lk[comp][j] = -out.lk[comp][j].clone();
                out.lk[j][comp] = -out.lk[j][comp].clone();
            }
        }
        out
    }

    pub fn mirror_rotate180(&self) -> AbstractLinkData {
        let mut out = self.clone();
        for r in &mut out.rot {
            *r = -r.clone();
        }
        out
    }

    pub fn disjoint_union(&self, other: &AbstractLinkData) -> AbstractLinkData {
        let s = self.component_count();
        let t = other.component_count();
        let mut tb = self.tb.clone();
        tb.extend_from_slice(&other.tb);
        let mut rot = self.rot.clone();
        rot.extend_from_slice(&other.rot);
        let mut lk = vec![vec![Int::from(0); s + t]; s + t];
        for i in 0..s {
            for j in 0..s {
                lk[i][j] = self.lk[i][j].clone();
            }
        }
        for i in 0..t {
            for j in 0..t {
                lk[s + i][s + j] = other.lk[i][j].clone();
            }
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        AbstractLinkData {
            tb,
            rot,
            lk,
            labels,
        }
    }
}

impl FrontDiagram {
    /// Collects tb, rot and the pairwise linking matrix of the front.
    pub fn to_abstract(&self) -> AbstractLinkData {
        let inv = self.all_invariants();
        let t = self.component_count();
        let lk = (0..t)
            .map(|i| (0..t).map(|j| Int::from(inv.lk[i][j])).collect())
            .collect();
        AbstractLinkData {
            tb: inv.tb.into_iter().map(Int::from).collect(),
            rot: inv.rot.into_iter().map(Int::from).collect(),
            lk,
            labels: self.labels().to_vec(),
        }
    }
}

/// A link given either as an honest front or as bare abstract data. Front
/// operations rewrite the word; abstract operations apply the corresponding
/// invariant-level rules, and the two agree on everything downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkData {
    Front(FrontDiagram),
    Abstract(AbstractLinkData),
}

impl LinkData {
    pub fn component_count(&self) -> usize {
        match self {
            LinkData::Front(f) => f.component_count(),
            LinkData::Abstract(a) => a.component_count(),
        }
    }

    pub fn to_abstract(&self) -> AbstractLinkData {
        match self {
            LinkData::Front(f) => f.to_abstract(),
            LinkData::Abstract(a) => a.clone(),
        }
    }

    pub fn as_front(&self) -> Option<&FrontDiagram> {
        match self {
            LinkData::Front(f) => Some(f),
            LinkData::Abstract(_) => None,
        }
    }

    pub fn stabilize(&self, comp: usize, sign: Zigzag) -> Result<LinkData, FrontError> {
        Ok(match self {
            LinkData::Front(f) => LinkData::Front(f.stabilize(comp, sign)?),
            LinkData::Abstract(a) => LinkData::Abstract(a.stabilize(comp, sign)),
        })
    }

    /// Push-off; the copy lands at index `comp + 1` in both representations.
    pub fn push_off(&self, comp: usize) -> Result<LinkData, FrontError> {
        Ok(match self {
            LinkData::Front(f) => LinkData::Front(f.push_off(comp)?),
            LinkData::Abstract(a) => LinkData::Abstract(a.push_off(comp)),
        })
    }

    pub fn disjoint_union(&self, other: &LinkData) -> LinkData {
        match (self, other) {
            (LinkData::Front(a), LinkData::Front(b)) => LinkData::Front(a.disjoint_union(b)),
            _ => LinkData::Abstract(self.to_abstract().disjoint_union(&other.to_abstract())),
        }
    }

    pub fn labels(&self) -> Vec<Option<String>> {
        match self {
            LinkData::Front(f) => f.labels().to_vec(),
            LinkData::Abstract(a) => a.labels.clone(),
        }
    }
}
