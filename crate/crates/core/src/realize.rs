//! From a framed smooth link to a contact (+1)/(-1) surgery diagram
//! realizing a prescribed Chern-class twist and, optionally, a prescribed
//! d3 value, together with the linking-matrix Kirby moves (blow-down and
//! handle slide) used to verify every step.
//!
//! The pipeline works at the level of abstract link data: each input
//! component carries a Legendrian hint `(tb, rot)` supplied by the caller,
//! gadget pieces contribute the tb/rot data of the catalog knots, and the
//! normative checks are homological (the boundary H_1 is preserved and the
//! class shifts by exactly `2 * alpha_i * [mu_i]`).

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{Int, IntMatrix, Rational};
use crate::front::AbstractLinkData;
use crate::homology::{build_presentation, c1_class, HomologyError};
use crate::invariants::{catalog, d3, CatalogEntry, InvariantError};
use crate::surgery::{ContactSurgeryDiagram, SurgeryCoefficient, SurgeryError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("framed link carries no Legendrian hints")]
    MissingHints,
    #[error("expected {expected} twist coefficients, got {given}")]
    AlphaLength { expected: usize, given: usize },
    #[error("twist coefficient for component {} is zero; keep the reference gadget", component + 1)]
    AlphaZero { component: usize },
    #[error("component {} has not been adjusted yet", component + 1)]
    NotAdjusted { component: usize },
    #[error("component {} carries no reference gadget", component + 1)]
    NoReference { component: usize },
    #[error("d3 target requires a torsion first Chern class")]
    NonTorsionD3Target,
    #[error("d3 target differs from the computed value by the non-integer {gap}; each correction step changes d3 by +-1")]
    D3ParityUnreachable { gap: String },
    #[error("blow-down requires framing +1 or -1, found {framing}")]
    BlowDownFraming { framing: String },
    #[error("handle slide requires two distinct components")]
    SameIndex,
    #[error("matrix index {index} out of range ({count} components)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

impl From<InvariantError> for RealizeError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Homology(h) => RealizeError::Homology(h),
            InvariantError::Surgery(s) => RealizeError::Surgery(s),
            other => panic!("catalog construction failed: {other}"),
        }
    }
}

/// Caller-supplied Legendrian representative data for one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrianHint {
    pub tb: Int,
    pub rot: Int,
}

/// A framed smooth link: symmetric linking matrix with the integer surgery
/// framings on the diagonal. Rational framings must be expanded into
/// integer ones by the caller before this layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    pub matrix: IntMatrix,
    pub hints: Option<Vec<LegendrianHint>>,
}

impl FramedLink {
    pub fn new(matrix: IntMatrix, hints: Option<Vec<LegendrianHint>>) -> Self {
        assert!(matrix.is_symmetric(), "framed link matrix must be symmetric");
        if let Some(h) = &hints {
            assert_eq!(h.len(), matrix.rows(), "one hint per component");
        }
        FramedLink { matrix, hints }
    }

    pub fn component_count(&self) -> usize {
        self.matrix.rows()
    }
}

/// Requested twist of the reference spin-c structure plus an optional d3
/// value (honored only when the produced c1 is torsion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationTarget {
    pub alpha: Vec<Int>,
    pub d3_target: Option<Rational>,
}

// -------------------------------------------------------------------------
// Linking-matrix Kirby oracle
// -------------------------------------------------------------------------

/// Blows down the (+-1)-framed unknot `i`: removes its row and column and
/// twists the rest, `entry(j, l) -= eps * lk(j, i) * lk(l, i)`. Whether the
/// component is actually an unknot at the smooth level is the caller's
/// responsibility. Preserves the cokernel; the signature changes by `-eps`.
pub fn blow_down(matrix: &IntMatrix, i: usize) -> Result<IntMatrix, RealizeError> {
    let t = matrix.rows();
    if i >= t {
        return Err(RealizeError::IndexOutOfRange { index: i, count: t });
    }
    let eps = matrix[(i, i)].clone();
    if !eps.clone().abs().is_one() {
        return Err(RealizeError::BlowDownFraming {
            framing: eps.to_string(),
        });
    }
    let map = |k: usize| if k < i { k } else { k + 1 };
    Ok(IntMatrix::from_fn(t - 1, t - 1, |r, c| {
        let (j, l) = (map(r), map(c));
        &matrix[(j, l)] - &eps * &matrix[(j, i)] * &matrix[(l, i)]
    }))
}

/// Slides handle `j` over handle `i`: the congruence by the elementary
/// unimodular matrix `E` with `E[i][j] = +-1`. Determinant, signature and
/// cokernel are all preserved.
pub fn handle_slide(
    matrix: &IntMatrix,
    i: usize,
    j: usize,
    positive: bool,
) -> Result<IntMatrix, RealizeError> {
    let t = matrix.rows();
    if i >= t || j >= t {
        return Err(RealizeError::IndexOutOfRange {
            index: i.max(j),
            count: t,
        });
    }
    if i == j {
        return Err(RealizeError::SameIndex);
    }
    let s = if positive { Int::one() } else { -Int::one() };
    let mut out = matrix.clone();
    out.add_col_multiple(j, i, &s);
    out.add_row_multiple(j, i, &s);
    Ok(out)
}

// -------------------------------------------------------------------------
// Diagram decoration
// -------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct Piece {
    tb: Int,
    rot: Int,
    plus: bool,
}

impl Piece {
    fn framing(&self) -> Int {
        &self.tb + if self.plus { Int::one() } else { -Int::one() }
    }
}

/// Shared gadget data: the tb = -2, rot = 1 unknot used for every
/// (+1)-marked unknot with topological framing -1.
fn shark_piece(plus: bool) -> Piece {
    Piece {
        tb: Int::from(-2),
        rot: Int::one(),
        plus,
    }
}

fn unknot_piece(plus: bool) -> Piece {
    Piece {
        tb: -Int::one(),
        rot: Int::zero(),
        plus,
    }
}

/// Builder for the decorated contact surgery diagram. The original
/// components keep indices `0..t`; gadget pieces are appended behind them.
#[derive(Clone, Debug)]
pub struct DecoratedLink {
    input: FramedLink,
    pieces: Vec<Piece>,
    lk: Vec<Vec<Int>>,
    adjusted: Vec<bool>,
    reference: Vec<Option<[usize; 3]>>,
}

impl DecoratedLink {
    pub fn new(link: &FramedLink) -> Result<Self, RealizeError> {
        let hints = link.hints.as_ref().ok_or(RealizeError::MissingHints)?;
        let t = link.component_count();
        let pieces = hints
            .iter()
            .map(|h| Piece {
                tb: h.tb.clone(),
                rot: h.rot.clone(),
                plus: false,
            })
            .collect();
        let lk = (0..t)
            .map(|i| {
                (0..t)
                    .map(|j| {
                        if i == j {
                            Int::zero()
                        } else {
                            link.matrix[(i, j)].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(DecoratedLink {
            input: link.clone(),
            pieces,
            lk,
            adjusted: vec![false; t],
            reference: vec![None; t],
        })
    }

    pub fn original_count(&self) -> usize {
        self.adjusted.len()
    }

    pub fn component_count(&self) -> usize {
        self.pieces.len()
    }

    fn push_piece(&mut self, piece: Piece) -> usize {
        let idx = self.pieces.len();
        self.pieces.push(piece);
        for row in &mut self.lk {
            row.push(Int::zero());
        }
        self.lk.push(vec![Int::zero(); idx + 1]);
        idx
    }

    fn set_lk(&mut self, a: usize, b: usize, value: i64) {
        self.lk[a][b] = Int::from(value);
        self.lk[b][a] = Int::from(value);
    }

    /// Makes the contact surgery on component `i` match its topological
    /// framing `n_i`:
    ///
    /// * `n_i < tb_i`: stabilize down to `tb = n_i + 1` and use coefficient
    ///   -1;
    /// * `n_i = tb_i + 1`: use coefficient +1 directly;
    /// * otherwise: coefficient -1 on the knot plus the unknot chain gadget
    ///   whose blow-downs restore `(K_i, n_i)`.
    pub fn legendrian_adjust(&mut self, i: usize) -> Result<(), RealizeError> {
        let t = self.original_count();
        if i >= t {
            return Err(RealizeError::IndexOutOfRange { index: i, count: t });
        }
        if self.adjusted[i] {
            return Ok(());
        }
        let n = self.input.matrix[(i, i)].clone();
        let hint = &self.input.hints.as_ref().unwrap()[i];
        let b = hint.tb.clone();
        if n < b {
            // b - n - 1 down-zigzags: tb becomes n + 1, coefficient -1.
            let s = &b - &n - 1;
            self.pieces[i].tb = &n + 1;
            self.pieces[i].rot = &hint.rot + &s;
            self.pieces[i].plus = false;
        } else if n == &b + 1 {
            self.pieces[i].plus = true;
        } else {
            self.pieces[i].plus = false;
            let l = usize::try_from(&n - &b).expect("chain length fits usize");
            let gadget = self.push_piece(shark_piece(true));
            self.set_lk(i, gadget, 1);
            let mut prev = gadget;
            for _ in 0..l {
                let next = self.push_piece(unknot_piece(false));
                self.set_lk(prev, next, 1);
                prev = next;
            }
        }
        self.adjusted[i] = true;
        Ok(())
    }

    pub fn legendrian_adjust_all(&mut self) -> Result<(), RealizeError> {
        for i in 0..self.original_count() {
            self.legendrian_adjust(i)?;
        }
        Ok(())
    }

    /// Appends the reference triple next to every component: a 0-framed
    /// (+1)-unknot, a split (-1)-framed (+1)-unknot and a (-2)-framed
    /// (-1)-unknot hooking the pair to the component. The boundary homology
    /// is unchanged and the new meridians satisfy
    /// `mu'_0 = mu_i`, `mu'_1 = mu'_2 = 0`.
    pub fn add_reference_structure(&mut self) -> Result<(), RealizeError> {
        for (i, &done) in self.adjusted.iter().enumerate() {
            if !done {
                return Err(RealizeError::NotAdjusted { component: i });
            }
        }
        for i in 0..self.original_count() {
            let k0 = self.push_piece(unknot_piece(true));
            let _k1 = self.push_piece(shark_piece(true));
            let k2 = self.push_piece(unknot_piece(false));
            self.set_lk(k0, k2, 1);
            self.set_lk(k2, i, -1);
            self.reference[i] = Some([k0, _k1, k2]);
        }
        Ok(())
    }

    /// Swaps the reference triple at `i` for the twist gadget modeled on
    /// the S^1 x S^2 family with `k = |alpha| + 1` (rotated by 180 degrees
    /// for negative `alpha`): the coefficient of `mu_i` in the Chern class
    /// dual shifts by exactly `2 * alpha`.
    pub fn apply_chern_twist(&mut self, i: usize, alpha: &Int) -> Result<(), RealizeError> {
        let t = self.original_count();
        if i >= t {
            return Err(RealizeError::IndexOutOfRange { index: i, count: t });
        }
        if alpha.is_zero() {
            return Err(RealizeError::AlphaZero { component: i });
        }
        let Some([r0, r1, r2]) = self.reference[i] else {
            return Err(RealizeError::NoReference { component: i });
        };
        let k: Int = alpha.clone().abs() + 1;
        let sign = if alpha.is_positive() {
            Int::one()
        } else {
            -Int::one()
        };
        self.pieces[r0] = Piece {
            tb: Int::from(-2),
            rot: sign.clone(),
            plus: true,
        };
        self.pieces[r1] = Piece {
            tb: Int::one() - &k * &k,
            rot: &sign * (&k - 2),
            plus: false,
        };
        self.pieces[r2] = unknot_piece(false);
        for idx in [r0, r1, r2] {
            for other in 0..self.component_count() {
                if other != idx {
                    self.lk[idx][other] = Int::zero();
                    self.lk[other][idx] = Int::zero();
                }
            }
        }
        self.lk[r0][r1] = k.clone();
        self.lk[r1][r0] = k;
        self.set_lk(r1, r2, 1);
        self.set_lk(r2, i, -1);
        Ok(())
    }

    /// Output indices of the reference triple attached to component `i`.
    pub fn reference_triple(&self, i: usize) -> Option<[usize; 3]> {
        self.reference.get(i).copied().flatten()
    }

    /// The decorated diagram as abstract link data with coefficients.
    pub fn to_diagram(&self) -> ContactSurgeryDiagram {
        let tb = self.pieces.iter().map(|p| p.tb.clone()).collect();
        let rot = self.pieces.iter().map(|p| p.rot.clone()).collect();
        let data = AbstractLinkData::new(tb, rot, self.lk.clone());
        let coefficients = self
            .pieces
            .iter()
            .map(|p| {
                if p.plus {
                    SurgeryCoefficient::plus_one()
                } else {
                    SurgeryCoefficient::minus_one()
                }
            })
            .collect();
        ContactSurgeryDiagram::from_abstract(data, coefficients)
            .expect("decorated diagram is well-formed")
    }

    /// Topological presentation matrix: framings on the diagonal.
    pub fn presentation_matrix(&self) -> IntMatrix {
        let t = self.component_count();
        IntMatrix::from_fn(t, t, |i, j| {
            if i == j {
                self.pieces[i].framing()
            } else {
                self.lk[i][j].clone()
            }
        })
    }
}

/// Builds the change1 chain gadget matrix for a knot with Legendrian hint
/// `b` and target framing `n >= b`: the knot row first, then the
/// (-1)-framed hook unknot, then the chain of (-2)-framed unknots.
/// Successive blow-downs reduce it back to the single entry `n`.
pub fn change1_gadget_matrix(b: &Int, n: &Int) -> IntMatrix {
    assert!(n >= b);
    let l = usize::try_from(n - b).unwrap();
    let t = l + 2;
    IntMatrix::from_fn(t, t, |i, j| {
        if i == j {
            match i {
                0 => b - 1,            // knot with contact -1
                1 => -Int::one(),      // hook unknot, contact +1 at tb -2
                _ => Int::from(-2),    // chain, contact -1 at tb -1
            }
        } else if i.abs_diff(j) == 1 {
            Int::one()
        } else {
            Int::zero()
        }
    })
}

/// Full pipeline: adjust every component, decorate with the reference
/// structure, apply the requested twists, then correct d3 by disjoint
/// sums with the overtwisted S^3 generators when a target is given.
pub fn realize(
    link: &FramedLink,
    target: &RealizationTarget,
) -> Result<ContactSurgeryDiagram, RealizeError> {
    let t = link.component_count();
    if target.alpha.len() != t {
        return Err(RealizeError::AlphaLength {
            expected: t,
            given: target.alpha.len(),
        });
    }
    let mut decorated = DecoratedLink::new(link)?;
    decorated.legendrian_adjust_all()?;
    decorated.add_reference_structure()?;
    for (i, alpha) in target.alpha.iter().enumerate() {
        if !alpha.is_zero() {
            decorated.apply_chern_twist(i, alpha)?;
        }
    }
    let mut diagram = decorated.to_diagram();

    if let Some(goal) = &target.d3_target {
        let p = build_presentation(&diagram)?;
        let class = c1_class(&p);
        if !class.is_torsion {
            return Err(RealizeError::NonTorsionD3Target);
        }
        let current = d3(&diagram)?.value;
        let gap = goal - &current;
        if !gap.is_integer() {
            return Err(RealizeError::D3ParityUnreachable {
                gap: gap.to_string(),
            });
        }
        // Each union with xi_plus adds +1, with xi_minus adds -1.
        let steps = gap.to_integer();
        let entry = if steps.is_negative() {
            CatalogEntry::XiMinus
        } else {
            CatalogEntry::XiPlus
        };
        let n = usize::try_from(steps.abs()).expect("correction count fits usize");
        for _ in 0..n {
            diagram = diagram.disjoint_union(&catalog(&entry)?);
        }
        debug_assert_eq!(d3(&diagram).map(|r| r.value), Ok(goal.clone()));
    }
    Ok(diagram)
}
