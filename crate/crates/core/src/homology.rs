//! Homological data of the 2-handlebody attached along a reduced surgery
//! diagram: the linking matrix with topological framings on the diagonal,
//! the first homology of the boundary as its cokernel, the Poincare dual
//! of the first Chern class with its torsion test, divisibility and square,
//! and the characteristic numbers of the 4-manifold.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{
    signature, smith_normal_form, solve_rational, Int, IntMatrix, Rational,
};
use crate::surgery::ContactSurgeryDiagram;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("diagram is not reduced (component {} has coefficient {coefficient}); expand it first", component + 1)]
    NotReduced {
        component: usize,
        coefficient: String,
    },
    #[error("component {} carries an infinite coefficient (no surgery)", component + 1)]
    InfiniteCoefficient { component: usize },
    #[error("c1 non-torsion, c^2 and d3 undefined")]
    NonTorsionChernClass,
}

/// Machine-readable note attached to a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub component: usize,
    pub message: String,
}

/// Topological linking presentation of a contact (+1)/(-1) surgery diagram:
/// framings `n_i = tb_i +/- 1` on the diagonal of the linking matrix.
#[derive(Clone, Debug)]
pub struct HandlebodyPresentation {
    pub linking: IntMatrix,
    pub rot: Vec<Int>,
    pub tb: Vec<Int>,
    /// Number of components with contact coefficient +1.
    pub q: usize,
    pub diagnostics: Vec<Diagnostic>,
}

impl HandlebodyPresentation {
    pub fn component_count(&self) -> usize {
        self.rot.len()
    }
}

/// Builds the handlebody presentation of a reduced diagram.
pub fn build_presentation(
    diagram: &ContactSurgeryDiagram,
) -> Result<HandlebodyPresentation, HomologyError> {
    let t = diagram.component_count();
    let mut signs = Vec::with_capacity(t);
    for (i, c) in diagram.coefficients().iter().enumerate() {
        if c.is_plus_one() {
            signs.push(1i64);
        } else if c.is_minus_one() {
            signs.push(-1i64);
        } else if c.as_finite().is_none() {
            return Err(HomologyError::InfiniteCoefficient { component: i });
        } else {
            return Err(HomologyError::NotReduced {
                component: i,
                coefficient: c.as_finite().unwrap().to_string(),
            });
        }
    }
    let data = diagram.abstract_link();
    let linking = IntMatrix::from_fn(t, t, |i, j| {
        if i == j {
            &data.tb[i] + Int::from(signs[i])
        } else {
            data.lk[i][j].clone()
        }
    });
    let mut diagnostics = Vec::new();
    for i in 0..t {
        if signs[i] == 1 && data.tb[i].is_zero() {
            diagnostics.push(Diagnostic {
                code: "tb-zero-plus-one",
                component: i,
                message: format!(
                    "component {} has tb = 0 with contact coefficient +1; \
                     the +1 correction term in d3 is still valid",
                    i + 1
                ),
            });
        }
    }
    let q = signs.iter().filter(|&&s| s == 1).count();
    Ok(HandlebodyPresentation {
        linking,
        rot: data.rot,
        tb: data.tb,
        q,
        diagnostics,
    })
}

/// First homology of the boundary in Smith-canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Torsion orders > 1 in divisibility order.
    pub torsion: Vec<Int>,
    /// Image of each meridian generator in canonical coordinates
    /// (torsion coordinates reduced mod their order, then free ones).
    pub generator_map: Vec<Vec<Int>>,
}

impl HomologyGroup {
    pub fn coordinate_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Reduces an integer combination of the meridian generators to
    /// canonical coordinates.
    pub fn class_of(&self, coeffs: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.coordinate_count()];
        for (j, c) in coeffs.iter().enumerate() {
            for (k, g) in self.generator_map[j].iter().enumerate() {
                out[k] += c * g;
            }
        }
        for (k, d) in self.torsion.iter().enumerate() {
            out[k] = out[k].mod_floor(d);
        }
        out
    }

    /// Same group element test in canonical coordinates.
    pub fn classes_equal(&self, a: &[Int], b: &[Int]) -> bool {
        debug_assert_eq!(a.len(), self.coordinate_count());
        debug_assert_eq!(b.len(), self.coordinate_count());
        for (k, d) in self.torsion.iter().enumerate() {
            if (&a[k] - &b[k]).mod_floor(d) != Int::zero() {
                return false;
            }
        }
        for k in self.torsion.len()..self.coordinate_count() {
            if a[k] != b[k] {
                return false;
            }
        }
        true
    }

    pub fn scalar_multiple(&self, n: &Int, class: &[Int]) -> Vec<Int> {
        let mut out: Vec<Int> = class.iter().map(|c| n * c).collect();
        for (k, d) in self.torsion.iter().enumerate() {
            out[k] = out[k].mod_floor(d);
        }
        out
    }
}

/// `H_1` of the surgered manifold: the cokernel of the linking matrix,
/// with each meridian expressed in canonical coordinates.
pub fn first_homology(p: &HandlebodyPresentation) -> HomologyGroup {
    cokernel_of(&p.linking)
}

/// Cokernel of an integer matrix acting on the meridian basis: the
/// canonical form of the abelian group it presents.
pub fn cokernel_of(linking: &IntMatrix) -> HomologyGroup {
    let t = linking.rows();
    let snf = smith_normal_form(linking);
    let diag = snf.diagonal();
    // Coordinates: torsion entries (d > 1) then free entries (d = 0);
    // entries equal to 1 contribute nothing. Rows of U beyond the diagonal
    // length correspond to free coordinates as well (non-square safety; the
    // linking matrix is square so diag has length t).
    let mut torsion_rows = Vec::new();
    let mut free_rows = Vec::new();
    for (k, d) in diag.iter().enumerate() {
        if d.is_zero() {
            free_rows.push(k);
        } else if !d.is_one() {
            torsion_rows.push(k);
        }
    }
    let torsion: Vec<Int> = torsion_rows.iter().map(|&k| diag[k].clone()).collect();
    let free_rank = free_rows.len();
    let generator_map = (0..t)
        .map(|j| {
            let mut coords = Vec::with_capacity(torsion_rows.len() + free_rank);
            for (idx, &k) in torsion_rows.iter().enumerate() {
                coords.push(snf.u[(k, j)].mod_floor(&torsion[idx]));
            }
            for &k in &free_rows {
                coords.push(snf.u[(k, j)].clone());
            }
            coords
        })
        .collect();
    HomologyGroup {
        free_rank,
        torsion,
        generator_map,
    }
}

/// The Poincare dual of the first Chern class together with its torsion
/// test, divisibility and square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernClassData {
    /// `sum rot_i * [mu_i]` in canonical coordinates of `H_1`.
    pub pd_c1: Vec<Int>,
    pub is_torsion: bool,
    /// Divisibility of the class; zero when the class is torsion.
    pub divisibility: Int,
    /// Present exactly when the class is torsion.
    pub c_squared: Option<Rational>,
}

/// Computes the full Chern class data of a presentation.
pub fn c1_class(p: &HandlebodyPresentation) -> ChernClassData {
    let h = first_homology(p);
    let pd_c1 = h.class_of(&p.rot);
    let free_part = &pd_c1[h.torsion.len()..];
    let is_torsion = free_part.iter().all(Int::is_zero);
    let divisibility = if is_torsion {
        Int::zero()
    } else {
        class_divisibility(&h, &pd_c1)
    };
    let c_squared = if is_torsion {
        Some(c_squared(p).expect("torsion class has a rational solve"))
    } else {
        None
    };
    ChernClassData {
        pd_c1,
        is_torsion,
        divisibility,
        c_squared,
    }
}

/// Divisibility of the c1 class: zero for torsion classes, otherwise the
/// largest `d` with `class` in `d * H`.
pub fn c1_divisibility(p: &HandlebodyPresentation) -> Int {
    let h = first_homology(p);
    let class = h.class_of(&p.rot);
    let free_part = &class[h.torsion.len()..];
    if free_part.iter().all(Int::is_zero) {
        return Int::zero();
    }
    class_divisibility(&h, &class)
}

fn class_divisibility(h: &HomologyGroup, class: &[Int]) -> Int {
    let free_part = &class[h.torsion.len()..];
    let mut d = free_part
        .iter()
        .fold(Int::zero(), |acc, c| acc.gcd(c));
    debug_assert!(!d.is_zero());
    // Torsion coordinates: tau in d*(Z/m) iff gcd(d, m) divides gcd(tau, m).
    // Strip excess prime powers of d until every condition holds.
    for (k, m) in h.torsion.iter().enumerate() {
        let target = class[k].gcd(m);
        loop {
            let c = d.gcd(m);
            if target.is_multiple_of(&c) {
                break;
            }
            d /= &c / c.gcd(&target);
        }
    }
    d
}

/// Solves `L x = rot` over the rationals and returns `(c^2, x)` with
/// `c^2 = rot . x`. Fails when the class is not torsion.
pub fn c_squared_with_solution(
    p: &HandlebodyPresentation,
) -> Result<(Rational, Vec<Rational>), HomologyError> {
    let b = p.rot.clone();
    match solve_rational(&p.linking, &b).expect("square system") {
        Some(x) => {
            let c2 = b
                .iter()
                .zip(&x)
                .map(|(bi, xi)| Rational::from(bi.clone()) * xi)
                .sum();
            Ok((c2, x))
        }
        None => Err(HomologyError::NonTorsionChernClass),
    }
}

/// `c^2` of the presentation; defined exactly when c1 is torsion.
pub fn c_squared(p: &HandlebodyPresentation) -> Result<Rational, HomologyError> {
    c_squared_with_solution(p).map(|(c2, _)| c2)
}

/// `(sigma(X), chi(X))`: signature of the linking matrix and Euler
/// characteristic of one 0-handle plus `t` 2-handles.
pub fn characteristic_numbers(p: &HandlebodyPresentation) -> (i64, i64) {
    let sigma = signature(&p.linking).expect("linking matrix is symmetric");
    let chi = 1 + p.component_count() as i64;
    (sigma, chi)
}

/// `|H_1|` as `|det L|` when nonzero; `None` means infinite homology.
pub fn homology_order(p: &HandlebodyPresentation) -> Option<Int> {
    let det = p.linking.determinant().expect("square linking matrix");
    if det.is_zero() {
        None
    } else {
        Some(det.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::invariants::{catalog, CatalogEntry};
    use crate::surgery::{ContactSurgeryDiagram, SurgeryCoefficient};
    use crate::front::{parse_word, FrontDiagram};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn xi_plus_presentation() {
        let d = catalog(&CatalogEntry::XiPlus).unwrap();
        let p = build_presentation(&d).unwrap();
        assert_eq!(p.linking, IntMatrix::from_rows(&[vec![-1]]));
        assert_eq!(p.rot, ints(&[1]));
        assert_eq!(p.q, 1);
    }

    #[test]
    fn xi_minus_presentation() {
        let d = catalog(&CatalogEntry::XiMinus).unwrap();
        let p = build_presentation(&d).unwrap();
        assert_eq!(
            p.linking,
            IntMatrix::from_rows(&[vec![-5, -2], vec![-2, -1]])
        );
        assert_eq!(p.rot, ints(&[1, -1]));
        assert_eq!(p.q, 1);
    }

    #[test]
    fn tight_s1s2_presentation() {
        let d = catalog(&CatalogEntry::TightS1S2).unwrap();
        let p = build_presentation(&d).unwrap();
        assert_eq!(p.linking, IntMatrix::from_rows(&[vec![0]]));
        assert_eq!(p.rot, ints(&[0]));
        assert_eq!(p.q, 1);
        let h = first_homology(&p);
        assert_eq!(h.free_rank, 1);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn non_reduced_rejected() {
        let front = FrontDiagram::from_word(parse_word("L1 R1").unwrap()).unwrap();
        let d = ContactSurgeryDiagram::from_front(
            front,
            vec![SurgeryCoefficient::finite(rat(-5, 3)).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            build_presentation(&d),
            Err(HomologyError::NotReduced { component: 0, .. })
        ));
    }

    #[test]
    fn empty_diagram_is_trivial() {
        let d = ContactSurgeryDiagram::empty();
        let p = build_presentation(&d).unwrap();
        let h = first_homology(&p);
        assert!(h.is_trivial());
        assert_eq!(homology_order(&p), Some(int(1)));
        assert_eq!(characteristic_numbers(&p), (0, 1));
    }

    #[test]
    fn xi_k_homology_and_class() {
        for k in 2..=4i64 {
            let d = catalog(&CatalogEntry::XiK(k)).unwrap();
            let p = build_presentation(&d).unwrap();
            let h = first_homology(&p);
            assert_eq!(h.free_rank, 1, "k = {k}");
            assert!(h.torsion.is_empty());
            // [mu_2] generates.
            assert_eq!(h.generator_map[1][0].clone().abs(), int(1));
            let class = c1_class(&p);
            assert!(!class.is_torsion);
            let expected = h.scalar_multiple(&int(2 * k - 2), &h.generator_map[1]);
            assert!(h.classes_equal(&class.pd_c1, &expected));
            assert_eq!(class.divisibility, int(2 * k - 2));
            assert_eq!(class.c_squared, None);
        }
    }

    #[test]
    fn torsion_class_has_zero_divisibility() {
        let d = catalog(&CatalogEntry::XiMinus).unwrap();
        let p = build_presentation(&d).unwrap();
        assert_eq!(c1_divisibility(&p), int(0));
        let class = c1_class(&p);
        assert!(class.is_torsion);
        assert_eq!(class.c_squared, Some(rat(-10, 1)));
    }

    #[test]
    fn all_rot_zero_divisibility() {
        let d = catalog(&CatalogEntry::TightS1S2).unwrap();
        let p = build_presentation(&d).unwrap();
        assert_eq!(c1_divisibility(&p), int(0));
    }

    #[test]
    fn c_squared_values() {
        let d = catalog(&CatalogEntry::XiMinus).unwrap();
        let p = build_presentation(&d).unwrap();
        let (c2, x) = c_squared_with_solution(&p).unwrap();
        assert_eq!(c2, rat(-10, 1));
        assert_eq!(x, vec![rat(-3, 1), rat(7, 1)]);

        let d = catalog(&CatalogEntry::XiPlus).unwrap();
        let p = build_presentation(&d).unwrap();
        assert_eq!(c_squared(&p).unwrap(), rat(-1, 1));
    }

    #[test]
    fn characteristic_numbers_of_catalog_diagrams() {
        let p = build_presentation(&catalog(&CatalogEntry::XiPlus).unwrap()).unwrap();
        assert_eq!(characteristic_numbers(&p), (-1, 2));
        let p = build_presentation(&catalog(&CatalogEntry::XiMinus).unwrap()).unwrap();
        assert_eq!(characteristic_numbers(&p), (-2, 3));
    }

    #[test]
    fn cancellation_pair_has_zero_c_squared() {
        // {(K, +1), (push-off, -1)} for the figure-one knot.
        let front = FrontDiagram::from_word(parse_word("L1 L2 R1 R1").unwrap()).unwrap();
        let doubled = front.push_off(0).unwrap();
        let d = ContactSurgeryDiagram::from_front(
            doubled,
            vec![
                SurgeryCoefficient::plus_one(),
                SurgeryCoefficient::minus_one(),
            ],
        )
        .unwrap();
        let p = build_presentation(&d).unwrap();
        assert_eq!(c_squared(&p).unwrap(), rat(0, 1));
        assert_eq!(homology_order(&p), Some(int(1)));
    }

    #[test]
    fn tb_zero_plus_one_gets_diagnostic() {
        let link = crate::front::AbstractLinkData::new(
            vec![int(0)],
            vec![int(1)],
            vec![vec![int(0)]],
        );
        let d =
            ContactSurgeryDiagram::from_abstract(link, vec![SurgeryCoefficient::plus_one()])
                .unwrap();
        let p = build_presentation(&d).unwrap();
        assert_eq!(p.diagnostics.len(), 1);
        assert_eq!(p.diagnostics[0].code, "tb-zero-plus-one");
    }
}
