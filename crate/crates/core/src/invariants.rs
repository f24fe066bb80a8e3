//! The d3 homotopy invariant of contact (+1)/(-1) surgery diagrams,
//! its additivity under disjoint union, and the catalog of named diagrams:
//! the overtwisted S^3 generators, the tight S^1 x S^2, and the S^1 x S^2
//! family realizing every even first Chern class.
//!
//! For a reduced diagram with torsion c1 the invariant is
//! `d3 = (c^2 - 3*sigma(X) - 2*chi(X))/4 + q`, with `q` the number of
//! (+1)-components; on a homology sphere it lands in Z + 1/2.

use thiserror::Error;

use crate::exactalg::{rat, Int, Rational};
use crate::front::{FrontDiagram, FrontError, LinkData, MorseEvent, Zigzag};
use crate::homology::{
    build_presentation, c1_class, characteristic_numbers, Diagnostic, HomologyError,
};
use crate::surgery::{ContactSurgeryDiagram, SurgeryCoefficient, SurgeryError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("catalog entry `{0}` requires an integer parameter")]
    MissingCatalogParameter(&'static str),
    #[error("catalog entry `{name}` requires k >= 2, got {k}")]
    CatalogParameter { name: &'static str, k: i64 },
}

/// The d3 invariant with its full term breakdown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D3Result {
    pub value: Rational,
    pub c_squared: Rational,
    pub sigma: i64,
    pub chi: i64,
    pub q: usize,
    pub diagnostics: Vec<Diagnostic>,
}

/// Computes the d3 invariant of a reduced diagram with torsion c1.
pub fn d3(diagram: &ContactSurgeryDiagram) -> Result<D3Result, InvariantError> {
    let p = build_presentation(diagram)?;
    let class = c1_class(&p);
    let Some(c_squared) = class.c_squared else {
        return Err(HomologyError::NonTorsionChernClass.into());
    };
    let (sigma, chi) = characteristic_numbers(&p);
    let value = (&c_squared - rat(3 * sigma + 2 * chi, 1)) / rat(4, 1) + rat(p.q as i64, 1);
    Ok(D3Result {
        value,
        c_squared,
        sigma,
        chi,
        q: p.q,
        diagnostics: p.diagnostics,
    })
}

/// Additivity under disjoint union (connected sum of the manifolds):
/// `d3(a # b) = d3(a) + d3(b) + 1/2`.
pub fn d3_disjoint_union(a: &D3Result, b: &D3Result) -> Rational {
    &a.value + &b.value + rat(1, 2)
}

/// Named diagrams with the data used throughout the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    /// One-knot (+1)-diagram of an overtwisted S^3 with d3 = 1/2.
    XiPlus,
    /// Two-knot diagram of an overtwisted S^3 with d3 = -3/2.
    XiMinus,
    /// (+1)-surgery on the standard Legendrian unknot: tight S^1 x S^2.
    TightS1S2,
    /// S^1 x S^2 with c1 = (2k - 2) times the generator, k >= 2.
    XiK(i64),
    /// 180-degree rotation of `XiK`: c1 = (2 - 2k) times the generator.
    XiMinusK(i64),
    /// The tb = -2, rot = 1 unknot (no surgery coefficient attached).
    SharkKnot,
    /// The tb = 1 - k^2, rot = k - 2 knot of the S^1 x S^2 family, k >= 2.
    KkKnot(i64),
    /// Overtwisted S^3 with d3 = i - 1/2, as a disjoint union of copies
    /// of `XiPlus` and `XiMinus`.
    XiIOnS3(i64),
}

impl CatalogEntry {
    /// Parses `name` plus an optional integer parameter.
    pub fn parse(name: &str, param: Option<i64>) -> Result<CatalogEntry, InvariantError> {
        let need =
            |name: &'static str| param.ok_or(InvariantError::MissingCatalogParameter(name));
        match name {
            "xi_plus" => Ok(CatalogEntry::XiPlus),
            "xi_minus" => Ok(CatalogEntry::XiMinus),
            "tight_s1s2" => Ok(CatalogEntry::TightS1S2),
            "xi_k" => Ok(CatalogEntry::XiK(need("xi_k")?)),
            "xi_minus_k" => Ok(CatalogEntry::XiMinusK(need("xi_minus_k")?)),
            "shark_knot" => Ok(CatalogEntry::SharkKnot),
            "k_k_knot" | "K_k_knot" => Ok(CatalogEntry::KkKnot(need("k_k_knot")?)),
            "xi_i_on_s3" => Ok(CatalogEntry::XiIOnS3(need("xi_i_on_s3")?)),
            other => Err(InvariantError::UnknownCatalogEntry(other.to_string())),
        }
    }
}

fn word(events: &[(u8, usize)]) -> Vec<MorseEvent> {
    events
        .iter()
        .map(|&(kind, slot)| match kind {
            b'L' => MorseEvent::LeftCusp(slot),
            b'R' => MorseEvent::RightCusp(slot),
            _ => MorseEvent::Crossing(slot),
        })
        .collect()
}

/// The tb = -2, rot = +1 unknot front.
pub fn shark_front() -> FrontDiagram {
    FrontDiagram::from_word(word(&[(b'L', 1), (b'L', 2), (b'R', 1), (b'R', 1)])).unwrap()
}

/// The standard tb = -1, rot = 0 unknot front.
pub fn unknot_front() -> FrontDiagram {
    FrontDiagram::from_word(word(&[(b'L', 1), (b'R', 1)])).unwrap()
}

/// A front for the `K_k` knot: tb = 1 - k^2 and rot = k - 2. Built as an
/// unknot with `k - 2` down-zigzags and `k(k-1)/2` negative clasps.
pub fn k_k_front(k: i64) -> Result<FrontDiagram, InvariantError> {
    if k < 2 {
        return Err(InvariantError::CatalogParameter { name: "k_k_knot", k });
    }
    let k = k as usize;
    let mut events = vec![MorseEvent::LeftCusp(1)];
    for _ in 0..k - 2 {
        events.push(MorseEvent::LeftCusp(2));
        events.push(MorseEvent::RightCusp(1));
    }
    for _ in 0..k * (k - 1) {
        events.push(MorseEvent::Crossing(1));
    }
    events.push(MorseEvent::RightCusp(1));
    Ok(FrontDiagram::from_word(events).unwrap())
}

/// The two-component S^1 x S^2 front: the shark unknot linking the `K_k`
/// knot `k` times.
fn xi_k_front(k: i64) -> Result<FrontDiagram, InvariantError> {
    if k < 2 {
        return Err(InvariantError::CatalogParameter { name: "xi_k", k });
    }
    let k = k as usize;
    // Open the shark and pause with two strands alive...
    let mut events = word(&[(b'L', 1), (b'L', 2), (b'R', 1)]);
    // ...then run the K_k construction between them, shifted down by one.
    events.push(MorseEvent::LeftCusp(2));
    for _ in 0..k - 2 {
        events.push(MorseEvent::LeftCusp(3));
        events.push(MorseEvent::RightCusp(2));
    }
    for _ in 0..k * (k - 1) {
        events.push(MorseEvent::Crossing(2));
    }
    // Link the two components: 2k parallel crossings.
    for _ in 0..2 * k {
        events.push(MorseEvent::Crossing(1));
    }
    events.push(MorseEvent::RightCusp(2));
    events.push(MorseEvent::RightCusp(1));
    Ok(FrontDiagram::from_word(events).unwrap())
}

/// The two-component front behind `xi_minus`: a tb = -4, rot = 1 unknot
/// linking a reversed shark (tb = -2, rot = -1) with lk = -2.
fn xi_minus_front() -> FrontDiagram {
    let events = word(&[
        (b'L', 1),
        (b'L', 2),
        (b'R', 1),
        (b'X', 1),
        (b'X', 1),
        // second component: the shark, shifted down by one
        (b'L', 2),
        (b'L', 3),
        (b'R', 2),
        // four antiparallel crossings: lk = -2
        (b'X', 1),
        (b'X', 1),
        (b'X', 1),
        (b'X', 1),
        (b'R', 2),
        (b'R', 1),
    ]);
    FrontDiagram::with_seeds(events, vec![true, false]).unwrap()
}

/// Builds a named catalog diagram.
pub fn catalog(entry: &CatalogEntry) -> Result<ContactSurgeryDiagram, InvariantError> {
    match entry {
        CatalogEntry::XiPlus => Ok(ContactSurgeryDiagram::from_front(
            shark_front(),
            vec![SurgeryCoefficient::plus_one()],
        )?),
        CatalogEntry::XiMinus => Ok(ContactSurgeryDiagram::from_front(
            xi_minus_front(),
            vec![
                SurgeryCoefficient::minus_one(),
                SurgeryCoefficient::plus_one(),
            ],
        )?),
        CatalogEntry::TightS1S2 => Ok(ContactSurgeryDiagram::from_front(
            unknot_front(),
            vec![SurgeryCoefficient::plus_one()],
        )?),
        CatalogEntry::XiK(k) => Ok(ContactSurgeryDiagram::from_front(
            xi_k_front(*k)?,
            vec![
                SurgeryCoefficient::plus_one(),
                SurgeryCoefficient::minus_one(),
            ],
        )?),
        CatalogEntry::XiMinusK(k) => {
            let diagram = catalog(&CatalogEntry::XiK(*k))?;
            Ok(mirror_diagram(&diagram)?)
        }
        CatalogEntry::SharkKnot => Ok(ContactSurgeryDiagram::from_front(
            shark_front(),
            vec![SurgeryCoefficient::Infinity],
        )?),
        CatalogEntry::KkKnot(k) => Ok(ContactSurgeryDiagram::from_front(
            k_k_front(*k)?,
            vec![SurgeryCoefficient::Infinity],
        )?),
        CatalogEntry::XiIOnS3(i) => {
            // d3(union of m pieces) = sum d3 + (m-1)/2, so i >= 1 takes i
            // copies of XiPlus, i < 0 takes -i copies of XiMinus, and i = 0
            // the smallest mixed pair.
            let (minus, plus) = match *i {
                i if i >= 1 => (0, i),
                0 => (1, 1),
                i => (-i, 0),
            };
            let mut parts = Vec::new();
            for _ in 0..plus {
                parts.push(catalog(&CatalogEntry::XiPlus)?);
            }
            for _ in 0..minus {
                parts.push(catalog(&CatalogEntry::XiMinus)?);
            }
            let mut out = parts.pop().expect("at least one part");
            while let Some(part) = parts.pop() {
                out = out.disjoint_union(&part);
            }
            Ok(out)
        }
    }
}

/// Rotates a whole diagram by 180 degrees: tb and lk survive, every rot
/// flips sign. Coefficients follow the component permutation.
pub fn mirror_diagram(
    diagram: &ContactSurgeryDiagram,
) -> Result<ContactSurgeryDiagram, InvariantError> {
    match diagram.link() {
        LinkData::Front(front) => {
            let (mirrored, perm) = front.mirror_rotate180();
            let coefficients = perm
                .iter()
                .map(|&old| diagram.coefficient(old).clone())
                .collect();
            Ok(ContactSurgeryDiagram::from_front(mirrored, coefficients)?)
        }
        LinkData::Abstract(data) => Ok(ContactSurgeryDiagram::from_abstract(
            data.mirror_rotate180(),
            diagram.coefficients().to_vec(),
        )?),
    }
}

/// The two-knot (+1)-surgery construction of overtwisted S^3 structures:
/// `K_2` is a push-off of `K_1` with two extra down-zigzags, and
/// `d3 = -tb(K_1) - rot(K_1) - 1/2`.
pub fn alternative_s3(front: &FrontDiagram) -> Result<ContactSurgeryDiagram, InvariantError> {
    if front.component_count() != 1 {
        return Err(FrontError::MultiComponent {
            count: front.component_count(),
        }
        .into());
    }
    let doubled = front
        .push_off(0)?
        .stabilize(1, Zigzag::Down)?
        .stabilize(1, Zigzag::Down)?;
    Ok(ContactSurgeryDiagram::from_front(
        doubled,
        vec![
            SurgeryCoefficient::plus_one(),
            SurgeryCoefficient::plus_one(),
        ],
    )?)
}

/// The d3 value predicted for [`alternative_s3`] from the knot data alone.
pub fn alternative_s3_prediction(tb: &Int, rot: &Int) -> Rational {
    Rational::from(-(tb + rot)) - rat(1, 2)
}

/// Single-knot fronts used by the test suites: every named knot in the
/// catalog, each with tb != 0.
pub fn catalog_knots() -> Vec<(String, FrontDiagram)> {
    let mut knots = vec![
        ("unknot".to_string(), unknot_front()),
        ("shark".to_string(), shark_front()),
    ];
    for k in 2..=6 {
        knots.push((format!("K_{k}"), k_k_front(k).unwrap()));
    }
    knots
}
