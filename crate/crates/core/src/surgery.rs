//! Contact surgery coefficients and the reduction of rational contact
//! surgeries to contact (+1)/(-1)-surgeries.
//!
//! A negative coefficient `r` expands through its negative continued
//! fraction `r = r_1 + 1 - 1/(r_2 - 1/(... - 1/r_n))` with all terms at
//! most -2: the knot gets `|r_1 + 2|` zigzags, and each further term
//! contributes a stabilized push-off, all with coefficient -1. A positive
//! `r = p/q` first splits off `k` push-offs with coefficient +1 (where
//! `q - kp < 0`) and a residual negative surgery `p/(q - kp)` on the last.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{Int, Rational};
use crate::front::{AbstractLinkData, FrontDiagram, FrontError, LinkData, Zigzag};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("surgery coefficient 0 is excluded")]
    ZeroCoefficient,
    #[error("component {} carries an infinite coefficient (no surgery)", component + 1)]
    InfiniteCoefficient { component: usize },
    #[error("expected a negative coefficient, found {found}")]
    NotNegative { found: String },
    #[error("expected a positive coefficient, found {found}")]
    NotPositive { found: String },
    #[error("continued fraction must be nonempty")]
    EmptyContinuedFraction,
    #[error("continued fraction term {term} exceeds -2")]
    TermTooLarge { term: String },
    #[error("k = {k} does not satisfy q - k*p < 0")]
    InvalidPushOffCount { k: String },
    #[error("zigzag split {up}+{down} does not match the required {expected}")]
    BadZigzagSplit {
        up: usize,
        down: usize,
        expected: usize,
    },
    #[error("expected {expected} zigzag splits, got {given}")]
    BadChoiceLength { expected: usize, given: usize },
    #[error("coefficient count {coefficients} does not match component count {components}")]
    CoefficientCountMismatch {
        coefficients: usize,
        components: usize,
    },
    #[error(transparent)]
    Front(#[from] FrontError),
}

/// A contact surgery coefficient measured against the contact framing:
/// a nonzero rational or the infinity marker (no surgery).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurgeryCoefficient {
    Finite(Rational),
    Infinity,
}

impl SurgeryCoefficient {
    pub fn finite(r: Rational) -> Result<Self, SurgeryError> {
        if r.is_zero() {
            return Err(SurgeryError::ZeroCoefficient);
        }
        Ok(SurgeryCoefficient::Finite(r))
    }

    pub fn from_int(n: i64) -> Result<Self, SurgeryError> {
        Self::finite(Rational::from(Int::from(n)))
    }

    pub fn plus_one() -> Self {
        SurgeryCoefficient::Finite(Rational::one())
    }

    pub fn minus_one() -> Self {
        SurgeryCoefficient::Finite(-Rational::one())
    }

    pub fn is_plus_one(&self) -> bool {
        matches!(self, SurgeryCoefficient::Finite(r) if r.is_one())
    }

    pub fn is_minus_one(&self) -> bool {
        matches!(self, SurgeryCoefficient::Finite(r) if (-r).is_one())
    }

    pub fn is_unit(&self) -> bool {
        self.is_plus_one() || self.is_minus_one()
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            SurgeryCoefficient::Finite(r) => Some(r),
            SurgeryCoefficient::Infinity => None,
        }
    }
}

/// The topological surgery coefficient of a contact `r`-surgery along a
/// knot with Thurston-Bennequin invariant `tb` is `tb + r`.
pub fn contact_to_topological(coefficient: &Rational, tb: &Int) -> Rational {
    Rational::from(tb.clone()) + coefficient
}

/// Negative continued fraction `r_1 + 1 - 1/(r_2 - 1/(... - 1/r_n))`,
/// all terms at most -2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    terms: Vec<Int>,
}

impl ContinuedFraction {
    pub fn terms(&self) -> &[Int] {
        &self.terms
    }

    /// Zigzag count per term: `|r_i + 2|`.
    pub fn zigzag_counts(&self) -> Vec<usize> {
        self.terms
            .iter()
            .map(|t| {
                let missing = -(t + Int::from(2));
                usize::try_from(missing.max(Int::zero())).unwrap()
            })
            .collect()
    }
}

/// Expands a negative rational into its unique continued fraction with all
/// terms at most -2.
pub fn neg_continued_fraction(r: &Rational) -> Result<ContinuedFraction, SurgeryError> {
    if !r.is_negative() {
        return Err(SurgeryError::NotNegative {
            found: r.to_string(),
        });
    }
    // r = r_1 + 1 - 1/(...), so the tail expansion x = c - 1/(...) with
    // c = floor(x) runs on x = r - 1 < -1.
    let mut x = r - Rational::one();
    let mut terms = Vec::new();
    loop {
        if x.is_integer() {
            terms.push(x.to_integer());
            break;
        }
        let c = x.floor().to_integer();
        let frac = &x - Rational::from(c.clone());
        terms.push(c);
        x = -frac.recip();
    }
    debug_assert!(terms.iter().all(|t| *t <= Int::from(-2)));
    Ok(ContinuedFraction { terms })
}

/// Evaluates `r_1 + 1 - 1/(r_2 - 1/(... - 1/r_n))`.
pub fn eval_continued_fraction(cf: &ContinuedFraction) -> Result<Rational, SurgeryError> {
    let terms = &cf.terms;
    if terms.is_empty() {
        return Err(SurgeryError::EmptyContinuedFraction);
    }
    for t in terms {
        if *t > Int::from(-2) {
            return Err(SurgeryError::TermTooLarge {
                term: t.to_string(),
            });
        }
    }
    let mut v = Rational::from(terms.last().unwrap().clone());
    for t in terms[..terms.len() - 1].iter().rev() {
        v = Rational::from(t.clone()) - v.recip();
    }
    Ok(v + Rational::one())
}

/// Where a component of an expanded diagram came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    /// Index of the component in the original diagram.
    pub origin: usize,
    /// Zigzags applied while creating this component: (up, down).
    pub zigzags: (usize, usize),
}

/// A Legendrian link with one contact surgery coefficient per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactSurgeryDiagram {
    link: LinkData,
    coefficients: Vec<SurgeryCoefficient>,
    provenance: Vec<Provenance>,
}

/// Zigzag policy used by [`ContactSurgeryDiagram::expand_all`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZigzagPolicy {
    AllDown,
    AllUp,
}

impl ContactSurgeryDiagram {
    pub fn new(
        link: LinkData,
        coefficients: Vec<SurgeryCoefficient>,
    ) -> Result<Self, SurgeryError> {
        if coefficients.len() != link.component_count() {
            return Err(SurgeryError::CoefficientCountMismatch {
                coefficients: coefficients.len(),
                components: link.component_count(),
            });
        }
        let provenance = (0..coefficients.len())
            .map(|i| Provenance {
                origin: i,
                zigzags: (0, 0),
            })
            .collect();
        Ok(ContactSurgeryDiagram {
            link,
            coefficients,
            provenance,
        })
    }

    pub fn from_front(
        front: FrontDiagram,
        coefficients: Vec<SurgeryCoefficient>,
    ) -> Result<Self, SurgeryError> {
        Self::new(LinkData::Front(front), coefficients)
    }

    pub fn from_abstract(
        link: AbstractLinkData,
        coefficients: Vec<SurgeryCoefficient>,
    ) -> Result<Self, SurgeryError> {
        Self::new(LinkData::Abstract(link), coefficients)
    }

    pub fn empty() -> Self {
        ContactSurgeryDiagram {
            link: LinkData::Front(FrontDiagram::empty()),
            coefficients: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn link(&self) -> &LinkData {
        &self.link
    }

    pub fn coefficients(&self) -> &[SurgeryCoefficient] {
        &self.coefficients
    }

    pub fn coefficient(&self, comp: usize) -> &SurgeryCoefficient {
        &self.coefficients[comp]
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn component_count(&self) -> usize {
        self.coefficients.len()
    }

    /// A diagram is reduced when every coefficient is +1 or -1.
    pub fn is_reduced(&self) -> bool {
        self.coefficients.iter().all(SurgeryCoefficient::is_unit)
    }

    /// Number of (+1)-components.
    pub fn plus_count(&self) -> usize {
        self.coefficients
            .iter()
            .filter(|c| c.is_plus_one())
            .count()
    }

    pub fn abstract_link(&self) -> AbstractLinkData {
        self.link.to_abstract()
    }

    /// Replaces the negative-coefficient component by the chain
    /// `K_1, ..., K_n` of its continued-fraction expansion, each with
    /// coefficient -1. `choices[i] = (up, down)` splits the `|r_i + 2|`
    /// zigzags of step `i`.
    pub fn expand_negative(
        &self,
        comp: usize,
        choices: &[(usize, usize)],
    ) -> Result<ContactSurgeryDiagram, SurgeryError> {
        let r = match self.coefficient(comp) {
            SurgeryCoefficient::Finite(r) => r.clone(),
            SurgeryCoefficient::Infinity => {
                return Err(SurgeryError::InfiniteCoefficient { component: comp })
            }
        };
        let cf = neg_continued_fraction(&r)?;
        let counts = cf.zigzag_counts();
        if choices.len() != counts.len() {
            return Err(SurgeryError::BadChoiceLength {
                expected: counts.len(),
                given: choices.len(),
            });
        }
        for (&(up, down), &need) in choices.iter().zip(&counts) {
            if up + down != need {
                return Err(SurgeryError::BadZigzagSplit {
                    up,
                    down,
                    expected: need,
                });
            }
        }

        let origin = self.provenance[comp].origin;
        let mut link = self.link.clone();
        let mut coefficients = self.coefficients.clone();
        let mut provenance = self.provenance.clone();
        coefficients[comp] = SurgeryCoefficient::minus_one();

        let mut target = comp;
        for (i, &(up, down)) in choices.iter().enumerate() {
            if i > 0 {
                link = link.push_off(target)?;
                target += 1;
                coefficients.insert(target, SurgeryCoefficient::minus_one());
                provenance.insert(
                    target,
                    Provenance {
                        origin,
                        zigzags: (0, 0),
                    },
                );
            }
            for _ in 0..down {
                link = link.stabilize(target, Zigzag::Down)?;
            }
            for _ in 0..up {
                link = link.stabilize(target, Zigzag::Up)?;
            }
            provenance[target].zigzags = (up, down);
        }
        Ok(ContactSurgeryDiagram {
            link,
            coefficients,
            provenance,
        })
    }

    /// Splits a positive `r = p/q` surgery into `k` push-off copies: +1 on
    /// the knot and the first `k - 1` push-offs, and the negative residue
    /// `r' = p/(q - kp)` on the last. `r = +1` is already canonical and is
    /// passed through untouched.
    pub fn expand_positive(
        &self,
        comp: usize,
        k: Option<&Int>,
    ) -> Result<ContactSurgeryDiagram, SurgeryError> {
        let r = match self.coefficient(comp) {
            SurgeryCoefficient::Finite(r) => r.clone(),
            SurgeryCoefficient::Infinity => {
                return Err(SurgeryError::InfiniteCoefficient { component: comp })
            }
        };
        if !r.is_positive() {
            return Err(SurgeryError::NotPositive {
                found: r.to_string(),
            });
        }
        if r.is_one() {
            return Ok(self.clone());
        }
        let p = r.numer().clone();
        let q = r.denom().clone();
        let k = match k {
            Some(k) => {
                if (&q - k * &p).is_negative() && k.is_positive() {
                    k.clone()
                } else {
                    return Err(SurgeryError::InvalidPushOffCount { k: k.to_string() });
                }
            }
            // Minimal k with q - kp < 0.
            None => (&q / &p) + 1,
        };
        let k_usize = usize::try_from(&k).expect("push-off count fits usize");
        let residue = Rational::new(p, q - &k * r.numer());
        debug_assert!(residue.is_negative());

        let origin = self.provenance[comp].origin;
        let mut link = self.link.clone();
        let mut coefficients = self.coefficients.clone();
        let mut provenance = self.provenance.clone();
        coefficients[comp] = SurgeryCoefficient::plus_one();
        let mut target = comp;
        for i in 0..k_usize {
            link = link.push_off(target)?;
            target += 1;
            let coeff = if i + 1 == k_usize {
                SurgeryCoefficient::Finite(residue.clone())
            } else {
                SurgeryCoefficient::plus_one()
            };
            coefficients.insert(target, coeff);
            provenance.insert(
                target,
                Provenance {
                    origin,
                    zigzags: (0, 0),
                },
            );
        }
        Ok(ContactSurgeryDiagram {
            link,
            coefficients,
            provenance,
        })
    }

    /// Expands every non-unit coefficient using all-down (or all-up)
    /// zigzags and minimal `k`; the result carries only +1/-1 coefficients.
    pub fn expand_all(&self, policy: ZigzagPolicy) -> Result<ContactSurgeryDiagram, SurgeryError> {
        self.check_expandable()?;
        let mut current = self.clone();
        loop {
            let Some(comp) = current
                .coefficients
                .iter()
                .position(|c| !c.is_unit()) else {
                return Ok(current);
            };
            let r = current.coefficient(comp).as_finite().unwrap().clone();
            if r.is_positive() {
                current = current.expand_positive(comp, None)?;
            } else {
                let cf = neg_continued_fraction(&r)?;
                let choices: Vec<(usize, usize)> = cf
                    .zigzag_counts()
                    .iter()
                    .map(|&n| match policy {
                        ZigzagPolicy::AllDown => (0, n),
                        ZigzagPolicy::AllUp => (n, 0),
                    })
                    .collect();
                current = current.expand_negative(comp, &choices)?;
            }
        }
    }

    /// Enumerates all zigzag choices: the variants form the Cartesian
    /// product of the `|r_i + 2| + 1` up/down splits over every continued
    /// fraction term of every expanded component, in lexicographic order of
    /// the up-counts (the all-down variant comes first). Positive
    /// coefficients use the minimal `k` throughout.
    pub fn expand_enumerate(&self) -> Result<Vec<ContactSurgeryDiagram>, SurgeryError> {
        self.check_expandable()?;
        // First reduce every positive coefficient so only negative ones
        // remain, then enumerate their zigzag splits.
        let mut base = self.clone();
        while let Some(comp) = base
            .coefficients
            .iter()
            .position(|c| c.as_finite().is_some_and(|r| !r.is_one() && r.is_positive()))
        {
            base = base.expand_positive(comp, None)?;
        }
        // Zigzag counts per remaining negative component, in order.
        let negatives: Vec<(usize, Vec<usize>)> = base
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_unit())
            .map(|(i, c)| {
                let cf = neg_continued_fraction(c.as_finite().unwrap())?;
                Ok((i, cf.zigzag_counts()))
            })
            .collect::<Result<_, SurgeryError>>()?;

        let slots: Vec<usize> = negatives
            .iter()
            .flat_map(|(_, counts)| counts.iter().copied())
            .collect();
        let mut variants = Vec::new();
        let mut ups = vec![0usize; slots.len()];
        loop {
            // Apply the current up-split vector, expanding back-to-front so
            // earlier component indices stay valid.
            let mut diagram = base.clone();
            let mut cursor = slots.len();
            for (comp, counts) in negatives.iter().rev() {
                cursor -= counts.len();
                let choices: Vec<(usize, usize)> = counts
                    .iter()
                    .enumerate()
                    .map(|(j, &n)| {
                        let up = ups[cursor + j];
                        (up, n - up)
                    })
                    .collect();
                diagram = diagram.expand_negative(*comp, &choices)?;
            }
            variants.push(diagram);
            // Next vector in lexicographic order.
            let mut pos = slots.len();
            loop {
                if pos == 0 {
                    return Ok(variants);
                }
                pos -= 1;
                if ups[pos] < slots[pos] {
                    ups[pos] += 1;
                    for u in &mut ups[pos + 1..] {
                        *u = 0;
                    }
                    break;
                }
            }
        }
    }

    fn check_expandable(&self) -> Result<(), SurgeryError> {
        for (i, c) in self.coefficients.iter().enumerate() {
            if matches!(c, SurgeryCoefficient::Infinity) {
                return Err(SurgeryError::InfiniteCoefficient { component: i });
            }
        }
        Ok(())
    }

    /// Side-by-side placement of two diagrams (connected sum of the
    /// surgered manifolds).
    pub fn disjoint_union(&self, other: &ContactSurgeryDiagram) -> ContactSurgeryDiagram {
        let offset = self.component_count();
        let link = self.link.disjoint_union(&other.link);
        let mut coefficients = self.coefficients.clone();
        coefficients.extend_from_slice(&other.coefficients);
        let mut provenance = self.provenance.clone();
        provenance.extend(other.provenance.iter().map(|p| Provenance {
            origin: p.origin + offset,
            zigzags: p.zigzags,
        }));
        ContactSurgeryDiagram {
            link,
            coefficients,
            provenance,
        }
    }
}
