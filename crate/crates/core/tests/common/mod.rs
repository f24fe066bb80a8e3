//! Shared helpers for the integration suites: random generators and the
//! independent signature oracle (characteristic polynomial + Sturm chains).
//! Everything here is deliberately separate from the library's own
//! algorithms so the two sides of each check stay independent.
//!
//! Each integration test compiles its own copy, so not every binary uses
//! every helper.
#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use contact_surgery::exactalg::{Int, IntMatrix, Rational};
use contact_surgery::front::{FrontDiagram, MorseEvent};
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Fixed-algorithm RNG so the suites replay identically everywhere.
pub type TestRng = rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------
// Random inputs
// ---------------------------------------------------------------------

pub fn random_matrix(rng: &mut TestRng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| Int::from(rng.gen_range(-bound..=bound)))
}

pub fn random_symmetric(rng: &mut TestRng, n: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let v = Int::from(rng.gen_range(-bound..=bound));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// A random valid front word: random inserts/swaps, then close everything.
pub fn random_front(rng: &mut TestRng, steps: usize) -> FrontDiagram {
    let mut events = Vec::new();
    let mut live = 0usize;
    for _ in 0..steps {
        let roll = rng.gen_range(0..100);
        if live < 2 || roll < 35 {
            let slot = rng.gen_range(1..=live + 1);
            events.push(MorseEvent::LeftCusp(slot));
            live += 2;
        } else if roll < 70 {
            let slot = rng.gen_range(1..=live - 1);
            events.push(MorseEvent::Crossing(slot));
        } else {
            let slot = rng.gen_range(1..=live - 1);
            events.push(MorseEvent::RightCusp(slot));
            live -= 2;
        }
    }
    while live > 0 {
        let slot = rng.gen_range(1..=live - 1);
        events.push(MorseEvent::RightCusp(slot));
        live -= 2;
    }
    let front = FrontDiagram::from_word(events).expect("generated word is valid");
    let seeds = (0..front.component_count()).map(|_| rng.gen()).collect();
    let mut front = FrontDiagram::with_seeds(front.events().to_vec(), seeds).unwrap();
    let count = front.component_count();
    if count > 0 && rng.gen_bool(0.3) {
        let comp = rng.gen_range(0..count);
        front.set_label(comp, Some(format!("N{comp}"))).unwrap();
    }
    front
}

// ---------------------------------------------------------------------
// Signature oracle: characteristic polynomial + Sturm chains
// ---------------------------------------------------------------------

/// Polynomial with exact rational coefficients, lowest degree first.
type Poly = Vec<Rational>;

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_derivative(p: &Poly) -> Poly {
    let mut out: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from(Int::from(i)))
        .collect();
    poly_trim(&mut out);
    out
}

/// Remainder of `a / b` (b nonzero).
fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let factor = r.last().unwrap() / &lead;
        for i in 0..=db {
            let delta = &factor * &b[i];
            let idx = dr - db + i;
            r[idx] = &r[idx] - &delta;
        }
        poly_trim(&mut r);
        if r.len() > dr {
            panic!("division failed to reduce degree");
        }
    }
    r
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Sign of `p` evaluated at zero (constant term) skipping exact zeros.
fn sign_at_zero(p: &Poly) -> i64 {
    match p.first() {
        Some(c) if c.is_positive() => 1,
        Some(c) if c.is_negative() => -1,
        _ => 0,
    }
}

fn sign_at_infinity(p: &Poly, positive: bool) -> i64 {
    let Some(lead) = p.last() else { return 0 };
    let deg = p.len() - 1;
    let lead_sign = if lead.is_positive() { 1 } else { -1 };
    if positive || deg.is_multiple_of(2) {
        lead_sign
    } else {
        -lead_sign
    }
}

fn sign_variations(signs: impl Iterator<Item = i64>) -> usize {
    let mut count = 0;
    let mut last = 0i64;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Counts distinct roots of `p` in `(0, +inf)` and `(-inf, 0)` via the
/// canonical Sturm chain.
fn sturm_distinct_roots(p: &Poly) -> (usize, usize) {
    let mut chain = vec![p.clone()];
    let d = poly_derivative(p);
    if !d.is_empty() {
        chain.push(d);
    }
    while chain.last().unwrap().len() > 1 {
        let n = chain.len();
        let mut r = poly_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        for c in &mut r {
            *c = -c.clone();
        }
        chain.push(r);
    }
    let v_zero = sign_variations(chain.iter().map(sign_at_zero));
    let v_pos = sign_variations(chain.iter().map(|q| sign_at_infinity(q, true)));
    let v_neg = sign_variations(chain.iter().map(|q| sign_at_infinity(q, false)));
    // Roots in (a, b] = V(a) - V(b); zero is never a root of the
    // polynomials we feed in (zero roots are stripped first).
    let positive = v_zero - v_pos;
    let negative = v_neg - v_zero;
    (positive, negative)
}

/// Characteristic polynomial of a symmetric integer matrix by the
/// Faddeev-LeVerrier recursion, exact over the rationals. Returns
/// `det(xI - M)` with lowest-degree coefficient first.
fn char_poly(m: &IntMatrix) -> Poly {
    let n = m.rows();
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from(m[(i, j)].clone())).collect())
        .collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n]; // M_0 = 0
    for k in 1..=n {
        // M_k = A * M_{k-1} + c_{n-k+1} * I
        let prev_c = coeffs[n - k + 1].clone();
        let mut mk = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for l in 0..n {
                    acc += &a[i][l] * &aux[l][j];
                }
                if i == j {
                    acc += &prev_c;
                }
                mk[i][j] = acc;
            }
        }
        // c_{n-k} = -tr(A * M_k) / k
        let mut trace = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                trace += &a[i][l] * &mk[l][i];
            }
        }
        coeffs[n - k] = -trace / Rational::from(Int::from(k as i64));
        aux = mk;
    }
    coeffs
}

/// Independent signature computation: strip zero roots from the
/// characteristic polynomial, then count sign agreements minus
/// disagreements with multiplicity via iterated Sturm chains.
pub fn signature_oracle(m: &IntMatrix) -> i64 {
    let mut p = char_poly(m);
    poly_trim(&mut p);
    // Strip roots at zero.
    while p.first().is_some_and(Zero::is_zero) {
        p.remove(0);
    }
    let mut positive = 0usize;
    let mut negative = 0usize;
    let mut q = p;
    while q.len() > 1 {
        let (pos, neg) = sturm_distinct_roots(&q);
        positive += pos;
        negative += neg;
        let d = poly_derivative(&q);
        if d.is_empty() {
            break;
        }
        q = poly_gcd(&q, &d);
        if q.len() <= 1 {
            break;
        }
        // Normalize the leading coefficient for stability of signs.
        let lead = q.last().unwrap().clone();
        for c in &mut q {
            *c = &*c / &lead;
        }
    }
    positive as i64 - negative as i64
}
