//! Diagonal ternary quadratic forms.
//!
//! Representation search is an exhaustive two-loop enumeration: x runs
//! to sqrt(m/alpha), y to sqrt of the remainder, and the rest is an
//! exact square test. The module also checks the hypotheses of the
//! Linnik representation theorem (quadratic residuosity decided per
//! prime power, not by a single Jacobi symbol), scans ranges for
//! unrepresented values, builds the 3/5, 7/17, 11/13 exponent-parity
//! form families, searches the six-prime systems that feed them, and
//! counts representations of binary forms as sums of three squares of
//! linear forms against the 48 * 2^omega(d) and 96 * 2^omega(p) bounds.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{factorize, factorize_u64, is_prime_u64, jacobi, jacobi_u64, primes_up_to};

#[derive(Debug, Error)]
pub enum TernaryError {
    #[error("form coefficients exceed the u64 search range")]
    FormTooLarge,
    #[error("coefficients must be positive")]
    ZeroCoefficient,
    #[error("scan range is empty")]
    EmptyRange,
    #[error("no family component lies in the window")]
    NotFound,
    #[error("m = {0} exceeds the enumeration cutoff 10^9")]
    TooLarge(u64),
    #[error("a must be positive and coprime to b")]
    BadAbInput,
    #[error("prime search budget exhausted")]
    SearchBudgetExhausted,
    #[error("binary form must be positive definite")]
    NotPositiveDefinite,
}

/// The form alpha x^2 + beta y^2 + gamma z^2 with positive
/// coefficients. Coefficients are arbitrary-precision because the
/// exponent-parity families grow far past machine words; the search
/// operations require them to fit in u64.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalTernaryForm {
    pub alpha: BigUint,
    pub beta: BigUint,
    pub gamma: BigUint,
}

impl DiagonalTernaryForm {
    pub fn new(alpha: u64, beta: u64, gamma: u64) -> Self {
        assert!(alpha > 0 && beta > 0 && gamma > 0);
        DiagonalTernaryForm {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
        }
    }

    pub fn from_biguint(alpha: BigUint, beta: BigUint, gamma: BigUint) -> Self {
        assert!(!alpha.is_zero() && !beta.is_zero() && !gamma.is_zero());
        DiagonalTernaryForm { alpha, beta, gamma }
    }

    fn small(&self) -> Result<(u64, u64, u64), TernaryError> {
        match (
            self.alpha.to_u64(),
            self.beta.to_u64(),
            self.gamma.to_u64(),
        ) {
            (Some(a), Some(b), Some(g)) => Ok((a, b, g)),
            _ => Err(TernaryError::FormTooLarge),
        }
    }

    /// Exact value of the form at an integer triple.
    pub fn eval(&self, x: i64, y: i64, z: i64) -> BigUint {
        let sq = |v: i64| BigUint::from(v.unsigned_abs()).pow(2);
        &self.alpha * sq(x) + &self.beta * sq(y) + &self.gamma * sq(z)
    }
}

/// One solution of alpha x^2 + beta y^2 + gamma z^2 = m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Representation {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub primitive: bool,
}

fn gcd3(x: i64, y: i64, z: i64) -> u64 {
    let g = x.unsigned_abs().gcd(&y.unsigned_abs());
    g.gcd(&z.unsigned_abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepresentMode {
    /// First canonical solution in the deterministic search order.
    First,
    /// All canonical solutions (nonnegative x, y, z, lexicographic).
    Canonical,
    /// All solutions over signs; each nonzero coordinate doubles.
    All,
    /// Count of all signed solutions, without materializing them.
    Count,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentOutcome {
    pub count: u64,
    pub witnesses: Vec<Representation>,
}

/// Exhaustive representation search.
///
/// Canonical solutions are visited with x ascending, then y ascending,
/// z the nonnegative root of the remainder; the order is deterministic
/// regardless of thread count.
pub fn represent(
    form: &DiagonalTernaryForm,
    m: u64,
    primitive_only: bool,
    mode: RepresentMode,
) -> Result<RepresentOutcome, TernaryError> {
    assert!(m >= 1);
    let (a, b, g) = form.small()?;
    let per_x = |x: u64| -> Vec<Representation> {
        let mut out = Vec::new();
        let rem_x = m - a * x * x;
        let mut y = 0u64;
        while b * y * y <= rem_x {
            let rem = rem_x - b * y * y;
            if rem % g == 0 {
                let zz = rem / g;
                let z = zz.isqrt();
                if z * z == zz {
                    let rep = Representation {
                        x: x as i64,
                        y: y as i64,
                        z: z as i64,
                        primitive: gcd3(x as i64, y as i64, z as i64) == 1,
                    };
                    if rep.primitive || !primitive_only {
                        debug_assert_eq!(form.eval(rep.x, rep.y, rep.z), BigUint::from(m));
                        out.push(rep);
                    }
                }
            }
            y += 1;
        }
        out
    };
    let x_max = (m / a).isqrt();
    if mode == RepresentMode::First {
        let first = (0..=x_max)
            .into_par_iter()
            .filter_map(|x| per_x(x).into_iter().next())
            .find_first(|_| true);
        return Ok(RepresentOutcome {
            count: first.iter().count() as u64,
            witnesses: first.into_iter().collect(),
        });
    }
    let canonical: Vec<Representation> = (0..=x_max)
        .into_par_iter()
        .flat_map_iter(per_x)
        .collect();
    let signed_weight =
        |r: &Representation| 1u64 << [r.x, r.y, r.z].iter().filter(|&&c| c != 0).count();
    Ok(match mode {
        RepresentMode::First => unreachable!(),
        RepresentMode::Canonical => RepresentOutcome {
            count: canonical.len() as u64,
            witnesses: canonical,
        },
        RepresentMode::Count => RepresentOutcome {
            count: canonical.iter().map(signed_weight).sum(),
            witnesses: Vec::new(),
        },
        RepresentMode::All => {
            let mut all = Vec::new();
            for rep in &canonical {
                let nz: Vec<usize> = [rep.x, rep.y, rep.z]
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, _)| i)
                    .collect();
                for mask in 0..1u32 << nz.len() {
                    let mut c = [rep.x, rep.y, rep.z];
                    for (bit, &pos) in nz.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            c[pos] = -c[pos];
                        }
                    }
                    all.push(Representation {
                        x: c[0],
                        y: c[1],
                        z: c[2],
                        primitive: rep.primitive,
                    });
                }
            }
            RepresentOutcome { count: all.len() as u64, witnesses: all }
        }
    })
}

// ---------------------------------------------------------------------------
// Linnik hypotheses
// ---------------------------------------------------------------------------

/// Is a a square modulo every prime power dividing n? n must be odd.
fn square_mod_all_prime_powers(a: &BigInt, n: &BigUint) -> bool {
    let n_fact = factorize(n).expect("modulus is positive");
    for (p, e) in n_fact.factors() {
        let pe = p.pow(*e);
        let mut res = (a % BigInt::from(pe.clone())).to_biguint().unwrap_or_else(|| {
            ((a % BigInt::from(pe.clone())) + BigInt::from(pe.clone()))
                .to_biguint()
                .unwrap()
        });
        res %= &pe;
        if res.is_zero() {
            continue;
        }
        // Strip the p-part of the residue: a square needs an even
        // valuation and a residue unit part.
        let mut v = 0u32;
        while (&res % p).is_zero() {
            res /= p;
            v += 1;
        }
        if v % 2 != 0 {
            return false;
        }
        if jacobi(&BigInt::from(res), p) != Ok(1) {
            return false;
        }
    }
    true
}

/// Per-condition report for the Linnik representation hypotheses on
/// (alpha, beta, gamma) with auxiliary prime s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinnikReport {
    pub pairwise_coprime: bool,
    pub all_odd: bool,
    pub s_prime: bool,
    pub s_coprime: bool,
    pub neg_ab_square_mod_gamma: bool,
    pub neg_ag_square_mod_beta: bool,
    pub neg_bg_square_mod_alpha: bool,
    /// alpha = beta = gamma (mod 4): a consequence, reported as a
    /// cross-check.
    pub same_class_mod_4: bool,
    /// alpha + beta + gamma = 3 alpha beta gamma (mod 8): likewise.
    pub sum_identity_mod_8: bool,
    pub satisfied: bool,
}

pub fn check_linnik_conditions(form: &DiagonalTernaryForm, s: u64) -> LinnikReport {
    let (a, b, g) = (&form.alpha, &form.beta, &form.gamma);
    let pairwise_coprime =
        a.gcd(b).is_one() && a.gcd(g).is_one() && b.gcd(g).is_one();
    let two = BigUint::from(2u32);
    let all_odd = !(a % &two).is_zero() && !(b % &two).is_zero() && !(g % &two).is_zero();
    let s_prime = is_prime_u64(s);
    let s_big = BigUint::from(s);
    let s_coprime = a.gcd(&s_big).is_one()
        && b.gcd(&s_big).is_one()
        && g.gcd(&s_big).is_one()
        && s % 2 == 1;
    let neg = |x: &BigUint, y: &BigUint| -BigInt::from(x * y);
    let neg_ab_square_mod_gamma = square_mod_all_prime_powers(&neg(a, b), g);
    let neg_ag_square_mod_beta = square_mod_all_prime_powers(&neg(a, g), b);
    let neg_bg_square_mod_alpha = square_mod_all_prime_powers(&neg(b, g), a);
    let m4 = BigUint::from(4u32);
    let same_class_mod_4 = a % &m4 == b % &m4 && b % &m4 == g % &m4;
    let m8 = BigUint::from(8u32);
    let sum_identity_mod_8 = (a + b + g) % &m8 == (a * b * g * 3u32) % &m8;
    let satisfied = pairwise_coprime
        && all_odd
        && s_prime
        && s_coprime
        && neg_ab_square_mod_gamma
        && neg_ag_square_mod_beta
        && neg_bg_square_mod_alpha;
    LinnikReport {
        pairwise_coprime,
        all_odd,
        s_prime,
        s_coprime,
        neg_ab_square_mod_gamma,
        neg_ag_square_mod_beta,
        neg_bg_square_mod_alpha,
        same_class_mod_4,
        sum_identity_mod_8,
        satisfied,
    }
}

// ---------------------------------------------------------------------------
// Range scans
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanSample {
    All,
    /// Deterministic pseudorandom sample of `count` filtered values.
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub m: u64,
    pub witness: Option<Representation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub records: Vec<ScanRecord>,
}

impl ScanReport {
    /// Values for which no (primitive) representation was found.
    pub fn failures(&self) -> Vec<u64> {
        self.records
            .iter()
            .filter(|r| r.witness.is_none())
            .map(|r| r.m)
            .collect()
    }
}

fn passes_filters(m: u64, filters: &[(u64, Vec<u64>)]) -> bool {
    filters.iter().all(|(modulus, classes)| classes.contains(&(m % modulus)))
}

/// Search every (sampled) value in (lo, hi] passing the residue filters
/// for a primitive representation.
pub fn scan_range(
    form: &DiagonalTernaryForm,
    lo: u64,
    hi: u64,
    filters: &[(u64, Vec<u64>)],
    sample: ScanSample,
) -> Result<ScanReport, TernaryError> {
    if lo >= hi {
        return Err(TernaryError::EmptyRange);
    }
    form.small()?;
    let targets: Vec<u64> = match sample {
        ScanSample::All => (lo + 1..=hi).filter(|&m| passes_filters(m, filters)).collect(),
        ScanSample::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = std::collections::BTreeSet::new();
            let mut attempts = 0u64;
            while picked.len() < count {
                attempts += 1;
                assert!(
                    attempts < 10_000_000,
                    "residue filters admit too few values in the range"
                );
                let m = rng.gen_range(lo + 1..=hi);
                if passes_filters(m, filters) {
                    picked.insert(m);
                }
            }
            picked.into_iter().collect()
        }
    };
    let records: Vec<ScanRecord> = targets
        .into_par_iter()
        .map(|m| {
            let outcome = represent(form, m, true, RepresentMode::First)
                .expect("coefficients already validated");
            ScanRecord { m, witness: outcome.witnesses.into_iter().next() }
        })
        .collect();
    Ok(ScanReport { records })
}

// ---------------------------------------------------------------------------
// Form families
// ---------------------------------------------------------------------------

/// Smallest p^e q^f in the open interval (lo, hi) with e positive even
/// and f positive even (q_exp_odd false) or odd and at least 1
/// (q_exp_odd true).
pub fn family_component(
    p: u64,
    q: u64,
    q_exp_odd: bool,
    lo: &BigUint,
    hi: &BigUint,
) -> Option<BigUint> {
    let p2 = BigUint::from(p).pow(2);
    let q2 = BigUint::from(q).pow(2);
    let mut best: Option<BigUint> = None;
    let mut p_part = p2.clone();
    while &p_part < hi {
        let mut v = if q_exp_odd {
            &p_part * q
        } else {
            &p_part * &q2
        };
        while &v < hi {
            if &v > lo {
                if best.as_ref().is_none_or(|b| &v < b) {
                    best = Some(v.clone());
                }
                break;
            }
            v *= &q2;
        }
        p_part *= &p2;
    }
    best
}

/// The exponent-parity form family at threshold D: alpha = 3^even
/// 5^even in (D, 1.01D), beta = 7^even 17^odd and gamma = 11^even
/// 13^odd in (1.01D, 1.03D). The windows are compared exactly.
pub fn build_form_family(d: &BigUint) -> Result<DiagonalTernaryForm, TernaryError> {
    let lo_a = d * 100u32;
    let hi_a = d * 101u32;
    let lo_bg = d * 101u32;
    let hi_bg = d * 103u32;
    // Work with 100 * value so the 1.01/1.03 comparisons stay integral.
    let alpha = scaled_component(3, 5, false, &lo_a, &hi_a)?;
    let beta = scaled_component(7, 17, true, &lo_bg, &hi_bg)?;
    let gamma = scaled_component(11, 13, true, &lo_bg, &hi_bg)?;
    Ok(DiagonalTernaryForm::from_biguint(alpha, beta, gamma))
}

/// Find v with lo < 100 v < hi under the parity pattern.
fn scaled_component(
    p: u64,
    q: u64,
    q_exp_odd: bool,
    lo100: &BigUint,
    hi100: &BigUint,
) -> Result<BigUint, TernaryError> {
    let p2 = BigUint::from(p).pow(2);
    let q2 = BigUint::from(q).pow(2);
    let mut best: Option<BigUint> = None;
    let mut p_part = p2.clone();
    while &(&p_part * 100u32) < hi100 {
        let mut v = if q_exp_odd { &p_part * q } else { &p_part * &q2 };
        loop {
            let v100 = &v * 100u32;
            if &v100 >= hi100 {
                break;
            }
            if &v100 > lo100 {
                if best.as_ref().is_none_or(|b| &v < b) {
                    best = Some(v.clone());
                }
                break;
            }
            v *= &q2;
        }
        p_part *= &p2;
    }
    best.ok_or(TernaryError::NotFound)
}

// ---------------------------------------------------------------------------
// Six-prime systems
// ---------------------------------------------------------------------------

/// A six-prime system for building form families in a congruence class
/// b mod a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcPrimes {
    pub primes: [u64; 6],
    /// Normalized modulus (a multiple of 4).
    pub modulus: u64,
    /// Normalized odd residue.
    pub residue: u64,
    /// The three derived Jacobi symbols (-p4 p5 / p6), (-p5 p6 / p4),
    /// (-p6 p4 / p5); all must be 1.
    pub symbols: [i32; 3],
}

const ABC_SIEVE_LIMIT: u64 = 3_000_000;

/// Six primes p1..p6 with p1, p2, p3 = 1 (mod a), p4, p5, p6 = b
/// (mod a), p4..p6 quadratic residues modulo each of p1..p3, p5 a QR
/// mod p4, p6 a QR mod p5, and (p6 / p4) = b (mod 4). Inputs are
/// normalized so that 4 divides the modulus and the residue is odd.
pub fn find_abc_primes(a: u64, b: i64) -> Result<AbcPrimes, TernaryError> {
    if a == 0 || BigInt::from(a).gcd(&BigInt::from(b)) != BigInt::one() {
        return Err(TernaryError::BadAbInput);
    }
    let modulus = match a % 4 {
        0 => a,
        2 => 2 * a,
        _ => 4 * a,
    };
    // Odd representative of b mod a that is a unit mod the new modulus.
    let base = b.rem_euclid(a as i64) as u64;
    let residue = (0..modulus / a)
        .map(|k| base + k * a)
        .find(|r| r % 2 == 1)
        .expect("an odd lift exists since gcd(a, b) = 1");
    let primes = primes_up_to(ABC_SIEVE_LIMIT);
    let class_1: Vec<u64> = primes.iter().copied().filter(|p| p % modulus == 1).collect();
    let class_b: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|p| p % modulus == residue % modulus)
        .collect();
    let p123: [u64; 3] = class_1
        .get(0..3)
        .ok_or(TernaryError::SearchBudgetExhausted)?
        .try_into()
        .unwrap();
    let qr = |x: u64, p: u64| jacobi_u64(x as i64, p) == Ok(1);
    let qr_all_123 = |x: u64| p123.iter().all(|&p| qr(x, p));
    let p4 = *class_b
        .iter()
        .find(|&&p| qr_all_123(p))
        .ok_or(TernaryError::SearchBudgetExhausted)?;
    let p5 = *class_b
        .iter()
        .find(|&&p| p != p4 && qr_all_123(p) && qr(p, p4))
        .ok_or(TernaryError::SearchBudgetExhausted)?;
    let want_symbol = if residue % 4 == 1 { 1 } else { -1 };
    let p6 = *class_b
        .iter()
        .find(|&&p| {
            p != p4
                && p != p5
                && qr_all_123(p)
                && qr(p, p5)
                && jacobi_u64(p as i64, p4) == Ok(want_symbol)
        })
        .ok_or(TernaryError::SearchBudgetExhausted)?;
    let sym = |num: i64, den: u64| jacobi_u64(num, den).expect("odd prime modulus");
    let symbols = [
        sym(-((p4 * p5) as i64), p6),
        sym(-((p5 * p6) as i64), p4),
        sym(-((p6 * p4) as i64), p5),
    ];
    assert_eq!(symbols, [1, 1, 1], "reciprocity consequence failed");
    Ok(AbcPrimes {
        primes: [p123[0], p123[1], p123[2], p4, p5, p6],
        modulus,
        residue,
        symbols,
    })
}

// ---------------------------------------------------------------------------
// Sums of three squares
// ---------------------------------------------------------------------------

/// t(m): the number of primitive representations of m as a sum of
/// three squares, counted over all signs and orders.
pub fn r3_primitive(m: u64) -> Result<u64, TernaryError> {
    if m > 1_000_000_000 {
        return Err(TernaryError::TooLarge(m));
    }
    assert!(m >= 1);
    let total: u64 = (0..=m.isqrt())
        .into_par_iter()
        .map(|x| {
            let mut sub = 0u64;
            let rem_x = m - x * x;
            let mut y = 0u64;
            while y * y <= rem_x {
                let zz = rem_x - y * y;
                let z = zz.isqrt();
                if z * z == zz && gcd3(x as i64, y as i64, z as i64) == 1 {
                    let nonzero = [x, y, z].iter().filter(|&&c| c != 0).count();
                    sub += 1 << nonzero;
                }
                y += 1;
            }
            sub
        })
        .sum();
    Ok(total)
}

/// Largest integer whose square divides n.
pub fn square_root_part(n: u64) -> u64 {
    factorize_u64(n)
        .into_iter()
        .map(|(p, e)| p.pow(e / 2))
        .product()
}

/// Counts for representing p x^2 + 2 q x y + r y^2 as a sum of three
/// squares of linear forms, against both lemma bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSquareReport {
    /// All representations (proper only when the flag was set).
    pub total: u64,
    /// Representations with coprime cross products.
    pub proper: u64,
    /// 48 * 2^omega(d); proper count must be 0 when gcd(p,q,r) > 1.
    pub gauss_bound: u64,
    pub gauss_ok: bool,
    /// Representations with coprime (a1,a2,a3) and cross products
    /// divisible by delta = gcd(p,q,r).
    pub conditioned: u64,
    /// 96 * 2^omega(p) tau(d/delta^2) gcd(d/delta^2, p)^[1/2].
    pub conditioned_bound: u64,
    pub conditioned_ok: bool,
}

/// All signed integer triples with sum of squares n.
fn signed_triples(n: u64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    let mut x = 0u64;
    while x * x <= n {
        let rem_x = n - x * x;
        let mut y = 0u64;
        while y * y <= rem_x {
            let zz = rem_x - y * y;
            let z = zz.isqrt();
            if z * z == zz {
                let base = [x as i64, y as i64, z as i64];
                let nz: Vec<usize> =
                    (0..3).filter(|&i| base[i] != 0).collect();
                for mask in 0..1u32 << nz.len() {
                    let mut c = base;
                    for (bit, &pos) in nz.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            c[pos] = -c[pos];
                        }
                    }
                    out.push(c);
                }
            }
            y += 1;
        }
        x += 1;
    }
    out
}

pub fn count_three_square_linear_reps(
    p: u64,
    q: i64,
    r: u64,
    proper_only: bool,
) -> Result<ThreeSquareReport, TernaryError> {
    let d = p as i64 * r as i64 - q * q;
    if p == 0 || d <= 0 {
        return Err(TernaryError::NotPositiveDefinite);
    }
    let d = d as u64;
    let delta = p.gcd(&q.unsigned_abs()).gcd(&r);
    let a_list = signed_triples(p);
    let b_list = signed_triples(r);
    let mut total = 0u64;
    let mut proper = 0u64;
    let mut conditioned = 0u64;
    for a in &a_list {
        for b in &b_list {
            if a[0] * b[0] + a[1] * b[1] + a[2] * b[2] != q {
                continue;
            }
            let cross = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            let e = gcd3(cross[0], cross[1], cross[2]);
            let is_proper = e == 1;
            if is_proper {
                proper += 1;
            }
            if !proper_only || is_proper {
                total += 1;
            }
            if gcd3(a[0], a[1], a[2]) == 1 && cross.iter().all(|&c| c % delta as i64 == 0) {
                conditioned += 1;
            }
        }
    }
    let omega = |n: u64| factorize_u64(n).len() as u32;
    let gauss_bound = 48 * (1u64 << omega(d));
    let gauss_ok = if delta != 1 { proper == 0 } else { proper <= gauss_bound };
    let d_red = d / (delta * delta);
    let tau: u64 = factorize_u64(d_red).iter().map(|&(_, e)| e as u64 + 1).product();
    let conditioned_bound =
        96 * (1u64 << omega(p)) * tau * square_root_part(d_red.gcd(&p));
    let conditioned_ok = conditioned <= conditioned_bound;
    Ok(ThreeSquareReport {
        total,
        proper,
        gauss_bound,
        gauss_ok,
        conditioned,
        conditioned_bound,
        conditioned_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn form_83_91_99() -> DiagonalTernaryForm {
        DiagonalTernaryForm::new(83, 91, 99)
    }

    #[test]
    fn represent_273_trivially() {
        let out = represent(&form_83_91_99(), 273, true, RepresentMode::Canonical).unwrap();
        assert_eq!(out.count, 1);
        let rep = out.witnesses[0];
        assert_eq!((rep.x, rep.y, rep.z), (1, 1, 1));
        assert!(rep.primitive);
    }

    #[test]
    fn represent_3_with_eight_signed_variants() {
        let out =
            represent(&DiagonalTernaryForm::new(1, 1, 1), 3, false, RepresentMode::All).unwrap();
        assert_eq!(out.count, 8);
        for rep in &out.witnesses {
            assert_eq!(rep.x.abs(), 1);
            assert_eq!(rep.y.abs(), 1);
            assert_eq!(rep.z.abs(), 1);
        }
    }

    #[test]
    fn the_exceptional_value_is_not_represented() {
        let out =
            represent(&form_83_91_99(), 689469562, false, RepresentMode::Count).unwrap();
        assert_eq!(out.count, 0);
    }

    #[test]
    fn count_matches_triple_loop_oracle() {
        let form = DiagonalTernaryForm::new(1, 1, 1);
        for m in 1..=600u64 {
            let fast = represent(&form, m, false, RepresentMode::Count).unwrap().count;
            let mut slow = 0u64;
            let bound = m.isqrt() as i64;
            for x in -bound..=bound {
                for y in -bound..=bound {
                    for z in -bound..=bound {
                        if (x * x + y * y + z * z) as u64 == m {
                            slow += 1;
                        }
                    }
                }
            }
            assert_eq!(fast, slow, "m={m}");
        }
    }

    #[test]
    fn witnesses_satisfy_equation_exactly() {
        let form = DiagonalTernaryForm::new(5, 12, 31);
        for m in [48u64, 100, 2024, 9999, 54321] {
            let out = represent(&form, m, false, RepresentMode::All).unwrap();
            for rep in &out.witnesses {
                assert_eq!(form.eval(rep.x, rep.y, rep.z), BigUint::from(m));
            }
        }
    }

    #[test]
    fn first_mode_is_deterministic() {
        let form = form_83_91_99();
        let a = represent(&form, 10_000_019, true, RepresentMode::First).unwrap();
        let b = represent(&form, 10_000_019, true, RepresentMode::First).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.count, 1);
    }

    #[test]
    fn linnik_conditions_for_the_paper_triple() {
        let report = check_linnik_conditions(&form_83_91_99(), 5);
        assert!(report.satisfied, "{report:?}");
        assert!(report.same_class_mod_4);
        assert!(report.sum_identity_mod_8);
    }

    #[test]
    fn linnik_conditions_for_the_family_pattern() {
        // 3^2 5^2, 7^2 17, 11^2 13 with auxiliary prime 19.
        let form = DiagonalTernaryForm::new(225, 833, 1573);
        let report = check_linnik_conditions(&form, 19);
        assert!(report.satisfied, "{report:?}");
        assert!(report.same_class_mod_4);
        assert!(report.sum_identity_mod_8);
    }

    #[test]
    fn linnik_rejections() {
        // Even coefficient.
        assert!(!check_linnik_conditions(&DiagonalTernaryForm::new(2, 3, 5), 7).satisfied);
        // s divides a coefficient (7 | 91, 11 | 99).
        assert!(!check_linnik_conditions(&form_83_91_99(), 7).s_coprime);
        assert!(!check_linnik_conditions(&form_83_91_99(), 11).s_coprime);
        // Per-prime-power residuosity can fail even when the Jacobi
        // symbol over the full modulus is 1: -7 = 2 (mod 9) is a
        // nonresidue mod 9 although (-7/9) = (-7/3)^2 = 1.
        assert_eq!(jacobi_u64(-7, 9), Ok(1));
        let bad = check_linnik_conditions(&DiagonalTernaryForm::new(7, 1, 9), 19);
        assert!(!bad.neg_ab_square_mod_gamma);
        assert!(!bad.satisfied);
    }

    #[test]
    fn scan_subrange_of_the_remark() {
        let filters = vec![(4u64, vec![2, 3]), (5u64, vec![2, 3])];
        let report = scan_range(
            &form_83_91_99(),
            689469562,
            689470062,
            &filters,
            ScanSample::All,
        )
        .unwrap();
        assert!(!report.records.is_empty());
        assert!(report.failures().is_empty(), "{:?}", report.failures());
    }

    #[test]
    fn scan_classical_three_squares() {
        let filters = vec![(8u64, vec![1, 2, 3, 5, 6])];
        let report = scan_range(
            &DiagonalTernaryForm::new(1, 1, 1),
            1,
            100,
            &filters,
            ScanSample::All,
        )
        .unwrap();
        assert!(report.failures().is_empty());
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let filters = vec![(4u64, vec![2, 3]), (5u64, vec![2, 3])];
        let sample = ScanSample::Random { count: 5, seed: 42 };
        let a = scan_range(&form_83_91_99(), 689469562, 700000000, &filters, sample.clone())
            .unwrap();
        let b = scan_range(&form_83_91_99(), 689469562, 700000000, &filters, sample).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records.len(), 5);
        assert!(a.failures().is_empty());
        for rec in &a.records {
            assert!(passes_filters(rec.m, &filters));
        }
    }

    #[test]
    fn family_component_example() {
        let v = family_component(
            3,
            5,
            false,
            &BigUint::from(2000u32),
            &BigUint::from(2100u32),
        );
        assert_eq!(v, Some(BigUint::from(2025u32)));
    }

    #[test]
    fn form_family_at_a_feasible_threshold() {
        // Smallest-digit threshold found by an offline exponent search;
        // the windows only line up for thresholds of this size.
        let d = BigUint::from_str("5484491410676052658371906").unwrap();
        let form = build_form_family(&d).unwrap();
        assert_eq!(form.alpha, BigUint::from(3u32).pow(46) * BigUint::from(5u32).pow(4));
        assert_eq!(form.beta, BigUint::from(7u32).pow(22) * BigUint::from(17u32).pow(5));
        assert_eq!(form.gamma, BigUint::from(11u32).pow(12) * BigUint::from(13u32).pow(11));
        // Window checks, exactly.
        assert!(form.alpha > d && &form.alpha * 100u32 < &d * 101u32);
        for c in [&form.beta, &form.gamma] {
            assert!(c * 100u32 > &d * 101u32 && c * 100u32 < &d * 103u32);
        }
        let report = check_linnik_conditions(&form, 19);
        assert!(report.satisfied, "{report:?}");
        assert!(report.same_class_mod_4);
        assert!(report.sum_identity_mod_8);
    }

    #[test]
    fn form_family_not_found_for_small_thresholds() {
        assert!(matches!(
            build_form_family(&BigUint::from(100u32)),
            Err(TernaryError::NotFound)
        ));
    }

    #[test]
    fn abc_primes_for_residue_one() {
        let sys = find_abc_primes(4, 1).unwrap();
        assert_eq!(sys.modulus, 4);
        assert_eq!(sys.residue, 1);
        verify_abc(&sys);
    }

    #[test]
    fn abc_primes_for_residue_three() {
        let sys = find_abc_primes(4, 3).unwrap();
        assert_eq!(sys.residue, 3);
        for &p in &sys.primes[3..] {
            assert_eq!(p % 4, 3);
        }
        verify_abc(&sys);
    }

    fn verify_abc(sys: &AbcPrimes) {
        let [p1, p2, p3, p4, p5, p6] = sys.primes;
        for p in sys.primes {
            assert!(is_prime_u64(p));
        }
        for p in [p1, p2, p3] {
            assert_eq!(p % sys.modulus, 1);
        }
        for p in [p4, p5, p6] {
            assert_eq!(p % sys.modulus, sys.residue % sys.modulus);
            for q in [p1, p2, p3] {
                assert_eq!(jacobi_u64(p as i64, q), Ok(1));
            }
        }
        assert_eq!(jacobi_u64(p5 as i64, p4), Ok(1));
        assert_eq!(jacobi_u64(p6 as i64, p5), Ok(1));
        let sym = jacobi_u64(p6 as i64, p4).unwrap();
        assert_eq!(sym.rem_euclid(4) as u64, sys.residue % 4);
        assert_eq!(sys.symbols, [1, 1, 1]);
    }

    #[test]
    fn abc_rejects_bad_input() {
        assert!(find_abc_primes(4, 2).is_err());
        assert!(find_abc_primes(0, 1).is_err());
    }

    #[test]
    fn r3_primitive_small_values() {
        assert_eq!(r3_primitive(1).unwrap(), 6);
        assert_eq!(r3_primitive(2).unwrap(), 12);
        assert_eq!(r3_primitive(3).unwrap(), 8);
        assert_eq!(r3_primitive(7).unwrap(), 0);
        for k in 1..=50u64 {
            assert_eq!(r3_primitive(4 * k).unwrap(), 0, "m={}", 4 * k);
        }
        assert!(r3_primitive(2_000_000_000).is_err());
    }

    #[test]
    fn r3_primitive_zero_pattern() {
        for m in 1..=3000u64 {
            let t = r3_primitive(m).unwrap();
            let excluded = m % 4 == 0 || m % 8 == 7;
            assert_eq!(t == 0, excluded, "m={m} t={t}");
        }
    }

    #[test]
    fn three_square_linear_reps_examples() {
        // x^2 + y^2: d = 1, 24 proper representations.
        let rep = count_three_square_linear_reps(1, 0, 1, true).unwrap();
        assert_eq!(rep.proper, 24);
        assert_eq!(rep.gauss_bound, 48);
        assert!(rep.gauss_ok && rep.conditioned_ok);
        // Imprimitive form: no proper representations at all.
        let rep = count_three_square_linear_reps(2, 0, 2, false).unwrap();
        assert_eq!(rep.proper, 0);
        assert!(rep.gauss_ok);
        // Degenerate input.
        assert!(count_three_square_linear_reps(1, 1, 1, true).is_err());
    }

    #[test]
    fn three_square_bounds_on_random_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 100 {
            let p = rng.gen_range(1..=25u64);
            let q = rng.gen_range(-12..=12i64);
            let r = rng.gen_range(1..=25u64);
            let d = p as i64 * r as i64 - q * q;
            if d <= 0 || d > 500 {
                continue;
            }
            let rep = count_three_square_linear_reps(p, q, r, false).unwrap();
            assert!(rep.gauss_ok, "p={p} q={q} r={r}: {rep:?}");
            assert!(rep.conditioned_ok, "p={p} q={q} r={r}: {rep:?}");
            tested += 1;
        }
    }
}
