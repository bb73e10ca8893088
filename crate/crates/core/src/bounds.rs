//! Rigorous numeric evaluation of the explicit analytic constants.
//!
//! Everything transcendental runs through a small directed-rounding
//! interval type: machine arithmetic rounds to nearest, so each
//! operation widens the result by enough ulps to enclose the true
//! value, and "satisfied" is only reported when the comparison holds
//! against the safe side of the enclosure. The integer-only checks
//! (the level-lowering inequality, divisor sums) are exact.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{factorize_u64, primes_up_to};
use crate::ternary::{r3_primitive, square_root_part};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("epsilon must lie in [0, 10^-3)")]
    EpsilonOutOfRange,
    #[error("preconditions violated: {0:?}")]
    Preconditions(Vec<String>),
    #[error("input exceeds the oracle-scale cutoff")]
    TooLarge,
}

// ---------------------------------------------------------------------------
// Directed-rounding intervals
// ---------------------------------------------------------------------------

/// A closed interval guaranteed to contain the true real value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite());
        Interval { lo: x, hi: x }
    }

    pub fn from_u64(n: u64) -> Self {
        if n <= 1 << 53 {
            Interval::point(n as f64)
        } else {
            let x = n as f64;
            Interval { lo: x.next_down(), hi: x.next_up() }
        }
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        if let Some(small) = n.to_u64() {
            return Interval::from_u64(small);
        }
        // to_f64 is within one ulp; widen by two to be safe.
        let x = n.to_f64().expect("BigUint converts to f64 or infinity");
        assert!(x.is_finite(), "value too large for interval arithmetic");
        Interval { lo: x.next_down().next_down(), hi: x.next_up().next_up() }
    }

    /// num/den with directed rounding; den must be positive.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den > 0);
        let q = num as f64 / den as f64;
        Interval { lo: q.next_down(), hi: q.next_up() }
    }

    pub fn from_big_rational(r: &BigRational) -> Self {
        let num = Interval::from_biguint(&r.numer().abs().to_biguint().unwrap());
        let den = Interval::from_biguint(&r.denom().to_biguint().unwrap());
        let mag = num.div(den);
        if r.is_negative() {
            mag.neg()
        } else {
            mag
        }
    }

    pub fn add(self, o: Interval) -> Self {
        Interval {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        }
    }

    pub fn neg(self) -> Self {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(self, o: Interval) -> Self {
        let cands = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        Interval {
            lo: cands.iter().copied().fold(f64::INFINITY, f64::min).next_down(),
            hi: cands.iter().copied().fold(f64::NEG_INFINITY, f64::max).next_up(),
        }
    }

    /// Division by a strictly positive interval.
    pub fn div(self, o: Interval) -> Self {
        assert!(o.lo > 0.0);
        Interval {
            lo: (self.lo / o.hi).next_down(),
            hi: (self.hi / o.lo).next_up(),
        }
    }

    /// Natural log of a strictly positive interval. Library ln is
    /// within one ulp, so widen twice.
    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0);
        Interval {
            lo: self.lo.ln().next_down().next_down(),
            hi: self.hi.ln().next_up().next_up(),
        }
    }

    pub fn exp(self) -> Self {
        Interval {
            lo: self.lo.exp().next_down().next_down().max(0.0),
            hi: self.hi.exp().next_up().next_up(),
        }
    }

    /// Elementwise max: encloses max of the two true values, and also
    /// the supremum when tracking a running maximum.
    pub fn sup(self, o: Interval) -> Self {
        Interval { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    /// min(1, x), as used by the Siegel product factors.
    pub fn min_one(self) -> Self {
        Interval { lo: self.lo.min(1.0), hi: self.hi.min(1.0) }
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

fn pi_interval() -> Interval {
    Interval {
        lo: std::f64::consts::PI.next_down(),
        hi: std::f64::consts::PI.next_up(),
    }
}

// ---------------------------------------------------------------------------
// Siegel product
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct SiegelProduct {
    /// First prime whose factor is provably 1 (so all later factors
    /// are, by monotonicity in p). None for epsilon = 0.
    pub cutoff_prime: Option<u64>,
    /// The product over odd primes of min(1, p^(2 eps) (1 - 1/p)).
    pub bare_product: Interval,
    /// (12 eps / pi) times the bare product.
    pub value: Interval,
}

/// The factor at p, as an interval.
fn siegel_factor(p: u64, two_eps: &Interval) -> Interval {
    let lp = Interval::from_u64(p).ln();
    let pow = two_eps.mul(lp).exp();
    let frac = Interval::from_u64(p - 1).div(Interval::from_u64(p));
    pow.mul(frac)
}

pub fn siegel_product(epsilon: &BigRational) -> Result<SiegelProduct, BoundsError> {
    let thousandth = BigRational::new(1.into(), 1000.into());
    if epsilon.is_negative() || *epsilon >= thousandth {
        return Err(BoundsError::EpsilonOutOfRange);
    }
    if epsilon.is_zero() {
        return Ok(SiegelProduct {
            cutoff_prime: None,
            bare_product: Interval { lo: 0.0, hi: 1.0 },
            value: Interval::point(0.0),
        });
    }
    let eps = Interval::from_big_rational(epsilon);
    let two_eps = eps.add(eps);
    // p^(2 eps)(1 - 1/p) is increasing in p, so once a factor is
    // provably at least 1 every later factor is too. Epsilon >= some
    // tiny rational guarantees the cutoff exists well below this sieve
    // bound for the permitted range.
    let mut product = Interval::point(1.0);
    let cutoff: u64;
    let mut sieve_limit = 1u64 << 17;
    let mut done_below = 2u64;
    'outer: loop {
        for p in primes_up_to(sieve_limit) {
            if p <= done_below {
                continue;
            }
            let f = siegel_factor(p, &two_eps);
            if f.lo >= 1.0 {
                cutoff = p;
                break 'outer;
            }
            product = product.mul(f.min_one());
        }
        done_below = sieve_limit;
        sieve_limit *= 2;
        if sieve_limit > 1 << 31 {
            // Unreachably small epsilon inside the accepted range
            // would need an enormous cutoff; refuse rather than spin.
            return Err(BoundsError::TooLarge);
        }
    }
    let value = Interval::from_u64(12)
        .mul(eps)
        .div(pi_interval())
        .mul(product);
    Ok(SiegelProduct { cutoff_prime: Some(cutoff), bare_product: product, value })
}

// ---------------------------------------------------------------------------
// Siegel pair check
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPairReport {
    pub t_m: u64,
    pub t_m_prime: u64,
    /// max(t(m)/m^(1/2-eps), t(m')/m'^(1/2-eps)).
    pub lhs: Interval,
    pub rhs: Interval,
    pub holds: bool,
}

fn squarefree_part(n: u64) -> u64 {
    factorize_u64(n)
        .into_iter()
        .map(|(p, e)| if e % 2 == 1 { p } else { 1 })
        .product()
}

pub fn siegel_pair_check(
    m: u64,
    m_prime: u64,
    epsilon: &BigRational,
) -> Result<SiegelPairReport, BoundsError> {
    let mut bad = Vec::new();
    for (label, v) in [("m", m), ("m'", m_prime)] {
        if v == 0 || v > 1_000_000_000 {
            bad.push(format!("{label} outside oracle range"));
        } else {
            if v % 4 == 0 {
                bad.push(format!("{label} is a multiple of 4"));
            }
            if v % 8 == 7 {
                bad.push(format!("{label} is 7 mod 8"));
            }
        }
    }
    if bad.is_empty() && squarefree_part(m) == squarefree_part(m_prime) {
        bad.push("m and m' share a squarefree part".to_string());
    }
    if !bad.is_empty() {
        return Err(BoundsError::Preconditions(bad));
    }
    let t_m = r3_primitive(m).expect("range checked");
    let t_m_prime = r3_primitive(m_prime).expect("range checked");
    let half_minus_eps =
        Interval::from_ratio(1, 2).add(Interval::from_big_rational(epsilon).neg());
    let ratio = |t: u64, v: u64| {
        let denom = half_minus_eps.mul(Interval::from_u64(v).ln()).exp();
        Interval::from_u64(t).div(denom)
    };
    let lhs = ratio(t_m, m).sup(ratio(t_m_prime, m_prime));
    let rhs = siegel_product(epsilon)?.value;
    // Only claim the inequality when it is robust to the enclosures.
    let holds = lhs.lo >= rhs.hi;
    Ok(SiegelPairReport { t_m, t_m_prime, lhs, rhs, holds })
}

// ---------------------------------------------------------------------------
// Level lowering
// ---------------------------------------------------------------------------

/// tau(n) <= (16/3)^13 sum over d | n with d^16 <= n^3 of tau(d)^2,
/// decided exactly.
pub fn level_inequality_check(n: u64) -> bool {
    assert!(n >= 1);
    let factors = factorize_u64(n);
    let tau = |x: u64| -> u128 {
        factorize_u64(x).iter().map(|&(_, e)| e as u128 + 1).product()
    };
    // All divisors of n.
    let mut divisors: Vec<u64> = vec![1];
    for (p, e) in &factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pe = 1u64;
            for _ in 0..=*e {
                next.push(d * pe);
                pe = pe.saturating_mul(*p);
            }
        }
        divisors = next;
    }
    let n_cubed = BigUint::from(n).pow(3);
    let sum: u128 = divisors
        .iter()
        .filter(|&&d| BigUint::from(d).pow(16) <= n_cubed)
        .map(|&d| tau(d) * tau(d))
        .sum();
    let lhs = 3u128.pow(13) * tau(n);
    let rhs = 16u128.pow(13) * sum;
    lhs <= rhs
}

/// The prime-power side condition of the level lemma:
/// e+1 <= (sum over f <= e of (C(e,f) 3^f 13^(e-f) / 16^e)^(13/12)
/// (f+1)^(-1/6))^(-12), checked with rigorous rounding.
pub fn prime_power_side_check(e: u32) -> bool {
    if e == 0 {
        // Both sides are exactly 1.
        return true;
    }
    let sixteen_e = BigUint::from(16u32).pow(e);
    let mut binom = BigUint::from(1u32);
    let mut sum = Interval::point(0.0);
    for f in 0..=e {
        if f > 0 {
            binom = binom * (e - f + 1) / f;
        }
        let numer = &binom * BigUint::from(3u32).pow(f) * BigUint::from(13u32).pow(e - f);
        let ratio = Interval::from_biguint(&numer).div(Interval::from_biguint(&sixteen_e));
        let pow = Interval::from_ratio(13, 12).mul(ratio.ln()).exp();
        let weight = Interval::from_ratio(-1, 6)
            .mul(Interval::from_u64(f as u64 + 1).ln())
            .exp();
        sum = sum.add(pow.mul(weight));
    }
    // Inequality rearranged: sum <= (e+1)^(-1/12).
    let target = Interval::from_ratio(-1, 12)
        .mul(Interval::from_u64(e as u64 + 1).ln())
        .exp();
    sum.hi <= target.lo
}

/// The tail form used for e >= 28: (3(e+1)/16)^2 >= e+1, exactly.
pub fn prime_power_tail_check(e: u32) -> bool {
    let e1 = (e as u128) + 1;
    9 * e1 * e1 >= 256 * e1
}

// ---------------------------------------------------------------------------
// Multiplicative bound products
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalFactorPreset {
    /// sum over g | p^k of tau(g) 2^omega(g) g^[1/2] / g^(9/16),
    /// delta = 1/40.
    GSum,
    /// The g h^2 sum with the 2^(omega(g)+omega(h)) weight,
    /// delta = 10^-6.
    F1Local,
    /// The g h^2 sum with the 2^omega(g) weight, delta = 10^-6.
    F2Local,
}

impl LocalFactorPreset {
    pub fn name(&self) -> &'static str {
        match self {
            LocalFactorPreset::GSum => "G-SUM",
            LocalFactorPreset::F1Local => "F1-LOCAL",
            LocalFactorPreset::F2Local => "F2-LOCAL",
        }
    }

    pub fn default_delta(&self) -> BigRational {
        match self {
            LocalFactorPreset::GSum => BigRational::new(1.into(), 40.into()),
            _ => BigRational::new(1.into(), 1_000_000.into()),
        }
    }

    pub fn default_p_max(&self) -> u64 {
        1_500_000
    }

    /// Natural log of the paper's claimed constant.
    pub fn paper_log_bound(&self) -> BigRational {
        let v: i64 = match self {
            LocalFactorPreset::GSum => 13634,
            LocalFactorPreset::F1Local => 62,
            LocalFactorPreset::F2Local => 46,
        };
        BigRational::from_integer(v.into())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub preset: &'static str,
    pub p_max: u64,
    /// ln of the product of per-prime maxima.
    pub computed_log: Interval,
    pub paper_log_bound: BigRational,
    pub satisfied: bool,
}

/// Sum of the new terms when the truncation level rises to k.
fn level_increment(preset: LocalFactorPreset, k: u32, ln_p: Interval) -> Interval {
    let p_pow = |num: i64| Interval::from_ratio(num, 16).mul(ln_p).exp();
    match preset {
        LocalFactorPreset::GSum => {
            // g = p^k: tau 2^omega g^[1/2] / g^(9/16).
            let i = k as i64;
            let coeff = Interval::from_u64((k as u64 + 1) * 2);
            coeff.mul(p_pow(16 * (i / 2) - 9 * i))
        }
        LocalFactorPreset::F1Local | LocalFactorPreset::F2Local => {
            // New lattice points (i, j) with i + 2j = k, g = p^i,
            // h = p^j; weight tau(g) tau(h^2)^2 2^... g^[1/2]/(h g).
            let mut total = Interval::point(0.0);
            let mut j = 0u32;
            while 2 * j <= k {
                let i = k - 2 * j;
                let mut coeff = (i as u64 + 1) * (2 * j as u64 + 1) * (2 * j as u64 + 1);
                if i > 0 {
                    coeff *= 2;
                }
                if j > 0 && preset == LocalFactorPreset::F1Local {
                    coeff *= 2;
                }
                let expo = (i as i64 / 2) - i as i64 - j as i64;
                total = total.add(Interval::from_u64(coeff).mul(p_pow(16 * expo)));
                j += 1;
            }
            total
        }
    }
}

/// Upper bound on the sum of all increments at levels strictly above
/// k, from the geometric bounds 2(i+1) p^(-i/16) (G-SUM) and
/// 4(w+1)^4 p^(-w/2) (F-sums). Returns None while the ratio bound is
/// not yet below 1.
fn level_tail(preset: LocalFactorPreset, k: u32, ln_p: Interval) -> Option<Interval> {
    let kk = k as f64;
    let (first, ratio) = match preset {
        LocalFactorPreset::GSum => {
            let first = Interval::from_u64(2 * (k as u64 + 2))
                .mul(Interval::from_ratio(-(k as i64 + 1), 16).mul(ln_p).exp());
            let ratio = ((kk + 3.0) / (kk + 2.0)).next_up()
                * Interval::from_ratio(-1, 16).mul(ln_p).exp().hi;
            (first, ratio)
        }
        _ => {
            let poly = Interval::from_u64(4)
                .mul(Interval::from_u64(k as u64 + 2))
                .mul(Interval::from_u64(k as u64 + 2))
                .mul(Interval::from_u64(k as u64 + 2))
                .mul(Interval::from_u64(k as u64 + 2));
            let first =
                poly.mul(Interval::from_ratio(-(k as i64 + 1), 2).mul(ln_p).exp());
            let r1 = ((kk + 3.0) / (kk + 2.0)).next_up();
            let ratio =
                (r1 * r1 * r1 * r1).next_up() * Interval::from_ratio(-1, 2).mul(ln_p).exp().hi;
            (first, ratio)
        }
    };
    if ratio >= 0.999 {
        return None;
    }
    let scale = (1.0 / (1.0 - ratio)).next_up().next_up();
    Some(Interval { lo: 0.0, hi: (first.hi * scale).next_up() })
}

/// Enclosure of sup over k >= 0 of p^(-delta k) L(p, k) for one prime.
fn per_prime_max(preset: LocalFactorPreset, p: u64, delta: Interval) -> Interval {
    let ln_p = Interval::from_u64(p).ln();
    let mut partial = Interval::point(1.0);
    let mut best = Interval::point(1.0);
    let mut k = 1u32;
    loop {
        partial = partial.add(level_increment(preset, k, ln_p));
        let damp = delta.neg().mul(Interval::from_u64(k as u64)).mul(ln_p).exp();
        best = best.sup(damp.mul(partial));
        if let Some(tail) = level_tail(preset, k, ln_p) {
            if tail.hi <= 1e-9 * partial.lo {
                // For all later k the value is at most
                // p^(-delta k) (partial + tail), largest at this k.
                best = best.sup(damp.mul(partial.add(tail)));
                break;
            }
        }
        k += 1;
        assert!(k < 100_000, "per-prime iteration failed to converge");
    }
    best
}

/// Product over primes p <= p_max of the per-prime maxima, reported as
/// a natural log so the e^13634-scale constants stay representable.
pub fn mult_bound_product(
    preset: LocalFactorPreset,
    delta: &BigRational,
    p_max: u64,
) -> BoundReport {
    let delta_iv = Interval::from_big_rational(delta);
    let primes = primes_up_to(p_max);
    let logs: Vec<Interval> = primes
        .par_iter()
        .map(|&p| per_prime_max(preset, p, delta_iv).ln())
        .collect();
    let computed_log = logs
        .into_iter()
        .fold(Interval::point(0.0), |acc, l| acc.add(l));
    let bound = Interval::from_big_rational(&preset.paper_log_bound());
    BoundReport {
        preset: preset.name(),
        p_max,
        computed_log,
        paper_log_bound: preset.paper_log_bound(),
        satisfied: computed_log.hi <= bound.lo,
    }
}

// ---------------------------------------------------------------------------
// The senior-form sum S
// ---------------------------------------------------------------------------

/// Parameters (m, tau) with the matching exponent s: the unique s with
/// m^(1/2+tau) <= 5^s < 5 m^(1/2+tau).
#[derive(Debug, Clone, PartialEq)]
pub struct SeniorSumParams {
    pub m: u64,
    pub s: u32,
    pub tau: BigRational,
}

impl SeniorSumParams {
    pub fn new(m: u64, tau: BigRational) -> Result<Self, BoundsError> {
        let mut bad = Vec::new();
        if m == 0 || m > 1_000_000 {
            bad.push("m outside the direct-evaluation range".to_string());
        }
        if m % 5 == 0 {
            bad.push("5 divides m".to_string());
        }
        if !tau.is_positive() || tau >= BigRational::new(1.into(), 2.into()) {
            bad.push("tau outside (0, 1/2)".to_string());
        }
        if !bad.is_empty() {
            return Err(BoundsError::Preconditions(bad));
        }
        let a = tau.numer().to_biguint().unwrap();
        let b = tau.denom().to_biguint().unwrap();
        // m^tau > 8 sqrt(3)/3, i.e. squared: 3^b m^(2a) > 2^(6b).
        let a_u = a.to_u32().ok_or(BoundsError::TooLarge)?;
        let b_u = b.to_u32().ok_or(BoundsError::TooLarge)?;
        let m_big = BigUint::from(m);
        if BigUint::from(3u32).pow(b_u) * m_big.pow(2 * a_u)
            <= BigUint::from(2u32).pow(6 * b_u)
        {
            return Err(BoundsError::Preconditions(vec![
                "m^tau <= 8 sqrt(3) / 3".to_string(),
            ]));
        }
        // Smallest s with m^(b + 2a) <= 5^(2 b s).
        let target = m_big.pow(b_u + 2 * a_u);
        let step = BigUint::from(5u32).pow(2 * b_u);
        let mut power = BigUint::from(1u32);
        let mut s = 0u32;
        while power < target {
            power *= &step;
            s += 1;
            assert!(s < 10_000);
        }
        Ok(SeniorSumParams { m, s, tau })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeniorReport {
    /// Exact value of S by direct triple summation.
    pub s_sum: BigUint,
    pub c_max: u64,
    /// Number of (c, s1, d) terms summed.
    pub terms: u64,
    /// Lower bound on ln of the closed-form bound from the sum lemma.
    pub bound_log: Interval,
    pub satisfied: bool,
    /// Exact values of the F1/F2 divisor sums at 4m.
    pub f1: BigRational,
    pub f2: BigRational,
}

/// Exact F1 / F2 divisor sum at n: sum over g h^2 | n of
/// tau(g) tau(h^2)^2 2^(omega(g) [+ omega(h)]) g^[1/2] / (h g).
fn f_local_exact(n: u64, with_omega_h: bool) -> BigRational {
    let tau = |x: u64| -> u64 {
        factorize_u64(x).iter().map(|&(_, e)| e as u64 + 1).product()
    };
    let omega = |x: u64| factorize_u64(x).len() as u32;
    let mut divisors: Vec<u64> = vec![1];
    for (p, e) in factorize_u64(n) {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pe = 1u64;
            for _ in 0..=e {
                next.push(d * pe);
                pe *= p;
            }
        }
        divisors = next;
    }
    let mut total = BigRational::zero();
    for &h in &divisors {
        if n % (h * h) != 0 {
            continue;
        }
        let rest = n / (h * h);
        for &g in &divisors {
            if rest % g != 0 {
                continue;
            }
            let mut num = tau(g) * tau(h * h) * tau(h * h) * square_root_part(g);
            num <<= omega(g) + if with_omega_h { omega(h) } else { 0 };
            total += BigRational::new(
                BigUint::from(num).into(),
                BigUint::from(h * g).into(),
            );
        }
    }
    total
}

/// Direct evaluation of
/// S = sum_c sum_{5^s1 | c} sum_d 2^omega(5c) tau(4m - 5^(s-2s1) d^2 c)
/// (4m, c)^[1/2], with the paper's bound for comparison.
pub fn eval_senior_s(params: &SeniorSumParams) -> SeniorReport {
    let m = params.m;
    let s = params.s;
    let a = params.tau.numer().to_u32().unwrap();
    let b = params.tau.denom().to_u32().unwrap();
    // c <= 6 m^(1/2 - tau): c^(2b) <= 6^(2b) m^(b - 2a).
    let c_limit_pow = BigUint::from(6u32).pow(2 * b)
        * BigUint::from(m).pow(b.saturating_sub(2 * a));
    let mut c_max = 0u64;
    while BigUint::from(c_max + 1).pow(2 * b) <= c_limit_pow {
        c_max += 1;
    }
    let four_m = 4 * m as u128;
    let pow5 = |e: u32| 5u128.pow(e);
    let mut s_sum = BigUint::zero();
    let mut terms = 0u64;
    for c in 1..=c_max {
        let v5 = {
            let mut v = 0u32;
            let mut cc = c;
            while cc % 5 == 0 {
                cc /= 5;
                v += 1;
            }
            v
        };
        let omega_5c = factorize_u64(5 * c).len() as u32;
        let root_part = square_root_part((4 * m).gcd_euclid(c));
        for s1 in 0..=v5 {
            assert!(s1 <= s, "s1 cannot exceed s at this scale");
            // d ranges over d^2 5^s c <= 5^(2 s1) 4m.
            let lhs_unit = pow5(s) * c as u128;
            let rhs = pow5(2 * s1) * four_m;
            let mut d = 1u128;
            while d * d * lhs_unit <= rhs {
                // Argument 4m - 5^(s - 2 s1) d^2 c, always integral
                // since 5^s1 divides c.
                let val = pow5(s - s1) * d * d * (c as u128 / pow5(s1));
                if val < four_m {
                    let arg = (four_m - val) as u64;
                    let tau: u64 = factorize_u64(arg)
                        .iter()
                        .map(|&(_, e)| e as u64 + 1)
                        .product();
                    s_sum += BigUint::from(tau) * BigUint::from(root_part)
                        << omega_5c;
                    terms += 1;
                }
                d += 1;
            }
        }
    }
    // Lower bound for the closed-form bound: the trailing
    // e^13667 log(e^12 m)^6 m^(1/2 - 1/160) term alone.
    let ln_m = Interval::from_u64(m).ln();
    let bound_log = Interval::point(13667.0)
        .add(
            Interval::from_u64(6)
                .mul(Interval::from_u64(12).add(ln_m).ln()),
        )
        .add(Interval::from_ratio(79, 160).mul(ln_m));
    let satisfied = if s_sum.is_zero() {
        true
    } else {
        Interval::from_biguint(&s_sum).ln().hi <= bound_log.lo
    };
    SeniorReport {
        s_sum,
        c_max,
        terms,
        bound_log,
        satisfied,
        f1: f_local_exact(4 * m, true),
        f2: f_local_exact(4 * m, false),
    }
}

trait GcdEuclid {
    fn gcd_euclid(self, other: u64) -> u64;
}

impl GcdEuclid for u64 {
    fn gcd_euclid(self, other: u64) -> u64 {
        use num_integer::Integer;
        self.gcd(&other)
    }
}
