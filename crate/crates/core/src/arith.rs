//! Shared exact integer utilities: factorization, divisor statistics,
//! Jacobi symbols, modular square-root counting, Hensel lifting, and
//! exact searches for products `a^x b^y` inside rational windows.
//!
//! Everything here is deterministic and allocation-light; the hot paths
//! (`factorize_u64`, `jacobi_u64`) stay in machine integers, with
//! arbitrary-precision wrappers on top.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cubic::CubicPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("input must be positive, got 0")]
    ZeroInput,
    #[error("modulus must be odd, got {0}")]
    EvenModulus(u64),
    #[error("polynomial does not induce a well-defined map modulo {0}")]
    NotInducedMod(String),
    #[error("prime {0} too large for root enumeration")]
    PrimeTooLarge(u64),
    #[error("{0} and {1} are multiplicatively dependent")]
    MultiplicativelyDependent(u64, u64),
    #[error("empty window: lo must be less than hi")]
    EmptyWindow,
}

// ---------------------------------------------------------------------------
// Primes and sieves
// ---------------------------------------------------------------------------

/// Simple sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is_comp = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !is_comp[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                is_comp[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Smallest-prime-factor sieve for bulk factorization of every integer
/// up to a limit.
pub struct SmallFactorSieve {
    spf: Vec<u32>,
}

impl SmallFactorSieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SmallFactorSieve { spf }
    }

    pub fn factorize(&self, mut n: usize) -> Vec<(u64, u32)> {
        assert!(n >= 1 && n < self.spf.len());
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out.sort_unstable();
        out
    }

    /// Number of divisors.
    pub fn tau(&self, n: usize) -> u64 {
        self.factorize(n).iter().map(|&(_, e)| (e + 1) as u64).product()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self, n: usize) -> u32 {
        self.factorize(n).len() as u32
    }

    /// All divisors of `n`, unsorted.
    pub fn divisors(&self, n: usize) -> Vec<u64> {
        let mut divs = vec![1u64];
        for (p, e) in self.factorize(n) {
            let prev = divs.len();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                for i in 0..prev {
                    divs.push(divs[i] * pe);
                }
            }
        }
        divs
    }
}

// ---------------------------------------------------------------------------
// Primality and factorization
// ---------------------------------------------------------------------------

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho with a deterministic parameter
/// schedule. Only called on composite inputs with no factor below the
/// trial-division cutoff.
fn brent_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    for c in 1..64u64 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
    }
    unreachable!("rho failed on {n}")
}

const TRIAL_DIVISION_CUTOFF: u64 = 10_000_000;

/// Prime factorization of a u64, sorted by prime. Deterministic: trial
/// division up to 10^7, then Brent rho on whatever remains.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "cannot factor 0");
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, e: u32, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += e;
        } else {
            out.push((p, e));
        }
    };
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            push(p, e, &mut out);
        }
    }
    let mut d = 7u64;
    // 7, 11, 13, 17, 19, 23, 29, 31 wheel mod 30
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut step_i = 0;
    while d <= TRIAL_DIVISION_CUTOFF && d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            push(d, e, &mut out);
        }
        d += steps[step_i];
        step_i = (step_i + 1) % steps.len();
    }
    // Remaining cofactor has no prime factor <= 10^7.
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if m <= TRIAL_DIVISION_CUTOFF * TRIAL_DIVISION_CUTOFF && m > 1 && is_prime_u64(m) {
            push(m, 1, &mut out);
        } else if is_prime_u64(m) {
            push(m, 1, &mut out);
        } else {
            let d = brent_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    out.sort_unstable();
    out
}

/// A nonnegative integer together with its full prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl FactoredInteger {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// Ordered `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Recompose the factorization; equals `value()` by construction.
    pub fn recompose(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }
}

/// Full prime factorization of a positive integer.
pub fn factorize(n: &BigUint) -> Result<FactoredInteger, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    if let Some(small) = n.to_u64() {
        let factors = factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
        return Ok(FactoredInteger { value: n.clone(), factors });
    }
    // Big inputs: strip small primes, then rho over BigUint.
    let mut rest = n.clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in primes_up_to(100_000) {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        if rest.is_one() {
            break;
        }
    }
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if let Some(small) = m.to_u64() {
            for (p, e) in factorize_u64(small) {
                merge_factor(&mut factors, BigUint::from(p), e);
            }
            continue;
        }
        if is_probable_prime_big(&m) {
            merge_factor(&mut factors, m, 1);
        } else {
            let d = big_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(FactoredInteger { value: n.clone(), factors })
}

fn merge_factor(factors: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(f) = factors.iter_mut().find(|(q, _)| *q == p) {
        f.1 += e;
    } else {
        factors.push((p, e));
    }
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    // Miller-Rabin with fixed bases; deterministic enough for the
    // paper-scale inputs this crate handles.
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    let n_minus_1 = n - &one;
    let r = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> r;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn big_rho(n: &BigUint) -> BigUint {
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            let d = diff.gcd(n);
            if !d.is_one() {
                if &d != n {
                    return d;
                }
                break;
            }
        }
    }
    unreachable!("rho failed on {n}")
}

// ---------------------------------------------------------------------------
// Divisor statistics
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorStats {
    /// Number of distinct prime factors.
    pub omega: u32,
    /// Number of prime factors with multiplicity.
    pub big_omega: u32,
    /// Number of positive divisors.
    pub tau: u128,
    /// The largest integer whose square divides the value.
    pub square_part: BigUint,
}

pub fn divisor_stats(n: &FactoredInteger) -> DivisorStats {
    let mut omega = 0u32;
    let mut big_omega = 0u32;
    let mut tau = 1u128;
    let mut square_part = BigUint::one();
    for (p, e) in n.factors() {
        omega += 1;
        big_omega += e;
        tau *= (*e as u128) + 1;
        square_part *= p.pow(e / 2);
    }
    DivisorStats { omega, big_omega, tau, square_part }
}

// ---------------------------------------------------------------------------
// Jacobi symbols
// ---------------------------------------------------------------------------

/// Jacobi symbol (a/n) for odd positive n; (a/1) = 1.
pub fn jacobi_u64(a: i64, n: u64) -> Result<i32, ArithError> {
    if n == 0 || n % 2 == 0 {
        return Err(ArithError::EvenModulus(n));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        Ok(result)
    } else {
        Ok(0)
    }
}

/// Arbitrary-precision Jacobi symbol.
pub fn jacobi(a: &BigInt, n: &BigUint) -> Result<i32, ArithError> {
    if n.is_zero() || n.is_even() {
        return Err(ArithError::EvenModulus(n.to_u64().unwrap_or(0)));
    }
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("mod_floor is nonnegative");
    let mut n = n.clone();
    let mut result = 1i32;
    let one = BigUint::one();
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        if tz % 2 == 1 {
            let n_mod_8 = (&n % 8u32).to_u32().unwrap();
            if matches!(n_mod_8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32().unwrap() == 3 && (&n % 4u32).to_u32().unwrap() == 3 {
            result = -result;
        }
        a %= &n;
    }
    if n == one {
        Ok(result)
    } else {
        Ok(0)
    }
}

// ---------------------------------------------------------------------------
// Modular square roots
// ---------------------------------------------------------------------------

/// Exact count of solutions to x^2 = a (mod b), together with the
/// divisor-theoretic upper bound 2^(1+omega(b/(a,b))) * (a,b)^[1/2].
///
/// The count is computed by lifting solution sets prime power by prime
/// power and combining with CRT; the bound always dominates it.
pub fn count_sqrt_mod(a: i64, b: u64) -> (u64, u64) {
    assert!(b >= 1);
    if b == 1 {
        return (1, bound_sqrt_mod(a, b));
    }
    let a_red = a.rem_euclid(b as i64) as u64;
    let mut count = 1u64;
    for (p, k) in factorize_u64(b) {
        let pk = p.pow(k);
        count *= count_sqrt_mod_prime_power(a_red % pk, p, k);
        if count == 0 {
            break;
        }
    }
    (count, bound_sqrt_mod(a, b))
}

fn bound_sqrt_mod(a: i64, b: u64) -> u64 {
    let a_red = a.rem_euclid(b as i64) as u64;
    let g = if a_red == 0 { b } else { a_red.gcd(&b) };
    let omega = factorize_u64(b / g).len() as u32;
    let g_sqrt_part: u64 = factorize_u64(g)
        .iter()
        .map(|&(p, e)| p.pow(e / 2))
        .product();
    2u64.pow(1 + omega) * g_sqrt_part
}

fn count_sqrt_mod_prime_power(a: u64, p: u64, k: u32) -> u64 {
    // Lift solution sets level by level; sizes stay tiny at the scales
    // this is used for (full sweeps over b <= 1000, CRT factors of
    // moderate moduli).
    let mut sols: Vec<u64> = vec![0];
    let mut modulus = 1u64;
    for j in 0..k {
        let next_modulus = modulus * p;
        let target = a % next_modulus;
        let mut next = Vec::new();
        for &x in &sols {
            let mut cand = x;
            for _ in 0..p {
                if mulmod(cand, cand, next_modulus) == target {
                    next.push(cand);
                }
                cand += modulus;
            }
        }
        sols = next;
        modulus = next_modulus;
        if sols.is_empty() {
            return 0;
        }
        let _ = j;
    }
    sols.len() as u64
}

// ---------------------------------------------------------------------------
// Hensel lifting for cubic congruences
// ---------------------------------------------------------------------------

/// All residues x mod p^k with f(x) = target (mod p^k), by root
/// enumeration mod p and stepwise lifting.
///
/// Errors if f does not induce a well-defined function on Z/p^k.
pub fn hensel_roots(
    f: &CubicPoly,
    target: &BigInt,
    p: u64,
    k: u32,
) -> Result<Vec<BigUint>, ArithError> {
    if p > 1_000_000 {
        return Err(ArithError::PrimeTooLarge(p));
    }
    let modulus = BigInt::from(p).pow(k);
    if !f.descends_mod(&modulus) {
        return Err(ArithError::NotInducedMod(modulus.to_string()));
    }
    let p_big = BigInt::from(p);
    let mut level_modulus = p_big.clone();
    let target_big = target.clone();
    let mut sols: Vec<BigInt> = Vec::new();
    for x in 0..p {
        let x = BigInt::from(x);
        if (f.eval(&x) - &target_big).mod_floor(&level_modulus).is_zero() {
            sols.push(x);
        }
    }
    for _ in 1..k {
        let next_modulus = &level_modulus * &p_big;
        let mut next = Vec::new();
        for x in &sols {
            for t in 0..p {
                let cand = x + &level_modulus * BigInt::from(t);
                if (f.eval(&cand) - &target_big).mod_floor(&next_modulus).is_zero() {
                    next.push(cand);
                }
            }
        }
        sols = next;
        level_modulus = next_modulus;
        if sols.len() > 1_000_000 {
            return Err(ArithError::NotInducedMod(level_modulus.to_string()));
        }
    }
    let mut out: Vec<BigUint> = sols
        .into_iter()
        .map(|x| x.mod_floor(&level_modulus).to_biguint().unwrap())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Products of two prime-power bases in a rational window
// ---------------------------------------------------------------------------

/// Outcome of a window search: exponents x, y >= 1 and the value a^x b^y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProduct {
    pub x: u32,
    pub y: u32,
    pub value: BigUint,
}

/// True if a and b are multiplicatively independent (a^x = b^y has no
/// solution in positive integers).
pub fn multiplicatively_independent(a: u64, b: u64) -> bool {
    if a <= 1 || b <= 1 {
        return false;
    }
    let fa = factorize_u64(a);
    let fb = factorize_u64(b);
    if fa.len() != fb.len() {
        return true;
    }
    if fa.iter().zip(&fb).any(|((p, _), (q, _))| p != q) {
        return true;
    }
    // Same prime support: dependent iff exponent vectors are
    // proportional, i.e. ea_i * eb_0 == eb_i * ea_0 for all i.
    let (ea0, eb0) = (fa[0].1 as u64, fb[0].1 as u64);
    !fa.iter()
        .zip(&fb)
        .all(|((_, ea), (_, eb))| *ea as u64 * eb0 == *eb as u64 * ea0)
}

/// Scan all products a^x b^y (x, y >= 1) in the open window (lo, hi),
/// visiting them in order of increasing y then increasing x, and return
/// the first one accepted by `pred`. Exact rational comparisons.
pub fn scan_power_products(
    a: u64,
    b: u64,
    lo: &BigRational,
    hi: &BigRational,
    mut pred: impl FnMut(u32, u32, &BigUint) -> bool,
) -> Result<Option<PowerProduct>, ArithError> {
    if lo >= hi {
        return Err(ArithError::EmptyWindow);
    }
    if hi.is_negative() || hi.is_zero() {
        return Ok(None);
    }
    let a_big = BigUint::from(a);
    let b_big = BigUint::from(b);
    let below_hi = |v: &BigUint| {
        BigRational::from(BigInt::from(v.clone())) < *hi
    };
    let above_lo = |v: &BigUint| {
        BigRational::from(BigInt::from(v.clone())) > *lo
    };
    let mut by = b_big.clone();
    let mut y = 1u32;
    loop {
        let base = &by * &a_big; // a^1 b^y
        if !below_hi(&base) {
            return Ok(None);
        }
        let mut value = base;
        let mut x = 1u32;
        while below_hi(&value) {
            if above_lo(&value) && pred(x, y, &value) {
                return Ok(Some(PowerProduct { x, y, value }));
            }
            value *= &a_big;
            x += 1;
        }
        by *= &b_big;
        y += 1;
    }
}

/// Find positive exponents x, y with lo < a^x b^y < hi, optionally
/// constrained to a residue class of the value. Returns None when the
/// window genuinely contains no such product.
pub fn power_product_in_interval(
    a: u64,
    b: u64,
    lo: &BigRational,
    hi: &BigRational,
    residue_constraint: Option<(u64, u64)>,
) -> Result<Option<PowerProduct>, ArithError> {
    if !multiplicatively_independent(a, b) {
        return Err(ArithError::MultiplicativelyDependent(a, b));
    }
    scan_power_products(a, b, lo, hi, |_, _, value| match residue_constraint {
        None => true,
        Some((m, class)) => (value % m).to_u64().unwrap() == class % m,
    })
}
