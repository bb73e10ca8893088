//! Integer-valued cubic polynomials in the binomial basis
//! a(x^3-x)/6 + b(x^2-x)/2 + cx, their value sets modulo primes, p-adic
//! surjectivity classification, and the octahedral congruence solver.
//!
//! The octahedral polynomial alpha(x) = (2x^3+x)/3 is the special case
//! (a, b, c) = (4, 0, 1); it is surjective on both Z_2 and Z_3, which
//! is what makes the congruence solver's "exactly 3 classes" output
//! possible.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubicError {
    #[error("coefficients must have gcd 1, got gcd {0}")]
    ImprimitiveCoefficients(u64),
    #[error("polynomial does not induce a well-defined map modulo {0}")]
    NotInducedMod(u64),
    #[error("modulus {0} too large for enumeration")]
    ModulusTooLarge(u64),
}

/// Cubic integer-valued polynomial a(x^3-x)/6 + b(x^2-x)/2 + cx.
///
/// Evaluation at any integer is an integer for any (a, b, c), since
/// x^3-x is divisible by 6 and x^2-x by 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubicPoly {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl CubicPoly {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        CubicPoly { a, b, c }
    }

    /// The octahedral polynomial (2x^3+x)/3 = 4(x^3-x)/6 + x.
    pub fn octahedral() -> Self {
        CubicPoly { a: 4, b: 0, c: 1 }
    }

    /// gcd of the three coefficients; 1 for primitive polynomials.
    pub fn content(&self) -> u64 {
        let g = self.a.unsigned_abs().gcd(&self.b.unsigned_abs());
        g.gcd(&self.c.unsigned_abs())
    }

    /// Exact value of the polynomial at x.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let x2 = x * x;
        let x3 = &x2 * x;
        let t3 = (&x3 - x) / 6;
        let t2 = (&x2 - x) / 2;
        BigInt::from(self.a) * t3 + BigInt::from(self.b) * t2 + BigInt::from(self.c) * x
    }

    /// Evaluation at a machine integer, exact as long as the result
    /// fits in i128 (comfortably true for all x below 10^12).
    pub fn eval_i128(&self, x: i128) -> i128 {
        let t3 = (x * x * x - x) / 6;
        let t2 = (x * x - x) / 2;
        self.a as i128 * t3 + self.b as i128 * t2 + self.c as i128 * x
    }

    /// True if the polynomial induces a well-defined map on Z/m, i.e.
    /// m divides f(x+m) - f(x) for every x.
    ///
    /// The difference is a quadratic in x; in the binomial basis it is
    /// a multiple of m at every x as soon as it is at x = 0, 1, 2.
    pub fn descends_mod(&self, m: &BigInt) -> bool {
        assert!(m.is_positive());
        for x in 0..3 {
            let x = BigInt::from(x);
            let diff = self.eval(&(&x + m)) - self.eval(&x);
            if !diff.mod_floor(m).is_zero() {
                return false;
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Value sets modulo a prime
// ---------------------------------------------------------------------------

/// The exact value set of a cubic modulo p, with the Watson count check
/// attached when the polynomial is congruent to x^3 + Ax (A nonzero
/// mod p, p != 3) as a function on Z/p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSetMod {
    pub p: u64,
    pub residues: BTreeSet<u64>,
    /// Set when f agrees with x^3 + Ax on Z/p for some A != 0 and
    /// p != 3; in that case the value-set size must be floor((2p+1)/3).
    pub watson_applicable: bool,
    pub watson_ok: Option<bool>,
}

/// Enumerate the value set of f modulo p.
pub fn value_set_mod(f: &CubicPoly, p: u64) -> Result<ValueSetMod, CubicError> {
    if p > 100_000 {
        return Err(CubicError::ModulusTooLarge(p));
    }
    let p_big = BigInt::from(p);
    if !f.descends_mod(&p_big) {
        return Err(CubicError::NotInducedMod(p));
    }
    let values: Vec<u64> = (0..p)
        .map(|x| {
            f.eval(&BigInt::from(x))
                .mod_floor(&p_big)
                .to_u64()
                .unwrap()
        })
        .collect();
    let residues: BTreeSet<u64> = values.iter().copied().collect();
    // Is f(x) = x^3 + Ax as a function on Z/p? If so, A = f(1) - 1.
    let a_cand = (values[1 % p as usize] + p - 1) % p;
    let matches_depressed = (0..p).all(|x| {
        let target = ((x as u128 * x as u128 % p as u128) as u64 as u128 * x as u128
            + a_cand as u128 * x as u128)
            % p as u128;
        values[x as usize] as u128 == target
    });
    let watson_applicable = p != 3 && a_cand % p != 0 && matches_depressed;
    let watson_ok = if watson_applicable {
        Some(residues.len() as u64 == (2 * p + 1) / 3)
    } else {
        None
    };
    Ok(ValueSetMod { p, residues, watson_applicable, watson_ok })
}

// ---------------------------------------------------------------------------
// p-adic surjectivity
// ---------------------------------------------------------------------------

/// Why a cubic is or is not surjective on Z_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurjectivityReason {
    /// v_p(gcd(a/6, b/2)) != 0 as rationals (negative valuations count).
    GcdValuationNonzero,
    /// p = 3, 3 | b, and a/6 is not congruent to c mod 3.
    ThreeSpecialCase,
    /// Neither criterion branch applies.
    CriterionFails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surjectivity {
    pub surjective: bool,
    pub reason: SurjectivityReason,
    /// Independent check: is the image of f modulo p^3 all of Z/p^3?
    pub brute_force_mod_p3: bool,
    /// Whether the criterion and the brute force agree. Disagreement is
    /// reported rather than hidden.
    pub agrees: bool,
}

/// p-adic valuation of the rational u/w (both nonzero), as an integer.
/// Returns None for the zero rational (valuation +infinity).
fn rational_valuation(num: i64, den: i64, p: u64) -> Option<i64> {
    assert!(den != 0);
    if num == 0 {
        return None;
    }
    let vp = |mut n: u64| {
        let mut v = 0i64;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        v
    };
    Some(vp(num.unsigned_abs()) - vp(den.unsigned_abs()))
}

/// Residue mod p of a rational with nonnegative p-adic valuation.
fn rational_mod_p(num: i64, den: i64, p: u64) -> u64 {
    let v = rational_valuation(num, den, p);
    match v {
        None => 0,
        Some(v) => {
            assert!(v >= 0, "negative valuation has no residue");
            if v > 0 {
                return 0;
            }
            let strip = |mut n: u64| {
                while n % p == 0 {
                    n /= p;
                }
                n
            };
            let n = strip(num.unsigned_abs()) % p;
            let d = strip(den.unsigned_abs()) % p;
            // d is invertible mod p; find the inverse by scan (p small).
            let d_inv = (1..p).find(|&t| t * d % p == 1).unwrap();
            let mut r = n * d_inv % p;
            if (num < 0) != (den < 0) {
                r = (p - r) % p;
            }
            r
        }
    }
}

/// Decide whether f is surjective as a function Z_p -> Z_p.
///
/// The criterion: surjective iff v_p(gcd(a/6, b/2)) is nonzero (with
/// negative valuations counting as nonzero), or p = 3 with 3 | b and
/// a/6 not congruent to c mod 3. A brute-force surjectivity check
/// modulo p^3 is run alongside and any disagreement is surfaced in the
/// returned report.
pub fn surjective_on_zp(f: &CubicPoly, p: u64) -> Result<Surjectivity, CubicError> {
    if f.content() != 1 {
        return Err(CubicError::ImprimitiveCoefficients(f.content()));
    }
    if p > 31 {
        return Err(CubicError::ModulusTooLarge(p));
    }
    let va = rational_valuation(f.a, 6, p);
    let vb = rational_valuation(f.b, 2, p);
    let min_val = match (va, vb) {
        (None, None) => None,
        (Some(v), None) | (None, Some(v)) => Some(v),
        (Some(v), Some(w)) => Some(v.min(w)),
    };
    // None means gcd(a/6, b/2) = 0 (a = b = 0, f = cx with c = +-1),
    // valuation +infinity, which is nonzero.
    let branch_gcd = min_val.map_or(true, |v| v != 0);
    let branch_three = p == 3
        && f.b % 3 == 0
        && f.a % 3 == 0
        && rational_mod_p(f.a, 6, 3) != (f.c.rem_euclid(3)) as u64;
    let (surjective, reason) = if branch_gcd {
        (true, SurjectivityReason::GcdValuationNonzero)
    } else if branch_three {
        (true, SurjectivityReason::ThreeSpecialCase)
    } else {
        (false, SurjectivityReason::CriterionFails)
    };
    let brute = brute_force_surjective_mod_p3(f, p);
    Ok(Surjectivity {
        surjective,
        reason,
        brute_force_mod_p3: brute,
        agrees: surjective == brute,
    })
}

/// Is the image of f modulo p^3 all of Z/p^3? The image is determined
/// by x modulo 6p^3, since 6p^3 divides f(x + 6p^3) - f(x).
fn brute_force_surjective_mod_p3(f: &CubicPoly, p: u64) -> bool {
    let m = (p * p * p) as i128;
    let period = 6 * m;
    let mut seen = vec![false; m as usize];
    let mut remaining = m as usize;
    for x in 0..period {
        let v = f.eval_i128(x).rem_euclid(m) as usize;
        if !seen[v] {
            seen[v] = true;
            remaining -= 1;
            if remaining == 0 {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// The octahedral congruence solver
// ---------------------------------------------------------------------------

/// All x modulo 2^u 3^(v+1) with (2x^3+x)/3 = n (mod 2^u 3^v).
///
/// There are always exactly three classes: the 2-part has a unique
/// Hensel lift (the derivative (6x^2+1)/3 is a 2-adic unit), while the
/// 3-part carries three classes per level, one modulus step ahead of
/// the constraint. The returned list is sorted and asserted to have
/// length 3.
pub fn octa_congruence_solve(n: &BigInt, u: u32, v: u32) -> Vec<BigUint> {
    let alpha = CubicPoly::octahedral();
    let satisfied = |x: &BigInt, modulus: &BigInt| -> bool {
        (alpha.eval(x) - n).mod_floor(modulus).is_zero()
    };

    // 2-part: the unique solution mod 2^u, lifted level by level.
    let mut x2 = BigInt::zero();
    let mut mod2 = BigInt::one();
    for _ in 0..u {
        let next = &mod2 * 2;
        let lifted: Vec<BigInt> = [x2.clone(), &x2 + &mod2]
            .into_iter()
            .filter(|cand| satisfied(cand, &next))
            .collect();
        assert_eq!(lifted.len(), 1, "2-adic lift must be unique");
        x2 = lifted.into_iter().next().unwrap();
        mod2 = next;
    }

    // 3-part: maintain three residues mod 3^(j+1) solving the
    // congruence mod 3^j, starting from the vacuous level j = 0.
    let three = BigInt::from(3);
    let mut sols3: Vec<BigInt> = vec![BigInt::zero(), BigInt::one(), BigInt::from(2)];
    let mut mod3 = three.clone(); // residues currently live mod 3^(j+1)
    for j in 0..v {
        let constraint = three.pow(j + 1);
        let next_mod = &mod3 * 3;
        let mut lifted = Vec::new();
        for x in &sols3 {
            for t in 0..3 {
                let cand = x + &mod3 * t;
                if satisfied(&cand, &constraint) {
                    lifted.push(cand.mod_floor(&next_mod));
                }
            }
        }
        assert_eq!(lifted.len(), 3, "3-adic level must carry 3 classes");
        sols3 = lifted;
        mod3 = next_mod;
    }

    // CRT combine: mod2 and mod3 are coprime.
    let full = &mod2 * &mod3;
    let egcd = mod2.extended_gcd(&mod3);
    debug_assert!(egcd.gcd.is_one());
    let mut out: Vec<BigUint> = sols3
        .iter()
        .map(|x3| {
            // x = x2 + mod2 * ((x3 - x2) * mod2^{-1} mod mod3)
            let t = ((x3 - &x2) * &egcd.x).mod_floor(&mod3);
            (&x2 + &mod2 * t).mod_floor(&full).to_biguint().unwrap()
        })
        .collect();
    out.sort();
    assert_eq!(out.len(), 3);
    out
}

// ---------------------------------------------------------------------------
// Octahedral numbers
// ---------------------------------------------------------------------------

/// An octahedral number together with its argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OctahedralValue {
    pub x: BigInt,
    pub value: BigInt,
}

/// alpha(x) = (2x^3 + x)/3, exact.
pub fn octahedral(x: &BigInt) -> BigInt {
    (BigInt::from(2) * x * x * x + x) / 3
}

/// alpha at a machine integer; exact for x up to about 1.6 * 10^12.
pub fn octahedral_i128(x: i128) -> i128 {
    (2 * x * x * x + x) / 3
}

/// All positive octahedral numbers up to `limit`, ascending.
pub fn octahedral_seq(limit: &BigUint) -> Vec<OctahedralValue> {
    let limit = BigInt::from(limit.clone());
    let mut out = Vec::new();
    let mut x = BigInt::one();
    loop {
        let value = octahedral(&x);
        if value > limit {
            break;
        }
        out.push(OctahedralValue { x: x.clone(), value });
        x += 1;
    }
    out
}

/// If n is a positive octahedral number, return its argument.
///
/// Brackets the candidate with an integer cube root of 3n/2 and checks
/// the neighbors exactly.
pub fn octahedral_arg(n: &BigUint) -> Option<BigUint> {
    if n.is_zero() {
        return None;
    }
    let guess = BigInt::from((BigUint::from(3u32) * n / 2u32).cbrt());
    let n_int = BigInt::from(n.clone());
    for delta in -2i32..=2 {
        let x = &guess + delta;
        if x.is_positive() && octahedral(&x) == n_int {
            return Some(x.to_biguint().unwrap());
        }
    }
    None
}

/// Membership test for positive octahedral numbers.
pub fn is_octahedral(n: &BigUint) -> bool {
    octahedral_arg(n).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn eval_octahedral_values() {
        let f = CubicPoly::octahedral();
        let expected = [(0i64, 0i64), (1, 1), (2, 6), (3, 19), (4, 44), (5, 85), (-1, -1)];
        for (x, v) in expected {
            assert_eq!(f.eval(&int(x)), int(v), "x={x}");
            assert_eq!(f.eval_i128(x as i128), v as i128);
        }
    }

    #[test]
    fn eval_always_integer_valued() {
        // In this basis the division is exact for every coefficient
        // choice; eval would panic on a non-exact division otherwise.
        for a in -5..=5 {
            for b in -5..=5 {
                for x in -20..=20i64 {
                    let f = CubicPoly::new(a, b, 7);
                    let big = f.eval(&int(x));
                    assert_eq!(big, BigInt::from(f.eval_i128(x as i128)));
                }
            }
        }
    }

    #[test]
    fn descent_check_matches_definition() {
        let f = CubicPoly::new(1, 0, 0); // (x^3-x)/6
        // (x^3-x)/6 does not descend mod 2: f(0)=0 but f(2)=1.
        assert!(!f.descends_mod(&int(2)));
        assert!(CubicPoly::octahedral().descends_mod(&int(2)));
        assert!(CubicPoly::octahedral().descends_mod(&int(16)));
        // Exhaustive confirmation against the definition.
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    let f = CubicPoly::new(a, b, c);
                    for m in 1..=12i64 {
                        let claimed = f.descends_mod(&int(m));
                        let actual = (0..m).all(|x| {
                            (f.eval(&int(x + m)) - f.eval(&int(x)))
                                .mod_floor(&int(m))
                                .is_zero()
                        });
                        assert_eq!(claimed, actual, "f=({a},{b},{c}) m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn value_set_examples() {
        // x^3 + x = 6(x^3-x)/6 + 2x
        let f = CubicPoly::new(6, 0, 2);
        let vs = value_set_mod(&f, 5).unwrap();
        assert_eq!(vs.residues, BTreeSet::from([0, 2, 3]));
        assert!(vs.watson_applicable);
        assert_eq!(vs.watson_ok, Some(true));

        let vs = value_set_mod(&f, 7).unwrap();
        assert_eq!(vs.residues.len(), 5);
        assert_eq!(vs.watson_ok, Some(true));

        let vs = value_set_mod(&CubicPoly::octahedral(), 5).unwrap();
        assert_eq!(vs.residues, BTreeSet::from([0, 1, 4]));
    }

    #[test]
    fn watson_count_sweep() {
        // |image of x^3 + Ax mod p| = floor((2p+1)/3) for p != 3, A != 0.
        for p in crate::arith::primes_up_to(101) {
            if p == 3 {
                continue;
            }
            for a in 1..p {
                // x^3 + ax = 6(x^3-x)/6 + (a+1)x
                let f = CubicPoly::new(6, 0, (a + 1) as i64);
                let vs = value_set_mod(&f, p).unwrap();
                assert!(vs.watson_applicable, "p={p} a={a}");
                assert_eq!(vs.watson_ok, Some(true), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn surjectivity_octahedral() {
        let f = CubicPoly::octahedral();
        let s2 = surjective_on_zp(&f, 2).unwrap();
        assert!(s2.surjective && s2.agrees);
        let s3 = surjective_on_zp(&f, 3).unwrap();
        assert!(s3.surjective && s3.agrees);
        let s5 = surjective_on_zp(&f, 5).unwrap();
        assert!(!s5.surjective && s5.agrees);
    }

    #[test]
    fn surjectivity_rejects_imprimitive() {
        assert!(matches!(
            surjective_on_zp(&CubicPoly::new(2, 4, 6), 2),
            Err(CubicError::ImprimitiveCoefficients(2))
        ));
    }

    #[test]
    fn surjectivity_criterion_matches_brute_force_sweep() {
        // Full sweep over small primitive polynomials and small primes;
        // the criterion and the mod-p^3 brute force must agree.
        let primes = crate::arith::primes_up_to(31);
        for a in -6..=6i64 {
            for b in -6..=6i64 {
                for c in -6..=6i64 {
                    let f = CubicPoly::new(a, b, c);
                    if f.content() != 1 {
                        continue;
                    }
                    for &p in &primes {
                        let s = surjective_on_zp(&f, p).unwrap();
                        assert!(
                            s.agrees,
                            "criterion/brute mismatch f=({a},{b},{c}) p={p}: \
                             criterion {} brute {}",
                            s.surjective, s.brute_force_mod_p3
                        );
                    }
                }
            }
        }
    }

    fn brute_octa_classes(n: i64, u: u32, v: u32) -> Vec<u64> {
        let out_mod = 2i128.pow(u) * 3i128.pow(v + 1);
        let constraint = 2i128.pow(u) * 3i128.pow(v);
        (0..out_mod)
            .filter(|&x| (octahedral_i128(x) - n as i128).rem_euclid(constraint) == 0)
            .map(|x| x as u64)
            .collect()
    }

    #[test]
    fn octa_congruence_examples() {
        let sols = octa_congruence_solve(&int(0), 1, 0);
        assert_eq!(sols, vec![0u32.into(), 2u32.into(), 4u32.into()]);
        let sols = octa_congruence_solve(&int(1), 0, 0);
        assert_eq!(sols.len(), 3);
        let sols = octa_congruence_solve(&int(5), 4, 1);
        let brute = brute_octa_classes(5, 4, 1);
        let got: Vec<u64> = sols.iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(got, brute);
    }

    #[test]
    fn octa_congruence_full_sweep() {
        for u in 0..=6u32 {
            for v in 0..=4u32 {
                let constraint = 2i128.pow(u) * 3i128.pow(v);
                let out_mod = constraint * 3;
                for n in 0..constraint.min(400) {
                    let sols = octa_congruence_solve(&int(n as i64), u, v);
                    assert_eq!(sols.len(), 3, "u={u} v={v} n={n}");
                    for x in &sols {
                        let x = BigInt::from(x.clone());
                        assert!(x < BigInt::from(out_mod));
                        let diff = octahedral(&x) - int(n as i64);
                        assert!(
                            diff.mod_floor(&BigInt::from(constraint)).is_zero(),
                            "u={u} v={v} n={n} x={x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn octa_congruence_matches_brute_force() {
        for u in 0..=4u32 {
            for v in 0..=2u32 {
                let constraint = 2i64.pow(u) * 3i64.pow(v);
                for n in 0..constraint {
                    let sols: Vec<u64> = octa_congruence_solve(&int(n), u, v)
                        .iter()
                        .map(|x| x.to_u64().unwrap())
                        .collect();
                    assert_eq!(sols, brute_octa_classes(n, u, v), "u={u} v={v} n={n}");
                }
            }
        }
    }

    #[test]
    fn octahedral_seq_and_membership() {
        let seq = octahedral_seq(&BigUint::from(100u32));
        let values: Vec<i64> = seq.iter().map(|o| o.value.to_i64().unwrap()).collect();
        assert_eq!(values, vec![1, 6, 19, 44, 85]);
        assert!(is_octahedral(&BigUint::from(44u32)));
        assert_eq!(octahedral_arg(&BigUint::from(44u32)), Some(BigUint::from(4u32)));
        assert!(!is_octahedral(&BigUint::from(7u32)));
        assert!(!is_octahedral(&BigUint::from(0u32)));
    }

    #[test]
    fn octahedral_membership_large_sweep() {
        // alpha is strictly increasing and membership recognizes every
        // alpha(x); spot-check the gaps as well.
        let mut prev = BigInt::zero();
        for x in 1..=20_000i64 {
            let v = octahedral(&int(x));
            assert!(v > prev);
            assert!(is_octahedral(&v.to_biguint().unwrap()));
            assert!(!is_octahedral(&(&v + 1u32).to_biguint().unwrap()));
            prev = v;
        }
        // Large argument round trip.
        let x = BigInt::from(10u64.pow(6));
        let v = octahedral(&x).to_biguint().unwrap();
        assert_eq!(octahedral_arg(&v), Some(x.to_biguint().unwrap()));
    }
}
