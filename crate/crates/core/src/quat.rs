//! Exact Hurwitz quaternion arithmetic.
//!
//! Elements of the Hurwitz order B = Z[i, j, k, (1+i+j+k)/2] are stored
//! as doubled coordinates (2a0, 2a1, 2a2, 2a3), four integers sharing
//! one parity: all even for integer quaternions, all odd for
//! half-integer ones. On top of the ring operations this module
//! provides the two-sided Euclidean division, the standard-form
//! associate of norm = 1 (mod 4) elements, the unique reduced-word
//! factorization of proper norm-5^s elements into the six generators
//! 1 +- 2i, 1 +- 2j, 1 +- 2k, and the orthogonal lattice of a nonzero
//! quaternion with its Gram determinant.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuatError {
    #[error("doubled coordinates must share one parity: {0:?}")]
    MixedParity([i64; 4]),
    #[error("division by zero quaternion")]
    DivisionByZero,
    #[error("norm {0} is not 1 mod 4; no standard associate")]
    NormNotOneMod4(u64),
    #[error("quaternion is not proper")]
    NotProper,
    #[error("norm {0} is not a power of 5")]
    NormNotPowerOf5(u64),
    #[error("quaternion is not in standard form")]
    NotStandardForm,
    #[error("cannot parse quaternion literal {0:?}: {1}")]
    Parse(String, String),
}

/// A Hurwitz quaternion, stored as doubled coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzQuaternion {
    /// (2a0, 2a1, 2a2, 2a3); all four share one parity.
    pub t: [i64; 4],
}

impl HurwitzQuaternion {
    /// Build from doubled coordinates, enforcing the parity invariant.
    pub fn from_doubled(t: [i64; 4]) -> Result<Self, QuatError> {
        let parity = t[0] & 1;
        if t.iter().any(|&x| x & 1 != parity) {
            return Err(QuatError::MixedParity(t));
        }
        Ok(HurwitzQuaternion { t })
    }

    /// Build from integer coordinates a0 + a1 i + a2 j + a3 k.
    pub fn from_ints(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        HurwitzQuaternion { t: [2 * a0, 2 * a1, 2 * a2, 2 * a3] }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    /// (1 + i + j + k) / 2.
    pub fn omega() -> Self {
        HurwitzQuaternion { t: [1, 1, 1, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.t == [0; 4]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = [0i64; 4];
        for n in 0..4 {
            t[n] = self.t[n] + other.t[n];
        }
        HurwitzQuaternion { t }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut t = [0i64; 4];
        for n in 0..4 {
            t[n] = self.t[n] - other.t[n];
        }
        HurwitzQuaternion { t }
    }

    pub fn neg(&self) -> Self {
        HurwitzQuaternion { t: [-self.t[0], -self.t[1], -self.t[2], -self.t[3]] }
    }

    /// Multiply by an ordinary integer.
    pub fn scale(&self, s: i64) -> Self {
        HurwitzQuaternion {
            t: [self.t[0] * s, self.t[1] * s, self.t[2] * s, self.t[3] * s],
        }
    }

    /// Quaternion product, exact. Panics on i64 overflow of the result
    /// (paper-scale values stay far below that).
    pub fn mul(&self, other: &Self) -> Self {
        let a: [i128; 4] = self.t.map(|x| x as i128);
        let b: [i128; 4] = other.t.map(|x| x as i128);
        // Products of doubled coordinates are 4x the true products, so
        // each component below is twice the doubled result.
        let p0 = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
        let p1 = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
        let p2 = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
        let p3 = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
        let t = [p0, p1, p2, p3].map(|p| {
            debug_assert!(p % 2 == 0);
            i64::try_from(p / 2).expect("quaternion coordinate overflow")
        });
        debug_assert!({
            let parity = t[0] & 1;
            t.iter().all(|&x| x & 1 == parity)
        });
        HurwitzQuaternion { t }
    }

    pub fn conjugate(&self) -> Self {
        HurwitzQuaternion { t: [self.t[0], -self.t[1], -self.t[2], -self.t[3]] }
    }

    /// Nm(X) = a0^2 + a1^2 + a2^2 + a3^2, always a nonnegative integer.
    pub fn norm(&self) -> u64 {
        let s: i128 = self.t.iter().map(|&x| x as i128 * x as i128).sum();
        debug_assert!(s % 4 == 0);
        u64::try_from(s / 4).expect("norm overflow")
    }

    /// Tr(X) = 2a0 = the first doubled coordinate.
    pub fn trace(&self) -> i64 {
        self.t[0]
    }

    /// Trace zero.
    pub fn is_vector(&self) -> bool {
        self.t[0] == 0
    }

    /// True when no integer > 1 divides X within the Hurwitz order.
    ///
    /// X/d is a Hurwitz quaternion iff d divides all doubled
    /// coordinates and the quotients share one parity. Odd divisors of
    /// the content always preserve the parity pattern, so properness
    /// reduces to: the content's odd part is 1, and if the content is
    /// even, halving produces mixed parities.
    pub fn is_proper(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self
            .t
            .iter()
            .fold(0u64, |acc, &x| acc.gcd(&x.unsigned_abs()));
        let odd_part = g >> g.trailing_zeros().min(63);
        if odd_part != 1 {
            return false;
        }
        if g % 2 == 0 {
            let halves = self.t.map(|x| x / 2);
            let parity = halves[0] & 1;
            if halves.iter().all(|&x| x & 1 == parity) {
                return false;
            }
        }
        true
    }

    /// Euclidean inner product Re(X * conj(Y)); a half-integer, so the
    /// value returned is doubled: 2 Re(X conj(Y)) = (sum t_i s_i) / 2.
    pub fn inner_doubled(&self, other: &Self) -> i64 {
        let s: i128 = self
            .t
            .iter()
            .zip(&other.t)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        debug_assert!(s % 2 == 0);
        i64::try_from(s / 2).expect("inner product overflow")
    }

    /// True when Re(X conj(Y)) = 0.
    pub fn orthogonal_to(&self, other: &Self) -> bool {
        self.inner_doubled(other) == 0
    }
}

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

/// The 24 units of the Hurwitz order: +-1, +-i, +-j, +-k and
/// (+-1 +- i +- j +- k)/2.
pub fn enumerate_units() -> Vec<HurwitzQuaternion> {
    let mut units = Vec::with_capacity(24);
    for pos in 0..4 {
        for sign in [2i64, -2] {
            let mut t = [0i64; 4];
            t[pos] = sign;
            units.push(HurwitzQuaternion { t });
        }
    }
    for s0 in [1i64, -1] {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                for s3 in [1i64, -1] {
                    units.push(HurwitzQuaternion { t: [s0, s1, s2, s3] });
                }
            }
        }
    }
    units
}

/// All Hurwitz quaternions of norm n (both parity classes), by direct
/// enumeration of doubled coordinates with sum of squares 4n.
pub fn all_with_norm(n: u64) -> Vec<HurwitzQuaternion> {
    let target = 4 * n as i64;
    let bound = (target as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for t0 in -bound..=bound {
        let r0 = target - t0 * t0;
        if r0 < 0 {
            continue;
        }
        for t1 in -bound..=bound {
            let r1 = r0 - t1 * t1;
            if r1 < 0 {
                continue;
            }
            if (t1 & 1) != (t0 & 1) {
                continue;
            }
            for t2 in -bound..=bound {
                let r2 = r1 - t2 * t2;
                if r2 < 0 {
                    continue;
                }
                if (t2 & 1) != (t0 & 1) {
                    continue;
                }
                let t3 = (r2 as f64).sqrt() as i64;
                for t3 in [t3 - 1, t3, t3 + 1] {
                    if t3 * t3 == r2 && (t3 & 1) == (t0 & 1) {
                        if t3 == 0 {
                            out.push(HurwitzQuaternion { t: [t0, t1, t2, 0] });
                        } else {
                            out.push(HurwitzQuaternion { t: [t0, t1, t2, t3] });
                            out.push(HurwitzQuaternion { t: [t0, t1, t2, -t3] });
                        }
                        break;
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Euclidean division
// ---------------------------------------------------------------------------

/// Which side the divisor sits on: Right means X = Q * D + R, Left
/// means X = D * Q + R.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Nearest integer to num/den (den > 0), ties toward negative infinity.
fn div_round(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    (2 * num + den).div_euclid(2 * den)
}

/// Euclidean division: returns (quotient, remainder) with
/// Nm(remainder) < Nm(divisor).
///
/// The exact quotient X D^{-1} (or D^{-1} X) is rounded to the nearest
/// point of the Hurwitz lattice; trying both the integer and the
/// half-integer rounding and keeping the better one always lands within
/// the covering radius, which is below 1 for this order.
pub fn euclid_divide(
    x: &HurwitzQuaternion,
    d: &HurwitzQuaternion,
    side: Side,
) -> Result<(HurwitzQuaternion, HurwitzQuaternion), QuatError> {
    if d.is_zero() {
        return Err(QuatError::DivisionByZero);
    }
    let nd = d.norm() as i128;
    // Doubled coordinates of the exact quotient are num[i] / nd.
    let prod = match side {
        Side::Right => x.mul(&d.conjugate()),
        Side::Left => d.conjugate().mul(x),
    };
    let num: [i128; 4] = prod.t.map(|v| v as i128);

    let mut best: Option<(u64, HurwitzQuaternion, HurwitzQuaternion)> = None;
    // num[i]/nd is the doubled coordinate of the exact quotient.
    // Integer rounding: nearest even integer per doubled coordinate.
    let q_int = HurwitzQuaternion {
        t: num.map(|n| i64::try_from(2 * div_round(n, 2 * nd)).expect("quotient overflow")),
    };
    // Half-integer rounding: doubled coords = nearest odd to num*2/nd... i.e.
    // nearest odd integer to num/nd per coordinate.
    let q_half = HurwitzQuaternion {
        t: num.map(|n| {
            // nearest odd integer to n/nd: round((n/nd - 1)/2)*2 + 1
            let k = div_round(n - nd, 2 * nd);
            i64::try_from(2 * k + 1).expect("quotient overflow")
        }),
    };
    for q in [q_int, q_half] {
        let qd = match side {
            Side::Right => q.mul(d),
            Side::Left => d.mul(&q),
        };
        let r = x.sub(&qd);
        let nr = r.norm();
        if best.as_ref().map_or(true, |(n, _, _)| nr < *n) {
            best = Some((nr, q, r));
        }
    }
    let (nr, q, r) = best.unwrap();
    assert!(
        (nr as u128) < nd as u128,
        "Euclidean division failed: Nm(r) = {nr} >= Nm(d) = {nd}"
    );
    Ok((q, r))
}

/// True when d divides x exactly on the given side.
pub fn divides_exactly(x: &HurwitzQuaternion, d: &HurwitzQuaternion, side: Side) -> bool {
    matches!(euclid_divide(x, d, side), Ok((_, r)) if r.is_zero())
}

// ---------------------------------------------------------------------------
// Standard form
// ---------------------------------------------------------------------------

/// Q is in standard form when Q = 1 (mod 2B) and Tr(Q) = 2 (mod 8).
pub fn is_standard_form(q: &HurwitzQuaternion) -> bool {
    // Q - 1 = 2W with W Hurwitz: doubled coords of Q - 1 all even and
    // their halves share one parity.
    let d = [q.t[0] - 2, q.t[1], q.t[2], q.t[3]];
    if d.iter().any(|&x| x % 2 != 0) {
        return false;
    }
    let halves = d.map(|x| x / 2);
    let parity = halves[0] & 1;
    if halves.iter().any(|&x| x & 1 != parity) {
        return false;
    }
    q.t[0].rem_euclid(8) == 2
}

/// The unique right-associate Q u (u a unit) in standard form.
///
/// Requires Nm(Q) = 1 (mod 4). Uniqueness is asserted by scanning all
/// 24 right-associates.
pub fn standard_associate(q: &HurwitzQuaternion) -> Result<HurwitzQuaternion, QuatError> {
    if q.norm() % 4 != 1 {
        return Err(QuatError::NormNotOneMod4(q.norm()));
    }
    let hits: Vec<HurwitzQuaternion> = enumerate_units()
        .iter()
        .map(|u| q.mul(u))
        .filter(is_standard_form)
        .collect();
    assert_eq!(
        hits.len(),
        1,
        "standard associate must be unique, found {} for {q}",
        hits.len()
    );
    Ok(hits[0])
}

// ---------------------------------------------------------------------------
// Norm-5 generators and factorization
// ---------------------------------------------------------------------------

/// One of the six norm-5 generators 1 +- 2i, 1 +- 2j, 1 +- 2k.
///
/// Encoding: index/2 picks the axis (i, j, k), index & 1 the sign
/// (0 for +, 1 for -), so conjugation flips the low bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorLabel(pub u8);

impl GeneratorLabel {
    pub const ALL: [GeneratorLabel; 6] = [
        GeneratorLabel(0),
        GeneratorLabel(1),
        GeneratorLabel(2),
        GeneratorLabel(3),
        GeneratorLabel(4),
        GeneratorLabel(5),
    ];

    pub fn quaternion(&self) -> HurwitzQuaternion {
        let axis = (self.0 / 2) as usize + 1;
        let sign = if self.0 & 1 == 0 { 4 } else { -4 };
        let mut t = [2, 0, 0, 0];
        t[axis] = sign;
        HurwitzQuaternion { t }
    }

    pub fn conjugate(&self) -> Self {
        GeneratorLabel(self.0 ^ 1)
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = ["i", "j", "k"][(self.0 / 2) as usize];
        let sign = if self.0 & 1 == 0 { "+" } else { "-" };
        write!(f, "1{sign}2{axis}")
    }
}

/// True when all doubled coordinates of q are divisible by 2m, i.e.
/// q/m is still a Hurwitz integer quaternion... here specialized to
/// testing divisibility of a product by the rational integer 5.
fn divisible_by_int(q: &HurwitzQuaternion, m: i64) -> bool {
    q.t.iter().all(|&x| x % m == 0)
}

/// Factor a standard-form proper quaternion of norm 5^s into its unique
/// reduced word of generators, leftmost factor first.
///
/// Peels the leftmost generator at each step: exactly one g among the
/// six satisfies conj(g) Q = 0 (mod 5), and then Q <- conj(g) Q / 5.
/// After s steps the remainder is a unit and Q = (g_1 ... g_s) u, so
/// the standard associate of the word's product reproduces Q.
pub fn factor_norm5(q: &HurwitzQuaternion) -> Result<Vec<GeneratorLabel>, QuatError> {
    if !q.is_proper() {
        return Err(QuatError::NotProper);
    }
    let mut nm = q.norm();
    let mut s = 0u32;
    while nm % 5 == 0 {
        nm /= 5;
        s += 1;
    }
    if nm != 1 {
        return Err(QuatError::NormNotPowerOf5(q.norm()));
    }
    if !is_standard_form(q) {
        // The word is pinned to standard form; other associates would
        // make "re-multiplying reproduces Q" ambiguous.
        return Err(QuatError::NotStandardForm);
    }
    let mut word = Vec::with_capacity(s as usize);
    let mut cur = *q;
    for _ in 0..s {
        let mut found = None;
        for label in GeneratorLabel::ALL {
            let prod = label.quaternion().conjugate().mul(&cur);
            if divisible_by_int(&prod, 5) {
                assert!(
                    found.is_none(),
                    "left norm-5 divisor must be unique for proper quaternions"
                );
                found = Some((label, HurwitzQuaternion { t: prod.t.map(|x| x / 5) }));
            }
        }
        let (label, next) = found.expect("proper norm-5^s quaternion must have a generator divisor");
        if let Some(prev) = word.last() {
            let prev: &GeneratorLabel = prev;
            assert_ne!(prev.conjugate(), label, "word must be reduced");
        }
        word.push(label);
        cur = next;
    }
    debug_assert_eq!(cur.norm(), 1);
    Ok(word)
}

/// Multiply out a word of generators, leftmost factor first.
pub fn word_product(word: &[GeneratorLabel]) -> HurwitzQuaternion {
    word.iter()
        .fold(HurwitzQuaternion::one(), |acc, g| acc.mul(&g.quaternion()))
}

// ---------------------------------------------------------------------------
// Orthogonal lattices
// ---------------------------------------------------------------------------

/// A basis of the rank-3 lattice of Hurwitz quaternions orthogonal to
/// R, together with its basis-independent Gram determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalLattice {
    pub basis: [HurwitzQuaternion; 3],
    pub gram_determinant: BigRational,
}

/// Basis of B itself, as doubled-coordinate columns.
const B_BASIS: [[i64; 4]; 4] = [
    [2, 0, 0, 0],
    [0, 2, 0, 0],
    [0, 0, 2, 0],
    [1, 1, 1, 1],
];

/// The lattice { X in B : Re(X conj(R)) = 0 } for nonzero R.
///
/// Expressed in the basis of B, orthogonality to R is a single integer
/// linear condition; its kernel is computed by unimodular column
/// operations and mapped back to quaternions.
pub fn orthogonal_lattice(r: &HurwitzQuaternion) -> Result<OrthogonalLattice, QuatError> {
    if r.is_zero() {
        return Err(QuatError::DivisionByZero);
    }
    // Functional on B-coordinates c: sum_i w_i c_i with w = M^T s,
    // where s are R's doubled coordinates and M the basis matrix.
    let s = r.t;
    let mut w: [i128; 4] = [0; 4];
    for col in 0..4 {
        w[col] = (0..4).map(|row| B_BASIS[col][row] as i128 * s[row] as i128).sum();
    }
    // Column-reduce: transform w to (g, 0, 0, 0) by unimodular U; the
    // kernel is spanned by U's last three columns.
    let mut u = [[0i128; 4]; 4];
    for n in 0..4 {
        u[n][n] = 1;
    }
    for idx in 1..4 {
        let (a, b) = (w[0], w[idx]);
        if b == 0 {
            continue;
        }
        let e = BigInt::from(a).extended_gcd(&BigInt::from(b));
        let g: i128 = (&e.gcd).try_into().unwrap();
        let ex: i128 = (&e.x).try_into().unwrap();
        let ey: i128 = (&e.y).try_into().unwrap();
        let (p, q) = (a / g, b / g);
        // [col0, colidx] <- [ex*col0 + ey*colidx, -q*col0 + p*colidx]
        for row in 0..4 {
            let c0 = u[row][0];
            let ci = u[row][idx];
            u[row][0] = ex * c0 + ey * ci;
            u[row][idx] = -q * c0 + p * ci;
        }
        w[0] = g;
        w[idx] = 0;
    }
    let mut basis = [HurwitzQuaternion::zero(); 3];
    for (out, col) in basis.iter_mut().zip(1..4) {
        let mut t = [0i64; 4];
        for row in 0..4 {
            let v: i128 = (0..4).map(|n| B_BASIS[n][row] as i128 * u[n][col]).sum();
            t[row] = i64::try_from(v).expect("lattice basis overflow");
        }
        *out = HurwitzQuaternion { t };
    }
    // Gram determinant with entries Re(X conj(Y)) = inner_doubled / 2.
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let gram: Vec<Vec<BigRational>> = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| BigRational::from(BigInt::from(basis[a].inner_doubled(&basis[b]))) * &half)
                .collect()
        })
        .collect();
    let det = |m: &Vec<Vec<BigRational>>| -> BigRational {
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    };
    Ok(OrthogonalLattice { basis, gram_determinant: det(&gram) })
}

// ---------------------------------------------------------------------------
// Literal format
// ---------------------------------------------------------------------------

impl fmt::Display for HurwitzQuaternion {
    /// Renders all four components, halves as fractions over 2:
    /// "1+2i+0j+0k", "1/2-1/2i+3/2j+1/2k".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_coeff = |f: &mut fmt::Formatter<'_>, doubled: i64| -> fmt::Result {
            if doubled % 2 == 0 {
                write!(f, "{}", (doubled / 2).abs())
            } else {
                write!(f, "{}/2", doubled.abs())
            }
        };
        if self.t[0] < 0 {
            write!(f, "-")?;
        }
        write_coeff(f, self.t[0])?;
        for (n, unit) in [(1, "i"), (2, "j"), (3, "k")] {
            write!(f, "{}", if self.t[n] < 0 { "-" } else { "+" })?;
            write_coeff(f, self.t[n])?;
            write!(f, "{unit}")?;
        }
        Ok(())
    }
}

impl FromStr for HurwitzQuaternion {
    type Err = QuatError;

    /// Accepts sums of terms like "3", "-1/2", "2i", "-j", "1/2k" in
    /// any order; omitted components are zero.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| QuatError::Parse(input.to_string(), msg.to_string());
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty literal"));
        }
        let mut doubled = [0i64; 4];
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    1i64
                }
                b'-' => {
                    rest = &rest[1..];
                    -1i64
                }
                _ if first => 1i64,
                _ => return Err(err("expected + or - between terms")),
            };
            first = false;
            // term: [digits][/2][ijk]
            let digits_end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let digits = &rest[..digits_end];
            rest = &rest[digits_end..];
            let halved = if let Some(r) = rest.strip_prefix("/2") {
                rest = r;
                true
            } else {
                false
            };
            let axis = match rest.as_bytes().first() {
                Some(b'i') => {
                    rest = &rest[1..];
                    1
                }
                Some(b'j') => {
                    rest = &rest[1..];
                    2
                }
                Some(b'k') => {
                    rest = &rest[1..];
                    3
                }
                _ => 0,
            };
            if digits.is_empty() && axis == 0 {
                return Err(err("term with neither digits nor unit"));
            }
            let magnitude: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| err("coefficient out of range"))?
            };
            let add = sign * if halved { magnitude } else { 2 * magnitude };
            doubled[axis] = doubled[axis]
                .checked_add(add)
                .ok_or_else(|| err("coefficient out of range"))?;
        }
        HurwitzQuaternion::from_doubled(doubled)
    }
}
