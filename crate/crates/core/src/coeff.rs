//! Coefficient domains: arbitrary-precision integers, rationals, prime fields,
//! plus integer factorization.
//!
//! Everything downstream (polynomials, module elements, Groebner bases) is
//! generic over [`CoeffRing`]. Three rings are provided: [`IntRing`] (Z),
//! [`RatField`] (Q) and [`PrimeField`] (F_p for a u64 prime p).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A commutative ring with the operations the Groebner engine needs.
///
/// Over Z this is the full Euclidean-domain interface (exact division,
/// extended gcd); over a field `checked_div` always succeeds on nonzero
/// divisors and `gcd_ext` degenerates to inversion.
pub trait CoeffRing: Clone + Eq + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn is_field(&self) -> bool;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Exact division: `Some(q)` with `q * b == a`, `None` if `b` is zero or
    /// does not divide `a`.
    fn checked_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// `(g, u, v)` with `g = u*a + v*b` and `g` canonical (nonnegative over Z,
    /// 0 or 1 over a field). `gcd_ext(0, 0) = (0, 0, 0)`.
    fn gcd_ext(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem);

    /// A unit `c` such that `c * a` is canonically normalized: positive over
    /// Z, `1` over a field (i.e. `c = a^{-1}`). For `a = 0` returns `1`.
    fn canonical_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn display(&self, a: &Self::Elem) -> String;

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.gcd_ext(a, b).0
    }

    /// `lcm(a, b)`, canonically normalized; zero if either input is zero.
    fn lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let g = self.gcd(a, b);
        let q = self.checked_div(b, &g).expect("gcd divides");
        let l = self.mul(a, &q);
        let u = self.canonical_unit(&l);
        self.mul(&u, &l)
    }

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.checked_div(b, a).is_some()
    }
}

/// The ring of integers Z with `BigInt` elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct IntRing;

impl CoeffRing for IntRing {
    type Elem = BigInt;

    fn is_field(&self) -> bool {
        false
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn checked_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn gcd_ext(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
        extended_gcd(a, b)
    }
    fn canonical_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn display(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// The field of rationals Q with `BigRational` elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RatField;

impl CoeffRing for RatField {
    type Elem = BigRational;

    fn is_field(&self) -> bool {
        true
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn checked_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn gcd_ext(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational, BigRational) {
        field_gcd_ext(self, a, b)
    }
    fn canonical_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn display(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The prime field F_p; elements are residues in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Rejects composite moduli.
    pub fn new(p: u64) -> Result<Self, Error> {
        if is_prime_u64(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::CompositeModulus(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = v.mod_floor(&BigInt::from(self.p));
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p.
        Some(self.pow(a, self.p - 2))
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base, self.p);
            }
            base = mul_mod(base, base, self.p);
            e >>= 1;
        }
        acc
    }
}

impl CoeffRing for PrimeField {
    type Elem = u64;

    fn is_field(&self) -> bool {
        true
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        let m = (v % self.p as i64 + self.p as i64) as u64;
        m % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn checked_div(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inv(*b).map(|bi| self.mul(a, &bi))
    }
    fn gcd_ext(&self, a: &u64, b: &u64) -> (u64, u64, u64) {
        field_gcd_ext(self, a, b)
    }
    fn canonical_unit(&self, a: &u64) -> u64 {
        self.inv(*a).unwrap_or(1 % self.p)
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
}

fn field_gcd_ext<R: CoeffRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> (R::Elem, R::Elem, R::Elem) {
    if !ring.is_zero(a) {
        (ring.one(), ring.canonical_unit(a), ring.zero())
    } else if !ring.is_zero(b) {
        (ring.one(), ring.zero(), ring.canonical_unit(b))
    } else {
        (ring.zero(), ring.zero(), ring.zero())
    }
}

/// Extended Euclid over Z: `(g, u, v)` with `g = gcd(a, b) >= 0` and
/// `g = u*a + v*b`. `(0, 0) -> (0, 0, 0)`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() && b.is_zero() {
        return (BigInt::zero(), BigInt::zero(), BigInt::zero());
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let tmp = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, tmp);
        let tmp = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, tmp);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// A prime factorization `sign * prod p_i^{v_i}` with strictly increasing
/// certified primes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerFactorization {
    pub factors: Vec<(BigInt, u32)>,
    pub negative: bool,
}

impl IntegerFactorization {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::one();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        if self.negative {
            -v
        } else {
            v
        }
    }
}

const TRIAL_DIVISION_BOUND: u64 = 10_000;

/// Prime factorization of a nonzero integer: trial division to 10^4, then
/// Pollard rho with Miller-Rabin certification. Guaranteed for |a| < 2^64;
/// larger inputs are best-effort and report an unfactored composite cofactor
/// when the search gives up.
pub fn factor_integer(a: &BigInt) -> Result<IntegerFactorization, Error> {
    if a.is_zero() {
        return Err(Error::FactorZero);
    }
    let negative = a.is_negative();
    let mut n = a.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(last) = factors.iter_mut().find(|(q, _)| *q == p) {
            last.1 += e;
        } else {
            factors.push((p, e));
        }
    };

    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && !n.is_one() {
        let db = BigInt::from(d);
        let mut e = 0u32;
        loop {
            let (q, r) = n.div_rem(&db);
            if r.is_zero() {
                n = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            push(db, e, &mut factors);
        }
        d += if d == 2 { 1 } else { 2 };
    }

    // Remaining cofactor has no factor below 10^4.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(m64) = to_u64(&m) {
            if is_prime_u64(m64) {
                push(m, 1, &mut factors);
                continue;
            }
            let f = pollard_rho(m64).ok_or_else(|| Error::UnfactoredComposite(m.clone()))?;
            stack.push(BigInt::from(f));
            stack.push(&m / BigInt::from(f));
        } else {
            // Beyond the guaranteed range: best-effort probable-prime check.
            if is_probable_prime_bigint(&m) {
                push(m, 1, &mut factors);
            } else {
                return Err(Error::UnfactoredComposite(m));
            }
        }
    }

    factors.sort_by(|(p, _), (q, _)| p.cmp(q));
    Ok(IntegerFactorization { factors, negative })
}

fn to_u64(n: &BigInt) -> Option<u64> {
    let (sign, digits) = n.to_u64_digits();
    match (sign, digits.len()) {
        (num_bigint::Sign::NoSign, _) => Some(0),
        (num_bigint::Sign::Plus, 1) => Some(digits[0]),
        _ => None,
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the usual 12-base certificate).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_probable_prime_bigint(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    let n1: BigInt = n - 1;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let ab = BigInt::from(a);
        if &ab >= n {
            continue;
        }
        let mut x = ab.modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho (Brent variant) for a composite u64; returns a proper factor.
fn pollard_rho(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return Some(d);
        }
    }
    None
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn extended_gcd_examples() {
        assert_eq!(extended_gcd(&bi(4), &bi(6)), (bi(2), bi(-1), bi(1)));
        assert_eq!(extended_gcd(&bi(0), &bi(0)), (bi(0), bi(0), bi(0)));
        assert_eq!(extended_gcd(&bi(18), &bi(0)), (bi(18), bi(1), bi(0)));
    }

    #[test]
    fn extended_gcd_random_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let a = bi(rng.gen_range(-1_000_000i64..=1_000_000));
            let b = bi(rng.gen_range(-1_000_000i64..=1_000_000));
            let (g, u, v) = extended_gcd(&a, &b);
            assert!(!g.is_negative());
            assert_eq!(&u * &a + &v * &b, g);
            if !g.is_zero() {
                assert!((&a % &g).is_zero());
                assert!((&b % &g).is_zero());
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f = factor_integer(&bi(18)).unwrap();
        assert_eq!(f.factors, vec![(bi(2), 1), (bi(3), 2)]);
        assert!(!f.negative);

        let f = factor_integer(&bi(1)).unwrap();
        assert!(f.factors.is_empty());
        assert!(!f.negative);

        let f = factor_integer(&bi(97)).unwrap();
        assert_eq!(f.factors, vec![(bi(97), 1)]);

        assert!(matches!(factor_integer(&bi(0)), Err(Error::FactorZero)));
    }

    #[test]
    fn factor_roundtrip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let v: u64 = rng.gen();
            if v == 0 {
                continue;
            }
            let n = if rng.gen_bool(0.5) {
                bi(0) - BigInt::from(v)
            } else {
                BigInt::from(v)
            };
            let f = factor_integer(&n).unwrap();
            assert_eq!(f.value(), n, "roundtrip failed for {n}");
            for (p, _) in &f.factors {
                let p64 = p.to_u64_digits().1[0];
                assert!(is_prime_u64(p64), "{p} not prime");
            }
            for w in f.factors.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
        }
    }

    #[test]
    fn prime_field_matches_integer_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &p in &[2u64, 3, 5, 97, 4294967311] {
            let fp = PrimeField::new(p).unwrap();
            let z = IntRing;
            for _ in 0..200 {
                let a = rng.gen_range(-1000i64..1000);
                let b = rng.gen_range(-1000i64..1000);
                let (fa, fb) = (fp.from_i64(a), fp.from_i64(b));
                let (za, zb) = (z.from_i64(a), z.from_i64(b));
                assert_eq!(fp.add(&fa, &fb), fp.reduce_bigint(&z.add(&za, &zb)));
                assert_eq!(fp.sub(&fa, &fb), fp.reduce_bigint(&z.sub(&za, &zb)));
                assert_eq!(fp.mul(&fa, &fb), fp.reduce_bigint(&z.mul(&za, &zb)));
            }
        }
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let fp = PrimeField::new(97).unwrap();
        for a in 1..97u64 {
            let inv = fp.inv(a).unwrap();
            assert_eq!(fp.mul(&a, &inv), 1);
        }
        assert_eq!(fp.inv(0), None);
    }
}
