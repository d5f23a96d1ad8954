//! Polynomial factorization over fields, desk-scale.
//!
//! Univariate over F_p: squarefree decomposition (with the p-th-power
//! fallback), distinct-degree splitting, then Cantor-Zassenhaus equal-degree
//! splitting driven by a seeded generator. Univariate over Q: clear
//! denominators, Yun squarefree decomposition, factor mod a good prime,
//! linear multifactor Hensel lifting to a Mignotte-style bound, Zassenhaus
//! subset recombination. Multivariate over either field: content recursion
//! plus Kronecker substitution down to the univariate routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{is_prime_u64, CoeffRing, IntRing, PrimeField, RatField};
use crate::error::{Error, Result};
use crate::poly::{int_content, poly_gcd, MonomialOrder, Polynomial, PowerProduct, RingCtx};

/// Knobs for the factorization routines.
#[derive(Clone, Debug)]
pub struct FactorConfig {
    /// Degree bound for the public univariate entry points.
    pub degree_bound: u32,
    /// Degree bound applied to Kronecker images inside the multivariate path.
    pub kronecker_bound: u32,
    /// Seed for the equal-degree splitting randomness.
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            degree_bound: 16,
            kronecker_bound: 64,
            seed: 0,
        }
    }
}

/// `unit * prod factors[i]^mult[i]` reproduces the input; factors are monic
/// (leading coefficient 1 under the context ordering) and sorted
/// deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldFactors<R: CoeffRing> {
    pub unit: R::Elem,
    pub factors: Vec<(Polynomial<R>, u32)>,
}

// ---------------------------------------------------------------------------
// dense univariate helpers, generic over the coefficient field
// ---------------------------------------------------------------------------

type Dense<R> = Vec<<R as CoeffRing>::Elem>;

fn trim<R: CoeffRing>(ring: &R, mut f: Dense<R>) -> Dense<R> {
    while f.last().map(|c| ring.is_zero(c)).unwrap_or(false) {
        f.pop();
    }
    f
}

fn deg<T>(f: &[T]) -> i64 {
    f.len() as i64 - 1
}

fn dense_is_zero<T>(f: &[T]) -> bool {
    f.is_empty()
}

fn dense_add<R: CoeffRing>(ring: &R, f: &Dense<R>, g: &Dense<R>) -> Dense<R> {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(|| ring.zero());
        let b = g.get(i).cloned().unwrap_or_else(|| ring.zero());
        out.push(ring.add(&a, &b));
    }
    trim(ring, out)
}

fn dense_sub<R: CoeffRing>(ring: &R, f: &Dense<R>, g: &Dense<R>) -> Dense<R> {
    let neg: Dense<R> = g.iter().map(|c| ring.neg(c)).collect();
    dense_add(ring, f, &neg)
}

fn dense_mul<R: CoeffRing>(ring: &R, f: &Dense<R>, g: &Dense<R>) -> Dense<R> {
    if dense_is_zero(f) || dense_is_zero(g) {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
        }
    }
    trim(ring, out)
}

fn dense_scale<R: CoeffRing>(ring: &R, f: &Dense<R>, c: &R::Elem) -> Dense<R> {
    trim(ring, f.iter().map(|a| ring.mul(a, c)).collect())
}

/// Division with remainder over a field.
fn dense_divrem<R: CoeffRing>(ring: &R, f: &Dense<R>, g: &Dense<R>) -> (Dense<R>, Dense<R>) {
    assert!(!dense_is_zero(g), "division by zero polynomial");
    let mut rem = f.clone();
    let dg = deg(g);
    let ginv = ring
        .checked_div(&ring.one(), g.last().unwrap())
        .expect("field leading coefficient invertible");
    let mut quo = vec![ring.zero(); (deg(f) - dg + 1).max(0) as usize];
    while deg(&rem) >= dg {
        let shift = (deg(&rem) - dg) as usize;
        let c = ring.mul(rem.last().unwrap(), &ginv);
        for (j, gc) in g.iter().enumerate() {
            let idx = shift + j;
            let s = ring.mul(&c, gc);
            rem[idx] = ring.sub(&rem[idx], &s);
        }
        rem = trim(ring, rem);
        quo[shift] = c;
    }
    (trim(ring, quo), rem)
}

fn dense_monic<R: CoeffRing>(ring: &R, f: &Dense<R>) -> Dense<R> {
    match f.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = ring.checked_div(&ring.one(), lc).expect("invertible");
            dense_scale(ring, f, &inv)
        }
    }
}

fn dense_gcd<R: CoeffRing>(ring: &R, f: &Dense<R>, g: &Dense<R>) -> Dense<R> {
    let mut a = f.clone();
    let mut b = g.clone();
    while !dense_is_zero(&b) {
        let (_, r) = dense_divrem(ring, &a, &b);
        a = b;
        b = r;
    }
    dense_monic(ring, &a)
}

fn dense_derivative<R: CoeffRing>(ring: &R, f: &Dense<R>) -> Dense<R> {
    if f.len() <= 1 {
        return Vec::new();
    }
    let out = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ring.mul(c, &ring.from_i64(i as i64)))
        .collect();
    trim(ring, out)
}

fn dense_pow_mod<R: CoeffRing>(ring: &R, base: &Dense<R>, mut e: u64, m: &Dense<R>) -> Dense<R> {
    let mut acc = vec![ring.one()];
    let mut b = dense_divrem(ring, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = dense_divrem(ring, &dense_mul(ring, &acc, &b), m).1;
        }
        b = dense_divrem(ring, &dense_mul(ring, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// univariate factorization over F_p
// ---------------------------------------------------------------------------

/// Squarefree decomposition over F_p; returns pairs (squarefree monic, mult).
fn fp_squarefree(fp: &PrimeField, f: &Dense<PrimeField>) -> Vec<(Dense<PrimeField>, u32)> {
    let p = fp.modulus();
    let mut out: Vec<(Dense<PrimeField>, u32)> = Vec::new();
    let mut f = dense_monic(fp, f);
    let mut stride = 1u32;
    loop {
        if deg(&f) <= 0 {
            return out;
        }
        let df = dense_derivative(fp, &f);
        if dense_is_zero(&df) {
            // f = g(x^p): take p-th root (coefficients fixed by Frobenius on F_p).
            let mut root = Vec::new();
            for (i, c) in f.iter().enumerate() {
                if i as u64 % p == 0 {
                    root.push(*c);
                } else {
                    debug_assert_eq!(*c, 0);
                }
            }
            f = trim(fp, root);
            stride *= p as u32;
            continue;
        }
        // Yun-style pass.
        let mut c = dense_gcd(fp, &f, &df);
        let mut w = dense_divrem(fp, &f, &c).0;
        let mut i = 1u32;
        while deg(&w) > 0 {
            let y = dense_gcd(fp, &w, &c);
            let part = dense_divrem(fp, &w, &y).0;
            if deg(&part) > 0 {
                out.push((part, i * stride));
            }
            c = dense_divrem(fp, &c, &y).0;
            w = y;
            i += 1;
        }
        if deg(&c) <= 0 {
            return out;
        }
        // Remaining factors have multiplicity divisible by p.
        f = c;
    }
}

/// Distinct-degree split of a squarefree monic polynomial; pairs
/// (product of all irreducible factors of degree d, d).
fn fp_distinct_degree(fp: &PrimeField, f: &Dense<PrimeField>) -> Vec<(Dense<PrimeField>, u32)> {
    let p = fp.modulus();
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1u64];
    let mut h = dense_divrem(fp, &x, &f).1;
    let mut d = 0u32;
    while deg(&f) > 0 {
        d += 1;
        if (deg(&f) as u32) < 2 * d {
            out.push((f.clone(), deg(&f) as u32));
            break;
        }
        h = dense_pow_mod(fp, &h, p, &f);
        let g = dense_gcd(fp, &dense_sub(fp, &h, &x), &f);
        if deg(&g) > 0 {
            out.push((g.clone(), d));
            f = dense_divrem(fp, &f, &g).0;
            h = dense_divrem(fp, &h, &f).1;
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: `f` monic squarefree, all
/// irreducible factors of degree `d`.
fn fp_equal_degree(
    fp: &PrimeField,
    f: &Dense<PrimeField>,
    d: u32,
    rng: &mut ChaCha8Rng,
) -> Vec<Dense<PrimeField>> {
    let n = deg(f);
    if n as u32 == d {
        return vec![dense_monic(fp, f)];
    }
    let p = fp.modulus();
    loop {
        let a: Dense<PrimeField> = trim(
            fp,
            (0..n).map(|_| rng.gen_range(0..p)).collect::<Vec<u64>>(),
        );
        if deg(&a) < 1 {
            continue;
        }
        let g = dense_gcd(fp, &a, f);
        let split = if deg(&g) > 0 {
            g
        } else if p == 2 {
            // Trace map over F_{2^d}.
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                acc = dense_pow_mod(fp, &acc, 2, f);
                t = dense_add(fp, &t, &acc);
            }
            dense_gcd(fp, &t, f)
        } else {
            let e = (p.pow(d) - 1) / 2;
            let b = dense_pow_mod(fp, &a, e, f);
            let b1 = dense_sub(fp, &b, &vec![1u64]);
            dense_gcd(fp, &b1, f)
        };
        if deg(&split) > 0 && deg(&split) < n {
            let rest = dense_divrem(fp, f, &split).0;
            let mut out = fp_equal_degree(fp, &split, d, rng);
            out.extend(fp_equal_degree(fp, &rest, d, rng));
            return out;
        }
    }
}

fn factor_dense_fp(
    fp: &PrimeField,
    f: &Dense<PrimeField>,
    cfg: &FactorConfig,
) -> (u64, Vec<(Dense<PrimeField>, u32)>) {
    let unit = *f.last().expect("nonzero input");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let mut out: Vec<(Dense<PrimeField>, u32)> = Vec::new();
    for (sqf, mult) in fp_squarefree(fp, f) {
        for (prod, d) in fp_distinct_degree(fp, &sqf) {
            for irr in fp_equal_degree(fp, &prod, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(cmp_dense_factor::<PrimeField>);
    (unit, out)
}

fn cmp_dense_factor<R: CoeffRing>(
    a: &(Dense<R>, u32),
    b: &(Dense<R>, u32),
) -> std::cmp::Ordering {
    (a.0.len(), format!("{:?}", a.0), a.1).cmp(&(b.0.len(), format!("{:?}", b.0), b.1))
}

// ---------------------------------------------------------------------------
// univariate factorization over Q (primitive Z polynomials inside)
// ---------------------------------------------------------------------------

type ZDense = Vec<BigInt>;

fn ztrim(mut f: ZDense) -> ZDense {
    while f.last().map(|c| c.is_zero()).unwrap_or(false) {
        f.pop();
    }
    f
}

fn z_content(f: &ZDense) -> BigInt {
    let mut c = BigInt::zero();
    for a in f {
        c = num_integer::gcd(c, a.clone());
    }
    c
}

fn z_primitive(f: &ZDense) -> (BigInt, ZDense) {
    let mut c = z_content(f);
    if c.is_zero() {
        return (BigInt::zero(), Vec::new());
    }
    if f.last().unwrap().is_negative() {
        c = -c;
    }
    (c.clone(), f.iter().map(|a| a / &c).collect())
}

fn z_mul(f: &ZDense, g: &ZDense) -> ZDense {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    ztrim(out)
}

/// Exact division in Z[x]; `None` if not exactly divisible.
fn z_exact_div(f: &ZDense, g: &ZDense) -> Option<ZDense> {
    if f.is_empty() {
        return Some(Vec::new());
    }
    if g.is_empty() {
        return None;
    }
    let mut rem = f.clone();
    let mut quo = vec![BigInt::zero(); f.len().saturating_sub(g.len()) + 1];
    let glc = g.last().unwrap();
    while !rem.is_empty() {
        if rem.len() < g.len() {
            return None;
        }
        let (q, r) = rem.last().unwrap().div_rem(glc);
        if !r.is_zero() {
            return None;
        }
        let shift = rem.len() - g.len();
        for (j, gc) in g.iter().enumerate() {
            rem[shift + j] -= &q * gc;
        }
        rem = ztrim(rem);
        quo[shift] = q;
    }
    Some(ztrim(quo))
}

/// Yun's squarefree decomposition for a primitive Z polynomial (char 0).
fn z_squarefree(f: &ZDense) -> Vec<(ZDense, u32)> {
    let q = RatField;
    let to_q = |f: &ZDense| -> Dense<RatField> {
        f.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let to_z = |f: &Dense<RatField>| -> ZDense {
        // Rational gcd results are monic; rescale to primitive integer form.
        let mut den = BigInt::one();
        for c in f {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: ZDense = f
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        z_primitive(&ints).1
    };
    let fq = to_q(f);
    let dfq = dense_derivative(&q, &fq);
    if dense_is_zero(&dfq) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let a0 = dense_gcd(&q, &fq, &dfq);
    let mut b = dense_divrem(&q, &fq, &a0).0;
    let mut c = dense_divrem(&q, &dfq, &a0).0;
    let mut i = 1u32;
    loop {
        let d = dense_sub(&q, &c, &dense_derivative(&q, &b));
        if dense_is_zero(&d) {
            if deg(&b) > 0 {
                out.push((to_z(&b), i));
            }
            break;
        }
        let a = dense_gcd(&q, &b, &d);
        if deg(&a) > 0 {
            out.push((to_z(&a), i));
        }
        b = dense_divrem(&q, &b, &a).0;
        c = dense_divrem(&q, &d, &a).0;
        i += 1;
        if deg(&b) == 0 {
            break;
        }
    }
    out
}

/// Multifactor linear Hensel lifting for a monic `f`: lifts the monic
/// factorization of `f mod p` to `mod p^k`, keeping every lift monic.
fn hensel_lift_monic(
    f: &ZDense,
    fp: &PrimeField,
    modular: &[Dense<PrimeField>],
    k: u32,
) -> Vec<ZDense> {
    let p = BigInt::from(fp.modulus());
    // Bezout data over F_p: b_i * prod_{l != i} g_l = 1 mod g_i.
    let bez: Vec<Dense<PrimeField>> = (0..modular.len())
        .map(|i| {
            let mut prod = vec![fp.one()];
            for (l, g) in modular.iter().enumerate() {
                if l != i {
                    prod = dense_divrem(fp, &dense_mul(fp, &prod, g), &modular[i]).1;
                }
            }
            dense_inverse_mod(fp, &prod, &modular[i])
        })
        .collect();

    let mut lifted: Vec<ZDense> = modular
        .iter()
        .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut q = p.clone(); // current modulus p^j
    for _ in 1..k {
        // E = (f - prod lifted) / q mod p
        let mut prod: ZDense = vec![BigInt::one()];
        for g in &lifted {
            prod = z_mul(&prod, g);
        }
        let diff = ztrim(
            f.iter()
                .enumerate()
                .map(|(i, c)| c - prod.get(i).cloned().unwrap_or_else(BigInt::zero))
                .collect(),
        );
        let e_over_q: ZDense = diff.iter().map(|c| c / &q).collect();
        let e_mod_p: Dense<PrimeField> = trim(
            fp,
            e_over_q.iter().map(|c| fp.reduce_bigint(c)).collect::<Vec<_>>(),
        );
        for (i, g) in lifted.iter_mut().enumerate() {
            // delta_i = E * b_i mod g_i (over F_p)
            let gi_mod: Dense<PrimeField> =
                trim(fp, g.iter().map(|c| fp.reduce_bigint(c)).collect::<Vec<_>>());
            let delta = dense_divrem(fp, &dense_mul(fp, &e_mod_p, &bez[i]), &gi_mod).1;
            for (j, dc) in delta.iter().enumerate() {
                g[j] += BigInt::from(*dc) * &q;
            }
        }
        q *= &p;
    }
    // Reduce into the symmetric range mod p^k.
    let modulus = p.pow(k);
    lifted
        .into_iter()
        .map(|g| ztrim(g.iter().map(|c| symmetric_mod(c, &modulus)).collect()))
        .collect()
}

fn dense_inverse_mod(
    fp: &PrimeField,
    a: &Dense<PrimeField>,
    m: &Dense<PrimeField>,
) -> Dense<PrimeField> {
    // Extended Euclid in F_p[x].
    let (mut r0, mut r1) = (m.clone(), dense_divrem(fp, a, m).1);
    let (mut t0, mut t1): (Dense<PrimeField>, Dense<PrimeField>) = (Vec::new(), vec![fp.one()]);
    while !dense_is_zero(&r1) {
        let (q, r) = dense_divrem(fp, &r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = dense_sub(fp, &t0, &dense_mul(fp, &q, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    debug_assert_eq!(deg(&r0), 0, "inputs must be coprime");
    let inv = fp.inv(r0[0]).unwrap();
    dense_scale(fp, &t0, &inv)
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Factor a squarefree primitive Z polynomial of degree >= 1 into irreducible
/// primitive Z factors (Zassenhaus).
fn z_factor_squarefree(f: &ZDense, cfg: &FactorConfig) -> Vec<ZDense> {
    let n = deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    // Monicize: F(x) = lc^(n-1) f(x/lc) is monic over Z.
    let lc = f.last().unwrap().clone();
    let monic_input = lc.is_one();
    // Monicization: F(x) = lc^(n-1) f(x/lc), so F_i = f_i * lc^(n-1-i), F_n = 1.
    let fm: ZDense = if monic_input {
        f.clone()
    } else {
        (0..f.len())
            .map(|i| {
                if i as i64 == n {
                    BigInt::one()
                } else {
                    &f[i] * lc.pow((n - 1 - i as i64) as u32)
                }
            })
            .collect()
    };

    // Pick a good prime: squarefree image, degree preserved (lc(F)=1 so any p works for degree).
    let mut p = 2u64;
    let (fp, modular) = loop {
        p = next_prime(p);
        let field = PrimeField::new(p).unwrap();
        let img: Dense<PrimeField> = trim(
            &field,
            fm.iter().map(|c| field.reduce_bigint(c)).collect::<Vec<_>>(),
        );
        if deg(&img) != deg(&fm) {
            continue;
        }
        let dimg = dense_derivative(&field, &img);
        if dense_is_zero(&dimg) || deg(&dense_gcd(&field, &img, &dimg)) > 0 {
            continue;
        }
        let (_, factors) = factor_dense_fp(&field, &img, cfg);
        break (field, factors.into_iter().map(|(g, _)| g).collect::<Vec<_>>());
    };

    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Mignotte-style bound on factor coefficients of fm.
    let max_c = fm.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = (BigInt::one() << (n as u32 + 2)) * max_c * (n + 1);
    let mut k = 1u32;
    let mut modulus = BigInt::from(fp.modulus());
    while modulus < BigInt::from(2) * &bound + 1 {
        modulus *= BigInt::from(fp.modulus());
        k += 1;
    }
    let lifted = hensel_lift_monic(&fm, &fp, &modular, k);

    // Subset recombination over the monic lifted factors.
    let mut pool: Vec<ZDense> = lifted;
    let mut remaining = fm;
    let mut monic_factors: Vec<ZDense> = Vec::new();
    let pk = BigInt::from(fp.modulus()).pow(k);
    'outer: loop {
        if pool.is_empty() {
            break;
        }
        let max_take = pool.len() / 2;
        for size in 1..=max_take.max(1) {
            for subset in combinations(pool.len(), size) {
                let mut prod: ZDense = vec![BigInt::one()];
                for &i in &subset {
                    prod = z_mul(&prod, &pool[i]);
                }
                let cand: ZDense = ztrim(prod.iter().map(|c| symmetric_mod(c, &pk)).collect());
                if let Some(q) = z_exact_div(&remaining, &cand) {
                    monic_factors.push(cand);
                    remaining = q;
                    let mut keep = Vec::new();
                    for (i, g) in pool.into_iter().enumerate() {
                        if !subset.contains(&i) {
                            keep.push(g);
                        }
                    }
                    pool = keep;
                    continue 'outer;
                }
            }
        }
        // Whatever remains multiplies to one irreducible factor.
        monic_factors.push(remaining.clone());
        break;
    }

    // Undo the monicization: g(x) -> primitive part of g(lc * x).
    monic_factors
        .into_iter()
        .map(|g| {
            if monic_input {
                return g;
            }
            let scaled: ZDense = g
                .iter()
                .enumerate()
                .map(|(i, c)| c * lc.pow(i as u32))
                .collect();
            z_primitive(&scaled).1
        })
        .collect()
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    while !is_prime_u64(q) {
        q += 1;
    }
    q
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn factor_dense_q(f: &ZDense, cfg: &FactorConfig) -> Vec<(ZDense, u32)> {
    let (_, prim) = z_primitive(f);
    let mut out: Vec<(ZDense, u32)> = Vec::new();
    for (part, mult) in z_squarefree(&prim) {
        for irr in z_factor_squarefree(&part, cfg) {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| {
        (a.0.len(), format!("{:?}", a.0), a.1).cmp(&(b.0.len(), format!("{:?}", b.0), b.1))
    });
    out
}

// ---------------------------------------------------------------------------
// sparse <-> dense plumbing and the public univariate entry points
// ---------------------------------------------------------------------------

fn sparse_to_dense<R: CoeffRing>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    var: usize,
) -> Result<Dense<R>> {
    let mut out = vec![ctx.ring.zero(); f.deg_in(var) as usize + 1];
    for (c, m) in &f.terms {
        if !m.supported_on(&[var]) {
            return Err(Error::ContextMismatch(
                "polynomial is not univariate in the requested variable".into(),
            ));
        }
        out[m.deg(var) as usize] = c.clone();
    }
    Ok(trim(&ctx.ring, out))
}

fn dense_to_sparse<R: CoeffRing>(ctx: &RingCtx<R>, f: &Dense<R>, var: usize) -> Polynomial<R> {
    ctx.from_terms(
        f.iter()
            .enumerate()
            .filter(|(_, c)| !ctx.ring.is_zero(c))
            .map(|(i, c)| (c.clone(), PowerProduct::var(ctx.nvars(), var, i as u32)))
            .collect(),
    )
}

/// Factor a univariate polynomial over F_p into monic irreducibles.
pub fn univariate_factor_fp(
    ctx: &RingCtx<PrimeField>,
    f: &Polynomial<PrimeField>,
    var: usize,
    cfg: &FactorConfig,
) -> Result<FieldFactors<PrimeField>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("univariate factorization"));
    }
    if f.total_degree() > cfg.degree_bound {
        return Err(Error::FactorOutOfRange(format!(
            "degree {} exceeds bound {}",
            f.total_degree(),
            cfg.degree_bound
        )));
    }
    let dense = sparse_to_dense(ctx, f, var)?;
    let (unit, factors) = factor_dense_fp(&ctx.ring, &dense, cfg);
    Ok(FieldFactors {
        unit,
        factors: factors
            .into_iter()
            .map(|(g, m)| (dense_to_sparse(ctx, &g, var), m))
            .collect(),
    })
}

/// Factor a univariate polynomial over Q into monic irreducibles.
pub fn univariate_factor_q(
    ctx: &RingCtx<RatField>,
    f: &Polynomial<RatField>,
    var: usize,
    cfg: &FactorConfig,
) -> Result<FieldFactors<RatField>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("univariate factorization"));
    }
    if f.total_degree() > cfg.degree_bound {
        return Err(Error::FactorOutOfRange(format!(
            "degree {} exceeds bound {}",
            f.total_degree(),
            cfg.degree_bound
        )));
    }
    let dense = sparse_to_dense(ctx, f, var)?;
    let mut den = BigInt::one();
    for c in &dense {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let zdense: ZDense = dense
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let factors = factor_dense_q(&zdense, cfg);
    let mut unit = dense.last().unwrap().clone();
    let out: Vec<(Polynomial<RatField>, u32)> = factors
        .into_iter()
        .map(|(g, m)| {
            let lc = BigRational::from_integer(g.last().unwrap().clone());
            let monic: Dense<RatField> = g
                .iter()
                .map(|c| BigRational::from_integer(c.clone()) / &lc)
                .collect();
            (dense_to_sparse(ctx, &monic, var), m)
        })
        .collect();
    // unit = lc(f) since all returned factors are monic
    let _ = &mut unit;
    Ok(FieldFactors { unit, factors: out })
}

// ---------------------------------------------------------------------------
// multivariate factorization via Kronecker substitution
// ---------------------------------------------------------------------------

/// A field the factorization routines know how to factor over.
pub trait FactorField: CoeffRing {
    fn characteristic(&self) -> u64;
    fn factor_univariate(
        &self,
        ctx: &RingCtx<Self>,
        f: &Polynomial<Self>,
        var: usize,
        cfg: &FactorConfig,
        bound: u32,
    ) -> Result<FieldFactors<Self>>;
}

impl FactorField for RatField {
    fn characteristic(&self) -> u64 {
        0
    }
    fn factor_univariate(
        &self,
        ctx: &RingCtx<Self>,
        f: &Polynomial<Self>,
        var: usize,
        cfg: &FactorConfig,
        bound: u32,
    ) -> Result<FieldFactors<Self>> {
        let mut cfg = cfg.clone();
        cfg.degree_bound = bound;
        univariate_factor_q(ctx, f, var, &cfg)
    }
}

impl FactorField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn factor_univariate(
        &self,
        ctx: &RingCtx<Self>,
        f: &Polynomial<Self>,
        var: usize,
        cfg: &FactorConfig,
        bound: u32,
    ) -> Result<FieldFactors<Self>> {
        let mut cfg = cfg.clone();
        cfg.degree_bound = bound;
        univariate_factor_fp(ctx, f, var, &cfg)
    }
}

/// Factor an arbitrary nonzero polynomial over Q into monic irreducibles.
pub fn factor_poly_q(
    ctx: &RingCtx<RatField>,
    f: &Polynomial<RatField>,
    cfg: &FactorConfig,
) -> Result<FieldFactors<RatField>> {
    factor_poly_field(ctx, f, cfg)
}

/// Factor an arbitrary nonzero polynomial over F_p into monic irreducibles.
pub fn factor_poly_fp(
    ctx: &RingCtx<PrimeField>,
    f: &Polynomial<PrimeField>,
    cfg: &FactorConfig,
) -> Result<FieldFactors<PrimeField>> {
    factor_poly_field(ctx, f, cfg)
}

/// Factor an arbitrary nonzero polynomial over a supported field.
pub fn factor_poly_field<R: FactorField>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    cfg: &FactorConfig,
) -> Result<FieldFactors<R>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factorization"));
    }
    let mut factors: Vec<(Polynomial<R>, u32)> = Vec::new();
    let mut work = f.clone();
    let mut guard = 0;
    while work.total_degree() > 0 {
        guard += 1;
        if guard > 1000 {
            return Err(Error::Internal("factorization did not terminate".into()));
        }
        let sup = work.support_vars(ctx.nvars());
        // Squarefree part: work / gcd(work, all partials).
        let mut g = work.clone();
        let mut any_nonzero_partial = false;
        let mut acc = Polynomial::<R>::zero();
        for &v in &sup {
            let d = ctx.derivative(&work, v);
            if !d.is_zero() {
                any_nonzero_partial = true;
            }
            acc = poly_gcd(ctx, &acc, &d);
        }
        if !any_nonzero_partial {
            // char p and work = h(x^p): take the p-th root and recurse.
            let p = ctx.ring.characteristic() as u32;
            debug_assert!(p > 0);
            let root = ctx.from_terms(
                work.terms
                    .iter()
                    .map(|(c, m)| {
                        (
                            c.clone(),
                            PowerProduct(m.0.iter().map(|e| e / p).collect()),
                        )
                    })
                    .collect(),
            );
            let sub = factor_poly_field(ctx, &root, cfg)?;
            for (q, m) in sub.factors {
                push_factor(ctx, &mut factors, q, m * p);
            }
            let unit = leading_unit(ctx, f, &factors);
            return Ok(sorted_factors(ctx, unit, factors));
        }
        g = poly_gcd(ctx, &g, &acc);
        let sqf = ctx.exact_div(&work, &g).expect("gcd divides");
        for q in factor_squarefree_field(ctx, &sqf, cfg)? {
            // Multiplicity by repeated exact division.
            let mut e = 0u32;
            while let Some(next) = ctx.exact_div(&work, &q) {
                work = next;
                e += 1;
            }
            debug_assert!(e > 0);
            push_factor(ctx, &mut factors, q, e);
        }
    }
    let unit = leading_unit(ctx, f, &factors);
    Ok(sorted_factors(ctx, unit, factors))
}

fn push_factor<R: CoeffRing>(
    ctx: &RingCtx<R>,
    factors: &mut Vec<(Polynomial<R>, u32)>,
    q: Polynomial<R>,
    e: u32,
) {
    let q = ctx.normalize_leading(&q);
    if let Some(existing) = factors.iter_mut().find(|(p, _)| *p == q) {
        existing.1 += e;
    } else {
        factors.push((q, e));
    }
}

fn leading_unit<R: CoeffRing>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    factors: &[(Polynomial<R>, u32)],
) -> R::Elem {
    // unit = lc(f) / prod lc(factor)^mult; factors are monic so this is lc(f).
    let mut u = f.leading().unwrap().0.clone();
    for (q, m) in factors {
        let lc = &q.leading().unwrap().0;
        for _ in 0..*m {
            u = ctx
                .ring
                .checked_div(&u, lc)
                .expect("factor leading coefficient invertible");
        }
    }
    u
}

fn sorted_factors<R: CoeffRing>(
    ctx: &RingCtx<R>,
    unit: R::Elem,
    mut factors: Vec<(Polynomial<R>, u32)>,
) -> FieldFactors<R> {
    factors.sort_by_key(|(q, m)| (q.total_degree(), ctx.display(q), *m));
    FieldFactors { unit, factors }
}

/// Irreducible factors (each once) of a squarefree polynomial over a field.
fn factor_squarefree_field<R: FactorField>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    cfg: &FactorConfig,
) -> Result<Vec<Polynomial<R>>> {
    let sup = f.support_vars(ctx.nvars());
    match sup.len() {
        0 => Ok(Vec::new()),
        1 => {
            let v = sup[0];
            let ff = ctx
                .ring
                .factor_univariate(ctx, f, v, cfg, cfg.degree_bound.max(cfg.kronecker_bound))?;
            Ok(ff.factors.into_iter().map(|(q, _)| q).collect())
        }
        _ => {
            // Recurse on the content w.r.t. the main variable, Kronecker the
            // primitive part.
            let v = sup[0];
            let coeffs = ctx.coeffs_in(f, v);
            let mut cont = Polynomial::<R>::zero();
            for c in coeffs.iter().filter(|c| !c.is_zero()) {
                cont = poly_gcd(ctx, &cont, c);
            }
            let prim = ctx.exact_div(f, &cont).expect("content divides");
            let mut out = if cont.total_degree() > 0 {
                factor_squarefree_field(ctx, &cont, cfg)?
            } else {
                Vec::new()
            };
            if prim.support_vars(ctx.nvars()).len() < 2 {
                out.extend(factor_squarefree_field(ctx, &prim, cfg)?);
            } else {
                out.extend(kronecker_factor(ctx, &prim, cfg)?);
            }
            Ok(out)
        }
    }
}

fn kronecker_factor<R: FactorField>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    cfg: &FactorConfig,
) -> Result<Vec<Polynomial<R>>> {
    let sup = f.support_vars(ctx.nvars());
    debug_assert!(sup.len() >= 2);
    let degs: Vec<u32> = sup.iter().map(|&v| f.deg_in(v)).collect();
    // Mixed-radix encoding: variable sup[i] maps to t^stride[i].
    let mut strides: Vec<u64> = Vec::with_capacity(sup.len());
    let mut s = 1u64;
    for d in &degs {
        strides.push(s);
        s = s
            .checked_mul(*d as u64 + 1)
            .ok_or_else(|| Error::FactorOutOfRange("Kronecker image too large".into()))?;
    }
    let image_deg: u64 = sup
        .iter()
        .zip(&strides)
        .map(|(&v, st)| f.deg_in(v) as u64 * st)
        .sum();
    if image_deg > cfg.kronecker_bound as u64 {
        return Err(Error::FactorOutOfRange(format!(
            "Kronecker image degree {} exceeds bound {}",
            image_deg, cfg.kronecker_bound
        )));
    }

    let tvar = sup[0];
    let encode = |g: &Polynomial<R>| -> Polynomial<R> {
        ctx.from_terms(
            g.terms
                .iter()
                .map(|(c, m)| {
                    let e: u64 = sup
                        .iter()
                        .zip(&strides)
                        .map(|(&v, st)| m.deg(v) as u64 * st)
                        .sum();
                    (c.clone(), PowerProduct::var(ctx.nvars(), tvar, e as u32))
                })
                .collect(),
        )
    };
    let decode = |g: &Polynomial<R>| -> Option<Polynomial<R>> {
        let mut terms = Vec::with_capacity(g.terms.len());
        for (c, m) in &g.terms {
            let mut e = m.deg(tvar) as u64;
            let mut pp = PowerProduct::one(ctx.nvars());
            for (i, (&v, _)) in sup.iter().zip(&strides).enumerate() {
                let radix = degs[i] as u64 + 1;
                let digit = if i + 1 == sup.len() { e } else { e % radix };
                if digit > degs[i] as u64 {
                    return None;
                }
                pp.0[v] = digit as u32;
                e /= radix;
            }
            terms.push((c.clone(), pp));
        }
        Some(ctx.from_terms(terms))
    };

    let image = encode(f);
    let uni = ctx.ring.factor_univariate(
        ctx,
        &image,
        tvar,
        cfg,
        cfg.kronecker_bound.max(cfg.degree_bound),
    )?;
    // Pool of univariate factors with multiplicity, flattened.
    let mut pool: Vec<Polynomial<R>> = Vec::new();
    for (q, m) in uni.factors {
        for _ in 0..m {
            pool.push(q.clone());
        }
    }
    if pool.len() > 20 {
        return Err(Error::FactorOutOfRange(
            "too many Kronecker subfactors for subset recombination".into(),
        ));
    }

    let mut remaining = ctx.normalize_leading(f);
    let mut out: Vec<Polynomial<R>> = Vec::new();
    'outer: while remaining.total_degree() > 0 {
        for size in 1..=pool.len() {
            for subset in combinations(pool.len(), size) {
                let mut prod = ctx.one_poly();
                for &i in &subset {
                    prod = ctx.mul(&prod, &pool[i]);
                }
                if let Some(cand) = decode(&prod) {
                    let cand = ctx.normalize_leading(&cand);
                    if cand.total_degree() == 0 {
                        continue;
                    }
                    if let Some(next) = ctx.exact_div(&remaining, &cand) {
                        out.push(cand);
                        remaining = ctx.normalize_leading(&next);
                        let mut keep = Vec::new();
                        for (i, g) in pool.into_iter().enumerate() {
                            if !subset.contains(&i) {
                                keep.push(g);
                            }
                        }
                        pool = keep;
                        continue 'outer;
                    }
                }
            }
        }
        // No subset decomposes further: remaining is irreducible.
        out.push(remaining.clone());
        break;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qctx(vars: &[&str]) -> RingCtx<RatField> {
        RingCtx::new(
            RatField,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Lex,
        )
    }

    fn fpctx(p: u64, vars: &[&str]) -> RingCtx<PrimeField> {
        RingCtx::new(
            PrimeField::new(p).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Lex,
        )
    }

    fn qp(ctx: &RingCtx<RatField>, terms: &[(i64, &[u32])]) -> Polynomial<RatField> {
        ctx.from_terms(
            terms
                .iter()
                .map(|(c, e)| {
                    (
                        BigRational::from_integer(BigInt::from(*c)),
                        PowerProduct(e.to_vec()),
                    )
                })
                .collect(),
        )
    }

    fn fpp(ctx: &RingCtx<PrimeField>, terms: &[(i64, &[u32])]) -> Polynomial<PrimeField> {
        ctx.from_terms(
            terms
                .iter()
                .map(|(c, e)| (ctx.ring.from_i64(*c), PowerProduct(e.to_vec())))
                .collect(),
        )
    }

    fn reassemble<R: CoeffRing>(ctx: &RingCtx<R>, ff: &FieldFactors<R>) -> Polynomial<R> {
        let mut acc = ctx.constant(ff.unit.clone());
        for (q, m) in &ff.factors {
            acc = ctx.mul(&acc, &ctx.pow(q, *m));
        }
        acc
    }

    #[test]
    fn factor_x2_minus_1_over_q() {
        let ctx = qctx(&["x"]);
        let f = qp(&ctx, &[(1, &[2]), (-1, &[0])]);
        let ff = univariate_factor_q(&ctx, &f, 0, &FactorConfig::default()).unwrap();
        assert_eq!(ff.factors.len(), 2);
        let xm1 = qp(&ctx, &[(1, &[1]), (-1, &[0])]);
        let xp1 = qp(&ctx, &[(1, &[1]), (1, &[0])]);
        assert_eq!(ff.factors[0], (xm1, 1));
        assert_eq!(ff.factors[1], (xp1, 1));
        assert_eq!(reassemble(&ctx, &ff), f);
    }

    #[test]
    fn factor_x2_plus_x_over_f2() {
        let ctx = fpctx(2, &["x"]);
        let f = fpp(&ctx, &[(1, &[2]), (1, &[1])]);
        let ff = univariate_factor_fp(&ctx, &f, 0, &FactorConfig::default()).unwrap();
        let x = fpp(&ctx, &[(1, &[1])]);
        let xp1 = fpp(&ctx, &[(1, &[1]), (1, &[0])]);
        assert_eq!(ff.factors, vec![(x, 1), (xp1, 1)]);
        assert_eq!(reassemble(&ctx, &ff), f);
    }

    #[test]
    fn factor_x4_plus_1_over_f2() {
        let ctx = fpctx(2, &["x"]);
        let f = fpp(&ctx, &[(1, &[4]), (1, &[0])]);
        let ff = univariate_factor_fp(&ctx, &f, 0, &FactorConfig::default()).unwrap();
        let xp1 = fpp(&ctx, &[(1, &[1]), (1, &[0])]);
        assert_eq!(ff.factors, vec![(xp1, 4)]);
        assert_eq!(reassemble(&ctx, &ff), f);
    }

    #[test]
    fn degree_bound_enforced() {
        let ctx = qctx(&["x"]);
        let f = qp(&ctx, &[(1, &[17]), (-1, &[0])]);
        let err = univariate_factor_q(&ctx, &f, 0, &FactorConfig::default());
        assert!(matches!(err, Err(Error::FactorOutOfRange(_))));
    }

    #[test]
    fn random_products_roundtrip_over_q() {
        use rand::Rng;
        let ctx = qctx(&["x"]);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            // product of random linear/quadratic factors
            let k = rng.gen_range(1..4);
            let mut f = ctx.one_poly();
            for _ in 0..k {
                let d = rng.gen_range(1..3u32);
                let g = if d == 1 {
                    qp(
                        &ctx,
                        &[(rng.gen_range(1..4), &[1]), (rng.gen_range(-5..6), &[0])],
                    )
                } else {
                    qp(
                        &ctx,
                        &[
                            (rng.gen_range(1..3), &[2]),
                            (rng.gen_range(-3..4), &[1]),
                            (rng.gen_range(-5..6), &[0]),
                        ],
                    )
                };
                if g.is_zero() {
                    continue;
                }
                f = ctx.mul(&f, &g);
            }
            if f.total_degree() == 0 {
                continue;
            }
            let ff = univariate_factor_q(&ctx, &f, 0, &FactorConfig::default()).unwrap();
            assert_eq!(reassemble(&ctx, &ff), f, "roundtrip failed");
        }
    }

    #[test]
    fn random_products_roundtrip_over_fp() {
        use rand::Rng;
        for p in [2u64, 3, 5, 13] {
            let ctx = fpctx(p, &["x"]);
            let mut rng = ChaCha8Rng::seed_from_u64(23 + p);
            for _ in 0..50 {
                let k = rng.gen_range(1..4);
                let mut f = ctx.one_poly();
                for _ in 0..k {
                    let g = fpp(
                        &ctx,
                        &[
                            (rng.gen_range(1..p as i64).max(1), &[2]),
                            (rng.gen_range(0..p as i64), &[1]),
                            (rng.gen_range(0..p as i64), &[0]),
                        ],
                    );
                    if g.is_zero() {
                        continue;
                    }
                    f = ctx.mul(&f, &g);
                }
                if f.total_degree() == 0 {
                    continue;
                }
                let ff = univariate_factor_fp(&ctx, &f, 0, &FactorConfig::default()).unwrap();
                assert_eq!(reassemble(&ctx, &ff), f);
            }
        }
    }

    #[test]
    fn multivariate_factor_xy_over_q() {
        let ctx = qctx(&["x", "y"]);
        let f = qp(&ctx, &[(1, &[1, 1])]);
        let ff = factor_poly_q(&ctx, &f, &FactorConfig::default()).unwrap();
        let names: Vec<String> = ff.factors.iter().map(|(q, _)| ctx.display(q)).collect();
        assert_eq!(names, vec!["x", "y"]);
    }

    #[test]
    fn multivariate_factor_x2_minus_y2() {
        let ctx = qctx(&["x", "y"]);
        let f = qp(&ctx, &[(1, &[2, 0]), (-1, &[0, 2])]);
        let ff = factor_poly_q(&ctx, &f, &FactorConfig::default()).unwrap();
        assert_eq!(ff.factors.len(), 2);
        assert_eq!(reassemble(&ctx, &ff), f);
        for (q, m) in &ff.factors {
            assert_eq!(*m, 1);
            assert_eq!(q.total_degree(), 1);
        }
    }

    #[test]
    fn multivariate_factor_with_multiplicity_and_content() {
        let ctx = qctx(&["x", "y"]);
        // x^2 * (x + y)^2 * (y - 1)
        let x = qp(&ctx, &[(1, &[1, 0])]);
        let xpy = qp(&ctx, &[(1, &[1, 0]), (1, &[0, 1])]);
        let ym1 = qp(&ctx, &[(1, &[0, 1]), (-1, &[0, 0])]);
        let f = ctx.mul(&ctx.mul(&ctx.pow(&x, 2), &ctx.pow(&xpy, 2)), &ym1);
        let ff = factor_poly_q(&ctx, &f, &FactorConfig::default()).unwrap();
        assert_eq!(reassemble(&ctx, &ff), f);
        assert_eq!(ff.factors.len(), 3);
    }

    #[test]
    fn multivariate_factor_over_f2_inseparable_shape() {
        let ctx = fpctx(2, &["x", "y"]);
        // x^2*y^2 + 1 = (xy + 1)^2 over F_2
        let f = fpp(&ctx, &[(1, &[2, 2]), (1, &[0, 0])]);
        let ff = factor_poly_fp(&ctx, &f, &FactorConfig::default()).unwrap();
        let xy1 = fpp(&ctx, &[(1, &[1, 1]), (1, &[0, 0])]);
        assert_eq!(ff.factors, vec![(xy1, 2)]);
    }
}
