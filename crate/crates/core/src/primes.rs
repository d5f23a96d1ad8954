//! Minimal associated primes of ideals in Z[x]: the mod-p / Q-extension
//! split driving everything, a GTZ-style minimal-prime routine over Q and
//! F_p (the desk-scale stand-in for a general library), maximal independent
//! sets, dimension, and separator systems.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeff::{CoeffRing, IntRing, PrimeField, RatField};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::factor::{factor_poly_field, FactorField};
use crate::groebner::{basis_of, submodule_equal, submodule_member};
use crate::module::{Coupling, Ideal, ModuleCtx, ModuleOrdering, Submodule};
use crate::ops::{block_leading_data, extension_contraction, saturate};
use crate::poly::{
    map_to_prime_field, map_to_rationals, poly_gcd, poly_lcm, rational_to_primitive_int,
    MonomialOrder, Polynomial, PowerProduct,
};

/// A prime ideal of Z[x] with its characteristic: 0 when P ∩ Z = <0>,
/// otherwise the prime p with P ∩ Z = <p>. Generators are kept as the
/// canonical strong basis.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub ideal: Ideal<IntRing>,
    pub char_p: u64,
}

/// Separators for a set of primes: s_i outside P_i, inside every other P_j.
#[derive(Clone, Debug)]
pub struct SeparatorSystem {
    pub primes: Vec<PrimeIdeal>,
    pub separators: Vec<Polynomial<IntRing>>,
}

/// A variable subset independent with respect to an ideal's residue view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSet {
    pub vars: Vec<usize>,
    pub maximal: bool,
}

// ---------------------------------------------------------------------------
// basic ideal views
// ---------------------------------------------------------------------------

fn rank1_zctx(vars: &[String]) -> ModuleCtx<IntRing> {
    ModuleCtx::new(
        IntRing,
        vars.to_vec(),
        1,
        ModuleOrdering::new(MonomialOrder::Lex, Coupling::MonomialFirst),
    )
}

fn field_ctx<R: CoeffRing>(ring: R, vars: &[String]) -> ModuleCtx<R> {
    ModuleCtx::new(
        ring,
        vars.to_vec(),
        1,
        ModuleOrdering::new(MonomialOrder::Lex, Coupling::MonomialFirst),
    )
}

/// Generator of I ∩ Z, nonnegative; zero when the contraction is trivial.
pub fn ideal_int_contraction(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    i: &Ideal<IntRing>,
) -> Result<BigInt> {
    let gb = basis_of(ctx, cfg, &i.0)?;
    let mut a = BigInt::from(0);
    for g in &gb.elements {
        if g.terms.len() == 1 && g.terms[0].1.is_one() && g.terms[0].2 == 0 {
            a = num_integer::gcd(a, g.terms[0].0.clone());
        }
    }
    Ok(a.abs())
}

fn ideal_is_unit<R: CoeffRing>(ctx: &ModuleCtx<R>, cfg: &Config, i: &Submodule<R>) -> Result<bool> {
    let one = ctx.embed(&ctx.poly.one_poly(), 0);
    submodule_member(ctx, cfg, &one, i)
}

fn map_ideal_to_fp(
    ctx: &ModuleCtx<IntRing>,
    i: &Ideal<IntRing>,
    fp: &PrimeField,
) -> (ModuleCtx<PrimeField>, Ideal<PrimeField>) {
    let fctx = field_ctx(*fp, &ctx.poly.vars);
    let polys: Vec<Polynomial<PrimeField>> = i
        .gens_as_polys(ctx)
        .iter()
        .map(|p| map_to_prime_field(&ctx.poly, p, fp))
        .collect();
    let ideal = Ideal::from_polys(&fctx, polys);
    (fctx, ideal)
}

fn map_ideal_to_q(
    ctx: &ModuleCtx<IntRing>,
    i: &Ideal<IntRing>,
) -> (ModuleCtx<RatField>, Ideal<RatField>) {
    let qctx = field_ctx(RatField, &ctx.poly.vars);
    let polys: Vec<Polynomial<RatField>> =
        i.gens_as_polys(ctx).iter().map(map_to_rationals).collect();
    let ideal = Ideal::from_polys(&qctx, polys);
    (qctx, ideal)
}

// ---------------------------------------------------------------------------
// independent sets and dimension
// ---------------------------------------------------------------------------

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    if k == 0 {
        return vec![Vec::new()];
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

/// Is `I ∩ K[u] = <0>`? Tested by an elimination block ordering: independent
/// iff no basis element is supported entirely on u.
fn independent<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    i: &Submodule<R>,
    u: &[usize],
) -> Result<bool> {
    let ectx = ctx.with_order(crate::ops::extraction_order(ctx, u));
    let gb = basis_of(&ectx, cfg, i)?;
    Ok(!gb
        .elements
        .iter()
        .any(|g| g.terms.iter().all(|(_, m, _)| m.supported_on(u))))
}

/// Maximal independent set over a field, decreasing size, first hit wins.
pub fn max_independent_set_field<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    i: &Submodule<R>,
) -> Result<Option<IndependentSet>> {
    if ideal_is_unit(ctx, cfg, i)? {
        return Ok(None);
    }
    let n = ctx.nvars();
    for size in (0..=n).rev() {
        for u in subsets_of_size(n, size) {
            if independent(ctx, cfg, i, &u)? {
                return Ok(Some(IndependentSet {
                    vars: u,
                    maximal: true,
                }));
            }
        }
    }
    Ok(None)
}

/// Maximal independent set of a Z-prime over its residue-field view
/// (F_p for p > 0, Q otherwise).
pub fn max_independent_set(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    p: &PrimeIdeal,
) -> Result<IndependentSet> {
    let found = if p.char_p > 0 {
        let fp = PrimeField::new(p.char_p)?;
        let (fctx, fi) = map_ideal_to_fp(ctx, &p.ideal, &fp);
        max_independent_set_field(&fctx, cfg, &fi.0)?
    } else {
        let (qctx, qi) = map_ideal_to_q(ctx, &p.ideal);
        max_independent_set_field(&qctx, cfg, &qi.0)?
    };
    found.ok_or_else(|| Error::Semantic("unit ideal has no independent set".into()))
}

/// Dimension of the residue view, and height = n - dim.
pub fn dim_and_height(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    i: &Ideal<IntRing>,
    char_p: u64,
) -> Result<(usize, usize)> {
    let found = if char_p > 0 {
        let fp = PrimeField::new(char_p)?;
        let (fctx, fi) = map_ideal_to_fp(ctx, i, &fp);
        max_independent_set_field(&fctx, cfg, &fi.0)?
    } else {
        let (qctx, qi) = map_ideal_to_q(ctx, i);
        max_independent_set_field(&qctx, cfg, &qi.0)?
    };
    let dim = found
        .ok_or_else(|| Error::Semantic("unit ideal has no dimension".into()))?
        .vars
        .len();
    Ok((dim, ctx.nvars() - dim))
}

// ---------------------------------------------------------------------------
// minimal primes over a field (GTZ-lite)
// ---------------------------------------------------------------------------

/// Remove duplicates and non-minimal elements (any ideal containing another
/// listed ideal is dropped).
fn minimal_filter<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    primes: Vec<Ideal<R>>,
) -> Result<Vec<Ideal<R>>> {
    let mut kept: Vec<Ideal<R>> = Vec::new();
    'cand: for p in primes {
        let mut i = 0;
        while i < kept.len() {
            let contains_kept = kept[i].0.gens.iter().map(Ok).collect::<Result<Vec<_>>>()?;
            let kept_in_p = contains_kept
                .iter()
                .map(|g| submodule_member(ctx, cfg, g, &p.0))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            let p_in_kept = p
                .0
                .gens
                .iter()
                .map(|g| submodule_member(ctx, cfg, g, &kept[i].0))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            if kept_in_p {
                // kept[i] ⊆ p: p is redundant (equal or non-minimal)
                continue 'cand;
            }
            if p_in_kept {
                // p ⊂ kept[i]: drop kept[i]
                kept.remove(i);
                continue;
            }
            i += 1;
        }
        kept.push(p);
    }
    Ok(kept)
}

/// Minimal associated primes of an ideal over Q or F_p.
///
/// Strategy: in dimension zero, split along factors of the per-variable
/// minimal polynomials, certify primality by comparing the residue vector
/// dimension to an irreducible minimal polynomial's degree, and fall back to
/// a seeded linear coordinate change; in positive dimension, localize at a
/// maximal independent set via the block-ordering contraction and recurse on
/// the discarded part.
pub fn min_primes_field<R: FactorField>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    i: &Ideal<R>,
) -> Result<Vec<Ideal<R>>> {
    if ideal_is_unit(ctx, cfg, &i.0)? {
        return Ok(Vec::new());
    }
    let gb = basis_of(ctx, cfg, &i.0)?;
    if gb.elements.is_empty() {
        return Ok(vec![Ideal::zero()]);
    }
    let u = max_independent_set_field(ctx, cfg, &i.0)?
        .expect("proper ideal has an independent set")
        .vars;
    let mut found = relative_min_primes(ctx, cfg, i, &u)?;
    // Discarded part <I, h>, h = lcm of the block leading coefficients.
    let h = block_lcm(ctx, cfg, &i.0, &u)?;
    if !h.is_constant() {
        let mut gens = i.gens_as_polys(ctx);
        gens.push(h);
        let bigger = Ideal::from_polys(ctx, gens);
        found.extend(min_primes_field(ctx, cfg, &bigger)?);
    }
    let kept = minimal_filter(ctx, cfg, found)?;
    // Canonical presentation: the reduced basis generators.
    kept.into_iter()
        .map(|p| {
            let gb = basis_of(ctx, cfg, &p.0)?;
            Ok(Ideal(Submodule::new(gb.elements.clone(), 1)))
        })
        .collect()
}

/// lcm over K[u] of the leading coefficients of the block-ordering basis.
fn block_lcm<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    i: &Submodule<R>,
    u: &[usize],
) -> Result<Polynomial<R>> {
    let (leads, _) = block_leading_data(ctx, cfg, i, u)?;
    let mut h = ctx.poly.one_poly();
    for (coeff, _, _) in leads {
        h = poly_lcm(&ctx.poly, &h, &coeff);
    }
    Ok(h)
}

/// Minimal primes of the u-saturation of `i` (equivalently of the zero-
/// dimensional extension over K(u)), contracted back to K[x]. For u = []
/// this is the plain zero-dimensional case.
fn relative_min_primes<R: FactorField>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    i: &Ideal<R>,
    u: &[usize],
) -> Result<Vec<Ideal<R>>> {
    let h = block_lcm(ctx, cfg, &i.0, u)?;
    let sat = if h.is_constant() {
        i.clone()
    } else {
        Ideal(saturate(ctx, cfg, &i.0, &h)?.module)
    };
    if ideal_is_unit(ctx, cfg, &sat.0)? {
        return Ok(Vec::new());
    }
    relative_zero_dim_primes(ctx, cfg, &sat, u, 16)
}

/// Minimal polynomial of a dependent variable v over K(u) modulo J:
/// the gcd of the elimination-basis elements supported on u ∪ {v},
/// primitive in v.
fn contracted_min_poly<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    j: &Submodule<R>,
    u: &[usize],
    v: usize,
) -> Result<Polynomial<R>> {
    let mut keep: Vec<usize> = u.to_vec();
    keep.push(v);
    let ectx = ctx.with_order(crate::ops::extraction_order(ctx, &keep));
    let gb = basis_of(&ectx, cfg, j)?;
    let mut m = Polynomial::<R>::zero();
    for g in &gb.elements {
        if g.terms.iter().all(|(_, pp, _)| pp.supported_on(&keep)) {
            let p = ctx.to_poly_vec(&ctx.reorder(g))[0].clone();
            m = poly_gcd(&ctx.poly, &m, &p);
        }
    }
    if m.is_zero() {
        return Err(Error::Internal(
            "expected a zero-dimensional extension, found no minimal polynomial".into(),
        ));
    }
    // Strip the content in K[u]; it is a unit over K(u).
    let coeffs = ctx.poly.coeffs_in(&m, v);
    let mut cont = Polynomial::<R>::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        cont = poly_gcd(&ctx.poly, &cont, c);
    }
    Ok(ctx
        .poly
        .exact_div(&m, &cont)
        .expect("content divides"))
}

fn relative_zero_dim_primes<R: FactorField>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    j: &Ideal<R>,
    u: &[usize],
    fuel: u32,
) -> Result<Vec<Ideal<R>>> {
    if fuel == 0 {
        return Err(Error::FactorOutOfRange(
            "no primitive element found within the retry budget".into(),
        ));
    }
    if ideal_is_unit(ctx, cfg, &j.0)? {
        return Ok(Vec::new());
    }
    let deps: Vec<usize> = (0..ctx.nvars()).filter(|v| !u.contains(v)).collect();
    if deps.is_empty() {
        // J K(u) is zero-dim over K(u) with no dependent variables: J = <0>
        // after saturation, and the zero ideal is prime.
        return Ok(vec![j.clone()]);
    }

    let mut min_polys: Vec<(usize, Polynomial<R>)> = Vec::new();
    for &v in &deps {
        min_polys.push((v, contracted_min_poly(ctx, cfg, &j.0, u, v)?));
    }

    // Split along reducible or non-squarefree minimal polynomials.
    for (v, m) in &min_polys {
        let factors = factor_poly_field(&ctx.poly, m, &cfg.factor)?;
        let vfactors: Vec<(Polynomial<R>, u32)> = factors
            .factors
            .into_iter()
            .filter(|(q, _)| q.deg_in(*v) > 0)
            .collect();
        let needs_split = vfactors.len() > 1 || vfactors.iter().any(|(_, e)| *e > 1);
        if !needs_split {
            continue;
        }
        let mut out = Vec::new();
        for (f, _) in vfactors {
            let mut gens = j.gens_as_polys(ctx);
            gens.push(f);
            let jf = Ideal::from_polys(ctx, gens);
            let h = block_lcm(ctx, cfg, &jf.0, u)?;
            let jf_sat = if h.is_constant() {
                jf
            } else {
                Ideal(saturate(ctx, cfg, &jf.0, &h)?.module)
            };
            if ideal_is_unit(ctx, cfg, &jf_sat.0)? {
                continue;
            }
            out.extend(relative_zero_dim_primes(ctx, cfg, &jf_sat, u, fuel)?);
        }
        return minimal_filter(ctx, cfg, out);
    }

    // All minimal polynomials irreducible over K(u), multiplicity one.
    // Primality certificate: the K(u)-vector dimension equals some minimal
    // polynomial's degree.
    let dim = relative_vecdim(ctx, cfg, &j.0, u)?;
    for (v, m) in &min_polys {
        if m.deg_in(*v) as u64 == dim {
            return Ok(vec![j.clone()]);
        }
    }

    // No primitive variable: seeded linear coordinate change among the
    // dependent variables and retry.
    let v0 = deps[0];
    let attempt = 17 - fuel.min(16);
    let mut shift = ctx.poly.var_poly(v0);
    for (k, &v) in deps.iter().enumerate().skip(1) {
        let c = ctx
            .poly
            .ring
            .from_i64(1 + ((attempt as i64 + k as i64) % 5));
        let t = ctx.poly.mul_scalar(&ctx.poly.var_poly(v), &c);
        shift = ctx.poly.add(&shift, &t);
    }
    // sigma: v0 -> v0 - sum c v_i (the inverse change applied to generators)
    let inv_shift = ctx.poly.sub(
        &ctx.poly.mul_scalar(&ctx.poly.var_poly(v0), &ctx.poly.ring.from_i64(2)),
        &shift,
    );
    let moved: Vec<Polynomial<R>> = j
        .gens_as_polys(ctx)
        .iter()
        .map(|g| ctx.poly.substitute(g, v0, &inv_shift))
        .collect();
    let jm = Ideal::from_polys(ctx, moved);
    let primes = relative_zero_dim_primes(ctx, cfg, &jm, u, fuel - 1)?;
    // Map back: v0 -> v0 + sum c v_i.
    let back: Vec<Ideal<R>> = primes
        .into_iter()
        .map(|p| {
            let gens: Vec<Polynomial<R>> = p
                .gens_as_polys(ctx)
                .iter()
                .map(|g| ctx.poly.substitute(g, v0, &shift))
                .collect();
            Ideal::from_polys(ctx, gens)
        })
        .collect();
    Ok(back)
}

/// K(u)-vector-space dimension of K[x]/J localized: the number of standard
/// monomials in the dependent variables under the block-ordering basis.
fn relative_vecdim<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    j: &Submodule<R>,
    u: &[usize],
) -> Result<u64> {
    let (leads, _) = block_leading_data(ctx, cfg, j, u)?;
    let deps: Vec<usize> = (0..ctx.nvars()).filter(|v| !u.contains(v)).collect();
    let betas: Vec<PowerProduct> = leads.into_iter().map(|(_, b, _)| b).collect();
    // Box bounds: minimal pure power of each dependent variable.
    let mut bounds = Vec::with_capacity(deps.len());
    for &v in &deps {
        let b = betas
            .iter()
            .filter(|b| b.supported_on(&[v]))
            .map(|b| b.deg(v))
            .min()
            .ok_or_else(|| {
                Error::Internal("extension is not zero-dimensional over K(u)".into())
            })?;
        bounds.push(b);
    }
    // Count monomials in the box not divisible by any beta.
    let mut count = 0u64;
    let mut stack = vec![PowerProduct::one(ctx.nvars())];
    let mut seen = std::collections::HashSet::new();
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        if betas.iter().any(|b| b.divides(&m)) {
            continue;
        }
        count += 1;
        if count > 1_000_000 {
            return Err(Error::Internal("vector dimension overflow".into()));
        }
        for (i, &v) in deps.iter().enumerate() {
            if m.deg(v) + 1 < bounds[i].max(1) + 1 {
                let mut next = m.clone();
                next.0[v] += 1;
                stack.push(next);
            }
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// minimal associated primes over Z
// ---------------------------------------------------------------------------

fn canonical_prime(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    gens: Vec<Polynomial<IntRing>>,
    char_p: u64,
) -> Result<PrimeIdeal> {
    let raw = Ideal::from_polys(ctx, gens);
    let gb = basis_of(ctx, cfg, &raw.0)?;
    Ok(PrimeIdeal {
        ideal: Ideal(Submodule::new(gb.elements.clone(), 1)),
        char_p,
    })
}

/// Pull an F_p-prime back to Z: lifted generators plus p itself.
fn pullback_fp_prime(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    fctx: &ModuleCtx<PrimeField>,
    pbar: &Ideal<PrimeField>,
    p: u64,
) -> Result<PrimeIdeal> {
    let mut gens: Vec<Polynomial<IntRing>> = pbar
        .gens_as_polys(fctx)
        .iter()
        .map(|g| {
            ctx.poly.from_terms(
                g.terms
                    .iter()
                    .map(|(c, m)| (BigInt::from(*c), m.clone()))
                    .collect(),
            )
        })
        .collect();
    gens.push(ctx.poly.constant(BigInt::from(p)));
    canonical_prime(ctx, cfg, gens, p)
}

/// Contract a Q-prime to Z[x]: clear denominators, then saturate by the lcm
/// of the integer leading coefficients (the extension-contraction with an
/// empty independent set).
fn contract_q_prime(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    qctx: &ModuleCtx<RatField>,
    pbar: &Ideal<RatField>,
) -> Result<PrimeIdeal> {
    let gens: Vec<Polynomial<IntRing>> = pbar
        .gens_as_polys(qctx)
        .iter()
        .map(|g| rational_to_primitive_int(&qctx.poly, g))
        .collect();
    let j = Ideal::from_polys(ctx, gens);
    let (_, sat) = extension_contraction(ctx, cfg, &j.0, &[], 0)?;
    let gb = basis_of(ctx, cfg, &sat.module)?;
    Ok(PrimeIdeal {
        ideal: Ideal(Submodule::new(gb.elements.clone(), 1)),
        char_p: 0,
    })
}

/// Minimal associated primes of an ideal over Z, by the mod-p split when
/// I ∩ Z is nonzero and the Q-extension split otherwise. The output follows
/// the split recipe literally: the recursion branch <I, h> may contribute
/// primes above a char-0 prime (see the ledger note); duplicates are removed.
pub fn min_assoc_primes_z(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    i: &Ideal<IntRing>,
) -> Result<Vec<PrimeIdeal>> {
    if ideal_is_unit(ctx, cfg, &i.0)? {
        return Ok(Vec::new());
    }
    let a = ideal_int_contraction(ctx, cfg, i)?;
    let mut out: Vec<PrimeIdeal> = Vec::new();
    if !a.is_zero() {
        let fact = crate::coeff::factor_integer(&a)?;
        for (p, _) in fact.factors {
            let p64 = u64::try_from(p.magnitude().to_u64_digits()[0]).unwrap();
            let fp = PrimeField::new(p64)?;
            let (fctx, fi) = map_ideal_to_fp(ctx, i, &fp);
            for pbar in min_primes_field(&fctx, cfg, &fi)? {
                out.push(pullback_fp_prime(ctx, cfg, &fctx, &pbar, p64)?);
            }
        }
    } else {
        let (qctx, qi) = map_ideal_to_q(ctx, i);
        for pbar in min_primes_field(&qctx, cfg, &qi)? {
            out.push(contract_q_prime(ctx, cfg, &qctx, &pbar)?);
        }
        // h from the integer leading coefficients of the strong basis.
        let gb = basis_of(ctx, cfg, &i.0)?;
        let mut h = BigInt::one();
        for g in &gb.elements {
            let lc = &g.leading().unwrap().0;
            h = num_integer::lcm(h, lc.clone());
        }
        if !h.magnitude().is_one() {
            let mut gens = i.gens_as_polys(ctx);
            gens.push(ctx.poly.constant(h));
            let bigger = Ideal::from_polys(ctx, gens);
            out.extend(min_assoc_primes_z(ctx, cfg, &bigger)?);
        }
    }
    // Deduplicate (equal ideals can arise through different branches).
    let mut kept: Vec<PrimeIdeal> = Vec::new();
    for p in out {
        let mut dup = false;
        for q in &kept {
            if p.char_p == q.char_p && submodule_equal(ctx, cfg, &p.ideal.0, &q.ideal.0)? {
                dup = true;
                break;
            }
        }
        if !dup {
            kept.push(p);
        }
    }
    Ok(kept)
}

/// Inclusion-minimal elements of a prime list (used by the decomposition
/// driver, which needs a genuine system of separators).
pub fn minimal_primes_only(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    primes: Vec<PrimeIdeal>,
) -> Result<Vec<PrimeIdeal>> {
    let as_ideals: Vec<Ideal<IntRing>> = primes.iter().map(|p| p.ideal.clone()).collect();
    let kept = minimal_filter(ctx, cfg, as_ideals)?;
    let mut out = Vec::new();
    for k in kept {
        for p in &primes {
            if submodule_equal(ctx, cfg, &k.0, &p.ideal.0)? {
                out.push(p.clone());
                break;
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// separators
// ---------------------------------------------------------------------------

/// Builds s_i = prod_{j != i} g_j with g_j the smallest canonical generator
/// of P_j outside P_i; verifies the separator property by membership.
pub fn separators(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    primes: &[PrimeIdeal],
) -> Result<SeparatorSystem> {
    let mut seps = Vec::with_capacity(primes.len());
    for (i, pi) in primes.iter().enumerate() {
        let mut s = ctx.poly.one_poly();
        for (j, pj) in primes.iter().enumerate() {
            if i == j {
                continue;
            }
            // Canonical generators descending; iterate ascending for the
            // smallest one outside P_i.
            let mut chosen = None;
            for g in pj.ideal.0.gens.iter().rev() {
                if !submodule_member(ctx, cfg, g, &pi.ideal.0)? {
                    chosen = Some(ctx.to_poly_vec(g)[0].clone());
                    break;
                }
            }
            let g = chosen.ok_or_else(|| {
                Error::Semantic("primes are not incomparable: no separator exists".into())
            })?;
            s = ctx.poly.mul(&s, &g);
        }
        seps.push(s);
    }
    // Re-assert the system invariant.
    for (i, s) in seps.iter().enumerate() {
        let s_el = ctx.embed(s, 0);
        for (j, pj) in primes.iter().enumerate() {
            let member = submodule_member(ctx, cfg, &s_el, &pj.ideal.0)?;
            if i == j && member {
                return Err(Error::Internal("separator lies in its own prime".into()));
            }
            if i != j && !member {
                return Err(Error::Internal("separator misses a foreign prime".into()));
            }
        }
    }
    Ok(SeparatorSystem {
        primes: primes.to_vec(),
        separators: seps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::ideal_ctx;

    fn zctx1() -> ModuleCtx<IntRing> {
        rank1_zctx(&["x".into(), "y".into()])
    }

    fn pp(e: &[u32]) -> PowerProduct {
        PowerProduct(e.to_vec())
    }

    fn zpoly(ctx: &ModuleCtx<IntRing>, terms: &[(i64, &[u32])]) -> Polynomial<IntRing> {
        ctx.poly.from_terms(
            terms
                .iter()
                .map(|(c, e)| (BigInt::from(*c), pp(e)))
                .collect(),
        )
    }

    fn zideal(ctx: &ModuleCtx<IntRing>, gens: &[&[(i64, &[u32])]]) -> Ideal<IntRing> {
        Ideal::from_polys(ctx, gens.iter().map(|g| zpoly(ctx, g)).collect())
    }

    fn prime_set_display(ctx: &ModuleCtx<IntRing>, primes: &[PrimeIdeal]) -> Vec<String> {
        let mut out: Vec<String> = primes
            .iter()
            .map(|p| {
                let mut gens: Vec<String> = p
                    .ideal
                    .0
                    .gens
                    .iter()
                    .map(|g| ctx.poly.display(&ctx.to_poly_vec(g)[0]))
                    .collect();
                gens.sort();
                format!("char {}: <{}>", p.char_p, gens.join(", "))
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn int_contraction_examples() {
        let ctx = zctx1();
        let cfg = Config::default();
        // <6, x> -> 6
        let i = zideal(&ctx, &[&[(6, &[0, 0])], &[(1, &[1, 0])]]);
        assert_eq!(ideal_int_contraction(&ctx, &cfg, &i).unwrap(), BigInt::from(6));
        // <x> -> 0
        let i = zideal(&ctx, &[&[(1, &[1, 0])]]);
        assert_eq!(ideal_int_contraction(&ctx, &cfg, &i).unwrap(), BigInt::from(0));
        // paper annihilator -> 0
        let i = zideal(
            &ctx,
            &[
                &[(18, &[1, 0])],
                &[(1, &[1, 2])],
                &[(1, &[2, 0]), (-2, &[1, 2]), (1, &[1, 1])],
            ],
        );
        assert_eq!(ideal_int_contraction(&ctx, &cfg, &i).unwrap(), BigInt::from(0));
    }

    #[test]
    fn min_primes_field_examples() {
        let cfg = Config::default();
        let qctx = field_ctx(RatField, &["x".into(), "y".into()]);
        let qpoly = |terms: &[(i64, &[u32])]| {
            qctx.poly.from_terms(
                terms
                    .iter()
                    .map(|(c, e)| {
                        (
                            num_rational::BigRational::from_integer(BigInt::from(*c)),
                            pp(e),
                        )
                    })
                    .collect(),
            )
        };
        // <xy> -> {<x>, <y>}
        let i = Ideal::from_polys(&qctx, vec![qpoly(&[(1, &[1, 1])])]);
        let primes = min_primes_field(&qctx, &cfg, &i).unwrap();
        let mut names: Vec<String> = primes
            .iter()
            .map(|p| {
                let gens: Vec<String> = p
                    .gens_as_polys(&qctx)
                    .iter()
                    .map(|g| qctx.poly.display(g))
                    .collect();
                gens.join(",")
            })
            .collect();
        names.sort();
        assert_eq!(names, vec!["x", "y"]);

        // <x^2> -> {<x>}
        let i = Ideal::from_polys(&qctx, vec![qpoly(&[(1, &[2, 0])])]);
        let primes = min_primes_field(&qctx, &cfg, &i).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(
            qctx.poly.display(&primes[0].gens_as_polys(&qctx)[0]),
            "x"
        );

        // <x^2 - 1> in one variable -> {<x-1>, <x+1>}
        let qctx1 = field_ctx(RatField, &["x".into()]);
        let i = Ideal::from_polys(
            &qctx1,
            vec![qctx1.poly.from_terms(vec![
                (num_rational::BigRational::from_integer(BigInt::from(1)), pp(&[2])),
                (num_rational::BigRational::from_integer(BigInt::from(-1)), pp(&[0])),
            ])],
        );
        let primes = min_primes_field(&qctx1, &cfg, &i).unwrap();
        let mut names: Vec<String> = primes
            .iter()
            .map(|p| qctx1.poly.display(&p.gens_as_polys(&qctx1)[0]))
            .collect();
        names.sort();
        assert_eq!(names, vec!["x-1", "x+1"]);
    }

    #[test]
    fn min_assoc_primes_z_corpus() {
        let cfg = Config::default();
        let ctx1 = rank1_zctx(&["x".into()]);
        // <6> in Z[x] -> {<2>, <3>}
        let i = Ideal::from_polys(&ctx1, vec![ctx1.poly.constant(BigInt::from(6))]);
        let primes = min_assoc_primes_z(&ctx1, &cfg, &i).unwrap();
        assert_eq!(
            prime_set_display(&ctx1, &primes),
            vec!["char 2: <2>", "char 3: <3>"]
        );

        // <2x, x^2> -> {<x>, <2, x>} (the literal split recipe)
        let i = Ideal::from_polys(
            &ctx1,
            vec![
                ctx1.poly
                    .from_terms(vec![(BigInt::from(2), PowerProduct(vec![1]))]),
                ctx1.poly
                    .from_terms(vec![(BigInt::from(1), PowerProduct(vec![2]))]),
            ],
        );
        let primes = min_assoc_primes_z(&ctx1, &cfg, &i).unwrap();
        assert_eq!(
            prime_set_display(&ctx1, &primes),
            vec!["char 0: <x>", "char 2: <2, x>"]
        );

        // paper annihilator -> {<x>}
        let ctx = zctx1();
        let ann = zideal(
            &ctx,
            &[
                &[(18, &[1, 0])],
                &[(1, &[1, 2])],
                &[(1, &[2, 0]), (-2, &[1, 2]), (1, &[1, 1])],
            ],
        );
        let primes = min_assoc_primes_z(&ctx, &cfg, &ann).unwrap();
        assert_eq!(prime_set_display(&ctx, &primes), vec!["char 0: <x>"]);
    }

    #[test]
    fn min_assoc_primes_z_more_corpus() {
        let cfg = Config::default();
        let ctx = zctx1();
        // <xy> -> {<x>, <y>}
        let i = zideal(&ctx, &[&[(1, &[1, 1])]]);
        let primes = min_assoc_primes_z(&ctx, &cfg, &i).unwrap();
        assert_eq!(
            prime_set_display(&ctx, &primes),
            vec!["char 0: <x>", "char 0: <y>"]
        );

        // <12> -> {<2>, <3>}
        let i = zideal(&ctx, &[&[(12, &[0, 0])]]);
        let primes = min_assoc_primes_z(&ctx, &cfg, &i).unwrap();
        assert_eq!(
            prime_set_display(&ctx, &primes),
            vec!["char 2: <2>", "char 3: <3>"]
        );

        // <x^2, xy> -> {<x>}
        let i = zideal(&ctx, &[&[(1, &[2, 0])], &[(1, &[1, 1])]]);
        let primes = min_assoc_primes_z(&ctx, &cfg, &i).unwrap();
        assert_eq!(prime_set_display(&ctx, &primes), vec!["char 0: <x>"]);

        // <x^2 - 1> in Z[x] -> {<x-1>, <x+1>}
        let ctx1 = rank1_zctx(&["x".into()]);
        let i = Ideal::from_polys(
            &ctx1,
            vec![ctx1.poly.from_terms(vec![
                (BigInt::from(1), PowerProduct(vec![2])),
                (BigInt::from(-1), PowerProduct(vec![0])),
            ])],
        );
        let primes = min_assoc_primes_z(&ctx1, &cfg, &i).unwrap();
        assert_eq!(
            prime_set_display(&ctx1, &primes),
            vec!["char 0: <x-1>", "char 0: <x+1>"]
        );
    }

    #[test]
    fn primes_pass_primality_probe() {
        let cfg = Config::default();
        let ctx = zctx1();
        let i = zideal(&ctx, &[&[(1, &[1, 1])]]);
        for p in min_assoc_primes_z(&ctx, &cfg, &i).unwrap() {
            let again = min_assoc_primes_z(&ctx, &cfg, &p.ideal).unwrap();
            assert_eq!(again.len(), 1);
            assert!(submodule_equal(&ctx, &cfg, &again[0].ideal.0, &p.ideal.0).unwrap());
            // characteristic flag matches P ∩ Z
            let a = ideal_int_contraction(&ctx, &cfg, &p.ideal).unwrap();
            assert_eq!(a, BigInt::from(p.char_p));
        }
    }

    #[test]
    fn independent_set_examples() {
        let cfg = Config::default();
        let ctx = zctx1();
        // P = <x> in Z[x,y]: u = {y}
        let p = canonical_prime(&ctx, &cfg, vec![zpoly(&ctx, &[(1, &[1, 0])])], 0).unwrap();
        let u = max_independent_set(&ctx, &cfg, &p).unwrap();
        assert_eq!(u.vars, vec![1]);

        // P = <0>: u = {x, y}
        let p0 = PrimeIdeal {
            ideal: Ideal::zero(),
            char_p: 0,
        };
        let u = max_independent_set(&ctx, &cfg, &p0).unwrap();
        assert_eq!(u.vars, vec![0, 1]);

        // P = <x, y>: u = {}
        let p = canonical_prime(
            &ctx,
            &cfg,
            vec![zpoly(&ctx, &[(1, &[1, 0])]), zpoly(&ctx, &[(1, &[0, 1])])],
            0,
        )
        .unwrap();
        let u = max_independent_set(&ctx, &cfg, &p).unwrap();
        assert!(u.vars.is_empty());
    }

    #[test]
    fn dim_and_height_examples() {
        let cfg = Config::default();
        let ctx = zctx1();
        let i = zideal(&ctx, &[&[(1, &[1, 0])]]);
        assert_eq!(dim_and_height(&ctx, &cfg, &i, 0).unwrap(), (1, 1));
        assert_eq!(dim_and_height(&ctx, &cfg, &Ideal::zero(), 0).unwrap(), (2, 0));
        let i = zideal(&ctx, &[&[(1, &[1, 0])], &[(1, &[0, 1])]]);
        assert_eq!(dim_and_height(&ctx, &cfg, &i, 0).unwrap(), (0, 2));
    }

    #[test]
    fn separator_examples() {
        let cfg = Config::default();
        let ctx = zctx1();
        // single prime: separator 1
        let px = canonical_prime(&ctx, &cfg, vec![zpoly(&ctx, &[(1, &[1, 0])])], 0).unwrap();
        let sys = separators(&ctx, &cfg, &[px.clone()]).unwrap();
        assert_eq!(ctx.poly.display(&sys.separators[0]), "1");

        // B = {<2>, <3>} -> {3, 2}
        let p2 = canonical_prime(&ctx, &cfg, vec![ctx.poly.constant(BigInt::from(2))], 2).unwrap();
        let p3 = canonical_prime(&ctx, &cfg, vec![ctx.poly.constant(BigInt::from(3))], 3).unwrap();
        let sys = separators(&ctx, &cfg, &[p2, p3]).unwrap();
        assert_eq!(ctx.poly.display(&sys.separators[0]), "3");
        assert_eq!(ctx.poly.display(&sys.separators[1]), "2");

        // B = {<x>, <y>} -> {y, x}
        let py = canonical_prime(&ctx, &cfg, vec![zpoly(&ctx, &[(1, &[0, 1])])], 0).unwrap();
        let sys = separators(&ctx, &cfg, &[px, py]).unwrap();
        assert_eq!(ctx.poly.display(&sys.separators[0]), "y");
        assert_eq!(ctx.poly.display(&sys.separators[1]), "x");
    }

    #[test]
    fn q_split_soundness_cross_check() {
        // min_assoc_primes_z(<2x, x^2>) equals the union of the contracted
        // Q-primes ({<x>}) and the primes of <I, h> = <2, x^2> ({<2, x>}).
        let cfg = Config::default();
        let ctx1 = rank1_zctx(&["x".into()]);
        let i = Ideal::from_polys(
            &ctx1,
            vec![
                ctx1.poly
                    .from_terms(vec![(BigInt::from(2), PowerProduct(vec![1]))]),
                ctx1.poly
                    .from_terms(vec![(BigInt::from(1), PowerProduct(vec![2]))]),
            ],
        );
        let all = min_assoc_primes_z(&ctx1, &cfg, &i).unwrap();
        assert_eq!(all.len(), 2);
        let ih = Ideal::from_polys(
            &ctx1,
            vec![
                ctx1.poly.constant(BigInt::from(2)),
                ctx1.poly
                    .from_terms(vec![(BigInt::from(1), PowerProduct(vec![2]))]),
            ],
        );
        let rec = min_assoc_primes_z(&ctx1, &cfg, &ih).unwrap();
        assert_eq!(rec.len(), 1);
        assert_eq!(rec[0].char_p, 2);
        // pullback contains exactly one prime factor of a
        let a = ideal_int_contraction(&ctx1, &cfg, &ih).unwrap();
        assert_eq!(a, BigInt::from(2));
    }

    #[test]
    fn minimal_primes_only_filters_comparable() {
        let cfg = Config::default();
        let ctx1 = rank1_zctx(&["x".into()]);
        let px = canonical_prime(
            &ctx1,
            &cfg,
            vec![ctx1
                .poly
                .from_terms(vec![(BigInt::from(1), PowerProduct(vec![1]))])],
            0,
        )
        .unwrap();
        let p2x = canonical_prime(
            &ctx1,
            &cfg,
            vec![
                ctx1.poly.constant(BigInt::from(2)),
                ctx1.poly
                    .from_terms(vec![(BigInt::from(1), PowerProduct(vec![1]))]),
            ],
            2,
        )
        .unwrap();
        let kept = minimal_primes_only(&ctx1, &cfg, vec![px.clone(), p2x]).unwrap();
        assert_eq!(kept.len(), 1);
        assert!(submodule_equal(&ctx1, &cfg, &kept[0].ideal.0, &px.ideal.0).unwrap());
    }

    #[test]
    fn needs_coordinate_change() {
        // <x^2 - 2, y^2 - 2> over Q: neither variable is primitive (vecdim 4,
        // both minimal polynomials of degree 2); the seeded change splits it
        // into two degree-2 primes.
        let cfg = Config::default();
        let qctx = field_ctx(RatField, &["x".into(), "y".into()]);
        let q = |c: i64| num_rational::BigRational::from_integer(BigInt::from(c));
        let i = Ideal::from_polys(
            &qctx,
            vec![
                qctx.poly
                    .from_terms(vec![(q(1), pp(&[2, 0])), (q(-2), pp(&[0, 0]))]),
                qctx.poly
                    .from_terms(vec![(q(1), pp(&[0, 2])), (q(-2), pp(&[0, 0]))]),
            ],
        );
        let primes = min_primes_field(&qctx, &cfg, &i).unwrap();
        assert_eq!(primes.len(), 2);
        // x - y and x + y split the ideal
        for p in &primes {
            // each prime strictly contains I and is proper
            assert!(!ideal_is_unit(&qctx, &cfg, &p.0).unwrap());
            for g in i.gens_as_polys(&qctx) {
                let e = qctx.embed(&g, 0);
                assert!(submodule_member(&qctx, &cfg, &e, &p.0).unwrap());
            }
        }
    }

    #[test]
    fn mod_p_pullback_property() {
        // I with I ∩ Z = <a>, a != 0: every returned prime contains exactly
        // one prime factor of a.
        let cfg = Config::default();
        let ctx = zctx1();
        let i = zideal(&ctx, &[&[(6, &[0, 0])], &[(1, &[1, 0])]]);
        let primes = min_assoc_primes_z(&ctx, &cfg, &i).unwrap();
        assert_eq!(primes.len(), 2);
        for p in &primes {
            let count = [2u64, 3]
                .iter()
                .filter(|&&q| {
                    let c = ctx.embed(&ctx.poly.constant(BigInt::from(q)), 0);
                    submodule_member(&ctx, &cfg, &c, &p.ideal.0).unwrap()
                })
                .count();
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn annihilator_chain_through_ops() {
        // dim/height used by extraction: the paper prime <x> has u = {y},
        // so dim 1, height 1 in two variables.
        let cfg = Config::default();
        let ctx = zctx1();
        let ictx = ideal_ctx(&ctx);
        let p = canonical_prime(&ictx, &cfg, vec![zpoly(&ctx, &[(1, &[1, 0])])], 0).unwrap();
        assert_eq!(dim_and_height(&ictx, &cfg, &p.ideal, 0).unwrap(), (1, 1));
    }
}
