//! Submodule-level algebra: intersection, quotient, saturation with index,
//! annihilator, sum with a scaled free module, and the extension-contraction
//! data used by primary-component extraction.
//!
//! Intersections run over an extended ring with one tag variable and an
//! eliminating block ordering; quotients reduce to intersections with exact
//! division; saturation iterates quotients and reports the stabilization
//! index. No fraction-field arithmetic anywhere: localization reasoning goes
//! through block orderings and saturation.

use num_bigint::BigInt;
use num_traits::One;

use crate::coeff::{CoeffRing, IntRing};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::groebner::{basis_of, submodule_equal};
use crate::module::{ideal_ctx, Coupling, Ideal, ModuleCtx, ModuleElement, ModuleOrdering, Submodule};
use crate::poly::{p_content, poly_lcm, MonomialOrder, Polynomial, PowerProduct};

/// `N : f^infinity` together with the smallest exponent where the quotient
/// chain stabilizes.
#[derive(Clone, Debug)]
pub struct SaturationResult<R: CoeffRing> {
    pub module: Submodule<R>,
    pub index: u32,
}

/// Per-basis-element leading data over A[x \ u]: the coefficient polynomial
/// in Z[u] split as q^nu * a with a outside <p>, the leading (x\u)-monomial
/// and its component.
#[derive(Clone, Debug)]
pub struct LeadData {
    pub nu: u32,
    pub a: Polynomial<IntRing>,
    pub beta: PowerProduct,
    pub comp: usize,
}

/// The extension-contraction data for an independent set u and characteristic
/// p: leading data of the block-ordering basis and h = lcm(a_1, ..., a_k).
#[derive(Clone, Debug)]
pub struct ExtractionContext {
    pub u: Vec<usize>,
    pub p: u64,
    pub leads: Vec<LeadData>,
    pub h: Polynomial<IntRing>,
}

// ---------------------------------------------------------------------------
// tag-variable plumbing
// ---------------------------------------------------------------------------

/// Extend the context by one tag variable (appended last) under a block
/// ordering that eliminates it.
fn tag_ctx<R: CoeffRing>(ctx: &ModuleCtx<R>) -> (ModuleCtx<R>, usize) {
    let tag = ctx.nvars();
    let mut vars = ctx.poly.vars.clone();
    vars.push("@t".into());
    let base = match &ctx.order.base {
        MonomialOrder::Lex => {
            MonomialOrder::Block(vec![vec![tag], (0..tag).collect()])
        }
        MonomialOrder::Block(blocks) => {
            let mut b = vec![vec![tag]];
            b.extend(blocks.clone());
            MonomialOrder::Block(b)
        }
    };
    (
        ModuleCtx::new(
            ctx.poly.ring.clone(),
            vars,
            ctx.rank,
            ModuleOrdering::new(base, Coupling::MonomialFirst),
        ),
        tag,
    )
}

fn extend_element<R: CoeffRing>(
    ext: &ModuleCtx<R>,
    f: &ModuleElement<R>,
) -> ModuleElement<R> {
    ext.from_terms(
        f.terms
            .iter()
            .map(|(c, m, k)| {
                let mut e = m.0.clone();
                e.push(0);
                (c.clone(), PowerProduct(e), *k)
            })
            .collect(),
    )
}

fn restrict_element<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    f: &ModuleElement<R>,
    tag: usize,
) -> Option<ModuleElement<R>> {
    let mut terms = Vec::with_capacity(f.terms.len());
    for (c, m, k) in &f.terms {
        if m.deg(tag) != 0 {
            return None;
        }
        let mut e = m.0.clone();
        e.pop();
        terms.push((c.clone(), PowerProduct(e), *k));
    }
    Some(ctx.from_terms(terms))
}

// ---------------------------------------------------------------------------
// the operations
// ---------------------------------------------------------------------------

/// `N1 ∩ N2` by the tag-variable method: eliminate t from
/// `t*N1 + (1-t)*N2` over A[t, x]^m.
pub fn intersect<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n1: &Submodule<R>,
    n2: &Submodule<R>,
) -> Result<Submodule<R>> {
    let (ext, tag) = tag_ctx(ctx);
    let t = ext.poly.var_poly(tag);
    let one_minus_t = ext.poly.sub(&ext.poly.one_poly(), &t);
    let mut gens = Vec::with_capacity(n1.gens.len() + n2.gens.len());
    for g in &n1.gens {
        gens.push(ext.mul_poly(&extend_element(&ext, g), &t));
    }
    for g in &n2.gens {
        gens.push(ext.mul_poly(&extend_element(&ext, g), &one_minus_t));
    }
    let gb = basis_of(&ext, cfg, &Submodule::new(gens, ctx.rank))?;
    let kept: Vec<ModuleElement<R>> = gb
        .elements
        .iter()
        .filter_map(|g| restrict_element(ctx, g, tag))
        .collect();
    Ok(Submodule::new(kept, ctx.rank))
}

/// The scaled free module `f * M`.
fn scaled_free<R: CoeffRing>(ctx: &ModuleCtx<R>, f: &Polynomial<R>) -> Submodule<R> {
    Submodule::new(
        (0..ctx.rank).map(|i| ctx.embed(f, i)).collect(),
        ctx.rank,
    )
}

/// `N : f = {m in M : f*m in N}`, computed as `(N ∩ f*M) / f`.
pub fn quotient<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n: &Submodule<R>,
    f: &Polynomial<R>,
) -> Result<Submodule<R>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("quotient by zero"));
    }
    let meet = intersect(ctx, cfg, n, &scaled_free(ctx, f))?;
    let mut gens = Vec::with_capacity(meet.gens.len());
    for g in &meet.gens {
        let comps = ctx.to_poly_vec(g);
        let divided: Vec<Polynomial<R>> = comps
            .iter()
            .map(|p| {
                ctx.poly
                    .exact_div(p, f)
                    .ok_or_else(|| Error::Internal("quotient generator not divisible".into()))
            })
            .collect::<Result<_>>()?;
        gens.push(ctx.from_poly_vec(&divided));
    }
    Ok(Submodule::new(gens, ctx.rank))
}

/// `N : J` over the generators of J; the zero ideal gives the full module.
pub fn quotient_by_ideal<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n: &Submodule<R>,
    j: &Ideal<R>,
) -> Result<Submodule<R>> {
    let ictx = ideal_ctx(ctx);
    let polys = j.gens_as_polys(&ictx);
    let mut acc: Option<Submodule<R>> = None;
    for f in polys.iter().filter(|f| !f.is_zero()) {
        let q = quotient(ctx, cfg, n, f)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => intersect(ctx, cfg, &prev, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| full_module(ctx)))
}

/// The full module M = A[x]^m.
pub fn full_module<R: CoeffRing>(ctx: &ModuleCtx<R>) -> Submodule<R> {
    Submodule::new(
        (0..ctx.rank).map(|i| ctx.embed(&ctx.poly.one_poly(), i)).collect(),
        ctx.rank,
    )
}

/// Iterated quotient until the chain stabilizes; the loop count is the
/// saturation index.
pub fn saturate<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n: &Submodule<R>,
    f: &Polynomial<R>,
) -> Result<SaturationResult<R>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("saturation by zero"));
    }
    let mut cur = n.clone();
    let mut index = 0u32;
    loop {
        let next = quotient(ctx, cfg, &cur, f)?;
        if submodule_equal(ctx, cfg, &next, &cur)? {
            return Ok(SaturationResult { module: cur, index });
        }
        cur = next;
        index += 1;
    }
}

/// `Ann(M/N) = N : M = ∩_i { f : f e_i in N }`.
pub fn annihilator<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n: &Submodule<R>,
) -> Result<Ideal<R>> {
    let ictx = ideal_ctx(ctx);
    let mut acc: Option<Submodule<R>> = None;
    for i in 0..ctx.rank {
        // N ∩ A[x]·e_i, read off the e_i coordinate.
        let ei = Submodule::new(vec![ctx.embed(&ctx.poly.one_poly(), i)], ctx.rank);
        let meet = intersect(ctx, cfg, n, &ei)?;
        let polys: Vec<Polynomial<R>> = meet
            .gens
            .iter()
            .map(|g| {
                let comps = ctx.to_poly_vec(g);
                debug_assert!(comps
                    .iter()
                    .enumerate()
                    .all(|(j, p)| j == i || p.is_zero()));
                comps[i].clone()
            })
            .collect();
        let ji = Ideal::from_polys(&ictx, polys).0;
        acc = Some(match acc {
            None => ji,
            Some(prev) => intersect(&ictx, cfg, &prev, &ji)?,
        });
    }
    Ok(Ideal(acc.expect("rank >= 1")))
}

/// `N + <p_1, ..., p_r> M`.
pub fn add_scaled_free<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    n: &Submodule<R>,
    polys: &[Polynomial<R>],
) -> Submodule<R> {
    let mut gens = n.gens.clone();
    for p in polys {
        for i in 0..ctx.rank {
            gens.push(ctx.embed(p, i));
        }
    }
    Submodule::new(gens, ctx.rank)
}

/// The block module ordering `(x \ u) e_i >> u e_j` (monomial-first
/// coupling, the ordering the worked example uses).
pub fn extraction_order<R: CoeffRing>(ctx: &ModuleCtx<R>, u: &[usize]) -> ModuleOrdering {
    let first: Vec<usize> = (0..ctx.nvars()).filter(|v| !u.contains(v)).collect();
    let base = if first.is_empty() {
        MonomialOrder::Block(vec![u.to_vec()])
    } else if u.is_empty() {
        MonomialOrder::Block(vec![first])
    } else {
        MonomialOrder::Block(vec![first, u.to_vec()])
    };
    ModuleOrdering::new(base, Coupling::MonomialFirst)
}

/// Generic leading data over A[x \ u] for each element of the block-ordering
/// basis of N: (coefficient polynomial in the u-variables, leading
/// (x\u)-monomial, component).
#[allow(clippy::type_complexity)]
pub fn block_leading_data<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n: &Submodule<R>,
    u: &[usize],
) -> Result<(Vec<(Polynomial<R>, PowerProduct, usize)>, ModuleCtx<R>)> {
    let ectx = ctx.with_order(extraction_order(ctx, u));
    let gb = basis_of(&ectx, cfg, n)?;
    let xsu: Vec<usize> = (0..ctx.nvars()).filter(|v| !u.contains(v)).collect();
    let mut out = Vec::with_capacity(gb.elements.len());
    for g in &gb.elements {
        // Group terms by ((x\u)-part, component); the maximal group under the
        // induced ordering ((x\u)-monomial, then component) is the leading
        // group; its u-part is the coefficient in Z[u].
        let mut groups: Vec<(PowerProduct, usize, Vec<(R::Elem, PowerProduct)>)> = Vec::new();
        for (c, m, k) in &g.terms {
            let outer = m.restrict(&xsu);
            let inner = m.restrict(u);
            match groups.iter_mut().find(|(o, kk, _)| *o == outer && kk == k) {
                Some((_, _, list)) => list.push((c.clone(), inner)),
                None => groups.push((outer, *k, vec![(c.clone(), inner)])),
            }
        }
        let (beta, comp, coeff_terms) = groups
            .into_iter()
            .max_by(|(ao, ak, _), (bo, bk, _)| ectx.cmp_mm(ao, *ak, bo, *bk))
            .expect("basis elements are nonzero");
        let coeff = ctx.poly.from_terms(coeff_terms);
        // The Z[x]-leading term should sit inside the leading group; when it
        // does not (a pure-u head in another component), the caller widens h.
        debug_assert!({
            let (_, lm, lk) = g.leading().unwrap();
            lm.restrict(&xsu) != beta || *lk != comp || {
                let lmu = lm.restrict(u);
                coeff.terms.iter().any(|(_, m)| *m == lmu)
            }
        });
        out.push((coeff, beta, comp));
    }
    Ok((out, ectx))
}

/// Extraction data for a submodule of Z[x]^m: reads the leading coefficients
/// a_i (with their q-power split in characteristic p), forms
/// h = lcm(a_1, ..., a_k), and contracts via saturation.
pub fn extension_contraction(
    ctx: &ModuleCtx<IntRing>,
    cfg: &Config,
    n: &Submodule<IntRing>,
    u: &[usize],
    p: u64,
) -> Result<(ExtractionContext, SaturationResult<IntRing>)> {
    let (raw, ectx) = block_leading_data(ctx, cfg, n, u)?;
    let gb = basis_of(&ectx, cfg, n)?;
    let xsu: Vec<usize> = (0..ctx.nvars()).filter(|v| !u.contains(v)).collect();
    let pbig = BigInt::from(p.max(1));
    let mut leads = Vec::with_capacity(raw.len());
    let mut h = ctx.poly.one_poly();
    for (g, (coeff, beta, comp)) in gb.elements.iter().zip(raw) {
        let (nu, a) = if p == 0 {
            (0u32, coeff)
        } else {
            let nu = p_content(&coeff, &pbig);
            let a = ctx
                .poly
                .exact_div(&coeff, &ctx.poly.constant(pbig.pow(nu)))
                .expect("p-content divides");
            if p_content(&a, &pbig) > 0 {
                return Err(Error::Internal(
                    "extraction hypothesis violated: a_i lies in <p>".into(),
                ));
            }
            (nu, a)
        };
        h = poly_lcm(&ctx.poly, &h, &a);
        // Consistency with the Z[x]-leading term: widen h when the head term
        // falls outside the leading group (see ledger note on the ordering
        // subtlety).
        let (_, lm, lk) = g.leading().unwrap();
        if lm.restrict(&xsu) != beta || *lk != comp {
            let head_outer = lm.restrict(&xsu);
            let head_group: Vec<(BigInt, PowerProduct)> = g
                .terms
                .iter()
                .filter(|(_, m, k)| m.restrict(&xsu) == head_outer && *k == *lk)
                .map(|(c, m, _)| (c.clone(), m.restrict(u)))
                .collect();
            let mut extra = ctx.poly.from_terms(head_group);
            if p > 0 {
                let nu2 = p_content(&extra, &pbig);
                extra = ctx
                    .poly
                    .exact_div(&extra, &ctx.poly.constant(pbig.pow(nu2)))
                    .unwrap();
            }
            h = poly_lcm(&ctx.poly, &h, &extra);
        }
        leads.push(LeadData { nu, a, beta, comp });
    }
    if h.is_zero() {
        h = ctx.poly.one_poly();
    }
    let sat = saturate(ctx, cfg, n, &h)?;
    Ok((
        ExtractionContext {
            u: u.to_vec(),
            p,
            leads,
            h,
        },
        sat,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{canonical_gens, submodule_member};
    use crate::module::Coupling;
    use num_traits::Zero;

    fn zctx(rank: usize) -> ModuleCtx<IntRing> {
        ModuleCtx::new(
            IntRing,
            vec!["x".into(), "y".into()],
            rank,
            ModuleOrdering::new(MonomialOrder::Lex, Coupling::MonomialFirst),
        )
    }

    fn pp(e: &[u32]) -> PowerProduct {
        PowerProduct(e.to_vec())
    }

    fn el(ctx: &ModuleCtx<IntRing>, terms: &[(i64, &[u32], usize)]) -> ModuleElement<IntRing> {
        ctx.from_terms(
            terms
                .iter()
                .map(|(c, e, k)| (BigInt::from(*c), pp(e), *k))
                .collect(),
        )
    }

    fn poly(ctx: &ModuleCtx<IntRing>, terms: &[(i64, &[u32])]) -> Polynomial<IntRing> {
        ctx.poly.from_terms(
            terms
                .iter()
                .map(|(c, e)| (BigInt::from(*c), pp(e)))
                .collect(),
        )
    }

    fn paper_module(ctx: &ModuleCtx<IntRing>) -> Submodule<IntRing> {
        Submodule::new(
            vec![
                el(ctx, &[(1, &[1, 2], 2), (-1, &[2, 0], 2), (-1, &[1, 1], 2)]),
                el(ctx, &[(1, &[0, 1], 1), (1, &[1, 0], 2)]),
                el(ctx, &[(1, &[1, 0], 1), (2, &[1, 1], 2), (-1, &[1, 0], 2)]),
                el(ctx, &[(1, &[1, 0], 0), (-1, &[1, 1], 2)]),
                el(ctx, &[(18, &[1, 0], 2)]),
            ],
            3,
        )
    }

    #[test]
    fn intersect_examples() {
        let cfg = Config::default();
        // <x> ∩ <y> = <xy> in Z[x,y]
        let ctx = zctx(1);
        let nx = Submodule::new(vec![el(&ctx, &[(1, &[1, 0], 0)])], 1);
        let ny = Submodule::new(vec![el(&ctx, &[(1, &[0, 1], 0)])], 1);
        let meet = intersect(&ctx, &cfg, &nx, &ny).unwrap();
        let expect = Submodule::new(vec![el(&ctx, &[(1, &[1, 1], 0)])], 1);
        assert!(submodule_equal(&ctx, &cfg, &meet, &expect).unwrap());

        // <2> ∩ <3> = <6>
        let n2 = Submodule::new(vec![el(&ctx, &[(2, &[0, 0], 0)])], 1);
        let n3 = Submodule::new(vec![el(&ctx, &[(3, &[0, 0], 0)])], 1);
        let meet = intersect(&ctx, &cfg, &n2, &n3).unwrap();
        let expect = Submodule::new(vec![el(&ctx, &[(6, &[0, 0], 0)])], 1);
        assert!(submodule_equal(&ctx, &cfg, &meet, &expect).unwrap());

        // <x e1> ∩ <2 e1> = <2x e1> in Z[x,y]^2
        let ctx2 = zctx(2);
        let a = Submodule::new(vec![el(&ctx2, &[(1, &[1, 0], 0)])], 2);
        let b = Submodule::new(vec![el(&ctx2, &[(2, &[0, 0], 0)])], 2);
        let meet = intersect(&ctx2, &cfg, &a, &b).unwrap();
        let expect = Submodule::new(vec![el(&ctx2, &[(2, &[1, 0], 0)])], 2);
        assert!(submodule_equal(&ctx2, &cfg, &meet, &expect).unwrap());
        // membership oracle both directions
        assert!(submodule_member(&ctx2, &cfg, &el(&ctx2, &[(2, &[1, 0], 0)]), &meet).unwrap());
        assert!(!submodule_member(&ctx2, &cfg, &el(&ctx2, &[(1, &[1, 0], 0)]), &meet).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let cfg = Config::default();
        let ctx = zctx(3);
        let n = paper_module(&ctx);
        // quotient(N, 18y^3) = <e2, x e1, x e3>
        let q = quotient(&ctx, &cfg, &n, &poly(&ctx, &[(18, &[0, 3])])).unwrap();
        let expect = Submodule::new(
            vec![
                el(&ctx, &[(1, &[0, 0], 1)]),
                el(&ctx, &[(1, &[1, 0], 0)]),
                el(&ctx, &[(1, &[1, 0], 2)]),
            ],
            3,
        );
        assert!(submodule_equal(&ctx, &cfg, &q, &expect).unwrap());

        // N : 1 = N
        let q1 = quotient(&ctx, &cfg, &n, &ctx.poly.one_poly()).unwrap();
        assert!(submodule_equal(&ctx, &cfg, &q1, &n).unwrap());

        // <x^2, xy> : x = <x, y>
        let ctx1 = zctx(1);
        let i = Submodule::new(
            vec![el(&ctx1, &[(1, &[2, 0], 0)]), el(&ctx1, &[(1, &[1, 1], 0)])],
            1,
        );
        let q = quotient(&ctx1, &cfg, &i, &poly(&ctx1, &[(1, &[1, 0])])).unwrap();
        let expect = Submodule::new(
            vec![el(&ctx1, &[(1, &[1, 0], 0)]), el(&ctx1, &[(1, &[0, 1], 0)])],
            1,
        );
        assert!(submodule_equal(&ctx1, &cfg, &q, &expect).unwrap());
        // quotient invariants: N ⊆ N : f and f*(N : f) ⊆ N
        for g in &q.gens {
            let scaled = ctx1.mul_poly(g, &poly(&ctx1, &[(1, &[1, 0])]));
            assert!(submodule_member(&ctx1, &cfg, &scaled, &i).unwrap());
        }
        for g in &i.gens {
            assert!(submodule_member(&ctx1, &cfg, g, &q).unwrap());
        }

        assert!(quotient(&ctx1, &cfg, &i, &Polynomial::zero()).is_err());
    }

    #[test]
    fn brute_force_quotient_oracle() {
        // <x^2, xy> : x over monomials of degree <= 3: exactly x and y survive
        // (checked by membership of f*x in the ideal).
        let cfg = Config::default();
        let ctx = zctx(1);
        let i = Submodule::new(
            vec![el(&ctx, &[(1, &[2, 0], 0)]), el(&ctx, &[(1, &[1, 1], 0)])],
            1,
        );
        let q = quotient(&ctx, &cfg, &i, &poly(&ctx, &[(1, &[1, 0])])).unwrap();
        for dx in 0..=3u32 {
            for dy in 0..=3u32 {
                if dx + dy > 3 {
                    continue;
                }
                let f = el(&ctx, &[(1, &[dx, dy], 0)]);
                let fx = ctx.mul_poly(&f, &poly(&ctx, &[(1, &[1, 0])]));
                let in_quot = submodule_member(&ctx, &cfg, &f, &q).unwrap();
                let fx_in_i = submodule_member(&ctx, &cfg, &fx, &i).unwrap();
                assert_eq!(in_quot, fx_in_i, "monomial x^{dx} y^{dy}");
            }
        }
    }

    #[test]
    fn saturation_examples() {
        let cfg = Config::default();
        let ctx = zctx(3);
        let n = paper_module(&ctx);
        let sat = saturate(&ctx, &cfg, &n, &poly(&ctx, &[(18, &[0, 3])])).unwrap();
        assert_eq!(sat.index, 1);
        let expect = Submodule::new(
            vec![
                el(&ctx, &[(1, &[0, 0], 1)]),
                el(&ctx, &[(1, &[1, 0], 0)]),
                el(&ctx, &[(1, &[1, 0], 2)]),
            ],
            3,
        );
        assert!(submodule_equal(&ctx, &cfg, &sat.module, &expect).unwrap());
        // idempotence
        let again = saturate(&ctx, &cfg, &sat.module, &poly(&ctx, &[(18, &[0, 3])])).unwrap();
        assert_eq!(again.index, 0);

        // saturate(<4>, 2) = (<1>, 2)
        let ctx1 = zctx(1);
        let n4 = Submodule::new(vec![el(&ctx1, &[(4, &[0, 0], 0)])], 1);
        let sat = saturate(&ctx1, &cfg, &n4, &poly(&ctx1, &[(2, &[0, 0])])).unwrap();
        assert_eq!(sat.index, 2);
        assert!(submodule_member(&ctx1, &cfg, &el(&ctx1, &[(1, &[0, 0], 0)]), &sat.module).unwrap());

        // saturate by a unit: index 0
        let sat = saturate(&ctx1, &cfg, &n4, &poly(&ctx1, &[(-1, &[0, 0])])).unwrap();
        assert_eq!(sat.index, 0);
        assert!(submodule_equal(&ctx1, &cfg, &sat.module, &n4).unwrap());
    }

    #[test]
    fn annihilator_examples() {
        let cfg = Config::default();
        let ctx = zctx(3);
        let n = paper_module(&ctx);
        let ann = annihilator(&ctx, &cfg, &n).unwrap();
        let ictx = ideal_ctx(&ctx);
        let expect = Ideal::from_polys(
            &ictx,
            vec![
                poly(&ctx, &[(18, &[1, 0])]),
                poly(&ctx, &[(1, &[1, 2])]),
                poly(&ctx, &[(1, &[2, 0]), (-2, &[1, 2]), (1, &[1, 1])]),
            ],
        );
        assert!(submodule_equal(&ictx, &cfg, &ann.0, &expect.0).unwrap());
        // every generator of Ann times every basis vector lands in N
        for a in ann.gens_as_polys(&ictx) {
            for i in 0..3 {
                assert!(submodule_member(&ctx, &cfg, &ctx.embed(&a, i), &n).unwrap());
            }
        }

        // Ann(M/M) = <1>, Ann(M/0) = <0>
        let m = full_module(&ctx);
        let ann = annihilator(&ctx, &cfg, &m).unwrap();
        assert!(submodule_member(&ictx, &cfg, &ictx.embed(&ctx.poly.one_poly(), 0), &ann.0).unwrap());
        let ann0 = annihilator(&ctx, &cfg, &Submodule::zero(3)).unwrap();
        assert!(ann0.0.gens.is_empty());
    }

    #[test]
    fn add_scaled_free_examples() {
        let cfg = Config::default();
        let ctx = zctx(2);
        // N = 0, polys = {2}: <2e1, 2e2>
        let n = add_scaled_free(&ctx, &Submodule::zero(2), &[poly(&ctx, &[(2, &[0, 0])])]);
        let expect = Submodule::new(
            vec![el(&ctx, &[(2, &[0, 0], 0)]), el(&ctx, &[(2, &[0, 0], 1)])],
            2,
        );
        assert!(submodule_equal(&ctx, &cfg, &n, &expect).unwrap());
        // empty list: unchanged
        let n2 = add_scaled_free(&ctx, &expect, &[]);
        assert!(submodule_equal(&ctx, &cfg, &n2, &expect).unwrap());
    }

    #[test]
    fn annihilator_after_adding_x() {
        // paper module + x*M: the annihilator picks up x
        let cfg = Config::default();
        let ctx = zctx(3);
        let n = paper_module(&ctx);
        let nx = add_scaled_free(&ctx, &n, &[poly(&ctx, &[(1, &[1, 0])])]);
        let ann = annihilator(&ctx, &cfg, &nx).unwrap();
        let ictx = ideal_ctx(&ctx);
        assert!(submodule_member(&ictx, &cfg, &ictx.embed(&poly(&ctx, &[(1, &[1, 0])]), 0), &ann.0).unwrap());
    }

    #[test]
    fn extraction_paper_example() {
        let cfg = Config::default();
        let ctx = zctx(3);
        let n = paper_module(&ctx);
        let (ec, sat) = extension_contraction(&ctx, &cfg, &n, &[1], 0).unwrap();
        // a = (1, 1, 1, y^3, 18y) against the descending basis order; the
        // paper lists (18y, y^3, 1, 1, 1) for its ascending print order.
        let avals: Vec<String> = ec.leads.iter().map(|l| ctx.poly.display(&l.a)).collect();
        let mut sorted = avals.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["1", "1", "1", "18*y", "y^3"]);
        assert_eq!(ctx.poly.display(&ec.h), "18*y^3");
        assert_eq!(sat.index, 1);
        let expect = Submodule::new(
            vec![
                el(&ctx, &[(1, &[0, 0], 1)]),
                el(&ctx, &[(1, &[1, 0], 0)]),
                el(&ctx, &[(1, &[1, 0], 2)]),
            ],
            3,
        );
        assert!(submodule_equal(&ctx, &cfg, &sat.module, &expect).unwrap());
    }

    #[test]
    fn extraction_trivial_cases() {
        let cfg = Config::default();
        let ctx = zctx(1);
        // u empty, all leading coefficients units: h = 1, contraction = N
        let n = Submodule::new(vec![el(&ctx, &[(1, &[1, 0], 0)])], 1);
        let (ec, sat) = extension_contraction(&ctx, &cfg, &n, &[], 0).unwrap();
        assert!(ec.h.is_constant() && ec.h.terms[0].0 == BigInt::from(1));
        assert_eq!(sat.index, 0);
        assert!(submodule_equal(&ctx, &cfg, &sat.module, &n).unwrap());

        // N = 0: empty leading data, h = 1, contraction 0
        let z = Submodule::zero(1);
        let (ec, sat) = extension_contraction(&ctx, &cfg, &z, &[1], 0).unwrap();
        assert!(ec.leads.is_empty());
        assert!(!ec.h.is_zero());
        assert!(sat.module.gens.is_empty());
    }

    #[test]
    fn extraction_char_p_splits_q_power() {
        let cfg = Config::default();
        let ctx = zctx(1);
        // N = <12y x> over Z[x,y], u = {y}, p = 2: coefficient 12y = 2^2 * 3y
        let n = Submodule::new(vec![el(&ctx, &[(12, &[1, 1], 0)])], 1);
        let (ec, _) = extension_contraction(&ctx, &cfg, &n, &[1], 2).unwrap();
        assert_eq!(ec.leads.len(), 1);
        assert_eq!(ec.leads[0].nu, 2);
        assert_eq!(ctx.poly.display(&ec.leads[0].a), "3*y");
        assert!(BigInt::from(3).is_one() == false);
    }

    #[test]
    fn canonical_presentation_unique() {
        let cfg = Config::default();
        let ctx = zctx(3);
        let n = paper_module(&ctx);
        let g1 = canonical_gens(&ctx, &cfg, &n).unwrap();
        // permuted generator order gives the same canonical presentation
        let mut gens = n.gens.clone();
        gens.reverse();
        let n2 = Submodule::new(gens, 3);
        let g2 = canonical_gens(&ctx, &cfg, &n2).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn quotient_by_ideal_examples() {
        let cfg = Config::default();
        let ctx = zctx(1);
        let ictx = ideal_ctx(&ctx);
        let n = Submodule::new(
            vec![el(&ctx, &[(1, &[2, 0], 0)]), el(&ctx, &[(1, &[1, 1], 0)])],
            1,
        );
        let j = Ideal::from_polys(&ictx, vec![poly(&ctx, &[(1, &[1, 0])]), poly(&ctx, &[(1, &[0, 1])])]);
        let q = quotient_by_ideal(&ctx, &cfg, &n, &j).unwrap();
        // <x^2, xy> : <x, y> = <x, y^?>... check via membership: x in quotient
        assert!(submodule_member(&ctx, &cfg, &el(&ctx, &[(1, &[1, 0], 0)]), &q).unwrap());
        // zero ideal: full module
        let q0 = quotient_by_ideal(&ctx, &cfg, &n, &Ideal::zero()).unwrap();
        assert!(submodule_member(&ctx, &cfg, &el(&ctx, &[(1, &[0, 0], 0)]), &q0).unwrap());
    }
}
