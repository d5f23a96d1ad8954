//! Normal form and strong Groebner bases of submodules of A[x]^m.
//!
//! Over Z the completion runs S-pairs (lcm cancellation) and G-pairs
//! (extended-gcd combination); over a field the G-pairs degenerate and the
//! chain/product criteria prune the queue. The resulting basis is
//! interreduced, sign-normalized and sorted, so equal submodules get equal
//! canonical bases.

use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use crate::coeff::CoeffRing;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::module::{term_divides, ModuleCtx, ModuleElement, ModuleOrdering, Submodule};
use crate::poly::{Polynomial, PowerProduct};

/// A Groebner basis together with the ordering it was computed under.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<R: CoeffRing> {
    pub elements: Vec<ModuleElement<R>>,
    pub order: ModuleOrdering,
    /// True for a strong basis over Z; false for a reduced field basis.
    pub strong: bool,
}

/// Remainder plus (on request) the standard-representation coefficients:
/// `f = sum xi_i * divisor_i + remainder`.
#[derive(Clone, Debug)]
pub struct NfResult<R: CoeffRing> {
    pub remainder: ModuleElement<R>,
    pub coeffs: Option<Vec<Polynomial<R>>>,
}

/// Normal form of `f` against a finite divisor list, per the division
/// algorithm: strip the leading term whenever some divisor's leading term
/// term-divides it, otherwise move it to the remainder.
pub fn normal_form<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    f: &ModuleElement<R>,
    divisors: &[ModuleElement<R>],
    want_coeffs: bool,
) -> NfResult<R> {
    nf_inner(ctx, f, divisors, want_coeffs, &mut usize::MAX.clone()).expect("no budget in use")
}

fn nf_inner<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    f: &ModuleElement<R>,
    divisors: &[ModuleElement<R>],
    want_coeffs: bool,
    budget: &mut usize,
) -> Result<NfResult<R>> {
    let ring = &ctx.poly.ring;
    let mut work = f.clone();
    let mut rem_terms: Vec<(R::Elem, PowerProduct, usize)> = Vec::new();
    let mut coeffs = want_coeffs.then(|| vec![Polynomial::<R>::zero(); divisors.len()]);

    while let Some((flc, flm, fcomp)) = work.leading().cloned() {
        // T := divisors whose leading term divides LT(work); choose the one
        // with smallest leading monomial, ties by position.
        let mut chosen: Option<usize> = None;
        for (i, g) in divisors.iter().enumerate() {
            let Some(glt) = g.leading() else { continue };
            if term_divides(ring, glt, &(flc.clone(), flm.clone(), fcomp)) {
                match chosen {
                    None => chosen = Some(i),
                    Some(j) => {
                        let jlt = divisors[j].leading().unwrap();
                        if ctx.cmp_mm(&glt.1, glt.2, &jlt.1, jlt.2) == std::cmp::Ordering::Less {
                            chosen = Some(i);
                        }
                    }
                }
            }
        }
        match chosen {
            Some(i) => {
                let g = &divisors[i];
                let (glc, glm, _) = g.leading().unwrap();
                let hc = ring.checked_div(&flc, glc).expect("term divides");
                let hm = flm.checked_div(glm).expect("term divides");
                work = ctx.sub(&work, &ctx.mul_term(g, &hc, &hm));
                if let Some(cs) = coeffs.as_mut() {
                    let t = Polynomial {
                        terms: vec![(hc, hm)],
                    };
                    cs[i] = ctx.poly.add(&cs[i], &t);
                }
            }
            None => {
                // Head moves to the remainder; continue with the tail.
                rem_terms.push((flc, flm, fcomp));
                work.terms.remove(0);
            }
        }
        if *budget == 0 {
            return Err(Error::StepLimit(0));
        }
        *budget -= 1;
    }
    Ok(NfResult {
        remainder: ModuleElement { terms: rem_terms },
        coeffs,
    })
}

/// S-pair: cancels the lcm of the two leading terms. `None` when the leading
/// components differ.
pub fn spair<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    f: &ModuleElement<R>,
    g: &ModuleElement<R>,
) -> Option<ModuleElement<R>> {
    let ring = &ctx.poly.ring;
    let (fa, fm, fc) = f.leading()?;
    let (ga, gm, gc) = g.leading()?;
    if fc != gc {
        return None;
    }
    let clcm = ring.lcm(fa, ga);
    let mlcm = fm.lcm(gm);
    let lf = ctx.mul_term(
        f,
        &ring.checked_div(&clcm, fa).unwrap(),
        &mlcm.checked_div(fm).unwrap(),
    );
    let lg = ctx.mul_term(
        g,
        &ring.checked_div(&clcm, ga).unwrap(),
        &mlcm.checked_div(gm).unwrap(),
    );
    Some(ctx.sub(&lf, &lg))
}

/// G-pair: the extended-gcd combination with leading term
/// `gcd(a,b) x^max(alpha,beta) e_i`. `None` when components differ or one
/// leading coefficient already divides the other.
pub fn gpair<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    f: &ModuleElement<R>,
    g: &ModuleElement<R>,
) -> Option<ModuleElement<R>> {
    let ring = &ctx.poly.ring;
    let (fa, fm, fc) = f.leading()?;
    let (ga, gm, gc) = g.leading()?;
    if fc != gc || ring.divides(fa, ga) || ring.divides(ga, fa) {
        return None;
    }
    let (_, u, v) = ring.gcd_ext(fa, ga);
    let mlcm = fm.lcm(gm);
    let lf = ctx.mul_term(f, &u, &mlcm.checked_div(fm).unwrap());
    let lg = ctx.mul_term(g, &v, &mlcm.checked_div(gm).unwrap());
    Some(ctx.add(&lf, &lg))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum PairKind {
    S,
    G,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Pair {
    /// Scheduling key: total degree of the monomial lcm (normal selection).
    degree: u32,
    i: usize,
    j: usize,
    kind: PairKind,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap is a max-heap; invert for lowest-degree-first.
        (other.degree, other.i, other.j, other.kind as u8).cmp(&(
            self.degree,
            self.i,
            self.j,
            self.kind as u8,
        ))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Buchberger completion. Over Z this produces a strong basis (S- and
/// G-pairs); over a field the usual reduced basis.
pub fn groebner<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    gens: &[ModuleElement<R>],
    cfg: &Config,
) -> Result<GroebnerBasis<R>> {
    let ring = ctx.poly.ring.clone();
    let is_field = ring.is_field();
    let mut budget = cfg.max_steps;

    let mut basis: Vec<ModuleElement<R>> = Vec::new();
    for g in gens {
        let g = ctx.normalize_leading(&ctx.reorder(g));
        if !g.is_zero() {
            basis.push(g);
        }
    }

    let mut queue: BinaryHeap<Pair> = BinaryHeap::new();
    let mut processed: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |basis: &[ModuleElement<R>],
                      t: usize,
                      queue: &mut BinaryHeap<Pair>,
                      ring: &R| {
        let (ta, tm, tc) = basis[t].leading().unwrap();
        for s in 0..t {
            let (sa, sm, sc) = basis[s].leading().unwrap();
            if sc != tc {
                continue;
            }
            let degree = sm.lcm(tm).degree();
            queue.push(Pair {
                degree,
                i: s,
                j: t,
                kind: PairKind::S,
            });
            if !ring.is_field() && !ring.divides(sa, ta) && !ring.divides(ta, sa) {
                queue.push(Pair {
                    degree,
                    i: s,
                    j: t,
                    kind: PairKind::G,
                });
            }
        }
    };

    for t in 0..basis.len() {
        push_pairs(&basis, t, &mut queue, &ring);
    }

    while let Some(pair) = queue.pop() {
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        if pair.kind == PairKind::S {
            processed.insert((pair.i, pair.j));
        }
        if is_field && pair.kind == PairKind::S {
            let (_, fm, fc) = f.leading().unwrap();
            let (_, gm, _) = g.leading().unwrap();
            let lcm = fm.lcm(gm);
            // Product criterion, rank-1 field case only.
            if ctx.rank == 1 && lcm == fm.mul(gm) && *fc == 0 {
                continue;
            }
            // Chain criterion: some k with LM(k) dividing the lcm, both
            // subpairs already handled.
            let chained = basis.iter().enumerate().any(|(k, h)| {
                if k == pair.i || k == pair.j {
                    return false;
                }
                let Some((_, hm, hc)) = h.leading() else {
                    return false;
                };
                *hc == *fc
                    && hm.divides(&lcm)
                    && processed.contains(&key(pair.i, k))
                    && processed.contains(&key(pair.j, k))
            });
            if chained {
                continue;
            }
        }
        let combo = match pair.kind {
            PairKind::S => spair(ctx, f, g),
            PairKind::G => gpair(ctx, f, g),
        };
        let Some(combo) = combo else { continue };
        let red = nf_inner(ctx, &combo, &basis, false, &mut budget)
            .map_err(|_| Error::StepLimit(cfg.max_steps))?
            .remainder;
        if !red.is_zero() {
            let red = ctx.normalize_leading(&red);
            basis.push(red);
            push_pairs(&basis, basis.len() - 1, &mut queue, &ring);
        }
    }

    let elements = interreduce(ctx, basis, &mut budget).map_err(|_| Error::StepLimit(cfg.max_steps))?;
    Ok(GroebnerBasis {
        elements,
        order: ctx.order.clone(),
        strong: !is_field,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Drop elements whose leading term is term-divisible by another's, fully
/// reduce every tail, normalize signs, sort descending by leading monomial.
fn interreduce<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    mut basis: Vec<ModuleElement<R>>,
    budget: &mut usize,
) -> Result<Vec<ModuleElement<R>>> {
    let ring = ctx.poly.ring.clone();
    basis.sort_by(|a, b| {
        let (_, am, ac) = a.leading().unwrap();
        let (_, bm, bc) = b.leading().unwrap();
        ctx.cmp_mm(bm, *bc, am, *ac)
    });
    // Keep the first element of each divisibility class.
    let mut kept: Vec<ModuleElement<R>> = Vec::new();
    'cand: for (i, g) in basis.iter().enumerate() {
        let glt = g.leading().unwrap();
        for (j, h) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let hlt = h.leading().unwrap();
            if term_divides(&ring, hlt, glt) {
                // Tie (mutual divisibility): keep the earlier one.
                if term_divides(&ring, glt, hlt) && i < j {
                    continue;
                }
                continue 'cand;
            }
        }
        kept.push(g.clone());
    }
    // Tail reduction against the full kept set.
    for i in 0..kept.len() {
        let head = ModuleElement {
            terms: vec![kept[i].terms[0].clone()],
        };
        let tail = ModuleElement {
            terms: kept[i].terms[1..].to_vec(),
        };
        let red = nf_inner(ctx, &tail, &kept, false, budget)?.remainder;
        kept[i] = ctx.add(&head, &red);
    }
    for g in kept.iter_mut() {
        *g = ctx.normalize_leading(g);
    }
    kept.sort_by(|a, b| {
        let (_, am, ac) = a.leading().unwrap();
        let (_, bm, bc) = b.leading().unwrap();
        ctx.cmp_mm(bm, *bc, am, *ac)
    });
    kept.dedup();
    Ok(kept)
}

/// Groebner basis of a submodule under the context ordering, cached on the
/// submodule.
pub fn basis_of<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n: &Submodule<R>,
) -> Result<Arc<GroebnerBasis<R>>> {
    if let Some(gb) = n.cached_basis(&ctx.order) {
        return Ok(gb);
    }
    let gb = Arc::new(groebner(ctx, &n.gens, cfg)?);
    n.store_basis(ctx.order.clone(), Arc::clone(&gb));
    Ok(gb)
}

/// Membership via normal form against the (cached) basis.
pub fn submodule_member<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    f: &ModuleElement<R>,
    n: &Submodule<R>,
) -> Result<bool> {
    let gb = basis_of(ctx, cfg, n)?;
    let f = ctx.reorder(f);
    Ok(normal_form(ctx, &f, &gb.elements, false).remainder.is_zero())
}

/// Equality via mutual membership of generators.
pub fn submodule_equal<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n1: &Submodule<R>,
    n2: &Submodule<R>,
) -> Result<bool> {
    for g in &n1.gens {
        if !submodule_member(ctx, cfg, g, n2)? {
            return Ok(false);
        }
    }
    for g in &n2.gens {
        if !submodule_member(ctx, cfg, g, n1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical generator presentation: the interreduced basis elements.
pub fn canonical_gens<R: CoeffRing>(
    ctx: &ModuleCtx<R>,
    cfg: &Config,
    n: &Submodule<R>,
) -> Result<Vec<ModuleElement<R>>> {
    Ok(basis_of(ctx, cfg, n)?.elements.clone())
}

/// Test-support: every S- and G-pair of the basis reduces to zero.
pub fn pairs_reduce_to_zero<R: CoeffRing>(ctx: &ModuleCtx<R>, gb: &GroebnerBasis<R>) -> bool {
    for i in 0..gb.elements.len() {
        for j in i + 1..gb.elements.len() {
            for p in [
                spair(ctx, &gb.elements[i], &gb.elements[j]),
                gpair(ctx, &gb.elements[i], &gb.elements[j]),
            ]
            .into_iter()
            .flatten()
            {
                if !normal_form(ctx, &p, &gb.elements, false).remainder.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
