//! The free module A[x]^m: module terms, module monomial orderings, elements
//! in canonical form, and submodules with a cached strong Groebner basis.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{MonomialOrder, Polynomial, PowerProduct, RingCtx};

/// A module monomial x^alpha e_i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleMonomial {
    pub pp: PowerProduct,
    pub comp: usize,
}

/// How the component index couples with the base monomial ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Coupling {
    /// (c, >): component first, smaller index is larger.
    ComponentFirst,
    /// (>, c): monomial first, component (smaller index larger) breaks ties.
    MonomialFirst,
}

/// A module monomial ordering: base ring ordering plus coupling.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleOrdering {
    pub base: MonomialOrder,
    pub coupling: Coupling,
}

impl ModuleOrdering {
    pub fn new(base: MonomialOrder, coupling: Coupling) -> Self {
        ModuleOrdering { base, coupling }
    }

    pub fn cmp(&self, a: &PowerProduct, ca: usize, b: &PowerProduct, cb: usize) -> Ordering {
        match self.coupling {
            Coupling::ComponentFirst => match cb.cmp(&ca) {
                Ordering::Equal => self.base.cmp(a, b),
                ord => ord,
            },
            Coupling::MonomialFirst => match self.base.cmp(a, b) {
                Ordering::Equal => cb.cmp(&ca),
                ord => ord,
            },
        }
    }
}

/// An element of A[x]^m: terms (coefficient, power product, component)
/// strictly decreasing under the active module ordering, no zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleElement<R: CoeffRing> {
    pub terms: Vec<(R::Elem, PowerProduct, usize)>,
}

impl<R: CoeffRing> ModuleElement<R> {
    pub fn zero() -> Self {
        ModuleElement { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(R::Elem, PowerProduct, usize)> {
        self.terms.first()
    }
}

/// Rank, ring context and module ordering shared by all elements of one
/// computation. The embedded `RingCtx` ordering always equals `order.base`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleCtx<R: CoeffRing> {
    pub poly: RingCtx<R>,
    pub rank: usize,
    pub order: ModuleOrdering,
}

impl<R: CoeffRing> ModuleCtx<R> {
    pub fn new(ring: R, vars: Vec<String>, rank: usize, order: ModuleOrdering) -> Self {
        let poly = RingCtx::new(ring, vars, order.base.clone());
        ModuleCtx { poly, rank, order }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn with_order(&self, order: ModuleOrdering) -> Self {
        ModuleCtx {
            poly: self.poly.with_order(order.base.clone()),
            rank: self.rank,
            order,
        }
    }

    pub fn cmp_mm(&self, a: &PowerProduct, ca: usize, b: &PowerProduct, cb: usize) -> Ordering {
        self.order.cmp(a, ca, b, cb)
    }

    /// Canonicalize an arbitrary term list.
    pub fn from_terms(&self, mut terms: Vec<(R::Elem, PowerProduct, usize)>) -> ModuleElement<R> {
        terms.sort_by(|(_, am, ac), (_, bm, bc)| self.cmp_mm(bm, *bc, am, *ac));
        let mut out: Vec<(R::Elem, PowerProduct, usize)> = Vec::with_capacity(terms.len());
        for (c, m, k) in terms {
            if let Some(last) = out.last_mut() {
                if last.1 == m && last.2 == k {
                    last.0 = self.poly.ring.add(&last.0, &c);
                    if self.poly.ring.is_zero(&last.0) {
                        out.pop();
                    }
                    continue;
                }
            }
            if !self.poly.ring.is_zero(&c) {
                out.push((c, m, k));
            }
        }
        ModuleElement { terms: out }
    }

    /// Re-sort an element that is canonical under another ordering.
    pub fn reorder(&self, f: &ModuleElement<R>) -> ModuleElement<R> {
        self.from_terms(f.terms.clone())
    }

    pub fn validate(&self, f: &ModuleElement<R>) -> Result<()> {
        for (c, m, k) in &f.terms {
            if m.0.len() != self.nvars() {
                return Err(Error::ContextMismatch(format!(
                    "power product has {} exponents, ring has {} variables",
                    m.0.len(),
                    self.nvars()
                )));
            }
            if *k >= self.rank {
                return Err(Error::ContextMismatch(format!(
                    "component {} out of range for rank {}",
                    k + 1,
                    self.rank
                )));
            }
            if self.poly.ring.is_zero(c) {
                return Err(Error::ContextMismatch("zero coefficient stored".into()));
            }
        }
        Ok(())
    }

    /// The basis vector p * e_comp.
    pub fn embed(&self, p: &Polynomial<R>, comp: usize) -> ModuleElement<R> {
        self.from_terms(
            p.terms
                .iter()
                .map(|(c, m)| (c.clone(), m.clone(), comp))
                .collect(),
        )
    }

    /// Build a module element from one polynomial per component.
    pub fn from_poly_vec(&self, polys: &[Polynomial<R>]) -> ModuleElement<R> {
        let mut terms = Vec::new();
        for (comp, p) in polys.iter().enumerate() {
            for (c, m) in &p.terms {
                terms.push((c.clone(), m.clone(), comp));
            }
        }
        self.from_terms(terms)
    }

    /// Split an element into its component polynomials.
    pub fn to_poly_vec(&self, f: &ModuleElement<R>) -> Vec<Polynomial<R>> {
        let mut out = vec![Polynomial::zero(); self.rank];
        for (c, m, k) in &f.terms {
            let t = Polynomial {
                terms: vec![(c.clone(), m.clone())],
            };
            out[*k] = self.poly.add(&out[*k], &t);
        }
        out
    }

    pub fn add(&self, f: &ModuleElement<R>, g: &ModuleElement<R>) -> ModuleElement<R> {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            let (fc, fm, fk) = &f.terms[i];
            let (gc, gm, gk) = &g.terms[j];
            match self.cmp_mm(fm, *fk, gm, *gk) {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(g.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.poly.ring.add(fc, gc);
                    if !self.poly.ring.is_zero(&c) {
                        out.push((c, fm.clone(), *fk));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend_from_slice(&g.terms[j..]);
        ModuleElement { terms: out }
    }

    pub fn neg(&self, f: &ModuleElement<R>) -> ModuleElement<R> {
        ModuleElement {
            terms: f
                .terms
                .iter()
                .map(|(c, m, k)| (self.poly.ring.neg(c), m.clone(), *k))
                .collect(),
        }
    }

    pub fn sub(&self, f: &ModuleElement<R>, g: &ModuleElement<R>) -> ModuleElement<R> {
        self.add(f, &self.neg(g))
    }

    /// Multiply by a ring term c * x^m.
    pub fn mul_term(&self, f: &ModuleElement<R>, c: &R::Elem, m: &PowerProduct) -> ModuleElement<R> {
        if self.poly.ring.is_zero(c) {
            return ModuleElement::zero();
        }
        ModuleElement {
            terms: f
                .terms
                .iter()
                .map(|(fc, fm, fk)| (self.poly.ring.mul(fc, c), fm.mul(m), *fk))
                .collect(),
        }
    }

    pub fn mul_scalar(&self, f: &ModuleElement<R>, c: &R::Elem) -> ModuleElement<R> {
        self.mul_term(f, c, &PowerProduct::one(self.nvars()))
    }

    /// Multiply by a ring polynomial.
    pub fn mul_poly(&self, f: &ModuleElement<R>, p: &Polynomial<R>) -> ModuleElement<R> {
        let mut terms = Vec::with_capacity(f.terms.len() * p.terms.len());
        for (pc, pm) in &p.terms {
            for (fc, fm, fk) in &f.terms {
                terms.push((self.poly.ring.mul(pc, fc), pm.mul(fm), *fk));
            }
        }
        self.from_terms(terms)
    }

    /// Leading data (LT as a one-term element, LM, LC); `None` for zero.
    #[allow(clippy::type_complexity)]
    pub fn lead(
        &self,
        f: &ModuleElement<R>,
    ) -> Option<(ModuleElement<R>, ModuleMonomial, R::Elem)> {
        f.leading().map(|(c, m, k)| {
            (
                ModuleElement {
                    terms: vec![(c.clone(), m.clone(), *k)],
                },
                ModuleMonomial {
                    pp: m.clone(),
                    comp: *k,
                },
                c.clone(),
            )
        })
    }

    /// Canonical sign/scale: positive leading coefficient over Z, monic over
    /// a field.
    pub fn normalize_leading(&self, f: &ModuleElement<R>) -> ModuleElement<R> {
        match f.leading() {
            None => ModuleElement::zero(),
            Some((lc, _, _)) => {
                let u = self.poly.ring.canonical_unit(lc);
                if self.poly.ring.is_one(&u) {
                    f.clone()
                } else {
                    self.mul_scalar(f, &u)
                }
            }
        }
    }

    pub fn display(&self, f: &ModuleElement<R>) -> String {
        let polys = self.to_poly_vec(f);
        let parts: Vec<String> = polys.iter().map(|p| self.poly.display(p)).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Strong term divisibility: `s | t` iff components equal, the coefficient
/// divides in A and the power product divides componentwise.
pub fn term_divides<R: CoeffRing>(
    ring: &R,
    s: &(R::Elem, PowerProduct, usize),
    t: &(R::Elem, PowerProduct, usize),
) -> bool {
    s.2 == t.2 && s.1.divides(&t.1) && ring.divides(&s.0, &t.0)
}

type GbCache<R> = Mutex<HashMap<ModuleOrdering, Arc<GroebnerBasis<R>>>>;

/// A finitely generated submodule of A[x]^m: a generator list plus a cache of
/// Groebner bases keyed by ordering. Equality of the mathematical submodule
/// is decided by `groebner::submodule_equal`, not by comparing generators.
#[derive(Debug)]
pub struct Submodule<R: CoeffRing> {
    pub gens: Vec<ModuleElement<R>>,
    pub rank: usize,
    cache: Arc<GbCache<R>>,
}

impl<R: CoeffRing> Clone for Submodule<R> {
    fn clone(&self) -> Self {
        Submodule {
            gens: self.gens.clone(),
            rank: self.rank,
            cache: Arc::clone(&self.cache),
        }
    }
}

impl<R: CoeffRing> Submodule<R> {
    pub fn new(gens: Vec<ModuleElement<R>>, rank: usize) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Submodule {
            gens,
            rank,
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Submodule::new(Vec::new(), rank)
    }

    pub fn is_zero_presentation(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn cached_basis(&self, order: &ModuleOrdering) -> Option<Arc<GroebnerBasis<R>>> {
        self.cache.lock().unwrap().get(order).cloned()
    }

    pub fn store_basis(&self, order: ModuleOrdering, gb: Arc<GroebnerBasis<R>>) {
        self.cache.lock().unwrap().insert(order, gb);
    }
}

/// An ideal of A[x], maintained as a rank-1 submodule.
#[derive(Clone, Debug)]
pub struct Ideal<R: CoeffRing>(pub Submodule<R>);

impl<R: CoeffRing> Ideal<R> {
    pub fn from_polys(ctx: &ModuleCtx<R>, polys: Vec<Polynomial<R>>) -> Self {
        debug_assert_eq!(ctx.rank, 1);
        let gens = polys.iter().map(|p| ctx.embed(p, 0)).collect();
        Ideal(Submodule::new(gens, 1))
    }

    pub fn zero() -> Self {
        Ideal(Submodule::zero(1))
    }

    pub fn gens_as_polys(&self, ctx: &ModuleCtx<R>) -> Vec<Polynomial<R>> {
        self.0
            .gens
            .iter()
            .map(|g| ctx.to_poly_vec(g).pop().unwrap())
            .collect()
    }
}

/// Rank-1 module context for ideal computations in the same ring.
pub fn ideal_ctx<R: CoeffRing>(ctx: &ModuleCtx<R>) -> ModuleCtx<R> {
    ModuleCtx {
        poly: ctx.poly.clone(),
        rank: 1,
        order: ctx.order.clone(),
    }
}
