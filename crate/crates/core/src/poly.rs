//! Sparse multivariate polynomials over a [`CoeffRing`], monomial orderings,
//! coefficient-domain maps, and the multivariate gcd/lcm/exact-division
//! helpers built on them.
//!
//! A [`Polynomial`] stores its terms strictly decreasing under the active
//! ordering of the owning [`RingCtx`]; the zero polynomial is the empty term
//! list. All operations are pure; contexts and polynomials are immutable
//! values.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{CoeffRing, IntRing, PrimeField, RatField};
use crate::error::{Error, Result};

/// A power product x^alpha, alpha in N^n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PowerProduct(pub Vec<u32>);

impl PowerProduct {
    pub fn one(nvars: usize) -> Self {
        PowerProduct(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = exp;
        PowerProduct(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn deg(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn mul(&self, other: &Self) -> Self {
        PowerProduct(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise subtraction; `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(PowerProduct)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        PowerProduct(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Restriction to a variable subset: exponents outside `vars` zeroed.
    pub fn restrict(&self, vars: &[usize]) -> Self {
        let mut e = vec![0; self.0.len()];
        for &v in vars {
            e[v] = self.0[v];
        }
        PowerProduct(e)
    }

    pub fn supported_on(&self, vars: &[usize]) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || vars.contains(&i))
    }
}

/// A multiplicative well-ordering on power products.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    /// Lexicographic on the declared variable sequence (earlier = larger).
    Lex,
    /// Block ordering: an ordered partition of the variable indices; earlier
    /// blocks dominate, ties broken lexicographically inside each block on
    /// the listed sequence.
    Block(Vec<Vec<usize>>),
}

impl MonomialOrder {
    /// Two-block elimination ordering `first >> rest` over `nvars` variables.
    pub fn elim(first: &[usize], nvars: usize) -> Self {
        let rest: Vec<usize> = (0..nvars).filter(|v| !first.contains(v)).collect();
        if rest.is_empty() {
            MonomialOrder::Block(vec![first.to_vec()])
        } else {
            MonomialOrder::Block(vec![first.to_vec(), rest])
        }
    }

    pub fn cmp(&self, a: &PowerProduct, b: &PowerProduct) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block(blocks) => {
                for block in blocks {
                    for &v in block {
                        match a.0[v].cmp(&b.0[v]) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A sparse polynomial: terms strictly decreasing under the owning context's
/// ordering, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<R: CoeffRing> {
    pub terms: Vec<(R::Elem, PowerProduct)>,
}

impl<R: CoeffRing> Polynomial<R> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(R::Elem, PowerProduct)> {
        self.terms.first()
    }

    /// Per-variable degree.
    pub fn deg_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(_, m)| m.deg(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(_, m)| m.is_one())
    }

    /// Variables actually occurring.
    pub fn support_vars(&self, nvars: usize) -> Vec<usize> {
        (0..nvars)
            .filter(|&v| self.terms.iter().any(|(_, m)| m.deg(v) > 0))
            .collect()
    }
}

/// Variable names, coefficient domain and active ordering shared by every
/// polynomial in one computation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingCtx<R: CoeffRing> {
    pub ring: R,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl<R: CoeffRing> RingCtx<R> {
    pub fn new(ring: R, vars: Vec<String>, order: MonomialOrder) -> Self {
        RingCtx { ring, vars, order }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        RingCtx {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            order,
        }
    }

    pub fn cmp_pp(&self, a: &PowerProduct, b: &PowerProduct) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn validate(&self, f: &Polynomial<R>) -> Result<()> {
        for (c, m) in &f.terms {
            if m.0.len() != self.nvars() {
                return Err(Error::ContextMismatch(format!(
                    "power product has {} exponents, ring has {} variables",
                    m.0.len(),
                    self.nvars()
                )));
            }
            if self.ring.is_zero(c) {
                return Err(Error::ContextMismatch("zero coefficient stored".into()));
            }
        }
        Ok(())
    }

    pub fn constant(&self, c: R::Elem) -> Polynomial<R> {
        if self.ring.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(c, PowerProduct::one(self.nvars()))],
            }
        }
    }

    pub fn one_poly(&self) -> Polynomial<R> {
        self.constant(self.ring.one())
    }

    pub fn var_poly(&self, idx: usize) -> Polynomial<R> {
        Polynomial {
            terms: vec![(self.ring.one(), PowerProduct::var(self.nvars(), idx, 1))],
        }
    }

    /// Canonicalize an arbitrary term list: sort, merge, drop zeros.
    pub fn from_terms(&self, mut terms: Vec<(R::Elem, PowerProduct)>) -> Polynomial<R> {
        terms.sort_by(|(_, a), (_, b)| self.cmp_pp(b, a));
        let mut out: Vec<(R::Elem, PowerProduct)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            if let Some(last) = out.last_mut() {
                if last.1 == m {
                    last.0 = self.ring.add(&last.0, &c);
                    if self.ring.is_zero(&last.0) {
                        out.pop();
                    }
                    continue;
                }
            }
            if !self.ring.is_zero(&c) {
                out.push((c, m));
            }
        }
        Polynomial { terms: out }
    }

    /// Re-sorts a polynomial that is canonical under some other ordering.
    pub fn reorder(&self, f: &Polynomial<R>) -> Polynomial<R> {
        self.from_terms(f.terms.clone())
    }

    pub fn add(&self, f: &Polynomial<R>, g: &Polynomial<R>) -> Polynomial<R> {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            match self.cmp_pp(&f.terms[i].1, &g.terms[j].1) {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(g.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.ring.add(&f.terms[i].0, &g.terms[j].0);
                    if !self.ring.is_zero(&c) {
                        out.push((c, f.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend_from_slice(&g.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, f: &Polynomial<R>) -> Polynomial<R> {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(c, m)| (self.ring.neg(c), m.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Polynomial<R>, g: &Polynomial<R>) -> Polynomial<R> {
        self.add(f, &self.neg(g))
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, f: &Polynomial<R>, c: &R::Elem, m: &PowerProduct) -> Polynomial<R> {
        if self.ring.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(fc, fm)| (self.ring.mul(fc, c), fm.mul(m)))
                .collect(),
        }
    }

    pub fn mul_scalar(&self, f: &Polynomial<R>, c: &R::Elem) -> Polynomial<R> {
        self.mul_term(f, c, &PowerProduct::one(self.nvars()))
    }

    pub fn mul(&self, f: &Polynomial<R>, g: &Polynomial<R>) -> Polynomial<R> {
        let mut prods = Vec::with_capacity(f.terms.len() * g.terms.len());
        for (fc, fm) in &f.terms {
            for (gc, gm) in &g.terms {
                prods.push((self.ring.mul(fc, gc), fm.mul(gm)));
            }
        }
        self.from_terms(prods)
    }

    pub fn pow(&self, f: &Polynomial<R>, e: u32) -> Polynomial<R> {
        let mut acc = self.one_poly();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Substitute variable `var` by the polynomial `g`.
    pub fn substitute(&self, f: &Polynomial<R>, var: usize, g: &Polynomial<R>) -> Polynomial<R> {
        let max_e = f.deg_in(var);
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(self.one_poly());
        for k in 1..=max_e {
            let prev = powers[(k - 1) as usize].clone();
            powers.push(self.mul(&prev, g));
        }
        let mut acc = Polynomial::zero();
        for (c, m) in &f.terms {
            let e = m.deg(var);
            let mut rest = m.clone();
            rest.0[var] = 0;
            let base = Polynomial {
                terms: vec![(c.clone(), rest)],
            };
            acc = self.add(&acc, &self.mul(&base, &powers[e as usize]));
        }
        acc
    }

    /// Exact division by a single polynomial; `None` when `g` does not divide
    /// `f` exactly (in particular for `g = 0`, unless `f = 0` too).
    pub fn exact_div(&self, f: &Polynomial<R>, g: &Polynomial<R>) -> Option<Polynomial<R>> {
        if f.is_zero() {
            return Some(Polynomial::zero());
        }
        if g.is_zero() {
            return None;
        }
        let (glc, glm) = g.leading().unwrap();
        let mut rem = f.clone();
        let mut quot: Vec<(R::Elem, PowerProduct)> = Vec::new();
        while let Some((rlc, rlm)) = rem.leading() {
            let m = rlm.checked_div(glm)?;
            let c = self.ring.checked_div(rlc, glc)?;
            rem = self.sub(&rem, &self.mul_term(g, &c, &m));
            quot.push((c, m));
        }
        Some(Polynomial { terms: quot })
    }

    /// Formal derivative with respect to `var`.
    pub fn derivative(&self, f: &Polynomial<R>, var: usize) -> Polynomial<R> {
        let terms = f
            .terms
            .iter()
            .filter(|(_, m)| m.deg(var) > 0)
            .map(|(c, m)| {
                let e = m.deg(var);
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                (self.ring.mul(c, &self.ring.from_i64(e as i64)), m2)
            })
            .collect();
        self.from_terms(terms)
    }

    /// Collect `f` as a dense-in-`var` list of coefficient polynomials
    /// (index = degree in `var`).
    pub fn coeffs_in(&self, f: &Polynomial<R>, var: usize) -> Vec<Polynomial<R>> {
        let d = f.deg_in(var) as usize;
        let mut out = vec![Polynomial::zero(); d + 1];
        for (c, m) in &f.terms {
            let e = m.deg(var) as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            out[e] = self.add(
                &out[e],
                &Polynomial {
                    terms: vec![(c.clone(), rest)],
                },
            );
        }
        out
    }

    /// Multiply so that the leading coefficient is canonical (positive over Z,
    /// one over a field).
    pub fn normalize_leading(&self, f: &Polynomial<R>) -> Polynomial<R> {
        match f.leading() {
            None => Polynomial::zero(),
            Some((lc, _)) => {
                let u = self.ring.canonical_unit(lc);
                if self.ring.is_one(&u) {
                    f.clone()
                } else {
                    self.mul_scalar(f, &u)
                }
            }
        }
    }

    pub fn display(&self, f: &Polynomial<R>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (c, m)) in f.terms.iter().enumerate() {
            let cs = self.ring.display(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars[v].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars[v], e));
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

/// Recursive multivariate gcd by primitive pseudo-remainder sequences.
/// Works over Z and over the provided fields; result is canonically
/// normalized (positive / monic leading coefficient under `ctx.order`).
pub fn poly_gcd<R: CoeffRing>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    g: &Polynomial<R>,
) -> Polynomial<R> {
    let h = poly_gcd_raw(ctx, f, g);
    ctx.normalize_leading(&h)
}

fn poly_gcd_raw<R: CoeffRing>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    g: &Polynomial<R>,
) -> Polynomial<R> {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let sup: Vec<usize> = (0..ctx.nvars())
        .filter(|&v| f.deg_in(v) > 0 || g.deg_in(v) > 0)
        .collect();
    match sup.last() {
        None => {
            // Both constant.
            let a = &f.terms[0].0;
            let b = &g.terms[0].0;
            ctx.constant(ctx.ring.gcd(a, b))
        }
        Some(&v) => {
            let (cf, pf) = content_wrt(ctx, f, v);
            let (cg, pg) = content_wrt(ctx, g, v);
            let cont = poly_gcd_raw(ctx, &cf, &cg);
            let prim = primitive_prs(ctx, pf, pg, v);
            ctx.mul(&cont, &prim)
        }
    }
}

/// Content and primitive part of `f` with respect to variable `v`:
/// `f = content * primitive`, content free of `v`.
fn content_wrt<R: CoeffRing>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    v: usize,
) -> (Polynomial<R>, Polynomial<R>) {
    let coeffs = ctx.coeffs_in(f, v);
    let mut cont = Polynomial::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        cont = poly_gcd_raw(ctx, &cont, c);
        if cont.is_constant() && !cont.is_zero() && ctx.ring.is_unit(&cont.terms[0].0) {
            break;
        }
    }
    cont = ctx.normalize_leading(&cont);
    let prim = ctx.exact_div(f, &cont).expect("content divides");
    (cont, prim)
}

fn primitive_prs<R: CoeffRing>(
    ctx: &RingCtx<R>,
    mut f: Polynomial<R>,
    mut g: Polynomial<R>,
    v: usize,
) -> Polynomial<R> {
    if f.deg_in(v) < g.deg_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(ctx, &f, &g, v);
        f = g;
        g = match r {
            Some(r) if !r.is_zero() => content_wrt(ctx, &r, v).1,
            _ => Polynomial::zero(),
        };
    }
    content_wrt(ctx, &f, v).1
}

/// Pseudo-remainder of `f` by `g` in variable `v`:
/// `lc_v(g)^k * f = q*g + r` with `deg_v(r) < deg_v(g)`.
fn pseudo_rem<R: CoeffRing>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    g: &Polynomial<R>,
    v: usize,
) -> Option<Polynomial<R>> {
    let dg = g.deg_in(v);
    let gcoeffs = ctx.coeffs_in(g, v);
    let glc = gcoeffs.last().unwrap().clone();
    let mut r = f.clone();
    let mut steps = 0;
    while !r.is_zero() && r.deg_in(v) >= dg {
        let dr = r.deg_in(v);
        let rlc = ctx.coeffs_in(&r, v).pop().unwrap();
        let shift = Polynomial::<R> {
            terms: vec![(
                ctx.ring.one(),
                PowerProduct::var(ctx.nvars(), v, dr - dg),
            )],
        };
        // r := glc*r - rlc * x_v^(dr-dg) * g
        r = ctx.sub(&ctx.mul(&glc, &r), &ctx.mul(&ctx.mul(&rlc, &shift), g));
        steps += 1;
        if steps > 10_000 {
            return None;
        }
    }
    Some(r)
}

/// `lcm(f, g) = f*g / gcd(f, g)`, canonically normalized.
pub fn poly_lcm<R: CoeffRing>(
    ctx: &RingCtx<R>,
    f: &Polynomial<R>,
    g: &Polynomial<R>,
) -> Polynomial<R> {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    let d = poly_gcd(ctx, f, g);
    let q = ctx.exact_div(g, &d).expect("gcd divides");
    ctx.normalize_leading(&ctx.mul(f, &q))
}

/// Integer content (gcd of coefficients, >= 0) of a Z-polynomial.
pub fn int_content(f: &Polynomial<IntRing>) -> BigInt {
    let mut c = BigInt::zero();
    for (coef, _) in &f.terms {
        c = num_integer::gcd(c, coef.clone());
        if c.is_one() {
            break;
        }
    }
    c
}

/// Largest `nu` with `p^nu` dividing every coefficient (0 for the zero poly).
pub fn p_content(f: &Polynomial<IntRing>, p: &BigInt) -> u32 {
    use num_integer::Integer as _;
    if f.is_zero() {
        return 0;
    }
    let mut nu = u32::MAX;
    for (c, _) in &f.terms {
        let mut v = 0u32;
        let mut cc = c.clone();
        while v < nu {
            let (q, r) = cc.div_rem(p);
            if r.is_zero() {
                cc = q;
                v += 1;
            } else {
                break;
            }
        }
        nu = nu.min(v);
        if nu == 0 {
            break;
        }
    }
    nu
}

/// Coefficientwise reduction Z[x] -> F_p[x].
pub fn map_to_prime_field(
    ctx: &RingCtx<IntRing>,
    f: &Polynomial<IntRing>,
    fp: &PrimeField,
) -> Polynomial<PrimeField> {
    let fctx = RingCtx::new(*fp, ctx.vars.clone(), ctx.order.clone());
    let terms = f
        .terms
        .iter()
        .map(|(c, m)| (fp.reduce_bigint(c), m.clone()))
        .collect();
    fctx.from_terms(terms)
}

/// Embedding Z[x] -> Q[x].
pub fn map_to_rationals(f: &Polynomial<IntRing>) -> Polynomial<RatField> {
    Polynomial {
        terms: f
            .terms
            .iter()
            .map(|(c, m)| (BigRational::from_integer(c.clone()), m.clone()))
            .collect(),
    }
}

/// Clears denominators and removes integer content: a primitive Z-polynomial
/// with positive leading coefficient generating the same Q-ideal.
pub fn rational_to_primitive_int(
    qctx: &RingCtx<RatField>,
    f: &Polynomial<RatField>,
) -> Polynomial<IntRing> {
    if f.is_zero() {
        return Polynomial::zero();
    }
    let mut den = BigInt::one();
    for (c, _) in &f.terms {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let terms: Vec<(BigInt, PowerProduct)> = f
        .terms
        .iter()
        .map(|(c, m)| ((c * BigRational::from_integer(den.clone())).to_integer(), m.clone()))
        .collect();
    let zctx = RingCtx::new(IntRing, qctx.vars.clone(), qctx.order.clone());
    let g = zctx.from_terms(terms);
    let cont = int_content(&g);
    let g = zctx
        .exact_div(&g, &zctx.constant(cont))
        .expect("content divides");
    zctx.normalize_leading(&g)
}
