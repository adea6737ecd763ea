//! Sparse polynomials over a pair: convolution arithmetic, null roots, the
//! three divisibility relations, factor-shift expansions, derivatives and
//! double roots, the collapse onto functions, and null polynomial
//! identities in noncommuting variables.

use crate::pairs::{dag, leq, Pair, RelKind};
use crate::{KernelError, Result};
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

/// Monomial key: single exponent, exponent vector, or noncommutative word.
pub trait MonKey: Clone + Ord + Eq + Hash + Debug {
    fn unit() -> Self;
    fn combine(&self, other: &Self) -> Self;
    fn total_deg(&self) -> u32;
}

impl MonKey for u32 {
    fn unit() -> Self {
        0
    }
    fn combine(&self, other: &Self) -> Self {
        self + other
    }
    fn total_deg(&self) -> u32 {
        *self
    }
}

/// Exponent vector for finitely many commuting variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multi(pub Vec<u32>);

impl MonKey for Multi {
    fn unit() -> Self {
        Multi(vec![])
    }
    fn combine(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Multi(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
    fn total_deg(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Word over variable indices; multiplication is concatenation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl MonKey for Word {
    fn unit() -> Self {
        Word(vec![])
    }
    fn combine(&self, other: &Self) -> Self {
        let mut w = self.0.clone();
        w.extend(&other.0);
        Word(w)
    }
    fn total_deg(&self) -> u32 {
        self.0.len() as u32
    }
}

/// Finitely supported coefficient map; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<K: MonKey, T: Clone + Eq> {
    pub terms: BTreeMap<K, T>,
}

impl<K: MonKey, T: Clone + Eq> Default for Poly<K, T> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

pub type UPoly<T> = Poly<u32, T>;

impl<K: MonKey, T: Clone + Eq> Poly<K, T> {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.total_deg()).max().unwrap_or(0)
    }
}

pub fn constant<K: MonKey, P: Pair>(p: &P, c: P::El) -> Poly<K, P::El> {
    let mut t = BTreeMap::new();
    if c != p.zero() {
        t.insert(K::unit(), c);
    }
    Poly { terms: t }
}

pub fn monomial<K: MonKey, P: Pair>(p: &P, k: K, c: P::El) -> Poly<K, P::El> {
    let mut t = BTreeMap::new();
    if c != p.zero() {
        t.insert(k, c);
    }
    Poly { terms: t }
}

pub fn from_terms<K: MonKey, P: Pair>(p: &P, terms: Vec<(K, P::El)>) -> Poly<K, P::El> {
    let mut out: Poly<K, P::El> = Poly::zero();
    for (k, c) in terms {
        out = poly_add(p, &out, &monomial(p, k, c));
    }
    out
}

pub fn coeff<K: MonKey, P: Pair>(p: &P, f: &Poly<K, P::El>, k: &K) -> P::El {
    f.terms.get(k).cloned().unwrap_or_else(|| p.zero())
}

pub fn poly_add<K: MonKey, P: Pair>(
    p: &P,
    f: &Poly<K, P::El>,
    g: &Poly<K, P::El>,
) -> Poly<K, P::El> {
    let mut terms = f.terms.clone();
    for (k, c) in &g.terms {
        let merged = match terms.get(k) {
            None => c.clone(),
            Some(prev) => p.add(prev, c),
        };
        if merged == p.zero() {
            terms.remove(k);
        } else {
            terms.insert(k.clone(), merged);
        }
    }
    Poly { terms }
}

/// Convolution product `fg: s -> sum over u+v = s of f(u) g(v)`.
pub fn poly_mul<K: MonKey, P: Pair>(
    p: &P,
    f: &Poly<K, P::El>,
    g: &Poly<K, P::El>,
) -> Poly<K, P::El> {
    let mut acc: BTreeMap<K, P::El> = BTreeMap::new();
    for (k1, c1) in &f.terms {
        for (k2, c2) in &g.terms {
            let k = k1.combine(k2);
            let c = p.mul(c1, c2);
            let merged = match acc.get(&k) {
                None => c,
                Some(prev) => p.add(prev, &c),
            };
            acc.insert(k, merged);
        }
    }
    acc.retain(|_, c| *c != p.zero());
    Poly { terms: acc }
}

/// Scale by a ring element on the left.
pub fn poly_scale<K: MonKey, P: Pair>(p: &P, c: &P::El, f: &Poly<K, P::El>) -> Poly<K, P::El> {
    let mut terms = BTreeMap::new();
    for (k, x) in &f.terms {
        let v = p.mul(c, x);
        if v != p.zero() {
            terms.insert(k.clone(), v);
        }
    }
    Poly { terms }
}

/// All stored coefficients tangible (and at least one term).
pub fn is_tangible_poly<K: MonKey, P: Pair>(p: &P, f: &Poly<K, P::El>) -> bool {
    !f.terms.is_empty() && f.terms.values().all(|c| p.is_tangible(c))
}

pub fn is_monic<P: Pair>(p: &P, f: &UPoly<P::El>) -> bool {
    f.terms
        .iter()
        .next_back()
        .map(|(_, c)| *c == p.one())
        .unwrap_or(false)
}

pub fn pow<P: Pair>(p: &P, b: &P::El, n: u32) -> P::El {
    let mut acc = p.one();
    for _ in 0..n {
        acc = p.mul(&acc, b);
    }
    acc
}

/// Evaluate in canonical ascending-exponent order; on distributive carriers
/// the order is provably irrelevant and tested as such.
pub fn eval<P: Pair>(p: &P, f: &UPoly<P::El>, b: &P::El) -> P::El {
    let mut acc = p.zero();
    let mut power = p.one();
    let mut at = 0u32;
    for (k, c) in &f.terms {
        while at < *k {
            power = p.mul(&power, b);
            at += 1;
        }
        acc = p.add(&acc, &p.mul(c, &power));
    }
    acc
}

/// Evaluation in descending order, used to witness order-independence.
pub fn eval_desc<P: Pair>(p: &P, f: &UPoly<P::El>, b: &P::El) -> P::El {
    let mut acc = p.zero();
    for (k, c) in f.terms.iter().rev() {
        acc = p.add(&acc, &p.mul(c, &pow(p, b, *k)));
    }
    acc
}

pub fn eval_multi<P: Pair>(p: &P, f: &Poly<Multi, P::El>, at: &[P::El]) -> P::El {
    let mut acc = p.zero();
    for (k, c) in &f.terms {
        let mut m = c.clone();
        for (i, e) in k.0.iter().enumerate() {
            m = p.mul(&m, &pow(p, &at[i], *e));
        }
        acc = p.add(&acc, &m);
    }
    acc
}

pub fn eval_word<P: Pair>(p: &P, f: &Poly<Word, P::El>, at: &[P::El]) -> P::El {
    let mut acc = p.zero();
    for (k, c) in &f.terms {
        let mut m = c.clone();
        for v in &k.0 {
            m = p.mul(&m, &at[*v as usize]);
        }
        acc = p.add(&acc, &m);
    }
    acc
}

/// Null root: evaluation lands in the null part.
pub fn is_root<P: Pair>(p: &P, f: &UPoly<P::El>, b: &P::El) -> bool {
    p.is_null(&eval(p, f, b))
}

/// Coefficientwise comparison under `rel` over the union of supports.
pub fn poly_leq<K: MonKey, P: Pair>(
    p: &P,
    rel: RelKind,
    f: &Poly<K, P::El>,
    g: &Poly<K, P::El>,
) -> Result<bool> {
    let mut keys: Vec<&K> = f.terms.keys().chain(g.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    for k in keys {
        if !leq(p, rel, &coeff(p, f, k), &coeff(p, g, k))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn poly_is_null<K: MonKey, P: Pair>(p: &P, f: &Poly<K, P::El>) -> bool {
    f.terms.values().all(|c| p.is_null(c))
}

/// Enumerate tangible polynomials of degree at most `deg` with coefficients
/// drawn from the palette (or absent).
pub fn tangible_polys<P: Pair>(p: &P, deg: u32, palette: &[P::El]) -> Vec<UPoly<P::El>> {
    let tang: Vec<P::El> = palette
        .iter()
        .filter(|c| p.is_tangible(c))
        .cloned()
        .collect();
    let mut out: Vec<UPoly<P::El>> = vec![Poly::zero()];
    for k in 0..=deg {
        let mut next = Vec::new();
        for f in &out {
            next.push(f.clone());
            for c in &tang {
                let mut f2 = f.clone();
                f2.terms.insert(k, c.clone());
                next.push(f2);
            }
        }
        out = next;
    }
    out.retain(|f| !f.is_zero());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivKind {
    /// `f2 = g f1` for tangible `g`.
    Plain,
    /// `f2 <= g f1` for tangible `g`.
    Surpassed,
    /// `f2 + g f1` null for tangible `g`.
    Null,
}

/// Search a tangible witness `g` of degree at most `deg_bound` for the
/// requested divisibility of `f2` by `f1`. `None` means none within bound.
pub fn divides<P: Pair>(
    p: &P,
    kind: DivKind,
    rel: RelKind,
    f1: &UPoly<P::El>,
    f2: &UPoly<P::El>,
    deg_bound: u32,
) -> Result<Option<UPoly<P::El>>> {
    let palette = p.search_palette();
    for g in tangible_polys(p, deg_bound, &palette) {
        let gf1 = poly_mul(p, &g, f1);
        let ok = match kind {
            DivKind::Plain => gf1 == *f2,
            DivKind::Surpassed => poly_leq(p, rel, f2, &gf1)?,
            DivKind::Null => poly_is_null(p, &poly_add(p, f2, &gf1)),
        };
        if ok {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// The factor shift `g_{b,n} = sum_{j=0}^{n-1} b^(n-1-j) lambda^j`.
pub fn g_shift<P: Pair>(p: &P, b: &P::El, n: u32) -> UPoly<P::El> {
    let mut f = Poly::zero();
    for j in 0..n {
        f = poly_add(p, &f, &monomial(p, j, pow(p, b, n - 1 - j)));
    }
    f
}

/// `lambda + b^dag` as a polynomial.
pub fn lambda_minus<P: Pair>(p: &P, b: &P::El) -> Result<UPoly<P::El>> {
    Ok(poly_add(
        p,
        &monomial(p, 1, p.one()),
        &constant(p, dag(p, b)?),
    ))
}

/// Exact expansion `(lambda + b^dag) g_{b,n} = lambda^n + (b^n)^dag +
/// sum_{j=1}^{n-1} (b^j + (b^j)^dag) lambda^(n-j)`.
pub fn factor_identity_check<P: Pair>(p: &P, b: &P::El, n: u32) -> Result<bool> {
    let lhs = poly_mul(p, &lambda_minus(p, b)?, &g_shift(p, b, n));
    let mut rhs = monomial(p, n, p.one());
    rhs = poly_add(p, &rhs, &constant(p, dag(p, &pow(p, b, n))?));
    for j in 1..n {
        let bj = pow(p, b, j);
        let c = p.add(&bj, &dag(p, &bj)?);
        rhs = poly_add(p, &rhs, &monomial(p, n - j, c));
    }
    Ok(lhs == rhs)
}

/// The surpassing half of the factor shift: `lambda^n + (b^n)^dag` is
/// surpassed by the expansion.
pub fn factor_surpass_check<P: Pair>(p: &P, rel: RelKind, b: &P::El, n: u32) -> Result<bool> {
    let lhs = poly_add(
        p,
        &monomial(p, n, p.one()),
        &constant(p, dag(p, &pow(p, b, n))?),
    );
    let rhs = poly_mul(p, &lambda_minus(p, b)?, &g_shift(p, b, n));
    poly_leq(p, rel, &lhs, &rhs)
}

/// Outcome of the factor-sum expansion of a whole polynomial against the
/// combined shift `g = sum alpha_j g_{b,j}`.
#[derive(Debug, Clone)]
pub struct FactorSumReport {
    /// The exact identity with the constant-term correction:
    /// `(lambda + b^dag) g + a_0^circ = f + f(b)^dag + corrections`.
    pub corrected_exact: bool,
    /// The looser claim `f + f(b)^dag <= (lambda + b^dag) g` exactly as
    /// stated; fails whenever the constant coefficient is tangible.
    pub stated_surpass: bool,
    /// `f <= (lambda + b^dag) g` whenever `b` is a root of `f`.
    pub root_surpass: Option<bool>,
}

/// Machine-check the factor-sum expansion for `f` at `b`.
pub fn factor_sum_check<P: Pair>(
    p: &P,
    rel: RelKind,
    f: &UPoly<P::El>,
    b: &P::El,
) -> Result<FactorSumReport> {
    let mut g = Poly::zero();
    for (j, c) in &f.terms {
        if *j >= 1 {
            g = poly_add(p, &g, &poly_scale(p, c, &g_shift(p, b, *j)));
        }
    }
    let lhs = poly_mul(p, &lambda_minus(p, b)?, &g);
    let a0 = coeff(p, f, &0);
    let a0_circ = p.add(&a0, &dag(p, &a0)?);
    let lhs_corrected = poly_add(p, &lhs, &constant(p, a0_circ));

    let fb = eval(p, f, b);
    let mut rhs = poly_add(p, f, &constant(p, dag(p, &fb)?));
    for (i, ci) in &f.terms {
        for j in 1..*i {
            let bj = pow(p, b, j);
            let corr = p.mul(ci, &p.add(&bj, &dag(p, &bj)?));
            rhs = poly_add(p, &rhs, &monomial(p, i - j, corr));
        }
    }
    let corrected_exact = lhs_corrected == rhs;
    let stated_surpass = poly_leq(p, rel, &poly_add(p, f, &constant(p, dag(p, &fb)?)), &lhs)?;
    let root_surpass = if p.is_null(&fb) {
        Some(poly_leq(p, rel, f, &lhs)?)
    } else {
        None
    };
    Ok(FactorSumReport {
        corrected_exact,
        stated_surpass,
        root_surpass,
    })
}

/// `a` is a surpassed root of `f` when `f <= (lambda (-) a) g` for some
/// tangible `g` of degree `deg f - 1`.
pub fn is_preceq_root<P: Pair>(
    p: &P,
    rel: RelKind,
    f: &UPoly<P::El>,
    a: &P::El,
) -> Result<Option<UPoly<P::El>>> {
    if f.is_zero() {
        return Ok(None);
    }
    let factor = lambda_minus(p, a)?;
    let deg = f.degree().saturating_sub(1);
    let palette = p.search_palette();
    for g in tangible_polys(p, deg, &palette) {
        if poly_leq(p, rel, f, &poly_mul(p, &factor, &g))? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Count distinct tangible surpassed roots; the bound lemma caps this by
/// the degree of a monic polynomial over a null-prime pair.
pub fn count_preceq_roots<P: Pair>(p: &P, rel: RelKind, f: &UPoly<P::El>) -> Result<usize> {
    let mut n = 0;
    for a in p.sample() {
        if p.is_tangible(&a) && is_preceq_root(p, rel, f, &a)?.is_some() {
            n += 1;
        }
    }
    Ok(n)
}

/// Formal derivative `sum i alpha_i lambda^(i-1)`, with `i alpha_i` the
/// i-fold sum.
pub fn derivative<P: Pair>(p: &P, f: &UPoly<P::El>) -> UPoly<P::El> {
    let mut out = Poly::zero();
    for (i, c) in &f.terms {
        if *i == 0 {
            continue;
        }
        let mut ic = p.zero();
        for _ in 0..*i {
            ic = p.add(&ic, c);
        }
        out = poly_add(p, &out, &monomial(p, i - 1, ic));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleRootVariant {
    /// `(lambda (-) a)^2` surpass-divides `f`.
    SquareDivides,
    /// `f (-) (lambda (-) a) g` is null for a tangible `g` with `a` a
    /// surpassed root of `g`.
    Deflation,
    /// `a` is a surpassed root of both `f` and its derivative.
    WithDerivative,
}

pub fn double_root<P: Pair>(
    p: &P,
    rel: RelKind,
    f: &UPoly<P::El>,
    a: &P::El,
    variant: DoubleRootVariant,
) -> Result<bool> {
    let factor = lambda_minus(p, a)?;
    match variant {
        DoubleRootVariant::SquareDivides => {
            if f.degree() < 2 {
                return Ok(false);
            }
            let sq = poly_mul(p, &factor, &factor);
            let deg = f.degree() - 2;
            let palette = p.search_palette();
            for h in tangible_polys(p, deg, &palette) {
                if poly_leq(p, rel, f, &poly_mul(p, &sq, &h))? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        DoubleRootVariant::Deflation => {
            if f.degree() < 1 {
                return Ok(false);
            }
            let deg = f.degree() - 1;
            let palette = p.search_palette();
            for g in tangible_polys(p, deg, &palette) {
                let prod = poly_mul(p, &factor, &g);
                let dag_prod = poly_scale(p, &dag(p, &p.one())?, &prod);
                if poly_is_null(p, &poly_add(p, f, &dag_prod))
                    && is_preceq_root(p, rel, &g, a)?.is_some()
                {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        DoubleRootVariant::WithDerivative => Ok(is_preceq_root(p, rel, f, a)?.is_some()
            && is_preceq_root(p, rel, &derivative(p, f), a)?.is_some()),
    }
}

/// Pointwise table of a polynomial over the carrier or declared sample.
pub fn psi_to_function<P: Pair>(p: &P, f: &UPoly<P::El>) -> Vec<(P::El, P::El)> {
    p.sample()
        .into_iter()
        .map(|b| (b.clone(), eval(p, f, &b)))
        .collect()
}

pub fn function_equal<P: Pair>(p: &P, f: &UPoly<P::El>, g: &UPoly<P::El>) -> bool {
    p.sample().iter().all(|b| eval(p, f, b) == eval(p, g, b))
}

/// Exhaustive null-identity check of a word polynomial over an enumerable
/// carrier; returns the first counterwitness.
pub fn a0_pi_check<P: Pair>(p: &P, f: &Poly<Word, P::El>) -> Result<Option<Vec<P::El>>> {
    let els = p.elements().ok_or_else(|| KernelError::Undecidable {
        instance: p.name().to_string(),
        needed: "enumerable".into(),
    })?;
    let nvars = f
        .terms
        .keys()
        .flat_map(|w| w.0.iter())
        .map(|v| *v as usize + 1)
        .max()
        .unwrap_or(0);
    let mut tuple = vec![0usize; nvars];
    loop {
        let at: Vec<P::El> = tuple.iter().map(|i| els[*i].clone()).collect();
        if !p.is_null(&eval_word(p, f, &at)) {
            return Ok(Some(at));
        }
        let mut pos = 0;
        loop {
            if pos == nvars {
                return Ok(None);
            }
            tuple[pos] += 1;
            if tuple[pos] < els.len() {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// The univariate polynomial pair over a base pair: nulls are the
/// null-coefficient polynomials, tangibles the tangible-coefficient ones.
/// Symbolic by nature; used as the computational carrier for determinant
/// work over polynomial entries.
#[derive(Debug, Clone)]
pub struct PolyPair<P: Pair + Clone> {
    pub base: P,
    name: String,
}

impl<P: Pair + Clone> PolyPair<P> {
    pub fn new(base: P) -> Self {
        let name = format!("poly-{}", base.name());
        PolyPair { base, name }
    }
}

impl<P: Pair + Clone> Pair for PolyPair<P> {
    type El = UPoly<P::El>;

    fn name(&self) -> &str {
        &self.name
    }
    fn zero(&self) -> Self::El {
        Poly::zero()
    }
    fn one(&self) -> Self::El {
        constant(&self.base, self.base.one())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        poly_add(&self.base, a, b)
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        poly_mul(&self.base, a, b)
    }
    fn is_tangible(&self, a: &Self::El) -> bool {
        is_tangible_poly(&self.base, a)
    }
    fn is_null(&self, a: &Self::El) -> bool {
        poly_is_null(&self.base, a)
    }
    fn dag_unit(&self) -> Option<Self::El> {
        self.base.dag_unit().map(|d| constant(&self.base, d))
    }
    fn caps(&self) -> crate::pairs::Caps {
        crate::pairs::Caps::symbolic(false)
    }
    fn elements(&self) -> Option<Vec<Self::El>> {
        None
    }
    fn sample(&self) -> Vec<Self::El> {
        let mut out: Vec<Self::El> = self
            .base
            .sample()
            .into_iter()
            .map(|c| constant(&self.base, c))
            .collect();
        out.push(monomial(&self.base, 1, self.base.one()));
        out
    }
    fn el_name(&self, a: &Self::El) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.terms
            .iter()
            .rev()
            .map(|(k, c)| match k {
                0 => self.base.el_name(c),
                1 => format!("{}*l", self.base.el_name(c)),
                _ => format!("{}*l^{}", self.base.el_name(c), k),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
    fn parse_el(&self, s: &str) -> Option<Self::El> {
        parse_upoly(&self.base, s).ok()
    }
}

/// Parse a univariate literal like `3*l^2 + 9*l^4 - 2`, resolving
/// coefficient names through the instance; `-` scales the following term by
/// the negation witness.
pub fn parse_upoly<P: Pair>(p: &P, s: &str) -> Result<UPoly<P::El>> {
    let terms = tokenize_terms(s)?;
    let mut out = Poly::zero();
    for (negated, body) in terms {
        let (c, k) = parse_term(p, &body, "l")?;
        let c = apply_sign(p, c, negated)?;
        out = poly_add(p, &out, &monomial(p, k, c));
    }
    Ok(out)
}

/// Parse a noncommutative literal like `X*Y - Y*X`.
pub fn parse_word_poly<P: Pair>(p: &P, s: &str) -> Result<Poly<Word, P::El>> {
    let terms = tokenize_terms(s)?;
    let mut out = Poly::zero();
    for (negated, body) in terms {
        let mut c = p.one();
        let mut w = Vec::new();
        for factor in body.split('*') {
            let f = factor.trim();
            if f.is_empty() {
                continue;
            }
            let (base, exp) = split_power(f)?;
            if base.len() == 1 && base.chars().all(|ch| ch.is_ascii_uppercase()) {
                let v = base.chars().next().unwrap() as u8 - b'X';
                for _ in 0..exp {
                    w.push(v);
                }
            } else {
                let e = p.parse_el(base).ok_or_else(|| KernelError::Parse {
                    location: base.into(),
                    message: "unknown element".into(),
                })?;
                for _ in 0..exp {
                    c = p.mul(&c, &e);
                }
            }
        }
        let c = apply_sign(p, c, negated)?;
        out = poly_add(p, &out, &monomial(p, Word(w), c));
    }
    Ok(out)
}

fn apply_sign<P: Pair>(p: &P, c: P::El, negated: bool) -> Result<P::El> {
    if !negated {
        return Ok(c);
    }
    dag(p, &c).map_err(|_| {
        KernelError::Unsupported(format!("`-` needs a negation witness in `{}`", p.name()))
    })
}

fn tokenize_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' if !cur.trim().is_empty() => {
                terms.push((neg, cur.trim().to_string()));
                cur = String::new();
                neg = ch == '-';
            }
            '-' if cur.trim().is_empty() => {
                neg = true;
            }
            '+' if cur.trim().is_empty() => {}
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        terms.push((neg, cur.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(KernelError::Parse {
            location: s.into(),
            message: "empty polynomial".into(),
        });
    }
    Ok(terms)
}

fn split_power(f: &str) -> Result<(&str, u32)> {
    match f.split_once('^') {
        None => Ok((f, 1)),
        Some((b, e)) => Ok((
            b.trim(),
            e.trim().parse().map_err(|_| KernelError::Parse {
                location: f.into(),
                message: "bad exponent".into(),
            })?,
        )),
    }
}

fn parse_term<P: Pair>(p: &P, body: &str, var: &str) -> Result<(P::El, u32)> {
    let mut c = p.one();
    let mut k = 0u32;
    for factor in body.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            continue;
        }
        let (base, exp) = split_power(f)?;
        if base == var {
            k += exp;
        } else {
            let e = p.parse_el(base).ok_or_else(|| KernelError::Parse {
                location: base.into(),
                message: "unknown element".into(),
            })?;
            for _ in 0..exp {
                c = p.mul(&c, &e);
            }
        }
    }
    Ok((c, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{self, NatSr};
    use crate::pairs::RelKind;

    fn stb() -> crate::pairs::FinitePair {
        instances::supertropical_boolean()
    }

    #[test]
    fn convolution_over_supertropical_boolean() {
        let p = stb();
        let one = p.one();
        let f = from_terms(&p, vec![(1u32, one), (0, one)]); // l + 1
        let sq = poly_mul(&p, &f, &f);
        let g = p.parse_el("mu1").unwrap();
        // (l+1)^2 = l^2 + mu1*l + 1: only the middle coefficient is a sum.
        assert_eq!(sq, from_terms(&p, vec![(2, one), (1, g), (0, one)]));
        assert_eq!(poly_mul(&p, &f, &constant(&p, one)), f);
    }

    #[test]
    fn classical_convolution() {
        let p = NatSr;
        let f = from_terms(&p, vec![(1u32, 1), (0, 1)]);
        let g = from_terms(&p, vec![(1u32, 1), (0, 2)]);
        assert_eq!(
            poly_mul(&p, &f, &g),
            from_terms(&p, vec![(2, 1), (1, 3), (0, 2)])
        );
    }

    #[test]
    fn roots_over_supertropical_boolean() {
        let p = stb();
        let one = p.one();
        let f = from_terms(&p, vec![(1u32, one), (0, one)]); // l + 1
        assert!(is_root(&p, &f, &one)); // 1 + 1 ghosts
        let l = from_terms(&p, vec![(1u32, one)]);
        assert!(is_root(&p, &l, &p.zero()));
    }

    #[test]
    fn factor_shift_identities() {
        let p = stb();
        for b in p.elements().unwrap() {
            for n in 1..=4 {
                assert!(factor_identity_check(&p, &b, n).unwrap(), "b={b} n={n}");
                assert!(factor_surpass_check(&p, RelKind::Leq0, &b, n).unwrap());
            }
        }
        // n = 1 reads (l + b^dag) = l + b^dag.
        let one = p.one();
        assert_eq!(g_shift(&p, &one, 1), constant(&p, one));
    }

    #[test]
    fn example_divisibility_witness() {
        let p = stb();
        let one = p.one();
        // l + 1^dag surpass-divides l^2 + (1^2)^dag with witness l + 1.
        let f1 = lambda_minus(&p, &one).unwrap();
        let f2 = poly_add(
            &p,
            &monomial(&p, 2, one),
            &constant(&p, crate::pairs::dag(&p, &one).unwrap()),
        );
        let g = divides(&p, DivKind::Surpassed, RelKind::Leq0, &f1, &f2, 1).unwrap();
        assert!(g.is_some());
        // The dagger-scaled surpass witness settles null divisibility.
        let g = poly_scale(&p, &crate::pairs::dag(&p, &p.one()).unwrap(), &g.unwrap());
        let gf1 = poly_mul(&p, &g, &f1);
        assert!(poly_is_null(&p, &poly_add(&p, &f2, &gf1)));
        // f | f with witness 1.
        let w = divides(&p, DivKind::Plain, RelKind::Leq0, &f2, &f2, 0).unwrap();
        assert_eq!(w.unwrap(), constant(&p, p.one()));
    }

    #[test]
    fn preceq_root_examples() {
        let p = stb();
        let one = p.one();
        let f = from_terms(&p, vec![(1u32, one), (0, one)]);
        let w = is_preceq_root(&p, RelKind::Leq0, &f, &one).unwrap();
        assert!(w.is_some());
        assert!(is_root(&p, &f, &one));
    }

    #[test]
    fn derivative_and_product_rule() {
        let p = stb();
        let one = p.one();
        assert!(derivative(&p, &constant(&p, one)).is_zero());
        // ((l (-) a) g)' = g + (l (-) a) g' symbolically.
        let factor = lambda_minus(&p, &one).unwrap();
        for g in tangible_polys(&p, 2, &p.search_palette()) {
            let lhs = derivative(&p, &poly_mul(&p, &factor, &g));
            let rhs = poly_add(&p, &g, &poly_mul(&p, &factor, &derivative(&p, &g)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn psi_is_additive_and_multiplicative() {
        // Evaluation respects both operations on distributive carriers, so
        // the collapse onto functions is a semiring map.
        let p = stb();
        let fam = tangible_polys(&p, 2, &p.search_palette());
        for f in fam.iter().take(6) {
            for g in fam.iter().take(6) {
                for b in p.elements().unwrap() {
                    assert_eq!(
                        eval(&p, &poly_add(&p, f, g), &b),
                        p.add(&eval(&p, f, &b), &eval(&p, g, &b))
                    );
                    assert_eq!(
                        eval(&p, &poly_mul(&p, f, g), &b),
                        p.mul(&eval(&p, f, &b), &eval(&p, g, &b))
                    );
                }
            }
        }
    }

    #[test]
    fn psi_collapse_on_max_plus() {
        let p = instances::MaxPlusQ;
        let one = p.one();
        let f = from_terms(
            &p,
            vec![(3u32, one.clone()), (2, one.clone()), (1, one.clone())],
        );
        let g = from_terms(&p, vec![(3u32, one.clone()), (1, one)]);
        assert_ne!(f, g);
        assert!(function_equal(&p, &f, &g));
        assert!(!function_equal(
            &p,
            &constant(&p, p.parse_el("1").unwrap()),
            &constant(&p, p.parse_el("2").unwrap())
        ));
    }

    #[test]
    fn fermat_collapse_on_f3() {
        let p = instances::classical_fp(3).unwrap();
        let one = p.one();
        let f = from_terms(&p, vec![(3u32, one)]);
        let g = from_terms(&p, vec![(1u32, one)]);
        assert!(function_equal(&p, &f, &g));
    }

    #[test]
    fn eval_order_irrelevant_on_distributive_carriers() {
        let p = stb();
        for f in tangible_polys(&p, 2, &p.search_palette()) {
            for b in p.elements().unwrap() {
                assert_eq!(eval(&p, &f, &b), eval_desc(&p, &f, &b));
            }
        }
    }

    #[test]
    fn word_identities() {
        let p = stb();
        // XY + (YX)^dag is a null identity on a commutative carrier.
        let f = parse_word_poly(&p, "X*Y - Y*X").unwrap();
        assert!(a0_pi_check(&p, &f).unwrap().is_none());
        // The zero polynomial is trivially a null identity.
        let z: Poly<Word, u16> = Poly::zero();
        assert!(a0_pi_check(&p, &z).unwrap().is_none());
    }

    #[test]
    fn parse_univariate() {
        let p = instances::MaxPlusQ;
        let f = parse_upoly(&p, "3*l^2 + 9*l^4").unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(coeff(&p, &f, &2), p.parse_el("3").unwrap());
        let sb = stb();
        let g = parse_upoly(&sb, "l^2 + mu1*l + 1").unwrap();
        assert_eq!(g.degree(), 2);
    }
}
