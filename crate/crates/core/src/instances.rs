//! Constructors for the concrete pairs the kernel ships with, and the
//! registry that the CLI and suites address them through.

use crate::hyper;
use crate::pairs::{materialize, Caps, Doubled, FinitePair, Pair, RelKind};
use crate::phase::PhasePair;
use crate::puiseux::PuiseuxPair;
use crate::{KernelError, Result};
use num_rational::Rational64;
use num_traits::Zero;

type Rat = Rational64;

// ---------------------------------------------------------------------------
// Finite constructors
// ---------------------------------------------------------------------------

fn build_tables<F, G>(n: usize, add: F, mul: G) -> (Vec<u16>, Vec<u16>)
where
    F: Fn(usize, usize) -> usize,
    G: Fn(usize, usize) -> usize,
{
    let mut a = vec![0u16; n * n];
    let mut m = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = add(i, j) as u16;
            m[i * n + j] = mul(i, j) as u16;
        }
    }
    (a, m)
}

/// Naturals truncated at `n`: both operations saturate. The registered pair
/// takes `T = {1}` and the null part `{0} u {2..n}` — the smallest additive
/// sub-semigroup containing `1 + 1` and every `b + b`, so the negation
/// witness exists for every `n`.
pub fn vandiver(n: usize) -> Result<FinitePair> {
    if n < 1 {
        return Err(KernelError::Invalid("vandiver index must be >= 1".into()));
    }
    let size = n + 1;
    let (add, mul) = build_tables(size, |i, j| (i + j).min(n), |i, j| (i * j).min(n));
    let names = (0..size).map(|i| i.to_string()).collect();
    let tangible = (0..size).map(|i| i == 1).collect();
    let null = (0..size).map(|i| i == 0 || i >= 2.min(n)).collect();
    FinitePair::from_tables(
        &format!("vandiver-{n}"),
        names,
        add,
        mul,
        tangible,
        null,
        0,
        1,
        Some(1),
        true,
    )
}

/// The two-element idempotent semifield `{0, 1}` with `1 + 1 = 1`, carrying
/// its only null part that admits a negation witness: the whole carrier.
pub fn boolean() -> FinitePair {
    let (add, mul) = build_tables(2, |i, j| i.max(j), |i, j| i * j);
    FinitePair::from_tables(
        "boolean",
        vec!["0".into(), "1".into()],
        add,
        mul,
        vec![false, true],
        vec![true, true],
        0,
        1,
        Some(1),
        true,
    )
    .expect("static tables")
}

/// Supertropical pair over a finite ghost chain: carrier
/// `{bot, 1, g0 < .. < gk}` with ghost products taken as maxima. Saturating
/// value sums would break the module laws, and the max within a chain is
/// the only finite ghost product compatible with them, which also forces a
/// trivial tangible monoid.
pub fn supertropical_chain(k: usize) -> FinitePair {
    // Index 0 = bot, 1 = the tangible unit, 2 + v = ghost of value v.
    let size = k + 3;
    let gval = |i: usize| i - 2; // ghosts only
    let value = |i: usize| match i {
        0 => None,
        1 => Some(0),
        g => Some(gval(g)),
    };
    let add = |i: usize, j: usize| -> usize {
        match (value(i), value(j)) {
            (None, _) => j,
            (_, None) => i,
            (Some(a), Some(b)) => {
                if a > b {
                    i
                } else if b > a {
                    j
                } else if i == j && i >= 2 {
                    i
                } else {
                    2 + a // tangible ties ghost out at the shared value
                }
            }
        }
    };
    let mul = |i: usize, j: usize| -> usize {
        match (i, j) {
            (0, _) | (_, 0) => 0,
            (1, x) | (x, 1) => x,
            (a, b) => a.max(b),
        }
    };
    let (at, mt) = build_tables(size, add, mul);
    let mut names = vec!["bot".to_string(), "1".to_string()];
    names.extend((0..=k).map(|v| format!("g{v}")));
    let tangible = (0..size).map(|i| i == 1).collect();
    let null = (0..size).map(|i| i != 1).collect();
    FinitePair::from_tables(
        &format!("supertropical-chain-{k}"),
        names,
        at,
        mt,
        tangible,
        null,
        0,
        1,
        Some(1),
        true,
    )
    .expect("static tables")
}

/// The three-element supertropical semiring `{0, 1, mu1}` with `1 + 1 = mu1`.
pub fn supertropical_boolean() -> FinitePair {
    let size = 3; // 0, 1, mu1
    let add = |i: usize, j: usize| match (i, j) {
        (0, x) | (x, 0) => x,
        (1, 1) => 2,
        _ => 2,
    };
    let mul = |i: usize, j: usize| match (i, j) {
        (0, _) | (_, 0) => 0,
        (1, 1) => 1,
        _ => 2,
    };
    let (at, mt) = build_tables(size, add, mul);
    FinitePair::from_tables(
        "supertropical-boolean",
        vec!["0".into(), "1".into(), "mu1".into()],
        at,
        mt,
        vec![false, true, false],
        vec![true, false, true],
        0,
        1,
        Some(1),
        true,
    )
    .expect("static tables")
}

/// The four-element pair `{0, 1, t, e}` in which every sum of tangibles is
/// the single null element `e`; shallow and null-bipotent by construction.
pub fn min_shallow_z2() -> FinitePair {
    // 0, 1, t, e with t*t = 1.
    let add = |i: usize, j: usize| match (i, j) {
        (0, x) | (x, 0) => x,
        _ => 3,
    };
    let mul = |i: usize, j: usize| match (i, j) {
        (0, _) | (_, 0) => 0,
        (1, x) | (x, 1) => x,
        (2, 2) => 1,
        _ => 3,
    };
    let (at, mt) = build_tables(4, add, mul);
    FinitePair::from_tables(
        "min-shallow-z2",
        vec!["0".into(), "1".into(), "t".into(), "e".into()],
        at,
        mt,
        vec![false, true, true, false],
        vec![true, false, false, true],
        0,
        1,
        Some(1),
        true,
    )
    .expect("static tables")
}

/// The prime field `F_p` packaged as a pair with null part `{0}`; tangibles
/// are the units and the negation witness is `p - 1`.
pub fn classical_fp(p: usize) -> Result<FinitePair> {
    if p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
        return Err(KernelError::Invalid(format!("{p} is not prime")));
    }
    let (add, mul) = build_tables(p, |i, j| (i + j) % p, |i, j| (i * j) % p);
    let names = (0..p).map(|i| i.to_string()).collect();
    let tangible = (0..p).map(|i| i != 0).collect();
    let null = (0..p).map(|i| i == 0).collect();
    FinitePair::from_tables(
        &format!("classical-f{p}"),
        names,
        add,
        mul,
        tangible,
        null,
        0,
        1,
        Some((p - 1) as u16),
        true,
    )
}

/// The doubled Boolean pair: carrier `B x B`, twist product, diagonal nulls.
pub fn doubled_boolean() -> FinitePair {
    let d = Doubled::new(boolean_semiring_for_doubling());
    materialize(&d, "doubled-boolean").expect("4-element carrier")
}

/// Boolean semiring with the plain tangible set `{1}` and trivial null part;
/// only used as a doubling base, never registered on its own.
fn boolean_semiring_for_doubling() -> FinitePair {
    let (add, mul) = build_tables(2, |i, j| i.max(j), |i, j| i * j);
    FinitePair::from_tables(
        "boolean-base",
        vec!["0".into(), "1".into()],
        add,
        mul,
        vec![false, true],
        vec![true, false],
        0,
        1,
        None,
        true,
    )
    .expect("static tables")
}

/// Tropical extension of a finite layer pair `L` by the rational value
/// line: carrier `(L \ {0}) x Q` plus a bottom. Distinct values keep the
/// dominant pair, ties add layers, products act componentwise. A finite
/// truncation of the values would break the module laws (saturated products
/// collide with value-dominant addition), so the extension is symbolic and
/// checks run on the declared sample.
#[derive(Debug, Clone)]
pub struct TropExt {
    layers: FinitePair,
    name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TEElem {
    Bot,
    At(u16, Rat),
}

impl TropExt {
    pub fn new(layers: FinitePair, name: &str) -> Result<Self> {
        let els: Vec<u16> = layers
            .elements()
            .unwrap()
            .into_iter()
            .filter(|e| *e != layers.zero())
            .collect();
        for a in &els {
            for b in &els {
                if layers.mul(a, b) == layers.zero() {
                    return Err(KernelError::Invalid(
                        "layer semiring has zero divisors".into(),
                    ));
                }
                if layers.add(a, b) == layers.zero() {
                    return Err(KernelError::Invalid(
                        "layer semiring is not zero-sum-free".into(),
                    ));
                }
            }
        }
        Ok(TropExt {
            layers,
            name: name.to_string(),
        })
    }

    pub fn layers(&self) -> &FinitePair {
        &self.layers
    }
}

impl Pair for TropExt {
    type El = TEElem;

    fn name(&self) -> &str {
        &self.name
    }
    fn zero(&self) -> TEElem {
        TEElem::Bot
    }
    fn one(&self) -> TEElem {
        TEElem::At(self.layers.one(), Rat::zero())
    }
    fn add(&self, a: &TEElem, b: &TEElem) -> TEElem {
        match (a, b) {
            (TEElem::Bot, x) | (x, TEElem::Bot) => x.clone(),
            (TEElem::At(l1, g1), TEElem::At(l2, g2)) => {
                if g1 > g2 {
                    a.clone()
                } else if g2 > g1 {
                    b.clone()
                } else {
                    TEElem::At(self.layers.add(l1, l2), *g1)
                }
            }
        }
    }
    fn mul(&self, a: &TEElem, b: &TEElem) -> TEElem {
        match (a, b) {
            (TEElem::At(l1, g1), TEElem::At(l2, g2)) => {
                TEElem::At(self.layers.mul(l1, l2), g1 + g2)
            }
            _ => TEElem::Bot,
        }
    }
    fn is_tangible(&self, a: &TEElem) -> bool {
        matches!(a, TEElem::At(l, _) if self.layers.is_tangible(l))
    }
    fn is_null(&self, a: &TEElem) -> bool {
        match a {
            TEElem::Bot => true,
            TEElem::At(l, _) => self.layers.is_null(l),
        }
    }
    fn dag_unit(&self) -> Option<TEElem> {
        self.layers.dag_unit().map(|d| TEElem::At(d, Rat::zero()))
    }
    fn caps(&self) -> Caps {
        let mut c = Caps::symbolic(true);
        if self.layers.caps().nd_only {
            c.distributive = false;
            c.nd_only = true;
        }
        c
    }
    fn elements(&self) -> Option<Vec<TEElem>> {
        None
    }
    fn sample(&self) -> Vec<TEElem> {
        let mut out = vec![TEElem::Bot];
        for l in self.layers.elements().unwrap() {
            if l == self.layers.zero() {
                continue;
            }
            for g in [0i64, 1, 2] {
                out.push(TEElem::At(l, Rat::new(g, 1)));
            }
        }
        out
    }
    fn leq0_decision(&self, a: &TEElem, b: &TEElem) -> Option<bool> {
        if a == b {
            return Some(true);
        }
        let null_layers: Vec<u16> = self
            .layers
            .elements()
            .unwrap()
            .into_iter()
            .filter(|l| *l != self.layers.zero() && self.layers.is_null(l))
            .collect();
        Some(match (a, b) {
            (TEElem::Bot, x) => self.is_null(x),
            (_, TEElem::Bot) => false,
            (TEElem::At(l1, g1), TEElem::At(l2, g2)) => {
                // b = a + (n, h) for a null layer n: either the null summand
                // dominates (h = g2 > g1, layer l2 null) or it ties with a.
                (g2 > g1 && null_layers.contains(l2))
                    || (g1 == g2 && null_layers.iter().any(|n| self.layers.add(l1, n) == *l2))
            }
        })
    }
    fn el_name(&self, a: &TEElem) -> String {
        match a {
            TEElem::Bot => "bot".into(),
            TEElem::At(l, g) => format!("{}@{}", self.layers.index_name(*l), rat_name(g)),
        }
    }
    fn parse_el(&self, s: &str) -> Option<TEElem> {
        if s == "bot" {
            return Some(TEElem::Bot);
        }
        let (l, g) = s.split_once('@')?;
        let le = self.layers.parse_el(l)?;
        if le == self.layers.zero() {
            return None;
        }
        Some(TEElem::At(le, parse_rat(g)?))
    }
    fn search_palette(&self) -> Vec<TEElem> {
        self.sample()
            .into_iter()
            .filter(|x| self.is_tangible(x))
            .collect()
    }
}

/// The registered tropical-extension sample: Vandiver `V_2` layers over
/// rational values.
pub fn trop_ext_sample() -> TropExt {
    TropExt::new(vandiver(2).unwrap(), "trop-ext").expect("static construction")
}

/// Pointwise tuple pair `A^S` for `|S| = s`: tangibles are the fully
/// tangible tuples and nulls the fully null ones.
pub fn function_pair(p: &FinitePair, s: usize, name: &str) -> Result<FinitePair> {
    let base: Vec<u16> = p.elements().unwrap();
    let n = base.len();
    let size = n
        .checked_pow(s as u32)
        .ok_or_else(|| KernelError::TooLarge("tuple space".into()))?;
    if size > 4096 {
        return Err(KernelError::TooLarge(format!("carrier of {size} tuples")));
    }
    let decode = |mut i: usize| -> Vec<u16> {
        let mut out = vec![0u16; s];
        for slot in (0..s).rev() {
            out[slot] = base[i % n];
            i /= n;
        }
        out
    };
    let encode = |t: &[u16]| -> usize {
        t.iter().fold(0usize, |acc, e| {
            acc * n + base.iter().position(|b| b == e).unwrap()
        })
    };
    let addf = |i: usize, j: usize| {
        let (a, b) = (decode(i), decode(j));
        encode(
            &a.iter()
                .zip(&b)
                .map(|(x, y)| p.add(x, y))
                .collect::<Vec<_>>(),
        )
    };
    let mulf = |i: usize, j: usize| {
        let (a, b) = (decode(i), decode(j));
        encode(
            &a.iter()
                .zip(&b)
                .map(|(x, y)| p.mul(x, y))
                .collect::<Vec<_>>(),
        )
    };
    let (at, mt) = build_tables(size, addf, mulf);
    let names = (0..size)
        .map(|i| {
            let t = decode(i);
            format!(
                "({})",
                t.iter().map(|e| p.el_name(e)).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    let tangible = (0..size)
        .map(|i| decode(i).iter().all(|e| p.is_tangible(e)))
        .collect();
    let null = (0..size)
        .map(|i| decode(i).iter().all(|e| p.is_null(e)))
        .collect();
    let zero = encode(&vec![p.zero(); s]) as u16;
    let one = encode(&vec![p.one(); s]) as u16;
    let dag = p.dag_unit().map(|d| encode(&vec![d; s]) as u16);
    FinitePair::from_tables(
        name,
        names,
        at,
        mt,
        tangible,
        null,
        zero,
        one,
        dag,
        p.caps().distributive,
    )
}

/// `2 x 2` matrices over a finite pair, packaged as a pair: nulls are the
/// entrywise-null matrices, the tangible monoid is the scalar orbit of the
/// identity under the negation witness.
pub fn matrix_pair_2x2(p: &FinitePair, name: &str) -> Result<FinitePair> {
    let base: Vec<u16> = p.elements().unwrap();
    let n = base.len();
    let size = n * n * n * n;
    if size > 20000 {
        return Err(KernelError::TooLarge(format!("matrix carrier of {size}")));
    }
    let pos = |e: u16| base.iter().position(|b| *b == e).unwrap();
    let decode = |i: usize| -> [u16; 4] {
        [
            base[i / (n * n * n)],
            base[i / (n * n) % n],
            base[i / n % n],
            base[i % n],
        ]
    };
    let encode =
        |m: [u16; 4]| pos(m[0]) * n * n * n + pos(m[1]) * n * n + pos(m[2]) * n + pos(m[3]);
    let addf = |i: usize, j: usize| {
        let (a, b) = (decode(i), decode(j));
        encode([
            p.add(&a[0], &b[0]),
            p.add(&a[1], &b[1]),
            p.add(&a[2], &b[2]),
            p.add(&a[3], &b[3]),
        ])
    };
    let mulf = |i: usize, j: usize| {
        let (a, b) = (decode(i), decode(j));
        encode([
            p.add(&p.mul(&a[0], &b[0]), &p.mul(&a[1], &b[2])),
            p.add(&p.mul(&a[0], &b[1]), &p.mul(&a[1], &b[3])),
            p.add(&p.mul(&a[2], &b[0]), &p.mul(&a[3], &b[2])),
            p.add(&p.mul(&a[2], &b[1]), &p.mul(&a[3], &b[3])),
        ])
    };
    let (at, mt) = build_tables(size, addf, mulf);
    let names = (0..size)
        .map(|i| {
            let m = decode(i);
            format!(
                "[{},{};{},{}]",
                p.el_name(&m[0]),
                p.el_name(&m[1]),
                p.el_name(&m[2]),
                p.el_name(&m[3])
            )
        })
        .collect();
    let zero = encode([p.zero(); 4]) as u16;
    let ident = encode([p.one(), p.zero(), p.zero(), p.one()]) as u16;
    let dag_scalar = p.dag_unit();
    let dag = dag_scalar
        .as_ref()
        .map(|d| encode([d.clone(), p.zero(), p.zero(), d.clone()]) as u16);
    let mut tangible = vec![false; size];
    tangible[ident as usize] = true;
    if let Some(d) = dag {
        tangible[d as usize] = true;
    }
    let null = (0..size)
        .map(|i| decode(i).iter().all(|e| p.is_null(e)))
        .collect();
    FinitePair::from_tables(
        name,
        names,
        at,
        mt,
        tangible,
        null,
        zero,
        ident,
        dag,
        p.caps().distributive,
    )
}

// ---------------------------------------------------------------------------
// Symbolic instances
// ---------------------------------------------------------------------------

fn parse_rat(s: &str) -> Option<Rat> {
    if let Some((n, d)) = s.split_once('/') {
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(Rat::new(n.trim().parse().ok()?, d))
    } else {
        Some(Rat::new(s.trim().parse().ok()?, 1))
    }
}

fn rat_name(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Max-plus over the rationals with a bottom: a semifield whose trivial pair
/// is zero-sum-free, hence carries no negation witness; pair-level suites
/// skip it by capability.
#[derive(Debug, Clone, Default)]
pub struct MaxPlusQ;

impl Pair for MaxPlusQ {
    type El = Option<Rat>; // None = bottom

    fn name(&self) -> &str {
        "max-plus-q"
    }
    fn zero(&self) -> Self::El {
        None
    }
    fn one(&self) -> Self::El {
        Some(Rat::zero())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        match (a, b) {
            (None, x) | (x, None) => x.clone(),
            (Some(x), Some(y)) => Some(*x.max(y)),
        }
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        match (a, b) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        }
    }
    fn is_tangible(&self, a: &Self::El) -> bool {
        a.is_some()
    }
    fn is_null(&self, a: &Self::El) -> bool {
        a.is_none()
    }
    fn dag_unit(&self) -> Option<Self::El> {
        None
    }
    fn caps(&self) -> Caps {
        Caps::symbolic(true)
    }
    fn elements(&self) -> Option<Vec<Self::El>> {
        None
    }
    fn sample(&self) -> Vec<Self::El> {
        let mut s = vec![None];
        for n in -3..=3 {
            s.push(Some(Rat::new(n, 1)));
        }
        s.push(Some(Rat::new(1, 2)));
        s.push(Some(Rat::new(-5, 2)));
        s
    }
    fn leq0_decision(&self, a: &Self::El, b: &Self::El) -> Option<bool> {
        Some(a == b)
    }
    fn el_name(&self, a: &Self::El) -> String {
        match a {
            None => "-inf".into(),
            Some(q) => rat_name(q),
        }
    }
    fn parse_el(&self, s: &str) -> Option<Self::El> {
        if s == "-inf" {
            Some(None)
        } else {
            parse_rat(s).map(Some)
        }
    }
}

/// Supertropical semiring over rational values: tangible and ghost copies of
/// `Q` over a bottom, equal values ghosting out.
#[derive(Debug, Clone, Default)]
pub struct SupTropQ;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum STElem {
    Bottom,
    Tang(Rat),
    Ghost(Rat),
}

impl STElem {
    fn value(&self) -> Option<Rat> {
        match self {
            STElem::Bottom => None,
            STElem::Tang(q) | STElem::Ghost(q) => Some(*q),
        }
    }
    fn is_ghost(&self) -> bool {
        matches!(self, STElem::Ghost(_) | STElem::Bottom)
    }
}

impl Pair for SupTropQ {
    type El = STElem;

    fn name(&self) -> &str {
        "supertropical-q"
    }
    fn zero(&self) -> STElem {
        STElem::Bottom
    }
    fn one(&self) -> STElem {
        STElem::Tang(Rat::zero())
    }
    fn add(&self, a: &STElem, b: &STElem) -> STElem {
        match (a.value(), b.value()) {
            (None, _) => b.clone(),
            (_, None) => a.clone(),
            (Some(x), Some(y)) => {
                if x > y {
                    a.clone()
                } else if y > x {
                    b.clone()
                } else {
                    STElem::Ghost(x)
                }
            }
        }
    }
    fn mul(&self, a: &STElem, b: &STElem) -> STElem {
        match (a.value(), b.value()) {
            (Some(x), Some(y)) => {
                if a.is_ghost() || b.is_ghost() {
                    STElem::Ghost(x + y)
                } else {
                    STElem::Tang(x + y)
                }
            }
            _ => STElem::Bottom,
        }
    }
    fn is_tangible(&self, a: &STElem) -> bool {
        matches!(a, STElem::Tang(_))
    }
    fn is_null(&self, a: &STElem) -> bool {
        a.is_ghost()
    }
    fn dag_unit(&self) -> Option<STElem> {
        Some(STElem::Tang(Rat::zero()))
    }
    fn caps(&self) -> Caps {
        Caps::symbolic(true)
    }
    fn elements(&self) -> Option<Vec<STElem>> {
        None
    }
    fn sample(&self) -> Vec<STElem> {
        let mut s = vec![STElem::Bottom];
        for n in [-1i64, 0, 1, 2] {
            s.push(STElem::Tang(Rat::new(n, 1)));
            s.push(STElem::Ghost(Rat::new(n, 1)));
        }
        s
    }
    fn leq0_decision(&self, a: &STElem, b: &STElem) -> Option<bool> {
        Some(match b {
            STElem::Bottom => *a == STElem::Bottom,
            STElem::Tang(_) => a == b,
            STElem::Ghost(v) => match a {
                STElem::Bottom => true,
                STElem::Tang(u) | STElem::Ghost(u) => u <= v,
            },
        })
    }
    fn el_name(&self, a: &STElem) -> String {
        match a {
            STElem::Bottom => "-inf".into(),
            STElem::Tang(q) => rat_name(q),
            STElem::Ghost(q) => format!("mu{}", rat_name(q)),
        }
    }
    fn parse_el(&self, s: &str) -> Option<STElem> {
        if s == "-inf" {
            Some(STElem::Bottom)
        } else if let Some(rest) = s.strip_prefix("mu") {
            parse_rat(rest).map(STElem::Ghost)
        } else {
            parse_rat(s).map(STElem::Tang)
        }
    }
    fn search_palette(&self) -> Vec<STElem> {
        [-1i64, 0, 1, 2]
            .iter()
            .map(|n| STElem::Tang(Rat::new(*n, 1)))
            .collect()
    }
}

/// The naturals as a trivially paired semiring; doubling base and convolution
/// test bed.
#[derive(Debug, Clone, Default)]
pub struct NatSr;

impl Pair for NatSr {
    type El = u64;

    fn name(&self) -> &str {
        "nat"
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        a + b
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b
    }
    fn is_tangible(&self, a: &u64) -> bool {
        *a != 0
    }
    fn is_null(&self, a: &u64) -> bool {
        *a == 0
    }
    fn dag_unit(&self) -> Option<u64> {
        None
    }
    fn caps(&self) -> Caps {
        Caps::symbolic(true)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        None
    }
    fn sample(&self) -> Vec<u64> {
        (0..=6).collect()
    }
    fn leq0_decision(&self, a: &u64, b: &u64) -> Option<bool> {
        Some(a == b)
    }
    fn el_name(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_el(&self, s: &str) -> Option<u64> {
        s.parse().ok()
    }
}

/// The doubled naturals with an exact surpassing decision: the difference
/// of the two slots must be a common natural.
#[derive(Debug, Clone)]
pub struct DoubledNat(Doubled<NatSr>);

pub fn doubled_nat() -> DoubledNat {
    DoubledNat(Doubled::new(NatSr))
}

impl DoubledNat {
    pub fn abs_value(&self, x: &(u64, u64)) -> u64 {
        self.0.abs_value(x)
    }
}

impl Pair for DoubledNat {
    type El = (u64, u64);

    fn name(&self) -> &str {
        self.0.name()
    }
    fn zero(&self) -> Self::El {
        self.0.zero()
    }
    fn one(&self) -> Self::El {
        self.0.one()
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.0.add(a, b)
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.0.mul(a, b)
    }
    fn is_tangible(&self, a: &Self::El) -> bool {
        self.0.is_tangible(a)
    }
    fn is_null(&self, a: &Self::El) -> bool {
        self.0.is_null(a)
    }
    fn dag_unit(&self) -> Option<Self::El> {
        self.0.dag_unit()
    }
    fn caps(&self) -> Caps {
        Caps::symbolic(true)
    }
    fn elements(&self) -> Option<Vec<Self::El>> {
        None
    }
    fn sample(&self) -> Vec<Self::El> {
        self.0.sample()
    }
    fn leq0_decision(&self, a: &Self::El, b: &Self::El) -> Option<bool> {
        Some(b.0 >= a.0 && b.1 >= a.1 && b.0 - a.0 == b.1 - a.1)
    }
    fn el_name(&self, a: &Self::El) -> String {
        self.0.el_name(a)
    }
    fn parse_el(&self, s: &str) -> Option<Self::El> {
        self.0.parse_el(s)
    }
    fn search_palette(&self) -> Vec<Self::El> {
        vec![(1, 0), (0, 1), (2, 0)]
    }
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// Any registered instance; suite code dispatches through [`with_pair!`].
#[derive(Debug, Clone)]
pub enum AnyPair {
    Finite(FinitePair),
    SupTropQ(SupTropQ),
    MaxPlusQ(MaxPlusQ),
    Nat(NatSr),
    DoubledNat(DoubledNat),
    Puiseux(PuiseuxPair),
    Phase(PhasePair),
    TropExt(TropExt),
}

/// Run a generic expression against whichever concrete pair an [`AnyPair`]
/// holds.
#[macro_export]
macro_rules! with_pair {
    ($any:expr, $p:ident => $body:expr) => {
        match $any {
            $crate::instances::AnyPair::Finite($p) => $body,
            $crate::instances::AnyPair::SupTropQ($p) => $body,
            $crate::instances::AnyPair::MaxPlusQ($p) => $body,
            $crate::instances::AnyPair::Nat($p) => $body,
            $crate::instances::AnyPair::DoubledNat($p) => $body,
            $crate::instances::AnyPair::Puiseux($p) => $body,
            $crate::instances::AnyPair::Phase($p) => $body,
            $crate::instances::AnyPair::TropExt($p) => $body,
        }
    };
}

impl AnyPair {
    pub fn name(&self) -> String {
        with_pair!(self, p => p.name().to_string())
    }
    pub fn caps(&self) -> Caps {
        with_pair!(self, p => p.caps())
    }
    pub fn claims_property_n(&self) -> bool {
        with_pair!(self, p => p.dag_unit().is_some())
    }
    pub fn canonical_rel(&self) -> RelKind {
        with_pair!(self, p => p.canonical_rel())
    }
    pub fn as_finite(&self) -> Option<&FinitePair> {
        match self {
            AnyPair::Finite(p) => Some(p),
            _ => None,
        }
    }
}

/// Names of all built-in instances, in registry order.
pub fn registry_names() -> Vec<&'static str> {
    vec![
        "boolean",
        "vandiver-2",
        "vandiver-3",
        "vandiver-4",
        "supertropical-boolean",
        "doubled-boolean",
        "trop-ext",
        "min-shallow-z2",
        "classical-f3",
        "func-stb-2",
        "m2-stb",
        "krasner-hyperpair",
        "sign-hyperpair",
        "quot-f3-hyperpair",
        "quot-f5-hyperpair",
        "max-plus-q",
        "nat",
        "supertropical-q",
        "doubled-nat",
        "puiseux",
        "phase-hyperpair",
    ]
}

/// Look up a built-in instance by registry name. `vandiver-<n>` and
/// `supertropical-chain-<k>` accept any small parameter.
pub fn lookup(name: &str) -> Result<AnyPair> {
    if let Some(nstr) = name.strip_prefix("vandiver-") {
        let n: usize = nstr
            .parse()
            .map_err(|_| KernelError::UnknownInstance(name.to_string()))?;
        if n > 64 {
            return Err(KernelError::TooLarge("vandiver index".into()));
        }
        return Ok(AnyPair::Finite(vandiver(n)?));
    }
    if let Some(kstr) = name.strip_prefix("supertropical-chain-") {
        let k: usize = kstr
            .parse()
            .map_err(|_| KernelError::UnknownInstance(name.to_string()))?;
        if k > 16 {
            return Err(KernelError::TooLarge("ghost chain length".into()));
        }
        return Ok(AnyPair::Finite(supertropical_chain(k)));
    }
    Ok(match name {
        "boolean" => AnyPair::Finite(boolean()),
        "supertropical-boolean" => AnyPair::Finite(supertropical_boolean()),
        "doubled-boolean" => AnyPair::Finite(doubled_boolean()),
        "trop-ext" => AnyPair::TropExt(trop_ext_sample()),
        "min-shallow-z2" => AnyPair::Finite(min_shallow_z2()),
        "classical-f3" => AnyPair::Finite(classical_fp(3)?),
        "func-stb-2" => AnyPair::Finite(function_pair(&supertropical_boolean(), 2, "func-stb-2")?),
        "m2-stb" => AnyPair::Finite(matrix_pair_2x2(&supertropical_boolean(), "m2-stb")?),
        "krasner-hyperpair" => AnyPair::Finite(hyper::power_set_pair(
            &hyper::krasner(),
            "krasner-hyperpair",
        )?),
        "sign-hyperpair" => {
            AnyPair::Finite(hyper::power_set_pair(&hyper::sign(), "sign-hyperpair")?)
        }
        "quot-f3-hyperpair" => {
            let h = hyper::quotient_hyperfield_fp(3, &[1, 2])?;
            AnyPair::Finite(hyper::power_set_pair(&h, "quot-f3-hyperpair")?)
        }
        "quot-f5-hyperpair" => {
            let h = hyper::quotient_hyperfield_fp(5, &[1, 2, 3, 4])?;
            AnyPair::Finite(hyper::power_set_pair(&h, "quot-f5-hyperpair")?)
        }
        "max-plus-q" => AnyPair::MaxPlusQ(MaxPlusQ),
        "nat" => AnyPair::Nat(NatSr),
        "supertropical-q" => AnyPair::SupTropQ(SupTropQ),
        "doubled-nat" => AnyPair::DoubledNat(doubled_nat()),
        "puiseux" => AnyPair::Puiseux(PuiseuxPair::new()),
        "phase-hyperpair" => AnyPair::Phase(PhasePair::new()),
        other => {
            if let Some(h) = hyper_by_name(other) {
                return Ok(h);
            }
            return Err(KernelError::UnknownInstance(other.to_string()));
        }
    })
}

fn hyper_by_name(_name: &str) -> Option<AnyPair> {
    None
}

/// Load a finite instance from a JSON descriptor string.
pub fn load_descriptor(name: &str, json: &str) -> Result<FinitePair> {
    let d: crate::pairs::Descriptor =
        serde_json::from_str(json).map_err(|e| KernelError::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
    FinitePair::from_descriptor(name, &d)
}
