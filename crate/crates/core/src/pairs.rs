//! The pair interface: a semiring `A` with tangible monoid `T` and null part
//! `A0`, surpassing relations, axiom/Property-N verification, and the
//! structural classification predicates.

use crate::{KernelError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

/// Capability flags of an instance.
///
/// `enumerable` carriers admit exhaustive sweeps; symbolic carriers run
/// checks on a declared sample set instead. `nd_only` marks carriers whose
/// multiplication does not fully distribute over addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub enumerable: bool,
    pub leq_decidable: bool,
    pub distributive: bool,
    pub nd_only: bool,
}

impl Caps {
    pub fn finite(distributive: bool) -> Self {
        Caps {
            enumerable: true,
            leq_decidable: true,
            distributive,
            nd_only: !distributive,
        }
    }
    pub fn symbolic(leq_decidable: bool) -> Self {
        Caps {
            enumerable: false,
            leq_decidable,
            distributive: true,
            nd_only: false,
        }
    }
}

/// Which surpassing relation to use when deciding `b1 <= b2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelKind {
    /// `b1 + h = b2` for some null `h` (the minimal pre-surpassing relation).
    Leq0,
    /// Containment of set descriptors; only set-like carriers support it.
    Subset,
    /// Reversed `Leq0`.
    Geq0,
}

/// A semiring whose null part replaces zero, together with its tangible
/// monoid. Operations must be total on the carrier and exact.
pub trait Pair {
    type El: Clone + Eq + Ord + Hash + Debug;

    fn name(&self) -> &str;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_tangible(&self, a: &Self::El) -> bool;
    fn is_null(&self, a: &Self::El) -> bool;
    /// The Property N witness `1^dag`, when the instance claims Property N.
    fn dag_unit(&self) -> Option<Self::El>;
    fn caps(&self) -> Caps;
    /// Full carrier for enumerable instances, `None` for symbolic ones.
    fn elements(&self) -> Option<Vec<Self::El>>;
    /// Declared finite sample for symbolic instances; the carrier otherwise.
    fn sample(&self) -> Vec<Self::El> {
        self.elements()
            .expect("symbolic instances must declare a sample")
    }
    /// Instance-supplied decision for `Leq0` on symbolic carriers.
    fn leq0_decision(&self, _a: &Self::El, _b: &Self::El) -> Option<bool> {
        None
    }
    /// Containment decision for set-like carriers.
    fn subset_decision(&self, _a: &Self::El, _b: &Self::El) -> Option<bool> {
        None
    }
    /// The relation the instance's theory is usually stated with.
    fn canonical_rel(&self) -> RelKind {
        RelKind::Leq0
    }
    fn el_name(&self, a: &Self::El) -> String;
    fn parse_el(&self, s: &str) -> Option<Self::El>;
    /// Finite coefficient palette used by witness searches.
    fn search_palette(&self) -> Vec<Self::El> {
        self.sample()
            .into_iter()
            .filter(|x| self.is_tangible(x))
            .collect()
    }
}

/// `1^dag * b`.
pub fn dag<P: Pair>(p: &P, b: &P::El) -> Result<P::El> {
    let u = p.dag_unit().ok_or_else(|| KernelError::Undecidable {
        instance: p.name().to_string(),
        needed: "property-n".into(),
    })?;
    Ok(p.mul(&u, b))
}

/// `b + 1^dag * b`; lands in the null part whenever Property N holds.
pub fn circ<P: Pair>(p: &P, b: &P::El) -> Result<P::El> {
    Ok(p.add(b, &dag(p, b)?))
}

pub fn tangibles<P: Pair>(p: &P) -> Vec<P::El> {
    p.sample()
        .into_iter()
        .filter(|x| p.is_tangible(x))
        .collect()
}

pub fn nulls<P: Pair>(p: &P) -> Vec<P::El> {
    p.sample().into_iter().filter(|x| p.is_null(x)).collect()
}

/// Decide `a <= b` under `rel`. For `Leq0` on enumerable carriers this
/// exhausts the null part; symbolic carriers must supply a decision.
pub fn leq<P: Pair>(p: &P, rel: RelKind, a: &P::El, b: &P::El) -> Result<bool> {
    match rel {
        RelKind::Leq0 => leq0(p, a, b),
        RelKind::Geq0 => leq0(p, b, a),
        RelKind::Subset => p
            .subset_decision(a, b)
            .ok_or_else(|| KernelError::Undecidable {
                instance: p.name().to_string(),
                needed: "subset-relation".into(),
            }),
    }
}

/// `a <=0 b` iff `a + h = b` for some null `h`.
pub fn leq0<P: Pair>(p: &P, a: &P::El, b: &P::El) -> Result<bool> {
    if let Some(d) = p.leq0_decision(a, b) {
        return Ok(d);
    }
    if !p.caps().enumerable {
        return Err(KernelError::Undecidable {
            instance: p.name().to_string(),
            needed: "leq-decidable".into(),
        });
    }
    Ok(nulls(p).iter().any(|h| p.add(a, h) == *b))
}

/// Outcome of one named check inside a verification report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub ok: bool,
    pub witness: Option<String>,
}

impl Check {
    fn pass(id: &str) -> Self {
        Check {
            id: id.into(),
            ok: true,
            witness: None,
        }
    }
    fn fail(id: &str, witness: String) -> Self {
        Check {
            id: id.into(),
            ok: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub instance: String,
    pub sampled: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

fn named<P: Pair>(p: &P, els: &[&P::El]) -> String {
    els.iter()
        .map(|e| p.el_name(e))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Verify the semiring and pair axioms on the carrier (or sample).
/// Failures are report content, never errors.
pub fn verify_pair_axioms<P: Pair>(p: &P) -> VerifyReport {
    let dom = p.sample();
    let sampled = !p.caps().enumerable;
    let mut checks = Vec::new();
    let zero = p.zero();
    let one = p.one();

    checks.push(if zero != one {
        Check::pass("zero-ne-one")
    } else {
        Check::fail("zero-ne-one", "zero = one".into())
    });

    let mut c = Check::pass("add-commutative");
    'comm: for a in &dom {
        for b in &dom {
            if p.add(a, b) != p.add(b, a) {
                c = Check::fail("add-commutative", named(p, &[a, b]));
                break 'comm;
            }
        }
    }
    checks.push(c);

    let mut c = Check::pass("add-associative");
    'assoc: for a in &dom {
        for b in &dom {
            for d in &dom {
                if p.add(&p.add(a, b), d) != p.add(a, &p.add(b, d)) {
                    c = Check::fail("add-associative", named(p, &[a, b, d]));
                    break 'assoc;
                }
            }
        }
    }
    checks.push(c);

    let mut c = Check::pass("zero-neutral");
    for a in &dom {
        if p.add(a, &zero) != *a {
            c = Check::fail("zero-neutral", p.el_name(a));
            break;
        }
    }
    checks.push(c);

    let mut c = Check::pass("mul-associative");
    'massoc: for a in &dom {
        for b in &dom {
            for d in &dom {
                if p.mul(&p.mul(a, b), d) != p.mul(a, &p.mul(b, d)) {
                    c = Check::fail("mul-associative", named(p, &[a, b, d]));
                    break 'massoc;
                }
            }
        }
    }
    checks.push(c);

    let mut c = Check::pass("one-unit");
    for a in &dom {
        if p.mul(&one, a) != *a || p.mul(a, &one) != *a {
            c = Check::fail("one-unit", p.el_name(a));
            break;
        }
    }
    checks.push(c);

    let mut c = Check::pass("zero-absorbing");
    for a in &dom {
        if p.mul(&zero, a) != zero || p.mul(a, &zero) != zero {
            c = Check::fail("zero-absorbing", p.el_name(a));
            break;
        }
    }
    checks.push(c);

    if p.caps().nd_only {
        checks.push(Check {
            id: "distributive".into(),
            ok: true,
            witness: Some("skipped: nd-semiring carrier".into()),
        });
    } else {
        let mut c = Check::pass("distributive");
        'dist: for a in &dom {
            for b in &dom {
                for d in &dom {
                    if p.mul(a, &p.add(b, d)) != p.add(&p.mul(a, b), &p.mul(a, d))
                        || p.mul(&p.add(b, d), a) != p.add(&p.mul(b, a), &p.mul(d, a))
                    {
                        c = Check::fail("distributive", named(p, &[a, b, d]));
                        break 'dist;
                    }
                }
            }
        }
        checks.push(c);
    }

    // T is a multiplicative monoid containing one, excluding zero.
    let tang = tangibles(p);
    checks.push(if p.is_tangible(&one) {
        Check::pass("tangibles-contain-one")
    } else {
        Check::fail("tangibles-contain-one", "one not tangible".into())
    });
    checks.push(if !p.is_tangible(&zero) {
        Check::pass("tangibles-exclude-zero")
    } else {
        Check::fail("tangibles-exclude-zero", "zero tangible".into())
    });
    let mut c = Check::pass("tangibles-closed-mul");
    'tcl: for a in &tang {
        for b in &tang {
            let ab = p.mul(a, b);
            if !p.is_tangible(&ab) {
                c = Check::fail("tangibles-closed-mul", named(p, &[a, b]));
                break 'tcl;
            }
        }
    }
    checks.push(c);

    // A0 is an additive sub-semigroup containing zero, closed under the
    // T-action, with converse absorption.
    let nl = nulls(p);
    checks.push(if p.is_null(&zero) {
        Check::pass("nulls-contain-zero")
    } else {
        Check::fail("nulls-contain-zero", "zero not null".into())
    });
    let mut c = Check::pass("nulls-closed-add");
    'ncl: for a in &nl {
        for b in &nl {
            if !p.is_null(&p.add(a, b)) {
                c = Check::fail("nulls-closed-add", named(p, &[a, b]));
                break 'ncl;
            }
        }
    }
    checks.push(c);
    let mut c = Check::pass("t-action-on-nulls");
    'act: for a in &tang {
        for b in &nl {
            if !p.is_null(&p.mul(a, b)) {
                c = Check::fail("t-action-on-nulls", named(p, &[a, b]));
                break 'act;
            }
        }
    }
    checks.push(c);
    let mut c = Check::pass("converse-absorption");
    'conv: for a in &tang {
        for b in &dom {
            if p.is_null(&p.mul(a, b)) && !p.is_null(b) {
                c = Check::fail("converse-absorption", named(p, &[a, b]));
                break 'conv;
            }
        }
    }
    checks.push(c);

    // Faithfulness of the tangible action.
    let mut c = Check::pass("faithful-action");
    'faith: for a in &tang {
        for b1 in &dom {
            for b2 in &dom {
                if b1 != b2 && p.mul(a, b1) == p.mul(a, b2) {
                    c = Check::fail("faithful-action", named(p, &[a, b1, b2]));
                    break 'faith;
                }
            }
        }
    }
    checks.push(c);

    VerifyReport {
        instance: p.name().to_string(),
        sampled,
        checks,
    }
}

/// Verify Property N: an invertible `1^dag` in `T` with `e = 1 + 1^dag`
/// null, `e` unique among null sums `1 + a`, and `b + 1^dag b` null for
/// every `b`.
pub fn verify_property_n<P: Pair>(p: &P) -> VerifyReport {
    let dom = p.sample();
    let sampled = !p.caps().enumerable;
    let mut checks = Vec::new();
    let one = p.one();

    let Some(du) = p.dag_unit() else {
        return VerifyReport {
            instance: p.name().to_string(),
            sampled,
            checks: vec![Check::fail(
                "dag-unit-present",
                "instance does not claim Property N".into(),
            )],
        };
    };
    checks.push(if p.is_tangible(&du) {
        Check::pass("dag-unit-tangible")
    } else {
        Check::fail("dag-unit-tangible", p.el_name(&du))
    });

    // Invertibility of 1^dag, witnessed inside the tangible sample.
    let tang = tangibles(p);
    let inv = tang
        .iter()
        .find(|a| p.mul(&du, a) == one && p.mul(a, &du) == one);
    checks.push(match inv {
        Some(_) => Check::pass("dag-unit-invertible"),
        None => Check::fail(
            "dag-unit-invertible",
            "no inverse in tangible sample".into(),
        ),
    });

    let e = p.add(&one, &du);
    checks.push(if p.is_null(&e) {
        Check::pass("e-null")
    } else {
        Check::fail("e-null", p.el_name(&e))
    });

    let mut c = Check::pass("e-unique");
    for a in &tang {
        let s = p.add(&one, a);
        if p.is_null(&s) && s != e {
            c = Check::fail(
                "e-unique",
                format!("1 + {} = {}", p.el_name(a), p.el_name(&s)),
            );
            break;
        }
    }
    checks.push(c);

    let mut c = Check::pass("circ-null");
    for b in &dom {
        let bc = p.add(b, &p.mul(&du, b));
        if !p.is_null(&bc) {
            c = Check::fail(
                "circ-null",
                format!("{}: circ = {}", p.el_name(b), p.el_name(&bc)),
            );
            break;
        }
    }
    checks.push(c);

    VerifyReport {
        instance: p.name().to_string(),
        sampled,
        checks,
    }
}

/// `1^dag e = e`, hence `e^2 = e + e` in a semiring pair.
pub fn check_est<P: Pair>(p: &P) -> VerifyReport {
    let mut checks = Vec::new();
    let sampled = !p.caps().enumerable;
    match p.dag_unit() {
        None => checks.push(Check {
            id: "est".into(),
            ok: true,
            witness: Some("skipped: no Property N".into()),
        }),
        Some(du) => {
            let e = p.add(&p.one(), &du);
            checks.push(if p.mul(&du, &e) == e {
                Check::pass("dag-fixes-e")
            } else {
                Check::fail("dag-fixes-e", p.el_name(&p.mul(&du, &e)))
            });
            checks.push(if p.mul(&e, &e) == p.add(&e, &e) {
                Check::pass("e-squared")
            } else {
                Check::fail(
                    "e-squared",
                    format!(
                        "e^2 = {}, e+e = {}",
                        p.el_name(&p.mul(&e, &e)),
                        p.el_name(&p.add(&e, &e))
                    ),
                )
            });
        }
    }
    VerifyReport {
        instance: p.name().to_string(),
        sampled,
        checks,
    }
}

/// Structural flags of a pair, each the verbatim outcome of the decision
/// procedure run against the carrier or sample.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub instance: String,
    pub sampled: bool,
    pub kind_first: bool,
    pub proper: bool,
    pub shallow: bool,
    pub weakly_metatangible: bool,
    pub metatangible: bool,
    pub a0_bipotent: bool,
    pub a0_domain: bool,
    pub uniquely_negated: bool,
    pub bound: usize,
    pub reversible: Option<bool>,
    pub fissure: Option<bool>,
    pub strongly_reversible: Option<bool>,
}

/// Compute every classification flag by definition. Reversibility, fissure
/// and strong reversibility quantify over tangible tuples of length `<=
/// bound` under the instance's canonical relation.
pub fn classify<P: Pair>(p: &P, bound: usize) -> ClassificationReport {
    let dom = p.sample();
    let tang = tangibles(p);
    let one = p.one();
    let zero = p.zero();

    let kind_first = p.is_null(&p.add(&one, &one));
    let proper = dom
        .iter()
        .all(|b| !(p.is_null(b) && (p.is_tangible(b) || *b == zero)) || *b == zero);
    let shallow = dom.iter().all(|b| p.is_tangible(b) || p.is_null(b));
    let weakly_metatangible = tang
        .iter()
        .flat_map(|a| tang.iter().map(move |b| (a, b)))
        .all(|(a, b)| {
            let s = p.add(a, b);
            p.is_tangible(&s) || p.is_null(&s)
        });
    let metatangible = weakly_metatangible
        && dom.iter().all(|c| {
            *c == zero
                || p.is_tangible(c)
                || p.is_null(c)
                || tang
                    .iter()
                    .any(|a| nulls(p).iter().any(|h| p.add(a, h) == *c))
        });
    let a0_bipotent = tang
        .iter()
        .flat_map(|a| tang.iter().map(move |b| (a, b)))
        .all(|(a, b)| {
            let s = p.add(a, b);
            s == *a || s == *b || p.is_null(&s)
        });
    let a0_domain = dom.iter().all(|b1| {
        dom.iter()
            .all(|b2| !p.is_null(&p.mul(b1, b2)) || p.is_null(b1) || p.is_null(b2))
    });

    let uniquely_negated = match p.dag_unit() {
        None => false,
        Some(du) => {
            let e = p.add(&one, &du);
            p.mul(&du, &du) == one && tang.iter().all(|a| p.add(&one, a) != e || *a == du)
        }
    };

    let rel = p.canonical_rel();
    let reversible = check_reversibility(p, rel, bound).ok();
    let fissure = check_fissure(p, rel, bound).ok();
    let strongly_reversible = check_strong_reversibility(p, rel).ok();

    ClassificationReport {
        instance: p.name().to_string(),
        sampled: !p.caps().enumerable,
        kind_first,
        proper,
        shallow,
        weakly_metatangible,
        metatangible,
        a0_bipotent,
        a0_domain,
        uniquely_negated,
        bound,
        reversible,
        fissure,
        strongly_reversible,
    }
}

fn tangible_tuples<P: Pair>(p: &P, len: usize) -> Vec<Vec<P::El>> {
    let tang = tangibles(p);
    let mut out: Vec<Vec<P::El>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                tang.iter().map(move |a| {
                    let mut t2 = t.clone();
                    t2.push(a.clone());
                    t2
                })
            })
            .collect();
    }
    out
}

fn sum_of<P: Pair>(p: &P, xs: &[P::El]) -> P::El {
    xs.iter().fold(p.zero(), |acc, x| p.add(&acc, x))
}

/// Bounded decision of reversibility: whenever a null tangible sum
/// surpasses `a0^dag`, swapping `a0` in for the first summand keeps the
/// shifted relation. The bound is part of the verdict.
pub fn check_reversibility<P: Pair>(p: &P, rel: RelKind, bound: usize) -> Result<bool> {
    let tang = tangibles(p);
    let du = p.dag_unit().ok_or_else(|| KernelError::Undecidable {
        instance: p.name().to_string(),
        needed: "property-n".into(),
    })?;
    for n in 1..=bound {
        for tup in tangible_tuples(p, n) {
            let s = sum_of(p, &tup);
            if !p.is_null(&s) {
                continue;
            }
            for a0 in &tang {
                let a0d = p.mul(&du, a0);
                if !leq(p, rel, &a0d, &s)? {
                    continue;
                }
                let rest = p.add(a0, &sum_of(p, &tup[1..]));
                let a1d = p.mul(&du, &tup[0]);
                if !leq(p, rel, &a1d, &rest)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Bounded decision of fissure: a null-surpassed tangible sum splits at its
/// first summand through some mediating tangible-or-zero element.
pub fn check_fissure<P: Pair>(p: &P, rel: RelKind, bound: usize) -> Result<bool> {
    let mut t0 = tangibles(p);
    t0.push(p.zero());
    for n in 2..=bound {
        for tup in tangible_tuples(p, n) {
            let s = sum_of(p, &tup);
            if !p.is_null(&s) {
                continue;
            }
            for a0 in &t0 {
                if !leq(p, rel, a0, &s)? {
                    continue;
                }
                let rest = sum_of(p, &tup[1..]);
                let mut found = false;
                for a in &t0 {
                    if leq(p, rel, a0, &p.add(&tup[0], a))? && leq(p, rel, a, &rest)? {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Strong reversibility: `a + b` null for tangible `a` forces `a^dag <= b`.
/// Exact on enumerable carriers, sampled otherwise.
pub fn check_strong_reversibility<P: Pair>(p: &P, rel: RelKind) -> Result<bool> {
    let du = p.dag_unit().ok_or_else(|| KernelError::Undecidable {
        instance: p.name().to_string(),
        needed: "property-n".into(),
    })?;
    let dom = p.sample();
    for a in tangibles(p) {
        let ad = p.mul(&du, &a);
        for b in &dom {
            if p.is_null(&p.add(&a, b)) && !leq(p, rel, &ad, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Uniform presentation of an element of a metatangible pair: `(c_T, m)`
/// with `c = m * c_T` (first kind) or `c` one of `zero`, `c_T`, `c_T + c_T^dag`
/// (second kind).
pub fn uniform_presentation<P: Pair>(p: &P, c: &P::El) -> Result<(P::El, u32)> {
    let report = classify(p, 3);
    if !report.metatangible {
        return Err(KernelError::Unsupported(format!(
            "`{}` is not metatangible",
            p.name()
        )));
    }
    if *c == p.zero() {
        return Ok((p.one(), 0));
    }
    let tang = tangibles(p);
    if report.kind_first {
        let cap = 2 * p.sample().len() as u32 + 2;
        for ct in &tang {
            let mut acc = p.zero();
            for m in 1..=cap {
                acc = p.add(&acc, ct);
                if acc == *c {
                    return Ok((ct.clone(), m));
                }
            }
        }
    } else {
        for ct in &tang {
            if ct == c {
                return Ok((ct.clone(), 1));
            }
            if let Ok(cc) = circ(p, ct) {
                if cc == *c {
                    return Ok((ct.clone(), 2));
                }
            }
        }
    }
    Err(KernelError::Invalid(format!(
        "no uniform presentation found for {} in `{}`",
        p.el_name(c),
        p.name()
    )))
}

// ---------------------------------------------------------------------------
// Finite table-backed pairs and their JSON descriptor format.
// ---------------------------------------------------------------------------

/// How a finite pair evaluates its operations.
#[derive(Debug, Clone)]
enum FiniteOps {
    Tables {
        add: Vec<u16>,
        mul: Vec<u16>,
    },
    /// On-demand subset arithmetic over a finite hypergroup; elements are
    /// nonempty bitmask subsets mapped through `mask_of`.
    PowerSet {
        hsum: Vec<u32>,
        hmul: Vec<u8>,
        size: usize,
        mask_of: Vec<u32>,
        index_of: BTreeMap<u32, u16>,
    },
}

/// An enumerable pair backed by explicit element names and operation rules.
#[derive(Debug, Clone)]
pub struct FinitePair {
    name: String,
    names: Vec<String>,
    ops: FiniteOps,
    tangible: Vec<bool>,
    null: Vec<bool>,
    zero: u16,
    one: u16,
    dag_unit: Option<u16>,
    caps: Caps,
    canonical: RelKind,
    /// Bitmask of the underlying hypergroup member set per element, when the
    /// carrier consists of subsets.
    subset_mask: Option<Vec<u32>>,
}

impl FinitePair {
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        name: &str,
        names: Vec<String>,
        add: Vec<u16>,
        mul: Vec<u16>,
        tangible: Vec<bool>,
        null: Vec<bool>,
        zero: u16,
        one: u16,
        dag_unit: Option<u16>,
        distributive: bool,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(KernelError::Invalid("empty carrier".into()));
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(KernelError::Invalid("operation tables must be n*n".into()));
        }
        for &v in add.iter().chain(mul.iter()) {
            if v as usize >= n {
                return Err(KernelError::Invalid(format!(
                    "table index {v} out of range"
                )));
            }
        }
        if zero as usize >= n || one as usize >= n {
            return Err(KernelError::Invalid("zero/one out of range".into()));
        }
        Ok(FinitePair {
            name: name.to_string(),
            names,
            ops: FiniteOps::Tables { add, mul },
            tangible,
            null,
            zero,
            one,
            dag_unit,
            caps: Caps::finite(distributive),
            canonical: RelKind::Leq0,
            subset_mask: None,
        })
    }

    /// Build a subset-carrier pair evaluating its operations through the
    /// underlying hypergroup tables; no carrier-squared tables are stored.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn power_set_backed(
        name: &str,
        names: Vec<String>,
        tangible: Vec<bool>,
        null: Vec<bool>,
        zero: u16,
        one: u16,
        dag_unit: Option<u16>,
        hsum: Vec<u32>,
        hmul: Vec<u8>,
        size: usize,
        mask_of: Vec<u32>,
    ) -> Self {
        let index_of = mask_of
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i as u16))
            .collect();
        FinitePair {
            name: name.to_string(),
            names,
            ops: FiniteOps::PowerSet {
                hsum,
                hmul,
                size,
                mask_of: mask_of.clone(),
                index_of,
            },
            tangible,
            null,
            zero,
            one,
            dag_unit,
            caps: Caps::finite(true),
            canonical: RelKind::Subset,
            subset_mask: Some(mask_of),
        }
    }

    pub fn carrier_len(&self) -> usize {
        self.names.len()
    }

    pub fn index_name(&self, i: u16) -> &str {
        &self.names[i as usize]
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn mark_nd_only(&mut self) {
        self.caps.distributive = false;
        self.caps.nd_only = true;
    }

    fn ps_add(&self, a: u16, b: u16) -> u16 {
        match &self.ops {
            FiniteOps::PowerSet {
                hsum,
                size,
                mask_of,
                index_of,
                ..
            } => {
                let (ma, mb) = (mask_of[a as usize], mask_of[b as usize]);
                let mut out = 0u32;
                for i in 0..*size {
                    if ma >> i & 1 == 0 {
                        continue;
                    }
                    for j in 0..*size {
                        if mb >> j & 1 == 1 {
                            out |= hsum[i * size + j];
                        }
                    }
                }
                index_of[&out]
            }
            _ => unreachable!(),
        }
    }

    fn ps_mul(&self, a: u16, b: u16) -> u16 {
        match &self.ops {
            FiniteOps::PowerSet {
                hmul,
                size,
                mask_of,
                index_of,
                ..
            } => {
                let (ma, mb) = (mask_of[a as usize], mask_of[b as usize]);
                let mut out = 0u32;
                for i in 0..*size {
                    if ma >> i & 1 == 0 {
                        continue;
                    }
                    for j in 0..*size {
                        if mb >> j & 1 == 1 {
                            out |= 1 << hmul[i * size + j];
                        }
                    }
                }
                index_of[&out]
            }
            _ => unreachable!(),
        }
    }

    pub fn descriptor(&self) -> Descriptor {
        let n = self.names.len();
        let table = |f: &dyn Fn(u16, u16) -> u16| -> Vec<Vec<u16>> {
            (0..n as u16)
                .map(|i| (0..n as u16).map(|j| f(i, j)).collect())
                .collect()
        };
        Descriptor {
            carrier: self.names.clone(),
            add: table(&|i, j| self.add(&i, &j)),
            mul: table(&|i, j| self.mul(&i, &j)),
            tangibles: self
                .names
                .iter()
                .enumerate()
                .filter(|(i, _)| self.tangible[*i])
                .map(|(_, s)| s.clone())
                .collect(),
            nulls: self
                .names
                .iter()
                .enumerate()
                .filter(|(i, _)| self.null[*i])
                .map(|(_, s)| s.clone())
                .collect(),
            dag_unit: self.dag_unit.map(|i| self.names[i as usize].clone()),
            zero: self.names[self.zero as usize].clone(),
            one: self.names[self.one as usize].clone(),
        }
    }

    pub fn from_descriptor(name: &str, d: &Descriptor) -> Result<Self> {
        let n = d.carrier.len();
        if n == 0 {
            return Err(KernelError::Invalid("empty carrier".into()));
        }
        let idx = |s: &str| -> Result<u16> {
            d.carrier
                .iter()
                .position(|x| x == s)
                .map(|i| i as u16)
                .ok_or_else(|| KernelError::Invalid(format!("name `{s}` not in carrier")))
        };
        let flatten = |t: &Vec<Vec<u16>>, what: &str| -> Result<Vec<u16>> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(KernelError::Invalid(format!(
                    "{what} table must be {n}x{n}"
                )));
            }
            Ok(t.iter().flatten().copied().collect())
        };
        let mut tangible = vec![false; n];
        for s in &d.tangibles {
            tangible[idx(s)? as usize] = true;
        }
        let mut null = vec![false; n];
        for s in &d.nulls {
            null[idx(s)? as usize] = true;
        }
        let dag_unit = match &d.dag_unit {
            Some(s) => Some(idx(s)?),
            None => None,
        };
        FinitePair::from_tables(
            name,
            d.carrier.clone(),
            flatten(&d.add, "add")?,
            flatten(&d.mul, "mul")?,
            tangible,
            null,
            idx(&d.zero)?,
            idx(&d.one)?,
            dag_unit,
            true,
        )
    }
}

impl Pair for FinitePair {
    type El = u16;

    fn name(&self) -> &str {
        &self.name
    }
    fn zero(&self) -> u16 {
        self.zero
    }
    fn one(&self) -> u16 {
        self.one
    }
    fn add(&self, a: &u16, b: &u16) -> u16 {
        match &self.ops {
            FiniteOps::Tables { add, .. } => add[*a as usize * self.names.len() + *b as usize],
            FiniteOps::PowerSet { .. } => self.ps_add(*a, *b),
        }
    }
    fn mul(&self, a: &u16, b: &u16) -> u16 {
        match &self.ops {
            FiniteOps::Tables { mul, .. } => mul[*a as usize * self.names.len() + *b as usize],
            FiniteOps::PowerSet { .. } => self.ps_mul(*a, *b),
        }
    }
    fn is_tangible(&self, a: &u16) -> bool {
        self.tangible[*a as usize]
    }
    fn is_null(&self, a: &u16) -> bool {
        self.null[*a as usize]
    }
    fn dag_unit(&self) -> Option<u16> {
        self.dag_unit
    }
    fn caps(&self) -> Caps {
        self.caps
    }
    fn elements(&self) -> Option<Vec<u16>> {
        Some((0..self.names.len() as u16).collect())
    }
    fn subset_decision(&self, a: &u16, b: &u16) -> Option<bool> {
        self.subset_mask
            .as_ref()
            .map(|m| m[*a as usize] & !m[*b as usize] == 0)
    }
    fn canonical_rel(&self) -> RelKind {
        self.canonical
    }
    fn el_name(&self, a: &u16) -> String {
        self.names[*a as usize].clone()
    }
    fn parse_el(&self, s: &str) -> Option<u16> {
        self.names.iter().position(|x| x == s).map(|i| i as u16)
    }
}

/// JSON shape of a finite instance: names, row-major index tables, the
/// distinguished subsets and elements.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Descriptor {
    pub carrier: Vec<String>,
    pub add: Vec<Vec<u16>>,
    pub mul: Vec<Vec<u16>>,
    pub tangibles: Vec<String>,
    pub nulls: Vec<String>,
    #[serde(rename = "dagUnit")]
    pub dag_unit: Option<String>,
    pub zero: String,
    pub one: String,
}

/// Build a table-backed copy of any enumerable pair.
pub fn materialize<P: Pair>(p: &P, name: &str) -> Result<FinitePair> {
    let els = p
        .elements()
        .ok_or_else(|| KernelError::Unsupported(format!("`{}` is not enumerable", p.name())))?;
    if els.len() > u16::MAX as usize {
        return Err(KernelError::TooLarge(format!(
            "carrier of {} elements",
            els.len()
        )));
    }
    let index: BTreeMap<&P::El, u16> = els.iter().enumerate().map(|(i, e)| (e, i as u16)).collect();
    let n = els.len();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            add[i * n + j] = index[&p.add(a, b)];
            mul[i * n + j] = index[&p.mul(a, b)];
        }
    }
    FinitePair::from_tables(
        name,
        els.iter().map(|e| p.el_name(e)).collect(),
        add,
        mul,
        els.iter().map(|e| p.is_tangible(e)).collect(),
        els.iter().map(|e| p.is_null(e)).collect(),
        index[&p.zero()],
        index[&p.one()],
        p.dag_unit().map(|d| index[&d]),
        p.caps().distributive,
    )
}

/// The doubled pair of a semiring: carrier `A x A`, componentwise addition,
/// twist multiplication, diagonal null part, tangibles on the two axes.
#[derive(Debug, Clone)]
pub struct Doubled<P: Pair> {
    pub base: P,
    name: String,
}

impl<P: Pair> Doubled<P> {
    pub fn new(base: P) -> Self {
        let name = format!("doubled-{}", base.name());
        Doubled { base, name }
    }

    pub fn embed_pos(&self, a: &P::El) -> (P::El, P::El) {
        (a.clone(), self.base.zero())
    }

    /// `||(b1, b2)|| = b1 + b2`, the retract onto the base.
    pub fn abs_value(&self, x: &(P::El, P::El)) -> P::El {
        self.base.add(&x.0, &x.1)
    }
}

impl<P: Pair> Pair for Doubled<P> {
    type El = (P::El, P::El);

    fn name(&self) -> &str {
        &self.name
    }
    fn zero(&self) -> Self::El {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::El {
        (self.base.one(), self.base.zero())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let p = &self.base;
        (
            p.add(&p.mul(&a.0, &b.0), &p.mul(&a.1, &b.1)),
            p.add(&p.mul(&a.0, &b.1), &p.mul(&a.1, &b.0)),
        )
    }
    fn is_tangible(&self, a: &Self::El) -> bool {
        let z = self.base.zero();
        (self.base.is_tangible(&a.0) && a.1 == z) || (self.base.is_tangible(&a.1) && a.0 == z)
    }
    fn is_null(&self, a: &Self::El) -> bool {
        a.0 == a.1
    }
    fn dag_unit(&self) -> Option<Self::El> {
        Some((self.base.zero(), self.base.one()))
    }
    fn caps(&self) -> Caps {
        self.base.caps()
    }
    fn elements(&self) -> Option<Vec<Self::El>> {
        let els = self.base.elements()?;
        Some(
            els.iter()
                .flat_map(|a| els.iter().map(move |b| (a.clone(), b.clone())))
                .collect(),
        )
    }
    fn sample(&self) -> Vec<Self::El> {
        if self.caps().enumerable {
            return self.elements().unwrap();
        }
        let s = self.base.sample();
        s.iter()
            .flat_map(|a| s.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }
    fn el_name(&self, a: &Self::El) -> String {
        format!("({},{})", self.base.el_name(&a.0), self.base.el_name(&a.1))
    }
    fn parse_el(&self, s: &str) -> Option<Self::El> {
        let inner = s.strip_prefix('(')?.strip_suffix(')')?;
        let (l, r) = inner.split_once(',')?;
        Some((self.base.parse_el(l.trim())?, self.base.parse_el(r.trim())?))
    }
    fn search_palette(&self) -> Vec<Self::El> {
        let z = self.base.zero();
        self.base
            .search_palette()
            .into_iter()
            .flat_map(|t| [(t.clone(), z.clone()), (z.clone(), t)])
            .collect()
    }
}
