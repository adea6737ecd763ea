//! Congruences of finite pairs: enumeration over the partition lattice with
//! closure pruning, quotient pairs, kernel congruences of paired maps, the
//! twist-product spectrum (prime, semiprime, irreducible), and the locus
//! correspondence between polynomial systems and congruences.

use crate::pairs::{FinitePair, Pair};
use crate::poly::{eval_multi, Multi, Poly};
use crate::{KernelError, Result};
use std::collections::BTreeSet;

/// A partition of the carrier that is a subalgebra of `A x A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Congruence {
    pub class_of: Vec<u16>,
}

impl Congruence {
    pub fn diagonal(n: usize) -> Self {
        Congruence {
            class_of: (0..n as u16).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence {
            class_of: vec![0; n],
        }
    }

    pub fn related(&self, a: u16, b: u16) -> bool {
        self.class_of[a as usize] == self.class_of[b as usize]
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn classes(&self) -> Vec<Vec<u16>> {
        let k = self
            .class_of
            .iter()
            .copied()
            .max()
            .map(|m| m as usize + 1)
            .unwrap_or(0);
        let mut out = vec![Vec::new(); k];
        for (i, c) in self.class_of.iter().enumerate() {
            out[*c as usize].push(i as u16);
        }
        out.retain(|c| !c.is_empty());
        out
    }

    /// Does this congruence refine into `coarser` (relation containment)?
    pub fn contained_in(&self, coarser: &Congruence) -> bool {
        let n = self.class_of.len();
        for a in 0..n as u16 {
            for b in 0..n as u16 {
                if self.related(a, b) && !coarser.related(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Partition meet: the intersection of the two relations.
    pub fn intersect(&self, other: &Congruence) -> Congruence {
        let n = self.class_of.len();
        let mut seen: Vec<(u16, u16)> = Vec::new();
        let mut class_of = vec![0u16; n];
        for i in 0..n {
            let key = (self.class_of[i], other.class_of[i]);
            match seen.iter().position(|k| *k == key) {
                Some(c) => class_of[i] = c as u16,
                None => {
                    class_of[i] = seen.len() as u16;
                    seen.push(key);
                }
            }
        }
        Congruence { class_of }
    }

    /// Null restriction: the related pairs inside the null part.
    pub fn null_restriction(&self, p: &FinitePair) -> Vec<(u16, u16)> {
        let n = self.class_of.len() as u16;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.related(a, b) && p.is_null(&a) && p.is_null(&b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Closure of a partition as a subalgebra of `A x A`.
pub fn is_congruence(p: &FinitePair, c: &Congruence) -> bool {
    let n = p.carrier_len() as u16;
    for a in 0..n {
        for b in 0..n {
            if !c.related(a, b) {
                continue;
            }
            for x in 0..n {
                for y in 0..n {
                    if !c.related(x, y) {
                        continue;
                    }
                    if !c.related(p.add(&a, &x), p.add(&b, &y))
                        || !c.related(p.mul(&a, &x), p.mul(&b, &y))
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All congruences of a pair with carrier at most six, by walking restricted
/// growth strings and keeping the partitions that close.
pub fn enumerate_congruences(p: &FinitePair) -> Result<Vec<Congruence>> {
    let n = p.carrier_len();
    if n > 6 {
        return Err(KernelError::TooLarge(format!(
            "congruence enumeration over a {n}-element carrier"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0u16; n];
    loop {
        let c = Congruence {
            class_of: rgs.clone(),
        };
        if is_congruence(p, &c) {
            out.push(c);
        }
        // Next restricted growth string.
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let max_prev = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prev {
                rgs[i] += 1;
                for x in rgs.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
            // carry
        }
    }
}

/// Quotient pair: classes as elements, null part the image of the null
/// part, tangibles the classes meeting the tangible monoid.
pub fn quotient_pair(p: &FinitePair, c: &Congruence) -> Result<FinitePair> {
    let classes = c.classes();
    let k = classes.len();
    let rep = |cls: u16| classes[cls as usize][0];
    let cls_of = |e: u16| c.class_of[e as usize];
    let mut add = vec![0u16; k * k];
    let mut mul = vec![0u16; k * k];
    for i in 0..k {
        for j in 0..k {
            add[i * k + j] = cls_of(p.add(&rep(i as u16), &rep(j as u16)));
            mul[i * k + j] = cls_of(p.mul(&rep(i as u16), &rep(j as u16)));
        }
    }
    let names = classes
        .iter()
        .map(|cl| {
            format!(
                "[{}]",
                cl.iter()
                    .map(|e| p.el_name(e))
                    .collect::<Vec<_>>()
                    .join("|")
            )
        })
        .collect();
    let tangible = classes
        .iter()
        .map(|cl| cl.iter().any(|e| p.is_tangible(e)))
        .collect();
    let null = classes
        .iter()
        .map(|cl| cl.iter().any(|e| p.is_null(e)))
        .collect();
    FinitePair::from_tables(
        &format!("{}-mod", p.name()),
        names,
        add,
        mul,
        tangible,
        null,
        cls_of(p.zero()),
        cls_of(p.one()),
        p.dag_unit().map(cls_of),
        p.caps().distributive,
    )
}

/// Kernel congruence of a graph map together with its null restriction:
/// related pairs mapping equal, null-restricted pairs mapping into the
/// target null part.
pub fn kernel_congruence(
    p: &FinitePair,
    q: &FinitePair,
    graph: &[u16],
) -> (Congruence, Vec<(u16, u16)>) {
    let n = p.carrier_len();
    let mut seen: Vec<u16> = Vec::new();
    let mut class_of = vec![0u16; n];
    for i in 0..n {
        let key = graph[i];
        match seen.iter().position(|k| *k == key) {
            Some(c) => class_of[i] = c as u16,
            None => {
                class_of[i] = seen.len() as u16;
                seen.push(key);
            }
        }
    }
    let c = Congruence { class_of };
    let mut nulls = Vec::new();
    for a in 0..n as u16 {
        for b in 0..n as u16 {
            if c.related(a, b) && q.is_null(&graph[a as usize]) {
                nulls.push((a, b));
            }
        }
    }
    (c, nulls)
}

/// Factor a paired map through its kernel projection followed by an
/// embedding; checks the composite reproduces the map elementwise.
pub fn decompose(p: &FinitePair, q: &FinitePair, graph: &[u16]) -> Result<bool> {
    let (c, _) = kernel_congruence(p, q, graph);
    let classes = c.classes();
    // Embedding of each class by the common image of its members.
    let mut embed = vec![0u16; classes.len()];
    for (i, cl) in classes.iter().enumerate() {
        let img = graph[cl[0] as usize];
        if cl.iter().any(|e| graph[*e as usize] != img) {
            return Err(KernelError::Invalid(
                "kernel classes must map uniformly".into(),
            ));
        }
        embed[i] = img;
    }
    Ok((0..p.carrier_len()).all(|b| embed[c.class_of[b] as usize] == graph[b]))
}

/// Twist product of two congruences viewed inside the doubled structure:
/// the set of twist products of member pairs, exactly as defined, without
/// closing to a congruence.
pub fn twist_product(p: &FinitePair, c1: &Congruence, c2: &Congruence) -> BTreeSet<(u16, u16)> {
    let n = p.carrier_len() as u16;
    let mut pairs1 = Vec::new();
    let mut pairs2 = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if c1.related(a, b) {
                pairs1.push((a, b));
            }
            if c2.related(a, b) {
                pairs2.push((a, b));
            }
        }
    }
    let mut out = BTreeSet::new();
    for (x1, y1) in &pairs1 {
        for (x2, y2) in &pairs2 {
            let u = p.add(&p.mul(x1, x2), &p.mul(y1, y2));
            let v = p.add(&p.mul(x1, y2), &p.mul(y1, x2));
            out.insert((u, v));
        }
    }
    out
}

fn twist_inside(p: &FinitePair, c1: &Congruence, c2: &Congruence, target: &Congruence) -> bool {
    twist_product(p, c1, c2)
        .iter()
        .all(|(u, v)| target.related(*u, *v))
}

pub fn is_semiprime(p: &FinitePair, c: &Congruence, all: &[Congruence]) -> bool {
    all.iter()
        .all(|c1| !(c.contained_in(c1) && twist_inside(p, c1, c1, c)) || c1 == c)
}

pub fn is_prime(p: &FinitePair, c: &Congruence, all: &[Congruence]) -> bool {
    for c1 in all {
        if !c.contained_in(c1) {
            continue;
        }
        for c2 in all {
            if !c.contained_in(c2) {
                continue;
            }
            if twist_inside(p, c1, c2, c) && c1 != c && c2 != c {
                return false;
            }
        }
    }
    true
}

pub fn is_irreducible(c: &Congruence, all: &[Congruence]) -> bool {
    for c1 in all {
        if !c.contained_in(c1) {
            continue;
        }
        for c2 in all {
            if !c.contained_in(c2) {
                continue;
            }
            if &c1.intersect(c2) == c && c1 != c && c2 != c {
                return false;
            }
        }
    }
    true
}

/// Intersection of all primes containing `c`; the semiprime
/// decomposition claim compares this with `c` itself.
pub fn intersection_of_primes_above(
    p: &FinitePair,
    c: &Congruence,
    all: &[Congruence],
) -> Option<Congruence> {
    let mut acc: Option<Congruence> = None;
    for c1 in all {
        if c.contained_in(c1) && is_prime(p, c1, all) {
            acc = Some(match acc {
                None => c1.clone(),
                Some(prev) => prev.intersect(c1),
            });
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Null loci and the congruence correspondence.
// ---------------------------------------------------------------------------

pub type MPoly = Poly<Multi, u16>;

/// All points of `A^nvars`.
pub fn all_points(p: &FinitePair, nvars: usize) -> Vec<Vec<u16>> {
    let els = p.elements().unwrap();
    let mut out: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|v| {
                els.iter().map(move |e| {
                    let mut v2 = v.clone();
                    v2.push(*e);
                    v2
                })
            })
            .collect();
    }
    out
}

/// The null locus of a polynomial family: points where every polynomial
/// evaluates into the null part.
pub fn a0_locus(p: &FinitePair, polys: &[MPoly], nvars: usize) -> Vec<Vec<u16>> {
    all_points(p, nvars)
        .into_iter()
        .filter(|pt| polys.iter().all(|f| p.is_null(&eval_multi(p, f, pt))))
        .collect()
}

/// All monomial keys in `nvars` variables of total degree at most `deg`.
fn monomial_keys(nvars: usize, deg: u32) -> Vec<Multi> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=deg).map(move |e| {
                    let mut v2 = v.clone();
                    v2.push(e);
                    v2
                })
            })
            .collect();
    }
    out.into_iter()
        .filter(|v| v.iter().sum::<u32>() <= deg)
        .map(Multi)
        .collect()
}

/// All polynomials over the carrier with bounded degree; refused when the
/// family explodes.
pub fn bounded_polys(p: &FinitePair, nvars: usize, deg: u32) -> Result<Vec<MPoly>> {
    let keys = monomial_keys(nvars, deg);
    let els = p.elements().unwrap();
    let count = (els.len() as u64).checked_pow(keys.len() as u32);
    if count.map(|c| c > 1_000_000).unwrap_or(true) {
        return Err(KernelError::TooLarge("bounded polynomial family".into()));
    }
    let mut out: Vec<MPoly> = vec![Poly::zero()];
    for k in keys {
        let mut next = Vec::new();
        for f in &out {
            for e in &els {
                let mut f2 = f.clone();
                if *e != p.zero() {
                    f2.terms.insert(k.clone(), *e);
                }
                next.push(f2);
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The congruence a locus induces on the bounded polynomial family,
/// represented by the locus itself: two polynomials are related when they
/// agree on every point, null-related when they agree inside the null part.
#[derive(Debug, Clone)]
pub struct LocusCong {
    pub points: Vec<Vec<u16>>,
}

impl LocusCong {
    pub fn related(&self, p: &FinitePair, f: &MPoly, g: &MPoly) -> bool {
        self.points
            .iter()
            .all(|pt| eval_multi(p, f, pt) == eval_multi(p, g, pt))
    }
    pub fn null_related(&self, p: &FinitePair, f: &MPoly, g: &MPoly) -> bool {
        self.points.iter().all(|pt| {
            let v = eval_multi(p, f, pt);
            v == eval_multi(p, g, pt) && p.is_null(&v)
        })
    }
}

/// Recover the locus from the congruence of a locus over the bounded
/// family: the points every related pair agrees on, landing in the null
/// part for null-related pairs.
pub fn z_of_locus_cong(
    p: &FinitePair,
    lc: &LocusCong,
    nvars: usize,
    deg: u32,
) -> Result<Vec<Vec<u16>>> {
    let family = bounded_polys(p, nvars, deg)?;
    let points = all_points(p, nvars);
    let mut alive = vec![true; points.len()];
    // Precompute value tables.
    let tables: Vec<Vec<u16>> = family
        .iter()
        .map(|f| points.iter().map(|pt| eval_multi(p, f, pt)).collect())
        .collect();
    let z_idx: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, pt)| lc.points.contains(pt))
        .map(|(i, _)| i)
        .collect();
    for (fi, ft) in tables.iter().enumerate() {
        for (gi, gt) in tables.iter().enumerate() {
            if gi < fi {
                continue;
            }
            let agree = z_idx.iter().all(|i| ft[*i] == gt[*i]);
            if !agree {
                continue;
            }
            let null_agree = z_idx.iter().all(|i| p.is_null(&ft[*i]));
            for (i, a) in alive.iter_mut().enumerate() {
                if !*a {
                    continue;
                }
                if ft[i] != gt[i] || (null_agree && !p.is_null(&ft[i])) {
                    *a = false;
                }
            }
        }
    }
    Ok(points
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(pt, _)| pt)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::pairs::{verify_pair_axioms, Pair};
    use crate::poly::from_terms;

    #[test]
    fn boolean_has_exactly_two_congruences() {
        let p = instances::boolean();
        let cs = enumerate_congruences(&p).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.contains(&Congruence::diagonal(2)));
        assert!(cs.contains(&Congruence::total(2)));
    }

    #[test]
    fn supertropical_boolean_congruences() {
        let p = instances::supertropical_boolean();
        let cs = enumerate_congruences(&p).unwrap();
        // diag, total, and the ghost collapse identifying 1 with mu1.
        assert_eq!(cs.len(), 3);
        let collapse = cs
            .iter()
            .find(|c| c.class_count() == 2)
            .expect("ghost collapse exists");
        let one = p.parse_el("1").unwrap();
        let g = p.parse_el("mu1").unwrap();
        assert!(collapse.related(one, g));
        assert!(!collapse.related(p.zero(), one));

        // Its quotient is the two-element idempotent pair, re-verified.
        let q = quotient_pair(&p, collapse).unwrap();
        assert_eq!(q.carrier_len(), 2);
        assert!(verify_pair_axioms(&q).all_ok());
    }

    #[test]
    fn diagonal_quotient_is_isomorphic() {
        let p = instances::supertropical_boolean();
        let q = quotient_pair(&p, &Congruence::diagonal(3)).unwrap();
        assert_eq!(q.carrier_len(), p.carrier_len());
        for a in p.elements().unwrap() {
            for b in p.elements().unwrap() {
                assert_eq!(q.add(&a, &b), p.add(&a, &b));
            }
        }
    }

    #[test]
    fn kernel_of_injective_is_diagonal() {
        let p = instances::supertropical_boolean();
        let graph: Vec<u16> = (0..3).collect();
        let (c, _) = kernel_congruence(&p, &p, &graph);
        assert_eq!(c, Congruence::diagonal(3));
        assert!(decompose(&p, &p, &graph).unwrap());
    }

    #[test]
    fn abs_kernel_on_doubled_boolean() {
        let d = instances::doubled_boolean();
        let b = instances::boolean();
        // ||(x, y)|| = x + y mapped into the boolean pair.
        let graph: Vec<u16> = d
            .elements()
            .unwrap()
            .iter()
            .map(|e| {
                let name = d.el_name(e);
                let inner = name.trim_start_matches('(').trim_end_matches(')');
                let (x, y) = inner.split_once(',').unwrap();
                let xv: u16 = x.parse().unwrap();
                let yv: u16 = y.parse().unwrap();
                b.add(&xv, &yv)
            })
            .collect();
        let (c, _) = kernel_congruence(&d, &b, &graph);
        // Classes: {(0,0)} and everything of absolute value 1.
        assert_eq!(c.class_count(), 2);
        assert!(decompose(&d, &b, &graph).unwrap());
    }

    #[test]
    fn prime_iff_semiprime_and_irreducible_on_tiny_pairs() {
        for name in [
            "boolean",
            "supertropical-boolean",
            "min-shallow-z2",
            "doubled-boolean",
        ] {
            let inst = instances::lookup(name).unwrap();
            let p = inst.as_finite().unwrap();
            let all = enumerate_congruences(p).unwrap();
            for c in &all {
                let pr = is_prime(p, c, &all);
                let sp = is_semiprime(p, c, &all);
                let ir = is_irreducible(c, &all);
                assert_eq!(pr, sp && ir, "{name}: {:?}", c.class_of);
            }
            // Intersections of semiprimes are semiprime.
            for c1 in &all {
                for c2 in &all {
                    if is_semiprime(p, c1, &all) && is_semiprime(p, c2, &all) {
                        assert!(is_semiprime(p, &c1.intersect(c2), &all), "{name}");
                    }
                }
            }
            // Semiprimes decompose as intersections of primes above them.
            for c in &all {
                if is_semiprime(p, c, &all) {
                    let inter = intersection_of_primes_above(p, c, &all).expect("some prime above");
                    assert_eq!(&inter, c, "{name}");
                }
            }
        }
    }

    #[test]
    fn locus_and_correspondence() {
        let p = instances::supertropical_boolean();
        // f = x over one variable: the locus is the null part.
        let f: MPoly = from_terms(&p, vec![(Multi(vec![1]), p.one())]);
        let z = a0_locus(&p, &[f], 1);
        let mut names: Vec<String> = z.iter().map(|pt| p.el_name(&pt[0])).collect();
        names.sort();
        assert_eq!(names, vec!["0", "mu1"]);

        // The empty family cuts out the whole space.
        assert_eq!(a0_locus(&p, &[], 1).len(), 3);

        // Z(cong(Z)) = Z for this locus at degree 2.
        let lc = LocusCong { points: z.clone() };
        let z2 = z_of_locus_cong(&p, &lc, 1, 2).unwrap();
        assert_eq!(z2, z);
    }
}
