//! The phase hyperfield on exact rational turns: points of the unit circle
//! with multivalued addition, plus the descriptor algebra of its power-set
//! pair. A set descriptor is a finite union of points and open arcs with an
//! optional zero marker; all endpoints are rational turns in `[0, 1)`, so
//! every computation is exact.

use crate::pairs::{Caps, Pair, RelKind};
use num_rational::Rational64;
use num_traits::Zero;
use std::collections::BTreeSet;

pub type Rat = Rational64;

fn norm(q: Rat) -> Rat {
    q - q.floor()
}

fn half() -> Rat {
    Rat::new(1, 2)
}

pub fn antipode(x: Rat) -> Rat {
    norm(x + half())
}

/// Finite symbolic subset of the phase hyperfield: optional complex zero,
/// isolated circle points, open arcs `(start, start + len)` with
/// `len` in `(0, 1]`, or the full circle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PhaseSet {
    pub has_zero: bool,
    pub full: bool,
    pub points: BTreeSet<Rat>,
    /// Sorted, disjoint, maximal open arcs as `(start, len)`.
    pub arcs: Vec<(Rat, Rat)>,
}

impl PhaseSet {
    pub fn zero_marker() -> Self {
        PhaseSet {
            has_zero: true,
            ..Default::default()
        }
    }

    pub fn point(x: Rat) -> Self {
        PhaseSet {
            points: [norm(x)].into(),
            ..Default::default()
        }
    }

    pub fn arc(start: Rat, len: Rat) -> Self {
        normalize(false, [].into(), vec![(norm(start), len)])
    }

    pub fn with_zero(mut self) -> Self {
        self.has_zero = true;
        self
    }

    pub fn is_empty(&self) -> bool {
        !self.has_zero && !self.full && self.points.is_empty() && self.arcs.is_empty()
    }

    /// Circle part as points and arcs, decomposing the full circle.
    fn parts(&self) -> (BTreeSet<Rat>, Vec<(Rat, Rat)>) {
        if self.full {
            ([Rat::zero()].into(), vec![(Rat::zero(), Rat::new(1, 1))])
        } else {
            (self.points.clone(), self.arcs.clone())
        }
    }

    pub fn contains_point(&self, x: Rat) -> bool {
        if self.full {
            return true;
        }
        let x = norm(x);
        self.points.contains(&x) || self.arcs.iter().any(|(s, l)| in_open(x, *s, *l))
    }

    pub fn union(&self, other: &PhaseSet) -> PhaseSet {
        if self.full || other.full {
            return PhaseSet {
                has_zero: self.has_zero || other.has_zero,
                full: true,
                ..Default::default()
            };
        }
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().copied());
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().copied());
        normalize(self.has_zero || other.has_zero, pts, arcs)
    }

    /// Containment of descriptors; exact for normalized values.
    pub fn subset_of(&self, other: &PhaseSet) -> bool {
        if self.has_zero && !other.has_zero {
            return false;
        }
        if other.full {
            return true;
        }
        if self.full {
            return false;
        }
        for p in &self.points {
            if !other.contains_point(*p) {
                return false;
            }
        }
        for (s, l) in &self.arcs {
            if !arc_covered(*s, *l, &other.arcs) {
                return false;
            }
        }
        true
    }

    pub fn rotate(&self, by: Rat) -> PhaseSet {
        if self.full {
            return self.clone();
        }
        PhaseSet {
            has_zero: self.has_zero,
            full: false,
            points: self.points.iter().map(|p| norm(*p + by)).collect(),
            arcs: {
                let mut a: Vec<(Rat, Rat)> =
                    self.arcs.iter().map(|(s, l)| (norm(*s + by), *l)).collect();
                a.sort();
                a
            },
        }
    }

    pub fn display(&self) -> String {
        if self.full {
            return if self.has_zero {
                "{circle,0}"
            } else {
                "{circle}"
            }
            .to_string();
        }
        let mut parts = Vec::new();
        if self.has_zero {
            parts.push("0".to_string());
        }
        for p in &self.points {
            parts.push(format!("p{p}"));
        }
        for (s, l) in &self.arcs {
            parts.push(format!("({} {})", s, norm(*s + *l)));
        }
        format!("{{{}}}", parts.join(","))
    }
}

fn in_open(x: Rat, start: Rat, len: Rat) -> bool {
    let d = norm(x - start);
    !d.is_zero() && d < len
}

/// Is the open arc `(s, s+l)` covered by the union of `arcs`?
fn arc_covered(s: Rat, l: Rat, arcs: &[(Rat, Rat)]) -> bool {
    // Work relative to s: target is (0, l); subtract each arc.
    let mut uncovered = vec![(Rat::zero(), l)];
    for (s2, l2) in arcs {
        let u = norm(*s2 - s);
        let mut segs = vec![(u, (u + l2).min(Rat::new(1, 1)))];
        if u + l2 > Rat::new(1, 1) {
            segs.push((Rat::zero(), u + l2 - Rat::new(1, 1)));
        }
        for (a, b) in segs {
            let mut next = Vec::new();
            for (x, y) in uncovered {
                // Remove open (a,b) from open (x,y): endpoints of the removed
                // part are closed remnants; single points left behind are not
                // covered by other arcs in a normalized descriptor, so treat
                // any positive-length remnant as uncovered and zero-length as
                // covered at that side.
                if b <= x || a >= y {
                    next.push((x, y));
                    continue;
                }
                if a > x {
                    next.push((x, a));
                }
                if b < y {
                    next.push((b, y));
                }
            }
            uncovered = next;
        }
    }
    uncovered.iter().all(|(x, y)| x >= y)
}

/// Canonical form: merge overlapping arcs, absorb interior points, glue
/// arcs joined by a point, collapse a covered circle to `full`.
fn normalize(has_zero: bool, points: BTreeSet<Rat>, raw: Vec<(Rat, Rat)>) -> PhaseSet {
    let one = Rat::new(1, 1);
    let mut arcs: Vec<(Rat, Rat)> = Vec::new();
    for (s, l) in raw {
        if l <= Rat::zero() {
            continue;
        }
        if l >= one {
            // Open arc of length one is the circle minus its start point.
            if points.contains(&norm(s)) || l > one {
                return PhaseSet {
                    has_zero,
                    full: true,
                    ..Default::default()
                };
            }
            arcs.push((norm(s), one));
        } else {
            arcs.push((norm(s), l));
        }
    }
    if arcs.is_empty() {
        return PhaseSet {
            has_zero,
            full: false,
            points,
            arcs,
        };
    }

    // Find a gap: a circle point covered by neither arcs nor points.
    let mut candidates: Vec<Rat> = Vec::new();
    for (s, l) in &arcs {
        candidates.push(*s);
        candidates.push(norm(*s + *l));
    }
    candidates.sort();
    candidates.dedup();
    let mut gap = None;
    let covered = |x: Rat| points.contains(&x) || arcs.iter().any(|(s, l)| in_open(x, *s, *l));
    for c in &candidates {
        if !covered(*c) {
            gap = Some(*c);
            break;
        }
    }
    if gap.is_none() {
        // Midpoints of consecutive candidate gaps.
        let n = candidates.len();
        for i in 0..n {
            let a = candidates[i];
            let b = if i + 1 < n {
                candidates[i + 1]
            } else {
                candidates[0] + one
            };
            if b > a {
                let mid = norm((a + b) / Rat::new(2, 1));
                if !covered(mid) {
                    gap = Some(mid);
                    break;
                }
            }
        }
    }
    let Some(g) = gap else {
        return PhaseSet {
            has_zero,
            full: true,
            ..Default::default()
        };
    };

    // Unroll relative to the gap: all arcs live inside (0, 1) strictly
    // around g... shift so the gap is at 0.
    let mut segs: Vec<(Rat, Rat)> = Vec::new();
    for (s, l) in &arcs {
        let u = norm(*s - g);
        // The gap is uncovered, so the arc cannot cross 0 in shifted coords.
        segs.push((u, u + l));
    }
    segs.sort();
    let shifted_pts: BTreeSet<Rat> = points.iter().map(|p| norm(*p - g)).collect();

    let mut merged: Vec<(Rat, Rat)> = Vec::new();
    for (a, b) in segs {
        match merged.last_mut() {
            Some((_, e)) if a < *e => {
                if b > *e {
                    *e = b;
                }
            }
            Some((_, e)) if a == *e && shifted_pts.contains(&norm(a)) => {
                if b > *e {
                    *e = b;
                }
            }
            _ => merged.push((a, b)),
        }
    }
    // Drop points interior to (or gluing) merged arcs.
    let final_pts: BTreeSet<Rat> = shifted_pts
        .iter()
        .filter(|p| !merged.iter().any(|(a, b)| **p > *a && **p < *b))
        .copied()
        .collect();

    let mut out_arcs: Vec<(Rat, Rat)> = merged
        .into_iter()
        .map(|(a, b)| (norm(a + g), b - a))
        .collect();
    out_arcs.sort();
    let out_points: BTreeSet<Rat> = final_pts.iter().map(|p| norm(*p + g)).collect();
    if out_arcs.len() == 1 && out_arcs[0].1 >= one {
        let (s, l) = out_arcs[0];
        if l > one || out_points.contains(&s) {
            return PhaseSet {
                has_zero,
                full: true,
                ..Default::default()
            };
        }
    }
    PhaseSet {
        has_zero,
        full: false,
        points: out_points,
        arcs: out_arcs,
    }
}

/// Hypersum of two circle points: equal points stay put, antipodes span
/// `{x, 0, -x}`, anything else is the open shorter arc between them.
pub fn hsum_points(x: Rat, y: Rat) -> PhaseSet {
    let (x, y) = (norm(x), norm(y));
    if x == y {
        return PhaseSet::point(x);
    }
    if y == antipode(x) {
        let mut s = PhaseSet::point(x).union(&PhaseSet::point(y));
        s.has_zero = true;
        return s;
    }
    let d = norm(y - x);
    if d < half() {
        PhaseSet::arc(x, d)
    } else {
        PhaseSet::arc(y, Rat::new(1, 1) - d)
    }
}

/// Does the open window `(a, a+w)` meet the circle part of `set`?
fn window_meets(set: &(BTreeSet<Rat>, Vec<(Rat, Rat)>), a: Rat, w: Rat) -> bool {
    let (points, arcs) = set;
    if points.iter().any(|p| {
        let r = norm(*p - a);
        !r.is_zero() && r < w
    }) {
        return true;
    }
    arcs.iter().any(|(s, l)| {
        let u = norm(*s - a);
        u < w || u + *l > Rat::new(1, 1)
    })
}

/// Largest effective supremum (relative to `z - 1/2`) of the components of
/// `set` inside the half-window before `z`, if any.
fn max_component_sup(set: &(BTreeSet<Rat>, Vec<(Rat, Rat)>), z: Rat) -> Option<Rat> {
    let a = norm(z - half());
    let w = half();
    let one = Rat::new(1, 1);
    let mut best: Option<Rat> = None;
    let mut consider = |v: Rat| {
        if v > Rat::zero() {
            let v = v.min(w);
            best = Some(best.map_or(v, |b: Rat| b.max(v)));
        }
    };
    let (points, arcs) = set;
    for p in points {
        let r = norm(*p - a);
        if !r.is_zero() && r < w {
            consider(r);
        }
    }
    for (s, l) in arcs {
        let u = norm(*s - a);
        // Segment (u, u+l) and its wrap (0, u+l-1) intersected with (0, w).
        if u < w {
            consider((u + *l).min(w));
        }
        if u + *l > one {
            consider((u + *l - one).min(w));
        }
    }
    best
}

/// Is `z` interior to some open shorter arc between a point of `na` and a
/// point of `nb`?
fn in_generic_union(
    na: &(BTreeSet<Rat>, Vec<(Rat, Rat)>),
    nb: &(BTreeSet<Rat>, Vec<(Rat, Rat)>),
    z: Rat,
) -> bool {
    let feas = |from: &(BTreeSet<Rat>, Vec<(Rat, Rat)>), to: &(BTreeSet<Rat>, Vec<(Rat, Rat)>)| {
        match max_component_sup(from, z) {
            None => false,
            Some(s) => window_meets(to, z, s),
        }
    };
    feas(na, nb) || feas(nb, na)
}

/// Set-lifted hypersum of two descriptors.
pub fn hsum_sets(a: &PhaseSet, b: &PhaseSet) -> PhaseSet {
    let mut out = PhaseSet::default();
    if a.has_zero {
        out = out.union(b);
    }
    if b.has_zero {
        out = out.union(a);
    }
    let na = a.parts();
    let nb = b.parts();
    let na_empty = na.0.is_empty() && na.1.is_empty();
    let nb_empty = nb.0.is_empty() && nb.1.is_empty();
    if na_empty || nb_empty {
        return out;
    }

    // Equal pairs: the intersection of the circle parts.
    out = out.union(&intersect_parts(&na, &nb));

    // Antipodal pairs: x in A with -x in B contribute {x, 0, -x}.
    let nb_reflected = reflect(&nb);
    let x_part = intersect_parts(&na, &nb_reflected);
    if !x_part.is_empty() {
        let minus = x_part.rotate(half());
        out = out.union(&x_part).union(&minus);
        out.has_zero = true;
    }

    // Generic pairs: scan the union of open shorter arcs over boundary
    // candidates and gap midpoints.
    let mut cands: BTreeSet<Rat> = BTreeSet::new();
    for part in [&na, &nb] {
        for p in &part.0 {
            cands.insert(*p);
            cands.insert(antipode(*p));
        }
        for (s, l) in &part.1 {
            for e in [*s, norm(*s + *l)] {
                cands.insert(e);
                cands.insert(antipode(e));
            }
        }
    }
    let cl: Vec<Rat> = cands.iter().copied().collect();
    let one = Rat::new(1, 1);
    let mut gen_points: BTreeSet<Rat> = BTreeSet::new();
    let mut gen_arcs: Vec<(Rat, Rat)> = Vec::new();
    for (i, c) in cl.iter().enumerate() {
        if in_generic_union(&na, &nb, *c) {
            gen_points.insert(*c);
        }
        let next = if i + 1 < cl.len() {
            cl[i + 1]
        } else {
            cl[0] + one
        };
        if next > *c {
            let mid = norm((*c + next) / Rat::new(2, 1));
            if in_generic_union(&na, &nb, mid) {
                gen_arcs.push((*c, next - *c));
            }
        }
    }
    out.union(&normalize(false, gen_points, gen_arcs))
}

fn reflect(p: &(BTreeSet<Rat>, Vec<(Rat, Rat)>)) -> (BTreeSet<Rat>, Vec<(Rat, Rat)>) {
    (
        p.0.iter().map(|x| antipode(*x)).collect(),
        p.1.iter().map(|(s, l)| (antipode(*s), *l)).collect(),
    )
}

fn intersect_parts(
    a: &(BTreeSet<Rat>, Vec<(Rat, Rat)>),
    b: &(BTreeSet<Rat>, Vec<(Rat, Rat)>),
) -> PhaseSet {
    let contains = |p: &(BTreeSet<Rat>, Vec<(Rat, Rat)>), x: Rat| {
        p.0.contains(&x) || p.1.iter().any(|(s, l)| in_open(x, *s, *l))
    };
    let mut points: BTreeSet<Rat> = BTreeSet::new();
    for x in &a.0 {
        if contains(b, *x) {
            points.insert(*x);
        }
    }
    for x in &b.0 {
        if contains(a, *x) {
            points.insert(*x);
        }
    }
    let one = Rat::new(1, 1);
    let mut arcs = Vec::new();
    for (s1, l1) in &a.1 {
        for (s2, l2) in &b.1 {
            let u = norm(*s2 - *s1);
            let mut segs = vec![(u, (u + *l2).min(one))];
            if u + *l2 > one {
                segs.push((Rat::zero(), u + *l2 - one));
            }
            for (x, y) in segs {
                let lo = x.max(Rat::zero());
                let hi = y.min(*l1);
                if lo < hi {
                    arcs.push((norm(*s1 + lo), hi - lo));
                }
            }
        }
    }
    normalize(false, points, arcs)
}

/// Product of descriptors: rotations on the circle with an absorbing zero.
pub fn mul_sets(a: &PhaseSet, b: &PhaseSet) -> PhaseSet {
    let mut out = PhaseSet::default();
    out.has_zero = a.has_zero || b.has_zero;
    if a.full || b.full {
        let other_empty = if a.full {
            !b.full && b.points.is_empty() && b.arcs.is_empty()
        } else {
            a.points.is_empty() && a.arcs.is_empty()
        };
        if !other_empty || (a.full && b.full) {
            out.full = true;
        }
        return out;
    }
    let mut points = BTreeSet::new();
    let mut arcs = Vec::new();
    for x in &a.points {
        for y in &b.points {
            points.insert(norm(*x + *y));
        }
        for (s, l) in &b.arcs {
            arcs.push((norm(*x + *s), *l));
        }
    }
    for (s, l) in &a.arcs {
        for y in &b.points {
            arcs.push((norm(*s + *y), *l));
        }
        for (s2, l2) in &b.arcs {
            arcs.push((norm(*s + *s2), *l + *l2));
        }
    }
    normalize(out.has_zero, points, arcs)
}

/// The power-set pair of the phase hyperfield. Symbolic: checks sample the
/// declared descriptor list. Distributivity fails on arcs, so the carrier
/// is nd-flagged.
#[derive(Debug, Clone)]
pub struct PhasePair {
    sample_set: Vec<PhaseSet>,
}

impl Default for PhasePair {
    fn default() -> Self {
        Self::new()
    }
}

impl PhasePair {
    pub fn new() -> Self {
        let r = |n: i64, d: i64| Rat::new(n, d);
        let sample_set = vec![
            PhaseSet::zero_marker(),
            PhaseSet::point(Rat::zero()),
            PhaseSet::point(r(1, 2)),
            PhaseSet::point(r(1, 4)),
            PhaseSet::point(r(3, 4)),
            PhaseSet::point(r(1, 8)),
            PhaseSet::point(Rat::zero())
                .union(&PhaseSet::point(r(1, 2)))
                .with_zero(),
            PhaseSet::arc(Rat::zero(), r(1, 8)),
            PhaseSet::point(Rat::zero()).union(&PhaseSet::point(r(1, 4))),
            PhaseSet::point(r(1, 4)).with_zero(),
        ];
        PhasePair { sample_set }
    }
}

impl Pair for PhasePair {
    type El = PhaseSet;

    fn name(&self) -> &str {
        "phase-hyperpair"
    }
    fn zero(&self) -> PhaseSet {
        PhaseSet::zero_marker()
    }
    fn one(&self) -> PhaseSet {
        PhaseSet::point(Rat::zero())
    }
    fn add(&self, a: &PhaseSet, b: &PhaseSet) -> PhaseSet {
        hsum_sets(a, b)
    }
    fn mul(&self, a: &PhaseSet, b: &PhaseSet) -> PhaseSet {
        mul_sets(a, b)
    }
    fn is_tangible(&self, a: &PhaseSet) -> bool {
        !a.has_zero && !a.full && a.arcs.is_empty() && a.points.len() == 1
    }
    fn is_null(&self, a: &PhaseSet) -> bool {
        a.has_zero
    }
    fn dag_unit(&self) -> Option<PhaseSet> {
        Some(PhaseSet::point(half()))
    }
    fn caps(&self) -> Caps {
        Caps {
            enumerable: false,
            leq_decidable: false,
            distributive: false,
            nd_only: true,
        }
    }
    fn elements(&self) -> Option<Vec<PhaseSet>> {
        None
    }
    fn sample(&self) -> Vec<PhaseSet> {
        self.sample_set.clone()
    }
    fn subset_decision(&self, a: &PhaseSet, b: &PhaseSet) -> Option<bool> {
        Some(a.subset_of(b))
    }
    fn canonical_rel(&self) -> RelKind {
        RelKind::Subset
    }
    fn el_name(&self, a: &PhaseSet) -> String {
        a.display()
    }
    fn parse_el(&self, s: &str) -> Option<PhaseSet> {
        // "{0,p1/4,...}" with point and zero entries only.
        let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?;
        let mut out = PhaseSet::default();
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok == "0" {
                out.has_zero = true;
            } else if let Some(p) = tok.strip_prefix('p') {
                let q: Rat = if let Some((n, d)) = p.split_once('/') {
                    Rat::new(n.parse().ok()?, d.parse().ok()?)
                } else {
                    Rat::new(p.parse().ok()?, 1)
                };
                out.points.insert(norm(q));
            } else {
                return None;
            }
        }
        Some(out)
    }
    fn search_palette(&self) -> Vec<PhaseSet> {
        vec![
            PhaseSet::point(Rat::zero()),
            PhaseSet::point(half()),
            PhaseSet::point(Rat::new(1, 4)),
            PhaseSet::point(Rat::new(3, 4)),
        ]
    }
}

/// What a fissure mediator must hit.
pub enum MediatorTarget {
    Zero,
    Point(Rat),
}

/// The set of circle points `a` with the target inside `a1 + a`: a single
/// point for the degenerate cases, an open half-arc otherwise. Exact, so
/// fissure on the phase pair is decided rather than sampled.
pub fn mediator_preimage(a1: Rat, target: &MediatorTarget) -> PhaseSet {
    let a1 = norm(a1);
    match target {
        MediatorTarget::Zero => PhaseSet::point(antipode(a1)),
        MediatorTarget::Point(z) => {
            let z = norm(*z);
            if z == a1 {
                // a = a1 gives {a1}; a = -a1 gives {a1, 0, -a1}.
                return PhaseSet::point(a1).union(&PhaseSet::point(antipode(a1)));
            }
            if z == antipode(a1) {
                return PhaseSet::point(antipode(a1));
            }
            let d = norm(z - a1);
            if d < half() {
                // a strictly past z on the short side.
                PhaseSet::arc(z, half() - d)
            } else {
                PhaseSet::arc(norm(a1 + half()), d - half())
            }
        }
    }
}

/// Nonempty intersection of two descriptors' circle parts.
pub fn meets(a: &PhaseSet, b: &PhaseSet) -> bool {
    !intersect_parts(&a.parts(), &b.parts()).is_empty()
}

/// Exhibit the double-distributivity failure at exact rational angles:
/// returns `(lhs, rhs)` for `S = {1,0,-1}`, the arc `(a b)`, comparing
/// `-(a b) + (a b)` against `S * (a b)`.
pub fn double_distributivity_witness(start: Rat, len: Rat) -> (PhaseSet, PhaseSet) {
    let arc = PhaseSet::arc(start, len);
    let neg = arc.rotate(half());
    let lhs = hsum_sets(&neg, &arc);
    let s = PhaseSet::point(Rat::zero())
        .union(&PhaseSet::point(half()))
        .with_zero();
    let rhs = mul_sets(&s, &arc);
    (lhs, rhs)
}
