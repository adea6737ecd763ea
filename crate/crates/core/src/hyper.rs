//! Hypergroups and hyperfields: multivalued addition, the quotient
//! construction, power-set lifting to pairs, and morphism lifting.

use crate::pairs::{Check, FinitePair, Pair, VerifyReport};
use crate::{KernelError, Result};
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// A finite carrier with multivalued addition given as bitmasks and an
/// optional single-valued product.
#[derive(Debug, Clone)]
pub struct FiniteHypergroup {
    pub name: String,
    pub names: Vec<String>,
    pub zero: u8,
    /// `hsum[i * n + j]` is the bitmask of `i + j`.
    pub hsum: Vec<u32>,
    pub mul: Option<Vec<u8>>,
}

impl FiniteHypergroup {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn hsum(&self, a: u8, b: u8) -> u32 {
        self.hsum[a as usize * self.len() + b as usize]
    }

    /// Set-lifted sum of two subsets.
    pub fn hsum_sets(&self, s1: u32, s2: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.len() {
            if s1 >> i & 1 == 0 {
                continue;
            }
            for j in 0..self.len() {
                if s2 >> j & 1 == 1 {
                    out |= self.hsum(i as u8, j as u8);
                }
            }
        }
        out
    }

    pub fn mul_sets(&self, s1: u32, s2: u32) -> Result<u32> {
        let m = self.mul.as_ref().ok_or_else(|| {
            KernelError::Unsupported(format!("hypergroup `{}` has no product", self.name))
        })?;
        let mut out = 0;
        for i in 0..self.len() {
            if s1 >> i & 1 == 0 {
                continue;
            }
            for j in 0..self.len() {
                if s2 >> j & 1 == 1 {
                    out |= 1 << m[i * self.len() + j];
                }
            }
        }
        Ok(out)
    }

    /// The unique hypernegative of `a`, when it exists.
    pub fn hyperneg(&self, a: u8) -> Option<u8> {
        let mut found = None;
        for b in 0..self.len() as u8 {
            if self.hsum(a, b) >> self.zero & 1 == 1 {
                if found.is_some() {
                    return None;
                }
                found = Some(b);
            }
        }
        found
    }

    /// Stringency: every sum of two nonzero elements is a singleton or
    /// contains zero.
    pub fn is_stringent(&self) -> bool {
        (0..self.len() as u8).filter(|a| *a != self.zero).all(|a| {
            (0..self.len() as u8).filter(|b| *b != self.zero).all(|b| {
                let s = self.hsum(a, b);
                s.count_ones() == 1 || s >> self.zero & 1 == 1
            })
        })
    }

    pub fn set_name(&self, mask: u32) -> String {
        let mut parts = Vec::new();
        for i in 0..self.len() {
            if mask >> i & 1 == 1 {
                parts.push(self.names[i].clone());
            }
        }
        format!("{{{}}}", parts.join(","))
    }
}

/// Exhaustive hypergroup (and hyperring, when a product exists) axioms.
pub fn verify_hypergroup(h: &FiniteHypergroup) -> VerifyReport {
    let n = h.len() as u8;
    let mut checks = Vec::new();

    let mut c = Check {
        id: "hsum-commutative".into(),
        ok: true,
        witness: None,
    };
    'comm: for a in 0..n {
        for b in 0..n {
            if h.hsum(a, b) != h.hsum(b, a) {
                c = Check {
                    id: "hsum-commutative".into(),
                    ok: false,
                    witness: Some(format!("{},{}", h.names[a as usize], h.names[b as usize])),
                };
                break 'comm;
            }
        }
    }
    checks.push(c);

    let mut c = Check {
        id: "hsum-associative".into(),
        ok: true,
        witness: None,
    };
    'assoc: for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let lhs = h.hsum_sets(h.hsum(a, b), 1 << d);
                let rhs = h.hsum_sets(1 << a, h.hsum(b, d));
                if lhs != rhs {
                    c = Check {
                        id: "hsum-associative".into(),
                        ok: false,
                        witness: Some(format!(
                            "{},{},{}",
                            h.names[a as usize], h.names[b as usize], h.names[d as usize]
                        )),
                    };
                    break 'assoc;
                }
            }
        }
    }
    checks.push(c);

    let mut c = Check {
        id: "zero-neutral".into(),
        ok: true,
        witness: None,
    };
    for a in 0..n {
        if h.hsum(h.zero, a) != 1 << a {
            c = Check {
                id: "zero-neutral".into(),
                ok: false,
                witness: Some(h.names[a as usize].clone()),
            };
            break;
        }
    }
    checks.push(c);

    let mut c = Check {
        id: "unique-hypernegatives".into(),
        ok: true,
        witness: None,
    };
    for a in 0..n {
        if h.hyperneg(a).is_none() {
            c = Check {
                id: "unique-hypernegatives".into(),
                ok: false,
                witness: Some(h.names[a as usize].clone()),
            };
            break;
        }
    }
    checks.push(c);

    if let Some(m) = &h.mul {
        let prod = |a: u8, b: u8| m[a as usize * h.len() + b as usize];
        let mut c = Check {
            id: "mul-monoid".into(),
            ok: true,
            witness: None,
        };
        'mon: for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if prod(prod(a, b), d) != prod(a, prod(b, d)) {
                        c = Check {
                            id: "mul-monoid".into(),
                            ok: false,
                            witness: Some("associativity".into()),
                        };
                        break 'mon;
                    }
                }
            }
            if prod(h.zero, a) != h.zero || prod(a, h.zero) != h.zero {
                c = Check {
                    id: "mul-monoid".into(),
                    ok: false,
                    witness: Some("zero not absorbing".into()),
                };
                break;
            }
        }
        checks.push(c);

        // Element-level distributivity of the product over the hypersum.
        let mut c = Check {
            id: "mul-distributes".into(),
            ok: true,
            witness: None,
        };
        'dist: for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let lhs = h.mul_sets(1 << a, h.hsum(b, d)).unwrap();
                    let rhs = h.hsum_sets(
                        h.mul_sets(1 << a, 1 << b).unwrap(),
                        h.mul_sets(1 << a, 1 << d).unwrap(),
                    );
                    if lhs != rhs {
                        c = Check {
                            id: "mul-distributes".into(),
                            ok: false,
                            witness: Some(format!(
                                "{}*({} + {})",
                                h.names[a as usize], h.names[b as usize], h.names[d as usize]
                            )),
                        };
                        break 'dist;
                    }
                }
            }
        }
        checks.push(c);
    }

    VerifyReport {
        instance: h.name.clone(),
        sampled: false,
        checks,
    }
}

/// The two-element hyperfield `{0, 1}` with `1 + 1 = {0, 1}`.
pub fn krasner() -> FiniteHypergroup {
    FiniteHypergroup {
        name: "krasner".into(),
        names: vec!["0".into(), "1".into()],
        zero: 0,
        hsum: vec![0b01, 0b10, 0b10, 0b11],
        mul: Some(vec![0, 0, 0, 1]),
    }
}

/// The hyperfield of signs `{0, 1, -1}`.
pub fn sign() -> FiniteHypergroup {
    // order: 0, 1, -1
    let hsum = vec![
        0b001, 0b010, 0b100, // 0 + x
        0b010, 0b010, 0b111, // 1 + x
        0b100, 0b111, 0b100, // -1 + x
    ];
    let mul = vec![0, 0, 0, 0, 1, 2, 0, 2, 1];
    FiniteHypergroup {
        name: "sign".into(),
        names: vec!["0".into(), "1".into(), "-1".into()],
        zero: 0,
        hsum,
        mul: Some(mul),
    }
}

/// Quotient of the prime field `F_p` by a multiplicative subgroup: cosets
/// with hypersum enumerated from representatives.
pub fn quotient_hyperfield_fp(p: u8, subgroup: &[u8]) -> Result<FiniteHypergroup> {
    if p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
        return Err(KernelError::Invalid(format!("{p} is not prime")));
    }
    let g: BTreeSet<u8> = subgroup.iter().copied().collect();
    if !g.contains(&1) || g.iter().any(|x| *x == 0 || *x >= p) {
        return Err(KernelError::Invalid(
            "subgroup must contain 1 and avoid 0".into(),
        ));
    }
    for a in &g {
        for b in &g {
            if !g.contains(&((a * b) % p)) {
                return Err(KernelError::Invalid(
                    "set is not multiplicatively closed".into(),
                ));
            }
        }
    }
    // Cosets: class of a = { a*g }.
    let mut class_of = vec![u8::MAX; p as usize];
    let mut reps: Vec<Vec<u8>> = vec![vec![0]];
    class_of[0] = 0;
    for a in 1..p {
        if class_of[a as usize] != u8::MAX {
            continue;
        }
        let id = reps.len() as u8;
        let coset: Vec<u8> = g.iter().map(|x| (a * x) % p).collect();
        for c in &coset {
            class_of[*c as usize] = id;
        }
        reps.push(coset);
    }
    let n = reps.len();
    let mut hsum = vec![0u32; n * n];
    for (i, ci) in reps.iter().enumerate() {
        for (j, cj) in reps.iter().enumerate() {
            let mut mask = 0u32;
            for a in ci {
                for b in cj {
                    mask |= 1 << class_of[((a + b) % p) as usize];
                }
            }
            hsum[i * n + j] = mask;
        }
    }
    let mut mul = vec![0u8; n * n];
    for (i, ci) in reps.iter().enumerate() {
        for (j, cj) in reps.iter().enumerate() {
            mul[i * n + j] = class_of[((ci[0] * cj[0]) % p) as usize];
        }
    }
    let names = reps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == 0 {
                "0".to_string()
            } else {
                format!(
                    "[{}]",
                    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
                )
            }
        })
        .collect();
    Ok(FiniteHypergroup {
        name: format!("f{p}-mod-subgroup"),
        names,
        zero: 0,
        hsum,
        mul: Some(mul),
    })
}

/// Quotient of a rational sample by the positive elements: the finite
/// symbolic model with carrier `{0, pos, neg}` computed from exact sums.
pub fn quotient_sign_from_rationals(sample: &[Rational64]) -> FiniteHypergroup {
    let class = |q: &Rational64| -> usize {
        if q.is_zero() {
            0
        } else if q.is_positive() {
            1
        } else {
            2
        }
    };
    let mut hsum = vec![0u32; 9];
    for a in sample {
        for b in sample {
            hsum[class(a) * 3 + class(b)] |= 1 << class(&(a + b));
        }
    }
    let mul = vec![0, 0, 0, 0, 1, 2, 0, 2, 1];
    FiniteHypergroup {
        name: "q-mod-positives".into(),
        names: vec!["0".into(), "pos".into(), "neg".into()],
        zero: 0,
        hsum,
        mul: Some(mul),
    }
}

/// Lift a hypergroup to its pair of nonempty subsets: tangibles are the
/// nonzero singletons, nulls the subsets containing zero, addition the
/// set-lifted hypersum. Carriers above twelve elements are refused; beyond
/// table size the operations evaluate subset arithmetic on demand.
pub fn power_set_pair(h: &FiniteHypergroup, name: &str) -> Result<FinitePair> {
    let n = h.len();
    if n > 12 {
        return Err(KernelError::TooLarge(format!(
            "power set of a {n}-element hypergroup"
        )));
    }
    if h.mul.is_none() {
        return Err(KernelError::Unsupported(
            "power-set pair needs a product".into(),
        ));
    }
    let masks: Vec<u32> = (1..(1u32 << n)).collect();
    let size = masks.len();
    let names: Vec<String> = masks.iter().map(|m| h.set_name(*m)).collect();
    let tangible: Vec<bool> = masks
        .iter()
        .map(|m| m.count_ones() == 1 && m >> h.zero & 1 == 0)
        .collect();
    let null: Vec<bool> = masks.iter().map(|m| m >> h.zero & 1 == 1).collect();
    let zero = (1u32 << h.zero) - 1; // index of mask {zero}: mask value 1<<zero, index = mask-1
    let one_mask = {
        let mut one = None;
        let m = h.mul.as_ref().unwrap();
        for cand in 0..n {
            if cand != h.zero as usize
                && (0..n).all(|x| m[cand * n + x] == x as u8 && m[x * n + cand] == x as u8)
            {
                one = Some(1u32 << cand);
            }
        }
        one.ok_or_else(|| KernelError::Invalid("hypergroup product has no unit".into()))?
    };
    // The index of a mask m in `masks` is m - 1; the negation witness is
    // the singleton of the unit's hypernegative.
    let unit_el = (0..n as u8).find(|i| one_mask >> i & 1 == 1).unwrap();
    let dag_idx = h.hyperneg(unit_el).map(|neg| (1u32 << neg) - 1);

    let mut fp = FinitePair::power_set_backed(
        name,
        names,
        tangible,
        null,
        zero as u16,
        (one_mask - 1) as u16,
        dag_idx.map(|d| d as u16),
        h.hsum.clone(),
        h.mul.clone().unwrap(),
        n,
        masks,
    );
    // Full distributivity can fail for power sets; compute it where the
    // carrier is small enough to sweep, and flag conservatively beyond.
    if size > 256 || !full_distributivity(&fp) {
        fp.mark_nd_only();
    }
    Ok(fp)
}

fn full_distributivity(p: &FinitePair) -> bool {
    let els = p.elements().unwrap();
    for a in &els {
        for b in &els {
            for c in &els {
                if p.mul(a, &p.add(b, c)) != p.add(&p.mul(a, b), &p.mul(a, c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Distributivity report of a power-set pair: single (scalars distribute),
/// full (all subsets distribute), and containment-distributivity.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DistributivityReport {
    pub single: bool,
    pub full: bool,
    pub subset_distributive: bool,
    pub witness: Option<String>,
}

pub fn check_distributivity(p: &FinitePair) -> DistributivityReport {
    let els = p.elements().unwrap();
    let tang: Vec<u16> = els.iter().copied().filter(|e| p.is_tangible(e)).collect();
    let mut single = true;
    for a in &tang {
        for b in &els {
            for c in &els {
                if p.mul(a, &p.add(b, c)) != p.add(&p.mul(a, b), &p.mul(a, c)) {
                    single = false;
                }
            }
        }
    }
    let mut witness = None;
    let mut full = true;
    'full: for a in &els {
        for b in &els {
            for c in &els {
                if p.mul(a, &p.add(b, c)) != p.add(&p.mul(a, b), &p.mul(a, c)) {
                    full = false;
                    witness = Some(format!(
                        "{} * ({} + {})",
                        p.el_name(a),
                        p.el_name(b),
                        p.el_name(c)
                    ));
                    break 'full;
                }
            }
        }
    }
    // sum_{i,j} a_i a'_j  is contained in  (sum a_i)(sum a'_j) for tangibles.
    let mut subset_distributive = true;
    'sd: for a1 in &tang {
        for a2 in &tang {
            for b1 in &tang {
                for b2 in &tang {
                    let lhs = p.add(
                        &p.add(&p.mul(a1, b1), &p.mul(a1, b2)),
                        &p.add(&p.mul(a2, b1), &p.mul(a2, b2)),
                    );
                    let rhs = p.mul(&p.add(a1, a2), &p.add(b1, b2));
                    if p.subset_decision(&lhs, &rhs) != Some(true) {
                        subset_distributive = false;
                        break 'sd;
                    }
                }
            }
        }
    }
    DistributivityReport {
        single,
        full,
        subset_distributive,
        witness,
    }
}

/// Lift a zero-preserving map of hypergroups to subsets: `f^(S) = {f(a)}`.
pub fn lift_map(h: &FiniteHypergroup, h2: &FiniteHypergroup, f: &[u8]) -> impl Fn(u32) -> u32 {
    let n = h.len();
    let _ = h2;
    let f = f.to_vec();
    move |mask: u32| {
        let mut out = 0;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                out |= 1 << f[i];
            }
        }
        out
    }
}

/// Weak morphism of hypergroups: zero in a lifted sum forces zero in the
/// image sum; checked over tuples of bounded length.
pub fn is_weak_hyper_morphism(
    h: &FiniteHypergroup,
    h2: &FiniteHypergroup,
    f: &[u8],
    bound: usize,
) -> bool {
    if f[h.zero as usize] != h2.zero {
        return false;
    }
    let mut frontier: Vec<(u32, u32)> = (0..h.len() as u8)
        .map(|a| (1u32 << a, 1u32 << f[a as usize]))
        .collect();
    for _ in 1..bound {
        let mut next = Vec::new();
        for (s, fs) in &frontier {
            for a in 0..h.len() as u8 {
                let s2 = h.hsum_sets(*s, 1 << a);
                let fs2 = h2.hsum_sets(*fs, 1 << f[a as usize]);
                if s2 >> h.zero & 1 == 1 && fs2 >> h2.zero & 1 == 0 {
                    return false;
                }
                next.push((s2, fs2));
            }
        }
        frontier = next;
        frontier.sort_unstable();
        frontier.dedup();
    }
    true
}

/// Strong morphism: `f(a + b)` is contained in `f(a) + f(b)`.
pub fn is_strong_hyper_morphism(h: &FiniteHypergroup, h2: &FiniteHypergroup, f: &[u8]) -> bool {
    if f[h.zero as usize] != h2.zero {
        return false;
    }
    let lift = lift_map(h, h2, f);
    for a in 0..h.len() as u8 {
        for b in 0..h.len() as u8 {
            let img = lift(h.hsum(a, b));
            let target = h2.hsum(f[a as usize], f[b as usize]);
            if img & !target != 0 {
                return false;
            }
        }
    }
    true
}

/// Check a bijection between two finite pairs against both operation
/// tables and the distinguished structure.
pub fn check_pair_isomorphism(p: &FinitePair, q: &FinitePair, map: &[u16]) -> bool {
    let els = p.elements().unwrap();
    if map.len() != els.len() || q.carrier_len() != els.len() {
        return false;
    }
    let mut seen = vec![false; map.len()];
    for m in map {
        if seen[*m as usize] {
            return false;
        }
        seen[*m as usize] = true;
    }
    let f = |e: u16| map[e as usize];
    if f(p.zero()) != q.zero() || f(p.one()) != q.one() {
        return false;
    }
    for a in &els {
        if p.is_tangible(a) != q.is_tangible(&f(*a)) || p.is_null(a) != q.is_null(&f(*a)) {
            return false;
        }
        for b in &els {
            if f(p.add(a, b)) != q.add(&f(*a), &f(*b)) || f(p.mul(a, b)) != q.mul(&f(*a), &f(*b)) {
                return false;
            }
        }
    }
    true
}

/// Check a bijection of hypergroups against hypersum and product tables.
pub fn check_hypergroup_isomorphism(
    h: &FiniteHypergroup,
    h2: &FiniteHypergroup,
    map: &[u8],
) -> bool {
    if h.len() != h2.len() || map.len() != h.len() {
        return false;
    }
    if map[h.zero as usize] != h2.zero {
        return false;
    }
    let lift = lift_map(h, h2, map);
    for a in 0..h.len() as u8 {
        for b in 0..h.len() as u8 {
            if lift(h.hsum(a, b)) != h2.hsum(map[a as usize], map[b as usize]) {
                return false;
            }
            if let (Some(m1), Some(m2)) = (&h.mul, &h2.mul) {
                if map[m1[a as usize * h.len() + b as usize] as usize]
                    != m2[map[a as usize] as usize * h2.len() + map[b as usize] as usize]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Hypergroup JSON: `{"carrier": [...], "hsum": element-list table, "zero": name, "mul": table?}`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct HypergroupJson {
    pub carrier: Vec<String>,
    pub hsum: Vec<Vec<Vec<String>>>,
    pub zero: String,
    pub mul: Option<Vec<Vec<String>>>,
}

pub fn hypergroup_from_json(name: &str, json: &str) -> Result<FiniteHypergroup> {
    let j: HypergroupJson = serde_json::from_str(json).map_err(|e| KernelError::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let n = j.carrier.len();
    if n == 0 || n > 12 {
        return Err(KernelError::Invalid(
            "carrier must have 1..=12 elements".into(),
        ));
    }
    let idx = |s: &str| -> Result<u8> {
        j.carrier
            .iter()
            .position(|x| x == s)
            .map(|i| i as u8)
            .ok_or_else(|| KernelError::Invalid(format!("unknown element `{s}`")))
    };
    if j.hsum.len() != n || j.hsum.iter().any(|r| r.len() != n) {
        return Err(KernelError::Invalid("hsum table must be n x n".into()));
    }
    let mut hsum = vec![0u32; n * n];
    for (i, row) in j.hsum.iter().enumerate() {
        for (k, cell) in row.iter().enumerate() {
            if cell.is_empty() {
                return Err(KernelError::Invalid("hypersums must be nonempty".into()));
            }
            for s in cell {
                hsum[i * n + k] |= 1 << idx(s)?;
            }
        }
    }
    let mul = match &j.mul {
        None => None,
        Some(t) => {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(KernelError::Invalid("mul table must be n x n".into()));
            }
            let mut m = vec![0u8; n * n];
            for (i, row) in t.iter().enumerate() {
                for (k, cell) in row.iter().enumerate() {
                    m[i * n + k] = idx(cell)?;
                }
            }
            Some(m)
        }
    };
    let zero = idx(&j.zero)?;
    Ok(FiniteHypergroup {
        name: name.into(),
        names: j.carrier,
        zero,
        hsum,
        mul,
    })
}

pub fn hypergroup_to_json(h: &FiniteHypergroup) -> HypergroupJson {
    let n = h.len();
    let cell = |mask: u32| -> Vec<String> {
        (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| h.names[i].clone())
            .collect()
    };
    HypergroupJson {
        carrier: h.names.clone(),
        hsum: (0..n)
            .map(|i| (0..n).map(|j| cell(h.hsum(i as u8, j as u8))).collect())
            .collect(),
        zero: h.names[h.zero as usize].clone(),
        mul: h.mul.as_ref().map(|m| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| h.names[m[i * n + j] as usize].clone())
                        .collect()
                })
                .collect()
        }),
    }
}

// ---------------------------------------------------------------------------
// The tropical hyperfield over Q with a bottom: point sums are dominant
// values, ties widen to the full down-set.
// ---------------------------------------------------------------------------

pub type Rat = Rational64;

/// Element of the tropical hyperfield: bottom or a rational value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropEl {
    Bottom,
    Val(Rat),
}

/// Subset descriptor: an optional down-interval `[bottom, bound]` plus
/// finitely many isolated points above it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TropSet {
    pub has_bottom: bool,
    pub down_to: Option<Rat>,
    pub points: BTreeSet<Rat>,
}

impl TropSet {
    pub fn point(e: &TropEl) -> TropSet {
        match e {
            TropEl::Bottom => TropSet {
                has_bottom: true,
                down_to: None,
                points: Default::default(),
            },
            TropEl::Val(q) => TropSet {
                has_bottom: false,
                down_to: None,
                points: [*q].into(),
            },
        }
    }
    pub fn down(q: Rat) -> TropSet {
        TropSet {
            has_bottom: true,
            down_to: Some(q),
            points: Default::default(),
        }
    }
    fn normalize(mut self) -> TropSet {
        if let Some(b) = self.down_to {
            self.has_bottom = true;
            self.points.retain(|p| *p > b);
        }
        self
    }
    pub fn union(&self, other: &TropSet) -> TropSet {
        TropSet {
            has_bottom: self.has_bottom || other.has_bottom,
            down_to: match (self.down_to, other.down_to) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
            points: self.points.union(&other.points).copied().collect(),
        }
        .normalize()
    }
    pub fn contains(&self, e: &TropEl) -> bool {
        match e {
            TropEl::Bottom => self.has_bottom,
            TropEl::Val(q) => {
                self.points.contains(q) || self.down_to.map(|b| *q <= b).unwrap_or(false)
            }
        }
    }
}

/// Hypersum of two tropical points.
pub fn trop_hsum(a: &TropEl, b: &TropEl) -> TropSet {
    match (a, b) {
        (TropEl::Bottom, x) | (x, TropEl::Bottom) => TropSet::point(x),
        (TropEl::Val(x), TropEl::Val(y)) => {
            if x > y {
                TropSet::point(&TropEl::Val(*x))
            } else if y > x {
                TropSet::point(&TropEl::Val(*y))
            } else {
                TropSet::down(*x)
            }
        }
    }
}

/// Set-lifted tropical hypersum.
pub fn trop_hsum_sets(s1: &TropSet, s2: &TropSet) -> TropSet {
    let mut out = TropSet::default();
    let reps = |s: &TropSet| -> Vec<TropEl> {
        let mut v: Vec<TropEl> = s.points.iter().map(|q| TropEl::Val(*q)).collect();
        if s.has_bottom {
            v.push(TropEl::Bottom);
        }
        v
    };
    // Point-point sums.
    for a in reps(s1) {
        for b in reps(s2) {
            out = out.union(&trop_hsum(&a, &b));
        }
    }
    // Interval contributions: [bottom, m] + x = {max} for x > m, down-set to x otherwise.
    let interval = |m: Rat, other: &TropSet| {
        let mut acc = TropSet::down(m); // m + m' for m' <= m covers everything up to m
        for q in &other.points {
            if *q > m {
                acc = acc.union(&TropSet::point(&TropEl::Val(*q)));
            } else {
                acc = acc.union(&TropSet::down(*q));
            }
        }
        if let Some(m2) = other.down_to {
            acc = acc.union(&TropSet::down(m.min(m2)));
        }
        acc
    };
    if let Some(m) = s1.down_to {
        out = out.union(&interval(m, s2));
    }
    if let Some(m) = s2.down_to {
        out = out.union(&interval(m, s1));
    }
    out
}

/// Stringency of the tropical hyperfield on a sample: tangible sums are
/// singletons or contain the bottom.
pub fn trop_stringent_on(sample: &[Rat]) -> bool {
    for a in sample {
        for b in sample {
            let s = trop_hsum(&TropEl::Val(*a), &TropEl::Val(*b));
            let singleton = !s.has_bottom && s.down_to.is_none() && s.points.len() == 1;
            if !(singleton || s.has_bottom) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn krasner_and_sign_tables() {
        let k = krasner();
        assert_eq!(k.hsum(1, 1), 0b11); // 1 + 1 = {0, 1}
        assert!(verify_hypergroup(&k).all_ok());
        let s = sign();
        assert_eq!(s.hsum(1, 2), 0b111); // 1 + -1 = {0, 1, -1}
        assert_eq!(s.hsum(1, 1), 0b010);
        assert!(verify_hypergroup(&s).all_ok());
    }

    #[test]
    fn quotient_f3_full_group_is_krasner() {
        let q = quotient_hyperfield_fp(3, &[1, 2]).unwrap();
        assert!(verify_hypergroup(&q).all_ok());
        assert!(check_hypergroup_isomorphism(&q, &krasner(), &[0, 1]));
        // Trivial subgroup reduces the hypersum to field addition.
        let t = quotient_hyperfield_fp(3, &[1]).unwrap();
        let one = t.names.iter().position(|n| n == "[1]").unwrap() as u8;
        let two = t.names.iter().position(|n| n == "[2]").unwrap() as u8;
        assert_eq!(t.hsum(one, one), 1 << two);
    }

    #[test]
    fn quotient_f5_full_group_is_krasner() {
        let q = quotient_hyperfield_fp(5, &[1, 2, 3, 4]).unwrap();
        assert!(check_hypergroup_isomorphism(&q, &krasner(), &[0, 1]));
    }

    #[test]
    fn rational_sample_quotient_is_sign() {
        let sample: Vec<Rat> = [-3i64, -2, -1, 0, 1, 2, 3]
            .iter()
            .map(|n| Rat::new(*n, 1))
            .collect();
        let q = quotient_sign_from_rationals(&sample);
        assert!(check_hypergroup_isomorphism(&q, &sign(), &[0, 1, 2]));
    }

    #[test]
    fn minus_one_in_subgroup_forces_zero_in_doubles() {
        // -1 = 2 lies in the full subgroup of F3.
        let q = quotient_hyperfield_fp(3, &[1, 2]).unwrap();
        for a in 0..q.len() as u8 {
            assert!(q.hsum(a, a) >> q.zero & 1 == 1);
        }
        // e*e = e + e with e = 1 + (-1).
        let e = q.hsum(1, q.hyperneg(1).unwrap());
        assert_eq!(q.mul_sets(e, e).unwrap(), q.hsum_sets(e, e));
    }

    #[test]
    fn sign_power_set_pair_shape() {
        let p = power_set_pair(&sign(), "sign-hyperpair").unwrap();
        assert_eq!(p.carrier_len(), 7);
        let e = p.parse_el("{0,1,-1}").unwrap();
        let one = p.one();
        let du = p.dag_unit().unwrap();
        assert_eq!(p.add(&one, &du), e);
        // Full distributivity fails: {1,-1} * ({1} + {1}) != products summed.
        assert!(p.caps().nd_only);
        let r = check_distributivity(&p);
        assert!(r.single && !r.full && r.subset_distributive);
    }

    #[test]
    fn krasner_power_set_fully_distributive() {
        let p = power_set_pair(&krasner(), "krasner-hyperpair").unwrap();
        let r = check_distributivity(&p);
        assert!(r.single && r.full && r.subset_distributive);
    }

    #[test]
    fn tropical_hyperfield_tie_is_down_interval() {
        let a = TropEl::Val(Rat::new(2, 1));
        let s = trop_hsum(&a, &a);
        assert_eq!(s, TropSet::down(Rat::new(2, 1)));
        assert!(s.contains(&TropEl::Bottom));
        assert!(s.contains(&TropEl::Val(Rat::new(-7, 2))));
        assert!(!s.contains(&TropEl::Val(Rat::new(3, 1))));
        let sample: Vec<Rat> = [-2i64, 0, 1, 3].iter().map(|n| Rat::new(*n, 1)).collect();
        assert!(trop_stringent_on(&sample));
    }

    #[test]
    fn hypergroup_json_round_trip() {
        let s = sign();
        let j = serde_json::to_string(&hypergroup_to_json(&s)).unwrap();
        let s2 = hypergroup_from_json("sign", &j).unwrap();
        assert!(check_hypergroup_isomorphism(&s, &s2, &[0, 1, 2]));
    }
}
