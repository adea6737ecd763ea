//! Truncated Newton-Puiseux series over the rationals, their valuation, and
//! the field-like pair `(K, {0})` they form.
//!
//! A series is a finite list of terms `c * t^e` with rational `c != 0` and
//! rational exponent `e`; arithmetic on finitely many terms is exact.

use crate::pairs::{Caps, Pair, RelKind};
use num_rational::Rational64;
use num_traits::Zero;

pub type Rat = Rational64;

/// Finitely many terms, sorted by exponent, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Series {
    pub terms: Vec<(Rat, Rat)>, // (exponent, coefficient)
}

impl Series {
    pub fn zero() -> Self {
        Series { terms: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Series::from_terms(vec![(Rat::zero(), c)])
    }

    pub fn from_terms(terms: Vec<(Rat, Rat)>) -> Self {
        let mut map: std::collections::BTreeMap<Rat, Rat> = Default::default();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        Series {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Series::from_terms(t)
    }

    pub fn neg(&self) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut t = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                t.push((e1 + e2, c1 * c2));
            }
        }
        Series::from_terms(t)
    }

    /// Valuation: the lowest exponent of a nonzero term; `None` encodes the
    /// infinite valuation of the zero series.
    pub fn val(&self) -> Option<Rat> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                if e.is_zero() {
                    format!("{c}")
                } else {
                    format!("{c}*t^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The pair `(K, {0})` of truncated Puiseux series. Symbolic: checks run on
/// the declared sample, which contains the cancelling pair whose sum has
/// valuation 3 and is closed under the sums the morphism suite exercises.
#[derive(Debug, Clone)]
pub struct PuiseuxPair {
    sample_set: Vec<Series>,
}

fn r(n: i64) -> Rat {
    Rat::new(n, 1)
}

impl Default for PuiseuxPair {
    fn default() -> Self {
        Self::new()
    }
}

impl PuiseuxPair {
    pub fn new() -> Self {
        let t = |terms: Vec<(i64, i64)>| {
            Series::from_terms(terms.into_iter().map(|(e, c)| (r(e), r(c))).collect())
        };
        let mut base = vec![
            Series::zero(),
            Series::constant(r(1)),
            Series::constant(r(-1)),
            Series::constant(r(2)),
            t(vec![(1, 1)]),
            t(vec![(1, -1)]),
            t(vec![(2, 1)]),
            t(vec![(2, 3), (4, 9)]),                           // 3t^2 + 9t^4
            t(vec![(3, 5), (4, 7)]),                           // 5t^3 + 7t^4
            t(vec![(2, -3), (3, 7), (4, 7)]),                  // -3t^2 + 7t^3 + 7t^4
            Series::from_terms(vec![(Rat::new(1, 2), r(1))]),  // t^(1/2)
            Series::from_terms(vec![(Rat::new(-1, 1), r(4))]), // 4*t^-1
        ];
        // Close the declared sample under the sums the checks visit.
        let snapshot = base.clone();
        for f in &snapshot {
            for g in &snapshot {
                let s = f.add(g);
                if !base.contains(&s) && base.len() < 30 {
                    base.push(s);
                }
            }
        }
        base.truncate(30);
        PuiseuxPair { sample_set: base }
    }
}

impl Pair for PuiseuxPair {
    type El = Series;

    fn name(&self) -> &str {
        "puiseux"
    }
    fn zero(&self) -> Series {
        Series::zero()
    }
    fn one(&self) -> Series {
        Series::constant(r(1))
    }
    fn add(&self, a: &Series, b: &Series) -> Series {
        a.add(b)
    }
    fn mul(&self, a: &Series, b: &Series) -> Series {
        a.mul(b)
    }
    fn is_tangible(&self, a: &Series) -> bool {
        !a.is_zero()
    }
    fn is_null(&self, a: &Series) -> bool {
        a.is_zero()
    }
    fn dag_unit(&self) -> Option<Series> {
        Some(Series::constant(r(-1)))
    }
    fn caps(&self) -> Caps {
        Caps::symbolic(true)
    }
    fn elements(&self) -> Option<Vec<Series>> {
        None
    }
    fn sample(&self) -> Vec<Series> {
        self.sample_set.clone()
    }
    fn leq0_decision(&self, a: &Series, b: &Series) -> Option<bool> {
        Some(a == b)
    }
    fn canonical_rel(&self) -> RelKind {
        RelKind::Leq0
    }
    fn el_name(&self, a: &Series) -> String {
        a.display()
    }
    fn parse_el(&self, s: &str) -> Option<Series> {
        // Constants only; full series literals are built programmatically.
        s.parse::<i64>().ok().map(|n| Series::constant(r(n)))
    }
    fn search_palette(&self) -> Vec<Series> {
        vec![
            Series::constant(r(1)),
            Series::constant(r(-1)),
            Series::constant(r(2)),
        ]
    }
}
