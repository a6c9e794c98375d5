//! Finite commutative rings as products of local rings `Z_{p^k}` and finite
//! fields `F_q`.
//!
//! Only the zero-product relation is observable from the graph side, so a
//! field factor carries no multiplication table: in a field `a*b = 0` iff
//! `a = 0` or `b = 0`. Local factors use plain modular arithmetic.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::{Error, Result};

/// Default cap on the number of ring elements that may be enumerated.
pub const DEFAULT_ENUMERATION_CAP: u64 = 500_000;

/// One factor of the ring: either `Z_{p^k}` or an abstract field of order `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Factor {
    /// The local ring `Z_{p^k}` with `p` prime and `k >= 1`.
    LocalZ { p: u64, k: u32 },
    /// A finite field of order `q` (a prime power). Elements are opaque tags
    /// `0..q` where `0` is the zero element.
    Field { q: u64 },
}

impl Factor {
    /// Number of elements of the factor.
    pub fn order(&self) -> u64 {
        match *self {
            Factor::LocalZ { p, k } => p.pow(k),
            Factor::Field { q } => q,
        }
    }

    /// Number of units of the factor.
    pub fn unit_count(&self) -> u64 {
        match *self {
            Factor::LocalZ { p, k } => p.pow(k) - p.pow(k - 1),
            Factor::Field { q } => q - 1,
        }
    }

    /// Canonical sort key: underlying prime, then exponent, then kind.
    /// This keeps `Z12 -> Z4 x Z3` and `F4 x Z9` in their familiar order
    /// while making factor order input-independent.
    fn sort_key(&self) -> (u64, u32, u8) {
        match *self {
            Factor::LocalZ { p, k } => (p, k, 0),
            Factor::Field { q } => {
                let (p, k) = as_prime_power(q).expect("validated before sorting");
                (p, k, 1)
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::LocalZ { p, k } => write!(f, "Z{}", p.pow(k)),
            Factor::Field { q } => write!(f, "F{q}"),
        }
    }
}

/// A finite commutative ring with unity, given as an ordered product of
/// factors. Always held in canonical order (local factors before fields,
/// then by size) so equal specs compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    factors: Vec<Factor>,
}

/// classification of a single ring element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementClass {
    Zero,
    Unit,
    ZeroDivisor,
}

/// Per-component tag of an element: zero, unit, or (proper) zero divisor.
/// Field components never produce `ZeroDiv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentTag {
    Zero,
    Unit,
    ZeroDiv,
}

/// The zero pattern of an element: one [`ComponentTag`] per factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZeroPattern(pub Vec<ComponentTag>);

/// An element of a [`RingSpec`]: one residue/tag per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement {
    pub components: Vec<u64>,
}

impl RingElement {
    /// Printable tuple form, e.g. `(2,1)`; single factors print without parens.
    pub fn display(&self) -> String {
        if self.components.len() == 1 {
            format!("{}", self.components[0])
        } else {
            let inner: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
            format!("({})", inner.join(","))
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Factorise `n >= 2` into prime powers, smallest prime first.
fn prime_power_factorisation(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// If `q` is a prime power `p^k` with `k >= 1`, return `(p, k)`.
pub fn as_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = prime_power_factorisation(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

impl RingSpec {
    /// Build from explicit factors; canonicalises the order and validates.
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        Self::with_cap(factors, DEFAULT_ENUMERATION_CAP)
    }

    /// Like [`RingSpec::new`] with an explicit enumeration cap.
    pub fn with_cap(mut factors: Vec<Factor>, cap: u64) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Parse("ring needs at least one factor".into()));
        }
        for f in &factors {
            match *f {
                Factor::LocalZ { p, k } => {
                    if !is_prime(p) || k == 0 {
                        return Err(Error::Parse(format!("Z{{{p}^{k}}}: p must be prime, k >= 1")));
                    }
                }
                Factor::Field { q } => {
                    if as_prime_power(q).is_none() {
                        return Err(Error::Parse(format!("F{q}: {q} is not a prime power")));
                    }
                }
            }
        }
        factors.sort_by_key(Factor::sort_key);
        let mut order: u64 = 1;
        for f in &factors {
            order = order
                .checked_mul(f.order())
                .ok_or_else(|| Error::Parse("ring order overflows u64".into()))?;
        }
        if order > cap {
            return Err(Error::CapExceeded {
                what: "ring enumeration",
                actual: order as usize,
                cap: cap as usize,
            });
        }
        Ok(RingSpec { factors })
    }

    /// Parse a ring-spec string such as `Z8`, `Z4xZ9`, `F5 x Z27`.
    ///
    /// Grammar (case-insensitive, whitespace ignored):
    /// `spec := term ("x" term)*`, `term := "Z" int | "F" int`, int >= 2.
    /// A composite `Z{m}` is CRT-decomposed into its prime-power factors.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_cap(text, DEFAULT_ENUMERATION_CAP)
    }

    /// [`RingSpec::parse`] with an explicit enumeration cap.
    pub fn parse_with_cap(text: &str, cap: u64) -> Result<Self> {
        let compact: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        if compact.is_empty() {
            return Err(Error::Parse("empty ring spec".into()));
        }
        let mut factors = Vec::new();
        for term in compact.split('x') {
            let (kind, digits) = term
                .split_at_checked(1)
                .ok_or_else(|| Error::Parse(format!("empty term in '{text}'")))?;
            let n: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer in term '{term}'")))?;
            if n < 2 {
                return Err(Error::Parse(format!("term '{term}': order must be >= 2")));
            }
            match kind {
                "z" => {
                    for (p, k) in prime_power_factorisation(n) {
                        factors.push(Factor::LocalZ { p, k });
                    }
                }
                "f" => factors.push(Factor::Field { q: n }),
                _ => return Err(Error::Parse(format!("unknown term '{term}' (want Z<n> or F<n>)"))),
            }
        }
        Self::with_cap(factors, cap)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Total number of ring elements.
    pub fn order(&self) -> u64 {
        self.factors.iter().map(Factor::order).product()
    }

    /// Number of units (all components units).
    pub fn unit_count(&self) -> u64 {
        self.factors.iter().map(Factor::unit_count).product()
    }

    /// Number of nonzero zero divisors, i.e. vertices of the zero-divisor graph.
    pub fn zero_divisor_count(&self) -> u64 {
        self.order() - self.unit_count() - 1
    }

    /// All ring elements exactly once, in lexicographic component order.
    /// The first element is the zero tuple.
    pub fn enumerate_elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let radices: Vec<u64> = self.factors.iter().map(Factor::order).collect();
        let total = self.order();
        (0..total).map(move |mut ix| {
            let mut components = vec![0u64; radices.len()];
            for i in (0..radices.len()).rev() {
                components[i] = ix % radices[i];
                ix /= radices[i];
            }
            RingElement { components }
        })
    }

    fn check_member(&self, e: &RingElement) -> Result<()> {
        if e.components.len() != self.factors.len() {
            return Err(Error::Parse(format!(
                "element has {} components, ring has {} factors",
                e.components.len(),
                self.factors.len()
            )));
        }
        for (c, f) in e.components.iter().zip(&self.factors) {
            if *c >= f.order() {
                return Err(Error::Parse(format!("component {c} out of range for {f}")));
            }
        }
        Ok(())
    }

    /// Decide whether `a * b = 0`, componentwise.
    pub fn product_is_zero(&self, a: &RingElement, b: &RingElement) -> Result<bool> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.product_is_zero_unchecked(&a.components, &b.components))
    }

    /// Zero-product test on raw component slices (no membership validation).
    pub(crate) fn product_is_zero_unchecked(&self, a: &[u64], b: &[u64]) -> bool {
        a.iter()
            .zip(b.iter())
            .zip(&self.factors)
            .all(|((&x, &y), f)| match *f {
                Factor::LocalZ { .. } => (x * y) % f.order() == 0,
                Factor::Field { .. } => x == 0 || y == 0,
            })
    }

    /// Classify an element as zero, unit, or zero divisor. In a finite
    /// commutative ring every nonzero non-unit is a zero divisor.
    pub fn classify(&self, e: &RingElement) -> Result<ElementClass> {
        self.check_member(e)?;
        let pattern = self.pattern_unchecked(&e.components);
        Ok(class_of_pattern(&pattern))
    }

    /// Per-component zero pattern of an element.
    pub fn zero_pattern(&self, e: &RingElement) -> Result<ZeroPattern> {
        self.check_member(e)?;
        Ok(ZeroPattern(self.pattern_unchecked(&e.components)))
    }

    pub(crate) fn pattern_unchecked(&self, components: &[u64]) -> Vec<ComponentTag> {
        components
            .iter()
            .zip(&self.factors)
            .map(|(&c, f)| match *f {
                Factor::LocalZ { p, .. } => {
                    if c == 0 {
                        ComponentTag::Zero
                    } else if c % p == 0 {
                        ComponentTag::ZeroDiv
                    } else {
                        ComponentTag::Unit
                    }
                }
                Factor::Field { .. } => {
                    if c == 0 {
                        ComponentTag::Zero
                    } else {
                        ComponentTag::Unit
                    }
                }
            })
            .collect()
    }
}

fn class_of_pattern(tags: &[ComponentTag]) -> ElementClass {
    if tags.iter().all(|t| *t == ComponentTag::Zero) {
        ElementClass::Zero
    } else if tags.iter().all(|t| *t == ComponentTag::Unit) {
        ElementClass::Unit
    } else {
        ElementClass::ZeroDivisor
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}
