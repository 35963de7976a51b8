//! Finite additively idempotent semirings given by Cayley tables.
//!
//! Elements are `0..n` internally; every algebra carries display names so
//! that output can use the labels of the source tables (`1..4`, `0/1`, ...).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Index of an element in a carrier.
pub type Element = usize;

/// Largest carrier we accept. Tables are stored as bytes.
pub const MAX_ORDER: usize = 255;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("tables violate the ai-semiring laws: {0}")]
    LawViolation(ValidationReport),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("empty seed set")]
    EmptySeed,
}

/// The laws checked by [`validate`], in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    AddCommutative,
    AddIdempotent,
    AddAssociative,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
}

impl Law {
    pub const ALL: [Law; 6] = [
        Law::AddCommutative,
        Law::AddIdempotent,
        Law::AddAssociative,
        Law::MulAssociative,
        Law::LeftDistributive,
        Law::RightDistributive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::AddCommutative => "add-commutative",
            Law::AddIdempotent => "add-idempotent",
            Law::AddAssociative => "add-associative",
            Law::MulAssociative => "mul-associative",
            Law::LeftDistributive => "left-distributive",
            Law::RightDistributive => "right-distributive",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed law together with the lexicographically first witness.
///
/// Witnesses are padded to triples; laws with fewer variables repeat the
/// last used entry.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub law: Law,
    pub witness: [Element; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, law: Law) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at {:?}", v.law, v.witness))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

fn check_shape(add: &[Vec<Element>], mul: &[Vec<Element>]) -> Result<usize, AlgebraError> {
    let n = add.len();
    if n == 0 {
        return Err(AlgebraError::Malformed("empty carrier".into()));
    }
    if n > MAX_ORDER {
        return Err(AlgebraError::Malformed(format!(
            "order {n} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    if mul.len() != n {
        return Err(AlgebraError::Malformed(format!(
            "addition has {n} rows but multiplication has {}",
            mul.len()
        )));
    }
    for (table, rows) in [("addition", add), ("multiplication", mul)] {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::Malformed(format!(
                    "{table} row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(AlgebraError::Malformed(format!(
                    "{table} entry ({i},{j}) = {v} is out of range 0..{n}"
                )));
            }
        }
    }
    Ok(n)
}

/// Checks the ai-semiring laws on a pair of square tables.
///
/// Shape problems are reported as [`AlgebraError::Malformed`]; law failures
/// land in the returned report with one witness per law.
pub fn validate(add: &[Vec<Element>], mul: &[Vec<Element>]) -> Result<ValidationReport, AlgebraError> {
    let n = check_shape(add, mul)?;
    let a = |x: usize, y: usize| add[x][y];
    let m = |x: usize, y: usize| mul[x][y];
    let mut report = ValidationReport::default();
    let mut record = |law: Law, witness: [Element; 3]| {
        if report.violation(law).is_none() {
            report.violations.push(Violation { law, witness });
        }
    };
    for x in 0..n {
        if a(x, x) != x {
            record(Law::AddIdempotent, [x, x, x]);
            break;
        }
    }
    'comm: for x in 0..n {
        for y in 0..n {
            if a(x, y) != a(y, x) {
                record(Law::AddCommutative, [x, y, y]);
                break 'comm;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a(a(x, y), z) != a(x, a(y, z)) {
                    record(Law::AddAssociative, [x, y, z]);
                }
                if m(m(x, y), z) != m(x, m(y, z)) {
                    record(Law::MulAssociative, [x, y, z]);
                }
                if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                    record(Law::LeftDistributive, [x, y, z]);
                }
                if m(a(x, y), z) != a(m(x, z), m(y, z)) {
                    record(Law::RightDistributive, [x, y, z]);
                }
            }
        }
    }
    report.violations.sort_by_key(|v| v.law);
    Ok(report)
}

/// A finite ai-semiring: a semilattice `(S, +)` and a semigroup `(S, ·)`
/// linked by both distributive laws.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAiSemiring {
    name: String,
    elements: Vec<String>,
    n: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl fmt::Debug for FiniteAiSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAiSemiring")
            .field("name", &self.name)
            .field("elements", &self.elements)
            .field("add", &self.add_table())
            .field("mul", &self.mul_table())
            .finish()
    }
}

impl FiniteAiSemiring {
    /// Builds a semiring after checking shape and every law.
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        add: &[Vec<Element>],
        mul: &[Vec<Element>],
    ) -> Result<Self, AlgebraError> {
        let report = validate(add, mul)?;
        if !report.is_valid() {
            return Err(AlgebraError::LawViolation(report));
        }
        Self::from_checked_tables(name, elements, add, mul)
    }

    /// Builds a semiring with elements named `0..n`.
    pub fn from_tables(
        name: impl Into<String>,
        add: &[Vec<Element>],
        mul: &[Vec<Element>],
    ) -> Result<Self, AlgebraError> {
        let names = (0..add.len()).map(|i| i.to_string()).collect();
        Self::new(name, names, add, mul)
    }

    fn from_checked_tables(
        name: impl Into<String>,
        elements: Vec<String>,
        add: &[Vec<Element>],
        mul: &[Vec<Element>],
    ) -> Result<Self, AlgebraError> {
        let n = add.len();
        if elements.len() != n {
            return Err(AlgebraError::Malformed(format!(
                "{} element names for {n} elements",
                elements.len()
            )));
        }
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != n {
            return Err(AlgebraError::Malformed("element names are not distinct".into()));
        }
        let flat = |t: &[Vec<Element>]| t.iter().flatten().map(|&v| v as u8).collect();
        Ok(Self {
            name: name.into(),
            elements,
            n,
            add: flat(add),
            mul: flat(mul),
        })
    }

    /// Internal constructor for tables already known to be lawful.
    pub(crate) fn from_raw(name: String, elements: Vec<String>, add: Vec<u8>, mul: Vec<u8>) -> Self {
        let n = elements.len();
        debug_assert_eq!(add.len(), n * n);
        debug_assert_eq!(mul.len(), n * n);
        Self { name, elements, n, add, mul }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> Result<Self, AlgebraError> {
        if names.len() != self.n {
            return Err(AlgebraError::Malformed("wrong number of element names".into()));
        }
        if names.iter().collect::<BTreeSet<_>>().len() != self.n {
            return Err(AlgebraError::Malformed("element names are not distinct".into()));
        }
        self.elements = names;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, a: Element) -> &str {
        &self.elements[a]
    }

    pub fn element_index(&self, name: &str) -> Option<Element> {
        self.elements.iter().position(|e| e == name)
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        self.add[a * self.n + b] as Element
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mul[a * self.n + b] as Element
    }

    pub(crate) fn raw_add(&self) -> &[u8] {
        &self.add
    }

    pub(crate) fn raw_mul(&self) -> &[u8] {
        &self.mul
    }

    pub fn add_table(&self) -> Vec<Vec<Element>> {
        self.add.chunks(self.n).map(|r| r.iter().map(|&v| v as Element).collect()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<Element>> {
        self.mul.chunks(self.n).map(|r| r.iter().map(|&v| v as Element).collect()).collect()
    }

    /// Join of a nonempty set of elements.
    pub fn sum<I: IntoIterator<Item = Element>>(&self, items: I) -> Option<Element> {
        items.into_iter().reduce(|acc, x| self.add(acc, x))
    }

    /// `a^k` for `k >= 1`.
    pub fn pow(&self, a: Element, k: usize) -> Element {
        assert!(k >= 1, "exponent must be positive");
        (1..k).fold(a, |acc, _| self.mul(acc, a))
    }

    pub fn natural_order(&self) -> NaturalOrder {
        NaturalOrder::of(self)
    }

    /// Length in edges of the longest chain in the natural order.
    pub fn additive_height(&self) -> usize {
        let order = self.natural_order();
        // Longest chain ending at each element; the strict order is acyclic, so
        // processing by down-set size gives a topological order.
        let mut by_depth: Vec<Element> = (0..self.n).collect();
        by_depth.sort_by_key(|&a| (0..self.n).filter(|&b| order.leq(b, a)).count());
        let mut height = vec![0usize; self.n];
        for &a in &by_depth {
            height[a] = (0..self.n)
                .filter(|&b| order.lt(b, a))
                .map(|b| height[b] + 1)
                .max()
                .unwrap_or(0);
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// Same addition, multiplication read backwards.
    pub fn dual(&self) -> Self {
        let n = self.n;
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul[b * n + a];
            }
        }
        Self {
            name: format!("dual({})", self.name),
            elements: self.elements.clone(),
            n,
            add: self.add.clone(),
            mul,
        }
    }

    /// Componentwise product; the pair `(i, j)` gets index `i * |other| + j`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        let size = n * m;
        assert!(size <= MAX_ORDER, "product of order {size} is too large");
        let pair = |i: usize, j: usize| (i * m + j) as u8;
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for p in 0..size {
            let (a1, b1) = (p / m, p % m);
            for q in 0..size {
                let (a2, b2) = (q / m, q % m);
                add[p * size + q] = pair(self.add(a1, a2), other.add(b1, b2));
                mul[p * size + q] = pair(self.mul(a1, a2), other.mul(b1, b2));
            }
        }
        let elements = (0..size)
            .map(|p| format!("({},{})", self.elements[p / m], other.elements[p % m]))
            .collect();
        Self {
            name: format!("{}x{}", self.name, other.name),
            elements,
            n: size,
            add,
            mul,
        }
    }

    /// Closure of `seed` under both operations, returned with its inclusion.
    ///
    /// The subalgebra lists its elements in increasing order of their index
    /// in `self` and keeps their names.
    pub fn generated_subalgebra(&self, seed: &[Element]) -> Result<(Self, Morphism), AlgebraError> {
        if seed.is_empty() {
            return Err(AlgebraError::EmptySeed);
        }
        if let Some(&bad) = seed.iter().find(|&&a| a >= self.n) {
            return Err(AlgebraError::Malformed(format!("seed element {bad} out of range")));
        }
        let mut closed: BTreeSet<Element> = seed.iter().copied().collect();
        loop {
            let current: Vec<Element> = closed.iter().copied().collect();
            let mut grew = false;
            for &a in &current {
                for &b in &current {
                    grew |= closed.insert(self.add(a, b));
                    grew |= closed.insert(self.mul(a, b));
                }
            }
            if !grew {
                break;
            }
        }
        let members: Vec<Element> = closed.into_iter().collect();
        let sub = self.induced(&members, format!("<{}>", self.name));
        let inclusion = Morphism::new(sub.clone(), self.clone(), members)?;
        Ok((sub, inclusion))
    }

    /// Restriction to a subset that is known to be closed.
    pub(crate) fn induced(&self, members: &[Element], name: String) -> Self {
        let k = members.len();
        let pos = |x: Element| members.iter().position(|&m| m == x).expect("subset is closed") as u8;
        let mut add = vec![0u8; k * k];
        let mut mul = vec![0u8; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                add[i * k + j] = pos(self.add(a, b));
                mul[i * k + j] = pos(self.mul(a, b));
            }
        }
        let elements = members.iter().map(|&a| self.elements[a].clone()).collect();
        Self { name, elements, n: k, add, mul }
    }

    /// Relabels the carrier: element `a` of `self` becomes `perm[a]`.
    pub fn permuted(&self, perm: &[Element]) -> Self {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut inv = vec![0usize; n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = perm[self.add(inv[i], inv[j])] as u8;
                mul[i * n + j] = perm[self.mul(inv[i], inv[j])] as u8;
            }
        }
        let elements = (0..n).map(|i| self.elements[inv[i]].clone()).collect();
        Self { name: self.name.clone(), elements, n, add, mul }
    }

    /// Elements `z` with `za = az = z` for all `a`.
    pub fn multiplicative_zero(&self) -> Option<Element> {
        (0..self.n).find(|&z| (0..self.n).all(|a| self.mul(z, a) == z && self.mul(a, z) == z))
    }

    pub fn is_idempotent(&self, a: Element) -> bool {
        self.mul(a, a) == a
    }

    /// Re-checks all laws; always true for values built through the public API.
    pub fn is_valid(&self) -> bool {
        validate(&self.add_table(), &self.mul_table()).map(|r| r.is_valid()).unwrap_or(false)
    }
}

/// The natural partial order `a <= b  <=>  a + b = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalOrder {
    n: usize,
    leq: Vec<bool>,
    top: Element,
}

impl NaturalOrder {
    fn of(s: &FiniteAiSemiring) -> Self {
        let n = s.order();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = s.add(a, b) == b;
            }
        }
        let top = s.sum(0..n).expect("carrier is nonempty");
        Self { n, leq, top }
    }

    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: Element, b: Element) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn top(&self) -> Element {
        self.top
    }

    pub fn relation(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn is_partial_order(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| self.leq(a, a))
            && (0..n).all(|a| (0..n).all(|b| !(self.leq(a, b) && self.leq(b, a)) || a == b))
            && (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| !(self.leq(a, b) && self.leq(b, c)) || self.leq(a, c)))
            })
    }

    /// `a <= b` implies `a + c <= b + c`, `ac <= bc` and `ca <= cb`.
    pub fn is_compatible_with(&self, s: &FiniteAiSemiring) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                !self.leq(a, b)
                    || (0..n).all(|c| {
                        self.leq(s.add(a, c), s.add(b, c))
                            && self.leq(s.mul(a, c), s.mul(b, c))
                            && self.leq(s.mul(c, a), s.mul(c, b))
                    })
            })
        })
    }

    /// `set` is closed downwards.
    pub fn is_down_set(&self, set: &BTreeSet<Element>) -> bool {
        set.iter().all(|&a| (0..self.n).all(|b| !self.leq(b, a) || set.contains(&b)))
    }

    /// `set` is closed upwards.
    pub fn is_up_set(&self, set: &BTreeSet<Element>) -> bool {
        set.iter().all(|&a| (0..self.n).all(|b| !self.leq(a, b) || set.contains(&b)))
    }
}

/// A total map between carriers that preserves both operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: FiniteAiSemiring,
    target: FiniteAiSemiring,
    map: Vec<Element>,
}

impl Morphism {
    pub fn new(source: FiniteAiSemiring, target: FiniteAiSemiring, map: Vec<Element>) -> Result<Self, AlgebraError> {
        if map.len() != source.order() {
            return Err(AlgebraError::NotHomomorphism(format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= target.order()) {
            return Err(AlgebraError::NotHomomorphism(format!("image {bad} out of range")));
        }
        if let Some((a, b)) = first_hom_failure(&source, &target, &map) {
            return Err(AlgebraError::NotHomomorphism(format!("fails at ({a},{b})")));
        }
        Ok(Self { source, target, map })
    }

    pub fn source(&self) -> &FiniteAiSemiring {
        &self.source
    }

    pub fn target(&self) -> &FiniteAiSemiring {
        &self.target
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    pub fn apply(&self, a: Element) -> Element {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().collect::<BTreeSet<_>>().len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.iter().collect::<BTreeSet<_>>().len() == self.target.order()
    }

    /// Re-checks the homomorphism equations against both tables.
    pub fn verify(&self) -> bool {
        first_hom_failure(&self.source, &self.target, &self.map).is_none()
    }
}

fn first_hom_failure(s: &FiniteAiSemiring, t: &FiniteAiSemiring, map: &[Element]) -> Option<(Element, Element)> {
    let n = s.order();
    for a in 0..n {
        for b in 0..n {
            if map[s.add(a, b)] != t.add(map[a], map[b]) || map[s.mul(a, b)] != t.mul(map[a], map[b]) {
                return Some((a, b));
            }
        }
    }
    None
}
