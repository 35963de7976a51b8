//! Derived algebras: flat semirings, word semirings, null and idempotent
//! extensions, plus cyclic elements and the S7-based non-finite-basis
//! witness.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteAiSemiring, Morphism};
use crate::iso;
use crate::term::{TermError, Var, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("semigroup has no zero element")]
    NoZero,
    #[error("not 0-cancellative: {0}")]
    NotZeroCancellative(String),
    #[error("not cancellative: {0}")]
    NotCancellative(String),
    #[error("multiplication is not associative at ({0},{1},{2})")]
    NotAssociative(Element, Element, Element),
    #[error("semiring is not flat: {0}")]
    NotFlat(String),
    #[error("word set is empty")]
    NoWords,
    #[error("cyclic group order must be positive")]
    EmptyGroup,
    #[error("carrier of {0} elements is too large")]
    TooLarge(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A finite semigroup given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    names: Vec<String>,
    mul: Vec<Vec<Element>>,
}

impl FiniteSemigroup {
    pub fn new(names: Vec<String>, mul: Vec<Vec<Element>>) -> Result<Self, ConstructionError> {
        let n = names.len();
        if n == 0 {
            return Err(AlgebraError::Malformed("empty carrier".into()).into());
        }
        if n > crate::algebra::MAX_ORDER {
            return Err(ConstructionError::TooLarge(n));
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(AlgebraError::Malformed("multiplication table must be square over the carrier".into()).into());
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(AlgebraError::Malformed("element names are not distinct".into()).into());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(ConstructionError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self { names, mul })
    }

    /// The multiplicative reduct of a semiring.
    pub fn reduct(s: &FiniteAiSemiring) -> Self {
        Self { names: s.elements().to_vec(), mul: s.mul_table() }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mul[a][b]
    }

    pub fn zero(&self) -> Option<Element> {
        let n = self.order();
        (0..n).find(|&z| (0..n).all(|a| self.mul[z][a] == z && self.mul[a][z] == z))
    }

    pub fn identity(&self) -> Option<Element> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|a| self.mul[e][a] == a && self.mul[a][e] == a))
    }

    /// Adjoins a new absorbing element at index 0.
    pub fn with_zero(&self) -> Self {
        let n = self.order();
        let zero_name = fresh_name(&self.names, "0");
        let mut names = vec![zero_name];
        names.extend(self.names.iter().cloned());
        let mut mul = vec![vec![0; n + 1]; n + 1];
        for a in 0..n {
            for b in 0..n {
                mul[a + 1][b + 1] = self.mul[a][b] + 1;
            }
        }
        Self { names, mul }
    }

    fn zero_cancellativity_failure(&self, zero: Element) -> Option<String> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                for c in (b + 1)..n {
                    if self.mul[a][b] == self.mul[a][c] && self.mul[a][b] != zero {
                        return Some(format!("{0}{1} = {0}{2} ≠ 0 for a={0}, b={1}, c={2}", self.names[a], self.names[b], self.names[c]));
                    }
                    if self.mul[b][a] == self.mul[c][a] && self.mul[b][a] != zero {
                        return Some(format!("{1}{0} = {2}{0} ≠ 0 for a={0}, b={1}, c={2}", self.names[a], self.names[b], self.names[c]));
                    }
                }
            }
        }
        None
    }

    /// `ab = ac ≠ 0` implies `b = c`, and dually on the right.
    pub fn is_zero_cancellative(&self) -> Result<bool, ConstructionError> {
        let zero = self.zero().ok_or(ConstructionError::NoZero)?;
        Ok(self.zero_cancellativity_failure(zero).is_none())
    }

    pub fn is_cancellative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| ((b + 1)..n).all(|c| self.mul[a][b] != self.mul[a][c] && self.mul[b][a] != self.mul[c][a]))
        })
    }

    /// The nonzero elements form an abelian group under the product.
    pub fn is_abelian_group_with_zero(&self) -> bool {
        let Some(zero) = self.zero() else { return false };
        let rest: Vec<Element> = (0..self.order()).filter(|&a| a != zero).collect();
        if rest.is_empty() {
            return false;
        }
        let closed = rest.iter().all(|&a| rest.iter().all(|&b| self.mul[a][b] != zero));
        let commutative = rest.iter().all(|&a| rest.iter().all(|&b| self.mul[a][b] == self.mul[b][a]));
        let Some(&e) = rest.iter().find(|&&e| rest.iter().all(|&a| self.mul[e][a] == a)) else {
            return false;
        };
        let inverses = rest.iter().all(|&a| rest.iter().any(|&b| self.mul[a][b] == e));
        closed && commutative && inverses
    }
}

fn fresh_name(taken: &[String], preferred: &str) -> String {
    let mut name = preferred.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// The cyclic group of order `n`, written `1, a, a^2, ...`.
pub fn cyclic_group(n: usize) -> Result<FiniteSemigroup, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::EmptyGroup);
    }
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteSemigroup::new(names, mul)
}

/// The flat semiring on a 0-cancellative semigroup with zero: `a + a = a`
/// and `a + b = 0` otherwise.
pub fn flat_from_semigroup(g: &FiniteSemigroup) -> Result<FiniteAiSemiring, ConstructionError> {
    let zero = g.zero().ok_or(ConstructionError::NoZero)?;
    if let Some(why) = g.zero_cancellativity_failure(zero) {
        return Err(ConstructionError::NotZeroCancellative(why));
    }
    let n = g.order();
    let add: Vec<Vec<Element>> = (0..n).map(|a| (0..n).map(|b| if a == b { a } else { zero }).collect()).collect();
    Ok(FiniteAiSemiring::new("flat", g.names.clone(), &add, &g.mul)?)
}

/// Adjoins a zero to a cancellative semigroup (a finite group, in effect)
/// and takes the flat semiring.
pub fn flat_extension(g: &FiniteSemigroup) -> Result<FiniteAiSemiring, ConstructionError> {
    if !g.is_cancellative() {
        return Err(ConstructionError::NotCancellative("semigroup has a repeated row or column entry".into()));
    }
    flat_from_semigroup(&g.with_zero())
}

/// The flat extension of the cyclic group of order `n`.
pub fn flat_extension_cyclic(n: usize) -> Result<FiniteAiSemiring, ConstructionError> {
    Ok(flat_extension(&cyclic_group(n)?)?.with_name(format!("flatext(Z{n})")))
}

/// Which of the four word semirings to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WordKind {
    /// S(W)
    S,
    /// S_c(W)
    Sc,
    /// M(W)
    M,
    /// M_c(W)
    Mc,
}

impl WordKind {
    pub fn commutative(self) -> bool {
        matches!(self, WordKind::Sc | WordKind::Mc)
    }

    pub fn monoid(self) -> bool {
        matches!(self, WordKind::M | WordKind::Mc)
    }

    pub fn prefix(self) -> &'static str {
        match self {
            WordKind::S => "S",
            WordKind::Sc => "S_c",
            WordKind::M => "M",
            WordKind::Mc => "M_c",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSemiringSpec {
    pub words: Vec<Word>,
    pub kind: WordKind,
}

impl WordSemiringSpec {
    pub fn new(kind: WordKind, words: Vec<Word>) -> Self {
        Self { words, kind }
    }

    /// Parses a comma-separated word list such as `"ab,a^2"`.
    pub fn parse(kind: WordKind, list: &str) -> Result<Self, ConstructionError> {
        let words = list
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(str::parse::<Word>)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(kind, words))
    }

    pub fn alphabet(&self) -> BTreeSet<Var> {
        self.words.iter().flat_map(Word::content).collect()
    }
}

fn sorted_word(w: &[Var]) -> Vec<Var> {
    let mut v = w.to_vec();
    v.sort();
    v
}

/// Nonempty sub-multisets of a sorted word, each sorted.
fn sub_multisets(w: &[Var]) -> BTreeSet<Vec<Var>> {
    let mut counts: Vec<(Var, usize)> = Vec::new();
    for &x in w {
        match counts.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => counts.push((x, 1)),
        }
    }
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; counts.len()];
    loop {
        let word: Vec<Var> = counts
            .iter()
            .zip(&choice)
            .flat_map(|(&(x, _), &k)| std::iter::repeat_n(x, k))
            .collect();
        if !word.is_empty() {
            out.insert(word);
        }
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] <= counts[i].1 {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The word semiring described by `spec`.
///
/// Elements are listed as `0`, then `1` for the monoid variants, then the
/// words in shortlex order. Products are concatenations (multiset unions in
/// the commutative case) when the result is in the carrier, and `0`
/// otherwise; addition is flat with top `0`.
pub fn word_semiring(spec: &WordSemiringSpec) -> Result<FiniteAiSemiring, ConstructionError> {
    if spec.words.is_empty() {
        return Err(ConstructionError::NoWords);
    }
    let commutative = spec.kind.commutative();
    let mut factors: BTreeSet<Vec<Var>> = BTreeSet::new();
    for w in &spec.words {
        let letters = w.letters();
        if commutative {
            factors.extend(sub_multisets(&sorted_word(letters)));
        } else {
            for i in 0..letters.len() {
                for j in (i + 1)..=letters.len() {
                    factors.insert(letters[i..j].to_vec());
                }
            }
        }
    }
    let mut words: Vec<Word> = factors.into_iter().map(|f| Word::new(f).expect("nonempty")).collect();
    words.sort();
    let offset = if spec.kind.monoid() { 2 } else { 1 };
    let n = words.len() + offset;
    if n > crate::algebra::MAX_ORDER {
        return Err(ConstructionError::TooLarge(n));
    }
    let index_of = |letters: Vec<Var>| -> Element {
        let key = if commutative { sorted_word(&letters) } else { letters };
        let w = Word::new(key).expect("nonempty");
        words.binary_search(&w).map(|i| i + offset).unwrap_or(0)
    };
    let mut mul = vec![vec![0; n]; n];
    for a in 1..n {
        for b in 1..n {
            mul[a][b] = if spec.kind.monoid() && a == 1 {
                b
            } else if spec.kind.monoid() && b == 1 {
                a
            } else {
                let mut cat = words[a - offset].letters().to_vec();
                cat.extend_from_slice(words[b - offset].letters());
                index_of(cat)
            };
        }
    }
    let add: Vec<Vec<Element>> = (0..n).map(|a| (0..n).map(|b| if a == b { a } else { 0 }).collect()).collect();
    let mut names = vec!["0".to_string()];
    if spec.kind.monoid() {
        names.push("1".to_string());
    }
    names.extend(words.iter().map(|w| w.letters().iter().map(|x| x.to_string()).collect::<String>()));
    let label: Vec<String> = spec.words.iter().map(|w| w.to_string()).collect();
    let name = format!("{}({})", spec.kind.prefix(), label.join(","));
    Ok(FiniteAiSemiring::new(name, names, &add, &mul)?)
}

/// Multiplicative zero that is also the additive top, with `a + b = top`
/// for all distinct `a, b`.
pub fn is_flat(s: &FiniteAiSemiring) -> bool {
    flat_failure(s).is_none()
}

fn flat_failure(s: &FiniteAiSemiring) -> Option<String> {
    let n = s.order();
    let Some(zero) = s.multiplicative_zero() else {
        return Some("no multiplicative zero".into());
    };
    if s.natural_order().top() != zero {
        return Some("multiplicative zero is not the additive top".into());
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && s.add(a, b) != zero {
                return Some(format!("{} + {} is not the top", s.element_name(a), s.element_name(b)));
            }
        }
    }
    None
}

/// Adjoins one element `x` to a flat semiring with the given products
/// against itself and the old elements; addition stays flat.
fn extend_flat(
    s: &FiniteAiSemiring,
    new_name: &str,
    self_product_is_new: bool,
    label: &str,
) -> Result<FiniteAiSemiring, ConstructionError> {
    if let Some(why) = flat_failure(s) {
        return Err(ConstructionError::NotFlat(why));
    }
    let zero = s.multiplicative_zero().expect("flat");
    let n = s.order();
    let x = n;
    let mut add = s.add_table();
    let mut mul = s.mul_table();
    for (a, row) in add.iter_mut().enumerate() {
        row.push(if a == x { x } else { zero });
    }
    for row in mul.iter_mut() {
        row.push(zero);
    }
    add.push((0..=n).map(|b| if b == x { x } else { zero }).collect());
    mul.push((0..=n).map(|b| if b == x && self_product_is_new { x } else { zero }).collect());
    let mut names = s.elements().to_vec();
    names.push(fresh_name(&names, new_name));
    Ok(FiniteAiSemiring::new(format!("{label}({})", s.name()), names, &add, &mul)?)
}

/// Adjoins `b` with `bb = ba = ab = 0`.
pub fn null_extension(s: &FiniteAiSemiring) -> Result<FiniteAiSemiring, ConstructionError> {
    extend_flat(s, "b", false, "ne")
}

/// Adjoins `e` with `e^2 = e` and `ea = ae = 0`.
pub fn idempotent_extension(s: &FiniteAiSemiring) -> Result<FiniteAiSemiring, ConstructionError> {
    extend_flat(s, "e", true, "ie")
}

/// Smallest `k` such that `a^k` lies on the cycle of powers of `a`, and the
/// cycle length.
pub fn power_tail_and_period(s: &FiniteAiSemiring, a: Element) -> (usize, usize) {
    let mut seen: Vec<Element> = vec![a];
    loop {
        let next = s.mul(*seen.last().expect("nonempty"), a);
        if let Some(pos) = seen.iter().position(|&p| p == next) {
            return (pos + 1, seen.len() - pos);
        }
        seen.push(next);
    }
}

/// Elements with `a^n = a` for some `n > 1`.
pub fn cyclic_elements(s: &FiniteAiSemiring) -> BTreeSet<Element> {
    (0..s.order()).filter(|&a| power_tail_and_period(s, a).0 == 1).collect()
}

/// Smallest `k` such that `x^k ≈ x^(k+l)` holds for some `l >= 1`.
pub fn semiring_index(s: &FiniteAiSemiring) -> usize {
    (0..s.order()).map(|a| power_tail_and_period(s, a).0).max().unwrap_or(1)
}

/// The noncyclic elements are closed downwards in the natural order.
pub fn noncyclic_is_order_ideal(s: &FiniteAiSemiring) -> bool {
    let cyclic = cyclic_elements(s);
    let noncyclic: BTreeSet<Element> = (0..s.order()).filter(|a| !cyclic.contains(a)).collect();
    s.natural_order().is_down_set(&noncyclic)
}

/// The three-element flat semiring `{1, a, ∞}` with `a·a = ∞`.
pub fn s7() -> FiniteAiSemiring {
    let names = ["1", "a", "∞"].map(String::from).to_vec();
    let add = vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]];
    let mul = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
    FiniteAiSemiring::new("S7", names, &add, &mul).expect("S7 tables are lawful")
}

#[derive(Debug, Clone)]
pub struct NfbWitnessReport {
    pub noncyclic_order_ideal: bool,
    pub s7_embedding: Option<Morphism>,
    pub conclusion: bool,
}

/// Sufficient condition for having no finite basis: the noncyclic elements
/// form an order ideal and S7 embeds. `false` means only that this witness
/// is absent.
pub fn nfb_witness(s: &FiniteAiSemiring) -> NfbWitnessReport {
    let noncyclic_order_ideal = noncyclic_is_order_ideal(s);
    let s7_embedding = iso::find_embedding(&s7(), s);
    let conclusion = noncyclic_order_ideal && s7_embedding.is_some();
    NfbWitnessReport { noncyclic_order_ideal, s7_embedding, conclusion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| i.to_string()).collect()
    }

    #[test]
    fn s7_reduct_is_zero_cancellative() {
        assert!(FiniteSemigroup::reduct(&s7()).is_zero_cancellative().unwrap());
    }

    #[test]
    fn null_semigroup_is_zero_cancellative() {
        let g = FiniteSemigroup::new(names(2), vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(g.is_zero_cancellative().unwrap());
    }

    #[test]
    fn repeated_nonzero_product_breaks_zero_cancellativity() {
        // 0 is the zero; 1·1 = 1·2 = 1, 2·x = x·2 = ... chosen associative.
        let mul = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 1]];
        let g = FiniteSemigroup::new(names(3), mul).unwrap();
        assert!(!g.is_zero_cancellative().unwrap());
        assert!(matches!(flat_from_semigroup(&g), Err(ConstructionError::NotZeroCancellative(_))));
    }

    #[test]
    fn missing_zero_is_an_error() {
        let g = cyclic_group(2).unwrap();
        assert_eq!(g.is_zero_cancellative(), Err(ConstructionError::NoZero));
    }

    #[test]
    fn trivial_semigroup_gives_one_element_semiring() {
        let g = FiniteSemigroup::new(names(1), vec![vec![0]]).unwrap();
        assert_eq!(flat_from_semigroup(&g).unwrap().order(), 1);
    }

    #[test]
    fn flat_extensions_are_flat_with_height_one() {
        for n in 1..6 {
            let s = flat_extension_cyclic(n).unwrap();
            assert!(is_flat(&s));
            assert_eq!(s.additive_height(), 1);
            assert_eq!(s.order(), n + 1);
        }
    }

    #[test]
    fn monoid_word_semirings_of_a_are_s7() {
        let mc = word_semiring(&WordSemiringSpec::parse(WordKind::Mc, "a").unwrap()).unwrap();
        let m = word_semiring(&WordSemiringSpec::parse(WordKind::M, "a").unwrap()).unwrap();
        assert_eq!(mc.elements(), &["0", "1", "a"]);
        assert!(are_isomorphic(&mc, &s7()));
        assert!(are_isomorphic(&m, &s7()));
    }

    #[test]
    fn commutative_subwords_are_sub_multisets() {
        let s = word_semiring(&WordSemiringSpec::parse(WordKind::Sc, "ab").unwrap()).unwrap();
        assert_eq!(s.elements(), &["0", "a", "b", "ab"]);
        let b = s.element_index("b").unwrap();
        let a = s.element_index("a").unwrap();
        assert_eq!(s.element_name(s.mul(b, a)), "ab");
        let nc = word_semiring(&WordSemiringSpec::parse(WordKind::S, "ab").unwrap()).unwrap();
        assert_eq!(nc.element_name(nc.mul(b, a)), "0");
        let big = word_semiring(&WordSemiringSpec::parse(WordKind::Sc, "aab").unwrap()).unwrap();
        assert_eq!(big.order(), 6);
    }

    #[test]
    fn word_semirings_are_flat_and_zero_cancellative() {
        for kind in [WordKind::S, WordKind::Sc, WordKind::M, WordKind::Mc] {
            for list in ["a", "ab", "a^3", "abc", "aba,b^2", "ab,ba"] {
                let s = word_semiring(&WordSemiringSpec::parse(kind, list).unwrap()).unwrap();
                assert!(is_flat(&s), "{kind:?} {list}");
                assert!(FiniteSemigroup::reduct(&s).is_zero_cancellative().unwrap());
            }
        }
    }

    #[test]
    fn powers_of_a_contain_s7() {
        for n in 3..=8 {
            let spec = WordSemiringSpec::new(WordKind::M, vec![Word::new(vec![Var::new('a', None); n - 2]).unwrap()]);
            let s = word_semiring(&spec).unwrap();
            assert_eq!(s.order(), n);
            assert!(iso::find_embedding(&s7(), &s).is_some());
        }
    }

    #[test]
    fn null_extension_of_trivial_semiring_is_t2() {
        let one = FiniteAiSemiring::from_tables("one", &[vec![0]], &[vec![0]]).unwrap();
        let ne = null_extension(&one).unwrap();
        let t2 = FiniteAiSemiring::from_tables("T2", &[vec![0, 1], vec![1, 1]], &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(are_isomorphic(&ne, &t2));
        let ie = idempotent_extension(&one).unwrap();
        let m2 = FiniteAiSemiring::from_tables("M2", &[vec![0, 1], vec![1, 1]], &[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(are_isomorphic(&ie, &m2));
    }

    #[test]
    fn extensions_require_flatness() {
        let l2 = FiniteAiSemiring::from_tables("L2", &[vec![0, 1], vec![1, 1]], &[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(matches!(null_extension(&l2), Err(ConstructionError::NotFlat(_))));
        assert!(!is_flat(&s7().direct_product(&s7())));
    }

    #[test]
    fn s7_cyclic_structure() {
        let s = s7();
        let a = s.element_index("a").unwrap();
        assert_eq!(cyclic_elements(&s), (0..3).filter(|&x| x != a).collect());
        assert_eq!(semiring_index(&s), 2);
        assert!(noncyclic_is_order_ideal(&s));
        assert!(nfb_witness(&s).conclusion);
    }

    #[test]
    fn idempotent_semirings_have_index_one() {
        let l2 = FiniteAiSemiring::from_tables("L2", &[vec![0, 1], vec![1, 1]], &[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(semiring_index(&l2), 1);
        assert_eq!(cyclic_elements(&l2).len(), 2);
    }

    #[test]
    fn abelian_group_detection() {
        let z3 = cyclic_group(3).unwrap().with_zero();
        assert!(z3.is_abelian_group_with_zero());
        assert!(!FiniteSemigroup::reduct(&s7()).is_abelian_group_with_zero());
    }
}
