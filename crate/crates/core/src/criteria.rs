//! Syntactic tests for `u ≈ u + q` in particular small semirings.
//!
//! Each test has a brute-force counterpart ([`Lemma::semiring`] plus the
//! evaluator); [`oracle_sweep`] compares the two over an exhaustive family.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::FiniteAiSemiring;
use crate::catalog;
use crate::par::{self, Execution};
use crate::term::{SimpleIdentity, Term, Var, Word};

/// Outcome of a syntactic test together with the clause that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub holds: bool,
    pub rule: &'static str,
}

impl CriterionVerdict {
    fn yes(rule: &'static str) -> Self {
        Self { holds: true, rule }
    }

    fn no(rule: &'static str) -> Self {
        Self { holds: false, rule }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Lemma {
    L2,
    R2,
    M2,
    D2,
    N2,
    T2,
    S2,
    S4,
    S6,
    S10,
}

impl Lemma {
    pub const ALL: [Lemma; 10] = [
        Lemma::L2,
        Lemma::R2,
        Lemma::M2,
        Lemma::D2,
        Lemma::N2,
        Lemma::T2,
        Lemma::S2,
        Lemma::S4,
        Lemma::S6,
        Lemma::S10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::L2 => "L2",
            Lemma::R2 => "R2",
            Lemma::M2 => "M2",
            Lemma::D2 => "D2",
            Lemma::N2 => "N2",
            Lemma::T2 => "T2",
            Lemma::S2 => "S2",
            Lemma::S4 => "S4",
            Lemma::S6 => "S6",
            Lemma::S10 => "S10",
        }
    }

    /// The semiring the test characterises.
    pub fn semiring(self) -> FiniteAiSemiring {
        catalog::get(self.name()).expect("criterion semirings are catalogued")
    }

    pub fn check(self, si: &SimpleIdentity) -> CriterionVerdict {
        self.check_parts(&si.u, &si.q)
    }

    fn check_parts(self, u: &Term, q: &Word) -> CriterionVerdict {
        match self {
            Lemma::L2 | Lemma::R2 | Lemma::M2 | Lemma::D2 | Lemma::N2 | Lemma::T2 => two_element(self, u, q),
            Lemma::S2 => s2(u, q),
            Lemma::S4 => s4_like(u, q, End::Tail),
            Lemma::S6 => s4_like(u, q, End::Head),
            Lemma::S10 => s10(u, q),
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown criterion {s:?}; expected one of L2,R2,M2,D2,N2,T2,S2,S4,S6,S10"))
    }
}

/// Tests for the six semirings of order two.
///
/// Panics if `which` is not one of them.
pub fn holds_two_element(which: Lemma, si: &SimpleIdentity) -> CriterionVerdict {
    assert!(
        matches!(which, Lemma::L2 | Lemma::R2 | Lemma::M2 | Lemma::D2 | Lemma::N2 | Lemma::T2),
        "{which} is not a two-element semiring"
    );
    two_element(which, &si.u, &si.q)
}

fn two_element(which: Lemma, u: &Term, q: &Word) -> CriterionVerdict {
    match which {
        Lemma::L2 => {
            if u.words().any(|w| w.head() == q.head()) {
                CriterionVerdict::yes("head match")
            } else {
                CriterionVerdict::no("no head match")
            }
        }
        Lemma::R2 => {
            if u.words().any(|w| w.tail() == q.tail()) {
                CriterionVerdict::yes("tail match")
            } else {
                CriterionVerdict::no("no tail match")
            }
        }
        Lemma::M2 => {
            if q.content().is_subset(&u.vars()) {
                CriterionVerdict::yes("c(q) ⊆ c(u)")
            } else {
                CriterionVerdict::no("c(q) ⊄ c(u)")
            }
        }
        Lemma::D2 => {
            let cq = q.content();
            if u.words().any(|w| w.content().is_subset(&cq)) {
                CriterionVerdict::yes("c(q) ⊇ c(u_i)")
            } else {
                CriterionVerdict::no("c(q) covers no summand")
            }
        }
        Lemma::N2 => {
            if q.len() >= 2 {
                CriterionVerdict::yes("ℓ(q) ≥ 2")
            } else if u.contains(q) {
                CriterionVerdict::yes("q ∈ u")
            } else {
                CriterionVerdict::no("letter q ∉ u")
            }
        }
        Lemma::T2 => {
            if u.max_len() >= 2 {
                CriterionVerdict::yes("some ℓ(u_i) ≥ 2")
            } else if u.contains(q) {
                CriterionVerdict::yes("letters only, q ∈ u")
            } else {
                CriterionVerdict::no("letters only, q ∉ u")
            }
        }
        _ => unreachable!("not a two-element semiring"),
    }
}

pub fn holds_s2(si: &SimpleIdentity) -> CriterionVerdict {
    s2(&si.u, &si.q)
}

fn s2(u: &Term, q: &Word) -> CriterionVerdict {
    if u.max_len() >= 3 {
        return CriterionVerdict::yes("(1) some ℓ(u_i) ≥ 3");
    }
    let c1: BTreeSet<Var> = u.summands_of_length(1).iter().map(Word::head).collect();
    let c2: BTreeSet<Var> = u.summands_of_length(2).iter().flat_map(Word::content).collect();
    if !c1.is_disjoint(&c2) {
        return CriterionVerdict::yes("(2) L1∩L2 nonempty");
    }
    match q.len() {
        1 if u.contains(q) => CriterionVerdict::yes("(3) q ∈ u"),
        1 => CriterionVerdict::no("(3) letter q ∉ u"),
        2 if q.content().is_subset(&c2) => CriterionVerdict::yes("(3) c(q) ⊆ c(L2)"),
        2 => CriterionVerdict::no("(3) c(q) ⊄ c(L2)"),
        _ => CriterionVerdict::no("(3) ℓ(q) ≥ 3"),
    }
}

#[derive(Clone, Copy)]
enum End {
    Head,
    Tail,
}

impl End {
    fn of(self, w: &Word) -> Var {
        match self {
            End::Head => w.head(),
            End::Tail => w.tail(),
        }
    }
}

fn end_property(words: &[&Word], end: End) -> bool {
    words.iter().all(|wi| {
        let e = end.of(wi);
        words.iter().all(|wj| match wj.multiplicity(e) {
            0 => true,
            1 => end.of(wj) == e,
            _ => false,
        })
    })
}

/// Property (T): for all summands `u_i, u_j`, the last letter of `u_i`
/// occurs at most once in `u_j`, and only as its last letter.
pub fn property_t(u: &Term) -> bool {
    end_property(&u.words().collect::<Vec<_>>(), End::Tail)
}

/// The head-side mirror of [`property_t`].
pub fn property_h(u: &Term) -> bool {
    end_property(&u.words().collect::<Vec<_>>(), End::Head)
}

pub fn holds_s4(si: &SimpleIdentity) -> CriterionVerdict {
    s4_like(&si.u, &si.q, End::Tail)
}

pub fn holds_s6(si: &SimpleIdentity) -> CriterionVerdict {
    s4_like(&si.u, &si.q, End::Head)
}

fn s4_like(u: &Term, q: &Word, end: End) -> CriterionVerdict {
    if u.contains(q) {
        return CriterionVerdict::yes("trivial");
    }
    if !q.content().is_subset(&u.vars()) {
        return CriterionVerdict::no("c(q) ⊄ c(u)");
    }
    if u.max_len() < 2 {
        return CriterionVerdict::no("all ℓ(u_i) = 1");
    }
    let (name_kept, name_lost, name_absent) = match end {
        End::Tail => ("property-T preserved", "property-T lost", "u lacks property T"),
        End::Head => ("property-H preserved", "property-H lost", "u lacks property H"),
    };
    let mut words: Vec<&Word> = u.words().collect();
    if !end_property(&words, end) {
        return CriterionVerdict::yes(name_absent);
    }
    words.push(q);
    if end_property(&words, end) {
        CriterionVerdict::yes(name_kept)
    } else {
        CriterionVerdict::no(name_lost)
    }
}

/// δ(v): the nonempty `Z ⊆ c(v)` meeting every summand in exactly one
/// letter, which occurs there exactly once.
pub fn delta(v: &Term) -> Vec<BTreeSet<Var>> {
    let vars: Vec<Var> = v.vars().into_iter().collect();
    assert!(vars.len() < 24, "too many variables for subset enumeration");
    let mut out = Vec::new();
    for mask in 1u32..(1 << vars.len()) {
        let z: BTreeSet<Var> = (0..vars.len()).filter(|i| mask >> i & 1 == 1).map(|i| vars[i]).collect();
        let ok = v.words().all(|w| {
            let meet: Vec<Var> = w.content().intersection(&z).copied().collect();
            meet.len() == 1 && w.multiplicity(meet[0]) == 1
        });
        if ok {
            out.push(z);
        }
    }
    out
}

pub fn holds_s10(si: &SimpleIdentity) -> CriterionVerdict {
    s10(&si.u, &si.q)
}

/// Odd-count letters as a bit vector over the sorted variables of `u`.
fn odd_mask(w: &Word, vars: &[Var]) -> u64 {
    w.odd_content()
        .iter()
        .map(|x| 1u64 << vars.binary_search(x).expect("c(q) ⊆ c(u) was checked"))
        .fold(0, |a, b| a | b)
}

fn s10(u: &Term, q: &Word) -> CriterionVerdict {
    if !q.content().is_subset(&u.vars()) {
        return CriterionVerdict::no("c(q) ⊄ c(u)");
    }
    let vars: Vec<Var> = u.vars().into_iter().collect();
    assert!(vars.len() <= 64, "too many variables");
    // r(q) must be the sum over GF(2) of an odd number of r(u_i); equivalently
    // r(q) + r(u_1) lies in the span of the differences r(u_i) + r(u_1).
    let rs: Vec<u64> = u.words().map(|w| odd_mask(w, &vars)).collect();
    let base = rs[0];
    let mut basis: Vec<u64> = Vec::new();
    for &r in &rs[1..] {
        insert_xor_basis(&mut basis, r ^ base);
    }
    if reduce_xor_basis(&basis, odd_mask(q, &vars) ^ base) == 0 {
        CriterionVerdict::yes("r(q) is an odd sum of r(u_i)")
    } else {
        CriterionVerdict::no("r(q) is no odd sum of r(u_i)")
    }
}

fn reduce_xor_basis(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        v = v.min(v ^ b);
    }
    v
}

fn insert_xor_basis(basis: &mut Vec<u64>, v: u64) {
    let r = reduce_xor_basis(basis, v);
    if r != 0 {
        basis.push(r);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
}

/// Every word over `letters` of length `1..=max_len`, shortlex order.
pub fn all_words(letters: &[Var], max_len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    let mut layer: Vec<Vec<Var>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().map(|w| Word::new(w.clone()).expect("nonempty")));
    }
    out
}

/// Nonempty subsets of `0..n` with at most `k` elements, each sorted.
fn small_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Sizes of an exhaustive family of simple identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Family {
    pub vars: usize,
    pub max_len: usize,
    pub max_summands: usize,
}

impl Default for Family {
    fn default() -> Self {
        Self { vars: 3, max_len: 3, max_summands: 3 }
    }
}

impl Family {
    pub fn letters(&self) -> Vec<Var> {
        const NAMES: &[u8] = b"xyzwvtsrpo";
        assert!(self.vars <= NAMES.len());
        NAMES[..self.vars].iter().map(|&c| Var::new(c as char, None)).collect()
    }

    /// Number of identities `u ≈ u + q` in the family.
    pub fn size(&self) -> usize {
        let words = all_words(&self.letters(), self.max_len).len();
        small_subsets(words, self.max_summands).len() * words
    }

    /// Calls `f` on every `(u, q)` in a fixed order.
    pub fn for_each(&self, mut f: impl FnMut(&Term, &Word)) {
        let words = all_words(&self.letters(), self.max_len);
        for subset in small_subsets(words.len(), self.max_summands) {
            let u = Term::new(subset.iter().map(|&i| words[i].clone())).expect("nonempty");
            for q in &words {
                f(&u, q);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub lemma: Lemma,
    pub checked: usize,
    /// Identities where criterion and brute force disagree, with the brute-force verdict.
    pub disagreements: Vec<(String, bool)>,
}

impl SweepReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Values of every family word under every assignment of the family letters.
struct WordValues {
    words: Vec<Word>,
    /// `values[a * words.len() + w]`
    values: Vec<u8>,
    assignments: usize,
}

impl WordValues {
    fn new(s: &FiniteAiSemiring, letters: &[Var], words: Vec<Word>) -> Self {
        let n = s.order();
        let assignments = n.pow(letters.len() as u32);
        let mut values = Vec::with_capacity(assignments * words.len());
        for a in 0..assignments {
            let mut digits = vec![0usize; letters.len()];
            let mut rest = a;
            for d in digits.iter_mut().rev() {
                *d = rest % n;
                rest /= n;
            }
            for w in &words {
                let mut it = w.letters().iter().map(|x| digits[letters.binary_search(x).expect("family letter")]);
                let first = it.next().expect("nonempty");
                values.push(it.fold(first, |acc, v| s.mul(acc, v)) as u8);
            }
        }
        Self { words, values, assignments }
    }

    fn holds(&self, s: &FiniteAiSemiring, u: &[usize], q: usize) -> bool {
        let k = self.words.len();
        (0..self.assignments).all(|a| {
            let row = &self.values[a * k..(a + 1) * k];
            let lhs = u.iter().map(|&i| row[i] as usize).reduce(|x, y| s.add(x, y)).expect("nonempty");
            s.add(lhs, row[q] as usize) == lhs
        })
    }
}

/// Compares `lemma` with brute-force evaluation on every identity of `family`.
pub fn oracle_sweep(lemma: Lemma, family: Family, execution: Execution) -> SweepReport {
    let s = lemma.semiring();
    let mut letters = family.letters();
    letters.sort();
    let words = all_words(&letters, family.max_len);
    let table = WordValues::new(&s, &letters, words.clone());
    let subsets = small_subsets(words.len(), family.max_summands);
    let per_subset = par::map(execution, &subsets, |subset| {
        let u = Term::new(subset.iter().map(|&i| words[i].clone())).expect("nonempty");
        let mut bad = Vec::new();
        for (qi, q) in words.iter().enumerate() {
            let truth = table.holds(&s, subset, qi);
            if lemma.check_parts(&u, q).holds != truth {
                bad.push((SimpleIdentity::new(u.clone(), q.clone()).to_string(), truth));
            }
        }
        bad
    });
    SweepReport {
        lemma,
        checked: subsets.len() * words.len(),
        disagreements: per_subset.into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn si(u: &str, q: &str) -> SimpleIdentity {
        SimpleIdentity::new(u.parse().unwrap(), q.parse().unwrap())
    }

    #[test]
    fn two_element_examples() {
        assert!(holds_two_element(Lemma::L2, &si("xy + z", "xw")).holds);
        assert_eq!(holds_two_element(Lemma::L2, &si("xy + z", "xw")).rule, "head match");
        assert!(holds_two_element(Lemma::M2, &si("xy", "x")).holds);
        assert!(!holds_two_element(Lemma::T2, &si("x + y", "z")).holds);
        assert!(holds_two_element(Lemma::N2, &si("x", "yy")).holds);
        assert!(!holds_two_element(Lemma::D2, &si("xy", "x")).holds);
        assert!(holds_two_element(Lemma::R2, &si("yx", "x")).holds);
    }

    #[test]
    fn s2_examples() {
        assert_eq!(holds_s2(&si("xyz", "w")).rule, "(1) some ℓ(u_i) ≥ 3");
        assert!(holds_s2(&si("x + xy", "zzzz")).holds);
        assert_eq!(holds_s2(&si("x + xy", "w")).rule, "(2) L1∩L2 nonempty");
        assert!(!holds_s2(&si("xy + z", "w")).holds);
        assert!(holds_s2(&si("xy + z", "yx")).holds);
    }

    #[test]
    fn property_t_examples() {
        assert!(property_t(&"xy".parse().unwrap()));
        assert!(property_t(&"xy + zxw".parse().unwrap()));
        assert!(!property_t(&"xx".parse().unwrap()));
        assert!(!property_t(&"xy + yz".parse().unwrap()));
        assert!(property_h(&"xy + xz".parse().unwrap()));
    }

    #[test]
    fn delta_examples() {
        let v: Term = "xy + zy".parse().unwrap();
        let d = delta(&v);
        let y: Var = "y".parse().unwrap();
        let x: Var = "x".parse().unwrap();
        let z: Var = "z".parse().unwrap();
        assert!(d.contains(&BTreeSet::from([y])));
        assert!(d.contains(&BTreeSet::from([x, z])));
        assert!(delta(&"xx".parse().unwrap()).is_empty());
        assert_eq!(delta(&"x".parse().unwrap()), vec![BTreeSet::from([x])]);
    }

    #[test]
    fn s4_and_s6_examples() {
        assert!(holds_s4(&si("xy + x", "xxx")).holds);
        let v = holds_s4(&si("xy", "x"));
        assert_eq!((v.holds, v.rule), (false, "property-T lost"));
        assert!(holds_s4(&si("xy", "y")).holds);
        assert_eq!(holds_s4(&si("xy", "xy")).rule, "trivial");
        assert!(holds_s6(&si("xy", "x")).holds);
        assert!(!holds_s6(&si("xy", "y")).holds);
    }

    #[test]
    fn s10_examples() {
        assert!(holds_s10(&si("xyy", "x")).holds);
        assert!(holds_s10(&si("xy", "yx")).holds);
        assert!(!holds_s10(&si("xx", "x")).holds);
        // Three summands combine: {x} + {y} + {x,y} has even support, but
        // {x} + {y} + {z} = {x,y,z}.
        assert!(holds_s10(&si("x + y + z", "xyz")).holds);
        assert!(!holds_s10(&si("x + y", "xy")).holds);
    }

    #[test]
    fn family_has_expected_size() {
        assert_eq!(all_words(&Family::default().letters(), 3).len(), 39);
        assert_eq!(Family::default().size(), (39 + 741 + 9139) * 39);
        let small = Family { vars: 2, max_len: 2, max_summands: 2 };
        let mut n = 0;
        small.for_each(|_, _| n += 1);
        assert_eq!(n, small.size());
    }

    #[test]
    fn lemma_names_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
        }
        assert!("S3".parse::<Lemma>().is_err());
    }
}
