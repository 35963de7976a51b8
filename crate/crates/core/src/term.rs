//! Terms of ai-semirings: finite nonempty sets of nonempty words.
//!
//! Grammar accepted by the parsers:
//!
//! ```text
//! identity := term ('≈' | '=') term
//! term     := product ('+' product)*
//! product  := power (('*')? power)*
//! power    := atom ('^' digits)?
//! atom     := letter digits? | '(' term ')'
//! ```
//!
//! Juxtaposition is multiplication and whitespace is ignored. A product of
//! sums is expanded by distributivity.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("exponent 0 would produce the empty word")]
    ZeroExponent { position: usize },
    #[error("variable {0} has no image under the substitution")]
    Unmapped(Var),
    #[error("empty word")]
    EmptyWord,
    #[error("empty term")]
    EmptyTerm,
}

/// A variable: an ASCII letter with an optional numeric subscript.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    letter: u8,
    index: Option<u32>,
}

impl Var {
    pub fn new(letter: char, index: Option<u32>) -> Self {
        assert!(letter.is_ascii_alphabetic(), "variables are ASCII letters");
        Self { letter: letter as u8, index }
    }

    pub fn letter(self) -> char {
        self.letter as char
    }

    pub fn index(self) -> Option<u32> {
        self.index
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.letter as char, i),
            None => write!(f, "{}", self.letter as char),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Var {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let w: Word = s.parse()?;
        match w.letters() {
            [v] => Ok(*v),
            _ => Err(TermError::Parse { position: 0, message: format!("{s:?} is not a single variable") }),
        }
    }
}

/// A nonempty word over variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Var>);

/// Shortlex: shorter words first, then lexicographic.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn new(letters: Vec<Var>) -> Result<Self, TermError> {
        if letters.is_empty() {
            return Err(TermError::EmptyWord);
        }
        Ok(Self(letters))
    }

    pub fn var(x: Var) -> Self {
        Self(vec![x])
    }

    pub fn letters(&self) -> &[Var] {
        &self.0
    }

    /// Length ℓ(w).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; words are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// First letter h(w).
    pub fn head(&self) -> Var {
        self.0[0]
    }

    /// Last letter t(w).
    pub fn tail(&self) -> Var {
        *self.0.last().expect("nonempty")
    }

    /// Content c(w): the set of letters occurring.
    pub fn content(&self) -> BTreeSet<Var> {
        self.0.iter().copied().collect()
    }

    /// Number of occurrences m(x, w).
    pub fn multiplicity(&self, x: Var) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }

    /// p(w): `w` without its last letter, `None` for single letters.
    pub fn prefix(&self) -> Option<Word> {
        (self.len() > 1).then(|| Word(self.0[..self.len() - 1].to_vec()))
    }

    /// s(w): `w` without its first letter, `None` for single letters.
    pub fn suffix(&self) -> Option<Word> {
        (self.len() > 1).then(|| Word(self.0[1..].to_vec()))
    }

    /// r(w): letters occurring an odd number of times.
    pub fn odd_content(&self) -> BTreeSet<Var> {
        let mut odd = BTreeSet::new();
        for &x in &self.0 {
            if !odd.remove(&x) {
                odd.insert(x);
            }
        }
        odd
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Image under a substitution: the product of the images of its letters.
    pub fn substitute(&self, sigma: &Substitution) -> Result<Term, TermError> {
        let mut acc: Option<Term> = None;
        for x in &self.0 {
            let image = sigma.get(x).ok_or(TermError::Unmapped(*x))?;
            acc = Some(match acc {
                None => image.clone(),
                Some(t) => t.product(image),
            });
        }
        Ok(acc.expect("nonempty"))
    }

    /// Deletes every occurrence of the given variables; `None` if nothing is left.
    pub fn delete_vars(&self, vars: &BTreeSet<Var>) -> Option<Word> {
        let kept: Vec<Var> = self.0.iter().copied().filter(|x| !vars.contains(x)).collect();
        (!kept.is_empty()).then_some(Word(kept))
    }

    pub fn rename(&self, f: &impl Fn(Var) -> Var) -> Word {
        Word(self.0.iter().map(|&x| f(x)).collect())
    }
}

impl fmt::Display for Word {
    /// Runs of a repeated letter are written with an exponent.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.0.len() {
            let x = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == x {
                j += 1;
            }
            write!(f, "{x}")?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: Term = s.parse()?;
        if t.len() != 1 {
            return Err(TermError::Parse { position: 0, message: format!("{s:?} is not a single word") });
        }
        Ok(t.0.into_iter().next().expect("one word"))
    }
}

/// A finite nonempty set of words, read as their sum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(BTreeSet<Word>);

pub type Substitution = BTreeMap<Var, Term>;

impl Term {
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Result<Self, TermError> {
        let set: BTreeSet<Word> = words.into_iter().collect();
        if set.is_empty() {
            return Err(TermError::EmptyTerm);
        }
        Ok(Self(set))
    }

    pub fn word(w: Word) -> Self {
        Self(BTreeSet::from([w]))
    }

    pub fn var(x: Var) -> Self {
        Self::word(Word::var(x))
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.0.iter()
    }

    pub fn word_set(&self) -> &BTreeSet<Word> {
        &self.0
    }

    /// Number of summands.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    pub fn sum(&self, other: &Term) -> Term {
        Term(self.0.union(&other.0).cloned().collect())
    }

    pub fn with_word(&self, w: Word) -> Term {
        let mut set = self.0.clone();
        set.insert(w);
        Term(set)
    }

    /// Distributive product: all concatenations `uv`.
    pub fn product(&self, other: &Term) -> Term {
        Term(self.0.iter().flat_map(|u| other.0.iter().map(move |v| u.concat(v))).collect())
    }

    pub fn substitute(&self, sigma: &Substitution) -> Result<Term, TermError> {
        let mut out = BTreeSet::new();
        for w in &self.0 {
            out.extend(w.substitute(sigma)?.0);
        }
        Ok(Term(out))
    }

    pub fn reversed(&self) -> Term {
        Term(self.0.iter().map(Word::reversed).collect())
    }

    /// Variables occurring in the term.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(|w| w.0.iter().copied()).collect()
    }

    pub fn heads(&self) -> BTreeSet<Var> {
        self.0.iter().map(Word::head).collect()
    }

    pub fn tails(&self) -> BTreeSet<Var> {
        self.0.iter().map(Word::tail).collect()
    }

    /// L_k: the summands of length `k`.
    pub fn summands_of_length(&self, k: usize) -> BTreeSet<Word> {
        self.0.iter().filter(|w| w.len() == k).cloned().collect()
    }

    pub fn max_len(&self) -> usize {
        self.0.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn delete_vars(&self, vars: &BTreeSet<Var>) -> Option<Term> {
        let mut out = BTreeSet::new();
        for w in &self.0 {
            out.insert(w.delete_vars(vars)?);
        }
        Some(Term(out))
    }

    pub fn rename(&self, f: &impl Fn(Var) -> Var) -> Term {
        Term(self.0.iter().map(|w| w.rename(f)).collect())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for w in &self.0 {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Term {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let t = p.term()?;
        p.expect_end()?;
        Ok(t)
    }
}

/// An equation between two terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Self { lhs, rhs }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.lhs.vars();
        v.extend(self.rhs.vars());
        v
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn reversed(&self) -> Identity {
        Identity::new(self.lhs.reversed(), self.rhs.reversed())
    }

    pub fn swapped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    /// The simple identities equivalent to `self` in every ai-semiring:
    /// `u ≈ u + v_j` for each summand of the right side and
    /// `v ≈ v + u_i` for each summand of the left side.
    pub fn normalize(&self) -> Vec<SimpleIdentity> {
        let mut out: BTreeSet<SimpleIdentity> = BTreeSet::new();
        for q in self.rhs.words() {
            out.insert(SimpleIdentity::new(self.lhs.clone(), q.clone()));
        }
        for q in self.lhs.words() {
            out.insert(SimpleIdentity::new(self.rhs.clone(), q.clone()));
        }
        out.into_iter().collect()
    }

    /// Deletes the given variables everywhere; `None` if a word vanishes.
    pub fn delete_vars(&self, vars: &BTreeSet<Var>) -> Option<Identity> {
        Some(Identity::new(self.lhs.delete_vars(vars)?, self.rhs.delete_vars(vars)?))
    }

    pub fn substitute(&self, sigma: &Substitution) -> Result<Identity, TermError> {
        Ok(Identity::new(self.lhs.substitute(sigma)?, self.rhs.substitute(sigma)?))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Identity {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let lhs = p.term()?;
        p.skip_ws();
        match p.peek() {
            Some('≈') | Some('=') => {
                p.bump();
            }
            other => {
                return Err(p.error(match other {
                    Some(c) => format!("expected '≈' or '=', found {c:?}"),
                    None => "expected '≈' or '=', found end of input".into(),
                }))
            }
        }
        let rhs = p.term()?;
        p.expect_end()?;
        Ok(Identity::new(lhs, rhs))
    }
}

/// `u ≈ u + q`, which holds exactly when `q` is below `u` in the natural order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleIdentity {
    pub u: Term,
    pub q: Word,
}

impl SimpleIdentity {
    pub fn new(u: Term, q: Word) -> Self {
        Self { u, q }
    }

    pub fn as_identity(&self) -> Identity {
        Identity::new(self.u.clone(), self.u.with_word(self.q.clone()))
    }

    pub fn is_trivial(&self) -> bool {
        self.u.contains(&self.q)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.u.vars();
        v.extend(self.q.content());
        v
    }

    pub fn reversed(&self) -> SimpleIdentity {
        SimpleIdentity::new(self.u.reversed(), self.q.reversed())
    }
}

impl fmt::Display for SimpleIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {} + {}", self.u, self.u, self.q)
    }
}

impl fmt::Debug for SimpleIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SimpleIdentity {
    type Err = TermError;

    /// Accepts any identity of the shape `u ≈ u + q` (in either order).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let id: Identity = s.parse()?;
        simple_from_identity(&id).ok_or_else(|| TermError::Parse {
            position: 0,
            message: format!("{id} is not of the form u ≈ u + q"),
        })
    }
}

/// Recognises `u ≈ u + q` and `u + q ≈ u`; a trivial `u ≈ u` gives `q ∈ u`.
pub fn simple_from_identity(id: &Identity) -> Option<SimpleIdentity> {
    for (small, big) in [(&id.lhs, &id.rhs), (&id.rhs, &id.lhs)] {
        if small.word_set().is_subset(big.word_set()) {
            let extra: Vec<&Word> = big.word_set().difference(small.word_set()).collect();
            match extra.as_slice() {
                [] => return Some(SimpleIdentity::new(small.clone(), small.words().next()?.clone())),
                [q] => return Some(SimpleIdentity::new(small.clone(), (*q).clone())),
                _ => {}
            }
        }
    }
    None
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { chars: src.char_indices().collect(), pos: 0, src }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(o, _)| o).unwrap_or(self.src.len())
    }

    fn error(&self, message: impl Into<String>) -> TermError {
        TermError::Parse { position: self.offset(), message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|&(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn expect_end(&mut self) -> Result<(), TermError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        (!s.is_empty()).then_some(s)
    }

    fn term(&mut self) -> Result<Term, TermError> {
        let mut acc = self.product()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('+') {
                self.bump();
                acc = acc.sum(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '(')
    }

    fn product(&mut self) -> Result<Term, TermError> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                acc = acc.product(&self.power()?);
            } else if self.starts_atom() {
                acc = acc.product(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Term, TermError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        self.skip_ws();
        let at = self.offset();
        let digits = self.digits().ok_or_else(|| self.error("expected digits after '^'"))?;
        let k: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
        if k == 0 {
            return Err(TermError::ZeroExponent { position: at });
        }
        if k > 64 {
            return Err(self.error("exponent too large"));
        }
        let mut acc = base.clone();
        for _ in 1..k {
            acc = acc.product(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let t = self.term()?;
                self.skip_ws();
                if self.bump() != Some(')') {
                    self.pos -= 1;
                    return Err(self.error("expected ')'"));
                }
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                // Subscripts follow the letter directly.
                let index = match self.digits() {
                    Some(d) => Some(d.parse::<u32>().map_err(|_| self.error("subscript too large"))?),
                    None => None,
                };
                Ok(Term::var(Var::new(c, index)))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a list of identities, one per line; blank lines and `#` comments
/// are skipped.
pub fn parse_identities(text: &str) -> Result<Vec<Identity>, TermError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Var {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn subscripts_are_read_greedily() {
        let word = w("x1x2x3");
        assert_eq!(word.letters(), &[v("x1"), v("x2"), v("x3")]);
        assert_eq!(w("x12").letters(), &[Var::new('x', Some(12))]);
        assert_eq!(w("xy").letters(), &[v("x"), v("y")]);
    }

    #[test]
    fn powers_and_groups_expand() {
        assert_eq!(w("x^2y"), w("xxy"));
        assert_eq!(w("(xy)^2"), w("xyxy"));
        assert_eq!(w("x1^2x2"), w("x1x1x2"));
        assert_eq!(w("x * y"), w("xy"));
        assert_eq!(t("x(y+z)"), t("xy + xz"));
    }

    #[test]
    fn zero_exponent_is_rejected() {
        assert!(matches!("x^0".parse::<Term>(), Err(TermError::ZeroExponent { .. })));
        assert!(matches!("x + (xy)^0".parse::<Term>(), Err(TermError::ZeroExponent { .. })));
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = "x + + y".parse::<Term>().unwrap_err();
        assert!(matches!(err, TermError::Parse { position: 4, .. }));
        assert!("x ≈".parse::<Identity>().is_err());
        assert!("x y".parse::<Identity>().is_err());
        assert!("(xy".parse::<Term>().is_err());
        assert!("".parse::<Term>().is_err());
    }

    #[test]
    fn both_equality_signs_parse() {
        let a: Identity = "xy ≈ yx".parse().unwrap();
        let b: Identity = "xy = yx".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "xy ≈ yx");
    }

    #[test]
    fn summands_are_a_set() {
        assert_eq!(t("x + x + y"), t("y + x"));
        assert_eq!(t("x + x + y").len(), 2);
    }

    #[test]
    fn word_measures() {
        let word = w("xyxzx");
        assert_eq!(word.head(), v("x"));
        assert_eq!(word.tail(), v("x"));
        assert_eq!(word.len(), 5);
        assert_eq!(word.multiplicity(v("x")), 3);
        assert_eq!(word.content(), [v("x"), v("y"), v("z")].into());
        assert_eq!(word.prefix(), Some(w("xyxz")));
        assert_eq!(word.suffix(), Some(w("yxzx")));
        assert_eq!(word.odd_content(), [v("x"), v("y"), v("z")].into());
        assert_eq!(w("xyxy").odd_content(), BTreeSet::new());
        assert_eq!(w("x").prefix(), None);
        assert_eq!(w("x").suffix(), None);
    }

    #[test]
    fn term_measures() {
        let term = t("xy + z + yzx");
        assert_eq!(term.heads(), [v("x"), v("y"), v("z")].into());
        assert_eq!(term.tails(), [v("x"), v("y"), v("z")].into());
        assert_eq!(term.summands_of_length(1), [w("z")].into());
        assert_eq!(term.summands_of_length(2), [w("xy")].into());
        assert_eq!(term.vars().len(), 3);
    }

    #[test]
    fn normalisation_splits_into_simple_identities() {
        let id: Identity = "x + y ≈ xy".parse().unwrap();
        let simple: Vec<String> = id.normalize().iter().map(|s| s.to_string()).collect();
        assert_eq!(simple, vec!["x + y ≈ x + y + xy", "xy ≈ xy + x", "xy ≈ xy + y"]);
    }

    #[test]
    fn substitution_distributes() {
        let sigma: Substitution = [(v("x"), t("a + b")), (v("y"), t("c"))].into();
        assert_eq!(t("xy + y").substitute(&sigma).unwrap(), t("ac + bc + c"));
        let partial: Substitution = [(v("x"), t("a"))].into();
        assert_eq!(t("xy").substitute(&partial), Err(TermError::Unmapped(v("y"))));
    }

    #[test]
    fn display_uses_exponents() {
        assert_eq!(t("xxy + x1x1").to_string(), "x1^2 + x^2y");
        assert_eq!(w("x1x1x2").to_string(), "x1^2x2");
    }

    #[test]
    fn simple_identities_are_recognised() {
        let s: SimpleIdentity = "x + y ≈ x + y + xy".parse().unwrap();
        assert_eq!(s.q, w("xy"));
        let s: SimpleIdentity = "x + y + xy = x + y".parse().unwrap();
        assert_eq!(s.u, t("x + y"));
        assert!("x ≈ y".parse::<SimpleIdentity>().is_err());
    }

    #[test]
    fn optional_variables_are_deleted() {
        let id: Identity = "x1^2x2 + x3x4^2 ≈ x1^2x2^2x3^2x4^2".parse().unwrap();
        let dropped = id.delete_vars(&[v("x2")].into()).unwrap();
        assert_eq!(dropped, "x1^2 + x3x4^2 ≈ x1^2x3^2x4^2".parse().unwrap());
        let gone: Identity = "x + y ≈ xy".parse().unwrap();
        assert!(gone.delete_vars(&[v("x")].into()).is_none());
    }
}
