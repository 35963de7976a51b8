//! Canonical forms, isomorphisms and embeddings.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::algebra::{Element, FiniteAiSemiring, Morphism};

/// Isomorphism-invariant fingerprint: the order followed by the
/// lexicographically least relabelled addition and multiplication tables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    /// Rebuilds the canonical representative.
    pub fn to_semiring(&self, name: impl Into<String>) -> FiniteAiSemiring {
        let n = self.order();
        let add = self.0[1..1 + n * n].to_vec();
        let mul = self.0[1 + n * n..].to_vec();
        let names = (0..n).map(|i| i.to_string()).collect();
        FiniteAiSemiring::from_raw(name.into(), names, add, mul)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum KeyParseError {
    #[error("invalid hex: {0}")]
    Hex(#[from] hex::FromHexError),
    #[error("key length does not match its order")]
    Length,
    #[error("key does not describe an ai-semiring")]
    Invalid,
}

impl FromStr for CanonicalKey {
    type Err = KeyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = hex::decode(s.trim())?;
        let n = *bytes.first().ok_or(KeyParseError::Length)? as usize;
        if n == 0 || bytes.len() != 1 + 2 * n * n {
            return Err(KeyParseError::Length);
        }
        if bytes[1..].iter().any(|&b| b as usize >= n) {
            return Err(KeyParseError::Invalid);
        }
        let key = CanonicalKey(bytes);
        if !key.to_semiring("key").is_valid() {
            return Err(KeyParseError::Invalid);
        }
        Ok(key)
    }
}

/// Steps `perm` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Lexicographic minimum of the relabelled `add ++ mul` over all `n!`
/// relabellings, prefixed by `n`.
pub fn canonical_form(s: &FiniteAiSemiring) -> CanonicalKey {
    canonical_from_raw(s.order(), s.raw_add(), s.raw_mul())
}

pub(crate) fn canonical_from_raw(n: usize, add: &[u8], mul: &[u8]) -> CanonicalKey {
    let best = canonical_tables(n, &[add, mul], None);
    let mut key = Vec::with_capacity(1 + best.len());
    key.push(n as u8);
    key.extend_from_slice(&best);
    CanonicalKey(key)
}

/// Lexicographically least concatenation of the relabelled `tables`, over
/// all permutations or over `perms` when given.
pub(crate) fn canonical_tables(n: usize, tables: &[&[u8]], perms: Option<&[Vec<usize>]>) -> Vec<u8> {
    let mut best: Vec<u8> = tables.iter().flat_map(|t| t.iter().copied()).collect();
    let mut cand = vec![0u8; best.len()];
    let mut inv = vec![0usize; n];
    let mut try_perm = |perm: &[usize], best: &mut Vec<u8>| {
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        // Compare cell by cell, giving up as soon as the candidate is larger.
        let mut smaller = false;
        let mut pos = 0;
        'cells: for table in tables {
            for i in 0..n {
                for j in 0..n {
                    let v = perm[table[inv[i] * n + inv[j]] as usize] as u8;
                    if !smaller {
                        if v > best[pos] {
                            break 'cells;
                        }
                        smaller = v < best[pos];
                    }
                    cand[pos] = v;
                    pos += 1;
                }
            }
        }
        if smaller {
            best.copy_from_slice(&cand);
        }
    };
    match perms {
        Some(perms) => {
            for p in perms {
                try_perm(p, &mut best);
            }
        }
        None => {
            let mut perm: Vec<usize> = (0..n).collect();
            while next_permutation(&mut perm) {
                try_perm(&perm, &mut best);
            }
        }
    }
    best
}

/// Permutations `p` with `p(a + b) = p(a) + p(b)` for the given table.
pub(crate) fn table_automorphisms(n: usize, table: &[u8]) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let ok = (0..n).all(|a| (0..n).all(|b| perm[table[a * n + b] as usize] == table[perm[a] * n + perm[b]] as usize));
        if ok {
            out.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

/// Per-element invariants used to prune the search.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Signature {
    idempotent: bool,
    up: usize,
    down: usize,
    zero: bool,
    identity: bool,
    left_fixed: usize,
    right_fixed: usize,
    square_is_self_or_top: (bool, bool),
}

fn signatures(s: &FiniteAiSemiring) -> Vec<Signature> {
    let n = s.order();
    let order = s.natural_order();
    let top = order.top();
    (0..n)
        .map(|a| Signature {
            idempotent: s.is_idempotent(a),
            up: (0..n).filter(|&b| order.leq(a, b)).count(),
            down: (0..n).filter(|&b| order.leq(b, a)).count(),
            zero: (0..n).all(|b| s.mul(a, b) == a && s.mul(b, a) == a),
            identity: (0..n).all(|b| s.mul(a, b) == b && s.mul(b, a) == b),
            left_fixed: (0..n).filter(|&b| s.mul(a, b) == a).count(),
            right_fixed: (0..n).filter(|&b| s.mul(b, a) == a).count(),
            square_is_self_or_top: (s.mul(a, a) == a, s.mul(a, a) == top),
        })
        .collect()
}

/// Depth-first search over maps `S -> T` that respect both operations.
///
/// Elements of `S` are assigned in index order and candidate images are
/// tried in increasing order, so the first map found is the
/// lexicographically least one.
fn search_homomorphisms<F>(
    s: &FiniteAiSemiring,
    t: &FiniteAiSemiring,
    injective: bool,
    allowed: &dyn Fn(Element, Element) -> bool,
    mut visit: F,
) -> Option<Vec<Element>>
where
    F: FnMut(&[Element]) -> ControlFlow<()>,
{
    let n = s.order();
    let m = t.order();
    let mut map: Vec<Option<Element>> = vec![None; n];
    let mut used = vec![false; m];

    // Checks every pair that involves the newly assigned `a`, either as an
    // argument or as the value of the operation.
    fn consistent(s: &FiniteAiSemiring, t: &FiniteAiSemiring, map: &[Option<Element>], a: Element) -> bool {
        let n = s.order();
        for x in 0..n {
            let Some(fx) = map[x] else { continue };
            for y in 0..n {
                let Some(fy) = map[y] else { continue };
                let (sum, prod) = (s.add(x, y), s.mul(x, y));
                if x != a && y != a && sum != a && prod != a {
                    continue;
                }
                if map[sum].is_some_and(|v| v != t.add(fx, fy)) || map[prod].is_some_and(|v| v != t.mul(fx, fy)) {
                    return false;
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn go<F: FnMut(&[Element]) -> ControlFlow<()>>(
        s: &FiniteAiSemiring,
        t: &FiniteAiSemiring,
        injective: bool,
        allowed: &dyn Fn(Element, Element) -> bool,
        a: Element,
        map: &mut Vec<Option<Element>>,
        used: &mut Vec<bool>,
        visit: &mut F,
    ) -> Option<Vec<Element>> {
        if a == s.order() {
            let full: Vec<Element> = map.iter().map(|x| x.expect("total")).collect();
            return match visit(&full) {
                ControlFlow::Break(()) => Some(full),
                ControlFlow::Continue(()) => None,
            };
        }
        for target in 0..t.order() {
            if injective && used[target] {
                continue;
            }
            if !allowed(a, target) {
                continue;
            }
            map[a] = Some(target);
            if consistent(s, t, map, a) {
                used[target] = true;
                let found = go(s, t, injective, allowed, a + 1, map, used, visit);
                used[target] = false;
                if found.is_some() {
                    return found;
                }
            }
            map[a] = None;
        }
        None
    }

    go(s, t, injective, allowed, 0, &mut map, &mut used, &mut visit)
}

/// The lexicographically least isomorphism `S -> T`, if any.
pub fn find_isomorphism(s: &FiniteAiSemiring, t: &FiniteAiSemiring) -> Option<Morphism> {
    if s.order() != t.order() {
        return None;
    }
    let (ss, ts) = (signatures(s), signatures(t));
    let mut sorted_s = ss.iter().map(sig_sort_key).collect::<Vec<_>>();
    let mut sorted_t = ts.iter().map(sig_sort_key).collect::<Vec<_>>();
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return None;
    }
    let allowed = |a: Element, b: Element| ss[a] == ts[b];
    let map = search_homomorphisms(s, t, true, &allowed, |_| ControlFlow::Break(()))?;
    Some(Morphism::new(s.clone(), t.clone(), map).expect("search yields homomorphisms"))
}

fn sig_sort_key(s: &Signature) -> (bool, usize, usize, bool, bool, usize, usize, (bool, bool)) {
    (
        s.idempotent,
        s.up,
        s.down,
        s.zero,
        s.identity,
        s.left_fixed,
        s.right_fixed,
        s.square_is_self_or_top,
    )
}

pub fn are_isomorphic(s: &FiniteAiSemiring, t: &FiniteAiSemiring) -> bool {
    s.order() == t.order() && canonical_form(s) == canonical_form(t)
}

/// The lexicographically least injective homomorphism `S -> T`, if any.
pub fn find_embedding(s: &FiniteAiSemiring, t: &FiniteAiSemiring) -> Option<Morphism> {
    if s.order() > t.order() {
        return None;
    }
    // Injective maps preserve and reflect idempotence.
    let allowed = |a: Element, b: Element| s.is_idempotent(a) == t.is_idempotent(b);
    let map = search_homomorphisms(s, t, true, &allowed, |_| ControlFlow::Break(()))?;
    Some(Morphism::new(s.clone(), t.clone(), map).expect("search yields homomorphisms"))
}

/// All injective homomorphisms `S -> T`, in lexicographic order.
pub fn all_embeddings(s: &FiniteAiSemiring, t: &FiniteAiSemiring) -> Vec<Vec<Element>> {
    let mut out = Vec::new();
    if s.order() > t.order() {
        return out;
    }
    let allowed = |a: Element, b: Element| s.is_idempotent(a) == t.is_idempotent(b);
    search_homomorphisms(s, t, true, &allowed, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// An embedding `S -> A x B` whose two coordinate projections are onto.
///
/// The product is indexed as in [`FiniteAiSemiring::direct_product`].
pub fn find_subdirect_embedding(s: &FiniteAiSemiring, a: &FiniteAiSemiring, b: &FiniteAiSemiring) -> Option<Morphism> {
    let product = a.direct_product(b);
    if s.order() > product.order() || s.order() < a.order().max(b.order()) {
        return None;
    }
    let m = b.order();
    let allowed = |x: Element, y: Element| s.is_idempotent(x) == product.is_idempotent(y);
    let map = search_homomorphisms(s, &product, true, &allowed, |map| {
        let left: std::collections::BTreeSet<_> = map.iter().map(|&p| p / m).collect();
        let right: std::collections::BTreeSet<_> = map.iter().map(|&p| p % m).collect();
        if left.len() == a.order() && right.len() == b.order() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Some(Morphism::new(s.clone(), product, map).expect("search yields homomorphisms"))
}

pub fn is_subdirect_embedding(s: &FiniteAiSemiring, a: &FiniteAiSemiring, b: &FiniteAiSemiring) -> bool {
    find_subdirect_embedding(s, a, b).is_some()
}

/// Number of automorphisms.
pub fn automorphism_count(s: &FiniteAiSemiring) -> usize {
    let sig = signatures(s);
    let allowed = |a: Element, b: Element| sig[a] == sig[b];
    let mut count = 0;
    search_homomorphisms(s, s, true, &allowed, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}
