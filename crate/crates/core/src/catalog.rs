//! Named semirings, their equational bases and structural facts about them.
//!
//! Order-4 entries `S_(4,k)` share one addition: `x + x = x` and `x + y = 1`
//! otherwise, where `1` (index 0) is the top. Order-3 entries are cut out of
//! them as subalgebras, or pinned down inside the order-3 census by the facts
//! they must satisfy.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Element, FiniteAiSemiring};
use crate::constructions::{self, ConstructionError, WordKind, WordSemiringSpec};
use crate::enumerate::{enumerate_ai_semirings, EnumerateOptions};
use crate::eval::{self, EvalError};
use crate::iso::{self, CanonicalKey};
use crate::term::{Identity, TermError, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown semiring {0:?}")]
    Unknown(String),
    #[error("{name}: {count} order-3 candidates satisfy the defining facts")]
    Ambiguous { name: String, count: usize },
    #[error("malformed reference {0:?}")]
    BadReference(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// Multiplication tables of `S_(4,1)` .. `S_(4,58)`, rows written with the
/// labels `1..4`.
const ORDER4: [&str; 58] = [
    "1111 1111 1111 1111",
    "1111 1111 1111 1112",
    "1111 1111 1111 1114",
    "1111 1111 1112 1111",
    "1111 1111 1113 1114",
    "1111 1112 1113 1114",
    "1114 1114 1114 1114",
    "1111 1111 1112 1121",
    "1111 1111 1112 1123",
    "1111 1111 1111 1134",
    "1111 1111 1113 1134",
    "1111 1112 1111 1134",
    "1111 1112 1113 1134",
    "1111 1111 1121 1112",
    "1111 1111 1121 1114",
    "1114 1114 1124 1114",
    "1111 1111 1131 1114",
    "1111 1112 1131 1114",
    "1114 1114 1134 1114",
    "1111 1111 1134 1143",
    "1114 1124 1134 1114",
    "1134 1134 1134 1134",
    "1111 1111 1111 1234",
    "1111 1111 1113 1234",
    "1111 1112 1113 1234",
    "1111 1112 1123 1234",
    "1111 1111 1131 1214",
    "1111 1112 1131 1214",
    "1111 1121 1131 1214",
    "1131 1131 1131 1234",
    "1131 1132 1131 1234",
    "1111 1211 1131 1114",
    "1114 1214 1134 1114",
    "1111 1211 1134 1143",
    "1134 1234 1134 1134",
    "1131 1234 1131 1432",
    "1111 1234 1342 1423",
    "1234 1234 1234 1234",
    "1111 1111 1111 4444",
    "1114 1114 1114 4444",
    "1111 1111 1121 4444",
    "1114 1114 1124 4444",
    "1111 1111 1131 4444",
    "1114 1114 1134 4444",
    "1111 1121 1131 4444",
    "1114 1124 1134 4444",
    "1111 1111 1231 4444",
    "1114 1114 1234 4444",
    "1111 1121 1231 4444",
    "1114 1124 1234 4444",
    "1111 1211 1131 4444",
    "1114 1214 1134 4444",
    "1111 1231 1321 4444",
    "1114 1234 1324 4444",
    "1111 1111 3333 4444",
    "1111 1211 3333 4444",
    // Printed with first row 1114, which is not right distributive; this
    // is the left-zero band that completes the height-one census.
    "1111 2222 3333 4444",
    "2222 2222 2222 2222",
];

/// `S_(4,57)` exactly as it appears in the published table.
pub const ORDER4_57_AS_PRINTED: &str = "1114 2222 3333 4444";

/// Order-4 entries without a finite basis.
pub const NONFINITELY_BASED: [usize; 9] = [11, 13, 24, 25, 26, 28, 31, 49, 50];

/// Parses a four-row table written with labels `1..4`.
pub fn parse_order4_rows(rows: &str) -> Vec<Vec<Element>> {
    rows.split_whitespace()
        .map(|r| r.bytes().map(|b| (b - b'1') as Element).collect())
        .collect()
}

/// The shared height-one addition on `{1,2,3,4}` with top `1`.
pub fn order4_addition() -> Vec<Vec<Element>> {
    (0..4).map(|a| (0..4).map(|b| if a == b { a } else { 0 }).collect()).collect()
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn order4(k: usize) -> Option<FiniteAiSemiring> {
    let rows = ORDER4.get(k.checked_sub(1)?)?;
    Some(
        FiniteAiSemiring::new(format!("S_(4,{k})"), labels(4), &order4_addition(), &parse_order4_rows(rows))
            .expect("catalogued tables are lawful"),
    )
}

fn two_element(name: &str) -> Option<FiniteAiSemiring> {
    let mul = match name {
        "L2" => [[0, 0], [1, 1]],
        "R2" => [[0, 1], [0, 1]],
        "M2" => [[0, 1], [1, 1]],
        "D2" => [[0, 0], [0, 1]],
        "N2" => [[0, 0], [0, 0]],
        "T2" => [[1, 1], [1, 1]],
        _ => return None,
    };
    let mul: Vec<Vec<Element>> = mul.iter().map(|r| r.to_vec()).collect();
    Some(
        FiniteAiSemiring::new(name, vec!["0".into(), "1".into()], &[vec![0, 1], vec![1, 1]], &mul)
            .expect("two-element tables are lawful"),
    )
}

pub const TWO_ELEMENT: [&str; 6] = ["L2", "R2", "M2", "D2", "N2", "T2"];

/// Subalgebra of an order-4 entry on the given labels.
fn cut(k: usize, members: &[usize], name: &str) -> FiniteAiSemiring {
    let s = order4(k).expect("catalogued");
    let seed: Vec<Element> = members.iter().map(|m| m - 1).collect();
    let (sub, _) = s.generated_subalgebra(&seed).expect("nonempty seed");
    assert_eq!(sub.order(), members.len(), "{name} seed is closed");
    sub.with_name(name)
}

/// Order-3 entries cut out of order-4 ones: (name, host, labels).
const CUT_ENTRIES: [(&str, usize, [usize; 3]); 3] = [("S2", 15, [1, 2, 3]), ("S4", 47, [1, 2, 3]), ("S10", 20, [1, 3, 4])];

/// Order-3 entries identified inside the census: name, host, the other
/// subdirect factor, and the order-2 semirings that must embed.
const PINNED: [(&str, usize, &str, [&str; 2]); 5] = [
    ("S5", 41, "S2", ["L2", "T2"]),
    ("S9", 47, "S4", ["L2", "M2"]),
    ("S13", 42, "S2", ["D2", "T2"]),
    ("S14", 30, "S4", ["R2", "M2"]),
    ("S15", 48, "S4", ["M2", "D2"]),
];

fn order3_census() -> &'static [FiniteAiSemiring] {
    static CENSUS: OnceLock<Vec<FiniteAiSemiring>> = OnceLock::new();
    CENSUS.get_or_init(|| {
        enumerate_ai_semirings(3, EnumerateOptions::default())
            .algebras
            .into_iter()
            .map(|e| e.semiring)
            .collect()
    })
}

/// Order-3 census members satisfying the facts that define `name`.
pub fn pinned_candidates(name: &str) -> Option<Vec<FiniteAiSemiring>> {
    let &(_, host, other, embeds) = PINNED.iter().find(|p| p.0 == name)?;
    let host = order4(host).expect("catalogued");
    let other = get(other).expect("cut entries resolve");
    let small: Vec<FiniteAiSemiring> = embeds.iter().map(|e| two_element(e).expect("order two")).collect();
    Some(
        order3_census()
            .iter()
            .filter(|c| small.iter().all(|t| iso::find_embedding(t, c).is_some()))
            .filter(|c| iso::is_subdirect_embedding(&host, &other, c))
            .map(|c| c.clone().with_name(name))
            .collect(),
    )
}

fn pinned(name: &str) -> Option<Result<FiniteAiSemiring, CatalogError>> {
    static CACHE: OnceLock<BTreeMap<&'static str, Result<FiniteAiSemiring, CatalogError>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        PINNED
            .iter()
            .map(|&(n, ..)| {
                let mut found = pinned_candidates(n).expect("listed");
                let r = if found.len() == 1 {
                    Ok(found.pop().expect("one"))
                } else {
                    Err(CatalogError::Ambiguous { name: n.to_string(), count: found.len() })
                };
                (n, r)
            })
            .collect()
    });
    cache.get(name).cloned()
}

/// Normalises `S_(4,41)`, `S(4, 41)`, `s_{(4,41)}` and the like.
fn normalise(name: &str) -> String {
    name.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect::<String>().to_ascii_uppercase()
}

fn parse_order4_name(norm: &str) -> Option<usize> {
    let inner = norm.strip_prefix("S(4,")?.strip_suffix(')')?;
    inner.parse().ok().filter(|k| (1..=58).contains(k))
}

/// Every catalogue name, in listing order.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = TWO_ELEMENT.iter().map(|s| s.to_string()).collect();
    out.push("S7".into());
    for n in ["S2", "S4", "S5", "S6", "S9", "S10", "S13", "S14", "S15"] {
        out.push(n.into());
    }
    out.extend((1..=58).map(|k| format!("S_(4,{k})")));
    out
}

/// Looks up a catalogue entry by name.
pub fn get(name: &str) -> Result<FiniteAiSemiring, CatalogError> {
    let norm = normalise(name);
    if let Some(k) = parse_order4_name(&norm) {
        return Ok(order4(k).expect("in range"));
    }
    if let Some(s) = TWO_ELEMENT.iter().find(|n| **n == norm).and_then(|n| two_element(n)) {
        return Ok(s);
    }
    if norm == "S7" {
        return Ok(constructions::s7());
    }
    if let Some(&(n, host, members)) = CUT_ENTRIES.iter().find(|c| c.0 == norm) {
        return Ok(cut(host, &members, n));
    }
    if norm == "S6" {
        return Ok(get("S4")?.dual().with_name("S6"));
    }
    if let Some(r) = pinned(&norm) {
        return r;
    }
    Err(CatalogError::Unknown(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    FinitelyBased,
    NonfinitelyBased,
    /// Not settled here; known from elsewhere or not needed.
    External,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::FinitelyBased => "finitely-based",
            Status::NonfinitelyBased => "nonfinitely-based",
            Status::External => "external",
        })
    }
}

pub fn status(name: &str) -> Status {
    match parse_order4_name(&normalise(name)) {
        Some(k) if NONFINITELY_BASED.contains(&k) => Status::NonfinitelyBased,
        Some(_) => Status::FinitelyBased,
        None => Status::External,
    }
}

/// One identity of a basis; variables listed in `optional` may be deleted.
#[derive(Debug, Clone, Copy)]
pub struct BasisItem {
    pub text: &'static str,
    pub optional: &'static [&'static str],
}

const fn item(text: &'static str) -> BasisItem {
    BasisItem { text, optional: &[] }
}

const fn scheme(text: &'static str, optional: &'static [&'static str]) -> BasisItem {
    BasisItem { text, optional }
}

const BASES: [(usize, &[BasisItem]); 10] = [
    (
        4,
        &[
            item("x1x2x3 ≈ x1x2x3 + x4"),
            item("x^2 ≈ x^2 + y"),
            item("x + xy ≈ x^2"),
            item("x + yx ≈ x^2"),
            item("x1x2 + x3x4 ≈ x1x2 + x3x4 + x1x4"),
        ],
    ),
    (
        14,
        &[
            item("xy ≈ yx"),
            item("xy ≈ xy + x^2"),
            item("x + xy ≈ x^3"),
            item("x1x2x3 ≈ x1x2x3 + x4"),
            item("xy + yz ≈ xy + yz + xz"),
        ],
    ),
    (
        20,
        &[
            item("x^4 ≈ x^2"),
            item("xy ≈ yx"),
            item("xy^2 ≈ xy^2 + x"),
            item("x1x2 + x3 + x4 ≈ x1x2 + x3 + x4 + x1x2x3x4"),
        ],
    ),
    (
        15,
        &[
            item("xy ≈ yx"),
            item("xy ≈ x^2 + y^2"),
            item("xyz ≈ xyz + x"),
            item("x^2 + x ≈ x^3"),
            item("x1x2x3 + x4 ≈ x1x2x3x4"),
        ],
    ),
    (
        41,
        &[
            item("xy + x ≈ xy + x^3"),
            item("yx + x ≈ yx + x^3"),
            item("x1y1z1 + x2y2 ≈ x1y1z1 + x2"),
            item("x1y1z1 + x2 ≈ x1y1z1 + x2 + x2y2"),
            item("x1y1 + x2y2 ≈ x1y1 + x2y2 + x1x2"),
            item("x1y1 + x2y2 ≈ x1y1 + x2y2 + x1y2"),
        ],
    ),
    (
        42,
        &[
            item("x^4 ≈ x^3"),
            item("xy ≈ yx"),
            item("x^3 ≈ x + xy"),
            item("x^2 + yz ≈ x^2 + yz + xy"),
            item("x1x2x3 + x4 ≈ x1x2x3 + x4 + x4x5"),
        ],
    ),
    (
        30,
        &[
            item("x^2y ≈ xy"),
            item("xyz ≈ yxz"),
            item("x + y^2 ≈ x + y^2 + y^2x^2"),
            item("x + yz ≈ x + yz + yx"),
            item("xy ≈ xy + y"),
        ],
    ),
    (
        47,
        &[
            item("x^2y ≈ xy"),
            item("x1x2x3x4 ≈ x1x3x2x4"),
            item("x^2 ≈ x^2 + x"),
            item("x^2y^2 ≈ x^2y^2 + x^2"),
            item("x + y^2 ≈ x + y^2 + x^2y^2"),
            item("x + y^2 ≈ x + y^2 + y^2x^2"),
            item("x + yz ≈ x + yz + yx"),
            item("xy + zx ≈ zy + x^2"),
        ],
    ),
    (
        48,
        &[
            item("x^2y ≈ xy"),
            item("xyz ≈ yxz"),
            item("x^2 ≈ x^2 + x"),
            item("x + y^2 ≈ x + y^2 + x^2y^2"),
            item("x + yz ≈ x + yz + yx"),
            item("x + xyz ≈ x + xyz + xy"),
            item("z + xyz ≈ z + xyz + yz"),
        ],
    ),
    (
        12,
        &[
            item("x^2 ≈ x^4"),
            item("x^2y^2 ≈ (xy)^2"),
            item("x^2y^2 ≈ y^2x^2"),
            item("x^2 ≈ x^2 + x"),
            item("x^2y^2 ≈ x^2y^2 + x^2"),
            item("x + yx ≈ y^2x"),
            item("x + xy ≈ xy^2"),
            item("x + y^2 ≈ x + y^2 + y^2x^2"),
            item("xy^2 + z ≈ xy^2 + zy"),
            item("x^2y + z ≈ x^2y + xz"),
            scheme("x1^2x2 + x3x4^2 ≈ x1^2x2^2x3^2x4^2", &["x2", "x3"]),
            item("x1x2 + y1y2 ≈ x1x2 + y1y2 + x1y2"),
            item("x1x2 + x3x2x4 ≈ x1x2 + x3x2x4 + x1"),
            item("x1x2 + x3x1x4 ≈ x1x2 + x3x1x4 + x2"),
            scheme("x1x2 + y1x2y2 ≈ x1x2 + y1x2y2 + x1x2y2^2", &["x1", "y1"]),
            scheme("x1x2 + y1x1y2 ≈ x1x2 + y1x1y2 + y1^2x1x2", &["x2", "y2"]),
            item("x1x2 + x3x2x4 + x5 ≈ x1x2 + x3x2x4 + x5x2"),
            item("x1x2 + x3x1x4 + x5 ≈ x1x2 + x3x1x4 + x1x5"),
            scheme("x1x2 + y1x1y2x1y3 ≈ x1x2 + y1x1y2x1y3 + x1^2x2", &["x2", "y1", "y2", "y3"]),
            scheme("x1x2 + y1x2y2x2y3 ≈ x1x2 + y1x2y2x2y3 + x1x2^2", &["x1", "y1", "y2", "y3"]),
        ],
    ),
];

/// Names of the entries with a catalogued basis.
pub fn basis_names() -> Vec<String> {
    BASES.iter().map(|(k, _)| format!("S_(4,{k})")).collect()
}

pub fn basis_items(name: &str) -> Option<&'static [BasisItem]> {
    let k = parse_order4_name(&normalise(name))?;
    BASES.iter().find(|(b, _)| *b == k).map(|(_, items)| *items)
}

/// Expands a scheme into its instances, one per subset of deleted optional
/// variables; instances that would contain an empty word are dropped.
pub fn expand_item(it: &BasisItem) -> Result<Vec<Identity>, TermError> {
    let id: Identity = it.text.parse()?;
    let optional: Vec<Var> = it.optional.iter().map(|v| v.parse()).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for mask in 0u32..(1 << optional.len()) {
        let deleted: BTreeSet<Var> = (0..optional.len()).filter(|i| mask >> i & 1 == 1).map(|i| optional[i]).collect();
        if let Some(inst) = id.delete_vars(&deleted) {
            if !out.contains(&inst) {
                out.push(inst);
            }
        }
    }
    Ok(out)
}

/// The concrete identity list of a basis, schemes expanded.
pub fn basis(name: &str) -> Option<Vec<Identity>> {
    let items = basis_items(name)?;
    Some(items.iter().flat_map(|it| expand_item(it).expect("catalogued identities parse")).collect())
}

/// Resolves a catalogue name or an inline construction:
///
/// `@s:W`, `@sc:W`, `@m:W`, `@mc:W` (comma-separated words), `@dual:R`,
/// `@prod:R1,R2`, `@ne:R`, `@ie:R`, `@flatext:zN`.
pub fn resolve(reference: &str) -> Result<FiniteAiSemiring, CatalogError> {
    let r = reference.trim();
    let Some(body) = r.strip_prefix('@') else {
        return get(r);
    };
    let (op, arg) = body.split_once(':').ok_or_else(|| CatalogError::BadReference(r.to_string()))?;
    let arg = arg.trim();
    let word = |kind| -> Result<FiniteAiSemiring, CatalogError> {
        Ok(constructions::word_semiring(&WordSemiringSpec::parse(kind, arg)?)?)
    };
    match op.to_ascii_lowercase().as_str() {
        "s" => word(WordKind::S),
        "sc" => word(WordKind::Sc),
        "m" => word(WordKind::M),
        "mc" => word(WordKind::Mc),
        "dual" => Ok(resolve(arg)?.dual()),
        "ne" => Ok(constructions::null_extension(&resolve(arg)?)?),
        "ie" => Ok(constructions::idempotent_extension(&resolve(arg)?)?),
        "prod" => {
            let (a, b) = split_top_level_comma(arg).ok_or_else(|| CatalogError::BadReference(r.to_string()))?;
            Ok(resolve(a)?.direct_product(&resolve(b)?))
        }
        "flatext" => {
            let n: usize = arg
                .strip_prefix(['z', 'Z'])
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| CatalogError::BadReference(r.to_string()))?;
            Ok(constructions::flat_extension_cyclic(n)?)
        }
        _ => Err(CatalogError::BadReference(r.to_string())),
    }
}

/// Splits at the first comma outside parentheses.
pub fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((s[..i].trim(), s[i + 1..].trim())),
            _ => {}
        }
    }
    None
}

/// Canonical key to catalogue name, for every entry.
fn key_index() -> &'static BTreeMap<CanonicalKey, Vec<String>> {
    static INDEX: OnceLock<BTreeMap<CanonicalKey, Vec<String>>> = OnceLock::new();
    INDEX.get_or_init(|| {
        let mut map: BTreeMap<CanonicalKey, Vec<String>> = BTreeMap::new();
        // Order-4 entries first so that they win `classify`.
        let mut order: Vec<String> = (1..=58).map(|k| format!("S_(4,{k})")).collect();
        order.extend(names().into_iter().filter(|n| !n.starts_with("S_(4,")));
        for name in order {
            if let Ok(s) = get(&name) {
                map.entry(iso::canonical_form(&s)).or_default().push(name);
            }
        }
        map
    })
}

/// The first catalogue entry isomorphic to `s`.
pub fn classify(s: &FiniteAiSemiring) -> Option<String> {
    key_index().get(&iso::canonical_form(s)).and_then(|v| v.first().cloned())
}

/// All catalogue entries isomorphic to `s`.
pub fn classify_all(s: &FiniteAiSemiring) -> Vec<String> {
    key_index().get(&iso::canonical_form(s)).cloned().unwrap_or_default()
}

/// Filters for [`list`].
#[derive(Debug, Clone, Default)]
pub struct ListFilter {
    pub order: Option<usize>,
    pub height1: Option<bool>,
    pub status: Option<Status>,
    pub flat: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ListedEntry {
    pub name: String,
    pub order: usize,
    pub height: usize,
    pub flat: bool,
    pub status: Status,
    pub has_basis: bool,
}

pub fn list(filter: &ListFilter) -> Vec<ListedEntry> {
    names()
        .into_iter()
        .filter_map(|name| {
            let s = get(&name).ok()?;
            let e = ListedEntry {
                order: s.order(),
                height: s.additive_height(),
                flat: constructions::is_flat(&s),
                status: status(&name),
                has_basis: basis_items(&name).is_some(),
                name,
            };
            let keep = filter.order.is_none_or(|o| o == e.order)
                && filter.height1.is_none_or(|h| h == (e.height == 1))
                && filter.status.is_none_or(|st| st == e.status)
                && filter.flat.is_none_or(|f| f == e.flat);
            keep.then_some(e)
        })
        .collect()
}

/// A checkable structural fact. Operands are catalogue references.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Claim {
    Isomorphic { a: String, b: String },
    /// The multiplicative dual of `a` is isomorphic to `b`.
    Dual { a: String, b: String },
    Embeds { small: String, big: String },
    Subdirect { s: String, a: String, b: String },
    /// The listed elements of `host` (by name) form a subalgebra isomorphic to `b`.
    Subalgebra { host: String, members: Vec<String>, b: String },
    NfbWitness { s: String, expected: bool },
    Flat { s: String, expected: bool },
    BasisHolds { s: String },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Isomorphic { a, b } => write!(f, "{a} ≅ {b}"),
            Claim::Dual { a, b } => write!(f, "dual({a}) ≅ {b}"),
            Claim::Embeds { small, big } => write!(f, "{small} embeds in {big}"),
            Claim::Subdirect { s, a, b } => write!(f, "{s} is subdirect in {a}×{b}"),
            Claim::Subalgebra { host, members, b } => write!(f, "{{{}}} ⊆ {host} ≅ {b}", members.join(",")),
            Claim::NfbWitness { s, expected } => write!(f, "nfb witness for {s} is {expected}"),
            Claim::Flat { s, expected } => write!(f, "{s} is {}flat", if *expected { "" } else { "not " }),
            Claim::BasisHolds { s } => write!(f, "basis of {s} holds in {s}"),
        }
    }
}

fn iso_claim(a: &str, b: &str) -> Claim {
    Claim::Isomorphic { a: a.into(), b: b.into() }
}

fn o4(k: usize) -> String {
    format!("S_(4,{k})")
}

/// Every catalogued fact.
pub fn claims() -> Vec<Claim> {
    let mut out = vec![
        iso_claim("S_(4,14)", "S_(4,14)"),
        iso_claim("S_(4,8)", "@sc:ab"),
        iso_claim("S_(4,9)", "@sc:a^3"),
        iso_claim("S_(4,4)", "@s:ab"),
        iso_claim("@mc:a", "S7"),
        iso_claim("@m:a", "S7"),
        iso_claim("@s:a", "T2"),
        iso_claim("S_(4,37)", "@flatext:z3"),
        iso_claim("S10", "@flatext:z2"),
        iso_claim("S_(4,15)", "@ie:S2"),
    ];
    for (a, b) in [(16, 41), (21, 47), (46, 48), (45, 30)] {
        out.push(Claim::Dual { a: o4(a), b: o4(b) });
    }
    out.push(Claim::Dual { a: "S4".into(), b: "S6".into() });
    for (s, a, b) in [
        (20, "S10", "T2"),
        (41, "S2", "S5"),
        (42, "S2", "S13"),
        (30, "S4", "S14"),
        (47, "S4", "S9"),
        (48, "S4", "S15"),
        (6, "S6", "S6"),
        (12, "S4", "S6"),
    ] {
        out.push(Claim::Subdirect { s: o4(s), a: a.into(), b: b.into() });
    }
    for (small, big) in [
        ("L2", "S5"),
        ("T2", "S5"),
        ("L2", "S9"),
        ("M2", "S9"),
        ("D2", "S13"),
        ("T2", "S13"),
        ("R2", "S14"),
        ("M2", "S14"),
        ("M2", "S15"),
        ("D2", "S15"),
        ("M2", "S4"),
        ("T2", "S4"),
        ("T2", "S2"),
    ] {
        out.push(Claim::Embeds { small: small.into(), big: big.into() });
    }
    for (host, members, b) in [
        (20, &["1", "2"][..], "T2"),
        (20, &["1", "3", "4"][..], "S10"),
        (15, &["1", "4"][..], "M2"),
        (15, &["1", "2", "3"][..], "S2"),
        (41, &["1", "4"][..], "L2"),
        (47, &["1", "4"][..], "L2"),
        (42, &["1", "4"][..], "D2"),
        (48, &["1", "4"][..], "D2"),
        (30, &["1", "3"][..], "R2"),
        (47, &["1", "2", "3"][..], "S4"),
        (30, &["1", "2", "4"][..], "S4"),
        (12, &["1", "3", "4"][..], "S4"),
        (12, &["1", "2", "4"][..], "S6"),
    ] {
        out.push(Claim::Subalgebra {
            host: o4(host),
            members: members.iter().map(|m| m.to_string()).collect(),
            b: b.into(),
        });
    }
    for k in NONFINITELY_BASED {
        out.push(Claim::Embeds { small: "S7".into(), big: o4(k) });
        out.push(Claim::NfbWitness { s: o4(k), expected: true });
    }
    out.push(Claim::NfbWitness { s: o4(1), expected: false });
    out.push(Claim::NfbWitness { s: "T2".into(), expected: false });
    out.push(Claim::Flat { s: "S7".into(), expected: true });
    out.push(Claim::Flat { s: "@prod:S7,S7".into(), expected: false });
    for name in basis_names() {
        out.push(Claim::BasisHolds { s: name });
    }
    out
}

/// A named semiring with everything the catalogue knows about it.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub semiring: FiniteAiSemiring,
    pub status: Status,
    pub basis: Option<Vec<Identity>>,
    pub claims: Vec<Claim>,
}

pub fn entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    let semiring = get(name)?;
    let name = semiring.name().to_string();
    let claims = claims().into_iter().filter(|c| c.mentions(&name)).collect();
    Ok(CatalogEntry { status: status(&name), basis: basis(&name), claims, semiring, name })
}

impl Claim {
    fn operands(&self) -> Vec<&str> {
        match self {
            Claim::Isomorphic { a, b } | Claim::Dual { a, b } => vec![a, b],
            Claim::Embeds { small, big } => vec![small, big],
            Claim::Subdirect { s, a, b } => vec![s, a, b],
            Claim::Subalgebra { host, b, .. } => vec![host, b],
            Claim::NfbWitness { s, .. } | Claim::Flat { s, .. } | Claim::BasisHolds { s } => vec![s],
        }
    }

    /// Whether `name` appears as an operand (inline references are not unpacked).
    pub fn mentions(&self, name: &str) -> bool {
        let n = normalise(name);
        self.operands().iter().any(|o| normalise(o) == n)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub claim: Claim,
    pub description: String,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Error)]
enum CheckError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Other(String),
}

fn check(claim: &Claim) -> Result<bool, CheckError> {
    Ok(match claim {
        Claim::Isomorphic { a, b } => iso::find_isomorphism(&resolve(a)?, &resolve(b)?).is_some(),
        Claim::Dual { a, b } => iso::find_isomorphism(&resolve(a)?.dual(), &resolve(b)?).is_some(),
        Claim::Embeds { small, big } => iso::find_embedding(&resolve(small)?, &resolve(big)?).is_some(),
        Claim::Subdirect { s, a, b } => iso::is_subdirect_embedding(&resolve(s)?, &resolve(a)?, &resolve(b)?),
        Claim::Subalgebra { host, members, b } => {
            let h = resolve(host)?;
            let seed = members
                .iter()
                .map(|m| h.element_index(m).ok_or_else(|| CheckError::Other(format!("{host} has no element {m}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let (sub, _) = h.generated_subalgebra(&seed).map_err(|e| CheckError::Other(e.to_string()))?;
            sub.order() == seed.len() && iso::find_isomorphism(&sub, &resolve(b)?).is_some()
        }
        Claim::NfbWitness { s, expected } => constructions::nfb_witness(&resolve(s)?).conclusion == *expected,
        Claim::Flat { s, expected } => constructions::is_flat(&resolve(s)?) == *expected,
        Claim::BasisHolds { s } => {
            let ids = basis(s).ok_or_else(|| CheckError::Other(format!("{s} has no basis")))?;
            eval::check_basis(&resolve(s)?, &ids)?.all_hold()
        }
    })
}

pub fn verify_claim(claim: &Claim) -> ClaimResult {
    let (holds, detail) = match check(claim) {
        Ok(h) => (h, None),
        Err(e) => (false, Some(e.to_string())),
    };
    ClaimResult { description: claim.to_string(), claim: claim.clone(), holds, detail }
}

pub fn verify_all_claims() -> Vec<ClaimResult> {
    claims().iter().map(verify_claim).collect()
}
