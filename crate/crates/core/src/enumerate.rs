//! Enumeration of ai-semirings of small order up to isomorphism.
//!
//! For every semilattice `(S, +)` the multiplication is built row by row.
//! Left distributivity forces each row `y ↦ xy` to be a join-endomorphism of
//! `(S, +)`; right distributivity forces `x ↦ (y ↦ xy)` to preserve joins, so
//! only rows of join-irreducible elements are free. Associativity is checked
//! as soon as the three rows involved in a triple are known.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::Path;
use std::time::{Duration, Instant};

use crate::algebra::FiniteAiSemiring;
use crate::iso::{self, CanonicalKey};
use crate::json;
use crate::par::{self, Execution};

/// Largest order accepted by [`enumerate_semilattices`].
pub const MAX_SEMILATTICE_ORDER: usize = 6;

/// Addition tables of all semilattices of order `n`, one per isomorphism
/// class, sorted by canonical form.
///
/// Each table has the top at index 0, and `a < b` in the order implies
/// `a > b` as indices.
pub fn enumerate_semilattices(n: usize) -> Vec<Vec<u8>> {
    assert!((1..=MAX_SEMILATTICE_ORDER).contains(&n), "semilattice order must be in 1..=6");
    // Cells (a, b) with 0 < a < b; under the labelling above a + b has
    // index at most a.
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
    let mut table = vec![0u8; n * n];
    for a in 0..n {
        table[a * n + a] = a as u8;
    }
    let mut classes: BTreeMap<Vec<u8>, Vec<u8>> = BTreeMap::new();

    fn associative(n: usize, t: &[u8]) -> bool {
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] as usize * n + c] == t[a * n + t[b * n + c] as usize]))
        })
    }

    fn go(n: usize, cells: &[(usize, usize)], k: usize, table: &mut Vec<u8>, classes: &mut BTreeMap<Vec<u8>, Vec<u8>>) {
        if k == cells.len() {
            if associative(n, table) {
                let key = iso::canonical_tables(n, &[table], None);
                classes.entry(key).or_insert_with(|| table.clone());
            }
            return;
        }
        let (a, b) = cells[k];
        for v in 0..=a {
            table[a * n + b] = v as u8;
            table[b * n + a] = v as u8;
            go(n, cells, k + 1, table, classes);
        }
    }

    go(n, &cells, 0, &mut table, &mut classes);
    classes.into_values().collect()
}

fn height(n: usize, add: &[u8]) -> usize {
    let names = (0..n).map(|i| i.to_string()).collect();
    // Any multiplication works for the order; use the constant top product.
    FiniteAiSemiring::from_raw(String::new(), names, add.to_vec(), vec![0; n * n]).additive_height()
}

/// Join-endomorphisms of `(S, +)`, as value vectors.
fn join_endomorphisms(n: usize, add: &[u8]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut f = vec![0u8; n];
    fn go(n: usize, add: &[u8], i: usize, f: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == n {
            out.push(f.clone());
            return;
        }
        for v in 0..n as u8 {
            f[i] = v;
            let ok = (0..=i).all(|a| {
                (0..=i).all(|b| {
                    let s = add[a * n + b] as usize;
                    s > i || f[s] == add[f[a] as usize * n + f[b] as usize]
                })
            });
            if ok {
                go(n, add, i + 1, f, out);
            }
        }
    }
    go(n, add, 0, &mut f, &mut out);
    out
}

/// Search state for the multiplications over one semilattice.
struct MulSearch<'a> {
    n: usize,
    add: &'a [u8],
    endos: &'a [Vec<u8>],
    /// For each element, a pair of strictly lower elements joining to it.
    decomposition: Vec<Option<(usize, usize)>>,
}

impl<'a> MulSearch<'a> {
    fn new(n: usize, add: &'a [u8], endos: &'a [Vec<u8>]) -> Self {
        let decomposition = (0..n)
            .map(|x| {
                ((x + 1)..n)
                    .flat_map(|b| ((b + 1)..n).map(move |c| (b, c)))
                    .find(|&(b, c)| add[b * n + c] as usize == x)
            })
            .collect();
        Self { n, add, endos, decomposition }
    }

    /// Rows are assigned from index `n - 1` down to 0, i.e. bottom-up.
    fn consistent(&self, rows: &[Option<Vec<u8>>], x: usize) -> bool {
        let n = self.n;
        // Right distributivity on pairs where x is an argument or the join.
        // Every index >= x is assigned.
        for b in x..n {
            let rb = rows[b].as_ref().expect("assigned");
            for c in b..n {
                let s = self.add[b * n + c] as usize;
                if b != x && c != x && s != x {
                    continue;
                }
                let (Some(rc), Some(rs)) = (&rows[c], &rows[s]) else { continue };
                if (0..n).any(|z| rs[z] != self.add[rb[z] as usize * n + rc[z] as usize]) {
                    return false;
                }
            }
        }
        // Associativity (pq)r = p(qr) wherever rows p, q and pq are known.
        for p in x..n {
            let Some(rp) = &rows[p] else { continue };
            for q in x..n {
                let Some(rq) = &rows[q] else { continue };
                let pq = rp[q] as usize;
                if p != x && q != x && pq != x {
                    continue;
                }
                let Some(rpq) = &rows[pq] else { continue };
                if (0..n).any(|r| rpq[r] != rp[rq[r] as usize]) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&self, first_row: usize, out: &mut Vec<Vec<u8>>) {
        let n = self.n;
        let mut rows: Vec<Option<Vec<u8>>> = vec![None; n];
        rows[n - 1] = Some(self.endos[first_row].clone());
        if self.consistent(&rows, n - 1) {
            self.go(n - 1, &mut rows, out);
        }
    }

    fn go(&self, assigned_down_to: usize, rows: &mut Vec<Option<Vec<u8>>>, out: &mut Vec<Vec<u8>>) {
        if assigned_down_to == 0 {
            out.push(rows.iter().flat_map(|r| r.as_ref().expect("complete").iter().copied()).collect());
            return;
        }
        let x = assigned_down_to - 1;
        let n = self.n;
        match self.decomposition[x] {
            Some((b, c)) => {
                let (rb, rc) = (rows[b].as_ref().expect("lower"), rows[c].as_ref().expect("lower"));
                let forced: Vec<u8> = (0..n).map(|z| self.add[rb[z] as usize * n + rc[z] as usize]).collect();
                rows[x] = Some(forced);
                if self.consistent(rows, x) {
                    self.go(x, rows, out);
                }
            }
            None => {
                for e in self.endos {
                    rows[x] = Some(e.clone());
                    if self.consistent(rows, x) {
                        self.go(x, rows, out);
                    }
                }
            }
        }
        rows[x] = None;
    }
}

/// Options for [`enumerate_ai_semirings`].
#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    /// Only semilattices of height 1.
    pub height1_only: bool,
    pub execution: Execution,
}

#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub key: CanonicalKey,
    pub semiring: FiniteAiSemiring,
    pub height: usize,
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    pub order: usize,
    /// Sorted by canonical key.
    pub algebras: Vec<CensusEntry>,
    pub elapsed: Duration,
}

impl CensusResult {
    pub fn count(&self) -> usize {
        self.algebras.len()
    }

    pub fn height1(&self) -> Vec<&CensusEntry> {
        self.algebras.iter().filter(|e| e.height == 1).collect()
    }

    pub fn find(&self, key: &CanonicalKey) -> Option<&CensusEntry> {
        self.algebras.binary_search_by(|e| e.key.cmp(key)).ok().map(|i| &self.algebras[i])
    }
}

/// All ai-semirings of order `n` up to isomorphism.
pub fn enumerate_ai_semirings(n: usize, options: EnumerateOptions) -> CensusResult {
    let start = Instant::now();
    let lattices: Vec<Vec<u8>> = enumerate_semilattices(n)
        .into_iter()
        .filter(|add| !options.height1_only || height(n, add) == 1)
        .collect();
    let endos: Vec<Vec<Vec<u8>>> = lattices.iter().map(|add| join_endomorphisms(n, add)).collect();
    let tasks: Vec<(usize, usize)> =
        (0..lattices.len()).flat_map(|l| (0..endos[l].len()).map(move |e| (l, e))).collect();
    let found = par::map(options.execution, &tasks, |&(l, e)| {
        let search = MulSearch::new(n, &lattices[l], &endos[l]);
        let mut out = Vec::new();
        search.run(e, &mut out);
        out
    });
    // Merge per semilattice, dedup under its automorphisms, then canonicalise.
    let mut per_lattice: Vec<Vec<Vec<u8>>> = vec![Vec::new(); lattices.len()];
    for ((l, _), tables) in tasks.iter().zip(found) {
        per_lattice[*l].extend(tables);
    }
    let reps = par::map_range(options.execution, lattices.len(), |l| {
        let add = &lattices[l];
        let autos = iso::table_automorphisms(n, add);
        let classes: BTreeSet<Vec<u8>> =
            per_lattice[l].iter().map(|mul| iso::canonical_tables(n, &[mul], Some(&autos))).collect();
        let h = height(n, add);
        classes
            .into_iter()
            .map(|mul| {
                let key = iso::canonical_from_raw(n, add, &mul);
                (key, h)
            })
            .collect::<Vec<_>>()
    });
    let mut algebras: Vec<CensusEntry> = reps
        .into_iter()
        .flatten()
        .map(|(key, height)| {
            let semiring = key.to_semiring(String::new());
            CensusEntry { key, semiring, height }
        })
        .collect();
    algebras.sort_by(|a, b| a.key.cmp(&b.key));
    algebras.dedup_by(|a, b| a.key == b.key);
    for (i, e) in algebras.iter_mut().enumerate() {
        e.semiring = e.semiring.clone().with_name(format!("A{n}.{}", i + 1));
    }
    CensusResult { order: n, algebras, elapsed: start.elapsed() }
}

pub const INDEX_FILE: &str = "index.txt";

/// Writes one semiring JSON file per algebra plus an index of
/// `<canonical-key-hex> <filename>` lines.
pub fn write_census(dir: &Path, census: &CensusResult) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut index = String::new();
    for (i, e) in census.algebras.iter().enumerate() {
        let file = format!("order{}-{:04}.json", census.order, i + 1);
        fs::write(dir.join(&file), json::semiring_to_json(&e.semiring) + "\n")?;
        index.push_str(&format!("{} {}\n", e.key.to_hex(), file));
    }
    fs::write(dir.join(INDEX_FILE), index)
}

/// Reads a census directory back, checking every key against its table.
pub fn read_census(dir: &Path) -> io::Result<Vec<(CanonicalKey, FiniteAiSemiring)>> {
    let bad = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let index = fs::read_to_string(dir.join(INDEX_FILE))?;
    let mut out = Vec::new();
    for line in index.lines().filter(|l| !l.trim().is_empty()) {
        let (key, file) = line.split_once(' ').ok_or_else(|| bad(format!("bad index line {line:?}")))?;
        let key: CanonicalKey = key.parse().map_err(|e| bad(format!("{e}")))?;
        let s = json::semiring_from_json(&fs::read_to_string(dir.join(file.trim()))?)
            .map_err(|e| bad(format!("{file}: {e}")))?;
        if iso::canonical_form(&s) != key {
            return Err(bad(format!("{file} does not match its key")));
        }
        out.push((key, s));
    }
    Ok(out)
}
