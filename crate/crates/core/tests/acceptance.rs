//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use aisemiring::catalog::{self, ListFilter};
use aisemiring::constructions;
use aisemiring::criteria::{oracle_sweep, Family, Lemma};
use aisemiring::derivation;
use aisemiring::enumerate::{enumerate_ai_semirings, EnumerateOptions};
use aisemiring::eval;
use aisemiring::iso;
use aisemiring::par::Execution;
use aisemiring::FiniteAiSemiring;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census_counts() -> Outcome {
    let opts = EnumerateOptions::default();
    let mut seen = Vec::new();
    for (n, expected) in [(2, 6), (3, 61), (4, 866)] {
        let t = Instant::now();
        let c = enumerate_ai_semirings(n, opts).count();
        ensure(c == expected, || format!("order {n}: {c} algebras, expected {expected}"))?;
        seen.push(format!("{n}:{c} ({:.2?})", t.elapsed()));
    }
    let h1 = enumerate_ai_semirings(4, EnumerateOptions { height1_only: true, ..opts }).count();
    ensure(h1 == 58, || format!("order 4 height 1: {h1}, expected 58"))?;
    Ok(format!("{}, height-1 order 4: {h1}", seen.join(", ")))
}

fn table_fidelity() -> Outcome {
    let census = enumerate_ai_semirings(4, EnumerateOptions::default());
    let mut matched: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 1..=58 {
        let s = catalog::order4(k).ok_or(format!("S_(4,{k}) missing"))?;
        ensure(s.is_valid(), || format!("S_(4,{k}) fails validation"))?;
        ensure(s.additive_height() == 1, || format!("S_(4,{k}) has height {}", s.additive_height()))?;
        let top = s.natural_order().top();
        ensure(s.element_name(top) == "1", || format!("S_(4,{k}) top is {}", s.element_name(top)))?;
        let hits: Vec<usize> =
            census.algebras.iter().enumerate().filter(|(_, e)| iso::are_isomorphic(&s, &e.semiring)).map(|(i, _)| i).collect();
        ensure(hits.len() == 1, || format!("S_(4,{k}) matches {} census members", hits.len()))?;
        if let Some(prev) = matched.insert(hits[0], k) {
            return Err(format!("S_(4,{prev}) and S_(4,{k}) match the same census member"));
        }
    }
    let h1 = census.height1().len();
    ensure(matched.len() == h1, || format!("{} tables matched but census has {h1} height-1 members", matched.len()))?;
    Ok("58 tables valid, height 1, top 1, bijective with the height-1 census".into())
}

fn basis_satisfaction() -> Outcome {
    let t = Instant::now();
    let mut total = 0;
    for name in catalog::basis_names() {
        let s = catalog::get(&name).map_err(|e| e.to_string())?;
        let ids = catalog::basis(&name).ok_or(format!("{name}: no basis"))?;
        let report = eval::check_basis(&s, &ids).map_err(|e| e.to_string())?;
        if let Some(f) = report.failures().next() {
            return Err(format!("{name}: {} fails", f.identity));
        }
        total += ids.len();
    }
    let elapsed = t.elapsed();
    ensure(elapsed.as_secs() < 60, || format!("took {elapsed:.2?}"))?;
    Ok(format!("10 bases, {total} identities, {elapsed:.2?}"))
}

fn criterion_oracle() -> Outcome {
    let family = Family::default();
    let mut checked = 0;
    for lemma in Lemma::ALL {
        let r = oracle_sweep(lemma, family, Execution::available());
        if let Some((id, truth)) = r.disagreements.first() {
            return Err(format!("{}: {} disagreements, first {id} (brute force {truth})", lemma.name(), r.disagreements.len()));
        }
        checked += r.checked;
    }
    Ok(format!("10 criteria, {checked} identities, 0 disagreements"))
}

fn structural_claims() -> Outcome {
    let results = catalog::verify_all_claims();
    let failed: Vec<String> = results.iter().filter(|r| !r.holds).map(|r| r.description.clone()).collect();
    ensure(failed.is_empty(), || format!("failing: {}", failed.join("; ")))?;
    Ok(format!("{} claims hold", results.len()))
}

fn nfb_witnesses() -> Outcome {
    for k in catalog::NONFINITELY_BASED {
        let s = catalog::order4(k).expect("catalogued");
        ensure(constructions::nfb_witness(&s).conclusion, || format!("no witness for S_(4,{k})"))?;
    }
    for name in ["S_(4,1)", "T2"] {
        let s = catalog::get(name).map_err(|e| e.to_string())?;
        ensure(!constructions::nfb_witness(&s).conclusion, || format!("unexpected witness for {name}"))?;
    }
    Ok("9 witnesses found; none for S_(4,1), T2".into())
}

fn extensions() -> Outcome {
    let t2 = catalog::get("T2").map_err(|e| e.to_string())?;
    let m2 = catalog::get("M2").map_err(|e| e.to_string())?;
    let flat = catalog::list(&ListFilter { flat: Some(true), ..Default::default() });
    ensure(!flat.is_empty(), || "no flat catalogue entries".into())?;
    for e in &flat {
        let s = catalog::get(&e.name).map_err(|e| e.to_string())?;
        let ne = constructions::null_extension(&s).map_err(|err| format!("{}: {err}", e.name))?;
        let ie = constructions::idempotent_extension(&s).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(iso::is_subdirect_embedding(&ne, &s, &t2), || format!("ne({}) not subdirect in it × T2", e.name))?;
        ensure(iso::is_subdirect_embedding(&ie, &s, &m2), || format!("ie({}) not subdirect in it × M2", e.name))?;
    }
    let s7 = constructions::s7();
    ensure(!constructions::is_flat(&s7.direct_product(&s7)), || "S7×S7 is flat".into())?;
    Ok(format!("{} flat entries checked; S7×S7 not flat", flat.len()))
}

fn certificates() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("certificates");
    let algebras: Vec<FiniteAiSemiring> = catalog::names().iter().filter_map(|n| catalog::get(n).ok()).collect();
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    ensure(files.len() >= 5, || format!("only {} certificates", files.len()))?;
    let mut models = 0;
    for f in &files {
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        let cert = derivation::certificate_from_json(&fs::read_to_string(f).map_err(|e| e.to_string())?)
            .map_err(|e| format!("{name}: {e}"))?;
        let v = cert.verify().map_err(|e| format!("{name}: {e}"))?;
        ensure(v.valid, || format!("{name}: step {:?} fails: {:?}", v.failed_step, v.failure))?;
        let r = derivation::soundness_check(&cert, &algebras).map_err(|e| e.to_string())?;
        ensure(r.sound(), || format!("{name}: conclusion fails in {:?}", r.counterexamples))?;
        ensure(!r.models.is_empty(), || format!("{name}: no catalogue model of the axioms"))?;
        models += r.models.len();
    }
    Ok(format!("{} certificates valid and sound ({models} model checks)", files.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("census counts", census_counts),
        ("table fidelity", table_fidelity),
        ("basis satisfaction", basis_satisfaction),
        ("criterion-oracle equivalence", criterion_oracle),
        ("structural claims", structural_claims),
        ("nfb witnesses", nfb_witnesses),
        ("extensions", extensions),
        ("derivation certificates", certificates),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
