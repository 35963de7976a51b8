//! Checking equational derivation certificates.
//!
//! A certificate lists axioms Σ, a chain of terms `T1, ..., Tn` and, for each
//! consecutive pair, the rewrite that links them: an axiom `A ≈ B` (used in
//! either direction), a substitution σ, optional outer factors `P`, `Q` and an
//! optional remainder `R` with
//!
//! ```text
//! T_i = P·σ(A)·Q + R      T_{i+1} = P·σ(B)·Q + R
//! ```
//!
//! An absent factor means "multiply by nothing"; an absent remainder means
//! "add nothing".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FiniteAiSemiring;
use crate::eval::{self, EvalError};
use crate::term::{Identity, Substitution, Term, TermError, Var};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("invalid certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{context}: {source}")]
    Term { context: String, source: TermError },
    #[error("certificate chain is empty")]
    EmptyChain,
    #[error("chain of {chain} terms needs {} steps, found {steps}", chain - 1)]
    StepCount { chain: usize, steps: usize },
    #[error("step {step}: substitution does not cover {var}")]
    NotTotal { step: usize, var: Var },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// Rewrite an instance of the left side into the right side.
    LR,
    RL,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub axiom: usize,
    pub direction: Direction,
    pub substitution: Substitution,
    pub left: Option<Term>,
    pub right: Option<Term>,
    pub remainder: Option<Term>,
}

impl DerivationStep {
    /// `P·t·Q + R`.
    fn context(&self, t: &Term) -> Term {
        let mut out = t.clone();
        if let Some(p) = &self.left {
            out = p.product(&out);
        }
        if let Some(q) = &self.right {
            out = out.product(q);
        }
        if let Some(r) = &self.remainder {
            out = out.sum(r);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationCertificate {
    pub axioms: Vec<Identity>,
    pub chain: Vec<Term>,
    pub steps: Vec<DerivationStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StepFailure {
    UnknownAxiom { axiom: usize, available: usize },
    /// `P·σ(A)·Q + R` is not the current term.
    SourceMismatch { expected: String, computed: String },
    TargetMismatch { expected: String, computed: String },
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepFailure::UnknownAxiom { axiom, available } => {
                write!(f, "axiom {axiom} is not among the {available} axioms")
            }
            StepFailure::SourceMismatch { expected, computed } => {
                write!(f, "rewrite source {computed} differs from {expected}")
            }
            StepFailure::TargetMismatch { expected, computed } => {
                write!(f, "rewrite target {computed} differs from {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateVerdict {
    pub valid: bool,
    pub conclusion: String,
    /// Index of the first failing step, with the reason.
    pub failed_step: Option<usize>,
    pub failure: Option<StepFailure>,
}

impl DerivationCertificate {
    pub fn new(axioms: Vec<Identity>, chain: Vec<Term>, steps: Vec<DerivationStep>) -> Result<Self, CertificateError> {
        if chain.is_empty() {
            return Err(CertificateError::EmptyChain);
        }
        if steps.len() + 1 != chain.len() {
            return Err(CertificateError::StepCount { chain: chain.len(), steps: steps.len() });
        }
        Ok(Self { axioms, chain, steps })
    }

    /// `T1 ≈ Tn`.
    pub fn conclusion(&self) -> Identity {
        Identity::new(self.chain[0].clone(), self.chain[self.chain.len() - 1].clone())
    }

    pub fn verify(&self) -> Result<CertificateVerdict, CertificateError> {
        let verdict = |failed: Option<(usize, StepFailure)>| {
            let (failed_step, failure) = failed.unzip();
            CertificateVerdict { valid: failure.is_none(), conclusion: self.conclusion().to_string(), failed_step, failure }
        };
        for (i, step) in self.steps.iter().enumerate() {
            if let Some(f) = check_step(i, step, &self.axioms, &self.chain[i], &self.chain[i + 1])? {
                return Ok(verdict(Some((i, f))));
            }
        }
        Ok(verdict(None))
    }
}

fn check_step(
    index: usize,
    step: &DerivationStep,
    axioms: &[Identity],
    from: &Term,
    to: &Term,
) -> Result<Option<StepFailure>, CertificateError> {
    let Some(axiom) = axioms.get(step.axiom) else {
        return Ok(Some(StepFailure::UnknownAxiom { axiom: step.axiom, available: axioms.len() }));
    };
    if let Some(var) = axiom.vars().into_iter().find(|v| !step.substitution.contains_key(v)) {
        return Err(CertificateError::NotTotal { step: index, var });
    }
    let (a, b) = match step.direction {
        Direction::LR => (&axiom.lhs, &axiom.rhs),
        Direction::RL => (&axiom.rhs, &axiom.lhs),
    };
    let subst = |t: &Term| {
        t.substitute(&step.substitution).map_err(|source| CertificateError::Term { context: format!("step {index}"), source })
    };
    let source = step.context(&subst(a)?);
    if &source != from {
        return Ok(Some(StepFailure::SourceMismatch { expected: from.to_string(), computed: source.to_string() }));
    }
    let target = step.context(&subst(b)?);
    if &target != to {
        return Ok(Some(StepFailure::TargetMismatch { expected: to.to_string(), computed: target.to_string() }));
    }
    Ok(None)
}

pub fn verify_certificate(cert: &DerivationCertificate) -> Result<CertificateVerdict, CertificateError> {
    cert.verify()
}

/// Outcome of evaluating a certificate's conclusion in a set of algebras.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    /// Algebras satisfying every axiom.
    pub models: Vec<String>,
    /// Models in which the conclusion fails; empty for a sound certificate.
    pub counterexamples: Vec<String>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Every algebra satisfying Σ must satisfy `T1 ≈ Tn`.
pub fn soundness_check(cert: &DerivationCertificate, algebras: &[FiniteAiSemiring]) -> Result<SoundnessReport, EvalError> {
    let conclusion = cert.conclusion();
    let mut report = SoundnessReport::default();
    for s in algebras {
        if !eval::check_basis(s, &cert.axioms)?.all_hold() {
            continue;
        }
        report.models.push(s.name().to_string());
        if !eval::satisfies(s, &conclusion)? {
            report.counterexamples.push(s.name().to_string());
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct StepJson {
    axiom: usize,
    dir: Direction,
    subst: BTreeMap<String, String>,
    #[serde(default)]
    left: Option<String>,
    #[serde(default)]
    right: Option<String>,
    #[serde(default)]
    remainder: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CertificateJson {
    axioms: Vec<String>,
    chain: Vec<String>,
    steps: Vec<StepJson>,
}

fn parse_with<T: std::str::FromStr<Err = TermError>>(text: &str, context: impl Fn() -> String) -> Result<T, CertificateError> {
    text.parse().map_err(|source| CertificateError::Term { context: context(), source })
}

pub fn certificate_from_json(text: &str) -> Result<DerivationCertificate, CertificateError> {
    let raw: CertificateJson = serde_json::from_str(text)?;
    let axioms = raw
        .axioms
        .iter()
        .enumerate()
        .map(|(i, a)| parse_with(a, || format!("axiom {i}")))
        .collect::<Result<Vec<Identity>, _>>()?;
    let chain = raw
        .chain
        .iter()
        .enumerate()
        .map(|(i, t)| parse_with(t, || format!("chain term {i}")))
        .collect::<Result<Vec<Term>, _>>()?;
    let mut steps = Vec::with_capacity(raw.steps.len());
    for (i, s) in raw.steps.iter().enumerate() {
        let ctx = |what: &str| format!("step {i} {what}");
        let mut substitution = Substitution::new();
        for (v, t) in &s.subst {
            let var: Var = parse_with(v, || ctx("variable"))?;
            substitution.insert(var, parse_with(t, || ctx(&format!("image of {v}")))?);
        }
        let opt = |t: &Option<String>, what: &str| t.as_deref().map(|t| parse_with(t, || ctx(what))).transpose();
        steps.push(DerivationStep {
            axiom: s.axiom,
            direction: s.dir,
            substitution,
            left: opt(&s.left, "left factor")?,
            right: opt(&s.right, "right factor")?,
            remainder: opt(&s.remainder, "remainder")?,
        });
    }
    DerivationCertificate::new(axioms, chain, steps)
}

pub fn certificate_to_json(cert: &DerivationCertificate) -> String {
    let show = |t: &Option<Term>| t.as_ref().map(Term::to_string);
    let raw = CertificateJson {
        axioms: cert.axioms.iter().map(Identity::to_string).collect(),
        chain: cert.chain.iter().map(Term::to_string).collect(),
        steps: cert
            .steps
            .iter()
            .map(|s| StepJson {
                axiom: s.axiom,
                dir: s.direction,
                subst: s.substitution.iter().map(|(v, t)| (v.to_string(), t.to_string())).collect(),
                left: show(&s.left),
                right: show(&s.right),
                remainder: show(&s.remainder),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("serialisable")
}

/// The variables a step's substitution maps but the axiom does not use.
pub fn unused_substitutions(cert: &DerivationCertificate) -> BTreeMap<usize, BTreeSet<Var>> {
    let mut out = BTreeMap::new();
    for (i, s) in cert.steps.iter().enumerate() {
        let Some(ax) = cert.axioms.get(s.axiom) else { continue };
        let used = ax.vars();
        let extra: BTreeSet<Var> = s.substitution.keys().filter(|v| !used.contains(v)).copied().collect();
        if !extra.is_empty() {
            out.insert(i, extra);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDEMPOTENCE: &str = r#"{
        "axioms": ["x + x ≈ x"],
        "chain": ["a + a", "a"],
        "steps": [{"axiom": 0, "dir": "LR", "subst": {"x": "a"}, "left": null, "right": null, "remainder": null}]
    }"#;

    const ONE_STEP: &str = r#"{
        "axioms": ["x1x2x3 ≈ x1x2x3 + x4"],
        "chain": ["abc + d", "abc + d + q^2"],
        "steps": [{"axiom": 0, "dir": "LR",
                   "subst": {"x1": "a", "x2": "b", "x3": "c", "x4": "q^2"},
                   "remainder": "d"}]
    }"#;

    #[test]
    fn idempotence_certificate_is_valid() {
        let c = certificate_from_json(IDEMPOTENCE).unwrap();
        assert!(c.verify().unwrap().valid);
    }

    #[test]
    fn remainder_and_defaults() {
        let c = certificate_from_json(ONE_STEP).unwrap();
        let v = c.verify().unwrap();
        assert!(v.valid, "{v:?}");
        // Terms print in shortlex order.
        assert_eq!(v.conclusion, "d + abc ≈ d + q^2 + abc");
    }

    #[test]
    fn unknown_axiom_fails_at_its_step() {
        let text = ONE_STEP.replace("\"axiom\": 0", "\"axiom\": 3");
        let v = certificate_from_json(&text).unwrap().verify().unwrap();
        assert!(!v.valid);
        assert_eq!(v.failed_step, Some(0));
        assert!(matches!(v.failure, Some(StepFailure::UnknownAxiom { axiom: 3, available: 1 })));
    }

    #[test]
    fn partial_substitution_is_malformed() {
        let text = ONE_STEP.replace(", \"x4\": \"q^2\"", "");
        let err = certificate_from_json(&text).unwrap().verify().unwrap_err();
        assert!(matches!(err, CertificateError::NotTotal { step: 0, .. }));
    }

    #[test]
    fn wrong_target_is_reported() {
        let text = ONE_STEP.replace("abc + d + q^2", "abc + d + q^3");
        let v = certificate_from_json(&text).unwrap().verify().unwrap();
        assert!(matches!(v.failure, Some(StepFailure::TargetMismatch { .. })));
    }

    #[test]
    fn reversing_a_step_keeps_the_verdict() {
        let mut c = certificate_from_json(ONE_STEP).unwrap();
        c.chain.reverse();
        c.steps[0].direction = Direction::RL;
        assert!(c.verify().unwrap().valid);
    }

    #[test]
    fn multipliers_wrap_the_instance() {
        let text = r#"{
            "axioms": ["x1x2x3 ≈ x1x2x3 + x4"],
            "chain": ["wxyzu", "wxyzu + wvu"],
            "steps": [{"axiom": 0, "dir": "LR",
                       "subst": {"x1": "x", "x2": "y", "x3": "z", "x4": "v"},
                       "left": "w", "right": "u"}]
        }"#;
        assert!(certificate_from_json(text).unwrap().verify().unwrap().valid);
    }

    #[test]
    fn shape_errors() {
        let text = r#"{"axioms": [], "chain": [], "steps": []}"#;
        assert!(matches!(certificate_from_json(text), Err(CertificateError::EmptyChain)));
        let text = r#"{"axioms": [], "chain": ["x", "y"], "steps": []}"#;
        assert!(matches!(certificate_from_json(text), Err(CertificateError::StepCount { chain: 2, steps: 0 })));
        assert!(matches!(certificate_from_json("[]"), Err(CertificateError::Json(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = certificate_from_json(ONE_STEP).unwrap();
        assert_eq!(certificate_from_json(&certificate_to_json(&c)).unwrap(), c);
    }
}
