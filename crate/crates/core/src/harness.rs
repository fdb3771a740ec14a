//! Exhaustive checking of the characterization theorems over a corpus of
//! star rings.
//!
//! Every check evaluates both sides from independently computed predicates.
//! Rings outside a statement's hypotheses are reported as skipped.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{Classification, Classifier};
use crate::construct::{self, ExtensionSpec};
use crate::error::{CorpusError, IdealError};
use crate::format::RingSpec;
use crate::ideal::{self, IdealSet};
use crate::recipe::{ExampleRing, Recipe};
use crate::ring::{Element, HARD_MAX_ORDER};
use crate::set::ElemSet;
use crate::star::{self, StarRing};
use crate::witness::{Decision, Witness};

/// One corpus member and how it was produced.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub ring: StarRing,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Recipes dropped because their order exceeds the active cap.
    pub excluded: Vec<String>,
}

impl Corpus {
    /// Z_n for 2 ≤ n ≤ 32; Z_m × Z_n for 2 ≤ m ≤ n, mn ≤ 64; R[i] over
    /// Z_2, Z_3, Z_4 for every (μ, η); R[x]/(xⁿ) over the same bases for
    /// n ≤ 3; the example rings.
    pub fn default_recipes() -> Vec<Recipe> {
        let mut out: Vec<Recipe> = (2..=32).map(Recipe::Zn).collect();
        for m in 2..=8 {
            for n in m..=64 / m {
                out.push(Recipe::Product(Box::new(Recipe::Zn(m)), Box::new(Recipe::Zn(n))));
            }
        }
        for b in 2..=4 {
            for mu in 0..b {
                for eta in 0..b {
                    out.push(Recipe::Ri {
                        base: Box::new(Recipe::Zn(b)),
                        mu,
                        eta,
                    });
                }
            }
        }
        for b in 2..=4 {
            for n in 1..=3 {
                out.push(Recipe::Poly {
                    base: Box::new(Recipe::Zn(b)),
                    n,
                });
            }
        }
        out.extend(ExampleRing::ALL.map(Recipe::Example));
        out
    }

    /// The default corpus, dropping members above `cap`.
    pub fn default_corpus(cap: usize) -> Result<Self, CorpusError> {
        let (keep, drop): (Vec<Recipe>, Vec<Recipe>) = Self::default_recipes()
            .into_iter()
            .partition(|r| r.order().is_some_and(|o| o <= cap.min(HARD_MAX_ORDER)));
        let mut c = Self::from_recipes(&keep, cap)?;
        c.excluded = drop.iter().map(Recipe::to_string).collect();
        Ok(c)
    }

    pub fn from_recipes(recipes: &[Recipe], cap: usize) -> Result<Self, CorpusError> {
        let entries = recipes
            .par_iter()
            .enumerate()
            .map(|(index, r)| {
                let name = r.to_string();
                match r.build_capped(cap) {
                    Ok(ring) => Ok(CorpusEntry { name, ring }),
                    Err(source) => Err(CorpusError::Recipe {
                        index,
                        name,
                        source,
                    }),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Corpus {
            entries,
            excluded: Vec::new(),
        })
    }

    /// A JSON array whose items are constructor expressions or ring specs.
    pub fn from_json(text: &str, cap: usize) -> Result<Self, CorpusError> {
        let items: Vec<Value> = serde_json::from_str(text)?;
        let mut entries = Vec::with_capacity(items.len());
        for (index, item) in items.into_iter().enumerate() {
            let entry = match item {
                Value::String(expr) => {
                    let ring = crate::recipe::parse(&expr)
                        .and_then(|r| r.build_capped(cap))
                        .map_err(|source| CorpusError::Recipe {
                            index,
                            name: expr.clone(),
                            source,
                        })?;
                    CorpusEntry { name: expr, ring }
                }
                other => {
                    let spec: RingSpec = serde_json::from_value(other).map_err(|e| CorpusError::Spec {
                        index,
                        source: e.into(),
                    })?;
                    let ring = spec
                        .build(cap)
                        .map_err(|source| CorpusError::Spec { index, source })?;
                    CorpusEntry {
                        name: format!("entry-{index}:{}", &spec.content_hash()[..12]),
                        ring,
                    }
                }
            };
            entries.push(entry);
        }
        Ok(Corpus {
            entries,
            excluded: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Largest ring whose ideal lattice is enumerated.
    pub ideal_cap: usize,
    /// Largest extension or polynomial ring built during sweeps.
    pub extension_cap: usize,
    /// Largest base swept over all (μ, η).
    pub extension_base_max_order: usize,
    pub poly_degrees: Vec<usize>,
    pub subgroup_scan_max_order: usize,
    /// Restrict to these check ids.
    pub only: Option<Vec<String>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            ideal_cap: ideal::DEFAULT_IDEAL_CAP,
            extension_cap: 1024,
            extension_base_max_order: 16,
            poly_degrees: vec![1, 2, 3],
            subgroup_scan_max_order: ideal::SUBGROUP_SCAN_MAX_ORDER,
            only: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    Biconditional,
    Implication,
    Property,
    CrossCheck,
}

pub struct CheckInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub form: Form,
    run: fn(&Facts, &SuiteConfig) -> Outcome,
    needs_lattice: bool,
}

impl fmt::Debug for CheckInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckInfo").field("id", &self.id).finish()
    }
}

pub static CHECKS: &[CheckInfo] = &[
    CheckInfo {
        id: "idempotents-central",
        statement: "idempotents = projections ⟹ every idempotent is central",
        form: Form::Implication,
        run: check_idempotents_central,
        needs_lattice: false,
    },
    CheckInfo {
        id: "unique-decomposition",
        statement: "strongly nil *-clean ⟺ uniquely nil clean ∧ idempotents = projections ⟺ uniquely strongly nil *-clean",
        form: Form::Biconditional,
        run: check_unique_decomposition,
        needs_lattice: false,
    },
    CheckInfo {
        id: "nil-ideal-criterion",
        statement: "strongly nil *-clean ⟺ idempotents = projections ∧ N(R) is an ideal ∧ R/N(R) Boolean",
        form: Form::Biconditional,
        run: check_nil_ideal,
        needs_lattice: false,
    },
    CheckInfo {
        id: "j-clean-criterion",
        statement: "strongly nil *-clean ⟺ strongly J-*-clean ∧ J(R) nil",
        form: Form::Biconditional,
        run: check_j_clean,
        needs_lattice: false,
    },
    CheckInfo {
        id: "jacobson-quotient-criterion",
        statement: "strongly nil *-clean ⟺ idempotents = projections ∧ J(R) nil ∧ R/J(R) Boolean",
        form: Form::Biconditional,
        run: check_jacobson_quotient,
        needs_lattice: false,
    },
    CheckInfo {
        id: "periodic-criterion",
        statement: "strongly nil *-clean ⟺ idempotents = projections ∧ R periodic ∧ R/J(R) Boolean",
        form: Form::Biconditional,
        run: check_periodic,
        needs_lattice: false,
    },
    CheckInfo {
        id: "unit-shift-criterion",
        statement: "strongly nil *-clean ⟺ strongly *-clean ∧ N(R) = { x : 1 − x ∈ U(R) }",
        form: Form::Biconditional,
        run: check_unit_shift,
        needs_lattice: false,
    },
    CheckInfo {
        id: "truncated-polynomials",
        statement: "strongly nil *-clean(R) ⟺ strongly nil *-clean(R[x]/(xⁿ))",
        form: Form::Biconditional,
        run: check_truncated_polynomials,
        needs_lattice: false,
    },
    CheckInfo {
        id: "quadratic-extension",
        statement: "R commutative, μ* = μ, η* = η: strongly nil *-clean(R[i]) ⟺ strongly nil *-clean(R) ∧ μη nilpotent",
        form: Form::Biconditional,
        run: check_quadratic_extension,
        needs_lattice: false,
    },
    CheckInfo {
        id: "boolean-like-criterion",
        statement: "*-Boolean-like ⟺ strongly nil *-clean ∧ αβ = 0 for all nilpotent α, β",
        form: Form::Biconditional,
        run: check_boolean_like,
        needs_lattice: false,
    },
    CheckInfo {
        id: "boolean-like-extension",
        statement: "R commutative, μ a symmetric unit, η* = η: *-Boolean-like(R[i]) ⟺ *-Boolean-like(R) ∧ η nilpotent",
        form: Form::Biconditional,
        run: check_boolean_like_extension,
        needs_lattice: false,
    },
    CheckInfo {
        id: "maximal-ideal-criterion",
        statement: "R strongly nil *-clean: M maximal ⟺ M prime ∧ (aⁿ ∈ M ⟹ a ∈ M), for every ideal M",
        form: Form::Biconditional,
        run: check_maximal_criterion,
        needs_lattice: true,
    },
    CheckInfo {
        id: "maximal-ideal-separation",
        statement: "R strongly nil *-clean, x ∉ I, x_P ∉ I ⟹ some maximal J ⊇ I has x ∉ J",
        form: Form::Implication,
        run: check_maximal_separation,
        needs_lattice: true,
    },
    CheckInfo {
        id: "maximal-intersections",
        statement: "R strongly nil *-clean, M₁ ≠ M₂ maximal: M₁ ∩ M₂ is submaximal, covered by both, and lies in no other maximal ideal",
        form: Form::Property,
        run: check_maximal_intersections,
        needs_lattice: true,
    },
    CheckInfo {
        id: "submaximal-quotients",
        statement: "R strongly nil *-clean: I submaximal ⟺ R/I Boolean of order 4 or R/I absolutely local with J(R/I) ≠ 0",
        form: Form::Biconditional,
        run: check_submaximal_quotients,
        needs_lattice: true,
    },
    CheckInfo {
        id: "maximal-intersection-quotients",
        statement: "R strongly nil *-clean, M₁ ≠ M₂ maximal: R/(M₁ ∩ M₂) Boolean",
        form: Form::Property,
        run: check_maximal_intersection_quotients,
        needs_lattice: true,
    },
    CheckInfo {
        id: "primary-intersection",
        statement: "R commutative strongly nil *-clean: the intersection of all primary ideals is 0",
        form: Form::Property,
        run: check_primary_intersection,
        needs_lattice: true,
    },
    CheckInfo {
        id: "star-boolean-criterion",
        statement: "*-Boolean ⟺ commutative ∧ every primary ideal maximal ∧ strongly nil *-clean",
        form: Form::Biconditional,
        run: check_star_boolean,
        needs_lattice: true,
    },
    CheckInfo {
        id: "boolean-criterion",
        statement: "identity involution: Boolean ⟺ commutative ∧ every primary ideal maximal ∧ strongly nil clean",
        form: Form::Biconditional,
        run: check_boolean,
        needs_lattice: true,
    },
    CheckInfo {
        id: "inclusion-chain",
        statement: "strongly nil *-clean ⟹ strongly J-*-clean ⟹ strongly *-clean, and strongly nil *-clean ⟹ N(R) = J(R)",
        form: Form::Implication,
        run: check_inclusion_chain,
        needs_lattice: false,
    },
    CheckInfo {
        id: "xcheck-ideals",
        statement: "generator-closure ideal enumeration = exhaustive additive-subgroup scan",
        form: Form::CrossCheck,
        run: check_xcheck_ideals,
        needs_lattice: true,
    },
    CheckInfo {
        id: "xcheck-jacobson",
        statement: "R commutative: J(R) = intersection of the maximal ideals",
        form: Form::CrossCheck,
        run: check_xcheck_jacobson,
        needs_lattice: true,
    },
    CheckInfo {
        id: "xcheck-units",
        statement: "units by injective left multiplication = units by two-sided inverse search",
        form: Form::CrossCheck,
        run: check_xcheck_units,
        needs_lattice: false,
    },
];

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub ring: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<bool>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    /// Reproducer for a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<RingSpec>,
}

impl Outcome {
    fn skipped(ring: &str, reason: impl Into<String>) -> Self {
        Outcome {
            ring: ring.to_string(),
            verdict: Verdict::Skipped {
                reason: reason.into(),
            },
            lhs: None,
            rhs: None,
            witness: Value::Null,
            spec: None,
        }
    }

    fn verdict(f: &Facts, ok: bool, lhs: Option<bool>, rhs: Option<bool>, witness: Value) -> Self {
        Outcome {
            ring: f.name.to_string(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            lhs,
            rhs,
            witness,
            spec: (!ok).then(|| RingSpec::from_star_ring(f.ring)),
        }
    }

    fn bicond(f: &Facts, lhs: bool, rhs: bool, witness: Value) -> Self {
        Self::verdict(f, lhs == rhs, Some(lhs), Some(rhs), witness)
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Tally {
    fn add(&mut self, v: &Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skipped { .. } => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub form: Form,
    pub summary: Tally,
    pub outcomes: Vec<Outcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub rings: usize,
    pub checks: usize,
    #[serde(flatten)]
    pub tally: Tally,
    pub counterexamples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub summary: SuiteSummary,
    pub warnings: Vec<String>,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn counterexamples(&self) -> usize {
        self.summary.counterexamples
    }

    pub fn all_passed(&self) -> bool {
        self.summary.counterexamples == 0
    }

    pub fn check(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }
}

/// Lattice data shared by the ideal-theoretic checks.
struct Lattice {
    ideals: Vec<IdealSet>,
    maximal: Vec<usize>,
}

/// Everything computed once per ring.
pub struct Facts<'a> {
    name: &'a str,
    ring: &'a StarRing,
    c: Classification,
    lattice: Option<Result<Lattice, IdealError>>,
}

impl<'a> Facts<'a> {
    fn new(e: &'a CorpusEntry, cfg: &SuiteConfig, want_lattice: bool) -> Self {
        let lattice = want_lattice.then(|| {
            ideal::all_ideals(&e.ring, cfg.ideal_cap).map(|ideals| {
                let maximal = ideals
                    .iter()
                    .enumerate()
                    .filter(|(_, i)| ideal::is_maximal(&e.ring, i).holds)
                    .map(|(k, _)| k)
                    .collect();
                Lattice { ideals, maximal }
            })
        });
        Facts {
            name: &e.name,
            ring: &e.ring,
            c: Classifier::new(&e.ring).classify(),
            lattice,
        }
    }

    fn snsc(&self) -> bool {
        self.c.strongly_nil_star_clean.holds
    }

    fn lattice(&self) -> Result<&Lattice, String> {
        match &self.lattice {
            Some(Ok(l)) => Ok(l),
            Some(Err(e)) => Err(e.to_string()),
            None => Err("ideal lattice not computed".into()),
        }
    }

    /// The lattice, provided the ring is strongly nil *-clean.
    fn snsc_lattice(&self) -> Result<&Lattice, Outcome> {
        if !self.snsc() {
            return Err(Outcome::skipped(self.name, "not strongly nil *-clean"));
        }
        self.lattice().map_err(|e| Outcome::skipped(self.name, e))
    }
}

fn failing(d: &Decision) -> Value {
    if d.holds {
        Value::Null
    } else {
        json!(d.witness)
    }
}

fn check_idempotents_central(f: &Facts, _: &SuiteConfig) -> Outcome {
    if !f.c.idempotents_are_projections.holds {
        return Outcome::skipped(f.name, "some idempotent is not a projection");
    }
    let ab = &f.c.abelian;
    Outcome::verdict(f, ab.holds, Some(true), Some(ab.holds), failing(ab))
}

fn check_unique_decomposition(f: &Facts, _: &SuiteConfig) -> Outcome {
    let a = f.snsc();
    let b = f.c.uniquely_nil_clean.holds && f.c.idempotents_are_projections.holds;
    let c = f.c.uniquely_strongly_nil_star_clean.holds;
    let mut o = Outcome::verdict(
        f,
        a == b && b == c,
        Some(a),
        Some(b),
        json!({
            "uniquely_strongly_nil_star_clean": c,
            "strongly_nil_star_clean": failing(&f.c.strongly_nil_star_clean),
            "uniquely_nil_clean": failing(&f.c.uniquely_nil_clean),
            "idempotents_are_projections": failing(&f.c.idempotents_are_projections),
        }),
    );
    strip_nulls(&mut o.witness);
    o
}

fn strip_nulls(v: &mut Value) {
    if let Value::Object(m) = v {
        m.retain(|_, x| !x.is_null());
    }
}

fn conjunction(f: &Facts, lhs: bool, parts: &[(&str, &Decision)]) -> Outcome {
    let rhs = parts.iter().all(|(_, d)| d.holds);
    let mut w = serde_json::Map::new();
    if !lhs {
        w.insert(
            "strongly_nil_star_clean".into(),
            json!(f.c.strongly_nil_star_clean.witness),
        );
    }
    for (name, d) in parts {
        if !d.holds {
            w.insert(name.to_string(), json!(d.witness));
        }
    }
    Outcome::bicond(f, lhs, rhs, Value::Object(w))
}

fn check_nil_ideal(f: &Facts, _: &SuiteConfig) -> Outcome {
    let c = &f.c;
    conjunction(
        f,
        f.snsc(),
        &[
            ("idempotents_are_projections", &c.idempotents_are_projections),
            ("nil_set_is_ideal", &c.nil_set_is_ideal),
            ("boolean_modulo_nil", &c.boolean_modulo_nil),
        ],
    )
}

fn check_j_clean(f: &Facts, _: &SuiteConfig) -> Outcome {
    let c = &f.c;
    conjunction(
        f,
        f.snsc(),
        &[
            ("strongly_j_star_clean", &c.strongly_j_star_clean),
            ("jacobson_is_nil", &c.jacobson_is_nil),
        ],
    )
}

fn check_jacobson_quotient(f: &Facts, _: &SuiteConfig) -> Outcome {
    let c = &f.c;
    conjunction(
        f,
        f.snsc(),
        &[
            ("idempotents_are_projections", &c.idempotents_are_projections),
            ("jacobson_is_nil", &c.jacobson_is_nil),
            ("boolean_modulo_jacobson", &c.boolean_modulo_jacobson),
        ],
    )
}

fn check_periodic(f: &Facts, _: &SuiteConfig) -> Outcome {
    let c = &f.c;
    conjunction(
        f,
        f.snsc(),
        &[
            ("idempotents_are_projections", &c.idempotents_are_projections),
            ("periodic", &c.periodic),
            ("boolean_modulo_jacobson", &c.boolean_modulo_jacobson),
        ],
    )
}

fn check_unit_shift(f: &Facts, _: &SuiteConfig) -> Outcome {
    let shift = Classifier::new(f.ring).nil_equals_one_minus_units();
    conjunction(
        f,
        f.snsc(),
        &[
            ("strongly_star_clean", &f.c.strongly_star_clean),
            ("nil_equals_one_minus_units", &shift),
        ],
    )
}

fn check_truncated_polynomials(f: &Facts, cfg: &SuiteConfig) -> Outcome {
    let base = f.snsc();
    let mut checked = Vec::new();
    let mut skipped = Vec::new();
    for &n in &cfg.poly_degrees {
        let p = match construct::poly_quotient_capped(f.ring, n, cfg.extension_cap) {
            Ok(p) => p,
            Err(_) => {
                skipped.push(n);
                continue;
            }
        };
        let ext = Classifier::new(&p).strongly_nil_star_clean();
        if ext.holds != base {
            return Outcome {
                ring: f.name.to_string(),
                verdict: Verdict::Fail,
                lhs: Some(base),
                rhs: Some(ext.holds),
                witness: json!({ "n": n, "extension": ext.witness }),
                spec: Some(RingSpec::from_star_ring(&p)),
            };
        }
        checked.push(n);
    }
    if checked.is_empty() {
        return Outcome::skipped(
            f.name,
            format!("every R[x]/(xⁿ) exceeds the extension cap of {}", cfg.extension_cap),
        );
    }
    Outcome::verdict(
        f,
        true,
        Some(base),
        Some(base),
        json!({ "degrees": checked, "skipped_degrees": skipped }),
    )
}

/// Runs `test` over R[i] for every symmetric (μ, η) admitted by `admit`.
fn sweep_extensions(
    f: &Facts,
    cfg: &SuiteConfig,
    admit: impl Fn(Element, Element) -> bool + Sync,
    test: impl Fn(&StarRing, Element, Element) -> (bool, bool) + Sync,
) -> Outcome {
    let r = f.ring;
    if let Some((x, y)) = r.commutativity_witness() {
        return Outcome::skipped(f.name, format!("base not commutative ({x}·{y} ≠ {y}·{x})"));
    }
    if r.order() > cfg.extension_base_max_order {
        return Outcome::skipped(
            f.name,
            format!("base order above the sweep limit of {}", cfg.extension_base_max_order),
        );
    }
    if r.order() * r.order() > cfg.extension_cap {
        return Outcome::skipped(f.name, "R[i] exceeds the extension cap");
    }
    let sym = r.symmetric_elements();
    let pairs: Vec<(Element, Element)> = sym
        .iter()
        .flat_map(|&m| sym.iter().map(move |&e| (m, e)))
        .filter(|&(m, e)| admit(m, e))
        .collect();
    let failure = pairs.par_iter().find_map_first(|&(mu, eta)| {
        let ext = construct::extend_ri_capped(&ExtensionSpec { base: r, mu, eta }, cfg.extension_cap)
            .expect("symmetric parameters over a commutative base");
        let (lhs, rhs) = test(&ext, mu, eta);
        (lhs != rhs).then(|| (mu, eta, lhs, rhs, RingSpec::from_star_ring(&ext)))
    });
    match failure {
        Some((mu, eta, lhs, rhs, spec)) => Outcome {
            ring: f.name.to_string(),
            verdict: Verdict::Fail,
            lhs: Some(lhs),
            rhs: Some(rhs),
            witness: json!({ "mu": mu, "eta": eta }),
            spec: Some(spec),
        },
        None => Outcome::verdict(
            f,
            true,
            None,
            None,
            json!({ "symmetric_elements": sym.len(), "pairs_swept": pairs.len() }),
        ),
    }
}

fn check_quadratic_extension(f: &Facts, cfg: &SuiteConfig) -> Outcome {
    let base = f.snsc();
    let nil = &f.c.sets.nilpotents;
    let r = f.ring;
    sweep_extensions(
        f,
        cfg,
        |_, _| true,
        |ext, mu, eta| {
            let lhs = Classifier::new(ext).strongly_nil_star_clean().holds;
            (lhs, base && nil.contains(r.mul(mu, eta)))
        },
    )
}

fn check_boolean_like_extension(f: &Facts, cfg: &SuiteConfig) -> Outcome {
    let base = f.c.star_boolean_like.holds;
    let nil = &f.c.sets.nilpotents;
    let units = &f.c.sets.units;
    sweep_extensions(
        f,
        cfg,
        |mu, _| units.contains(mu),
        |ext, _, eta| {
            let lhs = Classifier::new(ext).star_boolean_like().holds;
            (lhs, base && nil.contains(eta))
        },
    )
}

fn check_boolean_like(f: &Facts, _: &SuiteConfig) -> Outcome {
    conjunction(
        f,
        f.c.star_boolean_like.holds,
        &[
            ("strongly_nil_star_clean", &f.c.strongly_nil_star_clean),
            ("nilpotent_products_vanish", &f.c.nilpotent_products_vanish),
        ],
    )
}

/// `aⁿ ∈ M` forces `a ∈ M`.
fn radical_closed(r: &StarRing, m: &IdealSet) -> Option<Element> {
    m.members
        .complement()
        .iter()
        .find(|&a| ideal::has_power_in(r, a, &m.members))
}

fn members(i: &IdealSet) -> Value {
    json!(i.members)
}

fn check_maximal_criterion(f: &Facts, _: &SuiteConfig) -> Outcome {
    let l = match f.snsc_lattice() {
        Ok(l) => l,
        Err(o) => return o,
    };
    for (k, m) in l.ideals.iter().enumerate() {
        let lhs = l.maximal.contains(&k);
        let prime = ideal::is_prime(f.ring, m);
        let closed = radical_closed(f.ring, m);
        let rhs = prime.holds && closed.is_none();
        if lhs != rhs {
            return Outcome::bicond(
                f,
                lhs,
                rhs,
                json!({ "ideal": members(m), "prime": prime, "power_escapes": closed }),
            );
        }
    }
    Outcome::verdict(f, true, None, None, json!({ "ideals": l.ideals.len() }))
}

fn check_maximal_separation(f: &Facts, _: &SuiteConfig) -> Outcome {
    let l = match f.snsc_lattice() {
        Ok(l) => l,
        Err(o) => return o,
    };
    let Witness::Decompositions { splits, .. } = &f.c.strongly_nil_star_clean.witness else {
        unreachable!("a holding decomposition predicate carries its table")
    };
    let mut instances = 0usize;
    for i in &l.ideals {
        for x in i.members.complement().iter() {
            let xp = splits[x.index()].part;
            if i.contains(xp) {
                continue;
            }
            instances += 1;
            let separated = l.maximal.iter().any(|&k| {
                let j = &l.ideals[k];
                i.members.is_subset(&j.members) && !j.contains(x)
            });
            if !separated {
                return Outcome::verdict(
                    f,
                    false,
                    Some(true),
                    Some(false),
                    json!({ "ideal": members(i), "x": x, "projection_part": xp }),
                );
            }
        }
    }
    if instances == 0 {
        return Outcome::skipped(f.name, "no x ∉ I with x_P ∉ I");
    }
    Outcome::verdict(f, true, Some(true), Some(true), json!({ "instances": instances }))
}

fn maximal_pairs(l: &Lattice) -> Vec<(usize, usize)> {
    let m = &l.maximal;
    (0..m.len())
        .flat_map(|a| (a + 1..m.len()).map(move |b| (m[a], m[b])))
        .collect()
}

fn check_maximal_intersections(f: &Facts, _: &SuiteConfig) -> Outcome {
    let l = match f.snsc_lattice() {
        Ok(l) => l,
        Err(o) => return o,
    };
    let pairs = maximal_pairs(l);
    if pairs.is_empty() {
        return Outcome::skipped(f.name, "fewer than two maximal ideals");
    }
    for &(a, b) in &pairs {
        let (m1, m2) = (&l.ideals[a], &l.ideals[b]);
        let i = ideal::intersect_ideals(m1, m2);
        let sub = ideal::is_submaximal(f.ring, &i).holds;
        let covers = ideal::covers(f.ring, &i);
        let covered = covers.contains(m1) && covers.contains(m2);
        let others: Vec<Value> = l
            .maximal
            .iter()
            .filter(|&&k| k != a && k != b && i.members.is_subset(&l.ideals[k].members))
            .map(|&k| members(&l.ideals[k]))
            .collect();
        if !(sub && covered && others.is_empty()) {
            return Outcome::verdict(
                f,
                false,
                None,
                None,
                json!({
                    "m1": members(m1), "m2": members(m2),
                    "submaximal": sub, "covered_by_both": covered, "other_maximal": others,
                }),
            );
        }
    }
    Outcome::verdict(f, true, None, None, json!({ "pairs": pairs.len() }))
}

fn check_submaximal_quotients(f: &Facts, _: &SuiteConfig) -> Outcome {
    let l = match f.snsc_lattice() {
        Ok(l) => l,
        Err(o) => return o,
    };
    // Maximal ideals make R/I a field, which is vacuously absolutely local;
    // the dichotomy needs a nonzero radical there.
    let mut literal_differs = 0usize;
    for i in &l.ideals {
        let lhs = ideal::is_submaximal(f.ring, i).holds;
        let q = ideal::quotient_ring(f.ring, i).expect("lattice members are ideals");
        let boolean4 = q.ring.order() == 4 && star::is_boolean(&q.ring).holds;
        let abs_local = star::is_absolutely_local(&q.ring).holds;
        let radical = star::jacobson_radical(&q.ring).len() > 1;
        let rhs = boolean4 || (abs_local && radical);
        if lhs != (boolean4 || abs_local) {
            literal_differs += 1;
        }
        if lhs != rhs {
            return Outcome::bicond(
                f,
                lhs,
                rhs,
                json!({
                    "ideal": members(i), "quotient_order": q.ring.order(),
                    "boolean_order_4": boolean4, "absolutely_local": abs_local,
                    "nonzero_radical": radical,
                }),
            );
        }
    }
    Outcome::verdict(
        f,
        true,
        None,
        None,
        json!({ "ideals": l.ideals.len(), "maximal_ideals_vacuously_local": literal_differs }),
    )
}

fn check_maximal_intersection_quotients(f: &Facts, _: &SuiteConfig) -> Outcome {
    let l = match f.snsc_lattice() {
        Ok(l) => l,
        Err(o) => return o,
    };
    let pairs = maximal_pairs(l);
    if pairs.is_empty() {
        return Outcome::skipped(f.name, "fewer than two maximal ideals");
    }
    for &(a, b) in &pairs {
        let i = ideal::intersect_ideals(&l.ideals[a], &l.ideals[b]);
        let q = ideal::quotient_ring(f.ring, &i).expect("intersection of ideals is an ideal");
        let d = star::is_boolean(&q.ring);
        if !d.holds {
            return Outcome::verdict(
                f,
                false,
                None,
                None,
                json!({ "m1": members(&l.ideals[a]), "m2": members(&l.ideals[b]), "quotient": d.witness }),
            );
        }
    }
    Outcome::verdict(f, true, None, None, json!({ "pairs": pairs.len() }))
}

fn primary_ideals<'l>(f: &Facts, l: &'l Lattice) -> Vec<&'l IdealSet> {
    l.ideals
        .iter()
        .filter(|i| {
            ideal::is_primary(f.ring, i)
                .expect("caller checked commutativity")
                .holds
        })
        .collect()
}

fn check_primary_intersection(f: &Facts, _: &SuiteConfig) -> Outcome {
    if !f.c.commutative.holds {
        return Outcome::skipped(f.name, "not commutative");
    }
    let l = match f.snsc_lattice() {
        Ok(l) => l,
        Err(o) => return o,
    };
    let primary = primary_ideals(f, l);
    let meet = primary
        .iter()
        .fold(ElemSet::full(f.ring.order()), |acc, i| acc.intersection(&i.members));
    let ok = meet.len() == 1;
    Outcome::verdict(
        f,
        ok,
        None,
        None,
        json!({ "primary_ideals": primary.len(), "intersection": meet }),
    )
}

/// Whether every primary ideal is maximal; errs when the lattice is unavailable.
fn primary_all_maximal(f: &Facts) -> Result<(bool, Value), String> {
    let l = f.lattice()?;
    for (k, i) in l.ideals.iter().enumerate() {
        if ideal::is_primary(f.ring, i).expect("commutative").holds && !l.maximal.contains(&k) {
            return Ok((false, json!({ "primary_not_maximal": members(i) })));
        }
    }
    Ok((true, Value::Null))
}

fn lattice_criterion(f: &Facts, lhs: &Decision, clean: &Decision) -> Outcome {
    let commutative = f.c.commutative.holds;
    let (primary, w) = if commutative {
        match primary_all_maximal(f) {
            Ok(p) => p,
            Err(e) => return Outcome::skipped(f.name, e),
        }
    } else {
        (false, json!({ "not_commutative": f.c.commutative.witness }))
    };
    let rhs = commutative && primary && clean.holds;
    let mut witness = json!({ "lhs": failing(lhs), "rhs": w, "clean": failing(clean) });
    strip_nulls(&mut witness);
    Outcome::bicond(f, lhs.holds, rhs, witness)
}

fn check_star_boolean(f: &Facts, _: &SuiteConfig) -> Outcome {
    lattice_criterion(f, &f.c.star_boolean, &f.c.strongly_nil_star_clean)
}

fn check_boolean(f: &Facts, _: &SuiteConfig) -> Outcome {
    if !f.ring.involution().is_identity() {
        return Outcome::skipped(f.name, "involution is not the identity");
    }
    lattice_criterion(f, &f.c.boolean, &f.c.strongly_nil_clean)
}

fn check_inclusion_chain(f: &Facts, _: &SuiteConfig) -> Outcome {
    let snsc = f.snsc();
    let sjsc = f.c.strongly_j_star_clean.holds;
    let ssc = f.c.strongly_star_clean.holds;
    if !snsc && !sjsc {
        return Outcome::skipped(f.name, "neither strongly nil *-clean nor strongly J-*-clean");
    }
    let nil_is_j = f.c.sets.nilpotents == f.c.sets.jacobson;
    let ok = (!snsc || sjsc) && (!sjsc || ssc) && (!snsc || nil_is_j);
    Outcome::verdict(
        f,
        ok,
        Some(snsc),
        Some(sjsc && ssc),
        json!({
            "strongly_nil_star_clean": snsc, "strongly_j_star_clean": sjsc,
            "strongly_star_clean": ssc, "nil_equals_jacobson": nil_is_j,
        }),
    )
}

fn check_xcheck_ideals(f: &Facts, cfg: &SuiteConfig) -> Outcome {
    if f.ring.order() > cfg.subgroup_scan_max_order {
        return Outcome::skipped(f.name, "order above the subgroup-scan limit");
    }
    let l = match f.lattice() {
        Ok(l) => l,
        Err(e) => {
            return Outcome::verdict(f, false, None, None, json!({ "error": e }));
        }
    };
    let a: BTreeSet<ElemSet> = l.ideals.iter().map(|i| i.members.clone()).collect();
    let b: BTreeSet<ElemSet> = ideal::ideals_by_subgroup_scan(f.ring)
        .into_iter()
        .map(|i| i.members)
        .collect();
    Outcome::verdict(
        f,
        a == b,
        None,
        None,
        json!({ "closure": a.len(), "scan": b.len() }),
    )
}

fn check_xcheck_jacobson(f: &Facts, _: &SuiteConfig) -> Outcome {
    if !f.c.commutative.holds {
        return Outcome::skipped(f.name, "not commutative");
    }
    let l = match f.lattice() {
        Ok(l) => l,
        Err(e) => return Outcome::skipped(f.name, e),
    };
    let meet = l
        .maximal
        .iter()
        .fold(ElemSet::full(f.ring.order()), |acc, &k| acc.intersection(&l.ideals[k].members));
    Outcome::verdict(
        f,
        meet == f.c.sets.jacobson,
        None,
        None,
        json!({ "jacobson": f.c.sets.jacobson, "maximal_meet": meet }),
    )
}

fn check_xcheck_units(f: &Facts, _: &SuiteConfig) -> Outcome {
    let scan = star::units_by_inverse_scan(f.ring);
    Outcome::verdict(
        f,
        scan == f.c.sets.units,
        None,
        None,
        json!({ "units": f.c.sets.units.len() }),
    )
}

/// Unknown ids in `only`.
pub fn unknown_checks(only: &[String]) -> Vec<String> {
    only.iter()
        .filter(|id| !CHECKS.iter().any(|c| c.id == id.as_str()))
        .cloned()
        .collect()
}

pub fn run_suite(corpus: &Corpus, cfg: &SuiteConfig) -> SuiteReport {
    let selected: Vec<&CheckInfo> = CHECKS
        .iter()
        .filter(|c| {
            cfg.only
                .as_ref()
                .is_none_or(|only| only.iter().any(|id| id == c.id))
        })
        .collect();
    let want_lattice = selected.iter().any(|c| c.needs_lattice);
    let facts: Vec<Facts> = corpus
        .entries
        .par_iter()
        .map(|e| Facts::new(e, cfg, want_lattice))
        .collect();

    let checks: Vec<CheckReport> = selected
        .iter()
        .map(|info| {
            let outcomes: Vec<Outcome> = facts.par_iter().map(|f| (info.run)(f, cfg)).collect();
            let mut summary = Tally::default();
            for o in &outcomes {
                summary.add(&o.verdict);
            }
            CheckReport {
                id: info.id,
                statement: info.statement,
                form: info.form,
                summary,
                outcomes,
            }
        })
        .collect();

    let mut tally = Tally::default();
    for c in &checks {
        tally.pass += c.summary.pass;
        tally.fail += c.summary.fail;
        tally.skipped += c.summary.skipped;
    }
    let mut warnings = Vec::new();
    if corpus.is_empty() {
        warnings.push("corpus is empty; every check passes vacuously".to_string());
    }
    if !corpus.excluded.is_empty() {
        warnings.push(format!(
            "{} corpus members exceed the order cap and were excluded: {}",
            corpus.excluded.len(),
            corpus.excluded.join(" ")
        ));
    }
    if let Some(only) = &cfg.only {
        for id in unknown_checks(only) {
            warnings.push(format!("unknown check id `{id}`"));
        }
    }
    SuiteReport {
        summary: SuiteSummary {
            rings: corpus.len(),
            checks: checks.len(),
            tally,
            counterexamples: tally.fail,
        },
        warnings,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recipe::parse;

    fn corpus(exprs: &[&str]) -> Corpus {
        let r: Vec<Recipe> = exprs.iter().map(|e| parse(e).unwrap()).collect();
        Corpus::from_recipes(&r, HARD_MAX_ORDER).unwrap()
    }

    fn verdicts(rep: &SuiteReport, id: &str) -> Vec<Verdict> {
        rep.check(id).unwrap().outcomes.iter().map(|o| o.verdict.clone()).collect()
    }

    #[test]
    fn default_corpus_shape() {
        let r = Corpus::default_recipes();
        assert_eq!(r.len(), 31 + 80 + 29 + 9 + 5);
        let set: BTreeSet<String> = r.iter().map(|x| x.to_string()).collect();
        assert_eq!(set.len(), r.len());
        assert!(r.iter().all(|x| x.order().unwrap() <= 64));
    }

    #[test]
    fn default_corpus_respects_cap() {
        let c = Corpus::default_corpus(16).unwrap();
        assert!(c.entries.iter().all(|e| e.ring.order() <= 16));
        assert!(!c.excluded.is_empty());
    }

    #[test]
    fn small_suite_passes() {
        let c = corpus(&["zn:2", "zn:3", "zn:4", "zn:12", "example:twisted-boolean-4", "product:zn:2,zn:4"]);
        let rep = run_suite(&c, &SuiteConfig::default());
        assert_eq!(rep.counterexamples(), 0, "{}", rep.to_json());
        assert_eq!(rep.checks.len(), CHECKS.len());
    }

    #[test]
    fn hypotheses_are_skipped_not_passed() {
        let c = corpus(&["zn:12"]);
        let rep = run_suite(&c, &SuiteConfig::default());
        for id in ["maximal-ideal-criterion", "maximal-intersections", "submaximal-quotients"] {
            assert!(matches!(verdicts(&rep, id)[0], Verdict::Skipped { .. }), "{id}");
        }
        // biconditionals apply to every ring
        assert_eq!(verdicts(&rep, "nil-ideal-criterion"), vec![Verdict::Pass]);
    }

    #[test]
    fn quadratic_sweep_counts_symmetric_pairs() {
        let c = corpus(&["zn:4", "example:boolean-like-8"]);
        let cfg = SuiteConfig {
            only: Some(vec!["quadratic-extension".into()]),
            ..SuiteConfig::default()
        };
        let rep = run_suite(&c, &cfg);
        let out = &rep.checks[0].outcomes;
        assert_eq!(out[0].witness["pairs_swept"], 16);
        // b and c are swapped, so only a and b = c are free: 4 symmetric elements
        assert_eq!(out[1].witness["symmetric_elements"], 4);
        assert_eq!(out[1].witness["pairs_swept"], 16);
    }

    #[test]
    fn only_filter_and_unknown_ids() {
        let c = corpus(&["zn:4"]);
        let cfg = SuiteConfig {
            only: Some(vec!["nil-ideal-criterion".into(), "bogus".into()]),
            ..SuiteConfig::default()
        };
        let rep = run_suite(&c, &cfg);
        assert_eq!(rep.checks.len(), 1);
        assert!(rep.warnings.iter().any(|w| w.contains("bogus")));
    }

    #[test]
    fn empty_corpus_warns() {
        let rep = run_suite(&Corpus::default(), &SuiteConfig::default());
        assert!(rep.all_passed());
        assert_eq!(rep.summary.tally.pass, 0);
        assert!(!rep.warnings.is_empty());
    }

    #[test]
    fn corpus_from_json() {
        let spec = crate::format::to_json(&crate::construct::make_zn(3).unwrap());
        let text = format!("[\"zn:2\", {spec}]");
        let c = Corpus::from_json(&text, 64).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.entries[1].name.starts_with("entry-1:"));
    }

    #[test]
    fn corpus_errors_are_classified() {
        use crate::error::ErrorClass;
        assert_eq!(Corpus::from_json("{", 64).unwrap_err().class(), ErrorClass::Input);
        assert_eq!(Corpus::from_json("[\"zz:2\"]", 64).unwrap_err().class(), ErrorClass::Input);
        assert_eq!(
            Corpus::from_json("[\"zn:100\"]", 64).unwrap_err().class(),
            ErrorClass::CapExceeded
        );
        let mut spec = RingSpec::from_star_ring(&crate::construct::matrices_2x2_z2().unwrap());
        spec.involution = Some((0..16).collect());
        let text = format!("[{}]", serde_json::to_string(&spec).unwrap());
        assert_eq!(Corpus::from_json(&text, 64).unwrap_err().class(), ErrorClass::Validation);
    }
}
