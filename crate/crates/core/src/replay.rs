//! Declarative proof scripts, their executor and reports.
//!
//! A script is an ordered list of steps over the other modules. Steps that
//! consume certified class-field values report [`Status::TrustedInput`]
//! instead of [`Status::Pass`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cft_data::{self, CertifiedData};
use crate::factored_real::{parse_rational, ComparePolicy, FactoredReal, Rational};
use crate::galois_module as gm;
use crate::groups::{self, library, FiniteGroup};
use crate::linalg::{Matrix, Subspace};
use crate::odlyzko::{DegreeBound, OdlyzkoTable};
use crate::ramification::{self as ram, FormalIdeal, RamificationFiltration};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("step `{step}`: unresolved reference to {reference}")]
    Unresolved { step: String, reference: String },
    #[error("step `{step}`: malformed input: {reason}")]
    Malformed { step: String, reason: String },
    #[error("duplicate step id `{0}`")]
    DuplicateId(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofScript {
    pub case: String,
    pub steps: Vec<ProofStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub id: String,
    pub citation: String,
    #[serde(flatten)]
    pub input: StepInput,
}

/// A real number named by a literal or by loaded data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operand {
    /// `"5^5/4 * 6^4/5"` or a decimal.
    Literal(String),
    /// Declared root discriminant of a loaded field.
    FieldRootDisc(String),
    /// Tabulated GRH bound at exactly this degree.
    Odlyzko(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expect {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Expect {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Expect::Less,
            Ordering::Equal => Expect::Equal,
            Ordering::Greater => Expect::Greater,
        }
    }
}

/// `value^power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub value: String,
    #[serde(default = "one_str")]
    pub power: String,
}

fn one_str() -> String {
    "1".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum StepInput {
    /// Exact comparison, optionally with the printed decimal of `lhs`.
    CompareBound {
        lhs: Operand,
        rhs: Operand,
        expect: Expect,
        #[serde(default)]
        approx: Option<String>,
    },
    /// Odlyzko degree bound for fields with root discriminant below `delta`;
    /// `over_degree` additionally reports the relative bound.
    DegreeBound {
        delta: Operand,
        expect_less_than: u64,
        #[serde(default)]
        over_degree: Option<u64>,
    },
    RamExponent(RamOp),
    GroupFact(GroupQuery),
    RayClassFact(CftQuery),
    SimReplay(SimKind),
    #[serde(rename = "KWFact")]
    KwFact {
        ell: u64,
        primes: Vec<u64>,
        expect: bool,
    },
    WeilCheck {
        ell: u64,
        k: u32,
        d_min: u64,
        q: u64,
        expect: bool,
    },
}

impl StepInput {
    pub fn kind(&self) -> &'static str {
        match self {
            StepInput::CompareBound { .. } => "CompareBound",
            StepInput::DegreeBound { .. } => "DegreeBound",
            StepInput::RamExponent(_) => "RamExponent",
            StepInput::GroupFact(_) => "GroupFact",
            StepInput::RayClassFact(_) => "RayClassFact",
            StepInput::SimReplay(_) => "SimReplay",
            StepInput::KwFact { .. } => "KWFact",
            StepInput::WeilCheck { .. } => "WeilCheck",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum RamOp {
    /// `ℓ^(1 + 1/(ℓ-1)) ∏ p^(1 - 1/ℓ)`.
    FontaineProduct {
        ell: u64,
        tame: Vec<u64>,
        expect: String,
    },
    /// Exact product of terms.
    Identity {
        terms: Vec<Term>,
        expect: String,
    },
    /// Root discriminant recomputed from a field's local data.
    RootDiscFromLocal {
        field: String,
        expect: String,
    },
    TameAt {
        field: String,
        prime: u64,
        expect: bool,
    },
    /// The exponents of the listed primes agree in two operands.
    LocalExponentsEqual {
        a: Operand,
        b: Operand,
        primes: Vec<u64>,
    },
    WildCandidates {
        ell: u64,
        e: u64,
        upper: u64,
        expect: Vec<u64>,
    },
    FiltrationSum {
        orders: Vec<u64>,
        expect: u64,
    },
    ConductorFromDisc {
        disc: i64,
        characters: i64,
        expect: i64,
    },
    /// Whether `e = 1` is forced (see [`ram::unramified_degree_constraint`]).
    UnramifiedDegree {
        #[serde(default)]
        degree: Option<u64>,
        e_upper: Vec<u64>,
        forbidden: u64,
        expect: bool,
    },
    /// Whether some `frv` in `[lo, hi]` is a multiple of `degree / e`.
    FrvWindow {
        degree: u64,
        e: u64,
        lo: u64,
        hi: u64,
        expect: bool,
    },
    /// For every exponent tuple of `characters` conductors at one prime with
    /// all pairwise maxima equal to `m`, the sum is at least `2m`.
    PairwiseLcmSquare {
        characters: usize,
        max_exp: i64,
    },
    /// `Δ = ∏ 𝔣(χ)` for a cyclic group of order `order` whose faithful
    /// characters have conductor `(symbol)^conductor_exp` over `count`
    /// conjugates; checks `𝔣^faithful | Δ`.
    CyclicConductorDiscriminant {
        order: u64,
        symbol: String,
        count: u64,
        conductor_exp: i64,
        expect_disc_exp: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "query")]
pub enum GroupQuery {
    /// Every group of each order has automorphism count prime to `prime`.
    AutomorphismsCoprime {
        orders: Vec<u64>,
        prime: u64,
    },
    /// Every group of each order has a unique Sylow `prime`-subgroup and
    /// abelianization that is not a `prime`-group.
    UniqueSylowNonPrimeAbelianization {
        orders: Vec<u64>,
        prime: u64,
    },
    AllAbelian {
        order: u64,
    },
    /// Every nonabelian group of this order has abelianization that is not a
    /// `prime`-group.
    NonabelianAbelianizationNotPrimeGroup {
        order: u64,
        prime: u64,
    },
    /// Number of groups of `order` surjecting onto `ℤ/m_1 × ⋯`.
    SurjectorCount {
        order: u64,
        target: Vec<usize>,
        expect: usize,
    },
    /// Every surjector maps onto `ℤ/quotient` with kernel the target.
    SurjectorKernels {
        order: u64,
        target: Vec<usize>,
        quotient: usize,
    },
    /// The unique nonabelian group of `order` with these invariants.
    UniqueByAbelianization {
        order: u64,
        abelianization: Vec<u64>,
        expect_name: String,
    },
    NoNormalSubgroups {
        order: u64,
        name: String,
        orders: Vec<usize>,
    },
    /// The named group has a normal subgroup `kernel` with quotient `quotient`.
    ExtensionOf {
        order: u64,
        name: String,
        kernel: Vec<usize>,
        quotient: Vec<usize>,
    },
    /// `|⟨σ, τ⟩|` over `𝔽_q[a]/(a^k)` divides `bound` iff `k = 1`, for `k ≤ k_max`.
    NilpotentPair {
        q: u64,
        k_max: usize,
        bound: usize,
    },
    /// A random `ℓ`-group of unipotent matrices fixes at least `ℓ - 1`
    /// nonzero vectors.
    EllGroupFixedPoints {
        ell: u64,
        dim: usize,
        samples: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "query")]
pub enum CftQuery {
    RayClassNumber {
        field: String,
        conductor_exp: i64,
        expect: u64,
    },
    ClassNumber {
        field: String,
        expect: u64,
    },
    UnitGeneration {
        field: String,
    },
    Splitting {
        k: String,
        h: String,
        prime: u64,
        expect: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "replay")]
pub enum SimKind {
    ToricCase {
        d_max: usize,
        randomized: usize,
    },
    TwoPrimeToric {
        d_max: usize,
        randomized: usize,
    },
    UnipotentPair {
        t_max: usize,
    },
    GeneratedFinitePart {
        ell: u64,
        d: usize,
        randomized: usize,
    },
    /// Single-step mixed-reduction invariants on `steps` fresh instances.
    MixedReduction {
        ell: u64,
        d: usize,
        steps: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    TrustedInput,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::TrustedInput => "TRUSTED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub id: String,
    pub status: Status,
    pub citation: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub case: String,
    pub steps: Vec<StepReport>,
    pub overall: Overall,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.overall == Overall::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &StepReport> {
        self.steps.iter().filter(|s| s.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "case {}", self.case).unwrap();
        for s in &self.steps {
            writeln!(out, "[{:<7}] {}: {}", s.status.label(), s.id, s.detail).unwrap();
            writeln!(out, "          cite: {}", s.citation).unwrap();
        }
        let (pass, trusted, fail) =
            self.steps
                .iter()
                .fold((0, 0, 0), |(p, t, f), s| match s.status {
                    Status::Pass => (p + 1, t, f),
                    Status::TrustedInput => (p, t + 1, f),
                    Status::Fail => (p, t, f + 1),
                });
        writeln!(
            out,
            "overall: {} ({pass} pass, {trusted} trusted, {fail} fail)",
            if self.passed() { "PASS" } else { "FAIL" }
        )
        .unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Everything a run reads.
#[derive(Clone, Debug)]
pub struct RunContext {
    pub data: CertifiedData,
    pub odlyzko: OdlyzkoTable,
    pub policy: ComparePolicy,
    pub seed: u64,
}

impl RunContext {
    pub fn shipped() -> Self {
        RunContext {
            data: CertifiedData::shipped(),
            odlyzko: crate::odlyzko::shipped_table(),
            policy: ComparePolicy::default(),
            seed: 0,
        }
    }
}

/// Resolves every data reference, then executes the steps in order. A failing
/// step does not stop later ones.
pub fn run(script: &ProofScript, ctx: &RunContext) -> Result<Report, ConfigError> {
    resolve(script, ctx)?;
    let steps: Vec<StepReport> = script
        .steps
        .iter()
        .map(|step| {
            let (status, detail) = execute(step, ctx);
            StepReport {
                id: step.id.clone(),
                status,
                citation: step.citation.clone(),
                detail,
            }
        })
        .collect();
    let overall = if steps.iter().any(|s| s.status == Status::Fail) {
        Overall::Fail
    } else {
        Overall::Pass
    };
    Ok(Report {
        case: script.case.clone(),
        steps,
        overall,
    })
}

fn resolve(script: &ProofScript, ctx: &RunContext) -> Result<(), ConfigError> {
    let mut ids = BTreeSet::new();
    for step in &script.steps {
        if !ids.insert(step.id.as_str()) {
            return Err(ConfigError::DuplicateId(step.id.clone()));
        }
        let unresolved = |reference: String| ConfigError::Unresolved {
            step: step.id.clone(),
            reference,
        };
        let malformed = |reason: String| ConfigError::Malformed {
            step: step.id.clone(),
            reason,
        };
        let operand = |o: &Operand| -> Result<(), ConfigError> {
            match o {
                Operand::Literal(s) => s
                    .parse::<FactoredReal>()
                    .map(|_| ())
                    .map_err(|e| malformed(e.to_string())),
                Operand::FieldRootDisc(id) => ctx
                    .data
                    .field(id)
                    .map(|_| ())
                    .map_err(|e| unresolved(e.to_string())),
                Operand::Odlyzko(d) => ctx
                    .odlyzko
                    .bound_at(*d)
                    .map(|_| ())
                    .ok_or_else(|| unresolved(format!("odlyzko row at degree {d}"))),
            }
        };
        let field = |id: &str| {
            ctx.data
                .field(id)
                .map(|_| ())
                .map_err(|e| unresolved(e.to_string()))
        };
        let cft = |r: Result<(), cft_data::CftError>| r.map_err(|e| unresolved(e.to_string()));
        match &step.input {
            StepInput::CompareBound {
                lhs, rhs, approx, ..
            } => {
                operand(lhs)?;
                operand(rhs)?;
                if let Some(a) = approx {
                    parse_rational(a).map_err(|e| malformed(e.to_string()))?;
                }
            }
            StepInput::DegreeBound { delta, .. } => operand(delta)?,
            StepInput::RamExponent(op) => match op {
                RamOp::RootDiscFromLocal { field: f, .. } | RamOp::TameAt { field: f, .. } => {
                    field(f)?
                }
                RamOp::LocalExponentsEqual { a, b, .. } => {
                    operand(a)?;
                    operand(b)?;
                }
                _ => {}
            },
            StepInput::RayClassFact(q) => match q {
                CftQuery::RayClassNumber { field: f, .. }
                | CftQuery::ClassNumber { field: f, .. } => cft(ctx.data.ray_class(f).map(|_| ()))?,
                CftQuery::UnitGeneration { field: f } => cft(ctx.data.unit_image(f).map(|_| ()))?,
                CftQuery::Splitting { k, h, prime, .. } => {
                    cft(ctx.data.splitting_record(k, *prime).map(|_| ()))?;
                    cft(ctx.data.splitting_record(h, *prime).map(|_| ()))?;
                }
            },
            _ => {}
        }
    }
    Ok(())
}

fn value(o: &Operand, ctx: &RunContext) -> FactoredReal {
    match o {
        Operand::Literal(s) => s.parse().expect("resolved"),
        Operand::FieldRootDisc(id) => ctx
            .data
            .field(id)
            .expect("resolved")
            .declared_root_disc
            .clone(),
        Operand::Odlyzko(d) => {
            FactoredReal::from_rational(ctx.odlyzko.bound_at(*d).expect("resolved"))
                .expect("positive bound")
        }
    }
}

fn describe(o: &Operand, ctx: &RunContext) -> String {
    match o {
        Operand::Literal(s) => s.clone(),
        Operand::FieldRootDisc(id) => format!("δ({id}) = {}", value(o, ctx)),
        Operand::Odlyzko(d) => format!(
            "odlyzko({d}) = {}",
            ctx.odlyzko.bound_at(*d).expect("resolved")
        ),
    }
}

fn verdict(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

fn trusted(ok: bool, detail: String) -> (Status, String) {
    (
        if ok {
            Status::TrustedInput
        } else {
            Status::Fail
        },
        detail,
    )
}

fn fail(detail: impl Into<String>) -> (Status, String) {
    (Status::Fail, detail.into())
}

fn execute(step: &ProofStep, ctx: &RunContext) -> (Status, String) {
    match &step.input {
        StepInput::CompareBound {
            lhs,
            rhs,
            expect,
            approx,
        } => compare_bound(lhs, rhs, *expect, approx.as_deref(), ctx),
        StepInput::DegreeBound {
            delta,
            expect_less_than,
            over_degree,
        } => {
            let got = ctx
                .odlyzko
                .max_degree_below_with(&value(delta, ctx), ctx.policy);
            let mut detail = format!(
                "δ < {} ⇒ degree {}",
                describe(delta, ctx),
                render_bound(got)
            );
            if let (Some(base), DegreeBound::LessThan(n)) = (over_degree, got) {
                write!(detail, ", relative degree < {}", n.div_ceil(*base)).unwrap();
            }
            verdict(got == DegreeBound::LessThan(*expect_less_than), detail)
        }
        StepInput::RamExponent(op) => ram_exponent(op, ctx),
        StepInput::GroupFact(q) => match group_fact(q, ctx.seed) {
            Ok(r) => r,
            Err(e) => fail(e.to_string()),
        },
        StepInput::RayClassFact(q) => cft_fact(q, ctx),
        StepInput::SimReplay(kind) => match sim_replay(kind, ctx.seed) {
            Ok(r) => r,
            Err(e) => fail(e.to_string()),
        },
        StepInput::KwFact {
            ell,
            primes,
            expect,
        } => {
            let got = cft_data::kronecker_weber_check(*ell, primes);
            verdict(
                got == *expect,
                format!(
                    "cyclic degree-{ell} extension unramified outside {primes:?} exists: {got}"
                ),
            )
        }
        StepInput::WeilCheck {
            ell,
            k,
            d_min,
            q,
            expect,
        } => match gm::weil_contradiction(*ell, *k, *d_min, *q) {
            Ok(got) => verdict(
                got == *expect,
                format!(
                    "({ell} - 1)^2 = {} vs q = {q}: contradiction {got}",
                    (ell - 1) * (ell - 1)
                ),
            ),
            Err(e) => fail(e.to_string()),
        },
    }
}

fn render_bound(b: DegreeBound) -> String {
    match b {
        DegreeBound::LessThan(n) => format!("< {n}"),
        DegreeBound::Unbounded => "unbounded".into(),
    }
}

fn compare_bound(
    lhs: &Operand,
    rhs: &Operand,
    expect: Expect,
    approx: Option<&str>,
    ctx: &RunContext,
) -> (Status, String) {
    let (a, b) = (value(lhs, ctx), value(rhs, ctx));
    let got = Expect::from(a.compare_with(&b, ctx.policy));
    let width = Rational::new(1.into(), 1_000_000.into());
    let interval = a.decimal_interval(&width);
    let mut ok = got == expect;
    let mut detail = format!(
        "{} ∈ {} is {:?} {}",
        describe(lhs, ctx),
        interval,
        got,
        describe(rhs, ctx)
    );
    if let Some(s) = approx {
        let printed = parse_rational(s).expect("resolved");
        let tol = Rational::new(2.into(), 1000.into());
        let close =
            (&interval.lower - &printed).abs() <= tol && (&interval.upper - &printed).abs() <= tol;
        write!(detail, "; printed {s} within 2e-3: {close}").unwrap();
        ok &= close;
    }
    verdict(ok, detail)
}

fn parse_fr(s: &str) -> Result<FactoredReal, String> {
    s.parse::<FactoredReal>().map_err(|e| e.to_string())
}

fn ram_exponent(op: &RamOp, ctx: &RunContext) -> (Status, String) {
    let run = || -> Result<(Status, String), String> {
        Ok(match op {
            RamOp::FontaineProduct { ell, tame, expect } => {
                let got = ram::fontaine_product_bound(*ell, tame).map_err(|e| e.to_string())?;
                verdict(
                    got == parse_fr(expect)?,
                    format!("Fontaine product for ℓ = {ell}, tame {tame:?}: {got}"),
                )
            }
            RamOp::Identity { terms, expect } => {
                let mut got = FactoredReal::one();
                for t in terms {
                    let p = parse_rational(&t.power).map_err(|e| e.to_string())?;
                    got = got.mul(&parse_fr(&t.value)?.pow(&p));
                }
                let want = parse_fr(expect)?;
                verdict(
                    got == want,
                    format!("product = {got}, expected {want} (structural equality)"),
                )
            }
            RamOp::RootDiscFromLocal { field, expect } => {
                let fd = ctx.data.field(field).map_err(|e| e.to_string())?;
                let got = ram::root_disc_from_local_data(fd).map_err(|e| e.to_string())?;
                verdict(
                    got == parse_fr(expect)?,
                    format!("local data of {field} give δ = {got}"),
                )
            }
            RamOp::TameAt {
                field,
                prime,
                expect,
            } => {
                let fd = ctx.data.field(field).map_err(|e| e.to_string())?;
                let local = fd
                    .local(*prime)
                    .ok_or(format!("{field} has no local data at {prime}"))?;
                verdict(
                    local.is_tame() == *expect,
                    format!(
                        "{field} at {prime}: e = {}, tame = {}",
                        local.e,
                        local.is_tame()
                    ),
                )
            }
            RamOp::LocalExponentsEqual { a, b, primes } => {
                let (x, y) = (value(a, ctx), value(b, ctx));
                let ok = primes.iter().all(|&p| x.exponent(p) == y.exponent(p));
                let shown: Vec<String> = primes
                    .iter()
                    .map(|&p| format!("{p}: {} vs {}", x.exponent(p), y.exponent(p)))
                    .collect();
                verdict(ok, format!("exponents {}", shown.join(", ")))
            }
            RamOp::WildCandidates {
                ell,
                e,
                upper,
                expect,
            } => {
                let got: Vec<u64> = ram::wild_candidate_exponents(*ell, *e, *upper)
                    .into_iter()
                    .collect();
                verdict(
                    got == *expect,
                    format!("wild exponents below {upper} for e = {e}: {got:?}"),
                )
            }
            RamOp::FiltrationSum { orders, expect } => {
                let f = RamificationFiltration::new(orders.clone()).map_err(|e| e.to_string())?;
                let got = ram::wild_different_valuation(&f);
                verdict(
                    got == *expect,
                    format!("Σ(|Γ_i| - 1) over {orders:?} = {got}"),
                )
            }
            RamOp::ConductorFromDisc {
                disc,
                characters,
                expect,
            } => {
                let got = ram::conductor_from_cyclic_disc(*disc, *characters)
                    .map_err(|e| e.to_string())?;
                verdict(got == *expect, format!("discriminant exponent {disc} over {characters} faithful characters: conductor exponent {got}"))
            }
            RamOp::UnramifiedDegree {
                degree,
                e_upper,
                forbidden,
                expect,
            } => {
                let got = ram::unramified_degree_constraint(*degree, e_upper, *forbidden);
                verdict(
                    got == *expect,
                    format!(
                        "e | {} and {forbidden} ∤ e force e = 1: {got}",
                        e_upper.iter().product::<u64>()
                    ),
                )
            }
            RamOp::FrvWindow {
                degree,
                e,
                lo,
                hi,
                expect,
            } => {
                if *e == 0 || degree % e != 0 {
                    return Err(format!("{e} does not divide {degree}"));
                }
                let fr = degree / e;
                let got = (*lo..=*hi).any(|x| x % fr == 0);
                verdict(
                    got == *expect,
                    format!("e = {e}: f·r = {fr} divides some value in [{lo}, {hi}]: {got}"),
                )
            }
            RamOp::PairwiseLcmSquare {
                characters,
                max_exp,
            } => {
                let ok = pairwise_lcm_square(*characters, *max_exp);
                verdict(ok, format!("all {characters}-tuples of exponents ≤ {max_exp} with equal pairwise maxima m have sum ≥ 2m: {ok}"))
            }
            RamOp::CyclicConductorDiscriminant {
                order,
                symbol,
                count,
                conductor_exp,
                expect_disc_exp,
            } => {
                let f = FormalIdeal::conjugate_product(symbol, *count, *conductor_exp);
                let mut conductors = vec![FormalIdeal::unit()];
                let mut faithful = 0i64;
                for k in 1..*order {
                    if num_integer::gcd(k, *order) == 1 {
                        faithful += 1;
                        conductors.push(f.clone());
                    }
                }
                let disc = ram::conductor_discriminant(&conductors).map_err(|e| e.to_string())?;
                let want = FormalIdeal::conjugate_product(symbol, *count, *expect_disc_exp);
                verdict(
                    f.pow(faithful).divides(&disc) && want.divides(&disc),
                    format!(
                        "{faithful} faithful characters of Z/{order}: 𝔣^{faithful} | Δ = {disc}"
                    ),
                )
            }
        })
    };
    run().unwrap_or_else(fail)
}

fn pairwise_lcm_square(characters: usize, max_exp: i64) -> bool {
    let mut tuple = vec![0i64; characters];
    loop {
        let pair_max: BTreeSet<i64> = (0..characters)
            .flat_map(|i| (i + 1..characters).map(move |j| (i, j)))
            .map(|(i, j)| tuple[i].max(tuple[j]))
            .collect();
        if pair_max.len() == 1 {
            let m = *pair_max.iter().next().unwrap();
            if tuple.iter().sum::<i64>() < 2 * m {
                return false;
            }
        }
        let mut i = 0;
        loop {
            if i == characters {
                return true;
            }
            tuple[i] += 1;
            if tuple[i] <= max_exp {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

fn library_group(order: u64, name: &str) -> Result<FiniteGroup, groups::GroupError> {
    groups::group_library(order)?
        .into_iter()
        .find(|g| g.name() == name)
        .ok_or_else(|| {
            groups::GroupError::Precondition(format!("no group `{name}` of order {order}"))
        })
}

fn is_prime_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn group_fact(q: &GroupQuery, seed: u64) -> Result<(Status, String), groups::GroupError> {
    Ok(match q {
        GroupQuery::AutomorphismsCoprime { orders, prime } => {
            let mut bad = Vec::new();
            let mut counts = Vec::new();
            for &n in orders {
                for g in groups::group_library(n)? {
                    let a = g.automorphism_count()?;
                    counts.push(format!("{}:{a}", g.name()));
                    if a % prime == 0 {
                        bad.push(g.name().to_string());
                    }
                }
            }
            verdict(
                bad.is_empty(),
                format!("|Aut| {}; divisible by {prime}: {bad:?}", counts.join(" ")),
            )
        }
        GroupQuery::UniqueSylowNonPrimeAbelianization { orders, prime } => {
            let mut bad = Vec::new();
            for &n in orders {
                for g in groups::group_library(n)? {
                    let ab: u64 = g.abelianization().iter().product();
                    if !g.unique_sylow_check(*prime)? || is_prime_power_of(ab, *prime) {
                        bad.push(g.name().to_string());
                    }
                }
            }
            verdict(
                bad.is_empty(),
                format!("orders {orders:?}: exceptions {bad:?}"),
            )
        }
        GroupQuery::AllAbelian { order } => {
            let gs = groups::group_library(*order)?;
            let non: Vec<&str> = gs
                .iter()
                .filter(|g| !g.is_abelian())
                .map(|g| g.name())
                .collect();
            verdict(
                non.is_empty(),
                format!("{} groups of order {order}; nonabelian: {non:?}", gs.len()),
            )
        }
        GroupQuery::NonabelianAbelianizationNotPrimeGroup { order, prime } => {
            let gs = groups::group_library(*order)?;
            let mut shown = Vec::new();
            let mut ok = true;
            for g in gs.iter().filter(|g| !g.is_abelian()) {
                let ab = g.abelianization();
                ok &= !is_prime_power_of(ab.iter().product(), *prime);
                shown.push(format!("{}^ab = {ab:?}", g.name()));
            }
            verdict(ok, shown.join(", "))
        }
        GroupQuery::SurjectorCount {
            order,
            target,
            expect,
        } => {
            let t = library::abelian(target);
            let names: Vec<String> = groups::group_library(*order)?
                .iter()
                .filter(|g| g.surjects_onto(&t))
                .map(|g| g.name().to_string())
                .collect();
            verdict(
                names.len() == *expect,
                format!(
                    "{} groups of order {order} surject onto {}: {names:?} (expected {expect})",
                    names.len(),
                    t.name()
                ),
            )
        }
        GroupQuery::SurjectorKernels {
            order,
            target,
            quotient,
        } => {
            let t = library::abelian(target);
            let c = library::cyclic(*quotient);
            let surj: Vec<FiniteGroup> = groups::group_library(*order)?
                .into_iter()
                .filter(|g| g.surjects_onto(&t))
                .collect();
            let bad: Vec<&str> = surj
                .iter()
                .filter(|g| !g.is_extension_of(&t, &c))
                .map(|g| g.name())
                .collect();
            verdict(
                bad.is_empty() && !surj.is_empty(),
                format!(
                    "{} surjectors, each onto {} with kernel {}; exceptions {bad:?}",
                    surj.len(),
                    c.name(),
                    t.name()
                ),
            )
        }
        GroupQuery::UniqueByAbelianization {
            order,
            abelianization,
            expect_name,
        } => {
            let hits: Vec<String> = groups::group_library(*order)?
                .iter()
                .filter(|g| !g.is_abelian() && g.abelianization() == *abelianization)
                .map(|g| g.name().to_string())
                .collect();
            verdict(
                hits.len() == 1 && hits[0] == *expect_name,
                format!("nonabelian groups of order {order} with abelianization {abelianization:?}: {hits:?}"),
            )
        }
        GroupQuery::NoNormalSubgroups {
            order,
            name,
            orders,
        } => {
            let g = library_group(*order, name)?;
            let mut found = Vec::new();
            for &n in orders {
                if g.has_normal_subgroup_of_order(n)? {
                    found.push(n);
                }
            }
            verdict(
                found.is_empty(),
                format!("{name}: normal subgroups among orders {orders:?}: {found:?}"),
            )
        }
        GroupQuery::ExtensionOf {
            order,
            name,
            kernel,
            quotient,
        } => {
            let g = library_group(*order, name)?;
            let (k, q) = (library::abelian(kernel), library::abelian(quotient));
            let ok = g.is_extension_of(&k, &q) && !g.is_abelian();
            verdict(
                ok,
                format!(
                    "{name} is a nonabelian extension of {} by {}: {ok}",
                    q.name(),
                    k.name()
                ),
            )
        }
        GroupQuery::NilpotentPair { q, k_max, bound } => {
            let mut ok = true;
            let mut shown = Vec::new();
            for k in 1..=*k_max {
                let n = groups::nilpotent_pair_group_order(*q, k)?;
                let divides = bound % n == 0;
                ok &= divides == (k == 1);
                shown.push(format!("k={k}: {n}"));
            }
            verdict(
                ok,
                format!(
                    "orders {}; divides {bound} iff k = 1: {ok}",
                    shown.join(", ")
                ),
            )
        }
        GroupQuery::EllGroupFixedPoints { ell, dim, samples } => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut min_fixed = u64::MAX;
            for _ in 0..*samples {
                let p = gm::random_invertible(&mut rng, *ell, *dim);
                let gens: Vec<Matrix> = (0..2)
                    .map(|_| {
                        let mut m = Matrix::identity(*ell, *dim);
                        for i in 0..*dim {
                            for j in i + 1..*dim {
                                m.set(i, j, rng.gen_range(0..*ell));
                            }
                        }
                        m.conjugate_by(&p)
                    })
                    .collect();
                min_fixed = min_fixed.min(groups::ell_group_fixed_points(&gens)?);
            }
            verdict(
                min_fixed >= ell - 1,
                format!("{samples} random {ell}-groups on F_{ell}^{dim}: at least {min_fixed} nonzero fixed vectors"),
            )
        }
    })
}

fn cft_fact(q: &CftQuery, ctx: &RunContext) -> (Status, String) {
    let data = &ctx.data;
    match q {
        CftQuery::RayClassNumber {
            field,
            conductor_exp,
            expect,
        } => {
            let rec = data.ray_class(field).expect("resolved");
            let conductor_ok = rec.conductor.iter().all(|(_, e)| e == conductor_exp);
            let ideal = rec
                .conductor_ideal(data.field(field).expect("resolved"))
                .map(|i| i.to_string())
                .unwrap_or_default();
            trusted(
                conductor_ok && rec.ray_class_number == *expect,
                format!(
                    "|Cl_f| = {} for f = {ideal} ({})",
                    rec.ray_class_number, rec.provenance
                ),
            )
        }
        CftQuery::ClassNumber { field, expect } => {
            let rec = data.ray_class(field).expect("resolved");
            trusted(
                rec.class_number == Some(*expect),
                format!("class number of {field}: {:?}", rec.class_number),
            )
        }
        CftQuery::UnitGeneration { field } => {
            let rec = data.unit_image(field).expect("resolved");
            let ok = cft_data::residue_generation_check(rec);
            trusted(
                ok,
                format!(
                    "images {:?} of {:?} generate (F_{}^*)^{}: {ok}",
                    rec.images, rec.units, rec.target.q, rec.target.copies
                ),
            )
        }
        CftQuery::Splitting {
            k,
            h,
            prime,
            expect,
        } => match cft_data::splitting_consistency_check(data, k, h, *prime, *expect) {
            Ok(ok) => {
                let r = data.splitting_record(h, *prime).expect("resolved");
                trusted(
                    ok,
                    format!(
                        "p = {prime}: e = {}, f = {}, g = {} in {h}; pinned to {expect}: {ok}",
                        r.e, r.f, r.g
                    ),
                )
            }
            Err(e) => fail(e.to_string()),
        },
    }
}

fn summarize(name: &str, outcomes: Vec<gm::ReplayOutcome>) -> (Status, String) {
    let n = outcomes.len();
    match outcomes.iter().position(|o| !o.passed()) {
        None => verdict(
            true,
            format!("{name}: {n} instances, every sub-conclusion holds"),
        ),
        Some(i) => fail(format!(
            "{name}: instance {i} of {n} failed: {:?}",
            outcomes[i]
        )),
    }
}

fn sim_replay(kind: &SimKind, seed: u64) -> Result<(Status, String), gm::SimError> {
    Ok(match kind {
        SimKind::ToricCase { d_max, randomized } => {
            let mut out = Vec::new();
            for d in 1..=*d_max {
                let (inst, w) = gm::toric_instance(None, d);
                out.push(gm::replay_toric_case(&inst, &w)?);
            }
            for i in 0..*randomized as u64 {
                let (inst, w) =
                    gm::toric_instance(Some(seed.wrapping_add(i)), 1 + (i as usize % *d_max));
                out.push(gm::replay_toric_case(&inst, &w)?);
            }
            summarize("toric case", out)
        }
        SimKind::TwoPrimeToric { d_max, randomized } => {
            let mut out = Vec::new();
            for d in 1..=*d_max {
                for t in 0..=d {
                    out.push(gm::replay_t2_equals_t5(&gm::two_prime_instance(
                        None, d, t,
                    )?)?);
                }
            }
            for i in 0..*randomized as u64 {
                let d = 1 + (i as usize % *d_max);
                let t = (i as usize / *d_max) % (d + 1);
                out.push(gm::replay_t2_equals_t5(&gm::two_prime_instance(
                    Some(seed.wrapping_add(i)),
                    d,
                    t,
                )?)?);
            }
            summarize("t_2 = t_5", out)
        }
        SimKind::UnipotentPair { t_max } => {
            let mut ok = true;
            for t in 1..=*t_max {
                ok &= gm::unipotent_pair_constraint(t)?;
            }
            verdict(ok, format!("a = 0 forced for t = 1..{t_max}: {ok}"))
        }
        SimKind::GeneratedFinitePart { ell, d, randomized } => {
            let mut out = Vec::new();
            for i in 0..*randomized as u64 {
                let inst = gm::random_instance(seed.wrapping_add(i), *ell, *d, &[2]);
                out.push(gm::replay_generated_finite_part(&inst, 2)?);
            }
            summarize("generated finite part", out)
        }
        SimKind::MixedReduction { ell, d, steps } => {
            let mut out = Vec::new();
            for i in 0..*steps as u64 {
                let (inst, w) = mixed_instance(seed.wrapping_add(i), *ell, *d);
                out.push(gm::replay_mixed_case(&inst, 2, &w)?);
            }
            summarize("mixed reduction", out)
        }
    })
}

/// An instance with `a_2 > 0` and a `d`-dimensional `W ⊆ M_f(2)`, on which the
/// only Galois generator (inertia) acts trivially.
fn mixed_instance(seed: u64, ell: u64, d: usize) -> (gm::GaloisModuleInstance, Subspace) {
    use rand::{Rng, SeedableRng};
    let mut s = seed;
    loop {
        let inst = gm::random_instance(s, ell, d, &[2]);
        s = s.wrapping_add(0x9e37_79b9);
        if inst.a(2).unwrap() == 0 {
            continue;
        }
        let mf = inst.at(2).unwrap().mf.clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut w = Subspace::zero(ell, 2 * d);
        while w.dim() < d {
            let v: Vec<u64> = mf.basis().iter().fold(vec![0; 2 * d], |acc, b| {
                let c = rng.gen_range(0..ell);
                acc.iter().zip(b).map(|(x, y)| (x + c * y) % ell).collect()
            });
            w = w.sum(&Subspace::span(ell, 2 * d, vec![v]));
        }
        return (inst, w);
    }
}

fn cite(topic: &str, quote: &str) -> String {
    format!("{topic}: \"{quote}\"")
}

fn step(id: &str, citation: String, input: StepInput) -> ProofStep {
    ProofStep {
        id: id.into(),
        citation,
        input,
    }
}

fn lit(s: &str) -> Operand {
    Operand::Literal(s.into())
}

fn term(value: &str, power: &str) -> Term {
    Term {
        value: value.into(),
        power: power.into(),
    }
}

const K6: &str = "Q(zeta5,2^(1/5),3^(1/5))";
const J6: &str = "Q(zeta5,2^(1/5))";
const K10: &str = "Q(zeta3,2^(1/3),5^(1/3))";
const H10: &str = "HCF(Q(zeta3,2^(1/3),5^(1/3)))";
const F10: &str = "Q(zeta3,10^(1/3))";

/// Steps for `ℤ[1/6]`, `ℓ = 5`.
pub fn build_script_n6() -> ProofScript {
    use StepInput::*;
    let mut steps = vec![
        step(
            "fontaine-exponent-n6",
            cite(
                "N=6 root-discriminant bound",
                "5^{1 + 1/(5-1)} 2^{1 - 1/5} 3^{1 - 1/5} = 5^{5/4} 6^{4/5}",
            ),
            RamExponent(RamOp::FontaineProduct {
                ell: 5,
                tame: vec![2, 3],
                expect: "5^5/4 * 6^4/5".into(),
            }),
        ),
        step(
            "fontaine-n6",
            cite(
                "N=6 root-discriminant bound",
                "5^{5/4} 6^{4/5} = 31.349 < 31.645",
            ),
            CompareBound {
                lhs: lit("5^5/4 * 6^4/5"),
                rhs: Operand::Odlyzko(2400),
                expect: Expect::Less,
                approx: Some("31.349".into()),
            },
        ),
        step(
            "fontaine-n6-degree",
            cite("N=6 degree bound", "[L:Q] < 2400 and thus [L:K] < 24"),
            DegreeBound {
                delta: lit("5^5/4 * 6^4/5"),
                expect_less_than: 2400,
                over_degree: Some(100),
            },
        ),
        step(
            "root-disc-k6",
            cite("N=6 base field", "delta_K = 5^{23/20} 6^{4/5}"),
            RamExponent(RamOp::RootDiscFromLocal {
                field: K6.into(),
                expect: "5^23/20 * 6^4/5".into(),
            }),
        ),
        step(
            "unramified-outside-5",
            cite(
                "N=6 base field",
                "the exponents of 2 and 3 in delta_K equal those for delta_L",
            ),
            RamExponent(RamOp::LocalExponentsEqual {
                a: Operand::FieldRootDisc(K6.into()),
                b: lit("5^5/4 * 6^4/5"),
                primes: vec![2, 3],
            }),
        ),
        step(
            "tame-transitivity-n6",
            cite(
                "N=6 tame case",
                "delta_K 5^{5/[K:Q]} = 5^{23/20} 6^{4/5} 5^{5/100}",
            ),
            RamExponent(RamOp::Identity {
                terms: vec![term("5^23/20 * 6^4/5", "1"), term("5^5", "1/100")],
                expect: "5^6/5 * 6^4/5".into(),
            }),
        ),
        step(
            "tame-n6",
            cite(
                "N=6 tame case",
                "5^{23/20} 6^{4/5} 5^{5/100} = 28.925 ... delta_L > 29.094",
            ),
            CompareBound {
                lhs: lit("5^6/5 * 6^4/5"),
                rhs: Operand::Odlyzko(1000),
                expect: Expect::Less,
                approx: Some("28.925".into()),
            },
        ),
        step(
            "tame-n6-degree",
            cite("N=6 tame case", "[L:K] < 10"),
            DegreeBound {
                delta: lit("5^6/5 * 6^4/5"),
                expect_less_than: 1000,
                over_degree: Some(100),
            },
        ),
        step(
            "small-commutator-automorphisms",
            cite(
                "N=6 commutator lemma",
                "for all groups Gamma' of order less than 10, |Aut(Gamma')| is coprime to 5",
            ),
            GroupFact(GroupQuery::AutomorphismsCoprime {
                orders: (1..10).collect(),
                prime: 5,
            }),
        ),
        step(
            "order-25-abelian",
            cite(
                "N=6 commutator lemma",
                "Gamma has order 5^2 and is necessarily abelian",
            ),
            GroupFact(GroupQuery::AllAbelian { order: 25 }),
        ),
        step(
            "tame-sublemma-inertia",
            cite(
                "N=6 tame sublemma",
                "e_p(E/J) is either 1 or 5, and thus must be 1, since 5 does not divide [E:J]",
            ),
            RamExponent(RamOp::UnramifiedDegree {
                degree: None,
                e_upper: vec![1, 5],
                forbidden: 5,
                expect: true,
            }),
        ),
        step(
            "class-number-j",
            cite("N=6 tame case", "Cl(O_J) = 1"),
            RayClassFact(CftQuery::ClassNumber {
                field: J6.into(),
                expect: 1,
            }),
        ),
        step(
            "unit-generation-j",
            cite(
                "N=6 tame case",
                "generated by the global unit (1 + sqrt 5)/2 = -2",
            ),
            RayClassFact(CftQuery::UnitGeneration { field: J6.into() }),
        ),
        step(
            "wild-sylow",
            cite(
                "N=6 wild case",
                "since 5(1+5) > 20, H' is the unique 5-Sylow subgroup of H",
            ),
            GroupFact(GroupQuery::UniqueSylowNonPrimeAbelianization {
                orders: vec![10, 15, 20],
                prime: 5,
            }),
        ),
        step(
            "order125-surjectors",
            cite(
                "N=6 degree-5 case",
                "There are three groups up to isomorphism with this property",
            ),
            GroupFact(GroupQuery::SurjectorCount {
                order: 125,
                target: vec![5, 5],
                expect: 3,
            }),
        ),
        step(
            "order125-kernels",
            cite(
                "N=6 degree-5 case",
                "All of them admit at least one morphism to Z/5 with kernel Z/5 + Z/5",
            ),
            GroupFact(GroupQuery::SurjectorKernels {
                order: 125,
                target: vec![5, 5],
                quotient: 5,
            }),
        ),
        step(
            "wild-fontaine-threshold",
            cite("N=6 conductor bound", "5^{23/20} 5^{10/100} = 5^{5/4}"),
            RamExponent(RamOp::Identity {
                terms: vec![term("5^23/20", "1"), term("5^10", "1/100")],
                expect: "5^5/4".into(),
            }),
        ),
        step(
            "tame-d-fontaine-threshold",
            cite("N=6 conductor bound", "5^{23/20} 5^{50/500} = 5^{5/4}"),
            RamExponent(RamOp::Identity {
                terms: vec![term("5^23/20", "1"), term("5^50", "1/500")],
                expect: "5^5/4".into(),
            }),
        ),
        step(
            "filtration-sum",
            cite(
                "N=6 conductor bound",
                "|Gamma_i| - 1 is either equal to 4 or 0",
            ),
            RamExponent(RamOp::FiltrationSum {
                orders: vec![5, 5],
                expect: 8,
            }),
        ),
        step(
            "wild-exponent-sieve",
            cite(
                "N=6 conductor bound",
                "v = 4 or 8. Since we have wild ramification, v > e - 1. Thus v = 8",
            ),
            RamExponent(RamOp::WildCandidates {
                ell: 5,
                e: 5,
                upper: 10,
                expect: vec![8],
            }),
        ),
        step(
            "conductor-n6",
            cite(
                "N=6 conductor",
                "Delta_{E/D} = (f_{E/D})^4 ... f_{E/D} is equal to pi_D^2",
            ),
            RamExponent(RamOp::ConductorFromDisc {
                disc: 8,
                characters: 4,
                expect: 2,
            }),
        ),
        step(
            "tame-d-field",
            cite(
                "N=6 conductor bound",
                "If D is tamely ramified at 5, then D = Q(zeta_5, 24^{1/5})",
            ),
            RamExponent(RamOp::TameAt {
                field: "Q(zeta5,24^(1/5))".into(),
                prime: 5,
                expect: true,
            }),
        ),
    ];
    let rows = [
        ("Q(zeta5,2^(1/5))", 1),
        ("Q(zeta5,3^(1/5))", 1),
        ("Q(zeta5,6^(1/5))", 5),
        ("Q(zeta5,12^(1/5))", 5),
        ("Q(zeta5,24^(1/5))", 5),
        ("Q(zeta5,48^(1/5))", 5),
    ];
    for (field, n) in rows {
        let tag = field
            .trim_start_matches("Q(zeta5,")
            .split('^')
            .next()
            .unwrap();
        steps.push(step(
            &format!("rayclass-{tag}"),
            cite("ray class table", &format!("{field}, f = pi_K^2: {n}")),
            RayClassFact(CftQuery::RayClassNumber {
                field: field.into(),
                conductor_exp: 2,
                expect: n,
            }),
        ));
        steps.push(step(
            &format!("root-disc-{tag}"),
            cite(
                "ray class table",
                &format!("{field} root discriminant column"),
            ),
            RamExponent(RamOp::RootDiscFromLocal {
                field: field.into(),
                expect: if tag == "24" {
                    "5^3/4 * 6^4/5"
                } else if tag == "2" {
                    "5^23/20 * 2^4/5"
                } else if tag == "3" {
                    "5^23/20 * 3^4/5"
                } else {
                    "5^23/20 * 6^4/5"
                }
                .into(),
            }),
        ));
    }
    steps.extend([
        step(
            "simple-objects-fixed-point",
            cite("N=6 simple objects", "any l-group acting on (Z/l)^d has at least one (in fact l-1) nontrivial fixed point"),
            GroupFact(GroupQuery::EllGroupFixedPoints {
                ell: 5,
                dim: 3,
                samples: 8,
            }),
        ),
        step(
            "kronecker-weber-n6",
            cite("N=6 multiplicative case", "there are no Galois 5-extensions of Q unramified outside 2 and 3"),
            KwFact {
                ell: 5,
                primes: vec![2, 3],
                expect: false,
            },
        ),
        step(
            "sim-generated-finite-part",
            cite("N=6 reduction at 5", "ord_5(Phi(2)) is maximal"),
            SimReplay(SimKind::GeneratedFinitePart {
                ell: 5,
                d: 2,
                randomized: 20,
            }),
        ),
        step(
            "sim-mixed-reduction",
            cite("N=6 non-toric case", "larger and larger kernels kappa_n"),
            SimReplay(SimKind::MixedReduction { ell: 5, d: 2, steps: 3 }),
        ),
        step(
            "sim-toric-case",
            cite("N=6 toric case", "There is an equality of Galois modules: M(3) = mu_5^d"),
            SimReplay(SimKind::ToricCase { d_max: 3, randomized: 40 }),
        ),
        step(
            "weil-n6",
            cite("N=6 endgame", "since 5 > 1 + sqrt 7"),
            WeilCheck {
                ell: 5,
                k: 2,
                d_min: 1,
                q: 7,
                expect: true,
            },
        ),
    ]);
    ProofScript {
        case: "n6".into(),
        steps,
    }
}

/// Steps for `ℤ[1/10]`, `ℓ = 3`.
pub fn build_script_n10() -> ProofScript {
    use StepInput::*;
    let steps = vec![
        step(
            "fontaine-exponent-n10",
            cite(
                "N=10 root-discriminant bound",
                "3^{1 + 1/(3-1)} 2^{1 - 1/3} 5^{1 - 1/3} = 3^{3/2} 10^{2/3}",
            ),
            RamExponent(RamOp::FontaineProduct {
                ell: 3,
                tame: vec![2, 5],
                expect: "3^3/2 * 10^2/3".into(),
            }),
        ),
        step(
            "fontaine-n10",
            cite(
                "N=10 root-discriminant bound",
                "3^{3/2} 10^{2/3} = 24.118 < 24.258",
            ),
            CompareBound {
                lhs: lit("3^3/2 * 10^2/3"),
                rhs: Operand::Odlyzko(280),
                expect: Expect::Less,
                approx: Some("24.118".into()),
            },
        ),
        step(
            "fontaine-n10-degree",
            cite("N=10 degree bound", "[L:Q] < 280, and so [L:K] < 16"),
            DegreeBound {
                delta: lit("3^3/2 * 10^2/3"),
                expect_less_than: 280,
                over_degree: Some(18),
            },
        ),
        step(
            "root-disc-k10",
            cite("N=10 base field", "delta_K = 3^{7/6} 10^{2/3}"),
            RamExponent(RamOp::RootDiscFromLocal {
                field: K10.into(),
                expect: "3^7/6 * 10^2/3".into(),
            }),
        ),
        step(
            "unramified-outside-3",
            cite(
                "N=10 base field",
                "L/K is at most ramified at primes above 3",
            ),
            RamExponent(RamOp::LocalExponentsEqual {
                a: Operand::FieldRootDisc(K10.into()),
                b: lit("3^3/2 * 10^2/3"),
                primes: vec![2, 5],
            }),
        ),
        step(
            "splitting-2",
            cite(
                "N=10 splitting",
                "The primes 2 and 5 split into exactly 3 distinct primes in H",
            ),
            RayClassFact(CftQuery::Splitting {
                k: K10.into(),
                h: H10.into(),
                prime: 2,
                expect: 3,
            }),
        ),
        step(
            "splitting-5",
            cite(
                "N=10 splitting",
                "The primes 2 and 5 split into exactly 3 distinct primes in H",
            ),
            RayClassFact(CftQuery::Splitting {
                k: K10.into(),
                h: H10.into(),
                prime: 5,
                expect: 3,
            }),
        ),
        step(
            "sim-t2-equals-t5",
            cite(
                "N=10 toric ranks",
                "t_p <= t_{p'}, and by symmetry, t_2 = t_5",
            ),
            SimReplay(SimKind::TwoPrimeToric {
                d_max: 3,
                randomized: 40,
            }),
        ),
        step(
            "sim-unipotent-pair",
            cite(
                "N=10 unipotent pair",
                "rho(tau) = (Id_t a; 0 Id_t) ... then a = 0",
            ),
            SimReplay(SimKind::UnipotentPair { t_max: 2 }),
        ),
        step(
            "gl2-sublemma",
            cite(
                "N=10 GL_2 sublemma",
                "the group generated by sigma and tau has order dividing 27",
            ),
            GroupFact(GroupQuery::NilpotentPair {
                q: 3,
                k_max: 3,
                bound: 27,
            }),
        ),
        step(
            "kronecker-weber-n10",
            cite(
                "N=10 multiplicative case",
                "unramified outside 2 and 5. This follows from the Kronecker-Weber theorem",
            ),
            KwFact {
                ell: 3,
                primes: vec![2, 5],
                expect: false,
            },
        ),
        step(
            "tame-transitivity-n10",
            cite("N=10 tame case", "3^{7/6} 10^{2/3} 3^{3/18}"),
            RamExponent(RamOp::Identity {
                terms: vec![term("3^7/6 * 10^2/3", "1"), term("3^3", "1/18")],
                expect: "3^4/3 * 10^2/3".into(),
            }),
        ),
        step(
            "tame-n10",
            cite(
                "N=10 tame case",
                "3^{7/6} 10^{2/3} 3^{3/18} = 20.082 ... delta_L > 20.221",
            ),
            CompareBound {
                lhs: lit("3^4/3 * 10^2/3"),
                rhs: Operand::Odlyzko(126),
                expect: Expect::Less,
                approx: Some("20.082".into()),
            },
        ),
        step(
            "tame-n10-degree",
            cite("N=10 tame case", "[L:K] <= 6"),
            DegreeBound {
                delta: lit("3^4/3 * 10^2/3"),
                expect_less_than: 126,
                over_degree: Some(18),
            },
        ),
        step(
            "class-number-k10",
            cite("N=10 tame case", "the class number of K is 3"),
            RayClassFact(CftQuery::ClassNumber {
                field: K10.into(),
                expect: 3,
            }),
        ),
        step(
            "unit-generation-f",
            cite(
                "N=10 tame case",
                "(-1,-1,-1), (1,1,-1) and (1,-1,1) ... generate the group (F_3^*)^3",
            ),
            RayClassFact(CftQuery::UnitGeneration { field: F10.into() }),
        ),
        step(
            "wild-order-15",
            cite("N=10 wild case", "All groups of order 15 are abelian"),
            GroupFact(GroupQuery::AllAbelian { order: 15 }),
        ),
        step(
            "wild-order-6",
            cite(
                "N=10 wild case",
                "the only non-abelian group is S_3. Yet S_3^ab = Z/2",
            ),
            GroupFact(GroupQuery::NonabelianAbelianizationNotPrimeGroup { order: 6, prime: 3 }),
        ),
        step(
            "a4-unique",
            cite(
                "N=10 wild case",
                "The only group of order 12 such that Gamma^ab = Z/3 is the alternating group A_4",
            ),
            GroupFact(GroupQuery::UniqueByAbelianization {
                order: 12,
                abelianization: vec![3],
                expect_name: "A4".into(),
            }),
        ),
        step(
            "a4-kernel",
            cite(
                "N=10 wild case",
                "a nontrivial extension of Z/3 by Z/2 x Z/2",
            ),
            GroupFact(GroupQuery::ExtensionOf {
                order: 12,
                name: "A4".into(),
                kernel: vec![2, 2],
                quotient: vec![3],
            }),
        ),
        step(
            "wild-e6",
            cite(
                "N=10 wild case",
                "Gamma_0 must be a normal subgroup of Gamma since it is a subgroup of index 2",
            ),
            GroupFact(GroupQuery::NoNormalSubgroups {
                order: 12,
                name: "A4".into(),
                orders: vec![6],
            }),
        ),
        step(
            "wild-e12",
            cite(
                "N=10 wild case",
                "the 3-group Gamma_1 would be a normal subgroup of Gamma_0 = Gamma",
            ),
            GroupFact(GroupQuery::NoNormalSubgroups {
                order: 12,
                name: "A4".into(),
                orders: vec![3],
            }),
        ),
        step(
            "wild-lower-transitivity",
            cite("N=10 wild case", "3^{7/6} 10^{2/3} 3^{63/216}"),
            RamExponent(RamOp::Identity {
                terms: vec![term("3^7/6 * 10^2/3", "1"), term("3^63", "1/216")],
                expect: "3^35/24 * 10^2/3".into(),
            }),
        ),
        step(
            "wild-lower-n10",
            cite(
                "N=10 wild case",
                "3^{7/6} 10^{2/3} 3^{63/216} = 23.039 < 23.089",
            ),
            CompareBound {
                lhs: lit("3^35/24 * 10^2/3"),
                rhs: Operand::Odlyzko(216),
                expect: Expect::Less,
                approx: Some("23.039".into()),
            },
        ),
        step(
            "wild-lower-degree",
            cite(
                "N=10 wild case",
                "[L:Q] = 12 x 18 = 216 ... delta_L > 23.089",
            ),
            DegreeBound {
                delta: lit("3^35/24 * 10^2/3"),
                expect_less_than: 216,
                over_degree: Some(18),
            },
        ),
        step(
            "wild-upper-n10",
            cite(
                "N=10 wild case",
                "3^{7/6} 10^{2/3} 3^{72/216} = 3^{3/2} 10^{2/3}",
            ),
            RamExponent(RamOp::Identity {
                terms: vec![term("3^7/6 * 10^2/3", "1"), term("3^72", "1/216")],
                expect: "3^3/2 * 10^2/3".into(),
            }),
        ),
        step(
            "wild-e3",
            cite(
                "N=10 wild case",
                "If e = 3, then fr = 4. Yet fr divides 23 or 22, which is impossible",
            ),
            RamExponent(RamOp::FrvWindow {
                degree: 12,
                e: 3,
                lo: 22,
                hi: 23,
                expect: false,
            }),
        ),
        step(
            "conductor-z9",
            cite("N=10 conductor", "3^{7/6} 3^{54/162} = 3^{3/2}"),
            RamExponent(RamOp::Identity {
                terms: vec![term("3^7/6", "1"), term("3^54", "1/162")],
                expect: "3^3/2".into(),
            }),
        ),
        step(
            "conductor-z9-characters",
            cite(
                "N=10 conductor",
                "Z/9 has six faithful characters ... (f_{L/K})^6 | Delta_{L/K}",
            ),
            RamExponent(RamOp::CyclicConductorDiscriminant {
                order: 9,
                symbol: "pi_K".into(),
                count: 3,
                conductor_exp: 3,
                expect_disc_exp: 18,
            }),
        ),
        step(
            "conductor-bicyclic",
            cite("N=10 conductor", "(f_{L/K})^2 | prod_{i=1}^4 f(chi_i)"),
            RamExponent(RamOp::PairwiseLcmSquare {
                characters: 4,
                max_exp: 4,
            }),
        ),
        step(
            "conductor-z3",
            cite("N=10 conductor", "3^{7/6} 3^{18/54} = 3^{3/2}"),
            RamExponent(RamOp::Identity {
                terms: vec![term("3^7/6", "1"), term("3^18", "1/54")],
                expect: "3^3/2".into(),
            }),
        ),
        step(
            "rayclass-k10",
            cite(
                "ray class table",
                "Q(zeta_3, 2^{1/3}, 5^{1/3}), f = (pi_1 pi_2 pi_3)^2: 3",
            ),
            RayClassFact(CftQuery::RayClassNumber {
                field: K10.into(),
                conductor_exp: 2,
                expect: 3,
            }),
        ),
        step(
            "sim-generated-finite-part-n10",
            cite("N=10 reduction at 3", "ord_3(Phi(p)) maximal"),
            SimReplay(SimKind::GeneratedFinitePart {
                ell: 3,
                d: 2,
                randomized: 20,
            }),
        ),
        step(
            "weil-n10",
            cite(
                "N=10 endgame",
                "3^{4d} <= (1 + sqrt 3)^{4d} is not true for d > 0",
            ),
            WeilCheck {
                ell: 3,
                k: 2,
                d_min: 1,
                q: 3,
                expect: true,
            },
        ),
    ];
    ProofScript {
        case: "n10".into(),
        steps,
    }
}

pub fn builtin_script(case: &str) -> Option<ProofScript> {
    match case {
        "n6" => Some(build_script_n6()),
        "n10" => Some(build_script_n10()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scripts_have_citations_and_unique_ids() {
        for s in [build_script_n6(), build_script_n10()] {
            assert!(s.steps.len() >= 25, "{}: {}", s.case, s.steps.len());
            let ids: BTreeSet<_> = s.steps.iter().map(|x| &x.id).collect();
            assert_eq!(ids.len(), s.steps.len());
            assert!(s.steps.iter().all(|x| !x.citation.is_empty()));
        }
    }

    #[test]
    fn script_json_round_trip() {
        for s in [build_script_n6(), build_script_n10()] {
            let json = serde_json::to_string(&s).unwrap();
            let back: ProofScript = serde_json::from_str(&json).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn n10_passes_on_shipped_data() {
        let report = run(&build_script_n10(), &RunContext::shipped()).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert!(report.passed());
    }

    #[test]
    fn n6_fails_only_on_order_125_count() {
        let report = run(&build_script_n6(), &RunContext::shipped()).unwrap();
        let failed: Vec<&str> = report.failures().map(|s| s.id.as_str()).collect();
        assert_eq!(failed, vec!["order125-surjectors"]);
    }

    #[test]
    fn trusted_input_exactly_on_certified_steps() {
        let ctx = RunContext::shipped();
        for s in [build_script_n6(), build_script_n10()] {
            let report = run(&s, &ctx).unwrap();
            for (st, r) in s.steps.iter().zip(&report.steps) {
                let certified = matches!(st.input, StepInput::RayClassFact(_));
                assert_eq!(certified, r.status == Status::TrustedInput, "{}", st.id);
            }
        }
    }

    #[test]
    fn tampered_table_row_fails_degree_step() {
        let mut ctx = RunContext::shipped();
        let mut rows = ctx.odlyzko.rows().to_vec();
        rows.last_mut().unwrap().1 = parse_rational("31.0").unwrap();
        ctx.odlyzko = OdlyzkoTable::from_rows(rows).unwrap();
        let report = run(&build_script_n6(), &ctx).unwrap();
        let failed: Vec<&str> = report.failures().map(|s| s.id.as_str()).collect();
        assert!(failed.contains(&"fontaine-n6-degree"));
        assert!(failed.contains(&"fontaine-n6"));
    }

    #[test]
    fn unresolved_reference_is_config_error() {
        let mut ctx = RunContext::shipped();
        ctx.data.rayclass.clear();
        assert!(matches!(
            run(&build_script_n6(), &ctx),
            Err(ConfigError::Unresolved { .. })
        ));
        let mut s = build_script_n10();
        s.steps.push(s.steps[0].clone());
        assert!(matches!(
            run(&s, &RunContext::shipped()),
            Err(ConfigError::DuplicateId(_))
        ));
    }

    #[test]
    fn reports_are_deterministic() {
        let ctx = RunContext::shipped();
        let a = run(&build_script_n10(), &ctx).unwrap().to_json();
        let b = run(&build_script_n10(), &ctx).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn pairwise_lcm_law() {
        assert!(pairwise_lcm_square(4, 4));
        assert!(!pairwise_lcm_square(2, 3));
    }
}
