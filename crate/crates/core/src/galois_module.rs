//! A mod-`ℓ` model of `A[ℓ]`: an `𝔽_ℓ` space of dimension `2d` with toric and
//! finite flags `M_t(p) ⊆ M_f(p)` and unipotent inertia at each bad prime.
//!
//! The replays check the dimension-counting deductions on explicit instances.
//! Maximality of component groups, which quantifies over an isogeny class, is
//! modelled by hypotheses whose consequences are checked.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factored_real::primes;
use crate::groups::matrix::{closure_within, Closure};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("prime {prime}: {reason}")]
    Invariant { prime: u64, reason: String },
    #[error("{0}")]
    Shape(String),
    #[error("no data for prime {0}")]
    MissingPrime(u64),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("{0}")]
    Precondition(String),
}

/// Local data at one bad prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPrime {
    pub mt: Subspace,
    pub mf: Subspace,
    /// A generator of inertia.
    pub sigma: Matrix,
    /// Generators of the decomposition group.
    pub decomposition_gens: Vec<Matrix>,
    /// Effective stage of inertia `i(A, ℓ, p)`.
    pub stage: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisModuleInstance {
    ell: u64,
    d: usize,
    primes: BTreeMap<u64, BadPrime>,
    /// Generators of the global Galois image.
    galois_gens: Vec<Matrix>,
}

impl GaloisModuleInstance {
    /// Validates every type invariant.
    pub fn new(
        ell: u64,
        d: usize,
        primes_data: BTreeMap<u64, BadPrime>,
        galois_gens: Vec<Matrix>,
    ) -> Result<Self, SimError> {
        if !primes::is_prime(ell) {
            return Err(SimError::Shape(format!("{ell} is not prime")));
        }
        if d == 0 {
            return Err(SimError::Shape("d must be positive".into()));
        }
        let n = 2 * d;
        let shape_ok = |m: &Matrix| m.ell == ell && m.rows == n && m.cols == n && m.is_invertible();
        if !galois_gens.iter().all(shape_ok) {
            return Err(SimError::Shape(
                "Galois generators must be invertible 2d x 2d matrices".into(),
            ));
        }
        for (&p, bp) in &primes_data {
            let bad = |reason: &str| SimError::Invariant {
                prime: p,
                reason: reason.into(),
            };
            if bp.mt.ell != ell || bp.mt.ambient != n || bp.mf.ell != ell || bp.mf.ambient != n {
                return Err(bad("flag lives in the wrong space"));
            }
            if !shape_ok(&bp.sigma) || !bp.decomposition_gens.iter().all(shape_ok) {
                return Err(bad("operators must be invertible 2d x 2d matrices"));
            }
            if !bp.mf.contains(&bp.mt) {
                return Err(bad("M_t is not contained in M_f"));
            }
            if bp.mt.dim() + bp.mf.dim() != n {
                return Err(bad("t_p + a_p != d"));
            }
            let nil = bp.sigma.minus_identity();
            if !nil.mul(&nil).is_zero() {
                return Err(bad("(sigma - 1)^2 != 0"));
            }
            if !bp.mt.contains(&nil.image()) {
                return Err(bad("image(sigma - 1) is not contained in M_t"));
            }
            if !bp.mf.is_fixed_by(&bp.sigma) {
                return Err(bad("sigma does not fix M_f pointwise"));
            }
            if bp.stage == 0 {
                return Err(bad("stage of inertia must be positive"));
            }
        }
        Ok(GaloisModuleInstance {
            ell,
            d,
            primes: primes_data,
            galois_gens,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        2 * self.d
    }

    pub fn bad_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.keys().copied()
    }

    pub fn at(&self, p: u64) -> Result<&BadPrime, SimError> {
        self.primes.get(&p).ok_or(SimError::MissingPrime(p))
    }

    /// `t_p = dim M_t(p)`.
    pub fn t(&self, p: u64) -> Result<usize, SimError> {
        Ok(self.at(p)?.mt.dim())
    }

    /// `a_p = dim M_f(p) - d`.
    pub fn a(&self, p: u64) -> Result<usize, SimError> {
        Ok(self.at(p)?.mf.dim() - self.d)
    }

    pub fn stage(&self, p: u64) -> Result<u32, SimError> {
        Ok(self.at(p)?.stage)
    }

    /// Every generator of the global Galois image, including local ones.
    pub fn all_generators(&self) -> Vec<Matrix> {
        let mut gens = self.galois_gens.clone();
        for bp in self.primes.values() {
            gens.push(bp.sigma.clone());
            gens.extend(bp.decomposition_gens.iter().cloned());
        }
        gens
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.ell, self.dim())
    }

    /// `dim(κ ∩ M_t) + dim(κ ∩ M_f) - dim κ`, the change in `ord_ℓ` of the
    /// dual component group at `p` under the isogeny with kernel `κ`.
    pub fn component_delta(&self, p: u64, kappa: &Subspace) -> Result<i64, SimError> {
        let bp = self.at(p)?;
        self.check_subspace(kappa)?;
        Ok(
            kappa.intersection(&bp.mt).dim() as i64 + kappa.intersection(&bp.mf).dim() as i64
                - kappa.dim() as i64,
        )
    }

    /// Increments the stage at `p` iff `M_t ⊆ κ ⊆ M_f`.
    pub fn apply_stage_rule(&mut self, p: u64, kappa: &Subspace) -> Result<bool, SimError> {
        self.check_subspace(kappa)?;
        let bp = self.primes.get_mut(&p).ok_or(SimError::MissingPrime(p))?;
        let fires = kappa.contains(&bp.mt) && bp.mf.contains(kappa);
        if fires {
            bp.stage += 1;
        }
        Ok(fires)
    }

    /// Records the effect of the isogeny with kernel `κ` at `p`.
    pub fn isogeny_step(&mut self, p: u64, kappa: &Subspace) -> Result<IsogenyStep, SimError> {
        let delta_ord = self.component_delta(p, kappa)?;
        let stage_incremented = self.apply_stage_rule(p, kappa)?;
        Ok(IsogenyStep {
            kernel: kappa.clone(),
            delta_ord,
            stage_incremented,
        })
    }

    fn check_subspace(&self, s: &Subspace) -> Result<(), SimError> {
        if s.ell != self.ell || s.ambient != self.dim() {
            return Err(SimError::Shape("subspace lives in the wrong space".into()));
        }
        Ok(())
    }

    pub fn to_spec(&self) -> InstanceSpec {
        InstanceSpec {
            ell: self.ell,
            d: self.d,
            primes: self
                .primes
                .iter()
                .map(|(&prime, bp)| PrimeSpec {
                    prime,
                    mt: bp.mt.basis().to_vec(),
                    mf: bp.mf.basis().to_vec(),
                    sigma: bp.sigma.to_rows(),
                    decomposition_gens: bp.decomposition_gens.iter().map(Matrix::to_rows).collect(),
                    stage: bp.stage,
                })
                .collect(),
            galois_gens: self.galois_gens.iter().map(Matrix::to_rows).collect(),
        }
    }

    pub fn from_spec(spec: &InstanceSpec) -> Result<Self, SimError> {
        let n = 2 * spec.d;
        let ell = spec.ell;
        if !primes::is_prime(ell) {
            return Err(SimError::Shape(format!("{ell} is not prime")));
        }
        let matrix = |rows: &Vec<Vec<u64>>| -> Result<Matrix, SimError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(SimError::Shape(format!("matrices must be {n} x {n}")));
            }
            let signed: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| x as i64).collect())
                .collect();
            Ok(Matrix::from_rows(ell, &signed))
        };
        let space = |vecs: &Vec<Vec<u64>>| -> Result<Subspace, SimError> {
            if vecs.iter().any(|v| v.len() != n) {
                return Err(SimError::Shape(format!("vectors must have length {n}")));
            }
            let reduced = vecs
                .iter()
                .map(|v| v.iter().map(|x| x % ell).collect())
                .collect();
            Ok(Subspace::span(ell, n, reduced))
        };
        let mut data = BTreeMap::new();
        for ps in &spec.primes {
            let bp = BadPrime {
                mt: space(&ps.mt)?,
                mf: space(&ps.mf)?,
                sigma: matrix(&ps.sigma)?,
                decomposition_gens: ps
                    .decomposition_gens
                    .iter()
                    .map(&matrix)
                    .collect::<Result<_, _>>()?,
                stage: ps.stage,
            };
            if data.insert(ps.prime, bp).is_some() {
                return Err(SimError::Shape(format!("prime {} listed twice", ps.prime)));
            }
        }
        let gens = spec
            .galois_gens
            .iter()
            .map(&matrix)
            .collect::<Result<_, _>>()?;
        Self::new(ell, spec.d, data, gens)
    }
}

/// JSON form of an instance; matrices are row lists of integers mod `ℓ` and
/// subspaces are lists of spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub ell: u64,
    pub d: usize,
    pub primes: Vec<PrimeSpec>,
    #[serde(default)]
    pub galois_gens: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSpec {
    pub prime: u64,
    pub mt: Vec<Vec<u64>>,
    pub mf: Vec<Vec<u64>>,
    pub sigma: Vec<Vec<u64>>,
    #[serde(default)]
    pub decomposition_gens: Vec<Vec<Vec<u64>>>,
    #[serde(default = "one")]
    pub stage: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyStep {
    pub kernel: Subspace,
    pub delta_ord: i64,
    pub stage_incremented: bool,
}

/// Smallest subspace containing `m` and stable under every generator.
pub fn generate_submodule(m: &Subspace, gens: &[Matrix]) -> Result<Subspace, SimError> {
    if gens
        .iter()
        .any(|g| !g.is_invertible() || g.cols != m.ambient || g.ell != m.ell)
    {
        return Err(SimError::Precondition(
            "generators must be invertible on the ambient space".into(),
        ));
    }
    let mut current = m.clone();
    loop {
        let next = gens
            .iter()
            .fold(current.clone(), |acc, g| acc.sum(&current.image_under(g)));
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// `M + σM` together with the facts the dimension law refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hat {
    pub space: Subspace,
    /// `dim(M + σM) = 2 dim M`.
    pub doubled: bool,
    /// `M ∩ σM = 0`.
    pub meets_sigma_image_trivially: bool,
    /// `M ∩ (σ - 1)M = 0`.
    pub meets_nilpotent_image_trivially: bool,
}

pub fn hat_construction(m: &Subspace, sigma: &Matrix) -> Result<Hat, SimError> {
    let nil = sigma.minus_identity();
    if !nil.mul(&nil).is_zero() {
        return Err(SimError::Precondition("(sigma - 1)^2 != 0".into()));
    }
    let sm = m.image_under(sigma);
    let space = m.sum(&sm);
    debug_assert_eq!(space, m.sum(&m.image_under(&nil)));
    debug_assert!(space.dim() <= 2 * m.dim());
    Ok(Hat {
        doubled: space.dim() == 2 * m.dim(),
        meets_sigma_image_trivially: m.intersection(&sm).is_zero(),
        meets_nilpotent_image_trivially: m.intersection(&m.image_under(&nil)).is_zero(),
        space,
    })
}

/// A named yes/no fact established on an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

fn check(name: &str, holds: bool) -> Check {
    Check {
        name: name.into(),
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReplayOutcome {
    /// Hypotheses held; each conclusion is reported.
    Evaluated { conclusions: Vec<Check> },
    /// A hypothesis failed, so no conclusion was drawn.
    HypothesisFailure { failed: Vec<Check> },
}

impl ReplayOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, ReplayOutcome::Evaluated { conclusions } if conclusions.iter().all(|c| c.holds))
    }

    fn from_checks(hypotheses: Vec<Check>, conclusions: impl FnOnce() -> Vec<Check>) -> Self {
        let failed: Vec<Check> = hypotheses.into_iter().filter(|c| !c.holds).collect();
        if failed.is_empty() {
            ReplayOutcome::Evaluated {
                conclusions: conclusions(),
            }
        } else {
            ReplayOutcome::HypothesisFailure { failed }
        }
    }
}

/// Purely toric reduction at 2 and 3 with `ℓ = 5`: `w` plays `μ_5^d`, the
/// inertia generator at 3 acts on the whole space, and `M(2)` generates it.
/// Derives `M̂(3) = w` step by step.
pub fn replay_toric_case(
    inst: &GaloisModuleInstance,
    w: &Subspace,
) -> Result<ReplayOutcome, SimError> {
    let (m2, m3, sigma) = (inst.at(2)?, inst.at(3)?, &inst.at(3)?.sigma);
    let v = inst.full_space();
    let gens = inst.all_generators();
    let inertia3 = cyclic_closure(sigma)?;
    let hat_m2 = generate_submodule(&m2.mt, &gens)?;
    let hypotheses = vec![
        check("ell = 5", inst.ell() == 5),
        check("toric at 2", m2.mt == m2.mf),
        check("toric at 3", m3.mt == m3.mf),
        check("dim W = d", w.dim() == inst.d()),
        check(
            "W is Galois stable",
            gens.iter().all(|g| w.is_stable_under(g)),
        ),
        check(
            "Galois acts trivially on V/W",
            gens.iter().all(|g| w.contains(&g.minus_identity().image())),
        ),
        check("W is unramified at 3", w.is_fixed_by(sigma)),
        check(
            "inertia at 3 is normal",
            gens.iter().all(|g| {
                let gi = g.inverse().expect("invertible");
                inertia3.contains(&g.mul(sigma).mul(&gi))
            }),
        ),
        check("Galois module generated by M(2) is V", hat_m2 == v),
    ];
    Ok(ReplayOutcome::from_checks(hypotheses, || {
        let m = &m2.mt;
        let hat = hat_construction(m, sigma).expect("instance invariant");
        let fixed = sigma.minus_identity().kernel();
        let hat_m3 = generate_submodule(&m3.mt, &gens).expect("checked generators");
        vec![
            check("M(2) ∩ W = 0", m.intersection(w).is_zero()),
            check("V = W ⊕ M(2)", m.intersection(w).is_zero() && m.sum(w) == v),
            check("M̂(2) = M(2) + σM(2)", hat.space == hat_m2),
            check("σM(2) ∩ M(2) = 0", hat.meets_sigma_image_trivially),
            check("ker(σ - 1) ∩ M(2) = 0", fixed.intersection(m).is_zero()),
            check("ker(σ - 1) = W", fixed == *w),
            check("M̂(3) is fixed by inertia at 3", hat_m3.is_fixed_by(sigma)),
            check("M̂(3) ⊆ W", w.contains(&hat_m3)),
            check("M̂(3) = W", hat_m3 == *w),
        ]
    }))
}

fn cyclic_closure(sigma: &Matrix) -> Result<Vec<Matrix>, SimError> {
    match closure_within(
        Matrix::identity(sigma.ell, sigma.rows),
        std::slice::from_ref(sigma),
        |a, b| a.mul(b),
        10_000,
    ) {
        Closure::Complete(v) => Ok(v),
        Closure::Exceeded { limit } => Err(SimError::CapExceeded(limit)),
    }
}

/// The pair of primes `(2, 5)` at `ℓ = 3` with the maximality consequence
/// `dim M̂_t(p) = 2 t_p` (hat taken with the inertia generator at the other
/// prime) verified at construction.
#[derive(Clone, Debug)]
pub struct TwoPrimeToricInstance {
    inst: GaloisModuleInstance,
}

impl TwoPrimeToricInstance {
    pub fn new(inst: GaloisModuleInstance) -> Result<Self, SimError> {
        if inst.ell() != 3 {
            return Err(SimError::Hypothesis("ell must be 3".into()));
        }
        for (p, q) in [(2, 5), (5, 2)] {
            let mt = &inst.at(p)?.mt;
            let hat = hat_construction(mt, &inst.at(q)?.sigma)?;
            if !hat.doubled {
                return Err(SimError::Hypothesis(format!(
                    "dim M̂_t({p}) = {} but maximality forces 2 t_{p} = {}",
                    hat.space.dim(),
                    2 * mt.dim()
                )));
            }
        }
        Ok(TwoPrimeToricInstance { inst })
    }

    pub fn instance(&self) -> &GaloisModuleInstance {
        &self.inst
    }
}

/// `t_p ≤ t_{p'}` for both orderings, hence `t_2 = t_5`.
pub fn replay_t2_equals_t5(x: &TwoPrimeToricInstance) -> Result<ReplayOutcome, SimError> {
    let inst = &x.inst;
    let mut conclusions = Vec::new();
    for (p, q) in [(2u64, 5u64), (5, 2)] {
        let (tp, tq) = (inst.t(p)?, inst.t(q)?);
        let nil = inst.at(q)?.sigma.minus_identity();
        let image_v = nil.image();
        let image_mt = inst.at(p)?.mt.image_under(&nil);
        conclusions.push(check(
            &format!("dim (σ_{q} - 1)M_t({p}) = t_{p}"),
            image_mt.dim() == tp,
        ));
        conclusions.push(check(
            &format!("dim (σ_{q} - 1)V <= t_{q}"),
            image_v.dim() <= tq,
        ));
        conclusions.push(check(&format!("t_{p} <= t_{q}"), tp <= tq));
    }
    conclusions.push(check("t_2 = t_5", inst.t(2)? == inst.t(5)?));
    Ok(ReplayOutcome::Evaluated { conclusions })
}

/// Whether `a = 0` is the only `t×t` block over `𝔽_3` for which
/// `⟨[[I, 0], [I, I]], [[I, a], [0, I]]⟩` has order dividing 27.
pub fn unipotent_pair_constraint(t: usize) -> Result<bool, SimError> {
    if t == 0 || t > 3 {
        return Err(SimError::Precondition("t must be between 1 and 3".into()));
    }
    let q = 3u64;
    let id = Matrix::identity(q, t);
    let zero = Matrix::zero(q, t, t);
    let sigma = Matrix::block(&id, &zero, &id, &id);
    for code in 0..q.pow((t * t) as u32) {
        let mut a = Matrix::zero(q, t, t);
        let mut c = code;
        for i in 0..t {
            for j in 0..t {
                a.set(i, j, c % q);
                c /= q;
            }
        }
        let tau = Matrix::block(&id, &a, &zero, &id);
        let order = unipotent_pair_order(&sigma, &tau, 27);
        let divides = matches!(order, Some(n) if 27 % n == 0);
        if divides && !a.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order of `⟨σ, τ⟩` when at most `limit`.
pub fn unipotent_pair_order(sigma: &Matrix, tau: &Matrix, limit: usize) -> Option<usize> {
    let id = Matrix::identity(sigma.ell, sigma.rows);
    match closure_within(id, &[sigma.clone(), tau.clone()], |a, b| a.mul(b), limit) {
        Closure::Complete(v) => Some(v.len()),
        Closure::Exceeded { .. } => None,
    }
}

/// Whether `ℓ^{2kd} ≤ (1 + √q)^{2kd}` is impossible for every `d ≥ d_min`,
/// decided exactly as `(ℓ - 1)^2 > q`.
pub fn weil_contradiction(ell: u64, k: u32, d_min: u64, q: u64) -> Result<bool, SimError> {
    if !primes::is_prime(ell) || !primes::is_prime(q) || k == 0 || d_min == 0 {
        return Err(SimError::Precondition(
            "need primes ell, q and positive k, d_min".into(),
        ));
    }
    // ℓ > 1 + √q ⟺ (ℓ - 1)^2 > q, and then every positive power keeps the order.
    Ok((ell - 1) * (ell - 1) > q)
}

/// Mixed reduction at `p`: `κ = M_f(p) ∩ W` is nonzero and the isogeny by it
/// keeps `ord_ℓ Φ` maximal.
pub fn replay_mixed_case(
    inst: &GaloisModuleInstance,
    p: u64,
    w: &Subspace,
) -> Result<ReplayOutcome, SimError> {
    let bp = inst.at(p)?;
    let gens = inst.all_generators();
    let scalar_on_w = |g: &Matrix| {
        (1..inst.ell()).any(|c| {
            w.basis()
                .iter()
                .all(|v| g.apply(v) == v.iter().map(|x| x * c % inst.ell()).collect::<Vec<_>>())
        })
    };
    let hypotheses = vec![
        check("a_p > 0", inst.a(p)? > 0),
        check("dim W = d", w.dim() == inst.d()),
        check("Galois acts on W by scalars", gens.iter().all(scalar_on_w)),
    ];
    Ok(ReplayOutcome::from_checks(hypotheses, || {
        let kappa = bp.mf.intersection(w);
        let delta = inst.component_delta(p, &kappa).expect("same space");
        vec![
            check("κ = M_f(p) ∩ W is nonzero", !kappa.is_zero()),
            check(
                "κ is Galois stable",
                gens.iter().all(|g| kappa.is_stable_under(g)),
            ),
            check(
                "κ ⊆ M_f(p), so the last two terms cancel",
                delta == kappa.intersection(&bp.mt).dim() as i64,
            ),
            check("ord_ℓ Φ does not decrease", delta >= 0),
        ]
    }))
}

/// `M̂_f(p)` contains `M_f(p) ⊇ M_t(p)`, so the component change is
/// `2d - dim κ ≥ 0`, and maximality forces `κ = V`.
pub fn replay_generated_finite_part(
    inst: &GaloisModuleInstance,
    p: u64,
) -> Result<ReplayOutcome, SimError> {
    let bp = inst.at(p)?;
    let kappa = generate_submodule(&bp.mf, &inst.all_generators())?;
    let delta = inst.component_delta(p, &kappa)?;
    let n = inst.dim() as i64;
    Ok(ReplayOutcome::Evaluated {
        conclusions: vec![
            check(
                "M_t(p) ⊆ M_f(p) ⊆ κ",
                kappa.contains(&bp.mf) && bp.mf.contains(&bp.mt),
            ),
            check("delta = 2d - dim κ", delta == n - kappa.dim() as i64),
            check("delta >= 0", delta >= 0),
            check(
                "maximality forces κ = V",
                delta > 0 || kappa.dim() as i64 == n,
            ),
        ],
    })
}

/// Random invertible matrix.
pub fn random_invertible(rng: &mut impl Rng, ell: u64, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, ell, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_matrix(rng: &mut impl Rng, ell: u64, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zero(ell, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_range(0..ell));
        }
    }
    m
}

/// A random valid instance: for each prime, flags of random dimensions in a
/// standard basis, `σ = I + N` with `N V ⊆ M_t` and `N M_f = 0`, all
/// conjugated by a random change of basis.
pub fn random_instance(seed: u64, ell: u64, d: usize, bad: &[u64]) -> GaloisModuleInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * d;
    let mut data = BTreeMap::new();
    for &p in bad {
        let t = rng.gen_range(0..=d);
        let f = n - t;
        let mut nil = Matrix::zero(ell, n, n);
        for i in 0..t {
            for j in f..n {
                nil.set(i, j, rng.gen_range(0..ell));
            }
        }
        let sigma = Matrix::identity(ell, n).add(&nil);
        let basis = random_invertible(&mut rng, ell, n);
        let to_space =
            |idx: std::ops::Range<usize>| Subspace::coordinate(ell, n, idx).image_under(&basis);
        data.insert(
            p,
            BadPrime {
                mt: to_space(0..t),
                mf: to_space(0..f),
                sigma: sigma.conjugate_by(&basis),
                decomposition_gens: vec![],
                stage: 1,
            },
        );
    }
    GaloisModuleInstance::new(ell, d, data, vec![])
        .expect("random construction satisfies the invariants")
}

/// Instance for [`replay_toric_case`] together with its `W`. In the adapted
/// basis `W ⊕ M(2)`: `σ_3 = [[I, B], [0, I]]` with `B` invertible, `σ_2 = I`,
/// `M(3) = W`, and Galois generators `[[cI, E], [0, I]]`.
pub fn toric_instance(seed: Option<u64>, d: usize) -> (GaloisModuleInstance, Subspace) {
    let ell = 5u64;
    let n = 2 * d;
    let id = Matrix::identity(ell, d);
    let zero = Matrix::zero(ell, d, d);
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let (b, gal, basis) = match rng.as_mut() {
        None => (id.clone(), vec![], Matrix::identity(ell, n)),
        Some(r) => {
            let b = random_invertible(r, ell, d);
            let c = r.gen_range(1..ell);
            let mut ci = Matrix::zero(ell, d, d);
            for i in 0..d {
                ci.set(i, i, c);
            }
            let e = random_matrix(r, ell, d, d);
            let gal = vec![Matrix::block(&ci, &e, &zero, &id)];
            (b, gal, random_invertible(r, ell, n))
        }
    };
    let sigma3 = Matrix::block(&id, &b, &zero, &id);
    let w = Subspace::coordinate(ell, n, 0..d);
    let m = Subspace::coordinate(ell, n, d..n);
    let mut frob2 = Matrix::zero(ell, d, d);
    for i in 0..d {
        frob2.set(i, i, 2);
    }
    let d2 = Matrix::block(&frob2, &zero, &zero, &id);
    let conj = |x: &Matrix| x.conjugate_by(&basis);
    let data = BTreeMap::from([
        (
            2,
            BadPrime {
                mt: m.image_under(&basis),
                mf: m.image_under(&basis),
                sigma: Matrix::identity(ell, n),
                decomposition_gens: vec![conj(&d2)],
                stage: 1,
            },
        ),
        (
            3,
            BadPrime {
                mt: w.image_under(&basis),
                mf: w.image_under(&basis),
                sigma: conj(&sigma3),
                decomposition_gens: vec![],
                stage: 1,
            },
        ),
    ]);
    let inst = GaloisModuleInstance::new(ell, d, data, gal.iter().map(conj).collect())
        .expect("toric construction satisfies the invariants");
    (inst, w.image_under(&basis))
}

/// Instance for [`replay_t2_equals_t5`] with `t_2 = t_5 = t`: in the basis
/// `e_1..e_t, f_1..f_t, g_1..g_{2(d-t)}`, `M_t(2) = ⟨e⟩`, `M_t(5) = ⟨f⟩`,
/// `σ_5 e_i = e_i + f_i`, `σ_2 f_i = f_i + e_i`.
pub fn two_prime_instance(
    seed: Option<u64>,
    d: usize,
    t: usize,
) -> Result<TwoPrimeToricInstance, SimError> {
    if t > d {
        return Err(SimError::Precondition("t must be at most d".into()));
    }
    let ell = 3u64;
    let n = 2 * d;
    let e = 0..t;
    let f = t..2 * t;
    let rest = 2 * t..n;
    let mut n5 = Matrix::zero(ell, n, n);
    let mut n2 = Matrix::zero(ell, n, n);
    for i in 0..t {
        n5.set(t + i, i, 1);
        n2.set(i, t + i, 1);
    }
    let sigma5 = Matrix::identity(ell, n).add(&n5);
    let sigma2 = Matrix::identity(ell, n).add(&n2);
    let basis = match seed {
        None => Matrix::identity(ell, n),
        Some(s) => random_invertible(&mut ChaCha8Rng::seed_from_u64(s), ell, n),
    };
    let space = |idx: Vec<usize>| Subspace::coordinate(ell, n, idx).image_under(&basis);
    let mf2: Vec<usize> = e.clone().chain(rest.clone()).collect();
    let mf5: Vec<usize> = f.clone().chain(rest).collect();
    let data = BTreeMap::from([
        (
            2,
            BadPrime {
                mt: space(e.collect()),
                mf: space(mf2),
                sigma: sigma2.conjugate_by(&basis),
                decomposition_gens: vec![],
                stage: 1,
            },
        ),
        (
            5,
            BadPrime {
                mt: space(f.collect()),
                mf: space(mf5),
                sigma: sigma5.conjugate_by(&basis),
                decomposition_gens: vec![],
                stage: 1,
            },
        ),
    ]);
    TwoPrimeToricInstance::new(GaloisModuleInstance::new(ell, d, data, vec![])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::all_subspaces;

    #[test]
    fn component_delta_examples() {
        let (inst, w) = toric_instance(None, 2);
        let zero = Subspace::zero(5, 4);
        assert_eq!(inst.component_delta(3, &zero).unwrap(), 0);
        assert_eq!(inst.component_delta(3, &inst.full_space()).unwrap(), 0);
        assert_eq!(inst.component_delta(3, &w).unwrap(), 2);
        assert!(inst.component_delta(7, &zero).is_err());
    }

    #[test]
    fn stage_rule_examples() {
        let (mut inst, _) = toric_instance(None, 2);
        let mt = inst.at(2).unwrap().mt.clone();
        assert!(inst.apply_stage_rule(2, &mt).unwrap());
        assert_eq!(inst.stage(2).unwrap(), 2);
        assert!(!inst.apply_stage_rule(2, &inst.full_space()).unwrap());
        let mut mixed = random_instance(3, 5, 2, &[2]);
        let bp = mixed.at(2).unwrap().clone();
        if !bp.mt.is_zero() {
            assert!(!mixed.apply_stage_rule(2, &Subspace::zero(5, 4)).unwrap());
        }
        let step = mixed.isogeny_step(2, &bp.mt).unwrap();
        assert!(step.stage_incremented);
        assert_eq!(step.delta_ord, bp.mt.dim() as i64);
    }

    #[test]
    fn invariant_violations_are_reported() {
        let (inst, _) = toric_instance(None, 1);
        let mut spec = inst.to_spec();
        spec.primes[1].sigma = vec![vec![1, 1], vec![1, 1]];
        assert!(GaloisModuleInstance::from_spec(&spec).is_err());
        let mut spec = inst.to_spec();
        spec.primes[1].sigma = vec![vec![2, 0], vec![0, 1]];
        assert!(matches!(
            GaloisModuleInstance::from_spec(&spec),
            Err(SimError::Invariant { prime: 3, .. })
        ));
        let mut spec = inst.to_spec();
        spec.primes[0].mt = vec![vec![1, 0]];
        assert!(matches!(
            GaloisModuleInstance::from_spec(&spec),
            Err(SimError::Invariant { prime: 2, .. })
        ));
    }

    #[test]
    fn spec_round_trip() {
        let (inst, _) = toric_instance(Some(9), 2);
        let json = serde_json::to_string(&inst.to_spec()).unwrap();
        let back: InstanceSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(GaloisModuleInstance::from_spec(&back).unwrap(), inst);
    }

    #[test]
    fn submodule_generation() {
        let sigma = Matrix::from_rows(5, &[vec![1, 1], vec![0, 1]]);
        let line = Subspace::span(5, 2, vec![vec![0, 1]]);
        let out = generate_submodule(&line, std::slice::from_ref(&sigma)).unwrap();
        assert_eq!(out, line.sum(&line.image_under(&sigma.minus_identity())));
        let fixed = Subspace::span(5, 2, vec![vec![1, 0]]);
        assert_eq!(generate_submodule(&fixed, &[sigma]).unwrap(), fixed);
        let sing = Matrix::from_rows(5, &[vec![1, 0], vec![0, 0]]);
        assert!(generate_submodule(&fixed, &[sing]).is_err());
    }

    #[test]
    fn hat_examples() {
        let m = Subspace::coordinate(5, 4, [2, 3]);
        let hat = hat_construction(&m, &Matrix::identity(5, 4)).unwrap();
        assert_eq!(hat.space, m);
        let (inst, _) = toric_instance(None, 2);
        let hat = hat_construction(&inst.at(2).unwrap().mt, &inst.at(3).unwrap().sigma).unwrap();
        assert!(hat.doubled && hat.space.dim() == 4);
        let bad = Matrix::from_rows(5, &[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        assert!(hat_construction(&Subspace::zero(5, 3), &bad).is_err());
    }

    #[test]
    fn hat_law_with_identity_shows_nilpotent_intersection_is_not_enough() {
        // σ = I: M ∩ (σ - 1)M = 0 for every M, yet M + σM = M.
        let m = Subspace::coordinate(3, 2, [0]);
        let hat = hat_construction(&m, &Matrix::identity(3, 2)).unwrap();
        assert!(hat.meets_nilpotent_image_trivially && !hat.doubled);
    }

    #[test]
    fn toric_canonical_witness() {
        for d in 1..=3 {
            let (inst, w) = toric_instance(None, d);
            assert!(replay_toric_case(&inst, &w).unwrap().passed(), "d = {d}");
        }
    }

    #[test]
    fn toric_hypothesis_failure_is_structured() {
        let (inst, _) = toric_instance(None, 2);
        let wrong_w = inst.at(2).unwrap().mt.clone();
        let out = replay_toric_case(&inst, &wrong_w).unwrap();
        assert!(matches!(out, ReplayOutcome::HypothesisFailure { .. }));
        assert!(!out.passed());
    }

    #[test]
    fn toric_randomized() {
        for seed in 0..40 {
            let (inst, w) = toric_instance(Some(seed), 1 + (seed as usize % 3));
            assert!(
                replay_toric_case(&inst, &w).unwrap().passed(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn t2_t5_witnesses() {
        for (d, t) in [(2, 1), (2, 2), (3, 1), (1, 0), (2, 0)] {
            let x = two_prime_instance(None, d, t).unwrap();
            assert!(replay_t2_equals_t5(&x).unwrap().passed(), "d={d} t={t}");
            let y = two_prime_instance(Some(d as u64 * 10 + t as u64), d, t).unwrap();
            assert!(replay_t2_equals_t5(&y).unwrap().passed());
        }
    }

    #[test]
    fn unipotent_pairs() {
        assert!(unipotent_pair_constraint(1).unwrap());
        assert!(unipotent_pair_constraint(2).unwrap());
        assert!(unipotent_pair_constraint(0).is_err());
        let id = Matrix::identity(3, 2);
        let zero = Matrix::zero(3, 2, 2);
        let sigma = Matrix::block(&id, &zero, &id, &id);
        let tau = Matrix::block(&id, &zero, &zero, &id);
        assert_eq!(unipotent_pair_order(&sigma, &tau, 27), Some(3));
    }

    #[test]
    fn weil() {
        assert!(weil_contradiction(5, 2, 1, 7).unwrap());
        assert!(weil_contradiction(3, 2, 1, 3).unwrap());
        assert!(!weil_contradiction(3, 2, 1, 7).unwrap());
        assert!(weil_contradiction(3, 2, 0, 3).is_err());
    }

    #[test]
    fn mixed_and_generated_cases() {
        // a_2 = 1, d = 2: M_t(2) = ⟨e1⟩, M_f(2) = ⟨e1, e2, e3⟩, W = ⟨e2, e4⟩.
        let ell = 5;
        let mut nil = Matrix::zero(ell, 4, 4);
        nil.set(0, 3, 1);
        let sigma = Matrix::identity(ell, 4).add(&nil);
        let data = BTreeMap::from([(
            2,
            BadPrime {
                mt: Subspace::coordinate(ell, 4, [0]),
                mf: Subspace::coordinate(ell, 4, [0, 1, 2]),
                sigma,
                decomposition_gens: vec![],
                stage: 1,
            },
        )]);
        let inst = GaloisModuleInstance::new(ell, 2, data, vec![]).unwrap();
        let w = Subspace::coordinate(ell, 4, [1, 3]);
        let out = replay_mixed_case(&inst, 2, &w);
        // σ is not scalar on W here, so the hypothesis check reports it.
        assert!(matches!(
            out.unwrap(),
            ReplayOutcome::HypothesisFailure { .. }
        ));
        let w = Subspace::coordinate(ell, 4, [0, 1]);
        assert!(replay_mixed_case(&inst, 2, &w).unwrap().passed());
        assert!(replay_generated_finite_part(&inst, 2).unwrap().passed());
    }

    #[test]
    fn component_delta_cancels_inside_mf() {
        for seed in 0..6 {
            let inst = random_instance(seed, 3, 2, &[2]);
            let bp = inst.at(2).unwrap();
            for kappa in all_subspaces(3, 4) {
                let delta = inst.component_delta(2, &kappa).unwrap();
                if bp.mf.contains(&kappa) {
                    assert_eq!(delta, kappa.intersection(&bp.mt).dim() as i64);
                }
                if kappa.contains(&bp.mt) && bp.mf.contains(&kappa) {
                    assert_eq!(delta, bp.mt.dim() as i64);
                }
            }
        }
    }
}
