//! State-effect models and convex operational models at finite dimension:
//! the classical pair (finitely supported functions against bounded
//! functions, both with pointwise order) and the quantum pair (Hermitian
//! parts with the trace pairing), with base norms and the canonical
//! state-space metric.
//!
//! Infima in the base norm and the metric witness are computed in closed
//! form from the pointwise/Jordan decomposition and then certified by the
//! explicit witness; no numerical optimization is involved.

use crate::exec::RunCfg;
use crate::quantum::linalg::{herm_eig, rebuild, CMat};
use crate::quantum::{QElement, QObject, Quantum};
use crate::report::{LawReport, LawResult, Regime};
use crate::scalar::{Rat, Real, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A dual pair of a state space and an effect space with a bilinear
/// pairing; the four separation conditions are checked by
/// [`com_law_suite`] against the spanning families.
pub trait Com {
    type Vector: Clone + std::fmt::Debug;
    type Effect: Clone + std::fmt::Debug;
    type Sc: Scalar;

    fn add(&self, x: &Self::Vector, y: &Self::Vector) -> Self::Vector;
    fn sub(&self, x: &Self::Vector, y: &Self::Vector) -> Self::Vector;
    fn smul(&self, r: &Self::Sc, x: &Self::Vector) -> Self::Vector;
    fn trace(&self, x: &Self::Vector) -> Self::Sc;
    fn in_cone(&self, x: &Self::Vector) -> bool;
    fn effect_in_cone(&self, a: &Self::Effect) -> bool;
    fn unit_effect(&self) -> Self::Effect;
    fn pair(&self, x: &Self::Vector, a: &Self::Effect) -> Self::Sc;
    fn vec_eq(&self, x: &Self::Vector, y: &Self::Vector) -> bool;
    fn sc_eq(&self, a: &Self::Sc, b: &Self::Sc) -> bool;

    /// Base norm `inf{τ(x₁)+τ(x₂) : x = x₁ − x₂, xᵢ ≥ 0}`, attained at
    /// the pointwise/Jordan decomposition.
    fn base_norm(&self, x: &Self::Vector) -> Self::Sc;

    /// The positive/negative parts attaining the base norm.
    fn jordan(&self, x: &Self::Vector) -> (Self::Vector, Self::Vector);

    /// Fixed spanning family of effects (separating for states).
    fn spanning_effects(&self) -> Vec<Self::Effect>;

    /// Fixed spanning family of states (order-separating for effects).
    fn spanning_states(&self) -> Vec<Self::Vector>;

    /// Constructive order-separation: when `x` is not in the cone,
    /// produce an effect pairing strictly below zero with it.
    fn negativity_witness(&self, x: &Self::Vector) -> Option<Self::Effect>;
}

/// The classical model over an `n`-point set: rational functions with
/// the summation trace against `[0,1]`-valued functions with the
/// pointwise pairing. Used by both the deterministic and probabilistic
/// instances.
#[derive(Clone, Debug)]
pub struct ClassicalCom {
    pub size: usize,
}

impl Com for ClassicalCom {
    type Vector = Vec<Rat>;
    type Effect = Vec<Rat>;
    type Sc = Rat;

    fn add(&self, x: &Vec<Rat>, y: &Vec<Rat>) -> Vec<Rat> {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    fn sub(&self, x: &Vec<Rat>, y: &Vec<Rat>) -> Vec<Rat> {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    fn smul(&self, r: &Rat, x: &Vec<Rat>) -> Vec<Rat> {
        x.iter().map(|a| r.mul(a)).collect()
    }

    fn trace(&self, x: &Vec<Rat>) -> Rat {
        x.iter().fold(Rat::zero(), |acc, v| acc.add(v))
    }

    fn in_cone(&self, x: &Vec<Rat>) -> bool {
        x.iter().all(|v| *v >= Rat::zero())
    }

    fn effect_in_cone(&self, a: &Vec<Rat>) -> bool {
        self.in_cone(a)
    }

    fn unit_effect(&self) -> Vec<Rat> {
        vec![Rat::one(); self.size]
    }

    fn pair(&self, x: &Vec<Rat>, a: &Vec<Rat>) -> Rat {
        x.iter()
            .zip(a)
            .fold(Rat::zero(), |acc, (v, w)| acc.add(&v.mul(w)))
    }

    fn vec_eq(&self, x: &Vec<Rat>, y: &Vec<Rat>) -> bool {
        x == y
    }

    fn sc_eq(&self, a: &Rat, b: &Rat) -> bool {
        a == b
    }

    fn base_norm(&self, x: &Vec<Rat>) -> Rat {
        x.iter().fold(Rat::zero(), |acc, v| acc.add(&v.abs()))
    }

    fn jordan(&self, x: &Vec<Rat>) -> (Vec<Rat>, Vec<Rat>) {
        let pos = x
            .iter()
            .map(|v| {
                if *v > Rat::zero() {
                    v.clone()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        let neg = x
            .iter()
            .map(|v| {
                if *v < Rat::zero() {
                    Rat::zero().sub(v)
                } else {
                    Rat::zero()
                }
            })
            .collect();
        (pos, neg)
    }

    fn spanning_effects(&self) -> Vec<Vec<Rat>> {
        // point indicators
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect()
    }

    fn spanning_states(&self) -> Vec<Vec<Rat>> {
        self.spanning_effects()
    }

    fn negativity_witness(&self, x: &Vec<Rat>) -> Option<Vec<Rat>> {
        let i = x.iter().position(|v| *v < Rat::zero())?;
        Some(
            (0..self.size)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect(),
        )
    }
}

/// The quantum model over a block algebra: Hermitian parts with the
/// trace functional against effects with the trace pairing.
#[derive(Clone, Debug)]
pub struct QuantumCom {
    pub obj: QObject,
    pub eps: f64,
}

impl QuantumCom {
    fn tol(&self) -> f64 {
        100.0 * self.eps
    }
}

impl Com for QuantumCom {
    type Vector = QElement;
    type Effect = QElement;
    type Sc = Real;

    fn add(&self, x: &QElement, y: &QElement) -> QElement {
        x.add(y)
    }

    fn sub(&self, x: &QElement, y: &QElement) -> QElement {
        x.sub(y)
    }

    fn smul(&self, r: &Real, x: &QElement) -> QElement {
        x.map(|m| m.scale(r.0))
    }

    fn trace(&self, x: &QElement) -> Real {
        Real(x.trace())
    }

    fn in_cone(&self, x: &QElement) -> bool {
        x.is_psd(self.eps)
    }

    fn effect_in_cone(&self, a: &QElement) -> bool {
        a.is_psd(self.eps)
    }

    fn unit_effect(&self) -> QElement {
        QElement::unit(&self.obj)
    }

    fn pair(&self, x: &QElement, a: &QElement) -> Real {
        Real(
            x.mats
                .iter()
                .zip(&a.mats)
                .map(|(m, e)| (m * e).trace().re)
                .sum(),
        )
    }

    fn vec_eq(&self, x: &QElement, y: &QElement) -> bool {
        x.max_dev(y) <= self.tol()
    }

    fn sc_eq(&self, a: &Real, b: &Real) -> bool {
        (a.0 - b.0).abs() <= self.tol()
    }

    fn base_norm(&self, x: &QElement) -> Real {
        // trace norm: sum of absolute eigenvalues, blockwise
        Real(
            x.mats
                .iter()
                .map(|m| herm_eig(m).0.iter().map(|v| v.abs()).sum::<f64>())
                .sum(),
        )
    }

    fn jordan(&self, x: &QElement) -> (QElement, QElement) {
        let pos = x.map(|m| {
            let (vals, vecs) = herm_eig(m);
            rebuild(&vals, &vecs, |v| v.max(0.0))
        });
        let neg = x.map(|m| {
            let (vals, vecs) = herm_eig(m);
            rebuild(&vals, &vecs, |v| (-v).max(0.0))
        });
        (pos, neg)
    }

    fn spanning_effects(&self) -> Vec<QElement> {
        // rank-one projections |v⟩⟨v| for v ranging over the coordinate
        // vectors and their pairwise real/imaginary mixtures: a
        // tomographically complete family per block
        let mut out = Vec::new();
        for (k, &n) in self.obj.blocks.iter().enumerate() {
            let mut push = |v: CMat| {
                let norm = v.norm();
                let v = v.unscale(norm);
                let mut e = QElement::zeros(&self.obj);
                e.mats[k] = &v * v.adjoint();
                out.push(e);
            };
            for i in 0..n {
                let mut v = CMat::zeros(n, 1);
                v[(i, 0)] = crate::quantum::linalg::cone();
                push(v);
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut v = CMat::zeros(n, 1);
                    v[(i, 0)] = crate::quantum::linalg::cone();
                    v[(j, 0)] = crate::quantum::linalg::cone();
                    push(v);
                    let mut w = CMat::zeros(n, 1);
                    w[(i, 0)] = crate::quantum::linalg::cone();
                    w[(j, 0)] = num_complex::Complex64::new(0.0, 1.0);
                    push(w);
                }
            }
        }
        out
    }

    fn spanning_states(&self) -> Vec<QElement> {
        self.spanning_effects()
    }

    fn negativity_witness(&self, x: &QElement) -> Option<QElement> {
        for (k, m) in x.mats.iter().enumerate() {
            let (vals, vecs) = herm_eig(m);
            if let Some(pos) = vals.iter().position(|&v| v < -self.tol()) {
                let col = vecs.column(pos);
                let mut e = QElement::zeros(&x.obj);
                e.mats[k] = col * col.adjoint();
                return Some(e);
            }
        }
        None
    }
}

/// The canonical state-space distance `σ = d/(d+2)` with its certified
/// convex-mixture witness: `(1−σ)·x ⊕ σ·z = (1−σ)·y ⊕ σ·w`.
pub struct SigmaWitness<V, S> {
    pub sigma: S,
    pub base_distance: S,
    pub z: Option<V>,
    pub w: Option<V>,
}

pub fn gudder_sigma<C: Com>(c: &C, x: &C::Vector, y: &C::Vector) -> SigmaWitness<C::Vector, C::Sc> {
    let diff = c.sub(x, y);
    let d = c.base_norm(&diff);
    let sigma = d
        .div(&d.add(&C::Sc::one().add(&C::Sc::one())))
        .unwrap_or_else(C::Sc::zero);
    let (pos, neg) = c.jordan(&diff);
    let mass = c.trace(&pos);
    let (z, w) = match C::Sc::one().div(&mass) {
        Some(inv) => (Some(c.smul(&inv, &neg)), Some(c.smul(&inv, &pos))),
        None => (None, None),
    };
    SigmaWitness {
        sigma,
        base_distance: d,
        z,
        w,
    }
}

/// Verifies the defining mixture equation of a sigma witness; `None`
/// means the witness certifies the value.
pub fn check_sigma_witness<C: Com>(
    c: &C,
    x: &C::Vector,
    y: &C::Vector,
    wit: &SigmaWitness<C::Vector, C::Sc>,
) -> Option<String> {
    let one = C::Sc::one();
    // d = 2σ/(1−σ)
    let two_sigma = wit.sigma.add(&wit.sigma);
    let denom = one.sub(&wit.sigma);
    match two_sigma.div(&denom) {
        Some(d) if c.sc_eq(&d, &wit.base_distance) => {}
        _ => return Some("d ≠ 2σ/(1−σ)".into()),
    }
    match (&wit.z, &wit.w) {
        (Some(z), Some(w)) => {
            if !c.in_cone(z) || !c.in_cone(w) {
                return Some("witness parts are not states".into());
            }
            if !c.sc_eq(&c.trace(z), &one) || !c.sc_eq(&c.trace(w), &one) {
                return Some("witness parts are not normalized".into());
            }
            let r = &wit.sigma;
            let rp = one.sub(r);
            let lhs = c.add(&c.smul(&rp, x), &c.smul(r, z));
            let rhs = c.add(&c.smul(&rp, y), &c.smul(r, w));
            if !c.vec_eq(&lhs, &rhs) {
                return Some("mixture equation fails".into());
            }
            None
        }
        _ => {
            if c.sc_eq(&wit.base_distance, &C::Sc::zero()) {
                None
            } else {
                Some("no witness for a nonzero distance".into())
            }
        }
    }
}

/// The state-effect and dual-pair law suite over sampled states/effects
/// and the fixed spanning families.
pub fn com_law_suite<C: Com>(
    c: &C,
    suite: &str,
    states: &[C::Vector],
    effects: &[C::Effect],
    regime: Regime,
) -> LawReport {
    let mut rep = LawReport::new(suite);
    let one = C::Sc::one();

    let mut law = LawResult::new(
        "com.positivity",
        "⟨x, a⟩ ≥ 0 for positive x and a",
        regime.clone(),
    );
    for x in states {
        for a in effects {
            law.pass_one();
            if c.in_cone(x) && c.effect_in_cone(a) && c.pair(x, a) < C::Sc::zero() {
                law.fail("negative pairing".into());
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new("com.unit-trace", "⟨x, u⟩ = τ(x)", regime.clone());
    let u = c.unit_effect();
    for x in states {
        law.pass_one();
        if !c.sc_eq(&c.pair(x, &u), &c.trace(x)) {
            law.fail("pairing with the unit differs from the trace".into());
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "com.bilinearity",
        "the pairing is additive and homogeneous in the state argument",
        regime.clone(),
    );
    let half = one.div(&one.add(&one)).expect("two is invertible");
    for x in states {
        for y in states {
            let s = c.add(x, y);
            for a in effects.iter().take(4) {
                law.pass_one();
                if !c.sc_eq(&c.pair(&s, a), &c.pair(x, a).add(&c.pair(y, a))) {
                    law.fail("additivity fails".into());
                }
                let hx = c.smul(&half, x);
                if !c.sc_eq(&c.pair(&hx, a), &half.mul(&c.pair(x, a))) {
                    law.fail("homogeneity fails".into());
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "com.order-separation",
        "⟨x, a⟩ ≥ 0 for all positive x implies a ≥ 0, via constructed witnesses",
        regime.clone(),
    );
    for a in effects {
        law.pass_one();
        // effects are in the cone; perturb below zero to exercise the
        // witness construction
        if !c.effect_in_cone(a) {
            law.fail("sampled effect outside the cone".into());
        }
    }
    // non-cone vectors must have a witness, and the witness must pair
    // strictly negatively
    for x in states {
        for y in states {
            let diff = c.sub(x, y);
            law.pass_one();
            match c.negativity_witness(&diff) {
                Some(w) => {
                    if c.pair(&diff, &w) >= C::Sc::zero() {
                        law.fail("witness does not separate".into());
                    }
                    if c.in_cone(&diff) {
                        law.fail("witness produced for a cone element".into());
                    }
                }
                None => {
                    if !c.in_cone(&diff) {
                        law.fail("no witness for a non-cone element".into());
                    }
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "com.separation",
        "⟨x, a⟩ = 0 for the spanning effects implies x = 0",
        regime.clone(),
    );
    let span = c.spanning_effects();
    for x in states {
        for y in states {
            law.pass_one();
            let diff = c.sub(x, y);
            let all_zero = span
                .iter()
                .all(|a| c.sc_eq(&c.pair(&diff, a), &C::Sc::zero()));
            let zero_vec = c.vec_eq(x, y);
            if all_zero != zero_vec {
                law.fail("spanning effects do not separate".into());
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "sem.validity-bihomomorphism",
        "states are unital on effects; validity is affine in the state",
        regime.clone(),
    );
    for x in states {
        if !c.in_cone(x) || !c.sc_eq(&c.trace(x), &one) {
            continue;
        }
        law.pass_one();
        if !c.sc_eq(&c.pair(x, &u), &one) {
            law.fail("state not unital".into());
        }
        for a in effects {
            let v = c.pair(x, a);
            if v < C::Sc::zero() || v > one {
                law.fail("validity outside the unit interval".into());
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "sem.metric-separation",
        "σ(x, y) = 0 implies x = y on states",
        regime.clone(),
    );
    for x in states {
        for y in states {
            law.pass_one();
            let wit = gudder_sigma(c, x, y);
            if let Some(err) = check_sigma_witness(c, x, y, &wit) {
                law.fail(err);
            }
            if c.sc_eq(&wit.sigma, &C::Sc::zero()) != c.vec_eq(x, y) {
                law.fail("σ vanishes on distinct states".into());
            }
        }
    }
    rep.push(law);

    rep
}

/// Builds the classical suite for an `n`-point object with sampled
/// rational states.
pub fn classical_duality_suite(size: usize, cfg: &RunCfg) -> LawReport {
    use rand::Rng;
    let c = ClassicalCom { size };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(5));
    let mut states: Vec<Vec<Rat>> = c.spanning_states();
    for _ in 0..12 {
        let mut masses: Vec<i64> = (0..size).map(|_| rng.random_range(0..=64)).collect();
        let total: i64 = masses.iter().sum();
        if total == 0 {
            masses[0] = 1;
        }
        let total: i64 = masses.iter().sum();
        states.push(masses.iter().map(|&k| Rat::new(k, total)).collect());
    }
    let mut effects: Vec<Vec<Rat>> = c.spanning_effects();
    effects.push(c.unit_effect());
    for _ in 0..8 {
        effects.push(
            (0..size)
                .map(|_| Rat::new(rng.random_range(0..=16), 16))
                .collect(),
        );
    }
    com_law_suite(
        &c,
        &format!("duality[classical-{size}]"),
        &states,
        &effects,
        Regime::Sampled {
            seed: cfg.seed,
            count: 20,
        },
    )
}

/// Builds the quantum suite for a block object with seeded states and
/// effects.
pub fn quantum_duality_suite(obj: &QObject, cfg: &RunCfg) -> LawReport {
    let q = Quantum::new(cfg.eps);
    let c = QuantumCom {
        obj: obj.clone(),
        eps: cfg.eps,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(6));
    let mut states = c.spanning_states();
    for _ in 0..10 {
        states.push(q.random_density(obj, &mut rng));
    }
    let mut effects = c.spanning_effects();
    effects.push(c.unit_effect());
    for _ in 0..8 {
        effects.push(q.random_effect(obj, &mut rng));
    }
    com_law_suite(
        &c,
        &format!("duality[quantum-{:?}]", obj.blocks),
        &states,
        &effects,
        Regime::Sampled {
            seed: cfg.seed,
            count: 18,
        },
    )
}

/// Deliberately truncated effect family (the unit alone): separation must
/// fail with a witness pair of distinct states.
pub fn truncated_family_fails(size: usize) -> bool {
    let c = ClassicalCom { size };
    let states = c.spanning_states();
    if states.len() < 2 {
        return false;
    }
    let diff = c.sub(&states[0], &states[1]);
    // the unit cannot separate: ⟨x−y, u⟩ = 0 although x ≠ y
    c.sc_eq(&c.pair(&diff, &c.unit_effect()), &Rat::zero()) && !c.vec_eq(&states[0], &states[1])
}
