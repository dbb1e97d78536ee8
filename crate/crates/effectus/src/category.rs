//! The abstract interface implemented by the three concrete process
//! theories, plus instance-independent constructions built on it.
//!
//! A morphism `A → B` is a partial process; its domain predicate `1∘f`
//! measures "f occurs". Homsets carry a partial sum, predicates (`A → I`)
//! form effect algebras, substates (`I → A`) form weight modules, and
//! validity `ω ⊨ p = p∘ω` is the pairing between them.
//!
//! Type mismatches in the plumbing are programmer errors and panic;
//! the fallible, data-facing entry points live in [`crate::measurement`]
//! and [`crate::io`].

use crate::scalar::Scalar;
use rand_chacha::ChaCha8Rng;

/// Dispatch bundle of one concrete instance.
pub trait Effectus: Sync {
    type Obj: Clone + Eq + std::fmt::Debug + Send + Sync;
    type Mor: Clone + std::fmt::Debug + Send + Sync;
    type Sc: Scalar;

    fn name(&self) -> &'static str;
    /// The trivial object `I`.
    fn unit(&self) -> Self::Obj;
    /// The initial (zero) object.
    fn zero_obj(&self) -> Self::Obj;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;

    fn id(&self, a: &Self::Obj) -> Self::Mor;
    fn zero_mor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    /// The truth predicate `1_A : A → I`.
    fn truth(&self, a: &Self::Obj) -> Self::Mor;
    /// Composition `g ∘ f`; panics unless `cod f = dom g`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn coprod(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn inj1(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    fn inj2(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    /// Cotuple `[f, g] : A + B → C` of parallel-codomain morphisms.
    fn cotuple(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    /// Partial sum of parallel morphisms; `None` when not summable.
    fn try_sum(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor>;
    /// Partial difference: the unique `h` with `f ⊕ h = g`, when `f ≤ g`.
    fn mor_sub(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    /// Orthosupplement of a predicate: the unique `q` with `p ⊕ q = 1`.
    fn ortho(&self, p: &Self::Mor) -> Self::Mor;

    /// Scalar action `s · f` by post-composition with `s : I → I`.
    fn scale(&self, s: &Self::Sc, f: &Self::Mor) -> Self::Mor;

    /// Morphism equality: exact or within the instance tolerance.
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;

    /// Reads off the scalar carried by a morphism `I → I`.
    fn scalar_value(&self, s: &Self::Mor) -> Self::Sc;
    /// Embeds a scalar as a morphism `I → I`.
    fn scalar_mor(&self, s: &Self::Sc) -> Self::Mor;
    fn sc_eq(&self, a: &Self::Sc, b: &Self::Sc) -> bool;

    // ---- derived structure ----

    /// Partial projection `▷₁ = [id, 0] : A + B → A`.
    fn proj1(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor {
        self.cotuple(&self.id(a), &self.zero_mor(b, a))
    }

    /// Partial projection `▷₂ = [0, id] : A + B → B`.
    fn proj2(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor {
        self.cotuple(&self.zero_mor(a, b), &self.id(b))
    }

    /// Domain predicate `1f = 1 ∘ f`.
    fn domain_pred(&self, f: &Self::Mor) -> Self::Mor {
        self.compose(&self.truth(&self.cod(f)), f)
    }

    /// Kernel `ker f = (1f)⊥`, the predicate "f does not occur".
    fn kernel(&self, f: &Self::Mor) -> Self::Mor {
        self.ortho(&self.domain_pred(f))
    }

    fn is_total(&self, f: &Self::Mor) -> bool {
        self.mor_eq(&self.domain_pred(f), &self.truth(&self.dom(f)))
    }

    fn is_zero(&self, f: &Self::Mor) -> bool {
        self.mor_eq(f, &self.zero_mor(&self.dom(f), &self.cod(f)))
    }

    /// Validity `ω ⊨ p = p ∘ ω` of a predicate in a substate.
    fn validity(&self, omega: &Self::Mor, p: &Self::Mor) -> Self::Sc {
        assert_eq!(
            self.dom(p),
            self.cod(omega),
            "validity: predicate and substate live on different objects"
        );
        self.scalar_value(&self.compose(p, omega))
    }

    /// Predicate transformer `f*(q) = q ∘ f`.
    fn pred_transform(&self, f: &Self::Mor, q: &Self::Mor) -> Self::Mor {
        self.compose(q, f)
    }

    /// Substate transformer `f_*(ω) = f ∘ ω`.
    fn state_transform(&self, f: &Self::Mor, omega: &Self::Mor) -> Self::Mor {
        self.compose(f, omega)
    }

    /// Liberal predicate transformer `f□(q) = f*(q⊥)⊥`.
    fn f_box(&self, f: &Self::Mor, q: &Self::Mor) -> Self::Mor {
        self.ortho(&self.pred_transform(f, &self.ortho(q)))
    }

    /// Predicate order `p ≤ q ⟺ p ⊥ q⊥`.
    fn pred_leq(&self, p: &Self::Mor, q: &Self::Mor) -> bool {
        self.try_sum(p, &self.ortho(q)).is_some()
    }

    /// Difference `q ⊖ p = (p ⊕ q⊥)⊥` of predicates with `p ≤ q`.
    fn pred_sub(&self, q: &Self::Mor, p: &Self::Mor) -> Option<Self::Mor> {
        self.try_sum(p, &self.ortho(q)).map(|s| self.ortho(&s))
    }

    /// Algebraic order on a homset: `f ≤ g` iff `g ⊖ f` exists.
    fn mor_leq(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        self.mor_sub(g, f).is_some()
    }

    /// Weight `|ω| = 1 ∘ ω` of a substate.
    fn weight(&self, omega: &Self::Mor) -> Self::Sc {
        self.scalar_value(&self.domain_pred(omega))
    }

    /// Partial pairing `⟨⟨f, g⟩⟩ = κ₁∘f ⊕ κ₂∘g : A → B + C`, defined iff
    /// `1f ⊥ 1g`.
    fn partial_pair(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor> {
        let (b, c) = (self.cod(f), self.cod(g));
        let lf = self.compose(&self.inj1(&b, &c), f);
        let lg = self.compose(&self.inj2(&b, &c), g);
        self.try_sum(&lf, &lg)
    }

    /// Total-form presentation `⟨⟨f, (1f)⊥⟩⟩ : A → B + I`.
    fn to_total(&self, f: &Self::Mor) -> Self::Mor {
        self.partial_pair(f, &self.kernel(f))
            .expect("1f and (1f)⊥ are summable")
    }

    /// Inverse of [`Effectus::to_total`]: `▷₁ ∘ g`.
    #[allow(clippy::wrong_self_convention)]
    fn from_total(&self, g: &Self::Mor) -> Self::Mor {
        let b_plus_i = self.cod(g);
        let b = self.left_summand(&b_plus_i);
        self.compose(&self.proj1(&b, &self.unit()), g)
    }

    /// Left summand of a binary coproduct object built by this instance.
    /// Used only to undo [`Effectus::to_total`].
    fn left_summand(&self, ab: &Self::Obj) -> Self::Obj;

    // ---- n-ary coproduct helpers (right-nested) ----

    /// `A₁ + (A₂ + (… + Aₙ))`; the empty family gives the zero object.
    fn ncoprod(&self, objs: &[Self::Obj]) -> Self::Obj {
        match objs.split_first() {
            None => self.zero_obj(),
            Some((a, [])) => a.clone(),
            Some((a, rest)) => self.coprod(a, &self.ncoprod(rest)),
        }
    }

    /// Coprojection `κⱼ : Aⱼ → A₁ + … + Aₙ`.
    fn ninj(&self, objs: &[Self::Obj], j: usize) -> Self::Mor {
        assert!(j < objs.len());
        if objs.len() == 1 {
            return self.id(&objs[0]);
        }
        let rest = &objs[1..];
        let tail = self.ncoprod(rest);
        if j == 0 {
            self.inj1(&objs[0], &tail)
        } else {
            let inner = self.ninj(rest, j - 1);
            self.compose(&self.inj2(&objs[0], &tail), &inner)
        }
    }

    /// Partial projection `▷ⱼ : A₁ + … + Aₙ → Aⱼ`.
    fn nproj(&self, objs: &[Self::Obj], j: usize) -> Self::Mor {
        assert!(j < objs.len());
        if objs.len() == 1 {
            return self.id(&objs[0]);
        }
        let rest = &objs[1..];
        let tail = self.ncoprod(rest);
        if j == 0 {
            self.proj1(&objs[0], &tail)
        } else {
            let inner = self.nproj(rest, j - 1);
            self.compose(&inner, &self.proj2(&objs[0], &tail))
        }
    }

    /// Cotuple `[f₁, …, fₙ]` of a nonempty parallel-codomain family.
    fn ncotuple(&self, fs: &[Self::Mor]) -> Self::Mor {
        match fs.split_first() {
            None => panic!("empty cotuple"),
            Some((f, [])) => f.clone(),
            Some((f, rest)) => self.cotuple(f, &self.ncotuple(rest)),
        }
    }

    /// Sum of a family; `None` if some partial sum is undefined.
    fn nsum(&self, fs: &[Self::Mor]) -> Option<Self::Mor> {
        let (first, rest) = fs.split_first()?;
        rest.iter()
            .try_fold(first.clone(), |acc, f| self.try_sum(&acc, f))
    }

    /// Partial tuple `⟨⟨f₁, …, fₙ⟩⟩ : A → B₁ + … + Bₙ`.
    fn npartial_tuple(&self, fs: &[Self::Mor]) -> Option<Self::Mor> {
        let cods: Vec<Self::Obj> = fs.iter().map(|f| self.cod(f)).collect();
        let lifted: Vec<Self::Mor> = fs
            .iter()
            .enumerate()
            .map(|(j, f)| self.compose(&self.ninj(&cods, j), f))
            .collect();
        self.nsum(&lifted)
    }
}

/// Comprehension witness: the subobject `{A|p}` with its total mono
/// `π_p : {A|p} → A`.
#[derive(Clone, Debug)]
pub struct Comprehension<O, M> {
    pub obj: O,
    pub proj: M,
    pub pred: M,
}

/// Quotient witness: the object `A/p` with its map `ξ_p : A → A/p`
/// killing `p`.
#[derive(Clone, Debug)]
pub struct Quotient<O, M> {
    pub obj: O,
    pub map: M,
    pub pred: M,
}

/// Instance-specific logic structure: images, comprehension, quotients,
/// and the assert maps used by the measurement layer.
pub trait LogicEffectus: Effectus {
    /// Image: the least predicate `q` on `cod f` with `f□(q) = 1`;
    /// always ortho-sharp.
    fn image(&self, f: &Self::Mor) -> Self::Mor;

    fn comprehension(&self, a: &Self::Obj, p: &Self::Mor) -> Comprehension<Self::Obj, Self::Mor>;

    fn quotient(&self, a: &Self::Obj, p: &Self::Mor) -> Quotient<Self::Obj, Self::Mor>;

    /// Mediating map through a comprehension: the unique `h̄` with
    /// `π_p ∘ h̄ = h`, for `h` with `h□(p) = 1`. `None` if the
    /// precondition fails.
    fn comprehension_mediate(
        &self,
        c: &Comprehension<Self::Obj, Self::Mor>,
        h: &Self::Mor,
    ) -> Option<Self::Mor>;

    /// Mediating map through a quotient: the unique `f̄` with
    /// `f̄ ∘ ξ_p = f`, for `f` with `p ≤ ker f`. `None` if the
    /// precondition fails.
    fn quotient_mediate(
        &self,
        q: &Quotient<Self::Obj, Self::Mor>,
        f: &Self::Mor,
    ) -> Option<Self::Mor>;

    /// Inverse of a total isomorphism, if `f` is one.
    fn invert_total_iso(&self, f: &Self::Mor) -> Option<Self::Mor>;

    /// Generalized assert map for an effect `p` on `a`: an endo-morphism
    /// with `1 ∘ asrt = p` that measures `p`; agrees with the sharp
    /// assert map when `p` is sharp.
    fn asrt_general(&self, a: &Self::Obj, p: &Self::Mor) -> Self::Mor;
}

/// Sample data for the law suites, with its checking regime recorded.
pub struct Samples<O, M> {
    pub regime: crate::report::Regime,
    pub objects: Vec<O>,
    /// Parallel pairs `(f, g)` with common dom/cod for PCM laws.
    pub morphisms: Vec<M>,
    pub predicates: Vec<(O, Vec<M>)>,
    pub substates: Vec<(O, Vec<M>)>,
}

/// Instance-specific generators backing the law suites.
pub trait SampleGen: Effectus {
    /// Objects exercised by the suites.
    fn gen_objects(&self, cfg: &crate::exec::RunCfg) -> Vec<Self::Obj>;

    /// Morphisms `a → b`: exhaustive where the instance supports it,
    /// seeded samples otherwise. The regime tag reports which.
    fn gen_homset(
        &self,
        a: &Self::Obj,
        b: &Self::Obj,
        cfg: &crate::exec::RunCfg,
        rng: &mut ChaCha8Rng,
    ) -> (crate::report::Regime, Vec<Self::Mor>);

    /// Scalars of the instance exercised by the module law suites.
    fn gen_scalars(&self, cfg: &crate::exec::RunCfg, rng: &mut ChaCha8Rng) -> Vec<Self::Sc>;

    /// Sharp predicates on `a` (exhaustive for the finite instances, a
    /// seeded projection family for the quantum one).
    fn gen_sharp_predicates(
        &self,
        a: &Self::Obj,
        cfg: &crate::exec::RunCfg,
        rng: &mut ChaCha8Rng,
    ) -> (crate::report::Regime, Vec<Self::Mor>);

    /// Direct, representation-level normalization of a nonzero substate;
    /// the independent construction the generic normalizer is checked
    /// against. `None` on the zero substate.
    fn normalize_direct(&self, omega: &Self::Mor) -> Option<Self::Mor>;
}

/// Generic normalization of a nonzero substate: the n-fold sum of
/// `(1/(n|ω|)) · ω` for `n = ⌈1/|ω|⌉`, a state `ω̄` with `ω = |ω| · ω̄`.
pub fn normalize_substate<E: Effectus>(e: &E, omega: &E::Mor) -> Option<E::Mor> {
    let t = e.weight(omega);
    if e.sc_eq(&t, &E::Sc::zero()) {
        return None;
    }
    let n = E::Sc::one()
        .div(&t)
        .map(|inv| inv.to_f64().ceil() as u32)
        .unwrap_or(1)
        .max(1);
    let nt = (0..n).fold(E::Sc::zero(), |acc, _| acc.add(&t));
    let r = E::Sc::one().div(&nt)?;
    let part = e.scale(&r, omega);
    let mut acc = part.clone();
    for _ in 1..n {
        acc = e.try_sum(&acc, &part)?;
    }
    Some(acc)
}
