//! Instance-generic law suites.
//!
//! Each suite draws its data from the instance's [`SampleGen`] and records
//! the checking regime per law: exhaustive where the instance enumerates
//! its homsets, seeded samples otherwise. All equalities go through the
//! instance's morphism equality, which is exact for the deterministic and
//! probabilistic instances and tolerance-based for the quantum one.

use crate::algebra::weight::WeightModule;
use crate::category::{normalize_substate, Effectus, LogicEffectus, SampleGen};
use crate::exec::{run_over, RunCfg};
use crate::logic;
use crate::report::{LawReport, LawResult, Regime};
use crate::scalar::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Sampled data for one instance: objects, homsets between all pairs,
/// and predicates/substates per object.
pub struct Pool<E: Effectus> {
    pub regime: Regime,
    pub objects: Vec<E::Obj>,
    /// `homs[i][j]` is the sampled homset `objects[i] → objects[j]`.
    pub homs: Vec<Vec<Vec<E::Mor>>>,
    /// Predicates per object.
    pub preds: Vec<Vec<E::Mor>>,
    /// Substates per object.
    pub substates: Vec<Vec<E::Mor>>,
    pub scalars: Vec<E::Sc>,
}

impl<E: Effectus + SampleGen> Pool<E> {
    pub fn build(e: &E, cfg: &RunCfg) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let objects = e.gen_objects(cfg);
        let mut regime = Regime::Exhaustive;
        let mut homs = Vec::new();
        for a in &objects {
            let mut row = Vec::new();
            for b in &objects {
                let (r, ms) = e.gen_homset(a, b, cfg, &mut rng);
                if let Regime::Sampled { seed, .. } = r {
                    regime = Regime::Sampled {
                        seed,
                        count: match regime {
                            Regime::Sampled { count, .. } => count + ms.len(),
                            Regime::Exhaustive => ms.len(),
                        },
                    };
                }
                row.push(ms);
            }
            homs.push(row);
        }
        let unit = e.unit();
        let preds = objects
            .iter()
            .map(|a| e.gen_homset(a, &unit, cfg, &mut rng).1)
            .collect();
        let substates = objects
            .iter()
            .map(|a| e.gen_homset(&unit, a, cfg, &mut rng).1)
            .collect();
        let scalars = e.gen_scalars(cfg, &mut rng);
        Pool {
            regime,
            objects,
            homs,
            preds,
            substates,
            scalars,
        }
    }

    pub fn total_morphisms(&self) -> usize {
        self.homs.iter().flatten().map(|h| h.len()).sum()
    }
}

fn cap<T>(v: &[T], n: usize) -> &[T] {
    &v[..v.len().min(n)]
}

/// Bounds a quantifier pool: exhaustive regimes run it in full, sampled
/// regimes are capped to keep higher-arity laws within budget.
fn budget<'a, T>(regime: &Regime, v: &'a [T], n: usize) -> &'a [T] {
    match regime {
        Regime::Exhaustive => v,
        Regime::Sampled { .. } => cap(v, n),
    }
}

/// Core compatibility-and-truth laws, the finitely-additive homset
/// structure, unique orthosupplements, validity naturality, total-form
/// round trips, and substate normalization.
pub fn effectus_suite<E: Effectus + SampleGen>(e: &E, cfg: &RunCfg) -> LawReport {
    let pool = Pool::build(e, cfg);
    let mut rep = LawReport::new(&format!("effectus[{}]", e.name()));
    let regime = pool.regime.clone();

    // truth on a coproduct is the cotuple of truths
    let mut law = LawResult::new(
        "effectus.truth-cotuple",
        "1_{A+B} = [1_A, 1_B]",
        regime.clone(),
    );
    for a in &pool.objects {
        for b in &pool.objects {
            law.pass_one();
            let lhs = e.truth(&e.coprod(a, b));
            let rhs = e.cotuple(&e.truth(a), &e.truth(b));
            if !e.mor_eq(&lhs, &rhs) {
                law.fail(format!("A={a:?}, B={b:?}"));
            }
        }
    }
    rep.push(law);

    // zero reflection
    let mut law = LawResult::new(
        "effectus.zero-reflection",
        "1∘f = 0 implies f = 0",
        regime.clone(),
    );
    for row in &pool.homs {
        for hom in row {
            let outcomes = run_over(hom, cfg.parallel, |f| {
                if e.is_zero(&e.domain_pred(f)) && !e.is_zero(f) {
                    Some(format!("{f:?}"))
                } else {
                    None
                }
            });
            law.absorb(outcomes);
        }
    }
    rep.push(law);

    // summability is reflected from domain predicates
    let mut law = LawResult::new(
        "effectus.truth-compatibility",
        "1f ⊥ 1g implies f ⊥ g, and then 1(f⊕g) = 1f ⊕ 1g",
        regime.clone(),
    );
    for row in &pool.homs {
        for hom in row {
            let pairs: Vec<(usize, usize)> = (0..hom.len())
                .flat_map(|i| (0..hom.len()).map(move |j| (i, j)))
                .collect();
            let outcomes = run_over(&pairs, cfg.parallel, |&(i, j)| {
                let (f, g) = (&hom[i], &hom[j]);
                let tf = e.domain_pred(f);
                let tg = e.domain_pred(g);
                match e.try_sum(&tf, &tg) {
                    None => None,
                    Some(tsum) => match e.try_sum(f, g) {
                        None => Some(format!("1f ⊥ 1g but f ̸⊥ g at ({i},{j})")),
                        Some(s) => {
                            if e.mor_eq(&e.domain_pred(&s), &tsum) {
                                None
                            } else {
                                Some(format!("1(f⊕g) ≠ 1f⊕1g at ({i},{j})"))
                            }
                        }
                    },
                }
            });
            law.absorb(outcomes);
        }
    }
    rep.push(law);

    // PCM laws of each homset, on bounded triples
    let mut law = LawResult::new(
        "effectus.homset-pcm",
        "⊕ is commutative and associative with unit 0 on each homset",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            let zero = e.zero_mor(&pool.objects[i], &pool.objects[j]);
            let ms = budget(&regime, hom, 10);
            for f in ms {
                law.pass_one();
                match e.try_sum(f, &zero) {
                    Some(s) if e.mor_eq(&s, f) => {}
                    _ => {
                        law.fail(format!("unit law at ({i},{j})"));
                    }
                }
                for g in ms {
                    let fg = e.try_sum(f, g);
                    let gf = e.try_sum(g, f);
                    match (&fg, &gf) {
                        (Some(x), Some(y)) if e.mor_eq(x, y) => {}
                        (None, None) => {}
                        _ => {
                            law.fail(format!("commutativity at ({i},{j})"));
                        }
                    }
                    for h in ms {
                        if let Some(fg) = &fg {
                            if let Some(fgh) = e.try_sum(fg, h) {
                                match e.try_sum(g, h).and_then(|gh| e.try_sum(f, &gh)) {
                                    Some(v) if e.mor_eq(&v, &fgh) => {}
                                    _ => {
                                        law.fail(format!("associativity at ({i},{j})"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    // composition distributes over the partial sum
    let mut law = LawResult::new(
        "effectus.composition-bimorphism",
        "h∘(f⊕g) = h∘f ⊕ h∘g and (f⊕g)∘k = f∘k ⊕ g∘k where defined",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            let ms = budget(&regime, hom, 8);
            let post = budget(&regime, &pool.homs[j][(j + 1) % pool.objects.len()], 4);
            let pre = budget(&regime, &pool.homs[(i + 1) % pool.objects.len()][i], 4);
            for f in ms {
                for g in ms {
                    let Some(s) = e.try_sum(f, g) else { continue };
                    for h in post {
                        law.pass_one();
                        let lhs = e.compose(h, &s);
                        let rhs = e
                            .try_sum(&e.compose(h, f), &e.compose(h, g))
                            .expect("postcomposition preserves summability");
                        if !e.mor_eq(&lhs, &rhs) {
                            law.fail(format!("post at ({i},{j})"));
                        }
                    }
                    for k in pre {
                        law.pass_one();
                        let lhs = e.compose(&s, k);
                        let rhs = e
                            .try_sum(&e.compose(f, k), &e.compose(g, k))
                            .expect("precomposition preserves summability");
                        if !e.mor_eq(&lhs, &rhs) {
                            law.fail(format!("pre at ({i},{j})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    // unique orthosupplements of sampled predicates
    let mut law = LawResult::new(
        "effectus.unique-orthosupplement",
        "every predicate has exactly one complement summing to truth",
        regime.clone(),
    );
    for (i, preds) in pool.preds.iter().enumerate() {
        let truth = e.truth(&pool.objects[i]);
        for p in preds {
            law.pass_one();
            let perp = e.ortho(p);
            match e.try_sum(p, &perp) {
                Some(s) if e.mor_eq(&s, &truth) => {}
                _ => {
                    law.fail(format!("p ⊕ p⊥ ≠ 1 on object {i}"));
                }
            }
            for q in preds {
                if let Some(s) = e.try_sum(p, q) {
                    if e.mor_eq(&s, &truth) && !e.mor_eq(q, &perp) {
                        law.fail(format!("second orthosupplement on object {i}"));
                    }
                }
            }
        }
    }
    rep.push(law);

    // partial projections are jointly monic on paired morphisms
    let mut law = LawResult::new(
        "effectus.joint-monicity",
        "▷₁u = ▷₁v and ▷₂u = ▷₂v imply u = v for maps into A + B",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            let other = &pool.homs[i][(j + 1) % pool.objects.len()];
            let b = &pool.objects[j];
            let c = &pool.objects[(j + 1) % pool.objects.len()];
            let p1 = e.proj1(b, c);
            let p2 = e.proj2(b, c);
            let mut tuples = Vec::new();
            for f in cap(hom, 6) {
                for g in cap(other, 6) {
                    if let Some(t) = e.partial_pair(f, g) {
                        // the defining projections must hold
                        law.pass_one();
                        if !e.mor_eq(&e.compose(&p1, &t), f) || !e.mor_eq(&e.compose(&p2, &t), g) {
                            law.fail(format!("pairing projections at ({i},{j})"));
                        }
                        tuples.push(t);
                    }
                }
            }
            for u in &tuples {
                for v in &tuples {
                    law.pass_one();
                    if e.mor_eq(&e.compose(&p1, u), &e.compose(&p1, v))
                        && e.mor_eq(&e.compose(&p2, u), &e.compose(&p2, v))
                        && !e.mor_eq(u, v)
                    {
                        law.fail(format!("joint monicity at ({i},{j})"));
                    }
                }
            }
        }
    }
    rep.push(law);

    // untying
    let mut law = LawResult::new(
        "effectus.untying",
        "f ⊥ g implies κ₁∘f ⊥ κ₂∘g",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            let b = &pool.objects[j];
            let k1 = e.inj1(b, b);
            let k2 = e.inj2(b, b);
            let ms = budget(&regime, hom, 10);
            for f in ms {
                for g in ms {
                    if e.try_sum(f, g).is_some() {
                        law.pass_one();
                        if e.try_sum(&e.compose(&k1, f), &e.compose(&k2, g)).is_none() {
                            law.fail(format!("at ({i},{j})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    // totality is closed under composition and cotupling; coprojections
    // and identities are total
    let mut law = LawResult::new(
        "effectus.totality-closure",
        "identities and coprojections are total; totals compose and cotuple to totals",
        regime.clone(),
    );
    for (i, a) in pool.objects.iter().enumerate() {
        law.pass_one();
        if !e.is_total(&e.id(a)) {
            law.fail(format!("id on object {i}"));
        }
        for b in &pool.objects {
            if !e.is_total(&e.inj1(a, b)) || !e.is_total(&e.inj2(a, b)) {
                law.fail(format!("coprojection at object {i}"));
            }
        }
    }
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            for f in budget(&regime, hom, 8) {
                if !e.is_total(f) {
                    continue;
                }
                for g in budget(&regime, &pool.homs[j][(j + 1) % pool.objects.len()], 8) {
                    if e.is_total(g) {
                        law.pass_one();
                        if !e.is_total(&e.compose(g, f)) {
                            law.fail(format!("composite at ({i},{j})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    // the algebraic order on each homset is antisymmetric
    let mut law = LawResult::new(
        "effectus.order-antisymmetry",
        "f ≤ g and g ≤ f imply f = g",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            let ms = budget(&regime, hom, 12);
            for f in ms {
                for g in ms {
                    law.pass_one();
                    if e.mor_leq(f, g) && e.mor_leq(g, f) && !e.mor_eq(f, g) {
                        law.fail(format!("at ({i},{j})"));
                    }
                }
            }
        }
    }
    rep.push(law);

    // validity naturality
    let mut law = LawResult::new(
        "effectus.validity-naturality",
        "f_*(ω) ⊨ p = ω ⊨ f*(p)",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            for f in budget(&regime, hom, 10) {
                for omega in budget(&regime, &pool.substates[i], 8) {
                    for p in budget(&regime, &pool.preds[j], 8) {
                        law.pass_one();
                        let lhs = e.validity(&e.state_transform(f, omega), p);
                        let rhs = e.validity(omega, &e.pred_transform(f, p));
                        if !e.sc_eq(&lhs, &rhs) {
                            law.fail(format!("at homset ({i},{j})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    // total-form round trip
    let mut law = LawResult::new(
        "effectus.total-form-round-trip",
        "▷₁∘⟨⟨f,(1f)⊥⟩⟩ = f, and ⟨⟨g₁,(1g₁)⊥⟩⟩ = g for total g into B + I",
        regime.clone(),
    );
    for row in &pool.homs {
        for hom in row {
            let outcomes = run_over(hom, cfg.parallel, |f| {
                let t = e.to_total(f);
                if !e.is_total(&t) {
                    return Some("presentation is not total".into());
                }
                if !e.mor_eq(&e.from_total(&t), f) {
                    return Some("from_total ∘ to_total ≠ id".into());
                }
                // and the other direction on the constructed total map
                let back = e.to_total(&e.from_total(&t));
                if !e.mor_eq(&back, &t) {
                    return Some("to_total ∘ from_total ≠ id on total maps".into());
                }
                None
            });
            law.absorb(outcomes);
        }
    }
    rep.push(law);

    // normalization of substates, against the direct construction
    let mut law = LawResult::new(
        "effectus.normalization",
        "every nonzero substate has a unique state ω̄ with ω = |ω|·ω̄",
        regime.clone(),
    );
    for (i, substates) in pool.substates.iter().enumerate() {
        for omega in substates {
            if e.sc_eq(&e.weight(omega), &E::Sc::zero()) {
                continue;
            }
            law.pass_one();
            let Some(bar) = normalize_substate(e, omega) else {
                law.fail(format!("normalization failed on object {i}"));
                continue;
            };
            if !e.sc_eq(&e.weight(&bar), &E::Sc::one()) {
                law.fail(format!("|ω̄| ≠ 1 on object {i}"));
            }
            if !e.mor_eq(&e.scale(&e.weight(omega), &bar), omega) {
                law.fail(format!("|ω|·ω̄ ≠ ω on object {i}"));
            }
            match e.normalize_direct(omega) {
                Some(direct) if e.mor_eq(&direct, &bar) => {}
                _ => {
                    law.fail(format!("disagrees with the direct construction on {i}"));
                }
            }
        }
    }
    rep.push(law);

    rep
}

/// Effect-module laws of predicates and weight-module laws of substates.
pub fn module_suite<E: Effectus + SampleGen>(e: &E, cfg: &RunCfg) -> LawReport {
    let pool = Pool::build(e, cfg);
    let mut rep = LawReport::new(&format!("modules[{}]", e.name()));
    let regime = pool.regime.clone();
    let one = E::Sc::one();

    let mut law = LawResult::new(
        "emod.scalar-action",
        "predicates form a module: 1·p = p, (st)·p = s·(t·p), s·(p⊕q) = s·p ⊕ s·q, (s⊕t)·p = s·p ⊕ t·p",
        regime.clone(),
    );
    for (i, preds) in pool.preds.iter().enumerate() {
        for p in cap(preds, 8) {
            law.pass_one();
            if !e.mor_eq(&e.scale(&one, p), p) {
                law.fail(format!("unit action on object {i}"));
            }
            for s in &pool.scalars {
                for t in &pool.scalars {
                    let st = s.mul(t);
                    if !e.mor_eq(&e.scale(&st, p), &e.scale(s, &e.scale(t, p))) {
                        law.fail(format!("associativity of the action on object {i}"));
                    }
                    if s.add(t) <= one {
                        let sum = s.add(t);
                        match e.try_sum(&e.scale(s, p), &e.scale(t, p)) {
                            Some(v) if e.mor_eq(&v, &e.scale(&sum, p)) => {}
                            _ => {
                                law.fail(format!("(s⊕t)·p on object {i}"));
                            }
                        }
                    }
                }
            }
            for q in cap(preds, 8) {
                if let Some(sum) = e.try_sum(p, q) {
                    for s in cap(&pool.scalars, 5) {
                        match e.try_sum(&e.scale(s, p), &e.scale(s, q)) {
                            Some(v) if e.mor_eq(&v, &e.scale(s, &sum)) => {}
                            _ => {
                                law.fail(format!("s·(p⊕q) on object {i}"));
                            }
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "wmod.substates",
        "substates form a weight module: |x|=0 ⇒ x=0, |x|⊥|y| ⇒ x⊥y, |s·x| = s·|x|",
        regime.clone(),
    );
    for (i, substates) in pool.substates.iter().enumerate() {
        let module = SubstateModule {
            e,
            obj: pool.objects[i].clone(),
        };
        let violations = crate::algebra::weight::weight_module_violations(
            &module,
            cap(substates, 10),
            cap(&pool.scalars, 6),
        );
        law.pass_one();
        if let Some(v) = violations.first() {
            law.fail(format!("object {i}: {v}"));
        }
    }
    rep.push(law);

    rep
}

/// Substates of a fixed object viewed as a weight module.
pub struct SubstateModule<'a, E: Effectus> {
    pub e: &'a E,
    pub obj: E::Obj,
}

impl<E: Effectus> WeightModule for SubstateModule<'_, E> {
    type Elem = E::Mor;
    type Sc = E::Sc;

    fn weight(&self, x: &E::Mor) -> E::Sc {
        self.e.weight(x)
    }

    fn scale(&self, s: &E::Sc, x: &E::Mor) -> E::Mor {
        self.e.scale(s, x)
    }

    fn try_sum(&self, x: &E::Mor, y: &E::Mor) -> Option<E::Mor> {
        self.e.try_sum(x, y)
    }

    fn zero_elem(&self) -> E::Mor {
        self.e.zero_mor(&self.e.unit(), &self.obj)
    }

    fn elem_eq(&self, x: &E::Mor, y: &E::Mor) -> bool {
        self.e.mor_eq(x, y)
    }

    fn sc_eq(&self, a: &E::Sc, b: &E::Sc) -> bool {
        self.e.sc_eq(a, b)
    }
}

/// Kernel, image, liberal-transformer, comprehension, quotient and
/// factorization laws.
pub fn logic_suite<E: LogicEffectus + SampleGen>(e: &E, cfg: &RunCfg) -> LawReport {
    let pool = Pool::build(e, cfg);
    let mut rep = LawReport::new(&format!("logic[{}]", e.name()));
    let regime = pool.regime.clone();

    let mut law = LawResult::new(
        "logic.fbox",
        "id□ = id, (g∘f)□ = f□∘g□, monotone, f□(1) = 1, f□(q) = (1f)⊥ ⊕ f*(q)",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            for f in cap(hom, 8) {
                for q in cap(&pool.preds[j], 6) {
                    law.pass_one();
                    let boxed = e.f_box(f, q);
                    let expanded = e
                        .try_sum(&e.kernel(f), &e.pred_transform(f, q))
                        .expect("(1f)⊥ and f*(q) are summable");
                    if !e.mor_eq(&boxed, &expanded) {
                        law.fail(format!("decomposition at ({i},{j})"));
                    }
                    for g in cap(&pool.homs[j][(j + 1) % pool.objects.len()], 4) {
                        for r in cap(&pool.preds[(j + 1) % pool.objects.len()], 4) {
                            let lhs = e.f_box(&e.compose(g, f), r);
                            let rhs = e.f_box(f, &e.f_box(g, r));
                            if !e.mor_eq(&lhs, &rhs) {
                                law.fail(format!("functoriality at ({i},{j})"));
                            }
                        }
                    }
                    for q2 in cap(&pool.preds[j], 6) {
                        if e.pred_leq(q, q2) && !e.pred_leq(&boxed, &e.f_box(f, q2)) {
                            law.fail(format!("monotonicity at ({i},{j})"));
                        }
                    }
                }
                law.pass_one();
                if !e.mor_eq(
                    &e.f_box(f, &e.truth(&pool.objects[j])),
                    &e.truth(&pool.objects[i]),
                ) {
                    law.fail(format!("f□(1) at ({i},{j})"));
                }
                if !e.mor_eq(
                    &e.f_box(&e.id(&pool.objects[j]), &pool.preds[j][0]),
                    &pool.preds[j][0],
                ) {
                    law.fail(format!("id□ at ({j})"));
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "logic.image",
        "f□(im f) = 1; im f is least among sampled certificates; im f is sharp",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            let outcomes = run_over(cap(hom, 12), cfg.parallel, |f| {
                let im = e.image(f);
                if !e.mor_eq(&e.f_box(f, &im), &e.truth(&pool.objects[i])) {
                    return Some(format!("f□(im f) ≠ 1 at ({i},{j})"));
                }
                if !logic::is_sharp(e, &pool.objects[j], &im) {
                    return Some(format!("im f not sharp at ({i},{j})"));
                }
                for q in &pool.preds[j] {
                    if e.mor_eq(&e.f_box(f, q), &e.truth(&pool.objects[i])) && !e.pred_leq(&im, q) {
                        return Some(format!("im f not least at ({i},{j})"));
                    }
                }
                None
            });
            law.absorb(outcomes);
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "logic.image-coproducts",
        "im⟨⟨f,g⟩⟩ = [im f, im g]; im(f⊕g) = im f ∨ im g; im κ₁ = [1,0]",
        regime.clone(),
    );
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            let b = pool.objects[j].clone();
            law.pass_one();
            let k1 = e.inj1(&b, &b);
            let expect = e.cotuple(&e.truth(&b), &e.zero_mor(&b, &e.unit()));
            if !e.mor_eq(&e.image(&k1), &expect) {
                law.fail(format!("im κ₁ at {j}"));
            }
            let ms = cap(hom, 6);
            for f in ms {
                for g in ms {
                    if let Some(t) = e.partial_pair(f, g) {
                        law.pass_one();
                        let lhs = e.image(&t);
                        let rhs = e.cotuple(&e.image(f), &e.image(g));
                        if !e.mor_eq(&lhs, &rhs) {
                            law.fail(format!("im of pairing at ({i},{j})"));
                        }
                    }
                    if let Some(s) = e.try_sum(f, g) {
                        law.pass_one();
                        let join = logic::sharp_join(e, &b, &e.image(f), &e.image(g))
                            .expect("images are sharp");
                        if !e.mor_eq(&e.image(&s), &join) {
                            law.fail(format!("im of sum at ({i},{j})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "logic.floor",
        "⌊p⌋ ≤ p, ⌊⌊p⌋⌋ = ⌊p⌋, monotone; ⌈p⌉ least sharp above p",
        regime.clone(),
    );
    for (i, preds) in pool.preds.iter().enumerate() {
        let a = &pool.objects[i];
        for p in cap(preds, 10) {
            law.pass_one();
            let fl = logic::floor(e, a, p);
            if !e.pred_leq(&fl, p) {
                law.fail(format!("⌊p⌋ ≰ p on object {i}"));
            }
            if !e.mor_eq(&logic::floor(e, a, &fl), &fl) {
                law.fail(format!("floor not idempotent on object {i}"));
            }
            let ce = logic::ceiling(e, a, p);
            if !e.pred_leq(p, &ce) || !logic::is_sharp(e, a, &ce) {
                law.fail(format!("ceiling not sharp above p on object {i}"));
            }
            for q in cap(preds, 10) {
                if e.pred_leq(p, q) && !e.pred_leq(&fl, &logic::floor(e, a, q)) {
                    law.fail(format!("floor not monotone on object {i}"));
                }
                if logic::is_sharp(e, a, q) {
                    // ⌊q⌋ greatest sharp below p; ⌈p⌉ least sharp above
                    if e.pred_leq(q, p) && !e.pred_leq(q, &fl) {
                        law.fail(format!("⌊p⌋ not greatest on object {i}"));
                    }
                    if e.pred_leq(p, q) && !e.pred_leq(&ce, q) {
                        law.fail(format!("⌈p⌉ not least on object {i}"));
                    }
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "logic.comprehension",
        "π_p is total with 1∘π = p∘π; witnessed cones factor uniquely through it",
        regime.clone(),
    );
    for (i, preds) in pool.preds.iter().enumerate() {
        let a = &pool.objects[i];
        for p in cap(preds, 8) {
            law.pass_one();
            let c = e.comprehension(a, p);
            if !e.is_total(&c.proj) {
                law.fail(format!("π not total on object {i}"));
            }
            if !e.mor_eq(&e.domain_pred(&c.proj), &e.compose(p, &c.proj)) {
                law.fail(format!("equalizer property fails on object {i}"));
            }
            // the projection is its own cone, with the identity as the
            // unique mediating map
            match e.comprehension_mediate(&c, &c.proj) {
                Some(m) => {
                    law.pass_one();
                    if !e.mor_eq(&e.compose(&c.proj, &m), &c.proj) {
                        law.fail(format!("mediating equation fails on object {i}"));
                    }
                    if !e.mor_eq(&m, &e.id(&c.obj)) {
                        law.fail(format!("mediating map of π is not the identity on {i}"));
                    }
                }
                None => {
                    law.fail(format!("π is not its own cone on object {i}"));
                }
            }
            // every sampled morphism satisfying the cone condition is
            // mediated, and the zero morphism always is
            for (j, hom) in pool.homs.iter().enumerate() {
                let mut cones: Vec<E::Mor> = vec![e.zero_mor(&pool.objects[j], a)];
                for h in cap(&hom[i], 6) {
                    if e.mor_eq(&e.f_box(h, p), &e.truth(&pool.objects[j])) {
                        cones.push(h.clone());
                    }
                }
                for h in &cones {
                    law.pass_one();
                    match e.comprehension_mediate(&c, h) {
                        Some(m) => {
                            if !e.mor_eq(&e.compose(&c.proj, &m), h) {
                                law.fail(format!("cone not mediated at ({j},{i})"));
                            }
                        }
                        None => {
                            law.fail(format!("cone rejected at ({j},{i})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "logic.quotient",
        "ker ξ_p = p; maps killing p factor uniquely through ξ_p",
        regime.clone(),
    );
    for (i, preds) in pool.preds.iter().enumerate() {
        let a = &pool.objects[i];
        for p in cap(preds, 8) {
            law.pass_one();
            let q = e.quotient(a, p);
            if !e.mor_eq(&e.kernel(&q.map), p) {
                law.fail(format!("ker ξ ≠ p on object {i}"));
            }
            // the quotient map is its own witness, mediated by the identity
            match e.quotient_mediate(&q, &q.map) {
                Some(m) => {
                    law.pass_one();
                    if !e.mor_eq(&m, &e.id(&q.obj)) {
                        law.fail(format!("mediating map of ξ is not the identity on {i}"));
                    }
                }
                None => {
                    law.fail(format!("ξ is not its own witness on object {i}"));
                }
            }
            // sampled morphisms that kill p, and the zero morphism, are
            // mediated through the quotient
            for (j, _) in pool.objects.iter().enumerate() {
                let mut witnesses: Vec<E::Mor> = vec![e.zero_mor(a, &pool.objects[j])];
                for h in cap(&pool.homs[i][j], 6) {
                    if e.pred_leq(p, &e.kernel(h)) {
                        witnesses.push(h.clone());
                    }
                }
                for f in &witnesses {
                    law.pass_one();
                    match e.quotient_mediate(&q, f) {
                        Some(m) => {
                            if !e.mor_eq(&e.compose(&m, &q.map), f) {
                                law.fail(format!("mediating equation fails at ({i},{j})"));
                            }
                        }
                        None => {
                            law.fail(format!("witnessed map rejected at ({i},{j})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "logic.galois",
        "f♦(𝔭) ≤ 𝔮 ⟺ 𝔭 ≤ f■(𝔮) on sharp predicates",
        regime.clone(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e3779b9);
    let sharp: Vec<Vec<E::Mor>> = pool
        .objects
        .iter()
        .map(|a| e.gen_sharp_predicates(a, cfg, &mut rng).1)
        .collect();
    for (i, row) in pool.homs.iter().enumerate() {
        for (j, hom) in row.iter().enumerate() {
            for f in cap(hom, 5) {
                for p in cap(&sharp[i], 5) {
                    for q in cap(&sharp[j], 5) {
                        law.pass_one();
                        let lhs = e.pred_leq(&logic::diamond(e, &pool.objects[i], f, p), q);
                        let rhs = e.pred_leq(p, &logic::box_sharp(e, f, q));
                        if lhs != rhs {
                            law.fail(format!("adjunction fails at ({i},{j})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "logic.factorization",
        "f = π_{im f} ∘ θ_f ∘ ξ_{ker f} with θ_f total and faithful",
        regime.clone(),
    );
    for row in &pool.homs {
        for hom in row {
            let outcomes = run_over(hom, cfg.parallel, |f| match logic::factorize(e, f) {
                Ok(fac) => logic::check_factorization(e, f, &fac),
                Err(err) => Some(err.to_string()),
            });
            law.absorb(outcomes);
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "logic.sharp-sum-join",
        "𝔭 ⊥ 𝔮 sharp implies 𝔭⊕𝔮 = 𝔭∨𝔮 and the sum is sharp",
        regime.clone(),
    );
    for (i, preds) in sharp.iter().enumerate() {
        let a = &pool.objects[i];
        for p in cap(preds, 8) {
            for q in cap(preds, 8) {
                if let Some(s) = e.try_sum(p, q) {
                    law.pass_one();
                    let join = logic::sharp_join(e, a, p, q).expect("sharp inputs");
                    if !e.mor_eq(&s, &join) || !logic::is_sharp(e, a, &s) {
                        law.fail(format!("on object {i}"));
                    }
                }
            }
        }
    }
    rep.push(law);

    rep
}

/// Orthomodular-lattice laws of sharp predicates: complement laws,
/// De Morgan pairing of meet and join, and the orthomodular law on
/// constructed comparable pairs.
pub fn oml_suite<E: LogicEffectus + SampleGen>(
    e: &E,
    objects: &[E::Obj],
    cfg: &RunCfg,
    pair_budget: usize,
) -> LawReport {
    let mut rep = LawReport::new(&format!("oml[{}]", e.name()));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(17));
    for (i, a) in objects.iter().enumerate() {
        let (regime, sharp) = e.gen_sharp_predicates(a, cfg, &mut rng);
        let truth = e.truth(a);
        let falsity = e.zero_mor(a, &e.unit());

        let mut law = LawResult::new(
            &format!("oml.complement[{i}]"),
            "𝔭 ∨ 𝔭⊥ = 1, 𝔭 ∧ 𝔭⊥ = 0, 𝔭⊥⊥ = 𝔭, complement is antitone",
            regime.clone(),
        );
        let mut pairs: Vec<(E::Mor, E::Mor)> = Vec::new();
        let mut count = 0usize;
        'outer: for p in &sharp {
            for q in &sharp {
                pairs.push((p.clone(), q.clone()));
                count += 1;
                if count >= pair_budget {
                    break 'outer;
                }
            }
        }
        let outcomes = run_over(&pairs, cfg.parallel, |(p, q)| {
            let pc = e.ortho(p);
            if !logic::is_sharp(e, a, &pc) {
                return Some("complement of sharp is not sharp".into());
            }
            if !e.mor_eq(&e.ortho(&pc), p) {
                return Some("complement is not involutive".into());
            }
            let join = logic::sharp_join(e, a, p, &pc).ok()?;
            if !e.mor_eq(&join, &truth) {
                return Some("𝔭 ∨ 𝔭⊥ ≠ 1".into());
            }
            let meet = logic::sharp_meet(e, a, p, &pc).ok()?;
            if !e.mor_eq(&meet, &falsity) {
                return Some("𝔭 ∧ 𝔭⊥ ≠ 0".into());
            }
            if e.pred_leq(p, q) {
                let qc = e.ortho(q);
                if !e.pred_leq(&qc, &pc) {
                    return Some("complement is not antitone".into());
                }
            }
            // De Morgan: 𝔭 ∧ 𝔮 = (𝔭⊥ ∨ 𝔮⊥)⊥
            let meet_pq = logic::sharp_meet(e, a, p, q).ok()?;
            let qc = e.ortho(q);
            let via_joins = e.ortho(&logic::sharp_join(e, a, &pc, &qc).ok()?);
            if !e.mor_eq(&meet_pq, &via_joins) {
                return Some("De Morgan pairing fails".into());
            }
            None
        });
        law.absorb(outcomes);
        rep.push(law);

        let mut law = LawResult::new(
            &format!("oml.orthomodular[{i}]"),
            "𝔭 ≤ 𝔮 implies 𝔭 ∨ (𝔭⊥ ∧ 𝔮) = 𝔮",
            regime.clone(),
        );
        // comparable pairs q = p ∨ r, built and checked inside the runner
        let index_pairs: Vec<(usize, usize)> = (0..sharp.len())
            .flat_map(|x| (0..sharp.len()).map(move |y| (x, y)))
            .take(pair_budget)
            .collect();
        let outcomes = run_over(&index_pairs, cfg.parallel, |&(x, y)| {
            let p = &sharp[x];
            let q = logic::sharp_join(e, a, p, &sharp[y]).ok()?;
            if !e.pred_leq(p, &q) {
                return Some("constructed pair is not comparable".into());
            }
            let q = &q;
            let pc = e.ortho(p);
            let inner = logic::sharp_meet(e, a, &pc, q).ok()?;
            let lhs = logic::sharp_join(e, a, p, &inner).ok()?;
            if e.mor_eq(&lhs, q) {
                None
            } else {
                Some("orthomodular law fails".into())
            }
        });
        law.absorb(outcomes);
        rep.push(law);
    }
    rep
}

/// The three-way equivalence of orthoalgebra conditions on finite lattice
/// effect algebras, plus the effect-monoid laws of the instance scalars.
pub fn algebra_suite(cfg: &RunCfg) -> LawReport {
    use crate::algebra;
    let mut rep = LawReport::new("algebra");
    for (name, alg) in [
        ("grid8", algebra::grid_algebra(8)),
        ("grid16", algebra::grid_algebra(16)),
        ("powerset3", algebra::boolean_algebra(3)),
        ("four-element", algebra::four_element_algebra()),
    ] {
        match alg.law_suite(cfg) {
            Ok(mut inner) => {
                for mut law in inner.laws.drain(..) {
                    law.id = format!("{}.{}", name, law.id);
                    rep.push(law);
                }
            }
            Err(err) => {
                let mut law = LawResult::new(
                    &format!("{name}.law-suite"),
                    "carrier within bounds",
                    Regime::Exhaustive,
                );
                law.fail(err.to_string());
                rep.push(law);
            }
        }
        let mut law = LawResult::new(
            &format!("{name}.orthoalgebra-equivalence"),
            "all ortho-sharp ⟺ a ⊥ a ⇒ a = 0 ⟺ sums of summable pairs are joins",
            Regime::Exhaustive,
        );
        law.pass_one();
        if let Some(w) = alg.orthoalgebra_equivalence() {
            law.fail(w);
        }
        rep.push(law);
    }
    for n in [2usize, 4, 8, 16] {
        let alg = algebra::grid_algebra(n);
        match alg.mv_law_suite(cfg) {
            Ok(mut inner) => {
                for mut law in inner.laws.drain(..) {
                    law.id = format!("grid{}.{}", n, law.id);
                    rep.push(law);
                }
            }
            Err(err) => {
                let mut law = LawResult::new(
                    &format!("grid{n}.mv"),
                    "lattice with the common-refinement property",
                    Regime::Exhaustive,
                );
                law.fail(err.to_string());
                rep.push(law);
            }
        }
    }
    let scalars: Vec<crate::scalar::Rat> = (0..=8).map(|k| crate::scalar::Rat::new(k, 8)).collect();
    rep.merge(crate::algebra::effect_monoid_laws(&scalars, "algebra"));
    rep
}

/// Measurement-layer laws: Boolean idempotent algebras, side-effect-free
/// instruments and their ideality, first-kindness against repeatability,
/// compatibility witnesses, and centrality on the block algebra.
pub fn measurement_suite(cfg: &RunCfg) -> LawReport {
    use crate::measurement as ms;
    use crate::pfn::{Pfn, PfnMor};
    use crate::prob::{Prob, ProbMor};
    use crate::quantum::linalg::{cone, cr, CMat};
    use crate::quantum::{pauli_matrices, QElement, QMorphism, QObject, Quantum};

    let mut rep = LawReport::new("measurement");
    let pfn = Pfn;
    let prob = Prob;
    let q = Quantum::new(cfg.eps);

    // Boolean idempotents on small sets form a Boolean algebra
    // isomorphic, via the domain predicate, to the predicate algebra.
    let mut law = LawResult::new(
        "measurement.boolean-idempotents",
        "Boolean endomaps on sets of size ≤ 4 are the subset asserts and satisfy the Boolean-algebra laws",
        Regime::Exhaustive,
    );
    for n in 0..=4usize {
        let endos = pfn.enumerate_homset(n, n, 1_000_000).unwrap();
        let bidem: Vec<PfnMor> = endos
            .into_iter()
            .filter(|f| ms::is_boolean_idempotent(&pfn, f))
            .collect();
        law.pass_one();
        if bidem.len() != 1 << n {
            law.fail(format!("|BIdem| = {} on size {n}", bidem.len()));
        }
        // each Boolean idempotent is the assert of its domain predicate
        for f in &bidem {
            if *f != pfn.asrt_general(&n, &pfn.domain_pred(f)) {
                law.fail(format!("non-assert Boolean idempotent on size {n}"));
            }
        }
        // Boolean algebra laws: complement, distributivity, and the
        // summability/meet correspondence
        for f in &bidem {
            let fc = ms::boolean_complement(&pfn, f).unwrap();
            if !pfn.is_zero(&ms::boolean_meet(&pfn, f, &fc)) {
                law.fail(format!("f ∧ f⊥ ≠ 0 on size {n}"));
            }
            if ms::boolean_join(&pfn, f, &fc) != Some(pfn.id(&n)) {
                law.fail(format!("f ∨ f⊥ ≠ id on size {n}"));
            }
            for g in &bidem {
                let summable = pfn.try_sum(f, g).is_some();
                let disjoint = pfn.is_zero(&ms::boolean_meet(&pfn, f, g));
                if summable != disjoint {
                    law.fail(format!("summability ≠ disjointness on size {n}"));
                }
                if summable {
                    let sum = pfn.try_sum(f, g).unwrap();
                    if ms::boolean_join(&pfn, f, g) != Some(sum.clone()) {
                        law.fail(format!("f⊕g ≠ f∨g on size {n}"));
                    }
                }
                for h in &bidem {
                    let lhs = ms::boolean_meet(&pfn, f, &ms::boolean_join(&pfn, g, h).unwrap());
                    let rhs = ms::boolean_join(
                        &pfn,
                        &ms::boolean_meet(&pfn, f, g),
                        &ms::boolean_meet(&pfn, f, h),
                    )
                    .unwrap();
                    if lhs != rhs {
                        law.fail(format!("distributivity fails on size {n}"));
                    }
                }
            }
        }
        // the domain predicate is a bijection onto all predicates
        let mut images: Vec<PfnMor> = bidem.iter().map(|f| pfn.domain_pred(f)).collect();
        images.sort_by_key(|p| p.table.clone());
        images.dedup();
        if images.len() != 1 << n {
            law.fail(format!("1(−) is not injective on size {n}"));
        }
    }
    rep.push(law);

    // every two-outcome observable on a finite set has a Boolean
    // instrument: Boolean process theory on the deterministic side
    let mut law = LawResult::new(
        "measurement.boolean-instruments",
        "every deterministic partition is measured by a repeatable side-effect-free instrument",
        Regime::Exhaustive,
    );
    for p in pfn.all_predicates(3) {
        law.pass_one();
        let obs = ms::observable(
            &pfn,
            vec!["in".into(), "out".into()],
            vec![p.clone(), pfn.ortho(&p)],
        )
        .unwrap();
        let lud = ms::luders_instrument(&pfn, &obs).unwrap();
        if !ms::is_boolean_instrument(&pfn, &lud).unwrap() {
            law.fail(format!("{:?}", p));
        }
    }
    rep.push(law);

    // side-effect-free instruments are ideal on both sides, and their
    // measured predicates are compatible with everything
    let mut law = LawResult::new(
        "measurement.sef-ideal",
        "side-effect-free instruments pass both ideality flags and make their predicates jointly measurable",
        Regime::Sampled {
            seed: cfg.seed,
            count: 16,
        },
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(41));
    for _ in 0..8 {
        use rand::Rng;
        let values: Vec<crate::scalar::Rat> = (0..3)
            .map(|_| crate::scalar::Rat::new(rng.random_range(0..=16), 16))
            .collect();
        let p = ProbMor::predicate(&values);
        let obs = ms::observable(
            &prob,
            vec!["0".into(), "1".into()],
            vec![p.clone(), prob.ortho(&p)],
        )
        .unwrap();
        let inst = ms::generalized_luders_instrument(&prob, &obs).unwrap();
        law.pass_one();
        if !ms::is_side_effect_free(&prob, &inst).unwrap() {
            law.fail("assert instrument not side-effect-free".into());
            continue;
        }
        // raw two-sided ideality holds for any side-effect-free
        // instrument: a witness silent on all other outcomes is fixed by
        // the remaining one
        let mut witnesses_in = vec![prob.zero_mor(&3, &3)];
        let mut witnesses_out = vec![prob.zero_mor(&3, &3)];
        for _ in 0..4 {
            witnesses_in.push(prob.random_mor(3, 3, 16, false, &mut rng));
            witnesses_out.push(prob.random_mor(3, 3, 16, false, &mut rng));
        }
        for (xp, fxp) in inst.parts.iter().enumerate() {
            for h in &witnesses_in {
                let silent = inst
                    .parts
                    .iter()
                    .enumerate()
                    .all(|(x, fx)| x == xp || prob.is_zero(&prob.compose(fx, h)));
                if silent && !prob.mor_eq(&prob.compose(fxp, h), h) {
                    law.fail("side-effect-free instrument disturbs a silent witness".into());
                }
            }
            for g in &witnesses_out {
                let silent = inst
                    .parts
                    .iter()
                    .enumerate()
                    .all(|(x, fx)| x == xp || prob.is_zero(&prob.compose(g, fx)));
                if silent && !prob.mor_eq(&prob.compose(g, fxp), g) {
                    law.fail("side-effect-free instrument is visible to a silent witness".into());
                }
            }
        }
        if let Some(w) =
            ms::spot_check_ideality(&prob, &inst, &witnesses_in, &witnesses_out).unwrap()
        {
            law.fail(w);
        }
        // compatibility witness: p = (q⊥∘f₁) ⊕ c and q = (q∘f₂) ⊕ c with
        // c = q∘f₁, all three jointly summable
        let qpred = ProbMor::predicate(&[
            crate::scalar::Rat::new(rng.random_range(0..=16), 16),
            crate::scalar::Rat::new(rng.random_range(0..=16), 16),
            crate::scalar::Rat::new(rng.random_range(0..=16), 16),
        ]);
        let c = prob.pred_transform(&inst.parts[0], &qpred);
        let ap = prob.pred_transform(&inst.parts[0], &prob.ortho(&qpred));
        let bp = prob.pred_transform(&inst.parts[1], &qpred);
        let joint = prob.try_sum(&ap, &bp).and_then(|s| prob.try_sum(&s, &c));
        let recovers = prob.try_sum(&ap, &c).map(|s| prob.mor_eq(&s, &p)) == Some(true)
            && prob.try_sum(&bp, &c).map(|s| prob.mor_eq(&s, &qpred)) == Some(true);
        if joint.is_none() || !recovers {
            law.fail("no compatibility witness from a side-effect-free instrument".into());
        }
    }
    rep.push(law);

    // first-kindness coincides with repeatability for sharp-observable
    // instruments: the assert instrument satisfies it, the disturbed one
    // fails it
    let mut law = LawResult::new(
        "measurement.first-kindness",
        "for sharp observables, outcome statistics are reproduced on remeasurement exactly for repeatable instruments",
        Regime::Sampled {
            seed: cfg.seed,
            count: 20,
        },
    );
    let m2 = QObject::simple(2);
    let paulis = pauli_matrices();
    let p0 = (paulis[0].clone() + paulis[3].clone()).scale(0.5);
    let p1 = (paulis[0].clone() - paulis[3].clone()).scale(0.5);
    let effect = |m: &CMat| QElement {
        obj: m2.clone(),
        mats: vec![m.clone()],
    };
    let sharp_obs = ms::observable(
        &q,
        vec!["0".into(), "1".into()],
        vec![
            QMorphism::from_effect(&effect(&p0)),
            QMorphism::from_effect(&effect(&p1)),
        ],
    )
    .unwrap();
    let luders = ms::luders_instrument(&q, &sharp_obs).unwrap();
    let h = crate::quantum::hadamard();
    let disturbed = ms::new_test(
        &q,
        vec!["0".into(), "1".into()],
        vec![
            QMorphism::from_heisenberg(&m2, &m2, |_, i, j| {
                let mut e = QElement::zeros(&m2);
                e.mats[0] = &p0 * &h * crate::quantum::linalg::matrix_unit(2, i, j) * &h * &p0;
                e
            }),
            QMorphism::from_heisenberg(&m2, &m2, |_, i, j| {
                let mut e = QElement::zeros(&m2);
                e.mats[0] = &p1 * crate::quantum::linalg::matrix_unit(2, i, j) * &p1;
                e
            }),
        ],
    )
    .unwrap();
    for (inst, expect_repeatable) in [(&luders, true), (&disturbed, false)] {
        law.pass_one();
        if ms::is_repeatable(&q, inst).unwrap() != expect_repeatable {
            law.fail("repeatability flag differs from construction".into());
        }
        // first-kindness over seeded states: P_{ω,f}(o₂=x) vs
        // P_{ω,f,f}(o₃=x)
        let mut first_kind = true;
        for _ in 0..10 {
            let omega = ms::channel(
                &q,
                QMorphism::from_density(&q.random_density(&m2, &mut rng)),
            )
            .unwrap();
            let once = ms::run_experiment(&q, &omega, std::slice::from_ref(inst)).unwrap();
            let twice = ms::run_experiment(&q, &omega, &[inst.clone(), inst.clone()]).unwrap();
            let remeasured = twice.marginal(&[2]);
            let single = once.marginal(&[1]);
            for x in 0..2 {
                if (single.get(&[x]).0 - remeasured.get(&[x]).0).abs() > 100.0 * cfg.eps {
                    first_kind = false;
                }
            }
        }
        if first_kind != expect_repeatable {
            law.fail("first-kindness differs from repeatability".into());
        }
    }
    rep.push(law);

    // Booleanness on the block algebra coincides with centrality
    let mut law = LawResult::new(
        "measurement.centrality",
        "on M₂⊕M₁ an assert pair is a Boolean instrument exactly for central projections",
        Regime::Exhaustive,
    );
    let m21 = QObject::new(vec![2, 1]).unwrap();
    let plus = {
        let mut m = CMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = cr(0.5);
            }
        }
        m
    };
    let mut family: Vec<(QElement, bool)> = Vec::new();
    let two_blocks = |a: CMat, b: f64| -> QElement {
        let mut e = QElement::zeros(&m21);
        e.mats[0] = a;
        e.mats[1][(0, 0)] = cr(b);
        e
    };
    for (block2, central2) in [
        (CMat::zeros(2, 2), true),
        (CMat::identity(2, 2), true),
        (
            {
                let mut m = CMat::zeros(2, 2);
                m[(0, 0)] = cone();
                m
            },
            false,
        ),
        (plus.clone(), false),
    ] {
        for b in [0.0, 1.0] {
            family.push((two_blocks(block2.clone(), b), central2));
        }
    }
    for (proj, central) in &family {
        law.pass_one();
        if proj.is_central(100.0 * cfg.eps) != *central {
            law.fail("centrality test disagrees with construction".into());
        }
        let p = QMorphism::from_effect(proj);
        let obs = ms::observable(
            &q,
            vec!["p".into(), "not-p".into()],
            vec![p.clone(), q.ortho(&p)],
        )
        .unwrap();
        let inst = ms::generalized_luders_instrument(&q, &obs).unwrap();
        if ms::is_boolean_instrument(&q, &inst).unwrap() != *central {
            law.fail("Booleanness differs from centrality".into());
        }
        if ms::is_side_effect_free(&q, &inst).unwrap() != *central {
            law.fail("side-effect-freeness differs from centrality".into());
        }
    }
    rep.push(law);

    // coarse-graining produces valid tests
    let mut law = LawResult::new(
        "measurement.coarse-graining",
        "merging outcomes along any assignment yields a valid test",
        Regime::Exhaustive,
    );
    let p = PfnMor::predicate(&[true, false, true]);
    let obs = ms::observable(
        &pfn,
        vec!["in".into(), "out".into()],
        vec![p.clone(), pfn.ortho(&p)],
    )
    .unwrap();
    let lud = ms::luders_instrument(&pfn, &obs).unwrap();
    law.pass_one();
    match ms::coarse_grain(&pfn, &lud, &["merged".into()], &[0, 0]) {
        Ok(merged) => {
            if !pfn.mor_eq(&merged.parts[0], &pfn.id(&3)) {
                law.fail("merging a side-effect-free instrument is not the identity".into());
            }
        }
        Err(err) => {
            law.fail(err.to_string());
        }
    }
    rep.push(law);

    rep
}
