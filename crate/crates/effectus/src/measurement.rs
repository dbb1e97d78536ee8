//! Tests, instruments, experiments, and the measurement-property
//! checkers.
//!
//! A test is a finite outcome-indexed family of morphisms whose domain
//! predicates sum to truth; instruments are endo-tests. Joint outcome
//! distributions of experiments are exact rationals in the deterministic
//! and probabilistic instances and doubles in the quantum one.

use crate::category::{Effectus, LogicEffectus};
use crate::error::{Error, Result};
use crate::logic;
use crate::scalar::Scalar;

/// An outcome-indexed family `(f_x : A → B)` with `⊕ₓ 1f_x = 1`.
#[derive(Clone, Debug)]
pub struct Test<O, M> {
    pub dom: O,
    pub cod: O,
    pub outcomes: Vec<String>,
    pub parts: Vec<M>,
}

impl<O: Clone + Eq + std::fmt::Debug, M: Clone> Test<O, M> {
    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    pub fn is_instrument(&self) -> bool {
        self.dom == self.cod
    }
}

/// Builds a test after validating the truth-sum condition.
pub fn new_test<E: Effectus>(
    e: &E,
    outcomes: Vec<String>,
    parts: Vec<E::Mor>,
) -> Result<Test<E::Obj, E::Mor>> {
    let first = parts
        .first()
        .ok_or_else(|| Error::TypeMismatch("empty test".into()))?;
    let dom = e.dom(first);
    let cod = e.cod(first);
    if outcomes.len() != parts.len() {
        return Err(Error::TypeMismatch("labels and components differ".into()));
    }
    for p in &parts {
        if e.dom(p) != dom || e.cod(p) != cod {
            return Err(Error::TypeMismatch(
                "components have different types".into(),
            ));
        }
    }
    let truths: Vec<E::Mor> = parts.iter().map(|p| e.domain_pred(p)).collect();
    match e.nsum(&truths) {
        Some(total) if e.mor_eq(&total, &e.truth(&dom)) => Ok(Test {
            dom,
            cod,
            outcomes,
            parts,
        }),
        _ => Err(Error::NotObservable),
    }
}

/// An observable: a test into the unit object.
pub fn observable<E: Effectus>(
    e: &E,
    outcomes: Vec<String>,
    predicates: Vec<E::Mor>,
) -> Result<Test<E::Obj, E::Mor>> {
    let t = new_test(e, outcomes, predicates)?;
    if t.cod != e.unit() {
        return Err(Error::NotObservable);
    }
    Ok(t)
}

/// A channel (single-outcome test) from a total morphism.
pub fn channel<E: Effectus>(e: &E, f: E::Mor) -> Result<Test<E::Obj, E::Mor>> {
    if !e.is_total(&f) {
        return Err(Error::NotObservable);
    }
    new_test(e, vec!["*".into()], vec![f])
}

/// The observable measured by a test: `1 ∘ f_x` per outcome.
pub fn measured_observable<E: Effectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Test<E::Obj, E::Mor> {
    Test {
        dom: t.dom.clone(),
        cod: e.unit(),
        outcomes: t.outcomes.clone(),
        parts: t.parts.iter().map(|p| e.domain_pred(p)).collect(),
    }
}

/// Sequential composition `f; g` with outcome set `X × Y`.
pub fn compose_tests<E: Effectus>(
    e: &E,
    f: &Test<E::Obj, E::Mor>,
    g: &Test<E::Obj, E::Mor>,
) -> Result<Test<E::Obj, E::Mor>> {
    if f.cod != g.dom {
        return Err(Error::TypeMismatch(format!(
            "cannot chain tests: {:?} vs {:?}",
            f.cod, g.dom
        )));
    }
    let mut outcomes = Vec::new();
    let mut parts = Vec::new();
    for (xf, pf) in f.outcomes.iter().zip(&f.parts) {
        for (xg, pg) in g.outcomes.iter().zip(&g.parts) {
            outcomes.push(format!("{xf},{xg}"));
            parts.push(e.compose(pg, pf));
        }
    }
    new_test(e, outcomes, parts)
}

/// Coarse-graining along a map of outcome indices: outcome `y` collects
/// the sum of all components mapped onto it.
pub fn coarse_grain<E: Effectus>(
    e: &E,
    t: &Test<E::Obj, E::Mor>,
    onto: &[String],
    assignment: &[usize],
) -> Result<Test<E::Obj, E::Mor>> {
    if assignment.len() != t.arity() || assignment.iter().any(|&y| y >= onto.len()) {
        return Err(Error::TypeMismatch("bad outcome assignment".into()));
    }
    let mut parts = vec![e.zero_mor(&t.dom, &t.cod); onto.len()];
    for (x, &y) in assignment.iter().enumerate() {
        parts[y] = e
            .try_sum(&parts[y], &t.parts[x])
            .expect("test components are summable");
    }
    new_test(e, onto.to_vec(), parts)
}

/// Joint distribution over outcome tuples of an experiment.
#[derive(Clone, Debug)]
pub struct ProbTable<S: Scalar> {
    /// Outcome labels per axis, in experiment order.
    pub axes: Vec<Vec<String>>,
    /// Row-major entries, last axis fastest.
    pub entries: Vec<S>,
}

impl<S: Scalar> ProbTable<S> {
    fn strides(dims: &[usize]) -> Vec<usize> {
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        strides
    }

    pub fn dims(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    pub fn get(&self, tuple: &[usize]) -> &S {
        let strides = Self::strides(&self.dims());
        let idx: usize = tuple.iter().zip(&strides).map(|(t, s)| t * s).sum();
        &self.entries[idx]
    }

    pub fn total(&self) -> S {
        self.entries.iter().fold(S::zero(), |acc, v| acc.add(v))
    }

    /// All index tuples in row-major order.
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        let dims = self.dims();
        let mut out = Vec::with_capacity(self.entries.len());
        let mut current = vec![0usize; dims.len()];
        loop {
            out.push(current.clone());
            let mut i = dims.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                current[i] += 1;
                if current[i] < dims[i] {
                    break;
                }
                current[i] = 0;
                if i == 0 {
                    return out;
                }
            }
        }
    }

    /// Marginal over the kept axes (summing the rest).
    pub fn marginal(&self, keep: &[usize]) -> ProbTable<S> {
        let axes: Vec<Vec<String>> = keep.iter().map(|&i| self.axes[i].clone()).collect();
        let kept_dims: Vec<usize> = axes.iter().map(|a| a.len()).collect();
        let mut entries = vec![S::zero(); kept_dims.iter().product::<usize>().max(1)];
        let strides = Self::strides(&kept_dims);
        for (tuple, v) in self.tuples().iter().zip(&self.entries) {
            let idx: usize = keep
                .iter()
                .zip(&strides)
                .map(|(&axis, s)| tuple[axis] * s)
                .sum();
            entries[idx] = entries[idx].add(v);
        }
        ProbTable { axes, entries }
    }

    /// Conditional `P(target | given)`; entries are undefined (`None`)
    /// where the conditioning marginal vanishes.
    pub fn conditional(&self, target: &[usize], given: &[usize]) -> CondTable<S> {
        let joint_axes: Vec<usize> = target.iter().chain(given).copied().collect();
        let joint = self.marginal(&joint_axes);
        let cond = self.marginal(given);
        let target_len = target.len();
        let entries = joint
            .tuples()
            .iter()
            .zip(&joint.entries)
            .map(|(tuple, v)| {
                let denom = cond.get(&tuple[target_len..]);
                v.div(denom)
            })
            .collect();
        CondTable {
            axes: joint.axes,
            entries,
        }
    }
}

/// A conditional table; `None` marks undefined entries.
#[derive(Clone, Debug)]
pub struct CondTable<S: Scalar> {
    pub axes: Vec<Vec<String>>,
    pub entries: Vec<Option<S>>,
}

/// Runs an experiment: a preparation test followed by composable steps;
/// the system is discarded at the end. Returns a joint table whose axes
/// follow the experiment order.
pub fn run_experiment<E: Effectus>(
    e: &E,
    prep: &Test<E::Obj, E::Mor>,
    steps: &[Test<E::Obj, E::Mor>],
) -> Result<ProbTable<E::Sc>> {
    if prep.dom != e.unit() {
        return Err(Error::TypeMismatch(
            "preparation must start at the unit".into(),
        ));
    }
    let mut axes = vec![prep.outcomes.clone()];
    let mut state = prep.cod.clone();
    for s in steps {
        if s.dom != state {
            return Err(Error::TypeMismatch(format!(
                "step expects {:?} but the system is in {:?}",
                s.dom, state
            )));
        }
        axes.push(s.outcomes.clone());
        state = s.cod.clone();
    }
    let dims: Vec<usize> = axes.iter().map(|a| a.len()).collect();
    let table = ProbTable {
        axes,
        entries: vec![E::Sc::zero(); dims.iter().product::<usize>().max(1)],
    };
    let tuples = table.tuples();
    let mut entries = Vec::with_capacity(tuples.len());
    for tuple in &tuples {
        let mut m = prep.parts[tuple[0]].clone();
        for (s, &x) in steps.iter().zip(&tuple[1..]) {
            m = e.compose(&s.parts[x], &m);
        }
        let closed = e.compose(&e.truth(&e.cod(&m)), &m);
        entries.push(e.scalar_value(&closed));
    }
    Ok(ProbTable {
        axes: table.axes,
        entries,
    })
}

// ---- instrument properties ----

fn require_instrument<O: Clone + Eq + std::fmt::Debug, M: Clone>(t: &Test<O, M>) -> Result<()> {
    if t.is_instrument() {
        Ok(())
    } else {
        Err(Error::NotInstrument)
    }
}

/// Repeatable: cross-outcome composites vanish.
pub fn is_repeatable<E: Effectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    require_instrument(t)?;
    for (x, fx) in t.parts.iter().enumerate() {
        for (y, fy) in t.parts.iter().enumerate() {
            if x != y && !e.is_zero(&e.compose(fy, fx)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Idempotent: each component absorbs itself.
pub fn is_idempotent<E: Effectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    require_instrument(t)?;
    Ok(t.parts.iter().all(|f| e.mor_eq(&e.compose(f, f), f)))
}

/// Side-effect-free: the components sum to the identity.
pub fn is_side_effect_free<E: Effectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    require_instrument(t)?;
    Ok(match e.nsum(&t.parts) {
        Some(total) => e.mor_eq(&total, &e.id(&t.dom)),
        None => false,
    })
}

/// Nondegenerate: the summed instrument is faithful.
pub fn is_nondegenerate<E: LogicEffectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    require_instrument(t)?;
    let total = e.nsum(&t.parts).expect("test components are summable");
    Ok(e.mor_eq(&e.image(&total), &e.truth(&t.dom)))
}

/// Comprehension-side idempotency of every component: `f_x` idempotent
/// and `f_x ∘ π_{1f_x} = π_{1f_x}`.
pub fn is_c_idempotent<E: LogicEffectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    require_instrument(t)?;
    if !is_idempotent(e, t)? {
        return Ok(false);
    }
    Ok(t.parts.iter().all(|f| {
        let c = e.comprehension(&t.dom, &e.domain_pred(f));
        e.mor_eq(&e.compose(f, &c.proj), &c.proj)
    }))
}

/// Quotient-side idempotency of every component: `f_x` idempotent and
/// `ξ_{(1f_x)⊥} ∘ f_x = ξ_{(1f_x)⊥}`.
pub fn is_q_idempotent<E: LogicEffectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    require_instrument(t)?;
    if !is_idempotent(e, t)? {
        return Ok(false);
    }
    Ok(t.parts.iter().all(|f| {
        let q = e.quotient(&t.dom, &e.ortho(&e.domain_pred(f)));
        e.mor_eq(&e.compose(&q.map, f), &q.map)
    }))
}

/// Decidable flag for "repeatable and does not disturb states that make
/// some outcome certain": equivalent to C-idempotency.
pub fn is_c_ideal_repeatable<E: LogicEffectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    is_c_idempotent(e, t)
}

/// Decidable flag for "repeatable and transparent to later observations":
/// Q-idempotent with `im(f_x) = 1f_x` for every outcome.
pub fn is_q_ideal_repeatable<E: LogicEffectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    if !is_q_idempotent(e, t)? {
        return Ok(false);
    }
    Ok(t.parts
        .iter()
        .all(|f| e.mor_eq(&e.image(f), &e.domain_pred(f))))
}

/// Spot check of the raw ideality conditions against witnesses `h` (into
/// the carrier) and `g` (out of it): consistency test for the decidable
/// flags. Returns the first discrepancy.
pub fn spot_check_ideality<E: LogicEffectus>(
    e: &E,
    t: &Test<E::Obj, E::Mor>,
    into: &[E::Mor],
    out_of: &[E::Mor],
) -> Result<Option<String>> {
    require_instrument(t)?;
    let c_flag = is_c_ideal_repeatable(e, t)?;
    let q_flag = is_q_ideal_repeatable(e, t)?;
    let repeatable = is_repeatable(e, t)?;
    for (xp, fxp) in t.parts.iter().enumerate() {
        // C-ideality instance: h with f_x ∘ h = 0 for all x ≠ x'
        for h in into {
            if e.cod(h) != t.dom {
                continue;
            }
            let silent = t
                .parts
                .iter()
                .enumerate()
                .all(|(x, fx)| x == xp || e.is_zero(&e.compose(fx, h)));
            if silent && c_flag && repeatable && !e.mor_eq(&e.compose(fxp, h), h) {
                return Ok(Some(format!(
                    "flagged C-ideal but outcome {xp} disturbs a silent witness"
                )));
            }
        }
        // Q-ideality instance: g with g ∘ f_x = 0 for all x ≠ x'
        for g in out_of {
            if e.dom(g) != t.dom {
                continue;
            }
            let silent = t
                .parts
                .iter()
                .enumerate()
                .all(|(x, fx)| x == xp || e.is_zero(&e.compose(g, fx)));
            if silent && q_flag && repeatable && !e.mor_eq(&e.compose(g, fxp), g) {
                return Ok(Some(format!(
                    "flagged Q-ideal but outcome {xp} is visible to a silent witness"
                )));
            }
        }
    }
    Ok(None)
}

// ---- Boolean idempotents ----

/// The complement of a Boolean idempotent: the unique `g` with
/// `f ⊕ g = id` and `f∘g = 0 = g∘f`. `None` when `f` is not Boolean.
pub fn boolean_complement<E: Effectus>(e: &E, f: &E::Mor) -> Option<E::Mor> {
    let a = e.dom(f);
    if a != e.cod(f) {
        return None;
    }
    let g = e.mor_sub(&e.id(&a), f)?;
    if e.is_zero(&e.compose(f, &g)) && e.is_zero(&e.compose(&g, f)) {
        Some(g)
    } else {
        None
    }
}

pub fn is_boolean_idempotent<E: Effectus>(e: &E, f: &E::Mor) -> bool {
    boolean_complement(e, f).is_some()
}

/// Meet of Boolean idempotents: composition.
pub fn boolean_meet<E: Effectus>(e: &E, f: &E::Mor, g: &E::Mor) -> E::Mor {
    e.compose(f, g)
}

/// Join of Boolean idempotents: `f ⊕ f⊥ ∘ g`.
pub fn boolean_join<E: Effectus>(e: &E, f: &E::Mor, g: &E::Mor) -> Option<E::Mor> {
    let fc = boolean_complement(e, f)?;
    e.try_sum(f, &e.compose(&fc, g))
}

/// Boolean instrument: repeatable and side-effect-free.
pub fn is_boolean_instrument<E: Effectus>(e: &E, t: &Test<E::Obj, E::Mor>) -> Result<bool> {
    Ok(is_repeatable(e, t)? && is_side_effect_free(e, t)?)
}

// ---- assert-map instruments ----

/// The instrument asserting a sharp observable, built from the
/// comprehension/quotient splitting of each effect.
pub fn luders_instrument<E: LogicEffectus>(
    e: &E,
    obs: &Test<E::Obj, E::Mor>,
) -> Result<Test<E::Obj, E::Mor>> {
    if obs.cod != e.unit() {
        return Err(Error::NotObservable);
    }
    let a = obs.dom.clone();
    let mut parts = Vec::with_capacity(obs.arity());
    for p in &obs.parts {
        if !logic::is_sharp(e, &a, p) {
            return Err(Error::NotSharp);
        }
        parts.push(logic::asrt_sharp(e, &a, p)?);
    }
    new_test(e, obs.outcomes.clone(), parts)
}

/// The assert instrument of an arbitrary observable, via the instance's
/// generalized assert maps; repeatable exactly when the observable is
/// sharp.
pub fn generalized_luders_instrument<E: LogicEffectus>(
    e: &E,
    obs: &Test<E::Obj, E::Mor>,
) -> Result<Test<E::Obj, E::Mor>> {
    if obs.cod != e.unit() {
        return Err(Error::NotObservable);
    }
    let parts = obs
        .parts
        .iter()
        .map(|p| e.asrt_general(&obs.dom, p))
        .collect();
    new_test(e, obs.outcomes.clone(), parts)
}

/// Uniqueness of ideal repeatable instruments on a common observable:
/// when `f` is repeatable and Q-ideal and `g` is C-ideal, they are equal.
/// Errors if the observables differ; `Ok(None)` when the hypotheses do
/// not apply.
pub fn check_uniqueness_cq<E: LogicEffectus>(
    e: &E,
    f: &Test<E::Obj, E::Mor>,
    g: &Test<E::Obj, E::Mor>,
) -> Result<Option<bool>> {
    require_instrument(f)?;
    require_instrument(g)?;
    if f.arity() != g.arity() {
        return Err(Error::TypeMismatch("different outcome sets".into()));
    }
    for (pf, pg) in f.parts.iter().zip(&g.parts) {
        if !e.mor_eq(&e.domain_pred(pf), &e.domain_pred(pg)) {
            return Err(Error::TypeMismatch("different measured observables".into()));
        }
    }
    if is_repeatable(e, f)? && is_q_ideal_repeatable(e, f)? && is_c_ideal_repeatable(e, g)? {
        let equal = f
            .parts
            .iter()
            .zip(&g.parts)
            .all(|(pf, pg)| e.mor_eq(pf, pg));
        Ok(Some(equal))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfn::{Pfn, PfnMor};
    use crate::prob::{Prob, ProbMor};
    use crate::scalar::Rat;

    fn two_outcome_pfn(p: &PfnMor) -> Test<usize, PfnMor> {
        let e = Pfn;
        observable(
            &e,
            vec!["yes".into(), "no".into()],
            vec![p.clone(), e.ortho(p)],
        )
        .unwrap()
    }

    #[test]
    fn tests_require_truth_sum() {
        let e = Pfn;
        let p = PfnMor::predicate(&[true, false]);
        assert!(observable(&e, vec!["a".into(), "b".into()], vec![p.clone(), p.clone()]).is_err());
        assert!(two_outcome_pfn(&p).arity() == 2);
    }

    #[test]
    fn composing_with_the_singleton_identity_is_neutral_up_to_labels() {
        let e = Pfn;
        let p = PfnMor::predicate(&[true, false]);
        let obs = two_outcome_pfn(&p);
        let lud = luders_instrument(&e, &obs).unwrap();
        let idt = channel(&e, e.id(&2)).unwrap();
        let composed = compose_tests(&e, &lud, &idt).unwrap();
        assert_eq!(composed.parts, lud.parts);
    }

    #[test]
    fn probabilistic_composite_truths_sum_to_one_exactly() {
        let e = Prob;
        let half = ProbMor::predicate(&[Rat::new(1, 2), Rat::new(1, 4)]);
        let obs1 = observable(
            &e,
            vec!["0".into(), "1".into()],
            vec![half.clone(), e.ortho(&half)],
        )
        .unwrap();
        let inst1 = generalized_luders_instrument(&e, &obs1).unwrap();
        let third = ProbMor::predicate(&[Rat::new(1, 3), Rat::new(2, 3)]);
        let obs2 = observable(
            &e,
            vec!["0".into(), "1".into()],
            vec![third.clone(), e.ortho(&third)],
        )
        .unwrap();
        let inst2 = generalized_luders_instrument(&e, &obs2).unwrap();
        let composed = compose_tests(&e, &inst1, &inst2).unwrap();
        assert_eq!(composed.arity(), 4);
        let truths: Vec<ProbMor> = composed.parts.iter().map(|p| e.domain_pred(p)).collect();
        assert_eq!(e.nsum(&truths).unwrap(), e.truth(&2));
    }

    #[test]
    fn born_rule_table_for_a_two_outcome_observable() {
        let e = Prob;
        let omega = channel(&e, ProbMor::uniform(2)).unwrap();
        let p = ProbMor::predicate(&[Rat::one(), Rat::zero()]);
        let obs = observable(
            &e,
            vec!["p".into(), "not-p".into()],
            vec![p.clone(), e.ortho(&p)],
        )
        .unwrap();
        let table = run_experiment(&e, &omega, &[obs]).unwrap();
        assert_eq!(table.entries, vec![Rat::new(1, 2), Rat::new(1, 2)]);
        assert_eq!(table.total(), Rat::one());
    }

    #[test]
    fn marginals_drop_the_last_step() {
        let e = Prob;
        let omega = channel(&e, ProbMor::uniform(2)).unwrap();
        let half = ProbMor::predicate(&[Rat::new(1, 2), Rat::new(1, 2)]);
        let obs = observable(
            &e,
            vec!["h".into(), "t".into()],
            vec![half.clone(), e.ortho(&half)],
        )
        .unwrap();
        let inst = generalized_luders_instrument(&e, &obs).unwrap();
        let full = run_experiment(&e, &omega, &[inst.clone(), obs.clone()]).unwrap();
        let truncated = run_experiment(&e, &omega, &[inst]).unwrap();
        // marginalizing the final axis reproduces the truncated experiment
        let marg = full.marginal(&[0, 1]);
        assert_eq!(marg.entries, truncated.entries);
        // conditionals multiply back: P(x|y)·P(y) = P(x,y)
        let cond = full.conditional(&[2], &[1]);
        let py = full.marginal(&[1]);
        for (i, t) in cond.axes[1].iter().enumerate() {
            let _ = t;
            for (j, _) in cond.axes[0].iter().enumerate() {
                if let Some(c) = &cond.entries[j * cond.axes[1].len() + i] {
                    let joint = full.marginal(&[2, 1]);
                    assert_eq!(c.mul(py.get(&[i])), *joint.get(&[j, i]));
                }
            }
        }
    }

    #[test]
    fn conditioning_on_a_null_event_is_undefined() {
        let e = Prob;
        let omega = channel(&e, ProbMor::substate(&[Rat::one(), Rat::zero()])).unwrap();
        let point = ProbMor::predicate(&[Rat::one(), Rat::zero()]);
        let obs = observable(
            &e,
            vec!["0".into(), "1".into()],
            vec![point.clone(), e.ortho(&point)],
        )
        .unwrap();
        let table = run_experiment(&e, &omega, &[obs]).unwrap();
        let cond = table.conditional(&[0], &[1]);
        // P(· | outcome 1) is undefined: the conditioning mass is zero
        assert!(cond.entries[1].is_none());
        assert!(cond.entries[0].is_some());
    }

    #[test]
    fn partition_instruments_are_boolean() {
        let e = Pfn;
        let p = PfnMor::predicate(&[true, false, true]);
        let obs = observable(
            &e,
            vec!["in".into(), "out".into()],
            vec![p.clone(), e.ortho(&p)],
        )
        .unwrap();
        let lud = luders_instrument(&e, &obs).unwrap();
        assert!(is_repeatable(&e, &lud).unwrap());
        assert!(is_idempotent(&e, &lud).unwrap());
        assert!(is_side_effect_free(&e, &lud).unwrap());
        assert!(is_boolean_instrument(&e, &lud).unwrap());
        assert!(is_c_ideal_repeatable(&e, &lud).unwrap());
        assert!(is_q_ideal_repeatable(&e, &lud).unwrap());
        // complement of asrt_P is asrt_{P^c}
        let comp = boolean_complement(&e, &lud.parts[0]).unwrap();
        assert_eq!(comp, lud.parts[1]);
    }

    #[test]
    fn the_singleton_observable_is_measured_by_the_identity_alone() {
        let e = Pfn;
        let obs = observable(&e, vec!["*".into()], vec![e.truth(&3)]).unwrap();
        let lud = luders_instrument(&e, &obs).unwrap();
        assert_eq!(lud.parts[0], e.id(&3));
        // any single-outcome instrument passing the quotient-side flag is
        // the identity
        for f in e.enumerate_homset(3, 3, 100_000).unwrap() {
            let Ok(t) = new_test(&e, vec!["*".into()], vec![f.clone()]) else {
                continue;
            };
            if is_q_idempotent(&e, &t).unwrap() {
                assert_eq!(f, e.id(&3));
            }
        }
    }

    #[test]
    fn composing_a_sharp_assert_instrument_with_itself_is_diagonal() {
        let e = Pfn;
        let p = PfnMor::predicate(&[true, false, true]);
        let obs = observable(
            &e,
            vec!["in".into(), "out".into()],
            vec![p.clone(), e.ortho(&p)],
        )
        .unwrap();
        let lud = luders_instrument(&e, &obs).unwrap();
        let twice = compose_tests(&e, &lud, &lud).unwrap();
        // off-diagonal outcome pairs never occur
        for (label, part) in twice.outcomes.iter().zip(&twice.parts) {
            let diagonal = label == "in,in" || label == "out,out";
            assert_eq!(!e.is_zero(part), diagonal, "{label}");
        }
    }

    #[test]
    fn fuzzy_assert_instruments_are_not_repeatable() {
        let e = Prob;
        let p = ProbMor::predicate(&[Rat::new(3, 4), Rat::new(1, 4)]);
        let obs = observable(
            &e,
            vec!["0".into(), "1".into()],
            vec![p.clone(), e.ortho(&p)],
        )
        .unwrap();
        let inst = generalized_luders_instrument(&e, &obs).unwrap();
        assert!(!is_repeatable(&e, &inst).unwrap());
        assert!(!is_idempotent(&e, &inst).unwrap());
        // but it is side-effect-free: the asserts sum to the identity
        assert!(is_side_effect_free(&e, &inst).unwrap());
    }

    #[test]
    fn uniqueness_applies_to_two_constructions_of_the_same_instrument() {
        let e = Pfn;
        let p = PfnMor::predicate(&[true, false, true]);
        let obs = two_outcome_partition(&e, &p);
        let by_splitting = luders_instrument(&e, &obs).unwrap();
        let direct = generalized_luders_instrument(&e, &obs).unwrap();
        assert_eq!(
            check_uniqueness_cq(&e, &by_splitting, &direct).unwrap(),
            Some(true)
        );
    }

    fn two_outcome_partition(e: &Pfn, p: &PfnMor) -> Test<usize, PfnMor> {
        observable(
            e,
            vec!["in".into(), "out".into()],
            vec![p.clone(), e.ortho(p)],
        )
        .unwrap()
    }
}
