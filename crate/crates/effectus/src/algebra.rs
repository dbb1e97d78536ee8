//! Finite effect algebras and their law suites.
//!
//! Carriers are integer-indexed and partial sums are dense two-dimensional
//! tables with `None` as the "undefined" sentinel, so exhaustive law
//! checking is O(1) per lookup. Order and meets are computed by scan, never
//! cached; carriers above the configured bound are refused.

pub mod weight;

use crate::error::{Error, Result};
use crate::exec::RunCfg;
use crate::report::{LawReport, LawResult, Regime};
use crate::scalar::{Rat, Scalar};
use serde::{Deserialize, Serialize};

/// A finite partial commutative monoid: carrier `{0, …, size-1}`, a zero
/// element, and a dense partial sum table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pcm {
    size: usize,
    zero: usize,
    sum: Vec<Option<usize>>,
}

impl Pcm {
    pub fn new(size: usize, zero: usize, sum: Vec<Option<usize>>) -> Result<Self> {
        if sum.len() != size * size {
            return Err(Error::InvalidTable(format!(
                "sum table has {} entries, expected {}",
                sum.len(),
                size * size
            )));
        }
        if zero >= size || sum.iter().flatten().any(|&v| v >= size) {
            return Err(Error::InvalidTable("element id out of range".into()));
        }
        Ok(Pcm { size, zero, sum })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a * self.size + b]
    }

    pub fn summable(&self, a: usize, b: usize) -> bool {
        self.sum(a, b).is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + Clone {
        0..self.size
    }
}

/// A finite effect algebra: a PCM with a top element; orthosupplements are
/// recovered from the table on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectAlgebra {
    base: Pcm,
    top: usize,
    ortho: Vec<usize>,
}

impl EffectAlgebra {
    /// Builds the algebra and resolves orthosupplements. Fails if some
    /// element has no complement or more than one; the full law suite is
    /// *not* run here — see [`EffectAlgebra::law_suite`] and
    /// [`load_effect_algebra`].
    pub fn new(base: Pcm, top: usize) -> Result<Self> {
        if top >= base.size() {
            return Err(Error::InvalidTable("top out of range".into()));
        }
        let mut ortho = Vec::with_capacity(base.size());
        for a in base.elements() {
            let mut found = None;
            for b in base.elements() {
                if base.sum(a, b) == Some(top) {
                    if found.is_some() {
                        return Err(Error::InvalidTable(format!(
                            "element {a} has more than one orthosupplement"
                        )));
                    }
                    found = Some(b);
                }
            }
            match found {
                Some(b) => ortho.push(b),
                None => {
                    return Err(Error::InvalidTable(format!(
                        "element {a} has no orthosupplement"
                    )))
                }
            }
        }
        Ok(EffectAlgebra { base, top, ortho })
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn zero(&self) -> usize {
        self.base.zero()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.base.sum(a, b)
    }

    pub fn summable(&self, a: usize, b: usize) -> bool {
        self.base.summable(a, b)
    }

    pub fn ortho(&self, a: usize) -> usize {
        self.ortho[a]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + Clone {
        self.base.elements()
    }

    /// Algebraic order: `a ≤ b` iff some `c` has `a ⊕ c = b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements().any(|c| self.sum(a, c) == Some(b))
    }

    /// The unique `c` with `a ⊕ c = b`, when `a ≤ b`.
    pub fn difference(&self, b: usize, a: usize) -> Result<usize> {
        self.elements()
            .find(|&c| self.sum(a, c) == Some(b))
            .ok_or(Error::NotBelow)
    }

    /// Greatest lower bound by exhaustive scan, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = self
            .elements()
            .filter(|&c| self.leq(c, a) && self.leq(c, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&c| self.leq(c, m)))
    }

    /// Least upper bound by exhaustive scan, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = self
            .elements()
            .filter(|&c| self.leq(a, c) && self.leq(b, c))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&j| upper.iter().all(|&c| self.leq(j, c)))
    }

    pub fn is_lattice(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some())
        })
    }

    /// `a` and `b` are disjoint when their only common lower bound is zero.
    pub fn disjoint(&self, a: usize, b: usize) -> bool {
        self.elements()
            .all(|c| !(self.leq(c, a) && self.leq(c, b)) || c == self.zero())
    }

    /// Ortho-sharp: disjoint from its own orthosupplement.
    pub fn is_ortho_sharp(&self, a: usize) -> bool {
        self.disjoint(a, self.ortho(a))
    }

    /// Searches for summable `a', b', c` with `a = a' ⊕ c` and `b = b' ⊕ c`.
    pub fn mackey_witness(&self, a: usize, b: usize) -> Option<(usize, usize, usize)> {
        for c in self.elements() {
            for ap in self.elements() {
                if self.sum(ap, c) != Some(a) {
                    continue;
                }
                for bp in self.elements() {
                    if self.sum(bp, c) != Some(b) {
                        continue;
                    }
                    // joint summability of (a', b', c)
                    if let Some(s) = self.sum(ap, bp) {
                        if self.summable(s, c) {
                            return Some((ap, bp, c));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn has_mackey_property(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mackey_witness(a, b).is_some()))
    }

    /// Truncated addition `a + b := a ⊕ (a⊥ ∧ b)` on a lattice effect
    /// algebra with the Mackey property.
    pub fn mv_add(&self, a: usize, b: usize) -> Result<usize> {
        let m = self
            .meet(self.ortho(a), b)
            .ok_or_else(|| Error::NotLattice(format!("no meet of {}⊥ and {}", a, b)))?;
        self.sum(a, m)
            .ok_or_else(|| Error::NotMackey(format!("{a} and {}∧{b} not summable", self.ortho(a))))
    }

    /// Exhaustive law suite: PCM laws, effect-algebra laws, derived order
    /// laws, and the orthosupplement calculus.
    pub fn law_suite(&self, cfg: &RunCfg) -> Result<LawReport> {
        if self.size() > cfg.max_size {
            return Err(Error::TooLarge {
                size: self.size(),
                bound: cfg.max_size,
            });
        }
        let mut rep = LawReport::new("effect-algebra");
        let n = self.size();
        let regime = Regime::Exhaustive;

        let mut law = LawResult::new(
            "ea.commutativity",
            "x ⊥ y implies y ⊥ x and x⊕y = y⊕x",
            regime.clone(),
        );
        for a in 0..n {
            for b in 0..n {
                law.pass_one();
                if self.sum(a, b) != self.sum(b, a) {
                    law.fail(format!("a={a}, b={b}"));
                }
            }
        }
        rep.push(law);

        let mut law = LawResult::new(
            "ea.associativity",
            "x ⊥ y and x⊕y ⊥ z imply y ⊥ z, x ⊥ (y⊕z), and (x⊕y)⊕z = x⊕(y⊕z)",
            regime.clone(),
        );
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.sum(a, b) else { continue };
                for c in 0..n {
                    law.pass_one();
                    if let Some(abc) = self.sum(ab, c) {
                        match self.sum(b, c).and_then(|bc| self.sum(a, bc)) {
                            Some(v) if v == abc => {}
                            _ => {
                                law.fail(format!("a={a}, b={b}, c={c}"));
                            }
                        }
                    }
                }
            }
        }
        rep.push(law);

        let mut law = LawResult::new("ea.unit", "0 ⊥ x and 0⊕x = x", regime.clone());
        for a in 0..n {
            law.pass_one();
            if self.sum(self.zero(), a) != Some(a) {
                law.fail(format!("a={a}"));
            }
        }
        rep.push(law);

        let mut law = LawResult::new("ea.positivity", "a⊕b = 0 implies a = b = 0", regime.clone());
        for a in 0..n {
            for b in 0..n {
                law.pass_one();
                if self.sum(a, b) == Some(self.zero()) && (a != self.zero() || b != self.zero()) {
                    law.fail(format!("a={a}, b={b}"));
                }
            }
        }
        rep.push(law);

        let mut law = LawResult::new(
            "ea.cancellativity",
            "a⊕c = b⊕c implies a = b",
            regime.clone(),
        );
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    law.pass_one();
                    if let (Some(x), Some(y)) = (self.sum(a, c), self.sum(b, c)) {
                        if x == y && a != b {
                            law.fail(format!("a={a}, b={b}, c={c}"));
                        }
                    }
                }
            }
        }
        rep.push(law);

        let mut law = LawResult::new(
            "ea.unique-orthosupplement",
            "each a has exactly one b with a⊕b = 1",
            regime.clone(),
        );
        for a in 0..n {
            law.pass_one();
            let count = (0..n)
                .filter(|&b| self.sum(a, b) == Some(self.top()))
                .count();
            if count != 1 {
                law.fail(format!("a={a} has {count} orthosupplements"));
            }
        }
        rep.push(law);

        let mut law = LawResult::new("ea.zero-one", "a ⊥ 1 implies a = 0", regime.clone());
        for a in 0..n {
            law.pass_one();
            if self.summable(a, self.top()) && a != self.zero() {
                law.fail(format!("a={a}"));
            }
        }
        rep.push(law);

        let mut law = LawResult::new("ea.involution", "a⊥⊥ = a", regime.clone());
        for a in 0..n {
            law.pass_one();
            if self.ortho(self.ortho(a)) != a {
                law.fail(format!("a={a}"));
            }
        }
        rep.push(law);

        let mut law = LawResult::new(
            "ea.order",
            "a ≤ b iff some c has a⊕c = b: a partial order with bottom 0 and top 1",
            regime.clone(),
        );
        for a in 0..n {
            law.pass_one();
            if !self.leq(self.zero(), a) || !self.leq(a, self.top()) || !self.leq(a, a) {
                law.fail(format!("bounds/reflexivity at a={a}"));
            }
            for b in 0..n {
                if self.leq(a, b) && self.leq(b, a) && a != b {
                    law.fail(format!("antisymmetry: a={a}, b={b}"));
                }
                for c in 0..n {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        law.fail(format!("transitivity: a={a}, b={b}, c={c}"));
                    }
                }
            }
        }
        rep.push(law);

        let mut law = LawResult::new(
            "ea.ortho-antitone",
            "a ≤ b iff b⊥ ≤ a⊥, and 0⊥ = 1",
            regime.clone(),
        );
        law.pass_one();
        if self.ortho(self.zero()) != self.top() {
            law.fail("0⊥ ≠ 1".into());
        }
        for a in 0..n {
            for b in 0..n {
                law.pass_one();
                if self.leq(a, b) != self.leq(self.ortho(b), self.ortho(a)) {
                    law.fail(format!("a={a}, b={b}"));
                }
            }
        }
        rep.push(law);

        Ok(rep)
    }

    /// Exhaustive check of the three truncated-addition axioms, given a
    /// lattice algebra in which every pair is Mackey compatible.
    pub fn mv_law_suite(&self, cfg: &RunCfg) -> Result<LawReport> {
        if self.size() > cfg.max_size {
            return Err(Error::TooLarge {
                size: self.size(),
                bound: cfg.max_size,
            });
        }
        if !self.is_lattice() {
            return Err(Error::NotLattice("binary meets or joins missing".into()));
        }
        if !self.has_mackey_property() {
            return Err(Error::NotMackey(
                "some pair has no common refinement".into(),
            ));
        }
        let mut rep = LawReport::new("mv");
        let n = self.size();
        let regime = Regime::Exhaustive;

        let mut law = LawResult::new("mv.involution", "a⊥⊥ = a", regime.clone());
        for a in 0..n {
            law.pass_one();
            if self.ortho(self.ortho(a)) != a {
                law.fail(format!("a={a}"));
            }
        }
        rep.push(law);

        let mut law = LawResult::new("mv.absorb-top", "a + 0⊥ = 0⊥", regime.clone());
        for a in 0..n {
            law.pass_one();
            if self.mv_add(a, self.top())? != self.top() {
                law.fail(format!("a={a}"));
            }
        }
        rep.push(law);

        let mut law = LawResult::new(
            "mv.lukasiewicz",
            "(a⊥ + b)⊥ + b = (b⊥ + a)⊥ + a",
            regime.clone(),
        );
        for a in 0..n {
            for b in 0..n {
                law.pass_one();
                let lhs = self.mv_add(self.ortho(self.mv_add(self.ortho(a), b)?), b)?;
                let rhs = self.mv_add(self.ortho(self.mv_add(self.ortho(b), a)?), a)?;
                if lhs != rhs {
                    law.fail(format!("a={a}, b={b}"));
                }
            }
        }
        rep.push(law);

        // Commutative-monoid laws of the truncated addition.
        let mut law = LawResult::new(
            "mv.monoid",
            "+ is a commutative monoid with unit 0",
            regime.clone(),
        );
        for a in 0..n {
            law.pass_one();
            if self.mv_add(a, self.zero())? != a {
                law.fail(format!("unit at a={a}"));
            }
            for b in 0..n {
                if self.mv_add(a, b)? != self.mv_add(b, a)? {
                    law.fail(format!("commutativity: a={a}, b={b}"));
                }
                for c in 0..n {
                    let l = self.mv_add(self.mv_add(a, b)?, c)?;
                    let r = self.mv_add(a, self.mv_add(b, c)?)?;
                    if l != r {
                        law.fail(format!("associativity: a={a}, b={b}, c={c}"));
                    }
                }
            }
        }
        rep.push(law);

        Ok(rep)
    }

    /// The three-way equivalence on finite lattice effect algebras:
    /// all elements ortho-sharp ⟺ (a ⊥ a ⇒ a = 0) ⟺ (a ⊥ b ⇒ a⊕b = a∨b).
    pub fn orthoalgebra_equivalence(&self) -> Option<String> {
        let all_sharp = self.elements().all(|a| self.is_ortho_sharp(a));
        let no_self_sum = self
            .elements()
            .all(|a| !self.summable(a, a) || a == self.zero());
        let sum_is_join = self.elements().all(|a| {
            self.elements().all(|b| match self.sum(a, b) {
                Some(s) => self.join(a, b) == Some(s),
                None => true,
            })
        });
        if all_sharp == no_self_sum && no_self_sum == sum_is_join {
            None
        } else {
            Some(format!(
                "ortho-sharp: {all_sharp}, self-summable-only-zero: {no_self_sum}, sum=join: {sum_is_join}"
            ))
        }
    }
}

/// The powerset algebra of an `n`-element set; ids are bitmasks.
pub fn boolean_algebra(n: usize) -> EffectAlgebra {
    assert!(n <= 8, "powerset carrier would exceed the size bound");
    let size = 1usize << n;
    let mut sum = vec![None; size * size];
    for a in 0..size {
        for b in 0..size {
            if a & b == 0 {
                sum[a * size + b] = Some(a | b);
            }
        }
    }
    EffectAlgebra::new(Pcm::new(size, 0, sum).unwrap(), size - 1).unwrap()
}

/// The chain `{0, 1/n, …, 1}` with truncation-free partial addition.
pub fn grid_algebra(n: usize) -> EffectAlgebra {
    let size = n + 1;
    let mut sum = vec![None; size * size];
    for a in 0..size {
        for b in 0..size {
            if a + b <= n {
                sum[a * size + b] = Some(a + b);
            }
        }
    }
    EffectAlgebra::new(Pcm::new(size, 0, sum).unwrap(), n).unwrap()
}

/// The four-element algebra `{0, a, a⊥, 1}` in which `a ⊕ a` is undefined.
pub fn four_element_algebra() -> EffectAlgebra {
    // ids: 0 ↦ 0, 1 ↦ a, 2 ↦ a⊥, 3 ↦ 1
    let size = 4;
    let mut sum = vec![None; size * size];
    let mut set = |a: usize, b: usize, v: usize| {
        sum[a * size + b] = Some(v);
        sum[b * size + a] = Some(v);
    };
    for x in 0..size {
        set(0, x, x);
    }
    set(1, 2, 3);
    EffectAlgebra::new(Pcm::new(size, 0, sum).unwrap(), 3).unwrap()
}

/// Scalar value of a grid element `k/n`.
pub fn grid_value(alg_n: usize, k: usize) -> Rat {
    Rat::new(k as i64, alg_n.max(1) as i64)
}

/// Serialized form of a finite effect algebra.
#[derive(Serialize, Deserialize)]
pub struct EffectAlgebraDoc {
    pub carrier: usize,
    pub zero: usize,
    pub top: usize,
    pub sum: Vec<Vec<Option<usize>>>,
}

/// Loads an algebra from its JSON document and runs the full law suite,
/// rejecting invalid tables.
pub fn load_effect_algebra(doc: &EffectAlgebraDoc, cfg: &RunCfg) -> Result<EffectAlgebra> {
    if doc.sum.len() != doc.carrier || doc.sum.iter().any(|r| r.len() != doc.carrier) {
        return Err(Error::InvalidTable(
            "sum table is not carrier × carrier".into(),
        ));
    }
    let flat: Vec<Option<usize>> = doc.sum.iter().flatten().copied().collect();
    let alg = EffectAlgebra::new(Pcm::new(doc.carrier, doc.zero, flat)?, doc.top)?;
    let rep = alg.law_suite(cfg)?;
    if let Some(first) = rep.failures().next() {
        return Err(Error::InvalidTable(format!(
            "law {} fails: {}",
            first.id,
            first.witness.clone().unwrap_or_default()
        )));
    }
    Ok(alg)
}

pub fn load_effect_algebra_json(json: &str, cfg: &RunCfg) -> Result<EffectAlgebra> {
    let doc: EffectAlgebraDoc = serde_json::from_str(json)?;
    load_effect_algebra(&doc, cfg)
}

/// Division in the unit interval: the unique `q` with `t · q = s`, for
/// `s ≤ t` and `t ≠ 0`.
pub fn unit_div<S: Scalar>(t: &S, s: &S) -> Result<S> {
    if s > t {
        return Err(Error::NotBelow);
    }
    s.div(t).ok_or(Error::ZeroElement)
}

/// Effect-monoid laws of a sampled set of unit-interval scalars:
/// multiplication is a monoid and distributes over the partial sum.
pub fn effect_monoid_laws<S: Scalar>(scalars: &[S], suite: &str) -> LawReport {
    let mut rep = LawReport::new(suite);
    let regime = Regime::Exhaustive;
    let one = S::one();

    let mut law = LawResult::new(
        "em.monoid",
        "multiplication is associative with unit 1",
        regime.clone(),
    );
    for s in scalars {
        law.pass_one();
        if s.mul(&one) != *s || one.mul(s) != *s {
            law.fail(format!("unit at {:?}", s));
        }
        for t in scalars {
            for u in scalars {
                if s.mul(&t.mul(u)) != s.mul(t).mul(u) {
                    law.fail(format!("assoc at {:?},{:?},{:?}", s, t, u));
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "em.bimorphism",
        "s·(t⊕u) = s·t ⊕ s·u and (t⊕u)·s = t·s ⊕ u·s where defined, and s·0 = 0",
        regime.clone(),
    );
    let zero = S::zero();
    for s in scalars {
        law.pass_one();
        if s.mul(&zero) != zero || zero.mul(s) != zero {
            law.fail(format!("zero at {:?}", s));
        }
        for t in scalars {
            for u in scalars {
                if t.add(u) <= one {
                    let sum = t.add(u);
                    if s.mul(&sum) != s.mul(t).add(&s.mul(u))
                        || sum.mul(s) != t.mul(s).add(&u.mul(s))
                    {
                        law.fail(format!("distributivity at {:?},{:?},{:?}", s, t, u));
                    }
                }
            }
        }
    }
    rep.push(law);

    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunCfg {
        RunCfg::default()
    }

    #[test]
    fn grid_eighths_passes_all_laws() {
        let alg = grid_algebra(8);
        let rep = alg.law_suite(&cfg()).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().next());
    }

    #[test]
    fn four_element_algebra_passes_all_laws() {
        let alg = four_element_algebra();
        let rep = alg.law_suite(&cfg()).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().next());
        // a ⊕ a is undefined by construction
        assert!(!alg.summable(1, 1));
    }

    #[test]
    fn corrupted_table_is_rejected_with_witness() {
        // Make ortho(a) non-unique in the powerset of {0,1}: also allow
        // {0} ⊕ {0,1}\{} = 1 by corrupting one entry.
        let good = boolean_algebra(2);
        let n = good.size();
        let mut sum: Vec<Vec<Option<usize>>> = (0..n)
            .map(|a| (0..n).map(|b| good.sum(a, b)).collect())
            .collect();
        sum[1][3] = Some(3); // {0} ⊕ {0,1} = {0,1}: second orthosupplement for {0}
        sum[3][1] = Some(3);
        let doc = EffectAlgebraDoc {
            carrier: n,
            zero: 0,
            top: 3,
            sum,
        };
        let err = load_effect_algebra(&doc, &cfg()).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("orthosupplement") || msg.contains("zero-one"),
            "{msg}"
        );
    }

    #[test]
    fn difference_matches_real_subtraction_on_the_grid() {
        // 0.7 ⊖ 0.3 = 0.4 on the tenths grid
        let alg = grid_algebra(10);
        assert_eq!(alg.difference(7, 3).unwrap(), 4);
        // b ⊖ 0 = b
        for b in alg.elements() {
            assert_eq!(alg.difference(b, 0).unwrap(), b);
        }
        assert!(matches!(alg.difference(3, 7), Err(Error::NotBelow)));
    }

    #[test]
    fn difference_is_complement_in_the_powerset() {
        // {1,2,3} ⊖ {1} = {2,3} in P({1,2,3}) with bitmask ids
        let alg = boolean_algebra(3);
        assert_eq!(alg.difference(0b111, 0b001).unwrap(), 0b110);
    }

    #[test]
    fn mackey_witnesses() {
        // Boolean algebra P({1,2}): a={1}, b={1,2} → (∅, {2}, {1})
        let alg = boolean_algebra(2);
        let (ap, bp, c) = alg.mackey_witness(0b01, 0b11).unwrap();
        assert_eq!((ap, bp, c), (0b00, 0b10, 0b01));
        // zero case: a = 0 gives witness (0, b, 0)
        assert_eq!(alg.mackey_witness(0, 0b10).unwrap(), (0, 0b10, 0));
        // grid: a = 1/2, b = 3/4 on the eighths grid; brute force finds
        // some decomposition a = a'⊕c, b = b'⊕c with a'⊕b'⊕c defined
        let grid = grid_algebra(8);
        let (ap, bp, c) = grid.mackey_witness(4, 6).unwrap();
        assert_eq!(ap + c, 4);
        assert_eq!(bp + c, 6);
        assert!(ap + bp + c <= 8);
    }

    #[test]
    fn mv_add_is_truncated_addition_on_grids_and_join_on_powersets() {
        let grid = grid_algebra(4);
        // 1/2 + 3/4 = 1
        assert_eq!(grid.mv_add(2, 3).unwrap(), 4);
        for a in grid.elements() {
            assert_eq!(grid.mv_add(a, 0).unwrap(), a);
        }
        let alg = boolean_algebra(2);
        assert_eq!(alg.mv_add(0b01, 0b11).unwrap(), 0b11);
    }

    #[test]
    fn mv_laws_pass_on_grids_up_to_seventeen_elements() {
        for n in [1usize, 2, 3, 5, 8, 16] {
            let alg = grid_algebra(n);
            let rep = alg.mv_law_suite(&cfg()).unwrap();
            assert!(rep.all_passed(), "grid {n}: {:?}", rep.failures().next());
        }
    }

    #[test]
    fn orthoalgebra_equivalence_holds_on_both_kinds() {
        assert_eq!(boolean_algebra(3).orthoalgebra_equivalence(), None);
        assert_eq!(grid_algebra(6).orthoalgebra_equivalence(), None);
        assert_eq!(four_element_algebra().orthoalgebra_equivalence(), None);
    }

    #[test]
    fn powerset_is_boolean_and_all_elements_ortho_sharp() {
        let alg = boolean_algebra(3);
        for a in alg.elements() {
            assert!(alg.is_ortho_sharp(a));
            for b in alg.elements() {
                // distributivity of the powerset lattice
                let m = alg.meet(a, b).unwrap();
                assert_eq!(m, a & b);
                assert_eq!(alg.join(a, b).unwrap(), a | b);
            }
        }
    }

    #[test]
    fn horizontal_sum_of_two_diamonds_is_not_mackey() {
        // {0, a, a⊥, b, b⊥, 1} with only complementary pairs summable:
        // a lattice effect algebra where a and b have no common refinement
        let size = 6;
        let (zero, a, ac, b, bc, top) = (0usize, 1, 2, 3, 4, 5);
        let mut sum = vec![None; size * size];
        let mut set = |x: usize, y: usize, v: usize| {
            sum[x * size + y] = Some(v);
            sum[y * size + x] = Some(v);
        };
        for x in 0..size {
            set(zero, x, x);
        }
        set(a, ac, top);
        set(b, bc, top);
        let alg = EffectAlgebra::new(Pcm::new(size, zero, sum).unwrap(), top).unwrap();
        assert!(alg.law_suite(&cfg()).unwrap().all_passed());
        assert!(alg.is_lattice());
        assert!(alg.mackey_witness(a, ac).is_some());
        assert!(alg.mackey_witness(a, b).is_none());
        assert!(matches!(alg.mv_law_suite(&cfg()), Err(Error::NotMackey(_))));
    }

    #[test]
    fn effect_monoid_laws_hold_for_small_rationals() {
        let scalars: Vec<Rat> = (0..=4).map(|k| Rat::new(k, 4)).collect();
        let rep = effect_monoid_laws(&scalars, "effect-monoid[0,1]");
        assert!(rep.all_passed());
    }

    #[test]
    fn unit_division_inverts_multiplication() {
        let t = Rat::new(3, 4);
        let s = Rat::new(1, 2);
        let q = unit_div(&t, &s).unwrap();
        assert_eq!(t.mul(&q), s);
        assert!(unit_div(&s, &t).is_err());
        assert!(unit_div(&Rat::zero(), &Rat::zero()).is_err());
    }
}
