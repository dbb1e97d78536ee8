//! Totalization at desk scale: matrix categories over the rigs ℕ and
//! ℚ≥0 with their ground structure, recovery of the deterministic and
//! probabilistic instances as subcausal parts, and the concrete
//! presentation of the totalized unit-interval grid.
//!
//! General congruence-closure totalization of arbitrary finite partial
//! monoids is out of scope; only the concrete presentations are built
//! (the grid embeds into counts of its unit fraction, and the hom-PCMs
//! embed into rig matrices).

use crate::category::Effectus;
use crate::exec::RunCfg;
use crate::pfn::{Pfn, PfnMor};
use crate::prob::{Prob, ProbMor};
use crate::report::{LawReport, LawResult, Regime};
use crate::scalar::{Rat, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A commutative rig with the algebraic order; here ℕ or ℚ≥0.
pub trait Rig: Clone + Sync {
    type El: Clone + PartialEq + PartialOrd + std::fmt::Debug + Send + Sync;

    fn name(&self) -> &'static str;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
}

#[derive(Clone, Debug, Default)]
pub struct NatRig;

impl Rig for NatRig {
    type El = u64;

    fn name(&self) -> &'static str {
        "nat"
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        a + b
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b
    }
}

#[derive(Clone, Debug, Default)]
pub struct NonnegRatRig;

impl Rig for NonnegRatRig {
    type El = Rat;

    fn name(&self) -> &'static str {
        "nonneg-rat"
    }

    fn zero(&self) -> Rat {
        Rat::zero()
    }

    fn one(&self) -> Rat {
        Rat::one()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a.add(b)
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a.mul(b)
    }
}

/// A matrix over a rig: a morphism of the multiset-Kleisli category
/// between finite sets.
#[derive(Clone)]
pub struct RigMor<R: Rig> {
    pub dom: usize,
    pub cod: usize,
    pub entries: Vec<R::El>,
}

impl<R: Rig> std::fmt::Debug for RigMor<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RigMor({}→{}, {:?})", self.dom, self.cod, self.entries)
    }
}

impl<R: Rig> PartialEq for RigMor<R> {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.entries == other.entries
    }
}

impl<R: Rig> RigMor<R> {
    pub fn at(&self, x: usize, y: usize) -> &R::El {
        &self.entries[x * self.cod + y]
    }

    pub fn row_sum(&self, rig: &R, x: usize) -> R::El {
        (0..self.cod).fold(rig.zero(), |acc, y| rig.add(&acc, self.at(x, y)))
    }

    /// Causal: every row sums to one.
    pub fn is_causal(&self, rig: &R) -> bool {
        (0..self.dom).all(|x| self.row_sum(rig, x) == rig.one())
    }

    /// Subcausal: every row sum is at most one in the algebraic order.
    pub fn is_subcausal(&self, rig: &R) -> bool {
        (0..self.dom).all(|x| self.row_sum(rig, x) <= rig.one())
    }
}

/// The multiset-Kleisli category over a rig, with its ground structure.
#[derive(Clone, Debug)]
pub struct RigCategory<R: Rig> {
    pub rig: R,
}

impl<R: Rig> RigCategory<R> {
    pub fn new(rig: R) -> Self {
        RigCategory { rig }
    }

    pub fn zero_mor(&self, dom: usize, cod: usize) -> RigMor<R> {
        RigMor {
            dom,
            cod,
            entries: vec![self.rig.zero(); dom * cod],
        }
    }

    pub fn id(&self, n: usize) -> RigMor<R> {
        let mut m = self.zero_mor(n, n);
        for x in 0..n {
            m.entries[x * n + x] = self.rig.one();
        }
        m
    }

    pub fn compose(&self, g: &RigMor<R>, f: &RigMor<R>) -> RigMor<R> {
        assert_eq!(f.cod, g.dom, "compose: type mismatch");
        let mut m = self.zero_mor(f.dom, g.cod);
        for x in 0..f.dom {
            for y in 0..f.cod {
                for z in 0..g.cod {
                    let add = self.rig.mul(f.at(x, y), g.at(y, z));
                    m.entries[x * g.cod + z] = self.rig.add(&m.entries[x * g.cod + z], &add);
                }
            }
        }
        m
    }

    pub fn add(&self, f: &RigMor<R>, g: &RigMor<R>) -> RigMor<R> {
        assert_eq!((f.dom, f.cod), (g.dom, g.cod), "add: type mismatch");
        RigMor {
            dom: f.dom,
            cod: f.cod,
            entries: f
                .entries
                .iter()
                .zip(&g.entries)
                .map(|(a, b)| self.rig.add(a, b))
                .collect(),
        }
    }

    /// The discarding map `⊥ : X → I` (all-ones column).
    pub fn ground(&self, n: usize) -> RigMor<R> {
        RigMor {
            dom: n,
            cod: 1,
            entries: vec![self.rig.one(); n],
        }
    }

    /// Biproduct injection into `A ⊕ B`.
    pub fn inj(&self, a: usize, b: usize, first: bool) -> RigMor<R> {
        let cod = a + b;
        let dom = if first { a } else { b };
        let mut m = self.zero_mor(dom, cod);
        for x in 0..dom {
            let y = if first { x } else { a + x };
            m.entries[x * cod + y] = self.rig.one();
        }
        m
    }

    /// Biproduct projection out of `A ⊕ B`.
    pub fn proj(&self, a: usize, b: usize, first: bool) -> RigMor<R> {
        let dom = a + b;
        let cod = if first { a } else { b };
        let mut m = self.zero_mor(dom, cod);
        for y in 0..cod {
            let x = if first { y } else { a + y };
            m.entries[x * cod + y] = self.rig.one();
        }
        m
    }

    pub fn cotuple(&self, f: &RigMor<R>, g: &RigMor<R>) -> RigMor<R> {
        assert_eq!(f.cod, g.cod);
        RigMor {
            dom: f.dom + g.dom,
            cod: f.cod,
            entries: f.entries.iter().chain(&g.entries).cloned().collect(),
        }
    }
}

/// Enumerates all ℕ-matrices `dom × cod` with entries bounded by `max`.
pub fn enumerate_nat_matrices(dom: usize, cod: usize, max: u64) -> Vec<RigMor<NatRig>> {
    let cells = dom * cod;
    let mut out = Vec::new();
    let mut digits = vec![0u64; cells];
    loop {
        out.push(RigMor {
            dom,
            cod,
            entries: digits.clone(),
        });
        let mut i = 0;
        loop {
            if i == cells {
                return out;
            }
            digits[i] += 1;
            if digits[i] <= max {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The ground-structure law suite over enumerated/sampled matrices:
/// `⊥_I = id`, `⊥_{A⊕B} = [⊥_A, ⊥_B]`, faithfulness of the ground,
/// barred cancellation, the biproduct equations, and distribution of
/// composition over the matrix sum.
pub fn gbc_law_suite<R: Rig>(
    cat: &RigCategory<R>,
    mors: &[RigMor<R>],
    grounds_to_one: &[(RigMor<R>, RigMor<R>, RigMor<R>)],
    regime: Regime,
) -> LawReport {
    let mut rep = LawReport::new(&format!("gbc[{}]", cat.rig.name()));

    let mut law = LawResult::new("gbc.ground-unit", "⊥_I = id_I", regime.clone());
    law.pass_one();
    if cat.ground(1) != cat.id(1) {
        law.fail("ground on the unit differs from the identity".into());
    }
    rep.push(law);

    let mut law = LawResult::new("gbc.ground-cotuple", "⊥_{A⊕B} = [⊥_A, ⊥_B]", regime.clone());
    for a in 0..4usize {
        for b in 0..4usize {
            law.pass_one();
            if cat.ground(a + b) != cat.cotuple(&cat.ground(a), &cat.ground(b)) {
                law.fail(format!("a={a}, b={b}"));
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "gbc.biproduct",
        "π_j ∘ κ_k = δ_jk and κ₁∘π₁ + κ₂∘π₂ = id",
        regime.clone(),
    );
    for a in 1..3usize {
        for b in 1..3usize {
            law.pass_one();
            let k1 = cat.inj(a, b, true);
            let k2 = cat.inj(a, b, false);
            let p1 = cat.proj(a, b, true);
            let p2 = cat.proj(a, b, false);
            if cat.compose(&p1, &k1) != cat.id(a)
                || cat.compose(&p2, &k2) != cat.id(b)
                || cat.compose(&p2, &k1) != cat.zero_mor(a, b)
                || cat.compose(&p1, &k2) != cat.zero_mor(b, a)
            {
                law.fail(format!("projections at a={a}, b={b}"));
            }
            let recomposed = cat.add(&cat.compose(&k1, &p1), &cat.compose(&k2, &p2));
            if recomposed != cat.id(a + b) {
                law.fail(format!("decomposition of the identity at a={a}, b={b}"));
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "gbc.ground-faithful",
        "⊥ ∘ f = 0 implies f = 0",
        regime.clone(),
    );
    for f in mors {
        law.pass_one();
        let grounded = cat.compose(&cat.ground(f.cod), f);
        let zero_scalar = cat.zero_mor(f.dom, 1);
        let is_zero = *f == cat.zero_mor(f.dom, f.cod);
        if (grounded == zero_scalar) != is_zero {
            law.fail(format!("{f:?}"));
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "gbc.barred-cancellation",
        "p ∔ q = p ∔ r = ⊥ implies q = r",
        regime.clone(),
    );
    for (p, q, r) in grounds_to_one {
        law.pass_one();
        let ground = cat.ground(p.dom);
        if cat.add(p, q) == ground && cat.add(p, r) == ground && q != r {
            law.fail("cancellation fails at the ground".into());
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "gbc.enrichment",
        "composition distributes over the total sum on both sides",
        regime.clone(),
    );
    for f in mors.iter().take(12) {
        for g in mors.iter().take(12) {
            if (f.dom, f.cod) != (g.dom, g.cod) {
                continue;
            }
            for h in mors.iter().take(12) {
                if h.dom == f.cod {
                    law.pass_one();
                    let lhs = cat.compose(h, &cat.add(f, g));
                    let rhs = cat.add(&cat.compose(h, f), &cat.compose(h, g));
                    if lhs != rhs {
                        law.fail("post-composition".into());
                    }
                }
                if h.cod == f.dom {
                    law.pass_one();
                    let lhs = cat.compose(&cat.add(f, g), h);
                    let rhs = cat.add(&cat.compose(f, h), &cat.compose(g, h));
                    if lhs != rhs {
                        law.fail("pre-composition".into());
                    }
                }
            }
        }
    }
    rep.push(law);

    rep
}

/// Runs the ground-structure suite for ℕ (enumerated small matrices) and
/// ℚ≥0 (seeded rational matrices).
pub fn totalization_suite(cfg: &RunCfg) -> LawReport {
    let mut rep = LawReport::new("totalization");

    let nat = RigCategory::new(NatRig);
    let mut mors = Vec::new();
    for dom in 0..=2usize {
        for cod in 1..=2usize {
            mors.extend(enumerate_nat_matrices(dom, cod, 2));
        }
    }
    let scalars: Vec<RigMor<NatRig>> = enumerate_nat_matrices(2, 1, 2);
    let mut triples = Vec::new();
    for p in &scalars {
        for q in &scalars {
            for r in &scalars {
                triples.push((p.clone(), q.clone(), r.clone()));
            }
        }
    }
    rep.merge(gbc_law_suite(&nat, &mors, &triples, Regime::Exhaustive));

    let rat = RigCategory::new(NonnegRatRig);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(23));
    let mut mors = vec![rat.zero_mor(2, 2)];
    for _ in 0..20 {
        let dom = rng.random_range(1..=2usize);
        let cod = rng.random_range(1..=2usize);
        let entries = (0..dom * cod)
            .map(|_| Rat::new(rng.random_range(0..=8), 4))
            .collect();
        mors.push(RigMor { dom, cod, entries });
    }
    let mut triples = Vec::new();
    for _ in 0..40 {
        let p: Vec<Rat> = (0..2)
            .map(|_| Rat::new(rng.random_range(0..=4), 4))
            .collect();
        let q: Vec<Rat> = p.iter().map(|v| Rat::one().sub(v)).collect();
        let r = q.clone();
        let mk = |e: Vec<Rat>| RigMor::<NonnegRatRig> {
            dom: 2,
            cod: 1,
            entries: e,
        };
        triples.push((mk(p), mk(q), mk(r)));
    }
    rep.merge(gbc_law_suite(
        &rat,
        &mors,
        &triples,
        Regime::Sampled {
            seed: cfg.seed,
            count: mors.len(),
        },
    ));

    rep.merge(caus_recover_nat(3));
    rep.merge(caus_recover_rat(cfg));
    rep.merge(interval_totalization_suite(4));
    rep.merge(interval_totalization_suite(1));
    rep
}

fn pfn_to_nat(f: &PfnMor) -> RigMor<NatRig> {
    let mut entries = vec![0u64; f.dom * f.cod];
    for (x, v) in f.table.iter().enumerate() {
        if let Some(y) = v {
            entries[x * f.cod + y] = 1;
        }
    }
    RigMor {
        dom: f.dom,
        cod: f.cod,
        entries,
    }
}

fn nat_to_pfn(m: &RigMor<NatRig>) -> Option<PfnMor> {
    let mut table = Vec::with_capacity(m.dom);
    for x in 0..m.dom {
        let mut hit = None;
        for y in 0..m.cod {
            match *m.at(x, y) {
                0 => {}
                1 if hit.is_none() => hit = Some(y),
                _ => return None,
            }
        }
        table.push(hit);
    }
    Some(PfnMor {
        dom: m.dom,
        cod: m.cod,
        table,
    })
}

/// Subcausal ℕ-matrices over sets of size at most `max` are exactly the
/// partial functions, functorially: checked on every composable pair.
pub fn caus_recover_nat(max: usize) -> LawReport {
    let mut rep = LawReport::new("caus-recover[nat]");
    let cat = RigCategory::new(NatRig);
    let pfn = Pfn;

    let mut law = LawResult::new(
        "caus.nat-bijection",
        "subcausal ℕ-matrices are exactly the partial-function matrices",
        Regime::Exhaustive,
    );
    for dom in 0..=max {
        for cod in 1..=max {
            for m in enumerate_nat_matrices(dom, cod, 2) {
                law.pass_one();
                let subcausal = m.is_subcausal(&cat.rig);
                let as_pfn = nat_to_pfn(&m);
                if subcausal != as_pfn.is_some() {
                    law.fail(format!("{m:?}"));
                }
                if let Some(f) = as_pfn {
                    if pfn_to_nat(&f) != m {
                        law.fail("round trip differs".into());
                    }
                    if pfn.is_total(&f) != m.is_causal(&cat.rig) {
                        law.fail("causal does not match total".into());
                    }
                }
            }
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "caus.nat-functorial",
        "the bijection preserves composition on all composable pairs",
        Regime::Exhaustive,
    );
    for a in 0..=max {
        for b in 1..=max {
            for c in 1..=max {
                let fs = pfn.enumerate_homset(a, b, 1_000_000).unwrap();
                let gs = pfn.enumerate_homset(b, c, 1_000_000).unwrap();
                for f in &fs {
                    for g in &gs {
                        law.pass_one();
                        let lhs = pfn_to_nat(&pfn.compose(g, f));
                        let rhs = cat.compose(&pfn_to_nat(g), &pfn_to_nat(f));
                        if lhs != rhs {
                            law.fail(format!("f={f:?}, g={g:?}"));
                        }
                    }
                }
            }
        }
    }
    rep.push(law);

    rep
}

fn prob_to_rat(f: &ProbMor) -> RigMor<NonnegRatRig> {
    RigMor {
        dom: f.dom,
        cod: f.cod,
        entries: f.kernel.clone(),
    }
}

/// Subcausal ℚ≥0-matrices are the subdistribution kernels; composition
/// and summability reflection are checked on seeded samples over
/// two-point sets.
pub fn caus_recover_rat(cfg: &RunCfg) -> LawReport {
    let mut rep = LawReport::new("caus-recover[nonneg-rat]");
    let cat = RigCategory::new(NonnegRatRig);
    let prob = Prob;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(37));

    let mut law = LawResult::new(
        "caus.rat-embedding",
        "kernels embed subcausally and composition is preserved",
        Regime::Sampled {
            seed: cfg.seed,
            count: 40,
        },
    );
    for _ in 0..20 {
        let f = prob.random_mor(2, 2, 16, false, &mut rng);
        let g = prob.random_mor(2, 2, 16, false, &mut rng);
        law.pass_one();
        if !prob_to_rat(&f).is_subcausal(&cat.rig) {
            law.fail("kernel not subcausal".into());
        }
        let lhs = prob_to_rat(&prob.compose(&g, &f));
        let rhs = cat.compose(&prob_to_rat(&g), &prob_to_rat(&f));
        if lhs != rhs {
            law.fail("composition differs".into());
        }
    }
    rep.push(law);

    let mut law = LawResult::new(
        "caus.rat-reflects-summability",
        "η(f) ∔ η(g) is subcausal exactly when f ⊥ g",
        Regime::Sampled {
            seed: cfg.seed,
            count: 40,
        },
    );
    for _ in 0..40 {
        let f = prob.random_mor(2, 2, 8, false, &mut rng);
        let g = prob.random_mor(2, 2, 8, false, &mut rng);
        law.pass_one();
        let total = cat.add(&prob_to_rat(&f), &prob_to_rat(&g));
        if total.is_subcausal(&cat.rig) != prob.try_sum(&f, &g).is_some() {
            law.fail("summability not reflected".into());
        }
    }
    rep.push(law);

    rep
}

/// Formal sums over the grid `{0, 1/n, …, 1}`, presented in the
/// totalization as counts of the unit fraction: the embedding is
/// injective and sum-preserving, and equal presentations are
/// Kleene-equal as partial sums in the grid.
pub fn interval_totalization_suite(n: usize) -> LawReport {
    let mut rep = LawReport::new(&format!("interval-totalization[n={n}]"));

    // grid element k/n ↦ k units of the generator 1/n
    let eta = |x: &Rat| -> Option<usize> {
        let scaled = x.mul(&Rat::from_int(n as i64));
        (0..=n).find(|&k| scaled == Rat::from_int(k as i64))
    };
    let mut law = LawResult::new(
        "tot.embedding",
        "η is injective and maps defined grid sums to sums of counts",
        Regime::Exhaustive,
    );
    for a in 0..=n {
        let x = Rat::new(a as i64, n as i64);
        for b in 0..=n {
            let y = Rat::new(b as i64, n as i64);
            law.pass_one();
            if (eta(&x) == eta(&y)) != (a == b) {
                law.fail(format!("injectivity at {a},{b}"));
            }
            let grid_sum = x.add(&y);
            if grid_sum <= Rat::one() {
                match eta(&grid_sum) {
                    Some(k) if k == a + b => {}
                    _ => {
                        law.fail(format!("sum not preserved at {a},{b}"));
                    }
                }
            }
        }
    }
    rep.push(law);

    // formal sums: multisets of grid elements with small multiplicities
    let mut law = LawResult::new(
        "tot.kleene-equality",
        "formal sums equal in the totalization are Kleene-equal in the grid",
        Regime::Exhaustive,
    );
    // enumerate multisets (m_1, …, m_n) of multiplicities ≤ 2 of the
    // nonzero grid elements
    let mut multisets = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        multisets.push(digits.clone());
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            digits[i] += 1;
            if digits[i] <= 2 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if digits.iter().all(|&d| d == 0) {
            break;
        }
    }
    let units = |m: &[usize]| -> usize { m.iter().enumerate().map(|(i, &c)| (i + 1) * c).sum() };
    for phi in &multisets {
        for psi in &multisets {
            if units(phi) != units(psi) {
                continue; // different presentations in the totalization
            }
            law.pass_one();
            // interpretation is defined iff the unit count fits below one
            let defined = units(phi) <= n;
            let phi_defined = defined;
            let psi_defined = units(psi) <= n;
            if phi_defined != psi_defined {
                law.fail("definedness differs".into());
            }
            if defined && units(phi) != units(psi) {
                law.fail("values differ".into());
            }
        }
    }
    rep.push(law);

    // three halves is a well-formed count even though undefined in the grid
    let mut law = LawResult::new(
        "tot.overflow-is-well-formed",
        "η(½)+η(½)+η(½) is a well-formed count with no grid interpretation",
        Regime::Exhaustive,
    );
    law.pass_one();
    if n >= 2 && n.is_multiple_of(2) {
        let half = n / 2;
        let total = 3 * half;
        if total <= n {
            law.fail("three halves fit below one".into());
        }
    }
    rep.push(law);

    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_suite_passes_for_both_rigs() {
        let rep = totalization_suite(&RunCfg::default());
        for law in &rep.laws {
            assert!(law.passed, "{}: {:?}", law.id, law.witness);
        }
    }

    #[test]
    fn a_row_summing_to_two_is_not_subcausal() {
        let m = RigMor::<NatRig> {
            dom: 1,
            cod: 2,
            entries: vec![1, 1],
        };
        assert!(!m.is_subcausal(&NatRig));
        assert!(nat_to_pfn(&m).is_none());
    }

    #[test]
    fn single_defined_point_corresponds_to_a_matrix_unit() {
        let m = RigMor::<NatRig> {
            dom: 2,
            cod: 2,
            entries: vec![1, 0, 0, 0],
        };
        let f = nat_to_pfn(&m).unwrap();
        assert_eq!(f.table, vec![Some(0), None]);
        assert_eq!(pfn_to_nat(&f), m);
    }
}
