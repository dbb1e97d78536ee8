//! The probabilistic instance: finite sets with exact-rational
//! subdistribution kernels.
//!
//! A morphism `X → Y` is a `|X| × |Y|` matrix of rationals with
//! nonnegative entries and row sums at most one; it is total when every
//! row sums to exactly one. Composition is matrix product in exact
//! arithmetic, so all law-suite equalities are exact. Row-sum slack is
//! always recomputed, never cached.

use crate::category::{Comprehension, Effectus, LogicEffectus, Quotient, SampleGen};
use crate::error::{Error, Result};
use crate::exec::RunCfg;
use crate::pfn::PfnMor;
use crate::report::Regime;
use crate::scalar::{Rat, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A subdistribution kernel between finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbMor {
    pub dom: usize,
    pub cod: usize,
    /// Row-major `dom × cod` matrix; entry `(x, y)` is the mass sent from
    /// `x` to `y`.
    pub kernel: Vec<Rat>,
}

impl ProbMor {
    pub fn new(dom: usize, cod: usize, kernel: Vec<Rat>) -> Result<Self> {
        if kernel.len() != dom * cod {
            return Err(Error::ShapeMismatch(format!(
                "kernel has {} entries, expected {}",
                kernel.len(),
                dom * cod
            )));
        }
        let m = ProbMor { dom, cod, kernel };
        for x in 0..dom {
            if (0..cod).any(|y| m.at(x, y) < &Rat::zero()) {
                return Err(Error::InvalidTable("negative kernel entry".into()));
            }
            if m.row_sum(x) > Rat::one() {
                return Err(Error::InvalidTable(format!("row {x} sums above one")));
            }
        }
        Ok(m)
    }

    pub fn at(&self, x: usize, y: usize) -> &Rat {
        &self.kernel[x * self.cod + y]
    }

    pub fn row_sum(&self, x: usize) -> Rat {
        (0..self.cod).fold(Rat::zero(), |acc, y| acc.add(self.at(x, y)))
    }

    /// Predicate from pointwise values in `[0, 1]`.
    pub fn predicate(values: &[Rat]) -> Self {
        ProbMor {
            dom: values.len(),
            cod: 1,
            kernel: values.to_vec(),
        }
    }

    /// Substate from masses.
    pub fn substate(masses: &[Rat]) -> Self {
        ProbMor {
            dom: 1,
            cod: masses.len(),
            kernel: masses.to_vec(),
        }
    }

    /// Uniform state on an `n`-point set.
    pub fn uniform(n: usize) -> Self {
        ProbMor::substate(&vec![Rat::new(1, n as i64); n])
    }

    /// Embeds a partial function as a 0/1-kernel.
    pub fn from_pfn(f: &PfnMor) -> Self {
        let mut kernel = vec![Rat::zero(); f.dom * f.cod];
        for (x, v) in f.table.iter().enumerate() {
            if let Some(y) = v {
                kernel[x * f.cod + y] = Rat::one();
            }
        }
        ProbMor {
            dom: f.dom,
            cod: f.cod,
            kernel,
        }
    }

    /// Converts a 0/1-kernel back to a partial function.
    pub fn to_pfn(&self) -> Option<PfnMor> {
        let mut table = Vec::with_capacity(self.dom);
        for x in 0..self.dom {
            let mut hit = None;
            for y in 0..self.cod {
                let v = self.at(x, y);
                if v.is_one() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(y);
                } else if !v.is_zero() {
                    return None;
                }
            }
            table.push(hit);
        }
        Some(PfnMor {
            dom: self.dom,
            cod: self.cod,
            table,
        })
    }
}

/// The probabilistic instance.
#[derive(Clone, Debug, Default)]
pub struct Prob;

impl Prob {
    /// Random kernel with entries `k/denom`; each row total is drawn
    /// uniformly from `0..=denom` and split by a uniformly random
    /// composition, so rows are exact subdistributions.
    pub fn random_mor(
        &self,
        dom: usize,
        cod: usize,
        denom: u64,
        total_rows: bool,
        rng: &mut ChaCha8Rng,
    ) -> ProbMor {
        let mut kernel = Vec::with_capacity(dom * cod);
        for _ in 0..dom {
            let total = if total_rows {
                denom
            } else {
                rng.random_range(0..=denom)
            };
            // uniform composition of `total` into `cod` parts
            let mut cuts: Vec<u64> = (0..cod - 1).map(|_| rng.random_range(0..=total)).collect();
            cuts.sort_unstable();
            cuts.push(total);
            let mut prev = 0;
            for c in cuts {
                kernel.push(Rat::new((c - prev) as i64, denom as i64));
                prev = c;
            }
        }
        ProbMor { dom, cod, kernel }
    }

    /// All kernels `dom → cod` with entries in the `1/denom` grid and row
    /// sums at most one.
    pub fn enumerate_grid_homset(&self, dom: usize, cod: usize, denom: usize) -> Vec<ProbMor> {
        let rows = crate::algebra::weight::enumerate_grid_subdists(cod, denom);
        let mut out = Vec::new();
        let mut idx = vec![0usize; dom];
        loop {
            let mut kernel = Vec::with_capacity(dom * cod);
            for &i in &idx {
                kernel.extend(rows[i].iter().cloned());
            }
            out.push(ProbMor { dom, cod, kernel });
            let mut i = 0;
            loop {
                if i == dom {
                    return out;
                }
                idx[i] += 1;
                if idx[i] < rows.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    /// All predicates with values in the `1/denom` grid.
    pub fn enumerate_grid_predicates(&self, n: usize, denom: usize) -> Vec<ProbMor> {
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        loop {
            out.push(ProbMor::predicate(
                &digits
                    .iter()
                    .map(|&k| Rat::new(k as i64, denom as i64))
                    .collect::<Vec<_>>(),
            ));
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                digits[i] += 1;
                if digits[i] <= denom {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

impl Effectus for Prob {
    type Obj = usize;
    type Mor = ProbMor;
    type Sc = Rat;

    fn name(&self) -> &'static str {
        "prob"
    }

    fn unit(&self) -> usize {
        1
    }

    fn zero_obj(&self) -> usize {
        0
    }

    fn dom(&self, f: &ProbMor) -> usize {
        f.dom
    }

    fn cod(&self, f: &ProbMor) -> usize {
        f.cod
    }

    fn id(&self, a: &usize) -> ProbMor {
        let mut kernel = vec![Rat::zero(); a * a];
        for x in 0..*a {
            kernel[x * a + x] = Rat::one();
        }
        ProbMor {
            dom: *a,
            cod: *a,
            kernel,
        }
    }

    fn zero_mor(&self, a: &usize, b: &usize) -> ProbMor {
        ProbMor {
            dom: *a,
            cod: *b,
            kernel: vec![Rat::zero(); a * b],
        }
    }

    fn truth(&self, a: &usize) -> ProbMor {
        ProbMor {
            dom: *a,
            cod: 1,
            kernel: vec![Rat::one(); *a],
        }
    }

    fn compose(&self, g: &ProbMor, f: &ProbMor) -> ProbMor {
        assert_eq!(f.cod, g.dom, "compose: type mismatch");
        let mut kernel = vec![Rat::zero(); f.dom * g.cod];
        for x in 0..f.dom {
            for y in 0..f.cod {
                let fxy = f.at(x, y);
                if fxy.is_zero() {
                    continue;
                }
                for z in 0..g.cod {
                    let add = g.at(y, z).mul(fxy);
                    kernel[x * g.cod + z] = kernel[x * g.cod + z].add(&add);
                }
            }
        }
        ProbMor {
            dom: f.dom,
            cod: g.cod,
            kernel,
        }
    }

    fn coprod(&self, a: &usize, b: &usize) -> usize {
        a + b
    }

    fn inj1(&self, a: &usize, b: &usize) -> ProbMor {
        let cod = a + b;
        let mut kernel = vec![Rat::zero(); a * cod];
        for x in 0..*a {
            kernel[x * cod + x] = Rat::one();
        }
        ProbMor {
            dom: *a,
            cod,
            kernel,
        }
    }

    fn inj2(&self, a: &usize, b: &usize) -> ProbMor {
        let cod = a + b;
        let mut kernel = vec![Rat::zero(); b * cod];
        for x in 0..*b {
            kernel[x * cod + a + x] = Rat::one();
        }
        ProbMor {
            dom: *b,
            cod,
            kernel,
        }
    }

    fn cotuple(&self, f: &ProbMor, g: &ProbMor) -> ProbMor {
        assert_eq!(f.cod, g.cod, "cotuple: codomain mismatch");
        let mut kernel = f.kernel.clone();
        kernel.extend(g.kernel.iter().cloned());
        ProbMor {
            dom: f.dom + g.dom,
            cod: f.cod,
            kernel,
        }
    }

    fn try_sum(&self, f: &ProbMor, g: &ProbMor) -> Option<ProbMor> {
        assert_eq!((f.dom, f.cod), (g.dom, g.cod), "sum: type mismatch");
        let sum = ProbMor {
            dom: f.dom,
            cod: f.cod,
            kernel: f
                .kernel
                .iter()
                .zip(&g.kernel)
                .map(|(a, b)| a.add(b))
                .collect(),
        };
        if (0..f.dom).all(|x| sum.row_sum(x) <= Rat::one()) {
            Some(sum)
        } else {
            None
        }
    }

    fn mor_sub(&self, g: &ProbMor, f: &ProbMor) -> Option<ProbMor> {
        assert_eq!((f.dom, f.cod), (g.dom, g.cod), "sub: type mismatch");
        let mut kernel = Vec::with_capacity(f.kernel.len());
        for (a, b) in f.kernel.iter().zip(&g.kernel) {
            if a > b {
                return None;
            }
            kernel.push(b.sub(a));
        }
        Some(ProbMor {
            dom: f.dom,
            cod: f.cod,
            kernel,
        })
    }

    fn ortho(&self, p: &ProbMor) -> ProbMor {
        assert_eq!(p.cod, 1, "ortho: not a predicate");
        ProbMor {
            dom: p.dom,
            cod: 1,
            kernel: p.kernel.iter().map(|v| Rat::one().sub(v)).collect(),
        }
    }

    fn scale(&self, s: &Rat, f: &ProbMor) -> ProbMor {
        ProbMor {
            dom: f.dom,
            cod: f.cod,
            kernel: f.kernel.iter().map(|v| s.mul(v)).collect(),
        }
    }

    fn mor_eq(&self, f: &ProbMor, g: &ProbMor) -> bool {
        f == g
    }

    fn scalar_value(&self, s: &ProbMor) -> Rat {
        assert_eq!((s.dom, s.cod), (1, 1));
        s.kernel[0].clone()
    }

    fn scalar_mor(&self, s: &Rat) -> ProbMor {
        ProbMor {
            dom: 1,
            cod: 1,
            kernel: vec![s.clone()],
        }
    }

    fn sc_eq(&self, a: &Rat, b: &Rat) -> bool {
        a == b
    }

    fn left_summand(&self, ab: &usize) -> usize {
        ab - 1
    }
}

impl LogicEffectus for Prob {
    fn image(&self, f: &ProbMor) -> ProbMor {
        // 0/1-predicate marking codomain points that receive positive mass
        let values: Vec<Rat> = (0..f.cod)
            .map(|y| {
                if (0..f.dom).any(|x| !f.at(x, y).is_zero()) {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        ProbMor::predicate(&values)
    }

    fn comprehension(&self, a: &usize, p: &ProbMor) -> Comprehension<usize, ProbMor> {
        assert_eq!((p.dom, p.cod), (*a, 1));
        // {X|p} = {x : p(x) = 1}, with the Dirac embedding
        let members: Vec<usize> = (0..*a).filter(|&x| p.at(x, 0).is_one()).collect();
        let mut kernel = vec![Rat::zero(); members.len() * a];
        for (i, &x) in members.iter().enumerate() {
            kernel[i * a + x] = Rat::one();
        }
        Comprehension {
            obj: members.len(),
            proj: ProbMor {
                dom: members.len(),
                cod: *a,
                kernel,
            },
            pred: p.clone(),
        }
    }

    fn quotient(&self, a: &usize, p: &ProbMor) -> Quotient<usize, ProbMor> {
        assert_eq!((p.dom, p.cod), (*a, 1));
        // X/p = {x : p(x) < 1}, with ξ_p(x) = p⊥(x)|x⟩
        let members: Vec<usize> = (0..*a).filter(|&x| !p.at(x, 0).is_one()).collect();
        let mut kernel = vec![Rat::zero(); *a * members.len()];
        for (i, &x) in members.iter().enumerate() {
            kernel[x * members.len() + i] = Rat::one().sub(p.at(x, 0));
        }
        Quotient {
            obj: members.len(),
            map: ProbMor {
                dom: *a,
                cod: members.len(),
                kernel,
            },
            pred: p.clone(),
        }
    }

    fn comprehension_mediate(
        &self,
        c: &Comprehension<usize, ProbMor>,
        h: &ProbMor,
    ) -> Option<ProbMor> {
        // h□(p) = 1 ⟺ mass only reaches points with p = 1
        let a = c.pred.dom;
        let members: Vec<usize> = (0..a).filter(|&x| c.pred.at(x, 0).is_one()).collect();
        let in_members = |x: usize| members.iter().position(|&m| m == x);
        let mut kernel = vec![Rat::zero(); h.dom * c.obj];
        for x in 0..h.dom {
            for y in 0..a {
                let v = h.at(x, y);
                if v.is_zero() {
                    continue;
                }
                {
                    let i = in_members(y)?;
                    kernel[x * c.obj + i] = v.clone()
                }
            }
        }
        Some(ProbMor {
            dom: h.dom,
            cod: c.obj,
            kernel,
        })
    }

    fn quotient_mediate(&self, q: &Quotient<usize, ProbMor>, f: &ProbMor) -> Option<ProbMor> {
        // requires p ≤ ker f, i.e. row sums of f bounded by p⊥ pointwise;
        // the mediating map divides each surviving row by p⊥(x)
        let a = q.pred.dom;
        let members: Vec<usize> = (0..a).filter(|&x| !q.pred.at(x, 0).is_one()).collect();
        for x in 0..a {
            let slack = Rat::one().sub(q.pred.at(x, 0));
            if f.row_sum(x) > slack {
                return None;
            }
        }
        let mut kernel = vec![Rat::zero(); members.len() * f.cod];
        for (i, &x) in members.iter().enumerate() {
            let weight = Rat::one().sub(q.pred.at(x, 0));
            for y in 0..f.cod {
                kernel[i * f.cod + y] = f.at(x, y).div(&weight).expect("p⊥(x) > 0 on X/p");
            }
        }
        Some(ProbMor {
            dom: members.len(),
            cod: f.cod,
            kernel,
        })
    }

    fn invert_total_iso(&self, f: &ProbMor) -> Option<ProbMor> {
        // Total isomorphisms between finite sets are exactly the
        // permutation kernels.
        if f.dom != f.cod {
            return None;
        }
        let pfn = f.to_pfn()?;
        let inv = crate::pfn::Pfn.invert_total_iso(&pfn)?;
        Some(ProbMor::from_pfn(&inv))
    }

    fn asrt_general(&self, a: &usize, p: &ProbMor) -> ProbMor {
        assert_eq!((p.dom, p.cod), (*a, 1));
        // x ↦ p(x)|x⟩
        let mut kernel = vec![Rat::zero(); a * a];
        for x in 0..*a {
            kernel[x * a + x] = p.at(x, 0).clone();
        }
        ProbMor {
            dom: *a,
            cod: *a,
            kernel,
        }
    }
}

impl SampleGen for Prob {
    fn gen_objects(&self, _cfg: &RunCfg) -> Vec<usize> {
        vec![1, 2, 3]
    }

    fn gen_homset(
        &self,
        a: &usize,
        b: &usize,
        cfg: &RunCfg,
        rng: &mut ChaCha8Rng,
    ) -> (Regime, Vec<ProbMor>) {
        let count = 24.min(cfg.max_size);
        let mut out = Vec::with_capacity(count + 2);
        out.push(self.zero_mor(a, b));
        for _ in 0..count / 2 {
            out.push(self.random_mor(*a, *b, 64, false, rng));
        }
        for _ in 0..count / 2 {
            out.push(self.random_mor(*a, *b, 64, true, rng));
        }
        (
            Regime::Sampled {
                seed: cfg.seed,
                count: out.len(),
            },
            out,
        )
    }

    fn gen_scalars(&self, cfg: &RunCfg, rng: &mut ChaCha8Rng) -> Vec<Rat> {
        let mut out: Vec<Rat> = vec![Rat::zero(), Rat::one(), Rat::new(1, 2)];
        for _ in 0..8.min(cfg.max_size) {
            out.push(Rat::new(rng.random_range(0..=64), 64));
        }
        out
    }

    fn gen_sharp_predicates(
        &self,
        a: &usize,
        _cfg: &RunCfg,
        _rng: &mut ChaCha8Rng,
    ) -> (Regime, Vec<ProbMor>) {
        // sharp predicates are exactly the 0/1-valued ones
        let preds = crate::pfn::Pfn
            .all_predicates(*a)
            .iter()
            .map(ProbMor::from_pfn)
            .collect();
        (Regime::Exhaustive, preds)
    }

    fn normalize_direct(&self, omega: &ProbMor) -> Option<ProbMor> {
        let total = omega.row_sum(0);
        if total.is_zero() {
            return None;
        }
        Some(ProbMor {
            dom: 1,
            cod: omega.cod,
            kernel: omega
                .kernel
                .iter()
                .map(|v| v.div(&total).expect("nonzero total"))
                .collect(),
        })
    }
}
