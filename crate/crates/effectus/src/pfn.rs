//! The deterministic instance: finite sets and partial functions.
//!
//! Objects are carrier sizes (`{0, …, n-1}`), morphisms are dense tables
//! with an explicit `None` sentinel for "undefined". Predicates are
//! subsets, all of them sharp; homsets are small enough to enumerate
//! exhaustively.

use crate::category::{Comprehension, Effectus, LogicEffectus, Quotient, SampleGen};
use crate::error::{Error, Result};
use crate::exec::RunCfg;
use crate::report::Regime;
use crate::scalar::{Rat, Scalar};
use rand_chacha::ChaCha8Rng;

/// A partial function between finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PfnMor {
    pub dom: usize,
    pub cod: usize,
    pub table: Vec<Option<usize>>,
}

impl PfnMor {
    pub fn new(dom: usize, cod: usize, table: Vec<Option<usize>>) -> Result<Self> {
        if table.len() != dom {
            return Err(Error::ShapeMismatch(format!(
                "table length {} but domain size {dom}",
                table.len()
            )));
        }
        if table.iter().flatten().any(|&y| y >= cod) {
            return Err(Error::InvalidTable("table entry out of codomain".into()));
        }
        Ok(PfnMor { dom, cod, table })
    }

    /// Predicate (subset) from a membership vector.
    pub fn predicate(members: &[bool]) -> Self {
        PfnMor {
            dom: members.len(),
            cod: 1,
            table: members
                .iter()
                .map(|&m| if m { Some(0) } else { None })
                .collect(),
        }
    }

    /// The point state at `x` in an `n`-element set.
    pub fn point(n: usize, x: usize) -> Self {
        assert!(x < n);
        PfnMor {
            dom: 1,
            cod: n,
            table: vec![Some(x)],
        }
    }

    pub fn defined_at(&self, x: usize) -> bool {
        self.table[x].is_some()
    }
}

/// The deterministic instance.
#[derive(Clone, Debug, Default)]
pub struct Pfn;

impl Pfn {
    /// All partial functions `a ⇀ b` in lexicographic order.
    pub fn enumerate_homset(&self, a: usize, b: usize, bound: usize) -> Result<Vec<PfnMor>> {
        let count = (b + 1).checked_pow(a as u32).filter(|&c| c <= bound);
        let Some(count) = count else {
            return Err(Error::TooLarge { size: b + 1, bound });
        };
        let mut out = Vec::with_capacity(count);
        let mut table = vec![0usize; a]; // digit b means "undefined"
        loop {
            out.push(PfnMor {
                dom: a,
                cod: b,
                table: table
                    .iter()
                    .map(|&d| if d == b { None } else { Some(d) })
                    .collect(),
            });
            let mut i = 0;
            loop {
                if i == a {
                    return Ok(out);
                }
                table[i] += 1;
                if table[i] <= b {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
        }
    }

    /// All subsets of an `n`-element set as predicates.
    pub fn all_predicates(&self, n: usize) -> Vec<PfnMor> {
        (0..(1usize << n))
            .map(|mask| PfnMor::predicate(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
            .collect()
    }
}

impl Effectus for Pfn {
    type Obj = usize;
    type Mor = PfnMor;
    type Sc = Rat;

    fn name(&self) -> &'static str {
        "pfn"
    }

    fn unit(&self) -> usize {
        1
    }

    fn zero_obj(&self) -> usize {
        0
    }

    fn dom(&self, f: &PfnMor) -> usize {
        f.dom
    }

    fn cod(&self, f: &PfnMor) -> usize {
        f.cod
    }

    fn id(&self, a: &usize) -> PfnMor {
        PfnMor {
            dom: *a,
            cod: *a,
            table: (0..*a).map(Some).collect(),
        }
    }

    fn zero_mor(&self, a: &usize, b: &usize) -> PfnMor {
        PfnMor {
            dom: *a,
            cod: *b,
            table: vec![None; *a],
        }
    }

    fn truth(&self, a: &usize) -> PfnMor {
        PfnMor {
            dom: *a,
            cod: 1,
            table: vec![Some(0); *a],
        }
    }

    fn compose(&self, g: &PfnMor, f: &PfnMor) -> PfnMor {
        assert_eq!(f.cod, g.dom, "compose: type mismatch");
        PfnMor {
            dom: f.dom,
            cod: g.cod,
            table: f.table.iter().map(|v| v.and_then(|y| g.table[y])).collect(),
        }
    }

    fn coprod(&self, a: &usize, b: &usize) -> usize {
        a + b
    }

    fn inj1(&self, a: &usize, b: &usize) -> PfnMor {
        PfnMor {
            dom: *a,
            cod: a + b,
            table: (0..*a).map(Some).collect(),
        }
    }

    fn inj2(&self, a: &usize, b: &usize) -> PfnMor {
        PfnMor {
            dom: *b,
            cod: a + b,
            table: (0..*b).map(|x| Some(a + x)).collect(),
        }
    }

    fn cotuple(&self, f: &PfnMor, g: &PfnMor) -> PfnMor {
        assert_eq!(f.cod, g.cod, "cotuple: codomain mismatch");
        let mut table = f.table.clone();
        table.extend_from_slice(&g.table);
        PfnMor {
            dom: f.dom + g.dom,
            cod: f.cod,
            table,
        }
    }

    fn try_sum(&self, f: &PfnMor, g: &PfnMor) -> Option<PfnMor> {
        assert_eq!((f.dom, f.cod), (g.dom, g.cod), "sum: type mismatch");
        let mut table = Vec::with_capacity(f.dom);
        for (a, b) in f.table.iter().zip(&g.table) {
            match (a, b) {
                (Some(_), Some(_)) => return None,
                (Some(v), None) | (None, Some(v)) => table.push(Some(*v)),
                (None, None) => table.push(None),
            }
        }
        Some(PfnMor {
            dom: f.dom,
            cod: f.cod,
            table,
        })
    }

    fn mor_sub(&self, g: &PfnMor, f: &PfnMor) -> Option<PfnMor> {
        assert_eq!((f.dom, f.cod), (g.dom, g.cod), "sub: type mismatch");
        let mut table = Vec::with_capacity(f.dom);
        for (a, b) in f.table.iter().zip(&g.table) {
            match (a, b) {
                (Some(x), Some(y)) if x == y => table.push(None),
                (Some(_), _) => return None, // f not below g
                (None, v) => table.push(*v),
            }
        }
        Some(PfnMor {
            dom: f.dom,
            cod: f.cod,
            table,
        })
    }

    fn ortho(&self, p: &PfnMor) -> PfnMor {
        assert_eq!(p.cod, 1, "ortho: not a predicate");
        PfnMor {
            dom: p.dom,
            cod: 1,
            table: p
                .table
                .iter()
                .map(|v| if v.is_some() { None } else { Some(0) })
                .collect(),
        }
    }

    fn scale(&self, s: &Rat, f: &PfnMor) -> PfnMor {
        if s.is_zero() {
            self.zero_mor(&f.dom, &f.cod)
        } else if s.is_one() {
            f.clone()
        } else {
            panic!("deterministic scalars are Boolean; got {:?}", s)
        }
    }

    fn mor_eq(&self, f: &PfnMor, g: &PfnMor) -> bool {
        f == g
    }

    fn scalar_value(&self, s: &PfnMor) -> Rat {
        assert_eq!((s.dom, s.cod), (1, 1));
        if s.table[0].is_some() {
            Rat::one()
        } else {
            Rat::zero()
        }
    }

    fn scalar_mor(&self, s: &Rat) -> PfnMor {
        PfnMor {
            dom: 1,
            cod: 1,
            table: vec![if s.is_zero() { None } else { Some(0) }],
        }
    }

    fn sc_eq(&self, a: &Rat, b: &Rat) -> bool {
        a == b
    }

    fn left_summand(&self, ab: &usize) -> usize {
        ab - 1
    }
}

impl LogicEffectus for Pfn {
    fn image(&self, f: &PfnMor) -> PfnMor {
        let mut hit = vec![false; f.cod];
        for v in f.table.iter().flatten() {
            hit[*v] = true;
        }
        PfnMor::predicate(&hit)
    }

    fn comprehension(&self, a: &usize, p: &PfnMor) -> Comprehension<usize, PfnMor> {
        assert_eq!((p.dom, p.cod), (*a, 1));
        let members: Vec<usize> = (0..*a).filter(|&x| p.defined_at(x)).collect();
        let proj = PfnMor {
            dom: members.len(),
            cod: *a,
            table: members.iter().copied().map(Some).collect(),
        };
        Comprehension {
            obj: members.len(),
            proj,
            pred: p.clone(),
        }
    }

    fn quotient(&self, a: &usize, p: &PfnMor) -> Quotient<usize, PfnMor> {
        assert_eq!((p.dom, p.cod), (*a, 1));
        let rest: Vec<usize> = (0..*a).filter(|&x| !p.defined_at(x)).collect();
        let mut table = vec![None; *a];
        for (i, &x) in rest.iter().enumerate() {
            table[x] = Some(i);
        }
        Quotient {
            obj: rest.len(),
            map: PfnMor {
                dom: *a,
                cod: rest.len(),
                table,
            },
            pred: p.clone(),
        }
    }

    fn comprehension_mediate(
        &self,
        c: &Comprehension<usize, PfnMor>,
        h: &PfnMor,
    ) -> Option<PfnMor> {
        // position of each member of {A|p} inside A
        let mut position = vec![None; c.pred.dom];
        for (i, x) in c.proj.table.iter().enumerate() {
            position[x.unwrap()] = Some(i);
        }
        let mut table = Vec::with_capacity(h.dom);
        for v in &h.table {
            match v {
                None => table.push(None),
                Some(y) => {
                    let i = position[*y]?;
                    table.push(Some(i))
                }
            }
        }
        Some(PfnMor {
            dom: h.dom,
            cod: c.obj,
            table,
        })
    }

    fn quotient_mediate(&self, q: &Quotient<usize, PfnMor>, f: &PfnMor) -> Option<PfnMor> {
        // requires f undefined wherever p holds
        for x in 0..f.dom {
            if q.pred.defined_at(x) && f.defined_at(x) {
                return None;
            }
        }
        let mut table = vec![None; q.obj];
        for (x, v) in q.map.table.iter().enumerate() {
            if let Some(i) = v {
                table[*i] = f.table[x];
            }
        }
        Some(PfnMor {
            dom: q.obj,
            cod: f.cod,
            table,
        })
    }

    fn invert_total_iso(&self, f: &PfnMor) -> Option<PfnMor> {
        if f.dom != f.cod {
            return None;
        }
        let mut table = vec![None; f.cod];
        for (x, v) in f.table.iter().enumerate() {
            match v {
                Some(y) if table[*y].is_none() => table[*y] = Some(x),
                _ => return None,
            }
        }
        if table.iter().any(|v| v.is_none()) {
            return None;
        }
        Some(PfnMor {
            dom: f.cod,
            cod: f.dom,
            table,
        })
    }

    fn asrt_general(&self, a: &usize, p: &PfnMor) -> PfnMor {
        assert_eq!((p.dom, p.cod), (*a, 1));
        PfnMor {
            dom: *a,
            cod: *a,
            table: (0..*a)
                .map(|x| if p.defined_at(x) { Some(x) } else { None })
                .collect(),
        }
    }
}

impl SampleGen for Pfn {
    fn gen_objects(&self, _cfg: &RunCfg) -> Vec<usize> {
        vec![0, 1, 2, 3]
    }

    fn gen_homset(
        &self,
        a: &usize,
        b: &usize,
        _cfg: &RunCfg,
        _rng: &mut ChaCha8Rng,
    ) -> (Regime, Vec<PfnMor>) {
        (
            Regime::Exhaustive,
            self.enumerate_homset(*a, *b, 1_000_000)
                .expect("small homset"),
        )
    }

    fn gen_scalars(&self, _cfg: &RunCfg, _rng: &mut ChaCha8Rng) -> Vec<Rat> {
        vec![Rat::zero(), Rat::one()]
    }

    fn gen_sharp_predicates(
        &self,
        a: &usize,
        _cfg: &RunCfg,
        _rng: &mut ChaCha8Rng,
    ) -> (Regime, Vec<PfnMor>) {
        (Regime::Exhaustive, self.all_predicates(*a))
    }

    fn normalize_direct(&self, omega: &PfnMor) -> Option<PfnMor> {
        // a nonzero deterministic substate is already a point state
        if omega.table[0].is_some() {
            Some(omega.clone())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homset_counts_match_the_formula() {
        let pfn = Pfn;
        assert_eq!(pfn.enumerate_homset(1, 1, 1000).unwrap().len(), 2);
        assert_eq!(pfn.enumerate_homset(2, 2, 1000).unwrap().len(), 9);
        assert_eq!(pfn.enumerate_homset(0, 5, 1000).unwrap().len(), 1);
        assert!(pfn.enumerate_homset(30, 9, 1000).is_err());
    }

    #[test]
    fn sum_is_union_of_disjoint_graphs() {
        let pfn = Pfn;
        let f = PfnMor::new(2, 2, vec![Some(0), None]).unwrap();
        let g = PfnMor::new(2, 2, vec![None, Some(1)]).unwrap();
        let s = pfn.try_sum(&f, &g).unwrap();
        assert!(pfn.is_total(&s));
        // f ⊕ 0 = f
        let z = pfn.zero_mor(&2, &2);
        assert_eq!(pfn.try_sum(&f, &z).unwrap(), f);
        // overlapping domains are not summable
        assert!(pfn.try_sum(&f, &f).is_none());
    }

    #[test]
    fn predicate_transformer_is_the_inverse_image_for_total_maps() {
        let pfn = Pfn;
        // f : {0,1,2} → {0,1}, 0,1 ↦ 0; 2 ↦ 1
        let f = PfnMor::new(3, 2, vec![Some(0), Some(0), Some(1)]).unwrap();
        let q = PfnMor::predicate(&[true, false]);
        let fq = pfn.pred_transform(&f, &q);
        assert_eq!(fq, PfnMor::predicate(&[true, true, false]));
        // id*(q) = q
        assert_eq!(pfn.pred_transform(&pfn.id(&2), &q), q);
    }

    #[test]
    fn liberal_transformer_adds_the_undefined_part() {
        let pfn = Pfn;
        // f defined only at 0
        let f = PfnMor::new(2, 1, vec![Some(0), None]).unwrap();
        let q = PfnMor::predicate(&[false]);
        // f□(∅) = ker f = {1}
        assert_eq!(pfn.f_box(&f, &q), PfnMor::predicate(&[false, true]));
    }

    #[test]
    fn image_is_the_set_of_attained_values() {
        let pfn = Pfn;
        let f = PfnMor::new(2, 3, vec![Some(1), None]).unwrap();
        assert_eq!(pfn.image(&f), PfnMor::predicate(&[false, true, false]));
        assert_eq!(
            pfn.image(&pfn.zero_mor(&2, &3)),
            PfnMor::predicate(&[false, false, false])
        );
    }

    #[test]
    fn comprehension_and_quotient_are_inclusion_and_corestriction() {
        let pfn = Pfn;
        let p = PfnMor::predicate(&[true, false, true]);
        let c = pfn.comprehension(&3, &p);
        assert_eq!(c.obj, 2);
        assert!(pfn.is_total(&c.proj));
        // equalizer property: 1∘π = p∘π
        assert_eq!(pfn.domain_pred(&c.proj), pfn.compose(&p, &c.proj));
        let q = pfn.quotient(&3, &p);
        assert_eq!(q.obj, 1);
        assert_eq!(pfn.kernel(&q.map), p);
    }

    #[test]
    fn assert_map_restricts_the_identity() {
        let pfn = Pfn;
        let p = PfnMor::predicate(&[true, false]);
        let a = pfn.asrt_general(&2, &p);
        assert_eq!(a.table, vec![Some(0), None]);
        assert_eq!(pfn.domain_pred(&a), p);
    }

    #[test]
    fn total_iso_inversion() {
        let pfn = Pfn;
        let f = PfnMor::new(3, 3, vec![Some(2), Some(0), Some(1)]).unwrap();
        let inv = pfn.invert_total_iso(&f).unwrap();
        assert_eq!(pfn.compose(&inv, &f), pfn.id(&3));
        let notiso = PfnMor::new(3, 3, vec![Some(2), Some(2), Some(1)]).unwrap();
        assert!(pfn.invert_total_iso(&notiso).is_none());
    }
}
