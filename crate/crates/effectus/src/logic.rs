//! Instance-generic logic layer: floor/ceiling, sharp predicates and
//! their lattice operations, the diamond/box adjoint pair on sharp
//! predicates, sharp morphisms, assert maps built from
//! comprehension/quotient splittings, and the kernel–image factorization.
//!
//! Everything here is written against [`LogicEffectus`]; the instances
//! supply images, comprehension, quotients and mediating maps.

use crate::category::{Comprehension, LogicEffectus, Quotient};
use crate::error::{Error, Result};

/// Floor `⌊p⌋ = im(π_p)`: the greatest sharp predicate below `p`.
pub fn floor<E: LogicEffectus>(e: &E, a: &E::Obj, p: &E::Mor) -> E::Mor {
    let c = e.comprehension(a, p);
    e.image(&c.proj)
}

/// Ceiling `⌈p⌉ = ⌊p⊥⌋⊥`: the least sharp predicate above `p`.
pub fn ceiling<E: LogicEffectus>(e: &E, a: &E::Obj, p: &E::Mor) -> E::Mor {
    e.ortho(&floor(e, a, &e.ortho(p)))
}

/// A predicate is sharp when it equals its floor.
pub fn is_sharp<E: LogicEffectus>(e: &E, a: &E::Obj, p: &E::Mor) -> bool {
    e.mor_eq(&floor(e, a, p), p)
}

/// Join of sharp predicates: the image of the cotuple of their
/// comprehensions.
pub fn sharp_join<E: LogicEffectus>(e: &E, a: &E::Obj, p: &E::Mor, q: &E::Mor) -> Result<E::Mor> {
    if !is_sharp(e, a, p) || !is_sharp(e, a, q) {
        return Err(Error::NotSharp);
    }
    let cp = e.comprehension(a, p);
    let cq = e.comprehension(a, q);
    Ok(e.image(&e.cotuple(&cp.proj, &cq.proj)))
}

/// Meet of sharp predicates: the image of the nested comprehension chain
/// `{{A|p} | π_p*(q)} ↣ {A|p} ↣ A`.
pub fn sharp_meet<E: LogicEffectus>(e: &E, a: &E::Obj, p: &E::Mor, q: &E::Mor) -> Result<E::Mor> {
    if !is_sharp(e, a, p) || !is_sharp(e, a, q) {
        return Err(Error::NotSharp);
    }
    let cp = e.comprehension(a, p);
    let restricted = e.pred_transform(&cp.proj, q);
    let inner = e.comprehension(&cp.obj, &restricted);
    Ok(e.image(&e.compose(&cp.proj, &inner.proj)))
}

/// `f♦(p) = im(f ∘ π_p)`, the direct-image half of the adjunction on
/// sharp predicates.
pub fn diamond<E: LogicEffectus>(e: &E, a: &E::Obj, f: &E::Mor, p: &E::Mor) -> E::Mor {
    let c = e.comprehension(a, p);
    e.image(&e.compose(f, &c.proj))
}

/// `f■(q) = ⌊f□(q)⌋`, its right adjoint.
pub fn box_sharp<E: LogicEffectus>(e: &E, f: &E::Mor, q: &E::Mor) -> E::Mor {
    floor(e, &e.dom(f), &e.f_box(f, q))
}

/// A morphism is sharp when `f*` preserves sharpness on the supplied
/// family of sharp predicates on its codomain.
pub fn is_sharp_morphism<E: LogicEffectus>(e: &E, f: &E::Mor, sharp_on_cod: &[E::Mor]) -> bool {
    let a = e.dom(f);
    sharp_on_cod
        .iter()
        .all(|q| is_sharp(e, &a, &e.pred_transform(f, q)))
}

/// The splitting `ζ_p : A → {A|p}` of a sharp predicate's comprehension:
/// a quotient for `p⊥` with `ζ_p ∘ π_p = id`.
pub fn sharp_splitting<E: LogicEffectus>(e: &E, a: &E::Obj, p: &E::Mor) -> Result<E::Mor> {
    if !is_sharp(e, a, p) {
        return Err(Error::NotSharp);
    }
    let c = e.comprehension(a, p);
    let q = e.quotient(a, &e.ortho(p));
    let phi = e.compose(&q.map, &c.proj);
    let phi_inv = e
        .invert_total_iso(&phi)
        .ok_or_else(|| Error::ObjectMismatch("ξ_{p⊥} ∘ π_p is not invertible".into()))?;
    Ok(e.compose(&phi_inv, &q.map))
}

/// Assert map `asrt_p = π_p ∘ ζ_p` of a sharp predicate.
pub fn asrt_sharp<E: LogicEffectus>(e: &E, a: &E::Obj, p: &E::Mor) -> Result<E::Mor> {
    let c = e.comprehension(a, p);
    let zeta = sharp_splitting(e, a, p)?;
    Ok(e.compose(&c.proj, &zeta))
}

/// The factorization `f = π_{im f} ∘ θ_f ∘ ξ_{ker f}` with `θ_f` total
/// and faithful.
pub struct Factorization<O, M> {
    pub quotient: Quotient<O, M>,
    pub middle: M,
    pub comprehension: Comprehension<O, M>,
}

pub fn factorize<E: LogicEffectus>(e: &E, f: &E::Mor) -> Result<Factorization<E::Obj, E::Mor>> {
    let a = e.dom(f);
    let b = e.cod(f);
    let ker = e.kernel(f);
    let im = e.image(f);
    let quot = e.quotient(&a, &ker);
    let through_quotient = e
        .quotient_mediate(&quot, f)
        .ok_or_else(|| Error::ObjectMismatch("ker f is not below ker f".into()))?;
    let compr = e.comprehension(&b, &im);
    let middle = e
        .comprehension_mediate(&compr, &through_quotient)
        .ok_or_else(|| Error::ObjectMismatch("mediated map does not land in im f".into()))?;
    Ok(Factorization {
        quotient: quot,
        middle,
        comprehension: compr,
    })
}

/// Checks a factorization: recomposes to `f`, with a total and faithful
/// middle map. Returns a description of the first violated clause.
pub fn check_factorization<E: LogicEffectus>(
    e: &E,
    f: &E::Mor,
    fac: &Factorization<E::Obj, E::Mor>,
) -> Option<String> {
    let recomposed = e.compose(
        &fac.comprehension.proj,
        &e.compose(&fac.middle, &fac.quotient.map),
    );
    if !e.mor_eq(&recomposed, f) {
        return Some("recomposition differs from f".into());
    }
    if !e.is_total(&fac.middle) {
        return Some("middle map is not total".into());
    }
    let im_middle = e.image(&fac.middle);
    if !e.mor_eq(&im_middle, &e.truth(&fac.comprehension.obj)) {
        return Some("middle map is not faithful".into());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Effectus;
    use crate::pfn::{Pfn, PfnMor};
    use crate::prob::{Prob, ProbMor};
    use crate::scalar::{Rat, Scalar};

    #[test]
    fn deterministic_floor_is_identity_and_everything_is_sharp() {
        let pfn = Pfn;
        for p in pfn.all_predicates(4) {
            assert!(is_sharp(&pfn, &4, &p));
            assert_eq!(floor(&pfn, &4, &p), p);
        }
    }

    #[test]
    fn probabilistic_floor_keeps_only_certainty() {
        let pr = Prob;
        // p with values {0, ½, 1}: floor is the indicator of {p = 1}
        let p = ProbMor::predicate(&[Rat::one(), Rat::new(1, 2), Rat::zero()]);
        let f = floor(&pr, &3, &p);
        assert_eq!(f.kernel, vec![Rat::one(), Rat::zero(), Rat::zero()]);
        // sharp ⟺ 0/1-valued, on the whole quarter grid
        for p in pr.enumerate_grid_predicates(3, 4) {
            let zero_one = p.kernel.iter().all(|v| v.is_zero() || v.is_one());
            assert_eq!(is_sharp(&pr, &3, &p), zero_one, "{:?}", p.kernel);
        }
    }

    #[test]
    fn floor_of_truth_and_falsity_are_fixed() {
        let pr = Prob;
        let t = pr.truth(&3);
        let z = pr.zero_mor(&3, &1);
        assert_eq!(floor(&pr, &3, &t), t);
        assert_eq!(floor(&pr, &3, &z), z);
    }

    #[test]
    fn deterministic_meet_and_join_are_intersection_and_union() {
        let pfn = Pfn;
        let p = PfnMor::predicate(&[true, true, false, false]);
        let q = PfnMor::predicate(&[false, true, true, false]);
        assert_eq!(
            sharp_meet(&pfn, &4, &p, &q).unwrap(),
            PfnMor::predicate(&[false, true, false, false])
        );
        assert_eq!(
            sharp_join(&pfn, &4, &p, &q).unwrap(),
            PfnMor::predicate(&[true, true, true, false])
        );
    }

    #[test]
    fn factorization_recovers_the_classic_image_factorization() {
        let pfn = Pfn;
        for f in pfn.enumerate_homset(3, 2, 10_000).unwrap() {
            let fac = factorize(&pfn, &f).unwrap();
            assert!(check_factorization(&pfn, &f, &fac).is_none(), "{:?}", f);
        }
    }

    #[test]
    fn assert_maps_from_splitting_match_the_direct_formula() {
        let pfn = Pfn;
        for p in pfn.all_predicates(3) {
            let via_splitting = asrt_sharp(&pfn, &3, &p).unwrap();
            let direct = pfn.asrt_general(&3, &p);
            assert_eq!(via_splitting, direct);
        }
    }

    #[test]
    fn sharp_morphisms_in_prob_are_the_zero_one_kernels() {
        let pr = Prob;
        let (_, sharp) = {
            use crate::category::SampleGen;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
            pr.gen_sharp_predicates(&2, &crate::exec::RunCfg::default(), &mut rng)
        };
        let crisp = ProbMor::from_pfn(&PfnMor::new(2, 2, vec![Some(1), None]).unwrap());
        assert!(is_sharp_morphism(&pr, &crisp, &sharp));
        let fuzzy = pr.scale(&Rat::new(1, 2), &pr.id(&2));
        assert!(!is_sharp_morphism(&pr, &fuzzy, &sharp));
    }
}
