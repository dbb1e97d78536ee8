//! Independent linear-algebra oracles against the categorical
//! constructions in the quantum instance: the range-intersection meet,
//! projection-order equivalences, ortho-sharpness against projection
//! tests, and least-projection properties of images.

use effectus::category::{Effectus, LogicEffectus};
use effectus::logic;
use effectus::quantum::linalg::{
    cr, matrix_unit, max_abs, range_intersection, support_projection, CMat,
};
use effectus::quantum::{QElement, QMorphism, QObject, Quantum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: f64 = 1e-9;
const TOL: f64 = 1e-7;

fn q() -> Quantum {
    Quantum::new(EPS)
}

#[test]
fn rank_one_pair_has_full_join_and_trivial_meet() {
    let q = q();
    let m2 = QObject::simple(2);
    let p0 = QMorphism::from_effect(&QElement {
        obj: m2.clone(),
        mats: vec![matrix_unit(2, 0, 0)],
    });
    let plus = QMorphism::from_effect(&QElement {
        obj: m2.clone(),
        mats: vec![CMat::from_fn(2, 2, |_, _| cr(0.5))],
    });
    let join = logic::sharp_join(&q, &m2, &p0, &plus).unwrap();
    assert!(q.mor_eq(&join, &q.truth(&m2)));
    let meet = logic::sharp_meet(&q, &m2, &p0, &plus).unwrap();
    assert!(q.mor_eq(&meet, &q.zero_mor(&m2, &q.unit())));
}

#[test]
fn comprehension_chain_meet_agrees_with_the_range_intersection_oracle() {
    let q = q();
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for obj in [QObject::simple(2), QObject::simple(3)] {
        for _ in 0..60 {
            let a = q.random_projection(&obj, &mut rng);
            let b = q.random_projection(&obj, &mut rng);
            let meet = logic::sharp_meet(
                &q,
                &obj,
                &QMorphism::from_effect(&a),
                &QMorphism::from_effect(&b),
            )
            .unwrap()
            .to_effect();
            // oracle: orthonormal basis of ker(1−a) ∩ ker(1−b) from the
            // stacked nullspace
            let oracle = QElement {
                obj: obj.clone(),
                mats: a
                    .mats
                    .iter()
                    .zip(&b.mats)
                    .map(|(pa, pb)| {
                        let v = range_intersection(pa, pb, TOL);
                        &v * v.adjoint()
                    })
                    .collect(),
            };
            assert!(
                meet.max_dev(&oracle) <= TOL,
                "meet deviates from the range oracle by {}",
                meet.max_dev(&oracle)
            );
        }
    }
}

#[test]
fn projection_order_equivalences() {
    let q = q();
    let m3 = QObject::simple(3);
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for _ in 0..80 {
        let a = q.random_projection(&m3, &mut rng);
        let b = if rng.random::<bool>() {
            q.random_projection(&m3, &mut rng)
        } else {
            // a commuting partner: a projection onto a sub/superspace
            let extra = q.random_projection(&m3, &mut rng);
            QElement {
                obj: m3.clone(),
                mats: vec![support_projection(&(&a.mats[0] + &extra.mats[0]), 0.5)],
            }
        };
        let pa = QMorphism::from_effect(&a);
        let pb = QMorphism::from_effect(&b);
        let leq = q.pred_leq(&pa, &pb);
        let ab = &a.mats[0] * &b.mats[0];
        let absorbed = max_abs(&(&ab - &a.mats[0])) <= TOL;
        let kills_complement = max_abs(&(&a.mats[0] * (CMat::identity(3, 3) - &b.mats[0]))) <= TOL;
        assert_eq!(leq, absorbed, "p ≤ q vs pq = p");
        assert_eq!(leq, kills_complement, "p ≤ q vs pq⊥ = 0");
    }
}

#[test]
fn ortho_sharpness_coincides_with_being_a_projection() {
    let q = q();
    let m2 = QObject::simple(2);
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    // projections are sharp
    for _ in 0..20 {
        let p = q.random_projection(&m2, &mut rng);
        assert!(logic::is_sharp(&q, &m2, &QMorphism::from_effect(&p)));
        assert!(p.is_projection(TOL));
    }
    // effects with spectrum bounded away from {0, 1} are not sharp, and
    // their sampled-witness meet with the complement is nonzero
    for _ in 0..20 {
        let raw = q.random_effect(&m2, &mut rng);
        let squeezed = raw.map(|m| CMat::identity(2, 2).scale(0.1) + m.scale(0.64));
        assert!(squeezed.is_effect(EPS));
        let pred = QMorphism::from_effect(&squeezed);
        assert!(!logic::is_sharp(&q, &m2, &pred));
        assert!(!squeezed.is_projection(0.05));
        // a uniform sub-effect witnesses failure of disjointness with the
        // complement: min(p, p⊥) dominates a strictly positive multiple
        // of the identity
        let complement = QElement::unit(&m2).sub(&squeezed);
        let ridge = QElement::unit(&m2).map(|m| m.scale(0.05));
        assert!(squeezed.sub(&ridge).is_psd(EPS));
        assert!(complement.sub(&ridge).is_psd(EPS));
    }
}

#[test]
fn image_is_least_among_tested_certificates() {
    let q = q();
    let m3 = QObject::simple(3);
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    for _ in 0..30 {
        let f = q.random_kraus_mor(&m3, &m3, false, &mut rng);
        let im = q.image(&f);
        let im_eff = im.to_effect();
        // f(im⊥) = 0
        let killed = f.apply(&QElement::unit(&m3).sub(&im_eff));
        assert!(killed.max_dev(&QElement::zeros(&m3)) <= TOL);
        // any tested projection q with f(q⊥) = 0 dominates the image
        for _ in 0..10 {
            let cand = q.random_projection(&m3, &mut rng);
            let killed = f.apply(&QElement::unit(&m3).sub(&cand));
            if killed.max_dev(&QElement::zeros(&m3)) <= EPS {
                assert!(q.pred_leq(&im, &QMorphism::from_effect(&cand)));
            }
        }
        // dropping any support eigenvector breaks the certificate
        let rho = q.trace_dual(&f);
        let (vals, vecs) = effectus::quantum::linalg::herm_eig(&rho.mats[0]);
        if let Some(top) = vals.first() {
            if *top > 1e-6 {
                let col = vecs.column(0);
                let smaller = QElement {
                    obj: m3.clone(),
                    mats: vec![&im_eff.mats[0] - col * col.adjoint()],
                };
                let leftover = f.apply(&QElement::unit(&m3).sub(&smaller));
                assert!(
                    leftover.max_dev(&QElement::zeros(&m3)) > TOL,
                    "image minus a support direction still certifies f"
                );
            }
        }
    }
}

#[test]
fn sharp_morphisms_are_the_multiplicative_maps() {
    let q = q();
    let m2 = QObject::simple(2);
    let mut rng = ChaCha8Rng::seed_from_u64(89);
    let (_, sharp_family) = {
        use effectus::category::SampleGen;
        q.gen_sharp_predicates(&m2, &effectus::exec::RunCfg::default(), &mut rng)
    };
    // unitary conjugation is sharp
    let h = effectus::quantum::hadamard();
    let conj = QMorphism::from_heisenberg(&m2, &m2, |_, i, j| {
        let mut e = QElement::zeros(&m2);
        e.mats[0] = h.adjoint() * matrix_unit(2, i, j) * &h;
        e
    });
    assert!(logic::is_sharp_morphism(&q, &conj, &sharp_family));
    // the assert map of a non-sharp effect is not sharp
    let fuzzy = QElement {
        obj: m2.clone(),
        mats: vec![CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            2,
            [cr(0.75), cr(0.25)],
        ))],
    };
    let asrt = q.asrt_general(&m2, &QMorphism::from_effect(&fuzzy));
    assert!(!logic::is_sharp_morphism(&q, &asrt, &sharp_family));
}
