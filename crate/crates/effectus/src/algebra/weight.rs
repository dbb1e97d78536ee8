//! Weight modules over the unit interval and their normalization.

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

/// A partial module over `[0, 1]` with a weight map. The laws
/// (`|x| = 0 ⇒ x = 0`, `|x| ⊥ |y| ⇒ x ⊥ y`, `|s·x| = s·|x|`) are checked by
/// the law suites, not enforced by the trait.
pub trait WeightModule {
    type Elem: Clone + std::fmt::Debug;
    type Sc: Scalar;

    fn weight(&self, x: &Self::Elem) -> Self::Sc;
    fn scale(&self, s: &Self::Sc, x: &Self::Elem) -> Self::Elem;
    fn try_sum(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;
    fn zero_elem(&self) -> Self::Elem;
    fn elem_eq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn sc_eq(&self, a: &Self::Sc, b: &Self::Sc) -> bool;

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.sc_eq(&self.weight(x), &Self::Sc::zero())
    }
}

/// Normalizes a nonzero element: returns the unique `x̄` of weight one with
/// `x = |x| · x̄`, built as the n-fold sum of `(1/(n|x|)) · x` for
/// `n = ⌈1/|x|⌉`.
pub fn normalize<W: WeightModule>(module: &W, x: &W::Elem) -> Result<W::Elem> {
    let t = module.weight(x);
    if module.sc_eq(&t, &W::Sc::zero()) {
        return Err(Error::ZeroElement);
    }
    let n = W::Sc::one()
        .div(&t)
        .map(|inv| inv.to_f64().ceil() as u32)
        .unwrap_or(1)
        .max(1);
    let nt = (0..n).fold(W::Sc::zero(), |acc, _| acc.add(&t));
    let r = W::Sc::one().div(&nt).ok_or(Error::ZeroElement)?;
    let part = module.scale(&r, x);
    let mut acc = part.clone();
    for _ in 1..n {
        acc = module
            .try_sum(&acc, &part)
            .expect("n-fold sum of weight 1/n terms is defined");
    }
    Ok(acc)
}

/// Subdistributions over a finite set, with exact rational masses; the
/// base consists of the probability distributions.
#[derive(Clone, Debug)]
pub struct SubdistModule {
    pub size: usize,
}

impl WeightModule for SubdistModule {
    type Elem = Vec<Rat>;
    type Sc = Rat;

    fn weight(&self, x: &Self::Elem) -> Rat {
        x.iter().fold(Rat::zero(), |acc, v| acc.add(v))
    }

    fn scale(&self, s: &Rat, x: &Self::Elem) -> Self::Elem {
        x.iter().map(|v| s.mul(v)).collect()
    }

    fn try_sum(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem> {
        let sum: Vec<Rat> = x.iter().zip(y).map(|(a, b)| a.add(b)).collect();
        if self.weight(&sum) <= Rat::one() {
            Some(sum)
        } else {
            None
        }
    }

    fn zero_elem(&self) -> Self::Elem {
        vec![Rat::zero(); self.size]
    }

    fn elem_eq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x == y
    }

    fn sc_eq(&self, a: &Rat, b: &Rat) -> bool {
        a == b
    }
}

/// All subdistributions on `size` points over the grid `{0, 1/d, …, 1}`,
/// enumerated; backs the exhaustive uniqueness checks.
pub fn enumerate_grid_subdists(size: usize, denom: usize) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; size];
    loop {
        if current.iter().sum::<usize>() <= denom {
            out.push(
                current
                    .iter()
                    .map(|&k| Rat::new(k as i64, denom as i64))
                    .collect(),
            );
        }
        // odometer over {0..denom}^size
        let mut i = 0;
        loop {
            if i == size {
                return out;
            }
            current[i] += 1;
            if current[i] <= denom {
                break;
            }
            current[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustively verifies that `normalized` is the unique weight-one element
/// `y` with `|x| · y = x` among `candidates`.
pub fn unique_normalization<W: WeightModule>(
    module: &W,
    x: &W::Elem,
    normalized: &W::Elem,
    candidates: &[W::Elem],
) -> bool {
    let t = module.weight(x);
    let one = W::Sc::one();
    candidates
        .iter()
        .filter(|y| module.sc_eq(&module.weight(y), &one))
        .filter(|y| module.elem_eq(&module.scale(&t, y), x))
        .all(|y| module.elem_eq(y, normalized))
}

/// Law suite body for a weight module over sampled elements and scalars:
/// weight is a module map, zero-reflecting, and summability-reflecting.
pub fn weight_module_violations<W: WeightModule>(
    module: &W,
    elems: &[W::Elem],
    scalars: &[W::Sc],
) -> Vec<String> {
    let mut bad = Vec::new();
    let one = W::Sc::one();
    for (i, x) in elems.iter().enumerate() {
        if module.sc_eq(&module.weight(x), &W::Sc::zero()) && !module.is_zero_elem(x) {
            bad.push(format!("|x|=0 but x≠0 at elem {i}"));
        }
        for s in scalars {
            let sw = s.mul(&module.weight(x));
            if !module.sc_eq(&module.weight(&module.scale(s, x)), &sw) {
                bad.push(format!("|s·x| ≠ s·|x| at elem {i}, s={:?}", s));
            }
        }
        for (j, y) in elems.iter().enumerate() {
            let ws = module.weight(x).add(&module.weight(y));
            let weights_summable = ws <= one;
            match module.try_sum(x, y) {
                Some(sum) => {
                    if !module.sc_eq(&module.weight(&sum), &ws) {
                        bad.push(format!("|x⊕y| ≠ |x|⊕|y| at elems {i},{j}"));
                    }
                }
                None => {
                    if weights_summable {
                        bad.push(format!("|x|⊥|y| but x̸⊥y at elems {i},{j}"));
                    }
                }
            }
        }
    }
    bad
}

trait IsZeroElem: WeightModule {
    fn is_zero_elem(&self, x: &Self::Elem) -> bool;
}

impl<W: WeightModule> IsZeroElem for W {
    fn is_zero_elem(&self, x: &Self::Elem) -> bool {
        self.elem_eq(x, &self.zero_elem())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_normalizes_by_rescaling() {
        // ½|a⟩ → 1|a⟩
        let m = SubdistModule { size: 2 };
        let x = vec![Rat::new(1, 2), Rat::zero()];
        let n = normalize(&m, &x).unwrap();
        assert_eq!(n, vec![Rat::one(), Rat::zero()]);
    }

    #[test]
    fn mass_is_divided_out() {
        // ¼|a⟩ + ¼|b⟩ → ½|a⟩ + ½|b⟩
        let m = SubdistModule { size: 2 };
        let x = vec![Rat::new(1, 4), Rat::new(1, 4)];
        let n = normalize(&m, &x).unwrap();
        assert_eq!(n, vec![Rat::new(1, 2), Rat::new(1, 2)]);
        assert!(matches!(
            normalize(&m, &m.zero_elem()),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn normalization_is_unique_in_the_enumerated_grid_module() {
        let m = SubdistModule { size: 2 };
        let candidates = enumerate_grid_subdists(2, 8);
        for x in &candidates {
            if m.is_zero(x) {
                continue;
            }
            let n = normalize(&m, x).unwrap();
            assert_eq!(m.weight(&n), Rat::one());
            assert_eq!(m.scale(&m.weight(x), &n), *x);
            assert!(unique_normalization(&m, x, &n, &candidates));
        }
    }

    #[test]
    fn subdist_module_satisfies_the_weight_laws() {
        let m = SubdistModule { size: 2 };
        let elems = enumerate_grid_subdists(2, 4);
        let scalars: Vec<Rat> = (0..=4).map(|k| Rat::new(k, 4)).collect();
        assert!(weight_module_violations(&m, &elems, &scalars).is_empty());
    }
}
