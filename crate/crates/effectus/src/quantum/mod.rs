//! The quantum instance at finite dimension.
//!
//! Objects are direct sums of matrix algebras `⊕ₖ M_{nₖ}`. A morphism
//! `A → B` is a subunital completely positive map `B → A` in the
//! Heisenberg direction, carried as one Choi matrix per block pair with
//! the fixed convention `C = Σᵢⱼ |i⟩⟨j| ⊗ f(|i⟩⟨j|)` (domain factor
//! first). Both the main path and the Kraus oracle use this convention.
//!
//! All comparisons run against the instance tolerance `eps`; morphism
//! equality allows `100·eps` of entrywise Choi deviation because test
//! composites chain up to about ten maps.

pub mod linalg;

use crate::category::{Comprehension, Effectus, LogicEffectus, Quotient, SampleGen};
use crate::error::{Error, Result};
use crate::exec::RunCfg;
use crate::report::Regime;
use crate::scalar::Real;
use linalg::{
    cone, cr, czero, floor_projection, herm_eig, is_hermitian, is_psd, matrix_unit, max_abs,
    min_eigenvalue, pinv_sqrt, sqrt_psd, support_isometry, support_projection, CMat,
};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A finite-dimensional algebra `⊕ₖ M_{nₖ}`. The empty block list is the
/// zero algebra.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct QObject {
    pub blocks: Vec<usize>,
}

impl QObject {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.contains(&0) {
            return Err(Error::ShapeMismatch("zero-dimensional block".into()));
        }
        Ok(QObject { blocks })
    }

    pub fn simple(n: usize) -> Self {
        QObject { blocks: vec![n] }
    }

    pub fn nblocks(&self) -> usize {
        self.blocks.len()
    }
}

/// An element of a block algebra: one matrix per block.
#[derive(Clone, Debug)]
pub struct QElement {
    pub obj: QObject,
    pub mats: Vec<CMat>,
}

impl QElement {
    pub fn zeros(obj: &QObject) -> Self {
        QElement {
            obj: obj.clone(),
            mats: obj.blocks.iter().map(|&n| CMat::zeros(n, n)).collect(),
        }
    }

    pub fn unit(obj: &QObject) -> Self {
        QElement {
            obj: obj.clone(),
            mats: obj.blocks.iter().map(|&n| CMat::identity(n, n)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        QElement {
            obj: self.obj.clone(),
            mats: self.mats.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &QElement) -> Self {
        QElement {
            obj: self.obj.clone(),
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QElement) -> Self {
        QElement {
            obj: self.obj.clone(),
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        self.mats.iter().map(|m| m.trace().re).sum()
    }

    pub fn max_dev(&self, other: &QElement) -> f64 {
        self.mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| max_abs(&(a - b)))
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.mats.iter().all(|m| is_hermitian(m, tol))
    }

    /// PSD in every block.
    pub fn is_psd(&self, eps: f64) -> bool {
        self.mats.iter().all(|m| is_psd(m, eps))
    }

    /// Effect: `0 ≤ a ≤ 1` blockwise within `eps`.
    pub fn is_effect(&self, eps: f64) -> bool {
        self.is_hermitian(10.0 * eps)
            && self.mats.iter().all(|m| {
                let (vals, _) = herm_eig(m);
                vals.iter().all(|&v| v >= -eps && v <= 1.0 + eps)
            })
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        self.mats.iter().all(|m| linalg::is_projection(m, tol))
    }

    /// Central element: every block is a scalar multiple of its identity.
    pub fn is_central(&self, tol: f64) -> bool {
        self.mats.iter().all(|m| {
            let n = m.nrows();
            if n == 0 {
                return true;
            }
            let s = m.trace() / cr(n as f64);
            max_abs(&(m - CMat::identity(n, n).scale_complex_local(s))) <= tol
        })
    }
}

trait ScaleComplexLocal {
    fn scale_complex_local(self, s: Complex64) -> CMat;
}

impl ScaleComplexLocal for CMat {
    fn scale_complex_local(self, s: Complex64) -> CMat {
        self.map(|v| v * s)
    }
}

/// Morphism `A → B` (Heisenberg map `B → A`) as block-indexed Choi
/// matrices: `choi[l·K + k]` encodes the component `M_{nₖ} → M_{mₗ}`,
/// stored as an `nₖ×nₖ` grid of `mₗ×mₗ` blocks whose `(i,j)` block is the
/// component applied to `|i⟩⟨j|`.
#[derive(Clone, Debug)]
pub struct QMorphism {
    pub dom: QObject,
    pub cod: QObject,
    pub choi: Vec<CMat>,
}

fn grid_get(c: &CMat, m: usize, i: usize, j: usize) -> CMat {
    c.view((i * m, j * m), (m, m)).into()
}

fn grid_set(c: &mut CMat, m: usize, i: usize, j: usize, v: &CMat) {
    c.view_mut((i * m, j * m), (m, m)).copy_from(v);
}

impl QMorphism {
    pub fn zeros(dom: &QObject, cod: &QObject) -> Self {
        let choi = dom
            .blocks
            .iter()
            .flat_map(|&m| cod.blocks.iter().map(move |&n| CMat::zeros(n * m, n * m)))
            .collect();
        QMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            choi,
        }
    }

    pub fn component(&self, l: usize, k: usize) -> &CMat {
        &self.choi[l * self.cod.nblocks() + k]
    }

    pub fn component_mut(&mut self, l: usize, k: usize) -> &mut CMat {
        &mut self.choi[l * self.cod.nblocks() + k]
    }

    /// Heisenberg application to a codomain element.
    pub fn apply(&self, b: &QElement) -> QElement {
        assert_eq!(b.obj, self.cod, "apply: element lives on the wrong object");
        let mut out = QElement::zeros(&self.dom);
        for (l, &ml) in self.dom.blocks.iter().enumerate() {
            for (k, &nk) in self.cod.blocks.iter().enumerate() {
                let c = self.component(l, k);
                for i in 0..nk {
                    for j in 0..nk {
                        let coeff = b.mats[k][(i, j)];
                        if coeff.norm() == 0.0 {
                            continue;
                        }
                        out.mats[l] += grid_get(c, ml, i, j).scale_complex_local(coeff);
                    }
                }
            }
        }
        out
    }

    /// `f(1)`: the Heisenberg image of the codomain unit.
    pub fn heisenberg_unit(&self) -> QElement {
        self.apply(&QElement::unit(&self.cod))
    }

    /// Builds the morphism whose Heisenberg map sends each codomain matrix
    /// unit to the given domain element.
    pub fn from_heisenberg(
        dom: &QObject,
        cod: &QObject,
        f: impl Fn(usize, usize, usize) -> QElement,
    ) -> Self {
        let mut out = QMorphism::zeros(dom, cod);
        for (k, &nk) in cod.blocks.iter().enumerate() {
            for i in 0..nk {
                for j in 0..nk {
                    let elem = f(k, i, j);
                    for (l, &ml) in dom.blocks.iter().enumerate() {
                        let c = out.component_mut(l, k);
                        grid_set(c, ml, i, j, &elem.mats[l]);
                    }
                }
            }
        }
        out
    }

    /// Predicate `A → I` carrying an effect.
    pub fn from_effect(e: &QElement) -> Self {
        let unit = QObject::simple(1);
        let mut m = QMorphism::zeros(&e.obj, &unit);
        for (l, mat) in e.mats.iter().enumerate() {
            *m.component_mut(l, 0) = mat.clone();
        }
        m
    }

    /// The effect carried by a predicate.
    pub fn to_effect(&self) -> QElement {
        assert_eq!(self.cod, QObject::simple(1), "not a predicate");
        QElement {
            obj: self.dom.clone(),
            mats: (0..self.dom.nblocks())
                .map(|l| self.component(l, 0).clone())
                .collect(),
        }
    }

    /// Substate `I → A` from a (sub)density element.
    pub fn from_density(rho: &QElement) -> Self {
        let unit = QObject::simple(1);
        let mut m = QMorphism::zeros(&unit, &rho.obj);
        for (k, mat) in rho.mats.iter().enumerate() {
            *m.component_mut(0, k) = mat.transpose();
        }
        m
    }

    /// The (sub)density element carried by a substate.
    pub fn to_density(&self) -> QElement {
        assert_eq!(self.dom, QObject::simple(1), "not a substate");
        QElement {
            obj: self.cod.clone(),
            mats: (0..self.cod.nblocks())
                .map(|k| self.component(0, k).transpose())
                .collect(),
        }
    }

    pub fn max_choi_dev(&self, other: &QMorphism) -> f64 {
        self.choi
            .iter()
            .zip(&other.choi)
            .map(|(a, b)| max_abs(&(a - b)))
            .fold(0.0, f64::max)
    }

    /// Complete positivity: every Choi block PSD within `eps`. The
    /// witness is the most negative eigenvalue with its block pair.
    pub fn cp_witness(&self, eps: f64) -> (bool, f64, (usize, usize)) {
        let mut worst = f64::INFINITY;
        let mut at = (0, 0);
        for l in 0..self.dom.nblocks() {
            for k in 0..self.cod.nblocks() {
                let c = self.component(l, k);
                if c.nrows() == 0 {
                    continue;
                }
                let m = min_eigenvalue(c);
                if m < worst {
                    worst = m;
                    at = (l, k);
                }
            }
        }
        if worst == f64::INFINITY {
            worst = 0.0;
        }
        (worst >= -eps, worst, at)
    }
}

/// Choi matrix of `b ↦ Σₜ Kₜ b Kₜ†` for rectangular Kraus operators
/// `out_dim × in_dim`; positive semidefinite by construction.
pub fn kraus_to_choi(kraus: &[CMat]) -> Result<CMat> {
    let Some(first) = kraus.first() else {
        return Err(Error::ShapeMismatch("empty Kraus family".into()));
    };
    let (m, n) = first.shape();
    if kraus.iter().any(|k| k.shape() != (m, n)) {
        return Err(Error::ShapeMismatch("inconsistent Kraus shapes".into()));
    }
    let mut c = CMat::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            let e = matrix_unit(n, i, j);
            let mut acc = CMat::zeros(m, m);
            for k in kraus {
                acc += k * &e * k.adjoint();
            }
            grid_set(&mut c, m, i, j, &acc);
        }
    }
    Ok(c)
}

/// Corner of an algebra by a projection: the compressed object, one
/// isometry `V` per surviving block (`V V† = e`, `V† V = 1`), and the
/// index of the original block each surviving block came from.
pub struct Corner {
    pub obj: QObject,
    pub isometries: Vec<CMat>,
    pub block_map: Vec<usize>,
}

/// Per block, an isometry onto the eigenvalue-one eigenspace of `e`,
/// columns ordered by descending eigenvalue; zero-rank blocks are
/// dropped.
pub fn corner_compress(a: &QObject, e: &QElement, eps: f64) -> Result<Corner> {
    if !e.is_projection(100.0 * eps) {
        return Err(Error::NotProjection);
    }
    let mut blocks = Vec::new();
    let mut isometries = Vec::new();
    let mut block_map = Vec::new();
    for (k, mat) in e.mats.iter().enumerate() {
        let v = support_isometry(mat, 0.5);
        if v.ncols() > 0 {
            blocks.push(v.ncols());
            isometries.push(v);
            block_map.push(k);
        }
        let _ = a;
    }
    Ok(Corner {
        obj: QObject { blocks },
        isometries,
        block_map,
    })
}

/// The quantum instance, with its global tolerance.
#[derive(Clone, Debug)]
pub struct Quantum {
    pub eps: f64,
}

impl Default for Quantum {
    fn default() -> Self {
        Quantum { eps: 1e-9 }
    }
}

impl Quantum {
    pub fn new(eps: f64) -> Self {
        Quantum { eps }
    }

    fn mor_tol(&self) -> f64 {
        100.0 * self.eps
    }

    /// Floor of an effect: greatest projection below it (the
    /// eigenvalue-one eigenspace, blockwise).
    pub fn floor_effect(&self, e: &QElement) -> QElement {
        e.map(|m| floor_projection(m, self.eps))
    }

    /// Ceiling of an effect: least projection above it (the support,
    /// blockwise).
    pub fn ceiling_effect(&self, e: &QElement) -> QElement {
        e.map(|m| support_projection(m, self.eps))
    }

    pub fn sqrt_effect(&self, e: &QElement) -> Result<QElement> {
        let mut mats = Vec::with_capacity(e.mats.len());
        for m in &e.mats {
            mats.push(sqrt_psd(m, self.eps).map_err(Error::NotPsd)?);
        }
        Ok(QElement {
            obj: e.obj.clone(),
            mats,
        })
    }

    /// Density-side representative `ρ_f` with `tr(ρ_f · b) = tr(f(b))`,
    /// computed from the partial trace of each Choi block over the domain
    /// side, summed over domain blocks.
    pub fn trace_dual(&self, f: &QMorphism) -> QElement {
        let mut out = QElement::zeros(&f.cod);
        for (k, &nk) in f.cod.blocks.iter().enumerate() {
            for (l, &ml) in f.dom.blocks.iter().enumerate() {
                let c = f.component(l, k);
                for i in 0..nk {
                    for j in 0..nk {
                        out.mats[k][(j, i)] += grid_get(c, ml, i, j).trace();
                    }
                }
            }
        }
        out
    }

    /// Pointwise order: `(g − f)(b)` is PSD for the sampled PSD inputs.
    /// Weaker than the algebraic (Choi) order in general.
    pub fn pointwise_leq(
        &self,
        f: &QMorphism,
        g: &QMorphism,
        samples: usize,
        rng: &mut ChaCha8Rng,
    ) -> bool {
        assert_eq!(
            (f.dom.clone(), f.cod.clone()),
            (g.dom.clone(), g.cod.clone())
        );
        let mut inputs: Vec<QElement> = vec![QElement::unit(&f.cod)];
        for (k, &n) in f.cod.blocks.iter().enumerate() {
            for i in 0..n {
                let mut e = QElement::zeros(&f.cod);
                e.mats[k][(i, i)] = cone();
                inputs.push(e);
            }
        }
        for _ in 0..samples {
            inputs.push(self.random_pure_density(&f.cod, rng));
        }
        inputs.iter().all(|b| {
            let d = g.apply(b).sub(&f.apply(b));
            d.is_psd(self.mor_tol())
        })
    }

    // ---- random generation ----

    fn random_cmat(&self, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMat {
        CMat::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
    }

    /// Random effect with spectrum inside `[0, u]` for a random `u ≤ 1`.
    pub fn random_effect(&self, obj: &QObject, rng: &mut ChaCha8Rng) -> QElement {
        let mats = obj
            .blocks
            .iter()
            .map(|&n| {
                let g = self.random_cmat(n, n, rng);
                let a = &g * g.adjoint();
                let (vals, _) = herm_eig(&a);
                let top = vals.first().copied().unwrap_or(1.0).max(1e-6);
                let u = 0.2 + 0.8 * rng.random::<f64>();
                a.scale(u / top)
            })
            .collect();
        QElement {
            obj: obj.clone(),
            mats,
        }
    }

    /// Random projection of random rank per block.
    pub fn random_projection(&self, obj: &QObject, rng: &mut ChaCha8Rng) -> QElement {
        let mats = obj
            .blocks
            .iter()
            .map(|&n| {
                let g = self.random_cmat(n, n, rng);
                let h = &g + g.adjoint();
                let (_, vecs) = herm_eig(&h);
                let rank = rng.random_range(0..=n);
                let mut p = CMat::zeros(n, n);
                for c in 0..rank {
                    let col = vecs.column(c);
                    p += col * col.adjoint();
                }
                p
            })
            .collect();
        QElement {
            obj: obj.clone(),
            mats,
        }
    }

    /// Random density element of total trace one.
    pub fn random_density(&self, obj: &QObject, rng: &mut ChaCha8Rng) -> QElement {
        let mut mats: Vec<CMat> = obj
            .blocks
            .iter()
            .map(|&n| {
                let g = self.random_cmat(n, n, rng);
                &g * g.adjoint()
            })
            .collect();
        let total: f64 = mats.iter().map(|m| m.trace().re).sum();
        for m in &mut mats {
            *m = m.scale(1.0 / total.max(1e-12));
        }
        QElement {
            obj: obj.clone(),
            mats,
        }
    }

    /// Random pure density supported in a single random block.
    pub fn random_pure_density(&self, obj: &QObject, rng: &mut ChaCha8Rng) -> QElement {
        let mut out = QElement::zeros(obj);
        let k = rng.random_range(0..obj.nblocks());
        let n = obj.blocks[k];
        let v = self.random_cmat(n, 1, rng);
        let norm = v.norm().max(1e-12);
        let v = v.unscale(norm);
        out.mats[k] = &v * v.adjoint();
        out
    }

    /// Random Kraus-generated morphism; unital (total) when requested,
    /// otherwise dampened by a random effect on the domain side.
    pub fn random_kraus_mor(
        &self,
        dom: &QObject,
        cod: &QObject,
        total: bool,
        rng: &mut ChaCha8Rng,
    ) -> QMorphism {
        loop {
            let mut m = QMorphism::zeros(dom, cod);
            for (l, &ml) in dom.blocks.iter().enumerate() {
                for (k, &nk) in cod.blocks.iter().enumerate() {
                    let kraus: Vec<CMat> = (0..2).map(|_| self.random_cmat(ml, nk, rng)).collect();
                    *m.component_mut(l, k) = kraus_to_choi(&kraus).expect("consistent shapes");
                }
            }
            // normalize to a channel: conjugate by f(1)^{-1/2} on the domain side
            let s = m.heisenberg_unit();
            if s.mats.iter().any(|mat| min_eigenvalue(mat) < 1e-6) {
                continue; // resample a degenerate draw
            }
            let d: Vec<CMat> = s.mats.iter().map(|mat| pinv_sqrt(mat, self.eps)).collect();
            for (l, &ml) in dom.blocks.iter().enumerate() {
                for (k, &nk) in cod.blocks.iter().enumerate() {
                    let c = m.component(l, k).clone();
                    let mut nc = CMat::zeros(nk * ml, nk * ml);
                    for i in 0..nk {
                        for j in 0..nk {
                            grid_set(&mut nc, ml, i, j, &(&d[l] * grid_get(&c, ml, i, j) * &d[l]));
                        }
                    }
                    *m.component_mut(l, k) = nc;
                }
            }
            if !total {
                // dampen by a random effect r: b ↦ √r f(b) √r
                let r = self.random_effect(dom, rng);
                let roots: Vec<CMat> = r
                    .mats
                    .iter()
                    .map(|mat| sqrt_psd(mat, self.eps).expect("effect is PSD"))
                    .collect();
                for (l, &ml) in dom.blocks.iter().enumerate() {
                    for (k, &nk) in cod.blocks.iter().enumerate() {
                        let c = m.component(l, k).clone();
                        let mut nc = CMat::zeros(nk * ml, nk * ml);
                        for i in 0..nk {
                            for j in 0..nk {
                                grid_set(
                                    &mut nc,
                                    ml,
                                    i,
                                    j,
                                    &(&roots[l] * grid_get(&c, ml, i, j) * &roots[l]),
                                );
                            }
                        }
                        *m.component_mut(l, k) = nc;
                    }
                }
            }
            return m;
        }
    }
}

impl Effectus for Quantum {
    type Obj = QObject;
    type Mor = QMorphism;
    type Sc = Real;

    fn name(&self) -> &'static str {
        "quantum"
    }

    fn unit(&self) -> QObject {
        QObject::simple(1)
    }

    fn zero_obj(&self) -> QObject {
        QObject { blocks: vec![] }
    }

    fn dom(&self, f: &QMorphism) -> QObject {
        f.dom.clone()
    }

    fn cod(&self, f: &QMorphism) -> QObject {
        f.cod.clone()
    }

    fn id(&self, a: &QObject) -> QMorphism {
        let mut m = QMorphism::zeros(a, a);
        for (l, &n) in a.blocks.iter().enumerate() {
            let c = m.component_mut(l, l);
            for i in 0..n {
                for j in 0..n {
                    grid_set(c, n, i, j, &matrix_unit(n, i, j));
                }
            }
        }
        m
    }

    fn zero_mor(&self, a: &QObject, b: &QObject) -> QMorphism {
        QMorphism::zeros(a, b)
    }

    fn truth(&self, a: &QObject) -> QMorphism {
        QMorphism::from_effect(&QElement::unit(a))
    }

    fn compose(&self, g: &QMorphism, f: &QMorphism) -> QMorphism {
        assert_eq!(f.cod, g.dom, "compose: type mismatch");
        // Heisenberg: (g∘f)^H = f^H ∘ g^H, read off the Choi grids
        QMorphism::from_heisenberg(&f.dom, &g.cod, |m, i, j| {
            let mats = g
                .dom
                .blocks
                .iter()
                .enumerate()
                .map(|(k, &nk)| grid_get(g.component(k, m), nk, i, j))
                .collect();
            f.apply(&QElement {
                obj: g.dom.clone(),
                mats,
            })
        })
    }

    fn coprod(&self, a: &QObject, b: &QObject) -> QObject {
        let mut blocks = a.blocks.clone();
        blocks.extend_from_slice(&b.blocks);
        QObject { blocks }
    }

    fn inj1(&self, a: &QObject, b: &QObject) -> QMorphism {
        // Heisenberg: (x ⊕ y) ↦ x
        let ab = self.coprod(a, b);
        let mut m = QMorphism::zeros(a, &ab);
        for (l, &n) in a.blocks.iter().enumerate() {
            let c = m.component_mut(l, l);
            for i in 0..n {
                for j in 0..n {
                    grid_set(c, n, i, j, &matrix_unit(n, i, j));
                }
            }
        }
        m
    }

    fn inj2(&self, a: &QObject, b: &QObject) -> QMorphism {
        let ab = self.coprod(a, b);
        let off = a.nblocks();
        let mut m = QMorphism::zeros(b, &ab);
        for (l, &n) in b.blocks.iter().enumerate() {
            let c = m.component_mut(l, off + l);
            for i in 0..n {
                for j in 0..n {
                    grid_set(c, n, i, j, &matrix_unit(n, i, j));
                }
            }
        }
        m
    }

    fn cotuple(&self, f: &QMorphism, g: &QMorphism) -> QMorphism {
        assert_eq!(f.cod, g.cod, "cotuple: codomain mismatch");
        let dom = self.coprod(&f.dom, &g.dom);
        let mut choi = f.choi.clone();
        choi.extend(g.choi.iter().cloned());
        QMorphism {
            dom,
            cod: f.cod.clone(),
            choi,
        }
    }

    fn try_sum(&self, f: &QMorphism, g: &QMorphism) -> Option<QMorphism> {
        assert_eq!((&f.dom, &f.cod), (&g.dom, &g.cod), "sum: type mismatch");
        let total = f.heisenberg_unit().add(&g.heisenberg_unit());
        let slack = QElement::unit(&f.dom).sub(&total);
        if !slack.is_psd(self.eps) {
            return None;
        }
        Some(QMorphism {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            choi: f.choi.iter().zip(&g.choi).map(|(a, b)| a + b).collect(),
        })
    }

    fn mor_sub(&self, g: &QMorphism, f: &QMorphism) -> Option<QMorphism> {
        assert_eq!((&f.dom, &f.cod), (&g.dom, &g.cod), "sub: type mismatch");
        let choi: Vec<CMat> = g.choi.iter().zip(&f.choi).map(|(a, b)| a - b).collect();
        // the difference must itself be completely positive
        if choi
            .iter()
            .filter(|c| c.nrows() > 0)
            .any(|c| min_eigenvalue(c) < -self.eps)
        {
            return None;
        }
        Some(QMorphism {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            choi,
        })
    }

    fn ortho(&self, p: &QMorphism) -> QMorphism {
        let e = p.to_effect();
        QMorphism::from_effect(&QElement::unit(&e.obj).sub(&e))
    }

    fn scale(&self, s: &Real, f: &QMorphism) -> QMorphism {
        QMorphism {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            choi: f.choi.iter().map(|c| c.scale(s.0)).collect(),
        }
    }

    fn mor_eq(&self, f: &QMorphism, g: &QMorphism) -> bool {
        f.dom == g.dom && f.cod == g.cod && f.max_choi_dev(g) <= self.mor_tol()
    }

    fn scalar_value(&self, s: &QMorphism) -> Real {
        assert_eq!((&s.dom, &s.cod), (&self.unit(), &self.unit()));
        Real(s.choi[0][(0, 0)].re)
    }

    fn scalar_mor(&self, s: &Real) -> QMorphism {
        let unit = self.unit();
        let mut m = QMorphism::zeros(&unit, &unit);
        m.choi[0][(0, 0)] = cr(s.0);
        m
    }

    fn sc_eq(&self, a: &Real, b: &Real) -> bool {
        (a.0 - b.0).abs() <= self.mor_tol()
    }

    fn left_summand(&self, ab: &QObject) -> QObject {
        assert_eq!(ab.blocks.last(), Some(&1), "not a coproduct with the unit");
        QObject {
            blocks: ab.blocks[..ab.nblocks() - 1].to_vec(),
        }
    }
}

impl LogicEffectus for Quantum {
    fn image(&self, f: &QMorphism) -> QMorphism {
        let rho = self.trace_dual(f);
        QMorphism::from_effect(&self.ceiling_effect(&rho))
    }

    fn comprehension(&self, a: &QObject, p: &QMorphism) -> Comprehension<QObject, QMorphism> {
        let floor = self.floor_effect(&p.to_effect());
        let corner = corner_compress(a, &floor, self.eps).expect("floor is a projection");
        // π : {A|p} → A, Heisenberg x ↦ V† x V blockwise
        let proj = QMorphism::from_heisenberg(&corner.obj, a, |k, i, j| {
            let mut out = QElement::zeros(&corner.obj);
            for (c, &src) in corner.block_map.iter().enumerate() {
                if src == k {
                    let v = &corner.isometries[c];
                    let n = a.blocks[k];
                    out.mats[c] = v.adjoint() * matrix_unit(n, i, j) * v;
                }
            }
            out
        });
        Comprehension {
            obj: corner.obj,
            proj,
            pred: p.clone(),
        }
    }

    fn quotient(&self, a: &QObject, p: &QMorphism) -> Quotient<QObject, QMorphism> {
        let complement = QElement::unit(a).sub(&p.to_effect());
        let support = self.ceiling_effect(&complement);
        let corner = corner_compress(a, &support, self.eps).expect("support is a projection");
        let roots: Vec<CMat> = complement
            .mats
            .iter()
            .map(|m| sqrt_psd(m, self.eps).expect("complement of an effect is PSD"))
            .collect();
        // ξ : A → A/p, Heisenberg x ↦ √(p⊥) W x W† √(p⊥)
        let map = QMorphism::from_heisenberg(a, &corner.obj, |c, i, j| {
            let src = corner.block_map[c];
            let w = &corner.isometries[c];
            let r = corner.obj.blocks[c];
            let mut out = QElement::zeros(a);
            out.mats[src] = &roots[src] * w * matrix_unit(r, i, j) * w.adjoint() * &roots[src];
            out
        });
        Quotient {
            obj: corner.obj,
            map,
            pred: p.clone(),
        }
    }

    fn comprehension_mediate(
        &self,
        c: &Comprehension<QObject, QMorphism>,
        h: &QMorphism,
    ) -> Option<QMorphism> {
        let a = h.cod.clone();
        let floor = self.floor_effect(&c.pred.to_effect());
        let complement = QElement::unit(&a).sub(&floor);
        // precondition h□(p) = 1 ⟺ h(⌊p⌋⊥) = 0
        if h.apply(&complement).max_dev(&QElement::zeros(&h.dom)) > self.mor_tol() {
            return None;
        }
        let corner = corner_compress(&a, &floor, self.eps).ok()?;
        let mediated = QMorphism::from_heisenberg(&h.dom, &corner.obj, |cb, i, j| {
            let src = corner.block_map[cb];
            let v = &corner.isometries[cb];
            let r = corner.obj.blocks[cb];
            let mut elem = QElement::zeros(&a);
            elem.mats[src] = v * matrix_unit(r, i, j) * v.adjoint();
            h.apply(&elem)
        });
        Some(mediated)
    }

    fn quotient_mediate(
        &self,
        q: &Quotient<QObject, QMorphism>,
        f: &QMorphism,
    ) -> Option<QMorphism> {
        let a = f.dom.clone();
        let complement = QElement::unit(&a).sub(&q.pred.to_effect());
        // precondition p ≤ ker f ⟺ f(1) ≤ p⊥
        if !complement.sub(&f.heisenberg_unit()).is_psd(self.mor_tol()) {
            return None;
        }
        let support = self.ceiling_effect(&complement);
        let corner = corner_compress(&a, &support, self.eps).ok()?;
        let dinv: Vec<CMat> = complement
            .mats
            .iter()
            .map(|m| pinv_sqrt(m, self.eps))
            .collect();
        // f̄ : A/p → B, Heisenberg b ↦ W† √(p⊥)⁻¹ f(b) √(p⊥)⁻¹ W
        let mediated = QMorphism::from_heisenberg(&corner.obj, &f.cod, |k, i, j| {
            let n = f.cod.blocks[k];
            let mut b = QElement::zeros(&f.cod);
            b.mats[k] = matrix_unit(n, i, j);
            let fb = f.apply(&b);
            let mut out = QElement::zeros(&corner.obj);
            for (c, &src) in corner.block_map.iter().enumerate() {
                let w = &corner.isometries[c];
                out.mats[c] = w.adjoint() * &dinv[src] * &fb.mats[src] * &dinv[src] * w;
            }
            out
        });
        Some(mediated)
    }

    fn invert_total_iso(&self, f: &QMorphism) -> Option<QMorphism> {
        let dim_dom: usize = f.dom.blocks.iter().map(|n| n * n).sum();
        let dim_cod: usize = f.cod.blocks.iter().map(|n| n * n).sum();
        if dim_dom != dim_cod {
            return None;
        }
        if dim_dom == 0 {
            return Some(QMorphism::zeros(&f.cod, &f.dom));
        }
        // transfer matrix of the Heisenberg map over matrix units
        let mut transfer = CMat::zeros(dim_dom, dim_cod);
        let mut col = 0;
        for (k, &nk) in f.cod.blocks.iter().enumerate() {
            for i in 0..nk {
                for j in 0..nk {
                    let mut b = QElement::zeros(&f.cod);
                    b.mats[k] = matrix_unit(nk, i, j);
                    let fb = f.apply(&b);
                    let mut row = 0;
                    for mat in &fb.mats {
                        for v in mat.iter() {
                            transfer[(row, col)] = *v;
                            row += 1;
                        }
                    }
                    col += 1;
                }
            }
        }
        let inv = transfer.try_inverse()?;
        // rebuild the inverse morphism from its Heisenberg action
        let unvec = |vec_col: &CMat, obj: &QObject| {
            let mut elem = QElement::zeros(obj);
            let mut row = 0;
            for mat in &mut elem.mats {
                let n = mat.nrows();
                for c in 0..n {
                    for r in 0..n {
                        mat[(r, c)] = vec_col[(row, 0)];
                        row += 1;
                    }
                }
            }
            elem
        };
        let mut col_index = std::collections::HashMap::new();
        let mut col = 0;
        for (l, &ml) in f.dom.blocks.iter().enumerate() {
            for i in 0..ml {
                for j in 0..ml {
                    col_index.insert((l, i, j), col);
                    col += 1;
                }
            }
        }
        let g = QMorphism::from_heisenberg(&f.cod, &f.dom, |l, i, j| {
            let c = col_index[&(l, i, j)];
            let column: CMat = inv
                .column(c)
                .into_owned()
                .reshape_generic(nalgebra::Dyn(dim_dom), nalgebra::Dyn(1));
            unvec(&column, &f.cod)
        });
        // certify: g is a genuine inverse morphism
        let (cp, _, _) = g.cp_witness(self.mor_tol());
        if !cp {
            return None;
        }
        if !self.mor_eq(&self.compose(&g, f), &self.id(&f.dom))
            || !self.mor_eq(&self.compose(f, &g), &self.id(&f.cod))
        {
            return None;
        }
        Some(g)
    }

    fn asrt_general(&self, a: &QObject, p: &QMorphism) -> QMorphism {
        let e = p.to_effect();
        let roots: Vec<CMat> = e
            .mats
            .iter()
            .map(|m| sqrt_psd(m, self.eps).expect("effect is PSD"))
            .collect();
        QMorphism::from_heisenberg(a, a, |k, i, j| {
            let n = a.blocks[k];
            let mut out = QElement::zeros(a);
            out.mats[k] = &roots[k] * matrix_unit(n, i, j) * &roots[k];
            out
        })
    }
}

impl SampleGen for Quantum {
    fn gen_objects(&self, _cfg: &RunCfg) -> Vec<QObject> {
        vec![
            QObject::simple(2),
            QObject::simple(3),
            QObject::new(vec![2, 1]).unwrap(),
        ]
    }

    fn gen_homset(
        &self,
        a: &QObject,
        b: &QObject,
        cfg: &RunCfg,
        rng: &mut ChaCha8Rng,
    ) -> (Regime, Vec<QMorphism>) {
        let unit = self.unit();
        let mut out = vec![self.zero_mor(a, b)];
        if *a == unit && *b != unit {
            for _ in 0..6 {
                out.push(QMorphism::from_density(&self.random_density(b, rng)));
            }
            for _ in 0..6 {
                let rho = self.random_density(b, rng);
                let c = 0.2 + 0.8 * rng.random::<f64>();
                out.push(QMorphism::from_density(&rho.map(|m| m.scale(c))));
            }
        } else if *b == unit && *a != unit {
            out.push(self.truth(a));
            for _ in 0..10 {
                out.push(QMorphism::from_effect(&self.random_effect(a, rng)));
            }
        } else {
            for _ in 0..12 {
                out.push(self.random_kraus_mor(a, b, true, rng));
            }
            for _ in 0..12 {
                out.push(self.random_kraus_mor(a, b, false, rng));
            }
        }
        (
            Regime::Sampled {
                seed: cfg.seed,
                count: out.len(),
            },
            out,
        )
    }

    fn gen_scalars(&self, _cfg: &RunCfg, rng: &mut ChaCha8Rng) -> Vec<Real> {
        let mut out = vec![Real(0.0), Real(1.0), Real(0.5)];
        for _ in 0..8 {
            out.push(Real(rng.random::<f64>()));
        }
        out
    }

    fn gen_sharp_predicates(
        &self,
        a: &QObject,
        cfg: &RunCfg,
        rng: &mut ChaCha8Rng,
    ) -> (Regime, Vec<QMorphism>) {
        let mut out = vec![self.truth(a), QMorphism::from_effect(&QElement::zeros(a))];
        // a fixed family of coordinate projections
        for (k, &n) in a.blocks.iter().enumerate() {
            for i in 0..n {
                let mut e = QElement::zeros(a);
                e.mats[k][(i, i)] = cone();
                out.push(QMorphism::from_effect(&e));
            }
        }
        for _ in 0..22 {
            out.push(QMorphism::from_effect(&self.random_projection(a, rng)));
        }
        (
            Regime::Sampled {
                seed: cfg.seed,
                count: out.len(),
            },
            out,
        )
    }

    fn normalize_direct(&self, omega: &QMorphism) -> Option<QMorphism> {
        let rho = omega.to_density();
        let t = rho.trace();
        if t <= self.eps {
            return None;
        }
        Some(QMorphism::from_density(&rho.map(|m| m.scale(1.0 / t))))
    }
}

pub fn pauli_matrices() -> [CMat; 4] {
    let i = Complex64::new(0.0, 1.0);
    [
        CMat::identity(2, 2),
        CMat::from_row_slice(2, 2, &[czero(), cone(), cone(), czero()]),
        CMat::from_row_slice(2, 2, &[czero(), -i, i, czero()]),
        CMat::from_row_slice(2, 2, &[cone(), czero(), czero(), -cone()]),
    ]
}

pub fn hadamard() -> CMat {
    let s = 1.0 / 2.0_f64.sqrt();
    CMat::from_row_slice(2, 2, &[cr(s), cr(s), cr(s), cr(-s)])
}
