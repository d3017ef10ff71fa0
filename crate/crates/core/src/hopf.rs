//! Hopf algebras as sparse structure tensors: multiplication and
//! comultiplication tables, element arithmetic in H and H (x) H, axiom
//! validation with named residuals, group algebras, duals, and antipode
//! recovery by linear solve.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::mat::{diff_norm, solve_linear, Matrix, SolveOutcome};
use crate::scalar::{Scalar, ToleranceConfig};

/// Multiplication structure constants m^k_{ij}, grouped by input pair:
/// x_i x_j = sum_k m^k_{ij} x_k.
#[derive(Clone, Debug, PartialEq)]
pub struct MultTable<S> {
    pub dim: usize,
    rows: BTreeMap<(u32, u32), Vec<(u32, S)>>,
}

impl<S: Scalar> MultTable<S> {
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (u32, u32, u32, S)>) -> Self {
        let mut acc: BTreeMap<(u32, u32), BTreeMap<u32, S>> = BTreeMap::new();
        for (i, j, k, c) in triplets {
            let cell = acc.entry((i, j)).or_default().entry(k).or_insert_with(S::zero);
            *cell = cell.add(&c);
        }
        let rows = acc
            .into_iter()
            .map(|(ij, m)| (ij, m.into_iter().filter(|(_, c)| !c.is_zero()).collect()))
            .filter(|(_, v): &(_, Vec<_>)| !v.is_empty())
            .collect();
        MultTable { dim, rows }
    }

    pub fn row(&self, i: u32, j: u32) -> &[(u32, S)] {
        self.rows.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, u32, &S)> {
        self.rows
            .iter()
            .flat_map(|(&(i, j), v)| v.iter().map(move |(k, c)| (i, j, *k, c)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.values().map(Vec::len).sum()
    }

    /// Index by first input: i -> [(j, k, c)].
    pub fn by_first(&self) -> BTreeMap<u32, Vec<(u32, u32, S)>> {
        let mut out: BTreeMap<u32, Vec<(u32, u32, S)>> = BTreeMap::new();
        for (i, j, k, c) in self.iter() {
            out.entry(i).or_default().push((j, k, c.clone()));
        }
        out
    }

    /// Index by second input: j -> [(i, k, c)].
    pub fn by_second(&self) -> BTreeMap<u32, Vec<(u32, u32, S)>> {
        let mut out: BTreeMap<u32, Vec<(u32, u32, S)>> = BTreeMap::new();
        for (i, j, k, c) in self.iter() {
            out.entry(j).or_default().push((i, k, c.clone()));
        }
        out
    }

    /// Index by output: k -> [(i, j, c)].
    pub fn by_output(&self) -> BTreeMap<u32, Vec<(u32, u32, S)>> {
        let mut out: BTreeMap<u32, Vec<(u32, u32, S)>> = BTreeMap::new();
        for (i, j, k, c) in self.iter() {
            out.entry(k).or_default().push((i, j, c.clone()));
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> MultTable<T> {
        MultTable {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|(&ij, v)| (ij, v.iter().map(|(k, c)| (*k, f(c))).collect()))
                .collect(),
        }
    }
}

/// Comultiplication structure constants Delta_i^{jk}, grouped by input:
/// Delta(x_i) = sum_{jk} Delta_i^{jk} x_j (x) x_k.
#[derive(Clone, Debug, PartialEq)]
pub struct ComultTable<S> {
    pub dim: usize,
    rows: Vec<Vec<(u32, u32, S)>>,
}

impl<S: Scalar> ComultTable<S> {
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (u32, u32, u32, S)>) -> Self {
        let mut acc: Vec<BTreeMap<(u32, u32), S>> = vec![BTreeMap::new(); dim];
        for (i, j, k, c) in triplets {
            let cell = acc[i as usize].entry((j, k)).or_insert_with(S::zero);
            *cell = cell.add(&c);
        }
        let rows = acc
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((j, k), c)| (j, k, c))
                    .collect()
            })
            .collect();
        ComultTable { dim, rows }
    }

    pub fn row(&self, i: u32) -> &[(u32, u32, S)] {
        &self.rows[i as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, u32, &S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.iter().map(move |(j, k, c)| (i as u32, *j, *k, c)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Index by output pair: (j, k) -> [(i, c)]. These are exactly the
    /// multiplication rows of the dual algebra.
    pub fn co_rows(&self) -> BTreeMap<(u32, u32), Vec<(u32, S)>> {
        let mut out: BTreeMap<(u32, u32), Vec<(u32, S)>> = BTreeMap::new();
        for (i, j, k, c) in self.iter() {
            out.entry((j, k)).or_default().push((i, c.clone()));
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> ComultTable<T> {
        ComultTable {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|v| v.iter().map(|(j, k, c)| (*j, *k, f(c))).collect())
                .collect(),
        }
    }
}

/// A bialgebra given by structure tensors over a labeled basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Bialgebra<S> {
    pub dim: usize,
    pub labels: Vec<String>,
    pub mult: MultTable<S>,
    pub unit: Vec<S>,
    pub comult: ComultTable<S>,
    pub counit: Vec<S>,
}

/// A bialgebra together with its antipode matrix (S(x_j) = sum_i S_{ij} x_i).
#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra<S> {
    pub bi: Bialgebra<S>,
    pub antipode: Matrix<S>,
}

impl<S: Scalar> Bialgebra<S> {
    /// Product of two dense coefficient vectors.
    pub fn mul_vec(&self, a: &[S], b: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let cij = ai.mul(bj);
                for (k, c) in self.mult.row(i as u32, j as u32) {
                    out[*k as usize].add_assign(&cij.mul(c));
                }
            }
        }
        out
    }

    pub fn comult_vec(&self, a: &[S]) -> Elt2<S> {
        let mut out = Elt2::zero(self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, k, c) in self.comult.row(i as u32) {
                out.insert_add(*j, *k, ai.mul(c));
            }
        }
        out
    }

    pub fn counit_of(&self, a: &[S]) -> S {
        let mut acc = S::zero();
        for (ai, e) in a.iter().zip(&self.counit) {
            acc.add_assign(&ai.mul(e));
        }
        acc
    }

    pub fn basis_vec(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        v[i] = S::one();
        v
    }

    /// Trace of left multiplication by each basis element.
    pub fn reg_trace_vector(&self) -> Vec<S> {
        let mut t = vec![S::zero(); self.dim];
        for (i, j, k, c) in self.mult.iter() {
            if j == k {
                t[i as usize].add_assign(c);
            }
        }
        t
    }

    /// Trace of left multiplication by an element.
    pub fn reg_trace(&self, a: &[S]) -> S {
        let t = self.reg_trace_vector();
        let mut acc = S::zero();
        for (ai, ti) in a.iter().zip(&t) {
            acc.add_assign(&ai.mul(ti));
        }
        acc
    }

    /// Matrix of left multiplication by `a` in the defining basis.
    pub fn left_mult_matrix(&self, a: &[S]) -> Matrix<S> {
        let mut m: Matrix<S> = Matrix::zero(self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.mult.row(i as u32, j as u32) {
                    m.at_mut(*k as usize, j).add_assign(&ai.mul(c));
                }
            }
        }
        m
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> Bialgebra<T> {
        Bialgebra {
            dim: self.dim,
            labels: self.labels.clone(),
            mult: self.mult.map(f),
            unit: self.unit.iter().map(f).collect(),
            comult: self.comult.map(f),
            counit: self.counit.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar> HopfAlgebra<S> {
    pub fn dim(&self) -> usize {
        self.bi.dim
    }

    pub fn antipode_vec(&self, a: &[S]) -> Vec<S> {
        self.antipode.mat_vec(a)
    }

    /// Residual of S^2 = id; zero for every semisimple algebra in scope.
    pub fn antipode_involution_residual(&self) -> f64 {
        let s2 = self.antipode.matmul(&self.antipode);
        diff_norm(&s2, &Matrix::identity(self.bi.dim))
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> HopfAlgebra<T> {
        HopfAlgebra {
            bi: self.bi.map(f),
            antipode: self.antipode.map(f),
        }
    }
}

/// Convert a rational Hopf algebra to the floating backend.
pub fn to_complex(h: &HopfAlgebra<crate::scalar::Rat>) -> HopfAlgebra<crate::scalar::C64> {
    h.map(&|c: &crate::scalar::Rat| crate::scalar::C64(c.to_c64()))
}

/// Convert any scalar backend to the floating backend.
pub fn to_complex_generic<S: Scalar>(h: &HopfAlgebra<S>) -> HopfAlgebra<crate::scalar::C64> {
    h.map(&|c: &S| crate::scalar::C64(c.to_c64()))
}

// ---------------------------------------------------------------------------
// Elements of H (x) H and H (x) H (x) H
// ---------------------------------------------------------------------------

/// Sparse element of H (x) H in the basis {x_i (x) x_j}.
#[derive(Clone, Debug, PartialEq)]
pub struct Elt2<S> {
    pub dim: usize,
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> Elt2<S> {
    pub fn zero(dim: usize) -> Self {
        Elt2 {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (u32, u32, S)>) -> Self {
        let mut out = Elt2::zero(dim);
        for (i, j, c) in terms {
            out.insert_add(i, j, c);
        }
        out
    }

    pub fn insert_add(&mut self, i: u32, j: u32, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &S)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn outer(a: &[S], b: &[S]) -> Self {
        debug_assert_eq!(a.len(), b.len());
        let mut out = Elt2::zero(a.len());
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                out.insert_add(i as u32, j as u32, ai.mul(bj));
            }
        }
        out
    }

    /// The element 1 (x) 1.
    pub fn one_one(bi: &Bialgebra<S>) -> Self {
        Elt2::outer(&bi.unit, &bi.unit)
    }

    /// Leg swap: sum c x_i (x) x_j -> sum c x_j (x) x_i.
    pub fn swap(&self) -> Self {
        Elt2 {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Product in the algebra H (x) H. Exact scalars reduce in parallel
    /// above a size threshold; floating products stay sequential so that
    /// accumulation order is reproducible.
    pub fn mul(&self, bi: &Bialgebra<S>, other: &Elt2<S>) -> Elt2<S> {
        let mul_into = |acc: &mut Elt2<S>, a: u32, b: u32, c1: &S| {
            for (a2, b2, c2) in other.terms() {
                let c = c1.mul(c2);
                for (u, cu) in bi.mult.row(a, a2) {
                    for (v, cv) in bi.mult.row(b, b2) {
                        acc.insert_add(*u, *v, c.mul(cu).mul(cv));
                    }
                }
            }
        };
        if S::EXACT && self.terms.len() * other.terms.len() > (1 << 16) {
            let terms: Vec<(u32, u32, &S)> = self.terms().collect();
            return terms
                .par_iter()
                .fold(
                    || Elt2::zero(self.dim),
                    |mut acc, (a, b, c1)| {
                        mul_into(&mut acc, *a, *b, c1);
                        acc
                    },
                )
                .reduce(|| Elt2::zero(self.dim), |a, b| a.add(&b));
        }
        let mut out = Elt2::zero(self.dim);
        for (a, b, c1) in self.terms() {
            mul_into(&mut out, a, b, c1);
        }
        out
    }

    pub fn add(&self, other: &Elt2<S>) -> Elt2<S> {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.insert_add(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &S) -> Elt2<S> {
        Elt2 {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter_map(|(&k, c)| {
                    let v = c.mul(s);
                    (!v.is_zero()).then_some((k, v))
                })
                .collect(),
        }
    }

    /// Apply linear maps to the legs: (f (x) g)(sum c x_i (x) x_j).
    pub fn apply_legs(&self, f: &Matrix<S>, g: &Matrix<S>) -> Elt2<S> {
        let mut out = Elt2::zero(self.dim);
        for (i, j, c) in self.terms() {
            for a in 0..f.rows {
                let fa = f.at(a, i as usize);
                if fa.is_zero() {
                    continue;
                }
                for b in 0..g.rows {
                    let gb = g.at(b, j as usize);
                    if gb.is_zero() {
                        continue;
                    }
                    out.insert_add(a as u32, b as u32, c.mul(fa).mul(gb));
                }
            }
        }
        out
    }

    /// Pair both legs against linear functionals: (f (x) g)(self).
    pub fn pair_functionals(&self, f: &[S], g: &[S]) -> S {
        let mut acc = S::zero();
        for (i, j, c) in self.terms() {
            acc.add_assign(&c.mul(&f[i as usize]).mul(&g[j as usize]));
        }
        acc
    }

    /// Contract the second leg with a functional: (1 (x) p)(self) as a vector.
    pub fn contract_right(&self, p: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, j, c) in self.terms() {
            out[i as usize].add_assign(&c.mul(&p[j as usize]));
        }
        out
    }

    /// Contract the first leg with a functional: (p (x) 1)(self) as a vector.
    pub fn contract_left(&self, p: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, j, c) in self.terms() {
            out[j as usize].add_assign(&c.mul(&p[i as usize]));
        }
        out
    }

    pub fn diff_norm(&self, other: &Elt2<S>) -> f64 {
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.extend(other.terms.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|k| {
                let a = self.terms.get(k).cloned().unwrap_or_else(S::zero);
                let b = other.terms.get(k).cloned().unwrap_or_else(S::zero);
                a.sub(&b).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Scalar::abs).fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> Elt2<T> {
        Elt2 {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter_map(|(&k, c)| {
                    let v = f(c);
                    (!v.is_zero()).then_some((k, v))
                })
                .collect(),
        }
    }
}

/// Sparse element of H (x) H (x) H, only as far as the hexagon checks need.
#[derive(Clone, Debug, PartialEq)]
pub struct Elt3<S> {
    pub dim: usize,
    terms: BTreeMap<(u32, u32, u32), S>,
}

impl<S: Scalar> Elt3<S> {
    pub fn zero(dim: usize) -> Self {
        Elt3 {
            dim,
            terms: BTreeMap::new(),
        }
    }

    fn insert_add(&mut self, key: (u32, u32, u32), c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// (Delta (x) id)(r).
    pub fn comult_leg1(bi: &Bialgebra<S>, r: &Elt2<S>) -> Self {
        let mut out = Elt3::zero(r.dim);
        for (a, b, c) in r.terms() {
            for (j, k, cd) in bi.comult.row(a) {
                out.insert_add((*j, *k, b), c.mul(cd));
            }
        }
        out
    }

    /// (id (x) Delta)(r).
    pub fn comult_leg2(bi: &Bialgebra<S>, r: &Elt2<S>) -> Self {
        let mut out = Elt3::zero(r.dim);
        for (a, b, c) in r.terms() {
            for (j, k, cd) in bi.comult.row(b) {
                out.insert_add((a, *j, *k), c.mul(cd));
            }
        }
        out
    }

    fn pair_product(bi: &Bialgebra<S>, r: &Elt2<S>, second_legs: bool) -> Self {
        // second_legs: r13 r23 = sum c c' a_t (x) a_t' (x) b_t b_t';
        // otherwise:   r13 r12 = sum c c' a_t a_t' (x) b_t' (x) b_t.
        let combine = |acc: &mut Elt3<S>, a1: u32, b1: u32, c1: &S| {
            for (a2, b2, c2) in r.terms() {
                let c = c1.mul(c2);
                if second_legs {
                    for (v, cv) in bi.mult.row(b1, b2) {
                        acc.insert_add((a1, a2, *v), c.mul(cv));
                    }
                } else {
                    for (u, cu) in bi.mult.row(a1, a2) {
                        acc.insert_add((*u, b2, b1), c.mul(cu));
                    }
                }
            }
        };
        if S::EXACT && r.terms.len() * r.terms.len() > (1 << 16) {
            let terms: Vec<(u32, u32, &S)> = r.terms().collect();
            return terms
                .par_iter()
                .fold(
                    || Elt3::zero(r.dim),
                    |mut acc, (a1, b1, c1)| {
                        combine(&mut acc, *a1, *b1, c1);
                        acc
                    },
                )
                .reduce(
                    || Elt3::zero(r.dim),
                    |mut a, b| {
                        for (k, c) in b.terms {
                            a.insert_add(k, c);
                        }
                        a
                    },
                );
        }
        let mut out = Elt3::zero(r.dim);
        for (a1, b1, c1) in r.terms() {
            combine(&mut out, a1, b1, c1);
        }
        out
    }

    /// j (x) 1 in H (x) H (x) H.
    pub fn right_unit(bi: &Bialgebra<S>, j: &Elt2<S>) -> Self {
        let mut out = Elt3::zero(j.dim);
        for (a, b, c) in j.terms() {
            for (u, cu) in bi.unit.iter().enumerate() {
                if !cu.is_zero() {
                    out.insert_add((a, b, u as u32), c.mul(cu));
                }
            }
        }
        out
    }

    /// 1 (x) j in H (x) H (x) H.
    pub fn left_unit(bi: &Bialgebra<S>, j: &Elt2<S>) -> Self {
        let mut out = Elt3::zero(j.dim);
        for (a, b, c) in j.terms() {
            for (u, cu) in bi.unit.iter().enumerate() {
                if !cu.is_zero() {
                    out.insert_add((u as u32, a, b), c.mul(cu));
                }
            }
        }
        out
    }

    /// Product in the algebra H (x) H (x) H.
    pub fn mul(&self, bi: &Bialgebra<S>, other: &Elt3<S>) -> Elt3<S> {
        let mut out = Elt3::zero(self.dim);
        for (&(a1, b1, c1), v1) in &self.terms {
            for (&(a2, b2, c2), v2) in &other.terms {
                let v = v1.mul(v2);
                for (u, cu) in bi.mult.row(a1, a2) {
                    let vu = v.mul(cu);
                    for (w, cw) in bi.mult.row(b1, b2) {
                        let vw = vu.mul(cw);
                        for (x, cx) in bi.mult.row(c1, c2) {
                            out.insert_add((*u, *w, *x), vw.mul(cx));
                        }
                    }
                }
            }
        }
        out
    }

    /// r13 r23 for r = sum a (x) b: sum_{t,t'} c c' a_t (x) a_t' (x) b_t b_t'.
    pub fn product_13_23(bi: &Bialgebra<S>, r: &Elt2<S>) -> Self {
        Elt3::pair_product(bi, r, true)
    }

    /// r13 r12 for r = sum a (x) b: sum_{t,t'} c c' a_t a_t' (x) b_t' (x) b_t.
    pub fn product_13_12(bi: &Bialgebra<S>, r: &Elt2<S>) -> Self {
        Elt3::pair_product(bi, r, false)
    }

    pub fn diff_norm(&self, other: &Elt3<S>) -> f64 {
        let mut keys: Vec<(u32, u32, u32)> = self.terms.keys().copied().collect();
        keys.extend(other.terms.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|k| {
                let a = self.terms.get(k).cloned().unwrap_or_else(S::zero);
                let b = other.terms.get(k).cloned().unwrap_or_else(S::zero);
                a.sub(&b).abs()
            })
            .fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// Axiom validation
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CheckResidual {
    pub name: &'static str,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct HopfReport {
    pub checks: Vec<CheckResidual>,
}

impl HopfReport {
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn passes(&self, cfg: &ToleranceConfig) -> bool {
        self.max_residual() <= cfg.residual_tol
    }

    pub fn worst(&self) -> Option<&CheckResidual> {
        self.checks
            .iter()
            .max_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap())
    }

    pub fn failing(&self, cfg: &ToleranceConfig) -> Vec<&CheckResidual> {
        self.checks
            .iter()
            .filter(|c| c.residual > cfg.residual_tol)
            .collect()
    }
}

fn acc3<S: Scalar>(m: &mut BTreeMap<(u32, u32, u32), S>, key: (u32, u32, u32), c: S) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match m.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let v = e.get().add(&c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

fn associativity_residual<S: Scalar>(bi: &Bialgebra<S>) -> f64 {
    // sum_m m^m_{ij} m^l_{mk} - sum_m m^m_{jk} m^l_{im}, grouped by i and
    // reduced in parallel per first argument.
    let by_first = bi.mult.by_first();
    let by_output = bi.mult.by_output();
    (0..bi.dim as u32)
        .into_par_iter()
        .map(|i| {
            let mut diff: BTreeMap<(u32, u32, u32), S> = BTreeMap::new();
            if let Some(rows_i) = by_first.get(&i) {
                for (j, m, c1) in rows_i {
                    // (x_i x_j) x_k
                    if let Some(rows_m) = by_first.get(m) {
                        for (k, l, c2) in rows_m {
                            acc3(&mut diff, (*j, *k, *l), c1.mul(c2));
                        }
                    }
                }
                for (m, l, c2) in rows_i {
                    // x_i (x_j x_k) with x_j x_k = sum m^m_{jk}
                    if let Some(rows_out) = by_output.get(m) {
                        for (j, k, c1) in rows_out {
                            acc3(&mut diff, (*j, *k, *l), c1.mul(c2).neg());
                        }
                    }
                }
            }
            diff.values().map(Scalar::abs).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
}

fn unit_residual<S: Scalar>(bi: &Bialgebra<S>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..bi.dim {
        let x = bi.basis_vec(j);
        let left = bi.mul_vec(&bi.unit, &x);
        let right = bi.mul_vec(&x, &bi.unit);
        for k in 0..bi.dim {
            let expect = if k == j { S::one() } else { S::zero() };
            worst = worst.max(left[k].sub(&expect).abs());
            worst = worst.max(right[k].sub(&expect).abs());
        }
    }
    worst
}

fn coassociativity_residual<S: Scalar>(bi: &Bialgebra<S>) -> f64 {
    (0..bi.dim as u32)
        .into_par_iter()
        .map(|i| {
            let mut diff: BTreeMap<(u32, u32, u32), S> = BTreeMap::new();
            for (j, k, c) in bi.comult.row(i) {
                for (a, b, cd) in bi.comult.row(*j) {
                    acc3(&mut diff, (*a, *b, *k), c.mul(cd));
                }
                for (a, b, cd) in bi.comult.row(*k) {
                    acc3(&mut diff, (*j, *a, *b), c.mul(cd).neg());
                }
            }
            diff.values().map(Scalar::abs).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
}

fn counit_residual<S: Scalar>(bi: &Bialgebra<S>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..bi.dim {
        let mut left = vec![S::zero(); bi.dim];
        let mut right = vec![S::zero(); bi.dim];
        for (j, k, c) in bi.comult.row(i as u32) {
            left[*k as usize].add_assign(&c.mul(&bi.counit[*j as usize]));
            right[*j as usize].add_assign(&c.mul(&bi.counit[*k as usize]));
        }
        for k in 0..bi.dim {
            let expect = if k == i { S::one() } else { S::zero() };
            worst = worst.max(left[k].sub(&expect).abs());
            worst = worst.max(right[k].sub(&expect).abs());
        }
    }
    worst
}

fn bialgebra_residual<S: Scalar>(bi: &Bialgebra<S>) -> f64 {
    let n = bi.dim;
    let mut worst: f64 = 0.0;

    // Delta(1) = 1 (x) 1
    let d1 = bi.comult_vec(&bi.unit);
    worst = worst.max(d1.diff_norm(&Elt2::one_one(bi)));

    // eps is an algebra map: eps(x_i x_j) = eps(x_i) eps(x_j), eps(1) = 1
    let mut eps_diff: BTreeMap<(u32, u32), S> = BTreeMap::new();
    for (i, j, k, c) in bi.mult.iter() {
        let cell = eps_diff.entry((i, j)).or_insert_with(S::zero);
        *cell = cell.add(&c.mul(&bi.counit[k as usize]));
    }
    let support: Vec<u32> = (0..n as u32)
        .filter(|&i| !bi.counit[i as usize].is_zero())
        .collect();
    for &i in &support {
        for &j in &support {
            let prod = bi.counit[i as usize].mul(&bi.counit[j as usize]);
            let cell = eps_diff.entry((i, j)).or_insert_with(S::zero);
            *cell = cell.sub(&prod);
        }
    }
    for v in eps_diff.values() {
        worst = worst.max(v.abs());
    }
    worst = worst.max(bi.counit_of(&bi.unit).sub(&S::one()).abs());

    // Delta is an algebra map: Delta(x_i x_j) = Delta(x_i) Delta(x_j).
    // Contract through U_p[(j, s, a)] = sum_r Delta_j^{rs} m^a_{pr}, then
    // reduce per first argument i in parallel.
    let by_second = bi.mult.by_second();
    let by_first = bi.mult.by_first();
    let mut u_by_p: Vec<Vec<(u32, u32, u32, S)>> = vec![Vec::new(); n];
    for (j, r, s, cj) in bi.comult.iter() {
        if let Some(rows) = by_second.get(&r) {
            for (p, a, cm) in rows {
                u_by_p[*p as usize].push((j, s, *a, cj.mul(cm)));
            }
        }
    }
    let worst_delta = (0..n as u32)
        .into_par_iter()
        .map(|i| {
            let mut diff: BTreeMap<(u32, u32, u32), S> = BTreeMap::new();
            if let Some(rows_i) = by_first.get(&i) {
                for (j, k, c) in rows_i {
                    for (a, b, cd) in bi.comult.row(*k) {
                        acc3(&mut diff, (*j, *a, *b), c.mul(cd));
                    }
                }
            }
            for (p, q, ci) in bi.comult.row(i) {
                for (j, s, a, cu) in &u_by_p[*p as usize] {
                    let cic = ci.mul(cu);
                    for (b, cm2) in bi.mult.row(*q, *s) {
                        acc3(&mut diff, (*j, *a, *b), cic.mul(cm2).neg());
                    }
                }
            }
            diff.values().map(Scalar::abs).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    worst.max(worst_delta)
}

fn antipode_residual<S: Scalar>(h: &HopfAlgebra<S>) -> (f64, f64) {
    let bi = &h.bi;
    let n = bi.dim;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut left = vec![S::zero(); n];
            let mut right = vec![S::zero(); n];
            for (j, k, c) in bi.comult.row(i as u32) {
                // m(S(x_j) (x) x_k) and m(x_j (x) S(x_k))
                for s in 0..n {
                    let sj = h.antipode.at(s, *j as usize);
                    if !sj.is_zero() {
                        for (l, cm) in bi.mult.row(s as u32, *k) {
                            left[*l as usize].add_assign(&c.mul(sj).mul(cm));
                        }
                    }
                    let sk = h.antipode.at(s, *k as usize);
                    if !sk.is_zero() {
                        for (l, cm) in bi.mult.row(*j, s as u32) {
                            right[*l as usize].add_assign(&c.mul(sk).mul(cm));
                        }
                    }
                }
            }
            let eps = &bi.counit[i];
            let mut worst_left: f64 = 0.0;
            let mut worst_right: f64 = 0.0;
            for l in 0..n {
                let expect = eps.mul(&bi.unit[l]);
                worst_left = worst_left.max(left[l].sub(&expect).abs());
                worst_right = worst_right.max(right[l].sub(&expect).abs());
            }
            (worst_left, worst_right)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)))
}

/// Validate the bialgebra axioms; each named residual must stay at or
/// below `residual_tol` (exactly zero in rational mode).
pub fn validate_bialgebra<S: Scalar>(bi: &Bialgebra<S>) -> Result<HopfReport> {
    if bi.unit.len() != bi.dim
        || bi.counit.len() != bi.dim
        || bi.labels.len() != bi.dim
        || bi.mult.dim != bi.dim
        || bi.comult.dim != bi.dim
    {
        return Err(Error::Shape("bialgebra tensors disagree on dimension".into()));
    }
    Ok(HopfReport {
        checks: vec![
            CheckResidual {
                name: "associativity",
                residual: associativity_residual(bi),
            },
            CheckResidual {
                name: "unit",
                residual: unit_residual(bi),
            },
            CheckResidual {
                name: "coassociativity",
                residual: coassociativity_residual(bi),
            },
            CheckResidual {
                name: "counit",
                residual: counit_residual(bi),
            },
            CheckResidual {
                name: "bialgebra",
                residual: bialgebra_residual(bi),
            },
        ],
    })
}

/// Validate all Hopf axioms (bialgebra plus the antipode identity).
pub fn validate_hopf<S: Scalar>(h: &HopfAlgebra<S>) -> Result<HopfReport> {
    if h.antipode.rows != h.bi.dim || h.antipode.cols != h.bi.dim {
        return Err(Error::Shape("antipode matrix shape".into()));
    }
    let mut report = validate_bialgebra(&h.bi)?;
    let (left, right) = antipode_residual(h);
    report.checks.push(CheckResidual {
        name: "antipode-left",
        residual: left,
    });
    report.checks.push(CheckResidual {
        name: "antipode-right",
        residual: right,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// The group algebra kG: basis indexed by group elements, Delta(g) = g (x) g,
/// eps(g) = 1, S(g) = g^{-1}. Exact in any scalar backend.
pub fn group_algebra<S: Scalar>(g: &FiniteGroup) -> Result<HopfAlgebra<S>> {
    let n = g.order;
    let mut mult_triplets = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mult_triplets.push((i as u32, j as u32, g.cayley[i][j] as u32, S::one()));
        }
    }
    let mult = MultTable::from_triplets(n, mult_triplets);
    let comult = ComultTable::from_triplets(
        n,
        (0..n as u32).map(|i| (i, i, i, S::one())),
    );
    let mut unit = vec![S::zero(); n];
    unit[g.identity] = S::one();
    let counit = vec![S::one(); n];
    let mut antipode = Matrix::zero(n, n);
    for j in 0..n {
        *antipode.at_mut(g.inverse[j], j) = S::one();
    }
    Ok(HopfAlgebra {
        bi: Bialgebra {
            dim: n,
            labels: g.labels.clone(),
            mult,
            unit,
            comult,
            counit,
        },
        antipode,
    })
}

/// The dual Hopf algebra on the dual basis: multiplication is the transpose
/// of the comultiplication, comultiplication the transpose of the
/// multiplication, and the antipode the transpose of S.
pub fn dual_hopf<S: Scalar>(h: &HopfAlgebra<S>) -> HopfAlgebra<S> {
    let bi = &h.bi;
    let n = bi.dim;
    let mult = MultTable::from_triplets(
        n,
        bi.comult.iter().map(|(i, j, k, c)| (j, k, i, c.clone())),
    );
    let comult = ComultTable::from_triplets(
        n,
        bi.mult.iter().map(|(i, j, k, c)| (k, i, j, c.clone())),
    );
    HopfAlgebra {
        bi: Bialgebra {
            dim: n,
            labels: bi.labels.iter().map(|l| format!("{l}*")).collect(),
            mult,
            unit: bi.counit.clone(),
            comult,
            counit: bi.unit.clone(),
        },
        antipode: h.antipode.transpose(),
    }
}

/// Invert an element of H (x) H through its minimal polynomial, mirroring
/// element inversion in H. Desk-scale: the Krylov flattening is dim^2 wide.
pub fn invert_elt2<S: Scalar>(
    bi: &Bialgebra<S>,
    j: &Elt2<S>,
    cfg: &ToleranceConfig,
) -> Result<Elt2<S>> {
    let n = bi.dim;
    if n > 16 {
        return Err(Error::Invalid(format!(
            "tensor-square inversion handles dim <= 16, got {n}"
        )));
    }
    let one = Elt2::one_one(bi);
    let flatten = |e: &Elt2<S>| -> Vec<S> {
        let mut v = vec![S::zero(); n * n];
        for (a, b, c) in e.terms() {
            v[a as usize * n + b as usize] = c.clone();
        }
        v
    };
    let mut krylov: Vec<Elt2<S>> = vec![one.clone()];
    let mut power = one;
    for _ in 0..=n * n {
        power = j.mul(bi, &power);
        let basis = Matrix::from_fn(n * n, krylov.len(), |i, t| flatten(&krylov[t])[i].clone());
        let rhs = Matrix::from_fn(n * n, 1, |i, _| flatten(&power)[i].clone());
        match solve_linear(&basis, &rhs, cfg)? {
            SolveOutcome::Solution(c) => {
                let c0 = c.at(0, 0).clone();
                let c0_inv = c0
                    .inv()
                    .ok_or_else(|| Error::Invalid("twist element is not invertible".into()))?;
                let mut out = krylov.last().unwrap().clone();
                for i in 1..krylov.len() {
                    let ci = c.at(i, 0).neg();
                    out = out.add(&krylov[i - 1].scale(&ci));
                }
                return Ok(out.scale(&c0_inv));
            }
            SolveOutcome::Inconsistent { .. } => krylov.push(power.clone()),
        }
    }
    Err(Error::Invalid(
        "no minimal polynomial found for the tensor-square element".into(),
    ))
}

/// Desk-scale ceiling for the antipode linear solve (n^2 unknowns).
pub const SOLVE_ANTIPODE_MAX_DIM: usize = 24;

/// Recover the unique antipode of a bialgebra by solving the linear system
/// given by both antipode identities; fails when the bialgebra admits none.
pub fn solve_antipode<S: Scalar>(bi: &Bialgebra<S>, cfg: &ToleranceConfig) -> Result<Matrix<S>> {
    let n = bi.dim;
    if n > SOLVE_ANTIPODE_MAX_DIM {
        return Err(Error::Invalid(format!(
            "solve_antipode handles dim <= {SOLVE_ANTIPODE_MAX_DIM}, got {n}"
        )));
    }
    let by_first = bi.mult.by_first();
    let by_second = bi.mult.by_second();
    // Unknowns: s_{a j} = coefficient of x_a in S(x_j), flattened a * n + j.
    let mut a_mat = Matrix::<S>::zero(2 * n * n, n * n);
    let mut rhs = Matrix::<S>::zero(2 * n * n, 1);
    for i in 0..n {
        for (j, k, c) in bi.comult.row(i as u32) {
            // Left identity: sum_{a} s_{a j} m^l_{a k}
            if let Some(rows) = by_second.get(k) {
                for (a, l, cm) in rows {
                    let row = i * n + *l as usize;
                    let col = *a as usize * n + *j as usize;
                    a_mat.at_mut(row, col).add_assign(&c.mul(cm));
                }
            }
            // Right identity: sum_{a} s_{a k} m^l_{j a}
            if let Some(rows) = by_first.get(j) {
                for (a, l, cm) in rows {
                    let row = n * n + i * n + *l as usize;
                    let col = *a as usize * n + *k as usize;
                    a_mat.at_mut(row, col).add_assign(&c.mul(cm));
                }
            }
        }
        for l in 0..n {
            let v = bi.counit[i].mul(&bi.unit[l]);
            *rhs.at_mut(i * n + l, 0) = v.clone();
            *rhs.at_mut(n * n + i * n + l, 0) = v;
        }
    }
    match solve_linear(&a_mat, &rhs, cfg)? {
        SolveOutcome::Solution(x) => {
            let mut s = Matrix::zero(n, n);
            for a in 0..n {
                for j in 0..n {
                    *s.at_mut(a, j) = x.at(a * n + j, 0).clone();
                }
            }
            Ok(s)
        }
        SolveOutcome::Inconsistent { .. } => Err(Error::NoAntipode),
    }
}
