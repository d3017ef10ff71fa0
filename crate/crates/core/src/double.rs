//! The Drinfeld double D(H) of a semisimple Hopf algebra: the double
//! cross-product on H* (x) H with its canonical R-matrix, the Drinfeld
//! element and monodromy with their identities, the factorizability map,
//! and the Hopf surjection D(H) -> H attached to a quasitriangular H.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::{
    validate_hopf, Bialgebra, CheckResidual, ComultTable, Elt2, Elt3, HopfAlgebra, HopfReport,
    MultTable,
};
use crate::mat::{rank_at, solve_linear, Matrix, SolveOutcome};
use crate::scalar::{Scalar, ToleranceConfig};

/// A Hopf algebra with a validated R-matrix and its cached derived data.
#[derive(Clone, Debug)]
pub struct QuasiStructure<S> {
    pub hopf: Arc<HopfAlgebra<S>>,
    pub r: Elt2<S>,
    /// Drinfeld element u = sum S(b_t) a_t for R = sum a_t (x) b_t.
    pub u: Vec<S>,
    pub u_inv: Vec<S>,
    /// Monodromy R21 R.
    pub monodromy: Elt2<S>,
}

/// The Drinfeld element of an R-matrix on `h`.
pub fn drinfeld_element<S: Scalar>(h: &HopfAlgebra<S>, r: &Elt2<S>) -> Vec<S> {
    let n = h.bi.dim;
    let mut u = vec![S::zero(); n];
    for (a, b, c) in r.terms() {
        // c * S(x_b) x_a
        for s in 0..n {
            let sb = h.antipode.at(s, b as usize);
            if sb.is_zero() {
                continue;
            }
            let cs = c.mul(sb);
            for (l, cm) in h.bi.mult.row(s as u32, a) {
                u[*l as usize].add_assign(&cs.mul(cm));
            }
        }
    }
    u
}

/// Invert an algebra element through its minimal polynomial: Krylov vectors
/// 1, a, a^2, ... until dependence, then read the inverse off the
/// polynomial's constant term. Exact in the rational backend.
pub fn invert_element<S: Scalar>(
    bi: &Bialgebra<S>,
    a: &[S],
    cfg: &ToleranceConfig,
) -> Result<Vec<S>> {
    let n = bi.dim;
    let mut krylov: Vec<Vec<S>> = vec![bi.unit.clone()];
    let mut power = bi.unit.clone();
    for _ in 0..=n {
        power = bi.mul_vec(a, &power);
        let basis = Matrix::from_fn(n, krylov.len(), |i, j| krylov[j][i].clone());
        let rhs = Matrix::from_fn(n, 1, |i, _| power[i].clone());
        match solve_linear(&basis, &rhs, cfg)? {
            SolveOutcome::Solution(c) => {
                // a^k = sum_i c_i a^i with k = krylov.len()
                let c0 = c.at(0, 0).clone();
                let c0_inv = c0.inv().ok_or_else(|| {
                    Error::Invalid("element is not invertible (zero constant term)".into())
                })?;
                // a^{-1} = (a^{k-1} - sum_{i>=1} c_i a^{i-1}) / c0
                let mut out = krylov.last().unwrap().clone();
                for i in 1..krylov.len() {
                    let ci = c.at(i, 0);
                    for (o, kv) in out.iter_mut().zip(&krylov[i - 1]) {
                        let t = ci.mul(kv);
                        *o = o.sub(&t);
                    }
                }
                for o in &mut out {
                    *o = o.mul(&c0_inv);
                }
                return Ok(out);
            }
            SolveOutcome::Inconsistent { .. } => {
                krylov.push(power.clone());
            }
        }
    }
    Err(Error::Invalid(
        "no minimal polynomial found within the algebra dimension".into(),
    ))
}

/// Attach an R-matrix to `h`, computing the Drinfeld element, its inverse
/// and the monodromy, and measuring every quasitriangularity identity.
pub fn quasitriangular<S: Scalar>(
    hopf: Arc<HopfAlgebra<S>>,
    r: Elt2<S>,
    cfg: &ToleranceConfig,
) -> Result<(QuasiStructure<S>, HopfReport)> {
    let bi = &hopf.bi;
    let n = bi.dim;
    if r.dim != n {
        return Err(Error::Shape("R-matrix dimension mismatch".into()));
    }

    // Intertwining: Delta^op(x) R = R Delta(x) on every basis element.
    let intertwine = (0..n)
        .into_par_iter()
        .map(|i| {
            let dx = bi.comult_vec(&bi.basis_vec(i));
            let lhs = dx.swap().mul(bi, &r);
            let rhs = r.mul(bi, &dx);
            lhs.diff_norm(&rhs)
        })
        .reduce(|| 0.0, f64::max);

    // Hexagons: (Delta (x) id)(R) = R13 R23 and (id (x) Delta)(R) = R13 R12.
    let hex1 = Elt3::comult_leg1(bi, &r).diff_norm(&Elt3::product_13_23(bi, &r));
    let hex2 = Elt3::comult_leg2(bi, &r).diff_norm(&Elt3::product_13_12(bi, &r));

    let u = drinfeld_element(&hopf, &r);
    let u_inv = invert_element(bi, &u, cfg)?;
    let uu = bi.mul_vec(&u, &u_inv);
    let u_invertible = uu
        .iter()
        .zip(&bi.unit)
        .map(|(a, b)| a.sub(b).abs())
        .fold(0.0, f64::max);

    let monodromy = r.swap().mul(bi, &r);

    // uxu^{-1} = S^2(x) on every basis element.
    let s2 = hopf.antipode.matmul(&hopf.antipode);
    let (eq1, u_central) = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = bi.basis_vec(i);
            let ux = bi.mul_vec(&u, &x);
            let uxu = bi.mul_vec(&ux, &u_inv);
            let s2x = s2.col(i);
            let e1 = uxu
                .iter()
                .zip(&s2x)
                .map(|(a, b)| a.sub(b).abs())
                .fold(0.0, f64::max);
            let xu = bi.mul_vec(&x, &u);
            let uc = ux
                .iter()
                .zip(&xu)
                .map(|(a, b)| a.sub(b).abs())
                .fold(0.0, f64::max);
            (e1, uc)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));

    // Delta(u) (R21 R) = u (x) u.
    let du = bi.comult_vec(&u);
    let eq2 = du.mul(bi, &monodromy).diff_norm(&Elt2::outer(&u, &u));

    let report = HopfReport {
        checks: vec![
            CheckResidual { name: "r-intertwine", residual: intertwine },
            CheckResidual { name: "r-hexagon-1", residual: hex1 },
            CheckResidual { name: "r-hexagon-2", residual: hex2 },
            CheckResidual { name: "u-invertible", residual: u_invertible },
            CheckResidual { name: "eq1-uxu-s2", residual: eq1 },
            CheckResidual { name: "eq2-du-monodromy", residual: eq2 },
            CheckResidual { name: "u-central", residual: u_central },
        ],
    };

    Ok((
        QuasiStructure {
            hopf,
            r,
            u,
            u_inv,
            monodromy,
        },
        report,
    ))
}

/// The double with its canonical R-matrix and the embeddings of both
/// tensor factors.
#[derive(Clone, Debug)]
pub struct DoubleData<S> {
    pub base: Arc<HopfAlgebra<S>>,
    pub quasi: QuasiStructure<S>,
    /// Column of the algebra embedding H -> D(H) per basis element of H.
    pub emb_alg: Vec<Vec<(u32, S)>>,
    /// Column of the dual embedding H* -> D(H) per dual basis element.
    pub emb_dual: Vec<Vec<(u32, S)>>,
    pub hopf_report: HopfReport,
    pub quasi_report: HopfReport,
}

impl<S: Scalar> DoubleData<S> {
    pub fn double(&self) -> &Arc<HopfAlgebra<S>> {
        &self.quasi.hopf
    }

    pub fn dim(&self) -> usize {
        self.quasi.hopf.bi.dim
    }
}

/// Index of the dual-basis/algebra-basis pair (alpha, beta) in D(H).
#[inline]
pub fn pair_index(n: usize, alpha: usize, beta: usize) -> usize {
    alpha * n + beta
}

/// Build the Drinfeld double of a semisimple Hopf algebra (S^2 = 1).
///
/// Multiplication follows the double cross-product rule
/// (p (x) h)(q (x) g) = sum p (h_(1) -> q <- S(h_(3))) (x) h_(2) g,
/// comultiplication is co-opposite on the dual factor, and the antipode is
/// the composite of the factor antipodes, validated along with every other
/// axiom before the double is returned.
pub fn build_double<S: Scalar>(
    base: &Arc<HopfAlgebra<S>>,
    cfg: &ToleranceConfig,
) -> Result<DoubleData<S>> {
    let bi = &base.bi;
    let n = bi.dim;
    let big = n * n;

    let s2_residual = base.antipode_involution_residual();
    if s2_residual > cfg.residual_tol {
        return Err(Error::AxiomFailure {
            name: "antipode-involution".into(),
            residual: s2_residual,
        });
    }

    let by_first = bi.mult.by_first();
    let by_output = bi.mult.by_output();
    // Dual-multiplication rows indexed by the second factor:
    // i -> [(alpha, e, c)] with Delta_e^{alpha i} = c.
    let mut corows_by_second: BTreeMap<u32, Vec<(u32, u32, S)>> = BTreeMap::new();
    for (e, alpha, i, c) in bi.comult.iter() {
        corows_by_second
            .entry(i)
            .or_default()
            .push((alpha, e, c.clone()));
    }

    // Multiplication tensor of the double, assembled per second factor.
    let triplet_blocks: Vec<Vec<(u32, u32, u32, S)>> = (0..n as u32)
        .into_par_iter()
        .map(|beta| {
            let mut mult_triplets: Vec<(u32, u32, u32, S)> = Vec::new();
            // Delta^2(x_beta) = sum Delta2[(j,k,l)] x_j (x) x_k (x) x_l
            let mut delta2: Vec<(u32, u32, u32, S)> = Vec::new();
            for (t, l, c1) in bi.comult.row(beta) {
                for (j, k, c2) in bi.comult.row(*t) {
                    delta2.push((*j, *k, *l, c1.mul(c2)));
                }
            }
            // C[(gamma, i, k)] = sum Delta2[(j,k,l)] S_{s l} m^w_{s i} m^gamma_{w j}
            let mut c_beta: BTreeMap<(u32, u32, u32), S> = BTreeMap::new();
            for (j, k, l, c1) in &delta2 {
                for s in 0..n {
                    let sl = base.antipode.at(s, *l as usize);
                    if sl.is_zero() {
                        continue;
                    }
                    let c2 = c1.mul(sl);
                    if let Some(rows) = by_first.get(&(s as u32)) {
                        for (i, w, cm1) in rows {
                            let c3 = c2.mul(cm1);
                            for (gamma, cm2) in bi.mult.row(*w, *j) {
                                let cell = c_beta.entry((*gamma, *i, *k)).or_insert_with(S::zero);
                                *cell = cell.add(&c3.mul(cm2));
                            }
                        }
                    }
                }
            }
            // Assemble rows ((alpha,beta),(gamma,delta)).
            let empty = Vec::new();
            for (&(gamma, i, k), c3) in &c_beta {
                if c3.is_zero() {
                    continue;
                }
                let alphas = corows_by_second.get(&i).unwrap_or(&empty);
                for (alpha, e, c4) in alphas {
                    let c34 = c3.mul(c4);
                    for delta in 0..n as u32 {
                        for (f, c5) in bi.mult.row(k, delta) {
                            mult_triplets.push((
                                pair_index(n, *alpha as usize, beta as usize) as u32,
                                pair_index(n, gamma as usize, delta as usize) as u32,
                                pair_index(n, *e as usize, *f as usize) as u32,
                                c34.mul(c5),
                            ));
                        }
                    }
                }
            }
            mult_triplets
        })
        .collect();
    let mult = MultTable::from_triplets(big, triplet_blocks.into_iter().flatten());

    // Comultiplication: co-opposite of the dual coproduct on the first
    // factor, the coproduct of H on the second.
    let mut comult_triplets: Vec<(u32, u32, u32, S)> = Vec::new();
    for alpha in 0..n as u32 {
        if let Some(rows) = by_output.get(&alpha) {
            for beta in 0..n as u32 {
                for (i, j, c1) in rows {
                    for (k, l, c2) in bi.comult.row(beta) {
                        comult_triplets.push((
                            pair_index(n, alpha as usize, beta as usize) as u32,
                            pair_index(n, *j as usize, *k as usize) as u32,
                            pair_index(n, *i as usize, *l as usize) as u32,
                            c1.mul(c2),
                        ));
                    }
                }
            }
        }
    }
    let comult = ComultTable::from_triplets(big, comult_triplets);

    let mut unit = vec![S::zero(); big];
    let mut counit = vec![S::zero(); big];
    for alpha in 0..n {
        for beta in 0..n {
            let idx = pair_index(n, alpha, beta);
            unit[idx] = bi.counit[alpha].mul(&bi.unit[beta]);
            counit[idx] = bi.unit[alpha].mul(&bi.counit[beta]);
        }
    }

    let labels: Vec<String> = (0..big)
        .map(|idx| {
            let (alpha, beta) = (idx / n, idx % n);
            format!("{}*.{}", bi.labels[alpha], bi.labels[beta])
        })
        .collect();

    let dbi = Bialgebra {
        dim: big,
        labels,
        mult,
        unit,
        comult,
        counit,
    };

    // Embeddings of the factors.
    let emb_alg: Vec<Vec<(u32, S)>> = (0..n)
        .map(|beta| {
            (0..n)
                .filter_map(|alpha| {
                    let c = bi.counit[alpha].clone();
                    (!c.is_zero()).then(|| (pair_index(n, alpha, beta) as u32, c))
                })
                .collect()
        })
        .collect();
    let emb_dual: Vec<Vec<(u32, S)>> = (0..n)
        .map(|alpha| {
            (0..n)
                .filter_map(|beta| {
                    let c = bi.unit[beta].clone();
                    (!c.is_zero()).then(|| (pair_index(n, alpha, beta) as u32, c))
                })
                .collect()
        })
        .collect();
    let sparse_to_dense = |col: &Vec<(u32, S)>| {
        let mut v = vec![S::zero(); big];
        for (i, c) in col {
            v[*i as usize] = c.clone();
        }
        v
    };

    // Antipode: S_D(p (x) h) = iota(S h) . iota*(p after S), then validated.
    let dbi_ref = &dbi;
    let emb_alg_ref = &emb_alg;
    let emb_dual_ref = &emb_dual;
    let columns: Vec<Vec<(usize, S)>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|alpha| {
            // p' = h_alpha^* after S = sum_j S_{alpha j} h_j^*
            let mut iota_dual = vec![S::zero(); big];
            for j in 0..n {
                let c = base.antipode.at(alpha, j);
                if c.is_zero() {
                    continue;
                }
                for (idx, e) in &emb_dual_ref[j] {
                    iota_dual[*idx as usize].add_assign(&c.mul(e));
                }
            }
            (0..n).map(move |beta| {
                // iota(S x_beta)
                let mut iota_s = vec![S::zero(); big];
                for s in 0..n {
                    let c = base.antipode.at(s, beta);
                    if c.is_zero() {
                        continue;
                    }
                    for (idx, e) in &emb_alg_ref[s] {
                        iota_s[*idx as usize].add_assign(&c.mul(e));
                    }
                }
                let col = dbi_ref.mul_vec(&iota_s, &iota_dual);
                col.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
        })
        .collect();
    let mut antipode = Matrix::zero(big, big);
    for (colidx, col) in columns.into_iter().enumerate() {
        for (row, c) in col {
            *antipode.at_mut(row, colidx) = c;
        }
    }

    let double = Arc::new(HopfAlgebra { bi: dbi, antipode });

    let hopf_report = validate_hopf(&double)?;
    if !hopf_report.passes(cfg) {
        let worst = hopf_report.worst().unwrap();
        return Err(Error::AxiomFailure {
            name: format!("double {}", worst.name),
            residual: worst.residual,
        });
    }

    // Canonical R-matrix: sum_i iota(h_i) (x) iota*(h_i^*).
    let mut r = Elt2::zero(big);
    for i in 0..n {
        let a = sparse_to_dense(&emb_alg[i]);
        let b = sparse_to_dense(&emb_dual[i]);
        for (ia, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (ib, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                r.insert_add(ia as u32, ib as u32, ca.mul(cb));
            }
        }
    }

    let (quasi, quasi_report) = quasitriangular(Arc::clone(&double), r, cfg)?;
    if !quasi_report.passes(cfg) {
        let worst = quasi_report.worst().unwrap();
        return Err(Error::AxiomFailure {
            name: format!("double {}", worst.name),
            residual: worst.residual,
        });
    }

    Ok(DoubleData {
        base: Arc::clone(base),
        quasi,
        emb_alg,
        emb_dual,
        hopf_report,
        quasi_report,
    })
}

/// Matrix of the factorizability map F(p) = (1 (x) p)(R21 R) on the dual
/// basis, together with its rank at the given tolerance.
pub fn factorizability_map<S: Scalar>(dd: &DoubleData<S>, eps: f64) -> (Matrix<S>, usize) {
    let big = dd.dim();
    let mut f: Matrix<S> = Matrix::zero(big, big);
    for (a, b, c) in dd.quasi.monodromy.terms() {
        f.at_mut(a as usize, b as usize).add_assign(c);
    }
    let rank = rank_at(&f, eps);
    (f, rank)
}

/// Validation data for the Hopf surjection f: D(H) -> H, f(p h) = (p (x) 1)(R) h.
#[derive(Clone, Debug)]
pub struct SurjectionReport<S> {
    /// n x n^2 matrix of f on the double's basis.
    pub matrix: Matrix<S>,
    pub checks: Vec<CheckResidual>,
    pub rank: usize,
}

impl<S: Scalar> SurjectionReport<S> {
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Build and validate the surjection attached to a quasitriangular (H, R):
/// an algebra, coalgebra, counit, unit and antipode compatible map of full
/// rank dim H.
pub fn hopf_surjection_f<S: Scalar>(
    q: &QuasiStructure<S>,
    cfg: &ToleranceConfig,
) -> Result<SurjectionReport<S>> {
    let base = &q.hopf;
    let bi = &base.bi;
    let n = bi.dim;
    let big = n * n;
    let dd = build_double(base, cfg)?;
    let dbl = dd.double();

    // f(h_alpha^* (x) h_beta) = sum over R-terms (i,j): [i = alpha] c x_j x_beta
    let mut f: Matrix<S> = Matrix::zero(n, big);
    for (i, j, c) in q.r.terms() {
        for beta in 0..n as u32 {
            for (l, cm) in bi.mult.row(j, beta) {
                f.at_mut(*l as usize, pair_index(n, i as usize, beta as usize))
                    .add_assign(&c.mul(cm));
            }
        }
    }
    let fcols: Vec<Vec<S>> = (0..big)
        .map(|k| (0..n).map(|r| f.at(r, k).clone()).collect())
        .collect();

    // Algebra map on all basis pairs.
    let alg_res = (0..big)
        .into_par_iter()
        .map(|x| {
            let fx = &fcols[x];
            let mut worst: f64 = 0.0;
            for (y, fy) in fcols.iter().enumerate() {
                let rhs = bi.mul_vec(fx, fy);
                let mut lhs = vec![S::zero(); n];
                for (k, c) in dbl.bi.mult.row(x as u32, y as u32) {
                    for (l, v) in fcols[*k as usize].iter().enumerate() {
                        if !v.is_zero() {
                            lhs[l].add_assign(&c.mul(v));
                        }
                    }
                }
                worst = worst.max(
                    lhs.iter()
                        .zip(&rhs)
                        .map(|(a, b)| a.sub(b).abs())
                        .fold(0.0, f64::max),
                );
            }
            worst
        })
        .reduce(|| 0.0, f64::max);

    // Coalgebra map, counit, unit, antipode compatibility.
    let (coalg_res, counit_res) = (0..big)
        .into_par_iter()
        .map(|x| {
            let fx = &fcols[x];
            let mut lhs = Elt2::zero(n);
            for (p, qq, c) in dbl.bi.comult.row(x as u32) {
                let fp = &fcols[*p as usize];
                let fq = &fcols[*qq as usize];
                for (a, ca) in fp.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (b, cb) in fq.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        lhs.insert_add(a as u32, b as u32, c.mul(ca).mul(cb));
                    }
                }
            }
            let co = lhs.diff_norm(&bi.comult_vec(fx));
            let cu = bi.counit_of(fx).sub(&dbl.bi.counit[x]).abs();
            (co, cu)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    let f_one = f.mat_vec(&dbl.bi.unit);
    let unit_res = f_one
        .iter()
        .zip(&bi.unit)
        .map(|(a, b)| a.sub(b).abs())
        .fold(0.0, f64::max);
    let fs = f.matmul(&dbl.antipode);
    let sf = base.antipode.matmul(&f);
    let antipode_res = crate::mat::diff_norm(&fs, &sf);

    let rank = rank_at(&f, 1e-6);

    Ok(SurjectionReport {
        matrix: f,
        checks: vec![
            CheckResidual { name: "f-algebra-map", residual: alg_res },
            CheckResidual { name: "f-coalgebra-map", residual: coalg_res },
            CheckResidual { name: "f-counit", residual: counit_res },
            CheckResidual { name: "f-unit", residual: unit_res },
            CheckResidual { name: "f-antipode", residual: antipode_res },
        ],
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupSpec};
    use crate::hopf::{group_algebra, to_complex};
    use crate::rep::wedderburn;
    use crate::scalar::Rat;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn double_of(spec: &GroupSpec) -> DoubleData<Rat> {
        let g = make_group(spec).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        build_double(&h, &cfg()).unwrap()
    }

    fn z2_example_r() -> Elt2<Rat> {
        // R = (1(x)1 + 1(x)g + g(x)1 - g(x)g)/2 on kZ2, i.e.
        // a(x)a + b(x)a + a(x)b - b(x)b for a = (1+g)/2, b = (1-g)/2.
        let half = Rat::new(1, 2);
        Elt2::from_terms(
            2,
            vec![
                (0u32, 0u32, half.clone()),
                (0, 1, half.clone()),
                (1, 0, half.clone()),
                (1, 1, half.neg()),
            ],
        )
    }

    #[test]
    fn double_of_trivial_group_is_k() {
        let dd = double_of(&GroupSpec::Cyclic(1));
        assert_eq!(dd.dim(), 1);
        assert_eq!(dd.hopf_report.max_residual(), 0.0);
        assert_eq!(dd.quasi_report.max_residual(), 0.0);
        assert_eq!(dd.quasi.u, vec![Rat::one()]);
        let one = Elt2::one_one(&dd.double().bi);
        assert_eq!(dd.quasi.r.diff_norm(&one), 0.0);
    }

    #[test]
    fn double_of_c2_is_commutative_with_four_lines() {
        let dd = double_of(&GroupSpec::Cyclic(2));
        assert_eq!(dd.dim(), 4);
        assert_eq!(dd.hopf_report.max_residual(), 0.0);
        assert_eq!(dd.quasi_report.max_residual(), 0.0);
        // Abelian base: the double is commutative.
        let bi = &dd.double().bi;
        for x in 0..4 {
            for y in 0..4 {
                let xy = bi.mul_vec(&bi.basis_vec(x), &bi.basis_vec(y));
                let yx = bi.mul_vec(&bi.basis_vec(y), &bi.basis_vec(x));
                assert_eq!(xy, yx);
            }
        }
        let table = wedderburn(&to_complex(dd.double()), &cfg()).unwrap();
        assert_eq!(table.sorted_dims(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn double_dims_of_s3_match_oracle() {
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        let dd = double_of(&GroupSpec::Symmetric(3));
        assert_eq!(dd.dim(), 36);
        assert_eq!(dd.hopf_report.max_residual(), 0.0);
        assert_eq!(dd.quasi_report.max_residual(), 0.0);
        let table = wedderburn(&to_complex(dd.double()), &cfg()).unwrap();
        let oracle = crate::groups::double_dims_oracle(&g, &cfg()).unwrap();
        assert_eq!(table.sorted_dims(), oracle);
        assert_eq!(oracle, vec![1, 1, 2, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn drinfeld_element_of_trivial_r_is_one() {
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let one = Elt2::one_one(&h.bi);
        let (q, report) = quasitriangular(Arc::clone(&h), one, &cfg()).unwrap();
        assert_eq!(report.max_residual(), 0.0);
        assert_eq!(q.u, h.bi.unit);
        assert_eq!(q.u_inv, h.bi.unit);
    }

    #[test]
    fn z2_example_has_u_equal_to_g() {
        let g = make_group(&GroupSpec::Cyclic(2)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let (q, report) = quasitriangular(h, z2_example_r(), &cfg()).unwrap();
        assert_eq!(report.max_residual(), 0.0);
        assert_eq!(q.u, vec![Rat::zero(), Rat::one()]);
        // Monodromy is trivial for this R.
        let one = Elt2::one_one(&q.hopf.bi);
        assert_eq!(q.monodromy.diff_norm(&one), 0.0);
    }

    #[test]
    fn factorizability_is_invertible_on_doubles() {
        for (spec, expect_dim) in [
            (GroupSpec::Cyclic(1), 1usize),
            (GroupSpec::Cyclic(2), 4),
            (GroupSpec::Symmetric(3), 36),
        ] {
            let dd = double_of(&spec);
            let (f, rank) = factorizability_map(&dd, 1e-6);
            assert_eq!(f.rows, expect_dim);
            assert_eq!(rank, expect_dim, "factorizability rank for {spec:?}");
        }
    }

    #[test]
    fn surjection_for_group_algebra_with_trivial_r() {
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let one = Elt2::one_one(&h.bi);
        let (q, _) = quasitriangular(Arc::clone(&h), one, &cfg()).unwrap();
        let report = hopf_surjection_f(&q, &cfg()).unwrap();
        assert_eq!(report.max_residual(), 0.0);
        assert_eq!(report.rank, 6);
        // f(p (x) h) = p(1) h: the column at (alpha = identity, beta) is x_beta.
        for beta in 0..6 {
            let col = pair_index(6, g.identity, beta);
            for r in 0..6 {
                let expect = if r == beta { Rat::one() } else { Rat::zero() };
                assert_eq!(*report.matrix.at(r, col), expect);
            }
        }
    }

    #[test]
    fn surjection_for_z2_triangular_example() {
        let g = make_group(&GroupSpec::Cyclic(2)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let (q, _) = quasitriangular(h, z2_example_r(), &cfg()).unwrap();
        let report = hopf_surjection_f(&q, &cfg()).unwrap();
        assert_eq!(report.max_residual(), 0.0);
        assert_eq!(report.rank, 2);
    }

    #[test]
    fn invert_element_on_group_algebra() {
        let g = make_group(&GroupSpec::Cyclic(4)).unwrap();
        let h = group_algebra::<Rat>(&g).unwrap();
        // 1 + 2g is invertible in kZ4.
        let mut a = vec![Rat::zero(); 4];
        a[0] = Rat::one();
        a[1] = Rat::from_int(2);
        let inv = invert_element(&h.bi, &a, &cfg()).unwrap();
        let prod = h.bi.mul_vec(&a, &inv);
        assert_eq!(prod, h.bi.unit);
        // 1 - g is a zero divisor in kZ2, hence not invertible.
        let g2 = make_group(&GroupSpec::Cyclic(2)).unwrap();
        let h2 = group_algebra::<Rat>(&g2).unwrap();
        let b = vec![Rat::one(), Rat::one().neg()];
        let c = vec![Rat::one(), Rat::one()];
        let prod = h2.bi.mul_vec(&b, &c);
        assert!(prod.iter().all(|x| x.is_zero()));
        assert!(invert_element(&h2.bi, &b, &cfg()).is_err());
    }
}
