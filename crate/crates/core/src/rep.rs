//! Wedderburn decomposition of a semisimple algebra from its structure
//! constants: center, central primitive idempotents from the spectral data
//! of a random central element, block dimensions and characters from
//! regular-representation traces, the dual involution, grouplike counting,
//! and brute-force fusion coefficients.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eigen::{cluster_eigenvalues, eigenvalues};
use crate::error::{Error, Result};
use crate::hopf::{dual_hopf, Bialgebra, HopfAlgebra};
use crate::mat::{nullspace, solve_linear, Matrix, SolveOutcome};
use crate::scalar::{C64, Scalar, ToleranceConfig};

/// One matrix block of the decomposition.
#[derive(Clone, Debug)]
pub struct IrrepBlock {
    pub idempotent: Vec<C64>,
    pub dim: usize,
    pub character: Vec<C64>,
}

/// Blocks in canonical order: the counit block first, the rest sorted by
/// (dimension, character vector).
#[derive(Clone, Debug)]
pub struct IrrepTable {
    pub blocks: Vec<IrrepBlock>,
    /// Involutive permutation with chi_{i*} = chi_i after the antipode.
    pub dual_involution: Vec<usize>,
    pub unit_block: usize,
}

impl IrrepTable {
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    pub fn sorted_dims(&self) -> Vec<usize> {
        let mut d = self.dims();
        d.sort_unstable();
        d
    }

    /// Character matrix, one row per block.
    pub fn char_matrix(&self, dim: usize) -> Matrix<C64> {
        Matrix::from_fn(self.blocks.len(), dim, |i, j| self.blocks[i].character[j])
    }
}

/// Basis of the center: the solution space of [z, x_j] = 0 for all j,
/// narrowed constraint by constraint and certified on the full set.
pub fn center_basis(bi: &Bialgebra<C64>, cfg: &ToleranceConfig) -> Result<Vec<Vec<C64>>> {
    let n = bi.dim;
    let eps = 1e-9;
    // Current basis as columns of an n x d matrix, starting from the identity.
    let mut basis: Vec<Vec<C64>> = (0..n).map(|i| bi.basis_vec(i)).collect();
    for j in 0..n as u32 {
        if basis.len() <= 1 {
            break;
        }
        // Rows of [., x_j] applied to each basis column.
        let mut img: Matrix<C64> = Matrix::zero(n, basis.len());
        for (col, v) in basis.iter().enumerate() {
            for (i, vi) in v.iter().enumerate() {
                if vi.is_zero() {
                    continue;
                }
                for (l, c) in bi.mult.row(i as u32, j) {
                    img.at_mut(*l as usize, col).add_assign(&vi.mul(c));
                }
                for (l, c) in bi.mult.row(j, i as u32) {
                    let t = vi.mul(c);
                    *img.at_mut(*l as usize, col) = img.at(*l as usize, col).sub(&t);
                }
            }
        }
        if img.max_abs() <= eps {
            continue;
        }
        let kernel = nullspace(&img, eps);
        basis = kernel
            .iter()
            .map(|k| {
                let mut v = vec![C64::zero(); n];
                for (col, kc) in k.iter().enumerate() {
                    if kc.is_zero() {
                        continue;
                    }
                    for (vi, b) in v.iter_mut().zip(&basis[col]) {
                        vi.add_assign(&kc.mul(b));
                    }
                }
                v
            })
            .collect();
    }
    // Certify against every basis constraint.
    let mut worst: f64 = 0.0;
    for v in &basis {
        for j in 0..n {
            let xj = bi.basis_vec(j);
            let zx = bi.mul_vec(v, &xj);
            let xz = bi.mul_vec(&xj, v);
            for (a, b) in zx.iter().zip(&xz) {
                worst = worst.max(a.sub(b).abs());
            }
        }
    }
    let scale = basis
        .iter()
        .flat_map(|v| v.iter().map(Scalar::abs))
        .fold(1.0, f64::max);
    if worst > cfg.residual_tol * scale * n as f64 {
        return Err(Error::RetriesExhausted(format!(
            "center candidate fails commutation at {worst:e}"
        )));
    }
    Ok(basis)
}

/// Express vectors in the span of `basis` (columns), solving the joint
/// linear system once.
fn coords_in_span(
    basis: &[Vec<C64>],
    targets: &[Vec<C64>],
    cfg: &ToleranceConfig,
) -> Result<Vec<Vec<C64>>> {
    let n = basis[0].len();
    let d = basis.len();
    let a = Matrix::from_fn(n, d, |i, j| basis[j][i]);
    let rhs = Matrix::from_fn(n, targets.len(), |i, j| targets[j][i]);
    match solve_linear(&a, &rhs, cfg)? {
        SolveOutcome::Solution(x) => Ok((0..targets.len())
            .map(|j| (0..d).map(|i| *x.at(i, j)).collect())
            .collect()),
        SolveOutcome::Inconsistent { residual } => Err(Error::Invalid(format!(
            "vector leaves the claimed span (residual {residual:e})"
        ))),
    }
}

struct CenterArithmetic {
    d: usize,
    /// table[a][b] = coordinates of z_a z_b.
    table: Vec<Vec<Vec<C64>>>,
}

impl CenterArithmetic {
    fn mul(&self, u: &[C64], v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::zero(); self.d];
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let c = ua.mul(vb);
                for (k, t) in self.table[a][b].iter().enumerate() {
                    out[k].add_assign(&c.mul(t));
                }
            }
        }
        out
    }
}

/// Wedderburn decomposition of a semisimple Hopf algebra over the complex
/// backend. Semisimplicity is certified a posteriori by the block
/// invariants: idempotents orthogonal and summing to one, integer
/// dimensions with sum of squares equal to the algebra dimension.
pub fn wedderburn(h: &HopfAlgebra<C64>, cfg: &ToleranceConfig) -> Result<IrrepTable> {
    cfg.validate()?;
    let bi = &h.bi;
    let center = center_basis(bi, cfg)?;
    let d = center.len();

    // Center multiplication table in center coordinates.
    let mut products = Vec::with_capacity(d * d);
    for za in &center {
        for zb in &center {
            products.push(bi.mul_vec(za, zb));
        }
    }
    let coords = coords_in_span(&center, &products, cfg)?;
    let table: Vec<Vec<Vec<C64>>> = (0..d)
        .map(|a| (0..d).map(|b| coords[a * d + b].clone()).collect())
        .collect();
    let arith = CenterArithmetic { d, table };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut last_err = Error::RetriesExhausted("wedderburn: no attempt made".into());
    for _attempt in 0..cfg.max_random_retries {
        let z: Vec<C64> = (0..d)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), 0.0))
            .collect();
        // Multiplication by z restricted to the center.
        let mut m = Matrix::zero(d, d);
        for b in 0..d {
            let mut eb = vec![C64::zero(); d];
            eb[b] = C64::one();
            let col = arith.mul(&z, &eb);
            for (i, c) in col.into_iter().enumerate() {
                *m.at_mut(i, b) = c;
            }
        }
        let vals = match eigenvalues(&m) {
            Ok(v) => v,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let clusters = match cluster_eigenvalues(&vals, cfg.eigen_gap_tol) {
            Ok(c) => c,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        if clusters.len() != d {
            // z failed to separate the blocks; a fresh random element will.
            last_err = Error::EigenClusters {
                gap: cfg.eigen_gap_tol,
            };
            continue;
        }
        match assemble_blocks(h, &center, &arith, &m, &clusters, cfg) {
            Ok(table) => return Ok(table),
            Err(e) => {
                last_err = e;
                continue;
            }
        }
    }
    Err(Error::RetriesExhausted(format!(
        "wedderburn gave up after {} attempts: {last_err}",
        cfg.max_random_retries
    )))
}

fn assemble_blocks(
    h: &HopfAlgebra<C64>,
    center: &[Vec<C64>],
    arith: &CenterArithmetic,
    m: &Matrix<C64>,
    clusters: &[crate::eigen::Cluster],
    cfg: &ToleranceConfig,
) -> Result<IrrepTable> {
    let bi = &h.bi;
    let n = bi.dim;
    let d = arith.d;
    let trace_vec = bi.reg_trace_vector();
    let dot_trace = |v: &[C64]| {
        let mut acc = C64::zero();
        for (a, t) in v.iter().zip(&trace_vec) {
            acc.add_assign(&a.mul(t));
        }
        acc
    };

    // Each primitive idempotent spans the eigenspace of multiplication by z
    // on the center; extract the eigenvector and rescale it to idempotency
    // via v^2 = c v.
    let eps = 1e-8 * (1.0 + m.max_abs());
    let mut idem_coords = Vec::with_capacity(d);
    for cj in clusters {
        let shifted = Matrix::from_fn(d, d, |a, b| {
            if a == b {
                m.at(a, b).sub(&C64(cj.value))
            } else {
                *m.at(a, b)
            }
        });
        let kernel = nullspace(&shifted, eps);
        if kernel.len() != 1 {
            return Err(Error::EigenClusters {
                gap: cfg.eigen_gap_tol,
            });
        }
        let mut v = kernel.into_iter().next().unwrap();
        let (argmax, vmax) = v
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            .map(|(i, c)| (i, *c))
            .unwrap();
        let norm = vmax.inv().ok_or(Error::EigenClusters {
            gap: cfg.eigen_gap_tol,
        })?;
        for c in &mut v {
            *c = c.mul(&norm);
        }
        let v2 = arith.mul(&v, &v);
        let scale = v2[argmax].inv().ok_or(Error::EigenClusters {
            gap: cfg.eigen_gap_tol,
        })?;
        for c in &mut v {
            *c = c.mul(&scale);
        }
        idem_coords.push(v);
    }

    // Back to algebra coordinates.
    let idempotents: Vec<Vec<C64>> = idem_coords
        .iter()
        .map(|e| {
            let mut v = vec![C64::zero(); n];
            for (c, zb) in e.iter().zip(center) {
                if c.is_zero() {
                    continue;
                }
                for (vi, b) in v.iter_mut().zip(zb) {
                    vi.add_assign(&c.mul(b));
                }
            }
            v
        })
        .collect();

    // Certify idempotency, orthogonality and completeness.
    let tol = cfg.residual_tol * (n as f64).max(1.0) * 100.0;
    let mut sum = vec![C64::zero(); n];
    for (a, ea) in idempotents.iter().enumerate() {
        let ee = bi.mul_vec(ea, ea);
        let worst = ee
            .iter()
            .zip(ea)
            .map(|(x, y)| x.sub(y).abs())
            .fold(0.0, f64::max);
        if worst > tol {
            return Err(Error::EigenClusters {
                gap: cfg.eigen_gap_tol,
            });
        }
        for (b, eb) in idempotents.iter().enumerate() {
            if a < b {
                let prod = bi.mul_vec(ea, eb);
                if prod.iter().map(Scalar::abs).fold(0.0, f64::max) > tol {
                    return Err(Error::EigenClusters {
                        gap: cfg.eigen_gap_tol,
                    });
                }
            }
        }
        for (s, e) in sum.iter_mut().zip(ea) {
            s.add_assign(e);
        }
    }
    for (i, s) in sum.iter().enumerate() {
        if s.sub(&bi.unit[i]).abs() > tol {
            return Err(Error::EigenClusters {
                gap: cfg.eigen_gap_tol,
            });
        }
    }

    // Dimensions from regular traces, characters from tr(e_j x_i) / dim.
    let mut blocks = Vec::with_capacity(d);
    for e in &idempotents {
        let t = dot_trace(e);
        let dim_sq = t.re();
        if t.im().abs() > cfg.integer_tol || dim_sq < 0.0 {
            return Err(Error::IntegerRecognition(format!("block trace {t}")));
        }
        let dim = C64::new(dim_sq.sqrt(), 0.0)
            .recognize_integer(cfg.integer_tol)
            .ok_or_else(|| {
                Error::IntegerRecognition(format!("block dimension sqrt({dim_sq})"))
            })?;
        if dim <= 0 {
            return Err(Error::IntegerRecognition(format!("block dimension {dim}")));
        }
        let inv_dim = C64::new(1.0 / dim as f64, 0.0);
        let mut character = Vec::with_capacity(n);
        for i in 0..n {
            let exi = bi.mul_vec(e, &bi.basis_vec(i));
            character.push(dot_trace(&exi).mul(&inv_dim));
        }
        blocks.push(IrrepBlock {
            idempotent: e.clone(),
            dim: dim as usize,
            character,
        });
    }
    let sq: usize = blocks.iter().map(|b| b.dim * b.dim).sum();
    if sq != n {
        return Err(Error::IntegerRecognition(format!(
            "dimension count: sum of squares {sq} != {n} (not semisimple or tolerance too tight)"
        )));
    }

    // Counit block: eps(e_j) is 1 on exactly one block and 0 elsewhere.
    let eps_values: Vec<C64> = blocks
        .iter()
        .map(|b| bi.counit_of(&b.idempotent))
        .collect();
    let unit_block = eps_values
        .iter()
        .position(|v| v.sub(&C64::one()).abs() <= cfg.integer_tol)
        .ok_or_else(|| Error::Invalid("no counit block found".into()))?;

    // Canonical order: counit block first, the rest by (dim, character key).
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    let sort_key = |b: &IrrepBlock| -> (usize, Vec<(i64, i64)>) {
        let key = b
            .character
            .iter()
            .map(|c| ((c.re() * 1e6).round() as i64, (c.im() * 1e6).round() as i64))
            .collect();
        (b.dim, key)
    };
    order.sort_by(|&a, &b| {
        let ka = (a != unit_block, sort_key(&blocks[a]));
        let kb = (b != unit_block, sort_key(&blocks[b]));
        ka.cmp(&kb)
    });
    let blocks: Vec<IrrepBlock> = order.into_iter().map(|i| blocks[i].clone()).collect();

    // Dual involution: chi_{i*} = chi_i after S.
    let mut dual_involution = vec![0usize; blocks.len()];
    for (i, b) in blocks.iter().enumerate() {
        let twisted: Vec<C64> = (0..n)
            .map(|j| {
                let mut acc = C64::zero();
                for s in 0..n {
                    let sj = h.antipode.at(s, j);
                    if !sj.is_zero() {
                        acc.add_assign(&sj.mul(&b.character[s]));
                    }
                }
                acc
            })
            .collect();
        let (best, best_err) = blocks
            .iter()
            .enumerate()
            .map(|(k, cand)| {
                let err = twisted
                    .iter()
                    .zip(&cand.character)
                    .map(|(x, y)| x.sub(y).abs())
                    .fold(0.0, f64::max);
                (k, err)
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if best_err > cfg.integer_tol * (n as f64) {
            return Err(Error::Invalid(format!(
                "dual character of block {i} not in the table (err {best_err:e})"
            )));
        }
        dual_involution[i] = best;
    }
    for (i, &st) in dual_involution.iter().enumerate() {
        if dual_involution[st] != i {
            return Err(Error::Invalid("dual involution is not an involution".into()));
        }
    }

    Ok(IrrepTable {
        blocks,
        dual_involution,
        unit_block: 0,
    })
}

/// Fusion coefficients by brute force: expand the character of each tensor
/// product V_i (x) V_j in the character basis and recognize nonnegative
/// integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTensor {
    pub m: usize,
    data: Vec<i64>,
}

impl FusionTensor {
    pub fn zeros(m: usize) -> Self {
        FusionTensor {
            m,
            data: vec![0; m * m * m],
        }
    }

    pub fn at(&self, i: usize, j: usize, l: usize) -> i64 {
        self.data[(i * self.m + j) * self.m + l]
    }

    pub fn at_mut(&mut self, i: usize, j: usize, l: usize) -> &mut i64 {
        &mut self.data[(i * self.m + j) * self.m + l]
    }

    /// Fusion matrix N_j with (N_j)_{il} = N_{ji}^l.
    pub fn matrix(&self, j: usize) -> Matrix<C64> {
        Matrix::from_fn(self.m, self.m, |i, l| C64::from_int(self.at(j, i, l)))
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }
}

pub fn fusion_bruteforce(
    h: &HopfAlgebra<C64>,
    table: &IrrepTable,
    cfg: &ToleranceConfig,
) -> Result<FusionTensor> {
    let bi = &h.bi;
    let n = bi.dim;
    let m = table.num_blocks();
    // chi^T c = psi, solved for all (i, j) pairs at once.
    let a = Matrix::from_fn(n, m, |x, l| table.blocks[l].character[x]);
    let mut rhs: Matrix<C64> = Matrix::zero(n, m * m);
    for x in 0..n {
        for (p, q, c) in bi.comult.row(x as u32) {
            for i in 0..m {
                let ci = table.blocks[i].character[*p as usize];
                if ci.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let cj = table.blocks[j].character[*q as usize];
                    let v = c.mul(&ci).mul(&cj);
                    rhs.at_mut(x, i * m + j).add_assign(&v);
                }
            }
        }
    }
    let sol = match solve_linear(&a, &rhs, cfg)? {
        SolveOutcome::Solution(x) => x,
        SolveOutcome::Inconsistent { residual } => {
            return Err(Error::Invalid(format!(
                "tensor-product character leaves the character span (residual {residual:e}); broken Hopf structure"
            )))
        }
    };
    let mut fusion = FusionTensor::zeros(m);
    for i in 0..m {
        for j in 0..m {
            for l in 0..m {
                let c = sol.at(l, i * m + j);
                let v = c.recognize_integer(cfg.integer_tol).ok_or_else(|| {
                    Error::IntegerRecognition(format!("fusion coefficient N_[{i}{j}]^{l} = {c}"))
                })?;
                if v < 0 {
                    return Err(Error::Invalid(format!(
                        "negative fusion coefficient N_[{i}{j}]^{l} = {v}"
                    )));
                }
                *fusion.at_mut(i, j, l) = v;
            }
        }
    }
    Ok(fusion)
}

/// Number of grouplike elements of `h`: the count of one-dimensional
/// blocks of the dual (grouplikes are the algebra maps on H*).
pub fn grouplike_count(h: &HopfAlgebra<C64>, cfg: &ToleranceConfig) -> Result<usize> {
    let dual = dual_hopf(h);
    let table = wedderburn(&dual, cfg)?;
    Ok(table.blocks.iter().filter(|b| b.dim == 1).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupSpec};
    use crate::hopf::group_algebra;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn alg(spec: &GroupSpec) -> HopfAlgebra<C64> {
        group_algebra::<C64>(&make_group(spec).unwrap()).unwrap()
    }

    #[test]
    fn trivial_algebra_is_one_block() {
        let h = alg(&GroupSpec::Cyclic(1));
        let t = wedderburn(&h, &cfg()).unwrap();
        assert_eq!(t.sorted_dims(), vec![1]);
        assert_eq!(t.unit_block, 0);
    }

    #[test]
    fn s3_has_classical_dimensions_and_characters() {
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        let h = group_algebra::<C64>(&g).unwrap();
        let t = wedderburn(&h, &cfg()).unwrap();
        assert_eq!(t.sorted_dims(), vec![1, 1, 2]);
        // Block 0 is the counit block: character identically one.
        for x in 0..6 {
            assert!((t.blocks[0].character[x].re() - 1.0).abs() < 1e-8);
            assert!(t.blocks[0].character[x].im().abs() < 1e-8);
        }
        // The 2-dimensional character: 2 at e, 0 at transpositions, -1 at 3-cycles.
        let two = t.blocks.iter().find(|b| b.dim == 2).unwrap();
        let classes = g.conjugacy_classes();
        let transposition = classes.iter().find(|c| c.len() == 3).unwrap()[0];
        let three_cycle = classes.iter().find(|c| c.len() == 2).unwrap()[0];
        assert!((two.character[g.identity].re() - 2.0).abs() < 1e-8);
        assert!(two.character[transposition].abs() < 1e-8);
        assert!((two.character[three_cycle].re() + 1.0).abs() < 1e-8);
    }

    #[test]
    fn quaternion_dimensions() {
        let t = wedderburn(&alg(&GroupSpec::Quaternion8), &cfg()).unwrap();
        assert_eq!(t.sorted_dims(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn cyclic_four_characters_are_fourth_roots() {
        let t = wedderburn(&alg(&GroupSpec::Cyclic(4)), &cfg()).unwrap();
        assert_eq!(t.sorted_dims(), vec![1, 1, 1, 1]);
        // Every character value is a fourth root of unity.
        for b in &t.blocks {
            for v in &b.character {
                let p4 = v.0.powu(4);
                assert!((p4 - num::complex::Complex64::new(1.0, 0.0)).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn characters_are_linearly_independent() {
        let h = alg(&GroupSpec::Symmetric(3));
        let t = wedderburn(&h, &cfg()).unwrap();
        let cm = t.char_matrix(h.dim());
        assert_eq!(crate::mat::rank_at(&cm, 1e-6), t.num_blocks());
    }

    #[test]
    fn s3_fusion_matches_classical_rules() {
        let h = alg(&GroupSpec::Symmetric(3));
        let t = wedderburn(&h, &cfg()).unwrap();
        let f = fusion_bruteforce(&h, &t, &cfg()).unwrap();
        // Identify blocks: 0 = trivial, sign = other 1-dim, std = 2-dim.
        let sgn = (1..3).find(|&i| t.blocks[i].dim == 1).unwrap();
        let std = (1..3).find(|&i| t.blocks[i].dim == 2).unwrap();
        // Unit row: N_{0j}^l = delta_{jl}
        for j in 0..3 {
            for l in 0..3 {
                assert_eq!(f.at(0, j, l), i64::from(j == l));
            }
        }
        // sgn (x) sgn = trivial, sgn (x) std = std
        assert_eq!(f.at(sgn, sgn, 0), 1);
        assert_eq!(f.at(sgn, sgn, sgn), 0);
        assert_eq!(f.at(sgn, std, std), 1);
        // std (x) std = trivial + sgn + std
        assert_eq!(f.at(std, std, 0), 1);
        assert_eq!(f.at(std, std, sgn), 1);
        assert_eq!(f.at(std, std, std), 1);
    }

    #[test]
    fn grouplike_counts() {
        // kG has |G| grouplikes; the dual of kS3 has |S3^ab| = 2.
        let h = alg(&GroupSpec::Symmetric(3));
        assert_eq!(grouplike_count(&h, &cfg()).unwrap(), 6);
        let dual = dual_hopf(&h);
        assert_eq!(grouplike_count(&dual, &cfg()).unwrap(), 2);
    }

    #[test]
    fn center_of_ks3_is_three_dimensional_and_z_clusters_into_classes() {
        let g = crate::groups::make_group(&GroupSpec::Symmetric(3)).unwrap();
        let class_count = g.conjugacy_classes().len();
        let h = alg(&GroupSpec::Symmetric(3));
        let center = center_basis(&h.bi, &cfg()).unwrap();
        assert_eq!(center.len(), class_count);
        // Multiplication by a random central element on the whole algebra
        // clusters into 3 eigenspaces, one per conjugacy class.
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut z = vec![C64::zero(); 6];
        for zb in &center {
            let c = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            for (zi, bi) in z.iter_mut().zip(zb) {
                zi.add_assign(&c.mul(bi));
            }
        }
        let m = h.bi.left_mult_matrix(&z);
        let dec = crate::eigen::eigen_commutative(&m, &cfg()).unwrap();
        assert_eq!(dec.len(), class_count);
    }

    #[test]
    fn different_seeds_agree_on_dims_and_characters() {
        let h = alg(&GroupSpec::Quaternion8);
        let t1 = wedderburn(&h, &cfg()).unwrap();
        let t2 = wedderburn(&h, &cfg().with_seed(12345)).unwrap();
        assert_eq!(t1.dims(), t2.dims());
        assert_eq!(t1.dual_involution, t2.dual_involution);
        for (b1, b2) in t1.blocks.iter().zip(&t2.blocks) {
            for (c1, c2) in b1.character.iter().zip(&b2.character) {
                assert!(c1.sub(c2).abs() < 1e-7);
            }
        }
    }
}
