//! Dense complex eigenvalues by Hessenberg reduction and shifted QR,
//! eigenvalue clustering at a gap tolerance, and spectral projectors of
//! diagonalizable operators by Lagrange interpolation.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::scalar::{C64, Scalar, ToleranceConfig};

struct Grid {
    n: usize,
    a: Vec<Complex64>,
}

impl Grid {
    fn from_matrix(m: &Matrix<C64>) -> Self {
        let n = m.rows;
        let a = m.entries().iter().map(|z| z.0).collect();
        Grid { n, a }
    }
    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }
    #[inline]
    fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.a[i * self.n + j] = v;
    }
}

/// Reduce to upper Hessenberg form by complex Householder reflections.
fn hessenberg(h: &mut Grid) {
    let n = h.n;
    for k in 0..n.saturating_sub(2) {
        let norm_x: f64 = (k + 1..n).map(|i| h.at(i, k).norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h.at(k + 1, k);
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        // v = x - alpha e1
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h.at(i, k)).collect();
        v[0] -= alpha;
        let vsq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vsq == 0.0 {
            continue;
        }
        let beta = 2.0 / vsq;
        // Left: rows k+1..n of columns k..n
        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * h.at(k + 1 + t, j);
            }
            dot *= beta;
            for (t, vi) in v.iter().enumerate() {
                let cur = h.at(k + 1 + t, j);
                h.set(k + 1 + t, j, cur - dot * vi);
            }
        }
        // Right: columns k+1..n of all rows
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += h.at(i, k + 1 + t) * vi;
            }
            dot *= beta;
            for (t, vi) in v.iter().enumerate() {
                let cur = h.at(i, k + 1 + t);
                h.set(i, k + 1 + t, cur - dot * vi.conj());
            }
        }
    }
}

fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    // Returns (c, s) with [c, s; -conj(s), c] zeroing b.
    if b.norm() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let denom = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if a.norm() == 0.0 {
        return (0.0, b.conj() / b.norm());
    }
    let c = a.norm() / denom;
    let s = (a / a.norm()) * b.conj() / denom;
    (c, s)
}

/// Eigenvalues of the 2x2 block [[a,b],[c,d]].
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - 4.0 * det).sqrt();
    ((tr + disc) / 2.0, (tr - disc) / 2.0)
}

/// Eigenvalues of a square complex matrix (values only, unordered input
/// order; returned sorted by real part then imaginary part).
pub fn eigenvalues(m: &Matrix<C64>) -> Result<Vec<Complex64>> {
    if m.rows != m.cols {
        return Err(Error::Shape("eigenvalues: matrix not square".into()));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = Grid::from_matrix(m);
    hessenberg(&mut h);

    let mut vals = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iters_here = 0usize;
    let max_iters = 60 * n + 200;
    let mut total_iters = 0usize;

    loop {
        // Zero out negligible subdiagonals in the active range.
        for i in 0..hi {
            let small = f64::EPSILON * (h.at(i, i).norm() + h.at(i + 1, i + 1).norm()).max(1e-290);
            if h.at(i + 1, i).norm() <= small {
                h.set(i + 1, i, Complex64::new(0.0, 0.0));
            }
        }
        if hi == 0 {
            vals.push(h.at(0, 0));
            break;
        }
        if h.at(hi, hi - 1).norm() == 0.0 {
            vals.push(h.at(hi, hi));
            hi -= 1;
            iters_here = 0;
            continue;
        }
        // Unreduced block [lo..=hi].
        let mut lo = hi;
        while lo > 0 && h.at(lo, lo - 1).norm() != 0.0 {
            lo -= 1;
        }
        if hi - lo == 1 && iters_here > 4 {
            // Resolve a stubborn 2x2 block directly and deflate it.
            let (l1, l2) = eig2(h.at(lo, lo), h.at(lo, hi), h.at(hi, lo), h.at(hi, hi));
            h.set(lo, lo, l1);
            h.set(hi, hi, l2);
            h.set(hi, lo, Complex64::new(0.0, 0.0));
            iters_here = 0;
            continue;
        }

        total_iters += 1;
        iters_here += 1;
        if total_iters > max_iters {
            return Err(Error::EigenConvergence);
        }

        // Wilkinson shift: trailing 2x2 eigenvalue closest to H[hi][hi].
        let (l1, l2) = eig2(
            h.at(hi - 1, hi - 1),
            h.at(hi - 1, hi),
            h.at(hi, hi - 1),
            h.at(hi, hi),
        );
        let target = h.at(hi, hi);
        let mut shift = if (l1 - target).norm() <= (l2 - target).norm() { l1 } else { l2 };
        if iters_here % 12 == 0 {
            // Exceptional shift to break symmetry-induced cycles.
            shift += Complex64::new(
                1.5 * h.at(hi, hi - 1).norm(),
                0.5 * h.at(hi, hi - 1).norm(),
            );
        }

        // Explicit shifted QR step on the block.
        for i in lo..=hi {
            let d = h.at(i, i);
            h.set(i, i, d - shift);
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let (c, s) = givens(h.at(i, i), h.at(i + 1, i));
            for j in i..=hi {
                let x = h.at(i, j);
                let y = h.at(i + 1, j);
                h.set(i, j, c * x + s * y);
                h.set(i + 1, j, -s.conj() * x + c * y);
            }
            rots.push((c, s));
        }
        for (t, &(c, s)) in rots.iter().enumerate() {
            let i = lo + t;
            let top = (i + 2).min(hi);
            for r in lo..=top {
                let x = h.at(r, i);
                let y = h.at(r, i + 1);
                h.set(r, i, c * x + s.conj() * y);
                h.set(r, i + 1, -s * x + c * y);
            }
        }
        for i in lo..=hi {
            let d = h.at(i, i);
            h.set(i, i, d + shift);
        }
    }

    vals.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(vals)
}

/// One eigenvalue cluster: representative value and member multiplicity.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Group eigenvalues so that members within a cluster are chained at
/// distance <= `gap` and distinct clusters are separated by more.
/// Fails when chaining smears a cluster across many gaps.
pub fn cluster_eigenvalues(vals: &[Complex64], gap: f64) -> Result<Vec<Cluster>> {
    let n = vals.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (vals[i] - vals[j]).norm() <= gap {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut clusters = Vec::new();
    for members in groups.values() {
        let mut mean = Complex64::new(0.0, 0.0);
        for &i in members {
            mean += vals[i];
        }
        mean /= members.len() as f64;
        let diameter = members
            .iter()
            .flat_map(|&i| members.iter().map(move |&j| (vals[i] - vals[j]).norm()))
            .fold(0.0, f64::max);
        if diameter > 10.0 * gap {
            return Err(Error::EigenClusters { gap });
        }
        clusters.push(Cluster {
            value: mean,
            multiplicity: members.len(),
        });
    }
    clusters.sort_by(|a, b| {
        a.value
            .re
            .partial_cmp(&b.value.re)
            .unwrap()
            .then(a.value.im.partial_cmp(&b.value.im).unwrap())
    });
    Ok(clusters)
}

/// Greatest distance in a greedy closest-pair matching of two complex
/// multisets; `f64::INFINITY` when the lengths differ. Pairs are matched
/// globally closest first, so the result bounds the multiset distance.
pub fn multiset_match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let mut best = (f64::INFINITY, 0, 0);
        for i in 0..n {
            if used_a[i] {
                continue;
            }
            for j in 0..n {
                if used_b[j] {
                    continue;
                }
                let d = (a[i] - b[j]).norm();
                if d < best.0 {
                    best = (d, i, j);
                }
            }
        }
        used_a[best.1] = true;
        used_b[best.2] = true;
        worst = worst.max(best.0);
    }
    worst
}

/// Spectral decomposition of a diagonalizable operator: clustered
/// eigenvalues with their spectral projectors, computed by Lagrange
/// interpolation over the cluster representatives.
///
/// The caller guarantees diagonalizability (multiplication operators of
/// commutative semisimple algebras). Failure to resolve clusters or to
/// certify the projectors signals "retry with a new random element".
pub fn eigen_commutative(
    op: &Matrix<C64>,
    cfg: &ToleranceConfig,
) -> Result<Vec<(Complex64, Matrix<C64>)>> {
    let n = op.rows;
    let vals = eigenvalues(op)?;
    let clusters = cluster_eigenvalues(&vals, cfg.eigen_gap_tol)?;

    let mut out = Vec::with_capacity(clusters.len());
    for (j, cj) in clusters.iter().enumerate() {
        let mut p = Matrix::<C64>::identity(n);
        for (k, ck) in clusters.iter().enumerate() {
            if k == j {
                continue;
            }
            let denom = cj.value - ck.value;
            // (op - lambda_k I) / (lambda_j - lambda_k)
            let mut factor = op.clone();
            for i in 0..n {
                let d = factor.at(i, i).0 - ck.value;
                *factor.at_mut(i, i) = C64(d);
            }
            let scaled = factor.map(|z| C64(z.0 / denom));
            p = p.matmul(&scaled);
        }
        out.push((cj.value, p));
    }

    // Certify: idempotent, mutually annihilating, summing to the identity.
    let tol = cfg.residual_tol * (n as f64).max(1.0);
    let mut sum = Matrix::<C64>::zero(n, n);
    for (_, p) in &out {
        let p2 = p.matmul(p);
        if crate::mat::diff_norm(&p2, p) > tol {
            return Err(Error::EigenClusters {
                gap: cfg.eigen_gap_tol,
            });
        }
        sum = Matrix::from_fn(n, n, |i, j| sum.at(i, j).add(p.at(i, j)));
    }
    if crate::mat::diff_norm(&sum, &Matrix::identity(n)) > tol {
        return Err(Error::EigenClusters {
            gap: cfg.eigen_gap_tol,
        });
    }
    for (a, (_, pa)) in out.iter().enumerate() {
        for (b, (_, pb)) in out.iter().enumerate() {
            if a != b {
                let prod = pa.matmul(pb);
                if prod.max_abs() > tol {
                    return Err(Error::EigenClusters {
                        gap: cfg.eigen_gap_tol,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmat(rows: Vec<Vec<f64>>) -> Matrix<C64> {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| C64::new(rows[i][j], 0.0))
    }

    #[test]
    fn diagonal_matrix_eigenvalues_and_projectors() {
        let m = cmat(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0],
            vec![0.0, 0.0, 3.0],
        ]);
        let cfg = ToleranceConfig::default();
        let dec = eigen_commutative(&m, &cfg).unwrap();
        assert_eq!(dec.len(), 3);
        for (k, (val, p)) in dec.iter().enumerate() {
            assert!((val.re - (k as f64 + 1.0)).abs() < 1e-10);
            for i in 0..3 {
                for j in 0..3 {
                    let expect = if i == k && j == k { 1.0 } else { 0.0 };
                    assert!((p.at(i, j).0.re - expect).abs() < 1e-10);
                    assert!(p.at(i, j).0.im.abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn identity_is_a_single_cluster() {
        let m: Matrix<C64> = Matrix::identity(4);
        let cfg = ToleranceConfig::default();
        let dec = eigen_commutative(&m, &cfg).unwrap();
        assert_eq!(dec.len(), 1);
        assert!((dec[0].0 - num::complex::Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(crate::mat::diff_norm(&dec[0].1, &Matrix::identity(4)) < 1e-10);
    }

    #[test]
    fn companion_matrix_roots() {
        // Companion of (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6.
        let m = cmat(vec![
            vec![0.0, 0.0, 6.0],
            vec![1.0, 0.0, -11.0],
            vec![0.0, 1.0, 6.0],
        ]);
        let vals = eigenvalues(&m).unwrap();
        let expected = [1.0, 2.0, 3.0];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v.re - e).abs() < 1e-8, "got {v}");
            assert!(v.im.abs() < 1e-8);
        }
    }

    #[test]
    fn conjugated_spectrum_is_recovered() {
        // P D P^-1 for a fixed integer P and complex D.
        let d = Matrix::from_fn(4, 4, |i, j| {
            if i != j {
                return C64::zero();
            }
            match i {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(-2.0, 1.0),
                2 => C64::new(-2.0, -1.0),
                _ => C64::new(4.0, 0.0),
            }
        });
        let p = cmat(vec![
            vec![1.0, 2.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0, -1.0],
            vec![3.0, 0.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.0, 1.0],
        ]);
        let cfg = ToleranceConfig::default();
        let pinv = crate::mat::invert(&p, &cfg).unwrap().unwrap();
        let m = p.matmul(&d).matmul(&pinv);
        let vals = eigenvalues(&m).unwrap();
        let expected = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, 1.0),
            Complex64::new(-2.0, -1.0),
            Complex64::new(4.0, 0.0),
        ];
        assert!(multiset_match_distance(&vals, &expected) < 1e-8);
    }

    #[test]
    fn chained_eigenvalues_signal_a_retry() {
        // Eigenvalues half a gap apart chain into one smeared cluster whose
        // diameter exceeds what the gap tolerance accepts.
        let gap = 1e-7;
        let vals: Vec<Complex64> = (0..25)
            .map(|k| Complex64::new(k as f64 * gap / 2.0, 0.0))
            .collect();
        assert!(matches!(
            cluster_eigenvalues(&vals, gap),
            Err(crate::error::Error::EigenClusters { .. })
        ));
    }

    #[test]
    fn repeated_eigenvalues_cluster_with_multiplicity() {
        let m = cmat(vec![
            vec![2.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0],
            vec![0.0, 0.0, 5.0],
        ]);
        let vals = eigenvalues(&m).unwrap();
        let clusters = cluster_eigenvalues(&vals, 1e-7).unwrap();
        assert_eq!(clusters.len(), 2);
        assert_eq!(clusters[0].multiplicity, 2);
        assert_eq!(clusters[1].multiplicity, 1);
    }
}
