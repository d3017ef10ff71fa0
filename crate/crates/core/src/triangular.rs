//! Triangular structures: detection of R21 R = 1, the involutive Drinfeld
//! element, the parity-corrected R-matrix with trivial Drinfeld element,
//! and counital-cocycle twists of group algebras generated by bicharacters
//! of abelian groups.

use std::sync::Arc;

use crate::double::{quasitriangular, QuasiStructure};
use crate::error::{Error, Result};
use crate::groups::{make_group, FiniteGroup, GroupSpec};
use crate::hopf::{
    group_algebra, solve_antipode, to_complex_generic, validate_bialgebra, validate_hopf,
    Bialgebra, ComultTable, Elt2, Elt3, HopfAlgebra, HopfReport,
};
use crate::rep::{wedderburn, IrrepTable};
use crate::scalar::{C64, Rat, Scalar, ToleranceConfig};

/// Triangularity: the monodromy equals 1 (x) 1. Returns the verdict at the
/// configured tolerance and the residual itself.
pub fn is_triangular<S: Scalar>(q: &QuasiStructure<S>, cfg: &ToleranceConfig) -> (bool, f64) {
    let one = Elt2::one_one(&q.hopf.bi);
    let residual = q.monodromy.diff_norm(&one);
    (residual <= cfg.residual_tol, residual)
}

/// Residuals of the triangular-case facts about the Drinfeld element:
/// u^2 = 1, (S (x) S)(R) = R, u grouplike, and matching traces of u and
/// u^{-1} in every block.
#[derive(Clone, Debug)]
pub struct UInvolutionReport {
    pub u_squared: f64,
    pub antipode_fixes_r: f64,
    pub grouplike: f64,
    pub block_trace_match: f64,
}

impl UInvolutionReport {
    pub fn max_residual(&self) -> f64 {
        self.u_squared
            .max(self.antipode_fixes_r)
            .max(self.grouplike)
            .max(self.block_trace_match)
    }
}

pub fn check_u_involution<S: Scalar>(
    q: &QuasiStructure<S>,
    cfg: &ToleranceConfig,
) -> Result<UInvolutionReport> {
    let bi = &q.hopf.bi;
    let uu = bi.mul_vec(&q.u, &q.u);
    let u_squared = uu
        .iter()
        .zip(&bi.unit)
        .map(|(a, b)| a.sub(b).abs())
        .fold(0.0, f64::max);

    let ssr = q.r.apply_legs(&q.hopf.antipode, &q.hopf.antipode);
    let antipode_fixes_r = ssr.diff_norm(&q.r);

    let du = bi.comult_vec(&q.u);
    let grouplike = du.diff_norm(&Elt2::outer(&q.u, &q.u));

    // tr(u) = tr(u^{-1}) blockwise.
    let hc = to_complex_generic(&q.hopf);
    let table = wedderburn(&hc, cfg)?;
    let uc: Vec<C64> = q.u.iter().map(|c| C64(c.to_c64())).collect();
    let uc_inv: Vec<C64> = q.u_inv.iter().map(|c| C64(c.to_c64())).collect();
    let mut block_trace_match: f64 = 0.0;
    for block in &table.blocks {
        let mut tu = C64::zero();
        let mut tui = C64::zero();
        for (i, chi) in block.character.iter().enumerate() {
            tu.add_assign(&uc[i].mul(chi));
            tui.add_assign(&uc_inv[i].mul(chi));
        }
        block_trace_match = block_trace_match.max(tu.sub(&tui).abs());
    }

    Ok(UInvolutionReport {
        u_squared,
        antipode_fixes_r,
        grouplike,
        block_trace_match,
    })
}

/// Parities of the blocks: u acts on block V as the scalar (-1)^{p(V)}.
pub fn parity_vector<S: Scalar>(
    q: &QuasiStructure<S>,
    table: &IrrepTable,
    cfg: &ToleranceConfig,
) -> Result<Vec<u8>> {
    let uc: Vec<C64> = q.u.iter().map(|c| C64(c.to_c64())).collect();
    table
        .blocks
        .iter()
        .map(|block| {
            let mut tu = C64::zero();
            for (i, chi) in block.character.iter().enumerate() {
                tu.add_assign(&uc[i].mul(chi));
            }
            let scalar = tu.mul(&C64::new(1.0 / block.dim as f64, 0.0));
            match scalar.recognize_integer(cfg.integer_tol) {
                Some(1) => Ok(0u8),
                Some(-1) => Ok(1u8),
                _ => Err(Error::IntegerRecognition(format!(
                    "u acts by {scalar}, not by a sign"
                ))),
            }
        })
        .collect()
}

/// Residuals of the parity correction R ~> (1/2)(1(x)1 + 1(x)u + u(x)1 - u(x)u) R.
#[derive(Clone, Debug)]
pub struct ParityTwistReport {
    pub quasi_report: HopfReport,
    pub triangular: f64,
    pub new_u_trivial: f64,
    /// Blockwise agreement with the sign-corrected original R.
    pub block_action: f64,
}

impl ParityTwistReport {
    pub fn max_residual(&self) -> f64 {
        self.quasi_report
            .max_residual()
            .max(self.triangular)
            .max(self.new_u_trivial)
            .max(self.block_action)
    }
}

/// Replace the R-matrix of a triangular structure with the parity-corrected
/// one, whose Drinfeld element is 1. Verified: quasitriangularity,
/// triangularity, the trivial Drinfeld element, and the blockwise sign law.
pub fn parity_twist<S: Scalar>(
    q: &QuasiStructure<S>,
    cfg: &ToleranceConfig,
) -> Result<(QuasiStructure<S>, ParityTwistReport)> {
    let bi = &q.hopf.bi;
    let inv = check_u_involution(q, cfg)?;
    if inv.u_squared > cfg.residual_tol {
        return Err(Error::AxiomFailure {
            name: "u-involution".into(),
            residual: inv.u_squared,
        });
    }

    // Correction factor (1 (x) 1 + 1 (x) u + u (x) 1 - u (x) u) / 2.
    let half = S::from_ratio(1, 2);
    let correction = Elt2::one_one(bi)
        .add(&Elt2::outer(&bi.unit, &q.u))
        .add(&Elt2::outer(&q.u, &bi.unit))
        .add(&Elt2::outer(&q.u, &q.u).scale(&S::from_int(-1)))
        .scale(&half);
    let new_r = correction.mul(bi, &q.r);

    let (new_q, quasi_report) = quasitriangular(Arc::clone(&q.hopf), new_r, cfg)?;
    let (_, triangular) = is_triangular(&new_q, cfg);
    let new_u_trivial = new_q
        .u
        .iter()
        .zip(&bi.unit)
        .map(|(a, b)| a.sub(b).abs())
        .fold(0.0, f64::max);

    // Blockwise law: against every x (x) y, the new R pairs like the old R
    // times (-1)^{p(V) p(W)}.
    let hc = to_complex_generic(&q.hopf);
    let table = wedderburn(&hc, cfg)?;
    let parities = parity_vector(q, &table, cfg)?;
    let r_old = q.r.map(&|c| C64(c.to_c64()));
    let r_new = new_q.r.map(&|c| C64(c.to_c64()));
    let n = bi.dim;
    let mut block_action: f64 = 0.0;
    for (a, block_a) in table.blocks.iter().enumerate() {
        for (b, block_b) in table.blocks.iter().enumerate() {
            let sign = if parities[a] & parities[b] == 1 { -1.0 } else { 1.0 };
            for x in 0..n as u32 {
                for y in 0..n as u32 {
                    let xy = Elt2::from_terms(n, vec![(x, y, C64::one())]);
                    let lhs = xy
                        .mul(&hc.bi, &r_new)
                        .pair_functionals(&block_a.character, &block_b.character);
                    let rhs = xy
                        .mul(&hc.bi, &r_old)
                        .pair_functionals(&block_a.character, &block_b.character);
                    let scaled = rhs.mul(&C64::new(sign, 0.0));
                    block_action = block_action.max(lhs.sub(&scaled).abs());
                }
            }
        }
    }

    let report = ParityTwistReport {
        quasi_report,
        triangular,
        new_u_trivial,
        block_action,
    };
    Ok((new_q, report))
}

/// An invertible element of kG (x) kG intended as a counital 2-cocycle.
#[derive(Clone, Debug)]
pub struct TwistData<S> {
    pub group: FiniteGroup,
    pub j: Elt2<S>,
    pub j_inv: Elt2<S>,
}

/// Residuals of the twist certification: J J^{-1} = 1, the cocycle
/// identity, and counitality on both legs.
#[derive(Clone, Debug)]
pub struct TwistReport {
    pub j_inverse: f64,
    pub cocycle: f64,
    pub counital: f64,
}

impl TwistReport {
    pub fn max_residual(&self) -> f64 {
        self.j_inverse.max(self.cocycle).max(self.counital)
    }
}

/// Verify the twist invariants of `t` over the group algebra of its group.
pub fn certify_twist<S: Scalar>(
    h: &HopfAlgebra<S>,
    t: &TwistData<S>,
    _cfg: &ToleranceConfig,
) -> Result<TwistReport> {
    let bi = &h.bi;
    if t.j.dim != bi.dim || t.j_inv.dim != bi.dim {
        return Err(Error::Shape("twist dimension mismatch".into()));
    }
    let one = Elt2::one_one(bi);
    let j_inverse = t
        .j
        .mul(bi, &t.j_inv)
        .diff_norm(&one)
        .max(t.j_inv.mul(bi, &t.j).diff_norm(&one));

    // (Delta0 (x) id)(J) J_12 = (id (x) Delta0)(J) J_23.
    let lhs = Elt3::comult_leg1(bi, &t.j).mul(bi, &Elt3::right_unit(bi, &t.j));
    let rhs = Elt3::comult_leg2(bi, &t.j).mul(bi, &Elt3::left_unit(bi, &t.j));
    let cocycle = lhs.diff_norm(&rhs);

    // (eps (x) id)(J) = 1 = (id (x) eps)(J).
    let left = t.j.contract_left(&bi.counit);
    let right = t.j.contract_right(&bi.counit);
    let counital = left
        .iter()
        .zip(&bi.unit)
        .chain(right.iter().zip(&bi.unit))
        .map(|(a, b)| a.sub(b).abs())
        .fold(0.0, f64::max);

    Ok(TwistReport {
        j_inverse,
        cocycle,
        counital,
    })
}

/// J = sum beta(g, h) e_g (x) e_h over the characters of an abelian group
/// with exponent-two coordinates, where beta(g, h) = (-1)^{g^T B h} on the
/// cyclic coordinates and {e_g} are the primitive idempotents of kG.
///
/// Restricting to exponent two keeps every entry rational.
pub fn bicharacter_twist(
    group: &FiniteGroup,
    exponents: &[Vec<u64>],
    cfg: &ToleranceConfig,
) -> Result<TwistData<Rat>> {
    let coords = group
        .cyclic
        .as_ref()
        .ok_or_else(|| Error::Invalid("bicharacter twists need a product-of-cyclic group".into()))?;
    let k = coords.moduli.len();
    if coords.moduli.iter().any(|&m| m != 2) {
        return Err(Error::Invalid(
            "rational bicharacter twists are limited to exponent-two groups".into(),
        ));
    }
    if exponents.len() != k || exponents.iter().any(|row| row.len() != k) {
        return Err(Error::Shape(format!("exponent matrix must be {k} x {k}")));
    }
    let n = group.order;
    let beta = |g: usize, h: usize| -> i64 {
        let (cg, ch) = (&coords.coords[g], &coords.coords[h]);
        let mut e = 0u64;
        for a in 0..k {
            for b in 0..k {
                e += cg[a] as u64 * exponents[a][b] * ch[b] as u64;
            }
        }
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    };
    // Bicharacter property in both slots.
    for g1 in 0..n {
        for g2 in 0..n {
            for h in 0..n {
                if beta(group.mul(g1, g2), h) != beta(g1, h) * beta(g2, h)
                    || beta(h, group.mul(g1, g2)) != beta(h, g1) * beta(h, g2)
                {
                    return Err(Error::Invalid("not a bicharacter".into()));
                }
            }
        }
    }
    // Characters chi_g(x) = (-1)^{g . x}; idempotents e_g = (1/n) sum chi_g(x) x.
    let chi = |g: usize, x: usize| -> i64 {
        let (cg, cx) = (&coords.coords[g], &coords.coords[x]);
        let dot: u64 = cg.iter().zip(cx).map(|(&a, &b)| a as u64 * b as u64).sum();
        if dot % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let nn = (n * n) as i64;
    let mut j = Elt2::zero(n);
    let mut j_inv = Elt2::zero(n);
    for x in 0..n {
        for y in 0..n {
            let mut acc = 0i64;
            for g in 0..n {
                for h in 0..n {
                    acc += beta(g, h) * chi(g, x) * chi(h, y);
                }
            }
            // beta is +-1-valued, so J^{-1} has coefficient beta^{-1} = beta
            // on e_g (x) e_h: identical expansion.
            j.insert_add(x as u32, y as u32, Rat::new(acc, nn));
            j_inv.insert_add(x as u32, y as u32, Rat::new(acc, nn));
        }
    }
    let t = TwistData {
        group: group.clone(),
        j,
        j_inv,
    };
    let h = group_algebra::<Rat>(group)?;
    let report = certify_twist(&h, &t, cfg)?;
    if report.max_residual() > cfg.residual_tol {
        return Err(Error::AxiomFailure {
            name: "cocycle".into(),
            residual: report.max_residual(),
        });
    }
    Ok(t)
}

/// The twisted group algebra and its triangular structure, with all
/// residuals gathered during the build.
#[derive(Clone, Debug)]
pub struct TwistedAlgebra<S> {
    pub quasi: QuasiStructure<S>,
    pub hopf_report: HopfReport,
    pub quasi_report: HopfReport,
    /// Stored comultiplication against the freshly conjugated one.
    pub gauge: f64,
    pub triangular: f64,
    pub u_trivial: f64,
}

impl<S: Scalar> TwistedAlgebra<S> {
    pub fn max_residual(&self) -> f64 {
        self.hopf_report
            .max_residual()
            .max(self.quasi_report.max_residual())
            .max(self.gauge)
            .max(self.triangular)
            .max(self.u_trivial)
    }
}

/// Twist the group algebra by a certified J: same multiplication,
/// comultiplication conjugated by J, antipode recovered by linear solve,
/// R-matrix (J^{21})^{-1} J.
pub fn twist_group_algebra<S: Scalar>(
    t: &TwistData<S>,
    cfg: &ToleranceConfig,
) -> Result<(Arc<HopfAlgebra<S>>, TwistedAlgebra<S>)> {
    let base = group_algebra::<S>(&t.group)?;
    let report = certify_twist(&base, t, cfg)?;
    if report.max_residual() > cfg.residual_tol {
        return Err(Error::AxiomFailure {
            name: "cocycle".into(),
            residual: report.max_residual(),
        });
    }
    let bi = &base.bi;
    let n = bi.dim;

    // Delta_J(x) = J^{-1} Delta_0(x) J.
    let mut comult_triplets: Vec<(u32, u32, u32, S)> = Vec::new();
    for i in 0..n as u32 {
        let d0 = bi.comult_vec(&bi.basis_vec(i as usize));
        let conj = t.j_inv.mul(bi, &d0).mul(bi, &t.j);
        for (a, b, c) in conj.terms() {
            comult_triplets.push((i, a, b, c.clone()));
        }
    }
    let twisted_bi = Bialgebra {
        dim: n,
        labels: bi.labels.clone(),
        mult: bi.mult.clone(),
        unit: bi.unit.clone(),
        comult: ComultTable::from_triplets(n, comult_triplets),
        counit: bi.counit.clone(),
    };
    let bi_report = validate_bialgebra(&twisted_bi)?;
    if !bi_report.passes(cfg) {
        let worst = bi_report.worst().unwrap();
        return Err(Error::AxiomFailure {
            name: format!("twisted {}", worst.name),
            residual: worst.residual,
        });
    }
    let antipode = solve_antipode(&twisted_bi, cfg)?;
    let twisted = Arc::new(HopfAlgebra {
        bi: twisted_bi,
        antipode,
    });
    let hopf_report = validate_hopf(&twisted)?;
    if !hopf_report.passes(cfg) {
        let worst = hopf_report.worst().unwrap();
        return Err(Error::AxiomFailure {
            name: format!("twisted {}", worst.name),
            residual: worst.residual,
        });
    }

    // R_J = (J^{21})^{-1} J = (J^{-1})^{21} J.
    let r = t.j_inv.swap().mul(&twisted.bi, &t.j);
    let (quasi, quasi_report) = quasitriangular(Arc::clone(&twisted), r, cfg)?;
    if !quasi_report.passes(cfg) {
        let worst = quasi_report.worst().unwrap();
        return Err(Error::AxiomFailure {
            name: format!("twisted {}", worst.name),
            residual: worst.residual,
        });
    }

    // Gauge law re-derived from the stored tensors.
    let mut gauge: f64 = 0.0;
    for i in 0..n {
        let stored = twisted.bi.comult_vec(&twisted.bi.basis_vec(i));
        let d0 = bi.comult_vec(&bi.basis_vec(i));
        let conj = t.j_inv.mul(bi, &d0).mul(bi, &t.j);
        gauge = gauge.max(stored.diff_norm(&conj));
    }
    let (_, triangular) = is_triangular(&quasi, cfg);
    let u_trivial = quasi
        .u
        .iter()
        .zip(&twisted.bi.unit)
        .map(|(a, b)| a.sub(b).abs())
        .fold(0.0, f64::max);

    let data = TwistedAlgebra {
        quasi: quasi.clone(),
        hopf_report,
        quasi_report,
        gauge,
        triangular,
        u_trivial,
    };
    Ok((twisted, data))
}

/// The nontrivial triangular structure on the group algebra of the
/// two-element group: R = a(x)a + b(x)a + a(x)b - b(x)b on the primitive
/// idempotents a = (1+g)/2, b = (1-g)/2, expanded in the group basis.
pub fn z2_triangular_example(cfg: &ToleranceConfig) -> Result<(QuasiStructure<Rat>, HopfReport)> {
    let g = make_group(&GroupSpec::Cyclic(2))?;
    let h = Arc::new(group_algebra::<Rat>(&g)?);
    let half = Rat::new(1, 2);
    let r = Elt2::from_terms(
        2,
        vec![
            (0u32, 0u32, half.clone()),
            (0, 1, half.clone()),
            (1, 0, half.clone()),
            (1, 1, half.neg()),
        ],
    );
    quasitriangular(h, r, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::build_double;
    use crate::modular::check_frobenius_type;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn klein() -> FiniteGroup {
        make_group(&GroupSpec::Product(
            Box::new(GroupSpec::Cyclic(2)),
            Box::new(GroupSpec::Cyclic(2)),
        ))
        .unwrap()
    }

    #[test]
    fn triangularity_detection() {
        // (kG, 1 (x) 1) is triangular.
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let one = Elt2::one_one(&h.bi);
        let (q, _) = quasitriangular(h, one, &cfg()).unwrap();
        let (tri, res) = is_triangular(&q, &cfg());
        assert!(tri);
        assert_eq!(res, 0.0);

        // The kZ2 example is triangular.
        let (q2, rep) = z2_triangular_example(&cfg()).unwrap();
        assert_eq!(rep.max_residual(), 0.0);
        assert!(is_triangular(&q2, &cfg()).0);

        // The double of kZ2 is not.
        let g2 = make_group(&GroupSpec::Cyclic(2)).unwrap();
        let h2 = Arc::new(group_algebra::<Rat>(&g2).unwrap());
        let dd = build_double(&h2, &cfg()).unwrap();
        let (tri, res) = is_triangular(&dd.quasi, &cfg());
        assert!(!tri);
        assert!(res > 0.5);
    }

    #[test]
    fn u_involution_on_the_z2_example() {
        let (q, _) = z2_triangular_example(&cfg()).unwrap();
        assert_eq!(q.u, vec![Rat::zero(), Rat::one()]);
        let rep = check_u_involution(&q, &cfg()).unwrap();
        assert_eq!(rep.u_squared, 0.0);
        assert_eq!(rep.antipode_fixes_r, 0.0);
        assert_eq!(rep.grouplike, 0.0);
        assert!(rep.block_trace_match < 1e-9);
    }

    #[test]
    fn parity_vector_of_the_z2_example() {
        let (q, _) = z2_triangular_example(&cfg()).unwrap();
        let table = wedderburn(&to_complex_generic(&q.hopf), &cfg()).unwrap();
        let parities = parity_vector(&q, &table, &cfg()).unwrap();
        // u = g is +1 on the trivial block, -1 on the sign block.
        let mut sorted = parities.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1]);
        assert_eq!(parities[table.unit_block], 0);
    }

    #[test]
    fn parity_twist_trivializes_the_drinfeld_element() {
        let (q, _) = z2_triangular_example(&cfg()).unwrap();
        let (new_q, rep) = parity_twist(&q, &cfg()).unwrap();
        // Everything computed rationally is exact; the blockwise sign law
        // runs through floating characters and only rounds.
        assert_eq!(rep.quasi_report.max_residual(), 0.0);
        assert_eq!(rep.triangular, 0.0);
        assert_eq!(rep.new_u_trivial, 0.0);
        assert!(rep.block_action < 1e-12);
        assert_eq!(new_q.u, q.hopf.bi.unit);
        // For this example the corrected R collapses to 1 (x) 1.
        let one = Elt2::one_one(&q.hopf.bi);
        assert_eq!(new_q.r.diff_norm(&one), 0.0);
    }

    #[test]
    fn parity_twist_fixes_trivial_u_and_is_stable() {
        // u = 1 leaves R unchanged.
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let one = Elt2::one_one(&h.bi);
        let (q, _) = quasitriangular(h, one, &cfg()).unwrap();
        let (new_q, rep) = parity_twist(&q, &cfg()).unwrap();
        assert!(rep.max_residual() < 1e-12);
        assert_eq!(new_q.r.diff_norm(&q.r), 0.0);

        // Applying the correction twice is the same as applying it once.
        let (q2, _) = z2_triangular_example(&cfg()).unwrap();
        let (t1, _) = parity_twist(&q2, &cfg()).unwrap();
        let (t2, _) = parity_twist(&t1, &cfg()).unwrap();
        assert_eq!(t2.r.diff_norm(&t1.r), 0.0);
    }

    #[test]
    fn trivial_bicharacter_gives_trivial_twist() {
        let g = klein();
        let t = bicharacter_twist(&g, &[vec![0, 0], vec![0, 0]], &cfg()).unwrap();
        let h = group_algebra::<Rat>(&g).unwrap();
        let one = Elt2::one_one(&h.bi);
        assert_eq!(t.j.diff_norm(&one), 0.0);
    }

    #[test]
    fn klein_bicharacter_twist_certifies_and_twists() {
        let g = klein();
        // beta((a1,a2),(b1,b2)) = (-1)^{a1 b2}
        let t = bicharacter_twist(&g, &[vec![0, 1], vec![0, 0]], &cfg()).unwrap();
        let h = group_algebra::<Rat>(&g).unwrap();
        let report = certify_twist(&h, &t, &cfg()).unwrap();
        assert_eq!(report.max_residual(), 0.0, "{report:?}");
        // The twist is nontrivial.
        let one = Elt2::one_one(&h.bi);
        assert!(t.j.diff_norm(&one) > 0.4);

        let (twisted, data) = twist_group_algebra(&t, &cfg()).unwrap();
        assert_eq!(data.max_residual(), 0.0, "{data:?}");
        // Triangular with trivial Drinfeld element, Frobenius type holds.
        assert_eq!(data.triangular, 0.0);
        assert_eq!(data.u_trivial, 0.0);
        let frob = check_frobenius_type(&data.quasi, &cfg()).unwrap();
        assert!(frob.all_divide);
        assert_eq!(frob.dims, vec![1, 1, 1, 1]);
        // The algebra structure is untouched.
        assert_eq!(twisted.bi.mult, h.bi.mult);
    }

    #[test]
    fn z2_bicharacter_reproduces_the_parity_corrected_example() {
        let g = make_group(&GroupSpec::Cyclic(2)).unwrap();
        let t = bicharacter_twist(&g, &[vec![1]], &cfg()).unwrap();
        let (_, data) = twist_group_algebra(&t, &cfg()).unwrap();
        assert_eq!(data.max_residual(), 0.0);
        // beta is symmetric on Z2, so R_J collapses to 1 (x) 1, matching the
        // parity twist of the hand-built example.
        let (q, _) = z2_triangular_example(&cfg()).unwrap();
        let (corrected, _) = parity_twist(&q, &cfg()).unwrap();
        assert_eq!(data.quasi.r.diff_norm(&corrected.r), 0.0);
    }

    #[test]
    fn rescaled_twist_fails_counitality() {
        let g = klein();
        let t = bicharacter_twist(&g, &[vec![0, 1], vec![0, 0]], &cfg()).unwrap();
        let two = Rat::from_int(2);
        let bad = TwistData {
            group: t.group.clone(),
            j: t.j.scale(&two),
            j_inv: t.j_inv.scale(&Rat::new(1, 2)),
        };
        let h = group_algebra::<Rat>(&g).unwrap();
        let report = certify_twist(&h, &bad, &cfg()).unwrap();
        assert_eq!(report.j_inverse, 0.0);
        assert!(report.counital > 0.5);
    }

    #[test]
    fn dihedral_group_rejects_bicharacter_twists() {
        let g = make_group(&GroupSpec::Dihedral(4)).unwrap();
        assert!(bicharacter_twist(&g, &[vec![0]], &cfg()).is_err());
    }
}
