//! JSON interchange for every artifact: Hopf algebras as sparse triplet
//! lists (rationals as "p/q" strings, floats as [re, im] pairs), groups as
//! Cayley tables, twists, irreducible-block tables and modular data, plus
//! CSV renderings of the S-matrix and fusion tables.

use std::str::FromStr;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::hopf::{Bialgebra, ComultTable, Elt2, HopfAlgebra, MultTable};
use crate::mat::Matrix;
use crate::modular::ModularData;
use crate::rep::{FusionTensor, IrrepTable};
use crate::scalar::{C64, Rat, Scalar};

/// A scalar in a JSON file: "p/q" for exact rationals, [re, im] for floats.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Rational(String),
    Complex([f64; 2]),
}

impl ScalarJson {
    pub fn from_rat(r: &Rat) -> Self {
        ScalarJson::Rational(r.to_string())
    }

    pub fn from_c64(c: &C64) -> Self {
        ScalarJson::Complex([c.re(), c.im()])
    }

    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            ScalarJson::Rational(s) => parse_rational(s),
            ScalarJson::Complex(_) => Err(Error::Parse(
                "expected a rational scalar, found a float pair".into(),
            )),
        }
    }

    pub fn to_c64(&self) -> Result<C64> {
        match self {
            ScalarJson::Rational(s) => Ok(C64(parse_rational(s)?.to_c64())),
            ScalarJson::Complex([re, im]) => {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::Parse("non-finite float scalar".into()));
                }
                Ok(C64::new(*re, *im))
            }
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(num).map_err(|e| Error::Parse(format!("bad numerator `{num}`: {e}")))?;
    let d = BigInt::from_str(den).map_err(|e| Error::Parse(format!("bad denominator `{den}`: {e}")))?;
    if d == BigInt::from(0) {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rat::from_big_rational(BigRational::new(n, d)))
}

// ---------------------------------------------------------------------------
// Hopf algebras
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorsJson {
    pub dual_dim: usize,
    pub alg_dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub scalar_mode: String,
    pub mult: Vec<(u32, u32, u32, ScalarJson)>,
    pub comult: Vec<(u32, u32, u32, ScalarJson)>,
    pub unit: Vec<ScalarJson>,
    pub counit: Vec<ScalarJson>,
    pub antipode: Vec<(u32, u32, ScalarJson)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_matrix: Option<Vec<(u32, u32, ScalarJson)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<FactorsJson>,
}

/// A parsed Hopf algebra in whichever backend the file requested, with its
/// R-matrix when one is present.
#[derive(Clone, Debug)]
pub enum HopfObject {
    Rational {
        hopf: Arc<HopfAlgebra<Rat>>,
        r: Option<Elt2<Rat>>,
    },
    Complex {
        hopf: Arc<HopfAlgebra<C64>>,
        r: Option<Elt2<C64>>,
    },
}

impl HopfObject {
    pub fn dim(&self) -> usize {
        match self {
            HopfObject::Rational { hopf, .. } => hopf.bi.dim,
            HopfObject::Complex { hopf, .. } => hopf.bi.dim,
        }
    }

    pub fn has_r(&self) -> bool {
        match self {
            HopfObject::Rational { r, .. } => r.is_some(),
            HopfObject::Complex { r, .. } => r.is_some(),
        }
    }
}

fn hopf_to_json_generic<S: Scalar>(
    h: &HopfAlgebra<S>,
    r: Option<&Elt2<S>>,
    factors: Option<FactorsJson>,
    mode: &str,
    enc: impl Fn(&S) -> ScalarJson,
) -> HopfJson {
    let bi = &h.bi;
    let mut antipode = Vec::new();
    for i in 0..bi.dim {
        for j in 0..bi.dim {
            let v = h.antipode.at(i, j);
            if !v.is_zero() {
                antipode.push((i as u32, j as u32, enc(v)));
            }
        }
    }
    HopfJson {
        dim: bi.dim,
        labels: bi.labels.clone(),
        scalar_mode: mode.to_string(),
        mult: bi.mult.iter().map(|(i, j, k, c)| (i, j, k, enc(c))).collect(),
        comult: bi.comult.iter().map(|(i, j, k, c)| (i, j, k, enc(c))).collect(),
        unit: bi.unit.iter().map(&enc).collect(),
        counit: bi.counit.iter().map(&enc).collect(),
        antipode,
        r_matrix: r.map(|r| r.terms().map(|(i, j, c)| (i, j, enc(c))).collect()),
        factors,
    }
}

pub fn hopf_to_json(obj: &HopfObject, factors: Option<FactorsJson>) -> HopfJson {
    match obj {
        HopfObject::Rational { hopf, r } => {
            hopf_to_json_generic(hopf, r.as_ref(), factors, "rational", ScalarJson::from_rat)
        }
        HopfObject::Complex { hopf, r } => {
            hopf_to_json_generic(hopf, r.as_ref(), factors, "complex", ScalarJson::from_c64)
        }
    }
}

fn build_hopf<S: Scalar>(
    json: &HopfJson,
    dec: impl Fn(&ScalarJson) -> Result<S>,
) -> Result<(Arc<HopfAlgebra<S>>, Option<Elt2<S>>)> {
    let n = json.dim;
    if n == 0 {
        return Err(Error::Parse("dim must be positive".into()));
    }
    if json.labels.len() != n || json.unit.len() != n || json.counit.len() != n {
        return Err(Error::Parse("labels/unit/counit length must equal dim".into()));
    }
    let check_idx = |idx: u32, what: &str| -> Result<()> {
        if idx as usize >= n {
            Err(Error::Parse(format!("{what} index {idx} out of range 0..{n}")))
        } else {
            Ok(())
        }
    };
    let mut mult = Vec::with_capacity(json.mult.len());
    for (i, j, k, c) in &json.mult {
        check_idx(*i, "mult")?;
        check_idx(*j, "mult")?;
        check_idx(*k, "mult")?;
        mult.push((*i, *j, *k, dec(c)?));
    }
    let mut comult = Vec::with_capacity(json.comult.len());
    for (i, j, k, c) in &json.comult {
        check_idx(*i, "comult")?;
        check_idx(*j, "comult")?;
        check_idx(*k, "comult")?;
        comult.push((*i, *j, *k, dec(c)?));
    }
    let mut antipode: Matrix<S> = Matrix::zero(n, n);
    for (i, j, c) in &json.antipode {
        check_idx(*i, "antipode")?;
        check_idx(*j, "antipode")?;
        *antipode.at_mut(*i as usize, *j as usize) = dec(c)?;
    }
    let unit = json.unit.iter().map(&dec).collect::<Result<Vec<_>>>()?;
    let counit = json.counit.iter().map(&dec).collect::<Result<Vec<_>>>()?;
    let hopf = Arc::new(HopfAlgebra {
        bi: Bialgebra {
            dim: n,
            labels: json.labels.clone(),
            mult: MultTable::from_triplets(n, mult),
            unit,
            comult: ComultTable::from_triplets(n, comult),
            counit,
        },
        antipode,
    });
    let r = match &json.r_matrix {
        Some(terms) => {
            let mut r = Elt2::zero(n);
            for (i, j, c) in terms {
                check_idx(*i, "r_matrix")?;
                check_idx(*j, "r_matrix")?;
                r.insert_add(*i, *j, dec(c)?);
            }
            Some(r)
        }
        None => None,
    };
    Ok((hopf, r))
}

pub fn hopf_from_json(json: &HopfJson) -> Result<HopfObject> {
    match json.scalar_mode.as_str() {
        "rational" => {
            let (hopf, r) = build_hopf(json, ScalarJson::to_rat)?;
            Ok(HopfObject::Rational { hopf, r })
        }
        "complex" => {
            let (hopf, r) = build_hopf(json, ScalarJson::to_c64)?;
            Ok(HopfObject::Complex { hopf, r })
        }
        other => Err(Error::Parse(format!(
            "scalar_mode must be \"rational\" or \"complex\", got \"{other}\""
        ))),
    }
}

// ---------------------------------------------------------------------------
// Groups and twists
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

pub fn group_to_json(g: &FiniteGroup) -> GroupJson {
    GroupJson {
        order: g.order,
        cayley: g.cayley.clone(),
        labels: g.labels.clone(),
    }
}

pub fn group_from_json(json: &GroupJson) -> Result<FiniteGroup> {
    crate::groups::from_cayley(json.order, json.cayley.clone(), json.labels.clone())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistJson {
    pub group: GroupJson,
    pub j: Vec<(u32, u32, ScalarJson)>,
}

pub fn twist_to_json(t: &crate::triangular::TwistData<Rat>) -> TwistJson {
    TwistJson {
        group: group_to_json(&t.group),
        j: t
            .j
            .terms()
            .map(|(i, j, c)| (i, j, ScalarJson::from_rat(c)))
            .collect(),
    }
}

/// Parse a twist file; the inverse of J is recovered by minimal-polynomial
/// inversion in kG (x) kG and certified by the caller.
pub fn twist_from_json(
    json: &TwistJson,
    cfg: &crate::scalar::ToleranceConfig,
) -> Result<crate::triangular::TwistData<Rat>> {
    let group = group_from_json(&json.group)?;
    let n = group.order;
    let mut j = Elt2::zero(n);
    for (a, b, c) in &json.j {
        if *a as usize >= n || *b as usize >= n {
            return Err(Error::Parse("twist index out of range".into()));
        }
        j.insert_add(*a, *b, c.to_rat()?);
    }
    let h = crate::hopf::group_algebra::<Rat>(&group)?;
    let j_inv = crate::hopf::invert_elt2(&h.bi, &j, cfg)?;
    Ok(crate::triangular::TwistData { group, j, j_inv })
}

// ---------------------------------------------------------------------------
// Irreducible blocks and modular data
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepTableJson {
    pub dims: Vec<usize>,
    /// Row per block, complex pairs over the algebra basis.
    pub characters: Vec<Vec<[f64; 2]>>,
    pub dual_involution: Vec<usize>,
    pub unit_block: usize,
    /// Sparse idempotents: per block, (basis index, complex pair).
    pub idempotents: Vec<Vec<(u32, [f64; 2])>>,
}

pub fn irrep_table_to_json(t: &IrrepTable) -> IrrepTableJson {
    IrrepTableJson {
        dims: t.dims(),
        characters: t
            .blocks
            .iter()
            .map(|b| b.character.iter().map(|c| [c.re(), c.im()]).collect())
            .collect(),
        dual_involution: t.dual_involution.clone(),
        unit_block: t.unit_block,
        idempotents: t
            .blocks
            .iter()
            .map(|b| {
                b.idempotent
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.abs() > 1e-14)
                    .map(|(i, c)| (i as u32, [c.re(), c.im()]))
                    .collect()
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub residual: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModularJson {
    pub dims: Vec<i64>,
    pub s: Vec<Vec<[f64; 2]>>,
    pub fusion_bruteforce: Vec<Vec<Vec<i64>>>,
    pub fusion_verlinde: Vec<Vec<Vec<[f64; 2]>>>,
    pub checks: Vec<CheckJson>,
}

pub fn modular_to_json(md: &ModularData, tol: f64) -> ModularJson {
    let m = md.blocks();
    ModularJson {
        dims: md.dims.clone(),
        s: (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let v = md.s.at(i, j);
                        [v.re(), v.im()]
                    })
                    .collect()
            })
            .collect(),
        fusion_bruteforce: (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|l| md.fusion_bf.at(i, j, l)).collect())
                    .collect()
            })
            .collect(),
        fusion_verlinde: (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        (0..m)
                            .map(|l| {
                                let v = md.fusion_verlinde.at(&[i, j, l]);
                                [v.re(), v.im()]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect(),
        checks: md
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.to_string(),
                status: if c.residual <= tol { "pass" } else { "fail" }.to_string(),
                residual: c.residual,
                detail: String::new(),
            })
            .collect(),
    }
}

/// S-matrix as CSV, one row per block, complex entries as "re+imi".
pub fn s_matrix_csv(md: &ModularData) -> String {
    let m = md.blocks();
    let mut out = String::new();
    for i in 0..m {
        let row: Vec<String> = (0..m)
            .map(|j| {
                let v = md.s.at(i, j);
                if v.im().abs() < 1e-12 {
                    format!("{:.9}", v.re())
                } else {
                    format!("{:.9}{:+.9}i", v.re(), v.im())
                }
            })
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Fusion tensor as CSV in long format: i,j,l,N.
pub fn fusion_csv(f: &FusionTensor) -> String {
    let mut out = String::from("i,j,l,multiplicity\n");
    for i in 0..f.m {
        for j in 0..f.m {
            for l in 0..f.m {
                let v = f.at(i, j, l);
                if v != 0 {
                    out.push_str(&format!("{i},{j},{l},{v}\n"));
                }
            }
        }
    }
    out
}

/// Hex SHA-256 of raw input bytes, for report provenance.
pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::build_double;
    use crate::groups::{make_group, GroupSpec};
    use crate::hopf::{group_algebra, validate_hopf};
    use crate::scalar::ToleranceConfig;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn scalar_json_roundtrip() {
        let r = Rat::new(-3, 7);
        let j = ScalarJson::from_rat(&r);
        assert_eq!(j.to_rat().unwrap(), r);
        let c = C64::new(1.5, -0.25);
        let j = ScalarJson::from_c64(&c);
        assert_eq!(j.to_c64().unwrap(), c);
        assert!(parse_rational("5").unwrap() == Rat::from_int(5));
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn hopf_json_roundtrip_preserves_structure() {
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let obj = HopfObject::Rational {
            hopf: Arc::clone(&h),
            r: Some(Elt2::one_one(&h.bi)),
        };
        let json = hopf_to_json(&obj, None);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: HopfJson = serde_json::from_str(&text).unwrap();
        match hopf_from_json(&parsed).unwrap() {
            HopfObject::Rational { hopf, r } => {
                assert_eq!(hopf.bi.mult, h.bi.mult);
                assert_eq!(hopf.bi.comult, h.bi.comult);
                assert_eq!(hopf.antipode, h.antipode);
                assert_eq!(r.unwrap().diff_norm(&Elt2::one_one(&h.bi)), 0.0);
                assert_eq!(validate_hopf(&hopf).unwrap().max_residual(), 0.0);
            }
            _ => panic!("wrong mode"),
        }
    }

    #[test]
    fn double_json_roundtrip_keeps_r_matrix() {
        let g = make_group(&GroupSpec::Cyclic(2)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let dd = build_double(&h, &cfg()).unwrap();
        let obj = HopfObject::Rational {
            hopf: Arc::clone(dd.double()),
            r: Some(dd.quasi.r.clone()),
        };
        let json = hopf_to_json(
            &obj,
            Some(FactorsJson {
                dual_dim: 2,
                alg_dim: 2,
            }),
        );
        let text = serde_json::to_string_pretty(&json).unwrap();
        let parsed: HopfJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.factors.as_ref().unwrap().dual_dim, 2);
        match hopf_from_json(&parsed).unwrap() {
            HopfObject::Rational { hopf, r } => {
                let (q, report) =
                    crate::double::quasitriangular(hopf, r.unwrap(), &cfg()).unwrap();
                assert_eq!(report.max_residual(), 0.0);
                assert_eq!(q.u, dd.quasi.u);
            }
            _ => panic!("wrong mode"),
        }
    }

    #[test]
    fn group_json_roundtrip_and_validation() {
        let g = make_group(&GroupSpec::Quaternion8).unwrap();
        let json = group_to_json(&g);
        let back = group_from_json(&json).unwrap();
        assert_eq!(back.cayley, g.cayley);
        assert_eq!(back.identity, g.identity);
        // A broken table is rejected.
        let mut bad = group_to_json(&g);
        bad.cayley[0][0] = 3;
        assert!(group_from_json(&bad).is_err());
    }

    #[test]
    fn twist_json_roundtrip_recovers_inverse() {
        let g = make_group(&GroupSpec::Product(
            Box::new(GroupSpec::Cyclic(2)),
            Box::new(GroupSpec::Cyclic(2)),
        ))
        .unwrap();
        let t = crate::triangular::bicharacter_twist(&g, &[vec![0, 1], vec![0, 0]], &cfg()).unwrap();
        let json = twist_to_json(&t);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: TwistJson = serde_json::from_str(&text).unwrap();
        let back = twist_from_json(&parsed, &cfg()).unwrap();
        assert_eq!(back.j.diff_norm(&t.j), 0.0);
        assert_eq!(back.j_inv.diff_norm(&t.j_inv), 0.0);
    }

    #[test]
    fn csv_outputs_have_expected_shape() {
        let g = make_group(&GroupSpec::Cyclic(2)).unwrap();
        let h = Arc::new(group_algebra::<Rat>(&g).unwrap());
        let dd = build_double(&h, &cfg()).unwrap();
        let table = crate::rep::wedderburn(&crate::hopf::to_complex(dd.double()), &cfg()).unwrap();
        let md = crate::modular::s_matrix(&dd.quasi, &table, &cfg()).unwrap();
        let csv = s_matrix_csv(&md);
        assert_eq!(csv.lines().count(), 4);
        let fcsv = fusion_csv(&md.fusion_bf);
        // Header plus 16 nonzero entries of the Klein group law.
        assert_eq!(fcsv.lines().count(), 17);
    }

    #[test]
    fn sha256_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
