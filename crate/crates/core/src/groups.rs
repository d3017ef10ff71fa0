//! Finite groups as explicit Cayley tables: constructors for the built-in
//! families, conjugacy classes, centralizers, and the independent dimension
//! oracle for doubles of group algebras.

use crate::error::{Error, Result};
use crate::scalar::ToleranceConfig;

/// Desk-scale bound: everything downstream stays dense-friendly.
pub const MAX_ORDER: usize = 64;

/// Cyclic-coordinate view of a group built as a product of cyclic factors;
/// used by bicharacter twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicStructure {
    pub moduli: Vec<usize>,
    /// coords[g] = coordinate tuple of element g, one entry per factor.
    pub coords: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub labels: Vec<String>,
    pub cyclic: Option<CyclicStructure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion8,
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Product(a, b) => a.order() * b.order(),
        }
    }
}

/// Short names used by the CLI and the verification suites.
pub fn parse_group_name(name: &str) -> Result<GroupSpec> {
    if let Some((a, b)) = name.split_once('x') {
        return Ok(GroupSpec::Product(
            Box::new(parse_group_name(a)?),
            Box::new(parse_group_name(b)?),
        ));
    }
    let spec = match name {
        "Q8" => GroupSpec::Quaternion8,
        _ if name.starts_with('C') => GroupSpec::Cyclic(
            name[1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad group name `{name}`")))?,
        ),
        _ if name.starts_with('D') => GroupSpec::Dihedral(
            name[1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad group name `{name}`")))?,
        ),
        _ if name.starts_with('S') => GroupSpec::Symmetric(
            name[1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad group name `{name}`")))?,
        ),
        _ => return Err(Error::Parse(format!("unknown group name `{name}`"))),
    };
    Ok(spec)
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn perm_label(p: &[usize]) -> String {
    // Cycle notation on points 1..n.
    let n = p.len();
    let mut seen = vec![false; n];
    let mut s = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        s.push('(');
        let mut x = start;
        loop {
            seen[x] = true;
            s.push_str(&(x + 1).to_string());
            x = p[x];
            if x == start {
                break;
            }
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push('e');
    }
    s
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let order = spec.order();
    if order == 0 {
        return Err(Error::Invalid("group of order zero".into()));
    }
    if order > MAX_ORDER {
        return Err(Error::OrderBound(order));
    }
    let g = match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n;
            let cayley = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
            let labels = (0..n)
                .map(|i| match i {
                    0 => "e".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{i}"),
                })
                .collect();
            FiniteGroup {
                order: n,
                cayley,
                identity: 0,
                inverse: (0..n).map(|i| (n - i) % n).collect(),
                labels,
                cyclic: Some(CyclicStructure {
                    moduli: vec![n],
                    coords: (0..n).map(|i| vec![i]).collect(),
                }),
            }
        }
        GroupSpec::Dihedral(n) => {
            let n = *n;
            if n < 1 {
                return Err(Error::Invalid("dihedral parameter must be positive".into()));
            }
            // Element 2i+j is r^i s^j with s r s = r^-1.
            let idx = |i: usize, j: usize| 2 * i + j;
            let mut cayley = vec![vec![0; 2 * n]; 2 * n];
            for i in 0..n {
                for j in 0..2 {
                    for k in 0..n {
                        for l in 0..2 {
                            // (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j+l)
                            let rot = if j == 0 { (i + k) % n } else { (i + n - k % n) % n };
                            cayley[idx(i, j)][idx(k, l)] = idx(rot, (j + l) % 2);
                        }
                    }
                }
            }
            let labels = (0..2 * n)
                .map(|e| {
                    let (i, j) = (e / 2, e % 2);
                    if j == 0 {
                        if i == 0 { "e".to_string() } else { format!("r^{i}") }
                    } else if i == 0 {
                        "s".to_string()
                    } else {
                        format!("r^{i}s")
                    }
                })
                .collect();
            finish_table(2 * n, cayley, labels)?
        }
        GroupSpec::Symmetric(n) => {
            let n = *n;
            if n > 4 {
                return Err(Error::Invalid(
                    "symmetric groups are supported up to S4".into(),
                ));
            }
            let elements = perms(n);
            let pos = |p: &[usize]| elements.iter().position(|q| q == p).unwrap();
            let m = elements.len();
            let mut cayley = vec![vec![0; m]; m];
            for (a, p) in elements.iter().enumerate() {
                for (b, q) in elements.iter().enumerate() {
                    // (p q)(x) = p(q(x))
                    let comp: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                    cayley[a][b] = pos(&comp);
                }
            }
            let labels = elements.iter().map(|p| perm_label(p)).collect();
            finish_table(m, cayley, labels)?
        }
        GroupSpec::Quaternion8 => {
            // 0..7 = 1, -1, i, -i, j, -j, k, -k
            let labels: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            // Encode q = (sign, axis) with axis 0=1, 1=i, 2=j, 3=k.
            let dec = |e: usize| (e % 2 == 1, e / 2);
            let enc = |neg: bool, axis: usize| 2 * axis + usize::from(neg);
            let mut cayley = vec![vec![0; 8]; 8];
            for a in 0..8 {
                for b in 0..8 {
                    let (na, xa) = dec(a);
                    let (nb, xb) = dec(b);
                    // Multiplication of unit quaternions by axis table.
                    let (mut neg, axis) = match (xa, xb) {
                        (0, y) => (false, y),
                        (x, 0) => (false, x),
                        (x, y) if x == y => (true, 0),
                        (1, 2) => (false, 3),
                        (2, 1) => (true, 3),
                        (2, 3) => (false, 1),
                        (3, 2) => (true, 1),
                        (3, 1) => (false, 2),
                        (1, 3) => (true, 2),
                        _ => unreachable!(),
                    };
                    neg ^= na ^ nb;
                    cayley[a][b] = enc(neg, axis);
                }
            }
            finish_table(8, cayley, labels)?
        }
        GroupSpec::Product(sa, sb) => {
            let ga = make_group(sa)?;
            let gb = make_group(sb)?;
            let m = ga.order * gb.order;
            if m > MAX_ORDER {
                return Err(Error::OrderBound(m));
            }
            let idx = |a: usize, b: usize| a * gb.order + b;
            let mut cayley = vec![vec![0; m]; m];
            for a1 in 0..ga.order {
                for b1 in 0..gb.order {
                    for a2 in 0..ga.order {
                        for b2 in 0..gb.order {
                            cayley[idx(a1, b1)][idx(a2, b2)] =
                                idx(ga.cayley[a1][a2], gb.cayley[b1][b2]);
                        }
                    }
                }
            }
            let labels = (0..m)
                .map(|e| {
                    format!(
                        "({},{})",
                        ga.labels[e / gb.order],
                        gb.labels[e % gb.order]
                    )
                })
                .collect();
            let cyclic = match (&ga.cyclic, &gb.cyclic) {
                (Some(ca), Some(cb)) => Some(CyclicStructure {
                    moduli: ca
                        .moduli
                        .iter()
                        .chain(&cb.moduli)
                        .copied()
                        .collect(),
                    coords: (0..m)
                        .map(|e| {
                            let mut v = ca.coords[e / gb.order].clone();
                            v.extend(&cb.coords[e % gb.order]);
                            v
                        })
                        .collect(),
                }),
                _ => None,
            };
            let mut g = finish_table(m, cayley, labels)?;
            g.cyclic = cyclic;
            g
        }
    };
    g.validate()?;
    Ok(g)
}

/// Build a group from a raw Cayley table, recovering identity and inverses
/// and validating the axioms. Used by the JSON interchange.
pub fn from_cayley(order: usize, cayley: Vec<Vec<usize>>, labels: Vec<String>) -> Result<FiniteGroup> {
    if order > MAX_ORDER {
        return Err(Error::OrderBound(order));
    }
    let g = finish_table(order, cayley, labels)?;
    g.validate()?;
    Ok(g)
}

fn finish_table(order: usize, cayley: Vec<Vec<usize>>, labels: Vec<String>) -> Result<FiniteGroup> {
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| cayley[e][x] == x && cayley[x][e] == x))
        .ok_or_else(|| Error::Invalid("table has no identity".into()))?;
    let inverse = (0..order)
        .map(|g| {
            (0..order)
                .find(|&h| cayley[g][h] == identity)
                .ok_or_else(|| Error::Invalid(format!("element {g} has no inverse")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteGroup {
        order,
        cayley,
        identity,
        inverse,
        labels,
        cyclic: None,
    })
}

impl FiniteGroup {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Full structural validation: closure, identity, inverses, associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if self.cayley.len() != n || self.cayley.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("cayley table shape".into()));
        }
        if self.labels.len() != n || self.inverse.len() != n {
            return Err(Error::Shape("labels/inverse length".into()));
        }
        for r in &self.cayley {
            if r.iter().any(|&x| x >= n) {
                return Err(Error::Invalid("cayley entry out of range".into()));
            }
        }
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::Invalid("identity row/column broken".into()));
            }
            if self.mul(x, self.inverse[x]) != self.identity {
                return Err(Error::Invalid(format!("inverse of {x} is wrong")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Invalid(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Partition of element indices into conjugacy classes; the class of the
    /// identity comes first, the rest ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|x| self.mul(self.mul(x, g), self.inverse[x]))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &h in &class {
                seen[h] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// The centralizer of `g` as a group in its own right.
    pub fn centralizer(&self, g: usize) -> FiniteGroup {
        let members: Vec<usize> = (0..self.order)
            .filter(|&h| self.mul(h, g) == self.mul(g, h))
            .collect();
        self.subgroup(&members)
    }

    fn subgroup(&self, members: &[usize]) -> FiniteGroup {
        let pos: std::collections::BTreeMap<usize, usize> = members
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i))
            .collect();
        let m = members.len();
        let cayley: Vec<Vec<usize>> = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        FiniteGroup {
            order: m,
            cayley,
            identity: pos[&self.identity],
            inverse: members.iter().map(|&g| pos[&self.inverse[g]]).collect(),
            labels: members.iter().map(|&g| self.labels[g].clone()).collect(),
            cyclic: None,
        }
    }
}

/// Irreducible dimensions of the double of the group algebra, computed
/// independently of any Hopf-algebra machinery on the double itself: one
/// irreducible of dimension |C| * d for each conjugacy class C and each
/// irreducible dimension d of the centralizer of a representative of C.
///
/// The centralizer dimensions come from the Wedderburn decomposition of the
/// centralizer's group algebra. Output is sorted ascending.
pub fn double_dims_oracle(g: &FiniteGroup, cfg: &ToleranceConfig) -> Result<Vec<usize>> {
    if g.order > MAX_ORDER {
        return Err(Error::OrderBound(g.order));
    }
    let mut dims = Vec::new();
    for class in g.conjugacy_classes() {
        let rep = class[0];
        let cent = g.centralizer(rep);
        let alg = crate::hopf::group_algebra::<crate::scalar::C64>(&cent)?;
        let table = crate::rep::wedderburn(&alg, cfg)?;
        for block in &table.blocks {
            dims.push(class.len() * block.dim);
        }
    }
    dims.sort_unstable();
    let sq: usize = dims.iter().map(|d| d * d).sum();
    if sq != g.order * g.order {
        return Err(Error::Invalid(format!(
            "oracle dimension count broken: sum of squares {sq} != {}",
            g.order * g.order
        )));
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let g = make_group(&GroupSpec::Cyclic(2)).unwrap();
        assert_eq!(g.order, 2);
        assert_eq!(g.conjugacy_classes().len(), 2);
    }

    #[test]
    fn symmetric_three_classes() {
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(g.order, 6);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn klein_four_is_abelian_with_four_classes() {
        let spec = GroupSpec::Product(
            Box::new(GroupSpec::Cyclic(2)),
            Box::new(GroupSpec::Cyclic(2)),
        );
        let g = make_group(&spec).unwrap();
        assert_eq!(g.order, 4);
        assert!(g.is_abelian());
        assert_eq!(g.conjugacy_classes().len(), 4);
        assert!(g.cyclic.is_some());
    }

    #[test]
    fn quaternion_class_sizes() {
        let g = make_group(&GroupSpec::Quaternion8).unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn dihedral_four_order_eight() {
        let g = make_group(&GroupSpec::Dihedral(4)).unwrap();
        assert_eq!(g.order, 8);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn centralizers_in_s3() {
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(g.centralizer(g.identity).order, 6);
        // A transposition has centralizer of order 2, a 3-cycle of order 3.
        let classes = g.conjugacy_classes();
        let transposition = classes.iter().find(|c| c.len() == 3).unwrap()[0];
        let three_cycle = classes.iter().find(|c| c.len() == 2).unwrap()[0];
        assert_eq!(g.centralizer(transposition).order, 2);
        assert_eq!(g.centralizer(three_cycle).order, 3);
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        for n in [1usize, 2, 3, 5, 8] {
            let g = make_group(&GroupSpec::Cyclic(n)).unwrap();
            let classes = g.conjugacy_classes();
            assert_eq!(classes.len(), n);
            assert!(classes.iter().all(|c| c.len() == 1));
        }
    }

    #[test]
    fn oracle_dims_for_small_groups() {
        let cfg = crate::scalar::ToleranceConfig::default();
        let trivial = make_group(&GroupSpec::Cyclic(1)).unwrap();
        assert_eq!(double_dims_oracle(&trivial, &cfg).unwrap(), vec![1]);
        let c2 = make_group(&GroupSpec::Cyclic(2)).unwrap();
        assert_eq!(double_dims_oracle(&c2, &cfg).unwrap(), vec![1, 1, 1, 1]);
        let s3 = make_group(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(
            double_dims_oracle(&s3, &cfg).unwrap(),
            vec![1, 1, 2, 2, 2, 2, 3, 3]
        );
    }

    #[test]
    fn oracle_squares_sum_to_order_squared() {
        // The oracle itself enforces this; spot-check the built-ins anyway.
        let cfg = crate::scalar::ToleranceConfig::default();
        for spec in [
            GroupSpec::Cyclic(3),
            GroupSpec::Dihedral(4),
            GroupSpec::Quaternion8,
            GroupSpec::Product(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Cyclic(2))),
        ] {
            let g = make_group(&spec).unwrap();
            let dims = double_dims_oracle(&g, &cfg).unwrap();
            let sq: usize = dims.iter().map(|d| d * d).sum();
            assert_eq!(sq, g.order * g.order, "{spec:?}");
        }
    }

    #[test]
    fn order_bound_enforced() {
        assert!(matches!(
            make_group(&GroupSpec::Cyclic(65)),
            Err(Error::OrderBound(65))
        ));
    }

    #[test]
    fn group_name_parsing() {
        assert_eq!(parse_group_name("C2").unwrap(), GroupSpec::Cyclic(2));
        assert_eq!(parse_group_name("Q8").unwrap(), GroupSpec::Quaternion8);
        assert_eq!(
            parse_group_name("C2xC2").unwrap(),
            GroupSpec::Product(
                Box::new(GroupSpec::Cyclic(2)),
                Box::new(GroupSpec::Cyclic(2))
            )
        );
        assert!(parse_group_name("E8").is_err());
    }
}
