//! The enhanced automorphism group of a binary form: primitive integer
//! matrices `M0` with `F∘M0 = ±|det M0|^{d/2} F`, the scaling by
//! `1/√|det M0|` kept implicit.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algnum::AlgNum;
use crate::error::{Error, Result};
use crate::exact::{form_action, Ball, BinForm, CBall, IntMat2};

/// One element of the group: a primitive matrix with its determinant and sign.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AutElement {
    pub matrix: IntMat2,
    pub det: BigInt,
    /// `ε` in `F∘M0 = ε |det|^{d/2} F`.
    pub sign: i8,
    /// Order of `M0/√|det|`.
    pub order: u32,
}

impl AutElement {
    /// Image of a solution vector, `(s x + u y, t x + v y)`.
    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        self.matrix.apply(x, y)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    /// Root map `z ↦ (v z - u)/(-t z + s)`.
    pub fn act_on_root(&self, z: &CBall) -> Option<CBall> {
        let prec = z.prec();
        let m = &self.matrix;
        let c = |n: &BigInt| CBall::from_int(n.clone(), prec);
        let num = &(&c(&m.v) * z) - &c(&m.u);
        let den = &c(&m.s) - &(&c(&m.t) * z);
        num.div(&den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    #[serde(rename = "C")]
    Cyclic,
    #[serde(rename = "D")]
    Dihedral,
}

/// `C_n` (order `n`) or `D_n` (order `2n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub kind: GroupKind,
    pub n: usize,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Cyclic => write!(f, "C{}", self.n),
            GroupKind::Dihedral => write!(f, "D{}", self.n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedAut {
    pub elements: Vec<AutElement>,
    pub structure: Structure,
    /// Candidate maps still unresolved at the largest precision tried.
    pub unresolved: usize,
    pub bits: u32,
}

impl EnhancedAut {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &IntMat2) -> bool {
        let p = normalize_primitive(m);
        self.elements.iter().any(|e| e.matrix == p)
    }

    pub fn find(&self, m: &IntMat2) -> Option<&AutElement> {
        let p = normalize_primitive(m);
        self.elements.iter().find(|e| e.matrix == p)
    }

    /// Closure under products and inverses, up to the implicit scaling.
    pub fn is_group(&self) -> bool {
        let set: BTreeSet<&IntMat2> = self.elements.iter().map(|e| &e.matrix).collect();
        self.elements.iter().all(|a| {
            set.contains(&inverse_matrix(&a.matrix))
                && self.elements.iter().all(|b| set.contains(&normalize_primitive(&a.matrix.mul(&b.matrix))))
        })
    }

    pub fn element_orders(&self) -> Vec<u32> {
        self.elements.iter().map(|e| e.order).collect()
    }
}

/// Divide by the positive content.
pub fn normalize_primitive(m: &IntMat2) -> IntMat2 {
    m.primitive()
}

/// The element representing the inverse: `sign(det) · adj(M0)`.
pub fn inverse_matrix(m: &IntMat2) -> IntMat2 {
    let adj = IntMat2::from_big(m.v.clone(), -&m.u, -&m.t, m.s.clone());
    let adj = if m.det().is_negative() { adj.neg() } else { adj };
    normalize_primitive(&adj)
}

/// `Some(ε)` when `F∘M = ε |det M|^{d/2} F`, checked exactly via `F∘M = k F` and `k² = |det|^d`.
pub fn membership_sign(f: &BinForm, m: &IntMat2) -> Option<i8> {
    let det = m.det();
    if det.is_zero() {
        return None;
    }
    let d = f.degree();
    let g = form_action(f, m);
    let i = f.coeffs().iter().position(|c| !c.is_zero())?;
    let (k, rem) = g.coeff(i).div_rem(f.coeff(i));
    if !rem.is_zero() || f.scale(&k) != g {
        return None;
    }
    if &k * &k != num_traits::pow(det.abs(), d) {
        return None;
    }
    Some(if k.is_negative() { -1 } else { 1 })
}

/// Smallest `k <= 24` with `M0^k` a positive scalar matrix.
pub fn element_order(m: &IntMat2) -> Option<u32> {
    let mut acc = m.clone();
    for k in 1..=24u32 {
        if acc.is_scalar() && acc.s.is_positive() {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

fn make_element(f: &BinForm, m: &IntMat2) -> Option<AutElement> {
    let matrix = normalize_primitive(m);
    let sign = membership_sign(f, &matrix)?;
    let order = element_order(&matrix)?;
    Some(AutElement { det: matrix.det(), matrix, sign, order })
}

/// Structure from the order and the determinant signs: reflections have negative determinant.
pub fn identify(elements: &[AutElement]) -> Structure {
    let n = elements.len();
    if elements.iter().all(|e| e.det.is_positive()) {
        Structure { kind: GroupKind::Cyclic, n }
    } else {
        Structure { kind: GroupKind::Dihedral, n: n / 2 }
    }
}

/// The rational with the smallest denominator in `[lo, hi]`.
pub fn simplest_rational(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_rational(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

enum Candidate {
    Accepted(AutElement),
    Rejected,
    Unresolved,
}

/// `A` with `A(z1) = 0`, `A(z2) = 1`, `A(z3) = ∞`, as `[a, b, c, e]`.
fn cross_ratio_matrix(z: [&CBall; 3]) -> [CBall; 4] {
    let d23 = z[1] - z[2];
    let d21 = z[1] - z[0];
    [d23.clone(), -&(z[0] * &d23), d21.clone(), -&(z[2] * &d21)]
}

fn rationalize(entries: &[CBall; 4], bits: u32) -> Option<std::result::Result<IntMat2, ()>> {
    let pivot = (0..4)
        .max_by(|&i, &j| {
            let a = entries[i].abs().lower_rational();
            let b = entries[j].abs().lower_rational();
            a.cmp(&b)
        })
        .expect("four entries");
    if entries[pivot].contains_zero() {
        return None;
    }
    let den_limit = BigInt::one() << (bits / 3);
    let mut ratios = Vec::with_capacity(4);
    for e in entries {
        let r = e.div(&entries[pivot])?;
        if !r.im.contains_zero() {
            return Some(Err(()));
        }
        let q = simplest_rational(&r.re.lower_rational(), &r.re.upper_rational());
        if q.denom() > &den_limit {
            return None;
        }
        ratios.push(q);
    }
    let l = ratios.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = ratios.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    Some(Ok(IntMat2::from_big(ints[0].clone(), ints[1].clone(), ints[2].clone(), ints[3].clone())))
}

fn candidate(f: &BinForm, roots: &[CBall], img: [usize; 3], bits: u32) -> Candidate {
    let a = cross_ratio_matrix([&roots[0], &roots[1], &roots[2]]);
    let b = cross_ratio_matrix([&roots[img[0]], &roots[img[1]], &roots[img[2]]]);
    // N = adj(B)·A sends roots 0,1,2 to the chosen images
    let adj_b = [b[3].clone(), -&b[1], -&b[2], b[0].clone()];
    let n = [
        &(&adj_b[0] * &a[0]) + &(&adj_b[1] * &a[2]),
        &(&adj_b[0] * &a[1]) + &(&adj_b[1] * &a[3]),
        &(&adj_b[2] * &a[0]) + &(&adj_b[3] * &a[2]),
        &(&adj_b[2] * &a[1]) + &(&adj_b[3] * &a[3]),
    ];
    match rationalize(&n, bits) {
        None => Candidate::Unresolved,
        Some(Err(())) => Candidate::Rejected,
        Some(Ok(nm)) => {
            // the root map of M0 is M0^{-1}, so M0 ∝ adj(N)
            let m0 = IntMat2::from_big(nm.v.clone(), -&nm.u, -&nm.t, nm.s.clone());
            match make_element(f, &m0) {
                Some(e) => Candidate::Accepted(e),
                None => Candidate::Unresolved,
            }
        }
    }
}

/// All elements of the group of an irreducible form of degree at least 3.
///
/// Every element permutes the roots and is fixed by the images of three of them, so
/// the Möbius maps sending the first three roots to each ordered triple of distinct
/// roots are exhaustive. Each map is rationalized and kept only if the exact
/// identity holds; precision doubles from 128 up to `max_bits`.
pub fn aut_prime(f: &BinForm, max_bits: u32) -> Result<EnhancedAut> {
    let d = f.degree();
    if d < 3 {
        return Err(Error::Hypothesis(format!("degree {d} < 3")));
    }
    if !f.is_irreducible()? {
        return Err(Error::Reducible);
    }
    if f.discriminant()?.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let poly = f.dehomogenize();
    let algs = AlgNum::all_roots(&poly)?;
    let mut triples = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if i != j && j != k && i != k {
                    triples.push([i, j, k]);
                }
            }
        }
    }
    let mut found: BTreeSet<AutElement> = BTreeSet::new();
    let mut bits = 128;
    let mut pending = triples;
    loop {
        let roots: Vec<CBall> = algs.iter().map(|a| a.cball(bits)).collect::<Result<_>>()?;
        let results: Vec<([usize; 3], Candidate)> =
            pending.par_iter().map(|t| (*t, candidate(f, &roots, *t, bits))).collect();
        let mut next = Vec::new();
        for (t, c) in results {
            match c {
                Candidate::Accepted(e) => {
                    found.insert(e);
                }
                Candidate::Rejected => {}
                Candidate::Unresolved => next.push(t),
            }
        }
        pending = next;
        if pending.is_empty() || bits >= max_bits {
            break;
        }
        bits *= 2;
    }
    let mut elements: Vec<AutElement> = Vec::new();
    for e in found {
        let neg = make_element(f, &e.matrix.neg()).expect("-M0 is a member");
        elements.push(e);
        elements.push(neg);
    }
    elements.sort();
    elements.dedup();
    let structure = identify(&elements);
    let out = EnhancedAut { elements, structure, unresolved: pending.len(), bits };
    if !out.is_group() {
        return Err(Error::Invariant("automorphism set is not closed".into()));
    }
    Ok(out)
}

/// Brute-force search over primitive matrices with entries in `[-bound, bound]`.
pub fn aut_brute_force(f: &BinForm, bound: i64) -> Vec<IntMat2> {
    let d = f.degree();
    let cd = f.coeff(d).clone();
    let mut out = Vec::new();
    for s in -bound..=bound {
        for t in -bound..=bound {
            let (sb, tb) = (BigInt::from(s), BigInt::from(t));
            let fst = f.eval(&sb, &tb);
            if fst.is_zero() {
                continue;
            }
            for u in -bound..=bound {
                for v in -bound..=bound {
                    let det = s * v - t * u;
                    if det == 0 || s.gcd(&t).gcd(&u).gcd(&v) != 1 {
                        continue;
                    }
                    // F(s, t) = ±|det|^{d/2} c_d is necessary
                    let lhs = &fst * &fst;
                    let rhs = num_traits::pow(BigInt::from(det.abs()), d) * &cd * &cd;
                    if lhs != rhs {
                        continue;
                    }
                    let m = IntMat2::new(s, u, t, v);
                    if membership_sign(f, &m).is_some() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The subgroup of elements with `|det|` a perfect square, tagged by its
/// conjugacy class of finite subgroups of `GL₂(ℚ)`.
pub fn aut_rational_class(aut: &EnhancedAut) -> String {
    let sub: Vec<AutElement> = aut
        .elements
        .iter()
        .filter(|e| {
            let a = e.det.abs();
            let r = a.sqrt();
            &r * &r == a
        })
        .cloned()
        .collect();
    identify(&sub).to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<usize>>,
    /// `γ_i`, the size of the block containing root `i`.
    pub gamma_of: Vec<usize>,
    pub gamma: usize,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

fn partition_from(n: usize, links: &[(usize, usize)]) -> OrbitPartition {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(i, j) in links {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![0; n];
    for i in 0..n {
        root_of[i] = find(&mut parent, i);
    }
    for i in 0..n {
        if root_of[i] == i {
            blocks.push((0..n).filter(|&j| root_of[j] == i).collect());
        }
    }
    let gamma_of: Vec<usize> = (0..n).map(|i| blocks.iter().find(|b| b.contains(&i)).unwrap().len()).collect();
    let gamma = gamma_of.iter().copied().max().unwrap_or(0);
    OrbitPartition { blocks, gamma_of, gamma }
}

/// Partition the given conjugates into orbits of integer Möbius maps.
///
/// With a group the images of every root are located by enclosure; without one,
/// each pair is tested for an integer Möbius relation.
pub fn root_orbit_partition(alphas: &[AlgNum], aut: Option<&EnhancedAut>) -> Result<OrbitPartition> {
    let n = alphas.len();
    let mut links = Vec::new();
    match aut {
        Some(g) => {
            for e in &g.elements {
                for i in 0..n {
                    links.push((i, image_index(alphas, i, e)?));
                }
            }
        }
        None => {
            for i in 0..n {
                for j in 0..n {
                    if i != j && related(&alphas[i], &alphas[j])? {
                        links.push((i, j));
                    }
                }
            }
        }
    }
    Ok(partition_from(n, &links))
}

fn related(a: &AlgNum, b: &AlgNum) -> Result<bool> {
    match crate::gap::mobius_relation(a, b) {
        Ok(m) => Ok(m.is_some()),
        Err(Error::NotInField) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Index of the root hit by the element's root map, certified by separation.
pub fn image_index(alphas: &[AlgNum], i: usize, e: &AutElement) -> Result<usize> {
    let mut bits = 64;
    while bits <= 4096 {
        let z = alphas[i].cball(bits)?;
        if let Some(w) = e.act_on_root(&z) {
            let hits: Vec<usize> = (0..alphas.len())
                .filter(|&j| alphas[j].cball(bits).map(|b| b.overlaps(&w)).unwrap_or(false))
                .collect();
            if hits.len() == 1 {
                return Ok(hits[0]);
            }
        }
        bits *= 2;
    }
    Err(Error::Precision("root image not separated".into()))
}

/// The degree-12 form invariant under the dihedral group of order 24 for `a ≡ 3b (mod 10)`.
pub fn d12_family(a: &BigInt, b: &BigInt) -> Result<BinForm> {
    if !(a - BigInt::from(3) * b).mod_floor(&BigInt::from(10)).is_zero() {
        return Err(Error::Hypothesis(format!("a = {a}, b = {b} violates a ≡ 3b (mod 10)")));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::Hypothesis(format!("gcd({a}, {b}) != 1")));
    }
    let exact = |n: BigInt, k: i64| -> Result<BigInt> {
        let (q, r) = n.div_rem(&BigInt::from(k));
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::invalid("non-integral coefficient"))
        }
    };
    let i = |n: i64| BigInt::from(n);
    let c2 = exact(i(231) * a + i(2) * b, 5)?;
    let c3 = -(i(176) * a + i(2) * b);
    let c4 = exact(i(495) * a + i(5) * b, 2)?;
    let c5 = i(2) * b;
    let c6 = -exact(i(1122) * a + i(29) * b, 5)?;
    let c1 = -(i(6) * a);
    let half = [a.clone(), c1, c2, c3, c4, c5];
    let mut coeffs: Vec<BigInt> = half.to_vec();
    coeffs.push(c6);
    coeffs.extend(half.iter().rev().cloned());
    BinForm::new(coeffs)
}

/// The twelve unimodular maps preserving the forms of [`d12_family`].
pub fn d12_unimodular_maps() -> Vec<IntMat2> {
    [
        (1, 0, 0, 1),
        (0, 1, -1, 1),
        (-1, 1, -1, 0),
        (-1, 0, 0, -1),
        (0, -1, 1, -1),
        (1, -1, 1, 0),
        (0, 1, 1, 0),
        (-1, 1, 0, 1),
        (-1, 0, -1, 1),
        (0, -1, -1, 0),
        (1, -1, 0, -1),
        (1, 0, 1, -1),
    ]
    .iter()
    .map(|&(s, u, t, v)| IntMat2::new(s, u, t, v))
    .collect()
}

/// The twelve determinant `±3` maps scaling the forms of [`d12_family`] by 729.
pub fn d12_scaling_maps() -> Vec<IntMat2> {
    [
        (1, 1, -1, 2),
        (-1, 2, -2, 1),
        (-2, 1, -1, -1),
        (-1, -1, 1, -2),
        (1, -2, 2, -1),
        (2, -1, 1, 1),
        (-1, 2, 1, 1),
        (-2, 1, -1, 2),
        (-1, -1, -2, 1),
        (1, -2, -1, -1),
        (2, -1, 1, -2),
        (1, 1, 2, -1),
    ]
    .iter()
    .map(|&(s, u, t, v)| IntMat2::new(s, u, t, v))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub matrix: IntMat2,
    pub factor: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report729 {
    pub unimodular: Vec<IdentityCheck>,
    pub scaling: Vec<IdentityCheck>,
}

impl Report729 {
    pub fn all_hold(&self) -> bool {
        self.unimodular.iter().chain(&self.scaling).all(|c| c.holds)
    }
}

/// Check `F∘M = F` for the unimodular maps and `F∘M0 = 729 F` for the scaling maps.
pub fn verify_729(f: &BinForm) -> Report729 {
    let check = |m: IntMat2, k: i64| {
        let factor = BigInt::from(k);
        let holds = form_action(f, &m) == f.scale(&factor);
        IdentityCheck { matrix: m, factor, holds }
    };
    Report729 {
        unimodular: d12_unimodular_maps().into_iter().map(|m| check(m, 1)).collect(),
        scaling: d12_scaling_maps().into_iter().map(|m| check(m, 729)).collect(),
    }
}

/// `|det|^d c_d² = F(s, t)²` for every element.
pub fn determinant_law_holds(f: &BinForm, aut: &EnhancedAut) -> bool {
    let d = f.degree();
    let cd = f.coeff(d);
    aut.elements.iter().all(|e| {
        let fst = f.eval(&e.matrix.s, &e.matrix.t);
        num_traits::pow(e.det.abs(), d) * cd * cd == &fst * &fst
    })
}

/// Number of distinct Möbius classes, `#Aut′ / 2`.
pub fn mobius_count(aut: &EnhancedAut) -> usize {
    aut.order() / 2
}

/// Entries as `i64`, for display and serialization.
pub fn matrix_i64(m: &IntMat2) -> Option<[i64; 4]> {
    Some([m.s.to_i64()?, m.u.to_i64()?, m.t.to_i64()?, m.v.to_i64()?])
}

/// Ball enclosing `|det|^{1/2}`, the implicit scale of an element.
pub fn scale_ball(e: &AutElement, prec: u32) -> Ball {
    Ball::from_int(e.det.abs(), prec).sqrt().expect("nonzero determinant")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_cubic_has_sign_group() {
        let f = BinForm::from_high(&[1, 0, 0, -2]);
        let g = aut_prime(&f, 512).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.structure.to_string(), "C2");
        assert!(g.contains(&IntMat2::identity()) && g.contains(&IntMat2::identity().neg()));
        assert_eq!(aut_brute_force(&f, 10), g.elements.iter().map(|e| e.matrix.clone()).collect::<Vec<_>>());
        assert_eq!(aut_rational_class(&g), "C2");
        let roots = AlgNum::all_roots(&f.dehomogenize()).unwrap();
        assert_eq!(root_orbit_partition(&roots, Some(&g)).unwrap().gamma, 1);
    }

    #[test]
    fn d12_instance() {
        let f = d12_family(&3.into(), &1.into()).unwrap();
        let c: Vec<i64> = f.coeffs().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(c, vec![3, -18, 139, -530, 745, 2, -679, 2, 745, -530, 139, -18, 3]);
        assert!(verify_729(&f).all_hold());
        assert!(d12_family(&1.into(), &1.into()).is_err());
        let g = aut_prime(&f, 512).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.structure.to_string(), "D12");
        assert!(g.contains(&IntMat2::new(0, 1, 1, 0)));
        assert_eq!(g.find(&IntMat2::new(1, 1, -1, 2)).unwrap().det, BigInt::from(3));
        assert!(determinant_law_holds(&f, &g));
        assert_eq!(aut_rational_class(&g), "D6");
        let roots = AlgNum::all_roots(&f.dehomogenize()).unwrap();
        let part = root_orbit_partition(&roots, Some(&g)).unwrap();
        assert_eq!(part.gamma, 12);
        assert!(part.gamma <= g.order() / 2);
    }

    #[test]
    fn simplest_rationals() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(simplest_rational(&r(3, 10), &r(4, 10)), r(1, 3));
        assert_eq!(simplest_rational(&r(-7, 5), &r(-6, 5)), r(-4, 3));
        assert_eq!(simplest_rational(&r(2, 1), &r(5, 2)), r(2, 1));
    }
}
