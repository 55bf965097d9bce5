//! Thue inequalities `0 < |F(x, y)| <= m`: exhaustive enumeration in a box,
//! root assignment, the threshold `C5`, the solution census, and certified
//! continued-fraction convergents.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algnum::{power_rep, AlgNum};
use crate::autgroup::{aut_prime, root_orbit_partition, EnhancedAut};
use crate::error::{Error, Result};
use crate::exact::roots::mahler_measure;
use crate::exact::{Ball, BinForm, PosReal};
use crate::gap::{self, ApproxPair, GapInstance, C16};

/// Largest `#roots · (2R + 3) · B` work estimate accepted by [`enumerate_primitive`].
pub const ENUMERATION_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug)]
pub struct ThueProblem {
    pub form: BinForm,
    pub m: BigInt,
    pub bound: BigInt,
}

impl ThueProblem {
    pub fn new(form: BinForm, m: BigInt, bound: BigInt) -> Result<ThueProblem> {
        if form.degree() < 3 {
            return Err(Error::Hypothesis(format!("degree {} < 3", form.degree())));
        }
        if !form.is_irreducible()? {
            return Err(Error::Reducible);
        }
        if m < BigInt::one() {
            return Err(Error::Hypothesis("m must be at least 1".into()));
        }
        if bound.is_negative() {
            return Err(Error::invalid("box bound must be nonnegative"));
        }
        Ok(ThueProblem { form, m, bound })
    }
}

/// A primitive solution with its first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Solution {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub y: BigInt,
    /// `F(x, y)`.
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub value: BigInt,
}

impl Solution {
    pub fn height(&self) -> BigInt {
        self.x.abs().max(self.y.abs())
    }

    fn key(&self) -> (BigInt, BigInt, BigInt) {
        (self.height(), self.x.clone(), self.y.clone())
    }
}

/// Identify `(x, y)` with `(-x, -y)` by making the first nonzero coordinate positive.
pub fn normalize_sign(x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    if x.is_negative() || (x.is_zero() && y.is_negative()) {
        (-x, -y)
    } else {
        (x.clone(), y.clone())
    }
}

/// Smallest `R >= 0` with `R^d |c_d| >= m`.
fn root_window(cd: &BigInt, d: usize, m: &BigInt) -> BigInt {
    let mut r = BigInt::zero();
    while num_traits::pow(r.clone(), d) * cd.abs() < *m {
        r += 1;
    }
    r
}

/// All primitive solutions with `H(x, y) <= B`, sorted by height then coordinates.
///
/// From `|F(x, y)| = |c_d| ∏ |x - α_i y| <= m` some root has `|x - y Re α_i| <= R`,
/// so each row `y` only needs the windows around `y Re α_i`.
pub fn enumerate_primitive(problem: &ThueProblem) -> Result<Vec<Solution>> {
    let f = &problem.form;
    let d = f.degree();
    let m = &problem.m;
    let b = &problem.bound;
    let cd = f.coeff(d).clone();
    let r = root_window(&cd, d, m);
    let bu = b.to_u64().ok_or_else(|| Error::invalid("box bound too large"))?;
    let ru = r.to_u64().unwrap_or(u64::MAX);
    let work = (d as u64).saturating_mul(ru.saturating_mul(2).saturating_add(3)).saturating_mul(bu.max(1));
    if work > ENUMERATION_BUDGET {
        return Err(Error::invalid(format!("enumeration budget exceeded ({work} > {ENUMERATION_BUDGET})")));
    }
    let roots = AlgNum::all_roots(&f.dehomogenize())?;
    let bits = 64 + bu.max(2).ilog2();
    let re: Vec<(BigRational, BigRational)> = roots
        .iter()
        .map(|a| a.cball(bits).map(|c| (c.re.lower_rational(), c.re.upper_rational())))
        .collect::<Result<_>>()?;
    let rq = BigRational::from_integer(r.clone());
    let admissible = |v: &BigInt| !v.is_zero() && v.abs() <= *m;
    let rows: Vec<Vec<Solution>> = (1..=bu)
        .into_par_iter()
        .map(|y| {
            let yb = BigInt::from(y);
            let yq = BigRational::from_integer(yb.clone());
            let mut xs = BTreeSet::new();
            for (lo, hi) in &re {
                let xlo = (&yq * lo - &rq).floor().to_integer().max(-b.clone());
                let xhi = (&yq * hi + &rq).ceil().to_integer().min(b.clone());
                let mut x = xlo;
                while x <= xhi {
                    xs.insert(x.clone());
                    x += 1;
                }
            }
            let mut out = Vec::new();
            for x in xs {
                if !x.gcd(&yb).is_one() {
                    continue;
                }
                let v = f.eval(&x, &yb);
                if admissible(&v) {
                    let (nx, ny) = normalize_sign(&x, &yb);
                    let value = f.eval(&nx, &ny);
                    out.push(Solution { x: nx, y: ny, value });
                }
            }
            out
        })
        .collect();
    let mut all: Vec<Solution> = rows.into_iter().flatten().collect();
    if admissible(&cd) && !b.is_zero() {
        all.push(Solution { x: BigInt::one(), y: BigInt::zero(), value: cd });
    }
    all.sort_by_key(|s| s.key());
    all.dedup();
    Ok(all)
}

/// Naive double loop over the box, for cross-checking.
pub fn enumerate_naive(problem: &ThueProblem) -> Vec<Solution> {
    let b = problem.bound.to_i64().expect("small box");
    let mut out = BTreeMap::new();
    for x in -b..=b {
        for y in -b..=b {
            let (xb, yb) = (BigInt::from(x), BigInt::from(y));
            if !xb.gcd(&yb).is_one() {
                continue;
            }
            let v = problem.form.eval(&xb, &yb);
            if !v.is_zero() && v.abs() <= problem.m {
                let (nx, ny) = normalize_sign(&xb, &yb);
                let s = Solution { value: problem.form.eval(&nx, &ny), x: nx, y: ny };
                out.insert(s.key(), s);
            }
        }
    }
    out.into_values().collect()
}

/// `C10 = 2^{d-1} d^{(d-1)/2} M(F)^{d-2} / |D(F)|^{1/2}`, rounded up.
pub fn lewis_mahler_c10(f: &BinForm, prec: u32) -> Result<BigRational> {
    Ok(lewis_mahler_ball(f, prec)?.upper_rational())
}

fn lewis_mahler_ball(f: &BinForm, prec: u32) -> Result<Ball> {
    let d = f.degree();
    if f.coeff(0).is_zero() || f.coeff(d).is_zero() {
        return Err(Error::Hypothesis("c_0 c_d = 0".into()));
    }
    let disc = f.discriminant()?;
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let prec = prec.max(64);
    let mahler = mahler_measure(&f.dehomogenize(), prec)?;
    let two = Ball::from_int(BigInt::one() << (d - 1), prec);
    let dpow = Ball::from_int(num_traits::pow(BigInt::from(d), d - 1), prec).sqrt().expect("positive");
    let num = &(&two * &dpow) * &mahler.pow_u(d as u64 - 2);
    Ok(num.div(&Ball::from_int(disc.abs(), prec).sqrt().expect("positive")).expect("positive"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `|α - x/y|`.
    Alpha,
    /// `|α⁻¹ - y/x|`.
    Inverse,
}

/// The root and side minimizing the distance to a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootAssignment {
    pub root: usize,
    pub side: Side,
    pub distance: Ball,
    /// Other candidates whose distances could not be separated from the minimum.
    pub tied: Vec<(usize, Side)>,
}

fn distances(roots: &[AlgNum], x: &BigInt, y: &BigInt, bits: u32) -> Result<Vec<(usize, Side, Ball)>> {
    let prec = bits + 32;
    let mut out = Vec::new();
    for (i, a) in roots.iter().enumerate() {
        let z = a.cball(bits)?;
        if !y.is_zero() {
            let q = Ball::from_rational(&BigRational::new(x.clone(), y.clone()), prec);
            let mut w = z.clone();
            w.re = &w.re - &q;
            out.push((i, Side::Alpha, w.abs()));
        }
        if !x.is_zero() {
            let q = Ball::from_rational(&BigRational::new(y.clone(), x.clone()), prec);
            let mut w = z.recip().ok_or_else(|| Error::invalid("zero root"))?;
            w.re = &w.re - &q;
            out.push((i, Side::Inverse, w.abs()));
        }
    }
    Ok(out)
}

/// Smallest of `|α_i - x/y|` and `|α_i⁻¹ - y/x|` over all roots, certified by separation.
///
/// Exact ties are possible (for example among conjugates of equal modulus); they are
/// listed in `tied`, and the reported candidate prefers a real root, then the lower
/// index, then the `α` side.
pub fn assign_root(f: &BinForm, sol: &Solution, max_bits: u32) -> Result<RootAssignment> {
    let roots = AlgNum::all_roots(&f.dehomogenize())?;
    assign_root_with(&roots, &sol.x, &sol.y, max_bits)
}

pub fn assign_root_with(roots: &[AlgNum], x: &BigInt, y: &BigInt, max_bits: u32) -> Result<RootAssignment> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::invalid("(0, 0) is not a solution"));
    }
    let mut bits = 64;
    loop {
        let ds = distances(roots, x, y, bits)?;
        let best = ds.iter().min_by(|a, b| a.2.upper().cmp(&b.2.upper())).expect("nonempty");
        let near: Vec<&(usize, Side, Ball)> = ds.iter().filter(|c| c.2.lower() <= best.2.upper()).collect();
        if near.len() == 1 || bits >= max_bits {
            let pick = near
                .iter()
                .min_by_key(|c| (!roots[c.0].is_real(), c.0, c.1))
                .expect("nonempty");
            let tied = near.iter().filter(|c| (c.0, c.1) != (pick.0, pick.1)).map(|c| (c.0, c.1)).collect();
            return Ok(RootAssignment { root: pick.0, side: pick.1, distance: pick.2.clone(), tied });
        }
        bits *= 2;
    }
}

/// Certified check of `min{|α - x/y|, |α⁻¹ - y/x|} <= C10 |F(x, y)| / H^d` over all roots.
pub fn lewis_mahler_holds(f: &BinForm, sol: &Solution, c10: &BigRational, bits: u32) -> Result<Option<bool>> {
    let roots = AlgNum::all_roots(&f.dehomogenize())?;
    lewis_mahler_holds_with(&roots, f.degree(), sol, c10, bits)
}

pub fn lewis_mahler_holds_with(
    roots: &[AlgNum],
    d: usize,
    sol: &Solution,
    c10: &BigRational,
    bits: u32,
) -> Result<Option<bool>> {
    let ds = distances(roots, &sol.x, &sol.y, bits)?;
    let min = ds.iter().map(|c| c.2.clone()).reduce(|a, b| a.min(&b)).expect("nonempty");
    let h = BigRational::from_integer(num_traits::pow(sol.height(), d));
    let bound = c10 * BigRational::from_integer(sol.value.abs()) / h;
    if min.upper_rational() <= bound {
        Ok(Some(true))
    } else if min.lower_rational() > bound {
        Ok(Some(false))
    } else {
        Ok(None)
    }
}

/// Every root lies in the field generated by the first one.
pub fn is_galois(roots: &[AlgNum]) -> Result<bool> {
    for r in &roots[1..] {
        match power_rep(&roots[0], r) {
            Ok(_) => {}
            Err(Error::NotInField) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// `C16` for the conjugates in `roots`, over the ordered pairs lying in a common field.
pub fn c16_for_roots(roots: &[AlgNum], mu: &BigRational, c0: &BigRational) -> Result<Option<C16>> {
    let d = roots[0].degree();
    let pairs: Vec<(usize, usize)> =
        (0..roots.len()).flat_map(|i| (0..roots.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let consts: Vec<Option<gap::GapConstants>> = pairs
        .par_iter()
        .map(|&(i, j)| match GapInstance::archimedean(&roots[i], &roots[j], mu, c0) {
            Ok(inst) => Ok(Some(inst.constants)),
            Err(Error::NotInField) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let pairwise: Vec<gap::GapConstants> = consts.into_iter().flatten().collect();
    if pairwise.is_empty() {
        return Ok(None);
    }
    let c11 = gap::c11_archimedean(roots, mu, c0)?;
    let ln_m = roots
        .iter()
        .map(|a| a.mahler(96).and_then(|m| m.ln().ok_or_else(|| Error::invalid("zero measure"))))
        .collect::<Result<Vec<Ball>>>()?
        .into_iter()
        .reduce(|a, b| a.max(&b))
        .expect("nonempty");
    Ok(Some(gap::c16(d, mu, c0, &c11, &pairwise, &ln_m)?))
}

/// The threshold `C5` with both of its ingredients.
#[derive(Clone, Debug)]
pub struct C5 {
    pub value: PosReal,
    /// `(C10 m)^{1/(d-μ)}`.
    pub liouville_branch: PosReal,
    pub c10: BigRational,
    pub c16_roots: Option<C16>,
    pub c16_inverses: Option<C16>,
    pub galois: bool,
}

/// `C5 = max{(C10 m)^{1/(d-μ)}, C16(α_1..α_d), C16(α_1⁻¹..α_d⁻¹)}` with `C0 = 1`.
pub fn c5(f: &BinForm, m: &BigInt, mu: &BigRational) -> Result<C5> {
    let d = f.degree();
    gap::check_mu(d, mu)?;
    let c10 = lewis_mahler_c10(f, 128)?;
    let e = (BigRational::from_integer(BigInt::from(d)) - mu).recip();
    let liouville_branch = PosReal::from_rational(&(&c10 * BigRational::from_integer(m.clone()))).powr(&e);
    let poly = f.dehomogenize();
    let roots = AlgNum::all_roots(&poly)?;
    let inverses = AlgNum::all_roots(&poly.reciprocal())?;
    let galois = is_galois(&roots)?;
    let one = BigRational::one();
    let c16_roots = c16_for_roots(&roots, mu, &one)?;
    let c16_inverses = c16_for_roots(&inverses, mu, &one)?;
    let mut value = liouville_branch.clone();
    for c in [&c16_roots, &c16_inverses].into_iter().flatten() {
        value = value.max(&c.value);
    }
    Ok(C5 { value, liouville_branch, c10, c16_roots, c16_inverses, galois })
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub solution: Solution,
    pub assignment: RootAssignment,
    pub orbit: usize,
    /// `H(x, y) >= C5` could not be excluded.
    pub large: bool,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub d: usize,
    pub m: BigInt,
    pub bound_box: BigInt,
    pub mu: BigRational,
    pub entries: Vec<CensusEntry>,
    pub orbits: Vec<Vec<usize>>,
    /// Every unimodular image of a solution that stays in the box is a solution.
    pub orbit_closed: bool,
    pub aut: EnhancedAut,
    pub gamma: usize,
    pub c5: C5,
    pub count_floor: BigInt,
    /// `#Aut′ · count_floor`.
    pub theorem_bound: BigInt,
    pub large_count: usize,
    pub bound_applicable: bool,
    pub bound_respected: bool,
    pub lewis_mahler_ok: bool,
    /// `25 d`, for comparison only.
    pub gyory_bound: u64,
}

/// Solutions grouped by the action of the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionOrbits {
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    /// Every unimodular image inside the box is again in the list.
    pub closed: bool,
}

/// Join solutions related by an element of `aut`; images are made primitive and sign-normalized.
pub fn solution_orbits(solutions: &[Solution], aut: &EnhancedAut, bound: &BigInt) -> SolutionOrbits {
    let index: BTreeMap<(BigInt, BigInt), usize> =
        solutions.iter().enumerate().map(|(i, s)| ((s.x.clone(), s.y.clone()), i)).collect();
    let mut parent: Vec<usize> = (0..solutions.len()).collect();
    fn root_of(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    let mut closed = true;
    for (i, s) in solutions.iter().enumerate() {
        for e in &aut.elements {
            let (a, b) = e.apply(&s.x, &s.y);
            let g = a.gcd(&b);
            let (a, b) = normalize_sign(&(a / &g), &(b / &g));
            match index.get(&(a.clone(), b.clone())) {
                Some(&j) => {
                    let (ri, rj) = (root_of(&mut parent, i), root_of(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                }
                None => {
                    if e.is_unimodular() && a.abs().max(b.abs()) <= *bound {
                        closed = false;
                    }
                }
            }
        }
    }
    let mut ids = BTreeMap::new();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut orbit_of = Vec::with_capacity(solutions.len());
    for i in 0..solutions.len() {
        let r = root_of(&mut parent, i);
        let next = ids.len();
        let id = *ids.entry(r).or_insert(next);
        if id == orbits.len() {
            orbits.push(Vec::new());
        }
        orbits[id].push(i);
        orbit_of.push(id);
    }
    SolutionOrbits { orbit_of, orbits, closed }
}

/// Enumerate, assign roots, group into orbits, and compare the large solutions with the bound.
pub fn census(problem: &ThueProblem, mu: &BigRational) -> Result<Census> {
    let f = &problem.form;
    let d = f.degree();
    gap::check_mu(d, mu)?;
    let solutions = enumerate_primitive(problem)?;
    let roots = AlgNum::all_roots(&f.dehomogenize())?;
    let aut = aut_prime(f, 512)?;
    let c5v = c5(f, &problem.m, mu)?;
    let c10 = &c5v.c10;
    let gamma = root_orbit_partition(&roots, Some(&aut))?.gamma;
    if 2 * gamma > aut.order() {
        return Err(Error::Invariant(format!("gamma = {gamma} exceeds #Aut'/2 = {}", aut.order() / 2)));
    }

    let grouping = solution_orbits(&solutions, &aut, &problem.bound);
    let mut entries = Vec::with_capacity(solutions.len());
    let mut lewis_mahler_ok = true;
    for (i, s) in solutions.iter().enumerate() {
        let assignment = assign_root_with(&roots, &s.x, &s.y, 1024)?;
        if lewis_mahler_holds_with(&roots, d, s, c10, 128)? != Some(true) {
            lewis_mahler_ok = false;
        }
        let large = PosReal::from_int(s.height()).lt(&c5v.value) != Some(true);
        entries.push(CensusEntry { solution: s.clone(), assignment, orbit: grouping.orbit_of[i], large });
    }
    let count_floor = gap::count_floor(&BigInt::from(d), mu)?;
    let theorem_bound = &count_floor * BigInt::from(aut.order());
    let large_count = entries.iter().filter(|e| e.large).count();
    let bound_applicable = c5v.galois;
    let bound_respected = !bound_applicable || BigInt::from(large_count) <= theorem_bound;
    Ok(Census {
        d,
        m: problem.m.clone(),
        bound_box: problem.bound.clone(),
        mu: mu.clone(),
        entries,
        orbits: grouping.orbits,
        orbit_closed: grouping.closed,
        aut,
        gamma,
        c5: c5v,
        count_floor,
        theorem_bound,
        large_count,
        bound_applicable,
        bound_respected,
        lewis_mahler_ok,
        gyory_bound: 25 * d as u64,
    })
}

/// Partial quotients of a rational number.
fn rational_cf(q: &BigRational) -> Vec<BigInt> {
    let mut out = Vec::new();
    let (mut n, mut d) = (q.numer().clone(), q.denom().clone());
    while !d.is_zero() {
        let (a, r) = n.div_mod_floor(&d);
        out.push(a);
        n = d;
        d = r;
    }
    out
}

/// The first `count` partial quotients of a real irrational algebraic number.
///
/// The expansions of both endpoints of an enclosure agree on a prefix; every real
/// number in between shares that prefix, so it belongs to the number itself.
pub fn continued_fraction(alpha: &AlgNum, count: usize) -> Result<Vec<BigInt>> {
    if !alpha.is_real() {
        return Err(Error::invalid("continued fractions need a real number"));
    }
    if alpha.is_rational() {
        return Err(Error::Rational);
    }
    let mut bits = 128;
    loop {
        let b = alpha.real_ball(bits)?.expect("real");
        let lo = rational_cf(&b.lower_rational());
        let hi = rational_cf(&b.upper_rational());
        let usable = lo.len().min(hi.len()).saturating_sub(1);
        let agree = (0..usable).take_while(|&i| lo[i] == hi[i]).count();
        if agree >= count {
            return Ok(lo[..count].to_vec());
        }
        if bits > 1 << 20 {
            return Err(Error::Precision("continued fraction did not stabilize".into()));
        }
        bits *= 2;
    }
}

/// Convergents `p_k/q_k` from partial quotients.
pub fn convergents_of(terms: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (terms[0].clone(), BigInt::one());
    let mut out = vec![(p1.clone(), q1.clone())];
    for a in &terms[1..] {
        let p2 = a * &p1 + &p0;
        let q2 = a * &q1 + &q0;
        (p0, q0, p1, q1) = (p1, q1, p2.clone(), q2.clone());
        out.push((p2, q2));
    }
    out
}

/// The first `count` convergents with certified quality enclosures.
pub fn convergents(alpha: &AlgNum, count: usize) -> Result<Vec<ApproxPair>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let terms = continued_fraction(alpha, count)?;
    convergents_of(&terms)
        .into_iter()
        .map(|(p, q)| {
            let bits = 64 + 3 * q.bits() as u32;
            ApproxPair::real(alpha, &p, &q, bits)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(c: &[i64], m: i64, b: i64) -> ThueProblem {
        ThueProblem::new(BinForm::from_high(c), m.into(), b.into()).unwrap()
    }

    fn pairs(s: &[Solution]) -> Vec<(i64, i64)> {
        s.iter().map(|s| (s.x.to_i64().unwrap(), s.y.to_i64().unwrap())).collect()
    }

    #[test]
    fn pure_cubic_solutions() {
        let p = problem(&[1, 0, 0, -2], 1, 100);
        let sols = enumerate_primitive(&p).unwrap();
        assert_eq!(pairs(&sols), vec![(1, 0), (1, 1)]);
        assert!(ThueProblem::new(BinForm::from_high(&[1, 0, 0, 1]), 1.into(), 100.into()).is_err());
        assert!(ThueProblem::new(BinForm::from_high(&[1, 0, 0, -2]), 0.into(), 100.into()).is_err());
        let q = problem(&[1, 0, 0, -2], 7, 60);
        assert_eq!(enumerate_primitive(&q).unwrap(), enumerate_naive(&q));
    }

    #[test]
    fn c10_pure_cubic() {
        let f = BinForm::from_high(&[1, 0, 0, -2]);
        let c = lewis_mahler_c10(&f, 128).unwrap().to_f64().unwrap();
        assert!((c - 4.0 / 3f64.sqrt()).abs() < 1e-12);
        let up = lewis_mahler_c10(&f, 128).unwrap();
        assert!(&up * &up >= BigRational::new(16.into(), 3.into()));
        let sol = Solution { x: 1.into(), y: 1.into(), value: (-1).into() };
        let c10 = lewis_mahler_c10(&f, 128).unwrap();
        assert_eq!(lewis_mahler_holds(&f, &sol, &c10, 128).unwrap(), Some(true));
        let a = assign_root(&f, &sol, 512).unwrap();
        let roots = AlgNum::all_roots(&f.dehomogenize()).unwrap();
        assert!(roots[a.root].is_real());
        assert_eq!(a.side, Side::Inverse);
        assert!(a.tied.is_empty());
        let tie = assign_root(&f, &Solution { x: 1.into(), y: 0.into(), value: 1.into() }, 256).unwrap();
        assert!(roots[tie.root].is_real());
        assert_eq!(tie.tied.len(), 2);
    }

    #[test]
    fn cube_root_two_expansion() {
        let a = AlgNum::all_roots(&crate::exact::IntPoly::from_high(&[1, 0, 0, -2]))
            .unwrap()
            .into_iter()
            .find(|a| a.is_real())
            .unwrap();
        let cs = convergents(&a, 12).unwrap();
        let first: Vec<(i64, i64)> = cs[..4].iter().map(|c| (c.x.to_i64().unwrap(), c.y.to_i64().unwrap())).collect();
        assert_eq!(first, vec![(1, 1), (4, 3), (5, 4), (29, 23)]);
        for c in &cs {
            let gap::Quality::Real(dist) = &c.quality else { panic!() };
            assert!(dist.upper_rational() < BigRational::new(1.into(), &c.y * &c.y));
        }
    }

    #[test]
    fn census_galois_cubic() {
        let p = problem(&[1, 0, -3, -1], 1, 200);
        let mu = gap::default_mu(&BigInt::from(3));
        let c = census(&p, &mu).unwrap();
        assert!(c.c5.galois && c.bound_applicable && c.bound_respected);
        assert_eq!(c.large_count, 0);
        assert!(c.orbit_closed && c.lewis_mahler_ok);
        assert_eq!(c.count_floor, BigInt::from(64));
        assert_eq!(c.aut.order(), 6);
        let found: Vec<(i64, i64)> = pairs(&c.entries.iter().map(|e| e.solution.clone()).collect::<Vec<_>>());
        assert_eq!(found, vec![(0, 1), (1, -1), (1, 0), (2, 1), (1, -3), (3, -2)]);
        assert_eq!(c.orbits, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
