//! Gap-principle constants and checks: the vanishing gap with `C15`, the
//! resultant and two-forms auxiliary bounds, `C1..C4`, `C11`, Thue–Siegel
//! parameters, the counting bound, `C16`, and dichotomy verdicts for pairs of
//! rational approximations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algnum::padic::{PadicAbs, PadicAlgNum};
use crate::algnum::{liouville_c6, power_rep, AlgNum, PowerBasisRep};
use crate::error::{Error, Result};
use crate::exact::ball::ln2;
use crate::exact::posreal::LOG_PREC;
use crate::exact::roots::isolate_roots;
use crate::exact::{Ball, CBall, IntPoly, PosReal, QSqrt, RatPoly};
use crate::minpair::{self, MinimalPair, Minimality};

fn rq(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ball_q(x: &BigRational) -> Ball {
    Ball::from_rational(x, LOG_PREC)
}

fn ball_i(n: i64) -> Ball {
    Ball::from_i64(n, LOG_PREC)
}

fn ln_i(n: impl Into<BigInt>) -> Ball {
    PosReal::from_int(n).ln().clone()
}

fn ln_q(x: &BigRational) -> Ball {
    PosReal::from_rational(x).ln().clone()
}

fn ln_big(h: &BigInt) -> Ball {
    ln_i(h.clone())
}

/// `C15 = 2^{r²} (r+1)^{(3r²+2r)/2}` as an exact `q·√n`.
pub fn c15(r: u64) -> Result<QSqrt> {
    if r < 1 {
        return Err(Error::invalid("C15 needs r >= 1"));
    }
    let e = (3 * r * r + 2 * r) as i64;
    let two = num_traits::pow(BigInt::from(2), (r * r) as usize);
    Ok(QSqrt::half_power(&BigInt::from(r + 1), e).scale(&BigRational::from_integer(two)))
}

/// `2^{d²/4} ((d/2)+1)^{(3d²+4d)/8}`, the degree-only cap on `C15(r)` for `r ≤ d/2`.
pub fn c15_cap(d: u64) -> PosReal {
    let dd = rq(d as i64);
    let e1 = &dd * &dd / rq(4);
    let e2 = (rq(3) * &dd * &dd + rq(4) * &dd) / rq(8);
    let base = (&dd + rq(2)) / rq(2);
    PosReal::from_int(2).powr(&e1).mul(&PosReal::from_rational(&base).powr(&e2))
}

/// Put the polynomial of larger degree first.
fn oriented<'a>(p: &'a IntPoly, q: &'a IntPoly) -> (&'a IntPoly, &'a IntPoly) {
    if !q.is_zero() && (p.is_zero() || q.degree() > p.degree()) {
        (q, p)
    } else {
        (p, q)
    }
}

fn check_coprime(p: &IntPoly, q: &IntPoly) -> Result<usize> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.gcd(q).degree() > 0 {
        return Err(Error::NotCoprime);
    }
    let r = p.degree().max(q.degree());
    if r < 1 {
        return Err(Error::invalid("need max(deg P, deg Q) >= 1"));
    }
    Ok(r)
}

/// `ϱ = |c_P^{r-s} Res(P, Q)|` with `P` the polynomial of larger degree `r`.
pub fn resultant_gcd_bound(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    check_coprime(p, q)?;
    let (p, q) = oriented(p, q);
    let (r, s) = (p.degree(), q.degree());
    let res = p.resultant(q)?;
    Ok((num_traits::pow(p.leading(), r - s) * res).abs())
}

/// `(r+1)^r h^{2r}`.
pub fn resultant_gcd_cap(r: usize, h: &BigInt) -> BigInt {
    num_traits::pow(BigInt::from(r + 1), r) * num_traits::pow(h.clone(), 2 * r)
}

/// `(P(a,b), Q(a,b))` homogenized at degree `max(deg P, deg Q)`.
pub fn homogeneous_values(p: &IntPoly, q: &IntPoly, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let r = p.degree().max(q.degree());
    (p.eval_homogeneous(a, b, r), q.eval_homogeneous(a, b, r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoFormsCase {
    /// The smaller-degree polynomial is constant.
    ConstantSecond,
    General,
}

/// Lower bounds for the two-forms constant `C(P, Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForms {
    pub case: TwoFormsCase,
    pub r: usize,
    /// Rounded-down enclosure of `C(P, Q)` from the root data.
    pub direct: BigRational,
    /// Rounded-down closed form of the matching case.
    pub floor: BigRational,
    pub value: BigRational,
}

/// `C(P, Q)` for the factorizations `P = ∏(α_i x + β_i y)`, `Q = ∏(γ_j x + δ_j y)`
/// built from the roots, and the closed-form floor.
pub fn two_forms_constant(p: &IntPoly, q: &IntPoly, prec: u32) -> Result<TwoForms> {
    let r = check_coprime(p, q)?;
    let (p, q) = oriented(p, q);
    let s = q.degree();
    let h = p.height().max(q.height());
    let hq = BigRational::from_integer(h.clone());
    let (case, floor) = if s == 0 {
        let v = QSqrt::half_power(&BigInt::from(r as u64 + 1), -1).scale(&(rq(2) * &hq).recip());
        (TwoFormsCase::ConstantSecond, v.round_down(128))
    } else {
        let ri = r as i64;
        let v = QSqrt::half_power(&BigInt::from(ri + 1), -3 * ri)
            .scale(&BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(2), r)))
            .scale(&num_traits::pow(hq.recip(), 2 * r + 1));
        (TwoFormsCase::General, v.round_down(128))
    };
    let prec = prec.max(64);
    let inv_r = BigRational::new(BigInt::one(), BigInt::from(r as u64));
    let root_r = |c: &BigInt| Ball::from_int(c.abs(), prec).pow_rational(&inv_r).expect("positive");
    let a = root_r(&p.leading());
    let cq = root_r(&q.leading());
    let mu = isolate_roots(&p.squarefree_part(), prec)?;
    let mu: Vec<CBall> = mu.iter().map(|e| e.cball(prec)).collect();
    let nu: Vec<CBall> = if s > 0 {
        isolate_roots(&q.squarefree_part(), prec)?.iter().map(|e| e.cball(prec)).collect()
    } else {
        Vec::new()
    };
    let one = Ball::one(prec);
    let mut sep: Option<Ball> = if s < r { Some(one.clone()) } else { None };
    for m in &mu {
        for n in &nu {
            let dist = (m - n).abs();
            sep = Some(match sep {
                None => dist,
                Some(x) => x.min(&dist),
            });
        }
    }
    let numerator = &(&a * &cq) * &sep.expect("at least one factor pair");
    let mut den: Option<Ball> = None;
    let mut push = |v: Ball| {
        den = Some(match den.take() {
            None => v,
            Some(x) => x.max(&v),
        })
    };
    for m in &mu {
        let bi = &a * &m.abs();
        for n in &nu {
            push((&a + &cq).max(&(&bi + &(&cq * &n.abs()))));
        }
        if s < r {
            push(a.max(&(&bi + &cq)));
        }
    }
    let c = numerator.div(&den.expect("nonempty")).expect("positive denominator");
    let direct = c.lower_rational().max(BigRational::zero());
    let value = if direct > floor { direct.clone() } else { floor.clone() };
    Ok(TwoForms { case, r, direct, floor, value })
}

/// `2^{r²} (r+1)^{3r²/2} h^{2r²+r}`, the denominator of the closed two-forms bound.
pub fn two_forms_closed_denominator(r: usize, h: &BigInt) -> QSqrt {
    let ri = r as i64;
    QSqrt::half_power(&BigInt::from(ri + 1), 3 * ri * ri)
        .scale(&BigRational::from_integer(num_traits::pow(BigInt::from(2), r * r)))
        .scale(&BigRational::from_integer(num_traits::pow(h.clone(), 2 * r * r + r)))
}

/// Image of `x1/y1` under the vanishing relation and the lower bound on its height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingGap {
    pub x2: BigInt,
    pub y2: BigInt,
    pub gcd: BigInt,
    /// Rounded-down `H(x1,y1)^r / (C15 · max{H(P),H(Q)}^{2r²+3r})`.
    pub bound: BigRational,
    pub holds: bool,
}

/// The unique `x2/y2` with `P(x1/y1) + (x2/y2) Q(x1/y1) = 0`, in lowest terms with `y2 > 0`.
pub fn vanishing_gap(p: &IntPoly, q: &IntPoly, x1: &BigInt, y1: &BigInt) -> Result<VanishingGap> {
    let r = check_coprime(p, q)?;
    if !x1.gcd(y1).is_one() {
        return Err(Error::invalid("x1/y1 must be in lowest terms"));
    }
    let (pv, qv) = homogeneous_values(p, q, x1, y1);
    if qv.is_zero() {
        return Err(Error::invalid("Q vanishes at x1/y1"));
    }
    let g = pv.gcd(&qv);
    let (mut x2, mut y2) = (-pv / &g, qv / &g);
    if y2.is_negative() {
        x2 = -x2;
        y2 = -y2;
    }
    let h1 = x1.abs().max(y1.abs());
    let h = p.height().max(q.height());
    let c = c15(r as u64)?.round_up(128);
    let den = c * BigRational::from_integer(num_traits::pow(h, 2 * r * r + 3 * r));
    let bound = BigRational::from_integer(num_traits::pow(h1, r)) / den;
    let h2 = BigRational::from_integer(x2.abs().max(y2.abs()));
    let holds = h2 >= bound;
    Ok(VanishingGap { x2, y2, gcd: g, bound, holds })
}

/// Integers with `β = (sα + t)/(uα + v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MobiusRelation {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub s: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub t: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub u: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub v: BigInt,
}

impl MobiusRelation {
    pub fn det(&self) -> BigInt {
        &self.s * &self.v - &self.t * &self.u
    }

    /// `(sx + ty, ux + vy)` before reduction.
    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.s * x + &self.t * y, &self.u * x + &self.v * y)
    }

    /// Check `β(uα + v) = sα + t` in `ℚ(α)`.
    pub fn verify(&self, alpha: &AlgNum, rep: &PowerBasisRep) -> bool {
        let k = alpha.field();
        let lin = |a: &BigInt, b: &BigInt| {
            RatPoly::new(vec![BigRational::from_integer(b.clone()), BigRational::from_integer(a.clone())])
        };
        let lhs = k.mul(&rep.as_poly(), &lin(&self.u, &self.v));
        let rhs = k.reduce(&lin(&self.s, &self.t));
        !self.det().is_zero() && lhs == rhs
    }
}

/// The relation encoded by a pair with `r = 1`: `P = -(sx + t)`, `Q = ux + v`.
pub fn mobius_from_pair(pair: &MinimalPair) -> Option<MobiusRelation> {
    if pair.r != 1 {
        return None;
    }
    Some(MobiusRelation { s: -pair.p.coeff(1), t: -pair.p.coeff(0), u: pair.q.coeff(1), v: pair.q.coeff(0) })
}

/// `Some` exactly when `r(α, β) = 1`.
pub fn mobius_relation(alpha: &AlgNum, beta: &AlgNum) -> Result<Option<MobiusRelation>> {
    let rep = power_rep(alpha, beta)?;
    let pair = find_pair_robust(alpha, &rep)?;
    Ok(mobius_from_pair(&pair).filter(|m| m.verify(alpha, &rep)))
}

/// Minimal pair with exact height minimization, falling back to the Siegel mode when
/// the enumeration budget runs out.
pub fn find_pair_robust(alpha: &AlgNum, rep: &PowerBasisRep) -> Result<MinimalPair> {
    match minpair::find_pair_rep(alpha, rep, Minimality::Exact) {
        Err(Error::Precision(_)) => minpair::find_pair_rep(alpha, rep, Minimality::SiegelBounded),
        other => other,
    }
}

/// `(sx + ty)/(ux + vy)` in lowest terms with positive denominator.
pub fn derived_approx(x: &BigInt, y: &BigInt, rel: &MobiusRelation) -> Result<(BigInt, BigInt)> {
    let (a, b) = rel.apply(x, y);
    if b.is_zero() {
        return Err(Error::invalid("ux + vy = 0"));
    }
    Ok(normalize_fraction(a, b))
}

/// Reduce `a/b` and make `b > 0`.
pub fn normalize_fraction(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    let g = a.gcd(&b);
    let (mut a, mut b) = (a / &g, b / &g);
    if b.is_negative() {
        a = -a;
        b = -b;
    }
    (a, b)
}

/// Certified consistency of
/// `β - x'/y' = (sv - tu) / ((uα + v)(u x/y + v)) · (α - x/y)` for `β = (sα+t)/(uα+v)`.
pub fn transport_identity(alpha: &AlgNum, x: &BigInt, y: &BigInt, rel: &MobiusRelation, bits: u32) -> Result<bool> {
    let (xp, yp) = derived_approx(x, y, rel)?;
    let prec = bits + 32;
    let a = alpha.cball(bits)?;
    let cb = |n: &BigInt| CBall::from_int(n.clone(), prec);
    let den_a = &(&cb(&rel.u) * &a) + &cb(&rel.v);
    let beta = (&(&cb(&rel.s) * &a) + &cb(&rel.t)).div(&den_a).ok_or_else(|| Error::invalid("uα + v = 0"))?;
    let frac = |n: &BigInt, d: &BigInt| CBall::real(Ball::from_rational(&BigRational::new(n.clone(), d.clone()), prec));
    let lhs = &beta - &frac(&xp, &yp);
    let xi = frac(x, y);
    let den_x = &(&cb(&rel.u) * &xi) + &cb(&rel.v);
    let factor = cb(&rel.det()).div(&(&den_a * &den_x)).ok_or_else(|| Error::invalid("ux + vy = 0"))?;
    let rhs = &factor * &(&a - &xi);
    Ok(lhs.overlaps(&rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Archimedean,
    PAdic,
}

/// A named candidate value for a constant defined as a maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub name: &'static str,
    pub value: PosReal,
}

fn argmax(branches: &[Branch]) -> usize {
    let mut best = 0;
    for (i, b) in branches.iter().enumerate() {
        if b.value.ln().mid() > branches[best].value.ln().mid() {
            best = i;
        }
    }
    best
}

fn max_of(branches: &[Branch]) -> PosReal {
    branches.iter().skip(1).fold(branches[0].value.clone(), |acc, b| acc.max(&b.value))
}

/// `(C1, C2)` or `(C3, C4)` with the branches behind the maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapConstants {
    pub metric: Metric,
    /// `C1` or `C3`.
    pub small: PosReal,
    /// `C2` or `C4`.
    pub big: PosReal,
    pub branches: Vec<Branch>,
    pub argmax: usize,
}

impl GapConstants {
    pub fn labels(&self) -> (&'static str, &'static str) {
        match self.metric {
            Metric::Archimedean => ("C1", "C2"),
            Metric::PAdic => ("C3", "C4"),
        }
    }
}

/// Validate `d >= 3` and `(d/2) + 1 < μ < d`.
pub fn check_mu(d: usize, mu: &BigRational) -> Result<()> {
    if d < 3 {
        return Err(Error::Hypothesis(format!("degree {d} < 3")));
    }
    let lo = rq(d as i64) / rq(2) + rq(1);
    if !(mu > &lo && mu < &rq(d as i64)) {
        return Err(Error::Hypothesis(format!("mu = {mu} outside ({lo}, {d})")));
    }
    Ok(())
}

fn check_c0(c0: &BigRational) -> Result<()> {
    if !c0.is_positive() {
        return Err(Error::Hypothesis("C0 must be positive".into()));
    }
    Ok(())
}

/// Inputs of the archimedean constants.
#[derive(Clone, Debug)]
pub struct ArchInputs {
    pub d: usize,
    pub c6: BigRational,
    pub c12: BigRational,
    pub c13: BigRational,
    pub abs_alpha: Ball,
    pub abs_beta: Ball,
}

/// Degree-only exponents shared by the third branches: `d²μ/4`, `(3d²+4d)μ/8`, `(d²+3d)μ/2`.
fn big_exponents(d: usize, mu: &BigRational) -> (BigRational, BigRational, BigRational) {
    let dd = rq(d as i64);
    (
        &dd * &dd * mu / rq(4),
        (rq(3) * &dd * &dd + rq(4) * &dd) * mu / rq(8),
        (&dd * &dd + rq(3) * &dd) * mu / rq(2),
    )
}

/// `C1` and `C2` of the archimedean gap principle.
pub fn archimedean_constants_from(inp: &ArchInputs, mu: &BigRational, c0: &BigRational) -> Result<GapConstants> {
    check_mu(inp.d, mu)?;
    check_c0(c0)?;
    let d = inp.d;
    let half_d = rq(d as i64) / rq(2);
    let l2 = ln2(LOG_PREC);
    let lc0 = ln_q(c0);
    let lc12 = ln_q(&inp.c12);
    let lc13 = ln_q(&inp.c13);
    let lc6 = ln_q(&inp.c6);
    let max1 = inp.abs_alpha.set_prec(LOG_PREC).max(&Ball::one(LOG_PREC));
    let lmax = max1.ln().expect("at least one");
    let lhalf1 = ln_q(&(&half_d + rq(1)));
    let two_beta = (&ball_i(2) + &inp.abs_beta.set_prec(LOG_PREC)).ln().expect("positive");
    let big = &(&(&(&lc0 + &(&ball_q(&(&half_d + rq(1))) * &l2)) + &two_beta) + &lc12) + &(&ball_q(&half_d) * &lmax);
    let mu_b = ball_q(mu);
    let a = lc0.div(&mu_b).expect("positive");
    let b_num = &(&(&(&(&(&ball_q(&(&half_d + rq(3))) * &l2) + &lhalf1) + &lc0) + &(&ball_i(2) * &lc12)) - &lc13)
        + &(&ball_i(d as i64) * &lmax);
    let b = b_num.div(&mu_b).expect("positive");
    let (e1, e2, e3) = big_exponents(d, mu);
    let c_num = &(&(&(&(&(&(&ball_q(&e1) * &l2) + &(&ball_q(&e2) * &lhalf1)) + &lc0) - &lc6) - &lc13)
        + &(&ball_q(&(e3 + rq(2))) * &lc12))
        + &(&ball_i(d as i64) * &lmax);
    let c = c_num.div(&ball_q(&(rq(2) * mu - rq(d as i64)))).expect("positive");
    let branches = vec![
        Branch { name: "C0^(1/mu)", value: PosReal::from_ln(a) },
        Branch { name: "wronskian", value: PosReal::from_ln(b) },
        Branch { name: "liouville", value: PosReal::from_ln(c) },
    ];
    Ok(GapConstants {
        metric: Metric::Archimedean,
        small: max_of(&branches),
        big: PosReal::from_ln(big),
        argmax: argmax(&branches),
        branches,
    })
}

/// Inputs of the p-adic constants.
#[derive(Clone, Debug)]
pub struct PadicInputs {
    pub d: usize,
    pub c7: BigRational,
    pub c12: BigRational,
    pub c14: BigRational,
    pub c_alpha: BigInt,
    pub c_beta: BigInt,
}

/// `C3` and `C4` of the p-adic gap principle.
pub fn nonarchimedean_constants_from(inp: &PadicInputs, mu: &BigRational, c0: &BigRational) -> Result<GapConstants> {
    check_mu(inp.d, mu)?;
    check_c0(c0)?;
    let d = inp.d as i64;
    let half_d = rq(d) / rq(2);
    let l2 = ln2(LOG_PREC);
    let lc0 = ln_q(c0);
    let lc12 = ln_q(&inp.c12);
    let lc14 = ln_q(&inp.c14);
    let lc7 = ln_q(&inp.c7);
    let lca = ln_big(&inp.c_alpha);
    let lcb = ln_big(&inp.c_beta);
    let big = &(&(&(&ln_i(d + 2) + &lc0) + &lc12) + &(&ball_q(&half_d) * &lca)) + &lcb;
    let mu_b = ball_q(mu);
    let a = lc0.div(&mu_b).expect("positive");
    let b_num = &(&(&l2 + &lc0) - &lc14) + &(&ball_q(&BigRational::new((3 * d - 4).into(), 2.into())) * &lca);
    let b = b_num.div(&mu_b).expect("positive");
    let (e1, e2, e3) = big_exponents(inp.d, mu);
    let lhalf1 = ln_q(&(&half_d + rq(1)));
    let c_num = &(&(&(&(&(&(&ball_q(&e1) * &l2) + &(&ball_q(&e2) * &lhalf1)) + &(&ball_i(d - 1) * &lca)) + &lc0)
        - &lc7)
        + &(&ball_q(&e3) * &lc12))
        - &lc14;
    let c = c_num.div(&ball_q(&(rq(2) * mu - rq(d)))).expect("positive");
    let branches = vec![
        Branch { name: "C0^(1/mu)", value: PosReal::from_ln(a) },
        Branch { name: "wronskian", value: PosReal::from_ln(b) },
        Branch { name: "liouville", value: PosReal::from_ln(c) },
    ];
    Ok(GapConstants {
        metric: Metric::PAdic,
        small: max_of(&branches),
        big: PosReal::from_ln(big),
        argmax: argmax(&branches),
        branches,
    })
}

/// `C11 = max_{i≠j} (2 C0 / |α_i - α_j|)^{1/μ}` over the given archimedean numbers.
pub fn c11_archimedean(alphas: &[AlgNum], mu: &BigRational, c0: &BigRational) -> Result<PosReal> {
    if alphas.len() < 2 {
        return Err(Error::invalid("C11 needs at least two numbers"));
    }
    let mut dists = Vec::new();
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            let mut bits = 64;
            loop {
                let dist = (&alphas[i].cball(bits)? - &alphas[j].cball(bits)?).abs();
                if dist.is_positive() {
                    dists.push(dist);
                    break;
                }
                bits *= 2;
                if bits > 1 << 13 {
                    return Err(Error::invalid("numbers are not distinct"));
                }
            }
        }
    }
    c11_from_distances(&dists, mu, c0)
}

/// [`c11_archimedean`] from certified pairwise distances.
pub fn c11_from_distances(dists: &[Ball], mu: &BigRational, c0: &BigRational) -> Result<PosReal> {
    check_c0(c0)?;
    let two_c0 = PosReal::from_rational(&(rq(2) * c0));
    let inv_mu = mu.recip();
    let mut best: Option<PosReal> = None;
    for dist in dists {
        let v = two_c0.div(&PosReal::from_ball(dist).expect("positive distance")).powr(&inv_mu);
        best = Some(match best {
            None => v,
            Some(b) => b.max(&v),
        });
    }
    best.ok_or_else(|| Error::invalid("no distances"))
}

/// `|α - β|_p` for two simple roots in `ℤ_p`, found by lifting until they differ.
pub fn padic_distance(a: &PadicAlgNum, b: &PadicAlgNum) -> Result<PadicAbs> {
    if a.prime() != b.prime() {
        return Err(Error::invalid("different primes"));
    }
    for k in [8u32, 32, 128, 512] {
        let m = a.modulus(k);
        let diff = (a.lift(k) - b.lift(k)).mod_floor(&m);
        if !diff.is_zero() {
            let mut v = 0;
            let mut w = diff;
            while (&w % a.prime()).is_zero() {
                w /= a.prime();
                v += 1;
            }
            return Ok(PadicAbs::Exact { prime: a.prime().clone(), valuation: v });
        }
    }
    Err(Error::invalid("p-adic numbers agree to 512 digits"))
}

/// `C11` over p-adic numbers.
pub fn c11_padic(xis: &[PadicAlgNum], mu: &BigRational, c0: &BigRational) -> Result<PosReal> {
    if xis.len() < 2 {
        return Err(Error::invalid("C11 needs at least two numbers"));
    }
    let mut dists = Vec::new();
    for i in 0..xis.len() {
        for j in i + 1..xis.len() {
            let v = padic_distance(&xis[i], &xis[j])?.value().expect("exact");
            dists.push(ball_q(&v));
        }
    }
    c11_from_distances(&dists, mu, c0)
}

/// Thue–Siegel parameters for `a = 1/500` and the certified side conditions.
#[derive(Clone, Debug)]
pub struct ThueSiegelParams {
    pub d: usize,
    pub a: BigRational,
    pub t: Ball,
    pub tau: Ball,
    pub lambda: Ball,
    pub delta: Ball,
    pub delta_inv: Ball,
    /// `A = 500² (log max M + d/2)`.
    pub big_a: Ball,
    pub lambda_below_1_42_sqrt_d: bool,
    pub delta_inv_below_41667_d2: bool,
    pub t_in_interval: bool,
    pub tau_in_interval: bool,
    pub lambda_below_d: bool,
}

impl ThueSiegelParams {
    pub fn all_certified(&self) -> bool {
        self.lambda_below_1_42_sqrt_d
            && self.delta_inv_below_41667_d2
            && self.t_in_interval
            && self.tau_in_interval
            && self.lambda_below_d
    }

    /// `A_i = t²/(2 - d t²) (log M(α_i) + d/2)`.
    pub fn a_i(&self, ln_mahler: &Ball) -> Ball {
        let prec = self.t.prec();
        let t2 = self.t.sqr();
        let den = &Ball::from_i64(2, prec) - &(&Ball::from_i64(self.d as i64, prec) * &t2);
        let k = t2.div(&den).expect("positive");
        &k * &(ln_mahler + &ball_q(&(rq(self.d as i64) / rq(2))))
    }
}

/// `t = √(2/(d+a²))`, `τ = 2at`, `λ = 2/((1-2a)t)`, `δ = 6a²/((d+a²)(d-1))`.
pub fn thue_siegel_params(d: usize, ln_mahler_max: &Ball) -> Result<ThueSiegelParams> {
    if d < 3 {
        return Err(Error::Hypothesis(format!("degree {d} < 3")));
    }
    let prec = LOG_PREC;
    let a = BigRational::new(1.into(), 500.into());
    let ab = ball_q(&a);
    let db = ball_i(d as i64);
    let a2 = ab.sqr();
    let t = ball_i(2).div(&(&db + &a2)).expect("positive").sqrt().expect("positive");
    let tau = &(&ball_i(2) * &ab) * &t;
    let one = Ball::one(prec);
    let lambda = ball_i(2).div(&(&(&one - &(&ball_i(2) * &ab)) * &t)).expect("positive");
    let lambda_direct = ball_i(2).div(&(&t - &tau)).expect("positive");
    debug_assert!(lambda.overlaps(&lambda_direct));
    let delta = (&ball_i(6) * &a2).div(&(&(&db + &a2) * &(&db - &one))).expect("positive");
    let delta_formula = (&(&(&db * &t.sqr()) + &tau.sqr()) - &ball_i(2)).div(&(&db - &one)).expect("d > 1");
    debug_assert!(delta.overlaps(&delta_formula));
    let delta_inv = delta.recip().expect("positive");
    let big_a = &ball_i(250000) * &(ln_mahler_max + &ball_q(&(rq(d as i64) / rq(2))));
    let sqrt_d = db.sqrt().expect("positive");
    let c142 = ball_q(&BigRational::new(142.into(), 100.into()));
    let lambda_ok = lambda.lt(&(&c142 * &sqrt_d)) == Some(true);
    let d2 = &db * &db;
    let delta_ok = delta_inv.lt(&(&ball_i(41667) * &d2)) == Some(true);
    let dcube = &d2 * &db;
    let inner = &(&(&ball_i(2) * &dcube) + &(&ball_i(2) * &d2)) - &(&ball_i(4) * &db);
    let t_lo = (&ball_i(2) + &inner.sqrt().expect("positive")).div(&(&db * &(&db + &one))).expect("positive");
    let t_hi = ball_i(2).div(&db).expect("positive").sqrt().expect("positive");
    let t_ok = t_lo.lt(&t) == Some(true) && t.lt(&t_hi) == Some(true);
    let tau_lo_sq = &ball_i(2) - &(&db * &t.sqr());
    let tau_lo = tau_lo_sq.sqrt();
    let tau_hi = &t - &ball_i(2).div(&db).expect("positive");
    let tau_ok = tau_lo.is_some_and(|lo| lo.lt(&tau) == Some(true)) && tau.lt(&tau_hi) == Some(true);
    let lambda_below_d = lambda.lt(&db) == Some(true);
    Ok(ThueSiegelParams {
        d,
        a,
        t,
        tau,
        lambda,
        delta,
        delta_inv,
        big_a,
        lambda_below_1_42_sqrt_d: lambda_ok,
        delta_inv_below_41667_d2: delta_ok,
        t_in_interval: t_ok,
        tau_in_interval: tau_ok,
        lambda_below_d,
    })
}

/// Enclosure of the upper bound `δ⁻¹(log(4e^{A1}) + log H1) - log(4e^{A2})` on `log H2`.
pub fn thue_siegel_conclusion(params: &ThueSiegelParams, a1: &Ball, a2: &Ball, ln_h1: &Ball) -> Ball {
    let l4 = ln_i(4);
    let lhs = &(&l4 + a1) + ln_h1;
    &(&params.delta_inv * &lhs) - &(&l4 + a2)
}

/// Enclosure of `1 + (11.51 + 1.5 log d + log μ) / log(μ - d/2)`.
pub fn count_ratio(d: &BigInt, mu: &BigRational, prec: u32) -> Result<Ball> {
    let dq = BigRational::from_integer(d.clone());
    let e = mu - &dq / rq(2);
    if e <= rq(1) {
        return Err(Error::Hypothesis(format!("mu - d/2 = {e} must exceed 1")));
    }
    let lnr = |x: &BigRational| {
        &Ball::from_int(x.numer().clone(), prec).ln().expect("positive")
            - &Ball::from_int(x.denom().clone(), prec).ln().expect("positive")
    };
    let c = Ball::from_rational(&BigRational::new(1151.into(), 100.into()), prec);
    let num = &(&c + &(&Ball::from_rational(&BigRational::new(3.into(), 2.into()), prec) * &lnr(&dq))) + &lnr(mu);
    Ok(&Ball::one(prec) + &num.div(&lnr(&e)).expect("positive"))
}

/// Certified `⌊1 + (11.51 + 1.5 log d + log μ)/log(μ - d/2)⌋`.
pub fn count_floor(d: &BigInt, mu: &BigRational) -> Result<BigInt> {
    let mut prec = 128;
    while prec <= 1 << 14 {
        if let Some(f) = count_ratio(d, mu, prec)?.floor() {
            return Ok(f);
        }
        prec *= 2;
    }
    Err(Error::Precision("counting ratio sits on an integer".into()))
}

/// `γ · ⌊1 + (11.51 + 1.5 log d + log μ)/log(μ - d/2)⌋`.
pub fn count_bound(d: &BigInt, mu: &BigRational, gamma: u64) -> Result<BigInt> {
    Ok(count_floor(d, mu)? * BigInt::from(gamma))
}

/// `μ = (3d + 2)/4`.
pub fn default_mu(d: &BigInt) -> BigRational {
    BigRational::new(BigInt::from(3) * d + BigInt::from(2), BigInt::from(4))
}

/// Branch values of `C16` and their maximum.
#[derive(Clone, Debug)]
pub struct C16 {
    pub value: PosReal,
    pub branches: Vec<Branch>,
    pub argmax: usize,
    /// `max C2/C4` over the pairs, the `C` of the final adjustment.
    pub big_c: PosReal,
    pub big_a: Ball,
}

/// `C16 = max{C11, max C1/C3, C0^{1/(μ-1.42√d)} (4e^A)^{1.42√d/(μ-1.42√d)}, C^{2/(E-1)}}`.
pub fn c16(
    d: usize,
    mu: &BigRational,
    c0: &BigRational,
    c11: &PosReal,
    pairwise: &[GapConstants],
    ln_mahler_max: &Ball,
) -> Result<C16> {
    check_mu(d, mu)?;
    check_c0(c0)?;
    if pairwise.is_empty() {
        return Err(Error::invalid("C16 needs at least one pair of numbers"));
    }
    let params = thue_siegel_params(d, ln_mahler_max)?;
    let big_a = params.big_a.clone();
    let l4a = &ln_i(4) + &big_a;
    let lc0 = ln_q(c0);
    if lc0.lt(&-&l4a) != Some(false) {
        return Err(Error::Hypothesis("C0 must exceed (4e^A)^-1".into()));
    }
    let s = &ball_q(&BigRational::new(142.into(), 100.into())) * &ball_i(d as i64).sqrt().expect("positive");
    let gap = &ball_q(mu) - &s;
    if !gap.is_positive() {
        return Err(Error::Hypothesis("mu must exceed 1.42 sqrt(d)".into()));
    }
    let third = (&lc0 + &(&s * &l4a)).div(&gap).expect("positive");
    let small = pairwise.iter().skip(1).fold(pairwise[0].small.clone(), |acc, g| acc.max(&g.small));
    let big_c = pairwise.iter().skip(1).fold(pairwise[0].big.clone(), |acc, g| acc.max(&g.big));
    let e_minus_1 = mu - rq(d as i64) / rq(2) - rq(1);
    let fourth = big_c.powr(&(rq(2) / e_minus_1));
    let branches = vec![
        Branch { name: "C11", value: c11.clone() },
        Branch { name: "gap", value: small },
        Branch { name: "thue-siegel", value: PosReal::from_ln(third) },
        Branch { name: "iteration", value: fourth },
    ];
    Ok(C16 { value: max_of(&branches), argmax: argmax(&branches), branches, big_c, big_a })
}

/// Quality of a rational approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quality {
    /// Enclosure of `|ξ - x/y|`.
    Real(Ball),
    /// `|yξ - x|_p`.
    PAdic(PadicAbs),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxPair {
    pub x: BigInt,
    pub y: BigInt,
    pub quality: Quality,
}

impl ApproxPair {
    pub fn height(&self) -> BigInt {
        self.x.abs().max(self.y.abs())
    }

    /// `|target - x/y|` enclosed with radius about `2^-bits`.
    pub fn real(target: &AlgNum, x: &BigInt, y: &BigInt, bits: u32) -> Result<ApproxPair> {
        if y.is_zero() || !x.gcd(y).is_one() {
            return Err(Error::invalid("approximation must be a reduced fraction"));
        }
        let mut b = bits;
        loop {
            let prec = b + 32;
            let xi = CBall::real(Ball::from_rational(&BigRational::new(x.clone(), y.clone()), prec));
            let dist = (&target.cball(b)? - &xi).abs();
            if dist.is_positive() || b >= 1 << 14 {
                return Ok(ApproxPair { x: x.clone(), y: y.clone(), quality: Quality::Real(dist) });
            }
            b *= 2;
        }
    }

    /// `|y β - x|_p` for `β` given in the power basis of the p-adic `α`, lifted to `p^k`.
    pub fn padic(xi: &PadicAlgNum, elem: &RatPoly, x: &BigInt, y: &BigInt, k: u32) -> Result<ApproxPair> {
        if y.is_zero() || !x.gcd(y).is_one() {
            return Err(Error::invalid("approximation must be a reduced fraction"));
        }
        let quality = Quality::PAdic(padic_abs_element(xi, elem, x, y, k)?);
        Ok(ApproxPair { x: x.clone(), y: y.clone(), quality })
    }

    /// Certified `quality < C0 / H^μ`.
    pub fn within(&self, c0: &BigRational, mu: &BigRational) -> Option<bool> {
        let thr = PosReal::from_rational(c0).div(&PosReal::from_int(self.height()).powr(mu));
        match &self.quality {
            Quality::Real(b) => {
                if !b.is_positive() {
                    return None;
                }
                PosReal::from_ball(b)?.lt(&thr)
            }
            Quality::PAdic(PadicAbs::Exact { prime, valuation }) => {
                let v = PosReal::from_int(prime.clone()).powr(&rq(-(*valuation as i64)));
                v.lt(&thr)
            }
            Quality::PAdic(PadicAbs::AtLeast { prime, valuation }) => {
                let v = PosReal::from_int(prime.clone()).powr(&rq(-(*valuation as i64)));
                if v.lt(&thr) == Some(true) { Some(true) } else { None }
            }
        }
    }
}

/// `|y β - x|_p` with `β = Σ b_i α^i` for the p-adic `α`; the denominators of `b_i` must be prime to `p`.
pub fn padic_abs_element(xi: &PadicAlgNum, elem: &RatPoly, x: &BigInt, y: &BigInt, k: u32) -> Result<PadicAbs> {
    let den = elem.denominator();
    if (&den % xi.prime()).is_zero() {
        return Err(Error::invalid("representation has a denominator divisible by p"));
    }
    let scaled = elem.scale(&BigRational::from_integer(den.clone() * y));
    let mut coeffs: Vec<BigInt> = scaled.coeffs().iter().map(|c| c.to_integer()).collect();
    if coeffs.is_empty() {
        coeffs.push(BigInt::zero());
    }
    coeffs[0] -= &den * x;
    Ok(xi.abs_of_poly(&IntPoly::new(coeffs), k))
}

/// Tri-state hypothesis flags of a dichotomy check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub approx1: Option<bool>,
    pub approx2: Option<bool>,
    /// `H(x2,y2) >= H(x1,y1) >= C_small`.
    pub heights: Option<bool>,
}

impl Hypotheses {
    /// Three-valued conjunction.
    pub fn all(&self) -> Option<bool> {
        let v = [self.approx1, self.approx2, self.heights];
        if v.contains(&Some(false)) {
            Some(false)
        } else if v.iter().all(|x| *x == Some(true)) {
            Some(true)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// `H(x2,y2) > C_big⁻¹ H(x1,y1)^{μ-d/2}`.
    GapHolds,
    /// `x2/y2 = (s x1 + t y1)/(u x1 + v y1)` for the Möbius relation of `(α, β)`.
    MobiusCase,
    Both,
    /// Hypotheses certified and neither conclusion holds.
    Violation,
    /// Neither conclusion holds, but the hypotheses fail too.
    HypothesesUnmet,
    /// Enclosures too wide to decide.
    Abstain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub hypotheses: Hypotheses,
    pub gap: Option<bool>,
    pub mobius: bool,
    /// `C_big⁻¹ H(x1,y1)^{μ-d/2}`.
    pub gap_bound: PosReal,
    pub verdict: Verdict,
}

/// Evaluate both conclusions of the dichotomy and the hypotheses for one pair.
pub fn check_gap_dichotomy(
    d: usize,
    mu: &BigRational,
    c0: &BigRational,
    mobius: Option<&MobiusRelation>,
    pair1: &ApproxPair,
    pair2: &ApproxPair,
    constants: &GapConstants,
) -> DichotomyReport {
    let h1 = pair1.height();
    let h2 = pair2.height();
    let e = mu - rq(d as i64) / rq(2);
    let ph1 = PosReal::from_int(h1.clone());
    let ph2 = PosReal::from_int(h2.clone());
    let gap_bound = ph1.powr(&e).div(&constants.big);
    let gap = gap_bound.lt(&ph2);
    let mobius_hit = mobius.is_some_and(|m| {
        let (a, b) = m.apply(&pair1.x, &pair1.y);
        !b.is_zero() && &a * &pair2.y == &b * &pair2.x
    });
    let heights = if h2 < h1 {
        Some(false)
    } else {
        ph1.lt(&constants.small).map(|below| !below)
    };
    let hypotheses = Hypotheses { approx1: pair1.within(c0, mu), approx2: pair2.within(c0, mu), heights };
    let verdict = match (gap, mobius_hit) {
        (Some(true), true) => Verdict::Both,
        (Some(true), false) => Verdict::GapHolds,
        (_, true) => Verdict::MobiusCase,
        (g, false) => match hypotheses.all() {
            Some(false) => Verdict::HypothesesUnmet,
            Some(true) if g == Some(false) => Verdict::Violation,
            _ => Verdict::Abstain,
        },
    };
    DichotomyReport { hypotheses, gap, mobius: mobius_hit, gap_bound, verdict }
}

/// Everything needed to run dichotomy checks for one `(α, β)`.
#[derive(Clone, Debug)]
pub struct GapInstance {
    pub metric: Metric,
    pub mu: BigRational,
    pub c0: BigRational,
    /// Field generator; the embedding matters only for the archimedean metric.
    pub alpha: AlgNum,
    pub padic: Option<PadicAlgNum>,
    pub beta: Option<AlgNum>,
    pub rep: PowerBasisRep,
    pub pair: MinimalPair,
    pub mobius: Option<MobiusRelation>,
    pub c12: minpair::C12,
    pub wronskian: minpair::WronskianBound,
    /// `C6` or `C7`.
    pub liouville: BigRational,
    pub constants: GapConstants,
}

impl GapInstance {
    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    /// Instance for `α ∈ ℂ` and `β ∈ ℚ(α)`.
    pub fn archimedean(alpha: &AlgNum, beta: &AlgNum, mu: &BigRational, c0: &BigRational) -> Result<GapInstance> {
        check_mu(alpha.degree(), mu)?;
        if beta.is_rational() {
            return Err(Error::Rational);
        }
        let rep = power_rep(alpha, beta)?;
        let pair = find_pair_robust(alpha, &rep)?;
        let c12 = minpair::c12(alpha, &rep, &pair)?;
        let wronskian = minpair::c13(alpha, &pair, &c12.value, 64)?;
        let c6 = liouville_c6(alpha, 64)?;
        let inputs = ArchInputs {
            d: alpha.degree(),
            c6: c6.clone(),
            c12: c12.value.clone(),
            c13: wronskian.value.clone(),
            abs_alpha: alpha.abs(64)?,
            abs_beta: beta.abs(64)?,
        };
        let constants = archimedean_constants_from(&inputs, mu, c0)?;
        let mobius = mobius_from_pair(&pair).filter(|m| m.verify(alpha, &rep));
        Ok(GapInstance {
            metric: Metric::Archimedean,
            mu: mu.clone(),
            c0: c0.clone(),
            alpha: alpha.clone(),
            padic: None,
            beta: Some(beta.clone()),
            rep,
            pair,
            mobius,
            c12,
            wronskian,
            liouville: c6,
            constants,
        })
    }

    /// Instance for a p-adic `α` and `β = Σ b_i α^i`.
    pub fn padic(xi: &PadicAlgNum, beta: &RatPoly, mu: &BigRational, c0: &BigRational) -> Result<GapInstance> {
        let d = xi.degree();
        check_mu(d, mu)?;
        let alpha = AlgNum::new(xi.minpoly(), 0)?;
        let k = alpha.field();
        let elem = k.reduce(beta);
        if elem.degree() == 0 {
            return Err(Error::Rational);
        }
        let mut coeffs = elem.coeffs().to_vec();
        coeffs.resize(d, BigRational::zero());
        let rep = PowerBasisRep::new(coeffs);
        let pair = find_pair_robust(&alpha, &rep)?;
        let c12 = minpair::c12(&alpha, &rep, &pair)?;
        let wronskian = minpair::c14(xi, &pair, &c12.value);
        let c7 = crate::algnum::padic::liouville_c7(xi);
        let c_beta = k.minpoly(&elem).leading();
        let inputs = PadicInputs {
            d,
            c7: c7.clone(),
            c12: c12.value.clone(),
            c14: wronskian.value.clone(),
            c_alpha: xi.leading().abs(),
            c_beta,
        };
        let constants = nonarchimedean_constants_from(&inputs, mu, c0)?;
        let mobius = mobius_from_pair(&pair).filter(|m| m.verify(&alpha, &rep));
        Ok(GapInstance {
            metric: Metric::PAdic,
            mu: mu.clone(),
            c0: c0.clone(),
            alpha,
            padic: Some(xi.clone()),
            beta: None,
            rep,
            pair,
            mobius,
            c12,
            wronskian,
            liouville: c7,
            constants,
        })
    }

    fn approx(&self, second: bool, x: &BigInt, y: &BigInt, level: u32) -> Result<ApproxPair> {
        match (&self.padic, second) {
            (Some(xi), false) => ApproxPair::padic(xi, &RatPoly::monomial(BigRational::one(), 1), x, y, 24 << level),
            (Some(xi), true) => ApproxPair::padic(xi, &self.rep.as_poly(), x, y, 24 << level),
            (None, false) => ApproxPair::real(&self.alpha, x, y, 96 << level),
            (None, true) => ApproxPair::real(self.beta.as_ref().expect("archimedean beta"), x, y, 96 << level),
        }
    }

    /// Run the dichotomy check for `x1/y1 ≈ α` and `x2/y2 ≈ β`, refining while undecided.
    pub fn check(&self, a1: (&BigInt, &BigInt), a2: (&BigInt, &BigInt)) -> Result<DichotomyReport> {
        let mut report = None;
        for level in 0..4 {
            let p1 = self.approx(false, a1.0, a1.1, level)?;
            let p2 = self.approx(true, a2.0, a2.1, level)?;
            let r = check_gap_dichotomy(
                self.degree(),
                &self.mu,
                &self.c0,
                self.mobius.as_ref(),
                &p1,
                &p2,
                &self.constants,
            );
            let done = r.verdict != Verdict::Abstain;
            report = Some(r);
            if done {
                break;
            }
        }
        Ok(report.expect("at least one attempt"))
    }
}

/// Result of the classical `2 y2 > y1^{μ-1}` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicGap {
    /// Pairs certified to satisfy `|α - x/y| < y^{-μ}`.
    pub survivors: Vec<(BigInt, BigInt)>,
    /// Consecutive survivor pairs checked.
    pub checked: usize,
    pub failures: Vec<((BigInt, BigInt), (BigInt, BigInt))>,
    /// Pairs whose quality could not be decided.
    pub undecided: usize,
}

/// Filter `pairs` (sorted by increasing positive denominator, distinct) by the
/// approximation inequality and check `2 y2 > y1^{μ-1}` for consecutive survivors.
pub fn classic_gap_check(alpha: &AlgNum, pairs: &[(BigInt, BigInt)], mu: &BigRational) -> Result<ClassicGap> {
    for w in pairs.windows(2) {
        if w[1].1 <= w[0].1 {
            return Err(Error::invalid("pairs must have strictly increasing denominators"));
        }
    }
    if pairs.iter().any(|(_, y)| !y.is_positive()) {
        return Err(Error::invalid("denominators must be positive"));
    }
    let mut survivors = Vec::new();
    let mut undecided = 0;
    for (x, y) in pairs {
        let ap = ApproxPair::real(alpha, x, y, 128)?;
        let Quality::Real(dist) = &ap.quality else { unreachable!() };
        let thr = PosReal::from_int(y.clone()).powr(&-mu.clone());
        match PosReal::from_ball(dist).and_then(|d| d.lt(&thr)) {
            Some(true) => survivors.push((x.clone(), y.clone())),
            Some(false) => {}
            None => undecided += 1,
        }
    }
    let mut failures = Vec::new();
    for w in survivors.windows(2) {
        let lhs = PosReal::from_int(BigInt::from(2) * &w[1].1);
        let rhs = PosReal::from_int(w[0].1.clone()).powr(&(mu - rq(1)));
        if rhs.lt(&lhs) != Some(true) {
            failures.push((w[0].clone(), w[1].clone()));
        }
    }
    Ok(ClassicGap { checked: survivors.len().saturating_sub(1), survivors, failures, undecided })
}

/// `f(d) = 1 + (11.51 + 1.5 log d + log((3d+2)/4)) / log((d+2)/4)` as an `f64`.
pub fn f_value(d: f64) -> f64 {
    1.0 + (11.51 + 1.5 * d.ln() + ((3.0 * d + 2.0) / 4.0).ln()) / ((d + 2.0) / 4.0).ln()
}

/// Check that `f` is nonincreasing on `n` log-spaced points of `[lo, hi]`.
pub fn f_nonincreasing(lo: f64, hi: f64, n: usize) -> bool {
    let (a, b) = (lo.ln(), hi.ln());
    let pts: Vec<f64> = (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect();
    pts.windows(2).all(|w| f_value(w[1]) <= f_value(w[0]))
}

/// `H(x, y) = max(|x|, |y|)`.
pub fn height(x: &BigInt, y: &BigInt) -> BigInt {
    x.abs().max(y.abs())
}

/// `ln H` as a ball.
pub fn ln_height(h: &BigInt) -> Ball {
    ln_big(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_high(c)
    }

    #[test]
    fn c15_values() {
        assert_eq!(c15(2).unwrap().round_up(64), rq(104976));
        let one = c15(1).unwrap();
        assert!(!one.is_rational());
        assert!(one.round_up(64) <= BigRational::new(11314.into(), 1000.into()));
        assert!(one.round_down(64) > BigRational::new(11313.into(), 1000.into()));
        assert_eq!(c15(3).unwrap().round_up(64), BigRational::from_integer(num_traits::pow(BigInt::from(2), 42)));
        assert!(c15(0).is_err());
        for d in 2..12u64 {
            let cap = c15_cap(d);
            for r in 1..=d / 2 {
                let v = PosReal::from_rational(&c15(r).unwrap().round_down(64));
                assert_ne!(cap.lt(&v), Some(true), "d={d} r={r}");
            }
        }
    }

    #[test]
    fn resultant_bound_examples() {
        assert_eq!(resultant_gcd_bound(&p(&[1, 0, -2]), &p(&[1])).unwrap(), BigInt::one());
        assert_eq!(resultant_gcd_bound(&p(&[-1, 0, 2]), &p(&[1])).unwrap(), BigInt::one());
        assert_eq!(resultant_gcd_bound(&p(&[1]), &p(&[-1, 0, 2])).unwrap(), BigInt::one());
        assert!(resultant_gcd_bound(&p(&[1, 0, -1]), &p(&[1, -1])).is_err());
    }

    #[test]
    fn two_forms_example() {
        let tf = two_forms_constant(&p(&[-1, 0, 2]), &p(&[1]), 96).unwrap();
        assert_eq!(tf.case, TwoFormsCase::ConstantSecond);
        let f = tf.floor.to_f64().unwrap();
        assert!((f - 1.0 / (4.0 * 3f64.sqrt())).abs() < 1e-9 && f <= 1.0 / (4.0 * 3f64.sqrt()));
        // C = 1 / max(1, √2 + 1) = √2 - 1
        assert!(tf.direct.to_f64().unwrap() <= 2f64.sqrt() - 1.0);
        assert!(tf.direct.to_f64().unwrap() > 2f64.sqrt() - 1.0 - 1e-12);
        assert_eq!(tf.value, tf.direct);
        let g = two_forms_constant(&p(&[1, 0, -2]), &p(&[1, 1]), 96).unwrap();
        assert_eq!(g.case, TwoFormsCase::General);
        assert!(g.value >= g.floor && g.floor.is_positive());
    }

    #[test]
    fn vanishing_gap_examples() {
        let (pp, qq) = (p(&[-1, 0, 2]), p(&[1]));
        let v = vanishing_gap(&pp, &qq, &3.into(), &2.into()).unwrap();
        assert_eq!((v.x2.clone(), v.y2.clone()), (BigInt::from(1), BigInt::from(4)));
        assert!(v.holds);
        let w = vanishing_gap(&pp, &qq, &1.into(), &1.into()).unwrap();
        assert_eq!((w.x2, w.y2), (BigInt::from(-1), BigInt::from(1)));
        assert!(vanishing_gap(&p(&[1, 0]), &p(&[1, -1]), &1.into(), &1.into()).is_err());
    }

    #[test]
    fn derived_approximations() {
        let rel = MobiusRelation { s: 1.into(), t: 1.into(), u: 0.into(), v: 1.into() };
        assert_eq!(derived_approx(&1.into(), &2.into(), &rel).unwrap(), (BigInt::from(3), BigInt::from(2)));
        let id = MobiusRelation { s: 1.into(), t: 0.into(), u: 0.into(), v: 1.into() };
        assert_eq!(derived_approx(&5.into(), &7.into(), &id).unwrap(), (BigInt::from(5), BigInt::from(7)));
        let m = MobiusRelation { s: 2.into(), t: 1.into(), u: 1.into(), v: 1.into() };
        let adj = MobiusRelation { s: 1.into(), t: (-1).into(), u: (-1).into(), v: 2.into() };
        let (a, b) = derived_approx(&4.into(), &3.into(), &m).unwrap();
        assert_eq!(derived_approx(&a, &b, &adj).unwrap(), (BigInt::from(4), BigInt::from(3)));
        let alpha = AlgNum::all_roots(&p(&[1, 0, 0, -2])).unwrap().into_iter().find(|a| a.is_real()).unwrap();
        assert!(transport_identity(&alpha, &5.into(), &4.into(), &m, 128).unwrap());
    }

    #[test]
    fn mobius_detection() {
        let alpha = AlgNum::all_roots(&p(&[1, 0, 0, -2])).unwrap().into_iter().find(|a| a.is_real()).unwrap();
        let k = alpha.field();
        let num = RatPoly::new(vec![rq(1), rq(2)]);
        let den = RatPoly::new(vec![rq(1), rq(1)]);
        let beta = alpha.from_element(&k.mul(&num, &k.inv(&den).unwrap())).unwrap();
        let m = mobius_relation(&alpha, &beta).unwrap().unwrap();
        assert_eq!((m.s.clone(), m.t.clone(), m.u.clone(), m.v.clone()), (2.into(), 1.into(), 1.into(), 1.into()));
        let same = mobius_relation(&alpha, &alpha).unwrap().unwrap();
        assert_eq!((same.s, same.t, same.u, same.v), (1.into(), 0.into(), 0.into(), 1.into()));
        let a15 = AlgNum::new(&p(&[1, -1, -4, 4, 1]), 3).unwrap();
        let b15 = a15.from_element(&RatPoly::new(vec![rq(-2), rq(0), rq(1)])).unwrap();
        assert!(mobius_relation(&a15, &b15).unwrap().is_none());
    }

    #[test]
    fn thue_siegel_small_degrees() {
        let zero = Ball::zero(LOG_PREC);
        let p3 = thue_siegel_params(3, &zero).unwrap();
        assert!(p3.all_certified());
        assert!(p3.lambda.upper().to_f64() < 2.4595);
        assert!(p3.delta_inv.upper().to_f64() < 375003.0);
        assert!(p3.a_i(&zero).overlaps(&p3.big_a));
        assert!(thue_siegel_params(2, &zero).is_err());
        let a = ball_i(7);
        let e = Ball::one(LOG_PREC);
        let bound = thue_siegel_conclusion(&p3, &a, &a, &e);
        let l4a = &ln_i(4) + &a;
        let expect = &(&p3.delta_inv * &(&l4a + &e)) - &l4a;
        assert!(bound.overlaps(&expect));
        let bigger = thue_siegel_conclusion(&p3, &a, &a, &ball_i(2));
        assert_eq!(bound.lt(&bigger), Some(true));
    }

    #[test]
    fn counting_arithmetic() {
        let three = BigInt::from(3);
        assert_eq!(count_floor(&three, &default_mu(&three)).unwrap(), BigInt::from(64));
        assert_eq!(count_bound(&three, &default_mu(&three), 12).unwrap(), BigInt::from(768));
        let big = num_traits::pow(BigInt::from(10), 14);
        assert_eq!(count_floor(&big, &default_mu(&big)).unwrap(), BigInt::from(3));
        assert!(count_floor(&three, &rq(2)).is_err());
        assert!(f_nonincreasing(3.0, 1e15, 400));
    }

    #[test]
    fn c11_two_points() {
        let roots = crate::algnum::AlgNum::all_roots(&p(&[1, 0, -2])).unwrap();
        let c = c11_archimedean(&roots, &rq(2), &rq(1)).unwrap();
        // distance 2√2: (2/(2√2))^{1/2} = 2^{-1/4}
        assert!((c.to_f64() - 2f64.powf(-0.25)).abs() < 1e-12);
        let dist2 = c11_from_distances(&[ball_i(2)], &rq(2), &rq(1)).unwrap();
        assert!(dist2.ln().contains(&crate::exact::Dyadic::zero()));
    }
}
