//! Certified isolation of complex roots of integer polynomials.
//!
//! Approximations come from an Aberth–Ehrlich iteration (first in `f64`, then in
//! multiprecision). They are certified with the Braess–Hadeler inclusion
//! theorem: with `W_i = P(z_i) / (lc ∏_{j≠i} (z_i - z_j))` the disks
//! `D(z_i, d |W_i|)` cover all roots, and when they are pairwise disjoint each
//! contains exactly one. A disk centred on the real axis that isolates a root
//! of a real polynomial isolates a real root. Real roots are refined by Newton
//! steps checked with exact sign evaluation at dyadic endpoints.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ball::{Ball, CBall};
use super::dyadic::{Dyadic, Round};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Precision of the canonical root ordering.
pub const BASE_PREC: u32 = 64;
const MAX_WP: u32 = 1 << 16;

/// A disk certified to contain exactly one root of a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    poly: IntPoly,
    re: Dyadic,
    im: Dyadic,
    radius: Dyadic,
    real: bool,
}

impl RootEnclosure {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn center(&self) -> (&Dyadic, &Dyadic) {
        (&self.re, &self.im)
    }

    pub fn radius(&self) -> &Dyadic {
        &self.radius
    }

    /// Rectangular enclosure of the disk at working precision `prec`.
    pub fn cball(&self, prec: u32) -> CBall {
        let re = Ball::with_radius(self.re.clone(), self.radius.clone(), prec);
        if self.real {
            CBall::real(re)
        } else {
            CBall::new(re, Ball::with_radius(self.im.clone(), self.radius.clone(), prec))
        }
    }

    /// Real enclosure; only meaningful for real roots.
    pub fn real_ball(&self, prec: u32) -> Ball {
        Ball::with_radius(self.re.clone(), self.radius.clone(), prec)
    }

    /// Endpoints of the isolating interval of a real root.
    pub fn real_interval(&self) -> Option<(Dyadic, Dyadic)> {
        if self.real {
            Some((self.re.sub(&self.radius), self.re.add(&self.radius)))
        } else {
            None
        }
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.re.to_f64(), if self.real { 0.0 } else { self.im.to_f64() })
    }

    /// True if the disk of `other` lies inside this disk.
    pub fn contains_disk(&self, other: &RootEnclosure) -> bool {
        let prec = 64;
        let dre = Ball::exact(self.re.sub(&other.re), prec);
        let dim = Ball::exact(self.im.sub(&other.im), prec);
        let dist = (&dre.sqr() + &dim.sqr()).sqrt().expect("nonnegative");
        dist.upper().add(&other.radius) <= self.radius
    }

    /// True if the point `z` lies in the disk (certified for every point of the ball).
    pub fn contains_cball(&self, z: &CBall) -> bool {
        let prec = z.prec().max(64);
        let dre = &z.re - &Ball::exact(self.re.clone(), prec);
        let dim = &z.im - &Ball::exact(self.im.clone(), prec);
        let dist = (&dre.sqr() + &dim.sqr()).sqrt().expect("nonnegative");
        dist.upper() < self.radius
    }

    /// True if the ball `z` is certainly outside the disk.
    pub fn excludes_cball(&self, z: &CBall) -> bool {
        let prec = z.prec().max(64);
        let dre = &z.re - &Ball::exact(self.re.clone(), prec);
        let dim = &z.im - &Ball::exact(self.im.clone(), prec);
        let dist = (&dre.sqr() + &dim.sqr()).sqrt().expect("nonnegative");
        dist.lower() > self.radius
    }

    /// A new enclosure of the same root with radius at most `2^-bits`.
    pub fn refine(&self, bits: u32) -> Result<RootEnclosure> {
        if self.radius <= Dyadic::pow2(-(bits as i64)) {
            return Ok(self.clone());
        }
        if self.real {
            self.refine_real(bits)
        } else {
            self.refine_complex(bits)
        }
    }

    fn refine_real(&self, bits: u32) -> Result<RootEnclosure> {
        let p = &self.poly;
        let dp = p.derivative();
        let (mut lo, mut hi) = self.real_interval().expect("real root");
        let target = Dyadic::pow2(-(bits as i64));
        let slo = p.sign_at(&lo);
        if slo == 0 {
            return Ok(self.point(lo));
        }
        if p.sign_at(&hi) == 0 {
            return Ok(self.point(hi));
        }
        let mag = self.re.msb().max(0) as u32;
        let mut wp = 64 + mag;
        let mut z = self.re.clone();
        for _ in 0..64 {
            if hi.sub(&lo) <= target.mul_pow2(1) {
                break;
            }
            wp = (wp * 2).min(bits + mag + 64);
            // a few Newton steps at the current working precision
            for _ in 0..3 {
                let zb = Ball::exact(z.clone(), wp);
                let num = p.eval_ball(&zb);
                let den = dp.eval_ball(&zb);
                match num.div(&den) {
                    Some(step) => z = z.sub(step.mid()).round(wp, Round::Nearest),
                    None => break,
                }
            }
            let eps = Dyadic::pow2(-(wp as i64) + mag as i64 + 8).min(hi.sub(&lo).mul_pow2(-2));
            let a = z.sub(&eps);
            let b = z.add(&eps);
            if a > lo && b < hi {
                let sa = p.sign_at(&a);
                let sb = p.sign_at(&b);
                if sa == 0 {
                    return Ok(self.point(a));
                }
                if sb == 0 {
                    return Ok(self.point(b));
                }
                if sa != sb {
                    lo = a;
                    hi = b;
                    continue;
                }
            }
            // Newton failed to bracket: fall back to bisection steps
            for _ in 0..8 {
                let m = lo.add(&hi).mul_pow2(-1);
                let sm = p.sign_at(&m);
                if sm == 0 {
                    return Ok(self.point(m));
                }
                if sm == slo {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            z = lo.add(&hi).mul_pow2(-1);
        }
        while hi.sub(&lo) > target.mul_pow2(1) {
            let m = lo.add(&hi).mul_pow2(-1);
            let sm = p.sign_at(&m);
            if sm == 0 {
                return Ok(self.point(m));
            }
            if sm == slo {
                lo = m;
            } else {
                hi = m;
            }
        }
        let c = lo.add(&hi).mul_pow2(-1);
        let r = hi.sub(&lo).mul_pow2(-1);
        Ok(RootEnclosure { poly: p.clone(), re: c, im: Dyadic::zero(), radius: r, real: true })
    }

    fn point(&self, x: Dyadic) -> RootEnclosure {
        RootEnclosure { poly: self.poly.clone(), re: x, im: Dyadic::zero(), radius: Dyadic::zero(), real: true }
    }

    fn refine_complex(&self, bits: u32) -> Result<RootEnclosure> {
        let p = &self.poly;
        let dp = p.derivative();
        let d = p.degree() as i64;
        let mag = self.re.msb().max(self.im.msb()).max(0) as u32;
        let mut wp = (bits + mag + 48).max(96);
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        while wp <= MAX_WP {
            for _ in 0..60 {
                let z = CBall::new(Ball::exact(re.clone(), wp), Ball::exact(im.clone(), wp));
                let Some(step) = p.eval_cball(&z).div(&dp.eval_cball(&z)) else { break };
                re = re.sub(step.re.mid()).round(wp, Round::Nearest);
                im = im.sub(step.im.mid()).round(wp, Round::Nearest);
                let sz = step.re.mid().abs().add(&step.im.mid().abs());
                if sz < Dyadic::pow2(-(wp as i64) + mag as i64 + 4) {
                    break;
                }
            }
            let z = CBall::new(Ball::exact(re.clone(), wp), Ball::exact(im.clone(), wp));
            if let Some(q) = p.eval_cball(&z).div(&dp.eval_cball(&z)) {
                let r = q.abs().upper().mul(&Dyadic::from_int(d)).round(30, Round::Up);
                let cand = RootEnclosure { poly: p.clone(), re: re.clone(), im: im.clone(), radius: r.clone(), real: false };
                if r <= Dyadic::pow2(-(bits as i64)) && self.contains_disk(&cand) {
                    return Ok(cand);
                }
            }
            wp *= 2;
        }
        Err(Error::Precision(format!("could not refine complex root of {}", self.poly)))
    }
}

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C64) -> C64 {
        C64 { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn div(self, o: C64) -> C64 {
        let n = o.re * o.re + o.im * o.im;
        C64 { re: (self.re * o.re + self.im * o.im) / n, im: (self.im * o.re - self.re * o.im) / n }
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

fn aberth_f64(p: &IntPoly) -> Option<Vec<C64>> {
    let d = p.degree();
    let lc = p.leading().to_f64()?;
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY) / lc).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let mut bound: f64 = 0.0;
    for k in 1..=d {
        bound = bound.max(c[d - k].abs().powf(1.0 / k as f64));
    }
    let r0 = (2.0 * bound).max(1e-3);
    let mut z: Vec<C64> = (0..d)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.7;
            C64 { re: r0 * t.cos(), im: r0 * t.sin() }
        })
        .collect();
    let eval = |x: C64| -> (C64, C64) {
        let mut v = C64 { re: 0.0, im: 0.0 };
        let mut dv = C64 { re: 0.0, im: 0.0 };
        for a in c.iter().rev() {
            dv = dv.mul(x).add(v);
            v = v.mul(x).add(C64 { re: *a, im: 0.0 });
        }
        (v, dv)
    };
    for _ in 0..2000 {
        let mut maxstep: f64 = 0.0;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v.abs() == 0.0 {
                continue;
            }
            let ratio = v.div(dv);
            let mut s = C64 { re: 0.0, im: 0.0 };
            for j in 0..d {
                if j != i {
                    s = s.add(C64 { re: 1.0, im: 0.0 }.div(z[i].sub(z[j])));
                }
            }
            let w = ratio.div(C64 { re: 1.0, im: 0.0 }.sub(ratio.mul(s)));
            if !w.finite() {
                continue;
            }
            z[i] = z[i].sub(w);
            maxstep = maxstep.max(w.abs() / (1.0 + z[i].abs()));
        }
        if maxstep < 1e-15 {
            break;
        }
    }
    if z.iter().all(|x| x.finite()) {
        Some(z)
    } else {
        None
    }
}

fn cpoint(re: &Dyadic, im: &Dyadic, wp: u32) -> CBall {
    CBall::new(Ball::exact(re.clone(), wp), Ball::exact(im.clone(), wp))
}

/// One sweep of multiprecision Aberth corrections; returns the largest relative step (log2).
fn aberth_mp_sweep(p: &IntPoly, dp: &IntPoly, z: &mut [(Dyadic, Dyadic)], wp: u32) -> i64 {
    let d = z.len();
    let mut worst = i64::MIN;
    for i in 0..d {
        let zi = cpoint(&z[i].0, &z[i].1, wp);
        let v = p.eval_cball(&zi);
        let dv = dp.eval_cball(&zi);
        let Some(ratio) = v.div(&dv) else { continue };
        let mut s = CBall::zero(wp);
        let mut ok = true;
        for j in 0..d {
            if j == i {
                continue;
            }
            let diff = &zi - &cpoint(&z[j].0, &z[j].1, wp);
            match diff.recip() {
                Some(r) => s = &s + &r,
                None => ok = false,
            }
        }
        if !ok {
            // coincident approximations: nudge
            z[i].0 = z[i].0.add(&Dyadic::pow2(-(wp as i64) / 2));
            z[i].1 = z[i].1.add(&Dyadic::pow2(-(wp as i64) / 3));
            worst = i64::MAX;
            continue;
        }
        let den = &CBall::one(wp) - &(&ratio * &s);
        let Some(w) = ratio.div(&den) else { continue };
        z[i].0 = z[i].0.sub(w.re.mid()).round(wp, Round::Nearest);
        z[i].1 = z[i].1.sub(w.im.mid()).round(wp, Round::Nearest);
        let step = w.re.mid().abs().add(&w.im.mid().abs());
        if !step.is_zero() {
            let scale = z[i].0.abs().add(&z[i].1.abs()).msb().max(0);
            worst = worst.max(step.msb() - scale);
        }
    }
    worst
}

/// Certified radii for the approximations, or `None` if the disks are not disjoint.
fn certify(p: &IntPoly, z: &[(Dyadic, Dyadic)], wp: u32) -> Option<Vec<Dyadic>> {
    let d = z.len();
    let lc = Ball::from_int(p.leading().abs(), wp);
    let mut radii = Vec::with_capacity(d);
    let pts: Vec<CBall> = z.iter().map(|(a, b)| cpoint(a, b, wp)).collect();
    for i in 0..d {
        let num = p.eval_cball(&pts[i]).abs();
        let mut den = lc.clone();
        for j in 0..d {
            if j != i {
                den = &den * &(&pts[i] - &pts[j]).abs();
            }
        }
        if !den.is_positive() {
            return None;
        }
        let w = num.div(&den)?;
        radii.push(w.upper().mul(&Dyadic::from_int(d as i64)).round(30, Round::Up));
    }
    for i in 0..d {
        for j in i + 1..d {
            let dist = (&pts[i] - &pts[j]).abs();
            if dist.lower() <= radii[i].add(&radii[j]) {
                return None;
            }
        }
    }
    Some(radii)
}

/// Snap nearly real approximations onto the axis and pair complex conjugates exactly.
fn symmetrize(z: &[(Dyadic, Dyadic)], wp: u32) -> Vec<(Dyadic, Dyadic)> {
    let d = z.len();
    let mut out = z.to_vec();
    let thresh_exp = -(wp as i64) / 2;
    let mut used = vec![false; d];
    for i in 0..d {
        let scale = out[i].0.abs().msb().max(0);
        if out[i].1.is_zero() || out[i].1.abs().msb() < thresh_exp + scale {
            out[i].1 = Dyadic::zero();
            used[i] = true;
        }
    }
    for i in 0..d {
        if used[i] || out[i].1.is_negative() {
            continue;
        }
        let target = (out[i].0.clone(), out[i].1.neg());
        let best = (0..d)
            .filter(|&j| !used[j] && j != i && out[j].1.is_negative())
            .min_by(|&a, &b| {
                let da = out[a].0.sub(&target.0).abs().add(&out[a].1.sub(&target.1).abs());
                let db = out[b].0.sub(&target.0).abs().add(&out[b].1.sub(&target.1).abs());
                da.cmp(&db)
            });
        if let Some(j) = best {
            out[j] = target;
            used[i] = true;
            used[j] = true;
        }
    }
    out
}

fn order(a: &RootEnclosure, b: &RootEnclosure) -> Ordering {
    let a_lo = a.re.sub(&a.radius);
    let a_hi = a.re.add(&a.radius);
    let b_lo = b.re.sub(&b.radius);
    let b_hi = b.re.add(&b.radius);
    if a_hi < b_lo {
        Ordering::Less
    } else if b_hi < a_lo {
        Ordering::Greater
    } else {
        let ai = if a.real { Dyadic::zero() } else { a.im.clone() };
        let bi = if b.real { Dyadic::zero() } else { b.im.clone() };
        ai.cmp(&bi).then_with(|| a.re.cmp(&b.re))
    }
}

/// All roots of a squarefree polynomial, each isolated in a disk of radius at most
/// `2^-prec`, ordered by real part and then by imaginary part.
pub fn isolate_roots(p: &IntPoly, prec: u32) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if d == 1 {
        let r = BigRational::new(-p.coeff(0), p.coeff(1));
        let b = Ball::from_rational(&r, prec + 8);
        return Ok(vec![RootEnclosure {
            poly: p.clone(),
            re: b.mid().clone(),
            im: Dyadic::zero(),
            radius: b.rad().clone(),
            real: true,
        }]);
    }
    let dp = p.derivative();
    let start: Vec<(Dyadic, Dyadic)> = match aberth_f64(p) {
        Some(z) => z.iter().map(|c| (Dyadic::from_f64(c.re), Dyadic::from_f64(c.im))).collect(),
        None => {
            let bound = cauchy_bound_exp(p);
            (0..d)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.7;
                    (
                        Dyadic::from_f64(t.cos()).mul_pow2(bound),
                        Dyadic::from_f64(t.sin()).mul_pow2(bound),
                    )
                })
                .collect()
        }
    };
    let mut z = start;
    let mut wp = prec.max(53) + 32;
    loop {
        for _ in 0..200 {
            let worst = aberth_mp_sweep(p, &dp, &mut z, wp);
            if worst < -(wp as i64) + 12 {
                break;
            }
        }
        let sym = symmetrize(&z, wp);
        if let Some(radii) = certify(p, &sym, wp) {
            let target = Dyadic::pow2(-(prec as i64));
            if radii.iter().all(|r| r <= &target) {
                let mut out: Vec<RootEnclosure> = sym
                    .into_iter()
                    .zip(radii)
                    .map(|((re, im), radius)| {
                        let real = im.is_zero();
                        RootEnclosure { poly: p.clone(), re, im, radius, real }
                    })
                    .collect();
                out.sort_by(order);
                return Ok(out);
            }
        }
        wp *= 2;
        if wp > MAX_WP {
            return Err(Error::Precision(format!("root isolation of {p}")));
        }
    }
}

fn cauchy_bound_exp(p: &IntPoly) -> i64 {
    let lc = p.leading().abs();
    let m = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    let q = (m / lc) + BigInt::one();
    q.bits() as i64 + 1
}

/// Factor `p = c ∏ q_k^k` via repeated gcds; returns the squarefree pieces with
/// multiplicity, together with the leading constant.
fn mahler_factors(p: &IntPoly) -> (BigInt, Vec<(IntPoly, u32)>) {
    let mut out = Vec::new();
    let content = p.content();
    let mut f = p.primitive();
    let lead_sign = if p.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut mult = 1u32;
    // f = sqf_1 * g with g = gcd(f, f'); the roots of g are the repeated roots of f
    while f.degree() > 0 {
        let g = f.gcd(&f.derivative());
        let sqf = f.exact_div(&g).expect("gcd divides").primitive();
        out.push((sqf, mult));
        if g.degree() == 0 {
            break;
        }
        f = g;
        mult = 1;
    }
    (content * lead_sign, out)
}

/// Enclosure of the Mahler measure `|lc| ∏ max(1, |α_i|)` of width at most `2^-prec`.
pub fn mahler_measure(p: &IntPoly, prec: u32) -> Result<Ball> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let h = p.height().bits() as u32;
    let d = p.degree() as u32;
    let wp = prec + 2 * h + 2 * d + 32;
    let (c, parts) = mahler_factors(p);
    let mut acc = Ball::from_int(c.abs(), wp);
    for (q, k) in parts {
        acc = &acc * &Ball::from_int(q.leading().abs(), wp);
        for r in isolate_roots(&q, wp)? {
            let m = r.cball(wp).abs().max(&Ball::one(wp));
            acc = &acc * &m.pow_u(k as u64);
        }
    }
    Ok(acc.set_prec(prec.max(64) + 16))
}

/// Enclosure of the house `max |α_i|`.
pub fn house(p: &IntPoly, prec: u32) -> Result<Ball> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let q = p.squarefree_part();
    let wp = prec + 16;
    let roots = isolate_roots(&q, wp)?;
    let mut best: Option<Ball> = None;
    for r in roots {
        let a = r.cball(wp).abs();
        best = Some(match best {
            None => a,
            Some(b) => b.max(&a),
        });
    }
    Ok(best.expect("at least one root"))
}

/// A value `q √n` with `q` rational and `n` a nonnegative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSqrt {
    pub q: BigRational,
    pub n: BigInt,
}

impl QSqrt {
    pub fn new(q: BigRational, n: BigInt) -> Self {
        assert!(!n.is_negative());
        QSqrt { q, n }
    }

    /// `base^(num/2)` for an integer base and integer `num`.
    pub fn half_power(base: &BigInt, num: i64) -> QSqrt {
        let whole = num.div_euclid(2);
        let half = num.rem_euclid(2) == 1;
        let b = BigRational::from_integer(base.clone());
        let q = if whole >= 0 { pow_rat(&b, whole as u32) } else { pow_rat(&b.recip(), (-whole) as u32) };
        QSqrt { q, n: if half { base.clone() } else { BigInt::one() } }
    }

    pub fn mul(&self, o: &QSqrt) -> QSqrt {
        // √a √b = √(ab); pull out the square part when both are equal
        if self.n == o.n {
            return QSqrt { q: &self.q * &o.q * BigRational::from_integer(self.n.clone()), n: BigInt::one() };
        }
        QSqrt { q: &self.q * &o.q, n: &self.n * &o.n }
    }

    pub fn scale(&self, k: &BigRational) -> QSqrt {
        QSqrt { q: &self.q * k, n: self.n.clone() }
    }

    pub fn is_rational(&self) -> bool {
        let r = num_integer::Roots::sqrt(&self.n);
        &r * &r == self.n
    }

    /// Rational lower bound (exact when the value is rational).
    pub fn round_down(&self, bits: u32) -> BigRational {
        self.round(bits, Round::Down)
    }

    /// Rational upper bound (exact when the value is rational).
    pub fn round_up(&self, bits: u32) -> BigRational {
        self.round(bits, Round::Up)
    }

    fn round(&self, bits: u32, mode: Round) -> BigRational {
        let r = num_integer::Roots::sqrt(&self.n);
        if &r * &r == self.n {
            return &self.q * BigRational::from_integer(r);
        }
        let dir = if self.q.is_negative() {
            if mode == Round::Down { Round::Up } else { Round::Down }
        } else {
            mode
        };
        let s = Dyadic::from_int(self.n.clone()).sqrt(bits, dir).to_rational();
        &self.q * s
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        let s = Ball::from_int(self.n.clone(), prec).sqrt().expect("nonnegative");
        &Ball::from_rational(&self.q, prec) * &s
    }

    pub fn to_f64(&self) -> f64 {
        self.q.to_f64().unwrap_or(f64::NAN) * self.n.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

fn pow_rat(b: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// Lower bound `2^(1-r) (r+1)^((1-3r)/2) max{H(P), H(Q)}^(-2r)` for the distance
/// between a root of `P` and a root of `Q`, where `r = max(deg P, deg Q)`.
pub fn root_separation_lower_bound(p: &IntPoly, q: &IntPoly) -> Result<BigRational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.gcd(q).degree() > 0 {
        return Err(Error::NotCoprime);
    }
    let r = p.degree().max(q.degree()).max(1) as i64;
    let h = p.height().max(q.height());
    let two = BigRational::from_integer(BigInt::from(2));
    let mut v = QSqrt::half_power(&BigInt::from(r + 1), 1 - 3 * r);
    v = v.scale(&pow_rat(&two.recip(), (r - 1) as u32));
    v = v.scale(&pow_rat(&BigRational::from_integer(h).recip(), (2 * r) as u32));
    Ok(v.round_down(128))
}

/// Certified minimum distance between a root of `p` and a root of `q`.
pub fn min_root_distance(p: &IntPoly, q: &IntPoly, prec: u32) -> Result<Ball> {
    let rp = isolate_roots(&p.squarefree_part(), prec)?;
    let rq = isolate_roots(&q.squarefree_part(), prec)?;
    let mut best: Option<Ball> = None;
    for a in &rp {
        for b in &rq {
            let dist = (&a.cball(prec) - &b.cball(prec)).abs();
            best = Some(match best {
                None => dist,
                Some(x) => x.min(&dist),
            });
        }
    }
    best.ok_or_else(|| Error::invalid("polynomial without roots"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_high(c)
    }

    #[test]
    fn isolates_real_and_complex_roots() {
        let r = isolate_roots(&p(&[1, 0, -2]), 80).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.is_real()));
        assert!((r[1].approx().0 - 2f64.sqrt()).abs() < 1e-15);
        let c = isolate_roots(&p(&[1, 0, 1]), 60).unwrap();
        assert!(c.iter().all(|x| !x.is_real()));
        assert_eq!(c[0].approx(), (0.0, -1.0));
        let t = isolate_roots(&p(&[1, 0, -3, -1]), 60).unwrap();
        let approx: Vec<f64> = t.iter().map(|x| x.approx().0).collect();
        for (a, b) in approx.iter().zip([-1.532088886, -0.347296355, 1.879385242]) {
            assert!((a - b).abs() < 1e-8);
        }
        assert_eq!(isolate_roots(&p(&[1, -2, 1]), 60), Err(Error::NotSquarefree));
    }

    #[test]
    fn refinement_keeps_identity() {
        let r = isolate_roots(&p(&[1, 0, 0, -2]), 64).unwrap();
        for x in &r {
            let y = x.refine(400).unwrap();
            assert!(y.radius() <= &Dyadic::pow2(-400));
            assert!(x.contains_disk(&y));
        }
    }

    #[test]
    fn mahler_and_house_examples() {
        let m = mahler_measure(&p(&[1, 0, -2]), 70).unwrap();
        assert!(m.contains(&Dyadic::from_int(2)));
        assert!(m.rad() < &Dyadic::pow2(-66));
        let m5 = mahler_measure(&IntPoly::constant(5), 64).unwrap();
        assert!(m5.contains(&Dyadic::from_int(5)));
        let h = house(&p(&[1, 0, 0, -2]), 64).unwrap();
        assert!((h.to_f64() - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(house(&IntPoly::constant(3), 64).unwrap_err(), Error::ConstantPolynomial);
        // repeated roots count with multiplicity
        let sq = mahler_measure(&p(&[1, 0, -2]).pow(2), 64).unwrap();
        assert!(sq.contains(&Dyadic::from_int(4)));
    }

    #[test]
    fn separation_examples() {
        let b = root_separation_lower_bound(&p(&[1, 0]), &p(&[1, 1])).unwrap();
        assert_eq!(b, BigRational::new(1.into(), 2.into()));
        let b2 = root_separation_lower_bound(&p(&[1, 0, -2]), &p(&[1, 0])).unwrap();
        let exact = 1.0 / (2.0 * 3f64.powf(2.5) * 16.0);
        assert!(b2.to_f64().unwrap() <= exact && b2.to_f64().unwrap() > exact * 0.999999);
        assert_eq!(root_separation_lower_bound(&p(&[1, -1]), &p(&[1, 0, -1])), Err(Error::NotCoprime));
    }
}
