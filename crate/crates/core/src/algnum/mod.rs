//! Algebraic numbers given by a minimal polynomial and a certified choice of root,
//! power-basis representations inside `ℚ(α)`, and the Liouville-type constants.

pub mod field;
pub mod padic;

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::irreducible::is_irreducible;
use crate::exact::linalg::lll;
use crate::exact::roots::{isolate_roots, RootEnclosure, BASE_PREC};
use crate::exact::{Ball, CBall, Dyadic, IntPoly, RatPoly};
pub use field::NumberField;
pub use padic::{hensel_root, liouville_c7, padic_abs_linear, PadicAbs, PadicAlgNum};

struct RootCache {
    poly: IntPoly,
    base: Vec<RootEnclosure>,
    fine: Vec<RwLock<RootEnclosure>>,
}

impl RootCache {
    fn refined(&self, i: usize, bits: u32) -> Result<RootEnclosure> {
        {
            let cur = self.fine[i].read().expect("root cache poisoned");
            if cur.radius() <= &Dyadic::pow2(-(bits as i64)) {
                return Ok(cur.clone());
            }
        }
        let mut cur = self.fine[i].write().expect("root cache poisoned");
        if cur.radius() > &Dyadic::pow2(-(bits as i64)) {
            *cur = cur.refine(bits)?;
        }
        Ok(cur.clone())
    }
}

/// An algebraic number: a primitive irreducible minimal polynomial with positive
/// leading coefficient and the index of one of its roots in canonical order
/// (by real part, then imaginary part).
#[derive(Clone)]
pub struct AlgNum {
    cache: Arc<RootCache>,
    index: usize,
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.approx();
        write!(f, "AlgNum({} @ {} ≈ {re}{:+}i)", self.cache.poly, self.index, im)
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.cache.poly == other.cache.poly
    }
}

impl AlgNum {
    /// The root with canonical index `index` of `f`.
    pub fn new(f: &IntPoly, index: usize) -> Result<AlgNum> {
        let all = AlgNum::all_roots(f)?;
        let d = all.len();
        all.into_iter()
            .nth(index)
            .ok_or_else(|| Error::invalid(format!("root index {index} out of range for degree {d}")))
    }

    /// All conjugates of a root of `f`, sharing one enclosure cache.
    pub fn all_roots(f: &IntPoly) -> Result<Vec<AlgNum>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let f = f.primitive();
        if !is_irreducible(&f)? {
            return Err(Error::Reducible);
        }
        let base = isolate_roots(&f, BASE_PREC)?;
        let fine = base.iter().cloned().map(RwLock::new).collect();
        let cache = Arc::new(RootCache { poly: f, base, fine });
        Ok((0..cache.base.len()).map(|index| AlgNum { cache: cache.clone(), index }).collect())
    }

    /// The root of `f` nearest to `re + i·im`; fails if two roots are equally near.
    pub fn nearest(f: &IntPoly, re: &BigRational, im: &BigRational) -> Result<AlgNum> {
        let all = AlgNum::all_roots(f)?;
        let mut bits = 64;
        while bits <= 4096 {
            let target = CBall::new(Ball::from_rational(re, bits + 16), Ball::from_rational(im, bits + 16));
            let mut dists = Vec::new();
            for a in &all {
                dists.push((&a.cball(bits)? - &target).abs());
            }
            for (i, di) in dists.iter().enumerate() {
                if dists.iter().enumerate().all(|(j, dj)| j == i || di.lt(dj) == Some(true)) {
                    return Ok(all[i].clone());
                }
            }
            bits *= 2;
        }
        Err(Error::invalid("approximation is equidistant from two roots"))
    }

    /// Parse `POLY@root≈RE`, `POLY@root≈RE+IMi` (`~` also accepted), `POLY@index<k>`
    /// or `POLY@k`. A bare polynomial of degree one denotes its rational root.
    pub fn parse(s: &str) -> Result<AlgNum> {
        use crate::exact::parse::{parse_poly, parse_rational};
        let (poly, sel) = match s.rsplit_once('@') {
            Some((p, sel)) => (p, Some(sel.trim())),
            None => (s, None),
        };
        let f = parse_poly(poly)?;
        let Some(sel) = sel else {
            if f.degree() == 1 {
                return AlgNum::new(&f, 0);
            }
            return Err(Error::Parse(format!("'{s}' needs a root selector such as @root≈1.5 or @index0")));
        };
        if let Some(rest) = sel.strip_prefix("root") {
            let rest = rest.trim_start_matches(['≈', '~', '=']).trim();
            let (re, im) = split_complex(rest)?;
            let re = parse_rational(re)?;
            let im = match im {
                Some(t) => parse_rational(t)?,
                None => BigRational::zero(),
            };
            return AlgNum::nearest(&f, &re, &im);
        }
        let idx = sel.strip_prefix("index").unwrap_or(sel).trim_start_matches(['<', '=']).trim_end_matches('>');
        let k: usize = idx.trim().parse().map_err(|_| Error::Parse(format!("bad root selector '{sel}'")))?;
        AlgNum::new(&f, k)
    }

    /// The element `elem(α)` of `ℚ(α)`, as an algebraic number with its own minimal polynomial.
    pub fn from_element(&self, elem: &RatPoly) -> Result<AlgNum> {
        let k = self.field();
        let e = k.reduce(elem);
        let g = k.minpoly(&e);
        let cands = AlgNum::all_roots(&g)?;
        let mut bits = 64;
        while bits <= 1 << 14 {
            let z = e.eval_cball(&self.cball(bits + e.degree() as u32 * 8)?);
            for c in &cands {
                if c.cache.base[c.index].contains_cball(&z) {
                    return Ok(c.clone());
                }
            }
            bits *= 2;
        }
        Err(Error::Precision("could not locate the image root".into()))
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.cache.poly
    }

    pub fn degree(&self) -> usize {
        self.cache.poly.degree()
    }

    /// Leading coefficient `c_α` of the minimal polynomial.
    pub fn leading(&self) -> BigInt {
        self.cache.poly.leading()
    }

    /// Height of the minimal polynomial.
    pub fn height(&self) -> BigInt {
        self.cache.poly.height()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_real(&self) -> bool {
        self.cache.base[self.index].is_real()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// The exact value when the degree is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        let f = &self.cache.poly;
        (f.degree() == 1).then(|| BigRational::new(-f.coeff(0), f.coeff(1)))
    }

    pub fn conjugate(&self, index: usize) -> AlgNum {
        assert!(index < self.degree());
        AlgNum { cache: self.cache.clone(), index }
    }

    pub fn conjugates(&self) -> Vec<AlgNum> {
        (0..self.degree()).map(|i| self.conjugate(i)).collect()
    }

    /// Base-precision enclosures of all conjugates.
    pub fn base_roots(&self) -> &[RootEnclosure] {
        &self.cache.base
    }

    /// Enclosure of radius at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> Result<RootEnclosure> {
        self.cache.refined(self.index, bits)
    }

    /// Complex ball of radius at most `2^-bits`.
    pub fn cball(&self, bits: u32) -> Result<CBall> {
        Ok(self.enclosure(bits)?.cball(bits + 32))
    }

    /// Real ball of radius at most `2^-bits`; `None` for non-real roots.
    pub fn real_ball(&self, bits: u32) -> Result<Option<Ball>> {
        if !self.is_real() {
            return Ok(None);
        }
        Ok(Some(self.enclosure(bits)?.real_ball(bits + 32)))
    }

    /// Balls for all conjugates, in canonical order.
    pub fn conjugate_balls(&self, bits: u32) -> Result<Vec<CBall>> {
        (0..self.degree()).map(|i| Ok(self.cache.refined(i, bits)?.cball(bits + 32))).collect()
    }

    pub fn approx(&self) -> (f64, f64) {
        self.cache.base[self.index].approx()
    }

    pub fn field(&self) -> NumberField {
        NumberField::new(&self.cache.poly)
    }

    /// Enclosure of `|α|`.
    pub fn abs(&self, bits: u32) -> Result<Ball> {
        Ok(self.cball(bits)?.abs())
    }

    /// Enclosure of the house `max |α_i|`.
    pub fn house(&self, bits: u32) -> Result<Ball> {
        let balls = self.conjugate_balls(bits)?;
        Ok(balls.iter().map(|b| b.abs()).reduce(|a, b| a.max(&b)).expect("degree at least one"))
    }

    /// Enclosure of the Mahler measure.
    pub fn mahler(&self, bits: u32) -> Result<Ball> {
        let balls = self.conjugate_balls(bits)?;
        let prec = bits + 32;
        let mut acc = Ball::from_int(self.leading().abs(), prec);
        for b in &balls {
            acc = &acc * &b.abs().max(&Ball::one(prec));
        }
        Ok(acc)
    }
}


/// Split `a+bi` / `a-bi` into real and imaginary text.
fn split_complex(t: &str) -> Result<(&str, Option<&str>)> {
    let Some(body) = t.strip_suffix('i') else {
        return Ok((t, None));
    };
    let cut = body
        .char_indices()
        .skip(1)
        .filter(|&(k, c)| (c == '+' || c == '-') && !body[..k].ends_with(['e', 'E']))
        .map(|(k, _)| k)
        .last()
        .ok_or_else(|| Error::Parse(format!("bad complex number '{t}'")))?;
    let im = &body[cut..];
    Ok((&body[..cut], Some(im.strip_prefix('+').unwrap_or(im))))
}

/// Coefficients `a_{r,0..d-1}` with `α^r = Σ a_{r,i} α^i`.
pub fn power_table(alpha: &AlgNum, r: usize) -> Vec<BigRational> {
    let k = alpha.field();
    let p = k.reduce(&RatPoly::monomial(BigRational::one(), r));
    (0..alpha.degree()).map(|i| p.coeff(i)).collect()
}

/// `1 + max_i |a_{d,i}|`.
pub fn c8(alpha: &AlgNum) -> BigRational {
    let row = power_table(alpha, alpha.degree());
    BigRational::one() + row.iter().map(|a| a.abs()).max().unwrap_or_else(BigRational::zero)
}

/// A representation `β = Σ b_i α^i` in the power basis of `ℚ(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerBasisRep {
    coeffs: Vec<BigRational>,
}

impl PowerBasisRep {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        PowerBasisRep { coeffs }
    }

    /// `b_0, ..., b_{d-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    /// Least positive `D` with every `D b_i` integral.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    pub fn max_abs(&self) -> BigRational {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

/// Least positive integer clearing the denominators of a representation.
pub fn denominator_scalar(rep: &PowerBasisRep) -> BigInt {
    rep.denominator()
}

/// `⌊√|disc|⌋` for the minimal polynomial of `c_α α`, an upper bound for the index
/// of `ℤ[c_α α]` in the maximal order.
pub fn theta_upper_bound(alpha: &AlgNum) -> BigInt {
    let f = alpha.minpoly();
    let d = f.degree();
    let c = f.leading();
    let mut coeffs = vec![BigInt::zero(); d + 1];
    let mut cp = BigInt::one();
    for i in (0..d).rev() {
        coeffs[i] = f.coeff(i) * &cp;
        cp *= &c;
    }
    coeffs[d] = BigInt::one();
    let g = IntPoly::new(coeffs);
    if d < 2 {
        return BigInt::one();
    }
    let disc = g.discriminant().expect("degree at least two").abs();
    disc.sqrt().max(BigInt::one())
}

/// Rounded-down `(|c_α| ∏_{i ≠ sel} (1 + |α_i|))^{-1}`.
pub fn liouville_c6(alpha: &AlgNum, bits: u32) -> Result<BigRational> {
    let balls = alpha.conjugate_balls(bits)?;
    let prec = bits + 32;
    let mut acc = Ball::from_int(alpha.leading().abs(), prec);
    for (i, b) in balls.iter().enumerate() {
        if i != alpha.index() {
            acc = &acc * &(&Ball::one(prec) + &b.abs());
        }
    }
    let inv = acc.recip().expect("positive product");
    Ok(inv.lower_rational())
}

/// Rounded-up `d · house(β) · max_j ∏_{i≠j} (1 + |α_i|) / |α_i - α_j|`.
pub fn c9(alpha: &AlgNum, beta: &AlgNum, bits: u32) -> Result<BigRational> {
    c9_with_house(alpha, &beta.house(bits.max(64))?, bits)
}

/// [`c9`] with the house of `β` supplied directly; it depends on `β` only through it.
pub fn c9_with_house(alpha: &AlgNum, house_beta: &Ball, bits: u32) -> Result<BigRational> {
    let d = alpha.degree();
    let mut bits = bits.max(64);
    loop {
        let balls = alpha.conjugate_balls(bits)?;
        let prec = bits + 32;
        let mut worst: Option<Ball> = None;
        let mut ok = true;
        for j in 0..d {
            let mut acc = Ball::one(prec);
            for i in 0..d {
                if i == j {
                    continue;
                }
                let num = &Ball::one(prec) + &balls[i].abs();
                match num.div(&(&balls[i] - &balls[j]).abs()) {
                    Some(q) => acc = &acc * &q,
                    None => ok = false,
                }
            }
            worst = Some(match worst {
                None => acc,
                Some(w) => w.max(&acc),
            });
        }
        if ok {
            let v = &(house_beta * &worst.expect("nonempty")) * &Ball::from_int(d as i64, prec);
            return Ok(v.upper_rational());
        }
        bits *= 2;
        if bits > 1 << 14 {
            return Err(Error::Precision("conjugates not separated".into()));
        }
    }
}

/// Direct value `max |b_i|` of a computed representation, the tight counterpart of [`c9`].
pub fn c9_direct(rep: &PowerBasisRep) -> BigRational {
    rep.max_abs()
}

/// Check `g(Σ b_i x^i) ≡ 0 (mod f)` and that the value lies on the selected root of `g`.
pub fn verify_rep(alpha: &AlgNum, beta: &AlgNum, rep: &PowerBasisRep) -> Result<bool> {
    let k = alpha.field();
    let poly = rep.as_poly();
    if !k.eval_poly(beta.minpoly(), &poly).is_zero() {
        return Ok(false);
    }
    let mut bits = 96;
    while bits <= 1 << 14 {
        let disk = beta.enclosure(bits)?;
        let fine = (-disk.radius().msb()).max(bits as i64) as u32 + 16 + 8 * alpha.degree() as u32;
        let z = poly.eval_cball(&alpha.cball(fine)?);
        if disk.contains_cball(&z) {
            return Ok(true);
        }
        if disk.excludes_cball(&z) {
            return Ok(false);
        }
        bits *= 2;
    }
    Err(Error::Precision("could not place the representation on a root".into()))
}

/// Express `β` in the power basis of `ℚ(α)`.
///
/// An integer relation between `β, 1, α, ..., α^{d-1}` in the chosen embedding is
/// searched for with LLL and verified exactly. Absence is certified when every
/// lattice vector is longer than any relation allowed by the a priori bounds on
/// the denominator (`θ_α c_β`) and the coefficients (`C9`).
pub fn power_rep(alpha: &AlgNum, beta: &AlgNum) -> Result<PowerBasisRep> {
    let d = alpha.degree();
    let e = beta.degree();
    if d % e != 0 {
        return Err(Error::NotInField);
    }
    if alpha.is_real() && !beta.is_real() {
        return Err(Error::NotInField);
    }
    if let Some(q) = beta.as_rational() {
        let mut c = vec![BigRational::zero(); d];
        c[0] = q;
        return Ok(PowerBasisRep::new(c));
    }
    if alpha.minpoly() == beta.minpoly() && alpha.index() == beta.index() {
        let mut c = vec![BigRational::zero(); d];
        c[1] = BigRational::one();
        return Ok(PowerBasisRep::new(c));
    }
    let use_im = !alpha.is_real();
    let n_max = BigRational::from_integer(theta_upper_bound(alpha) * beta.leading());
    let c9v = c9(alpha, beta, 64)?;
    let dq = BigRational::from_integer(BigInt::from(d as i64));
    let sum_sq = &n_max * &n_max * (BigRational::one() + &dq * &c9v * &c9v);
    let sum_abs = &n_max * (BigRational::one() + &dq * &c9v);
    let cols = if use_im { 2 } else { 1 };
    let mag = {
        let h = alpha.house(64)?.upper().msb().max(0) as u32;
        h * d as u32 + beta.house(64)?.upper().msb().max(0) as u32
    };
    let mut kbits: u32 = 32 * (d as u32 + 1);
    while kbits <= 1 << 15 {
        let wp = kbits + mag + 16;
        let a = alpha.cball(wp)?;
        let mut xs = vec![beta.cball(wp)?];
        let mut pw = CBall::one(wp + 32);
        for _ in 0..d {
            xs.push(pw.clone());
            pw = &pw * &a;
        }
        let n = xs.len();
        let mut basis = Vec::with_capacity(n);
        for (k, x) in xs.iter().enumerate() {
            let mut row = vec![BigInt::zero(); n];
            row[k] = BigInt::one();
            row.push(x.re.mid().mul_pow2(kbits as i64).floor());
            if use_im {
                row.push(x.im.mid().mul_pow2(kbits as i64).floor());
            }
            basis.push(row);
        }
        let out = lll(basis);
        for v in &out.basis {
            if v[0].is_zero() {
                continue;
            }
            let c0 = BigRational::from_integer(v[0].clone());
            let rep = PowerBasisRep::new((1..n).map(|i| -BigRational::from_integer(v[i].clone()) / &c0).collect());
            if verify_rep(alpha, beta, &rep)? {
                return Ok(rep);
            }
        }
        // entry rounding error is below 2, so a genuine relation maps to a vector of
        // squared length at most sum_sq + cols (2 sum_abs)^2
        let bound = &sum_sq + BigRational::from_integer(BigInt::from(4 * cols)) * &sum_abs * &sum_abs;
        let shortest = out.gs_norms_sq.iter().min().expect("nonempty basis");
        if shortest > &bound {
            return Err(Error::NotInField);
        }
        kbits = kbits * 3 / 2;
    }
    Err(Error::Precision("integer relation search exhausted".into()))
}
