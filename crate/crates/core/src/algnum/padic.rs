//! p-adic algebraic numbers given by a Hensel witness.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::irreducible::is_irreducible;
use crate::exact::IntPoly;

/// A simple root in `ℤ_p` of an irreducible `f`, determined by a residue `r0` with
/// `f(r0) ≡ 0` and `f'(r0) ≢ 0 (mod p)`.
pub struct PadicAlgNum {
    f: IntPoly,
    p: BigInt,
    r0: BigInt,
    /// `lifts[k - 1]` is the root modulo `p^k`.
    lifts: RwLock<Vec<BigInt>>,
}

impl Clone for PadicAlgNum {
    fn clone(&self) -> Self {
        PadicAlgNum {
            f: self.f.clone(),
            p: self.p.clone(),
            r0: self.r0.clone(),
            lifts: RwLock::new(self.lifts.read().expect("lift cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for PadicAlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicAlgNum({} at {} from {})", self.f, self.p, self.r0)
    }
}

impl PartialEq for PadicAlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.p == other.p && self.r0 == other.r0
    }
}

fn is_prime(n: &BigInt) -> bool {
    let Some(n) = n.to_u64() else { return false };
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut dd = n - 1;
    let mut s = 0;
    while dd % 2 == 0 {
        dd /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, dd);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Validate the Hensel witness and build the p-adic root.
pub fn hensel_root(f: &IntPoly, p: &BigInt, r0: &BigInt) -> Result<PadicAlgNum> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not a prime below 2^64")));
    }
    let r = r0.mod_floor(p);
    if !f.eval(&r).mod_floor(p).is_zero() {
        return Err(Error::Hensel(format!("f({r0}) is not divisible by {p}")));
    }
    if f.derivative().eval(&r).mod_floor(p).is_zero() {
        return Err(Error::Hensel(format!("f'({r0}) is divisible by {p}")));
    }
    let f = f.primitive();
    if !is_irreducible(&f)? {
        return Err(Error::Reducible);
    }
    Ok(PadicAlgNum { f, p: p.clone(), r0: r.clone(), lifts: RwLock::new(vec![r]) })
}

impl PadicAlgNum {
    pub fn minpoly(&self) -> &IntPoly {
        &self.f
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn residue(&self) -> &BigInt {
        &self.r0
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn leading(&self) -> BigInt {
        self.f.leading()
    }

    pub fn height(&self) -> BigInt {
        self.f.height()
    }

    /// The root modulo `p^k`, in `[0, p^k)`.
    pub fn lift(&self, k: u32) -> BigInt {
        assert!(k >= 1, "lifting precision starts at 1");
        {
            let cache = self.lifts.read().expect("lift cache poisoned");
            if let Some(v) = cache.get(k as usize - 1) {
                return v.clone();
            }
        }
        let mut cache = self.lifts.write().expect("lift cache poisoned");
        let df = self.f.derivative();
        // f'(a) is a unit mod p for every lift a, so one inverse mod p suffices for linear lifting
        let inv = df.eval(&self.r0).mod_floor(&self.p).extended_gcd(&self.p).x.mod_floor(&self.p);
        while cache.len() < k as usize {
            let j = cache.len() as u32;
            let a = cache[j as usize - 1].clone();
            let pj = num_traits::pow(self.p.clone(), j as usize);
            // f(a) ≡ 0 mod p^j; correct by t p^j with t ≡ -(f(a)/p^j) f'(a)^{-1} mod p
            let q = self.f.eval(&a) / &pj;
            let t = (-q * &inv).mod_floor(&self.p);
            cache.push(a + t * pj);
        }
        cache[k as usize - 1].clone()
    }

    /// `p^k`.
    pub fn modulus(&self, k: u32) -> BigInt {
        num_traits::pow(self.p.clone(), k as usize)
    }

    /// p-adic absolute value of `P(α)` for an integer polynomial `P`.
    pub fn abs_of_poly(&self, poly: &IntPoly, k: u32) -> PadicAbs {
        let m = self.modulus(k);
        let v = poly.eval(&self.lift(k)).mod_floor(&m);
        PadicAbs::from_residue(&v, &self.p, k)
    }
}

/// A p-adic absolute value `p^{-v}`, or only the knowledge that `v ≥ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PadicAbs {
    Exact { prime: BigInt, valuation: u32 },
    AtLeast { prime: BigInt, valuation: u32 },
}

impl PadicAbs {
    fn from_residue(v: &BigInt, p: &BigInt, k: u32) -> PadicAbs {
        if v.is_zero() {
            return PadicAbs::AtLeast { prime: p.clone(), valuation: k };
        }
        let mut val = 0;
        let mut w = v.clone();
        while (&w % p).is_zero() {
            w /= p;
            val += 1;
        }
        PadicAbs::Exact { prime: p.clone(), valuation: val }
    }

    pub fn valuation(&self) -> Option<u32> {
        match self {
            PadicAbs::Exact { valuation, .. } => Some(*valuation),
            PadicAbs::AtLeast { .. } => None,
        }
    }

    /// The exact value `p^{-v}`, when known.
    pub fn value(&self) -> Option<BigRational> {
        match self {
            PadicAbs::Exact { prime, valuation } => {
                Some(BigRational::new(BigInt::one(), num_traits::pow(prime.clone(), *valuation as usize)))
            }
            PadicAbs::AtLeast { .. } => None,
        }
    }

    /// An upper bound `p^{-v}` valid in both cases.
    pub fn upper(&self) -> BigRational {
        match self {
            PadicAbs::Exact { prime, valuation } | PadicAbs::AtLeast { prime, valuation } => {
                BigRational::new(BigInt::one(), num_traits::pow(prime.clone(), *valuation as usize))
            }
        }
    }
}

/// `|yα - x|_p` computed from the lift modulo `p^k`.
pub fn padic_abs_linear(xi: &PadicAlgNum, x: &BigInt, y: &BigInt, k: u32) -> PadicAbs {
    let m = xi.modulus(k);
    let v = (y * xi.lift(k) - x).mod_floor(&m);
    PadicAbs::from_residue(&v, &xi.p, k)
}

/// `(c_d^{d+1} (d+1) H(α))^{-1}`.
pub fn liouville_c7(xi: &PadicAlgNum) -> BigRational {
    let d = xi.degree();
    let c = xi.leading().abs();
    let den = num_traits::pow(c, d + 1) * BigInt::from(d as u64 + 1) * xi.height();
    BigRational::new(BigInt::one(), den)
}
