//! Integer polynomial rings used for cleared-denominator identity checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::ratfn::RationalFunction;
use super::scalar::{split, QuadExt};
use super::zpoly::{self, ZPoly};

/// Commutative polynomial ring with integer scalars.
pub trait PolyRing: Clone {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn derivative(&self) -> Self;
    fn scale(&self, n: &BigInt) -> Self;
    /// `n·z`.
    fn z_times(&self, n: &BigInt) -> Self;
    fn is_constant(&self) -> bool;
}

impl PolyRing for ZPoly {
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
    fn one_like(&self) -> Self {
        ZPoly::one()
    }
    fn zero_like(&self) -> Self {
        ZPoly::zero()
    }
    fn add(&self, o: &Self) -> Self {
        zpoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        zpoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        zpoly::mul(self, o)
    }
    fn derivative(&self) -> Self {
        ZPoly::derivative(self)
    }
    fn scale(&self, n: &BigInt) -> Self {
        ZPoly::scale(self, n)
    }
    fn z_times(&self, n: &BigInt) -> Self {
        ZPoly::new(vec![BigInt::zero(), n.clone()])
    }
    fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
}

/// `re + g·im` with `g² = square`, over Z[z].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZQuadPoly {
    pub re: ZPoly,
    pub im: ZPoly,
    pub square: BigInt,
}

impl ZQuadPoly {
    pub fn new(re: ZPoly, im: ZPoly, square: BigInt) -> Self {
        ZQuadPoly { re, im, square }
    }
}

impl PolyRing for ZQuadPoly {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        PolyRing::is_one(&self.re) && self.im.is_zero()
    }
    fn one_like(&self) -> Self {
        ZQuadPoly::new(ZPoly::one(), ZPoly::zero(), self.square.clone())
    }
    fn zero_like(&self) -> Self {
        ZQuadPoly::new(ZPoly::zero(), ZPoly::zero(), self.square.clone())
    }
    fn add(&self, o: &Self) -> Self {
        ZQuadPoly::new(zpoly::add(&self.re, &o.re), zpoly::add(&self.im, &o.im), self.square.clone())
    }
    fn sub(&self, o: &Self) -> Self {
        ZQuadPoly::new(zpoly::sub(&self.re, &o.re), zpoly::sub(&self.im, &o.im), self.square.clone())
    }
    fn mul(&self, o: &Self) -> Self {
        let m = |a: &ZPoly, b: &ZPoly| if a.is_zero() || b.is_zero() { ZPoly::zero() } else { zpoly::mul(a, b) };
        let rr = m(&self.re, &o.re);
        let ii = m(&self.im, &o.im).scale(&self.square);
        let ri = m(&self.re, &o.im);
        let ir = m(&self.im, &o.re);
        ZQuadPoly::new(zpoly::add(&rr, &ii), zpoly::add(&ri, &ir), self.square.clone())
    }
    fn derivative(&self) -> Self {
        ZQuadPoly::new(self.re.derivative(), self.im.derivative(), self.square.clone())
    }
    fn scale(&self, n: &BigInt) -> Self {
        ZQuadPoly::new(self.re.scale(n), self.im.scale(n), self.square.clone())
    }
    fn z_times(&self, n: &BigInt) -> Self {
        ZQuadPoly::new(ZPoly::new(vec![BigInt::zero(), n.clone()]), ZPoly::zero(), self.square.clone())
    }
    fn is_constant(&self) -> bool {
        self.re.c.len() <= 1 && self.im.c.len() <= 1
    }
}

fn denom_lcm<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    it.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn times_int(p: &Polynomial<BigRational>, m: &BigInt) -> ZPoly {
    ZPoly::new(p.coeffs().iter().map(|c| c.numer() * (m / c.denom())).collect())
}

/// `r = N/D` with integer `N`, `D`.
pub fn integer_fraction(r: &RationalFunction<BigRational>) -> (ZPoly, ZPoly) {
    let ln = denom_lcm(r.num().coeffs().iter());
    let ld = denom_lcm(r.den().coeffs().iter());
    // r = (n·ln)/(d·ld) · ld/ln
    (times_int(r.num(), &ln).scale(&ld), times_int(r.den(), &ld).scale(&ln))
}

/// `r = N/D` over `Z[g]`, `g = 2k·c`, `g² = −2k`.
pub fn quad_integer_fraction(r: &RationalFunction<QuadExt>, k: u32) -> (ZQuadPoly, ZQuadPoly) {
    let d = BigInt::from(2 * k as i64);
    let square = -d.clone();
    let dq = BigRational::from_integer(d);
    let part = |p: &Polynomial<QuadExt>| {
        // a + b·c = a + (b/2k)·g
        let (a, b) = split(p);
        let b = b.scale(&dq.recip());
        let l = denom_lcm(a.coeffs().iter().chain(b.coeffs()));
        (times_int(&a, &l), times_int(&b, &l), l)
    };
    let (nr, ni, ln) = part(r.num());
    let (dr, di, ld) = part(r.den());
    (
        ZQuadPoly::new(nr.scale(&ld), ni.scale(&ld), square.clone()),
        ZQuadPoly::new(dr.scale(&ln), di.scale(&ln), square),
    )
}

/// Integer pair of a rational scalar.
pub fn rational_pair(q: &BigRational) -> (BigInt, BigInt) {
    (q.numer().clone(), q.denom().clone())
}
