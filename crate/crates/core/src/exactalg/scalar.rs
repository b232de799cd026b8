use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::{zpoly, AlgebraError};

/// Exact field element usable as a polynomial coefficient.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times_int(&self, n: i64) -> Self;
    fn inverse(&self) -> Option<Self>;
    /// Same field; always true for rationals.
    fn same_field(&self, other: &Self) -> bool;
    fn field_name(&self) -> String;

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        super::poly::euclid_gcd(a, b)
    }
    fn poly_mul(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        super::poly::schoolbook_mul(a, b)
    }
    /// Quotient of an exact division; `None` if `d` does not divide `a`.
    fn poly_exact_div(a: &Polynomial<Self>, d: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        let (q, r) = a.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }
    /// Reduced `a/b + c/d`, when a faster route than the generic one exists.
    fn fraction_sum(
        _a: &Polynomial<Self>,
        _b: &Polynomial<Self>,
        _c: &Polynomial<Self>,
        _d: &Polynomial<Self>,
    ) -> Option<(Polynomial<Self>, Polynomial<Self>)> {
        None
    }
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times_int(&self, n: i64) -> Self {
        self * BigRational::from_integer(BigInt::from(n))
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn same_field(&self, _other: &Self) -> bool {
        true
    }
    fn field_name(&self) -> String {
        "Q".into()
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let (_, za) = zpoly::from_rational(a);
        let (_, zb) = zpoly::from_rational(b);
        zpoly::to_rational(&zpoly::gcd(&za, &zb), &BigRational::one()).monic()
    }

    fn poly_mul(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let (ca, za) = zpoly::from_rational(a);
        let (cb, zb) = zpoly::from_rational(b);
        zpoly::to_rational(&zpoly::mul(&za, &zb), &(ca * cb))
    }

    fn poly_exact_div(a: &Polynomial<Self>, d: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        if d.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(Polynomial::zero());
        }
        let (ca, za) = zpoly::from_rational(a);
        let (cd, zd) = zpoly::from_rational(d);
        let q = zpoly::exact_div(&za, &zd)?;
        Some(zpoly::to_rational(&q, &(ca / cd)))
    }

    fn fraction_sum(
        a: &Polynomial<Self>,
        b: &Polynomial<Self>,
        c: &Polynomial<Self>,
        d: &Polynomial<Self>,
    ) -> Option<(Polynomial<Self>, Polynomial<Self>)> {
        if a.is_zero() || c.is_zero() {
            return None;
        }
        let (sa, za) = zpoly::from_rational(a);
        let (sb, zb) = zpoly::from_rational(b);
        let (sc, zc) = zpoly::from_rational(c);
        let (sd, zd) = zpoly::from_rational(d);
        let (x, y) = (sa / sb, sc / sd);
        let g = zpoly::gcd(&zb, &zd);
        let (b1, d1) = if g.deg() == 0 {
            (zb, zd.clone())
        } else {
            (zpoly::exact_div(&zb, &g)?, zpoly::exact_div(&zd, &g)?)
        };
        // x·A/B + y·C/D = (p1q2·A·D1 + p2q1·C·B1) / (q1q2·B1·D)
        let l = x.numer() * y.denom();
        let r = y.numer() * x.denom();
        let n = zpoly::add(&zpoly::mul(&za, &d1).scale(&l), &zpoly::mul(&zc, &b1).scale(&r));
        let q = BigRational::from_integer(x.denom() * y.denom()).recip();
        let den = zpoly::mul(&b1, &zd);
        if n.is_zero() {
            return Some((Polynomial::zero(), Polynomial::constant(BigRational::one())));
        }
        let (n, den) = if g.deg() == 0 {
            (n, den)
        } else {
            let g2 = zpoly::gcd(&n, &g).primitive();
            if g2.deg() == 0 {
                (n, den)
            } else {
                (zpoly::exact_div(&n, &g2)?, zpoly::exact_div(&den, &g2)?)
            }
        };
        let lc = BigRational::from_integer(den.lc().clone()).recip();
        Some((zpoly::to_rational(&n, &(q * &lc)), zpoly::to_rational(&den, &lc)))
    }
}

/// Element `rational + radical·c` of Q(c) with `c² = radicand`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub rational: BigRational,
    pub radical: BigRational,
    pub radicand: BigRational,
}

impl QuadExt {
    pub fn new(rational: BigRational, radical: BigRational, radicand: BigRational) -> Self {
        QuadExt { rational, radical, radicand }
    }

    pub fn from_rational(q: BigRational, radicand: &BigRational) -> Self {
        QuadExt::new(q, BigRational::zero(), radicand.clone())
    }

    /// The generator `c` itself.
    pub fn generator(radicand: &BigRational) -> Self {
        QuadExt::new(BigRational::zero(), BigRational::one(), radicand.clone())
    }

    /// Field with `c² = −1/(2k)`.
    pub fn painleve_radicand(k: u32) -> BigRational {
        BigRational::new(BigInt::from(-1), BigInt::from(2 * k as i64))
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.radical)
    }

    pub fn conjugate(&self) -> Self {
        QuadExt::new(self.rational.clone(), -&self.radical, self.radicand.clone())
    }

    /// `(a+bc)(a−bc) = a² − b²·radicand`.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational - &self.radical * &self.radical * &self.radicand
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check(rhs)?;
        Ok(self.times(rhs))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check(rhs)?;
        Ok(self.plus(rhs))
    }

    fn check(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.radicand != rhs.radicand {
            return Err(AlgebraError::FieldMismatch(self.field_name(), rhs.field_name()));
        }
        Ok(())
    }

    fn assert_field(&self, rhs: &Self) {
        assert!(
            self.radicand == rhs.radicand,
            "quadratic extension mismatch: {} vs {}",
            self.radicand,
            rhs.radicand
        );
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.rational), Zero::is_zero(&self.radical)) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}c", self.radical),
            (false, false) => {
                if self.radical.is_negative() {
                    write!(f, "{} - {}c", self.rational, -&self.radical)
                } else {
                    write!(f, "{} + {}c", self.rational, self.radical)
                }
            }
        }
    }
}

impl Scalar for QuadExt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.rational) && Zero::is_zero(&self.radical)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.rational) && Zero::is_zero(&self.radical)
    }
    fn zero_like(&self) -> Self {
        QuadExt::from_rational(BigRational::zero(), &self.radicand)
    }
    fn one_like(&self) -> Self {
        QuadExt::from_rational(BigRational::one(), &self.radicand)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.assert_field(rhs);
        QuadExt::new(&self.rational + &rhs.rational, &self.radical + &rhs.radical, self.radicand.clone())
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.assert_field(rhs);
        QuadExt::new(&self.rational - &rhs.rational, &self.radical - &rhs.radical, self.radicand.clone())
    }
    fn times(&self, rhs: &Self) -> Self {
        self.assert_field(rhs);
        if self.is_rational() && rhs.is_rational() {
            return QuadExt::from_rational(&self.rational * &rhs.rational, &self.radicand);
        }
        let re = &self.rational * &rhs.rational + &self.radical * &rhs.radical * &self.radicand;
        let im = &self.rational * &rhs.radical + &self.radical * &rhs.rational;
        QuadExt::new(re, im, self.radicand.clone())
    }
    fn negated(&self) -> Self {
        QuadExt::new(-&self.rational, -&self.radical, self.radicand.clone())
    }
    fn times_int(&self, n: i64) -> Self {
        let n = BigRational::from_integer(BigInt::from(n));
        QuadExt::new(&self.rational * &n, &self.radical * &n, self.radicand.clone())
    }
    fn inverse(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(QuadExt::new(c.rational / &n, c.radical / &n, self.radicand.clone()))
    }
    fn same_field(&self, other: &Self) -> bool {
        self.radicand == other.radicand
    }
    fn field_name(&self) -> String {
        format!("Q(c), c^2 = {}", self.radicand)
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        let radicand = a.coeffs().iter().chain(b.coeffs()).next().map(|c| c.radicand.clone());
        match (radicand, rational_parts(a), rational_parts(b)) {
            (Some(r), Some(qa), Some(qb)) => lift(&BigRational::poly_gcd(&qa, &qb), &r),
            _ => super::poly::euclid_gcd(a, b),
        }
    }

    fn poly_mul(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        let Some(r) = a.coeffs().iter().chain(b.coeffs()).next().map(|c| c.radicand.clone()) else {
            return Polynomial::zero();
        };
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        // (A + cB)(C + cD) = AC + c²BD + c(AD + BC)
        let (pa, qa) = split(a);
        let (pb, qb) = split(b);
        let mul = |x: &Polynomial<BigRational>, y: &Polynomial<BigRational>| {
            if x.is_zero() || y.is_zero() {
                Polynomial::zero()
            } else {
                BigRational::poly_mul(x, y)
            }
        };
        let re = mul(&pa, &pb).try_add(&mul(&qa, &qb).scale(&r)).expect("rational");
        let im = mul(&pa, &qb).try_add(&mul(&qa, &pb)).expect("rational");
        join(&re, &im, &r)
    }

    fn poly_exact_div(a: &Polynomial<Self>, d: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        let radicand = d.coeffs().first().map(|c| c.radicand.clone())?;
        if let (Some(qa), Some(qd)) = (rational_parts(a), rational_parts(d)) {
            return BigRational::poly_exact_div(&qa, &qd).map(|q| lift(&q, &radicand));
        }
        let (q, r) = a.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }
}

/// Rational image of a polynomial whose radical parts all vanish.
pub fn rational_parts(p: &Polynomial<QuadExt>) -> Option<Polynomial<BigRational>> {
    p.coeffs()
        .iter()
        .all(QuadExt::is_rational)
        .then(|| Polynomial::from_coeffs(p.coeffs().iter().map(|c| c.rational.clone()).collect()))
}

/// `p = A + c·B` with rational `A`, `B`.
pub fn split(p: &Polynomial<QuadExt>) -> (Polynomial<BigRational>, Polynomial<BigRational>) {
    (
        Polynomial::from_coeffs(p.coeffs().iter().map(|c| c.rational.clone()).collect()),
        Polynomial::from_coeffs(p.coeffs().iter().map(|c| c.radical.clone()).collect()),
    )
}

pub fn join(a: &Polynomial<BigRational>, b: &Polynomial<BigRational>, radicand: &BigRational) -> Polynomial<QuadExt> {
    let n = a.coeffs().len().max(b.coeffs().len());
    let get = |p: &Polynomial<BigRational>, i: usize| p.coeff(i).cloned().unwrap_or_else(BigRational::zero);
    Polynomial::from_coeffs((0..n).map(|i| QuadExt::new(get(a, i), get(b, i), radicand.clone())).collect())
}

pub fn lift(p: &Polynomial<BigRational>, radicand: &BigRational) -> Polynomial<QuadExt> {
    Polynomial::from_coeffs(p.coeffs().iter().map(|c| QuadExt::from_rational(c.clone(), radicand)).collect())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
