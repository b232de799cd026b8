use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;

use super::poly::Polynomial;
use super::scalar::{QuadExt, Scalar};
use super::AlgebraError;

/// Reduced quotient `num/den` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<S> {
    num: Polynomial<S>,
    den: Polynomial<S>,
}

impl<S: Scalar> RationalFunction<S> {
    pub fn new(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        num.try_add(&den)?;
        Ok(Self::reduce(num, den))
    }

    /// Trusts that `num/den` is already in lowest terms; only normalizes the denominator.
    pub fn from_coprime(num: Polynomial<S>, den: Polynomial<S>) -> Self {
        Self::normalize(num, den)
    }

    pub fn from_polynomial_in(p: Polynomial<S>, one: &S) -> Self {
        RationalFunction { num: p, den: Polynomial::constant(one.one_like()) }
    }

    fn unit(&self) -> S {
        self.den.coeffs()[0].one_like()
    }

    fn reduce(num: Polynomial<S>, den: Polynomial<S>) -> Self {
        if num.is_zero() {
            let one = den.coeffs()[0].one_like();
            return RationalFunction { num, den: Polynomial::constant(one) };
        }
        if den.is_constant() {
            return Self::normalize(num, den);
        }
        let g = S::poly_gcd(&num, &den);
        if g.is_constant() {
            return Self::normalize(num, den);
        }
        let n = num.exact_div(&g).expect("gcd divides numerator");
        let d = den.exact_div(&g).expect("gcd divides denominator");
        Self::normalize(n, d)
    }

    fn normalize(num: Polynomial<S>, den: Polynomial<S>) -> Self {
        if num.is_zero() {
            let one = den.coeffs()[0].one_like();
            return RationalFunction { num, den: Polynomial::constant(one) };
        }
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lc.inverse().expect("nonzero");
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn num(&self) -> &Polynomial<S> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<S> {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial<S>, Polynomial<S>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Re-check the reduced-form invariant from scratch.
    pub fn is_reduced(&self) -> bool {
        self.den.leading().is_some_and(|l| l.is_one()) && S::poly_gcd(&self.num, &self.den).is_constant()
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.num.try_add(&o.den)?;
        Ok(self.add_sub(o, false))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.num.try_add(&o.den)?;
        Ok(self.add_sub(o, true))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.num.try_add(&o.den)?;
        Ok(self.mul_reduced(o))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.num.try_add(&o.den)?;
        let inv = o.recip()?;
        Ok(self.mul_reduced(&inv))
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn add_sub(&self, o: &Self, subtract: bool) -> Self {
        let onum = if subtract { o.num.neg_poly() } else { o.num.clone() };
        if self.is_zero() {
            return RationalFunction { num: onum, den: o.den.clone() };
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.try_add(&onum).expect("same field");
            return Self::reduce(n, self.den.clone());
        }
        if self.den.is_constant() || o.den.is_constant() {
            let n = S::poly_mul(&self.num, &o.den).try_add(&S::poly_mul(&onum, &self.den)).expect("same field");
            return Self::normalize(n, S::poly_mul(&self.den, &o.den));
        }
        if let Some((n, d)) = S::fraction_sum(&self.num, &self.den, &onum, &o.den) {
            return RationalFunction { num: n, den: d };
        }
        let g = S::poly_gcd(&self.den, &o.den);
        let (b1, d1) = if g.is_constant() {
            (self.den.clone(), o.den.clone())
        } else {
            (self.den.exact_div(&g).expect("gcd"), o.den.exact_div(&g).expect("gcd"))
        };
        let n = S::poly_mul(&self.num, &d1).try_add(&S::poly_mul(&onum, &b1)).expect("same field");
        let den = S::poly_mul(&b1, &o.den);
        if g.is_constant() {
            return Self::normalize(n, den);
        }
        if n.is_zero() {
            return Self::normalize(n, den);
        }
        let g2 = S::poly_gcd(&n, &g);
        if g2.is_constant() {
            Self::normalize(n, den)
        } else {
            Self::normalize(n.exact_div(&g2).expect("gcd"), den.exact_div(&g2).expect("gcd"))
        }
    }

    fn mul_reduced(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RationalFunction { num: Polynomial::zero(), den: Polynomial::constant(self.unit()) };
        }
        let cancel = |n: &Polynomial<S>, d: &Polynomial<S>| {
            if d.is_constant() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = S::poly_gcd(n, d);
            if g.is_constant() {
                (n.clone(), d.clone())
            } else {
                (n.exact_div(&g).expect("gcd"), d.exact_div(&g).expect("gcd"))
            }
        };
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        Self::normalize(S::poly_mul(&a, &c), S::poly_mul(&b, &d))
    }

    pub fn neg_fn(&self) -> Self {
        RationalFunction { num: self.num.neg_poly(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return RationalFunction { num: Polynomial::zero(), den: Polynomial::constant(self.unit()) };
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `(n/d)' = (n'd − nd')/d²`, reduced.
    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return RationalFunction { num: self.num.derivative(), den: self.den.clone() };
        }
        // with d = g·h², the result already has denominator dividing d·(d/gcd(d,d'))
        let dp = self.den.derivative();
        let g = S::poly_gcd(&self.den, &dp);
        let (d1, dp1) = if g.is_constant() {
            (self.den.clone(), dp)
        } else {
            (self.den.exact_div(&g).expect("gcd"), dp.exact_div(&g).expect("gcd"))
        };
        let n = S::poly_mul(&self.num.derivative(), &d1).try_sub(&S::poly_mul(&self.num, &dp1)).expect("same field");
        let den = S::poly_mul(&self.den, &d1);
        Self::reduce(n, den)
    }

    pub fn eval(&self, x: &S) -> Option<S> {
        let d = self.den.eval(x)?;
        let n = self.num.eval(x).unwrap_or_else(|| x.zero_like());
        Some(n.times(&d.inverse()?))
    }
}

/// `p′/p` in lowest terms.
pub fn log_derivative<S: Scalar>(p: &Polynomial<S>) -> Result<RationalFunction<S>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(RationalFunction::reduce(p.derivative(), p.clone()))
}

impl RationalFunction<BigRational> {
    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn from_polynomial(p: Polynomial<BigRational>) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    /// Image `c·r(c·z)` in the Painlevé field for shift `2k`.
    pub fn scaled_image(&self, k: u32) -> RationalFunction<QuadExt> {
        let radicand = QuadExt::painleve_radicand(k);
        let c = Polynomial::constant(QuadExt::generator(&radicand));
        let n = c.try_mul(&self.num.substitute_scaled(k)).expect("same field");
        RationalFunction::from_coprime(n, self.den.substitute_scaled(k))
    }
}

impl RationalFunction<QuadExt> {
    pub fn zero_in(k: u32) -> Self {
        let one = QuadExt::from_rational(BigRational::one(), &QuadExt::painleve_radicand(k));
        RationalFunction { num: Polynomial::zero(), den: Polynomial::constant(one) }
    }

    pub fn from_rational_fn(r: &RationalFunction<BigRational>, k: u32) -> Self {
        let rad = QuadExt::painleve_radicand(k);
        RationalFunction {
            num: super::scalar::lift(&r.num, &rad),
            den: super::scalar::lift(&r.den, &rad),
        }
    }

    /// Rational image when no coefficient carries the generator.
    pub fn rational_part(&self) -> Option<RationalFunction<BigRational>> {
        let n = super::scalar::rational_parts(&self.num)?;
        let d = super::scalar::rational_parts(&self.den)?;
        Some(RationalFunction { num: n, den: d })
    }
}

impl<S: Scalar> fmt::Display for RationalFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Polynomial<S>| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

macro_rules! ratfn_ops {
    ($($tr:ident $m:ident $call:ident;)*) => {$(
        impl<'a> $tr<&'a RationalFunction<BigRational>> for &'a RationalFunction<BigRational> {
            type Output = RationalFunction<BigRational>;
            fn $m(self, rhs: &'a RationalFunction<BigRational>) -> RationalFunction<BigRational> {
                self.$call(rhs).expect("rational arithmetic")
            }
        }
        impl $tr for RationalFunction<BigRational> {
            type Output = RationalFunction<BigRational>;
            fn $m(self, rhs: RationalFunction<BigRational>) -> RationalFunction<BigRational> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

ratfn_ops! {
    Add add try_add;
    Sub sub try_sub;
    Mul mul try_mul;
    Div div try_div;
}

impl Neg for RationalFunction<BigRational> {
    type Output = RationalFunction<BigRational>;
    fn neg(self) -> Self {
        self.neg_fn()
    }
}

impl Neg for &RationalFunction<BigRational> {
    type Output = RationalFunction<BigRational>;
    fn neg(self) -> RationalFunction<BigRational> {
        self.neg_fn()
    }
}

impl From<Polynomial<BigRational>> for RationalFunction<BigRational> {
    fn from(p: Polynomial<BigRational>) -> Self {
        RationalFunction::from_polynomial(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{int, rat};
    use proptest::prelude::*;

    fn p(v: &[i64]) -> Polynomial<BigRational> {
        Polynomial::from_ints(v)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction<BigRational> {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn cancellation() {
        assert!((rf(&[1], &[0, 1]) + rf(&[-1], &[0, 1])).is_zero());
        let r = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(r.num(), &p(&[1, 1]));
        assert!(r.den().is_constant());
    }

    #[test]
    fn cross_multiplication() {
        // z/3 + 2z/(z²−3) = (z³+3z)/(3z²−9)
        let a = RationalFunction::from_polynomial(Polynomial::from_coeffs(vec![int(0), rat(1, 3)]));
        let b = rf(&[0, 2], &[-3, 0, 1]);
        let want = rf(&[0, 3, 0, 1], &[-9, 0, 3]);
        assert_eq!(&a + &b, want);
        assert!(want.is_reduced());
    }

    #[test]
    fn log_derivatives() {
        assert!(log_derivative(&p(&[5])).unwrap().is_zero());
        assert_eq!(log_derivative(&p(&[0, 0, 1])).unwrap(), rf(&[2], &[0, 1]));
        let l = log_derivative(&p(&[4, 0, 8])).unwrap();
        assert_eq!(l, rf(&[0, 4], &[1, 0, 2]));
        assert_eq!(l.den(), &Polynomial::from_coeffs(vec![rat(1, 2), int(0), int(1)]));
        assert!(matches!(log_derivative(&Polynomial::<BigRational>::zero()), Err(AlgebraError::ZeroPolynomial)));
    }

    #[test]
    fn division_by_zero_function() {
        assert!(rf(&[1], &[1, 1]).try_div(&RationalFunction::zero()).is_err());
        assert!(RationalFunction::new(p(&[1]), p(&[])).is_err());
    }

    #[test]
    fn derivative_of_quotient() {
        // (1/z)' = −1/z²
        assert_eq!(rf(&[1], &[0, 1]).derivative(), rf(&[-1], &[0, 0, 1]));
        // (z/(z²+1))' = (1−z²)/(z²+1)²
        assert_eq!(rf(&[0, 1], &[1, 0, 1]).derivative(), rf(&[1, 0, -1], &[1, 0, 2, 0, 1]));
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction<BigRational>> {
        (prop::collection::vec(-6i64..6, 0..5), prop::collection::vec(-6i64..6, 1..5))
            .prop_filter("nonzero den", |(_, d)| d.iter().any(|&x| x != 0))
            .prop_map(|(n, d)| RationalFunction::new(Polynomial::from_ints(&n), Polynomial::from_ints(&d)).unwrap())
    }

    fn arb_nonzero_poly() -> impl Strategy<Value = Polynomial<BigRational>> {
        prop::collection::vec(-6i64..6, 1..5)
            .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
            .prop_map(|v| Polynomial::from_ints(&v))
    }

    proptest! {
        #[test]
        fn arithmetic_stays_reduced(a in arb_rf(), b in arb_rf()) {
            for r in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(r.is_reduced());
            }
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
        }

        #[test]
        fn log_derivative_of_product(f in arb_nonzero_poly(), g in arb_nonzero_poly()) {
            let lhs = log_derivative(&(&f * &g)).unwrap();
            let rhs = &log_derivative(&f).unwrap() + &log_derivative(&g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn derivative_is_reduced(a in arb_rf()) {
            prop_assert!(a.derivative().is_reduced());
        }
    }
}
