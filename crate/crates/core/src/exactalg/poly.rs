use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{QuadExt, Scalar};
use super::AlgebraError;

/// Degree with a bottom element for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c·z^n`
    pub fn monomial(c: S, n: usize) -> Self {
        let mut v = vec![c.zero_like(); n + 1];
        v[n] = c;
        Polynomial::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&S> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn field_check(&self, other: &Self) -> Result<(), AlgebraError> {
        match (self.coeffs.first(), other.coeffs.first()) {
            (Some(a), Some(b)) if !a.same_field(b) => {
                Err(AlgebraError::FieldMismatch(a.field_name(), b.field_name()))
            }
            _ => Ok(()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.field_check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.field_check(other)?;
        Ok(self.add_unchecked(&other.neg_poly()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.field_check(other)?;
        Ok(S::poly_mul(self, other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut v = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            v[i] = v[i].plus(c);
        }
        Polynomial::from_coeffs(v)
    }

    pub fn neg_poly(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(Scalar::negated).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Polynomial::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.times_int(i as i64)).collect())
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn eval(&self, x: &S) -> Option<S> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = acc.times(x).plus(c);
        }
        Some(acc)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Field division with remainder.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        self.field_check(d)?;
        let lead_inv = d.leading().ok_or(AlgebraError::DivisionByZero)?.inverse().ok_or(AlgebraError::DivisionByZero)?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let zero = lead_inv.zero_like();
        let mut q = vec![zero; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].times(&lead_inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].minus(&c.times(dc));
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Polynomial::from_coeffs(q), Polynomial::from_coeffs(r)))
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.field_check(d).ok()?;
        S::poly_exact_div(self, d)
    }

    pub fn gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.field_check(other)?;
        Ok(S::poly_gcd(self, other))
    }

    /// Valuation at 0 (order of vanishing); `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Parity: `Some(0)` even, `Some(1)` odd, `None` mixed or zero.
    pub fn parity(&self) -> Option<usize> {
        let v = self.valuation()?;
        let p = v % 2;
        self.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || i % 2 == p).then_some(p)
    }
}

pub(crate) fn schoolbook_mul<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>) -> Polynomial<S> {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let zero = a.coeffs[0].zero_like();
    let mut v = vec![zero; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            v[i + j] = v[i + j].plus(&x.times(y));
        }
    }
    Polynomial::from_coeffs(v)
}

pub(crate) fn euclid_gcd<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>) -> Polynomial<S> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("same field");
        x = y;
        y = r;
    }
    x.monic()
}

impl Polynomial<BigRational> {
    pub fn from_ints(v: &[i64]) -> Self {
        Polynomial::from_coeffs(v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Polynomial::monomial(BigRational::one(), 1)
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    /// Image under `z ↦ c·z` with `c² = −1/(2k)`.
    pub fn substitute_scaled(&self, k: u32) -> Polynomial<QuadExt> {
        let radicand = QuadExt::painleve_radicand(k);
        let mut power = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c * &power;
            out.push(if j % 2 == 0 {
                QuadExt::new(v, BigRational::zero(), radicand.clone())
            } else {
                QuadExt::new(BigRational::zero(), v, radicand.clone())
            });
            if j % 2 == 1 {
                power = &power * &radicand;
            }
        }
        Polynomial::from_coeffs(out)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl<S: Scalar> Polynomial<S> {
    /// Pretty form like `8z^3 - 4z`.
    fn render(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s.contains(' ');
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, s),
            };
            let body = if compound { format!("({body})") } else { body };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        write!(f, "{body}")?;
                    }
                    if i == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, "z")
    }
}

macro_rules! rational_poly_ops {
    ($($tr:ident $m:ident $body:expr;)*) => {$(
        impl<'a> $tr<&'a Polynomial<BigRational>> for &'a Polynomial<BigRational> {
            type Output = Polynomial<BigRational>;
            fn $m(self, rhs: &'a Polynomial<BigRational>) -> Polynomial<BigRational> {
                let f: fn(&Polynomial<BigRational>, &Polynomial<BigRational>) -> Polynomial<BigRational> = $body;
                f(self, rhs)
            }
        }
        impl $tr for Polynomial<BigRational> {
            type Output = Polynomial<BigRational>;
            fn $m(self, rhs: Polynomial<BigRational>) -> Polynomial<BigRational> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

rational_poly_ops! {
    Add add |a, b| a.add_unchecked(b);
    Sub sub |a, b| a.add_unchecked(&b.neg_poly());
    Mul mul |a, b| BigRational::poly_mul(a, b);
}

impl Neg for Polynomial<BigRational> {
    type Output = Polynomial<BigRational>;
    fn neg(self) -> Self {
        self.neg_poly()
    }
}

impl Neg for &Polynomial<BigRational> {
    type Output = Polynomial<BigRational>;
    fn neg(self) -> Polynomial<BigRational> {
        self.neg_poly()
    }
}

/// Integer-content view used by serializers: numerators over a common positive denominator.
pub fn common_denominator(p: &Polynomial<BigRational>) -> (Vec<BigInt>, BigInt) {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let nums = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    fn p(v: &[i64]) -> Polynomial<BigRational> {
        Polynomial::from_ints(v)
    }

    #[test]
    fn monomial_products() {
        assert_eq!(&p(&[0, 2]) * &p(&[0, 2]), p(&[0, 0, 4]));
        assert_eq!(&p(&[-2, 0, 4]) + &p(&[2]), p(&[0, 0, 4]));
        assert_eq!(&p(&[0, 2]) * &p(&[-2, 0, 4]), p(&[0, -4, 0, 8]));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[-2, 0, 4]).derivative(), p(&[0, 8]));
        assert!(p(&[7]).derivative().is_zero());
        assert_eq!(p(&[0, -12, 0, 8]).derivative(), p(&[-12, 0, 24]));
    }

    #[test]
    fn zero_degree_sentinel() {
        let z = Polynomial::<BigRational>::zero();
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(z.degree() < p(&[3]).degree());
        assert_eq!((&p(&[1, 1]) - &p(&[1, 1])).degree(), Degree::NegInfinity);
    }

    #[test]
    fn division() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[-1, 1])), None);
    }

    #[test]
    fn substitution_k1() {
        let s = p(&[0, 0, 1]).substitute_scaled(1);
        assert_eq!(s.coeffs()[2].rational, rat(-1, 2));
        assert!(s.coeffs()[2].is_rational());
        let s = p(&[0, 1]).substitute_scaled(3);
        assert_eq!(s.coeffs()[1].radical, rat(1, 1));
        assert_eq!(s.coeffs()[1].radicand, rat(-1, 6));
    }

    #[test]
    fn substitution_odd_cubic() {
        // (z³+z)(cz) = c(c²z³ + z) = c(−z³/2 + z) for k = 1
        let s = p(&[0, 1, 0, 1]).substitute_scaled(1);
        assert_eq!(s.coeffs()[3].radical, rat(-1, 2));
        assert_eq!(s.coeffs()[1].radical, rat(1, 1));
        let c = QuadExt::generator(&QuadExt::painleve_radicand(1));
        let x = QuadExt::from_rational(rat(3, 1), &c.radicand);
        // evaluate both sides at z = 3: (3c)³ + 3c
        let cz = c.times(&x);
        let want = cz.times(&cz).times(&cz).plus(&cz);
        assert_eq!(s.eval(&x).unwrap(), want);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -4, 0, 8]).to_string(), "8z^3 - 4z");
        assert_eq!(p(&[1, 1]).to_string(), "z + 1");
        assert_eq!(Polynomial::<BigRational>::zero().to_string(), "0");
    }

    #[test]
    fn field_mismatch() {
        let a = Polynomial::constant(QuadExt::generator(&QuadExt::painleve_radicand(1)));
        let b = Polynomial::constant(QuadExt::generator(&QuadExt::painleve_radicand(3)));
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_add(&b).is_err());
    }
}
