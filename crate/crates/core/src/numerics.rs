//! Complex roots, residues and Laurent data of exact polynomials.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::{zpoly, Polynomial, RationalFunction, ZPoly};

pub const DEFAULT_BITS: u32 = 256;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("zero polynomial has no root set")]
    ZeroPolynomial,
    #[error("root finder did not converge ({found} of {degree} roots)")]
    NoConvergence { found: usize, degree: usize },
    #[error("precision must be at least 53 bits, got {0}")]
    PrecisionTooLow(u32),
    #[error("{0:?} is not a simple pole")]
    NotSimplePole(Complex64),
}

/// Complex number in fixed point: `(re + i·im) / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

impl FixedComplex {
    pub fn zero(bits: u32) -> Self {
        FixedComplex { re: BigInt::zero(), im: BigInt::zero(), bits }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        FixedComplex { re: n << bits, im: BigInt::zero(), bits }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        FixedComplex { re: (q.numer() << bits) / q.denom(), im: BigInt::zero(), bits }
    }

    pub fn from_c64(z: Complex64, bits: u32) -> Self {
        let conv = |x: f64| {
            let (m, e) = frexp(x);
            let m = BigInt::from((m * 2f64.powi(53)) as i64);
            let sh = e + bits as i32 - 53;
            if sh >= 0 {
                m << sh as u32
            } else {
                m >> (-sh) as u32
            }
        };
        FixedComplex { re: conv(z.re), im: conv(z.im), bits }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(fixed_to_f64(&self.re, self.bits), fixed_to_f64(&self.im, self.bits))
    }

    pub fn add(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re + &o.re, im: &self.im + &o.im, bits: self.bits }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re - &o.re, im: &self.im - &o.im, bits: self.bits }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = (&self.re * &o.re - &self.im * &o.im) >> self.bits;
        let im = (&self.re * &o.im + &self.im * &o.re) >> self.bits;
        FixedComplex { re, im, bits: self.bits }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << self.bits) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << self.bits) / &den;
        Some(FixedComplex { re, im, bits: self.bits })
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        FixedComplex { re: &self.re * n, im: &self.im * n, bits: self.bits }
    }

    /// `|z|` as a float.
    pub fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `log₂|z|`, robust for huge or tiny values.
    pub fn log2_abs(&self) -> f64 {
        let m = self.re.abs().max(self.im.abs());
        if m.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = m.bits() as i64;
        let lead = fixed_to_f64(&(&m >> (b.saturating_sub(60)) as u32), 0);
        lead.log2() + (b.saturating_sub(60)) as f64 - self.bits as f64
    }
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (0.0, 0);
    }
    let e = x.abs().log2().floor() as i32 + 1;
    let m = x / 2f64.powi(e);
    (m, e)
}

fn fixed_to_f64(v: &BigInt, bits: u32) -> f64 {
    let b = v.bits();
    if b <= 60 {
        return v.to_f64().unwrap_or(0.0) / 2f64.powi(bits as i32);
    }
    let sh = b - 60;
    (v >> sh).to_f64().unwrap_or(0.0) * 2f64.powi(sh as i32 - bits as i32)
}

/// Roots with multiplicity, as floats and at full precision.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub precise: Vec<FixedComplex>,
    /// Largest `|p(ζ)| / ‖p‖∞` over the roots.
    pub residual_bound: f64,
    pub source_degree: usize,
}

/// Square-free decomposition `p = c·∏ gᵢ^i` over Z.
pub fn squarefree_decomposition(p: &ZPoly) -> Vec<(ZPoly, usize)> {
    let mut out = Vec::new();
    if p.deg() <= 0 {
        return out;
    }
    let a = p.primitive();
    let b = a.derivative();
    let c = zpoly::gcd(&a, &b);
    let mut w = zpoly::exact_div(&a, &c).expect("gcd divides");
    let mut y = zpoly::exact_div(&b, &c).expect("gcd divides");
    let mut z = zpoly::sub(&y, &w.derivative());
    let mut i = 1;
    while w.deg() > 0 {
        let g = if z.is_zero() { w.clone() } else { zpoly::gcd(&w, &z) };
        if g.deg() > 0 {
            out.push((g.primitive(), i));
        }
        w = zpoly::exact_div(&w, &g).expect("gcd divides");
        y = zpoly::exact_div(&z, &g).expect("gcd divides");
        z = zpoly::sub(&y, &w.derivative());
        i += 1;
    }
    out
}

fn horner_c64(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth–Ehrlich on a square-free integer polynomial, in double precision.
fn aberth(p: &ZPoly) -> Vec<Complex64> {
    let d = p.deg() as usize;
    let lc = BigRational::from_integer(p.lc().clone());
    let c: Vec<Complex64> = p
        .c
        .iter()
        .map(|x| Complex64::new((BigRational::from_integer(x.clone()) / &lc).to_f64().unwrap_or(0.0), 0.0))
        .collect();
    let radius = (0..d)
        .filter(|&j| c[j].norm() > 0.0)
        .map(|j| c[j].norm().powf(1.0 / (d - j) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (v, dv) = horner_c64(&c, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn horner_fixed(p: &ZPoly, z: &FixedComplex) -> (FixedComplex, FixedComplex) {
    let bits = z.bits;
    let mut v = FixedComplex::zero(bits);
    let mut dv = FixedComplex::zero(bits);
    for a in p.c.iter().rev() {
        dv = dv.mul(z).add(&v);
        v = v.mul(z).add(&FixedComplex::from_int(a, bits));
    }
    (v, dv)
}

/// Newton iteration at full precision; `None` if it fails to settle.
fn newton_refine(p: &ZPoly, z0: Complex64, bits: u32) -> Option<FixedComplex> {
    let mut z = FixedComplex::from_c64(z0, bits);
    let target = -(bits as f64) + 24.0;
    for _ in 0..60 {
        let (v, dv) = horner_fixed(p, &z);
        if v.re.is_zero() && v.im.is_zero() {
            return Some(z);
        }
        let step = v.div(&dv)?;
        z = z.sub(&step);
        if step.log2_abs() < target + z.log2_abs().max(0.0) {
            return Some(z);
        }
    }
    None
}

/// All complex roots with multiplicity, refined to `bits` of precision.
pub fn complex_roots(p: &Polynomial<BigRational>, bits: u32) -> Result<RootSet, NumericsError> {
    if bits < 53 {
        return Err(NumericsError::PrecisionTooLow(bits));
    }
    if p.is_zero() {
        return Err(NumericsError::ZeroPolynomial);
    }
    let (_, zp) = zpoly::from_rational(p);
    roots_of_int(&zp, bits)
}

pub fn roots_of_int(zp: &ZPoly, bits: u32) -> Result<RootSet, NumericsError> {
    let degree = zp.deg().max(0) as usize;
    let mut found: Vec<(FixedComplex, usize)> = Vec::new();
    for (g, mult) in squarefree_decomposition(zp) {
        let d = g.deg() as usize;
        let mut own: Vec<FixedComplex> = Vec::with_capacity(d);
        if d == 1 {
            let q = BigRational::new(-g.c[0].clone(), g.c[1].clone());
            own.push(FixedComplex::from_rational(&q, bits));
        } else {
            for z0 in aberth(&g) {
                match newton_refine(&g, z0, bits) {
                    Some(r) if !own.iter().any(|o| o.sub(&r).log2_abs() < -(bits as f64) / 2.0) => own.push(r),
                    _ => {}
                }
            }
        }
        if own.len() != d {
            return Err(NumericsError::NoConvergence { found: found.len() + own.len(), degree });
        }
        found.extend(own.into_iter().map(|r| (r, mult)));
    }
    found.sort_by(|a, b| {
        let (x, y) = (a.0.to_c64(), b.0.to_c64());
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });
    let norm = zp.max_norm();
    let lognorm = FixedComplex::from_int(&norm, 0).log2_abs();
    let mut worst = f64::NEG_INFINITY;
    for (r, _) in &found {
        let (v, _) = horner_fixed(zp, r);
        worst = worst.max(v.log2_abs() - lognorm);
    }
    let mut precise = Vec::with_capacity(degree);
    for (r, m) in found {
        for _ in 0..m {
            precise.push(r.clone());
        }
    }
    Ok(RootSet {
        roots: precise.iter().map(FixedComplex::to_c64).collect(),
        precise,
        residual_bound: if worst.is_finite() { worst.exp2() } else { 0.0 },
        source_degree: degree,
    })
}

/// Taylor coefficients `p(ζ+t) = Σ cₗ tˡ` for `l < count`.
fn taylor(p: &ZPoly, z: &FixedComplex, count: usize) -> Vec<FixedComplex> {
    let bits = z.bits;
    let mut cur: Vec<FixedComplex> = p.c.iter().map(|a| FixedComplex::from_int(a, bits)).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if cur.is_empty() {
            out.push(FixedComplex::zero(bits));
            continue;
        }
        // synthetic division by (x − ζ)
        let n = cur.len();
        let mut q = vec![FixedComplex::zero(bits); n - 1];
        let mut acc = FixedComplex::zero(bits);
        for i in (0..n).rev() {
            acc = acc.mul(z).add(&cur[i]);
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        out.push(acc);
        cur = q;
    }
    out
}

fn series_div(a: &[FixedComplex], b: &[FixedComplex], count: usize) -> Option<Vec<FixedComplex>> {
    let bits = b[0].bits;
    let mut q: Vec<FixedComplex> = Vec::with_capacity(count);
    for l in 0..count {
        let mut acc = a.get(l).cloned().unwrap_or_else(|| FixedComplex::zero(bits));
        for j in 1..=l {
            if let Some(bj) = b.get(j) {
                acc = acc.sub(&bj.mul(&q[l - j]));
            }
        }
        q.push(acc.div(&b[0])?);
    }
    Some(q)
}

fn series_mul(a: &[FixedComplex], b: &[FixedComplex], count: usize) -> Vec<FixedComplex> {
    let bits = a[0].bits;
    (0..count)
        .map(|l| {
            (0..=l)
                .filter(|&j| j < a.len() && l - j < b.len())
                .fold(FixedComplex::zero(bits), |acc, j| acc.add(&a[j].mul(&b[l - j])))
        })
        .collect()
}

/// Laurent data of a rational function at a simple pole or regular point.
#[derive(Clone, Debug)]
pub struct Laurent {
    /// `1` at a simple pole, `0` at a regular point.
    pub order: usize,
    /// Coefficients of `t^{l−order}` in `w(ζ+t)`.
    pub coeffs: Vec<FixedComplex>,
}

impl Laurent {
    pub fn residue(&self) -> Complex64 {
        if self.order == 0 {
            return Complex64::zero();
        }
        self.coeffs[0].to_c64()
    }

    /// `Res w^m` at the expansion point.
    pub fn power_residue(&self, m: usize) -> Complex64 {
        if self.order == 0 || m == 0 {
            return Complex64::zero();
        }
        // w^m = t^{−m} s(t)^m with s = t·w
        let need = m;
        let mut acc = self.coeffs[..need.min(self.coeffs.len())].to_vec();
        let s = acc.clone();
        for _ in 1..m {
            acc = series_mul(&acc, &s, need);
        }
        acc.get(m - 1).map(FixedComplex::to_c64).unwrap_or_default()
    }
}

fn rational_scale(r: &RationalFunction<BigRational>) -> (BigRational, ZPoly, ZPoly) {
    let (sn, pn) = zpoly::from_rational(r.num());
    let (sd, pd) = zpoly::from_rational(r.den());
    (sn / sd, pn, pd)
}

/// Expansion of `w` at `ζ` with `count` coefficients, treating a near-root of the denominator as a pole.
pub fn laurent(w: &RationalFunction<BigRational>, zeta: &FixedComplex, count: usize) -> Result<Laurent, NumericsError> {
    let bits = zeta.bits;
    if w.is_zero() {
        return Ok(Laurent { order: 0, coeffs: vec![FixedComplex::zero(bits); count] });
    }
    let (s, pn, pd) = rational_scale(w);
    let scale = FixedComplex::from_rational(&s, bits);
    let dn = taylor(&pd, zeta, count + 2);
    let nn = taylor(&pn, zeta, count + 1);
    let pole = dn[0].log2_abs() < -(bits as f64) / 2.0 + pd.max_bits() as f64;
    let (num, den): (&[FixedComplex], &[FixedComplex]) = if pole { (&nn, &dn[1..]) } else { (&nn, &dn) };
    if den[0].log2_abs() < -(bits as f64) / 2.0 {
        return Err(NumericsError::NotSimplePole(zeta.to_c64()));
    }
    let q = series_div(num, den, count).ok_or(NumericsError::NotSimplePole(zeta.to_c64()))?;
    Ok(Laurent { order: usize::from(pole), coeffs: q.iter().map(|c| c.mul(&scale)).collect() })
}

/// Residue of `w` at the simple pole near `zeta`, refining `zeta` first.
pub fn numeric_residue(w: &RationalFunction<BigRational>, zeta: Complex64) -> Result<Complex64, NumericsError> {
    let (_, _, pd) = rational_scale(w);
    let z = if pd.deg() == 1 {
        FixedComplex::from_rational(&BigRational::new(-pd.c[0].clone(), pd.c[1].clone()), DEFAULT_BITS)
    } else {
        newton_refine(&pd, zeta, DEFAULT_BITS).ok_or(NumericsError::NotSimplePole(zeta))?
    };
    let l = laurent(w, &z, 1)?;
    if l.order == 0 {
        return Err(NumericsError::NotSimplePole(zeta));
    }
    Ok(l.residue())
}

/// `re,im` rows with 17 significant digits.
pub fn zeros_csv(roots: &RootSet) -> String {
    let mut s = String::from("re,im\n");
    for r in &roots.roots {
        writeln!(s, "{:.16e},{:.16e}", clean(r.re), clean(r.im)).expect("string write");
    }
    s
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Scatter plot on an 800×800 canvas.
pub fn zeros_svg(roots: &RootSet) -> String {
    let (mut lo, mut hi) = (Complex64::new(-1.0, -1.0), Complex64::new(1.0, 1.0));
    for r in &roots.roots {
        lo = Complex64::new(lo.re.min(r.re), lo.im.min(r.im));
        hi = Complex64::new(hi.re.max(r.re), hi.im.max(r.im));
    }
    let span = (hi.re - lo.re).max(hi.im - lo.im) * 1.1;
    let mid = (lo + hi) / 2.0;
    let map = |r: Complex64| {
        let x = 400.0 + (r.re - mid.re) / span * 800.0;
        let y = 400.0 - (r.im - mid.im) / span * 800.0;
        (x, y)
    };
    let mut s = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" width=\"800\" height=\"800\">\n",
    );
    s.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
    let (ox, oy) = map(Complex64::zero());
    writeln!(s, "<line x1=\"0\" y1=\"{oy:.3}\" x2=\"800\" y2=\"{oy:.3}\" stroke=\"#ccc\"/>").expect("string write");
    writeln!(s, "<line x1=\"{ox:.3}\" y1=\"0\" x2=\"{ox:.3}\" y2=\"800\" stroke=\"#ccc\"/>").expect("string write");
    for r in &roots.roots {
        let (x, y) = map(*r);
        writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"black\"/>").expect("string write");
    }
    s.push_str("</svg>\n");
    s
}

/// `‖p‖∞`-relative residual of `p` at a float point.
pub fn relative_residual(p: &Polynomial<BigRational>, z: &FixedComplex) -> f64 {
    let (_, zp) = zpoly::from_rational(p);
    let (v, _) = horner_fixed(&zp, z);
    let n = FixedComplex::from_int(&zp.max_norm(), 0).log2_abs();
    (v.log2_abs() - n).exp2()
}

pub fn one_fixed(bits: u32) -> FixedComplex {
    FixedComplex::from_int(&BigInt::one(), bits)
}
