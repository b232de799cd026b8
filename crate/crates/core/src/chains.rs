//! Dressing-chain and A₂ₙ-Painlevé solutions built from Maya cycles, with exact verification.

use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cycles::{build_cycle, ColouredSequence, CycleError, MayaCycle};
use crate::exactalg::{
    int, integer_fraction, join, quad_integer_fraction, split, AlgebraError, PolyRing, Polynomial, QuadExt, RationalFunction,
    Scalar, ZPoly, ZQuadPoly,
};
use crate::exactalg::zpoly::{self, Term};
use num_integer::Integer;
use crate::hermite::{tau, wronskian_label, Tau};
use crate::maya::MayaDiagram;
use crate::numerics::{self, FixedComplex, NumericsError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChainError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("shift is zero")]
    ZeroShift,
    #[error("shift {0} is not a positive even integer")]
    UnsupportedShift(String),
    #[error("cycle length {0} is not odd")]
    EvenCycle(usize),
    #[error("{what}: expected {expected} entries, got {got}")]
    Length { what: &'static str, expected: usize, got: usize },
    #[error("cannot parse {0}")]
    Parse(String),
}

/// `(w₀, …, w_{2n} | a₀, …, a_{2n})` with shift `Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DressingChainSolution {
    w: Vec<RationalFunction<BigRational>>,
    a: Vec<BigRational>,
    delta: BigRational,
    cycle: Option<MayaCycle>,
}

impl DressingChainSolution {
    pub fn new(w: Vec<RationalFunction<BigRational>>, a: Vec<BigRational>, delta: BigRational) -> Result<Self, ChainError> {
        if w.len() != a.len() {
            return Err(ChainError::Length { what: "a", expected: w.len(), got: a.len() });
        }
        if w.len().is_multiple_of(2) {
            return Err(ChainError::EvenCycle(w.len()));
        }
        Ok(DressingChainSolution { w, a, delta, cycle: None })
    }

    pub fn w(&self) -> &[RationalFunction<BigRational>] {
        &self.w
    }

    pub fn a(&self) -> &[BigRational] {
        &self.a
    }

    pub fn delta(&self) -> &BigRational {
        &self.delta
    }

    /// The Maya cycle the solution was built from, if any.
    pub fn cycle(&self) -> Option<&MayaCycle> {
        self.cycle.as_ref()
    }

    pub fn n(&self) -> usize {
        self.w.len() / 2
    }

    /// Primitive τ-functions of the cycle, `M₀ … M_{p−1}`.
    fn taus(&self) -> Option<Vec<Arc<Tau>>> {
        self.cycle.as_ref().map(|c| c.diagrams[..c.p()].iter().map(tau).collect())
    }

    /// `∏ τᵢ`, a common multiple of every denominator when built from a cycle.
    fn denominator_hint(&self) -> Option<ZPoly> {
        let t = self.taus()?;
        Some(t.iter().fold(ZPoly::one(), |acc, x| zpoly::mul(&acc, &x.primitive)))
    }

    /// Equal functions, parameters and shift; provenance ignored.
    pub fn same_solution(&self, o: &Self) -> bool {
        self.w == o.w && self.a == o.a && self.delta == o.delta
    }

    /// `k = Δ/2` when it is a positive integer.
    pub fn k(&self) -> Result<u32, ChainError> {
        shift_k(&self.delta)
    }
}

fn shift_k(delta: &BigRational) -> Result<u32, ChainError> {
    if Zero::is_zero(delta) {
        return Err(ChainError::ZeroShift);
    }
    let half = delta / int(2);
    if !half.is_integer() || !half.is_positive() {
        return Err(ChainError::UnsupportedShift(delta.to_string()));
    }
    half.to_integer().to_u32().ok_or_else(|| ChainError::UnsupportedShift(delta.to_string()))
}

/// `(f₀, …, f_{2n} | α₀, …, α_{2n})` over `Q(c)`, `c² = −1/(2k)`.
#[derive(Clone, Debug)]
pub struct PainleveSolution {
    pub alpha: Vec<BigRational>,
    pub k: u32,
    f: OnceLock<Vec<RationalFunction<QuadExt>>>,
    /// `Fᵢ` with `fᵢ(z) = c·Fᵢ(cz)`.
    scaled: Option<Vec<RationalFunction<BigRational>>>,
    hint: Option<ZPoly>,
}

impl PartialEq for PainleveSolution {
    fn eq(&self, o: &Self) -> bool {
        self.k == o.k && self.alpha == o.alpha && self.f() == o.f()
    }
}

fn check_shape(len: usize, alpha: &[BigRational], k: u32) -> Result<(), ChainError> {
    if len != alpha.len() {
        return Err(ChainError::Length { what: "alpha", expected: len, got: alpha.len() });
    }
    if len.is_multiple_of(2) {
        return Err(ChainError::EvenCycle(len));
    }
    if k == 0 {
        return Err(ChainError::ZeroShift);
    }
    Ok(())
}

impl PainleveSolution {
    pub fn new(f: Vec<RationalFunction<QuadExt>>, alpha: Vec<BigRational>, k: u32) -> Result<Self, ChainError> {
        check_shape(f.len(), &alpha, k)?;
        Ok(PainleveSolution { alpha, k, f: OnceLock::from(f), scaled: None, hint: None })
    }

    /// `fᵢ(z) = c·Fᵢ(cz)` from rational `Fᵢ`.
    pub fn from_scaled(big_f: Vec<RationalFunction<BigRational>>, alpha: Vec<BigRational>, k: u32) -> Result<Self, ChainError> {
        check_shape(big_f.len(), &alpha, k)?;
        Ok(PainleveSolution { alpha, k, f: OnceLock::new(), scaled: Some(big_f), hint: None })
    }

    /// Solution whose functions have rational coefficients.
    pub fn from_rational(f: &[RationalFunction<BigRational>], alpha: Vec<BigRational>, k: u32) -> Result<Self, ChainError> {
        let f = f.iter().map(|r| RationalFunction::from_rational_fn(r, k)).collect();
        Self::new(f, alpha, k)
    }

    pub fn f(&self) -> &[RationalFunction<QuadExt>] {
        self.f.get_or_init(|| {
            self.scaled.as_ref().map(|v| v.iter().map(|r| r.scaled_image(self.k)).collect()).unwrap_or_default()
        })
    }

    pub fn scaled(&self) -> Option<&[RationalFunction<BigRational>]> {
        self.scaled.as_deref()
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn n(&self) -> usize {
        self.len() / 2
    }

    /// Rational images of the `fᵢ`, if none involves `c`.
    pub fn rational_f(&self) -> Option<Vec<RationalFunction<BigRational>>> {
        self.f().iter().map(RationalFunction::rational_part).collect()
    }
}

/// `U_M` attached to a Maya diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalExtension {
    pub diagram: MayaDiagram,
    pub potential: RationalFunction<BigRational>,
}

impl RationalExtension {
    /// `U_M − z² − 2s_M` vanishes at infinity.
    pub fn is_proper_correction(&self) -> bool {
        let base = Polynomial::from_coeffs(vec![int(2 * self.diagram.index()), BigRational::zero(), BigRational::one()]);
        let c = self.potential.try_sub(&RationalFunction::from_polynomial(base)).expect("same field");
        c.is_zero() || c.num().degree() < c.den().degree()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Named pass/fail checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl FnOnce() -> String) {
        let detail = (!passed).then(detail);
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

/// `n′d − nd′`: numerator of `(n/d)′` over `d²`.
fn wronskian_numerator<R: PolyRing>(n: &R, d: &R) -> R {
    if d.is_constant() {
        return n.derivative().mul(d);
    }
    n.derivative().mul(d).sub(&n.mul(&d.derivative()))
}

/// `(Σ sⱼ·Pⱼ·∏_{l≠j} Q_l, ∏ Q_l)` with signs `sⱼ ∈ {±1}`.
fn signed_sum_numerator<R: PolyRing>(fs: &[&(R, R)], signs: &[i64]) -> (R, R) {
    let m = fs.len();
    let one = fs[0].1.one_like();
    let mut prefix = vec![one.clone()];
    for f in fs {
        let last = prefix.last().expect("nonempty").clone();
        prefix.push(last.mul(&f.1));
    }
    let mut suffix = vec![one; m + 1];
    for j in (0..m).rev() {
        suffix[j] = suffix[j + 1].mul(&fs[j].1);
    }
    let mut acc = fs[0].1.zero_like();
    for j in 0..m {
        let t = fs[j].0.mul(&prefix[j]).mul(&suffix[j + 1]);
        acc = if signs[j] > 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    (acc, prefix[m].clone())
}

/// Numerator of the `i`-th A₂ₙ residual over `v·Qᵢ²·∏_{l≠i} Q_l`.
fn a2n_residual<R: PolyRing>(f: &[(R, R)], i: usize, alpha: &BigRational) -> R {
    let p = f.len();
    let (pi, qi) = &f[i];
    let (u, v) = (alpha.numer(), alpha.denom());
    if p == 1 {
        return wronskian_numerator(pi, qi).scale(v).sub(&qi.mul(qi).scale(u));
    }
    let others: Vec<&(R, R)> = (1..p).map(|o| &f[(i + o) % p]).collect();
    let signs: Vec<i64> = (1..p).map(|o| if o % 2 == 1 { 1 } else { -1 }).collect();
    let (sum, r) = signed_sum_numerator(&others, &signs);
    let t1 = wronskian_numerator(pi, qi).mul(&r);
    let t2 = pi.mul(qi).mul(&sum);
    let t3 = qi.mul(qi).mul(&r).scale(u);
    t1.add(&t2).scale(v).sub(&t3)
}

/// Numerator of `Σ fᵢ − c·z`.
fn sum_residual<R: PolyRing>(f: &[(R, R)], c: &BigRational) -> R {
    let refs: Vec<&(R, R)> = f.iter().collect();
    let (sum, den) = signed_sum_numerator(&refs, &vec![1; f.len()]);
    let z = den.z_times(c.numer());
    sum.scale(c.denom()).sub(&z.mul(&den))
}

/// `fᵢ = Pᵢ/L` over one integer denominator.
struct CommonForm {
    p: Vec<ZPoly>,
    l: ZPoly,
    dl: ZPoly,
}

impl CommonForm {
    /// Uses `hint` as the denominator when every `Dᵢ` divides it.
    fn new(f: &[(ZPoly, ZPoly)], hint: Option<&ZPoly>) -> Self {
        let parts: Vec<(BigInt, ZPoly)> = f.iter().map(|(_, d)| (d.content() * d.lc().signum(), d.primitive())).collect();
        let quotients = hint.and_then(|h| parts.iter().map(|(_, d)| zpoly::exact_div(h, d)).collect::<Option<Vec<_>>>());
        let (l, quotients) = match (hint, quotients) {
            (Some(h), Some(q)) => (h.clone(), q),
            _ => {
                let mut l = ZPoly::one();
                for (_, d) in &parts {
                    let g = zpoly::gcd(&l, d).primitive();
                    l = zpoly::mul(&l, &zpoly::exact_div(d, &g).expect("gcd divides"));
                }
                let q = parts.iter().map(|(_, d)| zpoly::exact_div(&l, d).expect("lcm")).collect();
                (l, q)
            }
        };
        let m = parts.iter().fold(BigInt::one(), |m, (c, _)| m.lcm(c));
        let mut p = Vec::with_capacity(f.len());
        for (((n, _), (c, _)), q) in f.iter().zip(&parts).zip(&quotients) {
            p.push(zpoly::mul(n, q).scale(&(&m / c)));
        }
        let l = l.scale(&m);
        let dl = l.derivative();
        CommonForm { p, l, dl }
    }

    /// `v·(S′L + S·(Pᵢ₊₁ − Pᵢ − L′)) = u·L²` with `S = Pᵢ + Pᵢ₊₁`, for every `i`.
    fn chain_holds(&self, a: &[BigRational]) -> Vec<bool> {
        let n = self.p.len();
        let parts: Vec<(ZPoly, ZPoly, ZPoly, BigInt)> = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                let s = zpoly::add(&self.p[i], &self.p[j]);
                let t = zpoly::sub(&zpoly::sub(&self.p[j], &self.p[i]), &self.dl);
                (s.derivative(), s, t, -a[i].numer())
            })
            .collect();
        let ids: Vec<Vec<Term>> = parts
            .iter()
            .zip(a)
            .map(|((ds, s, t, u), a)| vec![(a.denom(), ds, &self.l), (a.denom(), s, t), (u, &self.l, &self.l)])
            .collect();
        zpoly::all_vanish(&ids)
    }

    /// `v·(Pᵢ′L + Pᵢ·(Σ±Pⱼ − L′)) = u·L²`, for every `i`.
    fn a2n_holds(&self, alpha: &[BigRational]) -> Vec<bool> {
        let n = self.p.len();
        let parts: Vec<(ZPoly, ZPoly, BigInt)> = (0..n)
            .map(|i| {
                let mut t = self.dl.neg();
                for o in 1..n {
                    let q = &self.p[(i + o) % n];
                    t = if o % 2 == 1 { zpoly::add(&t, q) } else { zpoly::sub(&t, q) };
                }
                (self.p[i].derivative(), t, -alpha[i].numer())
            })
            .collect();
        let ids: Vec<Vec<Term>> = parts
            .iter()
            .zip(alpha)
            .enumerate()
            .map(|(i, ((dp, t, u), a))| vec![(a.denom(), dp, &self.l), (a.denom(), &self.p[i], t), (u, &self.l, &self.l)])
            .collect();
        zpoly::all_vanish(&ids)
    }

    /// `v·ΣPᵢ − u·z·L`.
    fn sum_residual(&self, c: &BigRational) -> ZPoly {
        let s = self.p.iter().fold(ZPoly::zero(), |acc, x| zpoly::add(&acc, x));
        let zl = self.l.shift(1).scale(c.numer());
        zpoly::sub(&s.scale(c.denom()), &zl)
    }
}

/// `σz + t₁′/t₁ − t₀′/t₀`, reduced.
fn log_difference(sigma: i64, t0: &ZPoly, t1: &ZPoly) -> RationalFunction<BigRational> {
    let lin = ZPoly::new(vec![BigInt::zero(), BigInt::from(sigma)]);
    if t0 == t1 {
        return RationalFunction::from_polynomial(zpoly::to_rational(&lin, &BigRational::one()));
    }
    let den = zpoly::mul(t0, t1);
    let cross = zpoly::sub(&zpoly::mul(&t1.derivative(), t0), &zpoly::mul(&t0.derivative(), t1));
    let num = zpoly::add(&zpoly::mul(&lin, &den), &cross);
    let g = zpoly::gcd(&num, &den).primitive();
    let (num, den) = if g.deg() > 0 {
        (zpoly::exact_div(&num, &g).expect("gcd"), zpoly::exact_div(&den, &g).expect("gcd"))
    } else {
        (num, den)
    };
    let one = BigRational::one();
    RationalFunction::from_coprime(zpoly::to_rational(&num, &one), zpoly::to_rational(&den, &one))
}

/// Solution of the dressing chain attached to a Maya cycle.
pub fn build_chain(c: &MayaCycle) -> Result<DressingChainSolution, ChainError> {
    c.validate()?;
    let p = c.p();
    if p.is_multiple_of(2) {
        return Err(ChainError::EvenCycle(p));
    }
    let taus: Vec<_> = c.diagrams[..p].iter().map(tau).collect();
    let w = (0..p)
        .map(|i| log_difference(c.sigma[i] as i64, &taus[i].primitive, &taus[(i + 1) % p].primitive))
        .collect();
    let mu_next = |i: usize| if i + 1 < p { c.mu[i + 1] } else { c.mu[0] + c.k };
    let a = (0..p).map(|i| int(2 * (c.mu[i] - mu_next(i)))).collect();
    Ok(DressingChainSolution { w, a, delta: int(2 * c.k), cycle: Some(c.clone()) })
}

/// [`build_cycle`] followed by [`build_chain`].
pub fn build_from_sequence(seq: &ColouredSequence) -> Result<DressingChainSolution, ChainError> {
    build_chain(&build_cycle(seq)?)
}

/// `fᵢ(z) = c·(wᵢ + wᵢ₊₁)(cz)`, `αᵢ = −aᵢ/Δ`.
pub fn to_painleve(s: &DressingChainSolution) -> Result<PainleveSolution, ChainError> {
    let k = s.k()?;
    let alpha = s.a.iter().map(|a| -a / &s.delta).collect();
    let mut out = PainleveSolution::from_scaled(unnormalized(s)?, alpha, k)?;
    out.hint = s.denominator_hint();
    Ok(out)
}

/// `f̃ᵢ = wᵢ + wᵢ₊₁` with parameters `aᵢ`, before rescaling.
pub fn unnormalized(s: &DressingChainSolution) -> Result<Vec<RationalFunction<BigRational>>, ChainError> {
    let p = s.w.len();
    if let (Some(c), Some(t)) = (&s.cycle, s.taus()) {
        let f = (0..p).map(|i| {
            let sigma = c.sigma[i] as i64 + c.sigma[(i + 1) % p] as i64;
            log_difference(sigma, &t[i].primitive, &t[(i + 2) % p].primitive)
        });
        return Ok(f.collect());
    }
    (0..p).map(|i| s.w[i].try_add(&s.w[(i + 1) % p]).map_err(ChainError::from)).collect()
}

fn chain_residual_fn(s: &DressingChainSolution, i: usize) -> String {
    let p = s.w.len();
    let (wi, wj) = (&s.w[i], &s.w[(i + 1) % p]);
    let r = wi
        .try_add(wj).map(|x| x.derivative())
        .and_then(|x| x.try_add(&wj.try_mul(wj)?))
        .and_then(|x| x.try_sub(&wi.try_mul(wi)?))
        .and_then(|x| x.try_sub(&RationalFunction::constant(s.a[i].clone())));
    match r {
        Ok(r) => format!("residual {r}"),
        Err(e) => e.to_string(),
    }
}

/// Exact check of every chain equation and of `Σwᵢ = −(Δ/2)z`, `Σaᵢ = −Δ`.
pub fn verify_chain(s: &DressingChainSolution) -> Report {
    let w: Vec<(ZPoly, ZPoly)> = s.w.iter().map(integer_fraction).collect();
    let mut rep = Report::default();
    let p = w.len();
    let c = -&s.delta / int(2);
    if p > 0 {
        let cf = CommonForm::new(&w, s.denominator_hint().as_ref());
        for (i, ok) in cf.chain_holds(&s.a).into_iter().enumerate() {
            rep.record(format!("chain equation {i}"), ok, || chain_residual_fn(s, i));
        }
        rep.record("sum of w", cf.sum_residual(&c).is_zero(), || format!("sum of w differs from {c}·z"));
    }
    let sa: BigRational = s.a.iter().sum();
    rep.record("sum of a", sa == -&s.delta, || format!("sum of a is {sa}, expected {}", -&s.delta));
    rep
}

fn painleve_residual_fn<S: Scalar>(f: &[RationalFunction<S>], i: usize, alpha: &S) -> String {
    let p = f.len();
    let mut acc = f[i].derivative();
    for o in 1..p {
        let t = match f[i].try_mul(&f[(i + o) % p]) {
            Ok(t) => t,
            Err(e) => return e.to_string(),
        };
        acc = if o % 2 == 1 { acc.try_add(&t) } else { acc.try_sub(&t) }.expect("same field");
    }
    let c = RationalFunction::from_polynomial_in(Polynomial::constant(alpha.clone()), alpha);
    match acc.try_sub(&c) {
        Ok(r) => format!("residual {r}"),
        Err(e) => e.to_string(),
    }
}

fn verify_a2n<R: PolyRing, S: Scalar>(
    fi: &[(R, R)],
    f: &[RationalFunction<S>],
    alpha: &[BigRational],
    lift: impl Fn(&BigRational) -> S,
    c: &BigRational,
    label: &str,
) -> Report {
    let mut rep = Report::default();
    for (i, al) in alpha.iter().enumerate().take(fi.len()) {
        let r = a2n_residual(fi, i, al);
        rep.record(format!("{label} equation {i}"), r.is_zero(), || painleve_residual_fn(f, i, &lift(al)));
    }
    if !fi.is_empty() {
        let r = sum_residual(fi, c);
        rep.record(format!("{label} sum of f"), r.is_zero(), || format!("sum of f differs from {c}·z"));
    }
    rep
}

fn verify_a2n_common(
    cf: &CommonForm,
    params: &[BigRational],
    c: &BigRational,
    label: &str,
    detail: impl Fn(usize) -> String,
    sum_detail: impl Fn() -> String,
) -> Report {
    let mut rep = Report::default();
    for (i, ok) in cf.a2n_holds(params).into_iter().enumerate() {
        rep.record(format!("{label} equation {i}"), ok, || detail(i));
    }
    if !params.is_empty() {
        rep.record(format!("{label} sum of f"), cf.sum_residual(c).is_zero(), sum_detail);
    }
    rep
}

/// `Fᵢ(y) = λ·fᵢ(λy)` with `λ = 1/c`, when every `Fᵢ` has rational coefficients.
fn unscaled(f: &[RationalFunction<QuadExt>], k: u32) -> Option<Vec<(ZPoly, ZPoly)>> {
    let rad = QuadExt::painleve_radicand(k);
    let lambda = QuadExt::generator(&rad).times_int(-2 * k as i64);
    let subst = |p: &Polynomial<QuadExt>| {
        let mut pw = lambda.one_like();
        let mut out = Vec::with_capacity(p.coeffs().len());
        for x in p.coeffs() {
            out.push(x.times(&pw));
            pw = pw.times(&lambda);
        }
        out
    };
    let rational = |v: &[QuadExt]| -> Option<Polynomial<BigRational>> {
        if v.iter().all(|x| Zero::is_zero(&x.radical)) {
            Some(Polynomial::from_coeffs(v.iter().map(|x| x.rational.clone()).collect()))
        } else if v.iter().all(|x| Zero::is_zero(&x.rational)) {
            Some(Polynomial::from_coeffs(v.iter().map(|x| x.radical.clone()).collect()))
        } else {
            None
        }
    };
    f.iter()
        .map(|fi| {
            let n: Vec<QuadExt> = subst(fi.num()).iter().map(|x| x.times(&lambda)).collect();
            let d = subst(fi.den());
            // both parts rational, or both multiples of c
            let both_c = d.iter().all(|x| Zero::is_zero(&x.rational)) && !d.iter().all(|x| Zero::is_zero(&x.radical));
            let n_c = n.iter().all(|x| Zero::is_zero(&x.rational)) && !n.iter().all(|x| Zero::is_zero(&x.radical));
            if both_c != n_c && !n.iter().all(Scalar::is_zero) {
                return None;
            }
            let r = RationalFunction::from_coprime(rational(&n)?, rational(&d)?);
            Some(integer_fraction(&r))
        })
        .collect()
}

/// Exact check of the A₂ₙ system over `Q(c)`, with `Σfᵢ = z`, `Σαᵢ = 1`.
pub fn verify_painleve(s: &PainleveSolution) -> Report {
    let rad = QuadExt::painleve_radicand(s.k);
    let lift = |a: &BigRational| QuadExt::from_rational(a.clone(), &rad);
    let shown: Vec<QuadExt> = s.alpha.iter().map(lift).collect();
    // fᵢ(z) = c·Fᵢ(cz) turns the system into one over Q with parameters αᵢ/c²
    let fi = match s.scaled() {
        Some(v) => Some(v.iter().map(integer_fraction).collect()),
        None => unscaled(s.f(), s.k),
    };
    let cf = fi.filter(|v| !v.is_empty()).map(|fi: Vec<(ZPoly, ZPoly)>| CommonForm::new(&fi, s.hint.as_ref()));
    let mut rep = match cf {
        Some(cf) => {
            let m = BigRational::from_integer(BigInt::from(-2 * s.k as i64));
            let params: Vec<BigRational> = s.alpha.iter().map(|a| a * &m).collect();
            let detail = |i: usize| painleve_residual_fn(s.f(), i, &shown[i]);
            verify_a2n_common(&cf, &params, &m, "painleve", detail, || "sum of f differs from z".into())
        }
        None => {
            let fi: Vec<(ZQuadPoly, ZQuadPoly)> = s.f().iter().map(|f| quad_integer_fraction(f, s.k)).collect();
            verify_a2n(&fi, s.f(), &s.alpha, lift, &BigRational::one(), "painleve")
        }
    };
    let sa: BigRational = s.alpha.iter().sum();
    rep.record("sum of alpha", One::is_one(&sa), || format!("sum of alpha is {sa}"));
    rep
}

/// The A₂ₙ identities for `f̃ᵢ = wᵢ + wᵢ₊₁` with parameters `aᵢ`, over Q.
pub fn verify_unnormalized(s: &DressingChainSolution) -> Result<Report, ChainError> {
    let f = unnormalized(s)?;
    let fi: Vec<(ZPoly, ZPoly)> = f.iter().map(integer_fraction).collect();
    let c = -&s.delta;
    if fi.is_empty() {
        return Ok(Report::default());
    }
    let cf = CommonForm::new(&fi, s.denominator_hint().as_ref());
    let detail = |i: usize| painleve_residual_fn(&f, i, &s.a[i]);
    Ok(verify_a2n_common(&cf, &s.a, &c, "unnormalized", detail, || format!("sum of f differs from {c}·z")))
}

pub fn potential(m: &MayaDiagram) -> RationalExtension {
    let ld = tau(m).log_derivative().derivative();
    let base = Polynomial::from_coeffs(vec![int(2 * m.index()), BigRational::zero(), BigRational::one()]);
    let u = RationalFunction::from_polynomial(base).try_sub(&ld.scale(&int(2))).expect("same field");
    RationalExtension { diagram: m.clone(), potential: u }
}

/// Factorization `w′ + w² = U_M − λ`, `−w′ + w² = U_{φ(M)} − λ` for the flip at `pos`.
pub fn verify_riccati(m: &MayaDiagram, pos: i64) -> Report {
    let next = m.flip(pos);
    let sigma = if m.contains(pos) { 1 } else { -1 };
    let lam = RationalFunction::constant(int(2 * pos + 1));
    let z = RationalFunction::from_polynomial(Polynomial::z());
    let w = z
        .scale(&int(sigma))
        .try_add(tau(&next).log_derivative())
        .and_then(|x| x.try_sub(tau(m).log_derivative()))
        .expect("same field");
    let w2 = w.try_mul(&w).expect("same field");
    let dw = w.derivative();
    let mut rep = Report::default();
    let lhs = dw.try_add(&w2).expect("same field");
    let rhs = potential(m).potential.try_sub(&lam).expect("same field");
    rep.record(format!("riccati at {pos}"), lhs == rhs, || format!("{lhs} != {rhs}"));
    let lhs = w2.try_sub(&dw).expect("same field");
    let rhs = potential(&next).potential.try_sub(&lam).expect("same field");
    rep.record(format!("partner riccati at {pos}"), lhs == rhs, || format!("{lhs} != {rhs}"));
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleData {
    pub location: [f64; 2],
    /// Rounded residue of each `wᵢ` (0 where regular).
    pub residues: Vec<i64>,
    pub integrality_error: f64,
    /// Largest `|Res wᵢ^{2j}|` over `j ≤ |mᵢ|`.
    pub power_residue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueReport {
    pub poles: Vec<PoleData>,
    pub report: Report,
}

/// Numeric check of the trivial-monodromy residue conditions.
///
/// Residues must lie within `tol` of integers `|m| ≤ n`; residues of `w^{2j}` within `100·tol` of zero.
pub fn residue_properties(s: &DressingChainSolution, tol: f64) -> Result<ResidueReport, ChainError> {
    let n = s.n();
    let bits = numerics::DEFAULT_BITS;
    let mut clusters: Vec<(FixedComplex, Vec<Option<FixedComplex>>)> = Vec::new();
    for (i, w) in s.w.iter().enumerate() {
        if w.den().is_constant() {
            continue;
        }
        let roots = numerics::complex_roots(w.den(), bits)?;
        for r in roots.precise {
            let hit = clusters.iter_mut().find(|c| c.0.sub(&r).log2_abs() < -60.0);
            match hit {
                Some(c) => c.1[i] = Some(r),
                None => {
                    let mut v = vec![None; s.w.len()];
                    v[i] = Some(r.clone());
                    clusters.push((r, v));
                }
            }
        }
    }
    let mut rep = Report::default();
    let mut poles = Vec::with_capacity(clusters.len());
    for (zeta, per) in clusters {
        let loc = zeta.to_c64();
        let mut residues = Vec::with_capacity(s.w.len());
        let mut ierr = 0.0f64;
        let mut perr = 0.0f64;
        for (i, r) in per.iter().enumerate() {
            let Some(r) = r else {
                residues.push(0);
                continue;
            };
            let l = numerics::laurent(&s.w[i], r, 2 * n + 1)?;
            let res = l.residue();
            let m = res.re.round();
            ierr = ierr.max((res - Complex64::new(m, 0.0)).norm());
            let m = m as i64;
            residues.push(m);
            for j in 1..=m.unsigned_abs() as usize {
                perr = perr.max(l.power_residue(2 * j).norm());
            }
        }
        let at = format!("({:.6}, {:.6})", loc.re, loc.im);
        rep.record(format!("integral residues at {at}"), ierr <= tol, || format!("deviation {ierr:e}"));
        let mmax = residues.iter().map(|m| m.abs()).max().unwrap_or(0);
        rep.record(format!("residue bound at {at}"), mmax <= n as i64, || format!("|m| = {mmax} > {n}"));
        rep.record(format!("even power residues at {at}"), perr <= 100.0 * tol, || format!("|Res w^2j| = {perr:e}"));
        let mut set = residues.clone();
        set.sort_unstable();
        set.dedup();
        let want: Vec<i64> = (-mmax..=mmax).collect();
        rep.record(format!("residue set at {at}"), set == want, || format!("{set:?} != {want:?}"));
        poles.push(PoleData { location: [loc.re, loc.im], residues, integrality_error: ierr, power_residue: perr });
    }
    Ok(ResidueReport { poles, report: rep })
}

/// Outcome of [`sweep`].
#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub failures: Vec<SweepFailure>,
    pub threads: usize,
    pub wall_seconds: f64,
    /// Sum of per-instance times.
    pub cpu_seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub sequence: ColouredSequence,
    pub reason: String,
}

impl SweepSummary {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Build every sequence and verify both the chain and the Painlevé system, on `jobs` threads.
pub fn sweep(seqs: &[ColouredSequence], jobs: usize) -> Result<SweepSummary, ChainError> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| ChainError::Parse(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let results: Vec<(f64, Option<SweepFailure>)> = pool.install(|| {
        seqs.par_iter()
            .map(|seq| {
                let t = Instant::now();
                let reason = check_instance(seq).err();
                (t.elapsed().as_secs_f64(), reason.map(|reason| SweepFailure { sequence: seq.clone(), reason }))
            })
            .collect()
    });
    Ok(SweepSummary {
        instances: seqs.len(),
        cpu_seconds: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().filter_map(|r| r.1).collect(),
        threads: pool.current_num_threads(),
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

fn check_instance(seq: &ColouredSequence) -> Result<(), String> {
    let chain = build_from_sequence(seq).map_err(|e| e.to_string())?;
    let names = |r: &Report| r.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ");
    let rc = verify_chain(&chain);
    if !rc.is_ok() {
        return Err(names(&rc));
    }
    let rp = verify_painleve(&to_painleve(&chain).map_err(|e| e.to_string())?);
    if !rp.is_ok() {
        return Err(names(&rp));
    }
    Ok(())
}

/// Rational as a `"p/q"` string.
pub fn rat_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_rat(s: &str) -> Result<BigRational, ChainError> {
    BigRational::from_str(s.trim()).map_err(|_| ChainError::Parse(format!("rational {s:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFnJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadPolyJson {
    pub rational: Vec<String>,
    pub radical: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRatFnJson {
    pub num: QuadPolyJson,
    pub den: QuadPolyJson,
}

/// Solution document; fields absent from input are skipped during verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub n: usize,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<ColouredSequence>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mu: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma: Vec<i8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub wronskians: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub w: Vec<RatFnJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<QuadRatFnJson>>,
}

fn poly_strings(p: &Polynomial<BigRational>) -> Vec<String> {
    p.coeffs().iter().map(rat_string).collect()
}

fn parse_poly(v: &[String]) -> Result<Polynomial<BigRational>, ChainError> {
    Ok(Polynomial::from_coeffs(v.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?))
}

impl RatFnJson {
    pub fn from_fn(r: &RationalFunction<BigRational>) -> Self {
        RatFnJson { num: poly_strings(r.num()), den: poly_strings(r.den()) }
    }

    pub fn to_fn(&self) -> Result<RationalFunction<BigRational>, ChainError> {
        Ok(RationalFunction::new(parse_poly(&self.num)?, parse_poly(&self.den)?)?)
    }
}

impl QuadRatFnJson {
    pub fn from_fn(r: &RationalFunction<QuadExt>) -> Self {
        let part = |p: &Polynomial<QuadExt>| {
            let (a, b) = split(p);
            QuadPolyJson { rational: poly_strings(&a), radical: poly_strings(&b) }
        };
        QuadRatFnJson { num: part(r.num()), den: part(r.den()) }
    }

    pub fn to_fn(&self, k: u32) -> Result<RationalFunction<QuadExt>, ChainError> {
        let rad = QuadExt::painleve_radicand(k);
        let part = |p: &QuadPolyJson| -> Result<Polynomial<QuadExt>, ChainError> {
            Ok(join(&parse_poly(&p.rational)?, &parse_poly(&p.radical)?, &rad))
        };
        Ok(RationalFunction::new(part(&self.num)?, part(&self.den)?)?)
    }
}

impl SolutionJson {
    pub fn from_solution(
        chain: &DressingChainSolution,
        painleve: Option<&PainleveSolution>,
        sequence: Option<&ColouredSequence>,
    ) -> Self {
        let k = chain.k().unwrap_or(0);
        let (mu, sigma, wronskians) = match &chain.cycle {
            Some(c) => (c.mu.clone(), c.sigma.clone(), c.diagrams[..c.p()].iter().map(wronskian_label).collect()),
            None => Default::default(),
        };
        let alpha = match painleve {
            Some(p) => p.alpha.iter().map(rat_string).collect(),
            None => chain.a.iter().map(|a| rat_string(&(-a / &chain.delta))).collect(),
        };
        SolutionJson {
            n: chain.n(),
            k,
            sequence: sequence.cloned(),
            mu,
            sigma,
            wronskians,
            a: chain.a.iter().map(rat_string).collect(),
            alpha,
            w: chain.w.iter().map(RatFnJson::from_fn).collect(),
            f: painleve.map(|p| p.f().iter().map(QuadRatFnJson::from_fn).collect()),
        }
    }

    /// The chain part, when `w` and `a` are present.
    pub fn chain(&self) -> Result<Option<DressingChainSolution>, ChainError> {
        if self.w.is_empty() {
            return Ok(None);
        }
        let w = self.w.iter().map(RatFnJson::to_fn).collect::<Result<Vec<_>, _>>()?;
        let a = self.a.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
        DressingChainSolution::new(w, a, BigRational::from_integer(BigInt::from(2 * self.k as i64))).map(Some)
    }

    /// The Painlevé part, when `f` and `alpha` are present.
    pub fn painleve(&self) -> Result<Option<PainleveSolution>, ChainError> {
        let Some(f) = &self.f else {
            return Ok(None);
        };
        let f = f.iter().map(|x| x.to_fn(self.k)).collect::<Result<Vec<_>, _>>()?;
        let alpha = self.alpha.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
        PainleveSolution::new(f, alpha, self.k).map(Some)
    }
}
