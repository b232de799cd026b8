//! Extended affine Weyl group actions on coloured sequences, Maya cycles and solutions.
//!
//! Words compose right to left: in `"s1 s2 pi"` the `pi` acts first.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chains::{build_chain, ChainError, DressingChainSolution, PainleveSolution, Report};
use crate::cycles::{
    build_cycle, degeneracies, odd_compositions, pi_inverse, pi_shift, to_standard, ColouredSequence, CycleError,
    Degeneracy, MayaCycle,
};
use crate::exactalg::{lift, AlgebraError, Polynomial, QuadExt, RationalFunction};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WeylError {
    #[error("generator index {i} out of range for length {p}")]
    IndexOutOfRange { i: usize, p: usize },
    #[error("cannot parse group word: {0}")]
    Parse(String),
    #[error("singular Bäcklund step at {i}: the divisor vanishes while the parameter is {param}")]
    Singular { i: usize, param: String },
    #[error("invalid signature {0:?}: parts must be odd and positive")]
    InvalidSignature(Vec<usize>),
    #[error("{0} has negative values")]
    NegativeValues(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("no oddly {k}-coloured sequences of length {p}")]
    NoSequences { p: usize, k: u32 },
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `sᵢ`, `π` or `π⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    S(usize),
    Pi,
    PiInv,
}

impl Generator {
    pub fn inverse(self) -> Self {
        match self {
            Generator::Pi => Generator::PiInv,
            Generator::PiInv => Generator::Pi,
            s => s,
        }
    }

    /// All generators for length `p`.
    pub fn all(p: usize) -> Vec<Generator> {
        let mut g: Vec<Generator> = (0..p).map(Generator::S).collect();
        g.push(Generator::Pi);
        g.push(Generator::PiInv);
        g
    }

    fn check(self, p: usize) -> Result<(), WeylError> {
        match self {
            Generator::S(i) if i >= p => Err(WeylError::IndexOutOfRange { i, p }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S(i) => write!(f, "s{i}"),
            Generator::Pi => write!(f, "pi"),
            Generator::PiInv => write!(f, "pi^-1"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    S(usize),
    Pi,
    /// `Eᵢ = sᵢ s_{i+1} ⋯ s_{i+2n−1} π`.
    E(usize),
}

/// A letter raised to a nonzero power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub letter: Letter,
    pub power: i32,
}

/// Product of factors, e.g. `"s0 s1 pi E3^2"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    pub factors: Vec<Factor>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn from_generators(gs: &[Generator]) -> Self {
        let factors = gs
            .iter()
            .map(|g| match *g {
                Generator::S(i) => Factor { letter: Letter::S(i), power: 1 },
                Generator::Pi => Factor { letter: Letter::Pi, power: 1 },
                Generator::PiInv => Factor { letter: Letter::Pi, power: -1 },
            })
            .collect();
        GroupWord { factors }
    }

    /// Append a factor, merging powers with an equal last letter.
    pub fn push(&mut self, letter: Letter, power: i32) {
        if power == 0 {
            return;
        }
        if let Some(last) = self.factors.last_mut() {
            if last.letter == letter {
                last.power += power;
                if last.power == 0 {
                    self.factors.pop();
                }
                return;
            }
        }
        self.factors.push(Factor { letter, power });
    }

    /// `self · o`: `o` acts first.
    pub fn then_after(&self, o: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for f in &o.factors {
            w.push(f.letter, f.power);
        }
        w
    }

    /// Generators in written order, for sequences of length `p`.
    pub fn expand(&self, p: usize) -> Result<Vec<Generator>, WeylError> {
        let mut out = Vec::new();
        for f in &self.factors {
            let times = f.power.unsigned_abs() as usize;
            match f.letter {
                Letter::S(i) => {
                    Generator::S(i).check(p)?;
                    out.extend(std::iter::repeat_n(Generator::S(i), times));
                }
                Letter::Pi => {
                    let g = if f.power > 0 { Generator::Pi } else { Generator::PiInv };
                    out.extend(std::iter::repeat_n(g, times));
                }
                Letter::E(i) => {
                    if i >= p {
                        return Err(WeylError::IndexOutOfRange { i, p });
                    }
                    let mut e: Vec<Generator> = (0..p - 1).map(|j| Generator::S((i + j) % p)).collect();
                    e.push(Generator::Pi);
                    if f.power < 0 {
                        e = e.into_iter().rev().map(Generator::inverse).collect();
                    }
                    for _ in 0..times {
                        out.extend_from_slice(&e);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            factors: self.factors.iter().rev().map(|f| Factor { letter: f.letter, power: -f.power }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| {
                let base = match x.letter {
                    Letter::S(i) => format!("s{i}"),
                    Letter::Pi => "pi".to_string(),
                    Letter::E(i) => format!("E{i}"),
                };
                if x.power == 1 {
                    base
                } else {
                    format!("{base}^{}", x.power)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, WeylError> {
        let mut w = GroupWord::identity();
        for tok in s.split_whitespace() {
            let bad = || WeylError::Parse(tok.to_string());
            let (base, power) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i32>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let letter = if base == "pi" {
                Letter::Pi
            } else if let Some(i) = base.strip_prefix('s') {
                Letter::S(i.parse().map_err(|_| bad())?)
            } else if let Some(i) = base.strip_prefix('E') {
                Letter::E(i.parse().map_err(|_| bad())?)
            } else {
                return Err(bad());
            };
            if power == 0 {
                return Err(bad());
            }
            w.factors.push(Factor { letter, power });
        }
        Ok(w)
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Composition `(p₀, …, p_{k−1})` of `2n+1` into odd parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SeedSignature {
    parts: Vec<usize>,
}

impl SeedSignature {
    pub fn new(parts: Vec<usize>) -> Result<Self, WeylError> {
        if parts.is_empty() || parts.iter().any(|&x| x % 2 == 0) {
            return Err(WeylError::InvalidSignature(parts));
        }
        Ok(SeedSignature { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn k(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn p(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Partial sums `q₁ < … < q_k`.
    pub fn partial_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for SeedSignature {
    type Error = WeylError;
    fn try_from(v: Vec<usize>) -> Result<Self, WeylError> {
        SeedSignature::new(v)
    }
}

impl From<SeedSignature> for Vec<usize> {
    fn from(s: SeedSignature) -> Self {
        s.parts
    }
}

impl fmt::Display for SeedSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for SeedSignature {
    type Err = WeylError;
    fn from_str(s: &str) -> Result<Self, WeylError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| WeylError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        SeedSignature::new(parts)
    }
}

/// `sᵢ` on a coloured sequence.
pub fn act_s(i: usize, seq: &ColouredSequence) -> Result<ColouredSequence, WeylError> {
    let p = seq.len();
    Generator::S(i).check(p)?;
    let mut s = seq.clone();
    if i + 1 < p {
        s.values.swap(i, i + 1);
        s.colours.swap(i, i + 1);
    } else {
        s.values.swap(0, p - 1);
        s.colours.swap(0, p - 1);
        s.values[0] -= 1;
        s.values[p - 1] += 1;
    }
    Ok(s)
}

pub fn act_pi(seq: &ColouredSequence) -> ColouredSequence {
    pi_shift(seq)
}

pub fn act_pi_inverse(seq: &ColouredSequence) -> ColouredSequence {
    pi_inverse(seq)
}

pub fn act_generator(g: Generator, seq: &ColouredSequence) -> Result<ColouredSequence, WeylError> {
    match g {
        Generator::S(i) => act_s(i, seq),
        Generator::Pi => Ok(act_pi(seq)),
        Generator::PiInv => Ok(act_pi_inverse(seq)),
    }
}

pub fn act_word(w: &GroupWord, seq: &ColouredSequence) -> Result<ColouredSequence, WeylError> {
    let gs = w.expand(seq.len())?;
    gs.iter().rev().try_fold(seq.clone(), |s, &g| act_generator(g, &s))
}

/// `Eᵢ` through its defining word; checked against the slot increment.
pub fn act_e(i: usize, seq: &ColouredSequence) -> Result<ColouredSequence, WeylError> {
    let w = GroupWord { factors: vec![Factor { letter: Letter::E(i), power: 1 }] };
    let out = act_word(&w, seq)?;
    let mut direct = seq.clone();
    direct.values[i] += 1;
    if out != direct {
        return Err(WeylError::Mismatch(format!("E{i} on {seq} gave {out}, expected {direct}")));
    }
    Ok(out)
}

/// Generator action on a Maya cycle.
pub fn act_on_cycle(g: Generator, c: &MayaCycle) -> Result<MayaCycle, WeylError> {
    c.validate()?;
    let p = c.p();
    g.check(p)?;
    let k = c.k;
    let mu = &c.mu;
    let (m0, flips) = match g {
        Generator::Pi => {
            let mut f = mu.clone();
            f.rotate_left(1);
            f[p - 1] += k;
            (c.diagrams[1].clone(), f)
        }
        Generator::PiInv => {
            let mut f = mu.clone();
            f.rotate_right(1);
            f[0] -= k;
            (c.diagrams[p - 1].translate(-k), f)
        }
        Generator::S(_) if p == 1 => return Ok(c.clone()),
        Generator::S(i) if i + 1 < p => {
            let mut f = mu.clone();
            f.swap(i, i + 1);
            let mut d = c.diagrams.clone();
            d[i + 1] = c.diagrams[i + 2].flip(mu[i]);
            let out = MayaCycle::from_flips(d[0].clone(), f, k)?;
            debug_assert_eq!(out.diagrams, d);
            return Ok(out);
        }
        Generator::S(_) => {
            let mut f = mu.clone();
            f.swap(0, p - 1);
            f[0] -= k;
            f[p - 1] += k;
            (c.diagrams[1].flip(f[0]), f)
        }
    };
    Ok(MayaCycle::from_flips(m0, flips, k)?)
}

pub fn act_word_on_cycle(w: &GroupWord, c: &MayaCycle) -> Result<MayaCycle, WeylError> {
    let gs = w.expand(c.p())?;
    gs.iter().rev().try_fold(c.clone(), |x, &g| act_on_cycle(g, &x))
}

fn rotate<T: Clone>(v: &[T], left: bool) -> Vec<T> {
    let mut v = v.to_vec();
    if left {
        v.rotate_left(1);
    } else {
        v.rotate_right(1);
    }
    v
}

/// `sᵢ(aᵢ) = −aᵢ`, `sᵢ(a_{i±1}) = a_{i±1} + aᵢ`.
fn reflect_params(a: &[BigRational], i: usize) -> Vec<BigRational> {
    let p = a.len();
    let mut out = a.to_vec();
    let ai = a[i].clone();
    out[(i + 1) % p] += &ai;
    out[(i + p - 1) % p] += &ai;
    out[i] = -ai;
    out
}

/// Bäcklund transformation of a dressing-chain solution.
///
/// `sᵢ` with `aᵢ = 0` acts as the identity.
pub fn backlund(g: Generator, s: &DressingChainSolution) -> Result<DressingChainSolution, WeylError> {
    let p = s.w().len();
    g.check(p)?;
    let (w, a) = match g {
        Generator::Pi => (rotate(s.w(), true), rotate(s.a(), true)),
        Generator::PiInv => (rotate(s.w(), false), rotate(s.a(), false)),
        Generator::S(i) => {
            let ai = &s.a()[i];
            if p == 1 || ai.is_zero() {
                (s.w().to_vec(), s.a().to_vec())
            } else {
                let j = (i + 1) % p;
                let sum = s.w()[i].try_add(&s.w()[j])?;
                if sum.is_zero() {
                    return Err(WeylError::Singular { i, param: ai.to_string() });
                }
                let q = sum.recip()?.scale(ai);
                let mut w = s.w().to_vec();
                w[i] = w[i].try_add(&q)?;
                w[j] = w[j].try_sub(&q)?;
                (w, reflect_params(s.a(), i))
            }
        }
    };
    Ok(DressingChainSolution::new(w, a, s.delta().clone())?)
}

pub fn backlund_word(w: &GroupWord, s: &DressingChainSolution) -> Result<DressingChainSolution, WeylError> {
    let gs = w.expand(s.w().len())?;
    gs.iter().rev().try_fold(s.clone(), |x, &g| backlund(g, &x))
}

/// Bäcklund transformation of an A₂ₙ-Painlevé solution.
pub fn backlund_painleve(g: Generator, s: &PainleveSolution) -> Result<PainleveSolution, WeylError> {
    let p = s.len();
    g.check(p)?;
    let f = s.f();
    let (f, alpha) = match g {
        Generator::Pi => (rotate(f, true), rotate(&s.alpha, true)),
        Generator::PiInv => (rotate(f, false), rotate(&s.alpha, false)),
        Generator::S(i) => {
            let ai = &s.alpha[i];
            if p == 1 || ai.is_zero() {
                (f.to_vec(), s.alpha.clone())
            } else {
                if f[i].is_zero() {
                    return Err(WeylError::Singular { i, param: ai.to_string() });
                }
                let rad = QuadExt::painleve_radicand(s.k);
                let scalar = lift(&Polynomial::constant(ai.clone()), &rad).coeffs()[0].clone();
                let q: RationalFunction<QuadExt> = f[i].recip()?.scale(&scalar);
                let mut out = f.to_vec();
                let (next, prev) = ((i + 1) % p, (i + p - 1) % p);
                out[next] = out[next].try_sub(&q)?;
                out[prev] = out[prev].try_add(&q)?;
                (out, reflect_params(&s.alpha, i))
            }
        }
    };
    Ok(PainleveSolution::new(f, alpha, s.k)?)
}

pub fn backlund_painleve_word(w: &GroupWord, s: &PainleveSolution) -> Result<PainleveSolution, WeylError> {
    let gs = w.expand(s.len())?;
    gs.iter().rev().try_fold(s.clone(), |x, &g| backlund_painleve(g, &x))
}

/// `(0, …, 0)` coloured `0^{p₀} 1^{p₁} ⋯`.
pub fn seed_sequence(sig: &SeedSignature) -> ColouredSequence {
    let colours: Vec<u32> =
        sig.parts().iter().enumerate().flat_map(|(c, &m)| std::iter::repeat_n(c as u32, m)).collect();
    ColouredSequence { values: vec![0; colours.len()], colours, k: sig.k() }
}

/// `fᵢ = z/k`, `αᵢ = 1/k` when `i+1` is a partial sum, else `0`.
pub fn seed_solution(sig: &SeedSignature) -> Result<PainleveSolution, WeylError> {
    let k = sig.k();
    let q = sig.partial_sums();
    let kinv = BigRational::new(1.into(), (k as i64).into());
    let (mut f, mut alpha) = (Vec::new(), Vec::new());
    for i in 0..sig.p() {
        if q.contains(&(i + 1)) {
            f.push(RationalFunction::from_polynomial(Polynomial::from_coeffs(vec![BigRational::zero(), kinv.clone()])));
            alpha.push(kinv.clone());
        } else {
            f.push(RationalFunction::zero());
            alpha.push(BigRational::zero());
        }
    }
    Ok(PainleveSolution::from_rational(&f, alpha, k)?)
}

/// Seed signature and word `w` with `w(seed) = seq`, checked by replay.
///
/// Every standard sequence qualifies; so does any oddly coloured one with non-negative values.
pub fn orbit_path(seq: &ColouredSequence) -> Result<(SeedSignature, GroupWord), WeylError> {
    seq.validate_odd()?;
    if seq.values.iter().any(|&v| v < 0) {
        return Err(WeylError::NegativeValues(seq.to_string()));
    }
    let sig = SeedSignature::new(seq.signature())?;
    let mut sorted = seq.entries();
    sorted.sort_by_key(|&(v, c)| (c, v));
    let mut word = GroupWord::identity();
    let mut incr = GroupWord::identity();
    for (i, &(v, _)) in sorted.iter().enumerate() {
        incr.push(Letter::E(i), v as i32);
    }
    // bubble each target entry into place; the first swap applied is rightmost
    let target = seq.entries();
    let mut cur = sorted;
    let mut applied = Vec::new();
    for (pos, want) in target.iter().enumerate() {
        let j = (pos..cur.len()).find(|&j| cur[j] == *want).expect("same multiset");
        for m in (pos..j).rev() {
            cur.swap(m, m + 1);
            applied.push(m);
        }
    }
    for &m in applied.iter().rev() {
        word.push(Letter::S(m), 1);
    }
    // sᵢ sᵢ cancels inside push
    let word = word.then_after(&incr);
    let replay = act_word(&word, &seed_sequence(&sig))?;
    if &replay != seq {
        return Err(WeylError::Mismatch(format!("replay of {word} gave {replay}, expected {seq}")));
    }
    Ok((sig, word))
}

fn standard(s: &ColouredSequence) -> Result<ColouredSequence, WeylError> {
    Ok(to_standard(s)?.0)
}

/// Random oddly coloured sequence of length `p` with values in `lo..=hi`.
pub fn random_sequence<R: Rng>(rng: &mut R, p: usize, k: u32, lo: i64, hi: i64) -> Result<ColouredSequence, WeylError> {
    let comps = odd_compositions(p, k as usize);
    let sig = comps.choose(rng).ok_or(WeylError::NoSequences { p, k })?;
    let mut colours: Vec<u32> = sig.iter().enumerate().flat_map(|(c, &m)| std::iter::repeat_n(c as u32, m)).collect();
    colours.shuffle(rng);
    let values = (0..p).map(|_| rng.gen_range(lo..=hi)).collect();
    Ok(ColouredSequence::new(values, colours, k)?)
}

/// Defining relations on random sequences.
///
/// Braid relations are checked both as `(sᵢs_{i+1})³` and as `(sᵢs_{i+1})^{2n+1}`; the second
/// is reported under its own name. Conjugation by `π` is checked as `π sᵢ π⁻¹ = s_{i−1}`.
pub fn verify_group_relations(n: usize, k: u32, trials: usize, seed: u64) -> Result<Report, WeylError> {
    let p = 2 * n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::default();
    let word = |s: &str| s.parse::<GroupWord>().expect("fixed word");
    for _ in 0..trials {
        let x = random_sequence(&mut rng, p, k, -4, 4)?;
        let sx = standard(&x)?;
        for i in 0..p {
            let j = (i + 1) % p;
            let sq = act_word(&word(&format!("s{i} s{i}")), &x)?;
            rep.record(format!("s{i}^2"), sq == x, || format!("{x} -> {sq}"));
            let cube = act_word(&word(&format!("s{i} s{j} s{i} s{j} s{i} s{j}")), &x)?;
            rep.record(format!("(s{i} s{j})^3"), standard(&cube)? == sx, || format!("{x} -> {cube}"));
            let lit = GroupWord { factors: (0..p).flat_map(|_| [Letter::S(i), Letter::S(j)]).map(|l| Factor { letter: l, power: 1 }).collect() };
            let y = act_word(&lit, &x)?;
            rep.record(format!("(s{i} s{j})^{p} literal"), standard(&y)? == sx, || format!("{x} -> {y}"));
            let prev = (i + p - 1) % p;
            let lhs = act_word(&word(&format!("pi s{i} pi^-1")), &x)?;
            let rhs = act_s(prev, &x)?;
            rep.record(format!("pi s{i} pi^-1 = s{prev}"), standard(&lhs)? == standard(&rhs)?, || format!("{x}: {lhs} vs {rhs}"));
            let e = act_e(i, &x);
            rep.record(format!("E{i} increments slot {i}"), e.is_ok(), || format!("{e:?}"));
            for m in 0..p {
                let a = act_word(&word(&format!("E{i} E{m}")), &x)?;
                let b = act_word(&word(&format!("E{m} E{i}")), &x)?;
                rep.record(format!("E{i} E{m} = E{m} E{i}"), a == b, || format!("{a} vs {b}"));
            }
        }
        let pp = act_word(&word(&format!("pi^{p}")), &x)?;
        rep.record(format!("pi^{p}"), standard(&pp)? == sx, || format!("{x} -> {pp}"));
        let sig = x.signature();
        for g in Generator::all(p) {
            let y = act_generator(g, &x)?;
            rep.record(format!("{g} preserves signature"), y.signature() == sig, || format!("{x} -> {y}"));
        }
    }
    Ok(rep)
}

/// Group element fixing a degenerate sequence and its solution.
pub fn isotropy_check(seq: &ColouredSequence) -> Result<Option<GroupWord>, WeylError> {
    let p = seq.len();
    let Some(d) = degeneracies(seq).into_iter().next() else {
        return Ok(None);
    };
    let mut w = GroupWord::identity();
    match d {
        Degeneracy::ConsecutiveRepeat { i, .. } => w.push(Letter::S(i), 1),
        Degeneracy::NonConsecutiveRepeat { i, j } => {
            // (i j) = sᵢ ⋯ s_{j−2} s_{j−1} s_{j−2} ⋯ sᵢ
            for m in i..j - 1 {
                w.push(Letter::S(m), 1);
            }
            w.push(Letter::S(j - 1), 1);
            for m in (i..j - 1).rev() {
                w.push(Letter::S(m), 1);
            }
        }
        Degeneracy::WrapAround => w.push(Letter::S(p - 1), 1),
    }
    let moved = act_word(&w, seq)?;
    if &moved != seq {
        return Err(WeylError::Mismatch(format!("{w} moves {seq} to {moved}")));
    }
    let s = build_chain(&build_cycle(seq)?)?;
    let t = backlund_word(&w, &s)?;
    if !t.same_solution(&s) {
        return Err(WeylError::Mismatch(format!("{w} changes the solution of {seq}")));
    }
    Ok(Some(w))
}

/// Result of [`orbit_path`] with its replay.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitReport {
    pub sequence: ColouredSequence,
    pub signature: SeedSignature,
    pub seed: ColouredSequence,
    pub word: GroupWord,
    pub replay: ColouredSequence,
    pub replay_ok: bool,
}

pub fn orbit_report(seq: &ColouredSequence) -> Result<OrbitReport, WeylError> {
    let (signature, word) = orbit_path(seq)?;
    let seed = seed_sequence(&signature);
    let replay = act_word(&word, &seed)?;
    Ok(OrbitReport { sequence: seq.clone(), replay_ok: &replay == seq, signature, seed, word, replay })
}

/// `aᵢ` of a solution scaled to `αᵢ = −aᵢ/Δ`.
pub fn alpha_of(s: &DressingChainSolution) -> Vec<BigRational> {
    s.a().iter().map(|a| -a / s.delta()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{to_painleve, verify_chain, verify_painleve};
    use crate::cycles::{enumerate_sequences, parse_bracketed, tests::arb_odd_sequence};
    use crate::exactalg::{int, rat};
    use proptest::prelude::*;

    fn sq(text: &str, k: u32) -> ColouredSequence {
        parse_bracketed(text, k).unwrap()
    }

    fn seed131() -> ColouredSequence {
        sq("0[0],0[1],0[1],0[1],0[2]", 3)
    }

    #[test]
    fn word_round_trip() {
        let w: GroupWord = "s0 s1 pi E3^2 pi^-1".parse().unwrap();
        assert_eq!(w.to_string(), "s0 s1 pi E3^2 pi^-1");
        assert_eq!(w.inverse().to_string(), "pi E3^-2 pi^-1 s1^-1 s0^-1");
        assert!("s0 q1".parse::<GroupWord>().is_err());
        assert!("s0^0".parse::<GroupWord>().is_err());
        assert_eq!(w.expand(5).unwrap().len(), 1 + 1 + 1 + 2 * 5 + 1);
        assert!(matches!("s5".parse::<GroupWord>().unwrap().expand(5), Err(WeylError::IndexOutOfRange { i: 5, p: 5 })));
    }

    #[test]
    fn transpositions() {
        let x = sq("4[2],3[1],1[2],2[2],0[0]", 3);
        assert_eq!(act_s(0, &x).unwrap(), sq("3[1],4[2],1[2],2[2],0[0]", 3));
        assert_eq!(act_s(0, &seed131()).unwrap(), sq("0[1],0[0],0[1],0[1],0[2]", 3));
        assert_eq!(act_s(4, &seed131()).unwrap(), sq("-1[2],0[1],0[1],0[1],1[0]", 3));
        assert!(act_s(5, &x).is_err());
    }

    #[test]
    fn increments() {
        let x = sq("2[0],3[1],0[2]", 3);
        assert_eq!(act_e(1, &x).unwrap(), sq("2[0],4[1],0[2]", 3));
        assert_eq!(act_e(0, &ColouredSequence::plain(&[0])).unwrap(), ColouredSequence::plain(&[1]));
        // E₁ = s₁ s₂ π step by step
        let a = act_pi(&x);
        assert_eq!(a, sq("3[1],0[2],3[0]", 3));
        let b = act_s(2, &a).unwrap();
        assert_eq!(b, sq("2[0],0[2],4[1]", 3));
        assert_eq!(act_s(1, &b).unwrap(), sq("2[0],4[1],0[2]", 3));
    }

    #[test]
    fn cycle_action_on_worked_example() {
        let c = build_cycle(&sq("4[2],3[1],1[2],2[2],0[0]", 3)).unwrap();
        let d = act_on_cycle(Generator::S(0), &c).unwrap();
        assert_eq!(d.mu, vec![10, 14, 5, 8, 0]);
        assert_eq!(d.diagrams[0], c.diagrams[0]);
        let back = act_on_cycle(Generator::PiInv, &act_on_cycle(Generator::Pi, &c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn seed_131() {
        let sig: SeedSignature = "(1,3,1)".parse().unwrap();
        assert_eq!(seed_sequence(&sig), seed131());
        let s = seed_solution(&sig).unwrap();
        let z3 = RationalFunction::from_polynomial(Polynomial::from_coeffs(vec![rat(0, 1), rat(1, 3)]));
        let zero = RationalFunction::zero();
        assert_eq!(s.rational_f().unwrap(), vec![z3.clone(), zero.clone(), zero, z3.clone(), z3]);
        assert_eq!(s.alpha, vec![rat(1, 3), rat(0, 1), rat(0, 1), rat(1, 3), rat(1, 3)]);
        let built = to_painleve(&build_chain(&build_cycle(&seed131()).unwrap()).unwrap()).unwrap();
        assert_eq!(built, s);
        let one = seed_solution(&SeedSignature::new(vec![1]).unwrap()).unwrap();
        assert_eq!(one.alpha, vec![int(1)]);
        assert!(SeedSignature::new(vec![2, 3]).is_err());
    }

    #[test]
    fn s0_on_seed_matches_backlund() {
        let seed = build_chain(&build_cycle(&seed131()).unwrap()).unwrap();
        let moved = build_chain(&build_cycle(&act_s(0, &seed131()).unwrap()).unwrap()).unwrap();
        let b = backlund(Generator::S(0), &seed).unwrap();
        assert!(b.same_solution(&moved));
        let f = to_painleve(&moved).unwrap();
        assert_eq!(f.alpha, vec![rat(-1, 3), rat(1, 3), int(0), rat(1, 3), rat(2, 3)]);
        let fp = backlund_painleve(Generator::S(0), &to_painleve(&seed).unwrap()).unwrap();
        assert_eq!(fp, f);
    }

    #[test]
    fn orbit_of_small_sequence() {
        let x = sq("2[0],3[1],0[2]", 3);
        let (sig, w) = orbit_path(&x).unwrap();
        assert_eq!(sig.parts(), &[1, 1, 1]);
        assert_eq!(w.to_string(), "E0^2 E1^3");
        let (_, w) = orbit_path(&seed131()).unwrap();
        assert!(w.is_identity());
        let bad = sq("-1[0],0[1],0[2]", 3);
        assert!(matches!(orbit_path(&bad), Err(WeylError::NegativeValues(_))));
    }

    #[test]
    fn orbit_replays_at_desk_scale() {
        for (p, k) in [(1, 1), (3, 1), (3, 3), (5, 1), (5, 3), (5, 5)] {
            for x in enumerate_sequences(p, k, 2).unwrap() {
                let (sig, w) = orbit_path(&x).unwrap();
                assert_eq!(act_word(&w, &seed_sequence(&sig)).unwrap(), x);
            }
        }
    }

    #[test]
    fn relations_hold() {
        for (n, k) in [(1, 1), (1, 3), (2, 3)] {
            let rep = verify_group_relations(n, k, 20, 7).unwrap();
            let bad: Vec<_> = rep.failures().filter(|c| !c.name.ends_with("literal")).collect();
            assert!(bad.is_empty(), "{bad:?}");
        }
        assert!(matches!(verify_group_relations(1, 5, 1, 0), Err(WeylError::NoSequences { .. })));
    }

    #[test]
    fn literal_braid_power_fails_beyond_n1() {
        let rep = verify_group_relations(2, 1, 10, 3).unwrap();
        assert!(rep.failures().any(|c| c.name.ends_with("literal")));
        let rep = verify_group_relations(1, 1, 10, 3).unwrap();
        assert!(rep.is_ok());
    }

    #[test]
    fn isotropy() {
        let d1 = sq("0[0],1[1],1[0],1[0],0[2]", 3);
        assert_eq!(isotropy_check(&d1).unwrap().unwrap().to_string(), "s2");
        let d2 = sq("0[0],1[0],1[1],1[0],0[2]", 3);
        assert_eq!(isotropy_check(&d2).unwrap().unwrap().to_string(), "s1 s2 s1");
        assert_eq!(isotropy_check(&sq("4[2],3[1],1[2],2[2],0[0]", 3)).unwrap(), None);
        let p = to_painleve(&build_chain(&build_cycle(&d1).unwrap()).unwrap()).unwrap();
        assert_eq!(backlund_painleve(Generator::S(2), &p).unwrap(), p);
    }

    #[test]
    fn backlund_preserves_chains() {
        let s = build_chain(&build_cycle(&sq("4[2],3[1],1[2],2[2],0[0]", 3)).unwrap()).unwrap();
        for g in Generator::all(5) {
            let t = backlund(g, &s).unwrap();
            assert!(verify_chain(&t).is_ok(), "{g}");
            let c = act_on_cycle(g, s.cycle().unwrap()).unwrap();
            assert!(t.same_solution(&build_chain(&c).unwrap()), "{g}");
            let f = to_painleve(&t).unwrap();
            assert!(verify_painleve(&f).is_ok());
        }
    }

    #[test]
    fn singular_step_is_an_error() {
        let w = vec![RationalFunction::zero(), RationalFunction::zero(), RationalFunction::zero()];
        let s = DressingChainSolution::new(w, vec![int(1), int(-1), int(-2)], int(2)).unwrap();
        assert!(matches!(backlund(Generator::S(0), &s), Err(WeylError::Singular { i: 0, .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn cycle_action_is_compatible(x in arb_odd_sequence(2, 5, 4), pick in 0usize..64) {
            let gs = Generator::all(x.len());
            let g = gs[pick % gs.len()];
            let c = build_cycle(&x).unwrap();
            let lhs = act_on_cycle(g, &c).unwrap();
            let rhs = build_cycle(&act_generator(g, &x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn word_increment_is_slot_increment(x in arb_odd_sequence(3, 5, 4), pick in 0usize..64) {
            let i = pick % x.len();
            prop_assert!(act_e(i, &x).is_ok());
        }

        #[test]
        fn backlund_is_compatible(x in arb_odd_sequence(2, 3, 2), pick in 0usize..64) {
            let gs = Generator::all(x.len());
            let g = gs[pick % gs.len()];
            let c = build_cycle(&x).unwrap();
            let s = build_chain(&c).unwrap();
            let t = backlund(g, &s).unwrap();
            let u = build_chain(&act_on_cycle(g, &c).unwrap()).unwrap();
            prop_assert!(t.same_solution(&u));
            let f = backlund_painleve(g, &to_painleve(&s).unwrap()).unwrap();
            prop_assert_eq!(f, to_painleve(&u).unwrap());
        }
    }
}
