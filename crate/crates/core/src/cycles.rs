//! Oddly coloured sequences and the Maya cycles they index.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::maya::{MayaDiagram, MayaError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("values and colours differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("colour {colour} out of range for k = {k}")]
    ColourOutOfRange { colour: u32, k: u32 },
    #[error("k must be positive")]
    ZeroK,
    #[error("sequence length {0} is not odd")]
    EvenLength(usize),
    #[error("colour counts {0:?} are not all odd")]
    NotOddlyColoured(Vec<usize>),
    #[error("invalid Maya cycle: {0}")]
    InvalidCycle(String),
    #[error("entries {0} and {1} are not an equal pair")]
    NotMatchingPair(usize, usize),
    #[error("invalid (p, k) = ({p}, {k}): need odd p and odd k with 1 <= k <= p")]
    InvalidShape { p: usize, k: u32 },
    #[error("cannot parse sequence: {0}")]
    Parse(String),
    #[error(transparent)]
    Maya(#[from] MayaError),
}

/// A `k`-coloured integer sequence `(ν, C)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColouredSequence {
    pub values: Vec<i64>,
    pub colours: Vec<u32>,
    pub k: u32,
}

impl ColouredSequence {
    pub fn new(values: Vec<i64>, colours: Vec<u32>, k: u32) -> Result<Self, CycleError> {
        if k == 0 {
            return Err(CycleError::ZeroK);
        }
        if values.len() != colours.len() {
            return Err(CycleError::LengthMismatch(values.len(), colours.len()));
        }
        if let Some(&c) = colours.iter().find(|&&c| c >= k) {
            return Err(CycleError::ColourOutOfRange { colour: c, k });
        }
        Ok(ColouredSequence { values, colours, k })
    }

    /// Build from `(value, colour)` pairs.
    pub fn from_entries(entries: &[(i64, u32)], k: u32) -> Result<Self, CycleError> {
        Self::new(entries.iter().map(|e| e.0).collect(), entries.iter().map(|e| e.1).collect(), k)
    }

    /// Single-coloured sequence.
    pub fn plain(values: &[i64]) -> Self {
        ColouredSequence { values: values.to_vec(), colours: vec![0; values.len()], k: 1 }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `n` with `p = 2n+1`.
    pub fn n(&self) -> usize {
        self.len() / 2
    }

    pub fn entries(&self) -> Vec<(i64, u32)> {
        self.values.iter().copied().zip(self.colours.iter().copied()).collect()
    }

    /// Colour multiplicities `(p₀, …, p_{k−1})`.
    pub fn signature(&self) -> Vec<usize> {
        let mut s = vec![0; self.k as usize];
        for &c in &self.colours {
            s[c as usize] += 1;
        }
        s
    }

    pub fn is_oddly_coloured(&self) -> bool {
        self.signature().iter().all(|c| c % 2 == 1)
    }

    pub fn validate_odd(&self) -> Result<(), CycleError> {
        if self.len().is_multiple_of(2) {
            return Err(CycleError::EvenLength(self.len()));
        }
        if !self.is_oddly_coloured() {
            return Err(CycleError::NotOddlyColoured(self.signature()));
        }
        Ok(())
    }

    /// Flip sequence `μᵢ = kνᵢ + Cᵢ`.
    pub fn mu(&self) -> Vec<i64> {
        let k = self.k as i64;
        self.values.iter().zip(&self.colours).map(|(&v, &c)| k * v + c as i64).collect()
    }

    pub fn from_mu(mu: &[i64], k: u32) -> Self {
        let kk = k as i64;
        ColouredSequence {
            values: mu.iter().map(|m| m.div_euclid(kk)).collect(),
            colours: mu.iter().map(|m| m.rem_euclid(kk) as u32).collect(),
            k,
        }
    }

    /// `Ξ_k(ν, C)`: the first diagram of the cycle.
    pub fn initial_diagram(&self) -> Result<MayaDiagram, CycleError> {
        let e: Vec<(i64, usize)> = self.entries().iter().map(|&(v, c)| (v, c as usize)).collect();
        Ok(MayaDiagram::xi_coloured(&e, self.k as usize)?)
    }

    pub fn is_standard(&self) -> bool {
        self.initial_diagram().map(|m| m.is_standard()).unwrap_or(false)
    }

    fn render(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .iter()
            .map(|&(v, c)| if self.k == 1 { v.to_string() } else { format!("{v}[{c}]") })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for ColouredSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f)
    }
}

impl fmt::Debug for ColouredSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f)?;
        write!(f, "_k{}", self.k)
    }
}

/// Parse `"4[2],3[1],1[2],2[2],0[0]"`; an entry without brackets has colour 0.
pub fn parse_bracketed(text: &str, k: u32) -> Result<ColouredSequence, CycleError> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    let mut entries = Vec::new();
    for item in t.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (v, c) = match item.split_once('[') {
            Some((v, rest)) => {
                let c = rest.strip_suffix(']').ok_or_else(|| CycleError::Parse(item.into()))?;
                (v.trim(), c.trim())
            }
            None => (item, "0"),
        };
        let v = i64::from_str(v).map_err(|_| CycleError::Parse(item.into()))?;
        let c = u32::from_str(c).map_err(|_| CycleError::Parse(item.into()))?;
        entries.push((v, c));
    }
    ColouredSequence::from_entries(&entries, k)
}

#[derive(Serialize, Deserialize)]
struct SequenceJson {
    k: u32,
    entries: Vec<(i64, u32)>,
}

impl Serialize for ColouredSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SequenceJson { k: self.k, entries: self.entries() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColouredSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SequenceJson::deserialize(d)?;
        ColouredSequence::from_entries(&j.entries, j.k).map_err(serde::de::Error::custom)
    }
}

/// `M₀, …, M_p` with `M_{i+1} = φ_{μᵢ}(Mᵢ)` and `M_p = M₀ + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayaCycle {
    pub diagrams: Vec<MayaDiagram>,
    pub mu: Vec<i64>,
    /// `−1` where the flip adds a box, `+1` where it removes one.
    pub sigma: Vec<i8>,
    pub k: i64,
}

impl MayaCycle {
    /// Cycle generated from `M₀` by the flips `μ`; checks closure.
    pub fn from_flips(m0: MayaDiagram, mu: Vec<i64>, k: i64) -> Result<Self, CycleError> {
        let mut diagrams = vec![m0];
        let mut sigma = Vec::with_capacity(mu.len());
        for &m in &mu {
            let cur = diagrams.last().expect("nonempty");
            sigma.push(if cur.contains(m) { 1 } else { -1 });
            diagrams.push(cur.flip(m));
        }
        if diagrams[mu.len()] != diagrams[0].translate(k) {
            return Err(CycleError::InvalidCycle(format!("M_p is not M_0 + {k}")));
        }
        Ok(MayaCycle { diagrams, mu, sigma, k })
    }

    pub fn p(&self) -> usize {
        self.mu.len()
    }

    /// Recheck every structural invariant.
    pub fn validate(&self) -> Result<(), CycleError> {
        let p = self.mu.len();
        if self.diagrams.len() != p + 1 || self.sigma.len() != p {
            return Err(CycleError::InvalidCycle("length mismatch".into()));
        }
        for i in 0..p {
            if self.diagrams[i].flip(self.mu[i]) != self.diagrams[i + 1] {
                return Err(CycleError::InvalidCycle(format!("M_{} is not a flip of M_{i} at {}", i + 1, self.mu[i])));
            }
            let want = if self.diagrams[i].contains(self.mu[i]) { 1 } else { -1 };
            if self.sigma[i] != want {
                return Err(CycleError::InvalidCycle(format!("sign {i}")));
            }
        }
        if self.diagrams[p] != self.diagrams[0].translate(self.k) {
            return Err(CycleError::InvalidCycle("M_p is not M_0 + k".into()));
        }
        Ok(())
    }

    /// Every diagram translated by `j`.
    pub fn translate(&self, j: i64) -> Self {
        MayaCycle {
            diagrams: self.diagrams.iter().map(|d| d.translate(j)).collect(),
            mu: self.mu.iter().map(|m| m + j).collect(),
            sigma: self.sigma.clone(),
            k: self.k,
        }
    }
}

/// Maya cycle of an oddly coloured sequence.
pub fn build_cycle(seq: &ColouredSequence) -> Result<MayaCycle, CycleError> {
    seq.validate_odd()?;
    let m0 = seq.initial_diagram()?;
    MayaCycle::from_flips(m0, seq.mu(), seq.k as i64)
}

/// Inverse of [`build_cycle`] by Euclidean division of the flips.
pub fn cycle_to_sequence(c: &MayaCycle) -> Result<ColouredSequence, CycleError> {
    c.validate()?;
    if c.k <= 0 {
        return Err(CycleError::ZeroK);
    }
    Ok(ColouredSequence::from_mu(&c.mu, c.k as u32))
}

/// `π(ν, C) = ((ν₁, …, ν_{p−1}, ν₀+1), L(C))`.
pub fn pi_shift(seq: &ColouredSequence) -> ColouredSequence {
    let mut s = seq.clone();
    if s.is_empty() {
        return s;
    }
    s.values.rotate_left(1);
    s.colours.rotate_left(1);
    *s.values.last_mut().expect("nonempty") += 1;
    s
}

pub fn pi_inverse(seq: &ColouredSequence) -> ColouredSequence {
    let mut s = seq.clone();
    if s.is_empty() {
        return s;
    }
    *s.values.last_mut().expect("nonempty") -= 1;
    s.values.rotate_right(1);
    s.colours.rotate_right(1);
    s
}

/// Unit translation `T`: values of colour `k−1` gain 1, then colours shift `c ↦ c+1 mod k`.
pub fn translate_t(seq: &ColouredSequence) -> ColouredSequence {
    let k = seq.k;
    let mut s = seq.clone();
    for (v, c) in s.values.iter_mut().zip(s.colours.iter_mut()) {
        if *c == k - 1 {
            *v += 1;
        }
        *c = (*c + 1) % k;
    }
    s
}

pub fn translate_t_inverse(seq: &ColouredSequence) -> ColouredSequence {
    let k = seq.k;
    let mut s = seq.clone();
    for (v, c) in s.values.iter_mut().zip(s.colours.iter_mut()) {
        *c = (*c + k - 1) % k;
        if *c == k - 1 {
            *v -= 1;
        }
    }
    s
}

/// `T`-iterate whose cycle starts at a standard diagram, with the number of `T` steps applied.
pub fn to_standard(seq: &ColouredSequence) -> Result<(ColouredSequence, i64), CycleError> {
    let beta0 = seq.initial_diagram()?.block_coordinates()[0];
    let steps = -beta0;
    let mut s = seq.clone();
    for _ in 0..steps.abs() {
        s = if steps > 0 { translate_t(&s) } else { translate_t_inverse(&s) };
    }
    Ok((s, steps))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Degeneracy {
    /// `μᵢ = μ_{i+1}`.
    ConsecutiveRepeat { i: usize, j: usize },
    /// `μᵢ = μⱼ` with `j > i+1`.
    NonConsecutiveRepeat { i: usize, j: usize },
    /// `μ_{p−1} = μ₀ + k`.
    WrapAround,
}

/// All degeneracy witnesses, consecutive repeats first.
pub fn degeneracies(seq: &ColouredSequence) -> Vec<Degeneracy> {
    let mu = seq.mu();
    let p = mu.len();
    let mut out = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if mu[i] == mu[j] {
                out.push(if j == i + 1 {
                    Degeneracy::ConsecutiveRepeat { i, j }
                } else {
                    Degeneracy::NonConsecutiveRepeat { i, j }
                });
            }
        }
    }
    if p > 1 && mu[p - 1] == mu[0] + seq.k as i64 {
        out.push(Degeneracy::WrapAround);
    }
    out.sort_by_key(|d| !matches!(d, Degeneracy::ConsecutiveRepeat { .. }));
    out
}

pub fn is_degenerate(seq: &ColouredSequence) -> Option<Degeneracy> {
    degeneracies(seq).into_iter().next()
}

/// Drop the equal entries `i < j`.
pub fn reduce_degenerate(seq: &ColouredSequence, i: usize, j: usize) -> Result<ColouredSequence, CycleError> {
    if i >= j || j >= seq.len() || seq.values[i] != seq.values[j] || seq.colours[i] != seq.colours[j] {
        return Err(CycleError::NotMatchingPair(i, j));
    }
    fn keep<T: Copy>(v: &[T], i: usize, j: usize) -> Vec<T> {
        v.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, y)| *y).collect()
    }
    let values = keep(&seq.values, i, j);
    let colours = keep(&seq.colours, i, j);
    ColouredSequence::new(values, colours, seq.k)
}

/// Compositions of `p` into `k` odd parts, lexicographically decreasing.
pub fn odd_compositions(p: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest < slots {
            return;
        }
        let mut part = rest - (slots - 1);
        if part.is_multiple_of(2) {
            part -= 1;
        }
        loop {
            cur.push(part);
            go(rest - part, slots - 1, cur, out);
            cur.pop();
            if part < 3 {
                break;
            }
            part -= 2;
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(p, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Colour count with its odd-part compositions.
pub type SignatureClass = (u32, Vec<Vec<usize>>);

/// For each odd `k ≤ p`, every composition of `p` into `k` odd parts.
pub fn enumerate_signatures(p: usize) -> Result<Vec<SignatureClass>, CycleError> {
    if p.is_multiple_of(2) {
        return Err(CycleError::EvenLength(p));
    }
    Ok((1..=p).step_by(2).map(|k| (k as u32, odd_compositions(p, k))).collect())
}

/// `C(n + (k−1)/2, k−1)` with `p = 2n+1`.
pub fn signature_count(p: usize, k: usize) -> u64 {
    let n = (p - 1) / 2;
    binomial((n + (k - 1) / 2) as u64, (k - 1) as u64)
}

fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Fibonacci with `F₁ = F₂ = 1`.
pub fn fibonacci(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// Multiset permutations of `word` in increasing lexicographic order.
fn colour_words(sig: &[usize]) -> Vec<Vec<u32>> {
    let mut w: Vec<u32> = sig.iter().enumerate().flat_map(|(c, &n)| std::iter::repeat_n(c as u32, n)).collect();
    let mut out = vec![w.clone()];
    while next_permutation(&mut w) {
        out.push(w.clone());
    }
    out
}

fn next_permutation(w: &mut [u32]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| w[i] < w[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).expect("successor exists");
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

/// Standard oddly `k`-coloured sequences of length `p` with values in `[0, bound]`.
///
/// Order: signature (as in [`enumerate_signatures`]), then colour word, then value word.
pub struct SequenceStream {
    k: u32,
    bound: i64,
    words: Vec<Vec<u32>>,
    word: usize,
    values: Vec<i64>,
    done: bool,
}

pub fn enumerate_sequences(p: usize, k: u32, bound: i64) -> Result<SequenceStream, CycleError> {
    if p.is_multiple_of(2) || k.is_multiple_of(2) || k as usize > p || bound < 0 {
        return Err(CycleError::InvalidShape { p, k });
    }
    let words: Vec<Vec<u32>> = odd_compositions(p, k as usize).iter().flat_map(|s| colour_words(s)).collect();
    Ok(SequenceStream { k, bound, done: words.is_empty(), words, word: 0, values: vec![0; p] })
}

impl SequenceStream {
    fn advance(&mut self) {
        for v in self.values.iter_mut().rev() {
            if *v < self.bound {
                *v += 1;
                return;
            }
            *v = 0;
        }
        self.word += 1;
        if self.word >= self.words.len() {
            self.done = true;
        }
    }
}

/// With nonnegative values: standard iff `(0, colour 0)` occurs an odd number of times.
fn standard_nonnegative(values: &[i64], colours: &[u32]) -> bool {
    values.iter().zip(colours).filter(|&(&v, &c)| v == 0 && c == 0).count() % 2 == 1
}

impl Iterator for SequenceStream {
    type Item = ColouredSequence;

    fn next(&mut self) -> Option<ColouredSequence> {
        while !self.done {
            let colours = &self.words[self.word];
            let hit = standard_nonnegative(&self.values, colours)
                .then(|| ColouredSequence { values: self.values.clone(), colours: colours.clone(), k: self.k });
            self.advance();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn worked() -> ColouredSequence {
        parse_bracketed("4[2],3[1],1[2],2[2],0[0]", 3).unwrap()
    }

    #[test]
    fn minimal_cycle() {
        let c = build_cycle(&ColouredSequence::plain(&[0])).unwrap();
        assert_eq!(c.mu, vec![0]);
        assert_eq!(c.diagrams[0], MayaDiagram::trivial());
        assert_eq!(c.diagrams[1], MayaDiagram::trivial().translate(1));
    }

    #[test]
    fn worked_cycle() {
        let c = build_cycle(&worked()).unwrap();
        assert_eq!(c.mu, vec![14, 10, 5, 8, 0]);
        assert_eq!(c.sigma, vec![-1, -1, -1, 1, -1]);
        assert_eq!(c.diagrams[0], MayaDiagram::from_members([1, 2, 4, 7, 8, 11]));
        let s = cycle_to_sequence(&c).unwrap();
        assert_eq!(s, worked());
        assert_eq!(s.colours, vec![2, 1, 2, 2, 0]);
    }

    #[test]
    fn euclidean_flip_decomposition() {
        let s = ColouredSequence::from_mu(&[-2], 3);
        assert_eq!((s.values[0], s.colours[0]), (-1, 1));
    }

    #[test]
    fn pi_examples() {
        let s = pi_shift(&worked());
        assert_eq!(s, parse_bracketed("3[1],1[2],2[2],0[0],5[2]", 3).unwrap());
        assert_eq!(pi_shift(&ColouredSequence::plain(&[0])), ColouredSequence::plain(&[1]));
        assert_eq!(pi_inverse(&s), worked());
    }

    #[test]
    fn translation_example() {
        let t = translate_t(&worked());
        assert_eq!(t, parse_bracketed("5[0],3[2],2[0],3[0],0[1]", 3).unwrap());
        assert_eq!(translate_t(&ColouredSequence::plain(&[0, 2, 1])), ColouredSequence::plain(&[1, 3, 2]));
    }

    #[test]
    fn standard_form() {
        let (s, steps) = to_standard(&worked()).unwrap();
        assert_eq!((s, steps), (worked(), 0));
        let (s, steps) = to_standard(&translate_t(&worked())).unwrap();
        assert_eq!((s, steps), (worked(), -1));
    }

    #[test]
    fn degenerate_examples() {
        let d1 = parse_bracketed("0,1[1],1,1,0[2]", 3).unwrap();
        assert_eq!(d1.mu(), vec![0, 4, 3, 3, 2]);
        assert_eq!(is_degenerate(&d1), Some(Degeneracy::ConsecutiveRepeat { i: 2, j: 3 }));
        let d2 = parse_bracketed("0,1,1[1],1,0[2]", 3).unwrap();
        assert_eq!(d2.mu(), vec![0, 3, 4, 3, 2]);
        assert_eq!(is_degenerate(&d2), Some(Degeneracy::NonConsecutiveRepeat { i: 1, j: 3 }));
        assert_eq!(is_degenerate(&worked()), None);
        let want = parse_bracketed("0,1[1],0[2]", 3).unwrap();
        assert_eq!(reduce_degenerate(&d1, 2, 3).unwrap(), want);
        assert_eq!(reduce_degenerate(&d2, 1, 3).unwrap(), want);
        assert!(want.is_oddly_coloured());
        assert!(reduce_degenerate(&d1, 1, 2).is_err());
    }

    #[test]
    fn signatures() {
        let s = enumerate_signatures(5).unwrap();
        assert_eq!(s[1], (3, vec![vec![3, 1, 1], vec![1, 3, 1], vec![1, 1, 3]]));
        let counts: Vec<usize> = s.iter().map(|x| x.1.len()).collect();
        assert_eq!(counts, vec![1, 3, 1]);
        assert_eq!(enumerate_signatures(1).unwrap(), vec![(1, vec![vec![1]])]);
        assert!(enumerate_signatures(4).is_err());
    }

    #[test]
    fn fibonacci_totals() {
        for p in (1..=13).step_by(2) {
            let total: usize = enumerate_signatures(p).unwrap().iter().map(|x| x.1.len()).sum();
            assert_eq!(total as u64, fibonacci(p));
            for (k, comps) in enumerate_signatures(p).unwrap() {
                assert_eq!(comps.len() as u64, signature_count(p, k as usize));
            }
        }
        assert_eq!(fibonacci(7), 13);
    }

    #[test]
    fn composition_brute_force() {
        fn brute(p: usize) -> usize {
            // compositions of p into odd parts
            if p == 0 {
                return 1;
            }
            (1..=p).step_by(2).map(|a| brute(p - a)).sum()
        }
        let total: usize = enumerate_signatures(7).unwrap().iter().map(|x| x.1.len()).sum();
        assert_eq!(total, brute(7));
    }

    #[test]
    fn enumeration_small() {
        let v: Vec<_> = enumerate_sequences(1, 1, 0).unwrap().collect();
        assert_eq!(v, vec![ColouredSequence::plain(&[0])]);
        // brute force over all tuples
        let got: Vec<_> = enumerate_sequences(3, 1, 1).unwrap().collect();
        let mut want = Vec::new();
        for a in 0..=1 {
            for b in 0..=1 {
                for c in 0..=1 {
                    let s = ColouredSequence::plain(&[a, b, c]);
                    if s.is_standard() {
                        want.push(s);
                    }
                }
            }
        }
        assert_eq!(got, want);
        for s in enumerate_sequences(3, 3, 2).unwrap() {
            assert!(s.is_standard());
            assert_eq!(to_standard(&s).unwrap(), (s.clone(), 0));
        }
        let n = enumerate_sequences(3, 3, 1).unwrap().count();
        let mut brute = 0;
        for w in colour_words(&[1, 1, 1]) {
            for a in 0..=1 {
                for b in 0..=1 {
                    for c in 0..=1 {
                        if ColouredSequence::new(vec![a, b, c], w.clone(), 3).unwrap().is_standard() {
                            brute += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(n, brute);
    }

    #[test]
    fn json_roundtrip() {
        let s = worked();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"k":3,"entries":[[4,2],[3,1],[1,2],[2,2],[0,0]]}"#);
        assert_eq!(serde_json::from_str::<ColouredSequence>(&j).unwrap(), s);
        assert!(serde_json::from_str::<ColouredSequence>(r#"{"k":3,"entries":[[4,5]]}"#).is_err());
    }

    pub fn arb_odd_sequence(max_n: usize, max_k: u32, max_v: i64) -> impl Strategy<Value = ColouredSequence> {
        (0..=max_n, 0..=(max_k as usize - 1) / 2)
            .prop_filter("k <= p", |(n, kk)| kk <= n)
            .prop_flat_map(move |(n, kk)| {
                let p = 2 * n + 1;
                let k = (2 * kk + 1) as u32;
                let comps = odd_compositions(p, k as usize);
                (Just(k), prop::sample::select(comps), prop::collection::vec(-max_v..=max_v, p), any::<u64>())
            })
            .prop_map(|(k, sig, values, seed)| {
                let mut words = colour_words(&sig);
                let w = words.swap_remove((seed % words.len() as u64) as usize);
                ColouredSequence::new(values, w, k).unwrap()
            })
    }

    proptest! {
        #[test]
        fn cycle_roundtrip(s in arb_odd_sequence(3, 5, 4)) {
            let c = build_cycle(&s).unwrap();
            prop_assert_eq!(cycle_to_sequence(&c).unwrap(), s.clone());
            prop_assert_eq!(MayaCycle::from_flips(c.diagrams[0].clone(), c.mu.clone(), c.k).unwrap(), c.clone());
            // Mᵢ = Ξ_k(πⁱ(ν, C))
            let mut t = s.clone();
            for d in &c.diagrams {
                prop_assert_eq!(d, &t.initial_diagram().unwrap());
                t = pi_shift(&t);
            }
        }

        #[test]
        fn pi_power_is_unit_shift(s in arb_odd_sequence(3, 5, 4)) {
            let mut t = s.clone();
            for _ in 0..s.len() {
                t = pi_shift(&t);
            }
            let want: Vec<i64> = s.values.iter().map(|v| v + 1).collect();
            prop_assert_eq!(t.values, want);
            prop_assert_eq!(t.colours, s.colours);
        }

        #[test]
        fn t_translates_cycle(s in arb_odd_sequence(3, 5, 4)) {
            let c = build_cycle(&s).unwrap();
            let ct = build_cycle(&translate_t(&s)).unwrap();
            prop_assert_eq!(ct.diagrams, c.translate(1).diagrams);
            prop_assert_eq!(translate_t_inverse(&translate_t(&s)), s.clone());
        }

        #[test]
        fn to_standard_idempotent(s in arb_odd_sequence(3, 5, 4)) {
            let (a, _) = to_standard(&s).unwrap();
            prop_assert!(a.is_standard());
            prop_assert_eq!(to_standard(&a).unwrap(), (a.clone(), 0));
        }

        #[test]
        fn signature_invariant_under_pi(s in arb_odd_sequence(3, 5, 4)) {
            prop_assert_eq!(pi_shift(&s).signature(), s.signature());
            prop_assert_eq!(translate_t(&s).signature().iter().sum::<usize>(), s.len());
        }
    }
}
