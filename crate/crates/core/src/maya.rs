//! Maya diagrams: cofinite-below, finite-above subsets of Z.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MayaError {
    #[error("Frobenius sequence must be strictly decreasing and nonnegative: {0:?}")]
    BadFrobenius(Vec<i64>),
    #[error("block coordinates need odd cardinality, got {0}")]
    EvenCardinality(usize),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
}

/// A Maya diagram stored as its negative holes and nonnegative members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MayaDiagram {
    holes: BTreeSet<i64>,
    members: BTreeSet<i64>,
}

/// `(s₁ > … > s_r | t_q, …, t₁)` with `t` stored decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusSymbol {
    pub s: Vec<i64>,
    pub t: Vec<i64>,
}

impl FrobeniusSymbol {
    pub fn index(&self) -> i64 {
        self.t.len() as i64 - self.s.len() as i64
    }
}

impl fmt::Display for FrobeniusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let mut t = self.t.clone();
        t.reverse();
        write!(f, "({} | {})", j(&self.s), j(&t))
    }
}

impl Default for MayaDiagram {
    fn default() -> Self {
        Self::trivial()
    }
}

impl MayaDiagram {
    /// The diagram Z₋ of all negative integers.
    pub fn trivial() -> Self {
        MayaDiagram { holes: BTreeSet::new(), members: BTreeSet::new() }
    }

    /// Standard-form diagram with the given nonnegative members.
    pub fn from_members<I: IntoIterator<Item = i64>>(members: I) -> Self {
        let mut m = Self::trivial();
        for x in members {
            if !m.contains(x) {
                m = m.flip(x);
            }
        }
        m
    }

    pub fn from_parts(holes: BTreeSet<i64>, members: BTreeSet<i64>) -> Self {
        assert!(holes.iter().all(|&h| h < 0) && members.iter().all(|&m| m >= 0));
        MayaDiagram { holes, members }
    }

    /// Everything below `lo` is in; membership in `[lo, hi)` is given by `f`; nothing from `hi` on.
    fn from_window(lo: i64, hi: i64, f: impl Fn(i64) -> bool) -> Self {
        let mut holes = BTreeSet::new();
        let mut members = BTreeSet::new();
        for x in lo.min(0)..hi.max(0) {
            let inside = if x < lo { true } else { x < hi && f(x) };
            if x < 0 && !inside {
                holes.insert(x);
            } else if x >= 0 && inside {
                members.insert(x);
            }
        }
        MayaDiagram { holes, members }
    }

    pub fn holes(&self) -> &BTreeSet<i64> {
        &self.holes
    }

    pub fn members(&self) -> &BTreeSet<i64> {
        &self.members
    }

    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            !self.holes.contains(&m)
        } else {
            self.members.contains(&m)
        }
    }

    /// `[lo, hi)` outside which membership is determined by sign alone.
    pub fn window(&self) -> (i64, i64) {
        let lo = self.holes.first().copied().unwrap_or(0).min(0);
        let hi = self.members.last().map_or(0, |m| m + 1);
        (lo, hi)
    }

    pub fn frobenius(&self) -> FrobeniusSymbol {
        FrobeniusSymbol {
            s: self.holes.iter().map(|m| -m - 1).collect(),
            t: self.members.iter().rev().copied().collect(),
        }
    }

    pub fn from_frobenius(f: &FrobeniusSymbol) -> Result<Self, MayaError> {
        for v in [&f.s, &f.t] {
            if v.iter().any(|&x| x < 0) || v.windows(2).any(|w| w[0] <= w[1]) {
                return Err(MayaError::BadFrobenius(v.clone()));
            }
        }
        Ok(MayaDiagram {
            holes: f.s.iter().map(|s| -s - 1).collect(),
            members: f.t.iter().copied().collect(),
        })
    }

    pub fn index(&self) -> i64 {
        self.members.len() as i64 - self.holes.len() as i64
    }

    pub fn translate(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let (lo, hi) = self.window();
        MayaDiagram::from_window(lo + k, hi + k, |x| self.contains(x - k))
    }

    pub fn flip(&self, pos: i64) -> Self {
        let mut m = self.clone();
        if pos < 0 {
            if !m.holes.remove(&pos) {
                m.holes.insert(pos);
            }
        } else if !m.members.remove(&pos) {
            m.members.insert(pos);
        }
        m
    }

    /// Flip every position of `positions` (a set; repeats cancel).
    pub fn multi_flip<I: IntoIterator<Item = i64>>(&self, positions: I) -> Self {
        positions.into_iter().fold(self.clone(), |m, p| m.flip(p))
    }

    /// `β = (M+1) ⊖ M`, increasing.
    pub fn block_coordinates(&self) -> Vec<i64> {
        self.flip_set_k(1)
    }

    pub fn genus(&self) -> usize {
        (self.block_coordinates().len() - 1) / 2
    }

    /// `(M+k) ⊖ M`, increasing.
    pub fn flip_set_k(&self, k: i64) -> Vec<i64> {
        assert!(k >= 1, "flip set order must be positive");
        let (lo, hi) = self.window();
        (lo..hi + k).filter(|&x| self.contains(x - k) != self.contains(x)).collect()
    }

    /// `p = Σ(2gᵢ+1)` over the `k`-modular decomposition.
    pub fn cyclicity(&self, k: i64) -> usize {
        self.flip_set_k(k).len()
    }

    /// Genus of each component of the `k`-modular decomposition.
    pub fn signature(&self, k: usize) -> Vec<usize> {
        self.modular_decompose(k).iter().map(|m| 2 * m.genus() + 1).collect()
    }

    /// Translate so that `β₀ = 0`; returns the diagram and the shift applied.
    pub fn standardize(&self) -> (Self, i64) {
        let shift = -self.block_coordinates()[0];
        (self.translate(shift), shift)
    }

    pub fn is_standard(&self) -> bool {
        self.holes.is_empty() && !self.members.contains(&0)
    }

    /// `Θ_k(M⁰,…,M^{k−1}) = ∪ (k·Mⁱ + i)`.
    pub fn interlace(ms: &[MayaDiagram]) -> Result<Self, MayaError> {
        let k = ms.len() as i64;
        if k == 0 {
            return Err(MayaError::ZeroModulus);
        }
        let lo = ms.iter().map(|m| m.window().0).min().unwrap_or(0);
        let hi = ms.iter().map(|m| m.window().1).max().unwrap_or(0);
        Ok(MayaDiagram::from_window(k * lo, k * hi + k, |x| {
            let i = x.rem_euclid(k);
            ms[i as usize].contains(x.div_euclid(k))
        }))
    }

    /// Inverse of [`MayaDiagram::interlace`].
    pub fn modular_decompose(&self, k: usize) -> Vec<MayaDiagram> {
        assert!(k >= 1, "modulus must be positive");
        let k = k as i64;
        let (lo, hi) = self.window();
        (0..k)
            .map(|i| MayaDiagram::from_window(lo.div_euclid(k), hi.div_euclid(k) + 1, |m| self.contains(k * m + i)))
            .collect()
    }

    /// `Ξ(β) = (−∞, β₀) ∪ [β₁, β₂) ∪ …`; pairs of repeated entries cancel.
    pub fn xi(beta: &[i64]) -> Result<Self, MayaError> {
        if beta.len().is_multiple_of(2) {
            return Err(MayaError::EvenCardinality(beta.len()));
        }
        let b = odd_collapse(beta);
        let lo = b[0];
        let hi = *b.last().expect("nonempty");
        Ok(MayaDiagram::from_window(lo, hi, |x| {
            // x ∈ [β_{2j−1}, β_{2j}) iff an odd number of β ≤ x... counted from β₁
            b.iter().filter(|&&y| y <= x).count() % 2 == 0
        }))
    }

    /// `Ξ_k` of coloured values: interlace the `Ξ` of each colour class.
    pub fn xi_coloured(entries: &[(i64, usize)], k: usize) -> Result<Self, MayaError> {
        let mut classes: Vec<Vec<i64>> = vec![Vec::new(); k];
        for &(v, c) in entries {
            classes[c].push(v);
        }
        let parts = classes.iter().map(|b| MayaDiagram::xi(b)).collect::<Result<Vec<_>, _>>()?;
        MayaDiagram::interlace(&parts)
    }

    /// Boxes from `from` to `to` (exclusive); `|` marks the origin.
    pub fn render_range(&self, from: i64, to: i64) -> String {
        let mut s = String::new();
        for x in from..to {
            if x == 0 {
                s.push('|');
            }
            s.push(if self.contains(x) { '⬛' } else { '⬜' });
        }
        if to <= 0 {
            s.push('|');
        }
        s
    }

    pub fn render(&self) -> String {
        let (lo, hi) = self.window();
        self.render_range(lo - 2, hi.max(1) + 2)
    }
}

/// Sorted set of entries occurring an odd number of times.
pub fn odd_collapse(beta: &[i64]) -> Vec<i64> {
    let mut count: BTreeMap<i64, usize> = BTreeMap::new();
    for &b in beta {
        *count.entry(b).or_default() += 1;
    }
    count.into_iter().filter(|(_, c)| c % 2 == 1).map(|(b, _)| b).collect()
}

impl fmt::Debug for MayaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Maya{}", self.frobenius())
    }
}

impl fmt::Display for MayaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn genus_m() -> MayaDiagram {
        MayaDiagram::xi(&[2, 3, 5, 7, 10]).unwrap()
    }

    #[test]
    fn trivial_diagram() {
        let z = MayaDiagram::trivial();
        assert_eq!(z.frobenius(), FrobeniusSymbol { s: vec![], t: vec![] });
        assert_eq!(z.index(), 0);
        assert_eq!(z.block_coordinates(), vec![0]);
        assert_eq!(z.genus(), 0);
        assert_eq!(z.cyclicity(3), 3);
        assert_eq!(z.translate(1), MayaDiagram::from_members([0]));
    }

    #[test]
    fn frobenius_examples() {
        let m = MayaDiagram::from_members([1, 2, 4, 7, 8, 11]);
        let f = m.frobenius();
        assert_eq!(f.t, vec![11, 8, 7, 4, 2, 1]);
        assert_eq!(f.index(), 6);
        let m = MayaDiagram::trivial().flip(-1).flip(0);
        let f = m.frobenius();
        assert_eq!((f.s.clone(), f.t.clone()), (vec![0], vec![0]));
        assert_eq!(f.index(), 0);
        assert_eq!(MayaDiagram::from_frobenius(&f).unwrap(), m);
        assert!(MayaDiagram::from_frobenius(&FrobeniusSymbol { s: vec![1, 2], t: vec![] }).is_err());
    }

    #[test]
    fn genus_two_figure() {
        let m = genus_m();
        assert_eq!(m.block_coordinates(), vec![2, 3, 5, 7, 10]);
        assert_eq!(m.genus(), 2);
        // (−∞,2) ∪ [3,5) ∪ [7,10)
        for x in -3..12 {
            let want = x < 2 || (3..5).contains(&x) || (7..10).contains(&x);
            assert_eq!(m.contains(x), want, "{x}");
        }
        assert_eq!(m.translate(2).index(), m.index() + 2);
    }

    #[test]
    fn xi_collapses_pairs() {
        assert_eq!(MayaDiagram::xi(&[1, 1, 3]).unwrap(), MayaDiagram::xi(&[3]).unwrap());
        assert_eq!(MayaDiagram::xi(&[0]).unwrap(), MayaDiagram::trivial());
        assert!(matches!(MayaDiagram::xi(&[1, 2]), Err(MayaError::EvenCardinality(2))));
    }

    fn example_ex1() -> MayaDiagram {
        let parts = [
            MayaDiagram::xi(&[0, 1, 4]).unwrap(),
            MayaDiagram::xi(&[-1, 1, 3, 5, 6]).unwrap(),
            MayaDiagram::xi(&[5]).unwrap(),
        ];
        MayaDiagram::interlace(&parts).unwrap()
    }

    #[test]
    fn interlacing_example() {
        let m = example_ex1();
        assert_eq!(m.block_coordinates(), vec![-2, -1, 0, 2, 10, 11, 12, 14, 15, 16, 17]);
        assert_eq!(m.genus(), 5);
        let mut fs = m.flip_set_k(3);
        fs.sort();
        let mut want = vec![0, 3, 12, -2, 4, 10, 16, 19, 17];
        want.sort();
        assert_eq!(fs, want);
        assert_eq!(m.cyclicity(3), 9);
        assert_eq!(m.signature(3), vec![3, 5, 1]);
    }

    #[test]
    fn flip_example() {
        let m = MayaDiagram::xi(&[0, 1, 4]).unwrap();
        let f = m.flip(2);
        for x in -4..8 {
            assert_eq!(f.contains(x), if x == 2 { !m.contains(2) } else { m.contains(x) });
        }
        assert_eq!(m.flip(5).flip(5), m);
    }

    #[test]
    fn interlace_of_one_is_identity() {
        let m = genus_m();
        assert_eq!(MayaDiagram::interlace(std::slice::from_ref(&m)).unwrap(), m);
    }

    #[test]
    fn rendering() {
        let m = MayaDiagram::from_members([1]);
        assert_eq!(m.render_range(-2, 3), "⬛⬛|⬜⬛⬜");
    }

    pub(crate) fn arb_diagram() -> impl Strategy<Value = MayaDiagram> {
        (prop::collection::btree_set(-9i64..0, 0..5), prop::collection::btree_set(0i64..9, 0..5))
            .prop_map(|(h, m)| MayaDiagram::from_parts(h, m))
    }

    proptest! {
        #[test]
        fn xi_inverts_block_coordinates(m in arb_diagram()) {
            prop_assert_eq!(MayaDiagram::xi(&m.block_coordinates()).unwrap(), m);
        }

        #[test]
        fn block_coordinates_invert_xi(b in prop::collection::btree_set(-8i64..8, 0..4), x in -8i64..8) {
            let mut b: Vec<i64> = b.into_iter().collect();
            if b.len().is_multiple_of(2) {
                if b.contains(&x) { b.retain(|&y| y != x) } else { b.push(x) }
                b.sort();
            }
            prop_assume!(b.len() % 2 == 1);
            prop_assert_eq!(MayaDiagram::xi(&b).unwrap().block_coordinates(), b);
        }

        #[test]
        fn flips_are_commuting_involutions(m in arb_diagram(), a in -12i64..12, b in -12i64..12) {
            prop_assert_eq!(m.flip(a).flip(a), m.clone());
            prop_assert_eq!(m.flip(a).flip(b), m.flip(b).flip(a));
        }

        #[test]
        fn translation_shifts_index(m in arb_diagram(), k in -6i64..6) {
            prop_assert_eq!(m.translate(k).index(), m.index() + k);
            prop_assert_eq!(m.translate(k).translate(-k), m.clone());
        }

        #[test]
        fn flip_set_translates(m in arb_diagram(), k in 1i64..=5) {
            let fs = m.flip_set_k(k);
            prop_assert_eq!(m.multi_flip(fs.iter().copied()), m.translate(k));
            prop_assert_eq!(fs.len(), m.cyclicity(k));
            let sig: usize = m.signature(k as usize).iter().sum();
            prop_assert_eq!(sig, fs.len());
        }

        #[test]
        fn cyclicity_one_is_genus(m in arb_diagram()) {
            prop_assert_eq!(m.cyclicity(1), 2 * m.genus() + 1);
            prop_assert_eq!(m.flip_set_k(1), m.block_coordinates());
        }

        #[test]
        fn decomposition_roundtrip(a in arb_diagram(), b in arb_diagram(), c in arb_diagram(), k in 1usize..5) {
            let ms = vec![a, b, c];
            prop_assert_eq!(MayaDiagram::interlace(&ms).unwrap().modular_decompose(3), ms);
            let m = MayaDiagram::interlace(&[MayaDiagram::trivial()]).unwrap();
            prop_assert_eq!(MayaDiagram::interlace(&m.modular_decompose(k)).unwrap(), m);
        }

        #[test]
        fn standardize_gives_standard(m in arb_diagram()) {
            let (s, shift) = m.standardize();
            prop_assert!(s.is_standard());
            prop_assert_eq!(s.translate(-shift), m);
        }
    }
}
