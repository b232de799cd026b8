//! Hermite polynomials and Hermite pseudo-Wronskians of Maya diagrams.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactalg::{bareiss, log_derivative, zpoly, Polynomial, RationalFunction, ZPoly};
use crate::maya::MayaDiagram;

static HERMITE: LazyLock<RwLock<Vec<Arc<ZPoly>>>> =
    LazyLock::new(|| RwLock::new(vec![Arc::new(ZPoly::one()), Arc::new(ZPoly::from_i64(&[0, 2]))]));
static CONJUGATE: LazyLock<RwLock<Vec<Arc<ZPoly>>>> =
    LazyLock::new(|| RwLock::new(vec![Arc::new(ZPoly::one()), Arc::new(ZPoly::from_i64(&[0, 2]))]));

/// Grow a three-term memo table `P_{n+1} = 2z P_n + sign·2n P_{n−1}` up to `n`.
fn memo(table: &RwLock<Vec<Arc<ZPoly>>>, n: usize, sign: i64) -> Arc<ZPoly> {
    if let Some(p) = table.read().expect("memo lock").get(n) {
        return p.clone();
    }
    let mut t = table.write().expect("memo lock");
    while t.len() <= n {
        let m = t.len() - 1;
        let a = t[m].shift(1).scale(&BigInt::from(2));
        let b = t[m - 1].scale(&BigInt::from(sign * 2 * m as i64));
        t.push(Arc::new(zpoly::add(&a, &b)));
    }
    t[n].clone()
}

/// `H_n` over Z, by `H_{n+1} = 2zH_n − 2nH_{n−1}`.
pub fn hermite_int(n: usize) -> Arc<ZPoly> {
    memo(&HERMITE, n, -1)
}

/// Conjugate Hermite `θ_n(z) = i^{−n} H_n(iz)` over Z.
pub fn conj_hermite_int(n: usize) -> Arc<ZPoly> {
    memo(&CONJUGATE, n, 1)
}

pub fn hermite(n: usize) -> Polynomial<BigRational> {
    zpoly::to_rational(&hermite_int(n), &BigRational::one())
}

pub fn conj_hermite(n: usize) -> Polynomial<BigRational> {
    zpoly::to_rational(&conj_hermite_int(n), &BigRational::one())
}

/// `D^j H_t = 2^j t!/(t−j)! · H_{t−j}`.
fn hermite_derivative(t: usize, j: usize) -> ZPoly {
    if j > t {
        return ZPoly::zero();
    }
    let mut f = BigInt::one();
    for i in 0..j {
        f *= 2 * (t - i);
    }
    hermite_int(t - j).scale(&f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoWronskian {
    pub diagram: MayaDiagram,
    pub poly: Polynomial<BigRational>,
    pub rescale_constant: BigRational,
}

/// The `(r+q)×(r+q)` determinantal matrix: θ shift rows, then Hermite derivative rows.
pub fn pseudo_wronskian_matrix(m: &MayaDiagram) -> Vec<Vec<ZPoly>> {
    let f = m.frobenius();
    let n = f.s.len() + f.t.len();
    let mut rows = Vec::with_capacity(n);
    for &s in &f.s {
        rows.push((0..n).map(|j| (*conj_hermite_int(s as usize + j)).clone()).collect());
    }
    for &t in f.t.iter().rev() {
        rows.push((0..n).map(|j| hermite_derivative(t as usize, j)).collect());
    }
    rows
}

/// `c_M = (−1)^{rq} / (∏_{i<j}(2s_j−2s_i) · ∏_{i<j}(2t_i−2t_j))`.
pub fn rescale_constant(m: &MayaDiagram) -> BigRational {
    let f = m.frobenius();
    let mut den = BigInt::one();
    for i in 0..f.s.len() {
        for j in i + 1..f.s.len() {
            den *= 2 * (f.s[j] - f.s[i]);
        }
    }
    for i in 0..f.t.len() {
        for j in i + 1..f.t.len() {
            den *= 2 * (f.t[i] - f.t[j]);
        }
    }
    let sign = if (f.s.len() * f.t.len()).is_multiple_of(2) { 1 } else { -1 };
    BigRational::new(BigInt::from(sign), den)
}

/// `H_M` from its own determinantal representation, with `c_M`.
pub fn pseudo_wronskian(m: &MayaDiagram) -> PseudoWronskian {
    let det = bareiss(pseudo_wronskian_matrix(m));
    PseudoWronskian {
        diagram: m.clone(),
        poly: zpoly::to_rational(&det, &BigRational::one()),
        rescale_constant: rescale_constant(m),
    }
}

/// `Ĥ_M = c_M·H_M`, computed directly at `M`.
pub fn rescaled(m: &MayaDiagram) -> Polynomial<BigRational> {
    let pw = pseudo_wronskian(m);
    pw.poly.scale(&pw.rescale_constant)
}

/// Cached translation-invariant data of a diagram class.
#[derive(Debug)]
pub struct Tau {
    /// `Ĥ_M`.
    pub poly: Polynomial<BigRational>,
    /// Primitive integer associate of `Ĥ_M`.
    pub primitive: ZPoly,
    logder: OnceLock<RationalFunction<BigRational>>,
}

impl Tau {
    /// `Ĥ_M′/Ĥ_M`, reduced.
    pub fn log_derivative(&self) -> &RationalFunction<BigRational> {
        self.logder.get_or_init(|| log_derivative(&self.poly).expect("pseudo-Wronskians are nonzero"))
    }
}

static TAU: LazyLock<Mutex<HashMap<MayaDiagram, Arc<Tau>>>> = LazyLock::new(Default::default);

/// Translate of `M` with the smallest determinantal matrix.
fn compact_translate(m: &MayaDiagram) -> MayaDiagram {
    let (std, _) = m.standardize();
    let hi = std.window().1;
    (0..=hi)
        .map(|j| std.translate(-j))
        .min_by_key(|d| (d.holes().len() + d.members().len(), d.holes().len()))
        .expect("nonempty range")
}

/// `Ĥ_M` through the cache; equal for all translates of `M`.
pub fn tau(m: &MayaDiagram) -> Arc<Tau> {
    let (key, _) = m.standardize();
    if let Some(t) = TAU.lock().expect("tau cache").get(&key) {
        return t.clone();
    }
    let rep = compact_translate(&key);
    let det = bareiss(pseudo_wronskian_matrix(&rep));
    let poly = zpoly::to_rational(&det, &rescale_constant(&rep));
    let primitive = det.primitive();
    let t = Arc::new(Tau { poly, primitive, logder: OnceLock::new() });
    TAU.lock().expect("tau cache").entry(key).or_insert(t).clone()
}

/// `deg H_M = Σtᵢ − q(q−1)/2` for standard `M`.
pub fn standard_degree(m: &MayaDiagram) -> Option<i64> {
    if !m.holes().is_empty() {
        return None;
    }
    let q = m.members().len() as i64;
    Some(m.members().iter().sum::<i64>() - q * (q - 1) / 2)
}

/// Generalized Hermite `H_{m,n} = Wr(H_m, …, H_{m+n−1})`.
pub fn generalized_hermite(m: usize, n: usize) -> Polynomial<BigRational> {
    let fs: Vec<ZPoly> = (m..m + n).map(|i| (*hermite_int(i)).clone()).collect();
    zpoly::to_rational(&crate::exactalg::wronskian_int(&fs), &BigRational::one())
}

/// Generalized Okamoto `Q_{m,n} = Wr(H₁, H₄, …, H_{3m−2}, H₂, H₅, …, H_{3n−1})`.
pub fn generalized_okamoto(m: usize, n: usize) -> Polynomial<BigRational> {
    let idx = (0..m).map(|i| 1 + 3 * i).chain((0..n).map(|i| 2 + 3 * i));
    let fs: Vec<ZPoly> = idx.map(|i| (*hermite_int(i)).clone()).collect();
    if fs.is_empty() {
        return Polynomial::one();
    }
    zpoly::to_rational(&crate::exactalg::wronskian_int(&fs), &BigRational::one())
}

/// `Wr(H1,H2,H4)` when `M` has no negative holes, otherwise `pWr(s|t)`.
pub fn wronskian_label(m: &MayaDiagram) -> String {
    if !m.holes().is_empty() {
        return format!("pWr{}", m.frobenius());
    }
    if m.members().is_empty() {
        return "1".into();
    }
    let idx: Vec<String> = m.members().iter().map(|t| format!("H{t}")).collect();
    format!("Wr({})", idx.join(","))
}

pub fn is_zero_poly(p: &Polynomial<BigRational>) -> bool {
    p.coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{minor_expansion, wronskian};

    fn p(v: &[i64]) -> Polynomial<BigRational> {
        Polynomial::from_ints(v)
    }

    #[test]
    fn recurrence_values() {
        assert_eq!(hermite(0), p(&[1]));
        assert_eq!(hermite(2), p(&[-2, 0, 4]));
        assert_eq!(hermite(3), p(&[0, -12, 0, 8]));
        assert_eq!(conj_hermite(1), p(&[0, 2]));
        assert_eq!(conj_hermite(2), p(&[2, 0, 4]));
    }

    #[test]
    fn hermite_equation() {
        for n in 0..=30 {
            let h = hermite(n);
            let lhs = &(&h.nth_derivative(2) - &(&p(&[0, 2]) * &h.derivative())) + &h.scale(&BigRational::from_integer((2 * n).into()));
            assert!(lhs.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn conjugate_coefficients_positive() {
        for n in 0..=30 {
            let t = conj_hermite(n);
            for (i, c) in t.coeffs().iter().enumerate() {
                if i % 2 == n % 2 {
                    assert!(c > &BigRational::zero(), "θ_{n} coefficient {i}");
                }
            }
        }
    }

    #[test]
    fn conjugate_matches_definition() {
        // coefficients of θ_n are |coefficients of H_n|
        for n in 0..15 {
            let h = hermite(n);
            let t = conj_hermite(n);
            for (a, b) in h.coeffs().iter().zip(t.coeffs()) {
                assert_eq!(num_traits::Signed::abs(a), b.clone());
            }
        }
    }

    #[test]
    fn trivial_and_small_diagrams() {
        let z = pseudo_wronskian(&MayaDiagram::trivial());
        assert_eq!(z.poly, p(&[1]));
        assert_eq!(rescaled(&MayaDiagram::trivial()), p(&[1]));
        let m = MayaDiagram::from_members([1, 2]);
        assert_eq!(pseudo_wronskian(&m).poly, p(&[4, 0, 8]));
        assert_eq!(rescaled(&MayaDiagram::from_members([5])), hermite(5));
    }

    #[test]
    fn worked_example_degree() {
        let m = MayaDiagram::from_members([1, 2, 4, 7, 8, 11]);
        let pw = pseudo_wronskian(&m);
        assert_eq!(pw.poly.degree().finite(), Some(18));
        assert_eq!(standard_degree(&m), Some(33 - 15));
        let hs: Vec<_> = [1, 2, 4, 7, 8, 11].iter().map(|&i| hermite(i)).collect();
        assert_eq!(pw.poly, wronskian(&hs).unwrap());
    }

    #[test]
    fn shift_matrix_against_minor_expansion() {
        // Frobenius (0 | 2): rows θ₀, θ₁ and H₂, D H₂
        let m = MayaDiagram::trivial().flip(-1).flip(2);
        let rows = pseudo_wronskian_matrix(&m);
        let q: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|x| zpoly::to_rational(x, &BigRational::one())).collect()).collect();
        assert_eq!(q[0][0], conj_hermite(0));
        assert_eq!(q[1][0], hermite(2));
        let oracle = minor_expansion(&q, &BigRational::one()).unwrap();
        assert_eq!(pseudo_wronskian(&m).poly, oracle);
    }

    #[test]
    fn xi_014_translation_invariant() {
        let m = MayaDiagram::xi(&[0, 1, 4]).unwrap();
        assert_eq!(rescaled(&m), rescaled(&m.translate(1)));
        assert_eq!(rescaled(&m), tau(&m.translate(-2)).poly);
    }

    #[test]
    fn standard_pseudo_wronskian_is_plain_wronskian() {
        for members in [vec![1], vec![2, 3], vec![1, 3, 4], vec![2, 4, 5, 7]] {
            let m = MayaDiagram::from_members(members.iter().copied());
            let hs: Vec<_> = members.iter().map(|&i| hermite(i as usize)).collect();
            assert_eq!(pseudo_wronskian(&m).poly, wronskian(&hs).unwrap());
        }
    }

    #[test]
    fn named_families() {
        assert_eq!(generalized_hermite(3, 3).degree().finite(), Some(9));
        assert_eq!(generalized_okamoto(1, 0), hermite(1));
    }
}
