use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::poly::Polynomial;
use super::scalar::Scalar;
use super::zpoly::{self, ZPoly};
use super::AlgebraError;

/// Fraction-free (Bareiss) determinant of a square integer-polynomial matrix.
pub fn bareiss(mut m: Vec<Vec<ZPoly>>) -> ZPoly {
    let n = m.len();
    if n == 0 {
        return ZPoly::one();
    }
    let mut sign = false;
    let mut prev = ZPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return ZPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = zpoly::sub(&zpoly::mul(&m[k][k], &m[i][j]), &zpoly::mul(&m[i][k], &m[k][j]));
                m[i][j] = if prev.deg() == 0 && prev.c[0].is_one() {
                    t
                } else {
                    zpoly::exact_div(&t, &prev).expect("Bareiss step divides exactly")
                };
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Cofactor expansion along the first row; generic oracle for small matrices.
pub fn minor_expansion<S: Scalar>(m: &[Vec<Polynomial<S>>], one: &S) -> Result<Polynomial<S>, AlgebraError> {
    let n = m.len();
    if n == 0 {
        return Ok(Polynomial::constant(one.clone()));
    }
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(AlgebraError::NotSquare { rows: n, cols: row.len() });
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = Polynomial::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Polynomial<S>>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].try_mul(&minor_expansion(&sub, one)?)?;
        acc = if j % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
    }
    Ok(acc)
}

/// Exact determinant of a rational polynomial matrix.
///
/// Rows are scaled to integer polynomials, eliminated fraction-free, then unscaled.
pub fn poly_determinant(m: &[Vec<Polynomial<BigRational>>]) -> Result<Polynomial<BigRational>, AlgebraError> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(AlgebraError::NotSquare { rows: n, cols: row.len() });
    }
    let mut scale = BigRational::one();
    let mut rows = Vec::with_capacity(n);
    for row in m {
        let den = row
            .iter()
            .flat_map(|p| p.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        scale /= BigRational::from_integer(den.clone());
        let r: Vec<ZPoly> = row
            .iter()
            .map(|p| ZPoly::new(p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect()))
            .collect();
        rows.push(r);
    }
    let d = bareiss(rows);
    if d.is_zero() {
        return Ok(Polynomial::zero());
    }
    Ok(zpoly::to_rational(&d, &scale))
}

/// Determinant with cofactor expansion up to 4×4 and Bareiss above.
pub fn determinant(m: &[Vec<Polynomial<BigRational>>]) -> Result<Polynomial<BigRational>, AlgebraError> {
    if m.len() <= 4 {
        return minor_expansion(m, &BigRational::one());
    }
    poly_determinant(m)
}

/// Wronskian matrix: row `i` holds the `i`-th derivatives.
pub fn wronskian_matrix<S: Scalar>(fs: &[Polynomial<S>]) -> Vec<Vec<Polynomial<S>>> {
    let n = fs.len();
    let mut rows = vec![Vec::with_capacity(n); n];
    for f in fs {
        let mut d = f.clone();
        for row in rows.iter_mut() {
            row.push(d.clone());
            d = d.derivative();
        }
    }
    rows
}

pub fn wronskian(fs: &[Polynomial<BigRational>]) -> Result<Polynomial<BigRational>, AlgebraError> {
    if fs.is_empty() {
        return Err(AlgebraError::Empty);
    }
    poly_determinant(&wronskian_matrix(fs))
}

/// Wronskian of integer polynomials, entirely over Z.
pub fn wronskian_int(fs: &[ZPoly]) -> ZPoly {
    let n = fs.len();
    let mut rows: Vec<Vec<ZPoly>> = vec![Vec::with_capacity(n); n];
    for f in fs {
        let mut d = f.clone();
        for row in rows.iter_mut() {
            row.push(d.clone());
            d = d.derivative();
        }
    }
    bareiss(rows)
}
