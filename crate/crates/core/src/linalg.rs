//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Determinants use Bareiss elimination over `i128`; solves and inverses run
//! Gauss-Jordan over `Ratio<i128>` and narrow the result to [`Q`].

use num_rational::Ratio;
use num_traits::{One, Zero};

/// Rational scalar used throughout the crate.
pub type Q = Ratio<i64>;

type W = Ratio<i128>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn narrow(x: W) -> Q {
    let n = i64::try_from(*x.numer()).expect("rational numerator overflow");
    let d = i64::try_from(*x.denom()).expect("rational denominator overflow");
    Q::new(n, d)
}

/// `"p/q"` rendering, integers without a denominator.
pub fn q_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Q::new(n, d))
        }
        None => s.parse().ok().map(Q::from_integer),
    }
}

/// Determinant by fraction-free elimination. The empty matrix has determinant 1.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .expect("determinant overflow");
                a[i][j] = v / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
}

fn to_w(m: &[Vec<i64>]) -> Vec<Vec<W>> {
    m.iter().map(|r| r.iter().map(|&x| W::from_integer(x as i128)).collect()).collect()
}

fn widen(x: &Q) -> W {
    W::new(*x.numer() as i128, *x.denom() as i128)
}

/// Reduces `[m | rhs]` in place; returns false when `m` is singular.
fn gauss_jordan(a: &mut [Vec<W>], rhs: &mut [Vec<W>]) -> bool {
    let n = a.len();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return false;
        };
        a.swap(col, piv);
        rhs.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for x in rhs[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col];
            for c in 0..n {
                let t = a[col][c] * f;
                a[r][c] -= t;
            }
            for c in 0..rhs[r].len() {
                let t = rhs[col][c] * f;
                rhs[r][c] -= t;
            }
        }
    }
    true
}

/// Solves `m x = b` exactly. Returns `None` when `m` is singular.
pub fn solve(m: &[Vec<i64>], b: &[Q]) -> Option<Vec<Q>> {
    let mut a = to_w(m);
    let mut rhs: Vec<Vec<W>> = b.iter().map(|x| vec![widen(x)]).collect();
    if !gauss_jordan(&mut a, &mut rhs) {
        return None;
    }
    Some(rhs.into_iter().map(|r| narrow(r[0])).collect())
}

/// Exact inverse, `None` when singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a = to_w(m);
    let mut rhs: Vec<Vec<W>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { W::one() } else { W::zero() }).collect())
        .collect();
    if !gauss_jordan(&mut a, &mut rhs) {
        return None;
    }
    Some(rhs.into_iter().map(|r| r.into_iter().map(narrow).collect()).collect())
}

/// Leading principal minors of a rational symmetric matrix, used for
/// definiteness tests.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<i64> {
    (1..=m.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            det(&sub)
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        if m.is_empty() {
            return 1;
        }
        let n = m.len();
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let ms = vec![
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![vec![0, 3, 1], vec![2, 0, 5], vec![1, 1, 0]],
            vec![vec![2, -3], vec![-3, 2]],
            vec![vec![1, 2], vec![2, 4]],
        ];
        for m in ms {
            assert_eq!(det(&m), cofactor_det(&m));
        }
        assert_eq!(det(&[]), 1);
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]];
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Q = (0..3).map(|k| q(m[i][k]) * inv[k][j]).sum();
                assert_eq!(s, if i == j { q(1) } else { q(0) });
            }
        }
        assert!(inverse(&[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn solve_a1() {
        assert_eq!(solve(&[vec![2]], &[q(1)]).unwrap(), vec![Q::new(1, 2)]);
    }
}
