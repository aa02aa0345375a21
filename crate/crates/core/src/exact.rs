//! Exact linear algebra over the rationals with `i128` numerators and
//! denominators. Every operation is checked and surfaces
//! [`Error::Overflow`] instead of wrapping.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::Overflow);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g.max(1), den / g.max(1));
        if d < 0 {
            n = n.checked_neg().ok_or(Error::Overflow)?;
            d = d.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Rational { num: n, den: d })
    }

    pub const fn int(v: i128) -> Self {
        Rational { num: v, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn signum(&self) -> i128 {
        self.num.signum()
    }

    pub fn add(self, o: Rational) -> Result<Rational> {
        let g = self.den.gcd(&o.den);
        let l = (self.den / g).checked_mul(o.den).ok_or(Error::Overflow)?;
        let a = self.num.checked_mul(l / self.den).ok_or(Error::Overflow)?;
        let b = o.num.checked_mul(l / o.den).ok_or(Error::Overflow)?;
        Rational::new(a.checked_add(b).ok_or(Error::Overflow)?, l)
    }

    pub fn neg(self) -> Result<Rational> {
        Ok(Rational {
            num: self.num.checked_neg().ok_or(Error::Overflow)?,
            den: self.den,
        })
    }

    pub fn sub(self, o: Rational) -> Result<Rational> {
        self.add(o.neg()?)
    }

    pub fn mul(self, o: Rational) -> Result<Rational> {
        let g1 = self.num.gcd(&o.den).max(1);
        let g2 = o.num.gcd(&self.den).max(1);
        let n = (self.num / g1).checked_mul(o.num / g2).ok_or(Error::Overflow)?;
        let d = (self.den / g2).checked_mul(o.den / g1).ok_or(Error::Overflow)?;
        Rational::new(n, d)
    }

    pub fn div(self, o: Rational) -> Result<Rational> {
        if o.num == 0 {
            return Err(Error::Overflow);
        }
        self.mul(Rational::new(o.den, o.num)?)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive, so cross-multiplying preserves order;
        // fall back to the sign of the difference if that would overflow
        match (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => {
                let diff = self.sub(*other).expect("rational comparison overflow");
                diff.num.cmp(&0)
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::int(v as i128)
    }
}

/// Reduced row echelon form together with the pivot column of each nonzero
/// row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

fn to_rational(m: &[Vec<i128>]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|r| r.iter().map(|&v| Rational::int(v)).collect())
        .collect()
}

/// Gauss-Jordan elimination over the rationals.
pub fn rref(a: Vec<Vec<Rational>>, cols: usize) -> Result<Rref> {
    rref_pivoting(a, cols, cols)
}

/// Gauss-Jordan elimination that only looks for pivots among the first
/// `pivot_cols` columns.
fn rref_pivoting(mut a: Vec<Vec<Rational>>, pivot_cols: usize, cols: usize) -> Result<Rref> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..pivot_cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Rational::ONE.div(a[row][col])?;
        for v in a[row].iter_mut() {
            *v = v.mul(inv)?;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col];
                for j in 0..cols {
                    let t = f.mul(a[row][j])?;
                    a[i][j] = a[i][j].sub(t)?;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // leftover rows only matter when some columns were never eligible
    if pivot_cols == cols {
        a.truncate(row);
    }
    Ok(Rref {
        rows: a,
        pivots,
        cols,
    })
}

/// Rank of an integer matrix given by rows.
pub fn rank(m: &[Vec<i128>]) -> Result<usize> {
    let Some(first) = m.first() else {
        return Ok(0);
    };
    Ok(rref(to_rational(m), first.len())?.pivots.len())
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].checked_mul(a[k][k]).ok_or(Error::Overflow)?;
                let rhs = a[i][k].checked_mul(a[k][j]).ok_or(Error::Overflow)?;
                a[i][j] = lhs.checked_sub(rhs).ok_or(Error::Overflow)? / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign).ok_or(Error::Overflow)
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive(v: &[Rational]) -> Result<Vec<i128>> {
    let mut l = 1i128;
    for x in v {
        l = l.lcm(&x.denom());
        if l == 0 {
            return Err(Error::Overflow);
        }
    }
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        out.push(x.numer().checked_mul(l / x.denom()).ok_or(Error::Overflow)?);
    }
    let g = out.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in out.iter_mut() {
            *x /= g;
        }
    }
    Ok(out)
}

/// A basis of primitive integer vectors for the right kernel `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<i128>], cols: usize) -> Result<Vec<Vec<i128>>> {
    let r = rref(to_rational(m), cols)?;
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !r.pivots.contains(c)) {
        let mut v = vec![Rational::ZERO; cols];
        v[free] = Rational::ONE;
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            v[p] = row[free].neg()?;
        }
        basis.push(primitive(&v)?);
    }
    Ok(basis)
}

/// Solves `target = sum_k x_k basis[k]`. Returns `None` when the target is
/// outside the span; errors with [`Error::NotIndependent`] when the basis is
/// linearly dependent.
pub fn solve_in_span(basis: &[Vec<i128>], target: &[i128]) -> Result<Option<Vec<Rational>>> {
    let d = basis.len();
    let dim = target.len();
    let aug: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            basis
                .iter()
                .map(|b| Rational::int(b[i]))
                .chain(std::iter::once(Rational::int(target[i])))
                .collect()
        })
        .collect();
    let r = rref(aug, d + 1)?;
    if r.pivots.contains(&d) {
        return Ok(None);
    }
    if r.pivots.len() < d {
        return Err(Error::NotIndependent);
    }
    Ok(Some(r.rows.iter().map(|row| row[d]).collect()))
}

/// Solves `target = sum_k x_k basis[k]` for several targets with a single
/// elimination. Errors with [`Error::NotIndependent`] when the basis is
/// linearly dependent.
pub fn solve_many(basis: &[Vec<i128>], targets: &[Vec<i128>]) -> Result<Vec<Option<Vec<Rational>>>> {
    let d = basis.len();
    let Some(dim) = basis.first().or(targets.first()).map(Vec::len) else {
        return Ok(vec![None; targets.len()]);
    };
    let aug: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            basis
                .iter()
                .chain(targets)
                .map(|v| Rational::int(v[i]))
                .collect()
        })
        .collect();
    let r = rref_pivoting(aug, d, d + targets.len())?;
    if r.pivots.len() < d {
        return Err(Error::NotIndependent);
    }
    Ok((0..targets.len())
        .map(|t| {
            let col = d + t;
            // rows below the pivots must vanish for the target to be in the span
            let consistent = r.rows[d..].iter().all(|row| row[col].is_zero());
            consistent.then(|| r.rows[..d].iter().map(|row| row[col]).collect())
        })
        .collect())
}

/// Differences `p_k - p_0` of a point list.
pub fn differences(points: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let Some(p0) = points.first() else {
        return Ok(Vec::new());
    };
    points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(p0)
                .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
                .collect()
        })
        .collect()
}

/// Dimension of the affine hull; `-1` for the empty set.
pub fn affine_dimension(points: &[Vec<i128>]) -> Result<i64> {
    if points.is_empty() {
        return Ok(-1);
    }
    Ok(rank(&differences(points)?)? as i64)
}

/// Coordinates onto which projection is injective on the affine hull: the
/// pivot columns of the difference matrix.
pub fn independent_coordinates(points: &[Vec<i128>]) -> Result<Vec<usize>> {
    let diffs = differences(points)?;
    let Some(first) = diffs.first() else {
        return Ok(Vec::new());
    };
    Ok(rref(to_rational(&diffs), first.len())?.pivots)
}

/// Index of the lattice spanned by the given linearly independent integer
/// vectors inside its saturation, i.e. the gcd of the maximal minors.
/// Computed by unimodular column reduction to a lower triangular block.
pub fn lattice_index(vectors: &[Vec<i128>]) -> Result<i128> {
    let d = vectors.len();
    if d == 0 {
        return Ok(1);
    }
    let cols = vectors[0].len();
    let mut a = vectors.to_vec();
    for k in 0..d {
        // Euclid on row k across columns k.. until a single nonzero remains
        loop {
            let nz: Vec<usize> = (k..cols).filter(|&j| a[k][j] != 0).collect();
            if nz.is_empty() {
                return Err(Error::NotIndependent);
            }
            let p = *nz.iter().min_by_key(|&&j| a[k][j].unsigned_abs()).unwrap();
            for row in a.iter_mut() {
                row.swap(k, p);
            }
            if nz.len() == 1 {
                break;
            }
            for j in k + 1..cols {
                if a[k][j] != 0 {
                    let q = a[k][j] / a[k][k];
                    for row in a.iter_mut() {
                        let t = q.checked_mul(row[k]).ok_or(Error::Overflow)?;
                        row[j] = row[j].checked_sub(t).ok_or(Error::Overflow)?;
                    }
                }
            }
        }
    }
    let mut index = 1i128;
    for (k, row) in a.iter().enumerate() {
        index = index.checked_mul(row[k]).ok_or(Error::Overflow)?;
    }
    Ok(index.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(1, -2), q(-1, 2));
        assert_eq!(q(1, 2).add(q(1, 3)).unwrap(), q(5, 6));
        assert_eq!(q(1, 2).mul(q(2, 3)).unwrap(), q(1, 3));
        assert_eq!(q(1, 2).div(q(1, 4)).unwrap(), Rational::int(2));
        assert!(q(1, 3) < q(1, 2));
        assert!(q(-1, 2) < Rational::ZERO);
        assert_eq!(Rational::int(i128::MAX).add(Rational::ONE), Err(Error::Overflow));
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(det(&[vec![2, 0], vec![0, 3]]).unwrap(), 6);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]).unwrap(), 0);
        assert_eq!(
            det(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap(),
            4
        );
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]).unwrap(), 1);
        assert_eq!(rank(&[]).unwrap(), 0);
    }

    #[test]
    fn kernel_vectors() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let k = nullspace(&m, 3).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0] + v[1], 0);
        assert_eq!(v[1] + v[2], 0);
    }

    #[test]
    fn span_solving() {
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let x = solve_in_span(&basis, &[2, 3, 5]).unwrap().unwrap();
        assert_eq!(x, vec![Rational::int(2), Rational::int(3)]);
        assert_eq!(solve_in_span(&basis, &[1, 1, 0]).unwrap(), None);
        let dep = vec![vec![1, 0], vec![2, 0]];
        assert_eq!(solve_in_span(&dep, &[1, 0]), Err(Error::NotIndependent));
    }

    #[test]
    fn lattice_indices() {
        assert_eq!(lattice_index(&[vec![2]]).unwrap(), 2);
        assert_eq!(lattice_index(&[vec![2, 3]]).unwrap(), 1);
        assert_eq!(lattice_index(&[vec![1, 0], vec![0, 2]]).unwrap(), 2);
        assert_eq!(lattice_index(&[vec![1, 1], vec![2, 2]]), Err(Error::NotIndependent));
        // root differences are unimodular
        assert_eq!(
            lattice_index(&[vec![1, -1, 0, 0], vec![1, 0, -1, 0], vec![0, 1, 0, -1]]).unwrap(),
            1
        );
    }

    /// gcd of all maximal minors, computed by brute force.
    fn minor_gcd(v: &[Vec<i128>]) -> i128 {
        let d = v.len();
        let cols = v[0].len();
        let mut g = 0i128;
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let sub: Vec<Vec<i128>> = v.iter().map(|r| idx.iter().map(|&j| r[j]).collect()).collect();
            g = g.gcd(&det(&sub).unwrap());
            // next combination
            let mut i = d;
            loop {
                if i == 0 {
                    return g;
                }
                i -= 1;
                if idx[i] < cols - d + i {
                    idx[i] += 1;
                    for k in i + 1..d {
                        idx[k] = idx[k - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn lattice_index_is_minor_gcd(rows in proptest::collection::vec(proptest::collection::vec(-3i128..=3, 4), 1..=3)) {
            let g = minor_gcd(&rows);
            match lattice_index(&rows) {
                Ok(idx) => prop_assert_eq!(idx, g),
                Err(e) => {
                    prop_assert_eq!(e, Error::NotIndependent);
                    prop_assert_eq!(g, 0);
                }
            }
        }

        #[test]
        fn det_matches_rank(m in proptest::collection::vec(proptest::collection::vec(-4i128..=4, 3), 3)) {
            let d = det(&m).unwrap();
            prop_assert_eq!(d == 0, rank(&m).unwrap() < 3);
        }

        #[test]
        fn batch_solve_matches_single(
            basis in proptest::collection::vec(proptest::collection::vec(-3i128..=3, 4), 1..=3),
            targets in proptest::collection::vec(proptest::collection::vec(-3i128..=3, 4), 0..=4),
        ) {
            match solve_many(&basis, &targets) {
                Ok(all) => {
                    for (t, got) in targets.iter().zip(all) {
                        prop_assert_eq!(got, solve_in_span(&basis, t).unwrap());
                    }
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::NotIndependent);
                    prop_assert!(rank(&basis).unwrap() < basis.len());
                }
            }
        }

        #[test]
        fn kernel_is_annihilated(m in proptest::collection::vec(proptest::collection::vec(-3i128..=3, 4), 1..=3)) {
            let k = nullspace(&m, 4).unwrap();
            prop_assert_eq!(k.len() + rank(&m).unwrap(), 4);
            for v in &k {
                for row in &m {
                    let s: i128 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert_eq!(s, 0);
                }
            }
        }
    }
}
