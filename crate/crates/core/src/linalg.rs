//! Exact integer and rational linear algebra.
//!
//! Everything downstream (cone duality, Hilbert bases, triangulations) relies
//! on this module being exact: all scalars are arbitrary-precision integers or
//! rationals, and the normal forms (Hermite, Smith) are deterministic so that
//! derived objects are reproducible across runs.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

macro_rules! fmt_tuple_like {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    };
}

/// A point of the lattice `N = Z^n`, stored as exact integers.
///
/// Equality and ordering are coordinate-wise; the lexicographic order is the
/// canonical output order used throughout the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: vec![BigInt::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Exact integer pairing with another lattice vector.
    pub fn dot(&self, other: &Self) -> BigInt {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Divides out the gcd of the coordinates, preserving direction.
    ///
    /// The result spans the same ray and has coordinate gcd 1. The zero
    /// vector has no associated ray and is rejected.
    pub fn primitive(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = coords_gcd(&self.coords);
        Ok(LatticeVector {
            coords: self.coords.iter().map(|c| c / &g).collect(),
        })
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }
}

impl fmt::Debug for LatticeVector {
    fmt_tuple_like!();
}

impl fmt::Display for LatticeVector {
    fmt_tuple_like!();
}

/// A functional on `N`, i.e. an element of `M ⊗ Q`, with exact rational
/// coordinates. Facet normals are stored in primitive integer form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualVector {
    coords: Vec<BigRational>,
}

impl DualVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        DualVector { coords }
    }

    pub fn from_integers(coords: Vec<BigInt>) -> Self {
        DualVector {
            coords: coords
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
        }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        DualVector::from_integers(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Exact rational evaluation `⟨m, v⟩`.
    pub fn eval(&self, v: &LatticeVector) -> BigRational {
        debug_assert_eq!(self.rank(), v.rank());
        self.coords
            .iter()
            .zip(v.coords())
            .map(|(a, b)| a * BigRational::from_integer(b.clone()))
            .sum()
    }

    pub fn eval_rational(&self, v: &[BigRational]) -> BigRational {
        debug_assert_eq!(self.rank(), v.len());
        self.coords.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// The integer coordinates, when all denominators are 1.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Scales to the primitive integer vector spanning the same ray in `M`.
    pub fn primitive_integer(&self) -> Result<DualVector> {
        Ok(DualVector::from_integers(primitive_integer_form(
            &self.coords,
        )?))
    }
}

impl fmt::Debug for DualVector {
    fmt_tuple_like!();
}

impl fmt::Display for DualVector {
    fmt_tuple_like!();
}

/// Clears denominators and divides by the gcd, preserving direction.
pub(crate) fn primitive_integer_form(coords: &[BigRational]) -> Result<Vec<BigInt>> {
    if coords.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let mut lcm = BigInt::one();
    for c in coords {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = coords_gcd(&ints);
    Ok(ints.iter().map(|c| c / &g).collect())
}

fn coords_gcd(coords: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in coords {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// A dense matrix of arbitrary-precision integers, stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_rows(data: Vec<Vec<BigInt>>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyInput);
        }
        let cols = data[0].len();
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::RankMismatch {
                expected: cols,
                got: data.iter().map(|r| r.len()).find(|&l| l != cols).unwrap(),
            });
        }
        Ok(IntMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_row_vectors(rows: &[LatticeVector]) -> Result<Self> {
        IntMatrix::from_rows(rows.iter().map(|v| v.coords().to_vec()).collect())
    }

    pub fn from_columns(cols: &[LatticeVector]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = cols[0].rank();
        let mut data = vec![vec![BigInt::zero(); cols.len()]; n];
        for (j, c) in cols.iter().enumerate() {
            if c.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    got: c.rank(),
                });
            }
            for (i, x) in c.coords().iter().enumerate() {
                data[i][j] = x.clone();
            }
        }
        IntMatrix::from_rows(data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in data.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = vec![vec![BigInt::zero(); self.rows]; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j][i] = self.data[i][j].clone();
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut data = vec![vec![BigInt::zero(); other.cols]; self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other.data[k][j];
                    data[i][j] += prod;
                }
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(sign * m[n - 1][n - 1].clone())
    }

    /// Row Hermite normal form.
    ///
    /// Returns `(H, U)` with `H = U · A`, `U` unimodular and `H` in row-style
    /// Hermite normal form: row echelon, positive pivots, entries above each
    /// pivot reduced into `[0, pivot)`. `H` is the canonical form of the row
    /// lattice; pivoting always selects the leftmost column and, within it,
    /// the smallest nonzero entry (lowest row on ties) so runs are
    /// reproducible.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.data.clone();
        let mut u = IntMatrix::identity(self.rows).data;
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            loop {
                // Smallest nonzero entry in this column at or below pivot_row;
                // ties broken toward the bottom row.
                let mut best: Option<usize> = None;
                for i in pivot_row..self.rows {
                    if h[i][col].is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h[i][col].abs() <= h[b][col].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
                let Some(b) = best else { break };
                h.swap(pivot_row, b);
                u.swap(pivot_row, b);
                let mut done = true;
                for i in pivot_row + 1..self.rows {
                    if h[i][col].is_zero() {
                        continue;
                    }
                    let q = div_floor_bigint(&h[i][col], &h[pivot_row][col]);
                    row_sub_mul(&mut h, i, pivot_row, &q);
                    row_sub_mul(&mut u, i, pivot_row, &q);
                    if !h[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[pivot_row][col].is_zero() {
                continue;
            }
            if h[pivot_row][col].is_negative() {
                negate_row(&mut h, pivot_row);
                negate_row(&mut u, pivot_row);
            }
            for i in 0..pivot_row {
                let q = div_floor_bigint(&h[i][col], &h[pivot_row][col]);
                if !q.is_zero() {
                    row_sub_mul(&mut h, i, pivot_row, &q);
                    row_sub_mul(&mut u, i, pivot_row, &q);
                }
            }
            pivot_row += 1;
        }
        let h = IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: h,
        };
        let u = IntMatrix {
            rows: self.rows,
            cols: self.rows,
            data: u,
        };
        #[cfg(debug_assertions)]
        {
            assert_eq!(u.mul(self), h, "HNF did not satisfy U*A = H");
            let du = u.det().expect("U is square");
            assert!(du.abs().is_one(), "HNF transform is not unimodular");
        }
        (h, u)
    }

    /// Rank over `Q`, read off the Hermite normal form.
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        (0..h.rows)
            .filter(|&i| h.data[i].iter().any(|x| !x.is_zero()))
            .count()
    }

    /// The nonzero elementary divisors `d_1 | d_2 | …` of the matrix.
    pub fn snf_divisors(&self) -> Vec<BigInt> {
        let mut m = self.data.clone();
        let rows = self.rows;
        let cols = self.cols;
        let mut divisors = Vec::new();
        let mut t = 0;
        while t < rows && t < cols {
            // Move a nonzero entry of minimal absolute value to (t, t).
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().take(rows).skip(t) {
                for (j, x) in row.iter().enumerate().take(cols).skip(t) {
                    if x.is_zero() {
                        continue;
                    }
                    pivot = match pivot {
                        None => Some((i, j)),
                        Some((pi, pj)) => {
                            if x.abs() < m[pi][pj].abs() {
                                Some((i, j))
                            } else {
                                Some((pi, pj))
                            }
                        }
                    };
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            col_swap(&mut m, t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if m[i][t].is_zero() {
                        continue;
                    }
                    let q = div_round_bigint(&m[i][t], &m[t][t]);
                    row_sub_mul(&mut m, i, t, &q);
                    if !m[i][t].is_zero() {
                        // Remainder is smaller than the pivot: promote it.
                        m.swap(t, i);
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if m[t][j].is_zero() {
                        continue;
                    }
                    let q = div_round_bigint(&m[t][j], &m[t][t]);
                    col_sub_mul(&mut m, j, t, &q);
                    if !m[t][j].is_zero() {
                        col_swap(&mut m, t, j);
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            // Divisibility condition: the pivot must divide the rest of the
            // block; when it does not, fold the offending row in and redo.
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        for j2 in t..cols {
                            let add = m[i][j2].clone();
                            m[t][j2] += add;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                continue;
            }
            divisors.push(m[t][t].abs());
            t += 1;
        }
        #[cfg(debug_assertions)]
        for w in divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "SNF divisors must form a chain");
        }
        divisors
    }

    /// Exact rational solution of `A·x = b`, or `None` when the system is
    /// inconsistent. Free variables are pinned to zero, so the answer is
    /// deterministic even for rank-deficient systems.
    pub fn solve_rational(&self, b: &LatticeVector) -> Option<Vec<BigRational>> {
        let rhs: Vec<BigRational> = b.to_rational();
        self.solve_rational_rhs(&rhs)
    }

    pub fn solve_rational_rhs(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(self.rows, b.len(), "right-hand side length mismatch");
        let mut m: Vec<Vec<BigRational>> = self
            .data
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r: Vec<BigRational> = row
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                r.push(bi.clone());
                r
            })
            .collect();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].clone();
            for x in m[r].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..=cols {
                        let sub = &f * &m[r][j];
                        m[i][j] = &m[i][j] - sub;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        // Inconsistent when a zero row has nonzero right-hand side.
        for row in m.iter().skip(r) {
            if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![BigRational::zero(); cols];
        for (i, &c) in pivot_cols.iter().enumerate() {
            x[c] = m[i][cols].clone();
        }
        Some(x)
    }

    /// A canonical basis of the right integer kernel `{x : A·x = 0}`.
    ///
    /// The kernel of an integer matrix is a saturated sublattice, so the rows
    /// returned extend to a basis of `Z^cols`. Canonicalized through HNF.
    pub fn kernel_basis(&self) -> Vec<LatticeVector> {
        let (h, u) = self.transpose().hnf();
        let mut rows = Vec::new();
        for i in 0..h.rows() {
            if h.data[i].iter().all(|x| x.is_zero()) {
                rows.push(u.data[i].clone());
            }
        }
        if rows.is_empty() {
            return Vec::new();
        }
        let (canon, _) = IntMatrix::from_rows(rows).expect("nonempty").hnf();
        (0..canon.rows())
            .filter(|&i| canon.data[i].iter().any(|x| !x.is_zero()))
            .map(|i| LatticeVector::new(canon.data[i].clone()))
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(
                f,
                "  [{}]",
                row.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}

/// Basis of the saturated sublattice `span_Q(vectors) ∩ Z^n`.
///
/// Derived from the Smith decomposition: the kernel of the kernel of the
/// span is saturated. Returns an empty list for an empty span.
pub fn saturation_basis(vectors: &[LatticeVector], rank: usize) -> Vec<LatticeVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_row_vectors(vectors).expect("nonempty");
    let ann = m.kernel_basis();
    if ann.is_empty() {
        // Full span: the standard basis works and is canonical.
        return (0..rank)
            .map(|i| {
                let mut c = vec![BigInt::zero(); rank];
                c[i] = BigInt::one();
                LatticeVector::new(c)
            })
            .collect();
    }
    IntMatrix::from_row_vectors(&ann)
        .expect("nonempty")
        .kernel_basis()
}

fn row_sub_mul(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m[dst].len() {
        let sub = q * &m[src][j];
        m[dst][j] -= sub;
    }
}

fn col_sub_mul(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let sub = q * &row[src];
        row[dst] -= sub;
    }
}

fn col_swap(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_row(m: &mut [Vec<BigInt>], i: usize) {
    for x in m[i].iter_mut() {
        *x = -x.clone();
    }
}

fn div_floor_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Division rounded to nearest, used by the Smith reduction to shrink
/// remainders as fast as possible.
fn div_round_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = a.div_mod_floor(b);
    if &r * &two >= b.abs() {
        q + BigInt::one()
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn primitive_divides_by_gcd() {
        assert_eq!(lv(&[2, 4, 6]).primitive().unwrap(), lv(&[1, 2, 3]));
        assert_eq!(lv(&[1, 1, 2]).primitive().unwrap(), lv(&[1, 1, 2]));
        assert_eq!(lv(&[0, -6]).primitive().unwrap(), lv(&[0, -1]));
        assert_eq!(lv(&[0, 0]).primitive(), Err(Error::ZeroVector));
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = mat(&[&[1, 0], &[0, 1]]).hnf();
        assert_eq!(h, mat(&[&[1, 0], &[0, 1]]));
        assert_eq!(u, IntMatrix::identity(2));

        let a = mat(&[&[1, 0, 0], &[1, 1, 2]]);
        let (h, u) = a.hnf();
        assert_eq!(h, mat(&[&[1, 0, 0], &[0, 1, 2]]));
        assert_eq!(u.mul(&a), h);

        let a = mat(&[&[2, 0], &[0, 2]]);
        let (h, u) = a.hnf();
        assert_eq!(h, a);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn snf_divisor_chains() {
        assert_eq!(
            mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).snf_divisors(),
            vec![BigInt::one(), BigInt::one(), BigInt::one()]
        );
        assert_eq!(
            mat(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]).snf_divisors(),
            vec![BigInt::one(), BigInt::one(), BigInt::from(2)]
        );
        assert_eq!(
            mat(&[&[1, 0, 0], &[1, 1, 2]]).snf_divisors(),
            vec![BigInt::one(), BigInt::one()]
        );
    }

    #[test]
    fn snf_product_matches_det() {
        let a = mat(&[&[4, 2, 1], &[0, 3, 5], &[2, 2, 2]]);
        let det = a.det().unwrap().abs();
        let prod: BigInt = a.snf_divisors().iter().product();
        assert_eq!(det, prod);
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(3).det().unwrap(), BigInt::one());
        assert_eq!(
            mat(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]).det().unwrap(),
            BigInt::from(2)
        );
        assert_eq!(mat(&[&[1, 0], &[2, 5]]).det().unwrap(), BigInt::from(5));
        assert!(mat(&[&[1, 0, 0], &[1, 1, 2]]).det().is_err());
    }

    #[test]
    fn solve_rational_examples() {
        // Columns (1,0,0),(0,1,0),(1,1,2); b = (1,1,1).
        let a = IntMatrix::from_columns(&[lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[1, 1, 2])]).unwrap();
        let x = a.solve_rational(&lv(&[1, 1, 1])).unwrap();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(x, vec![half.clone(), half.clone(), half]);

        let id = IntMatrix::identity(3);
        assert_eq!(
            id.solve_rational(&lv(&[7, -2, 9])).unwrap(),
            lv(&[7, -2, 9]).to_rational()
        );

        let a = IntMatrix::from_columns(&[lv(&[1, 0]), lv(&[1, 2])]).unwrap();
        let x = a.solve_rational(&lv(&[0, 1])).unwrap();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(x, vec![-half.clone(), half]);

        // Inconsistent system.
        let a = IntMatrix::from_columns(&[lv(&[1, 0, 0])]).unwrap();
        assert!(a.solve_rational(&lv(&[0, 1, 0])).is_none());
    }

    #[test]
    fn solve_resubstitutes() {
        let a = mat(&[&[3, 1, -2], &[0, 5, 4]]);
        let b = lv(&[7, 9]);
        let x = a.solve_rational(&b).unwrap();
        for i in 0..a.rows() {
            let got: BigRational = (0..a.cols())
                .map(|j| BigRational::from_integer(a.entry(i, j).clone()) * &x[j])
                .sum();
            assert_eq!(got, BigRational::from_integer(b.coords()[i].clone()));
        }
    }

    #[test]
    fn kernel_and_saturation() {
        let a = mat(&[&[1, 1, 2]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul(&IntMatrix::from_columns(&[v.clone()]).unwrap()).data[0][0].is_zero());
        }

        // Saturation of the span of (2,0,0) and (0,2,2) contains (0,1,1).
        let sat = saturation_basis(&[lv(&[2, 0, 0]), lv(&[0, 2, 2])], 3);
        assert_eq!(sat.len(), 2);
        let m = IntMatrix::from_row_vectors(&sat).unwrap();
        // (0,1,1) must be an integer combination of the saturated basis.
        let x = m.transpose().solve_rational(&lv(&[0, 1, 1])).unwrap();
        assert!(x.iter().all(|c| c.is_integer()));
    }

    #[test]
    fn dual_vector_pairing_is_exact() {
        let m = DualVector::new(vec![
            BigRational::one(),
            BigRational::one(),
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
        ]);
        let v = lv(&[1, 1, 1]);
        assert_eq!(
            m.eval(&v),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        let prim = m.primitive_integer().unwrap();
        assert_eq!(prim, DualVector::from_i64(&[2, 2, -1]));
    }
}
