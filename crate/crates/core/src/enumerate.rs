//! Lattice-point enumeration for systems of integer linear constraints.
//!
//! The scanner walks integer points of a box in lexicographic order and keeps
//! those satisfying `a·x ≥ b` / `a·x = b` constraints. Fourier–Motzkin
//! projections of the constraint rows prune empty subtrees early, and the
//! whole scan runs on `i128` arithmetic whenever the row/box magnitudes
//! certify that no overflow is possible, falling back to big integers
//! otherwise. Results are always exact and lexicographically sorted.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, ToPrimitive, Zero};

use crate::exec;
use crate::linalg::LatticeVector;

/// FM-combined rows are pure pruning aids, so capping their number per level
/// keeps the projection cheap without affecting correctness.
const COMBINED_ROW_CAP: usize = 96;

/// Above this many values the top-level loop is split across threads.
const PARALLEL_SPLIT_MIN: i128 = 16;

#[derive(Clone, Debug, Default)]
pub(crate) struct LinearSystem {
    pub n: usize,
    /// Constraints `a · x ≥ b`.
    pub ineqs: Vec<(Vec<BigInt>, BigInt)>,
    /// Constraints `a · x = b`.
    pub eqs: Vec<(Vec<BigInt>, BigInt)>,
}

impl LinearSystem {
    pub fn new(n: usize) -> Self {
        LinearSystem {
            n,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn ge(&mut self, a: Vec<BigInt>, b: BigInt) {
        debug_assert_eq!(a.len(), self.n);
        self.ineqs.push((a, b));
    }

    pub fn le(&mut self, a: Vec<BigInt>, b: BigInt) {
        self.ge(a.iter().map(|x| -x).collect(), -b);
    }

    pub fn eq(&mut self, a: Vec<BigInt>, b: BigInt) {
        debug_assert_eq!(a.len(), self.n);
        self.eqs.push((a, b));
    }

    /// All integer points `x` with `lo ≤ x ≤ hi` (componentwise) satisfying
    /// the system, in lexicographic order.
    pub fn lattice_points(&self, lo: &[BigInt], hi: &[BigInt]) -> Vec<LatticeVector> {
        assert_eq!(lo.len(), self.n);
        assert_eq!(hi.len(), self.n);
        if self.n == 0 {
            let feasible = self.ineqs.iter().all(|(_, b)| !b.is_positive())
                && self.eqs.iter().all(|(_, b)| b.is_zero());
            return if feasible {
                vec![LatticeVector::new(Vec::new())]
            } else {
                Vec::new()
            };
        }
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return Vec::new();
        }

        // Assemble the full row set: inequalities, both sides of each
        // equation, and the box itself (the box rows sharpen projections).
        let mut rows: Vec<Row> = Vec::new();
        for (a, b) in &self.ineqs {
            rows.push(Row::new(a.clone(), b.clone()));
        }
        for (a, b) in &self.eqs {
            rows.push(Row::new(a.clone(), b.clone()));
            rows.push(Row::new(a.iter().map(|x| -x).collect(), -b.clone()));
        }
        for i in 0..self.n {
            let mut a = vec![BigInt::zero(); self.n];
            a[i] = BigInt::from(1);
            rows.push(Row::new(a.clone(), lo[i].clone()));
            a[i] = BigInt::from(-1);
            rows.push(Row::new(a, -hi[i].clone()));
        }

        let Some(levels) = build_levels(rows, self.n) else {
            return Vec::new();
        };

        match Int128Levels::try_from_levels(&levels, lo, hi) {
            Some(fast) => fast.scan(),
            None => scan_big(&levels, lo, hi),
        }
    }
}

/// One inequality `a · x ≥ b` over a prefix of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    a: Vec<BigInt>,
    b: BigInt,
}

impl Row {
    fn new(a: Vec<BigInt>, b: BigInt) -> Self {
        Row { a, b }
    }

    /// Divides by the gcd of the coefficients; the right-hand side rounds up,
    /// which is valid (and tightening) over integer points.
    fn normalize(mut self) -> Self {
        let mut g = BigInt::zero();
        for c in &self.a {
            g = g.gcd(c);
        }
        if g > BigInt::from(1) {
            for c in self.a.iter_mut() {
                *c = &*c / &g;
            }
            self.b = ceil_div_big(&self.b, &g);
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.a.iter().all(|c| c.is_zero())
    }
}

/// `levels[k]` constrains variables `x_0..x_{k-1}`; `levels[n]` is the full
/// system. Pass-through rows (original constraints whose trailing
/// coefficients vanish) are always kept; FM combinations are capped.
fn build_levels(rows: Vec<Row>, n: usize) -> Option<Vec<Vec<Row>>> {
    let mut levels: Vec<Vec<Row>> = vec![Vec::new(); n + 1];
    levels[n] = rows;
    for k in (1..=n).rev() {
        let var = k - 1;
        let mut lower: Vec<Row> = Vec::new();
        let mut pos: Vec<Row> = Vec::new();
        let mut neg: Vec<Row> = Vec::new();
        for row in &levels[k] {
            if row.a[var].is_zero() {
                let mut trunc = row.clone();
                trunc.a.truncate(var);
                if trunc.is_constant() {
                    if trunc.b.is_positive() {
                        return None; // infeasible before any choice
                    }
                    continue;
                }
                lower.push(trunc);
            } else if row.a[var].is_positive() {
                pos.push(row.clone());
            } else {
                neg.push(row.clone());
            }
        }
        let mandatory = lower.len();
        let mut combined = 0usize;
        'pairs: for p in &pos {
            for q in &neg {
                if combined >= COMBINED_ROW_CAP {
                    break 'pairs;
                }
                let pc = &p.a[var];
                let qc = -&q.a[var];
                let mut a: Vec<BigInt> = (0..var).map(|i| &qc * &p.a[i] + pc * &q.a[i]).collect();
                let b = &qc * &p.b + pc * &q.b;
                let row = Row::new(std::mem::take(&mut a), b).normalize();
                if row.is_constant() {
                    if row.b.is_positive() {
                        return None;
                    }
                    continue;
                }
                if !lower[mandatory..].contains(&row) && !lower[..mandatory].contains(&row) {
                    lower.push(row);
                    combined += 1;
                }
            }
        }
        levels[k - 1] = lower;
    }
    Some(levels)
}

// ---------------------------------------------------------------------------
// i128 fast path
// ---------------------------------------------------------------------------

struct Int128Levels {
    n: usize,
    /// Per level, rows as (coeffs, rhs).
    levels: Vec<Vec<(Vec<i128>, i128)>>,
    lo: Vec<i128>,
    hi: Vec<i128>,
}

impl Int128Levels {
    /// Converts when every row evaluation over the box provably fits i128.
    fn try_from_levels(levels: &[Vec<Row>], lo: &[BigInt], hi: &[BigInt]) -> Option<Self> {
        let n = levels.len() - 1;
        let bound: BigInt = BigInt::from(i128::MAX >> 2);
        let var_mag: Vec<BigInt> = lo
            .iter()
            .zip(hi)
            .map(|(l, h)| l.abs().max(h.abs()))
            .collect();
        let mut out = Vec::with_capacity(levels.len());
        for level in levels {
            let mut conv = Vec::with_capacity(level.len());
            for row in level {
                let mut mag = row.b.abs();
                for (c, m) in row.a.iter().zip(&var_mag) {
                    mag += c.abs() * m;
                }
                if mag > bound {
                    return None;
                }
                let a: Option<Vec<i128>> = row.a.iter().map(|c| c.to_i128()).collect();
                conv.push((a?, row.b.to_i128()?));
            }
            out.push(conv);
        }
        let lo: Option<Vec<i128>> = lo.iter().map(|c| c.to_i128()).collect();
        let hi: Option<Vec<i128>> = hi.iter().map(|c| c.to_i128()).collect();
        Some(Int128Levels {
            n,
            levels: out,
            lo: lo?,
            hi: hi?,
        })
    }

    fn scan(&self) -> Vec<LatticeVector> {
        let Some((first_lo, first_hi)) = self.var_range(0, &[]) else {
            return Vec::new();
        };
        let values: Vec<i128> = range_values(first_lo, first_hi);
        if values.is_empty() {
            return Vec::new();
        }
        let run = |x0: i128| {
            let mut prefix = Vec::with_capacity(self.n);
            prefix.push(x0);
            let mut out = Vec::new();
            self.descend(&mut prefix, &mut out);
            out
        };
        let chunks: Vec<Vec<LatticeVector>> =
            if values.len() as i128 >= PARALLEL_SPLIT_MIN && !exec::sequential_scans() {
                exec::map_ordered(values, run)
            } else {
                values.into_iter().map(run).collect()
            };
        chunks.concat()
    }

    /// Bounds for `x_d` given the chosen prefix, from level `d+1` rows.
    fn var_range(&self, d: usize, prefix: &[i128]) -> Option<(i128, i128)> {
        let mut lo = self.lo[d];
        let mut hi = self.hi[d];
        for (a, b) in &self.levels[d + 1] {
            let c = a[d];
            if c == 0 {
                continue;
            }
            let partial: i128 = a[..d].iter().zip(prefix).map(|(ai, xi)| ai * xi).sum();
            let rest = b - partial;
            if c > 0 {
                lo = lo.max(ceil_div_i128(rest, c));
            } else {
                hi = hi.min(floor_div_i128(rest, c));
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn descend(&self, prefix: &mut Vec<i128>, out: &mut Vec<LatticeVector>) {
        let d = prefix.len();
        if d == self.n {
            debug_assert!(self.levels[self.n]
                .iter()
                .all(|(a, b)| a.iter().zip(prefix.iter()).map(|(x, y)| x * y).sum::<i128>() >= *b));
            out.push(LatticeVector::new(
                prefix.iter().map(|&x| BigInt::from(x)).collect(),
            ));
            return;
        }
        let Some((lo, hi)) = self.var_range(d, prefix) else {
            return;
        };
        let mut x = lo;
        while x <= hi {
            prefix.push(x);
            self.descend(prefix, out);
            prefix.pop();
            x += 1;
        }
    }
}

fn range_values(lo: i128, hi: i128) -> Vec<i128> {
    let mut v = Vec::new();
    let mut x = lo;
    while x <= hi {
        v.push(x);
        x += 1;
    }
    v
}

// ---------------------------------------------------------------------------
// BigInt fallback (rare: triggered only by extreme coordinate magnitudes)
// ---------------------------------------------------------------------------

fn scan_big(levels: &[Vec<Row>], lo: &[BigInt], hi: &[BigInt]) -> Vec<LatticeVector> {
    let n = levels.len() - 1;
    let mut prefix: Vec<BigInt> = Vec::with_capacity(n);
    let mut out = Vec::new();
    descend_big(levels, lo, hi, n, &mut prefix, &mut out);
    out
}

fn descend_big(
    levels: &[Vec<Row>],
    lo: &[BigInt],
    hi: &[BigInt],
    n: usize,
    prefix: &mut Vec<BigInt>,
    out: &mut Vec<LatticeVector>,
) {
    let d = prefix.len();
    if d == n {
        out.push(LatticeVector::new(prefix.clone()));
        return;
    }
    let mut cur_lo = lo[d].clone();
    let mut cur_hi = hi[d].clone();
    for row in &levels[d + 1] {
        let c = &row.a[d];
        if c.is_zero() {
            continue;
        }
        let partial: BigInt = row.a[..d]
            .iter()
            .zip(prefix.iter())
            .map(|(ai, xi)| ai * xi)
            .sum();
        let rest = &row.b - partial;
        if c.is_positive() {
            let bound = ceil_div_big(&rest, c);
            if bound > cur_lo {
                cur_lo = bound;
            }
        } else {
            let bound = floor_div_big(&rest, c);
            if bound < cur_hi {
                cur_hi = bound;
            }
        }
        if cur_lo > cur_hi {
            return;
        }
    }
    let mut x = cur_lo;
    while x <= cur_hi {
        prefix.push(x.clone());
        descend_big(levels, lo, hi, n, prefix, out);
        prefix.pop();
        x += 1;
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn ceil_div_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a >= 0) == (b >= 0)) {
        q + 1
    } else {
        q
    }
}

fn floor_div_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a >= 0) != (b >= 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div_big(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn floor_div_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Integer bounding box of a set of rational points: floor of the minima,
/// ceiling of the maxima.
pub(crate) fn rational_bbox(points: &[Vec<BigRational>]) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(!points.is_empty());
    let n = points[0].len();
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in &points[1..] {
        for i in 0..n {
            if p[i] < lo[i] {
                lo[i] = p[i].clone();
            }
            if p[i] > hi[i] {
                hi[i] = p[i].clone();
            }
        }
    }
    (
        lo.iter().map(|c| c.floor().to_integer()).collect(),
        hi.iter().map(|c| c.ceil().to_integer()).collect(),
    )
}

pub(crate) fn lattice_bbox(points: &[LatticeVector]) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(!points.is_empty());
    let n = points[0].rank();
    let mut lo = points[0].coords().to_vec();
    let mut hi = lo.clone();
    for p in &points[1..] {
        for i in 0..n {
            if p.coords()[i] < lo[i] {
                lo[i] = p.coords()[i].clone();
            }
            if p.coords()[i] > hi[i] {
                hi[i] = p.coords()[i].clone();
            }
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn scans_a_triangle() {
        // x ≥ 0, y ≥ 0, x + y ≤ 3
        let mut sys = LinearSystem::new(2);
        sys.ge(vec![bi(1), bi(0)], bi(0));
        sys.ge(vec![bi(0), bi(1)], bi(0));
        sys.le(vec![bi(1), bi(1)], bi(3));
        let pts = sys.lattice_points(&[bi(-5), bi(-5)], &[bi(5), bi(5)]);
        assert_eq!(pts.len(), 10);
        assert_eq!(pts[0], LatticeVector::from_i64(&[0, 0]));
        assert_eq!(pts[9], LatticeVector::from_i64(&[3, 0]));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted, "output must already be lex sorted");
    }

    #[test]
    fn equations_cut_to_a_line() {
        // x + y = 2 inside the box [0,4]^2
        let mut sys = LinearSystem::new(2);
        sys.eq(vec![bi(1), bi(1)], bi(2));
        let pts = sys.lattice_points(&[bi(0), bi(0)], &[bi(4), bi(4)]);
        let expect: Vec<LatticeVector> = [[0, 2], [1, 1], [2, 0]]
            .iter()
            .map(|c| LatticeVector::from_i64(c))
            .collect();
        assert_eq!(pts, expect);
    }

    #[test]
    fn infeasible_is_empty() {
        let mut sys = LinearSystem::new(2);
        sys.ge(vec![bi(1), bi(0)], bi(10));
        let pts = sys.lattice_points(&[bi(0), bi(0)], &[bi(3), bi(3)]);
        assert!(pts.is_empty());
    }

    #[test]
    fn matches_plain_box_filter() {
        // Random-ish skewed system checked against the naive filter.
        let rows: Vec<(Vec<BigInt>, BigInt)> = vec![
            (vec![bi(2), bi(-1), bi(0)], bi(-3)),
            (vec![bi(-1), bi(3), bi(1)], bi(0)),
            (vec![bi(1), bi(1), bi(-2)], bi(-4)),
        ];
        let mut sys = LinearSystem::new(3);
        for (a, b) in &rows {
            sys.ge(a.clone(), b.clone());
        }
        let lo = [bi(-4), bi(-4), bi(-4)];
        let hi = [bi(4), bi(4), bi(4)];
        let got = sys.lattice_points(&lo, &hi);

        let mut expect = Vec::new();
        for x in -4..=4i64 {
            for y in -4..=4i64 {
                for z in -4..=4i64 {
                    let p = [x, y, z];
                    let ok = rows.iter().all(|(a, b)| {
                        let dot: BigInt = a
                            .iter()
                            .zip(p.iter())
                            .map(|(ai, &xi)| ai * BigInt::from(xi))
                            .sum();
                        dot >= *b
                    });
                    if ok {
                        expect.push(LatticeVector::from_i64(&p));
                    }
                }
            }
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn big_fallback_agrees() {
        // Force the BigInt path with an enormous bound on one row.
        let huge = BigInt::from(i128::MAX) * bi(4);
        let mut sys = LinearSystem::new(2);
        sys.ge(vec![bi(1), bi(0)], bi(0));
        sys.ge(vec![bi(0), bi(1)], bi(0));
        sys.le(vec![bi(1), bi(1)], bi(3));
        sys.ge(vec![huge.clone(), BigInt::zero()], -huge.clone());
        let pts = sys.lattice_points(&[bi(-5), bi(-5)], &[bi(5), bi(5)]);
        assert_eq!(pts.len(), 10);
    }
}
