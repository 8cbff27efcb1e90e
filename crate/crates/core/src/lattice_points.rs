//! Lattice point enumeration: polytope points, fundamental boxes of
//! simplicial cones, triangulation by rays, and Hilbert bases.
//!
//! Enumeration always runs in the original lattice coordinates (restricted
//! to the saturated span where the object is lower-dimensional) so no
//! rational arithmetic appears in the inner loops.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::enumerate::LinearSystem;
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{saturation_basis, IntMatrix, LatticeVector};
use crate::polyhedra::{rational_hull_system, Cone, Face, RationalPoint};

/// All lattice points of `conv(vertices)`, lexicographically sorted.
///
/// The hull inequalities are computed exactly from the vertices
/// (equations included when the polytope is not full-dimensional), then the
/// integer bounding box of the vertex set is scanned and filtered.
pub fn polytope_points(vertices: &[RationalPoint]) -> Result<Vec<LatticeVector>> {
    let (sys, lo, hi) = rational_hull_system(vertices)?;
    Ok(sys.lattice_points(&lo, &hi))
}

/// The fundamental box `{Σ λ_i u_i : λ_i ∈ I}` of independent generators,
/// with `I = [0,1]` or `(0,1]` per the lower-end flag.
#[derive(Clone, Debug)]
pub struct HalfOpenBox {
    base_rays: Vec<LatticeVector>,
    include_lower: bool,
}

impl HalfOpenBox {
    /// Closed box `λ ∈ [0,1]^k`.
    pub fn closed(base_rays: Vec<LatticeVector>) -> Result<Self> {
        Self::new(base_rays, true)
    }

    /// Half-open box `λ ∈ (0,1]^k`.
    pub fn half_open(base_rays: Vec<LatticeVector>) -> Result<Self> {
        Self::new(base_rays, false)
    }

    fn new(base_rays: Vec<LatticeVector>, include_lower: bool) -> Result<Self> {
        if base_rays.is_empty() {
            return Err(Error::EmptyInput);
        }
        let rank = IntMatrix::from_row_vectors(&base_rays)?.rank();
        if rank != base_rays.len() {
            return Err(Error::Invariant(
                "fundamental box generators must be linearly independent".into(),
            ));
        }
        Ok(HalfOpenBox {
            base_rays,
            include_lower,
        })
    }

    pub fn base_rays(&self) -> &[LatticeVector] {
        &self.base_rays
    }

    /// Lattice points of the box, lexicographically sorted.
    ///
    /// Restricts to the saturated span, where `λ = G⁻¹x` turns into the
    /// integer constraints `0 ≤ sign(det)·adj(G)·x ≤ |det|` (lower bound 1
    /// for the half-open variant), and scans the exact bounding box of the
    /// parallelepiped.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        let k = self.base_rays.len();
        let ambient = self.base_rays[0].rank();
        let basis = saturation_basis(&self.base_rays, ambient);
        debug_assert_eq!(basis.len(), k);
        let basis_mat = IntMatrix::from_row_vectors(&basis).expect("nonempty");

        // Generator coordinates in the saturated span (integral, k×k).
        let gen_coords: Vec<Vec<BigInt>> = self
            .base_rays
            .iter()
            .map(|g| {
                basis_mat
                    .transpose()
                    .solve_rational(g)
                    .expect("generator lies in its span")
                    .iter()
                    .map(|c| c.to_integer())
                    .collect()
            })
            .collect();
        let g_cols = IntMatrix::from_rows(transpose_rows(&gen_coords, k)).expect("nonempty");
        let det = g_cols.det().expect("square");
        let d_abs = det.abs();
        let sign = if det.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        };

        // Rows of sign(det)·adj(G): column j of adj solves G·y = det·e_j.
        let mut adj_cols: Vec<Vec<BigInt>> = Vec::with_capacity(k);
        for j in 0..k {
            let mut rhs = vec![num::rational::BigRational::zero(); k];
            rhs[j] = num::rational::BigRational::from_integer(det.clone());
            let y = g_cols
                .solve_rational_rhs(&rhs)
                .expect("generator matrix is invertible");
            adj_cols.push(y.iter().map(|c| c.to_integer()).collect());
        }

        let mut sys = LinearSystem::new(k);
        let lower = if self.include_lower {
            BigInt::zero()
        } else {
            BigInt::from(1)
        };
        for i in 0..k {
            let row: Vec<BigInt> = (0..k).map(|j| &sign * &adj_cols[j][i]).collect();
            sys.ge(row.clone(), lower.clone());
            sys.le(row, d_abs.clone());
        }

        // Bounding box of the parallelepiped image of [0,1]^k.
        let mut lo = vec![BigInt::zero(); k];
        let mut hi = vec![BigInt::zero(); k];
        for j in 0..k {
            for coords in &gen_coords {
                let c = &coords[j];
                if c.is_negative() {
                    lo[j] += c;
                } else {
                    hi[j] += c;
                }
            }
        }

        let pts = sys.lattice_points(&lo, &hi);
        let mut out: Vec<LatticeVector> = pts
            .into_iter()
            .map(|p| span_to_ambient(&p, &basis, ambient))
            .collect();
        out.sort();
        out
    }
}

fn transpose_rows(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::zero(); rows.len()]; cols];
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[j][i] = x.clone();
        }
    }
    out
}

fn span_to_ambient(coords: &LatticeVector, basis: &[LatticeVector], ambient: usize) -> LatticeVector {
    let mut out = vec![BigInt::zero(); ambient];
    for (c, b) in coords.coords().iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b.coords()) {
            *o += c * x;
        }
    }
    LatticeVector::new(out)
}

/// A simplicial subdivision of the cone using only its own rays.
///
/// This is the pulling triangulation in lexicographic ray order: the minimal
/// ray is coned over the recursive triangulations of the facets avoiding it.
/// Pieces intersect in common faces and cover the cone.
pub fn triangulate_by_rays(c: &Cone) -> Vec<Cone> {
    if c.is_zero_cone() || c.is_simplicial() {
        return vec![c.clone()];
    }
    let faces = c.faces();
    let top = faces.len() - 1; // sorted by dim: the cone itself is last
    let mut memo: Vec<Option<Vec<Vec<usize>>>> = vec![None; faces.len()];
    let simplices = pull_face(&faces, top, &mut memo);
    let mut pieces: Vec<Vec<usize>> = simplices;
    for s in pieces.iter_mut() {
        s.sort();
    }
    pieces.sort();
    pieces.dedup();
    pieces
        .into_iter()
        .map(|idx| {
            let rays: Vec<LatticeVector> =
                idx.iter().map(|&i| c.rays()[i].clone()).collect();
            Cone::from_rays(&rays, c.rank()).expect("simplicial piece of a valid cone")
        })
        .collect()
}

fn pull_face(faces: &[Face], fi: usize, memo: &mut Vec<Option<Vec<Vec<usize>>>>) -> Vec<Vec<usize>> {
    if let Some(cached) = &memo[fi] {
        return cached.clone();
    }
    let face = &faces[fi];
    let result = if face.ray_count() == face.dim() {
        vec![face.ray_indices().to_vec()]
    } else {
        // Lex-min ray: ray indices follow the parent's sorted ray order.
        let v0 = *face.ray_indices().iter().min().expect("positive dimension");
        let mut out = Vec::new();
        for (gi, g) in faces.iter().enumerate() {
            if g.dim() + 1 != face.dim()
                || !g.ray_indices().iter().all(|r| face.ray_indices().contains(r))
                || g.ray_indices().contains(&v0)
            {
                continue;
            }
            for simplex in pull_face(faces, gi, memo) {
                let mut s = simplex;
                s.push(v0);
                out.push(s);
            }
        }
        out
    };
    memo[fi] = Some(result.clone());
    result
}

/// The minimal generating set of the semigroup `σ ∩ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    elements: Vec<LatticeVector>,
}

impl HilbertBasis {
    pub fn elements(&self) -> &[LatticeVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Hilbert basis of `σ ∩ N`.
///
/// Candidates are the lattice points of the closed fundamental boxes over a
/// triangulation by rays; a candidate `v` is dropped when `v − w ∈ σ∩N∖{0}`
/// for some other candidate `w` (every reducible point admits such a witness
/// because all of `σ ∩ N` is generated by box points).
pub fn hilbert_basis(c: &Cone) -> HilbertBasis {
    if c.is_zero_cone() {
        return HilbertBasis {
            elements: Vec::new(),
        };
    }
    let mut candidates: BTreeSet<LatticeVector> = BTreeSet::new();
    for piece in triangulate_by_rays(c) {
        let boxed = HalfOpenBox::closed(piece.rays().to_vec())
            .expect("piece rays are independent")
            .lattice_points();
        for p in boxed {
            if !p.is_zero() {
                candidates.insert(p);
            }
        }
    }
    let list: Vec<LatticeVector> = candidates.into_iter().collect();
    let keep = exec::map_ordered(list.clone(), |v| {
        let reducible = list.iter().any(|w| {
            if w == &v {
                return false;
            }
            let diff = v.sub(w);
            !diff.is_zero() && c.contains_unchecked(&diff)
        });
        !reducible
    });
    HilbertBasis {
        elements: list
            .into_iter()
            .zip(keep)
            .filter_map(|(v, k)| k.then_some(v))
            .collect(),
    }
}

/// Candidate minimal points supported on the relative interior of a face.
///
/// Enumerates the closed fundamental boxes of a triangulation of `f` by its
/// rays and keeps the nonzero points whose carrier in the parent cone is `f`
/// itself. Points on internal walls of the triangulation are picked up via
/// the closed boxes; the carrier test discards everything outside `f°`.
pub fn interior_box_points(f: &Face) -> Vec<LatticeVector> {
    if f.dim() == 0 {
        return Vec::new();
    }
    let parent = f.parent();
    let sub = f.to_cone();
    let mut seen: BTreeSet<LatticeVector> = BTreeSet::new();
    for piece in triangulate_by_rays(&sub) {
        let boxed = HalfOpenBox::closed(piece.rays().to_vec())
            .expect("piece rays are independent")
            .lattice_points();
        for p in boxed {
            if !p.is_zero() {
                seen.insert(p);
            }
        }
    }
    let list: Vec<LatticeVector> = seen.into_iter().collect();
    let keep = exec::map_ordered(list.clone(), |p| {
        parent
            .carrier_face(&p)
            .map(|carrier| carrier == *f)
            .unwrap_or(false)
    });
    list.into_iter()
        .zip(keep)
        .filter_map(|(v, k)| k.then_some(v))
        .collect()
}
