//! Minkowski sums `conv(points) + cone(rays)` and their bounded faces.
//!
//! The H-representation comes from homogenizing: points embed at height 1,
//! recession rays at height 0, and the facets of the resulting cone project
//! to the facets of the polyhedron. A face is bounded exactly when no
//! recession generator is incident to all of its tight facets.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::enumerate::LinearSystem;
use crate::error::{Error, Result};
use crate::linalg::{DualVector, IntMatrix, LatticeVector};

use super::dd;
use super::int_dot;

/// A point with exact rational coordinates.
pub type RationalPoint = Vec<BigRational>;

#[derive(Debug)]
struct PolyInner {
    rank: usize,
    gen_points: Vec<LatticeVector>,
    gen_rays: Vec<LatticeVector>,
    /// Facets `⟨m, x⟩ ≥ b` with primitive integer normals.
    facets: Vec<(Vec<BigInt>, BigInt)>,
    /// Affine span equations `⟨e, x⟩ = b`.
    equations: Vec<(Vec<BigInt>, BigInt)>,
    /// Extreme points (vertices); a subset of `gen_points`.
    vertices: Vec<LatticeVector>,
    /// Extreme rays of the recession cone; a subset of `gen_rays`.
    extreme_rays: Vec<LatticeVector>,
    /// Per-vertex and per-ray tight facet masks.
    vertex_inc: Vec<u128>,
    ray_inc: Vec<u128>,
}

/// `P = conv(gen_points) + cone(gen_rays)` with an exact, irredundant
/// H-representation.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    inner: Arc<PolyInner>,
}

/// Exact H-representation of `conv(points) + cone(rays)`.
pub fn minkowski_hull(
    points: &[LatticeVector],
    rays: &[LatticeVector],
    rank: usize,
) -> Result<Polyhedron> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut gens: Vec<LatticeVector> = Vec::with_capacity(points.len() + rays.len());
    let mut is_ray_gen: Vec<bool> = Vec::new();
    for p in points {
        if p.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: p.rank(),
            });
        }
        let mut c = p.coords().to_vec();
        c.push(BigInt::one());
        gens.push(LatticeVector::new(c));
        is_ray_gen.push(false);
    }
    for r in rays {
        if r.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: r.rank(),
            });
        }
        let mut c = r.primitive()?.coords().to_vec();
        c.push(BigInt::zero());
        gens.push(LatticeVector::new(c));
        is_ray_gen.push(true);
    }

    let geo = dd::generator_geometry(&gens, rank + 1)?;
    if !geo.pointed {
        return Err(Error::Invariant(
            "homogenized hull cone is not pointed; recession cone contains a line".into(),
        ));
    }

    // Split homogeneous facets ⟨(m, c), (x, t)⟩ ≥ 0 into ⟨m, x⟩ ≥ -c,
    // dropping the facet at infinity (m = 0, the constraint t ≥ 0).
    let mut facets = Vec::new();
    for f in &geo.facets {
        let (m, c) = f.split_at(rank);
        if m.iter().all(|x| x.is_zero()) {
            continue;
        }
        facets.push((m.to_vec(), -c[0].clone()));
    }
    facets.sort();
    let mut equations = Vec::new();
    for e in &geo.equations {
        let (m, c) = e.split_at(rank);
        debug_assert!(!m.iter().all(|x| x.is_zero()), "t = 0 cannot be an equation");
        equations.push((m.to_vec(), -c[0].clone()));
    }
    equations.sort();

    let mut vertices = Vec::new();
    let mut extreme_rays = Vec::new();
    for &gi in &geo.extreme {
        let g = &geo.gens[gi];
        let (x, t) = g.coords().split_at(rank);
        if t[0].is_zero() {
            extreme_rays.push(LatticeVector::new(x.to_vec()));
        } else {
            debug_assert!(t[0].is_one(), "height-1 generators stay primitive");
            vertices.push(LatticeVector::new(x.to_vec()));
        }
    }
    vertices.sort();
    extreme_rays.sort();

    let tight_mask = |v: &LatticeVector, offset_applies: bool| -> u128 {
        let mut mask = 0u128;
        for (fi, (m, b)) in facets.iter().enumerate() {
            let val = int_dot(m, v);
            let tight = if offset_applies {
                val == *b
            } else {
                val.is_zero()
            };
            if tight {
                mask |= 1 << fi;
            }
        }
        mask
    };
    assert!(facets.len() <= 128, "facet masks support at most 128 facets");
    let vertex_inc: Vec<u128> = vertices.iter().map(|v| tight_mask(v, true)).collect();
    let ray_inc: Vec<u128> = extreme_rays.iter().map(|r| tight_mask(r, false)).collect();

    Ok(Polyhedron {
        inner: Arc::new(PolyInner {
            rank,
            gen_points: points.to_vec(),
            gen_rays: rays.to_vec(),
            facets,
            equations,
            vertices,
            extreme_rays,
            vertex_inc,
            ray_inc,
        }),
    })
}

impl Polyhedron {
    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn gen_points(&self) -> &[LatticeVector] {
        &self.inner.gen_points
    }

    pub fn gen_rays(&self) -> &[LatticeVector] {
        &self.inner.gen_rays
    }

    /// Irredundant facets as `(normal, offset)` with `⟨normal, x⟩ ≥ offset`.
    pub fn facets(&self) -> Vec<(DualVector, BigRational)> {
        self.inner
            .facets
            .iter()
            .map(|(m, b)| {
                (
                    DualVector::from_integers(m.clone()),
                    BigRational::from_integer(b.clone()),
                )
            })
            .collect()
    }

    pub fn equations(&self) -> Vec<(DualVector, BigRational)> {
        self.inner
            .equations
            .iter()
            .map(|(m, b)| {
                (
                    DualVector::from_integers(m.clone()),
                    BigRational::from_integer(b.clone()),
                )
            })
            .collect()
    }

    /// The vertices (0-dimensional faces).
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.inner.vertices
    }

    /// Extreme rays of the recession cone.
    pub fn recession_rays(&self) -> &[LatticeVector] {
        &self.inner.extreme_rays
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.inner
            .facets
            .iter()
            .all(|(m, b)| int_dot(m, v) >= *b)
            && self
                .inner
                .equations
                .iter()
                .all(|(m, b)| int_dot(m, v) == *b)
    }

    pub fn contains_rational(&self, p: &[BigRational]) -> bool {
        let eval = |m: &[BigInt]| -> BigRational {
            m.iter()
                .zip(p)
                .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                .sum()
        };
        self.inner
            .facets
            .iter()
            .all(|(m, b)| eval(m) >= BigRational::from_integer(b.clone()))
            && self
                .inner
                .equations
                .iter()
                .all(|(m, b)| eval(m) == BigRational::from_integer(b.clone()))
    }

    /// Constraint system of the polyhedron, for lattice point scans.
    pub(crate) fn system(&self) -> LinearSystem {
        let mut sys = LinearSystem::new(self.inner.rank);
        for (m, b) in &self.inner.facets {
            sys.ge(m.clone(), b.clone());
        }
        for (m, b) in &self.inner.equations {
            sys.eq(m.clone(), b.clone());
        }
        sys
    }

    /// All bounded (compact) faces, each carrying its vertex list, sorted by
    /// dimension then vertex set. A face is bounded exactly when its tight
    /// facets cut out no recession direction.
    pub fn compact_faces(&self) -> Vec<BoundedFace> {
        let nv = self.inner.vertices.len();
        let nr = self.inner.extreme_rays.len();
        let nf = self.inner.facets.len();

        // BFS over closed tight sets, tracking incident vertices and rays.
        let atoms_of = |tight: u128| -> (Vec<usize>, Vec<usize>) {
            let verts: Vec<usize> = (0..nv)
                .filter(|&i| tight & !self.inner.vertex_inc[i] == 0)
                .collect();
            let rays: Vec<usize> = (0..nr)
                .filter(|&i| tight & !self.inner.ray_inc[i] == 0)
                .collect();
            (verts, rays)
        };
        let closure = |verts: &[usize], rays: &[usize]| -> u128 {
            let mut t: u128 = (1u128 << nf).wrapping_sub(1);
            if nf == 128 {
                t = u128::MAX;
            }
            for &v in verts {
                t &= self.inner.vertex_inc[v];
            }
            for &r in rays {
                t &= self.inner.ray_inc[r];
            }
            t
        };

        let mut seen: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut out: Vec<BoundedFace> = Vec::new();
        let mut queue: Vec<u128> = vec![0];
        while let Some(tight) = queue.pop() {
            let (verts, rays) = atoms_of(tight);
            if verts.is_empty() {
                continue; // a face at infinity, not a face of P
            }
            if seen.contains(&(verts.clone(), rays.clone())) {
                continue;
            }
            let closed = closure(&verts, &rays);
            seen.push((verts.clone(), rays.clone()));
            for f in 0..nf {
                if closed & (1 << f) == 0 {
                    queue.push(closed | (1 << f));
                }
            }
            if rays.is_empty() {
                let dim = affine_rank(
                    &verts
                        .iter()
                        .map(|&i| self.inner.vertices[i].clone())
                        .collect::<Vec<_>>(),
                );
                out.push(BoundedFace {
                    parent: self.clone(),
                    tight: (0..nf).filter(|&f| closed & (1 << f) != 0).collect(),
                    vertex_indices: verts,
                    dim,
                });
            }
        }
        out.sort_by(|a, b| (a.dim, &a.vertex_indices).cmp(&(b.dim, &b.vertex_indices)));
        out
    }

    /// Bounded faces maximal under inclusion.
    pub fn maximal_compact_faces(&self) -> Vec<BoundedFace> {
        let all = self.compact_faces();
        all.iter()
            .filter(|f| {
                !all.iter().any(|g| {
                    g.dim > f.dim
                        && f.vertex_indices.iter().all(|v| g.vertex_indices.contains(v))
                })
            })
            .cloned()
            .collect()
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

/// A bounded face of a [`Polyhedron`], with its vertex set.
#[derive(Clone, Debug)]
pub struct BoundedFace {
    parent: Polyhedron,
    tight: Vec<usize>,
    vertex_indices: Vec<usize>,
    dim: usize,
}

impl BoundedFace {
    pub fn parent(&self) -> &Polyhedron {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tight_facets(&self) -> &[usize] {
        &self.tight
    }

    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    pub fn vertices(&self) -> Vec<LatticeVector> {
        self.vertex_indices
            .iter()
            .map(|&i| self.parent.inner.vertices[i].clone())
            .collect()
    }

    pub fn vertices_rational(&self) -> Vec<RationalPoint> {
        self.vertices().iter().map(|v| v.to_rational()).collect()
    }

    /// Set containment among faces of the same polyhedron.
    pub fn contains_face(&self, other: &BoundedFace) -> bool {
        Arc::ptr_eq(&self.parent.inner, &other.parent.inner)
            && other
                .vertex_indices
                .iter()
                .all(|v| self.vertex_indices.contains(v))
    }
}

impl PartialEq for BoundedFace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent.inner, &other.parent.inner)
            && self.vertex_indices == other.vertex_indices
    }
}

fn affine_rank(points: &[LatticeVector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<LatticeVector> = points[1..].iter().map(|p| p.sub(base)).collect();
    IntMatrix::from_row_vectors(&diffs).expect("nonempty").rank()
}

/// H-representation of `conv(vertices)` for exact rational vertices, as a
/// constraint system plus an integer bounding box.
pub(crate) fn rational_hull_system(
    vertices: &[RationalPoint],
) -> Result<(LinearSystem, Vec<BigInt>, Vec<BigInt>)> {
    if vertices.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rank = vertices[0].len();
    let mut gens = Vec::with_capacity(vertices.len());
    for v in vertices {
        if v.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: v.len(),
            });
        }
        // Scale to an integer homogeneous representative (x·d, d).
        let mut lcm = BigInt::one();
        for c in v {
            lcm = lcm.lcm(c.denom());
        }
        let mut coords: Vec<BigInt> = v
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        coords.push(lcm);
        gens.push(LatticeVector::new(coords));
    }
    let geo = dd::generator_geometry(&gens, rank + 1)?;
    debug_assert!(geo.pointed, "cone over points at positive height is pointed");

    let mut sys = LinearSystem::new(rank);
    for f in &geo.facets {
        let (m, c) = f.split_at(rank);
        if m.iter().all(|x| x.is_zero()) {
            continue;
        }
        sys.ge(m.to_vec(), -c[0].clone());
    }
    for e in &geo.equations {
        let (m, c) = e.split_at(rank);
        sys.eq(m.to_vec(), -c[0].clone());
    }
    let (lo, hi) = crate::enumerate::rational_bbox(vertices);
    Ok((sys, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn staircase_hull() {
        // conv{(1,0),(0,1)} + orthant: facets x ≥ 0, y ≥ 0, x + y ≥ 1.
        let p = minkowski_hull(
            &[lv(&[1, 0]), lv(&[0, 1])],
            &[lv(&[1, 0]), lv(&[0, 1])],
            2,
        )
        .unwrap();
        let mut facets: Vec<(Vec<BigInt>, BigInt)> = p.inner.facets.clone();
        facets.sort();
        assert_eq!(
            facets,
            vec![
                (vec![BigInt::from(0), BigInt::from(1)], BigInt::from(0)),
                (vec![BigInt::from(1), BigInt::from(0)], BigInt::from(0)),
                (vec![BigInt::from(1), BigInt::from(1)], BigInt::from(1)),
            ]
        );
        assert_eq!(p.vertices(), &[lv(&[0, 1]), lv(&[1, 0])]);
    }

    #[test]
    fn orthant_from_origin() {
        let p = minkowski_hull(&[lv(&[0, 0])], &[lv(&[1, 0]), lv(&[0, 1])], 2).unwrap();
        assert_eq!(p.inner.facets.len(), 2);
        for (_, b) in &p.inner.facets {
            assert!(b.is_zero());
        }
    }

    #[test]
    fn compact_faces_of_staircase() {
        let p = minkowski_hull(
            &[lv(&[1, 0]), lv(&[0, 1])],
            &[lv(&[1, 0]), lv(&[0, 1])],
            2,
        )
        .unwrap();
        let faces = p.compact_faces();
        // Two vertices and the segment joining them.
        assert_eq!(faces.len(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim() == 0).count(), 2);
        let segment: Vec<_> = faces.iter().filter(|f| f.dim() == 1).collect();
        assert_eq!(segment.len(), 1);
        assert_eq!(segment[0].vertices(), vec![lv(&[0, 1]), lv(&[1, 0])]);
        let maximal = p.maximal_compact_faces();
        assert_eq!(maximal.len(), 1);
        assert_eq!(maximal[0].dim(), 1);
    }

    #[test]
    fn bounded_faces_avoid_recession_rays() {
        let p = minkowski_hull(
            &[lv(&[1, 0]), lv(&[0, 2])],
            &[lv(&[1, 1]), lv(&[0, 1])],
            2,
        )
        .unwrap();
        for f in p.compact_faces() {
            for r in p.recession_rays() {
                // No tight set of a bounded face annihilates a recession ray.
                let all_tight = f
                    .tight
                    .iter()
                    .all(|&fi| int_dot(&p.inner.facets[fi].0, r).is_zero());
                assert!(!all_tight);
            }
        }
    }

    #[test]
    fn rational_hull_of_triangle() {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let verts = vec![
            vec![BigRational::zero(), BigRational::zero()],
            vec![BigRational::from_integer(BigInt::from(2)), BigRational::zero()],
            vec![half.clone(), half],
        ];
        let (sys, lo, hi) = rational_hull_system(&verts).unwrap();
        let pts = sys.lattice_points(&lo, &hi);
        assert_eq!(
            pts,
            vec![lv(&[0, 0]), lv(&[1, 0]), lv(&[2, 0])],
        );
    }
}
