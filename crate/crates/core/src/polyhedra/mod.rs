//! Cones, faces, and polyhedra with exact V- and H-representations.
//!
//! A [`Cone`] is stored by its primitive extreme rays together with the
//! facet normals computed by the double description method. Faces are
//! identified by the set of facets they are tight on; the face lattice, the
//! carrier face of a point, and Minkowski sums `conv(points) + cone(rays)`
//! are all exact.

mod dd;
mod hull;

pub use hull::{minkowski_hull, BoundedFace, Polyhedron, RationalPoint};
pub(crate) use hull::rational_hull_system;

use std::sync::Arc;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{DualVector, IntMatrix, LatticeVector};

#[derive(Debug)]
struct ConeInner {
    rank: usize,
    dim: usize,
    rays: Vec<LatticeVector>,
    facet_normals: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

/// A strongly convex rational polyhedral cone `σ ⊂ N_R`.
///
/// Cheap to clone (shared immutable state). The set is exactly
/// `{v : ⟨m, v⟩ ≥ 0 for all facet normals m, ⟨e, v⟩ = 0 for all span
/// equations e}`; for full-dimensional cones the equation list is empty.
#[derive(Clone, Debug)]
pub struct Cone {
    inner: Arc<ConeInner>,
}

impl Cone {
    /// Builds the cone spanned by `rays`, dropping redundant generators and
    /// normalizing the rest to primitive vectors.
    pub fn from_rays(rays: &[LatticeVector], rank: usize) -> Result<Cone> {
        if rays.is_empty() {
            return Err(Error::EmptyInput);
        }
        let geo = dd::generator_geometry(rays, rank)?;
        if !geo.pointed {
            return Err(Error::NotStronglyConvex);
        }
        let extreme: Vec<LatticeVector> = geo
            .extreme
            .iter()
            .map(|&i| geo.gens[i].clone())
            .collect();
        let cone = Cone {
            inner: Arc::new(ConeInner {
                rank,
                dim: geo.dim,
                rays: extreme,
                facet_normals: geo.facets,
                equations: geo.equations,
            }),
        };
        #[cfg(debug_assertions)]
        cone.spot_check();
        Ok(cone)
    }

    pub fn from_ray_coords(rays: &[&[i64]], rank: usize) -> Result<Cone> {
        let rays: Vec<LatticeVector> = rays.iter().map(|r| LatticeVector::from_i64(r)).collect();
        Cone::from_rays(&rays, rank)
    }

    /// The zero cone `{0}`: valid, regular, and its own only face.
    pub fn zero(rank: usize) -> Cone {
        let mut equations = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut e = vec![BigInt::zero(); rank];
            e[i] = BigInt::one();
            equations.push(e);
        }
        Cone {
            inner: Arc::new(ConeInner {
                rank,
                dim: 0,
                rays: Vec::new(),
                facet_normals: Vec::new(),
                equations,
            }),
        }
    }

    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    /// Primitive extreme ray generators, lexicographically sorted.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.inner.rays
    }

    pub fn facet_count(&self) -> usize {
        self.inner.facet_normals.len()
    }

    /// Facet normals as functionals on `N`, in primitive integer form.
    pub fn facets(&self) -> Vec<DualVector> {
        self.inner
            .facet_normals
            .iter()
            .map(|m| DualVector::from_integers(m.clone()))
            .collect()
    }

    /// Span equations (empty for full-dimensional cones).
    pub fn equations(&self) -> Vec<DualVector> {
        self.inner
            .equations
            .iter()
            .map(|e| DualVector::from_integers(e.clone()))
            .collect()
    }

    pub(crate) fn facet_normal_ints(&self) -> &[Vec<BigInt>] {
        &self.inner.facet_normals
    }

    pub(crate) fn equation_ints(&self) -> &[Vec<BigInt>] {
        &self.inner.equations
    }

    pub fn is_simplicial(&self) -> bool {
        self.inner.rays.len() == self.inner.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.inner.dim == self.inner.rank
    }

    pub fn is_zero_cone(&self) -> bool {
        self.inner.dim == 0
    }

    fn check_rank(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() != self.inner.rank {
            return Err(Error::RankMismatch {
                expected: self.inner.rank,
                got: v.rank(),
            });
        }
        Ok(())
    }

    /// Membership `v ∈ σ`.
    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        self.check_rank(v)?;
        Ok(self.contains_unchecked(v))
    }

    pub(crate) fn contains_unchecked(&self, v: &LatticeVector) -> bool {
        self.inner
            .facet_normals
            .iter()
            .all(|m| !int_dot(m, v).is_negative())
            && self
                .inner
                .equations
                .iter()
                .all(|e| int_dot(e, v).is_zero())
    }

    /// Values `⟨m_i, v⟩` over the facet normals, in facet order.
    pub fn facet_values(&self, v: &LatticeVector) -> Vec<BigInt> {
        self.inner
            .facet_normals
            .iter()
            .map(|m| int_dot(m, v))
            .collect()
    }

    /// The full face lattice, including the zero face and the cone itself.
    ///
    /// Faces are sorted by dimension, then by ray index set, so the order is
    /// reproducible.
    pub fn faces(&self) -> Vec<Face> {
        let nrays = self.inner.rays.len();
        assert!(nrays <= 128, "face enumeration supports at most 128 rays");
        // Incidence: for each ray, which facets vanish on it.
        let ray_tight: Vec<Vec<usize>> = self
            .inner
            .rays
            .iter()
            .map(|r| {
                (0..self.facet_count())
                    .filter(|&i| int_dot(&self.inner.facet_normals[i], r).is_zero())
                    .collect()
            })
            .collect();

        let rays_of = |tight: &[usize]| -> u128 {
            let mut mask = 0u128;
            for (ri, rt) in ray_tight.iter().enumerate() {
                if tight.iter().all(|t| rt.contains(t)) {
                    mask |= 1 << ri;
                }
            }
            mask
        };
        let tight_of = |raymask: u128| -> Vec<usize> {
            (0..self.facet_count())
                .filter(|&t| {
                    (0..nrays).all(|ri| raymask & (1 << ri) == 0 || ray_tight[ri].contains(&t))
                })
                .collect()
        };

        let mut seen: Vec<u128> = Vec::new();
        let mut queue: Vec<u128> = Vec::new();
        let top = rays_of(&[]);
        queue.push(top);
        let mut found: Vec<(u128, Vec<usize>)> = Vec::new();
        while let Some(raymask) = queue.pop() {
            if seen.contains(&raymask) {
                continue;
            }
            seen.push(raymask);
            let tight = tight_of(raymask);
            found.push((raymask, tight.clone()));
            for f in 0..self.facet_count() {
                if tight.contains(&f) {
                    continue;
                }
                let mut t1 = tight.clone();
                t1.push(f);
                queue.push(rays_of(&t1));
            }
        }
        // The zero face is a face of every strongly convex cone; the BFS
        // reaches it unless the cone has no facets at all (the zero cone).
        if !seen.contains(&0) {
            found.push((0, (0..self.facet_count()).collect()));
        }

        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|(raymask, tight)| self.face_from_parts(raymask, tight))
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.ray_indices).cmp(&(b.dim, &b.ray_indices)));
        faces.dedup_by(|a, b| a.ray_indices == b.ray_indices);
        faces
    }

    fn face_from_parts(&self, raymask: u128, tight: Vec<usize>) -> Face {
        let ray_indices: Vec<usize> = (0..self.inner.rays.len())
            .filter(|&i| raymask & (1 << i) != 0)
            .collect();
        let dim = if ray_indices.is_empty() {
            0
        } else {
            IntMatrix::from_row_vectors(
                &ray_indices
                    .iter()
                    .map(|&i| self.inner.rays[i].clone())
                    .collect::<Vec<_>>(),
            )
            .expect("nonempty")
            .rank()
        };
        Face {
            parent: self.clone(),
            tight,
            ray_indices,
            dim,
        }
    }

    /// The unique face `τ` with `v ∈ τ°` (the carrier of `v`).
    pub fn carrier_face(&self, v: &LatticeVector) -> Result<Face> {
        if !self.contains(v)? {
            return Err(Error::NotInCone);
        }
        let tight: Vec<usize> = (0..self.facet_count())
            .filter(|&i| int_dot(&self.inner.facet_normals[i], v).is_zero())
            .collect();
        let mut raymask = 0u128;
        for (ri, r) in self.inner.rays.iter().enumerate() {
            if tight
                .iter()
                .all(|&t| int_dot(&self.inner.facet_normals[t], r).is_zero())
            {
                raymask |= 1 << ri;
            }
        }
        // Canonical tight set: all facets vanishing on every carrier ray.
        let canonical: Vec<usize> = (0..self.facet_count())
            .filter(|&t| {
                (0..self.inner.rays.len())
                    .all(|ri| raymask & (1 << ri) == 0 || {
                        int_dot(&self.inner.facet_normals[t], &self.inner.rays[ri]).is_zero()
                    })
            })
            .collect();
        Ok(self.face_from_parts(raymask, canonical))
    }

    /// The cone viewed as the top face of its own lattice.
    pub fn as_face(&self) -> Face {
        self.face_from_parts(
            (0..self.inner.rays.len()).fold(0u128, |m, i| m | (1 << i)),
            Vec::new(),
        )
    }

    #[cfg(debug_assertions)]
    fn spot_check(&self) {
        for r in &self.inner.rays {
            assert!(self.contains_unchecked(r), "ray violates its own facets");
            if self.dim() >= 1 {
                assert!(
                    !self.contains_unchecked(&r.neg()),
                    "strong convexity violated"
                );
            }
        }
        for m in &self.inner.facet_normals {
            let tight: Vec<LatticeVector> = self
                .inner
                .rays
                .iter()
                .filter(|r| int_dot(m, r).is_zero())
                .cloned()
                .collect();
            let rank = if tight.is_empty() {
                0
            } else {
                IntMatrix::from_row_vectors(&tight).expect("nonempty").rank()
            };
            assert!(
                self.dim() == 0 || rank == self.dim() - 1,
                "facet must be tight on dim-1 independent rays"
            );
        }
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.inner.rank == other.inner.rank && self.inner.rays == other.inner.rays
    }
}

impl Eq for Cone {}

/// A face `τ` of a cone, identified by its tight facet set.
#[derive(Clone, Debug)]
pub struct Face {
    parent: Cone,
    tight: Vec<usize>,
    ray_indices: Vec<usize>,
    dim: usize,
}

impl Face {
    pub fn parent(&self) -> &Cone {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Indices of the parent facets this face is tight on.
    pub fn tight_facets(&self) -> &[usize] {
        &self.tight
    }

    /// Indices into the parent's ray list.
    pub fn ray_indices(&self) -> &[usize] {
        &self.ray_indices
    }

    pub fn ray_count(&self) -> usize {
        self.ray_indices.len()
    }

    pub fn rays(&self) -> Vec<LatticeVector> {
        self.ray_indices
            .iter()
            .map(|&i| self.parent.rays()[i].clone())
            .collect()
    }

    pub fn is_zero_face(&self) -> bool {
        self.ray_indices.is_empty()
    }

    pub fn is_whole_cone(&self) -> bool {
        self.ray_indices.len() == self.parent.rays().len()
    }

    /// The face as a standalone cone (the zero cone for the zero face).
    pub fn to_cone(&self) -> Cone {
        if self.is_zero_face() {
            Cone::zero(self.parent.rank())
        } else {
            Cone::from_rays(&self.rays(), self.parent.rank())
                .expect("a face of a strongly convex cone is strongly convex")
        }
    }
}

impl PartialEq for Face {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent.inner, &other.parent.inner)
            && self.ray_indices == other.ray_indices
    }
}

impl Eq for Face {}

pub(crate) fn int_dot(a: &[BigInt], v: &LatticeVector) -> BigInt {
    a.iter().zip(v.coords()).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn paper_cone() -> Cone {
        Cone::from_ray_coords(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]], 3).unwrap()
    }

    #[test]
    fn orthant_faces() {
        let c = Cone::from_ray_coords(&[&[1, 0], &[0, 1]], 2).unwrap();
        let faces = c.faces();
        assert_eq!(faces.len(), 4);
        assert_eq!(faces[0].dim(), 0);
        assert!(faces[0].is_zero_face());
        assert_eq!(faces[3].dim(), 2);
    }

    #[test]
    fn simplicial_cone_faces_form_boolean_lattice() {
        let faces = paper_cone().faces();
        assert_eq!(faces.len(), 8);
        let by_dim = |d: usize| faces.iter().filter(|f| f.dim() == d).count();
        assert_eq!(by_dim(0), 1);
        assert_eq!(by_dim(1), 3);
        assert_eq!(by_dim(2), 3);
        assert_eq!(by_dim(3), 1);
    }

    #[test]
    fn square_cone_faces() {
        let c = Cone::from_ray_coords(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3)
            .unwrap();
        let faces = c.faces();
        assert_eq!(faces.len(), 10);
        assert!(!c.is_simplicial());
    }

    #[test]
    fn membership() {
        let c = Cone::from_ray_coords(&[&[1, 0], &[0, 1]], 2).unwrap();
        assert!(c.contains(&lv(&[3, 5])).unwrap());
        assert!(!c.contains(&lv(&[-1, 0])).unwrap());
        assert!(matches!(
            c.contains(&lv(&[1, 2, 3])),
            Err(Error::RankMismatch { .. })
        ));

        let p = paper_cone();
        assert!(!p.contains(&lv(&[0, 0, 1])).unwrap());
        assert!(p.contains(&lv(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn not_strongly_convex_rejected() {
        assert_eq!(
            Cone::from_ray_coords(&[&[1, 0], &[-1, 0]], 2).unwrap_err(),
            Error::NotStronglyConvex
        );
    }

    #[test]
    fn carrier_faces() {
        let c = Cone::from_ray_coords(&[&[1, 0], &[0, 1]], 2).unwrap();
        let f = c.carrier_face(&lv(&[1, 0])).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.rays(), vec![lv(&[1, 0])]);

        let p = paper_cone();
        let interior = p.carrier_face(&lv(&[1, 1, 1])).unwrap();
        assert!(interior.is_whole_cone());

        let wall = p.carrier_face(&lv(&[2, 1, 2])).unwrap();
        assert_eq!(wall.dim(), 2);
        assert_eq!(wall.rays(), vec![lv(&[1, 0, 0]), lv(&[1, 1, 2])]);

        let zero = p.carrier_face(&lv(&[0, 0, 0])).unwrap();
        assert!(zero.is_zero_face());

        assert_eq!(p.carrier_face(&lv(&[0, 0, 1])).unwrap_err(), Error::NotInCone);
    }

    #[test]
    fn zero_cone_is_valid() {
        let z = Cone::zero(3);
        assert_eq!(z.dim(), 0);
        assert!(z.contains(&lv(&[0, 0, 0])).unwrap());
        assert!(!z.contains(&lv(&[1, 0, 0])).unwrap());
        assert_eq!(z.faces().len(), 1);
    }

    #[test]
    fn faces_of_faces_are_faces() {
        let c = Cone::from_ray_coords(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3)
            .unwrap();
        let parent_ray_sets: Vec<Vec<LatticeVector>> =
            c.faces().iter().map(|f| f.rays()).collect();
        for f in c.faces() {
            if f.is_zero_face() {
                continue;
            }
            let sub = f.to_cone();
            for g in sub.faces() {
                let mut rays = g.rays();
                rays.sort();
                assert!(
                    parent_ray_sets.iter().any(|s| {
                        let mut s = s.clone();
                        s.sort();
                        s == rays
                    }),
                    "face of face {:?} missing from parent lattice",
                    rays
                );
            }
        }
    }
}
