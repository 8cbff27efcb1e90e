//! The valuation sets of an affine toric variety: the order `≤_σ`, the
//! Newton polyhedron `Γ(σ)`, the Nash/essential set `Min(σ)`, and the
//! terminal set `Ter(σ)`.
//!
//! `Min(σ)` collects the minimal elements of `σ_sing ∩ N` under
//! `v ≤_σ w ⇔ w ∈ v + σ`; by Ishii–Kollár these are exactly the Nash
//! valuations, which coincide with the essential valuations. `Ter(σ)` is the
//! set of singular lattice points on the compact boundary of `Γ(σ)` and
//! parametrizes the exceptional divisors of a toric minimal model.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::Zero;

use crate::error::{Error, Result};
use crate::exec;
use crate::lattice_points::{hilbert_basis, interior_box_points, polytope_points};
use crate::linalg::{DualVector, LatticeVector};
use crate::polyhedra::{minkowski_hull, BoundedFace, Cone, Polyhedron};
use crate::toric::{in_sing_locus, is_regular, is_terminal_cone, singular_locus, SingularLocus};

/// The order on `σ ∩ N`: `v ≤_σ w` iff `w ∈ v + σ`.
pub fn leq_sigma(c: &Cone, v: &LatticeVector, w: &LatticeVector) -> Result<bool> {
    if !c.contains(v)? {
        return Err(Error::NotInCone);
    }
    if !c.contains(w)? {
        return Err(Error::NotInCone);
    }
    Ok(c.contains_unchecked(&w.sub(v)))
}

/// The canonical strictly positive height functional: the sum of the
/// primitive facet normals. Strictly positive on `σ ∖ {0}` by strong
/// convexity, and integer-valued on `N`.
pub fn height_functional(c: &Cone) -> DualVector {
    let mut sum = vec![BigInt::zero(); c.rank()];
    for m in c.facet_normal_ints() {
        for (s, x) in sum.iter_mut().zip(m) {
            *s += x;
        }
    }
    DualVector::from_integers(sum)
}

/// `Γ(σ) = conv(σ ∩ N ∖ {0})`, realized as `conv(HilbertBasis) + σ`, with
/// its compact faces.
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    cone: Cone,
    hull: Polyhedron,
    compact_faces: Vec<BoundedFace>,
}

impl NewtonPolyhedron {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn hull(&self) -> &Polyhedron {
        &self.hull
    }

    /// All bounded faces of the hull; their union is `∂_cΓ(σ)`.
    pub fn compact_faces(&self) -> &[BoundedFace] {
        &self.compact_faces
    }

    pub fn maximal_compact_faces(&self) -> Vec<BoundedFace> {
        self.hull.maximal_compact_faces()
    }

    /// The lattice points of `∂_cΓ(σ)`, lexicographically sorted.
    pub fn compact_boundary_points(&self) -> Result<Vec<LatticeVector>> {
        let mut out: BTreeSet<LatticeVector> = BTreeSet::new();
        for face in self.maximal_compact_faces() {
            for p in polytope_points(&face.vertices_rational())? {
                out.insert(p);
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// Builds `Γ(σ)`. Every nonzero lattice point of `σ` is a sum of Hilbert
/// basis elements, so `conv(HilbertBasis) + σ` is exactly the convex hull of
/// `σ ∩ N ∖ {0}`.
pub fn newton_polyhedron(c: &Cone) -> Result<NewtonPolyhedron> {
    if c.is_zero_cone() {
        return Err(Error::EmptyInput);
    }
    let hb = hilbert_basis(c);
    let hull = minkowski_hull(hb.elements(), c.rays(), c.rank())?;
    let compact_faces = hull.compact_faces();
    Ok(NewtonPolyhedron {
        cone: c.clone(),
        hull,
        compact_faces,
    })
}

/// `Ter(σ) = ∂_cΓ(σ) ∩ σ_sing ∩ N`, lexicographically sorted.
pub fn terminal_valuations(c: &Cone) -> Result<Vec<LatticeVector>> {
    if singular_locus(c).is_empty() {
        return Ok(Vec::new());
    }
    let gamma = newton_polyhedron(c)?;
    let boundary = gamma.compact_boundary_points()?;
    let keep = exec::map_ordered(boundary.clone(), |p| {
        in_sing_locus(c, &p).expect("boundary points are nonzero points of the cone")
    });
    Ok(boundary
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect())
}

/// `Min(σ)`: the minimal elements of `σ_sing ∩ N` under `≤_σ`.
///
/// Candidates come from the closed fundamental boxes over each singular
/// face, restricted to the relative interior of that face; a minimal point
/// always reduces into such a box by subtracting ray generators, each
/// subtraction staying in the same relative interior and strictly dropping
/// in height. Minimality is then a pairwise domination filter.
pub fn nash_valuations(c: &Cone) -> Result<Vec<LatticeVector>> {
    let sing = singular_locus(c);
    if sing.is_empty() {
        return Ok(Vec::new());
    }
    let per_face: Vec<Vec<LatticeVector>> = exec::map_ordered(
        sing.faces().to_vec(),
        |f| interior_box_points(&f),
    );
    let mut candidates: BTreeSet<LatticeVector> = BTreeSet::new();
    for pts in per_face {
        candidates.extend(pts);
    }
    let list: Vec<LatticeVector> = candidates.into_iter().collect();
    let keep = exec::map_ordered(list.clone(), |v| {
        !list.iter().any(|w| {
            if w == &v {
                return false;
            }
            // w ≤_σ v strictly: v − w ∈ σ.
            c.contains_unchecked(&v.sub(w))
        })
    });
    Ok(list
        .into_iter()
        .zip(keep)
        .filter_map(|(v, k)| k.then_some(v))
        .collect())
}

/// The essential valuations coincide with the Nash valuations on toric
/// varieties (Ishii–Kollár); exposed as a named endpoint for reports.
pub fn essential_valuations(c: &Cone) -> Result<Vec<LatticeVector>> {
    nash_valuations(c)
}

/// Aggregated valuation data for one cone.
#[derive(Clone, Debug)]
pub struct ValuationReport {
    pub cone: Cone,
    pub min_set: Vec<LatticeVector>,
    pub ter_set: Vec<LatticeVector>,
    pub singular_faces: SingularLocus,
    pub is_regular_variety: bool,
    /// Set only when the cone is simplicial; the predicate is undefined
    /// otherwise.
    pub is_terminal_variety: Option<bool>,
}

/// Computes every valuation set and cross-checks `Ter(σ) ⊆ Min(σ)`.
pub fn analyze(c: &Cone) -> Result<ValuationReport> {
    let singular_faces = singular_locus(c);
    let min_set = nash_valuations(c)?;
    let ter_set = terminal_valuations(c)?;
    for t in &ter_set {
        if !min_set.contains(t) {
            return Err(Error::Invariant(format!(
                "terminal valuation {t} is not a Nash valuation"
            )));
        }
    }
    let is_terminal_variety = if c.is_simplicial() && !c.is_zero_cone() {
        Some(is_terminal_cone(c)?)
    } else {
        None
    };
    Ok(ValuationReport {
        cone: c.clone(),
        is_regular_variety: singular_faces.is_empty() && {
            debug_assert!(is_regular(&c.as_face()) == singular_faces.is_empty());
            true
        },
        min_set,
        ter_set,
        singular_faces,
        is_terminal_variety,
    })
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
    fn order_examples() {
        let c = paper_cone();
        let v = lv(&[1, 1, 1]);
        assert!(leq_sigma(&c, &v, &v).unwrap());
        assert!(leq_sigma(&c, &lv(&[1, 0, 0]), &lv(&[2, 1, 2])).unwrap());
        assert!(!leq_sigma(&c, &lv(&[1, 1, 1]), &lv(&[1, 0, 0])).unwrap());
        assert_eq!(
            leq_sigma(&c, &lv(&[0, 0, 1]), &v).unwrap_err(),
            Error::NotInCone
        );
    }

    #[test]
    fn height_is_strictly_positive_on_rays() {
        let c = paper_cone();
        let ell = height_functional(&c);
        for r in c.rays() {
            assert!(ell.eval(r) > num::rational::BigRational::zero());
        }
    }

    #[test]
    fn newton_polyhedron_of_paper_cone() {
        let gamma = newton_polyhedron(&paper_cone()).unwrap();
        let maximal = gamma.maximal_compact_faces();
        assert_eq!(maximal.len(), 1);
        assert_eq!(maximal[0].dim(), 2);
        assert_eq!(
            maximal[0].vertices(),
            vec![lv(&[0, 1, 0]), lv(&[1, 0, 0]), lv(&[1, 1, 2])]
        );
        // (1,1,1) lies in the Hilbert basis but not on the compact boundary.
        let boundary = gamma.compact_boundary_points().unwrap();
        assert!(!boundary.contains(&lv(&[1, 1, 1])));
    }

    #[test]
    fn newton_polyhedron_of_quotient_cone() {
        let c = Cone::from_ray_coords(&[&[1, 0], &[2, 5]], 2).unwrap();
        let gamma = newton_polyhedron(&c).unwrap();
        let maximal = gamma.maximal_compact_faces();
        assert_eq!(maximal.len(), 2);
        let boundary = gamma.compact_boundary_points().unwrap();
        assert_eq!(
            boundary,
            vec![lv(&[1, 0]), lv(&[1, 1]), lv(&[1, 2]), lv(&[2, 5])]
        );
    }

    #[test]
    fn regular_rank2_compact_boundary_is_generator_segment() {
        let c = Cone::from_ray_coords(&[&[1, 0], &[0, 1]], 2).unwrap();
        let gamma = newton_polyhedron(&c).unwrap();
        let maximal = gamma.maximal_compact_faces();
        assert_eq!(maximal.len(), 1);
        assert_eq!(maximal[0].vertices(), vec![lv(&[0, 1]), lv(&[1, 0])]);
    }

    #[test]
    fn terminal_valuation_examples() {
        assert!(terminal_valuations(&paper_cone()).unwrap().is_empty());

        let c = Cone::from_ray_coords(&[&[1, 0], &[2, 5]], 2).unwrap();
        assert_eq!(
            terminal_valuations(&c).unwrap(),
            vec![lv(&[1, 1]), lv(&[1, 2])]
        );

        let odp = Cone::from_ray_coords(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3)
            .unwrap();
        assert!(terminal_valuations(&odp).unwrap().is_empty());
    }

    #[test]
    fn nash_valuation_examples() {
        let regular = Cone::from_ray_coords(&[&[1, 0], &[0, 1]], 2).unwrap();
        assert!(nash_valuations(&regular).unwrap().is_empty());

        let min = nash_valuations(&paper_cone()).unwrap();
        assert_eq!(min, vec![lv(&[1, 1, 1])]);

        let a3 = Cone::from_ray_coords(&[&[1, 0], &[1, 4]], 2).unwrap();
        assert_eq!(
            nash_valuations(&a3).unwrap(),
            vec![lv(&[1, 1]), lv(&[1, 2]), lv(&[1, 3])]
        );
    }

    #[test]
    fn odp_nash_valuation_lies_on_the_wall() {
        // The unique minimal singular point of the cone over the unit square
        // sits on the internal wall of any triangulation by rays.
        let odp = Cone::from_ray_coords(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3)
            .unwrap();
        assert_eq!(nash_valuations(&odp).unwrap(), vec![lv(&[1, 1, 2])]);
    }

    #[test]
    fn analyze_paper_cone() {
        let report = analyze(&paper_cone()).unwrap();
        assert!(report.ter_set.is_empty());
        assert!(report.min_set.contains(&lv(&[1, 1, 1])));
        assert_eq!(report.is_terminal_variety, Some(true));
        assert!(!report.is_regular_variety);
    }

    #[test]
    fn analyze_quotient_25() {
        let c = Cone::from_ray_coords(&[&[1, 0], &[2, 5]], 2).unwrap();
        let report = analyze(&c).unwrap();
        assert_eq!(report.min_set, report.ter_set);
        assert_eq!(report.min_set, vec![lv(&[1, 1]), lv(&[1, 2])]);
    }

    #[test]
    fn minimality_is_pairwise() {
        let c = Cone::from_ray_coords(&[&[1, 0], &[1, 4]], 2).unwrap();
        let min = nash_valuations(&c).unwrap();
        for v in &min {
            for w in &min {
                if v == w {
                    continue;
                }
                assert!(!leq_sigma(&c, v, w).unwrap());
            }
        }
    }
}
