//! Toric singularity predicates: regularity of faces, the singular locus
//! `σ_sing`, and the terminal/canonical criteria for simplicial cones.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::enumerate::{lattice_bbox, LinearSystem};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, LatticeVector};
use crate::polyhedra::{Cone, Face};

/// Whether the face is regular: simplicial with primitive ray generators
/// extending to a basis of `N` (all elementary divisors 1). The zero face is
/// regular, as is any face spanned by a single primitive ray.
pub fn is_regular(f: &Face) -> bool {
    if f.ray_count() == 0 {
        return true;
    }
    if f.ray_count() != f.dim() {
        return false;
    }
    let m = IntMatrix::from_row_vectors(&f.rays()).expect("nonempty");
    m.snf_divisors().iter().all(|d| d.is_one())
}

/// The singular faces of a cone; `σ_sing` is the union of their relative
/// interiors.
#[derive(Clone, Debug)]
pub struct SingularLocus {
    singular_faces: Vec<Face>,
}

impl SingularLocus {
    pub fn faces(&self) -> &[Face] {
        &self.singular_faces
    }

    pub fn is_empty(&self) -> bool {
        self.singular_faces.is_empty()
    }

    pub fn len(&self) -> usize {
        self.singular_faces.len()
    }
}

/// All faces of `c` failing [`is_regular`].
pub fn singular_locus(c: &Cone) -> SingularLocus {
    SingularLocus {
        singular_faces: c.faces().into_iter().filter(|f| !is_regular(f)).collect(),
    }
}

/// Whether `v ∈ σ_sing`, i.e. the carrier face of `v` is singular.
pub fn in_sing_locus(c: &Cone, v: &LatticeVector) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let carrier = c.carrier_face(v)?;
    Ok(!is_regular(&carrier))
}

/// The unique rational functional taking value 1 on every primitive ray
/// generator of a simplicial cone, scaled to integer form `(m, level)` with
/// `⟨m, u_i⟩ = level`.
fn generator_hyperplane(c: &Cone) -> Result<(Vec<BigInt>, BigInt)> {
    let rays = c.rays();
    let mat = IntMatrix::from_row_vectors(rays)?;
    let ones: Vec<BigRational> = vec![BigRational::one(); rays.len()];
    let m = mat
        .solve_rational_rhs(&ones)
        .expect("independent generators admit a level functional");
    let mut lcm = BigInt::one();
    for c in &m {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = m
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    Ok((ints, lcm))
}

/// Lattice points of `c` on or below the generator hyperplane, paired with
/// their scaled levels `⟨m, v⟩` (the hyperplane itself sits at `level`).
fn points_under_hyperplane(c: &Cone) -> Result<(Vec<(LatticeVector, BigInt)>, BigInt)> {
    let (m, level) = generator_hyperplane(c)?;
    let mut sys = LinearSystem::new(c.rank());
    for f in c.facet_normal_ints() {
        sys.ge(f.clone(), BigInt::zero());
    }
    for e in c.equation_ints() {
        sys.eq(e.clone(), BigInt::zero());
    }
    sys.le(m.clone(), level.clone());
    // The region is the simplex conv(0, u_1, …, u_k); its bounding box is
    // the bounding box of the generators and the origin.
    let mut pts = c.rays().to_vec();
    pts.push(LatticeVector::zero(c.rank()));
    let (lo, hi) = lattice_bbox(&pts);
    let found = sys.lattice_points(&lo, &hi);
    let m_vec = LatticeVector::new(m);
    Ok((
        found
            .into_iter()
            .map(|p| {
                let lvl = m_vec.dot(&p);
                (p, lvl)
            })
            .collect(),
        level,
    ))
}

/// Reid's criterion for terminal singularities: the only lattice points of
/// the cone on or below the generator hyperplane are the origin and the
/// primitive generators. Requires a simplicial cone.
pub fn is_terminal_cone(c: &Cone) -> Result<bool> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    if c.is_zero_cone() {
        return Ok(true);
    }
    let (pts, _) = points_under_hyperplane(c)?;
    Ok(pts
        .iter()
        .all(|(p, _)| p.is_zero() || c.rays().contains(p)))
}

/// Canonical criterion: no nonzero lattice point of the cone lies strictly
/// below the generator hyperplane. Requires a simplicial cone.
pub fn is_canonical_cone(c: &Cone) -> Result<bool> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    if c.is_zero_cone() {
        return Ok(true);
    }
    let (pts, level) = points_under_hyperplane(c)?;
    Ok(pts.iter().all(|(p, lvl)| p.is_zero() || *lvl >= level))
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
    fn orthant_is_regular() {
        let c = Cone::from_ray_coords(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3).unwrap();
        assert!(is_regular(&c.as_face()));
        assert!(singular_locus(&c).is_empty());
    }

    #[test]
    fn paper_cone_regularity() {
        let c = paper_cone();
        assert!(!is_regular(&c.as_face()));
        let wall = c.carrier_face(&lv(&[2, 1, 2])).unwrap();
        assert_eq!(wall.rays(), vec![lv(&[1, 0, 0]), lv(&[1, 1, 2])]);
        assert!(is_regular(&wall));

        let sing = singular_locus(&c);
        assert_eq!(sing.len(), 1);
        assert!(sing.faces()[0].is_whole_cone());
    }

    #[test]
    fn square_cone_singular_only_at_top() {
        let c = Cone::from_ray_coords(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3)
            .unwrap();
        let sing = singular_locus(&c);
        assert_eq!(sing.len(), 1);
        assert!(sing.faces()[0].is_whole_cone());
    }

    #[test]
    fn sing_locus_membership() {
        let c = paper_cone();
        assert!(in_sing_locus(&c, &lv(&[1, 1, 1])).unwrap());
        assert!(!in_sing_locus(&c, &lv(&[1, 0, 0])).unwrap());
        assert!(!in_sing_locus(&c, &lv(&[2, 1, 2])).unwrap());
        assert_eq!(
            in_sing_locus(&c, &lv(&[0, 0, 0])).unwrap_err(),
            Error::ZeroVector
        );
        assert_eq!(
            in_sing_locus(&c, &lv(&[0, 0, 1])).unwrap_err(),
            Error::NotInCone
        );
    }

    #[test]
    fn terminal_criterion() {
        assert!(is_terminal_cone(&paper_cone()).unwrap());

        let regular = Cone::from_ray_coords(&[&[1, 0], &[0, 1]], 2).unwrap();
        assert!(is_terminal_cone(&regular).unwrap());

        // The 1/3(1,1,1) quotient: (0,0,1) sits on the generator hyperplane.
        let third = Cone::from_ray_coords(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 3]], 3).unwrap();
        assert!(!is_terminal_cone(&third).unwrap());
        assert!(is_canonical_cone(&third).unwrap());
    }

    #[test]
    fn canonical_criterion() {
        // A_2 surface singularity is canonical but not terminal.
        let a2 = Cone::from_ray_coords(&[&[1, 0], &[1, 3]], 2).unwrap();
        assert!(is_canonical_cone(&a2).unwrap());
        assert!(!is_terminal_cone(&a2).unwrap());
    }

    #[test]
    fn non_simplicial_is_rejected() {
        let c = Cone::from_ray_coords(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3)
            .unwrap();
        assert_eq!(is_terminal_cone(&c).unwrap_err(), Error::NotSimplicial);
        assert_eq!(is_canonical_cone(&c).unwrap_err(), Error::NotSimplicial);
    }

    #[test]
    fn implication_chain_on_simplicial_faces() {
        let cones = [
            paper_cone(),
            Cone::from_ray_coords(&[&[1, 0], &[1, 4]], 2).unwrap(),
            Cone::from_ray_coords(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 3]], 3).unwrap(),
        ];
        for c in &cones {
            for f in c.faces() {
                if f.ray_count() != f.dim() || f.dim() == 0 {
                    continue;
                }
                let sub = f.to_cone();
                let reg = is_regular(&f);
                let term = is_terminal_cone(&sub).unwrap();
                let canon = is_canonical_cone(&sub).unwrap();
                if reg {
                    assert!(term);
                }
                if term {
                    assert!(canon);
                }
            }
        }
    }
}
