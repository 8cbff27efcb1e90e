//! Exact dual description of finitely generated cones.
//!
//! Given generators in `Z^n`, computes the facet normals of the cone they
//! span by running the incremental double description method on the polar
//! dual `{y : ⟨g, y⟩ ≥ 0}`. Non-full-dimensional input is handled by
//! restricting to the saturated sublattice of the span and re-embedding the
//! normals afterwards. All arithmetic is exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{primitive_integer_form, saturation_basis, IntMatrix, LatticeVector};

/// Hard cap on distinct generators; incidence sets are u128 bitmasks.
const MAX_GENERATORS: usize = 128;

pub(crate) struct GeneratorGeometry {
    /// Dimension of the linear span of the generators.
    pub dim: usize,
    /// Deduplicated primitive generators, lexicographically sorted.
    pub gens: Vec<LatticeVector>,
    /// Indices into `gens` of the extreme generators.
    pub extreme: Vec<usize>,
    /// Primitive integer facet normals in ambient coordinates; the cone lies
    /// on the nonnegative side of each. Irredundant within the span.
    pub facets: Vec<Vec<BigInt>>,
    /// Canonical integer basis of the annihilator of the span.
    pub equations: Vec<Vec<BigInt>>,
    /// Whether the cone is pointed (contains no line).
    pub pointed: bool,
}

pub(crate) fn generator_geometry(
    input: &[LatticeVector],
    rank: usize,
) -> Result<GeneratorGeometry> {
    if input.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut gens = Vec::with_capacity(input.len());
    for g in input {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: g.rank(),
            });
        }
        gens.push(g.primitive()?);
    }
    gens.sort();
    gens.dedup();
    if gens.len() > MAX_GENERATORS {
        return Err(Error::Invariant(format!(
            "generator count {} exceeds the supported maximum {}",
            gens.len(),
            MAX_GENERATORS
        )));
    }

    let basis = saturation_basis(&gens, rank);
    let dim = basis.len();
    let basis_mat = IntMatrix::from_row_vectors(&basis).expect("span is nonzero");

    // Generator coordinates w.r.t. the saturated basis are integral.
    let coords: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            let x = basis_mat
                .transpose()
                .solve_rational(g)
                .expect("generator lies in its own span");
            x.iter()
                .map(|c| {
                    debug_assert!(c.is_integer(), "saturated basis gives integer coordinates");
                    c.to_integer()
                })
                .collect()
        })
        .collect();

    let (dual_rays, incidence) = dual_extreme_rays(&coords, dim)?;

    // The cone is pointed exactly when its dual is full-dimensional.
    let pointed = if dual_rays.is_empty() {
        dim == 0
    } else {
        IntMatrix::from_rows(dual_rays.clone()).expect("nonempty").rank() == dim
    };

    // A generator is extreme when its tight facet set has rank dim − 1.
    let mut extreme = Vec::new();
    if pointed {
        for (gi, _) in gens.iter().enumerate() {
            let tight: Vec<Vec<BigInt>> = dual_rays
                .iter()
                .enumerate()
                .filter(|(fi, _)| incidence[*fi] & (1u128 << gi) != 0)
                .map(|(_, f)| f.clone())
                .collect();
            let r = if tight.is_empty() {
                0
            } else {
                IntMatrix::from_rows(tight).expect("nonempty").rank()
            };
            if dim >= 1 && r == dim - 1 {
                extreme.push(gi);
            }
        }
    }

    // Re-embed facet normals: solve basis · m = m_low, then primitivize.
    let mut facets = Vec::with_capacity(dual_rays.len());
    for low in &dual_rays {
        let rhs: Vec<BigRational> = low
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let m = basis_mat
            .solve_rational_rhs(&rhs)
            .expect("basis has full row rank");
        facets.push(primitive_integer_form(&m)?);
    }
    facets.sort();

    let equations = IntMatrix::from_row_vectors(&gens)
        .expect("nonempty")
        .kernel_basis()
        .into_iter()
        .map(|v| v.coords().to_vec())
        .collect();

    Ok(GeneratorGeometry {
        dim,
        gens,
        extreme,
        facets,
        equations,
        pointed,
    })
}

/// Double description on `D = {y : ⟨g_i, y⟩ ≥ 0}` in full-dimensional
/// coordinates. Returns the extreme rays of `D` (the facet normals of the
/// generated cone) and, per ray, the bitmask of generators it annihilates.
fn dual_extreme_rays(coords: &[Vec<BigInt>], dim: usize) -> Result<(Vec<Vec<BigInt>>, Vec<u128>)> {
    if dim == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    // Greedy independent subset seeds a simplicial dual cone.
    let mut seed: Vec<usize> = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        if seed.len() == dim {
            break;
        }
        let mut rows: Vec<Vec<BigInt>> = seed.iter().map(|&j| coords[j].clone()).collect();
        rows.push(c.clone());
        if IntMatrix::from_rows(rows).expect("nonempty").rank() == seed.len() + 1 {
            seed.push(i);
        }
    }
    assert_eq!(seed.len(), dim, "generators span the restricted space");

    let seed_mat = IntMatrix::from_rows(seed.iter().map(|&i| coords[i].clone()).collect())
        .expect("nonempty");
    let det = seed_mat.det()?;
    debug_assert!(!det.is_zero());

    // Dual basis rays: ⟨g_{seed[i]}, d_j⟩ = |det| · δ_ij, via adjugate columns.
    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut rhs = vec![BigRational::zero(); dim];
        rhs[j] = BigRational::from_integer(det.abs());
        let col = seed_mat
            .solve_rational_rhs(&rhs)
            .expect("seed matrix is invertible");
        let ints: Vec<BigInt> = col
            .iter()
            .map(|c| {
                debug_assert!(c.is_integer(), "adjugate column is integral");
                c.to_integer()
            })
            .collect();
        rays.push(primitive_int_vec(&ints)?);
    }

    let pairing = |g: &[BigInt], y: &[BigInt]| -> BigInt {
        g.iter().zip(y).map(|(a, b)| a * b).sum()
    };

    let mut processed: Vec<usize> = seed.clone();
    let order: Vec<usize> = (0..coords.len()).filter(|i| !seed.contains(i)).collect();
    for &gi in &order {
        let g = &coords[gi];
        let vals: Vec<BigInt> = rays.iter().map(|y| pairing(g, y)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            processed.push(gi);
            continue;
        }
        // Incidence over the constraints processed so far.
        let masks: Vec<u128> = rays
            .iter()
            .map(|y| incidence_mask(y, coords, &processed, &pairing))
            .collect();
        let mut next: Vec<Vec<BigInt>> = Vec::new();
        for (y, v) in rays.iter().zip(&vals) {
            if !v.is_negative() {
                next.push(y.clone());
            }
        }
        for (pi, vp) in vals.iter().enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (qi, vq) in vals.iter().enumerate() {
                if !vq.is_negative() {
                    continue;
                }
                // Combinatorial adjacency: no third ray's zero set contains
                // the common zero set of the pair.
                let common = masks[pi] & masks[qi];
                let adjacent = masks
                    .iter()
                    .enumerate()
                    .all(|(si, m)| si == pi || si == qi || common & !m != 0);
                if !adjacent {
                    continue;
                }
                let combo: Vec<BigInt> = rays[pi]
                    .iter()
                    .zip(&rays[qi])
                    .map(|(p, q)| vp * q - vq * p)
                    .collect();
                let combo = primitive_int_vec(&combo)?;
                if !next.contains(&combo) {
                    next.push(combo);
                }
            }
        }
        rays = next;
        processed.push(gi);
    }

    rays.sort();
    let masks: Vec<u128> = rays
        .iter()
        .map(|y| incidence_mask(y, coords, &processed, &pairing))
        .collect();
    Ok((rays, masks))
}

fn incidence_mask(
    y: &[BigInt],
    coords: &[Vec<BigInt>],
    processed: &[usize],
    pairing: &impl Fn(&[BigInt], &[BigInt]) -> BigInt,
) -> u128 {
    let mut mask = 0u128;
    for &gi in processed {
        if pairing(&coords[gi], y).is_zero() {
            mask |= 1u128 << gi;
        }
    }
    mask
}

fn primitive_int_vec(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let lv = LatticeVector::new(v.to_vec());
    Ok(lv.primitive()?.coords().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn iv(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant_facets() {
        let geo = generator_geometry(&[lv(&[1, 0]), lv(&[0, 1])], 2).unwrap();
        assert!(geo.pointed);
        assert_eq!(geo.dim, 2);
        assert_eq!(geo.facets, vec![iv(&[0, 1]), iv(&[1, 0])]);
        assert_eq!(geo.extreme.len(), 2);
        assert!(geo.equations.is_empty());
    }

    #[test]
    fn simplicial_three_dim() {
        let geo =
            generator_geometry(&[lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[1, 1, 2])], 3).unwrap();
        assert!(geo.pointed);
        let expect = vec![iv(&[0, 0, 1]), iv(&[0, 2, -1]), iv(&[2, 0, -1])];
        assert_eq!(geo.facets, expect);
        assert_eq!(geo.extreme.len(), 3);
    }

    #[test]
    fn line_is_not_pointed() {
        let geo = generator_geometry(&[lv(&[1, 0]), lv(&[-1, 0])], 2).unwrap();
        assert!(!geo.pointed);
    }

    #[test]
    fn redundant_generator_dropped() {
        // (1,1) lies inside the orthant.
        let geo = generator_geometry(&[lv(&[1, 0]), lv(&[1, 1]), lv(&[0, 1])], 2).unwrap();
        let extreme: Vec<_> = geo.extreme.iter().map(|&i| geo.gens[i].clone()).collect();
        assert_eq!(extreme, vec![lv(&[0, 1]), lv(&[1, 0])]);
    }

    #[test]
    fn lower_dimensional_span() {
        // A single ray in rank 3: one equation pair worth of annihilators.
        let geo = generator_geometry(&[lv(&[2, 4, 6])], 3).unwrap();
        assert!(geo.pointed);
        assert_eq!(geo.dim, 1);
        assert_eq!(geo.gens, vec![lv(&[1, 2, 3])]);
        assert_eq!(geo.equations.len(), 2);
        for e in &geo.equations {
            let dot: BigInt = e.iter().zip(geo.gens[0].coords()).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn square_cone_has_four_facets() {
        let rays = [
            lv(&[0, 0, 1]),
            lv(&[1, 0, 1]),
            lv(&[0, 1, 1]),
            lv(&[1, 1, 1]),
        ];
        let geo = generator_geometry(&rays, 3).unwrap();
        assert!(geo.pointed);
        assert_eq!(geo.facets.len(), 4);
        assert_eq!(geo.extreme.len(), 4);
        // Every generator satisfies every facet.
        for g in &geo.gens {
            for f in &geo.facets {
                let dot: BigInt = f.iter().zip(g.coords()).map(|(a, b)| a * b).sum();
                assert!(!dot.is_negative());
            }
        }
    }
}
