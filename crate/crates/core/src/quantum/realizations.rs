//! Known projector realizations, usable as seeds for the unitary search.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::linalg::ComplexMatrix;
use super::projectors::ProjectorSet;
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::graph::catalog::YU_OH_RAYS;

/// The 13 Yu–Oh rays in dimension 3, realizing `G_YO`.
pub fn yu_oh() -> ProjectorSet {
    let rays: Vec<Vec<f64>> = YU_OH_RAYS.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    ProjectorSet::from_real_rays(&rays).expect("Yu-Oh rays are nonzero")
}

/// Pentagram rays in dimension 3 realizing `C5`: vertex `k` is orthogonal
/// to `k ± 1 (mod 5)`.
pub fn kcbs() -> ProjectorSet {
    let c = (PI / 5.0).cos();
    let cos_t = (c / (1.0 + c)).sqrt();
    let sin_t = (1.0 - cos_t * cos_t).sqrt();
    let rays: Vec<Vec<f64>> = (0..5)
        .map(|k| {
            let phi = 4.0 * PI * k as f64 / 5.0;
            vec![cos_t, sin_t * phi.cos(), sin_t * phi.sin()]
        })
        .collect();
    ProjectorSet::from_real_rays(&rays).expect("pentagram rays are nonzero")
}

/// The pure state along the pentagram's symmetry axis.
pub fn kcbs_state() -> DensityMatrix {
    DensityMatrix::pure_real(&[1.0, 0.0, 0.0]).expect("unit vector")
}

/// Rank-1 projectors onto the standard basis of dimension `d`, realizing `K_d`.
pub fn standard_basis(d: usize) -> Result<ProjectorSet> {
    if d == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let rays: Vec<Vec<f64>> = (0..d).map(|k| (0..d).map(|j| if j == k { 1.0 } else { 0.0 }).collect()).collect();
    ProjectorSet::from_real_rays(&rays)
}

/// Block-diagonal realization of the join: projectors of `a` act on the
/// first block, those of `b` on the second.
pub fn direct_sum(a: &ProjectorSet, b: &ProjectorSet) -> Result<ProjectorSet> {
    if a.rank() != b.rank() {
        return Err(Error::Domain(format!("ranks differ: {} and {}", a.rank(), b.rank())));
    }
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let embed = |p: &ComplexMatrix, offset: usize| {
        let mut m = ComplexMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
        m.view_mut((offset, offset), (p.nrows(), p.ncols())).copy_from(p);
        m
    };
    let projectors =
        a.projectors().iter().map(|p| embed(p, 0)).chain(b.projectors().iter().map(|p| embed(p, da))).collect();
    ProjectorSet::new(d, a.rank(), projectors)
}

/// Seed realization for a catalog graph, when one is known.
pub fn seed_realization(name: &str) -> Result<ProjectorSet> {
    let complete = name.strip_prefix("K_").or_else(|| name.strip_prefix('K')).and_then(|s| s.parse::<usize>().ok());
    match name {
        "G_YO" => Ok(yu_oh()),
        "J_GYO_GYO" => direct_sum(&yu_oh(), &yu_oh()),
        "C5" | "odd_cycle_5" => Ok(kcbs()),
        _ => match complete {
            Some(d) if d >= 1 => standard_basis(d),
            _ => Err(Error::NoSeedRealization(name.to_string())),
        },
    }
}
