use rayon::prelude::*;

use crate::{Error, Result};

fn dist2<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Largest distance from a point of `from` to its nearest point in `to`.
fn directed<const N: usize>(from: &[[f64; N]], to: &[[f64; N]]) -> f64 {
    from.par_iter()
        .map(|p| to.iter().map(|q| dist2(p, q)).fold(f64::INFINITY, f64::min))
        .reduce(|| 0.0, f64::max)
        .sqrt()
}

/// Hausdorff distance between two finite point clouds (brute force).
pub fn hausdorff_distance<const N: usize>(cloud_a: &[[f64; N]], cloud_b: &[[f64; N]]) -> Result<f64> {
    if cloud_a.is_empty() || cloud_b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    Ok(directed(cloud_a, cloud_b).max(directed(cloud_b, cloud_a)))
}
