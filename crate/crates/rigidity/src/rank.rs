//! Numerical rank decisions via singular values.
//!
//! Every dimension claim in this crate flows through [`svd_rank`], which
//! refuses to answer when the singular spectrum has no clear gap at the
//! threshold: a silently misjudged rank is worse than an error.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Width of the ambiguity window above the threshold: any singular value in
/// (τ, GAP_FACTOR·τ] makes the rank decision an error.
pub const GAP_FACTOR: f64 = 10.0;

/// Singular values in non-increasing order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

fn decide_rank(sv: &[f64], rel_tol: f64) -> Result<usize> {
    let sigma_max = sv.first().cloned().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return Ok(0);
    }
    let threshold = rel_tol * sigma_max;
    // Any singular value in the window (τ, GAP_FACTOR·τ] is too close to the
    // threshold to call: refuse to assign a rank.
    if let Some(&sigma) = sv
        .iter()
        .find(|&&s| s > threshold && s <= GAP_FACTOR * threshold)
    {
        return Err(Error::RankAmbiguous {
            sigma,
            lo: threshold,
            hi: GAP_FACTOR * threshold,
        });
    }
    Ok(sv.iter().filter(|&&s| s > threshold).count())
}

/// Rank of `m` with relative singular-value threshold `rel_tol · σ_max`.
pub fn svd_rank(m: &DMatrix<f64>, rel_tol: f64) -> Result<usize> {
    decide_rank(&singular_values(m), rel_tol)
}

/// Orthonormal basis of the (numerical) kernel of `m`, returned as columns.
pub fn kernel_basis(m: &DMatrix<f64>, rel_tol: f64) -> Result<DMatrix<f64>> {
    let svd = m.clone().svd(false, true);
    // nalgebra does not guarantee singular-value ordering: sort indices.
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let rank = decide_rank(&sv, rel_tol)?;
    let v_t = svd.v_t.expect("svd requested right singular vectors");
    let n = m.ncols();
    let mut basis = DMatrix::zeros(n, n - rank);
    // Rows of v_t beyond the rank (in sorted order) span part of the kernel;
    // a thin SVD of a wide matrix only provides min(nrows, ncols) rows, so
    // the rest of the kernel is completed as the orthogonal complement of
    // the row space.
    let mut k = 0;
    for &idx in order.iter().skip(rank) {
        basis.set_column(k, &v_t.row(idx).transpose());
        k += 1;
    }
    if k < n - rank {
        // Orthogonal projector onto the complement of the row space and of
        // the kernel vectors found so far; its unit eigendirections complete
        // the kernel basis.
        let mut known = DMatrix::zeros(n, rank + k);
        for (col, &idx) in order.iter().take(rank).enumerate() {
            known.set_column(col, &v_t.row(idx).transpose());
        }
        for col in 0..k {
            known.set_column(rank + col, &basis.column(col).into_owned());
        }
        let proj = DMatrix::identity(n, n) - &known * known.transpose();
        let psvd = proj.svd(true, false);
        let u = psvd.u.expect("svd requested left singular vectors");
        for i in 0..psvd.singular_values.len() {
            if k == n - rank {
                break;
            }
            if psvd.singular_values[i] > 0.5 {
                basis.set_column(k, &u.column(i).into_owned());
                k += 1;
            }
        }
        assert_eq!(k, n - rank, "kernel completion failed");
    }
    Ok(basis)
}

/// Orthonormal basis of the (numerical) column space of `m`.
pub fn column_space_basis(m: &DMatrix<f64>, rel_tol: f64) -> Result<DMatrix<f64>> {
    let svd = m.clone().svd(true, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = decide_rank(&sv, rel_tol)?;
    let u = svd.u.expect("svd requested left singular vectors");
    // Singular values come ordered from nalgebra; keep the leading columns.
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let mut basis = DMatrix::zeros(m.nrows(), rank);
    for (k, &idx) in order.iter().take(rank).enumerate() {
        basis.set_column(k, &u.column(idx).into_owned());
    }
    Ok(basis)
}

/// Euclidean distance from `v` to the column space spanned by the
/// orthonormal columns of `basis`.
pub fn distance_to_span(basis: &DMatrix<f64>, v: &nalgebra::DVector<f64>) -> f64 {
    let proj = basis * (basis.transpose() * v);
    (v - proj).norm()
}
