//! Distance kernels, k-NN radii and union-of-balls membership.
//!
//! Everything works on squared Euclidean distances accumulated in `f64`.
//! Square roots are only taken when radii are handed back to callers, and
//! membership tests compare squared distances against squared radii so the
//! k-th neighbor of a center always lies on (and inside) its closed ball.

use std::cmp::Ordering;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::par;

/// Rows of the left operand processed per work item.
pub const DEFAULT_ROW_BLOCK: usize = 256;

/// Squared Euclidean distance between two equal-length rows.
#[inline]
pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let mut ca = a.chunks_exact(4);
    let mut cb = b.chunks_exact(4);
    for (x, y) in (&mut ca).zip(&mut cb) {
        for l in 0..4 {
            let t = x[l] - y[l];
            acc[l] += t * t;
        }
    }
    for (x, y) in ca.remainder().iter().zip(cb.remainder()) {
        let t = x - y;
        acc[0] += t * t;
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3])
}

/// Dense `rows x cols` matrix of squared distances.
#[derive(Debug, Clone, PartialEq)]
pub struct SqDistMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl SqDistMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// All squared distances between rows of `a` and rows of `b`, computed in
/// blocks of at most `row_block` rows of `a`.
pub fn pairwise_sq_dists(a: &PointCloud, b: &PointCloud, row_block: usize) -> Result<SqDistMatrix> {
    a.check_same_dim(b)?;
    if row_block == 0 {
        return Err(Error::InvalidInput("row_block must be positive".into()));
    }
    let cols = b.n();
    let mut data = vec![0.0; a.n() * cols];
    par::for_each_chunk_mut(&mut data, row_block * cols, |block, out| {
        let first = block * row_block;
        for (offset, out_row) in out.chunks_exact_mut(cols).enumerate() {
            let ra = a.row(first + offset);
            for (j, slot) in out_row.iter_mut().enumerate() {
                *slot = sq_dist(ra, b.row(j));
            }
        }
    });
    Ok(SqDistMatrix {
        rows: a.n(),
        cols,
        data,
    })
}

/// Union of closed balls centered at the points of a cloud, each with radius
/// equal to the distance to that point's k-th nearest other point.
#[derive(Debug, Clone)]
pub struct ApproxSupport<'a> {
    centers: &'a PointCloud,
    sq_radii: Vec<f64>,
    k: usize,
}

impl<'a> ApproxSupport<'a> {
    pub fn centers(&self) -> &'a PointCloud {
        self.centers
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sq_radii(&self) -> &[f64] {
        &self.sq_radii
    }

    pub fn radii(&self) -> Vec<f64> {
        self.sq_radii.iter().map(|r| r.sqrt()).collect()
    }

    /// Whether `q` lies in at least one ball.
    pub fn contains(&self, q: &[f64]) -> bool {
        self.centers
            .rows()
            .zip(&self.sq_radii)
            .any(|(c, &r2)| sq_dist(q, c) <= r2)
    }

    /// Whether the ball around center `i` contains at least one row of `targets`.
    pub fn ball_hits(&self, i: usize, targets: &PointCloud) -> bool {
        let c = self.centers.row(i);
        let r2 = self.sq_radii[i];
        targets.rows().any(|t| sq_dist(c, t) <= r2)
    }
}

fn by_distance_then_index(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// Builds the k-NN support estimate of `x`.
pub fn knn_radii(x: &PointCloud, k: usize) -> Result<ApproxSupport<'_>> {
    knn_radii_blocked(x, k, DEFAULT_ROW_BLOCK)
}

/// Like [`knn_radii`] with an explicit work-item size.
pub fn knn_radii_blocked(x: &PointCloud, k: usize, row_block: usize) -> Result<ApproxSupport<'_>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if k >= x.n() {
        return Err(Error::InsufficientSamples { k, n: x.n() });
    }
    if row_block == 0 {
        return Err(Error::InvalidInput("row_block must be positive".into()));
    }
    let n = x.n();
    let mut sq_radii = vec![0.0; n];
    par::for_each_chunk_mut(&mut sq_radii, row_block, |block, out| {
        let mut cand: Vec<(f64, usize)> = Vec::with_capacity(n - 1);
        let first = block * row_block;
        for (offset, slot) in out.iter_mut().enumerate() {
            let i = first + offset;
            let xi = x.row(i);
            cand.clear();
            cand.extend(
                x.rows()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(j, xj)| (sq_dist(xi, xj), j)),
            );
            let (_, kth, _) = cand.select_nth_unstable_by(k - 1, by_distance_then_index);
            *slot = kth.0;
        }
    });
    Ok(ApproxSupport {
        centers: x,
        sq_radii,
        k,
    })
}

/// Number of query rows inside the support (closed balls).
pub fn covered_count(support: &ApproxSupport<'_>, queries: &PointCloud) -> Result<usize> {
    support.centers.check_same_dim(queries)?;
    Ok(par::count_range(queries.n(), |q| {
        support.contains(queries.row(q))
    }))
}

/// Number of support centers whose ball contains at least one target row.
pub fn neighborhoods_hit_count(support: &ApproxSupport<'_>, targets: &PointCloud) -> Result<usize> {
    support.centers.check_same_dim(targets)?;
    Ok(par::count_range(support.centers.n(), |i| {
        support.ball_hits(i, targets)
    }))
}

/// Per point, the squared distances to its nearest and farthest other point.
pub fn neighbor_extremes(x: &PointCloud) -> Result<Vec<(f64, f64)>> {
    if x.n() < 2 {
        return Err(Error::InsufficientSamples { k: 1, n: x.n() });
    }
    Ok(par::map_range(x.n(), |i| {
        let xi = x.row(i);
        x.rows()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, xj)| sq_dist(xi, xj))
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> PointCloud {
        PointCloud::new(xs.to_vec(), xs.len(), 1).unwrap()
    }

    #[test]
    fn pairwise_hand_examples() {
        let a = line(&[0.0, 1.0, 3.0]);
        let m = pairwise_sq_dists(&a, &a, 2).unwrap();
        assert_eq!(m.as_slice(), &[0.0, 1.0, 9.0, 1.0, 0.0, 4.0, 9.0, 4.0, 0.0]);

        let o = PointCloud::from_rows(&[[0.0, 0.0]]).unwrap();
        assert_eq!(pairwise_sq_dists(&o, &o, 1).unwrap().as_slice(), &[0.0]);

        let p = PointCloud::from_rows(&[[3.0, 4.0]]).unwrap();
        assert_eq!(pairwise_sq_dists(&p, &o, 8).unwrap().get(0, 0), 25.0);
    }

    #[test]
    fn pairwise_dimension_mismatch() {
        let a = line(&[0.0]);
        let b = PointCloud::from_rows(&[[0.0, 0.0]]).unwrap();
        assert!(matches!(
            pairwise_sq_dists(&a, &b, 4),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn radii_hand_examples() {
        let x = line(&[0.0, 1.0, 3.0]);
        assert_eq!(knn_radii(&x, 1).unwrap().radii(), vec![1.0, 1.0, 2.0]);
        assert_eq!(knn_radii(&x, 2).unwrap().radii(), vec![3.0, 2.0, 3.0]);
    }

    #[test]
    fn radii_duplicates_are_zero() {
        let x = line(&[4.0, 0.0, 4.0, 9.0]);
        let r = knn_radii(&x, 1).unwrap().radii();
        assert_eq!(r[0], 0.0);
        assert_eq!(r[2], 0.0);
    }

    #[test]
    fn radii_need_enough_points() {
        let x = line(&[0.0, 1.0]);
        assert!(matches!(
            knn_radii(&x, 2),
            Err(Error::InsufficientSamples { k: 2, n: 2 })
        ));
        assert!(knn_radii(&x, 0).is_err());
    }

    #[test]
    fn covered_examples() {
        let x = line(&[0.0, 2.0]);
        let s = knn_radii(&x, 1).unwrap();
        assert_eq!(s.radii(), vec![2.0, 2.0]);
        assert_eq!(covered_count(&s, &line(&[1.0, 5.0])).unwrap(), 1);
        assert_eq!(covered_count(&s, &x).unwrap(), 2);
        assert_eq!(covered_count(&s, &line(&[100.0, -50.0])).unwrap(), 0);
    }

    #[test]
    fn boundary_is_inclusive() {
        // (4) sits exactly on the ball of (2) with radius 2.
        let x = line(&[0.0, 2.0]);
        let s = knn_radii(&x, 1).unwrap();
        assert_eq!(covered_count(&s, &line(&[4.0])).unwrap(), 1);
    }

    #[test]
    fn hit_examples() {
        let x = line(&[1.0, 5.0]);
        let s = knn_radii(&x, 1).unwrap();
        assert_eq!(s.radii(), vec![4.0, 4.0]);
        assert_eq!(neighborhoods_hit_count(&s, &line(&[0.0, 2.0])).unwrap(), 2);
        assert_eq!(neighborhoods_hit_count(&s, &x).unwrap(), 2);

        let tight = line(&[0.0, 0.1, 10.0, 10.1]);
        let s = knn_radii(&tight, 1).unwrap();
        assert_eq!(neighborhoods_hit_count(&s, &line(&[5.0, 20.0])).unwrap(), 0);
    }

    #[test]
    fn extremes_on_a_line() {
        let x = line(&[0.0, 1.0, 3.0]);
        let e = neighbor_extremes(&x).unwrap();
        assert_eq!(e, vec![(1.0, 9.0), (1.0, 4.0), (4.0, 9.0)]);
    }
}
