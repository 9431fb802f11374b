#![allow(dead_code)]

use genpr::rng::RngSpec;
use genpr::PointCloud;

/// Euclidean distance, straight from the definition.
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Radius of each point's ball: distance to its k-th nearest other point,
/// found by fully sorting all distances.
pub fn oracle_radii(x: &[Vec<f64>], k: usize) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut ds: Vec<f64> = (0..x.len())
                .filter(|&j| j != i)
                .map(|j| dist(&x[i], &x[j]))
                .collect();
            ds.sort_by(|a, b| a.partial_cmp(b).unwrap());
            ds[k - 1]
        })
        .collect()
}

/// Fraction of `queries` inside the union of closed balls around `centers`.
pub fn oracle_inside(centers: &[Vec<f64>], k: usize, queries: &[Vec<f64>]) -> f64 {
    let radii = oracle_radii(centers, k);
    let mut hits = 0;
    for q in queries {
        let mut inside = false;
        for (c, r) in centers.iter().zip(&radii) {
            if dist(q, c) <= *r {
                inside = true;
            }
        }
        if inside {
            hits += 1;
        }
    }
    hits as f64 / queries.len() as f64
}

/// Fraction of `centers` whose ball contains at least one of `targets`.
pub fn oracle_hits(centers: &[Vec<f64>], k: usize, targets: &[Vec<f64>]) -> f64 {
    let radii = oracle_radii(centers, k);
    let mut hits = 0;
    for (c, r) in centers.iter().zip(&radii) {
        if targets.iter().any(|t| dist(c, t) <= *r) {
            hits += 1;
        }
    }
    hits as f64 / centers.len() as f64
}

/// [precision, recall, c_precision, c_recall, sym_precision, sym_recall] by double loops.
pub fn oracle_report(real: &[Vec<f64>], gen: &[Vec<f64>], k: usize) -> [f64; 6] {
    let p = oracle_inside(real, k, gen);
    let r = oracle_inside(gen, k, real);
    let cp = oracle_hits(gen, k, real);
    let cr = oracle_hits(real, k, gen);
    [p, r, cp, cr, p.min(cp), r.min(cr)]
}

pub fn rows(c: &PointCloud) -> Vec<Vec<f64>> {
    c.rows().map(|r| r.to_vec()).collect()
}

pub fn cloud(rows: &[Vec<f64>]) -> PointCloud {
    PointCloud::from_rows(rows).unwrap()
}

/// Uniform cloud in [-1, 1]^d from a seeded stream; `grid` snaps to multiples
/// of 1/4 so that ties and duplicates show up.
pub fn random_rows(n: usize, d: usize, rng: RngSpec, grid: bool) -> Vec<Vec<f64>> {
    let mut s = rng.generator();
    (0..n)
        .map(|_| {
            (0..d)
                .map(|_| {
                    let v = 2.0 * s.uniform_open() - 1.0;
                    if grid {
                        (v * 4.0).round() / 4.0
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// Random orthogonal matrix by Gram-Schmidt on Gaussian columns (row-major).
pub fn random_orthogonal(d: usize, rng: RngSpec) -> Vec<Vec<f64>> {
    let mut s = rng.generator();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| s.normal()).collect();
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

pub fn rigid_motion(rows: &[Vec<f64>], q: &[Vec<f64>], shift: &[f64]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|x| {
            q.iter()
                .zip(shift)
                .map(|(qr, t)| qr.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + t)
                .collect()
        })
        .collect()
}
