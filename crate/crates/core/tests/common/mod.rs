#![allow(dead_code)]

use corrclust::distance::DistanceMatrix;
use corrclust::{DataMatrix, Partition};
use rand::Rng;

pub const TABLE1_ROWS: [[f64; 6]; 6] = [
    [-0.440, 0.563, -0.452, -1.155, 1.125, 1.162],
    [-0.531, -0.785, -0.340, -0.793, 0.682, 1.003],
    [0.613, 1.310, -1.582, -2.209, 1.442, 1.966],
    [-0.912, -1.765, -0.491, -0.796, -1.520, -1.820],
    [1.743, 2.185, -1.480, 0.003, 1.010, 1.216],
    [0.422, 0.072, 1.604, 1.136, -0.064, 0.238],
];

/// Correlation distances of the worked-example columns, from a separate two-pass
/// correlation routine written outside this crate.
pub const TABLE1_DISTANCES: [[f64; 6]; 6] = [
    [0.0, 0.468490718256, 1.607697751366, 1.227678481294, 0.984014108641, 0.959000218149],
    [0.468490718256, 0.0, 1.697015029022, 1.451132224339, 0.641287718547, 0.661271236298],
    [1.607697751366, 1.697015029022, 0.0, 0.726675699636, 1.687442822032, 1.653807726984],
    [1.227678481294, 1.451132224339, 0.726675699636, 0.0, 1.646581137776, 1.623685383070],
    [0.984014108641, 0.641287718547, 1.687442822032, 1.646581137776, 0.0, 0.141183652259],
    [0.959000218149, 0.661271236298, 1.653807726984, 1.623685383070, 0.141183652259, 0.0],
];

pub fn table1() -> DataMatrix {
    let rows: Vec<Vec<f64>> = TABLE1_ROWS.iter().map(|r| r.to_vec()).collect();
    DataMatrix::from_rows(&rows, None).unwrap()
}

pub fn table1_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/table1.csv")
}

pub fn partition(p: usize, clusters: &[&[usize]]) -> Partition {
    Partition::new(p, clusters.iter().map(|c| c.to_vec()).collect()).unwrap()
}

/// Symmetric matrix with entries in `[0, 2]`. With `coarse`, entries are
/// multiples of 0.25 so that ties are common.
pub fn random_distances<R: Rng>(rng: &mut R, p: usize, coarse: bool) -> DistanceMatrix {
    let mut d = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..i {
            let v: f64 = if coarse {
                f64::from(rng.random_range(0..=8u32)) * 0.25
            } else {
                rng.random_range(0.0..=2.0)
            };
            d[i * p + j] = v;
            d[j * p + i] = v;
        }
    }
    DistanceMatrix::new(p, d).unwrap()
}

/// Random data matrix with real correlation structure.
pub fn random_data<R: Rng>(rng: &mut R, n: usize, p: usize) -> DataMatrix {
    let base: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let cols = (0..p)
        .map(|_| {
            let w: f64 = rng.random_range(-1.0..1.0);
            base.iter().map(|b| w * b + rng.random_range(-1.0..1.0)).collect()
        })
        .collect();
    DataMatrix::from_columns(cols).unwrap()
}

/// Single linkage by brute force: at every step recompute the minimum
/// cross-cluster distance for every pair of clusters. Returns the merge
/// heights and the partition at every level (index = number of clusters - 1).
pub fn naive_single_linkage(d: &DistanceMatrix) -> (Vec<f64>, Vec<Partition>) {
    let p = d.p();
    let mut clusters: Vec<Vec<usize>> = (0..p).map(|i| vec![i]).collect();
    let mut heights = Vec::new();
    let mut levels = vec![Partition::new(p, clusters.clone()).unwrap()];
    while clusters.len() > 1 {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in 0..clusters.len() {
                if a == b {
                    continue;
                }
                let (ka, kb) = (clusters[a][0], clusters[b][0]);
                if ka > kb {
                    continue;
                }
                let mut m = f64::INFINITY;
                for &i in &clusters[a] {
                    for &j in &clusters[b] {
                        m = m.min(d.get(i, j));
                    }
                }
                let better = match best {
                    None => true,
                    Some((bm, bka, bkb, _, _)) => m < bm || (m == bm && (ka, kb) < (bka, bkb)),
                };
                if better {
                    best = Some((m, ka, kb, a, b));
                }
            }
        }
        let (h, _, _, a, b) = best.unwrap();
        heights.push(h);
        let moved = clusters[b].clone();
        clusters[a].extend(moved);
        clusters[a].sort_unstable();
        clusters.remove(b);
        levels.push(Partition::new(p, clusters.clone()).unwrap());
    }
    levels.reverse();
    (heights, levels)
}

fn combinations(p: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, p: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..p {
            cur.push(i);
            rec(i + 1, p, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, p, k, &mut Vec::new(), &mut out);
    out
}

fn medoid_cost(d: &DistanceMatrix, medoids: &[usize]) -> f64 {
    let mut total = 0.0;
    for i in 0..d.p() {
        let mut best = f64::INFINITY;
        for &m in medoids {
            if d.get(i, m) < best {
                best = d.get(i, m);
            }
        }
        total += best;
    }
    total
}

/// Global k-medoid optimum over all `C(p, k)` medoid sets.
pub fn exhaustive_medoid_optimum(d: &DistanceMatrix, k: usize) -> f64 {
    combinations(d.p(), k)
        .iter()
        .map(|m| medoid_cost(d, m))
        .fold(f64::INFINITY, f64::min)
}

/// True when two medoid sets of equal size (at most `k`) have the same cost.
/// Under such a tie the index-order tie-break decides, so the PAM result is
/// not invariant under relabelling.
pub fn has_tied_medoid_sets(d: &DistanceMatrix, k: usize) -> bool {
    (1..=k).any(|size| {
        let mut costs: Vec<f64> = combinations(d.p(), size).iter().map(|m| medoid_cost(d, m)).collect();
        costs.sort_by(f64::total_cmp);
        costs.windows(2).any(|w| w[1] - w[0] <= 1e-12 * w[1].abs().max(1.0))
    })
}

/// Objective of every single medoid/non-medoid exchange.
pub fn swap_neighbours(d: &DistanceMatrix, medoids: &[usize]) -> Vec<f64> {
    let mut out = Vec::new();
    for slot in 0..medoids.len() {
        for h in 0..d.p() {
            if medoids.contains(&h) {
                continue;
            }
            let mut trial = medoids.to_vec();
            trial[slot] = h;
            out.push(medoid_cost(d, &trial));
        }
    }
    out
}

/// A uniformly random permutation of `0..p`.
pub fn permutation<R: Rng>(rng: &mut R, p: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..p).collect();
    for i in (1..p).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    perm
}

/// Partition of the relabelled variables: variable `a` of the permuted
/// problem is variable `perm[a]` of the original.
pub fn relabel(part: &Partition, perm: &[usize]) -> Partition {
    let p = perm.len();
    let mut inverse = vec![0; p];
    for (a, &orig) in perm.iter().enumerate() {
        inverse[orig] = a;
    }
    Partition::new(
        p,
        part.clusters().iter().map(|c| c.iter().map(|&i| inverse[i]).collect()).collect(),
    )
    .unwrap()
}
