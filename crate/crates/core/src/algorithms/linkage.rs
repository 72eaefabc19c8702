use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::model::Partition;

/// One agglomeration step. Clusters are named by their smallest member,
/// so `a < b` identifies the two clusters joined at `height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    leaf_count: usize,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    /// Partition with exactly `k` clusters: replay all but the last `k - 1` merges.
    pub fn cut(&self, k: usize) -> Result<Partition> {
        let p = self.leaf_count;
        if k == 0 || k > p {
            return Err(Error::Domain(format!("cut at k={k} outside 1..={p}")));
        }
        // parent pointers always point at the smaller representative
        let mut parent: Vec<usize> = (0..p).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for m in &self.merges[..p - k] {
            let ra = find(&mut parent, m.a);
            let rb = find(&mut parent, m.b);
            parent[ra.max(rb)] = ra.min(rb);
        }
        let roots: Vec<usize> = (0..p).map(|i| find(&mut parent, i)).collect();
        Ok(Partition::from_labels(&roots))
    }
}

/// Agglomerative single-linkage clustering.
///
/// Cluster distances are maintained with the min update rule. Among equally
/// close pairs the one with the lexicographically smallest
/// `(min member, min member)` key is merged first.
pub fn single_linkage(d: &DistanceMatrix) -> Dendrogram {
    let p = d.p();
    let mut dist: Vec<f64> = (0..p * p).map(|x| d.get(x / p, x % p)).collect();
    // active clusters, by representative, kept ascending
    let mut active: Vec<usize> = (0..p).collect();
    let mut merges = Vec::with_capacity(p.saturating_sub(1));

    while active.len() > 1 {
        let mut best = (f64::INFINITY, 0, 0);
        for (x, &a) in active.iter().enumerate() {
            for &b in &active[x + 1..] {
                let v = dist[a * p + b];
                if v < best.0 {
                    best = (v, a, b);
                }
            }
        }
        let (height, a, b) = best;
        merges.push(Merge { a, b, height });
        active.retain(|&c| c != b);
        for &c in &active {
            if c != a {
                let v = dist[a * p + c].min(dist[b * p + c]);
                dist[a * p + c] = v;
                dist[c * p + a] = v;
            }
        }
    }
    Dendrogram { leaf_count: p, merges }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_leaves() {
        let d = DistanceMatrix::new(2, vec![0.0, 0.7, 0.7, 0.0]).unwrap();
        let dendro = single_linkage(&d);
        assert_eq!(dendro.merges(), &[Merge { a: 0, b: 1, height: 0.7 }]);
    }

    #[test]
    fn perfect_correlations() {
        // X2 = 2 X1, X3 = -X1
        let d = DistanceMatrix::new(3, vec![0.0, 0.0, 2.0, 0.0, 0.0, 2.0, 2.0, 2.0, 0.0]).unwrap();
        let dendro = single_linkage(&d);
        assert_eq!(
            dendro.merges(),
            &[Merge { a: 0, b: 1, height: 0.0 }, Merge { a: 0, b: 2, height: 2.0 }]
        );
    }

    #[test]
    fn cut_bounds() {
        let d = DistanceMatrix::new(3, vec![0.0, 0.2, 1.0, 0.2, 0.0, 0.6, 1.0, 0.6, 0.0]).unwrap();
        let dendro = single_linkage(&d);
        assert_eq!(dendro.cut(1).unwrap(), Partition::whole(3));
        assert_eq!(dendro.cut(3).unwrap(), Partition::singletons(3));
        assert_eq!(dendro.cut(2).unwrap().to_string(), "{X1,X2}|{X3}");
        assert!(dendro.cut(0).is_err());
        assert!(dendro.cut(4).is_err());
    }

    #[test]
    fn ties_merge_lowest_pair_first() {
        let d = DistanceMatrix::new(4, vec![
            0.0, 1.0, 0.5, 0.5, //
            1.0, 0.0, 0.5, 1.0, //
            0.5, 0.5, 0.0, 1.0, //
            0.5, 1.0, 1.0, 0.0,
        ])
        .unwrap();
        let m = single_linkage(&d).merges().to_vec();
        assert_eq!((m[0].a, m[0].b), (0, 2));
        assert_eq!((m[1].a, m[1].b), (0, 1));
        assert_eq!((m[2].a, m[2].b), (0, 3));
    }
}
