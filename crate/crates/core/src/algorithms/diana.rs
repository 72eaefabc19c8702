use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::model::Partition;

fn diameter(d: &DistanceMatrix, c: &[usize]) -> f64 {
    let mut out = 0.0f64;
    for (x, &i) in c.iter().enumerate() {
        for &j in &c[x + 1..] {
            out = out.max(d.get(i, j));
        }
    }
    out
}

fn mean_to(d: &DistanceMatrix, i: usize, group: &[usize]) -> f64 {
    let (sum, cnt) = group
        .iter()
        .filter(|&&j| j != i)
        .fold((0.0, 0usize), |(s, c), &j| (s + d.get(i, j), c + 1));
    sum / cnt as f64
}

/// Splits `cluster` (ascending, at least two members) into `(remaining, splinter)`.
fn split(d: &DistanceMatrix, cluster: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut old = cluster.to_vec();

    let mut seed = (f64::NEG_INFINITY, 0);
    for (x, &i) in old.iter().enumerate() {
        let v = mean_to(d, i, &old);
        if v > seed.0 {
            seed = (v, x);
        }
    }
    let mut splinter = vec![old.remove(seed.1)];

    // move the member that most prefers the splinter group, one at a time
    while old.len() > 1 {
        let mut best: Option<(f64, usize)> = None;
        for (x, &i) in old.iter().enumerate() {
            let gain = mean_to(d, i, &old) - mean_to(d, i, &splinter);
            if gain > 0.0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, x));
            }
        }
        match best {
            Some((_, x)) => splinter.push(old.remove(x)),
            None => break,
        }
    }
    splinter.sort_unstable();
    (old, splinter)
}

/// The divisive hierarchy from one cluster down to `k` clusters.
/// Entry `j` is the level with `j + 1` clusters.
pub fn diana_levels(d: &DistanceMatrix, k: usize) -> Result<Vec<Partition>> {
    let p = d.p();
    if k == 0 || k > p {
        return Err(Error::Domain(format!("k={k} outside 1..={p}")));
    }
    let mut clusters: Vec<Vec<usize>> = vec![(0..p).collect()];
    let mut levels = vec![Partition::whole(p)];
    while clusters.len() < k {
        // largest diameter among splittable clusters, lowest minimum member on ties
        let mut target: Option<(f64, usize)> = None;
        for (x, c) in clusters.iter().enumerate() {
            if c.len() < 2 {
                continue;
            }
            let dia = diameter(d, c);
            let better = match target {
                None => true,
                Some((best, bx)) => dia > best || (dia == best && c[0] < clusters[bx][0]),
            };
            if better {
                target = Some((dia, x));
            }
        }
        let (_, x) = target.expect("fewer than p clusters leaves one with two members");
        let (old, splinter) = split(d, &clusters[x]);
        clusters[x] = old;
        clusters.push(splinter);
        levels.push(Partition::new(p, clusters.clone())?);
    }
    Ok(levels)
}

/// Divisive analysis clustering stopped at `k` clusters.
pub fn diana(d: &DistanceMatrix, k: usize) -> Result<Partition> {
    let mut levels = diana_levels(d, k)?;
    Ok(levels.pop().expect("at least one level"))
}
