use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::model::Partition;

/// Medoids, the medoid each column is assigned to, and the total distance
/// of the columns to their medoids.
#[derive(Debug, Clone, PartialEq)]
pub struct PamState {
    pub medoids: Vec<usize>,
    pub assignment: Vec<usize>,
    pub objective: f64,
}

/// Sum over all columns of the distance to the nearest medoid.
pub fn objective(d: &DistanceMatrix, medoids: &[usize]) -> f64 {
    (0..d.p())
        .map(|i| medoids.iter().map(|&m| d.get(i, m)).fold(f64::INFINITY, f64::min))
        .sum()
}

fn assign(d: &DistanceMatrix, medoids: &[usize]) -> Vec<usize> {
    (0..d.p())
        .map(|i| {
            if medoids.contains(&i) {
                return i;
            }
            // medoids are ascending, so the first strict minimum is the lowest index
            let mut best = medoids[0];
            for &m in &medoids[1..] {
                if d.get(i, m) < d.get(i, best) {
                    best = m;
                }
            }
            best
        })
        .collect()
}

fn build(d: &DistanceMatrix, k: usize) -> Vec<usize> {
    let mut medoids: Vec<usize> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(f64, usize)> = None;
        for h in 0..d.p() {
            if medoids.contains(&h) {
                continue;
            }
            medoids.push(h);
            let cost = objective(d, &medoids);
            medoids.pop();
            if best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, h));
            }
        }
        medoids.push(best.expect("k <= p leaves a candidate").1);
    }
    medoids.sort_unstable();
    medoids
}

/// Partitioning around medoids: greedy BUILD followed by SWAP.
///
/// SWAP applies the single best medoid/non-medoid exchange for as long as it
/// strictly lowers the objective. Ties are resolved towards the lowest
/// `(medoid, candidate)` pair, so the result is deterministic.
pub fn pam(d: &DistanceMatrix, k: usize) -> Result<(Partition, PamState)> {
    let p = d.p();
    if k == 0 || k > p {
        return Err(Error::Domain(format!("k={k} outside 1..={p}")));
    }
    let mut medoids = build(d, k);
    let mut current = objective(d, &medoids);

    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for slot in 0..k {
            for h in (0..p).filter(|h| !medoids.contains(h)) {
                let mut trial = medoids.clone();
                trial[slot] = h;
                let cost = objective(d, &trial);
                if cost < current && best.is_none_or(|(c, _, _)| cost < c) {
                    best = Some((cost, slot, h));
                }
            }
        }
        let Some((cost, slot, h)) = best else { break };
        medoids[slot] = h;
        medoids.sort_unstable();
        current = cost;
    }

    let assignment = assign(d, &medoids);
    let partition = Partition::from_labels(&assignment);
    Ok((
        partition,
        PamState {
            objective: objective(d, &medoids),
            medoids,
            assignment,
        },
    ))
}
