use std::fmt;

use crate::error::{Error, Result};
use crate::model::matrix::default_labels;

/// A hard partition of the column indices `0..p` into nonempty, disjoint
/// clusters.
///
/// Always held in canonical form: members ascending within each cluster,
/// clusters ordered by their smallest member. Two partitions are therefore
/// equal as sets of sets exactly when they are equal as values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    p: usize,
    clusters: Vec<Vec<usize>>,
}

/// Validates `clusters` as a partition of `0..p` and returns its canonical form.
pub fn canonicalize(p: usize, clusters: Vec<Vec<usize>>) -> Result<Partition> {
    let mut seen = vec![false; p];
    let mut out = Vec::with_capacity(clusters.len());
    for mut c in clusters {
        if c.is_empty() {
            return Err(Error::Structural("empty cluster".into()));
        }
        for &i in &c {
            if i >= p {
                return Err(Error::Structural(format!("index {i} outside 0..{p}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Structural(format!("index {i} appears in two clusters")));
            }
        }
        c.sort_unstable();
        out.push(c);
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::Structural(format!("index {i} is not covered")));
    }
    out.sort_unstable_by_key(|c| c[0]);
    Ok(Partition { p, clusters: out })
}

/// Binary correctness check: true iff both partitions group the columns
/// identically, regardless of cluster labelling.
pub fn partitions_equal(a: &Partition, b: &Partition) -> Result<bool> {
    if a.p != b.p {
        return Err(Error::Structural(format!(
            "partitions over different universes ({} vs {})",
            a.p, b.p
        )));
    }
    Ok(a.clusters == b.clusters)
}

impl Partition {
    pub fn new(p: usize, clusters: Vec<Vec<usize>>) -> Result<Self> {
        canonicalize(p, clusters)
    }

    /// Groups columns by an arbitrary label per column.
    pub fn from_labels<L: PartialEq>(labels: &[L]) -> Self {
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        let mut keys: Vec<&L> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            match keys.iter().position(|k| *k == l) {
                Some(c) => clusters[c].push(i),
                None => {
                    keys.push(l);
                    clusters.push(vec![i]);
                }
            }
        }
        // first-seen order already sorts clusters by minimum member
        Self {
            p: labels.len(),
            clusters,
        }
    }

    pub fn whole(p: usize) -> Self {
        Self {
            p,
            clusters: vec![(0..p).collect()],
        }
    }

    pub fn singletons(p: usize) -> Self {
        Self {
            p,
            clusters: (0..p).map(|i| vec![i]).collect(),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.clusters.len()
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    /// Cluster position of every column.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.p];
        for (c, members) in self.clusters.iter().enumerate() {
            for &i in members {
                out[i] = c;
            }
        }
        out
    }

    /// True if every cluster of `self` lies inside a single cluster of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.p != coarser.p {
            return false;
        }
        let outer = coarser.labels();
        self.clusters
            .iter()
            .all(|c| c.iter().all(|&i| outer[i] == outer[c[0]]))
    }

    /// Renders as `{A,B}|{C}` using the given column labels.
    pub fn render(&self, labels: &[String]) -> String {
        self.clusters
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&i| labels[i].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Parses the `{A,B}|{C}` grammar, resolving member names against `labels`.
    /// Whitespace anywhere between tokens is ignored.
    pub fn parse(text: &str, labels: &[String]) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Structural("empty partition text".into()));
        }
        let mut clusters = Vec::new();
        for group in compact.split('|') {
            let inner = group
                .strip_prefix('{')
                .and_then(|g| g.strip_suffix('}'))
                .ok_or_else(|| Error::Structural(format!("malformed cluster `{group}`")))?;
            let members = inner
                .split(',')
                .map(|name| {
                    labels
                        .iter()
                        .position(|l| l == name)
                        .ok_or_else(|| Error::Structural(format!("unknown column `{name}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            clusters.push(members);
        }
        canonicalize(labels.len(), clusters)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_labels(self.p)))
    }
}
