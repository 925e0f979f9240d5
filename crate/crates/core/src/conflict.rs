use crate::bitset::Bits;
use crate::family::{t_intersects, SetFamily};

/// Members `i != j` are adjacent when they fail to t-intersect; member `i` is
/// self-conflicted when `|F_i| < t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    t: usize,
    adjacency: Vec<Bits>,
    self_conflict: Bits,
}

impl ConflictGraph {
    pub fn new(f: &SetFamily, t: usize) -> Self {
        let n = f.len();
        let mut adjacency = vec![Bits::new(n); n];
        let mut self_conflict = Bits::new(n);
        let m = f.members();
        for i in 0..n {
            if m[i].len() < t {
                self_conflict.insert(i);
            }
            for j in i + 1..n {
                if !t_intersects(&m[i], &m[j], t) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        ConflictGraph {
            t,
            adjacency,
            self_conflict,
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &Bits {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count()
    }

    pub fn is_self_conflicted(&self, i: usize) -> bool {
        self.self_conflict.contains(i)
    }

    pub fn self_conflicts(&self) -> &Bits {
        &self.self_conflict
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Bits::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.adjacency.iter().enumerate() {
            out.extend(row.iter().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    /// The t-intersection graph: complement of the adjacency, no loops.
    pub fn compatibility(&self) -> Vec<Bits> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| {
                let mut b = Bits::full(n);
                b.difference_with(&self.adjacency[i]);
                b.remove(i);
                b
            })
            .collect()
    }

    /// Neighborhoods as `u64` masks; `None` when there are more than 64 members.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.vertex_count() > 64 {
            return None;
        }
        Some(
            self.adjacency
                .iter()
                .map(|b| b.iter().fold(0u64, |m, j| m | 1 << j))
                .collect(),
        )
    }

    pub fn self_conflict_mask(&self) -> u64 {
        self.self_conflict
            .iter()
            .filter(|&i| i < 64)
            .fold(0u64, |m, i| m | 1 << i)
    }

    /// Connected components, each sorted, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for u in self.adjacency[v].iter() {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn conflict_graph(f: &SetFamily, t: usize) -> ConflictGraph {
    ConflictGraph::new(f, t)
}
