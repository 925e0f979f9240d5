//! Exact maximum clique by branch and bound with a greedy colouring bound,
//! on bitset adjacency. Used for l(F,t) on the t-intersection graph.

use crate::bitset::Bits;

/// Adjacency relabelled so that bit `i` is the `i`-th vertex in descending
/// degree order (ties by original index).
pub struct CliqueSearch {
    adj: Vec<Bits>,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl CliqueSearch {
    pub fn new(adjacency: &[Bits]) -> Self {
        let n = adjacency.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(adjacency[v].count()), v));
        let mut position = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let adj = order
            .iter()
            .map(|&v| {
                let mut b = Bits::new(n);
                for u in adjacency[v].iter() {
                    b.insert(position[u]);
                }
                b
            })
            .collect();
        CliqueSearch {
            adj,
            order,
            position,
        }
    }

    fn to_internal(&self, set: &Bits) -> Bits {
        let mut b = Bits::new(self.order.len());
        for v in set.iter() {
            b.insert(self.position[v]);
        }
        b
    }

    /// Largest clique inside `candidates` (original labels), sorted ascending.
    pub fn maximum_within(&self, candidates: &Bits) -> Vec<usize> {
        let mut state = Expand {
            adj: &self.adj,
            best: Vec::new(),
            floor: 0,
            stop_at: usize::MAX,
        };
        state.expand(&mut Vec::new(), self.to_internal(candidates));
        let mut out: Vec<usize> = state.best.iter().map(|&p| self.order[p]).collect();
        out.sort_unstable();
        out
    }

    pub fn maximum(&self) -> Vec<usize> {
        self.maximum_within(&Bits::full(self.order.len()))
    }

    /// Whether `candidates` contains a clique of at least `size` vertices.
    pub fn has_clique_of(&self, candidates: &Bits, size: usize) -> bool {
        if size == 0 {
            return true;
        }
        if candidates.count() < size {
            return false;
        }
        let mut state = Expand {
            adj: &self.adj,
            best: Vec::new(),
            floor: size - 1,
            stop_at: size,
        };
        state.expand(&mut Vec::new(), self.to_internal(candidates));
        state.best.len() >= size
    }

    /// The lexicographically least (as an ascending index list) clique of
    /// the given size, or `None` if there is none.
    pub fn least_clique_of(&self, size: usize, adjacency: &[Bits]) -> Option<Vec<usize>> {
        let n = adjacency.len();
        let mut cand = Bits::full(n);
        if !self.has_clique_of(&cand, size) {
            return None;
        }
        let mut chosen = Vec::with_capacity(size);
        for v in 0..n {
            if chosen.len() == size {
                break;
            }
            if !cand.contains(v) {
                continue;
            }
            let mut next = cand.intersection(&adjacency[v]);
            for u in 0..=v {
                next.remove(u);
            }
            let need = size - chosen.len() - 1;
            if self.has_clique_of(&next, need) {
                chosen.push(v);
                cand = next;
            } else {
                cand.remove(v);
            }
        }
        debug_assert_eq!(chosen.len(), size);
        Some(chosen)
    }
}

struct Expand<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    /// Only cliques strictly larger than this are recorded.
    floor: usize,
    stop_at: usize,
}

impl Expand<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.stop_at
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Bits) {
        let (order, colors) = colour_sort(self.adj, &cand);
        for idx in (0..order.len()).rev() {
            if clique.len() + colors[idx] <= self.floor.max(self.best.len()) {
                return;
            }
            let v = order[idx];
            clique.push(v);
            let next = cand.intersection(&self.adj[v]);
            if next.is_empty() {
                if clique.len() > self.floor.max(self.best.len()) {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            if self.done() {
                return;
            }
            cand.remove(v);
        }
    }
}

/// Greedy sequential colouring; returns vertices grouped by colour class and
/// the (1-based, non-decreasing) colour of each.
fn colour_sort(adj: &[Bits], cand: &Bits) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = cand.clone();
    let mut order = Vec::with_capacity(cand.count());
    let mut colors = Vec::with_capacity(order.capacity());
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncoloured.remove(v);
            order.push(v);
            colors.push(colour);
        }
    }
    (order, colors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Bits> {
        let mut adj = vec![Bits::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    fn brute_force(adj: &[Bits]) -> usize {
        let n = adj.len();
        (0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|i| {
                    m >> i & 1 == 0 || (i + 1..n).all(|j| m >> j & 1 == 0 || adj[i].contains(j))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn triangle_plus_pendant() {
        let adj = graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let s = CliqueSearch::new(&adj);
        assert_eq!(s.maximum(), vec![0, 1, 2]);
        assert!(s.has_clique_of(&Bits::full(4), 3));
        assert!(!s.has_clique_of(&Bits::full(4), 4));
    }

    #[test]
    fn least_clique_is_lexicographic() {
        // two triangles {1,2,3} and {0,4,5}; lexicographically {0,4,5} first
        let adj = graph(6, &[(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)]);
        let s = CliqueSearch::new(&adj);
        assert_eq!(s.least_clique_of(3, &adj), Some(vec![0, 4, 5]));
        assert_eq!(s.least_clique_of(4, &adj), None);
    }

    #[test]
    fn matches_brute_force_on_pseudorandom_graphs() {
        let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
        for n in 1..=12 {
            for _ in 0..20 {
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        x ^= x << 13;
                        x ^= x >> 7;
                        x ^= x << 17;
                        if x % 3 != 0 {
                            edges.push((i, j));
                        }
                    }
                }
                let adj = graph(n, &edges);
                let s = CliqueSearch::new(&adj);
                let c = s.maximum();
                assert_eq!(c.len(), brute_force(&adj));
                for (a, &u) in c.iter().enumerate() {
                    for &v in &c[a + 1..] {
                        assert!(adj[u].contains(v));
                    }
                }
            }
        }
    }
}
