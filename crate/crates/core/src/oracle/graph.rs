use bitvec::prelude::*;

/// Undirected visibility graph over polygon vertex indices `0..n`.
///
/// Stored as a dense symmetric bit matrix, so membership is O(1) and two
/// graphs compare equal iff their edge sets are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct VisibilityGraph {
    n: usize,
    adjacency: BitVec,
    edge_count: usize,
}

impl VisibilityGraph {
    pub fn empty(n: usize) -> Self {
        VisibilityGraph {
            n,
            adjacency: bitvec![0; n * n],
            edge_count: 0,
        }
    }

    /// Only the `n` boundary pairs `{i, i + 1}`.
    pub fn boundary(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            g.insert(i, (i + 1) % n);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.insert(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (i, j) in edges {
            g.insert(i, j);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Adds `{i, j}`; returns false if it was already present.
    ///
    /// Panics on a self-loop or an index outside `0..n`.
    pub fn insert(&mut self, i: usize, j: usize) -> bool {
        assert!(i != j && i < self.n && j < self.n, "bad edge {{{i}, {j}}}");
        if self.adjacency[i * self.n + j] {
            return false;
        }
        self.adjacency.set(i * self.n + j, true);
        self.adjacency.set(j * self.n + i, true);
        self.edge_count += 1;
        true
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adjacency[i * self.n + j]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).count_ones()
    }

    /// Neighbours of `i` in counter-clockwise boundary order starting at
    /// `i + 1`, i.e. sorted by cyclic offset from `i`.
    pub fn cyclic_neighbors(&self, i: usize) -> Vec<usize> {
        let row = self.row(i);
        let mut out: Vec<usize> = row[i + 1..].iter_ones().map(|j| j + i + 1).collect();
        out.extend(row[..i].iter_ones());
        out
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i)[i + 1..].iter_ones().map(move |d| (i, i + 1 + d)))
    }

    /// Pairs present in exactly one of the two graphs.
    pub fn symmetric_difference(&self, other: &VisibilityGraph) -> Vec<(usize, usize)> {
        let n = self.n.max(other.n);
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.contains(i, j) != other.contains(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn row(&self, i: usize) -> &BitSlice {
        &self.adjacency[i * self.n..(i + 1) * self.n]
    }
}

impl std::fmt::Debug for VisibilityGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VisibilityGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_and_complete() {
        let g = VisibilityGraph::boundary(5);
        assert_eq!(g.edge_count(), 5);
        assert!(g.contains(4, 0) && g.contains(0, 4));
        assert!(!g.contains(0, 2));
        assert_eq!(VisibilityGraph::complete(6).edge_count(), 15);
    }

    #[test]
    fn insert_is_idempotent() {
        let mut g = VisibilityGraph::empty(4);
        assert!(g.insert(2, 0));
        assert!(!g.insert(0, 2));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn edges_sorted_and_cyclic_neighbors() {
        let g = VisibilityGraph::from_edges(6, [(3, 5), (0, 1), (4, 3), (1, 3), (0, 3)]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 3), (3, 4), (3, 5)]);
        assert_eq!(g.cyclic_neighbors(3), vec![4, 5, 0, 1]);
        assert_eq!(g.cyclic_neighbors(0), vec![1, 3]);
    }

    #[test]
    #[should_panic]
    fn self_loop_panics() {
        VisibilityGraph::empty(3).insert(1, 1);
    }
}
