/// Disjoint sets over `0..n` with path compression.
///
/// Merging always keeps the smaller index as the representative, which the
/// coset enumerator relies on: a dead coset points at a lower-numbered one.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Appends a new singleton and returns its index.
    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        id
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn is_root(&self, x: usize) -> bool {
        self.parent[x] == x
    }

    /// Merges the classes of `a` and `b`. Returns the absorbed root, i.e. the
    /// larger of the two roots, or `None` if they were already together.
    pub fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        Some(drop)
    }

    /// Classes as sorted lists, ordered by least member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smaller_root_survives() {
        let mut ds = DisjointSets::new(6);
        assert_eq!(ds.union(4, 2), Some(4));
        assert_eq!(ds.union(5, 4), Some(5));
        assert_eq!(ds.union(2, 5), None);
        assert_eq!(ds.find(5), 2);
        assert_eq!(ds.classes(), vec![vec![0], vec![1], vec![2, 4, 5], vec![3]]);
        assert_eq!(ds.push(), 6);
        assert!(ds.is_root(6));
    }
}
