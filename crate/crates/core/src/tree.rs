//! Rooted and unrooted tree representations.
//!
//! Vertex ids are dense `0..n`. Both types are immutable after construction
//! and store adjacency in flat offset arrays, so traversals stay cache
//! friendly for trees with millions of vertices.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A finite tree with a distinguished root and ordered child lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    offsets: Vec<usize>,
    children: Vec<usize>,
    root: usize,
}

impl RootedTree {
    pub fn single_vertex() -> Self {
        RootedTree {
            offsets: vec![0, 0],
            children: Vec::new(),
            root: 0,
        }
    }

    /// Builds a tree from explicit child lists, checking that every vertex
    /// other than `root` has exactly one parent and that all vertices are
    /// reachable from the root.
    pub fn from_child_lists(lists: &[Vec<usize>], root: usize) -> Result<Self> {
        let n = lists.len();
        if n == 0 {
            return Err(Error::InvalidTree("tree needs at least one vertex".into()));
        }
        if root >= n {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        let mut has_parent = vec![false; n];
        let mut offsets = Vec::with_capacity(n + 1);
        let mut children = Vec::with_capacity(n - 1);
        offsets.push(0);
        for (v, list) in lists.iter().enumerate() {
            for &c in list {
                if c >= n {
                    return Err(Error::InvalidTree(format!("child {c} of {v} out of range")));
                }
                if c == root || has_parent[c] {
                    return Err(Error::InvalidTree(format!("vertex {c} has two parents")));
                }
                has_parent[c] = true;
                children.push(c);
            }
            offsets.push(children.len());
        }
        if children.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} child links for {} vertices",
                children.len(),
                n
            )));
        }
        let tree = RootedTree {
            offsets,
            children,
            root,
        };
        // n - 1 links with unique parents; only a cycle detached from the
        // root could still hide, and that shows up as unreachable vertices.
        if tree.bfs_order().len() != n {
            return Err(Error::InvalidTree("child relation has a cycle".into()));
        }
        Ok(tree)
    }

    /// Builds a tree from a parent array (`None` marks the root).
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let n = parents.len();
        let mut lists = vec![Vec::new(); n];
        let mut root = None;
        for (v, p) in parents.iter().enumerate() {
            match p {
                None if root.is_some() => {
                    return Err(Error::InvalidTree("more than one root".into()))
                }
                None => root = Some(v),
                Some(p) if *p >= n => {
                    return Err(Error::InvalidTree(format!("parent {p} out of range")))
                }
                Some(p) => lists[*p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::InvalidTree("no root".into()))?;
        Self::from_child_lists(&lists, root)
    }

    /// Builds the tree whose breadth-first out-degree sequence is `degrees`.
    ///
    /// Vertex `i` is the `i`-th vertex in breadth-first order and its children
    /// are the next unused ids, so the sequence must be a valid
    /// Lukasiewicz word (all proper prefix sums of `d - 1` above `-1`, total `-1`).
    pub fn from_bfs_degrees(degrees: &[usize]) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(Error::InvalidTree("empty degree sequence".into()));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut next = 1usize;
        for (i, &d) in degrees.iter().enumerate() {
            if i >= next {
                return Err(Error::InvalidTree(format!(
                    "degree sequence exhausted before vertex {i}"
                )));
            }
            next += d;
            if next > n {
                return Err(Error::InvalidTree("degree sequence overflows".into()));
            }
            offsets.push(next - 1);
        }
        if next != n {
            return Err(Error::InvalidTree("degree sequence does not sum to n - 1".into()));
        }
        Ok(RootedTree {
            offsets,
            children: (1..n).collect(),
            root: 0,
        })
    }

    /// Star with `leaves` leaves rooted at its center.
    pub fn star(leaves: usize) -> Self {
        let mut degrees = vec![0; leaves + 1];
        degrees[0] = leaves;
        Self::from_bfs_degrees(&degrees).expect("star is valid")
    }

    /// Path on `n >= 1` vertices rooted at one end.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        let mut degrees = vec![1; n];
        degrees[n - 1] = 0;
        Self::from_bfs_degrees(&degrees).expect("path is valid")
    }

    /// Complete binary tree of the given height (height 0 is a single vertex).
    pub fn complete_binary(height: u32) -> Self {
        let n = (1usize << (height + 1)) - 1;
        let internal = (1usize << height) - 1;
        let degrees: Vec<usize> = (0..n).map(|i| if i < internal { 2 } else { 0 }).collect();
        Self::from_bfs_degrees(&degrees).expect("complete binary tree is valid")
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Number of children of `v`.
    pub fn out_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn root_degree(&self) -> usize {
        self.out_degree(self.root)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.out_degree(v) == 0
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> Vec<usize> {
        let n = self.order();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        order.push(self.root);
        seen[self.root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in self.children(v) {
                if !seen[c] {
                    seen[c] = true;
                    order.push(c);
                }
            }
        }
        order
    }

    /// Parent of every vertex; `None` for the root.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parents = vec![None; self.order()];
        for v in 0..self.order() {
            for &c in self.children(v) {
                parents[c] = Some(v);
            }
        }
        parents
    }

    /// Depth of every vertex (root at depth 0).
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.order()];
        for v in self.bfs_order() {
            for &c in self.children(v) {
                depth[c] = depth[v] + 1;
            }
        }
        depth
    }

    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Subtree sizes indexed by vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.order()];
        for &v in self.bfs_order().iter().rev() {
            for &c in self.children(v) {
                size[v] += size[c];
            }
        }
        size
    }

    /// Forgets the root and the child order.
    pub fn to_unrooted(&self) -> UnrootedTree {
        let mut edges = Vec::with_capacity(self.order() - 1);
        for v in 0..self.order() {
            for &c in self.children(v) {
                edges.push((v, c));
            }
        }
        UnrootedTree::from_edges(self.order(), &edges).expect("rooted tree yields a valid tree")
    }

    /// Parenthesis string of this plane tree in its stored child order.
    ///
    /// Unlike [`crate::canonical_code`] this does not sort children, so it is
    /// linear time and distinguishes plane embeddings.
    pub fn to_paren_string(&self) -> String {
        let mut out = String::with_capacity(2 * self.order());
        // (vertex, next child index)
        let mut stack = vec![(self.root, 0usize)];
        out.push('(');
        while let Some((v, i)) = stack.last_mut() {
            let kids = self.children(*v);
            if *i < kids.len() {
                let c = kids[*i];
                *i += 1;
                out.push('(');
                stack.push((c, 0));
            } else {
                out.push(')');
                stack.pop();
            }
        }
        out
    }

    /// Parses a parenthesis string such as `"(()(()))"`.
    ///
    /// Vertices are numbered in preorder, so the root is vertex 0.
    pub fn parse_paren(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut lists: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut closed_root = false;
        for (pos, ch) in s.chars().enumerate() {
            if closed_root {
                return Err(Error::Parse(format!("trailing input at position {pos}")));
            }
            match ch {
                '(' => {
                    let v = lists.len();
                    lists.push(Vec::new());
                    if let Some(&p) = stack.last() {
                        lists[p].push(v);
                    } else if v != 0 {
                        return Err(Error::Parse("more than one root".into()));
                    }
                    stack.push(v);
                }
                ')' => {
                    if stack.pop().is_none() {
                        return Err(Error::Parse(format!("unbalanced ')' at position {pos}")));
                    }
                    if stack.is_empty() {
                        closed_root = true;
                    }
                }
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse(format!("unexpected character {c:?}"))),
            }
        }
        if !stack.is_empty() || lists.is_empty() {
            return Err(Error::Parse("unbalanced parentheses".into()));
        }
        Self::from_child_lists(&lists, 0)
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedTree({})", self.to_paren_string())
    }
}

/// A finite tree without a root, stored as an edge list plus adjacency.
#[derive(Clone, PartialEq, Eq)]
pub struct UnrootedTree {
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl UnrootedTree {
    pub fn single_vertex() -> Self {
        UnrootedTree {
            edges: Vec::new(),
            offsets: vec![0, 0],
            neighbors: Vec::new(),
        }
    }

    /// Builds a tree on `n` vertices; rejects anything that is not connected
    /// and acyclic.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("tree needs at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self loop at {u}")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0; 2 * (n - 1)];
        for &(u, v) in edges {
            neighbors[fill[u]] = v;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        let tree = UnrootedTree {
            edges: edges.to_vec(),
            offsets,
            neighbors,
        };
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in tree.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        Ok(tree)
    }

    pub fn path(n: usize) -> Self {
        RootedTree::path(n).to_unrooted()
    }

    pub fn star(leaves: usize) -> Self {
        RootedTree::star(leaves).to_unrooted()
    }

    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Orients every edge away from `root`, keeping vertex ids.
    pub fn rooted_at(&self, root: usize) -> RootedTree {
        let parents = self.parents_from(root);
        let n = self.order();
        let mut lists = vec![Vec::new(); n];
        for v in 0..n {
            for &w in self.neighbors(v) {
                if parents[w] == Some(v) {
                    lists[v].push(w);
                }
            }
        }
        RootedTree::from_child_lists(&lists, root).expect("orientation of a tree is a tree")
    }

    /// Parent pointers for the orientation away from `root`, and the BFS order.
    pub(crate) fn bfs_from(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let n = self.order();
        let mut parent = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    order.push(w);
                }
            }
        }
        (parent, order)
    }

    fn parents_from(&self, root: usize) -> Vec<Option<usize>> {
        self.bfs_from(root).0
    }

    /// One `"u v"` pair per line.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list format. The vertex count is one more than the
    /// largest id; an empty input is the single-vertex tree.
    pub fn parse_edge_list(s: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_id = 0usize;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let mut next = || -> Result<usize> {
                parts
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {}: expected two ids", lineno + 1)))?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let u = next()?;
            let v = next()?;
            if parts.next().is_some() {
                return Err(Error::Parse(format!("line {}: extra tokens", lineno + 1)));
            }
            max_id = max_id.max(u).max(v);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Ok(Self::single_vertex());
        }
        Self::from_edges(max_id + 1, &edges)
    }
}

impl fmt::Debug for UnrootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnrootedTree(n={}, edges={:?})", self.order(), self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paren_round_trip_preserves_plane_order() {
        let s = "((())()(()()))";
        let t = RootedTree::parse_paren(s).unwrap();
        assert_eq!(t.order(), 7);
        assert_eq!(t.to_paren_string(), s);
        assert_eq!(t.root_degree(), 3);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(RootedTree::parse_paren("(()").is_err());
        assert!(RootedTree::parse_paren("()()").is_err());
        assert!(RootedTree::parse_paren("(x)").is_err());
        assert!(RootedTree::parse_paren("").is_err());
        assert!(RootedTree::from_child_lists(&[vec![1], vec![0]], 0).is_err());
        assert!(RootedTree::from_child_lists(&[vec![1, 1], vec![]], 0).is_err());
        assert!(RootedTree::from_child_lists(&[vec![], vec![2], vec![1]], 0).is_err());
        assert!(UnrootedTree::from_edges(4, &[(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(UnrootedTree::from_edges(3, &[(0, 0), (1, 2)]).is_err());
    }

    #[test]
    fn bfs_degrees_build_expected_shapes() {
        let cherry = RootedTree::from_bfs_degrees(&[2, 0, 0]).unwrap();
        assert_eq!(cherry.to_paren_string(), "(()())");
        assert!(RootedTree::from_bfs_degrees(&[0, 2, 0]).is_err());
        assert!(RootedTree::from_bfs_degrees(&[1, 1, 1]).is_err());
        assert_eq!(RootedTree::complete_binary(2).order(), 7);
        assert_eq!(RootedTree::path(5).height(), 4);
    }

    #[test]
    fn edge_list_round_trip() {
        let t = UnrootedTree::parse_edge_list("0 1\n1 2\n# comment\n1 3\n").unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(t.degree(1), 3);
        let again = UnrootedTree::parse_edge_list(&t.to_edge_list_string()).unwrap();
        assert_eq!(again, t);
        assert_eq!(UnrootedTree::parse_edge_list("").unwrap().order(), 1);
        assert!(UnrootedTree::parse_edge_list("0 1 2").is_err());
    }

    #[test]
    fn rerooting_keeps_ids() {
        let u = UnrootedTree::path(4);
        let r = u.rooted_at(2);
        assert_eq!(r.root(), 2);
        assert_eq!(r.order(), 4);
        assert_eq!(r.to_unrooted().order(), 4);
        assert_eq!(r.subtree_sizes()[2], 4);
    }
}
