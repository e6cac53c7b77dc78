//! Finite simplicial graphs and the graph-theoretic predicates used by the
//! rest of the crate: links, stars, components, girth, SIL detection and the
//! molecular / atomic classification.
//!
//! Vertices are opaque names. The order in which they are declared is the
//! canonical total order used for every tie-break downstream.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a vertex in its graph's declared order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub type VertexSet = BTreeSet<Vertex>;

/// Length of a shortest cycle; acyclic graphs have infinite girth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, n: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= n,
            Girth::Infinite => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClassification {
    pub connected: bool,
    pub girth: Girth,
    pub min_valence: usize,
    pub is_molecular: bool,
    pub is_atomic: bool,
    pub separating_stars: Vec<Vertex>,
}

/// Two vertices at distance at least two together with a component of
/// `graph \ (link(u) ∩ link(v))` that contains neither of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SilWitness {
    pub u: Vertex,
    pub v: Vertex,
    pub component: VertexSet,
}

#[derive(Clone, Debug)]
pub struct SimplicialGraph {
    names: Vec<String>,
    lookup: HashMap<String, Vertex>,
    adj: Vec<Vec<bool>>,
    neighbors: Vec<Vec<Vertex>>,
}

impl PartialEq for SimplicialGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for SimplicialGraph {}

impl SimplicialGraph {
    /// Builds a graph from vertex names (in canonical order) and edges given
    /// by name. Self-loops, duplicate edges and undeclared endpoints are
    /// rejected.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut lookup = HashMap::new();
        let mut names = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let name = v.as_ref().to_string();
            if lookup.insert(name.clone(), Vertex(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {name:?}")));
            }
            names.push(name);
        }
        let n = names.len();
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in edges {
            let find = |s: &str| {
                lookup
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::InvalidGraph(format!("edge references undeclared vertex {s:?}")))
            };
            let (u, v) = (find(a.as_ref())?, find(b.as_ref())?);
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {:?}", a.as_ref())));
            }
            if adj[u.0][v.0] {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {:?}-{:?}",
                    a.as_ref(),
                    b.as_ref()
                )));
            }
            adj[u.0][v.0] = true;
            adj[v.0][u.0] = true;
        }
        let neighbors = (0..n)
            .map(|u| (0..n).filter(|&v| adj[u][v]).map(Vertex).collect())
            .collect();
        Ok(SimplicialGraph { names, lookup, adj, neighbors })
    }

    /// Convenience constructor over integer-named vertices `0..n`.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> =
            edges.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
        Self::new(&names, &edges)
    }

    /// The cycle `0-1-…-(n-1)-0`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_indices(n, &edges).expect("cycle graph is well formed")
    }

    /// The path `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_indices(n, &edges).expect("path graph is well formed")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Self::from_indices(n, &edges).expect("complete graph is well formed")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len()).map(Vertex)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.0 < self.names.len()
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u.0][v.0]
    }

    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.neighbors[u.0]
    }

    pub fn valence(&self, u: Vertex) -> usize {
        self.neighbors[u.0].len()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn link(&self, u: Vertex) -> Result<VertexSet> {
        self.check(u)?;
        Ok(self.neighbors(u).iter().copied().collect())
    }

    pub fn star(&self, u: Vertex) -> Result<VertexSet> {
        let mut s = self.link(u)?;
        s.insert(u);
        Ok(s)
    }

    /// Connected components of the subgraph induced on `keep`, ordered by
    /// their smallest member.
    pub fn components_of(&self, keep: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for &start in keep {
            if seen[start.0] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start.0] = true;
            while let Some(x) = queue.pop_front() {
                comp.insert(x);
                for &y in self.neighbors(x) {
                    if keep.contains(&y) && !seen[y.0] {
                        seen[y.0] = true;
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components_minus_star(&self, u: Vertex) -> Result<Vec<VertexSet>> {
        let star = self.star(u)?;
        let rest: VertexSet = self.vertices().filter(|v| !star.contains(v)).collect();
        Ok(self.components_of(&rest))
    }

    /// The component of `graph \ star(u)` containing `v`, if `v` lies outside
    /// `star(u)`.
    pub fn component_containing(&self, u: Vertex, v: Vertex) -> Result<Option<VertexSet>> {
        Ok(self.components_minus_star(u)?.into_iter().find(|c| c.contains(&v)))
    }

    pub fn is_connected(&self) -> bool {
        self.components_of(&self.all_vertices()).len() <= 1
    }

    /// Breadth-first distances from `u`; `None` for unreachable vertices.
    pub fn distances_from(&self, u: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[u.0] = Some(0);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x.0].unwrap();
            for &y in self.neighbors(x) {
                if dist[y.0].is_none() {
                    dist[y.0] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Shortest cycle length, by a breadth-first search from every vertex.
    pub fn girth(&self) -> Girth {
        let n = self.len();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &Vertex(y) in &self.neighbors[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best.map_or(Girth::Infinite, Girth::Finite)
    }

    pub fn is_complete_set(&self, set: &VertexSet) -> bool {
        let v: Vec<Vertex> = set.iter().copied().collect();
        v.iter()
            .enumerate()
            .all(|(i, &a)| v[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    /// Every complete subgraph (including the empty one), ordered by size and
    /// then lexicographically.
    pub fn complete_subsets(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::new()];
        let mut frontier = vec![VertexSet::new()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for set in &frontier {
                let start = set.iter().next_back().map_or(0, |v| v.0 + 1);
                for w in start..self.len() {
                    let w = Vertex(w);
                    if set.iter().all(|&a| self.adjacent(a, w)) {
                        let mut s = set.clone();
                        s.insert(w);
                        next.push(s);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn maximal_complete_subsets(&self) -> Vec<VertexSet> {
        let all = self.complete_subsets();
        all.iter()
            .filter(|s| {
                self.vertices()
                    .all(|w| s.contains(&w) || !s.iter().all(|&a| self.adjacent(a, w)))
            })
            .cloned()
            .collect()
    }

    pub fn clique_number(&self) -> usize {
        self.complete_subsets().iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Whether some vertex is adjacent to every other vertex.
    pub fn is_star_of_vertex(&self) -> bool {
        self.vertices().any(|u| self.valence(u) + 1 == self.len())
    }

    pub fn classify(&self) -> GraphClassification {
        let connected = self.is_connected();
        let girth = self.girth();
        let min_valence = self.vertices().map(|u| self.valence(u)).min().unwrap_or(0);
        let is_molecular = connected && min_valence >= 2 && girth.at_least(5);
        let separating_stars: Vec<Vertex> = self
            .vertices()
            .filter(|&u| self.components_minus_star(u).is_ok_and(|c| c.len() > 1))
            .collect();
        let is_atomic = is_molecular && separating_stars.is_empty();
        GraphClassification { connected, girth, min_valence, is_molecular, is_atomic, separating_stars }
    }

    /// First SIL witness in vertex order `(u, v, component)` with `u < v`.
    pub fn has_sil(&self) -> Option<SilWitness> {
        for u in self.vertices() {
            for v in self.vertices().filter(|&v| v > u && !self.adjacent(u, v)) {
                if let Some(c) = self.sil_component(u, v) {
                    return Some(SilWitness { u, v, component: c });
                }
            }
        }
        None
    }

    /// The first component of `graph \ (link(u) ∩ link(v))` avoiding both
    /// vertices, for non-adjacent distinct `u`, `v`.
    pub fn sil_component(&self, u: Vertex, v: Vertex) -> Option<VertexSet> {
        if u == v || self.adjacent(u, v) {
            return None;
        }
        let common: VertexSet = self
            .neighbors(u)
            .iter()
            .filter(|w| self.adjacent(**w, v))
            .copied()
            .collect();
        let rest: VertexSet = self.vertices().filter(|w| !common.contains(w)).collect();
        self.components_of(&rest)
            .into_iter()
            .find(|c| !c.contains(&u) && !c.contains(&v))
    }

    /// All adjacency-preserving vertex permutations (graph automorphisms),
    /// identity first, found by backtracking in vertex order.
    pub fn automorphisms(&self) -> Vec<Vec<Vertex>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut map: Vec<Option<Vertex>> = vec![None; n];
        let mut used = vec![false; n];
        self.extend_automorphism(0, &mut map, &mut used, &mut out);
        out
    }

    fn extend_automorphism(
        &self,
        i: usize,
        map: &mut Vec<Option<Vertex>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let n = self.len();
        if i == n {
            out.push(map.iter().map(|m| m.unwrap()).collect());
            return;
        }
        for t in 0..n {
            if used[t] || self.valence(Vertex(i)) != self.valence(Vertex(t)) {
                continue;
            }
            let ok = (0..i).all(|j| self.adj[i][j] == self.adj[t][map[j].unwrap().0]);
            if ok {
                map[i] = Some(Vertex(t));
                used[t] = true;
                self.extend_automorphism(i + 1, map, used, out);
                used[t] = false;
                map[i] = None;
            }
        }
    }

    /// Whether `sigma` (indexed by source vertex) is a graph isometry from
    /// `self` onto `other`.
    pub fn is_isometry_onto(&self, other: &SimplicialGraph, sigma: &[Vertex]) -> bool {
        if self.len() != other.len() || sigma.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &t in sigma {
            if t.0 >= other.len() || hit[t.0] {
                return false;
            }
            hit[t.0] = true;
        }
        self.vertices().all(|u| {
            self.vertices()
                .all(|v| self.adjacent(u, v) == other.adjacent(sigma[u.0], sigma[v.0]))
        })
    }

    /// Renders a vertex set using vertex names.
    pub fn set_names(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.name(v).to_string()).collect()
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k13() -> SimplicialGraph {
        SimplicialGraph::new(&["u", "v", "z", "w"], &[("w", "u"), ("w", "v"), ("w", "z")]).unwrap()
    }

    fn p3() -> SimplicialGraph {
        SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn set(g: &SimplicialGraph, names: &[&str]) -> VertexSet {
        g.set_from_names(names).unwrap()
    }

    #[test]
    fn links_and_stars() {
        let c5 = SimplicialGraph::cycle(5);
        assert_eq!(c5.link(Vertex(0)).unwrap(), set(&c5, &["1", "4"]));
        assert_eq!(c5.star(Vertex(0)).unwrap(), set(&c5, &["4", "0", "1"]));
        let k = k13();
        let w = k.vertex("w").unwrap();
        assert_eq!(k.link(w).unwrap(), set(&k, &["u", "v", "z"]));
        assert_eq!(k.star(w).unwrap(), k.all_vertices());
        let p = p3();
        assert_eq!(p.link(p.vertex("a").unwrap()).unwrap(), set(&p, &["b"]));
        assert_eq!(p.star(p.vertex("b").unwrap()).unwrap(), p.all_vertices());
    }

    #[test]
    fn unknown_vertex_is_an_input_error() {
        let c5 = SimplicialGraph::cycle(5);
        assert!(matches!(c5.link(Vertex(9)), Err(Error::UnknownVertex(_))));
        assert!(matches!(c5.vertex("x"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn components_minus_star_examples() {
        let c5 = SimplicialGraph::cycle(5);
        assert_eq!(c5.components_minus_star(Vertex(0)).unwrap(), vec![set(&c5, &["2", "3"])]);
        let k = k13();
        assert!(k.components_minus_star(k.vertex("w").unwrap()).unwrap().is_empty());
        let p = p3();
        assert!(p.components_minus_star(p.vertex("b").unwrap()).unwrap().is_empty());
    }

    #[test]
    fn classification_examples() {
        let c5 = SimplicialGraph::cycle(5).classify();
        assert_eq!(c5.girth, Girth::Finite(5));
        assert!(c5.is_molecular && c5.is_atomic);

        let p = p3().classify();
        assert_eq!(p.girth, Girth::Infinite);
        assert_eq!(p.min_valence, 1);
        assert!(!p.is_molecular);

        // two pentagons glued at vertex 0
        let g = SimplicialGraph::from_indices(
            9,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 8), (8, 0)],
        )
        .unwrap()
        .classify();
        assert!(g.is_molecular);
        assert!(!g.is_atomic);
        // the glued vertex separates, and so do its neighbours (their stars
        // contain it)
        assert_eq!(g.separating_stars, [0, 1, 4, 5, 8].map(Vertex).to_vec());
    }

    #[test]
    fn girth_of_cycles_and_trees() {
        for n in 3..9 {
            assert_eq!(SimplicialGraph::cycle(n).girth(), Girth::Finite(n));
        }
        assert_eq!(SimplicialGraph::path(6).girth(), Girth::Infinite);
        assert_eq!(SimplicialGraph::complete(4).girth(), Girth::Finite(3));
    }

    #[test]
    fn sil_examples() {
        assert_eq!(SimplicialGraph::cycle(5).has_sil(), None);
        let k = k13();
        let w = k.has_sil().unwrap();
        assert_eq!((k.name(w.u), k.name(w.v)), ("u", "v"));
        assert_eq!(w.component, set(&k, &["z"]));
        assert_eq!(SimplicialGraph::complete(2).has_sil(), None);
    }

    #[test]
    fn sil_is_symmetric() {
        let k = k13();
        for u in k.vertices() {
            for v in k.vertices() {
                assert_eq!(k.sil_component(u, v), k.sil_component(v, u));
            }
        }
    }

    #[test]
    fn c5_has_ten_automorphisms() {
        let auts = SimplicialGraph::cycle(5).automorphisms();
        assert_eq!(auts.len(), 10);
        assert_eq!(auts[0], (0..5).map(Vertex).collect::<Vec<_>>());
    }

    #[test]
    fn complete_subsets_of_c5() {
        let c5 = SimplicialGraph::cycle(5);
        assert_eq!(c5.complete_subsets().len(), 11);
        assert_eq!(c5.maximal_complete_subsets().len(), 5);
        assert_eq!(c5.clique_number(), 2);
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(SimplicialGraph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(SimplicialGraph::new(&["a", "b"], &[("a", "c")]).is_err());
        assert!(SimplicialGraph::new(&["a"], &[("a", "a")]).is_err());
        assert!(SimplicialGraph::new(&["a", "a"], &[]).is_err());
    }
}
