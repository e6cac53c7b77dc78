//! Finite balls of the Davis complex: vertices are cosets `g⟨Λ⟩` over
//! complete subgraphs `Λ`, edges join `g⟨Λ⟩` to `g⟨Λ ∪ {v}⟩`, and cubes are
//! the intervals `[g⟨Λ⟩, g⟨Λ'⟩]`.
//!
//! A ball of radius `r` holds every coset meeting the elements of length at
//! most `r`. A vertex `rep⟨Λ⟩` counts as interior when `|rep| + |Λ| < r`,
//! which guarantees that every cube through it is present; an edge is
//! interior when both endpoints have representatives shorter than `r`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::automorphisms::{Automorphism, Generator, LocalAutomorphism};
use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex, VertexSet};
use crate::groups::GroupElement;
use crate::qm::{Hyperplane, QmBall, SectorLabel};
use crate::words::{GraphProduct, NormalForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DavisVertex {
    pub rep: NormalForm,
    pub lambda: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DavisEdge {
    /// The endpoint with the smaller subgraph.
    pub lower: usize,
    pub upper: usize,
    pub label: Vertex,
}

/// The cube `[bottom, bottom·⟨top⟩]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DavisCube {
    pub bottom: usize,
    pub top: VertexSet,
    pub vertices: Vec<usize>,
}

impl DavisCube {
    pub fn dimension(&self) -> usize {
        self.vertices.len().trailing_zeros() as usize
    }
}

#[derive(Clone, Debug)]
pub struct DavisBall {
    pub radius: usize,
    pub vertices: Vec<DavisVertex>,
    pub edges: Vec<DavisEdge>,
    /// Cubes of dimension at least two, by dimension.
    pub cubes: Vec<DavisCube>,
    index: HashMap<DavisVertex, usize>,
    edge_index: HashMap<(usize, usize), usize>,
}

/// Outcome of comparing Davis hyperplanes with quasi-median hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub davis_hyperplanes: usize,
    pub parallelism_classes: usize,
    pub well_defined: bool,
    pub matches_qm_keys: bool,
    pub crossing_pairs_checked: usize,
    pub crossing_pairs_skipped: usize,
    pub crossing_matches: bool,
}

impl CrossingReport {
    pub fn holds(&self) -> bool {
        self.well_defined && self.matches_qm_keys && self.crossing_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisSegment {
    pub edges: Vec<(DavisVertex, DavisVertex, Vertex)>,
    pub geodesic: bool,
}

impl DavisBall {
    pub fn from_parts(radius: usize, vertices: Vec<DavisVertex>, edges: Vec<DavisEdge>, cubes: Vec<DavisCube>) -> Self {
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.lower.min(e.upper), e.lower.max(e.upper)), i))
            .collect();
        DavisBall { radius, vertices, edges, cubes, index, edge_index }
    }

    pub fn index_of(&self, v: &DavisVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn squares(&self) -> impl Iterator<Item = &DavisCube> {
        self.cubes.iter().filter(|c| c.vertices.len() == 4)
    }

    pub fn fundamental_domain(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].rep.is_identity()).collect()
    }

    pub fn dimension(&self) -> usize {
        let top = self.cubes.iter().map(DavisCube::dimension).max().unwrap_or(0);
        if top > 0 {
            top
        } else if self.edges.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn is_interior_vertex(&self, i: usize) -> bool {
        let v = &self.vertices[i];
        v.rep.len() + v.lambda.len() < self.radius
    }

    pub fn is_interior_edge(&self, e: usize) -> bool {
        let e = &self.edges[e];
        self.vertices[e.lower].rep.len() < self.radius && self.vertices[e.upper].rep.len() < self.radius
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.lower].push(e.upper);
            adj[e.upper].push(e.lower);
        }
        adj
    }

    pub fn edge_square_count(&self, e: usize) -> Result<usize> {
        if e >= self.edges.len() {
            return Err(Error::Precondition(format!("no edge {e} in the ball")));
        }
        if !self.is_interior_edge(e) {
            return Err(Error::BoundaryUncertain(format!(
                "edge {e} touches the boundary of the radius-{} ball; its square count is only a lower bound",
                self.radius
            )));
        }
        let (a, b) = (self.edges[e].lower, self.edges[e].upper);
        Ok(self.squares().filter(|c| c.vertices.contains(&a) && c.vertices.contains(&b)).count())
    }

    /// Whether the link of a vertex is a flag simplicial complex: cubes
    /// through the vertex give distinct simplices on its incident edges,
    /// and every clique of the link's 1-skeleton spans a simplex.
    pub fn link_is_flag(&self, i: usize) -> Result<bool> {
        if i >= self.vertices.len() {
            return Err(Error::Precondition(format!("no vertex {i} in the ball")));
        }
        if !self.is_interior_vertex(i) {
            return Err(Error::BoundaryUncertain(format!(
                "vertex {i} is on the boundary of the radius-{} ball",
                self.radius
            )));
        }
        let adj = self.neighbours();
        let mut simplices: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for c in self.cubes.iter().filter(|c| c.vertices.contains(&i)) {
            let corner: BTreeSet<usize> =
                c.vertices.iter().copied().filter(|&w| adj[i].contains(&w)).collect();
            if corner.len() != c.dimension() || !simplices.insert(corner) {
                return Ok(false);
            }
        }
        let link_edge = |a: usize, b: usize| simplices.contains(&BTreeSet::from([a, b]));
        // every clique of the link 1-skeleton must be a simplex
        let nodes = adj[i].clone();
        let mut stack: Vec<Vec<usize>> = nodes.iter().map(|&a| vec![a]).collect();
        while let Some(clique) = stack.pop() {
            if clique.len() >= 3 && !simplices.contains(&clique.iter().copied().collect()) {
                return Ok(false);
            }
            let last = *clique.last().unwrap();
            for &n in nodes.iter().filter(|&&n| n > last) {
                if clique.iter().all(|&c| link_edge(c, n)) {
                    let mut next = clique.clone();
                    next.push(n);
                    stack.push(next);
                }
            }
        }
        Ok(true)
    }
}

impl GraphProduct {
    pub fn davis_vertex(&self, g: &[GroupElement], lambda: &VertexSet) -> DavisVertex {
        DavisVertex { rep: self.coset_rep(g, lambda), lambda: lambda.clone() }
    }

    pub fn build_davis_ball(&self, radius: usize) -> Result<DavisBall> {
        self.require_finite("Davis ball enumeration")?;
        let elements = self.build_ball(radius)?.vertices;
        let simplices = self.graph().complete_subsets();
        let mut keys: BTreeSet<(usize, DavisVertex)> = BTreeSet::new();
        for g in &elements {
            for l in &simplices {
                let v = self.davis_vertex(g, l);
                keys.insert((v.rep.len(), v));
            }
        }
        let vertices: Vec<DavisVertex> = keys.into_iter().map(|(_, v)| v).collect();
        let index: HashMap<DavisVertex, usize> =
            vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut edge_set: BTreeMap<(usize, usize), Vertex> = BTreeMap::new();
        let mut cube_set: BTreeSet<DavisCube> = BTreeSet::new();
        for g in &elements {
            for (li, l) in simplices.iter().enumerate() {
                let bottom = index[&self.davis_vertex(g, l)];
                for top in &simplices[li..] {
                    if !l.is_subset(top) || top.len() - l.len() < 1 {
                        continue;
                    }
                    let free: Vec<Vertex> = top.difference(l).copied().collect();
                    if free.len() == 1 {
                        let upper = index[&self.davis_vertex(g, top)];
                        edge_set.insert((bottom, upper), free[0]);
                        continue;
                    }
                    let mut verts = Vec::with_capacity(1 << free.len());
                    for mask in 0..(1usize << free.len()) {
                        let mut m = l.clone();
                        m.extend(free.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v));
                        verts.push(index[&self.davis_vertex(g, &m)]);
                    }
                    cube_set.insert(DavisCube { bottom, top: top.clone(), vertices: verts });
                }
            }
        }
        let edges: Vec<DavisEdge> =
            edge_set.into_iter().map(|((lower, upper), label)| DavisEdge { lower, upper, label }).collect();
        let mut cubes: Vec<DavisCube> = cube_set.into_iter().collect();
        cubes.sort_by_key(|c| (c.vertices.len(), c.bottom, c.top.clone()));
        Ok(DavisBall::from_parts(radius, vertices, edges, cubes))
    }

    /// Splits a composition of inner and local generators as `ι(g) ∘ L`.
    pub fn factor_inner_local(&self, phi: &Automorphism) -> Result<(NormalForm, LocalAutomorphism)> {
        let mut g = NormalForm::identity();
        let mut local = self.identity_local();
        for gen in &phi.generators {
            match gen {
                Generator::Inner(t) => g = self.mul(t, &g),
                Generator::Local(m) => {
                    g = self.apply_generator(gen, &g);
                    local = LocalAutomorphism {
                        sigma: local.sigma.iter().map(|&v| m.sigma[v.0]).collect(),
                        phis: local.phis.iter().map(|p| p.then(&m.phis[p.target.0])).collect(),
                    };
                }
                Generator::Partial(_) => {
                    return Err(Error::Precondition(
                        "the Davis action needs an automorphism built from inner and local generators".into(),
                    ))
                }
            }
        }
        Ok((g, local))
    }

    /// `ι(g)∘L · rep⟨Λ⟩ = g·L(rep)·⟨σ(Λ)⟩`.
    pub fn aut_action(&self, phi: &Automorphism, v: &DavisVertex) -> Result<DavisVertex> {
        let (g, local) = self.factor_inner_local(phi)?;
        let image = self.apply_generator(&Generator::Local(local.clone()), &v.rep);
        let lambda: VertexSet = v.lambda.iter().map(|&u| local.sigma[u.0]).collect();
        Ok(self.davis_vertex(&self.mul(&g, &image), &lambda))
    }

    /// The hyperplane of `X(Γ,G)` associated with the Davis edge
    /// `(rep⟨Λ⟩, rep⟨Λ ∪ {v}⟩)`, together with the side of it the edge is on.
    pub fn davis_edge_key(&self, lower: &DavisVertex, label: Vertex) -> (Hyperplane, SectorLabel) {
        let j = self.hyperplane(label, &lower.rep).expect("label is a vertex");
        let side = self.sector_of(&j, &lower.rep);
        (j, side)
    }

    /// Compares the Davis hyperplanes of `ball` (square-opposite closure
    /// classes of edges) with the hyperplanes of `qm`. RACG only.
    pub fn crossing_correspondence(&self, ball: &DavisBall, qm: &QmBall) -> Result<CrossingReport> {
        if !self.is_racg() {
            return Err(Error::Unsupported("crossing correspondence is implemented for right-angled Coxeter groups".into()));
        }
        let n = ball.edges.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let square_edges = |c: &DavisCube| -> [usize; 4] {
            let v = &c.vertices;
            // vertices in mask order: 00, 10, 01, 11
            [
                ball.edge_between(v[0], v[1]).unwrap(),
                ball.edge_between(v[2], v[3]).unwrap(),
                ball.edge_between(v[0], v[2]).unwrap(),
                ball.edge_between(v[1], v[3]).unwrap(),
            ]
        };
        let squares: Vec<[usize; 4]> = ball.squares().map(square_edges).collect();
        for s in &squares {
            for (a, b) in [(s[0], s[1]), (s[2], s[3])] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let keys: Vec<(Hyperplane, SectorLabel)> = ball
            .edges
            .iter()
            .map(|e| self.davis_edge_key(&ball.vertices[e.lower], e.label))
            .collect();
        let mut class_key: HashMap<usize, (Hyperplane, SectorLabel)> = HashMap::new();
        let mut well_defined = true;
        for (e, key) in keys.iter().enumerate() {
            let r = find(&mut parent, e);
            match class_key.get(&r) {
                Some(k) if k != key => well_defined = false,
                Some(_) => {}
                None => {
                    class_key.insert(r, key.clone());
                }
            }
        }
        // distinct classes must carry distinct (hyperplane, side) keys
        let distinct: BTreeSet<&(Hyperplane, SectorLabel)> = class_key.values().collect();
        well_defined &= distinct.len() == class_key.len();
        let parallel: BTreeSet<&Hyperplane> = class_key.values().map(|(j, _)| j).collect();

        // compare with the quasi-median keys over the range both balls cover
        let limit = (ball.radius + 1).min(qm.radius);
        let from_davis: BTreeSet<&Hyperplane> = parallel.iter().copied().filter(|j| j.base.len() < limit).collect();
        let qm_keys = qm.hyperplanes();
        let from_qm: BTreeSet<&Hyperplane> = qm_keys.iter().filter(|j| j.base.len() < limit).collect();
        let matches_qm_keys = from_davis == from_qm;

        // crossing of parallelism classes versus transversality
        let mut crossing: BTreeSet<(&Hyperplane, &Hyperplane)> = BTreeSet::new();
        for s in &squares {
            let (a, b) = (&keys[s[0]].0, &keys[s[2]].0);
            crossing.insert((a.min(b), a.max(b)));
        }
        let classes: Vec<&Hyperplane> = parallel.iter().copied().collect();
        let (mut checked, mut skipped, mut crossing_matches) = (0, 0, true);
        for i in 0..classes.len() {
            for k in i + 1..classes.len() {
                let (a, b) = (classes[i], classes[k]);
                let crosses = crossing.contains(&(a, b));
                let transverse = self.transverse(a, b);
                if crosses && !transverse {
                    crossing_matches = false;
                } else if transverse && !crosses {
                    // the square through the carriers' meeting point may lie
                    // outside the ball
                    let (x, _) = self.coset_gate_pair(&self.carrier(a), &self.carrier(b));
                    if x.len() <= ball.radius {
                        crossing_matches = false;
                    } else {
                        skipped += 1;
                        continue;
                    }
                }
                checked += 1;
            }
        }
        Ok(CrossingReport {
            davis_hyperplanes: class_key.len(),
            parallelism_classes: parallel.len(),
            well_defined,
            matches_qm_keys,
            crossing_pairs_checked: checked,
            crossing_pairs_skipped: skipped,
            crossing_matches,
        })
    }

    /// A cyclic vertex sequence exhausting the graph with consecutive and
    /// wrap-around vertices distinct and non-adjacent; the product of the
    /// chosen generators along it.
    pub fn rigid_element(&self, gens: &[GroupElement]) -> Result<(Vec<Vertex>, NormalForm)> {
        let graph = self.graph();
        if !graph.classify().is_atomic {
            return Err(Error::Precondition("rigid elements need an atomic graph".into()));
        }
        if gens.len() != graph.len() || gens.iter().enumerate().any(|(i, s)| s.vertex.0 != i || s.value == 0) {
            return Err(Error::Precondition("one non-trivial generator per vertex, in vertex order".into()));
        }
        let n = graph.len();
        for len in n..=2 * n {
            let mut seq = Vec::with_capacity(len);
            let mut count = vec![0usize; n];
            if rigid_search(graph, len, &mut seq, &mut count) {
                let word: Vec<GroupElement> = seq.iter().map(|v: &Vertex| gens[v.0]).collect();
                return Ok((seq, self.reduce(&word)));
            }
        }
        Err(Error::Precondition("no cyclic sequence of length at most 2|V| exists".into()))
    }

    /// Whether `g` has exactly one reduced expression.
    pub fn has_unique_reduced_word(&self, g: &[GroupElement]) -> bool {
        let nf = self.reduce(g);
        (0..nf.len()).all(|k| self.head(&nf[k..]).len() == 1)
    }

    pub fn fixing_locals(&self, g: &[GroupElement]) -> Result<Vec<LocalAutomorphism>> {
        let target = self.reduce(g);
        Ok(self
            .local_automorphisms()?
            .into_iter()
            .filter(|l| self.apply_generator(&Generator::Local(l.clone()), &target) == target)
            .collect())
    }

    /// The segment `⋃_{|k| ≤ K} g^k (e_{v₁} ∪ e_{v₃} ∪ s₃e_{v₃} ∪ s₃e_{v₁})`
    /// for `g = s₃s₁`, where `e_v` is the edge `(⟨∅⟩, ⟨{v}⟩)`.
    pub fn axis_path(&self, path: &[Vertex], gens: &[GroupElement], k_range: usize) -> Result<AxisSegment> {
        let graph = self.graph();
        if path.len() != 4 || gens.len() != 4 {
            return Err(Error::Precondition("axis paths use four vertices and four generators".into()));
        }
        for (i, &a) in path.iter().enumerate() {
            if !graph.contains(a) {
                return Err(Error::UnknownVertex(a.to_string()));
            }
            for (k, &b) in path.iter().enumerate() {
                if a == b && i != k || graph.adjacent(a, b) != (i.abs_diff(k) == 1) {
                    return Err(Error::Precondition("vertices do not form an induced path".into()));
                }
            }
            if gens[i].vertex != a || gens[i].value == 0 {
                return Err(Error::Precondition("generators must be non-trivial elements of the path's groups".into()));
            }
        }
        let (v1, v3, s1, s3) = (path[0], path[2], gens[0], gens[2]);
        let g = self.reduce(&[s3, s1]);
        let empty = VertexSet::new();
        let one = |v: Vertex| VertexSet::from([v]);
        let s3w = self.elem(s3);
        let base: [(NormalForm, Vertex); 4] =
            [(NormalForm::identity(), v1), (NormalForm::identity(), v3), (s3w.clone(), v3), (s3w, v1)];
        let k = k_range as i64;
        let mut edges = Vec::new();
        for j in -k..=k {
            let gk = self.power(&g, j);
            // orient every edge along the direction of travel
            for (idx, (h, v)) in base.iter().enumerate() {
                let t = self.mul(&gk, h);
                let chamber = self.davis_vertex(&t, &empty);
                let panel = self.davis_vertex(&t, &one(*v));
                if idx % 2 == 0 {
                    edges.push((panel, chamber, *v));
                } else {
                    edges.push((chamber, panel, *v));
                }
            }
        }
        let mut walk = vec![edges[0].0.clone()];
        let mut connected = true;
        for (a, b, _) in &edges {
            connected &= walk.last() == Some(a);
            walk.push(b.clone());
        }
        let simple = walk.iter().collect::<BTreeSet<_>>().len() == walk.len();
        let keys: BTreeSet<(Hyperplane, SectorLabel)> = edges
            .iter()
            .map(|(a, b, v)| {
                let lower = if a.lambda.len() < b.lambda.len() { a } else { b };
                self.davis_edge_key(lower, *v)
            })
            .collect();
        let distinct = keys.len() == edges.len();
        let chambers = 2 * (2 * k_range + 1);
        let word: Vec<GroupElement> = (0..chambers).map(|i| if i % 2 == 0 { s3 } else { s1 }).collect();
        let reduced = self.length(&word) == word.len();
        Ok(AxisSegment { edges, geodesic: connected && simple && distinct && reduced })
    }

    pub fn power(&self, g: &[GroupElement], k: i64) -> NormalForm {
        let base = if k < 0 { self.inv(g) } else { self.reduce(g) };
        let mut out = NormalForm::identity();
        for _ in 0..k.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        out
    }
}

/// Depth-first search for a cyclic sequence of exactly `len` vertices in
/// vertex order, pruning when the remaining positions cannot cover the
/// uncovered vertices.
fn rigid_search(graph: &SimplicialGraph, len: usize, seq: &mut Vec<Vertex>, count: &mut [usize]) -> bool {
    let uncovered = count.iter().filter(|&&c| c == 0).count();
    if len - seq.len() < uncovered {
        return false;
    }
    if seq.len() == len {
        let (first, last) = (seq[0], seq[len - 1]);
        return first != last && !graph.adjacent(first, last);
    }
    for v in graph.vertices() {
        if let Some(&prev) = seq.last() {
            if prev == v || graph.adjacent(prev, v) {
                continue;
            }
        }
        seq.push(v);
        count[v.0] += 1;
        if rigid_search(graph, len, seq, count) {
            return true;
        }
        count[v.0] -= 1;
        seq.pop();
    }
    false
}
