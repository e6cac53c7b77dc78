//! Hyperplane calculus of the quasi-median Cayley graph `X(Γ,G)`: the
//! Cayley graph of the graph product with respect to all non-trivial
//! vertex-group elements.
//!
//! Hyperplanes are stored as canonical keys `(label, base)` where `base` is
//! the shortest element of the carrier coset `base⟨star(label)⟩`. Every
//! predicate is decided algebraically from these keys; balls are only
//! enumerated for dumps and for the invariant checks.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::groups::GroupElement;
use crate::words::{GraphProduct, NormalForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub label: Vertex,
    pub base: NormalForm,
}

/// The projection of a point onto a clique dual to a hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectorLabel {
    Identity,
    Element(GroupElement),
}

impl SectorLabel {
    pub fn value(self) -> i64 {
        match self {
            SectorLabel::Identity => 0,
            SectorLabel::Element(g) => g.value,
        }
    }
}

/// A coset `rep⟨Λ⟩` with `rep` the shortest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicCoset {
    pub lambda: VertexSet,
    pub rep: NormalForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmEdge {
    pub from: usize,
    pub to: usize,
    /// `from⁻¹·to`, a non-trivial vertex-group element.
    pub generator: GroupElement,
    pub hyperplane: Hyperplane,
}

/// The ball of the given radius around `ε`, layered by distance and sorted
/// by normal form within each layer.
#[derive(Clone, Debug)]
pub struct QmBall {
    pub radius: usize,
    pub vertices: Vec<NormalForm>,
    pub edges: Vec<QmEdge>,
    index: HashMap<NormalForm, usize>,
}

impl QmBall {
    pub fn from_parts(radius: usize, vertices: Vec<NormalForm>, edges: Vec<QmEdge>) -> Self {
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        QmBall { radius, vertices, edges, index }
    }

    pub fn index_of(&self, g: &NormalForm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &NormalForm) -> bool {
        self.index.contains_key(g)
    }

    /// Distinct hyperplane keys carried by the ball's edges, sorted.
    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        let set: BTreeSet<&Hyperplane> = self.edges.iter().map(|e| &e.hyperplane).collect();
        set.into_iter().cloned().collect()
    }

    /// Neighbour lists `(vertex, edge index)` per vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.from].push((e.to, i));
            adj[e.to].push((e.from, i));
        }
        adj
    }
}

/// Nodes are hyperplane keys; edges join transverse pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityGraph {
    pub nodes: Vec<Hyperplane>,
    pub edges: Vec<(usize, usize)>,
}

impl TransversalityGraph {
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        let mut m = vec![vec![false; n]; n];
        for &(a, b) in &self.edges {
            m[a][b] = true;
            m[b][a] = true;
        }
        m
    }

    /// The first induced 4-cycle `(a, b, c, d)` in node order, if any.
    pub fn induced_four_cycle(&self) -> Option<[usize; 4]> {
        let m = self.adjacency_matrix();
        let n = m.len();
        let nbrs: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| m[i][j]).collect()).collect();
        for a in 0..n {
            for c in a + 1..n {
                if m[a][c] {
                    continue;
                }
                let common: Vec<usize> = nbrs[a].iter().copied().filter(|&x| m[c][x]).collect();
                for (i, &b) in common.iter().enumerate() {
                    for &d in &common[i + 1..] {
                        if !m[b][d] {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }
}

impl GraphProduct {
    pub fn distance(&self, x: &[GroupElement], y: &[GroupElement]) -> usize {
        let xi = self.inv(x);
        self.mul(&xi, y).len()
    }

    /// The hyperplane with label `u` whose carrier contains `g`.
    pub fn hyperplane(&self, u: Vertex, g: &[GroupElement]) -> Result<Hyperplane> {
        let star = self.graph().star(u)?;
        Ok(Hyperplane { label: u, base: self.coset_rep(g, &star) })
    }

    fn star_of(&self, u: Vertex) -> VertexSet {
        self.graph().star(u).expect("vertex of the graph")
    }

    pub fn parabolic(&self, lambda: VertexSet, g: &[GroupElement]) -> ParabolicCoset {
        let rep = self.coset_rep(g, &lambda);
        ParabolicCoset { lambda, rep }
    }

    pub fn carrier(&self, j: &Hyperplane) -> ParabolicCoset {
        ParabolicCoset { lambda: self.star_of(j.label), rep: j.base.clone() }
    }

    /// Projection of `g` onto the clique `base·G_u`, read from the head of
    /// `base⁻¹·g`.
    pub fn project_clique(&self, u: Vertex, base: &[GroupElement], g: &[GroupElement]) -> SectorLabel {
        let bi = self.inv(base);
        let h = self.mul(&bi, g);
        match self.head(&h).into_iter().find(|s| s.vertex == u) {
            Some(s) => SectorLabel::Element(s),
            None => SectorLabel::Identity,
        }
    }

    /// The hyperplane dual to the edge `(x, x·s)`.
    pub fn hyperplane_of_edge(&self, x: &[GroupElement], s: GroupElement) -> Result<Hyperplane> {
        if s.value == 0 {
            return Err(Error::InvalidElement("edge generator must be non-trivial".into()));
        }
        self.hyperplane(s.vertex, x)
    }

    pub fn sector_of(&self, j: &Hyperplane, g: &[GroupElement]) -> SectorLabel {
        self.project_clique(j.label, &j.base, g)
    }

    pub fn separates(&self, j: &Hyperplane, x: &[GroupElement], y: &[GroupElement]) -> bool {
        self.sector_of(j, x) != self.sector_of(j, y)
    }

    /// Duals of the edges along the canonical geodesic from `x` to `y`.
    pub fn separating_hyperplanes(&self, x: &[GroupElement], y: &[GroupElement]) -> Vec<Hyperplane> {
        let xi = self.inv(x);
        let path = self.mul(&xi, y);
        let mut point = self.reduce(x);
        let mut out = Vec::with_capacity(path.len());
        for &s in path.iter() {
            out.push(self.hyperplane(s.vertex, &point).expect("syllable vertex"));
            point = self.mul(&point, &[s]);
        }
        out
    }

    /// Gate of `g` in the coset `P`.
    pub fn project_parabolic(&self, p: &ParabolicCoset, g: &[GroupElement]) -> NormalForm {
        let ri = self.inv(&p.rep);
        let h = self.mul(&ri, g);
        let (prefix, _) = self.strip_prefix(&h, &p.lambda);
        self.mul(&p.rep, &prefix)
    }

    /// A pair of mutual gates realising the distance between two cosets,
    /// found by alternating projections. The cosets meet iff `x == y`.
    pub fn coset_gate_pair(&self, a: &ParabolicCoset, b: &ParabolicCoset) -> (NormalForm, NormalForm) {
        let mut x = a.rep.clone();
        // Alternating gates stabilise after a couple of rounds; the cap only
        // guards against a logic error turning into a hang.
        let cap = 4 * (a.rep.len() + b.rep.len()) + 8;
        let mut y = self.project_parabolic(b, &x);
        for _ in 0..cap {
            let x2 = self.project_parabolic(a, &y);
            if x2 == x {
                break;
            }
            x = x2;
            y = self.project_parabolic(b, &x);
        }
        (x, y)
    }

    pub fn cosets_meet(&self, a: &ParabolicCoset, b: &ParabolicCoset) -> bool {
        let (x, y) = self.coset_gate_pair(a, b);
        x == y
    }

    pub fn transverse(&self, j1: &Hyperplane, j2: &Hyperplane) -> bool {
        j1 != j2
            && self.graph().adjacent(j1.label, j2.label)
            && self.cosets_meet(&self.carrier(j1), &self.carrier(j2))
    }

    /// `J1` separates `ε` from the whole of `J2` (and its carrier).
    pub fn separates_from_identity(&self, j1: &Hyperplane, j2: &Hyperplane) -> bool {
        j1 != j2
            && !self.transverse(j1, j2)
            && self.sector_of(j1, &j2.base) != self.sector_of(j1, &[])
    }

    /// The rotative stabiliser `base·G_label·base⁻¹`, as `(base, label)`.
    pub fn rotative_stabiliser(&self, j: &Hyperplane) -> (NormalForm, Vertex) {
        (j.base.clone(), j.label)
    }

    pub fn translate(&self, t: &[GroupElement], j: &Hyperplane) -> Hyperplane {
        let tb = self.mul(t, &j.base);
        self.hyperplane(j.label, &tb).expect("label is a vertex")
    }

    /// Whether the conjugates `pG_up⁻¹` and `qG_vq⁻¹` commute elementwise
    /// (generator-wise for infinite cyclic factors).
    pub fn factor_graph_edge(&self, p: (&NormalForm, Vertex), q: (&NormalForm, Vertex)) -> bool {
        let pe = self.group(p.1).test_elements();
        let qe = self.group(q.1).test_elements();
        pe.iter().all(|&a| {
            let pa = self.conjugate(p.0, &[GroupElement::new(p.1, a)]);
            qe.iter().all(|&b| {
                let qb = self.conjugate(q.0, &[GroupElement::new(q.1, b)]);
                self.commute(&pa, &qb)
            })
        })
    }

    /// Whether no member of the family separates `ε` from another member.
    pub fn is_peripheral(&self, family: &[Hyperplane]) -> Option<(usize, usize)> {
        for (i, j1) in family.iter().enumerate() {
            for (k, j2) in family.iter().enumerate() {
                if i != k && self.separates_from_identity(j1, j2) {
                    return Some((i, k));
                }
            }
        }
        None
    }

    /// For a peripheral family, whether `g` leaves the sector of `ε` of some
    /// member.
    pub fn pingpong_check(&self, family: &[Hyperplane], g: &[GroupElement]) -> Result<bool> {
        if let Some((i, k)) = self.is_peripheral(family) {
            return Err(Error::Precondition(format!(
                "family is not peripheral: member {i} separates the identity from member {k}"
            )));
        }
        if self.reduce(g).is_identity() {
            return Err(Error::Precondition("ping-pong element must be non-trivial".into()));
        }
        Ok(family.iter().any(|j| self.sector_of(j, g) != self.sector_of(j, &[])))
    }

    /// Breadth-first ball of the quasi-median graph. Needs finite groups.
    pub fn build_ball(&self, radius: usize) -> Result<QmBall> {
        self.require_finite("ball enumeration")?;
        let gens = self.all_syllables()?;
        let mut vertices = vec![NormalForm::identity()];
        let mut index: HashMap<NormalForm, usize> = HashMap::new();
        index.insert(NormalForm::identity(), 0);
        let mut layer_start = 0;
        for r in 0..radius {
            let mut next: BTreeSet<NormalForm> = BTreeSet::new();
            for x in &vertices[layer_start..] {
                for &s in &gens {
                    let y = self.mul(x, &[s]);
                    if y.len() == r + 1 {
                        next.insert(y);
                    }
                }
            }
            layer_start = vertices.len();
            for y in next {
                index.insert(y.clone(), vertices.len());
                vertices.push(y);
            }
        }
        let mut edges = Vec::new();
        for (i, x) in vertices.iter().enumerate() {
            for &s in &gens {
                let y = self.mul(x, &[s]);
                if let Some(&j) = index.get(&y) {
                    if i < j {
                        let hyperplane = self.hyperplane(s.vertex, x)?;
                        edges.push(QmEdge { from: i, to: j, generator: s, hyperplane });
                    }
                }
            }
        }
        Ok(QmBall { radius, vertices, edges, index })
    }

    pub fn transversality_graph(&self, ball: &QmBall) -> TransversalityGraph {
        let nodes = ball.hyperplanes();
        let mut edges = Vec::new();
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                if self.transverse(&nodes[a], &nodes[b]) {
                    edges.push((a, b));
                }
            }
        }
        TransversalityGraph { nodes, edges }
    }

    /// Groups hyperplanes of a ball by label, for dumps and diagnostics.
    pub fn hyperplanes_by_label(&self, ball: &QmBall) -> BTreeMap<Vertex, Vec<Hyperplane>> {
        let mut out: BTreeMap<Vertex, Vec<Hyperplane>> = BTreeMap::new();
        for j in ball.hyperplanes() {
            out.entry(j.label).or_default().push(j);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimplicialGraph;
    use crate::groups::VertexGroup;

    fn c5() -> GraphProduct {
        GraphProduct::racg(SimplicialGraph::cycle(5))
    }

    fn x(v: usize) -> GroupElement {
        GroupElement::new(Vertex(v), 1)
    }

    fn hp(g: &GraphProduct, u: usize, base: &[usize]) -> Hyperplane {
        g.hyperplane(Vertex(u), &g.gens_word(base)).unwrap()
    }

    #[test]
    fn distance_examples() {
        let g = c5();
        assert_eq!(g.distance(&[], &[x(0), x(2)]), 2);
        assert_eq!(g.distance(&[x(3), x(1)], &[x(3), x(1)]), 0);
        assert_eq!(g.distance(&[x(0)], &[x(2)]), 2);
    }

    #[test]
    fn project_clique_examples() {
        let g = c5();
        assert_eq!(g.project_clique(Vertex(0), &[], &[x(0), x(2)]), SectorLabel::Element(x(0)));
        assert_eq!(g.project_clique(Vertex(2), &[], &[x(0), x(2)]), SectorLabel::Identity);
        assert_eq!(g.project_clique(Vertex(0), &[], &[]), SectorLabel::Identity);
    }

    #[test]
    fn hyperplane_of_edge_examples() {
        let g = c5();
        assert_eq!(g.hyperplane_of_edge(&[], x(0)).unwrap(), hp(&g, 0, &[]));
        let j = g.hyperplane_of_edge(&[x(0)], x(2)).unwrap();
        assert_eq!((j.label, j.base.syllables()), (Vertex(2), &[x(0)][..]));
        assert_eq!(g.hyperplane_of_edge(&[x(1)], x(0)).unwrap(), hp(&g, 0, &[]));
    }

    #[test]
    fn sector_and_separation_examples() {
        let g = c5();
        let j0 = hp(&g, 0, &[]);
        assert_eq!(g.sector_of(&j0, &[]), SectorLabel::Identity);
        assert_eq!(g.sector_of(&j0, &[x(0)]), SectorLabel::Element(x(0)));
        assert_eq!(g.sector_of(&j0, &[x(2)]), SectorLabel::Identity);
        assert!(g.separates(&j0, &[], &[x(0)]));
        assert!(!g.separates(&j0, &[], &[x(2)]));
        let j2 = Hyperplane { label: Vertex(2), base: g.gens_word(&[0]) };
        assert!(g.separates(&j2, &[], &[x(0), x(2)]));
    }

    #[test]
    fn separating_hyperplane_examples() {
        let g = c5();
        assert_eq!(
            g.separating_hyperplanes(&[], &[x(0), x(2)]),
            vec![hp(&g, 0, &[]), Hyperplane { label: Vertex(2), base: g.gens_word(&[0]) }]
        );
        assert!(g.separating_hyperplanes(&[x(1)], &[x(1)]).is_empty());
        assert_eq!(g.separating_hyperplanes(&[], &[x(0), x(1)]), vec![hp(&g, 0, &[]), hp(&g, 1, &[])]);
    }

    #[test]
    fn transverse_examples() {
        let g = c5();
        assert!(g.transverse(&hp(&g, 0, &[]), &hp(&g, 1, &[])));
        assert!(!g.transverse(&hp(&g, 0, &[]), &hp(&g, 2, &[])));
        assert!(!g.transverse(&hp(&g, 0, &[]), &hp(&g, 0, &[2])));
    }

    #[test]
    fn project_parabolic_examples() {
        let g = c5();
        let p0 = g.parabolic([Vertex(0)].into(), &[]);
        assert_eq!(g.project_parabolic(&p0, &[x(0), x(2)]).syllables(), &[x(0)]);
        let star2 = g.parabolic(g.graph().star(Vertex(2)).unwrap(), &[]);
        assert!(g.project_parabolic(&star2, &[x(0)]).is_identity());
        let member = g.gens_word(&[1, 3]);
        assert_eq!(g.project_parabolic(&star2, &member), member);
    }

    #[test]
    fn gate_pair_examples() {
        let g = c5();
        let a = g.parabolic(g.graph().star(Vertex(0)).unwrap(), &[]);
        let b = g.parabolic(g.graph().star(Vertex(1)).unwrap(), &[]);
        let (p, q) = g.coset_gate_pair(&a, &b);
        assert!(p.is_identity() && q.is_identity());
        let a = g.parabolic([Vertex(0)].into(), &[]);
        let b = g.parabolic([Vertex(2)].into(), &[x(0)]);
        // x₀ lies in both ⟨{0}⟩ and x₀⟨{2}⟩, so these cosets meet at x₀
        let (p, q) = g.coset_gate_pair(&a, &b);
        assert_eq!((p.syllables(), q.syllables()), (&[x(0)][..], &[x(0)][..]));
        let far = g.parabolic([Vertex(2)].into(), &[x(3)]);
        let (p, q) = g.coset_gate_pair(&a, &far);
        assert_eq!(g.distance(&p, &q), 1);
        let (p, q) = g.coset_gate_pair(&a, &a);
        assert_eq!((p.clone(), q), (a.rep.clone(), a.rep.clone()));
    }

    #[test]
    fn rotative_stabiliser_examples() {
        let g = c5();
        assert_eq!(g.rotative_stabiliser(&hp(&g, 0, &[])), (NormalForm::identity(), Vertex(0)));
        let j = Hyperplane { label: Vertex(2), base: g.gens_word(&[0]) };
        assert_eq!(g.rotative_stabiliser(&j), (g.gens_word(&[0]), Vertex(2)));
        assert_eq!(g.translate(&[x(1)], &hp(&g, 0, &[])), hp(&g, 0, &[]));
    }

    #[test]
    fn ball_sizes() {
        let g = c5();
        assert_eq!(g.build_ball(2).unwrap().vertices.len(), 21);
        let b0 = g.build_ball(0).unwrap();
        assert_eq!((b0.vertices.len(), b0.edges.len()), (1, 0));
        let p = GraphProduct::new(
            SimplicialGraph::path(3),
            vec![VertexGroup::z2(), VertexGroup::cyclic(3).unwrap(), VertexGroup::z2()],
        )
        .unwrap();
        assert_eq!(p.build_ball(1).unwrap().vertices.len(), 5);
        let z = GraphProduct::uniform(SimplicialGraph::path(2), VertexGroup::Infinite);
        assert!(matches!(z.build_ball(1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn transversality_graph_examples() {
        let g = c5();
        let t1 = g.transversality_graph(&g.build_ball(1).unwrap());
        assert_eq!(t1.nodes.len(), 5);
        let mut e = t1.edges.clone();
        e.sort();
        assert_eq!(e, vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        assert!(g.transversality_graph(&g.build_ball(0).unwrap()).nodes.is_empty());
    }

    #[test]
    fn factor_graph_edge_examples() {
        let g = c5();
        let e = NormalForm::identity();
        assert!(g.factor_graph_edge((&e, Vertex(0)), (&e, Vertex(1))));
        assert!(!g.factor_graph_edge((&e, Vertex(0)), (&e, Vertex(2))));
        let x0 = g.gens_word(&[0]);
        assert!(!g.factor_graph_edge((&e, Vertex(2)), (&x0, Vertex(2))));
    }

    #[test]
    fn pingpong_examples() {
        let g = c5();
        let family: Vec<Hyperplane> = (0..5).map(|u| hp(&g, u, &[])).collect();
        assert!(g.pingpong_check(&family, &[x(0), x(2)]).unwrap());
        assert!(g.pingpong_check(&family[..1], &[x(0)]).unwrap());
        let bad = vec![hp(&g, 0, &[]), Hyperplane { label: Vertex(2), base: g.gens_word(&[0]) }];
        assert!(matches!(g.pingpong_check(&bad, &[x(0)]), Err(Error::Precondition(_))));
    }

    #[test]
    fn infinite_groups_keep_algebraic_predicates() {
        let z = GraphProduct::uniform(SimplicialGraph::path(3), VertexGroup::Infinite);
        let t = |v: usize, k| GroupElement::new(Vertex(v), k);
        let j = z.hyperplane(Vertex(2), &[t(0, 5), t(1, -2)]).unwrap();
        assert_eq!(j.base.syllables(), &[t(0, 5)]);
        assert_eq!(z.sector_of(&j, &[t(0, 5), t(2, 7)]), SectorLabel::Element(t(2, 7)));
    }
}
