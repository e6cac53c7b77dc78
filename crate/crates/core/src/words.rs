//! Elements of a graph product as syllable words, with reduction to a
//! canonical normal form.
//!
//! Reduction absorbs syllables one at a time into an already reduced word:
//! an incoming syllable either merges with the last syllable of its vertex
//! group that can be shuffled to the end, or is appended. The canonical
//! representative is obtained by repeatedly extracting, among the syllables
//! that can be shuffled to the front, the one with the smallest vertex.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex, VertexSet};
use crate::groups::{GroupElement, VertexGroup};

/// A validated syllable word: every syllable belongs to the graph and is
/// non-trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<GroupElement>);

impl Word {
    pub fn syllables(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<GroupElement> {
        self.0
    }
}

impl Deref for Word {
    type Target = [GroupElement];
    fn deref(&self) -> &[GroupElement] {
        &self.0
    }
}

/// A reduced word in canonical order. Equality of normal forms is equality
/// of group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalForm(Vec<GroupElement>);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syllables(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Deref for NormalForm {
    type Target = [GroupElement];
    fn deref(&self) -> &[GroupElement] {
        &self.0
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{}^{}", s.vertex.0, s.value)?;
        }
        Ok(())
    }
}

/// The graph product `ΓG`: a defining graph with one group per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphProduct {
    graph: SimplicialGraph,
    groups: Vec<VertexGroup>,
}

impl GraphProduct {
    pub fn new(graph: SimplicialGraph, groups: Vec<VertexGroup>) -> Result<Self> {
        if groups.len() != graph.len() {
            return Err(Error::InvalidGraph(format!(
                "{} vertex groups for {} vertices",
                groups.len(),
                graph.len()
            )));
        }
        Ok(GraphProduct { graph, groups })
    }

    /// Every vertex group is `Z/2`: the right-angled Coxeter group of `graph`.
    pub fn racg(graph: SimplicialGraph) -> Self {
        let groups = vec![VertexGroup::z2(); graph.len()];
        GraphProduct { graph, groups }
    }

    pub fn uniform(graph: SimplicialGraph, group: VertexGroup) -> Self {
        let groups = vec![group; graph.len()];
        GraphProduct { graph, groups }
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn groups(&self) -> &[VertexGroup] {
        &self.groups
    }

    pub fn group(&self, v: Vertex) -> &VertexGroup {
        &self.groups[v.0]
    }

    pub fn is_finite(&self) -> bool {
        self.groups.iter().all(VertexGroup::is_finite)
    }

    pub fn is_racg(&self) -> bool {
        self.groups.iter().all(|g| g.order() == Some(2))
    }

    pub fn require_finite(&self, what: &str) -> Result<()> {
        match self.groups.iter().position(|g| !g.is_finite()) {
            None => Ok(()),
            Some(i) => Err(Error::Unsupported(format!(
                "{what} needs finite vertex groups; vertex {:?} is infinite cyclic",
                self.graph.name(Vertex(i))
            ))),
        }
    }

    /// Builds a syllable, rejecting identities and out-of-range values.
    pub fn syllable(&self, v: Vertex, value: i64) -> Result<GroupElement> {
        if !self.graph.contains(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        if value == 0 {
            return Err(Error::InvalidElement(format!(
                "identity syllable at vertex {:?}",
                self.graph.name(v)
            )));
        }
        if !self.group(v).contains(value) {
            return Err(Error::InvalidElement(format!(
                "value {value} not in the group of vertex {:?}",
                self.graph.name(v)
            )));
        }
        Ok(GroupElement::new(v, value))
    }

    pub fn word(&self, syllables: Vec<GroupElement>) -> Result<Word> {
        for s in &syllables {
            self.syllable(s.vertex, s.value)?;
        }
        Ok(Word(syllables))
    }

    /// Shorthand for words of generator syllables `x_v` (value 1).
    pub fn gens_word(&self, vertices: &[usize]) -> NormalForm {
        self.reduce(&vertices.iter().map(|&v| GroupElement::new(Vertex(v), 1)).collect::<Vec<_>>())
    }

    pub fn elem(&self, s: GroupElement) -> NormalForm {
        self.reduce(&[s])
    }

    /// Every non-identity element of every vertex group (the generating set
    /// of the quasi-median Cayley graph). Fails for infinite groups.
    pub fn all_syllables(&self) -> Result<Vec<GroupElement>> {
        let mut out = Vec::new();
        for v in self.graph.vertices() {
            for a in self.group(v).enumerate()? {
                out.push(GroupElement::new(v, a));
            }
        }
        Ok(out)
    }

    /// Syllables against which relations are tested: all non-identity
    /// elements for finite groups, the generator for infinite cyclic ones.
    pub fn test_syllables(&self) -> Vec<GroupElement> {
        self.graph
            .vertices()
            .flat_map(|v| self.group(v).test_elements().into_iter().map(move |a| GroupElement::new(v, a)))
            .collect()
    }

    pub fn syl_mul(&self, a: GroupElement, b: GroupElement) -> Result<Option<GroupElement>> {
        if a.vertex != b.vertex {
            return Err(Error::VertexMismatch(format!(
                "{:?} and {:?}",
                self.graph.name(a.vertex),
                self.graph.name(b.vertex)
            )));
        }
        let c = self.group(a.vertex).mul(a.value, b.value);
        Ok((c != 0).then(|| GroupElement::new(a.vertex, c)))
    }

    pub fn syl_inv(&self, a: GroupElement) -> GroupElement {
        GroupElement::new(a.vertex, self.group(a.vertex).inv(a.value))
    }

    /// Absorbs one syllable into a reduced word, following the
    /// single-syllable rule: scan from the end across syllables adjacent to
    /// `h`'s vertex; merge with the first same-vertex syllable found, or
    /// append.
    fn absorb(&self, word: &mut Vec<GroupElement>, h: GroupElement) {
        if h.value == 0 {
            return;
        }
        for j in (0..word.len()).rev() {
            let g = word[j];
            if g.vertex == h.vertex {
                let c = self.group(h.vertex).mul(g.value, h.value);
                if c == 0 {
                    word.remove(j);
                } else {
                    word[j].value = c;
                }
                return;
            }
            if !self.graph.adjacent(g.vertex, h.vertex) {
                break;
            }
        }
        word.push(h);
    }

    /// Reorders a reduced word into canonical form by greedy minimal-vertex
    /// front extraction.
    fn canonicalize(&self, mut word: Vec<GroupElement>) -> NormalForm {
        let mut out = Vec::with_capacity(word.len());
        while !word.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..word.len() {
                if self.front_shufflable(&word, i)
                    && best.is_none_or(|b| word[i].vertex < word[b].vertex)
                {
                    best = Some(i);
                }
            }
            out.push(word.remove(best.expect("a reduced word has a first syllable")));
        }
        NormalForm(out)
    }

    fn front_shufflable(&self, word: &[GroupElement], i: usize) -> bool {
        word[..i].iter().all(|g| self.graph.adjacent(g.vertex, word[i].vertex))
    }

    fn back_shufflable(&self, word: &[GroupElement], i: usize) -> bool {
        word[i + 1..].iter().all(|g| self.graph.adjacent(g.vertex, word[i].vertex))
    }

    pub fn reduce(&self, w: &[GroupElement]) -> NormalForm {
        let mut r = Vec::with_capacity(w.len());
        for &h in w {
            self.absorb(&mut r, h);
        }
        self.canonicalize(r)
    }

    pub fn length(&self, w: &[GroupElement]) -> usize {
        self.reduce(w).len()
    }

    pub fn mul(&self, u: &[GroupElement], v: &[GroupElement]) -> NormalForm {
        let mut r: Vec<GroupElement> = Vec::with_capacity(u.len() + v.len());
        for &h in u.iter().chain(v) {
            self.absorb(&mut r, h);
        }
        self.canonicalize(r)
    }

    pub fn mul_all(&self, parts: &[&[GroupElement]]) -> NormalForm {
        let mut r = Vec::new();
        for p in parts {
            for &h in p.iter() {
                self.absorb(&mut r, h);
            }
        }
        self.canonicalize(r)
    }

    pub fn inv(&self, u: &[GroupElement]) -> NormalForm {
        let rev: Vec<GroupElement> = u.iter().rev().map(|&s| self.syl_inv(s)).collect();
        self.reduce(&rev)
    }

    /// `g·h·g⁻¹`.
    pub fn conjugate(&self, g: &[GroupElement], h: &[GroupElement]) -> NormalForm {
        let gi = self.inv(g);
        self.mul_all(&[g, h, &gi])
    }

    pub fn commute(&self, a: &[GroupElement], b: &[GroupElement]) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Syllables that can appear first in a reduced expression, in vertex
    /// order.
    pub fn head(&self, w: &[GroupElement]) -> Vec<GroupElement> {
        let nf = self.reduce(w);
        let mut out: Vec<GroupElement> =
            (0..nf.len()).filter(|&i| self.front_shufflable(&nf, i)).map(|i| nf[i]).collect();
        out.sort();
        out
    }

    /// Syllables that can appear last in a reduced expression, in vertex
    /// order.
    pub fn tail(&self, w: &[GroupElement]) -> Vec<GroupElement> {
        let nf = self.reduce(w);
        let mut out: Vec<GroupElement> =
            (0..nf.len()).filter(|&i| self.back_shufflable(&nf, i)).map(|i| nf[i]).collect();
        out.sort();
        out
    }

    /// Splits `w = p·rest` with `p ∈ ⟨Λ⟩` maximal and `|w| = |p| + |rest|`.
    pub fn strip_prefix(&self, w: &[GroupElement], lambda: &VertexSet) -> (NormalForm, NormalForm) {
        let mut rest = self.reduce(w).0;
        let mut p = Vec::new();
        loop {
            let pick = (0..rest.len())
                .filter(|&i| lambda.contains(&rest[i].vertex) && self.front_shufflable(&rest, i))
                .min_by_key(|&i| rest[i].vertex);
            match pick {
                Some(i) => p.push(rest.remove(i)),
                None => break,
            }
        }
        (self.canonicalize(p), self.canonicalize(rest))
    }

    /// Splits `w = rest·s` with `s ∈ ⟨Λ⟩` maximal; `rest` is the shortest
    /// element of the coset `w⟨Λ⟩`.
    pub fn strip_suffix(&self, w: &[GroupElement], lambda: &VertexSet) -> (NormalForm, NormalForm) {
        let mut rest = self.reduce(w).0;
        let mut s = Vec::new();
        loop {
            let pick = (0..rest.len())
                .filter(|&i| lambda.contains(&rest[i].vertex) && self.back_shufflable(&rest, i))
                .min_by_key(|&i| rest[i].vertex);
            match pick {
                Some(i) => s.insert(0, rest.remove(i)),
                None => break,
            }
        }
        (self.canonicalize(rest), self.canonicalize(s))
    }

    /// The shortest representative of `w⟨Λ⟩`.
    pub fn coset_rep(&self, w: &[GroupElement], lambda: &VertexSet) -> NormalForm {
        self.strip_suffix(w, lambda).0
    }

    /// Whether `w ∈ ⟨Λ⟩`.
    pub fn in_parabolic(&self, w: &[GroupElement], lambda: &VertexSet) -> bool {
        self.reduce(w).iter().all(|s| lambda.contains(&s.vertex))
    }

    /// `w = conjugator · core · conjugator⁻¹`, conjugating by head syllables
    /// while the length strictly drops.
    pub fn cyclic_reduce(&self, w: &[GroupElement]) -> (NormalForm, NormalForm) {
        let mut core = self.reduce(w);
        let mut conj = NormalForm::identity();
        'outer: loop {
            for s in self.head(&core) {
                let si = [self.syl_inv(s)];
                let candidate = self.mul_all(&[&si, &core, &[s]]);
                if candidate.len() < core.len() {
                    core = candidate;
                    conj = self.mul(&conj, &[s]);
                    continue 'outer;
                }
            }
            return (core, conj);
        }
    }
}
