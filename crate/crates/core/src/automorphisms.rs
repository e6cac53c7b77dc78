//! Automorphisms of graph products and the decomposition of conjugating
//! isomorphisms.
//!
//! A conjugating isomorphism `φ : ΓG → ΦH` is described by
//! [`ConjugatingData`]: for every source vertex `u` a conjugator `g_u`, a
//! target vertex `w_u` and an isomorphism `ψ_u : G_u → H_{w_u}`, so that
//! `φ(x) = g_u·ψ_u(x)·g_u⁻¹` on `G_u`. [`decompose`](GraphProduct::decompose)
//! repeatedly precomposes `φ` with partial conjugations that shrink the
//! complexity `Σ_u d(1, N(φ·J_u))` until every image hyperplane has its
//! carrier through the identity, at which point `φ` is a graph isometry
//! combined with vertex-group isomorphisms.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{SilWitness, Vertex, VertexSet};
use crate::groups::{GroupElement, GroupIso, IsoMap};
use crate::qm::{Hyperplane, SectorLabel};
use crate::words::{GraphProduct, NormalForm};

/// `(u, Λ, h)`: conjugates the vertex groups of the component `Λ` of
/// `Γ \ star(u)` by `h ∈ G_u`, fixing every other vertex group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialConjugation {
    pub u: Vertex,
    pub component: VertexSet,
    pub h: GroupElement,
}

/// `(σ, Φ)`: a graph isometry together with isomorphisms
/// `φ_u : G_u → G_{σ(u)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalAutomorphism {
    pub sigma: Vec<Vertex>,
    pub phis: Vec<GroupIso>,
}

impl LocalAutomorphism {
    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, v)| v.0 == i) && self.phis.iter().all(GroupIso::is_identity_map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Inner(NormalForm),
    Partial(PartialConjugation),
    Local(LocalAutomorphism),
}

/// A composition of generators, applied first to last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Automorphism {
    pub generators: Vec<Generator>,
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism::default()
    }

    pub fn single(g: Generator) -> Self {
        Automorphism { generators: vec![g] }
    }

    /// `other ∘ self`: apply `self`, then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Automorphism { generators }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexImage {
    /// `g_u`, a word of the target group.
    pub conjugator: NormalForm,
    /// `w_u`, a target vertex.
    pub target: Vertex,
    /// `ψ_u : G_u → H_{w_u}`.
    pub iso: GroupIso,
}

/// Per-vertex description `x ↦ g_u·ψ_u(x)·g_u⁻¹` of a map `ΓG → ΦH`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjugatingData {
    pub images: Vec<VertexImage>,
}

/// A pair of adjacent source vertices whose images fail to commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub u: Vertex,
    pub v: Vertex,
    pub a: GroupElement,
    pub b: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    /// `α₁, …, α_m` in the source group; `φ∘α₁∘⋯∘α_m` is local.
    pub partial_conjugations: Vec<PartialConjugation>,
    /// `s : Γ → Φ`.
    pub isometry: Vec<Vertex>,
    /// `χ_u : G_u → H_{s(u)}`.
    pub vertex_isos: Vec<GroupIso>,
    pub complexity_log: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FromImages {
    Conjugating(ConjugatingData),
    NotConjugating { vertex: Vertex, reason: String, core_length: Option<usize> },
}

impl ConjugatingData {
    pub fn identity(gp: &GraphProduct) -> Self {
        Self::inner(gp, &NormalForm::identity())
    }

    pub fn inner(gp: &GraphProduct, g: &NormalForm) -> Self {
        let images = gp
            .graph()
            .vertices()
            .map(|u| VertexImage {
                conjugator: g.clone(),
                target: u,
                iso: GroupIso::identity(u, gp.group(u)),
            })
            .collect();
        ConjugatingData { images }
    }

    /// Checks that the data is well formed for the given pair of products.
    pub fn validate(&self, source: &GraphProduct, target: &GraphProduct) -> Result<()> {
        if self.images.len() != source.graph().len() {
            return Err(Error::Document(format!(
                "conjugating data has {} entries for {} source vertices",
                self.images.len(),
                source.graph().len()
            )));
        }
        for (i, im) in self.images.iter().enumerate() {
            let u = Vertex(i);
            if !target.graph().contains(im.target) || im.iso.source != u || im.iso.target != im.target {
                return Err(Error::Document(format!(
                    "entry for {:?} is inconsistent",
                    source.graph().name(u)
                )));
            }
            target.word(im.conjugator.to_vec())?;
            GroupIso::new(u, source.group(u), im.target, target.group(im.target), im.iso.map.clone())
                .map_err(|reason| Error::InvalidGroup { vertex: source.graph().name(u).to_string(), reason })?;
        }
        Ok(())
    }

    pub fn syllable_image(&self, target: &GraphProduct, s: GroupElement) -> NormalForm {
        let im = &self.images[s.vertex.0];
        target.conjugate(&im.conjugator, &[im.iso.apply_element(s)])
    }

    pub fn apply(&self, target: &GraphProduct, w: &[GroupElement]) -> NormalForm {
        let mut out = NormalForm::identity();
        for &s in w {
            out = target.mul(&out, &self.syllable_image(target, s));
        }
        out
    }

    /// The relation check: images of adjacent vertex groups commute
    /// (all element pairs for finite groups, generators for infinite
    /// cyclic ones). Multiplicativity inside vertex groups holds by
    /// construction.
    pub fn relation_failure(&self, source: &GraphProduct, target: &GraphProduct) -> Option<RelationFailure> {
        let elems: Vec<Vec<GroupElement>> = source
            .graph()
            .vertices()
            .map(|u| source.group(u).test_elements().into_iter().map(|a| GroupElement::new(u, a)).collect())
            .collect();
        for (u, v) in source.graph().edges() {
            for &a in &elems[u.0] {
                let ia = self.syllable_image(target, a);
                for &b in &elems[v.0] {
                    let ib = self.syllable_image(target, b);
                    if !target.commute(&ia, &ib) {
                        return Some(RelationFailure { u, v, a, b });
                    }
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self, source: &GraphProduct, target: &GraphProduct) -> bool {
        self.relation_failure(source, target).is_none()
    }

    /// The hyperplane whose rotative stabiliser is `g_u·H_{w_u}·g_u⁻¹`.
    pub fn image_hyperplane(&self, target: &GraphProduct, u: Vertex) -> Hyperplane {
        let im = &self.images[u.0];
        target.hyperplane(im.target, &im.conjugator).expect("target vertex")
    }

    pub fn image_hyperplanes(&self, target: &GraphProduct) -> Vec<Hyperplane> {
        (0..self.images.len()).map(|u| self.image_hyperplane(target, Vertex(u))).collect()
    }

    pub fn complexity(&self, target: &GraphProduct) -> usize {
        self.image_hyperplanes(target).iter().map(|j| j.base.len()).sum()
    }

    /// Data for `α ∘ self`, where `α` is an automorphism of the target.
    /// `d ∘ (u,Λ,h)`: the conjugators of `Λ` are multiplied on the left by
    /// `d(h)`.
    pub fn precompose_partial(&self, target: &GraphProduct, p: &PartialConjugation) -> ConjugatingData {
        let x = self.syllable_image(target, p.h);
        let mut out = self.clone();
        for &u in &p.component {
            out.images[u.0].conjugator = target.mul(&x, &self.images[u.0].conjugator);
        }
        out
    }

    pub fn post_compose(&self, gp: &GraphProduct, gen: &Generator) -> ConjugatingData {
        let images = self
            .images
            .iter()
            .map(|im| match gen {
                Generator::Inner(t) => VertexImage { conjugator: gp.mul(t, &im.conjugator), ..im.clone() },
                Generator::Partial(p) => {
                    let g = gp.apply_generator(gen, &im.conjugator);
                    let conjugator =
                        if p.component.contains(&im.target) { gp.mul(&g, &[p.h]) } else { g };
                    VertexImage { conjugator, ..im.clone() }
                }
                Generator::Local(l) => VertexImage {
                    conjugator: gp.apply_generator(gen, &im.conjugator),
                    target: l.sigma[im.target.0],
                    iso: im.iso.then(&l.phis[im.target.0]),
                },
            })
            .collect();
        ConjugatingData { images }
    }
}

impl GraphProduct {
    pub fn partial_conjugation(&self, u: Vertex, component: VertexSet, h: GroupElement) -> Result<PartialConjugation> {
        let comps = self.graph().components_minus_star(u)?;
        if !comps.contains(&component) {
            return Err(Error::Precondition(format!(
                "{:?} is not a component of the graph minus star({:?})",
                self.graph().set_names(&component),
                self.graph().name(u)
            )));
        }
        if h.vertex != u {
            return Err(Error::VertexMismatch(format!(
                "conjugating element must lie in the group of {:?}",
                self.graph().name(u)
            )));
        }
        self.syllable(h.vertex, h.value)?;
        Ok(PartialConjugation { u, component, h })
    }

    pub fn local_automorphism(&self, sigma: Vec<Vertex>, maps: Vec<IsoMap>) -> Result<LocalAutomorphism> {
        if !self.graph().is_isometry_onto(self.graph(), &sigma) {
            return Err(Error::Precondition("sigma is not a graph isometry".into()));
        }
        if maps.len() != sigma.len() {
            return Err(Error::Document("one isomorphism per vertex is required".into()));
        }
        let phis = maps
            .into_iter()
            .enumerate()
            .map(|(u, m)| {
                let (u, t) = (Vertex(u), sigma[u]);
                GroupIso::new(u, self.group(u), t, self.group(t), m)
                    .map_err(|reason| Error::InvalidGroup { vertex: self.graph().name(u).to_string(), reason })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalAutomorphism { sigma, phis })
    }

    pub fn identity_local(&self) -> LocalAutomorphism {
        LocalAutomorphism {
            sigma: self.graph().vertices().collect(),
            phis: self.graph().vertices().map(|u| GroupIso::identity(u, self.group(u))).collect(),
        }
    }

    pub fn apply_generator(&self, gen: &Generator, w: &[GroupElement]) -> NormalForm {
        match gen {
            Generator::Inner(g) => self.conjugate(g, w),
            Generator::Partial(p) => {
                let mut out = Vec::with_capacity(w.len() * 3);
                let hi = self.syl_inv(p.h);
                for &s in w {
                    if p.component.contains(&s.vertex) {
                        out.extend([p.h, s, hi]);
                    } else {
                        out.push(s);
                    }
                }
                self.reduce(&out)
            }
            Generator::Local(l) => {
                let out: Vec<GroupElement> = w.iter().map(|&s| l.phis[s.vertex.0].apply_element(s)).collect();
                self.reduce(&out)
            }
        }
    }

    pub fn apply(&self, phi: &Automorphism, w: &[GroupElement]) -> NormalForm {
        let mut cur = self.reduce(w);
        for gen in &phi.generators {
            cur = self.apply_generator(gen, &cur);
        }
        cur
    }

    /// Whether two automorphisms agree on every test syllable.
    pub fn automorphisms_agree(&self, a: &Automorphism, b: &Automorphism) -> bool {
        self.test_syllables().into_iter().all(|s| self.apply(a, &[s]) == self.apply(b, &[s]))
    }

    pub fn to_conjugating_data(&self, phi: &Automorphism) -> ConjugatingData {
        phi.generators
            .iter()
            .fold(ConjugatingData::identity(self), |d, gen| d.post_compose(self, gen))
    }

    /// Decomposes a conjugating isomorphism `d : self → target`.
    pub fn decompose(&self, target: &GraphProduct, d: &ConjugatingData) -> Result<DecompositionResult> {
        d.validate(self, target)?;
        if let Some(f) = d.relation_failure(self, target) {
            return Err(Error::Precondition(format!(
                "not a homomorphism: images of {:?} and {:?} do not commute (edge {:?}-{:?})",
                f.a,
                f.b,
                self.graph().name(f.u),
                self.graph().name(f.v)
            )));
        }
        let mut cur = d.clone();
        let mut log = vec![cur.complexity(target)];
        let mut pcs = Vec::new();
        while *log.last().unwrap() > 0 {
            let keys = cur.image_hyperplanes(target);
            let (a, b) = self.reducing_pair(target, &keys)?;
            let ja = &keys[a.0];
            let c1 = target.sector_of(ja, &[]);
            let c2 = target.sector_of(ja, &keys[b.0].base);
            let h = target.group(ja.label);
            let c = h.mul(c1.value(), h.inv(c2.value()));
            let x = target.conjugate(&ja.base, &[GroupElement::new(ja.label, c)]);
            let ga = &cur.images[a.0].conjugator;
            let gai = target.inv(ga);
            let t = target.mul_all(&[&gai, &x, ga]);
            let y = match t.syllables() {
                [s] if s.vertex == cur.images[a.0].target => cur.images[a.0].iso.inverse().apply_element(*s),
                _ => {
                    return Err(Error::NotAnIsomorphism(format!(
                        "rotative stabiliser element for {:?} does not pull back to its vertex group",
                        self.graph().name(a)
                    )))
                }
            };
            let component = self
                .graph()
                .component_containing(a, b)?
                .expect("reducing pair vertices are non-adjacent");
            let pc = PartialConjugation { u: a, component, h: y };
            cur = cur.precompose_partial(target, &pc);
            pcs.push(pc);
            let next = cur.complexity(target);
            if next >= *log.last().unwrap() {
                return Err(Error::NotAnIsomorphism(format!(
                    "complexity did not drop ({} -> {next})",
                    log.last().unwrap()
                )));
            }
            log.push(next);
        }
        let isometry: Vec<Vertex> = cur.images.iter().map(|im| im.target).collect();
        if !self.graph().is_isometry_onto(target.graph(), &isometry) {
            return Err(Error::NotAnIsomorphism(
                "vertex assignment at complexity zero is not a graph isometry".into(),
            ));
        }
        let mut vertex_isos = Vec::with_capacity(isometry.len());
        for (i, im) in cur.images.iter().enumerate() {
            let u = Vertex(i);
            let group = self.group(u);
            let image = |a: i64| -> Option<i64> {
                let w = target.conjugate(&im.conjugator, &[im.iso.apply_element(GroupElement::new(u, a))]);
                match w.syllables() {
                    [] => Some(0),
                    [s] if s.vertex == im.target => Some(s.value),
                    _ => None,
                }
            };
            let map = match group.order() {
                Some(n) => IsoMap::Table((0..n as i64).map(image).collect::<Option<Vec<_>>>().ok_or_else(|| {
                    Error::NotAnIsomorphism(format!("image of {:?} leaves its vertex group", self.graph().name(u)))
                })?),
                None => IsoMap::Exponent(image(1).ok_or_else(|| {
                    Error::NotAnIsomorphism(format!("image of {:?} leaves its vertex group", self.graph().name(u)))
                })?),
            };
            let chi = GroupIso::new(u, group, im.target, target.group(im.target), map)
                .map_err(|r| Error::NotAnIsomorphism(format!("{:?}: {r}", self.graph().name(u))))?;
            vertex_isos.push(chi);
        }
        let result = DecompositionResult { partial_conjugations: pcs, isometry, vertex_isos, complexity_log: log };
        if let Some(s) = self.decomposition_mismatch(target, d, &result) {
            return Err(Error::NotAnIsomorphism(format!("replay check failed on syllable {s:?}")));
        }
        Ok(result)
    }

    /// First pair `(a, b)` in vertex order whose image hyperplanes are
    /// distinct, non-transverse, with `φ·J_a` separating `ε` from `φ·J_b`.
    fn reducing_pair(&self, target: &GraphProduct, keys: &[Hyperplane]) -> Result<(Vertex, Vertex)> {
        for a in 0..keys.len() {
            for b in 0..keys.len() {
                if a == b {
                    continue;
                }
                if keys[a] == keys[b] {
                    return Err(Error::NotAnIsomorphism(format!(
                        "{:?} and {:?} have the same image hyperplane",
                        self.graph().name(Vertex(a)),
                        self.graph().name(Vertex(b))
                    )));
                }
                if target.separates_from_identity(&keys[a], &keys[b]) {
                    if self.graph().adjacent(Vertex(a), Vertex(b)) {
                        return Err(Error::NotAnIsomorphism(format!(
                            "adjacent {:?}, {:?} have non-transverse images",
                            self.graph().name(Vertex(a)),
                            self.graph().name(Vertex(b))
                        )));
                    }
                    return Ok((Vertex(a), Vertex(b)));
                }
            }
        }
        Err(Error::NotAnIsomorphism("image family is peripheral but complexity is positive".into()))
    }

    /// Whether the reducing-pair predicate of `decompose` finds a pair, i.e.
    /// whether the image family of `d` is not peripheral.
    pub fn image_family_peripheral(&self, target: &GraphProduct, d: &ConjugatingData) -> bool {
        target.is_peripheral(&d.image_hyperplanes(target)).is_none()
    }

    /// Replays `d ∘ α₁ ∘ ⋯ ∘ α_m` on every test syllable and compares with
    /// `χ_u`. Returns the first mismatching syllable.
    pub fn decomposition_mismatch(
        &self,
        target: &GraphProduct,
        d: &ConjugatingData,
        r: &DecompositionResult,
    ) -> Option<GroupElement> {
        for s in self.test_syllables() {
            let mut w = self.elem(s);
            for pc in r.partial_conjugations.iter().rev() {
                w = self.apply_generator(&Generator::Partial(pc.clone()), &w);
            }
            let got = d.apply(target, &w);
            let want = target.elem(r.vertex_isos[s.vertex.0].apply_element(s));
            if got != want {
                return Some(s);
            }
        }
        None
    }

    /// Best-effort recognition of a conjugating map from generator images.
    /// `images[u]` lists `(element of G_u, image word in target)` pairs.
    pub fn conjugating_data_from_images(
        &self,
        target: &GraphProduct,
        images: &[Vec<(i64, NormalForm)>],
    ) -> Result<FromImages> {
        if images.len() != self.graph().len() {
            return Err(Error::Document("images must list every source vertex".into()));
        }
        let not = |u: Vertex, reason: &str, core_length| FromImages::NotConjugating { vertex: u, reason: reason.to_string(), core_length };
        // Pass 1: cyclic cores of one image per vertex group.
        let mut candidates = Vec::with_capacity(images.len());
        for (i, list) in images.iter().enumerate() {
            let u = Vertex(i);
            let Some((_, w)) = list.iter().find(|(a, _)| *a != 0) else {
                return Err(Error::Document(format!("no non-identity image given for {:?}", self.graph().name(u))));
            };
            let (core, conj) = target.cyclic_reduce(w);
            if core.len() != 1 {
                return Ok(not(u, "cyclic core of an image is not a single syllable", Some(core.len())));
            }
            candidates.push((conj, core[0].vertex));
        }
        // Pass 2: the whole vertex group conjugates into the candidate.
        let mut out = Vec::with_capacity(images.len());
        for (i, list) in images.iter().enumerate() {
            let u = Vertex(i);
            let group = self.group(u);
            let (g, w) = candidates[i].clone();
            let gi = target.inv(&g);
            let mut seeds = Vec::new();
            for (a, img) in list {
                if !group.contains(*a) {
                    return Err(Error::InvalidElement(format!("{a} is not in the group of {:?}", self.graph().name(u))));
                }
                let t = target.mul_all(&[&gi, img, &g]);
                let value = match t.syllables() {
                    [] => 0,
                    [s] if s.vertex == w => s.value,
                    _ => return Ok(not(u, "an image is not conjugate into the candidate vertex group", None)),
                };
                seeds.push((*a, value));
            }
            let map = match group.order() {
                Some(_) => match group.extend_homomorphism(target.group(w), &seeds) {
                    Ok(m) => IsoMap::Table(m),
                    Err(r) => return Ok(not(u, &r, None)),
                },
                None => {
                    let Some(&(a, v)) = seeds.iter().find(|(a, _)| *a != 0) else { unreachable!() };
                    if target.group(w).is_finite() || v % a != 0 || seeds.iter().any(|&(b, x)| x * a != v * b) {
                        return Ok(not(u, "images do not define an isomorphism onto the vertex group", None));
                    }
                    IsoMap::Exponent(v / a)
                }
            };
            match GroupIso::new(u, group, w, target.group(w), map) {
                Ok(iso) => out.push(VertexImage { conjugator: g, target: w, iso }),
                Err(r) => return Ok(not(u, &format!("not onto the vertex group: {r}"), None)),
            }
        }
        Ok(FromImages::Conjugating(ConjugatingData { images: out }))
    }

    /// `Out` of a graph product of finite groups is finite iff the graph
    /// has no SIL.
    pub fn out_finite(&self) -> Result<(bool, Option<SilWitness>)> {
        if !self.is_finite() {
            return Err(Error::Precondition("out-finiteness needs finite vertex groups".into()));
        }
        let w = self.graph().has_sil();
        Ok((w.is_none(), w))
    }

    /// All local automorphisms, identity first.
    pub fn local_automorphisms(&self) -> Result<Vec<LocalAutomorphism>> {
        self.require_finite("enumerating local automorphisms")?;
        let mut out = Vec::new();
        for sigma in self.graph().automorphisms() {
            let options: Vec<Vec<IsoMap>> = self
                .graph()
                .vertices()
                .map(|u| self.group(u).isomorphisms(self.group(sigma[u.0])))
                .collect();
            if options.iter().any(|o| o.is_empty()) {
                continue;
            }
            let mut choice = vec![0usize; options.len()];
            loop {
                let phis = self
                    .graph()
                    .vertices()
                    .map(|u| GroupIso { source: u, target: sigma[u.0], map: options[u.0][choice[u.0]].clone() })
                    .collect();
                out.push(LocalAutomorphism { sigma: sigma.clone(), phis });
                // odometer over the per-vertex choices
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < options[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
        if let Some(i) = out.iter().position(|l| l.is_identity()) {
            let id = out.remove(i);
            out.insert(0, id);
        }
        Ok(out)
    }

    /// Confirms that no non-identity local automorphism agrees with an inner
    /// automorphism by an element of the radius-2 ball.
    pub fn inn_loc_intersection_trivial(&self) -> Result<bool> {
        if self.graph().is_star_of_vertex() {
            return Err(Error::Precondition("the graph is the star of a vertex".into()));
        }
        let locals = self.local_automorphisms()?;
        let ball = self.build_ball(2)?;
        let syllables = self.all_syllables()?;
        for l in &locals {
            let images: Vec<NormalForm> =
                syllables.iter().map(|&s| self.apply_generator(&Generator::Local(l.clone()), &[s])).collect();
            for g in &ball.vertices {
                if l.is_identity() && g.is_identity() {
                    continue;
                }
                let agrees = syllables.iter().zip(&images).all(|(&s, im)| &self.conjugate(g, &[s]) == im);
                if agrees {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A random element of `ConjP`: a composition of `1..=max_len` partial
    /// conjugations, local automorphisms and conjugations by a syllable.
    pub fn random_conjp<R: Rng>(&self, rng: &mut R, max_len: usize) -> Result<Automorphism> {
        let locals = self.local_automorphisms()?;
        let syllables = self.all_syllables()?;
        let partials: Vec<(Vertex, VertexSet)> = self
            .graph()
            .vertices()
            .flat_map(|u| self.graph().components_minus_star(u).unwrap().into_iter().map(move |c| (u, c)))
            .collect();
        let len = rng.gen_range(1..=max_len.max(1));
        let mut generators = Vec::with_capacity(len);
        for _ in 0..len {
            let kind = rng.gen_range(0..10);
            let gen = if kind < 6 && !partials.is_empty() {
                let (u, c) = partials.choose(rng).unwrap().clone();
                let h = *self.group(u).enumerate()?.choose(rng).unwrap();
                Generator::Partial(PartialConjugation { u, component: c, h: GroupElement::new(u, h) })
            } else if kind < 8 {
                Generator::Local(locals.choose(rng).unwrap().clone())
            } else {
                Generator::Inner(self.elem(*syllables.choose(rng).unwrap()))
            };
            generators.push(gen);
        }
        Ok(Automorphism { generators })
    }

    /// Sector label of `ε` relative to `J`; convenience for diagnostics.
    pub fn identity_sector(&self, j: &Hyperplane) -> SectorLabel {
        self.sector_of(j, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimplicialGraph;
    use crate::groups::VertexGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c5() -> GraphProduct {
        GraphProduct::racg(SimplicialGraph::cycle(5))
    }

    fn x(v: usize) -> GroupElement {
        GroupElement::new(Vertex(v), 1)
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().map(|&v| Vertex(v)).collect()
    }

    fn rotation(g: &GraphProduct) -> LocalAutomorphism {
        let n = g.graph().len();
        let sigma = (0..n).map(|i| Vertex((i + 1) % n)).collect();
        let maps = (0..n).map(|_| IsoMap::Table(vec![0, 1])).collect();
        g.local_automorphism(sigma, maps).unwrap()
    }

    #[test]
    fn apply_examples() {
        let g = c5();
        let pc = Generator::Partial(g.partial_conjugation(Vertex(0), set(&[2, 3]), x(0)).unwrap());
        assert_eq!(g.apply_generator(&pc, &[x(2)]).syllables(), &[x(0), x(2), x(0)]);
        assert_eq!(g.apply_generator(&pc, &[x(1)]).syllables(), &[x(1)]);
        let rot = Generator::Local(rotation(&g));
        assert_eq!(g.apply_generator(&rot, &[x(0), x(2)]).syllables(), &[x(1), x(3)]);
    }

    #[test]
    fn partial_conjugation_validation() {
        let g = c5();
        assert!(g.partial_conjugation(Vertex(0), set(&[2]), x(0)).is_err());
        assert!(g.partial_conjugation(Vertex(0), set(&[2, 3]), x(1)).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        let g = c5();
        let inner = ConjugatingData::inner(&g, &g.gens_word(&[0]));
        assert!(inner.is_homomorphism(&g, &g));
        assert!(ConjugatingData::identity(&g).is_homomorphism(&g, &g));
        // G₁ ↦ x₀G₂x₀⁻¹ while G₀ stays: the images of the edge 0-1 do not commute
        let mut bad = ConjugatingData::identity(&g);
        bad.images[1] = VertexImage {
            conjugator: g.gens_word(&[0]),
            target: Vertex(2),
            iso: GroupIso { source: Vertex(1), target: Vertex(2), map: IsoMap::Table(vec![0, 1]) },
        };
        let f = bad.relation_failure(&g, &g).unwrap();
        assert_eq!((f.u, f.v), (Vertex(0), Vertex(1)));
    }

    #[test]
    fn image_hyperplane_and_complexity_examples() {
        let g = c5();
        let inner = ConjugatingData::inner(&g, &g.gens_word(&[0]));
        let j2 = inner.image_hyperplane(&g, Vertex(2));
        assert_eq!((j2.label, j2.base.syllables()), (Vertex(2), &[x(0)][..]));
        assert!(inner.image_hyperplane(&g, Vertex(1)).base.is_identity());
        assert_eq!(inner.complexity(&g), 2);
        assert_eq!(ConjugatingData::identity(&g).complexity(&g), 0);
        assert_eq!(ConjugatingData::inner(&g, &g.gens_word(&[0, 2])).complexity(&g), 6);
    }

    #[test]
    fn decompose_inner_by_x0() {
        let g = c5();
        let d = ConjugatingData::inner(&g, &g.gens_word(&[0]));
        let r = g.decompose(&g, &d).unwrap();
        assert_eq!(r.complexity_log, vec![2, 0]);
        assert_eq!(r.partial_conjugations, vec![PartialConjugation { u: Vertex(0), component: set(&[2, 3]), h: x(0) }]);
        assert_eq!(r.isometry, (0..5).map(Vertex).collect::<Vec<_>>());
    }

    #[test]
    fn decompose_identity() {
        let g = c5();
        let r = g.decompose(&g, &ConjugatingData::identity(&g)).unwrap();
        assert!(r.partial_conjugations.is_empty());
        assert_eq!(r.complexity_log, vec![0]);
    }

    #[test]
    fn decompose_random_round_trip() {
        let g = c5();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let phi = g.random_conjp(&mut rng, 6).unwrap();
            let d = g.to_conjugating_data(&phi);
            for s in g.test_syllables() {
                assert_eq!(d.apply(&g, &[s]), g.apply(&phi, &[s]));
            }
            let r = g.decompose(&g, &d).unwrap();
            assert!(r.complexity_log.windows(2).all(|w| w[0] > w[1]));
            assert!(g.decomposition_mismatch(&g, &d, &r).is_none());
        }
    }

    #[test]
    fn decompose_rejects_non_homomorphisms() {
        let g = c5();
        let mut bad = ConjugatingData::identity(&g);
        bad.images[1].conjugator = g.gens_word(&[3]);
        assert!(matches!(g.decompose(&g, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn decompose_rejects_non_injective_data() {
        // both vertices of Z2*Z2 sent to the same vertex group
        let free = GraphProduct::racg(SimplicialGraph::from_indices(2, &[]).unwrap());
        let mut d = ConjugatingData::identity(&free);
        d.images[1] = VertexImage {
            conjugator: free.gens_word(&[1]),
            target: Vertex(0),
            iso: GroupIso { source: Vertex(1), target: Vertex(0), map: IsoMap::Table(vec![0, 1]) },
        };
        assert!(matches!(free.decompose(&free, &d), Err(Error::NotAnIsomorphism(_))));
    }

    #[test]
    fn from_images_examples() {
        let free = GraphProduct::racg(SimplicialGraph::from_indices(2, &[]).unwrap());
        let (a, b) = (free.gens_word(&[0]), free.gens_word(&[1]));
        let transvection = vec![vec![(1, free.gens_word(&[0, 1]))], vec![(1, b.clone())]];
        match free.conjugating_data_from_images(&free, &transvection).unwrap() {
            FromImages::NotConjugating { vertex, core_length, .. } => {
                assert_eq!((vertex, core_length), (Vertex(0), Some(2)))
            }
            other => panic!("expected a negative answer, got {other:?}"),
        }
        let conj = vec![vec![(1, free.gens_word(&[1, 0, 1]))], vec![(1, b.clone())]];
        match free.conjugating_data_from_images(&free, &conj).unwrap() {
            FromImages::Conjugating(d) => {
                assert_eq!(d.images[0].conjugator, b);
                assert_eq!(d.images[0].target, Vertex(0));
            }
            other => panic!("{other:?}"),
        }
        let id = vec![vec![(1, a)], vec![(1, b)]];
        assert_eq!(
            free.conjugating_data_from_images(&free, &id).unwrap(),
            FromImages::Conjugating(ConjugatingData::identity(&free))
        );
    }

    #[test]
    fn out_finite_examples() {
        assert!(c5().out_finite().unwrap().0);
        let k13 = GraphProduct::racg(
            SimplicialGraph::new(&["u", "v", "z", "w"], &[("w", "u"), ("w", "v"), ("w", "z")]).unwrap(),
        );
        let (fin, w) = k13.out_finite().unwrap();
        assert!(!fin);
        assert_eq!(w.unwrap().component, set(&[2]));
        assert!(GraphProduct::racg(SimplicialGraph::complete(2)).out_finite().unwrap().0);
        let z = GraphProduct::uniform(SimplicialGraph::path(2), VertexGroup::Infinite);
        assert!(matches!(z.out_finite(), Err(Error::Precondition(_))));
    }

    #[test]
    fn inn_loc_examples() {
        assert_eq!(c5().local_automorphisms().unwrap().len(), 10);
        assert!(c5().inn_loc_intersection_trivial().unwrap());
        let free = GraphProduct::racg(SimplicialGraph::from_indices(2, &[]).unwrap());
        assert!(free.inn_loc_intersection_trivial().unwrap());
        let star = GraphProduct::racg(SimplicialGraph::path(3));
        assert!(matches!(star.inn_loc_intersection_trivial(), Err(Error::Precondition(_))));
    }

    #[test]
    fn partial_conjugation_inverse() {
        let g = GraphProduct::uniform(SimplicialGraph::cycle(5), VertexGroup::cyclic(3).unwrap());
        let h = GroupElement::new(Vertex(0), 1);
        let pc = g.partial_conjugation(Vertex(0), set(&[2, 3]), h).unwrap();
        let inv = PartialConjugation { h: g.syl_inv(h), ..pc.clone() };
        let phi = Automorphism { generators: vec![Generator::Partial(pc), Generator::Partial(inv)] };
        assert!(g.automorphisms_agree(&phi, &Automorphism::identity()));
    }
}
