//! Invariant suites replayed by `graphprod verify`.
//!
//! Each check compares an algebraic computation against an independent
//! enumeration over a finite ball (closure classes of edges, BFS layers,
//! explicit element sets) and reports a pass/fail line with a short detail.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automorphisms::{Automorphism, ConjugatingData, Generator, PartialConjugation};
use crate::error::{Error, Result};
use crate::davis::{DavisBall, DavisVertex};
use crate::graph::{Vertex, VertexSet};
use crate::groups::GroupElement;
use crate::qm::{Hyperplane, ParabolicCoset, QmBall};
use crate::words::{GraphProduct, NormalForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckReport { name: name.to_string(), passed, detail: detail.into() }
    }

    fn from_failures(name: &str, checked: usize, failures: &[String]) -> Self {
        match failures.first() {
            None => Self::new(name, true, format!("{checked} cases")),
            Some(first) => Self::new(name, false, format!("{} of {checked} cases fail; first: {first}", failures.len())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Qm,
    Davis,
    Auto,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "qm" => Ok(Suite::Qm),
            "davis" => Ok(Suite::Davis),
            "auto" => Ok(Suite::Auto),
            other => Err(Error::Document(format!("unknown suite {other:?}; expected all, qm, davis or auto"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub radius: usize,
    pub seed: u64,
    /// Random automorphisms drawn by the automorphism suite.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { radius: 3, seed: 0, samples: 50 }
    }
}

/// Runs the selected suites; reports are ordered by check name.
pub fn run_suite(gp: &GraphProduct, suite: Suite, cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::All | Suite::Qm) {
        out.extend(qm_suite(gp, cfg.radius)?);
    }
    if matches!(suite, Suite::All | Suite::Davis) {
        out.extend(davis_suite(gp, cfg.radius)?);
    }
    if matches!(suite, Suite::All | Suite::Auto) {
        out.extend(automorphism_suite(gp, cfg)?);
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

fn fmt_word(w: &[GroupElement]) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    w.iter().map(|s| format!("{}^{}", s.vertex.0, s.value)).collect::<Vec<_>>().join(" ")
}

fn fmt_key(j: &Hyperplane) -> String {
    format!("({}, {})", j.label.0, fmt_word(&j.base))
}

// ------------------------------------------------------------------ qm suite

pub fn qm_suite(gp: &GraphProduct, radius: usize) -> Result<Vec<CheckReport>> {
    let ball = gp.build_ball(radius)?;
    let cells = BallCells::new(&ball);
    Ok(vec![
        hyperplane_keys_well_defined(gp, &ball, &cells),
        edge_dual_equivalence(gp, &ball),
        distance_duality(gp, radius)?,
        geodesics_cross_once(gp, &ball),
        cliques_are_cosets(gp, &ball, &cells),
        cubical_dimension(gp, &ball, &cells),
        transverse_iff_square(gp, &ball, &cells),
        factor_graph_isomorphism(gp, &ball)?,
        gates_are_nearest_points(gp, &ball),
        gate_pairs_realise_distance(gp, &ball),
        projections_preserve_separation(gp, &ball),
        rotative_stabiliser_action(gp, &ball)?,
        stabiliser_shortens_distance(gp, &ball)?,
    ])
}

/// Triangles and squares of a quasi-median ball, found by enumeration.
pub struct BallCells {
    pub triangles: Vec<[usize; 3]>,
    /// Squares as `[(e1, e1'), (e2, e2')]`: two pairs of opposite edges.
    pub squares: Vec<[(usize, usize); 2]>,
}

impl BallCells {
    pub fn new(ball: &QmBall) -> Self {
        let adj = ball.adjacency();
        let edge: HashMap<(usize, usize), usize> =
            ball.edges.iter().enumerate().map(|(i, e)| ((e.from.min(e.to), e.from.max(e.to)), i)).collect();
        let find = |a: usize, b: usize| edge.get(&(a.min(b), a.max(b))).copied();
        let mut triangles = Vec::new();
        let mut squares = Vec::new();
        for a in 0..ball.vertices.len() {
            for &(b, _) in &adj[a] {
                for &(c, _) in &adj[a] {
                    if a < b && b < c {
                        if let Some(bc) = find(b, c) {
                            triangles.push([find(a, b).unwrap(), bc, find(a, c).unwrap()]);
                        }
                    }
                }
            }
            // squares a-b-c-d with a the smallest index and b < d
            for &(b, ab) in &adj[a] {
                for &(d, ad) in &adj[a] {
                    if b >= d || b < a || d < a || find(b, d).is_some() {
                        continue;
                    }
                    for &(c, bc) in &adj[b] {
                        if c <= a || find(a, c).is_some() {
                            continue;
                        }
                        if let Some(dc) = find(d, c) {
                            squares.push([(ab, dc), (ad, bc)]);
                        }
                    }
                }
            }
        }
        BallCells { triangles, squares }
    }
}

fn union_find_classes(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Edges related by "common triangle" or "opposite in a square" carry the
/// same hyperplane key.
pub fn hyperplane_keys_well_defined(gp: &GraphProduct, ball: &QmBall, cells: &BallCells) -> CheckReport {
    let pairs = cells
        .triangles
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2])])
        .chain(cells.squares.iter().flat_map(|s| s.iter().copied()));
    let class = union_find_classes(ball.edges.len(), pairs);
    let mut key_of: HashMap<usize, &Hyperplane> = HashMap::new();
    let mut failures = Vec::new();
    for (e, &c) in class.iter().enumerate() {
        let k = &ball.edges[e].hyperplane;
        let recomputed = gp.hyperplane_of_edge(&ball.vertices[ball.edges[e].from], ball.edges[e].generator);
        if recomputed.as_ref().ok() != Some(k) {
            failures.push(format!("edge {e} stores a stale key"));
        }
        match key_of.get(&c) {
            Some(prev) if *prev != k => failures.push(format!("edge {e}: {} vs {}", fmt_key(prev), fmt_key(k))),
            Some(_) => {}
            None => {
                key_of.insert(c, k);
            }
        }
    }
    CheckReport::from_failures("hyperplane-keys-well-defined", ball.edges.len(), &failures)
}

/// For every edge and hyperplane: the edge's key is `J` ⇔ the edge starts in
/// the carrier of `J` with a syllable of `J`'s label ⇔ the endpoints have
/// different clique projections onto `J`.
pub fn edge_dual_equivalence(gp: &GraphProduct, ball: &QmBall) -> CheckReport {
    let hyperplanes = ball.hyperplanes();
    let stars: Vec<VertexSet> = gp.graph().vertices().map(|u| gp.graph().star(u).unwrap()).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, e) in ball.edges.iter().enumerate() {
        let x = &ball.vertices[e.from];
        let y = &ball.vertices[e.to];
        let s = e.generator;
        let key = gp.hyperplane_of_edge(x, s).expect("ball edge");
        for j in &hyperplanes {
            let by_key = key == *j;
            let in_carrier = s.vertex == j.label && {
                let bi = gp.inv(&j.base);
                gp.in_parabolic(&gp.mul(&bi, x), &stars[j.label.0])
            };
            let by_sector = gp.sector_of(j, x) != gp.sector_of(j, y);
            checked += 1;
            if by_key != in_carrier || by_key != by_sector {
                failures.push(format!(
                    "edge {i} vs {}: key {by_key}, carrier {in_carrier}, sectors {by_sector}",
                    fmt_key(j)
                ));
            }
        }
    }
    CheckReport::from_failures("edge-dual-hyperplane-equivalence", checked, &failures)
}

/// For all pairs of the radius-`r` ball: the BFS distance (read from the
/// layers of the radius-`2r` ball) equals the number of hyperplanes crossed
/// by a BFS geodesic; those hyperplanes are distinct, each separates the
/// endpoints by sector labels, and they agree with `separating_hyperplanes`.
pub fn distance_duality(gp: &GraphProduct, radius: usize) -> Result<CheckReport> {
    let small = gp.build_ball(radius)?;
    let big = gp.build_ball(2 * radius)?;
    let layer: Vec<usize> = big.vertices.iter().map(NormalForm::len).collect();
    // BFS parent along a lowest-index edge from the previous layer
    let mut parent: Vec<Option<(usize, GroupElement)>> = vec![None; big.vertices.len()];
    for e in &big.edges {
        let (a, b) = (e.from, e.to);
        let (lo, hi) = if layer[a] < layer[b] { (a, b) } else { (b, a) };
        if layer[hi] == layer[lo] + 1 && parent[hi].is_none() {
            let step = gp.mul(&gp.inv(&big.vertices[lo]), &big.vertices[hi]);
            parent[hi] = Some((lo, step[0]));
        }
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in &small.vertices {
        let xi = gp.inv(x);
        for y in &small.vertices {
            checked += 1;
            let z = gp.mul(&xi, y);
            let Some(mut k) = big.index_of(&z) else {
                failures.push(format!("{} not within distance {}", fmt_word(&z), 2 * radius));
                continue;
            };
            // walk the BFS geodesic from z back to ε, translated by x
            let mut keys = Vec::new();
            while let Some((p, s)) = parent[k] {
                let start = gp.mul(x, &big.vertices[p]);
                keys.push(gp.hyperplane_of_edge(&start, s)?);
                k = p;
            }
            let distinct: BTreeSet<&Hyperplane> = keys.iter().collect();
            let algebraic: BTreeSet<Hyperplane> = gp.separating_hyperplanes(x, y).into_iter().collect();
            if keys.len() != layer[big.index_of(&z).unwrap()] || distinct.len() != keys.len() {
                failures.push(format!("geodesic {} → {} repeats a hyperplane", fmt_word(x), fmt_word(y)));
            } else if keys.iter().any(|j| !gp.separates(j, x, y)) {
                failures.push(format!("a geodesic hyperplane does not separate {} from {}", fmt_word(x), fmt_word(y)));
            } else if gp.distance(x, y) != keys.len() || algebraic.len() != keys.len() || !keys.iter().all(|j| algebraic.contains(j)) {
                failures.push(format!("distance mismatch for {} → {}", fmt_word(x), fmt_word(y)));
            }
        }
    }
    Ok(CheckReport::from_failures("distance-equals-separating-hyperplanes", checked, &failures))
}

/// Every edge that increases the distance from `ε` crosses a hyperplane
/// separating `ε` from its far endpoint but not from its near one, so BFS
/// geodesics from `ε` never cross a hyperplane twice.
pub fn geodesics_cross_once(gp: &GraphProduct, ball: &QmBall) -> CheckReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, e) in ball.edges.iter().enumerate() {
        let (a, b) = (&ball.vertices[e.from], &ball.vertices[e.to]);
        let (near, far) = match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Less => (a, b),
            std::cmp::Ordering::Greater => (b, a),
            std::cmp::Ordering::Equal => continue,
        };
        checked += 1;
        let j = &e.hyperplane;
        if gp.separates(j, &[], near) || !gp.separates(j, &[], far) {
            failures.push(format!("edge {i} with key {}", fmt_key(j)));
        }
    }
    CheckReport::from_failures("geodesics-cross-each-hyperplane-once", checked, &failures)
}

/// Triangles are monochromatic with one key, and each `xG_u` in the ball
/// is a clique.
pub fn cliques_are_cosets(gp: &GraphProduct, ball: &QmBall, cells: &BallCells) -> CheckReport {
    let mut failures = Vec::new();
    for t in &cells.triangles {
        let e: Vec<_> = t.iter().map(|&i| &ball.edges[i]).collect();
        if e.iter().any(|x| x.generator.vertex != e[0].generator.vertex || x.hyperplane != e[0].hyperplane) {
            failures.push(format!("triangle on edges {t:?} mixes labels"));
        }
    }
    let edges: HashSet<(usize, usize)> = ball.edges.iter().map(|e| (e.from.min(e.to), e.from.max(e.to))).collect();
    let mut checked = cells.triangles.len();
    for (i, x) in ball.vertices.iter().enumerate() {
        for u in gp.graph().vertices() {
            let Ok(elements) = gp.group(u).elements() else { continue };
            let members: Vec<usize> = elements
                .iter()
                .filter_map(|&a| if a == 0 { Some(i) } else { ball.index_of(&gp.mul(x, &[GroupElement::new(u, a)])) })
                .collect();
            checked += 1;
            for (k, &a) in members.iter().enumerate() {
                for &b in &members[k + 1..] {
                    if !edges.contains(&(a.min(b), a.max(b))) {
                        failures.push(format!("{}·G_{} is not a clique", fmt_word(x), u.0));
                    }
                }
            }
        }
    }
    CheckReport::from_failures("cliques-are-vertex-group-cosets", checked, &failures)
}

/// The largest set of labels at `ε` whose edges pairwise span squares of
/// the ball has the size of the largest clique of the graph.
pub fn cubical_dimension(gp: &GraphProduct, ball: &QmBall, cells: &BallCells) -> CheckReport {
    let identity = ball.index_of(&NormalForm::identity()).unwrap_or(0);
    let mut spans: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for s in &cells.squares {
        let [(a, _), (b, _)] = *s;
        let (ea, eb) = (&ball.edges[a], &ball.edges[b]);
        let touches = |e: &crate::qm::QmEdge| e.from == identity || e.to == identity;
        if touches(ea) && touches(eb) {
            let (u, v) = (ea.generator.vertex, eb.generator.vertex);
            spans.insert((u.min(v), u.max(v)));
        }
    }
    // largest clique in the label graph at ε
    let labels: Vec<Vertex> = gp.graph().vertices().collect();
    let mut best = usize::from(!labels.is_empty());
    let mut stack: Vec<Vec<Vertex>> = labels.iter().map(|&v| vec![v]).collect();
    while let Some(c) = stack.pop() {
        best = best.max(c.len());
        let last = *c.last().unwrap();
        for &n in labels.iter().filter(|&&n| n > last) {
            if c.iter().all(|&m| spans.contains(&(m, n))) {
                let mut next = c.clone();
                next.push(n);
                stack.push(next);
            }
        }
    }
    let want = gp.graph().clique_number();
    if ball.radius < 2 && want > 1 {
        return CheckReport::new("cubical-dimension-equals-clique-number", true, "radius below 2: not applicable");
    }
    CheckReport::new(
        "cubical-dimension-equals-clique-number",
        best == want,
        format!("dimension at ε {best}, clique number {want}"),
    )
}

/// Algebraic transversality equals "some square of the ball has both keys".
/// Transverse pairs whose carriers first meet too far out for the square to
/// fit in the ball are skipped.
pub fn transverse_iff_square(gp: &GraphProduct, ball: &QmBall, cells: &BallCells) -> CheckReport {
    let mut crossing: HashSet<(&Hyperplane, &Hyperplane)> = HashSet::new();
    for s in &cells.squares {
        let (a, b) = (&ball.edges[s[0].0].hyperplane, &ball.edges[s[1].0].hyperplane);
        crossing.insert((a.min(b), a.max(b)));
    }
    let hs = ball.hyperplanes();
    let (mut failures, mut checked, mut skipped) = (Vec::new(), 0, 0);
    for (i, a) in hs.iter().enumerate() {
        for b in &hs[i + 1..] {
            let crosses = crossing.contains(&(a, b));
            let transverse = gp.transverse(a, b);
            if transverse && !crosses {
                let (x, _) = gp.coset_gate_pair(&gp.carrier(a), &gp.carrier(b));
                if x.len() + 2 > ball.radius {
                    skipped += 1;
                    continue;
                }
            }
            checked += 1;
            if crosses != transverse {
                failures.push(format!("{} / {}: square {crosses}, transverse {transverse}", fmt_key(a), fmt_key(b)));
            }
        }
    }
    let mut r = CheckReport::from_failures("transverse-iff-square", checked, &failures);
    r.detail.push_str(&format!(", {skipped} skipped at the boundary"));
    r
}

/// `J ↦ base·G_label·base⁻¹` is injective on the ball's hyperplanes (as
/// explicit element sets), and transversality equals elementwise
/// commutation of the conjugate factors.
pub fn factor_graph_isomorphism(gp: &GraphProduct, ball: &QmBall) -> Result<CheckReport> {
    let hs = ball.hyperplanes();
    let mut subgroups: Vec<Vec<NormalForm>> = Vec::with_capacity(hs.len());
    for j in &hs {
        let (p, u) = gp.rotative_stabiliser(j);
        let mut els: Vec<NormalForm> = gp
            .group(u)
            .enumerate()?
            .into_iter()
            .map(|a| gp.conjugate(&p, &[GroupElement::new(u, a)]))
            .collect();
        els.sort();
        subgroups.push(els);
    }
    let mut failures = Vec::new();
    let distinct: BTreeSet<&Vec<NormalForm>> = subgroups.iter().collect();
    if distinct.len() != hs.len() {
        failures.push(format!("{} hyperplanes but {} distinct conjugate factors", hs.len(), distinct.len()));
    }
    let mut checked = 1;
    for i in 0..hs.len() {
        for k in i + 1..hs.len() {
            checked += 1;
            let commute = subgroups[i].iter().all(|a| subgroups[k].iter().all(|b| gp.commute(a, b)));
            if commute != gp.transverse(&hs[i], &hs[k]) {
                failures.push(format!("{} / {}: commute {commute}", fmt_key(&hs[i]), fmt_key(&hs[k])));
            }
        }
    }
    Ok(CheckReport::from_failures("factor-graph-isomorphism", checked, &failures))
}

/// Distinct cosets `g⟨Λ⟩` with `|g| ≤ 1` and non-empty complete `Λ`, with
/// their elements inside the ball.
fn sample_cosets(gp: &GraphProduct, ball: &QmBall) -> Vec<(ParabolicCoset, Vec<usize>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in ball.vertices.iter().filter(|g| g.len() <= 1) {
        for lambda in gp.graph().complete_subsets().into_iter().filter(|l| !l.is_empty()) {
            let p = gp.parabolic(lambda, g);
            if !seen.insert((p.lambda.clone(), p.rep.clone())) {
                continue;
            }
            let ri = gp.inv(&p.rep);
            let members = (0..ball.vertices.len())
                .filter(|&i| gp.in_parabolic(&gp.mul(&ri, &ball.vertices[i]), &p.lambda))
                .collect();
            out.push((p, members));
        }
    }
    out
}

/// The gate of `x` lies in the coset, is nearest among the coset's ball
/// points, and every hyperplane separating `x` from it separates `x` from
/// the whole coset.
pub fn gates_are_nearest_points(gp: &GraphProduct, ball: &QmBall) -> CheckReport {
    let (mut failures, mut checked) = (Vec::new(), 0);
    for (p, members) in sample_cosets(gp, ball) {
        let ri = gp.inv(&p.rep);
        for x in &ball.vertices {
            checked += 1;
            let gate = gp.project_parabolic(&p, x);
            if !gp.in_parabolic(&gp.mul(&ri, &gate), &p.lambda) {
                failures.push(format!("gate of {} is outside the coset", fmt_word(x)));
                continue;
            }
            let d = gp.distance(x, &gate);
            let sep = gp.separating_hyperplanes(x, &gate);
            for &q in &members {
                let q = &ball.vertices[q];
                if gp.distance(x, q) < d || sep.iter().any(|j| !gp.separates(j, x, q)) {
                    failures.push(format!("gate of {} onto {:?}·{}", fmt_word(x), p.lambda, fmt_word(&p.rep)));
                    break;
                }
            }
        }
    }
    CheckReport::from_failures("gates-are-nearest-points", checked, &failures)
}

/// Gate pairs realise the distance between cosets, and the hyperplanes
/// separating the gates separate the cosets' ball points.
pub fn gate_pairs_realise_distance(gp: &GraphProduct, ball: &QmBall) -> CheckReport {
    let cosets = sample_cosets(gp, ball);
    let (mut failures, mut checked) = (Vec::new(), 0);
    for (a, (pa, ma)) in cosets.iter().enumerate() {
        for (pb, mb) in &cosets[a + 1..] {
            checked += 1;
            let (x, y) = gp.coset_gate_pair(pa, pb);
            let d = gp.distance(&x, &y);
            let inside = |p: &ParabolicCoset, g: &NormalForm| gp.in_parabolic(&gp.mul(&gp.inv(&p.rep), g), &p.lambda);
            if !inside(pa, &x) || !inside(pb, &y) {
                failures.push("gate pair outside its cosets".to_string());
                continue;
            }
            let sep = gp.separating_hyperplanes(&x, &y);
            'outer: for &i in ma {
                for &k in mb {
                    let (p, q) = (&ball.vertices[i], &ball.vertices[k]);
                    if gp.distance(p, q) < d || sep.iter().any(|j| !gp.separates(j, p, q)) {
                        failures.push(format!("cosets {:?}·{} and {:?}·{}", pa.lambda, fmt_word(&pa.rep), pb.lambda, fmt_word(&pb.rep)));
                        break 'outer;
                    }
                }
            }
        }
    }
    CheckReport::from_failures("gate-pairs-realise-coset-distance", checked, &failures)
}

/// Hyperplanes separating the gates of `x` and `y` in a coset are exactly
/// the hyperplanes separating `x` from `y` that cross the coset.
pub fn projections_preserve_separation(gp: &GraphProduct, ball: &QmBall) -> CheckReport {
    let cosets = sample_cosets(gp, ball);
    let points: Vec<&NormalForm> = ball.vertices.iter().filter(|g| g.len() <= 2).collect();
    let (mut failures, mut checked) = (Vec::new(), 0);
    for (p, _) in &cosets {
        for x in &points {
            for y in &points {
                checked += 1;
                let (px, py) = (gp.project_parabolic(p, x), gp.project_parabolic(p, y));
                let lhs: BTreeSet<Hyperplane> = gp.separating_hyperplanes(&px, &py).into_iter().collect();
                let rhs: BTreeSet<Hyperplane> = gp
                    .separating_hyperplanes(x, y)
                    .into_iter()
                    .filter(|j| p.lambda.contains(&j.label) && gp.cosets_meet(&gp.carrier(j), p))
                    .collect();
                if lhs != rhs {
                    failures.push(format!("{} / {} onto {:?}·{}", fmt_word(x), fmt_word(y), p.lambda, fmt_word(&p.rep)));
                }
            }
        }
    }
    CheckReport::from_failures("projections-preserve-separation", checked, &failures)
}

/// The rotative stabiliser of `J` permutes `J`'s sectors freely and
/// transitively, and fixes every transverse hyperplane together with its
/// sectors.
pub fn rotative_stabiliser_action(gp: &GraphProduct, ball: &QmBall) -> Result<CheckReport> {
    let hs = ball.hyperplanes();
    let (mut failures, mut checked) = (Vec::new(), 0);
    for j in &hs {
        let (p, u) = gp.rotative_stabiliser(j);
        let elements = gp.group(u).elements()?;
        let stab: Vec<NormalForm> =
            elements.iter().map(|&a| if a == 0 { NormalForm::identity() } else { gp.conjugate(&p, &[GroupElement::new(u, a)]) }).collect();
        let labels: BTreeSet<i64> = stab.iter().map(|g| gp.sector_of(j, g).value()).collect();
        checked += 1;
        if labels.len() != elements.len() {
            failures.push(format!("stabiliser of {} is not simply transitive on sectors", fmt_key(j)));
        }
        for k in hs.iter().filter(|k| gp.transverse(j, k)) {
            checked += 1;
            for g in &stab {
                if gp.translate(g, k) != *k
                    || gp.sector_of(k, g) != gp.sector_of(k, &[])
                    || gp.sector_of(k, &gp.mul(g, &k.base)) != gp.sector_of(k, &k.base)
                {
                    failures.push(format!("stabiliser of {} moves sectors of {}", fmt_key(j), fmt_key(k)));
                    break;
                }
            }
        }
    }
    Ok(CheckReport::from_failures("rotative-stabiliser-action", checked, &failures))
}

/// When `J` separates `ε` from `H` and `g ∈ stab(J)` moves `H` into the
/// sector of `ε`, the carrier of `gH` is strictly closer to `ε`.
pub fn stabiliser_shortens_distance(gp: &GraphProduct, ball: &QmBall) -> Result<CheckReport> {
    let hs = ball.hyperplanes();
    let dist = |h: &Hyperplane| gp.project_parabolic(&gp.carrier(h), &[]).len();
    let (mut failures, mut checked) = (Vec::new(), 0);
    for j in &hs {
        let (p, u) = gp.rotative_stabiliser(j);
        let target = gp.sector_of(j, &[]);
        for h in hs.iter().filter(|h| gp.separates_from_identity(j, h)) {
            checked += 1;
            let mover = gp.group(u).enumerate()?.into_iter().map(|a| gp.conjugate(&p, &[GroupElement::new(u, a)])).find(|g| {
                let moved = gp.translate(g, h);
                gp.sector_of(j, &moved.base) == target
            });
            match mover {
                Some(g) if dist(&gp.translate(&g, h)) < dist(h) => {}
                Some(_) => failures.push(format!("{} does not shorten {}", fmt_key(j), fmt_key(h))),
                None => failures.push(format!("no element of stab {} moves {}", fmt_key(j), fmt_key(h))),
            }
        }
    }
    Ok(CheckReport::from_failures("stabiliser-shortens-carrier-distance", checked, &failures))
}

// ------------------------------------------------------------------ Davis suite

pub fn davis_suite(gp: &GraphProduct, radius: usize) -> Result<Vec<CheckReport>> {
    let ball = gp.build_davis_ball(radius)?;
    let mut out = vec![
        davis_fundamental_domain(gp, &ball),
        davis_edges_in_two_squares(gp, &ball),
        davis_links_flag(&ball),
        davis_squares_are_four_cycles(&ball),
        davis_dimension(gp, &ball),
    ];
    let small = gp.build_davis_ball(radius.min(2))?;
    out.push(davis_action(gp, &small)?);
    out.push(davis_stabilisers(gp, &small)?);
    out.push(davis_no_inversions(gp, &small)?);
    out.push(if gp.is_racg() {
        let r = gp.crossing_correspondence(&ball, &gp.build_ball(radius)?)?;
        CheckReport::new("davis-crossing-graph-correspondence", r.holds(), format!("{r:?}"))
    } else {
        CheckReport::new("davis-crossing-graph-correspondence", true, "not applicable: vertex groups of order above 2")
    });
    Ok(out)
}

pub fn davis_fundamental_domain(gp: &GraphProduct, ball: &DavisBall) -> CheckReport {
    let got = ball.fundamental_domain().len();
    let want = gp.graph().complete_subsets().len();
    CheckReport::new("davis-fundamental-domain", got == want, format!("{got} vertices, {want} complete subgraphs"))
}

/// Every interior edge lies in at least two squares (atomic graphs).
pub fn davis_edges_in_two_squares(gp: &GraphProduct, ball: &DavisBall) -> CheckReport {
    const NAME: &str = "davis-interior-edges-in-two-squares";
    if !gp.graph().classify().is_atomic {
        return CheckReport::new(NAME, true, "not applicable: graph is not atomic");
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in (0..ball.edges.len()).filter(|&e| ball.is_interior_edge(e)) {
        *counts.entry(ball.edge_square_count(e).unwrap_or(0)).or_default() += 1;
    }
    let ok = counts.keys().all(|&c| c >= 2);
    CheckReport::new(NAME, ok, format!("square counts of interior edges: {counts:?}"))
}

pub fn davis_links_flag(ball: &DavisBall) -> CheckReport {
    let interior: Vec<usize> = (0..ball.vertices.len()).filter(|&i| ball.is_interior_vertex(i)).collect();
    let failures: Vec<String> = interior
        .iter()
        .filter(|&&i| !ball.link_is_flag(i).unwrap_or(false))
        .map(|i| format!("vertex {i}"))
        .collect();
    CheckReport::from_failures("davis-links-are-flag", interior.len(), &failures)
}

/// The squares of the ball are exactly the 4-cycles of its 1-skeleton.
pub fn davis_squares_are_four_cycles(ball: &DavisBall) -> CheckReport {
    let adj = ball.neighbours();
    let mut cycles: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for a in 0..adj.len() {
        for &b in &adj[a] {
            for &d in &adj[a] {
                if b >= d {
                    continue;
                }
                for &c in &adj[b] {
                    if c != a && c != d && adj[d].contains(&c) && !adj[a].contains(&c) && !adj[b].contains(&d) {
                        cycles.insert([a, b, c, d].into());
                    }
                }
            }
        }
    }
    let squares: BTreeSet<BTreeSet<usize>> = ball.squares().map(|c| c.vertices.iter().copied().collect()).collect();
    CheckReport::new(
        "davis-squares-are-four-cycles",
        cycles == squares,
        format!("{} squares, {} induced 4-cycles", squares.len(), cycles.len()),
    )
}

pub fn davis_dimension(gp: &GraphProduct, ball: &DavisBall) -> CheckReport {
    let d = ball.dimension();
    let want = gp.graph().clique_number();
    let ok = if ball.radius >= want { d == want } else { d <= want };
    let girth_five = gp.graph().girth().at_least(5);
    CheckReport::new(
        "davis-dimension-equals-clique-number",
        ok && (!girth_five || d <= 2),
        format!("dimension {d}, clique number {want}"),
    )
}

/// Inner automorphisms by syllables and (up to 20) local automorphisms.
fn sample_automorphisms(gp: &GraphProduct) -> Result<Vec<Automorphism>> {
    let mut out: Vec<Automorphism> =
        gp.all_syllables()?.into_iter().map(|s| Automorphism::single(Generator::Inner(gp.elem(s)))).collect();
    out.extend(gp.local_automorphisms()?.into_iter().take(20).map(|l| Automorphism::single(Generator::Local(l))));
    Ok(out)
}

/// Composition of automorphisms acts as composition of maps, and inner
/// automorphisms act by left multiplication.
pub fn davis_action(gp: &GraphProduct, ball: &DavisBall) -> Result<CheckReport> {
    let sample = sample_automorphisms(gp)?;
    let (mut failures, mut checked) = (Vec::new(), 0);
    for (i, a) in sample.iter().enumerate() {
        for b in sample.iter().skip(i % 3).step_by(3) {
            let ab = a.then(b);
            for v in &ball.vertices {
                checked += 1;
                if gp.aut_action(&ab, v)? != gp.aut_action(b, &gp.aut_action(a, v)?)? {
                    failures.push(format!("composition fails at {} {:?}", fmt_word(&v.rep), v.lambda));
                }
            }
        }
        if let [Generator::Inner(h)] = a.generators.as_slice() {
            for v in &ball.vertices {
                checked += 1;
                if gp.aut_action(a, v)? != gp.davis_vertex(&gp.mul(h, &v.rep), &v.lambda) {
                    failures.push(format!("inner({}) is not left multiplication", fmt_word(h)));
                }
            }
        }
    }
    Ok(CheckReport::from_failures("davis-action-is-an-action", checked, &failures))
}

/// `inner(h)` fixes `g⟨Λ⟩` iff `hg` lies in `g⟨Λ⟩`, decided by a gate.
pub fn davis_stabilisers(gp: &GraphProduct, ball: &DavisBall) -> Result<CheckReport> {
    let hs: Vec<NormalForm> = gp.build_ball(2)?.vertices;
    let (mut failures, mut checked) = (Vec::new(), 0);
    for h in &hs {
        let phi = Automorphism::single(Generator::Inner(h.clone()));
        for v in &ball.vertices {
            checked += 1;
            let fixed = gp.aut_action(&phi, v)? == *v;
            let hg = gp.mul(h, &v.rep);
            let coset = gp.parabolic(v.lambda.clone(), &v.rep);
            let member = gp.project_parabolic(&coset, &hg) == hg;
            if fixed != member {
                failures.push(format!("inner({}) at {} {:?}", fmt_word(h), fmt_word(&v.rep), v.lambda));
            }
        }
    }
    Ok(CheckReport::from_failures("davis-stabilisers-are-conjugate-parabolics", checked, &failures))
}

/// No group element (acting by an inner automorphism) maps a cube to
/// itself with a non-trivial permutation of its vertices.
pub fn davis_no_inversions(gp: &GraphProduct, ball: &DavisBall) -> Result<CheckReport> {
    let (mut failures, mut checked) = (Vec::new(), 0);
    for h in gp.build_ball(2)?.vertices {
        let phi = Automorphism::single(Generator::Inner(h.clone()));
        for c in &ball.cubes {
            let images: Vec<DavisVertex> =
                c.vertices.iter().map(|&i| gp.aut_action(&phi, &ball.vertices[i])).collect::<Result<_>>()?;
            let same: BTreeSet<&DavisVertex> = images.iter().collect();
            let own: BTreeSet<&DavisVertex> = c.vertices.iter().map(|&i| &ball.vertices[i]).collect();
            checked += 1;
            if same == own && c.vertices.iter().zip(&images).any(|(&i, img)| ball.vertices[i] != *img) {
                failures.push(format!("{} inverts the cube at vertex {}", fmt_word(&h), c.bottom));
            }
        }
    }
    Ok(CheckReport::from_failures("davis-action-without-inversions", checked, &failures))
}

// ------------------------------------------------------------------ automorphism suite

pub fn automorphism_suite(gp: &GraphProduct, cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sample: Vec<Automorphism> =
        (0..cfg.samples).map(|_| gp.random_conjp(&mut rng, 6)).collect::<Result<_>>()?;
    let mut out = vec![
        generator_inverses(gp)?,
        inner_equivariance(gp, &sample)?,
        decomposition_round_trip(gp, &sample),
        inner_decomposition(gp, &mut rng, cfg.samples)?,
        peripheral_iff_zero_complexity(gp, &sample),
        complexity_presentation_independent(gp, &sample)?,
        partial_conjugations_commute(gp)?,
        out_finiteness(gp)?,
    ];
    if gp.graph().classify().is_atomic {
        out.push(CheckReport::new(
            "inner-local-intersection-trivial",
            gp.inn_loc_intersection_trivial()?,
            "atomic graph",
        ));
        out.push(rigid_element_check(gp)?);
    } else {
        out.push(CheckReport::new("inner-local-intersection-trivial", true, "not applicable: graph is not atomic"));
        out.push(CheckReport::new("rigid-element-fixed-only-by-identity", true, "not applicable: graph is not atomic"));
    }
    Ok(out)
}

fn all_partial_conjugations(gp: &GraphProduct) -> Result<Vec<PartialConjugation>> {
    let mut out = Vec::new();
    for u in gp.graph().vertices() {
        for c in gp.graph().components_minus_star(u)? {
            for h in gp.group(u).enumerate()? {
                out.push(gp.partial_conjugation(u, c.clone(), GroupElement::new(u, h))?);
            }
        }
    }
    Ok(out)
}

/// `(u,Λ,h)` then `(u,Λ,h⁻¹)`, and `inner(g)` then `inner(g⁻¹)`, are the
/// identity.
pub fn generator_inverses(gp: &GraphProduct) -> Result<CheckReport> {
    let id = Automorphism::identity();
    let (mut failures, mut checked) = (Vec::new(), 0);
    for p in all_partial_conjugations(gp)? {
        let inv = PartialConjugation { h: gp.syl_inv(p.h), ..p.clone() };
        checked += 1;
        let a = Automorphism { generators: vec![Generator::Partial(p.clone()), Generator::Partial(inv)] };
        if !gp.automorphisms_agree(&a, &id) {
            failures.push(format!("partial ({}, {:?}, {})", p.u.0, p.component, p.h.value));
        }
    }
    for g in gp.build_ball(2)?.vertices {
        checked += 1;
        let a = Automorphism { generators: vec![Generator::Inner(g.clone()), Generator::Inner(gp.inv(&g))] };
        if !gp.automorphisms_agree(&a, &id) {
            failures.push(format!("inner({})", fmt_word(&g)));
        }
    }
    Ok(CheckReport::from_failures("generator-inverses", checked, &failures))
}

/// Post-composing with `inner(t)` translates every image hyperplane by `t`.
pub fn inner_equivariance(gp: &GraphProduct, sample: &[Automorphism]) -> Result<CheckReport> {
    let syllables = gp.all_syllables()?;
    let (mut failures, mut checked) = (Vec::new(), 0);
    for phi in sample {
        let d = gp.to_conjugating_data(phi);
        for &s in &syllables {
            let t = gp.elem(s);
            let moved = d.post_compose(gp, &Generator::Inner(t.clone()));
            for u in gp.graph().vertices() {
                checked += 1;
                if moved.image_hyperplane(gp, u) != gp.translate(&t, &d.image_hyperplane(gp, u)) {
                    failures.push(format!("vertex {} under inner({})", u.0, fmt_word(&t)));
                }
            }
        }
    }
    Ok(CheckReport::from_failures("inner-equivariance", checked, &failures))
}

fn strictly_decreasing_to_zero(log: &[usize]) -> bool {
    log.windows(2).all(|w| w[0] > w[1]) && log.last() == Some(&0)
}

/// Every sampled automorphism decomposes with a strictly decreasing
/// complexity log, and the replay `φ∘α₁∘⋯∘α_m` matches the local part.
pub fn decomposition_round_trip(gp: &GraphProduct, sample: &[Automorphism]) -> CheckReport {
    let mut failures = Vec::new();
    for (i, phi) in sample.iter().enumerate() {
        let d = gp.to_conjugating_data(phi);
        match gp.decompose(gp, &d) {
            Err(e) => failures.push(format!("sample {i}: {e}")),
            Ok(r) => {
                if !strictly_decreasing_to_zero(&r.complexity_log) {
                    failures.push(format!("sample {i}: complexity log {:?}", r.complexity_log));
                } else if let Some(s) = gp.decomposition_mismatch(gp, &d, &r) {
                    failures.push(format!("sample {i}: replay differs on {}", fmt_word(&[s])));
                }
            }
        }
    }
    CheckReport::from_failures("decomposition-round-trip", sample.len(), &failures)
}

/// Decomposing conjugation by a random short element leaves a trivial
/// graph isometry and vertex isomorphisms that are inner in each vertex
/// group.
pub fn inner_decomposition(gp: &GraphProduct, rng: &mut ChaCha8Rng, samples: usize) -> Result<CheckReport> {
    let syllables = gp.all_syllables()?;
    let mut failures = Vec::new();
    for i in 0..samples {
        let len = rng.gen_range(0..=4);
        let w: Vec<GroupElement> = (0..len).map(|_| *syllables.choose(rng).unwrap()).collect();
        let g = gp.reduce(&w);
        let d = ConjugatingData::inner(gp, &g);
        match gp.decompose(gp, &d) {
            Err(e) => failures.push(format!("inner({}): {e}", fmt_word(&g))),
            Ok(r) => {
                let identity_graph = r.isometry.iter().enumerate().all(|(u, v)| v.0 == u);
                let inner_in_groups = r.vertex_isos.iter().all(|chi| {
                    let group = gp.group(chi.source);
                    group.elements().map_or(true, |els| {
                        els.iter().any(|&c| els.iter().all(|&x| chi.apply(x) == group.mul(group.mul(c, x), group.inv(c))))
                    })
                });
                if !identity_graph || !inner_in_groups || gp.decomposition_mismatch(gp, &d, &r).is_some() {
                    failures.push(format!("sample {i}: inner({})", fmt_word(&g)));
                }
            }
        }
    }
    Ok(CheckReport::from_failures("inner-decomposition", samples, &failures))
}

/// The reducing-pair search finds nothing exactly when the complexity is 0.
pub fn peripheral_iff_zero_complexity(gp: &GraphProduct, sample: &[Automorphism]) -> CheckReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for phi in sample {
        let mut d = gp.to_conjugating_data(phi);
        // walk the decomposition so that positive and zero complexities occur
        let steps = gp.decompose(gp, &d).map(|r| r.partial_conjugations).unwrap_or_default();
        for stage in 0..=steps.len() {
            checked += 1;
            if gp.image_family_peripheral(gp, &d) != (d.complexity(gp) == 0) {
                failures.push(format!("complexity {} at stage {stage}", d.complexity(gp)));
            }
            if let Some(p) = steps.get(stage) {
                d = d.precompose_partial(gp, p);
            }
        }
    }
    CheckReport::from_failures("peripheral-iff-zero-complexity", checked, &failures)
}

/// Equal automorphisms written with different generator words have equal
/// conjugating data and complexity.
pub fn complexity_presentation_independent(gp: &GraphProduct, sample: &[Automorphism]) -> Result<CheckReport> {
    let syllables = gp.all_syllables()?;
    let partials = all_partial_conjugations(gp)?;
    let mut failures = Vec::new();
    for (i, phi) in sample.iter().enumerate() {
        let s = syllables[i % syllables.len()];
        let mut padded = vec![Generator::Inner(gp.elem(s)), Generator::Inner(gp.elem(gp.syl_inv(s)))];
        if let Some(p) = partials.get(i % partials.len().max(1)) {
            let inv = PartialConjugation { h: gp.syl_inv(p.h), ..p.clone() };
            padded.push(Generator::Partial(p.clone()));
            padded.push(Generator::Partial(inv));
        }
        let at = i % (phi.generators.len() + 1);
        let mut generators = phi.generators.clone();
        generators.splice(at..at, padded);
        let other = Automorphism { generators };
        let (d, e) = (gp.to_conjugating_data(phi), gp.to_conjugating_data(&other));
        if d.complexity(gp) != e.complexity(gp) || d != e {
            failures.push(format!("sample {i}"));
        }
    }
    Ok(CheckReport::from_failures("complexity-presentation-independent", sample.len(), &failures))
}

/// On graphs without a SIL, partial conjugations `(u,Λ,a)` and `(v,Ξ,b)`
/// with `u ≠ v` commute whenever `Λ` is not the component of `v` or `Ξ` is
/// not the component of `u`. Graphs with a SIL only report the count of
/// pairs for which this fails.
pub fn partial_conjugations_commute(gp: &GraphProduct) -> Result<CheckReport> {
    const NAME: &str = "partial-conjugations-commute";
    let all = all_partial_conjugations(gp)?;
    let (mut failures, mut checked) = (Vec::new(), 0);
    for p in &all {
        for q in all.iter().filter(|q| q.u > p.u) {
            let comp_of = |x: Vertex, by: Vertex| gp.graph().component_containing(by, x).ok().flatten();
            let condition =
                comp_of(q.u, p.u).as_ref() != Some(&p.component) || comp_of(p.u, q.u).as_ref() != Some(&q.component);
            if !condition {
                continue;
            }
            checked += 1;
            let pq = Automorphism { generators: vec![Generator::Partial(p.clone()), Generator::Partial(q.clone())] };
            let qp = Automorphism { generators: vec![Generator::Partial(q.clone()), Generator::Partial(p.clone())] };
            if !gp.automorphisms_agree(&pq, &qp) {
                failures.push(format!("({}, {:?}) and ({}, {:?})", p.u.0, p.component, q.u.0, q.component));
            }
        }
    }
    if gp.graph().has_sil().is_some() {
        return Ok(CheckReport::new(
            NAME,
            true,
            format!("not applicable: graph has a SIL ({} of {checked} pairs do not commute)", failures.len()),
        ));
    }
    Ok(CheckReport::from_failures(NAME, checked, &failures))
}

/// `Out` is finite iff there is no SIL, and any SIL witness is valid.
pub fn out_finiteness(gp: &GraphProduct) -> Result<CheckReport> {
    let graph = gp.graph();
    let (finite, witness) = gp.out_finite()?;
    let valid = match &witness {
        None => finite,
        Some(w) => {
            let far = graph.distances_from(w.u)[w.v.0].is_none_or(|d| d >= 2);
            let keep: VertexSet = graph
                .all_vertices()
                .difference(&graph.link(w.u)?.intersection(&graph.link(w.v)?).copied().collect())
                .copied()
                .collect();
            let is_component = graph.components_of(&keep).contains(&w.component);
            !finite && far && is_component && !w.component.contains(&w.u) && !w.component.contains(&w.v)
        }
    };
    Ok(CheckReport::new("out-finite-iff-no-sil", valid, format!("finite = {finite}")))
}

/// The rigid element has a unique reduced word and only the identity local
/// automorphism fixes it.
pub fn rigid_element_check(gp: &GraphProduct) -> Result<CheckReport> {
    let gens: Vec<GroupElement> = gp.graph().vertices().map(|v| GroupElement::new(v, gp.group(v).generators()[0])).collect();
    let (_, g) = gp.rigid_element(&gens)?;
    let fixed = gp.fixing_locals(&g)?;
    let ok = gp.has_unique_reduced_word(&g) && fixed.len() == 1 && fixed[0].is_identity();
    Ok(CheckReport::new(
        "rigid-element-fixed-only-by-identity",
        ok,
        format!("g = {}, {} fixing local automorphisms", fmt_word(&g), fixed.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimplicialGraph;
    use crate::groups::VertexGroup;

    fn assert_all_pass(reports: &[CheckReport]) {
        for r in reports {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn qm_suite_on_small_products() {
        assert_all_pass(&qm_suite(&GraphProduct::racg(SimplicialGraph::cycle(5)), 2).unwrap());
        let p = GraphProduct::new(
            SimplicialGraph::path(3),
            vec![VertexGroup::z2(), VertexGroup::cyclic(3).unwrap(), VertexGroup::z2()],
        )
        .unwrap();
        assert_all_pass(&qm_suite(&p, 2).unwrap());
        assert_all_pass(&qm_suite(&GraphProduct::racg(SimplicialGraph::complete(3)), 3).unwrap());
    }

    #[test]
    fn davis_suite_on_c5() {
        let gp = GraphProduct::racg(SimplicialGraph::cycle(5));
        assert_all_pass(&davis_suite(&gp, 2).unwrap());
        // a graph reflection does fix a square without fixing it pointwise
        let sigma = [0, 4, 3, 2, 1].map(Vertex).to_vec();
        let l = gp.local_automorphism(sigma, vec![crate::groups::IsoMap::Table(vec![0, 1]); 5]).unwrap();
        let phi = Automorphism::single(Generator::Local(l));
        let two: VertexSet = [Vertex(2)].into();
        let v = gp.davis_vertex(&[], &two);
        assert_eq!(gp.aut_action(&phi, &v).unwrap(), gp.davis_vertex(&[], &[Vertex(3)].into()));
    }

    #[test]
    fn automorphism_suite_on_c5_and_k13() {
        let cfg = VerifyConfig { radius: 2, seed: 7, samples: 10 };
        assert_all_pass(&automorphism_suite(&GraphProduct::racg(SimplicialGraph::cycle(5)), &cfg).unwrap());
        let k13 = SimplicialGraph::from_indices(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let reports = automorphism_suite(&GraphProduct::racg(k13), &cfg).unwrap();
        assert_all_pass(&reports);
        let commute = reports.iter().find(|r| r.name == "partial-conjugations-commute").unwrap();
        assert!(commute.detail.starts_with("not applicable") && !commute.detail.contains("(0 of"), "{}", commute.detail);
        for g in [SimplicialGraph::cycle(5), SimplicialGraph::cycle(6)] {
            let r = partial_conjugations_commute(&GraphProduct::racg(g)).unwrap();
            assert!(r.passed && !r.detail.starts_with("0 cases"), "{}", r.detail);
        }
    }

    #[test]
    fn suite_names_and_order() {
        assert_eq!("qm".parse::<Suite>().unwrap(), Suite::Qm);
        assert!("bogus".parse::<Suite>().is_err());
        let cfg = VerifyConfig { radius: 1, seed: 0, samples: 3 };
        let reports = run_suite(&GraphProduct::racg(SimplicialGraph::cycle(5)), Suite::All, &cfg).unwrap();
        let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}
