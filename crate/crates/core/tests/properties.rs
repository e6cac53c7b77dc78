//! Algebraic properties of normal forms and the hyperplane calculus over a
//! handful of graph products, including infinite and non-abelian vertex
//! groups.

use graphprod::{
    ConjugatingData, FiniteTable, GraphProduct, GroupElement, NormalForm, SimplicialGraph, Vertex, VertexGroup,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The symmetric group on three letters, indices in lexicographic order of
/// permutations of (0, 1, 2).
fn s3() -> VertexGroup {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    let names = ["e", "t12", "t01", "c", "c2", "t02"].iter().map(|s| s.to_string()).collect();
    VertexGroup::Table(FiniteTable::new(names, table).unwrap())
}

fn products() -> Vec<GraphProduct> {
    vec![
        GraphProduct::racg(SimplicialGraph::cycle(5)),
        GraphProduct::new(
            SimplicialGraph::path(3),
            vec![VertexGroup::z2(), VertexGroup::cyclic(3).unwrap(), VertexGroup::z2()],
        )
        .unwrap(),
        GraphProduct::uniform(SimplicialGraph::path(4), VertexGroup::Infinite),
        GraphProduct::new(
            SimplicialGraph::from_indices(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
            vec![s3(), VertexGroup::z2(), VertexGroup::cyclic(4).unwrap(), VertexGroup::Infinite],
        )
        .unwrap(),
        GraphProduct::racg(SimplicialGraph::new(&["a", "b", "c"], &[]).unwrap()),
    ]
}

/// Raw syllables mapped into the product; identity syllables are kept so
/// that deletion is exercised.
fn word(gp: &GraphProduct, raw: &[(usize, i64)]) -> Vec<GroupElement> {
    let n = gp.graph().len();
    raw.iter()
        .map(|&(v, a)| {
            let v = Vertex(v % n);
            let value = match gp.group(v).order() {
                Some(k) => a.rem_euclid(k as i64),
                None => a,
            };
            GroupElement::new(v, value)
        })
        .collect()
}

type RawWord = Vec<(usize, i64)>;

fn raw_word() -> impl Strategy<Value = RawWord> {
    prop::collection::vec((0usize..6, -3i64..=3), 0..9)
}

/// A product index and three raw words.
fn case() -> impl Strategy<Value = (usize, RawWord, RawWord, RawWord)> {
    (0..products().len(), raw_word(), raw_word(), raw_word())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduce_is_idempotent_and_shortening((p, a, _, _) in case()) {
        let gp = &products()[p];
        let w = word(gp, &a);
        let nf = gp.reduce(&w);
        prop_assert!(nf.len() <= w.len());
        prop_assert_eq!(gp.reduce(&nf), nf.clone());
        prop_assert!(nf.iter().all(|s| s.value != 0));
        prop_assert!(nf.windows(2).all(|p| p[0].vertex != p[1].vertex));
    }

    #[test]
    fn multiplication_is_associative((p, a, b, c) in case()) {
        let gp = &products()[p];
        let (a, b, c) = (word(gp, &a), word(gp, &b), word(gp, &c));
        let left = gp.mul(&gp.mul(&a, &b), &c);
        let right = gp.mul(&a, &gp.mul(&b, &c));
        prop_assert_eq!(&left, &right);
        let mut concat = a.clone();
        concat.extend(&b);
        concat.extend(&c);
        prop_assert_eq!(left, gp.reduce(&concat));
    }

    #[test]
    fn inverses_cancel((p, a, _, _) in case()) {
        let gp = &products()[p];
        let a = word(gp, &a);
        let ai = gp.inv(&a);
        prop_assert!(gp.mul(&a, &ai).is_identity());
        prop_assert!(gp.mul(&ai, &a).is_identity());
        prop_assert_eq!(gp.inv(&ai), gp.reduce(&a));
    }

    #[test]
    fn head_mirrors_tail_of_inverse((p, a, _, _) in case()) {
        let gp = &products()[p];
        let a = word(gp, &a);
        let mut mirrored: Vec<GroupElement> = gp.tail(&gp.inv(&a)).into_iter().map(|s| gp.syl_inv(s)).collect();
        mirrored.sort();
        prop_assert_eq!(gp.head(&a), mirrored);
        // every head syllable really can be peeled off
        let nf = gp.reduce(&a);
        for s in gp.head(&a) {
            prop_assert_eq!(gp.mul(&[gp.syl_inv(s)], &nf).len() + 1, nf.len());
        }
    }

    #[test]
    fn cyclic_reduction_conjugates_back((p, a, _, _) in case()) {
        let gp = &products()[p];
        let a = word(gp, &a);
        let (core, conj) = gp.cyclic_reduce(&a);
        prop_assert!(core.len() <= gp.reduce(&a).len());
        prop_assert_eq!(gp.mul_all(&[&conj, &core, &gp.inv(&conj)]), gp.reduce(&a));
    }

    #[test]
    fn distance_is_a_metric_counted_by_hyperplanes((p, a, b, c) in case()) {
        let gp = &products()[p];
        let (x, y, z) = (gp.reduce(&word(gp, &a)), gp.reduce(&word(gp, &b)), gp.reduce(&word(gp, &c)));
        let dxy = gp.distance(&x, &y);
        prop_assert_eq!(dxy, gp.distance(&y, &x));
        prop_assert_eq!(dxy, gp.mul(&gp.inv(&x), &y).len());
        prop_assert!(gp.distance(&x, &z) <= dxy + gp.distance(&y, &z));
        let sep = gp.separating_hyperplanes(&x, &y);
        prop_assert_eq!(sep.len(), dxy);
        prop_assert!(sep.iter().all(|j| gp.separates(j, &x, &y)));
    }

    #[test]
    fn coset_representatives_are_shortest((p, a, b, _) in case(), mask in 0u32..16) {
        let gp = &products()[p];
        let g = gp.reduce(&word(gp, &a));
        let lambda = gp.graph().vertices().filter(|v| mask >> (v.0 % 4) & 1 == 1).collect();
        let rep = gp.coset_rep(&g, &lambda);
        prop_assert!(gp.in_parabolic(&gp.mul(&gp.inv(&rep), &g), &lambda));
        // any other element of the coset is at least as long
        let h: Vec<GroupElement> = word(gp, &b).into_iter().filter(|s| lambda.contains(&s.vertex)).collect();
        prop_assert!(gp.mul(&g, &h).len() >= rep.len());
        prop_assert_eq!(gp.coset_rep(&gp.mul(&g, &h), &lambda), rep);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_conjugating_automorphisms_decompose(seed in any::<u64>(), which in 0usize..3) {
        let gp = match which {
            0 => GraphProduct::racg(SimplicialGraph::cycle(5)),
            1 => GraphProduct::racg(SimplicialGraph::cycle(6)),
            _ => GraphProduct::racg(SimplicialGraph::path(4)),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = gp.random_conjp(&mut rng, 6).unwrap();
        let d = gp.to_conjugating_data(&phi);
        prop_assert!(d.is_homomorphism(&gp, &gp));
        let r = gp.decompose(&gp, &d).unwrap();
        prop_assert_eq!(r.complexity_log.last(), Some(&0));
        prop_assert!(r.complexity_log.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn inner_automorphisms_are_inner_on_every_syllable((p, a, _, _) in case()) {
        let gp = &products()[p];
        let g: NormalForm = gp.reduce(&word(gp, &a));
        let d = ConjugatingData::inner(gp, &g);
        for s in gp.test_syllables() {
            prop_assert_eq!(d.syllable_image(gp, s), gp.conjugate(&g, &[s]));
        }
    }
}
