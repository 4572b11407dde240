use kltl::coxeter::{cartan_data, enumerate_cosets, PairSpec};
use kltl::heaps::{heap_from_indices, tangle_from_word, word_from_tangle};
use kltl::tangles::{
    compose, cup_diagram, diagram_degree, diagrams_by_id, orient, spec_generator, stack_unoriented, OrientedTangle,
};
use kltl::LaurentPoly;
use proptest::prelude::*;

fn pairs() -> Vec<PairSpec> {
    vec![PairSpec::a(5, 2), PairSpec::a(6, 3), PairSpec::c(5), PairSpec::da(6)]
}

fn oriented_generators(spec: &PairSpec) -> Vec<OrientedTangle> {
    let (_, diagrams) = diagrams_by_id(spec).unwrap();
    let mut out = Vec::new();
    for &v in &cartan_data(spec).unwrap().nodes {
        let d = spec_generator(spec, v).unwrap();
        for lam in &diagrams {
            for mu in &diagrams {
                out.extend(orient(&d, lam, mu));
            }
        }
    }
    out
}

/// Follow `picks` through the generators, each time taking one whose top
/// matches the current bottom.
fn chain(gens: &[OrientedTangle], picks: &[usize]) -> Vec<OrientedTangle> {
    let mut out: Vec<OrientedTangle> = Vec::new();
    for &p in picks {
        let options: Vec<&OrientedTangle> = match out.last() {
            None => gens.iter().collect(),
            Some(last) => gens.iter().filter(|g| g.top == last.bottom).collect(),
        };
        if options.is_empty() {
            break;
        }
        out.push(options[p % options.len()].clone());
    }
    out
}

fn product(xs: &[OrientedTangle]) -> Option<(LaurentPoly, OrientedTangle)> {
    let mut acc = (LaurentPoly::q_pow(0), xs.first()?.clone());
    for y in &xs[1..] {
        let (s, z) = compose(&acc.1, y).unwrap()?;
        acc = (&acc.0 * &s, z);
    }
    Some(acc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commuting_letters_keep_heap_and_tangle(which in 0usize..4, coset in any::<prop::sample::Index>(), swaps in prop::collection::vec(any::<prop::sample::Index>(), 0..40)) {
        let spec = &pairs()[which];
        let g = enumerate_cosets(spec).unwrap();
        let cd = cartan_data(spec).unwrap();
        let id = coset.index(g.len());
        let canon = g.word_indices(id);
        let mut w = canon.clone();
        if w.len() >= 2 {
            for s in &swaps {
                let p = s.index(w.len() - 1);
                if w[p] != w[p + 1] && cd.commute(w[p], w[p + 1]) {
                    w.swap(p, p + 1);
                }
            }
        }
        prop_assert_eq!(heap_from_indices(&w, &cd).unwrap(), heap_from_indices(&canon, &cd).unwrap());
        let nodes: Vec<_> = w.iter().map(|&i| cd.nodes[i]).collect();
        let t = tangle_from_word(&nodes, spec).unwrap();
        let (_, diagrams) = diagrams_by_id(spec).unwrap();
        prop_assert_eq!(&t, &cup_diagram(&diagrams[id]).unwrap());
        let back = word_from_tangle(&t, spec).unwrap();
        let back: Vec<usize> = back.iter().map(|&v| cd.index_of(v).unwrap()).collect();
        prop_assert_eq!(heap_from_indices(&back, &cd).unwrap(), heap_from_indices(&canon, &cd).unwrap());
    }

    #[test]
    fn stacked_generators_are_admissible(which in 0usize..4, letters in prop::collection::vec(any::<prop::sample::Index>(), 1..12)) {
        let spec = &pairs()[which];
        let cd = cartan_data(spec).unwrap();
        let mut t = spec_generator(spec, cd.nodes[letters[0].index(cd.rank())]).unwrap();
        for l in &letters[1..] {
            let g = spec_generator(spec, cd.nodes[l.index(cd.rank())]).unwrap();
            match stack_unoriented(&g, &t) {
                Ok(next) => t = next,
                Err(_) => break,
            }
        }
        prop_assert!(t.is_planar());
        prop_assert!(t.validate().is_ok(), "{}", t);
    }

    #[test]
    fn grading_is_additive(which in 0usize..4, picks in prop::collection::vec(any::<usize>(), 2..7), cut in any::<prop::sample::Index>()) {
        let spec = &pairs()[which];
        let xs = chain(&oriented_generators(spec), &picks);
        prop_assume!(xs.len() >= 2);
        let k = 1 + cut.index(xs.len() - 1);
        let Some((s, x)) = product(&xs[..k]) else { return Ok(()) };
        let Some((t, y)) = product(&xs[k..]) else { return Ok(()) };
        let (u, z) = compose(&x, &y).unwrap().expect("composable oriented tangles have a non-zero product");
        for c in [&s, &t, &u] {
            prop_assert!(c.as_q_pow().is_some(), "scalar {} is not a power of q", c);
        }
        prop_assert_eq!(diagram_degree(&x) + diagram_degree(&y), u.as_q_pow().unwrap() + diagram_degree(&z));
    }

    #[test]
    fn composition_is_associative(which in 0usize..4, picks in prop::collection::vec(any::<usize>(), 3..4)) {
        let spec = &pairs()[which];
        let xs = chain(&oriented_generators(spec), &picks);
        prop_assume!(xs.len() == 3);
        let left = compose(&xs[0], &xs[1]).unwrap().and_then(|(s, xy)| compose(&xy, &xs[2]).unwrap().map(|(t, z)| (&s * &t, z)));
        let right = compose(&xs[1], &xs[2]).unwrap().and_then(|(s, yz)| compose(&xs[0], &yz).unwrap().map(|(t, z)| (&s * &t, z)));
        prop_assert_eq!(left, right);
    }
}

#[test]
fn mismatched_boundaries_compose_to_zero() {
    let spec = PairSpec::c(3);
    let gens = oriented_generators(&spec);
    let x = &gens[0];
    let y = gens.iter().find(|g| g.top != x.bottom).unwrap();
    assert_eq!(compose(x, y).unwrap(), None);
}
