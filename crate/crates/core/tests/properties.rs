use std::collections::BTreeSet;

use hjlab::certificate::{naive_mono_interval_line, naive_violation_count, verify_avoider};
use hjlab::cnf::{encode, parse_dimacs, solve_builtin, write_dimacs, SolveResult};
use hjlab::cube::{enumerate_m_interval_lines, Coloring, Line, Word};
use hjlab::gadgets::{
    find_interval_line, nsets, pattern_coloring, verify_gadget_lines, ColourVector, Method,
    Quadruple, GADGET_PATTERNS, NSET_INDICES,
};
use hjlab::pattern::contract;
use hjlab::search::{
    exhaustive_search, local_search, seeded_random_coloring, violation_count, ExhaustiveOptions,
};
use proptest::prelude::*;

fn quadruple() -> impl Strategy<Value = Quadruple> {
    (5usize..=12).prop_flat_map(|n| {
        proptest::sample::subsequence((1..n).collect::<Vec<_>>(), 4)
            .prop_map(move |a| Quadruple::new([a[0], a[1], a[2], a[3]], n).unwrap())
    })
}

fn expected_spans(q: &Quadruple) -> [(usize, usize); 5] {
    let a = q.a();
    [
        (a[0] + 1, a[2]),
        (a[1] + 1, a[3]),
        (a[0] + 1, a[1]),
        (a[2] + 1, a[3]),
        (a[1] + 1, a[2]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn gadget_lines_random_quadruples(q in quadruple()) {
        let lines = verify_gadget_lines(&q).unwrap();
        for (gl, (lo, hi)) in lines.iter().zip(expected_spans(&q)) {
            let [x, y, z] = &gl.members;
            let line = Line::from_points(x, y, z).expect("combinatorial line");
            let active: Vec<usize> = (lo..=hi).collect();
            prop_assert_eq!(line.active(), active);
            for (v, w) in [x, y, z].into_iter().enumerate() {
                prop_assert!(line.active().iter().all(|&i| w.letter(i) == v as u8 + 1));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn colour_transfer(q in quadruple(), x in 0u8..32) {
        let d = ColourVector::from_index(x);
        let c = pattern_coloring(q.n(), &d).unwrap();
        let sets = nsets(&d);
        for gl in verify_gadget_lines(&q).unwrap() {
            let on_line: BTreeSet<u8> = gl.members.iter().map(|w| c.colour_of(w).unwrap()).collect();
            let expected: BTreeSet<u8> = (0..2).filter(|&k| sets[gl.index - 1].contains(k)).collect();
            prop_assert_eq!(on_line, expected);
            let from_d: BTreeSet<u8> = NSET_INDICES[gl.index - 1].iter().map(|&j| d.get(j)).collect();
            prop_assert_eq!(sets[gl.index - 1].len(), from_d.len());
        }
    }

    #[test]
    fn pattern_coloring_factors_through_contraction(x in 0u8..32, n in 1usize..=6) {
        let d = ColourVector::from_index(x);
        let c = pattern_coloring(n, &d).unwrap();
        for r in 0..c.len() {
            let w = Word::unrank(r, n).unwrap();
            let s = contract(&w);
            let j = GADGET_PATTERNS.iter().position(|p| *p == s.letters()).map_or(1, |j| j + 1);
            prop_assert_eq!(c.get(r), d.get(j));
        }
    }

    #[test]
    fn violation_count_matches_naive(n in 1usize..=3, seed in any::<u64>()) {
        let c = seeded_random_coloring(n, seed).unwrap();
        prop_assert_eq!(violation_count(&c), naive_violation_count(&c));
        prop_assert_eq!(find_interval_line(&c, Method::Direct).is_some(), naive_mono_interval_line(&c).is_some());
    }
}

#[test]
fn gadget_geometry_exhaustive_up_to_six() {
    let mut count = 0;
    for n in 5..=6 {
        for q in Quadruple::all(n) {
            let lines = verify_gadget_lines(&q).unwrap();
            for (gl, span) in lines.iter().zip(expected_spans(&q)) {
                assert_eq!((gl.line.lo(), gl.line.hi()), span);
            }
            count += 1;
        }
    }
    assert_eq!(count, 1 + 5);
}

#[test]
fn direct_method_complete_on_all_n2_colourings() {
    let mut absent = 0;
    for bits in 0u32..512 {
        let colours: Vec<u8> = (0..9).map(|i| ((bits >> i) & 1) as u8).collect();
        let c = Coloring::from_colours(2, &colours).unwrap();
        // Triple-scan oracle straight from the definition of a line.
        let oracle = (0..9).any(|a| {
            (0..9).any(|b| {
                (0..9).any(|e| {
                    let [x, y, z] = [a, b, e].map(|r| Word::unrank(r, 2).unwrap());
                    Line::from_points(&x, &y, &z).is_some_and(|l| l.as_interval().is_some())
                        && colours[a] == colours[b]
                        && colours[b] == colours[e]
                })
            })
        });
        let found = find_interval_line(&c, Method::Direct);
        assert_eq!(found.is_some(), oracle, "colouring {bits:09b}");
        if found.is_none() {
            absent += 1;
            verify_avoider(&c).unwrap();
        }
    }
    assert_eq!(absent, 66);
}

#[test]
fn gadget_method_on_all_pattern_colourings() {
    for x in 0u8..32 {
        let c = pattern_coloring(5, &ColourVector::from_index(x)).unwrap();
        let cert = find_interval_line(&c, Method::Gadget).expect("gadget line");
        cert.verify(&c).unwrap();
        let piped = find_interval_line(&c, Method::Pipeline).expect("pipeline line");
        piped.verify(&c).unwrap();
    }
}

#[test]
fn symmetry_pruning_is_sound() {
    for n in 1..=3 {
        let on = exhaustive_search(n, &ExhaustiveOptions::default()).unwrap();
        let off = exhaustive_search(
            n,
            &ExhaustiveOptions {
                symmetry: false,
                ..ExhaustiveOptions::default()
            },
        )
        .unwrap();
        assert_eq!(on.outcome.name(), off.outcome.name());
    }
}

#[test]
fn exhaustive_and_sat_agree() {
    for n in 1..=3 {
        let exists = exhaustive_search(n, &ExhaustiveOptions::default())
            .unwrap()
            .outcome
            .avoider()
            .is_some();
        for sym in [false, true] {
            let d = parse_dimacs(&write_dimacs(&encode(n, 1, sym).unwrap())).unwrap();
            assert_eq!(
                matches!(solve_builtin(&d), SolveResult::Sat(_)),
                exists,
                "n={n} sym={sym}"
            );
        }
    }
}

#[test]
fn clause_counts() {
    for n in 1..=4 {
        for m in 1..=n {
            let lines = enumerate_m_interval_lines(n, m).count();
            assert_eq!(encode(n, m, false).unwrap().clauses.len(), 2 * lines);
            assert_eq!(encode(n, m, true).unwrap().clauses.len(), 2 * lines + 1);
        }
    }
}

#[test]
fn local_search_is_seed_deterministic() {
    let a = local_search(3, 17, 50_000).unwrap();
    let b = local_search(3, 17, 50_000).unwrap();
    assert_eq!(a.outcome, b.outcome);
    assert_eq!(a.stats, b.stats);
    if let Some(c) = a.outcome.avoider() {
        verify_avoider(c).unwrap();
    }
}
