//! Cross-cutting invariants. Structural laws run under proptest; the
//! LP-versus-vertex-scan agreement checks run over a fixed seeded corpus
//! so failures replay exactly.

use num_bigint::BigInt;
use proptest::prelude::*;

use cgcube::formats::{emit_hpolytope, emit_pointset, parse_hpolytope, parse_pointset};
use cgcube::generate::{random_pointset, SplitMix64};
use cgcube::geom::{
    primitive_form, switch_ineq, switch_points, LinIneq, PointSet, PrimitiveMode, Switching,
};
use cgcube::hull::{hull_facets, vertices, vpoly_to_hpoly};
use cgcube::lp::{is_valid, lp_min, polytopes_equal, remove_redundancy, LpOutcome};
use cgcube::params::{gap, notch};
use cgcube::polytope::HPolytope;
use cgcube::rat::{int, ratio, Rat};

fn pointset_strategy(max_n: usize) -> impl Strategy<Value = PointSet> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u64..(1 << n), 0..=(1 << n))
            .prop_map(move |masks| PointSet::from_masks(n, masks.into_iter()))
    })
}

fn ineq_strategy(n: usize) -> impl Strategy<Value = LinIneq> {
    (
        proptest::collection::vec(-4i64..=4, n),
        -6i64..=6,
    )
        .prop_filter_map("zero row", |(cs, r)| {
            if cs.iter().all(|&c| c == 0) {
                None
            } else {
                Some(LinIneq::new(cs.into_iter().map(BigInt::from).collect(), int(r)))
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, .. ProptestConfig::default() })]

    #[test]
    fn pointset_format_round_trips(s in pointset_strategy(6)) {
        let text = emit_pointset(&s);
        let back = parse_pointset(&text).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn switching_is_an_involution(s in pointset_strategy(5), flips in any::<u64>()) {
        let f = Switching::new(s.n(), flips & ((1 << s.n()) - 1));
        let once = switch_points(&s, &f).unwrap();
        let twice = switch_points(&once, &f).unwrap();
        prop_assert_eq!(twice, s);
    }

    #[test]
    fn notch_is_switching_invariant(s in pointset_strategy(4), flips in any::<u64>()) {
        let f = Switching::new(s.n(), flips & ((1 << s.n()) - 1));
        prop_assert_eq!(notch(&switch_points(&s, &f).unwrap()), notch(&s));
    }

    #[test]
    fn gap_is_switching_invariant(s in pointset_strategy(3), flips in any::<u64>()) {
        let f = Switching::new(s.n(), flips & ((1 << s.n()) - 1));
        let a = gap(&s).unwrap().delta;
        let b = gap(&switch_points(&s, &f).unwrap()).unwrap().delta;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn notch_never_grows_when_points_join(s in pointset_strategy(5), extra in any::<u64>()) {
        let extra = extra & ((1 << s.n()) - 1);
        let mut masks: Vec<u64> = s.members().collect();
        if !s.contains(extra) {
            masks.push(extra);
        }
        let bigger = PointSet::from_masks(s.n(), masks.into_iter());
        prop_assert!(notch(&bigger) <= notch(&s));
    }

    #[test]
    fn ineq_switching_round_trips(s in 1usize..=5, seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let coeffs: Vec<BigInt> = (0..s).map(|_| int(rng.i64_in(-5, 5))).collect();
        let q = LinIneq::new(coeffs, int(rng.i64_in(-6, 6)));
        let f = Switching::new(s, rng.next_u64() & ((1 << s) - 1));
        let back = switch_ineq(&switch_ineq(&q, &f).unwrap(), &f).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn primitive_form_is_idempotent(n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let coeffs: Vec<BigInt> = (0..n).map(|_| int(rng.i64_in(-9, 9))).collect();
        if coeffs.iter().all(|c| c == &int(0)) {
            return Ok(());
        }
        let q = LinIneq::new(coeffs, int(rng.i64_in(-9, 9)));
        for mode in [PrimitiveMode::Halfspace, PrimitiveMode::CgNormalize] {
            let once = primitive_form(&q, mode).unwrap();
            let twice = primitive_form(&once, mode).unwrap();
            prop_assert_eq!(once, twice);
        }
    }

    #[test]
    fn hull_facets_round_trip_through_vertices(s in pointset_strategy(4)) {
        prop_assume!(s.len() > 0);
        let hull = hull_facets(&s);
        let verts = vertices(&hull);
        let mut masks: Vec<u64> = verts
            .vertices
            .iter()
            .map(|v| {
                let mut m = 0u64;
                for (i, x) in v.iter().enumerate() {
                    prop_assert!(x.is_integer());
                    if x == &ratio(1, 1) {
                        m |= 1 << i;
                    }
                }
                Ok(m)
            })
            .collect::<Result<_, TestCaseError>>()?;
        masks.sort_unstable();
        let mut expect: Vec<u64> = s.members().collect();
        expect.sort_unstable();
        prop_assert_eq!(masks, expect);
    }
}

/// Random small system in the unit box: a handful of integer rows with
/// bounded coefficients.
fn seeded_system(rng: &mut SplitMix64, n: usize) -> HPolytope {
    let rows = 1 + (rng.below(4) as usize);
    let mut p = HPolytope::unit_box(n);
    for _ in 0..rows {
        let coeffs: Vec<BigInt> = (0..n).map(|_| int(rng.i64_in(-3, 3))).collect();
        if coeffs.iter().all(|c| c == &int(0)) {
            continue;
        }
        let rhs = int(rng.i64_in(-4, 2));
        p.ineqs.push(LinIneq::new(coeffs, rhs));
    }
    p
}

/// The simplex route and the double-description route must agree on every
/// minimization, including infeasibility.
#[test]
fn lp_agrees_with_vertex_scan() {
    let mut rng = SplitMix64::new(0xD1A1_0001);
    let mut nonempty = 0;
    for trial in 0..120 {
        let n = 1 + (trial % 3);
        let p = seeded_system(&mut rng, n);
        let c: Vec<BigInt> = (0..n).map(|_| int(rng.i64_in(-5, 5))).collect();
        let via_lp = lp_min(&p, &c).unwrap();
        let vp = vertices(&p);
        match via_lp {
            LpOutcome::Infeasible => assert!(
                vp.vertices.is_empty(),
                "trial {trial}: simplex infeasible but vertices exist"
            ),
            LpOutcome::Optimal { value, .. } => {
                nonempty += 1;
                let best = vp
                    .vertices
                    .iter()
                    .map(|v| {
                        v.iter()
                            .zip(&c)
                            .map(|(x, ci)| x * Rat::from(ci.clone()))
                            .sum::<Rat>()
                    })
                    .min()
                    .expect("feasible system has vertices");
                assert_eq!(value, best, "trial {trial}: optimal values disagree");
            }
        }
    }
    assert!(nonempty >= 40, "corpus too degenerate: {nonempty} feasible");
}

#[test]
fn redundancy_removal_preserves_the_polytope() {
    let mut rng = SplitMix64::new(0xD1A1_0002);
    for trial in 0..60 {
        let n = 1 + (trial % 3);
        let p = seeded_system(&mut rng, n);
        let slim = remove_redundancy(&p).unwrap();
        assert!(
            polytopes_equal(&p, &slim).unwrap(),
            "trial {trial}: reduction changed the body"
        );
        assert!(slim.ineqs.len() <= p.ineqs.len());
    }
}

#[test]
fn validity_matches_vertex_scan() {
    let mut rng = SplitMix64::new(0xD1A1_0003);
    for trial in 0..80 {
        let n = 1 + (trial % 3);
        let p = seeded_system(&mut rng, n);
        let coeffs: Vec<BigInt> = (0..n).map(|_| int(rng.i64_in(-3, 3))).collect();
        if coeffs.iter().all(|c| c == &int(0)) {
            continue;
        }
        let q = LinIneq::new(coeffs, int(rng.i64_in(-4, 2)));
        let by_lp = is_valid(&p, &q).unwrap();
        let by_scan = vertices(&p).vertices.iter().all(|v| {
            let lhs: Rat = v
                .iter()
                .zip(&q.coeffs)
                .map(|(x, c)| x * Rat::from(c.clone()))
                .sum();
            lhs >= Rat::from(q.rhs.clone())
        });
        assert_eq!(by_lp, by_scan, "trial {trial}: validity routes disagree");
    }
}

#[test]
fn hpolytope_format_round_trips_on_seeded_systems() {
    let mut rng = SplitMix64::new(0xD1A1_0004);
    for trial in 0..40 {
        let n = 1 + (trial % 4);
        let p = seeded_system(&mut rng, n);
        let text = emit_hpolytope(&p);
        let back = parse_hpolytope(&text).unwrap();
        assert_eq!(back.n, p.n, "trial {trial}");
        assert_eq!(back.ineqs, p.ineqs, "trial {trial}");
        assert_eq!(back.eqs, p.eqs, "trial {trial}");
    }
}

/// V-to-H then back reproduces exactly the integral vertex set of a hull.
#[test]
fn integer_hull_double_conversion_is_stable() {
    for seed in 0..25u64 {
        let s = random_pointset(4, &ratio(1, 2), 900 + seed).unwrap();
        if s.len() == 0 {
            continue;
        }
        let h1 = hull_facets(&s);
        let h2 = vpoly_to_hpoly(&vertices(&h1));
        assert!(polytopes_equal(&h1, &h2).unwrap(), "seed {seed}");
    }
}

/// Full exhaustive check at n=3: adding points can only shrink the notch.
#[test]
fn notch_monotone_over_all_nested_pairs() {
    for small in 0u64..256 {
        let s = PointSet::from_masks(3, (0..8).filter(|b| small >> b & 1 == 1));
        let p_small = notch(&s);
        // supersets: set any subset of the complement bits
        let comp = !small & 0xFF;
        let mut add = comp;
        loop {
            let t = PointSet::from_masks(3, (0..8).filter(|b| (small | add) >> b & 1 == 1));
            assert!(
                notch(&t) <= p_small,
                "superset of {small:#b} via {add:#b} raised the notch"
            );
            if add == 0 {
                break;
            }
            add = (add - 1) & comp;
        }
    }
}

/// notch, gap, and subdivision order are invariant under relabelings of the
/// cube: coordinate permutations composed with switchings.
#[test]
fn cube_symmetries_preserve_the_parameters() {
    use cgcube::graph::{forbidden_graph, max_subdivision_order};
    let mut rng = SplitMix64::new(0xD1A1_0005);
    for trial in 0..40 {
        let n = 2 + (trial % 4); // 2..=5
        let dens = ratio(1 + (trial as i64 % 7), 10);
        let s = random_pointset(n, &dens, 17_000 + trial as u64).unwrap();

        // random permutation via seeded shuffle
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            perm.swap(i, j);
        }
        let f = Switching::new(n, rng.next_u64() & ((1 << n) - 1));
        let image = switch_points(&s.apply_perm(&perm), &f).unwrap();

        assert_eq!(notch(&image), notch(&s), "trial {trial}: notch moved");
        assert_eq!(
            max_subdivision_order(&forbidden_graph(&image)),
            max_subdivision_order(&forbidden_graph(&s)),
            "trial {trial}: subdivision order moved"
        );
        if n <= 5 {
            assert_eq!(
                gap(&image).unwrap().delta,
                gap(&s).unwrap().delta,
                "trial {trial}: gap moved"
            );
        }
    }
}
