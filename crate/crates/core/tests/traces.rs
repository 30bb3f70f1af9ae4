use holegames::board::Owner;
use holegames::breaker::PerturbedPolygonBreaker;
use holegames::game::{replay, run_match, GameConfig, GameTrace, Status, TraceError};
use holegames::geom::Point;
use holegames::maker::{MonoStripMaker, RandomMaker};
use holegames::oracle::HoleRule;
use holegames::players::{breaker_by_name, maker_by_name};
use proptest::prelude::*;

fn mono_trace(k: usize, breaker: &str, seed: u64) -> GameTrace {
    let config = GameConfig::new(HoleRule::Monochromatic, k, "1:1".parse().unwrap()).with_seed(seed);
    let mut maker = MonoStripMaker::one_to_one(k, 1);
    let mut breaker = breaker_by_name(breaker, &config).unwrap();
    run_match(config, &mut maker, breaker.as_mut()).unwrap().trace
}

#[test]
fn replay_reproduces_status_and_board() {
    let trace = mono_trace(4, "random", 3);
    assert_eq!(trace.status.label(), "maker_won");
    let state = replay(&trace).unwrap();
    assert_eq!(state.status(), &trace.status);
    let placed: Vec<Point> = trace.moves.iter().flat_map(|m| m.points.clone()).collect();
    assert_eq!(state.points(), &placed[..]);
}

#[test]
fn json_round_trip_keeps_the_trace() {
    let trace = mono_trace(3, "inside-hull", 1);
    let back = GameTrace::from_json(&trace.to_json()).unwrap();
    assert_eq!(back, trace);
    assert!(trace.to_json().contains("\"schema\": \"holegames.trace/v1\""));
}

#[test]
fn moved_point_is_caught_at_its_turn() {
    let trace = mono_trace(4, "random", 5);
    assert!(trace.moves.len() >= 4);
    let mut bad = trace.clone();
    let p = &bad.moves[2].points[0];
    bad.moves[2].points[0] = Point::new(&p.x + holegames::geom::rat(1, 7), p.y.clone());
    let err = replay(&bad).unwrap_err();
    assert_eq!(err.turn(), Some(3), "{err}");
}

#[test]
fn foreign_schema_is_refused() {
    let mut trace = mono_trace(3, "random", 0);
    trace.schema = "other/v9".into();
    assert!(matches!(replay(&trace), Err(TraceError::Schema(_))));
}

#[test]
fn clipped_last_turn_ends_capped() {
    // Breaker needs six guards but the cap leaves room for three
    let config = GameConfig::new(HoleRule::Bichromatic, 8, "1:12".parse().unwrap()).with_max_points(4);
    let mut maker = RandomMaker::new(0);
    let mut breaker = PerturbedPolygonBreaker::new(6);
    let res = run_match(config, &mut maker, &mut breaker).unwrap();
    assert_eq!(res.error, None);
    assert_eq!(res.state.status(), &Status::Capped);
    assert_eq!(res.trace.status, Status::Capped);
    assert_eq!(res.state.points().len(), 1);
    assert_eq!(replay(&res.trace).unwrap().status(), &Status::Capped);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Replaying twice yields the same digests, and every match is
    /// deterministic in its seed.
    #[test]
    fn referee_is_idempotent(seed in 0u64..1000, k in 3usize..5, maker in 0usize..3) {
        let name = ["strips-1-1", "random", "greedy-hull"][maker];
        let config = GameConfig::new(HoleRule::Monochromatic, k, "1:1".parse().unwrap())
            .with_seed(seed)
            .with_max_points(40);
        let run = || {
            let mut m = maker_by_name(name, &config).unwrap();
            let mut b = breaker_by_name("random", &config).unwrap();
            run_match(config.clone(), m.as_mut(), b.as_mut()).unwrap().trace
        };
        let (a, b) = (run(), run());
        prop_assert_eq!(&a, &b);
        let first = replay(&a).unwrap();
        let second = replay(&a).unwrap();
        prop_assert_eq!(first.points(), second.points());
        prop_assert_eq!(first.status(), &a.status);
        let owners: Vec<Owner> = a.moves.iter().map(|m| m.owner).collect();
        prop_assert_eq!(owners.first(), Some(&Owner::Maker));
    }
}
