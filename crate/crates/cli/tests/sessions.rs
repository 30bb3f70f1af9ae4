use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use holegames::board::Owner;
use holegames::game::{replay, GameConfig, GameState, GameTrace};
use holegames::geom::{int, Point};
use holegames::oracle::HoleRule;
use holegames_cli::server::{router, AppState};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::new(None))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = axum::body::to_bytes(res.into_body(), usize::MAX).await.unwrap();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, value)
}

async fn create(app: &Router, body: Value) -> Value {
    let (status, v) = call(app, "POST", "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v
}

async fn play(app: &Router, id: &str, points: Value) -> (StatusCode, Value) {
    call(app, "POST", &format!("/sessions/{id}/moves"), Some(json!({ "points": points }))).await
}

fn point(v: &Value) -> Point {
    serde_json::from_value(v.clone()).unwrap()
}

fn board(view: &Value) -> Vec<(Point, String)> {
    view["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (point(&p["point"]), p["owner"].as_str().unwrap().to_string()))
        .collect()
}

#[tokio::test]
async fn engine_maker_opens_the_game() {
    let app = app();
    let v = create(
        &app,
        json!({"variant": "mono", "k": 3, "bias": "1:1", "human_side": "breaker", "opponent": "strips-1-1"}),
    )
    .await;
    assert_eq!(v["status"], "ongoing");
    let b = board(&v);
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].1, "maker");
    assert_eq!(v["next_turn"], json!({"turn": 2, "owner": "breaker", "count": 1}));
    let (status, again) = call(&app, "GET", &format!("/sessions/{}", v["id"].as_str().unwrap()), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(again["points"], v["points"]);
}

#[tokio::test]
async fn illegal_placements_are_rejected_with_reasons() {
    let app = app();
    let v = create(
        &app,
        json!({"variant": "mono", "k": 4, "human_side": "breaker", "opponent": "strips-1-1"}),
    )
    .await;
    let id = v["id"].as_str().unwrap().to_string();
    let (status, v) = play(&app, &id, json!([["1000", "7"]])).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    let b = board(&v);
    assert_eq!(b.len(), 3);

    // the reflection of one point through another is collinear with both
    let (a, m) = (&b[0].0, &b[1].0);
    let reflected = Point::new(&m.x * int(2) - &a.x, &m.y * int(2) - &a.y);
    let (status, err) = play(&app, &id, json!([reflected])).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["error"], "illegal_collinear");
    let triple: Vec<Point> = err["triple"].as_array().unwrap().iter().map(point).collect();
    assert_eq!(triple[0], reflected);
    assert!(triple[1..].contains(a) && triple[1..].contains(m), "{err}");

    let (status, err) = play(&app, &id, json!([a])).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["error"], "duplicate");

    let (status, err) = play(&app, &id, json!([["-50", "3"], ["-60", "11"]])).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["error"], "wrong_count");

    // rejected moves leave the board alone
    let (_, now) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(board(&now), b);
}

#[tokio::test]
async fn unblocked_maker_wins_and_the_game_closes() {
    let app = app();
    let v = create(
        &app,
        json!({"variant": "mono", "k": 3, "human_side": "breaker", "opponent": "strips-1-1"}),
    )
    .await;
    let id = v["id"].as_str().unwrap().to_string();
    let (status, v) = play(&app, &id, json!([["-900", "13/3"]])).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["status"], "maker_won");
    assert_eq!(v["next_turn"], Value::Null);
    let cert = &v["certificate"];
    assert_eq!(cert["vertices"].as_array().unwrap().len(), 3);
    let placed: Vec<Point> = board(&v).into_iter().map(|(p, _)| p).collect();
    for vertex in cert["vertices"].as_array().unwrap() {
        assert!(placed.contains(&point(vertex)));
    }
    let (status, err) = play(&app, &id, json!([["5", "5"]])).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "game_over");
}

#[tokio::test]
async fn unknown_sessions_are_404() {
    let app = app();
    for (method, uri, body) in [
        ("GET", "/sessions/nope", None),
        ("POST", "/sessions/nope/moves", Some(json!({"points": []}))),
        ("GET", "/sessions/nope/events", None),
    ] {
        let (status, v) = call(&app, method, uri, body).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{method} {uri}");
        assert_eq!(v["error"], "unknown_session");
    }
}

#[tokio::test]
async fn stale_turn_is_a_conflict() {
    let app = app();
    let v = create(&app, json!({"variant": "bichrom", "k": 4, "human_side": "maker", "opponent": "random"})).await;
    let id = v["id"].as_str().unwrap().to_string();
    assert_eq!(v["next_turn"]["turn"], 1);
    let body = json!({"points": [["0", "0"]], "turn": 1});
    let (status, _) = call(&app, "POST", &format!("/sessions/{id}/moves"), Some(body.clone())).await;
    assert_eq!(status, StatusCode::OK);
    // the same request again is now out of turn
    let (status, err) = call(&app, "POST", &format!("/sessions/{id}/moves"), Some(body)).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "stale_turn");
}

#[tokio::test]
async fn bad_requests_are_refused() {
    let app = app();
    for body in [
        json!({"variant": "mono", "k": 3, "bias": "2", "human_side": "maker"}),
        json!({"variant": "mono", "k": 3, "human_side": "maker", "opponent": "no-such-player"}),
        json!({"variant": "mono", "k": 2, "human_side": "maker"}),
    ] {
        let (status, _) = call(&app, "POST", "/sessions", Some(body.clone())).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{body}");
    }
}

#[tokio::test]
async fn coordinates_cross_the_wire_exactly() {
    let app = app();
    let v = create(&app, json!({"variant": "bichrom", "k": 5, "human_side": "maker", "opponent": "random"})).await;
    let id = v["id"].as_str().unwrap().to_string();
    let (status, v) = play(&app, &id, json!([["2/4", "-22/7"]])).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["points"][0]["point"], json!(["1/2", "-22/7"]));
    assert_eq!(v["points"][0]["owner"], "maker");
}

/// The session's board and status are what the referee computes from the
/// same moves, and the persisted trace replays.
#[tokio::test]
async fn session_state_matches_the_referee() {
    let dir = tempfile::tempdir().unwrap();
    let app = router(AppState::new(Some(dir.path().to_path_buf())));
    let v = create(
        &app,
        json!({"variant": "bichrom", "k": 4, "bias": "1:2", "human_side": "maker", "opponent": "random", "seed": 9}),
    )
    .await;
    let id = v["id"].as_str().unwrap().to_string();
    let mut view = v;
    let mut i = 0i64;
    while view["status"] == "ongoing" && i < 40 {
        i += 1;
        let x = 37 * i - 500;
        let (status, next) = play(&app, &id, json!([[x.to_string(), format!("{}/11", x * x % 997)]])).await;
        match status {
            StatusCode::OK => view = next,
            StatusCode::UNPROCESSABLE_ENTITY => assert_eq!(next["error"], "illegal_collinear"),
            other => panic!("{other}: {next}"),
        }
    }
    assert!(view["moves"].as_array().unwrap().len() >= 6);

    let config = GameConfig::new(HoleRule::Bichromatic, 4, "1:2".parse().unwrap()).with_seed(9);
    let mut state = GameState::new(config).unwrap();
    for m in view["moves"].as_array().unwrap() {
        let owner: Owner = serde_json::from_value(m["owner"].clone()).unwrap();
        let points: Vec<Point> = serde_json::from_value(m["points"].clone()).unwrap();
        state.apply_move(owner, points).unwrap();
    }
    let expected: Vec<(Point, String)> = state.board().iter().map(|(p, o)| (p.clone(), o.to_string())).collect();
    assert_eq!(board(&view), expected);
    assert_eq!(view["status"], state.status().label());

    let text = std::fs::read_to_string(dir.path().join(format!("session-{id}.json"))).unwrap();
    let trace = GameTrace::from_json(&text).unwrap();
    assert_eq!(trace.maker, "human");
    let replayed = replay(&trace).unwrap();
    assert_eq!(replayed.points(), state.points());
}

#[tokio::test]
async fn event_stream_starts_with_the_current_state() {
    let app = app();
    let v = create(&app, json!({"variant": "mono", "k": 4, "human_side": "breaker", "opponent": "random"})).await;
    let id = v["id"].as_str().unwrap();
    let req = Request::builder().uri(format!("/sessions/{id}/events")).body(Body::empty()).unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    assert_eq!(res.status(), StatusCode::OK);
    assert_eq!(res.headers()["content-type"], "text/event-stream");
    let mut body = res.into_body();
    let frame = body.frame().await.unwrap().unwrap();
    let text = String::from_utf8(frame.into_data().unwrap().to_vec()).unwrap();
    assert!(text.starts_with("event: state\n"), "{text}");
    let data = text.lines().find_map(|l| l.strip_prefix("data: ")).unwrap();
    let state: Value = serde_json::from_str(data).unwrap();
    assert_eq!(state["id"], id);
    assert_eq!(state["points"], v["points"]);
}

#[tokio::test]
async fn event_stream_carries_later_moves() {
    let app = app();
    let v = create(&app, json!({"variant": "mono", "k": 5, "human_side": "breaker", "opponent": "random"})).await;
    let id = v["id"].as_str().unwrap().to_string();
    let req = Request::builder().uri(format!("/sessions/{id}/events")).body(Body::empty()).unwrap();
    let mut body = app.clone().oneshot(req).await.unwrap().into_body();
    body.frame().await.unwrap().unwrap();
    let (status, after) = play(&app, &id, json!([["3000", "1/9"]])).await;
    assert_eq!(status, StatusCode::OK);
    let frame = body.frame().await.unwrap().unwrap();
    let text = String::from_utf8(frame.into_data().unwrap().to_vec()).unwrap();
    let data = text.lines().find_map(|l| l.strip_prefix("data: ")).unwrap();
    let state: Value = serde_json::from_str(data).unwrap();
    assert_eq!(state["points"], after["points"]);
}
