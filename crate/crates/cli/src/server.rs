//! HTTP session API: one in-memory game per session, the engine playing
//! the side the human does not.

use std::collections::HashMap;
use std::convert::Infallible;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::sse::{Event, KeepAlive, Sse};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use futures::stream::{self, Stream, StreamExt};
use holegames::board::Owner;
use holegames::game::{GameConfig, GameState, GameTrace, MoveError, MoveRecord, Status, Strategy};
use holegames::geom::Point;
use holegames::oracle::{HoleCertificate, HoleRule};
use holegames::players::{breaker_by_name, maker_by_name};
use holegames::schedule::Bias;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::broadcast;

use crate::args::Variant;

const HUMAN: &str = "human";

#[derive(Debug, Deserialize)]
pub struct CreateSession {
    pub variant: Variant,
    pub k: usize,
    #[serde(default = "default_bias")]
    pub bias: String,
    pub human_side: Owner,
    /// Engine strategy spec; a random player when absent.
    #[serde(default)]
    pub opponent: Option<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub max_points: Option<usize>,
}

fn default_bias() -> String {
    "1:1".to_string()
}

#[derive(Debug, Deserialize)]
pub struct SubmitMove {
    pub points: Vec<Point>,
    /// The turn number the client believes it is playing; a stale number
    /// is refused.
    #[serde(default)]
    pub turn: Option<u64>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Placed {
    pub point: Point,
    pub owner: Owner,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct NextTurn {
    pub turn: u64,
    pub owner: Owner,
    pub count: usize,
}

/// Everything a client needs to redraw a session.
#[derive(Debug, Clone, Serialize)]
pub struct SessionView {
    pub id: String,
    pub variant: HoleRule,
    pub k: usize,
    pub bias: String,
    pub human_side: Owner,
    pub opponent: String,
    pub status: &'static str,
    pub certificate: Option<HoleCertificate>,
    /// `None` once the game is over.
    pub next_turn: Option<NextTurn>,
    pub points: Vec<Placed>,
    pub moves: Vec<MoveRecord>,
    /// Why the engine stopped playing, if it did before the game ended.
    pub engine_stopped: Option<String>,
    pub created_at: String,
    pub last_move_at: Option<String>,
}

struct Session {
    id: String,
    human: Owner,
    opponent: String,
    game: GameState,
    engine: Box<dyn Strategy>,
    trace: GameTrace,
    engine_stopped: Option<String>,
    created_at: String,
    last_move_at: Option<String>,
}

impl Session {
    fn view(&self) -> SessionView {
        let status = self.game.status();
        let live = status.is_ongoing() && self.engine_stopped.is_none();
        SessionView {
            id: self.id.clone(),
            variant: self.game.config.variant,
            k: self.game.config.k,
            bias: self.game.config.bias.to_string(),
            human_side: self.human,
            opponent: self.opponent.clone(),
            status: status.label(),
            certificate: match status {
                Status::MakerWon { certificate } => Some(certificate.clone()),
                _ => None,
            },
            next_turn: live.then(|| {
                let (owner, count) = self.game.next_turn();
                NextTurn {
                    turn: self.trace.moves.len() as u64 + 1,
                    owner,
                    count,
                }
            }),
            points: self
                .game
                .board()
                .iter()
                .map(|(p, owner)| Placed { point: p.clone(), owner })
                .collect(),
            moves: self.trace.moves.clone(),
            engine_stopped: self.engine_stopped.clone(),
            created_at: self.created_at.clone(),
            last_move_at: self.last_move_at.clone(),
        }
    }

    fn record(&mut self, owner: Owner, points: Vec<Point>) {
        self.trace.record(owner, points, self.game.status());
        self.last_move_at = Some(now());
    }

    /// Plays the engine's turns until the human is due or the game ends.
    fn engine_turns(&mut self) {
        while self.engine_stopped.is_none() && self.game.status().is_ongoing() {
            let (owner, count) = self.game.next_turn();
            if owner == self.human {
                break;
            }
            if count == 0 {
                self.game.cap();
                self.trace.status = self.game.status().clone();
                break;
            }
            if owner == Owner::Maker {
                match self.engine.goal_reached(&self.game) {
                    Ok(false) => {}
                    Ok(true) => {
                        self.engine_stopped = Some("the engine's Maker strategy reached its goal".into());
                        break;
                    }
                    Err(e) => {
                        self.engine_stopped = Some(e.to_string());
                        break;
                    }
                }
            }
            let points = match self.engine.respond(&self.game, count) {
                Ok(p) => p,
                // as in a simulated match, a clipped last turn ends the game
                Err(_) if count < self.game.schedule().peek().1 => {
                    self.game.cap();
                    self.trace.status = self.game.status().clone();
                    break;
                }
                Err(e) => {
                    self.engine_stopped = Some(e.to_string());
                    break;
                }
            };
            if let Err(e) = self.game.apply_move(owner, points.clone()) {
                self.engine_stopped = Some(format!("engine move rejected: {e}"));
                break;
            }
            self.record(owner, points);
        }
    }
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339()
}

struct Slot {
    session: Mutex<Session>,
    events: broadcast::Sender<String>,
}

/// Shared server state: the session table and where traces go.
pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Slot>>>,
    trace_dir: Option<PathBuf>,
}

impl AppState {
    pub fn new(trace_dir: Option<PathBuf>) -> Arc<Self> {
        Arc::new(AppState {
            sessions: RwLock::new(HashMap::new()),
            trace_dir,
        })
    }

    fn slot(&self, id: &str) -> Result<Arc<Slot>, ApiError> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session `{id}`")))
    }

    fn persist(&self, s: &Session) {
        let Some(dir) = &self.trace_dir else { return };
        let path = dir.join(format!("session-{}.json", s.id));
        if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, s.trace.to_json())) {
            eprintln!("cannot write {}: {e}", path.display());
        }
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, error: &str, message: String) -> Self {
        ApiError {
            status,
            body: json!({ "error": error, "message": message }),
        }
    }

    fn from_move(e: MoveError) -> Self {
        let message = e.to_string();
        match e {
            MoveError::GameOver => ApiError::new(StatusCode::CONFLICT, "game_over", message),
            MoveError::WrongTurn { .. } => ApiError::new(StatusCode::CONFLICT, "out_of_turn", message),
            MoveError::WrongCount { allowed, got } => ApiError {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                body: json!({ "error": "wrong_count", "message": message, "allowed": allowed, "got": got }),
            },
            MoveError::Duplicate { point } => ApiError {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                body: json!({ "error": "duplicate", "message": message, "point": point }),
            },
            MoveError::IllegalCollinear { point, a, b } => ApiError {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                body: json!({
                    "error": "illegal_collinear",
                    "message": message,
                    "point": point,
                    "triple": [point, a, b],
                }),
            },
            MoveError::BadConfig(_) => ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "bad_config", message),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

fn bad_request(error: &str, message: impl ToString) -> ApiError {
    ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, error, message.to_string())
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(submit_move))
        .route("/sessions/{id}/events", get(session_events))
        .with_state(state)
}

/// Runs blocking engine work off the async executor.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    tokio::task::spawn_blocking(f).await.expect("engine task panicked")
}

fn new_session(req: CreateSession) -> Result<Session, ApiError> {
    let bias: Bias = req.bias.parse().map_err(|e| bad_request("bad_bias", e))?;
    let mut config = GameConfig::new(req.variant.into(), req.k, bias).with_seed(req.seed);
    if let Some(n) = req.max_points {
        config = config.with_max_points(n);
    }
    let game = GameState::new(config.clone()).map_err(ApiError::from_move)?;
    let opponent = req.opponent.unwrap_or_else(|| "random".to_string());
    let engine = match req.human_side {
        Owner::Maker => breaker_by_name(&opponent, &config),
        Owner::Breaker => maker_by_name(&opponent, &config),
    }
    .map_err(|e| bad_request("bad_opponent", e))?;
    let (maker, breaker) = match req.human_side {
        Owner::Maker => (HUMAN.to_string(), engine.name()),
        Owner::Breaker => (engine.name(), HUMAN.to_string()),
    };
    Ok(Session {
        id: uuid::Uuid::new_v4().simple().to_string(),
        human: req.human_side,
        opponent,
        game,
        engine,
        trace: GameTrace::new(config, maker, breaker),
        engine_stopped: None,
        created_at: now(),
        last_move_at: None,
    })
}

async fn create_session(
    State(app): State<Arc<AppState>>,
    Json(req): Json<CreateSession>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let mut session = new_session(req)?;
    let (session, view) = blocking(move || {
        session.engine_turns();
        let view = session.view();
        (session, view)
    })
    .await;
    app.persist(&session);
    let (events, _) = broadcast::channel(64);
    let slot = Arc::new(Slot {
        session: Mutex::new(session),
        events,
    });
    app.sessions
        .write()
        .expect("session table lock")
        .insert(view.id.clone(), slot);
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let slot = app.slot(&id)?;
    Ok(Json(blocking(move || slot.session.lock().expect("session lock").view()).await))
}

async fn submit_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(req): Json<SubmitMove>,
) -> Result<Json<SessionView>, ApiError> {
    let slot = app.slot(&id)?;
    let app2 = app.clone();
    let view = blocking(move || -> Result<SessionView, ApiError> {
        // holding the lock for the whole turn keeps each session single-writer
        let mut s = slot.session.lock().expect("session lock");
        if let Some(reason) = &s.engine_stopped {
            return Err(ApiError::new(StatusCode::CONFLICT, "engine_stopped", reason.clone()));
        }
        if !s.game.status().is_ongoing() {
            return Err(ApiError::from_move(MoveError::GameOver));
        }
        let (owner, _) = s.game.next_turn();
        if owner != s.human {
            return Err(ApiError::from_move(MoveError::WrongTurn {
                expected: owner,
                got: s.human,
            }));
        }
        let due = s.trace.moves.len() as u64 + 1;
        if let Some(turn) = req.turn.filter(|t| *t != due) {
            return Err(ApiError::new(
                StatusCode::CONFLICT,
                "stale_turn",
                format!("turn {turn} was submitted but turn {due} is due"),
            ));
        }
        let human = s.human;
        s.game.apply_move(human, req.points.clone()).map_err(ApiError::from_move)?;
        s.record(human, req.points);
        s.engine_turns();
        app2.persist(&s);
        let view = s.view();
        if let Ok(text) = serde_json::to_string(&view) {
            // no subscribers is fine
            let _ = slot.events.send(text);
        }
        Ok(view)
    })
    .await?;
    Ok(Json(view))
}

/// The current state, then every later state, as `state` events.
async fn session_events(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Sse<impl Stream<Item = Result<Event, Infallible>>>, ApiError> {
    let slot = app.slot(&id)?;
    // subscribe before reading so no update falls between the two
    let rx = slot.events.subscribe();
    let first = blocking(move || serde_json::to_string(&slot.session.lock().expect("session lock").view()))
        .await
        .unwrap_or_default();
    let later = stream::unfold(rx, |mut rx| async move {
        loop {
            match rx.recv().await {
                Ok(text) => return Some((text, rx)),
                Err(broadcast::error::RecvError::Lagged(_)) => continue,
                Err(broadcast::error::RecvError::Closed) => return None,
            }
        }
    });
    let events = stream::once(async move { first })
        .chain(later)
        .map(|text| Ok(Event::default().event("state").data(text)));
    Ok(Sse::new(events).keep_alive(KeepAlive::default()))
}

pub async fn serve(port: u16, trace_dir: Option<PathBuf>) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(trace_dir))).await?;
    Ok(())
}
