//! Local JSON session service. Sessions live in memory; each one is
//! behind its own lock, so moves on one session are serialized while
//! different sessions proceed independently.

use std::collections::HashMap;
use std::net::{Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use baker_core::game::Violation;
use baker_core::strategy::Phase;
use baker_core::{
    parse_point, Certificate, GameError, Match, MatchError, Player, Point,
    Termination, Transcript,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::commands::{build_spec, Exit, ServeArgs, EXIT_OK, EXIT_USAGE};

#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Match>>>>,
    next_id: AtomicU64,
    save_dir: Option<PathBuf>,
}

impl AppState {
    pub fn new(save_dir: Option<PathBuf>) -> Self {
        AppState {
            save_dir,
            ..AppState::default()
        }
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Match>>, ApiError> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no session `{id}`")))
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(inspect).delete(remove))
        .route("/sessions/{id}/move", post(play_move))
        .route("/sessions/{id}/preview", post(preview))
        .with_state(state)
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    pub order: String,
    pub strategy: String,
    pub horizon: Option<u32>,
    pub payoff: Option<String>,
}

#[derive(Debug, Serialize, Deserialize, Clone, PartialEq, Eq)]
pub struct Interval {
    pub a: Point,
    pub b: Point,
}

/// Snapshot of a session for clients.
#[derive(Debug, Serialize)]
pub struct StateView {
    pub order: String,
    pub strategy: String,
    pub payoff: String,
    pub horizon: u32,
    pub stage: u32,
    pub to_move: Option<Player>,
    pub history: Vec<Point>,
    pub interval: Option<Interval>,
    pub phase: Phase,
    pub termination: Option<Termination>,
    /// SHA-256 of the transcript and strategy phase.
    pub hash: String,
}

fn state_hash(t: &Transcript, phase: &Phase) -> String {
    let canonical = serde_json::to_vec(&(t, phase)).expect("state serializes");
    Sha256::digest(&canonical)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn view(m: &Match) -> StateView {
    let s = m.state();
    let phase = m.player_ii().phase();
    StateView {
        order: m.spec().order.to_string(),
        strategy: m.spec().player_ii.to_string(),
        payoff: m.spec().payoff.to_string(),
        horizon: s.horizon(),
        stage: s.stage(),
        to_move: if m.is_over() { None } else { s.to_move() },
        history: s.history().to_vec(),
        interval: s.current_interval().map(|(a, b)| Interval {
            a: a.clone(),
            b: b.clone(),
        }),
        hash: state_hash(&m.transcript(), &phase),
        phase,
        termination: m.termination().cloned(),
    }
}

#[derive(Debug, Serialize)]
pub struct CreateResponse {
    pub id: String,
    pub state: StateView,
}

async fn create(
    State(app): State<Arc<AppState>>,
    Json(req): Json<CreateRequest>,
) -> Result<(StatusCode, Json<CreateResponse>), ApiError> {
    let horizon = req.horizon.unwrap_or(64);
    let spec = build_spec(&req.order, req.payoff.as_deref(), "human", &req.strategy, horizon, 0)
        .map_err(|e| ApiError::bad_request(e.message))?;
    let m = Match::new(spec).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let id = format!("s{}", app.next_id.fetch_add(1, Ordering::Relaxed) + 1);
    let state = view(&m);
    app.sessions
        .write()
        .expect("session table lock")
        .insert(id.clone(), Arc::new(Mutex::new(m)));
    Ok((StatusCode::CREATED, Json(CreateResponse { id, state })))
}

async fn inspect(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Transcript>, ApiError> {
    let session = app.get(&id)?;
    let m = session.lock().expect("session lock");
    Ok(Json(m.transcript()))
}

async fn remove(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    let session = app
        .sessions
        .write()
        .expect("session table lock")
        .remove(&id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no session `{id}`")))?;
    let mut saved = None;
    if let Some(dir) = &app.save_dir {
        let t = session.lock().expect("session lock").transcript();
        let path = dir.join(format!("{id}.json"));
        std::fs::write(&path, t.to_json() + "\n")
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, format!("{}: {e}", path.display())))?;
        saved = Some(path.display().to_string());
    }
    Ok(Json(serde_json::json!({ "deleted": id, "saved": saved })))
}

/// A point as transcript JSON or as DSL text.
#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub point: serde_json::Value,
}

#[derive(Debug, Serialize)]
pub struct MoveResponse {
    pub legal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated: Option<Vec<Violation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reply: Option<Point>,
    pub certificates: Vec<Certificate>,
    pub state: StateView,
}

fn read_point(m: &Match, value: serde_json::Value) -> Result<Point, ApiError> {
    let order = &m.spec().order;
    match value {
        serde_json::Value::String(text) => parse_point(order, &text).map_err(|e| ApiError::bad_request(e.to_string())),
        other => serde_json::from_value::<Point>(other)
            .map_err(|e| ApiError::bad_request(format!("point: {e}")))?
            .conform(order)
            .map_err(|e| ApiError::bad_request(e.to_string())),
    }
}

/// Apply a move to `m` in place.
fn apply(m: &mut Match, value: serde_json::Value) -> Result<MoveResponse, ApiError> {
    if m.is_over() {
        return Err(ApiError::new(StatusCode::CONFLICT, "game over"));
    }
    let point = read_point(m, value)?;
    let k = m.state().stage();
    match m.state().check_move(&point) {
        Ok(()) => {}
        Err(GameError::Illegal(e)) => {
            return Ok(MoveResponse {
                legal: false,
                violated: Some(e.violations),
                reply: None,
                certificates: Vec::new(),
                state: view(m),
            })
        }
        Err(e) => return Err(ApiError::bad_request(e.to_string())),
    }
    let certificates = m.submit(point).map_err(|e| match e {
        MatchError::Over => ApiError::new(StatusCode::CONFLICT, "game over"),
        other => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, other.to_string()),
    })?;
    Ok(MoveResponse {
        legal: true,
        violated: None,
        reply: m.state().b(k).cloned(),
        certificates,
        state: view(m),
    })
}

async fn play_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(req): Json<MoveRequest>,
) -> Result<Json<MoveResponse>, ApiError> {
    let session = app.get(&id)?;
    let mut m = session.lock().expect("session lock");
    Ok(Json(apply(&mut m, req.point)?))
}

async fn preview(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(req): Json<MoveRequest>,
) -> Result<Json<MoveResponse>, ApiError> {
    let session = app.get(&id)?;
    let mut scratch = session.lock().expect("session lock").clone();
    Ok(Json(apply(&mut scratch, req.point)?))
}

pub async fn serve(port: u16, save_dir: Option<PathBuf>) -> std::io::Result<()> {
    let addr = SocketAddr::from((Ipv4Addr::LOCALHOST, port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    println!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(AppState::new(save_dir)))).await
}

pub fn serve_blocking(args: &ServeArgs) -> Result<i32, Exit> {
    let fail = |e: std::io::Error| Exit {
        code: EXIT_USAGE,
        message: format!("serve: {e}"),
    };
    let runtime = tokio::runtime::Runtime::new().map_err(fail)?;
    runtime.block_on(serve(args.port, args.save_dir.clone())).map_err(fail)?;
    Ok(EXIT_OK)
}
