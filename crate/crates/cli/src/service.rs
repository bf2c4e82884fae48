//! Local JSON-over-HTTP service: static geometry plus in-memory game
//! sessions.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};
use std::time::SystemTime;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::sync::Mutex;

use polychora_core::game::{default_eat_radius, GameConfig, GameError, GameState};
use polychora_core::io::event_log_string;
use polychora_core::polytope::PolytopeName;
use polychora_core::quat::UnitQuaternion;

use crate::geometry;

pub const PORT_ENV: &str = "POLYCHORA_PORT";
pub const DEFAULT_PORT: u16 = 8040;

pub struct Session {
    pub state: GameState<f64>,
    pub created_at: SystemTime,
}

#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
}

impl AppState {
    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("no game `{id}`")))
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

fn parse_name(name: &str) -> Result<PolytopeName, ApiError> {
    name.parse()
        .map_err(|_| ApiError::not_found(format!("unknown polytope `{name}`")))
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("malformed request: {e}")))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PolytopeSummary {
    name: &'static str,
    vertices: usize,
    edges: usize,
    faces: usize,
    cells: usize,
    dual_degree: Option<usize>,
    eat_radius: f64,
    default_subdivision: u32,
}

async fn list_polytopes() -> Json<Vec<PolytopeSummary>> {
    Json(
        PolytopeName::ALL
            .iter()
            .map(|&name| {
                let p = geometry::polychoron(name);
                let (vertices, edges, faces, cells) = p.counts();
                PolytopeSummary {
                    name: name.as_str(),
                    vertices,
                    edges,
                    faces,
                    cells,
                    dual_degree: p.dual_adjacency().regular_degree(),
                    eat_radius: default_eat_radius(name),
                    default_subdivision: name.default_subdivision(),
                }
            })
            .collect(),
    )
}

#[derive(Deserialize)]
struct MeshQuery {
    subdiv: Option<u32>,
}

async fn get_polytope(Path(name): Path<String>, Query(q): Query<MeshQuery>) -> Result<Response, ApiError> {
    let name = parse_name(&name)?;
    let level = q.subdiv.unwrap_or(name.default_subdivision());
    let text = tokio::task::spawn_blocking(move || geometry::base_mesh_json(name, level))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(([(header::CONTENT_TYPE, "application/json")], text.as_str().to_owned()).into_response())
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct NewGame {
    polytope: String,
    eat_radius: Option<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GameSummary {
    id: String,
    polytope: &'static str,
    cells: usize,
    eat_radius: f64,
    eaten: Vec<usize>,
    coverage: f64,
    won: bool,
    player: [f64; 4],
}

async fn create_game(State(app): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let req: NewGame = parse_body(&body)?;
    let name = parse_name(&req.polytope)?;
    let mut config = GameConfig::new(name);
    config.eat_radius = req.eat_radius;
    let state = GameState::with_centers(config, geometry::cell_centers(name))
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let id = format!("g{:08x}", app.next_id.fetch_add(1, Ordering::Relaxed) + 1);
    let summary = GameSummary {
        id: id.clone(),
        polytope: name.as_str(),
        cells: state.cell_count(),
        eat_radius: state.eat_radius(),
        eaten: state.event_log().iter().map(|e| e.cell).collect(),
        coverage: state.coverage(),
        won: state.is_won(),
        player: state.player().to_f64_array(),
    };
    let session = Session {
        state,
        created_at: SystemTime::now(),
    };
    app.sessions
        .write()
        .expect("session table lock")
        .insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(summary)).into_response())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepRequest {
    t: f64,
    q: [f64; 4],
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct StepResponse {
    pub eaten: Vec<usize>,
    pub coverage: f64,
    pub won: bool,
    pub player: [f64; 4],
}

async fn step_game(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<StepResponse>, ApiError> {
    let session = app.session(&id)?;
    let req: StepRequest = parse_body(&body)?;
    let q = UnitQuaternion::from_wire(req.q).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let mut s = session.lock().await;
    let events = s.state.step(q, req.t).map_err(|e| match e {
        GameError::NonMonotonicTime { .. } => ApiError::new(StatusCode::CONFLICT, e.to_string()),
        other => ApiError::bad_request(other.to_string()),
    })?;
    Ok(Json(StepResponse {
        eaten: events.iter().map(|e| e.cell).collect(),
        coverage: s.state.coverage(),
        won: s.state.is_won(),
        player: s.state.player().to_f64_array(),
    }))
}

async fn game_log(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let session = app.session(&id)?;
    let text = event_log_string(session.lock().await.state.event_log());
    Ok(([(header::CONTENT_TYPE, "application/x-ndjson")], text).into_response())
}

async fn end_game(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    app.sessions
        .write()
        .expect("session table lock")
        .remove(&id)
        .map(|_| StatusCode::NO_CONTENT)
        .ok_or_else(|| ApiError::not_found(format!("no game `{id}`")))
}

pub fn router() -> Router {
    Router::new()
        .route("/polytopes", get(list_polytopes))
        .route("/polytope/{name}", get(get_polytope))
        .route("/games", post(create_game))
        .route("/games/{id}/step", post(step_game))
        .route("/games/{id}/log", get(game_log))
        .route("/games/{id}", axum::routing::delete(end_game))
        .with_state(Arc::new(AppState::default()))
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
