//! JSON-over-HTTP front end for game sessions.
//!
//! | method | path                        | body / query                         |
//! |--------|-----------------------------|--------------------------------------|
//! | POST   | `/sessions`                 | `{"engine": "scheme1", "seed": 7}`   |
//! | GET    | `/sessions/{id}`            |                                      |
//! | POST   | `/sessions/{id}/move`       | `{"action": "first_pick", "door": "D1"}` or `{"action": "final_pick", "choice": "switch"}` |
//! | GET    | `/sessions/{id}/amplitudes` | scheme1 only, after the first pick   |
//! | GET    | `/sweep`                    | `?scheme=1` or `?scheme=2`           |
//! | GET    | `/health`                   |                                      |
//!
//! Session responses are the redacted [`SessionView`]: no prize or seed
//! until the reveal.

mod error;
mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use qmonty_core::game::{
    alice_amplitude_entries, AmplitudeEntry, Engine, FinalChoice, GameSession, SessionView,
};
use qmonty_core::{scheme1, scheme2, DoorId};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

pub use error::ApiError;
pub use store::Store;

pub const ADDR_ENV: &str = "QMONTY_ADDR";
pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";

#[derive(Debug, Clone, Default)]
pub struct Config {
    /// Write-through directory for session blobs.
    pub data_dir: Option<PathBuf>,
    /// Directory served at `/` (the browser client), if any.
    pub static_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreateBody {
    pub engine: String,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    FirstPick,
    FinalPick,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Choice {
    Stick,
    Switch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveBody {
    pub action: Action,
    #[serde(default)]
    pub door: Option<DoorId>,
    #[serde(default)]
    pub choice: Option<Choice>,
}

impl MoveBody {
    /// Applies the move to `s`.
    pub fn apply(&self, s: &mut GameSession) -> Result<(), ApiError> {
        match (self.action, self.door, self.choice) {
            (Action::FirstPick, Some(d), None) => {
                s.pick_first(d)?;
            }
            (Action::FirstPick, _, _) => {
                return Err(ApiError::bad_request("first_pick takes exactly `door`"));
            }
            (Action::FinalPick, door, choice) => {
                let c = match (door, choice) {
                    (Some(d), None) => FinalChoice::Door(d),
                    (None, Some(Choice::Stick)) => FinalChoice::Stick,
                    (None, Some(Choice::Switch)) => FinalChoice::Switch,
                    _ => {
                        return Err(ApiError::bad_request(
                            "final_pick takes exactly one of `door` or `choice`",
                        ))
                    }
                };
                s.pick_final(c)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudesBody {
    pub id: String,
    pub first: DoorId,
    pub opened: DoorId,
    pub amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Debug, Deserialize)]
struct SweepQuery {
    scheme: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum SweepRows {
    One(Vec<scheme1::Scheme1Row>),
    Two(Vec<scheme2::Scheme2Row>),
}

#[derive(Debug, Serialize)]
struct SweepBody {
    scheme: u8,
    rows: SweepRows,
}

#[derive(Clone)]
struct AppState {
    store: Arc<Store>,
}

/// Parses a JSON body, mapping any failure to `bad_request`.
fn json_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid body: {e}")))
}

async fn create(
    State(app): State<AppState>,
    body: Bytes,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let req: CreateBody = json_body(&body)?;
    let engine: Engine = req.engine.parse()?;
    let seed = req.seed.unwrap_or_else(rand::random);
    let session = GameSession::new(engine, seed);
    let view = session.view();
    app.store.insert(session)?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn show(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<SessionView>, ApiError> {
    Ok(Json(app.store.get(&id)?.view()))
}

async fn make_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<SessionView>, ApiError> {
    let mv: MoveBody = json_body(&body)?;
    let ((), s) = app.store.update(&id, |s| mv.apply(s))?;
    Ok(Json(s.view()))
}

async fn amplitudes(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<AmplitudesBody>, ApiError> {
    let s = app.store.get(&id)?;
    if s.engine != Engine::QuantumScheme1 {
        return Err(ApiError::conflict(format!(
            "amplitudes are only defined for scheme1 sessions, not {}",
            s.engine
        )));
    }
    let (Some(first), Some(opened)) = (s.first, s.opened) else {
        return Err(ApiError::conflict("no first pick yet"));
    };
    // Depends only on the opened door, so it is safe before the reveal.
    let amplitudes = alice_amplitude_entries(s.prize, first)?;
    Ok(Json(AmplitudesBody {
        id: s.id,
        first,
        opened,
        amplitudes,
    }))
}

async fn sweep(Query(q): Query<SweepQuery>) -> Result<Json<SweepBody>, ApiError> {
    let body = match q.scheme.as_deref() {
        Some("1") => SweepBody {
            scheme: 1,
            rows: SweepRows::One(scheme1::sweep()?),
        },
        Some("2") => SweepBody {
            scheme: 2,
            rows: SweepRows::Two(scheme2::sweep()?),
        },
        other => {
            return Err(ApiError::bad_request(format!(
                "scheme must be 1 or 2, got {}",
                other.unwrap_or("nothing")
            )))
        }
    };
    Ok(Json(body))
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

async fn fallback() -> ApiError {
    ApiError::not_found("no such route")
}

/// The application router over `store`.
pub fn router(store: Arc<Store>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/move", post(make_move))
        .route("/sessions/{id}/amplitudes", get(amplitudes))
        .route("/sweep", get(sweep))
        .route("/health", get(health))
        .with_state(AppState { store });
    let app = match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.fallback(fallback),
    };
    app.layer(CorsLayer::permissive())
}

/// Binds `addr` and serves until ctrl-c.
pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let store = match &config.data_dir {
        Some(dir) => Store::with_data_dir(dir)?,
        None => Store::in_memory(),
    };
    let app = router(Arc::new(store), config.static_dir);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
