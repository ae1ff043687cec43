//! HTTP + JSON play service.
//!
//! | method | path                          |                                   |
//! |--------|-------------------------------|-----------------------------------|
//! | POST   | `/sessions`                   | create a session                  |
//! | GET    | `/sessions/{id}`              | current session                   |
//! | GET    | `/sessions/{id}/moves`        | legal moves (`?hints=true` adds nimbers) |
//! | POST   | `/sessions/{id}/moves`        | submit the human's move           |
//! | POST   | `/sessions/{id}/engine-move`  | let the engine move               |
//! | GET    | `/analyze?state=...`          | analyze a position                |

use std::sync::{Arc, Mutex};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sprouts_core::NimberTable;

use crate::analysis::{analyze, Analysis};
use crate::notation::parse_position;
use crate::session::{GameRequest, HistoryEntry, Session, SessionError, WireMove};
use crate::table::SharedTable;

pub struct AppState {
    pub table: Arc<SharedTable>,
    sessions: DashMap<String, Arc<Mutex<Session>>>,
}

impl AppState {
    pub fn new(table: Arc<SharedTable>) -> Arc<Self> {
        Arc::new(AppState { table, sessions: DashMap::new() })
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .get(id)
            .map(|s| Arc::clone(&s))
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}")))
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: serde_json::Value,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError { status, body: json!({ "error": message.into() }) }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::Finished | SessionError::WrongTurn { .. } => StatusCode::CONFLICT,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError::new(status, e.to_string())
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    #[serde(flatten)]
    pub game: GameRequest,
    /// 1 or 2; `0` lets the engine play both seats.
    #[serde(default = "default_human")]
    pub human_player: u8,
}

fn default_human() -> u8 {
    1
}

#[derive(Debug, Serialize)]
pub struct SessionView {
    pub id: String,
    pub game: GameRequest,
    pub initial_state: String,
    pub state: String,
    pub nimber: u64,
    pub to_move: u8,
    pub human_player: Option<u8>,
    pub engine_to_move: bool,
    pub status: &'static str,
    pub winner: Option<u8>,
    pub history: Vec<HistoryEntry>,
}

impl SessionView {
    fn of<T: NimberTable + ?Sized>(s: &Session, table: &T) -> Self {
        let finished = s.is_finished();
        SessionView {
            id: s.id.clone(),
            game: s.request.clone(),
            initial_state: s.initial.to_string(),
            state: s.position.to_string(),
            nimber: s.position.nimber(table).0,
            to_move: s.to_move(),
            human_player: s.human_player,
            engine_to_move: !finished && s.engine_to_move(),
            status: if finished { "finished" } else { "ongoing" },
            winner: s.winner(),
            history: s.history.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MoveView {
    #[serde(rename = "move")]
    pub mv: WireMove,
    pub text: String,
    pub result_state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nimber_after: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct MovesView {
    pub state: String,
    pub status: &'static str,
    pub to_move: u8,
    pub moves: Vec<MoveView>,
}

#[derive(Debug, Serialize)]
pub struct EngineMoveView {
    #[serde(rename = "move")]
    pub mv: WireMove,
    pub text: String,
    pub winning: bool,
    pub session: SessionView,
}

#[derive(Debug, Deserialize)]
pub struct HintsQuery {
    #[serde(default)]
    pub hints: bool,
}

#[derive(Debug, Deserialize)]
pub struct AnalyzeQuery {
    pub state: String,
}

fn legal_move_views<T: NimberTable + ?Sized>(s: &Session, table: &T, hints: bool) -> Vec<MoveView> {
    s.position
        .legal_moves()
        .into_iter()
        .map(|m| {
            let after = s.position.apply(&m).expect("generated moves are legal");
            MoveView {
                mv: m.into(),
                text: m.to_string(),
                result_state: after.to_string(),
                nimber_after: hints.then(|| after.nimber(table).0),
            }
        })
        .collect()
}

async fn create_session(
    State(app): State<Arc<AppState>>,
    Json(req): Json<CreateRequest>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let human = match req.human_player {
        0 => None,
        p => Some(p),
    };
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session::new(id.clone(), req.game, human)?;
    let view = SessionView::of(&session, app.table.as_ref());
    app.sessions.insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let s = app.session(&id)?;
    let s = s.lock().unwrap();
    Ok(Json(SessionView::of(&s, app.table.as_ref())))
}

async fn list_moves(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<HintsQuery>,
) -> Result<Json<MovesView>, ApiError> {
    let s = app.session(&id)?;
    let s = s.lock().unwrap();
    if s.is_finished() {
        return Err(ApiError {
            status: StatusCode::CONFLICT,
            body: json!({
                "error": "the game is over",
                "state": s.position.to_string(),
                "status": "finished",
                "winner": s.winner(),
                "moves": [],
            }),
        });
    }
    Ok(Json(MovesView {
        state: s.position.to_string(),
        status: "ongoing",
        to_move: s.to_move(),
        moves: legal_move_views(&s, app.table.as_ref(), q.hints),
    }))
}

async fn submit_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(m): Json<WireMove>,
) -> Result<Json<SessionView>, ApiError> {
    let s = app.session(&id)?;
    let mut s = s.lock().unwrap();
    match s.submit(m) {
        Ok(()) => Ok(Json(SessionView::of(&s, app.table.as_ref()))),
        Err(e @ SessionError::IllegalMove(_)) => {
            let legal: Vec<WireMove> = s.position.legal_moves().into_iter().map(WireMove::from).collect();
            Err(ApiError {
                status: StatusCode::BAD_REQUEST,
                body: json!({ "error": e.to_string(), "legal_moves": legal }),
            })
        }
        Err(e) => Err(e.into()),
    }
}

async fn engine_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<EngineMoveView>, ApiError> {
    let s = app.session(&id)?;
    let mut s = s.lock().unwrap();
    let (mv, winning) = s.engine_move(app.table.as_ref())?;
    Ok(Json(EngineMoveView {
        mv: mv.into(),
        text: mv.to_string(),
        winning,
        session: SessionView::of(&s, app.table.as_ref()),
    }))
}

async fn analyze_state(
    State(app): State<Arc<AppState>>,
    Query(q): Query<AnalyzeQuery>,
) -> Result<Json<Analysis>, ApiError> {
    let position = parse_position(&q.state).map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.to_string()))?;
    Ok(Json(analyze(&position, app.table.as_ref())))
}

pub fn router(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", get(list_moves).post(submit_move))
        .route("/sessions/{id}/engine-move", post(engine_move))
        .route("/analyze", get(analyze_state))
        .with_state(app)
}

/// Serves until ctrl-c.
pub async fn serve(port: u16, table: Arc<SharedTable>) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(table)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
