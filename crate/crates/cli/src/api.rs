//! The HTTP service. Every handler is a pure function of its request.

use std::ops::Bound;

use axum::extract::Query;
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use kaleido_core::chi::{enumerate_by_chi, enumerate_euclidean, enumerate_spherical, EUCLIDEAN_SIGNATURES};
use kaleido_core::hyperbolic::triangle_tiling;
use kaleido_core::isometry::{group_for, replicate, Polyline, Viewport};
use kaleido_core::notation::OrbifoldSignature;
use kaleido_core::polyhedron::load_off;
use kaleido_core::rational::Rational;
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::payload::{Classification, GroupDescriptor, PolyReport};
use crate::svg;

pub const MAX_TILE_DEPTH: usize = 8;
pub const MAX_VIEWPORT_CELLS: f64 = 10_000.0;
pub const MAX_ORDER: u32 = 24;

#[derive(Debug, Clone)]
pub enum Cors {
    Permissive,
    Origin(HeaderValue),
}

pub fn router(cors: Cors) -> Router {
    let layer = match cors {
        Cors::Permissive => CorsLayer::permissive(),
        Cors::Origin(origin) => {
            CorsLayer::new().allow_origin(AllowOrigin::exact(origin)).allow_headers([header::CONTENT_TYPE])
        }
    };
    Router::new()
        .route("/api/groups", get(groups))
        .route("/api/classify", get(classify))
        .route("/api/enumerate", get(enumerate))
        .route("/api/replicate", post(replicate_strokes))
        .route("/api/tile", get(tile))
        .route("/api/polyhedron/report", post(polyhedron_report))
        .layer(layer)
}

pub struct ApiError(StatusCode, String);

impl ApiError {
    fn bad_request(msg: impl ToString) -> Self {
        ApiError(StatusCode::BAD_REQUEST, msg.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(serde_json::json!({ "error": self.1 }))).into_response()
    }
}

fn parse_signature(text: &str) -> Result<OrbifoldSignature, ApiError> {
    OrbifoldSignature::parse(text).map_err(ApiError::bad_request)
}

async fn groups() -> Json<Vec<GroupDescriptor>> {
    let all = EUCLIDEAN_SIGNATURES
        .iter()
        .map(|s| GroupDescriptor::of(&OrbifoldSignature::parse(s).expect("table entry")).expect("Euclidean"))
        .collect();
    Json(all)
}

#[derive(Debug, Deserialize)]
struct ClassifyQuery {
    sig: String,
}

async fn classify(Query(q): Query<ClassifyQuery>) -> Result<Json<Classification>, ApiError> {
    Ok(Json(Classification::of(&parse_signature(&q.sig)?)))
}

#[derive(Debug, Deserialize)]
struct EnumerateQuery {
    class: String,
    max_order: Option<u32>,
    min_chi: Option<String>,
}

async fn enumerate(Query(q): Query<EnumerateQuery>) -> Result<Json<Vec<Classification>>, ApiError> {
    let max_order = q.max_order.unwrap_or(6);
    if max_order > MAX_ORDER {
        return Err(ApiError::bad_request(format!("max_order is limited to {MAX_ORDER}")));
    }
    let sigs = match q.class.as_str() {
        "euclidean" => enumerate_euclidean(),
        "spherical" => enumerate_spherical(max_order).map_err(ApiError::bad_request)?,
        "hyperbolic" => {
            let text = q.min_chi.ok_or_else(|| ApiError::bad_request("hyperbolic listing needs min_chi"))?;
            let min_chi: Rational = text.parse().map_err(ApiError::bad_request)?;
            enumerate_by_chi(Bound::Included(min_chi), Bound::Excluded(Rational::ZERO), max_order)
                .map_err(ApiError::bad_request)?
        }
        other => return Err(ApiError::bad_request(format!("unknown class {other:?}"))),
    };
    Ok(Json(sigs.iter().map(Classification::of).collect()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplicateRequest {
    pub signature: String,
    #[serde(default = "unit_scale")]
    pub cell_scale: f64,
    pub strokes: Vec<Polyline>,
    pub viewport: Viewport,
}

fn unit_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplicateResponse {
    pub strokes: Vec<Polyline>,
}

/// Library call behind `/api/replicate`, with the service's size limits applied.
pub fn replicate_request(req: &ReplicateRequest) -> Result<ReplicateResponse, String> {
    let sig = OrbifoldSignature::parse(&req.signature).map_err(|e| e.to_string())?;
    let group = group_for(&sig, req.cell_scale).map_err(|e| e.to_string())?;
    req.viewport.validate().map_err(|e| e.to_string())?;
    let [a, b] = group.lattice;
    let cell_area = (a.x * b.y - a.y * b.x).abs();
    let view_area = (req.viewport.max[0] - req.viewport.min[0]) * (req.viewport.max[1] - req.viewport.min[1]);
    if view_area / cell_area > MAX_VIEWPORT_CELLS {
        return Err(format!("viewport covers more than {MAX_VIEWPORT_CELLS} cells"));
    }
    let strokes = replicate(&group, &req.strokes, &req.viewport).map_err(|e| e.to_string())?;
    Ok(ReplicateResponse { strokes })
}

async fn replicate_strokes(Json(req): Json<ReplicateRequest>) -> Result<Json<ReplicateResponse>, ApiError> {
    tokio::task::spawn_blocking(move || replicate_request(&req))
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map(Json)
        .map_err(ApiError::bad_request)
}

#[derive(Debug, Deserialize)]
struct TileQuery {
    p: u32,
    q: u32,
    r: u32,
    #[serde(default)]
    depth: usize,
}

async fn tile(Query(t): Query<TileQuery>) -> Result<Response, ApiError> {
    if t.depth > MAX_TILE_DEPTH {
        return Err(ApiError::bad_request(format!("depth is limited to {MAX_TILE_DEPTH}")));
    }
    let body =
        tokio::task::spawn_blocking(move || triangle_tiling(t.p, t.q, t.r, t.depth).map(|tiles| svg::tiling(&tiles)))
            .await
            .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
            .map_err(ApiError::bad_request)?;
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], body).into_response())
}

async fn polyhedron_report(body: String) -> Result<Json<PolyReport>, ApiError> {
    let surface = load_off(body.as_bytes()).map_err(ApiError::bad_request)?;
    PolyReport::of(&surface).map(Json).map_err(ApiError::bad_request)
}
