//! SPARQL endpoint and management routes over HTTP.

use std::future::Future;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, Query, Request, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use oak_core::rdf::{Iri, Term};
use oak_core::sparql::SparqlError;
use oak_core::wrapper::WrapError;
use serde_json::{json, Value};
use tokio::net::TcpListener;

use crate::descriptor::parse_descriptor;
use crate::json::{results_to_json, term_to_json, SPARQL_RESULTS_JSON};
use crate::kmap::{report_to_json, KnowledgeMap, OakError};

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub addr: SocketAddr,
    /// Turtle dump written on shutdown.
    pub data: Option<PathBuf>,
    pub body_limit: usize,
    pub timeout: Duration,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig {
            addr: SocketAddr::from(([127, 0, 0, 1], 3030)),
            data: None,
            body_limit: 8 * 1024 * 1024,
            timeout: Duration::from_secs(30),
        }
    }
}

impl ServerConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.addr.port() == 0 {
            return Err("port must be in 1-65535".into());
        }
        if self.body_limit == 0 {
            return Err("body limit must be positive".into());
        }
        Ok(())
    }
}

type Shared = Arc<KnowledgeMap>;

fn json_response(status: StatusCode, body: &Value) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body.to_string()).into_response()
}

fn error_response(e: &OakError) -> Response {
    let status = match e {
        OakError::Wrap(WrapError::DuplicateModel(_)) => StatusCode::CONFLICT,
        OakError::Wrap(WrapError::UnknownModel(_)) => StatusCode::NOT_FOUND,
        OakError::Wrap(
            WrapError::UnknownConcept(_)
            | WrapError::AmbiguousConcept { .. }
            | WrapError::UnanchoredState(_)
            | WrapError::ValidationFailed(_),
        ) => StatusCode::UNPROCESSABLE_ENTITY,
        OakError::Internal(_) | OakError::Io { .. } => StatusCode::INTERNAL_SERVER_ERROR,
        _ => StatusCode::BAD_REQUEST,
    };
    let mut body = e.to_json();
    if status == StatusCode::INTERNAL_SERVER_ERROR {
        body = json!({ "error": body["error"].clone() });
    }
    json_response(status, &body)
}

/// Runs blocking store work off the async executor.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, OakError> + Send + 'static) -> Result<T, OakError> {
    tokio::task::spawn_blocking(f)
        .await
        .unwrap_or_else(|e| Err(OakError::Internal(format!("worker failed: {e}"))))
}

async fn run_query(kmap: Shared, text: String) -> Response {
    match blocking(move || kmap.query(&text)).await {
        Ok(results) => (
            StatusCode::OK,
            [(header::CONTENT_TYPE, SPARQL_RESULTS_JSON)],
            results_to_json(&results).to_string(),
        )
            .into_response(),
        Err(e) => error_response(&e),
    }
}

fn missing_query() -> Response {
    error_response(&OakError::Sparql(SparqlError::Syntax { line: 1, column: 1, message: "missing query".into() }))
}

fn media_type(headers: &HeaderMap) -> String {
    headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .map(|v| v.split(';').next().unwrap_or("").trim().to_ascii_lowercase())
        .unwrap_or_default()
}

fn form_field(body: &[u8], name: &str) -> Option<String> {
    form_urlencoded::parse(body).find(|(k, _)| k == name).map(|(_, v)| v.into_owned())
}

async fn sparql_get(State(kmap): State<Shared>, Query(params): Query<Vec<(String, String)>>) -> Response {
    match params.into_iter().find(|(k, _)| k == "query") {
        Some((_, q)) => run_query(kmap, q).await,
        None => missing_query(),
    }
}

async fn sparql_post(State(kmap): State<Shared>, headers: HeaderMap, body: Bytes) -> Response {
    let text = match media_type(&headers).as_str() {
        "application/x-www-form-urlencoded" => match form_field(&body, "query") {
            Some(q) => q,
            None => return missing_query(),
        },
        "application/sparql-query" | "text/plain" | "" => match String::from_utf8(body.to_vec()) {
            Ok(q) => q,
            Err(_) => return json_response(StatusCode::BAD_REQUEST, &json!({ "error": "InvalidUtf8" })),
        },
        other => {
            return json_response(
                StatusCode::UNSUPPORTED_MEDIA_TYPE,
                &json!({ "error": "UnsupportedMediaType", "content_type": other }),
            )
        }
    };
    run_query(kmap, text).await
}

async fn ingest(State(kmap): State<Shared>, body: Bytes) -> Response {
    let result = blocking(move || {
        let text = std::str::from_utf8(&body).map_err(|_| OakError::Schema(oak_core::wrapper::SchemaError::new("$", "not UTF-8")))?;
        let descriptor = parse_descriptor(text)?;
        kmap.ingest(&descriptor)
    })
    .await;
    match result {
        Ok(report) => json_response(StatusCode::OK, &report_to_json(&report)),
        Err(e) => error_response(&e),
    }
}

async fn data(State(kmap): State<Shared>, body: Bytes) -> Response {
    let result = blocking(move || {
        let added = kmap.load_turtle(&body, "request body")?;
        Ok((added, kmap.len()))
    })
    .await;
    match result {
        Ok((added, triples)) => json_response(StatusCode::OK, &json!({ "added": added, "triples": triples })),
        Err(e) => error_response(&e),
    }
}

async fn export(State(kmap): State<Shared>) -> Response {
    match blocking(move || Ok(kmap.export())).await {
        Ok(text) => (StatusCode::OK, [(header::CONTENT_TYPE, "text/turtle; charset=utf-8")], text).into_response(),
        Err(e) => error_response(&e),
    }
}

async fn stats(State(kmap): State<Shared>) -> Response {
    json_response(StatusCode::OK, &kmap.stats().to_json())
}

async fn health(State(kmap): State<Shared>) -> Response {
    json_response(StatusCode::OK, &json!({ "status": "ok", "triples": kmap.len() }))
}

async fn browse(State(kmap): State<Shared>, Path(iri): Path<String>) -> Response {
    let iri = match Iri::new(iri.clone()) {
        Ok(i) => i,
        Err(_) => return error_response(&OakError::InvalidIri(iri)),
    };
    let n = kmap.browse(&iri);
    let body = json!({
        "iri": iri.as_str(),
        "subject_of": n.subject_of.iter().map(|(p, o)| json!({
            "predicate": term_to_json(&Term::Iri(p.clone())),
            "object": term_to_json(o),
        })).collect::<Vec<_>>(),
        "object_of": n.object_of.iter().map(|(s, p)| json!({
            "subject": term_to_json(s),
            "predicate": term_to_json(&Term::Iri(p.clone())),
        })).collect::<Vec<_>>(),
    });
    json_response(StatusCode::OK, &body)
}

async fn models(State(kmap): State<Shared>) -> Response {
    let body: serde_json::Map<String, Value> = kmap
        .models()
        .into_iter()
        .map(|(task, iris)| (task.name().to_string(), iris.iter().map(Iri::as_str).collect::<Vec<_>>().into()))
        .collect();
    json_response(StatusCode::OK, &Value::Object(body))
}

async fn not_found() -> Response {
    json_response(StatusCode::NOT_FOUND, &json!({ "error": "NotFound" }))
}

/// Gives framework-generated errors (405, 413, ...) a JSON body too.
async fn json_errors(req: Request, next: Next) -> Response {
    let response = next.run(req).await;
    let status = response.status();
    let is_json = response
        .headers()
        .get(header::CONTENT_TYPE)
        .is_some_and(|v| v.as_bytes().starts_with(b"application/json"));
    if !(status.is_client_error() || status.is_server_error()) || is_json {
        return response;
    }
    let kind = match status {
        StatusCode::METHOD_NOT_ALLOWED => "MethodNotAllowed",
        StatusCode::PAYLOAD_TOO_LARGE => "PayloadTooLarge",
        StatusCode::NOT_FOUND => "NotFound",
        s if s.is_server_error() => "Internal",
        _ => "BadRequest",
    };
    let mut replaced = json_response(status, &json!({ "error": kind }));
    if let Some(allow) = response.headers().get(header::ALLOW) {
        replaced.headers_mut().insert(header::ALLOW, allow.clone());
    }
    replaced
}

async fn with_timeout(State(limit): State<Duration>, req: Request, next: Next) -> Response {
    match tokio::time::timeout(limit, next.run(req)).await {
        Ok(response) => response,
        Err(_) => json_response(StatusCode::REQUEST_TIMEOUT, &json!({ "error": "Timeout" })),
    }
}

pub fn router(kmap: Arc<KnowledgeMap>, config: &ServerConfig) -> Router {
    Router::new()
        .route("/sparql", get(sparql_get).post(sparql_post))
        .route("/ingest", post(ingest))
        .route("/data", post(data))
        .route("/export", get(export))
        .route("/stats", get(stats))
        .route("/health", get(health))
        .route("/models", get(models))
        .route("/browse/{*iri}", get(browse))
        .fallback(not_found)
        .with_state(kmap)
        .layer(DefaultBodyLimit::max(config.body_limit))
        .layer(middleware::from_fn_with_state(config.timeout, with_timeout))
        .layer(middleware::from_fn(json_errors))
}

/// Serves until `shutdown` resolves, then persists the store if a data file
/// is configured.
pub async fn serve(
    kmap: Arc<KnowledgeMap>,
    config: ServerConfig,
    listener: TcpListener,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> Result<(), OakError> {
    config.validate().map_err(OakError::Internal)?;
    let app = router(kmap.clone(), &config);
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await
        .map_err(|e| OakError::Internal(format!("server failed: {e}")))?;
    if let Some(path) = &config.data {
        let kmap = kmap.clone();
        let path = path.clone();
        blocking(move || kmap.save(&path)).await?;
    }
    Ok(())
}

pub async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let terminate = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let terminate = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {}
        _ = terminate => {}
    }
}
