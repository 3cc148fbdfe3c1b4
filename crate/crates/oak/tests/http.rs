//! Route-level tests driving the router in-process.

use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use oak::kmap::KnowledgeMap;
use oak::server::{router, ServerConfig};
use oak_core::fixtures::{example_models, Q3_CROP_YIELD_MODELS};
use oak_core::wrapper::WrapOptions;
use serde_json::{json, Value};
use tower::ServiceExt;

const REGRESSOR_004: &str = include_str!("../fixtures/descriptors/regressor_004.json");

fn app_with(config: ServerConfig) -> (Router, Arc<KnowledgeMap>) {
    let kmap = Arc::new(KnowledgeMap::bundled(WrapOptions::default()));
    (router(kmap.clone(), &config), kmap)
}

fn app() -> (Router, Arc<KnowledgeMap>) {
    app_with(ServerConfig::default())
}

fn loaded() -> Router {
    let (app, kmap) = app();
    for d in example_models() {
        kmap.ingest(&d).unwrap();
    }
    app
}

async fn send(app: &Router, req: Request<Body>) -> (StatusCode, String, String) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let ctype = resp
        .headers()
        .get(header::CONTENT_TYPE)
        .map(|v| v.to_str().unwrap().to_string())
        .unwrap_or_default();
    let body = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, ctype, String::from_utf8(body.to_vec()).unwrap())
}

fn get(uri: &str) -> Request<Body> {
    Request::get(uri).body(Body::empty()).unwrap()
}

fn post(uri: &str, ctype: &str, body: impl Into<Body>) -> Request<Body> {
    Request::post(uri).header(header::CONTENT_TYPE, ctype).body(body.into()).unwrap()
}

fn json(body: &str) -> Value {
    serde_json::from_str(body).unwrap_or_else(|e| panic!("not JSON ({e}): {body}"))
}

fn encode(text: &str) -> String {
    form_urlencoded::byte_serialize(text.as_bytes()).collect()
}

#[tokio::test]
async fn health_reports_triple_count() {
    let (app, kmap) = app();
    let (status, ctype, body) = send(&app, get("/health")).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ctype, "application/json");
    assert_eq!(json(&body), json!({ "status": "ok", "triples": kmap.len() }));
}

#[tokio::test]
async fn predicts_query_returns_crop_yield_models() {
    let app = loaded();
    let (status, ctype, body) = send(&app, post("/sparql", "application/sparql-query", Q3_CROP_YIELD_MODELS)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ctype, "application/sparql-results+json");
    let v = json(&body);
    assert_eq!(v["head"]["vars"], json!(["subject", "predicate", "object"]));
    let mut subjects: Vec<&str> = v["results"]["bindings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["subject"]["value"].as_str().unwrap())
        .collect();
    subjects.dedup();
    assert_eq!(
        subjects,
        ["http://www.ucd.ie/consus/AgriKMap#Regressor_010", "http://www.ucd.ie/consus/AgriKMap#Regressor_011"]
    );
}

#[tokio::test]
async fn query_via_form_and_get() {
    let app = loaded();
    let q = "PREFIX AgriOnt: <http://www.ucd.ie/consus/AgriOnt#> SELECT ?m WHERE { ?m a AgriOnt:Clustering }";
    let (status, _, body) = send(&app, post("/sparql", "application/x-www-form-urlencoded", format!("query={}", encode(q)))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(json(&body)["results"]["bindings"][0]["m"]["value"], "http://www.ucd.ie/consus/AgriKMap#Cluster_001");
    let (status, _, get_body) = send(&app, get(&format!("/sparql?query={}", encode(q)))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(get_body, body);
}

#[tokio::test]
async fn optional_is_rejected_by_name() {
    let (app, _) = app();
    let q = "SELECT ?s WHERE { ?s ?p ?o OPTIONAL { ?s ?q ?r } }";
    let (status, ctype, body) = send(&app, post("/sparql", "application/sparql-query", q)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(ctype, "application/json");
    let v = json(&body);
    assert_eq!(v["error"], "UnsupportedFeature");
    assert_eq!(v["feature"], "OPTIONAL");
}

#[tokio::test]
async fn query_errors_are_structured() {
    let (app, _) = app();
    let (status, _, body) = send(&app, post("/sparql", "application/sparql-query", "SELECT ?s WHERE {\n ?s ?p }")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let v = json(&body);
    assert_eq!(v["error"], "SyntaxError");
    assert_eq!(v["line"], 2);

    let (_, _, body) = send(&app, post("/sparql", "application/sparql-query", "SELECT ?s WHERE { ?s x:p ?o }")).await;
    assert_eq!(json(&body), json!({ "error": "UnknownPrefix", "prefix": "x", "message": "unknown prefix 'x'" }));

    let (status, _, body) = send(&app, get("/sparql")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(json(&body)["error"], "SyntaxError");

    let (status, _, body) = send(&app, post("/sparql", "application/xml", "<q/>")).await;
    assert_eq!(status, StatusCode::UNSUPPORTED_MEDIA_TYPE);
    assert_eq!(json(&body)["error"], "UnsupportedMediaType");
}

#[tokio::test]
async fn ingest_reports_minted_instances() {
    let (app, kmap) = app();
    let before = kmap.len();
    let (status, _, body) = send(&app, post("/ingest", "application/json", REGRESSOR_004)).await;
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    assert_eq!(v["output"], "http://www.ucd.ie/consus/AgriKMap#Soil_000");
    assert_eq!(v["conditions"].as_array().unwrap().len(), 3);
    assert_eq!(v["triples_added"].as_u64().unwrap() as usize, kmap.len() - before);

    let (status, _, body) = send(&app, post("/ingest", "application/json", REGRESSOR_004)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(json(&body)["triples_added"], 0);

    let changed = REGRESSOR_004.replace("kNN-regression", "svr");
    let (status, _, body) = send(&app, post("/ingest", "application/json", changed)).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(json(&body)["error"], "DuplicateModel");
}

#[tokio::test]
async fn ingest_errors() {
    let (app, kmap) = app();
    let before = kmap.len();
    let unknown = REGRESSOR_004.replace("Regressor_004", "Regressor_900").replace("\"SoilPH\", \"transformation\": \"max\"", "\"Unobtainium\", \"transformation\": \"max\"");
    let (status, _, body) = send(&app, post("/ingest", "application/json", unknown)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["error"], "UnknownConcept");
    assert_eq!(kmap.len(), before);

    let no_output = r#"{"model_id":"R","task":"regression","algorithm":"x","inputs":[{"concept":"SoilPH","transformation":"avg"}]}"#;
    let (status, _, body) = send(&app, post("/ingest", "application/json", no_output)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let v = json(&body);
    assert_eq!((v["error"].as_str(), v["field"].as_str()), (Some("SchemaError"), Some("output")));

    let (status, _, body) = send(&app, post("/ingest", "application/json", "{not json")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(json(&body)["error"], "SchemaError");
}

#[tokio::test]
async fn data_export_round_trip() {
    let (app, kmap) = app();
    let before = kmap.len();
    let ttl = "@prefix ex: <http://example.org/> .\nex:a ex:p ex:b , \"lit\"@en .\n";
    let (status, _, body) = send(&app, post("/data", "text/turtle", ttl)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(json(&body), json!({ "added": 2, "triples": before + 2 }));

    let (status, ctype, exported) = send(&app, get("/export")).await;
    assert_eq!(status, StatusCode::OK);
    assert!(ctype.starts_with("text/turtle"));
    assert!(exported.contains("@prefix ex: <http://example.org/> ."));
    let reparsed = oak_core::rdf::parse_turtle(&exported, None).unwrap();
    assert_eq!(reparsed.len(), before + 2);

    let (status, _, body) = send(&app, post("/data", "text/turtle", "<http://x/a> <http://x/p> .")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(json(&body)["error"], "SyntaxError");
}

#[tokio::test]
async fn stats_models_and_browse() {
    let app = loaded();
    let (_, _, body) = send(&app, get("/stats")).await;
    let v = json(&body);
    assert_eq!(v["class_count"], 70);
    assert!(v["triples"].as_u64().unwrap() > 0);

    let (_, _, body) = send(&app, get("/models")).await;
    let v = json(&body);
    assert_eq!(v["regression"].as_array().unwrap().len(), 3);
    assert_eq!(v["classification"], json!(["http://www.ucd.ie/consus/AgriKMap#Classifier_016"]));
    assert_eq!(v["clustering"].as_array().unwrap().len(), 1);
    assert_eq!(v["association_rule"], json!([]));

    let iri = encode("http://www.ucd.ie/consus/AgriKMap#Soil_000");
    let (status, _, body) = send(&app, get(&format!("/browse/{iri}"))).await;
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    assert_eq!(v["subject_of"][0]["predicate"]["value"], "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    assert_eq!(v["object_of"][0]["subject"]["value"], "http://www.ucd.ie/consus/AgriKMap#Regressor_004");

    let (status, _, body) = send(&app, get(&format!("/browse/{}", encode("http://nowhere/x")))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(json(&body)["subject_of"], json!([]));

    let (status, _, body) = send(&app, get("/browse/not%20an%20iri")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(json(&body)["error"], "InvalidIri");
}

#[tokio::test]
async fn framework_errors_are_json() {
    let (app, _) = app_with(ServerConfig { body_limit: 64, ..ServerConfig::default() });
    let (status, ctype, body) = send(&app, get("/nope")).await;
    assert_eq!((status, ctype.as_str()), (StatusCode::NOT_FOUND, "application/json"));
    assert_eq!(json(&body)["error"], "NotFound");

    let req = Request::builder().method(Method::DELETE).uri("/sparql").body(Body::empty()).unwrap();
    let (status, _, body) = send(&app, req).await;
    assert_eq!(status, StatusCode::METHOD_NOT_ALLOWED);
    assert_eq!(json(&body)["error"], "MethodNotAllowed");

    let (status, _, body) = send(&app, post("/data", "text/turtle", "#".repeat(1000))).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
    assert_eq!(json(&body)["error"], "PayloadTooLarge");
}
