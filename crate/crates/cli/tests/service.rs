use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use tower::ServiceExt;

use polychora_cli::commands::{self, Source};
use polychora_cli::service::{router, StepResponse};
use polychora_core::game::default_eat_radius;
use polychora_core::io::event_log_string;
use polychora_core::polytope::PolytopeName;
use polychora_core::quat::UnitQuaternion;

async fn call(app: &Router, method: Method, uri: &str, body: Option<serde_json::Value>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(v) => req
            .header("content-type", "application/json")
            .body(Body::from(v.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes)
}

async fn new_game(app: &Router, polytope: &str) -> String {
    let (status, body) = call(app, Method::POST, "/games", Some(serde_json::json!({ "polytope": polytope }))).await;
    assert_eq!(status, StatusCode::CREATED);
    let v: serde_json::Value = serde_json::from_slice(&body).unwrap();
    v["id"].as_str().unwrap().to_string()
}

async fn step(app: &Router, id: &str, t: f64, q: [f64; 4]) -> (StatusCode, Vec<u8>) {
    call(
        app,
        Method::POST,
        &format!("/games/{id}/step"),
        Some(serde_json::json!({ "t": t, "q": q })),
    )
    .await
}

#[tokio::test]
async fn lists_polytopes() {
    let app = router();
    let (status, body) = call(&app, Method::GET, "/polytopes", None).await;
    assert_eq!(status, StatusCode::OK);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&body).unwrap();
    let names: Vec<&str> = v.iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["5-cell", "8-cell", "16-cell", "24-cell", "120-cell", "600-cell"]);
    let cells: Vec<u64> = v.iter().map(|p| p["cells"].as_u64().unwrap()).collect();
    assert_eq!(cells, [5, 8, 16, 24, 120, 600]);
}

#[tokio::test]
async fn geometry_is_stable() {
    let app = router();
    let (s1, a) = call(&app, Method::GET, "/polytope/8-cell?subdiv=1", None).await;
    let (s2, b) = call(&app, Method::GET, "/polytope/8-cell?subdiv=1", None).await;
    assert_eq!((s1, s2), (StatusCode::OK, StatusCode::OK));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["triangles"].as_array().unwrap().len(), 24 * 4 * 2 * 4);
    assert_eq!(v["colors"].as_array().unwrap().len(), v["cellIds"].as_array().unwrap().len());
    let (status, _) = call(&app, Method::GET, "/polytope/7-cell", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, Method::GET, "/polytope/5-cell?subdiv=9", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn step_validation() {
    let app = router();
    let id = new_game(&app, "24-cell").await;
    let (status, body) = step(&app, &id, 0.1, [1.0, 0.0, 0.0, 0.0]).await;
    assert_eq!(status, StatusCode::OK);
    let r: StepResponse = serde_json::from_slice(&body).unwrap();
    assert!(r.eaten.is_empty());
    assert_eq!(step(&app, &id, 0.2, [0.0; 4]).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(step(&app, &id, 0.2, [3.0, 0.0, 0.0, 0.0]).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(step(&app, &id, 0.05, [1.0, 0.0, 0.0, 0.0]).await.0, StatusCode::CONFLICT);
    let (status, _) = call(
        &app,
        Method::POST,
        &format!("/games/{id}/step"),
        Some(serde_json::json!({ "t": 1.0 })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(step(&app, "nope", 1.0, [1.0, 0.0, 0.0, 0.0]).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn game_creation_errors() {
    let app = router();
    let (status, _) = call(&app, Method::POST, "/games", Some(serde_json::json!({ "polytope": "7-cell" }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(
        &app,
        Method::POST,
        "/games",
        Some(serde_json::json!({ "polytope": "8-cell", "eatRadius": 7.0 })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, Method::POST, "/games", Some(serde_json::json!([1, 2]))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn spin720_returns_home() {
    let app = router();
    let id = new_game(&app, "8-cell").await;
    let plan = commands::plan(PolytopeName::Cell8, &Source::Spin720, 0.5, Default::default()).unwrap();
    let mut last = None;
    for s in &plan.samples {
        let (status, body) = step(&app, &id, s.t, s.q.to_f64_array()).await;
        assert_eq!(status, StatusCode::OK);
        last = Some(serde_json::from_slice::<StepResponse>(&body).unwrap());
    }
    let player = UnitQuaternion::<f64>::from_wire(last.unwrap().player).unwrap();
    assert!(player.geodesic_distance(&UnitQuaternion::identity()) < 1e-6);
}

#[tokio::test]
async fn http_replay_matches_simulation() {
    let app = router();
    let name = PolytopeName::Cell24;
    let id = new_game(&app, name.as_str()).await;
    let plan = commands::plan(name, &Source::NnTour, default_eat_radius(name), Default::default()).unwrap();
    let mut won = false;
    for s in &plan.samples {
        let (_, body) = step(&app, &id, s.t, s.q.to_f64_array()).await;
        won = serde_json::from_slice::<StepResponse>(&body).unwrap().won;
    }
    assert!(won);
    let (status, log) = call(&app, Method::GET, &format!("/games/{id}/log"), None).await;
    assert_eq!(status, StatusCode::OK);
    let local = commands::simulate(name, None, &plan.samples).unwrap();
    assert_eq!(String::from_utf8(log).unwrap(), event_log_string(&local.events));

    assert_eq!(call(&app, Method::DELETE, &format!("/games/{id}"), None).await.0, StatusCode::NO_CONTENT);
    assert_eq!(call(&app, Method::GET, &format!("/games/{id}/log"), None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, Method::DELETE, &format!("/games/{id}"), None).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn concurrent_steps_are_serialized() {
    let app = router();
    let id = new_game(&app, "16-cell").await;
    let mut handles = Vec::new();
    for k in 0..32 {
        let (app, id) = (app.clone(), id.clone());
        handles.push(tokio::spawn(async move {
            step(&app, &id, 1.0 + k as f64, [1.0, 0.0, 0.0, 0.0]).await.0
        }));
    }
    let mut ok = 0;
    for h in handles {
        let s = h.await.unwrap();
        assert!(s == StatusCode::OK || s == StatusCode::CONFLICT);
        ok += (s == StatusCode::OK) as usize;
    }
    assert!(ok >= 1);
}
