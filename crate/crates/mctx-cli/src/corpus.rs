//! Builders for the shipped protocol files. The files under `corpus/` are
//! generated from these functions; a test keeps them in sync.

use mctx::codec::morphism_to_json;
use mctx::handshake;
use mctx::theory::TheoryKind;
use serde_json::{json, Value};

fn handshake_json(theory: &str, channels: Value, noise: Option<&str>) -> String {
    // steps are deterministic; ship tables and let the loader lift them
    let kind = TheoryKind::FinFn;
    let client = handshake::client_party(kind);
    let server = handshake::server_party(kind);
    let step_json = |m: &mctx::theory::Morphism| morphism_to_json(m);
    let mut morphisms = serde_json::Map::new();
    let client_steps = ["client_open", "client_wait", "client_ack", "client_close"];
    for (name, step) in client_steps.iter().zip(&client.steps) {
        morphisms.insert((*name).into(), step_json(step));
    }
    let server_steps = ["server_open", "server_synack", "server_wait", "server_recv"];
    for (name, step) in server_steps.iter().zip(&server.steps) {
        morphisms.insert((*name).into(), step_json(step));
    }
    let mut root = json!({
        "schema": "mctx/1",
        "theory": theory,
        "objects": {"Client": 3, "Server": 3, "Syn": 3, "Ack": 3},
        "aliases": {"Msg": ["Syn", "Ack"]},
        "labels": {
            "Client": handshake::client_labels(),
            "Server": handshake::server_labels()
        },
        "morphisms": Value::Object(morphisms),
        "parties": [
            {
                "name": "client",
                "state_in": ["Client"],
                "state_out": ["Client"],
                "session": "!Msg < ?Msg < !Msg",
                "steps": client_steps
            },
            {
                "name": "server",
                "state_in": ["Server"],
                "state_out": ["Server"],
                "session": "?Msg < !Msg < ?Msg",
                "steps": server_steps
            }
        ],
        "channels": channels
    });
    if let Some(noise) = noise {
        root.as_object_mut().unwrap().insert("noise".into(), noise.into());
    }
    serde_json::to_string_pretty(&root).expect("corpus serializes") + "\n"
}

/// The stochastic handshake with three noisy channels (default `p = 1/10`).
pub fn tcp_json() -> String {
    handshake_json("finstoch", json!(["noise", "noise", "noise"]), Some("1/10"))
}

/// The deterministic variant with identity channels.
pub fn tcp_finfn_json() -> String {
    handshake_json("finfn", json!(["identity", "identity", "identity"]), None)
}
