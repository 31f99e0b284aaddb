//! JSON model files and Graphviz export.
//!
//! ```json
//! {"worlds":["w","x","y"],"R":[["w","x"]],"S":{"w":[["x","x"],["x","y"]]},
//!  "valuation":{"p":["w","x"],"q":["x","y"]}}
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{Frame, FrameError, Model, ModelError};

/// Files naming more worlds than this are rejected before any validation.
pub const MAX_WORLDS: usize = 1024;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("S is keyed by unknown world `{0}`")]
    UnknownSKey(String),
    #[error("{0} worlds exceed the limit of {MAX_WORLDS}")]
    TooLarge(usize),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    worlds: Vec<String>,
    #[serde(rename = "R", default)]
    r: Vec<(String, String)>,
    #[serde(rename = "S", default)]
    s: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valuation: Option<BTreeMap<String, Vec<String>>>,
}

fn frame_of(file: &ModelFile) -> Result<Frame, IoError> {
    if file.worlds.len() > MAX_WORLDS {
        return Err(IoError::TooLarge(file.worlds.len()));
    }
    let mut triples = Vec::new();
    for (w, pairs) in &file.s {
        if !file.worlds.contains(w) {
            return Err(IoError::UnknownSKey(w.clone()));
        }
        for (x, y) in pairs {
            triples.push((w.clone(), x.clone(), y.clone()));
        }
    }
    Ok(Frame::new(&file.worlds, &file.r, &triples)?)
}

/// Reads a frame; a `valuation` entry, if present, is ignored.
pub fn parse_frame(text: &str) -> Result<Frame, IoError> {
    let file: ModelFile = serde_json::from_str(text)?;
    frame_of(&file)
}

/// Reads a model; a missing `valuation` means every variable is false everywhere.
pub fn parse_model(text: &str) -> Result<Model, IoError> {
    let file: ModelFile = serde_json::from_str(text)?;
    let mut model = Model::new(frame_of(&file)?);
    for (var, worlds) in file.valuation.iter().flatten() {
        model = model.with_named(var, worlds)?;
    }
    Ok(model)
}

fn file_of(frame: &Frame) -> ModelFile {
    let name = |i: usize| frame.name(i).to_string();
    let mut s = BTreeMap::new();
    for w in 0..frame.len() {
        let pairs = frame.s_pairs(w);
        if !pairs.is_empty() {
            s.insert(name(w), pairs.into_iter().map(|(x, y)| (name(x), name(y))).collect());
        }
    }
    ModelFile {
        worlds: frame.names().to_vec(),
        r: frame.r_pairs().into_iter().map(|(a, b)| (name(a), name(b))).collect(),
        s,
        valuation: None,
    }
}

pub fn frame_to_json(frame: &Frame) -> String {
    serde_json::to_string(&file_of(frame)).expect("model files serialize")
}

pub fn model_to_json(model: &Model) -> String {
    let mut file = file_of(&model.frame);
    let val = model
        .valuation()
        .iter()
        .map(|(v, set)| {
            (
                v.to_string(),
                set.ones().map(|w| model.frame.name(w).to_string()).collect(),
            )
        })
        .collect();
    file.valuation = Some(val);
    serde_json::to_string(&file).expect("model files serialize")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz: R as solid arrows, each `x S_w y` as a dashed arrow labelled `w`.
/// Worlds are labelled with the variables true there.
pub fn to_dot(model: &Model) -> String {
    let frame = &model.frame;
    let mut out = String::from("digraph model {\n  node [shape=circle];\n");
    for w in 0..frame.len() {
        let vars: Vec<&str> = model
            .valuation()
            .iter()
            .filter(|(_, set)| set.contains(w))
            .map(|(v, _)| &**v)
            .collect();
        let label = if vars.is_empty() {
            frame.name(w).to_string()
        } else {
            format!("{}\\n{}", frame.name(w), vars.join(","))
        };
        let _ = writeln!(out, "  {} [label={}];", quote(frame.name(w)), quote(&label));
    }
    for (a, b) in frame.r_pairs() {
        let _ = writeln!(out, "  {} -> {};", quote(frame.name(a)), quote(frame.name(b)));
    }
    for (w, x, y) in frame.s_triples() {
        let _ = writeln!(
            out,
            "  {} -> {} [style=dashed, label={}];",
            quote(frame.name(x)),
            quote(frame.name(y)),
            quote(frame.name(w))
        );
    }
    out.push_str("}\n");
    out
}
