//! Serialized forms of games, plays and strategy profiles.
//!
//! These mirror the wire format one-to-one; semantic validation happens in
//! [`super::validate`]. Only rational *strings* are accepted for
//! probabilities so no value ever passes through a float.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGame {
    pub players: i64,
    pub nodes: Vec<RawNode>,
    pub root: String,
    #[serde(default)]
    pub info_sets: Vec<RawInfoSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawNode {
    pub id: String,
    pub owner: String,
    #[serde(default)]
    pub actions: Vec<RawAction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probs: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAction {
    pub name: String,
    pub child: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInfoSet {
    pub owner: String,
    pub id: String,
    pub nodes: Vec<String>,
}

/// A play given either by its final node or by the action sequence from the
/// root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawPlay {
    Leaf { leaf: String },
    Actions { actions: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawStrategy {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub player: Option<u32>,
    /// `"C"` or `"Cbar"` for the two sides of an induced game.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    pub choices: Vec<RawChoice>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawChoice {
    pub info_set: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<BTreeMap<String, String>>,
    /// Shorthand for a Dirac distribution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
}

pub type RawProfile = Vec<RawStrategy>;
