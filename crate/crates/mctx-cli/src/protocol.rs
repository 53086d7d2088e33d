//! The protocol file format (`"schema": "mctx/1"`) and the composition
//! pipeline behind the `check`, `compose` and `eval` subcommands.
//!
//! A protocol file declares atom carriers, optional aliases and state
//! labels, named morphisms, the parties with their session strings and step
//! lists, and one channel spec per stage. Deterministic steps may be given
//! as plain tables even in a stochastic protocol; they are lifted on load.

use mctx::codec::{self, Signature};
use mctx::error::Error;
use mctx::handshake;
use mctx::object::ObjectList;
use mctx::rational::{parse_ratio, Rational};
use mctx::session::{self, Party, SessionType};
use mctx::theory::{FinStochMorphism, Morphism, TheoryKind};
use mctx::lens::Lens;
use serde_json::Value;
use std::collections::BTreeMap;

pub const SCHEMA: &str = "mctx/1";

#[derive(Clone, Debug)]
pub enum ChannelSpec {
    Identity,
    /// Zero the message with the noise probability, pass it otherwise.
    Noise,
    Named(String),
}

#[derive(Clone, Debug)]
pub struct ProtocolFile {
    pub kind: TheoryKind,
    pub signature: Signature,
    pub labels: BTreeMap<String, Vec<String>>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub parties: Vec<Party>,
    pub channels: Vec<ChannelSpec>,
    pub noise: Rational,
}

type Result<T> = std::result::Result<T, Error>;

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value> {
    v.get(name).ok_or_else(|| Error::Protocol(format!("missing `{name}`")))
}

impl ProtocolFile {
    pub fn parse(text: &str) -> Result<ProtocolFile> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Protocol(format!("invalid JSON: {e}")))?;
        let schema = field(&v, "schema")?.as_str().unwrap_or_default();
        if schema != SCHEMA {
            return Err(Error::Protocol(format!("unsupported schema `{schema}`, expected `{SCHEMA}`")));
        }
        let kind = match field(&v, "theory")?.as_str().unwrap_or_default() {
            "finfn" => TheoryKind::FinFn,
            "finstoch" => TheoryKind::FinStoch,
            other => return Err(Error::Protocol(format!("unknown theory `{other}`"))),
        };
        let signature = Signature::from_json(&v)?;
        let mut labels = BTreeMap::new();
        if let Some(map) = v.get("labels").and_then(Value::as_object) {
            for (atom, names) in map {
                let names: Vec<String> = names
                    .as_array()
                    .and_then(|a| a.iter().map(|x| x.as_str().map(String::from)).collect())
                    .ok_or_else(|| Error::Protocol(format!("labels for `{atom}` must be strings")))?;
                let carrier = *signature
                    .carriers
                    .get(atom)
                    .ok_or_else(|| Error::Protocol(format!("labels for unknown atom `{atom}`")))?;
                if names.len() != carrier {
                    return Err(Error::Protocol(format!(
                        "atom `{atom}` has carrier {carrier} but {} labels",
                        names.len()
                    )));
                }
                labels.insert(atom.clone(), names);
            }
        }

        let mut morphisms = BTreeMap::new();
        if let Some(map) = v.get("morphisms").and_then(Value::as_object) {
            let lift = |m: Morphism| -> Result<Morphism> {
                let m = match (kind, &m) {
                    // deterministic tables lift into a stochastic protocol
                    (TheoryKind::FinStoch, Morphism::FinFn(f)) => {
                        Morphism::FinStoch(FinStochMorphism::from_table(f))
                    }
                    _ => m,
                };
                if m.kind() != kind {
                    return Err(Error::TheoryMismatch(kind.name(), m.kind().name()));
                }
                Ok(m)
            };
            // concrete morphisms first; they interpret the free terms
            let is_term = |body: &Value| body.get("kind").and_then(Value::as_str) == Some("term");
            let generators = BTreeMap::new();
            for (name, body) in map.iter().filter(|(_, b)| !is_term(b)) {
                let m = codec::morphism_from_json(&signature, &generators, body)?;
                morphisms.insert(name.clone(), lift(m)?);
            }
            if map.values().any(is_term) {
                let boundaries: BTreeMap<String, (mctx::ObjectList, mctx::ObjectList)> = morphisms
                    .iter()
                    .map(|(n, m)| (n.clone(), (m.dom(), m.cod())))
                    .collect();
                let mut interp = mctx::theory::Interpretation::new();
                for (n, m) in &morphisms {
                    interp = interp.with(n.clone(), m.clone());
                }
                for (name, body) in map.iter().filter(|(_, b)| is_term(b)) {
                    let m = codec::morphism_from_json(&signature, &boundaries, body)?;
                    let term = match &m {
                        Morphism::Free { term, .. } => term,
                        _ => unreachable!("kind `term` decodes to a free morphism"),
                    };
                    let evaluated = mctx::theory::eval_term(term, &interp)?;
                    morphisms.insert(name.clone(), lift(evaluated)?);
                }
            }
        }

        let mut parties = Vec::new();
        for p in field(&v, "parties")?.as_array().into_iter().flatten() {
            let name = field(p, "name")?.as_str().unwrap_or_default().to_string();
            let state_in = codec::object_from_json(&signature, field(p, "state_in")?)?;
            let state_out = codec::object_from_json(&signature, field(p, "state_out")?)?;
            let session_src = field(p, "session")?
                .as_str()
                .ok_or_else(|| Error::Protocol("`session` must be a string".into()))?;
            let session = SessionType::parse(session_src, |n| signature.resolve_name(n).ok())?;
            let steps = field(p, "steps")?
                .as_array()
                .ok_or_else(|| Error::Protocol("`steps` must be a list of morphism names".into()))?
                .iter()
                .map(|s| {
                    let step_name = s
                        .as_str()
                        .ok_or_else(|| Error::Protocol("step names must be strings".into()))?;
                    morphisms
                        .get(step_name)
                        .cloned()
                        .ok_or_else(|| Error::Protocol(format!("party `{name}` references unknown morphism `{step_name}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            parties.push(Party { name, state_in, state_out, session, steps });
        }

        let channels = match v.get("channels").and_then(Value::as_array) {
            Some(list) => list
                .iter()
                .map(|c| match c.as_str() {
                    Some("identity") => Ok(ChannelSpec::Identity),
                    Some("noise") => Ok(ChannelSpec::Noise),
                    Some(name) => Ok(ChannelSpec::Named(name.to_string())),
                    None => Err(Error::Protocol("channel entries must be strings".into())),
                })
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };

        let noise = match v.get("noise") {
            Some(n) => n
                .as_str()
                .and_then(parse_ratio)
                .ok_or_else(|| Error::Protocol("`noise` must be a `p/q` string".into()))?,
            None => Rational::from_integer(0.into()),
        };
        if noise < Rational::from_integer(0.into()) || noise > Rational::from_integer(1.into()) {
            return Err(Error::Protocol("noise must lie in [0, 1]".into()));
        }

        Ok(ProtocolFile { kind, signature, labels, morphisms, parties, channels, noise })
    }

    /// Type-checks every party; collects interleaving warnings.
    pub fn check(&self) -> Result<(Vec<Lens>, Vec<String>)> {
        if self.parties.is_empty() {
            return Err(Error::Protocol("no parties declared".into()));
        }
        let mut lenses = Vec::new();
        for p in &self.parties {
            lenses.push(session::type_check(p)?);
        }
        let mut warnings = Vec::new();
        if self.parties.len() > 1 {
            let (_, w) = self.combined_lens()?;
            warnings = w;
        }
        Ok((lenses, warnings))
    }

    /// Interleaves all parties left to right into one staged lens.
    pub fn combined_lens(&self) -> Result<(Lens, Vec<String>)> {
        if self.parties.is_empty() {
            return Err(Error::Protocol("no parties declared".into()));
        }
        let mut lens = session::type_check(&self.parties[0])?;
        let mut session_so_far = self.parties[0].session.clone();
        let mut warnings = Vec::new();
        for p in &self.parties[1..] {
            let next = session::type_check(p)?;
            let (combined, w) = session::interleave(&lens, &session_so_far, &next, &p.session)?;
            warnings.extend(w.into_iter().map(|w| format!("{} ⊗ {}: {w}", "joint", p.name)));
            // the joint session tensors the stages of both parties
            session_so_far = join_sessions(&session_so_far, &p.session)?;
            lens = combined;
        }
        Ok((lens, warnings))
    }

    /// The channel morphism for one stage of the combined lens.
    fn channel_for(&self, spec: &ChannelSpec, hole: &(ObjectList, ObjectList), noise: &Rational) -> Result<Morphism> {
        match spec {
            ChannelSpec::Identity => Ok(Morphism::identity_in(self.kind, &hole.0)),
            ChannelSpec::Noise => {
                if self.kind != TheoryKind::FinStoch {
                    return Err(Error::Protocol("noise channels need the finstoch theory".into()));
                }
                if hole.0 != hole.1 {
                    return Err(Error::Protocol(format!(
                        "noise channel needs a matching hole, found {} -> {}",
                        hole.0, hole.1
                    )));
                }
                handshake::noise_channel_over(&hole.0, noise)
            }
            ChannelSpec::Named(name) => self
                .morphisms
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Protocol(format!("unknown channel morphism `{name}`"))),
        }
    }

    /// Runs the full pipeline: interleave everything and close every stage
    /// with its channel. `noise` overrides the file's noise parameter.
    pub fn compose(&self, noise: Option<&Rational>) -> Result<(Morphism, Vec<String>)> {
        let (combined, warnings) = self.combined_lens()?;
        let noise = noise.unwrap_or(&self.noise);
        if self.channels.len() != combined.stages() {
            return Err(Error::StageCount(combined.stages(), self.channels.len()));
        }
        let channels = self
            .channels
            .iter()
            .zip(combined.holes())
            .map(|(spec, hole)| self.channel_for(spec, hole, noise))
            .collect::<Result<Vec<_>>>()?;
        let closed = session::fill_channels(&combined, &channels)?;
        Ok((closed, warnings))
    }

    /// Parses `--initial "client=0,server=0"` into a joint state index.
    pub fn initial_index(&self, spec: Option<&str>) -> Result<usize> {
        let mut values: BTreeMap<&str, usize> = BTreeMap::new();
        if let Some(spec) = spec {
            for part in spec.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let (name, value) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Protocol(format!("bad initial entry `{part}`")))?;
                let value = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Protocol(format!("bad initial value in `{part}`")))?;
                values.insert(name.trim(), value);
            }
        }
        let mut index = 0usize;
        for p in &self.parties {
            let carrier = p.state_in.carrier();
            let value = values.remove(p.name.as_str()).unwrap_or(0);
            if value >= carrier {
                return Err(Error::Protocol(format!(
                    "initial state {value} out of range for `{}` (carrier {carrier})",
                    p.name
                )));
            }
            index = index * carrier + value;
        }
        if let Some((name, _)) = values.into_iter().next() {
            return Err(Error::Protocol(format!("initial state for unknown party `{name}`")));
        }
        Ok(index)
    }

    /// Renders a joint outcome state as `party=LABEL` pairs.
    pub fn state_label(&self, index: usize) -> String {
        let joint = {
            let mut obj = ObjectList::unit();
            for p in &self.parties {
                obj = obj.tensor(&p.state_out);
            }
            obj
        };
        let digits = joint.decode(index);
        let mut out = Vec::new();
        let mut k = 0;
        for p in &self.parties {
            let mut parts = Vec::new();
            for atom in &p.state_out.0 {
                let d = digits[k];
                k += 1;
                match self.labels.get(&atom.name) {
                    Some(names) => parts.push(names[d].clone()),
                    None => parts.push(format!("{}", d)),
                }
            }
            out.push(format!("{}={}", p.name, parts.join("·")));
        }
        out.join(" ")
    }
}

/// Stage-wise tensor of session types, mirroring the lens interleaving.
fn join_sessions(a: &SessionType, b: &SessionType) -> Result<SessionType> {
    if a.len() != b.len() {
        return Err(Error::StageCount(a.len(), b.len()));
    }
    let stages = a
        .stages
        .iter()
        .zip(&b.stages)
        .map(|(x, y)| x.iter().chain(y).cloned().collect())
        .collect();
    SessionType::new(stages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mctx::rational::{format_ratio, ratio};
    use mctx::session::{outcome_distribution, Initial};

    fn minimal() -> String {
        r#"{
            "schema": "mctx/1",
            "theory": "finfn",
            "objects": {"B": 2},
            "morphisms": {
                "open": {"dom": ["B"], "cod": ["B", "B"], "kind": "finfn", "table": [0, 3]},
                "close": {"dom": ["B", "B"], "cod": ["B"], "kind": "finfn", "table": [0, 1, 1, 0]},
                "idb": {"dom": ["B"], "cod": ["B"], "kind": "finfn", "table": [0, 1]},
                "wire": {"dom": ["B"], "cod": ["B"], "kind": "finfn", "table": [1, 0]}
            },
            "parties": [
                {
                    "name": "pitcher",
                    "state_in": ["B"], "state_out": ["B"],
                    "session": "!B < ?B",
                    "steps": ["open", "idb", "close"]
                },
                {
                    "name": "catcher",
                    "state_in": ["B"], "state_out": ["B"],
                    "session": "?B < !B",
                    "steps": ["idb", "close", "idb"]
                }
            ],
            "channels": ["wire", "wire"]
        }"#
        .to_string()
    }

    #[test]
    fn minimal_file_checks_and_composes() {
        // the catcher answers through close2 : B ⊗ B → B ⊗ B
        let text = minimal().replace(
            r#""steps": ["idb", "close", "idb"]"#,
            r#""steps": ["idb", "close2", "idb"]"#,
        );
        let text = text.replace(
            r#""wire": {"dom": ["B"], "cod": ["B"], "kind": "finfn", "table": [1, 0]}"#,
            r#""wire": {"dom": ["B"], "cod": ["B"], "kind": "finfn", "table": [1, 0]},
               "close2": {"dom": ["B", "B"], "cod": ["B", "B"], "kind": "finfn", "table": [0, 1, 3, 2]}"#,
        );
        let file = ProtocolFile::parse(&text).unwrap();
        let (lenses, _warnings) = file.check().unwrap();
        assert_eq!(lenses.len(), 2);
        let (closed, _) = file.compose(None).unwrap();
        assert_eq!(closed.dom().carrier(), 4);
    }

    #[test]
    fn term_morphisms_evaluate_through_named_generators() {
        let text = r#"{
            "schema": "mctx/1",
            "theory": "finfn",
            "objects": {"B": 2},
            "morphisms": {
                "not": {"dom": ["B"], "cod": ["B"], "kind": "finfn", "table": [1, 0]},
                "same": {"dom": ["B"], "cod": ["B"], "kind": "term",
                         "term": {"compose": [{"gen": "not"}, {"gen": "not"}]}}
            },
            "parties": [
                {"name": "p", "state_in": ["B"], "state_out": ["B"],
                 "session": "!I", "steps": ["same", "same"]}
            ],
            "channels": ["identity"]
        }"#;
        let file = ProtocolFile::parse(text).unwrap();
        let double_negation = file.morphisms.get("same").unwrap();
        let id = Morphism::identity_in(TheoryKind::FinFn, &file.signature.resolve(&["B"]).unwrap());
        assert!(double_negation.equal(&id).unwrap());
        file.check().unwrap();
    }

    #[test]
    fn empty_party_list_is_an_error() {
        let text = r#"{"schema": "mctx/1", "theory": "finfn", "objects": {}, "parties": []}"#;
        let file = ProtocolFile::parse(text).unwrap();
        match file.check() {
            Err(Error::Protocol(msg)) => assert!(msg.contains("no parties")),
            other => panic!("expected a no-parties error, got {other:?}"),
        }
    }

    #[test]
    fn bad_schema_is_rejected() {
        let text = r#"{"schema": "mctx/2", "theory": "finfn", "objects": {}, "parties": []}"#;
        assert!(ProtocolFile::parse(text).is_err());
    }

    #[test]
    fn handshake_file_matches_the_library_encoding() {
        let text = super::super::corpus::tcp_json();
        let file = ProtocolFile::parse(&text).unwrap();
        assert_eq!(file.kind, TheoryKind::FinStoch);
        assert_eq!(format_ratio(&file.noise), "1/10");
        file.check().unwrap();
        // noiseless run reaches the success state with certainty
        let (closed, _) = file.compose(Some(&ratio(0, 1))).unwrap();
        let initial = file.initial_index(Some("client=0,server=0")).unwrap();
        let out = outcome_distribution(&closed, &Initial::Point(initial)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, handshake::success_index());
        assert_eq!(file.state_label(out[0].0), "client=CLI:11 server=SRV:21");
        // the default file noise gives the cubed pass-through probability
        let (closed, _) = file.compose(None).unwrap();
        let out = outcome_distribution(&closed, &Initial::Point(initial)).unwrap();
        let success = out.iter().find(|(i, _)| *i == handshake::success_index()).unwrap();
        assert_eq!(format_ratio(&success.1), "729/1000");
    }
}
