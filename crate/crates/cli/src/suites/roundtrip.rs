//! Workspace persistence: canonical documents survive save and load
//! unchanged, the shipped fixtures match the library constructors, bad
//! input is rejected with a located or named error, and reports are
//! reproducible.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::workspace::{Workspace, WorkspaceError, DOCUMENTS};

use super::{holds, same, Runner};

fn documents_on_disk(dir: &Path) -> std::io::Result<BTreeMap<String, String>> {
    DOCUMENTS.iter().map(|d| Ok((d.to_string(), fs::read_to_string(dir.join(format!("{d}.json")))?))).collect()
}

fn owned(docs: BTreeMap<&'static str, String>) -> BTreeMap<String, String> {
    docs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn err<E: std::fmt::Display>(e: E) -> relchar_core::RelError {
    relchar_core::RelError::Precondition(e.to_string())
}

pub fn run(seed: u64) -> super::Report {
    let mut r = Runner::new("cli-roundtrip");
    let builtin = Workspace::builtin();
    let builtin_docs = owned(builtin.documents());

    for doc in DOCUMENTS {
        let builtin = &builtin;
        r.case(format!("builtin/save-load-save/{doc}"), move || {
            let first = tempfile::tempdir().map_err(err)?;
            let second = tempfile::tempdir().map_err(err)?;
            builtin.save(first.path()).map_err(err)?;
            Workspace::load(first.path()).map_err(err)?.save(second.path()).map_err(err)?;
            let read = |d: &Path| fs::read(d.join(format!("{doc}.json"))).map_err(err);
            Ok(holds(read(first.path())? == read(second.path())?, "byte identity"))
        });
    }

    let shipped = Workspace::fixtures_dir();
    for doc in DOCUMENTS {
        let (shipped, builtin_docs) = (&shipped, &builtin_docs);
        r.case(format!("fixtures/load-save/{doc}"), move || {
            let on_disk = documents_on_disk(shipped).map_err(err)?;
            let reloaded = owned(Workspace::load(shipped).map_err(err)?.documents());
            Ok(same(&reloaded[doc], &on_disk[doc]))
        });
        r.case(format!("fixtures/match-builtin/{doc}"), move || {
            let on_disk = documents_on_disk(shipped).map_err(err)?;
            Ok(same(&on_disk[doc], &builtin_docs[doc]))
        });
    }

    r.case("fixtures/characters-agree-after-reload", || {
        let reloaded = Workspace::from_documents(&parsed(&builtin_docs)).map_err(err)?;
        for (name, e) in &builtin.characters {
            let other = reloaded.character(name).map_err(err)?;
            if !other.equals(&e.character)? || other.space().describe() != e.character.space().describe() {
                return Ok((format!("{name} changed"), "unchanged".into()));
            }
        }
        Ok(same(reloaded.characters.len(), builtin.characters.len()))
    });

    r.case("empty/documents", || {
        let docs = Workspace::new().documents();
        Ok(holds(docs.len() == DOCUMENTS.len() && docs.values().all(|d| d == "{}\n"), "empty documents"))
    });
    r.case("empty/load-missing-directory", || {
        let dir = tempfile::tempdir().map_err(err)?;
        let ws = Workspace::load(&dir.path().join("absent")).map_err(err)?;
        Ok(holds(ws.documents().values().all(|d| d == "{}\n"), "missing documents read as empty"))
    });

    r.case("invalid/parse-error-location", || {
        let dir = tempfile::tempdir().map_err(err)?;
        fs::write(dir.path().join("spaces.json"), "{\n  \"PT\": {\n    \"simplices\": [[\"v0\"]],,\n").map_err(err)?;
        Ok(match Workspace::load(dir.path()) {
            Err(WorkspaceError::Parse { line, column, .. }) => same(format!("{line}:{column}"), "3:27".to_string()),
            other => (format!("{:?}", other.map(|_| ())), "parse error".into()),
        })
    });
    r.case("invalid/simplicial-identity", || {
        let mut docs = parsed(&builtin_docs);
        let bad = serde_json::json!({
            "simplices": [["v0", "v1"], ["e"], ["t"]],
            "faces": { "e": ["v1", "v0"], "t": ["e", "e", "e"] }
        });
        docs.get_mut("spaces").expect("spaces").insert("BAD".into(), bad);
        Ok(match Workspace::from_documents(&docs) {
            Err(e) => holds(e.to_string().contains("simplicial identity"), "names the violated identity"),
            Ok(_) => ("accepted".into(), "rejected".into()),
        })
    });
    r.case("invalid/map-not-simplicial", || {
        let mut docs = parsed(&builtin_docs);
        let maps = docs.get_mut("maps").expect("maps");
        let deg2 = maps.get_mut("DEG2").and_then(Value::as_object_mut).expect("DEG2");
        let images = deg2.get_mut("images").and_then(Value::as_object_mut).expect("images");
        let (label, _) = images.iter().find(|(_, v)| v.as_str().is_some_and(|s| s.starts_with('e'))).map(|(k, v)| (k.clone(), v.clone())).expect("an edge");
        images.insert(label, Value::String("v0".into()));
        Ok(match Workspace::from_documents(&docs) {
            Err(e) => holds(e.to_string().contains("DEG2"), "names the offending map"),
            Ok(_) => ("accepted".into(), "rejected".into()),
        })
    });

    r.case("verify/reproducible", || {
        let a = super::run("homology-golden", seed).expect("known suite").render();
        let b = super::run("homology-golden", seed).expect("known suite").render();
        Ok(holds(a == b, "identical reports"))
    });
    r.finish()
}

fn parsed(docs: &BTreeMap<String, String>) -> BTreeMap<&'static str, Map<String, Value>> {
    DOCUMENTS
        .iter()
        .map(|d| {
            let v: Value = serde_json::from_str(&docs[*d]).expect("canonical documents parse");
            (*d, v.as_object().cloned().expect("object document"))
        })
        .collect()
}
