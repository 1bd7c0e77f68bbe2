use serde::{Deserialize, Serialize};

use crate::sigma::{Morphism, Structure};
use crate::universal::{ChainDiagram, PushoutResult};

use super::{digest, parse_json, render_document, to_document, IoError, StructureDocument, TEntry};

pub const BUNDLE_FORMAT: &str = "suralg/bundle/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleMember {
    pub digest: String,
    pub document: StructureDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub from: String,
    pub to: String,
    pub pairs: Vec<(String, String)>,
}

/// Related structures stored once each and referred to by content digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub format: String,
    pub kind: String,
    pub members: Vec<BundleMember>,
    /// Digests in diagram order.
    pub objects: Vec<String>,
    pub maps: Vec<MapDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub glue: Vec<TEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitive: Option<bool>,
}

fn member(s: &Structure) -> BundleMember {
    let document = to_document(s);
    BundleMember {
        digest: digest(&render_document(&document)),
        document,
    }
}

fn map_document(h: &Morphism, from: &str, to: &str) -> MapDocument {
    let mut pairs = h.label_pairs();
    pairs.sort();
    MapDocument {
        from: from.to_string(),
        to: to.to_string(),
        pairs,
    }
}

fn assemble(structures: &[&Structure]) -> (Vec<BundleMember>, Vec<String>) {
    let all: Vec<BundleMember> = structures.iter().map(|s| member(s)).collect();
    let objects = all.iter().map(|m| m.digest.clone()).collect();
    let mut members = all;
    members.sort_by(|a, b| a.digest.cmp(&b.digest));
    members.dedup_by(|a, b| a.digest == b.digest);
    (members, objects)
}

pub fn pushout_bundle(p: &PushoutResult) -> Bundle {
    let base = p.i0.source();
    let (members, objects) = assemble(&[base, &p.structure]);
    let glue = p
        .glue
        .iter()
        .map(|(x, cut)| {
            let mut left = base.labels_of(&cut.left);
            let mut right = base.labels_of(&cut.right);
            left.sort();
            right.sort();
            TEntry {
                left,
                right,
                value: base.label(*x),
            }
        })
        .collect();
    Bundle {
        format: BUNDLE_FORMAT.to_string(),
        kind: "pushout".to_string(),
        maps: vec![map_document(&p.i0, &objects[0], &objects[1])],
        members,
        objects,
        glue,
        transitive: Some(p.transitive),
    }
}

pub fn chain_bundle(d: &ChainDiagram) -> Bundle {
    let structures: Vec<&Structure> = d.objects().iter().map(|s| s.as_ref()).collect();
    let (members, objects) = assemble(&structures);
    let maps = d
        .connectors()
        .iter()
        .enumerate()
        .map(|(k, h)| map_document(h, &objects[k], &objects[k + 1]))
        .collect();
    Bundle {
        format: BUNDLE_FORMAT.to_string(),
        kind: "chain".to_string(),
        members,
        objects,
        maps,
        glue: Vec::new(),
        transitive: None,
    }
}

impl Bundle {
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("bundles serialize");
        text.push('\n');
        text
    }

    /// Parses a bundle and checks every digest against its member document.
    pub fn parse(text: &str) -> Result<Bundle, IoError> {
        let bundle: Bundle = parse_json(text)?;
        if bundle.format != BUNDLE_FORMAT {
            return Err(IoError::Schema {
                pointer: "/format".into(),
                message: format!("expected {BUNDLE_FORMAT:?}"),
            });
        }
        for (i, m) in bundle.members.iter().enumerate() {
            if digest(&render_document(&m.document)) != m.digest {
                return Err(IoError::InvariantViolation {
                    invariant: "member digests match their documents".into(),
                    witness: format!("/members/{i}"),
                });
            }
        }
        let known = |d: &String| bundle.members.iter().any(|m| &m.digest == d);
        let refs = bundle
            .objects
            .iter()
            .enumerate()
            .map(|(i, d)| (format!("/objects/{i}"), d))
            .chain(bundle.maps.iter().enumerate().flat_map(|(i, m)| {
                [(format!("/maps/{i}/from"), &m.from), (format!("/maps/{i}/to"), &m.to)]
            }));
        for (pointer, d) in refs {
            if !known(d) {
                return Err(IoError::Schema {
                    pointer,
                    message: format!("no member has digest {d}"),
                });
            }
        }
        Ok(bundle)
    }

    pub fn member(&self, digest: &str) -> Option<&StructureDocument> {
        self.members
            .iter()
            .find(|m| m.digest == digest)
            .map(|m| &m.document)
    }
}
