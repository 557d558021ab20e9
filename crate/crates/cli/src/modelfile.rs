//! The on-disk JSON model format.
//!
//! Integer ids only; tables are triples `[a, b, result]`.  The same model
//! always serializes to the same bytes (struct field order is fixed and the
//! writer is deterministic), so generated files can be compared bit-wise.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;
use twocat_core::kernel::{
    BuildError, ModelBuilder, ObjId, OneCellData, OneId, TwoCellData, TwoId,
};
use twocat_core::TwoCategoryModel;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SrcDst {
    pub src: u32,
    pub dst: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub schema_version: u32,
    pub name: String,
    pub objects: u32,
    pub one_cells: Vec<SrcDst>,
    pub id1: Vec<u32>,
    pub comp1: Vec<[u32; 3]>,
    pub two_cells: Vec<SrcDst>,
    pub id2: Vec<u32>,
    pub vcomp: Vec<[u32; 3]>,
    pub hcomp: Vec<[u32; 3]>,
    pub tensor_obj: Vec<[u32; 3]>,
    pub tensor1: Vec<[u32; 3]>,
    pub tensor2: Vec<[u32; 3]>,
    #[serde(default)]
    pub meta: serde_json::Value,
}

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("model file is structurally broken: {0}")]
    Build(String),
}

impl ModelFile {
    pub fn from_model(m: &TwoCategoryModel) -> Self {
        ModelFile {
            schema_version: SCHEMA_VERSION,
            name: m.name.clone(),
            objects: m.object_count(),
            one_cells: m
                .one_cells()
                .map(|f| {
                    let d = m.one_data(f);
                    SrcDst {
                        src: d.src.0,
                        dst: d.dst.0,
                    }
                })
                .collect(),
            id1: m.objects().map(|x| m.id1of(x).0).collect(),
            comp1: m.comp1_table().map(|(a, b, c)| [a.0, b.0, c.0]).collect(),
            two_cells: m
                .two_cells()
                .map(|c| {
                    let d = m.two_data(c);
                    SrcDst {
                        src: d.src.0,
                        dst: d.dst.0,
                    }
                })
                .collect(),
            id2: m.one_cells().map(|f| m.id2of(f).0).collect(),
            vcomp: m.vcomp_table().map(|(a, b, c)| [a.0, b.0, c.0]).collect(),
            hcomp: m.hcomp_table().map(|(a, b, c)| [a.0, b.0, c.0]).collect(),
            tensor_obj: m
                .objects()
                .flat_map(|x| m.objects().map(move |y| [x.0, y.0, m.tob(x, y).0]))
                .collect(),
            tensor1: m
                .one_cells()
                .flat_map(|f| m.one_cells().map(move |g| [f.0, g.0, m.t1(f, g).0]))
                .collect(),
            tensor2: m
                .two_cells()
                .flat_map(|a| m.two_cells().map(move |b| [a.0, b.0, m.t2(a, b).0]))
                .collect(),
            meta: serde_json::Value::Object(Default::default()),
        }
    }

    pub fn into_model(self) -> Result<TwoCategoryModel, ModelFileError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ModelFileError::SchemaVersion(self.schema_version));
        }
        let mut b = ModelBuilder::new(&self.name);
        b.objects = self.objects;
        b.one_cells = self
            .one_cells
            .iter()
            .map(|c| OneCellData {
                src: ObjId(c.src),
                dst: ObjId(c.dst),
            })
            .collect();
        b.id1 = self.id1.iter().map(|&f| OneId(f)).collect();
        b.comp1 = self
            .comp1
            .iter()
            .map(|&[a, x, c]| (OneId(a), OneId(x), OneId(c)))
            .collect();
        b.two_cells = self
            .two_cells
            .iter()
            .map(|c| TwoCellData {
                src: OneId(c.src),
                dst: OneId(c.dst),
            })
            .collect();
        b.id2 = self.id2.iter().map(|&c| TwoId(c)).collect();
        b.vcomp = self
            .vcomp
            .iter()
            .map(|&[a, x, c]| (TwoId(a), TwoId(x), TwoId(c)))
            .collect();
        b.hcomp = self
            .hcomp
            .iter()
            .map(|&[a, x, c]| (TwoId(a), TwoId(x), TwoId(c)))
            .collect();
        b.tensor_obj = self
            .tensor_obj
            .iter()
            .map(|&[a, x, c]| (ObjId(a), ObjId(x), ObjId(c)))
            .collect();
        b.tensor1 = self
            .tensor1
            .iter()
            .map(|&[a, x, c]| (OneId(a), OneId(x), OneId(c)))
            .collect();
        b.tensor2 = self
            .tensor2
            .iter()
            .map(|&[a, x, c]| (TwoId(a), TwoId(x), TwoId(c)))
            .collect();
        b.finish()
            .map_err(|e: BuildError| ModelFileError::Build(e.to_string()))
    }

    /// Canonical bytes: pretty JSON with a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("model file serializes");
        bytes.push(b'\n');
        bytes
    }

    /// Content hash over the canonical bytes.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_bytes());
        hex(&hasher.finalize())
    }
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Serialize an arrow model in the shared schema, with a provenance block in
/// `meta` linking every object, square and cylinder back to base ids.
pub fn arrow_model_file(am: &twocat_core::arrowcat::ArrowModel, base_hash: &str) -> ModelFile {
    let mut file = ModelFile::from_model(&am.model);
    let squares: Vec<[u32; 5]> = am
        .squares
        .iter()
        .map(|s| [s.x.0, s.y.0, s.f0.0, s.f1.0, s.fill.0])
        .collect();
    let cylinders: Vec<[u32; 4]> = am
        .cylinders
        .iter()
        .map(|c| [c.src, c.dst, c.m0.0, c.m1.0])
        .collect();
    file.meta = serde_json::json!({
        "provenance": {
            "base_model_hash": base_hash,
            "objects_are_base_one_cells": true,
            "squares": squares,     // [x, y, f0, f1, fill] in base ids
            "cylinders": cylinders, // [src square, dst square, m0, m1]
        }
    });
    file
}
