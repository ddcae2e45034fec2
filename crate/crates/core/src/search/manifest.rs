use serde::Serialize;
use sha2::{Digest, Sha256};

use super::ModelStream;
use crate::axioms::AlgebraClass;
use crate::format::write_algebra;

/// Index of an enumeration written out as one `.alg` file per model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub class: AlgebraClass,
    pub size: usize,
    pub count: usize,
    pub complete: bool,
    pub models: Vec<ManifestEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub key: String,
    /// Hex SHA-256 of the file contents.
    pub sha256: String,
}

impl Manifest {
    /// File names are `<class>-<size>-<index>.alg` with a zero-padded index.
    pub fn from_stream(stream: &ModelStream) -> (Self, Vec<(String, String)>) {
        let width = stream.len().max(1).to_string().len();
        let mut files = Vec::with_capacity(stream.len());
        let mut models = Vec::with_capacity(stream.len());
        for (i, (key, alg)) in stream.models.iter().enumerate() {
            let file = format!(
                "{}-{}-{:0width$}.alg",
                stream.class.name().to_lowercase(),
                stream.size,
                i + 1
            );
            let text = write_algebra(alg);
            models.push(ManifestEntry {
                file: file.clone(),
                key: key.to_string(),
                sha256: sha256_hex(&text),
            });
            files.push((file, text));
        }
        let manifest = Manifest {
            class: stream.class,
            size: stream.size,
            count: stream.len(),
            complete: stream.complete,
            models,
        };
        (manifest, files)
    }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}
