//! Bundled example presentations.

use std::path::{Path, PathBuf};

use crate::quiver::{parse_presentation, Presentation};

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    /// File name without extension.
    pub name: &'static str,
    pub text: &'static str,
    /// Path algebra of an acyclic quiver without relations.
    pub hereditary: bool,
}

impl Entry {
    pub fn file_name(&self) -> String {
        format!("{}.qv", self.name)
    }

    pub fn presentation(&self) -> Presentation {
        parse_presentation(self.text).expect("bundled files parse")
    }
}

macro_rules! entry {
    ($name:literal, $hereditary:expr) => {
        Entry {
            name: $name,
            text: include_str!(concat!("../corpus/", $name, ".qv")),
            hereditary: $hereditary,
        }
    };
}

pub const CORPUS: &[Entry] = &[
    entry!("loop", false),
    entry!("a1", true),
    entry!("a2", true),
    entry!("a3", true),
    entry!("a4", true),
    entry!("a5", true),
    entry!("d4", true),
    entry!("d5", true),
    entry!("e6", true),
    entry!("kronecker", true),
    entry!("affine_a2", true),
    entry!("affine_d4", true),
    entry!("rf_a3_ba0", false),
    entry!("ri_beilinson", false),
];

pub fn get(name: &str) -> Option<&'static Entry> {
    CORPUS.iter().find(|e| e.name == name)
}

/// Acyclic quivers without relations, for sweeps over path algebras.
pub fn hereditary() -> impl Iterator<Item = &'static Entry> {
    CORPUS.iter().filter(|e| e.hereditary)
}

/// Writes every bundled file into `dir`, creating it if needed.
pub fn emit_corpus(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    CORPUS
        .iter()
        .map(|e| {
            let path = dir.join(e.file_name());
            std::fs::write(&path, e.text)?;
            Ok(path)
        })
        .collect()
}
