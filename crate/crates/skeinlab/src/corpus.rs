//! Named diagram collections: the built-in corpus and `.mw` files on disk.

use std::path::{Path, PathBuf};

use skeinlab_core::MorseWord;

use crate::text::{parse_morse, Diagnostic};

const BUILTIN: &[(&str, &str)] = &[
    ("unknot", include_str!("../corpus/unknot.mw")),
    ("unknot-cw", include_str!("../corpus/unknot-cw.mw")),
    ("kinked-positive", include_str!("../corpus/kinked-positive.mw")),
    ("kinked-negative", include_str!("../corpus/kinked-negative.mw")),
    ("hopf", include_str!("../corpus/hopf.mw")),
    ("trefoil-right", include_str!("../corpus/trefoil-right.mw")),
    ("trefoil-left", include_str!("../corpus/trefoil-left.mw")),
    ("figure-eight", include_str!("../corpus/figure-eight.mw")),
    ("unlink-2", include_str!("../corpus/unlink-2.mw")),
    ("annulus-core", include_str!("../corpus/annulus-core.mw")),
    ("annulus-core-squared", include_str!("../corpus/annulus-core-squared.mw")),
];

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{name}: {source}")]
    Parse { name: String, source: Diagnostic },
    #[error("{0}: no .mw files found")]
    Empty(PathBuf),
}

/// The shipped corpus, in a fixed order.
pub fn builtin() -> Vec<(String, MorseWord)> {
    BUILTIN
        .iter()
        .map(|(name, text)| {
            let w = parse_morse(text).unwrap_or_else(|e| panic!("built-in {} does not parse: {}", name, e));
            (name.to_string(), w)
        })
        .collect()
}

/// Looks up one built-in diagram by name.
pub fn builtin_named(name: &str) -> Option<MorseWord> {
    builtin().into_iter().find(|(n, _)| n == name).map(|(_, w)| w)
}

/// Reads a single `.mw` file, or every `.mw` file of a directory sorted by
/// file name.
pub fn load(path: &Path) -> Result<Vec<(String, MorseWord)>, CorpusError> {
    let io = |source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    };
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut v: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "mw"))
            .collect();
        v.sort();
        if v.is_empty() {
            return Err(CorpusError::Empty(path.to_path_buf()));
        }
        v
    } else {
        vec![path.to_path_buf()]
    };
    files
        .into_iter()
        .map(|f| {
            let text = std::fs::read_to_string(&f).map_err(|source| CorpusError::Io {
                path: f.clone(),
                source,
            })?;
            let name = f
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let w = parse_morse(&text).map_err(|source| CorpusError::Parse {
                name: f.display().to_string(),
                source,
            })?;
            Ok((name, w))
        })
        .collect()
}
