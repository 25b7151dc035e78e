//! JSON-lines persistence for Rauzy classes.
//!
//! Line 1 is a header; each following line is one vertex in index order.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{ClassMode, RauzyClass};
use crate::error::{Error, Result};
use crate::gp::{reduced_alphabet, Alphabet, GeneralizedPermutation};

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format_version: u32,
    mode: ClassMode,
    base: String,
    alphabet: Vec<String>,
    complete: bool,
    vertices: usize,
    arrows: usize,
}

#[derive(Serialize, Deserialize)]
struct VertexLine {
    encoding: String,
    top: Option<u32>,
    bottom: Option<u32>,
    winners: [Option<String>; 2],
}

/// Directory from `RVQ_CACHE_DIR`, defaulting to `./.rvq-cache`.
pub fn cache_dir() -> PathBuf {
    std::env::var_os("RVQ_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".rvq-cache"))
}

/// Cache file for the class of `seed` under `mode`, inside `dir`.
pub fn cache_path(dir: &Path, seed: &GeneralizedPermutation, mode: ClassMode) -> PathBuf {
    let ident = match mode {
        ClassMode::Labeled => format!("labeled|{seed}|{}", seed.alphabet().names().join(",")),
        ClassMode::Reduced => format!("reduced|{}", seed.reduced_form().0),
    };
    let digest = Sha256::digest(ident.as_bytes());
    dir.join(format!("class-{}.jsonl", &hex::encode(digest)[..24]))
}

pub fn save_class(class: &RauzyClass, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("jsonl.tmp");
    let mut w = BufWriter::new(File::create(&tmp)?);
    let header = Header {
        format_version: FORMAT_VERSION,
        mode: class.mode,
        base: class.base().to_string(),
        alphabet: class.alphabet.names().to_vec(),
        complete: class.complete,
        vertices: class.len(),
        arrows: class.arrow_count(),
    };
    let enc = |e: serde_json::Error| Error::Cache(e.to_string());
    serde_json::to_writer(&mut w, &header).map_err(enc)?;
    w.write_all(b"\n")?;
    for v in 0..class.len() {
        let line = VertexLine {
            encoding: class.vertex(v).to_string(),
            top: class.out[v][0],
            bottom: class.out[v][1],
            winners: class.winners[v].map(|w| w.map(|l| class.alphabet.name(l).to_string())),
        };
        serde_json::to_writer(&mut w, &line).map_err(enc)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    drop(w);
    std::fs::rename(tmp, path)?;
    Ok(())
}

pub fn load_class(path: &Path) -> Result<RauzyClass> {
    let r = BufReader::new(File::open(path)?);
    let mut lines = r.lines();
    let bad = |m: String| Error::Cache(format!("{}: {m}", path.display()));
    let header: Header = serde_json::from_str(&lines.next().ok_or_else(|| bad("empty file".into()))??)
        .map_err(|e| bad(e.to_string()))?;
    if header.format_version != FORMAT_VERSION {
        return Err(bad(format!("unsupported format version {}", header.format_version)));
    }
    let alphabet: Arc<Alphabet> = match header.mode {
        ClassMode::Labeled => Arc::new(Alphabet::new(header.alphabet.clone())?),
        ClassMode::Reduced => reduced_alphabet(header.alphabet.len()),
    };
    let mut class = RauzyClass {
        mode: header.mode,
        alphabet: alphabet.clone(),
        keys: Vec::with_capacity(header.vertices),
        index: HashMap::with_capacity(header.vertices),
        out: Vec::with_capacity(header.vertices),
        winners: Vec::with_capacity(header.vertices),
        incoming: Vec::new(),
        complete: header.complete,
    };
    let letter = |name: &str| alphabet.letter(name).ok_or_else(|| bad(format!("unknown letter {name}")));
    for line in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let v: VertexLine = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        let (top, bottom) = v.encoding.split_once('/').ok_or_else(|| bad("bad encoding".into()))?;
        let t = top.split_whitespace().map(letter).collect::<Result<Vec<_>>>()?;
        let b = bottom.split_whitespace().map(letter).collect::<Result<Vec<_>>>()?;
        let gp = GeneralizedPermutation::from_indices(alphabet.clone(), t, b)?;
        let key = gp.key();
        class.index.insert(key.clone(), class.keys.len() as u32);
        class.keys.push(key);
        class.out.push([v.top, v.bottom]);
        let w0 = v.winners[0].as_deref().map(letter).transpose()?;
        let w1 = v.winners[1].as_deref().map(letter).transpose()?;
        class.winners.push([w0, w1]);
    }
    if class.len() != header.vertices {
        return Err(bad(format!("expected {} vertices, found {}", header.vertices, class.len())));
    }
    let n = class.len() as u32;
    if class.out.iter().flatten().flatten().any(|&t| t >= n) {
        return Err(bad("arrow target out of range".into()));
    }
    class.rebuild_incoming();
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::super::enumerate_class_with;
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let seed: GeneralizedPermutation = "1 2 3 4 / 4 3 2 1".parse().unwrap();
        for mode in [ClassMode::Labeled, ClassMode::Reduced] {
            let c = enumerate_class_with(&seed, mode, 10_000).unwrap();
            let p = cache_path(dir.path(), &seed, mode);
            save_class(&c, &p).unwrap();
            let back = load_class(&p).unwrap();
            assert_eq!(back.len(), c.len());
            assert_eq!(back.keys, c.keys);
            assert_eq!(back.out, c.out);
            assert_eq!(back.winners, c.winners);
            assert!(back.is_complete());
        }
    }

    #[test]
    fn path_depends_on_mode_and_seed() {
        let a: GeneralizedPermutation = "1 2 3 4 / 4 3 2 1".parse().unwrap();
        let b: GeneralizedPermutation = "a b c d / d c b a".parse().unwrap();
        let d = Path::new("x");
        assert_eq!(cache_path(d, &a, ClassMode::Reduced), cache_path(d, &b, ClassMode::Reduced));
        assert_ne!(cache_path(d, &a, ClassMode::Labeled), cache_path(d, &b, ClassMode::Labeled));
    }
}
