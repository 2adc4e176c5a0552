//! The default verification corpus and ingestion of user group files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use zjkit_core::build::{self, Construction, ExtraspecialExponent};
use zjkit_core::group::Group;
use zjkit_core::io::GroupFile;

use crate::HarnessError;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: Group,
    /// Odd primes the campaign runs on this entry.
    pub primes: Vec<u64>,
    pub provenance: String,
    pub construction: Option<Construction>,
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub max_order: usize,
    /// Odd primes considered; each entry keeps the ones dividing its order.
    pub primes: Vec<u64>,
    pub ingest: Option<PathBuf>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { max_order: zjkit_core::config::order_bound(), primes: vec![3, 5], ingest: None }
    }
}

/// All partitions of `k` in weakly decreasing order.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn rec(k: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(k)).rev() {
            cur.push(part);
            rec(k - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

fn abelian_3_groups() -> Vec<Construction> {
    let mut out = Vec::new();
    for k in 1..=4u32 {
        for parts in partitions(k) {
            let factors: Vec<Construction> = parts
                .iter()
                .map(|&e| Construction::Cyclic { n: 3usize.pow(e) })
                .collect();
            out.push(if factors.len() == 1 {
                factors.into_iter().next().unwrap()
            } else {
                Construction::DirectProduct { factors }
            });
        }
    }
    out
}

fn inversion_semidirect(base: Construction) -> Result<Construction, HarnessError> {
    let n = build::build(&base).map_err(HarnessError::Kernel)?;
    let id_row: Vec<u16> = (0..n.order() as u16).collect();
    let inv_row: Vec<u16> = (0..n.order() as u16).map(|x| n.inv(x)).collect();
    Ok(Construction::Semidirect {
        normal: Box::new(base),
        acting: Box::new(Construction::Cyclic { n: 2 }),
        action: vec![id_row, inv_row],
    })
}

/// The order-2 automorphism of Heis27 negating both off-center
/// coordinates: `(a, b, c) -> (-a, -b, c)` in the `a p^2 + b p + c`
/// indexing.
fn heisenberg_flip() -> Construction {
    let p = 3u16;
    let id_row: Vec<u16> = (0..27).collect();
    let flip_row: Vec<u16> = (0..27)
        .map(|idx| {
            let (a, b, c) = (idx / 9, (idx / 3) % 3, idx % 3);
            ((p - a) % p) * 9 + ((p - b) % p) * 3 + c
        })
        .collect();
    Construction::Semidirect {
        normal: Box::new(Construction::Heisenberg { p: 3 }),
        acting: Box::new(Construction::Cyclic { n: 2 }),
        action: vec![id_row, flip_row],
    }
}

fn default_constructions() -> Result<Vec<(String, Construction)>, HarnessError> {
    let mut out: Vec<(String, Construction)> = Vec::new();
    for c in abelian_3_groups() {
        out.push((c.describe(), c));
    }
    let named: Vec<Construction> = vec![
        Construction::Heisenberg { p: 3 },
        Construction::Extraspecial { p: 3, exponent: ExtraspecialExponent::PSquared },
        Construction::WreathCpCp { p: 3 },
        Construction::Symmetric { n: 3 },
        Construction::Alternating { n: 4 },
        Construction::Symmetric { n: 4 },
        Construction::Alternating { n: 5 },
        Construction::SpecialLinear2 { p: 3 },
        Construction::Qd { p: 3 },
        Construction::DirectProduct {
            factors: vec![Construction::Qd { p: 3 }, Construction::Cyclic { n: 2 }],
        },
        Construction::DirectProduct {
            factors: vec![Construction::Symmetric { n: 3 }, Construction::Cyclic { n: 3 }],
        },
        Construction::DirectProduct {
            factors: vec![Construction::Heisenberg { p: 3 }, Construction::Cyclic { n: 3 }],
        },
    ];
    for c in named {
        out.push((c.describe(), c));
    }
    out.push(("E9:Z2".into(), inversion_semidirect(Construction::ElementaryAbelian { p: 3, k: 2 })?));
    out.push(("Heis27:Z2".into(), heisenberg_flip()));
    Ok(out)
}

/// Builds the deterministic default corpus, filtered by `max_order`, plus
/// any groups ingested from the configured directory.
pub fn build_corpus(cfg: &CorpusConfig) -> Result<Vec<CorpusEntry>, HarnessError> {
    let mut entries = Vec::new();
    for (name, c) in default_constructions()? {
        let group = match build::build(&c) {
            Ok(g) => g,
            Err(zjkit_core::Error::BoundExceeded { .. }) => continue,
            Err(e) => return Err(HarnessError::Kernel(e)),
        };
        if group.order() > cfg.max_order {
            continue;
        }
        let primes = entry_primes(&group, &cfg.primes);
        if primes.is_empty() {
            continue;
        }
        entries.push(CorpusEntry {
            name,
            group,
            primes,
            provenance: format!("builtin:{}", c.describe()),
            construction: Some(c),
        });
    }
    if let Some(dir) = &cfg.ingest {
        entries.extend(ingest_dir(dir, cfg)?);
    }
    Ok(entries)
}

fn entry_primes(group: &Group, wanted: &[u64]) -> Vec<u64> {
    zjkit_core::arith::prime_factors(group.order() as u64)
        .iter()
        .map(|&(p, _)| p)
        .filter(|&p| p != 2 && wanted.contains(&p))
        .collect()
}

fn ingest_dir(dir: &Path, cfg: &CorpusConfig) -> Result<Vec<CorpusEntry>, HarnessError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| HarnessError::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(&path).map_err(|e| HarnessError::io(&path, e))?;
        let file: GroupFile = serde_json::from_str(&text)
            .map_err(|e| HarnessError::Parse { path: path.display().to_string(), message: e.to_string() })?;
        let group = file.realize().map_err(|e| HarnessError::Parse {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        if group.order() > cfg.max_order {
            continue;
        }
        let primes = entry_primes(&group, &cfg.primes);
        if primes.is_empty() {
            continue;
        }
        out.push(CorpusEntry {
            name: file.name.clone(),
            group,
            primes,
            provenance: format!("file:{}", path.display()),
            construction: file.construction.clone(),
        });
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct CorpusFile {
    entries: Vec<CorpusFileEntry>,
}

#[derive(Serialize, Deserialize)]
struct CorpusFileEntry {
    name: String,
    primes: Vec<u64>,
    provenance: String,
    group: GroupFile,
}

pub fn save_corpus(entries: &[CorpusEntry], path: &Path) -> Result<(), HarnessError> {
    let file = CorpusFile {
        entries: entries
            .iter()
            .map(|e| CorpusFileEntry {
                name: e.name.clone(),
                primes: e.primes.clone(),
                provenance: e.provenance.clone(),
                group: GroupFile::snapshot(&e.name, e.construction.as_ref(), &e.group),
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&file).expect("corpus serializes");
    std::fs::write(path, json).map_err(|e| HarnessError::io(path, e))
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let file: CorpusFile = serde_json::from_str(&text).map_err(|e| HarnessError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut out = Vec::new();
    for e in file.entries {
        let group = e.group.realize().map_err(|err| HarnessError::Parse {
            path: path.display().to_string(),
            message: format!("entry {}: {}", e.name, err),
        })?;
        out.push(CorpusEntry {
            name: e.name,
            primes: e.primes,
            provenance: e.provenance,
            construction: e.group.construction.clone(),
            group,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_contains_the_named_groups() {
        let corpus = build_corpus(&CorpusConfig::default()).unwrap();
        let names: Vec<&str> = corpus.iter().map(|e| e.name.as_str()).collect();
        for want in [
            "Z3", "Z81", "Heis27", "M27", "Z3wrZ3", "Sym3", "Alt4", "Sym4", "Alt5",
            "SL(2,3)", "Qd(3)", "Qd(3)xZ2", "E9:Z2", "Heis27:Z2", "Sym3xZ3",
        ] {
            assert!(names.contains(&want), "missing {want}: {names:?}");
        }
        let qd = corpus.iter().find(|e| e.name == "Qd(3)").unwrap();
        assert_eq!(qd.group.order(), 216);
        let a5 = corpus.iter().find(|e| e.name == "Alt5").unwrap();
        assert_eq!(a5.primes, vec![3, 5]);
    }

    #[test]
    fn max_order_filter_drops_large_entries() {
        let cfg = CorpusConfig { max_order: 27, ..Default::default() };
        let corpus = build_corpus(&cfg).unwrap();
        assert!(corpus.iter().all(|e| e.group.order() <= 27));
        assert!(!corpus.iter().any(|e| e.name == "Qd(3)"));
        assert!(corpus.iter().any(|e| e.name == "Heis27"));
    }

    #[test]
    fn corpus_round_trips_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.json");
        let cfg = CorpusConfig { max_order: 30, ..Default::default() };
        let corpus = build_corpus(&cfg).unwrap();
        save_corpus(&corpus, &path).unwrap();
        let loaded = load_corpus(&path).unwrap();
        assert_eq!(corpus.len(), loaded.len());
        for (a, b) in corpus.iter().zip(&loaded) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.group.order(), b.group.order());
            assert_eq!(a.primes, b.primes);
        }
    }

    #[test]
    fn ingest_reports_the_offending_file() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("bad.json"), "{not json").unwrap();
        let cfg = CorpusConfig {
            ingest: Some(dir.path().to_path_buf()),
            ..Default::default()
        };
        let err = build_corpus(&cfg).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bad.json"), "{msg}");
    }

    #[test]
    fn ingest_accepts_good_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("a4.json"),
            r#"{"name":"MyA4","kind":"permgens","gens":["(1 2 3)","(1 2)(3 4)"]}"#,
        )
        .unwrap();
        let cfg = CorpusConfig {
            ingest: Some(dir.path().to_path_buf()),
            ..Default::default()
        };
        let corpus = build_corpus(&cfg).unwrap();
        let got = corpus.iter().find(|e| e.name == "MyA4").unwrap();
        assert_eq!(got.group.order(), 12);
        assert_eq!(got.primes, vec![3]);
    }
}
