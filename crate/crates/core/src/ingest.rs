//! Interaction-file parsing and temporal slicing.
//!
//! One file per episode, named `sSSeEE.txt`. Each data line holds two
//! character names separated by a single separator character (tab by
//! default); `#` starts a comment. One line per interaction occurrence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{GraphError, MultiGraph};

/// Episodes revolving mainly around the six main characters.
pub const THE_SIX_EPISODES: [(u8, u8); 20] = [
    (1, 18),
    (2, 3),
    (3, 2),
    (3, 9),
    (3, 16),
    (3, 17),
    (4, 1),
    (4, 12),
    (5, 14),
    (6, 6),
    (6, 9),
    (7, 1),
    (7, 8),
    (7, 14),
    (8, 4),
    (8, 9),
    (9, 18),
    (10, 4),
    (10, 10),
    (10, 16),
];

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: expected exactly two fields, got {fields}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        fields: usize,
    },
    #[error("{path}:{line}: {source}")]
    BadInteraction {
        path: PathBuf,
        line: usize,
        source: GraphError,
    },
    #[error("unrecognized episode filename {name:?} (expected sSSeEE.txt)")]
    BadFilename { name: String },
    #[error("invalid episode key {text:?}: {reason}")]
    BadEpisodeKey { text: String, reason: &'static str },
    #[error("duplicate episode {key} (from {path})")]
    DuplicateEpisode { key: EpisodeKey, path: PathBuf },
    #[error("slice {slice:?} references episode {key} not present in the corpus")]
    UnknownSliceEpisode { slice: String, key: EpisodeKey },
    #[error("unknown slice {name:?}")]
    UnknownSlice { name: String },
    #[error("slice {spec:?} resolves to no episodes")]
    EmptySlice { spec: String },
    #[error("cannot parse slice spec {text:?}")]
    BadSliceSpec { text: String },
    #[error("{path}:{line}: malformed slice definition (expected `name = s1e2 s3e4 ...`)")]
    BadSliceLine { path: PathBuf, line: usize },
    #[error("{path}:{line}: interaction before the first episode header")]
    DataBeforeHeader { path: PathBuf, line: usize },
    #[error("malformed alias {text:?} (expected OLD=NEW)")]
    BadAlias { text: String },
}

/// Season/episode pair, totally ordered by `(season, episode)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpisodeKey {
    pub season: u8,
    pub episode: u8,
}

impl EpisodeKey {
    pub fn new(season: u8, episode: u8) -> Result<Self, IngestError> {
        if !(1..=10).contains(&season) {
            return Err(IngestError::BadEpisodeKey {
                text: format!("s{season}e{episode}"),
                reason: "season must be in 1..=10",
            });
        }
        if episode == 0 {
            return Err(IngestError::BadEpisodeKey {
                text: format!("s{season}e{episode}"),
                reason: "episode must be >= 1",
            });
        }
        Ok(EpisodeKey { season, episode })
    }

    /// Canonical zero-padded file name for this episode.
    pub fn filename(&self) -> String {
        format!("s{:02}e{:02}.txt", self.season, self.episode)
    }
}

impl fmt::Display for EpisodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}e{}", self.season, self.episode)
    }
}

impl FromStr for EpisodeKey {
    type Err = IngestError;

    /// Accepts `s1e18` and zero-padded `s01e18`, case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason| IngestError::BadEpisodeKey {
            text: s.to_string(),
            reason,
        };
        let lower = s.trim().to_ascii_lowercase();
        let rest = lower
            .strip_prefix('s')
            .ok_or_else(|| bad("missing 's' prefix"))?;
        let (season, episode) = rest.split_once('e').ok_or_else(|| bad("missing 'e'"))?;
        let season: u8 = season.parse().map_err(|_| bad("season is not a number"))?;
        let episode: u8 = episode
            .parse()
            .map_err(|_| bad("episode is not a number"))?;
        EpisodeKey::new(season, episode)
    }
}

/// Parse one episode file into a multigraph.
///
/// Blank lines and `#` comments are skipped. A data line must contain
/// exactly two names separated by `separator`. An empty file yields an
/// empty graph plus a warning string.
pub fn parse_file(
    path: &Path,
    separator: char,
) -> Result<(MultiGraph, Vec<String>), IngestError> {
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut graph = MultiGraph::new();
    let mut warnings = Vec::new();
    let mut data_lines = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(separator).collect();
        if fields.len() != 2 {
            return Err(IngestError::MalformedLine {
                path: path.to_path_buf(),
                line: idx + 1,
                fields: fields.len(),
            });
        }
        graph
            .add_interaction(fields[0], fields[1])
            .map_err(|source| IngestError::BadInteraction {
                path: path.to_path_buf(),
                line: idx + 1,
                source,
            })?;
        data_lines += 1;
    }
    if data_lines == 0 {
        warnings.push(format!("{}: no interaction lines", path.display()));
    }
    Ok((graph, warnings))
}

/// How to read a corpus directory.
#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Field separator inside episode files.
    pub separator: char,
    /// Optional slices config mapping names to explicit episode lists.
    pub slices_file: Option<PathBuf>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            separator: '\t',
            slices_file: None,
        }
    }
}

/// All episode graphs of one show plus named slice definitions.
#[derive(Debug, Default)]
pub struct Corpus {
    episodes: BTreeMap<EpisodeKey, MultiGraph>,
    slices: BTreeMap<String, BTreeSet<EpisodeKey>>,
    warnings: Vec<String>,
}

impl Corpus {
    /// Load every `sSSeEE.txt` under `dir`. Files with other extensions are
    /// ignored; a `.txt` file that does not follow the naming convention is
    /// an error.
    pub fn load(dir: &Path, options: &LoadOptions) -> Result<Corpus, IngestError> {
        let mut corpus = Corpus::default();
        let entries = fs::read_dir(dir).map_err(|source| IngestError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut paths: Vec<PathBuf> = Vec::new();
        for entry in entries {
            let entry = entry.map_err(|source| IngestError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            let path = entry.path();
            if path.extension().and_then(|e| e.to_str()) == Some("txt") {
                paths.push(path);
            }
        }
        paths.sort();
        for path in paths {
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .ok_or_else(|| IngestError::BadFilename {
                    name: path.display().to_string(),
                })?;
            let key: EpisodeKey = stem.parse().map_err(|_| IngestError::BadFilename {
                name: format!("{stem}.txt"),
            })?;
            if corpus.episodes.contains_key(&key) {
                return Err(IngestError::DuplicateEpisode { key, path });
            }
            let (graph, mut warnings) = parse_file(&path, options.separator)?;
            corpus.warnings.append(&mut warnings);
            corpus.episodes.insert(key, graph);
        }
        corpus.register_builtin_slices();
        if let Some(slices_path) = &options.slices_file {
            corpus.load_slices_config(slices_path)?;
        }
        Ok(corpus)
    }

    /// Build a corpus directly from in-memory episode graphs.
    pub fn from_episodes<I>(episodes: I) -> Corpus
    where
        I: IntoIterator<Item = (EpisodeKey, MultiGraph)>,
    {
        let mut corpus = Corpus {
            episodes: episodes.into_iter().collect(),
            ..Corpus::default()
        };
        corpus.register_builtin_slices();
        corpus
    }

    fn register_builtin_slices(&mut self) {
        let the6: BTreeSet<EpisodeKey> = THE_SIX_EPISODES
            .iter()
            .filter_map(|&(s, e)| EpisodeKey::new(s, e).ok())
            .filter(|k| self.episodes.contains_key(k))
            .collect();
        if !the6.is_empty() {
            self.slices.insert("the6".into(), the6);
        }
        let mut firsts = BTreeSet::new();
        let mut lasts = BTreeSet::new();
        for season in 1..=10u8 {
            let mut in_season = self
                .episodes
                .keys()
                .filter(|k| k.season == season)
                .peekable();
            if in_season.peek().is_none() {
                continue;
            }
            if let Some(&first) = self.episodes.keys().find(|k| k.season == season && k.episode == 1) {
                firsts.insert(first);
            }
            if let Some(&last) = in_season.last() {
                lasts.insert(last);
            }
        }
        if !firsts.is_empty() {
            self.slices.insert("firsts".into(), firsts);
        }
        if !lasts.is_empty() {
            self.slices.insert("lasts".into(), lasts);
        }
    }

    /// Read a `name = s1e2 s2e3, s4e5`-style slice config. `#` comments and
    /// blank lines are skipped. Config entries override built-ins of the
    /// same name.
    pub fn load_slices_config(&mut self, path: &Path) -> Result<(), IngestError> {
        let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, list) = line.split_once('=').ok_or_else(|| IngestError::BadSliceLine {
                path: path.to_path_buf(),
                line: idx + 1,
            })?;
            let name = name.trim().to_string();
            if name.is_empty() {
                return Err(IngestError::BadSliceLine {
                    path: path.to_path_buf(),
                    line: idx + 1,
                });
            }
            let mut keys = BTreeSet::new();
            for token in list.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let key: EpisodeKey = token.parse()?;
                if !self.episodes.contains_key(&key) {
                    return Err(IngestError::UnknownSliceEpisode { slice: name, key });
                }
                keys.insert(key);
            }
            if keys.is_empty() {
                return Err(IngestError::BadSliceLine {
                    path: path.to_path_buf(),
                    line: idx + 1,
                });
            }
            self.slices.insert(name, keys);
        }
        Ok(())
    }

    pub fn episode_count(&self) -> usize {
        self.episodes.len()
    }

    pub fn episodes(&self) -> impl Iterator<Item = (&EpisodeKey, &MultiGraph)> {
        self.episodes.iter()
    }

    pub fn episode(&self, key: EpisodeKey) -> Option<&MultiGraph> {
        self.episodes.get(&key)
    }

    pub fn slice_names(&self) -> impl Iterator<Item = &str> {
        self.slices.keys().map(String::as_str)
    }

    pub fn named_slice(&self, name: &str) -> Option<&BTreeSet<EpisodeKey>> {
        self.slices.get(name)
    }

    /// Warnings accumulated while loading (empty files and the like).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Resolve a spec to its episode set; the set is never empty.
    pub fn resolve(&self, spec: &SliceSpec) -> Result<BTreeSet<EpisodeKey>, IngestError> {
        let keys: BTreeSet<EpisodeKey> = match spec {
            SliceSpec::All => self.episodes.keys().copied().collect(),
            SliceSpec::Season(s) => self
                .episodes
                .keys()
                .filter(|k| k.season == *s)
                .copied()
                .collect(),
            SliceSpec::SeasonRange(lo, hi) => self
                .episodes
                .keys()
                .filter(|k| (*lo..=*hi).contains(&k.season))
                .copied()
                .collect(),
            SliceSpec::Episode(key) => self
                .episodes
                .keys()
                .filter(|k| **k == *key)
                .copied()
                .collect(),
            SliceSpec::Episodes(list) => {
                let mut keys = BTreeSet::new();
                for key in list {
                    if !self.episodes.contains_key(key) {
                        return Err(IngestError::EmptySlice {
                            spec: spec.to_string(),
                        });
                    }
                    keys.insert(*key);
                }
                keys
            }
            SliceSpec::Named(name) => self
                .slices
                .get(name)
                .ok_or_else(|| IngestError::UnknownSlice { name: name.clone() })?
                .clone(),
        };
        if keys.is_empty() {
            return Err(IngestError::EmptySlice {
                spec: spec.to_string(),
            });
        }
        Ok(keys)
    }

    /// Merge the episodes selected by `spec` into one analysis graph.
    pub fn slice(&self, spec: &SliceSpec) -> Result<MultiGraph, IngestError> {
        let keys = self.resolve(spec)?;
        Ok(MultiGraph::merge(keys.iter().map(|k| &self.episodes[k])))
    }

    /// Content hash over episode keys, labels, and multiplicities; stable
    /// under file ordering so reports are auditable.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for (key, graph) in &self.episodes {
            hasher.update(key.to_string().as_bytes());
            hasher.update(b"\n");
            let mut rows: Vec<(String, String, u32)> = graph
                .edges()
                .map(|(u, v, m)| {
                    let (a, b) = (graph.label(u), graph.label(v));
                    if a <= b {
                        (a.to_string(), b.to_string(), m)
                    } else {
                        (b.to_string(), a.to_string(), m)
                    }
                })
                .collect();
            rows.sort();
            for (a, b, m) in rows {
                hasher.update(a.as_bytes());
                hasher.update(b"\t");
                hasher.update(b.as_bytes());
                hasher.update(b"\t");
                hasher.update(m.to_string().as_bytes());
                hasher.update(b"\n");
            }
        }
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        hex[..16].to_string()
    }
}

/// Outcome of converting an annotated single-file dataset.
#[derive(Debug)]
pub struct ConvertSummary {
    pub episodes: usize,
    pub interactions: usize,
    /// Slice names found in episode tags, with episode counts.
    pub slices: Vec<(String, usize)>,
}

/// Convert a single annotated interaction file into the canonical corpus
/// layout: one tab-separated `sSSeEE.txt` per episode plus a `slices.cfg`.
///
/// The input format is the one the dataset repository uses: `# sXeY`
/// comment lines open an episode and may carry tags (`thanksgiving`,
/// `withflashback`, ...); other comment lines are ignored; data lines are
/// two whitespace-separated names. `aliases` maps misspelled names onto
/// their canonical form during conversion.
pub fn convert_annotated_file(
    input: &Path,
    out_dir: &Path,
    aliases: &[(String, String)],
) -> Result<ConvertSummary, IngestError> {
    let text = fs::read_to_string(input).map_err(|source| IngestError::Io {
        path: input.to_path_buf(),
        source,
    })?;
    let mut episodes: BTreeMap<EpisodeKey, Vec<(String, String)>> = BTreeMap::new();
    let mut tagged: BTreeMap<String, BTreeSet<EpisodeKey>> = BTreeMap::new();
    let mut current: Option<EpisodeKey> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            let Some(first) = words.next() else { continue };
            let Ok(key) = first.parse::<EpisodeKey>() else {
                continue; // scene comment
            };
            if episodes.contains_key(&key) {
                return Err(IngestError::DuplicateEpisode {
                    key,
                    path: input.to_path_buf(),
                });
            }
            episodes.insert(key, Vec::new());
            current = Some(key);
            for word in words {
                let tag = word
                    .trim_matches(|c: char| "(),:".contains(c))
                    .to_ascii_lowercase();
                let slice = match tag.as_str() {
                    "thanksgiving" => "thanksgiving",
                    "withflashback" | "flashback" | "flashbacks" => "flashbacks",
                    _ => continue, // the6/lasts are derived built-ins
                };
                tagged.entry(slice.to_string()).or_default().insert(key);
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(IngestError::MalformedLine {
                path: input.to_path_buf(),
                line: idx + 1,
                fields: fields.len(),
            });
        }
        let Some(key) = current else {
            return Err(IngestError::DataBeforeHeader {
                path: input.to_path_buf(),
                line: idx + 1,
            });
        };
        let resolve = |name: &str| {
            aliases
                .iter()
                .find(|(old, _)| old == name)
                .map(|(_, new)| new.clone())
                .unwrap_or_else(|| name.to_string())
        };
        episodes
            .get_mut(&key)
            .expect("current episode exists")
            .push((resolve(fields[0]), resolve(fields[1])));
    }

    fs::create_dir_all(out_dir).map_err(|source| IngestError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut interactions = 0usize;
    for (key, pairs) in &episodes {
        let mut body = String::new();
        for (a, b) in pairs {
            body.push_str(a);
            body.push('\t');
            body.push_str(b);
            body.push('\n');
        }
        interactions += pairs.len();
        let path = out_dir.join(key.filename());
        fs::write(&path, body).map_err(|source| IngestError::Io { path, source })?;
    }
    if !tagged.is_empty() {
        let mut body = String::new();
        for (name, keys) in &tagged {
            let list: Vec<String> = keys.iter().map(|k| k.to_string()).collect();
            body.push_str(&format!("{name} = {}\n", list.join(" ")));
        }
        let path = out_dir.join("slices.cfg");
        fs::write(&path, body).map_err(|source| IngestError::Io { path, source })?;
    }
    Ok(ConvertSummary {
        episodes: episodes.len(),
        interactions,
        slices: tagged
            .into_iter()
            .map(|(name, keys)| (name, keys.len()))
            .collect(),
    })
}

/// Parse an `OLD=NEW` alias pair.
pub fn parse_alias(text: &str) -> Result<(String, String), IngestError> {
    let (old, new) = text.split_once('=').ok_or_else(|| IngestError::BadAlias {
        text: text.to_string(),
    })?;
    if old.is_empty() || new.is_empty() {
        return Err(IngestError::BadAlias {
            text: text.to_string(),
        });
    }
    Ok((old.to_string(), new.to_string()))
}

/// Which episodes to merge into one analysis graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceSpec {
    /// Every episode in the corpus.
    All,
    Season(u8),
    SeasonRange(u8, u8),
    Episode(EpisodeKey),
    Episodes(Vec<EpisodeKey>),
    Named(String),
}

impl fmt::Display for SliceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceSpec::All => write!(f, "AE"),
            SliceSpec::Season(s) => write!(f, "s{s}"),
            SliceSpec::SeasonRange(lo, hi) => write!(f, "s{lo}-s{hi}"),
            SliceSpec::Episode(k) => write!(f, "{k}"),
            SliceSpec::Episodes(list) => {
                let parts: Vec<String> = list.iter().map(|k| k.to_string()).collect();
                write!(f, "{}", parts.join("+"))
            }
            SliceSpec::Named(name) => write!(f, "{name}"),
        }
    }
}

impl FromStr for SliceSpec {
    type Err = IngestError;

    /// `AE`, `s7`, `s1e18`, `s1-s4`, `s1e1+s2e3`, or a named slice.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        if text.is_empty() {
            return Err(IngestError::BadSliceSpec {
                text: s.to_string(),
            });
        }
        if text.eq_ignore_ascii_case("ae") || text.eq_ignore_ascii_case("all") {
            return Ok(SliceSpec::All);
        }
        if text.contains('+') {
            let keys: Result<Vec<EpisodeKey>, _> =
                text.split('+').map(|t| t.parse::<EpisodeKey>()).collect();
            if let Ok(keys) = keys {
                return Ok(SliceSpec::Episodes(keys));
            }
        }
        if let Some((lo, hi)) = text.split_once('-') {
            let lo_s = lo.trim().strip_prefix(['s', 'S']);
            let hi_s = hi.trim().strip_prefix(['s', 'S']);
            if let (Some(lo_s), Some(hi_s)) = (lo_s, hi_s) {
                if let (Ok(lo), Ok(hi)) = (lo_s.parse::<u8>(), hi_s.parse::<u8>()) {
                    return Ok(SliceSpec::SeasonRange(lo, hi));
                }
            }
        }
        if let Ok(key) = text.parse::<EpisodeKey>() {
            return Ok(SliceSpec::Episode(key));
        }
        if let Some(rest) = text.strip_prefix(['s', 'S']) {
            if let Ok(season) = rest.parse::<u8>() {
                return Ok(SliceSpec::Season(season));
            }
        }
        Ok(SliceSpec::Named(text.to_string()))
    }
}
