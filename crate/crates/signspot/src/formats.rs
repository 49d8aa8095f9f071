//! Versioned on-disk file formats.
//!
//! Every JSON document carries a `format` tag checked on read. Feature data
//! is a structured text document, human-inspectable at desk scale; paths
//! ending in `.gz` transparently use a gzip container for large runs. Writes
//! are atomic (temp file + rename). The `*_from_str` parsers never touch the
//! filesystem, so untrusted bytes can be fed to them directly.
//!
//! Line-based formats:
//! - word list: one word per line (frequency lists are ordered, most frequent
//!   first; lexica are unordered sets)
//! - tagged corpus: one sentence per line, tokens as `word/TAG`
//! - word vectors: `word v1 v2 ...` per line, uniform dimension
//! - gloss corpus: one gloss sentence per line, space-separated

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};

use crate::decoder::{BeamHypothesis, DecoderConfig};
use crate::dictionary::{Dictionary, DictionaryEntry, SimilarityDistribution, SourceTag};
use crate::error::{Error, Result};
use crate::eval::{EvalReport, SweepGrid};
use crate::features::{FeatureSequence, Modality};
use crate::synth::{NoiseConfig, TaggedSentence, TaggedToken};

pub const FORMAT_FEATURES: &str = "signspot.features.v1";
pub const FORMAT_MANIFEST: &str = "signspot.manifest.v1";
pub const FORMAT_DICTIONARY: &str = "signspot.dict.v1";
pub const FORMAT_SEGMENTS: &str = "signspot.segments.v1";
pub const FORMAT_DISTRIBUTIONS: &str = "signspot.dists.v1";
pub const FORMAT_HYPOTHESES: &str = "signspot.hyps.v1";
pub const FORMAT_REPORT: &str = "signspot.report.v1";
pub const FORMAT_SWEEP: &str = "signspot.sweep.v1";

fn check_format(found: &str, expected: &'static str) -> Result<()> {
    if found != expected {
        return Err(Error::UnsupportedFormat {
            found: found.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(())
}

fn parse_modality_key(key: &str) -> Result<Modality> {
    key.parse()
}

// ── I/O plumbing ─────────────────────────────────────────────────────────

fn is_gz(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

/// Reads a document, transparently decoding a `.gz` container.
pub fn read_document(path: &Path) -> Result<String> {
    if is_gz(path) {
        let file = std::fs::File::open(path)?;
        let mut decoder = GzDecoder::new(file);
        let mut text = String::new();
        decoder.read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

/// Atomically writes a document (temp file in the target directory, then
/// rename), gzip-compressing when the path ends in `.gz`.
pub fn write_document(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            tempfile::NamedTempFile::new_in(dir)?
        }
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    if is_gz(path) {
        let mut encoder = GzEncoder::new(tmp.as_file_mut(), Compression::default());
        encoder.write_all(content.as_bytes())?;
        encoder.finish()?;
    } else {
        tmp.as_file_mut().write_all(content.as_bytes())?;
    }
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn pretty(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable document");
    text.push('\n');
    text
}

// ── Feature files ────────────────────────────────────────────────────────

#[derive(Serialize, Deserialize)]
struct FeatureFileRepr {
    format: String,
    modality: String,
    dim: usize,
    frames: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct FeatureDataRepr {
    dim: usize,
    frames: Vec<Vec<f64>>,
}

fn feature_data_to_sequence(
    modality: Modality,
    dim: usize,
    frames: Vec<Vec<f64>>,
) -> Result<FeatureSequence> {
    let seq = FeatureSequence::new(modality, frames)?;
    if seq.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: seq.dim(),
        });
    }
    Ok(seq)
}

pub fn features_from_str(text: &str) -> Result<FeatureSequence> {
    let repr: FeatureFileRepr = serde_json::from_str(text)?;
    check_format(&repr.format, FORMAT_FEATURES)?;
    let modality = parse_modality_key(&repr.modality)?;
    feature_data_to_sequence(modality, repr.dim, repr.frames)
}

pub fn features_to_json(seq: &FeatureSequence) -> String {
    pretty(&FeatureFileRepr {
        format: FORMAT_FEATURES.into(),
        modality: seq.modality().to_string(),
        dim: seq.dim(),
        frames: seq.frames().to_vec(),
    })
}

pub fn read_features(path: &Path) -> Result<FeatureSequence> {
    features_from_str(&read_document(path)?)
}

pub fn write_features(path: &Path, seq: &FeatureSequence) -> Result<()> {
    write_document(path, &features_to_json(seq))
}

// ── Dictionary manifest ──────────────────────────────────────────────────

/// One manifest row: a gloss plus per-modality feature file paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub gloss: String,
    pub features: BTreeMap<Modality, PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct ManifestRepr {
    format: String,
    entries: Vec<ManifestEntryRepr>,
}

#[derive(Serialize, Deserialize)]
struct ManifestEntryRepr {
    gloss: String,
    features: BTreeMap<String, String>,
}

/// Parses a manifest document (schema only; referenced files are not read).
pub fn manifest_from_str(text: &str) -> Result<Vec<ManifestEntry>> {
    let repr: ManifestRepr = serde_json::from_str(text)?;
    check_format(&repr.format, FORMAT_MANIFEST)?;
    if repr.entries.is_empty() {
        return Err(Error::InvalidConfig("manifest lists no entries".into()));
    }
    repr.entries
        .into_iter()
        .map(|e| {
            if e.features.is_empty() {
                return Err(Error::MissingModality {
                    gloss: e.gloss.clone(),
                    modality: "any".into(),
                });
            }
            let features = e
                .features
                .into_iter()
                .map(|(k, v)| Ok((parse_modality_key(&k)?, PathBuf::from(v))))
                .collect::<Result<BTreeMap<_, _>>>()?;
            Ok(ManifestEntry {
                gloss: e.gloss,
                features,
            })
        })
        .collect()
}

/// Reads a manifest and loads every referenced feature file (paths are
/// relative to the manifest's directory). Failures name the offending entry.
pub fn load_manifest(path: &Path) -> Result<Vec<DictionaryEntry>> {
    let entries = manifest_from_str(&read_document(path)?)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    entries
        .into_iter()
        .map(|entry| {
            let mut features = BTreeMap::new();
            for (modality, rel) in entry.features {
                let file = base.join(&rel);
                let seq = read_features(&file).map_err(|e| {
                    Error::InvalidConfig(format!(
                        "entry `{}` ({}): {} [{}]",
                        entry.gloss,
                        modality,
                        e,
                        file.display()
                    ))
                })?;
                if seq.modality() != modality {
                    return Err(Error::InvalidConfig(format!(
                        "entry `{}`: file {} is tagged {} but listed as {}",
                        entry.gloss,
                        file.display(),
                        seq.modality(),
                        modality
                    )));
                }
                features.insert(modality, seq);
            }
            DictionaryEntry::new(&entry.gloss, features)
        })
        .collect()
}

// ── Dictionary archive ───────────────────────────────────────────────────

#[derive(Serialize, Deserialize)]
struct DictionaryRepr {
    format: String,
    modalities: Vec<String>,
    entries: Vec<DictEntryRepr>,
}

#[derive(Serialize, Deserialize)]
struct DictEntryRepr {
    gloss: String,
    features: BTreeMap<String, FeatureDataRepr>,
}

pub fn dictionary_from_str(text: &str) -> Result<Dictionary> {
    let repr: DictionaryRepr = serde_json::from_str(text)?;
    check_format(&repr.format, FORMAT_DICTIONARY)?;
    let modalities = repr
        .modalities
        .iter()
        .map(|m| parse_modality_key(m))
        .collect::<Result<BTreeSet<Modality>>>()?;
    let entries = repr
        .entries
        .into_iter()
        .map(|e| {
            let features = e
                .features
                .into_iter()
                .map(|(k, data)| {
                    let modality = parse_modality_key(&k)?;
                    let seq = feature_data_to_sequence(modality, data.dim, data.frames).map_err(
                        |err| Error::InvalidConfig(format!("entry `{}` ({k}): {err}", e.gloss)),
                    )?;
                    Ok((modality, seq))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            DictionaryEntry::new(&e.gloss, features)
        })
        .collect::<Result<Vec<_>>>()?;
    Dictionary::build(entries, &modalities)
}

pub fn dictionary_to_json(dict: &Dictionary) -> String {
    pretty(&DictionaryRepr {
        format: FORMAT_DICTIONARY.into(),
        modalities: dict.modalities().iter().map(|m| m.to_string()).collect(),
        entries: dict
            .entries()
            .iter()
            .map(|e| DictEntryRepr {
                gloss: e.gloss().to_string(),
                features: e
                    .features()
                    .iter()
                    .map(|(m, seq)| {
                        (
                            m.to_string(),
                            FeatureDataRepr {
                                dim: seq.dim(),
                                frames: seq.frames().to_vec(),
                            },
                        )
                    })
                    .collect(),
            })
            .collect(),
    })
}

pub fn read_dictionary(path: &Path) -> Result<Dictionary> {
    dictionary_from_str(&read_document(path)?)
}

pub fn write_dictionary(path: &Path, dict: &Dictionary) -> Result<()> {
    write_document(path, &dictionary_to_json(dict))
}

// ── Segments ─────────────────────────────────────────────────────────────

/// The segments of one continuous sentence, optionally with its reference
/// gloss sequence for later scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceSegments {
    pub reference: Option<Vec<String>>,
    pub segments: Vec<BTreeMap<Modality, FeatureSequence>>,
}

#[derive(Serialize, Deserialize)]
struct SegmentsRepr {
    format: String,
    sentences: Vec<SentenceSegmentsRepr>,
}

#[derive(Serialize, Deserialize)]
struct SentenceSegmentsRepr {
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<Vec<String>>,
    segments: Vec<SegmentRepr>,
}

#[derive(Serialize, Deserialize)]
struct SegmentRepr {
    features: BTreeMap<String, FeatureDataRepr>,
}

pub fn segments_from_str(text: &str) -> Result<Vec<SentenceSegments>> {
    let repr: SegmentsRepr = serde_json::from_str(text)?;
    check_format(&repr.format, FORMAT_SEGMENTS)?;
    repr.sentences
        .into_iter()
        .map(|s| {
            let segments = s
                .segments
                .into_iter()
                .map(|seg| {
                    seg.features
                        .into_iter()
                        .map(|(k, data)| {
                            let modality = parse_modality_key(&k)?;
                            Ok((
                                modality,
                                feature_data_to_sequence(modality, data.dim, data.frames)?,
                            ))
                        })
                        .collect::<Result<BTreeMap<_, _>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SentenceSegments {
                reference: s.reference,
                segments,
            })
        })
        .collect()
}

pub fn segments_to_json(sentences: &[SentenceSegments]) -> String {
    pretty(&SegmentsRepr {
        format: FORMAT_SEGMENTS.into(),
        sentences: sentences
            .iter()
            .map(|s| SentenceSegmentsRepr {
                reference: s.reference.clone(),
                segments: s
                    .segments
                    .iter()
                    .map(|seg| SegmentRepr {
                        features: seg
                            .iter()
                            .map(|(m, seq)| {
                                (
                                    m.to_string(),
                                    FeatureDataRepr {
                                        dim: seq.dim(),
                                        frames: seq.frames().to_vec(),
                                    },
                                )
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    })
}

pub fn read_segments(path: &Path) -> Result<Vec<SentenceSegments>> {
    segments_from_str(&read_document(path)?)
}

pub fn write_segments(path: &Path, sentences: &[SentenceSegments]) -> Result<()> {
    write_document(path, &segments_to_json(sentences))
}

// ── Distributions ────────────────────────────────────────────────────────

/// Per-sentence similarity distributions plus the gloss labels their indices
/// refer to. Spotting and synthesis both emit this document.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionsDoc {
    pub glosses: Vec<String>,
    pub seed: Option<u64>,
    pub noise: Option<NoiseConfig>,
    pub oov_dropped: Option<usize>,
    pub sentences: Vec<SentenceDistributions>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentenceDistributions {
    pub reference: Option<Vec<String>>,
    pub distributions: Vec<SimilarityDistribution>,
}

#[derive(Serialize, Deserialize)]
struct DistributionsRepr {
    format: String,
    glosses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise: Option<NoiseConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oov_dropped: Option<usize>,
    sentences: Vec<SentenceDistsRepr>,
}

#[derive(Serialize, Deserialize)]
struct SentenceDistsRepr {
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<Vec<String>>,
    distributions: Vec<DistRepr>,
}

#[derive(Serialize, Deserialize)]
struct DistRepr {
    source: SourceTag,
    scores: Vec<f64>,
}

pub fn distributions_from_str(text: &str) -> Result<DistributionsDoc> {
    let repr: DistributionsRepr = serde_json::from_str(text)?;
    check_format(&repr.format, FORMAT_DISTRIBUTIONS)?;
    if repr.glosses.is_empty() {
        return Err(Error::InvalidConfig(
            "distributions lack gloss labels".into(),
        ));
    }
    let vocab = repr.glosses.len();
    let sentences = repr
        .sentences
        .into_iter()
        .map(|s| {
            let distributions = s
                .distributions
                .into_iter()
                .map(|d| {
                    if d.scores.len() != vocab {
                        return Err(Error::LengthMismatch {
                            left: d.scores.len(),
                            right: vocab,
                        });
                    }
                    SimilarityDistribution::new(d.scores, d.source)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SentenceDistributions {
                reference: s.reference,
                distributions,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistributionsDoc {
        glosses: repr.glosses,
        seed: repr.seed,
        noise: repr.noise,
        oov_dropped: repr.oov_dropped,
        sentences,
    })
}

pub fn distributions_to_json(doc: &DistributionsDoc) -> String {
    pretty(&DistributionsRepr {
        format: FORMAT_DISTRIBUTIONS.into(),
        glosses: doc.glosses.clone(),
        seed: doc.seed,
        noise: doc.noise,
        oov_dropped: doc.oov_dropped,
        sentences: doc
            .sentences
            .iter()
            .map(|s| SentenceDistsRepr {
                reference: s.reference.clone(),
                distributions: s
                    .distributions
                    .iter()
                    .map(|d| DistRepr {
                        source: d.source(),
                        scores: d.scores().to_vec(),
                    })
                    .collect(),
            })
            .collect(),
    })
}

pub fn read_distributions(path: &Path) -> Result<DistributionsDoc> {
    distributions_from_str(&read_document(path)?)
}

pub fn write_distributions(path: &Path, doc: &DistributionsDoc) -> Result<()> {
    write_document(path, &distributions_to_json(doc))
}

// ── Hypotheses ───────────────────────────────────────────────────────────

/// Ranked beam hypotheses per sentence with the decoding configuration echo.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesesDoc {
    pub decoder: DecoderConfig,
    pub lm: String,
    pub sentences: Vec<SentenceHypotheses>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceHypotheses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<String>>,
    pub hypotheses: Vec<BeamHypothesis>,
}

#[derive(Serialize, Deserialize)]
struct HypothesesRepr {
    format: String,
    #[serde(flatten)]
    doc: HypothesesDoc,
}

pub fn hypotheses_from_str(text: &str) -> Result<HypothesesDoc> {
    let repr: HypothesesRepr = serde_json::from_str(text)?;
    check_format(&repr.format, FORMAT_HYPOTHESES)?;
    for s in &repr.doc.sentences {
        for h in &s.hypotheses {
            if !h.score.is_finite() {
                return Err(Error::NonFinite("hypothesis score".into()));
            }
        }
    }
    Ok(repr.doc)
}

pub fn hypotheses_to_json(doc: &HypothesesDoc) -> String {
    pretty(&HypothesesRepr {
        format: FORMAT_HYPOTHESES.into(),
        doc: doc.clone(),
    })
}

pub fn read_hypotheses(path: &Path) -> Result<HypothesesDoc> {
    hypotheses_from_str(&read_document(path)?)
}

pub fn write_hypotheses(path: &Path, doc: &HypothesesDoc) -> Result<()> {
    write_document(path, &hypotheses_to_json(doc))
}

// ── Reports and sweeps ───────────────────────────────────────────────────

/// An evaluation report with its configuration echo (flags, seeds, paths) for
/// reproducibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub config: serde_json::Value,
    pub report: EvalReport,
}

#[derive(Serialize, Deserialize)]
struct ReportRepr {
    format: String,
    #[serde(flatten)]
    doc: ReportDoc,
}

pub fn report_from_str(text: &str) -> Result<ReportDoc> {
    let repr: ReportRepr = serde_json::from_str(text)?;
    check_format(&repr.format, FORMAT_REPORT)?;
    Ok(repr.doc)
}

pub fn report_to_json(doc: &ReportDoc) -> String {
    pretty(&ReportRepr {
        format: FORMAT_REPORT.into(),
        doc: doc.clone(),
    })
}

pub fn write_report(path: &Path, doc: &ReportDoc) -> Result<()> {
    write_document(path, &report_to_json(doc))
}

/// A filled sweep grid with its configuration echo.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub config: serde_json::Value,
    pub grid: SweepGrid,
}

#[derive(Serialize, Deserialize)]
struct SweepRepr {
    format: String,
    #[serde(flatten)]
    doc: SweepDoc,
}

pub fn sweep_from_str(text: &str) -> Result<SweepDoc> {
    let repr: SweepRepr = serde_json::from_str(text)?;
    check_format(&repr.format, FORMAT_SWEEP)?;
    Ok(repr.doc)
}

pub fn sweep_to_json(doc: &SweepDoc) -> String {
    pretty(&SweepRepr {
        format: FORMAT_SWEEP.into(),
        doc: doc.clone(),
    })
}

pub fn write_sweep(path: &Path, doc: &SweepDoc) -> Result<()> {
    write_document(path, &sweep_to_json(doc))
}

// ── Line-based formats ───────────────────────────────────────────────────

fn line_error(path: &str, line: usize, message: impl Into<String>) -> Error {
    Error::ParseLine {
        path: path.to_string(),
        line,
        message: message.into(),
    }
}

/// Parses a one-word-per-line list: trimmed, lowercased, blank lines skipped,
/// duplicates keep their first (most frequent) position.
pub fn parse_word_list(text: &str) -> Result<Vec<String>> {
    let mut seen = std::collections::HashSet::new();
    let mut words = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let word = line.trim();
        if word.is_empty() {
            continue;
        }
        if word.split_whitespace().count() != 1 {
            return Err(line_error(
                "<word list>",
                i + 1,
                format!("expected one word per line, got `{word}`"),
            ));
        }
        let word = word.to_lowercase();
        if seen.insert(word.clone()) {
            words.push(word);
        }
    }
    Ok(words)
}

pub fn read_word_list(path: &Path) -> Result<Vec<String>> {
    parse_word_list(&read_document(path)?).map_err(|e| rewrite_path(e, path))
}

/// Parses a tagged corpus: one sentence per line, tokens as `word/TAG`.
/// Blank lines are skipped. Tags must come from the UPOS inventory.
pub fn parse_tagged_corpus(text: &str) -> Result<Vec<TaggedSentence>> {
    let mut sentences = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let tokens = line
            .split_whitespace()
            .map(|token| {
                let (word, tag) = token.rsplit_once('/').ok_or_else(|| {
                    line_error(
                        "<tagged corpus>",
                        i + 1,
                        format!("token `{token}` is missing its /TAG suffix"),
                    )
                })?;
                Ok(TaggedToken {
                    word: word.to_string(),
                    tag: tag.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sentence = TaggedSentence::new(tokens)
            .map_err(|e| line_error("<tagged corpus>", i + 1, e.to_string()))?;
        sentences.push(sentence);
    }
    Ok(sentences)
}

pub fn read_tagged_corpus(path: &Path) -> Result<Vec<TaggedSentence>> {
    parse_tagged_corpus(&read_document(path)?).map_err(|e| rewrite_path(e, path))
}

/// Parses a gloss corpus: one sentence per line, space-separated glosses,
/// canonicalized. Blank lines are skipped.
pub fn parse_gloss_corpus(text: &str) -> Result<Vec<Vec<String>>> {
    Ok(text
        .lines()
        .filter_map(|line| {
            let glosses: Vec<String> = line
                .split_whitespace()
                .map(crate::dictionary::canonicalize_gloss)
                .collect();
            (!glosses.is_empty()).then_some(glosses)
        })
        .collect())
}

pub fn read_gloss_corpus(path: &Path) -> Result<Vec<Vec<String>>> {
    parse_gloss_corpus(&read_document(path)?).map_err(|e| rewrite_path(e, path))
}

/// Parses a word-vector table: `word v1 v2 ...` per line. Dimensions must be
/// uniform and positive; duplicate words are rejected.
pub fn parse_word_vectors(text: &str) -> Result<HashMap<String, Vec<f64>>> {
    let mut vectors = HashMap::new();
    let mut dim: Option<usize> = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let word = parts.next().expect("nonblank line").to_lowercase();
        let values = parts
            .map(|p| {
                p.parse::<f64>()
                    .map_err(|_| line_error("<word vectors>", i + 1, format!("bad number `{p}`")))
                    .and_then(|v| {
                        if v.is_finite() {
                            Ok(v)
                        } else {
                            Err(line_error("<word vectors>", i + 1, "non-finite value"))
                        }
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.is_empty() {
            return Err(line_error("<word vectors>", i + 1, "word without values"));
        }
        match dim {
            None => dim = Some(values.len()),
            Some(d) if d != values.len() => {
                return Err(line_error(
                    "<word vectors>",
                    i + 1,
                    format!("dimension {} != {}", values.len(), d),
                ));
            }
            _ => {}
        }
        if vectors.insert(word.clone(), values).is_some() {
            return Err(line_error(
                "<word vectors>",
                i + 1,
                format!("duplicate word `{word}`"),
            ));
        }
    }
    Ok(vectors)
}

pub fn read_word_vectors(path: &Path) -> Result<HashMap<String, Vec<f64>>> {
    parse_word_vectors(&read_document(path)?).map_err(|e| rewrite_path(e, path))
}

fn rewrite_path(e: Error, path: &Path) -> Error {
    match e {
        Error::ParseLine { line, message, .. } => Error::ParseLine {
            path: path.display().to_string(),
            line,
            message,
        },
        other => other,
    }
}
