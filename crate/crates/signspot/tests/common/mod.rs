//! Shared test support: independent oracles, random fixtures, and a stub
//! logprob server. Oracles deliberately take different implementation routes
//! from the library code they check.

#![allow(dead_code)]

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;
use std::time::Duration;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use signspot::decoder::{Candidate, CandidateSet};
use signspot::dictionary::{Dictionary, DictionaryEntry};
use signspot::features::{FeatureSequence, Modality};
use signspot::lm::{NgramLm, TransitionModel, TransitionQuery};
use signspot::pipeline::SpotDataset;

// ── Brute-force DTW: explicit path enumeration ──────────────────────────

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Minimum cumulative cost over all monotone paths, by exhaustive recursion
/// from (0,0) to (Ta-1, Tb-1). Exponential; keep T <= 6.
pub fn dtw_brute_force(a: &FeatureSequence, b: &FeatureSequence) -> f64 {
    fn go(a: &[Vec<f64>], b: &[Vec<f64>], i: usize, j: usize) -> f64 {
        let here = euclid(&a[i], &b[j]);
        if i + 1 == a.len() && j + 1 == b.len() {
            return here;
        }
        let mut best = f64::INFINITY;
        if i + 1 < a.len() {
            best = best.min(go(a, b, i + 1, j));
        }
        if j + 1 < b.len() {
            best = best.min(go(a, b, i, j + 1));
        }
        if i + 1 < a.len() && j + 1 < b.len() {
            best = best.min(go(a, b, i + 1, j + 1));
        }
        here + best
    }
    go(a.frames(), b.frames(), 0, 0)
}

pub fn random_sequence(rng: &mut ChaCha8Rng, max_t: usize, max_dim: usize) -> FeatureSequence {
    let t = rng.random_range(1..=max_t);
    let dim = rng.random_range(1..=max_dim);
    let frames = (0..t)
        .map(|_| (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect();
    FeatureSequence::new(Modality::Synth, frames).unwrap()
}

/// A sequence pair with matching dims, for kernels that require them.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    max_t: usize,
    max_dim: usize,
) -> (FeatureSequence, FeatureSequence) {
    let dim = rng.random_range(1..=max_dim);
    let gen = |rng: &mut ChaCha8Rng| {
        let t = rng.random_range(1..=max_t);
        let frames = (0..t)
            .map(|_| (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        FeatureSequence::new(Modality::Synth, frames).unwrap()
    };
    (gen(rng), gen(rng))
}

// ── Brute-force edit distance: top-down recursion with memo ─────────────

fn ed_go(
    a: &[String],
    b: &[String],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), usize>,
) -> usize {
    if i == a.len() {
        return b.len() - j;
    }
    if j == b.len() {
        return a.len() - i;
    }
    if let Some(&v) = memo.get(&(i, j)) {
        return v;
    }
    let sub = ed_go(a, b, i + 1, j + 1, memo) + usize::from(a[i] != b[j]);
    let del = ed_go(a, b, i + 1, j, memo) + 1;
    let ins = ed_go(a, b, i, j + 1, memo) + 1;
    let v = sub.min(del).min(ins);
    memo.insert((i, j), v);
    v
}

pub fn edit_distance_brute(a: &[String], b: &[String]) -> usize {
    ed_go(a, b, 0, 0, &mut HashMap::new())
}

pub fn random_gloss_seq(
    rng: &mut ChaCha8Rng,
    vocab: &[&str],
    min_len: usize,
    max_len: usize,
) -> Vec<String> {
    let len = rng.random_range(min_len..=max_len);
    (0..len)
        .map(|_| vocab[rng.random_range(0..vocab.len())].to_string())
        .collect()
}

// ── Exhaustive beam-search oracle ────────────────────────────────────────

/// Scores every sequence in the Cartesian product of the candidate sets with
/// the decoding objective and returns the best, using the decoder's own
/// tie-break (score, then last emission, then lexicographic glosses).
pub fn exhaustive_best(
    sets: &[CandidateSet],
    lm: &dyn TransitionModel,
    alpha_bs: f64,
) -> (Vec<String>, f64) {
    let mut best: Option<(Vec<String>, f64, f64)> = None;
    let mut assignment = vec![0usize; sets.len()];
    loop {
        let mut context: Vec<String> = Vec::new();
        let mut score = 0.0;
        let mut last_emission = 0.0;
        for (set, &pick) in sets.iter().zip(&assignment) {
            let candidates: Vec<String> =
                set.candidates().iter().map(|c| c.gloss.clone()).collect();
            let query = TransitionQuery::new(context.clone(), candidates).unwrap();
            let probs = lm.transition_probs(&query).unwrap();
            let cand = &set.candidates()[pick];
            score += probs[pick].ln() + alpha_bs * cand.emission;
            last_emission = cand.emission;
            context.push(cand.gloss.clone());
        }
        let better = match &best {
            None => true,
            Some((seq, s, em)) => {
                score > *s
                    || (score == *s && last_emission > *em)
                    || (score == *s && last_emission == *em && context < *seq)
            }
        };
        if better {
            best = Some((context, score, last_emission));
        }
        // advance the mixed-radix counter
        let mut pos = sets.len();
        loop {
            if pos == 0 {
                let (seq, score, _) = best.unwrap();
                return (seq, score);
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < sets[pos].len() {
                break;
            }
            assignment[pos] = 0;
        }
    }
}

// ── Random decoding instances ────────────────────────────────────────────

pub const BEAM_VOCAB: [&str; 8] = [
    "RAIN", "SUN", "WALK", "TRAIN", "HOME", "LOVE", "DAY", "NIGHT",
];

/// A random decoding problem: X <= 4 segments with k <= 3 candidates each,
/// plus a bigram model trained on a small random corpus.
pub fn random_beam_instance(rng: &mut ChaCha8Rng) -> (Vec<CandidateSet>, NgramLm) {
    let x = rng.random_range(1..=4usize);
    let sets = (0..x)
        .map(|i| {
            let k = rng.random_range(1..=3usize);
            let mut picks: Vec<&str> = BEAM_VOCAB.to_vec();
            for j in (1..picks.len()).rev() {
                picks.swap(j, rng.random_range(0..=j));
            }
            let mut emissions: Vec<f64> = (0..k).map(|_| rng.random_range(0.01..1.0)).collect();
            emissions.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let candidates = emissions
                .into_iter()
                .zip(&picks)
                .map(|(emission, gloss)| Candidate {
                    gloss: gloss.to_string(),
                    emission,
                })
                .collect();
            CandidateSet::new(i, candidates).unwrap()
        })
        .collect();
    let corpus: Vec<Vec<String>> = (0..rng.random_range(3..8usize))
        .map(|_| random_gloss_seq(rng, &BEAM_VOCAB, 1, 5))
        .collect();
    let lm = NgramLm::train(&corpus, 2, 0.1).unwrap();
    (sets, lm)
}

// ── Spot sweep fixture ───────────────────────────────────────────────────

/// A labelled spotting dataset over a small multi-modality dictionary, with
/// three noisy query segments per entry. With `identical_modalities` the RH
/// and LH streams copy the I3D stream, making late fusion weight-invariant.
pub fn spot_sweep_fixture(identical_modalities: bool) -> SpotDataset {
    let mut rng = seeded(0x5EE9);
    let vocab = 8;
    let dim = 3;
    let mut entries = Vec::new();
    let mut prototypes = Vec::new();
    for i in 0..vocab {
        let frames: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let mut features = std::collections::BTreeMap::new();
        features.insert(
            Modality::I3d,
            FeatureSequence::new(Modality::I3d, frames.clone()).unwrap(),
        );
        let rh_frames: Vec<Vec<f64>> = if identical_modalities {
            frames.clone()
        } else {
            (0..3)
                .map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
                .collect()
        };
        features.insert(
            Modality::Rh,
            FeatureSequence::new(Modality::Rh, rh_frames.clone()).unwrap(),
        );
        features.insert(
            Modality::Lh,
            FeatureSequence::new(Modality::Lh, rh_frames).unwrap(),
        );
        entries.push(DictionaryEntry::new(&format!("G{i}"), features).unwrap());
        prototypes.push(frames);
    }
    let dictionary =
        Dictionary::build(entries, &[Modality::I3d, Modality::Rh, Modality::Lh].into()).unwrap();
    let mut segments = Vec::new();
    let mut targets = Vec::new();
    for (i, proto) in prototypes.iter().enumerate() {
        for _ in 0..3 {
            let noisy: Vec<Vec<f64>> = proto
                .iter()
                .map(|f| f.iter().map(|v| v + rng.random_range(-0.2..0.2)).collect())
                .collect();
            let mut features = std::collections::BTreeMap::new();
            features.insert(
                Modality::I3d,
                FeatureSequence::new(Modality::I3d, noisy.clone()).unwrap(),
            );
            features.insert(
                Modality::Rh,
                FeatureSequence::new(Modality::Rh, noisy.clone()).unwrap(),
            );
            features.insert(
                Modality::Lh,
                FeatureSequence::new(Modality::Lh, noisy).unwrap(),
            );
            segments.push(features);
            targets.push(i);
        }
    }
    SpotDataset::new(dictionary, segments, targets).unwrap()
}

// ── Stub logprob server ──────────────────────────────────────────────────

/// What the stub does with each request.
#[derive(Clone)]
pub enum StubBehavior {
    /// Respond with the logprobs mapped from the request's continuation
    /// (fallback vector for unknown continuations).
    PerContinuation(HashMap<String, Vec<f64>>, Vec<f64>),
    /// Always respond with this HTTP status and an empty JSON body.
    Status(u16),
    /// Respond 200 with a non-JSON body.
    Garbage,
    /// Sleep before answering, then respond with the given logprobs.
    Delay(Duration, Vec<f64>),
    /// Fail with 500 for the first `failures` requests, then succeed.
    FailThenSucceed { failures: u32, logprobs: Vec<f64> },
}

pub struct StubLmServer {
    pub url: String,
    pub hits: Arc<AtomicU32>,
}

impl StubLmServer {
    pub fn start(behavior: StubBehavior) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").expect("bind stub server");
        let addr = listener.local_addr().unwrap();
        let hits = Arc::new(AtomicU32::new(0));
        let hits_bg = hits.clone();
        std::thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(stream) = stream else { continue };
                let behavior = behavior.clone();
                let hits = hits_bg.clone();
                std::thread::spawn(move || handle(stream, behavior, hits));
            }
        });
        Self {
            url: format!("http://{addr}/score"),
            hits,
        }
    }

    pub fn hit_count(&self) -> u32 {
        self.hits.load(Ordering::SeqCst)
    }
}

fn handle(mut stream: TcpStream, behavior: StubBehavior, hits: Arc<AtomicU32>) {
    stream.set_read_timeout(Some(Duration::from_secs(5))).ok();
    let mut reader = BufReader::new(stream.try_clone().expect("clone stream"));
    let mut content_length = 0usize;
    let mut line = String::new();
    // request line + headers
    loop {
        line.clear();
        if reader.read_line(&mut line).is_err() || line.trim_end().is_empty() {
            break;
        }
        let lower = line.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("content-length:") {
            content_length = rest.trim().parse().unwrap_or(0);
        }
    }
    let mut body = vec![0u8; content_length];
    if reader.read_exact(&mut body).is_err() {
        return;
    }
    let attempt = hits.fetch_add(1, Ordering::SeqCst) + 1;
    let respond = |stream: &mut TcpStream, status: &str, body: &str| {
        let response = format!(
            "HTTP/1.1 {status}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
            body.len()
        );
        let _ = stream.write_all(response.as_bytes());
    };
    let logprob_body = |values: &[f64]| {
        serde_json::to_string(&serde_json::json!({ "token_logprobs": values })).unwrap()
    };
    match behavior {
        StubBehavior::PerContinuation(map, fallback) => {
            let continuation = serde_json::from_slice::<serde_json::Value>(&body)
                .ok()
                .and_then(|v| v["continuation"].as_str().map(str::to_string))
                .unwrap_or_default();
            let values = map.get(&continuation).cloned().unwrap_or(fallback);
            respond(&mut stream, "200 OK", &logprob_body(&values));
        }
        StubBehavior::Status(code) => {
            respond(&mut stream, &format!("{code} Stub Error"), "{}");
        }
        StubBehavior::Garbage => {
            respond(&mut stream, "200 OK", "this is not json");
        }
        StubBehavior::Delay(delay, values) => {
            std::thread::sleep(delay);
            respond(&mut stream, "200 OK", &logprob_body(&values));
        }
        StubBehavior::FailThenSucceed { failures, logprobs } => {
            if attempt <= failures {
                respond(&mut stream, "500 Stub Error", "{}");
            } else {
                respond(&mut stream, "200 OK", &logprob_body(&logprobs));
            }
        }
    }
}

// ── Misc ─────────────────────────────────────────────────────────────────

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn softmax_reference(values: &[f64]) -> Vec<f64> {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = values.iter().map(|v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.iter().map(|e| e / sum).collect()
}
