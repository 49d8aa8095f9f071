use std::collections::HashSet;
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use signspot::decoder::{beam_search, normalize_and_topk};
use signspot::error::{Error, Result};
use signspot::eval::{
    default_grid, run_sweep, EvalReport, SweepGrid, SweepMetric, SweepParameter, SweepRow,
};
use signspot::formats::{self, SweepDoc};
use signspot::pipeline::SpotDataset;
use signspot::synth::{
    build_vocab, synthesize_sentence, EmbeddedVocabulary, NoiseConfig, TrigramHashEmbedder,
    WrPlacement,
};

use crate::args::{DecoderArgs, LmArgs, SpotArgs};
use crate::commands::build_lm;

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Swept parameter: alpha-s-i3d, alpha-s-rh, alpha-late, alpha-ens
    /// (spotting accuracy) or vocab-size, wr, dc (synthetic noise WER)
    #[arg(long)]
    pub parameter: String,
    /// Comma-separated grid values (defaults depend on the parameter)
    #[arg(long)]
    pub values: Option<String>,
    /// Output sweep file
    #[arg(long)]
    pub out: PathBuf,

    // Spotting-sweep inputs
    /// Segments file with per-segment references (spot sweeps)
    #[arg(long)]
    pub segments: Option<PathBuf>,
    /// Dictionary archive (spot sweeps)
    #[arg(long)]
    pub dict: Option<PathBuf>,
    #[command(flatten)]
    pub spot: SpotArgs,

    // Noise-sweep inputs
    /// POS-tagged corpus (noise sweeps)
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Frequency list (noise sweeps)
    #[arg(long)]
    pub freq_list: Option<PathBuf>,
    /// Sign lexicon (noise sweeps)
    #[arg(long)]
    pub sign_lexicon: Option<PathBuf>,
    /// Fixed vocabulary size while sweeping wr/dc
    #[arg(long, default_value_t = 1500)]
    pub vocab_size: usize,
    /// Fixed word-replacement rate while sweeping other parameters
    #[arg(long, default_value_t = 0.0)]
    pub wr: f64,
    /// Fixed distribution-corruption count while sweeping other parameters
    #[arg(long, default_value_t = 0)]
    pub dc: usize,
    /// Corpus seed, fixed across the grid
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Word-replacement placement mode
    #[arg(long, default_value = "runner-up")]
    pub wr_mode: WrPlacement,
    /// Trigram embedder bucket width
    #[arg(long, default_value_t = 256)]
    pub embed_width: usize,
    /// Keep at most this many corpus sentences
    #[arg(long)]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    #[command(flatten)]
    pub lm: LmArgs,
}

fn parse_values(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("bad grid value `{s}`")))
        })
        .collect()
}

pub fn run(args: &SweepArgs) -> Result<()> {
    let parameter = args.parameter.to_ascii_lowercase().replace('_', "-");
    let grid = match parameter.as_str() {
        "alpha-s-i3d" | "alpha-s-rh" | "alpha-late" | "alpha-ens" => spot_sweep(args, &parameter)?,
        "vocab-size" | "wr" | "dc" => noise_sweep(args, &parameter)?,
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown sweep parameter `{other}`"
            )))
        }
    };
    print!("{}", grid.render_text());
    write_grid(args, grid)
}

fn write_grid(args: &SweepArgs, grid: SweepGrid) -> Result<()> {
    let doc = SweepDoc {
        config: serde_json::json!({
            "parameter": args.parameter,
            "seed": args.seed,
            "lm": args.lm.descriptor(),
        }),
        grid,
    };
    formats::write_sweep(&args.out, &doc)?;
    println!("sweep written to {}", args.out.display());
    Ok(())
}

fn spot_sweep(args: &SweepArgs, parameter: &str) -> Result<SweepGrid> {
    let parameter: SweepParameter = parameter.parse()?;
    let (segments_path, dict_path) = match (&args.segments, &args.dict) {
        (Some(s), Some(d)) => (s, d),
        _ => {
            return Err(Error::InvalidConfig(
                "alpha sweeps need --segments and --dict".into(),
            ))
        }
    };
    let dict = formats::read_dictionary(dict_path)?;
    let sentences = formats::read_segments(segments_path)?;
    let mut segments = Vec::new();
    let mut targets = Vec::new();
    for (i, sentence) in sentences.into_iter().enumerate() {
        let reference = sentence.reference.ok_or_else(|| {
            Error::InvalidConfig(format!("sentence {i} has no reference glosses"))
        })?;
        if reference.len() != sentence.segments.len() {
            return Err(Error::LengthMismatch {
                left: reference.len(),
                right: sentence.segments.len(),
            });
        }
        for (gloss, segment) in reference.iter().zip(sentence.segments) {
            let target = dict
                .index_of(gloss)
                .ok_or_else(|| Error::OutOfVocabulary(gloss.clone()))?;
            segments.push(segment);
            targets.push(target);
        }
    }
    let dataset = SpotDataset::new(dict, segments, targets)?;
    let values = match &args.values {
        Some(spec) => parse_values(spec)?,
        None => default_grid(),
    };
    let base = args.spot.to_params()?;
    match run_sweep(&base, parameter, &values, &dataset) {
        Ok(grid) => Ok(grid),
        Err(sweep_error) => {
            // keep completed rows on disk before surfacing the failure
            write_grid(args, sweep_error.partial.clone()).ok();
            Err(sweep_error.source)
        }
    }
}

fn noise_sweep(args: &SweepArgs, parameter: &str) -> Result<SweepGrid> {
    let (corpus_path, freq_path, lexicon_path) =
        match (&args.corpus, &args.freq_list, &args.sign_lexicon) {
            (Some(c), Some(f), Some(l)) => (c, f, l),
            _ => {
                return Err(Error::InvalidConfig(
                    "noise sweeps need --corpus, --freq-list and --sign-lexicon".into(),
                ))
            }
        };
    let values = match &args.values {
        Some(spec) => parse_values(spec)?,
        None => match parameter {
            "vocab-size" => vec![1500.0, 2000.0, 4373.0],
            "wr" => vec![0.25, 0.5, 0.75, 1.0],
            _ => vec![5.0, 10.0, 15.0, 20.0],
        },
    };
    let mut values = values;
    values.sort_by(f64::total_cmp);

    let corpus = formats::read_tagged_corpus(corpus_path)?;
    let corpus = match args.limit {
        Some(n) => corpus[..n.min(corpus.len())].to_vec(),
        None => corpus,
    };
    let freq = formats::read_word_list(freq_path)?;
    let lexicon: HashSet<String> = formats::read_word_list(lexicon_path)?.into_iter().collect();
    let config = args.decoder.to_config()?;

    let mut grid = SweepGrid {
        parameter_name: parameter.replace('-', "_"),
        metric: SweepMetric::Wer,
        rows: Vec::with_capacity(values.len()),
    };
    for value in values {
        let mut noise = NoiseConfig {
            wr_rate: args.wr,
            dc_count: args.dc,
            seed: args.seed,
            wr_placement: args.wr_mode,
        };
        let mut vocab_size = args.vocab_size;
        match parameter {
            "vocab-size" => {
                if value.fract() != 0.0 || value < 1.0 {
                    return Err(Error::InvalidConfig(format!(
                        "vocab-size grid value {value} is not a positive integer"
                    )));
                }
                vocab_size = value as usize;
            }
            "wr" => noise.wr_rate = value,
            _ => {
                if value.fract() != 0.0 || value < 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "dc grid value {value} is not a nonnegative integer"
                    )));
                }
                noise.dc_count = value as usize;
            }
        }
        noise.validate()?;

        let row = (|| -> Result<SweepRow> {
            let vocab = build_vocab(&freq, &lexicon, vocab_size)?;
            let embedded =
                EmbeddedVocabulary::new(vocab, &TrigramHashEmbedder::new(args.embed_width)?)?;
            let labels = embedded.vocab().gloss_labels();
            let synths = corpus
                .par_iter()
                .enumerate()
                .map(|(i, s)| synthesize_sentence(s, &embedded, &noise, i as u64))
                .collect::<Result<Vec<_>>>()?;
            let kept: Vec<_> = synths
                .into_iter()
                .filter(|s| !s.reference.is_empty())
                .collect();
            let refs: Vec<Vec<String>> = kept.iter().map(|s| s.reference.clone()).collect();
            let lm = build_lm(&args.lm, Some(refs))?;
            let decoded = kept
                .par_iter()
                .map(|synth| {
                    let sets = synth
                        .distributions
                        .iter()
                        .enumerate()
                        .map(|(x, d)| normalize_and_topk(d, &labels, x, &config))
                        .collect::<Result<Vec<_>>>()?;
                    let hyps = beam_search(&sets, lm.as_ref(), &config)?;
                    Ok((synth.reference.clone(), hyps))
                })
                .collect::<Result<Vec<_>>>()?;
            let report = EvalReport::from_decodes(&decoded, 5)?;
            Ok(SweepRow {
                value,
                top1: report.wer_top1,
                top5: report.wer_top5,
            })
        })();
        match row {
            Ok(row) => grid.rows.push(row),
            Err(e) => {
                write_grid(args, grid.clone()).ok();
                return Err(e);
            }
        }
    }
    Ok(grid)
}
