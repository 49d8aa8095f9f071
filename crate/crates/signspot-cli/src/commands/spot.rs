use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use signspot::decoder::{normalize_and_topk, DecoderConfig};
use signspot::error::Result;
use signspot::formats::{self, DistributionsDoc, SentenceDistributions};
use signspot::pipeline::{spot_segments, VariantDicts};

use crate::args::SpotArgs;

#[derive(Debug, Args)]
pub struct SpotCmdArgs {
    /// Segments file (per-sentence feature sequences)
    #[arg(long)]
    pub segments: PathBuf,
    /// Dictionary archive from `dict-build`
    #[arg(long)]
    pub dict: PathBuf,
    /// Output distributions file
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub spot: SpotArgs,
    /// Candidates shown in the preview
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,
    /// Softmax temperature for the preview emissions
    #[arg(long, default_value_t = 1.0)]
    pub temperature: f64,
}

pub fn run(args: &SpotCmdArgs) -> Result<()> {
    let params = args.spot.to_params()?;
    let dict = formats::read_dictionary(&args.dict)?;
    let sentences = formats::read_segments(&args.segments)?;
    let variants = VariantDicts::for_strategy(&dict, params.strategy, params.resample_mid)?;
    let glosses = dict.glosses();

    let spotted: Vec<SentenceDistributions> = sentences
        .par_iter()
        .map(|sentence| {
            Ok(SentenceDistributions {
                reference: sentence.reference.clone(),
                distributions: spot_segments(&sentence.segments, &variants, &params)?,
            })
        })
        .collect::<Result<_>>()?;

    // Preview the top-k candidates per segment.
    let preview = DecoderConfig {
        top_k: args.top_k.min(glosses.len()),
        beam_width: 1,
        alpha_bs: 1.0,
        softmax_temperature: args.temperature,
        context_window: None,
    };
    for (s, sentence) in spotted.iter().enumerate() {
        for (x, dist) in sentence.distributions.iter().enumerate() {
            let set = normalize_and_topk(dist, &glosses, x, &preview)?;
            let rendered: Vec<String> = set
                .candidates()
                .iter()
                .map(|c| format!("{}({:.3})", c.gloss, c.emission))
                .collect();
            println!("sentence {s} segment {x}: {}", rendered.join(" "));
        }
    }

    let doc = DistributionsDoc {
        glosses,
        seed: None,
        noise: None,
        oov_dropped: None,
        sentences: spotted,
    };
    formats::write_distributions(&args.out, &doc)?;
    println!(
        "{} sentence(s) spotted with {} -> {}",
        doc.sentences.len(),
        params.strategy,
        args.out.display()
    );
    Ok(())
}
