use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use signspot::decoder::{beam_search, normalize_and_topk};
use signspot::error::{Error, Result};
use signspot::formats::{self, HypothesesDoc, SentenceHypotheses};

use crate::args::{DecoderArgs, LmArgs};
use crate::commands::build_lm;

#[derive(Debug, Args)]
pub struct DisambiguateArgs {
    /// Distributions file from `spot` or `synth`
    #[arg(long)]
    pub dists: PathBuf,
    /// Output hypotheses file
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    #[command(flatten)]
    pub lm: LmArgs,
}

pub fn run(args: &DisambiguateArgs) -> Result<()> {
    let config = args.decoder.to_config()?;
    let doc = formats::read_distributions(&args.dists)?;
    if config.top_k > doc.glosses.len() {
        return Err(Error::InvalidConfig(format!(
            "top_k {} exceeds the vocabulary size {}",
            config.top_k,
            doc.glosses.len()
        )));
    }
    let refs_corpus: Option<Vec<Vec<String>>> =
        doc.sentences.iter().map(|s| s.reference.clone()).collect();
    let lm = build_lm(&args.lm, refs_corpus)?;

    let sentences: Vec<SentenceHypotheses> = doc
        .sentences
        .par_iter()
        .map(|sentence| {
            let sets = sentence
                .distributions
                .iter()
                .enumerate()
                .map(|(x, dist)| normalize_and_topk(dist, &doc.glosses, x, &config))
                .collect::<Result<Vec<_>>>()?;
            let hypotheses = beam_search(&sets, lm.as_ref(), &config)?;
            Ok(SentenceHypotheses {
                reference: sentence.reference.clone(),
                hypotheses,
            })
        })
        .collect::<Result<_>>()?;

    for sentence in &sentences {
        if let Some(top) = sentence.hypotheses.first() {
            println!("{}", top.glosses.join(" "));
        }
    }

    let out = HypothesesDoc {
        decoder: config,
        lm: args.lm.descriptor(),
        sentences,
    };
    formats::write_hypotheses(&args.out, &out)?;
    Ok(())
}
