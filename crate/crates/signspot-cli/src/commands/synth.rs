use std::collections::HashSet;
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use signspot::error::{Error, Result};
use signspot::formats::{self, DistributionsDoc, SentenceDistributions};
use signspot::synth::{
    build_vocab, synthesize_sentence, EmbeddedVocabulary, FileEmbedder, NoiseConfig,
    TrigramHashEmbedder, WordEmbedder, WrPlacement,
};

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// POS-tagged corpus, one sentence per line (word/TAG tokens)
    #[arg(long)]
    pub corpus: PathBuf,
    /// Word frequency list, most frequent first
    #[arg(long)]
    pub freq_list: PathBuf,
    /// Sign lexicon word list
    #[arg(long)]
    pub sign_lexicon: PathBuf,
    /// Output distributions file
    #[arg(long)]
    pub out: PathBuf,
    /// Vocabulary size (reference sizes: 1500, 2000, 3000, 4373)
    #[arg(long, default_value_t = 1500)]
    pub vocab_size: usize,
    /// Word-replacement rate in [0, 1]
    #[arg(long, default_value_t = 0.0)]
    pub wr: f64,
    /// Distribution-corruption count
    #[arg(long, default_value_t = 0)]
    pub dc: usize,
    /// Corpus seed; each sentence derives its own stream
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where the displaced top-1 goes: runner-up, swap, demote-last
    #[arg(long, default_value = "runner-up")]
    pub wr_mode: WrPlacement,
    /// Word embedder: trigram (built-in) or file
    #[arg(long, default_value = "trigram")]
    pub embedder: String,
    /// Bucket width of the trigram embedder
    #[arg(long, default_value_t = 256)]
    pub embed_width: usize,
    /// Word-vector table for the file embedder
    #[arg(long)]
    pub embed_vectors: Option<PathBuf>,
    /// Keep at most this many sentences from the corpus
    #[arg(long)]
    pub limit: Option<usize>,
}

pub fn run(args: &SynthArgs) -> Result<()> {
    let freq = formats::read_word_list(&args.freq_list)?;
    let lexicon: HashSet<String> = formats::read_word_list(&args.sign_lexicon)?
        .into_iter()
        .collect();
    let vocab = build_vocab(&freq, &lexicon, args.vocab_size)?;
    let embedder: Box<dyn WordEmbedder> = match args.embedder.to_ascii_lowercase().as_str() {
        "trigram" => Box::new(TrigramHashEmbedder::new(args.embed_width)?),
        "file" => {
            let path = args.embed_vectors.as_ref().ok_or_else(|| {
                Error::InvalidConfig("file embedder needs --embed-vectors".into())
            })?;
            Box::new(FileEmbedder::new(formats::read_word_vectors(path)?)?)
        }
        other => return Err(Error::InvalidConfig(format!("unknown embedder `{other}`"))),
    };
    let embedded = EmbeddedVocabulary::new(vocab, embedder.as_ref())?;
    let noise = NoiseConfig {
        wr_rate: args.wr,
        dc_count: args.dc,
        seed: args.seed,
        wr_placement: args.wr_mode,
    };
    noise.validate()?;

    let corpus = formats::read_tagged_corpus(&args.corpus)?;
    let corpus = match args.limit {
        Some(n) => &corpus[..n.min(corpus.len())],
        None => &corpus[..],
    };
    let synths = corpus
        .par_iter()
        .enumerate()
        .map(|(i, sentence)| synthesize_sentence(sentence, &embedded, &noise, i as u64))
        .collect::<Result<Vec<_>>>()?;

    let mut oov_dropped = 0;
    let mut skipped_empty = 0;
    let mut sentences = Vec::with_capacity(synths.len());
    for synth in synths {
        oov_dropped += synth.oov_dropped;
        if synth.reference.is_empty() {
            skipped_empty += 1;
            continue;
        }
        sentences.push(SentenceDistributions {
            reference: Some(synth.reference),
            distributions: synth.distributions,
        });
    }
    let segment_count: usize = sentences.iter().map(|s| s.distributions.len()).sum();
    let doc = DistributionsDoc {
        glosses: embedded.vocab().gloss_labels(),
        seed: Some(args.seed),
        noise: Some(noise),
        oov_dropped: Some(oov_dropped),
        sentences,
    };
    formats::write_distributions(&args.out, &doc)?;
    println!(
        "V={} sentences={} segments={} oov_dropped={oov_dropped} skipped_empty={skipped_empty} -> {}",
        doc.glosses.len(),
        doc.sentences.len(),
        segment_count,
        args.out.display()
    );
    Ok(())
}
