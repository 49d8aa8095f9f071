use std::path::PathBuf;

use clap::Args;
use signspot::error::{Error, Result};
use signspot::eval::EvalReport;
use signspot::formats::{self, ReportDoc};

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Hypotheses file from `disambiguate`
    #[arg(long)]
    pub hyps: PathBuf,
    /// Optional distributions file for segment-level top-k accuracy
    #[arg(long)]
    pub dists: Option<PathBuf>,
    /// References from an external gloss corpus, overriding the ones carried
    /// by the hypotheses file
    #[arg(long)]
    pub refs: Option<PathBuf>,
    /// Output report file
    #[arg(long)]
    pub out: PathBuf,
    /// Oracle depth for the Top-5 WER column
    #[arg(long, default_value_t = 5)]
    pub oracle_n: usize,
    /// Comma-separated k values for top-k accuracy
    #[arg(long, default_value = "1,5")]
    pub k_values: String,
}

fn parse_ks(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidConfig(format!("bad k value `{s}`")))
        })
        .collect()
}

pub fn run(args: &EvalArgs) -> Result<()> {
    let hyps = formats::read_hypotheses(&args.hyps)?;
    let references: Vec<Vec<String>> = match &args.refs {
        Some(path) => {
            let refs = formats::read_gloss_corpus(path)?;
            if refs.len() != hyps.sentences.len() {
                return Err(Error::LengthMismatch {
                    left: refs.len(),
                    right: hyps.sentences.len(),
                });
            }
            refs
        }
        None => hyps
            .sentences
            .iter()
            .map(|s| {
                s.reference.clone().ok_or_else(|| {
                    Error::InvalidConfig(
                        "hypotheses file carries no references; pass --refs".into(),
                    )
                })
            })
            .collect::<Result<_>>()?,
    };
    let pairs: Vec<(Vec<String>, Vec<signspot::decoder::BeamHypothesis>)> = references
        .into_iter()
        .zip(&hyps.sentences)
        .map(|(reference, s)| (reference, s.hypotheses.clone()))
        .collect();
    let mut report = EvalReport::from_decodes(&pairs, args.oracle_n)?;

    if let Some(dists_path) = &args.dists {
        let doc = formats::read_distributions(dists_path)?;
        let mut dists = Vec::new();
        let mut targets = Vec::new();
        for sentence in &doc.sentences {
            let reference = sentence.reference.as_ref().ok_or_else(|| {
                Error::InvalidConfig("distributions file carries no references".into())
            })?;
            if reference.len() != sentence.distributions.len() {
                return Err(Error::LengthMismatch {
                    left: reference.len(),
                    right: sentence.distributions.len(),
                });
            }
            for (gloss, dist) in reference.iter().zip(&sentence.distributions) {
                let target = doc
                    .glosses
                    .iter()
                    .position(|g| g == gloss)
                    .ok_or_else(|| Error::OutOfVocabulary(gloss.clone()))?;
                targets.push(target);
                dists.push(dist.clone());
            }
        }
        report = report.with_topk(&dists, &targets, &parse_ks(&args.k_values)?)?;
    }

    print!("{}", report.render_text());
    let doc = ReportDoc {
        config: serde_json::json!({
            "hyps": args.hyps.display().to_string(),
            "dists": args.dists.as_ref().map(|p| p.display().to_string()),
            "oracle_n": args.oracle_n,
            "lm": hyps.lm,
            "decoder": hyps.decoder,
        }),
        report,
    };
    formats::write_report(&args.out, &doc)?;
    Ok(())
}
