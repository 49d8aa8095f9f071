pub mod dict_build;
pub mod disambiguate;
pub mod eval;
pub mod spot;
pub mod sweep;
pub mod synth;

use signspot::error::{Error, Result};
use signspot::lm::{LmKind, PromptStyle, PromptTemplate};
use signspot::lm::{NgramLm, RemoteLm, TransitionModel, UniformLm};

use crate::args::LmArgs;

/// Builds the transition model named by the CLI flags. `fallback_corpus`
/// supplies training sentences when `--ngram-from-refs` is set.
pub fn build_lm(
    args: &LmArgs,
    refs_corpus: Option<Vec<Vec<String>>>,
) -> Result<Box<dyn TransitionModel>> {
    let config = args.to_config()?;
    match config.kind {
        LmKind::Uniform => Ok(Box::new(UniformLm)),
        LmKind::Ngram => {
            let corpus = if args.ngram_from_refs {
                refs_corpus.ok_or_else(|| {
                    Error::InvalidConfig(
                        "--ngram-from-refs requires references in the input file".into(),
                    )
                })?
            } else {
                let path = args.ngram_corpus.as_ref().ok_or_else(|| {
                    Error::InvalidConfig(
                        "ngram backend needs --ngram-corpus or --ngram-from-refs".into(),
                    )
                })?;
                signspot::formats::read_gloss_corpus(path)?
            };
            Ok(Box::new(NgramLm::train(
                &corpus,
                config.ngram_order,
                config.smoothing_alpha,
            )?))
        }
        LmKind::Remote => {
            let mut lm = RemoteLm::from_config(&config)?;
            let style = PromptStyle {
                lowercase_context: !args.verbatim_glosses,
                capitalize_candidates: !args.verbatim_glosses,
            };
            let template = match &args.prompt_template {
                Some(path) => {
                    let text = signspot::formats::read_document(path)?;
                    PromptTemplate::new(text.trim_end(), ", ")?
                }
                None => PromptTemplate::default(),
            };
            lm = lm.with_template(template, style);
            Ok(Box::new(lm))
        }
    }
}
