use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Args;
use signspot::dictionary::Dictionary;
use signspot::error::{Error, Result};
use signspot::features::Modality;
use signspot::formats;

#[derive(Debug, Args)]
pub struct DictBuildArgs {
    /// Manifest listing {gloss, modality -> feature file}
    #[arg(long)]
    pub manifest: PathBuf,
    /// Comma-separated modality config, e.g. i3d,rh,lh or mid
    #[arg(long, default_value = "i3d,rh,lh")]
    pub modalities: String,
    /// Output dictionary archive (.json or .json.gz)
    #[arg(long)]
    pub out: PathBuf,
    /// Resample hand streams to the I3D frame count when building MID
    #[arg(long)]
    pub resample_mid: bool,
}

pub fn parse_modalities(spec: &str) -> Result<BTreeSet<Modality>> {
    let set = spec
        .split(',')
        .map(|m| m.trim().parse::<Modality>())
        .collect::<Result<BTreeSet<Modality>>>()?;
    if set.is_empty() {
        return Err(Error::InvalidConfig("empty modality config".into()));
    }
    Ok(set)
}

pub fn run(args: &DictBuildArgs) -> Result<()> {
    let config = parse_modalities(&args.modalities)?;
    let entries = formats::load_manifest(&args.manifest)?;
    let dict = Dictionary::build_with(entries, &config, args.resample_mid)?;
    formats::write_dictionary(&args.out, &dict)?;
    let modalities: Vec<String> = dict.modalities().iter().map(|m| m.to_string()).collect();
    println!(
        "V={} modalities={} -> {}",
        dict.vocab_size(),
        modalities.join("+"),
        args.out.display()
    );
    Ok(())
}
