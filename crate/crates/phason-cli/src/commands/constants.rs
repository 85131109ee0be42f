//! `phason constants` — the physical constants every formula uses.

use clap::Args;

use crate::output;
use crate::{CliResult, CommonOpts};

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub common: CommonOpts,
}

pub fn run(args: ConstantsArgs) -> CliResult<()> {
    output::write_json(&args.common, &phason::units::CONSTANTS)
}
