use std::path::Path;

use pgroup_core::corpus::{build_family_str, parse_presentation};
use pgroup_core::{Error, PcGroup, PcPresentation, Result};

use crate::TargetArgs;

/// A named presentation, not yet checked for consistency.
#[derive(Clone, Debug)]
pub struct Target {
    pub name: String,
    pub presentation: PcPresentation,
}

impl Target {
    pub fn group(&self, max_order: u64) -> Result<PcGroup> {
        Ok(PcGroup::new(self.presentation.clone())?.with_max_order(max_order))
    }
}

fn load_file(path: &Path) -> Result<Target> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let presentation =
        parse_presentation(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    Ok(Target {
        name: path.display().to_string(),
        presentation,
    })
}

/// Files first, then families, in command-line order.
pub fn load_targets(args: &TargetArgs) -> Result<Vec<Target>> {
    if args.files.is_empty() && args.families.is_empty() {
        return Err(Error::Input(
            "no target: give a presentation file or --family SPEC".into(),
        ));
    }
    let mut out = Vec::new();
    for path in &args.files {
        out.push(load_file(path)?);
    }
    for spec in &args.families {
        let entry = build_family_str(spec)?;
        out.push(Target {
            name: entry.name,
            presentation: entry.presentation,
        });
    }
    Ok(out)
}
