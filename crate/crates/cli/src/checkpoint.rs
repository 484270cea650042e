//! Plain-text verify checkpoints: key=value lines, version-tagged, replaced
//! atomically so an interrupted run never leaves a torn file.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};

pub const CHECKPOINT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub version: u64,
    /// Hash of the invocation's range; resuming under different options is
    /// refused. Worker count and batch size are deliberately excluded: they
    /// do not change results.
    pub fingerprint: String,
    /// First value not yet checked, decimal.
    pub next: String,
    pub checked: u64,
    pub violations: u64,
}

/// Fingerprint of a verify invocation over an inclusive decimal range.
pub fn fingerprint(lo: &str, hi: &str) -> String {
    let digest = Sha256::digest(format!("verify|v1|range={lo}..{hi}").as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    hex[..16].to_string()
}

impl Checkpoint {
    pub fn render(&self) -> String {
        format!(
            "version={}\nfingerprint={}\nnext={}\nchecked={}\nviolations={}\n",
            self.version, self.fingerprint, self.next, self.checked, self.violations
        )
    }

    pub fn parse(text: &str) -> Result<Checkpoint> {
        let mut version = None;
        let mut fingerprint = None;
        let mut next = None;
        let mut checked = None;
        let mut violations = None;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("checkpoint line {}: expected key=value", i + 1))?;
            match key {
                "version" => version = Some(value.parse::<u64>().context("bad version")?),
                "fingerprint" => fingerprint = Some(value.to_string()),
                "next" => next = Some(value.to_string()),
                "checked" => checked = Some(value.parse::<u64>().context("bad checked")?),
                "violations" => violations = Some(value.parse::<u64>().context("bad violations")?),
                other => bail!("checkpoint line {}: unknown key {other:?}", i + 1),
            }
        }
        let cp = Checkpoint {
            version: version.context("checkpoint missing version")?,
            fingerprint: fingerprint.context("checkpoint missing fingerprint")?,
            next: next.context("checkpoint missing next")?,
            checked: checked.context("checkpoint missing checked")?,
            violations: violations.context("checkpoint missing violations")?,
        };
        if cp.version != CHECKPOINT_VERSION {
            bail!("unsupported checkpoint version {}", cp.version);
        }
        Ok(cp)
    }

    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading checkpoint {}", path.display()))?;
        Checkpoint::parse(&text)
    }

    /// Write-then-rename so readers never observe a partial file.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.render())
            .with_context(|| format!("writing checkpoint {}", tmp.display()))?;
        fs::rename(&tmp, path)
            .with_context(|| format!("replacing checkpoint {}", path.display()))?;
        Ok(())
    }
}
