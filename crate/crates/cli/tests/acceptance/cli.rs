//! Runs the binary twice over the conformance corpus and compares every
//! output against the goldens and against the other run.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use crate::{Count, Outcome};

fn corpus(kind: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/conformance").join(kind);
    let mut out: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map(|d| d.filter_map(|e| e.ok().map(|e| e.path())).collect())
        .unwrap_or_default();
    out.retain(|p| p.extension().is_some_and(|e| e == "ords"));
    out.sort();
    out
}

fn ordforge(script: &Path, flags: &[&str]) -> Result<Output, String> {
    Command::new(env!("CARGO_BIN_EXE_ordforge"))
        .arg(script)
        .args(flags)
        .env_remove("ORDFORGE_MAX_CARRIER")
        .output()
        .map_err(|e| format!("cannot run ordforge: {e}"))
}

fn golden(script: &Path, ext: &str) -> Result<String, String> {
    let p = script.with_extension(ext);
    std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))
}

pub fn determinism() -> Outcome {
    let mut count = Count::default();
    let accept = corpus("accept");
    let reject = corpus("reject");
    count.check(!accept.is_empty() && !reject.is_empty(), || "empty corpus".into());
    for script in &accept {
        let name = script.display();
        let want = golden(script, "out")?;
        for flags in [&[][..], &["--json"], &["--seed", "12345"]] {
            let (a, b) = (ordforge(script, flags)?, ordforge(script, flags)?);
            count.check(a.stdout == b.stdout && a.status == b.status, || {
                format!("{name} {flags:?}: two runs differ")
            });
            count.check(a.status.code().is_some_and(|c| c != 2), || {
                format!("{name} {flags:?}: exit {:?}", a.status.code())
            });
            if flags.is_empty() {
                count.check(String::from_utf8_lossy(&a.stdout) == want, || {
                    format!("{name}: output differs from golden")
                });
            }
        }
    }
    for script in &reject {
        let name = script.display();
        let want = format!("{}:{}", script.display(), golden(script, "err")?);
        let (a, b) = (ordforge(script, &[])?, ordforge(script, &[])?);
        count.check(a.stderr == b.stderr && a.stdout == b.stdout, || format!("{name}: two runs differ"));
        count.check(a.status.code() == Some(2), || format!("{name}: exit {:?}", a.status.code()));
        count.check(String::from_utf8_lossy(&a.stderr).trim_end() == want.trim_end(), || {
            format!("{name}: diagnostic {:?}, golden {want:?}", String::from_utf8_lossy(&a.stderr))
        });
    }
    count.finish(format!("{} accepted and {} rejected scripts", accept.len(), reject.len()))
}
