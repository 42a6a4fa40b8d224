use std::fmt::Debug;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Where a command's artifact goes. With `--out`, the CSV lands in the file,
/// metadata in `<out>.meta` and the summary on stdout; otherwise the CSV is
/// stdout and the summary moves to stderr.
pub struct Sink<'a> {
    out: Option<&'a Path>,
}

impl<'a> Sink<'a> {
    pub fn new(out: Option<&'a PathBuf>) -> Self {
        Sink {
            out: out.map(PathBuf::as_path),
        }
    }

    pub fn write(&self, body: impl FnOnce(&mut dyn Write) -> baire::Result<()>) -> Result<()> {
        match self.out {
            Some(path) => {
                let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                let mut w = BufWriter::new(file);
                body(&mut w)?;
                w.flush()?;
            }
            None => {
                let stdout = io::stdout();
                let mut w = stdout.lock();
                body(&mut w)?;
                w.flush()?;
            }
        }
        Ok(())
    }

    /// Writes the sidecar; a no-op without `--out`.
    pub fn meta(&self, command: &str, rng_seed: u64, args: &impl Debug) -> Result<()> {
        let Some(path) = self.out else {
            return Ok(());
        };
        let mut name = path.as_os_str().to_owned();
        name.push(".meta");
        let text = format!(
            "command = {command}\nrng_seed = {rng_seed}\nversion = {}\nargs = {args:?}\n",
            env!("CARGO_PKG_VERSION")
        );
        std::fs::write(&name, text).with_context(|| format!("writing {}", Path::new(&name).display()))
    }

    pub fn summary(&self, text: &str) {
        if self.out.is_some() {
            print!("{text}");
        } else {
            eprint!("{text}");
        }
    }
}
