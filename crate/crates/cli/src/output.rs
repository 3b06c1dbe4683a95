//! Output files are staged next to their destination and renamed into place
//! only once every output of a command has been written.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// `path` with `.ext` appended to its file name.
pub fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".");
    name.push(ext);
    path.with_file_name(name)
}

#[derive(Default)]
pub struct Outputs {
    files: Vec<(PathBuf, String)>,
    stdout: Vec<String>,
}

impl Outputs {
    pub fn new() -> Self {
        Self::default()
    }

    /// Queues `contents` for `path`, or for standard output if `path` is `None`.
    pub fn add(&mut self, path: Option<&Path>, contents: String) {
        match path {
            Some(p) => self.files.push((p.to_path_buf(), contents)),
            None => self.stdout.push(contents),
        }
    }

    pub fn commit(self) -> Result<()> {
        let mut staged = Vec::with_capacity(self.files.len());
        for (path, contents) in &self.files {
            let tmp = sibling(path, &format!("tmp{}", std::process::id()));
            if let Err(err) = fs::write(&tmp, contents) {
                let _ = fs::remove_file(&tmp);
                for (t, _) in &staged {
                    let _ = fs::remove_file(t);
                }
                return Err(err).with_context(|| format!("writing {}", path.display()));
            }
            staged.push((tmp, path));
        }
        for (tmp, path) in &staged {
            fs::rename(tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
        }
        let mut out = io::stdout().lock();
        for text in &self.stdout {
            out.write_all(text.as_bytes())?;
        }
        out.flush()?;
        Ok(())
    }
}
