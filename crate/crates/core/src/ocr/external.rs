use std::io::Read;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::{OcrEngine, OcrEngineConfig, Recognition};
use crate::error::{Error, Result};
use crate::image::RasterImage;

/// Runs an OCR program per crop: the crop is written to a temporary PNG, the
/// command template is expanded and stdout is taken as the UTF-8 result.
#[derive(Debug, Clone)]
pub struct ExternalEngine {
    config: OcrEngineConfig,
}

impl ExternalEngine {
    pub fn new(config: OcrEngineConfig) -> Result<Self> {
        if config.command.is_empty() {
            return Err(Error::Config("OCR command template is empty".into()));
        }
        Ok(ExternalEngine { config })
    }

    pub fn config(&self) -> &OcrEngineConfig {
        &self.config
    }

    fn expand(&self, image: &str) -> Vec<String> {
        let psm = self.config.page_segmentation.psm().to_string();
        self.config
            .command
            .iter()
            .map(|arg| {
                arg.replace("{image}", image)
                    .replace("{lang}", &self.config.language)
                    .replace("{psm}", &psm)
            })
            .collect()
    }

    fn command_line(&self) -> String {
        self.config.command.join(" ")
    }
}

impl OcrEngine for ExternalEngine {
    fn recognize(&self, crop: &RasterImage) -> Result<Recognition> {
        let tmp = tempfile::Builder::new()
            .prefix("scenetext-crop")
            .suffix(".png")
            .tempfile()
            .map_err(|e| Error::io(std::env::temp_dir(), e))?;
        std::fs::write(tmp.path(), crop.encode_png()?).map_err(|e| Error::io(tmp.path(), e))?;

        let args = self.expand(&tmp.path().to_string_lossy());
        let mut child = Command::new(&args[0])
            .args(&args[1..])
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|source| Error::EngineLaunch {
                command: self.command_line(),
                source,
            })?;

        // drain pipes on threads so a chatty engine cannot block on a full pipe
        let mut stdout = child.stdout.take().expect("piped stdout");
        let mut stderr = child.stderr.take().expect("piped stderr");
        let out_reader = std::thread::spawn(move || {
            let mut buf = Vec::new();
            stdout.read_to_end(&mut buf).map(|_| buf)
        });
        let err_reader = std::thread::spawn(move || {
            let mut buf = Vec::new();
            let _ = stderr.read_to_end(&mut buf);
            buf
        });

        let deadline = Instant::now() + Duration::from_millis(self.config.timeout_ms);
        let status = loop {
            match child.try_wait() {
                Ok(Some(status)) => break Some(status),
                Ok(None) if Instant::now() >= deadline => {
                    let _ = child.kill();
                    let _ = child.wait();
                    break None;
                }
                Ok(None) => std::thread::sleep(Duration::from_millis(2)),
                Err(e) => return Err(Error::Engine(format!("waiting for `{}`: {e}", self.command_line()))),
            }
        };
        let stdout = out_reader.join().expect("reader thread");
        let stderr = err_reader.join().expect("reader thread");

        let Some(status) = status else {
            return Ok(Recognition::TimedOut);
        };
        if !status.success() {
            let msg = String::from_utf8_lossy(&stderr).trim().to_owned();
            return Ok(Recognition::Failed(format!("{status}: {msg}")));
        }
        let bytes = stdout.map_err(|e| Error::Engine(format!("reading engine output: {e}")))?;
        match String::from_utf8(bytes) {
            Ok(text) => Ok(Recognition::Text(text)),
            Err(_) => Ok(Recognition::Failed("engine output is not valid UTF-8".into())),
        }
    }
}

#[cfg(all(test, unix))]
mod tests {
    use super::*;
    use crate::ocr::PageSegmentation;

    fn engine(command: &[&str], timeout_ms: u64) -> ExternalEngine {
        ExternalEngine::new(OcrEngineConfig {
            command: command.iter().map(|s| s.to_string()).collect(),
            timeout_ms,
            ..Default::default()
        })
        .unwrap()
    }

    fn crop() -> RasterImage {
        RasterImage::filled(8, 4, 3, 255).unwrap()
    }

    #[test]
    fn template_substitution() {
        let e = engine(&["sh", "-c", "echo \"$1 $2\"; test -s \"$0\"", "{image}", "{lang}", "{psm}"], 5000);
        assert_eq!(e.recognize(&crop()).unwrap(), Recognition::Text("tur 6\n".into()));
        let mut cfg = e.config().clone();
        cfg.page_segmentation = PageSegmentation::SingleWord;
        cfg.language = "eng".into();
        let e = ExternalEngine::new(cfg).unwrap();
        assert_eq!(e.recognize(&crop()).unwrap(), Recognition::Text("eng 8\n".into()));
    }

    #[test]
    fn utf8_output() {
        let e = engine(&["printf", "ÇIKIŞ\\n"], 5000);
        assert_eq!(e.recognize(&crop()).unwrap(), Recognition::Text("ÇIKIŞ\n".into()));
    }

    #[test]
    fn timeout_is_reported() {
        let e = engine(&["sleep", "5"], 100);
        let start = Instant::now();
        assert_eq!(e.recognize(&crop()).unwrap(), Recognition::TimedOut);
        assert!(start.elapsed() < Duration::from_secs(3));
    }

    #[test]
    fn launch_failure_names_command() {
        let e = engine(&["/nonexistent/ocr-engine", "{image}"], 1000);
        let err = e.recognize(&crop()).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/ocr-engine"), "{err}");
    }

    #[test]
    fn nonzero_exit_is_a_region_failure() {
        let e = engine(&["sh", "-c", "echo broken >&2; exit 3"], 5000);
        match e.recognize(&crop()).unwrap() {
            Recognition::Failed(m) => assert!(m.contains("broken")),
            other => panic!("{other:?}"),
        }
    }
}
