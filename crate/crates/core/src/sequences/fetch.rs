use std::fs::{self, File, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use log::{debug, warn};

use super::bfile::parse_bfile;
use super::{builtin_fixture, check_id, SequenceError, SequenceFixture, Source};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "HOMIDEAL_CACHE_DIR";

/// Fetches raw bytes for a URL.
pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> Result<Vec<u8>, String>;
}

/// Never reaches the network.
#[derive(Clone, Copy, Debug, Default)]
pub struct OfflineTransport;

impl Transport for OfflineTransport {
    fn get(&self, url: &str) -> Result<Vec<u8>, String> {
        Err(format!("offline: not fetching {url}"))
    }
}

#[cfg(feature = "online")]
#[derive(Clone, Copy, Debug, Default)]
pub struct HttpTransport;

#[cfg(feature = "online")]
impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<Vec<u8>, String> {
        let mut response = ureq::get(url).call().map_err(|e| e.to_string())?;
        response.body_mut().read_to_vec().map_err(|e| e.to_string())
    }
}

/// `https://oeis.org/A000337/b000337.txt` for `A000337`.
pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/b{}.txt", &id[1..])
}

/// `$HOMIDEAL_CACHE_DIR`, else `$XDG_CACHE_HOME/homideal`, else
/// `$HOME/.cache/homideal`, else `.homideal-cache`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("homideal");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("homideal");
    }
    PathBuf::from(".homideal-cache")
}

pub fn cache_path(cache_dir: &Path, id: &str) -> PathBuf {
    cache_dir.join(format!("b{}.txt", &id[1..]))
}

fn io_err(path: &Path, e: std::io::Error) -> SequenceError {
    SequenceError::Io(format!("{}: {e}", path.display()))
}

/// Exclusive advisory lock on `<cache>/bNNNNNN.lock`, released on drop.
struct CacheLock {
    file: File,
}

impl CacheLock {
    fn acquire(cache_dir: &Path, id: &str) -> Result<Self, SequenceError> {
        let path = cache_dir.join(format!("b{}.lock", &id[1..]));
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .map_err(|e| io_err(&path, e))?;
        file.lock().map_err(|e| io_err(&path, e))?;
        Ok(CacheLock { file })
    }
}

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = self.file.unlock();
    }
}

/// Writes `bytes` next to `path` and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), SequenceError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp.{}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("bfile"),
        std::process::id()
    ));
    let mut f = File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
    f.write_all(bytes).map_err(|e| io_err(&tmp, e))?;
    f.sync_all().map_err(|e| io_err(&tmp, e))?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

/// Cached b-file if present and well formed; otherwise fetch it through
/// `transport`, cache the raw bytes, and parse. When the transport fails
/// the bundled fixture is returned if one exists.
pub fn fetch_sequence(
    id: &str,
    cache_dir: &Path,
    transport: &dyn Transport,
) -> Result<SequenceFixture, SequenceError> {
    check_id(id)?;
    fs::create_dir_all(cache_dir).map_err(|e| io_err(cache_dir, e))?;
    let _lock = CacheLock::acquire(cache_dir, id)?;
    let path = cache_path(cache_dir, id);
    if path.exists() {
        let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
        match parse_bfile(&text) {
            Ok(b) => {
                debug!("{id}: served from {}", path.display());
                return Ok(SequenceFixture::new(id, b.offset, b.terms, Source::Cache));
            }
            Err(e) => warn!(
                "{id}: ignoring malformed cache file {}: {e}",
                path.display()
            ),
        }
    }
    let url = bfile_url(id);
    match transport.get(&url) {
        Ok(bytes) => {
            let text = String::from_utf8(bytes).map_err(|_| SequenceError::Parse {
                line: 0,
                message: "response is not UTF-8".into(),
            })?;
            let b = parse_bfile(&text)?;
            write_atomic(&path, text.as_bytes())?;
            Ok(SequenceFixture::new(id, b.offset, b.terms, Source::Network))
        }
        Err(reason) => match builtin_fixture(id) {
            Ok(f) => {
                warn!("{id}: fetch failed ({reason}); using bundled terms");
                Ok(f)
            }
            Err(_) => Err(SequenceError::Network {
                id: id.to_string(),
                reason,
            }),
        },
    }
}
