//! OEIS cross-checks: bundled b-file fixtures, a cached b-file client and
//! prefix comparison with automatic alignment.

mod bfile;
mod fetch;

pub use bfile::{parse_bfile, render_bfile, BFile};
#[cfg(feature = "online")]
pub use fetch::HttpTransport;
pub use fetch::{
    bfile_url, cache_path, default_cache_dir, fetch_sequence, OfflineTransport, Transport,
    CACHE_DIR_ENV,
};

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("malformed A-number {0:?}")]
    BadId(String),
    #[error("no bundled terms for {0}")]
    UnknownId(String),
    #[error("b-file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("fetching {id} failed: {reason}")]
    Network { id: String, reason: String },
    #[error("cache: {0}")]
    Io(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Bundled,
    /// Read back from the on-disk cache.
    Cache,
    Network,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Bundled => "bundled",
            Source::Cache => "cache",
            Source::Network => "network",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFixture {
    pub id: String,
    /// Index of the first term.
    pub offset: i64,
    pub terms: Vec<BigInt>,
    pub source: Source,
}

impl SequenceFixture {
    pub fn new(id: &str, offset: i64, terms: Vec<BigInt>, source: Source) -> Self {
        SequenceFixture {
            id: id.to_string(),
            offset,
            terms,
            source,
        }
    }

    pub fn from_bfile(id: &str, text: &str, source: Source) -> Result<Self, SequenceError> {
        check_id(id)?;
        let b = parse_bfile(text)?;
        Ok(SequenceFixture::new(id, b.offset, b.terms, source))
    }
}

pub(crate) fn check_id(id: &str) -> Result<(), SequenceError> {
    let b = id.as_bytes();
    if b.len() == 7 && b[0] == b'A' && b[1..].iter().all(u8::is_ascii_digit) {
        Ok(())
    } else {
        Err(SequenceError::BadId(id.to_string()))
    }
}

const BUNDLED: &[(&str, &str)] = &[
    ("A000045", include_str!("../../data/b000045.txt")),
    ("A000337", include_str!("../../data/b000337.txt")),
    ("A110122", include_str!("../../data/b110122.txt")),
    ("A132262", include_str!("../../data/b132262.txt")),
    ("A274868", include_str!("../../data/b274868.txt")),
];

pub fn bundled_ids() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(id, _)| *id)
}

pub fn builtin_fixture(id: &str) -> Result<SequenceFixture, SequenceError> {
    check_id(id)?;
    let (_, text) = BUNDLED
        .iter()
        .find(|(k, _)| *k == id)
        .ok_or_else(|| SequenceError::UnknownId(id.to_string()))?;
    SequenceFixture::from_bfile(id, text, Source::Bundled)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alignment {
    /// `generated[p]` is compared with `terms[p + shift]`.
    Fixed(i64),
    /// Best of the shifts `-3..=3`.
    Auto,
}

pub const AUTO_SHIFTS: std::ops::RangeInclusive<i64> = -3..=3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Position in the generated list.
    pub position: usize,
    pub generated: BigInt,
    pub expected: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub id: String,
    pub shift: i64,
    /// Number of aligned pairs.
    pub compared: usize,
    /// Length of the matching run at the start of the overlap.
    pub matched: usize,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn is_full_match(&self) -> bool {
        self.compared > 0 && self.matched == self.compared
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: shift {}, {}/{} aligned terms match",
            self.id, self.shift, self.matched, self.compared
        )?;
        if let Some(m) = &self.mismatch {
            write!(
                f,
                "; first mismatch at position {}: generated {}, expected {}",
                m.position, m.generated, m.expected
            )?;
        }
        Ok(())
    }
}

fn compare_at(generated: &[BigInt], fixture: &SequenceFixture, shift: i64) -> CheckReport {
    let mut compared = 0;
    let mut matched = 0;
    let mut mismatch = None;
    for (p, g) in generated.iter().enumerate() {
        let q = p as i64 + shift;
        if q < 0 {
            continue;
        }
        let Some(t) = fixture.terms.get(q as usize) else {
            break;
        };
        compared += 1;
        if mismatch.is_none() {
            if g == t {
                matched += 1;
            } else {
                mismatch = Some(Mismatch {
                    position: p,
                    generated: g.clone(),
                    expected: t.clone(),
                });
            }
        }
    }
    CheckReport {
        id: fixture.id.clone(),
        shift,
        compared,
        matched,
        mismatch,
    }
}

/// Longest matching prefix under the alignment. Auto prefers the longest
/// match, then the smaller `|shift|`, then the non-negative shift.
pub fn compare(generated: &[BigInt], fixture: &SequenceFixture, align: Alignment) -> CheckReport {
    match align {
        Alignment::Fixed(shift) => compare_at(generated, fixture, shift),
        Alignment::Auto => {
            let mut shifts: Vec<i64> = AUTO_SHIFTS.collect();
            shifts.sort_by_key(|s| (s.abs(), *s < 0));
            let mut best: Option<CheckReport> = None;
            for s in shifts {
                let r = compare_at(generated, fixture, s);
                let better = match &best {
                    None => true,
                    Some(b) => r.matched > b.matched,
                };
                if better {
                    best = Some(r);
                }
            }
            best.expect("shift range is nonempty")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bundled() {
        let f = builtin_fixture("A000337").unwrap();
        assert_eq!(f.terms[..4], ints(&[1, 5, 17, 49])[..]);
        let f = builtin_fixture("A000045").unwrap();
        assert_eq!(f.offset, 0);
        assert_eq!(f.terms[..6], ints(&[0, 1, 1, 2, 3, 5])[..]);
        assert_eq!(
            builtin_fixture("A999999"),
            Err(SequenceError::UnknownId("A999999".into()))
        );
        assert!(matches!(
            builtin_fixture("A12"),
            Err(SequenceError::BadId(_))
        ));
        for id in bundled_ids() {
            assert!(!builtin_fixture(id).unwrap().terms.is_empty());
        }
    }

    #[test]
    fn alignment() {
        let f = builtin_fixture("A000045").unwrap();
        let r = compare(&ints(&[1, 1, 2, 3, 5, 8]), &f, Alignment::Auto);
        assert_eq!(r.shift, 1);
        assert!(r.is_full_match());
        let r = compare(&ints(&[1, 1, 2, 3, 5, 8]), &f, Alignment::Fixed(0));
        assert_eq!(r.matched, 0);
        let r = compare(&ints(&[4, 4, 4]), &f, Alignment::Auto);
        assert!(!r.is_full_match());
        let m = compare(&ints(&[4, 4, 4]), &f, Alignment::Fixed(0))
            .mismatch
            .unwrap();
        assert_eq!((m.position, m.expected), (0, BigInt::from(0)));
        let r = compare(&ints(&[9, 0, 1, 1]), &f, Alignment::Fixed(-1));
        assert!(r.is_full_match());
        assert_eq!(r.compared, 3);
    }

    struct Stub {
        body: Option<String>,
        calls: AtomicUsize,
    }

    impl Transport for Stub {
        fn get(&self, url: &str) -> Result<Vec<u8>, String> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            assert!(url.starts_with("https://oeis.org/A"));
            self.body
                .clone()
                .map(String::into_bytes)
                .ok_or_else(|| "down".to_string())
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let body = "# test\n1 1\n2 5\n3 17\n".to_string();
        let stub = Stub {
            body: Some(body.clone()),
            calls: AtomicUsize::new(0),
        };
        let first = fetch_sequence("A000337", dir.path(), &stub).unwrap();
        assert_eq!(first.source, Source::Network);
        let second = fetch_sequence("A000337", dir.path(), &stub).unwrap();
        assert_eq!(second.source, Source::Cache);
        assert_eq!(first.terms, second.terms);
        assert_eq!(stub.calls.load(Ordering::SeqCst), 1);
        let on_disk = std::fs::read_to_string(cache_path(dir.path(), "A000337")).unwrap();
        assert_eq!(on_disk, body);
    }

    #[test]
    fn fallbacks() {
        let dir = tempfile::tempdir().unwrap();
        let down = Stub {
            body: None,
            calls: AtomicUsize::new(0),
        };
        let f = fetch_sequence("A000337", dir.path(), &down).unwrap();
        assert_eq!(f.source, Source::Bundled);
        assert!(matches!(
            fetch_sequence("A000001", dir.path(), &down),
            Err(SequenceError::Network { .. })
        ));
        let bad = Stub {
            body: Some("1 1\n2 \n".into()),
            calls: AtomicUsize::new(0),
        };
        assert!(matches!(
            fetch_sequence("A000002", dir.path(), &bad),
            Err(SequenceError::Parse { line: 2, .. })
        ));
        assert!(!cache_path(dir.path(), "A000002").exists());
        assert!(fetch_sequence("A000337", dir.path(), &OfflineTransport).is_ok());
    }

    #[test]
    fn urls() {
        assert_eq!(bfile_url("A000337"), "https://oeis.org/A000337/b000337.txt");
    }
}
