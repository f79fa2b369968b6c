//! On-disk table cache.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic   b"PDTB"
//! version u32 (= 1)
//! kind    u8  (0 = p, 1 = pl)
//! n       u64 (largest index)
//! n + 1 records: limb count u32, then that many u64 limbs
//! ```
//!
//! Loading rebuilds the sieve and recomputes the last entry from the ones
//! before it.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;

use super::{limbs, Kind, SequenceTable};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"PDTB";
const VERSION: u32 = 1;

fn kind_code(kind: Kind) -> u8 {
    match kind {
        Kind::Partition => 0,
        Kind::PlanePartition => 1,
    }
}

fn format_error(path: &Path, reason: impl Into<String>) -> Error {
    Error::CacheFormat {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

impl SequenceTable {
    /// Writes the table atomically (temporary file, then rename).
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = PathBuf::from(format!("{}.tmp", path.display()));
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            w.write_all(MAGIC)?;
            w.write_all(&VERSION.to_le_bytes())?;
            w.write_all(&[kind_code(self.kind)])?;
            w.write_all(&self.max_index().to_le_bytes())?;
            for v in &self.values {
                let digits = v.iter_u64_digits();
                w.write_all(&(digits.len() as u32).to_le_bytes())?;
                for limb in digits {
                    w.write_all(&limb.to_le_bytes())?;
                }
            }
            w.flush()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Loads a table written by [`SequenceTable::save`].
    pub fn load(path: &Path, kind: Kind, memory_budget: u64) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 4];
        read_exact(&mut r, path, &mut magic)?;
        if &magic != MAGIC {
            return Err(format_error(path, "bad magic"));
        }
        let version = read_u32(&mut r, path)?;
        if version != VERSION {
            return Err(format_error(path, format!("unsupported version {version}")));
        }
        let mut code = [0u8; 1];
        read_exact(&mut r, path, &mut code)?;
        if code[0] != kind_code(kind) {
            return Err(format_error(
                path,
                format!("table holds kind code {}, expected {kind}", code[0]),
            ));
        }
        let n = read_u64(&mut r, path)?;
        let probe = SequenceTable::with_memory_budget(kind, memory_budget);
        probe.check_budget(n)?;
        let count = usize::try_from(n)
            .ok()
            .and_then(|n| n.checked_add(1))
            .ok_or_else(|| format_error(path, "index out of range"))?;
        let mut values = Vec::with_capacity(count);
        for _ in 0..count {
            let len = read_u32(&mut r, path)? as usize;
            let mut buf = vec![0u8; len * 8];
            read_exact(&mut r, path, &mut buf)?;
            let limbs: Vec<u64> = buf
                .chunks_exact(8)
                .map(|c| u64::from_le_bytes(c.try_into().expect("8-byte chunk")))
                .collect();
            values.push(limbs::to_biguint(&limbs));
        }
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(format_error(path, "trailing bytes after last record"));
        }
        if values[0] != BigUint::from(1u32) {
            return Err(format_error(path, "entry 0 is not 1"));
        }
        let table = SequenceTable::from_parts(kind, values, memory_budget);
        table
            .verify_entry(n)
            .map_err(|e| format_error(path, format!("last entry fails its recurrence: {e}")))?;
        Ok(table)
    }
}

fn read_exact(r: &mut impl Read, path: &Path, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            format_error(path, "truncated file")
        } else {
            Error::Io(e)
        }
    })
}

fn read_u32(r: &mut impl Read, path: &Path) -> Result<u32> {
    let mut b = [0u8; 4];
    read_exact(r, path, &mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read, path: &Path) -> Result<u64> {
    let mut b = [0u8; 8];
    read_exact(r, path, &mut b)?;
    Ok(u64::from_le_bytes(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::DEFAULT_MEMORY_BUDGET;

    #[test]
    fn round_trip_and_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pl.pdt");
        let mut t = SequenceTable::new(Kind::PlanePartition);
        t.extend(40).unwrap();
        t.save(&path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[..4], b"PDTB");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 1);
        assert_eq!(bytes[8], 1);
        assert_eq!(u64::from_le_bytes(bytes[9..17].try_into().unwrap()), 40);
        // record 0: one limb holding 1
        assert_eq!(u32::from_le_bytes(bytes[17..21].try_into().unwrap()), 1);
        assert_eq!(u64::from_le_bytes(bytes[21..29].try_into().unwrap()), 1);

        let back = SequenceTable::load(&path, Kind::PlanePartition, DEFAULT_MEMORY_BUDGET).unwrap();
        assert_eq!(back.values(), t.values());
        assert_eq!(back.sigma2(), t.sigma2());
    }

    #[test]
    fn rejects_wrong_kind_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.pdt");
        let mut t = SequenceTable::new(Kind::Partition);
        t.extend(60).unwrap();
        t.save(&path).unwrap();
        assert!(SequenceTable::load(&path, Kind::PlanePartition, DEFAULT_MEMORY_BUDGET).is_err());

        let mut bytes = std::fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last - 7] ^= 1;
        std::fs::write(&path, &bytes).unwrap();
        let err = SequenceTable::load(&path, Kind::Partition, DEFAULT_MEMORY_BUDGET).unwrap_err();
        assert!(matches!(err, Error::CacheFormat { .. }), "{err}");

        std::fs::write(&path, &bytes[..bytes.len() - 3]).unwrap();
        let err = SequenceTable::load(&path, Kind::Partition, DEFAULT_MEMORY_BUDGET).unwrap_err();
        assert!(err.to_string().contains("truncated"), "{err}");
    }
}
