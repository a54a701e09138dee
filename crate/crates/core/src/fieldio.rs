//! Binary field file format shared across all stages.
//!
//! Layout (little-endian):
//!   bytes 0..8   magic "MAETF1\0\0"
//!   bytes 8..12  u32 n
//!   bytes 12..15 parity code per axis (0 = even, 1 = odd)
//!   byte  15     padding (zero)
//!   then n³ f64 values, x-fastest order.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{Parity, ScalarField3};

pub const MAGIC: &[u8; 8] = b"MAETF1\0\0";

pub fn write_field(path: &Path, field: &ScalarField3) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&(field.n() as u32).to_le_bytes())?;
    let parity = field.parity();
    w.write_all(&[parity[0].code(), parity[1].code(), parity[2].code(), 0])?;
    for v in field.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_field(path: &Path) -> Result<ScalarField3> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format(format!(
            "{} is not a field file (bad magic)",
            path.display()
        )));
    }
    let mut nb = [0u8; 4];
    r.read_exact(&mut nb)?;
    let n = u32::from_le_bytes(nb) as usize;
    let mut pb = [0u8; 4];
    r.read_exact(&mut pb)?;
    let parity = [
        Parity::from_code(pb[0])?,
        Parity::from_code(pb[1])?,
        Parity::from_code(pb[2])?,
    ];
    let count = n
        .checked_mul(n)
        .and_then(|v| v.checked_mul(n))
        .ok_or_else(|| Error::Format(format!("grid size {n} overflows")))?;
    let mut bytes = vec![0u8; count * 8];
    r.read_exact(&mut bytes)?;
    let values: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    ScalarField3::from_values(n, parity, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ALL_EVEN, ALL_ODD};

    #[test]
    fn roundtrip_preserves_bytes_and_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.field");
        let f = ScalarField3::from_fn(5, ALL_EVEN, |x, y, z| x + 2.0 * y - z).unwrap();
        write_field(&path, &f).unwrap();
        let g = read_field(&path).unwrap();
        assert_eq!(f, g);

        // writing the same field twice is bit-identical
        let path2 = dir.path().join("g.field");
        write_field(&path2, &f).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&path2).unwrap());
    }

    #[test]
    fn rejects_bad_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.field");
        std::fs::write(&path, b"NOTAFILE........").unwrap();
        assert!(matches!(read_field(&path), Err(Error::Format(_))));
    }

    #[test]
    fn header_is_16_bytes_then_doubles() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.field");
        let f = ScalarField3::zeros(3, ALL_ODD).unwrap();
        write_field(&path, &f).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(bytes.len(), 16 + 27 * 8);
        assert_eq!(&bytes[0..8], MAGIC);
        assert_eq!(bytes[8], 3);
        assert_eq!(&bytes[12..16], &[1, 1, 1, 0]);
    }
}
