//! File formats: plain-line and FASTA collections, raw BWT bytes, fixed-width
//! LCP files and packed or ASCII document arrays.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::lcp::{LcpArray, LcpWidth};
use crate::merge::DocumentArray;
use crate::oracle::Collection;
use crate::succinct::{Symbol, MAX_SIGMA};

/// Default terminator byte, `#`.
pub const DEFAULT_TERMINATOR: u8 = b'#';

/// Input layout of a collection file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InputFormat {
    /// One string per line.
    #[default]
    Lines,
    /// `>`-headed records; sequence lines are concatenated and uppercased.
    Fasta,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lines" => Ok(InputFormat::Lines),
            "fasta" => Ok(InputFormat::Fasta),
            other => Err(format!("unknown input format `{other}`")),
        }
    }
}

/// Byte ↔ code mapping: the terminator is code 0, the other bytes follow in
/// ascending byte order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    bytes: Vec<u8>,
    codes: [Option<Symbol>; 256],
}

impl Alphabet {
    /// Alphabet of the bytes in `data` plus the terminator.
    pub fn from_data<'a>(terminator: u8, data: impl IntoIterator<Item = &'a [u8]>) -> Self {
        let mut seen = [false; 256];
        for chunk in data {
            for &b in chunk {
                seen[b as usize] = true;
            }
        }
        seen[terminator as usize] = false;
        let mut bytes = vec![terminator];
        bytes.extend((0..=255u8).filter(|&b| seen[b as usize]));
        let mut codes = [None; 256];
        for (code, &b) in bytes.iter().enumerate() {
            codes[b as usize] = Some(code as Symbol);
        }
        Alphabet { bytes, codes }
    }

    pub fn terminator(&self) -> u8 {
        self.bytes[0]
    }

    /// Alphabet size used by the indexes; at least 2.
    pub fn sigma(&self) -> usize {
        self.bytes.len().clamp(2, MAX_SIGMA)
    }

    /// Number of distinct bytes, terminator included.
    pub fn distinct(&self) -> usize {
        self.bytes.len()
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn encode(&self, data: &[u8]) -> Result<Vec<Symbol>> {
        data.iter()
            .map(|&b| {
                self.codes[b as usize].ok_or_else(|| {
                    Error::InputDomain(format!("byte 0x{b:02x} is not in the alphabet"))
                })
            })
            .collect()
    }

    pub fn decode(&self, symbols: &[Symbol]) -> Vec<u8> {
        symbols.iter().map(|&c| self.bytes[c as usize]).collect()
    }
}

/// Parses a terminator given as a single character, a decimal byte value or
/// a `0x`-prefixed hex value.
pub fn parse_terminator(s: &str) -> Result<u8, String> {
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        return u8::from_str_radix(hex, 16).map_err(|e| format!("bad hex byte `{s}`: {e}"));
    }
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii() && !c.is_ascii_digit() => Ok(c as u8),
        _ => s
            .parse::<u8>()
            .map_err(|_| format!("`{s}` is neither a single ASCII character nor a byte value")),
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

/// Splits file content into the raw strings of a collection (terminators not
/// yet appended).
pub fn parse_collection(data: &[u8], format: InputFormat, terminator: u8) -> Result<Vec<Vec<u8>>> {
    if data.is_empty() {
        return Err(Error::InputDomain("empty collection file".into()));
    }
    let mut lines: Vec<&[u8]> = data
        .split(|&b| b == b'\n')
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
        .collect();
    if data.ends_with(b"\n") {
        lines.pop();
    }
    let strings: Vec<Vec<u8>> = match format {
        InputFormat::Lines => lines.into_iter().map(<[u8]>::to_vec).collect(),
        InputFormat::Fasta => {
            let mut records: Vec<Vec<u8>> = Vec::new();
            for (k, line) in lines.into_iter().enumerate() {
                if line.starts_with(b">") {
                    records.push(Vec::new());
                } else if let Some(last) = records.last_mut() {
                    last.extend(line.iter().map(u8::to_ascii_uppercase));
                } else if !line.is_empty() {
                    return Err(Error::Malformed(format!(
                        "line {}: sequence data before the first FASTA header",
                        k + 1
                    )));
                }
            }
            records
        }
    };
    if strings.is_empty() {
        return Err(Error::InputDomain("collection has no strings".into()));
    }
    for (j, s) in strings.iter().enumerate() {
        if let Some(&b) = s.iter().find(|&&b| b == terminator || b == 0) {
            return Err(Error::Malformed(format!(
                "string {} contains the reserved byte 0x{b:02x}",
                j + 1
            )));
        }
    }
    Ok(strings)
}

/// Encodes raw strings over `alphabet`, appending the terminator.
pub fn encode_collection(strings: &[Vec<u8>], alphabet: &Alphabet) -> Result<Collection> {
    let bodies = strings
        .iter()
        .map(|s| alphabet.encode(s))
        .collect::<Result<Vec<_>>>()?;
    Collection::from_bodies(bodies)
}

/// Reads and encodes a collection with an alphabet inferred from its content.
pub fn read_collection(
    path: &Path,
    format: InputFormat,
    terminator: u8,
) -> Result<(Collection, Alphabet)> {
    let strings = parse_collection(&read_file(path)?, format, terminator)?;
    let alphabet = Alphabet::from_data(terminator, strings.iter().map(Vec::as_slice));
    Ok((encode_collection(&strings, &alphabet)?, alphabet))
}

/// Raw BWT bytes; must contain at least one terminator.
pub fn read_bwt(path: &Path, terminator: u8) -> Result<Vec<u8>> {
    let data = read_file(path)?;
    if !data.contains(&terminator) {
        return Err(Error::Malformed(format!(
            "{}: no terminator byte 0x{terminator:02x}",
            path.display()
        )));
    }
    Ok(data)
}

/// Writes through a temporary file in the destination directory, then
/// renames it over `path`.
pub fn write_atomic(path: &Path, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let tmp = NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = BufWriter::new(tmp);
    body(&mut out)?;
    let tmp = out
        .into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    write_atomic(path, |w| Ok(w.write_all(bytes)?))
}

pub fn write_lcp(path: &Path, lcp: &LcpArray) -> Result<()> {
    write_atomic(path, |w| Ok(lcp.write_to(&mut &mut *w)?))
}

/// Decodes a little-endian LCP file of the given width.
pub fn parse_lcp(data: &[u8], width: LcpWidth) -> Result<Vec<u64>> {
    let w = width.bytes();
    if !data.len().is_multiple_of(w) {
        return Err(Error::Malformed(format!(
            "LCP file size {} is not a multiple of {w}",
            data.len()
        )));
    }
    Ok(data
        .chunks_exact(w)
        .map(|chunk| {
            let mut buf = [0u8; 8];
            buf[..w].copy_from_slice(chunk);
            u64::from_le_bytes(buf)
        })
        .collect())
}

pub fn read_lcp(path: &Path, width: LcpWidth) -> Result<Vec<u64>> {
    parse_lcp(&read_file(path)?, width)
}

pub fn write_da(path: &Path, da: &DocumentArray, packed: bool) -> Result<()> {
    let bytes = if packed {
        da.to_packed()
    } else {
        da.to_ascii()
    };
    write_bytes(path, &bytes)
}

/// Decodes a document array of `n` entries, packed or ASCII.
pub fn parse_da(data: &[u8], n: usize, packed: bool) -> Result<DocumentArray> {
    if packed {
        return DocumentArray::from_packed(data, n);
    }
    if data.len() != n {
        return Err(Error::Malformed(format!(
            "ASCII document array has {} entries, expected {n}",
            data.len()
        )));
    }
    let bits = data
        .iter()
        .enumerate()
        .map(|(k, &b)| match b {
            b'0' => Ok(false),
            b'1' => Ok(true),
            _ => Err(Error::Malformed(format!(
                "document array entry {} is 0x{b:02x}, not '0' or '1'",
                k + 1
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DocumentArray::from_bools(&bits))
}

pub fn read_da(path: &Path, n: usize, packed: bool) -> Result<DocumentArray> {
    parse_da(&read_file(path)?, n, packed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_fasta_agree() {
        let lines = parse_collection(b"AC\nA\n", InputFormat::Lines, b'#').unwrap();
        let fasta = parse_collection(b">r1\nAC\n>r2\nA\n", InputFormat::Fasta, b'#').unwrap();
        assert_eq!(lines, vec![b"AC".to_vec(), b"A".to_vec()]);
        assert_eq!(lines, fasta);
        let alphabet = Alphabet::from_data(b'#', lines.iter().map(Vec::as_slice));
        let c = encode_collection(&lines, &alphabet).unwrap();
        assert_eq!(c.strings(), &[vec![1, 2, 0], vec![1, 0]]);
    }

    #[test]
    fn fasta_is_uppercased_and_joined() {
        let got = parse_collection(b">x\nac\ngt\n>y\n\n", InputFormat::Fasta, b'#').unwrap();
        assert_eq!(got, vec![b"ACGT".to_vec(), vec![]]);
    }

    #[test]
    fn rejects_bad_collections() {
        assert!(parse_collection(b"", InputFormat::Lines, b'#').is_err());
        assert!(matches!(
            parse_collection(b"A#C\n", InputFormat::Lines, b'#'),
            Err(Error::Malformed(_))
        ));
        assert!(parse_collection(b"AC\n>r\n", InputFormat::Fasta, b'#').is_err());
    }

    #[test]
    fn alphabet_orders_bytes() {
        let a = Alphabet::from_data(b'$', [b"TGCA$".as_slice()]);
        assert_eq!(a.bytes(), b"$ACGT");
        assert_eq!(a.encode(b"CA$").unwrap(), vec![2, 1, 0]);
        assert_eq!(a.decode(&[4, 0]), b"T$");
        assert!(a.encode(b"N").is_err());
        assert_eq!(Alphabet::from_data(b'#', [b"#".as_slice()]).sigma(), 2);
    }

    #[test]
    fn terminator_parsing() {
        assert_eq!(parse_terminator("#"), Ok(b'#'));
        assert_eq!(parse_terminator("0x24"), Ok(b'$'));
        assert_eq!(parse_terminator("0"), Ok(0));
        assert_eq!(parse_terminator("36"), Ok(b'$'));
        assert!(parse_terminator("ab").is_err());
    }

    #[test]
    fn lcp_round_trip() {
        for width in LcpWidth::ALL {
            let mut lcp = LcpArray::new(4, width);
            for (i, v) in [0u64, 7, 200, 3].into_iter().enumerate() {
                lcp.set(i + 1, v);
            }
            let mut bytes = Vec::new();
            lcp.write_to(&mut bytes).unwrap();
            assert_eq!(bytes.len(), 4 * width.bytes());
            assert_eq!(parse_lcp(&bytes, width).unwrap(), vec![0, 7, 200, 3]);
        }
        assert!(parse_lcp(&[0, 0, 0], LcpWidth::W2).is_err());
    }

    #[test]
    fn da_round_trip() {
        let da = DocumentArray::from_bools(&[false, true, true, false, false]);
        assert_eq!(parse_da(&da.to_packed(), 5, true).unwrap(), da);
        assert_eq!(parse_da(&da.to_ascii(), 5, false).unwrap(), da);
        assert!(parse_da(b"01x", 3, false).is_err());
    }
}
