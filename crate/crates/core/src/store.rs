//! Bit-exact streaming container for enumerated polygon words.
//!
//! Layout: a 16-byte header (magic `SAPS`, version, length, compression
//! flag, reserved zero byte, little-endian u64 count), a 4-byte codec tag
//! when the payload is compressed, then the packed records. The first
//! record spells out all `len` two-bit steps; every later record stores a
//! 6-bit shared-prefix length followed by the remaining steps. Bits fill
//! each byte MSB-first with no padding between records.

use std::io::{Read, Write};

use flate2::read::DeflateDecoder;
use flate2::write::DeflateEncoder;
use flate2::Compression;

use crate::error::{Error, Result};
use crate::sap::{Step, Word};

pub const MAGIC: [u8; 4] = *b"SAPS";
pub const VERSION: u8 = 1;
/// Codec tag recorded after the header when the compression flag is set.
pub const CODEC_DEFLATE: [u8; 4] = *b"DEFL";

const HEADER_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StoreHeader {
    pub version: u8,
    pub len: u8,
    pub compressed: bool,
    pub count: u64,
}

impl StoreHeader {
    fn to_bytes(self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = self.version;
        out[5] = self.len;
        out[6] = u8::from(self.compressed);
        out[7] = 0;
        out[8..].copy_from_slice(&self.count.to_le_bytes());
        out
    }

    fn parse(bytes: &[u8]) -> Result<StoreHeader> {
        if bytes.len() < HEADER_LEN {
            return Err(fmt_err(bytes.len(), "truncated header"));
        }
        if bytes[..4] != MAGIC {
            return Err(fmt_err(0, "bad magic, expected SAPS"));
        }
        if bytes[4] != VERSION {
            return Err(fmt_err(4, &format!("unsupported version {}", bytes[4])));
        }
        let len = bytes[5];
        if len < 2 || len > 64 || len % 2 != 0 {
            return Err(fmt_err(5, &format!("bad polygon length {len}")));
        }
        let compressed = match bytes[6] {
            0 => false,
            1 => true,
            other => return Err(fmt_err(6, &format!("unknown compression flag {other}"))),
        };
        if bytes[7] != 0 {
            return Err(fmt_err(7, "reserved byte must be zero"));
        }
        let count = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        Ok(StoreHeader { version: VERSION, len, compressed, count })
    }
}

struct BitWriter {
    bytes: Vec<u8>,
    used: u32, // bits used in the last byte
}

impl BitWriter {
    fn new() -> Self {
        BitWriter { bytes: Vec::new(), used: 0 }
    }

    /// Appends the low `width` bits of `value`, MSB first.
    fn push(&mut self, value: u8, width: u32) {
        debug_assert!(width <= 8);
        for i in (0..width).rev() {
            let bit = (value >> i) & 1;
            if self.used == 0 {
                self.bytes.push(0);
            }
            let last = self.bytes.last_mut().unwrap();
            *last |= bit << (7 - self.used);
            self.used = (self.used + 1) % 8;
        }
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize, // bit cursor
}

impl<'a> BitReader<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, pos: 0 }
    }

    fn take(&mut self, width: u32) -> Option<u8> {
        let mut v = 0u8;
        for _ in 0..width {
            let byte = *self.bytes.get(self.pos / 8)?;
            let bit = (byte >> (7 - (self.pos % 8) as u32)) & 1;
            v = (v << 1) | bit;
            self.pos += 1;
        }
        Some(v)
    }

    fn byte_offset(&self) -> usize {
        self.pos / 8
    }
}

/// Writes a sorted run of same-length distinct words. Returns the header
/// that was written, whose count field holds the number of records.
pub fn write_stream<'a, I, W>(words: I, mut sink: W, compress: bool) -> Result<StoreHeader>
where
    I: IntoIterator<Item = &'a Word>,
    W: Write,
{
    let mut bits = BitWriter::new();
    let mut count = 0u64;
    let mut len = 0usize;
    let mut prev: Option<&Word> = None;
    for (idx, w) in words.into_iter().enumerate() {
        if let Some(p) = prev {
            if w.len() != len {
                return Err(Error::StreamMismatch { expected: len, got: w.len() });
            }
            if w <= p {
                return Err(Error::UnsortedWords(idx));
            }
            let shared = common_prefix(p, w);
            bits.push(shared as u8, 6);
            for &s in &w.steps()[shared..] {
                bits.push(s.code(), 2);
            }
        } else {
            len = w.len();
            if len > 64 {
                return Err(Error::LengthLimit(len));
            }
            if len < 2 || len % 2 != 0 {
                return Err(Error::OddLength(len));
            }
            for &s in w.steps() {
                bits.push(s.code(), 2);
            }
        }
        prev = Some(w);
        count += 1;
    }
    // an empty stream still needs a definite length byte
    if count == 0 {
        len = 2;
    }

    let header = StoreHeader {
        version: VERSION,
        len: len as u8,
        compressed: compress,
        count,
    };
    sink.write_all(&header.to_bytes())?;
    if compress {
        sink.write_all(&CODEC_DEFLATE)?;
        let mut enc = DeflateEncoder::new(sink, Compression::default());
        enc.write_all(&bits.bytes)?;
        enc.finish()?;
    } else {
        sink.write_all(&bits.bytes)?;
    }
    Ok(header)
}

fn common_prefix(a: &Word, b: &Word) -> usize {
    a.steps()
        .iter()
        .zip(b.steps())
        .take_while(|(x, y)| x == y)
        .count()
}

/// Decoded store: header plus an in-order word iterator.
pub struct StoreReader {
    header: StoreHeader,
    payload: Vec<u8>,
    payload_stored_bytes: usize,
}

impl StoreReader {
    pub fn open<R: Read>(mut source: R) -> Result<StoreReader> {
        let mut raw = Vec::new();
        source.read_to_end(&mut raw)?;
        let header = StoreHeader::parse(&raw)?;
        let body = &raw[HEADER_LEN..];
        let (payload, stored) = if header.compressed {
            if body.len() < 4 {
                return Err(fmt_err(HEADER_LEN, "missing codec tag"));
            }
            if body[..4] != CODEC_DEFLATE {
                return Err(fmt_err(HEADER_LEN, "unknown codec tag"));
            }
            let mut out = Vec::new();
            DeflateDecoder::new(&body[4..])
                .read_to_end(&mut out)
                .map_err(|e| fmt_err(HEADER_LEN + 4, &format!("codec error: {e}")))?;
            (out, body.len() - 4)
        } else {
            (body.to_vec(), body.len())
        };
        Ok(StoreReader { header, payload, payload_stored_bytes: stored })
    }

    pub fn header(&self) -> StoreHeader {
        self.header
    }

    /// Bytes of packed payload as stored on disk (after compression).
    pub fn stored_payload_bytes(&self) -> usize {
        self.payload_stored_bytes
    }

    /// Bytes of packed payload before compression.
    pub fn packed_payload_bytes(&self) -> usize {
        self.payload.len()
    }

    pub fn words(&self) -> WordIter<'_> {
        WordIter {
            bits: BitReader::new(&self.payload),
            len: self.header.len as usize,
            remaining: self.header.count,
            prev: Vec::new(),
        }
    }

    /// Decodes everything, verifying the record count.
    pub fn read_all(&self) -> Result<Vec<Word>> {
        self.words().collect()
    }
}

pub struct WordIter<'a> {
    bits: BitReader<'a>,
    len: usize,
    remaining: u64,
    prev: Vec<Step>,
}

impl Iterator for WordIter<'_> {
    type Item = Result<Word>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        let offset = self.bits.byte_offset();
        let shared = if self.prev.is_empty() {
            0
        } else {
            match self.bits.take(6) {
                Some(p) => p as usize,
                None => {
                    self.remaining = 0;
                    return Some(Err(fmt_err(offset, "truncated payload")));
                }
            }
        };
        if !self.prev.is_empty() && shared >= self.len {
            self.remaining = 0;
            return Some(Err(fmt_err(
                offset,
                &format!("prefix length {shared} not below record length {}", self.len),
            )));
        }
        self.prev.truncate(shared);
        for _ in shared..self.len {
            match self.bits.take(2) {
                Some(code) => self.prev.push(Step::from_code(code)),
                None => {
                    self.remaining = 0;
                    return Some(Err(fmt_err(offset, "truncated payload")));
                }
            }
        }
        self.remaining -= 1;
        Some(Ok(Word::new(self.prev.clone())))
    }
}

/// Size accounting in the shape of the storage comparison: record count,
/// raw two-bit encoding size, packed prefix-encoded size, and the bytes
/// actually stored.
#[derive(Clone, Copy, Debug)]
pub struct StoreStats {
    pub count: u64,
    pub len: u8,
    pub compressed: bool,
    pub basic_bytes: u64,
    pub packed_bytes: u64,
    pub stored_bytes: u64,
}

impl StoreStats {
    pub fn ratio(&self) -> f64 {
        if self.basic_bytes == 0 {
            return 1.0;
        }
        self.stored_bytes as f64 / self.basic_bytes as f64
    }
}

pub fn stats<R: Read>(source: R) -> Result<StoreStats> {
    let reader = StoreReader::open(source)?;
    let h = reader.header();
    // force a full decode so corrupt payloads are reported here
    let n = reader.read_all()?.len() as u64;
    debug_assert_eq!(n, h.count);
    Ok(StoreStats {
        count: h.count,
        len: h.len,
        compressed: h.compressed,
        basic_bytes: (h.count * 2 * h.len as u64).div_ceil(8),
        packed_bytes: reader.packed_payload_bytes() as u64,
        stored_bytes: reader.stored_payload_bytes() as u64,
    })
}

fn fmt_err(offset: usize, msg: &str) -> Error {
    Error::StoreFormat { offset, msg: msg.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sap::enumerate;

    fn sap_words(len: usize) -> Vec<Word> {
        let mut v = Vec::new();
        enumerate(len, |w| v.push(w.clone())).unwrap();
        v
    }

    #[test]
    fn golden_single_square() {
        let words = vec!["RULD".parse::<Word>().unwrap()];
        let mut buf = Vec::new();
        let h = write_stream(&words, &mut buf, false).unwrap();
        assert_eq!(h.count, 1);
        assert_eq!(buf.len(), HEADER_LEN + 1);
        // R=10 U=11 L=01 D=00 packed MSB-first
        assert_eq!(buf[HEADER_LEN], 0xB4);
    }

    #[test]
    fn prefix_record_width() {
        // two length-8 words sharing a 5-step prefix: second record is
        // 6 + 3*2 = 12 bits, so the payload is ceil((16 + 12)/8) = 4 bytes
        let words: Vec<Word> = vec![
            "RRUULDLD".parse().unwrap(),
            "RRUULLDD".parse().unwrap(),
        ];
        assert!(words[0] < words[1]);
        let mut buf = Vec::new();
        write_stream(&words, &mut buf, false).unwrap();
        assert_eq!(buf.len() - HEADER_LEN, 4);
    }

    #[test]
    fn roundtrip_enumerations() {
        for len in [2usize, 6, 8, 12] {
            let words = sap_words(len);
            for compress in [false, true] {
                let mut buf = Vec::new();
                let h = write_stream(&words, &mut buf, compress).unwrap();
                assert_eq!(h.count, words.len() as u64);
                let reader = StoreReader::open(&buf[..]).unwrap();
                assert_eq!(reader.header(), h);
                let back = reader.read_all().unwrap();
                assert_eq!(back, words, "len {len} compress {compress}");
            }
        }
    }

    #[test]
    fn prefix_encoding_beats_basic() {
        let words = sap_words(12);
        let mut buf = Vec::new();
        write_stream(&words, &mut buf, false).unwrap();
        let s = stats(&buf[..]).unwrap();
        assert_eq!(s.count, 124);
        assert!(s.packed_bytes < s.basic_bytes);
        assert_eq!(s.stored_bytes, s.packed_bytes);
    }

    #[test]
    fn rejects_unordered_or_mixed_input() {
        let words: Vec<Word> = vec!["RULD".parse().unwrap(), "RULD".parse().unwrap()];
        let mut buf = Vec::new();
        assert!(matches!(
            write_stream(&words, &mut buf, false),
            Err(Error::UnsortedWords(1))
        ));

        let words: Vec<Word> = vec!["RULD".parse().unwrap(), "RL".parse().unwrap()];
        assert!(matches!(
            write_stream(&words, &mut Vec::new(), false),
            Err(Error::StreamMismatch { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn detects_corruption() {
        let words = sap_words(8);
        let mut buf = Vec::new();
        write_stream(&words, &mut buf, false).unwrap();

        // overstate the count: decoding must hit a truncation error
        let mut lying = buf.clone();
        lying[8..16].copy_from_slice(&(words.len() as u64 + 1).to_le_bytes());
        let reader = StoreReader::open(&lying[..]).unwrap();
        let decoded: Result<Vec<Word>> = reader.words().collect();
        assert!(matches!(decoded, Err(Error::StoreFormat { .. })));

        // bad magic
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(StoreReader::open(&bad[..]).is_err());

        // bad version
        let mut bad = buf.clone();
        bad[4] = 9;
        assert!(StoreReader::open(&bad[..]).is_err());
    }

    #[test]
    fn empty_stream() {
        let mut buf = Vec::new();
        let h = write_stream(std::iter::empty::<&Word>(), &mut buf, false).unwrap();
        assert_eq!(h.count, 0);
        let s = stats(&buf[..]).unwrap();
        assert_eq!((s.count, s.stored_bytes), (0, 0));
    }
}
