//! PGM image reading, both ASCII `P2` and binary `P5`.
//!
//! The header is whitespace-separated tokens with `#` comments running
//! to end of line: magic, width, height, maxval. `P5` pixel data starts
//! after the single whitespace byte that terminates the maxval token.
//! Only single-byte samples are accepted, so maxval is capped at 255.
//! Parse failures report the byte offset they were detected at.

use std::path::Path;

use trishape_core::raster::{BinaryMask, GrayImage};

use crate::error::PipelineError;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and comments, then returns the next token and
    /// the offset it starts at.
    fn token(&mut self) -> Result<(usize, &'a [u8]), (usize, String)> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        if self.pos >= self.bytes.len() {
            return Err((self.bytes.len(), "unexpected end of header".into()));
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        Ok((start, &self.bytes[start..self.pos]))
    }

    fn number(&mut self, what: &str) -> Result<(usize, usize), (usize, String)> {
        let (at, tok) = self.token()?;
        let text = std::str::from_utf8(tok).map_err(|_| (at, format!("{what} is not ASCII")))?;
        let value = text
            .parse::<usize>()
            .map_err(|_| (at, format!("{what} `{text}` is not a number")))?;
        Ok((at, value))
    }
}

/// Parses PGM bytes. Errors carry the byte offset of the failure.
pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage, (usize, String)> {
    let mut cur = Cursor { bytes, pos: 0 };
    let (at, magic) = cur.token()?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        other => {
            let shown = String::from_utf8_lossy(other);
            return Err((at, format!("magic `{shown}` is not P2 or P5")));
        }
    };
    let (at, width) = cur.number("width")?;
    if width == 0 {
        return Err((at, "width is zero".into()));
    }
    let (at, height) = cur.number("height")?;
    if height == 0 {
        return Err((at, "height is zero".into()));
    }
    let (at, maxval) = cur.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err((at, format!("maxval {maxval} outside 1..=255")));
    }
    let count = width * height;
    let data = if binary {
        // Exactly one whitespace byte separates maxval from the payload.
        if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
            return Err((cur.pos, "missing whitespace before P5 payload".into()));
        }
        cur.pos += 1;
        let payload = &bytes[cur.pos..];
        if payload.len() < count {
            return Err((
                bytes.len(),
                format!("P5 payload short by {} bytes", count - payload.len()),
            ));
        }
        payload[..count].to_vec()
    } else {
        let mut data = Vec::with_capacity(count);
        for _ in 0..count {
            let (at, value) =
                cur.number("sample").map_err(|(p, m)| {
                    (p, format!("{m} ({} of {count} samples read)", data.len()))
                })?;
            if value > maxval {
                return Err((at, format!("sample {value} exceeds maxval {maxval}")));
            }
            data.push(value as u8);
        }
        data
    };
    GrayImage::new(width, height, data).map_err(|e| (0, e.to_string()))
}

/// Loads a PGM file.
///
/// # Errors
///
/// [`PipelineError::Io`] when the file cannot be read,
/// [`PipelineError::Parse`] with a byte offset when it cannot be parsed.
/// Both are labeled with the caller's `stage`.
pub fn load_pgm(path: &Path, stage: &'static str) -> Result<GrayImage, PipelineError> {
    let bytes = std::fs::read(path).map_err(|source| PipelineError::Io {
        stage,
        path: path.to_path_buf(),
        source,
    })?;
    parse_pgm(&bytes).map_err(|(offset, message)| PipelineError::Parse {
        stage,
        path: path.to_path_buf(),
        offset,
        message,
    })
}

/// Loads a PGM file as a mask: every sample above zero is foreground.
pub fn load_mask(path: &Path, stage: &'static str) -> Result<BinaryMask, PipelineError> {
    let img = load_pgm(path, stage)?;
    Ok(BinaryMask::from_gray(&img, 0))
}
