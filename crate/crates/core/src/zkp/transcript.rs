//! Fiat-Shamir transcripts.
//!
//! Each element is written as a one-byte type tag followed by its fixed-length
//! canonical encoding; byte strings and statements carry a `u32` length. The
//! challenge is `hash_to_scalar("OLBSQ-v1/<system>/<label>", transcript)`.

use crate::group::{hash_to_scalar, LeftElement, Scalar, TargetElement};

#[cfg(test)]
const TAG_SCALAR: u8 = 0x01;
const TAG_LEFT: u8 = 0x02;
const TAG_TARGET: u8 = 0x04;
const TAG_MESSAGE: u8 = 0x05;
const TAG_INDEX: u8 = 0x06;
const TAG_STATEMENT: u8 = 0x07;

#[derive(Debug, Default, Clone)]
pub(crate) struct Transcript {
    buf: Vec<u8>,
}

impl Transcript {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    fn tagged(&mut self, tag: u8, bytes: &[u8]) -> &mut Self {
        self.buf.push(tag);
        self.buf.extend_from_slice(bytes);
        self
    }

    fn prefixed(&mut self, tag: u8, bytes: &[u8]) -> &mut Self {
        let len = u32::try_from(bytes.len()).expect("transcript item fits in u32");
        self.buf.push(tag);
        self.buf.extend_from_slice(&len.to_be_bytes());
        self.buf.extend_from_slice(bytes);
        self
    }

    #[cfg(test)]
    pub(crate) fn scalar(&mut self, s: &Scalar) -> &mut Self {
        self.tagged(TAG_SCALAR, &s.to_bytes())
    }

    pub(crate) fn left(&mut self, e: &LeftElement) -> &mut Self {
        self.tagged(TAG_LEFT, &e.to_bytes())
    }

    pub(crate) fn target(&mut self, e: &TargetElement) -> &mut Self {
        self.tagged(TAG_TARGET, &e.to_bytes())
    }

    pub(crate) fn message(&mut self, msg: &[u8]) -> &mut Self {
        self.prefixed(TAG_MESSAGE, msg)
    }

    pub(crate) fn index(&mut self, v: usize) -> &mut Self {
        let v = u32::try_from(v).expect("index fits in u32");
        self.tagged(TAG_INDEX, &v.to_be_bytes())
    }

    /// The public statement a challenge is bound to.
    pub(crate) fn statement(&mut self, bytes: &[u8]) -> &mut Self {
        self.prefixed(TAG_STATEMENT, bytes)
    }

    pub(crate) fn challenge(&self, system: &str, label: &str) -> Scalar {
        let tag = format!("OLBSQ-v1/{system}/{label}");
        hash_to_scalar(tag.as_bytes(), &self.buf)
    }
}
