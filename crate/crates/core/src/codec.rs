//! Big-endian binary writer and reader shared by the file formats and the wire
//! protocol. Group elements use their fixed-length encodings from
//! [`crate::group`]; variable-length byte strings carry a `u32` length prefix.

use crate::error::DecodeError;
use crate::group::{LeftElement, RightElement, Scalar, TargetElement};

/// How many encoded elements of each kind a [`Writer`] has seen.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct ElementTally {
    pub left: u64,
    pub right: u64,
    pub target: u64,
    pub scalar: u64,
}

impl ElementTally {
    pub fn source(&self) -> u64 {
        self.left + self.right
    }
}

#[derive(Debug, Default, Clone)]
pub struct Writer {
    buf: Vec<u8>,
    tally: ElementTally,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u8(&mut self, v: u8) -> &mut Self {
        self.buf.push(v);
        self
    }

    pub fn u16(&mut self, v: u16) -> &mut Self {
        self.buf.extend_from_slice(&v.to_be_bytes());
        self
    }

    pub fn u32(&mut self, v: u32) -> &mut Self {
        self.buf.extend_from_slice(&v.to_be_bytes());
        self
    }

    /// A count or index; must fit in `u32`.
    pub fn len(&mut self, v: usize) -> &mut Self {
        self.u32(u32::try_from(v).expect("length fits in u32"))
    }

    pub fn raw(&mut self, bytes: &[u8]) -> &mut Self {
        self.buf.extend_from_slice(bytes);
        self
    }

    pub fn bytes(&mut self, bytes: &[u8]) -> &mut Self {
        self.len(bytes.len()).raw(bytes)
    }

    pub fn scalar(&mut self, s: &Scalar) -> &mut Self {
        self.tally.scalar += 1;
        self.raw(&s.to_bytes())
    }

    pub fn left(&mut self, e: &LeftElement) -> &mut Self {
        self.tally.left += 1;
        self.raw(&e.to_bytes())
    }

    pub fn right(&mut self, e: &RightElement) -> &mut Self {
        self.tally.right += 1;
        self.raw(&e.to_bytes())
    }

    pub fn target(&mut self, e: &TargetElement) -> &mut Self {
        self.tally.target += 1;
        self.raw(&e.to_bytes())
    }

    pub fn tally(&self) -> ElementTally {
        self.tally
    }

    pub fn byte_len(&self) -> usize {
        self.buf.len()
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

#[derive(Debug)]
pub struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf }
    }

    pub fn remaining(&self) -> usize {
        self.buf.len()
    }

    pub fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8], DecodeError> {
        if self.buf.len() < n {
            return Err(DecodeError::Truncated(what));
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    pub fn u8(&mut self, what: &'static str) -> Result<u8, DecodeError> {
        Ok(self.take(1, what)?[0])
    }

    pub fn u16(&mut self, what: &'static str) -> Result<u16, DecodeError> {
        let b = self.take(2, what)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    pub fn u32(&mut self, what: &'static str) -> Result<u32, DecodeError> {
        let b = self.take(4, what)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    /// A `u32` count bounded by `max`.
    pub fn len(&mut self, what: &'static str, max: usize) -> Result<usize, DecodeError> {
        let v = self.u32(what)? as usize;
        if v > max {
            return Err(DecodeError::TooLarge { what, value: v as u64 });
        }
        Ok(v)
    }

    pub fn bytes(&mut self, what: &'static str, max: usize) -> Result<&'a [u8], DecodeError> {
        let n = self.len(what, max)?;
        self.take(n, what)
    }

    pub fn scalar(&mut self) -> Result<Scalar, DecodeError> {
        Scalar::from_bytes(self.take(Scalar::ENCODED_LEN, "scalar")?)
    }

    pub fn left(&mut self) -> Result<LeftElement, DecodeError> {
        LeftElement::from_bytes(self.take(LeftElement::ENCODED_LEN, "left source element")?)
    }

    pub fn right(&mut self) -> Result<RightElement, DecodeError> {
        RightElement::from_bytes(self.take(RightElement::ENCODED_LEN, "right source element")?)
    }

    pub fn target(&mut self) -> Result<TargetElement, DecodeError> {
        TargetElement::from_bytes(self.take(TargetElement::ENCODED_LEN, "target element")?)
    }

    pub fn finish(self) -> Result<(), DecodeError> {
        if self.buf.is_empty() {
            Ok(())
        } else {
            Err(DecodeError::Trailing(self.buf.len()))
        }
    }
}
