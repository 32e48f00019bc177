//! Framed transport shared by the provider daemon and the user client.
//!
//! ```text
//! frame   = u32 BE length || version (u8) || session id (16 bytes) || type (u8) || body
//! length  = 18 + body length (everything after the length field)
//! ```
//!
//! Message bodies:
//!
//! | type | name           | direction        | body                                   |
//! |------|----------------|------------------|----------------------------------------|
//! | 1    | ProviderProof  | user -> provider | empty: opens a session                 |
//! | 1    | ProviderProof  | provider -> user | encoded `ProofSP1`                     |
//! | 2    | Query          | user -> provider | `QueryCommitments` then `ProofU`       |
//! | 3    | KeyBundle      | provider -> user | `KeyBundle` then `ProofSP2`            |
//! | 4    | Abort          | either           | u16 BE reason, u32 BE length, UTF-8    |

use std::fmt;
use std::io::{self, Read, Write};

use crate::codec::{Reader, Writer};
use crate::error::DecodeError;
use crate::transfer::KeyBundle;
use crate::zkp::{ProofSP2, ProofU, QueryCommitments};

pub const WIRE_VERSION: u8 = 1;
pub const SESSION_ID_LEN: usize = 16;
pub const HEADER_LEN: usize = 1 + SESSION_ID_LEN + 1;
pub const DEFAULT_MAX_FRAME: usize = 16 << 20;
const MAX_ABORT_TEXT: usize = 4096;

pub type SessionId = [u8; SESSION_ID_LEN];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MsgType {
    ProviderProof = 1,
    Query = 2,
    KeyBundle = 3,
    Abort = 4,
}

impl MsgType {
    pub fn from_u8(v: u8) -> Option<Self> {
        Some(match v {
            1 => MsgType::ProviderProof,
            2 => MsgType::Query,
            3 => MsgType::KeyBundle,
            4 => MsgType::Abort,
            _ => return None,
        })
    }
}

/// Machine-readable reason carried by an Abort frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbortReason {
    MalformedFrame = 1,
    UnsupportedVersion = 2,
    UnknownMsgType = 3,
    UnexpectedMessage = 4,
    QueryProofInvalid = 5,
    QueryTooLarge = 6,
    QueryOutOfRange = 7,
    SessionMismatch = 8,
    Internal = 9,
    ProviderProofInvalid = 10,
    KeyProofInvalid = 11,
}

impl AbortReason {
    pub fn code(self) -> u16 {
        self as u16
    }

    pub fn from_code(code: u16) -> Option<Self> {
        use AbortReason::*;
        Some(match code {
            1 => MalformedFrame,
            2 => UnsupportedVersion,
            3 => UnknownMsgType,
            4 => UnexpectedMessage,
            5 => QueryProofInvalid,
            6 => QueryTooLarge,
            7 => QueryOutOfRange,
            8 => SessionMismatch,
            9 => Internal,
            10 => ProviderProofInvalid,
            11 => KeyProofInvalid,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        use AbortReason::*;
        match self {
            MalformedFrame => "MALFORMED_FRAME",
            UnsupportedVersion => "UNSUPPORTED_VERSION",
            UnknownMsgType => "UNKNOWN_MSG_TYPE",
            UnexpectedMessage => "UNEXPECTED_MESSAGE",
            QueryProofInvalid => "QUERY_PROOF_INVALID",
            QueryTooLarge => "QUERY_TOO_LARGE",
            QueryOutOfRange => "QUERY_OUT_OF_RANGE",
            SessionMismatch => "SESSION_MISMATCH",
            Internal => "INTERNAL",
            ProviderProofInvalid => "PROVIDER_PROOF_INVALID",
            KeyProofInvalid => "KEY_PROOF_INVALID",
        }
    }
}

impl fmt::Display for AbortReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub session_id: SessionId,
    pub msg_type: MsgType,
    pub body: Vec<u8>,
}

/// Why a frame could not be read.
#[derive(Debug, thiserror::Error)]
pub enum FrameError {
    /// The peer closed the stream cleanly before a new frame started.
    #[error("connection closed")]
    Closed,
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("frame length {0} outside the accepted range")]
    Length(u64),
    #[error("unsupported wire version {0}")]
    Version(u8),
    #[error("unknown message type {0}")]
    MsgType(u8),
}

impl FrameError {
    /// Reason to report back to the peer, if one is owed.
    pub fn abort_reason(&self) -> Option<AbortReason> {
        match self {
            FrameError::Closed => None,
            FrameError::Io(e) if e.kind() == io::ErrorKind::UnexpectedEof => Some(AbortReason::MalformedFrame),
            FrameError::Io(_) => None,
            FrameError::Length(_) => Some(AbortReason::MalformedFrame),
            FrameError::Version(_) => Some(AbortReason::UnsupportedVersion),
            FrameError::MsgType(_) => Some(AbortReason::UnknownMsgType),
        }
    }
}

impl Frame {
    pub fn new(session_id: SessionId, msg_type: MsgType, body: Vec<u8>) -> Self {
        Frame {
            session_id,
            msg_type,
            body,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let len = u32::try_from(HEADER_LEN + self.body.len()).expect("frame fits in u32");
        let mut out = Vec::with_capacity(4 + len as usize);
        out.extend_from_slice(&len.to_be_bytes());
        out.push(WIRE_VERSION);
        out.extend_from_slice(&self.session_id);
        out.push(self.msg_type as u8);
        out.extend_from_slice(&self.body);
        out
    }

    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        w.write_all(&self.to_bytes())?;
        w.flush()
    }

    /// Reads one frame of at most `max_len` bytes after the length field.
    pub fn read_from(r: &mut impl Read, max_len: usize) -> Result<Frame, FrameError> {
        let mut len_bytes = [0u8; 4];
        let mut got = 0;
        while got < 4 {
            match r.read(&mut len_bytes[got..]) {
                Ok(0) if got == 0 => return Err(FrameError::Closed),
                Ok(0) => return Err(io::Error::from(io::ErrorKind::UnexpectedEof).into()),
                Ok(n) => got += n,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(e) => return Err(e.into()),
            }
        }
        let len = u32::from_be_bytes(len_bytes) as usize;
        if len < HEADER_LEN || len > max_len {
            return Err(FrameError::Length(len as u64));
        }
        let mut header = [0u8; HEADER_LEN];
        r.read_exact(&mut header)?;
        if header[0] != WIRE_VERSION {
            return Err(FrameError::Version(header[0]));
        }
        let msg_type = MsgType::from_u8(header[HEADER_LEN - 1]).ok_or(FrameError::MsgType(header[HEADER_LEN - 1]))?;
        let mut session_id = [0u8; SESSION_ID_LEN];
        session_id.copy_from_slice(&header[1..1 + SESSION_ID_LEN]);
        let mut body = vec![0u8; len - HEADER_LEN];
        r.read_exact(&mut body)?;
        Ok(Frame {
            session_id,
            msg_type,
            body,
        })
    }
}

pub fn encode_abort(reason: AbortReason, message: &str) -> Vec<u8> {
    let text = truncate_utf8(message, MAX_ABORT_TEXT);
    let mut w = Writer::new();
    w.u16(reason.code()).bytes(text.as_bytes());
    w.finish()
}

pub fn decode_abort(body: &[u8]) -> Result<(AbortReason, String), DecodeError> {
    let mut r = Reader::new(body);
    let reason = AbortReason::from_code(r.u16("abort reason")?).ok_or(DecodeError::Invalid("abort reason"))?;
    let text = r.bytes("abort message", MAX_ABORT_TEXT)?;
    let text = std::str::from_utf8(text).map_err(|_| DecodeError::Invalid("abort message"))?;
    r.finish()?;
    Ok((reason, text.to_owned()))
}

fn truncate_utf8(s: &str, max: usize) -> &str {
    if s.len() <= max {
        return s;
    }
    let mut end = max;
    while !s.is_char_boundary(end) {
        end -= 1;
    }
    &s[..end]
}

pub fn encode_query(omega: &QueryCommitments, proof: &ProofU) -> Vec<u8> {
    let mut w = Writer::new();
    omega.encode_into(&mut w);
    proof.encode_into(&mut w);
    w.finish()
}

pub fn decode_query(body: &[u8]) -> Result<(QueryCommitments, ProofU), DecodeError> {
    let mut r = Reader::new(body);
    let omega = QueryCommitments::decode_from(&mut r)?;
    let proof = ProofU::decode_from(&mut r)?;
    r.finish()?;
    Ok((omega, proof))
}

pub fn encode_keys(keys: &KeyBundle, proof: &ProofSP2) -> Vec<u8> {
    let mut w = Writer::new();
    keys.encode_into(&mut w);
    proof.encode_into(&mut w);
    w.finish()
}

pub fn decode_keys(body: &[u8]) -> Result<(KeyBundle, ProofSP2), DecodeError> {
    let mut r = Reader::new(body);
    let keys = KeyBundle::decode_from(&mut r)?;
    let proof = ProofSP2::decode_from(&mut r)?;
    r.finish()?;
    Ok((keys, proof))
}
