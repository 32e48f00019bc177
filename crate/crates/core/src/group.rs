//! Pairing-group layer over BLS12-381.
//!
//! The protocol is written for a symmetric pairing `e: G x G -> GT`. BLS12-381 is
//! asymmetric, so every source element here lives in a fixed pairing slot: left
//! elements are points of G1, right elements points of G2. Public bases that must
//! occupy both slots are carried as a [`DualElement`] sharing one exponent.

// Groups are written multiplicatively on top of arkworks' additive notation.
#![allow(clippy::suspicious_arithmetic_impl)]
//!
//! All exponentiations, pairings and transcript hashes go through this module so
//! that [`crate::bench::trace`] can count them.
//!
//! Encodings are fixed length and canonical:
//!
//! | type            | bytes | layout                                  |
//! |-----------------|-------|-----------------------------------------|
//! | [`Scalar`]      | 32    | little-endian integer, `< p`            |
//! | [`LeftElement`] | 48    | compressed G1 point (ZCash flag bits)   |
//! | [`RightElement`]| 96    | compressed G2 point (ZCash flag bits)   |
//! | [`TargetElement`]| 576  | twelve little-endian Fp limbs of Fp12   |
//!
//! Decoding rejects off-curve points, points outside the prime-order subgroup,
//! field limbs `>= q` and any byte string that does not re-encode identically.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use ark_bls12_381::{Bls12_381, Fr, G1Projective, G2Projective};
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::PrimeGroup;
use ark_ff::{BigInteger, Field, PrimeField, UniformRand, Zero};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize, Compress, Validate};
use rand::{CryptoRng, RngCore};
use sha2::{Digest, Sha512};

use crate::bench::tally;
use crate::error::{DecodeError, Error, Result};

pub const SCALAR_BYTES: usize = 32;
pub const LEFT_BYTES: usize = 48;
pub const RIGHT_BYTES: usize = 96;
pub const TARGET_BYTES: usize = 576;

/// A named curve choice. The security parameter maps onto exactly one entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterSet {
    pub id: u8,
    pub name: &'static str,
    /// Bits of the prime group order.
    pub order_bits: u32,
    /// Approximate classical security level.
    pub security_bits: u32,
}

pub const BLS12_381: ParameterSet = ParameterSet {
    id: 1,
    name: "BLS12-381",
    order_bits: 255,
    security_bits: 128,
};

/// Registry of supported parameter sets; the first entry is the default.
pub const PARAMETER_SETS: &[ParameterSet] = &[BLS12_381];

impl ParameterSet {
    pub fn by_id(id: u8) -> Result<ParameterSet, DecodeError> {
        PARAMETER_SETS
            .iter()
            .copied()
            .find(|p| p.id == id)
            .ok_or(DecodeError::Curve(id))
    }

    /// Smallest registered set meeting `security_bits`.
    pub fn for_security(security_bits: u32) -> Option<ParameterSet> {
        PARAMETER_SETS
            .iter()
            .copied()
            .find(|p| p.security_bits >= security_bits)
    }
}

impl Default for ParameterSet {
    fn default() -> Self {
        PARAMETER_SETS[0]
    }
}

fn encode<T: CanonicalSerialize>(value: &T, out: &mut [u8]) {
    value
        .serialize_compressed(&mut &mut out[..])
        .expect("fixed-size buffer matches the encoding length");
}

fn decode<T: CanonicalSerialize + CanonicalDeserialize>(
    bytes: &[u8],
    expected: usize,
    what: &'static str,
) -> Result<T, DecodeError> {
    if bytes.len() != expected {
        return Err(DecodeError::Length {
            what,
            expected,
            actual: bytes.len(),
        });
    }
    let value =
        T::deserialize_with_mode(bytes, Compress::Yes, Validate::Yes).map_err(|_| DecodeError::Invalid(what))?;
    let mut again = vec![0u8; expected];
    encode(&value, &mut again);
    if again != bytes {
        return Err(DecodeError::NonCanonical(what));
    }
    Ok(value)
}

/// An element of the scalar field Z_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Scalar(pub(crate) Fr);

impl Scalar {
    pub const ENCODED_LEN: usize = SCALAR_BYTES;

    pub fn zero() -> Self {
        Scalar(Fr::zero())
    }

    pub fn one() -> Self {
        Scalar(Fr::from(1u64))
    }

    pub fn from_u64(v: u64) -> Self {
        Scalar(Fr::from(v))
    }

    /// Uniform sample from `[0, p)`.
    pub fn random<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        Scalar(Fr::rand(rng))
    }

    /// Uniform sample from `[1, p)`.
    pub fn random_nonzero<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        loop {
            let s = Self::random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn invert(&self) -> Option<Scalar> {
        self.0.inverse().map(Scalar)
    }

    /// `self^e` for a small public integer exponent.
    pub fn pow_u64(&self, e: u64) -> Scalar {
        Scalar(self.0.pow([e]))
    }

    pub fn to_bytes(&self) -> [u8; SCALAR_BYTES] {
        let mut out = [0u8; SCALAR_BYTES];
        encode(&self.0, &mut out);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        decode(bytes, SCALAR_BYTES, "scalar").map(Scalar)
    }

    /// Interprets little-endian bytes as an integer and reduces it mod p.
    pub fn from_bytes_wide(bytes: &[u8]) -> Self {
        Scalar(Fr::from_le_bytes_mod_order(bytes))
    }

    /// The field modulus p as big-endian bytes.
    pub fn modulus_be_bytes() -> Vec<u8> {
        Fr::MODULUS.to_bytes_be()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.0)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl From<u64> for Scalar {
    fn from(v: u64) -> Self {
        Scalar::from_u64(v)
    }
}

/// Which pairing slot a source element may occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

macro_rules! source_group {
    ($name:ident, $inner:ty, $bytes:expr, $what:expr) => {
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        pub struct $name(pub(crate) $inner);

        impl $name {
            pub const ENCODED_LEN: usize = $bytes;

            /// The fixed backend generator of this slot.
            pub fn generator() -> Self {
                $name(<$inner>::generator())
            }

            pub fn identity() -> Self {
                $name(<$inner>::zero())
            }

            pub fn is_identity(&self) -> bool {
                self.0.is_zero()
            }

            /// Exponentiation; counted as one source-group exponentiation.
            pub fn pow(&self, e: &Scalar) -> Self {
                tally::exp_source(1, 1);
                $name(self.0 * e.0)
            }

            /// `generator^e` for a fresh random `e`.
            pub fn random<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
                Self::generator().pow(&Scalar::random(rng))
            }

            pub fn inverse(&self) -> Self {
                $name(-self.0)
            }

            pub fn to_bytes(&self) -> [u8; $bytes] {
                let mut out = [0u8; $bytes];
                encode(&self.0, &mut out);
                out
            }

            pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
                decode(bytes, $bytes, $what).map($name)
            }
        }

        impl Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl<'a> Mul<&'a $name> for &'a $name {
            type Output = $name;
            fn mul(self, rhs: &'a $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl Div for $name {
            type Output = $name;
            fn div(self, rhs: $name) -> $name {
                $name(self.0 - rhs.0)
            }
        }

        impl<'a> Div<&'a $name> for &'a $name {
            type Output = $name;
            fn div(self, rhs: &'a $name) -> $name {
                $name(self.0 - rhs.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}(", stringify!($name))?;
                for b in &self.to_bytes()[..8] {
                    write!(f, "{b:02x}")?;
                }
                write!(f, "..)")
            }
        }
    };
}

source_group!(LeftElement, G1Projective, LEFT_BYTES, "left source element");
source_group!(RightElement, G2Projective, RIGHT_BYTES, "right source element");

/// A source element carrying its pairing slot at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceElement {
    Left(LeftElement),
    Right(RightElement),
}

impl SourceElement {
    pub fn side(&self) -> Side {
        match self {
            SourceElement::Left(_) => Side::Left,
            SourceElement::Right(_) => Side::Right,
        }
    }
}

impl From<LeftElement> for SourceElement {
    fn from(e: LeftElement) -> Self {
        SourceElement::Left(e)
    }
}

impl From<RightElement> for SourceElement {
    fn from(e: RightElement) -> Self {
        SourceElement::Right(e)
    }
}

/// A public base usable in either pairing slot: `(P1^a, P2^a)` for one exponent `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualElement {
    pub left: LeftElement,
    pub right: RightElement,
}

impl DualElement {
    /// Both halves from one exponent. One logical exponentiation, two physical.
    pub fn from_exponent(a: &Scalar) -> Self {
        tally::exp_source(1, 2);
        DualElement {
            left: LeftElement(G1Projective::generator() * a.0),
            right: RightElement(G2Projective::generator() * a.0),
        }
    }

    pub fn random<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        Self::from_exponent(&Scalar::random_nonzero(rng))
    }

    /// `e(self, self)`.
    pub fn self_pairing(&self) -> TargetElement {
        pair(&self.left, &self.right)
    }

    /// Whether both halves share one discrete logarithm.
    pub fn is_consistent(&self) -> bool {
        pair(&self.left, &RightElement::generator()) == pair(&LeftElement::generator(), &self.right)
    }
}

/// An element of the target group GT, written multiplicatively.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetElement(pub(crate) PairingOutput<Bls12_381>);

impl TargetElement {
    pub const ENCODED_LEN: usize = TARGET_BYTES;

    pub fn identity() -> Self {
        TargetElement(PairingOutput::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    /// `e(P1, P2)` for the backend generators.
    pub fn generator() -> Self {
        TargetElement(PairingOutput::<Bls12_381>::generator())
    }

    /// Exponentiation; counted as one target-group exponentiation.
    pub fn pow(&self, e: &Scalar) -> Self {
        tally::exp_target(1);
        TargetElement(self.0 * e.0)
    }

    /// Uniformly random element. Not counted: used for service masks, which are
    /// protocol inputs rather than protocol work.
    pub fn random<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        TargetElement(PairingOutput::<Bls12_381>::generator() * Fr::rand(rng))
    }

    pub fn inverse(&self) -> Self {
        TargetElement(-self.0)
    }

    pub fn to_bytes(&self) -> [u8; TARGET_BYTES] {
        let mut out = [0u8; TARGET_BYTES];
        encode(&self.0, &mut out);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        decode(bytes, TARGET_BYTES, "target element").map(TargetElement)
    }
}

impl Mul for TargetElement {
    type Output = TargetElement;
    fn mul(self, rhs: TargetElement) -> TargetElement {
        TargetElement(self.0 + rhs.0)
    }
}

impl<'a> Mul<&'a TargetElement> for &'a TargetElement {
    type Output = TargetElement;
    fn mul(self, rhs: &'a TargetElement) -> TargetElement {
        TargetElement(self.0 + rhs.0)
    }
}

impl Div for TargetElement {
    type Output = TargetElement;
    fn div(self, rhs: TargetElement) -> TargetElement {
        TargetElement(self.0 - rhs.0)
    }
}

impl<'a> Div<&'a TargetElement> for &'a TargetElement {
    type Output = TargetElement;
    fn div(self, rhs: &'a TargetElement) -> TargetElement {
        TargetElement(self.0 - rhs.0)
    }
}

impl fmt::Debug for TargetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TargetElement(")?;
        for b in &self.to_bytes()[..8] {
            write!(f, "{b:02x}")?;
        }
        write!(f, "..)")
    }
}

/// The bilinear map `e(a, b)`. Counted as one pairing.
pub fn pair(a: &LeftElement, b: &RightElement) -> TargetElement {
    tally::pairing();
    TargetElement(Bls12_381::pairing(a.0, b.0))
}

/// [`pair`] over runtime-tagged operands; the left operand must be a left element
/// and the right operand a right element.
pub fn pair_tagged(a: &SourceElement, b: &SourceElement) -> Result<TargetElement> {
    match (a, b) {
        (SourceElement::Left(a), SourceElement::Right(b)) => Ok(pair(a, b)),
        (SourceElement::Right(_), _) => Err(Error::SideMismatch("first operand must be a left element")),
        (_, SourceElement::Left(_)) => Err(Error::SideMismatch("second operand must be a right element")),
    }
}

/// Hash to Z_p: SHA-512 over a length-prefixed domain tag and the transcript,
/// reduced mod p. 512 bits of output keep the bias below 2^-250.
pub fn hash_to_scalar(domain_tag: &[u8], transcript: &[u8]) -> Scalar {
    tally::hash();
    let mut h = Sha512::new();
    h.update((domain_tag.len() as u64).to_be_bytes());
    h.update(domain_tag);
    h.update(transcript);
    Scalar::from_bytes_wide(&h.finalize())
}
