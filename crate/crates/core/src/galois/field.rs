use core::fmt;
use core::hash::Hash;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use crate::{Error, Result};

/// An element of GF(2^m).
///
/// Addition is XOR, so `a + a == 0` and negation is the identity. All
/// operations are exact; only inversion can fail.
pub trait FieldElement:
    Copy
    + Eq
    + Ord
    + Hash
    + Default
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
    + 'static
{
    /// Extension degree m.
    const DEGREE: u32;
    /// Reduction polynomial including the x^m term.
    const MODULUS: u32;
    const ZERO: Self;
    const ONE: Self;
    /// Primitive element (the class of `x`).
    const ALPHA: Self;

    /// Builds an element from its polynomial-basis bits, or `None` when
    /// `bits >= 2^m`.
    fn from_bits(bits: u32) -> Option<Self>;
    fn bits(self) -> u32;

    /// Multiplicative inverse.
    fn inv(self) -> Result<Self>;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Size of the multiplicative group, 2^m - 1.
    fn group_order() -> u64 {
        (1u64 << Self::DEGREE) - 1
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    /// `alpha^exp`.
    fn alpha_pow(exp: u64) -> Self {
        Self::ALPHA.pow(exp % Self::group_order())
    }

    fn try_div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.inv()?)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let bits = rng.gen_range(0..(1u32 << Self::DEGREE));
        Self::from_bits(bits).expect("bits drawn below 2^m")
    }
}

/// Parameters of a supported field, as verified by [`check_generator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldInfo {
    pub degree: u32,
    pub modulus: u32,
    pub alpha: u32,
}

/// Checks that `ALPHA` generates the multiplicative group: `alpha^(2^m-1) = 1`
/// and `alpha^((2^m-1)/p) != 1` for every prime `p` dividing `2^m - 1`.
pub fn check_generator<F: FieldElement>() -> Result<FieldInfo> {
    let order = F::group_order();
    if F::ALPHA.pow(order) != F::ONE {
        return Err(Error::InvalidParameters("alpha^(2^m-1) != 1".into()));
    }
    let mut rest = order;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            if F::ALPHA.pow(order / p) == F::ONE {
                return Err(Error::InvalidParameters("alpha is not primitive".into()));
            }
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 && F::ALPHA.pow(order / rest) == F::ONE {
        return Err(Error::InvalidParameters("alpha is not primitive".into()));
    }
    Ok(FieldInfo {
        degree: F::DEGREE,
        modulus: F::MODULUS,
        alpha: F::ALPHA.bits(),
    })
}

macro_rules! char2_ops {
    ($t:ident) => {
        impl Add for $t {
            type Output = Self;
            #[inline]
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn add(self, rhs: Self) -> Self {
                $t(self.0 ^ rhs.0)
            }
        }

        impl Sub for $t {
            type Output = Self;
            #[inline]
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn sub(self, rhs: Self) -> Self {
                $t(self.0 ^ rhs.0)
            }
        }

        impl Neg for $t {
            type Output = Self;
            #[inline]
            fn neg(self) -> Self {
                self
            }
        }

        impl AddAssign for $t {
            #[inline]
            #[allow(clippy::suspicious_op_assign_impl)]
            fn add_assign(&mut self, rhs: Self) {
                self.0 ^= rhs.0;
            }
        }

        impl SubAssign for $t {
            #[inline]
            #[allow(clippy::suspicious_op_assign_impl)]
            fn sub_assign(&mut self, rhs: Self) {
                self.0 ^= rhs.0;
            }
        }

        impl MulAssign for $t {
            #[inline]
            fn mul_assign(&mut self, rhs: Self) {
                *self = *self * rhs;
            }
        }

        impl Sum for $t {
            fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
                iter.fold(Self::ZERO, |a, b| a + b)
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:#x}", self.0)
            }
        }
    };
}

/// Reduction polynomial for GF(2^8): x^8 + x^4 + x^3 + x^2 + 1.
pub const GF256_MODULUS: u32 = 0x11d;

/// Reduction polynomial for GF(2^16): x^16 + x^12 + x^3 + x + 1.
pub const GF65536_MODULUS: u32 = 0x1100b;

const fn gf256_tables() -> ([u8; 512], [u8; 256]) {
    let mut exp = [0u8; 512];
    let mut log = [0u8; 256];
    let mut x: u32 = 1;
    let mut i = 0;
    while i < 255 {
        exp[i] = x as u8;
        exp[i + 255] = x as u8;
        log[x as usize] = i as u8;
        x <<= 1;
        if x & 0x100 != 0 {
            x ^= GF256_MODULUS;
        }
        i += 1;
    }
    // exp[510], exp[511] are never read: log sums stay below 509.
    (exp, log)
}

const GF256_TABLES: ([u8; 512], [u8; 256]) = gf256_tables();
static GF256_EXP: [u8; 512] = GF256_TABLES.0;
static GF256_LOG: [u8; 256] = GF256_TABLES.1;

/// Element of GF(2^8), multiplied through log/antilog tables.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Gf256(pub u8);

char2_ops!(Gf256);

impl Mul for Gf256 {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf256(0);
        }
        let s = GF256_LOG[self.0 as usize] as usize + GF256_LOG[rhs.0 as usize] as usize;
        Gf256(GF256_EXP[s])
    }
}

impl FieldElement for Gf256 {
    const DEGREE: u32 = 8;
    const MODULUS: u32 = GF256_MODULUS;
    const ZERO: Self = Gf256(0);
    const ONE: Self = Gf256(1);
    const ALPHA: Self = Gf256(2);

    fn from_bits(bits: u32) -> Option<Self> {
        u8::try_from(bits).ok().map(Gf256)
    }

    fn bits(self) -> u32 {
        self.0 as u32
    }

    fn inv(self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = GF256_LOG[self.0 as usize] as usize;
        Ok(Gf256(GF256_EXP[(255 - l) % 255]))
    }

    fn pow(self, exp: u64) -> Self {
        if self.0 == 0 {
            return if exp == 0 { Gf256(1) } else { Gf256(0) };
        }
        let l = GF256_LOG[self.0 as usize] as u64;
        Gf256(GF256_EXP[((l * (exp % 255)) % 255) as usize])
    }
}

/// Element of GF(2^16), multiplied carry-less with explicit reduction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Gf65536(pub u16);

char2_ops!(Gf65536);

impl Mul for Gf65536 {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let a = self.0 as u32;
        let mut b = rhs.0 as u32;
        let mut prod: u32 = 0;
        let mut shifted = a;
        while b != 0 {
            if b & 1 != 0 {
                prod ^= shifted;
            }
            shifted <<= 1;
            b >>= 1;
        }
        for bit in (16..32).rev() {
            if prod & (1 << bit) != 0 {
                prod ^= GF65536_MODULUS << (bit - 16);
            }
        }
        Gf65536(prod as u16)
    }
}

impl FieldElement for Gf65536 {
    const DEGREE: u32 = 16;
    const MODULUS: u32 = GF65536_MODULUS;
    const ZERO: Self = Gf65536(0);
    const ONE: Self = Gf65536(1);
    const ALPHA: Self = Gf65536(2);

    fn from_bits(bits: u32) -> Option<Self> {
        u16::try_from(bits).ok().map(Gf65536)
    }

    fn bits(self) -> u32 {
        self.0 as u32
    }

    fn inv(self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(Self::group_order() - 1))
    }
}
