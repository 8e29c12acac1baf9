//! MSR code constructions.
//!
//! All codewords are [`Codeword`](crate::Codeword)s: column `i` is node `i`.

pub mod coop;
pub mod dm;
pub mod parity;
pub mod pm;
pub mod twonbr;

/// `a` with r-ary digit `i` replaced by `u`.
pub(crate) fn with_digit(a: usize, i: usize, u: usize, r: usize) -> usize {
    let w = r.pow(i as u32);
    let cur = (a / w) % r;
    a - cur * w + u * w
}

/// r-ary digit `i` of `a`.
pub(crate) fn digit(a: usize, i: usize, r: usize) -> usize {
    (a / r.pow(i as u32)) % r
}
