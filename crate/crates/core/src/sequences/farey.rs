use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Bound::{Excluded, Unbounded};

use num_integer::Integer;

use super::SequenceError;

/// Stern-Brocot (Stern's diatomic) sequence: `SB(2n) = SB(n)`,
/// `SB(2n+1) = SB(n) + SB(n+1)`.
///
/// Walks the bits of `n` keeping the pair `(SB(m), SB(m+1))` for the prefix `m`.
pub fn stern_brocot(n: u64) -> Result<u64, SequenceError> {
    let (mut a, mut b) = (0u64, 1u64);
    for bit in (0..64 - n.leading_zeros()).rev() {
        if (n >> bit) & 1 == 0 {
            b = a.checked_add(b).ok_or(SequenceError::Overflow)?;
        } else {
            a = a.checked_add(b).ok_or(SequenceError::Overflow)?;
        }
    }
    Ok(a)
}

/// Nonnegative fraction, always stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = num.gcd(&den);
        Fraction { num: num / g, den: den / g }
    }

    /// Child's addition `a/b (+) c/d = (a+c)/(b+d)`.
    pub fn mediant(self, other: Fraction) -> Result<Fraction, SequenceError> {
        let num = self.num.checked_add(other.num).ok_or(SequenceError::Overflow)?;
        let den = self.den.checked_add(other.den).ok_or(SequenceError::Overflow)?;
        Ok(Fraction::new(num, den))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Node of the Farey tree reached from `0/1` along `rep_2(n)`: the leading
/// 1 lands on `1/2`, then 0 goes to the left child and 1 to the right child.
pub fn farey_node(n: u64) -> Result<Fraction, SequenceError> {
    if n == 0 {
        return Ok(Fraction::new(0, 1));
    }
    let mut left = Fraction::new(0, 1);
    let mut right = Fraction::new(1, 1);
    let top = 63 - n.leading_zeros();
    for bit in (0..top).rev() {
        let node = left.mediant(right)?;
        if (n >> bit) & 1 == 0 {
            right = node;
        } else {
            left = node;
        }
    }
    left.mediant(right)
}

/// `D(n)`, the denominator of [`farey_node`].
pub fn farey_denominator(n: u64) -> Result<u64, SequenceError> {
    Ok(farey_node(n)?.den)
}

/// Level `k` of the Farey tree, left to right, grown from the
/// `Left`/`Right` neighbour definition rather than by path walking.
/// Level 0 is `{0/1, 1/1}` and level 1 is `{1/2}`.
pub fn farey_level(k: u32) -> Result<Vec<Fraction>, SequenceError> {
    let mut seen: BTreeSet<Fraction> = [Fraction::new(0, 1), Fraction::new(1, 1)].into();
    let mut level: Vec<Fraction> = seen.iter().copied().collect();
    for depth in 1..=k {
        let next = if depth == 1 {
            vec![Fraction::new(1, 2)]
        } else {
            let mut next = Vec::with_capacity(level.len() * 2);
            for &node in &level {
                // `seen` holds exactly the levels below the current one here
                let left = *seen.range(..node).next_back().expect("0/1 is below every node");
                let right = *seen.range((Excluded(node), Unbounded)).next().expect("1/1 is above every node");
                next.push(node.mediant(left)?);
                next.push(node.mediant(right)?);
            }
            next
        };
        seen.extend(level.iter().copied());
        level = next;
    }
    Ok(level)
}
