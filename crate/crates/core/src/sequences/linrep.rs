//! 2x2 linear representations: a sequence value as a matrix product read
//! along the digits of `n`.

use std::fmt;

/// Signed 2x2 integer matrix with overflow-checked arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn checked_mul(&self, rhs: &Mat2) -> Option<Mat2> {
        let (a, b) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| {
            a[i][0].checked_mul(b[0][j])?.checked_add(a[i][1].checked_mul(b[1][j])?)
        };
        Some(Mat2([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]]))
    }

    pub fn checked_apply(&self, v: [i64; 2]) -> Option<[i64; 2]> {
        let row = |i: usize| self.0[i][0].checked_mul(v[0])?.checked_add(self.0[i][1].checked_mul(v[1])?);
        Some([row(0)?, row(1)?])
    }

    pub fn checked_pow(&self, mut e: u32) -> Option<Mat2> {
        let mut base = *self;
        let mut acc = Mat2::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Some(acc)
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// Block-indexed matrices plus an initial vector; the value is the first
/// coordinate of `mu(u_k) ... mu(u_1) V(0)` where the padded digit string
/// factorizes as `u_1 u_2 ... u_k` from the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinRep {
    pad: Vec<u8>,
    blocks: Vec<(Vec<u8>, Mat2)>,
    initial: [i64; 2],
}

/// Value together with the number of matrix-vector products spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evaluation {
    pub value: i64,
    pub steps: usize,
}

impl LinRep {
    pub fn new(pad: Vec<u8>, blocks: Vec<(Vec<u8>, Mat2)>, initial: [i64; 2]) -> Self {
        LinRep { pad, blocks, initial }
    }

    /// Base 2: `V(n) = (S(n), S(2n))`, blocks `0` and `1`.
    pub fn binary() -> Self {
        LinRep::new(
            Vec::new(),
            vec![
                (vec![0], Mat2([[0, 1], [-1, 2]])),
                (vec![1], Mat2([[3, -1], [4, -1]])),
            ],
            [1, 1],
        )
    }

    /// Zeckendorf: `0 rep_F(n)` read over the blocks `0` and `01`.
    pub fn fibonacci() -> Self {
        LinRep::new(
            vec![0],
            vec![
                (vec![0], Mat2([[0, 1], [-1, 2]])),
                (vec![0, 1], Mat2([[2, 0], [3, 0]])),
            ],
            [1, 1],
        )
    }

    pub fn initial(&self) -> [i64; 2] {
        self.initial
    }

    pub fn matrices(&self) -> Vec<Mat2> {
        self.blocks.iter().map(|(_, m)| *m).collect()
    }

    /// The matrix attached to a block, if the block is one of ours.
    pub fn matrix_for(&self, block: &[u8]) -> Option<Mat2> {
        self.blocks.iter().find(|(b, _)| b == block).map(|(_, m)| *m)
    }

    /// Left-to-right longest-match factorization of `pad + digits` into block
    /// indices; `None` if some position matches no block.
    pub fn factorize(&self, digits: &[u8]) -> Option<Vec<usize>> {
        let word: Vec<u8> = self.pad.iter().chain(digits).copied().collect();
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < word.len() {
            let (idx, len) = self
                .blocks
                .iter()
                .enumerate()
                .filter(|(_, (b, _))| word[pos..].starts_with(b))
                .map(|(i, (b, _))| (i, b.len()))
                .max_by_key(|&(_, len)| len)?;
            out.push(idx);
            pos += len;
        }
        Some(out)
    }

    /// Evaluates along a digit string (most significant first). `Ok(None)`
    /// when the digits do not factorize over the blocks.
    pub fn evaluate(&self, digits: &[u8]) -> Result<Option<Evaluation>, Overflow> {
        let Some(blocks) = self.factorize(digits) else { return Ok(None) };
        let mut v = self.initial;
        for &b in &blocks {
            v = self.blocks[b].1.checked_apply(v).ok_or(Overflow)?;
        }
        Ok(Some(Evaluation { value: v[0], steps: blocks.len() }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;
