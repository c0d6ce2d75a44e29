use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, precondition};

/// Square integer matrix with determinant ±1, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::new(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = IntMatrix::unchecked(rows)?;
        let d = m.det();
        if d != 1 && d != -1 {
            return Err(precondition(format!("determinant {d} is not ±1")));
        }
        Ok(m)
    }

    /// Square shape check only.
    fn unchecked(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(precondition("matrix must be square and nonempty"));
        }
        Ok(IntMatrix {
            n,
            entries: rows.concat(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> i128 {
        let n = self.n;
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] =
                        (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        sign * a[n * n - 1]
    }

    pub fn apply(&self, p: &[i64]) -> Result<Vec<i64>> {
        if p.len() != self.n {
            return Err(Error::Dimension(self.n, p.len()));
        }
        (0..self.n)
            .map(|r| {
                let v: i128 = (0..self.n)
                    .map(|c| self.get(r, c) as i128 * p[c] as i128)
                    .sum();
                i64::try_from(v).map_err(|_| Error::Overflow("matrix action"))
            })
            .collect()
    }

    fn sub(&self, r0: usize, c0: usize, size: usize) -> IntMatrix {
        let rows = (r0..r0 + size)
            .map(|r| (c0..c0 + size).map(|c| self.get(r, c)).collect())
            .collect();
        IntMatrix::unchecked(rows).expect("square")
    }

    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut entries = vec![0; n * n];
        let mut at = 0;
        for b in blocks {
            for r in 0..b.n {
                for c in 0..b.n {
                    entries[(at + r) * n + at + c] = b.get(r, c);
                }
            }
            at += b.n;
        }
        IntMatrix { n, entries }
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(&self.rows()).map_err(|_| std::fmt::Error)?
        )
    }
}

/// The 2×2 automorphisms with exactly two zero entries, in the conventional order:
/// the four diagonal sign matrices, then the four anti-diagonal ones.
pub fn eight_matrices() -> [IntMatrix; 8] {
    let m = |a, b, c, d| IntMatrix {
        n: 2,
        entries: vec![a, b, c, d],
    };
    [
        m(1, 0, 0, 1),
        m(1, 0, 0, -1),
        m(-1, 0, 0, 1),
        m(-1, 0, 0, -1),
        m(0, 1, 1, 0),
        m(0, -1, 1, 0),
        m(0, 1, -1, 0),
        m(0, -1, -1, 0),
    ]
}

/// True iff `m` is 2×2 with determinant ±1 and exactly two zero entries.
pub fn is_two_nonzero_gl2(m: &IntMatrix) -> bool {
    m.n == 2 && m.entries.iter().filter(|&&x| x == 0).count() == 2 && matches!(m.det(), 1 | -1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    /// A rank-one quotient on which the map is the identity.
    Identity1,
    /// A rank-two quotient acting by one of the eight matrices.
    TwoByTwo(IntMatrix),
}

impl Block {
    pub fn size(&self) -> usize {
        match self {
            Block::Identity1 => 1,
            Block::TwoByTwo(_) => 2,
        }
    }
}

/// An automorphism together with a block upper-triangular decomposition of it.
/// Entries above the diagonal blocks are unrestricted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTriangularSpec {
    pub matrix: IntMatrix,
    pub blocks: Vec<Block>,
}

impl BlockTriangularSpec {
    /// Finds a decomposition of `m`, preferring 1×1 blocks where both fit.
    pub fn infer(m: &IntMatrix) -> Result<Self> {
        let mut blocks = Vec::new();
        if decompose(m, 0, &mut blocks) {
            Ok(BlockTriangularSpec {
                matrix: m.clone(),
                blocks,
            })
        } else {
            Err(precondition(format!(
                "{m} has no block upper-triangular form with supported diagonal blocks"
            )))
        }
    }

    /// Starting coordinate of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut at = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = at;
                at += b.size();
                o
            })
            .collect()
    }

    /// True when every entry outside the diagonal blocks is zero.
    pub fn is_block_diagonal(&self) -> bool {
        let n = self.matrix.n;
        let mut owner = vec![0; n];
        for (k, (b, o)) in self.blocks.iter().zip(self.offsets()).enumerate() {
            owner[o..o + b.size()].fill(k);
        }
        (0..n).all(|r| (0..n).all(|c| owner[r] == owner[c] || self.matrix.get(r, c) == 0))
    }
}

fn below_is_zero(m: &IntMatrix, at: usize, size: usize) -> bool {
    (at + size..m.n).all(|r| (at..at + size).all(|c| m.get(r, c) == 0))
}

fn decompose(m: &IntMatrix, at: usize, out: &mut Vec<Block>) -> bool {
    if at == m.n {
        return true;
    }
    if m.get(at, at) == 1 && below_is_zero(m, at, 1) {
        out.push(Block::Identity1);
        if decompose(m, at + 1, out) {
            return true;
        }
        out.pop();
    }
    if at + 2 <= m.n && below_is_zero(m, at, 2) {
        let b = m.sub(at, at, 2);
        if is_two_nonzero_gl2(&b) {
            out.push(Block::TwoByTwo(b));
            if decompose(m, at + 2, out) {
                return true;
            }
            out.pop();
        }
    }
    false
}
