//! The tetracode, the ternary Golay code and the binary Golay code.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Reduces an integer to the signed residue in {−1, 0, 1}.
pub fn f3(x: i64) -> i8 {
    match x.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// A linear code over F₃ with entries in {−1, 0, 1}.
#[derive(Clone, Debug)]
pub struct TernaryCode {
    pub length: usize,
    pub generators: Vec<Vec<i8>>,
    words: Vec<Vec<i8>>,
}

/// A linear code over F₂.
#[derive(Clone, Debug)]
pub struct BinaryCode {
    pub length: usize,
    pub generators: Vec<Vec<u8>>,
}

#[derive(Clone, Debug)]
pub enum Code {
    Ternary(TernaryCode),
    Binary(BinaryCode),
}

/// Row-reduces over F_p and returns the nonzero rows.
fn row_basis(rows: &[Vec<i64>], p: i64) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let n = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = (1..p).find(|k| k * m[r][c] % p == 1).unwrap();
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

impl TernaryCode {
    pub fn new(generators: Vec<Vec<i8>>) -> Self {
        let length = generators.first().map_or(0, Vec::len);
        let k = generators.len();
        let mut words = Vec::with_capacity(3usize.pow(k as u32));
        let mut coeffs = vec![0i64; k];
        loop {
            let w: Vec<i8> =
                (0..length).map(|i| f3(coeffs.iter().zip(&generators).map(|(c, g)| c * g[i] as i64).sum())).collect();
            words.push(w);
            // odometer over {0, 1, 2}^k
            let mut j = 0;
            while j < k && coeffs[j] == 2 {
                coeffs[j] = 0;
                j += 1;
            }
            if j == k {
                break;
            }
            coeffs[j] += 1;
        }
        words.sort();
        words.dedup();
        TernaryCode { length, generators, words }
    }

    pub fn words(&self) -> &[Vec<i8>] {
        &self.words
    }

    pub fn dimension(&self) -> usize {
        let rows: Vec<Vec<i64>> = self.generators.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect();
        row_basis(&rows, 3).len()
    }

    pub fn contains(&self, w: &[i8]) -> bool {
        let w: Vec<i8> = w.iter().map(|&x| f3(x as i64)).collect();
        self.words.binary_search(&w).is_ok()
    }

    /// Map from Hamming weight to number of words.
    pub fn weight_enumerator(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for w in &self.words {
            *m.entry(w.iter().filter(|&&x| x != 0).count()).or_insert(0) += 1;
        }
        m
    }

    pub fn min_weight(&self) -> usize {
        self.weight_enumerator().keys().copied().find(|&w| w > 0).unwrap_or(0)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.generators
            .iter()
            .all(|g| self.generators.iter().all(|h| f3(g.iter().zip(h).map(|(&x, &y)| x as i64 * y as i64).sum()) == 0))
    }
}

impl BinaryCode {
    pub fn words(&self) -> Vec<Vec<u8>> {
        let k = self.generators.len();
        (0u64..1 << k)
            .map(|mask| {
                (0..self.length)
                    .map(|i| (0..k).filter(|&j| mask >> j & 1 == 1).map(|j| self.generators[j][i]).sum::<u8>() % 2)
                    .collect()
            })
            .collect()
    }

    pub fn weight_enumerator(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for w in self.words() {
            *m.entry(w.iter().filter(|&&x| x != 0).count()).or_insert(0) += 1;
        }
        m
    }

    pub fn min_weight(&self) -> usize {
        self.weight_enumerator().keys().copied().find(|&w| w > 0).unwrap_or(0)
    }
}

impl Code {
    pub fn length(&self) -> usize {
        match self {
            Code::Ternary(c) => c.length,
            Code::Binary(c) => c.length,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Code::Ternary(c) => c.dimension(),
            Code::Binary(c) => c.generators.len(),
        }
    }

    pub fn weight_enumerator(&self) -> BTreeMap<usize, usize> {
        match self {
            Code::Ternary(c) => c.weight_enumerator(),
            Code::Binary(c) => c.weight_enumerator(),
        }
    }

    /// All words as signed digit rows.
    pub fn word_rows(&self) -> Vec<Vec<i8>> {
        match self {
            Code::Ternary(c) => c.words().to_vec(),
            Code::Binary(c) => c.words().into_iter().map(|w| w.into_iter().map(|x| x as i8).collect()).collect(),
        }
    }
}

pub const TETRACODE_GENERATORS: [[i8; 4]; 2] = [[1, 1, -1, 0], [0, 1, 1, 1]];

pub const GOLAY12_GENERATORS: [[i8; 12]; 6] = [
    [1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 1, 0, 0, 0, 0, -1, 0, 1, -1, -1, 1],
    [0, 0, 1, 0, 0, 0, -1, 1, 0, 1, -1, -1],
    [0, 0, 0, 1, 0, 0, -1, -1, 1, 0, 1, -1],
    [0, 0, 0, 0, 1, 0, -1, -1, -1, 1, 0, 1],
    [0, 0, 0, 0, 0, 1, -1, 1, -1, -1, 1, 0],
];

pub fn tetracode() -> TernaryCode {
    TernaryCode::new(TETRACODE_GENERATORS.iter().map(|r| r.to_vec()).collect())
}

pub fn golay12() -> TernaryCode {
    TernaryCode::new(GOLAY12_GENERATORS.iter().map(|r| r.to_vec()).collect())
}

/// Quadratic residue code of length q + 1: cyclic shifts of the non-residue indicator on F_q,
/// extended by a zero-sum check digit in position ∞ (listed first).
pub fn qr_code(q: u32) -> Result<Code> {
    let p: i64 = match q {
        11 => 3,
        23 => 2,
        _ => return Err(Error::Unsupported(format!("quadratic residue code for q = {q}"))),
    };
    let q = q as i64;
    let residues: Vec<i64> = (1..q).map(|x| x * x % q).collect();
    let v: Vec<i64> = (0..q).map(|x| i64::from(x != 0 && !residues.contains(&x))).collect();
    let rows: Vec<Vec<i64>> = (0..q)
        .map(|s| {
            let shifted: Vec<i64> = (0..q).map(|x| v[(x - s).rem_euclid(q) as usize]).collect();
            let check = (-shifted.iter().sum::<i64>()).rem_euclid(p);
            std::iter::once(check).chain(shifted).collect()
        })
        .collect();
    let basis = row_basis(&rows, p);
    Ok(if p == 3 {
        Code::Ternary(TernaryCode::new(basis.iter().map(|r| r.iter().map(|&x| f3(x)).collect()).collect()))
    } else {
        Code::Binary(BinaryCode {
            length: (q + 1) as usize,
            generators: basis.iter().map(|r| r.iter().map(|&x| x as u8).collect()).collect(),
        })
    })
}
