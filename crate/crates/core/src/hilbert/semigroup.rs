use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactlin::{IntMatrix, IntVector};

/// Non-negative integer representations over a fixed element list.
///
/// Work happens in slack coordinates `s = Ax`, where cone membership is
/// `s >= 0`. Failed `(index, remainder)` states are memoised, so repeated
/// queries against the same elements share work.
#[derive(Clone, Debug)]
pub struct Representer {
    slacks: Vec<IntVector>,
    failed: HashSet<(usize, IntVector)>,
    a: IntMatrix,
}

impl Representer {
    pub fn new(a: &IntMatrix, elements: &[IntVector]) -> Self {
        Representer {
            slacks: elements.iter().map(|h| a.mul_vec(h)).collect(),
            failed: HashSet::new(),
            a: a.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.slacks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slacks.is_empty()
    }

    /// The lexicographically smallest `β >= 0` with `Σ β_i h_i = x`, or
    /// `None` when `x` is not in the generated semigroup.
    pub fn represent(&mut self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let s = self.a.mul_vec(x);
        if s.iter().any(|v| v.is_negative()) {
            return None;
        }
        let mut beta = vec![BigInt::zero(); self.slacks.len()];
        if self.search(0, &s, &mut beta) {
            Some(beta)
        } else {
            None
        }
    }

    fn search(&mut self, i: usize, rem: &IntVector, beta: &mut [BigInt]) -> bool {
        if rem.iter().all(|v| v.is_zero()) {
            return true;
        }
        if i == self.slacks.len() {
            return false;
        }
        let key = (i, rem.clone());
        if self.failed.contains(&key) {
            return false;
        }
        let h = self.slacks[i].clone();
        let stalls = h.iter().all(|v| v.is_zero());
        let mut cur = rem.clone();
        let mut k = BigInt::zero();
        loop {
            if self.search(i + 1, &cur, beta) {
                beta[i] = k;
                return true;
            }
            if stalls {
                break;
            }
            for (c, v) in cur.iter_mut().zip(&h) {
                *c -= v;
            }
            if cur.iter().any(|v| v.is_negative()) {
                break;
            }
            k += 1;
        }
        self.failed.insert(key);
        false
    }
}
