use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactlin::{scale_vec, IntVector};
use crate::hilbert::HilbertBasis;

/// Which procedure produced a [`Decomposition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Exhaustive minimum-support search.
    Oracle,
    /// LP-vertex rounding.
    LpRounding,
    /// LP rounding failed its preconditions; the oracle witness was used.
    LpFallback,
    /// Face descent, possibly closed by the oracle.
    FaceDescent,
}

impl Strategy {
    pub fn tag(self) -> &'static str {
        match self {
            Strategy::Oracle => "oracle",
            Strategy::LpRounding => "lp",
            Strategy::LpFallback => "lp-fallback",
            Strategy::FaceDescent => "descent",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "oracle" => Some(Strategy::Oracle),
            "lp" => Some(Strategy::LpRounding),
            "lp-fallback" => Some(Strategy::LpFallback),
            "descent" => Some(Strategy::FaceDescent),
            _ => None,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `point = Σ multiplicity · element` over distinct Hilbert basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub point: IntVector,
    /// Distinct elements with positive multiplicities, sorted by element.
    pub terms: Vec<(IntVector, BigInt)>,
    pub strategy: Strategy,
    pub certified_bound: Option<usize>,
}

impl Decomposition {
    /// Merges equal elements and drops zero multiplicities.
    pub fn new(
        point: IntVector,
        terms: impl IntoIterator<Item = (IntVector, BigInt)>,
        strategy: Strategy,
        certified_bound: Option<usize>,
    ) -> Self {
        let mut merged: BTreeMap<IntVector, BigInt> = BTreeMap::new();
        for (h, k) in terms {
            *merged.entry(h).or_default() += k;
        }
        Decomposition {
            point,
            terms: merged.into_iter().filter(|(_, k)| !k.is_zero()).collect(),
            strategy,
            certified_bound,
        }
    }

    /// Number of distinct elements.
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    /// `Σ multiplicity · element`.
    pub fn evaluate(&self) -> IntVector {
        let mut sum = vec![BigInt::zero(); self.point.len()];
        for (h, k) in &self.terms {
            for (s, v) in sum.iter_mut().zip(scale_vec(h, k)) {
                *s += v;
            }
        }
        sum
    }
}

/// Result of [`verify_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

/// Checks the sum identity, basis membership, positive multiplicities and
/// the certified bound.
pub fn verify_decomposition(d: &Decomposition, hb: &HilbertBasis) -> Verification {
    let mut diagnostics = Vec::new();
    if d.point.len() != hb.dim() {
        diagnostics.push(format!(
            "dimension mismatch: point has {} coordinates, cone has {}",
            d.point.len(),
            hb.dim()
        ));
    }
    for (h, k) in &d.terms {
        if h.len() != d.point.len() {
            diagnostics.push("term dimension mismatch".to_string());
            return Verification {
                valid: false,
                diagnostics,
            };
        }
        if !hb.contains(h) {
            diagnostics.push(format!("foreign element {}", crate::exactlin::join(h)));
        }
        if !k.is_positive() {
            diagnostics.push(format!("non-positive multiplicity {k}"));
        }
    }
    let mut seen: Vec<&IntVector> = d.terms.iter().map(|(h, _)| h).collect();
    seen.sort();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        diagnostics.push("repeated element".to_string());
    }
    if d.evaluate() != d.point {
        diagnostics.push("sum mismatch".to_string());
    }
    if let Some(bound) = d.certified_bound {
        if d.length() > bound {
            diagnostics.push(format!(
                "length {} exceeds certified bound {bound}",
                d.length()
            ));
        }
    }
    Verification {
        valid: diagnostics.is_empty(),
        diagnostics,
    }
}
