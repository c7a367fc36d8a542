//! Sparse integer multivariate polynomial arithmetic for products of
//! binomial factors (x_i - x_j), coefficient certificates, and the search
//! that turns a nonzero certificate into an actual assignment.
//!
//! Coefficients of these +-1-rooted binomial products stay far inside 64
//! bits for up to ~30 factors; arithmetic is checked so an overflow would be
//! detected rather than wrap.

use crate::coloring::ColorId;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("coefficient overflowed 64 bits")]
    Overflow,
    #[error("factor variable {0} out of range for {1} variables")]
    VariableOutOfRange(usize, usize),
}

/// Exponent vector over n variables; total degree is the entry sum.
pub type Monomial = Vec<u16>;

/// Map monomial -> nonzero coefficient; keys ordered lexicographically so
/// iteration is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    vars: usize,
    terms: BTreeMap<Monomial, i64>,
}

/// No cap on any exponent.
pub fn uncapped(vars: usize) -> Vec<u16> {
    vec![u16::MAX; vars]
}

impl SparsePolynomial {
    /// The constant 1 in `vars` variables.
    pub fn one(vars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; vars], 1);
        SparsePolynomial { vars, terms }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, m: &[u16]) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Multiplies by the factor (x_i - x_j), discarding every monomial whose
    /// exponent exceeds its cap in any coordinate. Sound for extracting the
    /// cap monomial's coefficient: exponents only grow, and all monomials of
    /// the full product share the same total degree.
    pub fn multiply_capped(
        &self,
        factor: (usize, usize),
        caps: &[u16],
    ) -> Result<SparsePolynomial, PolyError> {
        let (i, j) = factor;
        for v in [i, j] {
            if v >= self.vars {
                return Err(PolyError::VariableOutOfRange(v, self.vars));
            }
        }
        let mut terms: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m, &c) in &self.terms {
            for (var, sign) in [(i, 1i64), (j, -1i64)] {
                if m[var] >= caps[var] {
                    continue;
                }
                let mut key = m.clone();
                key[var] += 1;
                let entry = terms.entry(key).or_insert(0);
                *entry = entry
                    .checked_add(sign.checked_mul(c).ok_or(PolyError::Overflow)?)
                    .ok_or(PolyError::Overflow)?;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(SparsePolynomial {
            vars: self.vars,
            terms,
        })
    }
}

/// Expands the product of the given (x_i - x_j) factors under the caps.
pub fn expand_product(
    vars: usize,
    factors: &[(usize, usize)],
    caps: &[u16],
) -> Result<SparsePolynomial, PolyError> {
    let mut p = SparsePolynomial::one(vars);
    for &f in factors {
        p = p.multiply_capped(f, caps)?;
    }
    Ok(p)
}

/// The 29 factor pairs (0-based) of the 9-variable product used on the
/// five-cycle core: x1 against x2..x7 and x9, x2 against x3..x8, x3 against
/// x4..x9, plus the ten sporadic pairs.
pub const FIVE_CYCLE_FACTOR_PAIRS: [(usize, usize); 29] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (0, 6),
    (0, 8),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (1, 7),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (2, 7),
    (2, 8),
    (3, 4),
    (3, 6),
    (3, 7),
    (3, 8),
    (4, 5),
    (4, 7),
    (4, 8),
    (5, 6),
    (6, 7),
    (7, 8),
];

/// Target exponents for the certified monomial
/// x1^3 x2^4 x3^5 x4^4 x5^4 x6^2 x7^3 x8^2 x9^2.
pub const FIVE_CYCLE_TARGET: [u16; 9] = [3, 4, 5, 4, 4, 2, 3, 2, 2];

/// Expands the five-cycle product and returns the target coefficient, which
/// must be -1. Self-checks the factor count and total degree (both 29).
pub fn paper_certificate() -> Result<i64, PolyError> {
    assert_eq!(FIVE_CYCLE_FACTOR_PAIRS.len(), 29);
    assert_eq!(FIVE_CYCLE_TARGET.iter().map(|&k| k as usize).sum::<usize>(), 29);
    let p = expand_product(9, &FIVE_CYCLE_FACTOR_PAIRS, &FIVE_CYCLE_TARGET)?;
    Ok(p.coefficient_of(&FIVE_CYCLE_TARGET))
}

/// A Combinatorial Nullstellensatz instance: a product of (x_i - x_j)
/// factors, per-variable value sets S_i and target exponents k_i with
/// sum(k_i) = number of factors. When the target coefficient is nonzero and
/// every |S_i| > k_i, a point with all factor pairs distinct exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictSystem {
    pub vars: usize,
    pub factor_pairs: Vec<(usize, usize)>,
    pub lists: Vec<Vec<ColorId>>,
    pub targets: Vec<u16>,
}

impl ConflictSystem {
    pub fn five_cycle(lists: Vec<Vec<ColorId>>) -> Self {
        ConflictSystem {
            vars: 9,
            factor_pairs: FIVE_CYCLE_FACTOR_PAIRS.to_vec(),
            lists,
            targets: FIVE_CYCLE_TARGET.to_vec(),
        }
    }

    /// Target-monomial coefficient of the system's product.
    pub fn certificate(&self) -> Result<i64, PolyError> {
        let p = expand_product(self.vars, &self.factor_pairs, &self.targets)?;
        Ok(p.coefficient_of(&self.targets))
    }
}

/// Backtracking over S_1 x ... x S_n, pruning a prefix as soon as some
/// fully-determined factor vanishes. If the certificate is nonzero and
/// every |S_i| > k_i, a solution exists and is found; otherwise `None`
/// means the search space is exhausted.
pub fn cn_find_assignment(sys: &ConflictSystem) -> Option<Vec<ColorId>> {
    // Factors grouped by their larger variable, so each is checked exactly
    // once, as soon as both of its variables have values.
    let mut by_later: Vec<Vec<usize>> = vec![Vec::new(); sys.vars];
    for &(i, j) in &sys.factor_pairs {
        by_later[i.max(j)].push(i.min(j));
    }
    let mut chosen: Vec<ColorId> = Vec::with_capacity(sys.vars);
    if search(sys, &by_later, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn search(sys: &ConflictSystem, by_later: &[Vec<usize>], chosen: &mut Vec<ColorId>) -> bool {
    let var = chosen.len();
    if var == sys.vars {
        return true;
    }
    'candidates: for &c in &sys.lists[var] {
        for &earlier in &by_later[var] {
            if chosen[earlier] == c {
                continue 'candidates;
            }
        }
        chosen.push(c);
        if search(sys, by_later, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
