//! Degree-sequence arithmetic: normalization, graphicality, strong index,
//! the equitable-coloring bound, and the k-factor criterion.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors from degree-sequence operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqError {
    /// A raw entry was negative.
    InvalidDegree { index: usize, value: i64 },
    /// An entry is at least n, impossible in a simple graph.
    NotSimple { index: usize, value: i64, n: usize },
    /// Empty input or an operation that needs a positive sequence.
    InvalidInput(String),
    /// The k-factor criterion cannot be evaluated for these parameters.
    Inapplicable(String),
    /// `max_even_k` called where the criterion does not hold.
    CriterionFails { k: usize },
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::InvalidDegree { index, value } => {
                write!(f, "entry #{} is negative ({})", index + 1, value)
            }
            SeqError::NotSimple { index, value, n } => {
                write!(f, "entry #{} = {} exceeds n-1 = {}", index + 1, value, n - 1)
            }
            SeqError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            SeqError::Inapplicable(msg) => write!(f, "criterion inapplicable: {msg}"),
            SeqError::CriterionFails { k } => {
                write!(f, "k-factor criterion does not hold at k = {k}")
            }
        }
    }
}

impl core::error::Error for SeqError {}

/// A non-increasing sequence of vertex degrees, each below the length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

/// Summary values derived from a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceProfile {
    /// Strong index m: the largest i (1-based) with d_i >= i; 0 for all-zero sequences.
    pub m: usize,
    /// Largest degree d_1.
    pub delta1: usize,
    /// Smallest degree d_n.
    pub delta_n: usize,
    /// Sum of all degrees.
    pub degree_sum: usize,
    /// The equitable-colorability bound, when the sequence is positive.
    pub gamma_min: Option<usize>,
}

/// Regularity target for a spanning factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorSpec {
    pub k: usize,
    /// Whether k*n is even, the parity a k-factor needs.
    pub parity_ok: bool,
}

impl FactorSpec {
    pub fn new(k: usize, n: usize) -> Self {
        FactorSpec { k, parity_ok: (k * n) % 2 == 0 }
    }
}

impl DegreeSequence {
    /// Sorts raw degrees into non-increasing order, rejecting entries that no
    /// simple graph admits.
    pub fn normalize(raw: &[i64]) -> Result<Self, SeqError> {
        if raw.is_empty() {
            return Err(SeqError::InvalidInput(String::from("empty sequence")));
        }
        let n = raw.len();
        for (i, &v) in raw.iter().enumerate() {
            if v < 0 {
                return Err(SeqError::InvalidDegree { index: i, value: v });
            }
            if v as usize >= n {
                return Err(SeqError::NotSimple { index: i, value: v, n });
            }
        }
        let mut degrees: Vec<usize> = raw.iter().map(|&v| v as usize).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DegreeSequence { degrees })
    }

    /// Wraps an already-sorted sequence; panics in debug builds if unsorted.
    pub fn from_sorted(degrees: Vec<usize>) -> Self {
        debug_assert!(degrees.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(degrees.iter().all(|&d| d < degrees.len()));
        DegreeSequence { degrees }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// d_i with 1-based indexing, matching the usual notation.
    pub fn d(&self, i: usize) -> usize {
        self.degrees[i - 1]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees[0]
    }

    pub fn min_degree(&self) -> usize {
        *self.degrees.last().unwrap()
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// True when every entry is non-zero.
    pub fn is_positive(&self) -> bool {
        self.min_degree() > 0
    }

    /// Strong index m: the largest 1-based i with d_i >= i, or 0 when all
    /// entries are zero.
    pub fn strong_index(&self) -> usize {
        let mut m = 0;
        for (i, &d) in self.degrees.iter().enumerate() {
            if d >= i + 1 {
                m = i + 1;
            } else {
                break;
            }
        }
        m
    }

    /// Subtracts k from every entry. Entries may go negative; feed the result
    /// to [`is_graphic_values`] which treats those as not graphic.
    pub fn shift(&self, k: usize) -> Vec<i64> {
        self.degrees.iter().map(|&d| d as i64 - k as i64).collect()
    }

    /// Erdos-Gallai test restricted to l <= m, plus the parity condition.
    pub fn is_graphic(&self) -> bool {
        erdos_gallai_indices(&self.degrees, self.strong_index())
    }

    pub fn profile(&self) -> SequenceProfile {
        SequenceProfile {
            m: self.strong_index(),
            delta1: self.max_degree(),
            delta_n: self.min_degree(),
            degree_sum: self.degree_sum(),
            gamma_min: self.gamma_bound().ok(),
        }
    }

    /// The least c for which every realization family in this line of results
    /// is equitably c-colorable: max over l <= m of floor((d_l + l)/2), plus 1.
    pub fn gamma_bound(&self) -> Result<usize, SeqError> {
        if !self.is_positive() {
            return Err(SeqError::InvalidInput(String::from(
                "gamma bound needs a positive sequence",
            )));
        }
        let m = self.strong_index();
        let best = (1..=m)
            .map(|l| (self.d(l) + l) / 2)
            .max()
            .expect("positive sequence has m >= 1");
        Ok(best + 1)
    }

    /// Tests d_{d1-dn+1} >= d1 - dn + k - 1. True guarantees a realization
    /// with a k-factor exists; false refutes nothing.
    pub fn kfactor_condition(&self, spec: FactorSpec) -> Result<bool, SeqError> {
        let (d1, dn, n) = (self.max_degree(), self.min_degree(), self.len());
        if spec.k > dn {
            return Err(SeqError::Inapplicable(alloc::format!(
                "k = {} exceeds minimum degree {}",
                spec.k, dn
            )));
        }
        if !spec.parity_ok {
            return Err(SeqError::Inapplicable(alloc::format!(
                "k*n = {} is odd",
                spec.k * n
            )));
        }
        let idx = d1 - dn + 1;
        if idx > n {
            return Err(SeqError::Inapplicable(alloc::format!(
                "index d1-dn+1 = {idx} exceeds n = {n}"
            )));
        }
        Ok(self.d(idx) + 1 >= d1 - dn + spec.k)
    }

    /// The largest k' in [k, d_n] with k'*n even for which the criterion
    /// holds. The descent lemma then carries a k'-factor down to k.
    pub fn max_even_k(&self, k: usize) -> Result<usize, SeqError> {
        let spec = FactorSpec::new(k, self.len());
        if !self.kfactor_condition(spec)? {
            return Err(SeqError::CriterionFails { k });
        }
        let (d1, dn, n) = (self.max_degree(), self.min_degree(), self.len());
        let idx = d1 - dn + 1;
        let mut kp = dn;
        loop {
            let parity_ok = (kp * n) % 2 == 0;
            let holds = self.d(idx) + 1 >= d1 - dn + kp;
            if parity_ok && holds {
                return Ok(kp);
            }
            debug_assert!(kp > k, "criterion held at k, so the scan cannot pass it");
            kp -= 1;
        }
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Graphicality of raw integer values, as produced by [`DegreeSequence::shift`].
/// Negative entries (or entries >= n) make the answer false outright.
pub fn is_graphic_values(values: &[i64]) -> bool {
    if values.is_empty() {
        return false;
    }
    let n = values.len();
    if values.iter().any(|&v| v < 0 || v as usize >= n) {
        return false;
    }
    let mut sorted: Vec<usize> = values.iter().map(|&v| v as usize).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let m = strong_index_of(&sorted);
    erdos_gallai_indices(&sorted, m)
}

fn strong_index_of(sorted: &[usize]) -> usize {
    let mut m = 0;
    for (i, &d) in sorted.iter().enumerate() {
        if d >= i + 1 {
            m = i + 1;
        } else {
            break;
        }
    }
    m
}

/// Erdos-Gallai over l = 1..=l_max with prefix sums and a threshold pointer,
/// O(n) after sorting.
fn erdos_gallai_indices(sorted: &[usize], l_max: usize) -> bool {
    let n = sorted.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0usize);
    for &d in sorted {
        prefix.push(prefix.last().unwrap() + d);
    }
    if prefix[n] % 2 != 0 {
        return false;
    }
    // r = number of entries with d_i >= l; non-increasing as l grows.
    let mut r = n;
    for l in 1..=l_max {
        while r > 0 && sorted[r - 1] < l {
            r -= 1;
        }
        // Entries after position l with d_i >= l contribute l each, the rest
        // contribute their own degree.
        let big_after = r.saturating_sub(l);
        let cut = core::cmp::max(l, r);
        let rhs = l * (l - 1) + l * big_after + (prefix[n] - prefix[cut]);
        if prefix[l] > rhs {
            return false;
        }
    }
    true
}

/// Full Erdos-Gallai sweep over every l = 1..=n. Exists as an independent
/// cross-check for the strong-index restriction.
pub fn erdos_gallai_full(sorted: &[usize]) -> bool {
    erdos_gallai_indices(sorted, sorted.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn seq(raw: &[i64]) -> DegreeSequence {
        DegreeSequence::normalize(raw).unwrap()
    }

    #[test]
    fn normalize_sorts_and_preserves_length() {
        assert_eq!(seq(&[1, 2, 1]).degrees(), &[2, 1, 1]);
        assert_eq!(seq(&[0, 0]).degrees(), &[0, 0]);
        assert_eq!(seq(&[3, 3, 2, 2]).degrees(), &[3, 3, 2, 2]);
    }

    #[test]
    fn normalize_rejects_bad_entries() {
        assert!(matches!(
            DegreeSequence::normalize(&[1, -1]),
            Err(SeqError::InvalidDegree { .. })
        ));
        assert!(matches!(
            DegreeSequence::normalize(&[2, 1]),
            Err(SeqError::NotSimple { .. })
        ));
        assert!(matches!(
            DegreeSequence::normalize(&[]),
            Err(SeqError::InvalidInput(_))
        ));
    }

    #[test]
    fn graphicality_basics() {
        assert!(seq(&[2, 2, 2]).is_graphic());
        assert!(!seq(&[3, 3, 1, 1]).is_graphic());
        assert!(seq(&[4, 4, 2, 2, 2, 2]).is_graphic());
        assert!(seq(&[0, 0]).is_graphic());
        assert!(!seq(&[1, 1, 1]).is_graphic());
    }

    #[test]
    fn strong_index_examples() {
        assert_eq!(seq(&[4, 4, 2, 2, 2]).strong_index(), 2);
        assert_eq!(seq(&[3, 3, 3, 3]).strong_index(), 3);
        assert_eq!(seq(&[1, 1]).strong_index(), 1);
        assert_eq!(seq(&[0, 0, 0]).strong_index(), 0);
    }

    #[test]
    fn shift_examples() {
        let pi = seq(&[4, 4, 2, 2, 2, 2]);
        assert_eq!(pi.shift(2), vec![2, 2, 0, 0, 0, 0]);
        assert_eq!(pi.shift(0), vec![4, 4, 2, 2, 2, 2]);
        assert_eq!(seq(&[3, 3, 3, 3]).shift(1), vec![2, 2, 2, 2]);
        assert!(!is_graphic_values(&pi.shift(2)));
        assert!(!is_graphic_values(&pi.shift(3)));
    }

    #[test]
    fn gamma_bound_examples() {
        assert_eq!(seq(&[4, 4, 2, 2, 2]).gamma_bound().unwrap(), 4);
        assert_eq!(seq(&[3, 3, 3, 3]).gamma_bound().unwrap(), 4);
        assert_eq!(seq(&[2, 2, 2]).gamma_bound().unwrap(), 3);
        assert!(seq(&[1, 1, 0]).gamma_bound().is_err());
    }

    #[test]
    fn gamma_bound_never_exceeds_d1_plus_1() {
        let pi = seq(&[5, 5, 4, 3, 3, 2, 2]);
        let g = pi.gamma_bound().unwrap();
        assert!(g <= pi.max_degree() + 1);
        // Equality whenever d1 = m.
        let reg = seq(&[3, 3, 3, 3]);
        assert_eq!(reg.strong_index(), reg.max_degree());
        assert_eq!(reg.gamma_bound().unwrap(), reg.max_degree() + 1);
    }

    #[test]
    fn kfactor_condition_examples() {
        let sharp = seq(&[4, 4, 2, 2, 2, 2]);
        assert_eq!(sharp.kfactor_condition(FactorSpec::new(2, 6)).unwrap(), false);
        // At k = 1 both sides evaluate to 2, so the criterion holds.
        assert_eq!(sharp.kfactor_condition(FactorSpec::new(1, 6)).unwrap(), true);
        let reg = seq(&[3, 3, 3, 3]);
        assert_eq!(reg.kfactor_condition(FactorSpec::new(1, 4)).unwrap(), true);
        assert!(matches!(
            reg.kfactor_condition(FactorSpec { k: 4, parity_ok: true }),
            Err(SeqError::Inapplicable(_))
        ));
        assert!(matches!(
            seq(&[2, 2, 2]).kfactor_condition(FactorSpec::new(1, 3)),
            Err(SeqError::Inapplicable(_))
        ));
    }

    #[test]
    fn max_even_k_examples() {
        assert_eq!(seq(&[3, 3, 3, 3]).max_even_k(1).unwrap(), 3);
        assert_eq!(seq(&[2, 2, 2, 2]).max_even_k(0).unwrap(), 2);
        assert_eq!(seq(&[1, 1]).max_even_k(1).unwrap(), 1);
        // Odd n forces even k'.
        assert_eq!(seq(&[2, 2, 2, 2, 2]).max_even_k(0).unwrap(), 2);
        assert!(matches!(
            seq(&[4, 4, 2, 2, 2, 2]).max_even_k(2),
            Err(SeqError::CriterionFails { k: 2 })
        ));
    }

    #[test]
    fn shift_composes_additively() {
        let pi = seq(&[5, 4, 4, 3, 2, 2]);
        let once = pi.shift(3);
        let twice: Vec<i64> = pi.shift(1).iter().map(|&v| v - 2).collect();
        assert_eq!(once, twice);
    }
}
