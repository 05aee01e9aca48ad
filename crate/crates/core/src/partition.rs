//! Balanced partitions of odd-number multisets and the phase plans they
//! induce.
//!
//! The orientation driver runs `r` phases and must split the per-phase
//! penalty weights into two near-equal halves, one half paying on the
//! out-side and one on the in-side. Two constructive partitions cover
//! this: [`partition_odds`] splits `{1, 3, ..., 2n-1}` with discrepancy
//! at most 1 (2 when `n = 2`), and [`partition_odds_with_copies`] splits
//! the same set plus `k` equal extra weights with discrepancy at most 2.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("copy value {value} must be {} or {}", 2 * n - 1, 2 * n)]
    InvalidValue { n: usize, value: u64 },
    #[error("eta {eta} outside 3..={}", 2 * r + 1)]
    EtaOutOfRange { r: usize, eta: usize },
}

/// Two multisets exhausting the input, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedPartition {
    pub part_a: Vec<u64>,
    pub part_b: Vec<u64>,
}

impl BalancedPartition {
    fn new(mut part_a: Vec<u64>, mut part_b: Vec<u64>) -> Self {
        part_a.sort_unstable();
        part_b.sort_unstable();
        Self { part_a, part_b }
    }

    pub fn sum_a(&self) -> u64 {
        self.part_a.iter().sum()
    }

    pub fn sum_b(&self) -> u64 {
        self.part_b.iter().sum()
    }

    /// `|sum(A) - sum(B)|`, always computed fresh.
    pub fn discrepancy(&self) -> u64 {
        self.sum_a().abs_diff(self.sum_b())
    }
}

/// Splits the first `n` odd numbers into two parts whose sums differ by
/// at most 1 (by exactly 2 when `n = 2`, where nothing better exists).
///
/// Blocks of four consecutive odd numbers `a1 < a2 < a3 < a4` split
/// evenly as `{a1, a4}` vs `{a2, a3}`; working down from the largest this
/// leaves the 0, 1, 6 or 3 smallest odd numbers, which get a fixed base
/// split. The output is canonical: same `n`, same parts.
pub fn partition_odds(n: usize) -> BalancedPartition {
    assert!(n >= 1, "need at least one odd number");
    if n == 2 {
        return BalancedPartition::new(vec![1], vec![3]);
    }
    let leftover = match n % 4 {
        0 => 0,
        1 => 1,
        2 => 6,
        _ => 3,
    };
    let (mut a, mut b): (Vec<u64>, Vec<u64>) = match leftover {
        0 => (vec![], vec![]),
        1 => (vec![1], vec![]),
        3 => (vec![1, 3], vec![5]),
        _ => (vec![1, 3, 5, 9], vec![7, 11]),
    };
    let mut i = leftover + 1;
    while i <= n {
        let block: Vec<u64> = (i..i + 4).map(|j| 2 * j as u64 - 1).collect();
        a.push(block[0]);
        a.push(block[3]);
        b.push(block[1]);
        b.push(block[2]);
        i += 4;
    }
    BalancedPartition::new(a, b)
}

/// Splits `{1, 3, ..., 2n-1}` plus `k` copies of `value` (which must be
/// `2n-1` or `2n`) into two parts whose sums differ by at most 2.
pub fn partition_odds_with_copies(
    n: usize,
    k: usize,
    value: u64,
) -> Result<BalancedPartition, PartitionError> {
    assert!(n >= 1, "need at least one odd number");
    if value != 2 * n as u64 - 1 && value != 2 * n as u64 {
        return Err(PartitionError::InvalidValue { n, value });
    }
    if k == 0 {
        return Ok(partition_odds(n));
    }

    // Relabel so x carries the larger sum; the copy split below always
    // puts its (possibly) heavier half opposite x.
    let heavier_first = |p: BalancedPartition| -> (Vec<u64>, Vec<u64>) {
        if p.sum_a() >= p.sum_b() {
            (p.part_a, p.part_b)
        } else {
            (p.part_b, p.part_a)
        }
    };

    if k % 2 == 0 {
        let (mut x, mut y) = heavier_first(partition_odds(n));
        x.extend(std::iter::repeat(value).take(k / 2));
        y.extend(std::iter::repeat(value).take(k / 2));
        return Ok(BalancedPartition::new(x, y));
    }

    // Odd k: move one 2n-1 from the odd set over to the copies, split the
    // k+1 near-equal values near-evenly, and recombine crosswise.
    let (x, y) = if n == 1 {
        (vec![], vec![])
    } else {
        heavier_first(partition_odds(n - 1))
    };
    let odd_top = 2 * n as u64 - 1;
    let (p, q) = if value == odd_top {
        // k+1 equal values split evenly.
        let half = (k + 1) / 2;
        (vec![value; half], vec![value; half])
    } else {
        // (k+1)/2 copies of 2n, versus 2n-1 plus (k-1)/2 copies of 2n:
        // the first side is heavier by exactly 1.
        let mut q = vec![odd_top];
        q.extend(std::iter::repeat(value).take((k - 1) / 2));
        (vec![value; (k + 1) / 2], q)
    };
    let mut a = x;
    a.extend(q);
    let mut b = y;
    b.extend(p);
    Ok(BalancedPartition::new(a, b))
}

/// Which of the `r` phases run out-first and which in-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePlan {
    pub r: usize,
    pub out_phases: BTreeSet<usize>,
    pub in_phases: BTreeSet<usize>,
}

impl PhasePlan {
    pub fn is_out_phase(&self, i: usize) -> bool {
        self.out_phases.contains(&i)
    }
}

/// Assigns phase `i` (weight `w_i`) to the out- or in-side according to
/// which part of `bp` still holds an unused copy of `w_i`. Weights must
/// be listed for phases `1..=r` in order.
fn plan_from_parts(r: usize, weights: &[u64], bp: &BalancedPartition) -> PhasePlan {
    let mut pool_a = bp.part_a.clone();
    let mut out_phases = BTreeSet::new();
    let mut in_phases = BTreeSet::new();
    for (idx, w) in weights.iter().enumerate() {
        let i = idx + 1;
        if let Some(pos) = pool_a.iter().position(|x| x == w) {
            pool_a.swap_remove(pos);
            out_phases.insert(i);
        } else {
            in_phases.insert(i);
        }
    }
    debug_assert!(pool_a.is_empty());
    PhasePlan {
        r,
        out_phases,
        in_phases,
    }
}

/// Phase plan for the quadratic-bound driver: phase `i` weighs `2i - 1`.
pub fn phase_plan(r: usize) -> PhasePlan {
    assert!(r >= 1, "need at least one phase");
    let weights: Vec<u64> = (1..=r).map(|i| 2 * i as u64 - 1).collect();
    plan_from_parts(r, &weights, &partition_odds(r))
}

/// Phase plan for the eta-bound driver: phase `i` weighs
/// `min(eta, 2i + 1) - 2`, which is `{1, 3, ..., 2n-1}` followed by
/// `r - n` copies of `eta - 2` for `n = (eta - 1) / 2`.
pub fn phase_plan_eta(r: usize, eta: usize) -> Result<PhasePlan, PartitionError> {
    assert!(r >= 1, "need at least one phase");
    if !(3..=2 * r + 1).contains(&eta) {
        return Err(PartitionError::EtaOutOfRange { r, eta });
    }
    let n = (eta - 1) / 2;
    let weights: Vec<u64> = (1..=r)
        .map(|i| (eta.min(2 * i + 1) - 2) as u64)
        .collect();
    let bp = partition_odds_with_copies(n, r - n, eta as u64 - 2)?;
    Ok(plan_from_parts(r, &weights, &bp))
}
