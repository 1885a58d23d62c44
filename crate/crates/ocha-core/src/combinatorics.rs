//! Koszul signs and the index sets brace formulas sum over.
//!
//! Two families of partitions appear throughout the calculus:
//!
//! * *ordered partitions* `I_1 ⊔ ⋯ ⊔ I_r = {0, …, n−1}`: an assignment of
//!   every element to one of `r` blocks, each block kept ascending.  Blocks
//!   may be empty, so there are exactly `r^n` of them.  These drive the
//!   closed-string (graded symmetric) sums.
//! * *dotted partitions*: partitions into `r` consecutive, possibly empty
//!   intervals, `C(n+r−1, r−1)` in total.  These drive the open-string
//!   (ordered tensor) sums.
//!
//! Call sites that need nonempty blocks filter explicitly.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::scalar::Sign;

/// An ordered partition of `{0, …, ground−1}`: a sequence of disjoint
/// ascending blocks whose union is the ground set.  Blocks may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    pub blocks: Vec<Vec<usize>>,
    pub ground: usize,
}

/// A dotted partition of `{0, …, ground−1}`: consecutive half-open intervals
/// `[start, end)` covering the ground set in order.  Intervals may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DottedPartition {
    pub blocks: Vec<(usize, usize)>,
    pub ground: usize,
}

/// Koszul sign of a permutation acting on elements with the given shifted
/// degrees: `(−1)^{Σ |y_i|·|y_j|}` over inversion pairs `i < j` with
/// `perm[i] > perm[j]`.
///
/// `perm` must be a bijection of `0..degrees.len()`, with `perm[i]` the new
/// position of the element originally at `i`; the permuted tuple
/// `(y_{σ⁻¹(0)}, …)` equals the original tuple up to this sign under the
/// graded symmetric relation.
pub fn koszul_sign(shifted_degrees: &[i64], perm: &[usize]) -> Result<Sign, CoreError> {
    let n = shifted_degrees.len();
    if perm.len() != n {
        return Err(CoreError::BadPermutation);
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(CoreError::BadPermutation);
        }
        seen[p] = true;
    }
    let mut parity = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            if perm[i] > perm[j] {
                parity += (shifted_degrees[i] & 1) * (shifted_degrees[j] & 1);
            }
        }
    }
    Ok(Sign::from_parity(parity))
}

/// All ordered partitions of an `n`-element ground set into `r` blocks,
/// empty blocks allowed.  Yields each partition exactly once; the count is
/// `r^n`.
pub fn ordered_partitions(n: usize, r: usize) -> impl Iterator<Item = OrderedPartition> {
    assert!(r >= 1, "ordered partitions need at least one block");
    OrderedPartitionIter {
        n,
        r,
        assignment: vec![0; n],
        done: false,
    }
}

struct OrderedPartitionIter {
    n: usize,
    r: usize,
    assignment: Vec<usize>,
    done: bool,
}

impl Iterator for OrderedPartitionIter {
    type Item = OrderedPartition;

    fn next(&mut self) -> Option<OrderedPartition> {
        if self.done {
            return None;
        }
        let mut blocks = vec![Vec::new(); self.r];
        for (elem, &b) in self.assignment.iter().enumerate() {
            blocks[b].push(elem);
        }
        let item = OrderedPartition {
            blocks,
            ground: self.n,
        };
        // Advance the base-r counter.
        let mut i = 0;
        loop {
            if i == self.n {
                self.done = true;
                break;
            }
            self.assignment[i] += 1;
            if self.assignment[i] < self.r {
                break;
            }
            self.assignment[i] = 0;
            i += 1;
        }
        Some(item)
    }
}

/// All dotted partitions of an `n`-element ground set into `r` consecutive
/// intervals.  The count is `C(n+r−1, r−1)`.
pub fn dotted_partitions(n: usize, r: usize) -> impl Iterator<Item = DottedPartition> {
    assert!(r >= 1, "dotted partitions need at least one block");
    // Interval lengths run over weak compositions of n into r parts.
    CompositionIter::new(n, r).map(move |lens| {
        let mut blocks = Vec::with_capacity(r);
        let mut start = 0;
        for len in lens {
            blocks.push((start, start + len));
            start += len;
        }
        DottedPartition { blocks, ground: n }
    })
}

/// Weak compositions of `n` into `r` parts.
pub struct CompositionIter {
    parts: Vec<usize>,
    n: usize,
    done: bool,
}

impl CompositionIter {
    pub fn new(n: usize, r: usize) -> Self {
        assert!(r >= 1);
        let mut parts = vec![0; r];
        parts[r - 1] = n;
        CompositionIter {
            parts,
            n,
            done: false,
        }
    }
}

impl Iterator for CompositionIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self.parts.clone();
        // Lexicographic successor: move one unit from the tail to the first
        // position that can still grow.
        let r = self.parts.len();
        if r == 1 {
            self.done = true;
            return Some(item);
        }
        let mut i = r - 1;
        while i > 0 && self.parts[i] == 0 {
            i -= 1;
        }
        if i == 0 {
            self.done = true;
            return Some(item);
        }
        let tail = self.parts[i];
        self.parts[i] = 0;
        self.parts[i - 1] += 1;
        self.parts[r - 1] = tail - 1;
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let _ = self.n;
        (0, None)
    }
}

/// All ways to distribute the positions `0..n` over ordered blocks of the
/// given sizes (which must sum to `n`), each block ascending.  Used to
/// enumerate partition sums pruned to the block sizes a sparse cochain can
/// actually absorb; the result set equals `ordered_partitions(n, sizes.len())`
/// filtered to those sizes.
pub fn splits_with_sizes(n: usize, sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    debug_assert_eq!(sizes.iter().sum::<usize>(), n);
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(sizes.len());
    let available: Vec<usize> = (0..n).collect();
    split_rec(&available, sizes, &mut blocks, &mut out);
    out
}

fn split_rec(
    available: &[usize],
    sizes: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if sizes.is_empty() {
        debug_assert!(available.is_empty());
        out.push(blocks.clone());
        return;
    }
    let take = sizes[0];
    for combo in combinations(available, take) {
        let rest: Vec<usize> = available
            .iter()
            .copied()
            .filter(|x| !combo.contains(x))
            .collect();
        blocks.push(combo);
        split_rec(&rest, &sizes[1..], blocks, out);
        blocks.pop();
    }
}

/// Ascending `k`-element subsequences of `items`.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for i in start..items.len() {
            if items.len() - i < needed {
                break;
            }
            current.push(items[i]);
            rec(items, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, k, 0, &mut current, &mut out);
    out
}

/// Set partitions of `0..n` into unordered nonempty blocks, with block count
/// in `counts` and every block size in `sizes`.  Blocks are listed in order
/// of their minima (the canonical order), each block ascending.
pub fn set_partitions_filtered(
    n: usize,
    counts: &[usize],
    sizes: &[usize],
) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let max_blocks = counts.iter().copied().max().unwrap_or(0);
    let max_size = sizes.iter().copied().max().unwrap_or(0);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(
        elem: usize,
        n: usize,
        max_blocks: usize,
        max_size: usize,
        counts: &[usize],
        sizes: &[usize],
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if elem == n {
            if counts.contains(&blocks.len()) && blocks.iter().all(|b| sizes.contains(&b.len())) {
                out.push(blocks.clone());
            }
            return;
        }
        for i in 0..blocks.len() {
            if blocks[i].len() < max_size {
                blocks[i].push(elem);
                rec(elem + 1, n, max_blocks, max_size, counts, sizes, blocks, out);
                blocks[i].pop();
            }
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![elem]);
            rec(elem + 1, n, max_blocks, max_size, counts, sizes, blocks, out);
            blocks.pop();
        }
    }
    rec(0, n, max_blocks, max_size, counts, sizes, &mut blocks, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: decompose the permutation into adjacent
    /// transpositions and multiply their Koszul signs.
    fn koszul_by_adjacent_transpositions(degrees: &[i64], perm: &[usize]) -> Sign {
        let mut arrangement: Vec<usize> = (0..degrees.len()).collect();
        // Bubble the identity arrangement into `perm` order, flipping the
        // sign for each adjacent swap of odd-degree pairs.
        let mut parity = 0i64;
        let target: Vec<usize> = perm.to_vec();
        loop {
            let mut swapped = false;
            for i in 0..arrangement.len().saturating_sub(1) {
                if target[arrangement[i]] > target[arrangement[i + 1]] {
                    parity += (degrees[arrangement[i]] & 1) * (degrees[arrangement[i + 1]] & 1);
                    arrangement.swap(i, i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        Sign::from_parity(parity)
    }

    #[test]
    fn koszul_identity_is_plus() {
        assert_eq!(koszul_sign(&[3, 5], &[0, 1]).unwrap(), Sign::Plus);
    }

    #[test]
    fn koszul_transposition_of_odds_is_minus() {
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]).unwrap(), Sign::Minus);
    }

    #[test]
    fn koszul_matches_adjacent_transposition_oracle() {
        // Degrees [1,2,1], permutation sending (1,2,3) -> (3,1,2).
        let degrees = [1, 2, 1];
        let perm = [2, 0, 1];
        assert_eq!(
            koszul_sign(&degrees, &perm).unwrap(),
            koszul_by_adjacent_transpositions(&degrees, &perm)
        );
    }

    #[test]
    fn koszul_rejects_non_permutations() {
        assert!(koszul_sign(&[1, 1], &[0]).is_err());
        assert!(koszul_sign(&[1, 1], &[0, 0]).is_err());
        assert!(koszul_sign(&[1, 1], &[0, 2]).is_err());
    }

    #[test]
    fn ordered_partitions_two_blocks() {
        let all: Vec<_> = ordered_partitions(2, 2).collect();
        assert_eq!(all.len(), 4);
        let blocks: Vec<_> = all.iter().map(|p| p.blocks.clone()).collect();
        assert!(blocks.contains(&vec![vec![0, 1], vec![]]));
        assert!(blocks.contains(&vec![vec![0], vec![1]]));
        assert!(blocks.contains(&vec![vec![1], vec![0]]));
        assert!(blocks.contains(&vec![vec![], vec![0, 1]]));
    }

    #[test]
    fn ordered_partitions_empty_ground() {
        let all: Vec<_> = ordered_partitions(0, 3).collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].blocks.iter().all(|b| b.is_empty()));
    }

    #[test]
    fn ordered_partitions_count_matches_power() {
        let all: Vec<_> = ordered_partitions(4, 3).collect();
        assert_eq!(all.len(), 81);
        // No duplicates.
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn dotted_partitions_are_contiguous() {
        let all: Vec<_> = dotted_partitions(5, 2).collect();
        assert_eq!(all.len(), 6);
        for p in &all {
            let mut expected_start = 0;
            for &(s, e) in &p.blocks {
                assert_eq!(s, expected_start);
                assert!(e >= s);
                expected_start = e;
            }
            assert_eq!(expected_start, 5);
        }
        // {0,1} then {2,3,4} is among them; a non-contiguous split like
        // {0,3} | {1,2,4} cannot be represented at all.
        assert!(all
            .iter()
            .any(|p| p.blocks == vec![(0, 2), (2, 5)]));
    }

    #[test]
    fn dotted_partitions_binomial_count() {
        // C(6+4-1, 4-1) = C(9,3) = 84.
        assert_eq!(dotted_partitions(6, 4).count(), 84);
    }

    #[test]
    fn splits_with_sizes_matches_filtered_enumeration() {
        let sizes = [1usize, 2, 1];
        let pruned = splits_with_sizes(4, &sizes);
        let brute: Vec<_> = ordered_partitions(4, 3)
            .filter(|p| {
                p.blocks
                    .iter()
                    .zip(&sizes)
                    .all(|(b, &s)| b.len() == s)
            })
            .map(|p| p.blocks)
            .collect();
        assert_eq!(pruned.len(), brute.len());
        for b in &brute {
            assert!(pruned.contains(b));
        }
    }

    #[test]
    fn set_partitions_canonical_order() {
        let parts = set_partitions_filtered(3, &[2], &[1, 2]);
        // {0}{1,2}, {0,1}{2}, {0,2}{1} -- each once, blocks ordered by min.
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(p[0][0] < p[1][0]);
        }
    }
}
