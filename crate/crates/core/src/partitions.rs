//! Set partitions and non-crossing partitions of `[j] = {1..j}`.
//!
//! Partitions are stored as restricted-growth strings: `rgs[i]` is the block
//! label of element `i + 1`, labels appear in increasing order of their first
//! element. Enumeration follows lexicographic restricted-growth order.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Largest `j` for which partitions of `[j]` are enumerated.
pub const MAX_PARTITION_SIZE: usize = 12;

/// A partition of `[j]` in canonical restricted-growth form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    /// Builds from a restricted-growth string, validating the growth rule.
    pub fn from_rgs(rgs: Vec<u8>) -> Result<Self> {
        let mut max: i16 = -1;
        for &label in &rgs {
            if label as i16 > max + 1 {
                return Err(Error::InvalidParameter(alloc::format!(
                    "not a restricted growth string: {rgs:?}"
                )));
            }
            max = max.max(label as i16);
        }
        Ok(Self { rgs })
    }

    /// Builds from explicit 1-based blocks.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let size: usize = blocks.iter().map(Vec::len).sum();
        let mut labels = vec![u8::MAX; size];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e == 0 || e > size || labels[e - 1] != u8::MAX {
                    return Err(Error::InvalidParameter(
                        "blocks do not partition [j]".into(),
                    ));
                }
                labels[e - 1] = b as u8;
            }
        }
        // relabel by first occurrence
        let mut map = vec![u8::MAX; blocks.len()];
        let mut next = 0u8;
        for l in labels.iter_mut() {
            if map[*l as usize] == u8::MAX {
                map[*l as usize] = next;
                next += 1;
            }
            *l = map[*l as usize];
        }
        Ok(Self { rgs: labels })
    }

    /// The single-block partition `1_j`.
    pub fn one_block(j: usize) -> Self {
        Self { rgs: vec![0; j] }
    }

    /// All singletons.
    pub fn singletons(j: usize) -> Self {
        Self {
            rgs: (0..j as u8).collect(),
        }
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    /// `j`, the size of the underlying set.
    pub fn size(&self) -> usize {
        self.rgs.len()
    }

    /// `|pi|`.
    pub fn block_count(&self) -> usize {
        self.rgs.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Blocks as sorted 1-based element lists, ordered by minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &l) in self.rgs.iter().enumerate() {
            blocks[l as usize].push(i + 1);
        }
        blocks
    }

    /// Block sizes, non-increasing.
    pub fn block_sizes(&self) -> Vec<u8> {
        let mut sizes = vec![0u8; self.block_count()];
        for &l in &self.rgs {
            sizes[l as usize] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

impl core::fmt::Display for SetPartition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for l in &self.rgs {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn check_size(j: usize) -> Result<()> {
    if j > MAX_PARTITION_SIZE {
        Err(Error::PartitionCap(j))
    } else {
        Ok(())
    }
}

/// Streams every partition of `[j]` once, in restricted-growth order.
pub fn set_partitions(j: usize) -> Result<SetPartitions> {
    check_size(j)?;
    Ok(SetPartitions {
        rgs: vec![0; j],
        prefix_max: vec![0; j],
        done: false,
    })
}

/// Iterator returned by [`set_partitions`].
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<u8>,
    // prefix_max[i] = max(rgs[..=i])
    prefix_max: Vec<u8>,
    done: bool,
}

impl SetPartitions {
    fn advance(&mut self) {
        let j = self.rgs.len();
        let mut i = j;
        while i > 1 {
            i -= 1;
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for t in i + 1..j {
                    self.rgs[t] = 0;
                    self.prefix_max[t] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition {
            rgs: self.rgs.clone(),
        };
        self.advance();
        Some(out)
    }
}

/// True iff no `a < b < c < d` has `a, c` in one block and `b, d` in another.
///
/// Checks only arcs between consecutive elements of each block, which is
/// equivalent and quadratic rather than quartic.
pub fn is_noncrossing(pi: &SetPartition) -> bool {
    is_noncrossing_rgs(&pi.rgs)
}

fn is_noncrossing_rgs(rgs: &[u8]) -> bool {
    let mut last = [usize::MAX; MAX_PARTITION_SIZE + 1];
    let mut arcs: [(usize, usize); MAX_PARTITION_SIZE] = [(0, 0); MAX_PARTITION_SIZE];
    let mut n_arcs = 0;
    for (i, &l) in rgs.iter().enumerate() {
        let l = l as usize;
        if last[l] != usize::MAX {
            arcs[n_arcs] = (last[l], i);
            n_arcs += 1;
        }
        last[l] = i;
    }
    for x in 0..n_arcs {
        let (a, c) = arcs[x];
        for &(b, d) in &arcs[x + 1..n_arcs] {
            if (a < b && b < c && c < d) || (b < a && a < d && d < c) {
                return false;
            }
        }
    }
    true
}

/// Non-crossing partitions of `[j]`, as a filter over [`set_partitions`].
pub fn noncrossing_partitions(j: usize) -> Result<impl Iterator<Item = SetPartition>> {
    Ok(set_partitions(j)?.filter(is_noncrossing))
}

/// `(-1)^(k-|pi|) N^|pi| prod_V (|V|-1)!`, the weight of `kappa_pi` in the
/// coefficient/cumulant relation.
pub fn partition_weight(pi: &SetPartition, n: u64, k: usize) -> Result<Rational> {
    if pi.size() != k {
        return Err(Error::InvalidParameter(alloc::format!(
            "partition of [{}] used as a partition of [{k}]",
            pi.size()
        )));
    }
    Ok(Rational::from_integer(block_weight(
        &pi.block_sizes(),
        n,
        k,
    )))
}

fn block_weight(sizes: &[u8], n: u64, k: usize) -> BigInt {
    let r = sizes.len();
    let mut w: BigInt = Pow::pow(BigInt::from(n), r as u32);
    for &s in sizes {
        w *= factorial(s as u64 - 1);
    }
    if (k - r) % 2 == 1 {
        -w
    } else {
        w
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(n)_k = n (n-1) ... (n-k+1)`.
pub fn falling_factorial(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::FallingFactorialRange { n, k });
    }
    Ok((0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i)))
}

/// Number of partitions of `[k]` sharing one multiset of block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockType {
    /// Block sizes, non-increasing.
    pub sizes: Vec<u8>,
    pub count: u64,
}

impl BlockType {
    /// Aggregated weight `count * partition_weight` of this type.
    pub fn weight(&self, n: u64, k: usize) -> BigInt {
        block_weight(&self.sizes, n, k) * BigInt::from(self.count)
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }
}

type TypeTable = [OnceBox<Vec<BlockType>>; MAX_PARTITION_SIZE + 1];

static ALL_TYPES: TypeTable = [const { OnceBox::new() }; MAX_PARTITION_SIZE + 1];
static NC_TYPES: TypeTable = [const { OnceBox::new() }; MAX_PARTITION_SIZE + 1];

fn tabulate(j: usize, noncrossing: bool) -> Vec<BlockType> {
    let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for pi in set_partitions(j).expect("size checked by caller") {
        if noncrossing && !is_noncrossing_rgs(&pi.rgs) {
            continue;
        }
        *counts.entry(pi.block_sizes()).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .rev()
        .map(|(sizes, count)| BlockType { sizes, count })
        .collect()
}

/// Block-size types of all partitions of `[k]` with their counts, memoized.
pub fn block_types(k: usize) -> Result<&'static [BlockType]> {
    check_size(k)?;
    Ok(ALL_TYPES[k].get_or_init(|| Box::new(tabulate(k, false))))
}

/// Block-size types of the non-crossing partitions of `[k]`, memoized.
pub fn noncrossing_block_types(k: usize) -> Result<&'static [BlockType]> {
    check_size(k)?;
    Ok(NC_TYPES[k].get_or_init(|| Box::new(tabulate(k, true))))
}
