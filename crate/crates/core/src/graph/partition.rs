use std::fmt;

use crate::error::{invalid, Result};

/// A partition of `{0, .., n-1}` stored as a restricted growth string.
///
/// `rgs[i]` is the block of element `i`; blocks are numbered by first
/// appearance, so `rgs[0] == 0` and every entry is at most one more than the
/// largest entry before it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<usize>,
    block_count: usize,
}

impl SetPartition {
    /// Validates `rgs` as a restricted growth string.
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        let mut max_seen: Option<usize> = None;
        for (i, &b) in rgs.iter().enumerate() {
            let limit = max_seen.map_or(0, |m| m + 1);
            if b > limit {
                return Err(invalid(format!(
                    "rgs[{i}] = {b} but at most {limit} is allowed at that position"
                )));
            }
            max_seen = Some(max_seen.map_or(b, |m| m.max(b)));
        }
        let block_count = max_seen.map_or(0, |m| m + 1);
        Ok(Self { rgs, block_count })
    }

    /// Builds a partition from explicit blocks, renumbering them canonically.
    ///
    /// Every element of `0..n` must appear in exactly one block.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(invalid("empty block"));
            }
            for &x in block {
                if x >= n {
                    return Err(invalid(format!("element {x} outside 0..{n}")));
                }
                if label[x] != usize::MAX {
                    return Err(invalid(format!("element {x} appears twice")));
                }
                label[x] = b;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(invalid(format!("element {x} is not covered")));
        }
        Ok(Self::canonicalize(&label))
    }

    /// Renumbers arbitrary block labels by first appearance.
    pub fn canonicalize(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let rgs = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Self {
            rgs,
            block_count: map.len(),
        }
    }

    /// The finest partition: every element alone.
    pub fn singletons(n: usize) -> Self {
        Self {
            rgs: (0..n).collect(),
            block_count: n,
        }
    }

    /// The coarsest partition: one block (empty when `n == 0`).
    pub fn single_block(n: usize) -> Self {
        Self {
            rgs: vec![0; n],
            block_count: usize::from(n > 0),
        }
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn block_of(&self, element: usize) -> usize {
        self.rgs[element]
    }

    /// Blocks as sorted element lists, in canonical order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        blocks
    }

    /// Iterates over every partition of `{0, .., n-1}` in lexicographic RGS
    /// order. There are `Bell(n)` of them.
    pub fn all(n: usize) -> AllPartitions {
        AllPartitions {
            rgs: vec![0; n],
            prefix_max: vec![0; n],
            done: false,
        }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (t, x) in block.iter().enumerate() {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator returned by [`SetPartition::all`].
#[derive(Debug, Clone)]
pub struct AllPartitions {
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[0..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

impl Iterator for AllPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let n = self.rgs.len();
        let current = SetPartition {
            rgs: self.rgs.clone(),
            block_count: self.prefix_max.last().map_or(0, |m| m + 1),
        };
        // Advance: find the rightmost position that can still grow.
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for t in i + 1..n {
                    self.rgs[t] = 0;
                    self.prefix_max[t] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(current)
    }
}
