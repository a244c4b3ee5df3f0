use serde::{Deserialize, Serialize};

use super::channel::{Channel, ChannelTag};
use crate::error::{Error, Result};

/// Finite set of retained expansion cells `(l, n)`, in basis labels, sorted
/// lexicographically. The sort order is also the unknown ordering of the
/// assembled linear system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    order: u32,
    cells: Vec<(u32, u32)>,
}

impl Truncation {
    pub fn from_cells(order: u32, mut cells: Vec<(u32, u32)>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        cells.sort_unstable();
        cells.dedup();
        if cells.is_empty() {
            return Err(Error::EmptyTruncation);
        }
        Ok(Self { order, cells })
    }

    /// `first` labels per coordinate, starting at each basis' lowest label.
    pub fn rectangle(channel: &Channel, order: u32, first: u32, second: u32) -> Result<Self> {
        let l0 = channel.first.basis.first_index();
        let n0 = channel.second.basis.first_index();
        let cells = (l0..l0 + first).flat_map(|l| (n0..n0 + second).map(move |n| (l, n))).collect();
        Self::from_cells(order, cells)
    }

    /// `n` labels per coordinate: an `n²`-dimensional system.
    pub fn square(channel: &Channel, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(n));
        }
        Self::rectangle(channel, n, n, n)
    }

    /// Cells whose polynomial degrees sum to at most `total_degree`.
    pub fn triangle(channel: &Channel, order: u32, total_degree: u32) -> Result<Self> {
        let l0 = channel.first.basis.first_index();
        let n0 = channel.second.basis.first_index();
        let cells = (0..=total_degree)
            .flat_map(|i| (0..=total_degree - i).map(move |j| (l0 + i, n0 + j)))
            .collect();
        Self::from_cells(order, cells)
    }

    /// The cell sets behind the tabulated truncation orders.
    ///
    /// * A: order 1 is `{(2,2)}`, order 2 adds `(3,2)`, order 3 is the
    ///   degree-1 triangle `{(2,2),(2,3),(3,2)}`, and order `k >= 4` is the
    ///   square with `k-2` labels per coordinate.
    /// * B: order 1 is `{(2,3)}`; order `k >= 2` keeps `k` H-labels and `k-1`
    ///   G-labels.
    /// * C: order `k` is the `k × k` square.
    pub fn tabulated(tag: ChannelTag, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        let channel = Channel::new(tag);
        match (tag, order) {
            (ChannelTag::A, 1) => Self::rectangle(&channel, 1, 1, 1),
            (ChannelTag::A, 2) => Self::rectangle(&channel, 2, 2, 1),
            (ChannelTag::A, 3) => Self::triangle(&channel, 3, 1),
            (ChannelTag::A, k) => Self::rectangle(&channel, k, k - 2, k - 2),
            (ChannelTag::B, 1) => Self::rectangle(&channel, 1, 1, 1),
            (ChannelTag::B, k) => Self::rectangle(&channel, k, k, k - 1),
            (ChannelTag::C, k) => Self::rectangle(&channel, k, k, k),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn cells(&self) -> &[(u32, u32)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn position(&self, l: u32, n: u32) -> Option<usize> {
        self.cells.binary_search(&(l, n)).ok()
    }

    /// Largest label in each coordinate.
    pub fn max_labels(&self) -> (u32, u32) {
        let l = self.cells.iter().map(|c| c.0).max().unwrap_or(0);
        let n = self.cells.iter().map(|c| c.1).max().unwrap_or(0);
        (l, n)
    }

    /// Whether `(l, n)` retained implies `(n, l)` retained.
    pub fn is_symmetric(&self) -> bool {
        self.cells.iter().all(|&(l, n)| self.position(n, l).is_some())
    }
}
