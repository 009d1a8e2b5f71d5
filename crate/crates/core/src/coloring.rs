use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex coloring with colors in `0..palette`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette: usize,
}

impl Coloring {
    /// Coloring whose palette is the largest color plus one.
    pub fn new(colors: Vec<usize>) -> Self {
        let palette = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring { colors, palette }
    }

    pub fn with_palette(colors: Vec<usize>, palette: usize) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= palette) {
            return Err(Error::InvalidArgument(format!(
                "color {c} outside palette of size {palette}"
            )));
        }
        Ok(Coloring { colors, palette })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Fails unless the coloring assigns a color to every vertex of `g`.
    pub fn check_total(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::InvalidArgument(format!(
                "coloring has {} entries for {} vertices",
                self.colors.len(),
                g.n()
            )));
        }
        if let Some(&c) = self.colors.iter().find(|&&c| c >= self.palette) {
            return Err(Error::InvalidArgument(format!(
                "color {c} outside palette of size {}",
                self.palette
            )));
        }
        Ok(())
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Vertices whose color lies in `set`.
    pub fn vertices_with_colors(&self, set: &[usize]) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&v| set.contains(&self.colors[v]))
            .collect()
    }
}
