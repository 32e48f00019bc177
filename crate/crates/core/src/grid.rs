use crate::error::{Error, Result};

/// A dense 1-based `cols x rows` grid stored row-major (row 1 first).
///
/// Used for the catalog (`m` columns by `n` rows) and for per-query key material
/// (`l` by `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid<T> {
    cols: usize,
    rows: usize,
    cells: Vec<T>,
}

impl<T> Grid<T> {
    pub fn from_fn(cols: usize, rows: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut cells = Vec::with_capacity(cols * rows);
        for row in 1..=rows {
            for col in 1..=cols {
                cells.push(f(col, row));
            }
        }
        Grid { cols, rows, cells }
    }

    pub fn try_from_fn<E>(
        cols: usize,
        rows: usize,
        mut f: impl FnMut(usize, usize) -> Result<T, E>,
    ) -> Result<Self, E> {
        let mut cells = Vec::with_capacity(cols * rows);
        for row in 1..=rows {
            for col in 1..=cols {
                cells.push(f(col, row)?);
            }
        }
        Ok(Grid { cols, rows, cells })
    }

    /// Builds a grid from row-major cells.
    pub fn from_row_major(cols: usize, rows: usize, cells: Vec<T>) -> Result<Self> {
        if cells.len() != cols * rows {
            return Err(Error::argument(format!(
                "expected {} cells for a {cols}x{rows} grid, got {}",
                cols * rows,
                cells.len()
            )));
        }
        Ok(Grid { cols, rows, cells })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn index(&self, col: usize, row: usize) -> Option<usize> {
        (col >= 1 && col <= self.cols && row >= 1 && row <= self.rows).then(|| (row - 1) * self.cols + (col - 1))
    }

    pub fn get(&self, col: usize, row: usize) -> Option<&T> {
        self.index(col, row).map(|i| &self.cells[i])
    }

    pub fn get_mut(&mut self, col: usize, row: usize) -> Option<&mut T> {
        self.index(col, row).map(move |i| &mut self.cells[i])
    }

    /// Panics when out of range; for indices already validated by the caller.
    pub fn at(&self, col: usize, row: usize) -> &T {
        self.get(col, row)
            .unwrap_or_else(|| panic!("cell ({col}, {row}) outside {}x{} grid", self.cols, self.rows))
    }

    /// Cells in row-major order with their 1-based coordinates.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let cols = self.cols;
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, v)| ((i % cols + 1, i / cols + 1), v))
    }

    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.cells.iter()
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Grid<U> {
        Grid {
            cols: self.cols,
            rows: self.rows,
            cells: self.cells.iter().map(&mut f).collect(),
        }
    }

    pub fn into_row_major(self) -> Vec<T> {
        self.cells
    }
}
