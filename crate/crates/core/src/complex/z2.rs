use std::collections::HashMap;

/// Sparse matrix over Z₂ stored as columns of strictly ascending row indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Z2Matrix {
    rows: usize,
    columns: Vec<Vec<usize>>,
}

/// Sorts `entries` and drops every index occurring an even number of times.
pub fn z2_reduce(mut entries: Vec<usize>) -> Vec<usize> {
    entries.sort_unstable();
    let mut out: Vec<usize> = Vec::with_capacity(entries.len());
    for x in entries {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Symmetric difference of two ascending index lists.
pub fn z2_add(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Z2Matrix {
    /// Builds a matrix from arbitrary columns; entries are reduced mod 2.
    pub fn new(rows: usize, columns: Vec<Vec<usize>>) -> Self {
        let columns: Vec<Vec<usize>> = columns.into_iter().map(z2_reduce).collect();
        debug_assert!(columns.iter().all(|c| c.last().is_none_or(|&r| r < rows)));
        Self { rows, columns }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Z2Matrix) -> Z2Matrix {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        let columns = rhs
            .columns
            .iter()
            .map(|col| col.iter().fold(Vec::new(), |acc, &k| z2_add(&acc, &self.columns[k])))
            .collect();
        Z2Matrix { rows: self.rows, columns }
    }

    /// Rank, skipping the columns flagged in `cleared` (known to reduce to
    /// zero), together with the pivot rows found.
    pub fn rank_with_clearing(&self, cleared: &[bool]) -> (usize, Vec<usize>) {
        let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
        for (j, col) in self.columns.iter().enumerate() {
            if cleared.get(j).copied().unwrap_or(false) {
                continue;
            }
            let mut col = col.clone();
            while let Some(&low) = col.last() {
                match pivots.get(&low) {
                    Some(p) => col = z2_add(&col, p),
                    None => {
                        pivots.insert(low, col);
                        break;
                    }
                }
            }
        }
        let rows: Vec<usize> = pivots.into_keys().collect();
        (rows.len(), rows)
    }

    /// Rank by column reduction on lowest entries.
    pub fn rank(&self) -> usize {
        let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
        for col in &self.columns {
            let mut col = col.clone();
            while let Some(&low) = col.last() {
                match pivots.get(&low) {
                    Some(p) => col = z2_add(&col, p),
                    None => {
                        pivots.insert(low, col);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}
