//! Problem instances, assignments and the plain-text matrix format.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A rate matrix over a subframe/subchannel grid.
///
/// Column `j` is subchannel `j % K` of subframe `j / K`, so the `K` columns
/// of a subframe are contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    num_vehicles: usize,
    num_subframes: usize,
    slots_per_subframe: usize,
    weights: Vec<f64>,
}

impl ProblemInstance {
    /// Builds an instance from row vectors. Every row must hold
    /// `num_subframes * slots_per_subframe` finite, non-negative rates.
    pub fn new(num_subframes: usize, slots_per_subframe: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        let cols = num_subframes * slots_per_subframe;
        let mut flat = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInstance(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(rows.len(), num_subframes, slots_per_subframe, flat)
    }

    /// Builds an instance from a row-major buffer of `N * S * K` rates.
    pub fn from_flat(
        num_vehicles: usize,
        num_subframes: usize,
        slots_per_subframe: usize,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if num_vehicles == 0 || num_subframes == 0 || slots_per_subframe == 0 {
            return Err(Error::InvalidInstance(format!(
                "counts must be positive (N={num_vehicles}, S={num_subframes}, K={slots_per_subframe})"
            )));
        }
        let cols = num_subframes * slots_per_subframe;
        if weights.len() != num_vehicles * cols {
            return Err(Error::InvalidInstance(format!(
                "expected {} weights, got {}",
                num_vehicles * cols,
                weights.len()
            )));
        }
        for (idx, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFinite { row: idx / cols, col: idx % cols });
            }
            if w < 0.0 {
                return Err(Error::InvalidInstance(format!("negative weight {w} at ({}, {})", idx / cols, idx % cols)));
            }
        }
        Ok(Self { num_vehicles, num_subframes, slots_per_subframe, weights })
    }

    pub fn num_vehicles(&self) -> usize {
        self.num_vehicles
    }

    pub fn num_subframes(&self) -> usize {
        self.num_subframes
    }

    pub fn slots_per_subframe(&self) -> usize {
        self.slots_per_subframe
    }

    /// Total number of resources, `S * K`.
    pub fn num_resources(&self) -> usize {
        self.num_subframes * self.slots_per_subframe
    }

    pub fn weight(&self, vehicle: usize, resource: usize) -> f64 {
        self.weights[vehicle * self.num_resources() + resource]
    }

    pub fn row(&self, vehicle: usize) -> &[f64] {
        let cols = self.num_resources();
        &self.weights[vehicle * cols..(vehicle + 1) * cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.weights.chunks_exact(self.num_resources())
    }

    /// The `K` rates of `vehicle` within `subframe`.
    pub fn block(&self, vehicle: usize, subframe: usize) -> &[f64] {
        let k = self.slots_per_subframe;
        &self.row(vehicle)[subframe * k..(subframe + 1) * k]
    }

    pub fn subframe_of(&self, resource: usize) -> usize {
        resource / self.slots_per_subframe
    }

    /// Returns a copy with every weight multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidArgument(format!("scale factor must be positive, got {factor}")));
        }
        Self::from_flat(
            self.num_vehicles,
            self.num_subframes,
            self.slots_per_subframe,
            self.weights.iter().map(|w| w * factor).collect(),
        )
    }

    /// Returns the instance whose row `i` is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.num_vehicles {
            return Err(Error::DimensionMismatch(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.num_vehicles
            )));
        }
        let rows = perm.iter().map(|&p| self.row(p).to_vec()).collect();
        Self::new(self.num_subframes, self.slots_per_subframe, rows)
    }
}

/// Parses the plain-text matrix format: a header line `N S K` followed by
/// `N` rows of `S*K` whitespace-separated values. Blank lines and lines
/// starting with `#` are ignored.
impl FromStr for ProblemInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse { line: 0, message: "empty input".into() })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse { line: header_line, message: format!("bad header field {t:?}: {e}") })
            })
            .collect::<Result<_>>()?;
        let [n, s, k] = dims[..] else {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header must be `N S K`, got {} fields", dims.len()),
            });
        };
        if n == 0 || s == 0 || k == 0 {
            return Err(Error::Parse { line: header_line, message: "N, S and K must be positive".into() });
        }

        let mut rows = Vec::with_capacity(n);
        for (line_no, line) in lines {
            if rows.len() == n {
                return Err(Error::Parse { line: line_no, message: format!("more than {n} rows") });
            }
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|e| Error::Parse { line: line_no, message: format!("bad value {t:?}: {e}") })
                })
                .collect::<Result<_>>()?;
            if row.len() != s * k {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {} values, got {}", s * k, row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse { line: 0, message: format!("expected {n} rows, got {}", rows.len()) });
        }
        Self::new(s, k, rows)
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.num_vehicles, self.num_subframes, self.slots_per_subframe)?;
        for row in self.rows() {
            let mut first = true;
            for w in row {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                // `{}` on f64 prints the shortest string that round-trips.
                write!(f, "{w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Vehicle `i` transmits on resource `mapping[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<usize>);

impl Assignment {
    pub fn resources(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}->{r}")?;
        }
        Ok(())
    }
}

/// Vehicle `i` transmits somewhere in subframe `mapping[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacroAssignment(pub Vec<usize>);

impl MacroAssignment {
    pub fn subframes(&self) -> &[usize] {
        &self.0
    }
}
