use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::real::Real;

use super::config::{Memory, Scheme};

/// Settings a trajectory was produced with.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta<T> {
    pub system: String,
    pub alpha: Vec<T>,
    pub h: T,
    pub t_end: T,
    pub x0: Vec<T>,
    pub scheme: Scheme,
    pub memory: Memory,
    pub corrector_iters: usize,
}

/// Uniformly sampled solution: `N + 1` instants and an `(N + 1) × n` state matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    times: Vec<T>,
    states: Vec<T>,
    dim: usize,
    meta: TrajectoryMeta<T>,
}

impl<T: Real> Trajectory<T> {
    pub(crate) fn new(times: Vec<T>, states: Vec<T>, meta: TrajectoryMeta<T>) -> Self {
        let dim = meta.x0.len();
        debug_assert_eq!(times.len() * dim, states.len());
        Self { times, states, dim, meta }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    /// Row-major state matrix.
    pub fn states(&self) -> &[T] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &[T] {
        &self.states[i * self.dim..(i + 1) * self.dim]
    }

    pub fn last(&self) -> &[T] {
        self.state(self.len() - 1)
    }

    pub fn component(&self, j: usize) -> Vec<T> {
        self.states.iter().skip(j).step_by(self.dim).copied().collect()
    }

    pub fn meta(&self) -> &TrajectoryMeta<T> {
        &self.meta
    }

    /// State rows with `t >= t_from`.
    pub fn rows_after(&self, t_from: T) -> impl Iterator<Item = &[T]> {
        let first = self.times.iter().position(|&t| t >= t_from).unwrap_or(self.len());
        self.states[first * self.dim..].chunks(self.dim)
    }

    /// CSV with header `t,x1,...,xn` and 17 significant digits per value.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let mut line = String::from("t");
        for i in 1..=self.dim {
            line.push_str(&format!(",x{i}"));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
        for (i, t) in self.times.iter().enumerate() {
            line.clear();
            line.push_str(&format_value(*t));
            for v in self.state(i) {
                line.push(',');
                line.push_str(&format_value(*v));
            }
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// Fixed-width scientific formatting, enough digits to round-trip an f64.
pub fn format_value<T: Real>(v: T) -> String {
    format!("{:.16e}", v.to_f64_lossy())
}

/// Numeric CSV with a header row, as written by [`Trajectory::write_csv`].
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable<T> {
    pub header: Vec<String>,
    pub rows: Vec<Vec<T>>,
}

impl<T: Real> CsvTable<T> {
    pub fn read<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(input);
        let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        let mut rows = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record?;
            let row = record
                .iter()
                .map(|s| {
                    s.parse::<f64>().map(T::lit).map_err(|_| {
                        Error::Parse(format!("row {}: `{s}` is not a number", line + 2))
                    })
                })
                .collect::<Result<Vec<T>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::EmptyInput("CSV has no data rows".into()));
        }
        Ok(Self { header, rows })
    }

    /// Selects 1-based `columns`, dropping the leading `transient` fraction of rows.
    pub fn points(&self, columns: &[usize], transient: f64) -> Result<Vec<Vec<T>>> {
        if !(0.0..1.0).contains(&transient) {
            return Err(Error::Config(format!("transient fraction must lie in [0, 1), got {transient}")));
        }
        let width = self.header.len();
        if let Some(&c) = columns.iter().find(|&&c| c == 0 || c > width) {
            return Err(Error::Config(format!("column {c} out of range 1..={width}")));
        }
        let skip = (transient * self.rows.len() as f64).floor() as usize;
        Ok(self.rows[skip..]
            .iter()
            .map(|r| columns.iter().map(|&c| r[c - 1]).collect())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Trajectory<f64> {
        let meta = TrajectoryMeta {
            system: "s".into(),
            alpha: vec![0.5, 0.5],
            h: 0.5,
            t_end: 1.0,
            x0: vec![1.0, -1.0 / 3.0],
            scheme: Scheme::Gl,
            memory: Memory::Full,
            corrector_iters: 1,
        };
        Trajectory::new(vec![0.0, 0.5, 1.0], vec![1.0, -1.0 / 3.0, 0.1, 2e-17, 1e300, -7.25], meta)
    }

    #[test]
    fn csv_has_header_and_round_trips() {
        let tr = sample();
        let text = tr.to_csv_string();
        assert!(text.starts_with("t,x1,x2\n"));
        let table = CsvTable::<f64>::read(text.as_bytes()).unwrap();
        assert_eq!(table.header, ["t", "x1", "x2"]);
        for (i, row) in table.rows.iter().enumerate() {
            assert_eq!(row[0], tr.times()[i]);
            assert_eq!(&row[1..], tr.state(i));
        }
        let pts = table.points(&[2, 3], 0.5).unwrap();
        assert_eq!(pts, vec![vec![0.1, 2e-17], vec![1e300, -7.25]]);
        assert!(table.points(&[4], 0.0).is_err());
        assert!(table.points(&[1], 1.0).is_err());
    }

    #[test]
    fn rejects_non_numeric_cells() {
        assert!(CsvTable::<f64>::read("t,x\n0,abc\n".as_bytes()).is_err());
        assert!(CsvTable::<f64>::read("t,x\n".as_bytes()).is_err());
    }
}
