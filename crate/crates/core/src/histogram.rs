use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Frequency table of nonnegative integer values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    bins: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn from_values(values: impl IntoIterator<Item = u64>) -> Self {
        let mut bins = BTreeMap::new();
        for v in values {
            *bins.entry(v).or_insert(0) += 1;
        }
        Self { bins }
    }

    pub fn get(&self, value: u64) -> u64 {
        self.bins.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.bins.values().sum()
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// `(value, count)` pairs in ascending value order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.bins.iter().map(|(&k, &c)| (k, c))
    }

    pub fn as_map(&self) -> &BTreeMap<u64, u64> {
        &self.bins
    }

    /// `(value, probability)` points, normalized by the total count.
    pub fn probabilities(&self) -> Vec<(f64, f64)> {
        let total = self.total() as f64;
        self.iter().map(|(k, c)| (k as f64, c as f64 / total)).collect()
    }

    /// Writes `k,count,probability` CSV with a header row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "k,count,probability")?;
        let total = self.total() as f64;
        for (k, c) in self.iter() {
            writeln!(out, "{k},{c},{}", c as f64 / total)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Reads `(k, count)` points from CSV with at least two columns
/// (`k,count[,probability]`). A non-numeric first row is treated as a
/// header; `#` lines are ignored. Counts may be fractional.
pub fn read_distribution_csv<R: BufRead>(reader: R) -> Result<Vec<(f64, f64)>> {
    let mut points = Vec::new();
    let mut header_seen = false;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = match fields.as_slice() {
            [k, c, ..] => k.parse::<f64>().ok().zip(c.parse::<f64>().ok()),
            _ => None,
        };
        match parsed {
            Some(p) => points.push(p),
            None if points.is_empty() && !header_seen => header_seen = true,
            None => {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected `k,count`, got {line:?}"),
                })
            }
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_csv() {
        let h = Histogram::from_values([1, 2, 2, 4]);
        assert_eq!(h.get(2), 2);
        assert_eq!(h.total(), 4);
        let mut buf = Vec::new();
        h.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "k,count,probability\n1,1,0.25\n2,2,0.5\n4,1,0.25\n"
        );
    }

    #[test]
    fn read_with_and_without_header() {
        let pts = read_distribution_csv("k,count,probability\n1,3,0.5\n2,1.5,0.25\n".as_bytes()).unwrap();
        assert_eq!(pts, vec![(1.0, 3.0), (2.0, 1.5)]);
        let pts = read_distribution_csv("# c\n5,2\n".as_bytes()).unwrap();
        assert_eq!(pts, vec![(5.0, 2.0)]);
        assert!(read_distribution_csv("1,2\nx,y\n".as_bytes()).is_err());
    }
}
