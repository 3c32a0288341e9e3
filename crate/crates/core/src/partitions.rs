//! Exact partition-count tables built from power-series products.

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Which generating function a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// Partitions into distinct parts, from the product of `(1 + x^j)`.
    Distinct,
    /// Partitions into odd parts; equal to `Distinct` by Euler's theorem.
    OddParts,
    /// Partitions with no part divisible by `k`.
    NoMultiplesOf(u32),
}

impl TableKind {
    fn tag(self) -> (&'static str, u32) {
        match self {
            TableKind::Distinct => ("distinct", 0),
            TableKind::OddParts => ("odd", 0),
            TableKind::NoMultiplesOf(k) => ("pk", k),
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableKind::NoMultiplesOf(k) => write!(f, "p_{k}"),
            TableKind::Distinct => f.write_str("q"),
            TableKind::OddParts => f.write_str("q (odd parts)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    kind: TableKind,
    values: Vec<BigInt>,
}

impl PartitionTable {
    pub fn kind(&self) -> TableKind {
        self.kind
    }

    /// Largest index held.
    pub fn limit(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Result<&BigInt> {
        self.values.get(n).ok_or(Error::Index { index: n, limit: self.limit() })
    }

    /// Truncated copy holding indices `0..=limit`.
    pub fn truncate(&self, limit: usize) -> Result<PartitionTable> {
        self.get(limit)?;
        Ok(PartitionTable { kind: self.kind, values: self.values[..=limit].to_vec() })
    }

    /// Write the table as a header line `kind k N` followed by one decimal value per line.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(fs::File::create(path)?);
        let (name, k) = self.kind.tag();
        writeln!(w, "{name} {k} {}", self.limit())?;
        for v in &self.values {
            writeln!(w, "{v}")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<PartitionTable> {
        let reader = BufReader::new(fs::File::open(path)?);
        let mut lines = reader.lines();
        let header = lines.next().ok_or_else(|| Error::Cache("empty file".into()))??;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let bad = |what: &str| Error::Cache(format!("{}: {what}", path.display()));
        if fields.len() != 3 {
            return Err(bad("malformed header"));
        }
        let k: u32 = fields[1].parse().map_err(|_| bad("bad k"))?;
        let limit: usize = fields[2].parse().map_err(|_| bad("bad limit"))?;
        let kind = match fields[0] {
            "distinct" => TableKind::Distinct,
            "odd" => TableKind::OddParts,
            "pk" => TableKind::NoMultiplesOf(k),
            _ => return Err(bad("unknown kind")),
        };
        let mut values = Vec::with_capacity(limit + 1);
        for line in lines {
            let line = line?;
            values.push(BigInt::from_str(line.trim()).map_err(|_| bad("bad value"))?);
        }
        if values.len() != limit + 1 {
            return Err(bad("value count does not match header"));
        }
        Ok(PartitionTable { kind, values })
    }
}

/// q(0..=limit) by multiplying in one factor `(1 + x^j)` at a time.
pub fn q_table(limit: usize) -> PartitionTable {
    let mut v = vec![BigInt::from(0); limit + 1];
    v[0] = BigInt::one();
    for j in 1..=limit {
        // descending so each part is used at most once
        for i in (j..=limit).rev() {
            let (lo, hi) = v.split_at_mut(i);
            hi[0] += &lo[i - j];
        }
    }
    PartitionTable { kind: TableKind::Distinct, values: v }
}

/// Unbounded-multiplicity knapsack over the allowed part sizes.
fn unrestricted_parts(limit: usize, allowed: impl Fn(usize) -> bool) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); limit + 1];
    v[0] = BigInt::one();
    for j in (1..=limit).filter(|&j| allowed(j)) {
        for i in j..=limit {
            let (lo, hi) = v.split_at_mut(i);
            hi[0] += &lo[i - j];
        }
    }
    v
}

/// q(0..=limit) counted as partitions into odd parts, independently of [`q_table`].
pub fn q_oracle_table(limit: usize) -> PartitionTable {
    PartitionTable { kind: TableKind::OddParts, values: unrestricted_parts(limit, |j| j % 2 == 1) }
}

/// Partitions of 0..=limit with no part divisible by `k`.
pub fn pk_table(k: u32, limit: usize) -> Result<PartitionTable> {
    if k < 2 {
        return Err(Error::Argument(format!("k must be at least 2, got {k}")));
    }
    let k = k as usize;
    Ok(PartitionTable {
        kind: TableKind::NoMultiplesOf(k as u32),
        values: unrestricted_parts(limit, |j| j % k != 0),
    })
}

fn build(kind: TableKind, limit: usize) -> Result<PartitionTable> {
    match kind {
        TableKind::Distinct => Ok(q_table(limit)),
        TableKind::OddParts => Ok(q_oracle_table(limit)),
        TableKind::NoMultiplesOf(k) => pk_table(k, limit),
    }
}

/// Directory-backed table cache keyed by kind and limit.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    fn path(&self, kind: TableKind) -> PathBuf {
        let (name, k) = kind.tag();
        self.dir.join(format!("{name}-{k}.txt"))
    }

    /// Load a table covering `limit`, computing and storing a fresh one when
    /// the cached file is missing, unreadable or too short.
    pub fn get(&self, kind: TableKind, limit: usize) -> Result<PartitionTable> {
        let path = self.path(kind);
        if let Ok(t) = PartitionTable::load(&path) {
            if t.kind == kind && t.limit() >= limit {
                return t.truncate(limit);
            }
        }
        let t = build(kind, limit)?;
        fs::create_dir_all(&self.dir)?;
        // write to a temporary name first so readers never see a partial file
        let tmp = path.with_extension("tmp");
        t.save(&tmp)?;
        fs::rename(&tmp, &path)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(t: &PartitionTable) -> Vec<u64> {
        t.values().iter().map(|v| u64::try_from(v).unwrap()).collect()
    }

    /// Count partitions into distinct parts by explicit recursion.
    fn brute_distinct(n: u64, max_part: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|p| brute_distinct(n - p, p - 1)).sum()
    }

    fn brute_avoiding(n: u64, max_part: u64, k: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).filter(|p| p % k != 0).map(|p| brute_avoiding(n - p, p, k)).sum()
    }

    #[test]
    fn small_values() {
        let q = q_table(10);
        assert_eq!(ints(&q), vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]);
        assert_eq!(ints(&q_table(0)), vec![1]);
        assert_eq!(ints(&q_oracle_table(3)), vec![1, 1, 1, 2]);
        assert_eq!(q_oracle_table(9).get(9).unwrap(), &BigInt::from(8));
        assert_eq!(pk_table(3, 3).unwrap().get(3).unwrap(), &BigInt::from(2));
        assert_eq!(pk_table(5, 0).unwrap().get(0).unwrap(), &BigInt::one());
    }

    #[test]
    fn brute_force_agreement() {
        let q = q_table(40);
        for n in 0..=40u64 {
            assert_eq!(q.values()[n as usize], BigInt::from(brute_distinct(n, n)));
        }
        for k in 2..=6u64 {
            let p = pk_table(k as u32, 30).unwrap();
            for n in 0..=30u64 {
                assert_eq!(p.values()[n as usize], BigInt::from(brute_avoiding(n, n, k)), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn euler_identity_at_2000() {
        let q = q_table(2000);
        assert_eq!(q.values(), q_oracle_table(2000).values());
        assert_eq!(q.values(), pk_table(2, 2000).unwrap().values());
    }

    #[test]
    fn monotone_from_one() {
        let q = q_table(500);
        assert!(q.values().windows(2).skip(1).all(|w| w[1] >= w[0]));
        assert!(q.values().iter().all(|v| v >= &BigInt::one()));
    }

    #[test]
    fn errors() {
        assert!(matches!(pk_table(1, 5), Err(Error::Argument(_))));
        assert!(matches!(q_table(5).get(6), Err(Error::Index { index: 6, limit: 5 })));
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let a = cache.get(TableKind::NoMultiplesOf(3), 200).unwrap();
        let b = cache.get(TableKind::NoMultiplesOf(3), 150).unwrap();
        assert_eq!(b.values(), &a.values()[..=150]);
        let c = cache.get(TableKind::NoMultiplesOf(3), 300).unwrap();
        assert_eq!(c.limit(), 300);
        let reread = PartitionTable::load(&dir.path().join("pk-3.txt")).unwrap();
        assert_eq!(reread, c);
        fs::write(dir.path().join("distinct-0.txt"), "distinct 0 5\n1\n1\n").unwrap();
        assert!(PartitionTable::load(&dir.path().join("distinct-0.txt")).is_err());
        assert_eq!(cache.get(TableKind::Distinct, 5).unwrap(), q_table(5));
    }

    proptest! {
        #[test]
        fn oracle_matches_on_random_limits(limit in 0usize..400) {
            let (a, b) = (q_table(limit), q_oracle_table(limit));
            prop_assert_eq!(a.values(), b.values());
        }

        #[test]
        fn prefix_stability(a in 0usize..300, b in 0usize..300) {
            let (lo, hi) = (a.min(b), a.max(b));
            let cut = q_table(hi).truncate(lo).unwrap();
            prop_assert_eq!(cut, q_table(lo));
        }
    }
}
