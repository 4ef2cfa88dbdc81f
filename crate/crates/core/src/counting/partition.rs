use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
///
/// Ordered reverse-lexicographically, so `(4) < (3,1) < (2,2) < (2,1,1)`
/// and sorted collections list partitions the way tables print them.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates weakly decreasing parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(m^d)`: `d` parts equal to `m`.
    pub fn rectangle(m: usize, d: usize) -> Self {
        if m == 0 {
            return Self::empty();
        }
        Partition(vec![m; d])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `mu_1`, or 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// `mu_i` with 1-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1).and_then(|i| self.0.get(i)).copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        Partition((1..=self.first()).map(|i| self.0.iter().filter(|&&p| p >= i).count()).collect())
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Accepts `(2,1,1)`, `2,1,1` and `()`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s).trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition part {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, reverse-lexicographic.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

/// Partitions of `n` whose largest part is exactly `m`, reverse-lexicographic.
pub fn partitions_with_first_part(n: usize, m: usize) -> Vec<Partition> {
    if m == 0 || m > n {
        return if n == 0 && m == 0 { vec![Partition::empty()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![m];
    fill(n - m, m, &mut cur, &mut out);
    out
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_four() {
        let all = partitions_of(4);
        assert_eq!(all, vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn partition_counts() {
        // p(n) for n = 0..=15
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n).len(), c);
        }
    }

    #[test]
    fn first_part_filter() {
        assert_eq!(partitions_with_first_part(4, 2), vec![p(&[2, 2]), p(&[2, 1, 1])]);
        assert_eq!(partitions_with_first_part(4, 5), vec![]);
        assert_eq!(partitions_with_first_part(4, 0), vec![]);
        for n in 0..10 {
            let total: usize = (0..=n).map(|m| partitions_with_first_part(n, m).len()).sum();
            assert_eq!(total, partitions_of(n).len());
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[2, 1, 1]).conjugate(), p(&[3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 0..9 {
            for mu in partitions_of(n) {
                assert_eq!(mu.conjugate().conjugate(), mu);
                assert_eq!(mu.conjugate().weight(), n);
            }
        }
    }

    #[test]
    fn validation_and_text() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![5, 2, 1, 1, 0, 0]).unwrap(), p(&[5, 2, 1, 1]));
        assert_eq!(p(&[2, 1, 1]).to_string(), "(2,1,1)");
        assert_eq!(Partition::empty().to_string(), "()");
        assert_eq!("(2,1,1)".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("2, 1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,x".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
    }
}
