//! Subsets of `[0,N]` standing for weight-determined sets, the two-tail
//! sets `T_{N,i}`, the interval-filling operator `L` and its fixpoint.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{check_range, Error, Result};

/// A subset of `[0,N]`, stored as a dense bit vector of length `N + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightSet {
    max_weight: usize,
    words: Vec<u64>,
}

/// Outcome of the `(d,i)`-admitting scan: the least `i` that works, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdmittingCertificate {
    pub d: usize,
    pub i: Option<usize>,
}

impl AdmittingCertificate {
    pub fn witnessed(&self) -> bool {
        self.i.is_some()
    }
}

impl WeightSet {
    pub fn empty(max_weight: usize) -> Self {
        WeightSet {
            max_weight,
            words: vec![0; (max_weight + 1).div_ceil(64)],
        }
    }

    pub fn full(max_weight: usize) -> Self {
        let mut e = WeightSet::empty(max_weight);
        e.insert_range(0, max_weight);
        e
    }

    /// `[lo, hi]` inside `[0,N]`; empty when `lo > hi`.
    pub fn interval(max_weight: usize, lo: usize, hi: usize) -> Result<Self> {
        let mut e = WeightSet::empty(max_weight);
        if lo <= hi {
            check_range("interval end", hi, max_weight)?;
            e.insert_range(lo, hi);
        }
        Ok(e)
    }

    pub fn from_iter(max_weight: usize, weights: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut e = WeightSet::empty(max_weight);
        for j in weights {
            check_range("weight", j, max_weight)?;
            e.insert(j);
        }
        Ok(e)
    }

    /// The set whose indicator bits are the low `N + 1` bits of `mask`.
    pub fn from_mask(max_weight: usize, mask: u64) -> Self {
        assert!(max_weight < 64);
        let mut e = WeightSet::empty(max_weight);
        e.words[0] = mask & (u64::MAX >> (63 - max_weight));
        e
    }

    /// Every subset of `[0,N]` in mask order; `N` must be below 63.
    pub fn all_subsets(max_weight: usize) -> impl Iterator<Item = WeightSet> {
        assert!(max_weight < 63);
        (0u64..1 << (max_weight + 1)).map(move |m| WeightSet::from_mask(max_weight, m))
    }

    /// `T_{N,i} = [0,i-1] ∪ [N-i+1,N]`.
    pub fn two_tails(max_weight: usize, i: usize) -> Result<Self> {
        check_range("i", i, max_weight)?;
        let mut e = WeightSet::empty(max_weight);
        if i > 0 {
            e.insert_range(0, i - 1);
            e.insert_range(max_weight + 1 - i, max_weight);
        }
        Ok(e)
    }

    /// `{ j in [0,N] : j ≡ i (mod m) }`.
    pub fn residue_class(max_weight: usize, m: usize, i: usize) -> Result<Self> {
        if m == 0 || i >= m {
            return Err(Error::InvalidInput(format!(
                "residue class {i} mod {m} is not defined"
            )));
        }
        WeightSet::from_iter(max_weight, (i..=max_weight).step_by(m))
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn contains(&self, j: usize) -> bool {
        j <= self.max_weight && self.words[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn insert(&mut self, j: usize) {
        assert!(j <= self.max_weight);
        self.words[j / 64] |= 1 << (j % 64);
    }

    pub fn remove(&mut self, j: usize) {
        if j <= self.max_weight {
            self.words[j / 64] &= !(1 << (j % 64));
        }
    }

    /// Sets every bit in `[lo, hi]`.
    pub fn insert_range(&mut self, lo: usize, hi: usize) {
        if lo > hi {
            return;
        }
        assert!(hi <= self.max_weight);
        let (lw, hw) = (lo / 64, hi / 64);
        let low_mask = u64::MAX << (lo % 64);
        let high_mask = u64::MAX >> (63 - hi % 64);
        if lw == hw {
            self.words[lw] |= low_mask & high_mask;
        } else {
            self.words[lw] |= low_mask;
            for w in &mut self.words[lw + 1..hw] {
                *w = u64::MAX;
            }
            self.words[hw] |= high_mask;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.max_weight + 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * 64 + 63 - w.leading_zeros() as usize)
    }

    /// The `k`-th smallest element, counting from zero.
    pub fn select(&self, mut k: usize) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            let c = w.count_ones() as usize;
            if k < c {
                let mut w = w;
                for _ in 0..k {
                    w &= w - 1;
                }
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
            k -= c;
        }
        None
    }

    pub fn is_subset(&self, other: &WeightSet) -> bool {
        self.max_weight == other.max_weight
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &WeightSet) -> WeightSet {
        assert_eq!(self.max_weight, other.max_weight);
        WeightSet {
            max_weight: self.max_weight,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn difference(&self, other: &WeightSet) -> WeightSet {
        assert_eq!(self.max_weight, other.max_weight);
        WeightSet {
            max_weight: self.max_weight,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn complement(&self) -> WeightSet {
        WeightSet::full(self.max_weight).difference(self)
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        check_range("degree", d, self.max_weight)
    }

    /// One application of `L_{N,d}`: `E` itself when `|E| <= d`, otherwise
    /// `[0, t_{s-d}] ∪ E ∪ [t_{d+1}, N]` for `E = {t_1 < ... < t_s}`.
    pub fn l_step(&self, d: usize) -> Result<WeightSet> {
        self.check_degree(d)?;
        let s = self.len();
        let mut out = self.clone();
        if s > d {
            let left = self.select(s - d - 1).expect("s - d <= s");
            let right = self.select(d).expect("d < s");
            out.insert_range(0, left);
            out.insert_range(right, self.max_weight);
        }
        Ok(out)
    }

    /// Fixpoint of `L_{N,d}` in linear time, peeling the endpoints of the
    /// current window one layer at a time.
    pub fn l_bar(&self, d: usize) -> Result<WeightSet> {
        self.check_degree(d)?;
        let mut out = self.clone();
        let (mut a, mut b, mut d) = (0usize, self.max_weight, d);
        let mut w = self.len();
        loop {
            if w <= d || d == b - a {
                break;
            }
            if d == 0 {
                // w > 0 here, and any nonempty set fills the window at degree 0.
                out.insert_range(a, b);
                break;
            }
            // b - a >= 2 since 1 <= d < b - a.
            w -= usize::from(self.contains(a)) + usize::from(self.contains(b));
            out.insert(a);
            out.insert(b);
            a += 1;
            b -= 1;
            d -= 1;
        }
        Ok(out)
    }

    /// Fixpoint of `L_{N,d}` by iterating [`WeightSet::l_step`] until it stabilizes.
    pub fn l_bar_naive(&self, d: usize) -> Result<WeightSet> {
        Ok(self.l_iterates(d)?.pop().expect("at least the start set"))
    }

    /// `E, L(E), L²(E), ...` up to and including the first repeated set.
    pub fn l_iterates(&self, d: usize) -> Result<Vec<WeightSet>> {
        let mut chain = vec![self.clone()];
        loop {
            let last = chain.last().expect("nonempty");
            let next = last.l_step(d)?;
            if &next == last {
                return Ok(chain);
            }
            chain.push(next);
        }
    }

    /// Least `k` with `L^{k+1}(E) = L^k(E)`.
    pub fn stabilization_index(&self, d: usize) -> Result<usize> {
        Ok(self.l_iterates(d)?.len() - 1)
    }

    /// Scans `i = 0..=d` for the least `i` making `E` `(d,i)`-admitting:
    /// `E ∪ T_{N,i} != [0,N]` and `|E \ T_{N,i}| <= d - i`.
    pub fn admitting(&self, d: usize) -> Result<AdmittingCertificate> {
        self.check_degree(d)?;
        let n = self.max_weight;
        let mut prefix = Vec::with_capacity(n + 2);
        prefix.push(0usize);
        for j in 0..=n {
            prefix.push(prefix[j] + usize::from(self.contains(j)));
        }
        let i = (0..=d).find(|&i| {
            if 2 * i > n {
                // T_{N,i} already covers [0,N].
                return false;
            }
            let middle = prefix[n - i + 1] - prefix[i];
            let middle_len = n - 2 * i + 1;
            middle < middle_len && middle <= d - i
        });
        Ok(AdmittingCertificate { d, i })
    }

    /// Whether `E` is `(d,i)`-admitting for this particular `i`.
    pub fn is_admitting_at(&self, d: usize, i: usize) -> Result<bool> {
        self.check_degree(d)?;
        if i > d || 2 * i > self.max_weight {
            return Ok(false);
        }
        let t = WeightSet::two_tails(self.max_weight, i)?;
        Ok(!self.union(&t).is_full() && self.difference(&t).len() <= d - i)
    }

    /// Parses the text form: `"1,3,5"`, ranges `"0-2,4-6"`, `"t:i"` for
    /// `T_{N,i}`, `"parity:0"`/`"parity:1"`, `"mod:m:i"`, and `"{}"` for
    /// the empty set.
    pub fn parse(max_weight: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |t: &str| -> Result<usize> {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad weight {t:?} in set spec {s:?}")))
        };
        if s.is_empty() || s == "{}" || s == "∅" {
            return Ok(WeightSet::empty(max_weight));
        }
        if let Some(i) = s.strip_prefix("t:") {
            return WeightSet::two_tails(max_weight, num(i)?);
        }
        if let Some(p) = s.strip_prefix("parity:") {
            return WeightSet::residue_class(max_weight, 2, num(p)?);
        }
        if let Some(rest) = s.strip_prefix("mod:") {
            let (m, i) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected mod:m:i, got {s:?}")))?;
            return WeightSet::residue_class(max_weight, num(m)?, num(i)?);
        }
        let mut e = WeightSet::empty(max_weight);
        for part in s.split(',') {
            let part = part.trim();
            match part.split_once('-') {
                Some((lo, hi)) => {
                    let (lo, hi) = (num(lo)?, num(hi)?);
                    if lo > hi {
                        return Err(Error::Parse(format!("empty range {part:?}")));
                    }
                    check_range("weight", hi, max_weight)?;
                    e.insert_range(lo, hi);
                }
                None => {
                    let j = num(part)?;
                    check_range("weight", j, max_weight)?;
                    e.insert(j);
                }
            }
        }
        Ok(e)
    }

    /// Maximal runs `(lo, hi)` of consecutive elements.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for j in self.iter() {
            match runs.last_mut() {
                Some((_, hi)) if *hi + 1 == j => *hi = j,
                _ => runs.push((j, j)),
            }
        }
        runs
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .runs()
            .into_iter()
            .map(|(lo, hi)| {
                if lo == hi {
                    lo.to_string()
                } else {
                    format!("{lo}-{hi}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSet[0,{}]{{{}}}", self.max_weight, self)
    }
}

impl Serialize for WeightSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(n: usize, items: &[usize]) -> WeightSet {
        WeightSet::from_iter(n, items.iter().copied()).unwrap()
    }

    #[test]
    fn two_tail_sets() {
        assert_eq!(WeightSet::two_tails(6, 3).unwrap(), ws(6, &[0, 1, 2, 4, 5, 6]));
        assert!(WeightSet::two_tails(9, 0).unwrap().is_empty());
        assert_eq!(WeightSet::two_tails(4, 2).unwrap(), ws(4, &[0, 1, 3, 4]));
        assert!(WeightSet::two_tails(4, 5).is_err());
    }

    #[test]
    fn l_step_examples() {
        let e = ws(6, &[1, 3, 5]);
        let once = e.l_step(2).unwrap();
        assert_eq!(once, ws(6, &[0, 1, 3, 5, 6]));
        assert_eq!(once.l_step(2).unwrap(), WeightSet::full(6));
        assert_eq!(e.l_step(3).unwrap(), e);
        assert!(e.l_step(7).is_err());
    }

    #[test]
    fn l_bar_examples() {
        let e = ws(6, &[1, 3, 5]);
        assert_eq!(e.l_bar(2).unwrap(), WeightSet::full(6));
        assert_eq!(e.l_bar(6).unwrap(), e);
        assert_eq!(e.l_bar(0).unwrap(), WeightSet::full(6));
        assert_eq!(e.stabilization_index(2).unwrap(), 2);
        assert_eq!(e.stabilization_index(3).unwrap(), 0);
        let evens = WeightSet::residue_class(12, 2, 0).unwrap();
        assert_eq!(evens.l_bar(5).unwrap(), WeightSet::full(12));
        assert_eq!(
            evens.stabilization_index(5).unwrap(),
            evens.l_iterates(5).unwrap().len() - 1
        );
    }

    #[test]
    fn empty_set_is_closed_at_every_degree() {
        for d in 0..=5 {
            let e = WeightSet::empty(5);
            assert!(e.l_step(d).unwrap().is_empty());
            assert!(e.l_bar(d).unwrap().is_empty());
        }
    }

    #[test]
    fn admitting_examples() {
        let e = ws(6, &[1, 3, 5]);
        // i = 2 is a witness, but i = 0 already is: |E| = 3 <= 3
        assert!(e.is_admitting_at(3, 2).unwrap());
        assert_eq!(e.admitting(3).unwrap().i, Some(0));
        assert!(!e.admitting(2).unwrap().witnessed());
        for n in 1..=8 {
            for d in 0..=n {
                for i in 0..=d.min(n / 2) {
                    let t = WeightSet::two_tails(n, i).unwrap();
                    assert!(t.is_admitting_at(d, i).unwrap());
                    // the scan reports the least witness, which may sit below i
                    let least = t.admitting(d).unwrap().i.unwrap();
                    assert!(least <= i, "N={n} d={d} i={i}");
                    assert!(t.is_admitting_at(d, least).unwrap());
                }
            }
        }
    }

    #[test]
    fn wide_sets_cross_word_boundaries() {
        let mut e = WeightSet::empty(200);
        e.insert_range(3, 150);
        assert_eq!(e.len(), 148);
        assert_eq!(e.min(), Some(3));
        assert_eq!(e.max(), Some(150));
        assert_eq!(e.select(100), Some(103));
        assert_eq!(e.select(148), None);
        assert_eq!(e.complement().len(), 201 - 148);
    }

    #[test]
    fn text_forms() {
        let e = WeightSet::parse(6, "0-1,3,5-6").unwrap();
        assert_eq!(e, ws(6, &[0, 1, 3, 5, 6]));
        assert_eq!(e.to_string(), "0-1,3,5-6");
        assert_eq!(WeightSet::parse(6, "t:3").unwrap().to_string(), "0-2,4-6");
        assert_eq!(WeightSet::parse(6, "parity:1").unwrap().to_string(), "1,3,5");
        assert_eq!(WeightSet::parse(7, "mod:3:1").unwrap().to_string(), "1,4,7");
        assert!(WeightSet::parse(6, "{}").unwrap().is_empty());
        assert!(WeightSet::parse(6, "7").is_err());
        assert!(WeightSet::parse(6, "4-2").is_err());
        assert!(WeightSet::parse(6, "a").is_err());
    }
}
