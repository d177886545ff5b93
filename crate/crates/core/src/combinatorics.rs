//! Partitions, tableaux and the counting formulas built on them.
//!
//! Cells are addressed row-major, `(row, column)`, both zero-based. Tableau
//! lists come back sorted lexicographically by their row-reading word, which
//! keeps every enumeration deterministic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A partition of `n`: positive parts in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyInput("partition with no parts"));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("partition {parts:?} is not non-increasing")));
        }
        Ok(Self { parts })
    }

    /// The non-increasing rearrangement of the non-zero entries.
    pub fn from_unsorted(values: &[usize]) -> Result<Self> {
        let mut parts: Vec<usize> = values.iter().copied().filter(|&v| v > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The weight `n`.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Hook lengths in row-major cell order.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.n());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                // arm + leg + 1 with zero-based indices
                hooks.push(row - j + conj.parts[j] - i - 1);
            }
        }
        hooks
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let len = self.parts.len().max(other.parts.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Row-major list of cells.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A weak composition `(k_0, ..., k_{d-1})` of `n` into exactly `d` entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    entries: Vec<usize>,
}

impl Composition {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyInput("composition with no entries"));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.entries.iter().sum()
    }

    /// The partition obtained by sorting the entries.
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(&self.entries).expect("composition of a positive integer")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All weak compositions of `n` into `d` entries, reverse-lexicographic.
pub fn compositions(n: usize, d: usize) -> Vec<Composition> {
    fn rec(remaining: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(Composition { entries: prefix.clone() });
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            rec(remaining - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(n, d, &mut Vec::with_capacity(d), &mut out);
    }
    out
}

/// All partitions of `n` with at most `max_parts` parts, reverse-lexicographic.
pub fn enumerate_partitions(n: usize, max_parts: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::EmptyInput("partitions of zero"));
    }
    if max_parts == 0 {
        return Err(Error::EmptyInput("partitions with zero parts allowed"));
    }
    fn rec(remaining: usize, max_part: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    Ok(out)
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

/// `dim S^lambda = n! / prod(hooks)`, exact.
pub fn specht_dim_exact(lambda: &Partition) -> BigUint {
    let hooks = lambda
        .hook_lengths()
        .into_iter()
        .fold(BigUint::from(1u32), |acc, h| acc * BigUint::from(h));
    factorial(lambda.n()) / hooks
}

/// Dimension of the Specht module `S^lambda`; fails if it does not fit in `u64`.
pub fn specht_dim(lambda: &Partition) -> Result<u64> {
    u64::try_from(&specht_dim_exact(lambda)).map_err(|_| Error::Overflow("Specht dimension"))
}

/// `n! / (k_0! ... k_{d-1}!)`.
pub fn multinomial(counts: &[usize]) -> Result<u64> {
    let n: usize = counts.iter().sum();
    let denom = counts.iter().fold(BigUint::from(1u32), |acc, &k| acc * factorial(k));
    u64::try_from(&(factorial(n) / denom)).map_err(|_| Error::Overflow("multinomial coefficient"))
}

/// A bijective filling of a Young diagram with `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Builds a tableau from its rows; entries must be exactly `1..=n`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.n();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "tableau {rows:?} is not a bijection onto 1..={n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { shape, rows })
    }

    /// The tableau numbering the cells `1..=n` in row-reading order.
    pub fn row_reading(shape: &Partition) -> Self {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        Self { shape: shape.clone(), rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.rows[row][col]
    }

    /// Entries of column `j`, top to bottom.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.shape.parts()[0]).map(|j| self.column(j)).collect()
    }

    /// Entries increase along rows and down columns.
    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]));
        rows_ok && cols_ok
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows)
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<usize>]) -> fmt::Result {
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            write!(f, "/")?;
        }
        for (j, x) in row.iter().enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
    }
    Ok(())
}

/// All standard tableaux of shape `lambda`, sorted by row-reading word.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    fn rec(letter: usize, n: usize, shape: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if letter > n {
            out.push(rows.clone());
            return;
        }
        for i in 0..shape.len() {
            let len = rows[i].len();
            let fits = len < shape[i] && (i == 0 || rows[i - 1].len() > len);
            if fits {
                rows[i].push(letter);
                rec(letter + 1, n, shape, rows, out);
                rows[i].pop();
            }
        }
    }
    let mut raw = Vec::new();
    let mut rows = vec![Vec::new(); lambda.num_rows()];
    rec(1, lambda.n(), lambda.parts(), &mut rows, &mut raw);
    let mut out: Vec<Tableau> = raw
        .into_iter()
        .map(|rows| Tableau { shape: lambda.clone(), rows })
        .collect();
    out.sort_by_key(Tableau::reading_word);
    out
}

/// A filling of a Young diagram with values in `0..d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypedTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
    d: usize,
}

impl TypedTableau {
    pub fn new(rows: Vec<Vec<usize>>, d: usize) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        if let Some(&bad) = rows.iter().flatten().find(|&&v| v >= d) {
            return Err(Error::InvalidArgument(format!("tableau value {bad} is not below d = {d}")));
        }
        Ok(Self { shape, rows, d })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn value(&self, row: usize, col: usize) -> usize {
        self.rows[row][col]
    }

    /// The type: how many cells hold each value.
    pub fn content(&self) -> Composition {
        let mut counts = vec![0; self.d];
        for &v in self.rows.iter().flatten() {
            counts[v] += 1;
        }
        Composition { entries: counts }
    }

    /// Non-decreasing along rows, strictly increasing down columns.
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = (1..self.rows.len()).all(|i| {
            self.rows[i]
                .iter()
                .zip(&self.rows[i - 1])
                .all(|(below, above)| above < below)
        });
        rows_ok && cols_ok
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }
}

impl fmt::Display for TypedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows)
    }
}

/// All semistandard tableaux of shape `lambda` whose value `l` occurs
/// `content[l]` times, sorted by row-reading word.
///
/// `content` need not be sorted; the count only depends on its sorted
/// rearrangement.
pub fn semistandard_tableaux(lambda: &Partition, content: &[usize]) -> Vec<TypedTableau> {
    if content.iter().sum::<usize>() != lambda.n() {
        return Vec::new();
    }
    // Value l fills a horizontal strip nu / kappa of size content[l].
    fn strips(
        value: usize,
        content: &[usize],
        target: &[usize],
        kappa: &[usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if value == content.len() {
            if kappa == target {
                out.push(rows.clone());
            }
            return;
        }
        let mut nu = kappa.to_vec();
        fill_row(0, content[value], value, content, target, kappa, &mut nu, rows, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_row(
        i: usize,
        left: usize,
        value: usize,
        content: &[usize],
        target: &[usize],
        kappa: &[usize],
        nu: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == target.len() {
            if left == 0 {
                strips(value + 1, content, target, nu, rows, out);
            }
            return;
        }
        let upper = if i == 0 { target[0] } else { target[i].min(kappa[i - 1]) };
        let room = upper.saturating_sub(kappa[i]);
        for add in 0..=room.min(left) {
            nu[i] = kappa[i] + add;
            for _ in 0..add {
                rows[i].push(value);
            }
            fill_row(i + 1, left - add, value, content, target, kappa, nu, rows, out);
            for _ in 0..add {
                rows[i].pop();
            }
        }
        nu[i] = kappa[i];
    }

    let target = lambda.parts();
    let kappa = vec![0; target.len()];
    let mut rows = vec![Vec::new(); target.len()];
    let mut raw = Vec::new();
    strips(0, content, target, &kappa, &mut rows, &mut raw);
    let d = content.len();
    let mut out: Vec<TypedTableau> = raw
        .into_iter()
        .map(|rows| TypedTableau { shape: lambda.clone(), rows, d })
        .collect();
    out.sort_by_key(TypedTableau::reading_word);
    out
}

/// Kostka number: the number of semistandard `lambda`-tableaux of the given type.
pub fn kostka(lambda: &Partition, content: &[usize]) -> usize {
    semistandard_tableaux(lambda, content).len()
}

/// Number of length-`d` compositions whose sorted rearrangement is `mu`.
pub fn arr(mu: &Partition, d: usize) -> Result<u64> {
    if mu.num_rows() > d {
        return Ok(0);
    }
    let mut padded = mu.parts().to_vec();
    padded.resize(d, 0);
    // multiplicities of the distinct values
    let mut runs = Vec::new();
    let mut i = 0;
    while i < padded.len() {
        let j = padded[i..].iter().take_while(|&&v| v == padded[i]).count();
        runs.push(j);
        i += j;
    }
    multinomial(&runs)
}

/// Multiplicity `m_{lambda,d}` of `S^lambda` in the permutation representation
/// on `(C^d)^{(x) n}`: the sum of `arr(mu, d) * kostka(lambda, mu)` over
/// partitions `mu` of `n` with at most `d` parts.
pub fn multiplicity(lambda: &Partition, d: usize) -> Result<u64> {
    if d == 0 {
        return Ok(0);
    }
    let mut total: u64 = 0;
    for mu in enumerate_partitions(lambda.n(), d)? {
        let k = kostka(lambda, mu.parts()) as u64;
        if k == 0 {
            continue;
        }
        let term = arr(&mu, d)?.checked_mul(k).ok_or(Error::Overflow("multiplicity"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("multiplicity"))?;
    }
    Ok(total)
}

/// A permutation of `{1, ..., n}`, stored zero-based: `images[i]` is the image of letter `i + 1`, minus one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// From zero-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// From disjoint cycles written with one-based letters, e.g. `&[&[1, 3], &[2, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n || touched[a - 1] {
                    return Err(Error::InvalidArgument(format!("bad cycle {cycle:?} on {n} letters")));
                }
                touched[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// The transposition of one-based letters `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_cycles(n, &[&[a, b]])
    }

    /// The cycle `(1 2 ... n)`.
    pub fn long_cycle(n: usize) -> Self {
        Self { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the zero-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles of length at least two, one-based, each starting at its smallest letter.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "1");
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, a) in c.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                s.push_str(&format!("{a}"));
            }
            s.push(')');
        }
        write!(f, "{s}")
    }
}

/// All transpositions of `S_n`, lexicographic in `(a, b)`.
pub fn transpositions(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            out.push(Permutation::transposition(n, a, b).expect("valid letters"));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

/// Default bound on materialized stabilizer subgroups.
pub const DEFAULT_STABILIZER_CAP: usize = 1_000_000;

/// The row or column stabilizer of `t`: every permutation mapping each row
/// (column) of `t` onto itself. The identity comes first.
pub fn stabilizer(t: &Tableau, axis: Axis, cap: usize) -> Result<Vec<Permutation>> {
    let blocks: Vec<Vec<usize>> = match axis {
        Axis::Row => t.rows().to_vec(),
        Axis::Column => t.columns(),
    };
    let mut size: u128 = 1;
    for b in &blocks {
        for k in 2..=b.len() as u128 {
            size = size.saturating_mul(k);
        }
    }
    if size > cap as u128 {
        return Err(Error::ResourceLimit {
            what: "stabilizer subgroup",
            required: size,
            cap: cap as u128,
        });
    }
    let n = t.n();
    let mut group = vec![Permutation::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let mut letters: Vec<usize> = block.iter().map(|&a| a - 1).collect();
        letters.sort_unstable();
        let arrangements = permutations_of(&letters);
        let mut next = Vec::with_capacity(group.len() * arrangements.len());
        for g in &group {
            for arr in &arrangements {
                let mut images = g.images.clone();
                for (&from, &to) in letters.iter().zip(arr) {
                    images[from] = to;
                }
                next.push(Permutation { images });
            }
        }
        group = next;
    }
    Ok(group)
}

/// All orderings of `items` in lexicographic order (input sorted, so the first is the input).
pub(crate) fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    let mut current = items.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

/// Advances to the next lexicographic arrangement (multiset-aware); false at the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
