//! Compositions, the Arndt/Carlitz predicates and a brute-force enumerator.
//!
//! The enumerator is the ground truth every generating-function result is
//! checked against, so it stays deliberately naive: walk all `2^(n-1)`
//! compositions and filter.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Environment variable that overrides [`BruteForceLimit::DEFAULT_CAP`].
pub const CAP_ENV_VAR: &str = "ARNDT_CARLITZ_BRUTE_CAP";

/// An ordered sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    /// Builds a composition, rejecting zero parts.
    pub fn new(parts: Vec<u32>) -> Option<Self> {
        if parts.iter().all(|&p| p >= 1) {
            Some(Self(parts))
        } else {
            None
        }
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The integer being composed.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn last_part(&self) -> Option<u32> {
        self.0.last().copied()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = String;

    /// Parses `"3+1+2+1"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split('+')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| format!("bad part {p:?}: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(parts).ok_or_else(|| format!("zero part in {s:?}"))
    }
}

/// `σ_{2i-1} > σ_{2i}` for every complete pair; a trailing unpaired part is free.
pub fn is_arndt_parts(parts: &[u32]) -> bool {
    parts.chunks_exact(2).all(|pair| pair[0] > pair[1])
}

/// Neighbouring parts differ.
pub fn is_carlitz_parts(parts: &[u32]) -> bool {
    parts.windows(2).all(|w| w[0] != w[1])
}

pub fn is_arndt_carlitz_parts(parts: &[u32]) -> bool {
    is_arndt_parts(parts) && is_carlitz_parts(parts)
}

pub fn is_arndt(c: &Composition) -> bool {
    is_arndt_parts(c.parts())
}

pub fn is_carlitz(c: &Composition) -> bool {
    is_carlitz_parts(c.parts())
}

/// Both restrictions at once: `σ₁ > σ₂ ≠ σ₃ > σ₄ ≠ σ₅ …`.
pub fn is_arndt_carlitz(c: &Composition) -> bool {
    is_arndt_carlitz_parts(c.parts())
}

/// Filter on the number of parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    All,
}

impl Parity {
    /// Whether a composition with `len` parts passes the filter. The empty
    /// composition belongs to neither class.
    pub fn admits(self, len: usize) -> bool {
        match self {
            _ if len == 0 => false,
            Parity::Even => len.is_multiple_of(2),
            Parity::Odd => len % 2 == 1,
            Parity::All => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::All => "all",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            "all" => Ok(Parity::All),
            other => Err(format!("unknown parity {other:?}")),
        }
    }
}

/// Largest `n` the brute-force routines accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimit {
    pub cap: usize,
}

impl BruteForceLimit {
    pub const DEFAULT_CAP: usize = 30;

    pub fn new(cap: usize) -> Self {
        Self { cap }
    }

    /// Reads the cap from [`CAP_ENV_VAR`], falling back to the default when
    /// the variable is unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(CAP_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Self::new)
            .unwrap_or_default()
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

impl Default for BruteForceLimit {
    fn default() -> Self {
        Self::new(Self::DEFAULT_CAP)
    }
}

/// Lexicographic stream over all compositions of `n`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    fn new(n: u32) -> Self {
        Self {
            current: Some(vec![1; n as usize]),
        }
    }
}

/// Replaces `parts` by its lexicographic successor among compositions of the
/// same total. Returns `false` once `parts` is the single part `(n)` or empty.
fn advance(parts: &mut Vec<u32>) -> bool {
    if parts.len() < 2 {
        return false;
    }
    // (…, p, l) -> (…, p + 1, 1, …, 1) with l - 1 trailing ones
    let last = parts.pop().unwrap();
    *parts.last_mut().unwrap() += 1;
    parts.extend(std::iter::repeat_n(1, last as usize - 1));
    true
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.current.as_mut()?;
        let out = Composition(current.clone());
        if !advance(current) {
            self.current = None;
        }
        Some(out)
    }
}

/// All compositions of `n` in lexicographic order: `2^(n-1)` of them for
/// `n ≥ 1`, the empty composition alone for `n = 0`.
pub fn enumerate_compositions(n: usize, limit: BruteForceLimit) -> Result<Compositions> {
    limit.check(n)?;
    Ok(Compositions::new(n as u32))
}

/// Calls `f` on every composition of `n` whose first part is `first`,
/// reusing one buffer.
fn for_each_with_first(n: u32, first: u32, mut f: impl FnMut(&[u32])) {
    debug_assert!(first >= 1 && first <= n);
    let mut parts = vec![first];
    parts.extend(std::iter::repeat_n(1, (n - first) as usize));
    loop {
        f(&parts);
        if !advance(&mut parts) || parts[0] != first {
            break;
        }
    }
}

/// Arndt-Carlitz compositions of `n` with matching part-count parity, in
/// lexicographic order.
pub fn list_arndt_carlitz(
    n: usize,
    parity: Parity,
    limit: BruteForceLimit,
) -> Result<Vec<Composition>> {
    Ok(enumerate_compositions(n, limit)?
        .filter(|c| parity.admits(c.len()) && is_arndt_carlitz(c))
        .collect())
}

/// Counts split by part-count parity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ParityCounts {
    pub even: u64,
    pub odd: u64,
    pub total: u64,
}

impl ParityCounts {
    pub fn new(even: u64, odd: u64) -> Self {
        Self {
            even,
            odd,
            total: even + odd,
        }
    }

    pub fn get(&self, parity: Parity) -> u64 {
        match parity {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
            Parity::All => self.total,
        }
    }
}

/// Brute-force counts of Arndt-Carlitz compositions of `n`. The work is
/// split by first part across the rayon pool; the sum is order independent.
pub fn count_brute_force(n: usize, limit: BruteForceLimit) -> Result<ParityCounts> {
    limit.check(n)?;
    if n == 0 {
        return Ok(ParityCounts::default());
    }
    let n = n as u32;
    let (even, odd) = (1..=n)
        .into_par_iter()
        .map(|first| {
            let (mut even, mut odd) = (0u64, 0u64);
            for_each_with_first(n, first, |parts| {
                if is_arndt_carlitz_parts(parts) {
                    if parts.len() % 2 == 0 {
                        even += 1;
                    } else {
                        odd += 1;
                    }
                }
            });
            (even, odd)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(ParityCounts::new(even, odd))
}
