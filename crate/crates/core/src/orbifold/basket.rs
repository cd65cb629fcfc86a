use std::fmt;

use num_traits::Zero;

use super::singularity::SingularityType;
use crate::error::{Error, Result};
use crate::Rational;

pub const MIN_INDEX: u32 = 3;
pub const MAX_INDEX: u32 = 19;

pub fn check_index(f: u32) -> Result<()> {
    if (MIN_INDEX..=MAX_INDEX).contains(&f) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(f))
    }
}

/// A multiset of germs at a common index `f`, kept sorted by `(r, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basket {
    f: u32,
    items: Vec<SingularityType>,
}

impl Basket {
    pub fn empty(f: u32) -> Self {
        Basket {
            f,
            items: Vec::new(),
        }
    }

    pub fn new(f: u32, mut items: Vec<SingularityType>) -> Result<Self> {
        if let Some(bad) = items.iter().find(|s| s.f() != f) {
            return Err(Error::InvalidSingularity {
                r: bad.r().into(),
                a: bad.a().into(),
                reason: format!("germ built for index {} in a basket of index {f}", bad.f()),
            });
        }
        items.sort();
        Ok(Basket { f, items })
    }

    /// Builds from `(r, a)` pairs, canonicalizing each germ.
    pub fn from_pairs(f: u32, pairs: &[(i64, i64)]) -> Result<Self> {
        let items = pairs
            .iter()
            .map(|&(r, a)| SingularityType::new(r, a, f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(f, items)
    }

    /// Parses `"r,a;r,a;..."`. Whitespace is ignored and the empty string is
    /// the empty basket.
    pub fn parse(f: u32, input: &str) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(Self::empty(f));
        }
        let syntax = |reason: String| Error::BasketSyntax {
            input: input.to_string(),
            reason,
        };
        let mut pairs = Vec::new();
        for part in compact.split(';') {
            let (r, a) = part
                .split_once(',')
                .ok_or_else(|| syntax(format!("expected \"r,a\", found {part:?}")))?;
            let r: i64 = r
                .parse()
                .map_err(|_| syntax(format!("bad local index {r:?}")))?;
            let a: i64 = a
                .parse()
                .map_err(|_| syntax(format!("bad germ parameter {a:?}")))?;
            pairs.push((r, a));
        }
        Self::from_pairs(f, &pairs)
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn items(&self) -> &[SingularityType] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.items.iter().map(|s| (s.r(), s.a())).collect()
    }

    /// `Σ (r - 1/r)` over the basket.
    pub fn kawamata_sum(&self) -> Rational {
        self.items
            .iter()
            .fold(Rational::zero(), |acc, s| acc + s.kawamata_weight())
    }

    /// Kawamata's condition `Σ (r - 1/r) < 24`.
    pub fn satisfies_kawamata(&self) -> bool {
        self.kawamata_sum() < Rational::from_integer(24.into())
    }

    /// Distinct germs with their multiplicities, in basket order.
    pub fn grouped(&self) -> Vec<(SingularityType, usize)> {
        let mut out: Vec<(SingularityType, usize)> = Vec::new();
        for s in &self.items {
            match out.last_mut() {
                Some((t, n)) if t == s => *n += 1,
                _ => out.push((*s, 1)),
            }
        }
        out
    }
}

/// The basket grammar, e.g. `2,1;2,1;5,1`.
impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{},{}", s.r(), s.a())?;
        }
        Ok(())
    }
}
