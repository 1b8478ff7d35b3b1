//! The compact group of sequences with entries modulo `n`, handled through
//! its finite truncations `(Z/n)^l`.
//!
//! Points are only ever seen through finite prefixes, and functions are
//! cylinder functions: tables over the depth-`l` truncation. The first digit
//! of a prefix is the fastest-varying coordinate in rank order, so lifting a
//! depth-`l` table to depth `l2` is `table[r mod n^l]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dual::{dual_group, DualGroup};
use crate::error::{Error, Result};
use crate::function::{GroupFunction, SpectrumFunction};
use crate::group::{GroupSpec, DEFAULT_SIZE_CAP};
use crate::haar::{integrate, HaarWeight};
use crate::transform::fourier_fast;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequenceGroupSpec {
    base: usize,
}

impl SequenceGroupSpec {
    pub fn new(base: i64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        Ok(SequenceGroupSpec {
            base: base as usize,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// The finite quotient `(Z/n)^l`.
    pub fn truncation_group(&self, depth: usize) -> Result<GroupSpec> {
        self.truncation_group_with_cap(depth, DEFAULT_SIZE_CAP)
    }

    pub fn truncation_group_with_cap(&self, depth: usize, cap: usize) -> Result<GroupSpec> {
        // check the size before allocating a huge order list
        let mut requested: u128 = 1;
        for _ in 0..depth {
            requested = requested.saturating_mul(self.base as u128);
            if requested > cap as u128 {
                return Err(Error::SizeCapExceeded { requested, cap });
            }
        }
        GroupSpec::with_cap(&vec![self.base as i64; depth], cap)
    }

    /// The `n^l` characters of the depth-`l` truncation. Each one extends to a
    /// character of the whole sequence group that ignores digits past `l`.
    pub fn depth_characters(&self, depth: usize) -> Result<DualGroup> {
        self.depth_characters_with_cap(depth, DEFAULT_SIZE_CAP)
    }

    pub fn depth_characters_with_cap(&self, depth: usize, cap: usize) -> Result<DualGroup> {
        dual_group(&self.truncation_group_with_cap(depth, cap)?, cap)
    }
}

/// A finite initial segment of a sequence; names the standard neighborhood of
/// all sequences that start with these digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Prefix {
    spec: SequenceGroupSpec,
    digits: Vec<usize>,
}

impl Prefix {
    pub fn new(spec: SequenceGroupSpec, digits: &[i64]) -> Result<Self> {
        let n = spec.base;
        let mut out = Vec::with_capacity(digits.len());
        for (position, &d) in digits.iter().enumerate() {
            if d < 0 || d as u64 >= n as u64 {
                return Err(Error::UnreducedResidue {
                    position,
                    value: d,
                    modulus: n,
                });
            }
            out.push(d as usize);
        }
        Ok(Prefix { spec, digits: out })
    }

    /// The prefix whose digits are the residues of `rank` in `(Z/n)^depth`.
    pub fn from_rank(spec: SequenceGroupSpec, depth: usize, mut rank: usize) -> Self {
        let digits = (0..depth)
            .map(|_| {
                let d = rank % spec.base;
                rank /= spec.base;
                d
            })
            .collect();
        Prefix { spec, digits }
    }

    pub fn spec(&self) -> SequenceGroupSpec {
        self.spec
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    /// The first `depth` digits.
    pub fn truncate(&self, depth: usize) -> Result<Prefix> {
        if depth > self.depth() {
            return Err(Error::DepthTooSmall {
                depth: self.depth(),
                required: depth,
            });
        }
        Ok(Prefix {
            spec: self.spec,
            digits: self.digits[..depth].to_vec(),
        })
    }

    /// Rank of the first `depth` digits in `(Z/n)^depth`.
    pub fn rank_at(&self, depth: usize) -> Result<usize> {
        let t = self.truncate(depth)?;
        Ok(t.digits.iter().rev().fold(0, |acc, &d| acc * self.spec.base + d))
    }
}

/// True iff `y` lies in the depth-`l` standard neighborhood of `x`, i.e. the
/// first `l` digits agree.
pub fn in_neighborhood(x: &Prefix, y: &Prefix, depth: usize) -> Result<bool> {
    if x.spec != y.spec {
        return Err(Error::shape(
            format!("prefix in base {}", x.spec.base),
            format!("prefix in base {}", y.spec.base),
        ));
    }
    for p in [x, y] {
        if p.depth() < depth {
            return Err(Error::DepthTooSmall {
                depth: p.depth(),
                required: depth,
            });
        }
    }
    Ok(x.digits[..depth] == y.digits[..depth])
}

/// A function on the sequence group that depends only on the first `depth`
/// digits.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderFunction {
    spec: SequenceGroupSpec,
    depth: usize,
    table: GroupFunction,
}

impl CylinderFunction {
    pub fn new(spec: SequenceGroupSpec, depth: usize, values: Vec<Complex64>) -> Result<Self> {
        Self::with_cap(spec, depth, values, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(spec: SequenceGroupSpec, depth: usize, values: Vec<Complex64>, cap: usize) -> Result<Self> {
        let group = spec.truncation_group_with_cap(depth, cap)?;
        Ok(CylinderFunction {
            spec,
            depth,
            table: GroupFunction::new(&group, values)?,
        })
    }

    pub fn from_table(spec: SequenceGroupSpec, depth: usize, table: GroupFunction) -> Result<Self> {
        let expected = vec![spec.base; depth];
        if table.spec().cyclic_orders() != expected.as_slice() {
            return Err(Error::shape(
                format!("table on {:?}", expected),
                format!("table on {}", table.spec()),
            ));
        }
        Ok(CylinderFunction { spec, depth, table })
    }

    pub fn spec(&self) -> SequenceGroupSpec {
        self.spec
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn table(&self) -> &GroupFunction {
        &self.table
    }

    /// Value at any sequence, given through a prefix of at least `depth` digits.
    pub fn eval(&self, x: &Prefix) -> Result<Complex64> {
        if x.spec != self.spec {
            return Err(Error::shape(
                format!("prefix in base {}", self.spec.base),
                format!("prefix in base {}", x.spec.base),
            ));
        }
        Ok(self.table.at(x.rank_at(self.depth)?))
    }

    pub fn refine(&self, depth: usize) -> Result<CylinderFunction> {
        self.refine_with_cap(depth, DEFAULT_SIZE_CAP)
    }

    /// Lift to a deeper truncation; the identity when `depth == self.depth()`.
    pub fn refine_with_cap(&self, depth: usize, cap: usize) -> Result<CylinderFunction> {
        if depth < self.depth {
            return Err(Error::DepthTooSmall {
                depth,
                required: self.depth,
            });
        }
        if depth == self.depth {
            return Ok(self.clone());
        }
        let group = self.spec.truncation_group_with_cap(depth, cap)?;
        let m = self.table.spec().order();
        let src = self.table.values();
        let values = (0..group.order()).map(|r| src[r % m]).collect();
        Ok(CylinderFunction {
            spec: self.spec,
            depth,
            table: GroupFunction::from_raw(group, values),
        })
    }

    /// Mass-one Haar integral, `n^-l * sum of the table`.
    pub fn integrate(&self) -> Complex64 {
        integrate(&self.weight(), &self.table).expect("table lives on its own truncation")
    }

    /// Transform of the table with `h = n^-l`, indexed by depth-`l` characters.
    pub fn transform(&self) -> SpectrumFunction {
        fourier_fast(&self.weight(), &self.table).expect("table lives on its own truncation")
    }

    fn weight(&self) -> HaarWeight {
        HaarWeight::normalized(self.table.spec())
    }
}

/// JSON form `{"base": n, "depth": l, "values": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderJson {
    pub base: i64,
    pub depth: usize,
    pub values: Vec<[f64; 2]>,
}

impl CylinderJson {
    pub fn build(&self, cap: usize) -> Result<CylinderFunction> {
        let spec = SequenceGroupSpec::new(self.base)?;
        let values = self.values.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        CylinderFunction::with_cap(spec, self.depth, values, cap)
    }
}
