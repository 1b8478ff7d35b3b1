//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are residue tuples. The canonical linear index ("rank") is
//! little-endian mixed radix: the first cyclic factor varies fastest, so
//! `rank(a) = a_0 + n_0 * (a_1 + n_1 * (a_2 + ...))`. Storage, transforms and
//! the CLI all share this convention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of points of any dense group (2^24).
pub const DEFAULT_SIZE_CAP: usize = 1 << 24;

/// A finite abelian group `Z/n_0 x Z/n_1 x ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    cyclic_orders: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
}

impl GroupSpec {
    /// Validates `orders` against the default size cap.
    pub fn new(orders: &[i64]) -> Result<Self> {
        Self::with_cap(orders, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(orders: &[i64], cap: usize) -> Result<Self> {
        let mut cyclic_orders = Vec::with_capacity(orders.len());
        for (position, &value) in orders.iter().enumerate() {
            if value < 1 {
                return Err(Error::NonPositiveOrder { position, value });
            }
            cyclic_orders.push(value as usize);
        }
        let mut requested: u128 = 1;
        for &n in &cyclic_orders {
            requested = requested.saturating_mul(n as u128);
        }
        if requested > cap as u128 {
            return Err(Error::SizeCapExceeded { requested, cap });
        }
        let mut strides = Vec::with_capacity(cyclic_orders.len());
        let mut acc = 1usize;
        for &n in &cyclic_orders {
            strides.push(acc);
            acc *= n;
        }
        Ok(GroupSpec {
            cyclic_orders,
            strides,
            order: acc,
        })
    }

    /// The trivial group with no factors.
    pub fn trivial() -> Self {
        GroupSpec {
            cyclic_orders: Vec::new(),
            strides: Vec::new(),
            order: 1,
        }
    }

    pub fn cyclic_orders(&self) -> &[usize] {
        &self.cyclic_orders
    }

    /// Number of cyclic factors.
    pub fn rank_len(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Distance in rank space between consecutive values of coordinate `j`.
    pub fn stride(&self, j: usize) -> usize {
        self.strides[j]
    }

    /// Builds a validated element from raw residues. Residues must already be
    /// reduced; nothing is silently wrapped.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.cyclic_orders.len() {
            return Err(Error::shape(
                format!("{} residues", self.cyclic_orders.len()),
                format!("{} residues", residues.len()),
            ));
        }
        let mut out = Vec::with_capacity(residues.len());
        for (position, (&value, &modulus)) in residues.iter().zip(&self.cyclic_orders).enumerate() {
            if value < 0 || value as u64 >= modulus as u64 {
                return Err(Error::UnreducedResidue {
                    position,
                    value,
                    modulus,
                });
            }
            out.push(value as usize);
        }
        Ok(GroupElement(out))
    }

    /// Builds an element by reducing arbitrary integers modulo each factor.
    pub fn element_reduced(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.cyclic_orders.len() {
            return Err(Error::shape(
                format!("{} residues", self.cyclic_orders.len()),
                format!("{} residues", residues.len()),
            ));
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.cyclic_orders)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as usize)
                .collect(),
        ))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.cyclic_orders.len()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.cyclic_orders)
                .map(|((&x, &y), &n)| add_mod(x, y, n))
                .collect(),
        ))
    }

    pub fn negate(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.cyclic_orders)
                .map(|(&x, &n)| neg_mod(x, n))
                .collect(),
        ))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.negate(b)?;
        self.add(a, &nb)
    }

    pub fn rank(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(self.rank_unchecked(&a.0))
    }

    pub fn unrank(&self, k: usize) -> Result<GroupElement> {
        if k >= self.order {
            return Err(Error::IndexOutOfRange {
                index: k,
                order: self.order,
            });
        }
        let mut out = vec![0; self.cyclic_orders.len()];
        self.unrank_into(k, &mut out);
        Ok(GroupElement(out))
    }

    /// Iterates over all elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |k| {
            let mut out = vec![0; self.cyclic_orders.len()];
            self.unrank_into(k, &mut out);
            GroupElement(out)
        })
    }

    /// Rank of `a + b` computed directly from ranks.
    pub fn add_ranks(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (j, &n) in self.cyclic_orders.iter().enumerate() {
            let s = self.strides[j];
            let x = (a / s) % n;
            let y = (b / s) % n;
            out += add_mod(x, y, n) * s;
        }
        out
    }

    /// Rank of `a - b` computed directly from ranks.
    pub fn sub_ranks(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (j, &n) in self.cyclic_orders.iter().enumerate() {
            let s = self.strides[j];
            let x = (a / s) % n;
            let y = (b / s) % n;
            out += add_mod(x, neg_mod(y, n), n) * s;
        }
        out
    }

    pub(crate) fn rank_unchecked(&self, residues: &[usize]) -> usize {
        residues
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| r * s)
            .sum()
    }

    pub(crate) fn unrank_into(&self, mut k: usize, out: &mut [usize]) {
        for (slot, &n) in out.iter_mut().zip(&self.cyclic_orders) {
            *slot = k % n;
            k /= n;
        }
    }

    pub(crate) fn check(&self, a: &GroupElement) -> Result<()> {
        if a.0.len() != self.cyclic_orders.len() {
            return Err(Error::shape(
                format!("element of {}", self),
                format!("tuple of length {}", a.0.len()),
            ));
        }
        for (position, (&r, &n)) in a.0.iter().zip(&self.cyclic_orders).enumerate() {
            if r >= n {
                return Err(Error::UnreducedResidue {
                    position,
                    value: r as i64,
                    modulus: n,
                });
            }
        }
        Ok(())
    }
}

#[inline]
fn add_mod(x: usize, y: usize, n: usize) -> usize {
    let s = x + y;
    if s >= n {
        s - n
    } else {
        s
    }
}

#[inline]
fn neg_mod(x: usize, n: usize) -> usize {
    if x == 0 {
        0
    } else {
        n - x
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({:?})", self.cyclic_orders)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.cyclic_orders)
    }
}

/// JSON form `{"cyclic_orders": [2,3,4]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpecJson {
    pub cyclic_orders: Vec<i64>,
}

impl GroupSpecJson {
    pub fn build(&self, cap: usize) -> Result<GroupSpec> {
        GroupSpec::with_cap(&self.cyclic_orders, cap)
    }
}

impl From<&GroupSpec> for GroupSpecJson {
    fn from(spec: &GroupSpec) -> Self {
        GroupSpecJson {
            cyclic_orders: spec.cyclic_orders.iter().map(|&n| n as i64).collect(),
        }
    }
}

/// A residue tuple. Serialized as a plain JSON array of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<usize>);

impl GroupElement {
    pub fn residues(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
