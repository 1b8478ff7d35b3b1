//! Characters of finite abelian groups and unbounded characters of the integers.
//!
//! A character of `Z/n_0 x ... x Z/n_{r-1}` is indexed by a frequency tuple
//! `t` and evaluates as `exp(2 pi i * sum_j t_j a_j / n_j)`. The dual group is
//! therefore a copy of the group itself, ranked with the same convention.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::roots::RootTable;

/// Default cap on `|k|` for unbounded-character evaluation.
pub const DEFAULT_EXPONENT_CAP: u64 = 1_000_000;

/// Tolerance on `||z| - 1|` below which a Laurent character counts as bounded.
pub const BOUNDED_TOLERANCE: f64 = 1e-12;

/// One root-of-unity table per cyclic factor of a group.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorRoots {
    tables: Vec<RootTable>,
}

impl FactorRoots {
    pub fn new(spec: &GroupSpec) -> Self {
        FactorRoots {
            tables: spec.cyclic_orders().iter().map(|&n| RootTable::new(n)).collect(),
        }
    }

    /// `exp(2 pi i * sum_j t_j a_j / n_j)` from residue slices.
    #[inline]
    pub(crate) fn phase(&self, freqs: &[usize], residues: &[usize]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for ((table, &t), &a) in self.tables.iter().zip(freqs).zip(residues) {
            if t != 0 && a != 0 {
                acc *= table.get(t * a);
            }
        }
        acc
    }
}

/// A bounded character of a finite abelian group.
#[derive(Debug, Clone)]
pub struct Character {
    spec: GroupSpec,
    frequencies: Vec<usize>,
    roots: Arc<FactorRoots>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.frequencies == other.frequencies
    }
}

impl Character {
    pub fn new(spec: &GroupSpec, frequencies: &[i64]) -> Result<Self> {
        let t = spec.element(frequencies)?;
        Ok(Self::from_parts(spec.clone(), t.residues().to_vec(), Arc::new(FactorRoots::new(spec))))
    }

    pub fn trivial(spec: &GroupSpec) -> Self {
        Self::from_parts(
            spec.clone(),
            vec![0; spec.rank_len()],
            Arc::new(FactorRoots::new(spec)),
        )
    }

    fn from_parts(spec: GroupSpec, frequencies: Vec<usize>, roots: Arc<FactorRoots>) -> Self {
        Character {
            spec,
            frequencies,
            roots,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn frequencies(&self) -> &[usize] {
        &self.frequencies
    }

    /// Position of this character in the dual group's rank order.
    pub fn rank(&self) -> usize {
        self.spec.rank_unchecked(&self.frequencies)
    }

    pub fn is_trivial(&self) -> bool {
        self.frequencies.iter().all(|&t| t == 0)
    }

    pub fn eval(&self, a: &GroupElement) -> Result<Complex64> {
        self.spec.check(a)?;
        Ok(self.roots.phase(&self.frequencies, a.residues()))
    }

    /// Pointwise product; adds frequencies coordinate-wise.
    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.spec != other.spec {
            return Err(Error::shape(
                format!("character of {}", self.spec),
                format!("character of {}", other.spec),
            ));
        }
        let t = self
            .spec
            .add(&self.as_element(), &other.as_element())?;
        Ok(Self::from_parts(self.spec.clone(), t.residues().to_vec(), self.roots.clone()))
    }

    /// Complex conjugate character, which is also the inverse in the dual group.
    pub fn conj(&self) -> Character {
        let t = self.spec.negate(&self.as_element()).expect("frequencies are valid");
        Self::from_parts(self.spec.clone(), t.residues().to_vec(), self.roots.clone())
    }

    fn as_element(&self) -> GroupElement {
        self.spec
            .element(&self.frequencies.iter().map(|&t| t as i64).collect::<Vec<_>>())
            .expect("frequencies are reduced")
    }
}

/// The dual of a finite group: all of its characters, in rank order of their
/// frequency tuples. Characters handed out share a single set of root tables.
#[derive(Debug, Clone)]
pub struct DualGroup {
    spec: GroupSpec,
    roots: Arc<FactorRoots>,
}

impl DualGroup {
    pub fn new(spec: &GroupSpec) -> Self {
        DualGroup {
            spec: spec.clone(),
            roots: Arc::new(FactorRoots::new(spec)),
        }
    }

    pub fn len(&self) -> usize {
        self.spec.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn character(&self, rank: usize) -> Result<Character> {
        let t = self.spec.unrank(rank)?;
        Ok(Character::from_parts(
            self.spec.clone(),
            t.residues().to_vec(),
            self.roots.clone(),
        ))
    }

    pub fn iter(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.spec.order()).map(move |k| self.character(k).expect("rank in range"))
    }

    pub fn roots(&self) -> &FactorRoots {
        &self.roots
    }
}

/// Enumerates the dual group. Fails if the dual would exceed `cap` points.
pub fn dual_group(spec: &GroupSpec, cap: usize) -> Result<DualGroup> {
    if spec.order() > cap {
        return Err(Error::SizeCapExceeded {
            requested: spec.order() as u128,
            cap,
        });
    }
    Ok(DualGroup::new(spec))
}

/// JSON form `{"frequencies": [1, 2]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub frequencies: Vec<i64>,
}

impl From<&Character> for CharacterJson {
    fn from(chi: &Character) -> Self {
        CharacterJson {
            frequencies: chi.frequencies.iter().map(|&t| t as i64).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundedness {
    Bounded,
    Unbounded,
}

/// The homomorphism `k -> z^k` from the integers into the nonzero complex
/// numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentCharacter {
    base: Complex64,
}

impl LaurentCharacter {
    pub fn new(base: Complex64) -> Result<Self> {
        if !(base.re.is_finite() && base.im.is_finite()) || base.norm() == 0.0 {
            return Err(Error::ZeroBase);
        }
        Ok(LaurentCharacter { base })
    }

    pub fn base(&self) -> Complex64 {
        self.base
    }

    pub fn eval(&self, k: i64) -> Result<Complex64> {
        self.eval_with_cap(k, DEFAULT_EXPONENT_CAP)
    }

    /// `z^k` via `|z|^k` and `k * arg z`.
    ///
    /// A magnitude that overflows to infinity or underflows to zero is
    /// reported as [`Error::OverflowToInfinity`]: the true value is nonzero and
    /// finite, so either way it is not representable.
    pub fn eval_with_cap(&self, k: i64, cap: u64) -> Result<Complex64> {
        if k.unsigned_abs() > cap {
            return Err(Error::ExponentCapExceeded { exponent: k, cap });
        }
        if k == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let r = self.base.norm();
        let modulus = r.powf(k as f64);
        if !modulus.is_finite() || modulus == 0.0 {
            return Err(Error::OverflowToInfinity {
                modulus: r,
                exponent: k,
            });
        }
        if self.base.im == 0.0 {
            // real base: keep exact signs and integer powers
            let sign = if self.base.re < 0.0 && k % 2 != 0 { -1.0 } else { 1.0 };
            return Ok(Complex64::new(sign * modulus, 0.0));
        }
        let angle = self.base.arg() * k as f64;
        Ok(Complex64::from_polar(modulus, angle))
    }

    pub fn classify(&self) -> Boundedness {
        if (self.base.norm() - 1.0).abs() <= BOUNDED_TOLERANCE {
            Boundedness::Bounded
        } else {
            Boundedness::Unbounded
        }
    }
}

/// JSON form `{"re": .., "im": ..}` for the base `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub re: f64,
    pub im: f64,
}

impl LaurentJson {
    pub fn build(&self) -> Result<LaurentCharacter> {
        LaurentCharacter::new(Complex64::new(self.re, self.im))
    }
}
