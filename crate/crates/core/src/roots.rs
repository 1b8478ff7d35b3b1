use num_complex::Complex64;
use std::f64::consts::TAU;

/// Table of the `n`-th roots of unity, `table[k] = exp(2 pi i k / n)`.
///
/// Quarter-turn points are exact and `table[n - k]` is the exact conjugate of
/// `table[k]`, so sums of table entries inherit the symmetries of the group.
#[derive(Debug, Clone, PartialEq)]
pub struct RootTable {
    values: Vec<Complex64>,
}

impl RootTable {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "root table order must be positive");
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        values[0] = Complex64::new(1.0, 0.0);
        for k in 1..=n / 2 {
            values[k] = unit_root(k, n);
            values[n - k] = values[k].conj();
        }
        RootTable { values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `exp(2 pi i k / n)` for any `k`, reduced modulo `n`.
    #[inline]
    pub fn get(&self, k: usize) -> Complex64 {
        self.values[k % self.values.len()]
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.values
    }
}

fn unit_root(k: usize, n: usize) -> Complex64 {
    // exact values on the axes
    if (4 * k).is_multiple_of(n) {
        return match (4 * k / n) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // reduce to a small argument by reflection
    let (s, c) = if 8 * k <= n {
        (TAU * k as f64 / n as f64).sin_cos()
    } else if 4 * k <= n {
        // cos(x) = sin(pi/2 - x)
        let m = n - 4 * k;
        let (s2, c2) = (TAU * m as f64 / (4 * n) as f64).sin_cos();
        (c2, s2)
    } else {
        // sin(x) = sin(pi - x), cos(x) = -cos(pi - x)
        let m = n - 2 * k;
        let (s2, c2) = (TAU * m as f64 / (2 * n) as f64).sin_cos();
        (s2, -c2)
    };
    Complex64::new(c, s)
}
