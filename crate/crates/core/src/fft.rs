//! Fast discrete Fourier transforms over products of cyclic groups.
//!
//! Each cyclic factor gets a [`CyclicPlan`]: a mixed-radix decimation-in-time
//! transform that splits off the smallest prime factor at each level. Prime
//! butterflies up to [`DIRECT_PRIME_LIMIT`] are evaluated directly; larger
//! primes are reduced to a power-of-two cyclic convolution (Bluestein's chirp
//! method). [`NdPlan`] runs the cyclic plans row by row over every axis.
//!
//! All twiddles come from a single root table of the plan's order, and the
//! schedule is fixed, so results are bit-identical across runs.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::group::GroupSpec;
use crate::roots::RootTable;

/// Largest prime butterfly evaluated by the direct `O(p^2)` sum.
pub const DIRECT_PRIME_LIMIT: usize = 61;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Prime factors of `n` in ascending order, with multiplicity.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug)]
struct Bluestein {
    /// `exp(-pi i j^2 / p)` for `j` in `0..p`.
    chirp: Vec<Complex64>,
    /// Forward transform of the conjugate chirp, wrapped to length `inner.len`.
    kernel: Vec<Complex64>,
    inner: CyclicPlan,
}

impl Bluestein {
    fn new(p: usize) -> Self {
        let table = RootTable::new(2 * p);
        let chirp: Vec<Complex64> = (0..p)
            .map(|j| table.get((j * j) % (2 * p)).conj())
            .collect();
        let m = (2 * p - 1).next_power_of_two();
        let inner = CyclicPlan::new(m);
        let mut b = vec![ZERO; m];
        b[0] = chirp[0].conj();
        for j in 1..p {
            b[j] = chirp[j].conj();
            b[m - j] = chirp[j].conj();
        }
        let mut kernel = vec![ZERO; m];
        inner.forward(&b, &mut kernel);
        Bluestein {
            chirp,
            kernel,
            inner,
        }
    }

    /// In-place length-`p` DFT of `data`.
    fn apply(&self, data: &mut [Complex64]) {
        let m = self.inner.len();
        let p = self.chirp.len();
        let mut a = vec![ZERO; m];
        for j in 0..p {
            a[j] = data[j] * self.chirp[j];
        }
        let mut spec = vec![ZERO; m];
        self.inner.forward(&a, &mut spec);
        for (s, k) in spec.iter_mut().zip(&self.kernel) {
            // conjugate so the next forward pass acts as an inverse
            *s = (*s * k).conj();
        }
        self.inner.forward(&spec, &mut a);
        let scale = 1.0 / m as f64;
        for k in 0..p {
            data[k] = a[k].conj() * scale * self.chirp[k];
        }
    }
}

/// Forward DFT plan for one cyclic group `Z/n`:
/// `X[k] = sum_j x[j] exp(-2 pi i j k / n)`.
#[derive(Debug)]
pub struct CyclicPlan {
    n: usize,
    factors: Vec<usize>,
    roots: RootTable,
    large_primes: HashMap<usize, Bluestein>,
}

impl CyclicPlan {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let factors = prime_factors(n);
        let mut large_primes = HashMap::new();
        for &p in &factors {
            if p > DIRECT_PRIME_LIMIT && !large_primes.contains_key(&p) {
                large_primes.insert(p, Bluestein::new(p));
            }
        }
        CyclicPlan {
            n,
            factors,
            roots: RootTable::new(n),
            large_primes,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `exp(-2 pi i e / n)`.
    #[inline]
    fn twiddle(&self, e: usize) -> Complex64 {
        self.roots.get(e).conj()
    }

    pub fn forward(&self, input: &[Complex64], output: &mut [Complex64]) {
        assert_eq!(input.len(), self.n);
        assert_eq!(output.len(), self.n);
        let pmax = self.factors.iter().copied().max().unwrap_or(1);
        let mut scratch = vec![ZERO; 2 * pmax];
        self.recurse(input, 0, 1, output, 0, &mut scratch);
    }

    /// Transforms `input[offset + stride * j]` for `j < m` into `out`, where
    /// `m = n / (product of factors[..level])`.
    fn recurse(
        &self,
        input: &[Complex64],
        offset: usize,
        stride: usize,
        out: &mut [Complex64],
        level: usize,
        scratch: &mut [Complex64],
    ) {
        let m = out.len();
        if m == 1 {
            out[0] = input[offset];
            return;
        }
        let p = self.factors[level];
        let q = m / p;
        for r in 0..p {
            self.recurse(
                input,
                offset + r * stride,
                stride * p,
                &mut out[r * q..(r + 1) * q],
                level + 1,
                scratch,
            );
        }
        // twiddle exponents in units of the plan's root table
        let unit_m = self.n / m;
        let unit_p = self.n / p;
        let (buf, tmp) = scratch.split_at_mut(p);
        let buf = &mut buf[..p];
        let tmp = &mut tmp[..p];
        for k in 0..q {
            buf[0] = out[k];
            for r in 1..p {
                buf[r] = out[r * q + k] * self.twiddle((r * k * unit_m) % self.n);
            }
            match p {
                2 => {
                    let (a, b) = (buf[0], buf[1]);
                    out[k] = a + b;
                    out[q + k] = a - b;
                }
                _ if p <= DIRECT_PRIME_LIMIT => {
                    for u in 0..p {
                        let mut acc = buf[0];
                        for r in 1..p {
                            acc += buf[r] * self.twiddle(((r * u) % p) * unit_p);
                        }
                        tmp[u] = acc;
                    }
                    for u in 0..p {
                        out[u * q + k] = tmp[u];
                    }
                }
                _ => {
                    self.large_primes[&p].apply(buf);
                    for u in 0..p {
                        out[u * q + k] = buf[u];
                    }
                }
            }
        }
    }
}

/// Direct `O(n^2)` DFT of one cyclic line, used as a reference in tests.
pub fn dft_direct(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    let roots = RootTable::new(n.max(1));
    (0..n)
        .map(|k| {
            input
                .iter()
                .enumerate()
                .fold(ZERO, |acc, (j, &x)| acc + x * roots.get((j * k) % n).conj())
        })
        .collect()
}

/// Row-column forward DFT over every axis of a finite group.
#[derive(Debug, Clone)]
pub struct NdPlan {
    spec: GroupSpec,
    axes: Vec<Arc<CyclicPlan>>,
}

impl NdPlan {
    pub fn new(spec: &GroupSpec) -> Self {
        let mut cache: HashMap<usize, Arc<CyclicPlan>> = HashMap::new();
        let axes = spec
            .cyclic_orders()
            .iter()
            .map(|&n| {
                cache
                    .entry(n)
                    .or_insert_with(|| Arc::new(CyclicPlan::new(n)))
                    .clone()
            })
            .collect();
        NdPlan {
            spec: spec.clone(),
            axes,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Unnormalized forward transform in place:
    /// `X[t] = sum_x x[x] exp(-2 pi i sum_j t_j x_j / n_j)`.
    pub fn forward_in_place(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.spec.order());
        let total = data.len();
        for (j, plan) in self.axes.iter().enumerate() {
            let n = plan.len();
            if n == 1 {
                continue;
            }
            let stride = self.spec.stride(j);
            let block = stride * n;
            let mut line = vec![ZERO; n];
            let mut out = vec![ZERO; n];
            if n == 2 {
                // butterflies straight on the array
                for base in (0..total).step_by(block) {
                    for i in base..base + stride {
                        let (a, b) = (data[i], data[i + stride]);
                        data[i] = a + b;
                        data[i + stride] = a - b;
                    }
                }
                continue;
            }
            for base in (0..total).step_by(block) {
                for i in base..base + stride {
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = data[i + k * stride];
                    }
                    plan.forward(&line, &mut out);
                    for (k, v) in out.iter().enumerate() {
                        data[i + k * stride] = *v;
                    }
                }
            }
        }
    }

    /// Unnormalized inverse (positive exponent) transform in place.
    pub fn backward_in_place(&self, data: &mut [Complex64]) {
        data.iter_mut().for_each(|v| *v = v.conj());
        self.forward_in_place(data);
        data.iter_mut().for_each(|v| *v = v.conj());
    }
}
