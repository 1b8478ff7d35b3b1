//! Independent reference computations checked against the library.
//!
//! Nothing here goes through the library's root tables, FFT plans or SVD:
//! the oracles use plain `sin`/`cos` double loops, explicit ±1 matrices and
//! exact integer row reduction.

use std::f64::consts::TAU;

use abharm::haar::{invariance_system, uniqueness_report, Translations};
use abharm::transform::{convolve_direct, convolve_spectral, fourier_laplace_termwise};
use abharm::{
    fourier_fast, fourier_laplace_integers, fourier_naive, inverse_fourier, uniqueness_oracle, Complex64,
    CylinderFunction, GroupFunction, GroupSpec, HaarWeight, LaurentCharacter, SequenceGroupSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_function(spec: &GroupSpec, rng: &mut ChaCha8Rng) -> GroupFunction {
    GroupFunction::from_fn(spec, |_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).unwrap()
}

/// `h * sum_x f(x) exp(-2 pi i sum_j t_j x_j / n_j)`, digits peeled by hand.
fn brute_transform(orders: &[usize], values: &[Complex64], h: f64) -> Vec<Complex64> {
    let n: usize = orders.iter().product();
    let digits = |mut k: usize| -> Vec<usize> {
        orders
            .iter()
            .map(|&m| {
                let d = k % m;
                k /= m;
                d
            })
            .collect()
    };
    (0..n)
        .map(|t| {
            let td = digits(t);
            let mut acc = c(0.0, 0.0);
            for (x, v) in values.iter().enumerate() {
                let xd = digits(x);
                let mut phase = 0.0;
                for j in 0..orders.len() {
                    phase += ((td[j] * xd[j]) % orders[j]) as f64 / orders[j] as f64;
                }
                acc += v * c((TAU * phase).cos(), -(TAU * phase).sin());
            }
            acc * h
        })
        .collect()
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn naive_transform_of_ramp_on_six_points() {
    let g = GroupSpec::new(&[6]).unwrap();
    let f = GroupFunction::from_real(&g, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
    let w = HaarWeight::normalized(&g);
    let got = fourier_naive(&w, &f).unwrap();

    let oracle = brute_transform(&[6], f.values(), 1.0 / 6.0);
    assert!(max_dev(got.values(), &oracle) <= 1e-12);

    // closed form: 7/2 at t = 0, otherwise -1/2 + (i/2) cot(pi t / 6)
    let s3 = 3f64.sqrt();
    let frozen = [
        c(3.5, 0.0),
        c(-0.5, s3 / 2.0),
        c(-0.5, 1.0 / (2.0 * s3)),
        c(-0.5, 0.0),
        c(-0.5, -1.0 / (2.0 * s3)),
        c(-0.5, -s3 / 2.0),
    ];
    assert!(max_dev(got.values(), &frozen) <= 1e-12);
    assert!(max_dev(&oracle, &frozen) <= 1e-12);
}

#[test]
fn fast_transform_matches_brute_force_on_mixed_radix() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for orders in [vec![4, 9, 5], vec![7, 2, 3], vec![67], vec![2, 61], vec![1, 12, 1]] {
        let o: Vec<i64> = orders.iter().map(|&n| n as i64).collect();
        let g = GroupSpec::new(&o).unwrap();
        let f = random_function(&g, &mut rng);
        for w in [HaarWeight::normalized(&g), HaarWeight::counting(&g)] {
            let oracle = brute_transform(&orders, f.values(), w.point_mass());
            let fast = fourier_fast(&w, &f).unwrap();
            let naive = fourier_naive(&w, &f).unwrap();
            assert!(max_dev(fast.values(), &oracle) <= 1e-9, "{orders:?}");
            assert!(max_dev(naive.values(), &oracle) <= 1e-12, "{orders:?}");
        }
    }
}

#[test]
fn round_trip_on_three_by_four() {
    let g = GroupSpec::new(&[3, 4]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = random_function(&g, &mut rng);
    for w in [HaarWeight::normalized(&g), HaarWeight::counting(&g)] {
        let back = inverse_fourier(&w, &fourier_fast(&w, &f).unwrap()).unwrap();
        assert!(max_dev(back.values(), f.values()) <= 1e-12);
    }
}

#[test]
fn convolution_paths_match_double_loop() {
    let orders = [2usize, 3, 5];
    let g = GroupSpec::new(&[2, 3, 5]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_function(&g, &mut rng);
    let k = random_function(&g, &mut rng);
    let n = g.order();
    let digits = |mut r: usize| -> Vec<usize> {
        orders
            .iter()
            .map(|&m| {
                let d = r % m;
                r /= m;
                d
            })
            .collect()
    };
    let rank = |d: &[usize]| d[0] + 2 * (d[1] + 3 * d[2]);
    for w in [HaarWeight::normalized(&g), HaarWeight::counting(&g)] {
        let h = w.point_mass();
        let oracle: Vec<Complex64> = (0..n)
            .map(|x| {
                let xd = digits(x);
                let mut acc = c(0.0, 0.0);
                for y in 0..n {
                    let yd = digits(y);
                    let diff: Vec<usize> = (0..3).map(|j| (xd[j] + orders[j] - yd[j]) % orders[j]).collect();
                    acc += f.at(y) * k.at(rank(&diff));
                }
                acc * h
            })
            .collect();
        let direct = convolve_direct(&w, &f, &k).unwrap();
        let spectral = convolve_spectral(&w, &f, &k).unwrap();
        assert!(max_dev(direct.values(), &oracle) <= 1e-12);
        assert!(max_dev(spectral.values(), &oracle) <= 1e-9);
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
fn exact_rank(rows: Vec<Vec<i128>>) -> usize {
    let mut m = rows;
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            for k in col + 1..ncols {
                m[r][k] = (m[rank][col] * m[r][k] - m[r][col] * m[rank][k]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    rank
}

/// Invariance constraints `c_{y-a} - c_y = 0` built from digits, for every
/// nonzero `a`.
fn full_constraints(orders: &[usize]) -> Vec<Vec<i128>> {
    let n: usize = orders.iter().product();
    let digits = |mut r: usize| -> Vec<usize> {
        orders
            .iter()
            .map(|&m| {
                let d = r % m;
                r /= m;
                d
            })
            .collect()
    };
    let rank = |d: &[usize]| {
        d.iter()
            .zip(orders)
            .rev()
            .fold(0usize, |acc, (&x, &m)| acc * m + x)
    };
    let mut rows = Vec::new();
    for a in 1..n {
        let ad = digits(a);
        for y in 0..n {
            let yd = digits(y);
            let diff: Vec<usize> = (0..orders.len()).map(|j| (yd[j] + orders[j] - ad[j]) % orders[j]).collect();
            let mut row = vec![0i128; n];
            row[rank(&diff)] += 1;
            row[y] -= 1;
            rows.push(row);
        }
    }
    rows
}

#[test]
fn uniqueness_matches_exact_row_reduction() {
    for orders in [vec![3usize], vec![2, 2], vec![], vec![2, 3], vec![4], vec![3, 3], vec![2, 2, 2]] {
        let n: usize = orders.iter().product();
        let exact_dim = n - exact_rank(full_constraints(&orders));
        assert_eq!(exact_dim, 1, "{orders:?}");
        let o: Vec<i64> = orders.iter().map(|&m| m as i64).collect();
        let g = GroupSpec::new(&o).unwrap();
        assert_eq!(uniqueness_oracle(&g).unwrap(), exact_dim, "{orders:?}");
    }
}

#[test]
fn generator_system_rows_match_hand_built_rows() {
    let g = GroupSpec::new(&[3]).unwrap();
    let m = invariance_system(&g, Translations::Generators);
    // y - 1 for y = 0, 1, 2 is 2, 0, 1
    let expected = [[-1.0, 0.0, 1.0], [1.0, -1.0, 0.0], [0.0, 1.0, -1.0]];
    assert_eq!(m.nrows(), 3);
    for r in 0..3 {
        for k in 0..3 {
            assert_eq!(m[(r, k)], expected[r][k]);
        }
    }
    let report = uniqueness_report(&g, Translations::Generators).unwrap();
    let sv = report.singular_values;
    // circulant I - P has singular values |1 - w| for the cube roots w
    let mut sorted = sv.clone();
    sorted.sort_by(f64::total_cmp);
    assert!(sorted[0] < 1e-12);
    assert!((sorted[1] - 3f64.sqrt()).abs() < 1e-12);
    assert!((sorted[2] - 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn depth_three_binary_transform_is_hadamard() {
    let two = SequenceGroupSpec::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let values: Vec<Complex64> = (0..8)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let cf = CylinderFunction::new(two, 3, values.clone()).unwrap();
        let s = cf.transform();
        for t in 0..8usize {
            let mut acc = c(0.0, 0.0);
            for (x, v) in values.iter().enumerate() {
                let sign = if (t & x).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                acc += v * sign;
            }
            assert!((s.at(t) - acc / 8.0).norm() <= 1e-12);
        }
    }
}

#[test]
fn cylinder_integral_refinement_by_direct_summation() {
    let three = SequenceGroupSpec::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let values: Vec<Complex64> = (0..9).map(|_| c(rng.random_range(-1.0..1.0), 0.0)).collect();
    let direct: Complex64 = values.iter().sum::<Complex64>() / 9.0;
    let cf = CylinderFunction::new(three, 2, values).unwrap();
    let fine = cf.refine(5).unwrap();
    let fine_direct: Complex64 = fine.table().values().iter().sum::<Complex64>() / 243.0;
    assert!((cf.integrate() - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
    assert!((fine.integrate() - fine_direct).norm() <= 1e-12 * (1.0 + direct.norm()));
    assert!((fine.integrate() - cf.integrate()).norm() <= 1e-12 * (1.0 + direct.norm()));
}

#[test]
fn laplace_three_term_on_circle() {
    for theta in [0.0, 0.3, 1.0, 2.5, -1.2] {
        let z = LaurentCharacter::new(Complex64::from_polar(1.0, theta)).unwrap();
        let f = [(0, c(1.0, 0.0)), (1, c(1.0, 0.0)), (2, c(1.0, 0.0))];
        let mut oracle = c(0.0, 0.0);
        for k in 0..3 {
            let a = -theta * k as f64;
            oracle += c(a.cos(), a.sin());
        }
        assert!((fourier_laplace_integers(&f, &z).unwrap() - oracle).norm() <= 1e-14);
        assert!((fourier_laplace_termwise(&f, &z).unwrap() - oracle).norm() <= 1e-14);
    }
}
