use dispersion_core::densities::{density_coeffs, emit_density_grid, DensityFn, DensityKind, Grid};
use dispersion_core::exact::rational::{self, int, Rational};
use dispersion_core::sk::{exact_record, ChannelTag, Expansion};
use num_traits::{Signed, Zero};

mod common;
use common::quadrature_density;

fn q(s: i64) -> Rational {
    int((s + 1) * s * (s - 1))
}

/// Closed-form channel-A contraction
/// `α_{n,m} = Σ_l a_{n,l}[2l q_l a_{m,l} - (l+1)q_{l-1}a_{m,l-1} - (l-1)q_{l+1}a_{m,l+1}]`.
fn closed_form_alpha(e: &Expansion, n: u32, m: u32) -> Rational {
    let (_, lmax) = e.truncation.max_labels();
    let a = |i: u32, j: u32| if j < 2 { Rational::zero() } else { e.get(i, j) };
    (2..=lmax)
        .map(|l| {
            let li = l as i64;
            e.get(n, l)
                * (int(2 * li) * q(li) * a(m, l)
                    - int(li + 1) * q(li - 1) * a(m, l - 1)
                    - int(li - 1) * q(li + 1) * a(m, l + 1))
        })
        .sum()
}

#[test]
fn channel_a_contraction_matches_closed_form() {
    for order in 1..=6 {
        let e = exact_record(ChannelTag::A, order).unwrap().expansion;
        let f = density_coeffs(&e, DensityKind::A).unwrap();
        let (lmax, _) = e.truncation.max_labels();
        for n in 2..=lmax {
            for m in 2..=lmax {
                assert_eq!(f.alpha_at(n, m), closed_form_alpha(&e, n, m), "order {order} ({n},{m})");
            }
        }
    }
}

#[test]
fn quadrature_oracle_agreement() {
    for kind in DensityKind::ALL {
        for order in 1..=6 {
            let e = exact_record(kind.channel(), order).unwrap().expansion;
            let f = density_coeffs(&e, kind).unwrap();
            for xi in [0.0, 1.0, 5.0, 10.0] {
                let exact = f.eval(xi).unwrap();
                let oracle = quadrature_density(&e, kind, xi);
                let rel = (exact - oracle).abs() / exact.abs();
                assert!(rel < 1e-9, "{kind} order {order} ξ={xi}: {exact} vs {oracle} (rel {rel:e})");
            }
        }
    }
}

fn densities(kind: DensityKind, orders: std::ops::RangeInclusive<u32>) -> Vec<DensityFn> {
    orders
        .map(|k| density_coeffs(&exact_record(kind.channel(), k).unwrap().expansion, kind).unwrap())
        .collect()
}

#[test]
fn nonnegative_on_thousand_points() {
    let grid = Grid::linspace(int(0), int(20), 1000).unwrap();
    for kind in DensityKind::ALL {
        for f in densities(kind, 1..=10) {
            let rows = emit_density_grid(&f, &grid).unwrap();
            assert_eq!(rows.len(), 1000);
            assert!(rows.iter().all(|r| !r.f.is_negative()), "{kind} order {} negative", f.order);
        }
    }
}

fn grid_values(f: &DensityFn, grid: &Grid) -> Vec<Rational> {
    emit_density_grid(f, grid).unwrap().into_iter().map(|r| r.f).collect()
}

#[test]
fn successive_truncations_converge_on_short_range() {
    let grid = Grid::short_range();
    for kind in DensityKind::ALL {
        let values: Vec<Vec<Rational>> = densities(kind, 5..=10).iter().map(|f| grid_values(f, &grid)).collect();
        let max_diffs: Vec<Rational> = values
            .windows(2)
            .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| (a - b).abs()).max().unwrap())
            .collect();
        for d in max_diffs.windows(2) {
            assert!(d[1] < d[0], "{kind}: {} then {}", rational::to_f64(&d[0]), rational::to_f64(&d[1]));
        }
    }
}

#[test]
fn odd_and_even_orders_bracket_at_large_distance() {
    let grid = Grid::long_range();
    let fs = densities(DensityKind::A, 5..=10);
    let f5 = grid_values(&fs[0], &grid);
    let f6 = grid_values(&fs[1], &grid);
    let f10 = grid_values(&fs[5], &grid);
    for i in 0..grid.len() {
        let d5 = &f5[i] - &f10[i];
        let d6 = &f6[i] - &f10[i];
        assert!(
            (d5.is_positive() && d6.is_negative()) || (d5.is_negative() && d6.is_positive()),
            "ξ={}: f5-f10={} f6-f10={}",
            rational::to_f64(&grid.points()[i]),
            rational::to_f64(&d5),
            rational::to_f64(&d6)
        );
    }
}

#[test]
fn converged_channel_a_density_is_positive_and_dominated_by_the_weight() {
    let f = &densities(DensityKind::A, 10..=10)[0];
    let grid = Grid::short_range();
    let vals: Vec<f64> = emit_density_grid(f, &grid).unwrap().iter().map(|r| r.f64().1).collect();
    assert!(vals.iter().all(|&v| v > 0.0));
    // the density enters the physical profile multiplied by ξ²e^{-ξ}
    let profile: Vec<f64> = grid.points().iter().zip(&vals).map(|(x, v)| {
        let x = rational::to_f64(x);
        x * x * (-x).exp() * v
    }).collect();
    let peak = profile.iter().cloned().fold(0.0, f64::max);
    assert!(profile.last().unwrap() < &(peak * 0.5));
}
