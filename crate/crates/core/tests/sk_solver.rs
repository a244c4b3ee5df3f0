use dispersion_core::exact::rational::{self, frac, int, Rational, Rounding};
use dispersion_core::sk::{
    assemble, energy_constant, exact_record, normalization_constant, solve, solve_expansion, Channel,
    ChannelTag, Truncation,
};
use num_traits::{Signed, Zero};

/// `(s+1)!/(s-2)!`
fn q(s: i64) -> Rational {
    int((s + 1) * s * (s - 1))
}

/// `(s-1)(s+1)!/(144 (s-2)!)`
fn g(s: i64) -> Rational {
    int(s - 1) * q(s) / int(144)
}

fn delta(m: i64, s: i64) -> Rational {
    let d = |a: i64, b: i64| if a == b { 1 } else { 0 };
    int(d(m, 2) * d(s, 2) - d(m, 3) * d(s, 2) - d(m, 2) * d(s, 3) + d(m, 3) * d(s, 3))
}

/// Closed-form channel-A recurrence, row (m,s):
/// -a_{m,s}(2s g_m q_s + 2m g_s q_m) + a_{m,s-1}(s+1) g_m q_{s-1}
/// + a_{m,s+1}(s-1) g_m q_{s+1} + a_{m-1,s}(m+1) g_s q_{m-1}
/// + a_{m+1,s}(m-1) g_s q_{m+1} = Δ_{m,s}
fn closed_form_entry(test: (u32, u32), trial: (u32, u32)) -> Rational {
    let (m, s) = (test.0 as i64, test.1 as i64);
    let (l, n) = (trial.0 as i64, trial.1 as i64);
    match (l - m, n - s) {
        (0, 0) => -(int(2 * s) * g(m) * q(s) + int(2 * m) * g(s) * q(m)),
        (0, -1) => int(s + 1) * g(m) * q(s - 1),
        (0, 1) => int(s - 1) * g(m) * q(s + 1),
        (-1, 0) => int(m + 1) * g(s) * q(m - 1),
        (1, 0) => int(m - 1) * g(s) * q(m + 1),
        _ => Rational::zero(),
    }
}

#[test]
fn recurrence_constants() {
    assert_eq!(q(3), int(24));
    assert_eq!(g(3), frac(1, 3));
    assert_eq!(g(2), frac(1, 24));
    assert_eq!(q(2), int(6));
}

#[test]
fn generic_assembly_matches_closed_form_recurrence() {
    let ch = Channel::new(ChannelTag::A);
    let mut truncations: Vec<Truncation> = (1..=6).map(|n| Truncation::square(&ch, n).unwrap()).collect();
    truncations.extend((1..=6).map(|k| Truncation::tabulated(ChannelTag::A, k).unwrap()));
    for t in truncations {
        let sys = assemble(&ch, &t).unwrap();
        for (r, &test) in t.cells().iter().enumerate() {
            for (c, &trial) in t.cells().iter().enumerate() {
                assert_eq!(sys.get(r, c), closed_form_entry(test, trial), "{test:?} {trial:?}");
            }
            assert_eq!(sys.rhs[r], delta(test.0 as i64, test.1 as i64));
        }
    }
}

#[test]
fn order_one_and_two_solutions() {
    let ch = Channel::new(ChannelTag::A);
    let sys = assemble(&ch, &Truncation::tabulated(ChannelTag::A, 1).unwrap()).unwrap();
    assert_eq!(solve(&sys).unwrap(), vec![frac(-1, 2)]);
    assert_eq!(exact_record(ChannelTag::A, 2).unwrap().energy_constant, frac(56, 9));
    assert_eq!(exact_record(ChannelTag::A, 3).unwrap().energy_constant, frac(84, 13));
    assert_eq!(exact_record(ChannelTag::B, 2).unwrap().energy_constant, frac(3807, 32));
    assert_eq!(exact_record(ChannelTag::C, 3).unwrap().energy_constant, frac(581175, 512));
}

#[test]
fn exact_residual_and_symmetry() {
    for tag in ChannelTag::ALL {
        let ch = Channel::new(tag);
        for order in 1..=8 {
            let t = Truncation::tabulated(tag, order).unwrap();
            let sys = assemble(&ch, &t).unwrap();
            let x = solve(&sys).unwrap();
            assert!(sys.residual(&x).iter().all(Zero::is_zero), "{tag} order {order}");
            if ch.is_symmetric() && t.is_symmetric() {
                let e = solve_expansion(tag, &t).unwrap();
                for ((l, n), v) in e.iter() {
                    assert_eq!(*v, e.get(n, l), "{tag} order {order} ({l},{n})");
                }
            }
        }
    }
}

#[test]
fn energy_equals_weighted_integral_of_the_correlation() {
    // A = -(1/48)∫∫ξ⁴ξ'⁴e^{-ξ-ξ'}R, B = -(1/64)∫∫ξ⁴ξ'⁶…R, C = -(7/1280)∫∫ξ⁶ξ'⁶…R
    let scale = |tag| match tag {
        ChannelTag::A => frac(-1, 48),
        ChannelTag::B => frac(-1, 64),
        ChannelTag::C => frac(-7, 1280),
    };
    for tag in ChannelTag::ALL {
        let ch = Channel::new(tag);
        let e = solve_expansion(tag, &Truncation::tabulated(tag, 4).unwrap()).unwrap();
        let integral: Rational = e
            .iter()
            .map(|((l, n), c)| {
                let il = dispersion_core::exact::weighted_integral(&ch.first.basis.function(l), ch.first.basis.weight_exponent);
                let in_ = dispersion_core::exact::weighted_integral(&ch.second.basis.function(n), ch.second.basis.weight_exponent);
                c * il * in_
            })
            .sum();
        assert_eq!(energy_constant(&e), integral * scale(tag), "{tag}");
    }
}

#[test]
fn successive_differences_shrink_and_leading_coefficient_settles() {
    for tag in ChannelTag::ALL {
        let records: Vec<_> = (1..=10).map(|k| exact_record(tag, k).unwrap()).collect();
        let energies: Vec<Rational> = records.iter().map(|r| r.energy_constant.clone()).collect();
        for n in 3..energies.len() - 1 {
            let next = (&energies[n] - &energies[n - 1]).abs();
            let prev = (&energies[n - 1] - &energies[n - 2]).abs();
            assert!(next < prev, "{tag}: |E{} - E{}| not below previous", n + 1, n);
        }
        // energies approach from below
        for w in energies.windows(2) {
            assert!(w[0] <= w[1], "{tag} not monotone");
        }
        let ch = Channel::new(tag);
        let (l0, n0) = (ch.first.basis.first_index(), ch.second.basis.first_index());
        let last = records[9].expansion.get(l0, n0);
        let gaps: Vec<Rational> =
            records[3..9].iter().map(|r| (r.expansion.get(l0, n0) - &last).abs()).collect();
        for w in gaps.windows(2) {
            assert!(w[1] < w[0], "{tag}: leading coefficient gap not decreasing");
        }
    }
}

#[test]
fn truncated_rendering_of_low_orders() {
    let render = |x: &Rational| rational::to_decimal(x, 8, Rounding::Truncate);
    assert_eq!(render(&exact_record(ChannelTag::A, 4).unwrap().energy_constant), "6.48214285");
    assert_eq!(render(&exact_record(ChannelTag::A, 2).unwrap().normalization_constant), "6.61728395");
    assert_eq!(normalization_constant(&solve_expansion(ChannelTag::C, &Truncation::tabulated(ChannelTag::C, 1).unwrap()).unwrap()), frac(25515, 128));
}
