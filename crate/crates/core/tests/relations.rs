use gb2d::relations::{
    addition_residual, default_bilinear_k, kapteyn_sum, negation_residual, pde_residual_coupled,
    pde_residual_decoupled_pm1, pde_residual_schroedinger, pde_residual_wave, pde_scale,
    pq_odd_residual, q_even_residual, recurrence_residual, recurrence_scale, sum_rule_phase12,
    sum_rule_squares, sum_rule_total, swap_residual,
};
use gb2d::Index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PAIRS: [(i64, i64); 6] = [(1, 2), (1, 3), (2, 3), (1, 5), (3, 5), (2, 1)];

fn pair(rng: &mut ChaCha8Rng) -> (i64, i64) {
    PAIRS[rng.gen_range(0..PAIRS.len())]
}

fn arg(rng: &mut ChaCha8Rng, r: f64) -> f64 {
    rng.gen_range(-r..=r)
}

/// Each factor J_M(u), J_N(v) needs about 20 orders past its argument to
/// drop below 1e−12, and those orders are scaled by p and q.
fn k_for(p: i64, q: i64, u: f64, v: f64) -> usize {
    (p.abs() as f64 * (u.abs() + 20.0) + q.abs() as f64 * (v.abs() + 20.0)).ceil() as usize
}

#[test]
fn sum_rules_hold_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let (p, q) = pair(&mut rng);
        let (u, v) = (arg(&mut rng, 10.0), arg(&mut rng, 10.0));
        let k = k_for(p, q, u, v);
        let t = sum_rule_total(p, q, u, v, k).unwrap();
        assert!(t.abs() <= 1e-10, "({p},{q}) ({u}, {v}) K={k}: {t}");
        assert!(sum_rule_squares(p, q, u, v, k).unwrap().abs() <= 1e-10);
        assert!(sum_rule_phase12(u, v, k_for(1, 2, u, v)).unwrap().norm() <= 1e-10);
    }
}

#[test]
fn recurrence_holds_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let (p, q) = pair(&mut rng);
        let idx = Index::new(rng.gen_range(-25..=25), p, q).unwrap();
        let (u, v) = (arg(&mut rng, 20.0), arg(&mut rng, 20.0));
        let r = recurrence_residual(idx, u, v).unwrap();
        assert!(r.abs() <= 1e-9 * recurrence_scale(idx, u, v), "{idx} ({u}, {v}): {r}");
    }
}

#[test]
fn symmetries_hold_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let (p, q) = pair(&mut rng);
        let idx = Index::new(rng.gen_range(-20..=20), p, q).unwrap();
        let (u, v) = (arg(&mut rng, 15.0), arg(&mut rng, 15.0));
        assert!(swap_residual(idx, u, v).unwrap().abs() <= 1e-12);
        assert!(negation_residual(idx, u, v).unwrap().abs() <= 1e-12);
        if p % 2 == 1 && q % 2 == 0 {
            assert!(q_even_residual(idx, u, v).unwrap().abs() <= 1e-12);
        }
        if p % 2 == 1 && q % 2 == 1 {
            assert!(pq_odd_residual(idx, u, v).unwrap().abs() <= 1e-12);
        }
    }
}

#[test]
fn addition_theorem_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..200 {
        let (p, q) = pair(&mut rng);
        let idx = Index::new(rng.gen_range(-10..=10), p, q).unwrap();
        let (u1, v1, u2, v2) = (arg(&mut rng, 4.0), arg(&mut rng, 4.0), arg(&mut rng, 4.0), arg(&mut rng, 4.0));
        let k = default_bilinear_k(p, q, u1, v1, u2, v2);
        let r = addition_residual(idx, u1, v1, u2, v2, k).unwrap();
        assert!(r.abs() <= 1e-10, "{idx}: {r}");
    }
}

#[test]
fn differential_equations_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..200 {
        let (p, q) = pair(&mut rng);
        let n = rng.gen_range(-12..=12);
        let (u, v) = (arg(&mut rng, 6.0), arg(&mut rng, 6.0));
        let idx = Index::new(n, p, q).unwrap();
        let tol = |i: Index| 1e-10 * pde_scale(i, u, v);
        assert!(pde_residual_coupled(idx, u, v).unwrap().abs() <= tol(idx));
        let i11 = Index::new(n, 1, 1).unwrap();
        assert!(pde_residual_wave(n, u, v).unwrap().abs() <= tol(i11));
        let i12 = Index::new(n, 1, 2).unwrap();
        assert!(pde_residual_schroedinger(n, u, v).unwrap().norm() <= tol(i12));
        for sign in [1, -1] {
            let i = Index::new(n, 1, sign as i64).unwrap();
            assert!(pde_residual_decoupled_pm1(n, sign, u, v).unwrap().abs() <= tol(i));
        }
    }
}

#[test]
fn kapteyn_closed_form_at_small_arguments() {
    let r = kapteyn_sum(1, 2, 0.1, 0.2, 400).unwrap();
    assert!(r.residual.abs() <= 1e-8, "{}", r.residual);
    let r = kapteyn_sum(2, 3, 0.05, -0.1, 400).unwrap();
    assert!(r.residual.abs() <= 1e-8, "{}", r.residual);
}
