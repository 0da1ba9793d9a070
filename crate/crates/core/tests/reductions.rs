//! The one-dimensional reductions of the multivariate evaluators agree
//! with the one-dimensional evaluators on 100 random admissible points.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypersym_core::bracket::{BracketClass, EllipticParams};
use hypersym_core::rational::{rat, rat_i, Rational};
use hypersym_core::series::{
    eval_4f3_terminating, eval_an_4f3, eval_e1d, eval_enm, EnmTermination, F4Kind, Series4F3An,
    SeriesEnm,
};

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-40i64..=40), rng.random_range(1i64..=40))
}

#[test]
fn rectangular_sum_reduces_to_terminating_4f3_on_100_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 100 {
        let n_cap = rng.random_range(1u32..=4);
        let a1 = random_rational(&mut rng);
        let a2 = random_rational(&mut rng);
        let c = random_rational(&mut rng);
        let e1 = random_rational(&mut rng);
        let e2 = random_rational(&mut rng);
        let d = &a1 + &a2 + &c + rat_i(1) - rat_i(n_cap as i64) - &e1 - &e2;
        let series = Series4F3An {
            kind: F4Kind::Rectangular { m: vec![n_cap] },
            x: vec![rat_i(0)],
            a: vec![a1.clone(), a2.clone()],
            e: [e1.clone(), e2.clone()],
            c: c.clone(),
            d: d.clone(),
        };
        let multi = match eval_an_4f3(&series) {
            Ok(v) => v,
            Err(_) => continue, // pole; redraw
        };
        let one = match eval_4f3_terminating(n_cap, &[a1, a2, c], &[d, e1, e2]) {
            Ok(v) => v,
            Err(_) => continue,
        };
        assert_eq!(multi, one);
        done += 1;
    }
}

#[test]
fn multivariate_elliptic_sum_reduces_to_one_dimensional_on_100_points() {
    let ep = EllipticParams::new(
        Complex64::new(0.31, 0.07),
        BracketClass::theta(Complex64::new(0.2, 0.0)).unwrap(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2025);
    let c = |rng: &mut ChaCha8Rng| {
        Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-0.4..0.4))
    };
    let mut done = 0;
    while done < 100 {
        let n_cap = rng.random_range(1u32..=3);
        let m = rng.random_range(1usize..=2);
        let s = c(&mut rng);
        let u: Vec<Complex64> = (0..m).map(|_| c(&mut rng)).collect();
        let v: Vec<Complex64> = (0..m).map(|_| c(&mut rng)).collect();
        let series = SeriesEnm {
            a: vec![-ep.delta * n_cap as f64],
            x: vec![Complex64::ZERO],
            s,
            u: u.clone(),
            v: v.clone(),
            ep,
            termination: EnmTermination::Rectangular(vec![n_cap]),
        };
        let multi = match eval_enm(&series) {
            Ok(z) => z,
            Err(_) => continue,
        };
        let params: Vec<Complex64> = u
            .iter()
            .chain(&v)
            .copied()
            .chain([-ep.delta * n_cap as f64])
            .collect();
        let one = match eval_e1d(s, &params, n_cap, &ep) {
            Ok(z) => z.value,
            Err(_) => continue,
        };
        let scale = multi.norm().max(one.norm()).max(1e-30);
        assert!(
            (multi - one).norm() / scale < 1e-10,
            "point {done}: {multi} vs {one}"
        );
        done += 1;
    }
}
