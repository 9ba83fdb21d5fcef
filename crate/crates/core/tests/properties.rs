//! Cross-surface randomized checks of the public API: wall re-verification
//! away from the plane, threshold ordering over random admissible types,
//! and the sign conventions of the pointwise oracle.

use std::cmp::Ordering;

use cohsys::invariants::euler_char;
use cohsys::qpoly::rint;
use cohsys::stability::{
    alpha_injectivity_threshold, alpha_torsion_threshold, alpha_upper_bound,
    check_against_candidate, CandidateVerdict, KernelRankMode,
};
use cohsys::walls::{enumerate_walls, oracle_compare_at_samples, WallSearchWindow};
use cohsys::{AlphaPoly, DivisorClass, SurfaceData, SystemType};

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

fn builtin_pool() -> Vec<SurfaceData> {
    vec![
        SurfaceData::projective_plane(),
        SurfaceData::quadric(),
        SurfaceData::hirzebruch(1),
        SurfaceData::hirzebruch(2),
        SurfaceData::hirzebruch(3),
    ]
}

fn random_admissible_type(rng: &mut SplitMix64, surface: &SurfaceData) -> SystemType {
    loop {
        let n = rng.in_range(2, 6) as u32;
        let k = rng.in_range(1, i64::from(n) - 1) as u32;
        let c1 = DivisorClass::new(
            (0..surface.rank()).map(|_| rng.in_range(-4, 4)).collect(),
        );
        let t = match SystemType::new(n, c1, rng.in_range(-6, 12), k) {
            Ok(t) => t,
            Err(_) => continue,
        };
        if t.c1_dot_h(surface).unwrap() > 0 {
            return t;
        }
    }
}

#[test]
fn walls_reverify_on_every_builtin_surface() {
    let mut rng = SplitMix64(90210);
    for surface in builtin_pool() {
        // small types keep the default windows at a few thousand candidates
        let t = loop {
            let candidate = random_admissible_type(&mut rng, &surface);
            if candidate.n() <= 3 && candidate.c1_dot_h(&surface).unwrap() <= 3 {
                break candidate;
            }
        };
        let window = WallSearchWindow::default_for(&surface, &t).unwrap();
        let report = enumerate_walls(&surface, &t, &window).unwrap();
        for wall in &report.walls {
            assert!(wall.alpha.poly().is_eventually_positive());
            assert_ne!(
                wall.alpha
                    .poly()
                    .cmp_eventual(&alpha_upper_bound(&surface, &t).unwrap()),
                Ordering::Greater
            );
            for witness in &wall.witnesses {
                let verdict =
                    check_against_candidate(&surface, &t, &wall.alpha, witness).unwrap();
                assert_eq!(verdict, CandidateVerdict::Semistable);

                // the pointwise oracle agrees beyond the dominance bound
                let samples = [wall.alpha.poly().dominance_bound() + rint(1)];
                let signs =
                    oracle_compare_at_samples(&surface, &t, &wall.alpha, witness, &samples)
                        .unwrap();
                assert_eq!(signs, vec![Ordering::Equal]);
            }
        }
    }
}

#[test]
fn threshold_ordering_over_random_types() {
    let mut rng = SplitMix64(777);
    let pool = builtin_pool();
    for i in 0..150 {
        let surface = &pool[i % pool.len()];
        let t = random_admissible_type(&mut rng, surface);
        let upper = alpha_upper_bound(surface, &t).unwrap();
        let torsion = alpha_torsion_threshold(surface, &t).unwrap();
        assert_eq!(torsion.cmp_eventual(&upper), Ordering::Less);
        let worst =
            alpha_injectivity_threshold(surface, &t, KernelRankMode::WorstCase).unwrap();
        assert_ne!(worst.cmp_eventual(&upper), Ordering::Greater);
        for k0 in 1..t.k() {
            let exact =
                alpha_injectivity_threshold(surface, &t, KernelRankMode::Exact(k0)).unwrap();
            assert_ne!(exact.cmp_eventual(&upper), Ordering::Greater);
            assert_ne!(exact.cmp_eventual(&worst), Ordering::Greater);
        }
    }
}

#[test]
fn verdicts_match_pointwise_signs_on_random_candidates() {
    use cohsys::stability::SubsystemCandidate;

    let mut rng = SplitMix64(4242);
    let pool = builtin_pool();
    let mut checked = 0;
    while checked < 100 {
        let surface = &pool[(rng.next() % pool.len() as u64) as usize];
        let t = random_admissible_type(&mut rng, surface);
        let cand = SubsystemCandidate::from_ints(
            rng.in_range(1, i64::from(t.n())) as u32,
            rng.in_range(-6, 6),
            rng.in_range(-8, 8),
            rng.in_range(0, i64::from(t.k())) as u32,
        )
        .unwrap();
        if cand.is_ambient(surface, &t).unwrap() {
            continue;
        }
        let alpha = AlphaPoly::linear(rint(rng.in_range(1, 5)), rint(rng.in_range(-5, 5)))
            .unwrap();
        let verdict = check_against_candidate(surface, &t, &alpha, &cand).unwrap();

        // sample beyond the point where the difference can still change sign
        let diff = &cohsys::stability::candidate_reduced_poly(surface, &alpha, &cand).unwrap()
            - &cohsys::stability::reduced_hilbert(surface, &t, &alpha).unwrap();
        let sign = oracle_compare_at_samples(
            surface,
            &t,
            &alpha,
            &cand,
            &[diff.dominance_bound() + rint(1)],
        )
        .unwrap()[0];
        match verdict {
            CandidateVerdict::StrictlyStable => assert_eq!(sign, Ordering::Less),
            CandidateVerdict::Semistable => assert_eq!(sign, Ordering::Equal),
            CandidateVerdict::Destabilized => assert_eq!(sign, Ordering::Greater),
        }
        checked += 1;
    }
}

#[test]
fn euler_characteristic_is_stable_under_lattice_embedding() {
    // the same numerical data in a bigger lattice gives the same chi
    let q = SurfaceData::quadric();
    let mut rng = SplitMix64(31337);
    for _ in 0..50 {
        let a = rng.in_range(-5, 5);
        let b = rng.in_range(-5, 5);
        let c2 = rng.in_range(-10, 10);
        let n = rng.in_range(1, 6) as u32;
        let direct = euler_char(
            &q,
            &cohsys::SheafNumerics::new(n, DivisorClass::from([a, b]), c2).unwrap(),
        )
        .unwrap();

        // rank-3 lattice containing the quadric lattice as a summand
        let padded = SurfaceData::new(
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2]],
            DivisorClass::from([-2, -2, 0]),
            DivisorClass::from([1, 1, 0]),
            1,
            None,
        )
        .unwrap();
        let embedded = euler_char(
            &padded,
            &cohsys::SheafNumerics::new(n, DivisorClass::from([a, b, 0]), c2).unwrap(),
        )
        .unwrap();
        assert_eq!(direct, embedded);
    }
}
