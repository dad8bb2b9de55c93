use std::collections::{BTreeMap, BTreeSet};

use pbc_dbscan::datagen::{generate_uniform, preset, random_instance, RandomInstance};
use pbc_dbscan::geometry::Boundary;
use pbc_dbscan::oracle::core_points_bruteforce;
use pbc_dbscan::{
    cluster_periodic, compare_clusterings, dbscan, dbscan_bruteforce, dbscan_periodic, extend_periodic,
    wrap_points, DbscanParams, Domain, LabelVector, PointSet, NOISE,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn open_version(inst: &RandomInstance) -> Domain {
    Domain::open(inst.domain.dim()).unwrap()
}

fn equivalent(
    a: &LabelVector,
    b: &LabelVector,
    pts: &PointSet,
    domain: &Domain,
    params: &DbscanParams,
) -> bool {
    let cmp = compare_clusterings(a, b, pts, domain, params).unwrap();
    if !cmp.equivalent() {
        eprintln!("{cmp}");
    }
    cmp.equivalent()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn periodic_matches_torus_oracle(seed in any::<u64>()) {
        let inst = random_instance(seed);
        let fast = dbscan_periodic(&inst.points, &inst.domain, &inst.params).unwrap();
        let slow = dbscan_bruteforce(&inst.points, &inst.domain, &inst.params).unwrap();
        prop_assert!(equivalent(&fast, &slow, &inst.points, &inst.domain, &inst.params));
    }

    #[test]
    fn all_open_reduces_to_plain_dbscan(seed in any::<u64>()) {
        let inst = random_instance(seed);
        let open = open_version(&inst);
        let run = cluster_periodic(&inst.points, &open, &inst.params).unwrap();
        prop_assert_eq!(run.n_padded, 0);
        prop_assert_eq!(run.labels, dbscan(&inst.points, &inst.params).unwrap());
    }

    #[test]
    fn torus_translation_invariance(seed in any::<u64>()) {
        let inst = random_instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let base = dbscan_periodic(&inst.points, &inst.domain, &inst.params).unwrap();
        let offset: Vec<f64> = (0..inst.domain.dim()).map(|_| rng.random_range(-3.0..3.0)).collect();
        let moved: Vec<f64> = inst
            .points
            .coords()
            .iter()
            .enumerate()
            .map(|(k, x)| x + offset[k % offset.len()])
            .collect();
        let moved = wrap_points(&PointSet::new(inst.domain.dim(), moved).unwrap(), &inst.domain).unwrap();
        let shifted = dbscan_periodic(&moved, &inst.domain, &inst.params).unwrap();
        // judged on the original coordinates: the structure must be unchanged
        prop_assert!(equivalent(&base, &shifted, &inst.points, &inst.domain, &inst.params));
    }

    #[test]
    fn core_dbscan_is_permutation_robust(seed in any::<u64>()) {
        let inst = random_instance(seed);
        let open = open_version(&inst);
        let mut order: Vec<usize> = (0..inst.points.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let rows: Vec<&[f64]> = order.iter().map(|&i| inst.points.point(i)).collect();
        let shuffled = PointSet::from_rows(inst.domain.dim(), &rows).unwrap();

        let base = dbscan(&inst.points, &inst.params).unwrap();
        let perm = dbscan(&shuffled, &inst.params).unwrap();
        let mut back = vec![NOISE; order.len()];
        for (pos, &i) in order.iter().enumerate() {
            back[i] = perm[pos];
        }
        prop_assert!(equivalent(&base, &LabelVector::new(back), &inst.points, &open, &inst.params));
    }
}

#[test]
fn bruteforce_equals_core_on_open_domains() {
    for seed in 0..500 {
        let inst = random_instance(seed);
        let open = open_version(&inst);
        assert_eq!(
            dbscan_bruteforce(&inst.points, &open, &inst.params).unwrap(),
            dbscan(&inst.points, &inst.params).unwrap(),
            "seed {seed}"
        );
    }
}

#[test]
fn core_dbscan_matches_bruteforce_core_set() {
    for seed in 0..100 {
        let inst = random_instance(seed);
        let open = open_version(&inst);
        let core = core_points_bruteforce(&inst.points, &open, &inst.params).unwrap();
        let labels = dbscan(&inst.points, &inst.params).unwrap();
        for (i, &c) in core.iter().enumerate() {
            if c {
                assert!(labels[i] >= 0, "seed {seed}: core point {i} labeled noise");
            }
        }
    }
}

#[test]
fn every_cluster_has_a_core_point() {
    for seed in 0..100 {
        let inst = random_instance(seed);
        let labels = dbscan_periodic(&inst.points, &inst.domain, &inst.params).unwrap();
        let core = core_points_bruteforce(&inst.points, &inst.domain, &inst.params).unwrap();
        let with_core: BTreeSet<_> = (0..labels.len())
            .filter(|&i| core[i])
            .map(|i| labels[i])
            .collect();
        let all: BTreeSet<_> = labels.iter().copied().filter(|&l| l >= 0).collect();
        assert_eq!(with_core, all, "seed {seed}");
        // ids are compact
        assert_eq!(all, (0..all.len() as i64).collect());
    }
}

#[test]
fn padding_never_exceeds_corner_count() {
    for seed in 0..200 {
        let inst = random_instance(seed);
        let periodic = inst
            .domain
            .boundaries()
            .iter()
            .filter(|b| b.is_periodic())
            .count();
        let pad = extend_periodic(&inst.points, &inst.domain, inst.params.epsilon).unwrap();
        assert!(pad.len() <= inst.points.len() * ((1 << periodic) - 1));
        for (k, &o) in pad.origin.iter().enumerate() {
            let copy = pad.points.point(k);
            let orig = inst.points.point(o);
            let mut shifted = false;
            for (d, bc) in inst.domain.boundaries().iter().enumerate() {
                let delta = copy[d] - orig[d];
                match *bc {
                    Boundary::Open => assert_eq!(delta, 0.0),
                    Boundary::Periodic { lower, upper } => {
                        let l = upper - lower;
                        let m = (delta / l).round();
                        assert!((delta - m * l).abs() < 1e-9 && m.abs() <= 1.0);
                        shifted |= m != 0.0;
                        let eps = inst.params.epsilon + 1e-9;
                        assert!(copy[d] >= lower - eps && copy[d] <= upper + eps);
                    }
                }
            }
            assert!(shifted);
        }
    }
}

#[test]
fn uniform_padding_fraction_matches_volume_ratio() {
    let eps = 0.02;
    let domain = Domain::periodic(2, 0.0, 1.0).unwrap();
    let pts = generate_uniform(50_000, &domain, 5).unwrap();
    let pad = extend_periodic(&pts, &domain, eps).unwrap();
    let expected = (1.0f64 + 2.0 * eps).powi(2) - 1.0;
    let measured = pad.len() as f64 / pts.len() as f64;
    assert!(
        (measured / expected - 1.0).abs() < 0.05,
        "{measured} vs {expected}"
    );
}

#[test]
fn interior_clusters_unchanged_by_periodicity() {
    for name in ["fig1", "fig3", "fig3-single", "fig4"] {
        let p = preset(name).unwrap();
        let pts = p.generate().unwrap();
        let eps = p.params.epsilon;
        let open = dbscan(&pts, &p.params).unwrap();
        let periodic = dbscan_periodic(&pts, &p.domain, &p.params).unwrap();

        let members = |labels: &LabelVector| {
            let mut m: BTreeMap<i64, BTreeSet<usize>> = BTreeMap::new();
            for (i, &l) in labels.iter().enumerate() {
                if l >= 0 {
                    m.entry(l).or_default().insert(i);
                }
            }
            m
        };
        let far_from_faces = |i: usize| {
            pts.point(i)
                .iter()
                .zip(p.domain.boundaries())
                .all(|(&x, b)| match *b {
                    Boundary::Open => true,
                    Boundary::Periodic { lower, upper } => x - lower >= eps && upper - x >= eps,
                })
        };
        let periodic_sets: BTreeSet<BTreeSet<usize>> = members(&periodic).into_values().collect();
        let mut checked = 0;
        for set in members(&open).into_values() {
            if set.iter().all(|&i| far_from_faces(i)) {
                assert!(periodic_sets.contains(&set), "{name}");
                checked += 1;
            }
        }
        assert!(checked >= 1, "{name}: no interior cluster to compare");
    }
}

#[test]
fn noise_original_adopts_copy_cluster() {
    // 0.95 sees only the copy of 0.04 at 1.04, which is not core in the
    // extended set (its partner 0.13 is never copied). The copy of 0.95 at
    // -0.05 sits next to the core point 0.04.
    let domain = Domain::periodic(1, 0.0, 1.0).unwrap();
    let params = DbscanParams::new(0.1, 3).unwrap();
    let pts = PointSet::new(1, vec![0.95, 0.04, 0.13]).unwrap();

    let pad = extend_periodic(&pts, &domain, params.epsilon).unwrap();
    let mut all = pts.clone();
    all.extend_from(&pad.points).unwrap();
    let raw = dbscan(&all, &params).unwrap();
    assert_eq!(raw[0], NOISE);
    let copy_of_first = pad.origin.iter().position(|&o| o == 0).unwrap();
    assert!(raw[pts.len() + copy_of_first] >= 0);

    let fast = dbscan_periodic(&pts, &domain, &params).unwrap();
    let slow = dbscan_bruteforce(&pts, &domain, &params).unwrap();
    assert_eq!(slow.as_slice(), &[0, 0, 0]);
    assert_eq!(fast, slow);
}

#[test]
fn fig1_style_seam_blob_is_one_cluster() {
    let p = preset("fig1").unwrap();
    let pts = p.generate().unwrap();
    let labels = dbscan_periodic(&pts, &p.domain, &p.params).unwrap();
    let oracle = dbscan_bruteforce(&pts, &p.domain, &p.params).unwrap();
    let blob: BTreeSet<_> = p.blob_range(0).map(|i| labels[i]).filter(|&l| l >= 0).collect();
    assert_eq!(blob.len(), 1);
    assert_eq!(labels.n_clusters(), oracle.n_clusters());
}
