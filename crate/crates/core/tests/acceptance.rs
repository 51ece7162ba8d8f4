//! Exit criteria. Run with `cargo test --test acceptance -- --nocapture` to
//! see one PASS/FAIL line per criterion; the long abacus run on the 26-vertex
//! tree is opt-in via `-- --ignored`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use passbuck::abacus::{
    critical_loading, run_to_restoration, stabilize, AugmentedGraph, FiringPolicy, SimError,
    SimLimits,
};
use passbuck::direct::{
    restoration_full, subtree_period, subtree_restoration_at_root, win_probabilities, PeriodCache,
};
use passbuck::load_tree;
use passbuck::markov::{absorption_probabilities, GameChain};
use passbuck::tree::{random_attachment_tree, random_tree, RootedTree, VertexId};

const TEST1: [u64; 8] = [13, 13, 13, 26, 7, 14, 35, 91];
const TEST2: [u64; 26] = [
    27783522, 10297681, 3109521, 1158449, 365826, 60971, 60971, 121942, 182913, 981954, 163659,
    163659, 327318, 490977, 8389602, 3125538, 987012, 164502, 164502, 329004, 493506, 2649348,
    441558, 441558, 883116, 1324674,
];
const TEST2_TOTAL: u64 = 64_663_283;

fn fixture(name: &str, root: VertexId) -> RootedTree {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    load_tree(&path, root).unwrap()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn bigs(values: &[u64]) -> Vec<BigUint> {
    values.iter().copied().map(big).collect()
}

fn q(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_1() {
    let t = fixture("test1.edges", 8);
    let (table, wall) = timed(|| restoration_full(&t));
    assert_eq!(table.values(), &bigs(&TEST1)[..]);
    assert_eq!(table.total(), &big(212));
    assert_eq!(win_probabilities(&table).get(8), Some(&q(91, 212)));
    assert!(
        wall < Duration::from_millis(10),
        "direct engine took {wall:?}"
    );
}

fn criterion_2() {
    let t = fixture("test2.edges", 1);
    let (table, wall) = timed(|| restoration_full(&t));
    assert_eq!(table.values(), &bigs(&TEST2)[..]);
    assert_eq!(table.get(1), Some(&big(27_783_522)));
    assert_eq!(table.total(), &big(TEST2_TOTAL));
    assert!(
        wall < Duration::from_millis(100),
        "direct engine took {wall:?}"
    );
}

fn criterion_3() {
    let g = AugmentedGraph::from_tree(&fixture("test1.edges", 8));
    let run = run_to_restoration(&g, SimLimits::unlimited()).unwrap();
    assert_eq!(run.table.values(), &bigs(&TEST1)[..]);
    assert_eq!(run.total, big(212));
}

fn criterion_4() {
    let t = fixture("test1.edges", 8);
    let oracle = absorption_probabilities(&GameChain::from_tree(&t)).unwrap();
    let want = [
        q(13, 212),
        q(13, 212),
        q(13, 212),
        q(13, 106),
        q(7, 212),
        q(7, 106),
        q(35, 212),
        q(91, 212),
    ];
    assert_eq!(oracle.as_slice(), &want);
    assert_eq!(
        oracle.as_slice(),
        win_probabilities(&restoration_full(&t)).as_slice()
    );
}

fn criterion_5() {
    let check = |t: &RootedTree, k: VertexId, r: u64, p: u64| {
        let mut cache = PeriodCache::new(t.len());
        for v in t.post_order() {
            if v == k {
                break;
            }
            cache.fill(t, v);
        }
        assert_eq!(subtree_restoration_at_root(t, k, &cache), big(r));
        cache.fill(t, k);
        assert_eq!(subtree_period(t, k, &cache), big(p));
    };
    // Leaf.
    check(&RootedTree::single(), 1, 1, 2);
    // Root with three leaves.
    check(&RootedTree::star(4).unwrap(), 1, 2, 7);
    // Path v6 - v5 - v4 rooted at v6: R values 1, 2, 5 bottom up; P = 13.
    let path = RootedTree::path(3).unwrap();
    check(&path, 3, 1, 2);
    check(&path, 2, 2, 5);
    check(&path, 1, 5, 13);
    assert_eq!(restoration_full(&path).values(), &bigs(&[5, 2, 1])[..]);
    // Whole tree: lcm(7, 13) = 91 at the root.
    let t = fixture("test1.edges", 8);
    let cache = PeriodCache::build(&t);
    assert_eq!(cache.period(4), Some(&big(7)));
    assert_eq!(cache.period(7), Some(&big(13)));
    assert_eq!(subtree_restoration_at_root(&t, 8, &cache), big(91));
}

fn criterion_6() {
    let (_, wall) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for i in 0..200u32 {
            let n = rng.random_range(1..=10);
            let t = if i % 2 == 0 {
                random_tree(n, rng.random()).unwrap()
            } else {
                random_attachment_tree(n, rng.random()).unwrap()
            };

            // restoration_full asserts exact division internally; check the
            // divisibility independently as well.
            let cache = PeriodCache::build(&t);
            for v in t.vertices() {
                for &c in t.children(v).unwrap() {
                    let (_, rem) = cache
                        .local_restoration(v)
                        .unwrap()
                        .div_rem(cache.period(c).unwrap());
                    assert!(rem.is_zero());
                }
            }
            let direct = restoration_full(&t);
            let g = AugmentedGraph::from_tree(&t);
            let sim = run_to_restoration(&g, SimLimits::unlimited()).unwrap();
            assert_eq!(sim.table, direct, "{t:?}");
            let dist = win_probabilities(&direct);
            assert!(dist.sum().is_one());
            let oracle = absorption_probabilities(&GameChain::from_tree(&t)).unwrap();
            assert_eq!(oracle.as_slice(), dist.as_slice(), "{t:?}");

            let mut c = critical_loading(&g);
            for _ in 0..rng.random_range(1..=10) {
                let v = rng.random_range(1..=n as VertexId);
                c.set_chips(v, c.chips(v) + rng.random_range(1..=3));
            }
            let reference = stabilize(&g, c.clone(), FiringPolicy::Fifo, None).unwrap();
            for _ in 0..5 {
                let seed = rng.random();
                assert_eq!(
                    stabilize(&g, c.clone(), FiringPolicy::Random { seed }, None).unwrap(),
                    reference
                );
            }
        }
    });
    assert!(
        wall < Duration::from_secs(60),
        "property suite took {wall:?}"
    );
}

fn caterpillar(spine: usize) -> RootedTree {
    // Spine 1..=spine, each spine vertex s also carries leaf spine + s.
    let mut parent = vec![0 as VertexId; 2 * spine];
    for s in 2..=spine {
        parent[s - 1] = s as VertexId - 1;
    }
    for s in 1..=spine {
        parent[spine + s - 1] = s as VertexId;
    }
    RootedTree::from_parents(parent).unwrap()
}

fn criterion_7() {
    let n = 10_000;
    let shapes = [
        ("prufer", random_tree(n, 7).unwrap()),
        ("attachment", random_attachment_tree(n, 7).unwrap()),
        ("path", RootedTree::path(n).unwrap()),
        ("caterpillar", caterpillar(n / 2)),
    ];
    for (name, t) in &shapes {
        let (table, wall) = timed(|| restoration_full(t));
        assert_eq!(table.len(), n);
        assert!(table.values().iter().all(|v| !v.is_zero()));
        assert!(
            wall < Duration::from_secs(10),
            "{name}: direct engine took {wall:?}"
        );
        println!(
            "    {name}: n={n} root value has {} bits, {wall:?}",
            table.get(t.root()).unwrap().bits()
        );
    }
    // Path-heavy values outgrow any machine word.
    let path_root = restoration_full(&shapes[2].1).get(1).unwrap().bits();
    assert!(path_root > 128);
    // The simulator is expected to stop at its cap on these instances.
    let g = AugmentedGraph::from_tree(&shapes[2].1);
    let err =
        run_to_restoration(&g, SimLimits::new(Some(200_000), Some(20_000)).unwrap()).unwrap_err();
    assert!(matches!(
        err,
        SimError::FiringCapExceeded(_) | SimError::ChipCapExceeded(_)
    ));
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn()); 7] = [
        (
            "1 golden test1 table, total 212, root 91/212, < 10 ms",
            criterion_1,
        ),
        (
            "2 golden test2 table (26 values), root 27783522, < 100 ms",
            criterion_2,
        ),
        ("3 simulator restores test1 with 212 chips", criterion_3),
        (
            "4 oracle matches direct probabilities on test1",
            criterion_4,
        ),
        (
            "5 worked-example intermediates R/P and lcm(7,13)=91",
            criterion_5,
        ),
        (
            "6 property suite: 200 trees, three engines, firing orders, < 60 s",
            criterion_6,
        ),
        (
            "7 scale check n=10^4 without stack overflow, < 10 s",
            criterion_7,
        ),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        println!(
            "[{}] criterion {name} ({:?})",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed()
        );
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
#[ignore = "runs the abacus for ~65 million chips; use --ignored (preferably with --release)"]
fn criterion_3_test2_simulation() {
    let g = AugmentedGraph::from_tree(&fixture("test2.edges", 1));
    let (run, wall) = timed(|| run_to_restoration(&g, SimLimits::unlimited()).unwrap());
    assert_eq!(run.total, big(TEST2_TOTAL));
    assert_eq!(run.table.values(), &bigs(&TEST2)[..]);
    println!(
        "[PASS] criterion 3 test2 simulation: chips_added={} firings={} ({wall:?})",
        run.total, run.firings
    );
}
