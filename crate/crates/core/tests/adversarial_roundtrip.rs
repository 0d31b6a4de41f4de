//! End-to-end link between certification and decoding at small scale:
//! certified matrices decode exactly under any within-budget adversary, and
//! every certification witness constructs an explicit confusion.

use pooltest::{
    adversarial_corrupt, build_kautz_singleton, build_probabilistic, derive_prob_params,
    distance_decode, measure, verify_disjunct, witness_confusion_pair, witness_leftover,
    AdversaryStrategy, ContactMatrix, KSDesignParams, SparseSignal,
};

fn all_signals(n: usize, k: usize) -> Vec<SparseSignal> {
    let mut out = vec![SparseSignal::empty(n)];
    let mut stack: Vec<Vec<usize>> = (0..n).map(|j| vec![j]).collect();
    while let Some(s) = stack.pop() {
        if s.len() < k {
            for &next in (s[s.len() - 1] + 1..n).collect::<Vec<_>>().iter() {
                stack.push([s.clone(), vec![next]].concat());
            }
        }
        out.push(SparseSignal::new(n, s).unwrap());
    }
    out
}

fn exhaustive_exact_recovery(mc: &ContactMatrix, k: usize, e: usize) {
    let strategies = [
        AdversaryStrategy::None,
        AdversaryStrategy::Random,
        AdversaryStrategy::MaxRandom,
    ];
    for x in all_signals(mc.n(), k) {
        for strategy in strategies {
            for seed in 40..44u64 {
                let ms = adversarial_corrupt(mc, &x, e, strategy, seed).unwrap();
                let y = measure(&ms, &x).unwrap();
                let result = distance_decode(mc, &y, e, Some(k)).unwrap();
                assert_eq!(
                    result.candidates,
                    x.support(),
                    "k={k} e={e} strategy={strategy:?} seed={seed}"
                );
            }
        }
    }
}

#[test]
fn certified_matrices_decode_exactly() {
    // identity tolerates no flips but any sparsity below n
    let identity = ContactMatrix::identity(7);
    assert!(verify_disjunct(&identity, 2, 0).unwrap().holds);
    exhaustive_exact_recovery(&identity, 2, 0);

    // disjoint constant-weight columns tolerate e < weight
    let rep = build_kautz_singleton(&KSDesignParams::explicit(3, 2, 1.0, 0.0, 3, 1).unwrap())
        .unwrap();
    assert!(verify_disjunct(&rep, 2, 2).unwrap().holds);
    exhaustive_exact_recovery(&rep, 2, 2);

    // a certified seeded Bernoulli matrix; at this scale random matrices
    // only reliably certify single-defective recovery
    let params = derive_prob_params(8, 1, 1.0, 0.3, 0.05, Some(14)).unwrap();
    let mc = (0..200u64)
        .map(|seed| build_probabilistic(&params, seed))
        .find(|mc| verify_disjunct(mc, 1, 0).unwrap().holds)
        .expect("some seed yields a (1,0)-disjunct matrix");
    exhaustive_exact_recovery(&mc, 1, 0);
}

#[test]
fn witnesses_convert_into_confusions() {
    let params = derive_prob_params(9, 2, 1.0, 0.5, 0.05, Some(10)).unwrap();
    let mut converted = 0;
    for seed in 0..30u64 {
        let mc = build_probabilistic(&params, seed);
        for (k, e) in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)] {
            let report = verify_disjunct(&mc, k, e).unwrap();
            if let Some(w) = report.witness {
                assert!(w.set.len() <= k);
                assert!(w.leftover <= e);
                assert!(!w.set.contains(&w.index));
                assert_eq!(witness_leftover(&mc, &w.set, w.index), w.leftover);
                let (x, x_prime, ms) = witness_confusion_pair(&mc, &w).unwrap();
                assert_eq!(measure(&ms, &x).unwrap(), measure(&ms, &x_prime).unwrap());
                assert!(ms.flips_per_column().iter().all(|&f| f <= e));
                converted += 1;
            }
        }
    }
    assert!(converted >= 20, "only {converted} witnesses exercised");
}
