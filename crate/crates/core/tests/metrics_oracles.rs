use proptest::prelude::*;
use spoofsim::metrics::{
    auc, confusion_at_threshold, error_rates, evaluate, select_threshold, ConfusionCounts, Label,
    ScoreRecord,
};
use spoofsim::RngStream;

/// Random records with scores on a coarse grid so ties occur.
fn random_records(rng: &mut RngStream, n: usize) -> Vec<ScoreRecord> {
    (0..n)
        .map(|i| {
            let label = if rng.uniform_int(0, 1) == 0 {
                Label::Live
            } else {
                Label::Attack
            };
            let score = rng.uniform_int(0, 20) as f64 / 20.0;
            ScoreRecord::new(format!("r{i}"), label, score).unwrap()
        })
        .collect()
}

fn ensure_both(mut recs: Vec<ScoreRecord>) -> Vec<ScoreRecord> {
    recs.push(ScoreRecord::new("live_extra", Label::Live, 0.35).unwrap());
    recs.push(ScoreRecord::new("attack_extra", Label::Attack, 0.65).unwrap());
    recs
}

fn recount(recs: &[ScoreRecord], t: f64) -> (u64, u64, u64, u64) {
    let mut c = (0, 0, 0, 0);
    for r in recs {
        let live = r.label == Label::Live;
        let pred = r.score >= t;
        if live && pred {
            c.0 += 1;
        }
        if !live && pred {
            c.1 += 1;
        }
        if !live && !pred {
            c.2 += 1;
        }
        if live && !pred {
            c.3 += 1;
        }
    }
    c
}

fn pairwise_auc(recs: &[ScoreRecord]) -> f64 {
    let live: Vec<f64> = recs
        .iter()
        .filter(|r| r.label == Label::Live)
        .map(|r| r.score)
        .collect();
    let attack: Vec<f64> = recs
        .iter()
        .filter(|r| r.label == Label::Attack)
        .map(|r| r.score)
        .collect();
    let mut wins = 0.0;
    for l in &live {
        for a in &attack {
            wins += if l > a {
                1.0
            } else if l == a {
                0.5
            } else {
                0.0
            };
        }
    }
    wins / (live.len() * attack.len()) as f64
}

fn brute_acer(recs: &[ScoreRecord], t: f64) -> f64 {
    let (tp, fp, tn, fn_) = recount(recs, t);
    (fp as f64 / (fp + tn) as f64 + fn_ as f64 / (fn_ + tp) as f64) / 2.0
}

#[test]
fn confusion_matches_recount_50() {
    let recs = random_records(&mut RngStream::new(50), 50);
    let c = confusion_at_threshold(&recs, 0.3).unwrap();
    let (tp, fp, tn, fn_) = recount(&recs, 0.3);
    assert_eq!(c, ConfusionCounts { tp, fp, tn, fn_ });
}

#[test]
fn auc_matches_pairwise_20() {
    let recs = ensure_both(random_records(&mut RngStream::new(20), 18));
    assert!((auc(&recs).unwrap() - pairwise_auc(&recs)).abs() < 1e-12);
}

#[test]
fn threshold_matches_exhaustive_search() {
    // alternating labels over increasing scores
    let recs: Vec<ScoreRecord> = (0..30)
        .map(|i| {
            let label = if i % 2 == 0 {
                Label::Live
            } else {
                Label::Attack
            };
            ScoreRecord::new(format!("s{i}"), label, i as f64 / 30.0).unwrap()
        })
        .collect();
    let t = select_threshold(&recs).unwrap();
    let mut candidates: Vec<f64> = recs.iter().map(|r| r.score).chain([0.0, 1.0]).collect();
    candidates.sort_by(f64::total_cmp);
    let best = candidates
        .iter()
        .map(|&c| brute_acer(&recs, c))
        .fold(f64::INFINITY, f64::min);
    assert!((brute_acer(&recs, t) - best).abs() < 1e-15);
    let first = candidates
        .iter()
        .find(|&&c| (brute_acer(&recs, c) - best).abs() < 1e-15)
        .unwrap();
    assert_eq!(t, *first);
}

#[test]
fn threshold_random_sets_match_exhaustive() {
    let mut rng = RngStream::new(404);
    for _ in 0..200 {
        let n = rng.uniform_int(1, 60) as usize;
        let recs = ensure_both(random_records(&mut rng, n));
        let t = select_threshold(&recs).unwrap();
        let mut candidates: Vec<f64> = recs.iter().map(|r| r.score).chain([0.0, 1.0]).collect();
        candidates.sort_by(f64::total_cmp);
        candidates.dedup();
        let acers: Vec<f64> = candidates.iter().map(|&c| brute_acer(&recs, c)).collect();
        let best = acers.iter().cloned().fold(f64::INFINITY, f64::min);
        let idx = acers.iter().position(|a| (a - best).abs() < 1e-12).unwrap();
        assert_eq!(t, candidates[idx]);
    }
}

#[test]
fn reference_counts_rates() {
    // 3/80 = 0.0375, 23/2500 = 0.0092
    let c = ConfusionCounts {
        tp: 2477,
        fn_: 23,
        fp: 3,
        tn: 77,
    };
    let r = error_rates(&c).unwrap();
    assert!((r.apcer - 0.0375).abs() < 1e-15);
    assert!((r.bpcer - 0.0092).abs() < 1e-15);
    assert!((r.acer - 0.02335).abs() <= 0.00005);
}

proptest! {
    #[test]
    fn acer_is_exact_mean(tp in 0u64..1000, fp in 0u64..1000, tn in 0u64..1000, fn_ in 0u64..1000) {
        prop_assume!(fp + tn > 0 && tp + fn_ > 0);
        let r = error_rates(&ConfusionCounts { tp, fp, tn, fn_ }).unwrap();
        prop_assert_eq!(r.acer, (r.apcer + r.bpcer) / 2.0);
        prop_assert!((0.0..=1.0).contains(&r.apcer) && (0.0..=1.0).contains(&r.bpcer));
        prop_assert!((r.apcer + tn as f64 / (fp + tn) as f64 - 1.0).abs() < 1e-12);
        prop_assert!((r.bpcer + tp as f64 / (fn_ + tp) as f64 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn auc_invariances(seed in any::<u64>(), n in 2usize..80) {
        let recs = ensure_both(random_records(&mut RngStream::new(seed), n));
        let base = auc(&recs).unwrap();
        // strictly increasing transform
        let squashed: Vec<ScoreRecord> = recs
            .iter()
            .map(|r| ScoreRecord::new(r.sample_id.clone(), r.label, r.score.powi(3) * 0.5 + 0.1).unwrap())
            .collect();
        prop_assert!((auc(&squashed).unwrap() - base).abs() < 1e-12);
        let flipped: Vec<ScoreRecord> = recs
            .iter()
            .map(|r| {
                let l = if r.label == Label::Live { Label::Attack } else { Label::Live };
                ScoreRecord::new(r.sample_id.clone(), l, r.score).unwrap()
            })
            .collect();
        prop_assert!((auc(&flipped).unwrap() - (1.0 - base)).abs() < 1e-12);
    }

    #[test]
    fn counts_ignore_order(seed in any::<u64>(), n in 1usize..60, t in 0.0f64..=1.0) {
        let mut rng = RngStream::new(seed);
        let recs = random_records(&mut rng, n);
        let perm = rng.permutation(recs.len());
        let shuffled: Vec<ScoreRecord> = perm.iter().map(|&i| recs[i].clone()).collect();
        prop_assert_eq!(
            confusion_at_threshold(&recs, t).unwrap(),
            confusion_at_threshold(&shuffled, t).unwrap()
        );
    }

    #[test]
    fn report_is_consistent(seed in any::<u64>(), n in 1usize..60) {
        let recs = ensure_both(random_records(&mut RngStream::new(seed), n));
        let report = evaluate(&recs, 0.5).unwrap();
        prop_assert_eq!(report.acer, (report.apcer + report.bpcer) / 2.0);
        prop_assert_eq!(report.counts.tp + report.counts.fn_, recs.iter().filter(|r| r.label == Label::Live).count() as u64);
    }
}
