//! Metrics for prediction files scored against dataset labels.

use std::path::Path;

use crate::datagen::Split;
use crate::error::{Error, Result};

/// Probabilities at or above this count as positive predictions.
pub const THRESHOLD: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct Prediction {
    pub word: String,
    pub gold: bool,
    pub prob: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_score: f64,
    pub brier: f64,
    /// `None` when one class is absent.
    pub auc: Option<f64>,
}

/// Parses `string<TAB>gold<TAB>prob` lines with gold `TRUE` or `FALSE`.
pub fn parse_predictions(text: &str, path: &Path) -> Result<Vec<Prediction>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let bad = |msg: String| Error::Record {
                path: path.to_path_buf(),
                line: i + 1,
                msg,
            };
            let mut parts = line.split('\t');
            let (Some(word), Some(gold), Some(prob), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
                return Err(bad("expected string<TAB>gold<TAB>prob".into()));
            };
            let gold = match gold {
                "TRUE" => true,
                "FALSE" => false,
                other => return Err(bad(format!("gold label {other:?} is not TRUE or FALSE"))),
            };
            let prob: f64 = prob.trim().parse().map_err(|_| bad(format!("probability {prob:?} is not a number")))?;
            if !(0.0..=1.0).contains(&prob) {
                return Err(bad(format!("probability {prob} is outside [0, 1]")));
            }
            Ok(Prediction {
                word: word.to_string(),
                gold,
                prob,
            })
        })
        .collect()
}

/// Checks that predictions list the split's records, in order.
pub fn check_against_split(preds: &[Prediction], split: &Split, path: &Path) -> Result<()> {
    if preds.len() != split.records.len() {
        return Err(Error::CountMismatch {
            expected: split.records.len(),
            found: preds.len(),
        });
    }
    for (i, (p, r)) in preds.iter().zip(&split.records).enumerate() {
        if p.word != r.word || p.gold != r.label {
            return Err(Error::Record {
                path: path.to_path_buf(),
                line: i + 1,
                msg: format!("prediction for {:?} does not match split record {:?}", p.word, r.word),
            });
        }
    }
    Ok(())
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Area under the ROC curve by the rank-sum formula with midranks for ties.
pub fn auc(preds: &[Prediction]) -> Option<f64> {
    let pos = preds.iter().filter(|p| p.gold).count();
    let neg = preds.len() - pos;
    if pos == 0 || neg == 0 {
        return None;
    }
    let mut order: Vec<&Prediction> = preds.iter().collect();
    order.sort_by(|a, b| a.prob.total_cmp(&b.prob));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && order[j].prob == order[i].prob {
            j += 1;
        }
        let midrank = (i + 1 + j) as f64 / 2.0;
        rank_sum += midrank * order[i..j].iter().filter(|p| p.gold).count() as f64;
        i = j;
    }
    let pos_f = pos as f64;
    Some((rank_sum - pos_f * (pos_f + 1.0) / 2.0) / (pos_f * neg as f64))
}

pub fn score(preds: &[Prediction]) -> Result<Metrics> {
    if preds.is_empty() {
        return Err(Error::Param("no predictions to score".into()));
    }
    if let Some(p) = preds.iter().find(|p| !(0.0..=1.0).contains(&p.prob)) {
        return Err(Error::Param(format!("probability {} is outside [0, 1]", p.prob)));
    }
    let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
    let mut sq = 0.0;
    for p in preds {
        match (p.prob >= THRESHOLD, p.gold) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, false) => tn += 1,
            (false, true) => fn_ += 1,
        }
        let g = if p.gold { 1.0 } else { 0.0 };
        sq += (p.prob - g) * (p.prob - g);
    }
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f_score = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(Metrics {
        accuracy: ratio(tp + tn, preds.len()),
        precision,
        recall,
        f_score,
        brier: sq / preds.len() as f64,
        auc: auc(preds),
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn preds(rows: &[(bool, f64)]) -> Vec<Prediction> {
        rows.iter()
            .enumerate()
            .map(|(i, &(gold, prob))| Prediction {
                word: format!("w{i}"),
                gold,
                prob,
            })
            .collect()
    }

    /// Fraction of (positive, negative) pairs ranked correctly, ties half.
    fn auc_by_pairs(ps: &[Prediction]) -> Option<f64> {
        let (mut wins, mut total) = (0.0, 0.0);
        for p in ps.iter().filter(|p| p.gold) {
            for n in ps.iter().filter(|p| !p.gold) {
                total += 1.0;
                wins += if p.prob > n.prob {
                    1.0
                } else if p.prob == n.prob {
                    0.5
                } else {
                    0.0
                };
            }
        }
        (total > 0.0).then(|| wins / total)
    }

    #[test]
    fn toy_file() {
        let m = score(&preds(&[(true, 0.9), (true, 0.4), (false, 0.6), (false, 0.1)])).unwrap();
        assert_eq!(m.accuracy, 0.5);
        assert!((m.brier - 0.185).abs() < 1e-15);
        assert_eq!(m.auc, Some(0.75));
        assert_eq!((m.precision, m.recall, m.f_score), (0.5, 0.5, 0.5));
    }

    #[test]
    fn perfect_and_uniform() {
        let m = score(&preds(&[(true, 1.0), (false, 0.0), (true, 1.0), (false, 0.0)])).unwrap();
        assert_eq!((m.accuracy, m.brier, m.auc), (1.0, 0.0, Some(1.0)));
        let m = score(&preds(&[(true, 0.5), (false, 0.5), (true, 0.5), (false, 0.5)])).unwrap();
        assert_eq!((m.accuracy, m.brier, m.auc), (0.5, 0.25, Some(0.5)));
        assert_eq!(m.recall, 1.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(score(&[]).is_err());
        let m = score(&preds(&[(false, 0.2)])).unwrap();
        assert_eq!((m.precision, m.recall, m.f_score, m.auc), (0.0, 0.0, 0.0, None));
        assert!(score(&preds(&[(true, 1.2)])).is_err());
    }

    #[test]
    fn parsing() {
        let path = Path::new("p.tsv");
        let ps = parse_predictions("ab\tTRUE\t0.75\nba\tFALSE\t0\n", path).unwrap();
        assert_eq!(ps[0].prob, 0.75);
        assert!(!ps[1].gold);
        for bad in ["ab\tTRUE\n", "ab\tyes\t0.5\n", "ab\tTRUE\t2\n", "ab\tTRUE\tx\n"] {
            assert!(matches!(parse_predictions(bad, path), Err(Error::Record { line: 1, .. })), "{bad}");
        }
    }

    #[test]
    fn split_alignment() {
        use crate::datagen::{Record, SizeClass, SplitKind};
        let split = Split {
            kind: SplitKind::Train,
            size: SizeClass::Small,
            records: vec![Record::new("w0", true), Record::new("w1", false)],
        };
        let path = Path::new("p.tsv");
        assert!(check_against_split(&preds(&[(true, 0.9), (false, 0.2)]), &split, path).is_ok());
        assert!(matches!(
            check_against_split(&preds(&[(true, 0.9)]), &split, path),
            Err(Error::CountMismatch { expected: 2, found: 1 })
        ));
        assert!(check_against_split(&preds(&[(true, 0.9), (true, 0.2)]), &split, path).is_err());
    }

    fn arb_preds() -> impl Strategy<Value = Vec<Prediction>> {
        proptest::collection::vec((any::<bool>(), 0u32..=20), 1..200)
            .prop_map(|rows| preds(&rows.into_iter().map(|(g, p)| (g, p as f64 / 20.0)).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn rank_auc_matches_pairs(ps in arb_preds()) {
            match (auc(&ps), auc_by_pairs(&ps)) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() < 1e-12),
                (a, b) => prop_assert_eq!(a, b),
            }
        }

        #[test]
        fn label_swap_symmetry(ps in arb_preds()) {
            let ps: Vec<Prediction> = ps.into_iter().filter(|p| p.prob != THRESHOLD).collect();
            prop_assume!(!ps.is_empty());
            let swapped: Vec<Prediction> = ps
                .iter()
                .map(|p| Prediction { word: p.word.clone(), gold: !p.gold, prob: 1.0 - p.prob })
                .collect();
            let (a, b) = (score(&ps).unwrap(), score(&swapped).unwrap());
            prop_assert_eq!(a.accuracy, b.accuracy);
            prop_assert!((a.brier - b.brier).abs() < 1e-12);
        }
    }
}
