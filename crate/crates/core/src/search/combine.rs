use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::SearchRng;

const TIE_EPS: f64 = 1e-12;

/// One voted position of a combination.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VoteStep {
    /// 1-based position in the trial.
    pub position: usize,
    pub candidates: [u32; 2],
    /// l1 departure from the target weights if parent 1 / parent 2 donated.
    pub departures: [f64; 2],
    /// 0 for parent 1, 1 for parent 2.
    pub donor: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Combination {
    pub trial: Vec<u32>,
    pub weights: [f64; 2],
    pub votes: [u32; 2],
    pub steps: Vec<VoteStep>,
}

/// Min-max vote combination. Each position takes the next unused element of one
/// parent, keeping the donor vote shares as close as possible to the weights
/// `[mtat2, mtat1] / (mtat1 + mtat2)`; the better parent gets the larger weight.
pub fn combine_solutions(p1: &[u32], p2: &[u32], mtat1: f64, mtat2: f64, rng: &mut SearchRng) -> Result<Combination> {
    if p1.len() != p2.len() {
        return Err(Error::invalid(format!(
            "parents differ in length ({} vs {})",
            p1.len(),
            p2.len()
        )));
    }
    if !(mtat1 > 0.0 && mtat2 > 0.0) {
        return Err(Error::invalid("parent objective values must be positive"));
    }
    let n = p1.len();
    let max_id = p1.iter().chain(p2).copied().max().unwrap_or(0) as usize;
    let mut in_p1 = vec![false; max_id + 1];
    for &id in p1 {
        if std::mem::replace(&mut in_p1[id as usize], true) {
            return Err(Error::invalid(format!("id {id} repeated in first parent")));
        }
    }
    let mut in_p2 = vec![false; max_id + 1];
    for &id in p2 {
        if !in_p1[id as usize] || std::mem::replace(&mut in_p2[id as usize], true) {
            return Err(Error::invalid("parents are not permutations of the same ids"));
        }
    }

    let total = mtat1 + mtat2;
    let w = [mtat2 / total, mtat1 / total];
    let mut used = vec![false; max_id + 1];
    let (mut c1, mut c2) = (0usize, 0usize);
    let mut votes = [0u32; 2];
    let mut trial = Vec::with_capacity(n);
    let mut steps = Vec::new();

    while trial.len() < n {
        while used[p1[c1] as usize] {
            c1 += 1;
        }
        while used[p2[c2] as usize] {
            c2 += 1;
        }
        let (a, b) = (p1[c1], p2[c2]);
        if a == b {
            used[a as usize] = true;
            trial.push(a);
            continue;
        }
        let sum = f64::from(votes[0] + votes[1] + 1);
        let departure = |j: usize| -> f64 {
            (0..2)
                .map(|i| {
                    let v = f64::from(votes[i] + u32::from(i == j));
                    (v / sum - w[i]).abs()
                })
                .sum()
        };
        let d = [departure(0), departure(1)];
        let donor = if (d[0] - d[1]).abs() <= TIE_EPS {
            rng.gen_range(0..2)
        } else if d[0] < d[1] {
            0
        } else {
            1
        };
        let pick = if donor == 0 { a } else { b };
        votes[donor] += 1;
        used[pick as usize] = true;
        trial.push(pick);
        steps.push(VoteStep {
            position: trial.len(),
            candidates: [a, b],
            departures: d,
            donor,
        });
    }
    Ok(Combination {
        trial,
        weights: w,
        votes,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn worked_trace() {
        let mut r = rng::stream(0, &[]);
        let c = combine_solutions(&[3, 1, 6, 4, 5, 2], &[3, 4, 6, 1, 5, 2], 1569.50, 1829.17, &mut r).unwrap();
        assert_eq!(format!("{:.2} {:.2}", c.weights[0], c.weights[1]), "0.54 0.46");
        let s = &c.steps[0];
        assert_eq!((s.position, s.candidates, s.donor), (2, [1, 4], 0));
        assert_eq!(format!("{:.2} {:.2}", s.departures[0], s.departures[1]), "0.92 1.08");
        let s = &c.steps[1];
        assert_eq!((s.position, s.candidates, s.donor), (3, [6, 4], 1));
        assert_eq!(format!("{:.2}", s.departures[1]), "0.08");
        assert_eq!(&c.trial[..3], &[3, 1, 4]);
    }

    #[test]
    fn identical_parents_pass_through() {
        let mut r = rng::stream(0, &[]);
        let p = [4, 2, 1, 3];
        let c = combine_solutions(&p, &p, 10.0, 10.0, &mut r).unwrap();
        assert_eq!(c.trial, p);
        assert_eq!(c.votes, [0, 0]);
        assert!(c.steps.is_empty());
    }

    #[test]
    fn bad_parents() {
        let mut r = rng::stream(0, &[]);
        assert!(combine_solutions(&[1, 2], &[1, 2, 3], 1.0, 1.0, &mut r).is_err());
        assert!(combine_solutions(&[1, 2], &[1, 3], 1.0, 1.0, &mut r).is_err());
        assert!(combine_solutions(&[1, 2], &[2, 1], 0.0, 1.0, &mut r).is_err());
    }
}
