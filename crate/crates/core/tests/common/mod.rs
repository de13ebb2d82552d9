#![allow(dead_code)]

use dofsim::assignment::MessageAssignment;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random assignment with every `T_i` of local shape and `|T_i| <= 2`.
pub fn random_local_assignment<R: Rng>(rng: &mut R, k: usize) -> MessageAssignment {
    let sets = (1..=k)
        .map(|i| {
            let i = i as isize;
            let choices: Vec<Vec<usize>> = [
                vec![i - 1],
                vec![i],
                vec![i - 2, i - 1],
                vec![i - 1, i],
                vec![i, i + 1],
            ]
            .into_iter()
            .filter(|s| s.iter().all(|&t| t >= 1 && t <= k as isize))
            .map(|s| s.into_iter().map(|t| t as usize).collect())
            .collect();
            choices.choose(rng).unwrap().clone()
        })
        .collect();
    MessageAssignment::new(k, sets).unwrap()
}

/// Random cell association with `T_i` in `{{i-1}, {i}}`.
pub fn random_cell_association<R: Rng>(rng: &mut R, k: usize) -> MessageAssignment {
    let sets = (1..=k)
        .map(|i| {
            if i > 1 && rng.gen_bool(0.5) {
                vec![i - 1]
            } else {
                vec![i]
            }
        })
        .collect();
    MessageAssignment::new(k, sets).unwrap()
}
