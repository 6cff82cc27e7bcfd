//! Random valid ensembles and label patterns shared by integration tests.
#![allow(dead_code)]

use bks_core::{rational, ColoringProblem, Ensemble, Povm, QubitOperator, QubitState};
use rand::seq::SliceRandom;
use rand::Rng;

/// Effects on a small rational grid: alpha in {1/8,...,1/2}, Bloch
/// components in {-1/4,...,1/4} with step 1/8.
pub fn random_grid_operator<R: Rng>(rng: &mut R) -> QubitOperator {
    let alpha = rng.gen_range(1..=4);
    let mut c = || (rng.gen_range(-2i64..=2), 8);
    QubitOperator::from_ratios((alpha, 8), [c(), c(), c()])
}

fn is_good(m: &QubitOperator) -> bool {
    m.is_psd() && !m.is_zero()
}

/// A valid POVM with `size` elements, reusing operators from `pool` often
/// enough to create coincidences across POVMs.
pub fn random_povm<R: Rng>(rng: &mut R, size: usize, pool: &[QubitOperator]) -> Option<Povm> {
    if size == 1 {
        return Some(Povm::new(vec![QubitOperator::identity()]));
    }
    for _ in 0..200 {
        let mut elements = Vec::with_capacity(size);
        for _ in 0..size - 1 {
            let m = match pool.choose(rng) {
                Some(m) if rng.gen_bool(0.5) => m.clone(),
                _ => random_grid_operator(rng),
            };
            elements.push(m);
        }
        let rest = Povm::new(elements.clone()).deficit();
        elements.push(rest);
        if elements.iter().all(is_good) {
            elements.shuffle(rng);
            return Some(Povm::new(elements));
        }
    }
    None
}

/// Valid ensemble with 1..=max_povms POVMs of 1..=max_elements elements.
pub fn random_ensemble<R: Rng>(rng: &mut R, max_povms: usize, max_elements: usize) -> Ensemble {
    loop {
        let count = rng.gen_range(1..=max_povms);
        let mut pool: Vec<QubitOperator> = vec![
            QubitOperator::scalar(rational(1, 2)),
            QubitOperator::from_ratios((1, 4), [(0, 1), (0, 1), (1, 4)]),
            QubitOperator::from_ratios((1, 4), [(0, 1), (0, 1), (-1, 4)]),
            QubitOperator::from_ratios((1, 4), [(1, 4), (0, 1), (0, 1)]),
            QubitOperator::from_ratios((1, 4), [(-1, 4), (0, 1), (0, 1)]),
        ];
        let mut povms = Vec::with_capacity(count);
        for _ in 0..count {
            let size = rng.gen_range(1..=max_elements);
            match random_povm(rng, size, &pool) {
                Some(p) => {
                    pool.extend(p.elements().iter().cloned());
                    povms.push(p);
                }
                None => break,
            }
        }
        if povms.len() == count {
            let e = Ensemble::new(format!("random-{count}"), povms);
            assert!(e.validate().is_valid());
            return e;
        }
    }
}

/// Any ensemble, valid or not, with small rational coefficients.
pub fn random_raw_ensemble<R: Rng>(rng: &mut R) -> Ensemble {
    let povms = (0..rng.gen_range(0..=4))
        .map(|_| {
            Povm::new(
                (0..rng.gen_range(0..=4))
                    .map(|_| {
                        let mut q = || (rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9));
                        QubitOperator::from_ratios(q(), [q(), q(), q()])
                    })
                    .collect(),
            )
        })
        .collect();
    let name: String = (0..rng.gen_range(0..8))
        .map(|_| *b"aZ \"\\#-".choose(rng).unwrap() as char)
        .collect();
    Ensemble::new(name, povms)
}

/// Label pattern with at most `max_slots` slots and labels drawn from a
/// small alphabet, so repeats and shared labels are common.
pub fn random_labels<R: Rng>(rng: &mut R, max_slots: usize) -> Vec<Vec<usize>> {
    loop {
        let povms = rng.gen_range(1..=5);
        let sizes: Vec<usize> = (0..povms).map(|_| rng.gen_range(1..=4)).collect();
        if sizes.iter().sum::<usize>() > max_slots {
            continue;
        }
        let alphabet = rng.gen_range(1..=8);
        return sizes
            .iter()
            .map(|&k| (0..k).map(|_| rng.gen_range(0..alphabet)).collect())
            .collect();
    }
}

pub fn random_labels_problem<R: Rng>(rng: &mut R, max_slots: usize) -> ColoringProblem {
    ColoringProblem::from_labels(&random_labels(rng, max_slots))
}

pub fn random_state<R: Rng>(rng: &mut R) -> QubitState {
    loop {
        let mut c = || (rng.gen_range(-4i64..=4), 4);
        if let Ok(s) = QubitState::from_ratios([c(), c(), c()]) {
            return s;
        }
    }
}

/// An effect `E` with `0 <= E <= 1` on the grid.
pub fn random_effect<R: Rng>(rng: &mut R) -> QubitOperator {
    loop {
        let m = random_grid_operator(rng);
        if m.is_effect() && !m.is_zero() && !m.complement().is_zero() {
            return m;
        }
    }
}
