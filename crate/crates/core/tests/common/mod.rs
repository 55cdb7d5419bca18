//! Shared helpers for the integration suites: an independent Kripke
//! evaluator that works straight from the forcing clauses, a singular-value
//! oracle that goes through Jacobi rotations instead of an SVD, and seeded
//! generators for random models and formulas.

#![allow(dead_code)] // each test binary uses its own subset

use std::collections::{BTreeMap, BTreeSet};

use iqlogic_core::kripke::KripkeModel;
use iqlogic_core::logic::{
    and, atom, implies, necessarily, not, or, possibly, xor, Proposition,
};
use iqlogic_core::rng::{self, Rng};
use num_complex::Complex64;

/// Reference forcing judgment, recomputed from the clauses at every call with
/// no sharing between subformulas — deliberately nothing like the set-based
/// engine, so agreement means something.
pub fn forces_ref(m: &KripkeModel, w: &str, p: &Proposition) -> bool {
    use Proposition::*;
    let successors = || {
        m.worlds()
            .iter()
            .filter(|v| m.le(w, v).unwrap())
            .map(String::as_str)
    };
    match p {
        Atom(l) | UndecidedAtom(l) => m.forcing_at(w).unwrap().contains(l),
        Not(q) => successors().all(|v| !forces_ref(m, v, q)),
        And(a, b) => forces_ref(m, w, a) && forces_ref(m, w, b),
        Or(a, b) => forces_ref(m, w, a) || forces_ref(m, w, b),
        Xor(a, b) => {
            let expanded = and(
                or((**a).clone(), (**b).clone()),
                or(not((**a).clone()), not((**b).clone())),
            );
            forces_ref(m, w, &expanded)
        }
        Implies(a, b) => successors().all(|v| !forces_ref(m, v, a) || forces_ref(m, v, b)),
        Possibly(q) => successors().any(|v| forces_ref(m, v, q)),
        Necessarily(q) => successors().all(|v| forces_ref(m, v, q)),
    }
}

pub const MODEL_ATOMS: [&str; 4] = ["p", "q", "r", "s"];

/// Random validated model: 2..=8 worlds in a DAG rooted at `w0`, random
/// atomic forcing closed upward along the edges.
pub fn random_model(rng: &mut Rng) -> KripkeModel {
    let n = 2 + rng::uniform_index(rng, 7) as usize;
    let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let atom_count = 2 + rng::uniform_index(rng, 3) as usize;
    let atoms: Vec<String> = MODEL_ATOMS[..atom_count]
        .iter()
        .map(|s| s.to_string())
        .collect();

    // edges only run from lower to higher index, so the order is acyclic
    let mut order: Vec<(String, String)> = Vec::new();
    for j in 1..n {
        order.push((worlds[0].clone(), worlds[j].clone()));
        for i in 1..j {
            if rng::uniform_index(rng, 100) < 35 {
                order.push((worlds[i].clone(), worlds[j].clone()));
            }
        }
    }

    let mut forced: Vec<BTreeSet<String>> = (0..n)
        .map(|i| {
            let chance = if i == 0 { 10 } else { 30 };
            atoms
                .iter()
                .filter(|_| rng::uniform_index(rng, 100) < chance)
                .cloned()
                .collect()
        })
        .collect();
    // close upward; edge targets ascend, so one pass settles transitivity
    for j in 1..n {
        for (lo, hi) in &order {
            if hi == &worlds[j] {
                let i: usize = lo[1..].parse().unwrap();
                let extra: Vec<String> = forced[i].iter().cloned().collect();
                forced[j].extend(extra);
            }
        }
    }

    let forcing: BTreeMap<String, BTreeSet<String>> = worlds
        .iter()
        .cloned()
        .zip(forced)
        .collect();
    KripkeModel::new(
        worlds,
        "w0",
        order,
        forcing,
        atoms.into_iter().collect(),
        BTreeSet::new(),
    )
    .expect("generated model is valid by construction")
}

/// Random formula over `atoms` with nesting depth at most `depth`.
pub fn random_formula(rng: &mut Rng, atoms: &[String], depth: usize) -> Proposition {
    if depth == 0 || rng::uniform_index(rng, 100) < 25 {
        let i = rng::uniform_index(rng, atoms.len() as u64) as usize;
        return atom(&atoms[i]);
    }
    let choice = rng::uniform_index(rng, 7);
    let mut sub = || random_formula(rng, atoms, depth - 1);
    match choice {
        0 => not(sub()),
        1 => and(sub(), sub()),
        2 => or(sub(), sub()),
        3 => xor(sub(), sub()),
        4 => implies(sub(), sub()),
        5 => possibly(sub()),
        _ => necessarily(sub()),
    }
}

/// Singular values of a complex matrix by a route that shares nothing with
/// an SVD routine: form the Gram matrix, embed it as a real symmetric matrix
/// (doubling every eigenvalue), diagonalize with cyclic Jacobi rotations and
/// take square roots. Returned in descending order.
pub fn singular_values_ref(rows: &[Vec<Complex64>]) -> Vec<f64> {
    let n = rows.len();
    let m = 2 * n;
    let mut s = vec![vec![0.0f64; m]; m];
    for i in 0..n {
        for j in 0..n {
            let g: Complex64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b.conj()).sum();
            s[i][j] = g.re;
            s[n + i][n + j] = g.re;
            s[i][n + j] = -g.im;
            s[n + i][j] = g.im;
        }
    }
    jacobi_diagonalize(&mut s);
    let mut eigs: Vec<f64> = (0..m).map(|i| s[i][i]).collect();
    eigs.sort_by(|a, b| b.total_cmp(a));
    // the embedding doubles each eigenvalue; keep one of each pair
    eigs.into_iter()
        .step_by(2)
        .map(|l| l.max(0.0).sqrt())
        .collect()
}

fn jacobi_diagonalize(s: &mut [Vec<f64>]) {
    let n = s.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| s[i][j] * s[i][j])
            .sum();
        if off < 1e-28 {
            return;
        }
        for p in 0..n {
            for q in p + 1..n {
                if s[p][q].abs() < 1e-300 {
                    continue;
                }
                let tau = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                for row in s.iter_mut() {
                    let (rp, rq) = (row[p], row[q]);
                    row[p] = c * rp - sn * rq;
                    row[q] = sn * rp + c * rq;
                }
                let (top, bottom) = s.split_at_mut(q);
                let (row_p, row_q) = (&mut top[p], &mut bottom[0]);
                for (spk, sqk) in row_p.iter_mut().zip(row_q.iter_mut()) {
                    let (a, b) = (*spk, *sqk);
                    *spk = c * a - sn * b;
                    *sqk = sn * a + c * b;
                }
            }
        }
    }
}

/// Random state whose squared amplitudes are exact rationals `k_n / total`,
/// together with the canonical weights realizing them.
pub fn random_rational_state(
    rng: &mut Rng,
    dim: usize,
    extra_budget: u64,
) -> (iqlogic_core::StateVector, iqlogic_core::WeightVector) {
    let mut parts = vec![1u64; dim];
    for _ in 0..rng::uniform_index(rng, extra_budget.max(1)) {
        let i = rng::uniform_index(rng, dim as u64) as usize;
        parts[i] += 1;
    }
    let total: u64 = parts.iter().sum();
    let labels: Vec<String> = (1..=dim).map(|i| format!("a{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let amps: Vec<f64> = parts
        .iter()
        .map(|&k| (k as f64 / total as f64).sqrt())
        .collect();
    let s = iqlogic_core::StateVector::from_real(&amps, &refs).unwrap();
    let w = iqlogic_core::WeightVector::new(parts).unwrap();
    (s, w)
}
