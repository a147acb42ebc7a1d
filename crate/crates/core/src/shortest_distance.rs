//! Generalized shortest distance: the `⊕`-sum over successful paths of
//! `λ ⊗ w[π] ⊗ ρ`, and the weight mappings into the entropy semiring.

use crate::automaton::Label;
use crate::error::{Error, Result};
use crate::scc::{tarjan, Digraph};
use crate::semiring::{PairWeight, Semiring};
use crate::weighted::WeightedAutomaton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Components in topological order: acyclic parts are exact, cyclic
    /// components are relaxed until stable.
    #[default]
    Auto,
    /// Relaxation of the whole graph at once, even when it is acyclic.
    Iterative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceOptions {
    /// Convergence threshold on the largest change in one sweep.
    pub tol: f64,
    pub max_iter: usize,
    pub strategy: Strategy,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions { tol: 1e-10, max_iter: 1_000_000, strategy: Strategy::Auto }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Distance<W> {
    pub total: W,
    /// Relaxation sweeps performed, summed over components.
    pub iterations: usize,
    /// Largest change in the last sweep (0 when everything was exact).
    pub residual: f64,
}

/// Total weight of `w`. Epsilon-cycles are rejected.
pub fn shortest_distance<W: Semiring>(w: &WeightedAutomaton<W>, opts: &DistanceOptions) -> Result<Distance<W>> {
    let a = w.skeleton();
    if a.has_epsilon_cycle() {
        return Err(Error::EpsilonCycleInput);
    }
    let forward = match opts.strategy {
        Strategy::Auto => by_components(w, opts)?,
        Strategy::Iterative => jacobi(w, opts)?,
    };
    let (d, iterations, residual) = forward;
    let total = (0..a.num_states())
        .filter(|&q| a.is_final(q))
        .fold(W::zero(), |acc, q| acc.plus(&d[q].times(w.final_weight(q))));
    Ok(Distance { total, iterations, residual })
}

type Forward<W> = (Vec<W>, usize, f64);

fn initial_vector<W: Semiring>(w: &WeightedAutomaton<W>) -> Vec<W> {
    let a = w.skeleton();
    (0..a.num_states())
        .map(|q| if a.is_initial(q) { w.initial_weight(q).clone() } else { W::zero() })
        .collect()
}

fn by_components<W: Semiring>(w: &WeightedAutomaton<W>, opts: &DistanceOptions) -> Result<Forward<W>> {
    let a = w.skeleton();
    let n = a.num_states();
    let comps = tarjan(&Digraph::from_edges(n, a.transitions().iter().map(|t| (t.src, t.dst))));
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); comps.count];
    for q in 0..n {
        members[comps.component[q]].push(q);
    }
    // transitions inside each component, grouped by destination
    let mut internal: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, t) in a.transitions().iter().enumerate() {
        if comps.component[t.src] == comps.component[t.dst] {
            internal[t.dst].push(i);
        }
    }
    let mut acc = initial_vector(w);
    let mut d = vec![W::zero(); n];
    let mut iterations = 0;
    let mut residual: f64 = 0.0;
    // higher component numbers come first in topological order
    for c in (0..comps.count).rev() {
        let qs = &members[c];
        let cyclic = qs.len() > 1 || !internal[qs[0]].is_empty();
        if cyclic {
            for &q in qs {
                d[q] = acc[q].clone();
            }
            let mut sweeps = 0;
            loop {
                let mut change: f64 = 0.0;
                for &q in qs {
                    let v = internal[q]
                        .iter()
                        .fold(acc[q].clone(), |s, &i| s.plus(&d[a.transition(i).src].times(w.weight(i))));
                    change = change.max(v.distance(&d[q]));
                    d[q] = v;
                }
                sweeps += 1;
                iterations += 1;
                if !change.is_finite() {
                    return Err(Error::NonConvergent { iterations, residual: change });
                }
                if change <= opts.tol {
                    residual = residual.max(change);
                    break;
                }
                if sweeps >= opts.max_iter {
                    return Err(Error::NonConvergent { iterations, residual: change });
                }
            }
        } else {
            d[qs[0]] = acc[qs[0]].clone();
        }
        for &q in qs {
            for i in a.out_range(q) {
                let t = a.transition(i);
                if comps.component[t.dst] != c {
                    acc[t.dst] = acc[t.dst].plus(&d[q].times(w.weight(i)));
                }
            }
        }
    }
    Ok((d, iterations, residual))
}

fn jacobi<W: Semiring>(w: &WeightedAutomaton<W>, opts: &DistanceOptions) -> Result<Forward<W>> {
    let a = w.skeleton();
    let init = initial_vector(w);
    let mut d = init.clone();
    let mut iterations = 0;
    loop {
        let mut next = init.clone();
        for (i, t) in a.transitions().iter().enumerate() {
            next[t.dst] = next[t.dst].plus(&d[t.src].times(w.weight(i)));
        }
        let change = next.iter().zip(&d).map(|(x, y)| x.distance(y)).fold(0.0, f64::max);
        d = next;
        iterations += 1;
        if !change.is_finite() {
            return Err(Error::NonConvergent { iterations, residual: change });
        }
        if change <= opts.tol {
            return Ok((d, iterations, change));
        }
        if iterations >= opts.max_iter {
            return Err(Error::NonConvergent { iterations, residual: change });
        }
    }
}

fn check_transition_weight(w: f64) -> Result<f64> {
    if w.is_nan() || w <= 0.0 {
        Err(Error::NonPositiveWeight(w))
    } else {
        Ok(w)
    }
}

fn entropy_pair(w: f64) -> PairWeight {
    if w == 0.0 {
        PairWeight::zero()
    } else {
        PairWeight::new(w, -w * w.ln())
    }
}

/// `w ↦ (w, -w ln w)` on transitions, initial and final weights.
pub fn map_entropy(w: &WeightedAutomaton<f64>) -> Result<WeightedAutomaton<PairWeight>> {
    let state = |&x: &f64| if x < 0.0 || x.is_nan() { Err(Error::WeightOutOfRange(x)) } else { Ok(entropy_pair(x)) };
    w.map(|_, &x| check_transition_weight(x).map(entropy_pair), state, state)
}

/// `w ↦ (w, w)` on symbol transitions and `w ↦ (w, 0)` on epsilon-transitions,
/// initial and final weights, so that second components count string length.
pub fn map_expectation(w: &WeightedAutomaton<f64>) -> Result<WeightedAutomaton<PairWeight>> {
    let state = |&x: &f64| if x < 0.0 || x.is_nan() { Err(Error::WeightOutOfRange(x)) } else { Ok(PairWeight::new(x, 0.0)) };
    w.map(
        |t, &x| {
            let x = check_transition_weight(x)?;
            Ok(match t.label {
                Label::Eps => PairWeight::new(x, 0.0),
                Label::Sym(_) => PairWeight::new(x, x),
            })
        },
        state,
        state,
    )
}
