use crate::formula::{Assignment, Instance, Literal};

use super::SolveOutcome;

struct Search<'a> {
    clauses: Vec<&'a [Literal]>,
    order: Vec<u32>,
    value: Vec<Option<bool>>,
    trail: Vec<u32>,
}

impl Search<'_> {
    fn lit(&self, l: Literal) -> Option<bool> {
        self.value[l.var() as usize].map(|v| l.value_of(v))
    }

    fn assign(&mut self, var: u32, v: bool) {
        self.value[var as usize] = Some(v);
        self.trail.push(var);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail");
            self.value[v as usize] = None;
        }
    }

    /// Unit propagation by clause scanning; false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.clauses.len() {
                let mut unassigned = None;
                let mut open = 0;
                let mut sat = false;
                for &l in self.clauses[i] {
                    match self.lit(l) {
                        Some(true) => {
                            sat = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            open += 1;
                            unassigned = Some(l);
                        }
                    }
                }
                if sat {
                    continue;
                }
                match open {
                    0 => return false,
                    1 => {
                        let l = unassigned.expect("one open literal");
                        self.assign(l.var(), l.is_positive());
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn solve(&mut self) -> bool {
        if !self.propagate() {
            return false;
        }
        let Some(&var) = self.order.iter().find(|&&v| self.value[v as usize].is_none()) else {
            return true;
        };
        for choice in [true, false] {
            let mark = self.trail.len();
            self.assign(var, choice);
            if self.solve() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Complete backtracking search with unit propagation. Branches on the
/// lowest-index unassigned occurring variable, true first.
pub fn dpll(f: &Instance) -> SolveOutcome {
    let n = f.num_vars();
    let mut s = Search {
        clauses: f.clauses().iter().map(|c| c.literals()).collect(),
        order: f.occurring_vars(),
        value: vec![None; n + 1],
        trail: Vec::new(),
    };
    if !s.solve() {
        return SolveOutcome::Unsatisfiable;
    }
    let bits = (1..=n).map(|v| s.value[v].unwrap_or(false)).collect();
    SolveOutcome::Satisfiable(Assignment::from_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{random_instance, Clause, GeneratorMode, Mode};
    use crate::oracle::brute_decide;

    #[test]
    fn empty_instance_is_satisfiable() {
        assert!(dpll(&Instance::empty(4)).is_sat());
    }

    #[test]
    fn pigeonhole_three_into_two() {
        // p(i,j): pigeon i in hole j, var 2*(i-1)+j
        let p = |i: i64, j: i64| 2 * (i - 1) + j;
        let mut clauses: Vec<Clause> = (1..=3).map(|i| Clause::from_dimacs(&[p(i, 1), p(i, 2)]).unwrap()).collect();
        for j in 1..=2 {
            for a in 1..=3 {
                for b in a + 1..=3 {
                    clauses.push(Clause::from_dimacs(&[-p(a, j), -p(b, j)]).unwrap());
                }
            }
        }
        let f = Instance::new(6, clauses).unwrap();
        assert_eq!(dpll(&f), SolveOutcome::Unsatisfiable);
    }

    #[test]
    fn agrees_with_oracle() {
        for seed in 0..300u64 {
            let n = 3 + seed as usize % 18;
            let m = (n as f64 * [2.0, 4.3, 6.0][seed as usize % 3]) as usize;
            let f = random_instance(n, 3, m, GeneratorMode::Uniform, seed).unwrap().instance;
            let got = dpll(&f);
            assert_eq!(got.is_sat(), brute_decide(&f, Mode::Sat).unwrap().is_some(), "seed {seed}");
            if let Some(a) = got.assignment() {
                assert!(f.is_satisfied_by(a, Mode::Sat));
            }
        }
    }
}
