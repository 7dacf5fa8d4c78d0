//! Enumeration of the models of a finite axiom set.
//!
//! A model is a subset `α` of the generators such that no axiom `A ⊢₀ B`
//! has `A ⊆ α` and `B ∩ α = ∅`. The search decides generators one at a
//! time and propagates forced choices, so Horn-like theories with few
//! models stay cheap even on large universes.

use alloc::vec::Vec;

use crate::error::{cap, Result};
use crate::sets::FinSet;

pub(crate) fn enumerate(n: usize, axioms: &[(FinSet, FinSet)], max_models: usize) -> Result<Vec<FinSet>> {
    let axioms: Vec<(u64, u64)> =
        axioms.iter().filter(|(a, b)| !a.meets(*b)).map(|(a, b)| (a.bits(), b.bits())).collect();
    let mut search = Search { full: FinSet::full(n).bits(), axioms, out: Vec::new(), max_models };
    search.run(0, 0)?;
    let mut models = search.out;
    models.sort_unstable();
    Ok(models)
}

struct Search {
    full: u64,
    axioms: Vec<(u64, u64)>,
    out: Vec<FinSet>,
    max_models: usize,
}

impl Search {
    /// Unit propagation; `None` on conflict.
    fn propagate(&self, mut inn: u64, mut out: u64) -> Option<(u64, u64)> {
        loop {
            let mut changed = false;
            for &(a, b) in &self.axioms {
                if b & inn != 0 || a & out != 0 {
                    continue;
                }
                let open_a = a & !inn;
                let open_b = b & !out;
                match (open_a == 0, open_b == 0) {
                    (true, true) => return None,
                    (true, false) if open_b.count_ones() == 1 => {
                        inn |= open_b;
                        changed = true;
                    }
                    (false, true) if open_a.count_ones() == 1 => {
                        out |= open_a;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some((inn, out));
            }
        }
    }

    fn run(&mut self, inn: u64, out: u64) -> Result<()> {
        let Some((inn, out)) = self.propagate(inn, out) else {
            return Ok(());
        };
        let open = self.full & !(inn | out);
        if open == 0 {
            self.out.push(FinSet::from_bits(inn));
            return cap("model count", self.max_models, self.out.len());
        }
        let bit = open & open.wrapping_neg();
        self.run(inn | bit, out)?;
        self.run(inn, out | bit)
    }
}
