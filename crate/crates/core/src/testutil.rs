use proptest::prelude::*;

use crate::automaton::NONE;
use crate::{Alphabet, Dfa};

prop_compose! {
    /// Random partial DFAs with state 0 as the start.
    pub fn arb_dfa(max_states: usize, max_k: usize)
        (n in 1..=max_states, k in 1..=max_k)
        (trans in proptest::collection::vec(proptest::option::weighted(0.8, 0..n as u32), n * k),
         finals in proptest::collection::vec(any::<bool>(), n),
         k in Just(k))
        -> Dfa
    {
        let trans = trans.into_iter().map(|t| t.unwrap_or(NONE)).collect();
        Dfa::from_parts(Alphabet::prefix(k).unwrap(), 0, finals, trans)
    }
}
