//! Longest square-free rich words, interrupted and resumed through a
//! checkpoint.
//!
//!     cargo run --release --example squarefree_search -- 5

use wordsym::repetitions::{resume_search, search_squarefree_rich, SearchResult};
use wordsym::Symmetry;

fn main() -> wordsym::Result<()> {
    let k: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4);
    let mut state = search_squarefree_rich(k, &Symmetry::reversal(k), 500)?;
    let mut rounds = 1;
    while !state.exhausted {
        // Round-trip through text, as a restarted process would.
        let checkpoint = state.to_checkpoint();
        state = resume_search(&SearchResult::from_checkpoint(&checkpoint)?, 500)?;
        rounds += 1;
    }
    println!(
        "k = {k}: r = {} after {} nodes in {rounds} rounds",
        state.r, state.nodes
    );
    for w in &state.witnesses {
        println!("    {w}");
    }
    Ok(())
}
