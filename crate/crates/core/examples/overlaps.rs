//! Overlaps and squares in prefixes of infinite words.

use wordsym::repetitions::{find_overlaps, find_squares};
use wordsym::WordSpec;

fn main() -> wordsym::Result<()> {
    for text in ["tm", "tbm:3,2", "fib", "champernowne"] {
        let prefix = WordSpec::parse(text)?.prefix(100_000)?;
        let overlaps = find_overlaps(&prefix, 5);
        let squares = find_squares(&prefix, 5);
        println!("{text}: {} overlaps, first squares:", overlaps.len());
        for o in &overlaps {
            println!("    overlap {} at {}", o.factor(), o.position);
        }
        for s in &squares {
            println!("    square ({})^2 at {}", s.root, s.position);
        }
    }
    Ok(())
}
