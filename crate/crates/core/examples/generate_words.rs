//! Prefixes of the built-in infinite words.
//!
//!     cargo run --example generate_words -- 40

use wordsym::generators::{fixed_point_prefix, Substitution};
use wordsym::{Word, WordSpec};

fn main() -> wordsym::Result<()> {
    let len: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(32);
    for text in [
        "tm",
        "fib",
        "tbm:3,2",
        "tbm:4,2",
        "example62",
        "champernowne",
        "periodic:0012",
    ] {
        let spec = WordSpec::parse(text)?;
        println!("{text:>14}  {}", spec.prefix(len)?);
    }

    // Any substitution works, given in the same text format the CLI reads.
    let s = Substitution::parse_text("0 -> 012\n1 -> 02\n2 -> 0\n")?;
    let w = fixed_point_prefix(&s, 0, len)?;
    println!("{:>14}  {}", "0>012,1>02,2>0", Word::from(&w[..len]));
    Ok(())
}
