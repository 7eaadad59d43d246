//! Factor complexity C(n) and its differences, with the certified range.
//!
//!     cargo run --example factor_complexity -- fib 20

use wordsym::{stabilize, WordSpec};

fn main() -> wordsym::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = WordSpec::parse(&args.next().unwrap_or_else(|| "tm".into()))?;
    let n_max: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(16);

    let idx = stabilize(&spec, n_max + 2)?;
    println!(
        "prefix {} letters, trusted up to n = {}",
        idx.text().len(),
        idx.trusted_n()
    );
    println!("{:>3} {:>6} {:>4} {:>4}  bispecial", "n", "C", "dC", "d2C");
    for n in 0..=n_max {
        let bispecial: Vec<String> = idx
            .factors(n)
            .filter(|f| f.is_bispecial())
            .map(|f| {
                format!(
                    "{}({:+})",
                    wordsym::Word::from(f.word()),
                    idx.bilateral_order(f.word()).unwrap()
                )
            })
            .collect();
        println!(
            "{n:>3} {:>6} {:>4} {:>4}  {}",
            idx.complexity(n)?,
            idx.delta_c(n)?,
            idx.delta2_c(n)?,
            bispecial.join(" ")
        );
    }
    Ok(())
}
