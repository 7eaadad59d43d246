//! Θ-defect along prefixes for a few words and antimorphisms.

use wordsym::palindromics::{defect_curve, word_defect};
use wordsym::symmetry::parse_symmetries;
use wordsym::{Symmetry, WordSpec};

fn main() -> wordsym::Result<()> {
    let exchange = parse_symmetries("a:0>1,1>0", 2)?.remove(0);
    let cases = [
        ("fib", Symmetry::reversal(2)),
        ("periodic:0010", Symmetry::reversal(2)),
        ("tm", Symmetry::reversal(2)),
        ("tm", exchange),
    ];
    for (text, theta) in cases {
        let curve = word_defect(&WordSpec::parse(text)?, &theta, 50_000)?;
        println!(
            "{text:>14} under {theta:<12} sup {:>5}, {:>5} increases, last at {:>6}, {:?}",
            curve.sup,
            curve.increments,
            curve.last_increase_at.map_or("-".into(), |i| i.to_string()),
            curve.verdict
        );
    }

    // A short word where every step is visible.
    let w: wordsym::Word = "0100110".parse()?;
    let curve = defect_curve(&Symmetry::reversal(2), &w)?;
    println!("{w}: {:?}", curve.curve);
    Ok(())
}
