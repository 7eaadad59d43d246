//! Letter frequencies of a fixed point whose densities are irrational.

use wordsym::generators::{
    fixed_point_prefix, irrational_expected_densities, letter_densities, Substitution,
};

fn main() -> wordsym::Result<()> {
    let s = Substitution::irrational_densities();
    println!("substitution:\n{}", s.to_text());
    let expected = irrational_expected_densities();
    for len in [100, 10_000, 1_000_000] {
        let prefix = fixed_point_prefix(&s, 0, len)?;
        let mut report = letter_densities(&prefix[..len], 4)?;
        report.expected = Some(expected.clone());
        let freqs: Vec<String> = report
            .frequencies()
            .iter()
            .map(|f| format!("{f:.6}"))
            .collect();
        println!(
            "{len:>8}: {}  max deviation {:.2e}",
            freqs.join(" "),
            report.max_deviation().unwrap()
        );
    }
    Ok(())
}
