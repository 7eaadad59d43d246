//! Generalized Thue–Morse words t_{b,m}: G-richness rows and verdict.
//!
//!     cargo run --release --example tbm_table -- 4 2 113

use wordsym::graph::{g_richness_report, RichnessVerdict};
use wordsym::symmetry::parse_symmetries;
use wordsym::{StabilizeOptions, SymmetryGroup, WordSpec};

fn main() -> wordsym::Result<()> {
    let args: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (base, modulus, n_max) = match args[..] {
        [b, m, n, ..] => (b, m, n as usize),
        [b, m] => (b, m, 40),
        _ => (4, 2, 40),
    };
    let spec = WordSpec::Tbm { base, modulus };
    // Reversal plus the cyclic shift of letters generate the group.
    let shift: Vec<String> = (0..modulus)
        .map(|a| format!("{a}>{}", (a + 1) % modulus))
        .collect();
    let group = SymmetryGroup::generate(&parse_symmetries(
        &format!("R;m:{}", shift.join(",")),
        modulus as usize,
    )?)?;

    let report = g_richness_report(&spec, &group, n_max, &StabilizeOptions::default())?;
    println!(
        "t_{{{base},{modulus}}}, |G| = {}, N = {}",
        group.order(),
        report.n_used
    );
    let mut last: Option<(i64, usize)> = None;
    for row in &report.rows {
        // Print only where (dC, R) changes, as a band table.
        if last != Some((row.delta_c, row.r)) {
            println!(
                "from n = {:>3}: dC = {:>2}, R = {:>2}, pass = {}",
                row.n,
                row.delta_c,
                row.r,
                row.passed()
            );
            last = Some((row.delta_c, row.r));
        }
    }
    match report.verdict {
        RichnessVerdict::AlmostGRichSoFar { n0 } => println!("almost G-rich, from n = {n0}"),
        v => println!("{v:?}"),
    }
    Ok(())
}
