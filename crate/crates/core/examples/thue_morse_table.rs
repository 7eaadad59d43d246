//! Thue–Morse under the group generated by reversal and the letter exchange:
//! palindromic complexities against the first difference of C(n).

use wordsym::graph::g_richness_report_on;
use wordsym::symmetry::parse_symmetries;
use wordsym::{stabilize, SymmetryGroup, WordSpec};

fn main() -> wordsym::Result<()> {
    let n_max = 40;
    let group = SymmetryGroup::generate(&parse_symmetries("R;a:0>1,1>0", 2)?)?;
    let idx = stabilize(&WordSpec::thue_morse(), n_max + 1)?;
    let report = g_richness_report_on(&idx, &group, n_max)?;

    let thetas: Vec<String> = group
        .involutive_antimorphisms()
        .iter()
        .map(|t| t.to_string())
        .collect();
    println!(
        "|G| = {}, antimorphisms: {}",
        group.order(),
        thetas.join(", ")
    );
    println!(
        "{:>3} {:>3} {:>6} {:>6} {:>3}  equality",
        "n", "dC", "P(R)", "P(RE)", "R"
    );
    for row in &report.rows {
        println!(
            "{:>3} {:>3} {:>6} {:>6} {:>3}  {}",
            row.n,
            row.delta_c,
            row.pal[0],
            row.pal[1],
            row.r,
            row.equality.map_or("-".into(), |e| e.to_string())
        );
    }
    println!("verdict: {:?}", report.verdict);
    Ok(())
}
