//! The graph of symmetries at one length, printed and exported as DOT.
//!
//!     cargo run --example symmetry_graph -- 3 > gamma3.dot

use wordsym::graph::{build_gamma, export_dot};
use wordsym::symmetry::parse_symmetries;
use wordsym::{stabilize, SymmetryGroup, WordSpec};

fn main() -> wordsym::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2);
    let group = SymmetryGroup::generate(&parse_symmetries("R;a:0>1,1>0", 2)?)?;
    let idx = stabilize(&WordSpec::thue_morse(), n + 1)?;
    let gamma = build_gamma(&idx, &group, n)?;

    for v in &gamma.vertices {
        eprintln!(
            "vertex [{}], {} special factors",
            v.representative,
            v.class_size()
        );
    }
    for class in &gamma.classes {
        let fixed = class
            .fixed_by
            .as_ref()
            .map(|t| format!(", fixed by {t}"))
            .unwrap_or_default();
        eprintln!(
            "edge class [{}], {} labels{fixed}",
            class.representative,
            class.labels.len()
        );
    }
    eprintln!(
        "loops ok: {}, tree ok: {}",
        gamma.loops_ok(),
        gamma.tree_ok()
    );
    print!("{}", export_dot(&gamma));
    Ok(())
}
