//! Hasse-diagram export of a congruence lattice as DOT text: one node per
//! congruence labeled by its block structure, one edge per covering pair,
//! ranked bottom to top.

use conlat_core::congruence::CongruenceLattice;

pub fn export_dot(lattice: &CongruenceLattice) -> String {
    let mut out = String::new();
    out.push_str("digraph con {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box];\n");
    for (i, p) in lattice.elements().iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, p.display()));
    }
    for (lo, hi) in lattice.covering_pairs() {
        out.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use conlat_core::corpus;

    fn count_lines(s: &str, pat: &str) -> usize {
        s.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn trivial_lattice_is_one_node() {
        let lat = CongruenceLattice::build(&corpus::trivial());
        let dot = export_dot(&lat);
        assert_eq!(count_lines(&dot, "label="), 1);
        assert_eq!(count_lines(&dot, "->"), 0);
    }

    #[test]
    fn z4_lattice_is_a_path() {
        let lat = CongruenceLattice::build(&corpus::z4());
        let dot = export_dot(&lat);
        assert_eq!(count_lines(&dot, "label="), 3);
        assert_eq!(count_lines(&dot, "->"), 2);
    }

    #[test]
    fn klein_lattice_is_the_diamond() {
        let lat = CongruenceLattice::build(&corpus::klein4());
        let dot = export_dot(&lat);
        assert_eq!(count_lines(&dot, "label="), 5);
        assert_eq!(count_lines(&dot, "->"), 6);
    }
}
