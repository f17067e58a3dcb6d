//! DIMACS CNF serialization of [`SatInstance`] for external validation.
//!
//! The writer emits a `p cnf <n> <m>` header and one clause per line as
//! 1-based signed literals terminated by `0`. The loader accepts the same
//! format, skipping `c` comment lines, and re-validates the instance
//! invariants (distinct variables, planted satisfiability).

use std::fmt::Write as _;

use super::maxsat::{Clause, SatInstance};
use crate::{Error, Result};

pub fn to_dimacs(inst: &SatInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", inst.n(), inst.m());
    for c in inst.clauses() {
        for slot in 0..3 {
            let lit = (c.vars[slot] as i64 + 1) * if c.signs[slot] { 1 } else { -1 };
            let _ = write!(out, "{lit} ");
        }
        let _ = writeln!(out, "0");
    }
    out
}

pub fn from_dimacs(text: &str) -> Result<SatInstance> {
    let mut n: Option<usize> = None;
    let mut declared_m = 0usize;
    let mut clauses: Vec<Clause> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if n.is_some() {
                return Err(Error::parse(format!("line {}: duplicate header", lineno + 1)));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(Error::parse(format!(
                    "line {}: expected `p cnf <n> <m>`",
                    lineno + 1
                )));
            }
            n = Some(parse_num(fields[1], lineno)?);
            declared_m = parse_num(fields[2], lineno)?;
            continue;
        }
        let n = n.ok_or_else(|| {
            Error::parse(format!("line {}: clause before header", lineno + 1))
        })?;
        let mut lits = Vec::with_capacity(3);
        let mut terminated = false;
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::parse(format!("line {}: bad literal `{tok}`", lineno + 1)))?;
            if lit == 0 {
                terminated = true;
                break;
            }
            lits.push(lit);
        }
        if !terminated {
            return Err(Error::parse(format!(
                "line {}: clause is not 0-terminated",
                lineno + 1
            )));
        }
        if lits.len() != 3 {
            return Err(Error::parse(format!(
                "line {}: expected exactly 3 literals, got {}",
                lineno + 1,
                lits.len()
            )));
        }
        let mut vars = [0u32; 3];
        let mut signs = [false; 3];
        for (slot, &lit) in lits.iter().enumerate() {
            let var = lit.unsigned_abs() as usize - 1;
            if var >= n {
                return Err(Error::parse(format!(
                    "line {}: variable {} out of range 1..={n}",
                    lineno + 1,
                    lit.abs()
                )));
            }
            vars[slot] = var as u32;
            signs[slot] = lit > 0;
        }
        clauses.push(Clause { vars, signs });
    }

    let n = n.ok_or_else(|| Error::parse("missing `p cnf` header"))?;
    if clauses.len() != declared_m {
        return Err(Error::parse(format!(
            "header declares {declared_m} clauses but {} were given",
            clauses.len()
        )));
    }
    SatInstance::from_clauses(n, clauses)
}

fn parse_num(tok: &str, lineno: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(format!("line {}: bad number `{tok}`", lineno + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn writes_expected_format() {
        let clause = Clause {
            vars: [0, 3, 2],
            signs: [true, false, true],
        };
        let inst = SatInstance::from_clauses(4, vec![clause]).unwrap();
        assert_eq!(to_dimacs(&inst), "p cnf 4 1\n1 -4 3 0\n");
    }

    #[test]
    fn round_trips_generated_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [3usize, 10, 64] {
            let inst = SatInstance::generate(n, &mut rng).unwrap();
            let text = to_dimacs(&inst);
            let back = from_dimacs(&text).unwrap();
            assert_eq!(back.n(), inst.n());
            assert_eq!(back.m(), inst.m());
            assert_eq!(back.clauses(), inst.clauses());
        }
    }

    #[test]
    fn loader_skips_comments_and_validates() {
        let ok = "c a planted instance\np cnf 3 1\n1 2 -3 0\n";
        let inst = from_dimacs(ok).unwrap();
        assert_eq!(inst.m(), 1);

        assert!(from_dimacs("1 2 3 0\n").is_err(), "clause before header");
        assert!(from_dimacs("p cnf 3 2\n1 2 3 0\n").is_err(), "wrong count");
        assert!(from_dimacs("p cnf 3 1\n1 2 0\n").is_err(), "not 3 literals");
        assert!(from_dimacs("p cnf 3 1\n-1 -2 -3 0\n").is_err(), "unplanted");
        assert!(from_dimacs("p cnf 3 1\n1 4 2 0\n").is_err(), "var range");
        assert!(from_dimacs("p cnf 3 1\n1 2 3\n").is_err(), "unterminated");
    }

    fn parse_roundtrip_prop(n: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = SatInstance::generate(n, &mut rng).unwrap();
        let back = from_dimacs(&to_dimacs(&inst)).unwrap();
        assert_eq!(back.clauses(), inst.clauses());
    }

    mod props {
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]
            #[test]
            fn round_trip(n in 3usize..40, seed in 0u64..1000) {
                super::parse_roundtrip_prop(n, seed);
            }
        }
    }
}
