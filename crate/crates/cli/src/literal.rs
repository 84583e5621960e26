//! Parsing and rendering of set/multiset literals.
//!
//! A literal is a comma-separated list of elements of `[0, N)`; an entry may
//! carry a multiplicity suffix `^m`, so `0^2,15` is the multiset with two
//! copies of 0 and one of 15. Rendering is the inverse, listing elements in
//! ascending order and emitting `^m` only for multiplicities above one.

use spectile::{CyclicGroup, MultiSet};

use crate::CliError;

pub fn parse_multiset(group: &CyclicGroup, text: &str) -> Result<MultiSet, CliError> {
    let n = group.modulus();
    let mut mult = vec![0u32; n as usize];
    for raw in text.split(',') {
        let entry = raw.trim();
        if entry.is_empty() {
            return Err(CliError::Literal(format!("empty entry in `{text}`")));
        }
        let (elem_text, count_text) = match entry.split_once('^') {
            Some((e, c)) => (e.trim(), Some(c.trim())),
            None => (entry, None),
        };
        let elem: u64 = elem_text
            .parse()
            .map_err(|_| CliError::Literal(format!("`{elem_text}` is not a nonnegative integer")))?;
        if elem >= n {
            return Err(CliError::Literal(format!(
                "element {elem} lies outside 0..{n}"
            )));
        }
        let count: u32 = match count_text {
            Some(c) => c
                .parse()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| {
                    CliError::Literal(format!("`{c}` is not a positive multiplicity"))
                })?,
            None => 1,
        };
        mult[elem as usize] = mult[elem as usize]
            .checked_add(count)
            .ok_or_else(|| CliError::Literal(format!("multiplicity of {elem} overflows")))?;
    }
    MultiSet::from_multiplicities(group, mult).map_err(CliError::Core)
}

pub fn render_literal(m: &MultiSet) -> String {
    let mut parts = Vec::new();
    for (x, &c) in m.multiplicities().iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(x.to_string()),
            _ => parts.push(format!("{x}^{c}")),
        }
    }
    parts.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z30() -> CyclicGroup {
        CyclicGroup::new(30).unwrap()
    }

    #[test]
    fn parses_sets_and_multisets() {
        let g = z30();
        let a = parse_multiset(&g, "0,15").unwrap();
        assert_eq!(a.elements(), vec![0, 15]);
        let m = parse_multiset(&g, " 0^2 , 15 ").unwrap();
        assert_eq!(m.multiplicity(0), 2);
        assert_eq!(m.multiplicity(15), 1);
        assert_eq!(m.size(), 3);
    }

    #[test]
    fn rejects_malformed_literals() {
        let g = z30();
        for bad in ["", "0,,5", "30", "-1", "x", "3^0", "3^", "3^x"] {
            assert!(
                matches!(parse_multiset(&g, bad), Err(CliError::Literal(_))),
                "literal `{bad}` should be rejected"
            );
        }
    }

    #[test]
    fn rendering_round_trips() {
        let g = z30();
        for text in ["0", "0,15", "0^2,15", "5,6,12,18,24,25"] {
            let m = parse_multiset(&g, text).unwrap();
            assert_eq!(render_literal(&m), text.to_string());
            let again = parse_multiset(&g, &render_literal(&m)).unwrap();
            assert_eq!(again, m);
        }
    }
}
