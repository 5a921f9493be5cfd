//! The group text format: line one is `degree <n>`, each following
//! non-comment line is one generator as `n` whitespace-separated 0-based
//! images. `#` starts a comment line; blank lines are ignored. Emitting and
//! re-parsing preserves generator lists exactly.

use crate::error::Error;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::Result;

pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::input("empty group file".to_string()))?;
    let degree = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["degree", n] => n
            .parse::<usize>()
            .map_err(|_| Error::input(format!("bad degree value: {n}")))?,
        _ => {
            return Err(Error::input(format!(
                "first line must be `degree <n>`, got: {header}"
            )))
        }
    };
    let mut gens = Vec::new();
    for line in lines {
        let images: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::input(format!("bad image value: {tok}")))
            })
            .collect::<Result<_>>()?;
        if images.len() != degree {
            return Err(Error::input(format!(
                "generator line has {} images, expected {degree}",
                images.len()
            )));
        }
        gens.push(Perm::from_images(images)?);
    }
    PermGroup::from_generators(degree, gens)
}

pub fn emit_group(group: &PermGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        let images: Vec<String> = g.images().iter().map(|x| x.to_string()).collect();
        out.push_str(&images.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_emit_round_trip() {
        let text = "# a comment\ndegree 5\n1 2 3 4 0\n0 2 4 1 3\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.degree(), 5);
        assert_eq!(g.order_u64(), Some(20));
        let emitted = emit_group(&g);
        let reparsed = parse_group(&emitted).unwrap();
        assert_eq!(g.generators(), reparsed.generators());
        assert_eq!(emitted, emit_group(&reparsed));
    }

    #[test]
    fn trivial_group_round_trip() {
        let g = parse_group("degree 4\n").unwrap();
        assert!(g.is_trivial());
        assert_eq!(emit_group(&g), "degree 4\n");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_group("").is_err());
        assert!(parse_group("order 5\n").is_err());
        assert!(parse_group("degree 3\n0 1\n").is_err());
        assert!(parse_group("degree 3\n0 0 1\n").is_err());
        assert!(parse_group("degree 3\n0 1 x\n").is_err());
    }
}
