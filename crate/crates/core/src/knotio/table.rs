use super::pd::{parse_pd, parse_pd_text, PdCode};
use super::presentation::KnotPresentation;
use crate::error::{Error, Result};

const TABLE: &str = include_str!("../../data/rolfsen_pd.txt");

/// Names of all bundled knots, in table order.
pub fn table_names() -> Vec<&'static str> {
    TABLE
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_whitespace().next())
        .collect()
}

/// PD code of a bundled Rolfsen-table knot (3_1 through 10_165).
pub fn load_table(name: &str) -> Result<PdCode> {
    for line in TABLE.lines() {
        if line.starts_with('#') {
            continue;
        }
        let mut parts = line.splitn(2, char::is_whitespace);
        if parts.next() == Some(name) {
            let rest = parts.next().unwrap_or("");
            return parse_pd_text(rest);
        }
    }
    Err(Error::UnknownKnot(name.to_string()))
}

/// Presentation of a table knot; `unknot` and `0_1` give the trivial knot.
pub fn knot_by_name(name: &str) -> Result<KnotPresentation> {
    match name {
        "unknot" | "0_1" => Ok(KnotPresentation::unknot()),
        _ => parse_pd(&load_table(name)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(load_table("4_1").unwrap().len(), 4);
        assert_eq!(load_table("10_124").unwrap().len(), 10);
        assert_eq!(load_table("99_99"), Err(Error::UnknownKnot("99_99".into())));
    }

    #[test]
    fn table_size() {
        let names = table_names();
        assert_eq!(names.len(), 249);
        assert_eq!(names[0], "3_1");
    }

    #[test]
    fn whole_table_parses() {
        for name in table_names() {
            let p = knot_by_name(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(p.num_generators(), load_table(name).unwrap().len());
        }
    }
}
