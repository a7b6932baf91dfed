use std::fs;

use metarep::knotio::{
    knot_by_name, parse_braid, parse_pd, parse_pd_text, torus_knot, KnotPresentation,
};
use metarep::{Error, Result};

pub const SPEC_HELP: &str = "Knot: a table name (3_1, 4_1, 10_153, unknot), torus:P,Q, \
braid:STRANDS:WORD, pd:[[a,b,c,d],...] or file:PATH.json. Braid words are tokens sK (positive), \
SK or -sK (negative), or signed integers, separated by spaces or commas.";

/// Resolve a knot argument to a presentation.
pub fn parse_knot(spec: &str) -> Result<KnotPresentation> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("torus:") {
        let (p, q) = rest
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected torus:P,Q, got `{spec}`")))?;
        let num = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad torus parameter `{s}`")))
        };
        return torus_knot(num(p)?, num(q)?);
    }
    if let Some(rest) = spec.strip_prefix("braid:") {
        let (strands, word) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected braid:STRANDS:WORD, got `{spec}`")))?;
        let strands = strands
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad strand count `{strands}`")))?;
        return parse_braid(word, strands);
    }
    if let Some(rest) = spec.strip_prefix("pd:") {
        return parse_pd(&parse_pd_text(rest)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")));
    }
    knot_by_name(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_forms() {
        let trefoil = metarep::alexmod::alexander_poly(&parse_knot("3_1").unwrap()).unwrap();
        for s in [
            "torus:2,3",
            "braid:2:s1 s1 s1",
            "braid:2:1,1,1",
            "pd:[[1,5,2,4],[3,1,4,6],[5,3,6,2]]",
        ] {
            let d = metarep::alexmod::alexander_poly(&parse_knot(s).unwrap()).unwrap();
            assert!(d.associate(&trefoil), "{s}");
        }
        assert!(matches!(parse_knot("torus:2"), Err(Error::Parse(_))));
        assert!(matches!(parse_knot("braid:x:s1"), Err(Error::Parse(_))));
        assert!(matches!(parse_knot("99_99"), Err(Error::UnknownKnot(_))));
    }
}
