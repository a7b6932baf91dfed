use super::presentation::{KnotPresentation, Source};
use super::wirtinger::{Crossing, Diagram};
use crate::error::{Error, Result};

fn parse_token(tok: &str, strands: usize) -> Result<(usize, i64)> {
    let mut s = tok;
    let mut sign = 1i64;
    if let Some(rest) = s.strip_prefix('-') {
        sign = -sign;
        s = rest;
    }
    if let Some(rest) = s.strip_prefix('s') {
        s = rest;
    } else if let Some(rest) = s.strip_prefix('S') {
        sign = -sign;
        s = rest;
    }
    let k: usize = s
        .parse()
        .map_err(|_| Error::Parse(format!("malformed braid token `{tok}`")))?;
    if k == 0 || k >= strands {
        return Err(Error::Parse(format!(
            "braid generator {k} out of range for {strands} strands"
        )));
    }
    Ok((k, sign))
}

/// Parse a braid word into the Wirtinger presentation of its closure.
///
/// Tokens are `sK` (positive σ_K), `SK` or `-sK` (negative), or bare signed
/// integers `K` / `-K`. For a positive crossing the strand at position `K+1`
/// passes over to position `K`.
pub fn parse_braid(text: &str, strands: usize) -> Result<KnotPresentation> {
    if strands == 0 {
        return Err(Error::Parse("a braid needs at least one strand".into()));
    }
    let gens = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_token(t, strands))
        .collect::<Result<Vec<_>>>()?;

    // closure permutation
    let mut perm: Vec<usize> = (0..strands).collect(); // perm[pos] = starting strand
    for &(k, _) in &gens {
        perm.swap(k - 1, k);
    }
    let mut seen = vec![false; strands];
    let mut components = 0;
    for s in 0..strands {
        if !seen[s] {
            components += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                // strand starting at top position p ends at bottom position where perm == p
                p = perm.iter().position(|&x| x == p).unwrap();
            }
        }
    }
    if components != 1 {
        return Err(Error::MultiComponentLink { components });
    }

    if gens.is_empty() {
        return Ok(KnotPresentation::unknot());
    }

    // Segments are pieces of strand between undercrossings and the braid ends.
    let mut pos_seg: Vec<usize> = (0..strands).collect();
    let mut next_seg = strands;
    let mut crossings = Vec::with_capacity(gens.len());
    // per segment: the next segment along the knot together with the crossing index
    let mut seg_next: Vec<Option<(usize, usize)>> = vec![None; strands + gens.len()];
    for (ci, &(k, sign)) in gens.iter().enumerate() {
        let (l, r) = (k - 1, k);
        let new = next_seg;
        next_seg += 1;
        if sign > 0 {
            let over = pos_seg[r];
            let under_in = pos_seg[l];
            seg_next[under_in] = Some((new, ci));
            crossings.push((over, under_in, new, 1));
            pos_seg[l] = over;
            pos_seg[r] = new;
        } else {
            let over = pos_seg[l];
            let under_in = pos_seg[r];
            seg_next[under_in] = Some((new, ci));
            crossings.push((over, under_in, new, -1));
            pos_seg[r] = over;
            pos_seg[l] = new;
        }
    }
    // Closure: the segment at bottom position j continues as the top segment j.
    let mut glue = vec![usize::MAX; next_seg];
    for (j, &s) in pos_seg.iter().enumerate() {
        glue[s] = j;
    }

    // Walk the knot from the top of position 0, collecting the segments of each arc.
    let mut arc_of_seg = vec![usize::MAX; next_seg];
    let mut arc = 0usize;
    let mut order = Vec::new(); // crossings in traversal order (where we pass under)
    let mut seg = 0usize;
    loop {
        arc_of_seg[seg] = arc;
        if let Some((nxt, ci)) = seg_next[seg] {
            order.push(ci);
            arc += 1;
            seg = nxt;
        } else {
            seg = glue[seg];
        }
        if seg == 0 {
            break;
        }
    }
    let num_arcs = arc;
    // the last arc wraps around to the first
    for a in arc_of_seg.iter_mut() {
        if *a == num_arcs {
            *a = 0;
        }
    }
    debug_assert_eq!(num_arcs, gens.len());

    let diagram = Diagram {
        num_arcs,
        crossings: crossings
            .iter()
            .map(|&(o, i, u, s)| Crossing {
                over: arc_of_seg[o],
                under_in: arc_of_seg[i],
                under_out: arc_of_seg[u],
                sign: s,
            })
            .collect(),
        traversal: order,
    };
    diagram.presentation(Source::Braid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil() {
        let p = parse_braid("s1 s1 s1", 2).unwrap();
        assert_eq!(p.num_generators(), 3);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.degree(p.meridian()), 1);
        assert!(p.weights().iter().all(|&w| w == 1));
    }

    #[test]
    fn figure_eight_counts() {
        let p = parse_braid("s1 -s2 s1 -s2", 3).unwrap();
        assert_eq!(p.num_generators(), 4);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.longitude().unwrap().weight(p.weights()), 0);
    }

    #[test]
    fn token_variants_agree() {
        let a = parse_braid("s1 S2 s1 S2", 3).unwrap();
        let b = parse_braid("1 -2 1 -2", 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_crossing_is_unknot() {
        let p = parse_braid("s1", 2).unwrap();
        assert_eq!(p.num_generators(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn links_rejected() {
        assert_eq!(
            parse_braid("s1 s1", 2),
            Err(Error::MultiComponentLink { components: 2 })
        );
        assert_eq!(
            parse_braid("", 2),
            Err(Error::MultiComponentLink { components: 2 })
        );
    }

    #[test]
    fn malformed_tokens() {
        assert!(matches!(parse_braid("s0", 2), Err(Error::Parse(_))));
        assert!(matches!(parse_braid("s3", 3), Err(Error::Parse(_))));
        assert!(matches!(parse_braid("x1", 2), Err(Error::Parse(_))));
    }
}
