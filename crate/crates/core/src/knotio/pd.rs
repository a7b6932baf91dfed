use super::presentation::{KnotPresentation, Source};
use super::wirtinger::{Crossing, Diagram};
use crate::error::{Error, Result};

pub type PdCode = Vec<[i64; 4]>;

/// Parse `[[a,b,c,d],...]` or `PD:[[...]]` / `X[a,b,c,d] ...` text.
pub fn parse_pd_text(text: &str) -> Result<PdCode> {
    let s = text.trim();
    let s = s.strip_prefix("PD:").unwrap_or(s);
    let nums: Vec<i64> = s
        .split(|c: char| !(c.is_ascii_digit() || c == '-'))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad PD entry `{t}`")))
        })
        .collect::<Result<_>>()?;
    if !nums.len().is_multiple_of(4) {
        return Err(Error::InvalidPd(format!(
            "{} labels is not a multiple of 4",
            nums.len()
        )));
    }
    Ok(nums.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect())
}

/// Wirtinger presentation from a PD code.
///
/// Convention: `X[i,j,k,l]` lists the four edge labels counterclockwise
/// starting from the incoming under-strand, so the under-strand runs
/// `i → k` and `j`, `l` lie on the over-strand. Edges must be labelled
/// `1..2n` consecutively along the knot. The crossing is positive when the
/// over-strand runs `l → j`.
pub fn parse_pd(code: &[[i64; 4]]) -> Result<KnotPresentation> {
    let n = code.len();
    if n == 0 {
        return Err(Error::InvalidPd("empty code".into()));
    }
    let m = 2 * n as i64;
    let mut count = vec![0u32; 2 * n + 1];
    for x in code {
        for &e in x {
            if e < 1 || e > m {
                return Err(Error::InvalidPd(format!("label {e} outside 1..{m}")));
            }
            count[e as usize] += 1;
        }
    }
    if count[1..].iter().any(|&c| c != 2) {
        return Err(Error::InvalidPd(
            "every label must occur exactly twice".into(),
        ));
    }

    // components of the strand graph
    let mut parent: Vec<usize> = (0..=2 * n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for x in code {
        for (a, b) in [(x[0], x[2]), (x[1], x[3])] {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            parent[ra] = rb;
        }
    }
    let components = (1..=2 * n).filter(|&e| find(&mut parent, e) == e).count();
    if components != 1 {
        return Err(Error::MultiComponentLink { components });
    }

    let succ = |e: i64| if e == m { 1 } else { e + 1 };
    let mut under_at = vec![usize::MAX; 2 * n + 1];
    for (ci, x) in code.iter().enumerate() {
        let [i, j, k, l] = *x;
        if k != succ(i) {
            return Err(Error::InvalidPd(format!(
                "crossing {ci}: under-strand {i} -> {k} is not consecutive"
            )));
        }
        if j != succ(l) && l != succ(j) {
            return Err(Error::InvalidPd(format!(
                "crossing {ci}: over-strand labels {j}, {l} are not adjacent"
            )));
        }
        if under_at[i as usize] != usize::MAX {
            return Err(Error::InvalidPd(format!(
                "edge {i} enters two undercrossings"
            )));
        }
        under_at[i as usize] = ci;
    }

    // arcs numbered along the knot starting at edge 1
    let mut arc_of_edge = vec![0usize; 2 * n + 1];
    let mut arc = 0;
    let mut traversal = Vec::with_capacity(n);
    for e in 1..=2 * n {
        arc_of_edge[e] = arc;
        if under_at[e] != usize::MAX {
            traversal.push(under_at[e]);
            arc += 1;
        }
    }
    let num_arcs = arc;
    for a in arc_of_edge.iter_mut() {
        if *a == num_arcs {
            *a = 0;
        }
    }

    let crossings = code
        .iter()
        .map(|x| {
            let [i, j, k, l] = *x;
            Crossing {
                over: arc_of_edge[j as usize],
                under_in: arc_of_edge[i as usize],
                under_out: arc_of_edge[k as usize],
                sign: if j == succ(l) { 1 } else { -1 },
            }
        })
        .collect();
    Diagram {
        num_arcs,
        crossings,
        traversal,
    }
    .presentation(Source::Pd)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_pd() {
        let p = parse_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]).unwrap();
        assert_eq!(p.num_generators(), 3);
        assert_eq!(p.relators().len(), 2);
    }

    #[test]
    fn text_forms() {
        let a = parse_pd_text("PD:[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").unwrap();
        let b = parse_pd_text("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_is_invalid() {
        assert!(matches!(parse_pd(&[]), Err(Error::InvalidPd(_))));
    }

    #[test]
    fn bad_incidence() {
        assert!(matches!(
            parse_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 6]]),
            Err(Error::InvalidPd(_))
        ));
    }

    #[test]
    fn hopf_link_rejected() {
        // two components labelled 1,2 and 3,4
        let r = parse_pd(&[[1, 3, 2, 4], [2, 4, 1, 3]]);
        assert!(matches!(
            r,
            Err(Error::MultiComponentLink { components: 2 })
        ));
    }
}
