use metarep::alexmod::{
    alexander_poly, branched_homology, torsion_order_resultant, Count, LaurentPoly,
};
use metarep::knotio::knot_by_name;

const REFERENCE: &str = include_str!("data/alexander_reference.txt");

fn reference() -> Vec<(String, LaurentPoly)> {
    REFERENCE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let name = it.next().unwrap().to_string();
            let coeffs: Vec<i64> = it.map(|c| c.parse().unwrap()).collect();
            (name, LaurentPoly::from_coeffs(0, coeffs))
        })
        .collect()
}

#[test]
fn bundled_table_matches_reference_polynomials() {
    let refs = reference();
    assert_eq!(refs.len(), 249);
    for (name, expect) in refs {
        let k = knot_by_name(&name).unwrap();
        let d = alexander_poly(&k).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(d.associate(&expect), "{name}: got {d}, expected {expect}");
    }
}

#[test]
fn smith_form_order_matches_resultant() {
    for name in [
        "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_4", "8_20", "10_124", "10_153",
    ] {
        let k = knot_by_name(name).unwrap();
        let d = alexander_poly(&k).unwrap();
        for n in 1..=6 {
            let h = branched_homology(&k, n);
            match torsion_order_resultant(&d, n) {
                Count::Finite(x) => {
                    assert_eq!(h.free_rank, 0, "{name} n={n}");
                    assert_eq!(h.torsion_order(), x, "{name} n={n}");
                }
                Count::Infinite => assert!(h.free_rank > 0, "{name} n={n}"),
            }
        }
    }
}
