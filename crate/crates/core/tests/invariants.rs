use num_bigint::BigInt;

use topcoh::complexes::*;
use topcoh::formulas::steinberg_rank;
use topcoh::homology::*;

fn small_complexes() -> Vec<SimplicialComplex> {
    let o = BuildOptions::default();
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        for (n, m) in [(1usize, 0usize), (2, 0), (1, 1), (2, 1), (3, 0)] {
            out.push(build_b_pm(n, m, p, &o).unwrap());
            out.push(build_b_proj(n, m, p, &o).unwrap());
            out.push(build_bd_pm(n, m, p, &o).unwrap());
            out.push(build_bda_pm(n, m, p, &o).unwrap());
        }
        out.push(build_ba_pm(2, 0, p, &o).unwrap());
        out.push(build_bda_prime(3, p, &o).unwrap());
        for n in 1..=3 {
            out.push(build_tits(n, p, &o).unwrap());
            out.push(build_tits_oriented(n, p, &o).unwrap());
        }
    }
    out
}

#[test]
fn euler_characteristic_matches_betti_numbers() {
    for k in small_complexes() {
        let label = format!("{} {} {} {}", k.family, k.n, k.m, k.p);
        let stats = k.stats();
        // betti() itself rejects a Betti sum that disagrees with the chain counts
        let r = betti(&k, false, &HomologyOptions::default()).unwrap();
        assert_eq!(BigInt::from(r.euler), stats.euler, "{label}");
        let reduced = betti(&k, true, &HomologyOptions::default()).unwrap();
        assert_eq!(reduced.euler, r.euler - 1, "{label}");
        boundary_matrices(&k, true).unwrap();
    }
}

#[test]
fn multimodular_agrees_with_exact_below_the_cap() {
    for k in small_complexes() {
        for b in boundary_matrices(&k, true).unwrap() {
            let m = &b.matrix;
            if m.rows <= EXACT_LIMIT && m.cols <= EXACT_LIMIT {
                assert_eq!(rank_exact(m), rank_multimodular(m, 99, None).unwrap());
            }
        }
    }
}

#[test]
fn lee_szczarba_cases() {
    let o = BuildOptions::default();
    let h = HomologyOptions::default();
    for p in [2u64, 3] {
        for n in 2..=3usize {
            let c = coinvariants_rank(n, p, &o, &h).unwrap();
            assert_eq!(c.coinv_rank.to_string(), steinberg_rank(p, n as u64).to_string(), "n={n} p={p}");
        }
    }
}

#[test]
fn exports_roundtrip_for_every_family() {
    for k in small_complexes() {
        let text = write_complex(&k);
        let back = parse_complex(&text).unwrap();
        assert_eq!(back, k);
        assert_eq!(write_complex(&back), text);
    }
}

#[test]
fn coo_export_of_a_boundary_roundtrips() {
    let k = build_bda_pm(2, 0, 5, &BuildOptions::default()).unwrap();
    for b in boundary_matrices(&k, false).unwrap() {
        assert_eq!(parse_coo(&write_coo(&b.matrix)).unwrap(), b.matrix);
    }
}

#[test]
fn size_cap_is_reported_before_building() {
    let o = BuildOptions {
        max_simplices: 1000,
        ..BuildOptions::default()
    };
    match build_bda_pm(3, 0, 7, &o) {
        Err(topcoh::Error::TooLarge { projected, cap, .. }) => {
            assert_eq!(cap, 1000);
            assert!(projected > 700_000);
        }
        other => panic!("expected a size error, got {other:?}"),
    }
}
