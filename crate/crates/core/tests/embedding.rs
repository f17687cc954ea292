use harmcodes::analysis::{moment_sums, venkov_check};
use harmcodes::configurations::{by_name, e8_roots, icosahedron, normalized_gram, schlafli27};
use harmcodes::embedding::{antipodal_halve, embed_code, embed_coords, embed_half};
use harmcodes::{PointConfiguration, QuadInt};
use nalgebra::DMatrix;
use proptest::prelude::*;

const MANDATORY: [&str; 5] = ["icosahedron", "600cell", "e8", "kissing56", "schlafli27"];

#[test]
fn embedded_gram_is_psd_with_bounded_rank() {
    for name in MANDATORY {
        let x = by_name(name).unwrap();
        let code = embed_code(&x).unwrap();
        let n = code.size();
        let m = DMatrix::from_row_slice(n, n, &code.gram.to_f64());
        let eig = m.symmetric_eigen().eigenvalues;
        let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        let rank = eig.iter().filter(|&&e| e > 1e-8).count();
        assert!(min >= -1e-8, "{name}: min eigenvalue {min}");
        assert!(rank <= code.dim, "{name}: rank {rank} > {}", code.dim);
    }
}

#[test]
fn doubled_code_has_vanishing_odd_moments() {
    for name in MANDATORY {
        let code = embed_code(&by_name(name).unwrap()).unwrap();
        let sums = moment_sums(&code.gram, code.dim - 1, 5);
        assert!(
            sums[0].is_zero() && sums[2].is_zero() && sums[4].is_zero(),
            "{name}"
        );
        assert!(venkov_check(&code.gram, code.dim - 1).design3, "{name}");
    }
}

#[test]
fn embedding_is_exact_on_coordinates() {
    let x = icosahedron().unwrap();
    let rows = embed_coords(&x).unwrap();
    assert_eq!(rows.len(), 12);
    for r in &rows {
        assert_eq!(r.len(), 5);
        assert!((r.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-12);
    }
    // sections live in a proper subspace of their ambient space
    let s = schlafli27().unwrap();
    assert!(s.ambient_dim() > s.d() + 1);
    let rows = embed_coords(&s).unwrap();
    assert!(rows.iter().all(|r| r.len() == 20));
}

fn flip(x: &PointConfiguration, mask: &[bool]) -> PointConfiguration {
    let pts: Vec<Vec<QuadInt>> = x
        .points()
        .zip(mask.iter().cycle())
        .map(|(p, &f)| {
            if f {
                p.iter().map(|c| c.negated()).collect()
            } else {
                p.to_vec()
            }
        })
        .collect();
    PointConfiguration::new("flipped", x.d(), x.radicand(), pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn representative_choice_is_irrelevant(mask in prop::collection::vec(any::<bool>(), 1..64)) {
        let half = antipodal_halve(&e8_roots().unwrap()).unwrap();
        let other = flip(&half, &mask);
        let a = embed_half(&half).unwrap();
        let b = embed_half(&other).unwrap();
        // index of each flipped point in the reference half
        let map: Vec<usize> = other
            .points()
            .map(|p| {
                let neg: Vec<QuadInt> = p.iter().map(|c| c.negated()).collect();
                half.index_of(p).or_else(|| half.index_of(&neg)).unwrap()
            })
            .collect();
        let n = half.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(b.gram.get(i, j), a.gram.get(map[i], map[j]));
            }
        }
        let g = normalized_gram(&other).unwrap();
        prop_assert_eq!(g.off_diagonal_values().len(), 3);
    }
}
