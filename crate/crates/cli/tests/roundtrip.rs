use abhol_cli::format::{parse_json, AlgebraFile, Coeff};
use abhol_core::Q;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Coeff> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Coeff(Q::new(p.into(), q.into())))
}

fn algebra_file() -> impl Strategy<Value = AlgebraFile> {
    (1usize..=4).prop_flat_map(|n| {
        let dim = 2 * n;
        let triples: Vec<(usize, usize, usize)> =
            (1..=dim).flat_map(|i| (i + 1..=dim).flat_map(move |j| (1..=dim).map(move |k| (i, j, k)))).collect();
        (
            proptest::sample::subsequence(triples.clone(), 0..=triples.len().min(8)),
            proptest::collection::vec(coeff(), 8),
            "[a-z0-9_]{1,8}",
        )
            .prop_map(move |(picked, cs, name)| AlgebraFile {
                name,
                dim,
                structure: picked.into_iter().zip(cs).map(|((i, j, k), c)| (i, j, k, c)).collect(),
                j: abhol_cli::format::MatrixField::Keyword("adapted".into()),
                metric: abhol_cli::format::MatrixField::Keyword("identity".into()),
            })
    })
}

proptest! {
    #[test]
    fn parse_of_render_is_identity(file in algebra_file()) {
        let text = file.to_json();
        let back: AlgebraFile = parse_json(&text, "generated").unwrap();
        prop_assert_eq!(&back, &file);
        let alg = back.algebra().unwrap();
        for (i, j, k, c) in &file.structure {
            prop_assert_eq!(alg.c(*i, *j, *k), &c.0);
        }
    }
}
