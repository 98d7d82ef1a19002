//! Properties of the reduction pipeline: the generator map respects the
//! corner structure, transports the limit-module data, and preserves the
//! injectivity verdict.

mod common;

use common::*;
use lpa_core::{
    classify_injectivity, fixtures, parse_element, parse_path, reduce_to_source_loop, Algebra,
    Division, Field,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn theta_sends_powers_to_corner_powers() {
    for (graph, cyc) in [(fixtures::g_c2z(), "e1.e2"), (fixtures::g_c2x(), "e1.e2")] {
        let c = parse_path(&graph, cyc).unwrap();
        let res = reduce_to_source_loop(&graph, &c).unwrap();
        let alg = Algebra::new(graph.clone(), Field::Rationals);
        let f_alg = Algebra::new(res.final_graph.clone(), Field::Rationals);
        let theta = res.total_map(&graph);
        let eps = theta.corner_idempotent(&alg);
        let d = f_alg.path(&res.loop_path);
        let dm1 = f_alg.sub(&d, &f_alg.one());
        let cm1 = alg.cycle_minus_one(&c);
        assert_eq!(theta.eval(&alg, &d), alg.path(&c));
        for k in 0..=5 {
            let lhs = theta.eval(&alg, &f_alg.power(&dm1, k));
            let rhs = alg.mul(&alg.mul(&eps, &alg.power(&cm1, k)), &eps);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn expansions_correspond_through_theta() {
    // The expansion of x with respect to the collapsed loop matches the
    // expansion of theta(x) with respect to the original cycle: equal
    // scalar parts, and nothing outside the scalar line.
    let mut rng = StdRng::seed_from_u64(79);
    for (graph, cyc) in [(fixtures::g_c2z(), "e1.e2"), (fixtures::g_c2x(), "e1.e2")] {
        let c = parse_path(&graph, cyc).unwrap();
        let res = reduce_to_source_loop(&graph, &c).unwrap();
        let alg = Algebra::new(graph.clone(), Field::Rationals);
        let f_alg = Algebra::new(res.final_graph.clone(), Field::Rationals);
        let theta = res.total_map(&graph);
        let div_f = Division::new(&f_alg, &res.loop_path).unwrap();
        let div_e = Division::new(&alg, &c).unwrap();
        for _ in 0..15 {
            let x = random_element(&mut rng, &f_alg, 3, 4);
            let tx = theta.eval(&alg, &x);
            for level in 1..=4 {
                let over_f = div_f.g_representation(&x, level).unwrap();
                let over_e = div_e.g_representation(&tx, level).unwrap();
                for (gf, ge) in over_f.iter().zip(&over_e) {
                    assert!(gf.is_scalar(), "source-loop expansion is scalar");
                    assert!(ge.is_scalar(), "corner expansion stays scalar");
                    assert_eq!(gf.scalar_part(), ge.scalar_part());
                }
            }
        }
    }
}

#[test]
fn injectivity_verdict_survives_each_stage() {
    for (graph, cyc) in [
        (fixtures::g_c2z(), "e1.e2"),
        (fixtures::g_c2x(), "e1.e2"),
        (fixtures::g_e1(), "c"),
    ] {
        let c = parse_path(&graph, cyc).unwrap();
        let before = classify_injectivity(&graph, &c).unwrap();
        let res = reduce_to_source_loop(&graph, &c).unwrap();
        let mut verdicts = vec![before.injective];
        for stage in &res.stages {
            verdicts.push(
                classify_injectivity(&stage.graph, &stage.cycle)
                    .unwrap()
                    .injective,
            );
        }
        assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
    }
}
