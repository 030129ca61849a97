//! Local analysis at isolated singular points of δ = f(x)∂x + g(y)∂y.

mod engine;
mod graph;
mod jet;

pub use engine::{
    blowup_once, multiplicity, resolve, resolve_pair, resolve_separated, Blowup, Chart, Configuration,
    ExceptionalCurve, LocalVf, NearPoint, Resolution, DEFAULT_PRECISION, MAX_DEPTH, PRECISION_CAP,
};
pub use graph::{
    classify_graph, classify_pair, disjoint_minus_two, fundamental_cycle, DualGraph, FundamentalCycle, SingularityType,
};
pub use jet::Jet;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn run(config: Configuration, a: u32, b: u32) -> Resolution {
        resolve_pair(config, a, b).unwrap_or_else(|e| panic!("({a},{b}) {config:?}: {e}"))
    }

    #[test]
    fn engine_matches_table_at_common_zeros() {
        for (a, b) in [(1, 1), (2, 2), (4, 2), (2, 4), (4, 4)] {
            let r = run(Configuration::Zeros, a, b);
            assert_eq!(r.kind, Some(classify_pair(a, b)), "({a},{b})");
            assert!(r.graph.is_negative_definite());
        }
    }

    #[test]
    fn common_poles() {
        assert_eq!(run(Configuration::Poles, 2, 2).kind, Some(SingularityType::D4));
        assert_eq!(run(Configuration::Poles, 4, 4).kind, Some(SingularityType::Elliptic19));
        // y²∂x + x⁴∂y has invariant ring k[[X, Y, F]] with F² = X⁵ + Y³
        assert_eq!(run(Configuration::Poles, 4, 2).kind, Some(SingularityType::E8));
        assert_eq!(run(Configuration::Poles, 2, 4).kind, Some(SingularityType::E8));
        assert!(matches!(resolve_pair(Configuration::Poles, 1, 1), Err(crate::Error::InvalidVectorField(_))));
    }

    #[test]
    fn blowup_counts_and_multiplicity() {
        assert_eq!(run(Configuration::Zeros, 1, 1).blowups as u64, multiplicity(1, 1));
        assert_eq!(run(Configuration::Zeros, 2, 2).blowups as u64, multiplicity(2, 2));
        assert_eq!(run(Configuration::Zeros, 4, 2).blowups, 8);
        assert_eq!(run(Configuration::Zeros, 4, 4).blowups, 6);
    }

    #[test]
    fn first_blowup_of_d4_field() {
        let vf = LocalVf::monomial(Field::f2(), Configuration::Zeros, 2, 2).unwrap();
        let bl = blowup_once(&vf).unwrap();
        assert!(bl.integral);
        assert_eq!(bl.factor_order, 1);
        assert_eq!(bl.points.len(), 3);
        for p in &bl.points {
            let next = blowup_once(&p.vf).unwrap();
            assert!(!next.integral);
            assert!(next.points.is_empty());
        }
    }

    #[test]
    fn canonical_degrees_of_quotient_curves() {
        for (a, b) in [(1, 1), (2, 2), (4, 2)] {
            let g = run(Configuration::Zeros, a, b).graph;
            assert!((0..g.len()).all(|i| g.canonical_degree(i) == 0));
        }
        let r = run(Configuration::Zeros, 4, 4);
        let k: Vec<i64> = (0..r.graph.len()).map(|i| r.graph.canonical_degree(i)).collect();
        assert_eq!(k.iter().filter(|&&d| d == 1).count(), 1);
        assert_eq!((r.cycle.self_intersection, r.cycle.arithmetic_genus), (-2, 1));
    }

    #[test]
    fn one_blowup_resolves_multiplicity_one() {
        let vf = LocalVf::monomial(Field::f2(), Configuration::Zeros, 1, 1).unwrap();
        let bl = blowup_once(&vf).unwrap();
        assert!(bl.points.is_empty());
        assert!(!bl.integral);
    }

    #[test]
    fn smooth_point_is_rejected() {
        let f2 = Field::f2();
        let smooth = LocalVf { p: Jet::new(f2, [((0, 0), f2.one())], vec![]), q: Jet::zero(f2) };
        assert!(matches!(blowup_once(&smooth), Err(crate::Error::NotIsolated)));
        assert!(matches!(resolve(&smooth), Err(crate::Error::NotIsolated)));
        assert!(matches!(LocalVf::monomial(f2, Configuration::Zeros, 0, 1), Err(crate::Error::NotIsolated)));
    }

    #[test]
    fn truncated_units_are_refined() {
        let f4 = Field::new(2).unwrap();
        let g = f4.generator();
        // square units: only even powers
        let u = move |i: u32| if i % 2 == 0 { g.pow(i as u64 + 1) } else { f4.zero() };
        let w = move |i: u32| if i % 4 == 0 { f4.one() } else { f4.zero() };
        for (a, b) in [(2, 2), (4, 2), (4, 4)] {
            let r = resolve_separated(f4, Configuration::Zeros, a, b, &u, &w, 2).unwrap();
            assert_eq!(r.kind, Some(classify_pair(a, b)));
            assert!(r.precision >= 2);
        }
    }

    #[test]
    fn pairs_outside_the_table_stay_unmatched() {
        let r = run(Configuration::Poles, 6, 4);
        assert_eq!(classify_pair(6, 4), SingularityType::Unclassified(6, 4));
        assert_eq!(r.kind, None);
        assert!(r.graph.is_negative_definite());
    }
}
