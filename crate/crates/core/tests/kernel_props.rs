mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_rule_holds((f, g, _h) in triple()) {
        product_rule(&f, &g)?;
    }

    #[test]
    fn ring_axioms_hold((f, g, h) in triple()) {
        ring_axioms(&f, &g, &h)?;
    }

    #[test]
    fn canonical_form_is_idempotent(f in any::<bool>().prop_flat_map(quasi_trig)) {
        canonical_idempotent(&f)?;
    }

    #[test]
    fn reduction_preserves_values((a, b, ps, pc) in reduction_inputs()) {
        reduction_correct(a, b, &ps, &pc)?;
    }
}
