//! Certificates round-trip exactly.

use exactkernel::{q, Rational};
use fanocert::Certificate;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #[test]
    fn values_round_trip_through_p_over_q(values in prop::collection::vec(rational(), 0..8)) {
        let mut c = Certificate::new("test");
        for (i, v) in values.iter().enumerate() {
            if i % 2 == 0 {
                c.result(format!("v{i}"), v);
            } else {
                c.anchored(format!("v{i}"), v, format!("test.v{i}"));
            }
        }
        c.seal();
        let back: Certificate = serde_json::from_str(&c.to_json()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert!(back.digest_is_valid());
        for (i, v) in values.iter().enumerate() {
            prop_assert_eq!(back.rational(&format!("v{i}")), Some(v.clone()));
        }
    }

    #[test]
    fn digest_detects_changes(a in rational(), b in rational()) {
        prop_assume!(a != b);
        let mut c = Certificate::new("test");
        c.result("x", &a);
        c.seal();
        let mut d = c.clone();
        d.results[0].value = b.to_string();
        prop_assert!(!d.digest_is_valid());
    }
}
