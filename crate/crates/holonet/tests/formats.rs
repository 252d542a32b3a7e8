//! Round-trip and stability tests for the JSON interchange formats: posets,
//! cocycles, net connections, frame descriptors, and the canonical rounding
//! applied before byte-level comparison of emitted documents.

use holonet::cocycle::Cocycle;
use holonet::corpus;
use holonet::homotopy::PathFrame;
use holonet::linalg::canonicalize_value;
use holonet::net::NetConnection;
use holonet::poset::{build_circle_poset, build_directed_interval_poset, Poset};
use holonet::splitting;

fn fixture() -> (Poset, PathFrame, Cocycle) {
    let p = build_circle_poset(6, 4).unwrap();
    let f = PathFrame::build(&p, 0).unwrap();
    let z = corpus::random_cocycle(&p, &f, 2, 11).unwrap();
    (p, f, z)
}

#[test]
fn poset_json_round_trips_to_identical_bytes() {
    for p in [
        build_circle_poset(6, 4).unwrap(),
        build_directed_interval_poset(5).unwrap(),
        corpus::figure_eight(),
    ] {
        let v = p.to_value();
        let back = Poset::from_value(&v).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            serde_json::to_string(&back.to_value()).unwrap()
        );
    }
}

#[test]
fn cocycle_json_round_trips_bit_exactly() {
    let (p, _, z) = fixture();
    let v = z.to_value();
    let back = Cocycle::from_value(&p, &v).unwrap();
    assert_eq!(v, back.to_value());
    for (upper, lower) in p.strict_pairs() {
        assert_eq!(
            z.connection(upper, lower).unwrap(),
            back.connection(upper, lower).unwrap()
        );
    }
}

#[test]
fn net_connection_json_round_trips() {
    let (p, _, z) = fixture();
    let conn = NetConnection::from_value(&p, &z.to_value()).unwrap();
    assert_eq!(conn.to_value(), NetConnection::from_value(&p, &conn.to_value()).unwrap().to_value());
}

#[test]
fn frame_descriptors_rebuild_the_same_frame() {
    let (p, _, _) = fixture();
    for (pole, depth_first) in [(0, false), (3, false), (3, true), (17, true)] {
        let f = if depth_first {
            PathFrame::build_depth_first(&p, pole).unwrap()
        } else {
            PathFrame::build(&p, pole).unwrap()
        };
        let d = f.descriptor_value();
        let back = PathFrame::from_descriptor(&p, &d).unwrap();
        assert!(back.matches_descriptor(&d));
        assert_eq!(d, back.descriptor_value());
        for a in p.elements() {
            assert_eq!(f.path_to(a), back.path_to(a));
        }
    }
}

#[test]
fn canonical_rounding_is_idempotent_and_kills_signed_zeros() {
    let (_, f, z) = fixture();
    let charge = splitting::charge_component(&z, &f);
    for v in [z.to_value(), charge.to_value()] {
        let once = canonicalize_value(&v);
        assert_eq!(once, canonicalize_value(&once));
    }
    let noisy = serde_json::json!({
        "a": -0.0,
        "b": [1.0 + 1e-15, -3.0e-13],
        "c": {"d": 0.4999999999999999}
    });
    let canon = canonicalize_value(&noisy);
    assert_eq!(canon["a"], serde_json::json!(0.0));
    assert_eq!(canon["b"][0], serde_json::json!(1.0));
    assert_eq!(canon["b"][1], serde_json::json!(0.0));
    assert_eq!(canon, canonicalize_value(&canon));
}

#[test]
fn reports_expose_the_documented_keys() {
    let (_, f, z) = fixture();
    let validation = serde_json::to_value(z.validate(30, 5)).unwrap();
    for key in [
        "valid",
        "dim",
        "checked_pairs",
        "checked_chains",
        "checked_general",
        "max_unitarity_error",
        "max_deviation",
        "worst",
    ] {
        assert!(validation.get(key).is_some(), "validation lacks {key}");
    }
    let report = holonet::holonomy::build_report(&z, &f, 4).unwrap();
    let report = serde_json::to_value(report).unwrap();
    for key in ["matrix_dim", "algebra_dim", "center_dim", "factor", "tau", "generators", "characters"] {
        assert!(report.get(key).is_some(), "holonomy report lacks {key}");
    }
}
